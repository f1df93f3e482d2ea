//! The orbit tables for axes and feasible axes, the N₀ fusion tables, and
//! the arithmetic that ties them together.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::counting::two_pow;
use crate::DataError;

pub const TABLE1_TXT: &str = include_str!("../../../data/table1.txt");
pub const TABLE3_TXT: &str = include_str!("../../../data/table3.txt");
pub const TABLE5_TXT: &str = include_str!("../../../data/table5.txt");
pub const TABLE6_TXT: &str = include_str!("../../../data/table6.txt");
pub const CLASSICAL_ORDERS_TXT: &str = include_str!("../../../data/classical_orders.txt");

/// Number of short classes of Λ/2Λ, the index of Co₂ in Co₁.
pub const CO2_INDEX: u64 = 98_280;

/// One row of an orbit table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GOrbitRow {
    pub label: String,
    pub n_x0_suborbits: u64,
    pub n_xyz_suborbits: u64,
    pub size: BigUint,
    /// `log₂ |C ∩ Q_x0|`.
    pub q_part_log2: u32,
    pub quotient_order: BigUint,
}

impl GOrbitRow {
    pub fn q_part_order(&self) -> BigUint {
        two_pow(self.q_part_log2)
    }
}

/// One part of the fusion column: a label and whether it carried `^2`/`^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionPart {
    pub label: String,
    pub mark: Option<u8>,
}

/// One row of an N₀ fusion table, stabilizer `C = E.G.S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRow {
    pub number: u32,
    pub e_log2: u32,
    pub g_name: String,
    pub g_order: BigUint,
    pub s_order: u32,
    pub parts: Vec<FusionPart>,
}

impl FusionRow {
    /// `(label, N_x0-orbits, N_xyz-orbits, share of the N₀-orbit in thirds)`.
    pub fn contributions(&self) -> Result<Vec<(String, u64, u64, u64)>, String> {
        let marks: Vec<Option<u8>> = self.parts.iter().map(|p| p.mark).collect();
        let out = match (self.s_order, marks.as_slice()) {
            (1, [None, None, None]) => self.parts.iter().map(|p| (p.label.clone(), 1, 2, 1)).collect(),
            (2, [None, Some(2)]) | (2, [Some(2), None]) => self
                .parts
                .iter()
                .map(|p| if p.mark == Some(2) { (p.label.clone(), 1, 2, 2) } else { (p.label.clone(), 1, 1, 1) })
                .collect(),
            (3, [Some(3)]) => vec![(self.parts[0].label.clone(), 1, 2, 3)],
            (6, [Some(3)]) => vec![(self.parts[0].label.clone(), 1, 1, 3)],
            _ => return Err(format!("row {}: fusion pattern does not fit |S| = {}", self.number, self.s_order)),
        };
        Ok(out)
    }
}

/// Orders of the simple and almost simple groups named in the tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalOrders(pub BTreeMap<String, BigUint>);

impl ClassicalOrders {
    pub fn standard() -> Result<Self, DataError> {
        Self::parse(CLASSICAL_ORDERS_TXT)
    }

    pub fn parse(text: &str) -> Result<Self, DataError> {
        let mut out = BTreeMap::new();
        for (ln, line) in crate::data_lines(text) {
            let f: Vec<&str> = line.split_whitespace().collect();
            let [name, order] = f.as_slice() else {
                return Err(DataError::at("classical orders", ln, "expected `name order`"));
            };
            let order: BigUint = order.parse().map_err(|_| DataError::at("classical orders", ln, "bad order"))?;
            out.insert(name.to_string(), order);
        }
        Ok(ClassicalOrders(out))
    }

    pub fn get(&self, name: &str) -> Option<&BigUint> {
        self.0.get(name)
    }
}

/// Formulas for the groups that have one.
pub mod formulas {
    use num_bigint::BigUint;
    use num_integer::Integer;
    use num_traits::One;

    fn factorial(n: u32) -> BigUint {
        (1..=n).fold(BigUint::one(), |a, k| a * k)
    }

    pub fn alternating(n: u32) -> BigUint {
        factorial(n) / 2u8
    }

    pub fn symmetric(n: u32) -> BigUint {
        factorial(n)
    }

    fn pow(q: u64, e: u32) -> BigUint {
        BigUint::from(q).pow(e)
    }

    /// `|L_n(q)|`.
    pub fn linear(n: u32, q: u64) -> BigUint {
        let mut o = pow(q, n * (n - 1) / 2);
        for i in 2..=n {
            o *= pow(q, i) - 1u8;
        }
        o / BigUint::from((n as u64).gcd(&(q - 1)))
    }

    /// `|S_2m(q)|`.
    pub fn symplectic(m: u32, q: u64) -> BigUint {
        let mut o = pow(q, m * m);
        for i in 1..=m {
            o *= pow(q, 2 * i) - 1u8;
        }
        o / BigUint::from(2u64.gcd(&(q - 1)))
    }

    /// `|U_n(q)|`.
    pub fn unitary(n: u32, q: u64) -> BigUint {
        let mut o = pow(q, n * (n - 1) / 2);
        for i in 2..=n {
            o *= if i % 2 == 0 { pow(q, i) - 1u8 } else { pow(q, i) + 1u8 };
        }
        o / BigUint::from((n as u64).gcd(&(q + 1)))
    }

    /// `|O_2m^+(q)|`, the simple group.
    pub fn orthogonal_plus(m: u32, q: u64) -> BigUint {
        let mut o = pow(q, m * (m - 1)) * (pow(q, m) - 1u8);
        for i in 1..m {
            o *= pow(q, 2 * i) - 1u8;
        }
        let d = (4u64).gcd(&(q.pow(m) - 1));
        o / BigUint::from(d)
    }
}

/// Names with a classical formula, and the formula's value.
pub fn classical_formulas() -> Vec<(&'static str, BigUint)> {
    use formulas::*;
    vec![
        ("A5", alternating(5)),
        ("A8", alternating(8)),
        ("A9", alternating(9)),
        ("S6", symmetric(6)),
        ("L3(4)", linear(3, 4)),
        ("S6(2)", symplectic(3, 2)),
        ("U4(2)", unitary(4, 2)),
        ("U6(2)", unitary(6, 2)),
        ("O8+(2)", orthogonal_plus(4, 2)),
    ]
}

#[derive(Clone, Debug)]
pub struct Tables {
    pub table1: Vec<GOrbitRow>,
    pub table3: Vec<GOrbitRow>,
    pub table5: Vec<FusionRow>,
    pub table6: Vec<FusionRow>,
    pub orders: ClassicalOrders,
}

impl Tables {
    pub fn standard() -> Result<Self, DataError> {
        Ok(Tables {
            table1: parse_orbit_table(TABLE1_TXT, "table1")?,
            table3: parse_orbit_table(TABLE3_TXT, "table3")?,
            table5: parse_fusion_table(TABLE5_TXT, "table5")?,
            table6: parse_fusion_table(TABLE6_TXT, "table6")?,
            orders: ClassicalOrders::standard()?,
        })
    }
}

pub fn parse_orbit_table(text: &str, src: &str) -> Result<Vec<GOrbitRow>, DataError> {
    let mut rows = Vec::new();
    for (ln, line) in crate::data_lines(text) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = |what: &str| DataError::at(src, ln, format!("bad {what}"));
        let [label, nx0, nxyz, size, q, quot] = f.as_slice() else {
            return Err(DataError::at(src, ln, "expected 6 fields"));
        };
        rows.push(GOrbitRow {
            label: label.to_string(),
            n_x0_suborbits: nx0.parse().map_err(|_| bad("n_x0"))?,
            n_xyz_suborbits: nxyz.parse().map_err(|_| bad("n_xyz"))?,
            size: size.parse().map_err(|_| bad("size"))?,
            q_part_log2: q.parse().map_err(|_| bad("q part"))?,
            quotient_order: quot.parse().map_err(|_| bad("quotient order"))?,
        });
    }
    Ok(rows)
}

pub fn parse_fusion_table(text: &str, src: &str) -> Result<Vec<FusionRow>, DataError> {
    let mut rows = Vec::new();
    for (ln, line) in crate::data_lines(text) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = |what: &str| DataError::at(src, ln, format!("bad {what}"));
        let [no, e, g, go, s, fusion] = f.as_slice() else {
            return Err(DataError::at(src, ln, "expected 6 fields"));
        };
        let mut parts = Vec::new();
        for tok in fusion.split(',') {
            let (label, mark) = match tok.split_once('^') {
                Some((l, m)) => (l, Some(m.parse::<u8>().map_err(|_| bad("fusion mark"))?)),
                None => (tok, None),
            };
            if label.is_empty() {
                return Err(bad("fusion label"));
            }
            parts.push(FusionPart { label: label.to_string(), mark });
        }
        let s_order: u32 = s.parse().map_err(|_| bad("|S|"))?;
        if ![1, 2, 3, 6].contains(&s_order) {
            return Err(bad("|S|"));
        }
        rows.push(FusionRow {
            number: no.parse().map_err(|_| bad("row number"))?,
            e_log2: e.parse().map_err(|_| bad("log2 |E|"))?,
            g_name: g.to_string(),
            g_order: go.parse().map_err(|_| bad("|G|"))?,
            s_order,
            parts,
        });
    }
    Ok(rows)
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{} {}: {}", if l.passed { "ok  " } else { "FAIL" }, l.name, l.detail)?;
        }
        Ok(())
    }
}

fn totals(rows: &[GOrbitRow]) -> (u64, u64) {
    (rows.iter().map(|r| r.n_x0_suborbits).sum(), rows.iter().map(|r| r.n_xyz_suborbits).sum())
}

pub fn check_suborbit_totals(t: &Tables) -> Report {
    let mut r = Report::default();
    let t1 = totals(&t.table1);
    r.push("table1 suborbit totals", t1 == (251, 405), format!("{t1:?}, expected (251, 405)"));
    let t3 = totals(&t.table3);
    r.push("table3 suborbit totals", t3 == (59, 87), format!("{t3:?}, expected (59, 87)"));
    r.push("table5 rows", t.table5.len() == 123, format!("{}, expected 123", t.table5.len()));
    r.push("table6 rows", t.table6.len() == 32, format!("{}, expected 32", t.table6.len()));
    for (name, rows, (x0, xyz)) in [("table5", &t.table5, (251u64, 405u64)), ("table6", &t.table6, (59, 87))] {
        let nxyz: u64 = rows.iter().map(|f| 6 / f.s_order as u64).sum();
        let nx0: u64 = rows.iter().map(|f| f.parts.len() as u64).sum();
        r.push(format!("{name} 6/|S| total"), nxyz == xyz, format!("{nxyz}, expected {xyz}"));
        r.push(format!("{name} N_x0 total"), nx0 == x0, format!("{nx0}, expected {x0}"));
    }
    r
}

/// Aggregates the fusion rule per label and compares with columns 2 and 3.
pub fn check_fusion(fusion: &[FusionRow], orbits: &[GOrbitRow]) -> Report {
    let mut r = Report::default();
    let mut agg: BTreeMap<&str, (u64, u64)> = orbits.iter().map(|o| (o.label.as_str(), (0, 0))).collect();
    for row in fusion {
        match row.contributions() {
            Ok(parts) => {
                for (label, a, b, _) in parts {
                    match agg.get_mut(label.as_str()) {
                        Some(e) => {
                            e.0 += a;
                            e.1 += b;
                        }
                        None => r.push(format!("row {}", row.number), false, format!("unknown label {label}")),
                    }
                }
            }
            Err(e) => r.push(format!("row {}", row.number), false, e),
        }
    }
    for o in orbits {
        let got = agg[o.label.as_str()];
        let want = (o.n_x0_suborbits, o.n_xyz_suborbits);
        r.push(format!("fusion {}", o.label), got == want, format!("{got:?}, expected {want:?}"));
    }
    r
}

/// `|N₀| / (|E|·|G|·|S|)` split 1:1:1, 1:2 or whole, summed per label,
/// against the orbit sizes. `n0_order` is the order of the acting group.
pub fn check_fusion_sizes(fusion: &[FusionRow], orbits: &[GOrbitRow], n0_order: &BigUint) -> Report {
    let mut r = Report::default();
    let mut agg: BTreeMap<&str, BigUint> = orbits.iter().map(|o| (o.label.as_str(), BigUint::zero())).collect();
    for row in fusion {
        let stab = two_pow(row.e_log2) * &row.g_order * row.s_order;
        let (orbit, rem) = n0_order.div_rem(&stab);
        if !rem.is_zero() || !(&orbit % 3u8).is_zero() {
            r.push(format!("row {}", row.number), false, "stabilizer order does not divide |N_0|/3");
            continue;
        }
        let third = orbit / 3u8;
        if let Ok(parts) = row.contributions() {
            for (label, _, _, share) in parts {
                if let Some(e) = agg.get_mut(label.as_str()) {
                    *e += &third * share;
                }
            }
        }
    }
    for o in orbits {
        let got = &agg[o.label.as_str()];
        r.push(format!("fusion size {}", o.label), got == &o.size, format!("{got}, expected {}", o.size));
    }
    r
}

/// `size · |C ∩ Q| · quotient = 2²⁵·|Co₁|` (Table 1) or `2²⁴·|Co₂|` (Table 3).
pub fn check_stabilizer_products(t: &Tables, co1_order: &BigUint) -> Report {
    let mut r = Report::default();
    let (co2, rem) = co1_order.div_rem(&BigUint::from(CO2_INDEX));
    let gx0 = two_pow(25) * co1_order;
    let h = two_pow(24) * &co2;
    r.push("co1 divisible by 98280", rem.is_zero(), format!("|Co1| = {co1_order}"));
    for (rows, target, name) in [(&t.table1, &gx0, "G_x0"), (&t.table3, &h, "H")] {
        for row in rows {
            let prod = &row.size * row.q_part_order() * &row.quotient_order;
            r.push(
                format!("stabilizer {}", row.label),
                &prod == target,
                format!("size * |C cap Q| * quotient = {prod}, |{name}| = {target}"),
            );
        }
    }
    r
}

/// Embedded orders against their formulas.
pub fn check_classical_orders(orders: &ClassicalOrders) -> Report {
    let mut r = Report::default();
    for (name, value) in classical_formulas() {
        let got = orders.get(name);
        r.push(format!("order {name}"), got == Some(&value), format!("{got:?} vs formula {value}"));
    }
    r
}

/// |N₀| for the axes and for the feasible axes.
pub fn n0_orders(orders: &ClassicalOrders) -> Option<(BigUint, BigUint)> {
    let m24 = orders.get("M24")?;
    let m22 = orders.get("M22")?;
    let six = BigUint::from(6u8);
    Some((two_pow(35) * m24 * &six, two_pow(33) * m22 * 2u8 * six))
}

/// Every check of this module.
pub fn check_all(t: &Tables, co1_order: &BigUint) -> Report {
    let mut r = check_suborbit_totals(t);
    r.extend(check_fusion(&t.table5, &t.table1));
    r.extend(check_fusion(&t.table6, &t.table3));
    match n0_orders(&t.orders) {
        Some((n0, n0h)) => {
            r.extend(check_fusion_sizes(&t.table5, &t.table1, &n0));
            r.extend(check_fusion_sizes(&t.table6, &t.table3, &n0h));
        }
        None => r.push("N_0 order", false, "M24 or M22 missing from classical orders"),
    }
    r.extend(check_stabilizer_products(t, co1_order));
    r.extend(check_classical_orders(&t.orders));
    r
}

pub fn product_of<'a>(it: impl IntoIterator<Item = &'a BigUint>) -> BigUint {
    it.into_iter().fold(BigUint::one(), |a, b| a * b)
}
