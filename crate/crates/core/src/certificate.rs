//! A line-oriented certificate holding the transition matrices, anchors,
//! claimed orbit sizes and claimed group orders, and its verifier.
//!
//! ```text
//! AXCOUNT-CERT v1
//! section axes
//! labels 2A 2B ...
//! colsum 16584750
//! row 2A . 1 ...
//! anchor 2A 196560
//! claim-size 2A 196560
//! claim-total 97239461142009186000
//! section feasible
//! ...
//! section orders
//! co2 42305421312000
//! monster 808017...
//! monster-factors 2^46 3^20 ...
//! baby 4154781...
//! baby-factors 2^41 3^13 ...
//! end
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::counting::{
    baby_monster_order, factorize, monster_order, orbit_sizes, regularity_index, sylow11_check, CountingError,
    Factorization, OrbitSizeVector, TransitionMatrix, AXES_COLSUM, FEASIBLE_COLSUM,
};
use crate::tables::{self, GOrbitRow, CO2_INDEX};
use crate::DataError;

pub const MONSTER_CERT: &str = include_str!("../../../data/monster.cert");
pub const HEADER: &str = "AXCOUNT-CERT v1";
pub const AXES_DIM: usize = 12;
pub const FEASIBLE_DIM: usize = 10;

pub const MONSTER_ORDER: &str = "808017424794512875886459904961710757005754368000000000";
pub const MONSTER_FACTORS: &str = "2^46 3^20 5^9 7^6 11^2 13^3 17 19 23 29 31 41 47 59 71";
pub const BABY_ORDER: &str = "4154781481226426191177580544000000";
pub const BABY_FACTORS: &str = "2^41 3^13 5^6 7^2 11 13 17 19 23 31 47";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn perr<T>(line: usize, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, reason: reason.into() })
}

/// One matrix section. Entries are kept raw; the verifier checks them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSection {
    pub labels: Vec<String>,
    pub colsum: BigInt,
    pub rows: Vec<Vec<BigInt>>,
    pub anchor: (String, BigUint),
    pub claimed_sizes: Vec<(String, BigUint)>,
    pub claimed_total: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderClaims {
    pub co2: BigUint,
    pub monster: BigUint,
    pub monster_factors: Factorization,
    pub baby: BigUint,
    pub baby_factors: Factorization,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub axes: MatrixSection,
    pub feasible: MatrixSection,
    pub orders: OrderClaims,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable, e.g. no chain result was supplied.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    /// Orders recomputed from the matrices, when the sizes could be derived.
    pub monster_order: Option<BigUint>,
    pub baby_order: Option<BigUint>,
}

impl VerificationReport {
    fn push(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(CheckResult { name: name.into(), status, detail: detail.into() });
    }

    fn skip(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckResult { name: name.into(), status: Status::Skipped, detail: detail.into() });
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    /// 0 when verified, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "ok  ",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        write!(f, "{}", if self.passed() { "verified" } else { "NOT verified" })
    }
}

#[derive(Default)]
struct SectionBuilder {
    start: usize,
    labels: Option<Vec<String>>,
    colsum: Option<BigInt>,
    rows: Vec<Vec<BigInt>>,
    anchor: Option<(String, BigUint)>,
    claims: BTreeMap<String, BigUint>,
    total: Option<BigUint>,
}

fn parse_num<T: std::str::FromStr>(ln: usize, s: &str, what: &str) -> Result<T, ParseError> {
    s.parse().or_else(|_| perr(ln, format!("bad {what} `{s}`")))
}

impl SectionBuilder {
    fn labels(&self, ln: usize) -> Result<&Vec<String>, ParseError> {
        self.labels.as_ref().ok_or_else(|| ParseError { line: ln, reason: "`labels` must come first".into() })
    }

    fn known(&self, ln: usize, label: &str) -> Result<(), ParseError> {
        if self.labels(ln)?.iter().any(|l| l == label) {
            Ok(())
        } else {
            perr(ln, format!("unknown label {label}"))
        }
    }

    fn line(&mut self, ln: usize, key: &str, args: &[&str]) -> Result<(), ParseError> {
        let once = |present: bool| if present { perr(ln, format!("duplicate `{key}`")) } else { Ok(()) };
        match key {
            "labels" => {
                once(self.labels.is_some())?;
                if args.is_empty() {
                    return perr(ln, "empty label list");
                }
                let mut seen = args.to_vec();
                seen.sort_unstable();
                seen.dedup();
                if seen.len() != args.len() {
                    return perr(ln, "repeated label");
                }
                self.labels = Some(args.iter().map(|s| s.to_string()).collect());
            }
            "colsum" => {
                once(self.colsum.is_some())?;
                let [v] = args else { return perr(ln, "expected `colsum N`") };
                self.colsum = Some(parse_num(ln, v, "column sum")?);
            }
            "row" => {
                let labels = self.labels(ln)?;
                let Some((label, vals)) = args.split_first() else { return perr(ln, "empty row") };
                let want = labels.get(self.rows.len()).ok_or_else(|| ParseError { line: ln, reason: "more rows than labels".into() })?;
                if label != want {
                    return perr(ln, format!("expected row {want}, got {label}"));
                }
                if vals.len() != labels.len() {
                    return perr(ln, format!("row {label} has {} entries for {} labels", vals.len(), labels.len()));
                }
                let row = vals
                    .iter()
                    .map(|v| if *v == "." { Ok(BigInt::zero()) } else { parse_num(ln, v, "entry") })
                    .collect::<Result<_, _>>()?;
                self.rows.push(row);
            }
            "anchor" => {
                once(self.anchor.is_some())?;
                let [l, v] = args else { return perr(ln, "expected `anchor LABEL SIZE`") };
                self.known(ln, l)?;
                self.anchor = Some((l.to_string(), parse_num(ln, v, "anchor size")?));
            }
            "claim-size" => {
                let [l, v] = args else { return perr(ln, "expected `claim-size LABEL SIZE`") };
                self.known(ln, l)?;
                let v = parse_num(ln, v, "size")?;
                if self.claims.insert(l.to_string(), v).is_some() {
                    return perr(ln, format!("duplicate claim for {l}"));
                }
            }
            "claim-total" => {
                once(self.total.is_some())?;
                let [v] = args else { return perr(ln, "expected `claim-total N`") };
                self.total = Some(parse_num(ln, v, "total")?);
            }
            _ => return perr(ln, format!("unknown key `{key}`")),
        }
        Ok(())
    }

    fn finish(self, ln: usize, name: &str, dim: usize) -> Result<MatrixSection, ParseError> {
        let missing = |k: &str| ParseError { line: ln, reason: format!("section {name} lacks `{k}`") };
        let labels = self.labels.ok_or_else(|| missing("labels"))?;
        if labels.len() != dim {
            return perr(self.start, format!("section {name} needs {dim} labels, got {}", labels.len()));
        }
        if self.rows.len() != labels.len() {
            return perr(ln, format!("section {name} has {} rows for {} labels", self.rows.len(), labels.len()));
        }
        let mut claims = self.claims;
        let claimed_sizes = labels
            .iter()
            .map(|l| claims.remove(l).map(|v| (l.clone(), v)).ok_or_else(|| missing(&format!("claim-size {l}"))))
            .collect::<Result<_, _>>()?;
        Ok(MatrixSection {
            labels,
            colsum: self.colsum.ok_or_else(|| missing("colsum"))?,
            rows: self.rows,
            anchor: self.anchor.ok_or_else(|| missing("anchor"))?,
            claimed_sizes,
            claimed_total: self.total.ok_or_else(|| missing("claim-total"))?,
        })
    }
}

#[derive(Default)]
struct OrdersBuilder {
    co2: Option<BigUint>,
    monster: Option<BigUint>,
    monster_factors: Option<Factorization>,
    baby: Option<BigUint>,
    baby_factors: Option<Factorization>,
}

impl OrdersBuilder {
    fn line(&mut self, ln: usize, key: &str, args: &[&str]) -> Result<(), ParseError> {
        let num = |slot: &mut Option<BigUint>| -> Result<(), ParseError> {
            if slot.is_some() {
                return perr(ln, format!("duplicate `{key}`"));
            }
            let [v] = args else { return perr(ln, format!("expected `{key} N`")) };
            *slot = Some(parse_num(ln, v, key)?);
            Ok(())
        };
        let factors = |slot: &mut Option<Factorization>| -> Result<(), ParseError> {
            if slot.is_some() {
                return perr(ln, format!("duplicate `{key}`"));
            }
            if args.is_empty() {
                return perr(ln, "empty factorization");
            }
            *slot = Some(Factorization::parse(&args.join(" ")).or_else(|e| perr(ln, e))?);
            Ok(())
        };
        match key {
            "co2" => num(&mut self.co2),
            "monster" => num(&mut self.monster),
            "baby" => num(&mut self.baby),
            "monster-factors" => factors(&mut self.monster_factors),
            "baby-factors" => factors(&mut self.baby_factors),
            _ => perr(ln, format!("unknown key `{key}`")),
        }
    }

    fn finish(self, ln: usize) -> Result<OrderClaims, ParseError> {
        let missing = |k: &str| ParseError { line: ln, reason: format!("section orders lacks `{k}`") };
        Ok(OrderClaims {
            co2: self.co2.ok_or_else(|| missing("co2"))?,
            monster: self.monster.ok_or_else(|| missing("monster"))?,
            monster_factors: self.monster_factors.ok_or_else(|| missing("monster-factors"))?,
            baby: self.baby.ok_or_else(|| missing("baby"))?,
            baby_factors: self.baby_factors.ok_or_else(|| missing("baby-factors"))?,
        })
    }
}

enum Open {
    None,
    Axes(SectionBuilder),
    Feasible(SectionBuilder),
    Orders(OrdersBuilder),
}

pub fn parse(text: &str) -> Result<Certificate, ParseError> {
    let mut lines = crate::data_lines(text);
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((ln, _)) => return perr(ln, format!("missing header `{HEADER}`")),
        None => return perr(1, format!("missing header `{HEADER}`")),
    }
    let mut axes = None;
    let mut feasible = None;
    let mut orders = None;
    let mut open = Open::None;
    let mut ended = false;
    let close = |open: Open, ln: usize, axes: &mut Option<MatrixSection>, feasible: &mut Option<MatrixSection>, orders: &mut Option<OrderClaims>| -> Result<(), ParseError> {
        match open {
            Open::None => {}
            Open::Axes(b) => *axes = Some(b.finish(ln, "axes", AXES_DIM)?),
            Open::Feasible(b) => *feasible = Some(b.finish(ln, "feasible", FEASIBLE_DIM)?),
            Open::Orders(b) => *orders = Some(b.finish(ln)?),
        }
        Ok(())
    };
    let mut last = 1;
    for (ln, line) in lines {
        last = ln;
        if ended {
            return perr(ln, "content after `end`");
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (key, args) = toks.split_first().expect("data lines are non-empty");
        match *key {
            "section" => {
                close(std::mem::replace(&mut open, Open::None), ln, &mut axes, &mut feasible, &mut orders)?;
                let start = SectionBuilder { start: ln, ..Default::default() };
                open = match args {
                    ["axes"] if axes.is_none() => Open::Axes(start),
                    ["feasible"] if feasible.is_none() => Open::Feasible(start),
                    ["orders"] if orders.is_none() => Open::Orders(OrdersBuilder::default()),
                    [name] if ["axes", "feasible", "orders"].contains(name) => return perr(ln, format!("duplicate section {name}")),
                    _ => return perr(ln, format!("unknown section `{}`", args.join(" "))),
                };
            }
            "end" => {
                if !args.is_empty() {
                    return perr(ln, "`end` takes no arguments");
                }
                close(std::mem::replace(&mut open, Open::None), ln, &mut axes, &mut feasible, &mut orders)?;
                ended = true;
            }
            _ => match &mut open {
                Open::None => return perr(ln, format!("`{key}` outside any section")),
                Open::Axes(b) | Open::Feasible(b) => b.line(ln, key, args)?,
                Open::Orders(b) => b.line(ln, key, args)?,
            },
        }
    }
    if !ended {
        return perr(last, "missing `end`");
    }
    Ok(Certificate {
        axes: axes.ok_or_else(|| ParseError { line: last, reason: "missing section axes".into() })?,
        feasible: feasible.ok_or_else(|| ParseError { line: last, reason: "missing section feasible".into() })?,
        orders: orders.ok_or_else(|| ParseError { line: last, reason: "missing section orders".into() })?,
    })
}

impl Certificate {
    pub fn standard() -> Result<Certificate, ParseError> {
        parse(MONSTER_CERT)
    }

    /// The shipped certificate, rebuilt from the embedded tables. Claimed
    /// sizes are the published ones, not the derived ones.
    pub fn build_standard() -> Result<Certificate, CountingError> {
        let t = tables::Tables::standard()?;
        let section = |m: TransitionMatrix, rows: &[GOrbitRow], anchor: &str| -> Result<MatrixSection, CountingError> {
            let claimed_sizes: Vec<(String, BigUint)> = rows.iter().map(|r| (r.label.clone(), r.size.clone())).collect();
            let anchor_size = claimed_sizes
                .iter()
                .find(|(l, _)| l == anchor)
                .map(|(_, s)| s.clone())
                .ok_or_else(|| CountingError::UnknownLabel(anchor.into()))?;
            if claimed_sizes.iter().map(|(l, _)| l).ne(m.labels().iter()) {
                return Err(DataError::new("certificate", "table labels disagree").into());
            }
            Ok(MatrixSection {
                labels: m.labels().to_vec(),
                colsum: m.colsum().clone(),
                rows: m.entries().to_vec(),
                anchor: (anchor.to_string(), anchor_size),
                claimed_total: claimed_sizes.iter().map(|(_, s)| s).sum(),
                claimed_sizes,
            })
        };
        let co2 = t.table1.iter().find(|r| r.label == "2A").map(|r| r.quotient_order.clone());
        let co2 = co2.ok_or_else(|| CountingError::UnknownLabel("2A".into()))?;
        let f = |s: &str| Factorization::parse(s).map_err(|e| DataError::new("certificate", e));
        Ok(Certificate {
            axes: section(TransitionMatrix::table2()?, &t.table1, "2A")?,
            feasible: section(TransitionMatrix::table4()?, &t.table3, "2A1")?,
            orders: OrderClaims {
                co2,
                monster: MONSTER_ORDER.parse().expect("constant"),
                monster_factors: f(MONSTER_FACTORS)?,
                baby: BABY_ORDER.parse().expect("constant"),
                baby_factors: f(BABY_FACTORS)?,
            },
        })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str("# Orbit sizes of axes and feasible axes from the two transition matrices,\n");
        s.push_str("# and the orders of the Monster and the Baby Monster that follow from them.\n");
        s.push_str("# Only linear algebra and integer arithmetic are needed to check it: it\n");
        s.push_str("# carries no group elements and nothing that needs the 196884-dimensional\n");
        s.push_str("# representation.\n");
        s.push_str(HEADER);
        s.push('\n');
        for (name, sec) in [("axes", &self.axes), ("feasible", &self.feasible)] {
            let _ = writeln!(s, "section {name}");
            let _ = writeln!(s, "labels {}", sec.labels.join(" "));
            let _ = writeln!(s, "colsum {}", sec.colsum);
            for (l, row) in sec.labels.iter().zip(&sec.rows) {
                let cells: Vec<String> = row.iter().map(|x| if x.is_zero() { ".".into() } else { x.to_string() }).collect();
                let _ = writeln!(s, "row {l} {}", cells.join(" "));
            }
            let _ = writeln!(s, "anchor {} {}", sec.anchor.0, sec.anchor.1);
            for (l, v) in &sec.claimed_sizes {
                let _ = writeln!(s, "claim-size {l} {v}");
            }
            let _ = writeln!(s, "claim-total {}", sec.claimed_total);
        }
        let o = &self.orders;
        let _ = writeln!(s, "section orders");
        let _ = writeln!(s, "co2 {}", o.co2);
        let _ = writeln!(s, "monster {}", o.monster);
        let _ = writeln!(s, "monster-factors {}", o.monster_factors);
        let _ = writeln!(s, "baby {}", o.baby);
        let _ = writeln!(s, "baby-factors {}", o.baby_factors);
        s.push_str("end\n");
        s
    }
}

fn verify_section(r: &mut VerificationReport, name: &str, sec: &MatrixSection, expected_colsum: u64) -> Option<OrbitSizeVector> {
    let expected = BigInt::from(expected_colsum);
    let bad_col = (0..sec.labels.len()).find(|&j| sec.rows.iter().map(|row| &row[j]).sum::<BigInt>() != expected);
    let ok = sec.colsum == expected && bad_col.is_none();
    let detail = match bad_col {
        _ if sec.colsum != expected => format!("declared {}, expected {expected}", sec.colsum),
        Some(j) => format!("column {} does not sum to {expected}", sec.labels[j]),
        None => format!("every column sums to {expected}"),
    };
    r.push(format!("{name}: column sums"), ok, detail);
    let m = match TransitionMatrix::new(sec.labels.clone(), sec.rows.clone(), sec.colsum.clone()) {
        Ok(m) if ok => m,
        Ok(_) => {
            r.skip(format!("{name}: orbit sizes"), "matrix rejected");
            return None;
        }
        Err(e) => {
            r.push(format!("{name}: matrix"), false, e.to_string());
            return None;
        }
    };
    match regularity_index(&m) {
        Ok(k) => r.push(format!("{name}: regularity"), true, format!("M^{k} is positive")),
        Err(e) => r.push(format!("{name}: regularity"), false, e.to_string()),
    }
    let sizes = match orbit_sizes(&m, &sec.anchor.0, &sec.anchor.1) {
        Ok(s) => {
            r.push(format!("{name}: kernel and anchor"), true, format!("one-dimensional, scaled to {} = {}", sec.anchor.0, sec.anchor.1));
            s
        }
        Err(e) => {
            r.push(format!("{name}: kernel and anchor"), false, e.to_string());
            return None;
        }
    };
    let mismatch: Vec<&str> =
        sec.claimed_sizes.iter().filter(|(l, v)| sizes.get(l) != Some(v)).map(|(l, _)| l.as_str()).collect();
    r.push(
        format!("{name}: sizes"),
        mismatch.is_empty(),
        if mismatch.is_empty() { "all claimed sizes recovered".to_string() } else { format!("mismatch at {}", mismatch.join(", ")) },
    );
    let total = sizes.total();
    r.push(format!("{name}: total"), total == sec.claimed_total, format!("derived {total}, claimed {}", sec.claimed_total));
    Some(sizes)
}

/// Runs every check in a fixed order; failures are report entries.
pub fn verify(c: &Certificate, co1_order_from_chain: Option<&BigUint>) -> VerificationReport {
    let mut r = VerificationReport::default();
    let axes = verify_section(&mut r, "axes", &c.axes, AXES_COLSUM);
    let feasible = verify_section(&mut r, "feasible", &c.feasible, FEASIBLE_COLSUM);
    let o = &c.orders;
    match co1_order_from_chain {
        Some(co1) => {
            let idx = BigUint::from(CO2_INDEX);
            let ok = (co1 % &idx).is_zero() && co1 / &idx == o.co2;
            r.push("co2 from chain", ok, format!("|Co1|/{CO2_INDEX} = {}, claimed {}", co1 / &idx, o.co2));
        }
        None => r.skip("co2 from chain", "no chain result supplied"),
    }
    match (&axes, &feasible) {
        (Some(a), Some(f)) => {
            let (xp, xm) = (a.total(), f.total());
            let m = monster_order(&xp, &xm, &o.co2);
            r.push("monster order", m == o.monster, format!("derived {m}"));
            r.monster_order = Some(m);
            match baby_monster_order(&xm, &o.co2) {
                Ok(b) => {
                    r.push("baby monster order", b == o.baby, format!("derived {b}"));
                    r.baby_order = Some(b);
                }
                Err(e) => r.push("baby monster order", false, e.to_string()),
            }
        }
        _ => {
            r.push("monster order", false, "orbit sizes unavailable");
            r.push("baby monster order", false, "orbit sizes unavailable");
        }
    }
    for (name, claimed, factors) in
        [("monster factorization", &o.monster, &o.monster_factors), ("baby monster factorization", &o.baby, &o.baby_factors)]
    {
        let ok = factors.product() == *claimed && factorize(claimed).as_ref() == Ok(factors);
        r.push(name, ok, factors.to_string());
    }
    let s = sylow11_check();
    r.push("sylow 11", s.non_integral, format!("{} is not an integer", s.value));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file_is_generated() {
        let built = Certificate::build_standard().unwrap();
        assert_eq!(built.render(), MONSTER_CERT, "regenerate with `cargo run -p axcount --example write_cert`");
        assert_eq!(parse(MONSTER_CERT).unwrap(), built);
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse("").unwrap_err().line, 1);
        assert!(parse("").unwrap_err().reason.contains("header"));
    }

    #[test]
    fn unknown_key() {
        let text = MONSTER_CERT.replace("claim-total", "claimed-total");
        assert!(parse(&text).unwrap_err().reason.contains("unknown key"));
    }

    #[test]
    fn eleven_labels() {
        let text = MONSTER_CERT.replacen(" 12C\n", "\n", 1);
        assert!(parse(&text).is_err());
    }

    #[test]
    fn increment_fails_column_sum_first() {
        let mut c = Certificate::standard().unwrap();
        c.axes.rows[3][5] += 1;
        let r = verify(&c, None);
        assert_eq!(r.first_failure().unwrap().name, "axes: column sums");
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn bad_anchor() {
        let mut c = Certificate::standard().unwrap();
        c.axes.anchor.1 = BigUint::from(196_561u32);
        let r = verify(&c, None);
        assert!(!r.passed());
    }

    #[test]
    fn single_entry_tampers_fail() {
        use rand::{Rng, SeedableRng};
        let base = Certificate::standard().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut c = base.clone();
            let sec = if rng.gen_bool(0.5) { &mut c.axes } else { &mut c.feasible };
            let n = sec.labels.len();
            let cell = &mut sec.rows[rng.gen_range(0..n)][rng.gen_range(0..n)];
            let delta = rng.gen_range(1..=1000i64);
            if *cell >= BigInt::from(delta) && rng.gen_bool(0.5) {
                *cell -= delta;
            } else {
                *cell += delta;
            }
            assert_eq!(verify(&c, None).exit_code(), 1);
        }
    }

    #[test]
    fn deterministic() {
        let c = Certificate::standard().unwrap();
        let co1: BigUint = "4157776806543360000".parse().unwrap();
        let a = verify(&c, Some(&co1));
        assert!(a.passed(), "{a}");
        assert_eq!(a, verify(&c, Some(&co1)));
    }
}
