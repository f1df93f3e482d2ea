//! Orbit sizes from transition matrices, and the final order arithmetic.
//!
//! The sizes form the unique (up to scale) eigenvector of `M` for the
//! eigenvalue `colsum`. It is computed exactly: fraction-free elimination of
//! `M − colsum·I` over the integers, then back substitution in ℚ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::DataError;

pub const TABLE2_TXT: &str = include_str!("../../../data/table2.txt");
pub const TABLE4_TXT: &str = include_str!("../../../data/table4.txt");

pub const AXES_COLSUM: u64 = 16_584_750;
pub const FEASIBLE_COLSUM: u64 = 93_150;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountingError {
    #[error("column {label} sums to {got}, expected {expected}")]
    ColumnSum { label: String, got: BigInt, expected: BigInt },
    #[error("negative entry in row {row}, column {col}")]
    Negative { row: String, col: String },
    #[error("kernel of M - colsum*I has dimension {0}, expected 1")]
    KernelDimension(usize),
    #[error("scaled eigenvector has a non-integral entry at {0}")]
    NonIntegralSizes(String),
    #[error("scaled eigenvector has a non-positive entry at {0}")]
    NonPositive(String),
    #[error("unknown anchor label {0}")]
    UnknownLabel(String),
    #[error("no power M^k with k <= {0} is positive")]
    NotRegular(usize),
    #[error("division by 2 is not exact")]
    NonIntegral,
    #[error("cofactor {0} remains after trial division")]
    IncompleteFactorization(BigUint),
    #[error(transparent)]
    Data(#[from] DataError),
}

/// A labelled square matrix of non-negative integers with constant column sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<BigInt>>,
    colsum: BigInt,
}

impl TransitionMatrix {
    /// Checks the column sums and signs; both are hard preconditions.
    pub fn new(labels: Vec<String>, entries: Vec<Vec<BigInt>>, colsum: BigInt) -> Result<Self, CountingError> {
        let n = labels.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(DataError::new("transition matrix", "matrix is not square over its labels").into());
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if x.is_negative() {
                    return Err(CountingError::Negative { row: labels[i].clone(), col: labels[j].clone() });
                }
            }
        }
        for j in 0..n {
            let s: BigInt = entries.iter().map(|r| &r[j]).sum();
            if s != colsum {
                return Err(CountingError::ColumnSum { label: labels[j].clone(), got: s, expected: colsum });
            }
        }
        Ok(TransitionMatrix { labels, entries, colsum })
    }

    /// Parses `labels ...` followed by `<label> <entries>` rows, `.` for 0.
    pub fn parse(text: &str, colsum: u64) -> Result<Self, CountingError> {
        let src = "transition matrix";
        let mut lines = crate::data_lines(text);
        let labels: Vec<String> = match lines.next() {
            Some((_, l)) if l.starts_with("labels ") => l.split_whitespace().skip(1).map(String::from).collect(),
            Some((ln, _)) => return Err(DataError::at(src, ln, "expected `labels ...`").into()),
            None => return Err(DataError::new(src, "empty").into()),
        };
        let mut rows = Vec::new();
        for (ln, line) in lines {
            let mut it = line.split_whitespace();
            let label = it.next().unwrap_or_default();
            if labels.get(rows.len()).map(String::as_str) != Some(label) {
                return Err(DataError::at(src, ln, format!("unexpected row label {label}")).into());
            }
            let row: Result<Vec<BigInt>, DataError> = it.map(|t| parse_cell(t).map_err(|e| DataError::at(src, ln, e))).collect();
            let row = row?;
            if row.len() != labels.len() {
                return Err(DataError::at(src, ln, format!("expected {} entries", labels.len())).into());
            }
            rows.push(row);
        }
        Self::new(labels, rows, BigInt::from(colsum))
    }

    pub fn table2() -> Result<Self, CountingError> {
        Self::parse(TABLE2_TXT, AXES_COLSUM)
    }

    pub fn table4() -> Result<Self, CountingError> {
        Self::parse(TABLE4_TXT, FEASIBLE_COLSUM)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn colsum(&self) -> &BigInt {
        &self.colsum
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub(crate) fn parse_cell(t: &str) -> Result<BigInt, String> {
    if t == "." {
        return Ok(BigInt::zero());
    }
    t.parse::<BigInt>().map_err(|e| format!("bad entry {t}: {e}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSizeVector {
    pub labels: Vec<String>,
    pub sizes: Vec<BigUint>,
}

impl OrbitSizeVector {
    pub fn total(&self) -> BigUint {
        self.sizes.iter().sum()
    }

    pub fn get(&self, label: &str) -> Option<&BigUint> {
        self.labels.iter().position(|l| l == label).map(|i| &self.sizes[i])
    }
}

/// Row echelon form by fraction-free (Bareiss) elimination; returns pivot columns.
fn bareiss(a: &mut [Vec<BigInt>]) -> Vec<usize> {
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Exact kernel basis of an integer matrix, as rational vectors.
pub fn kernel(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    let mut a = m.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let pivots = bareiss(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut x = vec![BigRational::zero(); cols];
        x[f] = BigRational::one();
        for (k, &pc) in pivots.iter().enumerate().rev() {
            let mut s = BigRational::zero();
            for j in pc + 1..cols {
                if !a[k][j].is_zero() {
                    s += BigRational::from_integer(a[k][j].clone()) * &x[j];
                }
            }
            x[pc] = -s / BigRational::from_integer(a[k][pc].clone());
        }
        out.push(x);
    }
    out
}

/// Orbit sizes scaled so that `anchor_label` has size `anchor_size`.
pub fn orbit_sizes(m: &TransitionMatrix, anchor_label: &str, anchor_size: &BigUint) -> Result<OrbitSizeVector, CountingError> {
    let anchor = m.index_of(anchor_label).ok_or_else(|| CountingError::UnknownLabel(anchor_label.to_string()))?;
    let n = m.dim();
    let mut a = m.entries.clone();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= &m.colsum;
    }
    let ker = kernel(&a);
    if ker.len() != 1 {
        return Err(CountingError::KernelDimension(ker.len()));
    }
    let v = &ker[0];
    if v[anchor].is_zero() {
        return Err(CountingError::NonPositive(anchor_label.to_string()));
    }
    let scale = BigRational::from_integer(BigInt::from(anchor_size.clone())) / &v[anchor];
    let mut sizes = Vec::with_capacity(n);
    for (i, x) in v.iter().enumerate() {
        let s = x * &scale;
        if !s.is_integer() {
            return Err(CountingError::NonIntegralSizes(m.labels[i].clone()));
        }
        let s = s.to_integer();
        if s.sign() != Sign::Plus {
            return Err(CountingError::NonPositive(m.labels[i].clone()));
        }
        sizes.push(s.magnitude().clone());
    }
    Ok(OrbitSizeVector { labels: m.labels.clone(), sizes })
}

/// Smallest `k <= dim` with every entry of `M^k` positive.
pub fn regularity_index(m: &TransitionMatrix) -> Result<usize, CountingError> {
    let n = m.dim();
    let base: Vec<Vec<bool>> = m.entries.iter().map(|r| r.iter().map(|x| x.is_positive()).collect()).collect();
    let mut pow = base.clone();
    for k in 1..=n {
        if pow.iter().all(|r| r.iter().all(|&b| b)) {
            return Ok(k);
        }
        pow = (0..n).map(|i| (0..n).map(|j| (0..n).any(|t| pow[i][t] && base[t][j])).collect()).collect();
    }
    Err(CountingError::NotRegular(n))
}

pub fn two_pow(e: u32) -> BigUint {
    BigUint::one() << e
}

/// `|X⁺| · |X⁻| · 2²⁴ · |Co₂|`.
pub fn monster_order(x_plus: &BigUint, x_minus: &BigUint, co2_order: &BigUint) -> BigUint {
    x_plus * x_minus * two_pow(24) * co2_order
}

/// `|X⁻| · 2²⁴ · |Co₂| / 2`.
pub fn baby_monster_order(x_minus: &BigUint, co2_order: &BigUint) -> Result<BigUint, CountingError> {
    let twice = x_minus * two_pow(24) * co2_order;
    let (q, r) = twice.div_rem(&BigUint::from(2u8));
    if !r.is_zero() {
        return Err(CountingError::NonIntegral);
    }
    Ok(q)
}

/// Prime factorization as `prime → exponent`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Factorization(pub BTreeMap<u64, u32>);

impl Factorization {
    pub fn product(&self) -> BigUint {
        self.0.iter().fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }

    /// Parses `2^46 3^20 ... 71` (a bare prime means exponent 1).
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut out = BTreeMap::new();
        for tok in text.split_whitespace() {
            let (p, e) = match tok.split_once('^') {
                Some((p, e)) => (p, e.parse::<u32>().map_err(|_| format!("bad exponent in {tok}"))?),
                None => (tok, 1),
            };
            let p: u64 = p.parse().map_err(|_| format!("bad prime in {tok}"))?;
            if p < 2 || e == 0 || out.insert(p, e).is_some() {
                return Err(format!("bad factor {tok}"));
            }
        }
        Ok(Factorization(out))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|(&p, &e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Factorization({self})")
    }
}

const TRIAL_BOUND: usize = 10_000;

/// Trial division by all primes below 10⁴. A cofactor below 10⁸ left over
/// is prime; a larger one is an error.
pub fn factorize(n: &BigUint) -> Result<Factorization, CountingError> {
    if n.is_zero() {
        return Err(CountingError::IncompleteFactorization(n.clone()));
    }
    let mut rest = n.clone();
    let mut out = BTreeMap::new();
    let mut sieve = vec![true; TRIAL_BOUND];
    for p in 2..TRIAL_BOUND {
        if !sieve[p] {
            continue;
        }
        for k in (p * p..TRIAL_BOUND).step_by(p) {
            sieve[k] = false;
        }
        let bp = BigUint::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.insert(p as u64, e);
        }
        if rest.is_one() {
            break;
        }
    }
    if !rest.is_one() {
        match rest.to_u64() {
            Some(p) if p < (TRIAL_BOUND * TRIAL_BOUND) as u64 => {
                out.insert(p, 1);
            }
            _ => return Err(CountingError::IncompleteFactorization(rest)),
        }
    }
    Ok(Factorization(out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sylow11 {
    pub value: BigRational,
    pub non_integral: bool,
}

/// `(196884 + (11³ − 1)·17) / 11³` in lowest terms.
pub fn sylow11_check() -> Sylow11 {
    let p3 = BigInt::from(11u32.pow(3));
    let num = BigInt::from(196_884) + (&p3 - 1) * 17;
    let value = BigRational::new(num, p3);
    let non_integral = !value.is_integer();
    Sylow11 { value, non_integral }
}

/// `Σⱼ M_ij nⱼ = colsum · nᵢ` for every row.
pub fn flow_conserved(m: &TransitionMatrix, sizes: &OrbitSizeVector) -> bool {
    let n: Vec<BigInt> = sizes.sizes.iter().map(|s| BigInt::from(s.clone())).collect();
    m.entries.iter().zip(&n).all(|(row, ni)| row.iter().zip(&n).map(|(a, b)| a * b).sum::<BigInt>() == &m.colsum * ni)
}

pub fn to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}
