//! The Leech lattice Λ in coordinates scaled by √8, and Λ/2Λ.
//!
//! A class of Λ/2Λ is encoded as the 24-bit vector `c mod 2` where `v = c·B`
//! for the integral basis `B` (rows are basis vectors). Since `N = 8·B⁻¹` is
//! an integer matrix, `c mod 2` only depends on every `vᵢ mod 16`. The map is
//! evaluated by summing per-coordinate lookups in 24 four-bit lanes.

use std::io::{self, Read, Write};
use std::sync::atomic::{AtomicU8, AtomicUsize, Ordering};
use std::sync::OnceLock;

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{parity, Gf2Matrix};
use crate::golay::{GolayCode, N};
use crate::DataError;

pub const LEECH_BASIS_TXT: &str = include_str!("../../../data/leech_basis.txt");

pub type Coords = [i32; N];

pub const NUM_CLASSES: usize = 1 << 24;
pub const SHORT_CLASSES: u64 = 98_280;
pub const CACHE_MAGIC: &[u8; 12] = b"LEECH2TYPES1";

#[derive(Debug, Error)]
pub enum LeechError {
    #[error("vector is not in the Leech lattice")]
    NotMember,
    #[error("class {0:#08x} is not short")]
    NotShort(u32),
    #[error("nonzero class {0:#08x} was never hit")]
    Unmarked(u32),
    #[error("class {index:#08x} of type {ty} was hit {count} times, expected {expected}")]
    Multiplicity { index: u32, ty: u8, count: u8, expected: u8 },
    #[error("norm {norm} vector landed in class {index:#08x} already of type {ty}")]
    LateHit { norm: u32, index: u32, ty: u8 },
    #[error("norm {norm}: enumerated {got} vectors, expected {expected}")]
    Total { norm: u32, got: u64, expected: u64 },
    #[error("type table cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LeechVector {
    pub coords: Coords,
}

impl LeechVector {
    pub fn new(coords: Coords) -> Self {
        LeechVector { coords }
    }

    /// `Σ xᵢ² / 8`, exact for lattice members.
    pub fn norm(&self) -> i64 {
        self.coords.iter().map(|&x| (x as i64) * (x as i64)).sum::<i64>() / 8
    }

    pub fn dot(&self, other: &LeechVector) -> i64 {
        dot8(&self.coords, &other.coords)
    }
}

/// `(x · y) / 8`, the inner product in unscaled coordinates.
pub fn dot8(x: &Coords, y: &Coords) -> i64 {
    x.iter().zip(y).map(|(&a, &b)| a as i64 * b as i64).sum::<i64>() / 8
}

pub fn sq_norm(x: &Coords) -> i64 {
    x.iter().map(|&a| a as i64 * a as i64).sum()
}

/// A class of Λ/2Λ as coordinates modulo 2 in the basis `B`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Leech2Vector(pub u32);

const LOW3: u128 = 0x7777_7777_7777_7777_7777_7777_u128;
const HIGH1: u128 = 0x8888_8888_8888_8888_8888_8888_u128;

/// Lane-wise addition modulo 16 of 24 packed nibbles.
#[inline(always)]
fn lane_add(a: u128, b: u128) -> u128 {
    ((a & LOW3) + (b & LOW3)) ^ ((a ^ b) & HIGH1)
}

/// Gathers bit 3 of each lane into a 24-bit index.
#[inline(always)]
fn lane_bits(acc: u128) -> u32 {
    let x = acc >> 3;
    let mut out = 0u32;
    for k in 0..6 {
        let chunk = ((x >> (16 * k)) as u32) & 0x1111;
        out |= ((chunk.wrapping_mul(0x249) >> 9) & 0xf) << (4 * k);
    }
    out
}

pub struct Leech {
    code: GolayCode,
    basis: [Coords; N],
    lanes: Box<[[u128; 16]; N]>,
    gram_mod2: Gf2Matrix,
    q_diag: u32,
    q_upper: [u32; N],
}

impl Leech {
    pub fn standard() -> &'static Leech {
        static L: OnceLock<Leech> = OnceLock::new();
        L.get_or_init(|| {
            let basis = parse_basis(LEECH_BASIS_TXT).expect("shipped leech basis parses");
            Leech::from_basis(GolayCode::standard().clone(), basis).expect("shipped leech basis is valid")
        })
    }

    pub fn from_basis(code: GolayCode, basis: [Coords; N]) -> Result<Self, DataError> {
        let err = |r: String| DataError::new("leech basis", r);
        for (i, row) in basis.iter().enumerate() {
            if !member_with(&code, row) {
                return Err(err(format!("row {i} is not a lattice vector")));
            }
        }
        let inv = inverse(&basis).ok_or_else(|| err("basis is singular".into()))?;
        let det = determinant(&basis);
        if det.abs() != 8i128.pow(12) {
            return Err(err(format!("determinant {det} is not ±8^12")));
        }
        let mut n8 = [[0i64; N]; N];
        for i in 0..N {
            for j in 0..N {
                let x = inv[i][j] * Ratio::from_integer(8);
                if !x.is_integer() {
                    return Err(err("8·B⁻¹ is not integral".into()));
                }
                n8[i][j] = *x.numer() as i64;
            }
        }
        let mut lanes = Box::new([[0u128; 16]; N]);
        for (i, tab) in lanes.iter_mut().enumerate() {
            for (r, slot) in tab.iter_mut().enumerate() {
                let mut packed = 0u128;
                for j in 0..N {
                    let v = (r as i64 * n8[i][j]).rem_euclid(16) as u128;
                    packed |= v << (4 * j);
                }
                *slot = packed;
            }
        }
        let mut gram_rows = [0u32; N];
        let mut q_diag = 0u32;
        let mut q_upper = [0u32; N];
        for i in 0..N {
            for j in 0..N {
                let g = dot8(&basis[i], &basis[j]);
                if g & 1 == 1 {
                    gram_rows[i] |= 1 << j;
                    if j > i {
                        q_upper[i] |= 1 << j;
                    }
                }
                if i == j && (g / 2) & 1 == 1 {
                    q_diag |= 1 << i;
                }
            }
        }
        let gram_mod2 = Gf2Matrix::from_rows(N, &gram_rows);
        if !gram_mod2.is_invertible() {
            return Err(err("Gram matrix is not unimodular".into()));
        }
        Ok(Leech { code, basis, lanes, gram_mod2, q_diag, q_upper })
    }

    pub fn code(&self) -> &GolayCode {
        &self.code
    }

    pub fn basis(&self) -> &[Coords; N] {
        &self.basis
    }

    pub fn is_member(&self, x: &Coords) -> bool {
        member_with(&self.code, x)
    }

    /// The class of a lattice vector; non-members are rejected.
    pub fn to_leech2(&self, x: &Coords) -> Result<Leech2Vector, LeechError> {
        if !self.is_member(x) {
            return Err(LeechError::NotMember);
        }
        Ok(Leech2Vector(self.class_of_member(x)))
    }

    /// Class index of a vector known to be in Λ.
    #[inline]
    pub fn class_of_member(&self, x: &Coords) -> u32 {
        let mut acc = 0u128;
        for (i, &v) in x.iter().enumerate() {
            acc = lane_add(acc, self.lanes[i][(v & 15) as usize]);
        }
        debug_assert_eq!(acc & LOW3, 0, "vector is not in the lattice");
        lane_bits(acc)
    }

    /// Some preimage of a class: `Σ cᵢ Bᵢ`.
    pub fn representative(&self, c: Leech2Vector) -> Coords {
        let mut out = [0i32; N];
        for i in 0..N {
            if c.0 >> i & 1 == 1 {
                for j in 0..N {
                    out[j] += self.basis[i][j];
                }
            }
        }
        out
    }

    pub fn gram_mod2(&self) -> &Gf2Matrix {
        &self.gram_mod2
    }

    /// `⟨a, b⟩ mod 2`.
    #[inline]
    pub fn bilinear(&self, a: Leech2Vector, b: Leech2Vector) -> u32 {
        parity(self.gram_mod2.apply(a.0) & b.0)
    }

    /// `(norm / 2) mod 2` of any preimage, which is the type modulo 2.
    pub fn q(&self, a: Leech2Vector) -> u32 {
        let c = a.0;
        let mut acc = parity(c & self.q_diag);
        let mut bits = c;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= parity(self.q_upper[i] & c);
            bits &= bits - 1;
        }
        acc
    }

    /// `(bilinear, q(a))`.
    pub fn forms(&self, a: Leech2Vector, b: Leech2Vector) -> (u32, u32) {
        (self.bilinear(a, b), self.q(a))
    }

    /// The type-4 class of `(8, 0²³)`.
    pub fn lambda_omega(&self) -> Leech2Vector {
        let mut x = [0i32; N];
        x[0] = 8;
        Leech2Vector(self.class_of_member(&x))
    }

    /// The short vector `4e₂ − 4e₃`, inside the first MOG column.
    pub fn lambda_beta_vector() -> Coords {
        let mut x = [0i32; N];
        x[2] = 4;
        x[3] = -4;
        x
    }

    pub fn lambda_beta(&self) -> Leech2Vector {
        Leech2Vector(self.class_of_member(&Self::lambda_beta_vector()))
    }

    /// Disjoint pieces of the enumeration of vectors of the given norm.
    pub fn work_units(&self, norm: u32) -> Vec<WorkUnit> {
        let budget = 8 * norm as i32;
        let mut out = Vec::new();
        for m in 0..2u8 {
            for &c in self.code.codewords() {
                let min_cost: i32 = if m == 0 { 4 * c.count_ones() as i32 } else { N as i32 };
                if min_cost <= budget {
                    out.push(WorkUnit { odd: m == 1, codeword: c });
                }
            }
        }
        out
    }

    /// Calls `f` once for every lattice vector of the given norm in `unit`.
    pub fn enumerate_unit<F: FnMut(&Coords, u32)>(&self, norm: u32, unit: WorkUnit, f: F) {
        let mut res = [0u8; N];
        for (i, r) in res.iter_mut().enumerate() {
            let in_c = unit.codeword >> i & 1 == 1;
            *r = match (unit.odd, in_c) {
                (false, false) => 0,
                (false, true) => 2,
                (true, false) => 1,
                (true, true) => 3,
            };
        }
        let mut suffix = [0i32; N + 1];
        for i in (0..N).rev() {
            suffix[i] = suffix[i + 1] + MIN_COST[res[i] as usize];
        }
        let budget = 8 * norm as i32;
        if suffix[0] > budget {
            return;
        }
        let mut dfs = Dfs {
            lanes: &self.lanes,
            res,
            suffix,
            coords: [0; N],
            target: if unit.odd { 4 } else { 0 },
            f,
        };
        dfs.go(0, budget, 0, 0);
    }

    /// Calls `f` for every vector of the given norm, in a fixed order.
    pub fn minimal_vectors<F: FnMut(&Coords, u32)>(&self, norm: u32, mut f: F) {
        for unit in self.work_units(norm) {
            self.enumerate_unit(norm, unit, &mut f);
        }
    }

    pub fn count_vectors(&self, norm: u32) -> u64 {
        self.work_units(norm)
            .into_par_iter()
            .map(|u| {
                let mut n = 0u64;
                self.enumerate_unit(norm, u, |_, _| n += 1);
                n
            })
            .sum()
    }
}

fn member_with(code: &GolayCode, x: &Coords) -> bool {
    let m = x[0] & 1;
    let mut support = 0u32;
    let mut sum = 0i64;
    for (i, &v) in x.iter().enumerate() {
        if v & 1 != m {
            return false;
        }
        if (v - m - 2).rem_euclid(4) == 0 {
            support |= 1 << i;
        }
        sum += v as i64;
    }
    code.is_codeword(support) && sum.rem_euclid(8) == (4 * m as i64) % 8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WorkUnit {
    pub odd: bool,
    pub codeword: u32,
}

const MIN_COST: [i32; 4] = [0, 1, 4, 1];
// Values of each residue mod 4 up to |x| = 8, by increasing square.
const VALUES: [&[i32]; 4] = [&[0, 4, -4, 8, -8], &[1, -3, 5, -7], &[2, -2, 6, -6], &[-1, 3, -5, 7]];

struct Dfs<'a, F> {
    lanes: &'a [[u128; 16]; N],
    res: [u8; N],
    suffix: [i32; N + 1],
    coords: Coords,
    target: i32,
    f: F,
}

impl<F: FnMut(&Coords, u32)> Dfs<'_, F> {
    fn go(&mut self, i: usize, budget: i32, acc: u128, sum: i32) {
        let r = self.res[i] as usize;
        if i == N - 1 {
            let x0 = (budget as f64).sqrt() as i32;
            if x0 * x0 != budget {
                return;
            }
            for x in [x0, -x0] {
                if x.rem_euclid(4) as usize == r && (sum + x).rem_euclid(8) == self.target {
                    self.coords[i] = x;
                    let acc = lane_add(acc, self.lanes[i][(x & 15) as usize]);
                    (self.f)(&self.coords, lane_bits(acc));
                }
                if x0 == 0 {
                    break;
                }
            }
            return;
        }
        let rest = self.suffix[i + 1];
        for &x in VALUES[r] {
            let cost = x * x;
            if cost + rest > budget {
                break;
            }
            self.coords[i] = x;
            self.go(i + 1, budget - cost, lane_add(acc, self.lanes[i][(x & 15) as usize]), sum + x);
        }
    }
}

pub fn parse_basis(text: &str) -> Result<[Coords; N], DataError> {
    let mut rows = Vec::new();
    for (ln, line) in crate::data_lines(text) {
        let r: Result<Vec<i32>, _> = line.split_whitespace().map(str::parse).collect();
        let r = r.map_err(|e| DataError::at("leech basis", ln, e.to_string()))?;
        if r.len() != N {
            return Err(DataError::at("leech basis", ln, format!("expected 24 entries, got {}", r.len())));
        }
        let mut row = [0i32; N];
        row.copy_from_slice(&r);
        rows.push(row);
    }
    if rows.len() != N {
        return Err(DataError::new("leech basis", format!("expected 24 rows, got {}", rows.len())));
    }
    let mut out = [[0i32; N]; N];
    out.copy_from_slice(&rows);
    Ok(out)
}

/// Upper triangular Hermite normal form of the lattice spanned by
/// `2·(Golay basis)`, `8eᵢ`, `4(e₀ + eᵢ)` and `(−3, 1²³)`.
pub fn hermite_basis(code: &GolayCode) -> [Coords; N] {
    let mut gens: Vec<[i64; N]> = Vec::new();
    for &w in code.basis() {
        let mut v = [0i64; N];
        for (i, x) in v.iter_mut().enumerate() {
            *x = 2 * (w >> i & 1) as i64;
        }
        gens.push(v);
    }
    for i in 0..N {
        let mut v = [0i64; N];
        v[i] = 8;
        gens.push(v);
        if i > 0 {
            let mut v = [0i64; N];
            v[0] = 4;
            v[i] = 4;
            gens.push(v);
        }
    }
    let mut v = [1i64; N];
    v[0] = -3;
    gens.push(v);

    let mut h: Vec<[i64; N]> = Vec::new();
    for col in 0..N {
        let (mut piv, rest): (Vec<_>, Vec<_>) = gens.into_iter().partition(|r| r[col] != 0);
        gens = rest;
        while piv.len() > 1 {
            piv.sort_by_key(|r| r[col].abs());
            let p = piv[0];
            let mut keep = vec![p];
            for mut r in piv.into_iter().skip(1) {
                let q = r[col].div_euclid(p[col]);
                for j in 0..N {
                    r[j] -= q * p[j];
                }
                if r[col] != 0 {
                    keep.push(r);
                } else if r.iter().any(|&x| x != 0) {
                    gens.push(r);
                }
            }
            piv = keep;
        }
        let mut p = piv.pop().expect("lattice has full rank");
        if p[col] < 0 {
            p.iter_mut().for_each(|x| *x = -*x);
        }
        h.push(p);
    }
    for i in 0..N {
        for k in 0..i {
            let q = h[k][i].div_euclid(h[i][i]);
            let hi = h[i];
            for j in 0..N {
                h[k][j] -= q * hi[j];
            }
        }
    }
    let mut out = [[0i32; N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = h[i][j] as i32;
        }
    }
    out
}

type Q = Ratio<i128>;

fn inverse(b: &[Coords; N]) -> Option<Vec<Vec<Q>>> {
    let mut a: Vec<Vec<Q>> = b.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect();
    let mut inv: Vec<Vec<Q>> =
        (0..N).map(|i| (0..N).map(|j| Q::from_integer((i == j) as i128)).collect()).collect();
    for col in 0..N {
        let p = (col..N).find(|&k| a[k][col] != Q::from_integer(0))?;
        a.swap(col, p);
        inv.swap(col, p);
        let d = a[col][col];
        for j in 0..N {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for k in 0..N {
            if k != col && a[k][col] != Q::from_integer(0) {
                let f = a[k][col];
                for j in 0..N {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[k][j] -= f * x;
                    inv[k][j] -= f * y;
                }
            }
        }
    }
    Some(inv)
}

fn determinant(b: &[Coords; N]) -> i128 {
    let mut a: Vec<Vec<Q>> = b.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect();
    let mut det = Q::from_integer(1);
    for col in 0..N {
        let Some(p) = (col..N).find(|&k| a[k][col] != Q::from_integer(0)) else {
            return 0;
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= a[col][col];
        for k in col + 1..N {
            let f = a[k][col] / a[col][col];
            for j in col..N {
                let x = a[col][j];
                a[k][j] -= f * x;
            }
        }
    }
    det.to_integer()
}

/// Types of all classes of Λ/2Λ as three bitmaps.
#[derive(Clone, PartialEq, Eq)]
pub struct TypeTable {
    maps: [Vec<u64>; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Census {
    pub type0: u64,
    pub type2: u64,
    pub type3: u64,
    pub type4: u64,
}

impl Census {
    pub fn as_array(&self) -> [u64; 4] {
        [self.type0, self.type2, self.type3, self.type4]
    }
}

/// Totals and hit multiplicities observed while building a [`TypeTable`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CensusReport {
    pub norm_totals: [u64; 3],
    /// Observed (min, max) hits per class for types 2, 3, 4.
    pub multiplicity: [(u8, u8); 3],
    pub census: Census,
}

pub const EXPECTED_TOTALS: [u64; 3] = [196_560, 16_773_120, 398_034_000];
const EXPECTED_MULT: [u8; 3] = [2, 2, 48];

impl TypeTable {
    fn empty() -> Self {
        TypeTable { maps: [vec![0; NUM_CLASSES / 64], vec![0; NUM_CLASSES / 64], vec![0; NUM_CLASSES / 64]] }
    }

    #[inline]
    pub fn type_of(&self, index: u32) -> u8 {
        let (w, b) = ((index >> 6) as usize, index & 63);
        if self.maps[0][w] >> b & 1 == 1 {
            2
        } else if self.maps[1][w] >> b & 1 == 1 {
            3
        } else if self.maps[2][w] >> b & 1 == 1 {
            4
        } else {
            0
        }
    }

    pub fn census(&self) -> Census {
        let count = |m: &Vec<u64>| m.iter().map(|w| w.count_ones() as u64).sum::<u64>();
        let (t2, t3, t4) = (count(&self.maps[0]), count(&self.maps[1]), count(&self.maps[2]));
        Census { type0: NUM_CLASSES as u64 - t2 - t3 - t4, type2: t2, type3: t3, type4: t4 }
    }

    /// All classes of the given type, ascending.
    pub fn classes_of_type(&self, ty: u8) -> Vec<u32> {
        let m = match ty {
            2 => &self.maps[0],
            3 => &self.maps[1],
            4 => &self.maps[2],
            _ => return vec![0],
        };
        let mut out = Vec::new();
        for (w, &bits) in m.iter().enumerate() {
            let mut b = bits;
            while b != 0 {
                out.push((w as u32) << 6 | b.trailing_zeros());
                b &= b - 1;
            }
        }
        out
    }

    /// Re-checks a table from any source: disjoint maps, zero unmarked,
    /// every other class marked, census counts, and `type ≡ q (mod 2)`.
    pub fn verify(&self, leech: &Leech) -> Result<Census, LeechError> {
        for w in 0..NUM_CLASSES / 64 {
            let (a, b, c) = (self.maps[0][w], self.maps[1][w], self.maps[2][w]);
            if a & b != 0 || a & c != 0 || b & c != 0 {
                return Err(LeechError::Cache("type bitmaps overlap".into()));
            }
            let all = a | b | c;
            let expect = if w == 0 { !1u64 } else { !0u64 };
            if all != expect {
                let missing = (expect & !all).trailing_zeros();
                return Err(LeechError::Unmarked((w as u32) << 6 | missing));
            }
        }
        let census = self.census();
        if census.as_array() != [1, SHORT_CLASSES, 8_386_560, 8_292_375] {
            return Err(LeechError::Cache(format!("census {:?}", census.as_array())));
        }
        let bad = (1..NUM_CLASSES as u32)
            .into_par_iter()
            .find_any(|&i| leech.q(Leech2Vector(i)) != (self.type_of(i) & 1) as u32);
        if let Some(i) = bad {
            return Err(LeechError::Cache(format!("type of {i:#08x} disagrees with q")));
        }
        Ok(census)
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(CACHE_MAGIC)?;
        let mut buf = Vec::with_capacity(NUM_CLASSES / 8);
        for m in &self.maps {
            buf.clear();
            for word in m {
                buf.extend_from_slice(&word.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        Ok(())
    }

    /// Reads a cache file. The result must still pass [`TypeTable::verify`].
    pub fn read_from<R: Read>(mut r: R) -> Result<Self, LeechError> {
        let mut magic = [0u8; 12];
        r.read_exact(&mut magic)?;
        if &magic != CACHE_MAGIC {
            return Err(LeechError::Cache("bad magic".into()));
        }
        let mut t = TypeTable::empty();
        let mut buf = vec![0u8; NUM_CLASSES / 8];
        for m in t.maps.iter_mut() {
            r.read_exact(&mut buf)?;
            for (k, chunk) in buf.chunks_exact(8).enumerate() {
                m[k] = u64::from_le_bytes(chunk.try_into().expect("8 bytes"));
            }
        }
        let mut rest = [0u8; 1];
        if r.read(&mut rest)? != 0 {
            return Err(LeechError::Cache("trailing bytes".into()));
        }
        Ok(t)
    }
}

/// Progress notification: `(norm, finished units, total units)`.
pub type Progress<'a> = &'a (dyn Fn(u32, usize, usize) + Sync);

/// Marks classes by norm-4, then norm-6, then norm-8 vectors and checks the
/// hit multiplicities. Runs on the current rayon pool.
pub fn build_type_table(leech: &Leech, progress: Option<Progress<'_>>) -> Result<(TypeTable, CensusReport), LeechError> {
    let counter: Vec<AtomicU8> = (0..NUM_CLASSES).map(|_| AtomicU8::new(0)).collect();
    let mut table = TypeTable::empty();
    let mut report = CensusReport::default();
    let serial = rayon::current_num_threads() == 1;

    for (pass, norm) in [4u32, 6, 8].into_iter().enumerate() {
        if pass > 0 {
            counter.par_iter().for_each(|c| c.store(0, Ordering::Relaxed));
        }
        let units = leech.work_units(norm);
        let done = AtomicUsize::new(0);
        let run = |u: WorkUnit| -> u64 {
            let mut n = 0u64;
            leech.enumerate_unit(norm, u, |_, idx| {
                n += 1;
                let c = &counter[idx as usize];
                if serial {
                    let v = c.load(Ordering::Relaxed);
                    c.store(v.saturating_add(1), Ordering::Relaxed);
                } else {
                    let _ = c.fetch_update(Ordering::Relaxed, Ordering::Relaxed, |v| Some(v.saturating_add(1)));
                }
            });
            let d = done.fetch_add(1, Ordering::Relaxed) + 1;
            if let Some(p) = progress {
                if d.is_multiple_of(256) || d == units.len() {
                    p(norm, d, units.len());
                }
            }
            n
        };
        let total: u64 = if serial {
            units.iter().map(|&u| run(u)).sum()
        } else {
            units.par_iter().map(|&u| run(u)).sum()
        };
        if total != EXPECTED_TOTALS[pass] {
            return Err(LeechError::Total { norm, got: total, expected: EXPECTED_TOTALS[pass] });
        }
        report.norm_totals[pass] = total;

        if counter[0].load(Ordering::Relaxed) != 0 {
            return Err(LeechError::LateHit { norm, index: 0, ty: 0 });
        }
        let ty = (pass + 2) as u8;
        let expected = EXPECTED_MULT[pass];
        let prior: Vec<Vec<u64>> = table.maps[..pass].to_vec();
        let words: Vec<Result<(u64, u8, u8), LeechError>> = table.maps[pass]
            .par_iter_mut()
            .enumerate()
            .map(|(w, out)| {
                let mut bits = 0u64;
                let (mut lo, mut hi) = (u8::MAX, 0u8);
                for b in 0..64 {
                    let idx = (w << 6 | b) as u32;
                    let c = counter[idx as usize].load(Ordering::Relaxed);
                    if c == 0 {
                        continue;
                    }
                    if let Some(p) = prior.iter().position(|m| m[w] >> b & 1 == 1) {
                        // Norm-6 vectors may share a class with a norm-4 vector;
                        // norm-8 vectors never share a class with a shorter one.
                        if norm == 8 {
                            return Err(LeechError::LateHit { norm, index: idx, ty: (p + 2) as u8 });
                        }
                        continue;
                    }
                    if c != expected {
                        return Err(LeechError::Multiplicity { index: idx, ty, count: c, expected });
                    }
                    bits |= 1 << b;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                *out = bits;
                Ok((bits, lo, hi))
            })
            .collect();
        let (mut lo, mut hi) = (u8::MAX, 0u8);
        for r in words {
            let (bits, l, h) = r?;
            if bits != 0 {
                lo = lo.min(l);
                hi = hi.max(h);
            }
        }
        report.multiplicity[pass] = (lo, hi);
    }
    let census = table.census();
    if census.type0 != 1 {
        let missing = (1..NUM_CLASSES as u32).find(|&i| table.type_of(i) == 0).unwrap_or(0);
        return Err(LeechError::Unmarked(missing));
    }
    report.census = census;
    Ok((table, report))
}

/// `#{λ short : λ + λ_β of type 4}`.
pub fn feasible_census(table: &TypeTable, lambda_beta: Leech2Vector) -> Result<u64, LeechError> {
    if table.type_of(lambda_beta.0) != 2 {
        return Err(LeechError::NotShort(lambda_beta.0));
    }
    Ok(table.classes_of_type(2).into_iter().filter(|&l| table.type_of(l ^ lambda_beta.0) == 4).count() as u64)
}

/// Multiset of absolute coordinate values, as sorted `(value, count)` pairs.
pub fn shape(x: &Coords) -> Vec<(i32, usize)> {
    let mut a: Vec<i32> = x.iter().map(|v| v.abs()).collect();
    a.sort_unstable_by(|p, q| q.cmp(p));
    let mut out: Vec<(i32, usize)> = Vec::new();
    for v in a {
        match out.last_mut() {
            Some((w, n)) if *w == v => *n += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}
