//! Square bit matrices over F₂ acting on row vectors.
//!
//! A vector of length `n <= 24` is a `u32` whose bit `i` is coordinate `i`.
//! Row `i` of a matrix is the image of the unit vector `e_i`, so `v · M` is
//! the XOR of the rows selected by the bits of `v`.

use std::fmt;

pub const MAX_DIM: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n: usize,
    rows: [u32; MAX_DIM],
}

impl Gf2Matrix {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        let mut rows = [0u32; MAX_DIM];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            *r = 1 << i;
        }
        Gf2Matrix { n, rows }
    }

    /// Builds a matrix from its rows. Bits at positions `>= n` are rejected.
    pub fn from_rows(n: usize, rows: &[u32]) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        assert_eq!(rows.len(), n, "expected {n} rows");
        let mask = mask(n);
        let mut out = [0u32; MAX_DIM];
        for (i, &r) in rows.iter().enumerate() {
            assert_eq!(r & !mask, 0, "row {i} has bits outside dimension {n}");
            out[i] = r;
        }
        Gf2Matrix { n, rows: out }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.n]
    }

    pub fn row(&self, i: usize) -> u32 {
        self.rows[i]
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        let mut acc = 0;
        let mut bits = v;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= self.rows[i];
            bits &= bits - 1;
        }
        acc
    }

    /// `self · other`: first apply `self`, then `other`.
    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut rows = [0u32; MAX_DIM];
        for i in 0..self.n {
            rows[i] = other.apply(self.rows[i]);
        }
        Gf2Matrix { n: self.n, rows }
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<u32> = self.rows().to_vec();
        let mut rank = 0;
        for bit in 0..self.n {
            let Some(p) = (rank..rows.len()).find(|&k| rows[k] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (k, r) in rows.iter_mut().enumerate() {
                if k != rank && *r >> bit & 1 == 1 {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Gauss-Jordan inverse, or `None` for a singular matrix.
    pub fn inverse(&self) -> Option<Gf2Matrix> {
        let n = self.n;
        let mut a = self.rows;
        let mut b = Gf2Matrix::identity(n).rows;
        for col in 0..n {
            let p = (col..n).find(|&k| a[k] >> col & 1 == 1)?;
            a.swap(col, p);
            b.swap(col, p);
            for k in 0..n {
                if k != col && a[k] >> col & 1 == 1 {
                    a[k] ^= a[col];
                    b[k] ^= b[col];
                }
            }
        }
        Some(Gf2Matrix { n, rows: b })
    }

    pub fn is_identity(&self) -> bool {
        *self == Gf2Matrix::identity(self.n)
    }

    /// Byte lookup tables for fast repeated application.
    pub fn tables(&self) -> ApplyTable {
        ApplyTable::new(self)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix({})", self.n)?;
        for r in self.rows() {
            let s: String = (0..self.n).map(|j| if r >> j & 1 == 1 { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

pub fn mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Precomputed images of every byte of the input vector.
#[derive(Clone)]
pub struct ApplyTable {
    t: Box<[[u32; 256]; 3]>,
}

impl ApplyTable {
    pub fn new(m: &Gf2Matrix) -> Self {
        let mut t = Box::new([[0u32; 256]; 3]);
        for (k, tab) in t.iter_mut().enumerate() {
            for b in 1..256usize {
                let low = b & (b - 1);
                let i = 8 * k + b.trailing_zeros() as usize;
                let r = if i < m.n { m.rows[i] } else { 0 };
                tab[b] = tab[low] ^ r;
            }
        }
        ApplyTable { t }
    }

    #[inline(always)]
    pub fn apply(&self, v: u32) -> u32 {
        self.t[0][(v & 0xff) as usize]
            ^ self.t[1][(v >> 8 & 0xff) as usize]
            ^ self.t[2][(v >> 16 & 0xff) as usize]
    }
}

#[inline]
pub fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_matrix(n: usize, seed: &mut u64) -> Gf2Matrix {
        let rows: Vec<u32> = (0..n)
            .map(|_| {
                *seed ^= *seed << 13;
                *seed ^= *seed >> 7;
                *seed ^= *seed << 17;
                (*seed as u32) & mask(n)
            })
            .collect();
        Gf2Matrix::from_rows(n, &rows)
    }

    #[test]
    fn inverse_round_trip() {
        let mut seed = 0x1234_5678_9abc_def1u64;
        let mut found = 0;
        while found < 20 {
            let m = random_matrix(24, &mut seed);
            if let Some(inv) = m.inverse() {
                assert!(m.mul(&inv).is_identity());
                assert!(inv.mul(&m).is_identity());
                found += 1;
            } else {
                assert!(m.rank() < 24);
            }
        }
    }

    #[test]
    fn table_matches_apply() {
        let mut seed = 99;
        let m = random_matrix(21, &mut seed);
        let t = m.tables();
        for v in (0..1u32 << 21).step_by(977) {
            assert_eq!(t.apply(v), m.apply(v));
        }
    }

    #[test]
    fn product_is_composition() {
        let mut seed = 7;
        let a = random_matrix(11, &mut seed);
        let b = random_matrix(11, &mut seed);
        let ab = a.mul(&b);
        for v in 0..1u32 << 11 {
            assert_eq!(ab.apply(v), b.apply(a.apply(v)));
        }
    }
}
