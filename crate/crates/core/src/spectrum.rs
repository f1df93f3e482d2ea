//! Eigenspace dimensions of the adjoint action of an axis, obtained from the
//! inner products of short vectors with a fixed short vector `r`.

use std::collections::HashSet;

use thiserror::Error;

use crate::leech::{dot8, Coords, Leech, Leech2Vector, SHORT_CLASSES};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("vector is not a short lattice vector")]
    NotShort,
    #[error("r has odd Ω-parity")]
    OddParity,
    #[error("profile covers {0} classes, expected 98280")]
    Inconsistent(u64),
    #[error("the |ip| = 2 classes are not exactly the rst = 1 classes")]
    PairMismatch,
}

/// Counts over short classes `s ≠ ±r`, split by Ω-parity as `(even, odd)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ShortProfile {
    pub r: Leech2Vector,
    pub ip0: (u64, u64),
    pub ip1: (u64, u64),
    pub ip2: (u64, u64),
    /// Classes with `|⟨r, s⟩| = 4`, counting `r` itself.
    pub ip4: u64,
    /// Unordered pairs `{s, t}` with `λ_s + λ_t = λ_r`.
    pub pairs: (u64, u64),
    /// Short classes with even and odd Ω-parity, `r` included.
    pub parity_split: (u64, u64),
}

impl ShortProfile {
    pub fn total(&self) -> u64 {
        self.ip4 + self.ip0.0 + self.ip0.1 + self.ip1.0 + self.ip1.1 + self.ip2.0 + self.ip2.1
    }
}

/// Dimensions of the eigenspaces for the eigenvalues 16, 0, 4 and ½.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdSpectrum {
    pub dim16: u64,
    pub dim0: u64,
    pub dim4: u64,
    pub dim_half: u64,
}

impl AdSpectrum {
    pub fn total(&self) -> u64 {
        self.dim16 + self.dim0 + self.dim4 + self.dim_half
    }

    pub fn as_array(&self) -> [u64; 4] {
        [self.dim16, self.dim0, self.dim4, self.dim_half]
    }
}

/// One vector from each `±` pair of norm-4 vectors: the first nonzero
/// coordinate is positive.
pub fn short_representatives(leech: &Leech) -> Vec<(Coords, u32)> {
    let mut out = Vec::with_capacity(SHORT_CLASSES as usize);
    leech.minimal_vectors(4, |x, idx| {
        if x.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0) {
            out.push((*x, idx));
        }
    });
    out
}

pub fn short_vector_profile(leech: &Leech, r: &Coords) -> Result<ShortProfile, SpectrumError> {
    short_vector_profile_with(leech, r, &short_representatives(leech))
}

/// As [`short_vector_profile`], reusing a list from [`short_representatives`].
pub fn short_vector_profile_with(leech: &Leech, r: &Coords, shorts: &[(Coords, u32)]) -> Result<ShortProfile, SpectrumError> {
    if !leech.is_member(r) || dot8(r, r) != 4 {
        return Err(SpectrumError::NotShort);
    }
    let omega = leech.lambda_omega();
    let lr = Leech2Vector(leech.class_of_member(r));
    if leech.bilinear(omega, lr) != 0 {
        return Err(SpectrumError::OddParity);
    }
    let short_set: HashSet<u32> = shorts.iter().map(|&(_, i)| i).collect();
    let mut p = ShortProfile { r: lr, ..Default::default() };
    for (s, idx) in shorts {
        let odd = leech.bilinear(omega, Leech2Vector(*idx)) == 1;
        let bump = |pair: &mut (u64, u64)| if odd { pair.1 += 1 } else { pair.0 += 1 };
        bump(&mut p.parity_split);
        let in_pair = *idx != lr.0 && short_set.contains(&(idx ^ lr.0));
        let ip = dot8(r, s).abs();
        if (ip == 2) != in_pair {
            return Err(SpectrumError::PairMismatch);
        }
        match ip {
            0 => bump(&mut p.ip0),
            1 => bump(&mut p.ip1),
            2 => bump(&mut p.ip2),
            4 => p.ip4 += 1,
            _ => unreachable!("inner products of short vectors lie in {{0, ±1, ±2, ±4}}"),
        }
    }
    p.pairs = (p.ip2.0 / 2, p.ip2.1 / 2);
    if p.total() != SHORT_CLASSES {
        return Err(SpectrumError::Inconsistent(p.total()));
    }
    Ok(p)
}

// Fixed contributions from the 300-dimensional part: the axis itself
// (eigenvalue 16), one vector and the 276 duads (eigenvalue 0), and 23
// further vectors (eigenvalue 4).
const FIXED_16: u64 = 1;
const FIXED_0: u64 = 1 + 276;
const FIXED_4: u64 = 23;

/// Each odd-parity piece is counted three times.
pub fn eigenspace_dims(p: &ShortProfile) -> Result<AdSpectrum, SpectrumError> {
    if p.total() != SHORT_CLASSES || p.ip2 != (2 * p.pairs.0, 2 * p.pairs.1) {
        return Err(SpectrumError::Inconsistent(p.total()));
    }
    Ok(AdSpectrum {
        dim16: FIXED_16,
        dim0: FIXED_0 + p.pairs.0 + p.ip0.0 + 3 * (p.pairs.1 + p.ip0.1),
        dim4: FIXED_4 + p.pairs.0 + 3 * p.pairs.1,
        dim_half: p.ip1.0 + 3 * p.ip1.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_short_vectors() {
        let leech = Leech::standard();
        let mut x = [0; 24];
        x[0] = 8;
        assert_eq!(short_vector_profile_with(leech, &x, &[]), Err(SpectrumError::NotShort));
    }

    #[test]
    fn rejects_odd_parity() {
        let leech = Leech::standard();
        let mut x = [1; 24];
        x[0] = -3;
        assert_eq!(short_vector_profile_with(leech, &x, &[]), Err(SpectrumError::OddParity));
    }

    #[test]
    fn assembled_dimensions() {
        let p = ShortProfile {
            ip0: (24047, 22528),
            ip1: (22528, 24576),
            ip2: (2552, 2048),
            ip4: 1,
            pairs: (1276, 1024),
            ..Default::default()
        };
        let d = eigenspace_dims(&p).unwrap();
        assert_eq!(d.as_array(), [1, 96256, 4371, 96256]);
        assert_eq!(d.total(), 196_884);
        let bad = ShortProfile { ip4: 0, ..p };
        assert!(eigenspace_dims(&bad).is_err());
    }
}
