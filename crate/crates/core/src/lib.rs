//! Exact re-derivation of the orders of the Monster and the Baby Monster by
//! counting axes.
//!
//! The pipeline runs bottom up:
//!
//! * [`golay`]: the Golay code in MOG coordinates, its cocode, and M24.
//! * [`leech`]: the Leech lattice, the classes of Λ/2Λ, their types and forms.
//! * [`conway`]: generators of Co₀ and their reduction to Co₁ on Λ/2Λ.
//! * [`orbit_engine`]: orbits, Schreier vectors and randomized stabilizer
//!   chains for bit-matrix groups.
//! * [`spectrum`]: eigenspace dimensions of an axis from short vectors.
//! * [`counting`]: orbit sizes from transition matrices and the final orders.
//! * [`tables`]: consistency of the published orbit and fusion tables.
//! * [`certificate`]: a small text file that re-checks all the arithmetic.
//!
//! ```
//! use axcount::counting::{baby_monster_order, monster_order};
//! use num_bigint::BigUint;
//!
//! let x_plus: BigUint = "97239461142009186000".parse().unwrap();
//! let x_minus: BigUint = "11707448673375".parse().unwrap();
//! let co2: BigUint = "42305421312000".parse().unwrap();
//! let m = monster_order(&x_plus, &x_minus, &co2);
//! assert_eq!(m.to_string().len(), 54);
//! let b = baby_monster_order(&x_minus, &co2).unwrap();
//! assert_eq!(m, BigUint::from(2u8) * x_plus * b);
//! ```

pub mod certificate;
pub mod conway;
pub mod counting;
pub mod gf2;
pub mod golay;
pub mod leech;
pub mod orbit_engine;
pub mod spectrum;
pub mod tables;

pub use gf2::Gf2Matrix;

use thiserror::Error;

/// A malformed or inconsistent embedded data file.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{source_name}{}: {reason}", .line.map(|l| format!(" line {l}")).unwrap_or_default())]
pub struct DataError {
    pub source_name: String,
    pub line: Option<usize>,
    pub reason: String,
}

impl DataError {
    pub fn new(source_name: impl Into<String>, reason: impl Into<String>) -> Self {
        DataError { source_name: source_name.into(), line: None, reason: reason.into() }
    }

    pub fn at(source_name: impl Into<String>, line: usize, reason: impl Into<String>) -> Self {
        DataError { source_name: source_name.into(), line: Some(line), reason: reason.into() }
    }
}

/// Non-empty lines with `#` comments stripped, with 1-based line numbers.
pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/golay.md")]
    mod golay {}
    #[doc = include_str!("../../../book/src/leech.md")]
    mod leech {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/spectrum.md")]
    mod spectrum {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/certificate.md")]
    mod certificate {}
}
