//! Generators of Co₀ = Aut(Λ) as matrices with entries in ℤ[½], and their
//! reduction to Co₁ acting on Λ/2Λ.
//!
//! Matrices act on row vectors, `v ↦ v·M`, and are stored as `2M`.

use std::fmt;

use crate::golay::{M24Element, N};
use crate::leech::{dot8, Coords, Leech, Leech2Vector};
use crate::DataError;

pub use crate::gf2::Gf2Matrix;

pub const CO0_GENERATORS_TXT: &str = include_str!("../../../data/co0_generators.txt");
pub const DENOM: i32 = 2;

#[derive(Clone, PartialEq, Eq)]
pub struct IntegralAutomorphism {
    name: String,
    twice: [[i32; N]; N],
}

impl fmt::Debug for IntegralAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegralAutomorphism({})", self.name)
    }
}

impl IntegralAutomorphism {
    /// From a matrix of doubled entries.
    pub fn from_doubled(name: impl Into<String>, twice: [[i32; N]; N]) -> Self {
        IntegralAutomorphism { name: name.into(), twice }
    }

    pub fn identity() -> Self {
        Self::scalar("identity", 1)
    }

    pub fn negation() -> Self {
        Self::scalar("negation", -1)
    }

    fn scalar(name: &str, s: i32) -> Self {
        let mut twice = [[0; N]; N];
        for (i, row) in twice.iter_mut().enumerate() {
            row[i] = DENOM * s;
        }
        Self::from_doubled(name, twice)
    }

    pub fn permutation(name: impl Into<String>, g: &M24Element) -> Self {
        let mut twice = [[0; N]; N];
        for (i, &p) in g.perm().iter().enumerate() {
            twice[i][p as usize] = DENOM;
        }
        Self::from_doubled(name, twice)
    }

    /// Negates the coordinates in `set`.
    pub fn sign_change(name: impl Into<String>, set: u32) -> Self {
        let mut twice = [[0; N]; N];
        for (i, row) in twice.iter_mut().enumerate() {
            row[i] = if set >> i & 1 == 1 { -DENOM } else { DENOM };
        }
        Self::from_doubled(name, twice)
    }

    /// Block diagonal `sₖ(J/2 − I)` on the six MOG column tetrads.
    pub fn xi(signs: [i32; 6]) -> Self {
        let mut twice = [[0; N]; N];
        for (k, &s) in signs.iter().enumerate() {
            for i in 0..4 {
                for j in 0..4 {
                    twice[4 * k + i][4 * k + j] = if i == j { -s } else { s };
                }
            }
        }
        Self::from_doubled("xi", twice)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn doubled(&self) -> &[[i32; N]; N] {
        &self.twice
    }

    /// `v·M`, or `None` if the image is not integral.
    pub fn apply(&self, v: &Coords) -> Option<Coords> {
        let mut acc = [0i64; N];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, a) in acc.iter_mut().enumerate() {
                *a += x as i64 * self.twice[i][j] as i64;
            }
        }
        let mut out = [0i32; N];
        for j in 0..N {
            if acc[j] % DENOM as i64 != 0 {
                return None;
            }
            out[j] = (acc[j] / DENOM as i64) as i32;
        }
        Some(out)
    }

    /// First `self`, then `other`.
    pub fn compose(&self, other: &IntegralAutomorphism) -> IntegralAutomorphism {
        let mut twice = [[0; N]; N];
        for i in 0..N {
            for j in 0..N {
                let s: i32 = (0..N).map(|k| self.twice[i][k] * other.twice[k][j]).sum();
                debug_assert_eq!(s % DENOM, 0);
                twice[i][j] = s / DENOM;
            }
        }
        Self::from_doubled(format!("{}*{}", self.name, other.name), twice)
    }
}

/// True iff `g` maps every basis row into Λ and preserves the Gram matrix.
/// A Gram-preserving map with integral coefficients has determinant ±1,
/// so it is invertible on Λ.
pub fn verify_automorphism(leech: &Leech, g: &IntegralAutomorphism) -> bool {
    let b = leech.basis();
    let mut images = Vec::with_capacity(N);
    for row in b {
        match g.apply(row) {
            Some(im) if leech.is_member(&im) => images.push(im),
            _ => return false,
        }
    }
    for i in 0..N {
        for j in i..N {
            if dot8(&images[i], &images[j]) != dot8(&b[i], &b[j]) {
                return false;
            }
        }
    }
    true
}

/// The induced map on Λ/2Λ: row `i` is the class of `Bᵢ·g`.
pub fn reduce_mod2(leech: &Leech, g: &IntegralAutomorphism) -> Result<Gf2Matrix, DataError> {
    if !verify_automorphism(leech, g) {
        return Err(DataError::new("reduce_mod2", format!("{} is not a lattice automorphism", g.name)));
    }
    let rows: Vec<u32> =
        leech.basis().iter().map(|r| leech.class_of_member(&g.apply(r).expect("verified integral"))).collect();
    Ok(Gf2Matrix::from_rows(N, &rows))
}

pub fn parse_generators(text: &str) -> Result<Vec<IntegralAutomorphism>, DataError> {
    let src = "co0 generators";
    let mut lines = crate::data_lines(text);
    match lines.next() {
        Some((_, "DENOM 2")) => {}
        Some((ln, _)) => return Err(DataError::at(src, ln, "expected header `DENOM 2`")),
        None => return Err(DataError::new(src, "empty file")),
    }
    let mut out = Vec::new();
    let mut current: Option<(String, Vec<[i32; N]>)> = None;
    let finish = |cur: Option<(String, Vec<[i32; N]>)>, out: &mut Vec<IntegralAutomorphism>| -> Result<(), DataError> {
        if let Some((name, rows)) = cur {
            if rows.len() != N {
                return Err(DataError::new(src, format!("matrix {name} has {} rows", rows.len())));
            }
            let mut m = [[0; N]; N];
            m.copy_from_slice(&rows);
            out.push(IntegralAutomorphism::from_doubled(name, m));
        }
        Ok(())
    };
    for (ln, line) in lines {
        if let Some(name) = line.strip_prefix("matrix ") {
            finish(current.take(), &mut out)?;
            current = Some((name.trim().to_string(), Vec::new()));
            continue;
        }
        let Some((_, rows)) = current.as_mut() else {
            return Err(DataError::at(src, ln, "row before any `matrix` line"));
        };
        let r: Result<Vec<i32>, _> = line.split_whitespace().map(str::parse).collect();
        let r = r.map_err(|e| DataError::at(src, ln, e.to_string()))?;
        if r.len() != N {
            return Err(DataError::at(src, ln, format!("expected 24 entries, got {}", r.len())));
        }
        rows.push(r.try_into().expect("length checked"));
    }
    finish(current.take(), &mut out)?;
    Ok(out)
}

/// The shipped generators of Co₀, each machine-verified.
pub fn co0_generators(leech: &Leech) -> Result<Vec<IntegralAutomorphism>, DataError> {
    let gens = parse_generators(CO0_GENERATORS_TXT)?;
    for g in &gens {
        if !verify_automorphism(leech, g) {
            return Err(DataError::new("co0 generators", format!("{} fails verification", g.name)));
        }
    }
    Ok(gens)
}

/// Reduced generators of Co₁ on Λ/2Λ.
pub fn co1_generators(leech: &Leech) -> Result<Vec<Gf2Matrix>, DataError> {
    co0_generators(leech)?.iter().map(|g| reduce_mod2(leech, g)).collect()
}

/// Applies a reduced matrix to a class.
pub fn act(m: &Gf2Matrix, l: Leech2Vector) -> Leech2Vector {
    Leech2Vector(m.apply(l.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golay::GolayCode;

    #[test]
    fn shipped_generators_match_construction() {
        let leech = Leech::standard();
        let gens = co0_generators(leech).unwrap();
        let m24 = GolayCode::standard().m24_generators().unwrap();
        assert_eq!(gens.len(), 4);
        assert_eq!(gens[0].doubled(), IntegralAutomorphism::permutation("a", &m24[0]).doubled());
        assert_eq!(gens[1].doubled(), IntegralAutomorphism::permutation("b", &m24[1]).doubled());
        assert_eq!(gens[2].doubled(), IntegralAutomorphism::sign_change("e", 0xff).doubled());
        assert_eq!(gens[3].doubled(), IntegralAutomorphism::xi([-1, 1, 1, 1, 1, 1]).doubled());
    }

    #[test]
    fn trivial_automorphisms() {
        let leech = Leech::standard();
        assert!(verify_automorphism(leech, &IntegralAutomorphism::identity()));
        assert!(verify_automorphism(leech, &IntegralAutomorphism::negation()));
        assert!(reduce_mod2(leech, &IntegralAutomorphism::identity()).unwrap().is_identity());
        assert!(reduce_mod2(leech, &IntegralAutomorphism::negation()).unwrap().is_identity());
    }

    #[test]
    fn scaling_a_coordinate_is_rejected() {
        let leech = Leech::standard();
        let mut twice = *IntegralAutomorphism::identity().doubled();
        twice[5][5] = 4;
        let g = IntegralAutomorphism::from_doubled("scale", twice);
        assert!(!verify_automorphism(leech, &g));
        assert!(reduce_mod2(leech, &g).is_err());
    }

    #[test]
    fn xi_sign_patterns() {
        let leech = Leech::standard();
        for mask in 0..64u32 {
            let signs: [i32; 6] = std::array::from_fn(|k| if mask >> k & 1 == 1 { -1 } else { 1 });
            let ok = verify_automorphism(leech, &IntegralAutomorphism::xi(signs));
            assert_eq!(ok, mask.count_ones() % 2 == 1, "signs {signs:?}");
        }
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        let leech = Leech::standard();
        let gens = co0_generators(leech).unwrap();
        for a in &gens {
            for b in &gens {
                let ab = a.compose(b);
                assert!(verify_automorphism(leech, &ab));
                let lhs = reduce_mod2(leech, &ab).unwrap();
                let rhs = reduce_mod2(leech, a).unwrap().mul(&reduce_mod2(leech, b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn parse_rejects_missing_header() {
        assert!(parse_generators("matrix x\n").is_err());
        assert!(parse_generators("").is_err());
    }
}
