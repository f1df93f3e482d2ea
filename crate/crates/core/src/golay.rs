//! The binary Golay code, its cocode, and M24.
//!
//! Points are numbered by the Miracle Octad Generator: point `4 * col + row`
//! for columns `0..6` and rows labelled `0, 1, ω, ω̄` (the elements of GF(4),
//! encoded `0, 1, 2, 3` so that addition is XOR). A word is a codeword iff
//! every column has the parity of the top row and the column scores
//! (the sum of the row labels of the set bits) form a hexacode word.

use std::sync::OnceLock;

use crate::gf2::{parity, Gf2Matrix};
use crate::DataError;

pub const GOLAY_BASIS_TXT: &str = include_str!("../../../data/golay_basis.txt");
pub const M24_GENERATORS_TXT: &str = include_str!("../../../data/m24_generators.txt");

pub const N: usize = 24;
pub const OMEGA: u32 = 0xff_ffff;
pub const M24_ORDER: u64 = 244_823_040;

fn gf4_mul(a: u8, b: u8) -> u8 {
    if a == 0 || b == 0 {
        return 0;
    }
    const LOG: [u8; 4] = [0, 0, 1, 2];
    const EXP: [u8; 3] = [1, 2, 3];
    EXP[((LOG[a as usize] + LOG[b as usize]) % 3) as usize]
}

/// The 64 words `(a, b, c, f(1), f(ω), f(ω̄))` with `f(x) = ax² + bx + c`.
pub fn hexacode() -> Vec<[u8; 6]> {
    let mut out = Vec::with_capacity(64);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                let f = |x: u8| gf4_mul(a, gf4_mul(x, x)) ^ gf4_mul(b, x) ^ c;
                out.push([a, b, c, f(1), f(2), f(3)]);
            }
        }
    }
    out
}

fn column_score(nibble: u32) -> u8 {
    (0..4u8).filter(|&r| nibble >> r & 1 == 1).fold(0, |s, r| s ^ r)
}

/// All 4096 codewords of the MOG description, sorted.
pub fn mog_codewords() -> Vec<u32> {
    let mut by_score: [[Vec<u32>; 2]; 4] = Default::default();
    for nib in 0..16u32 {
        by_score[column_score(nib) as usize][(nib.count_ones() & 1) as usize].push(nib);
    }
    let mut words = Vec::with_capacity(4096);
    for h in hexacode() {
        for par in 0..2usize {
            let choices: Vec<&Vec<u32>> = h.iter().map(|&s| &by_score[s as usize][par]).collect();
            for pick in 0..1u32 << 6 {
                let mut w = 0u32;
                let mut top = 0;
                for (k, c) in choices.iter().enumerate() {
                    let nib = c[(pick >> k & 1) as usize];
                    top ^= nib & 1;
                    w |= nib << (4 * k);
                }
                if top as usize == par {
                    words.push(w);
                }
            }
        }
    }
    words.sort_unstable();
    words.dedup();
    words
}

/// Reduced echelon basis of a binary code, pivots at the lowest set bit.
pub fn echelon_basis(words: &[u32]) -> Vec<u32> {
    let mut rows: Vec<u32> = Vec::new();
    for &w0 in words {
        let mut w = w0;
        for &r in &rows {
            if w >> r.trailing_zeros() & 1 == 1 {
                w ^= r;
            }
        }
        if w != 0 {
            let p = w & w.wrapping_neg();
            for r in rows.iter_mut() {
                if *r & p != 0 {
                    *r ^= w;
                }
            }
            rows.push(w);
        }
    }
    rows.sort_by_key(|r| r.trailing_zeros());
    rows
}

pub fn span(basis: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32];
    for &b in basis {
        let ext: Vec<u32> = out.iter().map(|&x| x ^ b).collect();
        out.extend(ext);
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CocodeElement {
    /// 12-bit syndrome, the coset label.
    pub syndrome: u16,
    pub rep: u32,
    pub weight: u8,
}

impl CocodeElement {
    pub fn is_even(&self) -> bool {
        self.weight.is_multiple_of(2)
    }
}

#[derive(Clone, Debug)]
pub struct GolayCode {
    basis: [u32; 12],
    words: Vec<u32>,
    syn_tab: [[u16; 256]; 3],
    coset_rep: Vec<u32>,
    coset_weight: Vec<u8>,
    even_basis: [u32; 11],
    even_coord: Vec<u16>,
}

impl GolayCode {
    pub fn from_basis(basis: &[u32]) -> Result<Self, DataError> {
        if basis.len() != 12 {
            return Err(DataError::new("golay basis", format!("expected 12 rows, got {}", basis.len())));
        }
        if basis.iter().any(|&b| b > OMEGA) {
            return Err(DataError::new("golay basis", "row wider than 24 bits"));
        }
        if echelon_basis(basis).len() != 12 {
            return Err(DataError::new("golay basis", "rows are linearly dependent"));
        }
        for (i, &a) in basis.iter().enumerate() {
            if a.count_ones() % 4 != 0 {
                return Err(DataError::new("golay basis", format!("row {i} has weight {}", a.count_ones())));
            }
            for &b in &basis[i + 1..] {
                if (a & b).count_ones() % 2 != 0 {
                    return Err(DataError::new("golay basis", "rows are not orthogonal"));
                }
            }
        }
        let mut b12 = [0u32; 12];
        b12.copy_from_slice(basis);
        let words = span(&b12);
        if words.iter().skip(1).any(|w| w.count_ones() < 8) {
            return Err(DataError::new("golay basis", "minimum weight below 8"));
        }

        // The code is self-dual, so its own basis is a parity check matrix.
        let mut syn_tab = [[0u16; 256]; 3];
        for (k, tab) in syn_tab.iter_mut().enumerate() {
            for byte in 0..256u32 {
                let w = byte << (8 * k);
                let mut s = 0u16;
                for (j, &row) in b12.iter().enumerate() {
                    s |= (parity(w & row) as u16) << j;
                }
                tab[byte as usize] = s;
            }
        }

        let mut code = GolayCode {
            basis: b12,
            words,
            syn_tab,
            coset_rep: vec![u32::MAX; 4096],
            coset_weight: vec![u8::MAX; 4096],
            even_basis: [0; 11],
            even_coord: vec![u16::MAX; 4096],
        };
        code.fill_cosets();
        code.fill_even_basis();
        Ok(code)
    }

    pub fn from_text(text: &str) -> Result<Self, DataError> {
        let mut rows = Vec::new();
        for (ln, line) in crate::data_lines(text) {
            if line.len() != N || !line.bytes().all(|c| c == b'0' || c == b'1') {
                return Err(DataError::at("golay basis", ln, "expected 24 characters of 0/1"));
            }
            let w = line.bytes().enumerate().fold(0u32, |w, (i, c)| w | ((c - b'0') as u32) << i);
            rows.push(w);
        }
        Self::from_basis(&rows)
    }

    /// The code built from the hexacode, in reduced echelon form.
    pub fn build() -> Self {
        let basis = echelon_basis(&mog_codewords());
        Self::from_basis(&basis).expect("MOG construction is a Golay code")
    }

    /// Shared instance parsed from the shipped basis file.
    pub fn standard() -> &'static GolayCode {
        static CODE: OnceLock<GolayCode> = OnceLock::new();
        CODE.get_or_init(|| GolayCode::from_text(GOLAY_BASIS_TXT).expect("shipped golay basis is valid"))
    }

    fn fill_cosets(&mut self) {
        // Visit words of weight 0..=4 in increasing weight; the first word
        // reaching a coset is a minimal representative.
        let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
        let mut by_weight: [Vec<u32>; 5] = Default::default();
        while let Some((w, next)) = stack.pop() {
            by_weight[w.count_ones() as usize].push(w);
            if w.count_ones() < 4 {
                for i in next..N {
                    stack.push((w | 1 << i, i + 1));
                }
            }
        }
        for (wt, list) in by_weight.iter_mut().enumerate() {
            list.sort_unstable();
            for &w in list.iter() {
                let s = self.syndrome_bits(w) as usize;
                if self.coset_rep[s] == u32::MAX {
                    self.coset_rep[s] = w;
                    self.coset_weight[s] = wt as u8;
                }
            }
        }
        assert!(self.coset_rep.iter().all(|&r| r != u32::MAX), "cocode not covered by words of weight <= 4");
    }

    fn fill_even_basis(&mut self) {
        let mut chosen: Vec<u32> = Vec::new();
        let mut chosen_syn: Vec<u32> = Vec::new();
        for i in 1..N {
            let w = 1 | 1 << i;
            let s = self.syndrome_bits(w) as u32;
            let mut trial = chosen_syn.clone();
            trial.push(s);
            if echelon_basis(&trial).len() == trial.len() {
                chosen.push(w);
                chosen_syn.push(s);
            }
            if chosen.len() == 11 {
                break;
            }
        }
        assert_eq!(chosen.len(), 11);
        self.even_basis.copy_from_slice(&chosen);
        for c in 0..1u32 << 11 {
            let mut s = 0u32;
            for (k, &syn) in chosen_syn.iter().enumerate() {
                if c >> k & 1 == 1 {
                    s ^= syn;
                }
            }
            self.even_coord[s as usize] = c as u16;
        }
    }

    pub fn basis(&self) -> &[u32; 12] {
        &self.basis
    }

    pub fn codewords(&self) -> &[u32] {
        &self.words
    }

    /// The 12 rows of the parity check matrix. The code is self-dual.
    pub fn parity_check(&self) -> &[u32; 12] {
        &self.basis
    }

    #[inline]
    pub fn syndrome_bits(&self, w: u32) -> u16 {
        self.syn_tab[0][(w & 0xff) as usize]
            ^ self.syn_tab[1][(w >> 8 & 0xff) as usize]
            ^ self.syn_tab[2][(w >> 16 & 0xff) as usize]
    }

    #[inline]
    pub fn is_codeword(&self, w: u32) -> bool {
        w <= OMEGA && self.syndrome_bits(w) == 0
    }

    pub fn syndrome(&self, w: u32) -> CocodeElement {
        let s = self.syndrome_bits(w);
        CocodeElement { syndrome: s, rep: self.coset_rep[s as usize], weight: self.coset_weight[s as usize] }
    }

    pub fn coset(&self, syndrome: u16) -> CocodeElement {
        let s = syndrome as usize & 0xfff;
        CocodeElement { syndrome: s as u16, rep: self.coset_rep[s], weight: self.coset_weight[s] }
    }

    pub fn octads(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().copied().filter(|w| w.count_ones() == 8)
    }

    /// Representatives `e_0 + e_i` of the chosen basis of the even cocode.
    pub fn even_cocode_basis(&self) -> &[u32; 11] {
        &self.even_basis
    }

    /// Coordinates of an even coset in the even cocode basis.
    pub fn even_coordinates(&self, w: u32) -> Option<u16> {
        let c = self.even_coord[self.syndrome_bits(w) as usize];
        (c != u16::MAX).then_some(c)
    }

    /// The coset with the given even cocode coordinates.
    pub fn even_coset(&self, coords: u16) -> CocodeElement {
        let w = (0..11).filter(|k| coords >> k & 1 == 1).fold(0u32, |w, k| w ^ self.even_basis[k]);
        self.syndrome(w)
    }

    pub fn preserves(&self, g: &M24Element) -> bool {
        self.basis.iter().all(|&b| self.is_codeword(g.apply(b)))
    }

    /// Induced map on the even cocode, rows are images of the basis cosets.
    pub fn cocode_action(&self, g: &M24Element) -> Result<Gf2Matrix, DataError> {
        if !self.preserves(g) {
            return Err(DataError::new("cocode action", "permutation does not preserve the code"));
        }
        let rows: Vec<u32> = self
            .even_basis
            .iter()
            .map(|&b| self.even_coordinates(g.apply(b)).expect("images of even cosets are even") as u32)
            .collect();
        Ok(Gf2Matrix::from_rows(11, &rows))
    }

    /// Fixed generators of M24, validated against this code.
    pub fn m24_generators(&self) -> Result<Vec<M24Element>, DataError> {
        let gens = parse_permutations(M24_GENERATORS_TXT)?;
        for (i, g) in gens.iter().enumerate() {
            if !self.preserves(g) {
                return Err(DataError::new("m24 generators", format!("generator {i} does not preserve the code")));
            }
        }
        Ok(gens)
    }
}

pub fn parse_permutations(text: &str) -> Result<Vec<M24Element>, DataError> {
    let mut out = Vec::new();
    for (ln, line) in crate::data_lines(text) {
        let img: Result<Vec<u8>, _> = line.split_whitespace().map(str::parse::<u8>).collect();
        let img = img.map_err(|e| DataError::at("permutation", ln, e.to_string()))?;
        let g = M24Element::new(&img).ok_or_else(|| DataError::at("permutation", ln, "not a permutation of 0..24"))?;
        out.push(g);
    }
    Ok(out)
}

/// A permutation of the 24 points; `perm[i]` is the image of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct M24Element {
    perm: [u8; N],
}

impl M24Element {
    pub fn identity() -> Self {
        let mut perm = [0u8; N];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i as u8;
        }
        M24Element { perm }
    }

    pub fn new(images: &[u8]) -> Option<Self> {
        if images.len() != N {
            return None;
        }
        let mut seen = 0u32;
        let mut perm = [0u8; N];
        for (i, &x) in images.iter().enumerate() {
            if x as usize >= N || seen >> x & 1 == 1 {
                return None;
            }
            seen |= 1 << x;
            perm[i] = x;
        }
        Some(M24Element { perm })
    }

    pub fn perm(&self) -> &[u8; N] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, w: u32) -> u32 {
        let mut out = 0;
        let mut bits = w;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out |= 1 << self.perm[i];
            bits &= bits - 1;
        }
        out
    }

    /// First `self`, then `other`.
    pub fn compose(&self, other: &M24Element) -> M24Element {
        let mut perm = [0u8; N];
        for i in 0..N {
            perm[i] = other.perm[self.perm[i] as usize];
        }
        M24Element { perm }
    }

    pub fn inverse(&self) -> M24Element {
        let mut perm = [0u8; N];
        for i in 0..N {
            perm[self.perm[i] as usize] = i as u8;
        }
        M24Element { perm }
    }

    /// Permutation matrix acting on row vectors: row `i` is `e_{perm[i]}`.
    pub fn matrix(&self) -> Gf2Matrix {
        let rows: Vec<u32> = self.perm.iter().map(|&p| 1u32 << p).collect();
        Gf2Matrix::from_rows(N, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexacode_has_min_weight_four() {
        let h = hexacode();
        assert_eq!(h.len(), 64);
        let min = h.iter().filter(|w| w.iter().any(|&x| x != 0)).map(|w| w.iter().filter(|&&x| x != 0).count()).min();
        assert_eq!(min, Some(4));
    }

    #[test]
    fn shipped_basis_is_the_mog_construction() {
        let built = GolayCode::build();
        let shipped = GolayCode::standard();
        assert_eq!(built.basis(), shipped.basis());
        assert_eq!(built.codewords(), mog_codewords().as_slice());
    }

    #[test]
    fn columns_form_a_sextet() {
        let code = GolayCode::standard();
        for i in 0..6 {
            for j in i + 1..6 {
                assert!(code.is_codeword(0xf << (4 * i) | 0xf << (4 * j)));
            }
        }
    }

    #[test]
    fn zero_and_omega_are_codewords() {
        let code = GolayCode::standard();
        assert!(code.is_codeword(0));
        assert!(code.is_codeword(OMEGA));
    }

    #[test]
    fn single_bits_have_weight_one_syndrome() {
        let code = GolayCode::standard();
        assert_eq!(code.syndrome(0).weight, 0);
        for i in 0..N {
            let c = code.syndrome(1 << i);
            assert_eq!((c.weight, c.rep), (1, 1 << i));
        }
    }

    #[test]
    fn rejects_dependent_basis() {
        let mut b = *GolayCode::standard().basis();
        b[3] = b[0] ^ b[1];
        assert!(GolayCode::from_basis(&b).is_err());
    }

    #[test]
    fn identity_cocode_action() {
        let code = GolayCode::standard();
        assert!(code.cocode_action(&M24Element::identity()).unwrap().is_identity());
    }

    #[test]
    fn transposition_is_rejected() {
        let code = GolayCode::standard();
        let mut img: Vec<u8> = (0..24).collect();
        img.swap(0, 1);
        let t = M24Element::new(&img).unwrap();
        assert!(!code.preserves(&t));
        assert!(code.cocode_action(&t).is_err());
    }

    #[test]
    fn compose_matches_matrix_product() {
        let code = GolayCode::standard();
        let g = code.m24_generators().unwrap();
        let gh = g[0].compose(&g[1]);
        assert_eq!(gh.matrix(), g[0].matrix().mul(&g[1].matrix()));
        assert!(g[0].compose(&g[0].inverse()) == M24Element::identity());
    }
}
