//! Orbits, Schreier vectors and randomized stabilizer chains for groups of
//! invertible bit matrices acting on F₂ⁿ.
//!
//! A Schreier entry is one byte: bits 0..5 hold the generator index, bit 5
//! is set when the inverse generator was used, and bit 7 marks the orbit
//! representative. Following entries backwards from any point reaches the
//! representative, which is the smallest point of its orbit.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{mask, ApplyTable, Gf2Matrix};

pub const MAX_GENERATORS: usize = 32;
pub const WORD_LENGTH: usize = 50;
pub const BATCH: usize = 16;
pub const MAX_RETRIES: usize = 4;
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

const ROOT: u8 = 0x80;
const INVERSE: u8 = 0x20;
const UNSEEN: u8 = 0xff;
const OUTSIDE: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrbitError {
    #[error("{0} generators exceed the limit of 32")]
    TooManyGenerators(usize),
    #[error("generator {0} has the wrong dimension")]
    Dimension(usize),
    #[error("generator {0} is singular")]
    Singular(usize),
    #[error("point {0:#x} is outside the computed domain")]
    OutsideDomain(u32),
    #[error("chain gave order {got}, claimed {claimed}, after {attempts} attempts")]
    LasVegasMismatch { claimed: BigUint, got: BigUint, attempts: usize },
}

pub struct ActionGroup {
    n: usize,
    gens: Vec<Gf2Matrix>,
    invs: Vec<Gf2Matrix>,
    // Table 2k applies generator k, table 2k+1 its inverse.
    tables: Vec<ApplyTable>,
    pub rng_seed: u64,
}

impl ActionGroup {
    pub fn new(n: usize, gens: Vec<Gf2Matrix>, rng_seed: u64) -> Result<Self, OrbitError> {
        if gens.len() > MAX_GENERATORS {
            return Err(OrbitError::TooManyGenerators(gens.len()));
        }
        let mut invs = Vec::with_capacity(gens.len());
        let mut tables = Vec::with_capacity(2 * gens.len());
        for (i, g) in gens.iter().enumerate() {
            if g.dim() != n {
                return Err(OrbitError::Dimension(i));
            }
            let inv = g.inverse().ok_or(OrbitError::Singular(i))?;
            tables.push(g.tables());
            tables.push(inv.tables());
            invs.push(inv);
        }
        Ok(ActionGroup { n, gens, invs, tables, rng_seed })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Gf2Matrix] {
        &self.gens
    }

    fn letters(&self) -> usize {
        2 * self.gens.len()
    }

    #[inline(always)]
    fn apply_letter(&self, letter: usize, p: u32) -> u32 {
        self.tables[letter].apply(p)
    }

    fn letter_matrix(&self, l: Letter) -> &Gf2Matrix {
        if l.inverse {
            &self.invs[l.gen as usize]
        } else {
            &self.gens[l.gen as usize]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub gen: u8,
    pub inverse: bool,
}

impl Letter {
    fn index(self) -> usize {
        2 * self.gen as usize + self.inverse as usize
    }

    fn code(self) -> u8 {
        self.gen | if self.inverse { INVERSE } else { 0 }
    }

    fn from_code(c: u8) -> Letter {
        Letter { gen: c & 0x1f, inverse: c & INVERSE != 0 }
    }

    fn from_index(i: usize) -> Letter {
        Letter { gen: (i / 2) as u8, inverse: i % 2 == 1 }
    }

    pub fn inv(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A product of generators and inverses, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupWord {
    pub letters: Vec<Letter>,
}

impl GroupWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn then(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    pub fn resolve(&self, g: &ActionGroup) -> Gf2Matrix {
        self.letters.iter().fold(Gf2Matrix::identity(g.n), |acc, &l| acc.mul(g.letter_matrix(l)))
    }

    pub fn apply(&self, g: &ActionGroup, p: u32) -> u32 {
        self.letters.iter().fold(p, |q, &l| g.apply_letter(l.index(), q))
    }
}

pub struct OrbitData {
    n: usize,
    orbit_id: Vec<u32>,
    schreier: Vec<u8>,
    pub reps: Vec<u32>,
    pub sizes: Vec<u64>,
}

impl OrbitData {
    fn empty(n: usize) -> Self {
        let size = 1usize << n;
        OrbitData { n, orbit_id: vec![OUTSIDE; size], schreier: vec![UNSEEN; size], reps: Vec::new(), sizes: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn orbit_of(&self, p: u32) -> Option<usize> {
        match self.orbit_id.get(p as usize) {
            Some(&id) if id != OUTSIDE => Some(id as usize),
            _ => None,
        }
    }

    pub fn rep_of(&self, p: u32) -> Option<u32> {
        self.orbit_of(p).map(|k| self.reps[k])
    }

    pub fn size_of(&self, p: u32) -> Option<u64> {
        self.orbit_of(p).map(|k| self.sizes[k])
    }

    pub fn num_orbits(&self) -> usize {
        self.reps.len()
    }

    pub fn is_root(&self, p: u32) -> bool {
        self.schreier.get(p as usize) == Some(&ROOT)
    }

    /// Text dump: `ORBITS n k`, then one `rep size` line per orbit.
    pub fn dump(&self) -> String {
        let mut s = format!("ORBITS {} {}\n", self.n, self.reps.len());
        for (r, z) in self.reps.iter().zip(&self.sizes) {
            let _ = writeln!(s, "{r} {z}");
        }
        s
    }

    fn bfs(&mut self, g: &ActionGroup, start: u32, domain: Option<&(dyn Fn(u32) -> bool + Sync)>) {
        let id = self.reps.len() as u32;
        self.orbit_id[start as usize] = id;
        self.schreier[start as usize] = ROOT;
        let mut frontier = vec![start];
        let mut size = 1u64;
        let letters = g.letters();
        while !frontier.is_empty() {
            let found: Vec<(u32, u8)> = if frontier.len() >= 4096 {
                let seen = &self.orbit_id;
                frontier
                    .par_chunks(1024)
                    .flat_map_iter(|chunk| {
                        let mut v = Vec::new();
                        for &p in chunk {
                            for l in 0..letters {
                                let q = g.apply_letter(l, p);
                                if seen[q as usize] == OUTSIDE && domain.is_none_or(|d| d(q)) {
                                    v.push((q, Letter::from_index(l).code()));
                                }
                            }
                        }
                        v
                    })
                    .collect()
            } else {
                let mut v = Vec::new();
                for &p in &frontier {
                    for l in 0..letters {
                        let q = g.apply_letter(l, p);
                        if self.orbit_id[q as usize] == OUTSIDE && domain.is_none_or(|d| d(q)) {
                            v.push((q, Letter::from_index(l).code()));
                        }
                    }
                }
                v
            };
            let mut next = Vec::new();
            for (q, code) in found {
                if self.orbit_id[q as usize] == OUTSIDE {
                    self.orbit_id[q as usize] = id;
                    self.schreier[q as usize] = code;
                    next.push(q);
                }
            }
            size += next.len() as u64;
            next.sort_unstable();
            frontier = next;
        }
        self.reps.push(start);
        self.sizes.push(size);
    }
}

/// All orbits on the points satisfying `domain` (all of F₂ⁿ by default).
pub fn orbits(g: &ActionGroup, domain: Option<&(dyn Fn(u32) -> bool + Sync)>) -> OrbitData {
    let mut o = OrbitData::empty(g.n);
    for p in 0..1u32 << g.n {
        if o.orbit_id[p as usize] == OUTSIDE && domain.is_none_or(|d| d(p)) {
            o.bfs(g, p, domain);
        }
    }
    o
}

/// The orbit of a single point; every other point is outside the domain.
pub fn orbit_of_point(g: &ActionGroup, p: u32) -> OrbitData {
    let mut o = OrbitData::empty(g.n);
    o.bfs(g, p & mask(g.n), None);
    o
}

/// A word `w` with `rep(p)·w = p`.
pub fn map_to_rep(o: &OrbitData, g: &ActionGroup, p: u32) -> Result<GroupWord, OrbitError> {
    if o.orbit_of(p).is_none() {
        return Err(OrbitError::OutsideDomain(p));
    }
    let mut letters = Vec::new();
    let mut q = p;
    loop {
        let c = o.schreier[q as usize];
        if c == ROOT {
            break;
        }
        let l = Letter::from_code(c);
        letters.push(l);
        q = g.apply_letter(l.inv().index(), q);
    }
    letters.reverse();
    Ok(GroupWord { letters })
}

pub fn random_word(g: &ActionGroup, rng: &mut ChaCha8Rng, len: usize) -> GroupWord {
    let n = g.letters();
    GroupWord { letters: (0..len).map(|_| Letter::from_index(rng.gen_range(0..n))).collect() }
}

/// `count` elements fixing `p`, each `g₁·g₂` with `g₁` a random word and
/// `g₂ = w_q⁻¹·w_p` the Schreier correction for `q = p·g₁`.
pub fn random_stabilizer_elements(
    o: &OrbitData,
    g: &ActionGroup,
    p: u32,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Gf2Matrix>, OrbitError> {
    let wp = map_to_rep(o, g, p)?;
    let mut out = Vec::with_capacity(count);
    if g.gens.is_empty() {
        out.resize(count, Gf2Matrix::identity(g.n));
        return Ok(out);
    }
    for _ in 0..count {
        let w1 = random_word(g, rng, WORD_LENGTH);
        let q = w1.apply(g, p);
        let wq = map_to_rep(o, g, q)?;
        let m = w1.then(&wq.inverse()).then(&wp).resolve(g);
        debug_assert_eq!(m.apply(p), p);
        out.push(m);
    }
    Ok(out)
}

/// Same as [`random_stabilizer_elements`] with the group's own seed.
pub fn random_stabilizer_element(o: &OrbitData, g: &ActionGroup, p: u32, count: usize) -> Result<Vec<Gf2Matrix>, OrbitError> {
    let mut rng = ChaCha8Rng::seed_from_u64(g.rng_seed);
    random_stabilizer_elements(o, g, p, count, &mut rng)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLevel {
    pub base: u32,
    pub orbit_size: u64,
    pub generators: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainResult {
    pub order: BigUint,
    pub levels: Vec<ChainLevel>,
    pub attempts: usize,
    /// `Some(true)` when a claimed order was confirmed.
    pub las_vegas: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ChainOptions {
    /// Tried as the first base point before the unit vectors.
    pub preferred_base: Option<u32>,
    pub batch: usize,
    pub seed: u64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions { preferred_base: None, batch: BATCH, seed: DEFAULT_SEED }
    }
}

fn chain_once(g: &ActionGroup, opts: &ChainOptions, batch: usize, rng: &mut ChaCha8Rng) -> Result<ChainResult, OrbitError> {
    let n = g.n;
    let mut gens: Vec<Gf2Matrix> = g.gens.clone();
    let mut levels = Vec::new();
    let mut order = BigUint::from(1u8);
    let candidates: Vec<u32> = opts.preferred_base.into_iter().chain((0..n).map(|i| 1u32 << i)).collect();
    loop {
        gens.retain(|m| !m.is_identity());
        if gens.is_empty() {
            break;
        }
        let base = *candidates
            .iter()
            .find(|&&b| gens.iter().any(|m| m.apply(b) != b))
            .expect("a non-identity linear map moves some unit vector");
        let h = ActionGroup::new(n, std::mem::take(&mut gens), g.rng_seed)?;
        let o = orbit_of_point(&h, base);
        let size = o.sizes[0];
        levels.push(ChainLevel { base, orbit_size: size, generators: h.gens.len() });
        order *= BigUint::from(size);
        gens = random_stabilizer_elements(&o, &h, base, batch.min(MAX_GENERATORS), rng)?;
    }
    Ok(ChainResult { order, levels, attempts: 1, las_vegas: None })
}

/// Group order as a product of orbit sizes down a randomized stabilizer
/// chain. The result is a lower bound that is exact with high probability;
/// with `claimed` the run is repeated with doubled batches on mismatch.
pub fn order_via_chain(g: &ActionGroup, claimed: Option<&BigUint>, opts: &ChainOptions) -> Result<ChainResult, OrbitError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut batch = opts.batch;
    let mut attempts = 0;
    loop {
        attempts += 1;
        let mut r = chain_once(g, opts, batch, &mut rng)?;
        r.attempts = attempts;
        let Some(c) = claimed else {
            return Ok(r);
        };
        if &r.order == c {
            r.las_vegas = Some(true);
            return Ok(r);
        }
        if attempts > MAX_RETRIES {
            return Err(OrbitError::LasVegasMismatch { claimed: c.clone(), got: r.order, attempts });
        }
        batch *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golay::GolayCode;

    fn m24_group() -> ActionGroup {
        let gens = GolayCode::standard().m24_generators().unwrap();
        ActionGroup::new(24, gens.iter().map(|g| g.matrix()).collect(), DEFAULT_SEED).unwrap()
    }

    #[test]
    fn trivial_group_has_singleton_orbits() {
        let g = ActionGroup::new(6, vec![], 1).unwrap();
        let o = orbits(&g, None);
        assert_eq!(o.num_orbits(), 64);
        assert!(o.sizes.iter().all(|&s| s == 1));
        assert_eq!(order_via_chain(&g, None, &ChainOptions::default()).unwrap().order, BigUint::from(1u8));
    }

    #[test]
    fn m24_is_transitive_on_points() {
        let g = m24_group();
        let weight_one = |p: u32| p.count_ones() == 1;
        let o = orbits(&g, Some(&weight_one));
        assert_eq!(o.sizes, vec![24]);
        assert_eq!(o.reps, vec![1]);
    }

    #[test]
    fn words_replay_to_points() {
        let g = m24_group();
        let o = orbit_of_point(&g, 0xff);
        assert_eq!(o.sizes[0], 759);
        assert!(map_to_rep(&o, &g, 0xff).unwrap().is_empty());
        for p in (0..1u32 << 24).filter(|p| o.orbit_of(*p).is_some()).take(300) {
            let w = map_to_rep(&o, &g, p).unwrap();
            assert_eq!(w.apply(&g, 0xff), p);
            assert_eq!(w.inverse().apply(&g, p), 0xff);
            assert_eq!(w.resolve(&g).apply(0xff), p);
        }
        assert_eq!(map_to_rep(&o, &g, 1), Err(OrbitError::OutsideDomain(1)));
    }

    #[test]
    fn stabilizer_elements_fix_the_point_and_are_reproducible() {
        let g = m24_group();
        let o = orbit_of_point(&g, 1);
        let a = random_stabilizer_element(&o, &g, 1, 8).unwrap();
        let b = random_stabilizer_element(&o, &g, 1, 8).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|m| m.apply(1) == 1));
    }

    #[test]
    fn m24_order() {
        let g = m24_group();
        let r = order_via_chain(&g, None, &ChainOptions::default()).unwrap();
        assert_eq!(r.order, BigUint::from(244_823_040u64));
        let sizes: Vec<u64> = r.levels.iter().map(|l| l.orbit_size).collect();
        assert_eq!(&sizes[..5], &[24, 23, 22, 21, 20]);
    }

    #[test]
    fn wrong_claim_is_reported() {
        let g = m24_group();
        let claim = BigUint::from(244_823_041u64);
        let opts = ChainOptions { batch: 2, ..ChainOptions::default() };
        match order_via_chain(&g, Some(&claim), &opts) {
            Err(OrbitError::LasVegasMismatch { attempts, .. }) => assert_eq!(attempts, MAX_RETRIES + 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}
