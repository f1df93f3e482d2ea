//! End-to-end acceptance run: one line per criterion, with time limits.
//!
//! Expected values are written out literally here rather than read from the
//! data files the pipeline uses.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use axcount::certificate::{self, Certificate};
use axcount::conway::co1_generators;
use axcount::counting::{
    baby_monster_order, factorize, monster_order, orbit_sizes, sylow11_check, Factorization, OrbitSizeVector,
    TransitionMatrix,
};
use axcount::golay::GolayCode;
use axcount::leech::{build_type_table, Leech, TypeTable};
use axcount::orbit_engine::{order_via_chain, orbits, ActionGroup, ChainOptions, DEFAULT_SEED};
use axcount::spectrum::{eigenspace_dims, short_vector_profile};
use axcount::tables::{check_all, Tables};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEC: Duration = Duration::from_secs(1);
const LIMIT_GOLAY: Duration = SEC;
const LIMIT_M24: Duration = Duration::from_secs(60);
const LIMIT_CENSUS: Duration = Duration::from_secs(30 * 60);
const LIMIT_CO1: Duration = Duration::from_secs(10 * 60);
const LIMIT_SPECTRUM: Duration = Duration::from_secs(60);
const LIMIT_SIZES: Duration = SEC;
const LIMIT_OTHER: Duration = Duration::from_secs(10 * 60);

const TAMPERS: usize = 100;
const TAMPER_SEED: u64 = 12;

const AXES: [(&str, &str); 12] = [
    ("2A", "196560"),
    ("2B", "11935123200"),
    ("4A", "1630347264000"),
    ("4B", "1466587938816000"),
    ("4C", "6599645724672000"),
    ("6A", "1896194506752000"),
    ("6C", "438020931059712000"),
    ("8B", "8601138282627072000"),
    ("6F", "1501786049347584000"),
    ("10A", "786389785840189440"),
    ("10B", "37845008443559116800"),
    ("12C", "48057153579122688000"),
];
const AXES_TOTAL: &str = "97239461142009186000";

const FEASIBLE: [(&str, &str); 10] = [
    ("2A1", "1"),
    ("2A0", "93150"),
    ("2B1", "7286400"),
    ("2B0", "262310400"),
    ("4A1", "4196966400"),
    ("4B1", "470060236800"),
    ("4C1", "537211699200"),
    ("6A1", "9646899200"),
    ("6C1", "6685301145600"),
    ("10A1", "4000762036224"),
];
const FEASIBLE_TOTAL: &str = "11707448673375";

const CO1: &str = "4157776806543360000";
const CO2: &str = "42305421312000";
const MONSTER: &str = "808017424794512875886459904961710757005754368000000000";
const MONSTER_FACTORS: &str = "2^46 3^20 5^9 7^6 11^2 13^3 17 19 23 29 31 41 47 59 71";
const BABY: &str = "4154781481226426191177580544000000";
/// The factor list exactly as published next to the Baby Monster order.
const BABY_FACTORS_PRINTED: &str = "2^41 3^13 5^6 7^2 11 13 17 19 23 31 41 47";

/// Criteria whose failure stems from the published reference values
/// themselves; see the note printed with them.
const KNOWN_DISCREPANCIES: &[u32] = &[9];

fn big(s: &str) -> BigUint {
    s.parse().unwrap()
}

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

struct Run {
    results: Vec<(u32, bool)>,
}

impl Run {
    fn criterion(&mut self, id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Verdict) {
        let t = Instant::now();
        let v = f();
        let el = t.elapsed();
        let in_time = el <= limit;
        let ok = v.ok && in_time;
        let timing = format!("{:.2}s / limit {}s", el.as_secs_f64(), limit.as_secs());
        println!(
            "{} {id:>2} {name}: {}{} [{timing}]",
            if ok { "PASS" } else { "FAIL" },
            v.detail,
            if in_time { "" } else { " (too slow)" }
        );
        self.results.push((id, ok));
    }
}

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_axcount")
}

fn cert_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/monster.cert")
}

fn compare_sizes(got: &OrbitSizeVector, want: &[(&str, &str)], total: &str) -> Verdict {
    let bad: Vec<&str> = want.iter().filter(|(l, v)| got.get(l) != Some(&big(v))).map(|(l, _)| *l).collect();
    let t = got.total();
    verdict(
        bad.is_empty() && got.labels.len() == want.len() && t == big(total),
        if bad.is_empty() { format!("all {} sizes match, total {t}", want.len()) } else { format!("mismatch at {bad:?}, total {t}") },
    )
}

fn main() {
    let mut run = Run { results: Vec::new() };
    let leech = Leech::standard();
    println!("acceptance run, default seed {DEFAULT_SEED:#x}");

    run.criterion(1, "Golay invariants", LIMIT_GOLAY, || {
        let code = GolayCode::standard();
        let mut w = [0u64; 25];
        for &c in code.codewords() {
            w[c.count_ones() as usize] += 1;
        }
        let mut cc = [0u64; 5];
        for s in 0..1u16 << 12 {
            let min = code.coset(s).weight as usize;
            cc[min] += 1;
        }
        let en = [w[0], w[8], w[12], w[16], w[24]];
        let ok = en == [1, 759, 2576, 759, 1] && en.iter().sum::<u64>() == 4096 && cc == [1, 24, 276, 2024, 1771];
        verdict(ok, format!("weights {en:?}, cocode {cc:?}"))
    });

    run.criterion(2, "|M24| by stabilizer chain", LIMIT_M24, || {
        let gens = code_m24_matrices();
        let g = ActionGroup::new(24, gens, DEFAULT_SEED).unwrap();
        let r = order_via_chain(&g, None, &ChainOptions::default()).unwrap();
        let out = Command::new(binary()).args(["m24-order", "--claim", "244823040", "--json"]).output().unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let lv = out.status.success() && v["claim_confirmed"] == true && v["order"] == "244823040";
        verdict(r.order == BigUint::from(244_823_040u32) && lv, format!("order {}, Las Vegas claim confirmed: {lv}", r.order))
    });

    let mut table: Option<TypeTable> = None;
    run.criterion(3, "Leech mod 2 census", LIMIT_CENSUS, || {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        match pool.install(|| build_type_table(leech, None)) {
            Ok((t, rep)) => {
                let c = t.census().as_array();
                let mult: Vec<u8> = rep.multiplicity.iter().map(|&(a, b)| if a == b { a } else { 0 }).collect();
                let ok = c == [1, 98_280, 8_386_560, 8_292_375]
                    && mult == [2, 2, 48]
                    && rep.norm_totals == [196_560, 16_773_120, 398_034_000];
                table = Some(t);
                verdict(ok, format!("census {c:?}, multiplicities {:?}, totals {:?}, 1 thread", rep.multiplicity, rep.norm_totals))
            }
            Err(e) => verdict(false, e.to_string()),
        }
    });

    let co1_gens = co1_generators(leech).unwrap();
    run.criterion(4, "Co1 orbits are the type classes", LIMIT_OTHER, || {
        let Some(t) = &table else { return verdict(false, "no type table") };
        let g = ActionGroup::new(24, co1_gens.clone(), DEFAULT_SEED).unwrap();
        let o = orbits(&g, None);
        let mut orbit_type = vec![None; o.num_orbits()];
        let mut consistent = true;
        for p in 0..1u32 << 24 {
            let k = o.orbit_of(p).unwrap();
            let ty = t.type_of(p);
            match orbit_type[k] {
                None => orbit_type[k] = Some(ty),
                Some(x) if x != ty => consistent = false,
                _ => {}
            }
        }
        let mut types: Vec<u8> = orbit_type.iter().flatten().copied().collect();
        types.sort_unstable();
        let ok = consistent && types == [0, 2, 3, 4];
        verdict(ok, format!("{} orbits of sizes {:?}, one per type: {ok}", o.num_orbits(), o.sizes))
    });

    let mut co1_order = None;
    run.criterion(5, "|Co1| by stabilizer chain, |Co2| = |Co1|/98280", LIMIT_CO1, || {
        let g = ActionGroup::new(24, co1_gens.clone(), DEFAULT_SEED).unwrap();
        let opts = ChainOptions { preferred_base: Some(leech.lambda_omega().0), ..ChainOptions::default() };
        let r = order_via_chain(&g, None, &opts).unwrap();
        let co2 = &r.order / BigUint::from(98_280u32);
        let exact = &co2 * BigUint::from(98_280u32) == r.order;
        let ok = r.order == big(CO1) && exact && co2 == big(CO2);
        co1_order = Some(r.order.clone());
        verdict(ok, format!("|Co1| = {}, |Co2| = {co2}", r.order))
    });

    run.criterion(6, "short vector profile and eigenspaces", LIMIT_SPECTRUM, || {
        let mut r = [0; 24];
        r[0] = 4;
        r[1] = 4;
        let p = short_vector_profile(leech, &r).unwrap();
        let buckets = [p.ip1.0, p.ip1.1, p.ip0.0, p.ip0.1, p.pairs.0, p.pairs.1];
        let d = eigenspace_dims(&p).unwrap();
        let ok = buckets == [22528, 24576, 24047, 22528, 1276, 1024]
            && d.as_array() == [1, 96256, 4371, 96256]
            && d.total() == 196_884;
        verdict(ok, format!("buckets {buckets:?}, dimensions {:?}", d.as_array()))
    });

    run.criterion(7, "Table 2 gives the axis orbit sizes", LIMIT_SIZES, || {
        let m = TransitionMatrix::table2().unwrap();
        compare_sizes(&orbit_sizes(&m, "2A", &big("196560")).unwrap(), &AXES, AXES_TOTAL)
    });

    run.criterion(8, "Table 4 gives the feasible orbit sizes", LIMIT_SIZES, || {
        let m = TransitionMatrix::table4().unwrap();
        compare_sizes(&orbit_sizes(&m, "2A1", &BigUint::from(1u8)).unwrap(), &FEASIBLE, FEASIBLE_TOTAL)
    });

    run.criterion(9, "Monster and Baby Monster orders", LIMIT_OTHER, || {
        let m = TransitionMatrix::table2().unwrap();
        let f = TransitionMatrix::table4().unwrap();
        let xp = orbit_sizes(&m, "2A", &big("196560")).unwrap().total();
        let xm = orbit_sizes(&f, "2A1", &BigUint::from(1u8)).unwrap().total();
        let co2 = co1_order.as_ref().map(|c| c / BigUint::from(98_280u32)).unwrap_or_else(|| big(CO2));
        let mo = monster_order(&xp, &xm, &co2);
        let bo = baby_monster_order(&xm, &co2).unwrap();
        let mf = factorize(&mo).unwrap();
        let bf = factorize(&bo).unwrap();
        let printed = Factorization::parse(BABY_FACTORS_PRINTED).unwrap();
        let monster_ok = mo == big(MONSTER) && mf.to_string() == MONSTER_FACTORS;
        let baby_order_ok = bo == big(BABY);
        let baby_factors_ok = bf == printed;
        let mut detail = format!(
            "monster order and factorization match: {monster_ok}; baby order matches: {baby_order_ok}; \
             baby factorization matches the printed list: {baby_factors_ok}"
        );
        if !baby_factors_ok {
            detail += &format!(
                "; computed {bf}, printed {printed}, and the printed list multiplies to {} != printed order",
                printed.product()
            );
        }
        verdict(monster_ok && baby_order_ok && baby_factors_ok, detail)
    });

    run.criterion(10, "Sylow 11 count", LIMIT_OTHER, || {
        let s = sylow11_check();
        let ok = s.value.numer() == &BigInt::from(1814) && s.value.denom() == &BigInt::from(11) && s.non_integral;
        verdict(ok, format!("{} (non-integral: {})", s.value, s.non_integral))
    });

    run.criterion(11, "orbit and fusion table consistency", LIMIT_OTHER, || {
        let t = Tables::standard().unwrap();
        let Some(co1) = &co1_order else { return verdict(false, "no chain result") };
        let r = check_all(&t, co1);
        let n1: (u64, u64) = (t.table1.iter().map(|r| r.n_x0_suborbits).sum(), t.table1.iter().map(|r| r.n_xyz_suborbits).sum());
        let n3: (u64, u64) = (t.table3.iter().map(|r| r.n_x0_suborbits).sum(), t.table3.iter().map(|r| r.n_xyz_suborbits).sum());
        let counts = (n1.0, n1.1, t.table5.len()) == (251, 405, 123) && (n3.0, n3.1, t.table6.len()) == (59, 87, 32);
        let products = r.lines.iter().filter(|l| l.name.starts_with("stabilizer ") && l.passed).count();
        let fails: Vec<&str> = r.failures().map(|l| l.name.as_str()).collect();
        verdict(
            r.passed() && counts && products == 22,
            format!("{} checks, {products} stabilizer products hold, failures {fails:?}", r.lines.len()),
        )
    });

    run.criterion(12, "certificate verification and tamper detection", LIMIT_OTHER, || {
        let path = cert_path();
        let shipped = Command::new(binary()).args(["verify", "--with-chain", "--cert"]).arg(&path).output().unwrap();
        let base = Certificate::standard().unwrap();
        let dir = std::env::temp_dir().join(format!("axcount-acceptance-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(TAMPER_SEED);
        let mut caught = 0;
        for i in 0..TAMPERS {
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
            assert_eq!(certificate::parse(&c.render()).unwrap(), c);
            let p = dir.join(format!("tamper{i}.cert"));
            std::fs::write(&p, c.render()).unwrap();
            let out = Command::new(binary()).args(["verify", "--cert"]).arg(&p).output().unwrap();
            if out.status.code() == Some(1) {
                caught += 1;
            }
        }
        let _ = std::fs::remove_dir_all(&dir);
        let ok = shipped.status.code() == Some(0) && caught == TAMPERS;
        verdict(ok, format!("shipped exit {:?}, {caught}/{TAMPERS} tampers exit 1", shipped.status.code()))
    });

    let passed = run.results.iter().filter(|r| r.1).count();
    let unexpected: Vec<u32> = run.results.iter().filter(|r| !r.1 && !KNOWN_DISCREPANCIES.contains(&r.0)).map(|r| r.0).collect();
    let known: Vec<u32> = run.results.iter().filter(|r| !r.1 && KNOWN_DISCREPANCIES.contains(&r.0)).map(|r| r.0).collect();
    println!("{passed}/{} criteria pass", run.results.len());
    if !known.is_empty() {
        println!(
            "known discrepancy in criterion {known:?}: the published Baby Monster factor list includes a prime 41 \
             that does not divide the published (and recomputed) order; 41 is the exponent of 2"
        );
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}

fn code_m24_matrices() -> Vec<axcount::Gf2Matrix> {
    GolayCode::standard().m24_generators().unwrap().iter().map(|g| g.matrix()).collect()
}
