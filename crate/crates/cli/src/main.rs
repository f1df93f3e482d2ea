//! `axcount`: runs each stage of the axis-counting pipeline.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage, data or parse error.

mod data;

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use axcount::certificate::{self, Status};
use axcount::counting::{
    baby_monster_order, factorize, monster_order, orbit_sizes, regularity_index, sylow11_check, OrbitSizeVector,
    TransitionMatrix,
};
use axcount::golay::M24_ORDER;
use axcount::leech::{build_type_table, feasible_census, TypeTable};
use axcount::orbit_engine::{order_via_chain, ActionGroup, ChainOptions, ChainResult, DEFAULT_SEED};
use axcount::spectrum::{eigenspace_dims, short_vector_profile};
use axcount::tables::{check_all, CO2_INDEX};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use data::Data;

#[derive(Parser)]
#[command(name = "axcount", version, about = "Re-derives the orders of the Monster and the Baby Monster by counting axes")]
struct Cli {
    /// Print one JSON document on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the census and orbit searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight enumerator and cocode census of the Golay code; M24 generators.
    GolayCheck,
    /// Type census of the classes of Λ/2Λ.
    Census {
        /// Type table file: read and re-verified if present, written otherwise.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Inner-product profile of a short vector and the eigenspace dimensions.
    Spectrum,
    /// Order of Co₁ from a randomized stabilizer chain.
    Co1Order {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Expected order: retry with larger batches until it is reached.
        #[arg(long)]
        claim: Option<BigUint>,
    },
    /// Order of M24 from a randomized stabilizer chain on permutation matrices.
    M24Order {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        claim: Option<BigUint>,
    },
    /// Orbit sizes recovered from a transition matrix.
    OrbitSizes {
        #[arg(long, value_enum)]
        table: Which,
    },
    /// Orders of the Monster and the Baby Monster.
    MonsterOrder {
        /// Take |Co₂| from the Co₁ chain instead of the orbit table.
        #[arg(long)]
        with_chain: bool,
    },
    /// Consistency of the orbit and fusion tables.
    TablesCheck {
        /// Use this |Co₁| instead of running the chain.
        #[arg(long)]
        co1: Option<BigUint>,
    },
    /// Verifies a certificate file.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        /// Also check |Co₂| against the Co₁ chain.
        #[arg(long)]
        with_chain: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Axes,
    Feasible,
}

enum Failure {
    /// A check ran and failed.
    Check(String),
    /// Bad input.
    Input(String),
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Input(s)
    }
}

struct Outcome {
    json: Value,
    text: String,
    passed: bool,
}

type Run = Result<Outcome, Failure>;

fn s(x: &BigUint) -> String {
    x.to_string()
}

fn progress(msg: &str) {
    eprintln!("{msg}");
}

fn golay_check(d: &Data) -> Run {
    let code = d.golay()?;
    let mut weights = [0u64; 25];
    for &c in code.codewords() {
        weights[c.count_ones() as usize] += 1;
    }
    let mut cocode = [0u64; 5];
    for syn in 0..1u16 << 12 {
        cocode[code.coset(syn).weight as usize] += 1;
    }
    let gens = d.m24_generators()?;
    let enumerator = [weights[0], weights[8], weights[12], weights[16], weights[24]];
    let passed = enumerator == [1, 759, 2576, 759, 1] && cocode == [1, 24, 276, 2024, 1771];
    let mut text = String::new();
    let _ = writeln!(text, "weight      0    8    12   16  24");
    let _ = writeln!(text, "codewords   {:<4} {:<4} {:<4} {:<4} {}", enumerator[0], enumerator[1], enumerator[2], enumerator[3], enumerator[4]);
    let _ = writeln!(text, "cocode by minimal weight 0..4: {cocode:?}");
    let _ = writeln!(text, "M24 generators: {} (each preserves the code)", gens.len());
    Ok(Outcome {
        json: json!({ "weight_enumerator": enumerator, "cocode_weights": cocode, "m24_generators": gens.len(), "passed": passed }),
        text,
        passed,
    })
}

fn census(d: &Data, cache: Option<&Path>) -> Run {
    let leech = d.leech()?;
    let start = Instant::now();
    let (table, report) = match cache.filter(|p| p.exists()) {
        Some(p) => {
            progress(&format!("reading {}", p.display()));
            let f = File::open(p).map_err(|e| format!("{}: {e}", p.display()))?;
            let t = TypeTable::read_from(BufReader::new(f)).map_err(|e| e.to_string())?;
            t.verify(leech).map_err(|e| Failure::Check(e.to_string()))?;
            (t, None)
        }
        None => {
            let cb = |norm: u32, done: usize, total: usize| {
                if done == total || done.is_multiple_of(64) {
                    eprint!("\rnorm {norm}: {done}/{total} units");
                    if done == total {
                        eprintln!();
                    }
                }
            };
            let (t, r) = build_type_table(leech, Some(&cb)).map_err(|e| Failure::Check(e.to_string()))?;
            if let Some(p) = cache {
                let f = File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
                t.write_to(BufWriter::new(f)).map_err(|e| format!("{}: {e}", p.display()))?;
                progress(&format!("wrote {}", p.display()));
            }
            (t, Some(r))
        }
    };
    let c = table.census();
    let feasible = feasible_census(&table, leech.lambda_beta()).map_err(|e| Failure::Check(e.to_string()))?;
    let passed = c.as_array() == [1, 98_280, 8_386_560, 8_292_375];
    let mut text = String::new();
    let _ = writeln!(text, "type   0  2      3        4");
    let _ = writeln!(text, "count  {}  {}  {}  {}", c.type0, c.type2, c.type3, c.type4);
    if let Some(r) = &report {
        let _ = writeln!(text, "vectors of norm 4, 6, 8: {:?}", r.norm_totals);
        let _ = writeln!(text, "hits per class for types 2, 3, 4: {:?}", r.multiplicity);
    }
    let _ = writeln!(text, "feasible short classes: {feasible}");
    let _ = writeln!(text, "elapsed {:.1} s", start.elapsed().as_secs_f64());
    Ok(Outcome {
        json: json!({
            "census": c.as_array(),
            "norm_totals": report.as_ref().map(|r| r.norm_totals),
            "multiplicity": report.as_ref().map(|r| r.multiplicity.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>()),
            "feasible": feasible,
            "source": if report.is_some() { "enumeration" } else { "cache" },
            "passed": passed,
        }),
        text,
        passed,
    })
}

fn spectrum(d: &Data) -> Run {
    let leech = d.leech()?;
    let mut r = [0; 24];
    r[0] = 4;
    r[1] = 4;
    let p = short_vector_profile(leech, &r).map_err(|e| Failure::Check(e.to_string()))?;
    let dims = eigenspace_dims(&p).map_err(|e| Failure::Check(e.to_string()))?;
    let passed = dims.as_array() == [1, 96_256, 4_371, 96_256];
    let mut text = String::new();
    let _ = writeln!(text, "r = (4, 4, 0^22)/sqrt8");
    let _ = writeln!(text, "|<r,s>|   even    odd");
    let _ = writeln!(text, "0         {:<7} {}", p.ip0.0, p.ip0.1);
    let _ = writeln!(text, "1         {:<7} {}", p.ip1.0, p.ip1.1);
    let _ = writeln!(text, "2         {:<7} {}", p.ip2.0, p.ip2.1);
    let _ = writeln!(text, "pairs     {:<7} {}", p.pairs.0, p.pairs.1);
    let _ = writeln!(text, "eigenvalue  16  0      4     1/2");
    let _ = writeln!(text, "dimension   {}   {}  {}  {}", dims.dim16, dims.dim0, dims.dim4, dims.dim_half);
    let _ = writeln!(text, "total {}", dims.total());
    Ok(Outcome {
        json: json!({
            "profile": {
                "ip0": [p.ip0.0, p.ip0.1], "ip1": [p.ip1.0, p.ip1.1], "ip2": [p.ip2.0, p.ip2.1],
                "ip4": p.ip4, "pairs": [p.pairs.0, p.pairs.1],
            },
            "dimensions": { "16": dims.dim16, "0": dims.dim0, "4": dims.dim4, "1/2": dims.dim_half },
            "total": dims.total(),
            "passed": passed,
        }),
        text,
        passed,
    })
}

fn run_chain(gens: Vec<axcount::Gf2Matrix>, n: usize, base: Option<u32>, seed: u64, claim: Option<&BigUint>) -> Result<ChainResult, Failure> {
    let g = ActionGroup::new(n, gens, seed).map_err(|e| e.to_string())?;
    let opts = ChainOptions { preferred_base: base, seed, ..ChainOptions::default() };
    order_via_chain(&g, claim, &opts).map_err(|e| Failure::Check(e.to_string()))
}

fn co1_chain(d: &Data, seed: u64, claim: Option<&BigUint>) -> Result<ChainResult, Failure> {
    let leech = d.leech()?;
    progress("running the Co1 stabilizer chain");
    run_chain(d.co1_generators()?, 24, Some(leech.lambda_omega().0), seed, claim)
}

fn chain_outcome(name: &str, r: &ChainResult, seed: u64, extra: Value) -> Outcome {
    let mut text = String::new();
    let _ = writeln!(text, "base      orbit size  generators");
    for l in &r.levels {
        let _ = writeln!(text, "{:#08x}  {:<10}  {}", l.base, l.orbit_size, l.generators);
    }
    let _ = writeln!(text, "|{name}| = {}", r.order);
    if let Some(ok) = r.las_vegas {
        let _ = writeln!(text, "claim {} after {} attempt(s)", if ok { "confirmed" } else { "not reached" }, r.attempts);
    }
    let levels: Vec<Value> =
        r.levels.iter().map(|l| json!({ "base": l.base, "orbit_size": l.orbit_size, "generators": l.generators })).collect();
    let mut json = json!({ "order": s(&r.order), "seed": seed, "attempts": r.attempts, "levels": levels, "claim_confirmed": r.las_vegas });
    if let (Value::Object(a), Value::Object(b)) = (&mut json, extra) {
        a.extend(b);
    }
    Outcome { json, text, passed: r.las_vegas != Some(false) }
}

fn co1_order(d: &Data, seed: u64, claim: Option<&BigUint>) -> Run {
    let r = co1_chain(d, seed, claim)?;
    let idx = BigUint::from(CO2_INDEX);
    let co2 = (&r.order % &idx == BigUint::from(0u8)).then(|| &r.order / &idx);
    let mut out = chain_outcome("Co1", &r, seed, json!({ "co2_order": co2.as_ref().map(s) }));
    if let Some(c) = &co2 {
        let _ = writeln!(out.text, "|Co2| = |Co1|/{CO2_INDEX} = {c}");
    }
    Ok(out)
}

fn m24_order(d: &Data, seed: u64, claim: Option<&BigUint>) -> Run {
    let gens = d.m24_generators()?.iter().map(|g| g.matrix()).collect();
    let r = run_chain(gens, 24, None, seed, claim)?;
    let mut out = chain_outcome("M24", &r, seed, json!({}));
    out.passed &= r.order == BigUint::from(M24_ORDER);
    Ok(out)
}

fn sizes_for(d: &Data, which: Which) -> Result<(TransitionMatrix, OrbitSizeVector, usize), Failure> {
    let t = d.tables()?;
    let (m, rows, anchor) = match which {
        Which::Axes => (d.table2()?, t.table1, "2A"),
        Which::Feasible => (d.table4()?, t.table3, "2A1"),
    };
    let anchor_size = rows
        .iter()
        .find(|r| r.label == anchor)
        .map(|r| r.size.clone())
        .ok_or_else(|| format!("orbit table lacks {anchor}"))?;
    let k = regularity_index(&m).map_err(|e| Failure::Check(e.to_string()))?;
    let sizes = orbit_sizes(&m, anchor, &anchor_size).map_err(|e| Failure::Check(e.to_string()))?;
    Ok((m, sizes, k))
}

fn orbit_sizes_cmd(d: &Data, which: Which) -> Run {
    let (m, sizes, k) = sizes_for(d, which)?;
    let total = sizes.total();
    let mut text = String::new();
    let _ = writeln!(text, "column sum {}, M^{k} is positive", m.colsum());
    let _ = writeln!(text, "orbit   size");
    for (l, v) in sizes.labels.iter().zip(&sizes.sizes) {
        let _ = writeln!(text, "{l:<6}  {v}");
    }
    let _ = writeln!(text, "total   {total}");
    let list: Vec<Value> = sizes.labels.iter().zip(&sizes.sizes).map(|(l, v)| json!({ "label": l, "size": s(v) })).collect();
    Ok(Outcome {
        json: json!({ "colsum": m.colsum().to_string(), "regularity_index": k, "sizes": list, "total": s(&total), "passed": true }),
        text,
        passed: true,
    })
}

fn monster_order_cmd(d: &Data, with_chain: bool) -> Run {
    let (_, axes, _) = sizes_for(d, Which::Axes)?;
    let (_, feasible, _) = sizes_for(d, Which::Feasible)?;
    let co2 = if with_chain {
        let r = co1_chain(d, DEFAULT_SEED, None)?;
        r.order / BigUint::from(CO2_INDEX)
    } else {
        let t = d.tables()?;
        t.table1.iter().find(|r| r.label == "2A").map(|r| r.quotient_order.clone()).ok_or_else(|| "orbit table lacks 2A".to_string())?
    };
    let (xp, xm) = (axes.total(), feasible.total());
    let m = monster_order(&xp, &xm, &co2);
    let b = baby_monster_order(&xm, &co2).map_err(|e| Failure::Check(e.to_string()))?;
    let mf = factorize(&m).map_err(|e| Failure::Check(e.to_string()))?;
    let bf = factorize(&b).map_err(|e| Failure::Check(e.to_string()))?;
    let syl = sylow11_check();
    let mut text = String::new();
    let _ = writeln!(text, "|X+|  = {xp}");
    let _ = writeln!(text, "|X-|  = {xm}");
    let _ = writeln!(text, "|Co2| = {co2}{}", if with_chain { " (from the chain)" } else { "" });
    let _ = writeln!(text, "|M|   = {m}\n      = {mf}");
    let _ = writeln!(text, "|B|   = {b}\n      = {bf}");
    let _ = writeln!(text, "Sylow 11 count {} is not an integer: {}", syl.value, syl.non_integral);
    Ok(Outcome {
        json: json!({
            "x_plus": s(&xp), "x_minus": s(&xm), "co2_order": s(&co2), "co2_from_chain": with_chain,
            "monster_order": s(&m), "monster_factors": mf.to_string(),
            "baby_monster_order": s(&b), "baby_monster_factors": bf.to_string(),
            "sylow11": syl.value.to_string(), "sylow11_non_integral": syl.non_integral,
            "passed": syl.non_integral,
        }),
        text,
        passed: syl.non_integral,
    })
}

fn tables_check(d: &Data, co1: Option<BigUint>) -> Run {
    let t = d.tables()?;
    let co1 = match co1 {
        Some(c) => c,
        None => co1_chain(d, DEFAULT_SEED, None)?.order,
    };
    let r = check_all(&t, &co1);
    let lines: Vec<Value> = r.lines.iter().map(|l| json!({ "name": l.name, "passed": l.passed, "detail": l.detail })).collect();
    let passed = r.passed();
    let text = format!("|Co1| = {co1}\n{r}{}\n", if passed { "all checks pass" } else { "some checks FAIL" });
    Ok(Outcome { json: json!({ "co1_order": s(&co1), "checks": lines, "passed": passed }), text, passed })
}

fn verify_cmd(d: &Data, path: &Path, with_chain: bool) -> Run {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cert = certificate::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let co1 = if with_chain { Some(co1_chain(d, DEFAULT_SEED, None)?.order) } else { None };
    let r = certificate::verify(&cert, co1.as_ref());
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skipped => "skipped",
            };
            json!({ "name": c.name, "status": status, "detail": c.detail })
        })
        .collect();
    let mut out = format!("{r}\n");
    if let Some(m) = &r.monster_order {
        let _ = writeln!(out, "monster order {m}");
    }
    Ok(Outcome {
        json: json!({
            "checks": checks,
            "monster_order": r.monster_order.as_ref().map(s),
            "baby_monster_order": r.baby_order.as_ref().map(s),
            "passed": r.passed(),
        }),
        text: out,
        passed: r.passed(),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let d = Data::from_env();
    let result = match &cli.command {
        Command::GolayCheck => golay_check(&d),
        Command::Census { cache } => census(&d, cache.as_deref()),
        Command::Spectrum => spectrum(&d),
        Command::Co1Order { seed, claim } => co1_order(&d, *seed, claim.as_ref()),
        Command::M24Order { seed, claim } => m24_order(&d, *seed, claim.as_ref()),
        Command::OrbitSizes { table } => orbit_sizes_cmd(&d, *table),
        Command::MonsterOrder { with_chain } => monster_order_cmd(&d, *with_chain),
        Command::TablesCheck { co1 } => tables_check(&d, co1.clone()),
        Command::Verify { cert, with_chain } => verify_cmd(&d, cert, *with_chain),
    };
    match result {
        Ok(o) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&o.json).expect("json values serialize"));
            } else {
                print!("{}", o.text);
            }
            ExitCode::from(if o.passed { 0 } else { 1 })
        }
        Err(Failure::Check(msg)) => {
            if cli.json {
                println!("{}", json!({ "error": msg, "passed": false }));
            }
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
