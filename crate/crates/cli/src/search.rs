//! Parameter-grid search: per instance, enumerate or sample submodule
//! tuples, analyze each resulting code, and emit a ranked table.
//! Deterministic under a fixed seed; resumable through a checkpoint file.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use metacyclic::algebra::GroupParams;
use metacyclic::codes::{self, SubmoduleCode, DEFAULT_BUDGET};
use metacyclic::error::Error;
use metacyclic::gf::FieldDesc;
use metacyclic::wedderburn::Decomposition;

use crate::text;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sampler {
    /// Full submodule-lattice enumeration per orbit (small instances only).
    Exhaustive,
    /// Seeded random submodule tuples.
    Random,
}

#[derive(Args)]
pub struct SearchArgs {
    /// Comma-separated n values.
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<usize>,
    /// Comma-separated m values.
    #[arg(long, value_delimiter = ',')]
    m_list: Vec<usize>,
    /// Comma-separated q values.
    #[arg(long, value_delimiter = ',')]
    q_list: Vec<u64>,
    /// Comma-separated r values; every admissible r when omitted.
    #[arg(long, value_delimiter = ',')]
    r_list: Vec<usize>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    sampler: Sampler,
    /// Tuples sampled per instance in random mode.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Cap on enumerated tuples per instance in exhaustive mode.
    #[arg(long, default_value_t = 65536)]
    tuple_cap: u64,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Checkpoint file: completed instances are skipped on resume.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Keep only the top K table rows (0 = all).
    #[arg(long, default_value_t = 0)]
    top: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: crate::Format,
}

pub fn run(args: SearchArgs) -> Result<(), Error> {
    let budget = args
        .budget
        .or_else(|| {
            std::env::var("MCC_BUDGET")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(DEFAULT_BUDGET);

    // deterministic grid order
    let mut grid: Vec<(usize, usize, usize, u64)> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    for &n in &args.n_list {
        for &m in &args.m_list {
            for &q in &args.q_list {
                let rs: Vec<usize> = if args.r_list.is_empty() {
                    GroupParams::admissible_r(n, m)
                } else {
                    args.r_list.clone()
                };
                if rs.is_empty() {
                    notes.push(format!("({n},{m},-,{q}): no admissible r"));
                    continue;
                }
                for r in rs {
                    grid.push((n, m, r, q));
                }
            }
        }
    }

    let mut checkpoint: BTreeMap<String, Value> = match &args.checkpoint {
        Some(path) if path.exists() => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
        }
        _ => BTreeMap::new(),
    };

    let mut rows: Vec<Value> = Vec::new();
    for &(n, m, r, q) in &grid {
        let key = format!("{n},{m},{r},{q}");
        let point = if let Some(cached) = checkpoint.get(&key) {
            cached.clone()
        } else {
            let computed = run_instance(n, m, r, q, &args, budget);
            let value = match computed {
                Ok(v) => v,
                Err(e) => json!({"skipped": format!("{}: {e}", e.kind())}),
            };
            checkpoint.insert(key.clone(), value.clone());
            if let Some(path) = &args.checkpoint {
                let body = serde_json::to_string_pretty(&checkpoint).unwrap();
                std::fs::write(path, body)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            value
        };
        if let Some(skip) = point.get("skipped") {
            notes.push(format!("({key}): {}", skip.as_str().unwrap_or("skipped")));
            continue;
        }
        if let Some(pnotes) = point.get("notes").and_then(Value::as_array) {
            for pn in pnotes {
                notes.push(format!("({key}): {}", pn.as_str().unwrap_or("")));
            }
        }
        if let Some(list) = point.get("codes").and_then(Value::as_array) {
            rows.extend(list.iter().cloned());
        }
    }

    // rank: best distance first, then dimension, then a deterministic key
    rows.sort_by(|a, b| {
        let d = |v: &Value| v.get("d").and_then(Value::as_u64).unwrap_or(0);
        let dim = |v: &Value| v.get("dim").and_then(Value::as_u64).unwrap_or(0);
        let sig = |v: &Value| v.to_string();
        d(b).cmp(&d(a))
            .then(dim(b).cmp(&dim(a)))
            .then(sig(a).cmp(&sig(b)))
    });
    if args.top > 0 {
        rows.truncate(args.top);
    }
    let report = json!({
        "grid": grid.iter().map(|&(n, m, r, q)| json!({"n": n, "m": m, "r": r, "q": q})).collect::<Vec<_>>(),
        "notes": notes,
        "results": rows,
    });
    let body = match args.format {
        crate::Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
        crate::Format::Text => text::render_search(&report),
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run_instance(
    n: usize,
    m: usize,
    r: usize,
    q: u64,
    args: &SearchArgs,
    budget: u64,
) -> Result<Value, Error> {
    let field = FieldDesc::prime_power(q)?;
    let params = GroupParams::new(&field, n, m, r)?;
    let dec = Decomposition::build(&params)?;
    let mut notes: Vec<String> = Vec::new();

    let tuples: Vec<Vec<SubmoduleCode>> = match args.sampler {
        Sampler::Exhaustive => {
            let mut per_orbit: Vec<Vec<SubmoduleCode>> = Vec::new();
            let mut total: u64 = 1;
            for oi in 0..dec.block_count() {
                let mods = enumerate_submodules(&dec, oi, args.tuple_cap)?;
                total = total.saturating_mul(mods.len() as u64);
                per_orbit.push(mods);
            }
            if total > args.tuple_cap {
                notes.push(format!(
                    "exhaustive tuple count {total} exceeds cap {}; point skipped",
                    args.tuple_cap
                ));
                Vec::new()
            } else {
                cartesian(&per_orbit)
            }
        }
        Sampler::Random => {
            // per-instance deterministic stream derived from the global seed
            let mix = args
                .seed
                .wrapping_mul(0x9e3779b97f4a7c15)
                .wrapping_add((n as u64) << 48 | (m as u64) << 32 | (r as u64) << 16 | q);
            let mut rng = ChaCha8Rng::seed_from_u64(mix);
            (0..args.samples)
                .map(|_| {
                    (0..dec.block_count())
                        .map(|oi| codes::random_submodule(&dec, oi, &mut rng))
                        .collect()
                })
                .collect()
        }
    };

    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for tuple in tuples {
        let code = codes::code_from_submodules(&dec, &tuple)?;
        if code.is_zero() {
            continue;
        }
        let sig: String = tuple
            .iter()
            .map(|t| format!("{}:{}", t.orbit, t.dim_fq()))
            .collect::<Vec<_>>()
            .join("|");
        let basis_key = serde_json::to_string(&metacyclic::json::code_to_json(&code)).unwrap();
        if !seen.insert(basis_key) {
            continue;
        }
        let (d, exact) = match code.min_distance_exact(budget) {
            Ok(d) => (d, true),
            Err(Error::BudgetExceeded { .. }) => match code.min_distance_bound(&dec, budget) {
                Ok(cert) => (cert.bound, false),
                Err(_) => continue,
            },
            Err(_) => continue,
        };
        out.push(json!({
            "n": n, "m": m, "r": r, "q": q,
            "length": n * m,
            "dim": code.dim(),
            "d": d,
            "d_exact": exact,
            "tuple": sig,
        }));
    }
    Ok(json!({"codes": out, "notes": notes}))
}

/// All submodules of R_i^(s_i): closures of the cyclic modules, then closure
/// under pairwise sums.
fn enumerate_submodules(
    dec: &Decomposition,
    orbit: usize,
    cap: u64,
) -> Result<Vec<SubmoduleCode>, Error> {
    let shape = &dec.shapes()[orbit];
    let base = &dec.params().field;
    let kfield = &shape.field;
    let t = kfield.ext_degree();
    let width = shape.s * shape.u * t;
    let qsize = base.size();
    let count = (qsize as u128).saturating_pow(width as u32);
    if count > cap as u128 {
        return Err(Error::BudgetExceeded { best_found: None });
    }

    let key_of = |m: &SubmoduleCode| -> Vec<Vec<u64>> {
        m.flattened_rows()
            .iter()
            .map(|row| row.iter().flat_map(|c| c.coeffs().to_vec()).collect())
            .collect()
    };

    let mut seen = std::collections::BTreeSet::new();
    let mut mods: Vec<SubmoduleCode> = Vec::new();
    let zero = SubmoduleCode::zero(orbit, shape, base);
    seen.insert(key_of(&zero));
    mods.push(zero);

    // cyclic modules
    let mut cyclics: Vec<SubmoduleCode> = Vec::new();
    for idx in 1..count as u64 {
        let mut digits = idx;
        let row: Vec<metacyclic::algebra::SkewElement> = (0..shape.s)
            .map(|_| {
                let coeffs = (0..shape.u)
                    .map(|_| {
                        let mut sym_coords = Vec::with_capacity(t);
                        for _ in 0..t {
                            let coord = base.element_at(digits % qsize);
                            digits /= qsize;
                            sym_coords.push(coord.coeffs().to_vec());
                        }
                        kfield.from_fq_coords(&sym_coords)
                    })
                    .collect();
                metacyclic::algebra::SkewElement::from_coeffs(shape, coeffs)
            })
            .collect();
        let m = SubmoduleCode::closure(orbit, shape, base, &[row]);
        if seen.insert(key_of(&m)) {
            cyclics.push(m.clone());
            mods.push(m);
        }
    }
    // sums until fixpoint
    let mut frontier = mods.clone();
    while let Some(a) = frontier.pop() {
        for c in &cyclics {
            let mut gens = a.module_rows(base);
            gens.extend(c.module_rows(base));
            let sum = SubmoduleCode::closure(orbit, shape, base, &gens);
            if seen.insert(key_of(&sum)) {
                mods.push(sum.clone());
                frontier.push(sum);
            }
        }
    }
    // deterministic order
    mods.sort_by_key(key_of);
    Ok(mods)
}

fn cartesian(per_orbit: &[Vec<SubmoduleCode>]) -> Vec<Vec<SubmoduleCode>> {
    let mut out: Vec<Vec<SubmoduleCode>> = vec![Vec::new()];
    for options in per_orbit {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for opt in options {
                let mut row = prefix.clone();
                row.push(opt.clone());
                next.push(row);
            }
        }
        out = next;
    }
    out
}
