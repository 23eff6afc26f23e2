//! mcc: decomposition reports, code analysis, induction pipelines and
//! parameter-grid search for split metacyclic group algebras.
//!
//! Exit codes: 0 success, 1 domain error (structured JSON on stderr),
//! 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use metacyclic::algebra::GroupParams;
use metacyclic::codes::{self, MetacyclicCode, DEFAULT_BUDGET};
use metacyclic::error::Error;
use metacyclic::gf::FieldDesc;
use metacyclic::induced;
use metacyclic::json as fmt;
use metacyclic::wedderburn::Decomposition;

mod search;
mod text;

#[derive(Parser)]
#[command(name = "mcc", version, about = "metacyclic group-algebra codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    q: u64,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct BudgetArgs {
    /// Enumeration budget (codewords visited); defaults to MCC_BUDGET or 2^24.
    #[arg(long)]
    budget: Option<u64>,
    /// Seed for randomized samplers.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl BudgetArgs {
    fn budget(&self) -> u64 {
        self.budget
            .or_else(|| {
                std::env::var("MCC_BUDGET")
                    .ok()
                    .and_then(|s| s.parse().ok())
            })
            .unwrap_or(DEFAULT_BUDGET)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Orbit table, summand kinds and refined shapes for one group algebra.
    Decompose {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the left ideal generated by elements from a generators file.
    Build {
        /// JSON file: {"params": …, "generators": [element, …]}.
        #[arg(long)]
        gens: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dimension, distances, GC structure and attack census of a code.
    Analyze {
        /// Code file: {"params": …, "basis": [element, …]}.
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Induce an H-code up to the full group.
    Induce {
        /// Subgroup generators as a JSON list, e.g. '["a"]' or '["b^2*a^3"]'.
        #[arg(long)]
        h: String,
        /// H-code file: {"params": …, "basis": [element, …]}.
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Intersect two induced codes and report the distance/dimension bounds.
    Intersect {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        h2: String,
        #[arg(long)]
        c2: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dual low-weight census against the GC-structure threshold.
    AttackCheck {
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep a parameter grid, sampling or enumerating submodule tuples.
    Search(search::SearchArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let payload = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            eprintln!("{payload}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Decompose { group, output } => {
            let (_, dec) = build_dec(&group)?;
            let report = fmt::decompose_report(&dec);
            emit(&output, &report, text::render_decompose)
        }
        Command::Build { gens, output } => {
            let v = read_json(&gens)?;
            let params = fmt::params_from_json(
                v.get("params")
                    .ok_or_else(|| Error::Parse("missing 'params'".into()))?,
            )?;
            let gen_elems = v
                .get("generators")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("missing 'generators'".into()))?
                .iter()
                .map(|g| fmt::element_from_json(&params, g))
                .collect::<Result<Vec<_>, _>>()?;
            let code = codes::ideal_from_generators(&params, &gen_elems)?;
            let report = fmt::code_to_json(&code);
            emit(&output, &report, text::render_code)
        }
        Command::Analyze {
            code,
            budget,
            output,
        } => {
            let c = load_code(&code)?;
            let dec = Decomposition::build(c.params())?;
            let report = fmt::analysis_report(&c, &dec, budget.budget(), budget.seed)?;
            emit(&output, &report, text::render_analysis)
        }
        Command::Induce { h, code, output } => {
            let v = read_json(&code)?;
            let c = fmt::code_from_json(&v)?;
            let params = Arc::clone(c.params());
            let subgroup = subgroup_from_arg(&params, &h)?;
            let hcode = induced::SubgroupCode::from_generators(&subgroup, &c.basis().to_vec())?;
            let induced_code = induced::induce(&hcode)?;
            let mut report = fmt::code_to_json(&induced_code);
            report["induced_from"] = json!({
                "subgroup_order": subgroup.order(),
                "index": subgroup.index(),
                "h_dim": hcode.dim(),
            });
            emit(&output, &report, text::render_code)
        }
        Command::Intersect {
            h1,
            c1,
            h2,
            c2,
            budget,
            output,
        } => {
            let v1 = read_json(&c1)?;
            let code1 = fmt::code_from_json(&v1)?;
            let params = Arc::clone(code1.params());
            let v2 = read_json(&c2)?;
            let code2 = fmt::code_from_json(&v2)?;
            if code2.params() != &params {
                return Err(Error::ParamMismatch);
            }
            let s1 = subgroup_from_arg(&params, &h1)?;
            let s2 = subgroup_from_arg(&params, &h2)?;
            let d1 = induced::SubgroupCode::from_generators(&s1, &code1.basis().to_vec())?;
            let d2 = induced::SubgroupCode::from_generators(&s2, &code2.basis().to_vec())?;
            let (inter, cert) = induced::intersect_induced(&d1, &d2, budget.budget())?;
            let d_exact = match inter.min_distance_exact(budget.budget()) {
                Ok(d) => Some(d),
                Err(Error::BudgetExceeded { .. }) | Err(Error::ZeroCode) => None,
                Err(e) => return Err(e),
            };
            let mut report = fmt::code_to_json(&inter);
            report["intersection"] = json!({
                "dim": cert.dim,
                "d_exact": d_exact,
                "certificate": {
                    "d1": cert.d1,
                    "d2": cert.d2,
                    "product_bound": cert.product_bound,
                    "dim_bound": cert.dim_bound,
                },
            });
            emit(&output, &report, text::render_intersection)
        }
        Command::AttackCheck {
            code,
            budget,
            output,
        } => {
            let c = load_code(&code)?;
            let dec = Decomposition::build(c.params())?;
            let rep = c.attack_feasibility(&dec, budget.budget(), budget.seed)?;
            let report = json!({
                "params": fmt::params_to_json(c.params()),
                "dim": c.dim(),
                "attack": {
                    "threshold": rep.threshold,
                    "count": rep.count,
                    "exact": rep.exact,
                    "dual_dim": rep.dual_dim,
                    "verdict": rep.verdict.label(),
                },
            });
            emit(&output, &report, text::render_attack)
        }
        Command::Search(args) => search::run(args),
    }
}

fn build_dec(group: &GroupArgs) -> Result<(Arc<GroupParams>, Decomposition), Error> {
    let field = FieldDesc::prime_power(group.q)?;
    let params = GroupParams::new(&field, group.n, group.m, group.r)?;
    let dec = Decomposition::build(&params)?;
    Ok((params, dec))
}

fn read_json(path: &PathBuf) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_code(path: &PathBuf) -> Result<MetacyclicCode, Error> {
    fmt::code_from_json(&read_json(path)?)
}

fn subgroup_from_arg(
    params: &Arc<GroupParams>,
    arg: &str,
) -> Result<Arc<induced::SubgroupSpec>, Error> {
    let v: Value =
        serde_json::from_str(arg).map_err(|e| Error::Parse(format!("subgroup generators: {e}")))?;
    let wrapped = json!({ "generators": v });
    Ok(Arc::new(fmt::subgroup_from_json(params, &wrapped)?))
}

fn emit(output: &OutputArgs, report: &Value, render: fn(&Value) -> String) -> Result<(), Error> {
    let body = match output.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(report).unwrap()),
        Format::Text => render(report),
    };
    match &output.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
