use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qtsp::anneal::{sample, Schedule, ScheduleKind};
use qtsp::bench::{self, Backend, BenchConfig, BenchRecord, CurveFit, ReportFormat};
use qtsp::encode::{
    build_qubo_dwave_form, build_qubo_sa_form, default_penalty, qubo_to_ising, tour_cost, Tour,
};
use qtsp::ilp::{self, build_dfj, build_mtz, default_poly_penalty, solve_anneal};
use qtsp::instance::{
    load_instance, normalize_minmax, random_directed_instance, random_instance, TspInstance,
};
use qtsp::oracle::{brute_force, held_karp, OracleResult};
use qtsp::qaoa::{qaoa_solve, AnsatzKind, QaoaConfig};
use qtsp::qpe::{qpe_search, run_qpe, DEFAULT_PRECISION};
use qtsp::QuboModel;

/// Encode, solve and benchmark small traveling salesman instances.
#[derive(Parser)]
#[command(name = "qtsp", version)]
struct Cli {
    /// Worker threads for parallel runs (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock times in machine output. Timed output is not
    /// byte-reproducible.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen(GenArgs),
    /// Emit the QUBO (or Ising) model of an instance.
    Encode(EncodeArgs),
    /// Solve an instance with one of the pipelines.
    Solve {
        #[command(subcommand)]
        backend: SolveCmd,
    },
    /// Solve an instance exactly.
    Oracle {
        #[command(subcommand)]
        method: OracleCmd,
    },
    /// Run a benchmark study.
    Bench {
        #[command(subcommand)]
        study: BenchCmd,
    },
    /// Re-render benchmark records from a CSV file.
    Report(ReportArgs),
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Simulated annealing on the penalty QUBO.
    Sa(SaArgs),
    /// Variational circuit on the SA-form QUBO (at most 4 cities).
    Qaoa(QaoaArgs),
    /// Phase estimation of tour costs (at most 6 cities).
    Qpe(QpeArgs),
    /// Integer program converted to a penalty polynomial and annealed.
    Ilp(IlpArgs),
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Enumerate every tour (at most 10 cities).
    Bf(OracleArgs),
    /// Held-Karp dynamic program (at most 18 cities).
    Hk(OracleArgs),
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Feasible fraction per size, with and without normalization.
    Violation(ViolationArgs),
    /// Solve time per size with exponential and power-law fits.
    Runtime(StudyArgs),
    /// Approximation ratio against the exact optimum (at most 10 cities).
    Quality(StudyArgs),
}

#[derive(Args, Serialize)]
struct GenArgs {
    /// Number of cities.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    lo: f64,
    #[arg(long, default_value_t = 10.0)]
    hi: f64,
    /// Draw both directions of every edge independently.
    #[arg(long)]
    directed: bool,
    #[arg(long, value_enum, default_value_t = InstanceFormat::Json)]
    format: InstanceFormat,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum InstanceFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Form {
    /// `n x n` cyclic grid.
    Sa,
    /// `(n+1) x (n+1)` grid with pinned start and end.
    Dwave,
}

#[derive(Args, Serialize)]
struct EncodeArgs {
    /// Instance file (JSON or headerless CSV).
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Form::Sa)]
    form: Form,
    /// Penalty weight (default: n * max distance).
    #[arg(long)]
    penalty: Option<f64>,
    /// Min-max normalize distances first.
    #[arg(long)]
    normalize: bool,
    /// Emit the Ising model instead of the QUBO.
    #[arg(long)]
    ising: bool,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ScheduleArg {
    Geometric,
    Linear,
}

#[derive(Args, Serialize)]
struct SaArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Form::Sa)]
    form: Form,
    /// Penalty weight (default: n * max distance).
    #[arg(long)]
    penalty: Option<f64>,
    /// Independent anneals; the lowest-energy feasible one wins.
    #[arg(long, default_value_t = 20)]
    runs: usize,
    /// Sweeps per anneal (default: 1000 * spins).
    #[arg(long)]
    sweeps: Option<usize>,
    #[arg(long, value_enum, default_value_t = ScheduleArg::Geometric)]
    schedule: ScheduleArg,
    /// Starting inverse temperature (default: scaled to the model).
    #[arg(long)]
    beta_start: Option<f64>,
    /// Final inverse temperature (default: scaled to the model).
    #[arg(long)]
    beta_end: Option<f64>,
    /// Anneal on min-max normalized distances; costs stay in original units.
    #[arg(long)]
    normalize: bool,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum AnsatzArg {
    Canonical,
    HardwareEfficient,
}

#[derive(Args, Serialize)]
struct QaoaArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = AnsatzArg::Canonical)]
    ansatz: AnsatzArg,
    /// `p` for the canonical ansatz, layer count otherwise.
    #[arg(long, default_value_t = 2)]
    layers: usize,
    #[arg(long, default_value_t = 2048)]
    shots: u64,
    /// Maximum objective evaluations.
    #[arg(long, default_value_t = 500)]
    budget: usize,
    /// Penalty weight (default: n * max distance).
    #[arg(long)]
    penalty: Option<f64>,
    /// Write the optimizer trace as CSV.
    #[arg(long)]
    #[serde(skip)]
    trace: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct QpeArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Estimate this tour only (comma-separated cities); default searches all.
    #[arg(long, value_delimiter = ',')]
    tour: Option<Vec<usize>>,
    /// Precision qubits.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
    #[arg(long, default_value_t = 1024)]
    shots: u64,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FormulationArg {
    Mtz,
    Dfj,
}

#[derive(Args, Serialize)]
struct IlpArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormulationArg::Mtz)]
    formulation: FormulationArg,
    /// Largest subset with a DFJ subtour constraint (default: n - 1).
    #[arg(long)]
    max_subset: Option<usize>,
    /// Penalty weight (default: n * max distance).
    #[arg(long)]
    penalty: Option<f64>,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Multiplier on the default sweep count.
    #[arg(long, default_value_t = 1.0)]
    sweep_scale: f64,
    /// Write the model in LP format.
    #[arg(long)]
    #[serde(skip)]
    lp: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FormatArg {
    Csv,
    Json,
    Svg,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Svg => ReportFormat::Svg,
        }
    }
}

#[derive(Args, Serialize)]
struct StudyArgs {
    /// sa, qaoa, qpe, ilp, bf or hk.
    #[arg(long, default_value = "sa", value_parser = parse_backend)]
    #[serde(serialize_with = "backend_name")]
    backend: Backend,
    /// Comma-separated city counts.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    lo: f64,
    #[arg(long, default_value_t = 10.0)]
    hi: f64,
    /// Fixed penalty weight (default: scaled to each instance).
    #[arg(long)]
    penalty: Option<f64>,
    /// Multiplier on the default anneal sweep count.
    #[arg(long, default_value_t = 1.0)]
    sweep_scale: f64,
    /// Fixed SA sweep count for every size (overrides --sweep-scale for SA).
    #[arg(long)]
    sweeps: Option<usize>,
    /// Anneals per SA or ILP solve.
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum NormalizeArg {
    On,
    Off,
    Both,
}

#[derive(Args, Serialize)]
struct ViolationArgs {
    #[command(flatten)]
    #[serde(flatten)]
    study: StudyArgs,
    #[arg(long, value_enum, default_value_t = NormalizeArg::Both)]
    normalize: NormalizeArg,
}

#[derive(Args, Serialize)]
struct ReportArgs {
    /// CSV written by a bench command.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Svg)]
    format: FormatArg,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e: qtsp::Error| e.to_string())
}

fn backend_name<S: serde::Serializer>(b: &Backend, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(b.name())
}

enum Outcome {
    Done,
    Infeasible,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Infeasible) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let timing = cli.timing;
    match cli.command {
        Command::Gen(a) => gen(&a),
        Command::Encode(a) => encode(&a),
        Command::Solve { backend } => match backend {
            SolveCmd::Sa(a) => solve_sa(&a, timing),
            SolveCmd::Qaoa(a) => solve_qaoa(&a),
            SolveCmd::Qpe(a) => solve_qpe(&a),
            SolveCmd::Ilp(a) => solve_ilp(&a, timing),
        },
        Command::Oracle { method } => match method {
            OracleCmd::Bf(a) => oracle("bf", &a, brute_force),
            OracleCmd::Hk(a) => oracle("hk", &a, held_karp),
        },
        Command::Bench { study } => match study {
            BenchCmd::Violation(a) => {
                let norm: &[bool] = match a.normalize {
                    NormalizeArg::On => &[true],
                    NormalizeArg::Off => &[false],
                    NormalizeArg::Both => &[false, true],
                };
                let records = bench::violation_study(
                    a.study.backend,
                    &a.study.sizes,
                    a.study.trials,
                    norm,
                    a.study.seed,
                    &config(&a.study, timing),
                )?;
                print_violation_summary(&records);
                emit(&a.study, &records, &[])
            }
            BenchCmd::Quality(a) => {
                let records = bench::quality_study(
                    a.backend,
                    &a.sizes,
                    a.trials,
                    a.seed,
                    &config(&a, timing),
                )?;
                print_quality_summary(&records);
                emit(&a, &records, &[])
            }
            BenchCmd::Runtime(a) => {
                let study =
                    bench::runtime_study(a.backend, &a.sizes, a.trials, a.seed, &config(&a, true))?;
                for (n, ms) in bench::median_times(&study.records) {
                    println!("n {n:>3}  median {ms:.3} ms");
                }
                for f in &study.fits {
                    println!("{}", describe_fit(f));
                }
                println!("best: {:?}", study.best.family);
                emit(&a, &study.records, &study.fits)
            }
        },
        Command::Report(a) => report(&a),
    }
}

fn read_instance(path: &Path) -> Result<TspInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    load_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(out: &Option<PathBuf>, content: &str) -> Result<()> {
    if let Some(path) = out {
        fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn gen(a: &GenArgs) -> Result<Outcome> {
    let inst = if a.directed {
        random_directed_instance(a.n, a.seed, a.lo, a.hi)?
    } else {
        random_instance(a.n, a.seed, a.lo, a.hi)?
    };
    println!(
        "{}-city instance, seed {}, distances in [{}, {})",
        a.n, a.seed, a.lo, a.hi
    );
    for row in inst.rows() {
        println!(
            "{}",
            row.iter()
                .map(|d| format!("{d:8.3}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    let content = match a.format {
        InstanceFormat::Json => inst.to_json() + "\n",
        InstanceFormat::Csv => inst.to_csv(),
    };
    write_out(&a.out, &content)?;
    Ok(Outcome::Done)
}

fn build_form(inst: &TspInstance, form: Form, penalty: Option<f64>) -> Result<QuboModel> {
    let p = penalty.unwrap_or_else(|| default_penalty(inst));
    Ok(match form {
        Form::Sa => build_qubo_sa_form(inst, p)?,
        Form::Dwave => build_qubo_dwave_form(inst, p)?,
    })
}

fn encode(a: &EncodeArgs) -> Result<Outcome> {
    let mut inst = read_instance(&a.instance)?;
    if a.normalize {
        inst = normalize_minmax(&inst)?.0;
    }
    let qubo = build_form(&inst, a.form, a.penalty)?;
    println!(
        "{} variables, {} nonzero terms, penalty {}, offset {}",
        qubo.num_vars(),
        qubo.terms().len(),
        qubo.penalty(),
        qubo.offset()
    );
    let content = if a.ising {
        let ising = qubo_to_ising(&qubo);
        let n = ising.num_spins();
        let couplings: Vec<(usize, usize, f64)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, ising.coupling(i, j)))
            .filter(|t| t.2 != 0.0)
            .collect();
        to_json(&json!({
            "num_spins": n,
            "offset": ising.offset(),
            "h": ising.field(),
            "j": couplings,
        }))
    } else {
        qubo.to_json() + "\n"
    };
    write_out(&a.out, &content)?;
    Ok(Outcome::Done)
}

fn tour_summary(inst: &TspInstance, tour: Option<&Tour>) -> Result<Value> {
    Ok(match tour {
        Some(t) => {
            let t = t.rotated_to_zero();
            json!({ "tour": t, "cost": tour_cost(inst, &t)? })
        }
        None => json!({ "tour": null, "cost": null }),
    })
}

fn print_tour(inst: &TspInstance, tour: Option<&Tour>) -> Result<Outcome> {
    match tour {
        Some(t) => {
            let t = t.rotated_to_zero();
            println!("tour {t}");
            println!("cost {}", tour_cost(inst, &t)?);
            Ok(Outcome::Done)
        }
        None => {
            println!("no feasible tour found");
            Ok(Outcome::Infeasible)
        }
    }
}

fn solve_sa(a: &SaArgs, timing: bool) -> Result<Outcome> {
    let original = read_instance(&a.instance)?;
    let working = if a.normalize {
        normalize_minmax(&original)?.0
    } else {
        original.clone()
    };
    let qubo = build_form(&working, a.form, a.penalty)?;
    let ising = qubo_to_ising(&qubo);
    let mut sched = Schedule::for_model(&ising);
    if let Some(s) = a.sweeps {
        sched = sched.with_sweeps(s);
    }
    let kind = match a.schedule {
        ScheduleArg::Geometric => ScheduleKind::Geometric,
        ScheduleArg::Linear => ScheduleKind::Linear,
    };
    let sched = Schedule::new(
        kind,
        a.beta_start.unwrap_or(sched.beta_start),
        a.beta_end.unwrap_or(sched.beta_end),
        sched.sweeps,
    )?;
    let set = sample(&ising, &qubo, &sched, a.runs, a.seed)?;
    println!("{} of {} runs feasible", set.feasible_count, a.runs);
    let runs: Vec<Value> = set
        .to_json_lines(timing)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid line"))
        .collect();
    let best = set.best_tour();
    let doc = json!({
        "command": "solve sa",
        "seed": a.seed,
        "config": a,
        "schedule": sched,
        "penalty": qubo.penalty(),
        "result": tour_summary(&original, best)?,
        "feasible_runs": set.feasible_count,
        "runs": runs,
    });
    write_out(&a.out, &to_json(&doc))?;
    print_tour(&original, best)
}

fn solve_qaoa(a: &QaoaArgs) -> Result<Outcome> {
    let inst = read_instance(&a.instance)?;
    let cfg = QaoaConfig {
        kind: match a.ansatz {
            AnsatzArg::Canonical => AnsatzKind::Canonical,
            AnsatzArg::HardwareEfficient => AnsatzKind::HardwareEfficient,
        },
        layers: a.layers,
        shots: a.shots,
        budget: a.budget,
        gamma: a.penalty,
    };
    let out = qaoa_solve(&inst, &cfg, a.seed)?;
    println!(
        "<H_C> {:.6} (uniform {:.6}) after {} evaluations; {} of {} shots feasible",
        out.expectation,
        out.uniform_expectation,
        out.trace.iterations.len(),
        out.feasible_shots,
        a.shots
    );
    if let Some(path) = &a.trace {
        fs::write(path, out.trace.to_csv())
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    let doc = json!({
        "command": "solve qaoa",
        "seed": a.seed,
        "config": a,
        "result": tour_summary(&inst, out.tour.as_ref())?,
        "bitstring": out.bitstring,
        "params": out.params,
        "expectation": out.expectation,
        "uniform_expectation": out.uniform_expectation,
        "feasible_shots": out.feasible_shots,
        "evaluations": out.trace.iterations.len(),
        "best_objective": out.trace.best_value(),
        "histogram": out.histogram,
    });
    write_out(&a.out, &to_json(&doc))?;
    print_tour(&inst, out.tour.as_ref())
}

fn solve_qpe(a: &QpeArgs) -> Result<Outcome> {
    let inst = read_instance(&a.instance)?;
    let doc = match &a.tour {
        Some(order) => {
            let tour = Tour::new(order.clone())?;
            let out = run_qpe(&inst, &tour, a.precision, a.shots, a.seed)?;
            let exact = tour_cost(&inst, &tour)?;
            println!(
                "tour {tour}: j {} theta {} estimated cost {} (exact {exact})",
                out.j_hat, out.theta_hat, out.est_cost
            );
            json!({
                "command": "solve qpe",
                "seed": a.seed,
                "config": a,
                "result": out,
                "exact_cost": exact,
            })
        }
        None => {
            let search = qpe_search(&inst, a.precision, a.shots, a.seed)?;
            let best = &search.best;
            println!("{} tours estimated", search.evaluated.len());
            println!("tour {}", best.tour);
            println!("estimated cost {}", best.est_cost);
            println!("cost {}", tour_cost(&inst, &best.tour)?);
            let evaluated: Vec<Value> = search
                .evaluated
                .iter()
                .map(|o| json!({ "tour": o.tour, "j_hat": o.j_hat, "est_cost": o.est_cost }))
                .collect();
            json!({
                "command": "solve qpe",
                "seed": a.seed,
                "config": a,
                "result": tour_summary(&inst, Some(&best.tour))?,
                "best": best,
                "evaluated": evaluated,
            })
        }
    };
    write_out(&a.out, &to_json(&doc))?;
    Ok(Outcome::Done)
}

fn solve_ilp(a: &IlpArgs, timing: bool) -> Result<Outcome> {
    let inst = read_instance(&a.instance)?;
    let model = match a.formulation {
        FormulationArg::Mtz => build_mtz(&inst)?,
        FormulationArg::Dfj => {
            build_dfj(&inst, a.max_subset.unwrap_or(inst.n().saturating_sub(1)))?
        }
    };
    if let Some(path) = &a.lp {
        fs::write(path, model.to_lp_string())
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    let penalty = a.penalty.unwrap_or_else(|| default_poly_penalty(&inst));
    let (poly, _) = ilp::to_polynomial(&model, penalty)?;
    println!(
        "{} constraints, {} binary variables after expansion",
        model.constraints.len(),
        poly.num_vars
    );
    let set = solve_anneal(&model, penalty, a.sweep_scale, a.runs, a.seed)?;
    println!("{} of {} runs feasible", set.feasible_count, a.runs);
    let runs: Vec<Value> = set
        .to_json_lines(timing)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid line"))
        .collect();
    let best = set.best_tour();
    let doc = json!({
        "command": "solve ilp",
        "seed": a.seed,
        "config": a,
        "penalty": penalty,
        "binary_variables": poly.num_vars,
        "result": tour_summary(&inst, best)?,
        "feasible_runs": set.feasible_count,
        "runs": runs,
    });
    write_out(&a.out, &to_json(&doc))?;
    print_tour(&inst, best)
}

fn oracle(
    name: &str,
    a: &OracleArgs,
    f: fn(&TspInstance) -> qtsp::Result<OracleResult>,
) -> Result<Outcome> {
    let inst = read_instance(&a.instance)?;
    let r = f(&inst)?;
    println!("cost {}", r.cost);
    println!("tour {}", r.tour);
    let doc = json!({ "command": format!("oracle {name}"), "config": a, "result": r });
    write_out(&a.out, &to_json(&doc))?;
    Ok(Outcome::Done)
}

fn config(a: &StudyArgs, timing: bool) -> BenchConfig {
    BenchConfig {
        lo: a.lo,
        hi: a.hi,
        penalty: a.penalty,
        sweep_scale: a.sweep_scale,
        sweeps: a.sweeps,
        restarts: a.restarts,
        timing,
        ..BenchConfig::default()
    }
}

fn emit(a: &StudyArgs, records: &[BenchRecord], fits: &[CurveFit]) -> Result<Outcome> {
    if a.out.is_some() {
        let content = bench::emit_report(records, fits, a.format.into())?;
        write_out(&a.out, &content)?;
    }
    Ok(Outcome::Done)
}

fn print_violation_summary(records: &[BenchRecord]) {
    for s in bench::summarize(records) {
        println!(
            "{:<10} n {:>3} {:<10} feasible {:>3}/{:<3} violation probability {:.2}",
            s.backend.name(),
            s.n,
            if s.normalized { "normalized" } else { "raw" },
            s.feasible,
            s.total,
            s.violation_probability()
        );
    }
}

fn print_quality_summary(records: &[BenchRecord]) {
    let mut by_n: BTreeMap<usize, Vec<BenchRecord>> = BTreeMap::new();
    for r in records {
        by_n.entry(r.n).or_default().push(r.clone());
    }
    for (n, rs) in by_n {
        let feasible = rs.iter().filter(|r| r.feasible).count();
        match bench::mean_approx_ratio(&rs) {
            Some(m) => println!(
                "n {n:>3} feasible {feasible}/{} mean approx ratio {m:.4}",
                rs.len()
            ),
            None => println!(
                "n {n:>3} feasible {feasible}/{} no feasible tours",
                rs.len()
            ),
        }
    }
}

fn describe_fit(f: &CurveFit) -> String {
    match f.family {
        bench::FitFamily::Exponential => format!(
            "exponential  t = {:.4e} * {:.4}^n  r2 {:.4}",
            f.a, f.b, f.r2
        ),
        bench::FitFamily::PowerLaw => format!(
            "power law    t = {:.4e} * n^{:.4}  r2 {:.4}",
            f.a, f.b, f.r2
        ),
    }
}

fn report(a: &ReportArgs) -> Result<Outcome> {
    let text =
        fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let records = bench::parse_csv(&text)?;
    if records.is_empty() {
        bail!("{} has no records", a.input.display());
    }
    let mut fits = Vec::new();
    if records.iter().all(|r| r.wall_ms.is_some()) {
        let mut by_backend: BTreeMap<Backend, Vec<BenchRecord>> = BTreeMap::new();
        for r in &records {
            by_backend.entry(r.backend).or_default().push(r.clone());
        }
        for (backend, rs) in by_backend {
            if let Ok((fs_, _)) = bench::fit_runtime(&rs) {
                for f in &fs_ {
                    println!("{backend}: {}", describe_fit(f));
                }
                fits.extend(fs_);
            }
        }
    }
    println!("{} records", records.len());
    let content = bench::emit_report(&records, &fits, a.format.into())?;
    write_out(&a.out, &content)?;
    Ok(Outcome::Done)
}
