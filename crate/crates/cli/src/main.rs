use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lcmfilt::filtration::{filtration, ComparisonReport, FiltrationKind};
use lcmfilt::graph::{
    cut_ideal, deletion_experiment, enumerate_cuts, write_experiment_csv, GraphJson,
};
use lcmfilt::lattice::build_lcm_lattice;
use lcmfilt::monomial::{IdealJson, LoadedIdeal};
use lcmfilt::persistence::{
    bottleneck, complexes_of, distance_matrix, matrix_csv, persistence_diagram, wasserstein,
    Aggregate, DistanceOptions, Metric, PersistenceDiagram,
};
use lcmfilt::reliability::{
    failure_ideal, kfold_signature, lattice_ratio_curve, write_curve_csv, SystemKind, SystemSpec,
};
use lcmfilt::simplicial::{
    betti_numbers, literal_boundary_step, parse_complexes, reduced_betti_numbers,
    sensitive_corners, sr_ideal, stepwise_complex_step, ComplexJson, Field, SimplicialComplex,
};
use lcmfilt::{Error, Guards};

mod reproduce;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "lcmfilt", version, about = "lcm-lattices and lcm-filtrations of monomial ideals")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest generator count for which an lcm-lattice is built. Overrides
    /// LCMFILT_GUARD_ATOMS.
    #[arg(long, global = true)]
    guard_atoms: Option<usize>,
    /// Largest generator count for a full usual lcm-filtration.
    #[arg(long, global = true)]
    guard_generators: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on monomial ideals read from ideal JSON.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Operations on simplicial complexes read from complex JSON.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Cuts and cut ideals of graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Reliability systems.
    #[command(subcommand)]
    System(SystemCmd),
    /// Persistence diagrams and distances.
    #[command(subcommand)]
    Persist(PersistCmd),
    /// Data tables for plots.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Recompute the published reference values and compare.
    ReproducePaper(OutArg),
}

#[derive(Args)]
struct OutArg {
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Usual,
    Stepwise,
}

impl From<Mode> for FiltrationKind {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Usual => FiltrationKind::Usual,
            Mode::Stepwise => FiltrationKind::Stepwise,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Kofn,
    Clin,
    Ccirc,
}

impl From<KindArg> for SystemKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Kofn => SystemKind::KOfN,
            KindArg::Clin => SystemKind::ConsecutiveLinear,
            KindArg::Ccirc => SystemKind::ConsecutiveCircular,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Bottleneck,
    Wasserstein,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Bottleneck => Metric::Bottleneck,
            MetricArg::Wasserstein => Metric::Wasserstein,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AggregateArg {
    Sum,
    Max,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long, value_enum, default_value = "bottleneck")]
    metric: MetricArg,
    /// How per-dimension distances are combined.
    #[arg(long, value_enum, default_value = "sum")]
    aggregate: AggregateArg,
    /// Wasserstein order.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    q: u32,
}

impl DistanceArgs {
    fn options(&self) -> DistanceOptions {
        DistanceOptions {
            aggregate: match self.aggregate {
                AggregateArg::Sum => Aggregate::Sum,
                AggregateArg::Max => Aggregate::Max,
            },
            q: self.q,
        }
    }
}

#[derive(Subcommand)]
enum IdealCmd {
    /// Usual or stepwise lcm-filtration as JSON.
    Filtration {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "usual")]
        mode: Mode,
        /// Also write the step-by-step comparison of both filtrations as CSV.
        #[arg(long)]
        compare: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// lcm-lattice size and poset density.
    Lattice {
        input: PathBuf,
        /// Include the lattice elements as exponent vectors.
        #[arg(long)]
        elements: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Nonzero multigraded Betti numbers over the lcm-lattice.
    Corners {
        input: PathBuf,
        /// Coefficient field: Q or GF(p).
        #[arg(long, default_value = "Q")]
        field: Field,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// One stepwise filtration step.
    Step {
        input: PathBuf,
        /// Use the boundary-count rule instead of the non-face rule.
        #[arg(long)]
        boundary_rule: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Betti numbers, reduced by default.
    Betti {
        input: PathBuf,
        #[arg(long, default_value = "Q")]
        field: Field,
        #[arg(long)]
        unreduced: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// f-vector `(f_-1, f_0, ...)`.
    Fvector {
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// All j-cuts of a graph.
    Cuts {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        j: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Cut ideal in ideal JSON with edge variable names.
    Cutideal {
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Edge-deletion experiment on `K_n` (same as `experiment er`).
    Experiment(ErArgs),
}

#[derive(Args)]
struct ErArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    n: usize,
    /// Restrict to these system kinds (all when omitted).
    #[arg(long, value_enum, value_delimiter = ',')]
    kinds: Vec<KindArg>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Subcommand)]
enum SystemCmd {
    /// Exact signature, or k-fold signature with `--fold`.
    Signature {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        fold: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Lattice-ratio curve as CSV (same as `experiment kcurve`).
    Kcurve(CurveArgs),
}

#[derive(Subcommand)]
enum PersistCmd {
    /// Diagram of the Stanley–Reisner filtration of one complex.
    Diagram {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "usual")]
        mode: Mode,
        #[arg(long)]
        maxdim: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Distance between two diagram JSON files.
    Distance {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        distance: DistanceArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Distance matrix for a list of named complexes, as CSV.
    Matrix {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "usual")]
        mode: Mode,
        #[command(flatten)]
        distance: DistanceArgs,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Edge-deletion experiment: density against poset density.
    Er(ErArgs),
    /// Lattice-ratio curve for the reliability systems.
    Kcurve(CurveArgs),
}

/// Failure classes, each with its exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Guard(String),
    Mismatch(usize),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Guard(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Failure::Guard(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &OutArg, text: &str) -> CliResult {
    match &out.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Run context shared by every command: guards and the metadata header.
struct Ctx {
    guards: Guards,
}

impl Ctx {
    fn meta<'a>(&self, extra: &[(&'a str, String)]) -> Vec<(&'a str, String)> {
        let mut m = vec![
            ("tool", format!("lcmfilt {VERSION}")),
            ("guard_atoms", self.guards.lattice_atoms.to_string()),
            ("guard_generators", self.guards.filtration_generators.to_string()),
            ("guard_kfold_subsets", self.guards.kfold_subsets.to_string()),
        ];
        m.extend(extra.iter().cloned());
        m
    }

    fn json(&self, extra: &[(&str, String)], result: Value) -> String {
        let meta: serde_json::Map<String, Value> = self
            .meta(extra)
            .into_iter()
            .map(|(k, v)| (k.to_string(), Value::String(v)))
            .collect();
        let mut s = serde_json::to_string(&json!({ "meta": meta, "result": result }))
            .expect("JSON values serialize");
        s.push('\n');
        s
    }

    fn csv_header(&self, extra: &[(&str, String)]) -> String {
        self.meta(extra)
            .iter()
            .map(|(k, v)| format!("# {k}={v}\n"))
            .collect()
    }
}

fn load_ideal(path: &Path) -> CliResult<LoadedIdeal> {
    Ok(IdealJson::parse(&read(path)?)?)
}

fn load_complex(path: &Path) -> CliResult<SimplicialComplex> {
    let c: ComplexJson = serde_json::from_str(&read(path)?)?;
    Ok(c.load()?)
}

fn load_graph(path: &Path) -> CliResult<lcmfilt::graph::Graph> {
    let g: GraphJson = serde_json::from_str(&read(path)?)?;
    Ok(g.load()?)
}

fn comparison_csv(rep: &ComparisonReport) -> String {
    let joined = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut s = format!(
        "# unmatched_usual={}\n# usual_lcm_evaluations={}\n# stepwise_lcm_evaluations={}\n",
        joined(&rep.unmatched_usual),
        rep.usual_lcm_evaluations,
        rep.stepwise_lcm_evaluations
    );
    s.push_str("stepwise_step,generators,usual_steps\n");
    for (j, g) in rep.stepwise_generators.iter().enumerate() {
        s.push_str(&format!("{},{g},{}\n", j + 1, joined(&rep.matches_of(j + 1))));
    }
    s
}

fn run_ideal(ctx: &Ctx, cmd: IdealCmd) -> CliResult {
    match cmd {
        IdealCmd::Filtration {
            input,
            mode,
            compare,
            out,
        } => {
            let loaded = load_ideal(&input)?;
            let f = filtration(&loaded.ideal, mode.into(), &ctx.guards)?;
            if let Some(path) = compare {
                let other_kind = match mode {
                    Mode::Usual => FiltrationKind::Stepwise,
                    Mode::Stepwise => FiltrationKind::Usual,
                };
                let other = filtration(&loaded.ideal, other_kind, &ctx.guards)?;
                let rep = match mode {
                    Mode::Usual => ComparisonReport::from_filtrations(&f, &other),
                    Mode::Stepwise => ComparisonReport::from_filtrations(&other, &f),
                };
                let text = ctx.csv_header(&[]) + &comparison_csv(&rep);
                emit(&OutArg { output: Some(path) }, &text)?;
            }
            let result = json!({
                "filtration": serde_json::to_value(f.to_json(loaded.vars.clone()))?,
                "summary": serde_json::to_value(f.summary_rows())?,
            });
            emit(&out, &ctx.json(&[("mode", f.kind().to_string())], result))
        }
        IdealCmd::Lattice {
            input,
            elements,
            out,
        } => {
            let loaded = load_ideal(&input)?;
            let lattice = build_lcm_lattice(&loaded.ideal, &ctx.guards)?;
            let d = lattice.density();
            let mut v = serde_json::to_value(lattice.to_json(elements))?;
            v["pden"] = json!(d.ratio().to_string());
            v["taylor"] = json!(d.is_taylor());
            emit(&out, &ctx.json(&[], v))
        }
        IdealCmd::Corners { input, field, out } => {
            let loaded = load_ideal(&input)?;
            let table = sensitive_corners(&loaded.ideal, field, &ctx.guards)?;
            let mut v = table.to_json();
            v["totals"] = json!(table.totals());
            emit(&out, &ctx.json(&[("field", field.to_string())], v))
        }
    }
}

fn run_complex(ctx: &Ctx, cmd: ComplexCmd) -> CliResult {
    match cmd {
        ComplexCmd::Step {
            input,
            boundary_rule,
            out,
        } => {
            let delta = load_complex(&input)?;
            let next = if boundary_rule {
                literal_boundary_step(&delta)?
            } else {
                stepwise_complex_step(&delta)?
            };
            let v = json!({
                "complex": serde_json::to_value(next.to_json())?,
                "sr_ideal": serde_json::to_value(IdealJson::from_ideal(&sr_ideal(&next)?, None))?,
            });
            emit(&out, &ctx.json(&[], v))
        }
        ComplexCmd::Betti {
            input,
            field,
            unreduced,
            out,
        } => {
            let delta = load_complex(&input)?;
            let v = if unreduced {
                json!({ "betti": betti_numbers(&delta, field)? })
            } else {
                json!({ "reduced_betti": reduced_betti_numbers(&delta, field)?.ranks() })
            };
            emit(&out, &ctx.json(&[("field", field.to_string())], v))
        }
        ComplexCmd::Fvector { input, out } => {
            let delta = load_complex(&input)?;
            let v = json!({ "f_vector": delta.f_vector()? });
            emit(&out, &ctx.json(&[], v))
        }
    }
}

fn run_er(ctx: &Ctx, args: ErArgs) -> CliResult {
    let rows = deletion_experiment(args.n, args.runs, args.seed, &ctx.guards)?;
    let meta = ctx.meta(&[
        ("seed", args.seed.to_string()),
        ("n", args.n.to_string()),
        ("runs", args.runs.to_string()),
    ]);
    let mut buf = Vec::new();
    write_experiment_csv(&rows, &meta, &mut buf)?;
    emit(&args.out, &String::from_utf8(buf).expect("CSV is UTF-8"))
}

fn run_curve(ctx: &Ctx, args: CurveArgs) -> CliResult {
    let kinds: Vec<SystemKind> = if args.kinds.is_empty() {
        SystemKind::ALL.to_vec()
    } else {
        args.kinds.iter().map(|&k| k.into()).collect()
    };
    let points = lattice_ratio_curve(args.n, &kinds, &ctx.guards)?;
    let mut buf = Vec::new();
    write_curve_csv(&points, &ctx.meta(&[("n", args.n.to_string())]), &mut buf)?;
    emit(&args.out, &String::from_utf8(buf).expect("CSV is UTF-8"))
}

fn run_graph(ctx: &Ctx, cmd: GraphCmd) -> CliResult {
    match cmd {
        GraphCmd::Cuts { input, j, out } => {
            let g = load_graph(&input)?;
            if j == 0 || j > g.nvertices() {
                return Err(Failure::Input(format!("j = {j} outside 1..={}", g.nvertices())));
            }
            let cuts: Vec<String> = enumerate_cuts(&g, j).iter().map(|c| c.to_string()).collect();
            emit(&out, &ctx.json(&[], json!({ "j": j, "count": cuts.len(), "cuts": cuts })))
        }
        GraphCmd::Cutideal { input, out } => {
            let g = load_graph(&input)?;
            let ideal = cut_ideal(&g)?;
            let v = serde_json::to_value(IdealJson::from_ideal(&ideal, Some(g.edge_names())))?;
            emit(&out, &ctx.json(&[], v))
        }
        GraphCmd::Experiment(args) => run_er(ctx, args),
    }
}

fn run_system(ctx: &Ctx, cmd: SystemCmd) -> CliResult {
    match cmd {
        SystemCmd::Signature {
            kind,
            n,
            k,
            fold,
            out,
        } => {
            let spec = SystemSpec::new(kind.into(), n, k)?;
            let ideal = failure_ideal(&spec)?;
            let s = kfold_signature(&ideal, n, fold, &ctx.guards)?;
            let mut v = s.to_json();
            v["kind"] = json!(spec.kind.to_string());
            v["n"] = json!(n);
            v["k"] = json!(k);
            v["fold"] = json!(fold);
            emit(&out, &ctx.json(&[], v))
        }
        SystemCmd::Kcurve(args) => run_curve(ctx, args),
    }
}

fn run_persist(ctx: &Ctx, cmd: PersistCmd) -> CliResult {
    match cmd {
        PersistCmd::Diagram {
            input,
            mode,
            maxdim,
            out,
        } => {
            let delta = load_complex(&input)?;
            let f = filtration(&sr_ideal(&delta)?, mode.into(), &ctx.guards)?;
            let d = persistence_diagram(&complexes_of(&f)?, maxdim);
            emit(&out, &ctx.json(&[("mode", f.kind().to_string())], d.to_json()))
        }
        PersistCmd::Distance {
            first,
            second,
            distance,
            out,
        } => {
            let load = |p: &Path| -> CliResult<PersistenceDiagram> {
                let v: Value = serde_json::from_str(&read(p)?)?;
                let v = v.get("result").cloned().unwrap_or(v);
                Ok(PersistenceDiagram::from_json(&v)?)
            };
            let (a, b) = (load(&first)?, load(&second)?);
            let opts = distance.options();
            let metric: Metric = distance.metric.into();
            let d = match metric {
                Metric::Bottleneck => bottleneck(&a, &b, &opts),
                Metric::Wasserstein => wasserstein(&a, &b, &opts),
            };
            let value = if d.is_finite() { json!(d) } else { json!("inf") };
            let meta = [
                ("metric", metric.to_string()),
                ("aggregate", opts.aggregate.to_string()),
                ("q", opts.q.to_string()),
            ];
            emit(&out, &ctx.json(&meta, json!({ "distance": value })))
        }
        PersistCmd::Matrix {
            input,
            mode,
            distance,
            out,
        } => {
            let (labels, complexes): (Vec<String>, Vec<SimplicialComplex>) =
                parse_complexes(&read(&input)?)?.into_iter().unzip();
            let opts = distance.options();
            let metric: Metric = distance.metric.into();
            let kind: FiltrationKind = mode.into();
            let m = distance_matrix(&complexes, kind, metric, &opts, &ctx.guards)?;
            let meta = [
                ("mode", kind.to_string()),
                ("metric", metric.to_string()),
                ("aggregate", opts.aggregate.to_string()),
                ("q", opts.q.to_string()),
            ];
            emit(&out, &(ctx.csv_header(&meta) + &matrix_csv(&labels, &m)))
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let mut guards = Guards::from_env();
    if let Some(a) = cli.guard_atoms {
        guards.lattice_atoms = a;
    }
    if let Some(g) = cli.guard_generators {
        guards.filtration_generators = g;
    }
    if guards.lattice_atoms == 0 || guards.filtration_generators == 0 {
        return Err(Failure::Input("guards must be positive".into()));
    }
    let ctx = Ctx { guards };
    match cli.command {
        Command::Ideal(c) => run_ideal(&ctx, c),
        Command::Complex(c) => run_complex(&ctx, c),
        Command::Graph(c) => run_graph(&ctx, c),
        Command::System(c) => run_system(&ctx, c),
        Command::Persist(c) => run_persist(&ctx, c),
        Command::Experiment(ExperimentCmd::Er(a)) => run_er(&ctx, a),
        Command::Experiment(ExperimentCmd::Kcurve(a)) => run_curve(&ctx, a),
        Command::ReproducePaper(out) => {
            let report = reproduce::run();
            let text = ctx.csv_header(&[]) + &report.render();
            emit(&out, &text)?;
            match report.failures() {
                0 => Ok(()),
                n => Err(Failure::Mismatch(n)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Guard(m) => eprintln!("error: {m}; raise the guard with --guard-atoms, --guard-generators or LCMFILT_GUARD_ATOMS"),
                Failure::Mismatch(n) => eprintln!("{n} reference check(s) failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
