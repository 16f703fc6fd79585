//! `gonil`: command-line front end.
//!
//! Exit codes: 0 when the verdicts are consistent, 2 on input errors, 3 when
//! the verdicts disagree (the case is dumped and its path printed).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use gonil::classify::{
    cross_validate, ideal_decomposition, CaseDump, ClassificationReport, CrossValOptions,
    CrossValSummary, MetricGenerator, SemiStandardCoefficients,
};
use gonil::gonr::{GordonVerdict, NrFailure};
use gonil::graph::ClassKind;
use gonil::linalg::rational;
use gonil::report::{self, AnalyzeReport, CheckReport, ExampleReport, MetricSource, Provenance};
use gonil::{Graph, GraphLieAlgebra, Metric};

const EXIT_INPUT: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

#[derive(Parser)]
#[command(name = "gonil", version, about = "Geodesic orbit and naturally reductive metrics on graph nilmanifolds")]
struct Cli {
    /// Emit the structured JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combinatorics, derivations and ideals of a graph.
    Analyze { graph: PathBuf },
    /// Classify a graph with a metric.
    Check(CheckArgs),
    /// Randomized agreement sweep.
    Crossval(CrossvalArgs),
    /// Reproduce the worked example K4 ⊔ K3 ⊔ K2 ⊔ K2 ⊔ K1.
    Example,
}

#[derive(Args)]
struct CheckArgs {
    graph: PathBuf,
    /// Use the standard metric.
    #[arg(long, group = "metric_choice")]
    standard: bool,
    /// Semi-standard metric: one weight per simple ideal, then one center
    /// scalar or the upper triangle of the center block (comma separated).
    #[arg(long, group = "metric_choice", value_delimiter = ',', num_args = 1..)]
    semi_standard: Option<Vec<String>>,
    /// Metric file (JSON with `dim` and `gram`).
    #[arg(long, group = "metric_choice")]
    metric: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for disagreement dumps.
    #[arg(long, default_value = "gonil-cases")]
    dump_dir: PathBuf,
}

#[derive(Args)]
struct CrossvalArgs {
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    max_vertices: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Only draw graphs that are not cluster graphs.
    #[arg(long)]
    only_noncluster: bool,
    /// Use this graph file in every trial.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value = "gonil-cases")]
    dump_dir: PathBuf,
}

/// Failure carrying its exit code.
struct Exit(u8, anyhow::Error);

fn input<E: Into<anyhow::Error>>(e: E) -> Exit {
    Exit(EXIT_INPUT, e.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Exit> {
    match &cli.command {
        Command::Analyze { graph } => {
            let g = read_graph(graph).map_err(input)?;
            let r = report::analyze(&g, Provenance::new(vec![graph.display().to_string()], None));
            emit(cli.json, &r, print_analyze);
            Ok(0)
        }
        Command::Check(args) => check(cli.json, args),
        Command::Crossval(args) => crossval(cli.json, args),
        Command::Example => {
            let r = report::example(Provenance::new(vec![], None));
            emit(cli.json, &r, print_example);
            Ok(if r.constructed.nr.holds && r.constructed.semi_standard.holds {
                0
            } else {
                EXIT_DISAGREE
            })
        }
    }
}

fn emit<T: serde::Serialize>(json: bool, value: &T, text: fn(&T)) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        text(value);
    }
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn check(json: bool, args: &CheckArgs) -> Result<u8, Exit> {
    let g = read_graph(&args.graph).map_err(input)?;
    let algebra = GraphLieAlgebra::new(g.clone());
    let mut inputs = vec![args.graph.display().to_string()];
    let (metric, source) = if let Some(path) = &args.metric {
        inputs.push(path.display().to_string());
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(input)?;
        let metric = Metric::parse(&text)
            .with_context(|| format!("parsing {}", path.display()))
            .map_err(input)?;
        if metric.dim() != algebra.dim() {
            return Err(input(anyhow::anyhow!(
                "metric has dimension {}, the algebra has dimension {}",
                metric.dim(),
                algebra.dim()
            )));
        }
        (metric, MetricSource::File { path: path.display().to_string() })
    } else if let Some(values) = &args.semi_standard {
        let values = values
            .iter()
            .map(|v| rational::parse(v.trim()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(input)?;
        let dec = ideal_decomposition(&g)
            .context("semi-standard metrics need a cluster graph")
            .map_err(input)?;
        let coefficients = SemiStandardCoefficients::from_flat(&dec, &values).map_err(input)?;
        let metric = gonil::classify::construct_semi_standard(&g, &coefficients).map_err(input)?;
        (metric, MetricSource::SemiStandard { coefficients })
    } else if args.standard {
        (Metric::standard(&algebra), MetricSource::Standard)
    } else {
        return Err(input(anyhow::anyhow!(
            "choose one of --standard, --semi-standard or --metric"
        )));
    };
    let classification = report::check(&g, &metric, args.seed).map_err(input)?;
    let dump = if classification.agree {
        None
    } else {
        let case = CaseDump {
            graph: g.to_text(),
            metric: metric.to_doc(),
            seed: args.seed,
            trial: 0,
            generator: match source {
                MetricSource::Standard => MetricGenerator::Standard,
                MetricSource::SemiStandard { .. } => MetricGenerator::SemiStandard,
                MetricSource::File { .. } => MetricGenerator::Supplied,
            },
            report: classification.clone(),
        };
        Some(write_dump(&args.dump_dir, &case).map_err(|e| Exit(EXIT_DISAGREE, e))?)
    };
    let r = CheckReport {
        provenance: Provenance::new(inputs, Some(args.seed)),
        metric_source: source,
        classification,
        dump,
    };
    emit(json, &r, print_check);
    if let Some(path) = &r.dump {
        eprintln!("verdicts disagree; case written to {path}");
        return Ok(EXIT_DISAGREE);
    }
    Ok(0)
}

fn write_dump(dir: &Path, case: &CaseDump) -> anyhow::Result<String> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("check-seed{}.json", case.seed));
    fs::write(&path, serde_json::to_string_pretty(case)?)?;
    Ok(path.display().to_string())
}

fn crossval(json: bool, args: &CrossvalArgs) -> Result<u8, Exit> {
    if args.trials == 0 {
        return Err(input(anyhow::anyhow!("--trials must be at least 1")));
    }
    let mut opts = CrossValOptions::new(args.trials, args.max_vertices, args.seed);
    opts.only_noncluster = args.only_noncluster;
    opts.dump_dir = Some(args.dump_dir.clone());
    if let Some(path) = &args.graph {
        opts.forced_graph = Some(read_graph(path).map_err(input)?);
    }
    let summary = cross_validate(&opts);
    emit(json, &summary, print_crossval);
    if summary.all_agree() {
        Ok(0)
    } else {
        for o in summary.disagreements() {
            if let Some(p) = &o.dump {
                eprintln!("disagreement dumped to {p}");
            }
        }
        Ok(EXIT_DISAGREE)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set(s: &std::collections::BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn print_analyze(r: &AnalyzeReport) {
    println!("graph: {} vertices, {} edges", r.n, r.m);
    if r.abelian {
        println!("the algebra is abelian");
    }
    for line in &r.brackets {
        println!("  {line}");
    }
    println!("neighborhoods:");
    for v in &r.neighborhoods {
        println!("  {}: open {} closed {}", v.vertex, set(&v.open), set(&v.closed));
    }
    println!("preceq (row i, column j: i ⪯ j):");
    for row in &r.preceq {
        let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "." }).collect();
        println!("  {}", cells.join(" "));
    }
    println!("equivalence classes:");
    for (k, c) in r.classes.iter().enumerate() {
        let kind = match c.kind {
            ClassKind::Complete => "complete",
            ClassKind::Empty => "empty",
        };
        println!("  [{}] {:?} {kind}", k + 1, c.vertices);
    }
    if r.cluster.is_cluster {
        println!(
            "cluster graph: cliques {:?}, isolated {:?}",
            r.cluster.cliques, r.cluster.isolated
        );
    } else if let Some((a, b)) = r.cluster.witness_edge {
        println!("not a cluster graph: edge {a}–{b} joins non-equivalent vertices");
    } else {
        println!("not a cluster graph");
    }
    let d = &r.derivations;
    println!(
        "derivations: dim {} = {} (a-parts) + {} (a → z); preceq span dim {}; matching orientation {:?}",
        d.derivation_dim, d.a_part_dim, d.hom_dim, d.dm_span_dim, d.matching_orientations
    );
    println!("skew derivations (standard metric): dim {}", d.skew_derivation_dim);
    if let Some(b) = &d.block_claim {
        println!(
            "block-diagonal description: {} (block dim {}, actual {}){}",
            if b.holds { "holds" } else { "fails" },
            b.block_dim,
            b.actual_dim,
            if b.extra_units.is_empty() {
                String::new()
            } else {
                format!(", extra units {:?}", b.extra_units)
            }
        );
    }
    if let Some(ideals) = &r.ideals {
        print_ideals(ideals);
    }
}

fn print_ideals(ideals: &report::IdealReport) {
    println!("ideals of J0:");
    for (k, (ideal, labels)) in ideals.decomposition.ideals.iter().zip(&ideals.labels).enumerate() {
        println!("  i{} ({:?}, dim {}): span({})", k + 1, ideal.kind, ideal.dim(), labels.join(", "));
    }
    println!("phi-space dimension: {}", ideals.phi_dim);
}

fn print_verdicts(c: &ClassificationReport) {
    println!("cluster graph:      {}", yes(c.cluster.is_cluster));
    if let Some((a, b)) = c.cluster.witness_edge.filter(|_| !c.cluster.is_cluster) {
        println!("  edge {a}–{b} joins non-equivalent vertices");
    }
    println!("naturally reductive: {}", yes(c.nr.holds));
    match &c.nr.failure {
        Some(NrFailure::NotSubalgebra { alpha, beta }) => {
            println!("  [J{}, J{}] is not in span J", alpha + 1, beta + 1)
        }
        Some(NrFailure::NotSkew { gamma }) => println!(
            "  J^-1 ad(J{}) J is not skew for the metric on z",
            gamma + 1
        ),
        None => {}
    }
    println!("geodesic orbit:      {}", yes(c.go));
    match &c.go_sampled {
        GordonVerdict::No { witness, tested, .. } => {
            let label = witness
                .family_index
                .map(|(alpha, i)| format!("Z = C^-1 z{}, X = e{}", alpha + 1, i))
                .unwrap_or_else(|| format!("{:?} sample", witness.kind));
            println!("  Gordon test: infeasible at {label} (pair {tested})");
        }
        GordonVerdict::ProbablyYes { tested } => {
            println!("  Gordon test: feasible on all {} sampled pairs", tested.len())
        }
    }
    println!("semi-standard:       {}", yes(c.semi_standard.holds));
    if let Some(f) = &c.semi_standard.failure {
        println!("  {f}");
    }
    if let Some(cert) = &c.semi_standard.certificate {
        let w: Vec<String> = cert.simple.iter().map(|s| s.to_string()).collect();
        println!("  ideal weights: [{}]", w.join(", "));
        if !cert.center.is_empty() {
            let rows: Vec<String> = cert
                .center
                .iter()
                .map(|r| r.iter().map(rational::format).collect::<Vec<_>>().join(" "))
                .collect();
            println!("  center block: [{}]", rows.join("; "));
        }
    }
    println!("verdicts agree:      {}", yes(c.agree));
}

fn print_check(r: &CheckReport) {
    println!("{} {} (seed {})", r.provenance.tool, r.provenance.version, r.provenance.seed.unwrap_or(0));
    println!("inputs: {}", r.provenance.inputs.join(", "));
    print_verdicts(&r.classification);
}

fn print_crossval(s: &CrossValSummary) {
    println!(
        "{} trials ({} cluster, {} non-cluster), {} cases",
        s.trials, s.cluster_trials, s.noncluster_trials, s.cases
    );
    println!("agreement: {}/{}", s.agreements, s.cases);
    println!(
        "non-cluster trials with witnesses from the (C^-1 z, e) family: {}/{}",
        s.noncluster_with_family_witness, s.noncluster_trials
    );
    for o in s.disagreements() {
        println!(
            "  disagreement: trial {} {:?} ({} vertices){}",
            o.trial,
            o.generator,
            o.vertices,
            o.dump.as_ref().map(|p| format!(" -> {p}")).unwrap_or_default()
        );
    }
}

fn print_example(r: &ExampleReport) {
    println!("graph K4 ⊔ K3 ⊔ K2 ⊔ K2 ⊔ K1 (12 vertices, 11 edges)");
    for line in &r.brackets {
        println!("  {line}");
    }
    print_ideals(&r.ideals);
    let c = &r.constructed;
    let weights: Vec<String> = c.coefficients.simple.iter().map(rational::format).collect();
    println!(
        "semi-standard metric with weights [{}] and center {}:",
        weights.join(", "),
        c.coefficients
            .center
            .first()
            .and_then(|row| row.first())
            .map(rational::format)
            .unwrap_or_default()
    );
    println!("  naturally reductive: {}", yes(c.nr.holds));
    println!("  recognized as semi-standard: {}", yes(c.semi_standard.holds));
    println!(
        "unit weights give the standard metric: {}",
        yes(r.unit_weights_give_standard)
    );
}
