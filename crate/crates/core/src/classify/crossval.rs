//! Seeded random sweep checking that the three verdicts always agree.

use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ideals::ideal_decomposition;
use super::semistandard::{construct_semi_standard, SemiStandardCoefficients};
use super::{classify_frame, ClassificationReport, DEFAULT_EXTRA_SAMPLES};
use crate::graph::{self, Graph};
use crate::linalg::Matrix;
use crate::metric::{Metric, MetricDoc, MetricLieAlgebra};
use crate::nilpotent::GraphLieAlgebra;
use crate::random;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricGenerator {
    Standard,
    /// Random weights, pulled back through a random automorphism.
    SemiStandard,
    /// `RᵀR + I` on the whole algebra.
    RandomSpd,
    /// Given by the user rather than generated.
    Supplied,
}

#[derive(Debug, Clone)]
pub struct CrossValOptions {
    pub trials: usize,
    pub max_vertices: usize,
    pub seed: u64,
    /// Draw only graphs that are not cluster graphs.
    pub only_noncluster: bool,
    /// Use this graph in every trial instead of a random one.
    pub forced_graph: Option<Graph>,
    /// Where disagreement cases are written.
    pub dump_dir: Option<PathBuf>,
    pub extra_samples: usize,
}

impl CrossValOptions {
    pub fn new(trials: usize, max_vertices: usize, seed: u64) -> Self {
        CrossValOptions {
            trials,
            max_vertices,
            seed,
            only_noncluster: false,
            forced_graph: None,
            dump_dir: None,
            extra_samples: DEFAULT_EXTRA_SAMPLES,
        }
    }
}

/// One classified `(graph, metric)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub trial: usize,
    pub generator: MetricGenerator,
    pub vertices: usize,
    pub edges: usize,
    pub cluster: bool,
    pub nr: bool,
    pub go_no: bool,
    pub family_witness: bool,
    pub semi_standard: bool,
    pub agree: bool,
    pub dump: Option<String>,
}

/// Self-contained record of a disagreement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDump {
    pub graph: String,
    pub metric: MetricDoc,
    pub seed: u64,
    pub trial: usize,
    pub generator: MetricGenerator,
    pub report: ClassificationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValSummary {
    pub trials: usize,
    pub cases: usize,
    pub agreements: usize,
    pub cluster_trials: usize,
    pub noncluster_trials: usize,
    /// Non-cluster trials in which every metric drew a witness from the
    /// `(C⁻¹z_α, e_i)` family.
    pub noncluster_with_family_witness: usize,
    pub outcomes: Vec<CaseOutcome>,
}

impl CrossValSummary {
    pub fn all_agree(&self) -> bool {
        self.agreements == self.cases
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &CaseOutcome> {
        self.outcomes.iter().filter(|o| !o.agree)
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn random_graph(rng: &mut ChaCha8Rng, opts: &CrossValOptions) -> Graph {
    if let Some(g) = &opts.forced_graph {
        return g.clone();
    }
    let max = opts.max_vertices.max(1);
    if opts.only_noncluster {
        let max = max.max(3);
        loop {
            let n = rng.gen_range(3..=max);
            let p = rng.gen_range(0.3..0.8);
            let g = random::gnp(rng, n, p);
            if !graph::is_cluster_graph(&g).is_cluster {
                return g;
            }
        }
    }
    let n = rng.gen_range(1..=max);
    if rng.gen_bool(0.5) {
        random::cluster_graph(rng, n)
    } else {
        let p = rng.gen_range(0.2..0.8);
        random::gnp(rng, n, p)
    }
}

/// Matrix of a random automorphism of a cluster-graph algebra in the
/// construction basis: invertible blocks on each clique and on `𝔞₀`, a shear
/// from cliques into `𝔞₀`, a shear from `𝔞` into `𝔷`, and the induced map on
/// `𝔷`.
pub fn random_automorphism(g: &Graph, rng: &mut ChaCha8Rng) -> Matrix {
    let cluster = graph::is_cluster_graph(g);
    assert!(cluster.is_cluster, "automorphisms are built for cluster graphs");
    let algebra = GraphLieAlgebra::new(g.clone());
    let (n, m) = (algebra.n(), algebra.m());
    let mut p = Matrix::zeros(n, n);
    let iso: Vec<usize> = cluster.isolated.iter().map(|v| v - 1).collect();
    let mut blocks: Vec<Vec<usize>> = cluster
        .cliques
        .iter()
        .map(|c| c.iter().map(|v| v - 1).collect())
        .collect();
    blocks.push(iso.clone());
    for block in &blocks {
        if !block.is_empty() {
            p.set_block(block, block, &random::invertible(rng, block.len()));
        }
    }
    for &row in &iso {
        for col in 0..n {
            if !iso.contains(&col) && rng.gen_bool(0.5) {
                p[(row, col)] = random::rational_in(rng, 2, 3);
            }
        }
    }
    let dim = n + m;
    let mut phi = Matrix::zeros(dim, dim);
    let all_a: Vec<usize> = (0..n).collect();
    let all_z: Vec<usize> = (n..dim).collect();
    phi.set_block(&all_a, &all_a, &p);
    phi.set_block(&all_z, &all_a, &random::matrix(rng, m, n, 2));
    let images: Vec<Vec<_>> = (0..n)
        .map(|i| {
            let mut v = p.column(i);
            v.resize(dim, Default::default());
            v
        })
        .collect();
    for (alpha, &(i, j)) in g.edges().iter().enumerate() {
        let z = algebra.bracket(&images[i - 1], &images[j - 1]);
        for (row, val) in z.into_iter().enumerate() {
            phi[(row, n + alpha)] = val;
        }
    }
    phi
}

fn generate_metric(
    g: &Graph,
    generator: MetricGenerator,
    rng: &mut ChaCha8Rng,
) -> Metric {
    let algebra = GraphLieAlgebra::new(g.clone());
    match generator {
        MetricGenerator::Standard => Metric::standard(&algebra),
        MetricGenerator::RandomSpd => Metric::new(random::spd(rng, algebra.dim())).expect("RᵀR + I"),
        MetricGenerator::SemiStandard => {
            let dec = ideal_decomposition(g).expect("cluster graph");
            let coeffs = SemiStandardCoefficients::random(&dec, rng);
            let base = construct_semi_standard(g, &coeffs).expect("positive weights");
            let phi = random_automorphism(g, rng);
            let gram = phi.transpose().mul(base.gram()).mul(&phi);
            Metric::new(gram).expect("pullback of a metric by an automorphism")
        }
        MetricGenerator::Supplied => unreachable!("sweeps only use generated metrics"),
    }
}

fn dump_case(dir: &Path, case: &CaseDump) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!(
        "case-seed{}-trial{}-{:?}.json",
        case.seed, case.trial, case.generator
    ));
    fs::write(&path, serde_json::to_string_pretty(case).expect("serializable"))?;
    Ok(path)
}

fn run_trial(opts: &CrossValOptions, trial: usize) -> Vec<CaseOutcome> {
    let mut rng = trial_rng(opts.seed, trial);
    let g = random_graph(&mut rng, opts);
    let cluster = graph::is_cluster_graph(&g).is_cluster;
    let mut generators = vec![MetricGenerator::Standard];
    if cluster {
        generators.push(MetricGenerator::SemiStandard);
    }
    generators.push(MetricGenerator::RandomSpd);
    generators
        .into_iter()
        .map(|generator| {
            let metric = generate_metric(&g, generator, &mut rng);
            let frame = MetricLieAlgebra::new(GraphLieAlgebra::new(g.clone()), metric.clone())
                .expect("generated metrics are valid");
            let report = classify_frame(&frame, rng.gen(), opts.extra_samples);
            let dump = match (&opts.dump_dir, report.agree) {
                (Some(dir), false) => dump_case(
                    dir,
                    &CaseDump {
                        graph: g.to_text(),
                        metric: metric.to_doc(),
                        seed: opts.seed,
                        trial,
                        generator,
                        report: report.clone(),
                    },
                )
                .ok()
                .map(|p| p.display().to_string()),
                _ => None,
            };
            CaseOutcome {
                trial,
                generator,
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                cluster,
                nr: report.nr.holds,
                go_no: report.go_sampled.is_no(),
                family_witness: report.go_sampled.witness_from_family(),
                semi_standard: report.semi_standard.holds,
                agree: report.agree,
                dump,
            }
        })
        .collect()
}

/// Runs `opts.trials` independent trials in parallel. Each trial draws its
/// graph and metrics from its own stream of the seed, so results do not depend
/// on scheduling.
pub fn cross_validate(opts: &CrossValOptions) -> CrossValSummary {
    let per_trial: Vec<Vec<CaseOutcome>> = (0..opts.trials)
        .into_par_iter()
        .map(|t| run_trial(opts, t))
        .collect();
    let cluster_trials = per_trial.iter().filter(|o| o[0].cluster).count();
    let noncluster_with_family_witness = per_trial
        .iter()
        .filter(|o| !o[0].cluster && o.iter().all(|c| c.family_witness))
        .count();
    let outcomes: Vec<CaseOutcome> = per_trial.into_iter().flatten().collect();
    CrossValSummary {
        trials: opts.trials,
        cases: outcomes.len(),
        agreements: outcomes.iter().filter(|o| o.agree).count(),
        cluster_trials,
        noncluster_trials: opts.trials - cluster_trials,
        noncluster_with_family_witness,
        outcomes,
    }
}
