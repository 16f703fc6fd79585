//! Serializable reports behind the command-line front end.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classify::{
    classify_frame, construct_semi_standard, ideal_decomposition, is_semi_standard, phi_space,
    ClassificationReport, IdealDecomposition, SemiStandardCoefficients, SemiStandardResult,
    DEFAULT_EXTRA_SAMPLES,
};
use crate::derivations::{
    block_claim, derivation_space, dm_span, matching_orientations, skew_derivation_space,
    BlockClaim, Orientation,
};
use crate::error::Result;
use crate::gonr::{nr_test, NrResult};
use crate::graph::{self, ClassKind, ClusterDecomposition, Graph};
use crate::metric::{Metric, MetricLieAlgebra};
use crate::nilpotent::GraphLieAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(inputs: Vec<String>, seed: Option<u64>) -> Self {
        Provenance {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexReport {
    pub vertex: usize,
    pub open: BTreeSet<usize>,
    pub closed: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub vertices: Vec<usize>,
    pub kind: ClassKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationReport {
    pub derivation_dim: usize,
    pub a_part_dim: usize,
    pub hom_dim: usize,
    pub dm_span_dim: usize,
    pub matching_orientations: Vec<Orientation>,
    /// For the standard metric.
    pub skew_derivation_dim: usize,
    /// Only for cluster graphs.
    pub block_claim: Option<BlockClaim>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealReport {
    pub decomposition: IdealDecomposition,
    pub labels: Vec<Vec<String>>,
    pub phi_dim: usize,
}

impl IdealReport {
    pub fn new(g: &Graph) -> Result<Self> {
        let decomposition = ideal_decomposition(g)?;
        let labels = decomposition.ideals.iter().map(|i| i.labels()).collect();
        Ok(IdealReport {
            phi_dim: phi_space(g)?.dim(),
            decomposition,
            labels,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub provenance: Provenance,
    pub n: usize,
    pub m: usize,
    pub abelian: bool,
    pub brackets: Vec<String>,
    pub neighborhoods: Vec<VertexReport>,
    pub preceq: Vec<Vec<bool>>,
    pub classes: Vec<ClassReport>,
    pub class_order: Vec<(usize, usize)>,
    pub cluster: ClusterDecomposition,
    pub derivations: DerivationReport,
    pub ideals: Option<IdealReport>,
}

pub fn analyze(g: &Graph, provenance: Provenance) -> AnalyzeReport {
    let algebra = GraphLieAlgebra::new(g.clone());
    let frame = MetricLieAlgebra::standard(algebra.clone());
    let cluster = graph::is_cluster_graph(g);
    let partition = graph::equivalence_classes(g);
    let der = derivation_space(&frame);
    let dm = dm_span(g);
    let derivations = DerivationReport {
        derivation_dim: der.dim(),
        a_part_dim: der.a_parts.len(),
        hom_dim: g.vertex_count() * g.edge_count(),
        dm_span_dim: dm.dim(),
        matching_orientations: matching_orientations(&der, &dm),
        skew_derivation_dim: skew_derivation_space(&frame).dim(),
        block_claim: cluster
            .is_cluster
            .then(|| block_claim(&der, &cluster, g.vertex_count())),
    };
    AnalyzeReport {
        provenance,
        n: g.vertex_count(),
        m: g.edge_count(),
        abelian: g.edge_count() == 0,
        brackets: algebra.bracket_table(),
        neighborhoods: graph::neighborhoods(g)
            .into_iter()
            .enumerate()
            .map(|(k, h)| VertexReport {
                vertex: k + 1,
                open: h.open,
                closed: h.closed,
            })
            .collect(),
        preceq: graph::preceq_table(g),
        classes: partition
            .classes
            .iter()
            .map(|c| ClassReport {
                vertices: c.vertices.clone(),
                kind: c.kind,
            })
            .collect(),
        class_order: partition.order.clone(),
        ideals: cluster.is_cluster.then(|| IdealReport::new(g).expect("cluster graph")),
        cluster,
        derivations,
    }
}

/// How the metric of a `check` run was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MetricSource {
    Standard,
    SemiStandard { coefficients: SemiStandardCoefficients },
    File { path: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub provenance: Provenance,
    pub metric_source: MetricSource,
    pub classification: ClassificationReport,
    /// Where the case was written when the verdicts disagree.
    pub dump: Option<String>,
}

pub fn check(g: &Graph, metric: &Metric, seed: u64) -> Result<ClassificationReport> {
    let frame = MetricLieAlgebra::new(GraphLieAlgebra::new(g.clone()), metric.clone())?;
    Ok(classify_frame(&frame, seed, DEFAULT_EXTRA_SAMPLES))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleMetricReport {
    pub coefficients: SemiStandardCoefficients,
    pub nr: NrResult,
    pub semi_standard: SemiStandardResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub provenance: Provenance,
    pub graph: String,
    pub brackets: Vec<String>,
    pub cluster: ClusterDecomposition,
    pub ideals: IdealReport,
    pub constructed: ExampleMetricReport,
    /// All weights `1` reproduce the standard metric.
    pub unit_weights_give_standard: bool,
}

/// Weights used by the `example` command: `2, 3, 5` on the simple ideals and
/// `7` on the center.
pub fn example_coefficients(dec: &IdealDecomposition) -> SemiStandardCoefficients {
    use crate::linalg::rational::int;
    SemiStandardCoefficients::from_flat(dec, &[int(2), int(3), int(5), int(7)])
        .expect("three simple ideals and a center")
}

pub fn example(provenance: Provenance) -> ExampleReport {
    let g = Graph::example();
    let algebra = GraphLieAlgebra::new(g.clone());
    let ideals = IdealReport::new(&g).expect("cluster graph");
    let coefficients = example_coefficients(&ideals.decomposition);
    let metric = construct_semi_standard(&g, &coefficients).expect("positive weights");
    let frame = MetricLieAlgebra::new(algebra.clone(), metric).expect("valid metric");
    let unit = construct_semi_standard(&g, &SemiStandardCoefficients::standard(&ideals.decomposition))
        .expect("positive weights");
    ExampleReport {
        provenance,
        graph: g.to_text(),
        brackets: algebra.bracket_table(),
        cluster: graph::is_cluster_graph(&g),
        constructed: ExampleMetricReport {
            coefficients,
            nr: nr_test(&frame),
            semi_standard: is_semi_standard(&frame),
        },
        unit_weights_give_standard: unit == Metric::standard(&algebra),
        ideals,
    }
}
