//! The classification as a decision procedure, and its randomized cross-check.
//!
//! For a graph algebra with a metric the following are equivalent: the metric is
//! geodesic orbit; it is naturally reductive; the graph is a disjoint union of
//! complete graphs and the metric is semi-standard. [`classify`] runs an
//! independent test for each and reports whether they agree.

pub mod crossval;
pub mod ideals;
pub mod phi;
pub mod semistandard;

use serde::{Deserialize, Serialize};

pub use crossval::{cross_validate, CaseDump, CrossValOptions, CrossValSummary, MetricGenerator};
pub use ideals::{ideal_decomposition, Ideal, IdealDecomposition, IdealKind};
pub use phi::{phi_space, phi_violation, PhiSpace};
pub use semistandard::{
    construct_semi_standard, is_semi_standard, SemiStandardCertificate, SemiStandardCoefficients,
    SemiStandardFailure, SemiStandardResult, Surd,
};

use crate::derivations::skew_derivation_space;
use crate::error::Result;
use crate::gonr::{go_test_sampled, nr_test, GordonVerdict, NrResult};
use crate::graph::{self, ClusterDecomposition, Graph};
use crate::metric::{Metric, MetricLieAlgebra};
use crate::nilpotent::GraphLieAlgebra;

/// Random `(Z, X)` pairs tried after the structured ones.
pub const DEFAULT_EXTRA_SAMPLES: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub cluster: ClusterDecomposition,
    pub nr: NrResult,
    /// Geodesic-orbit verdict: taken from `nr`, corroborated by `go_sampled`.
    pub go: bool,
    pub go_sampled: GordonVerdict,
    pub semi_standard: SemiStandardResult,
    pub agree: bool,
}

impl ClassificationReport {
    pub fn is_cluster(&self) -> bool {
        self.cluster.is_cluster
    }
}

/// Consistency of the three verdicts with the equivalence and with the
/// guaranteed witnesses on non-cluster graphs.
pub fn verdicts_agree(cluster: bool, nr: bool, semi: bool, sampled: &GordonVerdict) -> bool {
    let equivalence = nr == (cluster && semi);
    let go_sound = !sampled.is_no() || !nr;
    let witnessed = cluster || sampled.witness_from_family();
    equivalence && go_sound && witnessed
}

pub fn classify_frame(frame: &MetricLieAlgebra, seed: u64, extra_samples: usize) -> ClassificationReport {
    let cluster = graph::is_cluster_graph(frame.algebra.graph());
    let nr = nr_test(frame);
    let skew = skew_derivation_space(frame);
    let go_sampled = go_test_sampled(frame, &skew, seed, extra_samples);
    let semi_standard = is_semi_standard(frame);
    let agree = verdicts_agree(cluster.is_cluster, nr.holds, semi_standard.holds, &go_sampled);
    ClassificationReport {
        go: nr.holds,
        cluster,
        nr,
        go_sampled,
        semi_standard,
        agree,
    }
}

pub fn classify(g: &Graph, metric: &Metric, seed: u64) -> Result<ClassificationReport> {
    let frame = MetricLieAlgebra::new(GraphLieAlgebra::new(g.clone()), metric.clone())?;
    Ok(classify_frame(&frame, seed, DEFAULT_EXTRA_SAMPLES))
}
