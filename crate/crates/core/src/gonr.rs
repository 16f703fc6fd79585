//! Geodesic-orbit and naturally-reductive criteria for a metric graph algebra.
//!
//! * Geodesic orbit: for every `X ∈ 𝔞`, `Z ∈ 𝔷` there is a metric-skew derivation
//!   `D` with `DZ = 0` and `DX = J_Z X`. Each `(Z, X)` is an exact affine
//!   feasibility problem over [`SkewDerivationSpace`]; the quantifier is covered
//!   by sampling, so a negative answer is certain and a positive one is not.
//! * Naturally reductive: `𝒥` is a subalgebra of `so(𝔞)` and
//!   `J⁻¹ ∘ ad_{J_Z} ∘ J ∈ so(𝔷)` for every `Z`. Both conditions are linear and
//!   decided exactly.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::derivations::{is_metric_skew, SkewDerivationSpace};
use crate::error::{Error, Result};
use crate::graph;
use crate::linalg::{self, rational, Matrix, Polynomial, Rational, Solution};
use crate::metric::MetricLieAlgebra;
use crate::nilpotent::{basis_vector, GraphLieAlgebra};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// A witness derivation (full `dim × dim`, adapted coordinates).
    Feasible(Matrix),
    /// `y` with `yᵀM = 0` and `yᵀb ≠ 0` for the stacked system `M·c = b`.
    Infeasible { certificate: Vec<Rational> },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Rows: the `n²` entries of `[D_𝔞, J_Z]`, then the `n` entries of `D_𝔞 X`.
fn gordon_system(
    skew: &SkewDerivationSpace,
    jz: &Matrix,
    x: &[Rational],
) -> (Matrix, Vec<Rational>) {
    let n = jz.rows();
    let s = skew.dim();
    let mut m = Matrix::zeros(n * n + n, s);
    for (k, t) in skew.a_parts.iter().enumerate() {
        let comm = t.commutator(jz);
        for (p, v) in comm.entries().iter().enumerate() {
            m[(p, k)] = v.clone();
        }
        for (i, v) in t.mul_vec(x).into_iter().enumerate() {
            m[(n * n + i, k)] = v;
        }
    }
    let mut b = vec![Rational::zero(); n * n];
    b.extend(jz.mul_vec(x));
    (m, b)
}

/// Left-kernel vector of `m` pairing nontrivially with `b`.
pub fn farkas_certificate(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    linalg::nullspace(&m.transpose())
        .into_iter()
        .find(|y| !linalg::dot(y, b).is_zero())
}

/// Is there `D ∈ Der(𝔫) ∩ so(𝔫)` with `[D_𝔞, J_Z] = 0` and `D_𝔞 X = J_Z X`?
///
/// `z` is in central coordinates, `x` in adapted `𝔞`-coordinates.
pub fn gordon_feasible(
    frame: &MetricLieAlgebra,
    skew: &SkewDerivationSpace,
    z: &[Rational],
    x: &[Rational],
) -> Feasibility {
    let jz = frame.j_at(z);
    let (m, b) = gordon_system(skew, &jz, x);
    match linalg::solve(&m, &b).expect("consistent shapes") {
        Solution::Feasible { particular, .. } => {
            let dim = frame.algebra.dim();
            let mut d = Matrix::zeros(dim, dim);
            for (k, c) in particular.iter().enumerate() {
                d.add_scaled(c, &skew.full[k]);
            }
            verify_witness(frame, &d, z, x, &jz);
            Feasibility::Feasible(d)
        }
        Solution::Infeasible => Feasibility::Infeasible {
            certificate: farkas_certificate(&m, &b)
                .expect("an inconsistent system has a left-kernel certificate"),
        },
    }
}

fn verify_witness(frame: &MetricLieAlgebra, d: &Matrix, z: &[Rational], x: &[Rational], jz: &Matrix) {
    let (n, m) = (frame.n(), frame.m());
    assert!(
        is_metric_skew(&frame.adapted_gram(), d),
        "witness is not metric-skew"
    );
    let mut zvec = vec![Rational::zero(); n];
    zvec.extend_from_slice(z);
    let dz = d.mul_vec(&zvec);
    assert!(dz.iter().all(Zero::is_zero), "witness does not annihilate Z");
    let mut xvec = x.to_vec();
    xvec.extend(std::iter::repeat_with(Rational::zero).take(m));
    let dx = d.mul_vec(&xvec);
    assert_eq!(&dx[..n], &jz.mul_vec(x)[..], "witness does not move X to J_Z X");
    assert!(dx[n..].iter().all(Zero::is_zero));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SampleKind {
    /// `(C⁻¹ z_α, e_i)`.
    Family,
    /// A certified generic `Z` against a basis or random `X`.
    Generic,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplePair {
    pub kind: SampleKind,
    #[serde(with = "rational::serde_str::vec")]
    pub z: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    pub x: Vec<Rational>,
    /// `(α, i)` for family pairs (0-based edge, 1-based vertex).
    pub family_index: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum GordonVerdict {
    No {
        witness: SamplePair,
        #[serde(with = "rational::serde_str::vec")]
        certificate: Vec<Rational>,
        tested: usize,
    },
    ProbablyYes {
        tested: Vec<SamplePair>,
    },
}

impl GordonVerdict {
    pub fn is_no(&self) -> bool {
        matches!(self, GordonVerdict::No { .. })
    }

    pub fn witness_from_family(&self) -> bool {
        matches!(self, GordonVerdict::No { witness, .. } if witness.kind == SampleKind::Family)
    }
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|_| rational::frac(rng.gen_range(-12..=12), rng.gen_range(1..=4)))
        .collect()
}

/// Runs [`gordon_feasible`] on the family `(C⁻¹z_α, e_i)`, on a generic `Z`
/// against every `e_i` and a few random `X`, and on `extra_samples` random
/// pairs. The first infeasible pair is returned as a witness.
pub fn go_test_sampled(
    frame: &MetricLieAlgebra,
    skew: &SkewDerivationSpace,
    seed: u64,
    extra_samples: usize,
) -> GordonVerdict {
    let (n, m) = (frame.n(), frame.m());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<SamplePair> = Vec::new();
    for alpha in 0..m {
        let z = frame.c_inv_z(alpha);
        for i in 1..=n {
            pairs.push(SamplePair {
                kind: SampleKind::Family,
                z: z.clone(),
                x: basis_vector(n, i - 1),
                family_index: Some((alpha, i)),
            });
        }
    }
    if m > 0 {
        if let Ok(generic) = generic_element(frame, seed) {
            let xs = (0..n)
                .map(|i| basis_vector(n, i))
                .chain((0..3).map(|_| random_vector(&mut rng, n)));
            for x in xs {
                pairs.push(SamplePair {
                    kind: SampleKind::Generic,
                    z: generic.z.clone(),
                    x,
                    family_index: None,
                });
            }
        }
    }
    for _ in 0..extra_samples {
        pairs.push(SamplePair {
            kind: SampleKind::Random,
            z: random_vector(&mut rng, m),
            x: random_vector(&mut rng, n),
            family_index: None,
        });
    }
    for (k, pair) in pairs.iter().enumerate() {
        if let Feasibility::Infeasible { certificate } = gordon_feasible(frame, skew, &pair.z, &pair.x) {
            return GordonVerdict::No {
                witness: pair.clone(),
                certificate,
                tested: k + 1,
            };
        }
    }
    GordonVerdict::ProbablyYes { tested: pairs }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition")]
pub enum NrFailure {
    /// `[J_{z_α}, J_{z_β}] ∉ 𝒥` (0-based edge indices).
    NotSubalgebra { alpha: usize, beta: usize },
    /// `J⁻¹ ∘ ad_{J_{z_γ}} ∘ J` is not skew for the metric on `𝔷`.
    NotSkew { gamma: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NrResult {
    pub holds: bool,
    pub failure: Option<NrFailure>,
}

/// Exact natural-reductivity test, using `J` for the given metric.
pub fn nr_test(frame: &MetricLieAlgebra) -> NrResult {
    let m = frame.m();
    let j = &frame.j.ops;
    let mut structure: Vec<Vec<Vec<Rational>>> = vec![vec![Vec::new(); m]; m];
    for a in 0..m {
        for b in a..m {
            match frame.j_coordinates(&j[a].commutator(&j[b])) {
                Some(coords) => {
                    let neg: Vec<Rational> = coords.iter().map(|c| -c).collect();
                    structure[a][b] = coords;
                    structure[b][a] = neg;
                }
                None => {
                    return NrResult {
                        holds: false,
                        failure: Some(NrFailure::NotSubalgebra { alpha: a, beta: b }),
                    }
                }
            }
        }
    }
    let c = &frame.split.c;
    for gamma in 0..m {
        // column β of S holds the J-coordinates of [J_γ, J_β]
        let columns: Vec<Vec<Rational>> = (0..m).map(|b| structure[gamma][b].clone()).collect();
        let s = Matrix::from_columns(m, &columns).expect("m × m");
        let cs = c.mul(&s);
        if !cs.add(&cs.transpose()).is_zero() {
            return NrResult {
                holds: false,
                failure: Some(NrFailure::NotSkew { gamma }),
            };
        }
    }
    NrResult {
        holds: true,
        failure: None,
    }
}

/// `Σ_μ 2⌊|𝒞_μ|/2⌋` over the cliques of a cluster graph.
pub fn max_rank_formula(cliques: &[Vec<usize>]) -> usize {
    cliques.iter().map(|c| 2 * (c.len() / 2)).sum()
}

/// Largest rank of `J⁰_Z` over `tries` random integer `Z`.
pub fn max_rank_sampled(algebra: &GraphLieAlgebra, seed: u64, tries: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..tries)
        .map(|_| {
            let w: Vec<Rational> = (0..algebra.m())
                .map(|_| rational::int(rng.gen_range(-100..=100)))
                .collect();
            algebra.standard_j_at(&w).rank()
        })
        .max()
        .unwrap_or(0)
}

/// Maximal rank of `J_Z`: the clique formula on cluster graphs, random
/// sampling otherwise. The rank of `J_Z = A⁻¹J⁰_{CZ}` does not depend on the
/// metric.
pub fn max_rank(algebra: &GraphLieAlgebra) -> usize {
    let cluster = graph::is_cluster_graph(algebra.graph());
    if cluster.is_cluster {
        max_rank_formula(&cluster.cliques)
    } else {
        max_rank_sampled(algebra, 0x5eed, 24)
    }
}

/// `Z` with `rk J_Z` maximal and pairwise distinct nonzero eigenvalues,
/// certified by `χ_Z(λ) = f_Z(λ)·λ^{n−r}` with `f_Z` squarefree, `f_Z(0) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericElement {
    pub z: Vec<Rational>,
    pub rank: usize,
    pub char_poly: Polynomial,
    pub f: Polynomial,
    /// Coefficients on the block rotation generators (cluster graphs), or the
    /// random `W` used otherwise.
    pub coefficients: Vec<Rational>,
}

pub const GENERIC_SEARCH_BUDGET: usize = 256;

/// Certificate check: `Some(χ, f)` when `J_Z` has rank `r` and `f_Z` is
/// squarefree of degree `r` with nonzero constant term.
pub fn certify_generic(jz: &Matrix, r: usize) -> Option<(Polynomial, Polynomial)> {
    if jz.rank() != r {
        return None;
    }
    let chi = linalg::char_poly(jz).expect("square");
    let f = chi.strip_zero_roots();
    let ok = f.degree() == Some(r)
        && !f.coefficient(0).is_zero()
        && linalg::is_squarefree(&f).expect("nonzero");
    ok.then_some((chi, f))
}

/// Builds a generic element.
///
/// On cluster graphs: the rotation generators `K_{μ,j}` in the planes
/// `(v_{2j−1}, v_{2j})` of each clique, combined with coefficients
/// `(1, 2, 3, …)` first and random ones after; `J⁰_W = Σ x_k K_k` and the
/// candidate is `Z = C⁻¹W`. Elsewhere: random `Z` against the sampled maximal
/// rank.
pub fn generic_element(frame: &MetricLieAlgebra, seed: u64) -> Result<GenericElement> {
    let algebra = &frame.algebra;
    let g = algebra.graph();
    let m = algebra.m();
    let cluster = graph::is_cluster_graph(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    if cluster.is_cluster {
        let r = max_rank_formula(&cluster.cliques);
        // K = E_ab − E_ba = −J⁰ for the edge {a, b}, a < b
        let generators: Vec<usize> = cluster
            .cliques
            .iter()
            .flat_map(|c| {
                c.chunks_exact(2)
                    .map(|p| g.edge_index(p[0], p[1]).expect("clique edge"))
                    .collect::<Vec<_>>()
            })
            .collect();
        for attempt in 0..GENERIC_SEARCH_BUDGET {
            let xs: Vec<Rational> = if attempt == 0 {
                (1..=generators.len()).map(|k| rational::int(k as i64)).collect()
            } else {
                (0..generators.len())
                    .map(|_| rational::frac(rng.gen_range(1..=40), rng.gen_range(1..=7)))
                    .collect()
            };
            let mut w = vec![Rational::zero(); m];
            for (x, &alpha) in xs.iter().zip(&generators) {
                w[alpha] = -x.clone();
            }
            let z = frame.c_inv.mul_vec(&w);
            if let Some((chi, f)) = certify_generic(&frame.j_at(&z), r) {
                return Ok(GenericElement {
                    z,
                    rank: r,
                    char_poly: chi,
                    f,
                    coefficients: xs,
                });
            }
        }
    } else {
        let r = max_rank(algebra);
        for _ in 0..GENERIC_SEARCH_BUDGET {
            let w: Vec<Rational> = (0..m).map(|_| rational::int(rng.gen_range(-30..=30))).collect();
            let z = frame.c_inv.mul_vec(&w);
            if let Some((chi, f)) = certify_generic(&frame.j_at(&z), r) {
                return Ok(GenericElement {
                    z,
                    rank: r,
                    char_poly: chi,
                    f,
                    coefficients: w,
                });
            }
        }
    }
    Err(Error::SearchExhausted {
        budget: GENERIC_SEARCH_BUDGET,
    })
}

/// Outcome of decomposing a Gordon witness as `D_𝔞 = J_Z + Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCheck {
    pub holds: bool,
    /// `Q = D_𝔞 − J_Z` for the witness found.
    pub q: Option<Matrix>,
}

/// Looks for a skew derivation with `D_𝔞 = J_Z + Q`, `J_Z Q = 0`, `Q X = 0`
/// (together with `[D_𝔞, J_Z] = 0`, which `DZ = 0` requires).
///
/// Preconditions: cluster graph, `Z` generic, and `J_Z X, …, J_Z^{r−1} X`
/// linearly independent. The metric is expected to be semi-standard; that is
/// the caller's responsibility.
pub fn solution_structure_check(
    frame: &MetricLieAlgebra,
    skew: &SkewDerivationSpace,
    z: &[Rational],
    x: &[Rational],
) -> Result<StructureCheck> {
    let n = frame.n();
    if !graph::is_cluster_graph(frame.algebra.graph()).is_cluster {
        return Err(Error::NotClusterGraph);
    }
    let jz = frame.j_at(z);
    let r = max_rank(&frame.algebra);
    if certify_generic(&jz, r).is_none() {
        return Err(Error::Precondition("Z is not generic".into()));
    }
    let mut powers = Vec::new();
    let mut v = x.to_vec();
    for _ in 1..r.max(2) {
        v = jz.mul_vec(&v);
        powers.push(v.clone());
    }
    let independent = Matrix::from_rows(powers.clone())
        .map(|p| p.rank() == powers.len())
        .unwrap_or(false);
    if !independent {
        return Err(Error::Precondition(
            "X is outside U''(Z): J_Z^i X are dependent".into(),
        ));
    }
    let s = skew.dim();
    let mut m = Matrix::zeros(2 * n * n + n, s);
    for (k, t) in skew.a_parts.iter().enumerate() {
        let blocks = [t.commutator(&jz), jz.mul(t)];
        for (b, block) in blocks.iter().enumerate() {
            for (p, val) in block.entries().iter().enumerate() {
                m[(b * n * n + p, k)] = val.clone();
            }
        }
        for (i, val) in t.mul_vec(x).into_iter().enumerate() {
            m[(2 * n * n + i, k)] = val;
        }
    }
    let mut rhs = vec![Rational::zero(); n * n];
    rhs.extend(jz.mul(&jz).flatten());
    rhs.extend(jz.mul_vec(x));
    Ok(match linalg::solve(&m, &rhs)? {
        Solution::Feasible { particular, .. } => {
            let mut t = Matrix::zeros(n, n);
            for (k, c) in particular.iter().enumerate() {
                t.add_scaled(c, &skew.a_parts[k]);
            }
            StructureCheck {
                holds: true,
                q: Some(t.sub(&jz)),
            }
        }
        Solution::Infeasible => StructureCheck {
            holds: false,
            q: None,
        },
    })
}
