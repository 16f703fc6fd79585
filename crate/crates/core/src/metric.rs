//! Inner products on a graph algebra and the operators they induce.
//!
//! A metric is always stored as a Gram matrix in the construction basis. The
//! adapted basis `e′_i = e_i − Σ_α c_{iα} z_α` makes `𝔞 = span(e′_i)` the
//! orthogonal complement of `𝔷`; all operator families (`J_Z`, `A`, `C`) are
//! expressed in that basis. Its `z`-vectors coincide with the construction ones,
//! so central coordinates never need translating.
//!
//! With `⟨,⟩` the inner product making the adapted basis orthonormal, the
//! metric reads `(X, Y) = ⟨AX, Y⟩` on `𝔞` and `(Z, W) = ⟨CZ, W⟩` on `𝔷`, and
//! then `J_Z = A⁻¹ J⁰_{CZ}`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{self, rational, Matrix, Rational, SpanCoordinates};
use crate::nilpotent::GraphLieAlgebra;

/// Symmetric positive-definite Gram matrix on the whole algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    gram: Matrix,
}

/// File form of a metric: `{"dim": d, "gram": [["1", "0"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricDoc {
    pub dim: usize,
    #[serde(with = "rational::serde_str::nested")]
    pub gram: Vec<Vec<Rational>>,
}

impl Metric {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !linalg::is_positive_definite(&gram)? {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Metric { gram })
    }

    /// Like [`Metric::new`], also checking the size against `algebra`.
    pub fn for_algebra(algebra: &GraphLieAlgebra, gram: Matrix) -> Result<Self> {
        if gram.rows() != algebra.dim() {
            return Err(dim_mismatch(algebra.dim(), gram.rows()));
        }
        Self::new(gram)
    }

    /// The standard inner product: the construction basis is orthonormal.
    pub fn standard(algebra: &GraphLieAlgebra) -> Self {
        Metric {
            gram: Matrix::identity(algebra.dim()),
        }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        linalg::dot(&self.gram.mul_vec(x), y)
    }

    pub fn to_doc(&self) -> MetricDoc {
        MetricDoc {
            dim: self.dim(),
            gram: self.gram.to_rows(),
        }
    }

    pub fn from_doc(doc: &MetricDoc) -> Result<Self> {
        if doc.gram.len() != doc.dim {
            return Err(dim_mismatch(doc.dim, doc.gram.len()));
        }
        Self::new(Matrix::from_rows(doc.gram.clone())?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: MetricDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Self::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("metric documents serialize")
    }
}

/// Change of basis from the construction basis to an adapted standard basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    /// Columns are the adapted basis vectors in construction coordinates.
    pub change: Matrix,
    /// `n × m`: `e′_i = e_i − Σ_α correction[i][α] z_α`.
    pub correction: Matrix,
}

pub fn adapt(algebra: &GraphLieAlgebra, metric: &Metric) -> AdaptedBasis {
    let (n, m) = (algebra.n(), algebra.m());
    let e_idx: Vec<usize> = (0..n).collect();
    let z_idx: Vec<usize> = (n..n + m).collect();
    let g = metric.gram();
    let correction = if m == 0 {
        Matrix::zeros(n, 0)
    } else {
        let g_ez = g.submatrix(&e_idx, &z_idx);
        let g_zz = g.submatrix(&z_idx, &z_idx);
        g_ez.mul(&g_zz.inverse().expect("z-block of a positive-definite Gram"))
    };
    let mut change = Matrix::identity(n + m);
    for i in 0..n {
        for a in 0..m {
            change[(n + a, i)] = -correction[(i, a)].clone();
        }
    }
    AdaptedBasis { change, correction }
}

/// The family `J_{z_α}` of skew operators on `𝔞`, in adapted coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JPencil {
    /// `dim 𝔞`, kept so that an empty family still knows its size.
    pub n: usize,
    pub ops: Vec<Matrix>,
    /// `true` for `J⁰` (standard inner product), `false` for the given metric.
    pub standard: bool,
}

impl JPencil {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `J_Z = Σ_α Z_α J_{z_α}`.
    pub fn at(&self, z: &[Rational]) -> Matrix {
        assert_eq!(z.len(), self.ops.len());
        let mut out = Matrix::zeros(self.n, self.n);
        for (c, op) in z.iter().zip(&self.ops) {
            out.add_scaled(c, op);
        }
        out
    }
}

/// `A` and `C` with `(X, Y) = ⟨AX, Y⟩`, `(Z, W) = ⟨CZ, W⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ACSplit {
    pub a: Matrix,
    pub c: Matrix,
}

fn adapted_gram(metric: &Metric, basis: &AdaptedBasis) -> Matrix {
    basis.change.transpose().mul(metric.gram()).mul(&basis.change)
}

pub fn ac_split(algebra: &GraphLieAlgebra, metric: &Metric, basis: &AdaptedBasis) -> ACSplit {
    let (n, m) = (algebra.n(), algebra.m());
    let g = adapted_gram(metric, basis);
    let e_idx: Vec<usize> = (0..n).collect();
    let z_idx: Vec<usize> = (n..n + m).collect();
    debug_assert!(g.submatrix(&e_idx, &z_idx).is_zero(), "basis is not adapted");
    ACSplit {
        a: g.submatrix(&e_idx, &e_idx),
        c: g.submatrix(&z_idx, &z_idx),
    }
}

/// Solves `(J_Z X, Y) = (Z, [X, Y])` for each `Z = z_α` directly from the Gram
/// matrix and the bracket of the adapted basis vectors.
pub fn j_pencil(algebra: &GraphLieAlgebra, metric: &Metric, basis: &AdaptedBasis) -> JPencil {
    let (n, m) = (algebra.n(), algebra.m());
    let g = metric.gram();
    let columns: Vec<Vec<Rational>> = (0..n + m).map(|k| basis.change.column(k)).collect();
    let a = ac_split(algebra, metric, basis).a;
    let a_inv = a.inverse().expect("positive-definite block");
    // brackets[x][y] = [e′_x, e′_y]
    let brackets: Vec<Vec<Vec<Rational>>> = (0..n)
        .map(|x| (0..n).map(|y| algebra.bracket(&columns[x], &columns[y])).collect())
        .collect();
    let ops = (0..m)
        .map(|alpha| {
            let gz = g.mul_vec(&columns[n + alpha]);
            let mut f = Matrix::zeros(n, n);
            for x in 0..n {
                for y in 0..n {
                    f[(y, x)] = linalg::dot(&gz, &brackets[x][y]);
                }
            }
            a_inv.mul(&f)
        })
        .collect();
    JPencil {
        n: algebra.n(),
        ops,
        standard: false,
    }
}

/// Result of checking `J_Z = A⁻¹ J⁰_{CZ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JJ0Check {
    pub holds: bool,
    /// Central coordinates of a `Z` violating the identity.
    pub offending: Option<Vec<Rational>>,
}

/// Checks the identity on every basis `z_α` and on `random_samples` random
/// rational combinations.
pub fn verify_jj0(
    algebra: &GraphLieAlgebra,
    metric: &Metric,
    basis: &AdaptedBasis,
    random_samples: usize,
    seed: u64,
) -> JJ0Check {
    let m = algebra.m();
    let split = ac_split(algebra, metric, basis);
    let a_inv = split.a.inverse().expect("positive-definite block");
    let pencil = j_pencil(algebra, metric, basis);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<Vec<Rational>> = (0..m)
        .map(|a| crate::nilpotent::basis_vector(m, a))
        .collect();
    for _ in 0..random_samples {
        samples.push(
            (0..m)
                .map(|_| rational::frac(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
                .collect(),
        );
    }
    for z in samples {
        let cz = split.c.mul_vec(&z);
        if pencil.at(&z) != a_inv.mul(&algebra.standard_j_at(&cz)) {
            return JJ0Check {
                holds: false,
                offending: Some(z),
            };
        }
    }
    JJ0Check {
        holds: true,
        offending: None,
    }
}

/// A graph algebra with a metric and everything derived from the metric that
/// later stages reuse.
#[derive(Debug, Clone)]
pub struct MetricLieAlgebra {
    pub algebra: GraphLieAlgebra,
    pub metric: Metric,
    pub basis: AdaptedBasis,
    pub split: ACSplit,
    pub a_inv: Matrix,
    pub c_inv: Matrix,
    /// `J` for the given metric.
    pub j: JPencil,
    /// `J⁰` for the standard inner product of the adapted basis.
    pub j0: JPencil,
    j_span: SpanCoordinates,
}

impl MetricLieAlgebra {
    pub fn new(algebra: GraphLieAlgebra, metric: Metric) -> Result<Self> {
        if metric.dim() != algebra.dim() {
            return Err(dim_mismatch(algebra.dim(), metric.dim()));
        }
        let basis = adapt(&algebra, &metric);
        let split = ac_split(&algebra, &metric, &basis);
        let a_inv = split.a.inverse()?;
        let c_inv = if algebra.m() == 0 {
            Matrix::zeros(0, 0)
        } else {
            split.c.inverse()?
        };
        let j = j_pencil(&algebra, &metric, &basis);
        let j0 = JPencil {
            n: algebra.n(),
            ops: algebra.standard_j(),
            standard: true,
        };
        let n = algebra.n();
        let flat: Vec<Vec<Rational>> = j.ops.iter().map(Matrix::flatten).collect();
        let j_span = SpanCoordinates::new(n * n, &flat);
        Ok(MetricLieAlgebra {
            algebra,
            metric,
            basis,
            split,
            a_inv,
            c_inv,
            j,
            j0,
            j_span,
        })
    }

    pub fn standard(algebra: GraphLieAlgebra) -> Self {
        let metric = Metric::standard(&algebra);
        Self::new(algebra, metric).expect("standard metric is valid")
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    pub fn m(&self) -> usize {
        self.algebra.m()
    }

    pub fn j_at(&self, z: &[Rational]) -> Matrix {
        self.j.at(z)
    }

    /// Coordinates of `k` in the basis `J_{z_α}`, if `k ∈ 𝒥`.
    pub fn j_coordinates(&self, k: &Matrix) -> Option<Vec<Rational>> {
        self.j_span.coordinates(&k.flatten())
    }

    /// Splits `k` into `J`-coordinates and a residual that vanishes iff `k ∈ 𝒥`.
    pub fn j_decompose(
        &self,
        k: &Matrix,
    ) -> (Vec<Rational>, std::collections::BTreeMap<usize, Rational>) {
        self.j_span.decompose(&k.flatten())
    }

    /// `C⁻¹ z_α` in central coordinates.
    pub fn c_inv_z(&self, alpha: usize) -> Vec<Rational> {
        self.c_inv.column(alpha)
    }

    /// Skewness of `t` with respect to `A`: `A t + tᵀ A = 0`.
    pub fn is_a_skew(&self, t: &Matrix) -> bool {
        let at = self.split.a.mul(t);
        at.add(&at.transpose()).is_zero()
    }

    /// Gram matrix of the metric in the adapted basis.
    pub fn adapted_gram(&self) -> Matrix {
        adapted_gram(&self.metric, &self.basis)
    }

    pub fn is_standard_metric(&self) -> bool {
        let is_identity = |m: &Matrix| *m == Matrix::identity(m.rows());
        is_identity(&self.split.a) && is_identity(&self.split.c)
    }
}
