//! Construction and recognition of semi-standard metrics.
//!
//! A semi-standard metric has a standard basis in which `A = id` and
//! `(Z, W) = B(ΦJ⁰_Z, J⁰_W)` with `Φ` a positive combination of the projections
//! onto the simple ideals of `𝒥⁰` plus a positive operator on its center.
//!
//! Recognition stays in rational arithmetic. Shearing the clique directions
//! into `𝔞₀` replaces `A` by its Schur complement `Ã`, which must be
//! block-diagonal over the cliques. With `G₀ = Λ²Ã` the would-be standard
//! metric on `𝔷`, the candidate is `Φ = G₀⁻¹C`, which must satisfy the
//! polarized `Φ` conditions for `J^Ã_Z = Ã⁻¹J⁰_{G₀Z}`. Positivity then comes for
//! free: `Φ` is `G₀`-self-adjoint and `G₀Φ = C` is positive definite.

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ideals::{ideal_decomposition, k4_pairing, projection, IdealDecomposition};
use super::phi::phi_violation;
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::linalg::{self, rational, Matrix, Rational, Solution};
use crate::metric::{Metric, MetricLieAlgebra};
use crate::nilpotent::GraphLieAlgebra;
use crate::random;

/// Positive weights for a semi-standard metric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiStandardCoefficients {
    /// One per simple ideal, in [`IdealDecomposition`] order.
    #[serde(with = "rational::serde_str::vec")]
    pub simple: Vec<Rational>,
    /// Positive-definite operator on the abelian center, in the coordinates of
    /// its `K₂` edges.
    #[serde(with = "rational::serde_str::nested")]
    pub center: Vec<Vec<Rational>>,
}

impl SemiStandardCoefficients {
    pub fn standard(dec: &IdealDecomposition) -> Self {
        let d0 = dec.center_dim();
        SemiStandardCoefficients {
            simple: vec![Rational::one(); dec.simple_count()],
            center: Matrix::identity(d0).to_rows(),
        }
    }

    /// Simple-ideal weights followed by either one center scalar or the
    /// `d₀(d₀+1)/2` upper-triangle entries of the center operator, row by row.
    pub fn from_flat(dec: &IdealDecomposition, values: &[Rational]) -> Result<Self> {
        let k = dec.simple_count();
        let d0 = dec.center_dim();
        if values.len() < k {
            return Err(Error::InvalidCoefficient(format!(
                "expected {k} simple-ideal weights, got {}",
                values.len()
            )));
        }
        let (simple, rest) = values.split_at(k);
        let center = match (d0, rest.len()) {
            (0, 0) => Vec::new(),
            (d, 1) if d > 0 => Matrix::identity(d).scale(&rest[0]).to_rows(),
            (d, len) if d > 0 && len == d * (d + 1) / 2 => {
                let mut c = Matrix::zeros(d, d);
                let mut it = rest.iter();
                for i in 0..d {
                    for j in i..d {
                        let v = it.next().expect("counted").clone();
                        c[(i, j)] = v.clone();
                        c[(j, i)] = v;
                    }
                }
                c.to_rows()
            }
            _ => {
                return Err(Error::InvalidCoefficient(format!(
                    "{k} simple ideals and a {d0}-dimensional center need {k} values plus {}, got {}",
                    if d0 == 0 {
                        "none".to_string()
                    } else {
                        format!("1 or {}", d0 * (d0 + 1) / 2)
                    },
                    values.len()
                )))
            }
        };
        Ok(SemiStandardCoefficients {
            simple: simple.to_vec(),
            center,
        })
    }

    pub fn random<R: Rng>(dec: &IdealDecomposition, rng: &mut R) -> Self {
        SemiStandardCoefficients {
            simple: (0..dec.simple_count())
                .map(|_| random::positive_rational(rng, 9, 4))
                .collect(),
            center: random::spd(rng, dec.center_dim()).to_rows(),
        }
    }
}

/// `Φ` in central coordinates for the given weights.
pub fn phi_operator(dec: &IdealDecomposition, coeffs: &SemiStandardCoefficients) -> Result<Matrix> {
    let m = dec.m;
    if coeffs.simple.len() != dec.simple_count() || coeffs.center.len() != dec.center_dim() {
        return Err(Error::InvalidCoefficient(format!(
            "expected {} simple weights and a {}x{} center block",
            dec.simple_count(),
            dec.center_dim(),
            dec.center_dim()
        )));
    }
    if let Some(c) = coeffs.simple.iter().find(|c| **c <= Rational::zero()) {
        return Err(Error::InvalidCoefficient(format!(
            "simple-ideal weight {} is not positive",
            rational::format(c)
        )));
    }
    let mut phi = Matrix::zeros(m, m);
    for (ideal, c) in dec.simple().zip(&coeffs.simple) {
        phi.add_scaled(c, &projection(m, &ideal.basis));
    }
    if let Some(center) = dec.center() {
        let block = Matrix::from_rows(coeffs.center.clone())?;
        if !block.is_symmetric() || !linalg::is_positive_definite(&block)? {
            return Err(Error::InvalidCoefficient(
                "center block is not symmetric positive definite".into(),
            ));
        }
        let edges: Vec<usize> = center
            .basis
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("unit vector"))
            .collect();
        phi.set_block(&edges, &edges, &block);
    }
    Ok(phi)
}

/// Gram matrix `diag(I_n, Φ)` in the construction basis.
pub fn construct_semi_standard(g: &Graph, coeffs: &SemiStandardCoefficients) -> Result<Metric> {
    let dec = ideal_decomposition(g)?;
    let phi = phi_operator(&dec, coeffs)?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut gram = Matrix::identity(n + m);
    gram.set_block(&(n..n + m).collect::<Vec<_>>(), &(n..n + m).collect::<Vec<_>>(), &phi);
    Metric::new(gram)
}

/// `x + coeff·√radicand`, exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surd {
    #[serde(with = "rational::serde_str")]
    pub rational: Rational,
    #[serde(with = "rational::serde_str")]
    pub coeff: Rational,
    #[serde(with = "rational::serde_str")]
    pub radicand: Rational,
}

impl Surd {
    pub fn rational(x: Rational) -> Self {
        Surd {
            rational: x,
            coeff: Rational::zero(),
            radicand: Rational::one(),
        }
    }

    /// Folds perfect-square radicands into the rational part.
    pub fn new(rational: Rational, coeff: Rational, radicand: Rational) -> Self {
        match rational::sqrt_exact(&radicand) {
            Some(root) => Surd::rational(rational + coeff * root),
            None if coeff.is_zero() => Surd::rational(rational),
            None => Surd {
                rational,
                coeff,
                radicand,
            },
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeff.is_zero().then_some(&self.rational)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "{}", rational::format(&self.rational));
        }
        let sign = if self.coeff < Rational::zero() { "-" } else { "+" };
        let magnitude = if self.coeff < Rational::zero() {
            -self.coeff.clone()
        } else {
            self.coeff.clone()
        };
        write!(
            f,
            "{} {sign} {}·√{}",
            rational::format(&self.rational),
            rational::format(&magnitude),
            rational::format(&self.radicand)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiStandardCertificate {
    /// Weight of each simple ideal, in decomposition order.
    pub simple: Vec<Surd>,
    /// `Φ` restricted to the `K₂` edges.
    #[serde(with = "rational::serde_str::nested")]
    pub center: Vec<Vec<Rational>>,
    /// `Φ = G₀⁻¹C` in central coordinates.
    #[serde(with = "rational::serde_str::nested")]
    pub phi: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason")]
pub enum SemiStandardFailure {
    NotCluster,
    /// Two cliques are not orthogonal once `𝔞₀` is absorbed (0-based clique
    /// indices, 1-based witnessing vertices).
    CliquesNotOrthogonal {
        first: usize,
        second: usize,
        vertices: (usize, usize),
    },
    /// `[J_α, ΦJ_β] + [J_β, ΦJ_α] ≠ 0` (0-based edge indices).
    PhiCondition { alpha: usize, beta: usize },
    /// A `K₄` block of `Φ` is not of the form `x + y⋆`.
    K4Block { clique: usize },
}

impl fmt::Display for SemiStandardFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiStandardFailure::NotCluster => write!(f, "graph is not a cluster graph"),
            SemiStandardFailure::CliquesNotOrthogonal { first, second, vertices } => write!(
                f,
                "cliques {} and {} are not orthogonal modulo the isolated directions (vertices {} and {})",
                first + 1,
                second + 1,
                vertices.0,
                vertices.1
            ),
            SemiStandardFailure::PhiCondition { alpha, beta } => write!(
                f,
                "[J{0}, ΦJ{1}] + [J{1}, ΦJ{0}] is nonzero",
                alpha + 1,
                beta + 1
            ),
            SemiStandardFailure::K4Block { clique } => {
                write!(f, "the K4 block of clique {} does not split into ideals", clique + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiStandardResult {
    pub holds: bool,
    pub certificate: Option<SemiStandardCertificate>,
    pub failure: Option<SemiStandardFailure>,
}

impl SemiStandardResult {
    fn fail(failure: SemiStandardFailure) -> Self {
        SemiStandardResult {
            holds: false,
            certificate: None,
            failure: Some(failure),
        }
    }
}

/// `G₀`: the Gram matrix of `Λ²Ã` on edges within a clique, zero across.
fn wedge_gram(g: &Graph, a_tilde: &Matrix, clique_of: &[Option<usize>]) -> Matrix {
    let edges = g.edges();
    let m = edges.len();
    let mut out = Matrix::zeros(m, m);
    for (x, &(a, b)) in edges.iter().enumerate() {
        for (y, &(c, d)) in edges.iter().enumerate() {
            if clique_of[a] != clique_of[c] {
                continue;
            }
            let at = |p: usize, q: usize| &a_tilde[(p - 1, q - 1)];
            out[(x, y)] = at(a, c) * at(b, d) - at(a, d) * at(b, c);
        }
    }
    out
}

pub fn is_semi_standard(frame: &MetricLieAlgebra) -> SemiStandardResult {
    let g = frame.algebra.graph();
    let cluster = graph::is_cluster_graph(g);
    if !cluster.is_cluster {
        return SemiStandardResult::fail(SemiStandardFailure::NotCluster);
    }
    let n = frame.n();
    let mut clique_of: Vec<Option<usize>> = vec![None; n + 1];
    for (mu, c) in cluster.cliques.iter().enumerate() {
        for &v in c {
            clique_of[v] = Some(mu);
        }
    }
    let q: Vec<usize> = (1..=n).filter(|&v| clique_of[v].is_some()).map(|v| v - 1).collect();
    let iso: Vec<usize> = cluster.isolated.iter().map(|v| v - 1).collect();
    let a = &frame.split.a;
    let mut schur = a.submatrix(&q, &q);
    if !iso.is_empty() {
        let a_q0 = a.submatrix(&q, &iso);
        let a_00_inv = a.submatrix(&iso, &iso).inverse().expect("positive definite");
        schur = schur.sub(&a_q0.mul(&a_00_inv).mul(&a_q0.transpose()));
    }
    let mut a_tilde = Matrix::identity(n);
    a_tilde.set_block(&q, &q, &schur);
    for &x in &q {
        for &y in &q {
            let (cx, cy) = (clique_of[x + 1], clique_of[y + 1]);
            if cx != cy && !a_tilde[(x, y)].is_zero() {
                let (first, second) = (cx.unwrap().min(cy.unwrap()), cx.unwrap().max(cy.unwrap()));
                return SemiStandardResult::fail(SemiStandardFailure::CliquesNotOrthogonal {
                    first,
                    second,
                    vertices: (x + 1, y + 1),
                });
            }
        }
    }
    let m = frame.m();
    let g0 = wedge_gram(g, &a_tilde, &clique_of);
    let phi = g0.inverse().expect("Λ² of a positive form").mul(&frame.split.c);
    let a_tilde_inv = a_tilde.inverse().expect("positive definite");
    let algebra: &GraphLieAlgebra = &frame.algebra;
    let ops: Vec<Matrix> = (0..m)
        .map(|alpha| a_tilde_inv.mul(&algebra.standard_j_at(&g0.column(alpha))))
        .collect();
    if let Some((alpha, beta)) = phi_violation(&ops, &phi) {
        return SemiStandardResult::fail(SemiStandardFailure::PhiCondition { alpha, beta });
    }
    let dec = ideal_decomposition(g).expect("cluster graph");
    let mut simple = Vec::new();
    for (mu, clique) in cluster.cliques.iter().enumerate() {
        match clique.len() {
            2 => {}
            4 => match k4_weights(g, clique, &a_tilde, &g0, &phi) {
                Some((plus, minus)) => simple.extend([plus, minus]),
                None => return SemiStandardResult::fail(SemiStandardFailure::K4Block { clique: mu }),
            },
            _ => {
                let alpha = g.edge_index(clique[0], clique[1]).expect("clique edge");
                simple.push(Surd::rational(phi[(alpha, alpha)].clone()));
            }
        }
    }
    let center_edges: Vec<usize> = dec
        .center()
        .map(|c| {
            c.basis
                .iter()
                .map(|v| v.iter().position(|x| !x.is_zero()).expect("unit vector"))
                .collect()
        })
        .unwrap_or_default();
    SemiStandardResult {
        holds: true,
        certificate: Some(SemiStandardCertificate {
            simple,
            center: phi.submatrix(&center_edges, &center_edges).to_rows(),
            phi: phi.to_rows(),
        }),
        failure: None,
    }
}

/// Weights on the two ideals of a `K₄` block: writing `Φ = x + yH` with
/// `H = W⁻¹G₀` and `W` the wedge pairing, `H = ⋆/√det Ã`, so the weights are
/// `x ± (y/d)√d` with `d = det Ã` on the clique.
fn k4_weights(
    g: &Graph,
    clique: &[usize],
    a_tilde: &Matrix,
    g0: &Matrix,
    phi: &Matrix,
) -> Option<(Surd, Surd)> {
    let pairing = k4_pairing(g, clique);
    let edges: Vec<usize> = pairing.iter().flat_map(|&(x, y, _)| [x, y]).collect();
    let mut w = Matrix::zeros(6, 6);
    for (k, &(_, _, s)) in pairing.iter().enumerate() {
        w[(2 * k, 2 * k + 1)] = rational::int(s);
        w[(2 * k + 1, 2 * k)] = rational::int(s);
    }
    let h = w.inverse().ok()?.mul(&g0.submatrix(&edges, &edges));
    let block = phi.submatrix(&edges, &edges);
    let id = Matrix::identity(6);
    let mut system = Matrix::zeros(36, 2);
    for p in 0..36 {
        system[(p, 0)] = id.entries()[p].clone();
        system[(p, 1)] = h.entries()[p].clone();
    }
    let (x, y) = match linalg::solve(&system, block.entries()).ok()? {
        Solution::Feasible { particular, .. } => (particular[0].clone(), particular[1].clone()),
        Solution::Infeasible => return None,
    };
    let vertices: Vec<usize> = clique.iter().map(|v| v - 1).collect();
    let d = a_tilde.submatrix(&vertices, &vertices).determinant().ok()?;
    let c = &y / &d;
    Some((
        Surd::new(x.clone(), c.clone(), d.clone()),
        Surd::new(x, -c, d),
    ))
}
