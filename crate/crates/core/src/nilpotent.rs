//! The two-step nilpotent Lie algebra of a graph.
//!
//! Coordinates are with respect to the construction basis
//! `e₁ … e_n, z₁ … z_m`: index `i - 1` for `e_i`, index `n + α` for `z_{α+1}`.

use num_traits::Zero;

use crate::error::{dim_mismatch, Result};
use crate::graph::Graph;
use crate::linalg::{self, rational, Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphLieAlgebra {
    graph: Graph,
}

/// A subspace of the algebra, stored as independent column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    /// Keeps a maximal independent subset of `vectors`.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let mut echelon = linalg::RowEchelon::new(ambient);
        let basis = vectors
            .iter()
            .filter(|v| {
                assert_eq!(v.len(), ambient);
                echelon.insert(linalg::echelon::sparse(v))
            })
            .cloned()
            .collect();
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis).expect("consistent lengths")
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Subspace::span(self.ambient, &rows).dim() == self.dim()
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && other.basis.iter().all(|v| self.contains(v))
    }
}

impl GraphLieAlgebra {
    pub fn new(graph: Graph) -> Self {
        GraphLieAlgebra { graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of vertex generators `n`.
    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Number of central generators `m`.
    pub fn m(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn dim(&self) -> usize {
        self.n() + self.m()
    }

    pub fn e(&self, i: usize) -> Vec<Rational> {
        basis_vector(self.dim(), i - 1)
    }

    /// `z_{alpha+1}`.
    pub fn z(&self, alpha: usize) -> Vec<Rational> {
        basis_vector(self.dim(), self.n() + alpha)
    }

    pub fn label(&self, index: usize) -> String {
        if index < self.n() {
            format!("e{}", index + 1)
        } else {
            format!("z{}", index - self.n() + 1)
        }
    }

    /// `[e_i, e_j]` as an `(edge index, sign)` pair, `None` when it vanishes.
    pub fn structure_constant(&self, i: usize, j: usize) -> Option<(usize, i64)> {
        self.graph
            .edge_index(i, j)
            .map(|alpha| (alpha, if i < j { 1 } else { -1 }))
    }

    /// Lie bracket: `[e_i, e_j] = z_α` for `E_α = V_iV_j`, `i < j`.
    pub fn try_bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        let dim = self.dim();
        if x.len() != dim || y.len() != dim {
            return Err(dim_mismatch(dim, format!("{} and {}", x.len(), y.len())));
        }
        let mut out = vec![Rational::zero(); dim];
        for (alpha, &(i, j)) in self.graph.edges().iter().enumerate() {
            let (xi, xj, yi, yj) = (&x[i - 1], &x[j - 1], &y[i - 1], &y[j - 1]);
            out[self.n() + alpha] = xi * yj - xj * yi;
        }
        Ok(out)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.try_bracket(x, y).expect("bracket arguments have algebra dimension")
    }

    /// `𝔷 = [𝔫, 𝔫]`.
    pub fn derived_subalgebra(&self) -> Subspace {
        let dim = self.dim();
        let mut images = Vec::new();
        for a in 0..dim {
            for b in a + 1..dim {
                images.push(self.bracket(&basis_vector(dim, a), &basis_vector(dim, b)));
            }
        }
        Subspace::span(dim, &images)
    }

    /// Kernel of `x ↦ ([x, b_k])_k` over all basis vectors `b_k`.
    pub fn center(&self) -> Subspace {
        let dim = self.dim();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for k in 0..dim {
            let bk = basis_vector(dim, k);
            // column c of ad(b_k) applied to x: [x, b_k] = Σ_c x_c [b_c, b_k]
            let images: Vec<Vec<Rational>> = (0..dim)
                .map(|c| self.bracket(&basis_vector(dim, c), &bk))
                .collect();
            for r in 0..dim {
                rows.push(images.iter().map(|img| img[r].clone()).collect());
            }
        }
        let a = Matrix::from_rows(rows).expect("rectangular");
        Subspace::span(dim, &linalg::nullspace(&a))
    }

    /// Checks `[[x, y], w] = 0` on every basis triple.
    pub fn is_two_step(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|a| {
            (0..dim).all(|b| {
                let xy = self.bracket(&basis_vector(dim, a), &basis_vector(dim, b));
                (0..dim).all(|c| {
                    self.bracket(&xy, &basis_vector(dim, c))
                        .iter()
                        .all(Zero::is_zero)
                })
            })
        })
    }

    /// The standard operators `J⁰_{z_α} = M_ij − M_ji` (`i < j`) on `𝔞`, where
    /// `M_ij e_i = e_j`.
    pub fn standard_j(&self) -> Vec<Matrix> {
        let n = self.n();
        self.graph
            .edges()
            .iter()
            .map(|&(i, j)| {
                let mut m = Matrix::zeros(n, n);
                m[(j - 1, i - 1)] = rational::one();
                m[(i - 1, j - 1)] = rational::int(-1);
                m
            })
            .collect()
    }

    /// `J⁰_W = Σ_α W_α J⁰_{z_α}` for a central coordinate vector `w`.
    pub fn standard_j_at(&self, w: &[Rational]) -> Matrix {
        assert_eq!(w.len(), self.m());
        let n = self.n();
        let mut m = Matrix::zeros(n, n);
        for (alpha, &(i, j)) in self.graph.edges().iter().enumerate() {
            if w[alpha].is_zero() {
                continue;
            }
            m[(j - 1, i - 1)] += &w[alpha];
            m[(i - 1, j - 1)] -= &w[alpha];
        }
        m
    }

    /// Bracket table lines `[e_i, e_j] = z_α`, in edge order.
    pub fn bracket_table(&self) -> Vec<String> {
        self.graph
            .edges()
            .iter()
            .enumerate()
            .map(|(alpha, &(i, j))| format!("[e{i}, e{j}] = z{}", alpha + 1))
            .collect()
    }
}

pub fn basis_vector(dim: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[k] = rational::one();
    v
}
