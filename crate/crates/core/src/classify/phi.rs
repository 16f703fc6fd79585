//! The space of operators `Φ` on `𝒥⁰` that are `B`-symmetric and satisfy
//! `[K, ΦK] = 0` for all `K`.
//!
//! `Φ` is an `m × m` matrix acting on central coordinates, so `ΦJ_β` means
//! `Σ_γ Φ_{γβ} J_γ`. The quadratic condition is used in polarized form
//! `[J_α, ΦJ_β] + [J_β, ΦJ_α] = 0`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::linalg::{rational, Matrix, Rational, RowEchelon, SparseRow};
use crate::nilpotent::GraphLieAlgebra;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSpace {
    pub m: usize,
    pub basis: Vec<Matrix>,
}

impl PhiSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `Σ_γ Φ_{γβ} ops[γ]`.
fn image(ops: &[Matrix], phi: &Matrix, beta: usize) -> Matrix {
    let n = ops.first().map_or(0, Matrix::rows);
    let mut out = Matrix::zeros(n, n);
    for (gamma, op) in ops.iter().enumerate() {
        let c = &phi[(gamma, beta)];
        if !c.is_zero() {
            out.add_scaled(c, op);
        }
    }
    out
}

/// First pair `(α, β)` violating the polarized condition for the operator
/// family `ops`, or `None`.
pub fn phi_violation(ops: &[Matrix], phi: &Matrix) -> Option<(usize, usize)> {
    let images: Vec<Matrix> = (0..ops.len()).map(|b| image(ops, phi, b)).collect();
    (0..ops.len())
        .flat_map(|a| (a..ops.len()).map(move |b| (a, b)))
        .find(|&(a, b)| {
            !ops[a]
                .commutator(&images[b])
                .add(&ops[b].commutator(&images[a]))
                .is_zero()
        })
}

/// Upper-triangle entries of `[x, y]` for skew `x`, `y`.
fn upper_entries(k: &Matrix) -> Vec<((usize, usize), Rational)> {
    let n = k.rows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !k[(i, j)].is_zero() {
                out.push(((i, j), k[(i, j)].clone()));
            }
        }
    }
    out
}

/// Exact nullspace of the linear `Φ` conditions for the standard family `J⁰`.
pub fn phi_space(g: &Graph) -> Result<PhiSpace> {
    if !graph::is_cluster_graph(g).is_cluster {
        return Err(Error::NotClusterGraph);
    }
    let algebra = GraphLieAlgebra::new(g.clone());
    let ops = algebra.standard_j();
    let m = ops.len();
    let var = |row: usize, col: usize| row * m + col;
    let comm: Vec<Vec<Vec<((usize, usize), Rational)>>> = ops
        .iter()
        .map(|a| ops.iter().map(|c| upper_entries(&a.commutator(c))).collect())
        .collect();
    let mut system = RowEchelon::new(m * m);
    for a in 0..m {
        for b in a + 1..m {
            system.insert(vec![(var(a, b), rational::one()), (var(b, a), rational::int(-1))]);
        }
    }
    for a in 0..m {
        for b in a..m {
            let mut rows: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
            for gamma in 0..m {
                for (first, second) in [(a, b), (b, a)] {
                    for (pos, v) in &comm[first][gamma] {
                        *rows
                            .entry(*pos)
                            .or_default()
                            .entry(var(gamma, second))
                            .or_insert_with(Rational::zero) += v;
                    }
                }
            }
            for (_, row) in rows {
                let row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    system.insert(row);
                }
            }
        }
    }
    let basis = system
        .kernel()
        .into_iter()
        .map(|v| Matrix::from_vec(m, m, v).expect("m² entries"))
        .collect();
    Ok(PhiSpace { m, basis })
}
