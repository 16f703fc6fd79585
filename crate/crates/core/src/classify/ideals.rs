//! Ideal decomposition of `𝒥⁰` for a cluster graph.
//!
//! Vectors are in central coordinates: `v` stands for `Σ_α v_α J⁰_{z_α}`. With
//! the standard inner product these coordinates are `B`-orthonormal, so
//! `B`-orthogonality is the ordinary dot product.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::linalg::{self, rational, Matrix, Rational};
use crate::nilpotent::GraphLieAlgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdealKind {
    Simple,
    Abelian,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ideal {
    pub kind: IdealKind,
    /// 0-based clique index for simple ideals; `None` for the merged center.
    pub clique: Option<usize>,
    /// Spanning vectors in central coordinates.
    #[serde(with = "rational::serde_str::nested")]
    pub basis: Vec<Vec<Rational>>,
}

impl Ideal {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `J⁰` matrices of the basis vectors.
    pub fn matrices(&self, algebra: &GraphLieAlgebra) -> Vec<Matrix> {
        self.basis.iter().map(|v| algebra.standard_j_at(v)).collect()
    }

    /// Human-readable basis, e.g. `J1 + J6`.
    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|v| combination_label(v)).collect()
    }
}

pub fn combination_label(v: &[Rational]) -> String {
    let mut out = String::new();
    for (alpha, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = *c < Rational::zero();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        let coeff = if magnitude == rational::one() {
            String::new()
        } else {
            format!("{}·", rational::format(&magnitude))
        };
        let sign = match (out.is_empty(), negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        out.push_str(&format!("{sign}{coeff}J{}", alpha + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDecomposition {
    pub m: usize,
    /// Simple ideals in clique order (two per `K₄`), then the abelian center if
    /// there is one.
    pub ideals: Vec<Ideal>,
}

impl IdealDecomposition {
    pub fn simple(&self) -> impl Iterator<Item = &Ideal> {
        self.ideals.iter().filter(|i| i.kind == IdealKind::Simple)
    }

    pub fn center(&self) -> Option<&Ideal> {
        self.ideals.iter().find(|i| i.kind == IdealKind::Abelian)
    }

    pub fn simple_count(&self) -> usize {
        self.simple().count()
    }

    pub fn center_dim(&self) -> usize {
        self.center().map_or(0, Ideal::dim)
    }
}

fn unit(m: usize, entries: &[(usize, i64)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m];
    for &(alpha, c) in entries {
        v[alpha] += rational::int(c);
    }
    v
}

/// Signed pairing of complementary edges of a `K₄` on `a < b < c < d`:
/// `ab ↔ cd` and `bc ↔ ad` with `+1`, `bd ↔ ac` with `−1`. Its `+1`
/// eigenspace is the first `so(3)` ideal.
pub fn k4_pairing(g: &Graph, clique: &[usize]) -> Vec<(usize, usize, i64)> {
    let [a, b, c, d] = [clique[0], clique[1], clique[2], clique[3]];
    let e = |x: usize, y: usize| g.edge_index(x, y).expect("clique edge");
    vec![(e(a, b), e(c, d), 1), (e(b, c), e(a, d), 1), (e(b, d), e(a, c), -1)]
}

pub fn ideal_decomposition(g: &Graph) -> Result<IdealDecomposition> {
    let cluster = graph::is_cluster_graph(g);
    if !cluster.is_cluster {
        return Err(Error::NotClusterGraph);
    }
    let m = g.edge_count();
    let mut ideals = Vec::new();
    let mut center = Vec::new();
    for (mu, clique) in cluster.cliques.iter().enumerate() {
        let edges: Vec<usize> = clique
            .iter()
            .enumerate()
            .flat_map(|(k, &a)| clique[k + 1..].iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.edge_index(a, b).expect("clique edge"))
            .collect();
        match clique.len() {
            2 => center.push(unit(m, &[(edges[0], 1)])),
            4 => {
                for sign in [1, -1] {
                    let basis = k4_pairing(g, clique)
                        .into_iter()
                        .map(|(x, y, s)| unit(m, &[(x, 1), (y, sign * s)]))
                        .collect();
                    ideals.push(Ideal {
                        kind: IdealKind::Simple,
                        clique: Some(mu),
                        basis,
                    });
                }
            }
            _ => ideals.push(Ideal {
                kind: IdealKind::Simple,
                clique: Some(mu),
                basis: edges.iter().map(|&alpha| unit(m, &[(alpha, 1)])).collect(),
            }),
        }
    }
    if !center.is_empty() {
        ideals.push(Ideal {
            kind: IdealKind::Abelian,
            clique: None,
            basis: center,
        });
    }
    Ok(IdealDecomposition { m, ideals })
}

/// Orthogonal projection onto `span(basis)` for the dot product.
pub fn projection(m: usize, basis: &[Vec<Rational>]) -> Matrix {
    if basis.is_empty() {
        return Matrix::zeros(m, m);
    }
    let v = Matrix::from_columns(m, basis).expect("length m");
    let gram = v.transpose().mul(&v);
    v.mul(&gram.inverse().expect("independent basis")).mul(&v.transpose())
}

/// The `B`-form restricted to central coordinates, via the `J⁰` matrices.
pub fn b_gram(algebra: &GraphLieAlgebra, vectors: &[Vec<Rational>]) -> Matrix {
    let mats: Vec<Matrix> = vectors.iter().map(|v| algebra.standard_j_at(v)).collect();
    let k = mats.len();
    let mut out = Matrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            out[(a, b)] = linalg::b_form(&mats[a], &mats[b]).expect("same size");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_ideals() {
        let g = Graph::example();
        let dec = ideal_decomposition(&g).unwrap();
        assert_eq!(dec.simple_count(), 3);
        assert_eq!(dec.center_dim(), 2);
        assert_eq!(dec.ideals[0].labels(), ["J1 + J6", "J2 + J4", "-J3 + J5"]);
        assert_eq!(dec.ideals[1].labels(), ["J1 - J6", "J2 - J4", "J3 + J5"]);
        assert_eq!(dec.ideals[2].labels(), ["J7", "J9", "J8"]);
    }

    #[test]
    fn non_cluster_rejected() {
        assert_eq!(ideal_decomposition(&Graph::path(3)), Err(Error::NotClusterGraph));
    }

    #[test]
    fn projections_sum_to_identity_on_k4() {
        let dec = ideal_decomposition(&Graph::complete(4)).unwrap();
        let total = projection(6, &dec.ideals[0].basis).add(&projection(6, &dec.ideals[1].basis));
        assert_eq!(total, Matrix::identity(6));
    }
}
