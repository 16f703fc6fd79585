//! Seeded random graphs, rationals and Gram matrices.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::linalg::{rational, Matrix, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn rational_in<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    rational::frac(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

/// Strictly positive rational.
pub fn positive_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    rational::frac(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, max_num: i64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = rational_in(rng, max_num, 3);
        }
    }
    m
}

/// `L D Lᵀ` with `L` unit lower triangular over small integers and `D` a
/// positive diagonal. Every SPD matrix has this shape; keeping the factors
/// small keeps inverses and Schur complements from blowing up.
pub fn spd<R: Rng>(rng: &mut R, dim: usize) -> Matrix {
    let mut l = Matrix::identity(dim);
    let mut d = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..i {
            if rng.gen_bool(0.4) {
                l[(i, j)] = rational::int(rng.gen_range(-2..=2));
            }
        }
        d[(i, i)] = positive_rational(rng, 4, 2);
    }
    l.mul(&d).mul(&l.transpose())
}

/// Invertible matrix: unit lower times unit upper triangular, randomly scaled.
pub fn invertible<R: Rng>(rng: &mut R, dim: usize) -> Matrix {
    let mut l = Matrix::identity(dim);
    let mut u = Matrix::identity(dim);
    for i in 0..dim {
        for j in 0..i {
            l[(i, j)] = rational_in(rng, 2, 2);
            u[(j, i)] = rational_in(rng, 2, 2);
        }
        u[(i, i)] = positive_rational(rng, 3, 2);
    }
    l.mul(&u)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges.shuffle(rng);
    Graph::new(n, &edges).expect("valid by construction")
}

/// Disjoint cliques of random sizes on a random vertex labelling, with
/// isolated vertices mixed in.
pub fn cluster_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    let mut edges = Vec::new();
    let mut rest = &labels[..];
    while !rest.is_empty() {
        let size = rng.gen_range(1..=rest.len().min(6));
        let (clique, tail) = rest.split_at(size);
        for a in 0..clique.len() {
            for b in a + 1..clique.len() {
                let (i, j) = (clique[a].min(clique[b]), clique[a].max(clique[b]));
                edges.push((i, j));
            }
        }
        rest = tail;
    }
    edges.shuffle(rng);
    Graph::new(n, &edges).expect("valid by construction")
}
