//! Derivations of a graph algebra, and the skew-symmetric ones for a metric.
//!
//! Everything is expressed in the adapted basis of a [`MetricLieAlgebra`]. That
//! basis is itself a standard basis, so the structure constants (and therefore
//! the derivation algebra as a set of matrices) are the same as in the
//! construction basis.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::graph::{self, ClusterDecomposition, Graph};
use crate::linalg::{self, rational, Matrix, Rational, RowEchelon, SparseRow};
use crate::metric::MetricLieAlgebra;
use crate::nilpotent::{basis_vector, GraphLieAlgebra, Subspace};

/// A basis of `Der(𝔫)`.
#[derive(Debug, Clone)]
pub struct DerivationSpace {
    /// Full `dim × dim` derivations: first the lifts of `a_parts`, then the
    /// maps `e_i ↦ z_α`.
    pub full: Vec<Matrix>,
    /// Admissible `𝔞`-parts `T`.
    pub a_parts: Vec<Matrix>,
    /// The `𝔷`-block induced by each `T`.
    pub z_parts: Vec<Matrix>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.full.len()
    }
}

/// A basis of `Der(𝔫) ∩ so(𝔫)` for the metric at hand.
#[derive(Debug, Clone)]
pub struct SkewDerivationSpace {
    pub full: Vec<Matrix>,
    pub a_parts: Vec<Matrix>,
    pub z_parts: Vec<Matrix>,
}

impl SkewDerivationSpace {
    pub fn dim(&self) -> usize {
        self.full.len()
    }
}

fn block_diag(t: &Matrix, s: &Matrix) -> Matrix {
    let (n, m) = (t.rows(), s.rows());
    let mut d = Matrix::zeros(n + m, n + m);
    d.set_block(&(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>(), t);
    d.set_block(&(n..n + m).collect::<Vec<_>>(), &(n..n + m).collect::<Vec<_>>(), s);
    d
}

/// Upper-triangle entries of `J⁰_{z_β} E_{rc} + E_{cr} J⁰_{z_β}` as
/// `((x, y), value)` with `x < y`; the matrix is skew, so these determine it.
fn unit_contributions(edge: (usize, usize), r: usize, c: usize) -> Vec<((usize, usize), i64)> {
    // J⁰ = E_qp − E_pq for the edge {p, q}, p < q (0-based)
    let (p, q) = edge;
    let mut raw = Vec::with_capacity(4);
    // J⁰·E_rc: row r of E_rc is e_c, so column r of J⁰ lands in column c.
    if r == p {
        raw.push(((q, c), 1));
    }
    if r == q {
        raw.push(((p, c), -1));
    }
    // E_cr·J⁰: row c receives row r of J⁰.
    if r == q {
        raw.push(((c, p), 1));
    }
    if r == p {
        raw.push(((c, q), -1));
    }
    raw.into_iter().filter(|((x, y), _)| x < y).collect()
}

/// `Der(𝔫)` from `J⁰_Z T + Tᵀ J⁰_Z ∈ 𝒥⁰` for every `Z`: the admissible
/// `𝔞`-parts `T`, each lifted with its unique `𝔷`-part, plus `Hom(𝔞, 𝔷)`.
pub fn derivation_space(frame: &MetricLieAlgebra) -> DerivationSpace {
    let g = frame.algebra.graph();
    let (n, m) = (frame.n(), frame.m());
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(i, j)| (i - 1, j - 1)).collect();
    let mut rows: BTreeMap<(usize, usize, usize), SparseRow> = BTreeMap::new();
    for (beta, &edge) in edges.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                for ((x, y), v) in unit_contributions(edge, r, c) {
                    if g.adjacent(x + 1, y + 1) {
                        continue;
                    }
                    rows.entry((beta, x, y))
                        .or_default()
                        .push((r * n + c, rational::int(v)));
                }
            }
        }
    }
    let mut system = RowEchelon::new(n * n);
    for (_, mut row) in rows {
        row.sort_by_key(|(col, _)| *col);
        let merged = merge_sorted(row);
        system.insert(merged);
    }
    let a_parts: Vec<Matrix> = system
        .kernel()
        .into_iter()
        .map(|v| Matrix::from_vec(n, n, v).expect("n² entries"))
        .collect();
    let z_parts: Vec<Matrix> = a_parts.iter().map(|t| induced_z_part(&frame.algebra, t)).collect();
    let mut full: Vec<Matrix> = a_parts
        .iter()
        .zip(&z_parts)
        .map(|(t, s)| block_diag(t, s))
        .collect();
    for i in 0..n {
        for alpha in 0..m {
            full.push(Matrix::unit(n + m, n + alpha, i));
        }
    }
    DerivationSpace {
        full,
        a_parts,
        z_parts,
    }
}

fn merge_sorted(row: SparseRow) -> SparseRow {
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// The `𝔷`-block `S` with `J⁰_{Sᵀ z_β} = J⁰_β T + Tᵀ J⁰_β`, i.e. `S_{βγ}` is the
/// `J⁰_γ`-coefficient of that sum.
fn induced_z_part(algebra: &GraphLieAlgebra, t: &Matrix) -> Matrix {
    let j0 = algebra.standard_j();
    let edges = algebra.graph().edges();
    let m = edges.len();
    let mut s = Matrix::zeros(m, m);
    for (beta, jb) in j0.iter().enumerate() {
        // Tᵀ J⁰ = −(J⁰ T)ᵀ since J⁰ is skew
        let jt = jb.mul(t);
        let sum = jt.sub(&jt.transpose());
        for (gamma, &(i, j)) in edges.iter().enumerate() {
            s[(beta, gamma)] = sum[(j - 1, i - 1)].clone();
        }
    }
    s
}

/// `Der(𝔫) ∩ so(𝔫)`: metric-skew `D` preserving `𝔞` and `𝔷` with
/// `J_{DZ} = [D_𝔞, J_Z]` for all `Z`.
///
/// `D_𝔞` ranges over `A⁻¹K` with `K` skew. Multiplying by `A` turns the
/// condition on `[A⁻¹K, J_β]` into one on the skew matrix
/// `X_β = K J_β − (K J_β)ᵀ`, which must lie in `span J⁰`. Its `J⁰`
/// coordinates `w_β` are read off the edge entries, `D z_β = C⁻¹ w_β`, and
/// `C`-skewness of the `𝔷`-block becomes `W + Wᵀ = 0`.
pub fn skew_derivation_space(frame: &MetricLieAlgebra) -> SkewDerivationSpace {
    let (n, m) = (frame.n(), frame.m());
    let g = frame.algebra.graph();
    let edge_at: BTreeMap<(usize, usize), usize> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(alpha, &(i, j))| ((i - 1, j - 1), alpha))
        .collect();
    let mut units = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            units.push((a, b));
        }
    }
    let count = units.len();
    let mut system = RowEchelon::new(count);
    // w_blocks[k] is W for the k-th unit
    let mut w_blocks: Vec<Matrix> = Vec::with_capacity(count);
    let mut residual_rows: BTreeMap<(usize, usize, usize), SparseRow> = BTreeMap::new();
    for (k, &(a, b)) in units.iter().enumerate() {
        let mut w = Matrix::zeros(m, m);
        for (beta, jb) in frame.j.ops.iter().enumerate() {
            // K = e_a e_bᵀ − e_b e_aᵀ, so K J has row a = J[b,:] and row b = −J[a,:]
            let mut kj = Matrix::zeros(n, n);
            for c in 0..n {
                kj[(a, c)] = jb[(b, c)].clone();
                kj[(b, c)] = -jb[(a, c)].clone();
            }
            for p in 0..n {
                for q in p + 1..n {
                    // X[q,p] is the J⁰ coordinate of edge (p,q)
                    let x = &kj[(q, p)] - &kj[(p, q)];
                    if x.is_zero() {
                        continue;
                    }
                    match edge_at.get(&(p, q)) {
                        Some(&alpha) => w[(alpha, beta)] = x,
                        None => residual_rows.entry((beta, p, q)).or_default().push((k, x)),
                    }
                }
            }
        }
        w_blocks.push(w);
    }
    for (_, row) in residual_rows {
        if system.is_full() {
            break;
        }
        system.insert(row);
    }
    for x in 0..m {
        for y in x..m {
            if system.is_full() {
                break;
            }
            let row: SparseRow = w_blocks
                .iter()
                .enumerate()
                .map(|(k, w)| (k, &w[(x, y)] + &w[(y, x)]))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            system.insert(row);
        }
    }
    let mut full = Vec::new();
    let mut a_parts = Vec::new();
    let mut z_parts = Vec::new();
    for coeffs in system.kernel() {
        let mut k = Matrix::zeros(n, n);
        let mut w = Matrix::zeros(m, m);
        for (idx, c) in coeffs.iter().enumerate() {
            let (a, b) = units[idx];
            k[(a, b)] += c;
            k[(b, a)] -= c;
            w.add_scaled(c, &w_blocks[idx]);
        }
        let t = frame.a_inv.mul(&k);
        let s = frame.c_inv.mul(&w);
        full.push(block_diag(&t, &s));
        a_parts.push(t);
        z_parts.push(s);
    }
    SkewDerivationSpace {
        full,
        a_parts,
        z_parts,
    }
}

/// Leibniz rule `D[x, y] = [Dx, y] + [x, Dy]` on all basis pairs, with `D` in
/// the coordinates of any standard basis.
pub fn is_derivation(algebra: &GraphLieAlgebra, d: &Matrix) -> bool {
    let dim = algebra.dim();
    let basis: Vec<Vec<Rational>> = (0..dim).map(|k| basis_vector(dim, k)).collect();
    let images: Vec<Vec<Rational>> = (0..dim).map(|k| d.column(k)).collect();
    (0..dim).all(|a| {
        (a + 1..dim).all(|b| {
            let lhs = d.mul_vec(&algebra.bracket(&basis[a], &basis[b]));
            let r1 = algebra.bracket(&images[a], &basis[b]);
            let r2 = algebra.bracket(&basis[a], &images[b]);
            lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (x, y))| *l == x + y)
        })
    })
}

/// `Gram·D + Dᵀ·Gram = 0`.
pub fn is_metric_skew(gram: &Matrix, d: &Matrix) -> bool {
    let gd = gram.mul(d);
    gd.add(&gd.transpose()).is_zero()
}

/// How a pair `i ⪯ j` is turned into a matrix unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// `M_ij e_i = e_j`: the unit with its `1` in row `j`, column `i`.
    SourceToTarget,
    /// `e_j ↦ e_i`: the unit with its `1` in row `i`, column `j`.
    TargetToSource,
}

/// The pairs `i ⪯ j` spanning the `𝔞`-parts of derivations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmSpan {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl DmSpan {
    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn matrices(&self, orientation: Orientation) -> Vec<Matrix> {
        self.pairs
            .iter()
            .map(|&(i, j)| match orientation {
                Orientation::SourceToTarget => Matrix::unit(self.n, j - 1, i - 1),
                Orientation::TargetToSource => Matrix::unit(self.n, i - 1, j - 1),
            })
            .collect()
    }
}

pub fn dm_span(g: &Graph) -> DmSpan {
    let table = graph::preceq_table(g);
    let n = g.vertex_count();
    let pairs = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| table[i - 1][j - 1])
        .collect();
    DmSpan { n, pairs }
}

fn matrix_span(n: usize, mats: &[Matrix]) -> Subspace {
    let flat: Vec<Vec<Rational>> = mats.iter().map(Matrix::flatten).collect();
    Subspace::span(n * n, &flat)
}

/// Orientations under which the `⪯`-span equals the computed `𝔞`-parts.
pub fn matching_orientations(space: &DerivationSpace, dm: &DmSpan) -> Vec<Orientation> {
    let computed = matrix_span(dm.n, &space.a_parts);
    [Orientation::SourceToTarget, Orientation::TargetToSource]
        .into_iter()
        .filter(|&o| computed.same_as(&matrix_span(dm.n, &dm.matrices(o))))
        .collect()
}

/// Comparison of the computed `𝔞`-parts with `⊕_μ End(𝔞_μ)` over the classes
/// `𝒞₀, 𝒞₁, …` of a cluster graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockClaim {
    pub block_dim: usize,
    pub actual_dim: usize,
    pub holds: bool,
    /// Matrix units `(row, col)` (1-based vertices, `e_col ↦ e_row`) present in
    /// the derivation algebra but outside every diagonal block.
    pub extra_units: Vec<(usize, usize)>,
}

pub fn block_claim(space: &DerivationSpace, cluster: &ClusterDecomposition, n: usize) -> BlockClaim {
    let mut class_of = vec![usize::MAX; n + 1];
    for &v in &cluster.isolated {
        class_of[v] = 0;
    }
    for (k, c) in cluster.cliques.iter().enumerate() {
        for &v in c {
            class_of[v] = k + 1;
        }
    }
    let blocks: Vec<Matrix> = (1..=n)
        .flat_map(|r| (1..=n).map(move |c| (r, c)))
        .filter(|&(r, c)| class_of[r] == class_of[c])
        .map(|(r, c)| Matrix::unit(n, r - 1, c - 1))
        .collect();
    let computed = matrix_span(n, &space.a_parts);
    let claimed = matrix_span(n, &blocks);
    let extra_units = (1..=n)
        .flat_map(|r| (1..=n).map(move |c| (r, c)))
        .filter(|&(r, c)| class_of[r] != class_of[c])
        .filter(|&(r, c)| computed.contains(&Matrix::unit(n, r - 1, c - 1).flatten()))
        .collect();
    BlockClaim {
        block_dim: claimed.dim(),
        actual_dim: computed.dim(),
        holds: computed.same_as(&claimed),
        extra_units,
    }
}

/// Commutator closure of a list of matrices, checked pairwise.
pub fn is_closed_under_commutator(n: usize, mats: &[Matrix]) -> bool {
    let span = matrix_span(n, mats);
    mats.iter().enumerate().all(|(a, x)| {
        mats[a + 1..]
            .iter()
            .all(|y| span.contains(&x.commutator(y).flatten()))
    })
}

/// Dimension of the intersection of a derivation space with the metric-skew
/// matrices, by solving for coefficients `c` with `Σ c_k D_k` skew.
pub fn skew_intersection(space: &DerivationSpace, gram: &Matrix) -> Vec<Matrix> {
    let dim = gram.rows();
    let skews: Vec<Matrix> = space
        .full
        .iter()
        .map(|d| {
            let gd = gram.mul(d);
            gd.add(&gd.transpose())
        })
        .collect();
    let mut system = RowEchelon::new(space.full.len());
    for x in 0..dim {
        for y in x..dim {
            let row: SparseRow = skews
                .iter()
                .enumerate()
                .filter(|(_, q)| !q[(x, y)].is_zero())
                .map(|(k, q)| (k, q[(x, y)].clone()))
                .collect();
            system.insert(row);
        }
    }
    system
        .kernel()
        .into_iter()
        .map(|coeffs| {
            let mut d = Matrix::zeros(dim, dim);
            for (k, c) in coeffs.iter().enumerate() {
                d.add_scaled(c, &space.full[k]);
            }
            d
        })
        .collect()
}

/// Span equality of two matrix lists of the same size.
pub fn same_span(size: usize, a: &[Matrix], b: &[Matrix]) -> bool {
    let flat = |ms: &[Matrix]| -> Vec<Vec<Rational>> { ms.iter().map(Matrix::flatten).collect() };
    Subspace::span(size * size, &flat(a)).same_as(&Subspace::span(size * size, &flat(b)))
}

pub fn span_dim(size: usize, mats: &[Matrix]) -> usize {
    linalg::rank(
        &Matrix::from_rows(mats.iter().map(Matrix::flatten).collect())
            .unwrap_or_else(|_| Matrix::zeros(0, size * size)),
    )
}
