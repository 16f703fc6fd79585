//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the crate's elimination, polynomial or derivation
//! code; structures are rebuilt from the raw edge list so that agreement with
//! the library means something.

#![allow(dead_code)]

use std::collections::BTreeMap;

use gonil::linalg::rational::{frac, int};
use gonil::{Graph, Matrix, Rational};
use num_traits::{One, Zero};

pub type Dense = Vec<Vec<Rational>>;

pub fn q(p: i64) -> Rational {
    int(p)
}

pub fn qf(p: i64, d: i64) -> Rational {
    frac(p, d)
}

pub fn to_dense(m: &Matrix) -> Dense {
    m.to_rows()
}

pub fn from_dense(rows: &Dense) -> Matrix {
    Matrix::from_rows(rows.clone()).expect("rectangular")
}

pub fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![Rational::zero(); c]; r]
}

pub fn identity(n: usize) -> Dense {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn mat_mul(a: &Dense, b: &Dense) -> Dense {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = zeros(r, c);
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                out[i][j] += &a[i][t] * &b[t][j];
            }
        }
    }
    out
}

pub fn transpose(a: &Dense) -> Dense {
    let c = a.first().map_or(0, Vec::len);
    (0..c).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(a: &Dense, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Sparse Gaussian elimination kept in reduced row echelon form.
#[derive(Default)]
pub struct Rref {
    ncols: usize,
    /// pivot column → row with a `1` there and zeros in every other pivot column
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl Rref {
    pub fn new(ncols: usize) -> Self {
        Rref {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    fn reduce(&self, mut row: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let pivots: Vec<usize> = row.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for p in pivots {
            let Some(f) = row.get(&p).cloned() else { continue };
            for (c, v) in &self.rows[&p] {
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
        row
    }

    pub fn push(&mut self, row: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        let mut map = BTreeMap::new();
        for (c, v) in row {
            assert!(c < self.ncols);
            *map.entry(c).or_insert_with(Rational::zero) += v;
        }
        map.retain(|_, v: &mut Rational| !v.is_zero());
        let row = self.reduce(map);
        let Some((&lead, lv)) = row.iter().next() else {
            return false;
        };
        let inv = lv.recip();
        let row: BTreeMap<usize, Rational> = row.iter().map(|(c, v)| (*c, v * &inv)).collect();
        for other in self.rows.values_mut() {
            if let Some(f) = other.get(&lead).cloned() {
                for (c, v) in &row {
                    let e = other.entry(*c).or_insert_with(Rational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        other.remove(c);
                    }
                }
            }
        }
        self.rows.insert(lead, row);
        true
    }

    pub fn push_dense(&mut self, row: &[Rational]) -> bool {
        self.push(row.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()))
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, row: &[Rational]) -> bool {
        let map = row
            .iter()
            .cloned()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        self.reduce(map).is_empty()
    }

    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[free] = Rational::one();
                for (p, row) in &self.rows {
                    if let Some(x) = row.get(&free) {
                        v[*p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }
}

pub fn rank(a: &Dense) -> usize {
    let mut r = Rref::new(a.first().map_or(0, Vec::len));
    for row in a {
        r.push_dense(row);
    }
    r.rank()
}

pub fn rank_of_vectors(len: usize, vs: &[Vec<Rational>]) -> usize {
    let mut r = Rref::new(len);
    for v in vs {
        r.push_dense(v);
    }
    r.rank()
}

/// Equal spans, by comparing ranks of each side with the union.
pub fn same_span(len: usize, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = rank_of_vectors(len, a);
    let rb = rank_of_vectors(len, b);
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_of_vectors(len, &both) == ra
}

/// Determinant by elimination with row swaps.
pub fn det(a: &Dense) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        let pivot = m[col][col].clone();
        d *= &pivot;
        for r in col + 1..n {
            let f = &m[r][col] / &pivot;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    d
}

/// Determinant by the Leibniz permutation expansion (small sizes only).
pub fn det_permutations(a: &Dense) -> Rational {
    fn go(a: &Dense, row: usize, used: &mut Vec<bool>, sign: i64, acc: Rational, out: &mut Rational) {
        let n = a.len();
        if row == n {
            *out += if sign > 0 { acc } else { -acc };
            return;
        }
        let mut passed = 0;
        for c in 0..n {
            if used[c] {
                continue;
            }
            // parity: number of unused columns to the left of c
            let s = if passed % 2 == 0 { sign } else { -sign };
            passed += 1;
            if a[row][c].is_zero() {
                continue;
            }
            used[c] = true;
            go(a, row + 1, used, s, &acc * &a[row][c], out);
            used[c] = false;
        }
    }
    let mut out = Rational::zero();
    go(a, 0, &mut vec![false; a.len()], 1, Rational::one(), &mut out);
    out
}

/// Polynomial arithmetic on coefficient vectors, lowest degree first.
pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let f = r.last().unwrap() / &lead;
        let shift = r.len() - b.len();
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &f * c;
        }
        r = trim(r);
    }
    r
}

pub fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

pub fn derivative(p: &[Rational]) -> Vec<Rational> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * q(k as i64))
            .collect(),
    )
}

pub fn squarefree(p: &[Rational]) -> bool {
    poly_gcd(p, &derivative(p)).len() == 1
}

/// `det(λI − A)` by evaluating at `λ = 0..=n` and interpolating.
pub fn char_poly(a: &Dense) -> Vec<Rational> {
    let n = a.len();
    let points: Vec<Rational> = (0..=n as i64).map(q).collect();
    let values: Vec<Rational> = points
        .iter()
        .map(|l| {
            let mut m = a.iter().map(|row| row.iter().map(|x| -x.clone()).collect()).collect::<Dense>();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += l;
            }
            det(&m)
        })
        .collect();
    let mut out = vec![Rational::zero(); n + 1];
    for (i, xi) in points.iter().enumerate() {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, xj) in points.iter().enumerate() {
            if i != j {
                basis = poly_mul(&basis, &[-xj.clone(), Rational::one()]);
                denom *= xi - xj;
            }
        }
        for (k, c) in basis.iter().enumerate() {
            out[k] += &values[i] * c / &denom;
        }
    }
    trim(out)
}

/// Structure constants rebuilt from the edge list: for basis indices `a, b`
/// (`e_i` at `i − 1`, `z_α` at `n + α`) the bracket is `sign · basis[k]`.
pub struct Brackets {
    pub n: usize,
    pub m: usize,
    table: BTreeMap<(usize, usize), (usize, i64)>,
}

impl Brackets {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut table = BTreeMap::new();
        for (alpha, &(i, j)) in g.edges().iter().enumerate() {
            let (lo, hi) = (i.min(j) - 1, i.max(j) - 1);
            table.insert((lo, hi), (n + alpha, 1));
            table.insert((hi, lo), (n + alpha, -1));
        }
        Brackets {
            n,
            m: g.edge_count(),
            table,
        }
    }

    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    pub fn basis(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        self.table.get(&(a, b)).copied()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (&(a, b), &(k, s)) in &self.table {
            out[k] += &x[a] * &y[b] * q(s);
        }
        out
    }
}

/// Every `D ∈ End(𝔫)` satisfying the Leibniz rule, as flattened row-major
/// `dim × dim` vectors, optionally intersected with the matrices skew for
/// `gram`.
pub fn derivation_oracle(g: &Graph, skew_for: Option<&Dense>) -> Vec<Vec<Rational>> {
    let br = Brackets::new(g);
    let dim = br.dim();
    let var = |r: usize, c: usize| r * dim + c;
    let mut sys = Rref::new(dim * dim);
    for a in 0..dim {
        for b in a + 1..dim {
            // D[e_a, e_b] − [D e_a, e_b] − [e_a, D e_b] = 0, component r
            let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
            if let Some((k, s)) = br.basis(a, b) {
                for r in 0..dim {
                    rows.entry(r).or_default().push((var(r, k), q(s)));
                }
            }
            for p in 0..dim {
                if let Some((r, s)) = br.basis(p, b) {
                    rows.entry(r).or_default().push((var(p, a), q(-s)));
                }
                if let Some((r, s)) = br.basis(a, p) {
                    rows.entry(r).or_default().push((var(p, b), q(-s)));
                }
            }
            for (_, row) in rows {
                sys.push(row);
            }
        }
    }
    if let Some(gram) = skew_for {
        // (G D + Dᵀ G)[x, y] = Σ_k G[x,k] D[k,y] + D[k,x] G[k,y]
        for x in 0..dim {
            for y in x..dim {
                let mut row = Vec::new();
                for k in 0..dim {
                    if !gram[x][k].is_zero() {
                        row.push((var(k, y), gram[x][k].clone()));
                    }
                    if !gram[k][y].is_zero() {
                        row.push((var(k, x), gram[k][y].clone()));
                    }
                }
                sys.push(row);
            }
        }
    }
    sys.kernel()
}

/// The `𝔞 × 𝔞` block of a flattened `dim × dim` matrix.
pub fn a_block(flat: &[Rational], dim: usize, n: usize) -> Vec<Rational> {
    (0..n)
        .flat_map(|r| (0..n).map(move |c| flat[r * dim + c].clone()))
        .collect()
}

/// `J_Z` for a Gram matrix in the construction basis, from the definition
/// `(J_Z X, Y) = (Z, [X, Y])` on the orthogonal complement of `𝔷`.
///
/// Returns the matrix in the adapted basis `e′_i = e_i − proj_𝔷 e_i` and the
/// Gram matrix of that basis on `𝔞`.
pub fn j_operator_oracle(g: &Graph, gram: &Dense, z: &[Rational]) -> (Dense, Dense) {
    let br = Brackets::new(g);
    let (n, m) = (br.n, br.m);
    let sub = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> Dense {
        rows.map(|r| cols.clone().map(|c| gram[r][c].clone()).collect()).collect()
    };
    let gaa = sub(0..n, 0..n);
    let gaz = sub(0..n, n..n + m);
    let gzz = sub(n..n + m, n..n + m);
    let corr = if m == 0 {
        zeros(n, n)
    } else {
        mat_mul(&mat_mul(&gaz, &inverse(&gzz)), &transpose(&gaz))
    };
    let a: Dense = (0..n)
        .map(|r| (0..n).map(|c| &gaa[r][c] - &corr[r][c]).collect())
        .collect();
    // (Z, z_β) for each β
    let zw = mat_vec(&gzz, z);
    let mut rhs = zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            if let Some((idx, s)) = br.basis(i, k) {
                rhs[k][i] = &zw[idx - n] * q(s);
            }
        }
    }
    (mat_mul(&inverse(&a), &rhs), a)
}

pub fn inverse(a: &Dense) -> Dense {
    let n = a.len();
    let mut r = Rref::new(2 * n);
    for (i, row) in a.iter().enumerate() {
        let mut full = row.clone();
        full.extend(identity(n)[i].iter().cloned());
        r.push_dense(&full);
    }
    assert_eq!(r.rank(), n, "singular");
    (0..n)
        .map(|p| (0..n).map(|c| r.rows[&p].get(&(n + c)).cloned().unwrap_or_default()).collect())
        .collect()
}

/// Connected components by depth-first search.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n + 1];
    let mut out = Vec::new();
    for s in 1..=n {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        let mut comp = Vec::new();
        seen[s] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for w in 1..=n {
                if !seen[w] && g.adjacent(v, w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Disjoint union of cliques: every component is complete.
pub fn is_cluster_brute(g: &Graph) -> bool {
    components(g)
        .iter()
        .all(|c| c.iter().all(|&a| c.iter().all(|&b| a == b || g.adjacent(a, b))))
}

/// `Σ 2⌊|clique|/2⌋` over the components of a cluster graph.
pub fn clique_rank(g: &Graph) -> usize {
    components(g).iter().map(|c| 2 * (c.len() / 2)).sum()
}
