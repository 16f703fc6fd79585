//! Incremental sparse row reduction over the rationals.
//!
//! Rows are kept as sorted `(column, value)` lists. Each inserted row is reduced
//! against the current pivots before it is stored, so large, mostly redundant
//! constraint systems never materialise as dense matrices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;

pub type SparseRow = Vec<(usize, Rational)>;

pub fn sparse(dense: &[Rational]) -> SparseRow {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (j, v.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Feasible {
        particular: Vec<Rational>,
        kernel: Vec<Vec<Rational>>,
    },
    Infeasible,
}

impl Solution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Solution::Feasible { .. })
    }
}

/// Semi-echelon form: every stored row has a leading `1` in a column no other
/// row leads with. Rows are not back-substituted until [`RowEchelon::reduced`].
#[derive(Debug, Clone)]
pub struct RowEchelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Every column is a pivot, so only the zero vector is in the kernel.
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Reduce `row` against the stored pivots; the remainder is zero iff `row`
    /// lies in the row space.
    pub fn reduce(&self, row: SparseRow) -> BTreeMap<usize, Rational> {
        let mut work: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in row {
            assert!(c < self.ncols, "column {c} out of range");
            if v.is_zero() {
                continue;
            }
            let slot = work.entry(c).or_insert_with(Rational::zero);
            *slot += v;
            if slot.is_zero() {
                work.remove(&c);
            }
        }
        let mut cursor = 0;
        while let Some((&col, _)) = work.range(cursor..).next() {
            cursor = col + 1;
            let Some(r) = self.pivot_row[col] else {
                continue;
            };
            let factor = work.remove(&col).expect("present");
            for (c, v) in self.rows[r].iter().skip(1) {
                let slot = work.entry(*c).or_insert_with(Rational::zero);
                *slot -= &factor * v;
                if slot.is_zero() {
                    work.remove(c);
                }
            }
        }
        work
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Insert a row; returns `true` when it was independent of the stored rows.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let work = self.reduce(row);
        let Some((&lead, lead_val)) = work.iter().next() else {
            return false;
        };
        let inv = lead_val.recip();
        let stored: SparseRow = work
            .into_iter()
            .map(|(c, v)| if c == lead { (c, Rational::one()) } else { (c, v * &inv) })
            .collect();
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(stored);
        true
    }

    /// Fully reduced rows, sorted by pivot column.
    pub fn reduced(&self) -> Vec<SparseRow> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut rows: Vec<BTreeMap<usize, Rational>> = order
            .iter()
            .map(|&r| self.rows[r].iter().cloned().collect())
            .collect();
        let leads: Vec<usize> = order.iter().map(|&r| self.rows[r][0].0).collect();
        for i in (0..rows.len()).rev() {
            let col = leads[i];
            let pivot: Vec<(usize, Rational)> =
                rows[i].iter().map(|(c, v)| (*c, v.clone())).collect();
            for row in rows.iter_mut().take(i) {
                let Some(factor) = row.remove(&col) else {
                    continue;
                };
                for (c, v) in pivot.iter().skip(1) {
                    let slot = row.entry(*c).or_insert_with(Rational::zero);
                    *slot -= &factor * v;
                    if slot.is_zero() {
                        row.remove(c);
                    }
                }
            }
        }
        rows.into_iter().map(|r| r.into_iter().collect()).collect()
    }

    /// Kernel basis of the stored rows, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.kernel_over(self.ncols)
    }

    fn kernel_over(&self, nvars: usize) -> Vec<Vec<Rational>> {
        let reduced = self.reduced();
        let mut free_coeffs: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nvars];
        let mut is_pivot = vec![false; nvars];
        for row in &reduced {
            let lead = row[0].0;
            if lead >= nvars {
                continue;
            }
            is_pivot[lead] = true;
            for (c, v) in row.iter().skip(1) {
                if *c < nvars {
                    free_coeffs[*c].push((lead, v.clone()));
                }
            }
        }
        (0..nvars)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); nvars];
                v[f] = Rational::one();
                for (lead, coeff) in &free_coeffs[f] {
                    v[*lead] = -coeff.clone();
                }
                v
            })
            .collect()
    }

    /// Interpret the last stored column (index `nvars`) as the right-hand side.
    pub fn solution(&self, nvars: usize) -> Solution {
        assert_eq!(self.ncols, nvars + 1, "augmented system expected");
        if self.pivot_row[nvars].is_some() {
            return Solution::Infeasible;
        }
        let reduced = self.reduced();
        let mut particular = vec![Rational::zero(); nvars];
        for row in &reduced {
            if let Some((c, v)) = row.last() {
                if *c == nvars {
                    particular[row[0].0] = v.clone();
                }
            }
        }
        Solution::Feasible {
            particular,
            kernel: self.kernel_over(nvars),
        }
    }
}

/// Coordinates with respect to a fixed list of vectors.
///
/// `decompose` splits `v` into coefficients on the basis plus a residual; the
/// residual is zero exactly when `v` is in the span, and both parts are linear
/// in `v`.
#[derive(Debug, Clone)]
pub struct SpanCoordinates {
    dim: usize,
    // Each stored row: sparse vector in `dim` coords followed by its expression
    // in the original basis, tracked in columns `dim..dim + count`.
    echelon: RowEchelon,
    count: usize,
}

impl SpanCoordinates {
    /// Panics if `basis` is linearly dependent.
    pub fn new(dim: usize, basis: &[Vec<Rational>]) -> Self {
        let count = basis.len();
        let mut echelon = RowEchelon::new(dim + count);
        for (k, v) in basis.iter().enumerate() {
            assert_eq!(v.len(), dim);
            let mut row = sparse(v);
            row.push((dim + k, -Rational::one()));
            let independent = echelon.insert(row);
            assert!(independent, "spanning vectors must be independent");
        }
        for (k, row) in echelon.rows.iter().enumerate() {
            assert!(row[0].0 < dim, "basis row {k} vanished");
        }
        SpanCoordinates {
            dim,
            echelon,
            count,
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// `(coefficients, residual)` with `v = Σ c_k b_k + residual`.
    pub fn decompose(&self, v: &[Rational]) -> (Vec<Rational>, BTreeMap<usize, Rational>) {
        assert_eq!(v.len(), self.dim);
        let work = self.echelon.reduce(sparse(v));
        let mut coeffs = vec![Rational::zero(); self.count];
        let mut residual = BTreeMap::new();
        for (c, val) in work {
            if c < self.dim {
                residual.insert(c, val);
            } else {
                // Subtracting Σ c_k [b_k | -e_k] from [v | 0] leaves [res | c].
                coeffs[c - self.dim] = val;
            }
        }
        (coeffs, residual)
    }

    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (c, r) = self.decompose(v);
        r.is_empty().then_some(c)
    }
}
