//! Exact sparse linear algebra over the rationals.
//!
//! Everything that decides a Betti number, a Tor dimension or a homotopy rank
//! bottoms out here, so nothing in this module ever touches floating point.
//! Elimination picks pivots Markowitz-style (short rows first, then the
//! sparsest column in that row) to keep fill-in down; any pivot order gives
//! the same exact answer.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Sparse vector keyed by coordinate; never stores zeros.
pub type SparseVector = BTreeMap<usize, Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Adds `factor * src` into `dst`, dropping entries that cancel.
pub fn axpy(dst: &mut SparseVector, factor: &Rational, src: &SparseVector) {
    for (&k, v) in src {
        let term = factor * v;
        match dst.get_mut(&k) {
            Some(cur) => {
                *cur += term;
                if cur.is_zero() {
                    dst.remove(&k);
                }
            }
            None => {
                if !term.is_zero() {
                    dst.insert(k, term);
                }
            }
        }
    }
}

pub fn sparse_from_dense(v: &[Rational]) -> SparseVector {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &SparseVector, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![SparseVector::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Rational::one());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions are
    /// summed and zero results dropped, so the stored form has no duplicates.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            match m.data[r].entry(c) {
                Entry::Vacant(e) => {
                    if !v.is_zero() {
                        e.insert(v);
                    }
                }
                Entry::Occupied(mut e) => {
                    *e.get_mut() += v;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                sparse_from_dense(r)
            })
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, v) in col {
                assert!(i < rows, "column entry {i} outside {rows} rows");
                if !v.is_zero() {
                    m.data[i].insert(j, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rational::zero(), |acc, (&c, v)| acc + v * &x[c])
            })
            .collect()
    }

    pub fn mul_sparse(&self, x: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Rational::zero();
            for (c, v) in row {
                if let Some(xc) = x.get(c) {
                    acc += v * xc;
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    /// Appends `v` as an extra column.
    fn augmented(&self, v: &[Rational]) -> Self {
        assert_eq!(v.len(), self.rows, "right-hand side length mismatch");
        let mut m = self.clone();
        m.cols += 1;
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                m.data[i].insert(self.cols, x.clone());
            }
        }
        m
    }
}

/// Working state of a sparse Gaussian elimination.
struct Elimination {
    rows: Vec<SparseVector>,
    col_rows: Vec<BTreeSet<usize>>,
    pivot_col: Vec<Option<usize>>,
    pivots: Vec<(usize, usize)>,
}

impl Elimination {
    fn new(m: &SparseMatrix) -> Self {
        let mut col_rows = vec![BTreeSet::new(); m.cols];
        for (r, c, _) in m.entries() {
            col_rows[c].insert(r);
        }
        Elimination {
            rows: m.data.clone(),
            col_rows,
            pivot_col: vec![None; m.rows],
            pivots: Vec::new(),
        }
    }

    /// Eliminates using pivots in columns `< limit`. With `full`, pivot columns
    /// are also cleared from rows that already carry a pivot, which leaves a
    /// reduced echelon form up to row/column permutation.
    fn run(mut self, limit: usize, full: bool) -> Self {
        // Non-pivot rows ordered by their number of entries in columns < limit.
        let mut live: Vec<usize> = self.rows.iter().map(|row| row.range(..limit).count()).collect();
        let mut queue: BTreeSet<(usize, usize)> = live
            .iter()
            .enumerate()
            .filter(|&(_, &n)| n > 0)
            .map(|(r, &n)| (n, r))
            .collect();
        while let Some((_, r)) = queue.pop_first() {
            let c = *self.rows[r]
                .range(..limit)
                .map(|(c, _)| c)
                .min_by_key(|&&c| (self.col_rows[c].len(), c))
                .expect("row selected with entries");

            let inv = self.rows[r][&c].recip();
            if !inv.is_one() {
                for v in self.rows[r].values_mut() {
                    *v *= &inv;
                }
            }
            let pivot_row = self.rows[r].clone();
            let targets: Vec<usize> = self.col_rows[c]
                .iter()
                .copied()
                .filter(|&i| i != r && (full || self.pivot_col[i].is_none()))
                .collect();
            for i in targets {
                let factor = -self.rows[i][&c].clone();
                let unit = if factor.is_one() {
                    Some(false)
                } else if (-&factor).is_one() {
                    Some(true)
                } else {
                    None
                };
                let before = live[i];
                for (&k, v) in &pivot_row {
                    let term = match unit {
                        Some(false) => v.clone(),
                        Some(true) => -v,
                        None => &factor * v,
                    };
                    let row = &mut self.rows[i];
                    let now_zero = match row.get_mut(&k) {
                        Some(cur) => {
                            *cur += term;
                            cur.is_zero()
                        }
                        None => {
                            row.insert(k, term);
                            self.col_rows[k].insert(i);
                            if k < limit {
                                live[i] += 1;
                            }
                            false
                        }
                    };
                    if now_zero {
                        row.remove(&k);
                        self.col_rows[k].remove(&i);
                        if k < limit {
                            live[i] -= 1;
                        }
                    }
                }
                if self.pivot_col[i].is_none() && live[i] != before {
                    queue.remove(&(before, i));
                    if live[i] > 0 {
                        queue.insert((live[i], i));
                    }
                }
            }
            self.pivot_col[r] = Some(c);
            self.pivots.push((r, c));
        }
        self
    }
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    if m.nnz() == 0 {
        return 0;
    }
    Elimination::new(m).run(m.cols, false).pivots.len()
}

/// A basis of the null space, one vector per non-pivot column, ordered by that
/// column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let elim = Elimination::new(m).run(m.cols, true);
    let mut pivot_of_col = vec![None; m.cols];
    for &(r, c) in &elim.pivots {
        pivot_of_col[c] = Some(r);
    }
    (0..m.cols)
        .filter(|&f| pivot_of_col[f].is_none())
        .map(|f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for &(r, c) in &elim.pivots {
                if let Some(x) = elim.rows[r].get(&f) {
                    v[c] = -x.clone();
                }
            }
            v
        })
        .collect()
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &SparseMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let aug = m.augmented(b);
    let elim = Elimination::new(&aug).run(m.cols, true);
    for (r, row) in elim.rows.iter().enumerate() {
        if elim.pivot_col[r].is_none() && row.contains_key(&m.cols) {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); m.cols];
    for &(r, c) in &elim.pivots {
        if let Some(v) = elim.rows[r].get(&m.cols) {
            x[c] = v.clone();
        }
    }
    Some(x)
}

/// An incrementally grown row-echelon basis of a subspace of `Q^n`.
///
/// Each stored row has leading (smallest) coordinate equal to its key with
/// coefficient 1. `reduce` removes every pivot coordinate from a vector, so
/// two vectors are congruent modulo the span iff their reductions agree.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    pivots: BTreeMap<usize, SparseVector>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivots.contains_key(&i)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn reduce(&self, mut v: SparseVector) -> SparseVector {
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .map(|(k, _)| *k)
                .find(|k| self.pivots.contains_key(k));
            let Some(k) = next else { break };
            let c = v.remove(&k).expect("present");
            let row = &self.pivots[&k];
            let factor = -c;
            for (&j, a) in row.range(k + 1..) {
                let term = &factor * a;
                match v.get_mut(&j) {
                    Some(cur) => {
                        *cur += term;
                        if cur.is_zero() {
                            v.remove(&j);
                        }
                    }
                    None => {
                        v.insert(j, term);
                    }
                }
            }
            cursor = k + 1;
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVector) -> bool {
        let mut r = self.reduce(v);
        let Some((&lead, _)) = r.iter().next() else {
            return false;
        };
        let inv = r[&lead].recip();
        if !inv.is_one() {
            for x in r.values_mut() {
                *x *= &inv;
            }
        }
        self.pivots.insert(lead, r);
        true
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}
