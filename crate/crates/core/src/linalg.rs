//! Exact sparse linear algebra over Q(i).
//!
//! Matrices are split into connected components of their row/column
//! incidence graph before elimination; every operator in this crate
//! preserves a torus weight, so the components are small weight blocks.
//! Each block is cleared of denominators row by row and reduced with
//! fraction-free Gauss-Jordan elimination over the Gaussian integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Sparse vector: `(index, value)` pairs sorted by index, no explicit zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    /// Columns may be unsorted and contain zeros; they are normalized here.
    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        let cols = cols.into_iter().map(normalize).collect::<Vec<_>>();
        for c in &cols {
            if let Some(&(r, _)) = c.last() {
                assert!(r < nrows, "row index {r} out of bounds for {nrows} rows");
            }
        }
        SparseMatrix { nrows, cols }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, cols: (0..n).map(|i| vec![(i, Scalar::one())]).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.cols[c]
            .binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| self.cols[c][k].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()), "shape mismatch");
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, Scalar> = a.iter().cloned().collect();
                for (i, x) in b {
                    *acc.entry(*i).or_insert_with(Scalar::zero) -= x;
                }
                acc.into_iter().collect()
            })
            .collect();
        SparseMatrix::from_columns(self.nrows, cols)
    }

    /// Vertical concatenation `[self; other]`.
    pub fn stack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.ncols(), "column count mismatch");
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(i, x)| (i + self.nrows, x.clone()))).collect())
            .collect();
        SparseMatrix { nrows: self.nrows + other.nrows, cols }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.nrows, other.nrows, "row count mismatch");
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        SparseMatrix { nrows: self.nrows, cols }
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows, "inner dimension mismatch");
        let cols = other.cols.iter().map(|c| self.mul_vec(c)).collect();
        SparseMatrix { nrows: self.nrows, cols }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, x) in v {
            for (i, a) in &self.cols[*j] {
                *acc.entry(*i).or_insert_with(Scalar::zero) += &(a * x);
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                cols[*i].push((j, x.conj()));
            }
        }
        SparseMatrix { nrows: self.ncols(), cols }
    }

    pub fn rank(&self) -> usize {
        components(self).iter().map(|comp| reduce_component(self, comp, None).pivots.len()).sum()
    }
}

fn normalize(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// Gaussian integer, used only inside elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt { re: &self.re * &o.re, im: BigInt::zero() };
        }
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Division known to be exact in Z[i]; panics otherwise.
    fn exact_div(&self, d: &GaussInt) -> GaussInt {
        let (num, den) = if d.im.is_zero() {
            (self.clone(), d.re.clone())
        } else {
            let conj = GaussInt { re: d.re.clone(), im: -d.im.clone() };
            (self.mul(&conj), &d.re * &d.re + &d.im * &d.im)
        };
        let (qr, rr) = num.re.div_rem(&den);
        let (qi, ri) = num.im.div_rem(&den);
        assert!(rr.is_zero() && ri.is_zero(), "fraction-free elimination: inexact division");
        GaussInt { re: qr, im: qi }
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::new(BigRational::from_integer(self.re.clone()), BigRational::from_integer(self.im.clone()))
    }
}

/// A connected block: global column indices (ascending) and the rows they touch (ascending).
#[derive(Debug)]
struct Component {
    cols: Vec<usize>,
    rows: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn components(m: &SparseMatrix) -> Vec<Component> {
    let n = m.ncols();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut row_owner: Vec<Option<usize>> = vec![None; m.nrows];
    for (j, col) in m.cols.iter().enumerate() {
        for (i, _) in col {
            match row_owner[*i] {
                None => row_owner[*i] = Some(j),
                Some(k) => {
                    let (ra, rb) = (find(&mut parent, j), find(&mut parent, k));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..n {
        let r = find(&mut parent, j);
        groups.entry(r).or_default().push(j);
    }
    groups
        .into_values()
        .map(|cols| {
            let mut rows: Vec<usize> = cols.iter().flat_map(|&j| m.cols[j].iter().map(|(i, _)| *i)).collect();
            rows.sort_unstable();
            rows.dedup();
            Component { cols, rows }
        })
        .collect()
}

/// Fraction-free reduced echelon form of one block.
struct Reduced {
    /// Dense rows over the local columns (plus an optional augmented column).
    rows: Vec<Vec<GaussInt>>,
    /// `(row, local column)` of each pivot, in column order.
    pivots: Vec<(usize, usize)>,
    /// Common value of every pivot entry.
    det: GaussInt,
}

fn lcm_of_denominators<'a>(entries: impl Iterator<Item = &'a Scalar>) -> BigInt {
    entries.fold(BigInt::one(), |acc, x| acc.lcm(x.re().denom()).lcm(x.im().denom()))
}

fn clear_row(row: &[Scalar]) -> Vec<GaussInt> {
    let l = lcm_of_denominators(row.iter());
    row.iter()
        .map(|x| {
            let re = x.re() * BigRational::from_integer(l.clone());
            let im = x.im() * BigRational::from_integer(l.clone());
            GaussInt { re: re.to_integer(), im: im.to_integer() }
        })
        .collect()
}

fn reduce_component(m: &SparseMatrix, comp: &Component, rhs: Option<&SparseVec>) -> Reduced {
    let local_row: BTreeMap<usize, usize> = comp.rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let width = comp.cols.len() + usize::from(rhs.is_some());
    let mut dense = vec![vec![Scalar::zero(); width]; comp.rows.len()];
    for (lc, &gc) in comp.cols.iter().enumerate() {
        for (r, x) in &m.cols[gc] {
            dense[local_row[r]][lc] = x.clone();
        }
    }
    if let Some(v) = rhs {
        for (r, x) in v {
            if let Some(&lr) = local_row.get(r) {
                dense[lr][width - 1] = x.clone();
            }
        }
    }
    let mut rows: Vec<Vec<GaussInt>> = dense.iter().map(|r| clear_row(r)).collect();

    let nrows = rows.len();
    let mut prev = GaussInt { re: BigInt::one(), im: BigInt::zero() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == nrows {
            break;
        }
        let Some(k) = (r..nrows).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let piv = rows[r][c].clone();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[c].clone();
            for j in 0..width {
                let v = piv.mul(&row[j]);
                let v = if factor.is_zero() { v } else { v.sub(&factor.mul(&pivot_row[j])) };
                row[j] = v.exact_div(&prev);
            }
        }
        prev = piv;
        pivots.push((r, c));
        r += 1;
    }
    Reduced { rows, pivots, det: prev }
}

/// Basis of the right kernel in canonical reduced-echelon form: one vector per
/// free column `f`, equal to 1 at `f`, supported on `f` and pivot columns.
/// Vectors are ordered by their free column.
pub fn nullspace(m: &SparseMatrix) -> Vec<SparseVec> {
    let mut out: Vec<(usize, SparseVec)> = Vec::new();
    for comp in components(m) {
        let red = reduce_component(m, &comp, None);
        let pivot_cols: Vec<usize> = red.pivots.iter().map(|&(_, c)| c).collect();
        let det = red.det.to_scalar();
        for f in 0..comp.cols.len() {
            if pivot_cols.contains(&f) {
                continue;
            }
            let mut v: SparseVec = vec![(comp.cols[f], Scalar::one())];
            for &(row, c) in &red.pivots {
                let x = &red.rows[row][f];
                if !x.is_zero() {
                    let q = (-x.to_scalar()).checked_div(&det).expect("nonzero pivot");
                    v.push((comp.cols[c], q));
                }
            }
            v.sort_by_key(|(i, _)| *i);
            out.push((comp.cols[f], v));
        }
    }
    out.sort_by_key(|(f, _)| *f);
    out.into_iter().map(|(_, v)| v).collect()
}

/// A solution of `m x = rhs` (free variables set to zero), or `None` if inconsistent.
pub fn solve(m: &SparseMatrix, rhs: &SparseVec) -> Option<Vec<Scalar>> {
    let comps = components(m);
    let mut covered = vec![false; m.nrows()];
    for comp in &comps {
        for &r in &comp.rows {
            covered[r] = true;
        }
    }
    if rhs.iter().any(|(r, x)| !covered[*r] && !x.is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); m.ncols()];
    for comp in &comps {
        if !rhs.iter().any(|(r, _)| comp.rows.binary_search(r).is_ok()) {
            continue;
        }
        let red = reduce_component(m, comp, Some(rhs));
        let aug = comp.cols.len();
        if red.pivots.iter().any(|&(_, c)| c == aug) {
            return None;
        }
        let det = red.det.to_scalar();
        for &(row, c) in &red.pivots {
            x[comp.cols[c]] = red.rows[row][aug].to_scalar().checked_div(&det).expect("nonzero");
        }
    }
    Some(x)
}

/// Global indices of the pivot columns: a maximal independent subset of the columns,
/// choosing the earliest column at each step.
pub fn pivot_columns(m: &SparseMatrix) -> Vec<usize> {
    let mut out: Vec<usize> = components(m)
        .iter()
        .flat_map(|comp| {
            reduce_component(m, comp, None).pivots.into_iter().map(|(_, c)| comp.cols[c]).collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable();
    out
}

/// Index of the first column of `other` outside the column space of `m`, if any.
pub fn first_outside(m: &SparseMatrix, other: &SparseMatrix) -> Option<usize> {
    if m.hcat(other).rank() == m.rank() {
        return None;
    }
    (0..other.ncols()).find(|&j| !in_column_space(m, other.col(j)))
}

pub fn in_column_space(m: &SparseMatrix, v: &SparseVec) -> bool {
    solve(m, v).is_some()
}
