//! Exact linear algebra over the rationals.
//!
//! Two engines cover everything in the crate:
//!
//! * [`RMatrix`], a dense rational matrix used for realified operators, and
//! * a fraction-free sparse elimination over integer rows ([`echelon`],
//!   [`SpanBuilder`]) used for nullspaces, ranks and span membership.
//!
//! Rows entering the sparse engine have denominators cleared and are divided by
//! their content, so all elimination arithmetic stays in `BigInt`. Pivoting picks
//! the candidate with the smallest leading |entry| (ties broken by insertion
//! order), and columns are processed left to right, so results are deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::scalar::Scalar;

// ---------------------------------------------------------------------------
// Dense rational matrices
// ---------------------------------------------------------------------------

/// Dense matrix of exact rationals, row major. Serializes as nested row arrays.
#[derive(Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(from = "Vec<Vec<Scalar>>", into = "Vec<Vec<Scalar>>")]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl From<Vec<Vec<Scalar>>> for RMatrix {
    fn from(rows: Vec<Vec<Scalar>>) -> Self {
        RMatrix::from_rows(rows)
    }
}

impl From<RMatrix> for Vec<Vec<Scalar>> {
    fn from(m: RMatrix) -> Self {
        (0..m.rows).map(|i| m.row(i).to_vec()).collect()
    }
}

impl RMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Scalar) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> RMatrix {
        let mut out = RMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &RMatrix) -> RMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RMatrix) -> RMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = RMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let prod = a * b;
                        out.add_to(i, j, &prod);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = vec![Scalar::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    out[i] += &(a * &v[j]);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &RMatrix) -> RMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    /// `true` when `η(Mx, y) = -η(x, My)` for the symmetric form `eta`,
    /// i.e. `(eta·M)` is antisymmetric.
    pub fn is_skew_for(&self, eta: &RMatrix) -> bool {
        let e = eta.mul(self);
        for i in 0..e.rows {
            for j in 0..i {
                if *e.get(i, j) != -e.get(j, i) {
                    return false;
                }
            }
            if !e.get(i, i).is_zero() {
                return false;
            }
        }
        true
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(s: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| s * x).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

// ---------------------------------------------------------------------------
// Sparse integer rows and fraction-free elimination
// ---------------------------------------------------------------------------

/// Sparse row of integers sorted by column, nonzero entries only.
type IntRow = Vec<(u32, BigInt)>;

fn row_from_scalars<I: IntoIterator<Item = (u32, Scalar)>>(entries: I) -> IntRow {
    let mut entries: Vec<(u32, Scalar)> = entries
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .collect();
    if entries.is_empty() {
        return Vec::new();
    }
    // duplicate column indices are legal on input; merge them
    entries.sort_by_key(|(c, _)| *c);
    let mut merged: Vec<(u32, Scalar)> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match merged.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += &v,
            _ => merged.push((c, v)),
        }
    }
    merged.retain(|(_, v)| !v.is_zero());
    if merged.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::from(1);
    for (_, v) in &merged {
        lcm = lcm.lcm(v.denom());
    }
    let mut row: IntRow = merged
        .into_iter()
        .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
        .collect();
    normalize_row(&mut row);
    row
}

fn row_from_dense(v: &[Scalar]) -> IntRow {
    row_from_scalars(
        v.iter()
            .enumerate()
            .map(|(i, x)| (i as u32, x.clone())),
    )
}

/// Divides out the content (gcd) and makes the leading entry positive.
fn normalize_row(row: &mut IntRow) {
    row.retain(|(_, v)| !v.is_zero());
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_zero() && g != BigInt::from(1) {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `dest := dest*a - src*b`, merging sorted sparse rows, then gcd-normalized.
fn row_combine(dest: &IntRow, a: &BigInt, src: &IntRow, b: &BigInt) -> IntRow {
    let mut out: IntRow = Vec::with_capacity(dest.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dest.len() || j < src.len() {
        match (dest.get(i), src.get(j)) {
            (Some((cd, vd)), Some((cs, vs))) if cd == cs => {
                let v = vd * a - vs * b;
                if !v.is_zero() {
                    out.push((*cd, v));
                }
                i += 1;
                j += 1;
            }
            (Some((cd, vd)), Some((cs, _))) if cd < cs => {
                out.push((*cd, vd * a));
                i += 1;
            }
            (Some(_), Some((cs, vs))) => {
                out.push((*cs, -(vs * b)));
                j += 1;
            }
            (Some((cd, vd)), None) => {
                out.push((*cd, vd * a));
                i += 1;
            }
            (None, Some((cs, vs))) => {
                out.push((*cs, -(vs * b)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    normalize_row(&mut out);
    out
}

/// Row echelon form of a sparse integer system.
pub struct Echelon {
    ncols: usize,
    /// Pivot rows keyed by pivot column; each row's leading column is its key.
    pivot_rows: BTreeMap<u32, IntRow>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivot_rows.keys().map(|c| *c as usize).collect()
    }

    /// Deterministic nullspace basis; each vector is a primitive integer vector
    /// (content 1) with `+1`-oriented free coordinate, returned as rationals.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        // Back-substitute to reduced form first.
        let mut reduced: Vec<(u32, IntRow)> = Vec::with_capacity(self.pivot_rows.len());
        for (&col, row) in self.pivot_rows.iter().rev() {
            let mut r = row.clone();
            // eliminate later pivot columns from r
            for (later_col, later_row) in reduced.iter() {
                if let Some(pos) = r.iter().position(|(c, _)| c == later_col) {
                    let a = later_row[0].1.clone();
                    let b = r[pos].1.clone();
                    r = row_combine(&r, &a, later_row, &b);
                }
            }
            reduced.push((col, r));
        }
        reduced.reverse();

        let pivot_set: std::collections::BTreeSet<u32> =
            self.pivot_rows.keys().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.ncols as u32 {
            if pivot_set.contains(&free) {
                continue;
            }
            // v[free] = 1; v[pivot] = -row[free]/row[pivot]
            let mut num: Vec<(u32, Scalar)> = vec![(free, Scalar::one())];
            for (col, row) in reduced.iter() {
                if let Some((_, coeff)) = row.iter().find(|(c, _)| *c == free) {
                    let lead = &row[0].1;
                    num.push((
                        *col,
                        Scalar::from_rational(num_rational::BigRational::new(
                            -coeff.clone(),
                            lead.clone(),
                        )),
                    ));
                }
            }
            // scale to a primitive integer vector
            let int_row = row_from_scalars(num);
            let mut dense = vec![Scalar::zero(); self.ncols];
            let mut flip = false;
            for (c, v) in &int_row {
                if *c == free && v.is_negative() {
                    flip = true;
                }
            }
            for (c, v) in int_row {
                let s = Scalar::from_bigint(if flip { -v } else { v });
                dense[c as usize] = s;
            }
            basis.push(dense);
        }
        basis
    }
}

/// Fraction-free Gaussian elimination with smallest-|entry| partial pivoting,
/// columns processed in their natural (lexicographic) order.
pub fn echelon<I>(rows: I, ncols: usize) -> Echelon
where
    I: IntoIterator<Item = Vec<(u32, Scalar)>>,
{
    // bucket rows by leading column
    let mut buckets: BTreeMap<u32, Vec<IntRow>> = BTreeMap::new();
    let push = |row: IntRow, buckets: &mut BTreeMap<u32, Vec<IntRow>>| {
        if let Some((c, _)) = row.first() {
            buckets.entry(*c).or_default().push(row);
        }
    };
    for r in rows {
        push(row_from_scalars(r), &mut buckets);
    }

    let mut pivot_rows: BTreeMap<u32, IntRow> = BTreeMap::new();
    while let Some((col, mut bucket)) = buckets.pop_first() {
        // pick the pivot with the smallest |leading entry|; earliest wins ties
        let mut best = 0;
        for (idx, row) in bucket.iter().enumerate() {
            if row[0].1.abs() < bucket[best][0].1.abs() {
                best = idx;
            }
        }
        let pivot = bucket.swap_remove(best);
        let p = pivot[0].1.clone();
        for row in bucket {
            let b = row[0].1.clone();
            let combined = row_combine(&row, &p, &pivot, &b);
            push(combined, &mut buckets);
        }
        pivot_rows.insert(col, pivot);
    }
    Echelon { ncols, pivot_rows }
}

pub fn echelon_dense<I>(rows: I, ncols: usize) -> Echelon
where
    I: IntoIterator<Item = Vec<Scalar>>,
{
    echelon(
        rows.into_iter().map(|r| {
            r.into_iter()
                .enumerate()
                .map(|(i, x)| (i as u32, x))
                .collect::<Vec<_>>()
        }),
        ncols,
    )
}

pub fn rank_dense<'a, I>(rows: I, ncols: usize) -> usize
where
    I: IntoIterator<Item = &'a [Scalar]>,
{
    echelon_dense(rows.into_iter().map(<[Scalar]>::to_vec), ncols).rank()
}

// ---------------------------------------------------------------------------
// Incremental span with exact membership
// ---------------------------------------------------------------------------

/// Incrementally built span of vectors with exact membership tests.
///
/// Rows are kept mutually reduced, so membership is a single sweep.
#[derive(Clone)]
pub struct SpanBuilder {
    ncols: usize,
    rows: BTreeMap<u32, IntRow>,
}

impl SpanBuilder {
    pub fn new(ncols: usize) -> Self {
        SpanBuilder {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> IntRow {
        assert_eq!(v.len(), self.ncols, "span vector length mismatch");
        let mut row = row_from_dense(v);
        loop {
            let Some((lead, _)) = row.first() else {
                return row;
            };
            let Some(pivot) = self.rows.get(lead) else {
                return row;
            };
            let a = pivot[0].1.clone();
            let b = row[0].1.clone();
            row = row_combine(&row, &a, pivot, &b);
        }
    }

    /// Adds a vector; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let row = self.reduce(v);
        match row.first() {
            None => false,
            Some((lead, _)) => {
                self.rows.insert(*lead, row);
                true
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).is_empty()
    }
}

// ---------------------------------------------------------------------------
// Reduced echelon with unit pivots (linear residuals)
// ---------------------------------------------------------------------------

/// Reduced row echelon form with unit pivots. Unlike [`SpanBuilder`], the
/// residual map `v ↦ v - (projection onto the row span)` is linear, which
/// matters when residuals feed further linear systems.
pub struct Rref {
    ncols: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<Scalar>>,
}

impl Rref {
    pub fn new<I>(rows: I, ncols: usize) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut out = Rref {
            ncols,
            pivots: Vec::new(),
            rows: Vec::new(),
        };
        for row in rows {
            out.insert(row);
        }
        out
    }

    fn insert(&mut self, mut row: Vec<Scalar>) {
        assert_eq!(row.len(), self.ncols);
        self.reduce_in_place(&mut row);
        let Some(lead) = row.iter().position(|x| !x.is_zero()) else {
            return;
        };
        let inv = row[lead].recip();
        for x in row.iter_mut() {
            *x = &*x * &inv;
        }
        // clear this column from existing rows to stay fully reduced
        for (p, r) in self.pivots.iter().zip(self.rows.iter_mut()) {
            let _ = p;
            if !r[lead].is_zero() {
                let f = r[lead].clone();
                for (x, y) in r.iter_mut().zip(row.iter()) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, row);
    }

    fn reduce_in_place(&self, v: &mut [Scalar]) {
        for (p, row) in self.pivots.iter().zip(self.rows.iter()) {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }

    /// Linear residual of `v` modulo the row span; zero iff `v` is in the span.
    pub fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

// ---------------------------------------------------------------------------
// Dense solve and symmetric signature
// ---------------------------------------------------------------------------

/// Solves `A x = b` exactly. Returns `None` when inconsistent; when the system
/// is underdetermined the free coordinates are set to zero.
pub fn solve_dense(a: &RMatrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.nrows(), b.len(), "rhs length mismatch");
    let n = a.ncols();
    let mut rows: Vec<Vec<Scalar>> = (0..a.nrows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    // plain rational Gauss-Jordan; fine at the sizes this is used for
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (head, tail) = rows.split_at_mut(r.max(i));
                let (ri, rr) = if i < r {
                    (&mut head[i], &tail[0])
                } else {
                    (&mut tail[0], &head[r])
                };
                for (x, y) in ri.iter_mut().zip(rr.iter()) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    // inconsistent iff a zero row has nonzero rhs
    for row in rows.iter() {
        if row[..n].iter().all(Scalar::is_zero) && !row[n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Scalar::zero(); n];
    for (ri, c) in pivots {
        x[c] = rows[ri][n].clone();
    }
    Some(x)
}

/// Signature `(negative, positive)` of a symmetric matrix, by exact symmetric
/// congruence reduction. Zero eigendirections are not counted.
pub fn signature(m: &RMatrix) -> (usize, usize) {
    assert_eq!(m.nrows(), m.ncols());
    let n = m.nrows();
    let mut a: Vec<Vec<Scalar>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let (mut neg, mut pos) = (0, 0);
    let mut idx: Vec<usize> = (0..n).collect();
    while let Some(&first) = idx.first() {
        // prefer a nonzero diagonal entry
        let diag = idx.iter().position(|&i| !a[i][i].is_zero());
        let p = match diag {
            Some(pos_in_idx) => idx[pos_in_idx],
            None => {
                // all remaining diagonal zero: find off-diagonal pair and fold it in
                let mut found = None;
                'outer: for &i in &idx {
                    for &j in &idx {
                        if i != j && !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    break; // remaining block is zero
                };
                // row/col i += row/col j creates 2*a[i][j] on the diagonal
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += &v;
                }
                for row in a.iter_mut().take(n) {
                    let v = row[j].clone();
                    row[i] += &v;
                }
                let _ = first;
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_negative() {
            neg += 1;
        } else {
            pos += 1;
        }
        idx.retain(|&i| i != p);
        // clear row/column p on the remaining block
        let dinv = d.recip();
        let others: Vec<usize> = idx.clone();
        for &i in &others {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] * &dinv;
            for k in 0..n {
                let v = &f * &a[p][k];
                a[i][k] = &a[i][k] - &v;
            }
            for row in a.iter_mut().take(n) {
                let v = &f * &row[p];
                row[i] = &row[i] - &v;
            }
        }
    }
    (neg, pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn echelon_rank_and_nullspace() {
        // x + y + z = 0, x - z = 0  -> rank 2, nullspace span{(1,-2,1)}
        let rows = vec![vec![s(1), s(1), s(1)], vec![s(1), s(0), s(-1)]];
        let e = echelon_dense(rows, 3);
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![s(1), s(-2), s(1)]);
    }

    #[test]
    fn span_membership() {
        let mut sp = SpanBuilder::new(3);
        assert!(sp.insert(&[s(1), s(2), s(0)]));
        assert!(sp.insert(&[s(0), s(1), s(1)]));
        assert!(!sp.insert(&[s(2), s(5), s(1)]));
        assert!(sp.contains(&[s(1), s(3), s(1)]));
        assert!(!sp.contains(&[s(0), s(0), s(1)]));
        assert_eq!(sp.rank(), 2);
    }

    #[test]
    fn dense_solve() {
        let a = RMatrix::from_rows(vec![vec![s(2), s(1)], vec![s(1), s(-1)]]);
        let x = solve_dense(&a, &[s(5), s(1)]).unwrap();
        assert_eq!(x, vec![s(2), s(1)]);
        let bad = RMatrix::from_rows(vec![vec![s(1), s(1)], vec![s(2), s(2)]]);
        assert!(solve_dense(&bad, &[s(0), s(1)]).is_none());
    }

    #[test]
    fn signature_hyperbolic_plane() {
        // [[0,1],[1,0]] has signature (1,1)
        let m = RMatrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
        assert_eq!(signature(&m), (1, 1));
        let d = RMatrix::from_rows(vec![
            vec![s(-2), s(0), s(0)],
            vec![s(0), s(3), s(0)],
            vec![s(0), s(0), s(5)],
        ]);
        assert_eq!(signature(&d), (1, 2));
    }

    #[test]
    fn matrix_ops() {
        let a = RMatrix::from_rows(vec![vec![s(1), s(2)], vec![s(3), s(4)]]);
        let b = RMatrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
        assert_eq!(
            a.mul(&b),
            RMatrix::from_rows(vec![vec![s(2), s(1)], vec![s(4), s(3)]])
        );
        assert_eq!(a.mul_vec(&[s(1), s(1)]), vec![s(3), s(7)]);
        assert!(a.commutator(&a).is_zero());
    }
}
