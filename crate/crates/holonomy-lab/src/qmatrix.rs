//! Quaternionic vectors and matrices in the left-coordinate convention.
//!
//! A vector `X ∈ ℍᵐ` is the column of its left coordinates: `X = Σ X_t e_t`, and
//! scalars act from the left, `(aX)_t = a·X_t`. A matrix `A` acts on vectors only
//! through the `ℍ`-linear map `Op(A)·X = (Xᵗ Aᵗ)ᵗ`, i.e. `(Op(A)X)_s = Σ_t X_t A_{st}`
//! — coordinates multiply matrix entries from the left, which is *not* the naive
//! matrix-vector product. Composition satisfies `Op(A)∘Op(B) = Op((Bᵗ Aᵗ)ᵗ)`.
//!
//! Realification replaces each entry `c` by the 4×4 block of right multiplication
//! by `c` (in the per-coordinate basis `e, I₁e, I₂e, I₃e`), which makes
//! [`QMatrix::realify`] an algebra homomorphism for `Op`-composition. The
//! quaternionic structure operators `I₁, I₂, I₃` act by *left* multiplication and
//! are produced by [`structure_matrix`]; they commute with every realified `Op`
//! matrix.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::RMatrix;
use crate::quat::Quat;
use crate::scalar::Scalar;

/// Column of left coordinates of a vector in `ℍᵐ`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector {
    pub coords: Vec<Quat>,
}

impl QVector {
    pub fn zero(dim: usize) -> Self {
        QVector {
            coords: vec![Quat::zero(); dim],
        }
    }

    pub fn from_coords(coords: Vec<Quat>) -> Self {
        QVector { coords }
    }

    /// `e_t` scaled by `c`: the vector with `c` in slot `t`.
    pub fn basis(dim: usize, t: usize, c: Quat) -> Self {
        let mut v = QVector::zero(dim);
        v.coords[t] = c;
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Quat::is_zero)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        QVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        QVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> QVector {
        QVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// Left scalar action `a·X`.
    pub fn scale_left(&self, a: &Quat) -> QVector {
        QVector {
            coords: self.coords.iter().map(|x| a * x).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> QVector {
        QVector {
            coords: self.coords.iter().map(|x| x.scale(s)).collect(),
        }
    }

    /// Real coordinates over the basis `e_1, I₁e_1, ..., I₃e_m`.
    pub fn to_real(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(4 * self.dim());
        for q in &self.coords {
            out.extend(q.components().into_iter().cloned());
        }
        out
    }

    pub fn from_real(v: &[Scalar]) -> QVector {
        assert_eq!(v.len() % 4, 0, "real vector length must be a multiple of 4");
        QVector {
            coords: v
                .chunks_exact(4)
                .map(|c| Quat::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coords).finish()
    }
}

/// Quaternionic matrix, acting on [`QVector`] only via [`QMatrix::op_apply`].
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<Quat>>", into = "Vec<Vec<Quat>>")]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Quat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Quat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Quat::one());
        }
        m
    }

    /// `c·E` restricted to the index range `lo..hi` of the diagonal.
    pub fn scalar_block(n: usize, c: &Quat, lo: usize, hi: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in lo..hi {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Quat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Quat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Quat) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Quat::is_zero)
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn conj_transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// `Op(A)·X = (Xᵗ Aᵗ)ᵗ`: coordinate `s` of the result is `Σ_t X_t·A_{st}`.
    ///
    /// Panics if `A.cols != X.dim`.
    pub fn op_apply(&self, x: &QVector) -> QVector {
        assert_eq!(
            self.cols,
            x.dim(),
            "dimension mismatch: Op({}x{}) applied to vector of dim {}",
            self.rows,
            self.cols,
            x.dim()
        );
        let mut out = QVector::zero(self.rows);
        for s in 0..self.rows {
            let mut acc = Quat::zero();
            for t in 0..self.cols {
                let a = self.get(s, t);
                if !a.is_zero() && !x.coords[t].is_zero() {
                    acc = &acc + &(&x.coords[t] * a);
                }
            }
            out.coords[s] = acc;
        }
        out
    }

    /// Matrix of `Op(self)∘Op(other)`, i.e. `(otherᵗ·selfᵗ)ᵗ`:
    /// entry `(u,t)` is `Σ_s other_{st}·self_{us}`.
    pub fn op_mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "op_mul dimension mismatch");
        let mut out = QMatrix::zero(self.rows, other.cols);
        for u in 0..self.rows {
            for t in 0..other.cols {
                let mut acc = Quat::zero();
                for s in 0..self.cols {
                    let a = other.get(s, t);
                    let b = self.get(u, s);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(u, t, acc);
            }
        }
        out
    }

    /// Commutator of the endomorphisms `Op(self)` and `Op(other)`.
    pub fn op_commutator(&self, other: &QMatrix) -> QMatrix {
        self.op_mul(other).sub(&other.op_mul(self))
    }

    /// The real `4r×4c` matrix of `Op(self)` over the realified basis: each entry
    /// becomes the right-multiplication block of [`realify_quat`].
    pub fn realify(&self) -> RMatrix {
        let mut out = RMatrix::zero(4 * self.rows, 4 * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let q = self.get(i, j);
                if q.is_zero() {
                    continue;
                }
                let blk = realify_quat(q);
                for a in 0..4 {
                    for b in 0..4 {
                        let v = blk.get(a, b);
                        if !v.is_zero() {
                            out.set(4 * i + a, 4 * j + b, v.clone());
                        }
                    }
                }
            }
        }
        out
    }
}

impl From<Vec<Vec<Quat>>> for QMatrix {
    fn from(rows: Vec<Vec<Quat>>) -> Self {
        QMatrix::from_rows(rows)
    }
}

impl From<QMatrix> for Vec<Vec<Quat>> {
    fn from(m: QMatrix) -> Self {
        (0..m.rows)
            .map(|i| (0..m.cols).map(|j| m.get(i, j).clone()).collect())
            .collect()
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The 4×4 block of right multiplication `x ↦ x·c` over the basis `1, i, j, k`:
///
/// ```text
/// [ c0 -c1 -c2 -c3 ]
/// [ c1  c0  c3 -c2 ]
/// [ c2 -c3  c0  c1 ]
/// [ c3  c2 -c1  c0 ]
/// ```
pub fn realify_quat(c: &Quat) -> RMatrix {
    let (c0, c1, c2, c3) = (&c.c0, &c.c1, &c.c2, &c.c3);
    RMatrix::from_rows(vec![
        vec![c0.clone(), -c1, -c2, -c3],
        vec![c1.clone(), c0.clone(), c3.clone(), -c2],
        vec![c2.clone(), -c3, c0.clone(), c1.clone()],
        vec![c3.clone(), c2.clone(), -c1, c0.clone()],
    ])
}

/// The 4×4 block of left multiplication `x ↦ c·x` over the basis `1, i, j, k`.
pub fn left_mult_quat(c: &Quat) -> RMatrix {
    let (c0, c1, c2, c3) = (&c.c0, &c.c1, &c.c2, &c.c3);
    RMatrix::from_rows(vec![
        vec![c0.clone(), -c1, -c2, -c3],
        vec![c1.clone(), c0.clone(), -c3, c2.clone()],
        vec![c2.clone(), c3.clone(), c0.clone(), -c1],
        vec![c3.clone(), -c2, c1.clone(), c0.clone()],
    ])
}

/// `I_α` on `ℝ^{4m}`: block-diagonal left multiplication by `i`, `j` or `k`
/// (`alpha` in `1..=3`). These are the quaternionic structure operators; they are
/// not `Op` of any matrix.
pub fn structure_matrix(alpha: usize, m: usize) -> RMatrix {
    assert!((1..=3).contains(&alpha), "structure index must be 1..=3");
    left_mult_matrix(&Quat::unit(alpha), m)
}

/// Block-diagonal left multiplication by an arbitrary quaternion on `ℝ^{4m}`.
pub fn left_mult_matrix(c: &Quat, m: usize) -> RMatrix {
    let blk = left_mult_quat(c);
    let mut out = RMatrix::zero(4 * m, 4 * m);
    for t in 0..m {
        for a in 0..4 {
            for b in 0..4 {
                let v = blk.get(a, b);
                if !v.is_zero() {
                    out.set(4 * t + a, 4 * t + b, v.clone());
                }
            }
        }
    }
    out
}

/// Inverse of [`QMatrix::realify`]. Panics when the matrix does not have the
/// right-multiplication block pattern (each block is read off its first column
/// and then verified).
pub fn unrealify(m: &RMatrix) -> QMatrix {
    assert_eq!(m.nrows() % 4, 0);
    assert_eq!(m.ncols() % 4, 0);
    let (r, c) = (m.nrows() / 4, m.ncols() / 4);
    let mut out = QMatrix::zero(r, c);
    for i in 0..r {
        for j in 0..c {
            let q = Quat::new(
                m.get(4 * i, 4 * j).clone(),
                m.get(4 * i + 1, 4 * j).clone(),
                m.get(4 * i + 2, 4 * j).clone(),
                m.get(4 * i + 3, 4 * j).clone(),
            );
            out.set(i, j, q);
        }
    }
    assert_eq!(
        out.realify(),
        *m,
        "matrix is not the realification of a quaternionic matrix"
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_apply_identity_and_1x1() {
        let e = QMatrix::identity(3);
        let x = QVector::from_coords(vec![Quat::i(), Quat::j(), Quat::from_ints(1, 0, 0, 2)]);
        assert_eq!(e.op_apply(&x), x);
        // m=1, A=(j), X=(i): Op(A)X = (i·j) = (k)
        let a = QMatrix::from_rows(vec![vec![Quat::j()]]);
        let x = QVector::from_coords(vec![Quat::i()]);
        assert_eq!(a.op_apply(&x).coords[0], Quat::k());
    }

    #[test]
    fn op_composition_matches_application() {
        // f = Op((j)), g = Op((i)): Mat_{fg} = (ij) = (k) and f(g(e1)) = k e1
        let f = QMatrix::from_rows(vec![vec![Quat::j()]]);
        let g = QMatrix::from_rows(vec![vec![Quat::i()]]);
        let fg = f.op_mul(&g);
        assert_eq!(*fg.get(0, 0), Quat::k());
        let e1 = QVector::basis(1, 0, Quat::one());
        assert_eq!(f.op_apply(&g.op_apply(&e1)), fg.op_apply(&e1));
    }

    #[test]
    fn op_is_h_linear() {
        let a = QMatrix::from_rows(vec![
            vec![Quat::from_ints(1, 2, 0, -1), Quat::j()],
            vec![Quat::k(), Quat::from_ints(0, 1, 1, 0)],
        ]);
        let x = QVector::from_coords(vec![Quat::from_ints(2, -1, 0, 3), Quat::i()]);
        for c in [Quat::i(), Quat::j(), Quat::from_ints(1, -2, 3, 4)] {
            assert_eq!(a.op_apply(&x.scale_left(&c)), a.op_apply(&x).scale_left(&c));
        }
    }

    #[test]
    fn realify_paper_blocks() {
        let s = Scalar::from_int;
        assert_eq!(realify_quat(&Quat::one()), RMatrix::identity(4));
        let ri = realify_quat(&Quat::i());
        assert_eq!(
            ri,
            RMatrix::from_rows(vec![
                vec![s(0), s(-1), s(0), s(0)],
                vec![s(1), s(0), s(0), s(0)],
                vec![s(0), s(0), s(0), s(1)],
                vec![s(0), s(0), s(-1), s(0)],
            ])
        );
        let rk = realify_quat(&Quat::k());
        assert_eq!(
            rk,
            RMatrix::from_rows(vec![
                vec![s(0), s(0), s(0), s(-1)],
                vec![s(0), s(0), s(1), s(0)],
                vec![s(0), s(-1), s(0), s(0)],
                vec![s(1), s(0), s(0), s(0)],
            ])
        );
    }

    #[test]
    fn realify_is_op_homomorphism() {
        let a = QMatrix::from_rows(vec![
            vec![Quat::from_ints(1, 1, 0, 0), Quat::from_ints(0, 0, 2, 0)],
            vec![Quat::from_ints(0, 0, 0, -1), Quat::from_ints(3, 0, 0, 1)],
        ]);
        let b = QMatrix::from_rows(vec![
            vec![Quat::from_ints(0, 2, 0, 0), Quat::from_ints(1, 0, -1, 0)],
            vec![Quat::from_ints(0, 0, 1, 1), Quat::from_ints(0, -2, 0, 0)],
        ]);
        assert_eq!(a.op_mul(&b).realify(), a.realify().mul(&b.realify()));
    }

    #[test]
    fn structure_commutes_with_realified() {
        let a = QMatrix::from_rows(vec![
            vec![Quat::from_ints(1, 2, 3, 4), Quat::from_ints(0, -1, 0, 2)],
            vec![Quat::from_ints(5, 0, 0, 1), Quat::from_ints(0, 0, 1, 0)],
        ]);
        let m = a.realify();
        for alpha in 1..=3 {
            let i = structure_matrix(alpha, 2);
            assert!(m.commutator(&i).is_zero());
        }
    }

    #[test]
    fn unrealify_roundtrip() {
        let a = QMatrix::from_rows(vec![vec![Quat::from_ints(1, -2, 0, 5)]]);
        assert_eq!(unrealify(&a.realify()), a);
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn op_apply_dimension_mismatch() {
        let a = QMatrix::identity(2);
        let x = QVector::zero(3);
        let _ = a.op_apply(&x);
    }
}
