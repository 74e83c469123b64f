//! The parabolic subalgebra of `sp(1,n+1)` preserving the isotropic quaternionic
//! line `ℍp`, in the tuple form `(a, A, X, b)`:
//!
//! ```text
//!        [ a   -(G·conj(X))ᵗ    b      ]
//!   Op(  [ 0        A           X      ]  ),   a ∈ ℍ, A ∈ sp(n), X ∈ ℍⁿ, b ∈ Imℍ.
//!        [ 0        0        -conj(a)  ]
//! ```
//!
//! The structural bracket below is the commutator of these endomorphisms,
//! written out on the graded pieces; it is checked against the realified matrix
//! commutator exactly (the bracket oracle).

use crate::hermitian::HermitianSpace;
use crate::linalg::{echelon, solve_dense, RMatrix};
use crate::qmatrix::{structure_matrix, QMatrix, QVector};
use crate::quat::Quat;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// An element `(a, A, X, b)` of the parabolic algebra. The `A` slot stores the
/// matrix of the `sp(n)` part (acting through `Op`), `X` its left coordinates,
/// and `b` must be imaginary.
#[derive(Clone, PartialEq, Eq)]
pub struct ParabolicElement {
    pub a: Quat,
    pub a_mat: QMatrix,
    pub x: QVector,
    pub b: Quat,
}

impl ParabolicElement {
    pub fn new(n: usize, a: Quat, a_mat: QMatrix, x: QVector, b: Quat) -> Self {
        assert_eq!(a_mat.nrows(), n, "sp(n) slot must be {n}x{n}");
        assert_eq!(a_mat.ncols(), n, "sp(n) slot must be {n}x{n}");
        assert_eq!(x.dim(), n, "translation slot must have dim {n}");
        assert!(b.is_imaginary(), "the b slot must be imaginary");
        ParabolicElement { a, a_mat, x, b }
    }

    pub fn zero(n: usize) -> Self {
        ParabolicElement {
            a: Quat::zero(),
            a_mat: QMatrix::zero(n, n),
            x: QVector::zero(n),
            b: Quat::zero(),
        }
    }

    pub fn from_a(n: usize, a: Quat) -> Self {
        ParabolicElement::new(n, a, QMatrix::zero(n, n), QVector::zero(n), Quat::zero())
    }

    pub fn from_mat(n: usize, a_mat: QMatrix) -> Self {
        ParabolicElement::new(n, Quat::zero(), a_mat, QVector::zero(n), Quat::zero())
    }

    pub fn from_translation(n: usize, x: QVector) -> Self {
        ParabolicElement::new(n, Quat::zero(), QMatrix::zero(n, n), x, Quat::zero())
    }

    pub fn from_b(n: usize, b: Quat) -> Self {
        ParabolicElement::new(n, Quat::zero(), QMatrix::zero(n, n), QVector::zero(n), b)
    }

    pub fn n(&self) -> usize {
        self.x.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.a_mat.is_zero() && self.x.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        ParabolicElement {
            a: &self.a + &other.a,
            a_mat: self.a_mat.add(&other.a_mat),
            x: self.x.add(&other.x),
            b: &self.b + &other.b,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ParabolicElement {
            a: &self.a - &other.a,
            a_mat: self.a_mat.sub(&other.a_mat),
            x: self.x.sub(&other.x),
            b: &self.b - &other.b,
        }
    }

    pub fn neg(&self) -> Self {
        ParabolicElement {
            a: -&self.a,
            a_mat: self.a_mat.neg(),
            x: self.x.neg(),
            b: -&self.b,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ParabolicElement {
            a: self.a.scale(s),
            a_mat: self.a_mat.scale(s),
            x: self.x.scale(s),
            b: self.b.scale(s),
        }
    }

    /// The `(n+2)×(n+2)` quaternionic matrix of the element for the space's Gram
    /// matrix (the top row is `-(G·conj(X))ᵗ`).
    pub fn matrix(&self, space: &HermitianSpace) -> QMatrix {
        let n = self.n();
        assert_eq!(n, space.n(), "ambient mismatch");
        let mut m = QMatrix::zero(n + 2, n + 2);
        m.set(0, 0, self.a.clone());
        m.set(n + 1, n + 1, -&self.a.conj());
        m.set(0, n + 1, self.b.clone());
        for t in 0..n {
            let mut acc = Quat::zero();
            for s in 0..n {
                let g = space.gram().get(t, s);
                if !g.is_zero() && !self.x.coords[s].is_zero() {
                    acc = &acc + &(g * &self.x.coords[s].conj());
                }
            }
            m.set(0, 1 + t, -&acc);
            for s in 0..n {
                m.set(1 + t, 1 + s, self.a_mat.get(t, s).clone());
            }
            m.set(1 + t, n + 1, self.x.coords[t].clone());
        }
        m
    }

    /// Realified `(4n+8)×(4n+8)` matrix.
    pub fn realify(&self, space: &HermitianSpace) -> RMatrix {
        self.matrix(space).realify()
    }

    /// Structural bracket, the commutator written on the graded pieces:
    /// `a`-slot `a′a − aa′`; `sp(n)`-slot the `Op`-commutator; translation slot
    /// `conj(a)X′ − conj(a′)X + A·X′ − A′·X`; `b`-slot
    /// `2 Im(b′a) − 2 Im(ba′) + 2 Im g(X, X′)`.
    pub fn bracket(&self, other: &Self, space: &HermitianSpace) -> Self {
        let n = self.n();
        assert_eq!(n, other.n(), "ambient mismatch");
        assert_eq!(n, space.n(), "ambient mismatch");
        let a = &(&other.a * &self.a) - &(&self.a * &other.a);
        let a_mat = self.a_mat.op_commutator(&other.a_mat);
        let x = self
            .x
            .scale_left(&other.a.conj())
            .neg()
            .add(&other.x.scale_left(&self.a.conj()))
            .add(&self.a_mat.op_apply(&other.x))
            .sub(&other.a_mat.op_apply(&self.x));
        let two = Scalar::from_int(2);
        let b = &(&(&other.b * &self.a).im() - &(&self.b * &other.a).im()).scale(&two)
            + &space.inner_g(&self.x, &other.x).im().scale(&two);
        ParabolicElement { a, a_mat, x, b }
    }

    /// The grading pieces `(g₀, g₁, g₂)` of the element: `(a, A, 0, 0)`,
    /// `(0, 0, X, 0)` and `(0, 0, 0, b)`. The grading element `1 ∈ ℝ` satisfies
    /// `[1, u_α] = α·u_α` (checked in tests via the bracket).
    pub fn grading_decompose(&self) -> (Self, Self, Self) {
        let n = self.n();
        (
            ParabolicElement::new(
                n,
                self.a.clone(),
                self.a_mat.clone(),
                QVector::zero(n),
                Quat::zero(),
            ),
            ParabolicElement::from_translation(n, self.x.clone()),
            ParabolicElement::from_b(n, self.b.clone()),
        )
    }

    /// Projection to the similarity algebra of `ℍⁿ`, dropping the `b` slot:
    /// `(a₀ + a₁, A, X, b) ↦ (a₀, a₁ + A, X)`. Surjective with kernel
    /// `{(0,0,0,b)}`, and a Lie homomorphism.
    pub fn f_projection(&self) -> SimilarityElement {
        SimilarityElement {
            a0: self.a.c0.clone(),
            a1: self.a.im(),
            a_mat: self.a_mat.clone(),
            x: self.x.clone(),
        }
    }

    /// Flat coefficient vector over the structural slots, for span arithmetic.
    pub fn flatten(&self) -> Vec<Scalar> {
        let n = self.n();
        let mut out = Vec::with_capacity(4 + 4 * n * n + 4 * n + 4);
        out.extend(self.a.components().into_iter().cloned());
        for i in 0..n {
            for j in 0..n {
                out.extend(self.a_mat.get(i, j).components().into_iter().cloned());
            }
        }
        out.extend(self.x.to_real());
        out.extend(self.b.components().into_iter().cloned());
        out
    }

    /// Dimension of the flattened coefficient space for ambient `ℍⁿ`.
    pub fn flat_len(n: usize) -> usize {
        8 + 4 * n * n + 4 * n
    }
}

impl std::fmt::Debug for ParabolicElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(a={}, A={:?}, X={:?}, b={})",
            self.a, self.a_mat, self.x, self.b
        )
    }
}

/// An element `(a₀, a₁ + A, X)` of the similarity algebra
/// `ℝ ⊕ (sp(1) ⊕ sp(n)) ⋉ ℍⁿ`, the image of [`ParabolicElement::f_projection`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimilarityElement {
    pub a0: Scalar,
    pub a1: Quat,
    pub a_mat: QMatrix,
    pub x: QVector,
}

impl SimilarityElement {
    /// Induced bracket: the parabolic bracket with the `b` slot discarded.
    pub fn bracket(&self, other: &Self, space: &HermitianSpace) -> Self {
        let n = space.n();
        let lift = |e: &SimilarityElement| {
            ParabolicElement::new(
                n,
                &Quat::real(e.a0.clone()) + &e.a1,
                e.a_mat.clone(),
                e.x.clone(),
                Quat::zero(),
            )
        };
        lift(self).bracket(&lift(other), space).f_projection()
    }
}

// ---------------------------------------------------------------------------
// sp(n) basis
// ---------------------------------------------------------------------------

/// Exact `ℝ`-basis of `sp(n)` for the given Gram matrix: matrices `A` with
/// `Aᵗ·G + G·conj(A) = 0`, i.e. `g(Op(A)X, Y) + g(X, Op(A)Y) = 0`. For the
/// identity Gram the dimension is `n(2n+1)`.
pub fn sp_basis(n: usize, gram: &QMatrix) -> Result<Vec<QMatrix>> {
    if gram.nrows() != n || gram.ncols() != n {
        return Err(Error::Dimension(format!(
            "Gram matrix must be {n}x{n} for sp(n)"
        )));
    }
    for i in 0..n {
        for j in 0..n {
            if gram.get(i, j).conj() != *gram.get(j, i) {
                return Err(Error::NotHermitian(i, j));
            }
        }
    }
    // unknowns: the 4n² real components of A
    let unknowns = 4 * n * n;
    let comp_index = |s: usize, t: usize, u: usize| (s * n + t) * 4 + u;
    let mut rows = Vec::with_capacity(unknowns);
    for i in 0..n {
        for j in 0..n {
            for comp in 0..4 {
                // entry (i,j), component comp of Aᵗ·G + G·conj(A)
                let mut row: Vec<(u32, Scalar)> = Vec::new();
                for s in 0..n {
                    for u in 0..4 {
                        // d/dA[s][i]_u of (A[s][i]·G[s][j])
                        let c1 = &Quat::unit(u) * gram.get(s, j);
                        let v1 = c1.component(comp);
                        if !v1.is_zero() {
                            row.push((comp_index(s, i, u) as u32, v1.clone()));
                        }
                        // d/dA[s][j]_u of (G[i][s]·conj(A[s][j]))
                        let c2 = gram.get(i, s) * &Quat::unit(u).conj();
                        let v2 = c2.component(comp);
                        if !v2.is_zero() {
                            row.push((comp_index(s, j, u) as u32, v2.clone()));
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    let ns = echelon(rows, unknowns).nullspace();
    let mut basis = Vec::with_capacity(ns.len());
    for sol in ns {
        let mut m = QMatrix::zero(n, n);
        for s in 0..n {
            for t in 0..n {
                m.set(
                    s,
                    t,
                    Quat::new(
                        sol[comp_index(s, t, 0)].clone(),
                        sol[comp_index(s, t, 1)].clone(),
                        sol[comp_index(s, t, 2)].clone(),
                        sol[comp_index(s, t, 3)].clone(),
                    ),
                );
            }
        }
        basis.push(m);
    }
    Ok(basis)
}

/// Checks `Aᵗ·G + G·conj(A) = 0` for a single matrix.
pub fn is_sp(a: &QMatrix, gram: &QMatrix) -> bool {
    let n = gram.nrows();
    if a.nrows() != n || a.ncols() != n {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let mut acc = Quat::zero();
            for s in 0..n {
                acc = &acc + &(a.get(s, i) * gram.get(s, j));
                acc = &acc + &(gram.get(i, s) * &a.get(s, j).conj());
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// The standard ordered basis of the full parabolic algebra: the four `a`-units,
/// the `sp(n)` basis, the `4n` translations, then `i, j, k` in the `b` slot.
/// Dimension `7 + 4n + n(2n+1)`.
pub fn parabolic_basis(space: &HermitianSpace) -> Vec<ParabolicElement> {
    let n = space.n();
    let mut out = Vec::new();
    for r in 0..4 {
        out.push(ParabolicElement::from_a(n, Quat::unit(r)));
    }
    for m in sp_basis(n, space.gram()).expect("space Gram is Hermitian") {
        out.push(ParabolicElement::from_mat(n, m));
    }
    for t in 0..n {
        for alpha in 0..4 {
            out.push(ParabolicElement::from_translation(
                n,
                QVector::basis(n, t, Quat::unit(alpha)),
            ));
        }
    }
    for r in 1..4 {
        out.push(ParabolicElement::from_b(n, Quat::unit(r)));
    }
    out
}

/// The grading element `1 ∈ ℝ ⊂ sp(1,n+1)_ℍp`.
pub fn grading_element(n: usize) -> ParabolicElement {
    ParabolicElement::from_a(n, Quat::one())
}

// ---------------------------------------------------------------------------
// Bivector identification
// ---------------------------------------------------------------------------

/// Coefficients of a realified operator over the basis bivectors `e_i ∧ e_j`
/// (`i < j`, lexicographic), under `(u∧v)w = η(u,w)v − η(v,w)u`.
///
/// The operator must be η-skew; the solve is exact and the reconstruction is
/// verified, so a non-representable input is a panic (programmer error).
pub fn to_bivector(space: &HermitianSpace, op: &RMatrix) -> Vec<Scalar> {
    let dim = space.real_dim();
    assert_eq!(op.nrows(), dim, "operator has wrong ambient dimension");
    assert_eq!(op.ncols(), dim, "operator has wrong ambient dimension");
    let eta = space.eta_matrix();
    let pairs = bivector_pairs(dim);
    // Gram system: <e_i∧e_j, e_k∧e_l> c = <op, e_i∧e_j>, using
    // <F, e_i∧e_j> = η(F e_i, e_j).
    let np = pairs.len();
    let mut gram = RMatrix::zero(np, np);
    for (row, &(i, j)) in pairs.iter().enumerate() {
        for (col, &(k, l)) in pairs.iter().enumerate() {
            // η∧η(e_i∧e_j, e_k∧e_l) = η_ik η_jl − η_il η_jk
            let v = &(eta.get(i, k) * eta.get(j, l)) - &(eta.get(i, l) * eta.get(j, k));
            if !v.is_zero() {
                gram.set(row, col, v);
            }
        }
    }
    let rhs: Vec<Scalar> = pairs
        .iter()
        .map(|&(i, j)| {
            let mut acc = Scalar::zero();
            for r in 0..dim {
                let m = op.get(r, i);
                if !m.is_zero() {
                    acc += &(m * eta.get(r, j));
                }
            }
            acc
        })
        .collect();
    let coeffs = solve_dense(&gram, &rhs).expect("eta-wedge-eta Gram is invertible");
    // verify the reconstruction exactly
    let rebuilt = bivector_operator(space, &coeffs);
    assert_eq!(&rebuilt, op, "operator is not induced by a bivector");
    coeffs
}

/// The operator induced by bivector coefficients (inverse of [`to_bivector`]).
pub fn bivector_operator(space: &HermitianSpace, coeffs: &[Scalar]) -> RMatrix {
    let dim = space.real_dim();
    let eta = space.eta_matrix();
    let pairs = bivector_pairs(dim);
    assert_eq!(coeffs.len(), pairs.len(), "coefficient count mismatch");
    let mut out = RMatrix::zero(dim, dim);
    for (c, &(i, j)) in coeffs.iter().zip(pairs.iter()) {
        if c.is_zero() {
            continue;
        }
        // (e_i ∧ e_j)w = η(e_i,w)e_j − η(e_j,w)e_i
        for w in 0..dim {
            let ei_w = eta.get(i, w);
            if !ei_w.is_zero() {
                out.add_to(j, w, &(c * ei_w));
            }
            let ej_w = eta.get(j, w);
            if !ej_w.is_zero() {
                let v = c * ej_w;
                out.add_to(i, w, &-&v);
            }
        }
    }
    out
}

/// All index pairs `(i, j)` with `i < j`, lexicographic.
pub fn bivector_pairs(dim: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(dim * (dim - 1) / 2);
    for i in 0..dim {
        for j in i + 1..dim {
            out.push((i, j));
        }
    }
    out
}

/// Checks that an operator commutes with the three structure operators and is
/// η-skew, i.e. lies in `sp(1,n+1) = {f ∈ so(η) | [f, I_α] = 0}`.
pub fn is_quaternionic_skew(space: &HermitianSpace, op: &RMatrix) -> bool {
    let eta = space.eta_matrix();
    if !op.is_skew_for(&eta) {
        return false;
    }
    let m = space.quat_dim();
    (1..=3).all(|alpha| op.commutator(&structure_matrix(alpha, m)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s1() -> HermitianSpace {
        HermitianSpace::standard(1)
    }

    #[test]
    fn sp_basis_dims() {
        let b = sp_basis(1, &QMatrix::identity(1)).unwrap();
        assert_eq!(b.len(), 3);
        // n=1, G=(1): basis of {Op(i), Op(j), Op(k)} as a span
        for m in &b {
            assert!(m.get(0, 0).is_imaginary());
        }
        let ident = QMatrix::identity(2);
        let b2 = sp_basis(2, &ident).unwrap();
        assert_eq!(b2.len(), 10);
        for m in &b2 {
            assert!(is_sp(m, &ident));
        }
        let gram5 = crate::hermitian::exemplar_gram();
        let b5 = sp_basis(2, &gram5).unwrap();
        assert_eq!(b5.len(), 10);
        for m in &b5 {
            assert!(is_sp(m, &gram5));
        }
    }

    #[test]
    fn sp_condition_via_metric() {
        let sp = HermitianSpace::standard(2);
        for m in sp_basis(2, sp.gram()).unwrap() {
            let a = ParabolicElement::from_mat(2, m.clone());
            let _ = a;
            for t in 0..2 {
                for u in 0..2 {
                    let x = QVector::basis(2, t, Quat::i());
                    let y = QVector::basis(2, u, Quat::one());
                    let lhs = sp.inner_g(&m.op_apply(&x), &y);
                    let rhs = sp.inner_g(&x, &m.op_apply(&y));
                    assert_eq!(&lhs + &rhs, Quat::zero());
                }
            }
        }
    }

    #[test]
    fn bracket_paper_examples() {
        let sp = s1();
        // [(i,0,0,0),(j,0,0,0)] = (ji − ij, 0,0,0) = (−2k,0,0,0)
        let u = ParabolicElement::from_a(1, Quat::i());
        let v = ParabolicElement::from_a(1, Quat::j());
        let w = u.bracket(&v, &sp);
        assert_eq!(w.a, Quat::from_ints(0, 0, 0, -2));
        // [(0,0,e1,0),(0,0,ie1,0)] = (0,0,0,-2i) for G=(1)
        let x = ParabolicElement::from_translation(1, QVector::basis(1, 0, Quat::one()));
        let y = ParabolicElement::from_translation(1, QVector::basis(1, 0, Quat::i()));
        let w = x.bracket(&y, &sp);
        assert!(w.a.is_zero() && w.a_mat.is_zero() && w.x.is_zero());
        assert_eq!(w.b, Quat::from_ints(0, -2, 0, 0));
        // [(1,0,0,b),(0,0,X,c)] = (0,0,X,2c)
        let b = Quat::j();
        let c = Quat::k();
        let u = ParabolicElement::new(1, Quat::one(), QMatrix::zero(1, 1), QVector::zero(1), b);
        let v = ParabolicElement::new(
            1,
            Quat::zero(),
            QMatrix::zero(1, 1),
            QVector::basis(1, 0, Quat::one()),
            c.clone(),
        );
        let w = u.bracket(&v, &sp);
        assert_eq!(w.x, QVector::basis(1, 0, Quat::one()));
        assert_eq!(w.b, c.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn bracket_matches_matrix_commutator() {
        let sp = HermitianSpace::new(2, crate::hermitian::exemplar_gram()).unwrap();
        let basis = parabolic_basis(&sp);
        // a spot check here; the full sweep is the acceptance criterion
        for i in [0usize, 5, 14, 20] {
            for j in [1usize, 8, 17, 24] {
                let lhs = basis[i].bracket(&basis[j], &sp).realify(&sp);
                let rhs = basis[i]
                    .realify(&sp)
                    .commutator(&basis[j].realify(&sp));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn grading_relations() {
        let sp = s1();
        let one = grading_element(1);
        let u = ParabolicElement::new(
            1,
            Quat::from_ints(2, 1, 0, -1),
            QMatrix::from_rows(vec![vec![Quat::i()]]),
            QVector::basis(1, 0, Quat::j()),
            Quat::k(),
        );
        let (g0, g1, g2) = u.grading_decompose();
        assert_eq!(g0.add(&g1).add(&g2), u);
        assert!(one.bracket(&g0, &sp).is_zero());
        assert_eq!(one.bracket(&g1, &sp), g1);
        assert_eq!(one.bracket(&g2, &sp), g2.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn f_projection_formula_and_kernel() {
        let u = ParabolicElement::new(
            1,
            Quat::from_ints(0, 1, 0, 0),
            QMatrix::zero(1, 1),
            QVector::zero(1),
            Quat::j(),
        );
        let f = u.f_projection();
        assert!(f.a0.is_zero());
        assert_eq!(f.a1, Quat::i());
        // kernel: (0,0,0,k) maps to zero
        let v = ParabolicElement::from_b(1, Quat::k());
        let fv = v.f_projection();
        assert!(fv.a0.is_zero() && fv.a1.is_zero() && fv.a_mat.is_zero() && fv.x.is_zero());
    }

    #[test]
    fn f_projection_is_homomorphism() {
        let sp = s1();
        let basis = parabolic_basis(&sp);
        for u in &basis {
            for v in &basis {
                let lhs = u.bracket(v, &sp).f_projection();
                let rhs = u.f_projection().bracket(&v.f_projection(), &sp);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn parabolic_dimension() {
        assert_eq!(parabolic_basis(&s1()).len(), 14);
        assert_eq!(parabolic_basis(&HermitianSpace::standard(2)).len(), 25);
    }

    #[test]
    fn realified_elements_are_quaternionic_skew() {
        let sp = s1();
        for u in parabolic_basis(&sp) {
            assert!(is_quaternionic_skew(&sp, &u.realify(&sp)));
        }
    }

    #[test]
    fn bivector_paper_values() {
        let sp = s1();
        let pairs = bivector_pairs(sp.real_dim());
        let pair_index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
        // (0,0,0,i) -> p∧ip − jp∧kp
        let u = ParabolicElement::from_b(1, Quat::i());
        let c = to_bivector(&sp, &u.realify(&sp));
        let mut expected = vec![Scalar::zero(); pairs.len()];
        expected[pair_index(0, 1)] = Scalar::one();
        expected[pair_index(2, 3)] = -Scalar::one();
        assert_eq!(c, expected);
        // (1,0,0,0) -> −(p∧q + ip∧iq + jp∧jq + kp∧kq)
        let u = ParabolicElement::from_a(1, Quat::one());
        let c = to_bivector(&sp, &u.realify(&sp));
        let mut expected = vec![Scalar::zero(); pairs.len()];
        for r in 0..4 {
            expected[pair_index(sp.p_index(r), sp.q_index(r))] = -Scalar::one();
        }
        assert_eq!(c, expected);
        // zero element -> zero bivector
        let z = ParabolicElement::zero(1);
        assert!(to_bivector(&sp, &z.realify(&sp)).iter().all(Scalar::is_zero));
    }

    #[test]
    fn bivector_roundtrip_on_basis() {
        for sp in [s1(), HermitianSpace::new(2, crate::hermitian::exemplar_gram()).unwrap()] {
            for u in parabolic_basis(&sp) {
                let m = u.realify(&sp);
                let c = to_bivector(&sp, &m);
                assert_eq!(bivector_operator(&sp, &c), m);
            }
        }
    }

    #[test]
    #[should_panic(expected = "ambient mismatch")]
    fn bracket_ambient_mismatch() {
        let sp = s1();
        let u = ParabolicElement::zero(1);
        let v = ParabolicElement::zero(2);
        let _ = u.bracket(&v, &sp);
    }
}
