//! Pseudo-quaternionic-Hermitian spaces `ℍ^{1,n+1}` with a distinguished basis
//! `p, e_1, ..., e_n, q`.
//!
//! The metric satisfies `g(aX,Y) = a·g(X,Y)` and `conj(g(Y,X)) = g(X,Y)`, so
//! `g(X,aY) = g(X,Y)·conj(a)`. The two spanning vectors are isotropic with
//! `g(p,q) = 1`, and `ℍⁿ = span{e_a}` is `g`-orthogonal to `ℍp ⊕ ℍq` with a
//! positive-definite restriction. The real part `η = Re g` is a pseudo-Euclidean
//! metric of signature `(4, 4n+4)` on the realified basis
//! `p, I₁p, I₂p, I₃p, e_1, I₁e_1, ..., I₃e_n, q, I₁q, I₂q, I₃q`.

use crate::linalg::{signature, RMatrix};
use crate::qmatrix::{QMatrix, QVector};
use crate::quat::Quat;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// `ℍ^{1,n+1}` with a fixed Gram matrix on the positive-definite part `ℍⁿ`.
#[derive(Clone, PartialEq, Eq)]
pub struct HermitianSpace {
    n: usize,
    gram: QMatrix,
}

impl HermitianSpace {
    /// Validates that `gram` is Hermitian with positive-definite realification
    /// and fixes it as the Gram matrix of `g` on `ℍⁿ`.
    pub fn new(n: usize, gram: QMatrix) -> Result<Self> {
        if gram.nrows() != n || gram.ncols() != n {
            return Err(Error::Dimension(format!(
                "Gram matrix must be {n}x{n}, got {}x{}",
                gram.nrows(),
                gram.ncols()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if gram.get(i, j).conj() != *gram.get(j, i) {
                    return Err(Error::NotHermitian(i, j));
                }
            }
        }
        let space = HermitianSpace { n, gram };
        let inner = space.inner_eta_matrix();
        if signature(&inner) != (0, 4 * n) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(space)
    }

    /// The space with the standard diagonal metric `g(e_a, e_b) = δ_ab`.
    pub fn standard(n: usize) -> Self {
        HermitianSpace::new(n, QMatrix::identity(n)).expect("identity Gram is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Quaternionic dimension of the full space.
    pub fn quat_dim(&self) -> usize {
        self.n + 2
    }

    /// Real dimension `4n + 8` of the full space.
    pub fn real_dim(&self) -> usize {
        4 * (self.n + 2)
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// Gram matrix of `g` on the full basis `p, e_1, ..., e_n, q`.
    pub fn full_gram(&self) -> QMatrix {
        let n = self.n;
        let mut g = QMatrix::zero(n + 2, n + 2);
        g.set(0, n + 1, Quat::one());
        g.set(n + 1, 0, Quat::one());
        for a in 0..n {
            for b in 0..n {
                g.set(1 + a, 1 + b, self.gram.get(a, b).clone());
            }
        }
        g
    }

    // --- real basis indexing -------------------------------------------------

    /// Real index of `I_r p` (`r = 0` is `p` itself).
    pub fn p_index(&self, r: usize) -> usize {
        debug_assert!(r < 4);
        r
    }

    /// Real index of `I_α e_a` (`a` zero-based, `α = 0..4`).
    pub fn e_index(&self, a: usize, alpha: usize) -> usize {
        debug_assert!(a < self.n && alpha < 4);
        4 + 4 * a + alpha
    }

    /// Real index of `I_r q`.
    pub fn q_index(&self, r: usize) -> usize {
        debug_assert!(r < 4);
        4 * (self.n + 1) + r
    }

    /// Range of real indices covering the `ℍⁿ` block.
    pub fn inner_range(&self) -> std::ops::Range<usize> {
        4..4 + 4 * self.n
    }

    /// The real basis vector of the given index as a full quaternionic vector.
    pub fn basis_vector(&self, idx: usize) -> QVector {
        assert!(idx < self.real_dim(), "basis index out of range");
        QVector::basis(self.n + 2, idx / 4, Quat::unit(idx % 4))
    }

    // --- metric evaluation ---------------------------------------------------

    /// `g(X,Y) = Σ X_t G_{tl} conj(Y_l)` on full-space vectors.
    pub fn eval_g(&self, x: &QVector, y: &QVector) -> Quat {
        assert_eq!(x.dim(), self.n + 2, "eval_g expects full-space vectors");
        assert_eq!(y.dim(), self.n + 2, "eval_g expects full-space vectors");
        let g = self.full_gram();
        let mut acc = Quat::zero();
        for t in 0..self.n + 2 {
            if x.coords[t].is_zero() {
                continue;
            }
            for l in 0..self.n + 2 {
                let gt = g.get(t, l);
                if gt.is_zero() || y.coords[l].is_zero() {
                    continue;
                }
                acc = &acc + &(&(&x.coords[t] * gt) * &y.coords[l].conj());
            }
        }
        acc
    }

    /// `g` restricted to `ℍⁿ` (vectors of quaternionic dimension `n`).
    pub fn inner_g(&self, x: &QVector, y: &QVector) -> Quat {
        assert_eq!(x.dim(), self.n, "inner_g expects H^n vectors");
        assert_eq!(y.dim(), self.n, "inner_g expects H^n vectors");
        let mut acc = Quat::zero();
        for t in 0..self.n {
            if x.coords[t].is_zero() {
                continue;
            }
            for l in 0..self.n {
                let gt = self.gram.get(t, l);
                if gt.is_zero() || y.coords[l].is_zero() {
                    continue;
                }
                acc = &acc + &(&(&x.coords[t] * gt) * &y.coords[l].conj());
            }
        }
        acc
    }

    /// `η(X,Y) = Re g(X,Y)` on full-space vectors.
    pub fn eta(&self, x: &QVector, y: &QVector) -> Scalar {
        self.eval_g(x, y).c0
    }

    /// Recovers the quaternionic metric from its real part:
    /// `g(X,Y) = η(X,Y) + i·η(X,I₁Y) + j·η(X,I₂Y) + k·η(X,I₃Y)`.
    pub fn recover_g_from_eta(&self, x: &QVector, y: &QVector) -> Quat {
        let mut comps = [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
        comps[0] = self.eta(x, y);
        for (alpha, slot) in comps.iter_mut().enumerate().skip(1) {
            let iy = y.scale_left(&Quat::unit(alpha));
            *slot = self.eta(x, &iy);
        }
        let [c0, c1, c2, c3] = comps;
        Quat::new(c0, c1, c2, c3)
    }

    /// Matrix of `η` over the full real basis.
    pub fn eta_matrix(&self) -> RMatrix {
        let dim = self.real_dim();
        let mut m = RMatrix::zero(dim, dim);
        let vecs: Vec<QVector> = (0..dim).map(|i| self.basis_vector(i)).collect();
        for i in 0..dim {
            for j in i..dim {
                let v = self.eta(&vecs[i], &vecs[j]);
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                    m.set(j, i, v);
                }
            }
        }
        m
    }

    /// Matrix of `η` restricted to the realified `ℍⁿ` block.
    pub fn inner_eta_matrix(&self) -> RMatrix {
        let dim = 4 * self.n;
        let mut m = RMatrix::zero(dim, dim);
        for a in 0..self.n {
            for alpha in 0..4 {
                let x = QVector::basis(self.n, a, Quat::unit(alpha));
                for b in 0..self.n {
                    for beta in 0..4 {
                        let y = QVector::basis(self.n, b, Quat::unit(beta));
                        let v = self.inner_g(&x, &y).c0;
                        if !v.is_zero() {
                            m.set(4 * a + alpha, 4 * b + beta, v);
                        }
                    }
                }
            }
        }
        m
    }

    /// Signature `(negative, positive)` of `η` on the full space.
    pub fn signature(&self) -> (usize, usize) {
        signature(&self.eta_matrix())
    }
}

// ---------------------------------------------------------------------------
// Gram matrices from the admissible block forms
// ---------------------------------------------------------------------------

/// Block forms defining an admissible Gram matrix on `ℍⁿ`:
/// identity on the first `m` indices; `δ + i·w₁ + j·w₂ + k·w₃` on the next `m1`;
/// `δ + w·j` with a complex skew `w` on the next `m2`; and
/// `η + i·Ω₁ + j·Ω₂ + k·Ω₃` on the rest. Omitted forms default to zero and the
/// remaining symmetric part to the identity.
pub struct GramForms {
    pub m: usize,
    pub m1: usize,
    pub m2: usize,
    pub w: [Option<RMatrix>; 3],
    /// Complex skew form on the `ℂ^{m2}` block as `(real, imaginary)` parts.
    pub w_complex: Option<(RMatrix, RMatrix)>,
    pub eta_rest: Option<RMatrix>,
    pub omega: [Option<RMatrix>; 3],
}

impl GramForms {
    /// All skew parts zero: the standard diagonal metric in every block.
    pub fn diagonal(m: usize, m1: usize, m2: usize) -> Self {
        GramForms {
            m,
            m1,
            m2,
            w: [None, None, None],
            w_complex: None,
            eta_rest: None,
            omega: [None, None, None],
        }
    }
}

fn check_skew(m: &RMatrix, dim: usize, name: &str) -> Result<()> {
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::Dimension(format!(
            "form {name} must be {dim}x{dim}, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    for i in 0..dim {
        for j in 0..dim {
            if *m.get(i, j) != -m.get(j, i) {
                return Err(Error::InvalidParameter(format!(
                    "form {name} is not skew-symmetric at ({i},{j})"
                )));
            }
        }
    }
    Ok(())
}

/// Builds the Gram matrix determined by the block forms. The result still has to
/// pass [`HermitianSpace::new`], which checks positive definiteness.
pub fn gram_from_forms(n: usize, forms: &GramForms) -> Result<QMatrix> {
    let (m, m1, m2) = (forms.m, forms.m1, forms.m2);
    if m + m1 + m2 > n {
        return Err(Error::SubspaceParameter(format!(
            "m + m1 + m2 = {} exceeds n = {n}",
            m + m1 + m2
        )));
    }
    let rest = n - m - m1 - m2;
    let mut g = QMatrix::identity(n);
    for (alpha, w) in forms.w.iter().enumerate() {
        if let Some(w) = w {
            check_skew(w, m1, &format!("w{}", alpha + 1))?;
            for a in 0..m1 {
                for b in 0..m1 {
                    if !w.get(a, b).is_zero() {
                        let mut q = g.get(m + a, m + b).clone();
                        q = &q + &Quat::unit(alpha + 1).scale(w.get(a, b));
                        g.set(m + a, m + b, q);
                    }
                }
            }
        }
    }
    if let Some((re, im)) = &forms.w_complex {
        check_skew(re, m2, "Re w")?;
        check_skew(im, m2, "Im w")?;
        let off = m + m1;
        for a in 0..m2 {
            for b in 0..m2 {
                // (x + yi)·j = x·j + y·k
                let x = re.get(a, b);
                let y = im.get(a, b);
                if !x.is_zero() || !y.is_zero() {
                    let mut q = g.get(off + a, off + b).clone();
                    q = &q + &Quat::new(Scalar::zero(), Scalar::zero(), x.clone(), y.clone());
                    g.set(off + a, off + b, q);
                }
            }
        }
    }
    let off = m + m1 + m2;
    if let Some(eta) = &forms.eta_rest {
        if eta.nrows() != rest || eta.ncols() != rest {
            return Err(Error::Dimension(format!(
                "eta_rest must be {rest}x{rest}"
            )));
        }
        for a in 0..rest {
            for b in 0..rest {
                if *eta.get(a, b) != *eta.get(b, a) {
                    return Err(Error::InvalidParameter(
                        "eta_rest is not symmetric".into(),
                    ));
                }
                g.set(off + a, off + b, Quat::real(eta.get(a, b).clone()));
            }
        }
    }
    for (alpha, om) in forms.omega.iter().enumerate() {
        if let Some(om) = om {
            check_skew(om, rest, &format!("Omega{}", alpha + 1))?;
            for a in 0..rest {
                for b in 0..rest {
                    if !om.get(a, b).is_zero() {
                        let mut q = g.get(off + a, off + b).clone();
                        q = &q + &Quat::unit(alpha + 1).scale(om.get(a, b));
                        g.set(off + a, off + b, q);
                    }
                }
            }
        }
    }
    Ok(g)
}

/// The Gram matrix `[[1, -k/2], [k/2, 1]]` of the symmetric exemplar at `n = 2`.
pub fn exemplar_gram() -> QMatrix {
    let half = Scalar::ratio(1, 2);
    QMatrix::from_rows(vec![
        vec![Quat::one(), Quat::k().scale(&-&half)],
        vec![Quat::k().scale(&half), Quat::one()],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_space_metric() {
        let sp = HermitianSpace::standard(1);
        let e1 = sp.basis_vector(sp.e_index(0, 0));
        assert_eq!(sp.eval_g(&e1, &e1), Quat::one());
        assert_eq!(sp.signature(), (4, 8));
    }

    #[test]
    fn exemplar_gram_accepted() {
        let sp = HermitianSpace::new(2, exemplar_gram()).unwrap();
        assert_eq!(signature(&sp.inner_eta_matrix()), (0, 8));
        assert_eq!(sp.signature(), (4, 12));
        // g(e1, e2) = -k/2 recovered from eta
        let e1 = sp.basis_vector(sp.e_index(0, 0));
        let e2 = sp.basis_vector(sp.e_index(1, 0));
        assert_eq!(
            sp.recover_g_from_eta(&e1, &e2),
            Quat::k().scale(&Scalar::ratio(-1, 2))
        );
    }

    #[test]
    fn case3_gram_forced_form() {
        // n=2 with m=m1=0, m2=2, w12 = 1: the formula forces G = [[1, j], [-j, 1]]
        let mut forms = GramForms::diagonal(0, 0, 2);
        let mut re = RMatrix::zero(2, 2);
        re.set(0, 1, Scalar::one());
        re.set(1, 0, -Scalar::one());
        forms.w_complex = Some((re, RMatrix::zero(2, 2)));
        let g = gram_from_forms(2, &forms).unwrap();
        assert_eq!(*g.get(0, 1), Quat::j());
        assert_eq!(*g.get(1, 0), -&Quat::j());
        // w12 = 1 sits on the boundary: g(e1 - je2, e1 - je2) = 0, so the
        // realification is only semi-definite and the space is rejected
        assert!(matches!(
            HermitianSpace::new(2, g),
            Err(Error::NotPositiveDefinite)
        ));
        // a strictly admissible value passes
        let mut forms = GramForms::diagonal(0, 0, 2);
        let mut re = RMatrix::zero(2, 2);
        re.set(0, 1, Scalar::ratio(1, 2));
        re.set(1, 0, Scalar::ratio(-1, 2));
        forms.w_complex = Some((re, RMatrix::zero(2, 2)));
        let g = gram_from_forms(2, &forms).unwrap();
        assert!(HermitianSpace::new(2, g).is_ok());
    }

    #[test]
    fn isotropic_pairing() {
        let sp = HermitianSpace::standard(2);
        let p = sp.basis_vector(sp.p_index(0));
        let q = sp.basis_vector(sp.q_index(0));
        assert_eq!(sp.eval_g(&p, &p), Quat::zero());
        assert_eq!(sp.eval_g(&q, &q), Quat::zero());
        assert_eq!(sp.eval_g(&p, &q), Quat::one());
    }

    #[test]
    fn sesquilinearity() {
        let sp = HermitianSpace::standard(1);
        let e1 = sp.basis_vector(sp.e_index(0, 0));
        let ie1 = e1.scale_left(&Quat::i());
        // g(e1, i e1) = g(e1,e1)·conj(i) = -i
        assert_eq!(sp.eval_g(&e1, &ie1), -&Quat::i());
        assert_eq!(sp.recover_g_from_eta(&e1, &ie1), -&Quat::i());
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut g = QMatrix::identity(2);
        g.set(0, 1, Quat::i());
        g.set(1, 0, Quat::i()); // should be -i
        assert!(matches!(
            HermitianSpace::new(2, g),
            Err(Error::NotHermitian(_, _))
        ));
    }

    #[test]
    fn rejects_indefinite() {
        let g = QMatrix::from_rows(vec![vec![Quat::real(Scalar::from_int(-1))]]);
        assert!(matches!(
            HermitianSpace::new(1, g),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn exemplar_gram_entry_from_eta() {
        // spec example: X=e1, Y=e2 with the section-5 Gram gives -k/2
        let sp = HermitianSpace::new(2, exemplar_gram()).unwrap();
        let x = sp.basis_vector(sp.e_index(0, 0));
        let y = sp.basis_vector(sp.e_index(1, 0));
        assert_eq!(sp.eval_g(&x, &y), Quat::k().scale(&Scalar::ratio(-1, 2)));
    }
}
