//! The parametric form of curvature tensors of the parabolic algebra.
//!
//! A tensor is determined by free data `C₀₁, C₀₂ ∈ ℍ`, `A₀₁, A₀₂, A₀₃ ∈ sp(n)`,
//! `S₀₁, S₀₂ ∈ ℍⁿ`, `R′ ∈ R(sp(n))`, `P₀ ∈ P(sp(n))` and `d₁..d₅ ∈ ℝ`; every
//! other component is derived:
//!
//! ```text
//! C₀₃ = C₀₂·i − C₀₁·j          C_{rs} = C₀ᵣ·u_s − C₀ₛ·u_r   (right products)
//! D₀₁ = d₁i+d₂j+d₃k, D₀₂ = d₂i+d₄j+d₅k, D₀₃ = j·D₀₁ − i·D₀₂
//! D_{rs} = u_r·D₀ₛ − u_s·D₀ᵣ                                (left products)
//! A₂₃ = −A₀₁, A₁₃ = A₀₂, A₁₂ = −A₀₃
//! T₀ = −½(I₁A₀₁ + I₂A₀₂ + I₃A₀₃),  T_s = I_sT₀ − A₀ₛ
//! P_s = −P₀∘I_s,  L(X,Y) = P₀(Y)X − P₀(X)Y
//! B_{r0} = ½(u₁u_rC₀₁ + u₂u_rC₀₂ + u₃u_rC₀₃),  B_{rs} = u_rC₀ₛ + u_s·B_{r0}
//! τ(X,Y) = g(Y,T₀X) − g(X,T₀Y)
//! S₀₃ = j·S₀₁ − i·S₀₂,  S_{rs} = u_r·S₀ₛ − u_s·S₀ᵣ
//! θ₀(X) = ½(u₁·g(X,S₀₁) + u₂·g(X,S₀₂) + u₃·g(X,S₀₃)),  θ_s(X) = g(X,S₀ₛ) + u_s·θ₀(X)
//! ```
//!
//! and the tensor fills `R(I_rp, I_sq) = (0,0,0,B_{rs})`,
//! `R(I_sq, X) = (0, P_s(X), T_s(X), θ_s(X))`, `R(X,Y) = (0, R′(X,Y), L(X,Y), τ(X,Y))`,
//! `R(I_rq, I_sq) = (C_{rs}, A_{rs}, S_{rs}, D_{rs})`, with
//! `R(I_rp, I_sp) = R(I_rp, X) = 0`.

use crate::curvature::{CurvatureTensor, PTensor};
use crate::hermitian::HermitianSpace;
use crate::linalg::{rank_dense, RMatrix};
use crate::parabolic::{is_sp, sp_basis, ParabolicElement};
use crate::qmatrix::{structure_matrix, QMatrix, QVector};
use crate::quat::Quat;
use crate::scalar::Scalar;
use crate::solver::{solve_p, solve_r};
use crate::{Error, Result};

/// Free parameters of a parabolic curvature tensor. `rprime` is a curvature
/// tensor of `sp(n)` on the realified `ℍⁿ` (ambient dimension `4n`), `p0` a
/// cyclically traceless `sp(n)`-valued one-form.
#[derive(Clone)]
pub struct CurvatureParams {
    pub c01: Quat,
    pub c02: Quat,
    pub a01: QMatrix,
    pub a02: QMatrix,
    pub a03: QMatrix,
    pub s01: QVector,
    pub s02: QVector,
    pub rprime: Option<CurvatureTensor>,
    pub p0: Option<PTensor>,
    pub d: [Scalar; 5],
}

impl CurvatureParams {
    pub fn zero(n: usize) -> Self {
        CurvatureParams {
            c01: Quat::zero(),
            c02: Quat::zero(),
            a01: QMatrix::zero(n, n),
            a02: QMatrix::zero(n, n),
            a03: QMatrix::zero(n, n),
            s01: QVector::zero(n),
            s02: QVector::zero(n),
            rprime: None,
            p0: None,
            d: [
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
            ],
        }
    }

    pub fn n(&self) -> usize {
        self.s01.dim()
    }

    /// Names of the nonzero free components, for certificates.
    pub fn nonzero_components(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.c01.is_zero() {
            out.push("C01");
        }
        if !self.c02.is_zero() {
            out.push("C02");
        }
        if !self.a01.is_zero() {
            out.push("A01");
        }
        if !self.a02.is_zero() {
            out.push("A02");
        }
        if !self.a03.is_zero() {
            out.push("A03");
        }
        if !self.s01.is_zero() {
            out.push("S01");
        }
        if !self.s02.is_zero() {
            out.push("S02");
        }
        if self.rprime.as_ref().is_some_and(|t| !t.is_zero()) {
            out.push("Rprime");
        }
        if self.p0.as_ref().is_some_and(|p| !p.is_zero()) {
            out.push("P0");
        }
        if self.d.iter().any(|x| !x.is_zero()) {
            out.push("D");
        }
        out
    }

    /// `S₀₃ = j·S₀₁ − i·S₀₂`.
    pub fn s03(&self) -> QVector {
        self.s01
            .scale_left(&Quat::j())
            .sub(&self.s02.scale_left(&Quat::i()))
    }

    /// `S₀ₛ` for `s = 1..=3`, and `S_{rs} = u_r·S₀ₛ − u_s·S₀ᵣ` in general.
    pub fn s(&self, r: usize, s: usize) -> QVector {
        let s0 = |t: usize| -> QVector {
            match t {
                1 => self.s01.clone(),
                2 => self.s02.clone(),
                3 => self.s03(),
                _ => QVector::zero(self.n()),
            }
        };
        match (r, s) {
            (r, s) if r == s => QVector::zero(self.n()),
            (0, s) => s0(s),
            (r, 0) => s0(r).neg(),
            (r, s) => s0(s)
                .scale_left(&Quat::unit(r))
                .sub(&s0(r).scale_left(&Quat::unit(s))),
        }
    }

    fn c0(&self, s: usize) -> Quat {
        match s {
            1 => self.c01.clone(),
            2 => self.c02.clone(),
            3 => &(&self.c02 * &Quat::i()) - &(&self.c01 * &Quat::j()),
            _ => Quat::zero(),
        }
    }

    /// `C_{rs}`, with right quaternion products for `r,s ≠ 0`.
    pub fn c(&self, r: usize, s: usize) -> Quat {
        match (r, s) {
            (r, s) if r == s => Quat::zero(),
            (0, s) => self.c0(s),
            (r, 0) => -&self.c0(r),
            (r, s) => &(&self.c0(r) * &Quat::unit(s)) - &(&self.c0(s) * &Quat::unit(r)),
        }
    }

    fn d0(&self, s: usize) -> Quat {
        let [d1, d2, d3, d4, d5] = &self.d;
        match s {
            1 => Quat::new(Scalar::zero(), d1.clone(), d2.clone(), d3.clone()),
            2 => Quat::new(Scalar::zero(), d2.clone(), d4.clone(), d5.clone()),
            3 => &(&Quat::j() * &self.d0(1)) - &(&Quat::i() * &self.d0(2)),
            _ => Quat::zero(),
        }
    }

    /// `D_{rs}`, with left quaternion products for `r,s ≠ 0`.
    pub fn d_value(&self, r: usize, s: usize) -> Quat {
        match (r, s) {
            (r, s) if r == s => Quat::zero(),
            (0, s) => self.d0(s),
            (r, 0) => -&self.d0(r),
            (r, s) => &(&Quat::unit(r) * &self.d0(s)) - &(&Quat::unit(s) * &self.d0(r)),
        }
    }

    fn a0(&self, s: usize) -> QMatrix {
        match s {
            1 => self.a01.clone(),
            2 => self.a02.clone(),
            3 => self.a03.clone(),
            _ => QMatrix::zero(self.n(), self.n()),
        }
    }

    /// `A_{rs}`: `A₂₃ = −A₀₁`, `A₁₃ = A₀₂`, `A₁₂ = −A₀₃`, antisymmetric.
    pub fn a(&self, r: usize, s: usize) -> QMatrix {
        match (r, s) {
            (r, s) if r == s => QMatrix::zero(self.n(), self.n()),
            (0, s) => self.a0(s),
            (r, 0) => self.a0(r).neg(),
            (2, 3) => self.a01.neg(),
            (3, 2) => self.a01.clone(),
            (1, 3) => self.a02.clone(),
            (3, 1) => self.a02.neg(),
            (1, 2) => self.a03.neg(),
            (2, 1) => self.a03.clone(),
            _ => unreachable!(),
        }
    }

    /// `B_{r0} = ½(u₁u_rC₀₁ + u₂u_rC₀₂ + u₃u_rC₀₃)`; `B_{rs} = u_rC₀ₛ + u_s·B_{r0}`.
    pub fn b(&self, r: usize, s: usize) -> Quat {
        let ur = Quat::unit(r);
        let mut br0 = Quat::zero();
        for alpha in 1..4 {
            br0 = &br0 + &(&(&Quat::unit(alpha) * &ur) * &self.c0(alpha));
        }
        let br0 = br0.scale(&Scalar::ratio(1, 2));
        if s == 0 {
            br0
        } else {
            &(&ur * &self.c0(s)) + &(&Quat::unit(s) * &br0)
        }
    }

    /// `θ₀(X) = ½(u₁·g(X,S₀₁) + u₂·g(X,S₀₂) + u₃·g(X,S₀₃))`;
    /// `θ_s(X) = g(X,S₀ₛ) + u_s·θ₀(X)` for `s ≠ 0`.
    pub fn theta(&self, space: &HermitianSpace, s: usize, x: &QVector) -> Quat {
        let mut th0 = Quat::zero();
        for alpha in 1..4 {
            let g = space.inner_g(x, &self.s(0, alpha));
            th0 = &th0 + &(&Quat::unit(alpha) * &g);
        }
        let th0 = th0.scale(&Scalar::ratio(1, 2));
        if s == 0 {
            th0
        } else {
            &space.inner_g(x, &self.s(0, s)) + &(&Quat::unit(s) * &th0)
        }
    }

    /// `T₀ = −½(I₁A₀₁ + I₂A₀₂ + I₃A₀₃)` as a real operator on `ℝ^{4n}`.
    pub fn t0_matrix(&self, n: usize) -> RMatrix {
        let mut t0 = RMatrix::zero(4 * n, 4 * n);
        for alpha in 1..4 {
            let part = structure_matrix(alpha, n).mul(&self.a0(alpha).realify());
            t0 = t0.sub(&part.scale(&Scalar::ratio(1, 2)));
        }
        t0
    }

    /// `T_s = I_s∘T₀ − A₀ₛ` for `s ≠ 0` (equals `−T₀∘I_s`).
    pub fn t_matrix(&self, n: usize, s: usize) -> RMatrix {
        let t0 = self.t0_matrix(n);
        if s == 0 {
            t0
        } else {
            structure_matrix(s, n).mul(&t0).sub(&self.a0(s).realify())
        }
    }
}

/// Validates the free data and assembles the full curvature tensor.
pub fn construct_curvature(
    params: &CurvatureParams,
    space: &HermitianSpace,
) -> Result<CurvatureTensor> {
    let n = space.n();
    if params.n() != n || params.s02.dim() != n {
        return Err(Error::AmbientMismatch);
    }
    for (name, a) in [
        ("A01", &params.a01),
        ("A02", &params.a02),
        ("A03", &params.a03),
    ] {
        if a.nrows() != n || a.ncols() != n || !is_sp(a, space.gram()) {
            return Err(Error::InvalidParameter(format!("{name} is not in sp(n)")));
        }
    }
    if let Some(rp) = &params.rprime {
        if rp.dim() != 4 * n {
            return Err(Error::InvalidParameter(
                "Rprime must live on the realified H^n".into(),
            ));
        }
        if rp.bianchi_violation().is_some() {
            return Err(Error::InvalidParameter(
                "Rprime fails the Bianchi identity".into(),
            ));
        }
        let eta_inner = space.inner_eta_matrix();
        for m in rp.values() {
            if !m.is_skew_for(&eta_inner) {
                return Err(Error::InvalidParameter(
                    "Rprime has a value outside so(eta)".into(),
                ));
            }
            // values must commute with the structure operators, i.e. lie in sp(n)
            let q = unrealify_checked(m, n)?;
            if !is_sp(&q, space.gram()) {
                return Err(Error::InvalidParameter(
                    "Rprime has a value outside sp(n)".into(),
                ));
            }
        }
    }
    if let Some(p0) = &params.p0 {
        if p0.n() != n {
            return Err(Error::AmbientMismatch);
        }
        for v in p0.values() {
            if !is_sp(v, space.gram()) {
                return Err(Error::InvalidParameter("P0 has a value outside sp(n)".into()));
            }
        }
        if !p0.cyclic_condition_holds(space) {
            return Err(Error::InvalidParameter(
                "P0 fails the cyclic trace condition".into(),
            ));
        }
    }

    let dim = space.real_dim();
    let npairs = dim * (dim - 1) / 2;
    let mut values = vec![ParabolicElement::zero(n); npairs];
    let tensor_index = |i: usize, j: usize| i * dim - i * (i + 1) / 2 + (j - i - 1);

    // R(I_r p, I_s q) = (0,0,0,B_{rs})
    for r in 0..4 {
        for s in 0..4 {
            let idx = tensor_index(space.p_index(r), space.q_index(s));
            values[idx] = ParabolicElement::from_b(n, params.b(r, s));
        }
    }
    // R(X, I_s q) = -R(I_s q, X) = -(0, P_s(X), T_s(X), θ_s(X))
    let t_mats: Vec<RMatrix> = (0..4).map(|s| params.t_matrix(n, s)).collect();
    for x_idx in space.inner_range() {
        let local = x_idx - 4;
        let mut x_real = vec![Scalar::zero(); 4 * n];
        x_real[local] = Scalar::one();
        let xq = QVector::from_real(&x_real);
        for s in 0..4 {
            let ps_x = match (&params.p0, s) {
                (None, _) => QMatrix::zero(n, n),
                (Some(p0), 0) => p0.evaluate(&x_real),
                (Some(p0), s) => {
                    let isx = structure_matrix(s, n).mul_vec(&x_real);
                    p0.evaluate(&isx).neg()
                }
            };
            let ts_x = QVector::from_real(&t_mats[s].mul_vec(&x_real));
            let theta_s = params.theta(space, s, &xq);
            let el = ParabolicElement::new(n, Quat::zero(), ps_x, ts_x, theta_s);
            let idx = tensor_index(x_idx, space.q_index(s));
            values[idx] = el.neg();
        }
    }
    // R(X, Y) = (0, R'(X,Y), L(X,Y), τ(X,Y)) on the inner block
    let t0 = &t_mats[0];
    for x_idx in space.inner_range() {
        for y_idx in space.inner_range() {
            if y_idx <= x_idx {
                continue;
            }
            let (lx, ly) = (x_idx - 4, y_idx - 4);
            let mut x_real = vec![Scalar::zero(); 4 * n];
            x_real[lx] = Scalar::one();
            let mut y_real = vec![Scalar::zero(); 4 * n];
            y_real[ly] = Scalar::one();
            let xq = QVector::from_real(&x_real);
            let yq = QVector::from_real(&y_real);
            let rp_val = match &params.rprime {
                None => QMatrix::zero(n, n),
                Some(rp) => unrealify_checked(&rp.value(lx, ly), n)?,
            };
            let l_val = match &params.p0 {
                None => QVector::zero(n),
                Some(p0) => {
                    let p0y = p0.evaluate(&y_real).realify();
                    let p0x = p0.evaluate(&x_real).realify();
                    QVector::from_real(&crate::linalg::vec_sub(
                        &p0y.mul_vec(&x_real),
                        &p0x.mul_vec(&y_real),
                    ))
                }
            };
            let t0x = QVector::from_real(&t0.mul_vec(&x_real));
            let t0y = QVector::from_real(&t0.mul_vec(&y_real));
            let tau = &space.inner_g(&yq, &t0x) - &space.inner_g(&xq, &t0y);
            let idx = tensor_index(x_idx, y_idx);
            values[idx] = ParabolicElement::new(n, Quat::zero(), rp_val, l_val, tau);
        }
    }
    // R(I_r q, I_s q) = (C_{rs}, A_{rs}, S_{rs}, D_{rs})
    for r in 0..4 {
        for s in r + 1..4 {
            let idx = tensor_index(space.q_index(r), space.q_index(s));
            values[idx] = ParabolicElement::new(
                n,
                params.c(r, s),
                params.a(r, s),
                params.s(r, s),
                params.d_value(r, s),
            );
        }
    }
    // p∧p and p∧X slots stay zero.

    CurvatureTensor::from_values(dim, values.into_iter().map(|e| e.realify(space)).collect())
}

fn unrealify_checked(m: &RMatrix, n: usize) -> Result<QMatrix> {
    // unrealify panics on a wrong pattern; pre-check cheaply instead
    let q = {
        let mut out = QMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(
                    i,
                    j,
                    Quat::new(
                        m.get(4 * i, 4 * j).clone(),
                        m.get(4 * i + 1, 4 * j).clone(),
                        m.get(4 * i + 2, 4 * j).clone(),
                        m.get(4 * i + 3, 4 * j).clone(),
                    ),
                );
            }
        }
        out
    };
    if q.realify() != *m {
        return Err(Error::InvalidParameter(
            "matrix is not quaternionic (fails the Op block pattern)".into(),
        ));
    }
    Ok(q)
}

/// The four contraction identities tying the derived components together:
/// `η(L(Y,Z),X) = η(P₀(X)Y,Z)`, `η(I_rτ(X,Y)p, I_sq) = η(A_{rs}X,Y)`,
/// `η(I_rθ_s(X)p, I_tq) = η(I_sS_{rt},X)`, and
/// `η(I_tB_{rs}p, I_t₁q) = η(I_rC_{tt₁}p, I_sq)`. All verified exactly over
/// every basis tuple; returns the first failing identity name.
pub fn contraction_identity_violation(
    params: &CurvatureParams,
    space: &HermitianSpace,
) -> Option<&'static str> {
    let n = space.n();
    let dim_inner = 4 * n;
    let eta_inner = space.inner_eta_matrix();
    // η(a·p, b·q) = Re(a·conj(b)) for quaternions a, b
    let eta_pq = |a: &Quat, b: &Quat| -> Scalar { (a * &b.conj()).c0 };
    let t0 = params.t0_matrix(n);

    // 1. η(L(Y,Z),X) = η(P₀(X)Y,Z)
    for x in 0..dim_inner {
        let mut xr = vec![Scalar::zero(); dim_inner];
        xr[x] = Scalar::one();
        let p0x = match &params.p0 {
            None => RMatrix::zero(dim_inner, dim_inner),
            Some(p0) => p0.evaluate(&xr).realify(),
        };
        for y in 0..dim_inner {
            let mut yr = vec![Scalar::zero(); dim_inner];
            yr[y] = Scalar::one();
            let p0y = match &params.p0 {
                None => RMatrix::zero(dim_inner, dim_inner),
                Some(p0) => p0.evaluate(&yr).realify(),
            };
            for z in 0..dim_inner {
                let mut zr = vec![Scalar::zero(); dim_inner];
                zr[z] = Scalar::one();
                let p0z = match &params.p0 {
                    None => RMatrix::zero(dim_inner, dim_inner),
                    Some(p0) => p0.evaluate(&zr).realify(),
                };
                // L(Y,Z) = P0(Z)Y − P0(Y)Z
                let l_yz = crate::linalg::vec_sub(&p0z.mul_vec(&yr), &p0y.mul_vec(&zr));
                let lhs = dot_eta(&eta_inner, &l_yz, &xr);
                let rhs = dot_eta(&eta_inner, &p0x.mul_vec(&yr), &zr);
                if lhs != rhs {
                    return Some("eta(L(Y,Z),X) = eta(P0(X)Y,Z)");
                }
            }
        }
    }
    // 2. η(I_r τ(X,Y) p, I_s q) = η(A_{rs}X, Y)
    for x in 0..dim_inner {
        let mut xr = vec![Scalar::zero(); dim_inner];
        xr[x] = Scalar::one();
        let xq = QVector::from_real(&xr);
        for y in 0..dim_inner {
            let mut yr = vec![Scalar::zero(); dim_inner];
            yr[y] = Scalar::one();
            let yq = QVector::from_real(&yr);
            let t0x = QVector::from_real(&t0.mul_vec(&xr));
            let t0y = QVector::from_real(&t0.mul_vec(&yr));
            let tau = &space.inner_g(&yq, &t0x) - &space.inner_g(&xq, &t0y);
            for r in 0..4 {
                for s in 0..4 {
                    let lhs = eta_pq(&(&Quat::unit(r) * &tau), &Quat::unit(s));
                    let ars = params.a(r, s).realify();
                    let rhs = dot_eta(&eta_inner, &ars.mul_vec(&xr), &yr);
                    if lhs != rhs {
                        return Some("eta(I_r tau(X,Y) p, I_s q) = eta(A_rs X, Y)");
                    }
                }
            }
        }
    }
    // 3. η(I_r θ_s(X) p, I_t q) = η(I_s S_{rt}, X)
    for x in 0..dim_inner {
        let mut xr = vec![Scalar::zero(); dim_inner];
        xr[x] = Scalar::one();
        let xq = QVector::from_real(&xr);
        for s in 0..4 {
            let th = params.theta(space, s, &xq);
            for r in 0..4 {
                let lhs_q = &Quat::unit(r) * &th;
                for t in 0..4 {
                    let lhs = eta_pq(&lhs_q, &Quat::unit(t));
                    let srt = params.s(r, t).scale_left(&Quat::unit(s));
                    let rhs = space.inner_g(&srt, &xq).c0;
                    if lhs != rhs {
                        return Some("eta(I_r theta_s(X) p, I_t q) = eta(I_s S_rt, X)");
                    }
                }
            }
        }
    }
    // 4. η(I_t B_{rs} p, I_t₁ q) = η(I_r C_{tt₁} p, I_s q)
    for r in 0..4 {
        for s in 0..4 {
            let brs = params.b(r, s);
            for t in 0..4 {
                for t1 in 0..4 {
                    let lhs = eta_pq(&(&Quat::unit(t) * &brs), &Quat::unit(t1));
                    let rhs = eta_pq(&(&Quat::unit(r) * &params.c(t, t1)), &Quat::unit(s));
                    if lhs != rhs {
                        return Some("eta(I_t B_rs p, I_t1 q) = eta(I_r C_tt1 p, I_s q)");
                    }
                }
            }
        }
    }
    None
}

fn dot_eta(eta: &RMatrix, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (r, av) in a.iter().enumerate() {
        if av.is_zero() {
            continue;
        }
        for (c, bv) in b.iter().enumerate() {
            if !bv.is_zero() {
                acc += &(&(av * eta.get(r, c)) * bv);
            }
        }
    }
    acc
}

/// JSON-facing form of [`CurvatureParams`]; omitted fields default to zero.
#[derive(Clone, serde::Serialize, serde::Deserialize)]
pub struct CurvatureParamsSpec {
    pub n: usize,
    #[serde(default)]
    pub c01: Option<Quat>,
    #[serde(default)]
    pub c02: Option<Quat>,
    #[serde(default)]
    pub a01: Option<QMatrix>,
    #[serde(default)]
    pub a02: Option<QMatrix>,
    #[serde(default)]
    pub a03: Option<QMatrix>,
    #[serde(default)]
    pub s01: Option<Vec<Quat>>,
    #[serde(default)]
    pub s02: Option<Vec<Quat>>,
    #[serde(default)]
    pub d: Option<[Scalar; 5]>,
    #[serde(default)]
    pub rprime: Option<Vec<crate::curvature::TensorRecord>>,
    #[serde(default)]
    pub p0: Option<Vec<QMatrix>>,
}

impl CurvatureParamsSpec {
    pub fn into_params(self) -> Result<CurvatureParams> {
        let n = self.n;
        let mut p = CurvatureParams::zero(n);
        if let Some(v) = self.c01 {
            p.c01 = v;
        }
        if let Some(v) = self.c02 {
            p.c02 = v;
        }
        if let Some(v) = self.a01 {
            p.a01 = v;
        }
        if let Some(v) = self.a02 {
            p.a02 = v;
        }
        if let Some(v) = self.a03 {
            p.a03 = v;
        }
        if let Some(v) = self.s01 {
            p.s01 = QVector::from_coords(v);
        }
        if let Some(v) = self.s02 {
            p.s02 = QVector::from_coords(v);
        }
        if let Some(v) = self.d {
            p.d = v;
        }
        if let Some(records) = self.rprime {
            p.rprime = Some(CurvatureTensor::from_records(4 * n, &records)?);
        }
        if let Some(values) = self.p0 {
            p.p0 = Some(PTensor::from_values(n, values)?);
        }
        if p.s01.dim() != n || p.s02.dim() != n {
            return Err(Error::Dimension("S values must have dim n".into()));
        }
        Ok(p)
    }

    pub fn from_params(params: &CurvatureParams) -> Self {
        CurvatureParamsSpec {
            n: params.n(),
            c01: Some(params.c01.clone()),
            c02: Some(params.c02.clone()),
            a01: Some(params.a01.clone()),
            a02: Some(params.a02.clone()),
            a03: Some(params.a03.clone()),
            s01: Some(params.s01.coords.clone()),
            s02: Some(params.s02.coords.clone()),
            d: Some(params.d.clone()),
            rprime: params.rprime.as_ref().map(|t| t.to_records()),
            p0: params.p0.as_ref().map(|p| p.values().to_vec()),
        }
    }
}

/// One generator per free parameter, with a label: the unit vectors of the
/// parameter space. `R′` and `P₀` directions come from [`solve_r`]/[`solve_p`]
/// over `sp(n)`.
pub fn parametric_basis(space: &HermitianSpace) -> Result<Vec<(String, CurvatureParams)>> {
    let n = space.n();
    let mut out = Vec::new();
    for r in 0..4 {
        let mut p = CurvatureParams::zero(n);
        p.c01 = Quat::unit(r);
        out.push((format!("C01[{r}]"), p));
        let mut p = CurvatureParams::zero(n);
        p.c02 = Quat::unit(r);
        out.push((format!("C02[{r}]"), p));
    }
    let sp_n = sp_basis(n, space.gram())?;
    for (i, a) in sp_n.iter().enumerate() {
        for slot in 1..4 {
            let mut p = CurvatureParams::zero(n);
            match slot {
                1 => p.a01 = a.clone(),
                2 => p.a02 = a.clone(),
                _ => p.a03 = a.clone(),
            }
            out.push((format!("A0{slot}[{i}]"), p));
        }
    }
    for t in 0..n {
        for alpha in 0..4 {
            let mut p = CurvatureParams::zero(n);
            p.s01 = QVector::basis(n, t, Quat::unit(alpha));
            out.push((format!("S01[{t},{alpha}]"), p));
            let mut p = CurvatureParams::zero(n);
            p.s02 = QVector::basis(n, t, Quat::unit(alpha));
            out.push((format!("S02[{t},{alpha}]"), p));
        }
    }
    for idx in 0..5 {
        let mut p = CurvatureParams::zero(n);
        p.d[idx] = Scalar::one();
        out.push((format!("d{}", idx + 1), p));
    }
    let inner_sol = solve_r(
        &sp_n.iter().map(QMatrix::realify).collect::<Vec<_>>(),
        &space.inner_eta_matrix(),
    )?;
    for t in 0..inner_sol.dim() {
        let mut p = CurvatureParams::zero(n);
        p.rprime = Some(inner_sol.tensor(t));
        out.push((format!("Rprime[{t}]"), p));
    }
    for (t, pt) in solve_p(&sp_n, space)?.into_iter().enumerate() {
        let mut p = CurvatureParams::zero(n);
        p.p0 = Some(pt);
        out.push((format!("P0[{t}]"), p));
    }
    Ok(out)
}

/// Exact rank of the parameter-to-tensor map: builds the tensor of every unit
/// parameter and row-reduces the flattened images. Injectivity of the
/// parametrization means the rank equals the parameter count.
pub fn parametric_rank(space: &HermitianSpace) -> Result<(usize, usize)> {
    let basis = parametric_basis(space)?;
    let count = basis.len();
    let mut rows = Vec::with_capacity(count);
    for (_, p) in &basis {
        rows.push(construct_curvature(p, space)?.flatten());
    }
    let ncols = rows.first().map_or(0, Vec::len);
    let rank = rank_dense(rows.iter().map(Vec::as_slice), ncols);
    Ok((count, rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::check_curvature_identities;

    #[test]
    fn zero_params_zero_tensor() {
        let sp = HermitianSpace::standard(1);
        let t = construct_curvature(&CurvatureParams::zero(1), &sp).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn c_derivation_rules() {
        // C01 = 1, all else zero: C03 = −j, C23 = −1, C13 = 0, C12 = j
        let mut p = CurvatureParams::zero(1);
        p.c01 = Quat::one();
        assert_eq!(p.c(0, 3), -&Quat::j());
        assert_eq!(p.c(2, 3), -&Quat::one());
        assert_eq!(p.c(1, 3), Quat::zero());
        assert_eq!(p.c(1, 2), Quat::j());
        // antisymmetry
        assert_eq!(p.c(3, 2), Quat::one());
    }

    #[test]
    fn a_unit_direction_tensor() {
        // A01 = Op(i) at n=1: T0 = −½ I1∘Op(i), A23 = −A01, tensor passes Bianchi
        let sp = HermitianSpace::standard(1);
        let mut p = CurvatureParams::zero(1);
        p.a01 = QMatrix::from_rows(vec![vec![Quat::i()]]);
        let t0 = p.t0_matrix(1);
        let expected = structure_matrix(1, 1)
            .mul(&p.a01.realify())
            .scale(&Scalar::ratio(-1, 2));
        assert_eq!(t0, expected);
        assert_eq!(p.a(2, 3), p.a01.neg());
        let t = construct_curvature(&p, &sp).unwrap();
        let report = check_curvature_identities(&t, &sp);
        assert!(report.all_pass(), "{report:?}");
        assert!(contraction_identity_violation(&p, &sp).is_none());
    }

    #[test]
    fn d_and_s_structure() {
        let mut p = CurvatureParams::zero(2);
        p.d = [
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(-1),
            Scalar::from_int(3),
            Scalar::from_int(2),
        ];
        // D03 = jD01 − iD02 is imaginary and D23 = −D01
        assert!(p.d_value(0, 3).is_imaginary());
        assert_eq!(p.d_value(2, 3), -&p.d_value(0, 1));
        assert_eq!(p.d_value(1, 3), p.d_value(0, 2));
        p.s01 = QVector::basis(2, 0, Quat::one());
        p.s02 = QVector::basis(2, 1, Quat::one()).neg();
        // S03 = jS01 − iS02 = je1 + ie2
        let s03 = p.s03();
        assert_eq!(s03.coords[0], Quat::j());
        assert_eq!(s03.coords[1], Quat::i());
        assert_eq!(p.s(2, 3), p.s(0, 1).neg());
    }

    #[test]
    fn all_unit_tensors_pass_identities_n1() {
        let sp = HermitianSpace::standard(1);
        let basis = parametric_basis(&sp).unwrap();
        assert_eq!(basis.len(), 43);
        for (label, p) in &basis {
            let t = construct_curvature(p, &sp).unwrap();
            let report = check_curvature_identities(&t, &sp);
            assert!(report.all_pass(), "{label}: {report:?}");
            assert!(
                contraction_identity_violation(p, &sp).is_none(),
                "{label} fails a contraction identity"
            );
        }
    }

    #[test]
    fn parametric_rank_is_parameter_count_n1() {
        let sp = HermitianSpace::standard(1);
        let (count, rank) = parametric_rank(&sp).unwrap();
        assert_eq!(count, 43);
        assert_eq!(rank, 43);
    }

    #[test]
    fn rejects_invalid_p0() {
        let sp = HermitianSpace::standard(1);
        let mut vals = vec![QMatrix::zero(1, 1); 4];
        vals[0] = QMatrix::from_rows(vec![vec![Quat::i()]]);
        let bad = PTensor::from_values(1, vals).unwrap();
        let mut p = CurvatureParams::zero(1);
        p.p0 = Some(bad);
        assert!(matches!(
            construct_curvature(&p, &sp),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn rejects_non_sp_a_slot() {
        let sp = HermitianSpace::standard(1);
        let mut p = CurvatureParams::zero(1);
        p.a01 = QMatrix::from_rows(vec![vec![Quat::one()]]);
        assert!(matches!(
            construct_curvature(&p, &sp),
            Err(Error::InvalidParameter(_))
        ));
    }
}
