//! The symmetric-pair condition `ξ·R = 0`, its certificate-producing checker,
//! the `n = 2` exemplar pair, and the `q′ = −½p + X + q` change of basis that
//! eliminates the `D` components.

use rayon::prelude::*;
use serde::Serialize;

use crate::curvature::CurvatureTensor;
use crate::families::Subalgebra;
use crate::hermitian::{exemplar_gram, HermitianSpace};
use crate::linalg::{solve_dense, RMatrix, SpanBuilder};
use crate::parametric::{construct_curvature, CurvatureParams};
use crate::qmatrix::QVector;
use crate::quat::Quat;
use crate::scalar::Scalar;
use crate::subspace::RealSubspace;
use crate::{Error, Result};

/// A candidate symmetric pair: a subalgebra together with a curvature tensor
/// whose images span it.
pub struct SymmetricPair {
    pub algebra: Subalgebra,
    pub tensor: CurvatureTensor,
    /// The defining free data, when the tensor came from the parametric form.
    pub params: Option<CurvatureParams>,
}

/// `(ξ·R)(x,y) = [ξ, R(x,y)] − R(ξx, y) − R(x, ξy)`, evaluated exactly on every
/// basis bivector.
pub fn act_on_r(xi: &RMatrix, tensor: &CurvatureTensor) -> CurvatureTensor {
    let dim = tensor.dim();
    assert_eq!(xi.nrows(), dim, "dimension mismatch");
    assert_eq!(xi.ncols(), dim, "dimension mismatch");
    let pairs = tensor.pairs();
    let values: Vec<RMatrix> = pairs
        .into_iter()
        .map(|(i, j)| {
            let r_ij = tensor.value_at(tensor.pair_index(i, j));
            let commutator = xi.mul(r_ij).sub(&r_ij.mul(xi));
            let xi_col_i: Vec<Scalar> = (0..dim).map(|r| xi.get(r, i).clone()).collect();
            let xi_col_j: Vec<Scalar> = (0..dim).map(|r| xi.get(r, j).clone()).collect();
            let mut e_i = vec![Scalar::zero(); dim];
            e_i[i] = Scalar::one();
            let mut e_j = vec![Scalar::zero(); dim];
            e_j[j] = Scalar::one();
            let r_xix_y = tensor.evaluate(&xi_col_i, &e_j);
            let r_x_xiy = tensor.evaluate(&e_i, &xi_col_j);
            commutator.sub(&r_xix_y).sub(&r_x_xiy)
        })
        .collect();
    CurvatureTensor::from_values(dim, values).expect("shape preserved")
}

/// One entry of a symmetric-pair failure certificate.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymmetryViolation {
    /// `R(e_i, e_j)` does not lie in the algebra.
    ValueOutsideAlgebra { pair: (usize, usize) },
    /// The images of `R` span a proper subspace of the algebra.
    SpanDeficit { span_dim: usize, algebra_dim: usize },
    /// `(ξ·R)(e_i, e_j) ≠ 0` for the given basis element of the algebra.
    ActionNonzero {
        xi_index: usize,
        pair: (usize, usize),
    },
    /// A free component of the parametric form that the symmetric condition
    /// forces to vanish is nonzero.
    ComponentMustVanish { component: String },
}

/// Verdict plus certificate of [`is_symmetric_pair`].
#[derive(Debug, Serialize)]
pub struct SymmetricVerdict {
    pub symmetric: bool,
    pub span_dim: usize,
    pub certificate: Vec<SymmetryViolation>,
}

/// Checks the two symmetric-pair conditions: `span{R(e_i,e_j)} = 𝔤` and
/// `ξ·R = 0` for every basis `ξ`. The tensor must be a curvature tensor of the
/// algebra (values inside `𝔤`, Bianchi identity); that precondition failing is
/// an error, not a negative verdict.
///
/// When the tensor's parametric data is supplied, a failed verdict also names
/// the free components that the symmetry condition eliminates (`C`, `A`, `R′`,
/// `P₀` — the eliminations of the classification proof).
pub fn is_symmetric_pair(
    g: &Subalgebra,
    tensor: &CurvatureTensor,
    params: Option<&CurvatureParams>,
) -> Result<SymmetricVerdict> {
    let space = g.space();
    let dim = space.real_dim();
    if tensor.dim() != dim {
        return Err(Error::AmbientMismatch);
    }
    // precondition: R ∈ R(g)
    let mats = g.realified_basis();
    let mut span = SpanBuilder::new(dim * dim);
    for m in &mats {
        span.insert(&m.flatten());
    }
    for (idx, (i, j)) in tensor.pairs().into_iter().enumerate() {
        let v = tensor.value_at(idx);
        if !v.is_zero() && !span.contains(&v.flatten()) {
            return Err(Error::NotInCurvatureSpace(format!(
                "R(e_{i}, e_{j}) is outside the algebra"
            )));
        }
    }
    if let Some((i, j, k)) = tensor.bianchi_violation() {
        return Err(Error::NotInCurvatureSpace(format!(
            "Bianchi fails on the triple ({i},{j},{k})"
        )));
    }

    let mut certificate = Vec::new();
    // span condition
    let mut image_span = SpanBuilder::new(dim * dim);
    for idx in 0..tensor.values().len() {
        let v = tensor.value_at(idx);
        if !v.is_zero() {
            image_span.insert(&v.flatten());
        }
    }
    let span_dim = image_span.rank();
    if span_dim != g.dim() {
        certificate.push(SymmetryViolation::SpanDeficit {
            span_dim,
            algebra_dim: g.dim(),
        });
    }
    // ξ·R = 0, checked per basis element in parallel (verdict is order-free)
    let pairs = tensor.pairs();
    let mut action_violations: Vec<SymmetryViolation> = mats
        .par_iter()
        .enumerate()
        .filter_map(|(xi_index, xi)| {
            let acted = act_on_r(xi, tensor);
            for (idx, &(i, j)) in pairs.iter().enumerate() {
                if !acted.value_at(idx).is_zero() {
                    return Some((xi_index, (i, j)));
                }
            }
            None
        })
        .map(|(xi_index, pair)| SymmetryViolation::ActionNonzero { xi_index, pair })
        .collect();
    action_violations.sort_by_key(|v| match v {
        SymmetryViolation::ActionNonzero { xi_index, .. } => *xi_index,
        _ => usize::MAX,
    });
    certificate.extend(action_violations);

    let symmetric = certificate.is_empty();
    if !symmetric {
        if let Some(p) = params {
            // the eliminations forced by the symmetric condition: C and B (when
            // the H-projection vanishes the proof kills them; when it does not,
            // the ξ-action on the q-plane does), then R', L and P0, then A0s.
            for name in p.nonzero_components() {
                if matches!(name, "C01" | "C02" | "A01" | "A02" | "A03" | "Rprime" | "P0") {
                    certificate.push(SymmetryViolation::ComponentMustVanish {
                        component: name.to_string(),
                    });
                }
            }
        }
    }
    Ok(SymmetricVerdict {
        symmetric,
        span_dim,
        certificate,
    })
}

/// The exemplar symmetric pair at `n = 2`: Gram `[[1, −k/2], [k/2, 1]]`,
/// `𝔤 = L′ ⋉ Imℍ` with `L′ = span{e₁, e₂, je₁ + ie₂}`, and the tensor defined
/// by `S₀₁ = e₁`, `S₀₂ = −e₂` with every other free component zero (so
/// `S₀₃ = jS₀₁ − iS₀₂ = je₁ + ie₂ ∈ L′`).
pub fn exemplar_n2() -> Result<SymmetricPair> {
    let space = HermitianSpace::new(2, exemplar_gram())?;
    let params = exemplar_params();
    let tensor = construct_curvature(&params, &space)?;
    let algebra = exemplar_algebra(&space)?;
    Ok(SymmetricPair {
        algebra,
        tensor,
        params: Some(params),
    })
}

/// The free data of the exemplar tensor: `S₀₁ = e₁`, `S₀₂ = −e₂`.
pub fn exemplar_params() -> CurvatureParams {
    let mut params = CurvatureParams::zero(2);
    params.s01 = QVector::basis(2, 0, Quat::one());
    params.s02 = QVector::basis(2, 1, Quat::one()).neg();
    params
}

/// `L′ ⋉ Imℍ` for `L′ = span{e₁, e₂, je₁ + ie₂}` (dimension 6).
pub fn exemplar_algebra(space: &HermitianSpace) -> Result<Subalgebra> {
    use crate::parabolic::ParabolicElement;
    let n = space.n();
    let lprime = exemplar_translation_space();
    let mut basis: Vec<ParabolicElement> = lprime
        .basis()
        .iter()
        .map(|v| ParabolicElement::from_translation(n, v.clone()))
        .collect();
    for r in 1..4 {
        basis.push(ParabolicElement::from_b(n, Quat::unit(r)));
    }
    Subalgebra::new(space.clone(), basis)
}

/// `L′ = span{e₁, e₂, je₁ + ie₂} ⊂ ℍ²`.
pub fn exemplar_translation_space() -> RealSubspace {
    RealSubspace::from_independent(
        2,
        vec![
            QVector::basis(2, 0, Quat::one()),
            QVector::basis(2, 1, Quat::one()),
            QVector::from_coords(vec![Quat::j(), Quat::i()]),
        ],
    )
    .expect("independent generators")
}

// ---------------------------------------------------------------------------
// Change of basis q' = -1/2 p + X + q
// ---------------------------------------------------------------------------

/// Result of rewriting the `D` components in the basis `p, e_a, q′` with
/// `q′ = −½p + X + q`:
/// `D′_{rs} = D_{rs} − θ_s(I_rX) + θ_r(I_sX) − g(X, S_{rs}) + g(S_{rs}, X)`.
#[derive(Debug)]
pub struct BaseChange {
    /// All sixteen `D′_{rs}` values.
    pub d_prime: [[Quat; 4]; 4],
    /// Whether `g(q′, q′) = 0`; equivalent to `g(X,X) = 1` for this correction.
    pub q_prime_isotropic: bool,
    /// Whether `g(p, q′) = 1` (always true; recorded for the report).
    pub pairing_preserved: bool,
}

impl BaseChange {
    pub fn d_prime_zero(&self) -> bool {
        self.d_prime
            .iter()
            .all(|row| row.iter().all(Quat::is_zero))
    }
}

/// Evaluates the `D′` formula for a given correction vector `X ∈ ℍⁿ`.
pub fn change_base_q(
    params: &CurvatureParams,
    space: &HermitianSpace,
    x: &QVector,
) -> BaseChange {
    assert_eq!(x.dim(), space.n(), "X must live in H^n");
    let d_prime = std::array::from_fn(|r| {
        std::array::from_fn(|s| {
            let irx = x.scale_left(&Quat::unit(r));
            let isx = x.scale_left(&Quat::unit(s));
            let srs = params.s(r, s);
            let g_x_s = space.inner_g(x, &srs);
            let g_s_x = space.inner_g(&srs, x);
            let mut v = params.d_value(r, s);
            v = &v - &params.theta(space, s, &irx);
            v = &v + &params.theta(space, r, &isx);
            v = &v - &g_x_s;
            &v + &g_s_x
        })
    });
    let g_xx = space.inner_g(x, x);
    BaseChange {
        d_prime,
        q_prime_isotropic: g_xx == Quat::one(),
        pairing_preserved: true,
    }
}

/// Finds `X ∈ ℍⁿ` with `D′₀₁ = D′₀₂ = 0` by exact linear solve over the `4n`
/// real coordinates of `X` (six equations: the imaginary components).
pub fn solve_base_change(params: &CurvatureParams, space: &HermitianSpace) -> Result<QVector> {
    let n = space.n();
    let dim = 4 * n;
    let zero_d = {
        let mut p = params.clone();
        p.d = std::array::from_fn(|_| Scalar::zero());
        p
    };
    let mut rows = Vec::with_capacity(6);
    let mut rhs = Vec::with_capacity(6);
    for (r, s) in [(0usize, 1usize), (0, 2)] {
        for comp in 1..4 {
            let mut row = Vec::with_capacity(dim);
            for coord in 0..dim {
                let mut xr = vec![Scalar::zero(); dim];
                xr[coord] = Scalar::one();
                let x = QVector::from_real(&xr);
                // the correction terms are linear in X; evaluate with D = 0
                let change = change_base_q(&zero_d, space, &x);
                let correction = &change.d_prime[r][s] - &zero_d.d_value(r, s);
                row.push(correction.component(comp).clone());
            }
            rows.push(row);
            rhs.push(-params.d_value(r, s).component(comp));
        }
    }
    let a = RMatrix::from_rows(rows);
    let solution = solve_dense(&a, &rhs).ok_or_else(|| {
        Error::InvalidParameter("no correction X eliminates D'01 and D'02".into())
    })?;
    Ok(QVector::from_real(&solution))
}

// ---------------------------------------------------------------------------
// Translation symmetry constraints (the equation on S)
// ---------------------------------------------------------------------------

/// Exhaustive exact solve of the symmetry constraint coming from translations:
/// for `ξ = (0,0,Y,0)`, `(ξ·R)(q, I_sq) = 0` reads
/// `2·Im g(Y, S₀ₛ) = θ₀(I_sY) − θ_s(Y)` for all `Y ∈ L`, `s = 1,2,3`, together
/// with the membership `S₀₃ = jS₀₁ − iS₀₂ ∈ L`. Returns a basis of solution
/// pairs `(S₀₁, S₀₂) ∈ L × L`.
pub fn translation_symmetry_solutions(
    space: &HermitianSpace,
    l: &RealSubspace,
) -> Vec<(QVector, QVector)> {
    let n = space.n();
    assert_eq!(l.ambient_n(), n, "subspace must live in H^n");
    let k = l.dim();
    if k == 0 {
        return Vec::new();
    }
    let basis = l.basis();
    let rref = crate::linalg::Rref::new(basis.iter().map(QVector::to_real), 4 * n);
    // unknowns: coefficients of S01 (k) then S02 (k) over the basis of L
    let unknowns = 2 * k;
    let s_of = |ui: usize| -> (QVector, QVector) {
        let mut s01 = QVector::zero(n);
        let mut s02 = QVector::zero(n);
        if ui < k {
            s01 = basis[ui].clone();
        } else {
            s02 = basis[ui - k].clone();
        }
        (s01, s02)
    };
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    // membership: residual of S03 modulo L vanishes, coordinatewise
    let residual_cols: Vec<Vec<Scalar>> = (0..unknowns)
        .map(|ui| {
            let (s01, s02) = s_of(ui);
            let s03 = s01
                .scale_left(&Quat::j())
                .sub(&s02.scale_left(&Quat::i()));
            rref.residual(&s03.to_real())
        })
        .collect();
    for coord in 0..4 * n {
        let row: Vec<Scalar> = residual_cols.iter().map(|c| c[coord].clone()).collect();
        if !crate::linalg::vec_is_zero(&row) {
            rows.push(row);
        }
    }
    // the constraint rows, linear in (S01, S02)
    for y in basis {
        for s in 1..4usize {
            let isy = y.scale_left(&Quat::unit(s));
            for comp in 1..4usize {
                let row: Vec<Scalar> = (0..unknowns)
                    .map(|ui| {
                        let (s01, s02) = s_of(ui);
                        let mut params = CurvatureParams::zero(n);
                        params.s01 = s01;
                        params.s02 = s02;
                        let g_term = space.inner_g(y, &params.s(0, s)).im();
                        let expr = &(&g_term.scale(&Scalar::from_int(2))
                            - &params.theta(space, 0, &isy))
                            + &params.theta(space, s, y);
                        expr.component(comp).clone()
                    })
                    .collect();
                if !crate::linalg::vec_is_zero(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let ns = crate::linalg::echelon_dense(rows, unknowns).nullspace();
    ns.into_iter()
        .map(|sol| {
            let mut s01 = QVector::zero(n);
            let mut s02 = QVector::zero(n);
            for (c, v) in sol[..k].iter().zip(basis) {
                if !c.is_zero() {
                    s01 = s01.add(&v.scale(c));
                }
            }
            for (c, v) in sol[k..].iter().zip(basis) {
                if !c.is_zero() {
                    s02 = s02.add(&v.scale(c));
                }
            }
            (s01, s02)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::check_curvature_identities;
    use crate::families::{Family, FamilySpec};
    use crate::parabolic::grading_element;

    #[test]
    fn zero_xi_acts_as_zero() {
        let pair = exemplar_n2().unwrap();
        let dim = pair.tensor.dim();
        let zero = RMatrix::zero(dim, dim);
        assert!(act_on_r(&zero, &pair.tensor).is_zero());
    }

    #[test]
    fn grading_element_scales_pure_grade() {
        // a tensor supported on the q∧q block has all values of b-grade 2 and
        // arguments of grade -1 each: xi = grading element acts by 2 - 2 = 0...
        // verify the exact eigen-behaviour numerically instead: the D-only
        // tensor satisfies xi·R = (2 - 1 - 1)·R on q-pairs? Evaluate directly.
        let space = HermitianSpace::standard(1);
        let mut params = CurvatureParams::zero(1);
        params.d = [
            Scalar::one(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
        ];
        let tensor = construct_curvature(&params, &space).unwrap();
        let xi = grading_element(1).realify(&space);
        let acted = act_on_r(&xi, &tensor);
        // values (0,0,0,D) have grade 2 under [1,·]; q-vectors satisfy
        // 1·q = -conj(1)q → the argument side contributes -1 per slot, so the
        // total weight is 2 - (-1) - (-1) = 4 on q∧q pairs
        let q0 = space.q_index(0);
        let q1 = space.q_index(1);
        let expected = tensor.value(q0, q1).scale(&Scalar::from_int(4));
        assert_eq!(acted.value(q0, q1), expected);
    }

    #[test]
    fn exemplar_passes_everything() {
        let pair = exemplar_n2().unwrap();
        assert_eq!(pair.algebra.dim(), 6);
        let report = check_curvature_identities(&pair.tensor, pair.algebra.space());
        assert!(report.all_pass(), "{report:?}");
        let verdict =
            is_symmetric_pair(&pair.algebra, &pair.tensor, pair.params.as_ref()).unwrap();
        assert!(verdict.symmetric, "{:?}", verdict.certificate);
        assert_eq!(verdict.span_dim, 6);
    }

    #[test]
    fn exemplar_matches_family_g6() {
        // the exemplar algebra is the g6 member with m=0 and L' of type B(2)
        // over the exemplar Gram (swapped generator order)
        let pair = exemplar_n2().unwrap();
        let mut spec = FamilySpec::basic(Family::G6, 2, 0);
        spec.lprime = vec![crate::subspace::BlockSpec {
            l: 2,
            offset: 0,
            order: crate::subspace::GeneratorOrder::JFirst,
        }];
        spec.gram = Some(exemplar_gram());
        let sub = spec.build().unwrap();
        assert_eq!(sub.dim(), pair.algebra.dim());
        for e in sub.basis() {
            assert!(pair.algebra.contains(e));
        }
    }

    #[test]
    fn generic_tensor_fails_with_certificate() {
        // g1 at m=n=1 with h0 = sp(1) admits tensors with any C01; a generic
        // C01 ≠ 0 is not symmetric and the certificate names C01
        let mut spec = FamilySpec::minimal(Family::G1);
        spec.h0 = crate::families::H0Choice::Sp1;
        let sub = spec.build().unwrap();
        let space = sub.space().clone();
        let mut params = CurvatureParams::zero(1);
        params.c01 = Quat::one();
        let tensor = construct_curvature(&params, &space).unwrap();
        let verdict = is_symmetric_pair(&sub, &tensor, Some(&params)).unwrap();
        assert!(!verdict.symmetric);
        assert!(verdict
            .certificate
            .iter()
            .any(|v| matches!(v, SymmetryViolation::ComponentMustVanish { component } if component == "C01")));
    }

    #[test]
    fn flat_pair_is_symmetric() {
        let space = HermitianSpace::standard(1);
        let sub = crate::families::Subalgebra::new(space.clone(), vec![]).unwrap();
        let tensor = CurvatureTensor::zero(space.real_dim());
        let verdict = is_symmetric_pair(&sub, &tensor, None).unwrap();
        assert!(verdict.symmetric);
    }

    #[test]
    fn base_change_kills_d() {
        // perturb the exemplar with nonzero d parameters, solve for X, check
        // that every D'_{rs} vanishes
        let space = HermitianSpace::new(2, exemplar_gram()).unwrap();
        let mut params = exemplar_params();
        params.d = [
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(-1),
            Scalar::from_int(3),
            Scalar::from_int(2),
        ];
        let x = solve_base_change(&params, &space).unwrap();
        let change = change_base_q(&params, &space, &x);
        assert!(change.d_prime[0][1].is_zero());
        assert!(change.d_prime[0][2].is_zero());
        assert!(change.d_prime_zero(), "{:?}", change.d_prime);
        assert!(change.pairing_preserved);
    }

    #[test]
    fn base_change_zero_x_is_identity() {
        let space = HermitianSpace::new(2, exemplar_gram()).unwrap();
        let mut params = exemplar_params();
        params.d[0] = Scalar::from_int(5);
        let change = change_base_q(&params, &space, &QVector::zero(2));
        for r in 0..4 {
            for s in 0..4 {
                assert_eq!(change.d_prime[r][s], params.d_value(r, s));
            }
        }
    }

    #[test]
    fn translation_constraints_n1_only_zero() {
        let space = HermitianSpace::standard(1);
        // L = Im H
        let imh = RealSubspace::from_independent(
            1,
            (1..4).map(|r| QVector::basis(1, 0, Quat::unit(r))).collect(),
        )
        .unwrap();
        assert!(translation_symmetry_solutions(&space, &imh).is_empty());
        // L = C (the real plane spanned by e1, i e1)
        let c = RealSubspace::from_independent(
            1,
            vec![
                QVector::basis(1, 0, Quat::one()),
                QVector::basis(1, 0, Quat::i()),
            ],
        )
        .unwrap();
        assert!(translation_symmetry_solutions(&space, &c).is_empty());
    }

    #[test]
    fn translation_constraints_exemplar_line() {
        let space = HermitianSpace::new(2, exemplar_gram()).unwrap();
        let l = exemplar_translation_space();
        let sols = translation_symmetry_solutions(&space, &l);
        assert_eq!(sols.len(), 1);
        // the solution line is spanned by (S01, S02) = (e1, -e2) up to sign
        let (s01, s02) = &sols[0];
        let e1 = QVector::basis(2, 0, Quat::one());
        let e2neg = QVector::basis(2, 1, Quat::one()).neg();
        let matches_direct = *s01 == e1 && *s02 == e2neg;
        let matches_negated = *s01 == e1.neg() && *s02 == e2neg.neg();
        assert!(matches_direct || matches_negated);
    }

    #[test]
    fn precondition_rejected() {
        // a tensor with values outside the algebra is an error, not a verdict
        let spec = FamilySpec::minimal(Family::G6);
        let sub = spec.build().unwrap();
        let space = sub.space().clone();
        let mut params = CurvatureParams::zero(2);
        params.c01 = Quat::one(); // C-values land outside g6
        let tensor = construct_curvature(&params, &space).unwrap();
        assert!(matches!(
            is_symmetric_pair(&sub, &tensor, Some(&params)),
            Err(Error::NotInCurvatureSpace(_))
        ));
    }
}
