//! Bracket-closed subalgebras of the parabolic algebra and constructors for the
//! nine classified families `g1..g9`, plus the two non-Berger counterexamples.
//!
//! Homomorphisms into `sp(1)` are encoded by their values on the supplied
//! generators of `𝔥`, stored directly as the `a`-slot of the constructed tuple.
//! The abstract `sp(1)` value is the negative of that slot (the algebra's
//! `(a,0,0,0) ↦ -a` identification), so the homomorphism property reads
//! `c([A,B]) = -[c(A), c(B)]` at tuple level; this is what closure requires and
//! what the validator checks.

use serde::{Deserialize, Serialize};

use crate::hermitian::HermitianSpace;
use crate::linalg::{RMatrix, SpanBuilder};
use crate::parabolic::{is_sp, ParabolicElement};
use crate::qmatrix::{QMatrix, QVector};
use crate::quat::Quat;
use crate::scalar::Scalar;
use crate::subspace::{build_l, BlockSpec, RealSubspace};
use crate::{Error, Result};

/// A subalgebra of `sp(1,n+1)_ℍp` given by an exact basis, verified closed
/// under the structural bracket on construction.
#[derive(Clone)]
pub struct Subalgebra {
    space: HermitianSpace,
    basis: Vec<ParabolicElement>,
    family: Option<FamilySpec>,
    notes: Vec<String>,
}

impl Subalgebra {
    /// Checks independence, that every `sp(n)` slot is skew for the space's
    /// metric, and closure of all pairwise brackets, then fixes the basis.
    pub fn new(space: HermitianSpace, basis: Vec<ParabolicElement>) -> Result<Self> {
        let n = space.n();
        let flat_len = ParabolicElement::flat_len(n);
        let mut span = SpanBuilder::new(flat_len);
        for (idx, e) in basis.iter().enumerate() {
            if e.n() != n {
                return Err(Error::AmbientMismatch);
            }
            if !is_sp(&e.a_mat, space.gram()) {
                return Err(Error::NotSkew(format!(
                    "basis element {idx} has an sp(n) slot that is not skew"
                )));
            }
            if !span.insert(&e.flatten()) {
                return Err(Error::NotIndependent);
            }
        }
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let br = basis[i].bracket(&basis[j], &space);
                if !span.contains(&br.flatten()) {
                    return Err(Error::NotClosed(i, j));
                }
            }
        }
        Ok(Subalgebra {
            space,
            basis,
            family: None,
            notes: Vec::new(),
        })
    }

    pub fn space(&self) -> &HermitianSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ParabolicElement] {
        &self.basis
    }

    pub fn family(&self) -> Option<&FamilySpec> {
        self.family.as_ref()
    }

    /// Non-blocking observations recorded by the family validator.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn contains(&self, e: &ParabolicElement) -> bool {
        let mut span = SpanBuilder::new(ParabolicElement::flat_len(self.space.n()));
        for b in &self.basis {
            span.insert(&b.flatten());
        }
        span.contains(&e.flatten())
    }

    /// Realified basis matrices, in basis order.
    pub fn realified_basis(&self) -> Vec<RMatrix> {
        self.basis.iter().map(|e| e.realify(&self.space)).collect()
    }

    /// Real dimension of the projection to the `ℍ` slot.
    pub fn pr_h_dim(&self) -> usize {
        let mut span = SpanBuilder::new(4);
        for e in &self.basis {
            span.insert(
                &e.a.components()
                    .into_iter()
                    .cloned()
                    .collect::<Vec<Scalar>>(),
            );
        }
        span.rank()
    }

    /// Projection of the algebra to the translation slot, as a subspace of `ℍⁿ`.
    pub fn translation_part(&self) -> RealSubspace {
        RealSubspace::span(
            self.space.n(),
            self.basis.iter().map(|e| e.x.clone()).collect(),
        )
        .expect("ambient checked at construction")
    }

    /// `true` when every element's realified matrix maps the realified `ℍp`
    /// line into itself (the defining property of the parabolic).
    pub fn preserves_isotropic_line(&self) -> bool {
        self.basis.iter().all(|e| {
            let m = e.realify(&self.space);
            (0..4).all(|r| {
                let col_in_p_block = (0..m.nrows()).all(|row| row < 4 || m.get(row, r).is_zero());
                col_in_p_block
            })
        })
    }
}

impl std::fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subalgebra(dim {} in sp(1,{}+1))",
            self.dim(),
            self.space.n()
        )
    }
}

// ---------------------------------------------------------------------------
// Family specifications
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    G9,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::G1,
        Family::G2,
        Family::G3,
        Family::G4,
        Family::G5,
        Family::G6,
        Family::G7,
        Family::G8,
        Family::G9,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::G1 => "g1",
            Family::G2 => "g2",
            Family::G3 => "g3",
            Family::G4 => "g4",
            Family::G5 => "g5",
            Family::G6 => "g6",
            Family::G7 => "g7",
            Family::G8 => "g8",
            Family::G9 => "g9",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.to_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// The center piece `𝔥₀ ⊂ sp(1)` used by `g1` and `g3`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum H0Choice {
    #[default]
    None,
    Ri,
    Sp1,
}

impl std::str::FromStr for H0Choice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_lowercase().as_str() {
            "none" | "0" => Ok(H0Choice::None),
            "ri" => Ok(H0Choice::Ri),
            "sp1" | "sp(1)" => Ok(H0Choice::Sp1),
            _ => Err(Error::Parse(format!("unknown h0 choice {s:?}"))),
        }
    }
}

/// Declarative description of one family member. Maps `𝔥 → sp(1)` (`phi`),
/// `𝔥 → ℝ` (`varphi`) and `𝔥 → U ⊂ ℍⁿ` (`psi`, used by `g9`) are given by
/// their values on `h_generators`, with `phi` stored as the tuple `a`-slot.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    #[serde(default)]
    pub m: usize,
    #[serde(default)]
    pub m1: usize,
    #[serde(default)]
    pub m2: usize,
    /// Quaternionic dimension of the `ℍᵏ` part for `g9`.
    #[serde(default)]
    pub k: usize,
    #[serde(default)]
    pub h0: H0Choice,
    /// Generators of `𝔥` as `m×m` (or `k×k` for `g9`) matrices in `sp(m)`.
    #[serde(default)]
    pub h_generators: Vec<QMatrix>,
    /// Values of `φ: 𝔥 → sp(1)` per generator (tuple `a`-slot convention).
    #[serde(default)]
    pub phi: Vec<Quat>,
    /// Values of `φ: 𝔥 → ℝ` per generator.
    #[serde(default)]
    pub varphi: Vec<Scalar>,
    /// Values of `ψ: 𝔥 → U ⊂ ℍⁿ` per generator (full `n`-dim coordinates).
    #[serde(default)]
    pub psi: Vec<Vec<Quat>>,
    /// The nonzero real slope of `ℝ(α + i)` for `g5`.
    #[serde(default)]
    pub alpha: Option<Scalar>,
    /// `B(l)` blocks of `L′` for `g6`.
    #[serde(default, rename = "Lprime")]
    pub lprime: Vec<BlockSpec>,
    /// Optional Gram matrix; defaults to the identity.
    #[serde(default)]
    pub gram: Option<QMatrix>,
}

impl FamilySpec {
    pub fn basic(family: Family, n: usize, m: usize) -> Self {
        FamilySpec {
            family,
            n,
            m,
            m1: 0,
            m2: 0,
            k: 0,
            h0: H0Choice::None,
            h_generators: Vec::new(),
            phi: Vec::new(),
            varphi: Vec::new(),
            psi: Vec::new(),
            alpha: None,
            lprime: Vec::new(),
            gram: None,
        }
    }

    pub fn space(&self) -> Result<HermitianSpace> {
        match &self.gram {
            Some(g) => HermitianSpace::new(self.n, g.clone()),
            None => Ok(HermitianSpace::standard(self.n)),
        }
    }

    pub fn build(&self) -> Result<Subalgebra> {
        let space = self.space()?;
        family_g(self, &space)
    }

    /// The documented minimal instantiation of each family, used by the
    /// acceptance suite and `families --all --minimal`:
    ///
    /// * `g1`: n=m=1, `𝔥₀ = ℝi`, `𝔥 = 0` (dim 9)
    /// * `g2`: n=m=1, `𝔥 = ℝ·Op(i)`, `φ` with value `i` (dim 9)
    /// * `g3`: n=m=1, `𝔥₀ = sp(1)`, `𝔥 = 0` (dim 10)
    /// * `g4`: n=m=2, `𝔥 = span{Op(diag(i,0)), Op(diag(0,i))}` abelian,
    ///   `φ = (1,0)`, `ϕ = (0,i)` — non-proportional as required (dim 13)
    /// * `g5`: n=m=1, `α = 1`, `𝔥 = ℝ·Op(i)`, `φ = 1` (dim 9)
    /// * `g6`: n=2, m=0, `𝔥 = 0`, `L′ = B(2)` (dim 6)
    /// * `g7`: n=1, m=0, `𝔥 = 0` (dim 9)
    /// * `g8`: n=2, m=1, `𝔥 = sp(1)` on the first slot, `φ` the identity-like
    ///   surjection (dim 13)
    /// * `g9`: n=2, k=1, `𝔥 = ℝ·Op(i)`, `U = ℝ·(i e₂)`, `ψ(Op(i)) = i e₂`
    ///   (dim 10)
    pub fn minimal(family: Family) -> Self {
        let op = |q: Quat| QMatrix::from_rows(vec![vec![q]]);
        match family {
            Family::G1 => {
                let mut s = FamilySpec::basic(Family::G1, 1, 1);
                s.h0 = H0Choice::Ri;
                s
            }
            Family::G2 => {
                let mut s = FamilySpec::basic(Family::G2, 1, 1);
                s.h_generators = vec![op(Quat::i())];
                s.phi = vec![Quat::i()];
                s
            }
            Family::G3 => {
                let mut s = FamilySpec::basic(Family::G3, 1, 1);
                s.h0 = H0Choice::Sp1;
                s
            }
            Family::G4 => {
                let mut s = FamilySpec::basic(Family::G4, 2, 2);
                let a1 = QMatrix::from_rows(vec![
                    vec![Quat::i(), Quat::zero()],
                    vec![Quat::zero(), Quat::zero()],
                ]);
                let a2 = QMatrix::from_rows(vec![
                    vec![Quat::zero(), Quat::zero()],
                    vec![Quat::zero(), Quat::i()],
                ]);
                s.h_generators = vec![a1, a2];
                s.varphi = vec![Scalar::one(), Scalar::zero()];
                s.phi = vec![Quat::zero(), Quat::i()];
                s
            }
            Family::G5 => {
                let mut s = FamilySpec::basic(Family::G5, 1, 1);
                s.alpha = Some(Scalar::one());
                s.h_generators = vec![op(Quat::i())];
                s.varphi = vec![Scalar::one()];
                s
            }
            Family::G6 => {
                let mut s = FamilySpec::basic(Family::G6, 2, 0);
                s.lprime = vec![BlockSpec {
                    l: 2,
                    offset: 0,
                    order: Default::default(),
                }];
                s
            }
            Family::G7 => FamilySpec::basic(Family::G7, 1, 0),
            Family::G8 => {
                let mut s = FamilySpec::basic(Family::G8, 2, 1);
                s.h_generators = vec![op(Quat::i()), op(Quat::j()), op(Quat::k())];
                s.phi = vec![Quat::i(), Quat::j(), Quat::k()];
                s
            }
            Family::G9 => {
                let mut s = FamilySpec::basic(Family::G9, 2, 0);
                s.k = 1;
                s.h_generators = vec![op(Quat::i())];
                s.psi = vec![vec![Quat::zero(), Quat::i()]];
                s
            }
        }
    }
}

fn constraint(clause: &str, detail: impl Into<String>) -> Error {
    Error::FamilyConstraint {
        clause: clause.into(),
        detail: detail.into(),
    }
}

/// Embeds an `m×m` matrix into `n×n`, acting on the first `m` basis vectors.
fn embed_block(a: &QMatrix, n: usize) -> QMatrix {
    let m = a.nrows();
    assert!(m <= n);
    let mut out = QMatrix::zero(n, n);
    for i in 0..m {
        for j in 0..m {
            out.set(i, j, a.get(i, j).clone());
        }
    }
    out
}

/// Span dimension of a list of quaternions inside `Imℍ ≅ ℝ³`, plus a flag for
/// whether the span is exactly the `i`-line.
fn sp1_image(values: &[Quat]) -> (usize, bool) {
    let mut span = SpanBuilder::new(3);
    for v in values {
        span.insert(&[v.c1.clone(), v.c2.clone(), v.c3.clone()]);
    }
    let dim = span.rank();
    let is_ri = dim <= 1
        && values
            .iter()
            .all(|v| v.c2.is_zero() && v.c3.is_zero());
    (dim, is_ri)
}

struct HValidation {
    /// Coefficients over the generators of a basis of `𝔥' = [𝔥, 𝔥]`.
    commutant_coeffs: Vec<Vec<Scalar>>,
}

/// Checks that the generators really span a subalgebra of `sp(m)` and returns
/// the commutant expressed over them.
fn validate_h(
    gens: &[QMatrix],
    m: usize,
    gram_block: &QMatrix,
    clause: &str,
) -> Result<HValidation> {
    for (idx, g) in gens.iter().enumerate() {
        if g.nrows() != m || g.ncols() != m {
            return Err(constraint(
                clause,
                format!("h generator {idx} must be {m}x{m}"),
            ));
        }
        if !is_sp(g, gram_block) {
            return Err(constraint(
                clause,
                format!("h generator {idx} is not in sp({m})"),
            ));
        }
    }
    // independence + membership machinery over flattened matrices
    let flat = |a: &QMatrix| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(4 * m * m);
        for i in 0..m {
            for j in 0..m {
                out.extend(a.get(i, j).components().into_iter().cloned());
            }
        }
        out
    };
    let mut span = SpanBuilder::new(4 * m * m);
    for g in gens {
        if !span.insert(&flat(g)) {
            return Err(constraint(clause, "h generators must be independent"));
        }
    }
    // solve bracket coordinates over the generators
    let gen_rref = crate::linalg::Rref::new(gens.iter().map(&flat), 4 * m * m);
    let mut commutant_coeffs = Vec::new();
    let mut comm_span = SpanBuilder::new(gens.len().max(1));
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let br = gens[i].op_commutator(&gens[j]);
            if !crate::linalg::vec_is_zero(&gen_rref.residual(&flat(&br))) {
                return Err(constraint(
                    clause,
                    format!("h is not closed under the bracket (generators {i},{j})"),
                ));
            }
            let coeffs = express_over(gens, &br, &flat);
            if comm_span.insert(&coeffs) {
                commutant_coeffs.push(coeffs);
            }
        }
    }
    Ok(HValidation { commutant_coeffs })
}

/// Coefficients of `target` over independent generators, by exact solve.
fn express_over(
    gens: &[QMatrix],
    target: &QMatrix,
    flat: &dyn Fn(&QMatrix) -> Vec<Scalar>,
) -> Vec<Scalar> {
    let cols = gens.len();
    let target_flat = flat(target);
    let rows = target_flat.len();
    let mut a = RMatrix::zero(rows, cols);
    for (c, g) in gens.iter().enumerate() {
        for (r, v) in flat(g).into_iter().enumerate() {
            a.set(r, c, v);
        }
    }
    crate::linalg::solve_dense(&a, &target_flat).expect("membership checked")
}

/// Linear map values extended to the commutant: `Σ c_i·value_i` must vanish.
fn vanishes_on_commutant<T, FAdd>(values: &[T], coeffs: &[Vec<Scalar>], combine: FAdd) -> bool
where
    FAdd: Fn(&[T], &[Scalar]) -> bool,
{
    coeffs.iter().all(|c| combine(values, c))
}

fn quat_combination_is_zero(values: &[Quat], coeffs: &[Scalar]) -> bool {
    let mut acc = Quat::zero();
    for (v, c) in values.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = &acc + &v.scale(c);
        }
    }
    acc.is_zero()
}

fn scalar_combination_is_zero(values: &[Scalar], coeffs: &[Scalar]) -> bool {
    let mut acc = Scalar::zero();
    for (v, c) in values.iter().zip(coeffs) {
        acc += &(v * c);
    }
    acc.is_zero()
}

/// Tuple-level homomorphism check for `sp(1)`-valued maps: the `a`-slot of the
/// bracket of `(c_i, A_i)` and `(c_j, A_j)` is `c_j c_i − c_i c_j`, so closure
/// needs `c([A_i,A_j]) = −[c_i, c_j]`.
fn phi_is_homomorphism(gens: &[QMatrix], values: &[Quat], m: usize) -> bool {
    let flat = |a: &QMatrix| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(4 * m * m);
        for i in 0..m {
            for j in 0..m {
                out.extend(a.get(i, j).components().into_iter().cloned());
            }
        }
        out
    };
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            let br = gens[i].op_commutator(&gens[j]);
            let coeffs = express_over(gens, &br, &flat);
            let mut lhs = Quat::zero();
            for (v, c) in values.iter().zip(&coeffs) {
                if !c.is_zero() {
                    lhs = &lhs + &v.scale(c);
                }
            }
            let rhs = &(&values[j] * &values[i]) - &(&values[i] * &values[j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn imh_ideal(n: usize) -> Vec<ParabolicElement> {
    (1..4)
        .map(|r| ParabolicElement::from_b(n, Quat::unit(r)))
        .collect()
}

fn full_quaternionic_translations(n: usize, range: std::ops::Range<usize>) -> Vec<ParabolicElement> {
    let mut out = Vec::new();
    for t in range {
        for alpha in 0..4 {
            out.push(ParabolicElement::from_translation(
                n,
                QVector::basis(n, t, Quat::unit(alpha)),
            ));
        }
    }
    out
}

fn complex_translations(n: usize, range: std::ops::Range<usize>) -> Vec<ParabolicElement> {
    let mut out = Vec::new();
    for t in range {
        for alpha in 0..2 {
            out.push(ParabolicElement::from_translation(
                n,
                QVector::basis(n, t, Quat::unit(alpha)),
            ));
        }
    }
    out
}

fn imaginary_translations(n: usize, range: std::ops::Range<usize>) -> Vec<ParabolicElement> {
    let mut out = Vec::new();
    for t in range {
        for alpha in 1..4 {
            out.push(ParabolicElement::from_translation(
                n,
                QVector::basis(n, t, Quat::unit(alpha)),
            ));
        }
    }
    out
}

/// Builds a family member and verifies closure exactly. Violated Theorem-1
/// clauses are reported in the error; softer sub-case conditions (the item-4
/// proportionality rule) are recorded as notes on the result.
pub fn family_g(spec: &FamilySpec, space: &HermitianSpace) -> Result<Subalgebra> {
    let n = space.n();
    if spec.n != n {
        return Err(Error::AmbientMismatch);
    }
    let m = spec.m;
    if m > n {
        return Err(constraint("items 1-9: 0 <= m <= n", format!("m={m}, n={n}")));
    }
    let gram_m = {
        let mut b = QMatrix::zero(m, m);
        for i in 0..m {
            for j in 0..m {
                b.set(i, j, space.gram().get(i, j).clone());
            }
        }
        b
    };
    let lens_match = |want_phi: bool, want_varphi: bool, want_psi: bool| -> Result<()> {
        let g = spec.h_generators.len();
        if want_phi && spec.phi.len() != g {
            return Err(constraint("map values", "phi values must match generators"));
        }
        if want_varphi && spec.varphi.len() != g {
            return Err(constraint(
                "map values",
                "varphi values must match generators",
            ));
        }
        if want_psi && spec.psi.len() != g {
            return Err(constraint("map values", "psi values must match generators"));
        }
        Ok(())
    };
    let mut notes = Vec::new();
    let mut elements: Vec<ParabolicElement> = Vec::new();

    match spec.family {
        Family::G1 => {
            lens_match(false, false, false)?;
            let hv = validate_h(&spec.h_generators, m, &gram_m, "item 1: h in sp(m)")?;
            let _ = hv;
            if m < n && spec.h0 != H0Choice::Ri {
                return Err(constraint("item 1: if m<n then h0 = Ri", format!("h0={:?}", spec.h0)));
            }
            if spec.h0 == H0Choice::None {
                return Err(constraint(
                    "item 1: h0 is Ri or sp(1)",
                    "h0 = none is not in the family",
                ));
            }
            elements.push(ParabolicElement::from_a(n, Quat::one()));
            match spec.h0 {
                H0Choice::Ri => elements.push(ParabolicElement::from_a(n, Quat::i())),
                H0Choice::Sp1 => {
                    for r in 1..4 {
                        elements.push(ParabolicElement::from_a(n, Quat::unit(r)));
                    }
                }
                H0Choice::None => unreachable!(),
            }
            for a in &spec.h_generators {
                elements.push(ParabolicElement::from_mat(n, embed_block(a, n)));
            }
            elements.extend(full_quaternionic_translations(n, 0..m));
            elements.extend(complex_translations(n, m..n));
        }
        Family::G2 => {
            lens_match(true, false, false)?;
            if m < 1 {
                return Err(constraint("item 2: 1 <= m <= n", format!("m={m}")));
            }
            let hv = validate_h(&spec.h_generators, m, &gram_m, "item 2: h in sp(m)")?;
            let (im_dim, is_ri) = sp1_image(&spec.phi);
            if im_dim == 0 {
                return Err(constraint("item 2: phi is non-zero", "all phi values vanish"));
            }
            if !phi_is_homomorphism(&spec.h_generators, &spec.phi, m) {
                return Err(constraint(
                    "item 2: phi is a homomorphism",
                    "phi fails the bracket compatibility",
                ));
            }
            let vanishes = vanishes_on_commutant(
                &spec.phi,
                &hv.commutant_coeffs,
                quat_combination_is_zero,
            );
            if m < n {
                if !is_ri {
                    return Err(constraint("item 2: if m<n then Im phi = Ri", "image is larger"));
                }
                if !vanishes {
                    return Err(constraint("item 2: if m<n then phi|h' = 0", "phi does not kill h'"));
                }
            } else if !(is_ri && vanishes || im_dim == 3) {
                return Err(constraint(
                    "item 2: at m=n, Im phi = Ri with phi|h'=0, or Im phi = sp(1)",
                    format!("image dim {im_dim}"),
                ));
            }
            elements.push(ParabolicElement::from_a(n, Quat::one()));
            for (a, c) in spec.h_generators.iter().zip(&spec.phi) {
                elements.push(ParabolicElement::new(
                    n,
                    c.im(),
                    embed_block(a, n),
                    QVector::zero(n),
                    Quat::zero(),
                ));
            }
            elements.extend(full_quaternionic_translations(n, 0..m));
            elements.extend(complex_translations(n, m..n));
        }
        Family::G3 => {
            lens_match(false, true, false)?;
            let hv = validate_h(&spec.h_generators, m, &gram_m, "item 3: h in sp(m)")?;
            let varphi_zero = spec.varphi.iter().all(Scalar::is_zero);
            let vanishes = vanishes_on_commutant(
                &spec.varphi,
                &hv.commutant_coeffs,
                scalar_combination_is_zero,
            );
            if !vanishes {
                return Err(constraint("item 3: varphi|h' = 0", "varphi does not kill h'"));
            }
            if m < n {
                if spec.h0 != H0Choice::Ri {
                    return Err(constraint("item 3: if m<n then h0 = Ri", format!("h0={:?}", spec.h0)));
                }
                if varphi_zero {
                    return Err(constraint("item 3: if m<n then varphi != 0", "varphi = 0"));
                }
            } else {
                match spec.h0 {
                    H0Choice::Ri => {
                        if varphi_zero {
                            return Err(constraint(
                                "item 3: at m=n with h0 = Ri, varphi != 0",
                                "varphi = 0",
                            ));
                        }
                    }
                    H0Choice::Sp1 => {}
                    H0Choice::None => {
                        return Err(constraint("item 3: h0 is Ri or sp(1)", "h0 = none"));
                    }
                }
            }
            match spec.h0 {
                H0Choice::Ri => elements.push(ParabolicElement::from_a(n, Quat::i())),
                H0Choice::Sp1 => {
                    for r in 1..4 {
                        elements.push(ParabolicElement::from_a(n, Quat::unit(r)));
                    }
                }
                H0Choice::None => unreachable!(),
            }
            for (a, v) in spec.h_generators.iter().zip(&spec.varphi) {
                elements.push(ParabolicElement::new(
                    n,
                    Quat::real(v.clone()),
                    embed_block(a, n),
                    QVector::zero(n),
                    Quat::zero(),
                ));
            }
            elements.extend(full_quaternionic_translations(n, 0..m));
            elements.extend(complex_translations(n, m..n));
        }
        Family::G4 => {
            lens_match(true, true, false)?;
            let hv = validate_h(&spec.h_generators, m, &gram_m, "item 4: h in sp(m)")?;
            if !phi_is_homomorphism(&spec.h_generators, &spec.phi, m) {
                return Err(constraint(
                    "item 4: phi is a homomorphism",
                    "phi fails the bracket compatibility",
                ));
            }
            let varphi_vanishes = vanishes_on_commutant(
                &spec.varphi,
                &hv.commutant_coeffs,
                scalar_combination_is_zero,
            );
            // varphi: h -> R is a homomorphism iff it kills the commutant
            if !varphi_vanishes {
                return Err(constraint("item 4: varphi is a homomorphism", "varphi(h') != 0"));
            }
            let (im_dim, is_ri) = sp1_image(&spec.phi);
            let varphi_zero = spec.varphi.iter().all(Scalar::is_zero);
            let phi_zero = im_dim == 0;
            if m < n && !(varphi_zero && phi_zero) {
                if varphi_zero || !is_ri {
                    return Err(constraint(
                        "item 4: if m<n, varphi = phi = 0 or varphi != 0 with Im phi = Ri",
                        format!("varphi zero: {varphi_zero}, image dim {im_dim}"),
                    ));
                }
                let phi_vanishes = vanishes_on_commutant(
                    &spec.phi,
                    &hv.commutant_coeffs,
                    quat_combination_is_zero,
                );
                if !phi_vanishes {
                    return Err(constraint("item 4: phi|h' = 0", "phi does not kill h'"));
                }
            }
            // proportionality of i·varphi and phi: recorded, not blocking
            if !varphi_zero && is_ri && im_dim == 1 {
                let proportional = {
                    // exists t with phi = t·i·varphi on all generators
                    let mut ratio: Option<Scalar> = None;
                    let mut prop = true;
                    for (c, v) in spec.phi.iter().zip(&spec.varphi) {
                        match (c.c1.is_zero(), v.is_zero()) {
                            (true, true) => {}
                            (false, false) => {
                                let r = &c.c1 / v;
                                if let Some(r0) = &ratio {
                                    if *r0 != r {
                                        prop = false;
                                    }
                                } else {
                                    ratio = Some(r);
                                }
                            }
                            _ => prop = false,
                        }
                    }
                    prop && ratio.is_some()
                };
                if proportional {
                    notes.push(
                        "item 4 side condition: i*varphi and phi are proportional".to_string(),
                    );
                }
            }
            for ((a, c), v) in spec.h_generators.iter().zip(&spec.phi).zip(&spec.varphi) {
                elements.push(ParabolicElement::new(
                    n,
                    &Quat::real(v.clone()) + &c.im(),
                    embed_block(a, n),
                    QVector::zero(n),
                    Quat::zero(),
                ));
            }
            elements.extend(full_quaternionic_translations(n, 0..m));
            elements.extend(complex_translations(n, m..n));
        }
        Family::G5 => {
            lens_match(false, true, false)?;
            let alpha = spec
                .alpha
                .clone()
                .ok_or_else(|| constraint("item 5: alpha != 0", "alpha missing"))?;
            if alpha.is_zero() {
                return Err(constraint("item 5: alpha != 0", "alpha = 0"));
            }
            let hv = validate_h(&spec.h_generators, m, &gram_m, "item 5: h in sp(m)")?;
            if spec.varphi.iter().all(Scalar::is_zero) {
                return Err(constraint("item 5: varphi != 0", "varphi = 0"));
            }
            if !vanishes_on_commutant(&spec.varphi, &hv.commutant_coeffs, scalar_combination_is_zero)
            {
                return Err(constraint("item 5: varphi|h' = 0", "varphi does not kill h'"));
            }
            elements.push(ParabolicElement::from_a(
                n,
                &Quat::real(alpha) + &Quat::i(),
            ));
            for (a, v) in spec.h_generators.iter().zip(&spec.varphi) {
                elements.push(ParabolicElement::new(
                    n,
                    Quat::real(v.clone()),
                    embed_block(a, n),
                    QVector::zero(n),
                    Quat::zero(),
                ));
            }
            elements.extend(full_quaternionic_translations(n, 0..m));
            elements.extend(complex_translations(n, m..n));
        }
        Family::G6 => {
            lens_match(false, false, false)?;
            validate_h(&spec.h_generators, m, &gram_m, "item 6: h in sp(m)")?;
            let l = build_l(space, m, spec.m1, spec.m2, &spec.lprime)?;
            for a in &spec.h_generators {
                elements.push(ParabolicElement::from_mat(n, embed_block(a, n)));
            }
            for v in l.basis() {
                elements.push(ParabolicElement::from_translation(n, v.clone()));
            }
        }
        Family::G7 => {
            lens_match(false, false, false)?;
            if n - m < 1 {
                return Err(constraint("item 7: n-m >= 1", format!("n={n}, m={m}")));
            }
            validate_h(&spec.h_generators, m, &gram_m, "item 7: h in sp(m)")?;
            // {a - Op(aE)} realizes as tuples (c, c·E) on the trailing block
            for r in 1..4 {
                let c = Quat::unit(r);
                elements.push(ParabolicElement::new(
                    n,
                    c.clone(),
                    QMatrix::scalar_block(n, &c, m, n),
                    QVector::zero(n),
                    Quat::zero(),
                ));
            }
            for a in &spec.h_generators {
                elements.push(ParabolicElement::from_mat(n, embed_block(a, n)));
            }
            elements.extend(full_quaternionic_translations(n, 0..m));
            elements.extend(imaginary_translations(n, m..n));
        }
        Family::G8 => {
            lens_match(true, false, false)?;
            if n - m < 1 {
                return Err(constraint("item 8: n-m >= 1", format!("n={n}, m={m}")));
            }
            validate_h(&spec.h_generators, m, &gram_m, "item 8: h in sp(m)")?;
            let (im_dim, _) = sp1_image(&spec.phi);
            if im_dim != 3 {
                return Err(constraint(
                    "item 8: phi is surjective onto sp(1)",
                    format!("image dim {im_dim}"),
                ));
            }
            if !phi_is_homomorphism(&spec.h_generators, &spec.phi, m) {
                return Err(constraint(
                    "item 8: phi is a homomorphism",
                    "phi fails the bracket compatibility",
                ));
            }
            for (a, c) in spec.h_generators.iter().zip(&spec.phi) {
                let mut mat = embed_block(a, n);
                for t in m..n {
                    mat.set(t, t, c.im());
                }
                elements.push(ParabolicElement::new(
                    n,
                    c.im(),
                    mat,
                    QVector::zero(n),
                    Quat::zero(),
                ));
            }
            elements.extend(full_quaternionic_translations(n, 0..m));
            elements.extend(imaginary_translations(n, m..n));
        }
        Family::G9 => {
            lens_match(false, false, true)?;
            let k = spec.k;
            if k > n {
                return Err(constraint("item 9: k <= n", format!("k={k}, n={n}")));
            }
            let gram_k = {
                let mut b = QMatrix::zero(k, k);
                for i in 0..k {
                    for j in 0..k {
                        b.set(i, j, space.gram().get(i, j).clone());
                    }
                }
                b
            };
            let hv = validate_h(&spec.h_generators, k, &gram_k, "item 9: h in sp(k)")?;
            for (idx, v) in spec.psi.iter().enumerate() {
                if v.len() != n {
                    return Err(constraint(
                        "item 9: psi values in H^n",
                        format!("psi value {idx} has dim {}", v.len()),
                    ));
                }
            }
            let psi_vecs: Vec<QVector> = spec
                .psi
                .iter()
                .map(|v| QVector::from_coords(v.clone()))
                .collect();
            let u = RealSubspace::span(n, psi_vecs.clone())?;
            if u.is_zero() {
                return Err(constraint("item 9: psi is surjective onto U", "psi = 0"));
            }
            // psi must kill the commutant
            let psi_kills = hv.commutant_coeffs.iter().all(|coeffs| {
                let mut acc = QVector::zero(n);
                for (v, c) in psi_vecs.iter().zip(coeffs) {
                    if !c.is_zero() {
                        acc = acc.add(&v.scale(c));
                    }
                }
                acc.is_zero()
            });
            if !psi_kills {
                return Err(constraint("item 9: psi|h' = 0", "psi does not kill h'"));
            }
            // H^k ⊕ V ⊕ U must be eta-orthogonal with V complementary inside
            // L(m,m1,m2,L'); here V is spanned by the remaining imaginary
            // directions orthogonal to U.
            let hk = RealSubspace::span(
                n,
                (0..k)
                    .flat_map(|t| (0..4).map(move |alpha| QVector::basis(n, t, Quat::unit(alpha))))
                    .collect(),
            )?;
            if !u.is_eta_orthogonal_to(&hk, space) {
                return Err(constraint(
                    "item 9: H^k ⊕ V ⊕ U is eta-orthogonal",
                    "U is not eta-orthogonal to H^k",
                ));
            }
            for a in spec.h_generators.iter().zip(&psi_vecs) {
                let (mat, psi_v) = a;
                elements.push(ParabolicElement::new(
                    n,
                    Quat::zero(),
                    embed_block(mat, n),
                    psi_v.clone(),
                    Quat::zero(),
                ));
            }
            elements.extend(full_quaternionic_translations(n, 0..k));
            // V: the eta-orthogonal complement of U inside Im H^{n-k}
            let imh_tail = RealSubspace::span(
                n,
                (k..n)
                    .flat_map(|t| (1..4).map(move |alpha| QVector::basis(n, t, Quat::unit(alpha))))
                    .collect(),
            )?;
            let v_part = imh_tail.eta_orthogonal_complement_in(&u, space);
            for v in v_part.basis() {
                elements.push(ParabolicElement::from_translation(n, v.clone()));
            }
        }
    }
    elements.extend(imh_ideal(n));

    let mut sub = Subalgebra::new(space.clone(), elements)?;
    sub.family = Some(spec.clone());
    sub.notes = notes;
    Ok(sub)
}

// ---------------------------------------------------------------------------
// Non-Berger counterexamples
// ---------------------------------------------------------------------------

/// `ℝ(1,0,0,0) ⋉ (ℍⁿ ⋉ Imℍ)`: the projection to `ℍ` is one-dimensional, which
/// rules out the Berger property.
pub fn real_scaling_counterexample(space: &HermitianSpace) -> Subalgebra {
    let n = space.n();
    let mut elements = vec![ParabolicElement::from_a(n, Quat::one())];
    elements.extend(full_quaternionic_translations(n, 0..n));
    elements.extend(imh_ideal(n));
    Subalgebra::new(space.clone(), elements).expect("closed by construction")
}

/// `ℝ(1,0,0,αj+βk) ⊕ ℝ(−i,0,0,−βj+αk) ⊕ ℂⁿ ⋉ ℝ(0,0,0,i)`, the twisted complex
/// algebra whose curvature space forces `S₀₂ = 0`. The second generator's
/// `a`-slot carries the `(a,0,0,0) ↦ −a` identification of `sp(1)`; with the
/// slot taken as `+i` the span is not bracket-closed.
pub fn twisted_complex_counterexample(
    space: &HermitianSpace,
    alpha: &Scalar,
    beta: &Scalar,
) -> Result<Subalgebra> {
    let n = space.n();
    let b1 = &Quat::j().scale(alpha) + &Quat::k().scale(beta);
    let b2 = &Quat::j().scale(&-beta) + &Quat::k().scale(alpha);
    let mut elements = vec![
        ParabolicElement::new(n, Quat::one(), QMatrix::zero(n, n), QVector::zero(n), b1),
        ParabolicElement::new(n, -&Quat::i(), QMatrix::zero(n, n), QVector::zero(n), b2),
    ];
    elements.extend(complex_translations(n, 0..n));
    elements.push(ParabolicElement::from_b(n, Quat::i()));
    Subalgebra::new(space.clone(), elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_dimensions() {
        let expected = [
            (Family::G1, 9),
            (Family::G2, 9),
            (Family::G3, 10),
            (Family::G4, 13),
            (Family::G5, 9),
            (Family::G6, 6),
            (Family::G7, 9),
            (Family::G8, 13),
            (Family::G9, 10),
        ];
        for (fam, dim) in expected {
            let sub = FamilySpec::minimal(fam).build().unwrap();
            assert_eq!(sub.dim(), dim, "family {}", fam.name());
            // Im H sits inside every family
            for r in 1..4 {
                assert!(sub.contains(&ParabolicElement::from_b(
                    sub.space().n(),
                    Quat::unit(r)
                )));
            }
        }
    }

    #[test]
    fn g1_full_is_whole_parabolic() {
        // g1 with m=n=1, h0=sp(1), h=sp(1) has dim 14 = dim sp(1,2)_Hp
        let mut s = FamilySpec::basic(Family::G1, 1, 1);
        s.h0 = H0Choice::Sp1;
        s.h_generators = vec![
            QMatrix::from_rows(vec![vec![Quat::i()]]),
            QMatrix::from_rows(vec![vec![Quat::j()]]),
            QMatrix::from_rows(vec![vec![Quat::k()]]),
        ];
        let sub = s.build().unwrap();
        assert_eq!(sub.dim(), 14);
    }

    #[test]
    fn g6_example_dimension() {
        // g6, n=2, m=0, L'=B(2): dim 3+3 = 6
        let sub = FamilySpec::minimal(Family::G6).build().unwrap();
        assert_eq!(sub.dim(), 6);
        assert_eq!(sub.pr_h_dim(), 0);
        assert_eq!(sub.translation_part().dim(), 3);
    }

    #[test]
    fn g7_example_dimension() {
        // g7, n=1, m=0: dim 3+3+3 = 9
        let sub = FamilySpec::minimal(Family::G7).build().unwrap();
        assert_eq!(sub.dim(), 9);
        assert_eq!(sub.pr_h_dim(), 3);
    }

    #[test]
    fn clause_violations_reported() {
        // g1 with m<n and h0=sp1 violates item 1
        let mut s = FamilySpec::basic(Family::G1, 2, 1);
        s.h0 = H0Choice::Sp1;
        match s.build() {
            Err(Error::FamilyConstraint { clause, .. }) => {
                assert!(clause.contains("item 1"), "clause: {clause}")
            }
            other => panic!("expected constraint violation, got {other:?}"),
        }
        // g8 without a surjective phi
        let mut s = FamilySpec::basic(Family::G8, 2, 1);
        s.h_generators = vec![QMatrix::from_rows(vec![vec![Quat::i()]])];
        s.phi = vec![Quat::i()];
        match s.build() {
            Err(Error::FamilyConstraint { clause, .. }) => {
                assert!(clause.contains("item 8"), "clause: {clause}")
            }
            other => panic!("expected constraint violation, got {other:?}"),
        }
        // g5 needs alpha != 0
        let mut s = FamilySpec::basic(Family::G5, 1, 1);
        s.alpha = Some(Scalar::zero());
        s.h_generators = vec![QMatrix::from_rows(vec![vec![Quat::i()]])];
        s.varphi = vec![Scalar::one()];
        assert!(matches!(s.build(), Err(Error::FamilyConstraint { .. })));
    }

    #[test]
    fn g4_proportional_maps_noted() {
        // m=n=1 with i*varphi proportional to phi: allowed, but noted
        let mut s = FamilySpec::basic(Family::G4, 1, 1);
        s.h_generators = vec![QMatrix::from_rows(vec![vec![Quat::i()]])];
        s.varphi = vec![Scalar::one()];
        s.phi = vec![Quat::i()];
        let sub = s.build().unwrap();
        assert_eq!(sub.notes().len(), 1);
        assert!(sub.notes()[0].contains("proportional"));
    }

    #[test]
    fn counterexamples_are_closed() {
        let sp = HermitianSpace::standard(1);
        let lemma = real_scaling_counterexample(&sp);
        assert_eq!(lemma.dim(), 8);
        assert_eq!(lemma.pr_h_dim(), 1);
        let tw = twisted_complex_counterexample(&sp, &Scalar::one(), &Scalar::zero()).unwrap();
        assert_eq!(tw.dim(), 5);
        // the naive (+i) reading is not closed
        let n = sp.n();
        let bad = vec![
            ParabolicElement::new(
                n,
                Quat::one(),
                QMatrix::zero(n, n),
                QVector::zero(n),
                Quat::j(),
            ),
            ParabolicElement::new(
                n,
                Quat::i(),
                QMatrix::zero(n, n),
                QVector::zero(n),
                Quat::k(),
            ),
            ParabolicElement::from_translation(n, QVector::basis(n, 0, Quat::one())),
            ParabolicElement::from_translation(n, QVector::basis(n, 0, Quat::i())),
            ParabolicElement::from_b(n, Quat::i()),
        ];
        assert!(matches!(
            Subalgebra::new(sp.clone(), bad),
            Err(Error::NotClosed(_, _))
        ));
    }

    #[test]
    fn family_spec_json_roundtrip() {
        let spec = FamilySpec::minimal(Family::G8);
        let json = serde_json::to_string(&spec).unwrap();
        let back: FamilySpec = serde_json::from_str(&json).unwrap();
        let a = spec.build().unwrap();
        let b = back.build().unwrap();
        assert_eq!(a.dim(), b.dim());
    }

    #[test]
    fn subalgebra_rejects_dependent_basis() {
        let sp = HermitianSpace::standard(1);
        let e = ParabolicElement::from_a(1, Quat::one());
        assert!(matches!(
            Subalgebra::new(sp, vec![e.clone(), e]),
            Err(Error::NotIndependent)
        ));
    }

    #[test]
    fn parabolic_itself_is_closed() {
        let sp = HermitianSpace::standard(1);
        let sub = Subalgebra::new(sp.clone(), crate::parabolic::parabolic_basis(&sp)).unwrap();
        assert_eq!(sub.dim(), 14);
        assert!(sub.preserves_isotropic_line());
    }
}
