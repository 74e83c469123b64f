//! Real subspaces of `ℍⁿ`: the translation-part models `ℍᵐ ⊕ Imℍ^{m₁} ⊕ ℂ^{m₂} ⊕ L′`,
//! the indecomposable blocks `B(l)` and `A(2l-1)`, the closure operator
//! `ρ(L) = span{X, Y, jX−iY | X, Y, jX−iY ∈ L}`, and the canonical decomposition
//! `L = L₁ ⊕ L₅ ⊕ L₄¹ ⊕ L′`.

use serde::{Deserialize, Serialize};

use crate::hermitian::HermitianSpace;
use crate::linalg::{echelon_dense, Rref, SpanBuilder};
use crate::qmatrix::QVector;
use crate::quat::Quat;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// An `ℝ`-subspace of `ℍⁿ ≅ ℝ^{4n}` given by an exact, independent basis.
#[derive(Clone)]
pub struct RealSubspace {
    ambient_n: usize,
    basis: Vec<QVector>,
}

impl RealSubspace {
    /// Builds the span of the given vectors; the stored basis is an independent
    /// subset chosen deterministically (first-seen order).
    pub fn span(ambient_n: usize, vectors: Vec<QVector>) -> Result<Self> {
        let mut keep = Vec::new();
        let mut sb = SpanBuilder::new(4 * ambient_n);
        for v in vectors {
            if v.dim() != ambient_n {
                return Err(Error::Dimension(format!(
                    "subspace vector has dim {} in ambient H^{ambient_n}",
                    v.dim()
                )));
            }
            if sb.insert(&v.to_real()) {
                keep.push(v);
            }
        }
        Ok(RealSubspace {
            ambient_n,
            basis: keep,
        })
    }

    /// Like [`RealSubspace::span`] but fails when the vectors are dependent.
    pub fn from_independent(ambient_n: usize, vectors: Vec<QVector>) -> Result<Self> {
        let count = vectors.len();
        let out = RealSubspace::span(ambient_n, vectors)?;
        if out.dim() != count {
            return Err(Error::NotIndependent);
        }
        Ok(out)
    }

    pub fn zero(ambient_n: usize) -> Self {
        RealSubspace {
            ambient_n,
            basis: Vec::new(),
        }
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn rref(&self) -> Rref {
        Rref::new(self.basis.iter().map(QVector::to_real), 4 * self.ambient_n)
    }

    pub fn contains(&self, v: &QVector) -> bool {
        assert_eq!(v.dim(), self.ambient_n, "ambient dimension mismatch");
        crate::linalg::vec_is_zero(&self.rref().residual(&v.to_real()))
    }

    pub fn contains_all(&self, other: &RealSubspace) -> bool {
        let r = self.rref();
        other
            .basis
            .iter()
            .all(|v| crate::linalg::vec_is_zero(&r.residual(&v.to_real())))
    }

    pub fn equals(&self, other: &RealSubspace) -> bool {
        self.dim() == other.dim() && self.contains_all(other)
    }

    /// Image under left multiplication by a quaternion (`iL`, `jL`, ...).
    pub fn scale_left(&self, c: &Quat) -> RealSubspace {
        RealSubspace::span(
            self.ambient_n,
            self.basis.iter().map(|v| v.scale_left(c)).collect(),
        )
        .expect("scaling preserves ambient dimension")
    }

    pub fn sum(&self, other: &RealSubspace) -> RealSubspace {
        assert_eq!(self.ambient_n, other.ambient_n, "ambient mismatch");
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        RealSubspace::span(self.ambient_n, vecs).expect("dims checked")
    }

    fn combination(&self, coeffs: &[Scalar]) -> QVector {
        let mut v = QVector::zero(self.ambient_n);
        for (c, u) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                v = v.add(&u.scale(c));
            }
        }
        v
    }

    /// Exact intersection, via the nullspace of the stacked coefficient system.
    pub fn intersect(&self, other: &RealSubspace) -> RealSubspace {
        assert_eq!(self.ambient_n, other.ambient_n, "ambient mismatch");
        if self.is_zero() || other.is_zero() {
            return RealSubspace::zero(self.ambient_n);
        }
        let cols = self.dim() + other.dim();
        let coords = 4 * self.ambient_n;
        let self_real: Vec<Vec<Scalar>> = self.basis.iter().map(QVector::to_real).collect();
        let other_real: Vec<Vec<Scalar>> = other.basis.iter().map(QVector::to_real).collect();
        let rows = (0..coords).map(|r| {
            let mut row = Vec::with_capacity(cols);
            for sv in &self_real {
                row.push(sv[r].clone());
            }
            for ov in &other_real {
                row.push(-&ov[r]);
            }
            row
        });
        let ns = echelon_dense(rows, cols).nullspace();
        let vecs = ns
            .into_iter()
            .map(|sol| self.combination(&sol[..self.dim()]))
            .collect();
        RealSubspace::span(self.ambient_n, vecs).expect("dims checked")
    }

    /// `{X ∈ self | g(X, other) = 0}` for the metric of `space`. Quaternionic
    /// orthogonality `g(X,Y) = 0` is equivalent to `η(X, hY) = 0` for all units.
    pub fn g_orthogonal_complement_in(
        &self,
        other: &RealSubspace,
        space: &HermitianSpace,
    ) -> RealSubspace {
        assert_eq!(self.ambient_n, space.n(), "ambient mismatch");
        if other.is_zero() {
            return self.clone();
        }
        let cols = self.dim();
        let mut rows = Vec::new();
        for w in &other.basis {
            for comp in 0..4 {
                rows.push(
                    self.basis
                        .iter()
                        .map(|u| space.inner_g(u, w).component(comp).clone())
                        .collect::<Vec<_>>(),
                );
            }
        }
        let ns = echelon_dense(rows, cols).nullspace();
        let vecs = ns.into_iter().map(|sol| self.combination(&sol)).collect();
        RealSubspace::span(self.ambient_n, vecs).expect("dims checked")
    }

    /// `{X ∈ self | η(X, other) = 0}` for `η = Re g` only (weaker than the
    /// quaternionic complement above).
    pub fn eta_orthogonal_complement_in(
        &self,
        other: &RealSubspace,
        space: &HermitianSpace,
    ) -> RealSubspace {
        assert_eq!(self.ambient_n, space.n(), "ambient mismatch");
        if other.is_zero() {
            return self.clone();
        }
        let cols = self.dim();
        let mut rows = Vec::new();
        for w in &other.basis {
            rows.push(
                self.basis
                    .iter()
                    .map(|u| space.inner_g(u, w).c0.clone())
                    .collect::<Vec<_>>(),
            );
        }
        let ns = echelon_dense(rows, cols).nullspace();
        let vecs = ns.into_iter().map(|sol| self.combination(&sol)).collect();
        RealSubspace::span(self.ambient_n, vecs).expect("dims checked")
    }

    pub fn is_eta_orthogonal_to(&self, other: &RealSubspace, space: &HermitianSpace) -> bool {
        self.basis
            .iter()
            .all(|u| other.basis.iter().all(|w| space.inner_g(u, w).c0.is_zero()))
    }

    pub fn is_g_orthogonal_to(&self, other: &RealSubspace, space: &HermitianSpace) -> bool {
        self.basis
            .iter()
            .all(|u| other.basis.iter().all(|w| space.inner_g(u, w).is_zero()))
    }

    /// The closure `ρ(L) = span{X, Y, jX−iY | X, Y, jX−iY ∈ L}`, computed by an
    /// exact linear solve over all pairs of basis coefficients: the condition
    /// `jX − iY ∈ L` is linear in the pair `(X, Y) ∈ L × L`.
    pub fn rho_closure(&self) -> RealSubspace {
        let k = self.dim();
        if k == 0 {
            return RealSubspace::zero(self.ambient_n);
        }
        let rref = self.rref();
        let coords = 4 * self.ambient_n;
        // column ui < k: X = u_ui; column ui >= k: Y = u_{ui-k}
        let residuals: Vec<Vec<Scalar>> = (0..2 * k)
            .map(|ui| {
                let (c, idx) = if ui < k {
                    (Quat::j(), ui)
                } else {
                    (-&Quat::i(), ui - k)
                };
                rref.residual(&self.basis[idx].scale_left(&c).to_real())
            })
            .collect();
        let rows = (0..coords).map(|r| {
            residuals
                .iter()
                .map(|col| col[r].clone())
                .collect::<Vec<_>>()
        });
        let ns = echelon_dense(rows, 2 * k).nullspace();
        let mut vecs = Vec::new();
        for sol in ns {
            let x = self.combination(&sol[..k]);
            let y = self.combination(&sol[k..]);
            let third = x.scale_left(&Quat::j()).sub(&y.scale_left(&Quat::i()));
            vecs.push(x);
            vecs.push(y);
            vecs.push(third);
        }
        RealSubspace::span(self.ambient_n, vecs).expect("dims checked")
    }

    /// Canonical decomposition `L = L₁ ⊕ L₅ ⊕ L₄¹ ⊕ L′`:
    /// `L₁ = L ∩ iL ∩ jL ∩ kL` is the largest quaternionic subspace;
    /// `L₅ = iU ⊕ jU ⊕ kU` with `U = iL₂ ∩ jL₂ ∩ kL₂`, where `L₂` is the
    /// `g`-complement of `L₁` in `L`; `L₄¹ = I₁L₄ ∩ L₄` under the standard
    /// quaternionic structure; `L′` is the `g`-orthogonal remainder.
    pub fn decompose(&self, space: &HermitianSpace) -> Decomposition {
        let i = Quat::i();
        let j = Quat::j();
        let k = Quat::k();
        let l1 = self
            .intersect(&self.scale_left(&i))
            .intersect(&self.scale_left(&j))
            .intersect(&self.scale_left(&k));
        let l2 = self.g_orthogonal_complement_in(&l1, space);
        let u = l2
            .scale_left(&i)
            .intersect(&l2.scale_left(&j))
            .intersect(&l2.scale_left(&k));
        let l5 = u
            .scale_left(&i)
            .sum(&u.scale_left(&j))
            .sum(&u.scale_left(&k));
        let l4 = l2.g_orthogonal_complement_in(&l5, space);
        let l4c = l4.intersect(&l4.scale_left(&i));
        let rest = l4.g_orthogonal_complement_in(&l4c, space);
        Decomposition {
            quaternionic: l1,
            imaginary: l5,
            complex: l4c,
            rest,
        }
    }
}

impl std::fmt::Debug for RealSubspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RealSubspace(dim {} in H^{})", self.dim(), self.ambient_n)
    }
}

/// The four `g`-orthogonal parts produced by [`RealSubspace::decompose`].
pub struct Decomposition {
    /// `L₁`: the largest quaternionic subspace of `L`.
    pub quaternionic: RealSubspace,
    /// `L₅ = sp(1)·U`.
    pub imaginary: RealSubspace,
    /// `L₄¹`: the `I₁`-invariant complex part (standard structure only).
    pub complex: RealSubspace,
    /// `L′`: the remainder, meeting each `hL′` trivially.
    pub rest: RealSubspace,
}

impl Decomposition {
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (
            self.quaternionic.dim(),
            self.imaginary.dim(),
            self.complex.dim(),
            self.rest.dim(),
        )
    }
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Which of the two cross-term generator orders a `B(l)` block uses:
/// `IFirst` gives `i·f_κ + j·f_{κ+1}`, `JFirst` the swapped `j·f_κ + i·f_{κ+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorOrder {
    #[default]
    IFirst,
    JFirst,
}

fn cross_term(order: GeneratorOrder, n: usize, a: usize, b: usize) -> QVector {
    let (ca, cb) = match order {
        GeneratorOrder::IFirst => (Quat::i(), Quat::j()),
        GeneratorOrder::JFirst => (Quat::j(), Quat::i()),
    };
    let mut v = QVector::zero(n);
    v.coords[a] = ca;
    v.coords[b] = cb;
    v
}

/// `B(l) = span{f_1, ..., f_l, i f_1 + j f_2, ..., i f_{l-1} + j f_l}` over the
/// basis vectors `e_{offset}, ..., e_{offset+l-1}`. Real dimension `2l - 1`.
pub fn build_b(ambient_n: usize, l: usize, offset: usize) -> Result<RealSubspace> {
    build_b_with_order(ambient_n, l, offset, GeneratorOrder::IFirst)
}

pub fn build_b_with_order(
    ambient_n: usize,
    l: usize,
    offset: usize,
    order: GeneratorOrder,
) -> Result<RealSubspace> {
    if l < 1 {
        return Err(Error::SubspaceParameter("B(l) needs l >= 1".into()));
    }
    if offset + l > ambient_n {
        return Err(Error::SubspaceParameter(format!(
            "B({l}) at offset {offset} does not fit in H^{ambient_n}"
        )));
    }
    let mut gens = Vec::new();
    for t in 0..l {
        gens.push(QVector::basis(ambient_n, offset + t, Quat::one()));
    }
    for t in 0..l.saturating_sub(1) {
        gens.push(cross_term(order, ambient_n, offset + t, offset + t + 1));
    }
    RealSubspace::from_independent(ambient_n, gens)
}

/// `A(2l-1)` over `e_{offset}, ..., e_{offset+2l-2}`: generators `f_1..f_{l-1}`,
/// `f_{l+1}..f_{2l-1}`, `i f_κ + j f_{κ+1}` for `κ < l`, `f_l + i f_{l+1}`, and
/// `j f_κ + i f_{κ+1}` for `κ = l+1..2l-2`. The argument is the quaternionic
/// span `2l-1`, odd and at least 3.
pub fn build_a(ambient_n: usize, span_count: usize, offset: usize) -> Result<RealSubspace> {
    if span_count < 3 || span_count % 2 == 0 {
        return Err(Error::SubspaceParameter(
            "A(2l-1) needs an odd span of at least 3".into(),
        ));
    }
    let l = (span_count + 1) / 2;
    if offset + span_count > ambient_n {
        return Err(Error::SubspaceParameter(format!(
            "A({span_count}) at offset {offset} does not fit in H^{ambient_n}"
        )));
    }
    let f = |t: usize| offset + t - 1; // generators are indexed f_1..f_{2l-1}
    let mut gens = Vec::new();
    for t in (1..l).chain(l + 1..=2 * l - 1) {
        gens.push(QVector::basis(ambient_n, f(t), Quat::one()));
    }
    for t in 1..l {
        gens.push(cross_term(GeneratorOrder::IFirst, ambient_n, f(t), f(t + 1)));
    }
    let mut mid = QVector::basis(ambient_n, f(l), Quat::one());
    mid.coords[f(l + 1)] = Quat::i();
    gens.push(mid);
    for t in l + 1..=2 * l - 2 {
        gens.push(cross_term(GeneratorOrder::JFirst, ambient_n, f(t), f(t + 1)));
    }
    RealSubspace::from_independent(ambient_n, gens)
}

/// One `B(l)` block inside an `L(m, m₁, m₂, L′)` description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockSpec {
    pub l: usize,
    /// Zero-based start index; blocks must tile `[m+m₁+m₂, n)` disjointly.
    pub offset: usize,
    #[serde(default)]
    pub order: GeneratorOrder,
}

/// JSON-facing description of a subspace: an `L(m, m₁, m₂, L′)` or a raw span.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SubspaceSpec {
    #[serde(rename = "L")]
    L {
        #[serde(default)]
        m: usize,
        #[serde(default)]
        m1: usize,
        #[serde(default)]
        m2: usize,
        #[serde(default, rename = "Lprime")]
        lprime: Vec<BlockSpec>,
    },
    Span {
        vectors: Vec<Vec<Quat>>,
    },
}

impl SubspaceSpec {
    pub fn build(&self, space: &HermitianSpace) -> Result<RealSubspace> {
        match self {
            SubspaceSpec::L { m, m1, m2, lprime } => build_l(space, *m, *m1, *m2, lprime),
            SubspaceSpec::Span { vectors } => RealSubspace::span(
                space.n(),
                vectors
                    .iter()
                    .map(|v| QVector::from_coords(v.clone()))
                    .collect(),
            ),
        }
    }
}

/// `L(m, m₁, m₂, L′) = ℍᵐ ⊕ Imℍ^{m₁} ⊕ ℂ^{m₂} ⊕ L′` over the fixed basis, with
/// `L′` a sum of `B(l)` blocks (`l ≥ 2`) on disjoint index ranges past
/// `m+m₁+m₂`. Checks range consistency and `g`-orthogonality of the summands.
pub fn build_l(
    space: &HermitianSpace,
    m: usize,
    m1: usize,
    m2: usize,
    lprime: &[BlockSpec],
) -> Result<RealSubspace> {
    let n = space.n();
    let base = m + m1 + m2;
    if base > n {
        return Err(Error::SubspaceParameter(format!(
            "m+m1+m2 = {base} exceeds n = {n}"
        )));
    }
    let mut used = vec![false; n];
    for flag in used.iter_mut().take(base) {
        *flag = true;
    }
    let mut parts: Vec<RealSubspace> = Vec::new();
    let mut gens = Vec::new();
    for a in 0..m {
        for alpha in 0..4 {
            gens.push(QVector::basis(n, a, Quat::unit(alpha)));
        }
    }
    parts.push(RealSubspace::from_independent(n, std::mem::take(&mut gens))?);
    for a in m..m + m1 {
        for alpha in 1..4 {
            gens.push(QVector::basis(n, a, Quat::unit(alpha)));
        }
    }
    parts.push(RealSubspace::from_independent(n, std::mem::take(&mut gens))?);
    for a in m + m1..base {
        for alpha in 0..2 {
            gens.push(QVector::basis(n, a, Quat::unit(alpha)));
        }
    }
    parts.push(RealSubspace::from_independent(n, std::mem::take(&mut gens))?);
    for block in lprime {
        if block.l < 2 {
            return Err(Error::SubspaceParameter(
                "L' blocks must be B(l) with l >= 2".into(),
            ));
        }
        if block.offset < base {
            return Err(Error::IndexOverlap(format!(
                "B({}) at offset {} overlaps the H^m/ImH/C blocks",
                block.l, block.offset
            )));
        }
        for idx in block.offset..block.offset + block.l {
            if idx >= n {
                return Err(Error::SubspaceParameter(format!(
                    "B({}) at offset {} exceeds n = {n}",
                    block.l, block.offset
                )));
            }
            if used[idx] {
                return Err(Error::IndexOverlap(format!("index {idx} used twice")));
            }
            used[idx] = true;
        }
        parts.push(build_b_with_order(n, block.l, block.offset, block.order)?);
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if !parts[i].is_g_orthogonal_to(&parts[j], space) {
                return Err(Error::NotOrthogonal(format!(
                    "summands {i} and {j} of L(m,m1,m2,L')"
                )));
            }
        }
    }
    let mut total = RealSubspace::zero(n);
    for p in parts {
        total = total.sum(&p);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard(n: usize) -> HermitianSpace {
        HermitianSpace::standard(n)
    }

    #[test]
    fn b_blocks() {
        let b2 = build_b(2, 2, 0).unwrap();
        assert_eq!(b2.dim(), 3);
        assert!(b2.contains(&QVector::from_coords(vec![Quat::i(), Quat::j()])));
        let b3 = build_b(3, 3, 0).unwrap();
        assert_eq!(b3.dim(), 5);
        assert!(build_b(1, 2, 0).is_err());
    }

    #[test]
    fn a_block_generators() {
        // A(3) (l=2): {f1, f3, if1+jf2, f2+if3}
        let a3 = build_a(3, 3, 0).unwrap();
        assert_eq!(a3.dim(), 4);
        assert!(a3.contains(&QVector::basis(3, 0, Quat::one())));
        assert!(a3.contains(&QVector::basis(3, 2, Quat::one())));
        assert!(a3.contains(&QVector::from_coords(vec![
            Quat::i(),
            Quat::j(),
            Quat::zero()
        ])));
        assert!(a3.contains(&QVector::from_coords(vec![
            Quat::zero(),
            Quat::one(),
            Quat::i()
        ])));
        assert!(build_a(3, 4, 0).is_err());
        assert!(build_a(1, 3, 0).is_err());
    }

    #[test]
    fn rho_values() {
        let b2 = build_b(2, 2, 0).unwrap();
        assert!(b2.rho_closure().equals(&b2));
        let b1 = build_b(1, 1, 0).unwrap();
        assert!(b1.rho_closure().is_zero());
        let a3 = build_a(3, 3, 0).unwrap();
        assert!(a3.rho_closure().is_zero());
    }

    #[test]
    fn rho_fixed_for_larger_blocks() {
        for l in [3usize, 4] {
            let b = build_b(l, l, 0).unwrap();
            assert!(b.rho_closure().equals(&b), "rho(B({l})) != B({l})");
        }
    }

    #[test]
    fn rho_swapped_order() {
        let b2 = build_b_with_order(2, 2, 0, GeneratorOrder::JFirst).unwrap();
        assert!(b2.rho_closure().equals(&b2));
    }

    #[test]
    fn rho_monotone_dimension() {
        for sub in [
            build_b(2, 2, 0).unwrap(),
            build_a(3, 3, 0).unwrap(),
            build_b(4, 4, 0).unwrap(),
        ] {
            assert!(sub.rho_closure().dim() <= sub.dim());
        }
    }

    #[test]
    fn build_l_examples() {
        let sp1 = standard(1);
        let full = build_l(&sp1, 1, 0, 0, &[]).unwrap();
        assert_eq!(full.dim(), 4);
        let imh = build_l(&sp1, 0, 1, 0, &[]).unwrap();
        assert_eq!(imh.dim(), 3);
        assert!(imh.contains(&QVector::basis(1, 0, Quat::i())));
        assert!(!imh.contains(&QVector::basis(1, 0, Quat::one())));
        let sp2 = standard(2);
        let b2 = build_l(
            &sp2,
            0,
            0,
            0,
            &[BlockSpec {
                l: 2,
                offset: 0,
                order: GeneratorOrder::IFirst,
            }],
        )
        .unwrap();
        assert_eq!(b2.dim(), 3);
    }

    #[test]
    fn build_l_dimension_formula() {
        // 4m + 3m1 + 2m2 + dim L' over all valid tuples with n <= 3
        for n in 1..=3usize {
            for m in 0..=n {
                for m1 in 0..=n - m {
                    for m2 in 0..=n - m - m1 {
                        let rest = n - m - m1 - m2;
                        let blocks: Vec<BlockSpec> = match rest {
                            0 => vec![],
                            1 => continue, // a length-1 tail cannot host B(l>=2)
                            _ => vec![BlockSpec {
                                l: rest,
                                offset: m + m1 + m2,
                                order: GeneratorOrder::IFirst,
                            }],
                        };
                        let sp = standard(n);
                        let l = build_l(&sp, m, m1, m2, &blocks).unwrap();
                        let lp_dim = if rest >= 2 { 2 * rest - 1 } else { 0 };
                        assert_eq!(l.dim(), 4 * m + 3 * m1 + 2 * m2 + lp_dim);
                    }
                }
            }
        }
    }

    #[test]
    fn build_l_rejects_overlap() {
        let sp = standard(2);
        assert!(build_l(
            &sp,
            1,
            0,
            0,
            &[BlockSpec {
                l: 2,
                offset: 0,
                order: GeneratorOrder::IFirst,
            }],
        )
        .is_err());
    }

    #[test]
    fn decompose_examples() {
        let sp1 = standard(1);
        let h1 = build_l(&sp1, 1, 0, 0, &[]).unwrap();
        assert_eq!(h1.decompose(&sp1).dims(), (4, 0, 0, 0));
        let imh = build_l(&sp1, 0, 1, 0, &[]).unwrap();
        assert_eq!(imh.decompose(&sp1).dims(), (0, 3, 0, 0));
        let sp2 = standard(2);
        let b2 = build_b(2, 2, 0).unwrap();
        let d = b2.decompose(&sp2);
        assert_eq!(d.dims(), (0, 0, 0, 3));
        assert!(d.rest.equals(&b2));
    }

    #[test]
    fn decompose_parts_orthogonal_and_complete() {
        let sp = standard(3);
        let l = build_l(&sp, 1, 1, 1, &[]).unwrap();
        let d = l.decompose(&sp);
        let parts = [&d.quaternionic, &d.imaginary, &d.complex, &d.rest];
        let mut total = RealSubspace::zero(3);
        for (i, p) in parts.iter().enumerate() {
            for q in parts.iter().skip(i + 1) {
                assert!(p.is_g_orthogonal_to(q, &sp));
            }
            total = total.sum(p);
        }
        assert!(total.equals(&l));
        assert_eq!(parts.iter().map(|p| p.dim()).sum::<usize>(), l.dim());
        assert_eq!(d.complex.dim(), 2);
    }

    #[test]
    fn intersection_and_complement() {
        let sp = standard(2);
        let b2 = build_b(2, 2, 0).unwrap();
        let h_first = RealSubspace::span(
            2,
            (0..4)
                .map(|alpha| QVector::basis(2, 0, Quat::unit(alpha)))
                .collect(),
        )
        .unwrap();
        let inter = b2.intersect(&h_first);
        assert_eq!(inter.dim(), 1);
        assert!(inter.contains(&QVector::basis(2, 0, Quat::one())));
        let comp = b2.g_orthogonal_complement_in(&h_first, &sp);
        assert_eq!(comp.dim(), 1);
        assert!(comp.contains(&QVector::basis(2, 1, Quat::one())));
    }

    #[test]
    fn subspace_spec_json() {
        let raw = r#"{"type":"L","m":0,"m1":0,"m2":0,"Lprime":[{"l":2,"offset":0}]}"#;
        let spec: SubspaceSpec = serde_json::from_str(raw).unwrap();
        let sp = standard(2);
        let l = spec.build(&sp).unwrap();
        assert_eq!(l.dim(), 3);
    }
}
