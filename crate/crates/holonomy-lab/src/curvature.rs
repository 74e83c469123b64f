//! Algebraic curvature tensors: maps `∧²ℝᴺ → so(η)` stored on the basis
//! bivectors, the identity suite (first Bianchi, pair symmetry, quaternionic
//! compatibility, vanishing on the isotropic-line directions), and the space
//! `P(𝔥)` of cyclically traceless `𝔥`-valued one-forms.

use serde::{Deserialize, Serialize};

use crate::hermitian::HermitianSpace;
use crate::linalg::{vec_is_zero, RMatrix};
use crate::parabolic::bivector_pairs;
use crate::qmatrix::{structure_matrix, QMatrix};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// A curvature tensor on `ℝᴺ`, one exact matrix per basis bivector `e_i ∧ e_j`
/// (`i < j`, lexicographic).
#[derive(Clone, PartialEq, Eq)]
pub struct CurvatureTensor {
    dim: usize,
    values: Vec<RMatrix>,
}

impl CurvatureTensor {
    pub fn zero(dim: usize) -> Self {
        let npairs = dim * (dim - 1) / 2;
        CurvatureTensor {
            dim,
            values: vec![RMatrix::zero(dim, dim); npairs],
        }
    }

    pub fn from_values(dim: usize, values: Vec<RMatrix>) -> Result<Self> {
        if values.len() != dim * (dim - 1) / 2 {
            return Err(Error::Dimension(format!(
                "expected {} bivector values, got {}",
                dim * (dim - 1) / 2,
                values.len()
            )));
        }
        for v in &values {
            if v.nrows() != dim || v.ncols() != dim {
                return Err(Error::Dimension("curvature value has wrong shape".into()));
            }
        }
        Ok(CurvatureTensor { dim, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        bivector_pairs(self.dim)
    }

    /// Index of the pair `(i, j)` with `i < j` in lexicographic order.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim);
        // pairs (0,1)..(0,n-1), (1,2)...: offset formula
        i * self.dim - i * (i + 1) / 2 + (j - i - 1)
    }

    /// `R(e_i, e_j)` for any `i != j` (antisymmetric in the arguments).
    pub fn value(&self, i: usize, j: usize) -> RMatrix {
        assert!(i != j, "bivector needs distinct indices");
        if i < j {
            self.values[self.pair_index(i, j)].clone()
        } else {
            self.values[self.pair_index(j, i)].scale(&-Scalar::one())
        }
    }

    pub fn value_at(&self, pair_idx: usize) -> &RMatrix {
        &self.values[pair_idx]
    }

    pub fn values(&self) -> &[RMatrix] {
        &self.values
    }

    /// Bilinear evaluation on arbitrary real vectors.
    pub fn evaluate(&self, x: &[Scalar], y: &[Scalar]) -> RMatrix {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = RMatrix::zero(self.dim, self.dim);
        for (idx, (i, j)) in bivector_pairs(self.dim).into_iter().enumerate() {
            // coefficient of e_i ∧ e_j in x ∧ y
            let c = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if c.is_zero() {
                continue;
            }
            let m = &self.values[idx];
            if !m.is_zero() {
                out = out.add(&m.scale(&c));
            }
        }
        out
    }

    /// `R(e_i, e_j)·e_k` without materialising the matrix product.
    fn basis_apply(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let (idx, flip) = if i < j {
            (self.pair_index(i, j), false)
        } else {
            (self.pair_index(j, i), true)
        };
        let m = &self.values[idx];
        let mut out = Vec::with_capacity(self.dim);
        for r in 0..self.dim {
            let v = m.get(r, k);
            out.push(if flip { -v } else { v.clone() });
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        CurvatureTensor {
            dim: self.dim,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        CurvatureTensor {
            dim: self.dim,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        CurvatureTensor {
            dim: self.dim,
            values: self.values.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(RMatrix::is_zero)
    }

    /// Flat coordinates over (pair, entry), for rank computations.
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.values.len() * self.dim * self.dim);
        for m in &self.values {
            out.extend(m.flatten());
        }
        out
    }

    /// First violating triple of the first Bianchi identity, if any.
    pub fn bianchi_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let mut acc = self.basis_apply(i, j, k);
                    for (r, v) in self.basis_apply(j, k, i).into_iter().enumerate() {
                        acc[r] += &v;
                    }
                    for (r, v) in self.basis_apply(k, i, j).into_iter().enumerate() {
                        acc[r] += &v;
                    }
                    if !vec_is_zero(&acc) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Serializable form: one `{bivector, matrix}` record per nonzero value.
    pub fn to_records(&self) -> Vec<TensorRecord> {
        bivector_pairs(self.dim)
            .into_iter()
            .zip(&self.values)
            .filter(|(_, m)| !m.is_zero())
            .map(|((i, j), m)| TensorRecord {
                bivector: [i, j],
                matrix: m.clone(),
            })
            .collect()
    }

    pub fn from_records(dim: usize, records: &[TensorRecord]) -> Result<Self> {
        let mut t = CurvatureTensor::zero(dim);
        for r in records {
            let [i, j] = r.bivector;
            if i >= j || j >= dim {
                return Err(Error::Dimension(format!("bad bivector [{i},{j}]")));
            }
            if r.matrix.nrows() != dim || r.matrix.ncols() != dim {
                return Err(Error::Dimension("record matrix has wrong shape".into()));
            }
            let idx = t.pair_index(i, j);
            t.values[idx] = r.matrix.clone();
        }
        Ok(t)
    }
}

impl std::fmt::Debug for CurvatureTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CurvatureTensor(dim {})", self.dim)
    }
}

/// Serialization record for one bivector value.
#[derive(Clone, Serialize, Deserialize)]
pub struct TensorRecord {
    pub bivector: [usize; 2],
    pub matrix: RMatrix,
}

// ---------------------------------------------------------------------------
// Identity suite
// ---------------------------------------------------------------------------

/// Exact verdicts for the curvature identities on the full ambient space.
/// Every check reports the first violating tuple.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    /// First Bianchi identity over all basis triples.
    pub bianchi: bool,
    pub bianchi_violation: Option<(usize, usize, usize)>,
    /// Pair symmetry `η(R(u,v)z,w) = η(R(z,w)u,v)`, as symmetry of the induced
    /// operator on bivectors.
    pub pair_symmetry: bool,
    pub pair_symmetry_violation: Option<((usize, usize), (usize, usize))>,
    /// `R(I_α X, Y) = -R(X, I_α Y)` for the three structure operators.
    pub quaternionic: bool,
    pub quaternionic_violation: Option<(usize, usize, usize)>,
    /// `R(q,iq) = -R(jq,kq)`, `R(q,jq) = R(iq,kq)`, `R(q,kq) = -R(iq,jq)`, and
    /// `R(I_r p, I_s p) = R(I_r p, X) = 0`.
    pub line_orthogonality: bool,
    pub line_orthogonality_violation: Option<String>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.bianchi && self.pair_symmetry && self.quaternionic && self.line_orthogonality
    }
}

/// Runs the full identity suite for a tensor on the realified space of `space`.
pub fn check_curvature_identities(
    tensor: &CurvatureTensor,
    space: &HermitianSpace,
) -> IdentityReport {
    let dim = space.real_dim();
    assert_eq!(tensor.dim(), dim, "tensor does not match the space");
    let eta = space.eta_matrix();
    let pairs = bivector_pairs(dim);

    let bianchi_violation = tensor.bianchi_violation();

    // <R(e_i∧e_j), e_k∧e_l> = eta(R(e_i,e_j) e_k, e_l)
    let pairing = |idx: usize, k: usize, l: usize| -> Scalar {
        let m = tensor.value_at(idx);
        let mut acc = Scalar::zero();
        for r in 0..dim {
            let v = m.get(r, k);
            if !v.is_zero() {
                acc += &(v * eta.get(r, l));
            }
        }
        acc
    };
    let mut pair_symmetry_violation = None;
    'sym: for a in 0..pairs.len() {
        for b in a + 1..pairs.len() {
            let (k, l) = pairs[b];
            let (i, j) = pairs[a];
            if pairing(a, k, l) != pairing(b, i, j) {
                pair_symmetry_violation = Some((pairs[a], pairs[b]));
                break 'sym;
            }
        }
    }

    let m_quat = space.quat_dim();
    let mut quaternionic_violation = None;
    'quat: for alpha in 1..=3 {
        let ialpha = structure_matrix(alpha, m_quat);
        for x in 0..dim {
            let ix: Vec<Scalar> = (0..dim).map(|r| ialpha.get(r, x).clone()).collect();
            for y in 0..dim {
                let iy: Vec<Scalar> = (0..dim).map(|r| ialpha.get(r, y).clone()).collect();
                let mut ey = vec![Scalar::zero(); dim];
                ey[y] = Scalar::one();
                let mut ex = vec![Scalar::zero(); dim];
                ex[x] = Scalar::one();
                let lhs = tensor.evaluate(&ix, &ey);
                let rhs = tensor.evaluate(&ex, &iy);
                if lhs != rhs.scale(&-Scalar::one()) {
                    quaternionic_violation = Some((alpha, x, y));
                    break 'quat;
                }
            }
        }
    }

    let line_orthogonality_violation = line_orthogonality_violation(tensor, space);

    IdentityReport {
        bianchi: bianchi_violation.is_none(),
        bianchi_violation,
        pair_symmetry: pair_symmetry_violation.is_none(),
        pair_symmetry_violation,
        quaternionic: quaternionic_violation.is_none(),
        quaternionic_violation,
        line_orthogonality: line_orthogonality_violation.is_none(),
        line_orthogonality_violation,
    }
}

fn line_orthogonality_violation(
    tensor: &CurvatureTensor,
    space: &HermitianSpace,
) -> Option<String> {
    let q = |r: usize| space.q_index(r);
    let p = |r: usize| space.p_index(r);
    // R(q, iq) = -R(jq, kq)
    if tensor.value(q(0), q(1)) != tensor.value(q(2), q(3)).scale(&-Scalar::one()) {
        return Some("R(q,iq) != -R(jq,kq)".into());
    }
    if tensor.value(q(0), q(2)) != tensor.value(q(1), q(3)) {
        return Some("R(q,jq) != R(iq,kq)".into());
    }
    if tensor.value(q(0), q(3)) != tensor.value(q(1), q(2)).scale(&-Scalar::one()) {
        return Some("R(q,kq) != -R(iq,jq)".into());
    }
    for r in 0..4 {
        for s in r + 1..4 {
            if !tensor.value(p(r), p(s)).is_zero() {
                return Some(format!("R(I_{r}p, I_{s}p) != 0"));
            }
        }
        for x in space.inner_range() {
            if !tensor.value(p(r), x).is_zero() {
                return Some(format!("R(I_{r}p, e-index {x}) != 0"));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// P(h)
// ---------------------------------------------------------------------------

/// A map `P: ℝ^{4n} → 𝔥 ⊂ sp(n)` given by one `sp(n)` matrix per real basis
/// vector of `ℍⁿ`, subject to the cyclic condition
/// `η(P(x)y, z) + η(P(y)z, x) + η(P(z)x, y) = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct PTensor {
    values: Vec<QMatrix>,
}

impl PTensor {
    pub fn zero(n: usize) -> Self {
        PTensor {
            values: vec![QMatrix::zero(n, n); 4 * n],
        }
    }

    pub fn from_values(n: usize, values: Vec<QMatrix>) -> Result<Self> {
        if values.len() != 4 * n {
            return Err(Error::Dimension(format!(
                "P needs {} values, got {}",
                4 * n,
                values.len()
            )));
        }
        for v in &values {
            if v.nrows() != n || v.ncols() != n {
                return Err(Error::Dimension("P value has wrong shape".into()));
            }
        }
        Ok(PTensor { values })
    }

    pub fn n(&self) -> usize {
        self.values.len() / 4
    }

    pub fn values(&self) -> &[QMatrix] {
        &self.values
    }

    pub fn value(&self, idx: usize) -> &QMatrix {
        &self.values[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(QMatrix::is_zero)
    }

    /// Linear evaluation at a real vector of `ℝ^{4n}`.
    pub fn evaluate(&self, x: &[Scalar]) -> QMatrix {
        assert_eq!(x.len(), self.values.len());
        let n = self.n();
        let mut acc = QMatrix::zero(n, n);
        for (c, m) in x.iter().zip(&self.values) {
            if !c.is_zero() && !m.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// Exact check of the cyclic condition over all basis triples.
    pub fn cyclic_condition_holds(&self, space: &HermitianSpace) -> bool {
        let n = self.n();
        assert_eq!(n, space.n());
        let dim = 4 * n;
        let eta = space.inner_eta_matrix();
        let real_mats: Vec<RMatrix> = self.values.iter().map(QMatrix::realify).collect();
        let pairing = |m: &RMatrix, a: usize, b: usize| -> Scalar {
            let mut acc = Scalar::zero();
            for r in 0..dim {
                let v = m.get(r, a);
                if !v.is_zero() {
                    acc += &(v * eta.get(r, b));
                }
            }
            acc
        };
        for x in 0..dim {
            for y in x + 1..dim {
                for z in y + 1..dim {
                    let s = &(&pairing(&real_mats[x], y, z) + &pairing(&real_mats[y], z, x))
                        + &pairing(&real_mats[z], x, y);
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl std::fmt::Debug for PTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PTensor(n = {})", self.n())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quat;

    #[test]
    fn zero_tensor_passes_everything() {
        let sp = HermitianSpace::standard(1);
        let t = CurvatureTensor::zero(sp.real_dim());
        let report = check_curvature_identities(&t, &sp);
        assert!(report.all_pass());
    }

    #[test]
    fn pair_index_is_lexicographic() {
        let t = CurvatureTensor::zero(5);
        let pairs = t.pairs();
        for (idx, (i, j)) in pairs.iter().enumerate() {
            assert_eq!(t.pair_index(*i, *j), idx);
        }
    }

    #[test]
    fn bianchi_violation_reported() {
        // perturb one value of the zero tensor to break Bianchi
        let sp = HermitianSpace::standard(1);
        let dim = sp.real_dim();
        let mut t = CurvatureTensor::zero(dim);
        let idx = t.pair_index(4, 5);
        // value on a *different* plane: R(e4,e5) = e4∧e6, so the
        // triple (4,5,6) has a nonzero cyclic sum
        let mut m = RMatrix::zero(dim, dim);
        m.set(6, 4, Scalar::one());
        m.set(4, 6, -Scalar::one());
        t.values[idx] = m;
        let v = t.bianchi_violation();
        assert_eq!(v, Some((4, 5, 6)));
        let (i, j, k) = v.unwrap();
        let report = check_curvature_identities(&t, &sp);
        assert!(!report.bianchi);
        assert_eq!(report.bianchi_violation, Some((i, j, k)));
    }

    #[test]
    fn record_roundtrip() {
        let sp = HermitianSpace::standard(1);
        let dim = sp.real_dim();
        let mut t = CurvatureTensor::zero(dim);
        let idx = t.pair_index(0, 3);
        let mut m = RMatrix::zero(dim, dim);
        m.set(1, 2, Scalar::ratio(7, 3));
        t.values[idx] = m;
        let records = t.to_records();
        assert_eq!(records.len(), 1);
        let back = CurvatureTensor::from_records(dim, &records).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn ptensor_cyclic_zero() {
        let sp = HermitianSpace::standard(1);
        let p = PTensor::zero(1);
        assert!(p.cyclic_condition_holds(&sp));
        // P(x) = Op(i) for x = e1, zero otherwise: cyclic sum fails
        let mut vals = vec![QMatrix::zero(1, 1); 4];
        vals[0] = QMatrix::from_rows(vec![vec![Quat::i()]]);
        let p = PTensor::from_values(1, vals).unwrap();
        assert!(!p.cyclic_condition_holds(&sp));
    }
}
