//! Exact solvers for the curvature space `R(𝔤)` and the auxiliary space `P(𝔥)`,
//! plus the Berger-property check `span{R(u,v)} = 𝔤`.
//!
//! `R(𝔤)` is parametrized through the η∧η identification: every curvature
//! tensor is a symmetric operator on bivectors vanishing on `𝔤^⊥` (pair
//! symmetry is a consequence of the Bianchi identity for skew values), so
//! `R(u) = Σ S_{cc'}·⟨u, g_c⟩·g_{c'}` with `S` a symmetric matrix over a basis
//! `g_c` of `𝔤`. The Bianchi identity then becomes a sparse linear system in
//! the `d(d+1)/2` entries of `S`, solved by fraction-free elimination. Row
//! assembly is parallel; elimination is sequential and deterministic, so the
//! returned basis does not depend on the thread schedule.

use rayon::prelude::*;
use serde::Serialize;

use crate::curvature::{CurvatureTensor, PTensor};
use crate::families::Subalgebra;
use crate::hermitian::HermitianSpace;
use crate::linalg::{echelon, RMatrix, SpanBuilder};
use crate::parabolic::{bivector_pairs, is_sp};
use crate::qmatrix::QMatrix;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Basis of `R(𝔤)` in the symmetric-operator parametrization.
pub struct CurvatureSolution {
    ambient_dim: usize,
    generators: Vec<RMatrix>,
    /// Pairing table `⟨e_i∧e_j, g_c⟩ = η(g_c e_i, e_j)`, one dense row per
    /// generator, indexed by bivector pair.
    pairings: Vec<Vec<Scalar>>,
    /// Nullspace basis: packed upper-triangle symmetric matrices over the
    /// generator index.
    s_basis: Vec<Vec<Scalar>>,
}

impl CurvatureSolution {
    /// Dimension of `R(𝔤)`.
    pub fn dim(&self) -> usize {
        self.s_basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The independent generator basis the solver worked over.
    pub fn generators(&self) -> &[RMatrix] {
        &self.generators
    }

    fn sym_index(&self, c: usize, c2: usize) -> usize {
        let d = self.generators.len();
        let (a, b) = if c <= c2 { (c, c2) } else { (c2, c) };
        a * d - a * (a + 1) / 2 + b
    }

    /// Coefficients over the generators of `R_t(e_i, e_j)` for basis tensor `t`.
    pub fn image_coefficients(&self, t: usize, pair_idx: usize) -> Vec<Scalar> {
        let d = self.generators.len();
        let s = &self.s_basis[t];
        let mut out = vec![Scalar::zero(); d];
        for c in 0..d {
            let p = &self.pairings[c][pair_idx];
            if p.is_zero() {
                continue;
            }
            for (c2, slot) in out.iter_mut().enumerate() {
                let v = &s[self.sym_index(c, c2)];
                if !v.is_zero() {
                    *slot += &(p * v);
                }
            }
        }
        out
    }

    /// Expands basis tensor `t` to explicit per-bivector matrices.
    pub fn tensor(&self, t: usize) -> CurvatureTensor {
        let npairs = self.ambient_dim * (self.ambient_dim - 1) / 2;
        let mut values = Vec::with_capacity(npairs);
        for pair_idx in 0..npairs {
            let coeffs = self.image_coefficients(t, pair_idx);
            let mut m = RMatrix::zero(self.ambient_dim, self.ambient_dim);
            for (c2, v) in coeffs.iter().enumerate() {
                if !v.is_zero() {
                    m = m.add(&self.generators[c2].scale(v));
                }
            }
            values.push(m);
        }
        CurvatureTensor::from_values(self.ambient_dim, values).expect("shape by construction")
    }

    pub fn tensors(&self) -> Vec<CurvatureTensor> {
        (0..self.dim()).map(|t| self.tensor(t)).collect()
    }

    /// Dimension of `span{R(e_i, e_j)}` over all basis tensors and bivectors,
    /// inside the generator coefficient space.
    pub fn image_span_dim(&self) -> usize {
        let d = self.generators.len();
        let npairs = self.ambient_dim * (self.ambient_dim - 1) / 2;
        let mut span = SpanBuilder::new(d);
        for t in 0..self.dim() {
            for pair_idx in 0..npairs {
                let v = self.image_coefficients(t, pair_idx);
                if !crate::linalg::vec_is_zero(&v) {
                    span.insert(&v);
                }
                if span.rank() == d {
                    return d;
                }
            }
        }
        span.rank()
    }
}

/// Computes an exact basis of `R(𝔤)` for `𝔤` spanned by the given η-skew
/// matrices. Dependent generators are reduced away deterministically.
pub fn solve_r(generators: &[RMatrix], eta: &RMatrix) -> Result<CurvatureSolution> {
    let ambient_dim = eta.nrows();
    if eta.ncols() != ambient_dim {
        return Err(Error::Dimension("eta must be square".into()));
    }
    let mut independent: Vec<RMatrix> = Vec::new();
    let mut span = SpanBuilder::new(ambient_dim * ambient_dim);
    for (idx, g) in generators.iter().enumerate() {
        if g.nrows() != ambient_dim || g.ncols() != ambient_dim {
            return Err(Error::Dimension(format!(
                "generator {idx} is {}x{}, ambient is {ambient_dim}",
                g.nrows(),
                g.ncols()
            )));
        }
        if !g.is_skew_for(eta) {
            return Err(Error::NotSkew(format!("generator {idx}")));
        }
        if span.insert(&g.flatten()) {
            independent.push(g.clone());
        }
    }
    let d = independent.len();
    let pairs = bivector_pairs(ambient_dim);
    if d == 0 {
        return Ok(CurvatureSolution {
            ambient_dim,
            generators: independent,
            pairings: Vec::new(),
            s_basis: Vec::new(),
        });
    }

    // pairing table ⟨e_i∧e_j, g_c⟩ = η(g_c e_i, e_j)
    let pairings: Vec<Vec<Scalar>> = independent
        .iter()
        .map(|g| {
            pairs
                .iter()
                .map(|&(i, j)| {
                    let mut acc = Scalar::zero();
                    for r in 0..ambient_dim {
                        let v = g.get(r, i);
                        if !v.is_zero() {
                            acc += &(v * eta.get(r, j));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let pair_index = |i: usize, j: usize| -> (usize, bool) {
        if i < j {
            (i * ambient_dim - i * (i + 1) / 2 + (j - i - 1), false)
        } else {
            (j * ambient_dim - j * (j + 1) / 2 + (i - j - 1), true)
        }
    };
    // sparse columns of each generator
    let columns: Vec<Vec<Vec<(usize, Scalar)>>> = independent
        .iter()
        .map(|g| {
            (0..ambient_dim)
                .map(|col| {
                    (0..ambient_dim)
                        .filter_map(|row| {
                            let v = g.get(row, col);
                            (!v.is_zero()).then(|| (row, v.clone()))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let sym_index = |c: usize, c2: usize| -> u32 {
        let (a, b) = if c <= c2 { (c, c2) } else { (c2, c) };
        (a * d - a * (a + 1) / 2 + b) as u32
    };
    let nunknowns = d * (d + 1) / 2;

    // Bianchi rows per ordered triple i<j<k: the cyclic sum
    //   Σ_{c,c2} S_{c,c2} [ P_c(i,j)·g_{c2}[:,k] + P_c(j,k)·g_{c2}[:,i] + P_c(k,i)·g_{c2}[:,j] ]
    // must vanish; one row per ambient component.
    let triples: Vec<(usize, usize, usize)> = {
        let mut v = Vec::new();
        for i in 0..ambient_dim {
            for j in i + 1..ambient_dim {
                for k in j + 1..ambient_dim {
                    v.push((i, j, k));
                }
            }
        }
        v
    };
    let rows: Vec<Vec<(u32, Scalar)>> = triples
        .par_iter()
        .flat_map_iter(|&(i, j, k)| {
            let mut per_component: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); ambient_dim];
            let cyc = [(i, j, k), (j, k, i), (k, i, j)];
            for c in 0..d {
                for &(a, b, target) in &cyc {
                    let (pidx, flip) = pair_index(a, b);
                    let p = &pairings[c][pidx];
                    if p.is_zero() {
                        continue;
                    }
                    let p = if flip { -p } else { p.clone() };
                    for (c2, cols) in columns.iter().enumerate() {
                        let s_idx = sym_index(c, c2);
                        for (row, v) in &cols[target] {
                            per_component[*row].push((s_idx, &p * v));
                        }
                    }
                }
            }
            per_component.into_iter().filter(|r| !r.is_empty())
        })
        .collect();

    let s_basis = echelon(rows, nunknowns).nullspace();
    Ok(CurvatureSolution {
        ambient_dim,
        generators: independent,
        pairings,
        s_basis,
    })
}

/// `solve_r` for a bracket-closed subalgebra, over the realified basis.
pub fn solve_r_subalgebra(g: &Subalgebra) -> Result<CurvatureSolution> {
    solve_r(&g.realified_basis(), &g.space().eta_matrix())
}

/// Exact basis of `P(𝔥)` for `𝔥 ⊂ sp(n)` spanned by the given matrices:
/// maps `ℝ^{4n} → 𝔥` with cyclically vanishing η-contraction.
pub fn solve_p(h: &[QMatrix], space: &HermitianSpace) -> Result<Vec<PTensor>> {
    let n = space.n();
    let mut independent: Vec<QMatrix> = Vec::new();
    let mut span = SpanBuilder::new(4 * n * n);
    let flat = |a: &QMatrix| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(4 * n * n);
        for i in 0..n {
            for j in 0..n {
                out.extend(a.get(i, j).components().into_iter().cloned());
            }
        }
        out
    };
    for (idx, a) in h.iter().enumerate() {
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::Dimension(format!("generator {idx} must be {n}x{n}")));
        }
        if !is_sp(a, space.gram()) {
            return Err(Error::NotSkew(format!("generator {idx} is not in sp(n)")));
        }
        if span.insert(&flat(a)) {
            independent.push(a.clone());
        }
    }
    let dh = independent.len();
    let dim = 4 * n;
    if dh == 0 {
        return Ok(Vec::new());
    }
    let eta = space.inner_eta_matrix();
    let real_mats: Vec<RMatrix> = independent.iter().map(QMatrix::realify).collect();
    // pairing(c, a, b) = η(h_c e_a, e_b)
    let pairing = |c: usize, a: usize, b: usize| -> Scalar {
        let m = &real_mats[c];
        let mut acc = Scalar::zero();
        for r in 0..dim {
            let v = m.get(r, a);
            if !v.is_zero() {
                acc += &(v * eta.get(r, b));
            }
        }
        acc
    };
    // unknowns: coefficient of h_c at base vector x: index x*dh + c
    let nunknowns = dim * dh;
    let mut rows: Vec<Vec<(u32, Scalar)>> = Vec::new();
    for x in 0..dim {
        for y in x + 1..dim {
            for z in y + 1..dim {
                let mut row = Vec::new();
                for c in 0..dh {
                    let v1 = pairing(c, y, z);
                    if !v1.is_zero() {
                        row.push(((x * dh + c) as u32, v1));
                    }
                    let v2 = pairing(c, z, x);
                    if !v2.is_zero() {
                        row.push(((y * dh + c) as u32, v2));
                    }
                    let v3 = pairing(c, x, y);
                    if !v3.is_zero() {
                        row.push(((z * dh + c) as u32, v3));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let ns = echelon(rows, nunknowns).nullspace();
    let mut out = Vec::with_capacity(ns.len());
    for sol in ns {
        let mut values = Vec::with_capacity(dim);
        for x in 0..dim {
            let mut acc = QMatrix::zero(n, n);
            for (c, gen) in independent.iter().enumerate() {
                let v = &sol[x * dh + c];
                if !v.is_zero() {
                    acc = acc.add(&gen.scale(v));
                }
            }
            values.push(acc);
        }
        out.push(PTensor::from_values(n, values).expect("shape by construction"));
    }
    Ok(out)
}

/// Berger verdict: `is_berger ⟺ span{R(e_i,e_j) | R ∈ R(𝔤)} = 𝔤`.
#[derive(Clone, Debug, Serialize)]
pub struct BergerReport {
    pub is_berger: bool,
    pub span_dim: usize,
    pub algebra_dim: usize,
    pub curvature_dim: usize,
}

/// Computes `R(𝔤)` and the exact span of the images over all basis tensors and
/// basis bivectors. Requires a bracket-closed input (enforced by
/// [`Subalgebra`]'s constructor).
pub fn berger_check(g: &Subalgebra) -> Result<BergerReport> {
    let sol = solve_r_subalgebra(g)?;
    let span_dim = sol.image_span_dim();
    Ok(BergerReport {
        is_berger: span_dim == g.dim(),
        span_dim,
        algebra_dim: g.dim(),
        curvature_dim: sol.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::{parabolic_basis, sp_basis};

    fn sp1_generators(space: &HermitianSpace) -> Vec<RMatrix> {
        sp_basis(space.n(), space.gram())
            .unwrap()
            .into_iter()
            .map(|m| m.realify())
            .collect()
    }

    #[test]
    fn trivial_algebra_has_no_curvature() {
        let sol = solve_r(&[], &RMatrix::identity(4)).unwrap();
        assert_eq!(sol.dim(), 0);
    }

    #[test]
    fn sp1_dimensions() {
        // R(sp(1)) over R^4 has dimension 5 (cross-checked against the naive
        // Hom-space enumeration in the acceptance tests), P(sp(1)) dimension 8.
        let sp = HermitianSpace::standard(1);
        let gens = sp1_generators(&sp);
        let sol = solve_r(&gens, &sp.inner_eta_matrix()).unwrap();
        assert_eq!(sol.dim(), 5);
        let p = solve_p(&sp_basis(1, sp.gram()).unwrap(), &sp).unwrap();
        assert_eq!(p.len(), 8);
        for t in p {
            assert!(t.cyclic_condition_holds(&sp));
        }
    }

    #[test]
    fn solver_tensors_pass_bianchi() {
        let sp = HermitianSpace::standard(1);
        let gens = sp1_generators(&sp);
        let sol = solve_r(&gens, &sp.inner_eta_matrix()).unwrap();
        for t in sol.tensors() {
            assert!(t.bianchi_violation().is_none());
        }
    }

    #[test]
    fn parabolic_curvature_dimension_n1() {
        let sp = HermitianSpace::standard(1);
        let gens: Vec<RMatrix> = parabolic_basis(&sp)
            .iter()
            .map(|e| e.realify(&sp))
            .collect();
        let sol = solve_r(&gens, &sp.eta_matrix()).unwrap();
        assert_eq!(sol.dim(), 43);
    }

    #[test]
    fn rejects_non_skew_generator() {
        let mut m = RMatrix::zero(4, 4);
        m.set(0, 0, Scalar::one());
        assert!(matches!(
            solve_r(&[m], &RMatrix::identity(4)),
            Err(Error::NotSkew(_))
        ));
    }

    #[test]
    fn curvature_monotone_under_inclusion() {
        // g' = ImH ideal ⊂ g = C^1 + ImH inside the parabolic at n=1
        let sp = HermitianSpace::standard(1);
        let imh: Vec<RMatrix> = (1..4)
            .map(|r| crate::parabolic::ParabolicElement::from_b(1, crate::quat::Quat::unit(r)))
            .map(|e| e.realify(&sp))
            .collect();
        let mut larger = imh.clone();
        larger.push(
            crate::parabolic::ParabolicElement::from_translation(
                1,
                crate::qmatrix::QVector::basis(1, 0, crate::quat::Quat::one()),
            )
            .realify(&sp),
        );
        larger.push(
            crate::parabolic::ParabolicElement::from_translation(
                1,
                crate::qmatrix::QVector::basis(1, 0, crate::quat::Quat::i()),
            )
            .realify(&sp),
        );
        let eta = sp.eta_matrix();
        let small = solve_r(&imh, &eta).unwrap();
        let large = solve_r(&larger, &eta).unwrap();
        assert!(small.dim() <= large.dim());
    }

    #[test]
    fn berger_on_full_parabolic() {
        let sp = HermitianSpace::standard(1);
        let sub = Subalgebra::new(sp.clone(), parabolic_basis(&sp)).unwrap();
        let report = berger_check(&sub).unwrap();
        assert!(report.is_berger);
        assert_eq!(report.span_dim, 14);
        assert_eq!(report.curvature_dim, 43);
    }
}
