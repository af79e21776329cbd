//! Nilpotent cones, σ-nilpotent orbits and the boundary Mumford–Tate algebra
//! m_{B(σ)} = m_σ ⋊ g_{B(σ)}, with fibration dimensions and classification.

mod analyze;
mod classify;
mod input;
pub mod report;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hodge::{
    delta_split, deligne_bigrading, domain_grading_element, filtration_span, induced_adjoint_filtration,
    is_isotropic, polarization_check, Bigrading, DeltaSplit, Mhs, PolarizationReport,
};
use crate::liealg::{Element, MatrixLieAlgebra};
use crate::linalg::{Filtration, Mat, Subspace};
use crate::scalars::{rat, QuadExt, Rational};
use crate::sl2kit::{primitive_cone, primitive_hat, weight_filtration_of};

pub use analyze::{analyze, build_algebra, AnalysisOptions, Analysis};
pub use classify::{classify, Classification, Verdict, VerdictStatus};
pub use input::{AlgebraKind, AlgebraSpec, AnalysisInput};
pub use report::{render_diagram, render_verdicts, BoundaryReport, HodgeCount, SCHEMA_VERSION};

#[derive(Clone, Debug)]
pub struct NilpotentCone {
    pub generators: Vec<Element<Rational>>,
    pub n_sum: Element<Rational>,
    /// W(σ) on the algebra, centered at 0.
    pub w: Filtration<Rational>,
    /// W(σ) on V, centered at `center`.
    pub w_v: Filtration<Rational>,
    pub center: i32,
}

impl NilpotentCone {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn span(&self, g: &MatrixLieAlgebra) -> Subspace<Rational> {
        Subspace::from_vectors(g.dim(), self.generators.iter().map(|n| n.coords.clone()).collect(), ())
    }

    pub fn ad_generators(&self, g: &MatrixLieAlgebra) -> Vec<Mat<Rational>> {
        self.generators.iter().map(|n| g.ad(n)).collect()
    }
}

/// Interior points (1,…,1), (1,2,…,r), (2,1,…,1) at which W is resampled.
fn sample_points(r: usize) -> Vec<Vec<i64>> {
    vec![vec![1; r], (1..=r as i64).collect(), (0..r).map(|i| if i == 0 { 2 } else { 1 }).collect()]
}

pub fn validate_cone(g: &MatrixLieAlgebra, gens: &[Mat<Rational>], center: i32) -> Result<NilpotentCone> {
    if gens.is_empty() {
        return Err(Error::Cone("the cone has no generators".into()));
    }
    let mut elems = Vec::with_capacity(gens.len());
    for (j, m) in gens.iter().enumerate() {
        let e = g
            .element_from_mat(m)
            .map_err(|_| Error::NotInAlgebra(format!("cone generator {j} is not in the algebra")))?;
        if !m.is_nilpotent() {
            return Err(Error::Cone(format!("generator {j} is not nilpotent")));
        }
        elems.push(e);
    }
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if !elems[i].mat.commutator(&elems[j].mat).is_zero() {
                return Err(Error::Cone(format!("generators {i} and {j} do not commute")));
            }
        }
    }
    let span = Subspace::from_vectors(g.dim(), elems.iter().map(|e| e.coords.clone()).collect(), ());
    if span.dim() != elems.len() {
        return Err(Error::Cone("generators are linearly dependent".into()));
    }
    let combo = |coef: &[i64]| -> Element<Rational> {
        let mut c = vec![rat(0); g.dim()];
        for (e, a) in elems.iter().zip(coef) {
            for (x, y) in c.iter_mut().zip(&e.coords) {
                *x += y * rat(*a);
            }
        }
        g.element(c, ())
    };
    let n_sum = combo(&vec![1; elems.len()]);
    let w = weight_filtration_of(&g.ad(&n_sum), 0)?;
    let w_v = weight_filtration_of(&n_sum.mat, center)?;
    for pt in sample_points(elems.len()) {
        let n = combo(&pt);
        let wa = weight_filtration_of(&g.ad(&n), 0)?;
        let wv = weight_filtration_of(&n.mat, center)?;
        if !wa.same_as(&w) || !wv.same_as(&w_v) {
            return Err(Error::Cone(format!("weight filtration changes at the interior point {pt:?}")));
        }
    }
    Ok(NilpotentCone { generators: elems, n_sum, w, w_v, center })
}

/// The δ-split reference point of (F, W(σ)) and its adjoint bigrading.
#[derive(Clone, Debug)]
pub struct Reference {
    pub mhs: Mhs,
    pub bigrading_v: Bigrading,
    pub split: DeltaSplit,
    pub adjoint: Bigrading,
    pub adjoint_w: Filtration<QuadExt>,
}

pub fn reference_lmhs(g: &MatrixLieAlgebra, cone: &NilpotentCone, f: &Filtration<QuadExt>) -> Result<Reference> {
    let mhs = Mhs::new(f.clone(), &cone.w_v)?;
    let bigrading_v = deligne_bigrading(&mhs)?;
    let split = delta_split(&mhs)?;
    let fa = induced_adjoint_filtration(g, &split.split.f);
    let adj = Mhs::new(fa, &cone.w)?;
    let adjoint = deligne_bigrading(&adj)?;
    Ok(Reference { mhs, bigrading_v, split, adjoint, adjoint_w: adj.w })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct OrbitReport {
    pub horizontal: Vec<bool>,
    pub level: i32,
    pub level_bound: Vec<bool>,
    pub limit_mhs: bool,
    pub in_compact_dual: bool,
    pub primitive_hat: Vec<PolarizationReport>,
    pub primitive_only: Vec<PolarizationReport>,
    pub on_v: Vec<PolarizationReport>,
    pub nilpotent_orbit: bool,
}

impl OrbitReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (j, h) in self.horizontal.iter().enumerate() {
            if !h {
                out.push(format!("N_{j} is not horizontal"));
            }
        }
        for (j, h) in self.level_bound.iter().enumerate() {
            if !h {
                out.push(format!("(ad N_{j})^{} ≠ 0", self.level + 1));
            }
        }
        if !self.limit_mhs {
            out.push("(F, W(σ)) is not a mixed Hodge structure".into());
        }
        if !self.in_compact_dual {
            out.push("F is not in the compact dual of the algebra's domain".into());
        }
        for r in &self.primitive_hat {
            if !r.first_relation {
                out.push(format!("first bilinear relation fails on P̂_{}", r.weight));
            }
            for (p, q) in r.failing() {
                out.push(format!("P̂_{} is not polarized on the ({p},{q}) piece", r.weight));
            }
        }
        out
    }
}

/// Rejects malformed F (wrong size, not Q-isotropic), then evaluates the
/// nilpotent-orbit criteria.
pub fn orbit_check(g: &MatrixLieAlgebra, cone: &NilpotentCone, f: &Filtration<QuadExt>) -> Result<OrbitReport> {
    check_f_shape(g, f)?;
    let reference = reference_lmhs(g, cone, f).ok();
    orbit_check_with(g, cone, f, reference.as_ref())
}

pub fn check_f_shape(g: &MatrixLieAlgebra, f: &Filtration<QuadExt>) -> Result<()> {
    if f.ambient() != g.ambient_dim() {
        return Err(Error::Dimension(format!(
            "F lives in dimension {} but the algebra acts on dimension {}",
            f.ambient(),
            g.ambient_dim()
        )));
    }
    if !is_isotropic(&g.q().lift(f.ctx()), f, g.weight()) {
        return Err(Error::Domain("malformed F: Q(F^p, F^{n-p+1}) ≠ 0".into()));
    }
    Ok(())
}

pub fn orbit_check_with(
    g: &MatrixLieAlgebra,
    cone: &NilpotentCone,
    f: &Filtration<QuadExt>,
    reference: Option<&Reference>,
) -> Result<OrbitReport> {
    check_f_shape(g, f)?;
    let d = f.ctx();
    let (lo, hi) = filtration_span(f);
    let horizontal = cone
        .generators
        .iter()
        .map(|n| {
            let m = n.mat.lift::<QuadExt>(d);
            (lo..=hi + 1).all(|p| f.get(p - 1).contains(&f.get(p).image_under(&m)))
        })
        .collect();
    let fa = induced_adjoint_filtration(g, f);
    let (alo, ahi) = filtration_span(&fa);
    let level = ahi - alo;
    let level_bound = cone.generators.iter().map(|n| g.ad(n).pow((level + 1) as usize).is_zero()).collect();
    let in_compact_dual = domain_grading_element(g, f, g.weight()).is_some();
    let mut primitive_hat_reports = Vec::new();
    let mut primitive_only = Vec::new();
    let mut on_v = Vec::new();
    if let Some(r) = reference {
        let ad_n = g.ad(&cone.n_sum).lift::<QuadExt>(d);
        let ad_gens: Vec<Mat<QuadExt>> = cone.ad_generators(g).iter().map(|a| a.lift::<QuadExt>(d)).collect();
        let b = g.b_gram().lift::<QuadExt>(d);
        let (_, whi) = r.adjoint_w.jump_range().unwrap_or((0, 0));
        for k in 0..=whi {
            let hat = primitive_hat(&ad_n, &r.adjoint_w, k).lift;
            let prim = primitive_cone(&ad_gens, &ad_n, &r.adjoint_w, k).lift;
            let graded = |sub: &Subspace<QuadExt>| -> BTreeMap<(i32, i32), Subspace<QuadExt>> {
                r.adjoint
                    .pieces
                    .iter()
                    .filter(|((p, q), _)| p + q == k)
                    .map(|(key, s)| (*key, s.intersect(sub)))
                    .filter(|(_, s)| !s.is_zero())
                    .collect()
            };
            let nk = ad_n.pow(k as usize);
            primitive_hat_reports.push(polarization_check(&graded(&hat), &b, &nk, k));
            primitive_only.push(polarization_check(&graded(&prim), &b, &nk, k));
        }
        let n = cone.n_sum.mat.lift::<QuadExt>(d);
        let q = g.q().lift::<QuadExt>(d);
        let (_, vhi) = r.mhs.weight_range();
        let sb = &r.split.bigrading;
        for k in 0..=(vhi - cone.center) {
            let ker = n.pow((k + 1) as usize).kernel();
            let pieces: BTreeMap<(i32, i32), Subspace<QuadExt>> = sb
                .pieces
                .iter()
                .filter(|((p, qq), _)| p + qq == cone.center + k)
                .map(|(key, s)| (*key, s.intersect(&ker)))
                .filter(|(_, s)| !s.is_zero())
                .collect();
            on_v.push(polarization_check(&pieces, &q, &n.pow(k as usize), cone.center + k));
        }
    }
    let limit_mhs = reference.is_some();
    let mut report = OrbitReport {
        horizontal,
        level,
        level_bound,
        limit_mhs,
        in_compact_dual,
        primitive_hat: primitive_hat_reports,
        primitive_only,
        on_v,
        nilpotent_orbit: false,
    };
    report.nilpotent_orbit = report.failures().is_empty();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GradedDims {
    pub k: i32,
    pub gr_m: usize,
    pub gr_m_sigma: usize,
    pub p_k: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct BoundaryData {
    pub z_sigma: Subspace<Rational>,
    pub m_sigma: Subspace<Rational>,
    pub g_sigma: Subspace<Rational>,
    pub span_sigma: Subspace<Rational>,
    pub graded: Vec<GradedDims>,
}

/// z(σ), m_σ = z(σ) ∩ W(σ)₋₁ and g_σ = z(σ) ∩ ker ad Y for the grading
/// element Y of the reference point.
pub fn boundary_data(g: &MatrixLieAlgebra, cone: &NilpotentCone, y: &Element<Rational>) -> Result<BoundaryData> {
    let gens: Vec<Vec<Rational>> = cone.generators.iter().map(|n| n.coords.clone()).collect();
    let z_sigma = g.centralizer(&gens, ());
    let m_sigma = z_sigma.intersect(&cone.w.get(-1));
    let e0 = g.ad(y).kernel();
    let g_sigma = z_sigma.intersect(&e0);
    let span_sigma = cone.span(g);
    if !m_sigma.contains(&span_sigma) {
        return Err(Error::Internal("⟨σ⟩ is not contained in m_σ".into()));
    }
    if g_sigma.dim() + m_sigma.dim() != z_sigma.dim() || !g_sigma.intersect(&m_sigma).is_zero() {
        return Err(Error::Internal("g_σ is not a complement of m_σ in z(σ)".into()));
    }
    let ad_gens = cone.ad_generators(g);
    let ad_n = g.ad(&cone.n_sum);
    let (lo, hi) = cone.w.jump_range().unwrap_or((0, 0));
    let graded = (lo..=hi)
        .map(|k| {
            let gr_m = cone.w.graded_dim(k);
            let gr_m_sigma = m_sigma.intersect(&cone.w.get(k)).dim() - m_sigma.intersect(&cone.w.get(k - 1)).dim();
            let p_k = (k >= 0).then(|| primitive_cone(&ad_gens, &ad_n, &cone.w, k).dim());
            GradedDims { k, gr_m, gr_m_sigma, p_k }
        })
        .collect();
    Ok(BoundaryData { z_sigma, m_sigma, g_sigma, span_sigma, graded })
}

/// Smallest subalgebra of g_σ containing ψ and stable under ad g_σ: the fixed
/// point of S ← S + [g_σ, S] + [S, S].
pub fn g_closure(g: &MatrixLieAlgebra, g_sigma: &Subspace<Rational>, psi: &[Rational]) -> Result<Subspace<Rational>> {
    if !g_sigma.contains_vector(psi) {
        return Err(Error::Algebra("ψ does not lie in g_σ".into()));
    }
    let mut s = Subspace::from_vectors(g.dim(), vec![psi.to_vec()], ());
    for _ in 0..=g_sigma.dim() {
        let next = s.sum(&g.bracket_spaces(g_sigma, &s)).sum(&g.bracket_spaces(&s, &s));
        if next == s {
            return Ok(s);
        }
        s = next;
    }
    Err(Error::Internal("Lie closure did not stabilize".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FibrationDims {
    /// Complex fiber dimension at each level k ≥ 1 (nonzero levels only).
    pub fibers: BTreeMap<i32, usize>,
    pub base: usize,
    pub total: usize,
}

/// Fiber at level k: dim Gr_{−k} m_σ − dim F⁰Gr_{−k} m_σ (less dim⟨σ⟩ at
/// k = 2); base: dim g_B − dim (g_B ⊗ 𝔽) ∩ F⁰.
pub fn fibration_dims(
    data: &BoundaryData,
    g_b: &Subspace<Rational>,
    w: &Filtration<Rational>,
    adjoint: &Bigrading,
) -> FibrationDims {
    let d = adjoint.disc();
    let f0 = adjoint.sum_where(|p, _| p >= 0);
    let m = data.m_sigma.extend_scalars(d);
    let wq = w.extend_scalars(d);
    let (lo, _) = w.jump_range().unwrap_or((0, 0));
    let mut fibers = BTreeMap::new();
    for k in 1..=(-lo).max(0) {
        let at = |j: i32| m.intersect(&wq.get(j));
        let gr = at(-k).dim() - at(-k - 1).dim();
        let gr_f0 = at(-k).intersect(&f0).dim() - at(-k - 1).intersect(&f0).dim();
        let mut fib = gr - gr_f0;
        if k == 2 {
            fib -= data.span_sigma.dim();
        }
        if fib > 0 {
            fibers.insert(k, fib);
        }
    }
    let gb = g_b.extend_scalars(d);
    let base = gb.dim() - gb.intersect(&f0).dim();
    let total = base + fibers.values().sum::<usize>();
    FibrationDims { fibers, base, total }
}

/// The rational subspace W₋₁ m_{B(σ)}, with m_{B(σ)} = m_σ + g_B.
pub fn unipotent_part(w: &Filtration<Rational>, m_sigma: &Subspace<Rational>, g_b: &Subspace<Rational>) -> Subspace<Rational> {
    m_sigma.sum(g_b).intersect(&w.get(-1))
}

/// Whether δ (on V) lowers W by two and commutes with every generator.
pub fn delta_is_admissible(delta: &Mat<Rational>, cone: &NilpotentCone) -> (bool, bool) {
    let (lo, hi) = cone.w_v.bounds().unwrap_or((0, 0));
    let lowers = (lo - 1..=hi + 1).all(|k| cone.w_v.get(k - 2).contains(&cone.w_v.get(k).image_under(delta)));
    let commutes = cone.generators.iter().all(|n| delta.commutator(&n.mat).is_zero());
    (lowers, commutes)
}

#[cfg(test)]
mod tests;
