use super::classify::ClassifyInput;
use super::input::{AlgebraKind, AlgebraSpec, AnalysisInput};
use super::{
    boundary_data, classify, delta_is_admissible, fibration_dims, g_closure, orbit_check_with, reference_lmhs,
    unipotent_part, BoundaryData, Classification, FibrationDims, NilpotentCone, OrbitReport, Reference,
};
use crate::error::{Error, Result};
use crate::hodge::{filtration_span, grading_elements, induced_adjoint_filtration, pure_hs_direction, SplittingElements};
use crate::liealg::{g2, sp_or_so, su21_qform, MatrixLieAlgebra, StructureProbe};
use crate::linalg::{Filtration, Subspace};
use crate::scalars::{QuadExt, Rational};

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalysisOptions {
    pub sign_b: Option<i32>,
    pub skip_orbit_check: bool,
}

pub fn build_algebra(spec: &AlgebraSpec, disc: u64, sign_override: Option<i32>) -> Result<MatrixLieAlgebra> {
    let sign = sign_override.unwrap_or(spec.sign_b);
    let q = || spec.q.clone().ok_or_else(|| Error::Schema { pointer: "/algebra/Q".into(), message: "missing field".into() });
    let g = match spec.kind {
        AlgebraKind::Sp => {
            let q = q()?;
            if q.transpose() != q.neg() {
                return Err(Error::Schema { pointer: "/algebra/Q".into(), message: "sp needs an alternating Q".into() });
            }
            sp_or_so(q, spec.weight, sign)?
        }
        AlgebraKind::So => {
            let q = q()?;
            if q.transpose() != q {
                return Err(Error::Schema { pointer: "/algebra/Q".into(), message: "so needs a symmetric Q".into() });
            }
            sp_or_so(q, spec.weight, sign)?
        }
        AlgebraKind::G2 => g2(sign)?,
        AlgebraKind::Su21QForm => su21_qform(disc, sign)?.0,
        AlgebraKind::Explicit => MatrixLieAlgebra::new(spec.basis.clone(), q()?, spec.weight, sign)?,
    };
    if matches!(spec.kind, AlgebraKind::G2 | AlgebraKind::Su21QForm) {
        if let Some(q) = &spec.q {
            if q != g.q() {
                return Err(Error::Schema {
                    pointer: "/algebra/Q".into(),
                    message: format!("does not match the built-in form of {}", spec.kind.name()),
                });
            }
        }
        if spec.weight != g.weight() {
            return Err(Error::Schema {
                pointer: "/algebra/weight".into(),
                message: format!("{} acts on a weight {} space", spec.kind.name(), g.weight()),
            });
        }
    }
    match &spec.b_gram {
        Some(b) => g.with_b_gram(b.clone()),
        None => Ok(g),
    }
}

/// Every stage of one (cone, F) analysis.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub g: MatrixLieAlgebra,
    pub cone: NilpotentCone,
    pub f: Filtration<QuadExt>,
    pub orbit: Option<OrbitReport>,
    pub reference: Reference,
    pub splitting: SplittingElements,
    /// ψ of F itself when F is a pure Hodge structure.
    pub pure_hs_psi: Option<Vec<Rational>>,
    pub data: BoundaryData,
    pub g_b: Subspace<Rational>,
    pub g_b_probe: StructureProbe,
    pub dims: FibrationDims,
    pub classification: Classification,
    pub level: i32,
    pub delta_in_w_minus_2: bool,
    pub delta_commutes: bool,
    pub delta_in_algebra: bool,
    pub skip_orbit_check: bool,
}

pub fn analyze(input: &AnalysisInput, opts: AnalysisOptions) -> Result<Analysis> {
    let g = build_algebra(&input.algebra, input.discriminant, opts.sign_b)?;
    let validation = g.validate();
    if !validation.passed() {
        return Err(Error::Algebra(format!("algebra fails validation: {validation:?}")));
    }
    let center = input.center.unwrap_or(g.weight());
    let cone = super::validate_cone(&g, &input.cone, center)?;
    let f = input.filtration(g.ambient_dim())?;
    super::check_f_shape(&g, &f)?;
    let reference = reference_lmhs(&g, &cone, &f)?;
    let orbit = if opts.skip_orbit_check { None } else { Some(orbit_check_with(&g, &cone, &f, Some(&reference))?) };
    let splitting = grading_elements(&g, &reference.adjoint, &cone.n_sum)?;
    let pure_hs_psi = pure_hs_direction(&g, &f, g.weight());
    let data = boundary_data(&g, &cone, &splitting.y)?;
    let g_b = g_closure(&g, &data.g_sigma, &splitting.psi.coords)?;
    let g_b_probe = g.structure_probe(&g_b)?;
    let dims = fibration_dims(&data, &g_b, &cone.w, &reference.adjoint);
    let level = match &orbit {
        Some(o) => o.level,
        None => {
            let (lo, hi) = filtration_span(&induced_adjoint_filtration(&g, &f));
            hi - lo
        }
    };
    let (horizontal, polarized) = match &orbit {
        Some(o) => (
            o.horizontal.iter().all(|h| *h),
            o.primitive_only.iter().all(|r| r.passed()),
        ),
        None => (false, false),
    };
    let classification = classify(&ClassifyInput {
        g: &g,
        cone: &cone,
        data: &data,
        g_b: &g_b,
        adjoint: &reference.adjoint,
        psi_zero: splitting.psi.mat.is_zero(),
        dims: &dims,
        level,
        horizontal,
        polarized,
    });
    let (delta_in_w_minus_2, delta_commutes) = delta_is_admissible(&reference.split.delta, &cone);
    let delta_in_algebra = reference.split.delta.is_zero() || g.coords_of(&reference.split.delta).is_some();
    Ok(Analysis {
        g,
        cone,
        f,
        orbit,
        reference,
        splitting,
        pure_hs_psi,
        data,
        g_b,
        g_b_probe,
        dims,
        classification,
        level,
        delta_in_w_minus_2,
        delta_commutes,
        delta_in_algebra,
        skip_orbit_check: opts.skip_orbit_check,
    })
}

impl Analysis {
    /// W₋₁ m_{B(σ)} equals m_σ, [g_B, m_σ] ⊆ m_σ, and m_σ ∩ g_B = 0.
    pub fn semidirect_checks(&self) -> (bool, bool, bool) {
        let w1 = unipotent_part(&self.cone.w, &self.data.m_sigma, &self.g_b) == self.data.m_sigma;
        let stable = self.data.m_sigma.contains(&self.g.bracket_spaces(&self.g_b, &self.data.m_sigma));
        let direct = self.data.m_sigma.intersect(&self.g_b).is_zero();
        (w1, stable, direct)
    }

    pub fn is_nilpotent_orbit(&self) -> bool {
        self.orbit.as_ref().is_some_and(|o| o.nilpotent_orbit)
    }
}
