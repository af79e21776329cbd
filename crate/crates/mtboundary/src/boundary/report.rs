use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::analyze::Analysis;
use super::classify::Classification;
use super::{GradedDims, OrbitReport};
use crate::hodge::{splitness, Bigrading};
use crate::liealg::StructureProbe;
use crate::linalg::{Mat, Subspace};
use crate::scalars::{format_rational, Rational};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeCount {
    pub p: i32,
    pub q: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub dim: usize,
    pub ambient_dim: usize,
    pub weight: i32,
    pub sign_b: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSummary {
    pub rank: usize,
    pub center: i32,
    /// Generator coordinates in the algebra basis.
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingSummary {
    pub input_r_split: bool,
    pub q_split: bool,
    pub delta: Vec<Vec<String>>,
    pub delta_in_w_minus_2: bool,
    pub delta_commutes_with_cone: bool,
    pub delta_in_algebra: bool,
    pub y: Vec<String>,
    pub psi: Vec<String>,
    pub psi_zero: bool,
    /// ψ of F read as a pure Hodge structure, when it is one.
    pub psi_of_f: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataSummary {
    pub dim_z_sigma: usize,
    pub dim_m_sigma: usize,
    pub dim_g_sigma: usize,
    pub dim_span_sigma: usize,
    pub m_sigma_is_z_sigma: bool,
    pub graded: Vec<GradedDims>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbSummary {
    pub probe: StructureProbe,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub dim_m_b: usize,
    pub w_minus_1_m_b_is_m_sigma: bool,
    pub g_b_normalizes_m_sigma: bool,
    pub sum_is_direct: bool,
    pub g_b_in_g_sigma: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDim {
    pub level: i32,
    pub complex_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsSummary {
    pub w_minus_1_m_b: usize,
    pub g_b: usize,
    pub fibers: Vec<FiberDim>,
    pub base: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub schema_version: u32,
    pub watermark: Option<String>,
    pub algebra: AlgebraSummary,
    pub cone: ConeSummary,
    pub orbit: Option<OrbitReport>,
    pub hodge_v: Vec<HodgeCount>,
    pub hodge_adjoint: Vec<HodgeCount>,
    pub splitting: SplittingSummary,
    pub data: DataSummary,
    pub g_b: GbSummary,
    pub structure: StructureSummary,
    pub dims: DimsSummary,
    pub classification: Classification,
    /// Stated assumption behind the g_B computation.
    pub assumptions: Vec<String>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn mat_strings(m: &Mat<Rational>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| strings(r)).collect()
}

fn basis_strings(s: &Subspace<Rational>) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| strings(v)).collect()
}

pub fn hodge_counts(b: &Bigrading) -> Vec<HodgeCount> {
    b.hodge_numbers().into_iter().map(|((p, q), dim)| HodgeCount { p, q, dim }).collect()
}

impl BoundaryReport {
    pub fn from_analysis(a: &Analysis) -> Self {
        let (w1, stable, direct) = a.semidirect_checks();
        BoundaryReport {
            schema_version: SCHEMA_VERSION,
            watermark: a.skip_orbit_check.then(|| "NOT A NILPOTENT ORBIT".to_string()),
            algebra: AlgebraSummary {
                dim: a.g.dim(),
                ambient_dim: a.g.ambient_dim(),
                weight: a.g.weight(),
                sign_b: a.g.sign_b(),
            },
            cone: ConeSummary {
                rank: a.cone.rank(),
                center: a.cone.center,
                generators: a.cone.generators.iter().map(|n| strings(&n.coords)).collect(),
            },
            orbit: a.orbit.clone(),
            hodge_v: hodge_counts(&a.reference.bigrading_v),
            hodge_adjoint: hodge_counts(&a.reference.adjoint),
            splitting: SplittingSummary {
                input_r_split: splitness(&a.reference.bigrading_v).r_split,
                q_split: splitness(&a.reference.split.bigrading).q_split,
                delta: mat_strings(&a.reference.split.delta),
                delta_in_w_minus_2: a.delta_in_w_minus_2,
                delta_commutes_with_cone: a.delta_commutes,
                delta_in_algebra: a.delta_in_algebra,
                y: strings(&a.splitting.y.coords),
                psi: strings(&a.splitting.psi.coords),
                psi_zero: a.splitting.psi.mat.is_zero(),
                psi_of_f: a.pure_hs_psi.as_ref().map(|v| strings(v)),
            },
            data: DataSummary {
                dim_z_sigma: a.data.z_sigma.dim(),
                dim_m_sigma: a.data.m_sigma.dim(),
                dim_g_sigma: a.data.g_sigma.dim(),
                dim_span_sigma: a.data.span_sigma.dim(),
                m_sigma_is_z_sigma: a.data.m_sigma == a.data.z_sigma,
                graded: a.data.graded.clone(),
            },
            g_b: GbSummary { probe: a.g_b_probe.clone(), basis: basis_strings(&a.g_b) },
            structure: StructureSummary {
                dim_m_b: a.data.m_sigma.sum(&a.g_b).dim(),
                w_minus_1_m_b_is_m_sigma: w1,
                g_b_normalizes_m_sigma: stable,
                sum_is_direct: direct,
                g_b_in_g_sigma: a.data.g_sigma.contains(&a.g_b),
            },
            dims: DimsSummary {
                w_minus_1_m_b: a.data.m_sigma.dim(),
                g_b: a.g_b.dim(),
                fibers: a.dims.fibers.iter().map(|(k, v)| FiberDim { level: *k, complex_dim: *v }).collect(),
                base: a.dims.base,
                total: a.dims.total,
            },
            classification: a.classification.clone(),
            assumptions: vec![
                "g_B is the Lie closure of psi under ad g_sigma; mixed brackets span the same space as iterated single-element powers".into(),
                "the real form of Gr_0 is read off the Killing signature over Q".into(),
            ],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
    }

    /// True when every criterion the run evaluated holds.
    pub fn criteria_pass(&self) -> bool {
        self.orbit.as_ref().is_none_or(|o| o.nilpotent_orbit)
            && self.structure.w_minus_1_m_b_is_m_sigma
            && self.structure.g_b_normalizes_m_sigma
            && self.structure.sum_is_direct
            && self.splitting.delta_in_w_minus_2
            && self.splitting.delta_commutes_with_cone
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        if let Some(w) = &self.watermark {
            let _ = writeln!(s, "*** {w} ***");
        }
        let a = &self.algebra;
        let _ = writeln!(s, "algebra: dim {} on V of dim {}, weight {}, sign_B {}", a.dim, a.ambient_dim, a.weight, a.sign_b);
        let _ = writeln!(s, "cone: rank {}, W centered at {}", self.cone.rank, self.cone.center);
        match &self.orbit {
            Some(o) => {
                let _ = writeln!(s, "nilpotent orbit: {}", if o.nilpotent_orbit { "yes" } else { "no" });
                let _ = writeln!(s, "  level {}", o.level);
                for f in o.failures() {
                    let _ = writeln!(s, "  failure: {f}");
                }
                let prim_only = o.primitive_only.iter().all(|r| r.passed());
                let _ = writeln!(s, "  P_k-only polarization: {}", if prim_only { "yes" } else { "no" });
            }
            None => {
                let _ = writeln!(s, "nilpotent orbit: not checked");
            }
        }
        let fmt_counts = |c: &[HodgeCount]| c.iter().map(|h| format!("({},{}):{}", h.p, h.q, h.dim)).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "I^(p,q) on V: {}", fmt_counts(&self.hodge_v));
        let _ = writeln!(s, "I^(p,q) on g: {}", fmt_counts(&self.hodge_adjoint));
        let sp = &self.splitting;
        let _ = writeln!(
            s,
            "splitting: input R-split {}, Q-split after delta {}, delta in W_-2 {}, [delta, N] = 0 {}, delta in g {}",
            sp.input_r_split, sp.q_split, sp.delta_in_w_minus_2, sp.delta_commutes_with_cone, sp.delta_in_algebra
        );
        let _ = writeln!(s, "  Y = [{}]", sp.y.join(", "));
        let _ = writeln!(s, "  psi = [{}]", sp.psi.join(", "));
        match &sp.psi_of_f {
            Some(v) => {
                let _ = writeln!(s, "  psi of F as a pure HS = [{}]", v.join(", "));
            }
            None => {
                let _ = writeln!(s, "  F is not a pure Hodge structure");
            }
        }
        let d = &self.data;
        let _ = writeln!(
            s,
            "z(sigma) dim {}, m_sigma dim {}, g_sigma dim {}, <sigma> dim {}, m_sigma = z(sigma): {}",
            d.dim_z_sigma, d.dim_m_sigma, d.dim_g_sigma, d.dim_span_sigma, d.m_sigma_is_z_sigma
        );
        for row in &d.graded {
            let pk = row.p_k.map_or("-".to_string(), |v| v.to_string());
            let _ = writeln!(s, "  Gr_{}: m {}, m_sigma {}, P {}", row.k, row.gr_m, row.gr_m_sigma, pk);
        }
        let p = &self.g_b.probe;
        let _ = writeln!(
            s,
            "g_B: dim {}, {:?}, derived dim {}, Killing signature ({}, {}, {})",
            p.dim, p.kind, p.derived_dim, p.killing_signature.0, p.killing_signature.1, p.killing_signature.2
        );
        let st = &self.structure;
        let _ = writeln!(
            s,
            "m_B dim {}: W_-1 m_B = m_sigma {}, [g_B, m_sigma] in m_sigma {}, direct {}, g_B in g_sigma {}",
            st.dim_m_b, st.w_minus_1_m_b_is_m_sigma, st.g_b_normalizes_m_sigma, st.sum_is_direct, st.g_b_in_g_sigma
        );
        let dm = &self.dims;
        let fibers = dm.fibers.iter().map(|f| format!("k={}:{}", f.level, f.complex_dim)).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "dims: W_-1 m_B {}, g_B {}, base {}, fibers [{}], total {}", dm.w_minus_1_m_b, dm.g_b, dm.base, fibers, dm.total);
        s.push_str(&render_verdicts(&self.classification));
        for a in &self.assumptions {
            let _ = writeln!(s, "assumption: {a}");
        }
        s
    }
}

pub fn render_verdicts(c: &Classification) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdicts:");
    for v in &c.verdicts {
        let conds = v
            .conditions
            .iter()
            .map(|c| format!("{}={}", c.name, if c.holds { "yes" } else { "no" }))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(s, "  {:<18} {:<5} {}", v.key, v.status.label(), conds);
    }
    if let Some(d) = c.rank_one_dim {
        let _ = writeln!(s, "  rank-one dimension: {d}");
    }
    let _ = writeln!(s, "verdict: {}", c.summary);
    s
}

/// ASCII (p,q) dot grid: p runs left to right, q bottom to top, one `o` per
/// dimension (counts above 9 are written out), `+` marks an empty origin.
pub fn render_diagram(counts: &[HodgeCount]) -> String {
    let nonzero: Vec<&HodgeCount> = counts.iter().filter(|h| h.dim > 0).collect();
    let (mut plo, mut phi, mut qlo, mut qhi) = (0, 0, 0, 0);
    for h in &nonzero {
        plo = plo.min(h.p);
        phi = phi.max(h.p);
        qlo = qlo.min(h.q);
        qhi = qhi.max(h.q);
    }
    let cell = |p: i32, q: i32| -> String {
        match nonzero.iter().find(|h| h.p == p && h.q == q) {
            Some(h) if h.dim > 9 => h.dim.to_string(),
            Some(h) => "o".repeat(h.dim),
            None if (p, q) == (0, 0) => "+".into(),
            None => ".".into(),
        }
    };
    let mut width = 3;
    for p in plo..=phi {
        width = width.max(p.to_string().len());
        for q in qlo..=qhi {
            width = width.max(cell(p, q).len());
        }
    }
    let label = (qlo..=qhi).map(|q| q.to_string().len()).max().unwrap_or(1).max(3);
    let mut s = String::new();
    for q in (qlo..=qhi).rev() {
        let _ = write!(s, "{q:>label$} |");
        for p in plo..=phi {
            let _ = write!(s, " {:^width$}", cell(p, q));
        }
        s.push('\n');
    }
    let _ = write!(s, "{:>label$} +", "");
    for _ in plo..=phi {
        let _ = write!(s, "{}", "-".repeat(width + 1));
    }
    s.push('\n');
    let _ = write!(s, "{:>label$}  ", "q/p");
    for p in plo..=phi {
        let _ = write!(s, " {:^width$}", p);
    }
    s.push('\n');
    s
}

#[cfg(test)]
mod diagram_tests {
    use super::*;

    #[test]
    fn sl2_adjoint_grid() {
        let counts = vec![
            HodgeCount { p: -1, q: -1, dim: 1 },
            HodgeCount { p: 0, q: 0, dim: 1 },
            HodgeCount { p: 1, q: 1, dim: 1 },
        ];
        let d = render_diagram(&counts);
        assert_eq!(d.matches('o').count(), 3);
        assert_eq!(d.lines().count(), 5);
        assert!(d.lines().next().unwrap().trim_end().ends_with('o'));
    }

    #[test]
    fn large_counts_are_numeric_and_origin_is_marked() {
        let d = render_diagram(&[HodgeCount { p: 1, q: 0, dim: 12 }]);
        assert!(d.contains("12"));
        assert!(d.contains('+'));
    }
}
