use serde::{Deserialize, Serialize};

use super::{BoundaryData, FibrationDims, NilpotentCone};
use crate::hodge::Bigrading;
use crate::liealg::MatrixLieAlgebra;
use crate::linalg::{Filtration, Mat, Subspace};
use crate::scalars::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    Inapplicable,
}

impl VerdictStatus {
    fn of(b: bool) -> Self {
        if b {
            VerdictStatus::Pass
        } else {
            VerdictStatus::Fail
        }
    }
    pub fn label(self) -> &'static str {
        match self {
            VerdictStatus::Pass => "pass",
            VerdictStatus::Fail => "fail",
            VerdictStatus::Inapplicable => "n/a",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub key: String,
    pub status: VerdictStatus,
    pub conditions: Vec<Condition>,
}

impl Verdict {
    fn new(key: &str, conds: Vec<(&str, bool)>) -> Self {
        let holds = conds.iter().all(|(_, b)| *b);
        Verdict {
            key: key.into(),
            status: VerdictStatus::of(holds),
            conditions: conds.into_iter().map(|(n, b)| Condition { name: n.into(), holds: b }).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == VerdictStatus::Pass
    }

    pub fn failing_conditions(&self) -> Vec<&str> {
        self.conditions.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdicts: Vec<Verdict>,
    /// ½·dim Gr₋₁ of the whole algebra, reported by the rank-one criterion.
    pub rank_one_dim: Option<usize>,
    pub summary: String,
}

impl Classification {
    pub fn get(&self, key: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.key == key)
    }
}

pub struct ClassifyInput<'a> {
    pub g: &'a MatrixLieAlgebra,
    pub cone: &'a NilpotentCone,
    pub data: &'a BoundaryData,
    pub g_b: &'a Subspace<Rational>,
    pub adjoint: &'a Bigrading,
    pub psi_zero: bool,
    pub dims: &'a FibrationDims,
    pub level: i32,
    pub horizontal: bool,
    pub polarized: bool,
}

fn quotient_dims(w: &Filtration<Rational>, m: &Subspace<Rational>, s: &Subspace<Rational>, j: i32) -> usize {
    m.intersect(&w.get(j)).sum(s).dim() - s.dim()
}

/// {x ∈ h : [x, m] ⊆ u} is zero, for u ⊆ m.
fn acts_faithfully(g: &MatrixLieAlgebra, h: &Subspace<Rational>, m: &Subspace<Rational>, u: &Subspace<Rational>) -> bool {
    let ann = u.annihilator();
    let mut rows = Vec::new();
    for b in m.basis() {
        let imgs: Vec<Vec<Rational>> = h.basis().iter().map(|x| g.bracket_coords(x, b, ())).collect();
        for a in ann.basis() {
            rows.push(imgs.iter().map(|v| a.iter().zip(v).map(|(p, q)| p * q).sum()).collect::<Vec<Rational>>());
        }
    }
    if h.dim() == 0 {
        return true;
    }
    if rows.is_empty() {
        return false;
    }
    Mat::from_rows(rows, h.dim(), ()).map(|m| m.rank() == h.dim()).unwrap_or(false)
}

pub fn classify(inp: &ClassifyInput) -> Classification {
    let ClassifyInput { g, cone, data, g_b, adjoint, dims, .. } = *inp;
    let d = adjoint.disc();
    let w = &cone.w;
    let m = &data.m_sigma;
    let span = &data.span_sigma;
    let ext = |s: &Subspace<Rational>| s.extend_scalars(d);

    let m_is_span = m == span;
    let middle = adjoint.sum_where(|p, q| p + q == 0 && (-1..=1).contains(&p));
    let g_b_types = middle.contains(&ext(g_b));
    let w2m = m.intersect(&w.get(-2));
    let w2_is_span = &w2m == span;
    let gr1_types = {
        let allowed = adjoint.sum_where(|p, q| (p, q) == (-1, 0) || (p, q) == (0, -1)).sum(&ext(&w.get(-2)));
        allowed.contains(&ext(&m.intersect(&w.get(-1))))
    };
    let faithful = acts_faithfully(g, g_b, &m.intersect(&w.get(-1)), &w2m);
    let g_b_abelian = g.bracket_spaces(g_b, g_b).is_zero();
    let lambda_is_span = adjoint.lambda_minus() == ext(span);
    let (lo, _) = w.jump_range().unwrap_or((0, 0));
    let short = (1..=(-lo).max(0)).all(|k| {
        let gr = quotient_dims(w, m, span, -k) - quotient_dims(w, m, span, -k - 1);
        gr == 0 || quotient_dims(w, m, span, -2 * k) == 0
    });
    let lambda_quotient_zero = adjoint.lambda_minus().intersect(&ext(m)).dim() == span.dim();
    let z_mod_m_abelian = m.contains(&g.bracket_spaces(&data.z_sigma, &data.z_sigma));

    let mut verdicts = vec![
        Verdict::new("shimura_component", vec![("m_sigma_is_span", m_is_span), ("g_b_hodge_types", g_b_types)]),
        Verdict::new(
            "abelian_fibration",
            vec![
                ("w_minus_2_is_span", w2_is_span),
                ("gr_minus_1_types", gr1_types),
                ("g_b_hodge_types", g_b_types),
                ("g_b_acts_faithfully", faithful),
            ],
        ),
        Verdict::new("base_is_point", vec![("g_b_abelian", g_b_abelian)]),
        Verdict::new("compact_fibers", vec![("lambda_is_span", lambda_is_span)]),
        Verdict::new("short_weights", vec![("short", short)]),
        Verdict::new(
            "cm_structure",
            vec![("short", short), ("lambda_quotient_zero", lambda_quotient_zero), ("z_mod_m_abelian", z_mod_m_abelian)],
        ),
        Verdict::new("cm_cone", vec![("w_minus_2_is_span", w2_is_span), ("z_mod_m_abelian", z_mod_m_abelian)]),
    ];

    let mut rank_one_dim = None;
    if cone.rank() == 1 {
        let ad_n = g.ad(&cone.n_sum);
        let ker = ad_n.kernel();
        let im2 = ad_n.pow(2).image();
        let nilp = ad_n.pow((inp.level + 1) as usize).is_zero();
        let kernel_meets = ker.intersect(&im2) == *span;
        let kernel_bracket = ad_n.image().contains(&g.bracket_spaces(&ker, &ker));
        verdicts.push(Verdict::new(
            "cm_rank_one",
            vec![
                ("ad_n_level_bound", nilp),
                ("horizontal", inp.horizontal),
                ("primitive_polarized", inp.polarized),
                ("ker_meets_im2_in_n", kernel_meets),
                ("ker_bracket_in_im", kernel_bracket),
            ],
        ));
        rank_one_dim = Some(w.graded_dim(-1) / 2);
    } else {
        verdicts.push(Verdict {
            key: "cm_rank_one".into(),
            status: VerdictStatus::Inapplicable,
            conditions: Vec::new(),
        });
    }

    // every Gr₋ₖ(m_σ/⟨σ⟩) of type (−k/2, −k/2) makes each fiber a product of ℂ*
    let m_hodge_tate = adjoint.sum_where(|p, q| p == q).contains(&ext(m));
    verdicts.push(Verdict::new("torus", vec![("m_sigma_hodge_tate", m_hodge_tate), ("psi_zero", inp.psi_zero)]));

    let pass = |k: &str| verdicts.iter().any(|v| v.key == k && v.passed());
    let summary = if pass("torus") {
        format!("algebraic torus (C*)^{} [torus]", dims.total)
    } else if pass("cm_rank_one") {
        format!("CM abelian variety, dim {} [cm_rank_one]", rank_one_dim.unwrap_or(0))
    } else if pass("cm_structure") {
        format!("CM abelian variety, dim {} [cm_structure]", dims.total)
    } else if pass("cm_cone") {
        format!("CM abelian variety, dim {} [cm_cone]", dims.total)
    } else if pass("shimura_component") {
        format!("component of a Shimura variety, dim {} [shimura_component]", dims.total)
    } else if pass("abelian_fibration") {
        format!("abelian fibration over a base of dim {}, total dim {} [abelian_fibration]", dims.base, dims.total)
    } else {
        format!("unclassified, total dim {}", dims.total)
    };
    Classification { verdicts, rank_one_dim, summary }
}
