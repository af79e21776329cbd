//! Acceptance suite. Prints one PASS/FAIL line per criterion, followed by the
//! failing clauses. Clauses listed as known gaps are expected to fail; the
//! process exits nonzero only when an outcome differs from that expectation.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use mtboundary::boundary::{analyze, delta_is_admissible, validate_cone, Analysis, AnalysisOptions, BoundaryReport};
use mtboundary::corpus::{self, lookup, FIXTURE_NAMES};
use mtboundary::hodge::{
    deligne_bigrading, delta_split, induced_adjoint_filtration, pairing_rank, splitness, twist_filtration,
    verify_bigrading, Bigrading, Mhs,
};
use mtboundary::liealg::{g2_element, MatrixLieAlgebra};
use mtboundary::linalg::{Mat, Subspace};
use mtboundary::scalars::{rat, QuadExt, Rational};
use mtboundary::sl2kit::{
    cone_reconstruction_holds, grading, is_weight_filtration, jm_complete, primitive_cone, primitive_hat,
    weight_filtration_of,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

struct Clause {
    name: String,
    ok: bool,
    detail: String,
    /// Why the clause cannot hold, when it is known not to.
    gap: Option<&'static str>,
}

#[derive(Default)]
struct Criterion {
    clauses: Vec<Clause>,
}

impl Criterion {
    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.clauses.push(Clause { name: name.into(), ok, detail: detail.into(), gap: None });
    }

    fn eq(&mut self, name: &str, actual: Value, expected: Value) {
        let ok = actual == expected;
        self.check(name, ok, format!("expected {expected}, got {actual}"));
    }

    fn gap(&mut self, name: &str, ok: bool, detail: impl Into<String>, why: &'static str) {
        self.clauses.push(Clause { name: name.into(), ok, detail: detail.into(), gap: Some(why) });
    }
}

struct Run {
    a: Analysis,
    json: Value,
}

fn run(name: &str) -> Run {
    let fx = corpus::build(name).expect("fixture builds");
    let a = analyze(&fx.input, AnalysisOptions::default()).expect("analysis succeeds");
    let json = serde_json::to_value(BoundaryReport::from_analysis(&a)).expect("report serializes");
    Run { a, json }
}

impl Run {
    fn get(&self, key: &str) -> Value {
        lookup(&self.json, key).unwrap_or(Value::Null)
    }
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    let Some(i) = b.iter().position(|x| *x != rat(0)) else { return false };
    let lambda = a[i].clone() / b[i].clone();
    lambda != rat(0) && a.iter().zip(b).all(|(x, y)| *x == lambda.clone() * y.clone())
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::default();
    let r = run("so41_N");
    c.check("nilpotent orbit", r.a.is_nilpotent_orbit(), "orbit_check");
    c.eq("dim m_N", r.get("/data/dim_m_sigma"), json!(3));
    c.eq("dim g_B", r.get("/g_b/probe/dim"), json!(1));
    c.eq("g_B abelian", r.get("/g_b/probe/kind"), json!("abelian"));
    c.gap(
        "cm_cone passes",
        r.get("verdict:cm_cone") == json!("pass"),
        format!("status {}", r.get("verdict:cm_cone")),
        "ad N has weights 2, 0, -2 only, so W_-2 m_N = m_N is 3-dimensional, not <N>",
    );
    c.gap(
        "cm_rank_one passes",
        r.get("verdict:cm_rank_one") == json!("pass"),
        format!("status {}", r.get("verdict:cm_rank_one")),
        "ker ad N meets im (ad N)^2 in a 3-dimensional space, not <N>",
    );
    c.gap(
        "1/2 dim Gr_-1 m = 1",
        r.get("/classification/rank_one_dim") == json!(1),
        format!("got {}", r.get("/classification/rank_one_dim")),
        "Gr_-1 of the adjoint weight filtration is zero",
    );
    // the dimension one reaches through the structure criterion instead
    c.eq("cm_structure passes", r.get("verdict:cm_structure"), json!("pass"));
    c.eq("total dim", r.get("/dims/total"), json!(1));
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::default();
    let r = run("g2_N");
    let g = &r.a.g;
    c.check("nilpotent orbit", r.a.is_nilpotent_orbit(), "orbit_check");
    c.eq("algebra dim", r.get("/algebra/dim"), json!(14));
    c.check("N^2 = 0 on V", r.a.cone.n_sum.mat.pow(2).is_zero(), "");
    let by_p: Vec<Value> = [-2, -1, 0].iter().map(|p| r.get(&format!("hodge_by_p:{p}"))).collect();
    c.eq("adjoint Hodge numbers 1, 4, 4", json!(by_p), json!([1, 4, 4]));
    c.eq("dim m_N/<N>", r.get("m_mod_sigma"), json!(4));
    c.eq("dim g_B", r.get("/g_b/probe/dim"), json!(3));
    c.eq("g_B split sl2", r.get("/g_b/probe/kind"), json!("sl2_split"));
    let sig = &r.a.g_b_probe.killing_signature;
    c.check("Killing signature (2,1)", (sig.0, sig.1) == (2, 1), format!("got {sig:?}"));
    c.eq("base", r.get("/dims/base"), json!(1));
    c.eq("fiber", r.get("fiber_total"), json!(2));
    c.eq("cm_structure fails", r.get("verdict:cm_structure"), json!("fail"));
    c.eq("fails at z_mod_m_abelian", r.get("condition:cm_structure:z_mod_m_abelian"), json!(false));
    let mut p = [0i64; 14];
    p[1] = -1;
    p[4] = 1;
    let dphi = g.coords_of(&g2_element(&p)).expect("d phi lies in g2");
    let psi = &r.a.splitting.psi.coords;
    c.gap(
        "LMHS psi proportional to d phi",
        proportional(psi, &dphi),
        "psi has ad-spectrum {0, +-i, +-i, +-2i}; d phi has {0, +-i, +-i}",
        "psi of the limit lies in g_sigma but d phi does not commute with N",
    );
    let psi_f = r.a.pure_hs_psi.clone().unwrap_or_default();
    c.check("psi of F proportional to d phi", proportional(&psi_f, &dphi), "psi of F read as a pure HS");
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::default();
    let n1 = run("sp4_w1_N1");
    c.check("N1 nilpotent orbit", n1.a.is_nilpotent_orbit(), "");
    c.eq("N1 dim m", n1.get("/data/dim_m_sigma"), json!(3));
    c.eq("N1 g_B split sl2", n1.get("/g_b/probe/kind"), json!("sl2_split"));
    c.eq("N1 base", n1.get("/dims/base"), json!(1));
    c.eq("N1 dim m/<N>", n1.get("m_mod_sigma"), json!(2));
    c.eq("N1 total", n1.get("/dims/total"), json!(2));
    let s = run("sp4_w1_sigma");
    c.check("sigma nilpotent orbit", s.a.is_nilpotent_orbit(), "");
    c.eq("sigma g_B", s.get("/g_b/probe/dim"), json!(0));
    c.eq("sigma total", s.get("/dims/total"), json!(1));
    let n = run("sp4_w1_N");
    c.check("N nilpotent orbit", n.a.is_nilpotent_orbit(), "");
    c.eq("N psi = 0", n.get("/splitting/psi_zero"), json!(true));
    c.eq("N dim m_N", n.get("/data/dim_m_sigma"), json!(3));
    c.eq("N m_B = m_N", n.get("/structure/dim_m_b"), json!(3));
    c.check("N m_N != z(N)", n.a.data.m_sigma != n.a.data.z_sigma, "");
    c.check("N m_N in z(N)", n.a.data.z_sigma.contains(&n.a.data.m_sigma), "");
    c.eq("N total", n.get("/dims/total"), json!(2));
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::default();
    let n1 = run("carayol_N1");
    c.check("N1 nilpotent orbit", n1.a.is_nilpotent_orbit(), "");
    c.eq("algebra dim", n1.get("/algebra/dim"), json!(8));
    c.eq("N1 dim m", n1.get("/data/dim_m_sigma"), json!(2));
    c.eq("N1 g_B", n1.get("/g_b/probe/dim"), json!(0));
    c.eq("N1 total", n1.get("/dims/total"), json!(1));
    for which in ["carayol_N2p", "carayol_N2m"] {
        let r = run(which);
        c.check(format!("{which} nilpotent orbit"), r.a.is_nilpotent_orbit(), "");
        c.eq(&format!("{which} dim m"), r.get("/data/dim_m_sigma"), json!(3));
        c.eq(&format!("{which} g_B"), r.get("/g_b/probe/dim"), json!(1));
        c.eq(&format!("{which} g_B abelian"), r.get("/g_b/probe/kind"), json!("abelian"));
        c.eq(&format!("{which} verdict"), r.get("summary_head"), json!("CM abelian variety, dim 1"));
    }
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::default();
    let n1 = run("sp4_w3_N1");
    c.check("N1 nilpotent orbit", n1.a.is_nilpotent_orbit(), "");
    c.eq("N1 dim m", n1.get("/data/dim_m_sigma"), json!(2));
    c.eq("N1 g_B", n1.get("/g_b/probe/dim"), json!(0));
    c.eq("N1 m_B = m_N", n1.get("/structure/dim_m_b"), json!(2));
    let n2 = run("sp4_w3_N2");
    c.check("N2 nilpotent orbit", n2.a.is_nilpotent_orbit(), "");
    c.eq("N2 base", n2.get("/dims/base"), json!(1));
    c.eq("N2 fiber", n2.get("fiber_total"), json!(1));
    let n3 = run("sp4_w3_N3");
    c.check("N3 nilpotent orbit", n3.a.is_nilpotent_orbit(), "");
    c.eq("N3 g_B", n3.get("/g_b/probe/dim"), json!(1));
    c.eq("N3 verdict", n3.get("summary_head"), json!("CM abelian variety, dim 1"));
    c
}

/// Nilpotent elements whose exponentials generate the conjugating group.
fn nilpotent_pool(g: &MatrixLieAlgebra, extra: &[Mat<Rational>]) -> Vec<Mat<Rational>> {
    let mut pool: Vec<Mat<Rational>> = g.basis().iter().filter(|b| b.is_nilpotent()).cloned().collect();
    pool.extend(extra.iter().cloned());
    pool
}

fn random_group_element(pool: &[Mat<Rational>], rng: &mut ChaCha8Rng) -> (Mat<Rational>, Mat<Rational>) {
    let n = pool[0].nrows();
    let mut h = Mat::identity(n, ());
    let mut h_inv = Mat::identity(n, ());
    for _ in 0..3 {
        let x = &pool[rng.gen_range(0..pool.len())];
        let t = loop {
            let t: i64 = rng.gen_range(-2..=2);
            if t != 0 {
                break t;
            }
        };
        h = h.mul(&x.scale(&rat(t)).exp_nilpotent().unwrap());
        h_inv = x.scale(&rat(-t)).exp_nilpotent().unwrap().mul(&h_inv);
    }
    (h, h_inv)
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for name in FIXTURE_NAMES {
        let r = run(name);
        let g = &r.a.g;
        let mut ns = vec![r.a.cone.n_sum.clone()];
        if r.a.cone.rank() > 1 {
            ns.extend(r.a.cone.generators.iter().cloned());
        }
        for n in ns {
            let t0 = jm_complete(g, &n).expect("triple");
            let pool = nilpotent_pool(g, &[n.mat.clone(), t0.n_plus.mat.clone()]);
            let mut bad = Vec::new();
            for sample in 0..=20 {
                let conj = if sample == 0 {
                    n.clone()
                } else {
                    let (h, h_inv) = random_group_element(&pool, &mut rng);
                    match g.element_from_mat(&h.mul(&n.mat).mul(&h_inv)) {
                        Ok(e) => e,
                        Err(_) => {
                            bad.push(format!("sample {sample}: conjugate left the algebra"));
                            continue;
                        }
                    }
                };
                let ok = jm_complete(g, &conj).is_ok_and(|t| {
                    let w_power = weight_filtration_of(&g.ad(&conj), 0).unwrap();
                    let w_grading = grading(g, &t).unwrap().filtration(g.dim());
                    t.verify(g) && w_power.same_as(&w_grading) && is_weight_filtration(&g.ad(&conj), &w_power, 0)
                });
                if !ok {
                    bad.push(format!("sample {sample}"));
                }
            }
            c.check(format!("{name}: N and 20 conjugates"), bad.is_empty(), bad.join(", "));
        }
    }
    c
}

fn bracket_compatible(g: &MatrixLieAlgebra, b: &Bigrading) -> bool {
    let d = b.disc();
    b.pieces.iter().all(|((p, q), u)| {
        b.pieces.iter().all(|((p2, q2), v)| {
            let target = b.piece(p + p2, q + q2);
            u.basis().iter().all(|x| v.basis().iter().all(|y| target.contains_vector(&g.bracket_coords(x, y, d))))
        })
    })
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::default();
    for name in FIXTURE_NAMES {
        let r = run(name);
        let (g, cone, reference) = (&r.a.g, &r.a.cone, &r.a.reference);
        let d = reference.adjoint.disc();
        c.check(format!("{name}: axioms on V"), verify_bigrading(&reference.mhs, &reference.bigrading_v).passed(), "");
        let adj = Mhs::new(induced_adjoint_filtration(g, &r.a.f), &cone.w).unwrap();
        let adj_b = deligne_bigrading(&adj).unwrap();
        c.check(format!("{name}: axioms on g"), verify_bigrading(&adj, &adj_b).passed(), "");
        c.check(format!("{name}: brackets"), bracket_compatible(g, &adj_b), "");
        c.check(format!("{name}: brackets at the split point"), bracket_compatible(g, &reference.adjoint), "");
        let minus = adj_b.piece(-1, -1);
        let in_minus = cone
            .generators
            .iter()
            .all(|n| minus.contains_vector(&n.coords.iter().map(|x| QuadExt::real(x.clone(), d)).collect::<Vec<_>>()));
        c.check(format!("{name}: N_j in I^(-1,-1)"), in_minus, "");
        let t = jm_complete(g, &cone.n_sum).unwrap();
        let e = grading(g, &t).unwrap();
        let gram = g.b_gram();
        let perfect = e.pieces.iter().all(|(k, u)| pairing_rank(&gram, u, &e.piece(-k)) == u.dim());
        c.check(format!("{name}: B pairs Gr_k with Gr_-k"), perfect, "");
    }
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::default();
    let s = run("sp4_w1_sigma");
    let gens: Vec<Mat<Rational>> = s.a.cone.generators.iter().map(|n| n.mat.clone()).collect();
    c.check("sigma validates", validate_cone(&s.a.g, &gens, 1).is_ok(), "");
    for name in FIXTURE_NAMES {
        let r = run(name);
        let (g, cone) = (&r.a.g, &r.a.cone);
        let ad_gens = cone.ad_generators(g);
        let ad_n = g.ad(&cone.n_sum);
        c.check(format!("{name}: reconstruction"), cone_reconstruction_holds(&ad_gens, &ad_n, &cone.w), "");
        let (_, hi) = cone.w.jump_range().unwrap_or((0, 0));
        for k in 0..=hi {
            let pk = primitive_cone(&ad_gens, &ad_n, &cone.w, k);
            let hat = primitive_hat(&ad_n, &cone.w, k);
            c.check(format!("{name}: P_{k} in hat P_{k}"), pk.is_contained_in(&hat), "");
            if cone.rank() == 1 {
                c.check(format!("{name}: P_{k} = hat P_{k}"), hat.is_contained_in(&pk), "");
            }
        }
    }
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for name in FIXTURE_NAMES {
        let r = run(name);
        let (g, cone, reference) = (&r.a.g, &r.a.cone, &r.a.reference);
        if splitness(&reference.bigrading_v).r_split {
            let split = &reference.split;
            c.check(
                format!("{name}: identity on an R-split point"),
                split.delta.is_zero() && split.split.f.same_as(&r.a.f),
                "",
            );
        }
        let base = &reference.split.split.f;
        let dims = reference.bigrading_v.hodge_numbers();
        let lambda = reference.adjoint.lambda_minus().rational_points().intersect(&r.a.data.z_sigma);
        let mut bad = Vec::new();
        for sample in 0..10 {
            let coords = combination(&lambda, &mut rng);
            let gamma = g.mat_of(&coords, ());
            let ok = (|| -> mtboundary::Result<bool> {
                let f = twist_filtration(base, &gamma, 1)?;
                let ds = delta_split(&Mhs::new(f, &cone.w_v)?)?;
                let (lowers, commutes) = delta_is_admissible(&ds.delta, cone);
                Ok(splitness(&ds.bigrading).r_split
                    && ds.bigrading.hodge_numbers() == dims
                    && lowers
                    && commutes
                    && ds.delta == gamma)
            })();
            if !matches!(ok, Ok(true)) {
                bad.push(format!("sample {sample}: {ok:?}"));
            }
        }
        c.check(format!("{name}: 10 twists (dim Lambda cap z = {})", lambda.dim()), bad.is_empty(), bad.join("; "));
    }
    c
}

/// A random nonzero integer combination of the basis, or 0 for the zero space.
fn combination(s: &Subspace<Rational>, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let mut out = vec![rat(0); s.ambient()];
    if s.is_zero() {
        return out;
    }
    loop {
        for b in s.basis() {
            let t = rat(rng.gen_range(-3..=3));
            for (o, x) in out.iter_mut().zip(b) {
                *o += t.clone() * x.clone();
            }
        }
        if out.iter().any(|x| *x != rat(0)) {
            return out;
        }
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Criterion); 9] = [
        ("SO(4,1) invariants", criterion_1),
        ("G2 invariants", criterion_2),
        ("Sp4 weight 1 invariants", criterion_3),
        ("SU(2,1) invariants", criterion_4),
        ("Sp4 weight 3 invariants", criterion_5),
        ("sl2-triples on fixtures and conjugates", criterion_6),
        ("Deligne bigrading properties", criterion_7),
        ("cone suite", criterion_8),
        ("delta-splitting suite", criterion_9),
    ];
    let mut unexpected = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let c = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(c) => c,
            Err(_) => {
                println!("criterion {n}: FAIL  {title} (panicked)");
                unexpected += 1;
                continue;
            }
        };
        let pass = c.clauses.iter().all(|cl| cl.ok);
        println!("criterion {n}: {}  {title} ({} clauses)", if pass { "PASS" } else { "FAIL" }, c.clauses.len());
        for cl in &c.clauses {
            match (cl.ok, cl.gap) {
                (true, None) => {}
                (false, Some(why)) => println!("    known gap: {} ({}); {why}", cl.name, cl.detail),
                (false, None) => {
                    println!("    unexpected failure: {} ({})", cl.name, cl.detail);
                    unexpected += 1;
                }
                (true, Some(_)) => {
                    println!("    known gap now holds: {} ({})", cl.name, cl.detail);
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected == 0 {
        println!("acceptance: all outcomes as recorded");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected outcome(s)");
        ExitCode::FAILURE
    }
}
