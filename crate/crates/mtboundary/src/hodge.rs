//! Mixed Hodge structures over ℚ(√−d): Deligne bigradings, splitness,
//! δ-splitting, grading elements and the Riemann bilinear relations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{Element, MatrixLieAlgebra};
use crate::linalg::{hermitian_positive_definite, Filtration, Mat, Subspace};
use crate::scalars::{rat, QuadExt, Rational, Scalar};

/// A filtered space (F decreasing, W increasing) over ℚ(√−d). W is rational
/// in every use, but is stored with extended scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mhs {
    pub f: Filtration<QuadExt>,
    pub w: Filtration<QuadExt>,
}

impl Mhs {
    pub fn new(f: Filtration<QuadExt>, w: &Filtration<Rational>) -> Result<Self> {
        if f.ambient() != w.ambient() {
            return Err(Error::Dimension(format!(
                "F lives in dimension {} but W in dimension {}",
                f.ambient(),
                w.ambient()
            )));
        }
        Ok(Mhs { w: w.extend_scalars(f.ctx()), f })
    }

    pub fn disc(&self) -> u64 {
        self.f.ctx()
    }
    pub fn dim(&self) -> usize {
        self.f.ambient()
    }

    /// Range [lo, hi] of p with F^lo = V and F^{hi+1} = 0.
    pub fn hodge_range(&self) -> (i32, i32) {
        filtration_span(&self.f)
    }

    pub fn weight_range(&self) -> (i32, i32) {
        self.w.jump_range().unwrap_or((0, 0))
    }

    /// F induces on every Gr_k^W a Hodge structure of weight k: for all p,
    /// F^p Gr_k ⊕ conj(F^{k−p+1}) Gr_k = Gr_k.
    pub fn check_axiom(&self) -> Result<()> {
        let (wlo, whi) = self.weight_range();
        let (plo, phi) = self.hodge_range();
        let fbar = self.f.conj();
        for k in wlo..=whi {
            let wk = self.w.get(k);
            let lower = self.w.get(k - 1);
            for p in plo..=phi + 1 {
                let a = self.f.get(p).intersect(&wk).sum(&lower);
                let b = fbar.get(k - p + 1).intersect(&wk).sum(&lower);
                if a.intersect(&b) != lower || a.sum(&b) != wk {
                    return Err(Error::Mhs(format!(
                        "F does not induce a Hodge structure of weight {k} on Gr_{k}^W (fails at p = {p})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Smallest p with F^p = V and largest p with F^p ≠ 0.
pub fn filtration_span<S: Scalar>(f: &Filtration<S>) -> (i32, i32) {
    let Some((lo, hi)) = f.bounds() else { return (0, 0) };
    let mut top = lo - 1;
    for p in lo..=hi {
        if !f.get(p).is_zero() {
            top = p;
        }
    }
    let mut bottom = hi;
    for p in (lo - 1..=hi).rev() {
        if f.get(p).is_full() {
            bottom = p;
            break;
        }
    }
    (bottom, top.max(bottom))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigrading {
    pub pieces: BTreeMap<(i32, i32), Subspace<QuadExt>>,
    ambient: usize,
    disc: u64,
}

impl Bigrading {
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn disc(&self) -> u64 {
        self.disc
    }

    pub fn piece(&self, p: i32, q: i32) -> Subspace<QuadExt> {
        self.pieces.get(&(p, q)).cloned().unwrap_or_else(|| Subspace::zero(self.ambient, self.disc))
    }

    pub fn hodge_numbers(&self) -> BTreeMap<(i32, i32), usize> {
        self.pieces.iter().map(|(k, s)| (*k, s.dim())).collect()
    }

    pub fn is_hodge_tate(&self) -> bool {
        self.pieces.keys().all(|(p, q)| p == q)
    }

    /// ⊕ of the pieces whose (p, q) satisfies the predicate.
    pub fn sum_where(&self, pred: impl Fn(i32, i32) -> bool) -> Subspace<QuadExt> {
        let mut acc = Subspace::zero(self.ambient, self.disc);
        for ((p, q), s) in &self.pieces {
            if pred(*p, *q) {
                acc = acc.sum(s);
            }
        }
        acc
    }

    /// Λ^{−1,−1} = ⊕_{p,q ≤ −1} I^{p,q}.
    pub fn lambda_minus(&self) -> Subspace<QuadExt> {
        self.sum_where(|p, q| p <= -1 && q <= -1)
    }

    /// The operator acting by λ(p, q) on I^{p,q}.
    pub fn grading_operator(&self, lambda: impl Fn(i32, i32) -> Rational) -> Mat<QuadExt> {
        let d = self.disc;
        let mut cols = Vec::new();
        let mut diag = Vec::new();
        for ((p, q), s) in &self.pieces {
            for v in s.basis() {
                cols.push(v.clone());
                diag.push(QuadExt::real(lambda(*p, *q), d));
            }
        }
        let b = Mat::from_cols(&cols, self.ambient, d);
        let binv = b.inverse().expect("pieces form a basis");
        let dm = Mat::from_fn(diag.len(), diag.len(), d, |i, j| if i == j { diag[i].clone() } else { QuadExt::zero_in(d) });
        b.mul(&dm).mul(&binv)
    }

    /// Restriction of the bigrading to a subspace compatible with it.
    pub fn restrict(&self, u: &Subspace<QuadExt>) -> BTreeMap<(i32, i32), Subspace<QuadExt>> {
        self.pieces
            .iter()
            .map(|(k, s)| (*k, s.intersect(u)))
            .filter(|(_, s)| !s.is_zero())
            .collect()
    }

    pub fn is_compatible_with(&self, u: &Subspace<QuadExt>) -> bool {
        self.restrict(u).values().map(|s| s.dim()).sum::<usize>() == u.dim()
    }
}

/// I^{p,q} = F^p ∩ W_{p+q} ∩ (F̄^q ∩ W_{p+q} + Σ_{j≥1} F̄^{q−j} ∩ W_{p+q−j−1}).
pub fn deligne_bigrading(m: &Mhs) -> Result<Bigrading> {
    m.check_axiom()?;
    let (plo, phi) = m.hodge_range();
    let (wlo, whi) = m.weight_range();
    let fbar = m.f.conj();
    let n = m.dim();
    let d = m.disc();
    let mut pieces = BTreeMap::new();
    for p in plo..=phi {
        for q in plo..=phi {
            let k = p + q;
            if k < wlo || k > whi {
                continue;
            }
            let wk = m.w.get(k);
            let mut inner = fbar.get(q).intersect(&wk);
            let mut j = 1;
            while k - j - 1 >= wlo {
                inner = inner.sum(&fbar.get(q - j).intersect(&m.w.get(k - j - 1)));
                j += 1;
            }
            let piece = m.f.get(p).intersect(&wk).intersect(&inner);
            if !piece.is_zero() {
                pieces.insert((p, q), piece);
            }
        }
    }
    let b = Bigrading { pieces, ambient: n, disc: d };
    let check = verify_bigrading(m, &b);
    if !check.passed() {
        return Err(Error::Internal(format!("Deligne bigrading failed its own axioms: {check:?}")));
    }
    Ok(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradingCheck {
    pub direct_sum: bool,
    pub reproduces_w: bool,
    pub reproduces_f: bool,
    pub conjugation_congruence: bool,
}

impl BigradingCheck {
    pub fn passed(&self) -> bool {
        self.direct_sum && self.reproduces_w && self.reproduces_f && self.conjugation_congruence
    }
}

pub fn verify_bigrading(m: &Mhs, b: &Bigrading) -> BigradingCheck {
    let total: usize = b.pieces.values().map(|s| s.dim()).sum();
    let direct_sum = total == m.dim() && b.sum_where(|_, _| true).is_full();
    let (wlo, whi) = m.weight_range();
    let reproduces_w = (wlo - 1..=whi + 1).all(|k| b.sum_where(|p, q| p + q <= k) == m.w.get(k));
    let (plo, phi) = m.hodge_range();
    let reproduces_f = (plo - 1..=phi + 1).all(|p0| b.sum_where(|p, _| p >= p0) == m.f.get(p0));
    let conjugation_congruence = b.pieces.keys().all(|&(p, q)| {
        let target = b.piece(p, q).sum(&b.sum_where(|a, c| a < p && c < q));
        target.contains(&b.piece(q, p).conj())
    });
    BigradingCheck { direct_sum, reproduces_w, reproduces_f, conjugation_congruence }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitness {
    pub r_split: bool,
    pub q_split: bool,
}

/// ℝ-split iff conj(I^{q,p}) = I^{p,q}; ℚ-split additionally records that the
/// weight grading operator is rational.
pub fn splitness(b: &Bigrading) -> Splitness {
    let r_split = b.pieces.keys().all(|&(p, q)| b.piece(q, p).conj() == b.piece(p, q));
    let q_split = r_split && b.grading_operator(|p, q| rat((p + q) as i64)).is_real();
    Splitness { r_split, q_split }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSplit {
    /// δ as a rational matrix: the split filtration is e^{−√−d·δ}F.
    pub delta: Mat<Rational>,
    pub split: Mhs,
    pub bigrading: Bigrading,
}

/// Finds δ with e^{−√−d·δ}F ℝ-split. Writing X = −2√−d·δ, X solves
/// e^X Y e^{−X} = Ȳ for the weight grading Y of (F, W); it is built one
/// Y-degree at a time (degree −k correction = −R_{(−k)}/k).
pub fn delta_split(m: &Mhs) -> Result<DeltaSplit> {
    let b = deligne_bigrading(m)?;
    let d = m.disc();
    let n = m.dim();
    let mut cols = Vec::new();
    let mut degree = Vec::new();
    for ((p, q), s) in &b.pieces {
        for v in s.basis() {
            cols.push(v.clone());
            degree.push(p + q);
        }
    }
    let basis = Mat::from_cols(&cols, n, d);
    let binv = basis.inverse().ok_or_else(|| Error::Internal("bigrading is not a basis".into()))?;
    let y = Mat::from_fn(n, n, d, |i, j| if i == j { QuadExt::real(rat(degree[i] as i64), d) } else { QuadExt::zero_in(d) });
    let ybar = binv.mul(&basis.mul(&y).mul(&binv).conj()).mul(&basis);
    let span = degree.iter().max().copied().unwrap_or(0) - degree.iter().min().copied().unwrap_or(0);
    let mut x = Mat::zeros(n, n, d);
    let residual = |x: &Mat<QuadExt>| -> Result<Mat<QuadExt>> {
        let e = x.exp_nilpotent()?;
        let einv = x.neg().exp_nilpotent()?;
        Ok(e.mul(&y).mul(&einv).sub(&ybar))
    };
    for k in 1..=span {
        let r = residual(&x)?;
        // component lowering Y-degree by exactly k
        let comp = Mat::from_fn(n, n, d, |i, j| {
            if degree[i] - degree[j] == -k {
                r.get(i, j).clone()
            } else {
                QuadExt::zero_in(d)
            }
        });
        if comp.is_zero() {
            continue;
        }
        if k == 1 {
            return Err(Error::Mhs("conj(Y) − Y has a component of degree −1; not a valid MHS".into()));
        }
        let inv_k = QuadExt::real(Rational::new(1.into(), (-k as i64).into()), d);
        x = x.add(&comp.scale(&inv_k));
    }
    if !residual(&x)?.is_zero() {
        return Err(Error::Mhs("δ-splitting did not terminate at the full weight depth".into()));
    }
    let x_std = basis.mul(&x).mul(&binv);
    if !x_std.re_part().is_zero() {
        return Err(Error::Mhs("splitting operator is not purely imaginary".into()));
    }
    // δ = X·√−d/(2d) = −im(X)/2 as a rational matrix
    let delta = x_std.im_part().scale(&Rational::new((-1).into(), 2.into()));
    let half = x_std.scale(&QuadExt::real(Rational::new(1.into(), 2.into()), d));
    let g = half.exp_nilpotent()?;
    let f_split = m.f.map_steps(d, |s| s.image_under(&g))?;
    let split = Mhs { f: f_split, w: m.w.clone() };
    let bigrading = deligne_bigrading(&split)?;
    if !splitness(&bigrading).r_split {
        return Err(Error::Internal("δ-split filtration is not ℝ-split".into()));
    }
    Ok(DeltaSplit { delta, split, bigrading })
}

/// e^{√−d·γ}F for a rational nilpotent γ.
pub fn twist_filtration(f: &Filtration<QuadExt>, gamma: &Mat<Rational>, sign: i64) -> Result<Filtration<QuadExt>> {
    let d = f.ctx();
    let g = gamma.lift::<QuadExt>(d).scale(&QuadExt::from_ints(0, sign, d)).exp_nilpotent()?;
    f.map_steps(d, |s| s.image_under(&g))
}

/// The filtration induced on g ⊗ ℚ(√−d): F^p g = {X : X F^k ⊆ F^{k+p} for all k}.
pub fn induced_adjoint_filtration(g: &MatrixLieAlgebra, f: &Filtration<QuadExt>) -> Filtration<QuadExt> {
    let d = f.ctx();
    let (lo, hi) = filtration_span(f);
    let span = hi - lo;
    let dim = g.dim();
    let basis: Vec<Mat<QuadExt>> = g.basis().iter().map(|b| b.lift::<QuadExt>(d)).collect();
    let mut steps = BTreeMap::new();
    for p in -span..=span {
        let mut rows: Vec<Vec<QuadExt>> = Vec::new();
        for k in lo..=hi {
            let src = f.get(k);
            let ann = f.get(k + p).annihilator();
            for v in src.basis() {
                let imgs: Vec<Vec<QuadExt>> = basis.iter().map(|b| b.mul_vec(v)).collect();
                for a in ann.basis() {
                    rows.push(
                        imgs.iter()
                            .map(|w| a.iter().zip(w).fold(QuadExt::zero_in(d), |acc, (x, y)| acc + x.clone() * y))
                            .collect(),
                    );
                }
            }
        }
        let s = if rows.is_empty() {
            Subspace::full(dim, d)
        } else {
            Mat::from_rows(rows, dim, d).expect("consistent rows").kernel()
        };
        steps.insert(p, s);
    }
    Filtration::decreasing(dim, d, steps).expect("induced filtration is nested")
}

/// ξ ∈ g ⊗ ℚ(√−d) acting by p − n/2 on Gr_F^p up to an isometry commuting
/// with g, if one exists. The returned coordinates are those of the g part.
/// Existence certifies that F lies in the compact dual of the domain of g
/// (enlarged by its isometric commutant, e.g. u(2,1) over su(2,1)).
pub fn domain_grading_element(g: &MatrixLieAlgebra, f: &Filtration<QuadExt>, weight: i32) -> Option<Vec<QuadExt>> {
    let d = f.ctx();
    let (lo, hi) = filtration_span(f);
    let basis: Vec<Mat<QuadExt>> =
        g.basis().iter().chain(g.isometric_commutant().iter()).map(|b| b.lift::<QuadExt>(d)).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for p in lo..=hi {
        let shift = QuadExt::real(Rational::new((2 * p - weight).into(), 2.into()), d);
        let ann = f.get(p + 1).annihilator();
        for v in f.get(p).basis() {
            let imgs: Vec<Vec<QuadExt>> = basis.iter().map(|b| b.mul_vec(v)).collect();
            for a in ann.basis() {
                let dot = |w: &[QuadExt]| a.iter().zip(w).fold(QuadExt::zero_in(d), |acc, (x, y)| acc + x.clone() * y);
                rows.push(imgs.iter().map(|w| dot(w)).collect::<Vec<_>>());
                rhs.push(shift.clone() * dot(v));
            }
        }
    }
    if rows.is_empty() {
        return Some(vec![QuadExt::zero_in(d); g.dim()]);
    }
    let mut x = Mat::from_rows(rows, basis.len(), d).ok()?.solve(&rhs, None)?;
    x.truncate(g.dim());
    Some(x)
}

/// H^{p,q} = F^p ∩ F̄^q by p, when F is a pure Hodge structure of weight n.
pub fn pure_hodge_pieces(f: &Filtration<QuadExt>, weight: i32) -> Option<BTreeMap<i32, Subspace<QuadExt>>> {
    let fb = f.conj();
    let (lo, hi) = filtration_span(f);
    let mut pieces = BTreeMap::new();
    let mut total = Subspace::zero(f.ambient(), f.ctx());
    for p in lo..=hi {
        let h = f.get(p).intersect(&fb.get(weight - p));
        if !total.intersect(&h).is_zero() {
            return None;
        }
        total = total.sum(&h);
        if !h.is_zero() {
            pieces.insert(p, h);
        }
    }
    total.is_full().then_some(pieces)
}

/// ψ_F = (ξ − ξ̄)/√−d for the ξ ∈ g ⊗ 𝔽 acting by p − n/2 on H^{p,q} of the
/// pure Hodge structure F; √d·ψ_F is the differential of its circle action.
pub fn pure_hs_direction(g: &MatrixLieAlgebra, f: &Filtration<QuadExt>, weight: i32) -> Option<Vec<Rational>> {
    let d = f.ctx();
    let pieces = pure_hodge_pieces(f, weight)?;
    let basis: Vec<Mat<QuadExt>> = g.basis().iter().map(|b| b.lift::<QuadExt>(d)).collect();
    let mut rows: Vec<Vec<QuadExt>> = Vec::new();
    let mut rhs = Vec::new();
    for (p, h) in &pieces {
        let shift = QuadExt::real(Rational::new((2 * p - weight).into(), 2.into()), d);
        for v in h.basis() {
            let imgs: Vec<Vec<QuadExt>> = basis.iter().map(|b| b.mul_vec(v)).collect();
            for i in 0..v.len() {
                rows.push(imgs.iter().map(|w| w[i].clone()).collect());
                rhs.push(shift.clone() * &v[i]);
            }
        }
    }
    let xi = Mat::from_rows(rows, g.dim(), d).ok()?.solve(&rhs, None)?;
    Some(xi.iter().map(|c| c.im.clone() * rat(2)).collect())
}

/// The unique x ∈ g ⊗ 𝔽 with ad x = T, if any.
fn solve_ad(g: &MatrixLieAlgebra, t: &Mat<QuadExt>) -> Option<Vec<QuadExt>> {
    let d = t.ctx();
    let dim = g.dim();
    let cols: Vec<Vec<QuadExt>> = g.ad_basis().iter().map(|a| a.lift::<QuadExt>(d).entries().to_vec()).collect();
    let m = Mat::from_cols(&cols, dim * dim, d);
    let x = m.solve(t.entries(), None)?;
    Some(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingElements {
    pub y: Element<Rational>,
    pub xi: Element<QuadExt>,
    /// (ξ − ξ̄)/√−d; the real φ is √d·ψ.
    pub psi: Element<Rational>,
}

/// Y with ad Y = p+q and ξ with ad ξ = p on the adjoint bigrading, which must
/// be ℝ-split.
pub fn grading_elements(g: &MatrixLieAlgebra, adjoint: &Bigrading, n: &Element<Rational>) -> Result<SplittingElements> {
    let d = adjoint.disc();
    if !splitness(adjoint).r_split {
        return Err(Error::Mhs("grading elements need an ℝ-split adjoint bigrading".into()));
    }
    let ty = adjoint.grading_operator(|p, q| rat((p + q) as i64));
    let tx = adjoint.grading_operator(|p, _| rat(p as i64));
    let yc = solve_ad(g, &ty).ok_or_else(|| Error::NoSolution("no Y in the algebra grades the bigrading".into()))?;
    let xi = solve_ad(g, &tx).ok_or_else(|| Error::NoSolution("no ξ in the algebra grades the Hodge types".into()))?;
    if yc.iter().any(|c| !c.is_real()) {
        return Err(Error::Internal("ℝ-split grading element is not rational".into()));
    }
    let y: Vec<Rational> = yc.iter().map(|c| c.re.clone()).collect();
    let psi: Vec<Rational> = xi.iter().map(|c| c.im.clone() * rat(2)).collect();
    let y = g.element(y, ());
    let psi = g.element(psi, ());
    let xi = g.element(xi, d);
    let two_n = n.mat.scale(&rat(-2));
    if g.bracket(&y, n).mat != two_n {
        return Err(Error::Mhs("[Y, N] ≠ −2N: N is not of type (−1,−1)".into()));
    }
    if !g.ad(n).image().contains_vector(&y.coords) {
        return Err(Error::Mhs("Y is not in im ad N".into()));
    }
    if !g.bracket(&psi, n).mat.is_zero() || !g.bracket(&psi, &y).mat.is_zero() {
        return Err(Error::Mhs("ψ does not commute with N and Y".into()));
    }
    Ok(SplittingElements { y, xi, psi })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceCheck {
    pub p: i32,
    pub q: i32,
    pub dim: usize,
    pub positive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationReport {
    pub weight: i32,
    pub first_relation: bool,
    pub pieces: Vec<PieceCheck>,
}

impl PolarizationReport {
    pub fn passed(&self) -> bool {
        self.first_relation && self.pieces.iter().all(|p| p.positive)
    }
    pub fn failing(&self) -> Vec<(i32, i32)> {
        self.pieces.iter().filter(|p| !p.positive).map(|p| (p.p, p.q)).collect()
    }
}

fn bilinear(form: &Mat<QuadExt>, u: &[QuadExt], v: &[QuadExt]) -> QuadExt {
    let fv = form.mul_vec(v);
    u.iter().zip(&fv).fold(QuadExt::zero_in(form.ctx()), |acc, (a, b)| acc + a.clone() * b)
}

/// The Riemann relations for a pure piece of weight w = p+q with form
/// S(u, v) = ⟨u, form·nk·v⟩: S(P^{a,b}, P^{a',b'}) = 0 unless a + a' = w, and
/// i^{p−q}·S(v, v̄) > 0 on each P^{p,q}. With i replaced by √−d, the factor is
/// (−1)^{(p−q)/2} for even p−q and ±√−d for odd p−q, which has the same sign
/// after dividing by √d > 0.
pub fn polarization_check(
    pieces: &BTreeMap<(i32, i32), Subspace<QuadExt>>,
    form: &Mat<QuadExt>,
    nk: &Mat<QuadExt>,
    weight: i32,
) -> PolarizationReport {
    let s = form.mul(nk);
    let d = form.ctx();
    let mut first_relation = true;
    for ((a, _), u) in pieces {
        for ((a2, _), v) in pieces {
            if a + a2 == weight {
                continue;
            }
            for x in u.basis() {
                for y in v.basis() {
                    if !bilinear(&s, x, y).vanishes() {
                        first_relation = false;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for ((p, q), u) in pieces {
        let diff = p - q;
        let factor = if diff.rem_euclid(2) == 0 {
            QuadExt::from_ints(if (diff / 2).rem_euclid(2) == 0 { 1 } else { -1 }, 0, d)
        } else {
            QuadExt::from_ints(0, if diff.rem_euclid(4) == 1 { 1 } else { -1 }, d)
        };
        let b = u.basis();
        let gram = Mat::from_fn(b.len(), b.len(), d, |i, j| {
            let vbar: Vec<QuadExt> = b[j].iter().map(|x| x.conj()).collect();
            factor.clone() * bilinear(&s, &b[i], &vbar)
        });
        let positive = hermitian_positive_definite(&gram).unwrap_or(false);
        out.push(PieceCheck { p: *p, q: *q, dim: u.dim(), positive });
    }
    PolarizationReport { weight, first_relation, pieces: out }
}

/// Q(F^p, F^{n−p+1}) = 0 for all p.
pub fn is_isotropic(q: &Mat<QuadExt>, f: &Filtration<QuadExt>, weight: i32) -> bool {
    let (lo, hi) = filtration_span(f);
    for p in lo..=hi {
        let a = f.get(p);
        let b = f.get(weight - p + 1);
        for x in a.basis() {
            for y in b.basis() {
                if !bilinear(q, x, y).vanishes() {
                    return false;
                }
            }
        }
    }
    true
}

/// Gram matrix of a form between two subspaces.
pub fn pairing_rank<S: Scalar>(form: &Mat<S>, u: &Subspace<S>, v: &Subspace<S>) -> usize {
    let m = Mat::from_fn(u.dim(), v.dim(), form.ctx(), |i, j| {
        let fv = form.mul_vec(&v.basis()[j]);
        u.basis()[i].iter().zip(&fv).fold(S::zero_in(form.ctx()), |acc, (a, b)| acc + a.clone() * b)
    });
    m.rank()
}

/// Decreasing filtration from spanning sets F^p = span(vecs); F^p for p
/// below the smallest listed index is the whole space.
pub fn filtration_from_spans(ambient: usize, disc: u64, spans: &[(i32, Vec<Vec<QuadExt>>)]) -> Result<Filtration<QuadExt>> {
    let mut steps = BTreeMap::new();
    let lo = spans.iter().map(|(p, _)| *p).min().unwrap_or(0);
    steps.insert(lo - 1, Subspace::full(ambient, disc));
    for (p, vecs) in spans {
        if vecs.iter().any(|v| v.len() != ambient) {
            return Err(Error::Dimension(format!("F^{p} has a vector of the wrong length")));
        }
        steps.insert(*p, Subspace::from_vectors(ambient, vecs.clone(), disc));
    }
    let hi = spans.iter().map(|(p, _)| *p).max().unwrap_or(0);
    steps.insert(hi + 1, Subspace::zero(ambient, disc));
    Filtration::decreasing(ambient, disc, steps)
}
