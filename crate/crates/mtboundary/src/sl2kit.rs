//! Weight filtrations, Jacobson–Morozov completion over ℚ, ad(Y)-gradings,
//! isotypic pieces and primitive subspaces.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::liealg::{Element, MatrixLieAlgebra};
use crate::linalg::{Filtration, Mat, Subspace};
use crate::scalars::{rat, Rational, Scalar};

/// Weight filtration of a nilpotent N centered at c:
/// W_{c+k} = Σ_{j≥0} ker N^{j+1} ∩ im N^{max(0, j−k)}.
/// On a Jordan chain of length L+1 the (j = (L+k)/2) term picks out exactly
/// the vectors of weight ≤ c+k, and every other term is smaller.
pub fn weight_filtration_of<S: Scalar>(n: &Mat<S>, center: i32) -> Result<Filtration<S>> {
    if !n.is_square() {
        return Err(Error::Dimension("weight filtration needs a square matrix".into()));
    }
    let idx = n.nilpotency_index().ok_or(Error::NotNilpotent)?;
    let dim = n.nrows();
    let ctx = n.ctx();
    let mut steps = BTreeMap::new();
    if idx <= 1 {
        steps.insert(center, Subspace::full(dim, ctx));
        return Filtration::increasing(dim, ctx, steps);
    }
    let l = (idx - 1) as i32;
    let mut kers = Vec::with_capacity(idx + 1);
    let mut ims = Vec::with_capacity(idx + 1);
    let mut p = Mat::identity(dim, ctx);
    for _ in 0..=idx {
        ims.push(p.image());
        kers.push(p.kernel());
        p = p.mul(n);
    }
    // kers[m] = ker N^m, ims[m] = im N^m
    for k in -l..=l {
        let mut w = Subspace::zero(dim, ctx);
        for j in 0..=l {
            let a = kers[(j + 1) as usize].intersect(&ims[((j - k).max(0) as usize).min(idx)]);
            w = w.sum(&a);
        }
        steps.insert(center + k, w);
    }
    // W_{c−L−1} = 0 is implied by the lookup convention
    Filtration::increasing(dim, ctx, steps)
}

/// Weight filtration of ad N on the algebra, centered at 0.
pub fn adjoint_weight_filtration(g: &MatrixLieAlgebra, n: &Element<Rational>) -> Result<Filtration<Rational>> {
    weight_filtration_of(&g.ad(n), 0)
}

/// Checks the two defining properties: N W_k ⊆ W_{k−2} and
/// N^k : Gr_{c+k} → Gr_{c−k} an isomorphism.
pub fn is_weight_filtration<S: Scalar>(n: &Mat<S>, w: &Filtration<S>, center: i32) -> bool {
    let Some((lo, hi)) = w.bounds() else { return n.is_zero() };
    for k in lo - 1..=hi + 1 {
        if !w.get(k - 2).contains(&w.get(k).image_under(n)) {
            return false;
        }
    }
    let span = (hi - center).max(center - lo).max(0);
    for k in 0..=span {
        let top = w.get(center + k);
        let top_lower = w.get(center + k - 1);
        let bottom = w.get(center - k);
        let bottom_lower = w.get(center - k - 1);
        let gd_top = top.dim() - top_lower.dim();
        let gd_bottom = bottom.dim() - bottom_lower.dim();
        if gd_top != gd_bottom {
            return false;
        }
        // rank of the induced map Gr_{c+k} → Gr_{c−k}
        let image = top.image_under(&n.pow(k as usize)).sum(&bottom_lower);
        if !bottom.contains(&image) || image.dim() - bottom_lower.dim() != gd_top {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub y: Element<Rational>,
    pub n_plus: Element<Rational>,
    pub n_minus: Element<Rational>,
}

impl Sl2Triple {
    pub fn verify(&self, g: &MatrixLieAlgebra) -> bool {
        let two = rat(2);
        let yp = g.bracket(&self.y, &self.n_plus);
        let ym = g.bracket(&self.y, &self.n_minus);
        let pm = g.bracket(&self.n_plus, &self.n_minus);
        yp.mat == self.n_plus.mat.scale(&two) && ym.mat == self.n_minus.mat.scale(&(-two)) && pm.mat == self.y.mat
    }
}

/// Completes e₊ given a neutral element x with [x, N] = −2N: the unique
/// solution of [x, e₊] = 2e₊, [e₊, N] = x.
pub fn complete_from_neutral(g: &MatrixLieAlgebra, n: &Element<Rational>, x: &[Rational]) -> Result<Sl2Triple> {
    let d = g.dim();
    let ad_x = g.ad_coords(x, ());
    let ad_n = g.ad(n);
    let top = ad_x.sub(&Mat::identity(d, ()).scale(&rat(2)));
    let a = top.vstack(&ad_n);
    let mut rhs = vec![rat(0); d];
    rhs.extend(x.iter().map(|v| -v.clone()));
    let e = a.solve(&rhs, None).ok_or_else(|| Error::NoSolution("no e₊ completes the triple".into()))?;
    let t = Sl2Triple { y: g.element(x.to_vec(), ()), n_plus: g.element(e, ()), n_minus: n.clone() };
    if !t.verify(g) {
        return Err(Error::Internal("triple identities fail after completion".into()));
    }
    Ok(t)
}

/// Jacobson–Morozov over ℚ with N as the nil-negative element: x ∈ im ad N with
/// [x, N] = −2N, then the Kostant-unique e₊.
pub fn jm_complete(g: &MatrixLieAlgebra, n: &Element<Rational>) -> Result<Sl2Triple> {
    if n.coords.iter().all(|c| c.vanishes()) {
        return Err(Error::Domain("cannot complete N = 0 to an sl2-triple".into()));
    }
    if !n.mat.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let ad_n = g.ad(n);
    let target: Vec<Rational> = n.coords.iter().map(|c| c.clone() * rat(2)).collect();
    let im = ad_n.image();
    let x = ad_n
        .solve(&target, Some(&im))
        .ok_or_else(|| Error::NoSolution("no neutral element in im ad N; is N in the algebra?".into()))?;
    complete_from_neutral(g, n, &x)
}

/// Eigenspaces of a diagonalizable-over-ℚ operator with integer eigenvalues in [lo, hi].
pub fn integer_eigenspaces<S: Scalar>(a: &Mat<S>, lo: i32, hi: i32) -> BTreeMap<i32, Subspace<S>> {
    let n = a.nrows();
    let ctx = a.ctx();
    let mut out = BTreeMap::new();
    for k in lo..=hi {
        let shift = Mat::identity(n, ctx).scale(&S::from_rational(rat(k as i64), ctx));
        let e = a.sub(&shift).kernel();
        if !e.is_zero() {
            out.insert(k, e);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDecomposition {
    pub pieces: BTreeMap<i32, Subspace<Rational>>,
}

impl GradedDecomposition {
    pub fn piece(&self, k: i32) -> Subspace<Rational> {
        let ambient = self.pieces.values().next().map_or(0, |s| s.ambient());
        self.pieces.get(&k).cloned().unwrap_or_else(|| Subspace::zero(ambient, ()))
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(|s| s.dim()).sum()
    }

    /// W_m = ⊕_{k≤m} E(k).
    pub fn filtration(&self, ambient: usize) -> Filtration<Rational> {
        let mut steps = BTreeMap::new();
        let mut acc = Subspace::zero(ambient, ());
        for (k, e) in &self.pieces {
            acc = acc.sum(e);
            steps.insert(*k, acc.clone());
        }
        Filtration::increasing(ambient, (), steps).expect("partial sums are nested")
    }
}

/// E(k) = {v : [Y, v] = kv}.
pub fn grading(g: &MatrixLieAlgebra, triple: &Sl2Triple) -> Result<GradedDecomposition> {
    let ad_y = g.ad(&triple.y);
    let bound = 2 * g.dim() as i32;
    let pieces = integer_eigenspaces(&ad_y, -bound, bound);
    let gd = GradedDecomposition { pieces };
    if gd.total_dim() != g.dim() {
        return Err(Error::Internal("ad Y is not diagonalizable with integer eigenvalues".into()));
    }
    Ok(gd)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isotypic {
    /// m(ℓ): the sum of the (ℓ+1)-dimensional irreducible summands.
    pub m: BTreeMap<usize, Subspace<Rational>>,
    /// P̃_ℓ = m(ℓ) ∩ E(ℓ): highest weight vectors.
    pub highest: BTreeMap<usize, Subspace<Rational>>,
}

impl Isotypic {
    /// Σ_ℓ (ℓ+1)·dim P̃_ℓ.
    pub fn dimension_count(&self) -> usize {
        self.highest.iter().map(|(l, p)| (l + 1) * p.dim()).sum()
    }
}

pub fn isotypic(g: &MatrixLieAlgebra, triple: &Sl2Triple) -> Result<Isotypic> {
    let d = g.dim();
    let grad = grading(g, triple)?;
    let ad_n = g.ad(&triple.n_minus);
    let ad_p = g.ad(&triple.n_plus);
    let top = grad.pieces.keys().next_back().copied().unwrap_or(0).max(0) as usize;
    let mut n_pow = vec![Mat::identity(d, ())];
    let mut p_pow = vec![Mat::identity(d, ())];
    for _ in 0..=top + 1 {
        n_pow.push(n_pow.last().unwrap().mul(&ad_n));
        p_pow.push(p_pow.last().unwrap().mul(&ad_p));
    }
    let mut m = BTreeMap::new();
    let mut highest = BTreeMap::new();
    for l in 0..=top {
        let mut acc = Subspace::zero(d, ());
        for k in 0..=l {
            let piece = n_pow[k + 1]
                .kernel()
                .intersect(&p_pow[k].image())
                .intersect(&p_pow[l - k + 1].kernel())
                .intersect(&n_pow[l - k].image());
            acc = acc.sum(&piece);
        }
        if !acc.is_zero() {
            let hw = acc.intersect(&grad.piece(l as i32));
            highest.insert(l, hw);
            m.insert(l, acc);
        }
    }
    Ok(Isotypic { m, highest })
}

/// A subspace of Gr_k represented by its full preimage `lift` in W_k, which
/// contains `lower` = W_{k−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace<S: Scalar> {
    pub index: i32,
    pub lift: Subspace<S>,
    pub lower: Subspace<S>,
}

impl<S: Scalar> GradedSubspace<S> {
    pub fn dim(&self) -> usize {
        self.lift.dim() - self.lower.dim()
    }
    /// Canonical lift inside a complement of W_{k−1} in W_k.
    pub fn within(&self, complement: &Subspace<S>) -> Subspace<S> {
        self.lift.intersect(complement)
    }
    pub fn is_contained_in(&self, other: &Self) -> bool {
        other.lift.contains(&self.lift)
    }
}

/// {v ∈ W_k : M v ∈ W_target for every M in `maps`}, as a subspace of Gr_k.
fn graded_kernel<S: Scalar>(w: &Filtration<S>, k: i32, maps: &[Mat<S>], target: i32) -> GradedSubspace<S> {
    let mut lift = w.get(k);
    let t = w.get(target);
    for m in maps {
        lift = lift.intersect(&t.preimage_under(m));
    }
    GradedSubspace { index: k, lift, lower: w.get(k - 1) }
}

/// P̂_k = ker (ad N)^{k+1} on Gr_k, for k ≥ 0.
pub fn primitive_hat<S: Scalar>(ad_n: &Mat<S>, w: &Filtration<S>, k: i32) -> GradedSubspace<S> {
    graded_kernel(w, k, &[ad_n.pow((k + 1) as usize)], -k - 3)
}

/// P_k = ∩_j ker (ad N_j ∘ (ad N)^k) on Gr_k, for k ≥ 0.
pub fn primitive_cone<S: Scalar>(ad_gens: &[Mat<S>], ad_sum: &Mat<S>, w: &Filtration<S>, k: i32) -> GradedSubspace<S> {
    let nk = ad_sum.pow(k as usize);
    let maps: Vec<Mat<S>> = ad_gens.iter().map(|a| a.mul(&nk)).collect();
    graded_kernel(w, k, &maps, -k - 3)
}

/// Checks Gr_k = Σ_ℓ Σ (ad N_{j₁})···(ad N_{j_ℓ}) P_{k+2ℓ} at every index.
pub fn cone_reconstruction_holds<S: Scalar>(ad_gens: &[Mat<S>], ad_sum: &Mat<S>, w: &Filtration<S>) -> bool {
    let Some((lo, hi)) = w.jump_range() else { return true };
    let prims: BTreeMap<i32, Subspace<S>> =
        (0..=hi.max(0)).map(|k| (k, primitive_cone(ad_gens, ad_sum, w, k).lift)).collect();
    for k in lo..=hi {
        let mut acc = w.get(k - 1);
        // words of length ℓ applied to P_{k+2ℓ}
        let mut level: Vec<Subspace<S>> = Vec::new();
        let start_l = if k >= 0 { 0 } else { ((-k + 1) / 2) as usize };
        for l in 0.. {
            let src = k + 2 * l as i32;
            if src > hi {
                break;
            }
            if (l as usize) < start_l {
                continue;
            }
            level.clear();
            level.push(prims[&src].clone());
            for _ in 0..l {
                let mut next = Subspace::zero(w.ambient(), w.ctx());
                for s in &level {
                    for a in ad_gens {
                        next = next.sum(&s.image_under(a));
                    }
                }
                level = vec![next];
            }
            for s in &level {
                acc = acc.sum(s);
            }
        }
        if acc != w.get(k) {
            return false;
        }
    }
    true
}
