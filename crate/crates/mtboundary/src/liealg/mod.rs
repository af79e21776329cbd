//! Matrix Lie algebras given by a rational basis, with brackets computed in
//! basis coordinates through precomputed ad-matrices.

mod constructors;

pub use constructors::{carayol_qform, g2, g2_element, g2_qform, sl2_standard, sp_or_so, su21_qform, CarayolData};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inertia, Mat, Subspace};
use crate::scalars::{Rational, Scalar};

/// An element in basis coordinates together with its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<S: Scalar> {
    pub coords: Vec<S>,
    pub mat: Mat<S>,
}

#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    n: usize,
    basis: Vec<Mat<Rational>>,
    q: Mat<Rational>,
    weight: i32,
    sign_b: i32,
    gram_override: Option<Mat<Rational>>,
    // positions (flattened i·n + j) where the basis restricts to an invertible square
    coord_positions: Vec<usize>,
    coord_inv: Mat<Rational>,
    ad_basis: Vec<Mat<Rational>>,
    closure_failures: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraValidation {
    pub dim: usize,
    pub ambient_dim: usize,
    pub closure_failures: Vec<(usize, usize)>,
    pub q_symmetry_ok: bool,
    pub q_nondegenerate: bool,
    pub q_compatibility_failures: Vec<usize>,
    pub jacobi_ok: bool,
    pub b_invariance_failures: Vec<(usize, usize, usize)>,
    pub b_nondegenerate: bool,
    pub ad_injective: bool,
}

impl AlgebraValidation {
    pub fn passed(&self) -> bool {
        self.closure_failures.is_empty()
            && self.q_symmetry_ok
            && self.q_nondegenerate
            && self.q_compatibility_failures.is_empty()
            && self.jacobi_ok
            && self.b_invariance_failures.is_empty()
            && self.b_nondegenerate
            && self.ad_injective
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Abelian,
    Sl2Split,
    Sl2Compact,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureProbe {
    pub kind: StructureKind,
    pub dim: usize,
    pub derived_dim: usize,
    /// (positive, negative, zero) of the Killing form of the subalgebra.
    pub killing_signature: (usize, usize, usize),
}

impl MatrixLieAlgebra {
    pub fn new(basis: Vec<Mat<Rational>>, q: Mat<Rational>, weight: i32, sign_b: i32) -> Result<Self> {
        let n = q.nrows();
        if !q.is_square() {
            return Err(Error::Algebra("Q must be square".into()));
        }
        if sign_b != 1 && sign_b != -1 {
            return Err(Error::Algebra(format!("sign_B must be ±1, got {sign_b}")));
        }
        if basis.is_empty() {
            return Err(Error::Algebra("empty basis".into()));
        }
        for (k, b) in basis.iter().enumerate() {
            if b.nrows() != n || b.ncols() != n {
                return Err(Error::Algebra(format!("basis matrix {k} is not {n}×{n}")));
            }
        }
        let dim = basis.len();
        let flat = Mat::from_fn(dim, n * n, (), |k, p| basis[k].get(p / n, p % n).clone());
        let (_, pivots) = flat.rref();
        if pivots.len() < dim {
            return Err(Error::Algebra("basis matrices are linearly dependent".into()));
        }
        let square = Mat::from_fn(dim, dim, (), |k, l| flat.get(k, pivots[l]).clone());
        let coord_inv = square.inverse().ok_or_else(|| Error::Internal("coordinate square not invertible".into()))?;
        let mut alg = MatrixLieAlgebra {
            n,
            basis,
            q,
            weight,
            sign_b,
            gram_override: None,
            coord_positions: pivots,
            coord_inv,
            ad_basis: Vec::new(),
            closure_failures: Vec::new(),
        };
        let mut ad_basis = Vec::with_capacity(dim);
        let mut failures = Vec::new();
        for i in 0..dim {
            let mut cols = Vec::with_capacity(dim);
            for j in 0..dim {
                let br = alg.basis[i].commutator(&alg.basis[j]);
                match alg.coords_of(&br) {
                    Some(c) => cols.push(c),
                    None => {
                        failures.push((i, j));
                        cols.push(vec![Rational::zero(); dim]);
                    }
                }
            }
            ad_basis.push(Mat::from_cols(&cols, dim, ()));
        }
        alg.ad_basis = ad_basis;
        alg.closure_failures = failures;
        Ok(alg)
    }

    /// Replaces the trace form by a user-supplied Gram matrix (for non-simple
    /// algebras where one trace form mis-scales factors).
    pub fn with_b_gram(mut self, gram: Mat<Rational>) -> Result<Self> {
        if gram.nrows() != self.dim() || gram.ncols() != self.dim() {
            return Err(Error::Algebra("B matrix has the wrong size".into()));
        }
        self.gram_override = Some(gram);
        Ok(self)
    }

    pub fn with_sign_b(mut self, sign_b: i32) -> Result<Self> {
        if sign_b != 1 && sign_b != -1 {
            return Err(Error::Algebra(format!("sign_B must be ±1, got {sign_b}")));
        }
        self.sign_b = sign_b;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn basis(&self) -> &[Mat<Rational>] {
        &self.basis
    }
    pub fn q(&self) -> &Mat<Rational> {
        &self.q
    }
    pub fn weight(&self) -> i32 {
        self.weight
    }
    pub fn sign_b(&self) -> i32 {
        self.sign_b
    }
    pub fn is_closed(&self) -> bool {
        self.closure_failures.is_empty()
    }
    pub fn ad_basis(&self) -> &[Mat<Rational>] {
        &self.ad_basis
    }

    /// Coordinates of a matrix in the basis, or None if it is outside the span.
    pub fn coords_of<S: Scalar>(&self, m: &Mat<S>) -> Option<Vec<S>> {
        let ctx = m.ctx();
        let rhs: Vec<S> = self.coord_positions.iter().map(|&p| m.get(p / self.n, p % self.n).clone()).collect();
        let inv_t = self.coord_inv.transpose().lift::<S>(ctx);
        let c = inv_t.mul_vec(&rhs);
        if self.mat_of(&c, ctx) == *m {
            Some(c)
        } else {
            None
        }
    }

    pub fn mat_of<S: Scalar>(&self, coords: &[S], ctx: S::Ctx) -> Mat<S> {
        let mut m: Mat<S> = Mat::zeros(self.n, self.n, ctx);
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.vanishes() {
                continue;
            }
            for i in 0..self.n {
                for j in 0..self.n {
                    let e = b.get(i, j);
                    if !e.vanishes() {
                        let v = m.get(i, j).clone() + c.clone() * &S::from_rational(e.clone(), ctx);
                        m.set(i, j, v);
                    }
                }
            }
        }
        m
    }

    pub fn element<S: Scalar>(&self, coords: Vec<S>, ctx: S::Ctx) -> Element<S> {
        assert_eq!(coords.len(), self.dim(), "coordinate vector has the wrong length");
        let mat = self.mat_of(&coords, ctx);
        Element { coords, mat }
    }

    pub fn element_from_mat<S: Scalar>(&self, m: &Mat<S>) -> Result<Element<S>> {
        if m.nrows() != self.n || m.ncols() != self.n {
            return Err(Error::NotInAlgebra(format!("expected a {}×{} matrix", self.n, self.n)));
        }
        let coords = self.coords_of(m).ok_or_else(|| Error::NotInAlgebra("matrix is not in the span of the basis".into()))?;
        Ok(Element { coords, mat: m.clone() })
    }

    pub fn zero_element<S: Scalar>(&self, ctx: S::Ctx) -> Element<S> {
        self.element(vec![S::zero_in(ctx); self.dim()], ctx)
    }

    pub fn basis_element(&self, k: usize) -> Element<Rational> {
        let mut c = vec![Rational::zero(); self.dim()];
        c[k] = Rational::from_integer(1.into());
        Element { coords: c, mat: self.basis[k].clone() }
    }

    /// Matrix of [x, −] in basis coordinates.
    pub fn ad_coords<S: Scalar>(&self, x: &[S], ctx: S::Ctx) -> Mat<S> {
        let d = self.dim();
        let mut out = Mat::zeros(d, d, ctx);
        for (c, a) in x.iter().zip(&self.ad_basis) {
            if c.vanishes() {
                continue;
            }
            out = out.add(&a.lift::<S>(ctx).scale(c));
        }
        out
    }

    pub fn ad<S: Scalar>(&self, x: &Element<S>) -> Mat<S> {
        self.ad_coords(&x.coords, x.mat.ctx())
    }

    pub fn bracket_coords<S: Scalar>(&self, x: &[S], y: &[S], ctx: S::Ctx) -> Vec<S> {
        self.ad_coords(x, ctx).mul_vec(y)
    }

    pub fn bracket<S: Scalar>(&self, x: &Element<S>, y: &Element<S>) -> Element<S> {
        let ctx = x.mat.ctx();
        Element { coords: self.bracket_coords(&x.coords, &y.coords, ctx), mat: x.mat.commutator(&y.mat) }
    }

    /// Gram matrix of B(x, y) = sign_B·Tr(xy) (or the override).
    pub fn b_gram(&self) -> Mat<Rational> {
        if let Some(g) = &self.gram_override {
            return g.clone();
        }
        let s = Rational::from_integer(self.sign_b.into());
        let d = self.dim();
        Mat::from_fn(d, d, (), |i, j| self.basis[i].mul(&self.basis[j]).trace() * &s)
    }

    pub fn b_form<S: Scalar>(&self, x: &[S], y: &[S], ctx: S::Ctx) -> S {
        let g = self.b_gram().lift::<S>(ctx);
        let gy = g.mul_vec(y);
        let mut acc = S::zero_in(ctx);
        for (a, b) in x.iter().zip(&gy) {
            acc = acc + a.clone() * b;
        }
        acc
    }

    pub fn validate(&self) -> AlgebraValidation {
        let d = self.dim();
        let sym_sign = if self.weight.rem_euclid(2) == 0 { 1 } else { -1 };
        let qt = self.q.transpose();
        let q_symmetry_ok = if sym_sign == 1 { qt == self.q } else { qt == self.q.neg() };
        let q_nondegenerate = !self.q.det().vanishes();
        let q_compatibility_failures = (0..d)
            .filter(|&k| !self.basis[k].transpose().mul(&self.q).add(&self.q.mul(&self.basis[k])).is_zero())
            .collect();
        let gram = self.b_gram();
        let b_nondegenerate = !gram.det().vanishes();
        let mut jacobi_ok = self.is_closed();
        let mut b_invariance_failures = Vec::new();
        if self.is_closed() {
            // ad is a homomorphism on basis pairs: ad[x,y] = [ad x, ad y] (Jacobi)
            'outer: for i in 0..d {
                for j in i + 1..d {
                    let br = self.ad_basis[i].col(j);
                    let lhs = self.ad_coords(&br, ());
                    let rhs = self.ad_basis[i].commutator(&self.ad_basis[j]);
                    if lhs != rhs {
                        jacobi_ok = false;
                        break 'outer;
                    }
                }
            }
            // B([x,y],z) + B(y,[x,z]) = 0 ⇔ ad(x)ᵀG + G·ad(x) = 0
            for i in 0..d {
                let a = &self.ad_basis[i];
                let m = a.transpose().mul(&gram).add(&gram.mul(a));
                for j in 0..d {
                    for k in 0..d {
                        if !m.get(j, k).vanishes() {
                            b_invariance_failures.push((i, j, k));
                        }
                    }
                }
            }
        }
        let ad_injective = self.is_closed() && self.center().is_zero();
        AlgebraValidation {
            dim: d,
            ambient_dim: self.n,
            closure_failures: self.closure_failures.clone(),
            q_symmetry_ok,
            q_nondegenerate,
            q_compatibility_failures,
            jacobi_ok,
            b_invariance_failures,
            b_nondegenerate,
            ad_injective,
        }
    }

    /// Kernel of ad on the algebra.
    /// Infinitesimal isometries of Q commuting with every element of g, as
    /// matrices. Zero when V is absolutely irreducible.
    pub fn isometric_commutant(&self) -> Vec<Mat<Rational>> {
        let n = self.ambient_dim();
        constructors::linear_subalgebra(n, |x| {
            let mut v = constructors::compat(x, &self.q);
            for b in &self.basis {
                v.extend(x.commutator(b).entries().iter().cloned());
            }
            v
        })
    }

    pub fn center(&self) -> Subspace<Rational> {
        let d = self.dim();
        let all: Vec<Vec<Rational>> = (0..d).map(|k| self.basis_element(k).coords).collect();
        self.centralizer(&all, ())
    }

    /// ∩_j ker ad(s_j), in basis coordinates.
    pub fn centralizer<S: Scalar>(&self, elems: &[Vec<S>], ctx: S::Ctx) -> Subspace<S> {
        let d = self.dim();
        let mut stacked: Option<Mat<S>> = None;
        for e in elems {
            let a = self.ad_coords(e, ctx);
            stacked = Some(match stacked {
                None => a,
                Some(s) => s.vstack(&a),
            });
        }
        match stacked {
            None => Subspace::full(d, ctx),
            Some(m) => m.kernel(),
        }
    }

    /// Bracket of two subspaces: span of all [u, v].
    pub fn bracket_spaces<S: Scalar>(&self, u: &Subspace<S>, v: &Subspace<S>) -> Subspace<S> {
        let ctx = u.ctx();
        let mut vecs = Vec::new();
        for a in u.basis() {
            let ad = self.ad_coords(a, ctx);
            for b in v.basis() {
                vecs.push(ad.mul_vec(b));
            }
        }
        Subspace::from_vectors(self.dim(), vecs, ctx)
    }

    pub fn is_subalgebra<S: Scalar>(&self, h: &Subspace<S>) -> bool {
        h.contains(&self.bracket_spaces(h, h))
    }

    /// Killing form of a subalgebra h, in the echelon basis of h.
    pub fn killing_form_of(&self, h: &Subspace<Rational>) -> Result<Mat<Rational>> {
        if !self.is_subalgebra(h) {
            return Err(Error::Algebra("subspace is not closed under the bracket".into()));
        }
        let k = h.dim();
        let restricted: Vec<Mat<Rational>> = h
            .basis()
            .iter()
            .map(|x| {
                let ad = self.ad_coords(x, ());
                let cols: Vec<Vec<Rational>> =
                    h.basis().iter().map(|y| h.coords_of(&ad.mul_vec(y)).expect("closed subalgebra")).collect();
                Mat::from_cols(&cols, k, ())
            })
            .collect();
        Ok(Mat::from_fn(k, k, (), |i, j| restricted[i].mul(&restricted[j]).trace()))
    }

    pub fn structure_probe(&self, h: &Subspace<Rational>) -> Result<StructureProbe> {
        let kf = self.killing_form_of(h)?;
        let derived = self.bracket_spaces(h, h);
        let sig = inertia(&kf)?;
        let kind = if derived.is_zero() {
            StructureKind::Abelian
        } else if h.dim() == 3 && derived == *h && sig == (2, 1, 0) {
            StructureKind::Sl2Split
        } else if h.dim() == 3 && derived == *h && sig == (0, 3, 0) {
            StructureKind::Sl2Compact
        } else {
            StructureKind::Other
        };
        Ok(StructureProbe { kind, dim: h.dim(), derived_dim: derived.dim(), killing_signature: sig })
    }
}

#[cfg(test)]
mod tests;
