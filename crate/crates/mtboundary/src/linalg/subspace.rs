use super::mat::rref_rows;
use super::Mat;
use crate::scalars::{QuadExt, Rational, Scalar};

/// A subspace of S^n, stored as the nonzero rows of its reduced echelon
/// basis. Two subspaces are equal iff their stored rows are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<S: Scalar> {
    ambient: usize,
    basis: Vec<Vec<S>>,
    ctx: S::Ctx,
}

impl<S: Scalar> Subspace<S> {
    pub fn from_vectors(ambient: usize, vecs: Vec<Vec<S>>, ctx: S::Ctx) -> Self {
        for v in &vecs {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
        }
        let (basis, _) = rref_rows(vecs, ambient, ctx);
        Subspace { ambient, basis, ctx }
    }

    pub fn zero(ambient: usize, ctx: S::Ctx) -> Self {
        Subspace { ambient, basis: Vec::new(), ctx }
    }

    pub fn full(ambient: usize, ctx: S::Ctx) -> Self {
        Subspace { ambient, basis: Mat::identity(ambient, ctx).to_rows(), ctx }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ctx(&self) -> S::Ctx {
        self.ctx
    }
    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|x| !x.vanishes()).expect("echelon rows are nonzero"))
            .collect()
    }

    /// Rows = basis vectors.
    pub fn basis_matrix(&self) -> Mat<S> {
        Mat::from_rows(self.basis.clone(), self.ambient, self.ctx).expect("consistent basis")
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.ambient, o.ambient, "ambient dimension mismatch");
    }

    pub fn sum(&self, o: &Self) -> Self {
        self.check(o);
        if o.is_zero() || self.is_full() {
            return self.clone();
        }
        if self.is_zero() || o.is_full() {
            return o.clone();
        }
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Self::from_vectors(self.ambient, v, self.ctx)
    }

    /// {x : b·x = 0 for every basis vector b} (plain bilinear dot product).
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.ambient, self.ctx);
        }
        self.basis_matrix().kernel()
    }

    /// ker of the stacked annihilators of both spaces.
    pub fn intersect(&self, o: &Self) -> Self {
        self.check(o);
        if self.is_zero() || o.is_full() {
            return self.clone();
        }
        if o.is_zero() || self.is_full() {
            return o.clone();
        }
        let mut rows = self.annihilator().basis;
        rows.extend(o.annihilator().basis);
        Mat::from_rows(rows, self.ambient, self.ctx).expect("consistent rows").kernel()
    }

    /// o ⊆ self
    pub fn contains(&self, o: &Self) -> bool {
        self.check(o);
        if o.dim() > self.dim() {
            return false;
        }
        o.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn contains_vector(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(|x| x.vanishes())
    }

    /// v minus its combination along the pivot columns.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut r = v.to_vec();
        for (row, p) in self.basis.iter().zip(self.pivots()) {
            let f = r[p].clone();
            if f.vanishes() {
                continue;
            }
            for (x, b) in r.iter_mut().zip(row) {
                if !b.vanishes() {
                    *x = x.clone() - f.clone() * b;
                }
            }
        }
        r
    }

    /// Coordinates of v in the echelon basis, or None if v is not in the space.
    pub fn coords_of(&self, v: &[S]) -> Option<Vec<S>> {
        let c: Vec<S> = self.pivots().into_iter().map(|p| v[p].clone()).collect();
        let mut back = vec![S::zero_in(self.ctx); self.ambient];
        for (ci, row) in c.iter().zip(&self.basis) {
            for (x, b) in back.iter_mut().zip(row) {
                *x = x.clone() + ci.clone() * b;
            }
        }
        if back.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }

    /// dim U − dim(U ∩ V): the dimension of the image of U in ambient/V.
    pub fn quotient_dim(&self, v: &Self) -> usize {
        self.dim() - self.intersect(v).dim()
    }

    /// M·U, with M acting on column vectors.
    pub fn image_under(&self, m: &Mat<S>) -> Self {
        assert_eq!(m.ncols(), self.ambient, "matrix does not act on this space");
        let vecs = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Self::from_vectors(m.nrows(), vecs, self.ctx)
    }

    /// {x : Mx ∈ U}.
    pub fn preimage_under(&self, m: &Mat<S>) -> Self {
        assert_eq!(m.nrows(), self.ambient, "matrix does not map into this space");
        let ann = self.annihilator();
        if ann.is_zero() {
            return Self::full(m.ncols(), self.ctx);
        }
        ann.basis_matrix().mul(m).kernel()
    }

    pub fn conj(&self) -> Self {
        let vecs = self.basis.iter().map(|v| v.iter().map(|x| x.conj()).collect()).collect();
        Self::from_vectors(self.ambient, vecs, self.ctx)
    }

    pub fn is_conj_stable(&self) -> bool {
        *self == self.conj()
    }
}

impl Subspace<Rational> {
    pub fn extend_scalars(&self, disc: u64) -> Subspace<QuadExt> {
        let vecs = self.basis.iter().map(|v| v.iter().map(|x| QuadExt::real(x.clone(), disc)).collect()).collect();
        Subspace::from_vectors(self.ambient, vecs, disc)
    }
}

impl Subspace<QuadExt> {
    /// U ∩ ℚ^n.
    pub fn rational_points(&self) -> Subspace<Rational> {
        let ann = self.annihilator();
        let mut rows = Vec::new();
        for a in ann.basis() {
            rows.push(a.iter().map(|x| x.re.clone()).collect::<Vec<_>>());
            rows.push(a.iter().map(|x| x.im.clone()).collect::<Vec<_>>());
        }
        if rows.is_empty() {
            return Subspace::full(self.ambient, ());
        }
        Mat::from_rows(rows, self.ambient, ()).expect("consistent rows").kernel()
    }

    /// The 𝔽-space U ⊆ 𝔽^n viewed as a ℚ-subspace of ℚ^{2n}, coordinates
    /// interleaved as (re x₁, im x₁, re x₂, im x₂, …).
    pub fn restrict_scalars(&self) -> Subspace<Rational> {
        let d = Rational::from_integer(self.ctx.into());
        let mut vecs = Vec::new();
        for v in &self.basis {
            let mut a = Vec::with_capacity(2 * self.ambient);
            let mut b = Vec::with_capacity(2 * self.ambient);
            for x in v {
                a.push(x.re.clone());
                a.push(x.im.clone());
                // √−d·(re + im√−d) = −d·im + re√−d
                b.push(-(x.im.clone() * &d));
                b.push(x.re.clone());
            }
            vecs.push(a);
            vecs.push(b);
        }
        Subspace::from_vectors(2 * self.ambient, vecs, ())
    }
}
