use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Subspace;
use crate::error::{Error, Result};
use crate::scalars::{QuadExt, Rational, Scalar};

/// Dense row-major matrix. The context (discriminant) travels with the matrix
/// so empty matrices still know their field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    ctx: S::Ctx,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize, ctx: S::Ctx) -> Self {
        Mat { rows, cols, data: vec![S::zero_in(ctx); rows * cols], ctx }
    }

    pub fn identity(n: usize, ctx: S::Ctx) -> Self {
        let mut m = Self::zeros(n, n, ctx);
        for i in 0..n {
            m.data[i * n + i] = S::one_in(ctx);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, ctx: S::Ctx, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data, ctx }
    }

    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize, ctx: S::Ctx) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Mat { rows: nrows, cols, data, ctx })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<S>], nrows: usize, ctx: S::Ctx) -> Self {
        Self::from_fn(nrows, cols.len(), ctx, |i, j| cols[j][i].clone())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn ctx(&self) -> S::Ctx {
        self.ctx
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Scalar>(&self, ctx: T::Ctx, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), ctx }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.ctx, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Self {
        self.map(self.ctx, |x| x.conj())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.ctx, |i, j| self.get(j, i).conj())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.vanishes())
    }

    pub fn trace(&self) -> S {
        let mut t = S::zero_in(self.ctx);
        for i in 0..self.rows.min(self.cols) {
            t = t + self.get(i, i);
        }
        t
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect();
        Mat { rows: self.rows, cols: self.cols, data, ctx: self.ctx }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect();
        Mat { rows: self.rows, cols: self.cols, data, ctx: self.ctx }
    }

    pub fn neg(&self) -> Self {
        self.map(self.ctx, |x| -x.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(self.ctx, |x| x.clone() * s)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, o.cols, self.ctx);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.vanishes() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.vanishes() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero_in(self.ctx);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.vanishes() && !b.vanishes() {
                        acc = acc + a.clone() * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut r = Self::identity(self.rows, self.ctx);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { rows: self.rows + o.rows, cols: self.cols, data, ctx: self.ctx }
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows, "row mismatch in hstack");
        Self::from_fn(self.rows, self.cols + o.cols, self.ctx, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (rows, pivots) = rref_rows(self.to_rows(), self.cols, self.ctx);
        let r = rows.len();
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for row in rows {
            data.extend(row);
        }
        data.extend(std::iter::repeat(S::zero_in(self.ctx)).take((self.rows - r) * self.cols));
        (Mat { rows: self.rows, cols: self.cols, data, ctx: self.ctx }, pivots)
    }

    pub fn rank(&self) -> usize {
        rref_rows(self.to_rows(), self.cols, self.ctx).1.len()
    }

    /// Right kernel {x : Mx = 0}.
    pub fn kernel(&self) -> Subspace<S> {
        let (rows, pivots) = rref_rows(self.to_rows(), self.cols, self.ctx);
        let mut vecs = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![S::zero_in(self.ctx); self.cols];
            v[f] = S::one_in(self.ctx);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][f].clone();
            }
            vecs.push(v);
        }
        Subspace::from_vectors(self.cols, vecs, self.ctx)
    }

    /// Column space.
    pub fn image(&self) -> Subspace<S> {
        let cols: Vec<Vec<S>> = (0..self.cols).map(|j| self.col(j)).collect();
        Subspace::from_vectors(self.rows, cols, self.ctx)
    }

    pub fn kernel_image(&self) -> (Subspace<S>, Subspace<S>) {
        (self.kernel(), self.image())
    }

    /// One solution of Ax = b (free variables set to zero), restricted to
    /// `constraint` when given. `None` when inconsistent.
    pub fn solve(&self, b: &[S], constraint: Option<&Subspace<S>>) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch in solve");
        match constraint {
            None => solve_plain(self, b),
            Some(c) => {
                assert_eq!(c.ambient(), self.cols, "constraint ambient mismatch");
                let basis = Mat::from_cols(c.basis(), self.cols, self.ctx);
                let y = solve_plain(&self.mul(&basis), b)?;
                Some(basis.mul_vec(&y))
            }
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n, self.ctx));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, self.ctx, |i, j| r.get(i, n + j).clone()))
    }

    pub fn det(&self) -> S {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = S::one_in(self.ctx);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].vanishes()) else {
                return S::zero_in(self.ctx);
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det = det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if a[i][c].vanishes() {
                    continue;
                }
                let f = a[i][c].clone() * &inv;
                for j in c..n {
                    let t = f.clone() * &a[c][j];
                    a[i][j] = a[i][j].clone() - t;
                }
            }
        }
        det
    }

    /// Smallest k with M^k = 0, if any k ≤ n works.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut p = Self::identity(self.rows, self.ctx);
        for k in 0..=self.rows {
            if p.is_zero() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.nilpotency_index().is_some()
    }

    /// exp of a nilpotent matrix as a finite sum.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        let k = self.nilpotency_index().ok_or(Error::NotNilpotent)?;
        let mut out = Self::identity(self.rows, self.ctx);
        let mut term = Self::identity(self.rows, self.ctx);
        for j in 1..k {
            let inv_j = S::from_rational(Rational::new(BigInt::one(), BigInt::from(j)), self.ctx);
            term = term.mul(self).scale(&inv_j);
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl Mat<Rational> {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_fn(rows.len(), cols, (), |i, j| Rational::from_integer(BigInt::from(rows[i][j])))
    }

    pub fn lift<T: Scalar>(&self, ctx: T::Ctx) -> Mat<T> {
        self.map(ctx, |x| T::from_rational(x.clone(), ctx))
    }
}

impl Mat<QuadExt> {
    pub fn re_part(&self) -> Mat<Rational> {
        self.map((), |x| x.re.clone())
    }
    pub fn im_part(&self) -> Mat<Rational> {
        self.map((), |x| x.im.clone())
    }
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|x| x.is_real())
    }
    /// a + b√−d entrywise from rational parts.
    pub fn from_parts(re: &Mat<Rational>, im: &Mat<Rational>, disc: u64) -> Self {
        Mat::from_fn(re.rows, re.cols, disc, |i, j| QuadExt {
            re: re.get(i, j).clone(),
            im: im.get(i, j).clone(),
            disc,
        })
    }
}

impl<S: Scalar> fmt::Display for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn solve_plain<S: Scalar>(a: &Mat<S>, b: &[S]) -> Option<Vec<S>> {
    let n = a.ncols();
    let aug = a.hstack(&Mat::from_cols(&[b.to_vec()], a.nrows(), a.ctx()));
    let (rows, pivots) = rref_rows(aug.to_rows(), n + 1, a.ctx());
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![S::zero_in(a.ctx()); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][n].clone();
    }
    Some(x)
}

/// Row reduction: denominators are cleared row by row, then fraction-free
/// (Bareiss) forward elimination keeps entries integral, and a final
/// normalization pass produces the reduced echelon form. Pivots are chosen
/// leftmost column first, topmost row first. Returns the nonzero RREF rows.
pub(crate) fn rref_rows<S: Scalar>(mut a: Vec<Vec<S>>, ncols: usize, ctx: S::Ctx) -> (Vec<Vec<S>>, Vec<usize>) {
    for row in a.iter_mut() {
        let mut l = BigInt::one();
        for x in row.iter() {
            if !x.vanishes() {
                l = l.lcm(&x.denom_lcm());
            }
        }
        if !l.is_one() {
            let f = S::from_rational(Rational::from_integer(l.abs()), ctx);
            for x in row.iter_mut() {
                *x = x.clone() * &f;
            }
        }
    }
    let m = a.len();
    let mut pivots = Vec::new();
    let mut prev = S::one_in(ctx);
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].vanishes()) else { continue };
        a.swap(r, p);
        let prev_inv = prev.inv().expect("Bareiss pivot is nonzero");
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            if lead.vanishes() {
                if !prev.is_unity() {
                    for j in c + 1..ncols {
                        if !row[j].vanishes() {
                            row[j] = row[j].clone() * &prow[c] * &prev_inv;
                        }
                    }
                } else {
                    for j in c + 1..ncols {
                        if !row[j].vanishes() {
                            row[j] = row[j].clone() * &prow[c];
                        }
                    }
                }
                continue;
            }
            for j in c + 1..ncols {
                let v = row[j].clone() * &prow[c] - lead.clone() * &prow[j];
                row[j] = if prev.is_unity() { v } else { v * &prev_inv };
            }
            row[c] = S::zero_in(ctx);
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    for i in (0..r).rev() {
        let c = pivots[i];
        let inv = a[i][c].inv().expect("pivot is nonzero");
        for j in c..ncols {
            if !a[i][j].vanishes() {
                a[i][j] = a[i][j].clone() * &inv;
            }
        }
        let (above, below) = a.split_at_mut(i);
        let prow = &below[0];
        for row in above.iter_mut() {
            let f = row[c].clone();
            if f.vanishes() {
                continue;
            }
            for j in c..ncols {
                if !prow[j].vanishes() {
                    row[j] = row[j].clone() - f.clone() * &prow[j];
                }
            }
        }
    }
    (a, pivots)
}

/// Jordan block sizes (descending) of a nilpotent matrix, from ranks of powers.
pub fn jordan_type<S: Scalar>(n: &Mat<S>) -> Result<Vec<usize>> {
    if !n.is_square() {
        return Err(Error::Dimension("jordan_type needs a square matrix".into()));
    }
    let size = n.nrows();
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let mut ranks = vec![size];
    let mut p = Mat::identity(size, n.ctx());
    while *ranks.last().unwrap() > 0 {
        p = p.mul(n);
        ranks.push(p.rank());
    }
    // number of blocks of size ≥ k is ranks[k-1] − ranks[k]
    let at_least: Vec<usize> = (1..ranks.len()).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut parts = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        parts.extend(std::iter::repeat(k).take(exactly));
    }
    Ok(parts)
}

/// Sylvester's criterion. Leading minors of a Hermitian matrix are real.
pub fn hermitian_positive_definite<S: Scalar>(h: &Mat<S>) -> Result<bool> {
    if !h.is_square() || *h != h.conj_transpose() {
        return Err(Error::NotHermitian);
    }
    for k in 1..=h.nrows() {
        let minor = Mat::from_fn(k, k, h.ctx(), |i, j| h.get(i, j).clone()).det();
        if !minor.im_part().vanishes() {
            return Err(Error::Internal("leading minor of a Hermitian matrix is not real".into()));
        }
        if !minor.re_part().is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// (positive, negative, zero) counts of a symmetric rational form, by exact
/// congruence diagonalization.
pub fn inertia(sym: &Mat<Rational>) -> Result<(usize, usize, usize)> {
    if !sym.is_square() || *sym != sym.transpose() {
        return Err(Error::Dimension("inertia needs a symmetric matrix".into()));
    }
    let n = sym.nrows();
    let mut a = sym.to_rows();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let diag = active.iter().copied().find(|&i| !a[i][i].vanishes());
        let piv = match diag {
            Some(i) => i,
            None => {
                let mut pair = None;
                'outer: for &i in &active {
                    for &j in &active {
                        if i != j && !a[i][j].vanishes() {
                            pair = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = pair else { break };
                // e_i ← e_i + e_j makes the (i,i) entry 2·a_ij ≠ 0
                for k in 0..n {
                    let v = a[i][k].clone() + &a[j][k];
                    a[i][k] = v;
                }
                for k in 0..n {
                    let v = a[k][i].clone() + &a[k][j];
                    a[k][i] = v;
                }
                i
            }
        };
        let p = a[piv][piv].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&k| k != piv);
        let prow = a[piv].clone();
        for &i in &active {
            if prow[i].vanishes() {
                continue;
            }
            let f = prow[i].clone() / &p;
            for &j in &active {
                let v = a[i][j].clone() - f.clone() * &prow[j];
                a[i][j] = v;
            }
        }
        for k in 0..n {
            a[piv][k] = Rational::zero();
            a[k][piv] = Rational::zero();
        }
    }
    Ok((pos, neg, n - pos - neg))
}
