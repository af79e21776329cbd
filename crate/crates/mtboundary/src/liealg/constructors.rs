use num_traits::Zero;

use super::MatrixLieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalars::{rat, QuadExt, Rational};

fn unit(n: usize, i: usize, j: usize) -> Mat<Rational> {
    let mut m = Mat::zeros(n, n, ());
    m.set(i, j, rat(1));
    m
}

/// Basis of {X ∈ gl_n(ℚ) : f(X) = 0} for a linear map f, via the kernel on
/// the n² matrix units. Basis order follows the reduced echelon form.
pub(crate) fn linear_subalgebra(n: usize, f: impl Fn(&Mat<Rational>) -> Vec<Rational>) -> Vec<Mat<Rational>> {
    let cols: Vec<Vec<Rational>> = (0..n * n).map(|k| f(&unit(n, k / n, k % n))).collect();
    let rows = cols.first().map_or(0, |c| c.len());
    let m = Mat::from_cols(&cols, rows, ());
    m.kernel()
        .basis()
        .iter()
        .map(|v| Mat::from_fn(n, n, (), |i, j| v[i * n + j].clone()))
        .collect()
}

pub(crate) fn compat(x: &Mat<Rational>, q: &Mat<Rational>) -> Vec<Rational> {
    x.transpose().mul(q).add(&q.mul(x)).entries().to_vec()
}

/// The full stabilizer algebra of Q: sp when Q is alternating, so when symmetric.
pub fn sp_or_so(q: Mat<Rational>, weight: i32, sign_b: i32) -> Result<MatrixLieAlgebra> {
    if !q.is_square() || q.nrows() == 0 {
        return Err(Error::Algebra("Q must be a nonempty square matrix".into()));
    }
    let n = q.nrows();
    let basis = linear_subalgebra(n, |x| compat(x, &q));
    MatrixLieAlgebra::new(basis, q, weight, sign_b)
}

pub fn sl2_standard() -> MatrixLieAlgebra {
    let y = Mat::from_i64(&[&[1, 0], &[0, -1]]);
    let np = Mat::from_i64(&[&[0, 1], &[0, 0]]);
    let nm = Mat::from_i64(&[&[0, 0], &[1, 0]]);
    let q = Mat::from_i64(&[&[0, 1], &[-1, 0]]);
    MatrixLieAlgebra::new(vec![y, np, nm], q, 1, -1).expect("sl2 basis is independent")
}

pub fn g2_qform() -> Mat<Rational> {
    Mat::from_fn(7, 7, (), |i, j| {
        if i != j {
            rat(0)
        } else if i < 3 {
            rat(1)
        } else {
            rat(-1)
        }
    })
}

/// The 14-parameter matrix form of g₂ ⊂ so(3,4) on (u₁,u₂,u₃,v₁,…,v₄), with
/// parameters ordered (a,b,c,d,e,f,A,B,C,D,E,F,G,H).
pub fn g2_element(p: &[i64; 14]) -> Mat<Rational> {
    let [a, b, c, d, e, f, ca, cb, cc, cd, ce, cf, cg, ch] = *p;
    Mat::from_i64(&[
        &[0, f - a, -b - e, ca, cb, cc, ch - cf],
        &[a - f, 0, d - c, cd, ce, cf, cc - cg],
        &[b + e, c - d, 0, cg, ch, -ca - ce, cd - cb],
        &[ca, cd, cg, 0, -a, -b, -d],
        &[cb, ce, ch, a, 0, -c, -e],
        &[cc, cf, -ca - ce, b, c, 0, -f],
        &[ch - cf, cc - cg, cd - cb, d, e, f, 0],
    ])
}

pub fn g2(sign_b: i32) -> Result<MatrixLieAlgebra> {
    let basis = (0..14)
        .map(|k| {
            let mut p = [0i64; 14];
            p[k] = 1;
            g2_element(&p)
        })
        .collect();
    MatrixLieAlgebra::new(basis, g2_qform(), 2, sign_b)
}

/// Data for su(2,1) realized over ℚ on V = ℚ⁶ with basis (e₁,f₁,e₂,f₂,e₃,f₃),
/// where f_j = √−d·e_j.
#[derive(Clone, Debug)]
pub struct CarayolData {
    pub disc: u64,
    /// Multiplication by √−d.
    pub j: Mat<Rational>,
    pub q: Mat<Rational>,
}

impl CarayolData {
    /// Expands a 3×3 matrix over ℚ(√−d) into its 6×6 rational realization.
    pub fn expand(&self, a: &Mat<QuadExt>) -> Mat<Rational> {
        let d = rat(self.disc as i64);
        let n = a.nrows();
        Mat::from_fn(2 * n, 2 * n, (), |r, c| {
            let x = a.get(r / 2, c / 2);
            match (r % 2, c % 2) {
                (0, 0) | (1, 1) => x.re.clone(),
                (1, 0) => x.im.clone(),
                _ => -(x.im.clone() * &d),
            }
        })
    }

    /// The 𝔽-vector (z₁,z₂,z₃) as a vector of ℚ⁶.
    pub fn expand_vector(&self, z: &[QuadExt]) -> Vec<Rational> {
        z.iter().flat_map(|x| [x.re.clone(), x.im.clone()]).collect()
    }
}

/// Q(v, w) = Tr_{𝔽/ℚ}(κ√−d·w̄ᵀHv) with H = antidiag(−1, 1, −1) and κ = 1/(2d),
/// written out on ℚ⁶: Q(e_i, f_j) = H_ji = −Q(f_i, e_j), all other pairings 0.
pub fn carayol_qform(disc: u64) -> CarayolData {
    let h = [[0, 0, -1], [0, 1, 0], [-1, 0, 0]];
    let q = Mat::from_fn(6, 6, (), |r, c| {
        let (i, j) = (r / 2, c / 2);
        match (r % 2, c % 2) {
            (0, 1) => rat(h[j][i]),
            (1, 0) => rat(-h[j][i]),
            _ => Rational::zero(),
        }
    });
    let d = rat(disc as i64);
    let j = Mat::from_fn(6, 6, (), |r, c| {
        if r / 2 != c / 2 {
            return Rational::zero();
        }
        match (r % 2, c % 2) {
            (1, 0) => rat(1),
            (0, 1) => -d.clone(),
            _ => Rational::zero(),
        }
    });
    CarayolData { disc, j, q }
}

/// su(2,1) as an 8-dimensional ℚ-algebra: X commuting with J, preserving Q,
/// with trace zero over ℚ(√−d) (tr X = tr JX = 0).
pub fn su21_qform(disc: u64, sign_b: i32) -> Result<(MatrixLieAlgebra, CarayolData)> {
    if !crate::scalars::is_squarefree(disc) {
        return Err(Error::Domain(format!("discriminant {disc} is not square-free")));
    }
    let data = carayol_qform(disc);
    let basis = linear_subalgebra(6, |x| {
        let mut v = compat(x, &data.q);
        v.extend(x.mul(&data.j).sub(&data.j.mul(x)).entries().iter().cloned());
        v.push(x.trace());
        v.push(data.j.mul(x).trace());
        v
    });
    let alg = MatrixLieAlgebra::new(basis, data.q.clone(), 3, sign_b)?;
    Ok((alg, data))
}
