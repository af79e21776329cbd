use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use super::*;
use crate::scalars::{rat, ratio, QuadExt, Rational, Scalar};

fn qm(rows: &[&[i64]]) -> Mat<Rational> {
    Mat::from_i64(rows)
}

/// Plain Gauss–Jordan with field division, no fraction-free tricks.
fn naive_rref(m: &Mat<Rational>) -> Vec<Vec<Rational>> {
    let mut a = m.to_rows();
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].vanishes()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = x.clone() * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].vanishes() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] = a[i][j].clone() - t;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..7, 1i64..4).prop_map(|(n, d)| ratio(n, d))
}

fn rat_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat<Rational>> {
    proptest::collection::vec(small_rat(), rows * cols).prop_map(move |v| Mat::from_fn(rows, cols, (), |i, j| v[i * cols + j].clone()))
}

fn sparse_rat_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat<Rational>> {
    proptest::collection::vec((small_rat(), 0u8..3), rows * cols).prop_map(move |v| {
        Mat::from_fn(rows, cols, (), |i, j| {
            let (x, keep) = &v[i * cols + j];
            if *keep == 0 {
                Rational::zero()
            } else {
                x.clone()
            }
        })
    })
}

fn subspace6() -> impl Strategy<Value = Subspace<Rational>> {
    (0usize..5).prop_flat_map(|k| sparse_rat_matrix(k, 6)).prop_map(|m| Subspace::from_vectors(6, m.to_rows(), ()))
}

#[test]
fn kernel_image_of_zero_and_identity() {
    let z = Mat::<Rational>::zeros(4, 4, ());
    let (k, i) = z.kernel_image();
    assert!(k.is_full() && i.is_zero());
    let id = Mat::<Rational>::identity(4, ());
    let (k, i) = id.kernel_image();
    assert!(k.is_zero() && i.is_full());
}

#[test]
fn kernel_image_of_unit_in_position_three_one() {
    let n1 = qm(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0]]);
    let (k, i) = n1.kernel_image();
    assert_eq!((k.dim(), i.dim()), (3, 1));
    assert!(i.contains_vector(&[rat(0), rat(0), rat(1), rat(0)]));
}

#[test]
fn lattice_basics() {
    let u = Subspace::from_vectors(3, vec![vec![rat(1), rat(2), rat(0)], vec![rat(0), rat(1), rat(1)]], ());
    assert_eq!(u.intersect(&u), u);
    assert!(u.intersect(&Subspace::zero(3, ())).is_zero());
    assert!(u.sum(&Subspace::full(3, ())).is_full());
    let line = Subspace::from_vectors(3, vec![vec![rat(1), rat(3), rat(1)]], ());
    assert!(u.contains(&line));
    assert_eq!(u.quotient_dim(&line), 1);
}

#[test]
fn echelon_normal_form_is_canonical() {
    let a = Subspace::from_vectors(3, vec![vec![rat(2), rat(4), rat(6)], vec![rat(0), rat(1), rat(1)]], ());
    let b = Subspace::from_vectors(3, vec![vec![rat(1), rat(3), rat(4)], vec![rat(1), rat(1), rat(2)]], ());
    assert_eq!(a, b);
    assert_eq!(a.basis()[0], vec![rat(1), rat(0), rat(1)]);
}

#[test]
fn jordan_types() {
    assert_eq!(jordan_type(&Mat::<Rational>::zeros(4, 4, ())).unwrap(), vec![1, 1, 1, 1]);
    assert_eq!(jordan_type(&qm(&[&[0, 0], &[1, 0]])).unwrap(), vec![2]);
    assert!(matches!(jordan_type(&Mat::<Rational>::identity(2, ())), Err(crate::error::Error::NotNilpotent)));
}

#[test]
fn hermitian_examples() {
    let one = |a, b| QuadExt::from_ints(a, b, 1);
    assert!(hermitian_positive_definite(&Mat::<QuadExt>::identity(3, 1)).unwrap());
    let d = Mat::from_rows(vec![vec![one(1, 0), one(0, 0)], vec![one(0, 0), one(-1, 0)]], 2, 1).unwrap();
    assert!(!hermitian_positive_definite(&d).unwrap());
    let h = Mat::from_rows(vec![vec![one(2, 0), one(0, 1)], vec![one(0, -1), one(1, 0)]], 2, 1).unwrap();
    assert!(hermitian_positive_definite(&h).unwrap());
    let bad = Mat::from_rows(vec![vec![one(2, 0), one(0, 1)], vec![one(0, 1), one(1, 0)]], 2, 1).unwrap();
    assert!(hermitian_positive_definite(&bad).is_err());
}

#[test]
fn solve_examples() {
    let id = Mat::<Rational>::identity(3, ());
    let b = vec![rat(1), ratio(-2, 3), rat(5)];
    assert_eq!(id.solve(&b, None).unwrap(), b);
    let z = Mat::<Rational>::zeros(2, 2, ());
    assert!(z.solve(&[rat(1), rat(0)], None).is_none());
    // constrained: x ∈ span{(1,1)} with x₁ + x₂ = 4
    let a = qm(&[&[1, 1]]);
    let c = Subspace::from_vectors(2, vec![vec![rat(1), rat(1)]], ());
    assert_eq!(a.solve(&[rat(4)], Some(&c)).unwrap(), vec![rat(2), rat(2)]);
}

#[test]
fn inertia_examples() {
    assert_eq!(inertia(&qm(&[&[0, 1], &[1, 0]])).unwrap(), (1, 1, 0));
    assert_eq!(inertia(&qm(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -3]])).unwrap(), (1, 1, 1));
    assert_eq!(inertia(&qm(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap(), (1, 2, 0));
}

#[test]
fn exp_of_nilpotent() {
    let n = qm(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let e = n.exp_nilpotent().unwrap();
    assert_eq!(*e.get(0, 2), ratio(1, 2));
    assert_eq!(e.mul(&n.neg().exp_nilpotent().unwrap()), Mat::identity(3, ()));
}

#[test]
fn restriction_and_extension_of_scalars() {
    let d = 5;
    let v = vec![QuadExt::from_ints(1, 2, d), QuadExt::from_ints(0, 1, d)];
    let u = Subspace::from_vectors(2, vec![v], d);
    let r = u.restrict_scalars();
    assert_eq!(r.dim(), 2);
    assert_eq!(r.ambient(), 4);
    let w = Subspace::from_vectors(2, vec![vec![rat(1), rat(3)]], ());
    let ext = w.extend_scalars(d);
    assert!(ext.is_conj_stable());
    assert_eq!(ext.rational_points(), w);
    assert!(u.rational_points().is_zero());
}

#[test]
fn filtration_lookup_conventions() {
    let n = 3;
    let f2 = Subspace::from_vectors(n, vec![vec![rat(1), rat(0), rat(0)]], ());
    let f1 = Subspace::from_vectors(n, vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]], ());
    let f = Filtration::decreasing(n, (), BTreeMap::from([(2, f2.clone()), (1, f1.clone())])).unwrap();
    assert!(f.get(0).is_full());
    assert_eq!(f.get(1), f1);
    assert!(f.get(3).is_zero());
    let w = Filtration::increasing(n, (), BTreeMap::from([(0, f2.clone()), (2, Subspace::full(n, ()))])).unwrap();
    assert!(w.get(-1).is_zero());
    assert_eq!(w.get(1), f2);
    assert!(w.get(7).is_full());
    assert_eq!(w.graded_dim(2), 2);
    assert!(Filtration::decreasing(n, (), BTreeMap::from([(1, f2), (2, f1)])).is_err());
}

proptest! {
    #[test]
    fn rref_matches_naive_gauss_jordan(m in rat_matrix(4, 5)) {
        let (r, piv) = m.rref();
        let expect = naive_rref(&m);
        prop_assert_eq!(piv.len(), expect.len());
        for (i, row) in expect.iter().enumerate() {
            prop_assert_eq!(r.row(i), row.as_slice());
        }
    }

    #[test]
    fn rank_nullity(m in sparse_rat_matrix(4, 6)) {
        let (k, i) = m.kernel_image();
        prop_assert_eq!(k.dim() + i.dim(), 6);
        prop_assert_eq!(m.rank(), i.dim());
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.vanishes()));
        }
    }

    #[test]
    fn modular_dimension_law(u in subspace6(), v in subspace6(), w in subspace6()) {
        prop_assert_eq!(u.intersect(&v).dim() + u.sum(&v).dim(), u.dim() + v.dim());
        // modular law: if U ⊆ W then U + (V ∩ W) = (U + V) ∩ W
        let u2 = u.intersect(&w);
        prop_assert_eq!(u2.sum(&v.intersect(&w)), u2.sum(&v).intersect(&w));
    }

    #[test]
    fn normal_form_independent_of_spanning_set(m in sparse_rat_matrix(3, 5), g in rat_matrix(3, 3)) {
        let a = Subspace::from_vectors(5, m.to_rows(), ());
        let mixed = g.mul(&m);
        let b = Subspace::from_vectors(5, mixed.to_rows(), ());
        if g.det().vanishes() {
            prop_assert!(a.contains(&b));
        } else {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn jordan_partition_conjugate(m in sparse_rat_matrix(5, 5)) {
        // strictly lower triangular part is nilpotent
        let n = Mat::from_fn(5, 5, (), |i, j| if i > j { m.get(i, j).clone() } else { Rational::zero() });
        let parts = jordan_type(&n).unwrap();
        prop_assert_eq!(parts.iter().sum::<usize>(), 5);
        let mut prev = 0;
        for k in 1..=5 {
            let dk = n.pow(k).kernel().dim();
            let count = parts.iter().filter(|&&p| p >= k).count();
            prop_assert_eq!(dk - prev, count);
            prev = dk;
        }
    }

    #[test]
    fn solve_returns_solutions(m in sparse_rat_matrix(3, 4), x in proptest::collection::vec(small_rat(), 4)) {
        let b = m.mul_vec(&x);
        let y = m.solve(&b, None).expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn sylvester_agrees_with_vector_probe(a in rat_matrix(3, 3), shift in 0i64..6) {
        // H = AᵀA + (shift − 3)·I is symmetric; compare against v·Hv > 0 on probes
        let h = a.transpose().mul(&a).add(&Mat::identity(3, ()).scale(&rat(shift - 3)));
        let pd = hermitian_positive_definite(&h).unwrap();
        let probes: Vec<Vec<Rational>> = (0..40)
            .map(|s: i64| vec![rat(s % 5 - 2), rat((s / 5) % 3 - 1), rat(s % 7 - 3)])
            .filter(|v| v.iter().any(|x| !x.vanishes()))
            .collect();
        if pd {
            for v in &probes {
                let hv = h.mul_vec(v);
                let q: Rational = v.iter().zip(&hv).map(|(x, y)| x * y).sum();
                prop_assert!(q.is_positive());
            }
        }
        let (p, _, _) = inertia(&h).unwrap();
        prop_assert_eq!(pd, p == 3);
    }

    #[test]
    fn inverse_round_trip(m in rat_matrix(3, 3)) {
        match m.inverse() {
            Some(inv) => prop_assert_eq!(m.mul(&inv), Mat::identity(3, ())),
            None => prop_assert!(m.det().vanishes()),
        }
    }

    #[test]
    fn quad_intersection_dimension_law(
        a in proptest::collection::vec((-3i64..4, -3i64..4), 8),
        b in proptest::collection::vec((-3i64..4, -3i64..4), 8),
    ) {
        let mk = |v: &[(i64, i64)]| -> Subspace<QuadExt> {
            let vecs = v.chunks(4).map(|c| c.iter().map(|&(x, y)| QuadExt::from_ints(x, y, 2)).collect()).collect();
            Subspace::from_vectors(4, vecs, 2)
        };
        let (u, w) = (mk(&a), mk(&b));
        prop_assert_eq!(u.intersect(&w).dim() + u.sum(&w).dim(), u.dim() + w.dim());
        prop_assert_eq!(u.conj().conj(), u.clone());
        prop_assert_eq!(u.restrict_scalars().dim(), 2 * u.dim());
        let one = QuadExt::one_in(2);
        prop_assert!(one.is_unity());
    }
}

#[test]
fn bareiss_handles_large_entries() {
    // Hilbert-like matrix: ill-conditioned, still exact
    let n = 6;
    let h = Mat::from_fn(n, n, (), |i, j| Rational::new(One::one(), ((i + j + 1) as i64).into()));
    let inv = h.inverse().unwrap();
    assert_eq!(h.mul(&inv), Mat::identity(n, ()));
}
