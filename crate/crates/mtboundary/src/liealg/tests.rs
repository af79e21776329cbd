use super::*;
use crate::linalg::jordan_type;
use crate::scalars::{rat, QuadExt};
use proptest::prelude::*;

fn sp4_q() -> Mat<Rational> {
    Mat::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]])
}

fn so41_q() -> Mat<Rational> {
    Mat::from_fn(5, 5, (), |i, j| if i != j { rat(0) } else if i == 0 { rat(1) } else { rat(-1) })
}

fn g2_n() -> Mat<Rational> {
    let mut p = [0i64; 14];
    p[6] = 1;
    p[1] = 1;
    g2_element(&p)
}

#[test]
fn sp4_validates_with_dim_10() {
    let g = sp_or_so(sp4_q(), 1, -1).unwrap();
    let r = g.validate();
    assert_eq!(r.dim, 10);
    assert!(r.passed(), "{r:?}");
}

#[test]
fn so41_validates_with_dim_10() {
    let g = sp_or_so(so41_q(), 4, -1).unwrap();
    assert_eq!(g.dim(), 10);
    assert!(g.validate().passed());
}

#[test]
fn g2_validates_and_contains_n() {
    let g = g2(-1).unwrap();
    let r = g.validate();
    assert_eq!(r.dim, 14);
    assert!(r.passed(), "{r:?}");
    let n = g.element_from_mat(&g2_n()).unwrap();
    assert!(n.mat.mul(&n.mat).is_zero());
    assert!(jordan_type(&n.mat).unwrap().iter().all(|&k| k <= 2));
    // level-2 adjoint action
    assert!(g.ad(&n).pow(3).is_zero());
    assert!(!g.ad(&n).pow(2).is_zero());
}

#[test]
fn su21_has_dim_8() {
    let (g, data) = su21_qform(1, -1).unwrap();
    assert_eq!(g.dim(), 8);
    assert!(g.validate().passed());
    assert_eq!(data.q.transpose(), data.q.neg());
    let s = QuadExt::sqrt_neg_d(1);
    let zero = QuadExt::zero_in(1);
    let one = QuadExt::one_in(1);
    let n1 = Mat::from_rows(
        vec![
            vec![zero.clone(), one.clone(), s.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
            vec![zero.clone(), zero.clone(), zero.clone()],
        ],
        3,
        1,
    )
    .unwrap();
    assert!(g.element_from_mat(&data.expand(&n1)).is_ok());
    let mut n2 = Mat::zeros(3, 3, 1);
    n2.set(0, 2, s);
    assert!(g.element_from_mat(&data.expand(&n2)).is_ok());
}

#[test]
fn su21_for_other_discriminants() {
    for d in [2, 3, 7] {
        let (g, _) = su21_qform(d, -1).unwrap();
        assert_eq!(g.dim(), 8);
        assert!(g.validate().passed());
    }
    assert!(su21_qform(4, -1).is_err());
}

#[test]
fn expand_is_multiplicative() {
    let data = carayol_qform(3);
    let a = Mat::from_fn(3, 3, 3, |i, j| QuadExt::from_ints(i as i64 - j as i64, (i * j) as i64 + 1, 3));
    let b = Mat::from_fn(3, 3, 3, |i, j| QuadExt::from_ints(2 - i as i64, j as i64, 3));
    assert_eq!(data.expand(&a.mul(&b)), data.expand(&a).mul(&data.expand(&b)));
    let s = Mat::from_fn(3, 3, 3, |i, j| if i == j { QuadExt::sqrt_neg_d(3) } else { QuadExt::zero_in(3) });
    assert_eq!(data.expand(&s), data.j);
}

#[test]
fn sl2_adjoint_of_y() {
    let g = sl2_standard();
    let y = g.basis_element(0);
    let expect = Mat::from_i64(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]]);
    assert_eq!(g.ad(&y), expect);
    assert!(g.ad(&g.zero_element::<Rational>(())).is_zero());
}

#[test]
fn sl2_centralizer_of_n_minus() {
    let g = sl2_standard();
    let nm = g.basis_element(2);
    let z = g.centralizer(&[nm.coords.clone()], ());
    assert_eq!(z, Subspace::from_vectors(3, vec![nm.coords], ()));
    let all = g.centralizer(&[vec![rat(0); 3]], ());
    assert!(all.is_full());
}

#[test]
fn perturbed_basis_reports_offending_pair() {
    let mut basis = sl2_standard().basis().to_vec();
    basis[1] = Mat::from_i64(&[&[0, 1], &[1, 0]]).add(&Mat::from_i64(&[&[0, 0], &[0, 0]]));
    basis[2] = Mat::from_i64(&[&[0, 0], &[1, 1]]);
    let g = MatrixLieAlgebra::new(basis, Mat::from_i64(&[&[0, 1], &[-1, 0]]), 1, -1).unwrap();
    let r = g.validate();
    assert!(!r.passed());
    assert!(r.closure_failures.contains(&(1, 2)));
    assert!(!r.q_compatibility_failures.is_empty());
}

#[test]
fn dependent_basis_rejected() {
    let y = Mat::from_i64(&[&[1, 0], &[0, -1]]);
    let r = MatrixLieAlgebra::new(vec![y.clone(), y.scale(&rat(2))], Mat::from_i64(&[&[0, 1], &[-1, 0]]), 1, -1);
    assert!(r.is_err());
}

#[test]
fn structure_probes() {
    let g = sl2_standard();
    assert_eq!(g.structure_probe(&Subspace::zero(3, ())).unwrap().kind, StructureKind::Abelian);
    let p = g.structure_probe(&Subspace::full(3, ())).unwrap();
    assert_eq!(p.kind, StructureKind::Sl2Split);
    assert_eq!(p.killing_signature, (2, 1, 0));
    // the Borel is closed but not sl2
    let borel = Subspace::from_vectors(3, vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]], ());
    assert_eq!(g.structure_probe(&borel).unwrap().kind, StructureKind::Other);
    let bad = Subspace::from_vectors(3, vec![vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]], ());
    assert!(g.structure_probe(&bad).is_err());
}

#[test]
fn compact_form_detected() {
    // so(3) inside so(3) with the definite form
    let q = Mat::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let g = sp_or_so(q, 0, -1).unwrap();
    let p = g.structure_probe(&Subspace::full(3, ())).unwrap();
    assert_eq!(p.kind, StructureKind::Sl2Compact);
}

#[test]
fn not_in_algebra_is_an_error() {
    let g = sl2_standard();
    assert!(g.element_from_mat(&Mat::<Rational>::identity(2, ())).is_err());
}

fn small_coords(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..4, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ad_is_a_homomorphism(x in small_coords(10), y in small_coords(10)) {
        let g = sp_or_so(sp4_q(), 1, -1).unwrap();
        let x: Vec<Rational> = x.into_iter().map(rat).collect();
        let y: Vec<Rational> = y.into_iter().map(rat).collect();
        let xy = g.bracket_coords(&x, &y, ());
        prop_assert_eq!(g.ad_coords(&xy, ()), g.ad_coords(&x, ()).commutator(&g.ad_coords(&y, ())));
        let ex = g.element(x.clone(), ());
        let ey = g.element(y.clone(), ());
        prop_assert_eq!(g.bracket(&ex, &ey).mat, ex.mat.commutator(&ey.mat));
    }

    #[test]
    fn b_is_invariant(x in small_coords(14), y in small_coords(14), z in small_coords(14)) {
        let g = g2(-1).unwrap();
        let x: Vec<Rational> = x.into_iter().map(rat).collect();
        let y: Vec<Rational> = y.into_iter().map(rat).collect();
        let z: Vec<Rational> = z.into_iter().map(rat).collect();
        let lhs = g.b_form(&g.bracket_coords(&x, &y, ()), &z, ()) + g.b_form(&y, &g.bracket_coords(&x, &z, ()), ());
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn centralizer_contains_element(x in small_coords(10)) {
        let g = sp_or_so(so41_q(), 4, -1).unwrap();
        let x: Vec<Rational> = x.into_iter().map(rat).collect();
        let z = g.centralizer(&[x.clone()], ());
        prop_assert!(z.contains_vector(&x));
    }
}
