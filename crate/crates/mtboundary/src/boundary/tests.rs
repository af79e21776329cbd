use super::*;
use crate::liealg::{sl2_standard, sp_or_so};
use crate::linalg::Mat;

#[test]
fn sl2_regular_nilpotent() {
    let g = sl2_standard();
    let nm = g.basis_element(2).mat;
    let cone = validate_cone(&g, &[nm], 1).unwrap();
    assert_eq!(cone.rank(), 1);
    let y = g.basis_element(0);
    let data = boundary_data(&g, &cone, &y).unwrap();
    assert_eq!(data.z_sigma.dim(), 1);
    assert_eq!(data.m_sigma, data.span_sigma);
    assert!(data.g_sigma.is_zero());
}

#[test]
fn non_commuting_cone_names_pair() {
    let g = sl2_standard();
    let e = validate_cone(&g, &[g.basis_element(1).mat, g.basis_element(2).mat], 1).unwrap_err();
    assert!(e.to_string().contains("generators 0 and 1"), "{e}");
}

#[test]
fn dependent_and_non_nilpotent_generators() {
    let g = sl2_standard();
    let n = g.basis_element(2).mat;
    assert!(validate_cone(&g, &[n.clone(), n.scale(&rat(2))], 1).is_err());
    assert!(validate_cone(&g, &[g.basis_element(0).mat], 1).is_err());
    let q = Mat::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
    let sp4 = sp_or_so(q, 1, -1).unwrap();
    assert!(validate_cone(&sp4, &[Mat::identity(4, ())], 1).is_err());
}

#[test]
fn closure_of_zero_is_zero() {
    let g = sl2_standard();
    let s = g_closure(&g, &Subspace::full(3, ()), &[rat(0), rat(0), rat(0)]).unwrap();
    assert!(s.is_zero());
    let t = g_closure(&g, &Subspace::full(3, ()), &[rat(0), rat(1), rat(0)]).unwrap();
    assert!(t.is_full());
    let u = Subspace::from_vectors(3, vec![vec![rat(0), rat(0), rat(1)]], ());
    assert!(g_closure(&g, &u, &[rat(1), rat(0), rat(0)]).is_err());
}
