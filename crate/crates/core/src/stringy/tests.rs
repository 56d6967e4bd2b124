use proptest::prelude::*;

use super::*;
use crate::lattice::point;
use crate::polytope::{cube, crosspolytope, unimodular_simplex, PointMode};

fn up(c: &[i64]) -> UniPoly {
    UniPoly::from_i64(c)
}

fn two_simplex(d: usize) -> LatticePolytope {
    unimodular_simplex(d).dilate(&Int::from(2))
}

/// `h*` read off the Ehrhart series: `(1 − t)^{n+1} Σ_k L(k) t^k` truncated
/// at degree `n`.
fn hstar_by_series(p: &LatticePolytope) -> UniPoly {
    let n = p.dim() as usize;
    let counts = p.ehrhart_counts(n, Cap::default()).unwrap();
    let series = UniPoly::new(counts);
    (&series * &UniPoly::from_i64(&[1, -1]).pow(n + 1)).truncate(n + 1)
}

fn polygon_interior(p: &LatticePolytope) -> i64 {
    p.interior_points().unwrap().len() as i64
}

fn reflexive_3d() -> Vec<LatticePolytope> {
    vec![
        cube(3, -1, 1),
        crosspolytope(3),
        LatticePolytope::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]),
        // prism over a reflexive triangle
        LatticePolytope::from_i64(&[
            &[1, 0, 1],
            &[0, 1, 1],
            &[-1, -1, 1],
            &[1, 0, -1],
            &[0, 1, -1],
            &[-1, -1, -1],
        ]),
        // a reflexive simplex of volume 6
        LatticePolytope::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -3]]),
    ]
}

#[test]
fn hstar_examples() {
    for d in 0..=4 {
        assert_eq!(hstar(&unimodular_simplex(d)).unwrap(), UniPoly::one());
    }
    assert_eq!(hstar(&cube(2, -1, 1)).unwrap(), up(&[1, 6, 1]));
    let c3 = hstar(&cube(3, 0, 1)).unwrap();
    assert_eq!(c3, up(&[1, 4, 1]));
    assert!(crate::gorenstein::hibi_symmetric(&c3, 3, &Int::from(2)));
    assert!(!crate::gorenstein::hibi_symmetric(&c3, 3, &Int::from(1)));
}

#[test]
fn hstar_of_point() {
    let p = LatticePolytope::from_i64(&[&[3, 4]]);
    assert_eq!(hstar(&p).unwrap(), UniPoly::one());
}

#[test]
fn g_h_examples() {
    let s = unimodular_simplex(3);
    let fl = s.face_lattice();
    for lo in 0..fl.len() {
        for hi in fl.interval(lo, fl.top()) {
            assert_eq!(g_and_h(fl, lo, hi).0, UniPoly::one());
        }
    }
    for k in 3..=8usize {
        // regular-ish k-gon: points on a convex curve
        let pts: Vec<Point> = (0..k as i64).map(|i| point(&[i, i * i])).collect();
        let p = LatticePolytope::new(&pts);
        assert_eq!(p.num_vertices(), k);
        let fl = p.face_lattice();
        let (g, _) = g_and_h(fl, fl.bottom(), fl.top());
        assert_eq!(g, up(&[1, k as i64 - 3]));
    }
    let seg = LatticePolytope::from_i64(&[&[0], &[3]]);
    let fl = seg.face_lattice();
    let (g, h) = g_and_h(fl, fl.bottom(), fl.top());
    assert_eq!(g, UniPoly::one());
    assert_eq!(h, up(&[1, 1]));
}

#[test]
fn stilde_examples() {
    assert_eq!(stilde(&unimodular_simplex(3)).unwrap(), UniPoly::zero());
    assert_eq!(stilde(&cube(2, -1, 1)).unwrap(), up(&[0, 1, 1]));
    for r in 1..=3usize {
        let p = two_simplex(2 * r - 1);
        let mut expected = vec![0; r + 1];
        expected[r] = 1;
        assert_eq!(stilde(&p).unwrap(), up(&expected), "r = {r}");
        assert_eq!(stilde_simplex(&p), up(&expected));
    }
    let point = LatticePolytope::from_i64(&[&[0, 0]]);
    assert_eq!(stilde(&point).unwrap(), UniPoly::zero());
}

#[test]
fn stilde_simplex_examples() {
    assert_eq!(stilde_simplex(&two_simplex(3)), up(&[0, 0, 1]));
    for d in 1..=4 {
        assert_eq!(stilde_simplex(&unimodular_simplex(d)), UniPoly::zero());
    }
    // the reflexive triangle Conv(e1, e2, −e1−e2)
    let t = LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]);
    assert_eq!(stilde_simplex(&t), up(&[0, 1, 1]));
    assert_eq!(hstar_simplex(&t), hstar(&t).unwrap());
}

#[test]
fn reflexive_polygons_in_square() {
    let boundary = [
        [-1, -1], [0, -1], [1, -1], [1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0],
    ];
    let mut seen = 0;
    for mask in 1u32..(1 << 8) {
        let pts: Vec<Point> = (0..8)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| point(&boundary[i]))
            .collect();
        let p = LatticePolytope::new(&pts);
        if p.dim() != 2 || p.interior_points().unwrap() != vec![point(&[0, 0])] {
            continue;
        }
        if p.reflexive_center().is_none() {
            continue;
        }
        seen += 1;
        assert_eq!(stilde(&p).unwrap(), up(&[0, 1, 1]));
    }
    assert!(seen > 0);
}

#[test]
fn b_poly_examples() {
    let seg = LatticePolytope::from_i64(&[&[0], &[1]]);
    let fl = seg.face_lattice();
    assert_eq!(b_poly(fl, 0, 0), LaurentPoly2::one());
    let expected = LaurentPoly2::from_terms(&[(2, 0, 1), (1, 0, -2), (0, 0, 1)]);
    assert_eq!(b_poly(fl, fl.bottom(), fl.top()), expected);
}

#[test]
fn b_poly_at_u_one_is_kronecker_delta() {
    for p in [cube(3, 0, 1), crosspolytope(3), two_simplex(3)] {
        let fl = p.face_lattice();
        let table = GhTable::new(fl);
        for lo in 0..fl.len() {
            for hi in fl.interval(lo, fl.top()) {
                let b = table.b_poly(lo, hi).at_u_one();
                if lo == hi {
                    assert_eq!(b, LaurentPoly2::one());
                } else {
                    assert!(b.is_zero(), "interval {lo}..{hi}");
                }
            }
        }
    }
}

#[test]
fn est_of_doubled_simplices_is_two() {
    for r in 1..=3usize {
        let e = est(&two_simplex(2 * r - 1)).unwrap();
        assert_eq!(e.poly, LaurentPoly2::constant(Int::from(2)), "r = {r}");
        assert_eq!(e.cy_dim, 0);
    }
}

#[test]
fn est_of_pyramids_vanishes() {
    let pyramids = [
        unimodular_simplex(2),
        unimodular_simplex(3),
        LatticePolytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]),
    ];
    for p in &pyramids {
        assert!(p.is_lattice_pyramid().is_some());
        let e = est(p).unwrap();
        assert!(e.poly.is_zero(), "{p:?}");
    }
}

#[test]
fn k3_value_is_24() {
    for p in reflexive_3d() {
        assert!(p.is_reflexive(), "{p:?}");
        let s = est_specializations(&p, Cap::default()).unwrap();
        assert_eq!(s.est_at_11, Int::from(24), "{p:?}");
        assert_eq!(s.volume_route, Int::from(24));
        assert!(s.agree_u1 && s.agree_11);
    }
}

#[test]
fn reflexive_polygon_gives_elliptic_form() {
    let p = cube(2, -1, 1);
    let d = conjecture_diagnostics(&p, Cap::default()).unwrap();
    assert_eq!(d.cy_dim, 1);
    assert_eq!(d.closed_form, Some(true));
    assert_eq!(d.at_one_one, Int::zero());
    assert!(d.all_pass(), "{d:?}");
}

#[test]
fn diagnostics_on_doubled_simplex() {
    let d = conjecture_diagnostics(&two_simplex(3), Cap::default()).unwrap();
    assert_eq!(d.cy_dim, 0);
    assert_eq!(d.est.poly, LaurentPoly2::constant(Int::from(2)));
    assert!(d.all_pass());
}

#[test]
fn diagnostics_on_k3_polytopes() {
    for p in reflexive_3d() {
        let d = conjecture_diagnostics(&p, Cap::default()).unwrap();
        assert_eq!(d.cy_dim, 2);
        assert_eq!(d.divisible_by_24, Some(true));
        assert!(d.all_pass(), "{p:?}: {d:?}");
    }
}

#[test]
fn diagnostics_on_cube_index_two() {
    for dim in 1..=3 {
        let d = conjecture_diagnostics(&cube(dim, 0, 1), Cap::default()).unwrap();
        assert_eq!(d.cy_dim, dim as i64 + 1 - 4);
        assert!(d.all_pass(), "dim {dim}: {d:?}");
    }
}

#[test]
fn weighted_examples() {
    let r = weighted_simplex(&WeightSystem::from_i64(5, &[1, 1, 1, 1, 1]).unwrap(), Cap::default()).unwrap();
    assert_eq!(r.index, Some(Int::one()));
    assert!(r.index_consistent);
    assert_eq!(r.simplex.dim(), 4);
    assert_eq!(r.s, 5);
    assert_eq!(r.bound_holds, Some(true));
    let r = weighted_simplex(&WeightSystem::from_i64(2, &[1, 1]).unwrap(), Cap::default()).unwrap();
    assert_eq!(r.index, Some(Int::one()));
    assert_eq!(r.simplex.dim(), 1);
    // k = (1, 2, 2): Σ 1/k_i = 2
    let r = weighted_simplex(&WeightSystem::from_i64(2, &[2, 1, 1]).unwrap(), Cap::default()).unwrap();
    assert!(r.is_pyramid);
    assert_eq!(r.index, Some(Int::from(2)));
    assert_eq!(r.est_vanishes, Some(true));
    // k = (2, 4, 4): Σ = 1
    let r = weighted_simplex(&WeightSystem::from_i64(4, &[2, 1, 1]).unwrap(), Cap::default()).unwrap();
    assert_eq!(r.index, Some(Int::one()));
    assert!(r.index_consistent);
    // not Gorenstein: k = (2, 3, 3) has Σ = 7/6
    let r = weighted_simplex(&WeightSystem::from_i64(6, &[3, 2, 2]).unwrap(), Cap::default()).unwrap();
    assert_eq!(r.index, None);
    assert!(r.index_consistent);
    assert!(WeightSystem::from_i64(5, &[2, 1]).is_err());
}

fn small_points(d: usize, n: std::ops::Range<usize>, r: i64) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(prop::collection::vec(-r..=r, d), n)
        .prop_map(|v| v.into_iter().map(|p| p.into_iter().map(Int::from).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn hstar_routes_agree(vs in small_points(3, 4..8, 2)) {
        let p = LatticePolytope::new(&vs);
        let h = hstar(&p).unwrap();
        prop_assert_eq!(&h, &hstar_by_series(&p));
        prop_assert!(h.is_nonnegative());
        prop_assert!(h.coeff(0).is_one());
        if p.is_simplex() {
            prop_assert_eq!(&h, &hstar_simplex(&p));
        }
    }

    #[test]
    fn stilde_simplex_agrees(vs in small_points(3, 4..5, 2)) {
        let p = LatticePolytope::new(&vs);
        prop_assume!(p.is_simplex() && p.dim() >= 1);
        prop_assert_eq!(stilde(&p).unwrap(), stilde_simplex(&p));
    }

    #[test]
    fn stilde_reciprocity_and_sign(vs in small_points(3, 4..8, 2)) {
        let p = LatticePolytope::new(&vs);
        let s = stilde(&p).unwrap();
        prop_assert!(s.is_nonnegative());
        prop_assert_eq!(s.reverse(p.dim() as usize + 1), s.clone());
        let lstar = p.lattice_points(PointMode::Interior, Cap::default()).unwrap().len();
        if lstar > 0 {
            let d = p.dim() as usize;
            prop_assert_eq!(s.coeff(d), Int::from(lstar));
            prop_assert_eq!(hstar(&p).unwrap().coeff(d), Int::from(lstar));
        }
    }

    #[test]
    fn stilde_of_polygon(vs in small_points(2, 3..7, 3)) {
        let p = LatticePolytope::new(&vs);
        prop_assume!(p.is_full_dimensional());
        let l = polygon_interior(&p);
        prop_assert_eq!(stilde(&p).unwrap(), up(&[0, l, l]));
    }

    #[test]
    fn stilde_of_pyramid_vanishes(vs in small_points(2, 1..6, 2)) {
        let base: Vec<Point> = vs.iter().map(|v| { let mut w = v.clone(); w.push(Int::zero()); w }).collect();
        let mut pts = base;
        pts.push(point(&[0, 0, 1]));
        let p = LatticePolytope::new(&pts);
        prop_assert!(p.is_lattice_pyramid().is_some());
        prop_assert!(stilde(&p).unwrap().is_zero());
    }
}
