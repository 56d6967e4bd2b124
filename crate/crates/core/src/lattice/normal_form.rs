use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Int, IntMatrix};

/// Row-style Hermite normal form. Returns `(H, U)` with `H = U·A`, `U`
/// unimodular, pivots positive and entries above each pivot in `[0, pivot)`.
/// Zero rows of `H` come last.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut p = 0;
    for col in 0..n {
        if p == m {
            break;
        }
        loop {
            let best = (p..m)
                .filter(|&r| !h.get(r, col).is_zero())
                .min_by(|&x, &y| h.get(x, col).abs().cmp(&h.get(y, col).abs()));
            let Some(best) = best else { break };
            h.swap_rows(p, best);
            u.swap_rows(p, best);
            let mut clean = true;
            for r in p + 1..m {
                if h.get(r, col).is_zero() {
                    continue;
                }
                let q = -h.get(r, col).div_floor(h.get(p, col));
                h.add_row_multiple(r, p, &q);
                u.add_row_multiple(r, p, &q);
                if !h.get(r, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(p, col).is_zero() {
            continue;
        }
        if h.get(p, col).is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for r in 0..p {
            let q = -h.get(r, col).div_floor(h.get(p, col));
            h.add_row_multiple(r, p, &q);
            u.add_row_multiple(r, p, &q);
        }
        p += 1;
    }
    (h, u)
}

/// Smith normal form. Returns `(S, U, V)` with `S = U·A·V` diagonal,
/// nonnegative, and each diagonal entry dividing the next.
pub fn snf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = s.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap_rows(t, bi);
        u.swap_rows(t, bi);
        s.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_floor(s.get(t, t));
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_floor(s.get(t, t));
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                // a smaller remainder appeared in row or column t: make it the pivot
                let mut bi = t;
                let mut bj = t;
                for i in t..m {
                    let x = s.get(i, t);
                    if !x.is_zero() && x.abs() < s.get(bi, bj).abs() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t..n {
                    let x = s.get(t, j);
                    if !x.is_zero() && x.abs() < s.get(bi, bj).abs() {
                        (bi, bj) = (t, j);
                    }
                }
                s.swap_rows(t, bi);
                u.swap_rows(t, bi);
                s.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            let pivot = s.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = Int::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Basis (as rows, in Hermite normal form) of the lattice `{x ∈ ℤⁿ : A·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    let (h, u) = hnf(&a.transpose());
    let rank = (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
    let basis = u.select_rows(rank..n);
    let (hb, _) = hnf(&basis);
    hb
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn is_hermite(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            let lead = (0..h.cols()).find(|&j| !h.get(i, j).is_zero());
            match lead {
                None => seen_zero = true,
                Some(j) => {
                    if seen_zero || last_pivot.is_some_and(|p| j <= p) {
                        return false;
                    }
                    let piv = h.get(i, j);
                    if !piv.is_positive() {
                        return false;
                    }
                    for r in 0..i {
                        let x = h.get(r, j);
                        if x.is_negative() || x >= piv {
                            return false;
                        }
                    }
                    last_pivot = Some(j);
                }
            }
        }
        true
    }

    fn is_smith(s: &IntMatrix) -> bool {
        let k = s.rows().min(s.cols());
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j && !s.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        for t in 0..k {
            if s.get(t, t).is_negative() {
                return false;
            }
            if t + 1 < k {
                let a = s.get(t, t);
                let b = s.get(t + 1, t + 1);
                if a.is_zero() && !b.is_zero() {
                    return false;
                }
                if !a.is_zero() && !b.is_multiple_of(a) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn hnf_identity() {
        let i = IntMatrix::identity(2);
        assert_eq!(hnf(&i), (i.clone(), i));
    }

    #[test]
    fn hnf_swap() {
        let a = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, a);
    }

    #[test]
    fn hnf_upper_triangular() {
        let a = IntMatrix::from_i64(&[&[2, 2], &[0, 2]]);
        let (h, u) = hnf(&a);
        assert_eq!(u.mul(&a), h);
        assert!(u.det().abs().is_one());
        assert!(is_hermite(&h));
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn snf_examples() {
        let i = IntMatrix::identity(3);
        let (s, u, v) = snf(&i);
        assert_eq!((s, u, v), (i.clone(), i.clone(), i));

        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let (s, u, v) = snf(&a);
        assert_eq!(s, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&a).mul(&v), s);

        let z = IntMatrix::zeros(2, 3);
        let (s, _, _) = snf(&z);
        assert!(s.is_zero());
    }

    #[test]
    fn kernel_of_row() {
        let k = integer_kernel(&IntMatrix::from_i64(&[&[1, 1, 1]]));
        assert_eq!(k.rows(), 2);
        for i in 0..2 {
            let s: Int = k.row(i).iter().sum();
            assert!(s.is_zero());
        }
        // saturated: index of the kernel lattice is 1
        let (s, _, _) = snf(&k);
        assert!(s.get(0, 0).is_one() && s.get(1, 1).is_one());
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..7, r * c).prop_map(move |v| {
                let rows: Vec<&[i64]> = v.chunks(c).collect();
                IntMatrix::from_i64(&rows)
            })
        })
    }

    proptest! {
        #[test]
        fn hnf_reassembles(a in small_matrix()) {
            let (h, u) = hnf(&a);
            prop_assert_eq!(u.mul(&a), h.clone());
            prop_assert!(u.det().abs().is_one());
            prop_assert!(is_hermite(&h));
        }

        #[test]
        fn snf_reassembles(a in small_matrix()) {
            let (s, u, v) = snf(&a);
            prop_assert_eq!(u.mul(&a).mul(&v), s.clone());
            prop_assert!(u.det().abs().is_one());
            prop_assert!(v.det().abs().is_one());
            prop_assert!(is_smith(&s));
        }

        #[test]
        fn kernel_is_annihilated(a in small_matrix()) {
            let k = integer_kernel(&a);
            prop_assert_eq!(k.rows() + a.rank(), a.cols());
            for i in 0..k.rows() {
                prop_assert!(a.apply(k.row(i)).iter().all(Zero::is_zero));
            }
        }
    }
}
