//! g- and h-polynomials of intervals of a face lattice, and B-polynomials.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::One;

use super::{LaurentPoly2, UniPoly};
use crate::lattice::Int;
use crate::polytope::FaceLattice;

/// Memoized g/h evaluation on the intervals of one face lattice. The flag in
/// the key selects the order-dual interval.
pub struct GhTable<'a> {
    lattice: &'a FaceLattice,
    memo: Mutex<HashMap<(usize, usize, bool), (UniPoly, UniPoly)>>,
}

impl<'a> GhTable<'a> {
    pub fn new(lattice: &'a FaceLattice) -> Self {
        Self {
            lattice,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn lattice(&self) -> &FaceLattice {
        self.lattice
    }

    /// `(g, h)` of the interval `[lo, hi]`.
    pub fn g_h(&self, lo: usize, hi: usize) -> (UniPoly, UniPoly) {
        self.eval(lo, hi, false)
    }

    /// `g` of `[lo, hi]`.
    pub fn g(&self, lo: usize, hi: usize) -> UniPoly {
        self.eval(lo, hi, false).0
    }

    /// `g` of the order-dual of `[lo, hi]` (bottom `hi`, top `lo`).
    pub fn g_dual(&self, lo: usize, hi: usize) -> UniPoly {
        self.eval(lo, hi, true).0
    }

    fn eval(&self, lo: usize, hi: usize, dual: bool) -> (UniPoly, UniPoly) {
        if let Some(v) = self.memo.lock().unwrap().get(&(lo, hi, dual)) {
            return v.clone();
        }
        let l = self.lattice;
        let rank = l.rank(hi) - l.rank(lo);
        let result = if rank == 0 {
            (UniPoly::one(), UniPoly::one())
        } else {
            let tm1 = UniPoly::t_minus_one();
            let mut h = UniPoly::zero();
            for z in l.interval(lo, hi) {
                // z runs over the elements above the bottom of the poset
                let (rk, g) = if dual {
                    if z == hi {
                        continue;
                    }
                    (l.rank(hi) - l.rank(z), self.eval(lo, z, true).0)
                } else {
                    if z == lo {
                        continue;
                    }
                    (l.rank(z) - l.rank(lo), self.eval(z, hi, false).0)
                };
                h = &h + &(&tm1.pow(rk - 1) * &g);
            }
            let one_minus_t = UniPoly::from_i64(&[1, -1]);
            let g = (&one_minus_t * &h).truncate(rank.div_ceil(2));
            (g, h)
        };
        self.memo
            .lock()
            .unwrap()
            .insert((lo, hi, dual), result.clone());
        result
    }

    /// `B([lo, hi]; u, v) = Σ_{lo ≤ z ≤ hi} (−u)^{rk hi − rk z} g_{[z,hi]*}(u⁻¹v) g_{[lo,z]}(uv)`.
    pub fn b_poly(&self, lo: usize, hi: usize) -> LaurentPoly2 {
        let l = self.lattice;
        let mut out = LaurentPoly2::zero();
        for z in l.interval(lo, hi) {
            let e = (l.rank(hi) - l.rank(z)) as i64;
            let sign = if e % 2 == 0 { Int::one() } else { -Int::one() };
            let a = self.g_dual(z, hi).substitute(-1, 1);
            let b = self.g(lo, z).substitute(1, 1);
            out = &out + &(&a * &b).shift(e, 0).scale(&sign);
        }
        out
    }
}
