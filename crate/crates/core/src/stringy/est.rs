use num_traits::{One, ToPrimitive, Zero};

use super::{sign, FaceData, LaurentPoly2};
use crate::error::{Cap, Result};
use crate::gorenstein::{dual_gorenstein, DualPair};
use crate::lattice::{Int, Rat};
use crate::par;
use crate::polytope::LatticePolytope;

/// The stringy E-function of a Gorenstein polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EstResult {
    pub poly: LaurentPoly2,
    pub index: Int,
    pub dim: usize,
    /// `dim + 1 − 2·index`.
    pub cy_dim: i64,
    pub is_polynomial: bool,
}

impl EstResult {
    /// `E(1, 1)`.
    pub fn at_one_one(&self) -> Int {
        self.poly.terms().map(|(_, _, c)| c.clone()).sum()
    }
}

pub fn est(p: &LatticePolytope) -> Result<EstResult> {
    est_capped(p, Cap::default())
}

/// `E_st(P; u, v) = (uv)^{−r} Σ_F (−u)^{dim F + 1} S̃(F, u⁻¹v) S̃(F*, uv)`.
/// Lower-dimensional inputs are taken in the chart of their affine hull.
pub fn est_capped(p: &LatticePolytope, cap: Cap) -> Result<EstResult> {
    let q = p.full_dimensional_copy();
    let pair = dual_gorenstein(&q)?;
    est_of_pair(&pair, cap)
}

pub(crate) fn est_of_pair(pair: &DualPair, cap: Cap) -> Result<EstResult> {
    let pd = FaceData::new(&pair.primal, cap)?;
    let dd = FaceData::new(&pair.dual, cap)?;
    let sp = pd.stilde_all();
    let sd = dd.stilde_all();
    let lattice = pair.primal.face_lattice();
    let terms = par::map_range(lattice.len(), |f| {
        let e = lattice.dim(f) + 1;
        let g = pair.dual_face(f);
        let a = sp[f].substitute(-1, 1);
        let b = sd[g].substitute(1, 1);
        (&a * &b).shift(e as i64, 0).scale(&sign(e as i64))
    });
    let r = pair.index.to_i64().expect("small index");
    let poly = terms
        .iter()
        .fold(LaurentPoly2::zero(), |acc, t| &acc + t)
        .shift(-r, -r);
    let dim = pair.primal.dim() as usize;
    Ok(EstResult {
        is_polynomial: poly.is_polynomial(),
        poly,
        index: pair.index.clone(),
        dim,
        cy_dim: dim as i64 + 1 - 2 * r,
    })
}

/// `E(1, v)` and `E(1, 1)` computed by two independent routes.
#[derive(Clone, Debug)]
pub struct Specializations {
    pub est: EstResult,
    /// `E(1, v)` from the full E-function (as a Laurent polynomial in `v`).
    pub est_at_u1: LaurentPoly2,
    /// `v^{−r} Σ_F (−1)^{dim F + 1} h*_F(v) h*_{F*}(v)`.
    pub hstar_route: LaurentPoly2,
    pub est_at_11: Int,
    /// `Σ_F (−1)^{dim F + 1} Vol(F) Vol(F*)`.
    pub volume_route: Int,
    pub agree_u1: bool,
    pub agree_11: bool,
}

pub fn est_specializations(p: &LatticePolytope, cap: Cap) -> Result<Specializations> {
    let q = p.full_dimensional_copy();
    let pair = dual_gorenstein(&q)?;
    let est = est_of_pair(&pair, cap)?;
    let pd = FaceData::new(&pair.primal, cap)?;
    let dd = FaceData::new(&pair.dual, cap)?;
    let lattice = pair.primal.face_lattice();
    let r = pair.index.to_i64().expect("small index");
    let mut hstar_route = LaurentPoly2::zero();
    let mut volume_route = Int::zero();
    for f in 0..lattice.len() {
        let g = pair.dual_face(f);
        let s = sign(lattice.dim(f) as i64 + 1);
        let prod = &pd.hstar[f] * &dd.hstar[g];
        hstar_route = &hstar_route + &prod.substitute(0, 1).scale(&s);
        volume_route += s * pd.hstar[f].eval_one() * dd.hstar[g].eval_one();
    }
    let hstar_route = hstar_route.shift(0, -r);
    let est_at_u1 = est.poly.at_u_one();
    let est_at_11 = est.at_one_one();
    Ok(Specializations {
        agree_u1: est_at_u1 == hstar_route,
        agree_11: est_at_11 == volume_route && hstar_route.eval(&Rat::one(), &Rat::one()) == Rat::from(volume_route.clone()),
        est,
        est_at_u1,
        hstar_route,
        est_at_11,
        volume_route,
    })
}

/// Outcome of the checks on the E-function of a Gorenstein polytope of
/// CY-dimension `n`. Checks that only make sense for `n ≥ 1` (or a specific
/// `n`) are `None` otherwise.
#[derive(Clone, Debug)]
pub struct Diagnostics {
    pub est: EstResult,
    pub dual_est: EstResult,
    pub cy_dim: i64,
    pub polynomial: bool,
    /// Signed coefficients `(−1)^{p+q}·coeff` all nonnegative.
    pub nonnegative: bool,
    /// Degree at most `2n`; zero when `n < 0`; constant when `n = 0`.
    pub degree_bound: bool,
    pub symmetric: bool,
    pub poincare_duality: bool,
    /// `E(P; u, v) = (−u)^n E(P*; u⁻¹, v)`.
    pub reciprocity: bool,
    /// `E(u, 0) = (−u)^n E(u⁻¹, 0)`.
    pub edge_symmetry: Option<bool>,
    /// `12 · d²/du² E(u,1)|_{u=1} = n(3n−5) E(1,1)`.
    pub second_derivative: Option<bool>,
    /// `E = k(1−u)(1−v)` for `n = 1`; the two-parameter K3/abelian form for `n = 2`.
    pub closed_form: Option<bool>,
    /// `24 | E(1,1)` for `n = 2`.
    pub divisible_by_24: Option<bool>,
    pub at_one_one: Int,
}

impl Diagnostics {
    /// Whether every applicable check passed.
    pub fn all_pass(&self) -> bool {
        self.polynomial
            && self.nonnegative
            && self.degree_bound
            && self.symmetric
            && self.poincare_duality
            && self.reciprocity
            && self.edge_symmetry != Some(false)
            && self.second_derivative != Some(false)
            && self.closed_form != Some(false)
            && self.divisible_by_24 != Some(false)
    }
}

pub fn conjecture_diagnostics(p: &LatticePolytope, cap: Cap) -> Result<Diagnostics> {
    let q = p.full_dimensional_copy();
    let pair = dual_gorenstein(&q)?;
    let est = est_of_pair(&pair, cap)?;
    let dual_est = est_of_pair(&pair.swapped()?, cap)?;
    let n = est.cy_dim;
    let e = &est.poly;
    let parity = sign(n);

    let degree_bound = if n < 0 {
        e.is_zero()
    } else if n == 0 {
        e.is_constant()
    } else {
        e.total_degree().is_none_or(|d| d <= 2 * n)
    };
    let poincare = e.map_exponents(|i, j| (n - i, n - j)) == *e;
    let reciprocity = dual_est.poly.map_exponents(|i, j| (n - i, j)).scale(&parity) == *e;
    let at11 = est.at_one_one();

    let (edge, second, closed, div24) = if n >= 1 {
        let edge = e.is_polynomial() && {
            let e0 = e.at_v_zero();
            e0.map_exponents(|i, j| (n - i, j)).scale(&parity) == e0
        };
        let mut lhs = Int::zero();
        for (i, _, c) in e.terms() {
            lhs += c * Int::from(i) * Int::from(i - 1);
        }
        let second = lhs * 12 == Int::from(n * (3 * n - 5)) * &at11;
        let (closed, div) = match n {
            1 => {
                let k = e.coeff(0, 0);
                let form = LaurentPoly2::from_terms(&[(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)]).scale(&k);
                (Some(form == *e), None)
            }
            2 => {
                let k = e.coeff(0, 0);
                let c10: Int = e.coeff(1, 0);
                let ok = if (&c10 % Int::from(2)).is_zero() {
                    let l: Int = -(c10 / Int::from(2));
                    let a = LaurentPoly2::from_terms(&[(0, 0, 1), (2, 0, 1), (0, 2, 1), (2, 2, 1)]).scale(&k);
                    let b = LaurentPoly2::from_terms(&[(1, 0, 1), (0, 1, 1), (2, 1, 1), (1, 2, 1)])
                        .scale(&(Int::from(-2) * &l));
                    let c = LaurentPoly2::monomial(1, 1, Int::from(20) * &k - Int::from(16) * &l);
                    &(&a + &b) + &c == *e
                } else {
                    false
                };
                (Some(ok), Some((&at11 % Int::from(24)).is_zero()))
            }
            _ => (None, None),
        };
        (Some(edge), Some(second), closed, div)
    } else {
        (None, None, None, None)
    };

    Ok(Diagnostics {
        cy_dim: n,
        polynomial: e.is_polynomial(),
        nonnegative: e.is_nonnegative_signed(),
        degree_bound,
        symmetric: e.swap() == *e,
        poincare_duality: poincare,
        reciprocity,
        edge_symmetry: edge,
        second_derivative: second,
        closed_form: closed,
        divisible_by_24: div24,
        at_one_one: at11,
        est,
        dual_est,
    })
}

