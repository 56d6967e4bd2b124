use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::est::est_capped;
use crate::error::{Cap, Error, Result};
use crate::gorenstein::gorenstein_data;
use crate::lattice::{Int, Point, Rat};
use crate::polytope::LatticePolytope;

/// Weights `w₀, …, w_d` dividing `w`; defines the simplex
/// `S(ω) = {x ∈ ℝ^{d+1}_{≥0} : Σ w_i x_i = w}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub w: Int,
    pub weights: Vec<Int>,
}

impl WeightSystem {
    pub fn new(w: Int, weights: Vec<Int>) -> Result<Self> {
        if !w.is_positive() || weights.is_empty() || weights.iter().any(|x| !x.is_positive()) {
            return Err(Error::Precondition("weights must be positive".into()));
        }
        if let Some(bad) = weights.iter().find(|x| !w.is_multiple_of(x)) {
            return Err(Error::Precondition(format!("weight {bad} does not divide {w}")));
        }
        Ok(Self { w, weights })
    }

    pub fn from_i64(w: i64, weights: &[i64]) -> Result<Self> {
        Self::new(Int::from(w), weights.iter().map(|&x| Int::from(x)).collect())
    }

    /// `k_i = w / w_i`
    pub fn ks(&self) -> Vec<Int> {
        self.weights.iter().map(|x| &self.w / x).collect()
    }
}

#[derive(Clone, Debug)]
pub struct WeightedReport {
    pub simplex: LatticePolytope,
    pub ks: Vec<Int>,
    /// `Σ 1/k_i`
    pub reciprocal_sum: Rat,
    /// Index found by Gorenstein detection, if any.
    pub index: Option<Int>,
    /// Detected index agrees with `Σ 1/k_i` (Gorenstein exactly when the sum
    /// is an integer).
    pub index_consistent: bool,
    /// Some `k_i = 1`.
    pub is_pyramid: bool,
    /// For pyramids: whether the E-function vanishes (`None` if not
    /// Gorenstein).
    pub est_vanishes: Option<bool>,
    /// `#{i : k_i ≥ 3}`
    pub s: usize,
    pub cy_dim: Option<i64>,
    /// `s ≤ 3·CY-dim` when all `k_i ≥ 2` (`None` otherwise or when not Gorenstein).
    pub bound_holds: Option<bool>,
}

/// Builds `S(ω)` with vertices `k_i e_i` and reports its Gorenstein data.
pub fn weighted_simplex(ws: &WeightSystem, cap: Cap) -> Result<WeightedReport> {
    let ks = ws.ks();
    let n = ks.len();
    let verts: Vec<Point> = (0..n)
        .map(|i| {
            let mut v = vec![Int::zero(); n];
            v[i] = ks[i].clone();
            v
        })
        .collect();
    let simplex = LatticePolytope::new(&verts);
    let reciprocal_sum: Rat = ks.iter().map(|k| Rat::new(Int::one(), k.clone())).sum();
    let data = gorenstein_data(&simplex);
    let index = data.as_ref().map(|d| d.index.clone());
    let index_consistent = match &index {
        Some(r) => reciprocal_sum == Rat::from(r.clone()),
        None => !reciprocal_sum.is_integer(),
    };
    let is_pyramid = ks.iter().any(One::is_one);
    let est_vanishes = if is_pyramid && index.is_some() {
        Some(est_capped(&simplex, cap)?.poly.is_zero())
    } else {
        None
    };
    let s = ks.iter().filter(|k| **k >= Int::from(3)).count();
    let cy_dim = index
        .as_ref()
        .map(|r| simplex.dim() as i64 + 1 - 2 * i64::try_from(r).unwrap_or(i64::MAX / 4));
    let bound_holds = match cy_dim {
        Some(c) if ks.iter().all(|k| *k >= Int::from(2)) => Some(s as i64 <= 3 * c),
        _ => None,
    };
    Ok(WeightedReport {
        simplex,
        ks,
        reciprocal_sum,
        index,
        index_consistent,
        is_pyramid,
        est_vanishes,
        s,
        cy_dim,
        bound_holds,
    })
}
