//! Double description: extreme rays of pointed cones `{z : A z ≥ 0}`.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::lattice::{dot, primitive, rational_inverse, rref, to_rat, Int, Point, Rat};
use crate::par;

struct Ray {
    z: Point,
    zeros: FixedBitSet,
}

/// Extreme rays (primitive, sorted) of the cone `{z : ⟨row, z⟩ ≥ 0 ∀ rows}`.
/// The rows must have full column rank, i.e. the cone must be pointed.
/// Returns an empty list if the cone is `{0}`.
pub fn extreme_rays(rows: &[Point]) -> Vec<Point> {
    let n = rows.first().map_or(0, |r| r.len());
    let m = rows.len();
    let basis = independent_rows(rows);
    assert_eq!(basis.len(), n, "cone is not pointed");

    let b: Vec<Point> = basis.iter().map(|&i| rows[i].clone()).collect();
    let inv = rational_inverse(&b).expect("independent rows");
    let mut rays: Vec<Ray> = (0..n)
        .map(|j| {
            let col: Vec<Rat> = inv.iter().map(|r| r[j].clone()).collect();
            let z = clear_denominators(&col);
            let mut zeros = FixedBitSet::with_capacity(m);
            for (k, &i) in basis.iter().enumerate() {
                if k != j {
                    zeros.insert(i);
                }
            }
            Ray { z, zeros }
        })
        .collect();

    let mut done = FixedBitSet::with_capacity(m);
    for &i in &basis {
        done.insert(i);
    }
    for (i, a) in rows.iter().enumerate() {
        if done.contains(i) {
            continue;
        }
        done.insert(i);
        let vals: Vec<Int> = rays.iter().map(|r| dot(a, &r.z)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    r.zeros.insert(i);
                }
            }
            continue;
        }
        let pairs: Vec<(usize, usize)> = pos
            .iter()
            .flat_map(|&p| neg.iter().map(move |&q| (p, q)))
            .collect();
        let rays_ref = &rays;
        let vals_ref = &vals;
        let created: Vec<Ray> = par::filter_map(&pairs, |&(p, q)| {
            let mut common = rays_ref[p].zeros.clone();
            common.intersect_with(&rays_ref[q].zeros);
            if common.count_ones(..) + 2 < n {
                return None;
            }
            let blocked = rays_ref
                .iter()
                .enumerate()
                .any(|(k, r)| k != p && k != q && common.is_subset(&r.zeros));
            if blocked {
                return None;
            }
            let sp = &vals_ref[p];
            let sq = &vals_ref[q];
            let z: Point = rays_ref[q]
                .z
                .iter()
                .zip(&rays_ref[p].z)
                .map(|(zq, zp)| sp * zq - sq * zp)
                .collect();
            let mut zeros = common;
            zeros.insert(i);
            Some(Ray {
                z: primitive(&z),
                zeros,
            })
        });
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                r.zeros.insert(i);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }
    let mut out: Vec<Point> = rays.into_iter().map(|r| r.z).collect();
    out.sort();
    out.dedup();
    out
}

/// Indices of a maximal linearly independent subset of rows, chosen greedily.
pub fn independent_rows(rows: &[Point]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut reduced: Vec<Vec<Rat>> = Vec::new();
    let n = rows.first().map_or(0, |r| r.len());
    for (i, r) in rows.iter().enumerate() {
        if chosen.len() == n {
            break;
        }
        let mut cand = reduced.clone();
        cand.push(to_rat(r));
        let (red, piv) = rref(&cand);
        if piv.len() > chosen.len() {
            chosen.push(i);
            reduced = red;
        }
    }
    chosen
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
pub fn clear_denominators(v: &[Rat]) -> Point {
    let l = crate::lattice::common_denominator(v);
    let z: Point = v.iter().map(|x| (x * Rat::from(l.clone())).to_integer()).collect();
    primitive(&z)
}
