//! Lattice-point enumeration by slicing. For a full-dimensional polytope `Q`
//! in chart coordinates, `levels[j]` holds the facets of the projection of
//! `Q` onto the first `j + 1` coordinates, so every feasible prefix extends
//! to a real point and the scan never leaves the projections.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::hull::extreme_rays;
use super::Facet;
use crate::error::{Cap, Error, Result};
use crate::lattice::{Int, Point};
use crate::par;

/// Facets of the convex hull of full-dimensional integer points.
pub(crate) fn hull_facets(points: &[Point]) -> Vec<Facet> {
    let rows: Vec<Point> = points
        .iter()
        .map(|p| {
            let mut r = Vec::with_capacity(p.len() + 1);
            r.push(Int::one());
            r.extend(p.iter().cloned());
            r
        })
        .collect();
    let mut facets: Vec<Facet> = extreme_rays(&rows)
        .into_iter()
        .map(|z| Facet {
            offset: z[0].clone(),
            normal: z[1..].to_vec(),
        })
        .collect();
    facets.sort();
    facets
}

pub(crate) fn projection_levels(chart_vertices: &[Point], chart_facets: &[Facet]) -> Vec<Vec<Facet>> {
    let k = chart_vertices.first().map_or(0, |v| v.len());
    let mut levels: Vec<Vec<Facet>> = par::map_range(k.saturating_sub(1), |j| {
        let mut proj: Vec<Point> = chart_vertices.iter().map(|v| v[..=j].to_vec()).collect();
        proj.sort();
        proj.dedup();
        hull_facets(&proj)
    });
    if k > 0 {
        levels.push(chart_facets.to_vec());
    }
    levels
}

trait Num: Clone + Integer + Signed + Send + Sync {
    fn from_int(x: &Int) -> Self;
    fn to_int(&self) -> Int;
}

impl Num for i128 {
    fn from_int(x: &Int) -> Self {
        x.to_i128().expect("checked range")
    }
    fn to_int(&self) -> Int {
        Int::from(*self)
    }
}

impl Num for BigInt {
    fn from_int(x: &Int) -> Self {
        x.clone()
    }
    fn to_int(&self) -> Int {
        self.clone()
    }
}

struct Level<T> {
    rows: Vec<(Vec<T>, T)>,
}

fn convert<T: Num>(levels: &[Vec<Facet>], scale: &Int) -> Vec<Level<T>> {
    levels
        .iter()
        .map(|fs| Level {
            rows: fs
                .iter()
                .map(|f| (f.normal.iter().map(T::from_int).collect(), T::from_int(&(&f.offset * scale))))
                .collect(),
        })
        .collect()
}

/// Integer range of the next coordinate given a prefix; `None` if empty.
fn range<T: Num>(level: &Level<T>, prefix: &[T]) -> Option<(T, T)> {
    let j = prefix.len();
    let mut lo: Option<T> = None;
    let mut hi: Option<T> = None;
    for (u, a) in &level.rows {
        let mut s = a.clone();
        for (x, c) in u.iter().zip(prefix) {
            s = s + x.clone() * c.clone();
        }
        let uj = &u[j];
        if uj.is_zero() {
            if s.is_negative() {
                return None;
            }
        } else if uj.is_positive() {
            // y ≥ −s / uj
            let b = (-s).div_ceil(uj);
            if lo.as_ref().is_none_or(|l| b > *l) {
                lo = Some(b);
            }
        } else {
            // y ≤ s / (−uj)
            let b = s.div_floor(&(-uj.clone()));
            if hi.as_ref().is_none_or(|h| b < *h) {
                hi = Some(b);
            }
        }
    }
    let (lo, hi) = (lo?, hi?);
    (lo <= hi).then_some((lo, hi))
}

struct Walk<'a, T> {
    levels: &'a [Level<T>],
    visited: &'a AtomicU64,
    cap: u64,
}

impl<T: Num> Walk<'_, T> {
    fn tick(&self, n: u64) -> Result<()> {
        let before = self.visited.fetch_add(n, Ordering::Relaxed);
        if before + n > self.cap {
            return Err(Error::EnumerationCap { cap: self.cap });
        }
        Ok(())
    }

    fn descend(&self, prefix: &mut Vec<T>, out: &mut dyn FnMut(&[T])) -> Result<()> {
        let j = prefix.len();
        let Some((lo, hi)) = range(&self.levels[j], prefix) else {
            return Ok(());
        };
        let width = (hi.clone() - lo.clone()).to_int() + Int::one();
        self.tick(width.to_u64().unwrap_or(u64::MAX))?;
        let mut y = lo;
        while y <= hi {
            prefix.push(y.clone());
            if j + 1 == self.levels.len() {
                out(prefix);
            } else {
                self.descend(prefix, out)?;
            }
            prefix.pop();
            y = y + T::one();
        }
        Ok(())
    }
}

fn fits_i128(levels: &[Vec<Facet>], scale: &Int) -> bool {
    let bound = Int::one() << 40;
    levels.iter().flatten().all(|f| {
        (&f.offset * scale).abs() < bound && f.normal.iter().all(|x| x.abs() < bound)
    })
}

fn run<T: Num, R: Send>(
    levels: &[Vec<Facet>],
    scale: &Int,
    cap: Cap,
    mk: impl Fn() -> R + Sync + Send,
    each: impl Fn(&mut R, &[T]) + Sync + Send,
) -> Result<Vec<R>> {
    let lv = convert::<T>(levels, scale);
    let visited = AtomicU64::new(0);
    let walk = Walk {
        levels: &lv,
        visited: &visited,
        cap: cap.0,
    };
    let Some((lo, hi)) = range(&lv[0], &[]) else {
        return Ok(Vec::new());
    };
    let firsts: Vec<T> = {
        let mut v = Vec::new();
        let mut y = lo;
        while y <= hi {
            v.push(y.clone());
            y = y + T::one();
            if v.len() as u64 > cap.0 {
                return Err(Error::EnumerationCap { cap: cap.0 });
            }
        }
        v
    };
    walk.tick(firsts.len() as u64)?;
    par::try_map(&firsts, |y| {
        let mut acc = mk();
        let mut prefix = vec![y.clone()];
        if lv.len() == 1 {
            each(&mut acc, &prefix);
        } else {
            walk.descend(&mut prefix, &mut |c: &[T]| each(&mut acc, c))?;
        }
        Ok(acc)
    })
}

/// All integer points of `scale · Q` in chart coordinates, lexicographically
/// sorted.
pub(crate) fn chart_points(levels: &[Vec<Facet>], scale: &Int, cap: Cap) -> Result<Vec<Point>> {
    if levels.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let parts: Vec<Vec<Point>> = if fits_i128(levels, scale) {
        run::<i128, _>(levels, scale, cap, Vec::new, |acc, c| {
            acc.push(c.iter().map(|&x| Int::from(x)).collect())
        })?
    } else {
        run::<BigInt, _>(levels, scale, cap, Vec::new, |acc, c| acc.push(c.to_vec()))?
    };
    Ok(parts.into_iter().flatten().collect())
}

/// Number of integer points of `scale · Q`.
pub(crate) fn chart_count(levels: &[Vec<Facet>], scale: &Int, cap: Cap) -> Result<Int> {
    if levels.is_empty() {
        return Ok(Int::one());
    }
    let parts: Vec<u64> = if fits_i128(levels, scale) {
        run::<i128, _>(levels, scale, cap, || 0u64, |acc, _| *acc += 1)?
    } else {
        run::<BigInt, _>(levels, scale, cap, || 0u64, |acc, _| *acc += 1)?
    };
    Ok(parts.into_iter().map(Int::from).sum())
}
