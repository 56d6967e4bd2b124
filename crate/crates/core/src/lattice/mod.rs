//! Exact integer and rational linear algebra: matrices, Hermite and Smith
//! normal forms, integer kernels, quotient maps and affine lattice charts.

mod chart;
mod matrix;
mod normal_form;

pub use chart::{AffineChart, QuotientMap, quotient_projection};
pub use matrix::IntMatrix;
pub use normal_form::{hnf, integer_kernel, snf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;
/// An integer vector.
pub type Point = Vec<Int>;

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn point(xs: &[i64]) -> Point {
    xs.iter().map(|&x| Int::from(x)).collect()
}

pub fn points(rows: &[&[i64]]) -> Vec<Point> {
    rows.iter().map(|r| point(r)).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Int::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn dot_rat(a: &[Int], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() {
            s += y * Rat::from(x.clone());
        }
    }
    s
}

pub fn add(a: &[Int], b: &[Int]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Int], k: &Int) -> Point {
    a.iter().map(|x| x * k).collect()
}

pub fn neg(a: &[Int]) -> Point {
    a.iter().map(|x| -x).collect()
}

pub fn gcd_all(a: &[Int]) -> Int {
    a.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(a: &[Int]) -> Point {
    let g = gcd_all(a);
    if g.is_zero() || g.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &g).collect()
}

pub fn to_rat(a: &[Int]) -> Vec<Rat> {
    a.iter().map(|x| Rat::from(x.clone())).collect()
}

/// `Some(point)` when every coordinate is an integer.
pub fn to_int(a: &[Rat]) -> Option<Point> {
    a.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator(a: &[Rat]) -> Int {
    a.iter().fold(Int::one(), |l, x| l.lcm(x.denom()))
}

/// Row echelon form over ℚ. Returns the reduced rows and pivot columns.
pub fn rref(rows: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Point]) -> usize {
    let rat: Vec<Vec<Rat>> = rows.iter().map(|r| to_rat(r)).collect();
    rref(&rat).1.len()
}

/// Rank of the affine span of a point set (−1 for the empty set).
pub fn affine_rank(pts: &[Point]) -> isize {
    match pts.split_first() {
        None => -1,
        Some((first, rest)) => {
            let diffs: Vec<Point> = rest.iter().map(|p| sub(p, first)).collect();
            rank(&diffs) as isize
        }
    }
}

/// Inverse of a square rational matrix given by integer rows.
pub fn rational_inverse(rows: &[Point]) -> Option<Vec<Vec<Rat>>> {
    let n = rows.len();
    let aug: Vec<Vec<Rat>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = to_rat(r);
            v.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            v
        })
        .collect();
    let (red, piv) = rref(&aug);
    if piv.len() < n || piv.iter().any(|&c| c >= n) {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Unique solution of `A x = b` over ℚ, or `None` when the system is
/// inconsistent or underdetermined.
pub fn solve_unique(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(r, y)| {
            let mut v = r.clone();
            v.push(y.clone());
            v
        })
        .collect();
    let (red, piv) = rref(&aug);
    if piv.contains(&n) || piv.len() < n {
        return None;
    }
    Some(red.iter().map(|r| r[n].clone()).collect())
}

/// Integer coordinates `c` with `Σ c_i · basis_i = v` when the basis rows are
/// linearly independent and such coordinates exist.
pub fn solve_in_basis(basis: &[Point], v: &[Int]) -> Option<Vec<Rat>> {
    let d = v.len();
    let a: Vec<Vec<Rat>> = (0..d)
        .map(|j| basis.iter().map(|b| Rat::from(b[j].clone())).collect())
        .collect();
    solve_unique(&a, &to_rat(v))
}

pub fn is_zero_vec(a: &[Int]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn abs_max(a: &[Int]) -> Int {
    a.iter().map(|x| x.abs()).max().unwrap_or_default()
}
