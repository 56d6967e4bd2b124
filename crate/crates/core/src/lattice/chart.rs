use num_traits::{One, Zero};

use super::{hnf, integer_kernel, snf, sub, Int, IntMatrix, Point, Rat};

/// Surjective integer map `ℤ^d → ℤ^(d−k)` whose kernel is a saturated
/// sublattice of rank `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    /// Saturated kernel basis, rows in Hermite normal form.
    pub kernel: IntMatrix,
    /// `(d−k) × d` matrix; `matrix · v` are the quotient coordinates of `v`.
    pub matrix: IntMatrix,
}

impl QuotientMap {
    pub fn ambient_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[Int]) -> Point {
        self.matrix.apply(v)
    }

    pub fn apply_rat(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.matrix.rows())
            .map(|i| super::dot_rat(self.matrix.row(i), v))
            .collect()
    }

    /// Whether `v` lies in the kernel.
    pub fn annihilates(&self, v: &[Int]) -> bool {
        self.apply(v).iter().all(Zero::is_zero)
    }

    /// Pulls a functional on the quotient back to `ℤ^d`: `u ↦ uᵀ·matrix`.
    pub fn pull_back(&self, u: &[Int]) -> Point {
        self.matrix.apply_left(u)
    }
}

/// Projection of `ℤ^d` along the saturation of the span of `kernel`.
/// The quotient coordinates are the Hermite basis of the integer functionals
/// vanishing on the kernel, so the chart is reproducible.
pub fn quotient_projection(kernel: &[Point], d: usize) -> QuotientMap {
    let k = IntMatrix::from_rows(kernel, d);
    let matrix = integer_kernel(&k);
    let kernel = integer_kernel(&matrix);
    QuotientMap { kernel, matrix }
}

/// Integer chart of an affine lattice `origin + L` with `L ⊆ ℤ^d` saturated.
/// Chart coordinates `c` correspond to the point `origin + c·basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChart {
    pub origin: Point,
    /// `k × d`, rows a basis of `L` in Hermite normal form.
    pub basis: IntMatrix,
    /// `d × k` right inverse of `basis`.
    inverse: IntMatrix,
}

impl AffineChart {
    pub fn identity(d: usize) -> Self {
        Self {
            origin: vec![Int::zero(); d],
            basis: IntMatrix::identity(d),
            inverse: IntMatrix::identity(d),
        }
    }

    /// Chart of `origin + L` where `L` is the saturation of the row span of
    /// `generators`.
    pub fn new(origin: Point, generators: &[Point]) -> Self {
        let d = origin.len();
        let q = quotient_projection(generators, d);
        Self::from_saturated(origin, q.kernel)
    }

    fn from_saturated(origin: Point, basis: IntMatrix) -> Self {
        let k = basis.rows();
        let d = basis.cols();
        let (s, u, v) = snf(&basis);
        debug_assert!((0..k).all(|i| s.get(i, i).is_one()), "basis not saturated");
        let mut st = IntMatrix::zeros(d, k);
        for i in 0..k {
            st.set(i, i, Int::one());
        }
        let inverse = v.mul(&st).mul(&u);
        Self {
            origin,
            basis,
            inverse,
        }
    }

    /// Chart of the affine lattice spanned by `points` (nonempty). When the
    /// points span the whole space this is the identity chart.
    pub fn spanned_by(points: &[Point]) -> Self {
        let d = points[0].len();
        let origin = points.iter().min().unwrap().clone();
        let diffs: Vec<Point> = points.iter().map(|p| sub(p, &origin)).collect();
        if super::rank(&diffs) == d {
            return Self::identity(d);
        }
        Self::new(origin, &diffs)
    }

    /// Chart of the hyperplane `{z ∈ ℤ^d : ⟨m, z⟩ = 1}`; `None` when `m` is
    /// not primitive.
    pub fn hyperplane(m: &[Int]) -> Option<Self> {
        let d = m.len();
        let col = IntMatrix::from_rows(&[m.to_vec()], d).transpose();
        let (h, u) = hnf(&col);
        if d == 0 || !h.get(0, 0).is_one() {
            return None;
        }
        let origin = u.row_vec(0);
        let (basis, _) = hnf(&integer_kernel(&IntMatrix::from_rows(&[m.to_vec()], d)));
        Some(Self::from_saturated(origin, basis))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_identity(&self) -> bool {
        self.dim() == self.ambient_dim() && self.origin.iter().all(Zero::is_zero) && self.basis == IntMatrix::identity(self.dim())
    }

    /// Column `j` of the right inverse: chart coordinate `j` of `x` is
    /// `⟨column, x − origin⟩`.
    pub fn inverse_column(&self, j: usize) -> Point {
        self.inverse.column(j)
    }

    pub fn to_chart(&self, x: &[Int]) -> Point {
        self.inverse.apply_left(&sub(x, &self.origin))
    }

    pub fn to_chart_rat(&self, x: &[Rat]) -> Vec<Rat> {
        let diff: Vec<Rat> = x
            .iter()
            .zip(&self.origin)
            .map(|(a, o)| a - Rat::from(o.clone()))
            .collect();
        (0..self.inverse.cols())
            .map(|j| {
                let col = self.inverse.column(j);
                super::dot_rat(&col, &diff)
            })
            .collect()
    }

    pub fn from_chart(&self, c: &[Int]) -> Point {
        super::add(&self.origin, &self.basis.apply_left(c))
    }

    pub fn from_chart_rat(&self, c: &[Rat]) -> Vec<Rat> {
        (0..self.ambient_dim())
            .map(|j| {
                let col = self.basis.column(j);
                Rat::from(self.origin[j].clone()) + super::dot_rat(&col, c)
            })
            .collect()
    }

    /// Whether `x` lies on the affine lattice.
    pub fn contains(&self, x: &[Int]) -> bool {
        self.from_chart(&self.to_chart(x)) == x
    }

    /// Whether a rational point lies on the real affine span.
    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        self.from_chart_rat(&self.to_chart_rat(x)) == x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{point, points};
    use proptest::prelude::*;

    #[test]
    fn diagonal_quotient() {
        let q = quotient_projection(&points(&[&[1, 1]]), 2);
        assert_eq!(q.rank(), 1);
        assert!(q.annihilates(&point(&[1, 1])));
        let a = q.apply(&point(&[1, 0]));
        let b = q.apply(&point(&[0, -1]));
        assert_eq!(a, b);
        assert!(a[0] == Int::one() || a[0] == -Int::one());
    }

    #[test]
    fn degenerate_quotients() {
        let full = quotient_projection(&points(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3);
        assert_eq!(full.rank(), 0);
        let none = quotient_projection(&[], 3);
        assert_eq!(none.matrix, IntMatrix::identity(3));
    }

    #[test]
    fn non_primitive_kernel_is_saturated() {
        let q = quotient_projection(&points(&[&[2, 4, 0]]), 3);
        assert!(q.annihilates(&point(&[1, 2, 0])));
        assert_eq!(q.rank(), 2);
    }

    #[test]
    fn chart_of_a_slanted_plane() {
        let pts = points(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let c = AffineChart::spanned_by(&pts);
        assert_eq!(c.dim(), 2);
        for p in &pts {
            assert!(c.contains(p));
            assert_eq!(c.from_chart(&c.to_chart(p)), *p);
        }
        assert!(!c.contains(&point(&[1, 1, 0])));
    }

    #[test]
    fn hyperplane_chart() {
        let c = AffineChart::hyperplane(&point(&[1, 2, 3])).unwrap();
        assert_eq!(crate::lattice::dot(&c.origin, &point(&[1, 2, 3])), Int::one());
        let z = point(&[0, -1, 1]);
        assert!(c.contains(&z));
        assert!(AffineChart::hyperplane(&point(&[2, 4])).is_none());
    }

    fn vectors(d: usize) -> impl Strategy<Value = Vec<Point>> {
        proptest::collection::vec(proptest::collection::vec(-4i64..5, d), 0..d)
            .prop_map(|v| v.iter().map(|r| point(r)).collect())
    }

    proptest! {
        #[test]
        fn quotient_kernel_matches_saturation(k in vectors(4), v in proptest::collection::vec(-5i64..6, 4)) {
            let q = quotient_projection(&k, 4);
            for g in &k {
                prop_assert!(q.annihilates(g));
            }
            prop_assert_eq!(q.rank() + crate::lattice::rank(&k), 4);
            // v is annihilated exactly when it lies in the rational span of k
            let v = point(&v);
            let mut with_v = k.clone();
            with_v.push(v.clone());
            let in_span = crate::lattice::rank(&with_v) == crate::lattice::rank(&k);
            prop_assert_eq!(q.annihilates(&v), in_span);
            // surjective: Smith invariants of the matrix are all 1
            let (s, _, _) = snf(&q.matrix);
            for i in 0..q.rank() {
                prop_assert!(s.get(i, i).is_one());
            }
        }

        #[test]
        fn nested_projection_composes(k in vectors(4), extra in vectors(4)) {
            let q1 = quotient_projection(&k, 4);
            let images: Vec<Point> = extra.iter().map(|e| q1.apply(e)).collect();
            let q2 = quotient_projection(&images, q1.rank());
            let composed = q2.matrix.mul(&q1.matrix);
            let mut union = k.clone();
            union.extend(extra.iter().cloned());
            let direct = quotient_projection(&union, 4);
            prop_assert_eq!(composed.rows(), direct.rank());
            prop_assert_eq!(integer_kernel(&composed), direct.kernel.clone());
        }
    }
}
