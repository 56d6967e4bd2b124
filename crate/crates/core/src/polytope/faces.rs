use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::LatticePolytope;
use crate::lattice::{affine_rank, Point};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    /// Indices into the polytope's vertex list.
    pub vertices: FixedBitSet,
    pub dim: isize,
}

impl Face {
    pub fn rank(&self) -> usize {
        (self.dim + 1) as usize
    }
}

/// All faces of a polytope, including `∅` (index 0) and the polytope itself
/// (last index), ordered by dimension and then by vertex set. Order is
/// inclusion of vertex sets.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
    index: HashMap<FixedBitSet, usize>,
    above: Vec<Vec<usize>>,
}

impl FaceLattice {
    pub(crate) fn of(p: &LatticePolytope) -> Self {
        let n = p.num_vertices();
        let mut full = FixedBitSet::with_capacity(n);
        full.insert_range(..);
        let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
        seen.insert(full.clone(), ());
        seen.insert(FixedBitSet::with_capacity(n), ());
        let mut stack = vec![full];
        while let Some(f) = stack.pop() {
            for i in 0..p.num_facets() {
                let mut g = f.clone();
                g.intersect_with(p.facet_vertices(i));
                if !seen.contains_key(&g) {
                    seen.insert(g.clone(), ());
                    stack.push(g);
                }
            }
        }
        let cv = p.chart_vertices();
        let faces: Vec<Face> = seen
            .into_keys()
            .map(|vertices| {
                let pts: Vec<Point> = vertices.ones().map(|i| cv[i].clone()).collect();
                let dim = affine_rank(&pts);
                Face { vertices, dim }
            })
            .collect();
        Self::from_faces(faces)
    }

    fn from_faces(mut faces: Vec<Face>) -> Self {
        faces.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then_with(|| a.vertices.ones().cmp(b.vertices.ones()))
        });
        let index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        let above = (0..faces.len())
            .map(|i| {
                (i..faces.len())
                    .filter(|&j| faces[i].vertices.is_subset(&faces[j].vertices))
                    .collect()
            })
            .collect();
        Self {
            faces,
            index,
            above,
        }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn dim(&self, i: usize) -> isize {
        self.faces[i].dim
    }

    pub fn rank(&self, i: usize) -> usize {
        self.faces[i].rank()
    }

    pub fn index_of(&self, vertices: &FixedBitSet) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.faces[i].vertices.is_subset(&self.faces[j].vertices)
    }

    /// Faces `z` with `i ≤ z`, in lattice order.
    pub fn above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    /// Faces `z` with `lo ≤ z ≤ hi`, in lattice order.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        self.above[lo]
            .iter()
            .copied()
            .filter(|&z| self.leq(z, hi))
            .collect()
    }

    /// Faces of dimension `k`.
    pub fn of_dim(&self, k: isize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.faces[i].dim == k).collect()
    }

    /// Whether every subinterval of `[lo, hi]` of positive rank has as many
    /// elements of even rank as of odd rank.
    pub fn is_eulerian(&self, lo: usize, hi: usize) -> bool {
        let elems = self.interval(lo, hi);
        elems.iter().all(|&x| {
            elems.iter().filter(|&&y| y != x && self.leq(x, y)).all(|&y| {
                let mut balance = 0i64;
                for z in self.interval(x, y) {
                    balance += if self.rank(z) % 2 == 0 { 1 } else { -1 };
                }
                balance == 0
            })
        })
    }

    /// Whether every maximal chain of `[lo, hi]` has length `rank(hi) − rank(lo)`.
    pub fn is_graded(&self, lo: usize, hi: usize) -> bool {
        let elems = self.interval(lo, hi);
        elems.iter().all(|&x| {
            let covers: Vec<usize> = elems
                .iter()
                .copied()
                .filter(|&y| y != x && self.leq(x, y))
                .filter(|&y| {
                    !elems
                        .iter()
                        .any(|&z| z != x && z != y && self.leq(x, z) && self.leq(z, y))
                })
                .collect();
            covers.iter().all(|&y| self.rank(y) == self.rank(x) + 1)
        })
    }
}
