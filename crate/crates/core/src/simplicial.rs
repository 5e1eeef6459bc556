//! Finite simplicial complexes with totally ordered integer vertices,
//! their boundary matrices, skeleta, and direct simplicial homology.
//!
//! The homology computed here straight from boundary-matrix ranks is the
//! oracle the spectral sequence, cosheaf and barcode modules are checked
//! against.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;
use crate::field::Field;
use crate::linalg::{image, kernel, Matrix, QuotientSpace, Subspace};

/// An abstract simplex: strictly increasing vertex ids. The increasing
/// order is the canonical orientation; every sign in the crate is a
/// permutation parity relative to it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Simplex {
    vertices: Vec<u32>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Result<Self, Error> {
        let orig = vertices.clone();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() != orig.len() {
            return Err(Error::DegenerateSimplex(orig));
        }
        Ok(Simplex { vertices })
    }

    /// Vertex set of the image of a simplex under a vertex map:
    /// duplicates collapse.
    pub fn from_unsorted(vertices: &[u32]) -> Self {
        let set: BTreeSet<u32> = vertices.iter().copied().collect();
        Simplex { vertices: set.into_iter().collect() }
    }

    pub fn vertex(v: u32) -> Self {
        Simplex { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The face obtained by deleting the `i`-th vertex. `None` for a
    /// vertex (there is no empty simplex).
    pub fn face(&self, i: usize) -> Option<Simplex> {
        if self.vertices.len() == 1 {
            return None;
        }
        let mut v = self.vertices.clone();
        v.remove(i);
        Some(Simplex { vertices: v })
    }

    /// All nonempty proper and improper faces, including `self`.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for mask in 1u64..(1 << n) {
            let v: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.vertices[i]).collect();
            out.push(Simplex { vertices: v });
        }
        out
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices.iter().all(|v| other.vertices.binary_search(v).is_ok())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A finite simplicial complex: a set of simplices closed under faces,
/// indexed by dimension in lexicographic order. The per-dimension
/// ordering fixes the coordinate system of every chain space.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
    index: BTreeMap<Simplex, usize>,
}

impl SimplicialComplex {
    /// The smallest complex containing every generator.
    pub fn close_under_faces(generators: &[Vec<u32>]) -> Result<Self, Error> {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for g in generators {
            let s = Simplex::new(g.clone())?;
            for f in s.all_faces() {
                all.insert(f);
            }
        }
        Ok(Self::from_closed_set(all))
    }

    fn from_closed_set(all: BTreeSet<Simplex>) -> Self {
        let top = all.iter().map(|s| s.dim()).max().map_or(0, |d| d + 1);
        let mut by_dim = vec![Vec::new(); top];
        for s in all {
            by_dim[s.dim()].push(s);
        }
        let mut index = BTreeMap::new();
        for simplices in &by_dim {
            for (i, s) in simplices.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        SimplicialComplex { by_dim, index }
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Dimension of the complex; -1 for the empty complex.
    pub fn dim(&self) -> i64 {
        self.by_dim.len() as i64 - 1
    }

    /// The `d`-simplices in coordinate order.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        static EMPTY: Vec<Simplex> = Vec::new();
        self.by_dim.get(d).unwrap_or(&EMPTY)
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(|v| v.len()).sum()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Coordinate index of `s` inside its dimension.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn vertex_ids(&self) -> Vec<u32> {
        self.simplices(0).iter().map(|s| s.vertices()[0]).collect()
    }

    /// The subcomplex of simplices of dimension at most `j`; `j = -1`
    /// gives the empty complex.
    pub fn skeleton(&self, j: i64) -> SimplicialComplex {
        let keep = (j + 1).max(0) as usize;
        let by_dim: Vec<Vec<Simplex>> = self.by_dim.iter().take(keep).cloned().collect();
        let all: BTreeSet<Simplex> = by_dim.into_iter().flatten().collect();
        Self::from_closed_set(all)
    }

    /// The signed boundary matrix from `d`-chains to `(d-1)`-chains.
    /// Columns follow the `d`-simplex coordinate order; a column for
    /// `[u_0..u_d]` holds `(-1)^i` at each face `[u_0..û_i..u_d]`.
    /// For `d = 0` the target is the zero space (`C_{-1} = 0`).
    pub fn boundary_matrix<F: Field>(&self, field: F, d: usize) -> Matrix<F> {
        let cols = self.simplices(d);
        let rows = if d == 0 { 0 } else { self.simplices(d - 1).len() };
        let mut m = Matrix::zeros(field.clone(), rows, cols.len());
        if d == 0 {
            return m;
        }
        for (j, s) in cols.iter().enumerate() {
            for i in 0..=s.dim() {
                let face = s.face(i).expect("positive-dimensional simplex has faces");
                let r = self.index_of(&face).expect("complex closed under faces");
                let sign = field.from_int(if i % 2 == 0 { 1 } else { -1 });
                m.set(r, j, sign);
            }
        }
        m
    }

    /// Cycles modulo boundaries in degree `d`, presented with coset
    /// representatives: `dim = dim ker ∂_d - rank ∂_{d+1}`.
    pub fn homology_presentation<F: Field>(&self, field: F, d: usize) -> QuotientSpace<F> {
        let n = self.simplices(d).len();
        let cycles = if d == 0 {
            Subspace::full(field.clone(), n)
        } else {
            kernel(&self.boundary_matrix(field.clone(), d))
        };
        let boundaries = if self.simplices(d + 1).is_empty() {
            Subspace::zero(field.clone(), n)
        } else {
            image(&self.boundary_matrix(field, d + 1))
        };
        QuotientSpace::new(cycles, boundaries).expect("boundaries are cycles")
    }

    pub fn homology_dim<F: Field>(&self, field: F, d: usize) -> usize {
        self.homology_presentation(field, d).dim()
    }

    /// Homology dims in all degrees `0 ..= dim`.
    pub fn homology_dims<F: Field>(&self, field: F) -> Vec<usize> {
        (0..self.by_dim.len()).map(|d| self.homology_dim(field.clone(), d)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }
}
