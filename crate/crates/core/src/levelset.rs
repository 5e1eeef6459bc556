//! Level-set persistence over a triangulated segment: interval
//! cosheaves, the zigzag module of a cosheaf on a path, barcode
//! decomposition, and homology read off from barcodes.

use std::collections::BTreeMap;
use std::fmt;

use crate::cosheaf::{leray_cosheaf, Cosheaf};
use crate::error::Error;
use crate::field::Field;
use crate::linalg::{image, kernel, Matrix, Subspace};
use crate::simplicial::{Simplex, SimplicialComplex};
use crate::simplicial_map::SimplicialMap;

/// A 1-dimensional codomain recognized as a triangulated segment, with
/// its vertices in path order `v_0 - v_1 - ... - v_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineTriangulation {
    complex: SimplicialComplex,
    order: Vec<u32>,
}

impl LineTriangulation {
    pub fn from_complex(y: &SimplicialComplex) -> Result<Self, Error> {
        if y.is_empty() {
            return Err(Error::NotAPath("the complex is empty".into()));
        }
        if y.dim() == 0 {
            if y.simplices(0).len() != 1 {
                return Err(Error::NotAPath("several vertices but no edges".into()));
            }
            let v = y.simplices(0)[0].vertices()[0];
            return Ok(LineTriangulation { complex: y.clone(), order: vec![v] });
        }
        if y.dim() != 1 {
            return Err(Error::NotAPath(format!("dimension {} instead of 1", y.dim())));
        }
        let vertices = y.vertex_ids();
        let mut neighbors: BTreeMap<u32, Vec<u32>> = vertices.iter().map(|&v| (v, vec![])).collect();
        for e in y.simplices(1) {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            neighbors.get_mut(&a).unwrap().push(b);
            neighbors.get_mut(&b).unwrap().push(a);
        }
        let mut endpoints: Vec<u32> = vertices
            .iter()
            .copied()
            .filter(|v| neighbors[v].len() == 1)
            .collect();
        if vertices.iter().any(|v| neighbors[v].len() > 2) {
            return Err(Error::NotAPath("a vertex lies on more than two edges".into()));
        }
        if endpoints.len() != 2 {
            return Err(Error::NotAPath("not exactly two endpoints".into()));
        }
        if y.simplices(1).len() + 1 != vertices.len() {
            return Err(Error::NotAPath("the edge graph is disconnected or has a cycle".into()));
        }
        endpoints.sort_unstable();
        let start = endpoints[0];
        let mut order = vec![start];
        let mut prev = None;
        let mut cur = start;
        while order.len() < vertices.len() {
            let next = neighbors[&cur]
                .iter()
                .copied()
                .find(|&v| Some(v) != prev)
                .ok_or_else(|| Error::NotAPath("the edge graph is disconnected".into()))?;
            order.push(next);
            prev = Some(cur);
            cur = next;
        }
        Ok(LineTriangulation { complex: y.clone(), order })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Number of edges.
    pub fn n(&self) -> usize {
        self.order.len() - 1
    }

    /// Path-order vertex ids.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn vertex_simplex(&self, i: usize) -> Simplex {
        Simplex::vertex(self.order[i])
    }

    pub fn edge_simplex(&self, i: usize) -> Simplex {
        Simplex::from_unsorted(&[self.order[i], self.order[i + 1]])
    }
}

/// Endpoint behaviour of an interval bar over vertex indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BarKind {
    /// `[a, b]`
    Closed,
    /// `[a, b)`
    ClosedOpen,
    /// `(a, b]`
    OpenClosed,
    /// `(a, b)`
    Open,
}

impl BarKind {
    pub fn closed_left(self) -> bool {
        matches!(self, BarKind::Closed | BarKind::ClosedOpen)
    }

    pub fn closed_right(self) -> bool {
        matches!(self, BarKind::Closed | BarKind::OpenClosed)
    }
}

/// An interval of vertex indices `a..b` on a triangulated segment with
/// open or closed endpoints; the nonempty ones index the indecomposable
/// cosheaves on the segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalBar {
    pub kind: BarKind,
    pub a: usize,
    pub b: usize,
}

impl fmt::Display for IntervalBar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.kind.closed_left() { '[' } else { '(' };
        let close = if self.kind.closed_right() { ']' } else { ')' };
        write!(f, "{open}{},{}{close}", self.a, self.b)
    }
}

impl IntervalBar {
    /// Rejects the empty intervals: everything with `a > b`, and at
    /// `a = b` everything except `[a, a]`.
    pub fn new(kind: BarKind, a: usize, b: usize) -> Result<Self, Error> {
        if a > b || (a == b && kind != BarKind::Closed) {
            return Err(Error::EmptyBar {
                closed_left: kind.closed_left(),
                closed_right: kind.closed_right(),
                a,
                b,
            });
        }
        Ok(IntervalBar { kind, a, b })
    }

    pub fn supports_vertex(&self, i: usize) -> bool {
        let lo_ok = if self.kind.closed_left() { i >= self.a } else { i > self.a };
        let hi_ok = if self.kind.closed_right() { i <= self.b } else { i + 1 <= self.b };
        lo_ok && hi_ok
    }

    /// Every kind of bar covers the edges `e_a, ..., e_{b-1}`.
    pub fn supports_edge(&self, i: usize) -> bool {
        self.a <= i && i < self.b
    }

    /// Support as an interval of zigzag nodes (vertex `i` is node `2i`,
    /// edge `i` is node `2i + 1`).
    pub fn node_range(&self) -> (usize, usize) {
        let lo = if self.kind.closed_left() { 2 * self.a } else { 2 * self.a + 1 };
        let hi = if self.kind.closed_right() { 2 * self.b } else { 2 * self.b - 1 };
        (lo, hi)
    }

    /// The bar whose zigzag support is the node interval `[i, j]`.
    pub fn from_node_range(i: usize, j: usize) -> Result<Self, Error> {
        let (kind, a, b) = match (i % 2 == 0, j % 2 == 0) {
            (true, true) => (BarKind::Closed, i / 2, j / 2),
            (true, false) => (BarKind::ClosedOpen, i / 2, (j + 1) / 2),
            (false, true) => (BarKind::OpenClosed, (i - 1) / 2, j / 2),
            (false, false) => (BarKind::Open, (i - 1) / 2, (j + 1) / 2),
        };
        IntervalBar::new(kind, a, b)
    }

    /// `(dim H_0, dim H_1)` of the interval cosheaf.
    pub fn bar_homology(&self) -> (usize, usize) {
        match self.kind {
            BarKind::Closed => (1, 0),
            BarKind::ClosedOpen | BarKind::OpenClosed => (0, 0),
            BarKind::Open => (0, 1),
        }
    }

    /// The interval cosheaf itself: one dimension on the supported
    /// simplices of the segment, identity maps inside the support.
    pub fn to_cosheaf<F: Field>(&self, field: F, line: &LineTriangulation) -> Cosheaf<F> {
        let mut dims = BTreeMap::new();
        for i in 0..=line.n() {
            dims.insert(line.vertex_simplex(i), usize::from(self.supports_vertex(i)));
        }
        for i in 0..line.n() {
            dims.insert(line.edge_simplex(i), usize::from(self.supports_edge(i)));
        }
        let mut maps = BTreeMap::new();
        for i in 0..line.n() {
            let e = line.edge_simplex(i);
            for v_index in [i, i + 1] {
                let v = line.vertex_simplex(v_index);
                let m = if dims[&e] == 1 && dims[&v] == 1 {
                    Matrix::identity(field.clone(), 1)
                } else {
                    Matrix::zeros(field.clone(), dims[&v], dims[&e])
                };
                maps.insert((e.clone(), v), m);
            }
        }
        Cosheaf::new(field, line.complex().clone(), dims, maps)
            .expect("interval cosheaves are functorial")
    }
}

/// A multiset of interval bars.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Barcode {
    bars: BTreeMap<IntervalBar, usize>,
}

impl Barcode {
    pub fn new() -> Self {
        Barcode::default()
    }

    pub fn insert(&mut self, bar: IntervalBar, multiplicity: usize) {
        if multiplicity > 0 {
            *self.bars.entry(bar).or_insert(0) += multiplicity;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntervalBar, usize)> {
        self.bars.iter().map(|(b, &m)| (b, m))
    }

    pub fn total(&self) -> usize {
        self.bars.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn count_closed(&self) -> usize {
        self.iter().filter(|(b, _)| b.kind == BarKind::Closed).map(|(_, m)| m).sum()
    }

    pub fn count_open(&self) -> usize {
        self.iter().filter(|(b, _)| b.kind == BarKind::Open).map(|(_, m)| m).sum()
    }

    pub fn dim_at_node(&self, t: usize) -> usize {
        self.iter()
            .filter(|(b, _)| {
                let (lo, hi) = b.node_range();
                lo <= t && t <= hi
            })
            .map(|(_, m)| m)
            .sum()
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "{{")?;
        for (bar, m) in self.iter() {
            for _ in 0..m {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{bar}")?;
                first = false;
            }
        }
        write!(f, "}}")
    }
}

/// The zigzag module of a cosheaf on a segment:
/// `S_0 <- E_0 -> S_1 <- E_1 -> ... -> S_n`
/// with node `2i` the stalk at vertex `i` and node `2i + 1` the stalk at
/// edge `i`; both arrows of edge `i` point outward to its endpoints.
#[derive(Clone, Debug)]
pub struct Zigzag<F: Field> {
    field: F,
    dims: Vec<usize>,
    /// `left[i] : E_i -> S_i`
    left: Vec<Matrix<F>>,
    /// `right[i] : E_i -> S_{i+1}`
    right: Vec<Matrix<F>>,
}

/// Reads the zigzag module off a cosheaf over a triangulated segment.
pub fn zigzag_of<F: Field>(l: &Cosheaf<F>, line: &LineTriangulation) -> Zigzag<F> {
    let n = line.n();
    let mut dims = Vec::with_capacity(2 * n + 1);
    for i in 0..=n {
        dims.push(l.dim_at(&line.vertex_simplex(i)));
        if i < n {
            dims.push(l.dim_at(&line.edge_simplex(i)));
        }
    }
    let left = (0..n).map(|i| l.map(&line.edge_simplex(i), &line.vertex_simplex(i))).collect();
    let right = (0..n).map(|i| l.map(&line.edge_simplex(i), &line.vertex_simplex(i + 1))).collect();
    Zigzag { field: l.field().clone(), dims, left, right }
}

impl<F: Field> Zigzag<F> {
    pub fn nodes(&self) -> usize {
        self.dims.len()
    }

    pub fn node_dim(&self, t: usize) -> usize {
        self.dims[t]
    }

    pub fn node_dims(&self) -> &[usize] {
        &self.dims
    }

    /// The arrows incident to the odd node `t`, as
    /// `(towards t - 1, towards t + 1)`.
    fn arrows_at(&self, t: usize) -> (&Matrix<F>, &Matrix<F>) {
        debug_assert!(t % 2 == 1);
        let k = (t - 1) / 2;
        (&self.left[k], &self.right[k])
    }

    /// Rank of the canonical map from the limit to the colimit of the
    /// restriction to the node interval `[i, j]`.
    pub fn generalized_rank(&self, i: usize, j: usize) -> usize {
        assert!(i <= j && j < self.nodes());
        let field = self.field.clone();
        let offsets: Vec<usize> = (i..=j)
            .scan(0, |acc, t| {
                let o = *acc;
                *acc += self.dims[t];
                Some(o)
            })
            .collect();
        let ambient: usize = self.dims[i..=j].iter().sum();
        let offset_of = |t: usize| offsets[t - i];

        // limit: tuples satisfying every arrow constraint in range
        let mut constraint_rows = 0;
        let mut arrows: Vec<(usize, usize, &Matrix<F>)> = Vec::new(); // (source odd node, target node, map)
        for t in i..=j {
            if t % 2 == 1 {
                let (l, r) = self.arrows_at(t);
                if t > i {
                    arrows.push((t, t - 1, l));
                    constraint_rows += self.dims[t - 1];
                }
                if t < j {
                    arrows.push((t, t + 1, r));
                    constraint_rows += self.dims[t + 1];
                }
            }
        }
        let mut constraints = Matrix::zeros(field.clone(), constraint_rows, ambient);
        let mut row = 0;
        for &(t, target, m) in &arrows {
            for r in 0..self.dims[target] {
                constraints.set(row + r, offset_of(target) + r, field.one());
                for c in 0..self.dims[t] {
                    constraints.set(row + r, offset_of(t) + c, field.neg(m.get(r, c)));
                }
            }
            row += self.dims[target];
        }
        let lim = kernel(&constraints);

        // colimit relations: image of the arrow minus its source
        let mut relation_cols = Vec::new();
        for &(t, target, m) in &arrows {
            for c in 0..self.dims[t] {
                let mut v = vec![field.zero(); ambient];
                v[offset_of(t) + c] = field.neg(&field.one());
                for r in 0..self.dims[target] {
                    v[offset_of(target) + r] = m.get(r, c).clone();
                }
                relation_cols.push(v);
            }
        }
        let relations = columns_to_subspace(field.clone(), ambient, &relation_cols);

        // canonical map: project a limit tuple to its node-i component,
        // viewed inside the colimit
        let mut proj_cols = Vec::new();
        for b in 0..lim.dim() {
            let v = lim.basis().column(b);
            let mut w = vec![field.zero(); ambient];
            w[..self.dims[i]].clone_from_slice(&v[..self.dims[i]]);
            proj_cols.push(w);
        }
        let projected = columns_to_subspace(field.clone(), ambient, &proj_cols);
        let total = projected.sum(&relations).expect("same ambient space");
        total.dim() - relations.dim()
    }
}

fn columns_to_subspace<F: Field>(field: F, ambient: usize, cols: &[Vec<F::Elem>]) -> Subspace<F> {
    if cols.is_empty() {
        return Subspace::zero(field, ambient);
    }
    let m = Matrix::from_fn(field, ambient, cols.len(), |r, c| cols[c][r].clone());
    image(&m)
}

/// Decomposes a cosheaf over a triangulated segment into interval bars
/// by Möbius inversion of the generalized-rank invariant of its zigzag
/// module. The multiplicities are validated to be nonnegative and to
/// reproduce the pointwise dimensions.
pub fn decompose<F: Field>(l: &Cosheaf<F>, line: &LineTriangulation) -> Result<Barcode, Error> {
    let zz = zigzag_of(l, line);
    decompose_zigzag(&zz)
}

pub fn decompose_zigzag<F: Field>(zz: &Zigzag<F>) -> Result<Barcode, Error> {
    let n = zz.nodes();
    let mut rank = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in i..n {
            rank[i][j] = zz.generalized_rank(i, j);
        }
    }
    let r = |i: i64, j: i64| -> i64 {
        if i < 0 || j >= n as i64 || i > j {
            0
        } else {
            rank[i as usize][j as usize] as i64
        }
    };
    let mut barcode = Barcode::new();
    for i in 0..n as i64 {
        for j in i..n as i64 {
            let m = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1);
            if m < 0 {
                return Err(Error::Input(format!(
                    "negative interval multiplicity at nodes [{i}, {j}]"
                )));
            }
            if m > 0 {
                let bar = IntervalBar::from_node_range(i as usize, j as usize)?;
                barcode.insert(bar, m as usize);
            }
        }
    }
    for t in 0..n {
        if barcode.dim_at_node(t) != zz.node_dim(t) {
            return Err(Error::Input(format!(
                "barcode dimensions disagree with the module at node {t}"
            )));
        }
    }
    Ok(barcode)
}

/// Full soundness check of a decomposition: the barcode must reproduce
/// the generalized rank of the module over every node interval, in
/// particular every pointwise dimension and every single-arrow rank.
pub fn check_decomposition<F: Field>(zz: &Zigzag<F>, barcode: &Barcode) -> Result<(), String> {
    let n = zz.nodes();
    for i in 0..n {
        for j in i..n {
            let from_bars: usize = barcode
                .iter()
                .filter(|(b, _)| {
                    let (lo, hi) = b.node_range();
                    lo <= i && j <= hi
                })
                .map(|(_, m)| m)
                .sum();
            let from_module = zz.generalized_rank(i, j);
            if from_bars != from_module {
                return Err(format!(
                    "rank over nodes [{i}, {j}]: barcode gives {from_bars}, module gives {from_module}"
                ));
            }
        }
    }
    Ok(())
}

/// The level-set barcodes of a map onto a triangulated segment, indexed
/// by fiber degree `q`.
pub fn leray_barcodes<F: Field>(field: F, f: &SimplicialMap) -> Result<Vec<Barcode>, Error> {
    let line = LineTriangulation::from_complex(f.codomain())?;
    let max_q = f.domain().dim().max(0) as usize;
    let mut out = Vec::with_capacity(max_q + 1);
    for q in 0..=max_q {
        let leray = leray_cosheaf(field.clone(), f, q)?;
        out.push(decompose(&leray.cosheaf, &line)?);
    }
    Ok(out)
}

/// `dim H_k(X)` read off the level-set barcodes: closed bars in degree
/// `k` plus open bars in degree `k - 1`.
pub fn homology_from_barcodes(barcodes: &[Barcode], k: usize) -> usize {
    let closed = barcodes.get(k).map(Barcode::count_closed).unwrap_or(0);
    let open = if k == 0 {
        0
    } else {
        barcodes.get(k - 1).map(Barcode::count_open).unwrap_or(0)
    };
    closed + open
}
