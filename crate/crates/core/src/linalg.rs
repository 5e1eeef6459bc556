//! Exact dense linear algebra over a [`Field`]: matrices, canonical
//! echelon forms, and the subspace calculus (kernel, image, intersection,
//! sum, preimage, quotient, induced maps) that the spectral sequence and
//! cosheaf modules are built from.
//!
//! Subspaces are stored as reduced column-echelon bases with pivots
//! ordered by coordinate index. The form is canonical: two equal
//! subspaces have identical basis matrices, so subspace equality is a
//! plain data comparison.

use crate::error::Error;
use crate::field::Field;

/// A dense `rows x cols` matrix over the field `F`, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.field.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "mul_vec shape mismatch");
        let k = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = k.zero();
                for j in 0..self.cols {
                    acc = k.add(&acc, &k.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "mul_mat shape mismatch");
        let k = self.field.clone();
        Matrix::from_fn(k.clone(), self.rows, other.cols, |i, j| {
            let mut acc = k.zero();
            for t in 0..self.cols {
                acc = k.add(&acc, &k.mul(self.get(i, t), other.get(t, j)));
            }
            acc
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place Gauss-Jordan elimination to reduced row-echelon form.
    /// Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let k = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !k.is_zero(self.get(r, col))) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = k.inv(self.get(row, col));
            for j in col..self.cols {
                let v = k.mul(self.get(row, j), &inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !k.is_zero(self.get(r, col)) {
                    let factor = self.get(r, col).clone();
                    for j in col..self.cols {
                        let v = k.sub(self.get(r, j), &k.mul(&factor, self.get(row, j)));
                        self.set(r, j, v);
                    }
                    self.set(r, col, k.zero());
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Canonical reduced column-echelon form of the column span.
    ///
    /// Returns `(echelon, rank, pivots)` where `echelon` has one column
    /// per pivot, each with a leading 1 at its pivot coordinate, pivot
    /// coordinates strictly increasing and zeroed in all other columns.
    pub fn reduce(&self) -> (Matrix<F>, usize, Vec<usize>) {
        let mut t = self.transpose();
        let pivots = t.rref_in_place();
        let rank = pivots.len();
        let echelon = Matrix::from_fn(self.field.clone(), self.rows, rank, |i, j| t.get(j, i).clone());
        (echelon, rank, pivots)
    }
}

/// A subspace of `k^ambient`, stored as a canonical reduced
/// column-echelon basis.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// The span of the columns of `generators`.
    pub fn span(generators: &Matrix<F>) -> Self {
        let (basis, _, pivots) = generators.reduce();
        Subspace { ambient: generators.rows(), basis, pivots }
    }

    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace::span(&Matrix::zeros(field, ambient, 0))
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Subspace::span(&Matrix::identity(field, ambient))
    }

    /// The coordinate subspace spanned by the given unit vectors.
    pub fn coordinate(field: F, ambient: usize, indices: &[usize]) -> Self {
        let mut m = Matrix::zeros(field, ambient, indices.len());
        for (j, &i) in indices.iter().enumerate() {
            let one = m.field.one();
            m.set(i, j, one);
        }
        Subspace::span(&m)
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    /// Residual of `v` after reduction against the basis; zero iff `v`
    /// lies in the subspace. The canonical form makes this one sweep:
    /// the coefficient on basis column `j` is `v[pivots[j]]`.
    fn residual(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let k = self.field().clone();
        let mut r = v.to_vec();
        for (j, &p) in self.pivots.iter().enumerate() {
            let c = r[p].clone();
            if k.is_zero(&c) {
                continue;
            }
            for i in 0..self.ambient {
                r[i] = k.sub(&r[i], &k.mul(&c, self.basis.get(i, j)));
            }
        }
        r
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let k = self.field();
        self.residual(v).iter().all(|e| k.is_zero(e))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies here.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains(&self, other: &Subspace<F>) -> bool {
        other.ambient == self.ambient
            && (0..other.dim()).all(|j| self.contains_vector(&other.basis.column(j)))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>, Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(Subspace::span(&self.basis.hstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>, Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        // v = U x = V y; solve [U | V] (x, -y) = 0 and read off U x.
        let stacked = self.basis.hstack(&other.basis);
        let ker = kernel(&stacked);
        let k = self.field().clone();
        let gens = Matrix::from_fn(k.clone(), self.ambient, ker.dim(), |i, j| {
            let mut acc = k.zero();
            for t in 0..self.dim() {
                acc = k.add(&acc, &k.mul(self.basis.get(i, t), ker.basis.get(t, j)));
            }
            acc
        });
        Ok(Subspace::span(&gens))
    }

    /// Image of this subspace under `m`.
    pub fn map_through(&self, m: &Matrix<F>) -> Subspace<F> {
        assert_eq!(m.cols(), self.ambient, "map_through shape mismatch");
        Subspace::span(&m.mul_mat(&self.basis))
    }
}

/// Kernel `{v : Mv = 0}` as a canonical subspace of the column space.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let k = m.field().clone();
    let mut r = m.clone();
    let pivots = r.rref_in_place();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut gens = Matrix::zeros(k.clone(), m.cols(), free.len());
    for (j, &fc) in free.iter().enumerate() {
        gens.set(fc, j, k.one());
        for (row, &pc) in pivots.iter().enumerate() {
            let v = k.neg(r.get(row, fc));
            gens.set(pc, j, v);
        }
    }
    Subspace::span(&gens)
}

/// Image (column span) of `m` as a canonical subspace.
pub fn image<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::span(m)
}

/// Preimage `{v : Mv in W}`; contains `kernel(m)`.
pub fn preimage<F: Field>(m: &Matrix<F>, w: &Subspace<F>) -> Result<Subspace<F>, Error> {
    if m.rows() != w.ambient_dim() {
        return Err(Error::AmbientMismatch(m.rows(), w.ambient_dim()));
    }
    // Mv = W y: kernel of [M | -W] projected to the v part.
    let k = m.field().clone();
    let neg_w = Matrix::from_fn(k.clone(), w.ambient_dim(), w.dim(), |i, j| k.neg(w.basis().get(i, j)));
    let ker = kernel(&m.hstack(&neg_w));
    let gens = Matrix::from_fn(k, m.cols(), ker.dim(), |i, j| ker.basis().get(i, j).clone());
    Ok(Subspace::span(&gens))
}

/// A quotient `numerator / denominator` presented by coset
/// representatives completing the denominator basis to a basis of the
/// numerator.
#[derive(Clone, PartialEq, Debug)]
pub struct QuotientSpace<F: Field> {
    numerator: Subspace<F>,
    denominator: Subspace<F>,
    reps: Matrix<F>,
}

impl<F: Field> QuotientSpace<F> {
    pub fn new(numerator: Subspace<F>, denominator: Subspace<F>) -> Result<Self, Error> {
        if numerator.ambient_dim() != denominator.ambient_dim() {
            return Err(Error::AmbientMismatch(numerator.ambient_dim(), denominator.ambient_dim()));
        }
        if !numerator.contains(&denominator) {
            return Err(Error::NotASubspace);
        }
        let k = numerator.field().clone();
        let mut span_so_far = denominator.clone();
        let mut rep_cols: Vec<Vec<F::Elem>> = Vec::new();
        for j in 0..numerator.dim() {
            let col = numerator.basis().column(j);
            if !span_so_far.contains_vector(&col) {
                let single = Matrix::from_fn(k.clone(), numerator.ambient_dim(), 1, |i, _| col[i].clone());
                span_so_far = span_so_far.sum(&Subspace::span(&single))?;
                rep_cols.push(col);
            }
        }
        debug_assert_eq!(rep_cols.len(), numerator.dim() - denominator.dim());
        let reps = Matrix::from_fn(k, numerator.ambient_dim(), rep_cols.len(), |i, j| rep_cols[j][i].clone());
        Ok(QuotientSpace { numerator, denominator, reps })
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.numerator.ambient_dim()
    }

    pub fn numerator(&self) -> &Subspace<F> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace<F> {
        &self.denominator
    }

    /// Coset representatives, one column per quotient basis element.
    pub fn reps(&self) -> &Matrix<F> {
        &self.reps
    }

    /// Coordinates of the class of `v` on the representative basis.
    /// `None` if `v` is not in the numerator.
    pub fn class_coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        // v = den * x + reps * y uniquely; solve against [den | reps].
        let stacked = self.denominator.basis().hstack(&self.reps);
        let sol = solve(&stacked, v)?;
        Some(sol[self.denominator.dim()..].to_vec())
    }

    /// Lifts quotient coordinates back to a chain in the ambient space.
    pub fn lift(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        self.reps.mul_vec(coords)
    }
}

/// One exact solution of `A x = b`, if any.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows(), b.len(), "solve shape mismatch");
    let k = a.field().clone();
    let bm = Matrix::from_fn(k.clone(), b.len(), 1, |i, _| b[i].clone());
    let mut aug = a.hstack(&bm);
    let pivots = aug.rref_in_place();
    if pivots.contains(&a.cols()) {
        return None; // inconsistent
    }
    let mut x = vec![k.zero(); a.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug.get(row, a.cols()).clone();
    }
    Some(x)
}

/// A linear map between quotient presentations, stored as its matrix on
/// coset representatives.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearMap<F: Field> {
    matrix: Matrix<F>,
}

impl<F: Field> LinearMap<F> {
    /// The map induced on quotients by an ambient matrix `m`.
    ///
    /// Checks that `m` carries `dom.numerator` into `cod.numerator` and
    /// `dom.denominator` into `cod.denominator`. A violation means the
    /// caller's subspaces are wrong, so this panics.
    pub fn induced(m: &Matrix<F>, dom: &QuotientSpace<F>, cod: &QuotientSpace<F>) -> Self {
        assert_eq!(m.cols(), dom.ambient_dim(), "induced map domain mismatch");
        assert_eq!(m.rows(), cod.ambient_dim(), "induced map codomain mismatch");
        let num_img = dom.numerator.map_through(m);
        assert!(
            cod.numerator.contains(&num_img),
            "induced map is not well defined: numerator escapes the codomain numerator"
        );
        let den_img = dom.denominator.map_through(m);
        assert!(
            cod.denominator.contains(&den_img),
            "induced map is not well defined: denominator escapes the codomain denominator"
        );
        let k = m.field().clone();
        let mut matrix = Matrix::zeros(k, cod.dim(), dom.dim());
        for j in 0..dom.dim() {
            let img = m.mul_vec(&dom.reps.column(j));
            let coords = cod
                .class_coords(&img)
                .expect("induced map image escaped the codomain numerator");
            for i in 0..cod.dim() {
                matrix.set(i, j, coords[i].clone());
            }
        }
        LinearMap { matrix }
    }

    pub fn from_matrix(matrix: Matrix<F>) -> Self {
        LinearMap { matrix }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}
