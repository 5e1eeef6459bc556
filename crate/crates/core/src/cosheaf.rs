//! Leray cosheaves: fiber chain complexes over each codomain simplex,
//! extension chain maps along face relations, cosheaves over the
//! entrance path category, and cosheaf homology.
//!
//! The entrance path category of `Y` is the poset of simplices of `Y`
//! with a morphism from each simplex to each of its faces; a cosheaf is
//! a functor from it to vector spaces, stored here as one matrix per
//! face relation.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::field::Field;
use crate::linalg::{image, kernel, LinearMap, Matrix, QuotientSpace, Subspace};
use crate::simplicial::{Simplex, SimplicialComplex};
use crate::simplicial_map::SimplicialMap;
use crate::spectral::{differential, page_entry};

/// The chain complex `F_•(tau)` of onto-fiber simplices over `tau`,
/// with the boundary keeping only faces that still map onto `tau`.
#[derive(Clone, Debug)]
pub struct FiberChainComplex<F: Field> {
    tau: Simplex,
    /// `spaces[q] = X^f_q(tau)` in coordinate order.
    spaces: Vec<Vec<Simplex>>,
    /// `boundaries[q] : F_q -> F_{q-1}`; zero rows at `q = 0`.
    boundaries: Vec<Matrix<F>>,
}

impl<F: Field> FiberChainComplex<F> {
    pub fn new(field: F, f: &SimplicialMap, tau: &Simplex) -> Result<Self, Error> {
        let q_max = f.max_fiber_offset(tau);
        let mut spaces = Vec::with_capacity(q_max + 1);
        for q in 0..=q_max {
            spaces.push(f.fiber(tau, q)?.to_vec());
        }
        let mut boundaries = Vec::with_capacity(q_max + 1);
        for q in 0..=q_max {
            let rows = if q == 0 { 0 } else { spaces[q - 1].len() };
            let mut m = Matrix::zeros(field.clone(), rows, spaces[q].len());
            if q > 0 {
                let index: BTreeMap<&Simplex, usize> =
                    spaces[q - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
                for (j, sigma) in spaces[q].iter().enumerate() {
                    for i in 0..=sigma.dim() {
                        let face = sigma.face(i).expect("fiber simplices have dimension >= 1 here");
                        if let Some(&r) = index.get(&face) {
                            let sign = field.from_int(if i % 2 == 0 { 1 } else { -1 });
                            m.set(r, j, sign);
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        let fcc = FiberChainComplex { tau: tau.clone(), spaces, boundaries };
        debug_assert!(fcc.boundary_squares_to_zero(&field));
        Ok(fcc)
    }

    pub fn tau(&self) -> &Simplex {
        &self.tau
    }

    pub fn max_offset(&self) -> usize {
        self.spaces.len().saturating_sub(1)
    }

    pub fn basis(&self, q: usize) -> &[Simplex] {
        self.spaces.get(q).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim_q(&self, q: usize) -> usize {
        self.basis(q).len()
    }

    pub fn boundary(&self, q: usize) -> Option<&Matrix<F>> {
        self.boundaries.get(q)
    }

    fn boundary_squares_to_zero(&self, _field: &F) -> bool {
        (1..self.boundaries.len())
            .all(|q| self.boundaries[q - 1].mul_mat(&self.boundaries[q]).is_zero())
    }

    /// `H_q(F_•(tau))` presented with coset representatives in the
    /// `X^f_q(tau)` coordinate system.
    pub fn homology(&self, field: F, q: usize) -> QuotientSpace<F> {
        let n = self.dim_q(q);
        let cycles = match self.boundaries.get(q) {
            Some(b) if q > 0 => kernel(b),
            _ => Subspace::full(field.clone(), n),
        };
        let bdries = match self.boundaries.get(q + 1) {
            Some(b) => image(b),
            None => Subspace::zero(field, n),
        };
        QuotientSpace::new(cycles, bdries).expect("fiber boundaries are fiber cycles")
    }
}

/// The image of one fiber simplex under the extension map towards a
/// face `tau' <= tau`: its maximal face over `tau'` with a sign, or
/// `None` when the fiber offset drops.
///
/// Computed as a composite of single vertex deletions, one per vertex
/// of `tau` outside `tau'`, taken in decreasing index order. Deleting
/// the (necessarily alone) preimage `d` of the `j`-th vertex of the
/// current base simplex contributes the parity of
/// `pos(d) + j + dim sigma + dim tau`. The composite is independent of
/// the deletion order, which is what makes the assignment functorial.
pub fn extend_simplex(
    f: &SimplicialMap,
    sigma: &Simplex,
    tau: &Simplex,
    tau_prime: &Simplex,
) -> Option<(Simplex, i64)> {
    debug_assert!(tau_prime.is_face_of(tau));
    let mut cur_sigma = sigma.vertices().to_vec();
    let mut cur_tau = tau.vertices().to_vec();
    let mut sign = 1i64;
    let deleted: Vec<u32> =
        tau.vertices().iter().copied().filter(|w| !tau_prime.vertices().contains(w)).rev().collect();
    for w in deleted {
        let preimages: Vec<usize> = cur_sigma
            .iter()
            .enumerate()
            .filter(|(_, u)| f.vertex_image(**u) == w)
            .map(|(i, _)| i)
            .collect();
        if preimages.len() != 1 {
            return None; // the offset drops: send sigma to zero
        }
        let pos = preimages[0];
        let j = cur_tau.iter().position(|v| *v == w).expect("w is a vertex of the current base");
        let exponent = pos + j + (cur_sigma.len() - 1) + (cur_tau.len() - 1);
        if exponent % 2 == 1 {
            sign = -sign;
        }
        cur_sigma.remove(pos);
        cur_tau.remove(j);
    }
    Some((Simplex::from_unsorted(&cur_sigma), sign))
}

/// The matrix of `F_q(tau' <= tau) : F_q(tau) -> F_q(tau')` in the
/// fiber coordinate systems.
pub fn extension_chain_map<F: Field>(
    field: F,
    f: &SimplicialMap,
    tau: &Simplex,
    tau_prime: &Simplex,
    q: usize,
) -> Result<Matrix<F>, Error> {
    let dom = f.fiber(tau, q)?;
    let cod = f.fiber(tau_prime, q)?;
    let index: BTreeMap<&Simplex, usize> = cod.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = Matrix::zeros(field.clone(), cod.len(), dom.len());
    for (j, sigma) in dom.iter().enumerate() {
        if let Some((target, sign)) = extend_simplex(f, sigma, tau, tau_prime) {
            let r = index[&target];
            m.set(r, j, field.from_int(sign));
        }
    }
    Ok(m)
}

/// A cosheaf of vector spaces over a simplicial complex, stored as a
/// dimension per simplex and a matrix per proper face relation.
/// Functoriality over composable face relations is validated at
/// construction.
#[derive(Clone, Debug)]
pub struct Cosheaf<F: Field> {
    field: F,
    base: SimplicialComplex,
    dims: BTreeMap<Simplex, usize>,
    maps: BTreeMap<(Simplex, Simplex), Matrix<F>>,
}

impl<F: Field> Cosheaf<F> {
    pub fn new(
        field: F,
        base: SimplicialComplex,
        dims: BTreeMap<Simplex, usize>,
        maps: BTreeMap<(Simplex, Simplex), Matrix<F>>,
    ) -> Result<Self, Error> {
        let c = Cosheaf { field, base, dims, maps };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), Error> {
        for tau in self.base.all_simplices() {
            if !self.dims.contains_key(tau) {
                return Err(Error::Input(format!("cosheaf has no value on {tau}")));
            }
        }
        for tau in self.base.all_simplices() {
            for face in tau.all_faces() {
                if face == *tau {
                    continue;
                }
                let m = self
                    .maps
                    .get(&(tau.clone(), face.clone()))
                    .ok_or_else(|| Error::Input(format!("cosheaf has no map {tau} -> {face}")))?;
                if m.rows() != self.dims[&face] || m.cols() != self.dims[tau] {
                    return Err(Error::Input(format!("cosheaf map {tau} -> {face} has wrong shape")));
                }
            }
        }
        // functoriality over every composable pair
        for tau in self.base.all_simplices() {
            for mid in tau.all_faces() {
                if mid == *tau {
                    continue;
                }
                for low in mid.all_faces() {
                    if low == mid {
                        continue;
                    }
                    let direct = self.map(tau, &low);
                    let composite = self.map(&mid, &low).mul_mat(&self.map(tau, &mid));
                    if direct != composite {
                        return Err(Error::Input(format!(
                            "cosheaf is not functorial along {tau} -> {mid} -> {low}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The constant cosheaf of a given stalk dimension with identity
    /// maps everywhere.
    pub fn constant(field: F, base: SimplicialComplex, stalk_dim: usize) -> Self {
        let dims = base.all_simplices().map(|s| (s.clone(), stalk_dim)).collect();
        let mut maps = BTreeMap::new();
        for tau in base.all_simplices() {
            for face in tau.all_faces() {
                if face != *tau {
                    maps.insert((tau.clone(), face), Matrix::identity(field.clone(), stalk_dim));
                }
            }
        }
        Cosheaf { field, base, dims, maps }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn dim_at(&self, tau: &Simplex) -> usize {
        self.dims.get(tau).copied().unwrap_or(0)
    }

    /// `L(tau' <= tau) : L(tau) -> L(tau')`, the identity when the two
    /// coincide.
    pub fn map(&self, tau: &Simplex, tau_prime: &Simplex) -> Matrix<F> {
        if tau == tau_prime {
            return Matrix::identity(self.field.clone(), self.dim_at(tau));
        }
        self.maps[&(tau.clone(), tau_prime.clone())].clone()
    }

    /// Coordinate layout of `C_p(Y; L)`: per `p`-simplex, its offset in
    /// the direct sum.
    pub fn chain_layout(&self, p: usize) -> Vec<(Simplex, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for tau in self.base.simplices(p) {
            out.push((tau.clone(), offset));
            offset += self.dim_at(tau);
        }
        out
    }

    pub fn chain_dim(&self, p: usize) -> usize {
        self.base.simplices(p).iter().map(|t| self.dim_at(t)).sum()
    }

    /// Boundary of the cosheaf chain complex,
    /// `a |-> sum_i (-1)^i L(d_i tau <= tau)(a)`.
    pub fn boundary_matrix(&self, p: usize) -> Matrix<F> {
        let rows = if p == 0 { 0 } else { self.chain_dim(p - 1) };
        let cols = self.chain_dim(p);
        let mut m = Matrix::zeros(self.field.clone(), rows, cols);
        if p == 0 {
            return m;
        }
        let row_layout: BTreeMap<Simplex, usize> = self.chain_layout(p - 1).into_iter().collect();
        for (tau, col_off) in self.chain_layout(p) {
            for i in 0..=tau.dim() {
                let face = tau.face(i).expect("p >= 1");
                let block = self.map(&tau, &face);
                let sign = self.field.from_int(if i % 2 == 0 { 1 } else { -1 });
                let row_off = row_layout[&face];
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        let v = self.field.mul(&sign, block.get(r, c));
                        let prev = m.get(row_off + r, col_off + c).clone();
                        m.set(row_off + r, col_off + c, self.field.add(&prev, &v));
                    }
                }
            }
        }
        m
    }

    /// `H_p(Y; L)` with coset representatives in the `C_p(Y; L)`
    /// coordinates.
    pub fn homology(&self, p: usize) -> QuotientSpace<F> {
        let n = self.chain_dim(p);
        let cycles = if p == 0 {
            Subspace::full(self.field.clone(), n)
        } else {
            kernel(&self.boundary_matrix(p))
        };
        let bdries = if self.chain_dim(p + 1) == 0 {
            Subspace::zero(self.field.clone(), n)
        } else {
            image(&self.boundary_matrix(p + 1))
        };
        QuotientSpace::new(cycles, bdries).expect("cosheaf boundaries are cycles")
    }

    pub fn homology_dim(&self, p: usize) -> usize {
        self.homology(p).dim()
    }
}

/// The `q`-th Leray cosheaf of a map, with the fiber homology
/// presentations its stalk bases came from.
#[derive(Clone, Debug)]
pub struct LerayCosheaf<F: Field> {
    pub q: usize,
    pub cosheaf: Cosheaf<F>,
    /// Per simplex of `Y`: the `H_q(F_•(tau))` presentation whose coset
    /// representatives are the stalk basis.
    pub presentations: BTreeMap<Simplex, QuotientSpace<F>>,
    pub fibers: BTreeMap<Simplex, FiberChainComplex<F>>,
}

/// Builds `L^f_q`: fiber homology pointwise, with maps induced by the
/// extension chain maps via lift, map, project.
pub fn leray_cosheaf<F: Field>(field: F, f: &SimplicialMap, q: usize) -> Result<LerayCosheaf<F>, Error> {
    let y = f.codomain().clone();
    let mut fibers = BTreeMap::new();
    let mut presentations = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for tau in y.all_simplices() {
        let fcc = FiberChainComplex::new(field.clone(), f, tau)?;
        let pres = fcc.homology(field.clone(), q);
        dims.insert(tau.clone(), pres.dim());
        fibers.insert(tau.clone(), fcc);
        presentations.insert(tau.clone(), pres);
    }
    let mut maps = BTreeMap::new();
    for tau in y.all_simplices() {
        for face in tau.all_faces() {
            if face == *tau {
                continue;
            }
            let ext = extension_chain_map(field.clone(), f, tau, &face, q)?;
            let dom = &presentations[tau];
            let cod = &presentations[&face];
            let mut m = Matrix::zeros(field.clone(), cod.dim(), dom.dim());
            for j in 0..dom.dim() {
                let cycle = dom.reps().column(j);
                let img = ext.mul_vec(&cycle);
                let coords = cod
                    .class_coords(&img)
                    .expect("extension maps send fiber cycles to fiber cycles");
                for i in 0..cod.dim() {
                    m.set(i, j, coords[i].clone());
                }
            }
            maps.insert((tau.clone(), face), m);
        }
    }
    let cosheaf = Cosheaf::new(field, y, dims, maps)?;
    Ok(LerayCosheaf { q, cosheaf, presentations, fibers })
}

/// Checks that the extension chain maps of `f` commute with the fiber
/// boundaries, square by square. A failure is returned as a message.
pub fn check_extension_chain_maps<F: Field>(field: F, f: &SimplicialMap) -> Result<(), String> {
    for tau in f.codomain().all_simplices() {
        let fcc_tau = FiberChainComplex::new(field.clone(), f, tau).map_err(|e| e.to_string())?;
        for face in tau.all_faces() {
            if face == *tau {
                continue;
            }
            let fcc_face = FiberChainComplex::new(field.clone(), f, &face).map_err(|e| e.to_string())?;
            for q in 1..=fcc_tau.max_offset() {
                let top = extension_chain_map(field.clone(), f, tau, &face, q).map_err(|e| e.to_string())?;
                let bottom =
                    extension_chain_map(field.clone(), f, tau, &face, q - 1).map_err(|e| e.to_string())?;
                let d_tau = fcc_tau.boundary(q).expect("boundary exists up to max offset");
                let zero_rows = fcc_face.dim_q(q.saturating_sub(1));
                let d_face = match fcc_face.boundary(q) {
                    Some(b) => b.clone(),
                    None => Matrix::zeros(field.clone(), zero_rows, 0),
                };
                let lhs = if fcc_face.dim_q(q) == top.rows() && d_face.cols() == top.rows() {
                    d_face.mul_mat(&top)
                } else {
                    Matrix::zeros(field.clone(), zero_rows, top.cols())
                };
                let rhs = bottom.mul_mat(d_tau);
                if lhs != rhs {
                    return Err(format!("extension square fails at {tau} -> {face}, q = {q}"));
                }
            }
        }
    }
    Ok(())
}

/// Report of the page-two comparison `H_p(Y; L^f_q) ≅ E^2_{p,q}`,
/// including the chain-level identifications of the low pages.
pub fn verify_page_two<F: Field>(field: F, f: &SimplicialMap, p: i64, q: i64) -> Result<(), String> {
    if q < 0 {
        return Ok(());
    }
    let leray = leray_cosheaf(field.clone(), f, q as usize).map_err(|e| e.to_string())?;
    let e2 = page_entry(field.clone(), f, 2, p, q);
    let h = if p >= 0 { leray.cosheaf.homology_dim(p as usize) } else { 0 };
    if e2.dim() != h {
        return Err(format!(
            "dim E^2_{{{p},{q}}} = {} but dim H_{p}(Y; L_{q}) = {h}",
            e2.dim()
        ));
    }
    if p >= 0 {
        verify_mu(&field, f, &leray, p, q)?;
        verify_nu(&field, f, &leray, p, q)?;
    }
    Ok(())
}

/// Coordinate layout of `⊕_{tau in Y_p} F_q(tau)` and the position of
/// each fiber simplex inside it.
fn fiberwise_layout(f: &SimplicialMap, p: usize, q: usize) -> BTreeMap<Simplex, usize> {
    let mut layout = BTreeMap::new();
    let mut offset = 0;
    for tau in f.codomain().simplices(p) {
        for sigma in f.fiber(tau, q).expect("tau is in the codomain") {
            layout.insert(sigma.clone(), offset);
            offset += 1;
        }
    }
    layout
}

/// The `mu` identification: `E^0_{p,q}` has the simplices with image of
/// dimension exactly `p` as representatives, and under simplex-to-self
/// the differential `d^0` is the direct sum of the fiber boundaries.
fn verify_mu<F: Field>(
    field: &F,
    f: &SimplicialMap,
    leray: &LerayCosheaf<F>,
    p: i64,
    q: i64,
) -> Result<(), String> {
    let dom = page_entry(field.clone(), f, 0, p, q);
    let cod = page_entry(field.clone(), f, 0, p, q - 1);
    let d0 = differential(field.clone(), f, &dom, &cod);

    let perm_dom = mu_permutation(field, f, &dom, p as usize, q as usize)?;
    // big fiberwise boundary ⊕ ∂^{F(tau)}_q
    let rows = if q == 0 { 0 } else { fiberwise_layout(f, p as usize, q as usize - 1).len() };
    let cols = fiberwise_layout(f, p as usize, q as usize).len();
    let mut big = Matrix::zeros(field.clone(), rows, cols);
    if q > 0 {
        let row_layout = fiberwise_layout(f, p as usize, q as usize - 1);
        let col_layout = fiberwise_layout(f, p as usize, q as usize);
        for tau in f.codomain().simplices(p as usize) {
            let fcc = &leray.fibers[tau];
            if let Some(b) = fcc.boundary(q as usize) {
                for (j, sigma) in fcc.basis(q as usize).iter().enumerate() {
                    for (i, face) in fcc.basis(q as usize - 1).iter().enumerate() {
                        big.set(row_layout[face], col_layout[sigma], b.get(i, j).clone());
                    }
                }
            }
        }
        let perm_cod = mu_permutation(field, f, &cod, p as usize, q as usize - 1)?;
        let lhs = perm_cod.mul_mat(d0.matrix());
        let rhs = big.mul_mat(&perm_dom);
        if lhs != rhs {
            return Err(format!("d^0_{{{p},{q}}} differs from the fiberwise boundary under mu"));
        }
    } else if !d0.is_zero() {
        return Err(format!("d^0_{{{p},0}} should vanish into F_{{-1}}"));
    }
    Ok(())
}

/// Permutation taking `E^0` representative coordinates to the fiberwise
/// direct-sum coordinates; fails if a representative is not a unit
/// vector on a simplex with image of dimension exactly `p`.
fn mu_permutation<F: Field>(
    field: &F,
    f: &SimplicialMap,
    entry: &crate::spectral::PageEntry<F>,
    p: usize,
    q: usize,
) -> Result<Matrix<F>, String> {
    let layout = fiberwise_layout(f, p, q);
    if entry.dim() != layout.len() {
        return Err(format!(
            "dim E^0_{{{p},{q}}} = {} but there are {} fiber simplices",
            entry.dim(),
            layout.len()
        ));
    }
    let total = (p + q) as usize;
    let simplices = f.domain().simplices(total);
    let mut perm = Matrix::zeros(field.clone(), layout.len(), entry.dim());
    for j in 0..entry.dim() {
        let col = entry.presentation.reps().column(j);
        let support: Vec<usize> =
            (0..col.len()).filter(|&i| !field.is_zero(&col[i])).collect();
        if support.len() != 1 || col[support[0]] != field.one() {
            return Err("E^0 representative is not a unit simplex vector".into());
        }
        let sigma = &simplices[support[0]];
        let row = *layout
            .get(sigma)
            .ok_or_else(|| format!("representative simplex {sigma} has image dimension != {p}"))?;
        perm.set(row, j, field.one());
    }
    Ok(perm)
}

/// The `nu` identification: restricting an `E^1` representative cycle
/// to each fiber and projecting to fiber homology is an isomorphism
/// onto `C_p(Y; L^f_q)` intertwining `d^1` with the cosheaf boundary.
fn verify_nu<F: Field>(
    field: &F,
    f: &SimplicialMap,
    leray: &LerayCosheaf<F>,
    p: i64,
    q: i64,
) -> Result<(), String> {
    let dom = page_entry(field.clone(), f, 1, p, q);
    let cod = page_entry(field.clone(), f, 1, p - 1, q);
    let d1 = differential(field.clone(), f, &dom, &cod);

    let nu_p = nu_matrix(field, f, leray, &dom, p, q)?;
    if nu_p.rank() != leray.cosheaf.chain_dim(p as usize) || nu_p.rows() != nu_p.cols() {
        return Err(format!("nu_{p} is not an isomorphism at q = {q}"));
    }
    if p > 0 {
        let nu_prev = nu_matrix(field, f, leray, &cod, p - 1, q)?;
        let lhs = leray.cosheaf.boundary_matrix(p as usize).mul_mat(&nu_p);
        let rhs = nu_prev.mul_mat(d1.matrix());
        if lhs != rhs {
            return Err(format!("d^1_{{{p},{q}}} differs from the cosheaf boundary under nu"));
        }
    } else if !d1.is_zero() {
        return Err(format!("d^1_{{0,{q}}} should vanish"));
    }
    Ok(())
}

fn nu_matrix<F: Field>(
    field: &F,
    f: &SimplicialMap,
    leray: &LerayCosheaf<F>,
    entry: &crate::spectral::PageEntry<F>,
    p: i64,
    q: i64,
) -> Result<Matrix<F>, String> {
    let p = p as usize;
    let q = q as usize;
    let chain_dim = leray.cosheaf.chain_dim(p);
    if entry.dim() != chain_dim {
        return Err(format!(
            "dim E^1_{{{p},{q}}} = {} but dim C_{p}(Y; L_{q}) = {chain_dim}",
            entry.dim()
        ));
    }
    let total = p + q;
    let simplex_index: BTreeMap<&Simplex, usize> =
        f.domain().simplices(total).iter().enumerate().map(|(i, s)| (s, i)).collect();
    let layout = leray.cosheaf.chain_layout(p);
    let mut nu = Matrix::zeros(field.clone(), chain_dim, entry.dim());
    for j in 0..entry.dim() {
        let chain = entry.presentation.reps().column(j);
        for (tau, offset) in &layout {
            let fcc = &leray.fibers[tau];
            // restrict the representative cycle to the fiber over tau
            let restricted: Vec<F::Elem> = fcc
                .basis(q)
                .iter()
                .map(|sigma| chain[simplex_index[sigma]].clone())
                .collect();
            let coords = leray.presentations[tau]
                .class_coords(&restricted)
                .ok_or_else(|| format!("restriction of an E^1 cycle to {tau} is not a fiber cycle"))?;
            for (i, c) in coords.into_iter().enumerate() {
                nu.set(offset + i, j, c);
            }
        }
    }
    Ok(nu)
}

/// Rank of every map of a cosheaf and dimension at every simplex, the
/// raw data of cosheaf reports.
pub fn cosheaf_map_ranks<F: Field>(l: &Cosheaf<F>) -> BTreeMap<(Simplex, Simplex), usize> {
    let mut out = BTreeMap::new();
    for tau in l.base().all_simplices() {
        for face in tau.all_faces() {
            if face != *tau {
                out.insert((tau.clone(), face.clone()), LinearMap::from_matrix(l.map(tau, &face)).rank());
            }
        }
    }
    out
}
