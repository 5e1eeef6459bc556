//! Simplicial maps as vertex assignments, their onto-fibers, and the
//! bigraded subspaces of the domain chain complex induced by lifting the
//! skeleton filtration of the codomain.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::field::Field;
use crate::linalg::Subspace;
use crate::simplicial::{Simplex, SimplicialComplex};

/// A simplicial map `f : X -> Y` given by a total vertex assignment.
/// Simpliciality (every simplex image spans a codomain simplex) is
/// validated at construction.
#[derive(Clone, PartialEq, Debug)]
pub struct SimplicialMap {
    domain: SimplicialComplex,
    codomain: SimplicialComplex,
    vertex_map: BTreeMap<u32, u32>,
    /// Onto-fiber buckets: `(tau, q) -> X^f_q(tau)` in coordinate order.
    fibers: BTreeMap<(Simplex, usize), Vec<Simplex>>,
}

impl SimplicialMap {
    pub fn new(
        domain: SimplicialComplex,
        codomain: SimplicialComplex,
        vertex_map: BTreeMap<u32, u32>,
    ) -> Result<Self, Error> {
        Self::validate(&domain, &codomain, &vertex_map)?;
        let mut fibers: BTreeMap<(Simplex, usize), Vec<Simplex>> = BTreeMap::new();
        for sigma in domain.all_simplices() {
            let tau = image_simplex(&vertex_map, sigma);
            let q = sigma.dim() - tau.dim();
            fibers.entry((tau, q)).or_default().push(sigma.clone());
        }
        Ok(SimplicialMap { domain, codomain, vertex_map, fibers })
    }

    /// Checks totality of the vertex map and simpliciality of the
    /// induced simplex assignment, reporting the first violation.
    pub fn validate(
        domain: &SimplicialComplex,
        codomain: &SimplicialComplex,
        vertex_map: &BTreeMap<u32, u32>,
    ) -> Result<(), Error> {
        for v in domain.vertex_ids() {
            if !vertex_map.contains_key(&v) {
                return Err(Error::PartialVertexMap(v));
            }
        }
        for sigma in domain.all_simplices() {
            let tau = image_simplex(vertex_map, sigma);
            if !codomain.contains(&tau) {
                return Err(Error::NotSimplicial {
                    simplex: sigma.vertices().to_vec(),
                    image: tau.vertices().to_vec(),
                });
            }
        }
        Ok(())
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        let vm = k.vertex_ids().into_iter().map(|v| (v, v)).collect();
        SimplicialMap::new(k.clone(), k.clone(), vm).expect("identity is simplicial")
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn codomain(&self) -> &SimplicialComplex {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &BTreeMap<u32, u32> {
        &self.vertex_map
    }

    pub fn vertex_image(&self, v: u32) -> u32 {
        self.vertex_map[&v]
    }

    /// `m = dim Y`, the page on which convergence is guaranteed minus 1.
    pub fn codomain_dim(&self) -> i64 {
        self.codomain.dim()
    }

    pub fn image_of(&self, sigma: &Simplex) -> Simplex {
        image_simplex(&self.vertex_map, sigma)
    }

    /// The onto-fiber `X^f_q(tau)`: domain simplices of dimension
    /// `dim tau + q` whose image is exactly `tau`.
    pub fn fiber(&self, tau: &Simplex, q: usize) -> Result<&[Simplex], Error> {
        if !self.codomain.contains(tau) {
            return Err(Error::MissingSimplex(tau.vertices().to_vec()));
        }
        Ok(self
            .fibers
            .get(&(tau.clone(), q))
            .map(|v| v.as_slice())
            .unwrap_or(&[]))
    }

    /// Largest fiber offset present over `tau`.
    pub fn max_fiber_offset(&self, tau: &Simplex) -> usize {
        self.fibers
            .iter()
            .filter(|((t, _), _)| t == tau)
            .map(|((_, q), _)| *q)
            .max()
            .unwrap_or(0)
    }

    /// The bigraded subspace of `C_{p+q}(X)` spanned by the
    /// `(p+q)`-simplices whose image has dimension at most `p`.
    /// Zero when `p < 0` or `p + q < 0`; the full chain space once
    /// `p >= dim Y`.
    pub fn bigraded_subspace<F: Field>(&self, field: F, p: i64, q: i64) -> Subspace<F> {
        let total = p + q;
        if total < 0 {
            return Subspace::zero(field, 0);
        }
        let simplices = self.domain.simplices(total as usize);
        if p < 0 {
            return Subspace::zero(field, simplices.len());
        }
        let indices: Vec<usize> = simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| (self.image_of(s).dim() as i64) <= p)
            .map(|(i, _)| i)
            .collect();
        Subspace::coordinate(field, simplices.len(), &indices)
    }
}

fn image_simplex(vertex_map: &BTreeMap<u32, u32>, sigma: &Simplex) -> Simplex {
    let imgs: Vec<u32> = sigma.vertices().iter().map(|v| vertex_map[v]).collect();
    Simplex::from_unsorted(&imgs)
}
