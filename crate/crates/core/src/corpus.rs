//! Seeded random simplicial maps for randomized test corpora.
//!
//! Maps are generated codomain-first: pick a small base complex, assign
//! each base vertex a nonempty set of domain vertices, then build domain
//! simplices by choosing at least one vertex over each vertex of a base
//! simplex. Simpliciality holds by construction, so every draw is valid.

use std::collections::BTreeMap;

use rand::prelude::*;

use crate::simplicial::{Simplex, SimplicialComplex};
use crate::simplicial_map::SimplicialMap;

/// Shape limits of a random draw.
#[derive(Clone, Copy, Debug)]
pub struct CorpusConfig {
    /// Maximum dimension of the codomain.
    pub max_codomain_dim: usize,
    /// Number of generator draws for the codomain.
    pub codomain_generators: usize,
    /// Codomain vertex pool size.
    pub codomain_vertices: u32,
    /// Maximum domain vertices over each codomain vertex.
    pub max_fiber_vertices: usize,
    /// Number of generator draws for the domain.
    pub domain_generators: usize,
    /// Hard cap on the number of domain simplices.
    pub max_domain_simplices: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_codomain_dim: 3,
            codomain_generators: 4,
            codomain_vertices: 6,
            max_fiber_vertices: 3,
            domain_generators: 8,
            max_domain_simplices: 200,
        }
    }
}

/// A random simplicial map within the limits of `config`.
pub fn random_map(rng: &mut impl Rng, config: &CorpusConfig) -> SimplicialMap {
    let codomain = random_complex(rng, config);
    random_map_onto(rng, config, codomain)
}

/// A random codomain: the closure of a few random simplices on a small
/// vertex pool, with dimension capped by the configuration.
pub fn random_complex(rng: &mut impl Rng, config: &CorpusConfig) -> SimplicialComplex {
    let pool: Vec<u32> = (0..config.codomain_vertices).map(|v| 100 + v).collect();
    let mut generators = Vec::new();
    for _ in 0..config.codomain_generators {
        let size = rng.gen_range(1..=config.max_codomain_dim + 1);
        let mut verts = pool.clone();
        verts.shuffle(rng);
        verts.truncate(size);
        generators.push(verts);
    }
    SimplicialComplex::close_under_faces(&generators).expect("pool vertices are distinct")
}

/// A random map with the given codomain, built fiberwise over its
/// vertices and simplices.
pub fn random_map_onto(
    rng: &mut impl Rng,
    config: &CorpusConfig,
    codomain: SimplicialComplex,
) -> SimplicialMap {
    // domain vertices over each codomain vertex
    let mut vertex_map: BTreeMap<u32, u32> = BTreeMap::new();
    let mut fiber_vertices: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    let mut next_id = 0u32;
    for w in codomain.vertex_ids() {
        let count = rng.gen_range(1..=config.max_fiber_vertices);
        let mut ids = Vec::with_capacity(count);
        for _ in 0..count {
            vertex_map.insert(next_id, w);
            ids.push(next_id);
            next_id += 1;
        }
        fiber_vertices.insert(w, ids);
    }

    // one domain vertex over every codomain vertex keeps the map onto
    let mut generators: Vec<Vec<u32>> =
        codomain.vertex_ids().iter().map(|w| vec![fiber_vertices[w][0]]).collect();
    let base_simplices: Vec<&Simplex> = codomain.all_simplices().collect();
    for _ in 0..config.domain_generators {
        let tau = base_simplices[rng.gen_range(0..base_simplices.len())];
        let mut sigma = Vec::new();
        for w in tau.vertices() {
            let fiber = &fiber_vertices[w];
            let count = rng.gen_range(1..=fiber.len().min(2));
            let mut picks = fiber.clone();
            picks.shuffle(rng);
            picks.truncate(count);
            sigma.extend(picks);
        }
        generators.push(sigma);
        let trial = SimplicialComplex::close_under_faces(&generators)
            .expect("fiber vertex ids are distinct");
        if trial.len() > config.max_domain_simplices {
            generators.pop();
        }
    }
    let domain = SimplicialComplex::close_under_faces(&generators).expect("distinct ids");
    SimplicialMap::new(domain, codomain, vertex_map).expect("simplicial by construction")
}

/// A codomain path `100 - 101 - ... - (100 + n)` with `n` edges.
pub fn path_complex(n: usize) -> SimplicialComplex {
    if n == 0 {
        return SimplicialComplex::close_under_faces(&[vec![100]]).expect("one vertex");
    }
    let generators: Vec<Vec<u32>> =
        (0..n).map(|i| vec![100 + i as u32, 101 + i as u32]).collect();
    SimplicialComplex::close_under_faces(&generators).expect("distinct ids")
}

/// A random map onto a path with `1..=max_edges` edges.
pub fn random_map_to_path(rng: &mut impl Rng, max_edges: usize) -> SimplicialMap {
    let n = rng.gen_range(1..=max_edges);
    let config = CorpusConfig { max_codomain_dim: 1, ..CorpusConfig::default() };
    random_map_onto(rng, &config, path_complex(n))
}
