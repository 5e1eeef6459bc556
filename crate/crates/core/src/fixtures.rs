//! Shared example maps used across the test suites and shipped as CLI
//! fixture documents.

use std::collections::BTreeMap;

use crate::simplicial::SimplicialComplex;
use crate::simplicial_map::SimplicialMap;

/// Domain of the witness map: seven triangles on vertices `0..=5` whose
/// total space is contractible-looking but maps onto a 2-sphere.
pub fn witness_complex() -> SimplicialComplex {
    SimplicialComplex::close_under_faces(&[
        vec![0, 1, 2],
        vec![0, 1, 3],
        vec![0, 2, 3],
        vec![1, 2, 4],
        vec![1, 3, 4],
        vec![2, 3, 5],
        vec![2, 4, 5],
    ])
    .unwrap()
}

/// The witness map: `X -> ∂Δ³` collapsing vertices `3,4,5` to one
/// sphere vertex. Every fiber is connected, the fiber over that vertex
/// is a 3-cycle, and the Reeb space is the whole 2-sphere.
pub fn witness_map() -> SimplicialMap {
    let domain = witness_complex();
    let codomain = SimplicialComplex::close_under_faces(&[
        vec![100, 101, 102],
        vec![100, 101, 103],
        vec![100, 102, 103],
        vec![101, 102, 103],
    ])
    .unwrap();
    let vm: BTreeMap<u32, u32> =
        [(0, 100), (1, 101), (2, 102), (3, 103), (4, 103), (5, 103)].into_iter().collect();
    SimplicialMap::new(domain, codomain, vm).unwrap()
}

/// A 4-cycle mapped onto a path of two edges: the fiber over the middle
/// vertex has two points, so the level-set barcode of `L_0` is one
/// closed and one open bar.
pub fn square_circle_map() -> SimplicialMap {
    let domain =
        SimplicialComplex::close_under_faces(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
    let codomain = SimplicialComplex::close_under_faces(&[vec![100, 101], vec![101, 102]]).unwrap();
    let vm: BTreeMap<u32, u32> = [(0, 100), (1, 101), (2, 102), (3, 101)].into_iter().collect();
    SimplicialMap::new(domain, codomain, vm).unwrap()
}
