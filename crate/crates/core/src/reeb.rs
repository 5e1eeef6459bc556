//! Reeb spaces of simplicial maps: the quotient of the domain that
//! merges each connected component of an onto-fiber to a single
//! simplex, validated to be a simplicial complex rather than assumed.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::field::Field;
use crate::simplicial::{Simplex, SimplicialComplex};
use crate::simplicial_map::SimplicialMap;

/// Connected components of the onto-fiber over `tau` (all offsets at
/// once), under the face relation between fiber simplices. Blocks are
/// ordered by their smallest member.
pub fn fiber_components(f: &SimplicialMap, tau: &Simplex) -> Result<Vec<Vec<Simplex>>, Error> {
    let mut members: Vec<Simplex> = Vec::new();
    for q in 0..=f.max_fiber_offset(tau) {
        members.extend(f.fiber(tau, q)?.iter().cloned());
    }
    members.sort();
    let index: BTreeMap<&Simplex, usize> = members.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut dsu: Vec<usize> = (0..members.len()).collect();
    fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
        if dsu[x] != x {
            let root = find(dsu, dsu[x]);
            dsu[x] = root;
        }
        dsu[x]
    }
    for (i, sigma) in members.iter().enumerate() {
        if sigma.dim() == 0 {
            continue;
        }
        for k in 0..=sigma.dim() {
            let face = sigma.face(k).expect("positive dimension");
            if let Some(&j) = index.get(&face) {
                let (a, b) = (find(&mut dsu, i), find(&mut dsu, j));
                dsu[a] = b;
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
    for i in 0..members.len() {
        let root = find(&mut dsu, i);
        blocks.entry(root).or_default().push(members[i].clone());
    }
    let mut out: Vec<Vec<Simplex>> = blocks.into_values().collect();
    out.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(out)
}

/// The Reeb space of a map: the quotient complex, the projection from
/// the domain, and the induced map to the codomain.
#[derive(Clone, Debug)]
pub struct ReebSpace {
    space: SimplicialComplex,
    /// Domain simplex to its quotient simplex.
    projection_simplices: BTreeMap<Simplex, Simplex>,
    /// Projection `X -> X^f` as a simplicial map.
    projection: SimplicialMap,
    /// Induced map `X^f -> Y`.
    induced: SimplicialMap,
}

impl ReebSpace {
    pub fn space(&self) -> &SimplicialComplex {
        &self.space
    }

    pub fn project(&self, sigma: &Simplex) -> Option<&Simplex> {
        self.projection_simplices.get(sigma)
    }

    pub fn projection(&self) -> &SimplicialMap {
        &self.projection
    }

    pub fn induced(&self) -> &SimplicialMap {
        &self.induced
    }
}

/// Builds the Reeb space, checking at every step that the quotient is a
/// simplicial complex: each fiber component must span a single
/// well-defined simplex, distinct components must give distinct
/// simplices, and the set of quotient simplices must be face-closed.
pub fn reeb_space(f: &SimplicialMap) -> Result<ReebSpace, Error> {
    let y = f.codomain();

    // new vertex ids, one per component of a vertex fiber
    let mut vertex_block: BTreeMap<u32, u32> = BTreeMap::new();
    let mut new_vertex_image: BTreeMap<u32, u32> = BTreeMap::new();
    let mut next_id = 0u32;
    for w in y.simplices(0) {
        for block in fiber_components(f, w)? {
            for sigma in &block {
                for &u in sigma.vertices() {
                    vertex_block.insert(u, next_id);
                }
            }
            new_vertex_image.insert(next_id, w.vertices()[0]);
            next_id += 1;
        }
    }

    let mut projection_simplices: BTreeMap<Simplex, Simplex> = BTreeMap::new();
    let mut owners: BTreeMap<Simplex, (Simplex, usize)> = BTreeMap::new();
    for tau in y.all_simplices() {
        for (b, block) in fiber_components(f, tau)?.into_iter().enumerate() {
            let mut quotient: Option<Simplex> = None;
            for sigma in &block {
                let mut ids: Vec<u32> = sigma.vertices().iter().map(|u| vertex_block[u]).collect();
                ids.sort_unstable();
                ids.dedup();
                if ids.len() != tau.dim() + 1 {
                    return Err(Error::ReebQuotient(format!(
                        "component {b} over {tau} spans {} quotient vertices instead of {}",
                        ids.len(),
                        tau.dim() + 1
                    )));
                }
                let s = Simplex::new(ids).expect("deduplicated ids");
                match &quotient {
                    None => quotient = Some(s),
                    Some(prev) if *prev != s => {
                        return Err(Error::ReebQuotient(format!(
                            "component {b} over {tau} spans two different vertex sets"
                        )));
                    }
                    Some(_) => {}
                }
            }
            let quotient = quotient.expect("components are nonempty");
            if let Some((other_tau, other_b)) = owners.get(&quotient) {
                return Err(Error::ReebQuotient(format!(
                    "components {b} over {tau} and {other_b} over {other_tau} collapse to the same simplex"
                )));
            }
            owners.insert(quotient.clone(), (tau.clone(), b));
            for sigma in block {
                projection_simplices.insert(sigma, quotient.clone());
            }
        }
    }

    let generators: Vec<Vec<u32>> = owners.keys().map(|s| s.vertices().to_vec()).collect();
    let space = SimplicialComplex::close_under_faces(&generators).expect("valid simplices");
    if space.len() != owners.len() {
        return Err(Error::ReebQuotient(
            "the quotient simplices are not closed under faces".into(),
        ));
    }

    let induced = SimplicialMap::new(space.clone(), y.clone(), new_vertex_image)
        .map_err(|e| Error::ReebQuotient(format!("induced map is not simplicial: {e}")))?;
    let projection = SimplicialMap::new(f.domain().clone(), space.clone(), vertex_block)
        .map_err(|e| Error::ReebQuotient(format!("projection is not simplicial: {e}")))?;
    for (sigma, quotient) in &projection_simplices {
        if projection.image_of(sigma) != *quotient {
            return Err(Error::ReebQuotient(format!(
                "projection of {sigma} disagrees with its component"
            )));
        }
    }
    Ok(ReebSpace { space, projection_simplices, projection, induced })
}

/// Homology comparison between a domain and its Reeb space.
#[derive(Clone, Debug)]
pub struct ReebReport {
    pub h_domain: Vec<usize>,
    pub h_reeb: Vec<usize>,
}

impl ReebReport {
    /// The connectivity bounds the quotient must satisfy: equality in
    /// degree 0 and no growth in degree 1.
    pub fn check(&self) -> Result<(), String> {
        let at = |v: &[usize], k: usize| v.get(k).copied().unwrap_or(0);
        if at(&self.h_domain, 0) != at(&self.h_reeb, 0) {
            return Err(format!(
                "H_0 changed under the Reeb quotient: {} vs {}",
                at(&self.h_domain, 0),
                at(&self.h_reeb, 0)
            ));
        }
        if at(&self.h_reeb, 1) > at(&self.h_domain, 1) {
            return Err(format!(
                "H_1 grew under the Reeb quotient: {} vs {}",
                at(&self.h_domain, 1),
                at(&self.h_reeb, 1)
            ));
        }
        Ok(())
    }
}

pub fn reeb_compare<F: Field>(field: F, f: &SimplicialMap, reeb: &ReebSpace) -> ReebReport {
    ReebReport {
        h_domain: f.domain().homology_dims(field.clone()),
        h_reeb: reeb.space().homology_dims(field),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosheaf::leray_cosheaf;
    use crate::field::PrimeField;
    use crate::fixtures;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn identity_reeb_space_is_the_domain() {
        let t = SimplicialComplex::close_under_faces(&[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let f = SimplicialMap::identity(&t);
        let reeb = reeb_space(&f).unwrap();
        assert_eq!(reeb.space().len(), t.len());
        for d in 0..=2usize {
            assert_eq!(reeb.space().simplices(d).len(), t.simplices(d).len());
        }
        assert_eq!(reeb.space().homology_dims(f5()), t.homology_dims(f5()));
    }

    #[test]
    fn constant_map_on_connected_domain_collapses_to_a_point() {
        let t = SimplicialComplex::close_under_faces(&[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let pt = SimplicialComplex::close_under_faces(&[vec![9]]).unwrap();
        let vm = (0..4).map(|v| (v, 9)).collect();
        let f = SimplicialMap::new(t, pt, vm).unwrap();
        let reeb = reeb_space(&f).unwrap();
        assert_eq!(reeb.space().len(), 1);
    }

    #[test]
    fn witness_reeb_space_is_a_sphere() {
        let f = fixtures::witness_map();
        let reeb = reeb_space(&f).unwrap();
        // the 3-cycle over the collapsed vertex closes up: boundary of a
        // tetrahedron
        assert_eq!(reeb.space().simplices(0).len(), 4);
        assert_eq!(reeb.space().simplices(1).len(), 6);
        assert_eq!(reeb.space().simplices(2).len(), 4);
        assert_eq!(reeb.space().homology_dims(f2()), vec![1, 0, 1]);
        assert_eq!(reeb.space().homology_dims(f5()), vec![1, 0, 1]);

        let report = reeb_compare(f5(), &f, &reeb);
        report.check().unwrap();
        assert_eq!(report.h_domain, vec![1, 0, 0]);
    }

    #[test]
    fn square_circle_reeb_space_is_the_square() {
        let f = fixtures::square_circle_map();
        let reeb = reeb_space(&f).unwrap();
        assert_eq!(reeb.space().simplices(0).len(), 4);
        assert_eq!(reeb.space().simplices(1).len(), 4);
        assert_eq!(reeb.space().homology_dims(f5()), vec![1, 1]);
        reeb_compare(f5(), &f, &reeb).check().unwrap();
    }

    #[test]
    fn fiber_component_counts_match_the_induced_map() {
        let f = fixtures::witness_map();
        let reeb = reeb_space(&f).unwrap();
        for tau in f.codomain().all_simplices() {
            let original = fiber_components(&f, tau).unwrap().len();
            let induced = fiber_components(reeb.induced(), tau).unwrap().len();
            assert_eq!(original, induced, "components over {tau}");
        }
    }

    #[test]
    fn reeb_construction_is_idempotent() {
        for f in [fixtures::witness_map(), fixtures::square_circle_map()] {
            let once = reeb_space(&f).unwrap();
            let twice = reeb_space(once.induced()).unwrap();
            assert_eq!(twice.space().len(), once.space().len());
            for d in 0..=2usize {
                assert_eq!(
                    twice.space().simplices(d).len(),
                    once.space().simplices(d).len()
                );
            }
        }
    }

    #[test]
    fn degree_zero_leray_cosheaf_is_preserved() {
        let f = fixtures::witness_map();
        let reeb = reeb_space(&f).unwrap();
        let l0 = leray_cosheaf(f5(), &f, 0).unwrap();
        let l0_reeb = leray_cosheaf(f5(), reeb.induced(), 0).unwrap();
        for tau in f.codomain().all_simplices() {
            assert_eq!(l0.cosheaf.dim_at(tau), l0_reeb.cosheaf.dim_at(tau));
        }
        for p in 0..=2usize {
            assert_eq!(
                l0.cosheaf.homology_dim(p),
                l0_reeb.cosheaf.homology_dim(p)
            );
        }
    }

    #[test]
    fn parallel_strips_are_rejected() {
        // a 4-cycle folded onto a single edge: both cross edges join the
        // same pair of vertex-fiber components, so their quotient
        // simplices would coincide and the quotient is not simplicial
        let square = SimplicialComplex::close_under_faces(&[
            vec![0, 1],
            vec![2, 3],
            vec![0, 2],
            vec![1, 3],
        ])
        .unwrap();
        let edge = SimplicialComplex::close_under_faces(&[vec![8, 9]]).unwrap();
        let vm = [(0, 8), (1, 8), (2, 9), (3, 9)].into_iter().collect();
        let f = SimplicialMap::new(square, edge, vm).unwrap();
        assert!(matches!(reeb_space(&f), Err(Error::ReebQuotient(_))));
    }

    #[test]
    fn projection_sends_simplices_to_their_components() {
        let f = fixtures::square_circle_map();
        let reeb = reeb_space(&f).unwrap();
        for sigma in f.domain().all_simplices() {
            let quotient = reeb.project(sigma).unwrap();
            assert_eq!(reeb.projection().image_of(sigma), *quotient);
            assert_eq!(reeb.induced().image_of(quotient), f.image_of(sigma));
        }
    }
}
