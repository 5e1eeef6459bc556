//! The Leray spectral sequence of a simplicial map: cycle and boundary
//! subspaces `Z^r`, `B^r`, page entries `E^r_{p,q}`, differentials
//! `d^r_{p,q}`, page turning with explicit isomorphisms, convergence
//! detection at page `m+1`, and reassembly of the total homology.
//!
//! Everything is computed from the subspace calculus in [`crate::linalg`]
//! applied to the bigraded filtration of [`crate::simplicial_map`].

use std::collections::BTreeMap;

use crate::field::Field;
use crate::linalg::{image, kernel, solve, LinearMap, Matrix, QuotientSpace, Subspace};
use crate::simplicial_map::SimplicialMap;

/// `Z^r_{p,q} = X_{p,q} ∩ ∂^{-1}(X_{p-r,q+r-1})`, a subspace of
/// `C_{p+q}(X)`.
pub fn cycles<F: Field>(field: F, f: &SimplicialMap, r: i64, p: i64, q: i64) -> Subspace<F> {
    let total = p + q;
    if total < 0 {
        return Subspace::zero(field, 0);
    }
    let x_pq = f.bigraded_subspace(field.clone(), p, q);
    let boundary = f.domain().boundary_matrix(field.clone(), total as usize);
    let target = f.bigraded_subspace(field, p - r, q + r - 1);
    let pre = preimage_of(&boundary, &target);
    x_pq.intersect(&pre).expect("matching ambient dimensions")
}

/// `B^r_{p,q} = X_{p,q} ∩ ∂(X_{p+r,q-r+1})`, a subspace of `C_{p+q}(X)`.
pub fn boundaries<F: Field>(field: F, f: &SimplicialMap, r: i64, p: i64, q: i64) -> Subspace<F> {
    let total = p + q;
    if total < 0 {
        return Subspace::zero(field, 0);
    }
    let x_pq = f.bigraded_subspace(field.clone(), p, q);
    let above = f.bigraded_subspace(field.clone(), p + r, q - r + 1);
    let boundary = f.domain().boundary_matrix(field, (total + 1) as usize);
    let img = above.map_through(&boundary);
    x_pq.intersect(&img).expect("matching ambient dimensions")
}

fn preimage_of<F: Field>(m: &Matrix<F>, w: &Subspace<F>) -> Subspace<F> {
    crate::linalg::preimage(m, w).expect("boundary matrix rows match chain space below")
}

/// One entry `E^r_{p,q}` presented as a quotient of subspaces of
/// `C_{p+q}(X)`.
#[derive(Clone, PartialEq, Debug)]
pub struct PageEntry<F: Field> {
    pub r: i64,
    pub p: i64,
    pub q: i64,
    pub presentation: QuotientSpace<F>,
}

impl<F: Field> PageEntry<F> {
    pub fn dim(&self) -> usize {
        self.presentation.dim()
    }
}

/// `E^r_{p,q} = Z^r_{p,q} / (Z^{r-1}_{p-1,q+1} + B^{r-1}_{p,q})`.
pub fn page_entry<F: Field>(field: F, f: &SimplicialMap, r: i64, p: i64, q: i64) -> PageEntry<F> {
    let numerator = cycles(field.clone(), f, r, p, q);
    let denominator = cycles(field.clone(), f, r - 1, p - 1, q + 1)
        .sum(&boundaries(field, f, r - 1, p, q))
        .expect("matching ambient dimensions");
    let presentation = QuotientSpace::new(numerator, denominator)
        .expect("denominator of a page entry is contained in its numerator");
    PageEntry { r, p, q, presentation }
}

/// The differential `d^r_{p,q} : E^r_{p,q} -> E^r_{p-r,q+r-1}` induced
/// by the simplicial boundary on coset representatives.
pub fn differential<F: Field>(
    field: F,
    f: &SimplicialMap,
    dom: &PageEntry<F>,
    cod: &PageEntry<F>,
) -> LinearMap<F> {
    assert_eq!(dom.r, cod.r);
    assert_eq!(cod.p, dom.p - dom.r);
    assert_eq!(cod.q, dom.q + dom.r - 1);
    let total = dom.p + dom.q;
    let boundary = if total >= 0 {
        f.domain().boundary_matrix(field, total as usize)
    } else {
        Matrix::zeros(field, 0, 0)
    };
    LinearMap::induced(&boundary, &dom.presentation, &cod.presentation)
}

/// A full page over the finite support rectangle
/// `0 <= p <= dim Y`, `0 <= p+q <= dim X` (entries elsewhere vanish).
#[derive(Clone, Debug)]
pub struct Page<F: Field> {
    pub r: i64,
    entries: BTreeMap<(i64, i64), PageEntry<F>>,
    /// Outgoing differential per entry; the codomain entry is computed
    /// even when it lies outside the support so vanishing is checked,
    /// not assumed.
    differentials: BTreeMap<(i64, i64), LinearMap<F>>,
}

impl<F: Field> Page<F> {
    /// Computes every entry and differential of page `r` directly from
    /// the `Z^r`/`B^r` subspace formulas.
    pub fn compute(field: F, f: &SimplicialMap, r: i64) -> Self {
        let m = f.codomain_dim();
        let dim_x = f.domain().dim();
        let mut entries = BTreeMap::new();
        for p in 0..=m.max(-1) {
            for q in 0..=(dim_x - p).max(-1) {
                entries.insert((p, q), page_entry(field.clone(), f, r, p, q));
            }
        }
        let mut differentials = BTreeMap::new();
        for (&(p, q), entry) in &entries {
            let cod = match entries.get(&(p - r, q + r - 1)) {
                Some(e) => e.clone(),
                None => page_entry(field.clone(), f, r, p - r, q + r - 1),
            };
            differentials.insert((p, q), differential(field.clone(), f, entry, &cod));
        }
        Page { r, entries, differentials }
    }

    pub fn entry(&self, p: i64, q: i64) -> Option<&PageEntry<F>> {
        self.entries.get(&(p, q))
    }

    pub fn entry_dim(&self, p: i64, q: i64) -> usize {
        self.entries.get(&(p, q)).map_or(0, |e| e.dim())
    }

    pub fn differential_at(&self, p: i64, q: i64) -> Option<&LinearMap<F>> {
        self.differentials.get(&(p, q))
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.entries.keys().copied()
    }

    /// `d^r ∘ d^r = 0`, entrywise, as matrices on representatives.
    pub fn composes_to_zero(&self) -> bool {
        self.entries.keys().all(|&(p, q)| {
            let first = &self.differentials[&(p, q)];
            match self.differentials.get(&(p - self.r, q + self.r - 1)) {
                Some(second) => second.matrix().mul_mat(first.matrix()).is_zero(),
                None => true, // codomain outside the support is zero
            }
        })
    }

    pub fn all_differentials_zero(&self) -> bool {
        self.differentials.values().all(|d| d.is_zero())
    }
}

/// The page-turn data: for each `(p,q)` the isomorphism
/// `ξ^r_{p,q} : ker d^r / im d^r -> E^{r+1}_{p,q}` expressed on coset
/// representatives, together with the homology presentation it starts
/// from.
#[derive(Clone, Debug)]
pub struct PageTurn<F: Field> {
    pub source_r: i64,
    /// Per `(p,q)`: homology of `(E^r, d^r)` in representative
    /// coordinates, and the matrix of `ξ^r` into the scratch-computed
    /// `E^{r+1}` representative basis.
    pub isos: BTreeMap<(i64, i64), (QuotientSpace<F>, Matrix<F>)>,
}

/// Turns page `r`: computes page `r+1` from scratch and, independently,
/// the homology of `(E^r, d^r)` at every entry, returning the explicit
/// isomorphism between the two. Panics if the two routes disagree,
/// which would mean the subspace calculus is inconsistent.
pub fn turn_page<F: Field>(field: F, f: &SimplicialMap, page: &Page<F>) -> (Page<F>, PageTurn<F>) {
    let r = page.r;
    let next = Page::compute(field.clone(), f, r + 1);
    let mut isos = BTreeMap::new();
    for (&(p, q), entry) in &page.entries {
        let out = &page.differentials[&(p, q)];
        let ker = kernel(out.matrix());
        let img = match page.differentials.get(&(p + r, q - r + 1)) {
            Some(incoming) if entry.dim() > 0 => image(incoming.matrix()),
            _ => Subspace::zero(field.clone(), entry.dim()),
        };
        let hom = QuotientSpace::new(ker, img).expect("d∘d = 0 so images are cycles");
        let next_entry = next.entry(p, q).expect("same support rectangle");
        assert_eq!(
            hom.dim(),
            next_entry.dim(),
            "page-turn dimension mismatch at r={r}, p={p}, q={q}"
        );
        let xi = xi_matrix(&field, entry, next_entry, &hom);
        isos.insert((p, q), (hom, xi));
    }
    (next, PageTurn { source_r: r, isos })
}

/// Matrix of `ξ^r_{p,q}` on representatives: lift a homology class of
/// `(E^r, d^r)` to a chain, split off its `Z^{r+1}` component, and read
/// coordinates in the next page's presentation. Verified invertible.
fn xi_matrix<F: Field>(
    field: &F,
    entry: &PageEntry<F>,
    next_entry: &PageEntry<F>,
    hom: &QuotientSpace<F>,
) -> Matrix<F> {
    let next_num = next_entry.presentation.numerator();
    let old_den = entry.presentation.denominator();
    let split_basis = next_num.basis().hstack(old_den.basis());
    let mut xi = Matrix::zeros(field.clone(), next_entry.dim(), hom.dim());
    for j in 0..hom.dim() {
        let rep_coords = hom.reps().column(j);
        let chain = entry.presentation.lift(&rep_coords);
        // chain = z + w with z ∈ Z^{r+1}, w in the old denominator
        let sol = solve(&split_basis, &chain)
            .expect("kernel representatives decompose over Z^{r+1} plus the old denominator");
        let z: Vec<F::Elem> = {
            let nd = next_num.dim();
            let part = &sol[..nd];
            next_num.basis().mul_vec(part)
        };
        let coords = next_entry
            .presentation
            .class_coords(&z)
            .expect("split component lies in the next numerator");
        for i in 0..next_entry.dim() {
            xi.set(i, j, coords[i].clone());
        }
    }
    assert_eq!(xi.rank(), next_entry.dim(), "ξ is an isomorphism");
    xi
}

/// The limit page `r = m+1` (Proposition-1 convergence), with the
/// vanishing of its differentials checked rather than assumed.
pub fn limit_page<F: Field>(field: F, f: &SimplicialMap) -> Page<F> {
    let m = f.codomain_dim();
    let page = Page::compute(field, f, m + 1);
    assert!(page.all_differentials_zero(), "differentials must vanish at page m+1");
    page
}

/// Checks convergence: `d^r ∘ d^r = 0` for every `r <= m+1` and all
/// differentials vanish at `r = m+1` and `r = m+2`. Returns the first
/// failure as an error string.
pub fn verify_convergence<F: Field>(field: F, f: &SimplicialMap) -> Result<(), String> {
    let m = f.codomain_dim();
    for r in 0..=m + 2 {
        let page = Page::compute(field.clone(), f, r);
        if !page.composes_to_zero() {
            return Err(format!("d^{r} ∘ d^{r} != 0"));
        }
        if r >= m + 1 && !page.all_differentials_zero() {
            return Err(format!("nonzero differential on page {r} >= m+1"));
        }
    }
    Ok(())
}

/// `H_k(X)` reassembled from the limit page: the total dimension and
/// the per-`p` summand dimensions `dim E^{m+1}_{p,k-p}` for `p = 0..=k`.
pub fn total_homology<F: Field>(field: F, f: &SimplicialMap, k: i64) -> (usize, Vec<usize>) {
    let limit = limit_page(field, f);
    let summands: Vec<usize> = (0..=k).map(|p| limit.entry_dim(p, k - p)).collect();
    (summands.iter().sum(), summands)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::fixtures;
    use crate::simplicial::SimplicialComplex;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn z0_equals_bigraded_subspace() {
        // ∂ lands in X_{p,q-1} by the filtration, so Z^0 = X_{p,q}
        let f = fixtures::witness_map();
        let k = f2();
        for p in 0..=2 {
            for q in 0..=2 - p {
                assert_eq!(cycles(k, &f, 0, p, q), f.bigraded_subspace(k, p, q));
            }
        }
    }

    #[test]
    fn large_r_cycles_are_kernel_cycles() {
        let f = fixtures::witness_map();
        let k = f2();
        let (p, q) = (1, 1);
        let r = p + 1; // p - r < 0
        let z = cycles(k, &f, r, p, q);
        let ker = kernel(&f.domain().boundary_matrix(k, (p + q) as usize));
        let expect = f.bigraded_subspace(k, p, q).intersect(&ker).unwrap();
        assert_eq!(z, expect);
    }

    #[test]
    fn observation_inclusions_hold() {
        let f = fixtures::witness_map();
        let k = f2();
        for r in 0..=3i64 {
            for p in 0..=2i64 {
                for q in 0..=(2 - p) {
                    let z_r = cycles(k, &f, r, p, q);
                    let z_r1 = cycles(k, &f, r + 1, p, q);
                    let b_r = boundaries(k, &f, r, p, q);
                    let b_r1 = boundaries(k, &f, r + 1, p, q);
                    assert!(z_r.contains(&z_r1)); // Z^{r+1} ⊆ Z^r
                    assert!(b_r1.contains(&b_r)); // B^r ⊆ B^{r+1}
                    assert!(z_r.contains(&b_r)); // B^r ⊆ Z^r
                    // Z^r_{p,q} ⊆ Z^{r+1}_{p+1,q-1}
                    if q > 0 {
                        let shifted = cycles(k, &f, r + 1, p + 1, q - 1);
                        assert!(shifted.contains(&z_r));
                    }
                }
            }
        }
    }

    #[test]
    fn constant_map_page_one_is_domain_homology() {
        // Y a point: X_{0,q} = C_q(X) and E^1_{0,q} ≅ H_q(X)
        let hollow = SimplicialComplex::close_under_faces(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let pt = SimplicialComplex::close_under_faces(&[vec![9]]).unwrap();
        let vm = [(0, 9), (1, 9), (2, 9)].into_iter().collect();
        let f = crate::SimplicialMap::new(hollow.clone(), pt, vm).unwrap();
        let k = f2();
        let page1 = Page::compute(k, &f, 1);
        assert_eq!(page1.entry_dim(0, 0), hollow.homology_dim(k, 0));
        assert_eq!(page1.entry_dim(0, 1), hollow.homology_dim(k, 1));
    }

    #[test]
    fn identity_on_hollow_triangle_page_two() {
        let hollow = SimplicialComplex::close_under_faces(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let f = crate::SimplicialMap::identity(&hollow);
        let k = f2();
        let page2 = Page::compute(k, &f, 2);
        assert_eq!(page2.entry_dim(0, 0), 1);
        assert_eq!(page2.entry_dim(1, 0), 1);
        assert_eq!(page2.entry_dim(0, 1), 0);
        assert_eq!(page2.entry_dim(1, 1), 0);
    }

    #[test]
    fn witness_page_two_and_nonzero_d2() {
        let f = fixtures::witness_map();
        for field in [PrimeField::new(2).unwrap(), PrimeField::new(5).unwrap()] {
            let page2 = Page::compute(field, &f, 2);
            assert_eq!(page2.entry_dim(2, 0), 1);
            assert_eq!(page2.entry_dim(0, 1), 1);
            // d^2_{2,0} : E^2_{2,0} -> E^2_{0,1} is a 1x1 isomorphism
            let d = page2.differential_at(2, 0).unwrap();
            assert_eq!((d.matrix().rows(), d.matrix().cols()), (1, 1));
            assert_eq!(d.rank(), 1);

            let page3 = Page::compute(field, &f, 3);
            assert_eq!(page3.entry_dim(2, 0), 0);
            assert_eq!(page3.entry_dim(0, 1), 0);
        }
    }

    #[test]
    fn witness_rational_page_two_agrees() {
        let f = fixtures::witness_map();
        let page2 = Page::compute(Rationals, &f, 2);
        assert_eq!(page2.entry_dim(2, 0), 1);
        assert_eq!(page2.entry_dim(0, 1), 1);
        assert_eq!(page2.differential_at(2, 0).unwrap().rank(), 1);
    }

    #[test]
    fn d_squared_is_zero_on_all_pages() {
        let f = fixtures::witness_map();
        let k = f2();
        for r in 0..=4 {
            assert!(Page::compute(k, &f, r).composes_to_zero());
        }
    }

    #[test]
    fn turn_page_agrees_with_direct_computation() {
        let f = fixtures::witness_map();
        for r in 0..=3 {
            let k = PrimeField::new(5).unwrap();
            let page = Page::compute(k, &f, r);
            let (next, turn) = turn_page(k, &f, &page);
            assert_eq!(next.r, r + 1);
            for (pq, (hom, xi)) in &turn.isos {
                assert_eq!(hom.dim(), next.entry_dim(pq.0, pq.1));
                assert_eq!(xi.rank(), hom.dim());
            }
        }
    }

    #[test]
    fn page_with_zero_differentials_keeps_dims() {
        let f = fixtures::witness_map();
        let k = f2();
        let m = f.codomain_dim();
        let limit = Page::compute(k, &f, m + 1);
        assert!(limit.all_differentials_zero());
        let (next, _) = turn_page(k, &f, &limit);
        for (p, q) in limit.support() {
            assert_eq!(limit.entry_dim(p, q), next.entry_dim(p, q));
        }
    }

    #[test]
    fn convergence_page_by_codomain_dimension() {
        // Y a point: limit = page 1; Y a segment: limit = page 2
        let hollow = SimplicialComplex::close_under_faces(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let pt = SimplicialComplex::close_under_faces(&[vec![9]]).unwrap();
        let vm = [(0, 9), (1, 9), (2, 9)].into_iter().collect();
        let const_map = crate::SimplicialMap::new(hollow, pt, vm).unwrap();
        let k = f2();
        assert_eq!(limit_page(k, &const_map).r, 1);

        let sq = fixtures::square_circle_map();
        assert_eq!(limit_page(k, &sq).r, 2);

        let w = fixtures::witness_map();
        assert_eq!(limit_page(k, &w).r, 3);
        assert!(verify_convergence(k, &w).is_ok());
    }

    #[test]
    fn total_homology_matches_oracle() {
        let k = f2();
        let w = fixtures::witness_map();
        let oracle = w.domain().homology_dims(k);
        for deg in 0..=w.domain().dim() {
            let (dim, _) = total_homology(k, &w, deg);
            assert_eq!(dim, oracle[deg as usize], "degree {deg}");
        }
        // H_2(X) = 0 with summands (0,0,0); H_0(X) = 1
        assert_eq!(total_homology(k, &w, 2), (0, vec![0, 0, 0]));
        assert_eq!(total_homology(k, &w, 0).0, 1);

        // identity on the tetrahedron boundary: H_2(S^2) = 1
        let sphere = SimplicialComplex::close_under_faces(&[
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap();
        let id = crate::SimplicialMap::identity(&sphere);
        assert_eq!(total_homology(k, &id, 2).0, 1);
    }
}
