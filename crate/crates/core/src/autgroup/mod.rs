//! The brute-force automorphism oracle and the structural group
//! computations built on top of it: stabilizers, orbit and transitivity
//! checks, co-twin swap maps, and the group-order decompositions.

mod perm;
mod search;
mod structure;

pub use perm::Perm;
pub use search::{find_isomorphism, OracleError, DEFAULT_ENUM_LIMIT, SEARCH_VERTEX_CAP};
pub use structure::{structural_order, GroupExpr, GroupStructure, StructureMethod};

use crate::circulant::{multiplier_stabilizer, CirculantSpec};
use crate::cotwins::CoTwinPairing;
use crate::graph::Graph;
use num_bigint::BigUint;
use thiserror::Error;

/// A set of automorphisms together with the group order. When `complete` the
/// list is the whole group (in lexicographic image order); otherwise it is a
/// generating transversal-plus-stabilizer listing and the order comes from
/// the orbit–stabilizer identity.
#[derive(Debug, Clone)]
pub struct PermutationList {
    n: usize,
    perms: Vec<Perm>,
    order: u64,
    complete: bool,
}

impl PermutationList {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }
}

/// Enumerates every automorphism of `g`, up to `limit` of them.
pub fn enumerate_automorphisms(g: &Graph, limit: usize) -> Result<PermutationList, OracleError> {
    let perms = search::enumerate_with_pins(g, &[], limit)?;
    Ok(PermutationList {
        n: g.order(),
        order: perms.len() as u64,
        perms,
        complete: true,
    })
}

/// All automorphisms fixing `u`.
pub fn stabilizer(g: &Graph, u: usize, limit: usize) -> Result<PermutationList, OracleError> {
    let perms = search::enumerate_with_pins(g, &[(u, u)], limit)?;
    Ok(PermutationList {
        n: g.order(),
        order: perms.len() as u64,
        perms,
        complete: false,
    })
}

/// The first automorphism extending the pinned partial map `u ↦ v`.
pub fn find_automorphism_mapping(
    g: &Graph,
    pins: &[(usize, usize)],
) -> Result<Option<Perm>, OracleError> {
    search::find_with_pins(g, pins)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Vertex orbits under the full automorphism group, sorted by minimum
/// vertex. Computed by existence searches between orbit representatives,
/// merged through every automorphism found along the way.
pub fn vertex_orbits(g: &Graph) -> Result<Vec<Vec<usize>>, OracleError> {
    let n = g.order();
    let mut uf = UnionFind::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if uf.find(u) == uf.find(v) {
                continue;
            }
            if let Some(p) = find_automorphism_mapping(g, &[(u, v)])? {
                for w in 0..n {
                    uf.union(w, p.apply(w));
                }
            }
        }
    }
    let mut orbits: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = uf.find(v);
        orbits.entry(r).or_default().push(v);
    }
    Ok(orbits.into_values().collect())
}

/// Whether the automorphism group is transitive on vertices.
pub fn is_vertex_transitive(g: &Graph) -> Result<bool, OracleError> {
    let n = g.order();
    if n <= 1 {
        return Ok(true);
    }
    let mut uf = UnionFind::new(n);
    for v in 1..n {
        if uf.find(v) == uf.find(0) {
            continue;
        }
        match find_automorphism_mapping(g, &[(0, v)])? {
            Some(p) => {
                for w in 0..n {
                    uf.union(w, p.apply(w));
                }
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// Whether the automorphism group is transitive on ordered adjacent pairs.
/// `seeds` are known automorphisms used to merge arc orbits before any
/// search runs; correctness does not depend on them.
pub fn is_arc_transitive_seeded(g: &Graph, seeds: &[Perm]) -> Result<bool, OracleError> {
    let n = g.order();
    let mut arcs = Vec::new();
    for (u, v) in g.edges() {
        arcs.push((u, v));
        arcs.push((v, u));
    }
    if arcs.is_empty() {
        return Ok(true);
    }
    let arc_id: std::collections::HashMap<(usize, usize), usize> = arcs
        .iter()
        .copied()
        .enumerate()
        .map(|(i, a)| (a, i))
        .collect();
    let mut uf = UnionFind::new(arcs.len());
    let merge_along = |uf: &mut UnionFind, p: &Perm| {
        for (i, &(u, v)) in arcs.iter().enumerate() {
            let img = (p.apply(u), p.apply(v));
            uf.union(i, arc_id[&img]);
        }
    };
    for p in seeds {
        if p.degree() == n {
            merge_along(&mut uf, p);
        }
    }
    let base = arcs[0];
    for (i, &(x, y)) in arcs.iter().enumerate().skip(1) {
        if uf.find(i) == uf.find(0) {
            continue;
        }
        match find_automorphism_mapping(g, &[(base.0, x), (base.1, y)])? {
            Some(p) => merge_along(&mut uf, &p),
            None => return Ok(false),
        }
    }
    Ok(true)
}

pub fn is_arc_transitive(g: &Graph) -> Result<bool, OracleError> {
    is_arc_transitive_seeded(g, &[])
}

/// Translations, the negation map, and the unit-multiplier maps of a
/// circulant graph; a known subgroup of its automorphisms.
pub fn circulant_symmetries(spec: &CirculantSpec) -> Vec<Perm> {
    let n = spec.n() as usize;
    let mut out = Vec::new();
    out.push(Perm::from_images(
        (0..n).map(|v| ((v + 1) % n) as u16).collect(),
    ));
    out.push(Perm::from_images(
        (0..n).map(|v| ((n - v) % n) as u16).collect(),
    ));
    for t in multiplier_stabilizer(spec.set()) {
        out.push(Perm::from_images(
            (0..n).map(|v| ((v * t as usize) % n) as u16).collect(),
        ));
    }
    out.sort();
    out.dedup();
    out
}

/// Stabilizer-first order computation for a vertex-transitive graph:
/// `|Aut(G)| = n · |stab(0)|` once transitivity is verified. Returns `None`
/// when the graph is not vertex-transitive. The carried permutations are
/// `stab(0)` together with a transversal moving `0` everywhere.
pub fn group_via_stabilizer(
    g: &Graph,
    limit: usize,
) -> Result<Option<PermutationList>, OracleError> {
    let n = g.order();
    if n == 0 {
        return Ok(Some(enumerate_automorphisms(g, limit)?));
    }
    let stab = search::enumerate_with_pins(g, &[(0, 0)], limit)?;
    let mut perms = stab.clone();
    for v in 1..n {
        match find_automorphism_mapping(g, &[(0, v)])? {
            Some(p) => perms.push(p),
            None => return Ok(None),
        }
    }
    perms.sort();
    perms.dedup();
    Ok(Some(PermutationList {
        n,
        perms,
        order: n as u64 * stab.len() as u64,
        complete: false,
    }))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoTwinSwapError {
    #[error("the simultaneous co-twin swap is not an automorphism; the pairing is inconsistent")]
    NotAutomorphism,
}

/// The map transposing every co-twin pair simultaneously, verified to be an
/// automorphism.
pub fn cotwin_swap(g: &Graph, pairing: &CoTwinPairing) -> Result<Perm, CoTwinSwapError> {
    let n = g.order();
    let mut images: Vec<u16> = (0..n as u16).collect();
    for &(u, v) in &pairing.pairs {
        images[u] = v as u16;
        images[v] = u as u16;
    }
    let beta = Perm::from_images(images);
    if beta.preserves(g) {
        Ok(beta)
    } else {
        Err(CoTwinSwapError::NotAutomorphism)
    }
}

fn pair_action(pairing: &CoTwinPairing, p: &Perm) -> Option<Vec<u16>> {
    let k = pairing.pairs.len();
    let mut index_of = std::collections::HashMap::new();
    for (i, &(u, v)) in pairing.pairs.iter().enumerate() {
        index_of.insert(u, i);
        index_of.insert(v, i);
    }
    let mut images = vec![0u16; k];
    for (i, &(u, v)) in pairing.pairs.iter().enumerate() {
        let iu = *index_of.get(&p.apply(u))?;
        let iv = *index_of.get(&p.apply(v))?;
        if iu != iv {
            return None;
        }
        images[i] = iu as u16;
    }
    Some(images)
}

/// Checks that the automorphisms fixing every co-twin pair setwise are
/// exactly the identity and the simultaneous swap.
pub fn kappa_kernel_check(
    g: &Graph,
    pairing: &CoTwinPairing,
    limit: usize,
) -> Result<bool, OracleError> {
    let full = enumerate_automorphisms(g, limit)?;
    let beta = match cotwin_swap(g, pairing) {
        Ok(b) => b,
        Err(_) => return Ok(false),
    };
    let mut kernel: Vec<Perm> = full
        .perms()
        .iter()
        .filter(|p| {
            pair_action(pairing, p)
                .is_some_and(|a| a.iter().enumerate().all(|(i, &x)| i == x as usize))
        })
        .cloned()
        .collect();
    kernel.sort();
    let mut expected = vec![Perm::identity(g.order()), beta];
    expected.sort();
    Ok(kernel == expected)
}

/// Size of the image of the induced action on collapsed co-twin pairs.
pub fn kappa_image_size(
    g: &Graph,
    pairing: &CoTwinPairing,
    limit: usize,
) -> Result<usize, OracleError> {
    let full = enumerate_automorphisms(g, limit)?;
    let mut seen = std::collections::BTreeSet::new();
    for p in full.perms() {
        if let Some(a) = pair_action(pairing, p) {
            seen.insert(a);
        }
    }
    Ok(seen.len())
}

/// Whether the induced action on collapsed pairs is all of `S_k`.
pub fn kappa_surjective(
    g: &Graph,
    pairing: &CoTwinPairing,
    limit: usize,
) -> Result<bool, OracleError> {
    let image = kappa_image_size(g, pairing, limit)?;
    let k = pairing.pairs.len() as u64;
    Ok(BigUint::from(image) == structure::factorial(k))
}

/// Whether the translation subgroup is normal in the listed group; the
/// classical consequence is `Aut(C_n(A)) = Z_n ⋊ stab_n(A)`.
pub fn translations_normal(spec: &CirculantSpec, group: &PermutationList) -> bool {
    let n = spec.n() as usize;
    if group.degree() != n {
        return false;
    }
    let shift = Perm::from_images((0..n).map(|v| ((v + 1) % n) as u16).collect());
    let translations: std::collections::BTreeSet<Perm> = (0..n)
        .map(|w| Perm::from_images((0..n).map(|v| ((v + w) % n) as u16).collect()))
        .collect();
    group
        .perms()
        .iter()
        .all(|g| translations.contains(&g.compose(&shift).compose(&g.inverse())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotwins::{crown_graph, detect_cotwins_generic};

    fn spec(n: u64, tokens: &str) -> CirculantSpec {
        CirculantSpec::parse(n, tokens).unwrap()
    }

    #[test]
    fn reference_group_orders() {
        let icosa = Graph::icosahedron();
        assert_eq!(enumerate_automorphisms(&icosa, 1000).unwrap().order(), 120);
        assert_eq!(
            enumerate_automorphisms(&spec(8, "±1,±3,4").build(), 1000)
                .unwrap()
                .order(),
            128
        );
        assert_eq!(
            enumerate_automorphisms(&spec(14, "±1,±2,±3").build(), 1000)
                .unwrap()
                .order(),
            28
        );
    }

    #[test]
    fn stabilizer_and_orbit_identity() {
        for g in [
            Graph::cycle(6),
            Graph::complete(5),
            spec(8, "±1,±3,4").build(),
            Graph::icosahedron(),
            Graph::path(5),
        ] {
            let full = enumerate_automorphisms(&g, 100_000).unwrap();
            let stab = stabilizer(&g, 0, 100_000).unwrap();
            let orbit = vertex_orbits(&g).unwrap();
            let orbit_of_0 = orbit.iter().find(|o| o.contains(&0)).unwrap();
            assert_eq!(
                full.order(),
                stab.order() * orbit_of_0.len() as u64,
                "orbit-stabilizer failed"
            );
        }
    }

    #[test]
    fn stabilizer_examples() {
        let g = spec(14, "±1,±2,±3").build();
        assert_eq!(stabilizer(&g, 0, 1000).unwrap().order(), 2);
        let g = spec(18, "±2,±3,±4,±8").build();
        assert_eq!(stabilizer(&g, 0, 10_000).unwrap().order(), 144);
        assert_eq!(stabilizer(&Graph::complete(5), 0, 1000).unwrap().order(), 24);
    }

    #[test]
    fn stabilizer_first_order() {
        let g = spec(18, "±2,±3,±4,±8").build();
        let list = group_via_stabilizer(&g, 10_000).unwrap().unwrap();
        assert_eq!(list.order(), 2592);
        assert!(!list.is_complete());
        assert!(list.perms().iter().all(|p| p.preserves(&g)));
        assert!(group_via_stabilizer(&Graph::path(4), 100).unwrap().is_none());
    }

    #[test]
    fn transitivity_checks() {
        assert!(is_vertex_transitive(&Graph::cycle(7)).unwrap());
        assert!(is_vertex_transitive(&Graph::icosahedron()).unwrap());
        assert!(!is_vertex_transitive(&Graph::path(4)).unwrap());

        assert!(is_arc_transitive(&Graph::complete(4)).unwrap());
        assert!(is_arc_transitive(&Graph::cycle(6)).unwrap());
        let c6_prism = spec(6, "±2,3").build();
        assert!(!is_arc_transitive(&c6_prism).unwrap());
        assert!(!is_arc_transitive(&spec(12, "±2,±3,±4").build()).unwrap());
        assert!(is_arc_transitive(&Graph::empty(4)).unwrap());
    }

    #[test]
    fn seeded_arc_transitivity_matches() {
        for tokens in ["±1", "±1,±2", "±2,4", "±1,±3,4"] {
            let s = spec(8, tokens);
            let g = s.build();
            let seeded = is_arc_transitive_seeded(&g, &circulant_symmetries(&s)).unwrap();
            assert_eq!(seeded, is_arc_transitive(&g).unwrap(), "C_8({tokens})");
        }
    }

    #[test]
    fn cotwin_swap_and_kappa() {
        let q3 = crown_graph(4);
        let pairing = detect_cotwins_generic(&q3).unwrap().unwrap();
        let beta = cotwin_swap(&q3, &pairing).unwrap();
        assert!(!beta.is_identity());
        assert!(kappa_kernel_check(&q3, &pairing, 1000).unwrap());
        assert_eq!(kappa_image_size(&q3, &pairing, 1000).unwrap(), 24);
        assert!(kappa_surjective(&q3, &pairing, 1000).unwrap());

        let g = spec(10, "±1,±2").build();
        let pairing = detect_cotwins_generic(&g).unwrap().unwrap();
        let beta = cotwin_swap(&g, &pairing).unwrap();
        assert_eq!(beta.apply(0), 5);
        assert!(kappa_kernel_check(&g, &pairing, 1000).unwrap());
        assert!(!kappa_surjective(&g, &pairing, 1000).unwrap());

        let ico = Graph::icosahedron();
        let pairing = detect_cotwins_generic(&ico).unwrap().unwrap();
        let beta = cotwin_swap(&ico, &pairing).unwrap();
        assert_eq!(beta.apply(0), 11);
        assert!(kappa_kernel_check(&ico, &pairing, 1000).unwrap());
    }

    #[test]
    fn translation_normality() {
        let s = spec(14, "±1,±2,±3");
        let full = enumerate_automorphisms(&s.build(), 1000).unwrap();
        assert!(translations_normal(&s, &full));
    }
}
