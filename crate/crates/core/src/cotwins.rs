//! Co-twin vertices in twin-free graphs, crown graphs, and the neighborhood
//! subgraphs `H_u` that control stabilizers.
//!
//! Distinct vertices are nonadjacent co-twins iff `N[u] ⊔ N[v] = V` and
//! adjacent co-twins iff `N(u) ⊔ N(v) = V`. In a twin-free graph each vertex
//! has at most one co-twin, so a positive detection pairs up the whole vertex
//! set.

use crate::circulant::CirculantSpec;
use crate::graph::Graph;
use crate::twins::detect_twins_circulant;
use crate::twins::detect_twins_generic;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoTwinKind {
    Nonadjacent,
    Adjacent,
}

impl std::fmt::Display for CoTwinKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoTwinKind::Nonadjacent => f.write_str("nonadjacent"),
            CoTwinKind::Adjacent => f.write_str("adjacent"),
        }
    }
}

/// A perfect pairing of the vertex set into co-twin pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoTwinPairing {
    pub kind: CoTwinKind,
    /// Pairs `(u, v)` with `u < v`, sorted by first coordinate.
    pub pairs: Vec<(usize, usize)>,
}

impl CoTwinPairing {
    /// The partner of `v`, or `None` if `v` is not covered.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoTwinError {
    #[error("graph has twins; co-twin analysis requires a twin-free graph")]
    NotTwinFree,
}

/// The co-twin of `u`, if any. Assumes a twin-free graph, where the co-twin
/// is unique and the two kinds are mutually exclusive per vertex.
pub fn cotwin_of(g: &Graph, u: usize) -> Option<(CoTwinKind, usize)> {
    let n = g.order();
    for v in 0..n {
        if v == u {
            continue;
        }
        if closed_rows_complementary(g, u, v) {
            return Some((CoTwinKind::Nonadjacent, v));
        }
        if open_rows_complementary(g, u, v) {
            return Some((CoTwinKind::Adjacent, v));
        }
    }
    None
}

fn closed_rows_complementary(g: &Graph, u: usize, v: usize) -> bool {
    let n = g.order();
    let mut covered = 0usize;
    for w in 0..n {
        let in_u = w == u || g.has_edge(u, w);
        let in_v = w == v || g.has_edge(v, w);
        if in_u && in_v {
            return false;
        }
        if in_u || in_v {
            covered += 1;
        }
    }
    covered == n
}

fn open_rows_complementary(g: &Graph, u: usize, v: usize) -> bool {
    let n = g.order();
    let mut covered = 0usize;
    for w in 0..n {
        let in_u = g.has_edge(u, w);
        let in_v = g.has_edge(v, w);
        if in_u && in_v {
            return false;
        }
        if in_u || in_v {
            covered += 1;
        }
    }
    covered == n
}

/// Pairs every vertex with its unique co-twin. Returns `Ok(None)` when no
/// complete pairing of a single kind exists (the structural results all
/// require the full pairing).
pub fn detect_cotwins_generic(g: &Graph) -> Result<Option<CoTwinPairing>, CoTwinError> {
    if detect_twins_generic(g).is_some() {
        return Err(CoTwinError::NotTwinFree);
    }
    let n = g.order();
    if n < 2 || !n.is_multiple_of(2) {
        return Ok(None);
    }
    'kinds: for kind in [CoTwinKind::Nonadjacent, CoTwinKind::Adjacent] {
        let mut partner = vec![usize::MAX; n];
        for u in 0..n {
            for v in (u + 1)..n {
                let hit = match kind {
                    CoTwinKind::Nonadjacent => closed_rows_complementary(g, u, v),
                    CoTwinKind::Adjacent => open_rows_complementary(g, u, v),
                };
                if hit {
                    partner[u] = v;
                    partner[v] = u;
                }
            }
        }
        if partner.contains(&usize::MAX) {
            continue 'kinds;
        }
        let pairs = (0..n)
            .filter(|&u| u < partner[u])
            .map(|u| (u, partner[u]))
            .collect();
        return Ok(Some(CoTwinPairing { kind, pairs }));
    }
    Ok(None)
}

/// Algebraic co-twin detection on a twin-free circulant of order `n = 2k`:
/// nonadjacent co-twins exist iff `k ∉ A`, `|A| = k−1`, and `k + a ∉ A` for
/// every `a ∈ A`; the pairs are `{u, u+k}`. Adjacent co-twins are detected by
/// the same test on the complement set. Odd order is trivially negative.
pub fn detect_cotwins_circulant(
    spec: &CirculantSpec,
) -> Result<Option<CoTwinPairing>, CoTwinError> {
    if detect_twins_circulant(spec).is_some() {
        return Err(CoTwinError::NotTwinFree);
    }
    let n = spec.n();
    if n < 2 || !n.is_multiple_of(2) {
        return Ok(None);
    }
    let k = n / 2;
    let pairs = || {
        (0..k as usize)
            .map(|u| (u, u + k as usize))
            .collect::<Vec<_>>()
    };
    if antipodal_conditions(spec, k) {
        return Ok(Some(CoTwinPairing {
            kind: CoTwinKind::Nonadjacent,
            pairs: pairs(),
        }));
    }
    if antipodal_conditions(&spec.complement(), k) {
        return Ok(Some(CoTwinPairing {
            kind: CoTwinKind::Adjacent,
            pairs: pairs(),
        }));
    }
    Ok(None)
}

fn antipodal_conditions(spec: &CirculantSpec, k: u64) -> bool {
    let n = spec.n();
    !spec.set().contains(k)
        && spec.valency() as u64 == k - 1
        && spec.members().iter().all(|&a| !spec.set().contains((k + a) % n))
}

/// A crown graph `K_{k,k}` minus a perfect matching, witnessed by its
/// bipartition and the removed matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrownWitness {
    pub k: usize,
    pub sides: (Vec<usize>, Vec<usize>),
    /// The missing 1-factor: each side-0 vertex with its unique non-neighbor
    /// on side 1.
    pub matching: Vec<(usize, usize)>,
}

/// Recognizes crowns directly: order `2k` with `k ≥ 3`, connected, regular of
/// degree `k−1`, bipartite with equal sides, and each vertex non-adjacent to
/// exactly one vertex of the opposite side.
///
/// ```
/// use circsym::circulant::CirculantSpec;
/// use circsym::cotwins::recognize_crown;
///
/// let ten_cycle_complementary = CirculantSpec::parse(10, "±1,±3").unwrap().build();
/// assert_eq!(recognize_crown(&ten_cycle_complementary).unwrap().k, 5);
///
/// let with_triangles = CirculantSpec::parse(10, "±1,±2").unwrap().build();
/// assert!(recognize_crown(&with_triangles).is_none());
/// ```
pub fn recognize_crown(g: &Graph) -> Option<CrownWitness> {
    let n = g.order();
    if n < 6 || !n.is_multiple_of(2) {
        return None;
    }
    let k = n / 2;
    if g.is_regular() != Some(k - 1) || !g.is_connected() {
        return None;
    }
    let (side0, side1) = g.bipartition()?;
    if side0.len() != k || side1.len() != k {
        return None;
    }
    let mut matching = Vec::with_capacity(k);
    let mut hit = vec![false; n];
    for &u in &side0 {
        let missing: Vec<usize> = side1
            .iter()
            .copied()
            .filter(|&v| !g.has_edge(u, v))
            .collect();
        if missing.len() != 1 || hit[missing[0]] {
            return None;
        }
        hit[missing[0]] = true;
        matching.push((u, missing[0]));
    }
    Some(CrownWitness {
        k,
        sides: (side0, side1),
        matching,
    })
}

/// The circulant form of the crown on `2k` vertices: for odd `k = 2ℓ+1` it is
/// `C_2k(±1, ±3, …, ±(2ℓ−1))`; for even `k` no circulant form exists.
pub fn crown_circulant_spec(k: u64) -> Option<CirculantSpec> {
    assert!(k >= 3);
    if k.is_multiple_of(2) {
        return None;
    }
    let n = 2 * k;
    let mut members = Vec::new();
    let mut a = 1;
    while a < k {
        members.push(a);
        members.push(n - a);
        a += 2;
    }
    Some(CirculantSpec::from_members(n, members).expect("odd generators are valid"))
}

/// The subgraph induced by `N(u)`, with the relabeling map retained.
pub fn neighborhood_subgraph(g: &Graph, u: usize) -> (Graph, Vec<usize>) {
    g.induced_subgraph(&g.open_neighborhood(u))
}

/// The Cartesian product `K_k □ K_2`: two complete layers `0..k` and
/// `k..2k` joined by the perfect matching `(u, u+k)`.
pub fn complete_prism(k: usize) -> Graph {
    assert!(k >= 1);
    let mut g = Graph::new(2 * k).expect("within cap");
    for u in 0..k {
        for v in (u + 1)..k {
            g.set_edge(u, v);
            g.set_edge(k + u, k + v);
        }
        g.set_edge(u, k + u);
    }
    g
}

/// The crown graph on `2k` vertices, as the complement of `K_k □ K_2`.
pub fn crown_graph(k: usize) -> Graph {
    complete_prism(k).complement()
}
