//! Twin vertices, twin partitions, quotient graphs, and iterated quotient
//! sequences.
//!
//! Two distinct vertices are nonadjacent twins iff `N(u) = N(v)` and adjacent
//! twins iff `N[u] = N[v]`. For a circulant graph the detection is algebraic:
//! `C_n(A)` has nonadjacent twins iff `A` is a union of nontrivial cosets of a
//! proper subgroup `⟨w⟩`, and adjacent twins iff `A ∪ {0}` is a union of
//! cosets (trivial coset included); the classes are the cosets of the
//! maximum-order admissible `w`.

use crate::circulant::{CirculantSpec, ConnectionSet};
use crate::graph::Graph;
use crate::zn;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwinKind {
    Nonadjacent,
    Adjacent,
}

impl TwinKind {
    pub fn flipped(self) -> TwinKind {
        match self {
            TwinKind::Nonadjacent => TwinKind::Adjacent,
            TwinKind::Adjacent => TwinKind::Nonadjacent,
        }
    }
}

impl std::fmt::Display for TwinKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TwinKind::Nonadjacent => f.write_str("nonadjacent"),
            TwinKind::Adjacent => f.write_str("adjacent"),
        }
    }
}

/// A twin partition of the vertex set. Classes are the equivalence classes of
/// equal open (nonadjacent kind) or closed (adjacent kind) neighborhoods;
/// singleton classes are kept so the classes always partition `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    pub kind: TwinKind,
    /// Subgroup generator `w` when the classes are the cosets of `⟨w⟩`
    /// (algebraic detection on circulants). `None` for generic detection and
    /// for the complete/empty graphs, whose single class is all of `Z_n`.
    pub generator: Option<u64>,
    /// Every subgroup generator passing the coset test, in decreasing order
    /// of subgroup order; the first one is the chosen `generator`.
    pub admissible_generators: Vec<u64>,
    /// Classes sorted internally, ordered by minimum vertex.
    pub classes: Vec<Vec<usize>>,
}

impl TwinPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The common class size, when classes are uniform (always the case for
    /// vertex-transitive inputs).
    pub fn uniform_class_size(&self) -> Option<usize> {
        let t = self.classes.first()?.len();
        self.classes.iter().all(|c| c.len() == t).then_some(t)
    }

    /// Index of the class containing each vertex.
    pub fn class_index(&self) -> Vec<usize> {
        let n: usize = self.classes.iter().map(|c| c.len()).sum();
        let mut idx = vec![usize::MAX; n];
        for (i, class) in self.classes.iter().enumerate() {
            for &v in class {
                idx[v] = i;
            }
        }
        idx
    }

    /// Size of a minimum twin cover: all but one vertex from each class.
    pub fn min_twin_cover_size(&self) -> usize {
        self.classes.iter().map(|c| c.len() - 1).sum()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("expected a {expected} twin partition, got {got}")]
    WrongKind { expected: TwinKind, got: TwinKind },
}

/// Groups vertices by equal open neighborhoods; if all groups are trivial,
/// groups by equal closed neighborhoods; `None` if both groupings are
/// trivial (the graph is twin-free).
pub fn detect_twins_generic(g: &Graph) -> Option<TwinPartition> {
    let n = g.order();
    if n <= 1 {
        return None;
    }
    for kind in [TwinKind::Nonadjacent, TwinKind::Adjacent] {
        let classes = group_by_neighborhood(g, kind);
        if classes.iter().any(|c| c.len() > 1) {
            return Some(TwinPartition {
                kind,
                generator: None,
                admissible_generators: Vec::new(),
                classes,
            });
        }
    }
    None
}

fn group_by_neighborhood(g: &Graph, kind: TwinKind) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for v in 0..g.order() {
        let mut key = g.row(v).to_vec();
        if kind == TwinKind::Adjacent {
            key[v / 64] |= 1u64 << (v % 64);
        }
        groups.entry(key).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    classes
}

/// Algebraic twin detection on a circulant spec via the coset
/// characterization. Agrees exactly with [`detect_twins_generic`] on the
/// built graph.
///
/// ```
/// use circsym::circulant::CirculantSpec;
/// use circsym::twins::{detect_twins_circulant, TwinKind};
///
/// let spec = CirculantSpec::parse(9, "±1,±2,±4").unwrap();
/// let part = detect_twins_circulant(&spec).unwrap();
/// assert_eq!(part.kind, TwinKind::Nonadjacent);
/// assert_eq!(part.generator, Some(3));
/// assert_eq!(part.classes[0], vec![0, 3, 6]);
/// ```
pub fn detect_twins_circulant(spec: &CirculantSpec) -> Option<TwinPartition> {
    let n = spec.n();
    if n <= 1 {
        return None;
    }
    if spec.is_empty_graph() || spec.is_complete() {
        // Extreme cases: the single twin class is all of Z_n (the subgroup
        // generated by a unit); the tables print no w for these.
        let kind = if spec.is_empty_graph() {
            TwinKind::Nonadjacent
        } else {
            TwinKind::Adjacent
        };
        return Some(TwinPartition {
            kind,
            generator: None,
            admissible_generators: Vec::new(),
            classes: vec![(0..n as usize).collect()],
        });
    }

    let with_zero: Vec<u64> = {
        let mut v = vec![0u64];
        v.extend_from_slice(spec.members());
        v
    };

    // Candidate subgroups of Z_n are ⟨n/d⟩ for divisors d (the subgroup
    // order), scanned in decreasing order so the first hit is maximal.
    for kind in [TwinKind::Nonadjacent, TwinKind::Adjacent] {
        let mut admissible = Vec::new();
        for d in divisors_descending(n) {
            let w = n / d;
            let sub = zn::subgroup(n, w);
            debug_assert_eq!(sub.order(), d);
            let hit = match kind {
                TwinKind::Nonadjacent => zn::is_union_of_cosets(spec.members(), &sub, false),
                TwinKind::Adjacent => zn::is_union_of_cosets(&with_zero, &sub, true),
            };
            if hit {
                admissible.push(w);
            }
        }
        if let Some(&w) = admissible.first() {
            let classes = zn::subgroup(n, w)
                .cosets()
                .into_iter()
                .map(|c| c.into_iter().map(|v| v as usize).collect())
                .collect();
            return Some(TwinPartition {
                kind,
                generator: Some(w),
                admissible_generators: admissible,
                classes,
            });
        }
    }
    None
}

/// Proper divisors `d` of `n` with `1 < d < n`, descending.
fn divisors_descending(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (2..n).filter(|d| n.is_multiple_of(*d)).collect();
    ds.sort_unstable_by(|a, b| b.cmp(a));
    ds
}

/// One collapse step: the quotient graph plus the data describing how it was
/// produced.
#[derive(Debug, Clone)]
pub struct QuotientStep {
    pub kind: TwinKind,
    /// Classes of the input graph that were collapsed.
    pub classes: Vec<Vec<usize>>,
    pub graph: Graph,
    /// Spec of the quotient when the input was circulant.
    pub spec: Option<CirculantSpec>,
}

impl QuotientStep {
    /// The common collapsed-class size, when uniform.
    pub fn class_size(&self) -> Option<usize> {
        let t = self.classes.first()?.len();
        self.classes.iter().all(|c| c.len() == t).then_some(t)
    }
}

/// Collapses each twin class to a single vertex. Class `i` of the partition
/// becomes vertex `i`; distinct classes are joined iff their representatives
/// are adjacent (for adjacent twins the intra-class edges vanish).
pub fn quotient(g: &Graph, part: &TwinPartition) -> QuotientStep {
    let m = part.class_count();
    let mut q = Graph::new(m).expect("quotient does not grow");
    for i in 0..m {
        for j in (i + 1)..m {
            if g.has_edge(part.classes[i][0], part.classes[j][0]) {
                q.set_edge(i, j);
            }
        }
    }
    QuotientStep {
        kind: part.kind,
        classes: part.classes.clone(),
        graph: q,
        spec: None,
    }
}

/// The nonadjacent twin quotient of a circulant graph is circulant: with
/// class size `d` and `m = n/d`, it is `C_m(A')` where `A' = A mod m`.
pub fn quotient_circulant(
    spec: &CirculantSpec,
    part: &TwinPartition,
) -> Result<CirculantSpec, QuotientError> {
    if part.kind != TwinKind::Nonadjacent {
        return Err(QuotientError::WrongKind {
            expected: TwinKind::Nonadjacent,
            got: part.kind,
        });
    }
    let m = part.class_count() as u64;
    let members: Vec<u64> = spec.members().iter().map(|&a| a % m).collect();
    let set = ConnectionSet::new(m, members).expect("projected set stays valid");
    Ok(CirculantSpec::new(set))
}

/// Quotient spec for either twin kind. Adjacent collapses go through the
/// complement: the adjacent quotient of `G` is the complement of the
/// nonadjacent quotient of the complement of `G`.
pub fn quotient_spec(spec: &CirculantSpec, part: &TwinPartition) -> CirculantSpec {
    match part.kind {
        TwinKind::Nonadjacent => quotient_circulant(spec, part).expect("kind checked"),
        TwinKind::Adjacent => {
            let comp_part = TwinPartition {
                kind: TwinKind::Nonadjacent,
                generator: part.generator,
                admissible_generators: part.admissible_generators.clone(),
                classes: part.classes.clone(),
            };
            quotient_circulant(&spec.complement(), &comp_part)
                .expect("kind checked")
                .complement()
        }
    }
}

/// A chain of twin collapses ending at a twin-free graph.
#[derive(Debug, Clone)]
pub struct QuotientSequence {
    pub initial_graph: Graph,
    pub initial_spec: Option<CirculantSpec>,
    pub steps: Vec<QuotientStep>,
}

impl QuotientSequence {
    pub fn terminal_graph(&self) -> &Graph {
        self.steps.last().map_or(&self.initial_graph, |s| &s.graph)
    }

    pub fn terminal_spec(&self) -> Option<&CirculantSpec> {
        if self.steps.is_empty() {
            self.initial_spec.as_ref()
        } else {
            self.steps.last().and_then(|s| s.spec.as_ref())
        }
    }
}

/// Repeatedly detects and collapses twins until the graph is twin-free.
pub fn quotient_sequence(g: &Graph) -> QuotientSequence {
    let mut steps = Vec::new();
    let mut current = g.clone();
    while let Some(part) = detect_twins_generic(&current) {
        let step = quotient(&current, &part);
        current = step.graph.clone();
        steps.push(step);
    }
    QuotientSequence {
        initial_graph: g.clone(),
        initial_spec: None,
        steps,
    }
}

/// Quotient sequence for a circulant input; every step carries the quotient
/// spec, with detection done algebraically.
pub fn quotient_sequence_circulant(spec: &CirculantSpec) -> QuotientSequence {
    let initial_graph = spec.build();
    let mut steps = Vec::new();
    let mut cur_spec = spec.clone();
    let mut cur_graph = initial_graph.clone();
    while let Some(part) = detect_twins_circulant(&cur_spec) {
        let next_spec = quotient_spec(&cur_spec, &part);
        let mut step = quotient(&cur_graph, &part);
        debug_assert_eq!(step.graph, next_spec.build());
        step.spec = Some(next_spec.clone());
        cur_graph = step.graph.clone();
        cur_spec = next_spec;
        steps.push(step);
    }
    QuotientSequence {
        initial_graph,
        initial_spec: Some(spec.clone()),
        steps,
    }
}
