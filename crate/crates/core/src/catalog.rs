//! Enumeration and classification jobs: the two- and three-generator twin
//! tables, coset-block twin families, and the twin-free co-twin circulant
//! enumerations, each with a nonisomorphy certificate.

use crate::autgroup::find_isomorphism;
use crate::circulant::{
    enumerate_connection_sets, multiplier_canonical_members, CirculantSpec, ConnectionSet,
};
use crate::cotwins::{detect_cotwins_circulant, CoTwinKind};
use crate::graph::Graph;
use crate::twins::{detect_twins_circulant, TwinKind};
use crate::zn;
use serde::Serialize;

/// An isomorphism-invariant combinatorial signature: order, valency,
/// component count, bipartiteness, triangle count, and the sorted multiset
/// of `(adjacent, common neighbor count)` over vertex pairs. Equal
/// fingerprints are necessary for isomorphism, so differing fingerprints
/// certify nonisomorphy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub valency: Option<usize>,
    pub components: usize,
    pub bipartite: bool,
    pub triangles: u64,
    pub pair_signature: Vec<((bool, usize), usize)>,
}

impl Fingerprint {
    pub fn of(g: &Graph) -> Fingerprint {
        let mut sig: std::collections::BTreeMap<(bool, usize), usize> = Default::default();
        for u in 0..g.order() {
            for v in (u + 1)..g.order() {
                let key = (g.has_edge(u, v), g.common_neighbor_count(u, v));
                *sig.entry(key).or_insert(0) += 1;
            }
        }
        Fingerprint {
            order: g.order(),
            valency: g.is_regular(),
            components: g.component_count(),
            bipartite: g.is_bipartite(),
            triangles: g.triangle_count(),
            pair_signature: sig.into_iter().collect(),
        }
    }
}

/// How a pair of graphs was certified distinct (or not).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairCertificate {
    FingerprintDiffers,
    OracleNonIsomorphic,
    Isomorphic,
    Unresolved,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistinctnessReport {
    /// One entry per unordered pair `(i, j)` with `i < j`.
    pub pairs: Vec<(usize, usize, PairCertificate)>,
    pub all_distinct: bool,
}

/// Pairwise nonisomorphy certificates: fingerprints first, the oracle
/// isomorphism search on ties (feasible up to the search cap), `Unresolved`
/// beyond it.
pub fn certify_pairwise_distinct(graphs: &[Graph]) -> DistinctnessReport {
    let fps: Vec<Fingerprint> = graphs.iter().map(Fingerprint::of).collect();
    let mut pairs = Vec::new();
    let mut all_distinct = true;
    for i in 0..graphs.len() {
        for j in (i + 1)..graphs.len() {
            let cert = if fps[i] != fps[j] {
                PairCertificate::FingerprintDiffers
            } else {
                match find_isomorphism(&graphs[i], &graphs[j]) {
                    Ok(Some(_)) => PairCertificate::Isomorphic,
                    Ok(None) => PairCertificate::OracleNonIsomorphic,
                    Err(_) => PairCertificate::Unresolved,
                }
            };
            if matches!(cert, PairCertificate::Isomorphic | PairCertificate::Unresolved) {
                all_distinct = false;
            }
            pairs.push((i, j, cert));
        }
    }
    DistinctnessReport {
        pairs,
        all_distinct,
    }
}

/// A full catalog record for one circulant: spec echo, twin and co-twin
/// summaries, the symmetry report, and the invariant fingerprint.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub set: String,
    pub n: u64,
    pub valency: usize,
    pub twin_kind: Option<TwinKind>,
    pub twin_generator: Option<u64>,
    pub twin_class_size: Option<usize>,
    pub cotwin_kind: Option<crate::cotwins::CoTwinKind>,
    pub group_order: Option<String>,
    pub group_expression: Option<String>,
    pub det: Option<crate::symmetry::SymmetryValue>,
    pub dist: Option<crate::symmetry::SymmetryValue>,
    pub fingerprint: Fingerprint,
}

/// Builds the full record; group and symmetry fields stay empty when the
/// oracle is infeasible within `limit`.
pub fn catalog_entry(spec: &CirculantSpec, limit: usize) -> CatalogEntry {
    let g = spec.build();
    let part = detect_twins_circulant(spec);
    let pairing = part
        .is_none()
        .then(|| detect_cotwins_circulant(spec).expect("twin-free"))
        .flatten();
    let sym = crate::symmetry::symmetry_report(&g, Some(spec), crate::symmetry::Mode::Formula, limit).ok();
    CatalogEntry {
        set: spec.canonical(),
        n: spec.n(),
        valency: spec.valency(),
        twin_kind: part.as_ref().map(|p| p.kind),
        twin_generator: part.as_ref().and_then(|p| p.generator),
        twin_class_size: part.as_ref().and_then(|p| p.uniform_class_size()),
        cotwin_kind: pairing.as_ref().map(|p| p.kind),
        group_order: sym.as_ref().map(|s| s.group.order.to_string()),
        group_expression: sym.as_ref().map(|s| s.group.expr.to_string()),
        det: sym.as_ref().map(|s| s.det),
        dist: sym.as_ref().map(|s| s.dist),
        fingerprint: Fingerprint::of(&g),
    }
}

/// A classified twin-bearing circulant from a table scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinClassRow {
    pub n: u64,
    /// The generator tuple `(i, j)` or `(i, j, k)` of the scan.
    pub generators: Vec<u64>,
    pub set: String,
    pub kind: TwinKind,
    /// Twin-class subgroup generator; `None` for the complete graphs.
    pub w: Option<u64>,
}

/// Scans all connected two-generator circulants `C_n(i, j)`,
/// `0 < i < j ≤ n/2`, `n ≤ max_n`, and reports those with twins.
pub fn classify_two_generator(max_n: u64) -> Vec<TwinClassRow> {
    assert!(max_n >= 4);
    let mut out = Vec::new();
    for n in 4..=max_n {
        for j in 2..=(n / 2) {
            for i in 1..j {
                if zn::gcd(zn::gcd(i, j), n) != 1 {
                    continue;
                }
                let spec = two_generator_spec(n, i, j);
                if let Some(part) = detect_twins_circulant(&spec) {
                    out.push(TwinClassRow {
                        n,
                        generators: vec![i, j],
                        set: spec.canonical(),
                        kind: part.kind,
                        w: part.generator,
                    });
                }
            }
        }
    }
    out
}

pub fn two_generator_spec(n: u64, i: u64, j: u64) -> CirculantSpec {
    CirculantSpec::from_members(n, [i, n - i, j, n - j]).expect("0 < i < j ≤ n/2")
}

/// Scans all connected three-generator circulants `C_n(i, j, k)`,
/// `0 < i < j < k ≤ n/2`, `n ≤ max_n`, and reports those with twins.
pub fn classify_three_generator(max_n: u64) -> Vec<TwinClassRow> {
    assert!(max_n >= 6);
    let mut out = Vec::new();
    for n in 6..=max_n {
        for k in 3..=(n / 2) {
            for j in 2..k {
                for i in 1..j {
                    if zn::gcd(zn::gcd(zn::gcd(i, j), k), n) != 1 {
                        continue;
                    }
                    let spec = three_generator_spec(n, i, j, k);
                    if let Some(part) = detect_twins_circulant(&spec) {
                        out.push(TwinClassRow {
                            n,
                            generators: vec![i, j, k],
                            set: spec.canonical(),
                            kind: part.kind,
                            w: part.generator,
                        });
                    }
                }
            }
        }
    }
    out
}

pub fn three_generator_spec(n: u64, i: u64, j: u64, k: u64) -> CirculantSpec {
    CirculantSpec::from_members(n, [i, n - i, j, n - j, k, n - k]).expect("0 < i < j < k ≤ n/2")
}

/// The published two-generator pattern: which connected `C_n(i, j)` have
/// twins, and with which `w`. Sporadic rows take precedence over the family.
pub fn table1_pattern(n: u64, i: u64, j: u64) -> Option<(TwinKind, Option<u64>)> {
    let valency = if j == n - j { 3 } else { 4 };
    if valency == n - 1 {
        return Some((TwinKind::Adjacent, None)); // K_4, K_5
    }
    if (n, i, j) == (6, 1, 3) || (n, i, j) == (8, 1, 3) {
        return Some((TwinKind::Nonadjacent, Some(2)));
    }
    if n.is_multiple_of(2) && i + j == n / 2 {
        return Some((TwinKind::Nonadjacent, Some(n / 2)));
    }
    None
}

/// The published three-generator pattern, sporadic rows first.
pub fn table2_pattern(n: u64, i: u64, j: u64, k: u64) -> Option<(TwinKind, Option<u64>)> {
    let valency = if k == n - k { 5 } else { 6 };
    if valency == n - 1 {
        return Some((TwinKind::Adjacent, None)); // K_6, K_7
    }
    if (n, i, j, k) == (10, 1, 3, 5) || (n, i, j, k) == (12, 1, 3, 5) {
        return Some((TwinKind::Nonadjacent, Some(2))); // K_{5,5}, K_{6,6}
    }
    if n.is_multiple_of(2) && k == n / 2 && i + j == k {
        return Some((TwinKind::Adjacent, Some(n / 2)));
    }
    if n.is_multiple_of(3) && i + j == n / 3 && 2 * i + j == k && 2 * k < n {
        return Some((TwinKind::Nonadjacent, Some(n / 3)));
    }
    if n.is_multiple_of(2) && i + k == n / 2 && 2 * j == n / 2 && 2 * k < n {
        return Some((TwinKind::Nonadjacent, Some(n / 2)));
    }
    None
}

/// CSV for a two-generator classification: `n,i,j,set,kind,w`.
pub fn two_generator_csv(rows: &[TwinClassRow]) -> String {
    let mut out = String::from("n,i,j,set,kind,w\n");
    for r in rows {
        let w = r.w.map(|w| w.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n, r.generators[0], r.generators[1], r.set, r.kind, w
        ));
    }
    out
}

/// CSV for a three-generator classification: `n,i,j,k,set,kind,w`.
pub fn three_generator_csv(rows: &[TwinClassRow]) -> String {
    let mut out = String::from("n,i,j,k,set,kind,w\n");
    for r in rows {
        let w = r.w.map(|w| w.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n, r.generators[0], r.generators[1], r.generators[2], r.set, r.kind, w
        ));
    }
    out
}

/// A member of a fixed-twin-class family, with its fingerprint.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyEntry {
    pub set: String,
    pub valency: usize,
    pub connected: bool,
    pub bipartite: bool,
    pub fingerprint: Fingerprint,
    #[serde(skip)]
    pub spec: CirculantSpec,
}

/// All circulants of order `n` whose connection set is a union of the
/// inverse-closed orbit blocks `(b + ⟨w⟩) ∪ (−b + ⟨w⟩)` outside `⟨w⟩`:
/// the graphs whose nonadjacent twin classes contain the cosets of `⟨w⟩`.
/// Degenerate `w` (zero or a unit, where `⟨w⟩` is not proper nontrivial)
/// yields an empty list.
pub fn enumerate_with_twin_classes(n: u64, w: u64) -> Vec<FamilyEntry> {
    assert!(w < n);
    if w == 0 || zn::gcd(n, w) == 1 {
        return Vec::new();
    }
    let sub = zn::subgroup(n, w);
    let mut blocks: Vec<Vec<u64>> = Vec::new();
    let mut seen = vec![false; n as usize];
    for b in 0..n {
        if sub.contains(b) || seen[b as usize] {
            continue;
        }
        let mut block = sub.coset_of(b);
        block.extend(sub.coset_of((n - b) % n));
        block.sort_unstable();
        block.dedup();
        for &v in &block {
            seen[v as usize] = true;
        }
        blocks.push(block);
    }
    assert!(blocks.len() < 20, "too many orbit blocks");
    let mut out = Vec::new();
    for mask in 1u32..(1 << blocks.len()) {
        let members = blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .flat_map(|(_, b)| b.iter().copied());
        let set = ConnectionSet::new(n, members).expect("orbit blocks are inverse-closed");
        let spec = CirculantSpec::new(set);
        let g = spec.build();
        out.push(FamilyEntry {
            set: spec.canonical(),
            valency: spec.valency(),
            connected: g.is_connected(),
            bipartite: g.is_bipartite(),
            fingerprint: Fingerprint::of(&g),
            spec,
        });
    }
    out.sort_by(|a, b| a.spec.cmp(&b.spec));
    out
}

/// A twin-free co-twin circulant of a given order.
#[derive(Debug, Clone, Serialize)]
pub struct CotwinOrderEntry {
    pub set: String,
    pub pairs: Vec<(usize, usize)>,
    pub fingerprint: Fingerprint,
    #[serde(skip)]
    pub spec: CirculantSpec,
}

/// All twin-free circulants of order `n` with (nonadjacent) co-twins, up to
/// multiplier isomorphism, represented by the lexicographically smallest
/// member set of each class.
pub fn enumerate_twinfree_cotwin_circulants(n: u64) -> Vec<CotwinOrderEntry> {
    if !n.is_multiple_of(2) {
        return Vec::new();
    }
    let k = n / 2;
    let mut reps: std::collections::BTreeMap<Vec<u64>, CirculantSpec> = Default::default();
    for set in enumerate_connection_sets(n) {
        if set.len() as u64 != k - 1 {
            continue;
        }
        let spec = CirculantSpec::new(set);
        match detect_cotwins_circulant(&spec) {
            Ok(Some(p)) if p.kind == CoTwinKind::Nonadjacent => {
                reps.entry(multiplier_canonical_members(spec.set()))
                    .or_insert(spec);
            }
            _ => {}
        }
    }
    reps.into_values()
        .map(|spec| {
            let pairing = detect_cotwins_circulant(&spec)
                .expect("twin-free")
                .expect("positive");
            CotwinOrderEntry {
                set: spec.canonical(),
                pairs: pairing.pairs,
                fingerprint: Fingerprint::of(&spec.build()),
                spec,
            }
        })
        .collect()
}
