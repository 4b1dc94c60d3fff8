//! The backtracking search behind the automorphism oracle.
//!
//! The engine maps vertices of a domain graph onto a codomain graph (the same
//! graph for automorphisms). Vertices are processed in index order; candidate
//! images are seeded from an iterated neighborhood-class refinement and
//! narrowed by forward-checking against every assignment, so a completed
//! branch is adjacency-consistent by construction. Images are tried in
//! ascending order, which makes the emitted permutations lexicographic.

use super::perm::Perm;
use crate::graph::Graph;
use std::collections::BTreeMap;
use thiserror::Error;

/// Vertex cap of the search; rows are single machine words.
pub const SEARCH_VERTEX_CAP: usize = 64;

/// Default cap on the number of enumerated automorphisms.
pub const DEFAULT_ENUM_LIMIT: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph order {order} exceeds the search cap {cap}")]
    SizeCap { order: usize, cap: usize },
    #[error("enumeration exceeded the limit of {limit} permutations")]
    LimitExceeded { limit: usize },
}

struct Rows {
    n: usize,
    rows: Vec<u64>,
}

fn rows_of(g: &Graph) -> Result<Rows, OracleError> {
    let n = g.order();
    if n > SEARCH_VERTEX_CAP {
        return Err(OracleError::SizeCap {
            order: n,
            cap: SEARCH_VERTEX_CAP,
        });
    }
    let mut rows = vec![0u64; n];
    for (u, row) in rows.iter_mut().enumerate() {
        for v in g.open_neighborhood(u) {
            *row |= 1 << v;
        }
    }
    Ok(Rows { n, rows })
}

/// Iterated neighborhood-class refinement, computed jointly so classes are
/// comparable across the listed graphs. Classes are exact (interned keys,
/// no hashing) and invariant under isomorphism.
fn refinement_classes(graphs: &[&Graph]) -> Vec<Vec<u32>> {
    let mut colors: Vec<Vec<u32>> = graphs.iter().map(|g| vec![0u32; g.order()]).collect();
    let mut distinct = 1usize;
    loop {
        let mut keys: Vec<Vec<(u32, Vec<u32>)>> = Vec::with_capacity(graphs.len());
        for (gi, g) in graphs.iter().enumerate() {
            let mut gkeys = Vec::with_capacity(g.order());
            for v in 0..g.order() {
                let mut nb: Vec<u32> = g
                    .open_neighborhood(v)
                    .into_iter()
                    .map(|w| colors[gi][w])
                    .collect();
                nb.sort_unstable();
                gkeys.push((colors[gi][v], nb));
            }
            keys.push(gkeys);
        }
        let mut rank: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for gkeys in &keys {
            for key in gkeys {
                let next = rank.len() as u32;
                rank.entry(key).or_insert(next);
            }
        }
        // Re-rank in sorted key order for canonical ids.
        let sorted: BTreeMap<&(u32, Vec<u32>), u32> = rank
            .keys()
            .enumerate()
            .map(|(i, k)| (*k, i as u32))
            .collect();
        let new_distinct = sorted.len();
        for (gi, gkeys) in keys.iter().enumerate() {
            for (v, key) in gkeys.iter().enumerate() {
                colors[gi][v] = sorted[key];
            }
        }
        if new_distinct == distinct {
            return colors;
        }
        distinct = new_distinct;
    }
}

enum Sink {
    Collect { out: Vec<Perm>, limit: usize },
    First { out: Option<Perm> },
}

struct Search<'a> {
    a: &'a Rows,
    b: &'a Rows,
    cand: Vec<Vec<u64>>,
    images: Vec<u16>,
    sink: Sink,
}

impl Search<'_> {
    fn run(&mut self) -> Result<(), OracleError> {
        self.dfs(0)
    }

    fn done(&self) -> bool {
        matches!(self.sink, Sink::First { out: Some(_) })
    }

    fn dfs(&mut self, depth: usize) -> Result<(), OracleError> {
        let n = self.a.n;
        if depth == n {
            let perm = Perm::from_images(self.images.clone());
            match &mut self.sink {
                Sink::Collect { out, limit } => {
                    if out.len() >= *limit {
                        return Err(OracleError::LimitExceeded { limit: *limit });
                    }
                    out.push(perm);
                }
                Sink::First { out } => *out = Some(perm),
            }
            return Ok(());
        }
        let mut choices = self.cand[depth][depth];
        while choices != 0 {
            let v = choices.trailing_zeros() as usize;
            choices &= choices - 1;
            let mut viable = true;
            for w in (depth + 1)..n {
                let mut m = self.cand[depth][w] & !(1 << v);
                if self.a.rows[depth] >> w & 1 == 1 {
                    m &= self.b.rows[v];
                } else {
                    m &= !self.b.rows[v];
                }
                self.cand[depth + 1][w] = m;
                if m == 0 {
                    viable = false;
                    break;
                }
            }
            if viable {
                self.images[depth] = v as u16;
                self.dfs(depth + 1)?;
                if self.done() {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

fn initial_candidates(
    a: &Rows,
    b: &Rows,
    class_a: &[u32],
    class_b: &[u32],
    pins: &[(usize, usize)],
) -> Option<Vec<u64>> {
    let mut cand = vec![0u64; a.n];
    for (u, slot) in cand.iter_mut().enumerate() {
        for (v, cb) in class_b.iter().enumerate() {
            if class_a[u] == *cb {
                *slot |= 1 << v;
            }
        }
    }
    for &(u, v) in pins {
        assert!(u < a.n && v < b.n, "pinned vertex out of range");
        cand[u] &= 1 << v;
        if cand[u] == 0 {
            return None;
        }
    }
    Some(cand)
}

fn search(
    a: &Rows,
    b: &Rows,
    class_a: &[u32],
    class_b: &[u32],
    pins: &[(usize, usize)],
    sink: Sink,
) -> Result<Sink, OracleError> {
    let Some(init) = initial_candidates(a, b, class_a, class_b, pins) else {
        return Ok(sink);
    };
    let mut cand = vec![vec![0u64; a.n.max(1)]; a.n + 1];
    cand[0] = init;
    let mut s = Search {
        a,
        b,
        cand,
        images: vec![0u16; a.n],
        sink,
    };
    s.run()?;
    Ok(s.sink)
}

/// All adjacency-preserving bijections of `g` that extend the pinned partial
/// map, in lexicographic image order.
pub fn enumerate_with_pins(
    g: &Graph,
    pins: &[(usize, usize)],
    limit: usize,
) -> Result<Vec<Perm>, OracleError> {
    let rows = rows_of(g)?;
    let classes = refinement_classes(&[g]);
    let sink = search(
        &rows,
        &rows,
        &classes[0],
        &classes[0],
        pins,
        Sink::Collect {
            out: Vec::new(),
            limit,
        },
    )?;
    match sink {
        Sink::Collect { out, .. } => Ok(out),
        Sink::First { .. } => unreachable!(),
    }
}

/// The first automorphism extending the pinned partial map, if any.
pub fn find_with_pins(g: &Graph, pins: &[(usize, usize)]) -> Result<Option<Perm>, OracleError> {
    let rows = rows_of(g)?;
    let classes = refinement_classes(&[g]);
    let sink = search(
        &rows,
        &rows,
        &classes[0],
        &classes[0],
        pins,
        Sink::First { out: None },
    )?;
    match sink {
        Sink::First { out } => Ok(out),
        Sink::Collect { .. } => unreachable!(),
    }
}

/// An isomorphism from `a` onto `b`, if one exists.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Result<Option<Perm>, OracleError> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let ra = rows_of(a)?;
    let rb = rows_of(b)?;
    let classes = refinement_classes(&[a, b]);
    let sink = search(
        &ra,
        &rb,
        &classes[0],
        &classes[1],
        &[],
        Sink::First { out: None },
    )?;
    match sink {
        Sink::First { out } => Ok(out),
        Sink::Collect { .. } => unreachable!(),
    }
}
