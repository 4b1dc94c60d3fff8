//! Determining and distinguishing numbers: closed forms where twin or
//! co-twin structure decides them, exhaustive searches as the oracle.

use crate::autgroup::{
    enumerate_automorphisms, is_arc_transitive_seeded, is_vertex_transitive, structural_order,
    GroupStructure, OracleError, Perm,
};
use crate::circulant::CirculantSpec;
use crate::cotwins::{
    detect_cotwins_circulant, detect_cotwins_generic, neighborhood_subgraph, recognize_crown,
    CoTwinKind,
};
use crate::graph::Graph;
use crate::twins::{detect_twins_circulant, detect_twins_generic, quotient, quotient_spec};
use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

/// Largest order on which the exhaustive determining-set search runs.
pub const DET_EXHAUSTIVE_CAP: usize = 20;
/// Largest order on which the exhaustive distinguishing-coloring search runs.
pub const DIST_EXHAUSTIVE_CAP: usize = 16;
/// Largest order on which arc-transitivity is decided in reports.
pub const ARC_CHECK_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Formula,
    Exhaustive,
    Both,
}

/// Method tags carried by every reported value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MethodTag {
    #[serde(rename = "Cor-DetTwins")]
    TwinClasses,
    #[serde(rename = "Thm-DistTwins")]
    TwinRecursion,
    #[serde(rename = "crown")]
    Crown,
    #[serde(rename = "StabAut")]
    NeighborhoodStabilizer,
    #[serde(rename = "exhaustive")]
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ValueBound {
    Exact { value: u64 },
    Bounds { lo: u64, hi: u64 },
}

impl ValueBound {
    pub fn exact(v: u64) -> Self {
        ValueBound::Exact { value: v }
    }

    pub fn value(&self) -> Option<u64> {
        match self {
            ValueBound::Exact { value } => Some(*value),
            ValueBound::Bounds { .. } => None,
        }
    }

    pub fn lo(&self) -> u64 {
        match self {
            ValueBound::Exact { value } => *value,
            ValueBound::Bounds { lo, .. } => *lo,
        }
    }

    pub fn hi(&self) -> u64 {
        match self {
            ValueBound::Exact { value } => *value,
            ValueBound::Bounds { hi, .. } => *hi,
        }
    }

    fn contains(&self, v: u64) -> bool {
        self.lo() <= v && v <= self.hi()
    }

    fn collapse(lo: u64, hi: u64) -> Self {
        if lo == hi {
            ValueBound::Exact { value: lo }
        } else {
            ValueBound::Bounds { lo, hi }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetryValue {
    #[serde(flatten)]
    pub value: ValueBound,
    pub method: MethodTag,
    /// Whether an independent exhaustive run confirmed the value.
    pub cross_checked: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("exhaustive search infeasible for order {order} (cap {cap})")]
    ExhaustiveInfeasible { order: usize, cap: usize },
    #[error("formula value {formula:?} disagrees with exhaustive value {exhaustive}")]
    CrossCheckMismatch { formula: ValueBound, exhaustive: u64 },
}

/// `C(d, t) ≥ target`, evaluated without overflow (`C(d, t) = 0` for `d < t`).
fn binomial_at_least(d: u64, t: u64, target: u64) -> bool {
    if target == 0 {
        return true;
    }
    if d < t {
        return false;
    }
    let k = t.min(d - t);
    let mut num: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul((d - i) as u128);
        if num == u128::MAX {
            return true;
        }
        num /= (i + 1) as u128;
    }
    num >= target as u128
}

/// Smallest `d ≥ 1` with `C(d, t) ≥ d_quotient`: the number of colors needed
/// once the quotient needs `d_quotient` and every twin class has size `t`.
///
/// ```
/// use circsym::symmetry::dist_twin_recursion;
///
/// assert_eq!(dist_twin_recursion(2, 3), 3); // C(3,2) = 3
/// assert_eq!(dist_twin_recursion(3, 10), 5); // C(5,3) = 10
/// ```
pub fn dist_twin_recursion(t: u64, d_quotient: u64) -> u64 {
    assert!(t >= 2 && d_quotient >= 1);
    (1..).find(|&d| binomial_at_least(d, t, d_quotient)).unwrap()
}

/// Exhaustive determining number: the smallest vertex set whose pointwise
/// stabilizer is trivial, found by subset search over maximal fixed-point
/// sets. For vertex-transitive graphs the search fixes vertex 0 first.
pub fn det_exhaustive(
    g: &Graph,
    vertex_transitive: bool,
    limit: usize,
) -> Result<(u64, Vec<usize>), OracleError> {
    let n = g.order();
    let full = enumerate_automorphisms(g, limit)?;
    let mut masks: Vec<u64> = full
        .perms()
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| p.fixed_mask())
        .collect();
    masks.sort_unstable();
    masks.dedup();
    // Only maximal fixed sets matter for the subset test.
    let maximal: Vec<u64> = masks
        .iter()
        .copied()
        .filter(|&m| !masks.iter().any(|&m2| m2 != m && m2 & m == m))
        .collect();
    if maximal.is_empty() {
        return Ok((0, Vec::new()));
    }
    let determining = |d: &[usize]| {
        let dm: u64 = d.iter().map(|&v| 1u64 << v).sum();
        maximal.iter().all(|&m| dm & !m != 0)
    };
    for k in 1..=n {
        let found = if vertex_transitive {
            (1..n)
                .combinations(k - 1)
                .map(|mut rest| {
                    rest.insert(0, 0);
                    rest
                })
                .find(|d| determining(d))
        } else {
            (0..n).combinations(k).find(|d| determining(d))
        };
        if let Some(d) = found {
            return Ok((k as u64, d));
        }
    }
    unreachable!("the full vertex set is always determining");
}

/// Exhaustive distinguishing number with a witness coloring. Colorings are
/// enumerated canonically (each new color appears at the first uncolored
/// vertex), pruned by the set of automorphisms still consistent with the
/// partial coloring; once that set is empty any completion works.
pub fn dist_exhaustive(g: &Graph, limit: usize) -> Result<(u64, Vec<u8>), OracleError> {
    let n = g.order();
    let full = enumerate_automorphisms(g, limit)?;
    let nontrivial: Vec<(Vec<u16>, Vec<u16>)> = full
        .perms()
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| (p.images().to_vec(), p.inverse().images().to_vec()))
        .collect();
    if nontrivial.is_empty() {
        return Ok((1, vec![0; n]));
    }
    for d in 2..=(n as u64) {
        let mut colors = vec![0u8; n];
        let alive: Vec<usize> = (0..nontrivial.len()).collect();
        if try_color(g, &nontrivial, d as usize, 0, 0, &alive, &mut colors) {
            debug_assert!(verify_distinguishing(&colors, full.perms()));
            return Ok((d, colors));
        }
    }
    unreachable!("all-distinct colors are always distinguishing");
}

#[allow(clippy::too_many_arguments)]
fn try_color(
    g: &Graph,
    perms: &[(Vec<u16>, Vec<u16>)],
    d: usize,
    v: usize,
    used: usize,
    alive: &[usize],
    colors: &mut Vec<u8>,
) -> bool {
    if alive.is_empty() {
        for c in colors.iter_mut().skip(v) {
            *c = 0;
        }
        return true;
    }
    if v == g.order() {
        return false;
    }
    let top = (used + 1).min(d);
    for c in 0..top {
        colors[v] = c as u8;
        let next_alive: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&pi| {
                let (img, inv) = &perms[pi];
                let w = img[v] as usize;
                if w <= v && colors[w] != colors[v] {
                    return false;
                }
                let u = inv[v] as usize;
                if u <= v && colors[u] != colors[v] {
                    return false;
                }
                true
            })
            .collect();
        let next_used = used.max(c + 1);
        if try_color(g, perms, d, v + 1, next_used, &next_alive, colors) {
            return true;
        }
    }
    false
}

/// Checks that every non-identity permutation moves some color class.
pub fn verify_distinguishing(colors: &[u8], perms: &[Perm]) -> bool {
    perms.iter().all(|p| {
        p.is_identity() || (0..colors.len()).any(|v| colors[p.apply(v)] != colors[v])
    })
}

/// The constructive coloring for a twin-free co-twin graph: a distinguishing
/// coloring of `H_u`, mirrored onto each co-twin, with `u` and its co-twin in
/// two different palette colors. Returns the coloring and the palette size.
pub fn cotwin_constructive_coloring(
    g: &Graph,
    pairing: &crate::cotwins::CoTwinPairing,
    limit: usize,
) -> Result<(Vec<u8>, u64), OracleError> {
    let u = 0usize;
    let partner_of = |v: usize| pairing.partner(v).expect("pairing covers V");
    let (h, map) = neighborhood_subgraph(g, u);
    let (d_h, col_h) = dist_exhaustive(&h, limit)?;
    let palette = d_h.max(2);
    let mut colors = vec![0u8; g.order()];
    for (i, &orig) in map.iter().enumerate() {
        colors[orig] = col_h[i];
        colors[partner_of(orig)] = col_h[i];
    }
    colors[u] = 0;
    colors[partner_of(u)] = 1;
    Ok((colors, palette))
}

fn vt_status(g: &Graph, spec: Option<&CirculantSpec>) -> Result<bool, OracleError> {
    if spec.is_some() {
        return Ok(true);
    }
    is_vertex_transitive(g)
}

/// Determining number through the formula cascade, the exhaustive oracle, or
/// both (cross-checked).
pub fn determining_number(
    g: &Graph,
    spec: Option<&CirculantSpec>,
    mode: Mode,
    limit: usize,
) -> Result<SymmetryValue, SymmetryError> {
    let exhaustive = |cross: bool| -> Result<SymmetryValue, SymmetryError> {
        if g.order() > DET_EXHAUSTIVE_CAP {
            return Err(SymmetryError::ExhaustiveInfeasible {
                order: g.order(),
                cap: DET_EXHAUSTIVE_CAP,
            });
        }
        let vt = vt_status(g, spec)?;
        let (value, _) = det_exhaustive(g, vt, limit)?;
        Ok(SymmetryValue {
            value: ValueBound::exact(value),
            method: MethodTag::Exhaustive,
            cross_checked: cross,
        })
    };
    match mode {
        Mode::Exhaustive => exhaustive(false),
        Mode::Formula => det_formula(g, spec, limit),
        Mode::Both => {
            let formula = det_formula(g, spec, limit)?;
            if g.order() > DET_EXHAUSTIVE_CAP {
                return Ok(formula);
            }
            let vt = vt_status(g, spec)?;
            match det_exhaustive(g, vt, limit) {
                Ok((value, _)) => {
                    if !formula.value.contains(value) {
                        return Err(SymmetryError::CrossCheckMismatch {
                            formula: formula.value,
                            exhaustive: value,
                        });
                    }
                    Ok(SymmetryValue {
                        cross_checked: true,
                        ..formula
                    })
                }
                Err(OracleError::LimitExceeded { .. }) => Ok(formula),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn det_formula(
    g: &Graph,
    spec: Option<&CirculantSpec>,
    limit: usize,
) -> Result<SymmetryValue, SymmetryError> {
    let n = g.order() as u64;
    if n <= 1 {
        return Ok(SymmetryValue {
            value: ValueBound::exact(0),
            method: MethodTag::Exhaustive,
            cross_checked: false,
        });
    }
    let twins = match spec {
        Some(s) => detect_twins_circulant(s),
        None => detect_twins_generic(g),
    };
    if let Some(part) = &twins {
        if let (true, Some(t)) = (vt_status(g, spec)?, part.uniform_class_size()) {
            // n(1 − 1/t), the minimum twin cover size.
            return Ok(SymmetryValue {
                value: ValueBound::exact(n - n / t as u64),
                method: MethodTag::TwinClasses,
                cross_checked: false,
            });
        }
        return fallback_exhaustive_det(g, spec, limit);
    }
    let pairing = match spec {
        Some(s) => detect_cotwins_circulant(s).expect("twin-free"),
        None => detect_cotwins_generic(g).expect("twin-free"),
    };
    match pairing {
        Some(p) if vt_status(g, spec)? => match p.kind {
            CoTwinKind::Adjacent => {
                let comp = g.complement();
                let comp_spec = spec.map(|s| s.complement());
                det_formula(&comp, comp_spec.as_ref(), limit)
            }
            CoTwinKind::Nonadjacent => {
                if !g.has_triangle() {
                    if let Some(w) = recognize_crown(g) {
                        return Ok(SymmetryValue {
                            value: ValueBound::exact(w.k as u64 - 1),
                            method: MethodTag::Crown,
                            cross_checked: false,
                        });
                    }
                    return fallback_exhaustive_det(g, spec, limit);
                }
                let (h, _) = neighborhood_subgraph(g, 0);
                let (dh, _) = det_exhaustive(&h, false, limit)?;
                Ok(SymmetryValue {
                    value: ValueBound::exact(1 + dh),
                    method: MethodTag::NeighborhoodStabilizer,
                    cross_checked: false,
                })
            }
        },
        _ => fallback_exhaustive_det(g, spec, limit),
    }
}

fn fallback_exhaustive_det(
    g: &Graph,
    spec: Option<&CirculantSpec>,
    limit: usize,
) -> Result<SymmetryValue, SymmetryError> {
    if g.order() > DET_EXHAUSTIVE_CAP {
        return Err(SymmetryError::ExhaustiveInfeasible {
            order: g.order(),
            cap: DET_EXHAUSTIVE_CAP,
        });
    }
    let vt = vt_status(g, spec)?;
    let (value, _) = det_exhaustive(g, vt, limit)?;
    Ok(SymmetryValue {
        value: ValueBound::exact(value),
        method: MethodTag::Exhaustive,
        cross_checked: false,
    })
}

/// Distinguishing number through the formula cascade, the exhaustive oracle,
/// or both (cross-checked).
pub fn distinguishing_number(
    g: &Graph,
    spec: Option<&CirculantSpec>,
    mode: Mode,
    limit: usize,
) -> Result<SymmetryValue, SymmetryError> {
    match mode {
        Mode::Exhaustive => {
            if g.order() > DIST_EXHAUSTIVE_CAP {
                return Err(SymmetryError::ExhaustiveInfeasible {
                    order: g.order(),
                    cap: DIST_EXHAUSTIVE_CAP,
                });
            }
            let (value, _) = dist_exhaustive(g, limit)?;
            Ok(SymmetryValue {
                value: ValueBound::exact(value),
                method: MethodTag::Exhaustive,
                cross_checked: false,
            })
        }
        Mode::Formula => dist_formula(g, spec, limit),
        Mode::Both => {
            let formula = dist_formula(g, spec, limit)?;
            if g.order() > DIST_EXHAUSTIVE_CAP {
                return Ok(formula);
            }
            match dist_exhaustive(g, limit) {
                Ok((value, _)) => {
                    if !formula.value.contains(value) {
                        return Err(SymmetryError::CrossCheckMismatch {
                            formula: formula.value,
                            exhaustive: value,
                        });
                    }
                    if formula.value.value().is_some() {
                        Ok(SymmetryValue {
                            cross_checked: true,
                            ..formula
                        })
                    } else {
                        // The exhaustive run tightens formula bounds to a point.
                        Ok(SymmetryValue {
                            value: ValueBound::exact(value),
                            method: MethodTag::Exhaustive,
                            cross_checked: true,
                        })
                    }
                }
                Err(OracleError::LimitExceeded { .. }) => Ok(formula),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn dist_formula(
    g: &Graph,
    spec: Option<&CirculantSpec>,
    limit: usize,
) -> Result<SymmetryValue, SymmetryError> {
    let n = g.order();
    if n <= 1 {
        return Ok(SymmetryValue {
            value: ValueBound::exact(1),
            method: MethodTag::Exhaustive,
            cross_checked: false,
        });
    }
    let twins = match spec {
        Some(s) => detect_twins_circulant(s),
        None => detect_twins_generic(g),
    };
    if let Some(part) = &twins {
        if let (true, Some(t)) = (vt_status(g, spec)?, part.uniform_class_size()) {
            let step = quotient(g, part);
            let qspec = spec.map(|s| quotient_spec(s, part));
            let sub = dist_formula(&step.graph, qspec.as_ref(), limit)?;
            let lo = dist_twin_recursion(t as u64, sub.value.lo().max(1));
            let hi = dist_twin_recursion(t as u64, sub.value.hi().max(1));
            return Ok(SymmetryValue {
                value: ValueBound::collapse(lo, hi),
                method: MethodTag::TwinRecursion,
                cross_checked: false,
            });
        }
        return fallback_exhaustive_dist(g, limit);
    }
    let pairing = match spec {
        Some(s) => detect_cotwins_circulant(s).expect("twin-free"),
        None => detect_cotwins_generic(g).expect("twin-free"),
    };
    match pairing {
        Some(p) if vt_status(g, spec)? => match p.kind {
            CoTwinKind::Adjacent => {
                let comp = g.complement();
                let comp_spec = spec.map(|s| s.complement());
                dist_formula(&comp, comp_spec.as_ref(), limit)
            }
            CoTwinKind::Nonadjacent => {
                if !g.has_triangle() {
                    if let Some(w) = recognize_crown(g) {
                        let k = w.k as u64;
                        let d = (1..)
                            .find(|&d: &u64| (d - 1) * (d - 1) <= k && k < d * d)
                            .unwrap();
                        return Ok(SymmetryValue {
                            value: ValueBound::exact(d),
                            method: MethodTag::Crown,
                            cross_checked: false,
                        });
                    }
                    return fallback_exhaustive_dist(g, limit);
                }
                let (h, _) = neighborhood_subgraph(g, 0);
                let (dh, _) = dist_exhaustive(&h, limit)?;
                // dist(G) ≤ dist(H_u); at least 2 colors are needed since the
                // group is nontrivial, and 2 always suffice when the
                // neighborhood stabilizer is trivial.
                let hi = dh.max(2);
                Ok(SymmetryValue {
                    value: ValueBound::collapse(2, hi),
                    method: MethodTag::NeighborhoodStabilizer,
                    cross_checked: false,
                })
            }
        },
        _ => fallback_exhaustive_dist(g, limit),
    }
}

fn fallback_exhaustive_dist(g: &Graph, limit: usize) -> Result<SymmetryValue, SymmetryError> {
    if g.order() > DIST_EXHAUSTIVE_CAP {
        return Err(SymmetryError::ExhaustiveInfeasible {
            order: g.order(),
            cap: DIST_EXHAUSTIVE_CAP,
        });
    }
    let (value, _) = dist_exhaustive(g, limit)?;
    Ok(SymmetryValue {
        value: ValueBound::exact(value),
        method: MethodTag::Exhaustive,
        cross_checked: false,
    })
}

/// The full symmetry section of a report.
#[derive(Debug, Clone)]
pub struct SymmetryReport {
    pub group: GroupStructure,
    pub det: SymmetryValue,
    pub dist: SymmetryValue,
    pub vertex_transitive: Option<bool>,
    pub arc_transitive: Option<bool>,
}

pub fn symmetry_report(
    g: &Graph,
    spec: Option<&CirculantSpec>,
    mode: Mode,
    limit: usize,
) -> Result<SymmetryReport, SymmetryError> {
    let group = structural_order(g, spec, limit)?;
    let det = determining_number(g, spec, mode, limit)?;
    let dist = distinguishing_number(g, spec, mode, limit)?;
    let vertex_transitive = if spec.is_some() {
        Some(true)
    } else {
        is_vertex_transitive(g).ok()
    };
    let arc_transitive = if g.order() <= ARC_CHECK_CAP {
        let seeds = spec.map(crate::autgroup::circulant_symmetries).unwrap_or_default();
        is_arc_transitive_seeded(g, &seeds).ok()
    } else {
        None
    };
    Ok(SymmetryReport {
        group,
        det,
        dist,
        vertex_transitive,
        arc_transitive,
    })
}
