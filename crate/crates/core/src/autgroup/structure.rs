//! Group orders and symbolic structure expressions from the twin and
//! co-twin decompositions, with the oracle as the base case.

use super::search::OracleError;
use super::{enumerate_automorphisms, is_vertex_transitive};
use crate::circulant::CirculantSpec;
use crate::cotwins::{
    detect_cotwins_circulant, detect_cotwins_generic, neighborhood_subgraph, recognize_crown,
    CoTwinKind,
};
use crate::graph::Graph;
use crate::twins::{detect_twins_circulant, detect_twins_generic, quotient, quotient_spec};
use num_bigint::BigUint;
use serde::Serialize;

pub fn factorial(k: u64) -> BigUint {
    let mut out = BigUint::from(1u32);
    for i in 2..=k {
        out *= i;
    }
    out
}

/// A symbolic group expression. Only the evaluated order is contract-bearing;
/// the shape records which decomposition produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Trivial,
    /// `S_m`, order `m!`.
    Symmetric(u64),
    /// `Z_m`, order `m`.
    Cyclic(u64),
    /// Dihedral group on `m` points, order `2m`.
    Dihedral(u64),
    /// Direct power `E^k`.
    Power(Box<GroupExpr>, u32),
    Direct(Vec<GroupExpr>),
    /// `N ⋊ H` written `N : H`.
    Semidirect(Box<GroupExpr>, Box<GroupExpr>),
    /// Order known, structure unclassified.
    Unnamed(BigUint),
}

impl GroupExpr {
    pub fn order(&self) -> BigUint {
        match self {
            GroupExpr::Trivial => BigUint::from(1u32),
            GroupExpr::Symmetric(m) => factorial(*m),
            GroupExpr::Cyclic(m) => BigUint::from(*m),
            GroupExpr::Dihedral(m) => BigUint::from(2 * *m),
            GroupExpr::Power(e, k) => e.order().pow(*k),
            GroupExpr::Direct(es) => es.iter().map(|e| e.order()).product(),
            GroupExpr::Semidirect(a, b) => a.order() * b.order(),
            GroupExpr::Unnamed(o) => o.clone(),
        }
    }

    fn is_atom(&self) -> bool {
        matches!(
            self,
            GroupExpr::Trivial
                | GroupExpr::Symmetric(_)
                | GroupExpr::Cyclic(_)
                | GroupExpr::Dihedral(_)
                | GroupExpr::Unnamed(_)
        )
    }

    fn fmt_wrapped(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_atom() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }
}

impl std::fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupExpr::Trivial => write!(f, "1"),
            GroupExpr::Symmetric(m) => write!(f, "S{m}"),
            GroupExpr::Cyclic(m) => write!(f, "Z{m}"),
            GroupExpr::Dihedral(m) => write!(f, "D{m}"),
            GroupExpr::Power(e, k) => {
                e.fmt_wrapped(f)?;
                write!(f, "^{k}")
            }
            GroupExpr::Direct(es) => {
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    e.fmt_wrapped(f)?;
                }
                Ok(())
            }
            GroupExpr::Semidirect(a, b) => {
                a.fmt_wrapped(f)?;
                write!(f, " : ")?;
                b.fmt_wrapped(f)
            }
            GroupExpr::Unnamed(o) => write!(f, "G[{o}]"),
        }
    }
}

/// Which decomposition produced the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StructureMethod {
    #[serde(rename = "twin-decomposition")]
    TwinDecomposition,
    #[serde(rename = "crown-product")]
    CrownProduct,
    #[serde(rename = "neighborhood-stabilizer")]
    NeighborhoodStabilizer,
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "trivial")]
    Trivial,
}

#[derive(Debug, Clone)]
pub struct GroupStructure {
    pub order: BigUint,
    pub expr: GroupExpr,
    pub method: StructureMethod,
    /// Whether vertex-transitivity backed the decomposition hypotheses
    /// (certified by circulant construction or checked by the oracle).
    pub vertex_transitive: bool,
}

/// Computes `|Aut(G)|` with a symbolic expression, by the decision cascade:
/// twin decomposition recursing on the quotient; crown product for
/// triangle-free co-twin graphs; neighborhood stabilizer for co-twin graphs
/// with triangles; otherwise the oracle.
pub fn structural_order(
    g: &Graph,
    spec: Option<&CirculantSpec>,
    limit: usize,
) -> Result<GroupStructure, OracleError> {
    cascade(g, spec, limit, None)
}

fn oracle_fallback(
    g: &Graph,
    spec: Option<&CirculantSpec>,
    limit: usize,
    vt: bool,
) -> Result<GroupStructure, OracleError> {
    // Stabilizer-first on certified vertex-transitive inputs:
    // |Aut(G)| = n · |stab(0)| once the transversal searches succeed.
    let order = if spec.is_some() && g.order() > 0 {
        match super::group_via_stabilizer(g, limit)? {
            Some(list) => BigUint::from(list.order()),
            None => BigUint::from(enumerate_automorphisms(g, limit)?.order()),
        }
    } else {
        BigUint::from(enumerate_automorphisms(g, limit)?.order())
    };
    let n = g.order() as u64;
    let expr = if spec.is_some() && n >= 3 && order == BigUint::from(2 * n) {
        // The dihedral subgroup is the whole group.
        GroupExpr::Dihedral(n)
    } else {
        GroupExpr::Unnamed(order.clone())
    };
    Ok(GroupStructure {
        order,
        expr,
        method: StructureMethod::Oracle,
        vertex_transitive: vt,
    })
}

fn cascade(
    g: &Graph,
    spec: Option<&CirculantSpec>,
    limit: usize,
    vt_hint: Option<bool>,
) -> Result<GroupStructure, OracleError> {
    let n = g.order();
    if n <= 1 {
        return Ok(GroupStructure {
            order: BigUint::from(1u32),
            expr: GroupExpr::Trivial,
            method: StructureMethod::Trivial,
            vertex_transitive: true,
        });
    }

    let twins = match spec {
        Some(s) => detect_twins_circulant(s),
        None => detect_twins_generic(g),
    };

    if let Some(part) = twins {
        let vt = match vt_hint {
            Some(v) => v,
            None => spec.is_some() || is_vertex_transitive(g)?,
        };
        let t = part.uniform_class_size();
        if let (true, Some(t)) = (vt, t) {
            let classes = part.class_count() as u32;
            let step = quotient(g, &part);
            let qspec = spec.map(|s| quotient_spec(s, &part));
            let sub = cascade(&step.graph, qspec.as_ref(), limit, Some(true))?;
            let kernel_order = factorial(t as u64).pow(classes);
            let kernel_expr = if classes == 1 {
                GroupExpr::Symmetric(t as u64)
            } else {
                GroupExpr::Power(Box::new(GroupExpr::Symmetric(t as u64)), classes)
            };
            let expr = if sub.expr == GroupExpr::Trivial {
                kernel_expr
            } else {
                GroupExpr::Semidirect(Box::new(kernel_expr), Box::new(sub.expr))
            };
            return Ok(GroupStructure {
                order: kernel_order * &sub.order,
                expr,
                method: StructureMethod::TwinDecomposition,
                vertex_transitive: true,
            });
        }
        // Twins without certified transitivity: the semidirect order formula
        // is not justified, so count directly.
        return oracle_fallback(g, spec, limit, vt);
    }

    // Twin-free from here on.
    let pairing = match spec {
        Some(s) => detect_cotwins_circulant(s).expect("twin-free"),
        None => detect_cotwins_generic(g).expect("twin-free"),
    };

    if let Some(pairing) = pairing {
        let vt = match vt_hint {
            Some(v) => v,
            None => spec.is_some() || is_vertex_transitive(g)?,
        };
        if !vt {
            return oracle_fallback(g, spec, limit, vt);
        }
        match pairing.kind {
            CoTwinKind::Adjacent => {
                // Complement has nonadjacent co-twins and the same group.
                let comp = g.complement();
                let comp_spec = spec.map(|s| s.complement());
                cascade(&comp, comp_spec.as_ref(), limit, Some(vt))
            }
            CoTwinKind::Nonadjacent => {
                if !g.has_triangle() {
                    if let Some(w) = recognize_crown(g) {
                        let k = w.k as u64;
                        return Ok(GroupStructure {
                            order: BigUint::from(2u32) * factorial(k),
                            expr: GroupExpr::Direct(vec![
                                GroupExpr::Symmetric(k),
                                GroupExpr::Symmetric(2),
                            ]),
                            method: StructureMethod::CrownProduct,
                            vertex_transitive: true,
                        });
                    }
                    return oracle_fallback(g, spec, limit, vt);
                }
                let (h, _) = neighborhood_subgraph(g, 0);
                let stab_order = enumerate_automorphisms(&h, limit)?.order();
                let order = BigUint::from(stab_order) * BigUint::from(n as u64);
                let expr = if spec.is_some() && order == BigUint::from(2 * n as u64) {
                    GroupExpr::Dihedral(n as u64)
                } else {
                    GroupExpr::Unnamed(order.clone())
                };
                Ok(GroupStructure {
                    order,
                    expr,
                    method: StructureMethod::NeighborhoodStabilizer,
                    vertex_transitive: true,
                })
            }
        }
    } else {
        let vt = match vt_hint {
            Some(v) => v,
            None => spec.is_some() || is_vertex_transitive(g)?,
        };
        oracle_fallback(g, spec, limit, vt)
    }
}
