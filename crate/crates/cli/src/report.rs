//! Report documents emitted by the CLI: JSON schemas and their builders.

use circsym::autgroup::{
    self, enumerate_automorphisms, GroupStructure, OracleError, PermutationList,
};
use circsym::circulant::CirculantSpec;
use circsym::cotwins::{self, CoTwinPairing};
use circsym::graph::Graph;
use circsym::symmetry::{self, Mode, SymmetryValue};
use circsym::twins::{self, QuotientSequence, TwinPartition};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

pub fn tool_info() -> ToolInfo {
    ToolInfo {
        name: "circsym",
        version: env!("CARGO_PKG_VERSION"),
    }
}

#[derive(Serialize)]
pub struct InputEcho {
    pub n: u64,
    pub connection_set: Vec<u64>,
    pub canonical: String,
    pub valency: usize,
    pub connected: bool,
    pub components: u64,
    pub bipartite: bool,
}

impl InputEcho {
    pub fn of(spec: &CirculantSpec) -> Self {
        InputEcho {
            n: spec.n(),
            connection_set: spec.members().to_vec(),
            canonical: spec.canonical(),
            valency: spec.valency(),
            connected: spec.is_connected_formula(),
            components: spec.component_count_formula(),
            bipartite: spec.is_bipartite_formula(),
        }
    }
}

#[derive(Serialize)]
pub struct TwinSection {
    pub present: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<twins::TwinKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub admissible_generators: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_size: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<Vec<usize>>,
}

impl TwinSection {
    pub fn of(part: &Option<TwinPartition>) -> Self {
        match part {
            None => TwinSection {
                present: false,
                kind: None,
                generator: None,
                admissible_generators: Vec::new(),
                class_size: None,
                classes: Vec::new(),
            },
            Some(p) => TwinSection {
                present: true,
                kind: Some(p.kind),
                generator: p.generator,
                admissible_generators: p.admissible_generators.clone(),
                class_size: p.uniform_class_size(),
                classes: p.classes.clone(),
            },
        }
    }
}

#[derive(Serialize)]
pub struct CoTwinSection {
    pub present: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<cotwins::CoTwinKind>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<(usize, usize)>,
}

impl CoTwinSection {
    pub fn of(pairing: &Option<CoTwinPairing>) -> Self {
        match pairing {
            None => CoTwinSection {
                present: false,
                kind: None,
                pairs: Vec::new(),
            },
            Some(p) => CoTwinSection {
                present: true,
                kind: Some(p.kind),
                pairs: p.pairs.clone(),
            },
        }
    }
}

#[derive(Serialize)]
pub struct CrownSection {
    pub k: usize,
}

#[derive(Serialize)]
pub struct QuotientStepDoc {
    pub kind: twins::TwinKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
}

#[derive(Serialize)]
pub struct QuotientChainDoc {
    pub initial_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_spec: Option<String>,
    pub steps: Vec<QuotientStepDoc>,
    pub terminal_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terminal_spec: Option<String>,
}

impl QuotientChainDoc {
    pub fn of(seq: &QuotientSequence) -> Self {
        QuotientChainDoc {
            initial_order: seq.initial_graph.order(),
            initial_spec: seq.initial_spec.as_ref().map(|s| s.canonical()),
            steps: seq
                .steps
                .iter()
                .map(|s| QuotientStepDoc {
                    kind: s.kind,
                    t: s.class_size(),
                    order: s.graph.order(),
                    spec: s.spec.as_ref().map(|sp| sp.canonical()),
                })
                .collect(),
            terminal_order: seq.terminal_graph().order(),
            terminal_spec: seq.terminal_spec().map(|s| s.canonical()),
        }
    }
}

#[derive(Serialize)]
pub struct GroupSection {
    pub order: String,
    pub expression: String,
    pub method: autgroup::StructureMethod,
    pub vertex_transitive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translations_normal: Option<bool>,
}

impl GroupSection {
    pub fn of(st: &GroupStructure) -> Self {
        GroupSection {
            order: st.order.to_string(),
            expression: st.expr.to_string(),
            method: st.method,
            vertex_transitive: st.vertex_transitive,
            translations_normal: None,
        }
    }
}

#[derive(Serialize)]
pub struct SymmetrySection {
    pub det: SymmetryValue,
    pub dist: SymmetryValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_transitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc_transitive: Option<bool>,
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Serialize)]
pub struct VerificationSection {
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub schema: u32,
    pub tool: ToolInfo,
    pub input: InputEcho,
    pub twins: TwinSection,
    pub quotient_chain: QuotientChainDoc,
    pub cotwins: CoTwinSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crown: Option<CrownSection>,
    pub group: GroupSection,
    pub symmetry: SymmetrySection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSection>,
}

pub struct AnalyzeError(pub String);

impl From<OracleError> for AnalyzeError {
    fn from(e: OracleError) -> Self {
        AnalyzeError(e.to_string())
    }
}

impl From<symmetry::SymmetryError> for AnalyzeError {
    fn from(e: symmetry::SymmetryError) -> Self {
        AnalyzeError(e.to_string())
    }
}

/// The full analysis pipeline: validate, twins, quotient chain, co-twins,
/// group structure, det/dist; with `verify`, every structural claim is
/// cross-checked against the oracle.
pub fn build_analyze_report(
    spec: &CirculantSpec,
    verify: bool,
    limit: usize,
) -> Result<AnalyzeReport, AnalyzeError> {
    let g = spec.build();
    let part = twins::detect_twins_circulant(spec);
    let seq = twins::quotient_sequence_circulant(spec);
    let pairing = twins::detect_twins_circulant(spec)
        .is_none()
        .then(|| cotwins::detect_cotwins_circulant(spec).expect("twin-free"))
        .flatten();
    let crown = cotwins::recognize_crown(&g).map(|w| CrownSection { k: w.k });

    let mode = if verify { Mode::Both } else { Mode::Formula };
    let sym = symmetry::symmetry_report(&g, Some(spec), mode, limit)?;

    let mut group = GroupSection::of(&sym.group);
    let mut verification = None;
    if verify {
        let (section, translations_normal) =
            run_verification(spec, &g, &part, &pairing, &seq, &sym, limit);
        group.translations_normal = translations_normal;
        verification = Some(section);
    }

    Ok(AnalyzeReport {
        schema: SCHEMA_VERSION,
        tool: tool_info(),
        input: InputEcho::of(spec),
        twins: TwinSection::of(&part),
        quotient_chain: QuotientChainDoc::of(&seq),
        cotwins: CoTwinSection::of(&pairing),
        crown,
        group,
        symmetry: SymmetrySection {
            det: sym.det,
            dist: sym.dist,
            vertex_transitive: sym.vertex_transitive,
            arc_transitive: sym.arc_transitive,
        },
        verification,
    })
}

fn oracle_for(g: &Graph, limit: usize) -> Result<PermutationList, OracleError> {
    enumerate_automorphisms(g, limit)
}

fn run_verification(
    spec: &CirculantSpec,
    g: &Graph,
    part: &Option<TwinPartition>,
    pairing: &Option<CoTwinPairing>,
    seq: &QuotientSequence,
    sym: &symmetry::SymmetryReport,
    limit: usize,
) -> (VerificationSection, Option<bool>) {
    let mut checks = Vec::new();
    let mut translations_normal = None;

    // Twin detection: algebraic vs neighborhood grouping.
    {
        let generic = twins::detect_twins_generic(g);
        let agree = match (part, &generic) {
            (None, None) => true,
            (Some(a), Some(b)) => a.kind == b.kind && a.classes == b.classes,
            _ => false,
        };
        checks.push(Check {
            name: "twin-detection-agreement",
            status: if agree { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: match part {
                Some(p) => format!("{} twins, {} classes", p.kind, p.classes.len()),
                None => "twin-free".into(),
            },
        });
    }

    // Co-twin detection agreement (only meaningful on twin-free inputs).
    if part.is_none() {
        let generic = cotwins::detect_cotwins_generic(g).expect("twin-free");
        let agree = *pairing == generic;
        checks.push(Check {
            name: "cotwin-detection-agreement",
            status: if agree { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: match pairing {
                Some(p) => format!("{} co-twins, {} pairs", p.kind, p.pairs.len()),
                None => "no co-twins".into(),
            },
        });
    }

    // Each chain step's spec builds exactly the collapsed graph.
    {
        let mut ok = true;
        let mut cur = seq.initial_graph.clone();
        for step in &seq.steps {
            let p = twins::detect_twins_generic(&cur).expect("step exists");
            let q = twins::quotient(&cur, &p);
            if q.graph != step.graph
                || step.spec.as_ref().map(|s| s.build()) != Some(step.graph.clone())
            {
                ok = false;
            }
            cur = step.graph.clone();
        }
        checks.push(Check {
            name: "quotient-chain-specs-build-quotients",
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: format!("{} steps", seq.steps.len()),
        });
    }

    // Group order vs full enumeration.
    match oracle_for(g, limit) {
        Ok(full) => {
            let pass = circsym::num_bigint::BigUint::from(full.order()) == sym.group.order;
            checks.push(Check {
                name: "group-order-vs-oracle",
                status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
                detail: format!(
                    "structural {} vs enumerated {}",
                    sym.group.order,
                    full.order()
                ),
            });
            let normal = autgroup::translations_normal(spec, &full);
            translations_normal = Some(normal);
            checks.push(Check {
                name: "translation-subgroup-normality",
                status: CheckStatus::Pass,
                detail: if normal {
                    format!(
                        "normal; group is Z{} : stab with stab order {}",
                        spec.n(),
                        full.order() / spec.n()
                    )
                } else {
                    "not normal".into()
                },
            });
            if let Some(p) = pairing {
                let beta_ok = autgroup::cotwin_swap(g, p).is_ok();
                let kernel_ok = autgroup::kappa_kernel_check(g, p, limit).unwrap_or(false);
                let surjective = autgroup::kappa_surjective(g, p, limit).unwrap_or(false);
                checks.push(Check {
                    name: "cotwin-swap-and-kernel",
                    status: if beta_ok && kernel_ok {
                        CheckStatus::Pass
                    } else {
                        CheckStatus::Fail
                    },
                    detail: format!(
                        "swap automorphism: {beta_ok}; kernel is {{id, swap}}: {kernel_ok}"
                    ),
                });
                let pass = surjective == !g.has_triangle();
                checks.push(Check {
                    name: "pair-action-surjectivity-iff-triangle-free",
                    status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
                    detail: format!(
                        "surjective: {surjective}; triangle-free: {}",
                        !g.has_triangle()
                    ),
                });
            }
        }
        Err(e) => {
            checks.push(Check {
                name: "group-order-vs-oracle",
                status: CheckStatus::Skipped,
                detail: format!("enumeration skipped: {e}"),
            });
        }
    }

    // det/dist cross-checks already ran inside Mode::Both.
    checks.push(Check {
        name: "det-cross-check",
        status: if sym.det.cross_checked {
            CheckStatus::Pass
        } else {
            CheckStatus::Skipped
        },
        detail: format!("{:?} via {:?}", sym.det.value, sym.det.method),
    });
    checks.push(Check {
        name: "dist-cross-check",
        status: if sym.dist.cross_checked {
            CheckStatus::Pass
        } else {
            CheckStatus::Skipped
        },
        detail: format!("{:?} via {:?}", sym.dist.value, sym.dist.method),
    });

    let all_pass = checks.iter().all(|c| c.status != CheckStatus::Fail);
    (
        VerificationSection { checks, all_pass },
        translations_normal,
    )
}

#[derive(Serialize)]
pub struct QuotientSeqReport {
    pub schema: u32,
    pub tool: ToolInfo,
    pub input: InputEcho,
    pub chain: QuotientChainDoc,
}

pub fn build_quotient_seq_report(spec: &CirculantSpec) -> (QuotientSeqReport, QuotientSequence) {
    let seq = twins::quotient_sequence_circulant(spec);
    (
        QuotientSeqReport {
            schema: SCHEMA_VERSION,
            tool: tool_info(),
            input: InputEcho::of(spec),
            chain: QuotientChainDoc::of(&seq),
        },
        seq,
    )
}

#[derive(Serialize)]
pub struct CotwinReport {
    pub schema: u32,
    pub tool: ToolInfo,
    pub input: InputEcho,
    pub twin_free: bool,
    pub cotwins: CoTwinSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crown: Option<CrownSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSection>,
}

pub fn build_cotwin_report(spec: &CirculantSpec, verify: bool, limit: usize) -> CotwinReport {
    let g = spec.build();
    let twin_free = twins::detect_twins_circulant(spec).is_none();
    let pairing = twin_free
        .then(|| cotwins::detect_cotwins_circulant(spec).expect("twin-free"))
        .flatten();
    let crown = cotwins::recognize_crown(&g).map(|w| CrownSection { k: w.k });

    let verification = verify.then(|| {
        let mut checks = Vec::new();
        if twin_free {
            let generic = cotwins::detect_cotwins_generic(&g).expect("twin-free");
            checks.push(Check {
                name: "cotwin-detection-agreement",
                status: if generic == pairing {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                detail: "algebraic vs neighborhood detection".into(),
            });
        }
        if let Some(p) = &pairing {
            match autgroup::kappa_kernel_check(&g, p, limit) {
                Ok(ok) => checks.push(Check {
                    name: "cotwin-swap-and-kernel",
                    status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
                    detail: "kernel of the pair action is {id, swap}".into(),
                }),
                Err(e) => checks.push(Check {
                    name: "cotwin-swap-and-kernel",
                    status: CheckStatus::Skipped,
                    detail: e.to_string(),
                }),
            }
        }
        let all_pass = checks.iter().all(|c| c.status != CheckStatus::Fail);
        VerificationSection { checks, all_pass }
    });

    CotwinReport {
        schema: SCHEMA_VERSION,
        tool: tool_info(),
        input: InputEcho::of(spec),
        twin_free,
        cotwins: CoTwinSection::of(&pairing),
        crown,
        verification,
    }
}

#[derive(Serialize)]
pub struct AutGroupReport {
    pub schema: u32,
    pub tool: ToolInfo,
    pub input: InputEcho,
    pub group: GroupSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumerated_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_transitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc_transitive: Option<bool>,
    /// Enumerated elements (lexicographic), present only when the full
    /// enumeration fit the limit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<u16>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSection>,
}

pub fn build_autgroup_report(
    spec: &CirculantSpec,
    verify: bool,
    limit: usize,
    emit_perms: bool,
) -> Result<AutGroupReport, AnalyzeError> {
    let g = spec.build();
    let st = autgroup::structural_order(&g, Some(spec), limit)?;
    let full = enumerate_automorphisms(&g, limit).ok();
    let stab = autgroup::stabilizer(&g, 0, limit).ok();
    let arc = if g.order() <= symmetry::ARC_CHECK_CAP {
        autgroup::is_arc_transitive_seeded(&g, &autgroup::circulant_symmetries(spec)).ok()
    } else {
        None
    };

    let verification = verify.then(|| {
        let mut checks = Vec::new();
        match &full {
            Some(f) => {
                let pass = circsym::num_bigint::BigUint::from(f.order()) == st.order;
                checks.push(Check {
                    name: "group-order-vs-oracle",
                    status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
                    detail: format!("structural {} vs enumerated {}", st.order, f.order()),
                });
                let sound = f.perms().iter().all(|p| p.preserves(&g));
                checks.push(Check {
                    name: "oracle-soundness",
                    status: if sound { CheckStatus::Pass } else { CheckStatus::Fail },
                    detail: "every permutation preserves adjacency".into(),
                });
                if let Some(s) = &stab {
                    let pass = f.order() == s.order() * g.order() as u64;
                    checks.push(Check {
                        name: "orbit-stabilizer-identity",
                        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
                        detail: format!("{} = {} x {}", f.order(), g.order(), s.order()),
                    });
                }
            }
            None => checks.push(Check {
                name: "group-order-vs-oracle",
                status: CheckStatus::Skipped,
                detail: "enumeration exceeded the limit".into(),
            }),
        }
        let all_pass = checks.iter().all(|c| c.status != CheckStatus::Fail);
        VerificationSection { checks, all_pass }
    });

    Ok(AutGroupReport {
        schema: SCHEMA_VERSION,
        tool: tool_info(),
        input: InputEcho::of(spec),
        group: GroupSection::of(&st),
        stabilizer_order: stab.as_ref().map(|s| s.order()),
        enumerated_order: full.as_ref().map(|f| f.order()),
        vertex_transitive: Some(true),
        arc_transitive: arc,
        permutations: match (&full, emit_perms) {
            (Some(f), true) => Some(f.perms().iter().map(|p| p.images().to_vec()).collect()),
            _ => None,
        },
        verification,
    })
}
