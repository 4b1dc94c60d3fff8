//! Corpus verification: re-derives the structural claims on every valid
//! connection set up to a bound and cross-checks them against the oracle.

use circsym::autgroup::{enumerate_automorphisms, structural_order, StructureMethod};
use circsym::circulant::{enumerate_connection_sets, CirculantSpec};
use circsym::cotwins::{detect_cotwins_circulant, detect_cotwins_generic};
use circsym::graph::Graph;
use circsym::symmetry::{determining_number, distinguishing_number, Mode};
use circsym::twins::{detect_twins_circulant, detect_twins_generic, quotient, quotient_spec};
use circsym::num_bigint::BigUint;
use serde::Serialize;

#[derive(Serialize)]
pub struct CorpusCheck {
    pub name: &'static str,
    pub instances: usize,
    pub mismatches: Vec<String>,
}

#[derive(Serialize)]
pub struct CorpusReport {
    pub schema: u32,
    pub max_n: u64,
    pub checks: Vec<CorpusCheck>,
    pub all_pass: bool,
}

fn specs_up_to(max_n: u64) -> Vec<CirculantSpec> {
    (2..=max_n)
        .flat_map(|n| enumerate_connection_sets(n).into_iter().map(CirculantSpec::new))
        .collect()
}

pub fn run_corpus(max_n: u64, limit: usize) -> CorpusReport {
    let specs = specs_up_to(max_n);
    let mut checks = Vec::new();

    // Twin detection agreement.
    {
        let mut mismatches = Vec::new();
        for s in &specs {
            let alg = detect_twins_circulant(s);
            let gen = detect_twins_generic(&s.build());
            let agree = match (&alg, &gen) {
                (None, None) => true,
                (Some(a), Some(b)) => a.kind == b.kind && a.classes == b.classes,
                _ => false,
            };
            if !agree {
                mismatches.push(s.canonical());
            }
        }
        checks.push(CorpusCheck {
            name: "twin-detection-agreement",
            instances: specs.len(),
            mismatches,
        });
    }

    // Co-twin detection agreement on twin-free specs.
    {
        let mut instances = 0;
        let mut mismatches = Vec::new();
        for s in &specs {
            if detect_twins_circulant(s).is_some() {
                continue;
            }
            instances += 1;
            let alg = detect_cotwins_circulant(s).expect("twin-free");
            let gen = detect_cotwins_generic(&s.build()).expect("twin-free");
            if alg != gen {
                mismatches.push(s.canonical());
            }
        }
        checks.push(CorpusCheck {
            name: "cotwin-detection-agreement",
            instances,
            mismatches,
        });
    }

    // Quotient specs rebuild the collapsed graph and drop the collapsed kind.
    {
        let mut instances = 0;
        let mut mismatches = Vec::new();
        for s in &specs {
            let Some(p) = detect_twins_circulant(s) else {
                continue;
            };
            instances += 1;
            let g = s.build();
            let step = quotient(&g, &p);
            let qspec = quotient_spec(s, &p);
            if step.graph != qspec.build() {
                mismatches.push(s.canonical());
                continue;
            }
            if let Some(qp) = detect_twins_generic(&step.graph) {
                if qp.kind == p.kind {
                    mismatches.push(format!("{} (quotient keeps {} twins)", s, p.kind));
                }
            }
        }
        checks.push(CorpusCheck {
            name: "quotient-spec-and-twin-freeness",
            instances,
            mismatches,
        });
    }

    // Structural orders vs oracle counts on formula-route graphs.
    {
        let mut instances = 0;
        let mut mismatches = Vec::new();
        for s in &specs {
            let g = s.build();
            let Ok(st) = structural_order(&g, Some(s), limit) else {
                continue;
            };
            if matches!(st.method, StructureMethod::Oracle | StructureMethod::Trivial) {
                continue;
            }
            if st.order > BigUint::from(limit) {
                continue;
            }
            let Ok(full) = enumerate_automorphisms(&g, limit) else {
                continue;
            };
            instances += 1;
            if BigUint::from(full.order()) != st.order {
                mismatches.push(format!(
                    "{} (structural {} vs oracle {})",
                    s,
                    st.order,
                    full.order()
                ));
            }
        }
        checks.push(CorpusCheck {
            name: "structural-order-vs-oracle",
            instances,
            mismatches,
        });
    }

    // det/dist formula-vs-exhaustive agreement on small orders. The cross
    // check limit is tighter so that graphs with huge groups abort their
    // exhaustive pass quickly and fall back to the formula value.
    {
        let cross_limit = limit.min(200_000);
        let mut instances = 0;
        let mut mismatches = Vec::new();
        for s in &specs {
            if s.n() > 12 {
                continue;
            }
            let g: Graph = s.build();
            instances += 1;
            if let Err(e) = determining_number(&g, Some(s), Mode::Both, cross_limit) {
                mismatches.push(format!("{s} det: {e}"));
            }
            if let Err(e) = distinguishing_number(&g, Some(s), Mode::Both, cross_limit) {
                mismatches.push(format!("{s} dist: {e}"));
            }
        }
        checks.push(CorpusCheck {
            name: "det-dist-formula-vs-exhaustive",
            instances,
            mismatches,
        });
    }

    let all_pass = checks.iter().all(|c| c.mismatches.is_empty());
    CorpusReport {
        schema: crate::report::SCHEMA_VERSION,
        max_n,
        checks,
        all_pass,
    }
}
