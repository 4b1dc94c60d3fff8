//! Command-line frontend: analysis, quotient sequences, catalog jobs, and
//! corpus verification for circulant graphs.

mod report;
mod verify;

use circsym::catalog;
use circsym::circulant::{CirculantSpec, SpecError};
use circsym::symmetry::ValueBound;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "circsym",
    version,
    about = "Symmetry analysis of circulant graphs: twins, co-twins, quotient chains, automorphism groups, determining and distinguishing numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: validation, twins, quotient chain, co-twins, group
    /// structure, determining and distinguishing numbers.
    Analyze {
        /// Order of the circulant graph.
        n: u64,
        /// Connection-set tokens, e.g. "±1,±3,4" (or "+-1,+-3,4").
        #[arg(allow_hyphen_values = true)]
        set: String,
        /// Cross-check every structural claim against the oracle.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
        /// Write DOT files for every graph in the quotient chain.
        #[arg(long, value_name = "DIR")]
        dot: Option<PathBuf>,
        /// Cap on enumerated automorphisms.
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
    },
    /// The twin quotient chain down to a twin-free graph.
    QuotientSeq {
        n: u64,
        #[arg(allow_hyphen_values = true)]
        set: String,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "DIR")]
        dot: Option<PathBuf>,
    },
    /// Co-twin pairing and crown recognition.
    Cotwin {
        n: u64,
        #[arg(allow_hyphen_values = true)]
        set: String,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
    },
    /// Automorphism group order, structure expression, and elements.
    Autgroup {
        n: u64,
        #[arg(allow_hyphen_values = true)]
        set: String,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
        /// Include the enumerated permutations in the JSON output.
        #[arg(long)]
        perms: bool,
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
    },
    /// Classification and enumeration jobs (CSV by default).
    Catalog {
        #[arg(value_enum)]
        job: CatalogJob,
        /// Scan bound for table and order scans.
        #[arg(long, default_value_t = 60)]
        max_n: u64,
        /// Order for the twin-class-families job.
        #[arg(long)]
        n: Option<u64>,
        /// Twin-class subgroup generator for the twin-class-families job.
        #[arg(long)]
        w: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Re-derive and cross-check structural claims on every connection set
    /// up to a bound; exits non-zero on any mismatch.
    VerifyCorpus {
        #[arg(long, default_value_t = 16)]
        max_n: u64,
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum CatalogJob {
    /// Connected two-generator circulants with twins, n <= max-n.
    Table1,
    /// Connected three-generator circulants with twins, n <= max-n.
    Table2,
    /// Twin-free co-twin circulants for each even order <= max-n.
    CotwinOrders,
    /// All circulants of order n whose twin classes are the cosets of the
    /// subgroup generated by w.
    TwinClassFamilies,
}

#[derive(Serialize)]
struct ErrorDoc {
    schema: u32,
    error: ErrorBody,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: String,
    message: String,
}

fn spec_error_kind(e: &SpecError) -> &'static str {
    match e {
        SpecError::BadModulus { .. } => "bad-modulus",
        SpecError::ZeroGenerator => "zero-generator",
        SpecError::OutOfRange { .. } => "out-of-range",
        SpecError::NotInverseClosed { .. } => "not-inverse-closed",
        SpecError::InvalidToken { .. } => "invalid-token",
    }
}

fn fail_validation(e: &SpecError) -> ExitCode {
    let doc = ErrorDoc {
        schema: report::SCHEMA_VERSION,
        error: ErrorBody {
            kind: spec_error_kind(e).to_string(),
            message: e.to_string(),
        },
    };
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    ExitCode::from(2)
}

fn fail_internal(message: String) -> ExitCode {
    let doc = ErrorDoc {
        schema: report::SCHEMA_VERSION,
        error: ErrorBody {
            kind: "analysis-failed".to_string(),
            message,
        },
    };
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    ExitCode::from(2)
}

fn emit_json<T: Serialize>(doc: &T) {
    println!("{}", serde_json::to_string_pretty(doc).expect("serializable"));
}

fn write_chain_dots(dir: &PathBuf, seq: &circsym::twins::QuotientSequence) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("step_0.dot"), seq.initial_graph.to_dot())?;
    for (i, step) in seq.steps.iter().enumerate() {
        std::fs::write(dir.join(format!("step_{}.dot", i + 1)), step.graph.to_dot())?;
    }
    Ok(())
}

fn value_text(v: &ValueBound) -> String {
    match v {
        ValueBound::Exact { value } => value.to_string(),
        ValueBound::Bounds { lo, hi } => format!("[{lo}, {hi}]"),
    }
}

fn yesno(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    }
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            n,
            set,
            verify,
            json,
            dot,
            limit,
        } => {
            let spec = match CirculantSpec::parse(n, &set) {
                Ok(s) => s,
                Err(e) => return fail_validation(&e),
            };
            let doc = match report::build_analyze_report(&spec, verify, limit) {
                Ok(d) => d,
                Err(e) => return fail_internal(format!("{}: {}", spec.canonical(), e.0)),
            };
            if let Some(dir) = dot {
                let seq = circsym::twins::quotient_sequence_circulant(&spec);
                if let Err(e) = write_chain_dots(&dir, &seq) {
                    return fail_internal(format!("cannot write DOT files: {e}"));
                }
            }
            if json {
                emit_json(&doc);
            } else {
                print_analyze_text(&doc);
            }
            match &doc.verification {
                Some(v) if !v.all_pass => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Command::QuotientSeq { n, set, json, dot } => {
            let spec = match CirculantSpec::parse(n, &set) {
                Ok(s) => s,
                Err(e) => return fail_validation(&e),
            };
            let (doc, seq) = report::build_quotient_seq_report(&spec);
            if let Some(dir) = dot {
                if let Err(e) = write_chain_dots(&dir, &seq) {
                    return fail_internal(format!("cannot write DOT files: {e}"));
                }
            }
            if json {
                emit_json(&doc);
            } else {
                println!("{}", chain_text(&doc.chain));
            }
            ExitCode::SUCCESS
        }
        Command::Cotwin {
            n,
            set,
            verify,
            json,
            limit,
        } => {
            let spec = match CirculantSpec::parse(n, &set) {
                Ok(s) => s,
                Err(e) => return fail_validation(&e),
            };
            let doc = report::build_cotwin_report(&spec, verify, limit);
            if json {
                emit_json(&doc);
            } else {
                println!("{}", doc.input.canonical);
                if !doc.twin_free {
                    println!("not twin-free: co-twin analysis does not apply");
                } else if doc.cotwins.present {
                    let kind = doc.cotwins.kind.expect("present");
                    let pairs: Vec<String> = doc
                        .cotwins
                        .pairs
                        .iter()
                        .map(|(a, b)| format!("{{{a},{b}}}"))
                        .collect();
                    println!("co-twins: {kind}, pairs {}", pairs.join(" "));
                } else {
                    println!("co-twins: none");
                }
                if let Some(c) = &doc.crown {
                    println!("crown graph with k = {}", c.k);
                }
                if let Some(v) = &doc.verification {
                    print_checks(v);
                }
            }
            match &doc.verification {
                Some(v) if !v.all_pass => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Command::Autgroup {
            n,
            set,
            verify,
            json,
            perms,
            limit,
        } => {
            let spec = match CirculantSpec::parse(n, &set) {
                Ok(s) => s,
                Err(e) => return fail_validation(&e),
            };
            let doc = match report::build_autgroup_report(&spec, verify, limit, perms) {
                Ok(d) => d,
                Err(e) => return fail_internal(format!("{}: {}", spec.canonical(), e.0)),
            };
            if json {
                emit_json(&doc);
            } else {
                println!("{}", doc.input.canonical);
                println!(
                    "group: order {} = {}  [{}]",
                    doc.group.order,
                    doc.group.expression,
                    serde_plain_name(&doc.group.method)
                );
                if let Some(s) = doc.stabilizer_order {
                    println!("stabilizer of 0: order {s}");
                }
                println!(
                    "vertex-transitive: {}   arc-transitive: {}",
                    yesno(doc.vertex_transitive),
                    yesno(doc.arc_transitive)
                );
                if let Some(v) = &doc.verification {
                    print_checks(v);
                }
            }
            match &doc.verification {
                Some(v) if !v.all_pass => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Command::Catalog {
            job,
            max_n,
            n,
            w,
            json,
        } => run_catalog(job, max_n, n, w, json),
        Command::VerifyCorpus { max_n, limit, json } => {
            let doc = verify::run_corpus(max_n, limit);
            if json {
                emit_json(&doc);
            } else {
                for check in &doc.checks {
                    if check.mismatches.is_empty() {
                        println!("{}: pass ({} instances)", check.name, check.instances);
                    } else {
                        println!(
                            "{}: FAIL ({} mismatches): {}",
                            check.name,
                            check.mismatches.len(),
                            check.mismatches.join("; ")
                        );
                    }
                }
            }
            if doc.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn serde_plain_name<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|x| x.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn chain_text(chain: &report::QuotientChainDoc) -> String {
    let mut out = String::new();
    out.push_str(
        &chain
            .initial_spec
            .clone()
            .unwrap_or_else(|| format!("graph on {} vertices", chain.initial_order)),
    );
    for step in &chain.steps {
        let t = step.t.map(|t| t.to_string()).unwrap_or_else(|| "?".into());
        out.push_str(&format!(
            " -[{} t={}]-> {}",
            step.kind,
            t,
            step.spec
                .clone()
                .unwrap_or_else(|| format!("graph on {} vertices", step.order))
        ));
    }
    out
}

fn print_checks(v: &report::VerificationSection) {
    for c in &v.checks {
        let status = match c.status {
            report::CheckStatus::Pass => "pass",
            report::CheckStatus::Fail => "FAIL",
            report::CheckStatus::Skipped => "skipped",
        };
        println!("  check {}: {} ({})", c.name, status, c.detail);
    }
    println!(
        "verification: {}",
        if v.all_pass { "all checks pass" } else { "MISMATCH" }
    );
}

fn print_analyze_text(doc: &report::AnalyzeReport) {
    let i = &doc.input;
    println!(
        "{}  n={}  valency {}  {}  {}",
        i.canonical,
        i.n,
        i.valency,
        if i.connected {
            "connected".to_string()
        } else {
            format!("{} components", i.components)
        },
        if i.bipartite { "bipartite" } else { "not bipartite" }
    );
    if doc.twins.present {
        let classes: Vec<String> = doc
            .twins
            .classes
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", body.join(","))
            })
            .collect();
        println!(
            "twins: {}, w = {}, class size {}, classes {}",
            doc.twins.kind.expect("present"),
            doc.twins
                .generator
                .map(|w| w.to_string())
                .unwrap_or_else(|| "-".into()),
            doc.twins
                .class_size
                .map(|t| t.to_string())
                .unwrap_or_else(|| "-".into()),
            classes.join(" ")
        );
    } else {
        println!("twins: none");
    }
    println!("quotient chain: {}", chain_text(&doc.quotient_chain));
    if doc.cotwins.present {
        let pairs: Vec<String> = doc
            .cotwins
            .pairs
            .iter()
            .map(|(a, b)| format!("{{{a},{b}}}"))
            .collect();
        println!(
            "co-twins: {}, pairs {}",
            doc.cotwins.kind.expect("present"),
            pairs.join(" ")
        );
    } else {
        println!("co-twins: none");
    }
    if let Some(c) = &doc.crown {
        println!("crown graph with k = {}", c.k);
    }
    println!(
        "group: order {} = {}  [{}]{}",
        doc.group.order,
        doc.group.expression,
        serde_plain_name(&doc.group.method),
        match doc.group.translations_normal {
            Some(true) => "  (translation subgroup normal)",
            _ => "",
        }
    );
    println!(
        "det = {}  [{}]",
        value_text(&doc.symmetry.det.value),
        serde_plain_name(&doc.symmetry.det.method)
    );
    println!(
        "dist = {}  [{}]",
        value_text(&doc.symmetry.dist.value),
        serde_plain_name(&doc.symmetry.dist.method)
    );
    println!(
        "vertex-transitive: {}   arc-transitive: {}",
        yesno(doc.symmetry.vertex_transitive),
        yesno(doc.symmetry.arc_transitive)
    );
    if let Some(v) = &doc.verification {
        print_checks(v);
    }
}

fn run_catalog(
    job: CatalogJob,
    max_n: u64,
    n: Option<u64>,
    w: Option<u64>,
    json: bool,
) -> ExitCode {
    match job {
        CatalogJob::Table1 => {
            let rows = catalog::classify_two_generator(max_n);
            if json {
                emit_json(&CatalogDoc {
                    schema: report::SCHEMA_VERSION,
                    job: "table1",
                    rows: &rows,
                });
            } else {
                print!("{}", catalog::two_generator_csv(&rows));
            }
        }
        CatalogJob::Table2 => {
            let rows = catalog::classify_three_generator(max_n);
            if json {
                emit_json(&CatalogDoc {
                    schema: report::SCHEMA_VERSION,
                    job: "table2",
                    rows: &rows,
                });
            } else {
                print!("{}", catalog::three_generator_csv(&rows));
            }
        }
        CatalogJob::CotwinOrders => {
            let mut rows = Vec::new();
            for order in (2..=max_n).filter(|n| n % 2 == 0) {
                rows.extend(catalog::enumerate_twinfree_cotwin_circulants(order));
            }
            if json {
                emit_json(&CatalogDoc {
                    schema: report::SCHEMA_VERSION,
                    job: "cotwin-orders",
                    rows: &rows,
                });
            } else {
                println!("n,set");
                for r in &rows {
                    println!("{},{}", r.spec.n(), r.set);
                }
            }
        }
        CatalogJob::TwinClassFamilies => {
            let (Some(n), Some(w)) = (n, w) else {
                return fail_internal(
                    "twin-class-families requires --n <order> and --w <generator>".into(),
                );
            };
            if n == 0 || w >= n {
                return fail_internal(format!("generator {w} out of range for Z_{n}"));
            }
            let rows = catalog::enumerate_with_twin_classes(n, w);
            if json {
                emit_json(&CatalogDoc {
                    schema: report::SCHEMA_VERSION,
                    job: "twin-class-families",
                    rows: &rows,
                });
            } else {
                println!("set,valency,connected,bipartite");
                for r in &rows {
                    println!("{},{},{},{}", r.set, r.valency, r.connected, r.bipartite);
                }
            }
        }
    }
    ExitCode::SUCCESS
}

#[derive(Serialize)]
struct CatalogDoc<'a, T: Serialize> {
    schema: u32,
    job: &'static str,
    rows: &'a [T],
}
