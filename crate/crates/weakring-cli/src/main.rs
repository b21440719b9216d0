//! Command-line front end: classify rings, search decompositions, list
//! structural sets, and run the verification suite.
//!
//! Exit codes: 0 success, 1 verification violation, 2 usage/parse/build
//! error, 3 budget exceeded. The element-scan budget defaults to 10^7 and
//! can be overridden with the WEAKRING_BUDGET environment variable.

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use weakring::elements::{self, SearchMode};
use weakring::matgf;
use weakring::predicates::{self, DEFAULT_ELEMENT_BUDGET};
use weakring::ring::FiniteRing;
use weakring::structure;
use weakring::theorems::{self, Catalog, RunOptions, ALL_CHECKS};
use weakring::{build, parse_expr, RingError, RingExpr};

#[derive(Parser)]
#[command(name = "weakring", version, about = "finite-ring decomposition toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every predicate flag and count for one ring.
    Classify(ExprArgs),
    /// List weak decompositions a = b ± e of one element.
    Decompose {
        /// Ring expression, e.g. "Zn(12)" or "M(2,Zn(3))".
        expr: String,
        /// Element index, or a matrix literal like "[[1,0],[0,2]]" for
        /// matrix rings.
        element: String,
        /// Enumerate all decompositions instead of the first.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suite over a catalog of rings.
    Verify {
        /// Use the built-in default catalog.
        #[arg(long, conflicts_with = "catalog")]
        default: bool,
        /// Path to a catalog file: a JSON array of {"label", "expr"}.
        #[arg(long)]
        catalog: Option<String>,
        /// Restrict to these check ids (repeatable).
        #[arg(long = "check")]
        checks: Vec<String>,
        #[arg(long)]
        json: bool,
        /// Scan parallelism for the matrix sweeps; output is independent
        /// of this value.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// List the Jacobson radical of a ring.
    Radical(ExprArgs),
    /// List the center of a ring.
    Center(ExprArgs),
    /// List the idempotents of a ring.
    Idempotents(ExprArgs),
}

#[derive(Args)]
struct ExprArgs {
    /// Ring expression, e.g. "Zn(12)".
    expr: String,
    #[arg(long)]
    json: bool,
}

fn exit_code(err: &RingError) -> i32 {
    match err {
        RingError::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn fail(err: RingError) -> ! {
    eprintln!("error: {err}");
    std::process::exit(exit_code(&err));
}

fn budget_from_env() -> u64 {
    match std::env::var("WEAKRING_BUDGET") {
        Ok(text) => match text.trim().parse::<u64>() {
            Ok(v) => v,
            Err(_) => {
                eprintln!("error: WEAKRING_BUDGET must be an integer, got {text:?}");
                std::process::exit(2);
            }
        },
        Err(_) => DEFAULT_ELEMENT_BUDGET,
    }
}

fn build_ring(text: &str) -> FiniteRing {
    match parse_expr(text).and_then(build) {
        Ok(r) => r,
        Err(e) => fail(e),
    }
}

fn main() {
    let cli = Cli::parse();
    let budget = budget_from_env();
    match cli.command {
        Command::Classify(args) => classify(&args, budget),
        Command::Decompose {
            expr,
            element,
            all,
            json,
        } => decompose(&expr, &element, all, json),
        Command::Verify {
            default: _,
            catalog,
            checks,
            json,
            workers,
        } => verify(catalog.as_deref(), checks, json, workers, budget),
        Command::Radical(args) => {
            listing(&args, budget, "radical", |ring, _| {
                Ok(structure::jacobson_radical(ring)?.members().to_vec())
            })
        }
        Command::Center(args) => listing(&args, budget, "center", |ring, budget| {
            Ok(structure::center(ring, budget)?.members().to_vec())
        }),
        Command::Idempotents(args) => listing(&args, budget, "idempotents", |ring, _| {
            Ok(ring_idempotents(ring)?)
        }),
    }
}

fn ring_idempotents(ring: &FiniteRing) -> weakring::Result<Vec<usize>> {
    Ok(structure::idempotents(ring)?
        .into_iter()
        .map(|e| e.index())
        .collect())
}

fn classify(args: &ExprArgs, budget: u64) {
    let ring = build_ring(&args.expr);
    let report = match predicates::classify(&ring, budget) {
        Ok(r) => r,
        Err(e) => fail(e),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("ring: {}", report.ring);
        println!("order: {}", report.order);
        let f = &report.flags;
        for (name, value) in [
            ("clean", f.clean),
            ("nil_clean", f.nil_clean),
            ("weakly_nil_clean", f.weakly_nil_clean),
            ("uniquely_nil_clean", f.uniquely_nil_clean),
            ("uniquely_weakly_nil_clean", f.uniquely_weakly_nil_clean),
            ("abelian", f.abelian),
            ("boolean", f.boolean),
            ("reduced", f.reduced),
            ("commutative", f.commutative),
            ("local", f.local),
            ("nil_involution_property", f.nil_involution_property),
            ("involution_property", f.involution_property),
            ("strongly_pi_regular", f.strongly_pi_regular),
            ("strongly_regular", f.strongly_regular),
            ("two_in_J", f.two_in_jacobson),
            ("two_unit", f.two_unit),
            ("six_nilpotent", f.six_nilpotent),
        ] {
            println!("  {name}: {value}");
        }
        let c = &report.counts;
        println!("  idempotents: {}", c.idempotents);
        println!("  units: {}", c.units);
        println!("  nilpotents: {}", c.nilpotents);
        println!("  |J|: {}", c.radical);
        println!("  |center|: {}", c.center);
    }
}

/// Element argument: a decimal index, or a matrix literal for matrix rings
/// (optionally prefixed with gf(p), which must then match the ring).
fn parse_element(ring: &FiniteRing, text: &str) -> weakring::Result<usize> {
    let trimmed = text.trim();
    if let Ok(idx) = trimmed.parse::<usize>() {
        if idx >= ring.order() {
            return Err(RingError::BadElement {
                index: idx,
                order: ring.order(),
            });
        }
        return Ok(idx);
    }
    let (given_p, rows) = matgf::parse_matrix_text(trimmed)?;
    let (p, k) = match ring.source_expr() {
        Some(RingExpr::Matrix(base, k)) => match **base {
            RingExpr::Zn(p) => (p, *k),
            _ => {
                return Err(RingError::InvalidExpr(
                    "matrix literals need a matrix ring over Zn".into(),
                ))
            }
        },
        _ => {
            return Err(RingError::InvalidExpr(
                "matrix literals need a matrix ring over Zn".into(),
            ))
        }
    };
    if let Some(gp) = given_p {
        if gp as u64 != p {
            return Err(RingError::InvalidExpr(format!(
                "gf({gp}) does not match the ring modulus {p}"
            )));
        }
    }
    if rows.len() != k {
        return Err(RingError::InvalidExpr(format!(
            "expected a {k}x{k} matrix, got {}x{}",
            rows.len(),
            rows.first().map_or(0, |r| r.len())
        )));
    }
    let parts: Vec<usize> = rows
        .iter()
        .flatten()
        .map(|&v| (v % p) as usize)
        .collect();
    ring.encode_parts(&parts)
}

fn decompose(expr: &str, element: &str, all: bool, json: bool) {
    let ring = build_ring(expr);
    let idx = match parse_element(&ring, element) {
        Ok(i) => i,
        Err(e) => fail(e),
    };
    let a = ring.element(idx).unwrap();
    let mode = if all { SearchMode::All } else { SearchMode::First };
    let decs = match elements::wnc_decompositions(&ring, a, mode) {
        Ok(d) => d,
        Err(e) => fail(e),
    };
    if json {
        let arr: Vec<serde_json::Value> = decs
            .iter()
            .map(|d| {
                json!({
                    "sign": d.sign.as_str(),
                    "nilpotent": d.nilpotent.index(),
                    "nilpotency_index": d.nilpotency_index,
                    "idempotent": d.idempotent.index(),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&arr).unwrap());
    } else if decs.is_empty() {
        println!("none");
    } else {
        for d in &decs {
            println!(
                "sign={} b={} e={}",
                d.sign,
                d.nilpotent.index(),
                d.idempotent.index()
            );
        }
    }
}

fn verify(catalog_path: Option<&str>, checks: Vec<String>, json: bool, workers: usize, budget: u64) {
    for c in &checks {
        if !ALL_CHECKS.contains(&c.as_str()) {
            eprintln!(
                "error: unknown check {:?}; known checks: {}",
                c,
                ALL_CHECKS.join(", ")
            );
            std::process::exit(2);
        }
    }
    let catalog: Catalog = match catalog_path {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {path}: {e}");
                    std::process::exit(2);
                }
            };
            match theorems::parse_catalog_json(&text) {
                Ok(c) => c,
                Err(e) => fail(e),
            }
        }
        None => theorems::default_catalog(),
    };
    let opts = RunOptions {
        budget,
        workers,
        checks,
    };
    let results = match theorems::run_all(&catalog, &opts) {
        Ok(r) => r,
        Err(e) => fail(e),
    };
    let violations = theorems::count_violations(&results);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&theorems::results_to_json(&results)).unwrap()
        );
    } else {
        for r in &results {
            println!("check={} ring={} verdict={}", r.check, r.ring, r.verdict.render());
        }
        let skips = results
            .iter()
            .filter(|r| matches!(r.verdict, theorems::Verdict::Skipped(_)))
            .count();
        println!(
            "total {} results: {} confirmed, {} skipped, {} violated",
            results.len(),
            results.len() - skips - violations,
            skips,
            violations
        );
    }
    std::process::exit(if violations > 0 { 1 } else { 0 });
}

fn listing(
    args: &ExprArgs,
    budget: u64,
    what: &str,
    f: impl Fn(&FiniteRing, u64) -> weakring::Result<Vec<usize>>,
) {
    let ring = build_ring(&args.expr);
    let members = match f(&ring, budget) {
        Ok(m) => m,
        Err(e) => fail(e),
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "ring": ring.source_string(),
                "what": what,
                "members": members,
            }))
            .unwrap()
        );
    } else {
        let inner: Vec<String> = members.iter().map(|m| m.to_string()).collect();
        println!("{{{}}}", inner.join(","));
    }
}
