//! Named, runnable checks that confront the decomposition theory with
//! exhaustive computation on a catalog of concretely built rings.
//!
//! Each check encodes a proven statement, so a `violated` verdict on any
//! input is an implementation bug; the run never aborts early and reports
//! one deterministic result per (check, ring) pair.

use std::time::{Duration, Instant};

use serde::Deserialize;
use serde_json::{json, Value};

use crate::elements;
use crate::error::{Result, RingError};
use crate::expr::{parse_expr, RingExpr};
use crate::matgf::{self, MatrixGF};
use crate::predicates::{self, ClassificationReport, DEFAULT_ELEMENT_BUDGET};
use crate::ring::{build, FiniteRing};
use crate::structure;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: String,
    pub expr: RingExpr,
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for e in &self.entries {
            if !seen.insert(&e.label) {
                return Err(RingError::InvalidExpr(format!(
                    "duplicate catalog label {:?}",
                    e.label
                )));
            }
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct CatalogFileEntry {
    label: String,
    expr: String,
    #[serde(default)]
    budget: Option<u64>,
}

/// Catalog file format: a JSON array of {"label", "expr", "budget"?}.
pub fn parse_catalog_json(text: &str) -> Result<Catalog> {
    let raw: Vec<CatalogFileEntry> = serde_json::from_str(text)
        .map_err(|e| RingError::InvalidExpr(format!("catalog JSON: {e}")))?;
    let mut entries = Vec::new();
    for r in raw {
        entries.push(CatalogEntry {
            label: r.label,
            expr: parse_expr(&r.expr)?,
            budget: r.budget,
        });
    }
    let catalog = Catalog { entries };
    catalog.validate()?;
    Ok(catalog)
}

/// The default catalog: every check's hypothesis side and negation side is
/// represented at least once.
pub fn default_catalog() -> Catalog {
    let mut texts: Vec<String> = Vec::new();
    for n in 1..=36 {
        texts.push(format!("Zn({n})"));
    }
    for n in [48, 54, 72, 81, 96, 108] {
        texts.push(format!("Zn({n})"));
    }
    let pool = [2u64, 3, 4, 9, 8];
    for (i, &a) in pool.iter().enumerate() {
        for &b in &pool[i..] {
            texts.push(format!("Prod(Zn({a}),Zn({b}))"));
        }
    }
    texts.push("Quot(Zn(12),[4])".into());
    texts.push("Quot(Zn(12),[9])".into());
    for n in [2, 3, 4, 6, 9, 12] {
        texts.push(format!("TrivExt(Zn({n}))"));
    }
    texts.push("T(2,Zn(2))".into());
    texts.push("T(2,Zn(3))".into());
    texts.push("T(3,Zn(2))".into());
    for n in [2, 3, 6, 12] {
        texts.push(format!("Skew({n})"));
    }
    texts.push("M(2,Zn(2))".into());
    texts.push("M(2,Zn(3))".into());
    texts.push("M(3,Zn(2))".into());
    Catalog {
        entries: texts
            .into_iter()
            .map(|t| CatalogEntry {
                label: t.clone(),
                expr: parse_expr(&t).expect("default catalog entry"),
                budget: None,
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Confirmed,
    Violated,
    Skipped(String),
}

impl Verdict {
    pub fn render(&self) -> String {
        match self {
            Verdict::Confirmed => "confirmed".into(),
            Verdict::Violated => "violated".into(),
            Verdict::Skipped(reason) => format!("skipped: {reason}"),
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated)
    }
}

#[derive(Debug, Clone)]
pub struct TheoremCheckResult {
    pub check: String,
    pub ring: String,
    pub verdict: Verdict,
    pub witness: Option<Value>,
    pub runtime: Duration,
}

impl TheoremCheckResult {
    /// JSON form; the runtime is deliberately left out so that output is
    /// byte-identical across runs.
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "ring": self.ring,
            "verdict": self.verdict.render(),
            "witness": self.witness,
        })
    }
}

pub fn results_to_json(results: &[TheoremCheckResult]) -> Value {
    Value::Array(results.iter().map(|r| r.to_json()).collect())
}

pub fn count_violations(results: &[TheoremCheckResult]) -> usize {
    results.iter().filter(|r| r.verdict.is_violated()).count()
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub budget: u64,
    pub workers: usize,
    /// Restrict to these check ids (all when empty).
    pub checks: Vec<String>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: DEFAULT_ELEMENT_BUDGET,
            workers: 1,
            checks: Vec::new(),
        }
    }
}

pub const ALL_CHECKS: &[&str] = &[
    "center",
    "char2",
    "clean",
    "commut",
    "description",
    "epi",
    "examples",
    "fine",
    "invol",
    "matrix_main",
    "one",
    "pireg",
    "pireg_cor",
    "prod",
    "rj_abelian",
    "trace_rank",
    "unc",
];

type Outcome = (Verdict, Option<Value>);

fn confirmed() -> Outcome {
    (Verdict::Confirmed, None)
}

fn violated(witness: Value) -> Outcome {
    (Verdict::Violated, Some(witness))
}

fn skipped(reason: impl Into<String>) -> Outcome {
    (Verdict::Skipped(reason.into()), None)
}

fn require(ok: bool, witness: impl FnOnce() -> Value) -> Outcome {
    if ok {
        confirmed()
    } else {
        violated(witness())
    }
}

struct Ctx<'a> {
    label: &'a str,
    ring: &'a FiniteRing,
    report: &'a ClassificationReport,
    budget: u64,
}

// ---- per-ring checks ----

/// Quotients of weakly nil-clean rings are weakly nil-clean; the converse
/// holds along nil ideals.
fn check_epi(ctx: &Ctx) -> Result<Outcome> {
    let ring = ctx.ring;
    let wnc_r = ctx.report.flags.weakly_nil_clean;
    let mut ideals: Vec<structure::Ideal> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
    let mut push = |i: structure::Ideal| {
        if seen.insert(i.members().to_vec()) {
            ideals.push(i);
        }
    };
    push(structure::ideal_generated(ring, &[ring.zero()])?);
    push(structure::jacobson_radical(ring)?);
    for k in [2i64, 3, 6] {
        let g = ring.element(ring.scalar_idx(k)).unwrap();
        push(structure::ideal_generated(ring, &[g])?);
    }
    for ideal in &ideals {
        let (q, _) = structure::quotient(ring, ideal)?;
        let wnc_q = predicates::is_weakly_nil_clean_ring(&q, ctx.budget)?;
        if wnc_r && !wnc_q {
            return Ok(violated(json!({
                "direction": "forward",
                "ideal_size": ideal.len(),
            })));
        }
        if structure::is_nil_ideal(ring, ideal)? && wnc_q && !wnc_r {
            return Ok(violated(json!({
                "direction": "converse",
                "ideal_size": ideal.len(),
            })));
        }
    }
    Ok(confirmed())
}

/// Weak nil-cleanness is equivalent to: 6 nilpotent with R/6R weakly
/// nil-clean, and to: J(R) nil with R/J(R) weakly nil-clean.
fn check_one(ctx: &Ctx) -> Result<Outcome> {
    let ring = ctx.ring;
    let f1 = ctx.report.flags.weakly_nil_clean;
    let f2 = if predicates::six_is_nilpotent(ring) {
        let six = ring.element(ring.scalar_idx(6)).unwrap();
        let i6 = structure::ideal_generated(ring, &[six])?;
        let (q, _) = structure::quotient(ring, &i6)?;
        predicates::is_weakly_nil_clean_ring(&q, ctx.budget)?
    } else {
        false
    };
    let j = structure::jacobson_radical(ring)?;
    let f3 = if structure::is_nil_ideal(ring, &j)? {
        let (q, _) = structure::quotient(ring, &j)?;
        predicates::is_weakly_nil_clean_ring(&q, ctx.budget)?
    } else {
        false
    };
    Ok(require(f1 == f2 && f2 == f3, || {
        json!({"direct": f1, "via_6R": f2, "via_radical": f3})
    }))
}

/// A finite product is weakly nil-clean iff one factor is weakly nil-clean
/// and all the others are nil-clean.
fn check_prod(ctx: &Ctx) -> Result<Outcome> {
    let Some(RingExpr::Product(factor_exprs)) = ctx.ring.source_expr() else {
        return Ok(skipped("not a product"));
    };
    let factors: Vec<FiniteRing> = factor_exprs
        .iter()
        .map(|f| build(f.clone()))
        .collect::<Result<_>>()?;
    let wnc: Vec<bool> = factors
        .iter()
        .map(|f| predicates::is_weakly_nil_clean_ring(f, ctx.budget))
        .collect::<Result<_>>()?;
    let nc: Vec<bool> = factors
        .iter()
        .map(|f| predicates::is_nil_clean_ring(f, ctx.budget))
        .collect::<Result<_>>()?;
    let criterion = (0..factors.len()).any(|k| {
        wnc[k] && (0..factors.len()).all(|j| j == k || nc[j])
    });
    let product_wnc = ctx.report.flags.weakly_nil_clean;
    Ok(require(product_wnc == criterion, || {
        json!({"product": product_wnc, "criterion": criterion, "factor_wnc": wnc, "factor_nil_clean": nc})
    }))
}

/// Nil-clean is exactly weakly nil-clean with 2 in the radical.
fn check_char2(ctx: &Ctx) -> Result<Outcome> {
    let f = &ctx.report.flags;
    Ok(require(
        f.nil_clean == (f.weakly_nil_clean && f.two_in_jacobson),
        || json!({"nil_clean": f.nil_clean, "weakly_nil_clean": f.weakly_nil_clean, "two_in_J": f.two_in_jacobson}),
    ))
}

/// A weakly nil-clean ring splits as (nil-clean) x (nil-involution), and
/// conversely.
fn check_description(ctx: &Ctx) -> Result<Outcome> {
    let ring = ctx.ring;
    let wnc = ctx.report.flags.weakly_nil_clean;
    let split = match structure::crt_split_2_3(ring) {
        Ok(split) => split,
        Err(RingError::SixNotNilpotent) => {
            // without nilpotent 6 the ring cannot be weakly nil-clean
            return Ok(require(!wnc, || json!({"six_nilpotent": false, "wnc": true})));
        }
        Err(e) => return Err(e),
    };
    let r1_nil_clean = predicates::is_nil_clean_ring(&split.r1, ctx.budget)?;
    let r2_trivial = split.r2.order() == 1;
    let r2_nil_invol =
        r2_trivial || predicates::has_nil_involution_property(&split.r2, ctx.budget)?;
    let criterion = r1_nil_clean && r2_nil_invol;
    if wnc != criterion {
        return Ok(violated(json!({
            "wnc": wnc,
            "r1_nil_clean": r1_nil_clean,
            "r2_nil_involution": r2_nil_invol,
            "orders": [split.r1.order(), split.r2.order()],
        })));
    }
    if wnc && !r2_trivial {
        // the split's second component: an indecomposable weakly nil-clean
        // ring with 3 in its radical
        let r2 = &split.r2;
        let three_in_j = structure::jacobson_radical(r2)?.contains(r2.scalar_idx(3));
        let indecomposable = r2.central_idempotent_indices()?.len() == 2;
        let r2_wnc = predicates::is_weakly_nil_clean_ring(r2, ctx.budget)?;
        if !(three_in_j && indecomposable && r2_wnc) {
            return Ok(violated(json!({
                "three_in_J_r2": three_in_j,
                "r2_indecomposable": indecomposable,
                "r2_wnc": r2_wnc,
            })));
        }
    }
    Ok(confirmed())
}

/// Nil-involution property is exactly weak nil-cleanness with 2 a unit.
fn check_invol(ctx: &Ctx) -> Result<Outcome> {
    let f = &ctx.report.flags;
    Ok(require(
        f.nil_involution_property == (f.weakly_nil_clean && f.two_unit),
        || json!({"nil_involution": f.nil_involution_property, "weakly_nil_clean": f.weakly_nil_clean, "two_unit": f.two_unit}),
    ))
}

/// Weakly nil-clean rings are clean.
fn check_clean(ctx: &Ctx) -> Result<Outcome> {
    let f = &ctx.report.flags;
    if !f.weakly_nil_clean {
        return Ok(skipped("ring is not weakly nil-clean"));
    }
    Ok(require(f.clean, || json!({"clean": false})))
}

/// The center of a weakly nil-clean ring is weakly nil-clean; of a
/// nil-clean ring, nil-clean.
fn check_center(ctx: &Ctx) -> Result<Outcome> {
    let f = &ctx.report.flags;
    if !f.weakly_nil_clean {
        return Ok(skipped("ring is not weakly nil-clean"));
    }
    let z = structure::center(ctx.ring, ctx.budget)?;
    let z_wnc = predicates::is_weakly_nil_clean_ring(z.realized(), ctx.budget)?;
    if !z_wnc {
        return Ok(violated(json!({"center_order": z.len(), "center_wnc": false})));
    }
    if f.nil_clean {
        let z_nc = predicates::is_nil_clean_ring(z.realized(), ctx.budget)?;
        if !z_nc {
            return Ok(violated(json!({"center_order": z.len(), "center_nil_clean": false})));
        }
    }
    Ok(confirmed())
}

/// Is the ring Z3 (up to the canonical map k -> k·1)?
fn is_z3(ring: &FiniteRing) -> bool {
    if ring.order() != 3 {
        return false;
    }
    let images: std::collections::BTreeSet<usize> = (0..3).map(|k| ring.scalar_idx(k)).collect();
    images.len() == 3
}

/// Does some central idempotent split the ring into a Boolean corner and a
/// zero-or-Z3 corner?
fn splits_boolean_times_z3(ring: &FiniteRing, budget: u64) -> Result<bool> {
    for &e in ring.central_idempotent_indices()? {
        let split = structure::peirce_split(ring, ring.element(e).unwrap())?;
        if predicates::is_boolean(&split.left, budget)?
            && (split.right.order() == 1 || is_z3(&split.right))
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Does some central idempotent split the ring into corners that are
/// Boolean-mod-nil-radical and zero-or-Z3-mod-nil-radical?
fn splits_fine_form(ring: &FiniteRing, budget: u64) -> Result<bool> {
    for &e in ring.central_idempotent_indices()? {
        let split = structure::peirce_split(ring, ring.element(e).unwrap())?;
        let r1 = &split.left;
        let j1 = structure::jacobson_radical(r1)?;
        let left_ok = predicates::is_abelian(r1, budget)?
            && structure::is_nil_ideal(r1, &j1)?
            && predicates::is_boolean(&structure::quotient(r1, &j1)?.0, budget)?;
        if !left_ok {
            continue;
        }
        let r2 = &split.right;
        let right_ok = if r2.order() == 1 {
            true
        } else {
            let j2 = structure::jacobson_radical(r2)?;
            structure::is_nil_ideal(r2, &j2)? && is_z3(&structure::quotient(r2, &j2)?.0)
        };
        if right_ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Four equivalent faces of abelian weak nil-cleanness.
fn check_fine(ctx: &Ctx) -> Result<Outcome> {
    let ring = ctx.ring;
    let flags = &ctx.report.flags;
    let f1 = flags.abelian && flags.weakly_nil_clean;
    let f2 = splits_fine_form(ring, ctx.budget)?;
    let j = structure::jacobson_radical(ring)?;
    let f3 = flags.abelian
        && structure::is_nil_ideal(ring, &j)?
        && splits_boolean_times_z3(&structure::quotient(ring, &j)?.0, ctx.budget)?;
    let f4 = flags.uniquely_weakly_nil_clean;
    Ok(require(f1 == f2 && f2 == f3 && f3 == f4, || {
        json!({"abelian_wnc": f1, "corner_form": f2, "mod_radical_form": f3, "uniquely_wnc": f4})
    }))
}

/// When R/J(R) is abelian: weakly nil-clean iff J nil and R/J of the
/// Boolean-or-Z3 shape.
fn check_rj_abelian(ctx: &Ctx) -> Result<Outcome> {
    let ring = ctx.ring;
    let j = structure::jacobson_radical(ring)?;
    let (q, _) = structure::quotient(ring, &j)?;
    if !predicates::is_abelian(&q, ctx.budget)? {
        return Ok(skipped("R/J(R) is not abelian"));
    }
    let rhs = structure::is_nil_ideal(ring, &j)? && splits_boolean_times_z3(&q, ctx.budget)?;
    let lhs = ctx.report.flags.weakly_nil_clean;
    Ok(require(lhs == rhs, || {
        json!({"weakly_nil_clean": lhs, "structure_form": rhs})
    }))
}

/// Reduced weakly nil-clean rings are commutative.
fn check_commut(ctx: &Ctx) -> Result<Outcome> {
    let f = &ctx.report.flags;
    if !(f.reduced && f.weakly_nil_clean) {
        return Ok(skipped("ring is not reduced weakly nil-clean"));
    }
    Ok(require(f.commutative, || json!({"commutative": false})))
}

/// Uniquely nil-clean is exactly uniquely weakly nil-clean with 2 in the
/// radical.
fn check_unc(ctx: &Ctx) -> Result<Outcome> {
    let f = &ctx.report.flags;
    Ok(require(
        f.uniquely_nil_clean == (f.uniquely_weakly_nil_clean && f.two_in_jacobson),
        || json!({"uniquely_nil_clean": f.uniquely_nil_clean, "uniquely_weakly_nil_clean": f.uniquely_weakly_nil_clean, "two_in_J": f.two_in_jacobson}),
    ))
}

/// In an abelian ring, weakly nil-clean elements are strongly pi-regular.
fn check_pireg(ctx: &Ctx) -> Result<Outcome> {
    if !ctx.report.flags.abelian {
        return Ok(skipped("ring is not abelian"));
    }
    let ring = ctx.ring;
    for a in 0..ring.order() {
        if elements::is_weakly_nil_clean_idx(ring, a)?
            && elements::strongly_pi_regular_witness_idx(ring, a).is_none()
        {
            return Ok(violated(json!({"element": a})));
        }
    }
    Ok(confirmed())
}

/// Uniquely weakly nil-clean is exactly abelian strongly pi-regular with
/// R/J of the Boolean-or-Z3 shape.
fn check_pireg_cor(ctx: &Ctx) -> Result<Outcome> {
    let ring = ctx.ring;
    let f = &ctx.report.flags;
    let j = structure::jacobson_radical(ring)?;
    let (q, _) = structure::quotient(ring, &j)?;
    let rhs =
        f.abelian && f.strongly_pi_regular && splits_boolean_times_z3(&q, ctx.budget)?;
    Ok(require(f.uniquely_weakly_nil_clean == rhs, || {
        json!({"uniquely_wnc": f.uniquely_weakly_nil_clean, "rhs": rhs})
    }))
}

// ---- global checks ----

/// Parameter sweeps of the worked examples: the 2^l 3^k rule for Zn, the
/// trivial extension rule, and the triangular matrix rule.
fn check_examples(budget: u64) -> Result<Outcome> {
    for n in 1..=60u64 {
        let zn = build(RingExpr::zn(n))?;
        let computed = predicates::is_weakly_nil_clean_ring(&zn, budget)?;
        if computed != predicates::zn_weakly_nil_clean_formula(n) {
            return Ok(violated(json!({"part": 1, "n": n, "computed": computed})));
        }
    }
    for n in [2u64, 3, 4, 6, 9, 12] {
        let base = build(RingExpr::zn(n))?;
        let ext = build(RingExpr::triv_ext(RingExpr::zn(n)))?;
        let base_wnc = predicates::is_weakly_nil_clean_ring(&base, budget)?;
        let ext_wnc = predicates::is_weakly_nil_clean_ring(&ext, budget)?;
        if base_wnc != ext_wnc {
            return Ok(violated(json!({"part": 3, "n": n, "base": base_wnc, "ext": ext_wnc})));
        }
    }
    for (k, n) in [(2usize, 2u64), (2, 3), (3, 2)] {
        let base = build(RingExpr::zn(n))?;
        let tri = build(RingExpr::triangular(k, RingExpr::zn(n)))?;
        let base_nc = predicates::is_nil_clean_ring(&base, budget)?;
        let tri_wnc = predicates::is_weakly_nil_clean_ring(&tri, budget)?;
        if base_nc != tri_wnc {
            return Ok(violated(json!({"part": 4, "k": k, "n": n, "base_nil_clean": base_nc, "triangular_wnc": tri_wnc})));
        }
    }
    Ok(confirmed())
}

/// trace(E) = rank(E)·1 for every idempotent matrix over GF(p).
fn check_trace_rank() -> Result<Outcome> {
    for (p, n) in [(2u8, 2usize), (2, 3), (3, 2), (3, 3)] {
        for e in matgf::enumerate_idempotents(p, n)? {
            let expected = (matgf::rank(&e) % p as usize) as u8;
            if e.trace() != expected {
                return Ok(violated(json!({
                    "p": p, "n": n, "matrix": e.render(),
                    "trace": e.trace(), "rank": matgf::rank(&e),
                })));
            }
        }
    }
    Ok(confirmed())
}

/// The matrix-ring classification: full scans over small matrix rings over
/// GF(2) and GF(3), the distinguished diag(1,-1,0,...) witnesses, the 4x4
/// blocked-shape exhaustion, and the similarity reduction.
fn check_matrix_main(budget: u64, workers: usize) -> Result<Outcome> {
    // every matrix over GF(2) in dimensions 2 and 3 is nil-clean
    for n in [2usize, 3] {
        let total = 2u64.pow((n * n) as u32);
        for idx in 0..total {
            let entries: Vec<u8> = (0..n * n)
                .rev()
                .map(|bit| ((idx >> bit) & 1) as u8)
                .collect();
            let a = MatrixGF::new(2, n, entries);
            if matgf::nil_clean_check(&a)?.is_none() {
                return Ok(violated(json!({"case": "gf2_nil_clean", "n": n, "matrix": a.render()})));
            }
        }
        if !matgf::matrix_ring_weakly_nil_clean(2, n, false)? {
            return Ok(violated(json!({"case": "gf2_ring", "n": n})));
        }
    }
    // the 2x2 witness over GF(3), by the full idempotent scan both ways
    let a2 = MatrixGF::diag(3, &[1, -1]);
    if matgf::weakly_nil_clean_check(&a2)?.is_some() {
        return Ok(violated(json!({"case": "m2_z3_witness"})));
    }
    if matgf::matrix_ring_weakly_nil_clean(3, 2, false)?
        || matgf::matrix_ring_weakly_nil_clean(3, 2, true)?
    {
        return Ok(violated(json!({"case": "m2_z3_ring"})));
    }
    // the 3x3 witness
    let a3 = MatrixGF::diag(3, &[1, -1, 0]);
    if matgf::nil_clean_check(&a3)?.is_some() {
        return Ok(violated(json!({"case": "m3_z3_witness"})));
    }
    // the 4x4 witness: 3^16 candidates filtered to idempotents
    let a4 = MatrixGF::diag(3, &[1, -1, 0, 0]);
    if matgf::nil_clean_check_with_workers(&a4, workers)?.is_some() {
        return Ok(violated(json!({"case": "m4_z3_witness"})));
    }
    // the blocked 4x4 shape admits no nilpotent completion
    if !matgf::lemma_nonil_pattern_check() {
        return Ok(violated(json!({"case": "nonil_pattern"})));
    }
    // |D| <= 3 boundary: the field with five elements already fails
    let z5 = build(RingExpr::zn(5))?;
    if predicates::is_weakly_nil_clean_ring(&z5, budget)? {
        return Ok(violated(json!({"case": "z5"})));
    }
    // similarity reduction: Q conjugates the witness to its negative, and
    // nil-clean agrees with weakly nil-clean on such matrices
    for n in [2usize, 3] {
        let mut vals = vec![0i64; n];
        vals[0] = 1;
        vals[1] = -1;
        let a = MatrixGF::diag(3, &vals);
        let mut q = MatrixGF::identity(3, n);
        let entries = {
            let mut e = q.entries().to_vec();
            e[0] = 0;
            e[1] = 1;
            e[n] = 1;
            e[n + 1] = 0;
            e
        };
        q = MatrixGF::new(3, n, entries);
        if !matgf::check_similar_to_neg(&a, &q)? {
            return Ok(violated(json!({"case": "similar_q", "n": n})));
        }
        let nc = matgf::nil_clean_check(&a)?.is_some();
        let wnc = matgf::weakly_nil_clean_check(&a)?.is_some();
        if nc != wnc {
            return Ok(violated(json!({"case": "similar_equiv", "n": n})));
        }
    }
    // characteristic 2: -A = A, so the reduction is vacuous and the two
    // checks must agree on every matrix
    for idx in 0..16u64 {
        let entries: Vec<u8> = (0..4).rev().map(|bit| ((idx >> bit) & 1) as u8).collect();
        let a = MatrixGF::new(2, 2, entries);
        let nc = matgf::nil_clean_check(&a)?.is_some();
        let wnc = matgf::weakly_nil_clean_check(&a)?.is_some();
        if nc != wnc {
            return Ok(violated(json!({"case": "char2_equiv", "matrix": a.render()})));
        }
    }
    // strongly regular base instances: Boolean base gives a weakly
    // nil-clean matrix ring, the non-Boolean Z3 does not
    let z2 = build(RingExpr::zn(2))?;
    let z3 = build(RingExpr::zn(3))?;
    let z2_boolean = predicates::is_boolean(&z2, budget)?;
    let z3_sr = predicates::is_strongly_regular(&z3, budget)?;
    let z3_boolean = predicates::is_boolean(&z3, budget)?;
    if !(z2_boolean && matgf::matrix_ring_weakly_nil_clean(2, 2, false)?) {
        return Ok(violated(json!({"case": "bool_cor_z2"})));
    }
    if !(z3_sr && !z3_boolean && !matgf::matrix_ring_weakly_nil_clean(3, 2, false)?) {
        return Ok(violated(json!({"case": "bool_cor_z3"})));
    }
    // semilocal instances, via the radical route
    for text in ["M(2,Zn(2))", "M(2,Zn(3))", "M(3,Zn(2))"] {
        let ring = build(parse_expr(text)?)?;
        let wnc = predicates::is_weakly_nil_clean_ring(&ring, budget)?;
        let j = structure::jacobson_radical(&ring)?;
        let rhs = structure::is_nil_ideal(&ring, &j)?
            && predicates::is_weakly_nil_clean_ring(&structure::quotient(&ring, &j)?.0, budget)?;
        if wnc != rhs {
            return Ok(violated(json!({"case": "semilocal", "ring": text})));
        }
    }
    Ok(confirmed())
}

// ---- the runner ----

fn run_ring_check(
    name: &str,
    ctx: &Ctx,
    f: impl FnOnce(&Ctx) -> Result<Outcome>,
) -> TheoremCheckResult {
    let start = Instant::now();
    let (verdict, witness) = match f(ctx) {
        Ok(outcome) => outcome,
        Err(RingError::BudgetExceeded { need, budget }) => (
            Verdict::Skipped(format!("budget exceeded: need {need}, budget {budget}")),
            None,
        ),
        Err(RingError::StructuredUnsupported) => (
            Verdict::Skipped("structured ring not supported here".into()),
            None,
        ),
        Err(e) => (Verdict::Violated, Some(json!({"error": e.to_string()}))),
    };
    TheoremCheckResult {
        check: name.to_string(),
        ring: ctx.label.to_string(),
        verdict,
        witness,
        runtime: start.elapsed(),
    }
}

fn run_global_check(
    name: &str,
    ring_desc: &str,
    f: impl FnOnce() -> Result<Outcome>,
) -> TheoremCheckResult {
    let start = Instant::now();
    let (verdict, witness) = match f() {
        Ok(outcome) => outcome,
        Err(RingError::BudgetExceeded { need, budget }) => (
            Verdict::Skipped(format!("budget exceeded: need {need}, budget {budget}")),
            None,
        ),
        Err(e) => (Verdict::Violated, Some(json!({"error": e.to_string()}))),
    };
    TheoremCheckResult {
        check: name.to_string(),
        ring: ring_desc.to_string(),
        verdict,
        witness,
        runtime: start.elapsed(),
    }
}

fn wants(opts: &RunOptions, check: &str) -> bool {
    opts.checks.is_empty() || opts.checks.iter().any(|c| c == check)
}

/// Run every applicable check on every catalog ring plus the global sweeps.
/// Results come back sorted by (check id, ring order, ring label) and are
/// deterministic for a fixed catalog.
pub fn run_all(catalog: &Catalog, opts: &RunOptions) -> Result<Vec<TheoremCheckResult>> {
    catalog.validate()?;
    let mut results: Vec<(usize, TheoremCheckResult)> = Vec::new();
    for entry in &catalog.entries {
        let budget = entry.budget.unwrap_or(opts.budget);
        let ring = build(entry.expr.clone())?;
        let report = match predicates::classify(&ring, budget) {
            Ok(r) => r,
            Err(RingError::BudgetExceeded { need, budget }) => {
                // every per-ring check needs the classification
                let reason = format!("budget exceeded: need {need}, budget {budget}");
                for check in [
                    "center", "char2", "clean", "commut", "description", "epi", "fine",
                    "invol", "one", "pireg", "pireg_cor", "rj_abelian", "unc",
                ] {
                    if wants(opts, check) {
                        results.push((
                            ring.order(),
                            TheoremCheckResult {
                                check: check.into(),
                                ring: entry.label.clone(),
                                verdict: Verdict::Skipped(reason.clone()),
                                witness: None,
                                runtime: Duration::ZERO,
                            },
                        ));
                    }
                }
                continue;
            }
            Err(e) => return Err(e),
        };
        let ctx = Ctx {
            label: &entry.label,
            ring: &ring,
            report: &report,
            budget,
        };
        let order = ring.order();
        if wants(opts, "center") {
            results.push((order, run_ring_check("center", &ctx, check_center)));
        }
        if wants(opts, "char2") {
            results.push((order, run_ring_check("char2", &ctx, check_char2)));
        }
        if wants(opts, "clean") {
            results.push((order, run_ring_check("clean", &ctx, check_clean)));
        }
        if wants(opts, "commut") {
            results.push((order, run_ring_check("commut", &ctx, check_commut)));
        }
        if wants(opts, "description") {
            results.push((order, run_ring_check("description", &ctx, check_description)));
        }
        if wants(opts, "epi") {
            results.push((order, run_ring_check("epi", &ctx, check_epi)));
        }
        if wants(opts, "fine") {
            results.push((order, run_ring_check("fine", &ctx, check_fine)));
        }
        if wants(opts, "invol") {
            results.push((order, run_ring_check("invol", &ctx, check_invol)));
        }
        if wants(opts, "one") {
            results.push((order, run_ring_check("one", &ctx, check_one)));
        }
        if wants(opts, "pireg") {
            results.push((order, run_ring_check("pireg", &ctx, check_pireg)));
        }
        if wants(opts, "pireg_cor") {
            results.push((order, run_ring_check("pireg_cor", &ctx, check_pireg_cor)));
        }
        if matches!(entry.expr, RingExpr::Product(_)) && wants(opts, "prod") {
            results.push((order, run_ring_check("prod", &ctx, check_prod)));
        }
        if wants(opts, "rj_abelian") {
            results.push((order, run_ring_check("rj_abelian", &ctx, check_rj_abelian)));
        }
        if wants(opts, "unc") {
            results.push((order, run_ring_check("unc", &ctx, check_unc)));
        }
    }
    if wants(opts, "examples") {
        results.push((
            0,
            run_global_check("examples", "parameter sweeps", || check_examples(opts.budget)),
        ));
    }
    if wants(opts, "matrix_main") {
        results.push((
            0,
            run_global_check("matrix_main", "matrix instances", || {
                check_matrix_main(opts.budget, opts.workers)
            }),
        ));
    }
    if wants(opts, "trace_rank") {
        results.push((
            0,
            run_global_check("trace_rank", "idempotent sweeps", check_trace_rank),
        ));
    }
    results.sort_by(|(oa, ra), (ob, rb)| {
        ra.check
            .cmp(&rb.check)
            .then(oa.cmp(ob))
            .then(ra.ring.cmp(&rb.ring))
    });
    Ok(results.into_iter().map(|(_, r)| r).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_catalog(texts: &[&str]) -> Catalog {
        Catalog {
            entries: texts
                .iter()
                .map(|t| CatalogEntry {
                    label: t.to_string(),
                    expr: parse_expr(t).unwrap(),
                    budget: None,
                })
                .collect(),
        }
    }

    fn run_single(text: &str, check: &str) -> Vec<TheoremCheckResult> {
        let catalog = ctx_catalog(&[text]);
        let opts = RunOptions {
            checks: vec![check.to_string()],
            ..RunOptions::default()
        };
        run_all(&catalog, &opts).unwrap()
    }

    #[test]
    fn epi_on_z12_and_z6() {
        for text in ["Zn(12)", "Zn(6)", "Zn(5)"] {
            let results = run_single(text, "epi");
            assert_eq!(results.len(), 1);
            assert_eq!(results[0].verdict, Verdict::Confirmed, "{text}");
        }
    }

    #[test]
    fn one_on_examples() {
        for text in ["Zn(12)", "Zn(5)", "Skew(6)"] {
            let results = run_single(text, "one");
            assert_eq!(results[0].verdict, Verdict::Confirmed, "{text}");
        }
    }

    #[test]
    fn prod_criterion_cases() {
        let results = run_single("Prod(Zn(4),Zn(3))", "prod");
        assert_eq!(results[0].verdict, Verdict::Confirmed);
        let results = run_single("Prod(Zn(3),Zn(3))", "prod");
        assert_eq!(results[0].verdict, Verdict::Confirmed);
        // non-products do not emit prod results
        let catalog = ctx_catalog(&["Zn(6)"]);
        let opts = RunOptions {
            checks: vec!["prod".into()],
            ..RunOptions::default()
        };
        assert!(run_all(&catalog, &opts).unwrap().is_empty());
    }

    #[test]
    fn description_on_instances() {
        for text in ["Zn(12)", "Zn(4)", "Zn(5)", "Zn(9)", "M(2,Zn(3))"] {
            let results = run_single(text, "description");
            assert_eq!(results[0].verdict, Verdict::Confirmed, "{text}");
        }
    }

    #[test]
    fn fine_on_instances() {
        for text in ["Zn(3)", "Zn(4)", "Zn(6)", "M(2,Zn(2))", "Skew(6)", "Zn(5)"] {
            let results = run_single(text, "fine");
            assert_eq!(results[0].verdict, Verdict::Confirmed, "{text}");
        }
    }

    #[test]
    fn hypothesis_skips_are_reported() {
        let results = run_single("M(2,Zn(3))", "clean");
        assert!(matches!(results[0].verdict, Verdict::Skipped(_)));
        let results = run_single("Zn(4)", "commut");
        assert!(matches!(results[0].verdict, Verdict::Skipped(_)));
        let results = run_single("M(2,Zn(2))", "pireg");
        assert!(matches!(results[0].verdict, Verdict::Skipped(_)));
    }

    #[test]
    fn examples_and_trace_rank_confirm() {
        let catalog = Catalog::default();
        let opts = RunOptions {
            checks: vec!["examples".into(), "trace_rank".into()],
            ..RunOptions::default()
        };
        let results = run_all(&catalog, &opts).unwrap();
        assert_eq!(results.len(), 2);
        assert!(results.iter().all(|r| r.verdict == Verdict::Confirmed));
    }

    #[test]
    fn empty_catalog_gives_empty_ring_results() {
        let opts = RunOptions {
            checks: vec!["one".into()],
            ..RunOptions::default()
        };
        assert!(run_all(&Catalog::default(), &opts).unwrap().is_empty());
    }

    #[test]
    fn results_sorted_and_json_stable() {
        let catalog = ctx_catalog(&["Zn(6)", "Zn(4)"]);
        let opts = RunOptions {
            checks: vec!["char2".into(), "unc".into()],
            ..RunOptions::default()
        };
        let results = run_all(&catalog, &opts).unwrap();
        let keys: Vec<(String, String)> = results
            .iter()
            .map(|r| (r.check.clone(), r.ring.clone()))
            .collect();
        assert_eq!(
            keys,
            vec![
                ("char2".into(), "Zn(4)".into()),
                ("char2".into(), "Zn(6)".into()),
                ("unc".into(), "Zn(4)".into()),
                ("unc".into(), "Zn(6)".into()),
            ]
        );
        let json1 = serde_json::to_string(&results_to_json(&results)).unwrap();
        let results2 = run_all(&catalog, &opts).unwrap();
        let json2 = serde_json::to_string(&results_to_json(&results2)).unwrap();
        assert_eq!(json1, json2);
    }

    #[test]
    fn default_catalog_is_valid() {
        let catalog = default_catalog();
        assert!(catalog.entries.len() >= 60);
        catalog.validate().unwrap();
        // spot entries
        let labels: Vec<&str> = catalog.entries.iter().map(|e| e.label.as_str()).collect();
        assert!(labels.contains(&"Zn(12)"));
        assert!(labels.contains(&"Skew(12)"));
        assert!(labels.contains(&"M(3,Zn(2))"));
        assert!(labels.contains(&"Prod(Zn(3),Zn(3))"));
    }

    #[test]
    fn catalog_json_parsing() {
        let catalog = parse_catalog_json(
            r#"[{"label": "a", "expr": "Zn(6)"}, {"label": "b", "expr": "M(2,Zn(2))", "budget": 100000}]"#,
        )
        .unwrap();
        assert_eq!(catalog.entries.len(), 2);
        assert_eq!(catalog.entries[1].budget, Some(100000));
        assert!(parse_catalog_json(r#"[{"label": "a", "expr": "Zn(6)"}, {"label": "a", "expr": "Zn(7)"}]"#).is_err());
        assert!(parse_catalog_json("not json").is_err());
    }
}
