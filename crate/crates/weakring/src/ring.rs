//! Finite rings realized from construction expressions.
//!
//! A built ring is either `Tabled` (explicit Cayley tables, used whenever the
//! order fits under the table limit) or `Structured` (lazy matrix arithmetic
//! over a prime field, used for matrix rings too large to tabulate, e.g.
//! `M(4,Zn(3))` of order 3^16).
//!
//! Elements are canonical integer indices `0..order`. Each constructor fixes
//! its codec:
//!
//! * `Zn(n)` — index is the residue.
//! * `Product` — mixed radix, leftmost factor most significant.
//! * `M(k,base)` / `T(k,base)` — base-|R| digits of the (upper-triangular)
//!   entries in row-major order, first entry most significant.
//! * `TrivExt` — pair `(r, m)` with `r` most significant.
//! * `Skew(n)` — pair `(r, s)` for `r + s·x` with `r` most significant, where
//!   the coefficient ring `Z_n[t]/(t^2)` uses the pair codec `(a, b)` for
//!   `a + b·t`.
//! * `Quot` — cosets ordered by minimal representative.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use crate::error::{Result, RingError};
use crate::expr::RingExpr;
use crate::matgf;

/// Default cap on the order of table-backed rings.
pub const DEFAULT_TABLE_LIMIT: usize = 65536;

// Table entries are u16, so no table may exceed this order regardless of the
// requested limit.
const MAX_TABLED_ORDER: usize = 1 << 16;

/// Identity tag distinguishing built rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingId(u64);

fn fresh_ring_id() -> RingId {
    static NEXT: AtomicU64 = AtomicU64::new(0);
    RingId(NEXT.fetch_add(1, Ordering::Relaxed))
}

/// An element of a specific built ring: the ring's tag plus a canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    ring: RingId,
    index: usize,
}

impl Element {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }
}

/// Where a ring came from: a construction expression, or a derived
/// construction (subring, quotient corner) labeled by text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSource {
    Expr(RingExpr),
    Derived(String),
}

impl std::fmt::Display for RingSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingSource::Expr(e) => write!(f, "{e}"),
            RingSource::Derived(s) => write!(f, "{s}"),
        }
    }
}

pub(crate) struct Tables {
    pub order: usize,
    pub add: Vec<u16>,
    pub mul: Vec<u16>,
    pub neg: Vec<u16>,
    pub zero: u16,
    pub one: u16,
}

impl Tables {
    #[inline(always)]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline(always)]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline(always)]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }
}

/// Lazy arithmetic for `M(k, Zn(p))` with `p` prime, too large to tabulate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatRingOps {
    pub p: u64,
    pub k: usize,
}

impl MatRingOps {
    pub fn entry_count(&self) -> usize {
        self.k * self.k
    }

    pub fn decode(&self, idx: usize) -> Vec<u64> {
        let m = self.entry_count();
        let mut out = vec![0u64; m];
        let mut rest = idx as u128;
        let p = self.p as u128;
        for slot in out.iter_mut().rev() {
            *slot = (rest % p) as u64;
            rest /= p;
        }
        out
    }

    pub fn encode(&self, entries: &[u64]) -> usize {
        let p = self.p as u128;
        let mut idx: u128 = 0;
        for &e in entries {
            idx = idx * p + (e as u128 % p);
        }
        idx as usize
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&sum)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let k = self.k;
        let mut out = vec![0u64; k * k];
        for i in 0..k {
            for j in 0..k {
                let mut acc: u128 = 0;
                for l in 0..k {
                    acc += x[i * k + l] as u128 * y[l * k + j] as u128;
                }
                out[i * k + j] = (acc % self.p as u128) as u64;
            }
        }
        self.encode(&out)
    }

    fn neg(&self, a: usize) -> usize {
        let x = self.decode(a);
        let negged: Vec<u64> = x.iter().map(|&u| (self.p - u) % self.p).collect();
        self.encode(&negged)
    }

    fn one(&self) -> usize {
        let k = self.k;
        let mut id = vec![0u64; k * k];
        for i in 0..k {
            id[i * k + i] = 1;
        }
        self.encode(&id)
    }
}

enum Repr {
    Tabled(Tables),
    Structured(MatRingOps),
}

#[derive(Default)]
struct Caches {
    units: OnceLock<UnitsCache>,
    idempotents: OnceLock<Vec<usize>>,
    central_idempotents: OnceLock<Vec<usize>>,
    nilpotency: OnceLock<Vec<u32>>,
    involutions: OnceLock<Vec<usize>>,
    radical: OnceLock<Vec<usize>>,
    add_generators: OnceLock<Vec<usize>>,
}

pub(crate) struct UnitsCache {
    pub is_unit: Vec<bool>,
    /// inverse[a] = b with ab = ba = 1, usize::MAX when not a unit.
    pub inverse: Vec<usize>,
}

/// A realized finite ring with canonical element indexing.
pub struct FiniteRing {
    id: RingId,
    order: usize,
    source: RingSource,
    repr: Repr,
    caches: Caches,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.source, self.order)
    }
}

/// Realize the ring described by `expr` with the default table limit.
pub fn build(expr: RingExpr) -> Result<FiniteRing> {
    build_with_limit(expr, DEFAULT_TABLE_LIMIT)
}

/// Realize the ring described by `expr`; rings of order at most
/// `table_limit` (capped at 65536) get Cayley tables, larger matrix rings
/// over a prime-order `Zn` stay structured.
pub fn build_with_limit(expr: RingExpr, table_limit: usize) -> Result<FiniteRing> {
    validate_expr(&expr)?;
    let limit = table_limit.min(MAX_TABLED_ORDER).max(1);
    let order = expr_order(&expr).ok_or(RingError::OrderOverflow {
        order: u128::MAX,
        limit,
    })?;
    if order <= limit as u128 {
        return build_tabled(&expr, limit);
    }
    if let RingExpr::Matrix(base, k) = &expr {
        if let RingExpr::Zn(p) = **base {
            if is_prime(p) && order <= usize::MAX as u128 {
                let ops = MatRingOps { p, k: *k };
                return Ok(FiniteRing {
                    id: fresh_ring_id(),
                    order: order as usize,
                    source: RingSource::Expr(expr),
                    repr: Repr::Structured(ops),
                    caches: Caches::default(),
                });
            }
        }
    }
    Err(RingError::OrderOverflow { order, limit })
}

fn validate_expr(expr: &RingExpr) -> Result<()> {
    match expr {
        RingExpr::Zn(n) => {
            if *n < 1 {
                return Err(RingError::InvalidExpr("Zn requires n >= 1".into()));
            }
        }
        RingExpr::Matrix(base, k) => {
            if *k < 1 {
                return Err(RingError::InvalidExpr("M requires k >= 1".into()));
            }
            validate_expr(base)?;
        }
        RingExpr::Product(factors) => {
            if factors.is_empty() {
                return Err(RingError::InvalidExpr("Prod requires a factor".into()));
            }
            for f in factors {
                validate_expr(f)?;
            }
        }
        RingExpr::Quotient(base, _) => validate_expr(base)?,
        RingExpr::TrivExt(base) => validate_expr(base)?,
        RingExpr::Triangular(base, k) => {
            if *k < 2 {
                return Err(RingError::InvalidExpr("T requires k >= 2".into()));
            }
            validate_expr(base)?;
        }
        RingExpr::Skew(n) => {
            if *n < 2 {
                return Err(RingError::InvalidExpr("Skew requires n >= 2".into()));
            }
        }
    }
    Ok(())
}

/// Order of the realized ring, None on overflow. For quotients this is the
/// base order (an upper bound; the true order needs the ideal closure).
fn expr_order(expr: &RingExpr) -> Option<u128> {
    match expr {
        RingExpr::Zn(n) => Some(*n as u128),
        RingExpr::Matrix(base, k) => {
            let b = expr_order(base)?;
            checked_pow(b, (k * k) as u32)
        }
        RingExpr::Product(factors) => {
            let mut acc: u128 = 1;
            for f in factors {
                acc = acc.checked_mul(expr_order(f)?)?;
            }
            Some(acc)
        }
        RingExpr::Quotient(base, _) => expr_order(base),
        RingExpr::TrivExt(base) => {
            let b = expr_order(base)?;
            b.checked_mul(b)
        }
        RingExpr::Triangular(base, k) => {
            let b = expr_order(base)?;
            checked_pow(b, (k * (k + 1) / 2) as u32)
        }
        RingExpr::Skew(n) => checked_pow(*n as u128, 4),
    }
}

fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn fill_tables(
    order: usize,
    zero: usize,
    one: usize,
    add: impl Fn(usize, usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
    neg: impl Fn(usize) -> usize,
) -> Tables {
    let mut add_t = vec![0u16; order * order];
    let mut mul_t = vec![0u16; order * order];
    let mut neg_t = vec![0u16; order];
    for a in 0..order {
        neg_t[a] = neg(a) as u16;
        let row = a * order;
        for b in 0..order {
            add_t[row + b] = add(a, b) as u16;
            mul_t[row + b] = mul(a, b) as u16;
        }
    }
    Tables {
        order,
        add: add_t,
        mul: mul_t,
        neg: neg_t,
        zero: zero as u16,
        one: one as u16,
    }
}

fn build_tabled(expr: &RingExpr, limit: usize) -> Result<FiniteRing> {
    let tables = match expr {
        RingExpr::Zn(n) => {
            let n = *n as usize;
            fill_tables(
                n,
                0,
                1 % n,
                |a, b| (a + b) % n,
                |a, b| (a * b) % n,
                |a| (n - a) % n,
            )
        }
        RingExpr::Matrix(base, k) => {
            let b = build_tabled(base, limit)?;
            square_matrix_tables(&b, *k, false)
        }
        RingExpr::Triangular(base, k) => {
            let b = build_tabled(base, limit)?;
            square_matrix_tables(&b, *k, true)
        }
        RingExpr::Product(factors) => {
            let built: Vec<FiniteRing> = factors
                .iter()
                .map(|f| build_tabled(f, limit))
                .collect::<Result<_>>()?;
            product_tables(&built)
        }
        RingExpr::TrivExt(base) => {
            let b = build_tabled(base, limit)?;
            triv_ext_tables(&b)
        }
        RingExpr::Skew(n) => {
            let coeff = build_tabled(&RingExpr::triv_ext(RingExpr::zn(*n)), limit)?;
            skew_tables(&coeff, *n as usize)
        }
        RingExpr::Quotient(base, gens) => {
            let b = build_with_limit((**base).clone(), limit)?;
            if !b.is_tabled() {
                return Err(RingError::StructuredUnsupported);
            }
            for &g in gens {
                if g >= b.order() {
                    return Err(RingError::InvalidExpr(format!(
                        "quotient generator index {g} out of range for base of order {}",
                        b.order()
                    )));
                }
            }
            let gen_elems: Vec<Element> = gens.iter().map(|&g| b.element_unchecked(g)).collect();
            let ideal = crate::structure::ideal_generated(&b, &gen_elems)?;
            let (q, _) = crate::structure::quotient(&b, &ideal)?;
            let mut q = q;
            q.source = RingSource::Expr(expr.clone());
            return Ok(q);
        }
    };
    Ok(FiniteRing::from_tables(tables, RingSource::Expr(expr.clone())))
}

/// Tables for k x k matrices over a tabled base; `upper` restricts to
/// upper-triangular entry positions.
fn square_matrix_tables(base: &FiniteRing, k: usize, upper: bool) -> Tables {
    let bt = base.tab().expect("base must be tabled");
    let m = bt.order;
    // Entry slots in row-major order; full grid or the i <= j positions.
    let slots: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| !upper || i <= j)
        .collect();
    let nslots = slots.len();
    let order = m.pow(nslots as u32);
    let slot_of = {
        let mut map = vec![usize::MAX; k * k];
        for (s, &(i, j)) in slots.iter().enumerate() {
            map[i * k + j] = s;
        }
        map
    };
    let decode = |idx: usize| -> Vec<usize> {
        let mut digits = vec![0usize; nslots];
        let mut rest = idx;
        for d in digits.iter_mut().rev() {
            *d = rest % m;
            rest /= m;
        }
        digits
    };
    let encode = |digits: &[usize]| -> usize {
        digits.iter().fold(0usize, |acc, &d| acc * m + d)
    };
    let zero = 0usize;
    let one = {
        let mut digits = vec![bt.zero as usize; nslots];
        for i in 0..k {
            digits[slot_of[i * k + i]] = bt.one as usize;
        }
        encode(&digits)
    };
    fill_tables(
        order,
        zero,
        one,
        |a, b| {
            let (x, y) = (decode(a), decode(b));
            let sum: Vec<usize> = x.iter().zip(&y).map(|(&u, &v)| bt.add(u, v)).collect();
            encode(&sum)
        },
        |a, b| {
            let (x, y) = (decode(a), decode(b));
            let mut out = vec![bt.zero as usize; nslots];
            for (s, &(i, j)) in slots.iter().enumerate() {
                let mut acc = bt.zero as usize;
                for l in 0..k {
                    let (sl, sr) = (slot_of[i * k + l], slot_of[l * k + j]);
                    if sl == usize::MAX || sr == usize::MAX {
                        continue; // below-diagonal entries are zero
                    }
                    acc = bt.add(acc, bt.mul(x[sl], y[sr]));
                }
                out[s] = acc;
            }
            encode(&out)
        },
        |a| {
            let x = decode(a);
            let negged: Vec<usize> = x.iter().map(|&u| bt.neg(u)).collect();
            encode(&negged)
        },
    )
}

fn product_tables(factors: &[FiniteRing]) -> Tables {
    let tabs: Vec<&Tables> = factors.iter().map(|f| f.tab().unwrap()).collect();
    let radices: Vec<usize> = tabs.iter().map(|t| t.order).collect();
    let order: usize = radices.iter().product();
    let decode = |idx: usize| -> Vec<usize> {
        let mut parts = vec![0usize; radices.len()];
        let mut rest = idx;
        for (p, &r) in parts.iter_mut().zip(&radices).rev() {
            *p = rest % r;
            rest /= r;
        }
        parts
    };
    let encode = |parts: &[usize]| -> usize {
        parts
            .iter()
            .zip(&radices)
            .fold(0usize, |acc, (&p, &r)| acc * r + p)
    };
    let zero = encode(&tabs.iter().map(|t| t.zero as usize).collect::<Vec<_>>());
    let one = encode(&tabs.iter().map(|t| t.one as usize).collect::<Vec<_>>());
    fill_tables(
        order,
        zero,
        one,
        |a, b| {
            let (x, y) = (decode(a), decode(b));
            let parts: Vec<usize> = x
                .iter()
                .zip(&y)
                .zip(&tabs)
                .map(|((&u, &v), t)| t.add(u, v))
                .collect();
            encode(&parts)
        },
        |a, b| {
            let (x, y) = (decode(a), decode(b));
            let parts: Vec<usize> = x
                .iter()
                .zip(&y)
                .zip(&tabs)
                .map(|((&u, &v), t)| t.mul(u, v))
                .collect();
            encode(&parts)
        },
        |a| {
            let x = decode(a);
            let parts: Vec<usize> = x.iter().zip(&tabs).map(|(&u, t)| t.neg(u)).collect();
            encode(&parts)
        },
    )
}

fn triv_ext_tables(base: &FiniteRing) -> Tables {
    let bt = base.tab().unwrap();
    let m = bt.order;
    let order = m * m;
    let zero = (bt.zero as usize) * m + bt.zero as usize;
    let one = (bt.one as usize) * m + bt.zero as usize;
    fill_tables(
        order,
        zero,
        one,
        |a, b| {
            let (r1, x1) = (a / m, a % m);
            let (r2, x2) = (b / m, b % m);
            bt.add(r1, r2) * m + bt.add(x1, x2)
        },
        |a, b| {
            let (r1, x1) = (a / m, a % m);
            let (r2, x2) = (b / m, b % m);
            bt.mul(r1, r2) * m + bt.add(bt.mul(r1, x2), bt.mul(x1, r2))
        },
        |a| {
            let (r, x) = (a / m, a % m);
            bt.neg(r) * m + bt.neg(x)
        },
    )
}

/// The skew example over R = Z_n[t]/(t^2): elements r + s·x with x^2 = 0 and
/// x·r = σ(r)·x where σ(a + bt) = a. So
/// (r1 + s1·x)(r2 + s2·x) = r1·r2 + (r1·s2 + s1·σ(r2))·x.
///
/// Filled with explicit pair loops: Skew(12) has order 20736 and the two
/// 20736^2 tables are the largest this crate ever materializes.
fn skew_tables(coeff: &FiniteRing, n: usize) -> Tables {
    let rt = coeff.tab().unwrap();
    let m = rt.order; // n^2
    debug_assert_eq!(m, n * n);
    let order = m * m;
    // σ on the pair codec (a, b) -> a·n + b kills the t-part.
    let sigma: Vec<usize> = (0..m).map(|r| (r / n) * n).collect();
    let mut add_t = vec![0u16; order * order];
    let mut mul_t = vec![0u16; order * order];
    let mut neg_t = vec![0u16; order];
    for r1 in 0..m {
        for s1 in 0..m {
            let a = r1 * m + s1;
            neg_t[a] = (rt.neg(r1) * m + rt.neg(s1)) as u16;
            let row = a * order;
            for r2 in 0..m {
                let add_r = rt.add(r1, r2) * m;
                let mul_r = rt.mul(r1, r2) * m;
                let s1_sig = rt.mul(s1, sigma[r2]);
                let col = r2 * m;
                for s2 in 0..m {
                    add_t[row + col + s2] = (add_r + rt.add(s1, s2)) as u16;
                    mul_t[row + col + s2] =
                        (mul_r + rt.add(rt.mul(r1, s2), s1_sig)) as u16;
                }
            }
        }
    }
    Tables {
        order,
        add: add_t,
        mul: mul_t,
        neg: neg_t,
        zero: ((rt.zero as usize) * m + rt.zero as usize) as u16,
        one: ((rt.one as usize) * m + rt.zero as usize) as u16,
    }
}

impl FiniteRing {
    pub(crate) fn from_tables(tables: Tables, source: RingSource) -> FiniteRing {
        FiniteRing {
            id: fresh_ring_id(),
            order: tables.order,
            source,
            repr: Repr::Tabled(tables),
            caches: Caches::default(),
        }
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn source(&self) -> &RingSource {
        &self.source
    }

    /// The construction expression, when the ring came from one.
    pub fn source_expr(&self) -> Option<&RingExpr> {
        match &self.source {
            RingSource::Expr(e) => Some(e),
            RingSource::Derived(_) => None,
        }
    }

    pub fn source_string(&self) -> String {
        self.source.to_string()
    }

    /// Replace the source with a derived label (used when a quotient or
    /// corner deserves a better name than the default).
    pub fn relabel(mut self, label: String) -> Self {
        self.source = RingSource::Derived(label);
        self
    }

    pub fn is_tabled(&self) -> bool {
        matches!(self.repr, Repr::Tabled(_))
    }

    /// For structured matrix rings, the prime modulus and dimension.
    pub fn structured_matrix(&self) -> Option<(u64, usize)> {
        match &self.repr {
            Repr::Structured(ops) => Some((ops.p, ops.k)),
            Repr::Tabled(_) => None,
        }
    }

    pub(crate) fn tab(&self) -> Option<&Tables> {
        match &self.repr {
            Repr::Tabled(t) => Some(t),
            Repr::Structured(_) => None,
        }
    }

    pub(crate) fn mat_ops(&self) -> Option<&MatRingOps> {
        match &self.repr {
            Repr::Structured(ops) => Some(ops),
            Repr::Tabled(_) => None,
        }
    }

    // ---- index-level arithmetic ----

    pub fn zero_idx(&self) -> usize {
        match &self.repr {
            Repr::Tabled(t) => t.zero as usize,
            Repr::Structured(_) => 0,
        }
    }

    pub fn one_idx(&self) -> usize {
        match &self.repr {
            Repr::Tabled(t) => t.one as usize,
            Repr::Structured(ops) => ops.one(),
        }
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Tabled(t) => t.add(a, b),
            Repr::Structured(ops) => ops.add(a, b),
        }
    }

    #[inline]
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Tabled(t) => t.mul(a, b),
            Repr::Structured(ops) => ops.mul(a, b),
        }
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        match &self.repr {
            Repr::Tabled(t) => t.neg(a),
            Repr::Structured(ops) => ops.neg(a),
        }
    }

    #[inline]
    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    /// a^e for e >= 1 by binary exponentiation.
    pub fn pow_idx(&self, a: usize, e: u64) -> usize {
        assert!(e >= 1);
        let mut base = a;
        let mut exp = e;
        let mut acc: Option<usize> = None;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => base,
                    Some(x) => self.mul_idx(x, base),
                });
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul_idx(base, base);
            }
        }
        acc.unwrap()
    }

    /// The element k·1 (k may be negative).
    pub fn scalar_idx(&self, k: i64) -> usize {
        let mut acc = self.zero_idx();
        let one = self.one_idx();
        for _ in 0..k.unsigned_abs() {
            acc = self.add_idx(acc, one);
        }
        if k < 0 {
            acc = self.neg_idx(acc);
        }
        acc
    }

    // ---- tagged elements ----

    pub fn element(&self, index: usize) -> Result<Element> {
        if index >= self.order {
            return Err(RingError::BadElement {
                index,
                order: self.order,
            });
        }
        Ok(Element {
            ring: self.id,
            index,
        })
    }

    pub(crate) fn element_unchecked(&self, index: usize) -> Element {
        debug_assert!(index < self.order);
        Element {
            ring: self.id,
            index,
        }
    }

    pub fn zero(&self) -> Element {
        self.element_unchecked(self.zero_idx())
    }

    pub fn one(&self) -> Element {
        self.element_unchecked(self.one_idx())
    }

    /// All elements in ascending canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(move |i| self.element_unchecked(i))
    }

    pub fn check_member(&self, a: Element) -> Result<usize> {
        if a.ring != self.id {
            return Err(RingError::RingMismatch);
        }
        Ok(a.index)
    }

    pub fn add(&self, a: Element, b: Element) -> Result<Element> {
        let (i, j) = (self.check_member(a)?, self.check_member(b)?);
        Ok(self.element_unchecked(self.add_idx(i, j)))
    }

    pub fn mul(&self, a: Element, b: Element) -> Result<Element> {
        let (i, j) = (self.check_member(a)?, self.check_member(b)?);
        Ok(self.element_unchecked(self.mul_idx(i, j)))
    }

    pub fn neg(&self, a: Element) -> Result<Element> {
        let i = self.check_member(a)?;
        Ok(self.element_unchecked(self.neg_idx(i)))
    }

    pub fn sub(&self, a: Element, b: Element) -> Result<Element> {
        let (i, j) = (self.check_member(a)?, self.check_member(b)?);
        Ok(self.element_unchecked(self.sub_idx(i, j)))
    }

    // ---- cached element sets ----

    pub(crate) fn units_cache(&self) -> Result<&UnitsCache> {
        if !self.is_tabled() {
            return Err(RingError::StructuredUnsupported);
        }
        Ok(self.caches.units.get_or_init(|| {
            let t = self.tab().unwrap();
            let n = t.order;
            let one = t.one as usize;
            let mut is_unit = vec![false; n];
            let mut inverse = vec![usize::MAX; n];
            for a in 0..n {
                for b in 0..n {
                    if t.mul(a, b) == one && t.mul(b, a) == one {
                        is_unit[a] = true;
                        inverse[a] = b;
                        break;
                    }
                }
            }
            UnitsCache { is_unit, inverse }
        }))
    }

    /// Idempotent element indices, ascending. Structured rings enumerate
    /// idempotent matrices directly.
    pub(crate) fn idempotent_indices(&self) -> Result<&[usize]> {
        if let Some(v) = self.caches.idempotents.get() {
            return Ok(v);
        }
        let v = match &self.repr {
            Repr::Tabled(t) => (0..t.order).filter(|&a| t.mul(a, a) == a).collect(),
            Repr::Structured(ops) => {
                if ops.p > u8::MAX as u64 {
                    return Err(RingError::BudgetExceeded {
                        need: self.order as u128,
                        budget: u8::MAX as u64,
                    });
                }
                matgf::enumerate_idempotents(ops.p as u8, ops.k)?
                    .map(|m| ops.encode(&m.entries_u64()))
                    .collect()
            }
        };
        Ok(self.caches.idempotents.get_or_init(|| v))
    }

    pub(crate) fn central_idempotent_indices(&self) -> Result<&[usize]> {
        if let Some(v) = self.caches.central_idempotents.get() {
            return Ok(v);
        }
        let t = self.tab().ok_or(RingError::StructuredUnsupported)?;
        let idems = self.idempotent_indices()?;
        let v: Vec<usize> = idems
            .iter()
            .copied()
            .filter(|&e| (0..t.order).all(|r| t.mul(e, r) == t.mul(r, e)))
            .collect();
        Ok(self.caches.central_idempotents.get_or_init(|| v))
    }

    /// Nilpotency table for tabled rings: entry 0 means not nilpotent,
    /// otherwise the least k with a^k = 0.
    pub(crate) fn nilpotency_table(&self) -> Result<&[u32]> {
        let t = self.tab().ok_or(RingError::StructuredUnsupported)?;
        Ok(self.caches.nilpotency.get_or_init(|| {
            let n = t.order;
            let zero = t.zero as usize;
            // a is nilpotent iff a^(2^s) = 0 for 2^s >= n, since the
            // nilpotency index never exceeds the order.
            let steps = usize::BITS - (n.max(2) - 1).leading_zeros();
            (0..n)
                .map(|a| {
                    let mut x = a;
                    for _ in 0..steps {
                        x = t.mul(x, x);
                    }
                    if x != zero {
                        return 0u32;
                    }
                    let mut p = a;
                    let mut k = 1u32;
                    while p != zero {
                        p = t.mul(p, a);
                        k += 1;
                    }
                    k
                })
                .collect()
        }))
    }

    pub(crate) fn involution_indices(&self) -> Result<&[usize]> {
        let t = self.tab().ok_or(RingError::StructuredUnsupported)?;
        Ok(self.caches.involutions.get_or_init(|| {
            let one = t.one as usize;
            (0..t.order).filter(|&a| t.mul(a, a) == one).collect()
        }))
    }

    pub(crate) fn radical_cache(&self) -> &OnceLock<Vec<usize>> {
        &self.caches.radical
    }

    /// A small generating set of the additive group, greedy by index.
    pub(crate) fn additive_generators(&self) -> Result<&[usize]> {
        let t = self.tab().ok_or(RingError::StructuredUnsupported)?;
        Ok(self.caches.add_generators.get_or_init(|| {
            let n = t.order;
            let zero = t.zero as usize;
            let mut closed = vec![false; n];
            closed[zero] = true;
            let mut gens = Vec::new();
            let mut members = vec![zero];
            for a in 0..n {
                if closed[a] {
                    continue;
                }
                gens.push(a);
                // close under adding multiples of a
                let snapshot = members.clone();
                let mut mult = a;
                while mult != zero {
                    for &c in &snapshot {
                        let s = t.add(c, mult);
                        if !closed[s] {
                            closed[s] = true;
                            members.push(s);
                        }
                    }
                    mult = t.add(mult, a);
                }
            }
            gens
        }))
    }

    // ---- codec helpers ----

    /// Encode an element from its codec parts:
    /// * `Zn` — one part, the residue;
    /// * `Prod` — one index per factor;
    /// * `M`/`T` — entry indices of the base ring, row-major (upper-triangular
    ///   positions only for `T`);
    /// * `TrivExt` — `(r, m)`; `Skew` — `(r, s)`;
    /// * `Quot` — one part, a base-ring element index (mapped to its coset).
    pub fn encode_parts(&self, parts: &[usize]) -> Result<usize> {
        let expr = match &self.source {
            RingSource::Expr(e) => e.clone(),
            RingSource::Derived(_) => {
                return Err(RingError::PreconditionViolated(
                    "derived rings have no expression codec".into(),
                ))
            }
        };
        let idx = match &expr {
            RingExpr::Zn(n) => {
                one_part(parts)? % (*n as usize)
            }
            RingExpr::Product(factors) => {
                let radices: Vec<usize> = factors
                    .iter()
                    .map(|f| expr_order(f).unwrap() as usize)
                    .collect();
                if parts.len() != radices.len() {
                    return Err(RingError::PreconditionViolated(format!(
                        "expected {} parts, got {}",
                        radices.len(),
                        parts.len()
                    )));
                }
                let mut acc = 0usize;
                for (&p, &r) in parts.iter().zip(&radices) {
                    if p >= r {
                        return Err(RingError::BadElement { index: p, order: r });
                    }
                    acc = acc * r + p;
                }
                acc
            }
            RingExpr::Matrix(base, k) => {
                encode_grid(parts, expr_order(base).unwrap() as usize, *k, false)?
            }
            RingExpr::Triangular(base, k) => {
                encode_grid(parts, expr_order(base).unwrap() as usize, *k, true)?
            }
            RingExpr::TrivExt(base) => {
                let m = expr_order(base).unwrap() as usize;
                encode_pair(parts, m)?
            }
            RingExpr::Skew(n) => {
                let m = (*n as usize) * (*n as usize);
                encode_pair(parts, m)?
            }
            RingExpr::Quotient(..) => {
                return Err(RingError::PreconditionViolated(
                    "use the quotient projection to map base elements".into(),
                ))
            }
        };
        if idx >= self.order {
            return Err(RingError::BadElement {
                index: idx,
                order: self.order,
            });
        }
        Ok(idx)
    }

    /// Human-readable form of an element per the ring's codec.
    pub fn element_label(&self, idx: usize) -> String {
        match (&self.source, &self.repr) {
            (RingSource::Expr(RingExpr::Zn(_)), _) => idx.to_string(),
            (RingSource::Expr(RingExpr::Matrix(base, k)), _) => {
                if let RingExpr::Zn(_) = **base {
                    let m = expr_order(base).unwrap() as usize;
                    let digits = decode_digits(idx, m, k * k);
                    render_matrix(&digits, *k)
                } else {
                    format!("#{idx}")
                }
            }
            _ => format!("#{idx}"),
        }
    }
}

fn one_part(parts: &[usize]) -> Result<usize> {
    if parts.len() != 1 {
        return Err(RingError::PreconditionViolated(format!(
            "expected 1 part, got {}",
            parts.len()
        )));
    }
    Ok(parts[0])
}

fn encode_pair(parts: &[usize], m: usize) -> Result<usize> {
    if parts.len() != 2 {
        return Err(RingError::PreconditionViolated(format!(
            "expected 2 parts, got {}",
            parts.len()
        )));
    }
    if parts[0] >= m || parts[1] >= m {
        return Err(RingError::BadElement {
            index: parts[0].max(parts[1]),
            order: m,
        });
    }
    Ok(parts[0] * m + parts[1])
}

fn encode_grid(parts: &[usize], base_order: usize, k: usize, upper: bool) -> Result<usize> {
    let nslots = if upper { k * (k + 1) / 2 } else { k * k };
    if parts.len() != nslots {
        return Err(RingError::PreconditionViolated(format!(
            "expected {nslots} entries, got {}",
            parts.len()
        )));
    }
    let mut acc = 0usize;
    for &p in parts {
        if p >= base_order {
            return Err(RingError::BadElement {
                index: p,
                order: base_order,
            });
        }
        acc = acc * base_order + p;
    }
    Ok(acc)
}

pub(crate) fn decode_digits(idx: usize, radix: usize, count: usize) -> Vec<usize> {
    let mut digits = vec![0usize; count];
    let mut rest = idx;
    for d in digits.iter_mut().rev() {
        *d = rest % radix;
        rest /= radix;
    }
    digits
}

fn render_matrix(entries: &[usize], k: usize) -> String {
    let mut s = String::from("[");
    for i in 0..k {
        if i > 0 {
            s.push(',');
        }
        s.push('[');
        for j in 0..k {
            if j > 0 {
                s.push(',');
            }
            s.push_str(&entries[i * k + j].to_string());
        }
        s.push(']');
    }
    s.push(']');
    s
}

/// Pass/fail report for the ring axioms of a tabled ring.
/// `mul_commutative` is informational, not an axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub add_associative: bool,
    pub add_commutative: bool,
    pub zero_identity: bool,
    pub negation_valid: bool,
    pub mul_associative: bool,
    pub one_identity: bool,
    pub left_distributive: bool,
    pub right_distributive: bool,
    pub mul_commutative: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.add_associative
            && self.add_commutative
            && self.zero_identity
            && self.negation_valid
            && self.mul_associative
            && self.one_identity
            && self.left_distributive
            && self.right_distributive
    }
}

/// Verify the ring axioms of a tabled ring.
///
/// Complete over all elements, but organized to avoid the naive order^3
/// triple loop: pair axioms are checked exhaustively; the associativity and
/// distributivity checks run against an additive generating set, which
/// decides the full axiom because the defects are additive in each argument
/// once the already-verified laws hold.
pub fn verify_axioms(ring: &FiniteRing) -> Result<AxiomReport> {
    let t = ring.tab().ok_or(RingError::StructuredUnsupported)?;
    let n = t.order;
    let zero = t.zero as usize;
    let one = t.one as usize;

    let add_commutative = (0..n).all(|a| (a..n).all(|b| t.add(a, b) == t.add(b, a)));
    let zero_identity = (0..n).all(|a| t.add(a, zero) == a && t.add(zero, a) == a);
    let negation_valid = (0..n).all(|a| t.add(a, t.neg(a)) == zero);
    let one_identity = (0..n).all(|a| t.mul(a, one) == a && t.mul(one, a) == a);

    let gens = ring.additive_generators()?;
    // Light's test: associativity on (a, g, c) for a generating set decides it.
    let add_associative = gens.iter().all(|&g| {
        (0..n).all(|a| (0..n).all(|c| t.add(t.add(a, g), c) == t.add(a, t.add(g, c))))
    });
    // Distributivity against sums x + g extends additively to all pairs.
    let left_distributive = add_associative
        && gens.iter().all(|&g| {
            (0..n).all(|a| {
                (0..n).all(|x| t.mul(a, t.add(x, g)) == t.add(t.mul(a, x), t.mul(a, g)))
            })
        });
    let right_distributive = add_associative
        && gens.iter().all(|&g| {
            (0..n).all(|a| {
                (0..n).all(|x| t.mul(t.add(x, g), a) == t.add(t.mul(x, a), t.mul(g, a)))
            })
        });
    // With both distributive laws, the associativity defect a(bc) - (ab)c is
    // additive in each argument, so generator triples decide it.
    let mul_associative = left_distributive
        && right_distributive
        && gens.iter().all(|&g1| {
            gens.iter().all(|&g2| {
                gens.iter()
                    .all(|&g3| t.mul(t.mul(g1, g2), g3) == t.mul(g1, t.mul(g2, g3)))
            })
        });

    let mul_commutative = (0..n).all(|a| (a..n).all(|b| t.mul(a, b) == t.mul(b, a)));

    Ok(AxiomReport {
        add_associative,
        add_commutative,
        zero_identity,
        negation_valid,
        mul_associative,
        one_identity,
        left_distributive,
        right_distributive,
        mul_commutative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn r(text: &str) -> FiniteRing {
        build(parse_expr(text).unwrap()).unwrap()
    }

    #[test]
    fn zn_residue_codec() {
        let z6 = r("Zn(6)");
        assert_eq!(z6.order(), 6);
        assert_eq!(z6.zero_idx(), 0);
        assert_eq!(z6.one_idx(), 1);
        assert_eq!(z6.add_idx(4, 5), 3);
        assert_eq!(z6.mul_idx(4, 4), 4); // 4 is idempotent in Z6
        assert_eq!(z6.neg_idx(2), 4);
    }

    #[test]
    fn product_is_z12_via_crt_map() {
        let prod = r("Prod(Zn(4),Zn(3))");
        let z12 = r("Zn(12)");
        assert_eq!(prod.order(), 12);
        // x -> (x mod 4, x mod 3), a bijective homomorphism preserving 1.
        let map = |x: usize| prod.encode_parts(&[x % 4, x % 3]).unwrap();
        let mut seen = vec![false; 12];
        for x in 0..12 {
            let y = map(x);
            assert!(!seen[y], "not injective at {x}");
            seen[y] = true;
        }
        assert_eq!(map(z12.one_idx()), prod.one_idx());
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(map(z12.add_idx(a, b)), prod.add_idx(map(a), map(b)));
                assert_eq!(map(z12.mul_idx(a, b)), prod.mul_idx(map(a), map(b)));
            }
        }
    }

    #[test]
    fn skew_order_and_noncommutativity() {
        let s = r("Skew(6)");
        assert_eq!(s.order(), 1296);
        // x = (r=0, s=1) where 1 in R is (a=1,b=0) -> r-index 6; x s-part is
        // R's one: index 6. r = 1 + t is (a=1,b=1) -> r-index 7.
        let x = s.encode_parts(&[0, 6]).unwrap();
        let one_plus_t = s.encode_parts(&[7, 0]).unwrap();
        let xr = s.mul_idx(x, one_plus_t);
        let rx = s.mul_idx(one_plus_t, x);
        assert_eq!(xr, x, "x(1+t) = x");
        assert_ne!(rx, x, "(1+t)x = x + tx != x");
        let report = verify_axioms(&s).unwrap();
        assert!(report.all_pass());
        assert!(!report.mul_commutative);
    }

    #[test]
    fn build_skew_6_order_is_square_of_coeff_ring() {
        let s = r("Skew(6)");
        assert_eq!(s.order(), 36 * 36);
    }

    #[test]
    fn axioms_hold_on_representative_constructions() {
        for text in [
            "Zn(1)",
            "Zn(12)",
            "Prod(Zn(4),Zn(3))",
            "M(2,Zn(2))",
            "M(2,Zn(3))",
            "T(2,Zn(2))",
            "T(2,Zn(3))",
            "TrivExt(Zn(6))",
            "Quot(Zn(12),[4])",
            "Skew(2)",
            "Skew(3)",
        ] {
            let ring = r(text);
            let rep = verify_axioms(&ring).unwrap();
            assert!(rep.all_pass(), "{text}: {rep:?}");
        }
    }

    #[test]
    fn triangular_z2_order_8_axioms() {
        let t = r("T(2,Zn(2))");
        assert_eq!(t.order(), 8);
        assert!(verify_axioms(&t).unwrap().all_pass());
    }

    #[test]
    fn generator_axiom_check_matches_brute_force_on_small_rings() {
        for text in ["Zn(8)", "Zn(12)", "M(2,Zn(2))", "T(2,Zn(2))", "Prod(Zn(2),Zn(3))"] {
            let ring = r(text);
            let t = ring.tab().unwrap();
            let n = ring.order();
            let mut brute_add_assoc = true;
            let mut brute_mul_assoc = true;
            let mut brute_ldist = true;
            let mut brute_rdist = true;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        brute_add_assoc &= t.add(t.add(a, b), c) == t.add(a, t.add(b, c));
                        brute_mul_assoc &= t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c));
                        brute_ldist &= t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c));
                        brute_rdist &= t.mul(t.add(a, b), c) == t.add(t.mul(a, c), t.mul(b, c));
                    }
                }
            }
            let rep = verify_axioms(&ring).unwrap();
            assert_eq!(rep.add_associative, brute_add_assoc, "{text}");
            assert_eq!(rep.mul_associative, brute_mul_assoc, "{text}");
            assert_eq!(rep.left_distributive, brute_ldist, "{text}");
            assert_eq!(rep.right_distributive, brute_rdist, "{text}");
        }
    }

    #[test]
    fn structured_matrix_ring_m4_z3() {
        let m4 = build(parse_expr("M(4,Zn(3))").unwrap()).unwrap();
        assert!(!m4.is_tabled());
        assert_eq!(m4.order(), 43046721);
        assert_eq!(m4.structured_matrix(), Some((3, 4)));
        let one = m4.one_idx();
        assert_eq!(m4.mul_idx(one, one), one);
        // sampled axioms on random-ish triples
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 43046721) as usize
        };
        for _ in 0..2000 {
            let (a, b, c) = (next(), next(), next());
            assert_eq!(
                m4.mul_idx(m4.mul_idx(a, b), c),
                m4.mul_idx(a, m4.mul_idx(b, c))
            );
            assert_eq!(
                m4.mul_idx(a, m4.add_idx(b, c)),
                m4.add_idx(m4.mul_idx(a, b), m4.mul_idx(a, c))
            );
        }
    }

    #[test]
    fn order_overflow_and_invalid_exprs() {
        assert!(matches!(
            build(parse_expr("Zn(100000)").unwrap()),
            Err(RingError::OrderOverflow { .. })
        ));
        assert!(matches!(
            build(parse_expr("TrivExt(Zn(1000))").unwrap()),
            Err(RingError::OrderOverflow { .. })
        ));
        assert!(build(parse_expr("Zn(0)").unwrap()).is_err());
        assert!(build(parse_expr("M(0,Zn(2))").unwrap()).is_err());
        assert!(build(parse_expr("T(1,Zn(2))").unwrap()).is_err());
        assert!(build(parse_expr("Skew(1)").unwrap()).is_err());
        // quotient generator out of range
        assert!(build(parse_expr("Quot(Zn(12),[12])").unwrap()).is_err());
        // M(4,Zn(4)): base not prime, no structured form
        assert!(matches!(
            build(parse_expr("M(4,Zn(4))").unwrap()),
            Err(RingError::OrderOverflow { .. })
        ));
    }

    #[test]
    fn cross_ring_arithmetic_rejected() {
        let a = r("Zn(6)");
        let b = r("Zn(6)");
        let x = a.element(3).unwrap();
        let y = b.element(2).unwrap();
        assert!(matches!(a.add(x, y), Err(RingError::RingMismatch)));
        let ok = a.add(x, a.element(2).unwrap()).unwrap();
        assert_eq!(ok.index(), 5);
    }

    #[test]
    fn element_codec_round_trip() {
        let m2 = r("M(2,Zn(3))");
        for idx in 0..m2.order() {
            let digits = decode_digits(idx, 3, 4);
            assert_eq!(m2.encode_parts(&digits).unwrap(), idx);
        }
        let te = r("TrivExt(Zn(6))");
        for idx in 0..te.order() {
            assert_eq!(te.encode_parts(&[idx / 6, idx % 6]).unwrap(), idx);
        }
    }

    #[test]
    fn zero_ring_constants() {
        let z1 = r("Zn(1)");
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.zero_idx(), z1.one_idx());
        assert!(verify_axioms(&z1).unwrap().all_pass());
    }

    #[test]
    fn scalar_and_pow() {
        let z12 = r("Zn(12)");
        assert_eq!(z12.scalar_idx(6), 6);
        assert_eq!(z12.scalar_idx(-1), 11);
        assert_eq!(z12.pow_idx(6, 2), 0);
        assert_eq!(z12.pow_idx(5, 2), 1);
    }
}
