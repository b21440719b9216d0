//! Dense matrices over GF(p) for small primes, plus the exhaustive
//! idempotent scans behind the matrix-ring decomposition checks.
//!
//! The scans enumerate all p^(n*n) candidate matrices with an odometer over
//! base-p digits in row-major order (entry (0,0) most significant), testing
//! E^2 = E with early exit. The full M(4, Z3) sweep visits 3^16 ~ 4.3e7
//! candidates.

use crate::error::{Result, RingError};
use crate::Sign;

/// Scan budget: at most 3^16 candidate matrices by default.
pub const DEFAULT_SCAN_BUDGET: u64 = 43_046_721;

/// An n x n matrix over GF(p), entries reduced mod p, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixGF {
    p: u8,
    n: usize,
    entries: Vec<u8>,
}

impl MatrixGF {
    pub fn new(p: u8, n: usize, entries: Vec<u8>) -> MatrixGF {
        assert_eq!(entries.len(), n * n);
        let entries = entries.into_iter().map(|e| e % p).collect();
        MatrixGF { p, n, entries }
    }

    pub fn zero(p: u8, n: usize) -> MatrixGF {
        MatrixGF {
            p,
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(p: u8, n: usize) -> MatrixGF {
        let mut m = MatrixGF::zero(p, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Diagonal matrix from signed values; -1 becomes p-1.
    pub fn diag(p: u8, values: &[i64]) -> MatrixGF {
        let n = values.len();
        let mut m = MatrixGF::zero(p, n);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.rem_euclid(p as i64) as u8;
        }
        m
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn entries_u64(&self) -> Vec<u64> {
        self.entries.iter().map(|&e| e as u64).collect()
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn add(&self, other: &MatrixGF) -> MatrixGF {
        let p = self.p as u16;
        self.zip(other, move |a, b| (a + b) % p)
    }

    pub fn sub(&self, other: &MatrixGF) -> MatrixGF {
        let p = self.p as u16;
        self.zip(other, move |a, b| (a + p - b) % p)
    }

    pub fn neg(&self) -> MatrixGF {
        MatrixGF {
            p: self.p,
            n: self.n,
            entries: self.entries.iter().map(|&e| (self.p - e) % self.p).collect(),
        }
    }

    fn zip(&self, other: &MatrixGF, f: impl Fn(u16, u16) -> u16) -> MatrixGF {
        assert_eq!(self.p, other.p);
        assert_eq!(self.n, other.n);
        MatrixGF {
            p: self.p,
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a as u16, b as u16) as u8)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &MatrixGF) -> MatrixGF {
        assert_eq!(self.p, other.p);
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: u32 = 0;
                for l in 0..n {
                    acc += self.entries[i * n + l] as u32 * other.entries[l * n + j] as u32;
                }
                out[i * n + j] = (acc % self.p as u32) as u8;
            }
        }
        MatrixGF {
            p: self.p,
            n,
            entries: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn trace(&self) -> u8 {
        let mut acc: u32 = 0;
        for i in 0..self.n {
            acc += self.entries[i * self.n + i] as u32;
        }
        (acc % self.p as u32) as u8
    }

    /// Render as `[[a,b],[c,d]]` with entries in 0..p-1.
    pub fn render(&self) -> String {
        let mut s = String::from("[");
        for i in 0..self.n {
            if i > 0 {
                s.push(',');
            }
            s.push('[');
            for j in 0..self.n {
                if j > 0 {
                    s.push(',');
                }
                s.push_str(&self.at(i, j).to_string());
            }
            s.push(']');
        }
        s.push(']');
        s
    }
}

/// True iff A^n = 0; over a field the nilpotency index never exceeds n.
pub fn is_nilpotent_matrix(a: &MatrixGF) -> bool {
    let mut x = a.clone();
    let mut covered = 1usize;
    while covered < a.n {
        if x.is_zero() {
            return true;
        }
        x = x.matmul(&x);
        covered *= 2;
    }
    x.is_zero()
}

/// Least k with A^k = 0, None when A is not nilpotent. The zero matrix has
/// index 1.
pub fn nilpotency_index_matrix(a: &MatrixGF) -> Option<u32> {
    let mut x = a.clone();
    for k in 1..=a.n.max(1) {
        if x.is_zero() {
            return Some(k as u32);
        }
        x = x.matmul(a);
    }
    None
}

pub fn is_idempotent_matrix(a: &MatrixGF) -> bool {
    is_idempotent_entries(&a.entries, a.n, a.p)
}

#[inline]
fn is_idempotent_entries(e: &[u8], n: usize, p: u8) -> bool {
    let p = p as u32;
    for i in 0..n {
        for j in 0..n {
            let mut acc: u32 = 0;
            for l in 0..n {
                acc += e[i * n + l] as u32 * e[l * n + j] as u32;
            }
            if acc % p != e[i * n + j] as u32 {
                return false;
            }
        }
    }
    true
}

fn inv_mod(a: u8, p: u8) -> u8 {
    // p is a small prime; Fermat
    let mut acc: u64 = 1;
    let mut base = a as u64 % p as u64;
    let mut e = p as u32 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u8
}

/// Reduced row echelon form: returns (R, rank, U) with U invertible and
/// U·A = R.
pub fn rref(a: &MatrixGF) -> (MatrixGF, usize, MatrixGF) {
    let n = a.n;
    let p = a.p as u32;
    let mut r = a.entries.clone();
    let mut u = MatrixGF::identity(a.p, n).entries;
    let mut rank = 0usize;
    for col in 0..n {
        // find pivot
        let pivot = (rank..n).find(|&row| r[row * n + col] != 0);
        let Some(pivot) = pivot else { continue };
        r.swap(pivot * n..pivot * n + n, rank * n);
        u.swap(pivot * n..pivot * n + n, rank * n);
        // normalize pivot row
        let inv = inv_mod(r[rank * n + col], a.p) as u32;
        for j in 0..n {
            r[rank * n + j] = ((r[rank * n + j] as u32 * inv) % p) as u8;
            u[rank * n + j] = ((u[rank * n + j] as u32 * inv) % p) as u8;
        }
        // eliminate everywhere else
        for row in 0..n {
            if row == rank || r[row * n + col] == 0 {
                continue;
            }
            let factor = r[row * n + col] as u32;
            for j in 0..n {
                let sub = factor * r[rank * n + j] as u32 % p;
                r[row * n + j] = ((r[row * n + j] as u32 + p - sub) % p) as u8;
                let subu = factor * u[rank * n + j] as u32 % p;
                u[row * n + j] = ((u[row * n + j] as u32 + p - subu) % p) as u8;
            }
        }
        rank += 1;
    }
    (
        MatrixGF {
            p: a.p,
            n,
            entries: r,
        },
        rank,
        MatrixGF {
            p: a.p,
            n,
            entries: u,
        },
    )
}

trait SwapRows {
    fn swap(&mut self, a: std::ops::Range<usize>, b_start: usize);
}

impl SwapRows for Vec<u8> {
    fn swap(&mut self, a: std::ops::Range<usize>, b_start: usize) {
        if a.start == b_start {
            return;
        }
        let len = a.len();
        for k in 0..len {
            self.as_mut_slice().swap(a.start + k, b_start + k);
        }
    }
}

pub fn rank(a: &MatrixGF) -> usize {
    rref(a).1
}

/// Two-sided inverse, None when singular.
pub fn inverse(a: &MatrixGF) -> Option<MatrixGF> {
    let (_, rank, u) = rref(a);
    if rank == a.n {
        Some(u)
    } else {
        None
    }
}

/// P·A·P^{-1}. Errors when P is singular.
pub fn conjugate(a: &MatrixGF, p_mat: &MatrixGF) -> Result<MatrixGF> {
    let p_inv = inverse(p_mat).ok_or(RingError::Singular)?;
    Ok(p_mat.matmul(a).matmul(&p_inv))
}

/// True iff P·A·P^{-1} = -A.
pub fn check_similar_to_neg(a: &MatrixGF, p_mat: &MatrixGF) -> Result<bool> {
    Ok(conjugate(a, p_mat)? == a.neg())
}

fn scan_total(p: u8, n: usize, budget: u64) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..n * n {
        total = total
            .checked_mul(p as u64)
            .ok_or(RingError::BudgetExceeded {
                need: u128::MAX,
                budget,
            })?;
    }
    if total > budget {
        return Err(RingError::BudgetExceeded {
            need: total as u128,
            budget,
        });
    }
    Ok(total)
}

fn decode_candidate(p: u8, n: usize, idx: u64) -> Vec<u8> {
    let m = n * n;
    let mut e = vec![0u8; m];
    let mut rest = idx;
    for slot in e.iter_mut().rev() {
        *slot = (rest % p as u64) as u8;
        rest /= p as u64;
    }
    e
}

#[inline]
fn bump_odometer(e: &mut [u8], p: u8) {
    for slot in e.iter_mut().rev() {
        *slot += 1;
        if *slot == p {
            *slot = 0;
        } else {
            return;
        }
    }
}

/// Visit every idempotent with candidate index in [start, end), in order.
fn scan_idempotents_range(
    p: u8,
    n: usize,
    start: u64,
    end: u64,
    visit: &mut dyn FnMut(u64, &[u8]) -> bool,
) {
    let mut odo = decode_candidate(p, n, start);
    let mut idx = start;
    while idx < end {
        if is_idempotent_entries(&odo, n, p) && !visit(idx, &odo) {
            return;
        }
        bump_odometer(&mut odo, p);
        idx += 1;
    }
}

/// Iterator over all idempotent matrices of M(n, GF(p)) in row-major
/// lexicographic order.
pub struct IdempotentIter {
    p: u8,
    n: usize,
    odo: Vec<u8>,
    idx: u64,
    total: u64,
}

impl Iterator for IdempotentIter {
    type Item = MatrixGF;

    fn next(&mut self) -> Option<MatrixGF> {
        while self.idx < self.total {
            let hit = is_idempotent_entries(&self.odo, self.n, self.p);
            let item = if hit {
                Some(MatrixGF {
                    p: self.p,
                    n: self.n,
                    entries: self.odo.clone(),
                })
            } else {
                None
            };
            bump_odometer(&mut self.odo, self.p);
            self.idx += 1;
            if let Some(m) = item {
                return Some(m);
            }
        }
        None
    }
}

/// All E with E^2 = E, yielded in row-major lexicographic order.
pub fn enumerate_idempotents(p: u8, n: usize) -> Result<IdempotentIter> {
    enumerate_idempotents_with_budget(p, n, DEFAULT_SCAN_BUDGET)
}

pub fn enumerate_idempotents_with_budget(p: u8, n: usize, budget: u64) -> Result<IdempotentIter> {
    let total = scan_total(p, n, budget)?;
    Ok(IdempotentIter {
        p,
        n,
        odo: vec![0u8; n * n],
        idx: 0,
        total,
    })
}

/// Idempotents collected with the scan split across `workers` threads;
/// output is identical to the sequential enumeration.
pub fn collect_idempotents(p: u8, n: usize, workers: usize) -> Result<Vec<MatrixGF>> {
    let total = scan_total(p, n, DEFAULT_SCAN_BUDGET)?;
    let workers = workers.max(1).min(64);
    if workers == 1 || total < 1 << 16 {
        return Ok(enumerate_idempotents(p, n)?.collect());
    }
    let chunk = total / workers as u64 + 1;
    let mut results: Vec<Vec<MatrixGF>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let start = (w * chunk).min(total);
                let end = ((w + 1) * chunk).min(total);
                scope.spawn(move || {
                    let mut found = Vec::new();
                    scan_idempotents_range(p, n, start, end, &mut |_, e| {
                        found.push(MatrixGF {
                            p,
                            n,
                            entries: e.to_vec(),
                        });
                        true
                    });
                    found
                })
            })
            .collect();
        for h in handles {
            results.push(h.join().expect("scan worker panicked"));
        }
    });
    Ok(results.into_iter().flatten().collect())
}

/// Search for A = N + E with N nilpotent, E idempotent, scanning idempotents
/// in lexicographic order; first witness or None.
pub fn nil_clean_check(a: &MatrixGF) -> Result<Option<(MatrixGF, MatrixGF)>> {
    nil_clean_check_with_workers(a, 1)
}

pub fn nil_clean_check_with_workers(
    a: &MatrixGF,
    workers: usize,
) -> Result<Option<(MatrixGF, MatrixGF)>> {
    let total = scan_total(a.p, a.n, DEFAULT_SCAN_BUDGET)?;
    let workers = workers.max(1).min(64);
    let find_in = |start: u64, end: u64| -> Option<(MatrixGF, MatrixGF)> {
        let mut hit = None;
        scan_idempotents_range(a.p, a.n, start, end, &mut |_, entries| {
            let e = MatrixGF {
                p: a.p,
                n: a.n,
                entries: entries.to_vec(),
            };
            let nil = a.sub(&e);
            if is_nilpotent_matrix(&nil) {
                hit = Some((nil, e));
                false
            } else {
                true
            }
        });
        hit
    };
    if workers == 1 || total < 1 << 16 {
        return Ok(find_in(0, total));
    }
    let chunk = total / workers as u64 + 1;
    let mut per_chunk: Vec<Option<(MatrixGF, MatrixGF)>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let start = (w * chunk).min(total);
                let end = ((w + 1) * chunk).min(total);
                scope.spawn(move || find_in(start, end))
            })
            .collect();
        for h in handles {
            per_chunk.push(h.join().expect("scan worker panicked"));
        }
    });
    Ok(per_chunk.into_iter().flatten().next())
}

/// A weak decomposition witness A = N + E or A = N - E.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatWncWitness {
    pub sign: Sign,
    pub nilpotent: MatrixGF,
    pub idempotent: MatrixGF,
}

/// Scan idempotents testing both signs (sign + before sign -, E = 0 reported
/// only with sign +); first witness or None.
pub fn weakly_nil_clean_check(a: &MatrixGF) -> Result<Option<MatWncWitness>> {
    let total = scan_total(a.p, a.n, DEFAULT_SCAN_BUDGET)?;
    let mut hit = None;
    scan_idempotents_range(a.p, a.n, 0, total, &mut |_, entries| {
        let e = MatrixGF {
            p: a.p,
            n: a.n,
            entries: entries.to_vec(),
        };
        let plus = a.sub(&e);
        if is_nilpotent_matrix(&plus) {
            hit = Some(MatWncWitness {
                sign: Sign::Plus,
                nilpotent: plus,
                idempotent: e,
            });
            return false;
        }
        if !e.is_zero() {
            let minus = a.add(&e);
            if is_nilpotent_matrix(&minus) {
                hit = Some(MatWncWitness {
                    sign: Sign::Minus,
                    nilpotent: minus,
                    idempotent: e,
                });
                return false;
            }
        }
        true
    });
    Ok(hit)
}

/// Is every matrix of M(n, GF(p)) weakly nil-clean? Restricted to
/// p in {2, 3, 5}. For p = 3, n >= 2 a single witness diag(1,-1,0,...)
/// settles falsity; `full_scan` forces the exhaustive sweep instead.
pub fn matrix_ring_weakly_nil_clean(p: u8, n: usize, full_scan: bool) -> Result<bool> {
    if !matches!(p, 2 | 3 | 5) {
        return Err(RingError::InvalidModulus(p as u64));
    }
    let total = scan_total(p, n, DEFAULT_SCAN_BUDGET)?;
    if p == 3 && n >= 2 && !full_scan {
        let mut vals = vec![0i64; n];
        vals[0] = 1;
        vals[1] = -1;
        let witness = MatrixGF::diag(p, &vals);
        if weakly_nil_clean_check(&witness)?.is_none() {
            return Ok(false);
        }
        // unexpected: fall through to the full scan
    }
    let idems: Vec<MatrixGF> = enumerate_idempotents(p, n)?.collect();
    let mut odo = vec![0u8; n * n];
    for _ in 0..total {
        let a = MatrixGF {
            p,
            n,
            entries: odo.clone(),
        };
        let mut found = false;
        for e in &idems {
            if is_nilpotent_matrix(&a.sub(e)) || is_nilpotent_matrix(&a.add(e)) {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
        bump_odometer(&mut odo, p);
    }
    Ok(true)
}

/// Exhaust all 3^12 nilpotent-candidates N of the blocked shape
///
/// ```text
/// [ x x x x ]
/// [ x x x x ]
/// [ 1 0 x x ]
/// [ 0 1 x x ]
/// ```
///
/// against A = diag(1,-1,0,0) over GF(3); true when no N of this shape is
/// nilpotent with A - N idempotent.
pub fn lemma_nonil_pattern_check() -> bool {
    const P: u8 = 3;
    const N: usize = 4;
    let a = MatrixGF::diag(P, &[1, -1, 0, 0]);
    // free entry slots in row-major order
    let free: [usize; 12] = [0, 1, 2, 3, 4, 5, 6, 7, 10, 11, 14, 15];
    let mut entries = [0u8; 16];
    entries[2 * N] = 1; // (3,1) in 1-based terms
    entries[3 * N + 1] = 1; // (4,2)
    let total = 3u64.pow(12);
    let mut digits = [0u8; 12];
    for _ in 0..total {
        for (slot, &d) in free.iter().zip(&digits) {
            entries[*slot] = d;
        }
        let n_mat = MatrixGF {
            p: P,
            n: N,
            entries: entries.to_vec(),
        };
        let e = a.sub(&n_mat);
        if is_idempotent_matrix(&e) && is_nilpotent_matrix(&n_mat) {
            return false;
        }
        bump_odometer(&mut digits, P);
    }
    true
}

/// Parse `gf(3) [[1,0],[0,2]]` or a bare `[[1,0],[0,2]]`; returns the
/// optional modulus and the rows.
pub fn parse_matrix_text(input: &str) -> Result<(Option<u8>, Vec<Vec<u64>>)> {
    let s = input.trim();
    let (p, rest) = if let Some(stripped) = s.strip_prefix("gf(") {
        let close = stripped
            .find(')')
            .ok_or_else(|| RingError::InvalidExpr("unclosed gf(".into()))?;
        let p: u8 = stripped[..close]
            .trim()
            .parse()
            .map_err(|e| RingError::InvalidExpr(format!("bad modulus: {e}")))?;
        (Some(p), stripped[close + 1..].trim())
    } else {
        (None, s)
    };
    let rest = rest.trim();
    if !rest.starts_with("[[") || !rest.ends_with("]]") {
        return Err(RingError::InvalidExpr(
            "matrix literal must look like [[a,b],[c,d]]".into(),
        ));
    }
    let inner = &rest[2..rest.len() - 2];
    let mut rows = Vec::new();
    for row_text in inner.split("],[") {
        let mut row = Vec::new();
        for cell in row_text.split(',') {
            let v: u64 = cell
                .trim()
                .parse()
                .map_err(|e| RingError::InvalidExpr(format!("bad entry {cell:?}: {e}")))?;
            row.push(v);
        }
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(RingError::InvalidExpr("matrix must be square".into()));
    }
    Ok((p, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_basics() {
        let id = MatrixGF::identity(3, 2);
        let (r, rank, u) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(rank, 2);
        assert_eq!(u, id);

        let a = MatrixGF::new(3, 2, vec![0, 1, 0, 0]);
        assert_eq!(rref(&a).1, 1);

        // det([[1,2],[2,1]]) = 1 - 4 = 0 mod 3
        let b = MatrixGF::new(3, 2, vec![1, 2, 2, 1]);
        let (rb, rank_b, ub) = rref(&b);
        assert_eq!(rank_b, 1);
        assert_eq!(ub.matmul(&b), rb);
        assert!(inverse(&b).is_none());
    }

    #[test]
    fn rref_transform_invertible() {
        // exhaust all 2x2 over GF(3): U·A = R and U invertible
        for idx in 0..81u64 {
            let a = MatrixGF::new(3, 2, decode_candidate(3, 2, idx));
            let (r, _, u) = rref(&a);
            assert_eq!(u.matmul(&a), r);
            assert!(inverse(&u).is_some());
        }
    }

    #[test]
    fn trace_and_nilpotency() {
        let a = MatrixGF::diag(3, &[1, -1]);
        assert_eq!(a.trace(), 0);
        assert!(is_nilpotent_matrix(&MatrixGF::zero(3, 2)));
        assert_eq!(nilpotency_index_matrix(&MatrixGF::zero(3, 2)), Some(1));
        let d = MatrixGF::diag(3, &[1, 1, 0]);
        assert_eq!(d.trace(), 2);
        assert_eq!(rank(&d), 2);
        let strict = MatrixGF::new(3, 2, vec![0, 1, 0, 0]);
        assert_eq!(nilpotency_index_matrix(&strict), Some(2));
        assert_eq!(nilpotency_index_matrix(&a), None);
    }

    #[test]
    fn idempotent_counts_small() {
        let count = |p, n| enumerate_idempotents(p, n).unwrap().count();
        assert_eq!(count(2, 1), 2);
        assert_eq!(count(3, 1), 2);
        // brute-force oracle over all 81 matrices
        let brute = (0..81u64)
            .filter(|&i| {
                let m = MatrixGF::new(3, 2, decode_candidate(3, 2, i));
                m.matmul(&m) == m
            })
            .count();
        assert_eq!(count(3, 2), brute);
        assert_eq!(count(3, 2), 14);
    }

    #[test]
    fn enumeration_is_lexicographic_and_worker_independent() {
        let seq: Vec<MatrixGF> = enumerate_idempotents(2, 3).unwrap().collect();
        let mut sorted = seq.clone();
        sorted.sort_by(|a, b| a.entries.cmp(&b.entries));
        assert_eq!(seq, sorted);
        for w in [2, 3, 7] {
            assert_eq!(collect_idempotents(2, 3, w).unwrap(), seq);
        }
    }

    #[test]
    fn diag_1_neg1_not_weakly_nil_clean_in_m2_z3() {
        let a = MatrixGF::diag(3, &[1, -1]);
        assert!(nil_clean_check(&a).unwrap().is_none());
        assert!(weakly_nil_clean_check(&a).unwrap().is_none());
    }

    #[test]
    fn zero_matrix_trivially_weakly_nil_clean() {
        let z = MatrixGF::zero(3, 2);
        let w = weakly_nil_clean_check(&z).unwrap().unwrap();
        assert_eq!(w.sign, Sign::Plus);
        assert!(w.nilpotent.is_zero());
        assert!(w.idempotent.is_zero());
    }

    #[test]
    fn every_matrix_in_m2_z2_nil_clean() {
        for idx in 0..16u64 {
            let a = MatrixGF::new(2, 2, decode_candidate(2, 2, idx));
            let (n, e) = nil_clean_check(&a).unwrap().unwrap_or_else(|| {
                panic!("no decomposition for {}", a.render());
            });
            assert!(is_nilpotent_matrix(&n));
            assert!(is_idempotent_matrix(&e));
            assert_eq!(n.add(&e), a);
        }
    }

    #[test]
    fn matrix_ring_predicate_small_cases() {
        assert!(matrix_ring_weakly_nil_clean(2, 2, false).unwrap());
        assert!(!matrix_ring_weakly_nil_clean(3, 2, false).unwrap());
        // the fast path and the full scan agree
        assert!(!matrix_ring_weakly_nil_clean(3, 2, true).unwrap());
        assert!(!matrix_ring_weakly_nil_clean(5, 1, false).unwrap());
        assert!(matrix_ring_weakly_nil_clean(2, 1, false).unwrap());
        assert!(matrix_ring_weakly_nil_clean(3, 1, false).unwrap());
        assert!(matches!(
            matrix_ring_weakly_nil_clean(7, 1, false),
            Err(RingError::InvalidModulus(7))
        ));
    }

    #[test]
    fn conjugation_by_antidiagonal_negates_the_paper_block() {
        // V = [[0,1],[1,0]] (+ identity padding) conjugates diag(1,-1,0,..) to
        // its negative.
        for n in [2usize, 3, 4] {
            let mut vals = vec![0i64; n];
            vals[0] = 1;
            vals[1] = -1;
            let a = MatrixGF::diag(3, &vals);
            let mut q = MatrixGF::identity(3, n);
            q.entries[0] = 0;
            q.entries[1] = 1;
            q.entries[n] = 1;
            q.entries[n + 1] = 0;
            assert!(check_similar_to_neg(&a, &q).unwrap());
        }
        // P = I never suffices for a nonzero diagonal
        let a = MatrixGF::diag(3, &[1, 0]);
        let id = MatrixGF::identity(3, 2);
        assert!(!check_similar_to_neg(&a, &id).unwrap());
        assert!(check_similar_to_neg(&MatrixGF::zero(3, 2), &id).unwrap());
    }

    #[test]
    fn conjugation_preserves_invariants() {
        let a = MatrixGF::new(3, 2, vec![1, 2, 0, 1]);
        let p_mat = MatrixGF::new(3, 2, vec![1, 1, 0, 1]);
        let c = conjugate(&a, &p_mat).unwrap();
        assert_eq!(a.trace(), c.trace());
        assert_eq!(rank(&a), rank(&c));
        assert_eq!(is_nilpotent_matrix(&a), is_nilpotent_matrix(&c));
        assert!(matches!(
            conjugate(&a, &MatrixGF::zero(3, 2)),
            Err(RingError::Singular)
        ));
    }

    #[test]
    fn parse_matrix_literals() {
        let (p, rows) = parse_matrix_text("gf(3) [[1,0],[0,2]]").unwrap();
        assert_eq!(p, Some(3));
        assert_eq!(rows, vec![vec![1, 0], vec![0, 2]]);
        let (p, rows) = parse_matrix_text("[[1,0],[0,2]]").unwrap();
        assert_eq!(p, None);
        assert_eq!(rows.len(), 2);
        assert!(parse_matrix_text("[[1,0],[0]]").is_err());
        assert!(parse_matrix_text("nope").is_err());
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            enumerate_idempotents(5, 4),
            Err(RingError::BudgetExceeded { .. })
        ));
    }
}
