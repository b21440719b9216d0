//! Classification of single ring elements and decomposition searches.
//!
//! The weak decomposition search enumerates idempotents in ascending index
//! order and, for each e, tests a - e (sign +) then a + e (sign -) for
//! nilpotency. When e = 0 the two signs coincide, so only the + form is
//! reported.

use crate::error::Result;
use crate::matgf::{self, MatrixGF};
use crate::ring::{Element, FiniteRing};
use crate::Sign;

/// Witness that target = nilpotent + idempotent (sign +) or
/// target = nilpotent - idempotent (sign -).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WncDecomposition {
    pub target: Element,
    pub sign: Sign,
    pub nilpotent: Element,
    pub nilpotency_index: u32,
    pub idempotent: Element,
}

/// Which form the unit-like part takes in a nil-involution decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UForm {
    NilpotentPlusOne,
    NilpotentMinusOne,
}

/// Witness that target = u + v with v^2 = 1 and u a nilpotent shifted by ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NilInvolutionDecomposition {
    pub target: Element,
    pub u: Element,
    pub u_form: UForm,
    pub v: Element,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    First,
    All,
}

// ---- index-level workers ----

pub(crate) fn unit_inverse_idx(ring: &FiniteRing, a: usize) -> Option<usize> {
    if ring.is_tabled() {
        let uc = ring.units_cache().expect("tabled");
        return if uc.is_unit[a] { Some(uc.inverse[a]) } else { None };
    }
    let ops = ring.mat_ops().unwrap();
    let m = structured_matrix_of(ring, a)?;
    matgf::inverse(&m).map(|inv| ops.encode(&inv.entries_u64()))
}

fn structured_matrix_of(ring: &FiniteRing, a: usize) -> Option<MatrixGF> {
    let ops = ring.mat_ops()?;
    if ops.p > u8::MAX as u64 {
        return None;
    }
    let entries: Vec<u8> = ops.decode(a).into_iter().map(|e| e as u8).collect();
    Some(MatrixGF::new(ops.p as u8, ops.k, entries))
}

/// Least k with a^k = 0, None when a is not nilpotent. The index of 0 is 1.
pub(crate) fn nilpotency_index_idx(ring: &FiniteRing, a: usize) -> Option<u32> {
    if ring.is_tabled() {
        let table = ring.nilpotency_table().expect("tabled");
        return match table[a] {
            0 => None,
            k => Some(k),
        };
    }
    if let Some(m) = structured_matrix_of(ring, a) {
        return matgf::nilpotency_index_matrix(&m);
    }
    // generic power iteration with repeat detection
    let zero = ring.zero_idx();
    let mut seen = std::collections::HashSet::new();
    let mut p = a;
    let mut k = 1u32;
    loop {
        if p == zero {
            return Some(k);
        }
        if !seen.insert(p) {
            return None;
        }
        p = ring.mul_idx(p, a);
        k += 1;
    }
}

pub(crate) fn is_idempotent_idx(ring: &FiniteRing, a: usize) -> bool {
    ring.mul_idx(a, a) == a
}

/// Index-level decomposition record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct WncIdx {
    pub sign: Sign,
    pub nilpotent: usize,
    pub nilpotency_index: u32,
    pub idempotent: usize,
}

pub(crate) fn wnc_decompositions_idx(
    ring: &FiniteRing,
    a: usize,
    mode: SearchMode,
) -> Result<Vec<WncIdx>> {
    let idems = ring.idempotent_indices()?;
    let zero = ring.zero_idx();
    let mut out = Vec::new();
    for &e in idems {
        let plus = ring.sub_idx(a, e);
        if let Some(k) = nilpotency_index_idx(ring, plus) {
            out.push(WncIdx {
                sign: Sign::Plus,
                nilpotent: plus,
                nilpotency_index: k,
                idempotent: e,
            });
            if mode == SearchMode::First {
                return Ok(out);
            }
        }
        if e != zero {
            let minus = ring.add_idx(a, e);
            if let Some(k) = nilpotency_index_idx(ring, minus) {
                out.push(WncIdx {
                    sign: Sign::Minus,
                    nilpotent: minus,
                    nilpotency_index: k,
                    idempotent: e,
                });
                if mode == SearchMode::First {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn is_nil_clean_idx(ring: &FiniteRing, a: usize) -> Result<bool> {
    let idems = ring.idempotent_indices()?;
    Ok(idems
        .iter()
        .any(|&e| nilpotency_index_idx(ring, ring.sub_idx(a, e)).is_some()))
}

pub(crate) fn is_weakly_nil_clean_idx(ring: &FiniteRing, a: usize) -> Result<bool> {
    let idems = ring.idempotent_indices()?;
    let zero = ring.zero_idx();
    Ok(idems.iter().any(|&e| {
        nilpotency_index_idx(ring, ring.sub_idx(a, e)).is_some()
            || (e != zero && nilpotency_index_idx(ring, ring.add_idx(a, e)).is_some())
    }))
}

// ---- public element API ----

/// Some(inverse) iff there is b with ab = ba = 1.
pub fn is_unit(ring: &FiniteRing, a: Element) -> Result<Option<Element>> {
    let i = ring.check_member(a)?;
    if ring.is_tabled() {
        ring.units_cache()?;
    }
    Ok(unit_inverse_idx(ring, i).map(|b| ring.element(b).unwrap()))
}

/// Some(k) with k the least exponent killing a, None when a is not
/// nilpotent.
pub fn is_nilpotent(ring: &FiniteRing, a: Element) -> Result<Option<u32>> {
    let i = ring.check_member(a)?;
    Ok(nilpotency_index_idx(ring, i))
}

pub fn is_idempotent(ring: &FiniteRing, a: Element) -> Result<bool> {
    let i = ring.check_member(a)?;
    Ok(is_idempotent_idx(ring, i))
}

pub fn is_involution(ring: &FiniteRing, a: Element) -> Result<bool> {
    let i = ring.check_member(a)?;
    Ok(ring.mul_idx(i, i) == ring.one_idx())
}

/// All (or the first) decompositions a = b ± e with b nilpotent and e
/// idempotent, in canonical order: e ascending, sign + before sign -,
/// e = 0 reported only with sign +.
pub fn wnc_decompositions(
    ring: &FiniteRing,
    a: Element,
    mode: SearchMode,
) -> Result<Vec<WncDecomposition>> {
    let i = ring.check_member(a)?;
    let raw = wnc_decompositions_idx(ring, i, mode)?;
    Ok(raw
        .into_iter()
        .map(|d| WncDecomposition {
            target: a,
            sign: d.sign,
            nilpotent: ring.element(d.nilpotent).unwrap(),
            nilpotency_index: d.nilpotency_index,
            idempotent: ring.element(d.idempotent).unwrap(),
        })
        .collect())
}

pub fn is_nil_clean_element(ring: &FiniteRing, a: Element) -> Result<bool> {
    let i = ring.check_member(a)?;
    is_nil_clean_idx(ring, i)
}

pub fn is_weakly_nil_clean_element(ring: &FiniteRing, a: Element) -> Result<bool> {
    let i = ring.check_member(a)?;
    is_weakly_nil_clean_idx(ring, i)
}

/// Search involutions v ascending; for each, test a - v - 1 then a - v + 1
/// for nilpotency. First hit or None.
pub fn nil_involution_decomposition(
    ring: &FiniteRing,
    a: Element,
) -> Result<Option<NilInvolutionDecomposition>> {
    let i = ring.check_member(a)?;
    Ok(nil_involution_idx(ring, i)?.map(|(u, form, v)| NilInvolutionDecomposition {
        target: a,
        u: ring.element(u).unwrap(),
        u_form: form,
        v: ring.element(v).unwrap(),
    }))
}

pub(crate) fn nil_involution_idx(
    ring: &FiniteRing,
    a: usize,
) -> Result<Option<(usize, UForm, usize)>> {
    let one = ring.one_idx();
    let involutions: Vec<usize> = if ring.is_tabled() {
        ring.involution_indices()?.to_vec()
    } else {
        (0..ring.order())
            .filter(|&v| ring.mul_idx(v, v) == one)
            .collect()
    };
    for v in involutions {
        let u = ring.sub_idx(a, v);
        // u = b + 1 with b nilpotent?
        if nilpotency_index_idx(ring, ring.sub_idx(u, one)).is_some() {
            return Ok(Some((u, UForm::NilpotentPlusOne, v)));
        }
        // u = b - 1 with b nilpotent?
        if nilpotency_index_idx(ring, ring.add_idx(u, one)).is_some() {
            return Ok(Some((u, UForm::NilpotentMinusOne, v)));
        }
    }
    Ok(None)
}

/// Some(n) for the least n > 0 with a^n in R·a^(n+1) and in a^(n+1)·R.
pub fn is_strongly_pi_regular_element(ring: &FiniteRing, a: Element) -> Result<Option<u32>> {
    let i = ring.check_member(a)?;
    Ok(strongly_pi_regular_witness_idx(ring, i))
}

pub(crate) fn strongly_pi_regular_witness_idx(ring: &FiniteRing, a: usize) -> Option<u32> {
    // The least n with a^n in R·a^(n+1) ∩ a^(n+1)·R is the least n whose
    // power recurs among the later powers: if a^n = a^(n+m) then
    // a^n = a^(m-1)·a^(n+1) = a^(n+1)·a^(m-1), and conversely a^n = a^(n+1)s
    // forces a^n = a^(n+k) for the idempotent power a^k of the cycle. So the
    // first repeated value in a, a^2, a^3, ... gives the witness. The unit
    // tests check this against the literal membership scan.
    let mut first_seen: std::collections::HashMap<usize, u32> = std::collections::HashMap::new();
    let mut p = a;
    let mut e = 1u32;
    loop {
        if let Some(&n0) = first_seen.get(&p) {
            return Some(n0);
        }
        first_seen.insert(p, e);
        if e as usize > ring.order() + 1 {
            return None; // unreachable in a finite ring
        }
        p = ring.mul_idx(p, a);
        e += 1;
    }
}
