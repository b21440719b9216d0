//! Ring-level property tests. Every predicate is an honest scan over the
//! element space (guarded by a budget); none of them consults the theory
//! they are later checked against, with one exception: the structured
//! matrix fast path for weak nil-cleanness refutes by a single witness
//! matrix, which is sound because one element without a decomposition
//! already settles the universal claim.

use serde::{Deserialize, Serialize};

use crate::elements;
use crate::error::{Result, RingError};
use crate::matgf;
use crate::ring::FiniteRing;
use crate::structure;

/// Default ceiling for whole-ring element scans.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 10_000_000;

fn ensure_scan_budget(ring: &FiniteRing, budget: u64) -> Result<()> {
    if ring.order() as u128 > budget as u128 {
        return Err(RingError::BudgetExceeded {
            need: ring.order() as u128,
            budget,
        });
    }
    Ok(())
}

/// Every element is a nilpotent plus-or-minus an idempotent.
pub fn is_weakly_nil_clean_ring(ring: &FiniteRing, budget: u64) -> Result<bool> {
    if let Some((p, k)) = ring.structured_matrix() {
        if ring.order() as u128 > budget as u128 {
            // witness-based fast path for the supported primes
            if matches!(p, 2 | 3 | 5) && p <= u8::MAX as u64 {
                return matgf::matrix_ring_weakly_nil_clean(p as u8, k, false);
            }
            return Err(RingError::BudgetExceeded {
                need: ring.order() as u128,
                budget,
            });
        }
    }
    ensure_scan_budget(ring, budget)?;
    for a in 0..ring.order() {
        if !elements::is_weakly_nil_clean_idx(ring, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every element is a nilpotent plus an idempotent.
pub fn is_nil_clean_ring(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    for a in 0..ring.order() {
        if !elements::is_nil_clean_idx(ring, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every element is a unit plus an idempotent.
pub fn is_clean_ring(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    let idems = ring.idempotent_indices()?.to_vec();
    for a in 0..ring.order() {
        let ok = idems
            .iter()
            .any(|&e| elements::unit_inverse_idx(ring, ring.sub_idx(a, e)).is_some());
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Unique weak decomposition: every element decomposes and all of its
/// decompositions share one idempotent part. (Counting raw sign/nilpotent
/// triples would double-count the inessential sign choice whenever
/// 2e = 0 or both a-e and a+e are nilpotent, and would contradict the
/// equivalence with abelian weak nil-cleanness on rings like Z4.)
pub fn is_uniquely_weakly_nil_clean(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    for a in 0..ring.order() {
        let decs = elements::wnc_decompositions_idx(ring, a, elements::SearchMode::All)?;
        let Some(first) = decs.first() else {
            return Ok(false);
        };
        if decs.iter().any(|d| d.idempotent != first.idempotent) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Unique nil-clean decomposition: exactly one idempotent e with a - e
/// nilpotent, for every a.
pub fn is_uniquely_nil_clean(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    let idems = ring.idempotent_indices()?.to_vec();
    for a in 0..ring.order() {
        let count = idems
            .iter()
            .filter(|&&e| elements::nilpotency_index_idx(ring, ring.sub_idx(a, e)).is_some())
            .count();
        if count != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All idempotents central.
pub fn is_abelian(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    let idems = ring.idempotent_indices()?.to_vec();
    let n = ring.order();
    Ok(idems
        .iter()
        .all(|&e| (0..n).all(|r| ring.mul_idx(e, r) == ring.mul_idx(r, e))))
}

pub fn is_boolean(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    Ok((0..ring.order()).all(|a| ring.mul_idx(a, a) == a))
}

/// Only nilpotent is zero.
pub fn is_reduced(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    let zero = ring.zero_idx();
    Ok((0..ring.order())
        .all(|a| a == zero || elements::nilpotency_index_idx(ring, a).is_none()))
}

pub fn is_commutative(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    let n = ring.order();
    Ok((0..n).all(|a| (a + 1..n).all(|b| ring.mul_idx(a, b) == ring.mul_idx(b, a))))
}

/// The non-units form exactly the Jacobson radical. The one-element ring is
/// not local (its quotient by the radical is not a division ring).
pub fn is_local(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    let uc = ring.units_cache()?;
    let j = structure::jacobson_radical(ring)?;
    let non_units: Vec<usize> = (0..ring.order()).filter(|&a| !uc.is_unit[a]).collect();
    Ok(non_units == j.members())
}

/// Every a = u + v with u a nilpotent shifted by ±1 and v^2 = 1.
pub fn has_nil_involution_property(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    for a in 0..ring.order() {
        if elements::nil_involution_idx(ring, a)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every a = u + v with u a unit and v^2 = 1.
pub fn has_involution_property(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    let invs = ring.involution_indices()?.to_vec();
    for a in 0..ring.order() {
        let ok = invs
            .iter()
            .any(|&v| elements::unit_inverse_idx(ring, ring.sub_idx(a, v)).is_some());
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_strongly_pi_regular_ring(ring: &FiniteRing, budget: u64) -> Result<bool> {
    ensure_scan_budget(ring, budget)?;
    Ok((0..ring.order()).all(|a| elements::strongly_pi_regular_witness_idx(ring, a).is_some()))
}

/// Abelian and von Neumann regular: a lies in a^2·R for every a.
pub fn is_strongly_regular(ring: &FiniteRing, budget: u64) -> Result<bool> {
    if !is_abelian(ring, budget)? {
        return Ok(false);
    }
    let n = ring.order();
    Ok((0..n).all(|a| {
        let sq = ring.mul_idx(a, a);
        (0..n).any(|x| ring.mul_idx(sq, x) == a)
    }))
}

/// Is 2·1 in the Jacobson radical?
pub fn two_in_radical(ring: &FiniteRing) -> Result<bool> {
    let j = structure::jacobson_radical(ring)?;
    Ok(j.contains(ring.scalar_idx(2)))
}

/// Is 2·1 a unit?
pub fn two_is_unit(ring: &FiniteRing) -> bool {
    elements::unit_inverse_idx(ring, ring.scalar_idx(2)).is_some()
}

/// Is 6·1 nilpotent?
pub fn six_is_nilpotent(ring: &FiniteRing) -> bool {
    elements::nilpotency_index_idx(ring, ring.scalar_idx(6)).is_some()
}

/// Closed form for the integers mod n: no prime factor other than 2 and 3.
/// n = 1 is the one-element ring and counts as weakly nil-clean.
pub fn zn_weakly_nil_clean_formula(n: u64) -> bool {
    assert!(n >= 1);
    let mut m = n;
    while m % 2 == 0 {
        m /= 2;
    }
    while m % 3 == 0 {
        m /= 3;
    }
    m == 1
}

/// All predicate flags of one classified ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub clean: bool,
    pub nil_clean: bool,
    pub weakly_nil_clean: bool,
    pub uniquely_nil_clean: bool,
    pub uniquely_weakly_nil_clean: bool,
    pub abelian: bool,
    pub boolean: bool,
    pub reduced: bool,
    pub commutative: bool,
    pub local: bool,
    pub nil_involution_property: bool,
    pub involution_property: bool,
    pub strongly_pi_regular: bool,
    pub strongly_regular: bool,
    #[serde(rename = "two_in_J")]
    pub two_in_jacobson: bool,
    pub two_unit: bool,
    pub six_nilpotent: bool,
}

/// Cardinalities of the named element sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub idempotents: usize,
    pub units: usize,
    pub nilpotents: usize,
    pub radical: usize,
    pub center: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub order: usize,
    pub flags: Flags,
    pub counts: Counts,
}

/// Compute every flag and count for one ring.
pub fn classify(ring: &FiniteRing, budget: u64) -> Result<ClassificationReport> {
    ensure_scan_budget(ring, budget)?;
    let uc = ring.units_cache()?;
    let units = uc.is_unit.iter().filter(|&&u| u).count();
    let nilpotents = ring.nilpotency_table()?.iter().filter(|&&k| k != 0).count();
    let idempotents = ring.idempotent_indices()?.len();
    let radical = structure::jacobson_radical(ring)?.len();
    let center = structure::center(ring, budget)?.len();
    let flags = Flags {
        clean: is_clean_ring(ring, budget)?,
        nil_clean: is_nil_clean_ring(ring, budget)?,
        weakly_nil_clean: is_weakly_nil_clean_ring(ring, budget)?,
        uniquely_nil_clean: is_uniquely_nil_clean(ring, budget)?,
        uniquely_weakly_nil_clean: is_uniquely_weakly_nil_clean(ring, budget)?,
        abelian: is_abelian(ring, budget)?,
        boolean: is_boolean(ring, budget)?,
        reduced: is_reduced(ring, budget)?,
        commutative: is_commutative(ring, budget)?,
        local: is_local(ring, budget)?,
        nil_involution_property: has_nil_involution_property(ring, budget)?,
        involution_property: has_involution_property(ring, budget)?,
        strongly_pi_regular: is_strongly_pi_regular_ring(ring, budget)?,
        strongly_regular: is_strongly_regular(ring, budget)?,
        two_in_jacobson: two_in_radical(ring)?,
        two_unit: two_is_unit(ring),
        six_nilpotent: six_is_nilpotent(ring),
    };
    Ok(ClassificationReport {
        ring: ring.source_string(),
        order: ring.order(),
        flags,
        counts: Counts {
            idempotents,
            units,
            nilpotents,
            radical,
            center,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::ring::build;

    const B: u64 = DEFAULT_ELEMENT_BUDGET;

    fn r(text: &str) -> FiniteRing {
        build(parse_expr(text).unwrap()).unwrap()
    }

    #[test]
    fn weakly_nil_clean_zn_instances() {
        assert!(is_weakly_nil_clean_ring(&r("Zn(6)"), B).unwrap());
        assert!(!is_weakly_nil_clean_ring(&r("Zn(5)"), B).unwrap());
        assert!(is_weakly_nil_clean_ring(&r("Zn(1)"), B).unwrap());
        assert!(is_weakly_nil_clean_ring(&r("Zn(12)"), B).unwrap());
        assert!(!is_weakly_nil_clean_ring(&r("Zn(10)"), B).unwrap());
    }

    #[test]
    fn nil_clean_zn_instances() {
        assert!(is_nil_clean_ring(&r("Zn(4)"), B).unwrap());
        assert!(!is_nil_clean_ring(&r("Zn(3)"), B).unwrap());
        assert!(is_nil_clean_ring(&r("Zn(2)"), B).unwrap());
    }

    #[test]
    fn clean_instances() {
        assert!(is_clean_ring(&r("Zn(3)"), B).unwrap());
        assert!(is_clean_ring(&r("Zn(6)"), B).unwrap());
        assert!(is_clean_ring(&r("M(2,Zn(3))"), B).unwrap());
    }

    #[test]
    fn uniquely_weakly_nil_clean_instances() {
        assert!(is_uniquely_weakly_nil_clean(&r("Zn(3)"), B).unwrap());
        assert!(is_uniquely_weakly_nil_clean(&r("Zn(6)"), B).unwrap());
        // abelian nil-clean rings stay unique even though the sign wobbles
        assert!(is_uniquely_weakly_nil_clean(&r("Zn(4)"), B).unwrap());
        assert!(is_uniquely_weakly_nil_clean(&r("Zn(8)"), B).unwrap());
        assert!(!is_uniquely_weakly_nil_clean(&r("M(2,Zn(2))"), B).unwrap());
        assert!(!is_uniquely_weakly_nil_clean(&r("Zn(5)"), B).unwrap());
    }

    #[test]
    fn uniquely_nil_clean_instances() {
        assert!(is_uniquely_nil_clean(&r("Zn(4)"), B).unwrap());
        assert!(!is_uniquely_nil_clean(&r("Zn(3)"), B).unwrap());
        assert!(!is_uniquely_nil_clean(&r("M(2,Zn(2))"), B).unwrap());
    }

    #[test]
    fn abelian_instances() {
        assert!(is_abelian(&r("Zn(12)"), B).unwrap());
        assert!(!is_abelian(&r("M(2,Zn(2))"), B).unwrap());
        assert!(is_abelian(&r("Skew(6)"), B).unwrap());
        assert!(!is_abelian(&r("T(2,Zn(2))"), B).unwrap());
    }

    #[test]
    fn boolean_reduced_commutative_local() {
        assert!(is_boolean(&r("Zn(2)"), B).unwrap());
        assert!(!is_boolean(&r("Zn(4)"), B).unwrap());
        assert!(is_reduced(&r("Zn(6)"), B).unwrap());
        assert!(!is_reduced(&r("Zn(4)"), B).unwrap());
        assert!(is_commutative(&r("Zn(12)"), B).unwrap());
        assert!(!is_commutative(&r("Skew(6)"), B).unwrap());
        assert!(is_local(&r("Zn(4)"), B).unwrap());
        assert!(is_local(&r("Zn(9)"), B).unwrap());
        assert!(!is_local(&r("Zn(6)"), B).unwrap());
        // the skew ring is local exactly when n is a prime power: for n = 6
        // its residue ring mod the radical is Z6, not a division ring, and
        // the non-units 3·1 and 4·1 sum to a unit
        assert!(is_local(&r("Skew(2)"), B).unwrap());
        assert!(is_local(&r("Skew(3)"), B).unwrap());
        assert!(is_local(&r("Skew(4)"), B).unwrap());
        assert!(!is_local(&r("Skew(6)"), B).unwrap());
        assert!(!is_local(&r("Zn(1)"), B).unwrap());
    }

    #[test]
    fn involution_properties() {
        assert!(has_nil_involution_property(&r("Zn(3)"), B).unwrap());
        assert!(!has_nil_involution_property(&r("Zn(4)"), B).unwrap());
        assert!(has_nil_involution_property(&r("Zn(9)"), B).unwrap());
        assert!(has_involution_property(&r("Zn(3)"), B).unwrap());
    }

    #[test]
    fn pi_regular_and_strongly_regular() {
        assert!(is_strongly_pi_regular_ring(&r("Zn(4)"), B).unwrap());
        assert!(is_strongly_regular(&r("Zn(3)"), B).unwrap());
        assert!(is_strongly_regular(&r("Zn(7)"), B).unwrap());
        assert!(!is_strongly_regular(&r("Zn(4)"), B).unwrap());
        assert!(is_strongly_regular(&r("Zn(6)"), B).unwrap());
        assert!(is_strongly_pi_regular_ring(&r("Zn(6)"), B).unwrap());
    }

    #[test]
    fn formula_matches_small_sweep() {
        assert!(zn_weakly_nil_clean_formula(12));
        assert!(!zn_weakly_nil_clean_formula(10));
        assert!(zn_weakly_nil_clean_formula(1));
        for n in 1..=40u64 {
            let computed = is_weakly_nil_clean_ring(&r(&format!("Zn({n})")), B).unwrap();
            assert_eq!(computed, zn_weakly_nil_clean_formula(n), "n = {n}");
        }
    }

    #[test]
    fn classify_z12() {
        let report = classify(&r("Zn(12)"), B).unwrap();
        assert!(report.flags.weakly_nil_clean);
        assert!(!report.flags.nil_clean);
        assert!(report.flags.uniquely_weakly_nil_clean);
        assert!(report.flags.six_nilpotent);
        assert!(!report.flags.two_in_jacobson);
        assert!(!report.flags.two_unit);
        assert_eq!(report.counts.radical, 2);
        assert_eq!(report.counts.center, 12);
        assert_eq!(report.counts.units, 4);
        assert_eq!(report.order, 12);
    }

    #[test]
    fn classify_z2_and_m2_z3() {
        let rep2 = classify(&r("Zn(2)"), B).unwrap();
        assert!(rep2.flags.boolean);
        assert!(rep2.flags.nil_clean);
        let rep_m = classify(&r("M(2,Zn(3))"), B).unwrap();
        assert!(!rep_m.flags.weakly_nil_clean);
        assert!(rep_m.flags.clean);
        assert!(!rep_m.flags.commutative);
        assert_eq!(rep_m.counts.center, 3);
    }

    #[test]
    fn structured_fast_path_and_budget() {
        let m4 = r("M(4,Zn(3))");
        // over budget, but the witness fast path answers anyway
        assert!(!is_weakly_nil_clean_ring(&m4, B).unwrap());
        assert!(matches!(
            classify(&m4, B),
            Err(RingError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            is_nil_clean_ring(&m4, B),
            Err(RingError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn report_json_round_trip() {
        let report = classify(&r("Zn(12)"), B).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("\"two_in_J\""));
        let back: ClassificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn zero_ring_classification() {
        let report = classify(&r("Zn(1)"), B).unwrap();
        assert!(report.flags.weakly_nil_clean);
        assert!(report.flags.nil_clean);
        assert!(report.flags.uniquely_weakly_nil_clean);
        assert!(report.flags.boolean);
        assert!(!report.flags.local);
        assert!(report.flags.two_in_jacobson);
        assert!(report.flags.two_unit);
        assert_eq!(report.counts.units, 1);
    }
}
