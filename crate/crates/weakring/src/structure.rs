//! Ideals, quotients, the Jacobson radical, centers, idempotent lifting and
//! the 2/3 splitting of rings with nilpotent 6.
//!
//! Everything here works on table-backed rings; structured matrix rings only
//! support the center scan (under budget) and the cached idempotent list.

use crate::elements;
use crate::error::{Result, RingError};
use crate::ring::{Element, FiniteRing, RingSource, Tables};

/// Two-sided ideal of a table-backed ring, as a sorted set of element
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: crate::ring::RingId,
    members: Vec<usize>,
}

impl Ideal {
    pub fn ring_id(&self) -> crate::ring::RingId {
        self.ring
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub(crate) fn from_sorted(ring: &FiniteRing, members: Vec<usize>) -> Ideal {
        Ideal {
            ring: ring.id(),
            members,
        }
    }
}

/// A subring realized as its own table-backed ring together with the
/// embedding back into the parent.
pub struct SubringView {
    parent: crate::ring::RingId,
    members: Vec<usize>,
    realized: FiniteRing,
}

impl SubringView {
    pub fn parent_id(&self) -> crate::ring::RingId {
        self.parent
    }

    /// Parent indices of the members, ascending; position i is the parent
    /// image of realized element i.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn realized(&self) -> &FiniteRing {
        &self.realized
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn require_tabled(ring: &FiniteRing) -> Result<()> {
    if ring.is_tabled() {
        Ok(())
    } else {
        Err(RingError::StructuredUnsupported)
    }
}

/// Least two-sided ideal containing the generators, by worklist closure
/// under negation, multiplication by ring elements on both sides, and sums.
pub fn ideal_generated(ring: &FiniteRing, gens: &[Element]) -> Result<Ideal> {
    require_tabled(ring)?;
    let mut gen_idx = Vec::with_capacity(gens.len());
    for &g in gens {
        gen_idx.push(ring.check_member(g)?);
    }
    Ok(ideal_generated_idx(ring, &gen_idx))
}

pub(crate) fn ideal_generated_idx(ring: &FiniteRing, gens: &[usize]) -> Ideal {
    let n = ring.order();
    let zero = ring.zero_idx();
    let mut member = vec![false; n];
    let mut list: Vec<usize> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    let push = |x: usize, member: &mut Vec<bool>, list: &mut Vec<usize>, queue: &mut Vec<usize>| {
        if !member[x] {
            member[x] = true;
            list.push(x);
            queue.push(x);
        }
    };
    push(zero, &mut member, &mut list, &mut queue);
    for &g in gens {
        push(g, &mut member, &mut list, &mut queue);
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        push(ring.neg_idx(x), &mut member, &mut list, &mut queue);
        for r in 0..n {
            push(ring.mul_idx(r, x), &mut member, &mut list, &mut queue);
            push(ring.mul_idx(x, r), &mut member, &mut list, &mut queue);
        }
        // sums against everything already present; later members cover the
        // pairs this snapshot misses
        let snapshot = list.len();
        for i in 0..snapshot {
            let s = ring.add_idx(x, list[i]);
            push(s, &mut member, &mut list, &mut queue);
        }
    }
    let mut members: Vec<usize> = list;
    members.sort_unstable();
    Ideal::from_sorted(ring, members)
}

/// Is the member set closed the way a two-sided ideal must be?
pub fn verify_ideal(ring: &FiniteRing, ideal: &Ideal) -> Result<bool> {
    require_tabled(ring)?;
    if ideal.ring_id() != ring.id() {
        return Err(RingError::RingMismatch);
    }
    let n = ring.order();
    let mut member = vec![false; n];
    for &x in ideal.members() {
        member[x] = true;
    }
    if !member[ring.zero_idx()] {
        return Ok(false);
    }
    for &x in ideal.members() {
        if !member[ring.neg_idx(x)] {
            return Ok(false);
        }
        for &y in ideal.members() {
            if !member[ring.add_idx(x, y)] {
                return Ok(false);
            }
        }
        for r in 0..n {
            if !member[ring.mul_idx(r, x)] || !member[ring.mul_idx(x, r)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Projection data for a quotient ring: `coset_of[base index] = coset index`,
/// `reps[coset index] = minimal representative`.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub coset_of: Vec<usize>,
    pub reps: Vec<usize>,
}

impl QuotientMap {
    pub fn project(&self, base_idx: usize) -> usize {
        self.coset_of[base_idx]
    }
}

/// The coset ring R/I with the minimal-representative codec; cosets are
/// indexed in order of their minimal representatives.
pub fn quotient(ring: &FiniteRing, ideal: &Ideal) -> Result<(FiniteRing, QuotientMap)> {
    require_tabled(ring)?;
    if ideal.ring_id() != ring.id() {
        return Err(RingError::RingMismatch);
    }
    let n = ring.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(a);
        for &i in ideal.members() {
            coset_of[ring.add_idx(a, i)] = c;
        }
    }
    let m = reps.len();
    debug_assert_eq!(m * ideal.len(), n);
    let mut add_t = vec![0u16; m * m];
    let mut mul_t = vec![0u16; m * m];
    let mut neg_t = vec![0u16; m];
    for c1 in 0..m {
        neg_t[c1] = coset_of[ring.neg_idx(reps[c1])] as u16;
        for c2 in 0..m {
            add_t[c1 * m + c2] = coset_of[ring.add_idx(reps[c1], reps[c2])] as u16;
            mul_t[c1 * m + c2] = coset_of[ring.mul_idx(reps[c1], reps[c2])] as u16;
        }
    }
    let tables = Tables {
        order: m,
        add: add_t,
        mul: mul_t,
        neg: neg_t,
        zero: coset_of[ring.zero_idx()] as u16,
        one: coset_of[ring.one_idx()] as u16,
    };
    let label = format!("{}/I[{}]", ring.source_string(), ideal.len());
    let q = FiniteRing::from_tables(tables, RingSource::Derived(label));
    Ok((q, QuotientMap { coset_of, reps }))
}

/// J(R) = { x : 1 - r·x is a unit for every r }, verified to be a two-sided
/// ideal before returning.
pub fn jacobson_radical(ring: &FiniteRing) -> Result<Ideal> {
    require_tabled(ring)?;
    let uc = ring.units_cache()?;
    let members = ring
        .radical_cache()
        .get_or_init(|| {
            let n = ring.order();
            let one = ring.one_idx();
            (0..n)
                .filter(|&x| {
                    (0..n).all(|r| uc.is_unit[ring.sub_idx(one, ring.mul_idx(r, x))])
                })
                .collect()
        })
        .clone();
    let ideal = Ideal::from_sorted(ring, members);
    debug_assert!(verify_ideal(ring, &ideal).unwrap());
    Ok(ideal)
}

/// Every member nilpotent?
pub fn is_nil_ideal(ring: &FiniteRing, ideal: &Ideal) -> Result<bool> {
    if ideal.ring_id() != ring.id() {
        return Err(RingError::RingMismatch);
    }
    Ok(ideal
        .members()
        .iter()
        .all(|&x| elements::nilpotency_index_idx(ring, x).is_some()))
}

fn position_map(members: &[usize], n: usize) -> Vec<usize> {
    let mut map = vec![usize::MAX; n];
    for (i, &m) in members.iter().enumerate() {
        map[m] = i;
    }
    map
}

/// Realize a multiplicatively and additively closed member set as its own
/// table-backed ring; `one_parent` names the identity inside the set.
fn realize_subring(
    ring: &FiniteRing,
    members: &[usize],
    one_parent: usize,
    label: String,
) -> FiniteRing {
    let n = ring.order();
    let pos = position_map(members, n);
    let m = members.len();
    let mut add_t = vec![0u16; m * m];
    let mut mul_t = vec![0u16; m * m];
    let mut neg_t = vec![0u16; m];
    for (i, &a) in members.iter().enumerate() {
        neg_t[i] = pos[ring.neg_idx(a)] as u16;
        for (j, &b) in members.iter().enumerate() {
            add_t[i * m + j] = pos[ring.add_idx(a, b)] as u16;
            mul_t[i * m + j] = pos[ring.mul_idx(a, b)] as u16;
        }
    }
    let tables = Tables {
        order: m,
        add: add_t,
        mul: mul_t,
        neg: neg_t,
        zero: pos[ring.zero_idx()] as u16,
        one: pos[one_parent] as u16,
    };
    FiniteRing::from_tables(tables, RingSource::Derived(label))
}

/// Z(R) = { x : xr = rx for every r }, realized as a ring of its own.
/// Structured matrix rings are scanned only when the order fits the budget.
pub fn center(ring: &FiniteRing, budget: u64) -> Result<SubringView> {
    let members: Vec<usize> = if ring.is_tabled() {
        let n = ring.order();
        (0..n)
            .filter(|&x| (0..n).all(|r| ring.mul_idx(x, r) == ring.mul_idx(r, x)))
            .collect()
    } else {
        if ring.order() as u128 > budget as u128 {
            return Err(RingError::BudgetExceeded {
                need: ring.order() as u128,
                budget,
            });
        }
        let n = ring.order();
        (0..n)
            .filter(|&x| (0..n).all(|r| ring.mul_idx(x, r) == ring.mul_idx(r, x)))
            .collect()
    };
    let label = format!("Z({})", ring.source_string());
    let realized = realize_subring(ring, &members, ring.one_idx(), label);
    Ok(SubringView {
        parent: ring.id(),
        members,
        realized,
    })
}

/// Idempotents of R, ascending.
pub fn idempotents(ring: &FiniteRing) -> Result<Vec<Element>> {
    Ok(ring
        .idempotent_indices()?
        .iter()
        .map(|&i| ring.element(i).unwrap())
        .collect())
}

/// Central idempotents of R, ascending.
pub fn central_idempotents(ring: &FiniteRing) -> Result<Vec<Element>> {
    Ok(ring
        .central_idempotent_indices()?
        .iter()
        .map(|&i| ring.element(i).unwrap())
        .collect())
}

/// Units of R, ascending.
pub fn units(ring: &FiniteRing) -> Result<Vec<Element>> {
    let uc = ring.units_cache()?;
    Ok((0..ring.order())
        .filter(|&i| uc.is_unit[i])
        .map(|i| ring.element(i).unwrap())
        .collect())
}

/// Nilpotents of R, ascending.
pub fn nilpotents(ring: &FiniteRing) -> Result<Vec<Element>> {
    let t = ring.nilpotency_table()?;
    Ok((0..ring.order())
        .filter(|&i| t[i] != 0)
        .map(|i| ring.element(i).unwrap())
        .collect())
}

/// Lift e to an honest idempotent f with f - e in the nil ideal I, by the
/// iteration e <- 3e^2 - 2e^3 with a scan of e + I as fallback.
pub fn lift_idempotent(ring: &FiniteRing, ideal: &Ideal, e: Element) -> Result<Element> {
    require_tabled(ring)?;
    let e_idx = ring.check_member(e)?;
    if ideal.ring_id() != ring.id() {
        return Err(RingError::RingMismatch);
    }
    if !is_nil_ideal(ring, ideal)? {
        return Err(RingError::PreconditionViolated("ideal is not nil".into()));
    }
    let defect = ring.sub_idx(ring.mul_idx(e_idx, e_idx), e_idx);
    if !ideal.contains(defect) {
        return Err(RingError::PreconditionViolated(
            "e^2 - e does not lie in the ideal".into(),
        ));
    }
    let mut x = e_idx;
    for _ in 0..ring.order() {
        if ring.mul_idx(x, x) == x {
            let diff = ring.sub_idx(x, e_idx);
            if ideal.contains(diff) {
                return Ok(ring.element(x).unwrap());
            }
            break;
        }
        let x2 = ring.mul_idx(x, x);
        let x3 = ring.mul_idx(x2, x);
        let three_x2 = ring.add_idx(x2, ring.add_idx(x2, x2));
        let two_x3 = ring.add_idx(x3, x3);
        x = ring.sub_idx(three_x2, two_x3);
    }
    // fallback: scan the coset e + I for an idempotent
    for &i in ideal.members() {
        let f = ring.add_idx(e_idx, i);
        if ring.mul_idx(f, f) == f {
            return Ok(ring.element(f).unwrap());
        }
    }
    Err(RingError::PreconditionViolated(
        "no idempotent lift found in e + I".into(),
    ))
}

/// Result of splitting off the 2-part and 3-part when 6 is nilpotent:
/// R is isomorphic to (R / 2^n R) x (R / 3^n R).
pub struct CrtSplit {
    /// Least n with (6·1)^n = 0.
    pub nil_exponent: u32,
    pub r1: FiniteRing,
    pub r2: FiniteRing,
    /// map[r] = (image in r1, image in r2)
    pub map: Vec<(usize, usize)>,
}

pub fn crt_split_2_3(ring: &FiniteRing) -> Result<CrtSplit> {
    require_tabled(ring)?;
    let six = ring.scalar_idx(6);
    let n = elements::nilpotency_index_idx(ring, six).ok_or(RingError::SixNotNilpotent)?;
    let g2 = ring.pow_idx(ring.scalar_idx(2), n as u64);
    let g3 = ring.pow_idx(ring.scalar_idx(3), n as u64);
    let i2 = ideal_generated_idx(ring, &[g2]);
    let i3 = ideal_generated_idx(ring, &[g3]);
    // comaximality: some a + b with a in 2^n R, b in 3^n R equals 1
    let one = ring.one_idx();
    let comaximal = i2
        .members()
        .iter()
        .any(|&a| i3.members().iter().any(|&b| ring.add_idx(a, b) == one));
    if !comaximal {
        return Err(RingError::PreconditionViolated(
            "2^n R + 3^n R is not the whole ring".into(),
        ));
    }
    let disjoint = i2.members().iter().all(|&a| !i3.contains(a) || a == ring.zero_idx());
    if !disjoint {
        return Err(RingError::PreconditionViolated(
            "2^n R and 3^n R intersect beyond zero".into(),
        ));
    }
    let (r1, p1) = quotient(ring, &i2)?;
    let (r2, p2) = quotient(ring, &i3)?;
    let r1 = r1.relabel(format!("{}/2^{}R", ring.source_string(), n));
    let r2 = r2.relabel(format!("{}/3^{}R", ring.source_string(), n));
    let map: Vec<(usize, usize)> = (0..ring.order())
        .map(|r| (p1.project(r), p2.project(r)))
        .collect();
    // the pair map must be a bijective unital homomorphism
    if r1.order() * r2.order() != ring.order() {
        return Err(RingError::PreconditionViolated(
            "component orders do not multiply back".into(),
        ));
    }
    let mut seen = vec![false; ring.order()];
    for &(a, b) in &map {
        let flat = a * r2.order() + b;
        if seen[flat] {
            return Err(RingError::PreconditionViolated(
                "splitting map is not injective".into(),
            ));
        }
        seen[flat] = true;
    }
    if map[ring.one_idx()] != (r1.one_idx(), r2.one_idx()) {
        return Err(RingError::PreconditionViolated(
            "splitting map does not preserve 1".into(),
        ));
    }
    verify_pair_map_hom(ring, &r1, &r2, &map)?;
    Ok(CrtSplit {
        nil_exponent: n,
        r1,
        r2,
        map,
    })
}

/// Check additivity and multiplicativity of r -> (f(r), g(r)); exhaustive for
/// small rings, deterministically sampled above 4096 elements.
fn verify_pair_map_hom(
    ring: &FiniteRing,
    r1: &FiniteRing,
    r2: &FiniteRing,
    map: &[(usize, usize)],
) -> Result<()> {
    let n = ring.order();
    let check = |a: usize, b: usize| -> bool {
        let (sa, sb) = (map[a], map[b]);
        let sum = map[ring.add_idx(a, b)];
        let prod = map[ring.mul_idx(a, b)];
        sum == (r1.add_idx(sa.0, sb.0), r2.add_idx(sa.1, sb.1))
            && prod == (r1.mul_idx(sa.0, sb.0), r2.mul_idx(sa.1, sb.1))
    };
    let ok = if n <= 4096 {
        (0..n).all(|a| (0..n).all(|b| check(a, b)))
    } else {
        let mut state = 0x243f6a8885a308d3u64;
        (0..100_000).all(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (state >> 33) as usize % n;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = (state >> 33) as usize % n;
            check(a, b)
        })
    };
    if ok {
        Ok(())
    } else {
        Err(RingError::PreconditionViolated(
            "splitting map is not a homomorphism".into(),
        ))
    }
}

/// R split along a central idempotent: R is isomorphic to eR x (1-e)R, the
/// corners realized as rings with identities e and 1-e.
pub struct PeirceSplit {
    pub left: FiniteRing,
    pub right: FiniteRing,
    /// map[r] = (index of e·r in left, index of (1-e)·r in right)
    pub map: Vec<(usize, usize)>,
}

pub fn peirce_split(ring: &FiniteRing, e: Element) -> Result<PeirceSplit> {
    require_tabled(ring)?;
    let e_idx = ring.check_member(e)?;
    if ring.mul_idx(e_idx, e_idx) != e_idx {
        return Err(RingError::NotCentralIdempotent);
    }
    if !(0..ring.order()).all(|r| ring.mul_idx(e_idx, r) == ring.mul_idx(r, e_idx)) {
        return Err(RingError::NotCentralIdempotent);
    }
    let f_idx = ring.sub_idx(ring.one_idx(), e_idx);
    let corner = |g: usize, tag: &str| -> (FiniteRing, Vec<usize>) {
        let mut members: Vec<usize> = (0..ring.order()).map(|r| ring.mul_idx(g, r)).collect();
        members.sort_unstable();
        members.dedup();
        let label = format!("{tag}({})", ring.source_string());
        let realized = realize_subring(ring, &members, g, label);
        (realized, members)
    };
    let (left, left_members) = corner(e_idx, "e·");
    let (right, right_members) = corner(f_idx, "(1-e)·");
    let left_pos = position_map(&left_members, ring.order());
    let right_pos = position_map(&right_members, ring.order());
    let map: Vec<(usize, usize)> = (0..ring.order())
        .map(|r| {
            (
                left_pos[ring.mul_idx(e_idx, r)],
                right_pos[ring.mul_idx(f_idx, r)],
            )
        })
        .collect();
    if left.order() * right.order() != ring.order() {
        return Err(RingError::PreconditionViolated(
            "corner orders do not multiply back".into(),
        ));
    }
    verify_pair_map_hom(ring, &left, &right, &map)?;
    Ok(PeirceSplit { left, right, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::ring::build;

    fn r(text: &str) -> FiniteRing {
        build(parse_expr(text).unwrap()).unwrap()
    }

    fn els(ring: &FiniteRing, ids: &[usize]) -> Vec<Element> {
        ids.iter().map(|&i| ring.element(i).unwrap()).collect()
    }

    #[test]
    fn principal_ideals_of_z12() {
        let z12 = r("Zn(12)");
        let i4 = ideal_generated(&z12, &els(&z12, &[4])).unwrap();
        assert_eq!(i4.members(), &[0, 4, 8]);
        let i9 = ideal_generated(&z12, &els(&z12, &[9])).unwrap();
        assert_eq!(i9.members(), &[0, 3, 6, 9]);
        let zero = ideal_generated(&z12, &els(&z12, &[0])).unwrap();
        assert_eq!(zero.members(), &[0]);
        assert!(verify_ideal(&z12, &i4).unwrap());
    }

    #[test]
    fn ideal_closure_in_noncommutative_ring() {
        let m2 = r("M(2,Zn(2))");
        // e11 generates the whole ring as a two-sided ideal
        let e11 = m2.encode_parts(&[1, 0, 0, 0]).unwrap();
        let ideal = ideal_generated(&m2, &els(&m2, &[e11])).unwrap();
        assert_eq!(ideal.len(), 16);
    }

    #[test]
    fn quotient_of_z12() {
        let z12 = r("Zn(12)");
        let i4 = ideal_generated(&z12, &els(&z12, &[4])).unwrap();
        let (q, proj) = quotient(&z12, &i4).unwrap();
        assert_eq!(q.order(), 4);
        // explicit map x + I -> x mod 4 is an isomorphism onto Z4
        let z4 = r("Zn(4)");
        for a in 0..12 {
            assert_eq!(proj.project(a), a % 4);
        }
        for a in 0..4usize {
            for b in 0..4usize {
                assert_eq!(q.add_idx(a, b), z4.add_idx(a, b));
                assert_eq!(q.mul_idx(a, b), z4.mul_idx(a, b));
            }
        }
        // projection is a surjective homomorphism
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(
                    proj.project(z12.add_idx(a, b)),
                    q.add_idx(proj.project(a), proj.project(b))
                );
                assert_eq!(
                    proj.project(z12.mul_idx(a, b)),
                    q.mul_idx(proj.project(a), proj.project(b))
                );
            }
        }
        let i9 = ideal_generated(&z12, &els(&z12, &[9])).unwrap();
        assert_eq!(quotient(&z12, &i9).unwrap().0.order(), 3);
        let zero_ideal = ideal_generated(&z12, &els(&z12, &[0])).unwrap();
        assert_eq!(quotient(&z12, &zero_ideal).unwrap().0.order(), 12);
    }

    #[test]
    fn radical_of_z12_and_fields() {
        let z12 = r("Zn(12)");
        let j = jacobson_radical(&z12).unwrap();
        assert_eq!(j.members(), &[0, 6]);
        assert!(is_nil_ideal(&z12, &j).unwrap());
        // cross-check: 6·Z12
        let six_ideal = ideal_generated(&z12, &els(&z12, &[6])).unwrap();
        assert_eq!(j.members(), six_ideal.members());

        let z3 = r("Zn(3)");
        assert_eq!(jacobson_radical(&z3).unwrap().members(), &[0]);
    }

    #[test]
    fn non_nil_ideal_detected() {
        let z6 = r("Zn(6)");
        let i3 = ideal_generated(&z6, &els(&z6, &[3])).unwrap();
        assert_eq!(i3.members(), &[0, 3]);
        assert!(!is_nil_ideal(&z6, &i3).unwrap()); // 3 is a nonzero idempotent
    }

    #[test]
    fn quotient_semiprimitive_after_radical() {
        for text in ["Zn(12)", "Zn(8)", "T(2,Zn(2))", "TrivExt(Zn(4))"] {
            let ring = r(text);
            let j = jacobson_radical(&ring).unwrap();
            let (q, _) = quotient(&ring, &j).unwrap();
            let jq = jacobson_radical(&q).unwrap();
            assert_eq!(jq.len(), 1, "{text}: J(R/J) must vanish");
        }
    }

    #[test]
    fn center_of_matrix_ring_is_scalars() {
        let m2 = r("M(2,Zn(2))");
        let z = center(&m2, 10_000_000).unwrap();
        assert_eq!(z.len(), 2);
        let zr = z.realized();
        assert!(crate::ring::verify_axioms(zr).unwrap().all_pass());
        // commutative ring: the center is everything
        let z12 = r("Zn(12)");
        assert_eq!(center(&z12, 10_000_000).unwrap().len(), 12);
    }

    #[test]
    fn center_of_skew_ring_is_proper() {
        let s = r("Skew(6)");
        let z = center(&s, 10_000_000).unwrap();
        assert!(z.len() < s.order());
        assert!(z.len() >= 2);
        // contains 0, 1 and all k·1
        assert!(z.members().contains(&s.zero_idx()));
        assert!(z.members().contains(&s.one_idx()));
        for k in 2..6 {
            assert!(z.members().contains(&s.scalar_idx(k)));
        }
        // realized center is commutative
        let zr = z.realized();
        let n = zr.order();
        assert!((0..n).all(|a| (0..n).all(|b| zr.mul_idx(a, b) == zr.mul_idx(b, a))));
    }

    #[test]
    fn element_sets_of_small_rings() {
        let z6 = r("Zn(6)");
        let idem: Vec<usize> = idempotents(&z6).unwrap().iter().map(|e| e.index()).collect();
        assert_eq!(idem, vec![0, 1, 3, 4]);
        let z12 = r("Zn(12)");
        let us: Vec<usize> = units(&z12).unwrap().iter().map(|e| e.index()).collect();
        assert_eq!(us, vec![1, 5, 7, 11]);
        let nils: Vec<usize> = nilpotents(&z12).unwrap().iter().map(|e| e.index()).collect();
        assert_eq!(nils, vec![0, 6]);
        // every idempotent of a commutative ring is central
        let cis: Vec<usize> = central_idempotents(&z6)
            .unwrap()
            .iter()
            .map(|e| e.index())
            .collect();
        assert_eq!(cis, idem);
    }

    #[test]
    fn idempotent_lift_in_z8() {
        let z8 = r("Zn(8)");
        let ideal = ideal_generated(&z8, &els(&z8, &[2])).unwrap();
        assert_eq!(ideal.members(), &[0, 2, 4, 6]);
        assert!(is_nil_ideal(&z8, &ideal).unwrap());
        let f = lift_idempotent(&z8, &ideal, z8.element(3).unwrap()).unwrap();
        assert_eq!(f.index(), 1);
        // f - e = -2 = 6 lies in the ideal
        assert!(ideal.contains(z8.sub_idx(f.index(), 3)));
    }

    #[test]
    fn idempotent_lift_identity_when_already_idempotent() {
        let z12 = r("Zn(12)");
        let j = jacobson_radical(&z12).unwrap();
        let e = z12.element(9).unwrap();
        // 9^2 - 9 = 72 = 0 mod 12, and 9 is already idempotent
        let f = lift_idempotent(&z12, &j, e).unwrap();
        assert_eq!(f.index(), 9);
    }

    #[test]
    fn lift_rejects_bad_preconditions() {
        let z6 = r("Zn(6)");
        let i3 = ideal_generated(&z6, &els(&z6, &[3])).unwrap();
        // not a nil ideal
        assert!(matches!(
            lift_idempotent(&z6, &i3, z6.element(3).unwrap()),
            Err(RingError::PreconditionViolated(_))
        ));
        let z8 = r("Zn(8)");
        let nil = ideal_generated(&z8, &els(&z8, &[2])).unwrap();
        // 1^2 - 1 = 0 is in I, fine; 3 is covered elsewhere; 5^2-5 = 20 = 4 in I
        assert!(lift_idempotent(&z8, &nil, z8.element(5).unwrap()).is_ok());
    }

    #[test]
    fn crt_split_of_z12() {
        let z12 = r("Zn(12)");
        let split = crt_split_2_3(&z12).unwrap();
        assert_eq!(split.nil_exponent, 2); // 6^2 = 0 mod 12
        assert_eq!(split.r1.order(), 4);
        assert_eq!(split.r2.order(), 3);
    }

    #[test]
    fn crt_split_with_trivial_three_part() {
        let z4 = r("Zn(4)");
        let split = crt_split_2_3(&z4).unwrap();
        assert_eq!(split.r1.order(), 4);
        assert_eq!(split.r2.order(), 1);
    }

    #[test]
    fn crt_split_rejects_unit_six() {
        let z5 = r("Zn(5)");
        assert!(matches!(
            crt_split_2_3(&z5),
            Err(RingError::SixNotNilpotent)
        ));
    }

    #[test]
    fn peirce_split_of_z6_at_3() {
        let z6 = r("Zn(6)");
        let split = peirce_split(&z6, z6.element(3).unwrap()).unwrap();
        assert_eq!(split.left.order(), 2); // {0, 3}
        assert_eq!(split.right.order(), 3); // {0, 2, 4}
        let z12 = r("Zn(12)");
        let split = peirce_split(&z12, z12.element(4).unwrap()).unwrap();
        assert_eq!(split.left.order(), 3);
        assert_eq!(split.right.order(), 4);
    }

    #[test]
    fn peirce_split_at_one_is_trivial() {
        let z6 = r("Zn(6)");
        let split = peirce_split(&z6, z6.one()).unwrap();
        assert_eq!(split.left.order(), 6);
        assert_eq!(split.right.order(), 1);
    }

    #[test]
    fn peirce_rejects_non_central_idempotent() {
        let m2 = r("M(2,Zn(2))");
        let e11 = m2.element(m2.encode_parts(&[1, 0, 0, 0]).unwrap()).unwrap();
        assert!(matches!(
            peirce_split(&m2, e11),
            Err(RingError::NotCentralIdempotent)
        ));
        let z6 = r("Zn(6)");
        assert!(matches!(
            peirce_split(&z6, z6.element(2).unwrap()),
            Err(RingError::NotCentralIdempotent)
        ));
    }

    #[test]
    fn skew6_radical_structure() {
        let s = r("Skew(6)");
        let j = jacobson_radical(&s).unwrap();
        // J(S) = J(R) + Rx has |J(R)|·|R| = 6·36 elements
        assert_eq!(j.len(), 216);
        assert!(is_nil_ideal(&s, &j).unwrap());
        // R·x sits inside J: elements (0, s) for every s in R
        for s_part in 0..36 {
            assert!(j.contains(s_part));
        }
        // J^3 = 0: all triple products of members vanish
        let zero = s.zero_idx();
        let pairs: Vec<usize> = j
            .members()
            .iter()
            .flat_map(|&a| j.members().iter().map(move |&b| (a, b)))
            .map(|(a, b)| s.mul_idx(a, b))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        for &ab in &pairs {
            for &c in j.members() {
                assert_eq!(s.mul_idx(ab, c), zero);
            }
        }
        // S/J is the ring of integers mod 6: order 6 and k -> k·1 bijective
        let (q, _) = quotient(&s, &j).unwrap();
        assert_eq!(q.order(), 6);
        let images: std::collections::BTreeSet<usize> =
            (0..6).map(|k| q.scalar_idx(k)).collect();
        assert_eq!(images.len(), 6);
    }
}
