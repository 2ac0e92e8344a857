//! Commutator subgroup, niceness classification and the commutator trace idempotent.

use std::sync::Arc;

use serde::Serialize;

use super::group::FiniteGroup;
use super::ring::GroupRingElem;
use crate::arith::rational::qf;

/// The subgroup generated by all commutators `x⁻¹y⁻¹xy`, sorted.
pub fn commutator_subgroup(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let mut comms = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let c = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
            comms.push(c);
        }
    }
    comms.sort_unstable();
    comms.dedup();
    let mut s = g.closure(&comms);
    s.sort_unstable();
    s
}

/// A Sylow `p`-subgroup, grown greedily from the identity.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Vec<usize> {
    let target = {
        let mut n = g.order() as u64;
        let mut t = 1;
        while n.is_multiple_of(p) {
            n /= p;
            t *= p;
        }
        t as usize
    };
    let mut s = vec![0];
    while s.len() < target {
        let grown = (0..g.order())
            .filter(|&a| g.is_p_element(a, p) && !s.contains(&a))
            .map(|a| {
                let mut gens = s.clone();
                gens.push(a);
                g.closure(&gens)
            })
            .find(|c| is_p_power(c.len(), p));
        match grown {
            Some(c) => s = c,
            None => break,
        }
    }
    s.sort_unstable();
    s
}

fn is_p_power(mut n: usize, p: u64) -> bool {
    let p = p as usize;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Outcome of the niceness test together with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub nice: bool,
    pub commutator_order: usize,
    pub commutator: Vec<String>,
    pub sylow: Vec<String>,
    pub sylow_abelian: bool,
    /// The normal `p`-complement, when one exists.
    pub normal_complement: Option<Vec<String>>,
}

/// `ℤ_p[G]` is nice iff `p ∤ |G′|`, equivalently the Sylow `p`-subgroup is abelian and has a
/// normal complement.
pub fn classify_nice(g: &FiniteGroup, p: u64) -> Classification {
    let comm = commutator_subgroup(g);
    let sylow = sylow_subgroup(g, p);
    let sylow_abelian = sylow.iter().all(|&a| sylow.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    let pprime: Vec<usize> = (0..g.order()).filter(|&a| g.is_p_prime_element(a, p)).collect();
    let complement =
        (pprime.len() * sylow.len() == g.order() && g.is_subgroup(&pprime) && g.is_normal(&pprime)).then_some(pprime);
    let labels = |s: &[usize]| s.iter().map(|&a| g.label(a).to_string()).collect::<Vec<_>>();
    Classification {
        nice: !(comm.len() as u64).is_multiple_of(p),
        commutator_order: comm.len(),
        commutator: labels(&comm),
        sylow: labels(&sylow),
        sylow_abelian,
        normal_complement: complement.as_deref().map(labels),
    }
}

/// `|G′|⁻¹ Σ_{g ∈ G′} g`.
pub fn trace_idempotent(g: &Arc<FiniteGroup>) -> GroupRingElem {
    let comm = commutator_subgroup(g);
    GroupRingElem::sum_of(g, &comm).scale(&qf(1, comm.len() as i64))
}

/// `Σ_{g ∈ G′} g`.
pub fn commutator_trace(g: &Arc<FiniteGroup>) -> GroupRingElem {
    GroupRingElem::sum_of(g, &commutator_subgroup(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::group::GroupSpec;

    fn grp(s: GroupSpec) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::new(s).unwrap())
    }

    #[test]
    fn commutators() {
        let d8 = grp(GroupSpec::Dihedral(8));
        let c = commutator_subgroup(&d8);
        assert_eq!(c, vec![0, d8.element("x^2").unwrap()]);
        assert_eq!(commutator_subgroup(&grp(GroupSpec::AbelianProduct(vec![2, 6]))), vec![0]);
        assert_eq!(commutator_subgroup(&grp(GroupSpec::Alternating4)).len(), 4);
        assert_eq!(commutator_subgroup(&grp(GroupSpec::Quaternion8)).len(), 2);
        assert_eq!(commutator_subgroup(&grp(GroupSpec::Metacyclic { p: 7, q: 3, r: 2 })).len(), 7);
    }

    #[test]
    fn classification_examples() {
        assert!(classify_nice(&grp(GroupSpec::Alternating4), 3).nice);
        assert!(!classify_nice(&grp(GroupSpec::Dihedral(8)), 2).nice);
        let m = classify_nice(&grp(GroupSpec::Metacyclic { p: 7, q: 3, r: 2 }), 3);
        assert!(m.nice && m.sylow_abelian && m.normal_complement.is_some());
        for p in [3, 5, 7] {
            let c = classify_nice(&grp(GroupSpec::Dihedral(2 * p)), p);
            assert!(!c.nice && c.normal_complement.is_none());
        }
    }

    #[test]
    fn trace_idempotent_d8() {
        let d8 = grp(GroupSpec::Dihedral(8));
        let e = trace_idempotent(&d8);
        let expect = GroupRingElem::from_terms(&d8, [("1", qf(1, 2)), ("x^2", qf(1, 2))]).unwrap();
        assert_eq!(e, expect);
        assert_eq!(e.mul(&e), e);
        assert!(e.is_central());
        assert_eq!(trace_idempotent(&grp(GroupSpec::Cyclic(6))), GroupRingElem::one(&grp(GroupSpec::Cyclic(6))));
    }
}
