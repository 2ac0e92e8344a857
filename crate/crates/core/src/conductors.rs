//! Central conductors, character-value ideals, lower bounds for `H(Λ)` and their indices.

use serde::Serialize;

use crate::arith::lattice::{lattice_index, IntLattice};
use crate::arith::rational::{qf, Rational};
use crate::arith::valuation::Val;
use crate::error::{Error, Result};
use crate::group_algebra::{classify_nice, commutator_subgroup, commutator_trace, GroupRingElem};
use crate::invariants::{default_witnesses, witness_i_saturation, SaturationCertificate};
use crate::wedderburn::{CentralIdeal, WedderburnData};

/// `v_π(𝔄_i)` with `𝔄_i` generated by the values of `χ_i`.
pub fn char_value_ideal(data: &WedderburnData, i: usize) -> Result<i64> {
    let comp = data.components.get(i).ok_or_else(|| Error::Invalid(format!("component {i} out of range")))?;
    let v = comp.character.iter().map(|x| comp.valuation(x)).min().expect("groups are nonempty");
    v.finite().ok_or_else(|| Error::Invalid("character vanishes identically".into()))
}

fn degree_term(data: &WedderburnData, i: usize) -> i64 {
    let comp = &data.components[i];
    let x = qf(data.group.order() as i64, comp.degree as i64);
    comp.field.rational_valuation(&x).finite().expect("|G|/χ(1) is nonzero")
}

/// `F(Λ′, Λ) = ⊕ (|G|/χ_i(1)) 𝔇_i⁻¹`.
pub fn central_conductor_maximal(data: &WedderburnData) -> CentralIdeal {
    let valuations =
        (0..data.len()).map(|i| Val::Fin(degree_term(data, i) - data.components[i].field.different)).collect();
    CentralIdeal { valuations }
}

/// `F(ζ(Λ′), ζ(Λ)) = ⊕ (|G|/χ_i(1)) 𝔄_i⁻¹ 𝔇_i⁻¹`.
pub fn central_conductor_centres(data: &WedderburnData) -> Result<CentralIdeal> {
    let valuations = (0..data.len())
        .map(|i| Ok(Val::Fin(degree_term(data, i) - char_value_ideal(data, i)? - data.components[i].field.different)))
        .collect::<Result<_>>()?;
    Ok(CentralIdeal { valuations })
}

/// `x·Tr_{G′}` over a transversal of `G/G′`: a basis of `Z_(p)[G]·Tr_{G′}`.
fn trace_part_rows(data: &WedderburnData) -> Vec<Vec<Rational>> {
    let g = &data.group;
    let tr = commutator_trace(g);
    g.transversal(&commutator_subgroup(g)).into_iter().map(|x| tr.left_mul_elem(x).coeffs().to_vec()).collect()
}

/// Values on nonlinear components only, `None` elsewhere.
fn nonlinear(data: &WedderburnData, ideal: &CentralIdeal) -> Vec<Option<i64>> {
    data.components.iter().zip(&ideal.valuations).map(|(c, v)| if c.degree > 1 { v.finite() } else { None }).collect()
}

/// `F(Λ′(G,G′), Λ) = Z_(p)[G]·Tr_{G′} ⊕ F(Λ′,Λ)(1-e)`.
pub fn hybrid_conductor(data: &WedderburnData) -> IntLattice {
    let mut rows = trace_part_rows(data);
    rows.extend(data.central_lattice_rows(&nonlinear(data, &central_conductor_maximal(data))));
    IntLattice::new(data.group.order(), rows).expect("central rows have group-ring dimension")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundFlag {
    Exact,
    LowerBound,
}

/// Why the bound is exact, if it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundReason {
    /// `Λ` is nice, so `H(Λ) = ζ(Λ)`.
    Nice,
    /// `I(Λ) = ζ(Λ′)` was certified, so `H(Λ) = F(ζ(Λ′), ζ(Λ))`.
    Saturated(SaturationCertificate),
    /// The trace part plus `F(ζ(Λ′), ζ(Λ))` on the nonlinear components.
    Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HBound {
    pub lattice: IntLattice,
    pub flag: BoundFlag,
    pub reason: BoundReason,
}

/// A sublattice of `H(Λ)`, flagged exact when it provably equals `H(Λ)`.
pub fn h_lambda_lower_bound(data: &WedderburnData) -> Result<HBound> {
    let g = &data.group;
    let n = g.order();
    if classify_nice(g, data.p).nice {
        let rows = g.conjugacy_classes().iter().map(|c| GroupRingElem::sum_of(g, c).coeffs().to_vec()).collect();
        return Ok(HBound { lattice: IntLattice::new(n, rows)?, flag: BoundFlag::Exact, reason: BoundReason::Nice });
    }
    let centres = central_conductor_centres(data)?;
    for witnesses in default_witnesses(data) {
        match witness_i_saturation(data, &witnesses) {
            Ok(cert) => {
                return Ok(HBound {
                    lattice: centres.lattice(data),
                    flag: BoundFlag::Exact,
                    reason: BoundReason::Saturated(cert),
                })
            }
            Err(Error::InsufficientWitnesses(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let mut rows = trace_part_rows(data);
    rows.extend(data.central_lattice_rows(&nonlinear(data, &centres)));
    Ok(HBound { lattice: IntLattice::new(n, rows)?, flag: BoundFlag::LowerBound, reason: BoundReason::Formula })
}

/// `[larger : smaller] = p^exponent`, or the reason it is undefined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexEntry {
    pub larger: String,
    pub smaller: String,
    pub exponent: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorReport {
    pub maximal: CentralIdeal,
    pub centres: CentralIdeal,
    pub char_values: Vec<i64>,
    pub hybrid: IntLattice,
    pub h_bound: HBound,
    pub indices: Vec<IndexEntry>,
}

impl ConductorReport {
    pub fn index(&self, larger: &str, smaller: &str) -> Option<u32> {
        self.indices.iter().find(|e| e.larger == larger && e.smaller == smaller).and_then(|e| e.exponent)
    }
}

/// All conductors of `Z_(p)[G]` and the `p`-power indices between every ordered pair.
pub fn conductor_index_report(data: &WedderburnData) -> Result<ConductorReport> {
    let maximal = central_conductor_maximal(data);
    let centres = central_conductor_centres(data)?;
    let char_values = (0..data.len()).map(|i| char_value_ideal(data, i)).collect::<Result<_>>()?;
    let hybrid = hybrid_conductor(data);
    let h_bound = h_lambda_lower_bound(data)?;
    let named = [
        ("maximal", maximal.lattice(data)),
        ("hybrid", hybrid.clone()),
        ("h_bound", h_bound.lattice.clone()),
        ("centres", centres.lattice(data)),
    ];
    let mut indices = Vec::new();
    for (ln, l) in &named {
        for (sn, s) in &named {
            if ln == sn {
                continue;
            }
            let (exponent, note) = match lattice_index(l, s, data.p) {
                Ok(i) => (Some(i.exponent), None),
                Err(Error::NotContained) => (None, Some("not contained".to_string())),
                Err(e) => (None, Some(e.to_string())),
            };
            indices.push(IndexEntry { larger: ln.to_string(), smaller: sn.to_string(), exponent, note });
        }
    }
    Ok(ConductorReport { maximal, centres, char_values, hybrid, h_bound, indices })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::rational::q;
    use crate::group_algebra::{FiniteGroup, GroupSpec};
    use crate::wedderburn::wedderburn_data;

    fn data(spec: GroupSpec, p: u64) -> Arc<WedderburnData> {
        wedderburn_data(&Arc::new(FiniteGroup::new(spec).unwrap()), p).unwrap()
    }

    fn vals(v: &[i64]) -> Vec<Val> {
        v.iter().map(|&x| Val::Fin(x)).collect()
    }

    #[test]
    fn d8_conductors() {
        let d = data(GroupSpec::Dihedral(8), 2);
        assert_eq!(central_conductor_maximal(&d).valuations, vals(&[3, 3, 3, 3, 2]));
        assert_eq!(central_conductor_centres(&d).unwrap().valuations, vals(&[3, 3, 3, 3, 1]));
        assert_eq!(char_value_ideal(&d, 4).unwrap(), 1);
        let r = conductor_index_report(&d).unwrap();
        assert_eq!(r.h_bound.flag, BoundFlag::LowerBound);
        assert_eq!(r.index("hybrid", "maximal"), Some(4));
        assert_eq!(r.index("h_bound", "maximal"), Some(5));
        assert_eq!(r.index("centres", "maximal"), Some(1));
    }

    #[test]
    fn d8_hybrid_basis() {
        let d = data(GroupSpec::Dihedral(8), 2);
        let g = &d.group;
        let e5 = &crate::wedderburn::central_idempotents(&d)[4];
        let expected: Vec<Vec<Rational>> = [
            vec![("1", 1), ("x^2", 1)],
            vec![("x", 1), ("x^3", 1)],
            vec![("y", 1), ("x^2y", 1)],
            vec![("xy", 1), ("x^3y", 1)],
        ]
        .iter()
        .map(|t| GroupRingElem::from_terms(g, t.iter().map(|(l, c)| (*l, q(*c)))).unwrap().coeffs().to_vec())
        .chain(std::iter::once(e5.scale(&q(4)).coeffs().to_vec()))
        .collect();
        assert!(hybrid_conductor(&d).same_as(&IntLattice::new(8, expected).unwrap(), 2));
    }

    #[test]
    fn dihedral_two_power_indices() {
        for a in [3u32, 4] {
            let d = data(GroupSpec::Dihedral(2u64.pow(a)), 2);
            let r = conductor_index_report(&d).unwrap();
            assert_eq!(r.index("centres", "maximal"), Some(a - 2));
        }
    }

    #[test]
    fn odd_dihedral_bound_is_exact() {
        for p in [3u64, 5, 7] {
            let d = data(GroupSpec::Dihedral(2 * p), p);
            let h = h_lambda_lower_bound(&d).unwrap();
            assert_eq!(h.flag, BoundFlag::Exact);
            assert!(matches!(h.reason, BoundReason::Saturated(_)));
            assert!(h.lattice.same_as(&central_conductor_maximal(&d).lattice(&d), p));
        }
    }

    #[test]
    fn prime_to_p_degrees_give_equal_conductors() {
        for (spec, p) in [(GroupSpec::Alternating4, 2), (GroupSpec::Dihedral(10), 5), (GroupSpec::Cyclic(5), 2)] {
            let d = data(spec, p);
            let degrees_prime = d.components.iter().all(|c| !(c.degree as u64).is_multiple_of(p));
            if degrees_prime {
                assert_eq!(central_conductor_maximal(&d), central_conductor_centres(&d).unwrap());
            }
        }
        let c = data(GroupSpec::Cyclic(5), 2);
        assert_eq!(central_conductor_maximal(&c), CentralIdeal::unit(c.len()));
    }

    #[test]
    fn nice_bound_is_centre() {
        let d = data(GroupSpec::Alternating4, 3);
        let h = h_lambda_lower_bound(&d).unwrap();
        assert_eq!((h.flag, h.reason), (BoundFlag::Exact, BoundReason::Nice));
        assert_eq!(h.lattice.rank(), 4);
    }
}
