//! The maximal order and the hybrid order `Z_(p)[G]e ⊕ Λ′(1-e)` in group-ring coordinates.

use num_traits::Zero;

use super::group::GroupSpec;
use super::ring::GroupRingElem;
use super::structure::{commutator_subgroup, trace_idempotent};
use crate::arith::cyclo::{power_basis_vector, CycNum};
use crate::arith::lattice::{hnf_local, saturate, IntLattice};
use crate::arith::linalg::{zeros, Mat};
use crate::arith::rational::{det_rational, qf, v_p, Rational};
use crate::error::{Error, Result};
use crate::wedderburn::{central_idempotents, fourier_inverse, WedderburnData};

/// A `Z_(p)`-basis of a maximal order in component `i`, as group-ring coordinate rows.
///
/// The order is the preimage of `M_d(Z_(p)[ζ])` under the component's representation, enlarged
/// by the Hurwitz element for the quaternion component at 2, and certified maximal through the
/// discriminant of its trace form.
pub fn component_maximal_rows(data: &WedderburnData, i: usize) -> Result<Vec<Vec<Rational>>> {
    let g = &data.group;
    let comp = &data.components[i];
    let e = data.conductor;
    let d = comp.degree;
    let phi = power_basis_vector(&CycNum::one(), e).len();
    let images: Vec<Vec<Rational>> =
        comp.rep.images.iter().map(|m| m.iter().flatten().flat_map(|x| power_basis_vector(x, e)).collect()).collect();
    let sat = saturate(&images, data.p);
    let mut rows: Vec<Vec<Rational>> = sat
        .iter()
        .map(|w| {
            let block: Mat = (0..d)
                .map(|a| (0..d).map(|b| CycNum::new(e, &w[(a * d + b) * phi..(a * d + b + 1) * phi])).collect())
                .collect();
            let blocks: Vec<Mat> = data
                .components
                .iter()
                .enumerate()
                .map(|(j, c)| if j == i { block.clone() } else { zeros(c.degree, c.degree) })
                .collect();
            fourier_inverse(data, &blocks).coeffs().to_vec()
        })
        .collect();
    if comp.schur_index == 2 && matches!(g.spec, GroupSpec::Quaternion8) {
        let ei = &central_idempotents(data)[i];
        let h = GroupRingElem::from_terms(g, ["1", "x", "y", "xy"].map(|l| (l, qf(1, 2))))?;
        rows.push(h.mul(ei).coeffs().to_vec());
        rows = hnf_local(&rows, data.p);
    }
    let expected_rank = comp.field_degree() * d * d;
    if rows.len() != expected_rank {
        return Err(Error::UnsupportedField(format!(
            "component {i}: order of rank {} instead of {expected_rank}",
            rows.len()
        )));
    }
    let disc = trace_form_discriminant(data, d, &rows);
    let f = comp.field.residue_degree as i64;
    let (n, s) = (comp.matrix_size as i64, comp.schur_index as i64);
    let expected = f * ((d * d) as i64 * comp.field.different + n * n * s * (s - 1));
    if v_p(&disc, data.p) != Some(expected) {
        return Err(Error::UnsupportedField(format!(
            "component {i}: order is not maximal at {} (discriminant exponent {:?}, expected {expected})",
            data.p,
            v_p(&disc, data.p)
        )));
    }
    Ok(rows)
}

/// `det(Tr_{F/Q} trd(b_k b_l))`, using `Tr_{F/Q} trd(x) = (|G|/d)·x_1` on a component of degree `d`.
fn trace_form_discriminant(data: &WedderburnData, d: usize, rows: &[Vec<Rational>]) -> Rational {
    let g = &data.group;
    let scale = qf(g.order() as i64, d as i64);
    let n = rows.len();
    let mut t = vec![vec![Rational::zero(); n]; n];
    for k in 0..n {
        for l in k..n {
            // coefficient of the identity in b_k b_l is Σ_a (b_k)_a (b_l)_{a⁻¹}
            let mut s = Rational::zero();
            for (a, x) in rows[k].iter().enumerate() {
                if !x.is_zero() {
                    let y = &rows[l][g.inv(a)];
                    if !y.is_zero() {
                        s += x * y;
                    }
                }
            }
            let v = s * &scale;
            t[k][l] = v.clone();
            t[l][k] = v;
        }
    }
    det_rational(&t)
}

/// A maximal `Z_(p)`-order of `Q[G]` containing the group ring.
pub fn maximal_order_basis(data: &WedderburnData) -> Result<IntLattice> {
    let mut rows = Vec::new();
    for i in 0..data.len() {
        rows.extend(component_maximal_rows(data, i)?);
    }
    IntLattice::new(data.group.order(), rows)
}

/// `Λ′(G, G′) = Z_(p)[G]e ⊕ Λ′(1-e)` with `e = |G′|⁻¹ Tr_{G′}`.
pub fn hybrid_order_basis(data: &WedderburnData) -> Result<IntLattice> {
    let g = &data.group;
    let e = trace_idempotent(g);
    let mut rows: Vec<Vec<Rational>> =
        g.transversal(&commutator_subgroup(g)).into_iter().map(|x| e.left_mul_elem(x).coeffs().to_vec()).collect();
    for (i, comp) in data.components.iter().enumerate() {
        if comp.degree > 1 {
            rows.extend(component_maximal_rows(data, i)?);
        }
    }
    IntLattice::new(g.order(), rows)
}

/// `true` iff all pairwise products of basis elements stay in the lattice.
pub fn is_multiplicatively_closed(data: &WedderburnData, lattice: &IntLattice) -> bool {
    let g = &data.group;
    let basis: Vec<GroupRingElem> = lattice
        .basis(data.p)
        .into_iter()
        .map(|r| GroupRingElem::from_coeffs(g, r).expect("lattice dimension is |G|"))
        .collect();
    basis.iter().all(|a| basis.iter().all(|b| lattice.contains(a.mul(b).coeffs(), data.p)))
        && lattice.contains(GroupRingElem::one(g).coeffs(), data.p)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::lattice::lattice_index;
    use crate::group_algebra::FiniteGroup;
    use crate::wedderburn::wedderburn_data;

    fn data(spec: GroupSpec, p: u64) -> Arc<WedderburnData> {
        wedderburn_data(&Arc::new(FiniteGroup::new(spec).unwrap()), p).unwrap()
    }

    #[test]
    fn orders_are_rings_containing_the_group_ring() {
        for (spec, p) in [
            (GroupSpec::Dihedral(8), 2),
            (GroupSpec::Dihedral(6), 3),
            (GroupSpec::Dihedral(10), 5),
            (GroupSpec::Alternating4, 3),
            (GroupSpec::Alternating4, 2),
            (GroupSpec::Quaternion8, 2),
            (GroupSpec::Quaternion8, 3),
            (GroupSpec::Metacyclic { p: 7, q: 3, r: 2 }, 3),
            (GroupSpec::Cyclic(4), 2),
        ] {
            let d = data(spec.clone(), p);
            let group_ring = IntLattice::standard(d.group.order());
            for lat in [maximal_order_basis(&d).unwrap(), hybrid_order_basis(&d).unwrap()] {
                assert_eq!(lat.rank(), d.group.order(), "{spec} at {p}");
                assert!(is_multiplicatively_closed(&d, &lat), "{spec} at {p}");
                assert!(lattice_index(&lat, &group_ring, p).is_ok(), "{spec} at {p}");
            }
        }
    }

    #[test]
    fn abelian_hybrid_is_group_ring() {
        let d = data(GroupSpec::Cyclic(4), 2);
        let h = hybrid_order_basis(&d).unwrap();
        assert!(h.same_as(&IntLattice::standard(4), 2));
    }

    #[test]
    fn nice_hybrid_is_group_ring() {
        let d = data(GroupSpec::Alternating4, 3);
        let h = hybrid_order_basis(&d).unwrap();
        assert!(h.same_as(&IntLattice::standard(12), 3));
    }
}
