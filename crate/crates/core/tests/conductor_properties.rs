//! Structural checks of the conductors over the catalog.

mod common;

use common::*;
use fitkernel::arith::lattice::{lattice_index, IntLattice};
use fitkernel::conductors::{
    central_conductor_centres, central_conductor_maximal, conductor_index_report, hybrid_conductor,
};
use fitkernel::group_algebra::{hybrid_order_basis, maximal_order_basis, GroupRingElem};
use fitkernel::wedderburn::WedderburnData;

fn elems(d: &WedderburnData, l: &IntLattice) -> Vec<GroupRingElem> {
    l.basis(d.p).into_iter().map(|r| GroupRingElem::from_coeffs(&d.group, r).unwrap()).collect()
}

/// `c·x ∈ Z_(p)[G]` for every basis element `c` of the conductor and `x` of the order.
fn conducts(d: &WedderburnData, conductor: &IntLattice, order: &IntLattice) -> bool {
    let xs = elems(d, order);
    elems(d, conductor).iter().all(|c| xs.iter().all(|x| c.mul(x).is_p_integral(d.p) && x.mul(c).is_p_integral(d.p)))
}

#[test]
fn conductors_carry_orders_into_the_group_ring() {
    for (spec, p) in catalog() {
        let d = data(spec.clone(), p);
        let maximal = central_conductor_maximal(&d).lattice(&d);
        assert!(conducts(&d, &maximal, &maximal_order_basis(&d).unwrap()), "{spec} at {p}");
        assert!(conducts(&d, &hybrid_conductor(&d), &hybrid_order_basis(&d).unwrap()), "{spec} at {p}");
    }
}

#[test]
fn maximal_conductor_is_the_largest_such_central_ideal() {
    // Enlarging any component by one power of π breaks the conductor property.
    for (spec, p) in catalog() {
        let d = data(spec.clone(), p);
        let order = maximal_order_basis(&d).unwrap();
        let f = central_conductor_maximal(&d);
        for i in 0..d.len() {
            let mut bigger = f.clone();
            bigger.valuations[i] = bigger.valuations[i] + fitkernel::arith::valuation::Val::Fin(-1);
            assert!(!conducts(&d, &bigger.lattice(&d), &order), "{spec} at {p}, component {}", i + 1);
        }
    }
}

#[test]
fn centres_conductor_contains_maximal_conductor() {
    for (spec, p) in catalog() {
        let d = data(spec.clone(), p);
        let centres = central_conductor_centres(&d).unwrap();
        assert!(centres.contains(&central_conductor_maximal(&d)), "{spec} at {p}");
    }
}

#[test]
fn index_table_is_transitive() {
    for (spec, p) in catalog() {
        let d = data(spec.clone(), p);
        let r = conductor_index_report(&d).unwrap();
        let names = ["maximal", "hybrid", "h_bound", "centres"];
        for a in names {
            for b in names {
                for c in names {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    if let (Some(x), Some(y)) = (r.index(a, b), r.index(b, c)) {
                        assert_eq!(r.index(a, c), Some(x + y), "{spec} at {p}: {a} ⊇ {b} ⊇ {c}");
                    }
                }
            }
        }
        // the bound lies between the maximal conductor and the centre of the group ring
        assert!(r.index("h_bound", "maximal").is_some(), "{spec} at {p}");
        let g = &d.group;
        let class_sums: Vec<_> =
            g.conjugacy_classes().iter().map(|c| GroupRingElem::sum_of(g, c).coeffs().to_vec()).collect();
        let centre = IntLattice::new(g.order(), class_sums).unwrap();
        assert!(lattice_index(&centre, &r.h_bound.lattice, p).is_ok(), "{spec} at {p}");
    }
}
