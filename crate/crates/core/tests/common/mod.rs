//! Shared fixtures for the integration tests: the catalog with a supported prime for each
//! group, and seeded random inputs.
#![allow(dead_code)]

use std::sync::Arc;

use fitkernel::arith::rational::{q, Rational};
use fitkernel::comm_fitting::CommRing;
use fitkernel::group_algebra::{FiniteGroup, GrMatrix, GroupRingElem, GroupSpec};
use fitkernel::matrix_ring::{MatRingElem, MatRingPresentation};
use fitkernel::wedderburn::{wedderburn_data, WedderburnData};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every catalog family, each paired with a prime at which its components are supported.
pub fn catalog() -> Vec<(GroupSpec, u64)> {
    vec![
        (GroupSpec::Cyclic(1), 2),
        (GroupSpec::Cyclic(2), 2),
        (GroupSpec::Cyclic(3), 3),
        (GroupSpec::Cyclic(4), 2),
        (GroupSpec::Cyclic(6), 3),
        (GroupSpec::AbelianProduct(vec![2, 2]), 2),
        (GroupSpec::AbelianProduct(vec![2, 4]), 2),
        (GroupSpec::Dihedral(6), 3),
        (GroupSpec::Dihedral(8), 2),
        (GroupSpec::Dihedral(10), 5),
        (GroupSpec::Dihedral(12), 2),
        (GroupSpec::Dihedral(12), 3),
        (GroupSpec::Dihedral(14), 7),
        (GroupSpec::Dihedral(16), 2),
        (GroupSpec::Quaternion8, 2),
        (GroupSpec::Quaternion8, 3),
        (GroupSpec::Alternating4, 2),
        (GroupSpec::Alternating4, 3),
        (GroupSpec::Metacyclic { p: 7, q: 3, r: 2 }, 3),
        (GroupSpec::Metacyclic { p: 7, q: 3, r: 2 }, 5),
    ]
}

pub fn group(spec: GroupSpec) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::new(spec).expect("catalog group"))
}

pub fn data(spec: GroupSpec, p: u64) -> Arc<WedderburnData> {
    wedderburn_data(&group(spec), p).expect("supported prime")
}

/// A sparse element with up to `terms` nonzero integer coefficients in `-bound..=bound`.
pub fn random_elem(rng: &mut ChaCha8Rng, g: &Arc<FiniteGroup>, terms: usize, bound: i64) -> GroupRingElem {
    let mut coeffs = vec![q(0); g.order()];
    for _ in 0..rng.gen_range(1..=terms) {
        coeffs[rng.gen_range(0..g.order())] = q(rng.gen_range(-bound..=bound));
    }
    GroupRingElem::from_coeffs(g, coeffs).expect("length |G|")
}

pub fn random_gr_matrix(rng: &mut ChaCha8Rng, g: &Arc<FiniteGroup>, rows: usize, cols: usize) -> GrMatrix {
    (0..rows).map(|_| (0..cols).map(|_| random_elem(rng, g, 3, 2)).collect()).collect()
}

pub fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<Rational>> {
    (0..rows).map(|_| (0..cols).map(|_| q(rng.gen_range(-bound..=bound))).collect()).collect()
}

pub fn random_block(rng: &mut ChaCha8Rng, ring: CommRing, n: usize, bound: i64) -> MatRingElem {
    MatRingElem::new(ring, random_int_matrix(rng, n, n, bound)).expect("integer entries")
}

/// An `a × b` block presentation over `M_n(ring)`.
pub fn random_mat_presentation(
    rng: &mut ChaCha8Rng,
    ring: CommRing,
    n: usize,
    a: usize,
    b: usize,
    bound: i64,
) -> MatRingPresentation {
    let blocks = (0..a).map(|_| (0..b).map(|_| random_block(rng, ring, n, bound)).collect()).collect();
    MatRingPresentation::new(blocks).expect("consistent blocks")
}
