//! Explicit units of `M_n(Z[G])`, each returned together with its inverse.

use std::sync::Arc;

use crate::arith::rational::q;
use crate::group_algebra::{gr_identity, FiniteGroup, GrMatrix, GroupRingElem};

/// `1 + λE_{kl}` for `k ≠ l`, with inverse `1 - λE_{kl}`.
pub fn elementary_unit(
    g: &Arc<FiniteGroup>,
    n: usize,
    k: usize,
    l: usize,
    lambda: &GroupRingElem,
) -> (GrMatrix, GrMatrix) {
    assert!(k != l && k < n && l < n, "elementary units need distinct in-range indices");
    let mut u = gr_identity(g, n);
    let mut v = gr_identity(g, n);
    u[k][l] = lambda.clone();
    v[k][l] = lambda.neg();
    (u, v)
}

/// `diag(±g_1, …, ±g_n)` from `(element, sign)` pairs.
pub fn diagonal_unit(g: &Arc<FiniteGroup>, entries: &[(usize, i64)]) -> (GrMatrix, GrMatrix) {
    let n = entries.len();
    let mut u = gr_identity(g, n);
    let mut v = gr_identity(g, n);
    for (i, &(a, s)) in entries.iter().enumerate() {
        u[i][i] = GroupRingElem::basis(g, a).scale(&q(s));
        v[i][i] = GroupRingElem::basis(g, g.inv(a)).scale(&q(s));
    }
    (u, v)
}

/// The bicyclic unit `1 + (1 - a) b N̂_a` (with `N̂_a = Σ_i a^i`) in position `(k, k)` of the
/// `n × n` identity; its inverse is `1 - (1 - a) b N̂_a`.
pub fn bicyclic_unit(g: &Arc<FiniteGroup>, n: usize, k: usize, a: usize, b: usize) -> (GrMatrix, GrMatrix) {
    let powers: Vec<usize> = (0..g.element_order(a)).map(|i| g.pow(a, i)).collect();
    let norm = GroupRingElem::sum_of(g, &powers);
    let one = GroupRingElem::one(g);
    let nil = one.sub(&GroupRingElem::basis(g, a)).mul(&GroupRingElem::basis(g, b)).mul(&norm);
    let mut u = gr_identity(g, n);
    let mut v = gr_identity(g, n);
    u[k][k] = one.add(&nil);
    v[k][k] = one.sub(&nil);
    (u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::{gr_mat_mul, GroupSpec};

    #[test]
    fn units_invert() {
        let g = Arc::new(FiniteGroup::new(GroupSpec::Dihedral(8)).unwrap());
        let id = gr_identity(&g, 2);
        let x = g.element("x").unwrap();
        let y = g.element("y").unwrap();
        for (u, v) in [
            elementary_unit(&g, 2, 1, 0, &GroupRingElem::basis(&g, x)),
            diagonal_unit(&g, &[(x, -1), (y, 1)]),
            bicyclic_unit(&g, 2, 0, y, x),
        ] {
            assert_eq!(gr_mat_mul(&u, &v), id);
            assert_eq!(gr_mat_mul(&v, &u), id);
        }
        // a central first argument makes the bicyclic unit trivial
        let (u, _) = bicyclic_unit(&g, 1, 0, g.element("x^2").unwrap(), x);
        assert_eq!(u, gr_identity(&g, 1));
    }
}
