//! Fitting invariants over group rings `Z_(p)[G]`: reduced norms of minors, their expansions in
//! the centre of a maximal order, idempotent cuts, left-ideal quotients, annihilation checks
//! and witnesses for the reduced-norm order.

pub mod quotient;
pub mod units;
pub mod witness;

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

pub use quotient::{quotient_by_left_ideal, IdealMember, QuotientResult};
pub use units::{bicyclic_unit, diagonal_unit, elementary_unit};
pub use witness::{default_witnesses, witness_i_saturation, SaturationCertificate};

use crate::arith::lattice::IntLattice;
use crate::arith::linalg::rank;
use crate::arith::rational::Rational;
use crate::arith::valuation::Val;
use crate::error::{Error, Result};
use crate::group_algebra::{
    classify_nice, gr_identity, gr_mat_is_p_integral, gr_mat_mul, FiniteGroup, GrMatrix, GroupRingElem,
};
use crate::util::{combinations, with_pool};
use crate::wedderburn::{
    central_idempotents, reduced_norm, rep_matrix, wedderburn_data, CentralElem, CentralIdeal, WedderburnData,
};

/// A presentation `Λ^a → Λ^b ↠ M` over `Λ = Z_(p)[G]`; row `k` is the image of the `k`-th basis
/// vector of `Λ^a`.
#[derive(Clone, Debug)]
pub struct GroupRingPresentation {
    pub group: Arc<FiniteGroup>,
    pub p: u64,
    pub a: usize,
    pub b: usize,
    pub matrix: GrMatrix,
}

impl GroupRingPresentation {
    pub fn new(group: &Arc<FiniteGroup>, p: u64, matrix: GrMatrix) -> Result<Self> {
        let a = matrix.len();
        let b = matrix.first().map_or(0, |r| r.len());
        if a == 0 || b == 0 {
            return Err(Error::Dimension("presentation needs at least one row and one column".into()));
        }
        if matrix.iter().any(|r| r.len() != b) {
            return Err(Error::Dimension("ragged presentation matrix".into()));
        }
        if matrix.iter().flatten().any(|x| x.group().spec != group.spec) {
            return Err(Error::RingMismatch("entries belong to a different group".into()));
        }
        if !gr_mat_is_p_integral(&matrix, p) {
            return Err(Error::NotInRing(format!("entries must be {p}-integral")));
        }
        Ok(GroupRingPresentation { group: group.clone(), p, a, b, matrix })
    }

    pub fn data(&self) -> Result<Arc<WedderburnData>> {
        wedderburn_data(&self.group, self.p)
    }
}

/// How much of `Fit^max` a computed result is known to capture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    ExactQuadratic,
    ExactNice,
    LowerBound,
}

/// Reduced norms of all `b × b` minors together with the ideal they generate in the centre of
/// the maximal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitResult {
    pub generators: Vec<CentralElem>,
    pub expansion: CentralIdeal,
    pub flag: Exactness,
}

fn flag_for(group: &FiniteGroup, p: u64, quadratic: bool) -> Exactness {
    if quadratic {
        Exactness::ExactQuadratic
    } else if classify_nice(group, p).nice {
        Exactness::ExactNice
    } else {
        Exactness::LowerBound
    }
}

/// `⟨nr(H) | H a b × b submatrix of h⟩`, or zero when `a < b`.
pub fn fit_of_presentation(pres: &GroupRingPresentation) -> Result<FitResult> {
    let data = pres.data()?;
    let flag = flag_for(&pres.group, pres.p, pres.a == pres.b);
    if pres.a < pres.b {
        return Ok(FitResult { generators: vec![], expansion: CentralIdeal::zero(data.len()), flag });
    }
    let choices = combinations(pres.a, pres.b);
    let generators: Vec<CentralElem> = with_pool(|| {
        choices
            .par_iter()
            .map(|rows| {
                let minor: GrMatrix = rows.iter().map(|&r| pres.matrix[r].clone()).collect();
                reduced_norm(&data, &minor)
            })
            .collect::<Result<_>>()
    })?;
    let expansion = CentralIdeal::generated(&data, &generators);
    Ok(FitResult { generators, expansion, flag })
}

/// The components on which `M_F` vanishes, their idempotent, and the invariant cut down to them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub upsilon: Vec<usize>,
    pub idempotent: GroupRingElem,
    pub fit: FitResult,
}

/// `Υ(M) = {i : e_i M_F = 0}`, detected as full column rank of `ρ_i(h)`.
pub fn idempotent_cut(pres: &GroupRingPresentation) -> Result<CutResult> {
    let data = pres.data()?;
    let upsilon: Vec<usize> = (0..data.len())
        .filter(|&i| rank(&rep_matrix(&data, i, &pres.matrix)) == pres.b * data.components[i].degree)
        .collect();
    let es = central_idempotents(&data);
    let idempotent = upsilon.iter().fold(GroupRingElem::zero(&pres.group), |acc, &i| acc.add(&es[i]));
    let mut fit = fit_of_presentation(pres)?;
    for c in fit.generators.iter_mut() {
        for (i, v) in c.values.iter_mut().enumerate() {
            if !upsilon.contains(&i) {
                *v = crate::arith::cyclo::CycNum::zero();
            }
        }
    }
    for (i, v) in fit.expansion.valuations.iter_mut().enumerate() {
        if !upsilon.contains(&i) {
            *v = Val::Inf;
        }
    }
    Ok(CutResult { upsilon, idempotent, fit })
}

/// The relation lattice `Σ_{k,g} Z_(p)·g h_k` in `Q^{|G| b}`.
pub fn relation_lattice(pres: &GroupRingPresentation) -> IntLattice {
    let n = pres.group.order();
    let mut rows = Vec::with_capacity(pres.a * n);
    for row in &pres.matrix {
        for g in 0..n {
            rows.push(row.iter().flat_map(|x| x.left_mul_elem(g).coeffs().to_vec()).collect());
        }
    }
    IntLattice::new(n * pres.b, rows).expect("rows have length |G| b")
}

/// `true` iff the central element `z` annihilates `coker(h)`, i.e. `z e_j` lies in the
/// relation lattice for every standard basis vector `e_j` of `Λ^b`.
pub fn verify_annihilation(z: &GroupRingElem, pres: &GroupRingPresentation) -> Result<bool> {
    if !z.is_central() {
        return Err(Error::NotCentral);
    }
    let lattice = relation_lattice(pres);
    let n = pres.group.order();
    Ok((0..pres.b).all(|j| {
        let mut v: Vec<Rational> = vec![Rational::from_integer(0.into()); n * pres.b];
        v[j * n..(j + 1) * n].clone_from_slice(z.coeffs());
        lattice.contains(&v, pres.p)
    }))
}

/// Checks that `U·h` has the same expansion as `h` for a unit `U` with inverse `u_inv`, and that
/// `nr(U)` is a unit in every component.
pub fn gl_invariance_check(pres: &GroupRingPresentation, u: &GrMatrix, u_inv: &GrMatrix) -> Result<bool> {
    if pres.a != pres.b {
        return Err(Error::Dimension("quadratic presentation required".into()));
    }
    let n = pres.a;
    if u.len() != n || u_inv.len() != n || u.iter().chain(u_inv).any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("unit must be {n} × {n}")));
    }
    let id = gr_identity(&pres.group, n);
    if gr_mat_mul(u, u_inv) != id || gr_mat_mul(u_inv, u) != id {
        return Err(Error::NotInvertible("U·U⁻¹ ≠ 1".into()));
    }
    if !gr_mat_is_p_integral(u, pres.p) || !gr_mat_is_p_integral(u_inv, pres.p) {
        return Err(Error::NotInvertible("U or U⁻¹ is not integral".into()));
    }
    let data = pres.data()?;
    let moved = GroupRingPresentation::new(&pres.group, pres.p, gr_mat_mul(u, &pres.matrix))?;
    let same = fit_of_presentation(&moved)?.expansion == fit_of_presentation(pres)?.expansion;
    let unit_norm = data.valuations(&reduced_norm(&data, u)?).iter().all(|v| *v == Val::Fin(0));
    Ok(same && unit_norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclo::CycNum;
    use crate::arith::rational::q;
    use crate::group_algebra::GroupSpec;

    fn grp(s: GroupSpec) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::new(s).unwrap())
    }

    fn elem(g: &Arc<FiniteGroup>, terms: &[(&str, i64)]) -> GroupRingElem {
        GroupRingElem::from_terms(g, terms.iter().map(|(l, c)| (*l, q(*c)))).unwrap()
    }

    #[test]
    fn principal_and_zero_presentations() {
        let g = grp(GroupSpec::Dihedral(8));
        let alpha = elem(&g, &[("1", 2), ("x", 1), ("y", -1)]);
        let pres = GroupRingPresentation::new(&g, 2, vec![vec![alpha.clone()]]).unwrap();
        let fit = fit_of_presentation(&pres).unwrap();
        let data = pres.data().unwrap();
        assert_eq!(fit.generators, vec![reduced_norm(&data, &vec![vec![alpha]]).unwrap()]);
        assert_eq!(fit.flag, Exactness::ExactQuadratic);
        let wide =
            GroupRingPresentation::new(&g, 2, vec![vec![GroupRingElem::zero(&g), GroupRingElem::zero(&g)]]).unwrap();
        let f = fit_of_presentation(&wide).unwrap();
        assert!(f.generators.is_empty() && f.expansion.is_zero());
    }

    #[test]
    fn abelian_diagonal_matches_characters() {
        let g = grp(GroupSpec::Cyclic(2));
        let a = elem(&g, &[("1", 3), ("x", 1)]);
        let b = elem(&g, &[("1", 1), ("x", 1)]);
        let pres =
            GroupRingPresentation::new(&g, 2, vec![vec![a, GroupRingElem::zero(&g)], vec![GroupRingElem::zero(&g), b]])
                .unwrap();
        let fit = fit_of_presentation(&pres).unwrap();
        // characters: x ↦ 1 gives 4·2, x ↦ -1 gives 2·0
        assert_eq!(fit.generators[0].values, vec![CycNum::from_int(8), CycNum::from_int(0)]);
        assert_eq!(fit.expansion.valuations, vec![Val::Fin(3), Val::Inf]);
    }

    #[test]
    fn cuts() {
        let g = grp(GroupSpec::Cyclic(2));
        // 2·e_1 with e_1 = (1 + x)/2
        let h = elem(&g, &[("1", 1), ("x", 1)]);
        let pres = GroupRingPresentation::new(&g, 2, vec![vec![h]]).unwrap();
        let cut = idempotent_cut(&pres).unwrap();
        assert_eq!(cut.upsilon, vec![0]);
        assert_eq!(cut.idempotent, elem(&g, &[("1", 1), ("x", 1)]).scale(&crate::arith::rational::qf(1, 2)));
        let inv = GroupRingPresentation::new(&g, 2, vec![vec![GroupRingElem::one(&g)]]).unwrap();
        assert_eq!(idempotent_cut(&inv).unwrap().upsilon, vec![0, 1]);
    }

    #[test]
    fn annihilation() {
        let g = grp(GroupSpec::Cyclic(2));
        let two = elem(&g, &[("1", 2)]);
        let pres = GroupRingPresentation::new(&g, 2, vec![vec![two.clone()]]).unwrap();
        assert!(verify_annihilation(&two, &pres).unwrap());
        assert!(!verify_annihilation(&GroupRingElem::one(&g), &pres).unwrap());
        let d8 = grp(GroupSpec::Dihedral(8));
        let p8 = GroupRingPresentation::new(&d8, 2, vec![vec![elem(&d8, &[("1", 2)])]]).unwrap();
        assert_eq!(verify_annihilation(&elem(&d8, &[("y", 1)]), &p8), Err(Error::NotCentral));
    }

    #[test]
    fn invariance_under_units() {
        let g = grp(GroupSpec::Dihedral(8));
        let h = vec![
            vec![elem(&g, &[("1", 2), ("x", 1)]), elem(&g, &[("y", 1)])],
            vec![elem(&g, &[("xy", 3)]), elem(&g, &[("1", 4), ("x^3", -1)])],
        ];
        let pres = GroupRingPresentation::new(&g, 2, h).unwrap();
        let id = gr_identity(&g, 2);
        assert!(gl_invariance_check(&pres, &id, &id).unwrap());
        let (u, ui) = diagonal_unit(&g, &[(g.element("x").unwrap(), 1), (g.element("y").unwrap(), -1)]);
        assert!(gl_invariance_check(&pres, &u, &ui).unwrap());
        let (u, ui) = elementary_unit(&g, 2, 0, 1, &elem(&g, &[("x", 1), ("y", 5)]));
        assert!(gl_invariance_check(&pres, &u, &ui).unwrap());
        let two = vec![
            vec![elem(&g, &[("1", 2)]), GroupRingElem::zero(&g)],
            vec![GroupRingElem::zero(&g), GroupRingElem::one(&g)],
        ];
        assert!(matches!(gl_invariance_check(&pres, &two, &two), Err(Error::NotInvertible(_))));
    }
}
