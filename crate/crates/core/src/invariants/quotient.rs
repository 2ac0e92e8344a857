//! Fitting invariants of cyclic quotients `Λ/I` by finitely generated left ideals.

use std::sync::Arc;

use rayon::prelude::*;

use super::{flag_for, FitResult};
use crate::arith::linalg::zeros;
use crate::error::{Error, Result};
use crate::group_algebra::{FiniteGroup, GroupRingElem};
use crate::util::{combinations, with_pool};
use crate::wedderburn::{reduced_norm, try_fourier_inverse, wedderburn_data, CentralElem, CentralIdeal};

/// An element `x = Σ_k λ_k x_k` of the left ideal, with its reduced norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealMember {
    pub description: String,
    pub coefficients: Vec<GroupRingElem>,
    pub element: GroupRingElem,
    pub norm: CentralElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    pub fit: FitResult,
    pub members: Vec<IdealMember>,
}

/// Reduced norms of a finite family of elements of `I = Λx_1 + ⋯ + Λx_k`: the generators, the
/// sums `x_k + g x_l`, and on each matrix component the elements `Σ_j ε_{j,r_j} x_{k_j}` built
/// from integral matrix-unit preimages.
pub fn quotient_by_left_ideal(g: &Arc<FiniteGroup>, p: u64, generators: &[GroupRingElem]) -> Result<QuotientResult> {
    if generators.is_empty() {
        return Err(Error::Invalid("left ideal needs at least one generator".into()));
    }
    if generators.iter().any(|x| x.group().spec != g.spec) {
        return Err(Error::RingMismatch("generators belong to a different group".into()));
    }
    if generators.iter().any(|x| !x.is_p_integral(p)) {
        return Err(Error::NotInRing(format!("generators must be {p}-integral")));
    }
    let data = wedderburn_data(g, p)?;
    let k = generators.len();
    let unit = |i: usize, c: GroupRingElem| {
        let mut v = vec![GroupRingElem::zero(g); k];
        v[i] = c;
        v
    };
    let mut candidates: Vec<(String, Vec<GroupRingElem>)> =
        (0..k).map(|i| (format!("x{}", i + 1), unit(i, GroupRingElem::one(g)))).collect();
    if k > 1 {
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                for a in 0..g.order() {
                    let mut c = unit(i, GroupRingElem::one(g));
                    c[j] = GroupRingElem::basis(g, a);
                    candidates.push((format!("x{} + {}·x{}", i + 1, g.label(a), j + 1), c));
                }
            }
        }
        for (ci, comp) in data.components.iter().enumerate() {
            let d = comp.degree;
            if d < 2 {
                continue;
            }
            let mut units = Vec::with_capacity(d * d);
            for r in 0..d {
                for c in 0..d {
                    let blocks: Vec<_> = data
                        .components
                        .iter()
                        .enumerate()
                        .map(|(j, cc)| {
                            let mut m = zeros(cc.degree, cc.degree);
                            if j == ci {
                                m[r][c] = crate::arith::cyclo::CycNum::one();
                            }
                            m
                        })
                        .collect();
                    units.push(try_fourier_inverse(&data, &blocks).filter(|x| x.is_p_integral(p)));
                }
            }
            let Some(units) = units.into_iter().collect::<Option<Vec<_>>>() else { continue };
            let stacked: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..d).map(move |r| (i, r))).collect();
            for sel in combinations(stacked.len(), d) {
                let mut c = vec![GroupRingElem::zero(g); k];
                let mut desc = Vec::new();
                for (row, &s) in sel.iter().enumerate() {
                    let (i, r) = stacked[s];
                    c[i] = c[i].add(&units[row * d + r]);
                    desc.push(format!("ε[{}]({},{})·x{}", ci + 1, row + 1, r + 1, i + 1));
                }
                candidates.push((desc.join(" + "), c));
            }
        }
    }
    let members: Vec<IdealMember> = with_pool(|| {
        candidates
            .into_par_iter()
            .map(|(description, coefficients)| {
                let element =
                    coefficients.iter().zip(generators).fold(GroupRingElem::zero(g), |acc, (l, x)| acc.add(&l.mul(x)));
                let norm = reduced_norm(&data, &vec![vec![element.clone()]])?;
                Ok(IdealMember { description, coefficients, element, norm })
            })
            .collect::<Result<_>>()
    })?;
    let generators_nr: Vec<CentralElem> = members.iter().map(|m| m.norm.clone()).collect();
    let expansion = CentralIdeal::generated(&data, &generators_nr);
    let fit = FitResult { generators: generators_nr, expansion, flag: flag_for(g, p, k == 1) };
    Ok(QuotientResult { fit, members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::q;
    use crate::arith::valuation::Val;
    use crate::group_algebra::{commutator_trace, GroupSpec};
    use crate::invariants::Exactness;

    #[test]
    fn principal_and_unit_ideals() {
        let g = Arc::new(FiniteGroup::new(GroupSpec::Dihedral(8)).unwrap());
        let alpha = GroupRingElem::from_terms(&g, [("x", q(1)), ("y", q(2))]).unwrap();
        let r = quotient_by_left_ideal(&g, 2, std::slice::from_ref(&alpha)).unwrap();
        let data = wedderburn_data(&g, 2).unwrap();
        assert_eq!(r.fit.generators, vec![reduced_norm(&data, &vec![vec![alpha]]).unwrap()]);
        assert_eq!(r.fit.flag, Exactness::ExactQuadratic);
        let one = quotient_by_left_ideal(&g, 2, &[GroupRingElem::one(&g)]).unwrap();
        assert_eq!(one.fit.expansion, CentralIdeal::unit(5));
    }

    #[test]
    fn alternating_group_two_generators() {
        let g = Arc::new(FiniteGroup::new(GroupSpec::Alternating4).unwrap());
        let three = GroupRingElem::scalar(&g, &q(3));
        let r = quotient_by_left_ideal(&g, 3, &[three, commutator_trace(&g)]).unwrap();
        assert_eq!(r.fit.flag, Exactness::ExactNice);
        assert_eq!(r.fit.expansion.valuations, vec![Val::Fin(0), Val::Fin(0), Val::Fin(3)]);
        for m in &r.members {
            let rebuilt = m.coefficients[0].scale(&q(3)).add(&m.coefficients[1].mul(&commutator_trace(&g)));
            assert_eq!(rebuilt, m.element);
        }
    }
}
