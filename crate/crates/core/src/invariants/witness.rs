//! Certificates that the reduced-norm order `I(Λ)` is the whole centre of the maximal order.

use serde::Serialize;

use crate::arith::lattice::{hnf_local, lattice_member, solve_in_span, IntLattice};
use crate::arith::rational::Rational;
use crate::error::{Error, Result};
use crate::group_algebra::GroupRingElem;
use crate::wedderburn::{reduced_norm, CentralElem, WedderburnData};

/// One generator of the saturated order with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationGenerator {
    pub source: String,
    #[serde(skip)]
    pub value: CentralElem,
}

/// Expresses every integral-basis element `b_{ij} e_i` of the centre of the maximal order as a
/// `Z_(p)`-combination of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationCertificate {
    pub generators: Vec<SaturationGenerator>,
    /// `(component, basis index, coefficients over generators)`.
    pub expressions: Vec<(usize, usize, Vec<Rational>)>,
}

/// Witnesses tried by default: `±g` for every group element, then `g + h` for every pair.
pub fn default_witnesses(data: &WedderburnData) -> Vec<Vec<(String, GroupRingElem)>> {
    let g = &data.group;
    let n = g.order();
    let signed: Vec<(String, GroupRingElem)> = (0..n)
        .flat_map(|a| {
            let x = GroupRingElem::basis(g, a);
            [(g.label(a).to_string(), x.clone()), (format!("-{}", g.label(a)), x.neg())]
        })
        .collect();
    let pairs: Vec<(String, GroupRingElem)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| {
            (format!("{} + {}", g.label(a), g.label(b)), GroupRingElem::basis(g, a).add(&GroupRingElem::basis(g, b)))
        })
        .collect();
    let mut both = signed.clone();
    both.extend(pairs);
    vec![signed, both]
}

/// Closes `ζ(Λ)` together with `nr(w)` for the witnesses under multiplication, then expresses the
/// integral basis of `ζ(Λ′)` in the result. Failure means the witnesses were insufficient, not
/// that `I(Λ) ≠ ζ(Λ′)`.
pub fn witness_i_saturation(
    data: &WedderburnData,
    witnesses: &[(String, GroupRingElem)],
) -> Result<SaturationCertificate> {
    let g = &data.group;
    let p = data.p;
    let mut gens: Vec<SaturationGenerator> = Vec::new();
    for class in g.conjugacy_classes() {
        let z = GroupRingElem::sum_of(g, &class);
        gens.push(SaturationGenerator {
            source: format!("class sum of {}", g.label(class[0])),
            value: data.central_values(&z)?,
        });
    }
    for (name, w) in witnesses {
        gens.push(SaturationGenerator {
            source: format!("nr({name})"),
            value: reduced_norm(data, &vec![vec![w.clone()]])?,
        });
    }
    let dim = data.centre_rank();
    let mut coords: Vec<Vec<Rational>> = gens.iter().map(|s| data.central_coords(&s.value)).collect();
    // Multiplicative closure, one round of basis products at a time.
    loop {
        let basis = hnf_local(&coords, p);
        let lattice = IntLattice::new(dim, basis.clone())?;
        let elems: Vec<CentralElem> = basis.iter().map(|r| data.from_central_coords(r)).collect();
        let mut grew = false;
        for i in 0..elems.len() {
            for j in i..elems.len() {
                let prod = elems[i].mul(&elems[j]);
                let c = data.central_coords(&prod);
                if !lattice_member(&c, &lattice, p) && !coords.contains(&c) {
                    gens.push(SaturationGenerator {
                        source: format!("product of basis elements {i} and {j}"),
                        value: prod,
                    });
                    coords.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut expressions = Vec::new();
    let mut pos = 0;
    for (i, comp) in data.components.iter().enumerate() {
        for j in 0..comp.integral_basis.len() {
            let mut target = vec![Rational::from_integer(0.into()); dim];
            target[pos + j] = Rational::from_integer(1.into());
            let c = solve_in_span(&target, &coords, p).ok_or_else(|| {
                Error::InsufficientWitnesses(format!("basis element {j} of component {} not reached", i + 1))
            })?;
            expressions.push((i, j, c));
        }
        pos += comp.integral_basis.len();
    }
    Ok(SaturationCertificate { generators: gens, expressions })
}
