//! Wedderburn components of `Q_p[G]`: fused characters, explicit representations, local field
//! data, and the passage between group-ring and componentwise coordinates.

pub mod catalog;
pub mod ops;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub use catalog::{irreducible_representations, splitting_conductor, Representation};
pub use ops::{
    central_idempotents, fourier_inverse, generalized_adjoint, reduced_charpoly, reduced_norm, rep_image, rep_matrix,
    try_fourier_inverse,
};

use crate::arith::cyclo::{power_basis_vector, unit_group, CycNum};
use crate::arith::lattice::saturate;
use crate::arith::linalg::Mat;
use crate::arith::modp::left_kernel;
use crate::arith::rational::{is_prime, q, qf, residue, solve_left_rational, Rational};
use crate::arith::valuation::{decomposition_group, normalized_valuation_unchecked, LocalField, Val};
use crate::error::{Error, Result};
use crate::group_algebra::{FiniteGroup, GroupRingElem, GroupSpec};

/// One simple component `A_i ≅ M_{n_i}(D_i)` of `Q_p[G]`.
#[derive(Clone, Debug)]
pub struct WedderburnComponent {
    pub index: usize,
    /// `χ_i(1) = n_i s_i`.
    pub degree: usize,
    pub matrix_size: usize,
    pub schur_index: usize,
    /// Values of one absolutely irreducible character in the orbit.
    pub character: Vec<CycNum>,
    /// Exponents `a` such that `σ_a χ` runs once through the fused orbit.
    pub orbit: Vec<u64>,
    /// Exponents fixing the character values.
    pub stabilizer: Vec<u64>,
    pub rep: Representation,
    /// Local data of the centre `F_i`, including the different exponent.
    pub field: LocalField,
    /// A `Z_(p)`-basis of the integers of `F_i`.
    pub integral_basis: Vec<CycNum>,
    pub uniformizer: CycNum,
}

impl WedderburnComponent {
    /// `[F_i : Q]`.
    pub fn field_degree(&self) -> usize {
        self.orbit.len()
    }

    /// Coordinates of `a ∈ F_i` in the integral basis.
    pub fn coords(&self, a: &CycNum, e: u64) -> Option<Vec<Rational>> {
        let rows: Vec<Vec<Rational>> = self.integral_basis.iter().map(|b| power_basis_vector(b, e)).collect();
        solve_left_rational(&rows, &power_basis_vector(a, e))
    }

    /// `v_π` of an element of `F_i`.
    pub fn valuation(&self, a: &CycNum) -> Val {
        self.field.valuation(a).expect("component values have integral π-valuation")
    }

    /// `π^v`; negative exponents go through the inverse.
    pub fn pi_power(&self, v: i64) -> CycNum {
        if v >= 0 {
            self.uniformizer.pow(v as u32)
        } else {
            self.uniformizer.inverse().expect("uniformiser is nonzero").pow((-v) as u32)
        }
    }
}

/// All Wedderburn components of `Q_p[G]`, linear characters first.
#[derive(Clone, Debug)]
pub struct WedderburnData {
    pub group: Arc<FiniteGroup>,
    pub p: u64,
    /// Common cyclotomic conductor of the representations.
    pub conductor: u64,
    pub components: Vec<WedderburnComponent>,
}

/// A central element given componentwise, one value in each `F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralElem {
    pub values: Vec<CycNum>,
}

impl CentralElem {
    pub fn constant(k: usize, c: &CycNum) -> Self {
        CentralElem { values: vec![c.clone(); k] }
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, &CycNum::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        CentralElem { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        CentralElem { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// A fractional ideal `⊕ π_i^{v_i} O_i` of the centre of the maximal order; `Val::Inf` marks a
/// zero component.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CentralIdeal {
    pub valuations: Vec<Val>,
}

impl CentralIdeal {
    pub fn zero(k: usize) -> Self {
        CentralIdeal { valuations: vec![Val::Inf; k] }
    }

    pub fn unit(k: usize) -> Self {
        CentralIdeal { valuations: vec![Val::Fin(0); k] }
    }

    /// The ideal generated by the given central elements.
    pub fn generated(data: &WedderburnData, gens: &[CentralElem]) -> Self {
        let mut valuations = vec![Val::Inf; data.len()];
        for c in gens {
            for (v, w) in valuations.iter_mut().zip(data.valuations(c)) {
                *v = (*v).min(w);
            }
        }
        CentralIdeal { valuations }
    }

    /// Componentwise inclusion `other ⊆ self`.
    pub fn contains(&self, other: &CentralIdeal) -> bool {
        self.valuations.iter().zip(&other.valuations).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &CentralIdeal) -> CentralIdeal {
        CentralIdeal { valuations: self.valuations.iter().zip(&other.valuations).map(|(a, b)| *a + *b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.valuations.iter().all(|v| *v == Val::Inf)
    }

    /// The ideal as a lattice in group-ring coordinates.
    pub fn lattice(&self, data: &WedderburnData) -> crate::arith::lattice::IntLattice {
        let vals: Vec<Option<i64>> = self.valuations.iter().map(|v| v.finite()).collect();
        crate::arith::lattice::IntLattice::new(data.group.order(), data.central_lattice_rows(&vals))
            .expect("central rows have group-ring dimension")
    }
}

type Cache = Mutex<HashMap<(GroupSpec, u64), Arc<WedderburnData>>>;

/// Wedderburn data of `Q_p[G]`, computed once per `(G, p)`.
pub fn wedderburn_data(g: &Arc<FiniteGroup>, p: u64) -> Result<Arc<WedderburnData>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (g.spec.clone(), p);
    if let Some(d) = cache.lock().expect("cache poisoned").get(&key) {
        return Ok(d.clone());
    }
    let d = Arc::new(compute(g, p)?);
    cache.lock().expect("cache poisoned").insert(key, d.clone());
    Ok(d)
}

fn apply(chi: &[CycNum], a: u64) -> Vec<CycNum> {
    chi.iter().map(|x| x.sigma(a)).collect()
}

fn compute(g: &Arc<FiniteGroup>, p: u64) -> Result<WedderburnData> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let e = splitting_conductor(g);
    let reps = irreducible_representations(g);
    let chars: Vec<Vec<CycNum>> = reps.iter().map(|r| r.character()).collect();
    let full = unit_group(e);
    let dec = decomposition_group(e, p);
    let mut assigned = vec![false; reps.len()];
    let mut components = Vec::new();
    for (k, rep) in reps.iter().enumerate() {
        if assigned[k] {
            continue;
        }
        let chi = &chars[k];
        let mut orbit = Vec::new();
        let mut images: Vec<Vec<CycNum>> = Vec::new();
        let mut stabilizer = Vec::new();
        for &a in &full {
            let img = apply(chi, a);
            if img == *chi {
                stabilizer.push(a);
            }
            if !images.contains(&img) {
                let j = chars.iter().position(|c| *c == img).expect("Galois conjugate of an irreducible character");
                assigned[j] = true;
                images.push(img);
                orbit.push(a);
            }
        }
        let local: Vec<Vec<CycNum>> = dec.iter().map(|&a| apply(chi, a)).collect();
        let local_count = images.iter().filter(|c| local.contains(c)).count();
        if local_count != images.len() {
            return Err(Error::UnsupportedField(format!(
                "character {} of {} splits into {} local orbits at p = {p}",
                components.len() + 1,
                g.spec,
                images.len() / local_count
            )));
        }
        let local_stab: Vec<u64> = stabilizer.iter().copied().filter(|a| dec.contains(a)).collect();
        let field = LocalField::new(e, p, &local_stab);
        let integral_basis = integral_basis(e, p, &stabilizer);
        let uniformizer = uniformizer(e, p, &field, &integral_basis)?;
        let quaternion = matches!(g.spec, GroupSpec::Quaternion8) && rep.dim == 2 && p == 2;
        let schur_index = if quaternion { 2 } else { 1 };
        components.push(WedderburnComponent {
            index: components.len(),
            degree: rep.dim,
            matrix_size: rep.dim / schur_index,
            schur_index,
            character: chi.clone(),
            orbit,
            stabilizer,
            rep: rep.clone(),
            field,
            integral_basis,
            uniformizer,
        });
    }
    Ok(WedderburnData { group: g.clone(), p, conductor: e, components })
}

/// Traces `Tr_S(ζ^j)` saturated at `p`: the `p`-local integers of `Q(ζ_e)^S`.
fn integral_basis(e: u64, p: u64, stabilizer: &[u64]) -> Vec<CycNum> {
    let phi = unit_group(e).len();
    let rows: Vec<Vec<Rational>> = (0..phi)
        .map(|j| {
            let z = CycNum::zeta(e, j as i64);
            let t = stabilizer.iter().fold(CycNum::zero(), |acc, &a| &acc + &z.sigma(a));
            power_basis_vector(&t, e)
        })
        .collect();
    let mut basis: Vec<CycNum> = saturate(&rows, p).iter().map(|r| CycNum::new(e, r)).collect();
    // Prefer 1 as the first basis element when it is primitive, for readable output.
    if basis.len() == 1 {
        basis = vec![CycNum::one()];
    }
    basis
}

/// An element of valuation `1/e` over `Q_p`: `p` when unramified, otherwise an element of the
/// maximal ideal outside its square, found in the kernel of Frobenius iterated on `O/pO`.
fn uniformizer(e: u64, p: u64, field: &LocalField, basis: &[CycNum]) -> Result<CycNum> {
    if field.ram_index == 1 {
        return Ok(CycNum::from_int(p as i64));
    }
    let target = qf(1, field.ram_index as i64);
    let mut k = 1u32;
    while p.pow(k) < field.ram_index {
        k += 1;
    }
    let rows_q: Vec<Vec<Rational>> = basis.iter().map(|b| power_basis_vector(b, e)).collect();
    let pb = BigInt::from(p);
    let frob: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            let img = b.pow(p.pow(k) as u32);
            let c = solve_left_rational(&rows_q, &power_basis_vector(&img, e)).expect("powers stay in the field");
            c.iter().map(|x| residue(x, &pb).to_u64().expect("residue fits")).collect()
        })
        .collect();
    for c in left_kernel(&frob, p) {
        let x = c
            .iter()
            .zip(basis)
            .filter(|(ci, _)| **ci != 0)
            .fold(CycNum::zero(), |acc, (ci, b)| &acc + &b.scale(&q(*ci as i64)));
        if normalized_valuation_unchecked(&x, p).as_ref() == Some(&target) {
            return Ok(x);
        }
    }
    Err(Error::UnsupportedField(format!("no uniformiser found in Q(ζ_{e}) at {p}")))
}

impl WedderburnData {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// The central element with value `values[i]` in component `i`.
    pub fn central_element(&self, c: &CentralElem) -> GroupRingElem {
        let blocks: Vec<Mat> = self
            .components
            .iter()
            .zip(&c.values)
            .map(|(comp, v)| crate::arith::linalg::mat_scale(&crate::arith::linalg::identity(comp.degree), v))
            .collect();
        fourier_inverse(self, &blocks)
    }

    /// Componentwise values `ω_i(z) = χ_i(1)⁻¹ Σ_g z_g χ_i(g)` of a central element.
    pub fn central_values(&self, z: &GroupRingElem) -> Result<CentralElem> {
        if !z.is_central() {
            return Err(Error::NotCentral);
        }
        let values = self
            .components
            .iter()
            .map(|comp| {
                let s = z
                    .coeffs()
                    .iter()
                    .zip(&comp.character)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(CycNum::zero(), |acc, (c, chi)| &acc + &chi.scale(c));
                s.scale(&qf(1, comp.degree as i64))
            })
            .collect();
        Ok(CentralElem { values })
    }

    /// Componentwise `v_π`.
    pub fn valuations(&self, c: &CentralElem) -> Vec<Val> {
        self.components.iter().zip(&c.values).map(|(comp, v)| comp.valuation(v)).collect()
    }

    /// Group-ring coordinates of the ζ(Λ′)-lattice `⊕ π_i^{v_i} O_i`; `None` marks a zero
    /// component.
    pub fn central_lattice_rows(&self, vals: &[Option<i64>]) -> Vec<Vec<Rational>> {
        let mut rows = Vec::new();
        for (i, (comp, v)) in self.components.iter().zip(vals).enumerate() {
            let Some(v) = v else { continue };
            let scale = comp.pi_power(*v);
            for b in &comp.integral_basis {
                let mut values = vec![CycNum::zero(); self.len()];
                values[i] = &scale * b;
                rows.push(self.central_element(&CentralElem { values }).coeffs().to_vec());
            }
        }
        rows
    }

    /// Concatenated integral-basis coordinates of a central element.
    pub fn central_coords(&self, c: &CentralElem) -> Vec<Rational> {
        self.components
            .iter()
            .zip(&c.values)
            .flat_map(|(comp, v)| comp.coords(v, self.conductor).expect("value lies in the component field"))
            .collect()
    }

    /// Inverse of `central_coords`.
    pub fn from_central_coords(&self, x: &[Rational]) -> CentralElem {
        let mut values = Vec::with_capacity(self.len());
        let mut pos = 0;
        for comp in &self.components {
            let k = comp.integral_basis.len();
            let v =
                comp.integral_basis.iter().zip(&x[pos..pos + k]).fold(CycNum::zero(), |acc, (b, c)| &acc + &b.scale(c));
            values.push(v);
            pos += k;
        }
        CentralElem { values }
    }

    /// Dimension of the centre, `Σ_i [F_i : Q]`.
    pub fn centre_rank(&self) -> usize {
        self.components.iter().map(|c| c.field_degree()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::q;

    fn data(spec: GroupSpec, p: u64) -> Arc<WedderburnData> {
        wedderburn_data(&Arc::new(FiniteGroup::new(spec).unwrap()), p).unwrap()
    }

    #[test]
    fn component_shapes() {
        let d8 = data(GroupSpec::Dihedral(8), 2);
        assert_eq!(d8.components.iter().map(|c| c.degree).collect::<Vec<_>>(), vec![1, 1, 1, 1, 2]);
        assert!(d8.components.iter().all(|c| c.field_degree() == 1));
        for p in [3, 5, 7] {
            let d = data(GroupSpec::Dihedral(2 * p), p);
            assert_eq!(d.len(), 3);
            assert_eq!(d.components[2].field_degree() as u64, (p - 1) / 2);
        }
        let a4 = data(GroupSpec::Alternating4, 3);
        assert_eq!(
            a4.components.iter().map(|c| (c.degree, c.field_degree())).collect::<Vec<_>>(),
            vec![(1, 1), (1, 2), (3, 1)]
        );
        let q8 = data(GroupSpec::Quaternion8, 2);
        assert_eq!((q8.components[4].matrix_size, q8.components[4].schur_index), (1, 2));
        for d in [&d8, &a4, &q8] {
            let total: usize = d.components.iter().map(|c| c.degree * c.degree * c.field_degree()).sum();
            assert_eq!(total, d.group.order());
        }
    }

    #[test]
    fn split_primes_are_rejected() {
        let g = Arc::new(FiniteGroup::new(GroupSpec::Cyclic(3)).unwrap());
        assert!(matches!(wedderburn_data(&g, 7), Err(Error::UnsupportedField(_))));
        assert!(wedderburn_data(&g, 2).is_ok());
    }

    #[test]
    fn uniformisers_have_unit_valuation() {
        for (spec, p) in [
            (GroupSpec::Dihedral(14), 7),
            (GroupSpec::Dihedral(16), 2),
            (GroupSpec::Cyclic(9), 3),
            (GroupSpec::Alternating4, 3),
            (GroupSpec::Metacyclic { p: 7, q: 3, r: 2 }, 3),
        ] {
            let d = data(spec, p);
            for c in &d.components {
                assert_eq!(c.valuation(&c.uniformizer), Val::Fin(1));
                assert_eq!(c.valuation(&CycNum::from_int(p as i64)), Val::Fin(c.field.ram_index as i64));
                assert_eq!(c.integral_basis.len(), c.field_degree());
            }
        }
    }

    #[test]
    fn central_round_trip() {
        let d = data(GroupSpec::Dihedral(10), 5);
        let z = GroupRingElem::from_terms(&d.group, [("x", q(1)), ("x^4", q(1)), ("1", q(3))]).unwrap();
        let c = d.central_values(&z).unwrap();
        assert_eq!(d.central_element(&c), z);
        let y = GroupRingElem::from_terms(&d.group, [("y", q(1))]).unwrap();
        assert_eq!(d.central_values(&y), Err(Error::NotCentral));
    }
}
