//! p-adic valuations on cyclotomic numbers and local data of abelian p-adic fields.
//!
//! A value is only ever valued inside a field with exactly one prime above `p`, where the
//! valuation is read off the absolute norm.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::cyclo::{unit_group, CycNum};
use super::rational::{euler_phi, q, split_prime_part, v_p, Rational};
use crate::error::{Error, Result};

/// A valuation value: a finite integer or `+∞` (the valuation of zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Fin(i64),
    Inf,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Fin(v) => Some(v),
            Val::Inf => None,
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Fin(a), Val::Fin(b)) => a.cmp(b),
            (Val::Fin(_), Val::Inf) => Ordering::Less,
            (Val::Inf, Val::Fin(_)) => Ordering::Greater,
            (Val::Inf, Val::Inf) => Ordering::Equal,
        }
    }
}

impl std::ops::Add for Val {
    type Output = Val;
    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a + b),
            _ => Val::Inf,
        }
    }
}

/// Finite values serialise as integers, `+∞` as `{"zero": true}`.
impl serde::Serialize for Val {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            Val::Fin(v) => s.serialize_i64(*v),
            Val::Inf => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("zero", &true)?;
                m.end()
            }
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Fin(v) => write!(f, "{v}"),
            Val::Inf => write!(f, "inf"),
        }
    }
}

/// The decomposition group of `p` in `Gal(Q(ζ_e)/Q) = (Z/e)^×`: residues that are a power
/// of `p` on the prime-to-p part and arbitrary on the p-part.
pub fn decomposition_group(e: u64, p: u64) -> Vec<u64> {
    let (_, m) = split_prime_part(e, p);
    let mut powers = vec![1 % m.max(1)];
    if m > 1 {
        let mut x = p % m;
        while x != 1 % m {
            powers.push(x);
            x = x * p % m;
        }
    }
    unit_group(e).into_iter().filter(|k| powers.contains(&(k % m.max(1)))).collect()
}

/// The inertia group: residues congruent to 1 on the prime-to-p part.
pub fn inertia_group(e: u64, p: u64) -> Vec<u64> {
    let (_, m) = split_prime_part(e, p);
    unit_group(e).into_iter().filter(|k| k % m == 1 % m).collect()
}

/// Lower ramification group `G_u` of `Q_p(ζ_e)/Q_p`.
pub fn ramification_group(e: u64, p: u64, u: u64) -> Vec<u64> {
    let inertia = inertia_group(e, p);
    if u == 0 {
        return inertia;
    }
    let (a, _) = split_prime_part(e, p);
    // p^{v-1} <= u <= p^v - 1
    let mut v = 0u32;
    while p.pow(v) <= u {
        v += 1;
    }
    if v > a {
        return vec![1];
    }
    let pv = p.pow(v);
    inertia.into_iter().filter(|k| k % pv == 1 % pv).collect()
}

fn distinct_images(a: &CycNum, keys: &[u64]) -> Vec<CycNum> {
    let mut out: Vec<CycNum> = Vec::new();
    for &k in keys {
        let b = a.sigma(k);
        if !out.contains(&b) {
            out.push(b);
        }
    }
    out
}

/// True when the field generated by `a` has a single prime above `p`.
pub fn single_prime(a: &CycNum, p: u64) -> bool {
    let e = a.conductor();
    if a.is_rational() {
        return true;
    }
    let local = distinct_images(a, &decomposition_group(e, p));
    let global = distinct_images(a, &unit_group(e));
    local.len() == global.len()
}

/// Valuation normalised by `v(p) = 1`, without the single-prime check.
pub fn normalized_valuation_unchecked(a: &CycNum, p: u64) -> Option<Rational> {
    if a.is_zero() {
        return None;
    }
    if let Some(r) = a.to_rational() {
        return v_p(&r, p).map(q);
    }
    let n = a.norm();
    let phi = euler_phi(a.conductor()) as i64;
    Some(Rational::new(v_p(&n, p).unwrap().into(), phi.into()))
}

/// Valuation normalised by `v(p) = 1`; `None` for zero.
pub fn normalized_valuation(a: &CycNum, p: u64) -> Result<Option<Rational>> {
    if !single_prime(a, p) {
        return Err(Error::UnsupportedField(format!("Q({a}) has more than one prime above {p}")));
    }
    Ok(normalized_valuation_unchecked(a, p))
}

/// A prime of a field with a single prime above `p`, given by its ramification index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeData {
    pub p: u64,
    pub ram_index: u64,
}

impl PrimeData {
    pub fn rational(p: u64) -> Self {
        PrimeData { p, ram_index: 1 }
    }

    /// The prime above `p` in `Q(ζ_e)`; requires it to be unique.
    pub fn cyclotomic(p: u64, e: u64) -> Result<Self> {
        let z = CycNum::zeta(e, 1);
        if !single_prime(&z, p) {
            return Err(Error::UnsupportedField(format!("Q(ζ_{e}) has more than one prime above {p}")));
        }
        let (a, _) = split_prime_part(e, p);
        Ok(PrimeData { p, ram_index: euler_phi(p.pow(a)) })
    }
}

/// The valuation `v_π` attached to `prime`, normalised so that a uniformiser has value 1.
pub fn p_valuation(a: &CycNum, prime: &PrimeData) -> Result<Val> {
    let Some(nu) = normalized_valuation(a, prime.p)? else {
        return Ok(Val::Inf);
    };
    scale_to_pi(&nu, prime.ram_index)
}

pub(crate) fn scale_to_pi(nu: &Rational, ram_index: u64) -> Result<Val> {
    let v = nu * q(ram_index as i64);
    if !v.is_integer() {
        return Err(Error::Invalid(format!("normalised valuation {nu} is not a multiple of 1/{ram_index}")));
    }
    Ok(Val::Fin(v.to_integer().try_into().expect("valuation fits in i64")))
}

/// Local invariants of the completion of `Q(ζ_e)^S` at its prime above `p`, where `S` is a
/// subgroup of the decomposition group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalField {
    pub p: u64,
    /// Conductor of the ambient cyclotomic field.
    pub conductor: u64,
    /// The fixing group, as exponents of `(Z/conductor)^×`.
    pub stabilizer: Vec<u64>,
    pub degree: u64,
    pub ram_index: u64,
    pub residue_degree: u64,
    /// `v_π` of the different of the local field over `Q_p`.
    pub different: i64,
}

impl LocalField {
    pub fn new(e: u64, p: u64, stabilizer: &[u64]) -> Self {
        let dec = decomposition_group(e, p);
        debug_assert!(stabilizer.iter().all(|k| dec.contains(k)));
        let inertia = inertia_group(e, p);
        let s_inert = stabilizer.iter().filter(|k| inertia.contains(k)).count() as u64;
        let degree = dec.len() as u64 / stabilizer.len() as u64;
        let ram_index = inertia.len() as u64 / s_inert;
        let different = different_exponent(e, p, stabilizer);
        LocalField {
            p,
            conductor: e,
            stabilizer: stabilizer.to_vec(),
            degree,
            ram_index,
            residue_degree: degree / ram_index,
            different,
        }
    }

    pub fn prime(&self) -> PrimeData {
        PrimeData { p: self.p, ram_index: self.ram_index }
    }

    /// `v_π` of a nonzero rational.
    pub fn rational_valuation(&self, x: &Rational) -> Val {
        match v_p(x, self.p) {
            None => Val::Inf,
            Some(v) => Val::Fin(v * self.ram_index as i64),
        }
    }

    /// `v_π` of an element of the field (assumed to lie in it).
    pub fn valuation(&self, a: &CycNum) -> Result<Val> {
        match normalized_valuation_unchecked(a, self.p) {
            None => Ok(Val::Inf),
            Some(nu) => scale_to_pi(&nu, self.ram_index),
        }
    }
}

/// `Σ_u (|S ∩ G_u| - 1)`, the valuation in `Q_p(ζ_e)` of the different of `Q_p(ζ_e)/Q_p(ζ_e)^S`.
fn relative_different(e: u64, p: u64, s: &[u64]) -> i64 {
    let mut total = 0i64;
    let mut u = 0u64;
    loop {
        let g = ramification_group(e, p, u);
        let n = g.iter().filter(|k| s.contains(k)).count() as i64;
        if g.len() == 1 {
            break;
        }
        total += n - 1;
        u += 1;
    }
    total
}

/// Exponent of the different of `Q_p(ζ_e)^S / Q_p` in the field's own normalisation, by
/// Hilbert's formula and transitivity in the tower `Q_p ⊂ Q_p(ζ_e)^S ⊂ Q_p(ζ_e)`.
pub fn different_exponent(e: u64, p: u64, s: &[u64]) -> i64 {
    let dec = decomposition_group(e, p);
    let top = relative_different(e, p, &dec);
    let rel = relative_different(e, p, s);
    let inertia = inertia_group(e, p);
    let e_rel = s.iter().filter(|k| inertia.contains(k)).count() as i64;
    let diff = top - rel;
    assert!(diff % e_rel == 0, "different exponent must be integral");
    diff / e_rel
}

/// Convenience: valuation of an integer-valued rational in `Q_p`.
pub fn rational_p_valuation(x: &Rational, p: u64) -> Val {
    if x.is_zero() {
        Val::Inf
    } else {
        Val::Fin(v_p(x, p).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_valuation() {
        assert_eq!(p_valuation(&CycNum::from_int(8), &PrimeData::rational(2)).unwrap(), Val::Fin(3));
        assert_eq!(p_valuation(&CycNum::zero(), &PrimeData::rational(2)).unwrap(), Val::Inf);
    }

    #[test]
    fn totally_ramified_cyclotomic() {
        for p in [3u64, 5, 7] {
            let pd = PrimeData::cyclotomic(p, p).unwrap();
            let x = &CycNum::zeta(p, 1) - &CycNum::one();
            assert_eq!(p_valuation(&x, &pd).unwrap(), Val::Fin(1));
            assert_eq!(p_valuation(&CycNum::from_int(p as i64), &pd).unwrap(), Val::Fin(p as i64 - 1));
        }
    }

    #[test]
    fn split_primes_are_rejected() {
        // 2 has order 3 modulo 7, so Q(ζ_7) has two primes above 2.
        assert!(matches!(PrimeData::cyclotomic(2, 7), Err(Error::UnsupportedField(_))));
        let z = CycNum::zeta(7, 1);
        assert!(normalized_valuation(&z, 2).is_err());
        // ζ_7 + ζ_7^{-1} generates the cubic subfield, where 2 is inert.
        let t = &z + &z.conj();
        assert_eq!(normalized_valuation(&t, 2).unwrap(), Some(q(0)));
    }

    #[test]
    fn decomposition_groups() {
        assert_eq!(decomposition_group(7, 2), vec![1, 2, 4]);
        assert_eq!(decomposition_group(21, 3).len(), 12);
        assert_eq!(decomposition_group(8, 2), vec![1, 3, 5, 7]);
        assert_eq!(inertia_group(21, 3), vec![1, 8]);
    }

    #[test]
    fn local_field_invariants() {
        let f = LocalField::new(5, 5, &[1]);
        assert_eq!((f.degree, f.ram_index, f.residue_degree, f.different), (4, 4, 1, 3));
        let f = LocalField::new(7, 2, &[1]);
        assert_eq!((f.degree, f.ram_index, f.residue_degree, f.different), (3, 1, 3, 0));
        let f = LocalField::new(8, 2, &[1, 7]);
        assert_eq!((f.degree, f.ram_index, f.different), (2, 2, 3));
        let f = LocalField::new(8, 2, &[1, 3, 5, 7]);
        assert_eq!((f.degree, f.ram_index, f.different), (1, 1, 0));
        let f = LocalField::new(9, 3, &[1]);
        assert_eq!(f.different, 9);
    }
}
