//! Classical Fitting ideals over `Z`, `Z/m` and `Z_(p)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::lattice::{snf_int, snf_local};
use crate::arith::rational::{big_pow, det_rational, is_integer, is_p_integral, is_prime, qi, v_p, Rational};
use crate::error::{Error, Result};
use crate::util::{combinations, with_pool};

/// A commutative base ring whose ideals are all principal with a canonical generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "ring", content = "param", rename_all = "snake_case")]
pub enum CommRing {
    Integers,
    IntegersMod(u64),
    LocalizedIntegers(u64),
}

impl CommRing {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CommRing::IntegersMod(m) if m < 2 => Err(Error::Invalid(format!("modulus {m} < 2"))),
            CommRing::LocalizedIntegers(p) if !is_prime(p) => Err(Error::Invalid(format!("{p} is not prime"))),
            _ => Ok(()),
        }
    }

    /// Whether a rational number represents an element of the ring.
    pub fn contains_value(&self, x: &Rational) -> bool {
        match *self {
            CommRing::Integers | CommRing::IntegersMod(_) => is_integer(x),
            CommRing::LocalizedIntegers(p) => is_p_integral(x, p),
        }
    }

    fn check(&self, x: &Rational) -> Result<()> {
        if self.contains_value(x) {
            Ok(())
        } else {
            Err(Error::NotInRing(format!("{x} in {self}")))
        }
    }

    /// Canonical generator of the ideal generated by `gens`.
    fn normal_form(&self, gens: &[Rational]) -> BigInt {
        match *self {
            CommRing::Integers => gens.iter().fold(BigInt::zero(), |g, x| g.gcd(x.numer())),
            CommRing::IntegersMod(m) => {
                let m = BigInt::from(m);
                let g = gens.iter().fold(m.clone(), |g, x| g.gcd(x.numer()));
                if g == m {
                    BigInt::zero()
                } else {
                    g
                }
            }
            CommRing::LocalizedIntegers(p) => {
                gens.iter().filter_map(|x| v_p(x, p)).min().map_or(BigInt::zero(), |v| big_pow(p, v as u32))
            }
        }
    }
}

impl fmt::Display for CommRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommRing::Integers => write!(f, "Z"),
            CommRing::IntegersMod(m) => write!(f, "Z/{m}Z"),
            CommRing::LocalizedIntegers(p) => write!(f, "Z_({p})"),
        }
    }
}

/// A finitely generated ideal with its canonical single generator.
#[derive(Clone, Debug)]
pub struct IdealFG {
    pub ring: CommRing,
    pub generators: Vec<Rational>,
    normal: BigInt,
}

impl IdealFG {
    pub fn generated(ring: CommRing, generators: Vec<Rational>) -> Result<Self> {
        ring.validate()?;
        for g in &generators {
            ring.check(g)?;
        }
        let normal = ring.normal_form(&generators);
        Ok(IdealFG { ring, generators, normal })
    }

    pub fn principal(ring: CommRing, g: BigInt) -> Self {
        IdealFG::generated(ring, vec![qi(&g)]).expect("integers lie in every supported ring")
    }

    pub fn zero(ring: CommRing) -> Self {
        Self::principal(ring, BigInt::zero())
    }

    pub fn unit(ring: CommRing) -> Self {
        Self::principal(ring, BigInt::one())
    }

    /// The canonical generator: `0` for the zero ideal, `1` for the unit ideal.
    pub fn normal_form(&self) -> &BigInt {
        &self.normal
    }

    pub fn is_zero(&self) -> bool {
        self.normal.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.normal.is_one()
    }

    fn same_ring(&self, other: &IdealFG) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    /// Product ideal, generated by pairwise products of generators.
    pub fn mul(&self, other: &IdealFG) -> Result<IdealFG> {
        self.same_ring(other)?;
        let gens = self.generators.iter().flat_map(|a| other.generators.iter().map(move |b| a * b)).collect();
        IdealFG::generated(self.ring, gens)
    }

    pub fn pow(&self, k: u32) -> IdealFG {
        (0..k).fold(IdealFG::unit(self.ring), |acc, _| acc.mul(self).expect("same ring"))
    }

    pub fn equals(&self, other: &IdealFG) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.normal == other.normal)
    }

    pub fn contains(&self, x: &Rational) -> Result<bool> {
        self.ring.check(x)?;
        if x.is_zero() {
            return Ok(true);
        }
        if self.is_zero() {
            return Ok(false);
        }
        Ok(match self.ring {
            CommRing::Integers | CommRing::IntegersMod(_) => x.numer().is_multiple_of(&self.normal),
            CommRing::LocalizedIntegers(p) => {
                v_p(x, p).unwrap() >= crate::arith::rational::v_p_int(&self.normal, p).unwrap()
            }
        })
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &IdealFG) -> Result<bool> {
        self.same_ring(other)?;
        self.contains(&qi(&other.normal))
    }
}

impl PartialEq for IdealFG {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.normal == other.normal
    }
}

impl Eq for IdealFG {}

impl fmt::Display for IdealFG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) in {}", self.normal, self.ring)
    }
}

pub fn ideal_mul(x: &IdealFG, y: &IdealFG) -> Result<IdealFG> {
    x.mul(y)
}

pub fn ideal_eq(x: &IdealFG, y: &IdealFG) -> Result<bool> {
    x.equals(y)
}

pub fn ideal_contains(x: &IdealFG, element: &Rational) -> Result<bool> {
    x.contains(element)
}

/// A presentation `R^a → R^b ↠ M`: an `a × b` relation matrix acting on row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ring: CommRing,
    pub a: usize,
    pub b: usize,
    pub matrix: Vec<Vec<Rational>>,
}

impl Presentation {
    pub fn new(ring: CommRing, a: usize, b: usize, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        ring.validate()?;
        if matrix.len() != a || matrix.iter().any(|r| r.len() != b) {
            return Err(Error::Dimension(format!("matrix is not {a}x{b}")));
        }
        for x in matrix.iter().flatten() {
            ring.check(x)?;
        }
        Ok(Presentation { ring, a, b, matrix })
    }

    pub fn from_ints(ring: CommRing, rows: &[Vec<i64>]) -> Result<Self> {
        let b = rows.first().map_or(0, |r| r.len());
        let m = rows.iter().map(|r| r.iter().map(|&x| crate::arith::rational::q(x)).collect()).collect();
        Self::new(ring, rows.len(), b, m)
    }

    fn invariant_factors(&self) -> Vec<BigInt> {
        match self.ring {
            CommRing::Integers | CommRing::IntegersMod(_) => {
                let ints: Vec<Vec<BigInt>> =
                    self.matrix.iter().map(|r| r.iter().map(|x| x.numer().clone()).collect()).collect();
                snf_int(&ints)
            }
            CommRing::LocalizedIntegers(p) => snf_local(&self.matrix, p),
        }
    }
}

/// The ideal generated by all `b × b` minors (zero when `a < b`), via Smith form.
pub fn fitting_ideal(pres: &Presentation) -> IdealFG {
    if pres.a < pres.b {
        return IdealFG::zero(pres.ring);
    }
    if pres.b == 0 {
        return IdealFG::unit(pres.ring);
    }
    let d = pres.invariant_factors();
    let prod = d.iter().take(pres.b).fold(BigInt::one(), |acc, x| acc * x);
    IdealFG::principal(pres.ring, prod)
}

/// Fitting ideal from the explicit list of `b × b` minors, lexicographic in row subsets.
pub fn minors_ideal(pres: &Presentation) -> IdealFG {
    if pres.a < pres.b {
        return IdealFG::zero(pres.ring);
    }
    let subsets = combinations(pres.a, pres.b);
    let minors: Vec<Rational> = with_pool(|| {
        subsets
            .par_iter()
            .map(|rows| {
                let sub: Vec<Vec<Rational>> = rows.iter().map(|&i| pres.matrix[i].clone()).collect();
                det_rational(&sub)
            })
            .collect()
    });
    IdealFG::generated(pres.ring, minors).expect("minors lie in the ring")
}

/// Annihilator of the cokernel.
pub fn annihilator_ideal(pres: &Presentation) -> IdealFG {
    if pres.b == 0 {
        return IdealFG::unit(pres.ring);
    }
    let stacked = match pres.ring {
        CommRing::IntegersMod(m) => {
            let mut rows = pres.matrix.clone();
            for j in 0..pres.b {
                let mut r = vec![Rational::zero(); pres.b];
                r[j] = crate::arith::rational::q(m as i64);
                rows.push(r);
            }
            Presentation { ring: pres.ring, a: rows.len(), b: pres.b, matrix: rows }
        }
        _ => pres.clone(),
    };
    if stacked.a < stacked.b {
        return IdealFG::zero(pres.ring);
    }
    let d = stacked.invariant_factors();
    let last = d[pres.b - 1].abs();
    IdealFG::principal(pres.ring, last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::q;

    #[test]
    fn fitting_examples() {
        let m = Presentation::from_ints(
            CommRing::Integers,
            &[vec![2, 0, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 2]],
        )
        .unwrap();
        assert_eq!(fitting_ideal(&m).normal_form(), &BigInt::from(16));
        let six = Presentation::from_ints(CommRing::Integers, &[vec![6]]).unwrap();
        assert_eq!(fitting_ideal(&six).normal_form(), &BigInt::from(6));
        let wide = Presentation::from_ints(CommRing::Integers, &[vec![0, 0]]).unwrap();
        assert!(fitting_ideal(&wide).is_zero());
        assert_eq!(minors_ideal(&m), fitting_ideal(&m));
    }

    #[test]
    fn ideal_arithmetic() {
        let z = CommRing::Integers;
        let a = IdealFG::principal(z, 2.into());
        let b = IdealFG::principal(z, 3.into());
        assert_eq!(ideal_mul(&a, &b).unwrap().normal_form(), &BigInt::from(6));
        assert_eq!(ideal_mul(&IdealFG::unit(z), &b).unwrap(), b);
        let m8 = CommRing::IntegersMod(8);
        let x = IdealFG::principal(m8, 2.into());
        let y = IdealFG::principal(m8, 6.into());
        assert_eq!(ideal_mul(&x, &y).unwrap().normal_form(), &BigInt::from(4));
        assert!(ideal_contains(&a, &q(10)).unwrap());
        assert!(!ideal_contains(&a, &q(3)).unwrap());
        let loc = IdealFG::principal(CommRing::LocalizedIntegers(2), 4.into());
        assert!(loc.contains(&Rational::new(12.into(), 5.into())).unwrap());
        assert!(matches!(ideal_eq(&a, &loc), Err(Error::RingMismatch(_))));
        assert!(IdealFG::zero(z) != IdealFG::unit(z));
    }

    #[test]
    fn annihilators() {
        let m = Presentation::from_ints(CommRing::Integers, &[vec![2, 0], vec![0, 6]]).unwrap();
        assert_eq!(annihilator_ideal(&m).normal_form(), &BigInt::from(6));
        let free = Presentation::from_ints(CommRing::Integers, &[vec![2, 0]]).unwrap();
        assert!(annihilator_ideal(&free).is_zero());
        let modm = Presentation::from_ints(CommRing::IntegersMod(4), &[vec![0]]).unwrap();
        assert_eq!(annihilator_ideal(&modm).normal_form(), &BigInt::from(0));
        let modm = Presentation::from_ints(CommRing::IntegersMod(4), &[vec![2]]).unwrap();
        assert_eq!(annihilator_ideal(&modm).normal_form(), &BigInt::from(2));
    }

    #[test]
    fn modular_and_local_rings() {
        let p = Presentation::from_ints(CommRing::IntegersMod(8), &[vec![12]]).unwrap();
        assert_eq!(fitting_ideal(&p).normal_form(), &BigInt::from(4));
        let p = Presentation::from_ints(CommRing::LocalizedIntegers(3), &[vec![12, 0], vec![0, 5]]).unwrap();
        assert_eq!(fitting_ideal(&p).normal_form(), &BigInt::from(3));
        assert!(Presentation::new(CommRing::Integers, 1, 1, vec![vec![Rational::new(1.into(), 2.into())]]).is_err());
    }
}
