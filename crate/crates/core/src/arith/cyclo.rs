//! Elements of cyclotomic fields `Q(ζ_e)` in the power basis modulo `Φ_e`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{euler_phi, gcd_u64, lcm_u64, qi, Rational};
use crate::error::{Error, Result};

fn poly_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low to high) of the cyclotomic polynomial `Φ_n`.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_n = (x^n - 1) / ∏_{d | n, d < n} Φ_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_poly(d));
        }
    }
    let out = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, out.clone());
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let da = rem.len() - 1;
    let mut quo = vec![BigInt::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quo
}

/// Reduces an integer polynomial in `ζ_e` to the canonical representative of degree `< φ(e)`.
fn reduce(mut poly: Vec<BigInt>, e: u64) -> Vec<BigInt> {
    let e_us = e as usize;
    if poly.len() > e_us {
        for k in e_us..poly.len() {
            let c = std::mem::take(&mut poly[k]);
            if !c.is_zero() {
                poly[k % e_us] += c;
            }
        }
        poly.truncate(e_us);
    }
    let phi = euler_phi(e) as usize;
    if poly.len() > phi {
        let f = cyclotomic_poly(e);
        for deg in (phi..poly.len()).rev() {
            let c = std::mem::take(&mut poly[deg]);
            if c.is_zero() {
                continue;
            }
            for j in 0..phi {
                poly[deg - phi + j] -= &c * &f[j];
            }
        }
    }
    poly.resize(phi, BigInt::zero());
    poly
}

/// An element of `Q(ζ_e)`: integer numerators over a common positive denominator.
#[derive(Clone, Debug)]
pub struct CycNum {
    e: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn from_parts(e: u64, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycNum { e, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in self.num.iter_mut() {
                *c = -c.clone();
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    /// Builds `Σ coeffs[j] ζ_e^j`; the input may have any length and is reduced mod `Φ_e`.
    pub fn new(e: u64, coeffs: &[Rational]) -> Self {
        assert!(e >= 1, "conductor must be positive");
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::from_parts(e, reduce(num, e), den)
    }

    pub fn zero() -> Self {
        CycNum { e: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        CycNum { e: 1, num: vec![BigInt::from(n)], den: BigInt::one() }
    }

    pub fn from_rational(x: &Rational) -> Self {
        CycNum { e: 1, num: vec![x.numer().clone()], den: x.denom().clone() }
    }

    /// `ζ_e^k` for any integer `k`.
    pub fn zeta(e: u64, k: i64) -> Self {
        let k = k.rem_euclid(e as i64) as usize;
        let mut poly = vec![BigInt::zero(); k + 1];
        poly[k] = BigInt::one();
        Self::from_parts(e, reduce(poly, e), BigInt::one())
    }

    pub fn conductor(&self) -> u64 {
        self.e
    }

    /// Power-basis coordinates, length `φ(e)`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Re-expresses the element in `Q(ζ_l)`; requires `e | l`.
    pub fn lift(&self, l: u64) -> Self {
        if l == self.e {
            return self.clone();
        }
        assert!(l.is_multiple_of(self.e), "cannot lift conductor {} to {}", self.e, l);
        let step = (l / self.e) as usize;
        let mut poly = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + 1];
        for (j, c) in self.num.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Self::from_parts(l, reduce(poly, l), self.den.clone())
    }

    fn common(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        if a.e == b.e {
            (a.clone(), b.clone())
        } else {
            let l = lcm_u64(a.e, b.e);
            (a.lift(l), b.lift(l))
        }
    }

    /// The automorphism `ζ_e ↦ ζ_e^k`.
    pub fn galois_apply(&self, k: i64) -> Result<Self> {
        let e = self.e;
        let kk = k.rem_euclid(e as i64) as u64;
        if gcd_u64(kk, e) != 1 && e > 1 {
            return Err(Error::NotCoprime { k, e });
        }
        if e <= 2 || self.is_rational() {
            return Ok(self.clone());
        }
        let mut poly = vec![BigInt::zero(); e as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                poly[(j as u64 * kk % e) as usize] += c;
            }
        }
        Ok(Self::from_parts(e, reduce(poly, e), self.den.clone()))
    }

    /// `galois_apply` for exponents already known to be units.
    pub fn sigma(&self, k: u64) -> Self {
        self.galois_apply(k as i64).expect("exponent must be a unit")
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.e, num, &self.den * r.denom())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Units of `Z/e`, the exponents of the Galois group.
    pub fn galois_exponents(&self) -> Vec<u64> {
        unit_group(self.e)
    }

    /// Absolute norm to `Q`.
    pub fn norm(&self) -> Rational {
        if self.is_rational() {
            return self.to_rational().unwrap();
        }
        let mut acc = Self::one();
        for k in unit_group(self.e) {
            acc = &acc * &self.sigma(k);
        }
        acc.to_rational().expect("norm must be rational")
    }

    /// Absolute trace to `Q`.
    pub fn trace(&self) -> Rational {
        let mut acc = Self::zero();
        for k in unit_group(self.e) {
            acc = &acc + &self.sigma(k);
        }
        acc.to_rational().expect("trace must be rational")
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Self::from_rational(&r.recip()));
        }
        let mut acc = Self::one();
        for k in unit_group(self.e).into_iter().filter(|&k| k != 1) {
            acc = &acc * &self.sigma(k);
        }
        let n = (&acc * self).to_rational().expect("norm must be rational");
        Some(acc.scale(&n.recip()))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is always a unit")
    }
}

/// The units of `Z/e` in increasing order.
pub fn unit_group(e: u64) -> Vec<u64> {
    if e == 1 {
        return vec![1];
    }
    (1..e).filter(|&k| gcd_u64(k, e) == 1).collect()
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.e == other.e {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = super::rational::format_rational(c);
            terms.push(match j {
                0 => cs,
                _ => format!("({cs})*z{}^{j}", self.e),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::common(self, rhs);
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return CycNum::from_parts(a.e, num, a.den);
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        CycNum::from_parts(a.e, num, &a.den * &b.den)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { e: self.e, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero();
        }
        if self.e == 1 {
            return rhs.scale(&Rational::new(self.num[0].clone(), self.den.clone()));
        }
        if rhs.e == 1 {
            return self.scale(&Rational::new(rhs.num[0].clone(), rhs.den.clone()));
        }
        let (a, b) = CycNum::common(self, rhs);
        let mut prod = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CycNum::from_parts(a.e, reduce(prod, a.e), &a.den * &b.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

impl From<&Rational> for CycNum {
    fn from(r: &Rational) -> Self {
        CycNum::from_rational(r)
    }
}

/// `ζ_e^j` coordinates helper used by tests and integral-basis code.
pub fn power_basis_vector(x: &CycNum, e: u64) -> Vec<Rational> {
    x.lift(e).coeffs()
}

/// Inverse of `power_basis_vector`.
pub fn from_power_basis(e: u64, v: &[Rational]) -> CycNum {
    CycNum::new(e, v)
}

pub fn int_cyc(n: &BigInt) -> CycNum {
    CycNum::from_rational(&qi(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::q;

    #[test]
    fn cyclotomic_polynomials() {
        let p = cyclotomic_poly(12);
        let expect: Vec<BigInt> = [1, 0, -1, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(*p, expect);
        assert_eq!(cyclotomic_poly(1).len(), 2);
        assert_eq!(cyclotomic_poly(21).len(), 13);
    }

    #[test]
    fn zeta_four_squared_is_minus_one() {
        let i = CycNum::zeta(4, 1);
        assert_eq!(&i * &i, CycNum::from_int(-1));
    }

    #[test]
    fn identity_and_zero() {
        let x = CycNum::new(5, &[q(1), q(2), q(-3), q(4)]);
        assert_eq!(&x * &CycNum::one(), x);
        assert!((&x - &x).is_zero());
        assert_eq!(x.coeffs().len(), 4);
    }

    #[test]
    fn real_cyclotomic_square() {
        for p in [3u64, 5, 7, 11] {
            let t = &CycNum::zeta(p, 1) + &CycNum::zeta(p, -1);
            let expect = &(&CycNum::zeta(p, 2) + &CycNum::zeta(p, -2)) + &CycNum::from_int(2);
            assert_eq!(&t * &t, expect);
        }
    }

    #[test]
    fn galois_examples() {
        let z = CycNum::zeta(3, 1);
        let z2 = z.galois_apply(2).unwrap();
        assert_eq!(z2, &CycNum::from_int(-1) - &z);
        assert_eq!(CycNum::from_int(7).galois_apply(2).unwrap(), CycNum::from_int(7));
        let a = CycNum::new(5, &[q(1), q(-2), q(3), q(5)]);
        let twice = a.galois_apply(2).unwrap().galois_apply(2).unwrap();
        assert_eq!(twice, a.galois_apply(4).unwrap());
        assert!(matches!(z.lift(6).galois_apply(3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn mixed_conductors_lift_to_lcm() {
        let i = CycNum::zeta(4, 1);
        let w = CycNum::zeta(3, 1);
        let s = &i + &w;
        assert_eq!(s.conductor(), 12);
        assert_eq!(CycNum::zeta(6, 2), w);
        assert_eq!(CycNum::zeta(12, 3), i);
    }

    #[test]
    fn norm_trace_inverse() {
        let p = 5;
        let x = &CycNum::zeta(p, 1) - &CycNum::one();
        assert_eq!(x.norm(), q(5));
        assert_eq!(CycNum::zeta(7, 1).trace(), q(-1));
        let y = CycNum::new(7, &[q(2), q(1), q(0), q(-1)]);
        assert!((&y * &y.inverse().unwrap()).is_one());
        assert!(CycNum::zero().inverse().is_none());
    }
}
