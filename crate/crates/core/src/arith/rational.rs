//! Rational numbers, small-integer number theory and p-adic helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number with a positive, coprime denominator.
pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Exponent of `p` in a nonzero integer; `None` for zero.
pub fn v_p_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (quo, rem) = m.div_rem(&pb);
        if !rem.is_zero() {
            return Some(v);
        }
        m = quo;
        v += 1;
    }
}

/// Exponent of `p` in a nonzero rational; `None` for zero.
pub fn v_p(x: &Rational, p: u64) -> Option<i64> {
    let a = v_p_int(x.numer(), p)?;
    let b = v_p_int(x.denom(), p).unwrap_or(0);
    Some(a - b)
}

pub fn is_p_integral(x: &Rational, p: u64) -> bool {
    !x.denom().is_multiple_of(&BigInt::from(p))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// The residue of a p-integral rational modulo `modulus` (a power of p), in `[0, modulus)`.
pub fn residue(x: &Rational, modulus: &BigInt) -> BigInt {
    let d = x.denom().mod_floor(modulus);
    let inv = mod_inverse(&d, modulus).expect("denominator must be a unit");
    (x.numer() * inv).mod_floor(modulus)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Schema(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        None => Ok(qi(&s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation in increasing order of primes.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut k = 0;
        while n.is_multiple_of(d) {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Splits `n = p^a * m` with `p ∤ m`.
pub fn split_prime_part(n: u64, p: u64) -> (u32, u64) {
    let mut a = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        a += 1;
    }
    (a, m)
}

pub fn pow_u64(b: u64, e: u32) -> u64 {
    b.pow(e)
}

pub fn big_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `p^e` as a rational; negative exponents allowed.
pub fn rational_pow(p: u64, e: i64) -> Rational {
    if e >= 0 {
        qi(&big_pow(p, e as u32))
    } else {
        Rational::new(BigInt::one(), big_pow(p, (-e) as u32))
    }
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

/// Determinant of a square rational matrix by fraction-free elimination.
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = q(1);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return q(0);
        };
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        let pv = a[c][c].clone();
        det *= &pv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Rank of a rational matrix.
pub fn rank_rational(m: &[Vec<Rational>]) -> usize {
    echelon_rational(m).len()
}

/// Reduced row echelon form over the rationals (nonzero rows only).
pub fn echelon_rational(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let inv = a[r][c].recip();
        for k in 0..cols {
            a[r][k] = &a[r][k] * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Solves `x · rows = target` over the rationals when `rows` are independent.
pub fn solve_left_rational(rows: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = rows.len();
    let n = target.len();
    // Work on the transpose: columns are the unknowns.
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|c| {
            let mut row: Vec<Rational> = rows.iter().map(|r| r[c].clone()).collect();
            row.push(target[c].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(piv) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=k {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![q(0); k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][k].clone();
    }
    Some(x)
}
