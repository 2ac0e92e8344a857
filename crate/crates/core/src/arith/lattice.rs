//! Hermite and Smith normal forms over `Z` and `Z_(p)`, and lattices spanned by rational rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{big_pow, det_rational, is_integer, is_p_integral, q, qi, rank_rational, v_p, Rational};
use crate::error::{Error, Result};

/// The coefficient ring of a normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Integers,
    /// `Z` localised at a prime.
    Local(u64),
}

fn check_entries(m: &[Vec<Rational>], base: Base) -> Result<()> {
    for x in m.iter().flatten() {
        let ok = match base {
            Base::Integers => is_integer(x),
            Base::Local(p) => is_p_integral(x, p),
        };
        if !ok {
            return Err(Error::NotInRing(format!("{x} in {base:?}")));
        }
    }
    Ok(())
}

/// The representative of `s` modulo `Z_(p)` of the form `r / p^k` with `0 ≤ r < p^k`.
fn frac_local(s: &Rational, p: u64) -> Rational {
    let k = super::rational::v_p_int(s.denom(), p).unwrap_or(0);
    if k == 0 {
        return q(0);
    }
    let pk = big_pow(p, k as u32);
    let t = s * qi(&pk);
    Rational::new(super::rational::residue(&t, &pk), pk)
}

/// Echelon form over `Z_(p)` with transform: returns `(H, T)` with `H = T·rows`, `H` having
/// only nonzero rows. Pivots are normalised to `p^v` and entries above pivots are reduced to
/// canonical residues, so `H` is unique for the lattice spanned by `rows`.
pub fn hnf_local_with_transform(rows: &[Vec<Rational>], p: u64) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let k = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut w: Vec<Vec<Rational>> = rows.to_vec();
    let mut u: Vec<Vec<Rational>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == k {
            break;
        }
        let mut best: Option<(usize, i64)> = None;
        for (i, row) in w.iter().enumerate().skip(r) {
            if let Some(v) = v_p(&row[c], p) {
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
        }
        let Some((piv, v)) = best else { continue };
        w.swap(r, piv);
        u.swap(r, piv);
        for i in r + 1..k {
            if w[i][c].is_zero() {
                continue;
            }
            let f = &w[i][c] / &w[r][c];
            axpy(&mut w, i, r, &f);
            axpy(&mut u, i, r, &f);
        }
        let pv = super::rational::rational_pow(p, v);
        let unit = &pv / &w[r][c];
        for x in w[r].iter_mut().chain(u[r].iter_mut()) {
            *x = &*x * &unit;
        }
        for i in 0..r {
            if w[i][c].is_zero() {
                continue;
            }
            let s = &w[i][c] / &pv;
            let f = &s - &frac_local(&s, p);
            if f.is_zero() {
                continue;
            }
            axpy(&mut w, i, r, &f);
            axpy(&mut u, i, r, &f);
        }
        r += 1;
    }
    w.truncate(r);
    u.truncate(r);
    (w, u)
}

/// `m[i] -= f * m[j]`.
fn axpy(m: &mut [Vec<Rational>], i: usize, j: usize, f: &Rational) {
    let (src, dst) = if i < j {
        let (a, b) = m.split_at_mut(j);
        (&b[0], &mut a[i])
    } else {
        let (a, b) = m.split_at_mut(i);
        (&a[j], &mut b[0])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *d -= f * s;
        }
    }
}

/// Echelon basis of the `Z_(p)`-span of `rows`.
pub fn hnf_local(rows: &[Vec<Rational>], p: u64) -> Vec<Vec<Rational>> {
    hnf_local_with_transform(rows, p).0
}

/// Hermite normal form of an integer matrix: pivots move left to right, each pivot is the
/// positive gcd of its column below, and entries above a pivot lie in `[0, pivot)`.
pub fn hnf_int(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let k = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut w = rows.to_vec();
    let mut r = 0;
    for c in 0..ncols {
        if r == k {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..k {
                if !w[i][c].is_zero() && best.is_none_or(|b| w[i][c].abs() < w[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(piv) = best else { break };
            w.swap(r, piv);
            let mut clean = true;
            for i in r + 1..k {
                if w[i][c].is_zero() {
                    continue;
                }
                let f = w[i][c].div_floor(&w[r][c]);
                let src = w[r].clone();
                for (d, s) in w[i].iter_mut().zip(&src) {
                    *d -= &f * s;
                }
                if !w[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r >= k || w[r][c].is_zero() {
            continue;
        }
        if w[r][c].is_negative() {
            for x in w[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let f = w[i][c].div_floor(&w[r][c]);
            if f.is_zero() {
                continue;
            }
            let src = w[r].clone();
            for (d, s) in w[i].iter_mut().zip(&src) {
                *d -= &f * s;
            }
        }
        r += 1;
    }
    w.truncate(r);
    w
}

/// Canonical row-reduced form over the chosen base ring (zero rows dropped).
pub fn hnf(m: &[Vec<Rational>], base: Base) -> Result<Vec<Vec<Rational>>> {
    check_entries(m, base)?;
    Ok(match base {
        Base::Local(p) => hnf_local(m, p),
        Base::Integers => {
            let ints: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|x| x.numer().clone()).collect()).collect();
            hnf_int(&ints).into_iter().map(|r| r.iter().map(qi).collect()).collect()
        }
    })
}

/// Smith invariant factors over `Z`, length `min(rows, cols)`, zeros last.
pub fn snf_int(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let n = rows.min(cols);
    let mut a = m.to_vec();
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        // move the smallest nonzero entry of the trailing block to (t, t)
        let Some((i0, j0)) = min_entry(&a, t..rows, t..cols) else {
            break;
        };
        a.swap(t, i0);
        for row in a.iter_mut() {
            row.swap(t, j0);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let f = a[i][t].div_floor(&a[t][t]);
                let src = a[t].clone();
                for (d, s) in a[i].iter_mut().zip(&src).skip(t) {
                    *d -= &f * s;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let f = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let s = row[t].clone();
                    row[j] -= &f * s;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                let cand_col = (t..rows).filter(|&i| !a[i][t].is_zero()).map(|i| (i, t));
                let cand_row = (t..cols).filter(|&j| !a[t][j].is_zero()).map(|j| (t, j));
                let (i1, j1) =
                    cand_col.chain(cand_row).min_by(|x, y| a[x.0][x.1].abs().cmp(&a[y.0][y.1].abs())).unwrap();
                a.swap(t, i1);
                for row in a.iter_mut() {
                    row.swap(t, j1);
                }
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let src = a[i].clone();
                    for (d, s) in a[t].iter_mut().zip(&src) {
                        *d += s;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out.resize(n, BigInt::zero());
    out
}

fn min_entry(a: &[Vec<BigInt>], rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith invariant factors over `Z_(p)`, each `p^v` or `0`.
pub fn snf_local(m: &[Vec<Rational>], p: u64) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let n = rows.min(cols);
    let mut a = m.to_vec();
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        let mut best: Option<(usize, usize, i64)> = None;
        for i in t..rows {
            for j in t..cols {
                if let Some(v) = v_p(&a[i][j], p) {
                    if best.is_none_or(|b| v < b.2) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((i0, j0, v)) = best else { break };
        a.swap(t, i0);
        for row in a.iter_mut() {
            row.swap(t, j0);
        }
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let f = &a[i][t] / &a[t][t];
            axpy(&mut a, i, t, &f);
        }
        out.push(big_pow(p, v.max(0) as u32));
    }
    out.resize(n, BigInt::zero());
    out
}

/// Smith invariant factors over the chosen base ring.
pub fn snf(m: &[Vec<Rational>], base: Base) -> Result<Vec<BigInt>> {
    check_entries(m, base)?;
    Ok(match base {
        Base::Local(p) => snf_local(m, p),
        Base::Integers => {
            let ints: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|x| x.numer().clone()).collect()).collect();
            snf_int(&ints)
        }
    })
}

/// A finitely generated lattice in `Q^dim`, given by generator rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    pub dim: usize,
    pub rows: Vec<Vec<Rational>>,
}

impl IntLattice {
    pub fn new(dim: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::Dimension(format!("row of length {} in dimension {dim}", r.len())));
        }
        Ok(IntLattice { dim, rows })
    }

    /// The standard lattice `Z^dim`.
    pub fn standard(dim: usize) -> Self {
        let rows = (0..dim).map(|i| (0..dim).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect();
        IntLattice { dim, rows }
    }

    pub fn rank(&self) -> usize {
        rank_rational(&self.rows)
    }

    /// Canonical `Z_(p)`-basis.
    pub fn basis(&self, p: u64) -> Vec<Vec<Rational>> {
        hnf_local(&self.rows, p)
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| x * s).collect()).collect();
        IntLattice { dim: self.dim, rows }
    }

    /// Sum of two lattices.
    pub fn join(&self, other: &IntLattice) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("{} vs {}", self.dim, other.dim)));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(IntLattice { dim: self.dim, rows })
    }

    pub fn contains(&self, v: &[Rational], p: u64) -> bool {
        lattice_member(v, self, p)
    }

    /// Same `Z_(p)`-lattice.
    pub fn same_as(&self, other: &IntLattice, p: u64) -> bool {
        self.dim == other.dim && self.basis(p) == other.basis(p)
    }
}

/// Coordinates of `v` against an echelon basis from `hnf_local`, if `v` lies in its
/// rational span; the coordinates need not be p-integral.
fn echelon_coords(v: &[Rational], basis: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let c = row.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero");
        let f = &rest[c] / &row[c];
        if !f.is_zero() {
            for (d, s) in rest.iter_mut().zip(row) {
                *d -= &f * s;
            }
        }
        coords.push(f);
    }
    rest.iter().all(|x| x.is_zero()).then_some(coords)
}

/// True iff `v` is a `Z_(p)`-combination of the rows of `x`.
pub fn lattice_member(v: &[Rational], x: &IntLattice, p: u64) -> bool {
    if v.len() != x.dim {
        return false;
    }
    if v.iter().all(|c| c.is_zero()) {
        return true;
    }
    match echelon_coords(v, &x.basis(p)) {
        Some(c) => c.iter().all(|t| is_p_integral(t, p)),
        None => false,
    }
}

/// `Z_(p)`-coefficients expressing `v` through the given generators, if possible.
pub fn solve_in_span(v: &[Rational], gens: &[Vec<Rational>], p: u64) -> Option<Vec<Rational>> {
    let (h, t) = hnf_local_with_transform(gens, p);
    let c = echelon_coords(v, &h)?;
    if !c.iter().all(|x| is_p_integral(x, p)) {
        return None;
    }
    let mut out = vec![q(0); gens.len()];
    for (ci, ti) in c.iter().zip(&t) {
        for (o, x) in out.iter_mut().zip(ti) {
            *o += ci * x;
        }
    }
    Some(out)
}

/// A p-power lattice index `[x : y] = p^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeIndex {
    pub p: u64,
    pub exponent: u32,
}

impl LatticeIndex {
    pub fn value(&self) -> BigInt {
        big_pow(self.p, self.exponent)
    }
}

/// The index `[x : y]` over `Z_(p)` for `y ⊆ x` of equal rank spanning the same subspace.
pub fn lattice_index(x: &IntLattice, y: &IntLattice, p: u64) -> Result<LatticeIndex> {
    if x.dim != y.dim {
        return Err(Error::Dimension(format!("{} vs {}", x.dim, y.dim)));
    }
    let bx = x.basis(p);
    let by = y.basis(p);
    if bx.len() != by.len() {
        return Err(Error::RankMismatch { left: bx.len(), right: by.len() });
    }
    let mut change = Vec::with_capacity(by.len());
    for row in &by {
        let c = echelon_coords(row, &bx).ok_or(Error::NotContained)?;
        if !c.iter().all(|t| is_p_integral(t, p)) {
            return Err(Error::NotContained);
        }
        change.push(c);
    }
    let det = det_rational(&change);
    let v = v_p(&det, p).ok_or(Error::RankMismatch { left: bx.len(), right: by.len() })?;
    Ok(LatticeIndex { p, exponent: v.to_u32().expect("index exponent is nonnegative") })
}

/// Basis of `span(rows) ∩ Z_(p)^n` for p-integral `rows`.
pub fn saturate(rows: &[Vec<Rational>], p: u64) -> Vec<Vec<Rational>> {
    let mut b = hnf_local(rows, p);
    let pb = BigInt::from(p);
    loop {
        let reduced: Vec<Vec<u64>> =
            b.iter().map(|r| r.iter().map(|x| super::rational::residue(x, &pb).to_u64().unwrap()).collect()).collect();
        let ker = super::modp::left_kernel(&reduced, p);
        let Some(c) = ker.first() else { return b };
        let i = c.iter().position(|&x| x != 0).unwrap();
        let dim = b[0].len();
        let mut new = vec![q(0); dim];
        for (cj, row) in c.iter().zip(&b) {
            if *cj == 0 {
                continue;
            }
            let cq = q(*cj as i64);
            for (d, s) in new.iter_mut().zip(row) {
                *d += &cq * s;
            }
        }
        let inv_p = Rational::new(BigInt::one(), pb.clone());
        b[i] = new.into_iter().map(|x| x * &inv_p).collect();
        b = hnf_local(&b, p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let d = m(&[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]]);
        assert_eq!(snf(&d, Base::Integers).unwrap(), ints(&[2, 2, 2, 2]));
        assert_eq!(snf(&m(&[&[0, 0], &[0, 0]]), Base::Integers).unwrap(), ints(&[0, 0]));
        assert_eq!(snf(&m(&[&[2, 1], &[0, 3]]), Base::Integers).unwrap(), ints(&[1, 6]));
        assert_eq!(snf(&m(&[&[2, 1], &[0, 3]]), Base::Local(2)).unwrap(), ints(&[1, 2]));
        assert_eq!(snf(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), Base::Integers).unwrap(), ints(&[2, 6, 12]));
    }

    #[test]
    fn hnf_canonical() {
        let a = m(&[&[2, 4], &[3, 1]]);
        let h = hnf(&a, Base::Integers).unwrap();
        assert_eq!(h, m(&[&[1, 7], &[0, 10]]));
        assert_eq!(hnf(&h, Base::Integers).unwrap(), h);
        let hl = hnf(&a, Base::Local(2)).unwrap();
        assert_eq!(hl, m(&[&[1, 1], &[0, 2]]));
        assert!(hnf(&[vec![Rational::new(1.into(), 2.into())]], Base::Local(2)).is_err());
    }

    #[test]
    fn index_examples() {
        let z2 = IntLattice::standard(2);
        assert_eq!(lattice_index(&z2, &z2, 2).unwrap().exponent, 0);
        let two = z2.scaled(&q(2));
        assert_eq!(lattice_index(&z2, &two, 2).unwrap().value(), BigInt::from(4));
        assert_eq!(lattice_index(&two, &z2, 2), Err(Error::NotContained));
        let line = IntLattice::new(2, m(&[&[1, 0]])).unwrap();
        assert!(matches!(lattice_index(&z2, &line, 2), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn membership_examples() {
        let z2 = IntLattice::standard(2);
        assert!(lattice_member(&[q(0), q(0)], &z2, 3));
        assert!(!lattice_member(&[Rational::new(1.into(), 3.into()), q(0)], &z2, 3));
        let l = IntLattice::new(2, m(&[&[2, 0], &[1, 1]])).unwrap();
        assert!(lattice_member(&[q(1), q(1)], &l, 2));
        assert!(!lattice_member(&[q(1), q(0)], &l, 2));
        assert!(lattice_member(&[q(1), q(0)], &l, 3));
        let c = solve_in_span(&[q(1), q(1)], &l.rows, 2).unwrap();
        assert_eq!(c, vec![q(0), q(1)]);
    }

    #[test]
    fn saturation() {
        // span{(2, 2)} meets Z^2 in span{(1, 1)}
        let s = saturate(&m(&[&[2, 2], &[0, 4]]), 2);
        assert_eq!(s, m(&[&[1, 0], &[0, 1]]));
        let s = saturate(&m(&[&[2, 2]]), 2);
        assert_eq!(s, m(&[&[1, 1]]));
        let s = saturate(&m(&[&[3, 6]]), 2);
        assert_eq!(s, m(&[&[1, 2]]));
    }
}
