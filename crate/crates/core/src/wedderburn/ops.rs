//! Reduced norms, reduced characteristic polynomials, generalized adjoints and Fourier inversion.

use num_traits::Zero;
use rayon::prelude::*;

use super::{CentralElem, WedderburnData};
use crate::arith::cyclo::CycNum;
use crate::arith::linalg::{charpoly, identity, mat_add, mat_mul, mat_scale, zeros, Mat};
use crate::arith::rational::{qf, Rational};
use crate::error::{Error, Result};
use crate::group_algebra::{GrMatrix, GroupRingElem};
use crate::util::with_pool;

fn square_size(h: &GrMatrix) -> Result<usize> {
    let n = h.len();
    if n == 0 || h.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix over the group ring must be square and nonempty".into()));
    }
    Ok(n)
}

/// `ρ_i(x) = Σ_g x_g ρ_i(g)`.
pub fn rep_image(data: &WedderburnData, i: usize, x: &GroupRingElem) -> Mat {
    let rep = &data.components[i].rep;
    let mut m = zeros(rep.dim, rep.dim);
    for (c, img) in x.coeffs().iter().zip(&rep.images) {
        if !c.is_zero() {
            m = mat_add(&m, &mat_scale(img, &CycNum::from_rational(c)));
        }
    }
    m
}

/// `ρ_i` applied entrywise: an `a χ_i(1) × b χ_i(1)` matrix.
pub fn rep_matrix(data: &WedderburnData, i: usize, h: &GrMatrix) -> Mat {
    let d = data.components[i].degree;
    let cols = h.first().map_or(0, |r| r.len());
    let mut out = zeros(h.len() * d, cols * d);
    for (k, row) in h.iter().enumerate() {
        for (l, x) in row.iter().enumerate() {
            let b = rep_image(data, i, x);
            for (a, brow) in b.into_iter().enumerate() {
                for (c, v) in brow.into_iter().enumerate() {
                    out[k * d + a][l * d + c] = v;
                }
            }
        }
    }
    out
}

/// The central primitive idempotents `e_i`.
pub fn central_idempotents(data: &WedderburnData) -> Vec<GroupRingElem> {
    (0..data.len())
        .map(|i| {
            let mut values = vec![CycNum::zero(); data.len()];
            values[i] = CycNum::one();
            data.central_element(&CentralElem { values })
        })
        .collect()
}

/// `nr(H)`: componentwise determinant of `ρ_i(H)`.
pub fn reduced_norm(data: &WedderburnData, h: &GrMatrix) -> Result<CentralElem> {
    square_size(h)?;
    let values = with_pool(|| {
        (0..data.len()).into_par_iter().map(|i| crate::arith::linalg::det(&rep_matrix(data, i, h))).collect()
    });
    Ok(CentralElem { values })
}

/// Characteristic polynomial of `ρ_i(H)`, coefficients from the constant term up.
pub fn reduced_charpoly(data: &WedderburnData, h: &GrMatrix, i: usize) -> Result<Vec<CycNum>> {
    square_size(h)?;
    if i >= data.len() {
        return Err(Error::Invalid(format!("component {i} out of range")));
    }
    Ok(charpoly(&rep_matrix(data, i, h)))
}

/// The element of `Q[G]` whose image in component `i` is `blocks[i]`; each block must lie in
/// the image of `Q[G]`.
pub fn fourier_inverse(data: &WedderburnData, blocks: &[Mat]) -> GroupRingElem {
    fourier_coeffs(data, blocks)
        .map(|c| GroupRingElem::from_coeffs(&data.group, c).expect("coefficient count matches the group"))
        .expect("block lies in the image of the group algebra")
}

/// Like `fourier_inverse`, but returns `None` when some block is not in the image of `Q[G]`.
pub fn try_fourier_inverse(data: &WedderburnData, blocks: &[Mat]) -> Option<GroupRingElem> {
    let x = GroupRingElem::from_coeffs(&data.group, fourier_coeffs(data, blocks)?).ok()?;
    (0..data.len()).all(|i| rep_image(data, i, &x) == blocks[i]).then_some(x)
}

fn fourier_coeffs(data: &WedderburnData, blocks: &[Mat]) -> Option<Vec<Rational>> {
    let g = &data.group;
    let order = g.order() as i64;
    (0..g.order())
        .map(|a| {
            let ginv = g.inv(a);
            let mut total = Rational::zero();
            for (comp, y) in data.components.iter().zip(blocks) {
                let r = &comp.rep.images[ginv];
                let mut t = CycNum::zero();
                for (ri, row) in r.iter().enumerate() {
                    for (rj, v) in row.iter().enumerate() {
                        if !v.is_zero() && !y[rj][ri].is_zero() {
                            t = &t + &(v * &y[rj][ri]);
                        }
                    }
                }
                if t.is_zero() {
                    continue;
                }
                let s = comp.orbit.iter().fold(CycNum::zero(), |acc, &k| &acc + &t.sigma(k));
                total += s.to_rational()? * qf(comp.degree as i64, order);
            }
            Some(total)
        })
        .collect()
}

/// `H^∗` with `H^∗H = HH^∗ = nr(H)·1`, built componentwise as
/// `(-1)^{m+1} Σ_{j ≥ 1} α_j ρ_i(H)^{j-1}` from the reduced characteristic polynomial.
pub fn generalized_adjoint(data: &WedderburnData, h: &GrMatrix) -> Result<GrMatrix> {
    let n = square_size(h)?;
    let ys: Vec<Mat> = with_pool(|| {
        (0..data.len())
            .into_par_iter()
            .map(|i| {
                let x = rep_matrix(data, i, h);
                let c = charpoly(&x);
                let m = x.len();
                let mut y = zeros(m, m);
                for j in (1..=m).rev() {
                    y = mat_add(&mat_mul(&y, &x), &mat_scale(&identity(m), &c[j]));
                }
                if m.is_multiple_of(2) {
                    y = mat_scale(&y, &CycNum::from_int(-1));
                }
                y
            })
            .collect()
    });
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = Vec::with_capacity(n);
        for l in 0..n {
            let blocks: Vec<Mat> = data
                .components
                .iter()
                .zip(&ys)
                .map(|(comp, y)| {
                    let d = comp.degree;
                    (0..d).map(|a| (0..d).map(|b| y[k * d + a][l * d + b].clone()).collect()).collect()
                })
                .collect();
            row.push(fourier_inverse(data, &blocks));
        }
        out.push(row);
    }
    Ok(out)
}
