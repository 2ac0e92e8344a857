//! Dense matrices over cyclotomic fields.

use super::cyclo::CycNum;

pub type Mat = Vec<Vec<CycNum>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![CycNum::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = CycNum::one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
                }
            }
        }
    }
    out
}

pub fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect()).collect()
}

pub fn mat_scale(a: &Mat, s: &CycNum) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn trace(a: &Mat) -> CycNum {
    let mut t = CycNum::zero();
    for (i, row) in a.iter().enumerate() {
        t = &t + &row[i];
    }
    t
}

pub fn map_entries(a: &Mat, f: impl Fn(&CycNum) -> CycNum) -> Mat {
    a.iter().map(|r| r.iter().map(&f).collect()).collect()
}

/// Characteristic polynomial `det(X·1 - A)`, coefficients low to high (monic), by
/// Faddeev–LeVerrier. Exact since the base field has characteristic zero.
pub fn charpoly(a: &Mat) -> Vec<CycNum> {
    let n = a.len();
    let mut c = vec![CycNum::zero(); n + 1];
    c[n] = CycNum::one();
    let mut m = zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &c[n - k + 1];
        }
        let am = mat_mul(a, &next);
        let t = trace(&am);
        c[n - k] = t.scale(&super::rational::qf(-1, k as i64));
        m = next;
    }
    c
}

pub fn det(a: &Mat) -> CycNum {
    if a.is_empty() {
        return CycNum::one();
    }
    let c = charpoly(a);
    if a.len().is_multiple_of(2) {
        c[0].clone()
    } else {
        -&c[0]
    }
}

/// Rank by Gaussian elimination over the cyclotomic field.
pub fn rank(a: &Mat) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].inverse().expect("pivot is nonzero");
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(rows: &[&[i64]]) -> Mat {
        rows.iter().map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect()).collect()
    }

    #[test]
    fn charpoly_of_rotation() {
        let i = CycNum::zeta(4, 1);
        let a = vec![vec![i.clone(), CycNum::zero()], vec![CycNum::zero(), -&i]];
        let c = charpoly(&a);
        assert_eq!(c, vec![CycNum::one(), CycNum::zero(), CycNum::one()]);
    }

    #[test]
    fn determinants_and_rank() {
        let a = ci(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(det(&a), CycNum::from_int(18));
        assert_eq!(rank(&a), 3);
        assert_eq!(rank(&ci(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(det(&ci(&[&[0, 1], &[1, 0]])), CycNum::from_int(-1));
    }
}
