//! Linear algebra over the prime field `F_p`.

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Basis of `{c : Σ c_i rows[i] ≡ 0 mod p}`.
pub fn left_kernel(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let k = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<u64> = r.iter().map(|x| x % p).collect();
            row.extend((0..k).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..k).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..k {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                let src = a[r].clone();
                for (d, s) in a[i].iter_mut().zip(&src) {
                    *d = (*d + p * p - f * s % p) % p;
                }
            }
        }
        r += 1;
    }
    a[r..].iter().map(|row| row[n..].to_vec()).collect()
}
