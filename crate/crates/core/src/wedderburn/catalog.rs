//! Explicit absolutely irreducible representations of the catalog groups.

use crate::arith::cyclo::CycNum;
use crate::arith::linalg::{identity, mat_mul, Mat};
use crate::arith::rational::lcm_u64;
use crate::group_algebra::{commutator_subgroup, FiniteGroup, GroupSpec};

/// A matrix representation given by its image on every group element.
#[derive(Clone, Debug)]
pub struct Representation {
    pub dim: usize,
    pub images: Vec<Mat>,
}

impl Representation {
    pub fn character(&self) -> Vec<CycNum> {
        self.images.iter().map(crate::arith::linalg::trace).collect()
    }
}

fn scalar(x: CycNum) -> Mat {
    vec![vec![x]]
}

fn mpow(a: &Mat, k: u64) -> Mat {
    (0..k).fold(identity(a.len()), |acc, _| mat_mul(&acc, a))
}

/// Images `X^i Y^j` for groups whose elements carry coordinates `[i, j]`.
fn from_xy(g: &FiniteGroup, x: &Mat, y: &Mat) -> Representation {
    let images = g.coords.iter().map(|c| mat_mul(&mpow(x, c[0]), &mpow(y, c[1]))).collect();
    Representation { dim: x.len(), images }
}

fn cyc(x: i64) -> CycNum {
    CycNum::from_int(x)
}

/// The common cyclotomic conductor over which every representation of `g` is written.
pub fn splitting_conductor(g: &FiniteGroup) -> u64 {
    match &g.spec {
        GroupSpec::Cyclic(n) => *n,
        GroupSpec::AbelianProduct(ns) => ns.iter().fold(1, |a, &b| lcm_u64(a, b)),
        GroupSpec::Dihedral(n2) => n2 / 2,
        GroupSpec::Quaternion8 => 4,
        GroupSpec::Alternating4 => 3,
        GroupSpec::Metacyclic { p, q, .. } => p * q,
    }
}

/// One representation per absolutely irreducible character, linear ones first.
pub fn irreducible_representations(g: &FiniteGroup) -> Vec<Representation> {
    let e = splitting_conductor(g);
    match &g.spec {
        GroupSpec::Cyclic(n) => (0..*n)
            .map(|k| Representation {
                dim: 1,
                images: g.coords.iter().map(|c| scalar(CycNum::zeta(e, (k * c[0]) as i64))).collect(),
            })
            .collect(),
        GroupSpec::AbelianProduct(ns) => {
            let mut ks: Vec<Vec<u64>> = vec![vec![]];
            for &n in ns {
                ks = ks.into_iter().flat_map(|k| (0..n).map(move |i| [k.clone(), vec![i]].concat())).collect();
            }
            ks.iter()
                .map(|k| Representation {
                    dim: 1,
                    images: g
                        .coords
                        .iter()
                        .map(|c| {
                            let t: u64 = c.iter().zip(k).zip(ns).map(|((ci, ki), n)| ci * ki * (e / n)).sum();
                            scalar(CycNum::zeta(e, (t % e) as i64))
                        })
                        .collect(),
                })
                .collect()
        }
        GroupSpec::Dihedral(n2) => {
            let n = n2 / 2;
            let signs: Vec<(i64, i64)> =
                if n % 2 == 1 { vec![(1, 1), (1, -1)] } else { vec![(1, 1), (1, -1), (-1, 1), (-1, -1)] };
            let mut out: Vec<Representation> =
                signs.into_iter().map(|(a, b)| from_xy(g, &scalar(cyc(a)), &scalar(cyc(b)))).collect();
            for j in 1..n {
                if 2 * j >= n {
                    break;
                }
                let t = &CycNum::zeta(e, j as i64) + &CycNum::zeta(e, -(j as i64));
                let x = vec![vec![cyc(0), cyc(-1)], vec![cyc(1), t]];
                let y = vec![vec![cyc(0), cyc(1)], vec![cyc(1), cyc(0)]];
                out.push(from_xy(g, &x, &y));
            }
            out
        }
        GroupSpec::Quaternion8 => {
            let mut out: Vec<Representation> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
                .into_iter()
                .map(|(a, b)| from_xy(g, &scalar(cyc(a)), &scalar(cyc(b))))
                .collect();
            let i = CycNum::zeta(4, 1);
            let x = vec![vec![i.clone(), cyc(0)], vec![cyc(0), -&i]];
            let y = vec![vec![cyc(0), cyc(1)], vec![cyc(-1), cyc(0)]];
            out.push(from_xy(g, &x, &y));
            out
        }
        GroupSpec::Alternating4 => {
            // Linear characters through A4 → A4/V4 ≅ C3, generated by the coset of (1 2 3).
            let v4 = commutator_subgroup(g);
            let c = g.element("(1 2 3)").expect("A4 contains (1 2 3)");
            let coset_index: Vec<u64> = (0..g.order())
                .map(|a| (0..3u64).find(|&k| v4.contains(&g.mul(g.inv(g.pow(c, k)), a))).expect("A4/V4 has order 3"))
                .collect();
            let mut out: Vec<Representation> = (0..3u64)
                .map(|k| Representation {
                    dim: 1,
                    images: coset_index.iter().map(|&m| scalar(CycNum::zeta(3, (k * m) as i64))).collect(),
                })
                .collect();
            // Permutation action on e_i - e_4, i = 1..3.
            let images = g
                .coords
                .iter()
                .map(|perm| {
                    let mut m = vec![vec![cyc(0); 3]; 3];
                    for i in 0..3 {
                        let (a, b) = (perm[i] as usize, perm[3] as usize);
                        if a < 3 {
                            m[a][i] = &m[a][i] + &cyc(1);
                        }
                        if b < 3 {
                            m[b][i] = &m[b][i] - &cyc(1);
                        }
                    }
                    m
                })
                .collect();
            out.push(Representation { dim: 3, images });
            out
        }
        GroupSpec::Metacyclic { p, q: qq, r } => {
            let (p, qq, r) = (*p, *qq, *r);
            let mut out: Vec<Representation> =
                (0..qq).map(|k| from_xy(g, &scalar(cyc(1)), &scalar(CycNum::zeta(e, (k * p) as i64)))).collect();
            // Cosets of <r> in (Z/p)^×, each represented by its smallest member.
            let mut seen = vec![false; p as usize];
            for s in 1..p {
                if seen[s as usize] {
                    continue;
                }
                let orbit: Vec<u64> = (0..qq).map(|k| s * (0..k).fold(1, |a, _| a * r % p) % p).collect();
                for &o in &orbit {
                    seen[o as usize] = true;
                }
                let d = qq as usize;
                let mut x = vec![vec![cyc(0); d]; d];
                let mut y = vec![vec![cyc(0); d]; d];
                for k in 0..d {
                    x[k][k] = CycNum::zeta(e, (orbit[k] * qq) as i64);
                    y[(k + d - 1) % d][k] = cyc(1);
                }
                out.push(from_xy(g, &x, &y));
            }
            out
        }
    }
}

/// `true` iff `images` respects the multiplication table.
pub fn is_homomorphism(g: &FiniteGroup, rep: &Representation) -> bool {
    let n = g.order();
    (0..n).all(|a| (0..n).all(|b| mat_mul(&rep.images[a], &rep.images[b]) == rep.images[g.mul(a, b)]))
        && rep.images[0] == identity(rep.dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> Vec<GroupSpec> {
        vec![
            GroupSpec::Cyclic(1),
            GroupSpec::Cyclic(6),
            GroupSpec::AbelianProduct(vec![2, 4]),
            GroupSpec::Dihedral(6),
            GroupSpec::Dihedral(8),
            GroupSpec::Dihedral(16),
            GroupSpec::Quaternion8,
            GroupSpec::Alternating4,
            GroupSpec::Metacyclic { p: 7, q: 3, r: 2 },
        ]
    }

    #[test]
    fn representations_are_irreducible_and_complete() {
        for spec in catalog() {
            let g = FiniteGroup::new(spec.clone()).unwrap();
            let reps = irreducible_representations(&g);
            let mut total = 0;
            let chars: Vec<Vec<CycNum>> = reps.iter().map(|r| r.character()).collect();
            for (r, chi) in reps.iter().zip(&chars) {
                assert!(is_homomorphism(&g, r), "{spec}");
                total += r.dim * r.dim;
                // <χ, χ> = 1
                let s = (0..g.order()).fold(CycNum::zero(), |acc, a| &acc + &(&chi[a] * &chi[a].conj()));
                assert_eq!(s, CycNum::from_int(g.order() as i64), "{spec}");
            }
            assert_eq!(total, g.order(), "{spec}");
            for i in 0..chars.len() {
                for j in 0..i {
                    assert_ne!(chars[i], chars[j], "{spec}");
                }
            }
        }
    }
}
