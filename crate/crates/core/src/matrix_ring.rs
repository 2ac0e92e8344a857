//! Fitting invariants over `M_n(R)` through Morita flattening.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::rational::{det_rational, q, Rational};
use crate::comm_fitting::{fitting_ideal, CommRing, IdealFG, Presentation};
use crate::error::{Error, Result};
use crate::util::{combinations, with_pool};

/// An `n × n` matrix over a commutative base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatRingElem {
    pub n: usize,
    pub ring: CommRing,
    pub entries: Vec<Vec<Rational>>,
}

impl MatRingElem {
    pub fn new(ring: CommRing, entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("matrix ring element must be square".into()));
        }
        for x in entries.iter().flatten() {
            if !ring.contains_value(x) {
                return Err(Error::NotInRing(format!("{x} in {ring}")));
            }
        }
        Ok(MatRingElem { n, ring, entries })
    }

    pub fn from_ints(ring: CommRing, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(ring, rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    pub fn scalar(ring: CommRing, n: usize, s: &Rational) -> Self {
        let entries =
            (0..n).map(|i| (0..n).map(|j| if i == j { s.clone() } else { Rational::zero() }).collect()).collect();
        MatRingElem { n, ring, entries }
    }

    pub fn identity(ring: CommRing, n: usize) -> Self {
        Self::scalar(ring, n, &Rational::one())
    }

    /// The matrix unit `e_{ij}`.
    pub fn unit(ring: CommRing, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::scalar(ring, n, &Rational::zero());
        m.entries[i][j] = Rational::one();
        m
    }

    pub fn mul(&self, other: &MatRingElem) -> MatRingElem {
        let n = self.n;
        let entries = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &self.entries[i][k] * &other.entries[k][j]).sum()).collect())
            .collect();
        MatRingElem { n, ring: self.ring, entries }
    }

    pub fn add(&self, other: &MatRingElem) -> MatRingElem {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        MatRingElem { n: self.n, ring: self.ring, entries }
    }

    pub fn det(&self) -> Rational {
        det_rational(&self.entries)
    }
}

/// A presentation `Λ^a → Λ^b ↠ M` over `Λ = M_n(R)`, as an `a × b` array of blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatRingPresentation {
    pub ring: CommRing,
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub blocks: Vec<Vec<MatRingElem>>,
}

impl MatRingPresentation {
    pub fn new(blocks: Vec<Vec<MatRingElem>>) -> Result<Self> {
        let a = blocks.len();
        let b = blocks.first().map_or(0, |r| r.len());
        let first = blocks
            .iter()
            .flatten()
            .next()
            .ok_or_else(|| Error::Dimension("presentation needs at least one block".into()))?;
        let (n, ring) = (first.n, first.ring);
        if blocks.iter().any(|r| r.len() != b) {
            return Err(Error::Dimension("ragged block matrix".into()));
        }
        if blocks.iter().flatten().any(|x| x.n != n || x.ring != ring) {
            return Err(Error::Dimension("blocks must share size and ring".into()));
        }
        Ok(MatRingPresentation { ring, n, a, b, blocks })
    }
}

/// The `na × nb` matrix over `R` with the same entries.
pub fn flatten(pres: &MatRingPresentation) -> Presentation {
    let n = pres.n;
    let mut rows = Vec::with_capacity(n * pres.a);
    for block_row in &pres.blocks {
        for i in 0..n {
            let mut row = Vec::with_capacity(n * pres.b);
            for blk in block_row {
                row.extend(blk.entries[i].iter().cloned());
            }
            rows.push(row);
        }
    }
    Presentation { ring: pres.ring, a: n * pres.a, b: n * pres.b, matrix: rows }
}

/// `Fit_Λ(M) = Fit_R(e_11 M)`, computed on the flattened presentation.
pub fn fit_matrix_ring(pres: &MatRingPresentation) -> IdealFG {
    fitting_ideal(&flatten(pres))
}

/// Presentation of `M` as an `R`-module in coordinates `Λ^b ≅ R^{n²b}`: relations are
/// `e_ij · h_k` for every relation row `h_k` and matrix unit `e_ij`.
pub fn full_module_presentation(pres: &MatRingPresentation) -> Presentation {
    let n = pres.n;
    let mut rows = Vec::new();
    for block_row in &pres.blocks {
        for i in 0..n {
            for j in 0..n {
                let e = MatRingElem::unit(pres.ring, n, i, j);
                let mut row = Vec::with_capacity(n * n * pres.b);
                for blk in block_row {
                    let prod = e.mul(blk);
                    row.extend(prod.entries.into_iter().flatten());
                }
                rows.push(row);
            }
        }
    }
    Presentation { ring: pres.ring, a: rows.len(), b: n * n * pres.b, matrix: rows }
}

/// `⟨det(x) | x ∈ Λx_1 + ⋯ + Λx_k⟩_R`. Every `n × n` submatrix of the stacked generators is
/// realised as `x = Σ_i e_{i,j_i} x_{k_i}`, an honest element of the left ideal.
pub fn fit_left_ideal_quotient(generators: &[MatRingElem]) -> Result<IdealFG> {
    let first = generators.first().ok_or_else(|| Error::Invalid("left ideal needs at least one generator".into()))?;
    let (n, ring) = (first.n, first.ring);
    if generators.iter().any(|g| g.n != n || g.ring != ring) {
        return Err(Error::Dimension("generators must share size and ring".into()));
    }
    let stacked: Vec<(usize, usize)> = (0..generators.len()).flat_map(|k| (0..n).map(move |j| (k, j))).collect();
    let choices = combinations(stacked.len(), n);
    let dets: Vec<Rational> = with_pool(|| {
        choices
            .par_iter()
            .map(|sel| {
                let mut x = MatRingElem::scalar(ring, n, &Rational::zero());
                for (i, &s) in sel.iter().enumerate() {
                    let (k, j) = stacked[s];
                    let term = MatRingElem::unit(ring, n, i, j).mul(&generators[k]);
                    x = x.add(&term);
                }
                x.det()
            })
            .collect()
    });
    IdealFG::generated(ring, dets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z() -> CommRing {
        CommRing::Integers
    }

    #[test]
    fn flatten_examples() {
        let h = MatRingElem::from_ints(z(), &[vec![1, 2], vec![3, 4]]).unwrap();
        let p = MatRingPresentation::new(vec![vec![h.clone()]]).unwrap();
        assert_eq!(flatten(&p).matrix, h.entries);
        let id = MatRingPresentation::new(vec![
            vec![MatRingElem::identity(z(), 2), MatRingElem::scalar(z(), 2, &q(0))],
            vec![MatRingElem::scalar(z(), 2, &q(0)), MatRingElem::identity(z(), 2)],
        ])
        .unwrap();
        let f = flatten(&id);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(f.matrix[i][j], q(i64::from(i == j)));
            }
        }
        let x2 = MatRingElem::from_ints(z(), &[vec![5, 6], vec![7, 8]]).unwrap();
        let stack = MatRingPresentation::new(vec![vec![h.clone()], vec![x2]]).unwrap();
        let f = flatten(&stack);
        assert_eq!((f.a, f.b), (4, 2));
        assert_eq!(f.matrix[2], vec![q(5), q(6)]);
        // row j of e_ij·x_k is row j of x_k placed at row i
        assert_eq!(MatRingElem::unit(z(), 2, 0, 1).mul(&h).entries[0], h.entries[1]);
    }

    #[test]
    fn matrix_ring_fitting_examples() {
        let two = MatRingElem::scalar(z(), 2, &q(2));
        let m = MatRingPresentation::new(vec![vec![two.clone()]]).unwrap();
        assert_eq!(fit_matrix_ring(&m).normal_form(), &BigInt::from(4));
        let n = MatRingPresentation::new(vec![vec![MatRingElem::from_ints(z(), &[vec![2, 0], vec![0, 1]]).unwrap()]])
            .unwrap();
        assert_eq!(fit_matrix_ring(&n).normal_form(), &BigInt::from(2));
        let three = MatRingPresentation::new(vec![vec![MatRingElem::scalar(z(), 2, &q(3))]]).unwrap();
        assert_eq!(fit_matrix_ring(&three).normal_form(), &BigInt::from(9));
    }

    #[test]
    fn left_ideal_quotients() {
        let d = MatRingElem::from_ints(z(), &[vec![1, 0], vec![0, 2]]).unwrap();
        assert_eq!(fit_left_ideal_quotient(&[d]).unwrap().normal_form(), &BigInt::from(2));
        let one = MatRingElem::identity(z(), 2);
        assert!(fit_left_ideal_quotient(&[one]).unwrap().is_unit());
        let two = MatRingElem::scalar(z(), 2, &q(2));
        assert_eq!(fit_left_ideal_quotient(&[two]).unwrap().normal_form(), &BigInt::from(4));
        assert!(fit_left_ideal_quotient(&[]).is_err());
    }

    #[test]
    fn full_module_is_n_copies() {
        let h = MatRingElem::from_ints(z(), &[vec![2, 1], vec![0, 3]]).unwrap();
        let p = MatRingPresentation::new(vec![vec![h]]).unwrap();
        let full = fitting_ideal(&full_module_presentation(&p));
        assert_eq!(full, fit_matrix_ring(&p).pow(2));
    }
}
