//! Group ring elements with rational coefficients and matrices over them.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::group::FiniteGroup;
use crate::arith::rational::{format_rational, is_p_integral, q, Rational};
use crate::error::{Error, Result};

/// `Σ_g c_g g` with exact rational coefficients, stored densely in group order.
#[derive(Clone, Debug)]
pub struct GroupRingElem {
    group: Arc<FiniteGroup>,
    coeffs: Vec<Rational>,
}

impl PartialEq for GroupRingElem {
    fn eq(&self, other: &Self) -> bool {
        self.group.spec == other.group.spec && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElem {}

impl GroupRingElem {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupRingElem { group: group.clone(), coeffs: vec![Rational::zero(); group.order()] }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::basis(group, 0)
    }

    /// The group element `a` itself.
    pub fn basis(group: &Arc<FiniteGroup>, a: usize) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[a] = Rational::one();
        x
    }

    pub fn scalar(group: &Arc<FiniteGroup>, s: &Rational) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[0] = s.clone();
        x
    }

    pub fn from_coeffs(group: &Arc<FiniteGroup>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(GroupRingElem { group: group.clone(), coeffs })
    }

    /// Builds an element from `(label, coefficient)` pairs; repeated labels add up.
    pub fn from_terms<'a>(
        group: &Arc<FiniteGroup>,
        terms: impl IntoIterator<Item = (&'a str, Rational)>,
    ) -> Result<Self> {
        let mut x = Self::zero(group);
        for (l, c) in terms {
            let a = group.element(l)?;
            x.coeffs[a] += c;
        }
        Ok(x)
    }

    /// Sum of the listed group elements.
    pub fn sum_of(group: &Arc<FiniteGroup>, elems: &[usize]) -> Self {
        let mut x = Self::zero(group);
        for &a in elems {
            x.coeffs[a] += Rational::one();
        }
        x
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize) -> &Rational {
        &self.coeffs[a]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.coeffs.iter().all(|c| is_p_integral(c, p))
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        GroupRingElem { group: self.group.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        GroupRingElem { group: self.group.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        GroupRingElem { group: self.group.clone(), coeffs }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * s).collect();
        GroupRingElem { group: self.group.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let g = &self.group;
        let mut out = vec![Rational::zero(); g.order()];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[g.mul(a, b)] += x * y;
                }
            }
        }
        GroupRingElem { group: g.clone(), coeffs: out }
    }

    /// Left multiplication by the group element `a`.
    pub fn left_mul_elem(&self, a: usize) -> Self {
        let g = &self.group;
        let mut out = vec![Rational::zero(); g.order()];
        for (b, y) in self.coeffs.iter().enumerate() {
            if !y.is_zero() {
                out[g.mul(a, b)] = y.clone();
            }
        }
        GroupRingElem { group: g.clone(), coeffs: out }
    }

    /// The antipode `Σ c_g g^{-1}`.
    pub fn antipode(&self) -> Self {
        let g = &self.group;
        let mut out = vec![Rational::zero(); g.order()];
        for (a, c) in self.coeffs.iter().enumerate() {
            out[g.inv(a)] = c.clone();
        }
        GroupRingElem { group: g.clone(), coeffs: out }
    }

    /// Central iff the coefficients are constant on conjugacy classes.
    pub fn is_central(&self) -> bool {
        let g = &self.group;
        (0..g.order()).all(|h| (0..g.order()).all(|a| self.coeffs[g.conjugate(h, a)] == self.coeffs[a]))
    }

    /// Nonzero terms as `(label, coefficient)` in group order.
    pub fn terms(&self) -> Vec<(String, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (self.group.label(a).to_string(), c.clone()))
            .collect()
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(l, c)| if c == q(1) { l } else { format!("{}*{l}", format_rational(&c)) })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// A matrix over the group ring.
pub type GrMatrix = Vec<Vec<GroupRingElem>>;

pub fn gr_identity(group: &Arc<FiniteGroup>, n: usize) -> GrMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { GroupRingElem::one(group) } else { GroupRingElem::zero(group) }).collect())
        .collect()
}

pub fn gr_mat_mul(a: &GrMatrix, b: &GrMatrix) -> GrMatrix {
    let group = a[0][0].group().clone();
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter().zip(b).fold(GroupRingElem::zero(&group), |acc, (x, brow)| acc.add(&x.mul(&brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn gr_mat_is_p_integral(a: &GrMatrix, p: u64) -> bool {
    a.iter().flatten().all(|x| x.is_p_integral(p))
}
