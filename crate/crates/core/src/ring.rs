//! Exact arithmetic in the group ring `Z[A]` of a free abelian group `A` of
//! finite rank, i.e. Laurent polynomials `Z[t_1^±1, ..., t_r^±1]`. A basis
//! monomial `e_a` is indexed by its exponent vector `a in Z^r` and
//! `e_a e_b = e_{a+b}`.

use crate::int::{int, Int};
use crate::matrix::IntVector;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("difference product factors must be nonzero")]
    ZeroFactor,
}

/// Element of `Z[A]`, `rank = rank(A)`; only nonzero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    rank: usize,
    terms: BTreeMap<IntVector, Int>,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                format!("{}*e[{}]", c, exps.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl RingElement {
    pub fn zero(rank: usize) -> Self {
        RingElement { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![Int::zero(); rank], Int::one())
    }

    /// `c * e_a`.
    pub fn monomial(exponent: IntVector, coeff: Int) -> Self {
        let rank = exponent.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        RingElement { rank, terms }
    }

    /// `e_a` for a basis element of `A`.
    pub fn basis(exponent: IntVector) -> Self {
        Self::monomial(exponent, Int::one())
    }

    /// `e_a - 1`.
    pub fn difference(exponent: IntVector) -> Self {
        let rank = exponent.len();
        &Self::basis(exponent) - &Self::one(rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntVector, &Int)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponent: &[Int]) -> Int {
        self.terms.get(exponent).cloned().unwrap_or_else(Int::zero)
    }

    fn insert(&mut self, exponent: IntVector, coeff: Int) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, rhs: &RingElement) -> Result<RingElement, RingError> {
        if self.rank != rhs.rank {
            return Err(RingError::RankMismatch(self.rank, rhs.rank));
        }
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &RingElement) -> Result<RingElement, RingError> {
        if self.rank != rhs.rank {
            return Err(RingError::RankMismatch(self.rank, rhs.rank));
        }
        let mut out = RingElement::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: IntVector = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(exp, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u64) -> RingElement {
        let mut acc = RingElement::one(self.rank);
        for _ in 0..n {
            acc = acc.checked_mul(self).expect("equal ranks");
        }
        acc
    }

    /// Evaluation of a rank-1 element at a unit (`x = 1` or `x = -1`), the
    /// only integer points where negative exponents stay integral.
    pub fn eval_rank1_at_unit(&self, x: i64) -> Int {
        assert_eq!(self.rank, 1, "evaluation needs a rank-1 element");
        assert!(x == 1 || x == -1, "evaluation point must be a unit");
        let mut acc = Int::zero();
        for (e, c) in &self.terms {
            if x == 1 || e[0].is_even() {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }
}

impl std::ops::Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("rank mismatch in ring addition")
    }
}

impl std::ops::Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &-rhs
    }
}

impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).expect("rank mismatch in ring product")
    }
}

/// Formal product `(e_{a_1} - 1) ... (e_{a_k} - 1)` with every `a_i != 0`,
/// kept unexpanded; the factor list is the datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceProduct {
    rank: usize,
    factors: Vec<IntVector>,
}

impl DifferenceProduct {
    pub fn new(rank: usize, factors: Vec<IntVector>) -> Result<Self, RingError> {
        if factors.is_empty() {
            return Err(RingError::ZeroFactor);
        }
        for f in &factors {
            if f.len() != rank {
                return Err(RingError::RankMismatch(f.len(), rank));
            }
            if f.iter().all(Zero::is_zero) {
                return Err(RingError::ZeroFactor);
            }
        }
        Ok(DifferenceProduct { rank, factors })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factors(&self) -> &[IntVector] {
        &self.factors
    }

    pub fn expand(&self) -> RingElement {
        let mut acc = RingElement::one(self.rank);
        for f in &self.factors {
            acc = &acc * &RingElement::difference(f.clone());
        }
        acc
    }
}

/// `(e_u + 1)(e_u - 1)^5` in rank one: the annihilator of a twist class about
/// a separating curve acting through a split isotropic wedge cube.
pub fn separating_twist_annihilator() -> RingElement {
    let e = RingElement::basis(vec![int(1)]);
    let one = RingElement::one(1);
    &(&e + &one) * &(&e - &one).pow(5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1(n: i64) -> RingElement {
        RingElement::basis(vec![int(n)])
    }

    #[test]
    fn expand_difference_product() {
        // (e_a - 1)(e_{-a} - 1) = 2 - e_a - e_{-a}
        let p = DifferenceProduct::new(1, vec![vec![int(1)], vec![int(-1)]]).unwrap();
        let expanded = p.expand();
        let expect = &(&RingElement::monomial(vec![int(0)], int(2)) - &e1(1)) - &e1(-1);
        assert_eq!(expanded, expect);
    }

    #[test]
    fn difference_product_rejects_zero_factor() {
        assert_eq!(
            DifferenceProduct::new(1, vec![vec![int(0)]]).unwrap_err(),
            RingError::ZeroFactor
        );
        assert!(DifferenceProduct::new(1, vec![]).is_err());
    }

    #[test]
    fn twist_annihilator_assembly() {
        // (u+1)(u-1)^4 * (u-1) = (u+1)(u-1)^5
        let e = e1(1);
        let one = RingElement::one(1);
        let q = &(&e + &one) * &(&e - &one).pow(4);
        let lhs = &q * &(&e - &one);
        assert_eq!(lhs, separating_twist_annihilator());
    }

    #[test]
    fn twist_annihilator_coefficients() {
        // e^6 - 4e^5 + 5e^4 - 5e^2 + 4e - 1
        let p = separating_twist_annihilator();
        let coeffs: Vec<(i64, i64)> = vec![(6, 1), (5, -4), (4, 5), (2, -5), (1, 4), (0, -1)];
        assert_eq!(p.num_terms(), coeffs.len());
        for (e, c) in coeffs {
            assert_eq!(p.coefficient(&[int(e)]), int(c));
        }
        assert_eq!(p.eval_rank1_at_unit(1), int(0));
        assert_eq!(p.eval_rank1_at_unit(-1), int(0));
    }

    #[test]
    fn four_term_identity_rank2() {
        // 1 + e_{w-v} - e_{-v} - e_w = -(e_w - 1)(e_v - 1) e_{-v}
        let w = RingElement::basis(vec![int(1), int(0)]);
        let v = RingElement::basis(vec![int(0), int(1)]);
        let w_minus_v = RingElement::basis(vec![int(1), int(-1)]);
        let neg_v = RingElement::basis(vec![int(0), int(-1)]);
        let one = RingElement::one(2);
        let lhs = &(&(&one + &w_minus_v) - &neg_v) - &w;
        let rhs = -&(&(&(&w - &one) * &(&v - &one)) * &neg_v);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn doubling_factorization() {
        // e_{2w} - 1 = (e_w - 1)(e_w + 1)
        let w = e1(1);
        let one = RingElement::one(1);
        let lhs = &e1(2) - &one;
        let rhs = &(&w - &one) * &(&w + &one);
        assert_eq!(lhs, rhs);
    }
}
