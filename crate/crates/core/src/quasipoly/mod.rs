//! Finite-difference calculus on integer windows with values in a finitely
//! generated abelian group.
//!
//! Every statement here is window-relative: operators shrink domains by
//! their reach, degree certificates hold on the window they were computed
//! on, and the solvers in [`solvers`] report exactly the sub-box on which
//! their reconstruction is forced by the defining recurrences.

pub mod solvers;

pub use solvers::*;

use crate::int::{binomial, int, Int};
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuasipolyError {
    #[error("target group mismatch")]
    TargetMismatch,
    #[error("element has {0} coordinates, target group needs {1}")]
    ElementShape(usize, usize),
    #[error("window too small: need at least {needed} points, have {got}")]
    WindowTooSmall { needed: i64, got: i64 },
    #[error("window of f{index} does not cover [{need_lo}, {need_hi}]")]
    WindowCoverage { index: usize, need_lo: i64, need_hi: i64 },
    #[error("functional equation violated at {point:?}")]
    EquationViolated { point: Vec<i64> },
    #[error("function is not polynomial on its window (within degree {0})")]
    NotPolynomialOnWindow(u32),
    #[error("box must contain the anchor lines (rows l=0,1 and column k=0)")]
    MissingAnchor,
    #[error("boundary precondition violated at {point:?}")]
    BoundaryPrecondition { point: Vec<i64> },
    #[error("degenerate box")]
    DegenerateBox,
}

/// Finitely generated abelian target `Z^free_rank (+) Z/m_1 (+) ... `;
/// elements are coordinate vectors with torsion coordinates reduced into
/// `[0, m_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

pub type Elem = Vec<Int>;

impl TargetGroup {
    pub fn free(rank: usize) -> Self {
        TargetGroup { free_rank: rank, torsion: vec![] }
    }

    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Self {
        assert!(torsion.iter().all(|&m| m >= 2), "torsion moduli must be >= 2");
        TargetGroup { free_rank, torsion }
    }

    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn zero(&self) -> Elem {
        vec![Int::zero(); self.dim()]
    }

    pub fn normalize(&self, mut v: Elem) -> Elem {
        assert_eq!(v.len(), self.dim());
        for (i, &m) in self.torsion.iter().enumerate() {
            let idx = self.free_rank + i;
            v[idx] = v[idx].mod_floor(&int(m as i64));
        }
        v
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.normalize(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.normalize(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.normalize(a.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, n: &Int, a: &Elem) -> Elem {
        self.normalize(a.iter().map(|x| n * x).collect())
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(Zero::is_zero)
    }
}

/// Shift and difference operators; a word of these is applied left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    /// `(Tf)(t) = f(t+1)`
    Shift,
    /// `(T^{-1}f)(t) = f(t-1)`
    ShiftInv,
    /// `(Df)(t) = f(t+1) - f(t)`
    Delta,
    /// `(D_h f)(t) = f(t+h) - f(t)`
    DeltaH(i64),
}

/// Function on the integer window `[lo, hi]` with values in a target group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowFn1 {
    pub target: TargetGroup,
    pub lo: i64,
    pub hi: i64,
    values: Vec<Elem>,
}

impl WindowFn1 {
    pub fn new(
        target: TargetGroup,
        lo: i64,
        hi: i64,
        values: Vec<Elem>,
    ) -> Result<Self, QuasipolyError> {
        if hi < lo {
            return Err(QuasipolyError::DegenerateBox);
        }
        if values.len() as i64 != hi - lo + 1 {
            return Err(QuasipolyError::WindowTooSmall {
                needed: hi - lo + 1,
                got: values.len() as i64,
            });
        }
        let dim = target.dim();
        for v in &values {
            if v.len() != dim {
                return Err(QuasipolyError::ElementShape(v.len(), dim));
            }
        }
        let values = values.into_iter().map(|v| target.normalize(v)).collect();
        Ok(WindowFn1 { target, lo, hi, values })
    }

    pub fn from_fn(
        target: TargetGroup,
        lo: i64,
        hi: i64,
        f: impl Fn(i64) -> Elem,
    ) -> Self {
        let values = (lo..=hi).map(f).collect();
        Self::new(target, lo, hi, values).expect("window construction from closure")
    }

    pub fn zero(target: TargetGroup, lo: i64, hi: i64) -> Self {
        let z = target.zero();
        Self::from_fn(target, lo, hi, |_| z.clone())
    }

    pub fn len(&self) -> i64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, t: i64) -> &Elem {
        assert!(t >= self.lo && t <= self.hi, "argument {t} outside window [{}, {}]", self.lo, self.hi);
        &self.values[(t - self.lo) as usize]
    }

    pub fn is_zero_fn(&self) -> bool {
        self.values.iter().all(|v| self.target.is_zero(v))
    }

    pub fn apply_op(&self, op: Op) -> Result<WindowFn1, QuasipolyError> {
        let (lo, hi, h) = match op {
            Op::Shift => (self.lo, self.hi - 1, 1i64),
            Op::ShiftInv => (self.lo + 1, self.hi, -1),
            Op::Delta => (self.lo, self.hi - 1, 1),
            Op::DeltaH(h) => {
                if h >= 0 {
                    (self.lo, self.hi - h, h)
                } else {
                    (self.lo - h, self.hi, h)
                }
            }
        };
        if hi < lo {
            return Err(QuasipolyError::WindowTooSmall { needed: 1, got: 0 });
        }
        let values = (lo..=hi)
            .map(|t| match op {
                Op::Shift | Op::ShiftInv => self.value(t + h).clone(),
                Op::Delta | Op::DeltaH(_) => {
                    self.target.sub(self.value(t + h), self.value(t))
                }
            })
            .collect();
        WindowFn1::new(self.target.clone(), lo, hi, values)
    }

    pub fn apply_word(&self, word: &[Op]) -> Result<WindowFn1, QuasipolyError> {
        let mut f = self.clone();
        for &op in word {
            f = f.apply_op(op)?;
        }
        Ok(f)
    }

    /// `(T+1)f`, the even-odd symmetrization used for quasipolynomials.
    pub fn shift_plus_one(&self) -> Result<WindowFn1, QuasipolyError> {
        if self.hi <= self.lo {
            return Err(QuasipolyError::WindowTooSmall { needed: 2, got: self.len() });
        }
        let values = (self.lo..self.hi)
            .map(|t| self.target.add(self.value(t + 1), self.value(t)))
            .collect();
        WindowFn1::new(self.target.clone(), self.lo, self.hi - 1, values)
    }

    /// Smallest `k <= kmax` with `Delta^{k+1} f = 0` on the shrunk window;
    /// the certificate is relative to this window.
    pub fn poly_degree(&self, kmax: u32) -> Result<DegreeOutcome, QuasipolyError> {
        if self.len() < kmax as i64 + 2 {
            return Err(QuasipolyError::WindowTooSmall {
                needed: kmax as i64 + 2,
                got: self.len(),
            });
        }
        let mut diff = self.apply_op(Op::Delta)?;
        for k in 0..=kmax {
            if diff.is_zero_fn() {
                return Ok(DegreeOutcome::Degree(k));
            }
            if k < kmax {
                diff = diff.apply_op(Op::Delta)?;
            }
        }
        Ok(DegreeOutcome::NotWithin(kmax))
    }

    /// Smallest `k <= kmax` with `(T+1) Delta^{k+1} f = 0` on the window.
    pub fn quasipoly_degree(&self, kmax: u32) -> Result<DegreeOutcome, QuasipolyError> {
        if self.len() < kmax as i64 + 3 {
            return Err(QuasipolyError::WindowTooSmall {
                needed: kmax as i64 + 3,
                got: self.len(),
            });
        }
        let mut diff = self.apply_op(Op::Delta)?;
        for k in 0..=kmax {
            if diff.shift_plus_one()?.is_zero_fn() {
                return Ok(DegreeOutcome::Degree(k));
            }
            if k < kmax {
                diff = diff.apply_op(Op::Delta)?;
            }
        }
        Ok(DegreeOutcome::NotWithin(kmax))
    }

    /// Unique binomial-basis coefficients of a window-certified polynomial:
    /// `f(t) = sum_i binom(t, i) b_i` reproducing the window exactly.
    pub fn binomial_fit(&self, kmax: u32) -> Result<BinomialPoly, QuasipolyError> {
        let k = match self.poly_degree(kmax)? {
            DegreeOutcome::Degree(k) => k,
            DegreeOutcome::NotWithin(k) => return Err(QuasipolyError::NotPolynomialOnWindow(k)),
        };
        // Newton coefficients at the window base: c_i = (Delta^i f)(lo)
        let mut newton = Vec::with_capacity(k as usize + 1);
        let mut cur = self.clone();
        for i in 0..=k {
            newton.push(cur.value(cur.lo).clone());
            if i < k {
                cur = cur.apply_op(Op::Delta)?;
            }
        }
        // rebase from binom(t - lo, i) to binom(t, j) via Vandermonde:
        // b_j = sum_{i >= j} binom(-lo, i - j) c_i
        let minus_lo = int(-self.lo);
        let coefficients: Vec<Elem> = (0..=k)
            .map(|j| {
                let mut acc = self.target.zero();
                for i in j..=k {
                    let w = binomial(&minus_lo, (i - j) as u64);
                    acc = self.target.add(&acc, &self.target.scale(&w, &newton[i as usize]));
                }
                acc
            })
            .collect();
        let poly = BinomialPoly { target: self.target.clone(), coefficients };
        debug_assert!((self.lo..=self.hi).all(|t| poly.evaluate(t) == *self.value(t)));
        Ok(poly)
    }

    /// Pointwise equality on the overlap of the two windows.
    pub fn agrees_with(&self, other: &WindowFn1, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|t| self.value(t) == other.value(t))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeOutcome {
    Degree(u32),
    NotWithin(u32),
}

/// `f(t) = b_0 + t b_1 + binom(t,2) b_2 + ...` with group coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialPoly {
    pub target: TargetGroup,
    pub coefficients: Vec<Elem>,
}

impl BinomialPoly {
    pub fn evaluate(&self, t: i64) -> Elem {
        let t = int(t);
        let mut acc = self.target.zero();
        for (i, b) in self.coefficients.iter().enumerate() {
            let w = binomial(&t, i as u64);
            acc = self.target.add(&acc, &self.target.scale(&w, b));
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// Function on a rectangular box `[klo, khi] x [llo, lhi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowFn2 {
    pub target: TargetGroup,
    pub klo: i64,
    pub khi: i64,
    pub llo: i64,
    pub lhi: i64,
    values: Vec<Elem>,
}

impl WindowFn2 {
    pub fn new(
        target: TargetGroup,
        (klo, khi, llo, lhi): (i64, i64, i64, i64),
        values: Vec<Elem>,
    ) -> Result<Self, QuasipolyError> {
        if khi < klo || lhi < llo {
            return Err(QuasipolyError::DegenerateBox);
        }
        let nk = (khi - klo + 1) as usize;
        let nl = (lhi - llo + 1) as usize;
        if values.len() != nk * nl {
            return Err(QuasipolyError::WindowTooSmall {
                needed: (nk * nl) as i64,
                got: values.len() as i64,
            });
        }
        let dim = target.dim();
        for v in &values {
            if v.len() != dim {
                return Err(QuasipolyError::ElementShape(v.len(), dim));
            }
        }
        let values = values.into_iter().map(|v| target.normalize(v)).collect();
        Ok(WindowFn2 { target, klo, khi, llo, lhi, values })
    }

    pub fn from_fn(
        target: TargetGroup,
        (klo, khi, llo, lhi): (i64, i64, i64, i64),
        f: impl Fn(i64, i64) -> Elem,
    ) -> Self {
        let mut values = Vec::new();
        for k in klo..=khi {
            for l in llo..=lhi {
                values.push(f(k, l));
            }
        }
        Self::new(target, (klo, khi, llo, lhi), values).expect("window construction from closure")
    }

    pub fn value(&self, k: i64, l: i64) -> &Elem {
        assert!(
            k >= self.klo && k <= self.khi && l >= self.llo && l <= self.lhi,
            "argument ({k}, {l}) outside box"
        );
        let nl = (self.lhi - self.llo + 1) as usize;
        &self.values[(k - self.klo) as usize * nl + (l - self.llo) as usize]
    }

    pub fn contains(&self, k: i64, l: i64) -> bool {
        k >= self.klo && k <= self.khi && l >= self.llo && l <= self.lhi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> TargetGroup {
        TargetGroup::free(1)
    }

    fn floor_half(t: i64) -> Elem {
        vec![int(t.div_euclid(2))]
    }

    #[test]
    fn delta_on_constant_is_zero() {
        let f = WindowFn1::from_fn(z(), -3, 4, |_| vec![int(7)]);
        assert!(f.apply_op(Op::Delta).unwrap().is_zero_fn());
    }

    #[test]
    fn delta_on_floor_half_alternates() {
        let f = WindowFn1::from_fn(z(), 0, 6, floor_half);
        let d = f.apply_op(Op::Delta).unwrap();
        let got: Vec<Int> = (0..=5).map(|t| d.value(t)[0].clone()).collect();
        assert_eq!(got, vec![int(0), int(1), int(0), int(1), int(0), int(1)]);
    }

    #[test]
    fn shift_and_delta_commute() {
        let f = WindowFn1::from_fn(z(), -5, 5, |t| vec![int(t * t * t - 2 * t)]);
        let td = f.apply_word(&[Op::Delta, Op::Shift]).unwrap();
        let dt = f.apply_word(&[Op::Shift, Op::Delta]).unwrap();
        assert_eq!(td, dt);
    }

    #[test]
    fn delta_h_commute() {
        let f = WindowFn1::from_fn(z(), -6, 8, |t| vec![int(t * t + 3)]);
        let a = f.apply_word(&[Op::DeltaH(2), Op::DeltaH(-3)]).unwrap();
        let b = f.apply_word(&[Op::DeltaH(-3), Op::DeltaH(2)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn poly_degree_examples() {
        let c = WindowFn1::from_fn(z(), 0, 5, |_| vec![int(9)]);
        assert_eq!(c.poly_degree(3).unwrap(), DegreeOutcome::Degree(0));

        // t -> binom(t, 2) * v has degree 2
        let f = WindowFn1::from_fn(z(), -4, 6, |t| vec![int(t * (t - 1) / 2) * int(5)]);
        assert_eq!(f.poly_degree(4).unwrap(), DegreeOutcome::Degree(2));

        let fh = WindowFn1::from_fn(z(), 0, 8, floor_half);
        assert_eq!(fh.poly_degree(3).unwrap(), DegreeOutcome::NotWithin(3));

        assert!(matches!(
            c.poly_degree(10),
            Err(QuasipolyError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn quasipoly_degree_examples() {
        let fh = WindowFn1::from_fn(z(), -6, 8, floor_half);
        assert_eq!(fh.quasipoly_degree(3).unwrap(), DegreeOutcome::Degree(1));

        // parity indicator: degree 0
        let par = WindowFn1::from_fn(z(), -5, 5, |t| vec![int(t.rem_euclid(2))]);
        assert_eq!(par.quasipoly_degree(3).unwrap(), DegreeOutcome::Degree(0));

        // true degree-3 binomial polynomial
        let f = WindowFn1::from_fn(z(), -6, 8, |t| {
            vec![int(t * (t - 1) * (t - 2) / 6) * int(2) + int(t)]
        });
        assert_eq!(f.quasipoly_degree(5).unwrap(), DegreeOutcome::Degree(3));
    }

    #[test]
    fn quasipoly_degree_drop_under_delta() {
        // f quasi of degree k > 0 iff f' quasi of degree k - 1
        let fh = WindowFn1::from_fn(z(), -8, 10, |t| {
            vec![int(t.div_euclid(2)) * int(3) + int(t * t)]
        });
        let DegreeOutcome::Degree(k) = fh.quasipoly_degree(4).unwrap() else {
            panic!("expected a degree");
        };
        let d = fh.apply_op(Op::Delta).unwrap();
        assert_eq!(d.quasipoly_degree(4).unwrap(), DegreeOutcome::Degree(k - 1));
    }

    #[test]
    fn binomial_fit_examples() {
        let c = WindowFn1::from_fn(z(), -2, 3, |_| vec![int(4)]);
        let p = c.binomial_fit(2).unwrap();
        assert_eq!(p.coefficients, vec![vec![int(4)]]);

        let f = WindowFn1::from_fn(z(), 0, 4, |t| vec![int(2 * t)]);
        let p = f.binomial_fit(2).unwrap();
        assert_eq!(p.coefficients, vec![vec![int(0)], vec![int(2)]]);

        // 3 + 2t + 5 binom(t,2), window away from zero
        let f = WindowFn1::from_fn(z(), 3, 11, |t| vec![int(3 + 2 * t + 5 * (t * (t - 1) / 2))]);
        let p = f.binomial_fit(4).unwrap();
        assert_eq!(p.coefficients, vec![vec![int(3)], vec![int(2)], vec![int(5)]]);
        for t in -5..15 {
            assert_eq!(p.evaluate(t), vec![int(3 + 2 * t + 5 * (t * (t - 1) / 2))]);
        }

        // uniqueness: same window fit twice is coefficient-identical
        let q = f.binomial_fit(4).unwrap();
        assert_eq!(p, q);

        let fh = WindowFn1::from_fn(z(), 0, 8, floor_half);
        assert!(matches!(
            fh.binomial_fit(3),
            Err(QuasipolyError::NotPolynomialOnWindow(3))
        ));
    }

    #[test]
    fn torsion_target_arithmetic() {
        let g = TargetGroup::new(1, vec![6]);
        let a = g.normalize(vec![int(2), int(11)]);
        assert_eq!(a, vec![int(2), int(5)]);
        let b = vec![int(-1), int(3)];
        assert_eq!(g.add(&a, &b), vec![int(1), int(2)]);
        assert_eq!(g.scale(&int(4), &b), vec![int(-4), int(0)]);
    }
}
