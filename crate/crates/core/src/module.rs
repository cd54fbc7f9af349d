//! Matrix-presented modules over `Z[A]`: a finitely generated abelian group
//! `Z^dim / relations` together with `rank_A` commuting invertible actions.
//! On top of the raw action sit the nilpotency chain, coinvariants and
//! invariants, and the two finite-generation engines: the certificate
//! enumeration (coset representatives times difference powers) and the
//! nilpotent induction via the averaged difference operators `f_bk`.

use crate::int::{binomial, int, Int};
use crate::lattice::{Lattice, LatticeError};
use crate::matrix::{IntMatrix, IntVector};
use crate::ring::RingElement;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("need {expected} action matrices, got {got}")]
    ActionCount { expected: usize, got: usize },
    #[error("action matrix {0} is not square of the module dimension")]
    ActionShape(usize),
    #[error("action matrices {0} and {1} do not commute modulo the relations")]
    NotCommuting(usize, usize),
    #[error("matrix {0} and its declared inverse do not multiply to the identity modulo the relations")]
    NotInverse(usize),
    #[error("action matrix {0} does not preserve the relation lattice")]
    RelationsNotPreserved(usize),
    #[error("module is not nilpotent within {0} steps")]
    NotNilpotentWithin(u32),
    #[error("invariants are only computed for torsion-free presentations")]
    TorsionPresentation,
    #[error("certificate directions are not of full rank")]
    CertificateNotFullRank,
    #[error("certificate direction {direction} fails: (e_a - 1)^{power} does not annihilate x")]
    CertificateFails { direction: usize, power: u32 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Finitely generated abelian group `Z^dim / relations` with a `Z[A]`-module
/// structure given by commuting invertible matrices.
#[derive(Clone, Debug)]
pub struct MatrixModule {
    dim: usize,
    rank_a: usize,
    action: Vec<IntMatrix>,
    inverses: Vec<IntMatrix>,
    relations: Lattice,
}

/// Element of a [`MatrixModule`], coordinates interpreted modulo relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement(pub IntVector);

/// Full-rank system of directions `a_s` with powers `k_s` witnessing that
/// `(e_{a_s} - 1)^{k_s}` annihilates a chosen element.
#[derive(Clone, Debug)]
pub struct FgCertificate {
    pub directions: Vec<(IntVector, u32)>,
}

impl MatrixModule {
    pub fn new(
        dim: usize,
        action: Vec<IntMatrix>,
        inverses: Vec<IntMatrix>,
        relations: Option<Lattice>,
    ) -> Result<Self, ModuleError> {
        let rank_a = action.len();
        if inverses.len() != rank_a {
            return Err(ModuleError::ActionCount { expected: rank_a, got: inverses.len() });
        }
        let relations = relations.unwrap_or_else(|| Lattice::zero(dim));
        if relations.ambient_rank() != dim {
            return Err(ModuleError::DimensionMismatch(relations.ambient_rank(), dim));
        }
        for (i, m) in action.iter().chain(inverses.iter()).enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(ModuleError::ActionShape(i % rank_a.max(1)));
            }
        }
        let module = MatrixModule { dim, rank_a, action, inverses, relations };
        module.check_invariants()?;
        Ok(module)
    }

    fn check_invariants(&self) -> Result<(), ModuleError> {
        let congruent = |a: &IntMatrix, b: &IntMatrix| -> Result<bool, ModuleError> {
            let diff = a - b;
            for c in 0..self.dim {
                if !self.relations.contains(&diff.col(c))? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let id = IntMatrix::identity(self.dim);
        for i in 0..self.rank_a {
            if !congruent(&(&self.action[i] * &self.inverses[i]), &id)?
                || !congruent(&(&self.inverses[i] * &self.action[i]), &id)?
            {
                return Err(ModuleError::NotInverse(i));
            }
            for j in i + 1..self.rank_a {
                if !congruent(
                    &(&self.action[i] * &self.action[j]),
                    &(&self.action[j] * &self.action[i]),
                )? {
                    return Err(ModuleError::NotCommuting(i, j));
                }
            }
        }
        for (i, m) in self.action.iter().chain(self.inverses.iter()).enumerate() {
            for row in self.relations.basis().iter_rows() {
                if !self.relations.contains(&m.apply(row))? {
                    return Err(ModuleError::RelationsNotPreserved(i % self.rank_a.max(1)));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank_a(&self) -> usize {
        self.rank_a
    }

    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    pub fn action(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn inverses(&self) -> &[IntMatrix] {
        &self.inverses
    }

    pub fn element(&self, coords: IntVector) -> Result<ModuleElement, ModuleError> {
        if coords.len() != self.dim {
            return Err(ModuleError::DimensionMismatch(coords.len(), self.dim));
        }
        Ok(ModuleElement(self.relations.reduce(&coords)))
    }

    pub fn reduce(&self, x: &ModuleElement) -> ModuleElement {
        ModuleElement(self.relations.reduce(&x.0))
    }

    pub fn is_zero(&self, x: &ModuleElement) -> bool {
        self.relations.reduce(&x.0).iter().all(Zero::is_zero)
    }

    /// `e_a . x` where `a in Z^rank_A`: the monomial action, negative
    /// exponents through the declared inverses. Not reduced.
    fn monomial_raw(&self, exponent: &[Int], x: &IntVector) -> IntVector {
        use num_traits::ToPrimitive;
        let mut v = x.clone();
        for (i, e) in exponent.iter().enumerate() {
            let m = if e.is_negative() { &self.inverses[i] } else { &self.action[i] };
            let reps = e.abs().to_u64().expect("exponent out of machine range");
            for _ in 0..reps {
                v = m.apply(&v);
            }
        }
        v
    }

    /// Action of a ring element, reduced to the canonical representative.
    pub fn act(&self, p: &RingElement, x: &ModuleElement) -> Result<ModuleElement, ModuleError> {
        if p.rank() != self.rank_a {
            return Err(ModuleError::DimensionMismatch(p.rank(), self.rank_a));
        }
        if x.0.len() != self.dim {
            return Err(ModuleError::DimensionMismatch(x.0.len(), self.dim));
        }
        let mut acc = vec![Int::zero(); self.dim];
        for (exp, coeff) in p.terms() {
            let img = self.monomial_raw(exp, &x.0);
            for (a, b) in acc.iter_mut().zip(img) {
                *a += coeff * b;
            }
        }
        Ok(ModuleElement(self.relations.reduce(&acc)))
    }

    pub fn annihilates(&self, p: &RingElement, x: &ModuleElement) -> Result<bool, ModuleError> {
        Ok(self.is_zero(&self.act(p, x)?))
    }

    /// Sublattice chain `N_0 = Z^dim, N_{t+1} = sum_i (rho_i - 1) N_t +
    /// relations`; the nilpotency index is the smallest `q` with
    /// `N_q <= relations`. The chain is monotone, so stabilization strictly
    /// above the relations proves the module is not nilpotent for any bound.
    pub fn nilpotency_index(&self, max_q: u32) -> Result<u32, ModuleError> {
        let mut level = Lattice::full(self.dim);
        let id = IntMatrix::identity(self.dim);
        for q in 1..=max_q {
            let mut gens: Vec<IntVector> = self.relations.basis_rows();
            for m in &self.action {
                let dm = m - &id;
                for row in level.basis().iter_rows() {
                    gens.push(dm.apply(row));
                }
            }
            let next = Lattice::from_generators(self.dim, gens);
            if self.relations.contains_lattice(&next)? {
                return Ok(q);
            }
            if next == level {
                // stable strictly above the relations: never nilpotent
                return Err(ModuleError::NotNilpotentWithin(max_q));
            }
            level = next;
        }
        Err(ModuleError::NotNilpotentWithin(max_q))
    }

    /// Coinvariants `M_A = M / sum_i im(rho_i - 1)`: invariant factors (0
    /// standing for a free `Z` factor) and the minimal generator count.
    pub fn coinvariants(&self) -> (Vec<Int>, usize) {
        let id = IntMatrix::identity(self.dim);
        let mut gens: Vec<IntVector> = self.relations.basis_rows();
        for m in &self.action {
            let dm = m - &id;
            for c in 0..self.dim {
                gens.push(dm.col(c));
            }
        }
        quotient_invariant_factors(self.dim, gens)
    }

    /// Invariants `M^A = intersection of ker(rho_i - 1)` as a saturated
    /// lattice; only available for torsion-free presentations.
    pub fn invariants(&self) -> Result<Lattice, ModuleError> {
        if !self.relations.is_zero() {
            return Err(ModuleError::TorsionPresentation);
        }
        let id = IntMatrix::identity(self.dim);
        let mut acc = Lattice::full(self.dim);
        for m in &self.action {
            let ker = crate::matrix::right_kernel(&(m - &id));
            let ker = Lattice::from_generators(self.dim, ker);
            acc = acc.sum_intersect(&ker)?.intersection;
        }
        Ok(acc.saturate())
    }

    /// `prod_i (rho_i - 1)^{k_i} . x`. When `|bk| = nilpotency index - 1`
    /// the value is invariant and does not change under any monomial prefix.
    pub fn f_bk(&self, x: &ModuleElement, bk: &[u32]) -> Result<ModuleElement, ModuleError> {
        if bk.len() != self.rank_a {
            return Err(ModuleError::DimensionMismatch(bk.len(), self.rank_a));
        }
        if x.0.len() != self.dim {
            return Err(ModuleError::DimensionMismatch(x.0.len(), self.dim));
        }
        let id = IntMatrix::identity(self.dim);
        let mut v = x.0.clone();
        for (i, &k) in bk.iter().enumerate() {
            let dm = &self.action[i] - &id;
            for _ in 0..k {
                v = dm.apply(&v);
            }
        }
        Ok(ModuleElement(self.relations.reduce(&v)))
    }

    /// Generating set of the whole module as an abelian group, built by the
    /// nilpotent induction: images of the top-degree difference operators
    /// `f_bk` span a central subgroup, the quotient has smaller index, and
    /// recursion glues the two generator lists. The count never exceeds
    /// `binom(k + r - 1, r) * n` with `k` the nilpotency index and `n` the
    /// number of coinvariant generators.
    pub fn generating_set(&self, max_q: u32) -> Result<Vec<ModuleElement>, ModuleError> {
        let k = self.nilpotency_index(max_q)?;
        let gens = self.generating_set_inner(k)?;
        Ok(gens.into_iter().map(ModuleElement).collect())
    }

    fn generating_set_inner(&self, k: u32) -> Result<Vec<IntVector>, ModuleError> {
        // lifts of a minimal generating set of the coinvariants
        let coinv_gens = self.coinvariant_generator_lifts();
        if k <= 1 {
            return Ok(coinv_gens);
        }
        // N = sum of im(f_bk) over |bk| = k - 1, generated by f_bk of the
        // coinvariant generator lifts
        let mut n_gens: Vec<IntVector> = Vec::new();
        for bk in compositions(k - 1, self.rank_a) {
            for g in &coinv_gens {
                let y = self.f_bk(&ModuleElement(g.clone()), &bk)?;
                n_gens.push(y.0);
            }
        }
        // recurse on M/N
        let mut new_rel_gens = self.relations.basis_rows();
        new_rel_gens.extend(n_gens.iter().cloned());
        let quotient = MatrixModule {
            dim: self.dim,
            rank_a: self.rank_a,
            action: self.action.clone(),
            inverses: self.inverses.clone(),
            relations: Lattice::from_generators(self.dim, new_rel_gens),
        };
        let mut gens = quotient.generating_set_inner(k - 1)?;
        gens.extend(n_gens);
        Ok(gens)
    }

    /// Lifts to `Z^dim` of a minimal generating set of `M_A`.
    fn coinvariant_generator_lifts(&self) -> Vec<IntVector> {
        let id = IntMatrix::identity(self.dim);
        let mut gens: Vec<IntVector> = self.relations.basis_rows();
        for m in &self.action {
            let dm = m - &id;
            for c in 0..self.dim {
                gens.push(dm.col(c));
            }
        }
        quotient_generator_lifts(self.dim, gens)
    }

    /// Certificate-driven enumeration: with `(e_{a_s} - 1)^{k_s} . x = 0`
    /// for a full-rank system of directions, the elements
    /// `e_b . prod_s (e_{a_s} - 1)^{j_s} . x` over coset representatives
    /// `b` of `<a_1 .. a_r>` and `0 <= j_s < k_s` generate `Z[A] . x` as an
    /// abelian group. `verified` reports the closure re-check: the spanned
    /// lattice is stable under every action matrix and its inverse.
    pub fn fg_from_certificate(
        &self,
        x: &ModuleElement,
        cert: &FgCertificate,
    ) -> Result<CertificateOutcome, ModuleError> {
        let r = self.rank_a;
        if cert.directions.len() != r {
            return Err(ModuleError::CertificateNotFullRank);
        }
        for (a, _) in &cert.directions {
            if a.len() != r {
                return Err(ModuleError::DimensionMismatch(a.len(), r));
            }
        }
        let dir_lattice = Lattice::from_generators(
            r,
            cert.directions.iter().map(|(a, _)| a.clone()).collect(),
        );
        if dir_lattice.rank() != r {
            return Err(ModuleError::CertificateNotFullRank);
        }
        // annihilation pre-check, reporting the offending direction
        for (s, (a, k)) in cert.directions.iter().enumerate() {
            let p = RingElement::difference(a.clone()).pow(*k as u64);
            if !self.annihilates(&p, x)? {
                return Err(ModuleError::CertificateFails { direction: s, power: *k });
            }
        }
        let (_, reps) = dir_lattice.index_and_cosets(&Lattice::full(r))?;
        // all products prod_s (e_{a_s} - 1)^{j_s} . x for j_s < k_s
        let mut layers: Vec<ModuleElement> = vec![x.clone()];
        for (a, k) in &cert.directions {
            let d = RingElement::difference(a.clone());
            let mut next = Vec::new();
            for y in &layers {
                let mut cur = y.clone();
                for _ in 0..*k {
                    next.push(cur.clone());
                    cur = self.act(&d, &cur)?;
                }
            }
            layers = next;
        }
        let mut gens: Vec<ModuleElement> = Vec::new();
        for b in &reps {
            let eb = RingElement::basis(b.clone());
            for y in &layers {
                let g = self.act(&eb, y)?;
                if !gens.contains(&g) {
                    gens.push(g);
                }
            }
        }
        let verified = self.closure_certifies(&gens)?;
        Ok(CertificateOutcome { generators: gens, verified })
    }

    /// True iff the abelian span of `gens` plus the relations is stable
    /// under every action matrix and inverse — the independent oracle for
    /// both engines.
    pub fn closure_certifies(&self, gens: &[ModuleElement]) -> Result<bool, ModuleError> {
        let mut lat_gens: Vec<IntVector> = self.relations.basis_rows();
        lat_gens.extend(gens.iter().map(|g| g.0.clone()));
        let span = Lattice::from_generators(self.dim, lat_gens);
        for m in self.action.iter().chain(self.inverses.iter()) {
            for g in gens {
                if !span.contains(&m.apply(&g.0))? {
                    return Ok(false);
                }
            }
            for row in self.relations.basis().iter_rows() {
                if !span.contains(&m.apply(row))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff the abelian span of `gens` plus relations contains the
    /// standard generators of the module, i.e. the set generates everything.
    pub fn spans_module(&self, gens: &[ModuleElement]) -> Result<bool, ModuleError> {
        let mut lat_gens: Vec<IntVector> = self.relations.basis_rows();
        lat_gens.extend(gens.iter().map(|g| g.0.clone()));
        let span = Lattice::from_generators(self.dim, lat_gens);
        for i in 0..self.dim {
            let mut unit = vec![Int::zero(); self.dim];
            unit[i] = Int::one();
            if !span.contains(&unit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub struct CertificateOutcome {
    pub generators: Vec<ModuleElement>,
    pub verified: bool,
}

/// Generator-count bound of the nilpotent induction.
pub fn generating_bound(k: u32, r: u32, n: &Int) -> Int {
    binomial(&int((k + r - 1) as i64), r as u64) * n
}

/// Invariant factors (0 for free factors) and minimal generator count of
/// `Z^dim / <gens>`.
fn quotient_invariant_factors(dim: usize, gens: Vec<IntVector>) -> (Vec<Int>, usize) {
    if gens.is_empty() {
        return (vec![Int::zero(); dim], dim);
    }
    let m = IntMatrix::from_rows(gens, dim);
    let snf = crate::matrix::smith_normal_form(&m);
    let mut factors: Vec<Int> =
        snf.invariant_factors.iter().filter(|f| !f.is_one()).cloned().collect();
    let free = dim - snf.invariant_factors.len();
    factors.extend(std::iter::repeat_n(Int::zero(), free));
    let count = factors.len();
    (factors, count)
}

/// Lifts of a minimal generating set of `Z^dim / <gens>`: rows of the
/// inverse column transform of the Smith form, kept for factors != 1.
fn quotient_generator_lifts(dim: usize, gens: Vec<IntVector>) -> Vec<IntVector> {
    if gens.is_empty() {
        return IntMatrix::identity(dim).iter_rows().map(|r| r.to_vec()).collect();
    }
    let m = IntMatrix::from_rows(gens, dim);
    let snf = crate::matrix::smith_normal_form(&m);
    let v_inv = crate::matrix::unimodular_inverse(&snf.v);
    let rank = snf.invariant_factors.len();
    let mut lifts = Vec::new();
    for i in 0..dim {
        let keep = if i < rank { !snf.invariant_factors[i].is_one() } else { true };
        if keep {
            lifts.push(v_inv.row(i));
        }
    }
    lifts
}

/// All vectors of `len` nonnegative integers summing to `total`,
/// lexicographic.
fn compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, len - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jordan_block(size: usize) -> MatrixModule {
        let mut m = IntMatrix::identity(size);
        let mut inv = IntMatrix::identity(size);
        for i in 0..size - 1 {
            m[(i, i + 1)] = Int::one();
        }
        // inverse of the unipotent upper bidiagonal block
        for i in 0..size {
            for j in i + 1..size {
                inv[(i, j)] = if (j - i) % 2 == 0 { Int::one() } else { -Int::one() };
            }
        }
        MatrixModule::new(size, vec![m], vec![inv], None).unwrap()
    }

    fn scaling(factor: i64) -> Result<MatrixModule, ModuleError> {
        MatrixModule::new(
            1,
            vec![IntMatrix::from_i64(&[&[factor]])],
            vec![IntMatrix::from_i64(&[&[factor]])],
            None,
        )
    }

    #[test]
    fn constructor_rejects_fake_inverse() {
        // 2 * 2 != 1 over Z
        assert!(matches!(scaling(2), Err(ModuleError::NotInverse(0))));
    }

    #[test]
    fn constructor_rejects_noncommuting() {
        let a = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let a_inv = IntMatrix::from_i64(&[&[1, -1], &[0, 1]]);
        let b = IntMatrix::from_i64(&[&[1, 0], &[1, 1]]);
        let b_inv = IntMatrix::from_i64(&[&[1, 0], &[-1, 1]]);
        assert!(matches!(
            MatrixModule::new(2, vec![a, b], vec![a_inv, b_inv], None),
            Err(ModuleError::NotCommuting(0, 1))
        ));
    }

    #[test]
    fn act_examples() {
        let m = jordan_block(2);
        let x = m.element(vec![int(0), int(1)]).unwrap();
        // unit acts trivially
        let unit = RingElement::one(1);
        assert_eq!(m.act(&unit, &x).unwrap(), x);
        // (e - 1) . (0,1) = (1,0)
        let d = RingElement::difference(vec![int(1)]);
        assert_eq!(m.act(&d, &x).unwrap().0, vec![int(1), int(0)]);
        // (e - 1)^2 kills it
        assert!(m.annihilates(&d.pow(2), &x).unwrap());
        // ring action property: act(p*q, x) = act(p, act(q, x))
        let p = RingElement::basis(vec![int(2)]);
        let q = RingElement::difference(vec![int(-1)]);
        let lhs = m.act(&(&p * &q), &x).unwrap();
        let rhs = m.act(&p, &m.act(&q, &x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn annihilates_scaling_counterexample() {
        // relations 5Z make rho = 2 invertible mod 5 (2 * 3 = 6 = 1 mod 5)
        let m = MatrixModule::new(
            1,
            vec![IntMatrix::from_i64(&[&[2]])],
            vec![IntMatrix::from_i64(&[&[3]])],
            Some(Lattice::from_generators(1, vec![vec![int(5)]])),
        )
        .unwrap();
        let x = m.element(vec![int(1)]).unwrap();
        let d = RingElement::difference(vec![int(1)]);
        // (rho - 1) x = x != 0
        assert!(!m.annihilates(&d, &x).unwrap());
        let zero = m.element(vec![int(0)]).unwrap();
        assert!(m.annihilates(&d, &zero).unwrap());
    }

    #[test]
    fn nilpotency_examples() {
        let trivial = MatrixModule::new(
            2,
            vec![IntMatrix::identity(2)],
            vec![IntMatrix::identity(2)],
            None,
        )
        .unwrap();
        assert_eq!(trivial.nilpotency_index(5).unwrap(), 1);
        for size in 2..=4 {
            assert_eq!(jordan_block(size).nilpotency_index(10).unwrap(), size as u32);
        }
        let m = MatrixModule::new(
            1,
            vec![IntMatrix::from_i64(&[&[2]])],
            vec![IntMatrix::from_i64(&[&[3]])],
            Some(Lattice::from_generators(1, vec![vec![int(5)]])),
        )
        .unwrap();
        assert!(matches!(m.nilpotency_index(20), Err(ModuleError::NotNilpotentWithin(20))));
    }

    #[test]
    fn coinvariants_examples() {
        let trivial = MatrixModule::new(
            2,
            vec![IntMatrix::identity(2)],
            vec![IntMatrix::identity(2)],
            None,
        )
        .unwrap();
        let (factors, n) = trivial.coinvariants();
        assert_eq!(factors, vec![int(0), int(0)]);
        assert_eq!(n, 2);

        let (factors, n) = jordan_block(2).coinvariants();
        assert_eq!(factors, vec![int(0)]);
        assert_eq!(n, 1);

        let m = MatrixModule::new(
            1,
            vec![IntMatrix::from_i64(&[&[3]])],
            vec![IntMatrix::from_i64(&[&[3]])],
            Some(Lattice::from_generators(1, vec![vec![int(8)]])),
        );
        // 3 * 3 = 9 = 1 mod 8, so this is a legal module; im(rho - 1) = 2Z
        let m = m.unwrap();
        let (factors, n) = m.coinvariants();
        assert_eq!(factors, vec![int(2)]);
        assert_eq!(n, 1);
    }

    #[test]
    fn invariants_examples() {
        let trivial = MatrixModule::new(
            2,
            vec![IntMatrix::identity(2)],
            vec![IntMatrix::identity(2)],
            None,
        )
        .unwrap();
        assert_eq!(trivial.invariants().unwrap(), Lattice::full(2));
        assert_eq!(
            jordan_block(2).invariants().unwrap(),
            Lattice::from_generators(2, vec![vec![int(1), int(0)]])
        );
        let m = MatrixModule::new(
            1,
            vec![IntMatrix::from_i64(&[&[2]])],
            vec![IntMatrix::from_i64(&[&[3]])],
            Some(Lattice::from_generators(1, vec![vec![int(5)]])),
        )
        .unwrap();
        assert!(matches!(m.invariants(), Err(ModuleError::TorsionPresentation)));
    }

    #[test]
    fn f_bk_examples() {
        let m = jordan_block(2);
        let x = m.element(vec![int(0), int(1)]).unwrap();
        assert_eq!(m.f_bk(&x, &[0]).unwrap(), x);
        let y = m.f_bk(&x, &[1]).unwrap();
        assert_eq!(y.0, vec![int(1), int(0)]);
        // invariant: rho fixes it
        assert_eq!(m.action()[0].apply(&y.0), y.0);
        // prefix independence at |bk| = index - 1
        for a in [-3i64, 2, 7] {
            let prefixed = m.act(&RingElement::basis(vec![int(a)]), &x).unwrap();
            assert_eq!(m.f_bk(&prefixed, &[1]).unwrap(), y);
        }
    }

    #[test]
    fn generating_set_examples() {
        // trivial action on Z^d: the d unit vectors
        let d = 3;
        let trivial = MatrixModule::new(
            d,
            vec![IntMatrix::identity(d)],
            vec![IntMatrix::identity(d)],
            None,
        )
        .unwrap();
        let gens = trivial.generating_set(5).unwrap();
        assert_eq!(gens.len(), d);
        assert!(trivial.spans_module(&gens).unwrap());

        // Jordan block size 3: at most binom(3,1) * 1 = 3 generators, spans
        let m = jordan_block(3);
        let gens = m.generating_set(10).unwrap();
        let (_, n) = m.coinvariants();
        let bound = generating_bound(3, 1, &int(n as i64));
        assert!(Int::from(gens.len()) <= bound);
        assert!(m.spans_module(&gens).unwrap());
        assert!(m.closure_certifies(&gens).unwrap());
    }

    #[test]
    fn generating_set_two_commuting_blocks() {
        // tensor square of two Jordan blocks: r = 2, dim 4, index 3
        // rho_1 = J (x) I, rho_2 = I (x) J on Z^2 (x) Z^2
        let j = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let jinv = IntMatrix::from_i64(&[&[1, -1], &[0, 1]]);
        let kron = |a: &IntMatrix, b: &IntMatrix| {
            let mut m = IntMatrix::zero(4, 4);
            for i in 0..2 {
                for jj in 0..2 {
                    for k in 0..2 {
                        for l in 0..2 {
                            m[(2 * i + k, 2 * jj + l)] = &a[(i, jj)] * &b[(k, l)];
                        }
                    }
                }
            }
            m
        };
        let id = IntMatrix::identity(2);
        let m = MatrixModule::new(
            4,
            vec![kron(&j, &id), kron(&id, &j)],
            vec![kron(&jinv, &id), kron(&id, &jinv)],
            None,
        )
        .unwrap();
        let k = m.nilpotency_index(10).unwrap();
        assert_eq!(k, 3);
        let gens = m.generating_set(10).unwrap();
        let (_, n) = m.coinvariants();
        assert!(Int::from(gens.len()) <= generating_bound(k, 2, &int(n as i64)));
        assert!(m.spans_module(&gens).unwrap());
    }

    #[test]
    fn certificate_examples() {
        // trivial action, unit-vector directions with k = 1: gens = {x}
        let trivial = MatrixModule::new(
            2,
            vec![IntMatrix::identity(2), IntMatrix::identity(2)],
            vec![IntMatrix::identity(2), IntMatrix::identity(2)],
            None,
        )
        .unwrap();
        let x = trivial.element(vec![int(3), int(5)]).unwrap();
        let cert = FgCertificate {
            directions: vec![(vec![int(1), int(0)], 1), (vec![int(0), int(1)], 1)],
        };
        let out = trivial.fg_from_certificate(&x, &cert).unwrap();
        assert_eq!(out.generators, vec![x.clone()]);
        assert!(out.verified);

        // doubled directions: 2^r coset reps, all acting trivially
        let cert2 = FgCertificate {
            directions: vec![(vec![int(2), int(0)], 1), (vec![int(0), int(2)], 1)],
        };
        let out = trivial.fg_from_certificate(&x, &cert2).unwrap();
        assert_eq!(out.generators, vec![x.clone()]);
        assert!(out.verified);

        // Jordan block size 2, direction (1) with power 2
        let m = jordan_block(2);
        let x = m.element(vec![int(0), int(1)]).unwrap();
        let cert = FgCertificate { directions: vec![(vec![int(1)], 2)] };
        let out = m.fg_from_certificate(&x, &cert).unwrap();
        let got: Vec<IntVector> = out.generators.iter().map(|g| g.0.clone()).collect();
        assert!(got.contains(&vec![int(0), int(1)]));
        assert!(got.contains(&vec![int(1), int(0)]));
        assert!(out.verified);

        // under-powered certificate reports the failing direction
        let bad = FgCertificate { directions: vec![(vec![int(1)], 1)] };
        assert!(matches!(
            m.fg_from_certificate(&x, &bad),
            Err(ModuleError::CertificateFails { direction: 0, power: 1 })
        ));

        // rank-deficient certificate rejected
        let dep = FgCertificate {
            directions: vec![(vec![int(1), int(1)], 1), (vec![int(2), int(2)], 1)],
        };
        assert!(matches!(
            trivial.fg_from_certificate(&x, &dep),
            Err(ModuleError::CertificateNotFullRank)
        ));
    }

    #[test]
    fn compositions_count() {
        // binom(k + r - 2, r - 1) vectors of |bk| = k - 1
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
        assert_eq!(compositions(3, 1), vec![vec![3]]);
    }
}
