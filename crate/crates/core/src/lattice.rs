//! Sublattices of `Z^r` with canonical Hermite bases: membership, saturation,
//! sums and intersections, indexes of full-rank sublattice pairs and coset
//! transversals.

use crate::int::{int, Int};
use crate::matrix::{
    hermite_normal_form, right_kernel, smith_normal_form, unimodular_inverse, IntMatrix, IntVector,
};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("ambient rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("not a sublattice: generator {0} of the candidate does not lie in the bigger lattice")]
    NotSublattice(usize),
    #[error("infinite index: ranks {sub} < {sup}")]
    InfiniteIndex { sub: usize, sup: usize },
}

/// Subgroup of `Z^ambient_rank`, stored as its canonical row HNF basis.
/// Two values are equal as sets iff the stored bases are identical.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient_rank: usize,
    /// Nonzero HNF rows only; `rank = basis.rows()`.
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice(rank {} in Z^{}) {:?}", self.rank(), self.ambient_rank, self.basis)
    }
}

impl Lattice {
    /// Lattice spanned by arbitrary generators (rows); canonicalized here.
    pub fn from_generators(ambient_rank: usize, generators: Vec<IntVector>) -> Self {
        for g in &generators {
            assert_eq!(g.len(), ambient_rank, "generator length must equal ambient rank");
        }
        let m = IntMatrix::from_rows(generators, ambient_rank);
        let hnf = hermite_normal_form(&m);
        let rows = (0..hnf.rank).map(|r| hnf.h.row(r)).collect();
        Lattice {
            ambient_rank,
            basis: IntMatrix::from_rows(rows, ambient_rank),
            pivots: hnf.pivots,
        }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self::from_generators(ambient_rank, vec![])
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::from_generators(
            ambient_rank,
            (0..ambient_rank)
                .map(|i| {
                    let mut v = vec![Int::zero(); ambient_rank];
                    v[i] = Int::one();
                    v
                })
                .collect(),
        )
    }

    /// `n * Z^ambient`, scaled copy of the full lattice.
    pub fn scaled_full(ambient_rank: usize, n: &Int) -> Self {
        Self::from_generators(
            ambient_rank,
            (0..ambient_rank)
                .map(|i| {
                    let mut v = vec![Int::zero(); ambient_rank];
                    v[i] = n.clone();
                    v
                })
                .collect(),
        )
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<IntVector> {
        (0..self.rank()).map(|r| self.basis.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Scale every basis vector by `n`.
    pub fn scaled(&self, n: &Int) -> Self {
        Self::from_generators(
            self.ambient_rank,
            self.basis_rows().into_iter().map(|r| r.iter().map(|x| x * n).collect()).collect(),
        )
    }

    /// Integer coefficients expressing `v` in the stored basis, or `None` if
    /// `v` is not in the lattice. Back-substitution along the pivot ladder.
    pub fn member(&self, v: &[Int]) -> Result<Option<IntVector>, LatticeError> {
        if v.len() != self.ambient_rank {
            return Err(LatticeError::RankMismatch(v.len(), self.ambient_rank));
        }
        let mut rem: IntVector = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (i, &pc) in self.pivots.iter().enumerate() {
            let pivot = &self.basis[(i, pc)];
            let (q, r) = num_integer::div_rem(rem[pc].clone(), pivot.clone());
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for c in pc..self.ambient_rank {
                    let sub = &q * &self.basis[(i, c)];
                    rem[c] -= sub;
                }
            }
            coeffs.push(q);
        }
        if rem.iter().all(Zero::is_zero) {
            Ok(Some(coeffs))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, v: &[Int]) -> Result<bool, LatticeError> {
        Ok(self.member(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool, LatticeError> {
        if other.ambient_rank != self.ambient_rank {
            return Err(LatticeError::RankMismatch(other.ambient_rank, self.ambient_rank));
        }
        for row in other.basis.iter_rows() {
            if !self.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical representative of `v` modulo this lattice: each pivot
    /// coordinate reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[Int]) -> IntVector {
        assert_eq!(v.len(), self.ambient_rank);
        let mut rem: IntVector = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let q = rem[pc].div_floor(&self.basis[(i, pc)]);
            if !q.is_zero() {
                for c in pc..self.ambient_rank {
                    let sub = &q * &self.basis[(i, c)];
                    rem[c] -= sub;
                }
            }
        }
        rem
    }

    /// Smallest direct summand of the ambient containing this lattice:
    /// `{ v : m v in L for some m != 0 }`. Same rank, finite index over `L`,
    /// idempotent.
    pub fn saturate(&self) -> Lattice {
        // orthogonal-complement twice: sat(L) = ker(ker(B)) over Z
        let ker = right_kernel(&self.basis);
        if ker.is_empty() {
            return Lattice::full(self.ambient_rank);
        }
        let k = IntMatrix::from_rows(ker, self.ambient_rank);
        let sat = right_kernel(&k);
        Lattice::from_generators(self.ambient_rank, sat)
    }

    /// `L1 + L2`, `L1 ∩ L2` and directness of the sum.
    pub fn sum_intersect(&self, other: &Lattice) -> Result<SumIntersection, LatticeError> {
        if other.ambient_rank != self.ambient_rank {
            return Err(LatticeError::RankMismatch(other.ambient_rank, self.ambient_rank));
        }
        let mut gens = self.basis_rows();
        gens.extend(other.basis_rows());
        let sum = Lattice::from_generators(self.ambient_rank, gens);

        // rows y = (y1, y2) of the left kernel of [B1; -B2] give
        // y1*B1 = y2*B2, a generator of the intersection
        let k1 = self.rank();
        let mut stacked = self.basis_rows();
        stacked.extend(other.basis_rows().into_iter().map(|r| r.iter().map(|x| -x).collect()));
        let stacked = IntMatrix::from_rows(stacked, self.ambient_rank);
        let ker = right_kernel(&stacked.transpose());
        let inter_gens: Vec<IntVector> = ker
            .iter()
            .map(|y| {
                let mut acc = vec![Int::zero(); self.ambient_rank];
                for (i, coeff) in y[..k1].iter().enumerate() {
                    for c in 0..self.ambient_rank {
                        let add = coeff * &self.basis[(i, c)];
                        acc[c] += add;
                    }
                }
                acc
            })
            .collect();
        let intersection = Lattice::from_generators(self.ambient_rank, inter_gens);
        let is_direct = intersection.is_zero();
        Ok(SumIntersection { sum, intersection, is_direct })
    }

    /// Index `|sup : self|` for equal-rank nested lattices: the product of
    /// the invariant factors of `self` written in `sup`'s basis.
    pub fn index_in(&self, sup: &Lattice) -> Result<Int, LatticeError> {
        let c = self.in_basis_of(sup)?;
        if self.rank() < sup.rank() {
            return Err(LatticeError::InfiniteIndex { sub: self.rank(), sup: sup.rank() });
        }
        Ok(crate::matrix::determinant(&c).abs())
    }

    /// Rows of the result express this lattice's basis in `sup`'s basis.
    fn in_basis_of(&self, sup: &Lattice) -> Result<IntMatrix, LatticeError> {
        if sup.ambient_rank != self.ambient_rank {
            return Err(LatticeError::RankMismatch(sup.ambient_rank, self.ambient_rank));
        }
        let mut rows = Vec::with_capacity(self.rank());
        for (i, row) in self.basis.iter_rows().enumerate() {
            match sup.member(row)? {
                Some(coeffs) => rows.push(coeffs),
                None => return Err(LatticeError::NotSublattice(i)),
            }
        }
        Ok(IntMatrix::from_rows(rows, sup.rank()))
    }

    /// Deterministic coset transversal of `self` in `sup`, lazily enumerated
    /// from the Smith box of the relative basis matrix (first box coordinate
    /// varies fastest), mapped back through the unimodular transforms.
    pub fn coset_reps(&self, sup: &Lattice) -> Result<CosetReps, LatticeError> {
        let c = self.in_basis_of(sup)?;
        if self.rank() < sup.rank() {
            return Err(LatticeError::InfiniteIndex { sub: self.rank(), sup: sup.rank() });
        }
        let snf = smith_normal_form(&c);
        let factors: Vec<Int> = (0..sup.rank()).map(|i| snf.d[(i, i)].clone()).collect();
        debug_assert!(factors.iter().all(|f| f.is_positive()));
        let v_inv = unimodular_inverse(&snf.v);
        Ok(CosetReps {
            factors,
            v_inv,
            sup_basis: sup.basis.clone(),
            counter: Some(vec![Int::zero(); sup.rank()]),
        })
    }

    /// Index plus fully materialized transversal; only sensible for small
    /// indexes, use `coset_reps` to stream large ones.
    pub fn index_and_cosets(&self, sup: &Lattice) -> Result<(Int, Vec<IntVector>), LatticeError> {
        let index = self.index_in(sup)?;
        let reps: Vec<IntVector> = self.coset_reps(sup)?.collect();
        debug_assert_eq!(Int::from(reps.len()), index);
        Ok((index, reps))
    }
}

pub struct SumIntersection {
    pub sum: Lattice,
    pub intersection: Lattice,
    pub is_direct: bool,
}

/// Iterator over coset representatives; see [`Lattice::coset_reps`].
pub struct CosetReps {
    factors: Vec<Int>,
    v_inv: IntMatrix,
    sup_basis: IntMatrix,
    counter: Option<Vec<Int>>,
}

impl Iterator for CosetReps {
    type Item = IntVector;

    fn next(&mut self) -> Option<IntVector> {
        let counter = self.counter.as_mut()?;
        // y (box coords) -> y * v_inv (sup coords) -> ambient
        let in_sup = self.v_inv.apply_left(counter);
        let ambient = self.sup_basis.apply_left(&in_sup);
        // advance the odometer, first coordinate fastest
        let mut i = 0;
        loop {
            if i == counter.len() {
                self.counter = None;
                break;
            }
            counter[i] += 1;
            if counter[i] < self.factors[i] {
                break;
            }
            counter[i] = Int::zero();
            i += 1;
        }
        Some(ambient)
    }
}
