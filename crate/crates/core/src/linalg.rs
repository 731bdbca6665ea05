//! Dense exact linear algebra.
//!
//! Over `F_p` systems are reduced by ordinary Gauss-Jordan elimination on
//! machine words. Over ℚ rows are first cleared of denominators and reduced by
//! fraction-free (Bareiss) elimination, so intermediate entries stay integral
//! and bounded by minors of the input.
//!
//! Pivots are always the first nonzero entry found scanning rows top-down in
//! the current column.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{inv_mod, mul_mod, sub_mod, FieldElement, FieldSpec};
use crate::poly::UniPoly;

/// Work (entries touched per elimination step) above which row updates are
/// spread over the thread pool.
const PAR_THRESHOLD: usize = 1 << 15;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Storage {
    Rational(Vec<BigRational>),
    Prime { p: u64, data: Vec<u64> },
}

/// Row-major dense matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Self {
        let storage = match field {
            FieldSpec::Rationals => Storage::Rational(vec![BigRational::zero(); rows * cols]),
            FieldSpec::Prime(p) => Storage::Prime {
                p,
                data: vec![0; rows * cols],
            },
        };
        Matrix {
            rows,
            cols,
            storage,
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, &FieldElement::one(field));
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length and a field.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols, field);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape("ragged rows".into()));
            }
            for (j, v) in row.iter().enumerate() {
                if v.field() != field {
                    return Err(Error::FieldMismatch);
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| FieldElement::from_i64(field, v)).collect())
            .collect();
        Self::from_rows(field, &rows).expect("consistent literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        match &self.storage {
            Storage::Rational(_) => FieldSpec::Rationals,
            Storage::Prime { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        let k = i * self.cols + j;
        match &self.storage {
            Storage::Rational(d) => FieldElement::Rational(d[k].clone()),
            Storage::Prime { p, data } => FieldElement::Residue {
                value: data[k],
                modulus: *p,
            },
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: &FieldElement) {
        let k = i * self.cols + j;
        match (&mut self.storage, v) {
            (Storage::Rational(d), FieldElement::Rational(r)) => d[k] = r.clone(),
            (Storage::Prime { p, data }, FieldElement::Residue { value, modulus }) if p == modulus => {
                data[k] = *value
            }
            _ => panic!("matrix entry from a different field"),
        }
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        let f = self.field();
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(FieldElement::zero(f), |acc, j| &acc + &(&self.get(i, j) * &v[j]))
            })
            .collect()
    }

    /// `(A | b)`.
    pub fn augment(&self, b: &[FieldElement]) -> Matrix {
        assert_eq!(b.len(), self.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + 1, self.field());
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, &self.get(i, j));
            }
            m.set(i, self.cols, &b[i]);
        }
        m
    }
}

/// `A x = b` with every entry in one field.
#[derive(Clone, Debug)]
pub struct LinSystem {
    pub a: Matrix,
    pub b: Vec<FieldElement>,
}

impl LinSystem {
    pub fn new(a: Matrix, b: Vec<FieldElement>) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::Shape(format!(
                "right-hand side has {} entries for {} rows",
                b.len(),
                a.rows()
            )));
        }
        if b.iter().any(|v| v.field() != a.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(LinSystem { a, b })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// A particular solution plus a basis of `ker(A)`.
    Consistent {
        witness: Vec<FieldElement>,
        nullspace: Vec<Vec<FieldElement>>,
    },
    Inconsistent,
}

impl Solution {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Solution::Consistent { .. })
    }
}

/// Row echelon data shared by both backends: pivot columns (one per pivot
/// row) and a closure-free way to read the reduced rows back as field values.
struct Echelon {
    /// `pivots[r]` is the pivot column of row `r`.
    pivots: Vec<usize>,
    /// Reduced row echelon form (pivots normalized to one), rank rows only,
    /// `cols` entries each (the augmented column included, if any).
    rref: Vec<Vec<FieldElement>>,
}

fn echelon(m: &Matrix, want_rref: bool) -> Echelon {
    match &m.storage {
        Storage::Prime { p, data } => echelon_prime(m.rows, m.cols, *p, data.clone(), want_rref),
        Storage::Rational(data) => echelon_bareiss(m.rows, m.cols, data, want_rref),
    }
}

fn echelon_prime(rows: usize, cols: usize, p: u64, mut a: Vec<u64>, want_rref: bool) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p).expect("nonzero pivot");
        for j in c..cols {
            a[r * cols + j] = mul_mod(a[r * cols + j], inv, p);
        }
        let (before, rest) = a.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let eliminate = |row: &mut [u64]| {
            let factor = row[c];
            if factor == 0 {
                return;
            }
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = sub_mod(row[j], mul_mod(factor, pivot_row[j], p), p);
                }
            }
        };
        if (rows - r) * (cols - c) >= PAR_THRESHOLD {
            after.par_chunks_mut(cols).for_each(eliminate);
            if want_rref {
                before.par_chunks_mut(cols).for_each(eliminate);
            }
        } else {
            after.chunks_mut(cols).for_each(eliminate);
            if want_rref {
                before.chunks_mut(cols).for_each(eliminate);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rref = if want_rref {
        (0..r)
            .map(|i| {
                a[i * cols..(i + 1) * cols]
                    .iter()
                    .map(|&v| FieldElement::Residue { value: v, modulus: p })
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };
    Echelon { pivots, rref }
}

/// Clears denominators row by row, then runs fraction-free elimination.
fn echelon_bareiss(rows: usize, cols: usize, data: &[BigRational], want_rref: bool) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = &data[i * cols..(i + 1) * cols];
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(pr, r);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        let step = |row: &mut Vec<BigInt>| {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let num = &piv * &row[j] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        };
        if (rows - r) * (cols - c) >= PAR_THRESHOLD / 16 {
            bottom.par_iter_mut().for_each(step);
        } else {
            bottom.iter_mut().for_each(step);
        }
        // rows above the pivot are untouched; they are normalized below
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    let rref = if want_rref {
        back_substitute_rational(&a[..r], &pivots, cols)
    } else {
        Vec::new()
    };
    Echelon { pivots, rref }
}

/// Turns an integer row echelon form into the reduced form over ℚ.
fn back_substitute_rational(ech: &[Vec<BigInt>], pivots: &[usize], cols: usize) -> Vec<Vec<FieldElement>> {
    let rank = pivots.len();
    let mut out: Vec<Vec<BigRational>> = Vec::with_capacity(rank);
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let piv = BigRational::from_integer(ech[r][pc].clone());
        let mut row: Vec<BigRational> = ech[r]
            .iter()
            .map(|v| BigRational::from_integer(v.clone()) / &piv)
            .collect();
        // rows below (already reduced) are stored in `out` in reverse order
        for (k, lower) in out.iter().enumerate() {
            let lower_pc = pivots[rank - 1 - k];
            let factor = row[lower_pc].clone();
            if factor.is_zero() {
                continue;
            }
            for j in lower_pc..cols {
                if !lower[j].is_zero() {
                    row[j] = &row[j] - &factor * &lower[j];
                }
            }
        }
        out.push(row);
    }
    out.reverse();
    out.into_iter()
        .map(|row| row.into_iter().map(FieldElement::Rational).collect())
        .collect()
}

/// Rank by exact elimination (Bareiss over ℚ).
pub fn rank(a: &Matrix) -> usize {
    echelon(a, false).pivots.len()
}

pub fn solve(sys: &LinSystem) -> Result<Solution> {
    if sys.b.len() != sys.a.rows() {
        return Err(Error::Shape("right-hand side length".into()));
    }
    if sys.b.iter().any(|v| v.field() != sys.a.field()) {
        return Err(Error::FieldMismatch);
    }
    Ok(solve_inner(sys, true))
}

/// Like [`solve`] but skips the nullspace basis.
pub fn solve_particular(sys: &LinSystem) -> Result<Option<Vec<FieldElement>>> {
    if sys.b.iter().any(|v| v.field() != sys.a.field()) || sys.b.len() != sys.a.rows() {
        return Err(Error::FieldMismatch);
    }
    Ok(match solve_inner(sys, false) {
        Solution::Consistent { witness, .. } => Some(witness),
        Solution::Inconsistent => None,
    })
}

fn solve_inner(sys: &LinSystem, with_nullspace: bool) -> Solution {
    let m = sys.a.cols();
    let field = sys.a.field();
    let aug = sys.a.augment(&sys.b);
    let ech = echelon(&aug, true);
    if ech.pivots.last() == Some(&m) {
        return Solution::Inconsistent;
    }
    let mut witness = vec![FieldElement::zero(field); m];
    for (row, &pc) in ech.rref.iter().zip(&ech.pivots) {
        witness[pc] = row[m].clone();
    }
    let mut nullspace = Vec::new();
    if with_nullspace {
        let mut is_pivot = vec![false; m];
        for &pc in &ech.pivots {
            is_pivot[pc] = true;
        }
        for free in (0..m).filter(|&j| !is_pivot[j]) {
            let mut v = vec![FieldElement::zero(field); m];
            v[free] = FieldElement::one(field);
            for (row, &pc) in ech.rref.iter().zip(&ech.pivots) {
                v[pc] = -&row[free];
            }
            nullspace.push(v);
        }
    }
    Solution::Consistent { witness, nullspace }
}

/// Nonzero rows of the reduced row echelon form, pivots normalized to one.
pub fn rref(a: &Matrix) -> Vec<Vec<FieldElement>> {
    echelon(a, true).rref
}

/// Basis of `ker(A)`.
pub fn kernel(a: &Matrix) -> Vec<Vec<FieldElement>> {
    let zero = vec![FieldElement::zero(a.field()); a.rows()];
    match solve_inner(
        &LinSystem {
            a: a.clone(),
            b: zero,
        },
        true,
    ) {
        Solution::Consistent { nullspace, .. } => nullspace,
        Solution::Inconsistent => unreachable!("homogeneous systems are consistent"),
    }
}

/// `A(t) x = b(t)` with polynomial entries.
#[derive(Clone, Debug)]
pub struct ParamLinSystem {
    a: Vec<Vec<UniPoly>>,
    b: Vec<UniPoly>,
    field: FieldSpec,
    degree: usize,
}

impl ParamLinSystem {
    pub fn new(field: FieldSpec, a: Vec<Vec<UniPoly>>, b: Vec<UniPoly>) -> Result<Self> {
        let cols = a.first().map_or(0, Vec::len);
        if a.len() != b.len() || a.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("parametric system dimensions".into()));
        }
        if a.iter().flatten().chain(&b).any(|p| p.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let degree = a
            .iter()
            .flatten()
            .chain(&b)
            .filter_map(UniPoly::degree)
            .max()
            .unwrap_or(0);
        Ok(ParamLinSystem { a, b, field, degree })
    }

    pub fn rows(&self) -> usize {
        self.b.len()
    }

    pub fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    /// Maximum entry degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of samples that must be exceeded: `d * max(N, M + 1)`.
    pub fn sample_bound(&self) -> BigUint {
        BigUint::from(self.degree) * BigUint::from(self.rows().max(self.cols() + 1))
    }

    pub fn specialize(&self, t: &FieldElement) -> LinSystem {
        let rows: Vec<Vec<FieldElement>> = self
            .a
            .iter()
            .map(|r| r.iter().map(|p| p.eval(t)).collect())
            .collect();
        let mut a = Matrix::zeros(self.rows(), self.cols(), self.field);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                a.set(i, j, v);
            }
        }
        LinSystem {
            a,
            b: self.b.iter().map(|p| p.eval(t)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Compatibility {
    CompatibleOverKt,
    IncompatibleOverKt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricVerdict {
    pub verdict: Compatibility,
    /// Generic ranks of `A(t)` and `(A(t) | b(t))` over `K(t)`.
    pub rank_a: usize,
    pub rank_ab: usize,
    /// Samples whose specialized system disagrees with the verdict. Nonempty
    /// only for compatible systems whose solutions have poles at a sample.
    pub exceptional: Vec<FieldElement>,
}

impl ParametricVerdict {
    pub fn all_samples_consistent(&self) -> bool {
        self.verdict == Compatibility::CompatibleOverKt && self.exceptional.is_empty()
    }
}

/// Decides compatibility of `A(t) x = b(t)` over `K(t)` from specializations.
///
/// Every nonzero `k`-minor of `(A | b)` has degree at most
/// `d * max(N, M + 1)`, so more samples than that guarantee that the maximum
/// specialized rank equals the generic rank, for `A` and for `(A | b)`.
/// Incompatible systems are then inconsistent at every sample outside the
/// root set of a nonzero minor.
pub fn parametric_compatible(
    sys: &ParamLinSystem,
    samples: &[FieldElement],
) -> Result<ParametricVerdict> {
    if samples.iter().any(|s| s.field() != sys.field) {
        return Err(Error::FieldMismatch);
    }
    let distinct: HashSet<&FieldElement> = samples.iter().collect();
    if distinct.len() != samples.len() {
        return Err(Error::DuplicateSamples);
    }
    let bound = sys.sample_bound();
    if BigUint::from(samples.len()) <= bound {
        return Err(Error::NotEnoughSamples {
            required: bound + 1u32,
            given: samples.len(),
        });
    }
    let ranks: Vec<(usize, usize)> = samples
        .par_iter()
        .map(|t| {
            let s = sys.specialize(t);
            (rank(&s.a), rank(&s.a.augment(&s.b)))
        })
        .collect();
    let rank_a = ranks.iter().map(|r| r.0).max().unwrap_or(0);
    let rank_ab = ranks.iter().map(|r| r.1).max().unwrap_or(0);
    let verdict = if rank_a == rank_ab {
        Compatibility::CompatibleOverKt
    } else {
        Compatibility::IncompatibleOverKt
    };
    let exceptional = samples
        .iter()
        .zip(&ranks)
        .filter(|(_, (ra, rab))| (ra == rab) != (verdict == Compatibility::CompatibleOverKt))
        .map(|(t, _)| t.clone())
        .collect();
    Ok(ParametricVerdict {
        verdict,
        rank_a,
        rank_ab,
        exceptional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn q(n: i64) -> FieldElement {
        FieldElement::from_i64(Q, n)
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::from_i64(Q, &[&[1, 0], &[0, 1]]);
        let s = solve(&LinSystem::new(id, vec![q(3), q(4)]).unwrap()).unwrap();
        assert_eq!(
            s,
            Solution::Consistent {
                witness: vec![q(3), q(4)],
                nullspace: vec![]
            }
        );

        let a = Matrix::from_i64(Q, &[&[1, 1]]);
        let Solution::Consistent { witness, nullspace } =
            solve(&LinSystem::new(a.clone(), vec![q(2)]).unwrap()).unwrap()
        else {
            panic!("expected consistent");
        };
        assert_eq!(nullspace.len(), 1);
        assert_eq!(a.mul_vec(&witness), vec![q(2)]);
        assert_eq!(a.mul_vec(&nullspace[0]), vec![q(0)]);

        let a = Matrix::from_i64(Q, &[&[1], &[1]]);
        assert_eq!(
            solve(&LinSystem::new(a, vec![q(0), q(1)]).unwrap()).unwrap(),
            Solution::Inconsistent
        );
    }

    #[test]
    fn solve_rejects_mixed_fields() {
        let a = Matrix::from_i64(Q, &[&[1]]);
        assert!(matches!(
            LinSystem::new(a, vec![FieldElement::one(FieldSpec::Prime(7))]),
            Err(Error::FieldMismatch)
        ));
    }

    #[test]
    fn rank_examples() {
        for f in [Q, FieldSpec::Prime(13)] {
            assert_eq!(rank(&Matrix::identity(3, f)), 3);
            assert_eq!(rank(&Matrix::zeros(3, 4, f)), 0);
            assert_eq!(rank(&Matrix::from_i64(f, &[&[1, 2], &[2, 4]])), 1);
        }
    }

    #[test]
    fn bareiss_handles_skipped_columns() {
        let a = Matrix::from_i64(Q, &[&[0, 2, 4, 1], &[0, 1, 2, 3], &[0, 3, 6, 4], &[1, 0, 0, 0]]);
        assert_eq!(rank(&a), 3);
        let b = vec![q(1), q(2), q(3), q(4)];
        let Solution::Consistent { witness, nullspace } = solve(&LinSystem::new(a.clone(), b.clone()).unwrap()).unwrap() else {
            panic!()
        };
        assert_eq!(a.mul_vec(&witness), b);
        assert_eq!(nullspace.len(), 1);
    }

    fn up(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(Q, coeffs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn parametric_examples() {
        // A = [t], b = [1]: x = 1/t over K(t), inconsistent only at t = 0
        let sys = ParamLinSystem::new(Q, vec![vec![up(&[0, 1])]], vec![up(&[1])]).unwrap();
        let v = parametric_compatible(&sys, &[q(1), q(2), q(3)]).unwrap();
        assert_eq!(v.verdict, Compatibility::CompatibleOverKt);
        assert!(v.all_samples_consistent());

        let v = parametric_compatible(&sys, &[q(0), q(1), q(2)]).unwrap();
        assert_eq!(v.verdict, Compatibility::CompatibleOverKt);
        assert_eq!(v.exceptional, vec![q(0)]);
        assert!(!v.all_samples_consistent());

        let sys = ParamLinSystem::new(Q, vec![vec![up(&[])]], vec![up(&[0, 1])]).unwrap();
        let v = parametric_compatible(&sys, &[q(1), q(2), q(3)]).unwrap();
        assert_eq!(v.verdict, Compatibility::IncompatibleOverKt);
    }

    #[test]
    fn parametric_errors() {
        let sys = ParamLinSystem::new(Q, vec![vec![up(&[0, 1])]], vec![up(&[1])]).unwrap();
        assert!(matches!(
            parametric_compatible(&sys, &[q(1), q(2)]),
            Err(Error::NotEnoughSamples { .. })
        ));
        assert!(matches!(
            parametric_compatible(&sys, &[q(1), q(2), q(1)]),
            Err(Error::DuplicateSamples)
        ));
    }
}
