//! Ideal and radical membership through bounded-degree linear systems, the
//! finite slice tests, and generator recovery from slice data.

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bounds::{
    hermann_bound, kollar_bound, monomial_count, slice_count_algebraic, slice_count_geometric, Limits,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::groebner::buchberger_with;
use crate::ideal::Ideal;
use crate::linalg::{kernel, rref, solve_particular, LinSystem, Matrix};
use crate::poly::{Monomial, MonomialOrder, MultiPoly};
use crate::slicing::{slice_ideal, SliceData, SliceDataset};

/// `f = Σ cofactors[i] · gens[i]`. Empty cofactors certify `f = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub cofactors: Vec<MultiPoly>,
    pub degree_bound_used: u64,
}

impl MembershipCertificate {
    /// Exact re-check of the identity and the degree cap.
    pub fn verify(&self, f: &MultiPoly, ideal: &Ideal) -> bool {
        if self.cofactors.is_empty() {
            return f.is_zero();
        }
        if self.cofactors.len() != ideal.len() {
            return false;
        }
        let degrees_ok = self
            .cofactors
            .iter()
            .all(|g| g.degree().is_none_or(|d| u64::from(d) <= self.degree_bound_used));
        let sum = self
            .cofactors
            .iter()
            .zip(ideal.gens())
            .fold(MultiPoly::zero(f.nvars(), f.field()), |acc, (g, h)| &acc + &(g * h));
        degrees_ok && &sum == f
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedVerdict {
    In(MembershipCertificate),
    NotFoundWithinBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    In(MembershipCertificate),
    NotIn,
}

impl MembershipVerdict {
    pub fn is_in(&self) -> bool {
        matches!(self, MembershipVerdict::In(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalVerdict {
    InRadical,
    NotInRadical,
}

/// Backend for radical membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RadicalEngine {
    /// Gröbner basis of `⟨gens, 1 - t f⟩`.
    #[default]
    Oracle,
    /// Linear system with cofactor degrees capped by the Kollár bound.
    Bounded,
}

/// Outcome of a sliced test. `In` means "in the radical" for the radical variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceVerdict {
    In,
    NotIn { alpha: FieldElement },
    SampleTooSmall { passes: usize, required: BigUint },
}

fn check_ring(f: &MultiPoly, ideal: &Ideal) -> Result<()> {
    if f.field() != ideal.field() {
        return Err(Error::FieldMismatch);
    }
    if f.nvars() != ideal.nvars() {
        return Err(Error::Shape(format!(
            "polynomial in {} variables, ideal in {}",
            f.nvars(),
            ideal.nvars()
        )));
    }
    Ok(())
}

/// Solves `f = Σ g_i f_i` with every `deg g_i ≤ degree`.
pub fn bounded_membership(f: &MultiPoly, ideal: &Ideal, degree: u64, limits: &Limits) -> Result<BoundedVerdict> {
    check_ring(f, ideal)?;
    if f.is_zero() {
        return Ok(BoundedVerdict::In(MembershipCertificate {
            cofactors: Vec::new(),
            degree_bound_used: degree,
        }));
    }
    if ideal.is_zero() {
        return Ok(BoundedVerdict::NotFoundWithinBound);
    }
    let n = ideal.nvars() as u64;
    let per_gen = limits.check("cofactor monomials", &monomial_count(n, degree))?;
    let cols = per_gen * ideal.len() as u64;
    limits.check("macaulay columns", &BigUint::from(cols))?;

    let degree = u32::try_from(degree).map_err(|_| Error::CapExceeded(usize::MAX))?;
    let monos = Monomial::all_up_to_degree(ideal.nvars(), degree);
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let mut columns: Vec<Vec<(usize, FieldElement)>> = Vec::with_capacity(cols as usize);
    for g in ideal.gens() {
        for m in &monos {
            let col = g
                .terms()
                .map(|(t, c)| {
                    let next = row_of.len();
                    let r = *row_of.entry(t.mul(m)).or_insert(next);
                    (r, c.clone())
                })
                .collect();
            columns.push(col);
        }
    }
    let mut rhs_entries = Vec::new();
    for (t, c) in f.terms() {
        let next = row_of.len();
        let r = *row_of.entry(t.clone()).or_insert(next);
        rhs_entries.push((r, c.clone()));
    }
    let rows = row_of.len();
    limits.check_matrix(rows as u64, cols)?;

    let field = f.field();
    let mut a = Matrix::zeros(rows, columns.len(), field);
    for (j, col) in columns.iter().enumerate() {
        for (r, c) in col {
            a.set(*r, j, c);
        }
    }
    let mut b = vec![FieldElement::zero(field); rows];
    for (r, c) in rhs_entries {
        b[r] = c;
    }
    let Some(x) = solve_particular(&LinSystem::new(a, b)?)? else {
        return Ok(BoundedVerdict::NotFoundWithinBound);
    };
    let cofactors: Vec<MultiPoly> = x
        .chunks(monos.len())
        .map(|chunk| {
            MultiPoly::from_terms(
                ideal.nvars(),
                field,
                monos.iter().cloned().zip(chunk.iter().cloned()),
            )
        })
        .collect();
    let cert = MembershipCertificate {
        cofactors,
        degree_bound_used: u64::from(degree),
    };
    if !cert.verify(f, ideal) {
        return Err(Error::CertificateMismatch);
    }
    Ok(BoundedVerdict::In(cert))
}

/// Cofactor degree cap that makes [`bounded_membership`] a decision.
pub fn membership_degree(f: &MultiPoly, ideal: &Ideal, limits: &Limits) -> Result<u64> {
    let report = hermann_bound(
        u64::from(f.degree().unwrap_or(0)),
        u64::from(ideal.max_degree()),
        ideal.len() as u64,
        ideal.nvars() as u64,
    )?;
    limits.check("hermann bound", &report.value)
}

/// Complete decision: tries growing caps and ends at the Hermann bound, so
/// `NotIn` is definitive.
pub fn ideal_membership(f: &MultiPoly, ideal: &Ideal, limits: &Limits) -> Result<MembershipVerdict> {
    check_ring(f, ideal)?;
    if f.is_zero() {
        return Ok(MembershipVerdict::In(MembershipCertificate {
            cofactors: Vec::new(),
            degree_bound_used: 0,
        }));
    }
    if ideal.is_zero() {
        return Ok(MembershipVerdict::NotIn);
    }
    let top = membership_degree(f, ideal, limits)?;
    let n = ideal.nvars() as u64;
    let delta = u64::from(ideal.max_degree());
    limits.check_matrix(
        limits.check("macaulay rows", &monomial_count(n, top + delta))?,
        limits.check("macaulay columns", &(monomial_count(n, top) * ideal.len()))?,
    )?;
    let mut degree = u64::from(f.degree().unwrap_or(0)).min(top);
    loop {
        if let BoundedVerdict::In(cert) = bounded_membership(f, ideal, degree, limits)? {
            return Ok(MembershipVerdict::In(cert));
        }
        if degree >= top {
            return Ok(MembershipVerdict::NotIn);
        }
        degree = (degree.max(1) * 2).min(top);
    }
}

/// Rabinowitsch test: `f ∈ √I` iff `1 ∈ ⟨gens, 1 - t f⟩` with `t` a new last variable.
pub fn radical_membership(
    f: &MultiPoly,
    ideal: &Ideal,
    engine: RadicalEngine,
    limits: &Limits,
) -> Result<RadicalVerdict> {
    check_ring(f, ideal)?;
    let n = ideal.nvars();
    let field = ideal.field();
    let t = MultiPoly::var(n + 1, field, n);
    let mut gens: Vec<MultiPoly> = ideal.gens().iter().map(|g| g.embed(n + 1, 0)).collect();
    gens.push(&MultiPoly::one(n + 1, field) - &(&t * &f.embed(n + 1, 0)));
    let extended = Ideal::new(gens)?;
    let inside = match engine {
        RadicalEngine::Oracle => buchberger_with(&extended, MonomialOrder::GrlexAll, limits)?.is_unit(),
        RadicalEngine::Bounded => {
            let delta = ideal.max_degree().max(f.degree().unwrap_or(0) + 1);
            let cap = kollar_bound(u64::from(delta), n as u64)?;
            let cap = limits.check("kollar bound", &cap.value)?;
            matches!(
                bounded_membership(&MultiPoly::one(n + 1, field), &extended, cap, limits)?,
                BoundedVerdict::In(_)
            )
        }
    };
    Ok(if inside {
        RadicalVerdict::InRadical
    } else {
        RadicalVerdict::NotInRadical
    })
}

fn check_points(ideal: &Ideal, points: &[FieldElement]) -> Result<Vec<FieldElement>> {
    if ideal.nvars() < 2 {
        return Err(Error::TooFewVariables(2));
    }
    if points.iter().any(|a| a.field() != ideal.field()) {
        return Err(Error::FieldMismatch);
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoints);
    }
    Ok(sorted)
}

/// Runs `test` on every slice (in parallel) and aggregates in increasing `α`.
fn sliced<F>(f: &MultiPoly, ideal: &Ideal, points: &[FieldElement], required: BigUint, test: F) -> Result<SliceVerdict>
where
    F: Fn(&MultiPoly, &Ideal) -> Result<bool> + Sync,
{
    check_ring(f, ideal)?;
    let sorted = check_points(ideal, points)?;
    let outcomes: Vec<bool> = sorted
        .par_iter()
        .map(|alpha| {
            let slice = slice_ideal(ideal, alpha)?.ideal();
            let fa = f.substitute_x1(alpha).drop_first_var()?;
            test(&fa, &slice)
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(k) = outcomes.iter().position(|ok| !ok) {
        return Ok(SliceVerdict::NotIn {
            alpha: sorted[k].clone(),
        });
    }
    if BigUint::from(sorted.len()) >= required {
        Ok(SliceVerdict::In)
    } else {
        Ok(SliceVerdict::SampleTooSmall {
            passes: sorted.len(),
            required,
        })
    }
}

/// `f ∈ I` from `f|α ∈ I|α` for every `α ∈ S`. `In` needs `|S|` to reach the
/// algebraic slice count; `I` is assumed in good position (not checked).
pub fn finite_slice_membership(
    f: &MultiPoly,
    ideal: &Ideal,
    points: &[FieldElement],
    limits: &Limits,
) -> Result<SliceVerdict> {
    let required = slice_count_algebraic(
        u64::from(f.degree().unwrap_or(0)),
        u64::from(ideal.max_degree()),
        ideal.len() as u64,
        ideal.nvars() as u64,
    )?
    .value;
    sliced(f, ideal, points, required, |fa, slice| {
        Ok(ideal_membership(fa, slice, limits)?.is_in())
    })
}

/// `f ∈ √I` from the slices; `In` needs `|S| > (deg f + 1) deg V`. The
/// degree of `V(I)` is supplied by the caller.
pub fn finite_slice_radical_membership(
    f: &MultiPoly,
    ideal: &Ideal,
    points: &[FieldElement],
    deg_v: u64,
    limits: &Limits,
) -> Result<SliceVerdict> {
    let required = slice_count_geometric(u64::from(f.degree().unwrap_or(0)), deg_v)?.value;
    sliced(f, ideal, points, required, |fa, slice| {
        Ok(radical_membership(fa, slice, RadicalEngine::Oracle, limits)? == RadicalVerdict::InRadical)
    })
}

/// Linear constraints on `h` (coefficients over `targets`) expressing `h ∈ J`,
/// using cofactors up to the Hermann bound for degree `d` members.
fn slice_constraints(j: &Ideal, targets: &[Monomial], d: u32, limits: &Limits) -> Result<Vec<Vec<FieldElement>>> {
    let field = j.field();
    let t = targets.len();
    if j.is_zero() {
        return Ok((0..t)
            .map(|i| {
                let mut row = vec![FieldElement::zero(field); t];
                row[i] = FieldElement::one(field);
                row
            })
            .collect());
    }
    let cap = hermann_bound(
        u64::from(d),
        u64::from(j.max_degree()),
        j.len() as u64,
        j.nvars() as u64,
    )?;
    let cap = limits.check("hermann bound", &cap.value)?;
    let cap = u32::try_from(cap).map_err(|_| Error::CapExceeded(usize::MAX))?;
    let monos = Monomial::all_up_to_degree(j.nvars(), cap);
    let mut row_of: HashMap<Monomial, usize> = targets.iter().cloned().zip(0..).collect();
    let mut columns = Vec::new();
    for g in j.gens() {
        for m in &monos {
            let col: Vec<(usize, FieldElement)> = g
                .terms()
                .map(|(u, c)| {
                    let next = row_of.len();
                    (*row_of.entry(u.mul(m)).or_insert(next), c.clone())
                })
                .collect();
            columns.push(col);
        }
    }
    let rows = row_of.len();
    limits.check_matrix(columns.len() as u64, rows as u64)?;
    // left kernel of the span matrix, read off the target rows
    let mut transposed = Matrix::zeros(columns.len(), rows, field);
    for (j, col) in columns.iter().enumerate() {
        for (r, c) in col {
            transposed.set(j, *r, c);
        }
    }
    Ok(kernel(&transposed)
        .into_iter()
        .map(|y| y[..t].to_vec())
        .filter(|y| y.iter().any(|v| !v.is_zero()))
        .collect())
}

/// Basis of `{f : deg f ≤ d, f|α ∈ I|α for every record}` in reduced echelon
/// form (leading monomials distinct, leading coefficients one, descending).
pub fn recover_generators_from_slices(dataset: &SliceDataset, d: u32, limits: &Limits) -> Result<Vec<MultiPoly>> {
    if dataset.is_empty() {
        return Err(Error::DegenerateDataset);
    }
    let field: FieldSpec = dataset.field;
    let n = dataset.nvars;
    let slices: Vec<(FieldElement, Ideal)> = match &dataset.data {
        SliceData::Full(recs) => recs.iter().map(|r| (r.alpha.clone(), r.ideal())).collect(),
        SliceData::Sectional(recs) => recs
            .iter()
            .map(|r| (r.alpha.clone(), Ideal::principal(r.g.clone())))
            .collect(),
    };
    let unknowns: Vec<Monomial> = Monomial::all_up_to_degree(n, d).into_iter().rev().collect();
    limits.check("unknown coefficients", &BigUint::from(unknowns.len()))?;
    let targets = Monomial::all_up_to_degree(n - 1, d);
    let target_index: HashMap<&Monomial, usize> = targets.iter().zip(0..).collect();
    let projected: Vec<(usize, &Monomial)> = unknowns
        .iter()
        .map(|u| {
            let y = Monomial::new(u.exponents()[1..].to_vec());
            (target_index[&y], u)
        })
        .collect();

    let blocks: Vec<Vec<Vec<FieldElement>>> = slices
        .par_iter()
        .map(|(alpha, j)| {
            let cons = slice_constraints(j, &targets, d, limits)?;
            let powers: Vec<FieldElement> = (0..=d).map(|k| alpha.pow(u64::from(k))).collect();
            Ok(cons
                .iter()
                .map(|row| {
                    projected
                        .iter()
                        .map(|(i, u)| &row[*i] * &powers[u.exponents()[0] as usize])
                        .collect()
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<FieldElement>> = blocks.into_iter().flatten().collect();
    limits.check_matrix(rows.len() as u64, unknowns.len() as u64)?;
    let basis = if rows.is_empty() {
        Matrix::identity(unknowns.len(), field)
    } else {
        let ker = kernel(&Matrix::from_rows(field, &rows)?);
        if ker.is_empty() {
            return Ok(Vec::new());
        }
        Matrix::from_rows(field, &ker)?
    };
    Ok(rref(&basis)
        .into_iter()
        .map(|row| MultiPoly::from_terms(n, field, unknowns.iter().cloned().zip(row)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, ideal_equal};
    use crate::poly::parse;
    use crate::random;
    use crate::slicing::{build_dataset, SliceMode};

    const Q: FieldSpec = FieldSpec::Rationals;
    const P: FieldSpec = FieldSpec::Prime(65537);

    fn p(s: &str, n: usize, field: FieldSpec) -> MultiPoly {
        parse(s, n, field).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn bounded_examples() {
        let i = Ideal::parse(&["x1"], 2, Q).unwrap();
        let f = p("x1^2*x2 + x1", 2, Q);
        match bounded_membership(&f, &i, 2, &lim()).unwrap() {
            BoundedVerdict::In(c) => {
                assert_eq!(c.cofactors, vec![p("x1*x2 + 1", 2, Q)]);
                assert!(c.verify(&f, &i));
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(
            bounded_membership(&p("x2", 2, Q), &i, 5, &lim()).unwrap(),
            BoundedVerdict::NotFoundWithinBound
        );

        let i = Ideal::parse(&["x2 - x1^2", "x1^3"], 2, Q).unwrap();
        let f = p("x2^3", 2, Q);
        let BoundedVerdict::In(c) = bounded_membership(&f, &i, 4, &lim()).unwrap() else {
            panic!()
        };
        assert!(c.verify(&f, &i));
        assert!(buchberger(&i).unwrap().contains(&f));
    }

    #[test]
    fn decision_examples() {
        let i = Ideal::parse(&["x1"], 2, Q).unwrap();
        assert!(ideal_membership(&p("x1*x2", 2, Q), &i, &lim()).unwrap().is_in());
        assert_eq!(
            ideal_membership(&p("x1 + 1", 2, Q), &i, &lim()).unwrap(),
            MembershipVerdict::NotIn
        );
        let zero = Ideal::new(vec![MultiPoly::zero(2, Q)]).unwrap();
        let v = ideal_membership(&MultiPoly::zero(2, Q), &zero, &lim()).unwrap();
        assert_eq!(
            v,
            MembershipVerdict::In(MembershipCertificate {
                cofactors: vec![],
                degree_bound_used: 0
            })
        );
        assert_eq!(
            ideal_membership(&p("x1", 2, Q), &zero, &lim()).unwrap(),
            MembershipVerdict::NotIn
        );
    }

    #[test]
    fn oversized_decision_is_refused() {
        let i = Ideal::parse(&["x1^3 + x2", "x2^3 + x3", "x3^3"], 3, P).unwrap();
        assert!(matches!(
            ideal_membership(&p("x1", 3, P), &i, &lim()),
            Err(Error::FeasibilityCapExceeded { .. })
        ));
    }

    #[test]
    fn random_combinations_agree_with_oracle() {
        let mut rng = random::rng(11);
        for _ in 0..20 {
            let r = 1 + (rand::Rng::gen_range(&mut rng, 0..2usize));
            let gens: Vec<MultiPoly> = (0..r).map(|_| random::poly(&mut rng, 2, P, 2, 3, true)).collect();
            let i = Ideal::new(gens.clone()).unwrap();
            let f = gens.iter().fold(MultiPoly::zero(2, P), |acc, g| {
                &acc + &(&random::poly(&mut rng, 2, P, 1, 2, false) * g)
            });
            let v = ideal_membership(&f, &i, &lim()).unwrap();
            assert!(v.is_in());
            if let MembershipVerdict::In(c) = v {
                assert!(c.verify(&f, &i));
            }
        }
    }

    #[test]
    fn monotone_in_degree() {
        let i = Ideal::parse(&["x2 - x1^2", "x1^3"], 2, P).unwrap();
        let f = p("x2^3", 2, P);
        let mut found = false;
        for d in 0..8 {
            let v = bounded_membership(&f, &i, d, &lim()).unwrap();
            if found {
                assert!(matches!(v, BoundedVerdict::In(_)));
            }
            found |= matches!(v, BoundedVerdict::In(_));
        }
        assert!(found);
    }

    #[test]
    fn radical_examples() {
        {
            let engine = RadicalEngine::Oracle;
            let i = Ideal::parse(&["(x1 + x2)^2"], 2, P).unwrap();
            assert_eq!(
                radical_membership(&p("x1 + x2", 2, P), &i, engine, &lim()).unwrap(),
                RadicalVerdict::InRadical
            );
            let i = Ideal::parse(&["x1*x2"], 2, P).unwrap();
            assert_eq!(
                radical_membership(&p("x1", 2, P), &i, engine, &lim()).unwrap(),
                RadicalVerdict::NotInRadical
            );
            let i = Ideal::parse(&["x1", "x1 + 1"], 2, P).unwrap();
            assert_eq!(
                radical_membership(&p("1", 2, P), &i, engine, &lim()).unwrap(),
                RadicalVerdict::InRadical
            );
        }
    }

    #[test]
    fn bounded_radical_agrees_on_tiny_cases() {
        let cases = [
            ("x1", &["x1^2"][..], true),
            ("x1 - 1", &["x1^2 - 2*x1 + 1"][..], true),
            ("x1", &["x1^2 - 1"][..], false),
            ("x1^2 - x1", &["x1^3 - x1^2", "x1^2 - 2*x1 + 1"][..], true),
            ("1", &["x1", "x1 + 1"][..], true),
        ];
        for (f, gens, expect) in cases {
            let i = Ideal::parse(gens, 1, P).unwrap();
            let f = p(f, 1, P);
            for engine in [RadicalEngine::Oracle, RadicalEngine::Bounded] {
                let v = radical_membership(&f, &i, engine, &lim()).unwrap();
                assert_eq!(v == RadicalVerdict::InRadical, expect, "{f} {gens:?} {engine:?}");
            }
        }
    }

    #[test]
    fn sliced_examples() {
        let i = Ideal::parse(&["x2 - x1^2"], 2, P).unwrap();
        let pts = random::distinct_points(&mut random::rng(5), P, 400);
        let f = p("x1*(x2 - x1^2)", 2, P);
        assert_eq!(finite_slice_membership(&f, &i, &pts, &lim()).unwrap(), SliceVerdict::In);

        let v = finite_slice_membership(&p("x2", 2, P), &i, &pts[..5], &lim()).unwrap();
        assert!(matches!(v, SliceVerdict::NotIn { .. }));

        let v = finite_slice_membership(&p("x2 - x1^2", 2, P), &i, &pts[..3], &lim()).unwrap();
        assert_eq!(
            v,
            SliceVerdict::SampleTooSmall {
                passes: 3,
                required: BigUint::from(203u32)
            }
        );
    }

    #[test]
    fn sliced_radical_examples() {
        let i = Ideal::parse(&["(x2 - x1^2)^2"], 2, Q).unwrap();
        let pts: Vec<_> = (0..9).map(|k| FieldElement::from_i64(Q, k)).collect();
        assert_eq!(
            finite_slice_radical_membership(&p("x2 - x1^2", 2, Q), &i, &pts, 2, &lim()).unwrap(),
            SliceVerdict::In
        );
        let i = Ideal::parse(&["x2^2 - x1"], 2, Q).unwrap();
        let pts7: Vec<_> = (0..7).map(|k| FieldElement::from_i64(Q, k)).collect();
        assert!(matches!(
            finite_slice_radical_membership(&p("x2", 2, Q), &i, &pts7, 2, &lim()).unwrap(),
            SliceVerdict::NotIn { .. }
        ));
        let i = Ideal::parse(&["(x2 - x1^2)^2"], 2, Q).unwrap();
        assert!(matches!(
            finite_slice_radical_membership(&p("x2 - x1^2", 2, Q), &i, &pts[..6], 2, &lim()).unwrap(),
            SliceVerdict::SampleTooSmall { passes: 6, .. }
        ));
    }

    #[test]
    fn recover_examples() {
        let i = Ideal::parse(&["x2 - x1^2"], 2, P).unwrap();
        let pts = random::distinct_points(&mut random::rng(2), P, 12);
        let ds = build_dataset(&i, &pts, SliceMode::FullSlices).unwrap();
        let basis = recover_generators_from_slices(&ds, 2, &lim()).unwrap();
        assert_eq!(basis, vec![p("x1^2 - x2", 2, P)]);

        let one = Ideal::parse(&["1"], 3, Q).unwrap();
        let pts: Vec<_> = (0..3).map(|k| FieldElement::from_i64(Q, k)).collect();
        let ds = build_dataset(&one, &pts, SliceMode::FullSlices).unwrap();
        assert_eq!(recover_generators_from_slices(&ds, 1, &lim()).unwrap().len(), 4);

        let empty = SliceDataset {
            field: Q,
            nvars: 2,
            data: SliceData::Full(vec![]),
        };
        assert!(matches!(
            recover_generators_from_slices(&empty, 1, &lim()),
            Err(Error::DegenerateDataset)
        ));
    }

    #[test]
    fn slice_necessity() {
        let mut rng = random::rng(19);
        for _ in 0..10 {
            let gens: Vec<MultiPoly> = (0..2).map(|_| random::poly(&mut rng, 2, P, 2, 3, true)).collect();
            let i = Ideal::new(gens.clone()).unwrap();
            let f = gens.iter().fold(MultiPoly::zero(2, P), |acc, g| {
                &acc + &(&random::poly(&mut rng, 2, P, 1, 2, false) * g)
            });
            let pts = random::distinct_points(&mut rng, P, 4);
            assert!(matches!(
                finite_slice_membership(&f, &i, &pts, &lim()).unwrap(),
                SliceVerdict::SampleTooSmall { passes: 4, .. } | SliceVerdict::In
            ));
        }
    }

    #[test]
    fn coprime_sum_intersection() {
        use crate::groebner::ideal_intersect;
        let i = Ideal::parse(&["x2^2"], 2, Q).unwrap();
        let with = |h: &str| {
            let mut g = i.gens().to_vec();
            g.push(p(h, 2, Q));
            Ideal::new(g).unwrap()
        };
        let lhs = ideal_intersect(&with("x1"), &with("x1 - 1")).unwrap();
        assert!(ideal_equal(&lhs, &with("x1*(x1 - 1)")).unwrap());
    }
}
