//! Seeded generators for test corpora and the CLI's randomized modes.

use std::collections::HashSet;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldElement, FieldSpec};
use crate::poly::{Monomial, MultiPoly, UniPoly};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over `F_p`; over ℚ a small fraction `a/b` with `|a| ≤ 9`, `1 ≤ b ≤ 4`.
pub fn element<R: Rng>(rng: &mut R, field: FieldSpec) -> FieldElement {
    match field {
        FieldSpec::Prime(p) => FieldElement::from_bigint(field, &BigInt::from(rng.gen_range(0..p))),
        FieldSpec::Rationals => {
            let num = rng.gen_range(-9i64..=9);
            let den = if rng.gen_bool(0.7) { 1 } else { rng.gen_range(1i64..=4) };
            FieldElement::from_ratio(field, num, den).expect("nonzero denominator")
        }
    }
}

pub fn nonzero_element<R: Rng>(rng: &mut R, field: FieldSpec) -> FieldElement {
    loop {
        let c = element(rng, field);
        if !c.is_zero() {
            return c;
        }
    }
}

/// `count` distinct points; over ℚ drawn from integers in `[-10 count, 10 count]`.
pub fn distinct_points<R: Rng>(rng: &mut R, field: FieldSpec, count: usize) -> Vec<FieldElement> {
    if let FieldSpec::Prime(p) = field {
        assert!(count as u128 <= p as u128, "not enough field elements");
    }
    let spread = 10 * count.max(1) as i64;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = match field {
            FieldSpec::Prime(_) => element(rng, field),
            FieldSpec::Rationals => FieldElement::from_i64(field, rng.gen_range(-spread..=spread)),
        };
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    out
}

/// Random polynomial of total degree at most `max_degree` with up to `terms`
/// terms; the degree is hit exactly when `exact` is set.
pub fn poly<R: Rng>(
    rng: &mut R,
    nvars: usize,
    field: FieldSpec,
    max_degree: u32,
    terms: usize,
    exact: bool,
) -> MultiPoly {
    let monos = Monomial::all_up_to_degree(nvars, max_degree);
    let mut f = MultiPoly::zero(nvars, field);
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        f = &f + &MultiPoly::term(nonzero_element(rng, field), m);
    }
    if exact && f.degree() != Some(max_degree) {
        let top: Vec<&Monomial> = monos.iter().filter(|m| m.degree() == max_degree).collect();
        let m = top[rng.gen_range(0..top.len())].clone();
        f = &f + &MultiPoly::term(nonzero_element(rng, field), m);
        if f.degree() != Some(max_degree) {
            return poly(rng, nvars, field, max_degree, terms, exact);
        }
    }
    f
}

/// Total degree exactly `degree`, not in `K[x1]`, constant content in `K[x1]`.
pub fn primitive_poly<R: Rng>(rng: &mut R, nvars: usize, field: FieldSpec, degree: u32) -> MultiPoly {
    assert!(nvars >= 2 && degree >= 1);
    loop {
        let terms = rng.gen_range(2..=2 + 2 * degree as usize);
        let f = poly(rng, nvars, field, degree, terms, true);
        let Some(e) = f.multideg_y() else { continue };
        if e.degree() == 0 {
            continue;
        }
        if f.content_x1().map(|c| c.is_unit()).unwrap_or(false) {
            return f;
        }
    }
}

/// Random univariate polynomial of exact degree `degree`.
pub fn uni_poly<R: Rng>(rng: &mut R, field: FieldSpec, degree: usize) -> UniPoly {
    let mut coeffs: Vec<FieldElement> = (0..degree).map(|_| element(rng, field)).collect();
    coeffs.push(nonzero_element(rng, field));
    UniPoly::from_coeffs(field, coeffs)
}
