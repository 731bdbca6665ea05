//! Reconstruction of a principal ideal `⟨f⟩` from sectional generators, and
//! the sharpness family showing `2d - 1` slices are not always enough.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::{primitive_root_of_unity, FieldElement, FieldSpec};
use crate::groebner::ideal_equal;
use crate::ideal::Ideal;
use crate::linalg::{kernel, Matrix};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, UniPoly};
use crate::slicing::{sectional_generator, SliceData, SliceDataset};

/// Pairs `(α_k, g_k)` with `g_k` in the full ring (no `x1`), monic under
/// GrlexY, zero, or one; plus the declared degree cap `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionalData {
    pub nvars: usize,
    pub field: FieldSpec,
    pub points: Vec<(FieldElement, MultiPoly)>,
    pub degree: u32,
}

impl SectionalData {
    pub fn new(nvars: usize, field: FieldSpec, points: Vec<(FieldElement, MultiPoly)>, degree: u32) -> Result<Self> {
        if nvars < 2 {
            return Err(Error::TooFewVariables(2));
        }
        let mut seen = BTreeSet::new();
        for (a, g) in &points {
            if a.field() != field || g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if g.nvars() != nvars || g.terms().any(|(m, _)| m.exponents()[0] != 0) {
                return Err(Error::InvalidArgument(format!("g at {a} must be a polynomial in x2..x{nvars}")));
            }
            if !seen.insert(a.clone()) {
                return Err(Error::DuplicatePoints);
            }
        }
        Ok(SectionalData {
            nvars,
            field,
            points: points
                .into_iter()
                .map(|(a, g)| {
                    let g = g.monic(MonomialOrder::GrlexY);
                    (a, g)
                })
                .collect(),
            degree,
        })
    }

    /// Reads a sectional dataset (records in the renumbered ring).
    pub fn from_dataset(ds: &SliceDataset, degree: u32) -> Result<Self> {
        let SliceData::Sectional(recs) = &ds.data else {
            return Err(Error::Dataset("reconstruction needs a sectional dataset".into()));
        };
        let points = recs
            .iter()
            .map(|r| (r.alpha.clone(), r.g.embed(ds.nvars, 1)))
            .collect();
        Self::new(ds.nvars, ds.field, points, degree)
    }
}

/// `num / den` with `den` monic and coprime to `num`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl RationalFunction {
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        self.num.eval(x).div(&self.den.eval(x))
    }
}

fn is_zero_mono(m: &Monomial) -> bool {
    m.degree() == 0
}

/// `e = max_k multideg_y(g_k)`; all-constant data is rejected.
pub fn recover_multidegree(data: &SectionalData) -> Result<Monomial> {
    data.points
        .iter()
        .filter_map(|(_, g)| g.multideg_y())
        .max_by(|a, b| MonomialOrder::GrlexY.cmp(a, b))
        .filter(|e| !is_zero_mono(e))
        .ok_or(Error::InconsistentWithHypothesis)
}

/// Split into `(active, drop)` indices: drops are the points whose `g_k` has
/// multidegree other than `e` (zero and constant `g_k` included).
pub fn detect_drop_points(data: &SectionalData, e: &Monomial) -> Result<(Vec<usize>, Vec<usize>)> {
    let (active, drop): (Vec<usize>, Vec<usize>) =
        (0..data.points.len()).partition(|&k| data.points[k].1.multideg_y().as_ref() == Some(e));
    let allowed = (data.degree as usize).saturating_sub(e.degree() as usize);
    if e.degree() > data.degree || drop.len() > allowed {
        return Err(Error::TooManyDropPoints {
            drops: drop.len(),
            allowed,
        });
    }
    Ok((active, drop))
}

/// Rational interpolation with `deg N ≤ num_deg`, `deg D ≤ den_deg`, from
/// the kernel of `N(x_k) - v_k D(x_k) = 0`, then re-checked at every node.
pub fn cauchy_interpolate(
    nodes: &[(FieldElement, FieldElement)],
    num_deg: usize,
    den_deg: usize,
) -> Result<RationalFunction> {
    let field = nodes
        .first()
        .map(|(x, _)| x.field())
        .ok_or(Error::NotEnoughSamples {
            required: BigUint::from(num_deg + den_deg + 1),
            given: 0,
        })?;
    if nodes.len() < num_deg + den_deg + 1 {
        return Err(Error::NotEnoughSamples {
            required: BigUint::from(num_deg + den_deg + 1),
            given: nodes.len(),
        });
    }
    let xs: BTreeSet<&FieldElement> = nodes.iter().map(|(x, _)| x).collect();
    if xs.len() != nodes.len() {
        return Err(Error::DuplicatePoints);
    }
    let rows: Vec<Vec<FieldElement>> = nodes
        .iter()
        .map(|(x, v)| {
            let mut row = Vec::with_capacity(num_deg + den_deg + 2);
            let mut p = FieldElement::one(field);
            for _ in 0..=num_deg {
                row.push(p.clone());
                p = &p * x;
            }
            let mut p = -v;
            for _ in 0..=den_deg {
                row.push(p.clone());
                p = &p * x;
            }
            row
        })
        .collect();
    let ker = kernel(&Matrix::from_rows(field, &rows)?);
    let v = ker
        .into_iter()
        .find(|v| v[num_deg + 1..].iter().any(|c| !c.is_zero()))
        .ok_or(Error::NoInterpolant)?;
    let num = UniPoly::from_coeffs(field, v[..=num_deg].to_vec());
    let den = UniPoly::from_coeffs(field, v[num_deg + 1..].to_vec());
    let g = num.gcd(&den);
    let (num, den) = if g.is_zero() {
        (num, den)
    } else {
        (num.exact_div(&g)?, den.exact_div(&g)?)
    };
    let lead = den.leading_coeff().ok_or(Error::NoInterpolant)?.inv()?;
    let out = RationalFunction {
        num: num.scale(&lead),
        den: den.scale(&lead),
    };
    for (x, value) in nodes {
        let d = out.den.eval(x);
        if d.is_zero() || &(&out.num.eval(x) * &d.inv()?) != value {
            return Err(Error::NoInterpolant);
        }
    }
    Ok(out)
}

fn verification_failed(e: Error) -> Error {
    match e {
        Error::VerificationFailed(_) => e,
        other => Error::VerificationFailed(other.to_string()),
    }
}

/// Rebuilds `f` (leading coefficient one under GrlexAll) from at least `2d`
/// sectional generators. Correct when the true generator has constant
/// content in `K[x1]`; the result is re-checked against every input point.
pub fn reconstruct_principal(data: &SectionalData) -> Result<MultiPoly> {
    let d = data.degree;
    if d == 0 {
        return Err(Error::InvalidArgument("degree cap must be at least 1".into()));
    }
    if data.points.len() < 2 * d as usize {
        return Err(Error::NotEnoughSamples {
            required: BigUint::from(2 * d),
            given: data.points.len(),
        });
    }
    let field = data.field;
    let n = data.nvars;
    let e = recover_multidegree(data)?;
    let (active, drop) = detect_drop_points(data, &e)?;
    let r = drop.len();
    let e_deg = e.degree() as usize;
    let den_cap = d as usize - e_deg - r;
    let drop_alphas: Vec<FieldElement> = drop.iter().map(|&k| data.points[k].0.clone()).collect();

    let monos: BTreeSet<Monomial> = active
        .iter()
        .flat_map(|&k| data.points[k].1.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>())
        .filter(|m| m != &e)
        .collect();
    let corrections: Vec<FieldElement> = active
        .iter()
        .map(|&k| {
            let a = &data.points[k].0;
            drop_alphas
                .iter()
                .fold(FieldElement::one(field), |acc, l| &acc * &(a - l))
        })
        .collect();

    let fits: Vec<(Monomial, RationalFunction)> = monos
        .into_par_iter()
        .map(|m| {
            let nodes: Vec<(FieldElement, FieldElement)> = active
                .iter()
                .zip(&corrections)
                .map(|(&k, c)| {
                    let (a, g) = &data.points[k];
                    (a.clone(), &g.coeff(&m) * c)
                })
                .collect();
            let num_cap = (d as usize)
                .checked_sub(m.degree() as usize)
                .ok_or_else(|| Error::VerificationFailed(format!("monomial {m} exceeds degree {d}")))?;
            let fit = cauchy_interpolate(&nodes, num_cap, den_cap).map_err(verification_failed)?;
            Ok((m, fit))
        })
        .collect::<Result<Vec<_>>>()?;

    let a_tilde = fits
        .iter()
        .fold(UniPoly::one(field), |acc, (_, rf)| acc.lcm(&rf.den));
    if a_tilde.degree().unwrap_or(0) > den_cap {
        return Err(Error::VerificationFailed(format!(
            "denominator degree exceeds {den_cap}"
        )));
    }
    let mut coeffs: BTreeMap<Monomial, UniPoly> = BTreeMap::new();
    for (m, rf) in &fits {
        coeffs.insert(m.clone(), rf.num.mul(&a_tilde.exact_div(&rf.den)?));
    }
    coeffs.insert(e.clone(), a_tilde.mul(&UniPoly::from_roots(field, &drop_alphas)));
    let f = MultiPoly::from_x1_coefficients(n, field, coeffs.iter()).monic(MonomialOrder::GrlexAll);

    if f.degree().unwrap_or(0) > d {
        return Err(Error::VerificationFailed(format!("degree exceeds {d}")));
    }
    let content = f.content_x1()?;
    if !UniPoly::from_roots(field, &drop_alphas).rem(&content)?.is_zero() {
        return Err(Error::VerificationFailed("content has roots outside the drop points".into()));
    }
    for (alpha, g) in &data.points {
        if &sectional_generator(&f, alpha)? != g {
            return Err(Error::VerificationFailed(format!("slice at {alpha} does not match")));
        }
    }
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SharpnessVariant {
    AsPrinted,
    Corrected,
}

/// `f = x1^d x2 + 1`, `g = a(x1) x2 + x1^d - 1` and the points `2 ξ^i`,
/// `i = 1..2d-1`, for a primitive `(2d-1)`-th root of unity `ξ`.
pub fn sharpness_pair(
    d: u32,
    field: FieldSpec,
    variant: SharpnessVariant,
) -> Result<(MultiPoly, MultiPoly, Vec<FieldElement>)> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let k = 2 * u64::from(d) - 1;
    let xi = primitive_root_of_unity(field, k)?;
    let c = |v: i64| FieldElement::from_i64(field, v);
    let x1 = MultiPoly::var(2, field, 0);
    let x2 = MultiPoly::var(2, field, 1);
    let one = MultiPoly::one(2, field);
    let two_pow = MultiPoly::constant(2, c(2).pow(2 * u64::from(d) - 1));
    let f = &(&x1.pow(d) * &x2) + &one;
    let a = match variant {
        SharpnessVariant::AsPrinted => &two_pow - &x1.pow(d - 1),
        SharpnessVariant::Corrected => &(&two_pow * &x1) - &x1.pow(d),
    };
    let b = &x1.pow(d) - &one;
    let g = &(&a * &x2) + &b;
    let points = (1..=k).map(|i| &c(2) * &xi.pow(i)).collect();
    Ok((f, g, points))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessReport {
    pub degree: u32,
    pub field: FieldSpec,
    pub variant: SharpnessVariant,
    pub points: Vec<FieldElement>,
    /// Per point: do the sectional generators of `f` and `g` agree?
    pub per_point: Vec<bool>,
    /// Points where `g(α, y)` vanishes identically (`α^d = 1`).
    pub vanishing_points: Vec<FieldElement>,
    pub slices_equal_at_all_points: bool,
    pub ideals_distinct: bool,
}

impl SharpnessReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "degree": self.degree,
            "field": self.field.to_string(),
            "variant": match self.variant {
                SharpnessVariant::AsPrinted => "printed",
                SharpnessVariant::Corrected => "corrected",
            },
            "points": self.points.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "per_point": self.per_point,
            "vanishing_points": self.vanishing_points.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "slices_equal_at_all_points": self.slices_equal_at_all_points,
            "ideals_distinct": self.ideals_distinct,
            "total_degree_f": self.degree + 1,
        })
    }
}

pub fn verify_sharpness(d: u32, field: FieldSpec, variant: SharpnessVariant) -> Result<SharpnessReport> {
    let (f, g, points) = sharpness_pair(d, field, variant)?;
    let per_point = points
        .iter()
        .map(|a| Ok(sectional_generator(&f, a)? == sectional_generator(&g, a)?))
        .collect::<Result<Vec<bool>>>()?;
    let vanishing_points = points
        .iter()
        .filter(|a| g.substitute_x1(a).is_zero())
        .cloned()
        .collect();
    let ideals_distinct = !ideal_equal(&Ideal::principal(f), &Ideal::principal(g))?;
    Ok(SharpnessReport {
        vanishing_points,
        degree: d,
        field,
        variant,
        slices_equal_at_all_points: per_point.iter().all(|&b| b),
        per_point,
        points,
        ideals_distinct,
    })
}
