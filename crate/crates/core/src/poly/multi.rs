use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{rank, Matrix};

use super::monomial::{Monomial, MonomialOrder};
use super::uni::UniPoly;

/// Sparse multivariate polynomial in `x1..xn`. Zero coefficients are never
/// stored; the zero polynomial has an empty term map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, field: FieldSpec) -> Self {
        MultiPoly {
            nvars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: FieldElement) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn one(nvars: usize, field: FieldSpec) -> Self {
        Self::constant(nvars, FieldElement::one(field))
    }

    /// The variable `x_{index+1}`.
    pub fn var(nvars: usize, field: FieldSpec, index: usize) -> Self {
        Self::term(FieldElement::one(field), Monomial::var(nvars, index))
    }

    pub fn term(c: FieldElement, m: Monomial) -> Self {
        let mut p = Self::zero(m.nvars(), c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Collects like terms; zero sums are dropped.
    pub fn from_terms(
        nvars: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Self {
        let mut p = Self::zero(nvars, field);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, &c);
        }
        p
    }

    /// Builds `y`-coefficient form back into a polynomial: `Σ a_i(x1) y^i`,
    /// with the `y` monomials given as full-length monomials whose `x1`
    /// exponent is zero.
    pub fn from_x1_coefficients<'a>(
        nvars: usize,
        field: FieldSpec,
        parts: impl IntoIterator<Item = (&'a Monomial, &'a UniPoly)>,
    ) -> Self {
        let mut p = Self::zero(nvars, field);
        for (ymono, a) in parts {
            for (k, c) in a.coeffs().iter().enumerate() {
                let mut e = ymono.exponents().to_vec();
                e[0] += k as u32;
                p.add_term(Monomial::new(e), c);
            }
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &FieldElement)> {
        match order {
            MonomialOrder::GrlexAll => self.terms.iter().next_back(),
            _ => self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)),
        }
    }

    /// Scaled so the leading coefficient under `order` is one.
    pub fn monic(&self, order: MonomialOrder) -> MultiPoly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars, self.field);
        }
        MultiPoly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &FieldElement, m: &Monomial) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars, self.field);
        }
        MultiPoly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars, self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars);
        let mut acc = FieldElement::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// `f(alpha, x2, ..., xn)`, still over `n` variables with `x1` absent.
    pub fn substitute_x1(&self, alpha: &FieldElement) -> MultiPoly {
        let mut out = Self::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            let e = m.exponents()[0] as u64;
            let v = if e == 0 { c.clone() } else { c * &alpha.pow(e) };
            out.add_term(m.without_x1(), &v);
        }
        out
    }

    /// Drops variable `x1` and renumbers `x2..xn` as `x1..x_{n-1}`.
    /// Fails if `x1` occurs.
    pub fn drop_first_var(&self) -> Result<MultiPoly> {
        if self.nvars == 0 {
            return Err(Error::TooFewVariables(1));
        }
        let mut out = Self::zero(self.nvars - 1, self.field);
        for (m, c) in &self.terms {
            if m.exponents()[0] != 0 {
                return Err(Error::InvalidArgument(
                    "polynomial still involves x1".into(),
                ));
            }
            out.terms.insert(m.y_part(), c.clone());
        }
        Ok(out)
    }

    /// Re-embeds into `new_nvars` variables, mapping `x_i` to `x_{i+offset}`.
    pub fn embed(&self, new_nvars: usize, offset: usize) -> MultiPoly {
        assert!(offset + self.nvars <= new_nvars);
        let mut out = Self::zero(new_nvars, self.field);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_nvars];
            e[offset..offset + self.nvars].copy_from_slice(m.exponents());
            out.terms.insert(Monomial::new(e), c.clone());
        }
        out
    }

    /// The polynomial as `Σ a_i(x1) y^i`: map from `y` monomial (full length,
    /// `x1` exponent zero) to the univariate coefficient `a_i`.
    pub fn x1_coefficients(&self) -> BTreeMap<Monomial, UniPoly> {
        let mut dense: BTreeMap<Monomial, Vec<FieldElement>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.exponents()[0] as usize;
            let slot = dense.entry(m.without_x1()).or_default();
            if slot.len() <= k {
                slot.resize(k + 1, FieldElement::zero(self.field));
            }
            slot[k] = c.clone();
        }
        dense
            .into_iter()
            .map(|(m, v)| (m, UniPoly::from_coeffs(self.field, v)))
            .collect()
    }

    /// Largest `y` monomial (GrlexY on `x2..xn`) with a nonzero coefficient
    /// `a_i(x1)`. Returned at full length with `x1` exponent zero.
    pub fn multideg_y(&self) -> Option<Monomial> {
        self.terms
            .keys()
            .map(Monomial::without_x1)
            .max_by(|a, b| MonomialOrder::GrlexY.cmp(a, b))
    }

    /// Monic gcd of the `x1`-coefficients `a_i(x1)`.
    pub fn content_x1(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self
            .x1_coefficients()
            .values()
            .fold(UniPoly::zero(self.field), |g, a| g.gcd(a)))
    }

    /// Substitutes `x_i ↦ images[i]` for every variable.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let target_nvars = images.first().map_or(self.nvars, MultiPoly::nvars);
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(target_nvars, self.field), p.clone()])
            .collect();
        let mut out = Self::zero(target_nvars, self.field);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target_nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            out = &out + &t;
        }
        out
    }

    /// `f(M x)`: each `x_i` becomes `Σ_j M[i][j] x_j`. `M` must be invertible.
    pub fn apply_linear_change(&self, m: &Matrix) -> Result<MultiPoly> {
        let n = self.nvars;
        if m.rows() != n || m.cols() != n {
            return Err(Error::Shape(format!("expected {n}x{n} matrix")));
        }
        if m.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if rank(m) != n {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| {
                MultiPoly::from_terms(
                    n,
                    self.field,
                    (0..n).map(|j| (Monomial::var(n, j), m.get(i, j).clone())),
                )
            })
            .collect();
        Ok(self.compose(&images))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = MultiPoly::zero(self.nvars, self.field);
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.mul(mb), &(a * b));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in decreasing grlex order, e.g. `x1^2*x2 - 3/4*x1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = super::parse::format_terms(self.terms.iter().rev().map(|(m, c)| {
            let mono = if m.is_one() { String::new() } else { m.to_string() };
            (mono, c)
        }));
        write!(f, "{s}")
    }
}
