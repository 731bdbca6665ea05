use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `x^i`.
/// Trailing zeros are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
    field: FieldSpec,
}

impl UniPoly {
    pub fn zero(field: FieldSpec) -> Self {
        UniPoly {
            coeffs: Vec::new(),
            field,
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(FieldElement::one(field))
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(c.field(), vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: FieldSpec) -> Self {
        Self::from_coeffs(field, vec![FieldElement::zero(field), FieldElement::one(field)])
    }

    /// `x - root`.
    pub fn linear(root: &FieldElement) -> Self {
        let field = root.field();
        Self::from_coeffs(field, vec![-root, FieldElement::one(field)])
    }

    pub fn from_coeffs(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs, field }
    }

    /// Monic `∏ (x - root)`.
    pub fn from_roots(field: FieldSpec, roots: &[FieldElement]) -> Self {
        roots
            .iter()
            .fold(Self::one(field), |acc, r| acc.mul(&Self::linear(r)))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::zero(self.field), |acc, c| &(&acc * at) + c)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Self::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Self::from_coeffs(self.field, coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![FieldElement::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(self.field, out)
    }

    pub fn scale(&self, c: &FieldElement) -> UniPoly {
        Self::from_coeffs(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Scaled to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let mut quot = vec![FieldElement::zero(self.field); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((
            Self::from_coeffs(self.field, quot),
            Self::from_coeffs(self.field, rem),
        ))
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvalidArgument("inexact polynomial division".into()))
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic lcm; zero if either argument is zero.
    pub fn lcm(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let g = self.gcd(other);
        self.mul(other)
            .exact_div(&g)
            .expect("gcd divides the product")
            .monic()
    }

    /// Formats the polynomial in the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        let terms: Vec<(u32, FieldElement)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c.clone()))
            .collect();
        super::parse::format_terms(
            terms.iter().map(|(e, c)| {
                let mono = match e {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{e}"),
                };
                (mono, c)
            }),
        )
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x1"))
    }
}
