//! Exact big-integer evaluation of the degree and sample-count bounds.
//!
//! Strict inequalities of the form `|S| > B` are reported as the least
//! admissible size `B + 1`. Bounds are only ever computed here; turning one
//! into an actual matrix dimension or sample count goes through
//! [`Limits::check`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Values wider than this many bits are refused instead of materialized.
const MAX_BOUND_BITS: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BoundName {
    Hermann,
    Kollar,
    SliceGeometric,
    SliceAlgebraic,
    SimplifiedGenerator,
    AlgLinSamples,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundName::Hermann => "hermann",
            BoundName::Kollar => "kollar",
            BoundName::SliceGeometric => "slice-geometric",
            BoundName::SliceAlgebraic => "slice-algebraic",
            BoundName::SimplifiedGenerator => "simplified-generator",
            BoundName::AlgLinSamples => "alg-lin-samples",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub name: BoundName,
    pub params: BTreeMap<String, u64>,
    pub value: BigUint,
}

impl BoundReport {
    fn new(name: BoundName, params: &[(&str, u64)], value: BigUint) -> Self {
        BoundReport {
            name,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            value,
        }
    }

    /// The value as a machine integer, if it fits.
    pub fn as_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name.to_string(),
            "params": self.params,
            "value": self.value.to_string(),
        })
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// `base^exp`, refusing results wider than [`MAX_BOUND_BITS`].
fn checked_pow(base: &BigUint, exp: &BigUint) -> Result<BigUint> {
    if base.is_zero() {
        return Ok(if exp.is_zero() { BigUint::one() } else { BigUint::zero() });
    }
    if base.is_one() || exp.is_zero() {
        return Ok(BigUint::one());
    }
    let fits = exp
        .to_u64()
        .and_then(|e| e.checked_mul(base.bits()))
        .is_some_and(|b| b <= MAX_BOUND_BITS);
    if !fits {
        return Err(Error::FeasibilityCapExceeded {
            what: "bound value (bits)".into(),
            size: exp * base.bits(),
            cap: MAX_BOUND_BITS,
        });
    }
    Ok(base.pow(exp.to_u32().expect("exponent below bit cap")))
}

fn two_pow(k: u64) -> Result<BigUint> {
    if k > MAX_BOUND_BITS {
        return Err(Error::FeasibilityCapExceeded {
            what: "bound exponent (bits)".into(),
            size: big(k),
            cap: MAX_BOUND_BITS,
        });
    }
    Ok(BigUint::one() << k)
}

/// `2 (r δ)^(2^(n-1))`, the additive term shared by the Hermann-type bounds.
fn hermann_excess(delta: u64, r: u64, n: u64) -> Result<BigUint> {
    let base = big(r) * big(delta);
    if base <= BigUint::one() {
        return Ok(big(2) * base);
    }
    let e = two_pow(n - 1)?;
    Ok(big(2) * checked_pow(&base, &e)?)
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg.to_string()))
    }
}

/// Cofactor degree bound for ideal membership: `d + 2 (r δ)^(2^(n-1))`.
pub fn hermann_bound(d: u64, delta: u64, r: u64, n: u64) -> Result<BoundReport> {
    require(r >= 1 && n >= 1, "hermann bound needs r >= 1 and n >= 1")?;
    let value = big(d) + hermann_excess(delta, r, n)?;
    Ok(BoundReport::new(
        BoundName::Hermann,
        &[("d", d), ("delta", delta), ("r", r), ("n", n)],
        value,
    ))
}

/// Certificate degree bound for radical membership: `max(3, δ+1)^(n+1)`.
pub fn kollar_bound(delta: u64, n: u64) -> Result<BoundReport> {
    require(n >= 1, "kollar bound needs n >= 1")?;
    let value = checked_pow(&big(3.max(delta + 1)), &big(n + 1))?;
    Ok(BoundReport::new(
        BoundName::Kollar,
        &[("delta", delta), ("n", n)],
        value,
    ))
}

/// Least `|S|` with `|S| > (d+1) deg V`.
pub fn slice_count_geometric(d: u64, deg_v: u64) -> Result<BoundReport> {
    require(deg_v >= 1, "deg V must be at least 1")?;
    let value = big(d + 1) * big(deg_v) + 1u32;
    Ok(BoundReport::new(
        BoundName::SliceGeometric,
        &[("d", d), ("degV", deg_v)],
        value,
    ))
}

/// Least `|S|` with `|S| > ((d + 2(δr)^(2^(n-1)))^n + 1) max(d, δ)`.
pub fn slice_count_algebraic(d: u64, delta: u64, r: u64, n: u64) -> Result<BoundReport> {
    require(r >= 1 && n >= 1, "slice bound needs r >= 1 and n >= 1")?;
    let inner = big(d) + hermann_excess(delta, r, n)?;
    let value = (checked_pow(&inner, &big(n))? + 1u32) * big(d.max(delta)) + 1u32;
    Ok(BoundReport::new(
        BoundName::SliceAlgebraic,
        &[("d", d), ("delta", delta), ("r", r), ("n", n)],
        value,
    ))
}

/// `(δ + n)^((n+1)^2 2^n)`, a single bound covering every generator of
/// degree at most `δ`.
pub fn simplified_generator_bound(delta: u64, n: u64) -> Result<BoundReport> {
    require(delta >= 1 && n >= 1, "simplified bound needs delta, n >= 1")?;
    let exp = big((n + 1) * (n + 1)) * two_pow(n)?;
    let value = checked_pow(&big(delta + n), &exp)?;
    Ok(BoundReport::new(
        BoundName::SimplifiedGenerator,
        &[("delta", delta), ("n", n)],
        value,
    ))
}

/// Least sample count for parametric compatibility: `d max(N, M+1) + 1`.
pub fn alg_lin_samples(d: u64, rows: u64, cols: u64) -> Result<BoundReport> {
    let value = big(d) * big(rows.max(cols + 1)) + 1u32;
    Ok(BoundReport::new(
        BoundName::AlgLinSamples,
        &[("d", d), ("N", rows), ("M", cols)],
        value,
    ))
}

/// Caps that stand between a bound and an actual computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest matrix dimension (rows or columns) or sample count.
    pub max_dimension: u64,
    /// Largest number of dense matrix entries (rows × columns).
    pub max_entries: u64,
    /// Largest Gröbner basis (elements) before giving up.
    pub max_basis: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dimension: 1_000_000,
            max_entries: 25_000_000,
            max_basis: 10_000,
        }
    }
}

impl Limits {
    /// Errors when `size` exceeds the dimension cap.
    pub fn check(&self, what: &str, size: &BigUint) -> Result<u64> {
        match size.to_u64() {
            Some(s) if s <= self.max_dimension => Ok(s),
            _ => Err(Error::FeasibilityCapExceeded {
                what: what.to_string(),
                size: size.clone(),
                cap: self.max_dimension,
            }),
        }
    }

    /// Errors when a `rows × cols` dense matrix is too large.
    pub fn check_matrix(&self, rows: u64, cols: u64) -> Result<()> {
        self.check("matrix rows", &big(rows))?;
        self.check("matrix columns", &big(cols))?;
        let entries = big(rows) * big(cols);
        if entries > big(self.max_entries) {
            return Err(Error::FeasibilityCapExceeded {
                what: "matrix entries".into(),
                size: entries,
                cap: self.max_entries,
            });
        }
        Ok(())
    }
}

/// `C(n + k, k)`, the number of monomials of degree at most `k` in `n` variables.
pub fn monomial_count(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=n {
        acc = acc * big(k + i) / big(i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(r: Result<BoundReport>) -> BigUint {
        r.unwrap().value
    }

    #[test]
    fn substitution_values() {
        assert_eq!(v(hermann_bound(3, 2, 2, 1)), big(11));
        assert_eq!(v(hermann_bound(3, 2, 2, 3)), big(515));
        assert_eq!(v(hermann_bound(0, 1, 1, 2)), big(2));
        assert_eq!(v(kollar_bound(2, 2)), big(27));
        assert_eq!(v(kollar_bound(5, 1)), big(36));
        assert_eq!(v(kollar_bound(0, 3)), big(81));
        assert_eq!(v(slice_count_geometric(3, 2)), big(9));
        assert_eq!(v(slice_count_geometric(0, 1)), big(2));
        assert_eq!(v(slice_count_geometric(2, 3)), big(10));
        assert_eq!(v(slice_count_algebraic(2, 2, 2, 2)), big(2315));
        assert_eq!(v(slice_count_algebraic(1, 1, 1, 1)), big(5));
        assert_eq!(v(slice_count_algebraic(2, 2, 1, 2)), big(203));
        assert_eq!(v(simplified_generator_bound(1, 1)), big(256));
        assert_eq!(v(simplified_generator_bound(2, 1)), big(6561));
        assert_eq!(v(simplified_generator_bound(1, 2)), big(3).pow(36));
    }

    #[test]
    fn large_algebraic_value() {
        // independent evaluation in u128: (514^3 + 1) * 2 + 1
        let expect: u128 = (514u128.pow(3) + 1) * 2 + 1;
        assert_eq!(expect, 271_593_491);
        assert_eq!(
            v(slice_count_algebraic(2, 2, 2, 3)),
            BigUint::from(expect)
        );
    }

    #[test]
    fn oversized_bounds_are_refused() {
        assert!(matches!(
            hermann_bound(1, 3, 3, 40),
            Err(Error::FeasibilityCapExceeded { .. })
        ));
        // degenerate bases stay cheap regardless of the exponent
        assert_eq!(v(hermann_bound(4, 1, 1, 60)), big(6));
        assert_eq!(v(hermann_bound(4, 0, 3, 60)), big(4));
    }

    #[test]
    fn report_json() {
        let r = hermann_bound(3, 2, 2, 3).unwrap();
        let j = r.to_json();
        assert_eq!(j["value"], "515");
        assert_eq!(j["name"], "hermann");
        assert_eq!(j["params"]["delta"], 2);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(2, 2), big(6));
        assert_eq!(monomial_count(3, 4), big(35));
        assert_eq!(monomial_count(0, 9), big(1));
    }

    #[test]
    fn limits() {
        let l = Limits::default();
        assert!(l.check("samples", &big(1_000_000)).is_ok());
        assert!(l.check("samples", &big(1_000_001)).is_err());
        assert!(l.check_matrix(10_000, 10_000).is_err());
        assert!(l.check_matrix(1000, 1000).is_ok());
    }

    #[test]
    fn simplified_dominates_algebraic() {
        for delta in 1..=3u64 {
            for n in 1..=3u64 {
                let r = monomial_count(n, delta).to_u64().unwrap();
                let simple = v(simplified_generator_bound(delta, n));
                let alg = v(slice_count_algebraic(delta, delta, r, n));
                assert!(simple + 1u32 >= alg, "delta={delta} n={n}");
            }
        }
    }

    fn bump(x: u64, by: u64) -> u64 {
        x + by
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn bounds_are_monotone(
            d in 0u64..6, delta in 0u64..4, r in 1u64..4, n in 1u64..4,
            which in 0usize..4, by in 0u64..3,
        ) {
            let (d2, delta2, r2, n2) = match which {
                0 => (bump(d, by), delta, r, n),
                1 => (d, bump(delta, by), r, n),
                2 => (d, delta, bump(r, by), n),
                _ => (d, delta, r, bump(n, by)),
            };
            prop_assert!(v(hermann_bound(d, delta, r, n)) <= v(hermann_bound(d2, delta2, r2, n2)));
            prop_assert!(v(slice_count_algebraic(d, delta, r, n)) <= v(slice_count_algebraic(d2, delta2, r2, n2)));
            prop_assert!(v(kollar_bound(delta, n)) <= v(kollar_bound(delta2, n2)));
            prop_assert!(v(slice_count_geometric(d, r)) <= v(slice_count_geometric(d2, r2)));
            prop_assert!(v(alg_lin_samples(d, r, n)) <= v(alg_lin_samples(d2, r2, n2)));
            if delta >= 1 {
                prop_assert!(v(simplified_generator_bound(delta, n)) <= v(simplified_generator_bound(delta2, n2)));
            }
        }
    }
}
