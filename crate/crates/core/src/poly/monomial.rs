use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `x1^e1 * ... * xn^en`; variable `x1` is index 0.
///
/// The derived `Ord` is graded lexicographic with `x1 > x2 > ... > xn`, so a
/// `BTreeMap<Monomial, _>` iterates in increasing grlex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The single variable `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponents of `x2..xn`, i.e. the monomial seen in the `y` variables.
    pub fn y_part(&self) -> Monomial {
        Monomial(self.0[1..].to_vec())
    }

    /// Monomial with `x1` exponent set to zero, length unchanged.
    pub fn without_x1(&self) -> Monomial {
        let mut e = self.0.clone();
        e[0] = 0;
        Monomial(e)
    }

    /// All monomials in `nvars` variables of total degree at most `max_degree`,
    /// in increasing grlex order.
    pub fn all_up_to_degree(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut of_degree = Vec::new();
            let mut buf = vec![0u32; nvars];
            compositions(d, 0, &mut buf, &mut of_degree);
            of_degree.sort();
            out.extend(of_degree);
        }
        out
    }
}

fn compositions(remaining: u32, pos: usize, buf: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if buf.is_empty() {
        if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if pos == buf.len() - 1 {
        buf[pos] = remaining;
        out.push(Monomial(buf.clone()));
        buf[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        buf[pos] = e;
        compositions(remaining - e, pos + 1, buf, out);
    }
    buf[pos] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Monomial orders used across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded lex with `x1 > x2 > ... > xn`. Canonical display order.
    GrlexAll,
    /// Graded lex on `x2 > ... > xn` with `x1` treated as part of the
    /// coefficient; ties in the `y` part are broken by the `x1` exponent.
    GrlexY,
    /// Block order: the first `block` variables compared by grlex first, then
    /// the remaining variables by grlex. Eliminates the first block.
    Elimination { block: usize },
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrlexAll => a.cmp(b),
            MonomialOrder::GrlexY => grlex(&a.0[1..], &b.0[1..]).then_with(|| a.0[0].cmp(&b.0[0])),
            MonomialOrder::Elimination { block } => grlex(&a.0[..block], &b.0[..block])
                .then_with(|| grlex(&a.0[block..], &b.0[block..])),
        }
    }
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_all() {
        let m = |v: &[u32]| Monomial::new(v.to_vec());
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert_eq!(m(&[0, 0]).cmp(&m(&[0, 0])), Ordering::Equal);
    }

    #[test]
    fn grlex_y_ignores_x1_first() {
        let m = |v: &[u32]| Monomial::new(v.to_vec());
        let o = MonomialOrder::GrlexY;
        assert_eq!(o.cmp(&m(&[5, 1, 0]), &m(&[0, 0, 2])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[3, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 1, 0]), &m(&[1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn enumerate_counts() {
        // C(d + n, n)
        assert_eq!(Monomial::all_up_to_degree(2, 3).len(), 10);
        assert_eq!(Monomial::all_up_to_degree(3, 4).len(), 35);
        assert_eq!(Monomial::all_up_to_degree(0, 4).len(), 1);
        let ms = Monomial::all_up_to_degree(3, 3);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }
}
