//! Buchberger's algorithm with reduced bases, normal forms, and the ideal
//! operations built on them. This is the independent oracle the rest of the
//! crate is checked against.
//!
//! Pair selection is the normal strategy (smallest lcm degree, ties broken by
//! pair index), with Buchberger's coprime and chain criteria.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::bounds::Limits;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::ideal::Ideal;
use crate::poly::{Monomial, MonomialOrder, MultiPoly};

/// Terms sorted ascending under the order; the leading term is last.
#[derive(Clone, Debug)]
struct Sparse {
    terms: Vec<(Monomial, FieldElement)>,
}

impl Sparse {
    fn from_poly(f: &MultiPoly, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, FieldElement)> =
            f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sparse { terms }
    }

    fn to_poly(&self, nvars: usize, field: FieldSpec) -> MultiPoly {
        MultiPoly::from_terms(nvars, field, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Monomial, FieldElement) {
        self.terms.last().expect("nonzero polynomial")
    }

    fn make_monic(&mut self) {
        let inv = self.lead().1.inv().expect("nonzero leading coefficient");
        for t in &mut self.terms {
            t.1 = &t.1 * &inv;
        }
    }

    /// `self - c * m * g`, merging two ascending term lists.
    fn sub_scaled(&self, c: &FieldElement, m: &Monomial, g: &Sparse, order: MonomialOrder) -> Sparse {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|(gm, gc)| (gm.mul(m), gc * c))
            .peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().expect("peeked").clone()),
                Ordering::Greater => {
                    let (bm, bc) = b.next().expect("peeked");
                    out.push((bm, -&bc));
                }
                Ordering::Equal => {
                    let (am, ac) = a.next().expect("peeked");
                    let (_, bc) = b.next().expect("peeked");
                    let s = ac - &bc;
                    if !s.is_zero() {
                        out.push((am.clone(), s));
                    }
                }
            }
        }
        Sparse { terms: out }
    }
}

/// Full reduction of `f` by `basis`; the remainder has no term divisible by a
/// leading monomial of the basis.
fn reduce(f: &Sparse, basis: &[Sparse], order: MonomialOrder) -> Sparse {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, FieldElement)> = Vec::new();
    while let Some((lm, lc)) = p.terms.last().cloned() {
        let divisor = basis.iter().find(|g| g.lead().0.divides(&lm));
        match divisor {
            Some(g) => {
                let (gm, gc) = g.lead();
                let q = gm.quotient(&lm).expect("divides");
                let c = lc.div(gc).expect("nonzero leading coefficient");
                p = p.sub_scaled(&c, &q, g, order);
            }
            None => {
                rem.push(p.terms.pop().expect("nonempty"));
            }
        }
    }
    rem.reverse();
    Sparse { terms: rem }
}

fn s_polynomial(f: &Sparse, g: &Sparse, order: MonomialOrder) -> Sparse {
    let (fm, fc) = f.lead();
    let (gm, gc) = g.lead();
    let l = fm.lcm(gm);
    let mf = fm.quotient(&l).expect("lcm");
    let mg = gm.quotient(&l).expect("lcm");
    // (l/fm) f / fc - (l/gm) g / gc
    let scaled_f = Sparse { terms: Vec::new() }.sub_scaled(
        &-&fc.inv().expect("nonzero"),
        &mf,
        f,
        order,
    );
    scaled_f.sub_scaled(&gc.inv().expect("nonzero"), &mg, g, order)
}

/// A reduced Gröbner basis: monic, auto-reduced, sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    basis: Vec<MultiPoly>,
    order: MonomialOrder,
    nvars: usize,
    field: FieldSpec,
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// The unit ideal has basis `{1}`.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        normal_form(f, self).is_zero()
    }

    fn sparse(&self) -> Vec<Sparse> {
        self.basis
            .iter()
            .map(|g| Sparse::from_poly(g, self.order))
            .collect()
    }
}

/// Reduced basis under grlex `x1 > ... > xn`.
pub fn buchberger(ideal: &Ideal) -> Result<GroebnerBasis> {
    buchberger_with(ideal, MonomialOrder::GrlexAll, &Limits::default())
}

pub fn buchberger_with(ideal: &Ideal, order: MonomialOrder, limits: &Limits) -> Result<GroebnerBasis> {
    let nvars = ideal.nvars();
    let field = ideal.field();
    let mut g: Vec<Sparse> = Vec::new();
    for f in ideal.gens().iter().filter(|f| !f.is_zero()) {
        let mut s = Sparse::from_poly(f, order);
        s.make_monic();
        g.push(s);
    }
    if g.iter().any(|s| s.lead().0.is_one()) {
        return Ok(GroebnerBasis {
            basis: vec![MultiPoly::one(nvars, field)],
            order,
            nvars,
            field,
        });
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut done: HashSet<(usize, usize)> = HashSet::new();

    while !pairs.is_empty() {
        let pick = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| (g[i].lead().0.lcm(&g[j].lead().0).degree(), j, i))
            .map(|(k, _)| k)
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(pick);
        done.insert((i, j));
        let (mi, mj) = (&g[i].lead().0, &g[j].lead().0);
        if mi.is_coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].lead().0.divides(&l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&g[i], &g[j], order);
        let mut r = reduce(&s, &g, order);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if r.lead().0.is_one() {
            return Ok(GroebnerBasis {
                basis: vec![MultiPoly::one(nvars, field)],
                order,
                nvars,
                field,
            });
        }
        let k = g.len();
        g.push(r);
        if g.len() > limits.max_basis {
            return Err(Error::CapExceeded(limits.max_basis));
        }
        for i in 0..k {
            pairs.push((i, k));
        }
    }

    // minimal basis: drop elements whose leading monomial another one divides
    let mut keep: Vec<Sparse> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let lm = &p.lead().0;
        let redundant = g.iter().enumerate().any(|(o, q)| {
            o != idx && q.lead().0.divides(lm) && (q.lead().0 != *lm || o < idx)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    // inter-reduce
    let mut reduced: Vec<Sparse> = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<Sparse> = keep
            .iter()
            .enumerate()
            .filter(|(o, _)| *o != idx)
            .map(|(_, s)| s.clone())
            .collect();
        let lead = keep[idx].lead().clone();
        let tail = Sparse {
            terms: keep[idx].terms[..keep[idx].terms.len() - 1].to_vec(),
        };
        let mut r = reduce(&tail, &others, order);
        r.terms.push(lead);
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&a.lead().0, &b.lead().0));
    Ok(GroebnerBasis {
        basis: reduced.iter().map(|s| s.to_poly(nvars, field)).collect(),
        order,
        nvars,
        field,
    })
}

/// Remainder of `f` under division by the basis; zero iff `f` is in the ideal.
pub fn normal_form(f: &MultiPoly, gb: &GroebnerBasis) -> MultiPoly {
    let s = Sparse::from_poly(f, gb.order);
    reduce(&s, &gb.sparse(), gb.order).to_poly(gb.nvars, gb.field)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    if a.nvars() != b.nvars() || a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(buchberger(a)?.basis == buchberger(b)?.basis)
}

/// Is every generator of `a` in `b`?
pub fn ideal_contains(b: &Ideal, a: &Ideal) -> Result<bool> {
    if a.nvars() != b.nvars() || a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let gb = buchberger(b)?;
    Ok(a.gens().iter().all(|f| gb.contains(f)))
}

/// `I ∩ J` by eliminating `t` from `t I + (1 - t) J`.
pub fn ideal_intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if a.nvars() != b.nvars() || a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let n = a.nvars();
    let field = a.field();
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::principal(MultiPoly::zero(n, field)));
    }
    let t = MultiPoly::var(n + 1, field, 0);
    let one_minus_t = &MultiPoly::one(n + 1, field) - &t;
    let mut gens: Vec<MultiPoly> = a.gens().iter().map(|f| &t * &f.embed(n + 1, 1)).collect();
    gens.extend(b.gens().iter().map(|g| &one_minus_t * &g.embed(n + 1, 1)));
    let gb = buchberger_with(
        &Ideal::new(gens)?,
        MonomialOrder::Elimination { block: 1 },
        &Limits::default(),
    )?;
    let eliminated: Vec<MultiPoly> = gb
        .basis()
        .iter()
        .filter(|g| g.terms().all(|(m, _)| m.exponents()[0] == 0))
        .map(|g| g.drop_first_var().expect("t-free"))
        .collect();
    if eliminated.is_empty() {
        return Ok(Ideal::principal(MultiPoly::zero(n, field)));
    }
    Ideal::new(eliminated)
}
