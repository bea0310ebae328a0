//! Sparse multivariate polynomials over the Gaussian rationals.

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec::Vec;
use core::cmp::Ordering;

use hashbrown::HashMap;

use super::generator::Generator;
use super::monomial::Monomial;
use super::rational::{GaussianRational, Rational};

pub type Coeff = GaussianRational;

/// Terms sorted strictly descending in graded-lex order; no zero
/// coefficients. Equal polynomials have identical term vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Monomial, Coeff)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Coeff::ONE)
    }

    pub fn constant(c: Coeff) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn var(g: Generator) -> Self {
        Poly::monomial(Monomial::var(g), Coeff::ONE)
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: alloc::vec![(m, c)] }
        }
    }

    /// Collects arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(it: I) -> Self {
        let mut acc = Accumulator::new();
        for (m, c) in it {
            acc.add(m, c);
        }
        acc.finish()
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Single term (including constants).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::ZERO),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Coeff {
        self.terms.first().map(|t| t.1.clone()).unwrap_or(Coeff::ZERO)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Poly {
        self.scale(&Coeff::real(r.clone()))
    }

    /// Multiplies by `c·m`; order is preserved since grlex is multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc = Accumulator::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                acc.add(m1.mul(m2), c1 * c2);
            }
        }
        acc.finish()
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Greatest monomial dividing every term (one for the zero polynomial).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Monomial::one() };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Divides every term by `m`; panics if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.div(m).expect("monomial divides every term"), c.clone()))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is one, returning the removed factor.
    pub fn make_monic(&self) -> (Coeff, Poly) {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return (Coeff::ONE, self.clone());
        }
        let inv = lc.inv().expect("nonzero leading coefficient");
        (lc, self.scale(&inv))
    }

    /// Exact multivariate division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.inv()?));
        }
        if divisor.terms.len() == 1 {
            let (m, c) = &divisor.terms[0];
            let inv = c.inv()?;
            let mut terms = Vec::with_capacity(self.terms.len());
            for (n, d) in &self.terms {
                terms.push((n.div(m)?, d * &inv));
            }
            return Some(Poly { terms });
        }
        let (lm, lc) = divisor.leading().cloned()?;
        let lc_inv = lc.inv()?;
        let tail = &divisor.terms[1..];
        let mut rem: BTreeMap<Monomial, Coeff> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(&lm)?;
            let qc = &c * &lc_inv;
            for (dm, dc) in tail {
                let key = qm.mul(dm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    Entry::Occupied(mut o) => {
                        let v = o.get() - &delta;
                        if v.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = v;
                        }
                    }
                    Entry::Vacant(v) => {
                        v.insert(-&delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = Vec::new();
        for (m, _) in &self.terms {
            gens.extend(m.generators());
        }
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(g) > 0)
    }

    pub fn degree_in(&self, g: Generator) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(g)).max().unwrap_or(0)
    }

    /// Coefficients with respect to `g`: entry `k` multiplies `g^k`.
    pub fn to_univariate(&self, g: Generator) -> Vec<Poly> {
        let deg = self.degree_in(g) as usize;
        let mut parts: Vec<Vec<(Monomial, Coeff)>> = (0..=deg).map(|_| Vec::new()).collect();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(g);
            parts[e as usize].push((rest, c.clone()));
        }
        // removing one generator keeps the relative order within each slice
        parts.into_iter().map(|terms| Poly { terms }).collect()
    }

    pub fn from_univariate(coeffs: &[Poly], g: Generator) -> Poly {
        let mut acc = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul_term(&Monomial::pow_of(g, k as u32), &Coeff::ONE));
            }
        }
        acc
    }

    /// Algebraic partial derivative.
    pub fn partial(&self, g: Generator) -> Poly {
        let mut acc = Accumulator::new();
        for (m, c) in &self.terms {
            let e = m.exponent(g);
            if e == 0 {
                continue;
            }
            let reduced = m.div(&Monomial::var(g)).expect("exponent positive");
            acc.add(reduced, c.scale(&Rational::from_int(e as i64)));
        }
        acc.finish()
    }

    /// Canonical total order used to sort denominator factors.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0).reverse() {
                Ordering::Equal => {}
                o => return o,
            }
            match a.1.cmp(&b.1) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    pub fn eval(&self, value: &mut impl FnMut(Generator) -> Option<Coeff>) -> Option<Coeff> {
        let mut sum = Coeff::ZERO;
        let mut cache: HashMap<(Generator, u32), Coeff> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(g, e) in m.vars() {
                let p = match cache.get(&(g, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = value(g)?.pow(e);
                        cache.insert((g, e), p.clone());
                        p
                    }
                };
                t = &t * &p;
            }
            sum = &sum + &t;
        }
        Some(sum)
    }
}

/// Hash-based term accumulator; `finish` sorts into canonical order.
pub struct Accumulator {
    map: HashMap<Monomial, Coeff>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator { map: HashMap::new() }
    }

    pub fn with_capacity(n: usize) -> Self {
        Accumulator { map: HashMap::with_capacity(n.min(1 << 16)) }
    }

    pub fn add(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.map.entry(m) {
            hashbrown::hash_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                *o.get_mut() = s;
            }
            hashbrown::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_poly(&mut self, p: &Poly) {
        for (m, c) in &p.terms {
            self.add(m.clone(), c.clone());
        }
    }

    /// Adds `p · c · m`.
    pub fn add_scaled(&mut self, p: &Poly, m: &Monomial, c: &Coeff) {
        for (n, d) in &p.terms {
            self.add(n.mul(m), d * c);
        }
    }

    pub fn finish(self) -> Poly {
        let mut terms: Vec<(Monomial, Coeff)> =
            self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }
}

impl Default for Accumulator {
    fn default() -> Self {
        Accumulator::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::generator::Dep;

    fn v(g: Generator) -> Poly {
        Poly::var(g)
    }

    fn ux() -> Generator {
        Generator::jet(Dep::U, 0, 1, 0)
    }

    #[test]
    fn commutative_sum_cancels() {
        let a = v(Generator::X).add(&v(ux()));
        let b = v(ux()).add(&v(Generator::X));
        assert!(a.sub(&b).is_zero());
        assert_eq!(a, b);
    }

    #[test]
    fn exact_division() {
        let a = v(Generator::X).add(&v(Generator::Y));
        let b = v(Generator::X).sub(&v(ux()));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.add(&Poly::one()).div_exact(&a), None);
    }

    #[test]
    fn univariate_roundtrip() {
        let p = v(Generator::X).pow(3).add(&v(Generator::X).mul(&v(Generator::Y))).add(&Poly::one());
        let u = p.to_univariate(Generator::X);
        assert_eq!(u.len(), 4);
        assert_eq!(Poly::from_univariate(&u, Generator::X), p);
    }

    #[test]
    fn partial_of_power() {
        let p = v(ux()).pow(2);
        assert_eq!(p.partial(ux()), v(ux()).scale(&Coeff::from_int(2)));
    }
}
