//! Rational differential expressions: a polynomial numerator over a
//! denominator kept as a product of a monomial and monic polynomial factors.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use hashbrown::HashMap;

use super::gcd::gcd;
use super::generator::Generator;
use super::monomial::Monomial;
use super::poly::{Accumulator, Coeff, Poly};
use super::rational::Rational;
use super::gcd_threshold;
use crate::error::{Error, Result};

/// Denominator `mono · ∏ fᵢ^kᵢ` with each `fᵢ` monic, free of monomial
/// content, not a monomial, and the list sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Denominator {
    mono: Monomial,
    factors: Vec<(Poly, u32)>,
}

impl Denominator {
    pub fn one() -> Self {
        Denominator::default()
    }

    pub fn is_one(&self) -> bool {
        self.mono.is_one() && self.factors.is_empty()
    }

    pub fn monomial(&self) -> &Monomial {
        &self.mono
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    /// Every factor as `(poly, multiplicity)`, monomial generators included.
    pub fn all_factors(&self) -> Vec<(Poly, u32)> {
        let mut out: Vec<(Poly, u32)> =
            self.mono.vars().iter().map(|&(g, e)| (Poly::var(g), e)).collect();
        out.extend(self.factors.iter().cloned());
        out
    }

    pub fn expand(&self) -> Poly {
        let mut p = Poly::monomial(self.mono.clone(), Coeff::ONE);
        for (f, k) in &self.factors {
            p = p.mul(&f.pow(*k));
        }
        p
    }

    fn insert(&mut self, f: Poly, k: u32) {
        if k == 0 {
            return;
        }
        match self.factors.binary_search_by(|(g, _)| g.cmp_canonical(&f)) {
            Ok(i) => self.factors[i].1 += k,
            Err(i) => self.factors.insert(i, (f, k)),
        }
    }

    fn mul(&self, other: &Denominator) -> Denominator {
        let mut d = Denominator { mono: self.mono.mul(&other.mono), factors: self.factors.clone() };
        for (f, k) in &other.factors {
            d.insert(f.clone(), *k);
        }
        d
    }

    fn lcm(&self, other: &Denominator) -> Denominator {
        let mut d = Denominator { mono: self.mono.lcm(&other.mono), factors: self.factors.clone() };
        for (f, k) in &other.factors {
            match d.factors.binary_search_by(|(g, _)| g.cmp_canonical(f)) {
                Ok(i) => d.factors[i].1 = d.factors[i].1.max(*k),
                Err(i) => d.factors.insert(i, (f.clone(), *k)),
            }
        }
        d
    }

    /// `self / other` expanded, for `other` structurally dividing `self`.
    fn cofactor(&self, other: &Denominator) -> Poly {
        let mono = self.mono.div(&other.mono).expect("lcm is a multiple");
        let mut p = Poly::monomial(mono, Coeff::ONE);
        for (f, k) in &self.factors {
            let have = other
                .factors
                .binary_search_by(|(g, _)| g.cmp_canonical(f))
                .map(|i| other.factors[i].1)
                .unwrap_or(0);
            if *k > have {
                p = p.mul(&f.pow(*k - have));
            }
        }
        p
    }

    fn multiplicity(&self) -> u32 {
        self.mono.degree() + self.factors.iter().map(|(_, k)| *k).sum::<u32>()
    }
}

/// Splits a nonzero polynomial into `coeff · mono · rest` with `rest` monic,
/// free of monomial content (possibly one).
fn split_poly(p: &Poly) -> (Coeff, Monomial, Poly) {
    let mono = p.monomial_content();
    let rest = p.div_monomial(&mono);
    let (c, rest) = rest.make_monic();
    (c, mono, rest)
}

/// An exact rational differential expression.
///
/// Derived equality is structural. For the mathematical comparison use
/// [`Expr::same_value`]; zero testing only inspects the numerator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Expr {
    num: Poly,
    den: Denominator,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::from_poly(Poly::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Expr::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Expr::constant(Coeff::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Expr::constant(Coeff::ratio(n, d))
    }

    pub fn imag_unit() -> Self {
        Expr::constant(Coeff::I)
    }

    pub fn var(g: Generator) -> Self {
        Expr::from_poly(Poly::var(g))
    }

    pub fn from_poly(num: Poly) -> Self {
        Expr { num, den: Denominator::one() }
    }

    /// `num / den`; errors if `den` is zero.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self> {
        Expr::from_poly(num).div(&Expr::from_poly(den))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Denominator {
        &self.den
    }

    /// The denominator multiplied out.
    pub fn denom(&self) -> Poly {
        self.den.expand()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Coeff> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn same_value(&self, other: &Expr) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.sub(other).is_zero()
    }

    /// Generators occurring anywhere, sorted.
    pub fn generators(&self) -> Vec<Generator> {
        let mut g = self.num.generators();
        g.extend(self.den.mono.generators());
        for (f, _) in &self.den.factors {
            g.extend(f.generators());
        }
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.num.contains(g)
            || self.den.mono.exponent(g) > 0
            || self.den.factors.iter().any(|(f, _)| f.contains(g))
    }

    fn build(num: Poly, den: Denominator) -> Expr {
        let mut e = Expr { num, den };
        e.tidy();
        e
    }

    /// Cheap canonicalization run after every operation: cancels common
    /// monomial factors, and once the numerator grows past the gcd
    /// threshold, divides out denominator factors that divide exactly.
    fn tidy(&mut self) {
        if self.num.is_zero() {
            self.den = Denominator::one();
            return;
        }
        if !self.den.mono.is_one() {
            let common = self.num.monomial_content().gcd(&self.den.mono);
            if !common.is_one() {
                self.num = self.num.div_monomial(&common);
                self.den.mono = self.den.mono.div(&common).expect("common divides");
            }
        }
        if !self.den.factors.is_empty() && self.num.len() > gcd_threshold() {
            self.cancel_exact_factors();
        }
    }

    fn cancel_exact_factors(&mut self) -> bool {
        let mut changed = false;
        let mut i = 0;
        while i < self.den.factors.len() {
            while self.den.factors[i].1 > 0 {
                match self.num.div_exact(&self.den.factors[i].0) {
                    Some(q) => {
                        self.num = q;
                        self.den.factors[i].1 -= 1;
                        changed = true;
                    }
                    None => break,
                }
            }
            if self.den.factors[i].1 == 0 {
                self.den.factors.remove(i);
            } else {
                i += 1;
            }
        }
        changed
    }

    /// Canonical representative: reduced, with the non-monomial part of the
    /// denominator multiplied out into a single monic factor. Equal values
    /// give structurally equal results. Idempotent.
    pub fn normalize(&self) -> Expr {
        let r = self.reduce();
        if r.den.factors.len() <= 1 && r.den.factors.iter().all(|(_, k)| *k == 1) {
            return r;
        }
        let prod = r.den.factors.iter().fold(Poly::one(), |acc, (f, k)| acc.mul(&f.pow(*k)));
        let den = Denominator { mono: r.den.mono.clone(), factors: alloc::vec![(prod, 1)] };
        Expr { num: r.num, den }
    }

    /// Reduced representative that keeps the denominator factored: every
    /// factor is divided out of the numerator as far as the polynomial gcd
    /// allows. Value-preserving.
    pub fn reduce(&self) -> Expr {
        let mut e = self.clone();
        if e.num.is_zero() {
            return Expr::zero();
        }
        e.cancel_exact_factors();
        let mut pending: Vec<(Poly, u32)> = core::mem::take(&mut e.den.factors);
        let mut done: Vec<(Poly, u32)> = Vec::new();
        while let Some((f, k)) = pending.pop() {
            let g = gcd(&e.num, &f);
            if g.is_constant() {
                done.push((f, k));
                continue;
            }
            let mut left = k;
            while left > 0 {
                match e.num.div_exact(&g) {
                    Some(q) => {
                        e.num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            let rest = f.div_exact(&g).expect("gcd divides");
            if !rest.is_constant() {
                let (c, m, r) = split_poly(&rest);
                debug_assert!(m.is_one());
                // f and g are monic, so the cofactor is too
                debug_assert!(c.is_one());
                pending.push((r, k));
            }
            if left > 0 {
                done.push((g, left));
            }
        }
        let mut den = Denominator { mono: e.den.mono.clone(), factors: Vec::new() };
        for (f, k) in done {
            den.insert(f, k);
        }
        Expr::build(e.num, den)
    }

    pub fn neg(&self) -> Expr {
        Expr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Coeff) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn scale_int(&self, n: i64) -> Expr {
        self.scale(&Coeff::from_int(n))
    }

    pub fn add(&self, other: &Expr) -> Expr {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.combine(other, true)
    }

    fn combine(&self, other: &Expr, negate: bool) -> Expr {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        if self.den == other.den {
            let num = if negate { self.num.sub(&other.num) } else { self.num.add(&other.num) };
            return Expr::build(num, self.den.clone());
        }
        let den = self.den.lcm(&other.den);
        let a = self.num.mul(&den.cofactor(&self.den));
        let b = other.num.mul(&den.cofactor(&other.den));
        let num = if negate { a.sub(&b) } else { a.add(&b) };
        Expr::build(num, den)
    }

    /// Numerators of `a` and `b` over their least common denominator.
    pub fn over_common_denominator(a: &Expr, b: &Expr) -> (Poly, Poly, Denominator) {
        let den = a.den.lcm(&b.den);
        let na = a.num.mul(&den.cofactor(&a.den));
        let nb = b.num.mul(&den.cofactor(&b.den));
        (na, nb, den)
    }

    /// Sum of many expressions over one common denominator.
    pub fn sum<'a, I: IntoIterator<Item = &'a Expr>>(items: I) -> Expr {
        let items: Vec<&Expr> = items.into_iter().filter(|e| !e.is_zero()).collect();
        match items.len() {
            0 => return Expr::zero(),
            1 => return items[0].clone(),
            _ => {}
        }
        let mut den = items[0].den.clone();
        for e in &items[1..] {
            if e.den != den {
                den = den.lcm(&e.den);
            }
        }
        let mut acc = Accumulator::new();
        let mut cofactors: Vec<(Denominator, Poly)> = Vec::new();
        for e in items {
            if e.den == den {
                acc.add_poly(&e.num);
                continue;
            }
            let cof = match cofactors.iter().find(|(d, _)| *d == e.den) {
                Some((_, c)) => c.clone(),
                None => {
                    let c = den.cofactor(&e.den);
                    cofactors.push((e.den.clone(), c.clone()));
                    c
                }
            };
            acc.add_poly(&e.num.mul(&cof));
        }
        Expr::build(acc.finish(), den)
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        if self.is_zero() || other.is_zero() {
            return Expr::zero();
        }
        if other.is_polynomial() {
            if let Some(c) = other.num.constant_value() {
                return self.scale(&c);
            }
        }
        if self.is_polynomial() {
            if let Some(c) = self.num.constant_value() {
                return other.scale(&c);
            }
        }
        Expr::build(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_poly(&self, p: &Poly) -> Expr {
        Expr::build(self.num.mul(p), self.den.clone())
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Expr> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let (c, mono, rest) = split_poly(&self.num);
        let num = self.den.expand().scale(&c.inv().ok_or(Error::ZeroDivisor)?);
        let mut den = Denominator { mono, factors: Vec::new() };
        if !rest.is_constant() {
            den.insert(rest, 1);
        }
        Ok(Expr::build(num, den))
    }

    pub fn div(&self, other: &Expr) -> Result<Expr> {
        if other.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Expr::zero());
        }
        if let Some(c) = other.constant_value() {
            return Ok(self.scale(&c.inv().ok_or(Error::ZeroDivisor)?));
        }
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Expr> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        let mut num = base.num.pow(n);
        let mut den = Denominator { mono: Monomial::one(), factors: Vec::new() };
        if n > 0 {
            den.mono = Monomial::from_factors(base.den.mono.vars().iter().map(|&(g, k)| (g, k * n)));
            for (f, k) in &base.den.factors {
                den.insert(f.clone(), k * n);
            }
        } else {
            num = Poly::one();
        }
        Ok(Expr::build(num, den))
    }

    /// Applies a derivation `∂` given on polynomials, by the quotient rule
    /// over the factored denominator.
    pub fn derive_with(&self, mut d: impl FnMut(&Poly) -> Result<Poly>) -> Result<Expr> {
        let dn = d(&self.num)?;
        if self.den.is_one() {
            return Ok(Expr::from_poly(dn));
        }
        // factors whose derivative is nonzero
        let mut moving: Vec<(Poly, u32, Poly)> = Vec::new();
        for (f, k) in self.den.all_factors() {
            let df = d(&f)?;
            if !df.is_zero() {
                moving.push((f, k, df));
            }
        }
        if moving.is_empty() {
            return Ok(Expr::build(dn, self.den.clone()));
        }
        // (∂n · Π f − n · Σ k ∂f Π_{j≠i} f_j) / (den · Π f)
        let prod_all = moving.iter().fold(Poly::one(), |acc, (f, _, _)| acc.mul(f));
        let mut num = dn.mul(&prod_all);
        for (i, (_, k, df)) in moving.iter().enumerate() {
            let others = moving
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(Poly::one(), |acc, (_, (f, _, _))| acc.mul(f));
            let term = self.num.mul(df).mul(&others).scale(&Coeff::from_int(*k as i64));
            num = num.sub(&term);
        }
        let mut den = self.den.clone();
        for (f, _, _) in &moving {
            if f.is_monomial() {
                den.mono = den.mono.mul(&f.leading().expect("nonzero").0);
            } else {
                den.insert(f.clone(), 1);
            }
        }
        Ok(Expr::build(num, den))
    }

    /// Algebraic partial derivative with respect to a generator.
    pub fn partial(&self, g: Generator) -> Expr {
        self.derive_with(|p| Ok(p.partial(g))).expect("partial derivative is infallible")
    }

    /// Replaces generators by expression values computed on demand.
    ///
    /// `value` returns `None` for generators that stay as they are. Errors
    /// if a denominator factor becomes zero.
    pub fn eval_with(
        &self,
        value: &mut impl FnMut(Generator) -> Result<Option<Expr>>,
    ) -> Result<Expr> {
        let mut memo: HashMap<Generator, Option<Expr>> = HashMap::new();
        let mut lookup = |g: Generator| -> Result<Option<Expr>> {
            if let Some(v) = memo.get(&g) {
                return Ok(v.clone());
            }
            let v = value(g)?;
            memo.insert(g, v.clone());
            Ok(v)
        };
        let num = eval_poly(&self.num, &mut lookup)?;
        if self.den.is_one() {
            return Ok(num);
        }
        // invert factor by factor so unchanged factors keep their multiplicity
        let mut out = num;
        for (f, k) in self.den.all_factors() {
            let fv = eval_poly(&f, &mut lookup)?;
            if fv.is_zero() {
                return Err(Error::ZeroDenominator(f.to_string()));
            }
            out = out.mul(&fv.inv()?.pow(k as i32)?);
        }
        Ok(out)
    }

    /// Simultaneous substitution of generators.
    pub fn substitute(&self, bindings: &BTreeMap<Generator, Expr>) -> Result<Expr> {
        for (g, v) in bindings {
            if v.contains(*g) {
                return Err(Error::SelfReference(*g));
            }
        }
        self.eval_with(&mut |g| Ok(bindings.get(&g).cloned()))
    }

    /// Exact evaluation at a point assigning every occurring generator.
    pub fn eval_at(&self, point: &BTreeMap<Generator, Coeff>) -> Result<Coeff> {
        let mut missing = None;
        let mut lookup = |g: Generator| {
            let v = point.get(&g).cloned();
            if v.is_none() && missing.is_none() {
                missing = Some(g);
            }
            v
        };
        let n = self.num.eval(&mut lookup);
        let d = self.den.expand().eval(&mut lookup);
        if let Some(g) = missing {
            return Err(Error::Unassigned(g));
        }
        let (n, d) = (n.expect("assigned"), d.expect("assigned"));
        if d.is_zero() {
            return Err(Error::ZeroDenominator(self.den.expand().to_string()));
        }
        Ok(&n / &d)
    }

    /// Coefficient extraction for an expression polynomial in `g` with
    /// `g`-free denominator: entry `k` multiplies `g^k`.
    pub fn coefficients_in(&self, g: Generator) -> Option<Vec<Expr>> {
        if self.den.mono.exponent(g) > 0 || self.den.factors.iter().any(|(f, _)| f.contains(g)) {
            return None;
        }
        Some(
            self.num
                .to_univariate(g)
                .into_iter()
                .map(|p| Expr::build(p, self.den.clone()))
                .collect(),
        )
    }

    pub fn total_multiplicity_of_denominator(&self) -> u32 {
        self.den.multiplicity()
    }
}

/// Evaluates a polynomial, replacing generators for which `lookup` yields a
/// value; terms are grouped by their substituted part so each distinct
/// power product is formed once.
fn eval_poly(
    p: &Poly,
    lookup: &mut impl FnMut(Generator) -> Result<Option<Expr>>,
) -> Result<Expr> {
    let mut bound: Vec<Generator> = Vec::new();
    for g in p.generators() {
        if lookup(g)?.is_some() {
            bound.push(g);
        }
    }
    if bound.is_empty() {
        return Ok(Expr::from_poly(p.clone()));
    }
    let mut groups: BTreeMap<Monomial, Accumulator> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (b, free) = m.partition(|g| bound.binary_search(&g).is_ok());
        groups.entry(b).or_default().add(free, c.clone());
    }
    let mut powers: HashMap<(Generator, u32), Expr> = HashMap::new();
    let mut parts: Vec<Expr> = Vec::with_capacity(groups.len());
    for (b, acc) in groups {
        let mut value = Expr::from_poly(acc.finish());
        for &(g, e) in b.vars() {
            let pw = match powers.get(&(g, e)) {
                Some(v) => v.clone(),
                None => {
                    let v = lookup(g)?.expect("bound generator").pow(e as i32)?;
                    powers.insert((g, e), v.clone());
                    v
                }
            };
            value = value.mul(&pw);
            if value.is_zero() {
                break;
            }
        }
        parts.push(value);
    }
    Ok(Expr::sum(parts.iter()))
}

impl From<Poly> for Expr {
    fn from(p: Poly) -> Self {
        Expr::from_poly(p)
    }
}

impl From<Generator> for Expr {
    fn from(g: Generator) -> Self {
        Expr::var(g)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<Rational> for Expr {
    fn from(r: Rational) -> Self {
        Expr::constant(Coeff::real(r))
    }
}

fn fmt_coeff_abs(c: &Coeff, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    // caller has already factored out a leading minus sign where possible
    if c.is_real() {
        write!(f, "{}", c.re)
    } else if c.re.is_zero() {
        if c.im.is_one() {
            write!(f, "i")
        } else {
            write!(f, "{}*i", c.im)
        }
    } else {
        write!(f, "{}", c)
    }
}

/// Whether a coefficient prints with a leading minus (negated form printed).
fn coeff_is_negative(c: &Coeff) -> bool {
    (c.is_real() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative())
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, &(g, e)) in m.vars().iter().enumerate() {
        if i > 0 {
            write!(f, "*")?;
        }
        if e == 1 {
            write!(f, "{}", g)?;
        } else {
            write!(f, "{}^{}", g, e)?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    /// Plain notation, re-parseable by the expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let neg = coeff_is_negative(c);
            let c = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                fmt_coeff_abs(&c, f)?;
            } else {
                if !c.is_one() {
                    fmt_coeff_abs(&c, f)?;
                    write!(f, "*")?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Denominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.mono.is_one() {
            fmt_monomial(&self.mono, f)?;
            first = false;
        }
        for (p, k) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *k == 1 {
                write!(f, "({})", p)?;
            } else {
                write!(f, "({})^{}", p, k)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl PartialOrd for Denominator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Denominator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mono.cmp(&other.mono).then_with(|| {
            for (a, b) in self.factors.iter().zip(other.factors.iter()) {
                match a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}
