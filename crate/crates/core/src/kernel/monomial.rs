use core::cmp::Ordering;
use core::hash::{Hash, Hasher};

use smallvec::SmallVec;

use super::generator::Generator;

/// A power product of generators, stored sorted by generator with no zero
/// exponents.
#[derive(Clone, Debug, Default)]
pub struct Monomial {
    vars: SmallVec<[(Generator, u32); 4]>,
    degree: u32,
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.vars == other.vars
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vars.hash(state);
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(g: Generator) -> Self {
        Monomial::pow_of(g, 1)
    }

    pub fn pow_of(g: Generator, e: u32) -> Self {
        if e == 0 {
            return Monomial::one();
        }
        let mut vars = SmallVec::new();
        vars.push((g, e));
        Monomial { vars, degree: e }
    }

    /// Builds from arbitrary (possibly repeated, unsorted) factors.
    pub fn from_factors<I: IntoIterator<Item = (Generator, u32)>>(it: I) -> Self {
        let mut m = Monomial::one();
        for (g, e) in it {
            m = m.mul(&Monomial::pow_of(g, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vars(&self) -> &[(Generator, u32)] {
        &self.vars
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        match self.vars.binary_search_by(|(h, _)| h.cmp(&g)) {
            Ok(i) => self.vars[i].1,
            Err(_) => 0,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut vars = SmallVec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.vars, &other.vars);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    vars.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    vars.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    vars.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&a[i..]);
        vars.extend_from_slice(&b[j..]);
        Monomial { vars, degree: self.degree + other.degree }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.is_one() {
            return Some(self.clone());
        }
        if other.degree > self.degree {
            return None;
        }
        let mut vars = SmallVec::with_capacity(self.vars.len());
        let mut j = 0;
        for &(g, e) in self.vars.iter() {
            if j < other.vars.len() && other.vars[j].0 == g {
                let f = other.vars[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    vars.push((g, e - f));
                }
                j += 1;
            } else if j < other.vars.len() && other.vars[j].0 < g {
                return None;
            } else {
                vars.push((g, e));
            }
        }
        if j < other.vars.len() {
            return None;
        }
        Some(Monomial { vars, degree: self.degree - other.degree })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.div(self).is_some()
    }

    /// Component-wise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut vars = SmallVec::new();
        let mut degree = 0;
        let mut j = 0;
        for &(g, e) in self.vars.iter() {
            while j < other.vars.len() && other.vars[j].0 < g {
                j += 1;
            }
            if j < other.vars.len() && other.vars[j].0 == g {
                let m = e.min(other.vars[j].1);
                vars.push((g, m));
                degree += m;
            }
        }
        Monomial { vars, degree }
    }

    /// Component-wise maximum of exponents.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let g = self.gcd(other);
        self.mul(other).div(&g).expect("gcd divides product")
    }

    /// Removes `g` entirely, returning its exponent.
    pub fn split_off(&self, g: Generator) -> (Monomial, u32) {
        match self.vars.binary_search_by(|(h, _)| h.cmp(&g)) {
            Ok(i) => {
                let e = self.vars[i].1;
                let mut vars = self.vars.clone();
                vars.remove(i);
                (Monomial { vars, degree: self.degree - e }, e)
            }
            Err(_) => (self.clone(), 0),
        }
    }

    /// Splits into (part over generators satisfying `pred`, rest).
    pub fn partition(&self, mut pred: impl FnMut(Generator) -> bool) -> (Monomial, Monomial) {
        let mut yes = Monomial::one();
        let mut no = Monomial::one();
        for &(g, e) in self.vars.iter() {
            let side = if pred(g) { &mut yes } else { &mut no };
            side.vars.push((g, e));
            side.degree += e;
        }
        (yes, no)
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.vars.iter().map(|(g, _)| *g)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponent vectors
    /// compared with earlier generators as more significant.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.vars, &other.vars);
        let n = a.len().min(b.len());
        for i in 0..n {
            match a[i].0.cmp(&b[i].0) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match a[i].1.cmp(&b[i].1) {
                    Ordering::Equal => {}
                    o => return o,
                },
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::generator::{Dep, Generator};

    fn ux() -> Generator {
        Generator::jet(Dep::U, 0, 1, 0)
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = Monomial::from_factors([(Generator::X, 2), (ux(), 1)]);
        let b = Monomial::from_factors([(Generator::Y, 1), (ux(), 3)]);
        let p = a.mul(&b);
        assert_eq!(p.degree(), 7);
        assert_eq!(p.div(&b), Some(a.clone()));
        assert_eq!(a.div(&b), None);
        assert_eq!(p.exponent(ux()), 4);
    }

    #[test]
    fn grlex_order() {
        let x2 = Monomial::pow_of(Generator::X, 2);
        let xy = Monomial::from_factors([(Generator::X, 1), (Generator::Y, 1)]);
        let y2 = Monomial::pow_of(Generator::Y, 2);
        let x = Monomial::var(Generator::X);
        assert!(x2 > xy && xy > y2 && y2 > x);
        assert!(x > Monomial::one());
    }

    #[test]
    fn order_is_multiplicative() {
        let a = Monomial::from_factors([(Generator::X, 1), (ux(), 1)]);
        let b = Monomial::pow_of(Generator::Y, 2);
        let c = Monomial::var(Generator::T);
        assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
    }

    #[test]
    fn gcd_lcm() {
        let a = Monomial::from_factors([(Generator::X, 2), (ux(), 1)]);
        let b = Monomial::from_factors([(Generator::X, 1), (Generator::Y, 4)]);
        assert_eq!(a.gcd(&b), Monomial::var(Generator::X));
        assert_eq!(a.lcm(&b).degree(), 7);
    }
}
