//! Multivariate polynomial gcd by recursive primitive pseudo-remainder
//! sequences. Only used when a fraction is explicitly reduced, so the
//! implementation favours simplicity over speed.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::generator::Generator;
use super::monomial::Monomial;
use super::poly::{Coeff, Poly};

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.make_monic().1;
    }
    if b.is_zero() {
        return a.make_monic().1;
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let g = gcd_no_monomial(&a.div_monomial(&ma), &b.div_monomial(&mb));
    g.mul_term(&mg, &Coeff::ONE).make_monic().1
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.make_monic().1;
    }
    let ga = a.generators();
    let gb = b.generators();
    let shared: Vec<Generator> = ga.iter().filter(|g| gb.binary_search(g).is_ok()).copied().collect();
    if shared.is_empty() {
        return Poly::one();
    }
    if shared.len() < ga.len() || shared.len() < gb.len() {
        // a common divisor only involves shared generators, so it divides
        // every coefficient over the others
        let mut parts = coefficients_over(a, &shared);
        parts.extend(coefficients_over(b, &shared));
        parts.sort_by_key(|c| c.len());
        let mut g = Poly::zero();
        for c in parts {
            g = gcd(&g, &c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        return g;
    }
    // the shared variable with the smallest combined degree
    let v = *shared
        .iter()
        .min_by_key(|g| a.degree_in(**g) + b.degree_in(**g))
        .expect("nonempty");
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = content(&ua);
    let cb = content(&ub);
    let cg = gcd(&ca, &cb);
    let mut pa = primitive(&ua, &ca);
    let mut pb = primitive(&ub, &cb);
    if pa.len() < pb.len() {
        core::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = pseudo_rem(&pa, &pb);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            // degree zero remainder: primitive parts are coprime
            return cg.make_monic().1;
        }
        pa = pb;
        let cr = content(&r);
        pb = primitive(&r, &cr);
    }
    let pp = Poly::from_univariate(&pb, v);
    cg.mul(&pp).make_monic().1
}

/// Coefficients of `p` as a polynomial in the generators outside `keep`
/// (sorted); each is a polynomial over `keep` alone.
fn coefficients_over(p: &Poly, keep: &[Generator]) -> Vec<Poly> {
    let mut groups: BTreeMap<Monomial, Vec<(Monomial, Coeff)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (inside, outside) = m.partition(|g| keep.binary_search(&g).is_ok());
        groups.entry(outside).or_default().push((inside, c.clone()));
    }
    groups.into_values().map(Poly::from_terms).collect()
}

/// gcd of all coefficients, stopping early at a constant.
fn content(coeffs: &[Poly]) -> Poly {
    let mut nonzero: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| c.len());
    let mut g = Poly::zero();
    for c in nonzero {
        g = gcd(&g, c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn primitive(coeffs: &[Poly], content: &Poly) -> Vec<Poly> {
    if content.is_one() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|c| c.div_exact(content).expect("content divides each coefficient"))
        .collect()
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients,
/// trailing zero coefficients trimmed.
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bc) in b.iter().enumerate() {
            let t = bc.mul(&lr);
            r[k + shift] = r[k + shift].sub(&t);
        }
        trim(&mut r);
    }
    r
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}
