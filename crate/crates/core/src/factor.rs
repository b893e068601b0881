//! Irreducibility testing and recognition of powers of linear forms.

use serde::{Deserialize, Serialize};

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::{Monomial, Poly};
use crate::upoly::{factor, UPoly};

/// Outcome of [`irreducible_test`].
#[derive(Debug, Clone, PartialEq)]
pub enum Irreducibility {
    Yes,
    /// A nontrivial factor, confirmed by exact division.
    No(Poly),
    Unknown(String),
}

/// Largest univariate degree a Kronecker image may reach.
pub const KRONECKER_DEGREE_CAP: u64 = 600;
/// Number of factor combinations tried before reporting `Unknown`.
pub const COMBINATION_BUDGET: usize = 1 << 14;

/// Decides irreducibility. Univariate inputs are factored completely;
/// multivariate inputs are mapped to one variable by Kronecker substitution,
/// factored there, and every combination of the univariate factors is pulled
/// back and tried as an exact divisor.
pub fn irreducible_test(p: &Poly) -> Result<Irreducibility> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Err(Error::UnitPolynomial);
    }
    if p.total_degree() == Some(1) {
        return Ok(Irreducibility::Yes);
    }
    let content = p.monomial_content();
    if !content.is_one() {
        let rest = p.div_monomial(&content);
        let factor = if rest.is_constant() {
            let i = content.exps().iter().position(|&e| e > 0).unwrap();
            Poly::var(p.ctx(), p.field(), i)
        } else {
            rest
        };
        return Ok(Irreducibility::No(confirm(p, factor)?));
    }
    let vars = p.support_vars();
    let base: u64 = vars.iter().map(|&i| p.degree_in(i) as u64).max().unwrap() + 1;
    let mut top: u64 = 0;
    let mut scale = 1u64;
    for &i in &vars {
        top += p.degree_in(i) as u64 * scale;
        scale = match scale.checked_mul(base) {
            Some(s) => s,
            None => return Ok(Irreducibility::Unknown("Kronecker degree overflow".into())),
        };
    }
    if top > KRONECKER_DEGREE_CAP {
        return Ok(Irreducibility::Unknown(format!(
            "Kronecker image of degree {top} exceeds cap {KRONECKER_DEGREE_CAP}"
        )));
    }
    let image = kronecker(p, &vars, base);
    let Some(factors) = factor(&image) else {
        return Ok(Irreducibility::Unknown("univariate recombination budget exhausted".into()));
    };
    if factors.len() == 1 && factors[0].1 == 1 {
        return Ok(Irreducibility::Yes);
    }
    if vars.len() == 1 {
        let g = inverse_kronecker(&factors[0].0, p.ctx(), &vars, base);
        return Ok(Irreducibility::No(confirm(p, g)?));
    }
    // enumerate sub-multisets by count vectors, keeping product degree at
    // most half of the total (the complement covers the rest)
    let total_deg = image.degree().unwrap();
    let mut counts = vec![0u32; factors.len()];
    let mut budget = COMBINATION_BUDGET;
    loop {
        let mut k = 0;
        loop {
            if k == counts.len() {
                return Ok(Irreducibility::Yes);
            }
            if counts[k] < factors[k].1 {
                counts[k] += 1;
                break;
            }
            counts[k] = 0;
            k += 1;
        }
        let deg: usize = counts.iter().zip(&factors).map(|(c, f)| *c as usize * f.0.degree().unwrap()).sum();
        if deg == 0 || 2 * deg > total_deg {
            continue;
        }
        if budget == 0 {
            return Ok(Irreducibility::Unknown("factor combination budget exhausted".into()));
        }
        budget -= 1;
        let mut prod = UPoly::one(p.field());
        for (c, f) in counts.iter().zip(&factors) {
            if *c > 0 {
                prod = prod.mul(&f.0.pow(*c));
            }
        }
        let cand = inverse_kronecker(&prod, p.ctx(), &vars, base);
        if cand.is_constant() {
            continue;
        }
        if p.exact_divide(&cand)?.is_some() {
            return Ok(Irreducibility::No(cand));
        }
    }
}

fn confirm(p: &Poly, factor: Poly) -> Result<Poly> {
    match p.exact_divide(&factor)? {
        Some(_) if !factor.is_constant() && factor.total_degree() < p.total_degree() => Ok(factor),
        _ => Err(Error::Internal(format!("claimed factor {factor} does not divide {p}"))),
    }
}

fn kronecker(p: &Poly, vars: &[usize], base: u64) -> UPoly {
    let f = p.field();
    let mut c: Vec<Scalar> = Vec::new();
    for (m, a) in p.terms() {
        let mut e = 0u64;
        let mut s = 1u64;
        for &i in vars {
            e += m.exp(i) as u64 * s;
            s *= base;
        }
        let e = e as usize;
        if c.len() <= e {
            c.resize(e + 1, f.zero());
        }
        c[e] = f.add(&c[e], a);
    }
    UPoly::new(f, c)
}

fn inverse_kronecker(u: &UPoly, ctx: &VarContext, vars: &[usize], base: u64) -> Poly {
    let n = ctx.len();
    let terms = u.c.iter().enumerate().filter(|(_, a)| !u.field.is_zero(a)).map(|(e, a)| {
        let mut exps = Monomial::one(n).exps().to_vec();
        let mut rest = e as u64;
        for &i in vars {
            exps[i] = (rest % base) as u32;
            rest /= base;
        }
        // digits beyond the last variable never occur for true factors;
        // fold them into the last one so the candidate simply fails to divide
        if rest > 0 {
            let last = *vars.last().unwrap();
            exps[last] += (rest * base) as u32;
        }
        (Monomial::new(exps.into_iter().collect()), a.clone())
    });
    Poly::from_terms(ctx, u.field, terms)
}

/// The linear form `a*Z + b*T` on a two-variable context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForm {
    pub a: String,
    pub b: String,
}

/// `h = c * l^d` decomposition returned by [`power_of_linear`].
#[derive(Debug, Clone, PartialEq)]
pub struct LinearPower {
    pub c: Scalar,
    /// Coefficients of `Z` and `T`.
    pub a: Scalar,
    pub b: Scalar,
    pub d: u32,
}

impl LinearPower {
    pub fn linear_poly(&self, ctx: &VarContext, field: Field) -> Poly {
        Poly::var(ctx, field, 0).scale(&self.a).add(&Poly::var(ctx, field, 1).scale(&self.b))
    }

    pub fn form(&self) -> LinearForm {
        LinearForm { a: self.a.to_string(), b: self.b.to_string() }
    }
}

/// Writes a homogeneous `h(Z, T)` of degree `d >= 1` as `c * l^d` with `l`
/// normalized to `Z - mu*T` or `T`, or returns `None` if impossible over the
/// ground field.
pub fn power_of_linear(h: &Poly) -> Result<Option<LinearPower>> {
    if h.nvars() != 2 {
        return Err(Error::Precondition("power_of_linear needs a two-variable context".into()));
    }
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !h.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let d = h.total_degree().unwrap();
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let f = h.field();
    let ctx = h.ctx();
    let a0 = h.coeff_of(&Monomial::var(2, 0, d));
    if f.is_zero(&a0) {
        if h.len() == 1 && h.terms()[0].0 == Monomial::var(2, 1, d) {
            let c = h.terms()[0].1.clone();
            return Ok(Some(LinearPower { c, a: f.zero(), b: f.one(), d }));
        }
        return Ok(None);
    }
    // h(Z,1)/a0 = (Z - mu)^d = (Z^q - mu^q)^(d/q) with q the p-part of d;
    // mu^q = mu in F_p, so mu is read off one coefficient
    let p = f.characteristic();
    let mut q = 1u32;
    if p > 0 {
        while (d / q) % p as u32 == 0 {
            q *= p as u32;
        }
    }
    let dd = d / q;
    let coef = h.coeff_of(&Monomial::new([q * (dd - 1), d - q * (dd - 1)].into_iter().collect()));
    let nu = f.neg(&f.div(&f.div(&coef, &a0), &f.from_i64(dd as i64)));
    let lp = LinearPower { c: a0.clone(), a: f.one(), b: f.neg(&nu), d };
    let expanded = lp.linear_poly(ctx, f).pow(d).scale(&a0);
    Ok((expanded == *h).then_some(lp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(text: &str, field: Field) -> Poly {
        Poly::parse(text, &VarContext::plane(), field).unwrap()
    }

    #[test]
    fn linear_powers() {
        let q = Field::Rationals;
        let t6 = power_of_linear(&plane("T^6", q)).unwrap().unwrap();
        assert_eq!((t6.a.to_string(), t6.b.to_string()), ("0".into(), "1".into()));
        let sq = power_of_linear(&plane("Z^2 + 2*Z*T + T^2", q)).unwrap().unwrap();
        assert_eq!(sq.linear_poly(&VarContext::plane(), q), plane("Z + T", q));
        assert!(power_of_linear(&plane("Z^2 + T^2", q)).unwrap().is_none());
        assert_eq!(power_of_linear(&plane("Z + T^2", q)), Err(Error::NotHomogeneous));
        // characteristic dividing the degree
        let f2 = Field::Prime(2);
        let h = plane("(Z + T)^4", f2);
        assert_eq!(h.len(), 2);
        let r = power_of_linear(&h).unwrap().unwrap();
        assert_eq!(r.linear_poly(&VarContext::plane(), f2), plane("Z + T", f2));
        let f3 = Field::Prime(3);
        let r = power_of_linear(&plane("2*(Z + 2*T)^6", f3)).unwrap().unwrap();
        assert_eq!(r.c, Scalar::Modular(2));
    }

    #[test]
    fn irreducibility_examples() {
        let q = Field::Rationals;
        let ctx = VarContext::new(&["X1", "Z", "T"]).unwrap();
        let p = Poly::parse("X1*Z + Z", &ctx, q).unwrap();
        assert_eq!(irreducible_test(&p).unwrap(), Irreducibility::No(Poly::parse("X1 + 1", &ctx, q).unwrap()));
        assert_eq!(irreducible_test(&plane("Z", q)).unwrap(), Irreducibility::Yes);
        assert_eq!(irreducible_test(&plane("Z^2 - T^3", q)).unwrap(), Irreducibility::Yes);
        assert_eq!(irreducible_test(&plane("Z^2 + T^2", q)).unwrap(), Irreducibility::Yes);
        assert!(matches!(irreducible_test(&plane("Z^2 + T^2", Field::Prime(5))).unwrap(), Irreducibility::No(_)));
        assert_eq!(irreducible_test(&plane("Z*T", q)).unwrap(), Irreducibility::No(plane("Z", q)));
        let sn = plane("Z^4 + T + T^6", Field::Prime(2));
        assert_eq!(irreducible_test(&sn).unwrap(), Irreducibility::Yes);
        let r = irreducible_test(&plane("(Z^2 + T + 1)*(Z*T - 3)", q)).unwrap();
        assert!(matches!(r, Irreducibility::No(_)));
        assert_eq!(irreducible_test(&plane("7", q)), Err(Error::UnitPolynomial));
    }
}
