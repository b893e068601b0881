//! Ideal membership by critical-pair completion (Buchberger) under
//! graded-lex order, tracking cofactors so that positive answers carry an
//! exactly re-checkable certificate.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    /// Cofactors `c_i` with `sum c_i * g_i == target`.
    In(Vec<Poly>),
    NotIn,
    Inconclusive(String),
}

impl Membership {
    pub fn is_in(&self) -> bool {
        matches!(self, Membership::In(_))
    }
}

/// A (possibly truncated) Groebner basis whose elements remember how they
/// were built from the original generators.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    gens: Vec<Poly>,
    elems: Vec<(Poly, Vec<Poly>)>,
    /// False when some critical pair was skipped because of the degree cap.
    complete: bool,
}

pub fn default_degree_cap(polys: &[Poly]) -> u32 {
    let d = polys.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0);
    2 * d + 4
}

impl GroebnerBasis {
    pub fn new(gens: &[Poly], degree_cap: Option<u32>) -> Result<GroebnerBasis> {
        let first = gens.first().ok_or_else(|| Error::Precondition("empty generator list".into()))?;
        for g in gens {
            first.compatible(g)?;
        }
        let maxdeg = gens.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0);
        let cap = degree_cap.unwrap_or_else(|| default_degree_cap(gens));
        if cap < maxdeg {
            return Err(Error::Precondition(format!("degree cap {cap} below input degree {maxdeg}")));
        }
        let ctx = first.ctx().clone();
        let field = first.field();
        let s = gens.len();
        let zero = Poly::zero(&ctx, field);
        let mut gb = GroebnerBasis { gens: gens.to_vec(), elems: Vec::new(), complete: true };
        for (i, g) in gens.iter().enumerate() {
            let mut cof = vec![zero.clone(); s];
            cof[i] = Poly::one(&ctx, field);
            let (r, c) = gb.reduce_with(g, cof);
            if !r.is_zero() {
                gb.push(r, c);
            }
        }
        // pairs ordered by lcm degree (normal strategy)
        let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
        for j in 0..gb.elems.len() {
            for i in 0..j {
                gb.queue_pair(&mut pairs, i, j);
            }
        }
        while let Some((deg, i, j)) = pairs.pop_first() {
            if deg > cap {
                gb.complete = false;
                continue;
            }
            let (sp, sc) = gb.s_poly(i, j);
            let (r, c) = gb.reduce_with(&sp, sc);
            if !r.is_zero() {
                gb.push(r, c);
                let n = gb.elems.len() - 1;
                for k in 0..n {
                    gb.queue_pair(&mut pairs, k, n);
                }
            }
        }
        Ok(gb)
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn elements(&self) -> impl Iterator<Item = &Poly> {
        self.elems.iter().map(|e| &e.0)
    }

    fn push(&mut self, p: Poly, cof: Vec<Poly>) {
        let inv = p.field().inv(p.leading_coeff().unwrap()).unwrap();
        let cof = cof.iter().map(|c| c.scale(&inv)).collect();
        self.elems.push((p.scale(&inv), cof));
    }

    fn queue_pair(&self, pairs: &mut BTreeSet<(u32, usize, usize)>, i: usize, j: usize) {
        let a = &self.elems[i].0.leading_term().unwrap().0;
        let b = &self.elems[j].0.leading_term().unwrap().0;
        let l = a.lcm(b);
        // coprime leading monomials: the S-polynomial reduces to zero
        if l.degree() == a.degree() + b.degree() {
            return;
        }
        pairs.insert((l.degree(), i, j));
    }

    fn s_poly(&self, i: usize, j: usize) -> (Poly, Vec<Poly>) {
        let (fi, ci) = &self.elems[i];
        let (fj, cj) = &self.elems[j];
        let field = fi.field();
        let one = field.one();
        let mi = &fi.leading_term().unwrap().0;
        let mj = &fj.leading_term().unwrap().0;
        let l = mi.lcm(mj);
        let ui = mi.quotient_of(&l);
        let uj = mj.quotient_of(&l);
        let sp = fi.mul_term(&ui, &one).sub(&fj.mul_term(&uj, &one));
        let sc = ci.iter().zip(cj).map(|(a, b)| a.mul_term(&ui, &one).sub(&b.mul_term(&uj, &one))).collect();
        (sp, sc)
    }

    /// Fully reduces `p` (whose expression in the generators is `cof`);
    /// returns the remainder and the updated expression of that remainder.
    fn reduce_with(&self, p: &Poly, mut cof: Vec<Poly>) -> (Poly, Vec<Poly>) {
        let field = p.field();
        let mut rest = p.clone();
        let mut rem_terms = Vec::new();
        while let Some((m, c)) = rest.leading_term().cloned() {
            let hit = self.elems.iter().find(|(b, _)| b.leading_term().unwrap().0.divides(&m));
            match hit {
                Some((b, bc)) => {
                    let q = b.leading_term().unwrap().0.quotient_of(&m);
                    // basis elements are monic
                    rest = rest.sub(&b.mul_term(&q, &c));
                    for (k, x) in cof.iter_mut().enumerate() {
                        *x = x.sub(&bc[k].mul_term(&q, &c));
                    }
                }
                None => {
                    rem_terms.push((m.clone(), c.clone()));
                    rest = rest.sub(&Poly::monomial(p.ctx(), field, m, c));
                }
            }
        }
        (Poly::from_terms(p.ctx(), field, rem_terms), cof)
    }

    /// Normal form of `target` and cofactors with
    /// `target - remainder == sum cof_i * g_i`.
    pub fn reduce(&self, target: &Poly) -> (Poly, Vec<Poly>) {
        let zero = Poly::zero(target.ctx(), target.field());
        let (r, cof) = self.reduce_with(target, vec![zero; self.gens.len()]);
        // reduce_with tracks p - (removed multiples); flip the sign
        (r, cof.iter().map(|c| c.neg()).collect())
    }

    pub fn membership(&self, target: &Poly) -> Result<Membership> {
        if let Some(g) = self.gens.first() {
            g.compatible(target)?;
        }
        let (r, cof) = self.reduce(target);
        if r.is_zero() {
            let check = cof
                .iter()
                .zip(&self.gens)
                .fold(Poly::zero(target.ctx(), target.field()), |acc, (c, g)| acc.add(&c.mul(g)));
            if check != *target {
                return Err(Error::Internal("membership cofactors do not recombine".into()));
            }
            Ok(Membership::In(cof))
        } else if self.complete {
            Ok(Membership::NotIn)
        } else {
            Ok(Membership::Inconclusive(format!("completion truncated by degree cap; remainder {r}")))
        }
    }
}

/// Decides `target in (gens)`.
pub fn ideal_membership(target: &Poly, gens: &[Poly], degree_cap: Option<u32>) -> Result<Membership> {
    GroebnerBasis::new(gens, degree_cap)?.membership(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VarContext;
    use crate::field::Field;

    #[test]
    fn small_memberships() {
        let ctx = VarContext::new(&["X", "Z", "T"]).unwrap();
        let q = Field::Rationals;
        let p = |s: &str| Poly::parse(s, &ctx, q).unwrap();
        let gens = [p("X^2"), p("Z")];
        match ideal_membership(&p("Z"), &gens, None).unwrap() {
            Membership::In(c) => assert_eq!(c, vec![p("0"), p("1")]),
            other => panic!("{other:?}"),
        }
        assert_eq!(ideal_membership(&p("X"), &gens, None).unwrap(), Membership::NotIn);
        assert!(ideal_membership(&p("X^2*T + 3*Z*T^2"), &gens, None).unwrap().is_in());
        assert!(ideal_membership(&p("X"), &[], None).is_err());
    }

    #[test]
    fn needs_s_polynomials() {
        let ctx = VarContext::new(&["X", "Y"]).unwrap();
        let q = Field::Rationals;
        let p = |s: &str| Poly::parse(s, &ctx, q).unwrap();
        let gens = [p("X*Y - 1"), p("X^2 - Y")];
        assert!(ideal_membership(&p("Y^3 - 1"), &gens, None).unwrap().is_in());
        assert_eq!(ideal_membership(&p("Y - 1"), &gens, None).unwrap(), Membership::NotIn);
    }
}
