//! Sparse multivariate polynomials over a [`Field`], terms kept in
//! graded-lexicographic order with the context's variable order.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub type Exps = SmallVec<[u32; 8]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: Exps,
}

impl Monomial {
    pub fn new(exps: Exps) -> Monomial {
        let deg = exps.iter().sum();
        Monomial { deg, exps }
    }

    pub fn one(n: usize) -> Monomial {
        Monomial { deg: 0, exps: SmallVec::from_elem(0, n) }
    }

    pub fn var(n: usize, i: usize, e: u32) -> Monomial {
        let mut m = Monomial::one(n);
        m.exps[i] = e;
        m.deg = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| b - a).collect();
        Monomial { deg: other.deg - self.deg, exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.exps.iter().zip(weights).map(|(e, w)| *e as i64 * w).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct Poly {
    ctx: VarContext,
    field: Field,
    /// Ascending graded-lex order; the leading term is last.
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero(ctx: &VarContext, field: Field) -> Poly {
        Poly { ctx: ctx.clone(), field, terms: Vec::new() }
    }

    pub fn constant(ctx: &VarContext, field: Field, c: Scalar) -> Poly {
        let mut p = Poly::zero(ctx, field);
        if !field.is_zero(&c) {
            p.terms.push((Monomial::one(ctx.len()), c));
        }
        p
    }

    pub fn one(ctx: &VarContext, field: Field) -> Poly {
        Poly::constant(ctx, field, field.one())
    }

    pub fn from_i64(ctx: &VarContext, field: Field, c: i64) -> Poly {
        Poly::constant(ctx, field, field.from_i64(c))
    }

    pub fn var(ctx: &VarContext, field: Field, i: usize) -> Poly {
        Poly::monomial(ctx, field, Monomial::var(ctx.len(), i, 1), field.one())
    }

    /// Variable by name; panics if the name is absent (use for fixed contexts).
    pub fn named(ctx: &VarContext, field: Field, name: &str) -> Poly {
        let i = ctx.index_of(name).unwrap_or_else(|| panic!("no variable {name} in {ctx:?}"));
        Poly::var(ctx, field, i)
    }

    pub fn monomial(ctx: &VarContext, field: Field, m: Monomial, c: Scalar) -> Poly {
        let mut p = Poly::zero(ctx, field);
        if !field.is_zero(&c) {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I>(ctx: &VarContext, field: Field, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.exps.len(), ctx.len());
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Poly::from_map(ctx, field, acc)
    }

    fn from_map(ctx: &VarContext, field: Field, acc: HashMap<Monomial, Scalar>) -> Poly {
        let mut terms: Vec<(Monomial, Scalar)> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Poly { ctx: ctx.clone(), field, terms }
    }

    /// Terms already sorted ascending with nonzero coefficients.
    fn from_sorted(ctx: &VarContext, field: Field, terms: Vec<(Monomial, Scalar)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        Poly { ctx: ctx.clone(), field, terms }
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.field.is_one(&self.terms[0].1)
    }

    /// The constant term (zero if absent).
    pub fn constant_term(&self) -> Scalar {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.field.zero(),
        }
    }

    /// Value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.last()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.last().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.last().map(|t| t.0.deg)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exps[i]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exps[i]).min().unwrap_or(0)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|t| t.0.exps[i] > 0)
    }

    /// Indices of the variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.involves(i)).collect()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Scalar {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    fn check_same(&self, other: &Poly) {
        assert!(self.ctx == other.ctx, "polynomial context mismatch");
        assert!(self.field == other.field, "polynomial field mismatch");
    }

    pub fn compatible(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        self.check_same(other);
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { f.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { f.sub(&a[i].1, &b[j].1) } else { f.add(&a[i].1, &b[j].1) };
                    if !f.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly::from_sorted(&self.ctx, f, out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect();
        Poly::from_sorted(&self.ctx, f, terms)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let f = self.field;
        if f.is_zero(c) {
            return Poly::zero(&self.ctx, f);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect();
        Poly::from_sorted(&self.ctx, f, terms)
    }

    /// Multiplies by the monomial `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        let f = self.field;
        if f.is_zero(c) {
            return Poly::zero(&self.ctx, f);
        }
        let terms = self.terms.iter().map(|(a, b)| (a.mul(m), f.mul(b, c))).collect();
        Poly::from_sorted(&self.ctx, f, terms)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_same(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx, self.field);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let f = self.field;
        if f == Field::Rationals {
            return self.mul_rational(other);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = f.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly::from_map(&self.ctx, f, acc)
    }

    /// Product over `Q` on integer numerators scaled by a common
    /// denominator, normalizing each output coefficient once.
    fn mul_rational(&self, other: &Poly) -> Poly {
        fn integral(p: &Poly) -> (Vec<BigInt>, BigInt) {
            let ratio = |c: &Scalar| match c {
                Scalar::Rational(q) => q.clone(),
                Scalar::Modular(_) => unreachable!("modular scalar over Q"),
            };
            let den = p.terms.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(ratio(c).denom()));
            let nums = p.terms.iter().map(|(_, c)| {
                let q = ratio(c);
                q.numer() * (&den / q.denom())
            });
            (nums.collect(), den)
        }
        let (na, da) = integral(self);
        let (nb, db) = integral(other);
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for ((ma, _), a) in self.terms.iter().zip(&na) {
            for ((mb, _), b) in other.terms.iter().zip(&nb) {
                let c = a * b;
                match acc.entry(ma.mul(mb)) {
                    Entry::Occupied(mut o) => *o.get_mut() += c,
                    Entry::Vacant(v) => {
                        v.insert(c);
                    }
                }
            }
        }
        let den = da * db;
        let mut terms: Vec<(Monomial, Scalar)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Scalar::Rational(BigRational::new(c, den.clone()))))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Poly::from_sorted(&self.ctx, Field::Rationals, terms)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx, self.field);
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

    /// Makes the leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(c) => self.scale(&self.field.inv(c).unwrap()),
            None => self.clone(),
        }
    }

    /// Ring homomorphism sending variable `i` to `images[i]`; all images
    /// must share one context and this polynomial's field.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars() {
            return Err(Error::ContextMismatch);
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        for im in images {
            first.compatible(im)?;
        }
        if first.field != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), first.field.to_string()));
        }
        let tctx = first.ctx.clone();
        let mut terms: Vec<(&[u32], &Scalar)> = self.terms.iter().map(|(m, c)| (&m.exps[..], c)).collect();
        Ok(horner(&mut terms, 0, images, &tctx, self.field))
    }

    /// Replaces the listed variables and keeps the rest fixed.
    pub fn substitute_some(&self, repl: &[(usize, Poly)]) -> Result<Poly> {
        let mut images: Vec<Poly> = (0..self.nvars()).map(|i| Poly::var(&self.ctx, self.field, i)).collect();
        for (i, p) in repl {
            self.compatible(p)?;
            images[*i] = p.clone();
        }
        self.substitute(&images)
    }

    /// Evaluates variable `i` at a scalar.
    pub fn eval_var(&self, i: usize, v: &Scalar) -> Poly {
        let f = self.field;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = m.exps.clone();
            let e = m2[i];
            m2[i] = 0;
            (Monomial::new(m2), f.mul(c, &f.pow(v, e as u64)))
        });
        Poly::from_terms(&self.ctx, f, terms)
    }

    /// Re-expresses this polynomial in another context by matching variable
    /// names; every occurring variable must exist in `target`.
    pub fn to_context(&self, target: &VarContext) -> Result<Poly> {
        if *target == self.ctx {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.nvars());
        for i in 0..self.nvars() {
            match target.index_of(self.ctx.name(i)) {
                Some(j) => map.push(Some(j)),
                None if !self.involves(i) => map.push(None),
                None => return Err(Error::UnknownVariable(self.ctx.name(i).to_string())),
            }
        }
        let n = target.len();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e: Exps = SmallVec::from_elem(0, n);
            for (i, &x) in m.exps.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] += x;
                }
            }
            (Monomial::new(e), c.clone())
        });
        Ok(Poly::from_terms(target, self.field, terms))
    }

    /// Coefficients with respect to variable `i`: `self = sum_k out[k] * v_i^k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let d = self.degree_in(i) as usize;
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.exps.clone();
            let k = e[i] as usize;
            e[i] = 0;
            buckets[k].push((Monomial::new(e), c.clone()));
        }
        buckets.into_iter().map(|b| Poly::from_terms(&self.ctx, self.field, b)).collect()
    }

    /// Inverse of [`Poly::coefficients_in`].
    pub fn from_coefficients_in(ctx: &VarContext, field: Field, i: usize, coeffs: &[Poly]) -> Poly {
        let terms = coeffs.iter().enumerate().flat_map(|(k, p)| {
            p.terms.iter().map(move |(m, c)| {
                let mut e = m.exps.clone();
                e[i] += k as u32;
                (Monomial::new(e), c.clone())
            })
        });
        Poly::from_terms(ctx, field, terms)
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let f = self.field;
        let terms = self.terms.iter().filter(|t| t.0.exps[i] > 0).map(|(m, c)| {
            let mut e = m.exps.clone();
            let k = e[i];
            e[i] -= 1;
            (Monomial::new(e), f.mul(c, &f.from_i64(k as i64)))
        });
        Poly::from_terms(&self.ctx, f, terms)
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        self.terms.iter().map(|t| t.0.weighted_degree(weights)).max()
    }

    /// Highest weighted-degree homogeneous summand and its degree.
    pub fn top_form(&self, weights: &[i64]) -> Result<(i64, Poly)> {
        if weights.len() != self.nvars() {
            return Err(Error::InvalidParameters(format!("expected {} weights, got {}", self.nvars(), weights.len())));
        }
        let d = self.weighted_degree(weights).ok_or(Error::ZeroPolynomial)?;
        let terms: Vec<_> = self.terms.iter().filter(|t| t.0.weighted_degree(weights) == d).cloned().collect();
        Ok((d, Poly::from_sorted(&self.ctx, self.field, terms)))
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.total_degree() {
            None => true,
            Some(d) => self.terms.iter().all(|t| t.0.deg == d),
        }
    }

    /// Exact division: `Some(q)` with `b * q == self`, `None` if `b` does not divide.
    pub fn exact_divide(&self, b: &Poly) -> Result<Option<Poly>> {
        self.compatible(b)?;
        let (lm, lc) = b.leading_term().ok_or(Error::DivisionByZero)?.clone();
        let f = self.field;
        let lc_inv = f.inv(&lc).unwrap();
        let mut r = self.clone();
        let mut q_terms: Vec<(Monomial, Scalar)> = Vec::new();
        while let Some((rm, rc)) = r.leading_term().cloned() {
            if !lm.divides(&rm) {
                return Ok(None);
            }
            let qm = lm.quotient_of(&rm);
            let qc = f.mul(&rc, &lc_inv);
            r = r.sub(&b.mul_term(&qm, &qc));
            q_terms.push((qm, qc));
        }
        q_terms.reverse();
        Ok(Some(Poly::from_sorted(&self.ctx, f, q_terms)))
    }

    pub fn divides(&self, a: &Poly) -> Result<bool> {
        Ok(a.exact_divide(self)?.is_some())
    }

    /// Drops every term divisible by the monomial `m`.
    pub fn reduce_mod_monomial(&self, m: &Monomial) -> Poly {
        let terms = self.terms.iter().filter(|t| !m.divides(&t.0)).cloned().collect();
        Poly::from_sorted(&self.ctx, self.field, terms)
    }

    /// Largest monomial dividing every term (the zero polynomial gives 1).
    pub fn monomial_content(&self) -> Monomial {
        let n = self.nvars();
        if self.is_zero() {
            return Monomial::one(n);
        }
        let e: Exps = (0..n).map(|i| self.min_degree_in(i)).collect();
        Monomial::new(e)
    }

    /// Divides every term by the monomial `m` (which must divide each term).
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        let terms = self.terms.iter().map(|(a, c)| (m.quotient_of(a), c.clone())).collect();
        Poly::from_sorted(&self.ctx, self.field, terms)
    }

    /// Map applied to each monomial's exponent vector; used for Kronecker-type
    /// re-encodings. Terms landing on the same monomial are added.
    pub fn map_monomials<F>(&self, target: &VarContext, mut g: F) -> Poly
    where
        F: FnMut(&Monomial) -> Monomial,
    {
        let terms: Vec<_> = self.terms.iter().map(|(m, c)| (g(m), c.clone())).collect();
        Poly::from_terms(target, self.field, terms)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.ctx == other.ctx && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({} over {})", self, self.field)
    }
}

fn fmt_monomial(ctx: &VarContext, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.name(i).to_string()),
            _ => parts.push(format!("{}^{}", ctx.name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    /// Canonical text: terms in descending graded-lex order, `+`/`-`
    /// separators, unit coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field;
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { field.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if field.is_one(&abs) {
                write!(f, "{}", fmt_monomial(&self.ctx, m))?;
            } else {
                write!(f, "{}*{}", abs, fmt_monomial(&self.ctx, m))?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

/// Multivariate Horner evaluation of `terms` with variables `0..i` already
/// consumed: `sum_e images[i]^e * (coefficient of x_i^e)`.
fn horner(terms: &mut [(&[u32], &Scalar)], i: usize, images: &[Poly], ctx: &VarContext, field: Field) -> Poly {
    if i == images.len() {
        let c = terms.iter().fold(field.zero(), |acc, (_, c)| field.add(&acc, c));
        return Poly::constant(ctx, field, c);
    }
    terms.sort_by(|a, b| b.0[i].cmp(&a.0[i]));
    let mut acc = Poly::zero(ctx, field);
    let mut prev: Option<u32> = None;
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0[i];
        let mut end = start;
        while end < terms.len() && terms[end].0[i] == e {
            end += 1;
        }
        if let Some(p) = prev {
            for _ in e..p {
                acc = acc.mul(&images[i]);
            }
        }
        acc = acc.add(&horner(&mut terms[start..end], i + 1, images, ctx, field));
        prev = Some(e);
        start = end;
    }
    for _ in 0..prev.unwrap_or(0) {
        acc = acc.mul(&images[i]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zt() -> (VarContext, Field) {
        (VarContext::plane(), Field::Rationals)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(SmallVec::from_slice(&[2, 0]));
        let b = Monomial::new(SmallVec::from_slice(&[1, 1]));
        let c = Monomial::new(SmallVec::from_slice(&[0, 3]));
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn exact_division_and_failure() {
        let (ctx, k) = zt();
        let z = Poly::var(&ctx, k, 0);
        let t = Poly::var(&ctx, k, 1);
        let a = &(&z + &t) * &(&z - &t);
        assert_eq!(a.exact_divide(&(&z + &t)).unwrap().unwrap(), &z - &t);
        assert!(z.exact_divide(&t).unwrap().is_none());
        assert!(z.exact_divide(&Poly::zero(&ctx, k)).is_err());
    }

    #[test]
    fn substitution_cancels() {
        let (ctx, k) = zt();
        let z = Poly::var(&ctx, k, 0);
        let t = Poly::var(&ctx, k, 1);
        let p = &z + &t.pow(2);
        let q = p.substitute(&[&z - &t.pow(2), t.clone()]).unwrap();
        assert_eq!(q, z);
    }

    #[test]
    fn top_forms() {
        let ctx = VarContext::new(&["x", "z", "t"]).unwrap();
        let k = Field::Rationals;
        let x = Poly::var(&ctx, k, 0);
        let z = Poly::var(&ctx, k, 1);
        let t = Poly::var(&ctx, k, 2);
        let p = &z + &(&x * &t.pow(2));
        assert_eq!(p.top_form(&[-1, 0, 0]).unwrap(), (0, z.clone()));
        assert_eq!(p.top_form(&[1, 0, 0]).unwrap(), (1, &x * &t.pow(2)));
        assert!(Poly::zero(&ctx, k).top_form(&[1, 0, 0]).is_err());
    }
}
