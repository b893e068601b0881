//! The ring `A = k[X1..Xm, Y, Z, T] / (X1^r1 ... Xm^rm Y - F)` as a one-rule
//! rewriting system `X^r Y -> F`, with the Laurent embedding
//! `y -> F / X^r` as an independent equality check.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Poly};

#[derive(Debug)]
struct PresentationData {
    m: usize,
    r: Vec<u32>,
    field: Field,
    ctx: VarContext,
    big_f: Poly,
    f: Poly,
    g: Option<Poly>,
    relation: Poly,
}

/// Cheaply clonable handle to a validated presentation.
#[derive(Clone, Debug)]
pub struct Presentation(Arc<PresentationData>);

/// JSON form `{"m":..,"r":[..],"field":"Q","F":"..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub m: usize,
    pub r: Vec<u32>,
    pub field: String,
    #[serde(rename = "F")]
    pub big_f: String,
}

impl Presentation {
    /// Validates `r_i > 1`, `f != 0` and that `F` does not involve `Y`;
    /// records the structured decomposition `F = f + X1...Xm * g` when it exists.
    pub fn new(m: usize, r: &[u32], big_f: &Poly) -> Result<Presentation> {
        if m == 0 {
            return Err(Error::InvalidPresentation("m must be positive".into()));
        }
        if r.len() != m {
            return Err(Error::InvalidPresentation(format!("expected {m} exponents, got {}", r.len())));
        }
        if let Some((i, ri)) = r.iter().enumerate().find(|(_, &ri)| ri <= 1) {
            return Err(Error::InvalidPresentation(format!("r{} = {ri} must exceed 1", i + 1)));
        }
        let field = big_f.field();
        let ctx = VarContext::presentation(m);
        let big_f = big_f.to_context(&ctx)?;
        if big_f.involves(m) {
            return Err(Error::InvalidPresentation("F must not involve Y".into()));
        }
        let plane = VarContext::plane();
        let mut f = big_f.clone();
        for i in 0..m {
            f = f.eval_var(i, &field.zero());
        }
        let f = f.to_context(&plane)?;
        if f.is_zero() {
            return Err(Error::InvalidPresentation("F(0,...,0,Z,T) vanishes".into()));
        }
        let u = Poly::monomial(&ctx, field, x_product(&ctx, &vec![1; m]), field.one());
        let g = big_f.sub(&f.to_context(&ctx)?).exact_divide(&u)?;
        let xry = Poly::monomial(&ctx, field, xr_y_monomial(&ctx, m, r), field.one());
        let relation = xry.sub(&big_f);
        Ok(Presentation(Arc::new(PresentationData { m, r: r.to_vec(), field, ctx, big_f, f, g, relation })))
    }

    pub fn parse(m: usize, r: &[u32], field: Field, text: &str) -> Result<Presentation> {
        let ctx = VarContext::presentation(m);
        Presentation::new(m, r, &Poly::parse(text, &ctx, field)?)
    }

    pub fn from_spec(spec: &PresentationSpec) -> Result<Presentation> {
        let field: Field = spec.field.parse()?;
        Presentation::parse(spec.m, &spec.r, field, &spec.big_f)
    }

    pub fn from_json(text: &str) -> Result<Presentation> {
        Presentation::from_spec(&serde_json::from_str(text)?)
    }

    pub fn spec(&self) -> PresentationSpec {
        PresentationSpec {
            m: self.m(),
            r: self.r().to_vec(),
            field: self.field().to_string(),
            big_f: self.big_f().to_string(),
        }
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn r(&self) -> &[u32] {
        &self.0.r
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    /// `[X1, .., Xm, Y, Z, T]`.
    pub fn ctx(&self) -> &VarContext {
        &self.0.ctx
    }

    /// `F` in the presentation context.
    pub fn big_f(&self) -> &Poly {
        &self.0.big_f
    }

    /// `f = F(0,..,0,Z,T)` in the plane context `[Z, T]`.
    pub fn f(&self) -> &Poly {
        &self.0.f
    }

    /// `g` with `F = f + X1...Xm * g`, when such `g` exists.
    pub fn g(&self) -> Option<&Poly> {
        self.0.g.as_ref()
    }

    pub fn is_structured(&self) -> bool {
        self.0.g.is_some()
    }

    /// `G = X1^r1 ... Xm^rm Y - F`.
    pub fn relation(&self) -> &Poly {
        &self.0.relation
    }

    pub fn y_index(&self) -> usize {
        self.m()
    }

    pub fn z_index(&self) -> usize {
        self.m() + 1
    }

    pub fn t_index(&self) -> usize {
        self.m() + 2
    }

    pub fn ngens(&self) -> usize {
        self.m() + 3
    }

    /// Generator `i` of the polynomial ring as a polynomial.
    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.ctx(), self.field(), i)
    }

    /// `X1^r1 ... Xm^rm` over the given context (which must extend the
    /// presentation context).
    pub fn xr(&self, ctx: &VarContext) -> Poly {
        Poly::monomial(ctx, self.field(), x_product(ctx, self.r()), self.field().one())
    }

    /// `X1 ... Xm` over the given context.
    pub fn x_prod(&self, ctx: &VarContext) -> Poly {
        Poly::monomial(ctx, self.field(), x_product(ctx, &vec![1; self.m()]), self.field().one())
    }

    pub fn xr_monomial(&self, ctx: &VarContext) -> Monomial {
        x_product(ctx, self.r())
    }

    fn check_ctx(&self, ctx: &VarContext) -> Result<()> {
        let n = self.ngens();
        if ctx.len() < n || ctx.names()[..n] != self.ctx().names()[..] {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Exhaustively rewrites `X^r Y -> F` in a polynomial over the
    /// presentation context or any extension of it (e.g. by `U`, `V`).
    pub fn normal_form_poly(&self, p: &Poly) -> Result<Poly> {
        self.check_ctx(p.ctx())?;
        if p.field() != self.field() {
            return Err(Error::FieldMismatch(p.field().to_string(), self.field().to_string()));
        }
        let ctx = p.ctx().clone();
        let lead = xr_y_monomial(&ctx, self.m(), self.r());
        let big_f = self.big_f().to_context(&ctx)?;
        let mut cur = p.clone();
        loop {
            let mut keep = Vec::new();
            let mut quot = Vec::new();
            for (m, c) in cur.terms() {
                if lead.divides(m) {
                    quot.push((lead.quotient_of(m), c.clone()));
                } else {
                    keep.push((m.clone(), c.clone()));
                }
            }
            if quot.is_empty() {
                return Ok(cur);
            }
            let keep = Poly::from_terms(&ctx, self.field(), keep);
            let quot = Poly::from_terms(&ctx, self.field(), quot);
            cur = keep.add(&quot.mul(&big_f));
        }
    }

    /// True when no monomial is divisible by `X^r Y`.
    pub fn is_normal(&self, p: &Poly) -> bool {
        let lead = xr_y_monomial(p.ctx(), self.m(), self.r());
        p.terms().iter().all(|(m, _)| !lead.divides(m))
    }

    pub fn normal_form(&self, p: &Poly) -> Result<AElem> {
        if *p.ctx() != *self.ctx() {
            return Err(Error::ContextMismatch);
        }
        Ok(AElem { pres: self.clone(), rep: self.normal_form_poly(p)? })
    }

    pub fn elem(&self, text: &str) -> Result<AElem> {
        self.normal_form(&Poly::parse(text, self.ctx(), self.field())?)
    }

    pub fn gen(&self, i: usize) -> AElem {
        AElem { pres: self.clone(), rep: self.var(i) }
    }

    pub fn same_as(&self, other: &Presentation) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.m() == other.m() && self.r() == other.r() && self.big_f() == other.big_f())
    }
}

/// `X1^e1 ... Xm^em` in a context whose first variables are `X1..Xm`.
fn x_product(ctx: &VarContext, e: &[u32]) -> Monomial {
    let mut mono = Monomial::one(ctx.len()).exps().to_vec();
    mono[..e.len()].copy_from_slice(e);
    Monomial::new(mono.into_iter().collect())
}

fn xr_y_monomial(ctx: &VarContext, m: usize, r: &[u32]) -> Monomial {
    let mut mono = Monomial::one(ctx.len()).exps().to_vec();
    mono[..m].copy_from_slice(r);
    mono[m] = 1;
    Monomial::new(mono.into_iter().collect())
}

/// An element of `A`, stored as its normal form.
#[derive(Clone, Debug)]
pub struct AElem {
    pres: Presentation,
    rep: Poly,
}

impl AElem {
    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn check(&self, other: &AElem) -> Result<()> {
        if !self.pres.same_as(&other.pres) {
            return Err(Error::PresentationMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &AElem) -> Result<AElem> {
        self.check(other)?;
        Ok(AElem { pres: self.pres.clone(), rep: self.rep.add(&other.rep) })
    }

    pub fn sub(&self, other: &AElem) -> Result<AElem> {
        self.check(other)?;
        Ok(AElem { pres: self.pres.clone(), rep: self.rep.sub(&other.rep) })
    }

    pub fn mul(&self, other: &AElem) -> Result<AElem> {
        self.check(other)?;
        self.pres.normal_form(&self.rep.mul(&other.rep))
    }

    pub fn laurent(&self) -> Laurent {
        laurent_embed(self)
    }
}

impl fmt::Display for AElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Equality in `A` by comparing normal forms.
pub fn a_equal(a: &AElem, b: &AElem) -> Result<bool> {
    a.check(b)?;
    Ok(a.rep == b.rep)
}

/// `numer / (X1^d1 ... Xm^dm)` with no monomial factor shared by numerator
/// and denominator; numerator lives in the presentation context, `Y`-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub numer: Poly,
    pub denom: Vec<u32>,
}

impl Laurent {
    pub fn new(numer: Poly, denom: Vec<u32>) -> Laurent {
        let mut l = Laurent { numer, denom };
        l.reduce();
        l
    }

    fn reduce(&mut self) {
        if self.numer.is_zero() {
            self.denom.iter_mut().for_each(|d| *d = 0);
            return;
        }
        let n = self.numer.nvars();
        let mut cancel = Monomial::one(n).exps().to_vec();
        for (i, d) in self.denom.iter_mut().enumerate() {
            let k = (*d).min(self.numer.min_degree_in(i));
            cancel[i] = k;
            *d -= k;
        }
        self.numer = self.numer.div_monomial(&Monomial::new(cancel.into_iter().collect()));
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let denom = self.denom.iter().zip(&other.denom).map(|(a, b)| a + b).collect();
        Laurent::new(self.numer.mul(&other.numer), denom)
    }

    /// Equality by cross-multiplication (independent of the reduction).
    pub fn cross_equal(&self, other: &Laurent) -> bool {
        let ctx = self.numer.ctx();
        let one = self.numer.field().one();
        let da = x_product(ctx, &self.denom);
        let db = x_product(ctx, &other.denom);
        self.numer.mul_term(&db, &one) == other.numer.mul_term(&da, &one)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .denom
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| if d == 1 { format!("X{}", i + 1) } else { format!("X{}^{}", i + 1, d) })
            .collect();
        if parts.is_empty() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({}) / ({})", self.numer, parts.join("*"))
        }
    }
}

/// Image of an element under `A -> k[X, Z, T][X^-1]`, `y -> F / X^r`.
pub fn laurent_embed(a: &AElem) -> Laurent {
    let pres = &a.pres;
    let m = pres.m();
    let coeffs = a.rep.coefficients_in(m);
    let b = coeffs.len() as u32 - 1;
    let field = pres.field();
    let ctx = pres.ctx();
    let mut numer = Poly::zero(ctx, field);
    let mut fpow = Poly::one(ctx, field);
    for (j, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let shift: Vec<u32> = pres.r().iter().map(|r| r * (b - j as u32)).collect();
            let term = c.mul(&fpow).mul_term(&x_product(ctx, &shift), &field.one());
            numer = numer.add(&term);
        }
        fpow = fpow.mul(pres.big_f());
    }
    Laurent::new(numer, pres.r().iter().map(|r| r * b).collect())
}

/// A `k`-algebra endomorphism of `A` given by generator images.
#[derive(Clone, Debug)]
pub struct AEndo {
    pres: Presentation,
    images: Vec<AElem>,
    relation_checked: bool,
}

impl AEndo {
    pub fn identity(pres: &Presentation) -> AEndo {
        let images = (0..pres.ngens()).map(|i| pres.gen(i)).collect();
        AEndo { pres: pres.clone(), images, relation_checked: true }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn images(&self) -> &[AElem] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &AElem {
        &self.images[i]
    }

    pub fn relation_checked(&self) -> bool {
        self.relation_checked
    }

    pub fn apply_poly(&self, p: &Poly) -> Result<AElem> {
        let reps: Vec<Poly> = self.images.iter().map(|e| e.rep.clone()).collect();
        self.pres.normal_form(&p.substitute(&reps)?)
    }

    pub fn apply(&self, a: &AElem) -> Result<AElem> {
        if !a.pres.same_as(&self.pres) {
            return Err(Error::PresentationMismatch);
        }
        self.apply_poly(&a.rep)
    }
}

/// Builds an endomorphism from images of `x1..xm, y, z, t`, checking that
/// the defining relation maps to zero.
pub fn endo_from_images(pres: &Presentation, images: &[Poly]) -> Result<AEndo> {
    if images.len() != pres.ngens() {
        return Err(Error::InvalidParameters(format!("expected {} images, got {}", pres.ngens(), images.len())));
    }
    let images: Vec<AElem> = images.iter().map(|p| pres.normal_form(p)).collect::<Result<_>>()?;
    let reps: Vec<Poly> = images.iter().map(|e| e.rep.clone()).collect();
    let residue = pres.normal_form_poly(&pres.relation().substitute(&reps)?)?;
    if !residue.is_zero() {
        return Err(Error::RelationNotPreserved(residue.to_string()));
    }
    Ok(AEndo { pres: pres.clone(), images, relation_checked: true })
}

/// `phi o psi`: first `psi`, then `phi`.
pub fn compose_endo(phi: &AEndo, psi: &AEndo) -> Result<AEndo> {
    if !phi.pres.same_as(&psi.pres) {
        return Err(Error::PresentationMismatch);
    }
    let images: Vec<Poly> = psi.images.iter().map(|im| phi.apply(im).map(|e| e.rep)).collect::<Result<_>>()?;
    endo_from_images(&phi.pres, &images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(f: &str) -> Presentation {
        Presentation::parse(1, &[2], Field::Rationals, f).unwrap()
    }

    #[test]
    fn presentation_validation() {
        let a = Presentation::parse(2, &[2, 2], Field::Rationals, "Z + X1*X2*T").unwrap();
        assert_eq!(a.f().to_string(), "Z");
        assert_eq!(a.g().unwrap().to_string(), "T");
        let b = Presentation::parse(2, &[2, 2], Field::Rationals, "X1*Z + X2 + Z").unwrap();
        assert!(b.g().is_none());
        assert_eq!(b.f().to_string(), "Z");
        assert!(Presentation::parse(1, &[1], Field::Rationals, "Z").is_err());
        assert!(Presentation::parse(1, &[2], Field::Rationals, "X1*Z").is_err());
        assert!(Presentation::parse(1, &[2], Field::Rationals, "Y + Z").is_err());
    }

    #[test]
    fn rewriting_examples() {
        let a = p1("Z");
        assert_eq!(a.elem("X^3*Y^2").unwrap().to_string(), "X1*Y*Z");
        assert_eq!(a.elem("X^2*Y").unwrap().to_string(), "Z");
        assert!(a.normal_form(a.relation()).unwrap().is_zero());
        let y = laurent_embed(&a.gen(1));
        assert_eq!(y.to_string(), "(Z) / (X1^2)");
        let xy = laurent_embed(&a.elem("X*Y").unwrap());
        assert_eq!(xy.to_string(), "(Z) / (X1)");
    }

    #[test]
    fn endomorphisms() {
        let a = p1("Z");
        let scale = endo_from_images(
            &a,
            &[
                a.var(0).scale(&Field::Rationals.from_i64(2)),
                a.var(1).scale(&Field::Rationals.powi(&Field::Rationals.from_i64(2), -2).unwrap()),
                a.var(2),
                a.var(3),
            ],
        )
        .unwrap();
        let sq = compose_endo(&scale, &scale).unwrap();
        assert_eq!(sq.image(0).to_string(), "4*X1");
        let bad = endo_from_images(&a, &[a.var(2), a.var(1), a.var(2), a.var(3)]);
        assert!(matches!(bad, Err(Error::RelationNotPreserved(_))));
    }
}
