//! Exponential maps `A -> A[U]`: the two translation maps along `t` and `z`,
//! symbolic axiom checks, and the one-sided invariant inclusions they witness.

use serde_json::{json, Map, Value};

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quotient::{AElem, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomStatus {
    Unverified,
    Verified,
}

/// `phi: A -> A[U]` given by normal-formed images of `x1..xm, y, z, t`.
#[derive(Clone, Debug)]
pub struct ExpMap {
    pres: Presentation,
    ctx: VarContext,
    images: Vec<Poly>,
    status: AxiomStatus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    /// `phi` followed by `U = 0` is the identity on generators.
    pub counit: bool,
    /// `phi_V(phi_U(g)) = phi_(U+V)(g)` on generators, in `A[U, V]`.
    pub coassociative: bool,
    pub relation_preserved: bool,
    pub residue: Option<String>,
    pub status: AxiomStatus,
}

/// Both sides of each axiom are algebra maps, so generators suffice.
pub const GENERATOR_CHECK_NOTE: &str =
    "axioms checked on generators; both sides are k-algebra homomorphisms determined by generator images";

impl ExpMap {
    /// Normal-forms the images; the status starts `Unverified`.
    pub fn new(pres: &Presentation, images: &[Poly]) -> Result<ExpMap> {
        let ctx = u_context(pres);
        if images.len() != pres.ngens() {
            return Err(Error::InvalidParameters(format!("expected {} images, got {}", pres.ngens(), images.len())));
        }
        let images = images.iter().map(|p| pres.normal_form_poly(&p.to_context(&ctx)?)).collect::<Result<_>>()?;
        Ok(ExpMap { pres: pres.clone(), ctx, images, status: AxiomStatus::Unverified })
    }

    pub fn trivial(pres: &Presentation) -> ExpMap {
        let ctx = u_context(pres);
        let images = (0..pres.ngens()).map(|i| Poly::var(&ctx, pres.field(), i)).collect();
        ExpMap { pres: pres.clone(), ctx, images, status: AxiomStatus::Unverified }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    /// Context of the images: the presentation variables followed by `U`.
    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn status(&self) -> AxiomStatus {
        self.status
    }

    /// True when some generator image involves `U`.
    pub fn is_nontrivial(&self) -> bool {
        let u = self.pres.ngens();
        self.images.iter().any(|p| p.involves(u))
    }

    /// Runs [`exp_verify`] and records the outcome.
    pub fn verify(&mut self) -> Result<AxiomReport> {
        let report = exp_verify(self)?;
        self.status = report.status;
        Ok(report)
    }

    /// `phi(a)` in normal form in `A[U]`.
    pub fn apply(&self, a: &AElem) -> Result<Poly> {
        if !a.presentation().same_as(&self.pres) {
            return Err(Error::PresentationMismatch);
        }
        let mut subs = self.images.clone();
        subs.push(Poly::var(&self.ctx, self.pres.field(), self.pres.ngens()));
        self.pres.normal_form_poly(&a.rep().to_context(&self.ctx)?.substitute(&subs)?)
    }

    pub fn fixes(&self, a: &AElem) -> Result<bool> {
        Ok(self.apply(a)? == a.rep().to_context(&self.ctx)?)
    }

    pub fn to_json(&self) -> Value {
        let mut images = Map::new();
        for (i, p) in self.images.iter().enumerate() {
            images.insert(self.pres.ctx().name(i).to_lowercase(), json!(p.to_string()));
        }
        json!({ "images": images, "indeterminate": "U" })
    }

    pub fn from_json(pres: &Presentation, v: &Value) -> Result<ExpMap> {
        let u = v.get("indeterminate").and_then(Value::as_str).unwrap_or("U");
        if u != "U" {
            return Err(Error::Json(format!("unsupported indeterminate `{u}` (expected U)")));
        }
        let obj = v
            .get("images")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Json("exponential map needs an `images` object".into()))?;
        let ctx = u_context(pres);
        let images = (0..pres.ngens())
            .map(|i| {
                let name = pres.ctx().name(i);
                match obj.get(&name.to_lowercase()).or_else(|| obj.get(name)) {
                    Some(Value::String(s)) => Poly::parse(s, &ctx, pres.field()),
                    None => Ok(Poly::var(&ctx, pres.field(), i)),
                    Some(other) => Err(Error::Json(format!("image of {name} must be a string, got {other}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        ExpMap::new(pres, &images)
    }
}

fn u_context(pres: &Presentation) -> VarContext {
    pres.ctx().extended(&["U"]).expect("U is not a presentation variable")
}

/// Checks the counit and coassociativity axioms symbolically, plus that the
/// defining relation is sent to zero.
pub fn exp_verify(phi: &ExpMap) -> Result<AxiomReport> {
    let pres = &phi.pres;
    let field = pres.field();
    let n = pres.ngens();
    let uv = pres.ctx().extended(&["U", "V"])?;
    let (u, v) = (Poly::var(&uv, field, n), Poly::var(&uv, field, n + 1));
    let img_u: Vec<Poly> = phi.images.iter().map(|p| p.to_context(&uv)).collect::<Result<_>>()?;
    let img_v: Vec<Poly> = img_u.iter().map(|p| p.substitute_some(&[(n, v.clone())])).collect::<Result<_>>()?;
    let mut outer = img_v.clone();
    outer.push(u.clone());
    outer.push(v.clone());
    let zero = field.zero();

    let mut counit = true;
    let mut coassociative = true;
    for (i, p) in img_u.iter().enumerate() {
        let at_zero = pres.normal_form_poly(&p.eval_var(n, &zero))?;
        counit &= at_zero == Poly::var(&uv, field, i);
        let lhs = pres.normal_form_poly(&p.substitute(&outer)?)?;
        let rhs = pres.normal_form_poly(&p.substitute_some(&[(n, u.add(&v))])?)?;
        coassociative &= lhs == rhs;
    }
    let mut subs = phi.images.clone();
    subs.push(Poly::var(&phi.ctx, field, n));
    let residue = pres.normal_form_poly(&pres.relation().to_context(&phi.ctx)?.substitute(&subs)?)?;
    let relation_preserved = residue.is_zero();
    let status =
        if counit && coassociative && relation_preserved { AxiomStatus::Verified } else { AxiomStatus::Unverified };
    Ok(AxiomReport {
        counit,
        coassociative,
        relation_preserved,
        residue: (!relation_preserved).then(|| residue.to_string()),
        status,
    })
}

/// Translation along `var` (`t` or `z`) by `x^r U`, with the induced image of `y`.
fn build_translation(pres: &Presentation, var: usize) -> Result<ExpMap> {
    let ctx = u_context(pres);
    let field = pres.field();
    let n = pres.ngens();
    let step = pres.xr(&ctx).mul(&Poly::var(&ctx, field, n));
    let big_f = pres.big_f().to_context(&ctx)?;
    let moved = Poly::var(&ctx, field, var).add(&step);
    let diff = big_f.substitute_some(&[(var, moved.clone())])?.sub(&big_f);
    let shift = diff
        .exact_divide(&pres.xr(&ctx))?
        .ok_or_else(|| Error::Internal("F(.., var + x^r U) - F is not divisible by x^r".into()))?;
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(&ctx, field, i)).collect();
    images[pres.y_index()] = images[pres.y_index()].add(&shift);
    images[var] = moved;
    let mut phi = ExpMap::new(pres, &images)?;
    let report = phi.verify()?;
    if report.status != AxiomStatus::Verified {
        return Err(Error::Internal(format!("translation map failed its axioms: {report:?}")));
    }
    Ok(phi)
}

/// `t -> t + x^r U`, `y -> y + (F(x, z, t + x^r U) - F) / x^r`, fixing `x_i, z`.
pub fn build_phi1(pres: &Presentation) -> Result<ExpMap> {
    build_translation(pres, pres.t_index())
}

/// `z -> z + x^r U`, `y -> y + (F(x, z + x^r U, t) - F) / x^r`, fixing `x_i, t`.
pub fn build_phi2(pres: &Presentation) -> Result<ExpMap> {
    build_translation(pres, pres.z_index())
}

/// A verified map together with generators it fixes.
#[derive(Clone, Debug)]
pub struct InvariantWitness {
    pub map: ExpMap,
    pub fixed: Vec<AElem>,
}

impl InvariantWitness {
    pub fn verify(&self) -> Result<bool> {
        if self.map.status != AxiomStatus::Verified || !self.map.is_nontrivial() {
            return Ok(false);
        }
        for b in &self.fixed {
            if !self.map.fixes(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "map": self.map.to_json(),
            "fixed": self.fixed.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct DkWitness {
    /// Fixes `x_1..x_m, z`.
    pub phi1: InvariantWitness,
    /// Fixes `x_1..x_m, t`.
    pub phi2: InvariantWitness,
    pub flags: Vec<String>,
}

impl DkWitness {
    pub fn verify(&self) -> Result<bool> {
        Ok(self.phi1.verify()? && self.phi2.verify()?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "phi1": self.phi1.to_json(),
            "phi2": self.phi2.to_json(),
            "conclusion": "k[x_1..x_m, z, t] is contained in DK(A)",
            "flags": self.flags,
        })
    }
}

fn unit_flag(pres: &Presentation) -> Option<String> {
    pres.f().is_constant().then(|| "f is a nonzero constant: every x_i is a unit of A".to_string())
}

/// The two translation maps with their fixed generators, showing that
/// `B = k[x_1..x_m, z, t]` lies in the Derksen invariant.
pub fn dk_witness(pres: &Presentation) -> Result<DkWitness> {
    let phi1 = build_phi1(pres)?;
    let phi2 = build_phi2(pres)?;
    if !phi1.is_nontrivial() || !phi2.is_nontrivial() {
        return Err(Error::Precondition("degenerate presentation: a translation map is trivial".into()));
    }
    let xs = (0..pres.m()).map(|i| pres.gen(i));
    let fixed1 = xs.clone().chain([pres.gen(pres.z_index())]).collect();
    let fixed2 = xs.chain([pres.gen(pres.t_index())]).collect();
    let w = DkWitness {
        phi1: InvariantWitness { map: phi1, fixed: fixed1 },
        phi2: InvariantWitness { map: phi2, fixed: fixed2 },
        flags: unit_flag(pres).into_iter().collect(),
    };
    if !w.verify()? {
        return Err(Error::Internal("fixed-generator claims failed re-verification".into()));
    }
    Ok(w)
}

#[derive(Clone, Debug)]
pub struct MlReport {
    pub hypotheses: Vec<(String, bool)>,
    /// Present when every hypothesis holds.
    pub conclusion: Option<String>,
    pub evidence: Option<DkWitness>,
}

impl MlReport {
    pub fn holds(&self) -> bool {
        self.conclusion.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "hypotheses": self.hypotheses.iter().map(|(h, ok)| json!({"hypothesis": h, "holds": ok})).collect::<Vec<_>>(),
            "conclusion": self.conclusion,
            "evidence": self.evidence.as_ref().map(DkWitness::to_json),
        })
    }
}

/// Upper bound `ML(A) ⊆ k[x_1..x_m]`: the intersection of the invariant rings
/// of the two translation maps, valid when `F` involves `Z` or `T` and the
/// `x_i` are not units.
pub fn ml_upper_report(pres: &Presentation) -> Result<MlReport> {
    let big_f = pres.big_f();
    let involves_zt = big_f.involves(pres.z_index()) || big_f.involves(pres.t_index());
    let non_unit = !pres.f().is_constant();
    let hypotheses = vec![
        ("F is not in k[X_1..X_m]".to_string(), involves_zt),
        ("f is not a nonzero constant, so no x_i is a unit".to_string(), non_unit),
    ];
    if !(involves_zt && non_unit) {
        return Ok(MlReport { hypotheses, conclusion: None, evidence: None });
    }
    let evidence = dk_witness(pres)?;
    Ok(MlReport { hypotheses, conclusion: Some("ML(A) is contained in k[x_1..x_m]".into()), evidence: Some(evidence) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn pres(m: usize, r: &[u32], f: &str) -> Presentation {
        Presentation::parse(m, r, Field::Rationals, f).unwrap()
    }

    #[test]
    fn translation_images() {
        let p = pres(1, &[2], "Z + X1*T^2");
        let phi1 = build_phi1(&p).unwrap();
        let ctx = phi1.ctx().clone();
        let expect = Poly::parse("Y + U*X1*(2*T + X1^2*U)", &ctx, Field::Rationals).unwrap();
        assert_eq!(phi1.images()[1], expect);
        assert_eq!(phi1.status(), AxiomStatus::Verified);
        let phi2 = build_phi2(&pres(1, &[2], "Z")).unwrap();
        assert_eq!(phi2.images()[1], Poly::parse("Y + U", &ctx, Field::Rationals).unwrap());
        let phi1 = build_phi1(&pres(1, &[2], "Z")).unwrap();
        assert_eq!(phi1.images()[1], Poly::parse("Y", &ctx, Field::Rationals).unwrap());
    }

    #[test]
    fn broken_map_is_unverified() {
        let p = pres(1, &[2], "Z + X1*T^2");
        let mut phi = ExpMap::trivial(&p);
        assert_eq!(phi.verify().unwrap().status, AxiomStatus::Verified);
        let ctx = phi.ctx().clone();
        let mut images: Vec<Poly> = phi.images().to_vec();
        images[3] = Poly::parse("T + U", &ctx, Field::Rationals).unwrap();
        let bad = ExpMap::new(&p, &images).unwrap();
        let report = exp_verify(&bad).unwrap();
        assert_eq!(report.status, AxiomStatus::Unverified);
        assert!(!report.relation_preserved);
        assert!(report.residue.is_some());
    }

    #[test]
    fn witnesses_and_json() {
        let p = pres(2, &[2, 2], "Z + X1*X2*T");
        let w = dk_witness(&p).unwrap();
        assert!(w.verify().unwrap());
        assert!(ml_upper_report(&p).unwrap().holds());
        let unit = pres(1, &[2], "1");
        let r = ml_upper_report(&unit).unwrap();
        assert!(!r.holds());
        let phi = build_phi1(&p).unwrap();
        let back = ExpMap::from_json(&p, &phi.to_json()).unwrap();
        assert_eq!(back.images(), phi.images());
    }
}
