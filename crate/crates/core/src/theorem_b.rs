//! Deciding whether the hypersurface `G = X^r Y - F` is a coordinate of
//! `k[X_1..X_m, Y, Z, T]` for structured `F = f(Z,T) + X_1...X_m g`, with
//! explicit, re-verified coordinate systems on the positive side.

use serde_json::{json, Value};

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{express_in, jacobian_determinant, Preimages};
use crate::plane::{coordinate_decide, CoordinateCertificate, StuckReason, REDUCTION_ASSUMPTION};
use crate::poly::Poly;
use crate::quotient::{AElem, Presentation};

/// Largest number of unknown coefficients the linear-solve verifier sets up.
pub const MAX_UNKNOWNS: usize = 4000;
pub const DEFAULT_MATE_ROUNDS: u32 = 32;

/// `m + 3` polynomials meant to generate `k[X_1..X_m, Y, Z, T]`, one of them `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateSystem {
    pub polys: Vec<Poly>,
    pub relation: Poly,
    /// For each variable, an expression in `S1..S(m+3)` that evaluates back
    /// to it at `polys`.
    pub inverse_expressions: Option<Vec<Poly>>,
    /// Optional factorization of `inverse_expressions` into maps on the
    /// symbols, applied first to last; lets the verifier evaluate stage by
    /// stage instead of expanding the composite.
    pub inverse_stages: Option<Vec<Vec<Poly>>>,
    pub verified: bool,
}

impl CoordinateSystem {
    pub fn to_json(&self) -> Value {
        let ctx = self.relation.ctx();
        json!({
            "polys": self.polys.iter().map(Poly::to_string).collect::<Vec<_>>(),
            "relation": self.relation.to_string(),
            "inverse_expressions": self.inverse_expressions.as_ref().map(|e| {
                e.iter().enumerate().map(|(i, p)| json!({"var": ctx.name(i), "expr": p.to_string()})).collect::<Vec<_>>()
            }),
            "inverse_stages": self.inverse_stages.as_ref().map(|st| {
                st.iter().map(|m| m.iter().map(Poly::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()
            }),
            "verified": self.verified,
        })
    }

    /// Reads the JSON form back for a presentation with `m` of the `X_i`.
    /// The `verified` flag is reset: a parsed system must be checked again.
    pub fn from_json(v: &Value, m: usize, field: Field) -> Result<CoordinateSystem> {
        let ctx = VarContext::presentation(m);
        let sym = VarContext::symbols(m + 3);
        let text = |v: &Value| -> Result<String> {
            v.as_str().map(str::to_string).ok_or_else(|| Error::Json(format!("expected a polynomial string, got {v}")))
        };
        let list = |v: &Value, ctx: &VarContext| -> Result<Vec<Poly>> {
            v.as_array()
                .ok_or_else(|| Error::Json(format!("expected an array, got {v}")))?
                .iter()
                .map(|p| Poly::parse(&text(p)?, ctx, field))
                .collect()
        };
        let polys = list(v.get("polys").unwrap_or(&Value::Null), &ctx)?;
        let relation = Poly::parse(&text(v.get("relation").unwrap_or(&Value::Null))?, &ctx, field)?;
        let inverse_expressions = match v.get("inverse_expressions") {
            None | Some(Value::Null) => None,
            Some(Value::Array(items)) => Some(
                items
                    .iter()
                    .map(|it| Poly::parse(&text(it.get("expr").unwrap_or(&Value::Null))?, &sym, field))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(other) => return Err(Error::Json(format!("bad inverse_expressions: {other}"))),
        };
        let inverse_stages = match v.get("inverse_stages") {
            None | Some(Value::Null) => None,
            Some(Value::Array(maps)) => Some(maps.iter().map(|m| list(m, &sym)).collect::<Result<Vec<_>>>()?),
            Some(other) => return Err(Error::Json(format!("bad inverse_stages: {other}"))),
        };
        Ok(CoordinateSystem { polys, relation, inverse_expressions, inverse_stages, verified: false })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SystemCheck {
    /// Expressions recovering every variable, confirmed by substitution.
    Verified(Vec<Poly>),
    /// The Jacobian determinant is not a nonzero constant.
    Failed(String),
    Inconclusive(String),
}

fn apply_map(map: &[Poly], at: &[Poly]) -> Result<Vec<Poly>> {
    map.iter().map(|e| e.substitute(at)).collect()
}

fn is_identity(values: &[Poly]) -> bool {
    values.iter().enumerate().all(|(i, v)| *v == Poly::var(v.ctx(), v.field(), i))
}

fn resubstitutes(polys: &[Poly], exprs: &[Poly], stages: Option<&[Vec<Poly>]>) -> Result<bool> {
    let Some(stages) = stages.filter(|st| !st.is_empty() && st.iter().all(|m| m.len() == exprs.len())) else {
        return Ok(is_identity(&apply_map(exprs, polys)?));
    };
    let mut composite = stages[0].clone();
    for map in &stages[1..] {
        composite = apply_map(map, &composite)?;
    }
    if composite != exprs {
        return Ok(false);
    }
    let mut values = polys.to_vec();
    for map in stages {
        values = apply_map(map, &values)?;
    }
    Ok(is_identity(&values))
}

/// Checks that `candidate.polys` generate the polynomial ring. Supplied
/// inverse expressions are confirmed by substitution; otherwise each
/// variable is solved for as a linear combination of monomials in the
/// candidates, degree by degree up to `degree_cap` (default
/// `max(deg)^2 + 4`).
pub fn verify_coordinate_system(candidate: &CoordinateSystem, degree_cap: Option<u32>) -> Result<SystemCheck> {
    let polys = &candidate.polys;
    let n = candidate.relation.nvars();
    if polys.len() != n {
        return Err(Error::Precondition(format!("expected {n} polynomials, got {}", polys.len())));
    }
    if !polys.contains(&candidate.relation) {
        return Err(Error::Precondition("the relation G must be one of the candidate polynomials".into()));
    }
    for p in polys {
        p.compatible(&candidate.relation)?;
    }
    if let Some(exprs) = &candidate.inverse_expressions {
        if exprs.len() == n && resubstitutes(polys, exprs, candidate.inverse_stages.as_deref())? {
            return Ok(SystemCheck::Verified(exprs.clone()));
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let jac = jacobian_determinant(polys, &all);
    if jac.as_constant().is_none_or(|c| jac.field().is_zero(&c)) {
        return Ok(SystemCheck::Failed(format!("Jacobian determinant {jac} is not a nonzero constant")));
    }
    let maxdeg = polys.iter().filter_map(Poly::total_degree).max().unwrap_or(1);
    let cap = degree_cap.unwrap_or(maxdeg * maxdeg + 4);
    let ctx = candidate.relation.ctx();
    let vars: Vec<Poly> = (0..n).map(|i| Poly::var(ctx, candidate.relation.field(), i)).collect();
    Ok(match express_in(&vars, polys, cap, MAX_UNKNOWNS)? {
        Preimages::Found(exprs) => SystemCheck::Verified(exprs),
        Preimages::Missing(idx) => {
            let names: Vec<&str> = idx.iter().map(|&i| ctx.name(i)).collect();
            SystemCheck::Inconclusive(format!("no expression for {} up to degree {cap}", names.join(", ")))
        }
        Preimages::TooLarge(d) => {
            SystemCheck::Inconclusive(format!("linear system at degree {d} exceeds {MAX_UNKNOWNS} unknowns"))
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MateCase {
    /// `c` does not involve `Z`: `W = Y`.
    ZFree,
    /// `c` is linear in `Z`: Bezout identity `c_1 a' + X^r b' = 1`.
    Bezout,
    /// Compositional inverse of `c` in `Z` modulo `X^r`.
    Inverse,
}

/// Mate `W` of the normalized relation `G' = X^r Y - c`, with `Y` and `Z`
/// written in the symbols `S1..Sm` (for `X`), `S(m+1)` (for `G'`),
/// `S(m+2)` (for `W`), `S(m+3)` (for `T`).
#[derive(Clone, Debug, PartialEq)]
pub struct MateWitness {
    pub case: MateCase,
    pub w: Poly,
    pub expr_y: Poly,
    pub expr_z: Poly,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MateOutcome {
    Mate(MateWitness),
    Inconclusive(String),
}

/// Builds a mate for a presentation whose `f` is `Z`.
pub fn construct_mate(norm: &Presentation, max_rounds: u32) -> Result<MateOutcome> {
    let field = norm.field();
    let ctx = norm.ctx();
    let m = norm.m();
    let zi = norm.z_index();
    if *norm.f() != Poly::var(&VarContext::plane(), field, 0) {
        return Err(Error::Precondition("normalized relation needs c(0, Z, T) = Z".into()));
    }
    let c = norm.big_f().clone();
    let g_rel = norm.relation().clone();
    let xr = norm.xr(ctx);
    let y = norm.var(norm.y_index());
    let z = norm.var(zi);

    let sym = VarContext::symbols(m + 3);
    let s = |i: usize| Poly::var(&sym, field, i);
    let (s_g, s_w, s_t) = (s(m), s(m + 1), s(m + 2));
    // rewrite a Y-free polynomial in X, Z, T into symbols, with Z -> zexpr
    let into = |p: &Poly, zexpr: &Poly| -> Result<Poly> {
        let mut imgs: Vec<Poly> = (0..m).map(s).collect();
        imgs.push(Poly::zero(&sym, field));
        imgs.push(zexpr.clone());
        imgs.push(s_t.clone());
        p.substitute(&imgs)
    };
    let zero_s = Poly::zero(&sym, field);
    let xr_s = into(&xr, &zero_s)?;
    let exact = |a: &Poly, b: &Poly, what: &str| -> Result<Poly> {
        a.exact_divide(b)?.ok_or_else(|| Error::Internal(format!("{what} is not exactly divisible")))
    };

    let witness = match c.degree_in(zi) {
        0 => unreachable!("c(0, Z, T) = Z involves Z"),
        1 if c.sub(&z).degree_in(zi) == 0 => {
            let c0 = c.sub(&z);
            MateWitness {
                case: MateCase::ZFree,
                w: y,
                expr_y: s_w.clone(),
                expr_z: xr_s.mul(&s_w).sub(&into(&c0, &zero_s)?).sub(&s_g),
            }
        }
        1 => {
            let coeffs = c.coefficients_in(zi);
            let (c0, c1) = (coeffs[0].clone(), coeffs[1].clone());
            let us = c1.sub(&Poly::one(ctx, field));
            let big_n = *norm.r().iter().max().unwrap();
            let mut a = Poly::zero(ctx, field);
            let mut term = Poly::one(ctx, field);
            for _ in 0..big_n {
                a = a.add(&term);
                term = term.mul(&us.neg());
            }
            let b = exact(&Poly::one(ctx, field).sub(&c1.mul(&a)), &xr, "1 - c1*a'")?;
            let w = b.mul(&z).add(&a.mul(&y));
            let (a_s, b_s) = (into(&a, &zero_s)?, into(&b, &zero_s)?);
            let (c0_s, c1_s) = (into(&c0, &zero_s)?, into(&c1, &zero_s)?);
            let gc = s_g.add(&c0_s);
            MateWitness {
                case: MateCase::Bezout,
                w,
                expr_y: b_s.mul(&gc).add(&c1_s.mul(&s_w)),
                expr_z: xr_s.mul(&s_w).sub(&a_s.mul(&gc)),
            }
        }
        _ => {
            let rounds = *norm.r().iter().max().unwrap();
            if rounds > max_rounds {
                return Ok(MateOutcome::Inconclusive(format!(
                    "inverse of c modulo X^r needs {rounds} rounds, cap is {max_rounds}"
                )));
            }
            let xr_mono = norm.xr_monomial(ctx);
            let rest = c.sub(&z);
            // beta(Z) with c(beta(Z)) = Z mod X^r; each round gains a factor X1...Xm
            let residue = |beta: &Poly| -> Result<Poly> {
                Ok(c.substitute_some(&[(zi, beta.clone())])?.sub(&z).reduce_mod_monomial(&xr_mono))
            };
            let mut beta = z.clone();
            let mut check = residue(&beta)?;
            for _ in 0..rounds {
                if check.is_zero() {
                    break;
                }
                beta = z.sub(&rest.substitute_some(&[(zi, beta.clone())])?).reduce_mod_monomial(&xr_mono);
                check = residue(&beta)?;
            }
            if !check.is_zero() {
                return Ok(MateOutcome::Inconclusive(format!("inverse of c did not stabilize: residue {check}")));
            }
            let w = exact(&z.sub(&beta.substitute_some(&[(zi, g_rel.neg())])?), &xr, "Z - beta(-G')")?;
            let expr_z = into(&beta, &s_g.neg())?.add(&xr_s.mul(&s_w));
            let expr_y = exact(&s_g.add(&into(&c, &expr_z)?), &xr_s, "G' + c(Z)")?;
            MateWitness { case: MateCase::Inverse, w, expr_y, expr_z }
        }
    };
    Ok(MateOutcome::Mate(witness))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub degree_bound: Option<u32>,
    pub mate_rounds: u32,
    pub verify_degree_cap: Option<u32>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { degree_bound: None, mate_rounds: DEFAULT_MATE_ROUNDS, verify_degree_cap: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StatementsVerdict {
    /// `G` is a coordinate; the coordinate system is attached and verified.
    Established,
    /// `f` is not a coordinate of `k[Z, T]`, so `G` is not a coordinate.
    Refuted,
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct TheoremBReport {
    pub statement_v: CoordinateCertificate,
    pub statements: StatementsVerdict,
    pub witness: Option<CoordinateSystem>,
    /// `(u, v)` with `A = k[x_1..x_m][u, v]`.
    pub a_witness: Option<(AElem, AElem)>,
    pub mate_case: Option<MateCase>,
    pub flags: Vec<String>,
}

impl TheoremBReport {
    pub fn to_json(&self) -> Value {
        let label = match &self.statements {
            StatementsVerdict::Established => json!("established"),
            StatementsVerdict::Refuted => json!("refuted"),
            StatementsVerdict::Inconclusive(why) => json!({"inconclusive": why}),
        };
        json!({
            "statement_v": self.statement_v.to_json(),
            "statements_i_to_iv": label,
            "witness": self.witness.as_ref().map(CoordinateSystem::to_json),
            "a_witness": self.a_witness.as_ref().map(|(u, v)| json!({"u": u.to_string(), "v": v.to_string()})),
            "mate_case": self.mate_case.map(|c| format!("{c:?}")),
            "flags": self.flags,
        })
    }
}

/// Decides whether `f` is a coordinate and, if so, builds and verifies a
/// full coordinate system containing `G`.
pub fn run_pipeline(pres: &Presentation, opts: &PipelineOptions) -> Result<TheoremBReport> {
    if !pres.is_structured() {
        return Err(Error::Precondition("unstructured presentation: F is not of the form f(Z,T) + X1...Xm*g".into()));
    }
    let field = pres.field();
    let ctx = pres.ctx().clone();
    let m = pres.m();
    let cert = coordinate_decide(pres.f(), opts.degree_bound)?;
    let auto = match &cert {
        CoordinateCertificate::No { reason, .. } => {
            let flags = if *reason == StuckReason::NoReducingElementary {
                vec![REDUCTION_ASSUMPTION.to_string()]
            } else {
                Vec::new()
            };
            return Ok(TheoremBReport {
                statement_v: cert,
                statements: StatementsVerdict::Refuted,
                witness: None,
                a_witness: None,
                mate_case: None,
                flags,
            });
        }
        CoordinateCertificate::Yes { auto, .. } => auto.clone(),
    };
    let lift = |p: &Poly, q: &Poly| -> Result<Vec<Poly>> {
        let mut imgs: Vec<Poly> = (0..=m).map(|i| pres.var(i)).collect();
        imgs.push(p.to_context(&ctx)?);
        imgs.push(q.to_context(&ctx)?);
        Ok(imgs)
    };
    let fwd = lift(&auto.p, &auto.q)?;
    let back = lift(&auto.inv_p, &auto.inv_q)?;
    let c = pres.big_f().substitute(&fwd)?;
    let norm = Presentation::new(m, pres.r(), &c)?;
    let inconclusive = |why: String, cert: CoordinateCertificate| TheoremBReport {
        statement_v: cert,
        statements: StatementsVerdict::Inconclusive(why),
        witness: None,
        a_witness: None,
        mate_case: None,
        flags: Vec::new(),
    };
    let mate = match construct_mate(&norm, opts.mate_rounds)? {
        MateOutcome::Mate(w) => w,
        MateOutcome::Inconclusive(why) => return Ok(inconclusive(why, cert)),
    };

    let sym = VarContext::symbols(m + 3);
    let mut polys: Vec<Poly> = (0..m).map(|i| pres.var(i)).collect();
    polys.push(pres.relation().clone());
    polys.push(mate.w.substitute(&back)?);
    polys.push(auto.inv_q.to_context(&ctx)?);
    let s = |i: usize| Poly::var(&sym, field, i);
    let mut normalized: Vec<Poly> = (0..m).map(s).collect();
    normalized.extend([mate.expr_y.clone(), mate.expr_z.clone(), s(m + 2)]);
    let plane_at = [s(m + 1), s(m + 2)];
    let mut plane: Vec<Poly> = (0..=m).map(s).collect();
    plane.push(auto.p.to_context(&VarContext::plane())?.substitute(&plane_at)?);
    plane.push(auto.q.to_context(&VarContext::plane())?.substitute(&plane_at)?);
    let exprs = apply_map(&plane, &normalized)?;
    let mut system = CoordinateSystem {
        polys,
        relation: pres.relation().clone(),
        inverse_expressions: Some(exprs),
        inverse_stages: Some(vec![normalized, plane]),
        verified: false,
    };
    match verify_coordinate_system(&system, opts.verify_degree_cap)? {
        SystemCheck::Verified(exprs) => {
            if system.inverse_expressions.as_ref() != Some(&exprs) {
                system.inverse_stages = None;
            }
            system.inverse_expressions = Some(exprs);
            system.verified = true;
        }
        SystemCheck::Failed(why) => {
            return Err(Error::Internal(format!("constructed coordinate system failed verification: {why}")))
        }
        SystemCheck::Inconclusive(why) => return Ok(inconclusive(why, cert)),
    }
    let u_elem = pres.normal_form(&system.polys[m + 1])?;
    let v_elem = pres.normal_form(&system.polys[m + 2])?;
    if !a_witness_generates(pres, &system, &u_elem, &v_elem)? {
        return Err(Error::Internal("images of the complementary coordinates do not generate A over E".into()));
    }
    Ok(TheoremBReport {
        statement_v: cert,
        statements: StatementsVerdict::Established,
        witness: Some(system),
        a_witness: Some((u_elem, v_elem)),
        mate_case: Some(mate.case),
        flags: Vec::new(),
    })
}

/// `y, z, t` are polynomials in `x_1..x_m, u, v` inside `A`: the inverse
/// expressions evaluated with `G = 0`.
pub fn a_witness_generates(pres: &Presentation, system: &CoordinateSystem, u: &AElem, v: &AElem) -> Result<bool> {
    let stages = match (&system.inverse_stages, &system.inverse_expressions) {
        (Some(st), _) => st.clone(),
        (None, Some(exprs)) => vec![exprs.clone()],
        (None, None) => return Ok(false),
    };
    let m = pres.m();
    let mut values: Vec<Poly> = (0..m).map(|i| pres.var(i)).collect();
    values.push(Poly::zero(pres.ctx(), pres.field()));
    values.push(u.rep().clone());
    values.push(v.rep().clone());
    for map in &stages {
        values = map.iter().map(|e| pres.normal_form_poly(&e.substitute(&values)?)).collect::<Result<_>>()?;
    }
    Ok((m..values.len()).all(|i| values[i] == pres.var(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(m: usize, r: &[u32], f: &str, field: Field) -> Presentation {
        Presentation::parse(m, r, field, f).unwrap()
    }

    #[test]
    fn z_free_mate() {
        let p = pres(2, &[2, 2], "Z + X1*X2*T", Field::Rationals);
        let rep = run_pipeline(&p, &PipelineOptions::default()).unwrap();
        assert_eq!(rep.statements, StatementsVerdict::Established);
        assert_eq!(rep.mate_case, Some(MateCase::ZFree));
        let sys = rep.witness.unwrap();
        let names: Vec<String> = sys.polys.iter().map(Poly::to_string).collect();
        assert_eq!(names, ["X1", "X2", "X1^2*X2^2*Y - X1*X2*T - Z", "Y", "T"]);
        let z = &sys.inverse_expressions.as_ref().unwrap()[3];
        assert_eq!(z.to_string(), "S1^2*S2^2*S4 - S1*S2*S5 - S3");
    }

    #[test]
    fn coordinate_system_json_round_trip() {
        let p = pres(1, &[2], "Z + X1*Z", Field::Rationals);
        let sys = run_pipeline(&p, &PipelineOptions::default()).unwrap().witness.unwrap();
        let back = CoordinateSystem::from_json(&sys.to_json(), 1, Field::Rationals).unwrap();
        assert_eq!(back.polys, sys.polys);
        assert_eq!(back.inverse_expressions, sys.inverse_expressions);
        assert_eq!(back.inverse_stages, sys.inverse_stages);
        assert!(matches!(verify_coordinate_system(&back, None).unwrap(), SystemCheck::Verified(_)));
    }

    #[test]
    fn bezout_mate() {
        let p = pres(1, &[2], "Z + X1*Z", Field::Rationals);
        let norm = p.clone();
        let MateOutcome::Mate(w) = construct_mate(&norm, 32).unwrap() else { panic!() };
        assert_eq!(w.case, MateCase::Bezout);
        let ctx = p.ctx();
        let q = |s: &str| Poly::parse(s, ctx, Field::Rationals).unwrap();
        assert_eq!(w.w, q("Z + (1 - X1)*Y"));
        let sym = VarContext::symbols(4);
        let s = |t: &str| Poly::parse(t, &sym, Field::Rationals).unwrap();
        assert_eq!(w.expr_y, s("S2 + (1 + S1)*S3"));
        assert_eq!(w.expr_z, s("-(1 - S1)*S2 + S1^2*S3"));
    }

    #[test]
    fn higher_degree_mate() {
        let p = pres(1, &[2], "Z + X1*Z^2", Field::Rationals);
        let rep = run_pipeline(&p, &PipelineOptions::default()).unwrap();
        assert_eq!(rep.statements, StatementsVerdict::Established);
        assert_eq!(rep.mate_case, Some(MateCase::Inverse));
        let p = pres(2, &[3, 2], "T + Z + X1*X2*(Z^3 + Z^2*T + 1)", Field::Prime(5));
        let rep = run_pipeline(&p, &PipelineOptions::default()).unwrap();
        assert_eq!(rep.statements, StatementsVerdict::Established);
    }

    #[test]
    fn refuted_and_unstructured() {
        let f2 = Field::Prime(2);
        let p = pres(2, &[2, 2], "Z^4 + T + T^6 + X1*X2*T", f2);
        let rep = run_pipeline(&p, &PipelineOptions::default()).unwrap();
        assert_eq!(rep.statements, StatementsVerdict::Refuted);
        assert!(rep.witness.is_none());
        let ex1 = pres(2, &[2, 2], "X1*Z + X2 + Z", Field::Rationals);
        assert!(matches!(run_pipeline(&ex1, &PipelineOptions::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn verifier_paths() {
        let q = Field::Rationals;
        let p = pres(1, &[2], "Z + X1*T", q);
        let ctx = p.ctx();
        let v = |s: &str| Poly::parse(s, ctx, q).unwrap();
        let g = p.relation().clone();
        let sys = CoordinateSystem {
            polys: vec![v("X1"), v("Y"), v("T"), g.clone()],
            relation: g.clone(),
            inverse_expressions: None,
            inverse_stages: None,
            verified: false,
        };
        assert!(matches!(verify_coordinate_system(&sys, None).unwrap(), SystemCheck::Verified(_)));
        let absent = CoordinateSystem { polys: vec![v("X1"), v("Y"), v("Z"), v("T")], ..sys.clone() };
        assert!(matches!(verify_coordinate_system(&absent, None), Err(Error::Precondition(_))));
        let bad = CoordinateSystem { polys: vec![v("X1"), v("Y^2"), v("T"), g.clone()], ..sys };
        assert!(matches!(verify_coordinate_system(&bad, None).unwrap(), SystemCheck::Failed(_)));

        let b = pres(1, &[2], "Z + X1*Z", q);
        let gb = b.relation().clone();
        let w = Poly::parse("Z + (1 - X1)*Y", b.ctx(), q).unwrap();
        let t = Poly::parse("T", b.ctx(), q).unwrap();
        let x = Poly::parse("X1", b.ctx(), q).unwrap();
        let sys = CoordinateSystem {
            polys: vec![x, t, gb.clone(), w],
            relation: gb,
            inverse_expressions: None,
            inverse_stages: None,
            verified: false,
        };
        assert!(matches!(verify_coordinate_system(&sys, None).unwrap(), SystemCheck::Verified(_)));
    }
}
