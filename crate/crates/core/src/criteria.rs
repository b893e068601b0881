//! Structural verdicts on `A`: factoriality, fibration over `E = k[x]`, the
//! units of `A / x_i A`, isomorphism invariants, automorphism checks and a
//! catalog of pairwise non-isomorphic stably trivial rings.

use serde_json::{json, Value};

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::factor::{irreducible_test, Irreducibility};
use crate::field::{Field, Scalar};
use crate::ideal::{ideal_membership, Membership};
use crate::linalg::{express_in, jacobian_determinant, Preimages};
use crate::plane::{
    coordinate_decide, is_line, match_segre_nagata, segre_nagata, LineSource, LineVerdict, NotLineWitness, PlaneAuto,
    SegreNagataParams,
};
use crate::poly::Poly;
use crate::quotient::{AEndo, Presentation};
use crate::upoly::UPoly;

const Z: usize = 0;
const T: usize = 1;

/// Status of `F_j = F(.., X_j = 0, ..)`.
#[derive(Clone, Debug, PartialEq)]
pub enum FjStatus {
    Irreducible,
    Unit,
    Reducible(Poly),
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FjReport {
    /// 1-based index.
    pub j: usize,
    pub f_j: Poly,
    pub status: FjStatus,
}

#[derive(Clone, Debug, PartialEq)]
pub enum UfdOutcome {
    Ufd,
    NotUfd { j: usize, factor: Poly },
    Unknown { j: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct UfdVerdict {
    pub outcome: UfdOutcome,
    pub per_j: Vec<FjReport>,
    /// Only `f` was tested (every `F_j` equals `f` for structured `F`).
    pub shortcut: bool,
}

impl UfdVerdict {
    pub fn to_json(&self) -> Value {
        let outcome = match &self.outcome {
            UfdOutcome::Ufd => json!("UFD"),
            UfdOutcome::NotUfd { j, factor } => json!({"NotUFD": {"j": j, "factor": factor.to_string()}}),
            UfdOutcome::Unknown { j } => json!({"Unknown": {"j": j}}),
        };
        let per_j: Vec<Value> = self
            .per_j
            .iter()
            .map(|r| {
                let status = match &r.status {
                    FjStatus::Irreducible => json!("irreducible"),
                    FjStatus::Unit => json!("unit"),
                    FjStatus::Reducible(f) => json!({"reducible": f.to_string()}),
                    FjStatus::Unknown(why) => json!({"unknown": why}),
                };
                json!({"j": r.j, "F_j": r.f_j.to_string(), "status": status})
            })
            .collect();
        json!({"verdict": outcome, "per_j": per_j, "shortcut": self.shortcut})
    }
}

fn classify(p: &Poly) -> Result<FjStatus> {
    if p.is_constant() {
        return Ok(FjStatus::Unit);
    }
    Ok(match irreducible_test(p)? {
        Irreducibility::Yes => FjStatus::Irreducible,
        Irreducibility::No(factor) => FjStatus::Reducible(factor),
        Irreducibility::Unknown(why) => {
            // a coordinate of the plane is irreducible
            let plane = p.to_context(&VarContext::plane());
            match plane.map(|q| coordinate_decide(&q, None)) {
                Ok(Ok(c)) if c.is_yes() => FjStatus::Irreducible,
                _ => FjStatus::Unknown(why),
            }
        }
    })
}

/// `A` is factorial exactly when every `F_j` is irreducible or a unit.
pub fn ufd_check(pres: &Presentation) -> Result<UfdVerdict> {
    let field = pres.field();
    let shortcut = pres.is_structured();
    let mut per_j = Vec::with_capacity(pres.m());
    let f_status = if shortcut { Some(classify(&pres.f().to_context(pres.ctx())?)?) } else { None };
    for j in 0..pres.m() {
        let f_j = pres.big_f().eval_var(j, &field.zero());
        let status = match &f_status {
            Some(s) => s.clone(),
            None => classify(&f_j)?,
        };
        per_j.push(FjReport { j: j + 1, f_j, status });
    }
    let mut outcome = UfdOutcome::Ufd;
    for r in &per_j {
        match &r.status {
            FjStatus::Reducible(factor) => {
                if r.f_j.exact_divide(&factor.to_context(r.f_j.ctx())?)?.is_none() {
                    return Err(Error::Internal(format!("factor {factor} does not divide F_{}", r.j)));
                }
                outcome = UfdOutcome::NotUfd { j: r.j, factor: factor.to_context(r.f_j.ctx())? };
                break;
            }
            FjStatus::Unknown(_) if outcome == UfdOutcome::Ufd => outcome = UfdOutcome::Unknown { j: r.j },
            _ => {}
        }
    }
    Ok(UfdVerdict { outcome, per_j, shortcut })
}

pub const FLATNESS_NOTE: &str = "A is a flat E-algebra for every structured F";

#[derive(Clone, Debug, PartialEq)]
pub enum FibrationOutcome {
    Fibration(LineSource),
    NotFibration(NotLineWitness),
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FibrationVerdict {
    pub outcome: FibrationOutcome,
    pub notes: Vec<String>,
}

/// `A` is an `A^2`-fibration over `E` exactly when `f` is a line.
pub fn fibration_check(pres: &Presentation) -> Result<FibrationVerdict> {
    if !pres.is_structured() {
        return Err(Error::Precondition("fibration check needs F = f(Z,T) + X1...Xm*g".into()));
    }
    let mut notes = vec![FLATNESS_NOTE.to_string()];
    let outcome = match is_line(pres.f())? {
        LineVerdict::Line(src) => {
            if let LineSource::SegreNagata(_) = src {
                notes.push("f is not a coordinate, so A is not a polynomial ring over k".into());
            }
            FibrationOutcome::Fibration(src)
        }
        LineVerdict::NotLine(w) => FibrationOutcome::NotFibration(w),
        LineVerdict::Unknown(why) => FibrationOutcome::Unknown(why),
    };
    Ok(FibrationVerdict { outcome, notes })
}

#[derive(Clone, Debug, PartialEq)]
pub enum UnitVerdict {
    /// `(A / x_i A)^* = k^*`.
    Pass,
    Fail(String),
    Unknown(String),
}

fn to_upoly(p: &Poly, var: usize) -> UPoly {
    let field = p.field();
    let mut c = vec![field.zero(); p.degree_in(var) as usize + 1];
    for (m, a) in p.terms() {
        c[m.exp(var) as usize] = a.clone();
    }
    UPoly::new(field, c)
}

/// Units of `A / x_i A = (k[Z,T]/(f))[x_j (j != i), y]`, i.e. of `k[Z,T]/(f)`,
/// for `f` linear in one of the variables (or a coordinate).
pub fn unit_quotient_check(pres: &Presentation, i: usize) -> Result<UnitVerdict> {
    if !pres.is_structured() {
        return Err(Error::Precondition("unit check needs F = f(Z,T) + X1...Xm*g".into()));
    }
    if i == 0 || i > pres.m() {
        return Err(Error::InvalidParameters(format!("index {i} outside 1..={}", pres.m())));
    }
    let f = pres.f();
    if f.is_constant() {
        return Ok(UnitVerdict::Fail("f is a nonzero constant: x_i is a unit and A / x_i A = 0".into()));
    }
    let irreducible = match irreducible_test(f)? {
        Irreducibility::Yes => true,
        Irreducibility::No(factor) => {
            return Ok(UnitVerdict::Unknown(format!("f is reducible (factor {factor}); outside the implemented class")))
        }
        Irreducibility::Unknown(_) => false,
    };
    for (lin, other) in [(T, Z), (Z, T)] {
        if f.degree_in(lin) > 1 {
            continue;
        }
        let coeffs = f.coefficients_in(lin);
        let a0 = to_upoly(&coeffs[0], other);
        let a1 = coeffs.get(1).map(|c| to_upoly(c, other)).unwrap_or_else(|| UPoly::zero(f.field()));
        let var = if other == Z { "Z" } else { "T" };
        return Ok(if a1.is_zero() {
            match a0.degree() {
                Some(1) => UnitVerdict::Pass,
                _ if irreducible => {
                    UnitVerdict::Fail(format!("k[{var}]/(a0) is a proper field extension of k: extra units"))
                }
                _ => UnitVerdict::Unknown("irreducibility of f unresolved".into()),
            }
        } else if !a0.gcd(&a1).is_one() {
            UnitVerdict::Unknown("a0 and a1 share a factor".into())
        } else if a1.degree() == Some(0) {
            UnitVerdict::Pass
        } else {
            UnitVerdict::Fail(format!("the quotient is k[{var}, 1/a1] and a1 is a non-constant unit"))
        });
    }
    if coordinate_decide(f, None)?.is_yes() {
        return Ok(UnitVerdict::Pass);
    }
    Ok(UnitVerdict::Unknown("f has degree at least 2 in both variables and is not a coordinate".into()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum LinearInT {
    /// `f = a0(Z) + a1(Z) T`.
    Yes {
        a0: Poly,
        a1: Poly,
    },
    NoDirect,
}

pub fn linear_in_t_detect(f: &Poly) -> Result<LinearInT> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.to_context(&VarContext::plane())?;
    if f.degree_in(T) > 1 {
        return Ok(LinearInT::NoDirect);
    }
    let mut c = f.coefficients_in(T);
    c.resize(2, Poly::zero(f.ctx(), f.field()));
    Ok(LinearInT::Yes { a0: c[0].clone(), a1: c[1].clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    NotIsomorphic,
    ConsistentWith,
    Isomorphic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsoInvariantReport {
    pub r_multiset_equal: bool,
    pub alpha: Option<PlaneAuto>,
    /// `alpha(g) = lambda * f` for the second presentation's `g` and the first's `f`.
    pub lambda: Option<Scalar>,
    pub verdict: IsoVerdict,
    /// Invariant separating the two rings on `NotIsomorphic`.
    pub by: Option<String>,
    pub flags: Vec<String>,
}

impl IsoInvariantReport {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": format!("{:?}", self.verdict),
            "r_multiset_equal": self.r_multiset_equal,
            "alpha": self.alpha.as_ref().map(PlaneAuto::to_json),
            "lambda": self.lambda.as_ref().map(Scalar::to_string),
            "by": self.by,
            "flags": self.flags,
        })
    }
}

pub const DK_FLAG: &str = "relies on DK(A) = k[x, z, t], which is not verified for these inputs";

fn sorted(r: &[u32]) -> Vec<u32> {
    let mut v = r.to_vec();
    v.sort_unstable();
    v
}

/// Non-trivial-line certificate for a presentation with `F = f`.
fn certified_line(p: &Presentation) -> Option<SegreNagataParams> {
    let pure = *p.big_f() == p.f().to_context(p.ctx()).ok()?;
    pure.then(|| match_segre_nagata(p.f())).flatten()
}

/// Compares `A(r, f)` with `A(s, g)`: `r` and `s` must agree up to
/// permutation, and an isomorphism needs `alpha(g) = lambda f`. The
/// full equivalence is granted only when both `f`, `g` are certified
/// non-trivial lines.
pub fn iso_invariants(p1: &Presentation, p2: &Presentation, alpha: Option<&PlaneAuto>) -> Result<IsoInvariantReport> {
    if p1.field() != p2.field() {
        return Err(Error::FieldMismatch(p1.field().to_string(), p2.field().to_string()));
    }
    let certified = certified_line(p1).is_some() && certified_line(p2).is_some();
    let r_equal = sorted(p1.r()) == sorted(p2.r());
    let mut report = IsoInvariantReport {
        r_multiset_equal: r_equal,
        alpha: alpha.cloned(),
        lambda: None,
        verdict: IsoVerdict::ConsistentWith,
        by: None,
        flags: Vec::new(),
    };
    if p1.m() != p2.m() {
        report.verdict = IsoVerdict::NotIsomorphic;
        report.by = Some("dimension".into());
        return Ok(report);
    }
    if !r_equal {
        report.verdict = IsoVerdict::NotIsomorphic;
        report.by = Some("r-multiset".into());
        if !certified {
            report.flags.push(DK_FLAG.into());
        }
        return Ok(report);
    }
    if let Some(a) = alpha {
        if a.check()? {
            let image = a.apply(p2.f())?;
            let f = p1.f();
            let field = f.field();
            let lambda = field.div(image.leading_coeff().unwrap(), f.leading_coeff().unwrap());
            if image == f.scale(&lambda) {
                report.lambda = Some(lambda);
            }
        } else {
            report.flags.push("supplied alpha is not an automorphism".into());
        }
    }
    if certified && report.lambda.is_some() {
        report.verdict = IsoVerdict::Isomorphic;
    } else if !certified {
        report.flags.push(DK_FLAG.into());
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub enum AutVerdict {
    Automorphism,
    NotAutomorphism(String),
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct AutCheckReport {
    pub endo: AEndo,
    pub cond_a: bool,
    pub cond_c: bool,
    pub verdict: AutVerdict,
    /// Expressions of `x_i, z, t` in the symbols for `phi(x_i), phi(z), phi(t)`.
    pub b_inverse: Option<Vec<Poly>>,
    pub flags: Vec<String>,
}

impl AutCheckReport {
    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            AutVerdict::Automorphism => json!("Automorphism"),
            AutVerdict::NotAutomorphism(why) => json!({"NotAutomorphism": why}),
            AutVerdict::Inconclusive(why) => json!({"Inconclusive": why}),
        };
        json!({
            "verdict": verdict,
            "images": self.endo.images().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "cond_a": self.cond_a,
            "cond_c": self.cond_c,
            "b_inverse": self.b_inverse.as_ref().map(|v| v.iter().map(Poly::to_string).collect::<Vec<_>>()),
            "flags": self.flags,
        })
    }
}

pub const AUT_NEGATIVE_FLAG: &str =
    "negative verdicts assume automorphisms of A preserve E and B (DK(A) = B), not verified";

/// Checks that `phi` restricts to automorphisms of `E = k[x]` and
/// `B = k[x, z, t]` and maps `I = (x^r, F) B` onto itself; together these
/// make `phi` an automorphism of `A`.
pub fn aut_check(pres: &Presentation, phi: &AEndo, degree_cap: Option<u32>) -> Result<AutCheckReport> {
    if !phi.presentation().same_as(pres) {
        return Err(Error::PresentationMismatch);
    }
    if !phi.relation_checked() {
        return Err(Error::Precondition("endomorphism was not checked against the relation".into()));
    }
    let m = pres.m();
    let (yi, zi, ti) = (pres.y_index(), pres.z_index(), pres.t_index());
    let mut report = AutCheckReport {
        endo: phi.clone(),
        cond_a: false,
        cond_c: false,
        verdict: AutVerdict::Inconclusive(String::new()),
        b_inverse: None,
        flags: Vec::new(),
    };
    let not_aut = |mut r: AutCheckReport, why: String| {
        r.verdict = AutVerdict::NotAutomorphism(why);
        r.flags.push(AUT_NEGATIVE_FLAG.into());
        Ok(r)
    };
    let b_idx: Vec<usize> = (0..m).chain([zi, ti]).collect();
    let b_images: Vec<Poly> = b_idx.iter().map(|&i| phi.image(i).rep().clone()).collect();
    if let Some(k) = b_images.iter().position(|p| p.involves(yi)) {
        return not_aut(report, format!("image of {} is not in B", pres.ctx().name(b_idx[k])));
    }
    let e_images = &b_images[..m];
    if let Some(k) = (0..m).find(|&k| (m..=ti).any(|v| e_images[k].involves(v))) {
        return not_aut(report, format!("image of x{} is not in E", k + 1));
    }
    for (imgs, vars, ring) in [(e_images, &b_idx[..m], "E"), (&b_images[..], &b_idx[..], "B")] {
        let jac = jacobian_determinant(imgs, vars);
        if jac.as_constant().is_none_or(|c| jac.field().is_zero(&c)) {
            return not_aut(
                report,
                format!("induced endomorphism of {ring} has Jacobian {jac}, not a nonzero constant"),
            );
        }
    }
    let maxdeg = b_images.iter().filter_map(Poly::total_degree).max().unwrap_or(1);
    let cap = degree_cap.unwrap_or(maxdeg * maxdeg + 4);
    let budget = crate::theorem_b::MAX_UNKNOWNS;
    let e_targets: Vec<Poly> = (0..m).map(|i| pres.var(i)).collect();
    let b_targets: Vec<Poly> = b_idx.iter().map(|&i| pres.var(i)).collect();
    for (targets, gens, ring) in [(&e_targets, e_images, "E"), (&b_targets, &b_images[..], "B")] {
        match express_in(targets, gens, cap, budget)? {
            Preimages::Found(exprs) => {
                if ring == "B" {
                    report.b_inverse = Some(exprs);
                }
            }
            Preimages::Missing(_) | Preimages::TooLarge(_) => {
                report.verdict = AutVerdict::Inconclusive(format!("no inverse on {ring} found up to degree {cap}"));
                return Ok(report);
            }
        }
    }
    report.cond_a = true;

    let xr = pres.xr(pres.ctx());
    let big_f = pres.big_f().clone();
    let mut subs: Vec<Poly> = (0..pres.ngens()).map(|i| phi.image(i).rep().clone()).collect();
    subs[yi] = Poly::zero(pres.ctx(), pres.field());
    let (phi_xr, phi_f) = (xr.substitute(&subs)?, big_f.substitute(&subs)?);
    let ideal = [xr, big_f];
    let image = [phi_xr, phi_f];
    let ideal_cap = degree_cap.map(|c| c.max(maxdeg * maxdeg + 4));
    for (targets, gens, dir) in [(&image, &ideal, "phi(I) in I"), (&ideal, &image, "I in phi(I)")] {
        for t in targets {
            match ideal_membership(t, gens, ideal_cap)? {
                Membership::In(_) => {}
                Membership::NotIn => return not_aut(report, format!("{dir} fails: {t} is not a member")),
                Membership::Inconclusive(why) => {
                    report.verdict = AutVerdict::Inconclusive(format!("{dir}: {why}"));
                    return Ok(report);
                }
            }
        }
    }
    report.cond_c = true;
    report.verdict = AutVerdict::Automorphism;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairCertificate {
    pub pair: (usize, usize),
    pub verdict: IsoVerdict,
    pub by: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub r: Vec<u32>,
    pub f: Poly,
    pub field: Field,
    /// Certificates against every later entry.
    pub certificates: Vec<PairCertificate>,
    pub annotations: Vec<String>,
}

impl CatalogEntry {
    pub fn presentation(&self) -> Result<Presentation> {
        Presentation::new(self.r.len(), &self.r, &self.f)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "f": self.f.to_string(),
            "field": self.field.to_string(),
            "certificates": self.certificates.iter().map(|c| json!({
                "pair": [c.pair.0, c.pair.1], "verdict": format!("{:?}", c.verdict), "by": c.by,
            })).collect::<Vec<_>>(),
            "annotations": self.annotations,
        })
    }
}

pub const STABLY_TRIVIAL_NOTE: &str = "stably trivial: A^[1] = k^[m+3] (established for this family, not re-verified)";

/// Exponent multisets of size `m` with entries at least 2, ordered by
/// largest entry and then colexicographically.
pub fn r_multisets(m: usize) -> impl Iterator<Item = Vec<u32>> {
    (2u32..).flat_map(move |top| {
        let mut out = Vec::new();
        let mut cur = vec![2u32; m];
        cur[m - 1] = top;
        fn rec(i: usize, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == usize::MAX {
                out.push(cur.clone());
                return;
            }
            for v in 2..=hi {
                cur[i] = v;
                rec(i.wrapping_sub(1), v, cur, out);
            }
        }
        rec(m.wrapping_sub(2), top, &mut cur, &mut out);
        out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        out
    })
}

/// `count` presentations `X^r Y - f` with one Segre-Nagata `f` and pairwise
/// distinct exponent multisets, each pair separated by [`iso_invariants`].
pub fn zcp_catalog(count: usize, field: Field, sn: SegreNagataParams, m: usize) -> Result<Vec<CatalogEntry>> {
    if count < 2 {
        return Err(Error::InvalidParameters("catalog needs at least two entries".into()));
    }
    if m == 0 {
        return Err(Error::InvalidParameters("m must be positive".into()));
    }
    let f = segre_nagata(sn, field)?;
    let big_f = f.to_context(&VarContext::presentation(m))?;
    let rs: Vec<Vec<u32>> = r_multisets(m).take(count).collect();
    let pres: Vec<Presentation> = rs.iter().map(|r| Presentation::new(m, r, &big_f)).collect::<Result<_>>()?;
    let mut entries = Vec::with_capacity(count);
    for (i, r) in rs.iter().enumerate() {
        let mut certificates = Vec::new();
        for j in i + 1..count {
            let rep = iso_invariants(&pres[i], &pres[j], None)?;
            if rep.verdict != IsoVerdict::NotIsomorphic || !rep.flags.is_empty() {
                return Err(Error::Internal(format!("catalog entries {i} and {j} were not separated")));
            }
            certificates.push(PairCertificate { pair: (i, j), verdict: rep.verdict, by: rep.by.unwrap_or_default() });
        }
        entries.push(CatalogEntry {
            r: r.clone(),
            f: f.clone(),
            field,
            certificates,
            annotations: vec![STABLY_TRIVIAL_NOTE.into()],
        });
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::endo_from_images;

    fn pres(m: usize, r: &[u32], f: &str, field: Field) -> Presentation {
        Presentation::parse(m, r, field, f).unwrap()
    }

    #[test]
    fn ufd_examples() {
        let q = Field::Rationals;
        let v = ufd_check(&pres(2, &[2, 2], "X1*Z + X2 + Z", q)).unwrap();
        let ctx = VarContext::presentation(2);
        assert_eq!(v.outcome, UfdOutcome::NotUfd { j: 2, factor: Poly::parse("X1 + 1", &ctx, q).unwrap() });
        assert!(!v.shortcut);
        let v = ufd_check(&pres(2, &[2, 2], "Z + X1*X2*T", q)).unwrap();
        assert_eq!(v.outcome, UfdOutcome::Ufd);
        assert!(v.shortcut);
        let v = ufd_check(&pres(1, &[2], "Z*T", q)).unwrap();
        assert!(matches!(v.outcome, UfdOutcome::NotUfd { j: 1, .. }));
    }

    #[test]
    fn fibration_and_units() {
        let q = Field::Rationals;
        let f2 = Field::Prime(2);
        assert!(matches!(fibration_check(&pres(1, &[2], "Z", q)).unwrap().outcome, FibrationOutcome::Fibration(_)));
        let sn = fibration_check(&pres(2, &[2, 2], "Z^4 + T + T^6", f2)).unwrap();
        assert!(matches!(sn.outcome, FibrationOutcome::Fibration(LineSource::SegreNagata(_))));
        assert!(matches!(
            fibration_check(&pres(1, &[2], "Z*T", q)).unwrap().outcome,
            FibrationOutcome::NotFibration(NotLineWitness::Factor(_))
        ));
        assert_eq!(unit_quotient_check(&pres(1, &[2], "Z", q), 1).unwrap(), UnitVerdict::Pass);
        assert!(matches!(unit_quotient_check(&pres(1, &[2], "1 + Z*T", q), 1).unwrap(), UnitVerdict::Fail(_)));
        assert!(matches!(
            unit_quotient_check(&pres(1, &[2], "Z^2 + T^2 + Z*T^3", q), 1).unwrap(),
            UnitVerdict::Unknown(_)
        ));
        assert!(unit_quotient_check(&pres(1, &[2], "Z", q), 2).is_err());
    }

    #[test]
    fn linear_detector() {
        let q = Field::Rationals;
        let p = |s: &str| Poly::parse(s, &VarContext::plane(), q).unwrap();
        assert_eq!(linear_in_t_detect(&p("Z^3 + (Z + 1)*T")).unwrap(), LinearInT::Yes { a0: p("Z^3"), a1: p("Z + 1") });
        assert_eq!(linear_in_t_detect(&p("Z + T^2")).unwrap(), LinearInT::NoDirect);
        assert_eq!(linear_in_t_detect(&p("T")).unwrap(), LinearInT::Yes { a0: p("0"), a1: p("1") });
    }

    #[test]
    fn iso_examples() {
        let f2 = Field::Prime(2);
        let sn = "Z^4 + T + T^6";
        let a = pres(2, &[2, 2], sn, f2);
        let b = pres(2, &[2, 3], sn, f2);
        let c = pres(2, &[3, 2], sn, f2);
        let r = iso_invariants(&a, &b, None).unwrap();
        assert_eq!((r.verdict, r.flags.len()), (IsoVerdict::NotIsomorphic, 0));
        let id = PlaneAuto::identity(f2);
        assert_eq!(iso_invariants(&b, &c, Some(&id)).unwrap().verdict, IsoVerdict::Isomorphic);
        let q = Field::Rationals;
        let r = iso_invariants(
            &pres(1, &[2], "Z + T^2", q),
            &pres(1, &[2], "2*Z + 2*T^2", q),
            Some(&PlaneAuto::identity(q)),
        )
        .unwrap();
        assert_eq!(r.verdict, IsoVerdict::ConsistentWith);
        assert_eq!(r.lambda, Some(q.from_i64(2)));
    }

    #[test]
    fn automorphisms() {
        let q = Field::Rationals;
        let p = pres(1, &[2], "Z", q);
        let ctx = p.ctx().clone();
        let v = |s: &str| Poly::parse(s, &ctx, q).unwrap();
        let id = AEndo::identity(&p);
        assert_eq!(aut_check(&p, &id, None).unwrap().verdict, AutVerdict::Automorphism);
        let scale = endo_from_images(&p, &[v("2*X1"), v("1/4*Y"), v("Z"), v("T")]).unwrap();
        assert_eq!(aut_check(&p, &scale, None).unwrap().verdict, AutVerdict::Automorphism);
        let square = endo_from_images(&p, &[v("X1^2"), v("Y"), v("X1^2*Z"), v("T")]).unwrap();
        let rep = aut_check(&p, &square, None).unwrap();
        assert!(matches!(rep.verdict, AutVerdict::NotAutomorphism(_)));
        assert!(!rep.cond_a);
    }

    #[test]
    fn catalog() {
        let f2 = Field::Prime(2);
        let sn = SegreNagataParams { p: 2, e: 2, s: 3 };
        let cat = zcp_catalog(5, f2, sn, 2).unwrap();
        let rs: Vec<Vec<u32>> = cat.iter().map(|e| e.r.clone()).collect();
        assert_eq!(rs, vec![vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 4], vec![3, 4]]);
        assert_eq!(cat.iter().map(|e| e.certificates.len()).sum::<usize>(), 10);
        let one = zcp_catalog(2, f2, sn, 1).unwrap();
        assert_eq!((one[0].r.clone(), one[1].r.clone()), (vec![2], vec![3]));
        assert!(zcp_catalog(1, f2, sn, 2).is_err());
    }
}
