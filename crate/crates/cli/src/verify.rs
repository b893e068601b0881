use std::path::Path;

use hypercert::expmap::{exp_verify, AxiomStatus, ExpMap};
use hypercert::plane::verify_coordinate_certificate;
use hypercert::theorem_b::{verify_coordinate_system, CoordinateSystem, SystemCheck};
use hypercert::{word_to_auto, CoordinateCertificate, Poly, TameWord, VarContext};
use serde_json::Value;

use crate::commands::{dispatch, plane_poly, presentation};
use crate::request::Request;
use crate::Failure;

fn field_at<'a>(v: &'a Value, path: &[&str]) -> Result<&'a Value, Failure> {
    let mut cur = v;
    for key in path {
        cur = cur.get(key).ok_or_else(|| Failure::Input(format!("certificate lacks `{}`", path.join("."))))?;
    }
    Ok(cur)
}

fn text<'a>(v: &'a Value, path: &[&str]) -> Result<&'a str, Failure> {
    field_at(v, path)?.as_str().ok_or_else(|| Failure::Input(format!("`{}` is not a string", path.join("."))))
}

fn fail(what: &str) -> Failure {
    Failure::Internal(format!("{what} failed re-verification"))
}

/// Checks a positive certificate from its own content, without rerunning the decision.
fn check_certificate(req: &Request, verdict: &str, cert: &Value) -> Result<(), Failure> {
    match (req.command.as_str(), verdict) {
        ("coord", "coordinate") => {
            let f = plane_poly(req)?;
            let field = f.field();
            let word = TameWord::from_json(field_at(cert, &["word"])?, field)?;
            let auto = word_to_auto(&word, field)?;
            if auto.to_json() != *field_at(cert, &["auto"])? {
                return Err(fail("composed tame word"));
            }
            let mate = Poly::parse(text(cert, &["mate"])?, &VarContext::plane(), field)?;
            if !verify_coordinate_certificate(&f, &CoordinateCertificate::Yes { word, auto, mate })? {
                return Err(fail("coordinate certificate"));
            }
        }
        ("theorem-b", "established") => {
            let pres = presentation(req)?;
            let sys = CoordinateSystem::from_json(field_at(cert, &["witness"])?, pres.m(), pres.field())?;
            if sys.relation != *pres.relation() {
                return Err(fail("relation of the coordinate system"));
            }
            if !matches!(verify_coordinate_system(&sys, req.degree_cap)?, SystemCheck::Verified(_)) {
                return Err(fail("coordinate system"));
            }
        }
        ("ufd", "not-ufd") => {
            let pres = presentation(req)?;
            let j = field_at(cert, &["verdict", "NotUFD", "j"])?.as_u64().unwrap_or(0) as usize;
            if j == 0 || j > pres.m() {
                return Err(Failure::Input(format!("bad index j = {j}")));
            }
            let factor = Poly::parse(text(cert, &["verdict", "NotUFD", "factor"])?, pres.ctx(), pres.field())?;
            let f_j = pres.big_f().eval_var(j - 1, &pres.field().zero());
            let proper = !factor.is_constant() && factor.total_degree() < f_j.total_degree();
            if !proper || f_j.exact_divide(&factor)?.is_none() {
                return Err(fail("factor of F_j"));
            }
        }
        ("expmap", "verified") => {
            let pres = presentation(req)?;
            for key in ["phi1", "phi2"] {
                let phi = ExpMap::from_json(&pres, field_at(cert, &[key, "map"])?)?;
                if exp_verify(&phi)?.status != AxiomStatus::Verified || !phi.is_nontrivial() {
                    return Err(fail(key));
                }
            }
        }
        _ => {}
    }
    Ok(())
}

/// Re-verifies one report: positive certificates are checked on their own,
/// then the command is rerun and must give the same verdict and a
/// byte-identical certificate.
pub fn verify_report(report: &Value, base: &Path) -> Result<String, Failure> {
    let echo = report.get("command").cloned().ok_or_else(|| Failure::Input("report lacks `command`".into()))?;
    let req: Request = serde_json::from_value(echo).map_err(|e| Failure::Input(format!("bad command echo: {e}")))?;
    let req = req.resolve(base)?;
    let verdict =
        report.get("verdict").and_then(Value::as_str).ok_or_else(|| Failure::Input("report lacks `verdict`".into()))?;
    let cert = report.get("certificate").ok_or_else(|| Failure::Input("report lacks `certificate`".into()))?;
    check_certificate(&req, verdict, cert)?;
    let again = dispatch(&req)?;
    if again.verdict != verdict {
        return Err(Failure::Internal(format!("verdict changed from {verdict} to {}", again.verdict)));
    }
    if serde_json::to_string(&again.certificate)? != serde_json::to_string(cert)? {
        return Err(Failure::Internal("recomputed certificate differs".into()));
    }
    Ok(format!("{} {verdict}", req.command))
}
