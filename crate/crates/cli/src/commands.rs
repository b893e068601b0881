use hypercert::criteria::{
    aut_check, fibration_check, iso_invariants, ufd_check, zcp_catalog, AutVerdict, FibrationOutcome, IsoVerdict,
    UfdOutcome, AUT_NEGATIVE_FLAG, DK_FLAG,
};
use hypercert::expmap::{
    build_phi1, build_phi2, dk_witness, exp_verify, ml_upper_report, AxiomReport, AxiomStatus, GENERATOR_CHECK_NOTE,
};
use hypercert::graded::{fdk1_chain, graded_presentation, GradedOutcome, GradedPresentation, WeightVector};
use hypercert::plane::{
    is_line, segre_nagata, verify_coordinate_certificate, LineSource, LineVerdict, NotLineWitness, SegreNagataParams,
    StuckReason, REDUCTION_ASSUMPTION,
};
use hypercert::quotient::endo_from_images;
use hypercert::theorem_b::{verify_coordinate_system, StatementsVerdict, SystemCheck};
use hypercert::{
    coordinate_decide, run_pipeline, word_to_auto, CoordinateCertificate, Error, Field, PipelineOptions, PlaneAuto,
    Poly, Presentation, TameWord, VarContext,
};
use serde_json::{json, Value};

use crate::request::Request;
use crate::Failure;

/// Verdict of one command. `exit` is 0, or 2 for an unknown/inconclusive verdict.
pub struct Outcome {
    pub verdict: String,
    pub certificate: Value,
    pub flags: Vec<String>,
    pub exit: i32,
}

impl Outcome {
    fn new(verdict: &str, certificate: Value) -> Outcome {
        Outcome { verdict: verdict.into(), certificate, flags: Vec::new(), exit: 0 }
    }

    fn undecided(mut self) -> Outcome {
        self.exit = 2;
        self
    }

    fn flagged(mut self, flags: impl IntoIterator<Item = String>) -> Outcome {
        self.flags.extend(flags);
        self
    }
}

pub const SEGRE_NAGATA_FLAG: &str = "line property of the Segre-Nagata family is taken as established, not recomputed";

fn mismatch_flag(field: Field) -> String {
    format!("hypothesis-mismatch: the DK-based argument for m > 1 assumes an infinite field; computed over {field}")
}

fn field_of(req: &Request, default: Field) -> Result<Field, Failure> {
    match &req.field {
        Some(s) => Ok(s.parse()?),
        None => Ok(default),
    }
}

fn sn_params(req: &Request) -> Result<Option<SegreNagataParams>, Failure> {
    let Some(list) = &req.sn else { return Ok(None) };
    let p = SegreNagataParams::parse(&list.text())?;
    p.validate()?;
    Ok(Some(p))
}

/// `f` in `k[Z, T]` from `--poly`, or the Segre-Nagata polynomial of `--sn`.
pub(crate) fn plane_poly(req: &Request) -> Result<Poly, Failure> {
    match (&req.poly, sn_params(req)?) {
        (Some(text), _) => Ok(Poly::parse(text, &VarContext::plane(), field_of(req, Field::Rationals)?)?),
        (None, Some(sn)) => Ok(segre_nagata(sn, field_of(req, Field::Prime(sn.p))?)?),
        (None, None) => Err(Failure::Input(format!("`{}` needs --poly or --sn", req.command))),
    }
}

fn presentations(req: &Request) -> Result<Vec<Presentation>, Failure> {
    let presets = req.presets();
    if !presets.is_empty() {
        return presets
            .iter()
            .map(|p| {
                if let Some(f) = &req.field {
                    if f.parse::<Field>()? != p.spec.field.parse::<Field>()? {
                        return Err(Failure::Input(format!(
                            "--field {f} conflicts with preset field {}",
                            p.spec.field
                        )));
                    }
                }
                Ok(Presentation::from_spec(&p.spec)?)
            })
            .collect();
    }
    let (Some(r), Some(big_f)) = (&req.r, &req.big_f) else {
        return Err(Failure::Input(format!("`{}` needs --preset or --r and --F", req.command)));
    };
    let r = r
        .values()?
        .into_iter()
        .map(|x| u32::try_from(x).map_err(|_| Failure::Input(format!("exponent {x} out of range"))))
        .collect::<Result<Vec<u32>, _>>()?;
    let m = req.m.unwrap_or(r.len());
    Ok(vec![Presentation::parse(m, &r, field_of(req, Field::Rationals)?, big_f)?])
}

pub(crate) fn presentation(req: &Request) -> Result<Presentation, Failure> {
    let mut all = presentations(req)?;
    if all.len() != 1 {
        return Err(Failure::Input(format!("`{}` takes one presentation, got {}", req.command, all.len())));
    }
    Ok(all.remove(0))
}

pub fn dispatch(req: &Request) -> Result<Outcome, Failure> {
    match req.command.as_str() {
        "coord" => coord(req),
        "line" => line(req),
        "theorem-b" => theorem_b(req),
        "ufd" => ufd(req),
        "fibration" => fibration(req),
        "expmap" => expmap(req),
        "gr" => gr(req),
        "iso" => iso(req),
        "aut" => aut(req),
        "catalog" => catalog(req),
        other => Err(Failure::Input(format!("unknown command `{other}`"))),
    }
}

fn coord(req: &Request) -> Result<Outcome, Failure> {
    let f = plane_poly(req)?;
    let cert = coordinate_decide(&f, req.degree_cap)?;
    let mut certificate = cert.to_json();
    certificate["f"] = json!(f.to_string());
    Ok(match &cert {
        CoordinateCertificate::Yes { .. } => {
            if !verify_coordinate_certificate(&f, &cert)? {
                return Err(Failure::Internal("coordinate certificate failed re-verification".into()));
            }
            Outcome::new("coordinate", certificate)
        }
        CoordinateCertificate::No { reason, .. } => {
            let flags = (*reason == StuckReason::NoReducingElementary).then(|| REDUCTION_ASSUMPTION.to_string());
            Outcome::new("not-coordinate", certificate).flagged(flags)
        }
    })
}

fn line_source(f: &Poly, src: &LineSource) -> Result<(Value, Vec<String>), Failure> {
    Ok(match src {
        LineSource::Coordinate(cert) => {
            if !verify_coordinate_certificate(f, cert)? {
                return Err(Failure::Internal("coordinate certificate failed re-verification".into()));
            }
            (json!({"source": "coordinate", "certificate": cert.to_json()}), Vec::new())
        }
        LineSource::SegreNagata(p) => (json!({"source": "segre-nagata", "params": p}), vec![SEGRE_NAGATA_FLAG.into()]),
    })
}

fn not_line(f: &Poly, w: &NotLineWitness) -> Result<Value, Failure> {
    Ok(match w {
        NotLineWitness::Factor(g) => {
            if f.exact_divide(g)?.is_none() {
                return Err(Failure::Internal(format!("factor {g} does not divide {f}")));
            }
            json!({"factor": g.to_string()})
        }
        NotLineWitness::NotCoordinateCharZero(stuck) => json!({"not_coordinate_char_zero": stuck.to_string()}),
    })
}

fn line(req: &Request) -> Result<Outcome, Failure> {
    let f = plane_poly(req)?;
    Ok(match is_line(&f)? {
        LineVerdict::Line(src) => {
            let (mut cert, flags) = line_source(&f, &src)?;
            cert["f"] = json!(f.to_string());
            Outcome::new("line", cert).flagged(flags)
        }
        LineVerdict::NotLine(w) => {
            let mut cert = not_line(&f, &w)?;
            cert["f"] = json!(f.to_string());
            Outcome::new("not-line", cert)
        }
        LineVerdict::Unknown(why) => Outcome::new("unknown", json!({"f": f.to_string(), "reason": why})).undecided(),
    })
}

fn theorem_b(req: &Request) -> Result<Outcome, Failure> {
    let pres = presentation(req)?;
    if !pres.is_structured() {
        return Err(Failure::Input(
            "unstructured presentation: F is not of the form f(Z,T) + X1...Xm*g, so theorem-b does not apply; \
             run `hypercert ufd` on the same input to test factoriality"
                .into(),
        ));
    }
    let opts =
        PipelineOptions { degree_bound: req.degree_cap, verify_degree_cap: req.degree_cap, ..Default::default() };
    let report = run_pipeline(&pres, &opts)?;
    let certificate = report.to_json();
    let out = match &report.statements {
        StatementsVerdict::Established => {
            let sys =
                report.witness.as_ref().ok_or_else(|| Failure::Internal("established without a witness".into()))?;
            match verify_coordinate_system(sys, opts.verify_degree_cap)? {
                SystemCheck::Verified(_) => Outcome::new("established", certificate),
                other => return Err(Failure::Internal(format!("coordinate system failed re-verification: {other:?}"))),
            }
        }
        StatementsVerdict::Refuted => Outcome::new("refuted", certificate),
        StatementsVerdict::Inconclusive(_) => Outcome::new("inconclusive", certificate).undecided(),
    };
    Ok(out.flagged(report.flags))
}

fn ufd(req: &Request) -> Result<Outcome, Failure> {
    let pres = presentation(req)?;
    let v = ufd_check(&pres)?;
    Ok(match v.outcome {
        UfdOutcome::Ufd => Outcome::new("ufd", v.to_json()),
        UfdOutcome::NotUfd { .. } => Outcome::new("not-ufd", v.to_json()),
        UfdOutcome::Unknown { .. } => Outcome::new("unknown", v.to_json()).undecided(),
    })
}

fn fibration(req: &Request) -> Result<Outcome, Failure> {
    let pres = presentation(req)?;
    let f = pres.f();
    let v = fibration_check(&pres)?;
    let notes = json!(v.notes);
    Ok(match &v.outcome {
        FibrationOutcome::Fibration(src) => {
            let (line, flags) = line_source(f, src)?;
            Outcome::new("fibration", json!({"f": f.to_string(), "line": line, "notes": notes})).flagged(flags)
        }
        FibrationOutcome::NotFibration(w) => {
            Outcome::new("not-fibration", json!({"f": f.to_string(), "not_line": not_line(f, w)?, "notes": notes}))
        }
        FibrationOutcome::Unknown(why) => {
            Outcome::new("unknown", json!({"f": f.to_string(), "reason": why, "notes": notes})).undecided()
        }
    })
}

fn axioms_json(a: &AxiomReport) -> Value {
    json!({
        "counit": a.counit,
        "coassociative": a.coassociative,
        "relation_preserved": a.relation_preserved,
        "residue": a.residue,
    })
}

fn expmap(req: &Request) -> Result<Outcome, Failure> {
    let pres = presentation(req)?;
    let phi1 = build_phi1(&pres)?;
    let phi2 = build_phi2(&pres)?;
    let (a1, a2) = (exp_verify(&phi1)?, exp_verify(&phi2)?);
    if a1.status != AxiomStatus::Verified || a2.status != AxiomStatus::Verified {
        return Err(Failure::Internal("exponential map failed its axioms".into()));
    }
    let dk = match dk_witness(&pres) {
        Ok(w) => Some(w),
        Err(Error::Precondition(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let ml = ml_upper_report(&pres)?;
    let flags = dk.as_ref().map(|w| w.flags.clone()).unwrap_or_default();
    let certificate = json!({
        "phi1": {"map": phi1.to_json(), "axioms": axioms_json(&a1)},
        "phi2": {"map": phi2.to_json(), "axioms": axioms_json(&a2)},
        "dk": dk.as_ref().map(|w| w.to_json()),
        "ml": ml.to_json(),
        "note": GENERATOR_CHECK_NOTE,
    });
    Ok(Outcome::new("verified", certificate).flagged(flags))
}

fn graded_json(g: &GradedPresentation) -> Value {
    json!({
        "weights": g.weights.0,
        "d": g.data.d,
        "ell": g.data.ell,
        "F_d": g.data.f_d.to_string(),
        "presentation": g.presentation.spec(),
        "generator_weights": g.generator_weights(),
    })
}

fn gr(req: &Request) -> Result<Outcome, Failure> {
    let pres = presentation(req)?;
    let Some(weights) = &req.weights else {
        let chain = fdk1_chain(&pres)?;
        let cert = json!({"chain": [graded_json(&chain.first), graded_json(&chain.last)]});
        return Ok(Outcome::new("graded", cert));
    };
    let w = WeightVector(weights.values()?);
    Ok(match graded_presentation(&pres, &w)? {
        GradedOutcome::Graded(g) => Outcome::new("graded", graded_json(&g)),
        GradedOutcome::HypothesisFails(j) => {
            Outcome::new("hypothesis-fails", json!({"weights": w.0, "divides_top_form": format!("X{j}")}))
        }
        GradedOutcome::Degenerate(why) => Outcome::new("degenerate", json!({"weights": w.0, "reason": why})),
    })
}

fn alpha(req: &Request, field: Field) -> Result<Option<PlaneAuto>, Failure> {
    Ok(match &req.alpha {
        None => None,
        Some(v @ Value::Array(_)) => Some(word_to_auto(&TameWord::from_json(v, field)?, field)?),
        Some(v) => Some(PlaneAuto::from_json(v, field)?),
    })
}

fn iso(req: &Request) -> Result<Outcome, Failure> {
    let ps = presentations(req)?;
    let [a, b] = &ps[..] else {
        return Err(Failure::Input(format!("`iso` takes two presentations, got {}", ps.len())));
    };
    let alpha = alpha(req, a.field())?;
    let rep = iso_invariants(a, b, alpha.as_ref())?;
    let verdict = match rep.verdict {
        IsoVerdict::NotIsomorphic => "not-isomorphic",
        IsoVerdict::ConsistentWith => "consistent-with",
        IsoVerdict::Isomorphic => "isomorphic",
    };
    let mut flags = rep.flags.clone();
    if flags.iter().any(|f| f == DK_FLAG) && !a.field().is_rationals() && a.m().max(b.m()) > 1 {
        flags.push(mismatch_flag(a.field()));
    }
    Ok(Outcome::new(verdict, rep.to_json()).flagged(flags))
}

fn aut(req: &Request) -> Result<Outcome, Failure> {
    let pres = presentation(req)?;
    let images = req.presets()[0]
        .images
        .as_ref()
        .ok_or_else(|| Failure::Input("`aut` needs a preset with an `images` object".into()))?;
    let ctx = pres.ctx();
    let lower: Vec<String> = ctx.names().iter().map(|n| n.to_lowercase()).collect();
    let lower = VarContext::new(&lower)?;
    let gens: Vec<Poly> = (0..pres.ngens()).map(|i| pres.var(i)).collect();
    let mut polys = gens.clone();
    for (name, text) in images {
        let i = ctx
            .index_of(name)
            .or_else(|| lower.index_of(name))
            .ok_or_else(|| Failure::Input(format!("`{name}` is not a generator of A")))?;
        // either spelling of the generators is accepted
        polys[i] = match Poly::parse(text, ctx, pres.field()) {
            Ok(p) => p,
            Err(_) => Poly::parse(text, &lower, pres.field())?.substitute(&gens)?,
        };
    }
    let endo = match endo_from_images(&pres, &polys) {
        Ok(e) => e,
        Err(Error::RelationNotPreserved(res)) => {
            return Err(Failure::Input(format!("images do not define an endomorphism of A; relation residue {res}")))
        }
        Err(e) => return Err(e.into()),
    };
    let rep = aut_check(&pres, &endo, req.degree_cap)?;
    let mut flags = rep.flags.clone();
    if flags.iter().any(|f| f == AUT_NEGATIVE_FLAG) && !pres.field().is_rationals() && pres.m() > 1 {
        flags.push(mismatch_flag(pres.field()));
    }
    Ok(match rep.verdict {
        AutVerdict::Automorphism => Outcome::new("automorphism", rep.to_json()),
        AutVerdict::NotAutomorphism(_) => Outcome::new("not-automorphism", rep.to_json()),
        AutVerdict::Inconclusive(_) => Outcome::new("inconclusive", rep.to_json()).undecided(),
    }
    .flagged(flags))
}

fn catalog(req: &Request) -> Result<Outcome, Failure> {
    let sn = sn_params(req)?.ok_or_else(|| Failure::Input("`catalog` needs --sn p,e,s".into()))?;
    let field = field_of(req, Field::Prime(sn.p))?;
    let count = req.count.unwrap_or(5);
    let m = req.m.unwrap_or(2);
    let entries = zcp_catalog(count, field, sn, m)?;
    let certs: usize = entries.iter().map(|e| e.certificates.len()).sum();
    let separated = entries.iter().flat_map(|e| &e.certificates).all(|c| c.verdict == IsoVerdict::NotIsomorphic);
    if certs != count * (count - 1) / 2 || !separated || entries.iter().any(|e| e.f != entries[0].f) {
        return Err(Failure::Internal("catalog certificates failed re-verification".into()));
    }
    let certificate = json!({
        "f": entries[0].f.to_string(),
        "sn": sn,
        "m": m,
        "entries": entries.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
        "certificate_count": certs,
    });
    Ok(Outcome::new("catalog", certificate))
}
