//! Weighted filtrations on `A` induced by integer weights on `x_1..x_m`
//! (`z`, `t` weight zero), their top-form map and associated graded rings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quotient::{laurent_embed, AElem, Laurent, Presentation};

/// Flag attached to graded reports.
pub const INDUCED_MAP_FLAG: &str =
    "induced exponential map on gr(A): existence assumed from the filtration, not re-verified";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl FromStr for WeightVector {
    type Err = Error;

    /// Parses `e1,e2,...`.
    fn from_str(s: &str) -> Result<WeightVector> {
        s.split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(WeightVector)
            .map_err(|_| Error::InvalidParameters(format!("bad weight vector `{s}`")))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedData {
    /// Weighted degree of `F`.
    pub d: i64,
    /// Weighted degree of `y`: `d - sum r_i e_i`.
    pub ell: i64,
    /// Top weighted form of `F`.
    pub f_d: Poly,
}

fn check_weights(pres: &Presentation, w: &WeightVector) -> Result<()> {
    if w.0.len() != pres.m() {
        return Err(Error::InvalidParameters(format!("weight vector has length {}, expected {}", w.0.len(), pres.m())));
    }
    Ok(())
}

/// Weights of `x_1..x_m, y, z, t` given `ell`.
pub fn generator_weights(w: &WeightVector, ell: i64) -> Vec<i64> {
    w.0.iter().copied().chain([ell, 0, 0]).collect()
}

pub fn graded_data(pres: &Presentation, w: &WeightVector) -> Result<GradedData> {
    check_weights(pres, w)?;
    let (d, f_d) = pres.big_f().top_form(&generator_weights(w, 0))?;
    let ell = d - pres.r().iter().zip(&w.0).map(|(&r, &e)| r as i64 * e).sum::<i64>();
    Ok(GradedData { d, ell, f_d })
}

/// `gr(A)` presented as `X^r Y - F_d`.
#[derive(Clone, Debug)]
pub struct GradedPresentation {
    pub presentation: Presentation,
    pub weights: WeightVector,
    pub data: GradedData,
}

impl GradedPresentation {
    pub fn generator_weights(&self) -> Vec<i64> {
        generator_weights(&self.weights, self.data.ell)
    }
}

#[derive(Clone, Debug)]
pub enum GradedOutcome {
    Graded(GradedPresentation),
    /// `X_j` divides `F_d` (1-based `j`).
    HypothesisFails(usize),
    /// No `X_j` divides `F_d`, yet `F_d` vanishes at `X = 0`.
    Degenerate(String),
}

impl GradedOutcome {
    pub fn graded(self) -> Option<GradedPresentation> {
        match self {
            GradedOutcome::Graded(g) => Some(g),
            _ => None,
        }
    }
}

pub fn graded_presentation(pres: &Presentation, w: &WeightVector) -> Result<GradedOutcome> {
    let data = graded_data(pres, w)?;
    let ctx = pres.ctx();
    for j in 0..pres.m() {
        let xj = Poly::var(ctx, pres.field(), j);
        if data.f_d.exact_divide(&xj)?.is_some() {
            return Ok(GradedOutcome::HypothesisFails(j + 1));
        }
    }
    match Presentation::new(pres.m(), pres.r(), &data.f_d) {
        Ok(p) => Ok(GradedOutcome::Graded(GradedPresentation { presentation: p, weights: w.clone(), data })),
        Err(Error::InvalidPresentation(why)) => Ok(GradedOutcome::Degenerate(why)),
        Err(e) => Err(e),
    }
}

/// The two-step regrading with weights `(-1, 0, .., 0)` and then
/// `(-1, .., -1)`, ending at `X^r Y - f`.
#[derive(Clone, Debug)]
pub struct Fdk1Chain {
    pub first: GradedPresentation,
    pub last: GradedPresentation,
}

impl Fdk1Chain {
    /// Final generator weights: `x_i -> -1`, `y -> r_1 + .. + r_m`, `z, t -> 0`.
    pub fn generator_weights(&self) -> Vec<i64> {
        self.last.generator_weights()
    }
}

pub fn fdk1_chain(pres: &Presentation) -> Result<Fdk1Chain> {
    let m = pres.m();
    let mut w1 = vec![0; m];
    w1[0] = -1;
    let step = |p: &Presentation, w: Vec<i64>| match graded_presentation(p, &WeightVector(w))? {
        GradedOutcome::Graded(g) => Ok(g),
        other => Err(Error::Internal(format!("regrading broke the weight hypothesis: {other:?}"))),
    };
    let first = step(pres, w1)?;
    let last = step(&first.presentation, vec![-1; m])?;
    if *last.presentation.big_f() != pres.f().to_context(pres.ctx())? {
        return Err(Error::Internal("regrading chain did not end at f".into()));
    }
    Ok(Fdk1Chain { first, last })
}

/// Weighted degree of a nonzero element together with its top form in
/// `gr(A)`, presented by `gr`.
///
/// Normal-form monomials stay linearly independent after taking top forms
/// when `gr` is a valid graded presentation, so the top form of the normal
/// representative (with `y` weighted by `ell`) is the image in `gr(A)`.
pub fn rho(a: &AElem, gr: &GradedPresentation) -> Result<(i64, AElem)> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (deg, top) = a.rep().top_form(&gr.generator_weights())?;
    Ok((deg, gr.presentation.normal_form(&top)?))
}

/// Top form through the Laurent embedding `y -> F / x^r`: works for any
/// weights, without a graded presentation.
pub fn rho_laurent(a: &AElem, w: &WeightVector) -> Result<(i64, Laurent)> {
    check_weights(a.presentation(), w)?;
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let l = laurent_embed(a);
    let (deg, top) = l.numer.top_form(&generator_weights(w, 0))?;
    let shift: i64 = l.denom.iter().zip(&w.0).map(|(&d, &e)| d as i64 * e).sum();
    Ok((deg - shift, Laurent::new(top, l.denom)))
}
