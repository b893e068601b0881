//! Seeded generators for polynomials and presentations, used by fuzzing,
//! property tests and the batch front-ends.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::VarContext;
use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::plane::{random_tame_word, word_to_auto};
use crate::poly::{Monomial, Poly};
use crate::quotient::Presentation;

pub struct Sampler {
    rng: ChaCha8Rng,
    field: Field,
}

impl Sampler {
    pub fn new(seed: u64, field: Field) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), field }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform integer in `lo..=hi` mapped into the field.
    pub fn scalar(&mut self, lo: i64, hi: i64) -> Scalar {
        self.field.from_i64(self.rng.random_range(lo..=hi))
    }

    pub fn nonzero_scalar(&mut self, lo: i64, hi: i64) -> Scalar {
        loop {
            let c = self.scalar(lo, hi);
            if !self.field.is_zero(&c) {
                return c;
            }
        }
    }

    /// Random monomial in `vars` of total degree at most `max_deg`.
    pub fn monomial(&mut self, n: usize, vars: &[usize], max_deg: u32) -> Monomial {
        let d = self.rng.random_range(0..=max_deg);
        let mut exps = vec![0u32; n];
        for _ in 0..d {
            exps[vars[self.rng.random_range(0..vars.len())]] += 1;
        }
        Monomial::new(exps.into_iter().collect())
    }

    /// Sum of up to `nterms` random terms with coefficients in `-3..=3`.
    pub fn poly(&mut self, ctx: &VarContext, vars: &[usize], max_deg: u32, nterms: usize) -> Poly {
        let mut p = Poly::zero(ctx, self.field);
        for _ in 0..nterms {
            let m = self.monomial(ctx.len(), vars, max_deg);
            let c = self.nonzero_scalar(-3, 3);
            p = p.add(&Poly::monomial(ctx, self.field, m, c));
        }
        p
    }

    /// Nonzero variant of [`Sampler::poly`].
    pub fn nonzero_poly(&mut self, ctx: &VarContext, vars: &[usize], max_deg: u32, nterms: usize) -> Poly {
        loop {
            let p = self.poly(ctx, vars, max_deg, nterms);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A coordinate of `k[Z, T]`: the first component of a random tame word.
    pub fn coordinate(&mut self, max_moves: usize, degree_cap: u32) -> Result<Poly> {
        let seed = self.rng.random();
        let w = random_tame_word(seed, max_moves, &[-2, -1, 0, 1, 2], degree_cap, self.field);
        Ok(word_to_auto(&w, self.field)?.p)
    }

    /// `F = f + X_1...X_m g` with `m` in `1..=max_m`, each `r_i` drawn from
    /// `r_choices`, `deg g <= g_deg` and `deg_Z g <= g_zdeg`.
    pub fn structured_presentation(
        &mut self,
        f: &Poly,
        max_m: usize,
        r_choices: &[u32],
        g_deg: u32,
        g_zdeg: u32,
    ) -> Result<Presentation> {
        let m = self.rng.random_range(1..=max_m);
        let r: Vec<u32> = (0..m).map(|_| r_choices[self.rng.random_range(0..r_choices.len())]).collect();
        let ctx = VarContext::presentation(m);
        let vars: Vec<usize> = (0..m).chain([m + 1, m + 2]).collect();
        let g = loop {
            let g = self.poly(&ctx, &vars, g_deg, 3);
            if g.degree_in(m + 1) <= g_zdeg {
                break g;
            }
        };
        let u = Poly::monomial(
            &ctx,
            self.field,
            Monomial::new(std::iter::repeat_n(1, m).chain([0; 3]).collect()),
            self.field.one(),
        );
        Presentation::new(m, &r, &f.to_context(&ctx)?.add(&u.mul(&g)))
    }

    /// Random normal-form element of `A`.
    pub fn element(&mut self, pres: &Presentation, max_deg: u32, nterms: usize) -> Result<crate::quotient::AElem> {
        let vars: Vec<usize> = (0..pres.ngens()).collect();
        let p = self.poly(pres.ctx(), &vars, max_deg, nterms);
        pres.normal_form(&p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let ctx = VarContext::plane();
        let a = Sampler::new(3, Field::Rationals).poly(&ctx, &[0, 1], 4, 5);
        let b = Sampler::new(3, Field::Rationals).poly(&ctx, &[0, 1], 4, 5);
        assert_eq!(a, b);
        let mut s = Sampler::new(9, Field::Prime(5));
        let f = s.coordinate(4, 3).unwrap();
        let p = s.structured_presentation(&f, 2, &[2, 3], 3, 1).unwrap();
        assert!(p.is_structured());
        assert_eq!(p.f(), &f);
    }
}
