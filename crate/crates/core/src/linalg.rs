//! Dense linear algebra over a [`Field`]: one solution of `A x = b`, and
//! expressing a polynomial as a linear combination of given polynomials.

use std::collections::HashMap;

use crate::context::VarContext;
use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::poly::{Monomial, Poly};

/// Solves `rows * x = rhs` for one solution (free variables set to zero).
pub fn solve(field: Field, n: usize, mut rows: Vec<Vec<Scalar>>, rhs: Vec<Scalar>) -> Option<Vec<Scalar>> {
    for (r, b) in rows.iter_mut().zip(rhs) {
        r.push(b);
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(row, p);
        let inv = field.inv(&rows[row][col]).unwrap();
        for v in rows[row].iter_mut().skip(col) {
            *v = field.mul(v, &inv);
        }
        let pivot_row = rows[row].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i == row || field.is_zero(&r[col]) {
                continue;
            }
            let factor = r[col].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                if !field.is_zero(pv) {
                    r[j] = field.sub(&r[j], &field.mul(&factor, pv));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    if rows[row..].iter().any(|r| !field.is_zero(&r[n])) {
        return None;
    }
    let mut x = vec![field.zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Some(x)
}

/// Coefficients `c` with `sum c_i * basis_i == target`, if any exist.
pub fn solve_combination(target: &Poly, basis: &[Poly]) -> Option<Vec<Scalar>> {
    let field = target.field();
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for p in basis.iter().chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            let k = index.len();
            index.entry(m.clone()).or_insert(k);
        }
    }
    let mut rows = vec![vec![field.zero(); basis.len()]; index.len()];
    for (j, p) in basis.iter().enumerate() {
        for (m, c) in p.terms() {
            rows[index[m]][j] = c.clone();
        }
    }
    let mut rhs = vec![field.zero(); index.len()];
    for (m, c) in target.terms() {
        rhs[index[m]] = c.clone();
    }
    solve(field, basis.len(), rows, rhs)
}

/// All exponent vectors in `n` variables of total degree at most `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Determinant of `(d p_i / d x_(vars[j]))`, square in `polys` and `vars`.
pub fn jacobian_determinant(polys: &[Poly], vars: &[usize]) -> Poly {
    let n = polys.len();
    assert_eq!(n, vars.len(), "Jacobian must be square");
    let (ctx, field) = (polys[0].ctx().clone(), polys[0].field());
    let jac: Vec<Vec<Poly>> = polys.iter().map(|p| vars.iter().map(|&j| p.derivative(j)).collect()).collect();
    // expansion over column subsets: det[S] uses rows 0..|S| and columns S
    let mut det: HashMap<u64, Poly> = HashMap::new();
    det.insert(0, Poly::one(&ctx, field));
    for row in 0..n {
        let mut next = HashMap::new();
        for (&set, minor) in &det {
            if minor.is_zero() {
                continue;
            }
            for col in 0..n {
                if set & (1 << col) != 0 || jac[row][col].is_zero() {
                    continue;
                }
                // sign from the number of chosen columns after `col`
                let after = (set >> (col + 1)).count_ones();
                let mut term = minor.mul(&jac[row][col]);
                if after % 2 == 1 {
                    term = term.neg();
                }
                let e = next.entry(set | (1 << col)).or_insert_with(|| Poly::zero(&ctx, field));
                *e = e.add(&term);
            }
        }
        det = next;
    }
    det.remove(&((1u64 << n) - 1)).unwrap_or_else(|| Poly::zero(&ctx, field))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Preimages {
    /// Expressions in `S1..Sk` (one symbol per generator), one per target.
    Found(Vec<Poly>),
    /// Indices of targets with no expression up to the degree cap.
    Missing(Vec<usize>),
    /// The linear system at this degree would exceed the unknown budget.
    TooLarge(u32),
}

/// Writes each target as a polynomial in `gens` by undetermined
/// coefficients, raising the degree until all are found or `cap` is hit.
/// Found expressions are re-checked by substitution.
pub fn express_in(targets: &[Poly], gens: &[Poly], cap: u32, max_unknowns: usize) -> Result<Preimages> {
    let Some(first) = targets.first().or(gens.first()) else {
        return Ok(Preimages::Found(Vec::new()));
    };
    let (ctx, field) = (first.ctx().clone(), first.field());
    let k = gens.len();
    let sym = VarContext::symbols(k);
    let mut found: Vec<Option<Poly>> = vec![None; targets.len()];
    let mut powers: Vec<Vec<Poly>> = gens.iter().map(|_| vec![Poly::one(&ctx, field)]).collect();
    for d in 0..=cap {
        if found.iter().all(Option::is_some) {
            break;
        }
        let exps = monomials_up_to(k, d);
        if exps.len() > max_unknowns {
            return Ok(Preimages::TooLarge(d));
        }
        let basis: Vec<Poly> = exps
            .iter()
            .map(|e| {
                e.iter().enumerate().fold(Poly::one(&ctx, field), |acc, (j, &n)| {
                    while powers[j].len() <= n as usize {
                        let next = powers[j].last().unwrap().mul(&gens[j]);
                        powers[j].push(next);
                    }
                    acc.mul(&powers[j][n as usize])
                })
            })
            .collect();
        for (target, slot) in targets.iter().zip(found.iter_mut()) {
            if slot.is_some() {
                continue;
            }
            if let Some(coeffs) = solve_combination(target, &basis) {
                let terms = exps.iter().zip(coeffs).map(|(e, c)| (Monomial::new(e.iter().copied().collect()), c));
                *slot = Some(Poly::from_terms(&sym, field, terms));
            }
        }
    }
    if found.iter().any(Option::is_none) {
        return Ok(Preimages::Missing(found.iter().enumerate().filter(|(_, f)| f.is_none()).map(|(i, _)| i).collect()));
    }
    let exprs: Vec<Poly> = found.into_iter().map(Option::unwrap).collect();
    for (e, t) in exprs.iter().zip(targets) {
        if e.substitute(gens)? != *t {
            return Err(crate::error::Error::Internal("solved expression failed substitution".into()));
        }
    }
    Ok(Preimages::Found(exprs))
}
