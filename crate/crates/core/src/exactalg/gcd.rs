//! Multivariate gcd by recursive primitive remainder sequences, plus the
//! univariate gcd/Bézout/squarefree entry points used by Hermite reduction.

use super::frac::QFun;
use super::mpoly::{index_of, MPoly};
use super::upoly::UPoly;
use crate::error::{Error, Result};

fn first_var(a: &MPoly, b: &MPoly) -> Option<usize> {
    (0..a.vars().len()).find(|&i| a.uses_var(i) || b.uses_var(i))
}

/// gcd of the coefficients of `p` viewed as a polynomial in variable `i`.
fn content_in(p: &MPoly, i: usize) -> MPoly {
    let mut g = MPoly::zero(p.vars());
    for c in p.coeffs_in(i).values() {
        g = mpoly_gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn lead_coeff_in(p: &MPoly, i: usize) -> MPoly {
    p.coeffs_in(i).into_iter().next_back().map(|(_, c)| c).unwrap()
}

/// Pseudo-remainder of `a` by `b` in variable `i`.
fn prem(a: &MPoly, b: &MPoly, i: usize) -> MPoly {
    let db = b.degree_in(i).unwrap();
    let lb = lead_coeff_in(b, i);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(i).unwrap() >= db {
        let dr = r.degree_in(i).unwrap();
        let lr = lead_coeff_in(&r, i);
        let mut shift = vec![0; a.vars().len()];
        shift[i] = dr - db;
        let t = lr.mul(&MPoly::term(
            a.vars(),
            super::mpoly::Mono(shift),
            num_traits::One::one(),
        ));
        r = r.mul(&lb).sub(&t.mul(b));
    }
    r
}

/// Greatest common divisor over Q, normalized primitive with positive leading
/// coefficient (so constants normalize to 1; gcd(0, 0) = 0).
pub fn mpoly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let Some(i) = first_var(a, b) else {
        return MPoly::one(a.vars());
    };
    if !a.uses_var(i) {
        return mpoly_gcd(a, &content_in(b, i));
    }
    if !b.uses_var(i) {
        return mpoly_gcd(&content_in(a, i), b);
    }
    let ca = content_in(a, i);
    let cb = content_in(b, i);
    let mut pa = a.div_exact(&ca).unwrap();
    let mut pb = b.div_exact(&cb).unwrap();
    if pa.degree_in(i) < pb.degree_in(i) {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g = loop {
        let r = prem(&pa, &pb, i);
        if r.is_zero() {
            break pb;
        }
        if r.degree_in(i) == Some(0) {
            break MPoly::one(a.vars());
        }
        pa = pb;
        pb = r.div_exact(&content_in(&r, i)).unwrap();
    };
    let g = g.div_exact(&content_in(&g, i)).unwrap();
    mpoly_gcd(&ca, &cb).mul(&g).primitive()
}

/// Squarefree over Q: gcd of `p` and all its partials is constant.
pub fn is_squarefree(p: &MPoly) -> bool {
    let mut g = p.clone();
    for i in 0..p.vars().len() {
        g = mpoly_gcd(&g, &p.derivative(i));
        if g.is_constant() {
            return true;
        }
    }
    g.is_constant()
}

/// Univariate view over Q(param): designated variable `var`, at most one other variable.
fn univariate(p: &MPoly, var: &str) -> Result<UPoly<QFun>> {
    let i = index_of(p.vars(), var)?;
    let others: Vec<usize> = (0..p.vars().len()).filter(|&j| j != i && p.uses_var(j)).collect();
    if others.len() > 1 {
        return Err(Error::UnknownVariable(format!(
            "{} (at most one parameter besides `{}`)",
            p.vars()[others[1]],
            var
        )));
    }
    p.to_upoly_qfun(i, others.first().copied())
}

/// `(g, u, v)` with `u a + v b = g`, `g` monic in `var` over Q(param).
pub fn uni_gcd_bezout(a: &MPoly, b: &MPoly, var: &str) -> Result<(UPoly<QFun>, UPoly<QFun>, UPoly<QFun>)> {
    let ua = univariate(a, var)?;
    let ub = univariate(b, var)?;
    if ua.is_zero() && ub.is_zero() {
        return Err(Error::ZeroInput("gcd of two zero polynomials"));
    }
    Ok(ua.ext_gcd(&ub))
}

pub fn squarefree_decompose(p: &MPoly, var: &str) -> Result<Vec<(UPoly<QFun>, u32)>> {
    let up = univariate(p, var)?;
    if up.is_zero() {
        return Err(Error::ZeroInput("squarefree decomposition of zero"));
    }
    Ok(up.squarefree())
}
