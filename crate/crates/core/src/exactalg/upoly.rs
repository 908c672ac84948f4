//! Dense univariate polynomials over an exact field.

use super::field::{fmt_rat, rat_is_negative, DifferentialField, Field, Rat};

/// Dense polynomial, little-endian coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// `c * x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().inv())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`. Panics if `d == 0`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let inv_lc = d.lc().inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = r[k].mul(&inv_lc);
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = r[idx].sub(&c.mul(dc));
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Formal derivative in the polynomial variable.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&F::from_rat(&Rat::from_integer((k as i64).into()))))
                .collect(),
        )
    }

    pub fn eval(&self, t: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t).add(c);
        }
        acc
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        F::poly_gcd(self, o)
    }

    pub fn euclid_gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, u, v)` with `u*self + v*o = g`, `g` monic, and the
    /// cofactors reduced so that `deg u < deg(o/g)` whenever `o/g` is non-constant.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        assert!(!(self.is_zero() && o.is_zero()), "gcd(0, 0) is undefined");
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        let k = r0.lc().inv();
        let (g, mut u, mut v) = (r0.scale(&k), s0.scale(&k), t0.scale(&k));
        if !self.is_zero() && !o.is_zero() {
            let og = o.div_exact(&g).expect("gcd divides");
            if og.degree().unwrap_or(0) > 0 {
                let (q, ur) = u.div_rem(&og);
                let ag = self.div_exact(&g).expect("gcd divides");
                v = v.add(&q.mul(&ag));
                u = ur;
            }
        }
        (g, u, v)
    }

    /// Yun's squarefree decomposition of a nonzero polynomial: monic, squarefree,
    /// pairwise coprime factors with multiplicities; their product is `self` up to a unit.
    pub fn squarefree(&self) -> Vec<(Self, u32)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let f = self.monic();
        if f.degree() == Some(0) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.div_exact(&a).unwrap();
        let mut c = fp.div_exact(&a).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).unwrap();
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

impl<F: DifferentialField> UPoly<F> {
    /// Apply the coefficient derivation termwise (d/dλ when coefficients lie in Q(λ)).
    pub fn derive_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.derive()).collect())
    }
}

/// Rendering with an explicit variable-name stack (outermost variable first).
pub trait Render {
    fn render(&self, vars: &[&str]) -> String;
    /// True if rendering is a sum that needs parentheses inside a product.
    fn is_sum(&self) -> bool;
    /// True if the rendering is exactly `1`.
    fn is_unit_one(&self) -> bool;
    /// True if the rendering starts with a minus sign.
    fn starts_negative(&self) -> bool;
}

impl Render for Rat {
    fn render(&self, _vars: &[&str]) -> String {
        fmt_rat(self)
    }
    fn is_sum(&self) -> bool {
        false
    }
    fn is_unit_one(&self) -> bool {
        Field::is_one(self)
    }
    fn starts_negative(&self) -> bool {
        rat_is_negative(self)
    }
}

impl<F: Field + Render> Render for UPoly<F> {
    fn render(&self, vars: &[&str]) -> String {
        let (v, rest) = vars.split_first().expect("variable name for polynomial");
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{k}"),
            };
            let (neg, body) = signed_term(c, rest, &mono);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
    fn is_sum(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
            || self.coeffs.iter().any(|c| !c.is_zero() && c.is_sum())
    }
    fn is_unit_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_unit_one()
    }
    fn starts_negative(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|c| c.starts_negative() && !c.is_sum())
    }
}

/// Renders `c * mono` as (is_negative, body-without-sign).
fn signed_term<F: Field + Render>(c: &F, rest: &[&str], mono: &str) -> (bool, String) {
    if c.is_sum() {
        let cs = c.render(rest);
        if mono.is_empty() {
            return (false, cs);
        }
        return (false, format!("({cs})*{mono}"));
    }
    let neg = c.starts_negative();
    let abs = if neg { c.neg() } else { c.clone() };
    let cs = abs.render(rest);
    let body = if mono.is_empty() {
        cs
    } else if abs.is_unit_one() {
        mono.to_string()
    } else {
        format!("{cs}*{mono}")
    };
    (neg, body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::rat;

    fn p(c: &[i64]) -> UPoly<Rat> {
        UPoly::new(c.iter().map(|&k| rat(k, 1)).collect())
    }

    #[test]
    fn squarefree_visible_factorization() {
        // x^2 (x - 1) = x^3 - x^2
        let f = p(&[0, 0, -1, 1]);
        let sf = f.squarefree();
        assert_eq!(sf, vec![(p(&[-1, 1]), 1), (p(&[0, 1]), 2)]);
    }

    #[test]
    fn ext_gcd_identity_and_degree_bounds() {
        let a = p(&[1, 0, 3, 1]);
        let b = p(&[-2, 1, 1]);
        let (g, u, v) = a.ext_gcd(&b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        assert!(u.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let a = p(&[0, 2]);
        let (g, u, v) = a.ext_gcd(&UPoly::zero());
        assert_eq!(g, p(&[0, 1]));
        assert_eq!(u, UPoly::constant(rat(1, 2)));
        assert!(v.is_zero());
    }

    #[test]
    fn render_descending() {
        assert_eq!(p(&[1, 0, -1]).render(&["x"]), "-x^2 + 1");
        assert_eq!(p(&[0, 3]).render(&["x"]), "3*x");
    }
}
