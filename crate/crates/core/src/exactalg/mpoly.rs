//! Sparse multivariate polynomials over Q in graded-lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{fmt_rat, Field, Rat};
use super::frac::QFun;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Exponent vector ordered by total degree, ties broken lexicographically
/// (earlier variables weigh more).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Mono)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

pub type Vars = Arc<[String]>;

pub fn vars_of(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !Zero::is_zero(&c) {
            p.terms.insert(Mono::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, <Rat as One>::one())
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        let i = index_of(vars, name)?;
        Ok(Self::var_index(vars, i))
    }

    pub fn var_index(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::term(vars, Mono(e), <Rat as One>::one())
    }

    pub fn term(vars: &Vars, m: Mono, c: Rat) -> Self {
        assert_eq!(m.0.len(), vars.len());
        let mut p = Self::zero(vars);
        if !Zero::is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if Zero::is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if Zero::is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Rat> {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(<Rat as Zero>::zero());
        }
        self.is_constant()
            .then(|| self.terms.values().next().unwrap().clone())
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| One::is_one(&c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    /// Leading term under grlex.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn same_vars(&self, o: &MPoly) -> bool {
        Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars
    }

    fn check(&self, o: &MPoly) -> Result<()> {
        if self.same_vars(o) {
            Ok(())
        } else {
            Err(Error::VarMismatch(self.vars.to_vec(), o.vars.to_vec()))
        }
    }

    pub fn try_add(&self, o: &MPoly) -> Result<MPoly> {
        self.check(o)?;
        Ok(self.add(o))
    }

    pub fn try_sub(&self, o: &MPoly) -> Result<MPoly> {
        self.check(o)?;
        Ok(self.sub(o))
    }

    pub fn try_mul(&self, o: &MPoly) -> Result<MPoly> {
        self.check(o)?;
        Ok(self.mul(o))
    }

    /// Panics on variable mismatch; see `try_add` for the checked form.
    pub fn add(&self, o: &MPoly) -> MPoly {
        debug_assert!(self.same_vars(o));
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if Zero::is_zero(c) {
            return Self::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &Rat) -> MPoly {
        if Zero::is_zero(c) {
            return Self::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        debug_assert!(self.same_vars(o));
        let mut r = Self::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut r = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            r.add_term(m2, c * Rat::from_integer(BigInt::from(e)));
        }
        r
    }

    /// Exact multivariate division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = Self::zero(&self.vars);
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let t = m.div(&dm)?;
            let tc = c / &dc;
            r = r.sub(&d.mul_term(&t, &tc));
            q.add_term(t, tc);
        }
        Some(q)
    }

    /// Coefficients with respect to variable `i`: `self = Σ_k c_k v_i^k`.
    pub fn coeffs_in(&self, i: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut m2 = m.clone();
            m2.0[i] = 0;
            out.entry(e)
                .or_insert_with(|| Self::zero(&self.vars))
                .add_term(m2, c.clone());
        }
        out
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Scales to coprime integer coefficients with positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut k = Rat::new(l, g);
        if self.leading().unwrap().1.is_negative() {
            k = -k;
        }
        self.scale(&k)
    }

    /// Evaluate with values in any ring given as closures.
    pub fn eval_with<T: Clone>(
        &self,
        vals: &[T],
        from_rat: &dyn Fn(&Rat) -> T,
        add: &dyn Fn(&T, &T) -> T,
        mul: &dyn Fn(&T, &T) -> T,
    ) -> T {
        assert_eq!(vals.len(), self.vars.len());
        let mut powers: Vec<Vec<T>> = vals.iter().map(|v| vec![from_rat(&<Rat as One>::one()), v.clone()]).collect();
        let mut acc = from_rat(&<Rat as Zero>::zero());
        for (m, c) in &self.terms {
            let mut t = from_rat(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = mul(powers[i].last().unwrap(), &vals[i]);
                    powers[i].push(next);
                }
                t = mul(&t, &powers[i][e as usize]);
            }
            acc = add(&acc, &t);
        }
        acc
    }

    /// Re-express over a different variable list (by name). Fails if a used variable is missing.
    pub fn rebase(&self, vars: &Vars) -> Result<MPoly> {
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut r = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.vars[i].clone()))?;
                e[j] += k;
            }
            r.add_term(Mono(e), c.clone());
        }
        Ok(r)
    }

    /// View as a univariate polynomial in variable `main` over Q(`param`).
    /// Any other variable occurring is an error.
    pub fn to_upoly_qfun(&self, main: usize, param: Option<usize>) -> Result<UPoly<QFun>> {
        let mut coeffs: Vec<UPoly<Rat>> = Vec::new();
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && i != main && Some(i) != param {
                    return Err(Error::UnknownVariable(self.vars[i].clone()));
                }
            }
            let k = m.0[main] as usize;
            let j = param.map(|p| m.0[p] as usize).unwrap_or(0);
            if coeffs.len() <= k {
                coeffs.resize(k + 1, UPoly::zero());
            }
            coeffs[k] = coeffs[k].add(&UPoly::monomial(c.clone(), j));
        }
        Ok(UPoly::new(coeffs.into_iter().map(QFun::from_poly).collect()))
    }

    /// Univariate polynomial over Q in variable `i` (no other variable may occur).
    pub fn to_upoly_rat(&self, i: usize) -> Result<UPoly<Rat>> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 && j != i {
                    return Err(Error::UnknownVariable(self.vars[j].clone()));
                }
            }
            let k = m.0[i] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, <Rat as Zero>::zero());
            }
            coeffs[k] = coeffs[k].clone() + c;
        }
        Ok(UPoly::new(coeffs))
    }

    pub fn from_upoly_rat(vars: &Vars, i: usize, p: &UPoly<Rat>) -> MPoly {
        let mut r = Self::zero(vars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = k as u32;
            r.add_term(Mono(e), c.clone());
        }
        r
    }

    /// Inverse of `to_upoly_qfun` for coefficients that are polynomials in the parameter.
    pub fn from_upoly_qfun(vars: &Vars, main: usize, param: Option<usize>, p: &UPoly<QFun>) -> Option<MPoly> {
        let mut r = Self::zero(vars);
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_poly() {
                return None;
            }
            let scale = c.den().lc().inv();
            for (j, a) in c.num().coeffs().iter().enumerate() {
                let mut e = vec![0; vars.len()];
                e[main] += k as u32;
                match param {
                    Some(pi) => e[pi] += j as u32,
                    None if j > 0 => return None,
                    None => {}
                }
                r.add_term(Mono(e), a * &scale);
            }
        }
        Some(r)
    }

    /// Renders with explicit `*`, descending grlex, no unary `+`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            let mono = render_mono(&self.vars, m);
            let body = if mono.is_empty() {
                fmt_rat(&a)
            } else if One::is_one(&a) {
                mono
            } else {
                format!("{}*{}", fmt_rat(&a), mono)
            };
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

    /// True if the rendering needs parentheses as a factor.
    pub fn is_sum(&self) -> bool {
        self.terms.len() > 1
    }
}

fn render_mono(vars: &Vars, m: &Mono) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                vars[i].clone()
            } else {
                format!("{}^{}", vars[i], e)
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn index_of(vars: &Vars, name: &str) -> Result<usize> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

/// Operation selector for `poly_arith`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &MPoly, b: &MPoly, op: ArithOp) -> Result<MPoly> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::rat;

    fn vx() -> Vars {
        vars_of(&["x", "lam"])
    }

    #[test]
    fn difference_of_squares() {
        let v = vx();
        let x = MPoly::var(&v, "x").unwrap();
        let one = MPoly::one(&v);
        let p = poly_arith(&x.add(&one), &x.sub(&one), ArithOp::Mul).unwrap();
        assert_eq!(p.render(), "x^2 - 1");
        assert_eq!(poly_arith(&p, &MPoly::zero(&v), ArithOp::Add).unwrap(), p);
    }

    #[test]
    fn square_of_x2_minus_lam() {
        let v = vx();
        let x = MPoly::var(&v, "x").unwrap();
        let l = MPoly::var(&v, "lam").unwrap();
        let h = x.mul(&x).sub(&l);
        // schoolbook: x^4 - 2 lam x^2 + lam^2
        let expect = MPoly::from_terms(
            &v,
            [
                (Mono(vec![4, 0]), rat(1, 1)),
                (Mono(vec![2, 1]), rat(-2, 1)),
                (Mono(vec![0, 2]), rat(1, 1)),
            ],
        );
        assert_eq!(h.mul(&h), expect);
        assert_eq!(h.mul(&h).render(), "x^4 - 2*x^2*lam + lam^2");
    }

    #[test]
    fn mismatched_variables_rejected() {
        let a = MPoly::one(&vars_of(&["x"]));
        let b = MPoly::one(&vars_of(&["y"]));
        assert!(matches!(poly_arith(&a, &b, ArithOp::Add), Err(Error::VarMismatch(..))));
    }

    #[test]
    fn exact_division() {
        let v = vx();
        let x = MPoly::var(&v, "x").unwrap();
        let l = MPoly::var(&v, "lam").unwrap();
        let h = x.mul(&x).sub(&l);
        let p = h.mul(&x.add(&l));
        assert_eq!(p.div_exact(&h), Some(x.add(&l)));
        assert_eq!(p.add(&MPoly::one(&v)).div_exact(&h), None);
    }
}
