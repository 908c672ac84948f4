//! Localized polynomial rings `Q[v_1..v_n][1/d_1, ..., 1/d_s]` over a fixed,
//! declared denominator set.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::Rat;
use super::gcd::{is_squarefree, mpoly_gcd};
use super::mpoly::{index_of, MPoly, Vars};
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
pub struct LocRing {
    vars: Vars,
    dens: Vec<MPoly>,
}

pub type Ring = Arc<LocRing>;

impl LocRing {
    /// Validates the denominators: non-constant, squarefree, primitive with
    /// positive leading coefficient (normalized here), pairwise coprime.
    pub fn new(vars: Vars, dens: Vec<MPoly>) -> Result<Ring> {
        let mut normalized = Vec::with_capacity(dens.len());
        for d in dens {
            let d = d.rebase(&vars)?;
            if d.is_constant() {
                return Err(Error::InvalidDenominator(format!("constant denominator {d}")));
            }
            if !is_squarefree(&d) {
                return Err(Error::InvalidDenominator(format!("{d} is not squarefree")));
            }
            normalized.push(d.primitive());
        }
        for i in 0..normalized.len() {
            for j in i + 1..normalized.len() {
                if !mpoly_gcd(&normalized[i], &normalized[j]).is_constant() {
                    return Err(Error::InvalidDenominator(format!(
                        "{} and {} share a factor",
                        normalized[i], normalized[j]
                    )));
                }
            }
        }
        Ok(Arc::new(LocRing { vars, dens: normalized }))
    }

    pub fn polynomial(vars: Vars) -> Ring {
        Arc::new(LocRing { vars, dens: Vec::new() })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn dens(&self) -> &[MPoly] {
        &self.dens
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        index_of(&self.vars, name)
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `num / Π d_i^{e_i}` in canonical form: no `d_i` with `e_i > 0` divides `num`.
#[derive(Clone, Debug)]
pub struct LocElem {
    ring: Ring,
    num: MPoly,
    exps: Vec<u32>,
}

impl PartialEq for LocElem {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.exps == o.exps && same_ring(&self.ring, &o.ring)
    }
}

impl Eq for LocElem {}

impl LocElem {
    pub fn zero(ring: &Ring) -> Self {
        LocElem {
            ring: ring.clone(),
            num: MPoly::zero(&ring.vars),
            exps: vec![0; ring.dens.len()],
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_poly(ring, MPoly::one(&ring.vars))
    }

    pub fn constant(ring: &Ring, c: Rat) -> Self {
        Self::from_poly(ring, MPoly::constant(&ring.vars, c))
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, Rat::from_integer(c.into()))
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        Ok(Self::from_poly(ring, MPoly::var(&ring.vars, name)?))
    }

    pub fn var_index(ring: &Ring, i: usize) -> Self {
        Self::from_poly(ring, MPoly::var_index(&ring.vars, i))
    }

    pub fn from_poly(ring: &Ring, p: MPoly) -> Self {
        debug_assert!(p.vars() == ring.vars());
        LocElem {
            ring: ring.clone(),
            num: p,
            exps: vec![0; ring.dens.len()],
        }
    }

    /// `1 / d_i^k` for the `i`-th declared denominator.
    pub fn den_power_inv(ring: &Ring, i: usize, k: u32) -> Self {
        let mut exps = vec![0; ring.dens.len()];
        exps[i] = k;
        LocElem {
            ring: ring.clone(),
            num: MPoly::one(&ring.vars),
            exps,
        }
    }

    /// Builds and canonicalizes `num / Π d_i^{exps_i}`.
    pub fn from_parts(ring: &Ring, num: MPoly, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), ring.dens.len());
        let mut e = LocElem { ring: ring.clone(), num, exps };
        e.canonicalize_in_place();
        e
    }

    fn canonicalize_in_place(&mut self) {
        if self.num.is_zero() {
            self.exps.iter_mut().for_each(|e| *e = 0);
            return;
        }
        for i in 0..self.exps.len() {
            while self.exps[i] > 0 {
                match self.num.div_exact(&self.ring.dens[i]) {
                    Some(q) => {
                        self.num = q;
                        self.exps[i] -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    /// Re-canonicalizes; canonical values are returned unchanged.
    pub fn canonical(&self) -> Self {
        let mut e = self.clone();
        e.canonicalize_in_place();
        e
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// The denominator `Π d_i^{e_i}` as a polynomial.
    pub fn den_poly(&self) -> MPoly {
        let mut d = MPoly::one(&self.ring.vars);
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                d = d.mul(&self.ring.dens[i].pow(e));
            }
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0) && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if same_ring(&self.ring, &o.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn lift_to(&self, exps: &[u32]) -> MPoly {
        let mut n = self.num.clone();
        for (i, (&have, &want)) in self.exps.iter().zip(exps).enumerate() {
            if want > have {
                n = n.mul(&self.ring.dens[i].pow(want - have));
            }
        }
        n
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &o.ring));
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let exps: Vec<u32> = self.exps.iter().zip(&o.exps).map(|(a, b)| *a.max(b)).collect();
        let num = self.lift_to(&exps).add(&o.lift_to(&exps));
        Self::from_parts(&self.ring, num, exps)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        LocElem {
            ring: self.ring.clone(),
            num: self.num.neg(),
            exps: self.exps.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &o.ring));
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ring);
        }
        let exps = self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect();
        Self::from_parts(&self.ring, self.num.mul(&o.num), exps)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        LocElem {
            ring: self.ring.clone(),
            num: self.num.scale(c),
            exps: self.exps.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add(o))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul(o))
    }

    /// Exact partial derivative, quotient rule on the declared denominators.
    pub fn derivative(&self, i: usize) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(&self.ring, self.num.derivative(i));
        }
        // d(N / Π d^e) = (N' Π d - N Σ e_j d_j' Π_{k≠j} d_k) / Π d^{e+1}, over j with e_j > 0
        let active: Vec<usize> = (0..self.exps.len()).filter(|&j| self.exps[j] > 0).collect();
        let prod_all = active
            .iter()
            .fold(MPoly::one(&self.ring.vars), |acc, &j| acc.mul(&self.ring.dens[j]));
        let mut num = self.num.derivative(i).mul(&prod_all);
        for &j in &active {
            let others = active
                .iter()
                .filter(|&&k| k != j)
                .fold(MPoly::one(&self.ring.vars), |acc, &k| acc.mul(&self.ring.dens[k]));
            let term = self
                .num
                .mul(&self.ring.dens[j].derivative(i))
                .mul(&others)
                .scale(&Rat::from_integer(self.exps[j].into()));
            num = num.sub(&term);
        }
        let exps = self
            .exps
            .iter()
            .map(|&e| if e > 0 { e + 1 } else { 0 })
            .collect();
        Self::from_parts(&self.ring, num, exps)
    }

    pub fn partial(&self, var: &str) -> Result<Self> {
        let i = self.ring.var_index(var)?;
        Ok(self.derivative(i))
    }

    /// Inverse, provided the element is a unit (constant times declared denominators).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotAUnit("0".into()));
        }
        let mut n = self.num.clone();
        let mut extra = vec![0u32; self.exps.len()];
        for (i, d) in self.ring.dens.iter().enumerate() {
            while let Some(q) = n.div_exact(d) {
                n = q;
                extra[i] += 1;
            }
        }
        let c = n
            .constant_value()
            .ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        Ok(LocElem::from_parts(&self.ring, self.den_poly(), extra).scale(&c.recip()))
    }

    /// `self / o` when `o` is a unit.
    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul(&o.inv()?))
    }

    /// `num / den` for polynomials, `den` a unit of this ring.
    pub fn from_fraction(ring: &Ring, num: MPoly, den: &MPoly) -> Result<Self> {
        let d = Self::from_poly(ring, den.clone()).inv()?;
        Ok(Self::from_poly(ring, num).mul(&d))
    }

    /// Substitute `vals[k]` for the `k`-th variable (ring homomorphism into another
    /// localized ring). Denominators must map to units.
    pub fn substitute(&self, target: &Ring, vals: &[LocElem]) -> Result<Self> {
        let from_rat = |c: &Rat| LocElem::constant(target, c.clone());
        let num = self
            .num
            .eval_with(vals, &from_rat, &|a, b| a.add(b), &|a, b| a.mul(b));
        let mut out = num;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let d = self.ring.dens[i].eval_with(vals, &from_rat, &|a, b| a.add(b), &|a, b| a.mul(b));
            let dinv = d.inv().map_err(|_| {
                Error::InvalidMap(format!(
                    "denominator {} does not map to a unit",
                    self.ring.dens[i]
                ))
            })?;
            out = out.mul(&dinv.pow(e));
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.is_polynomial() {
            return self.num.render();
        }
        // clear rational denominators of the numerator into the printed denominator
        let q = self
            .num
            .terms()
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self.num.scale(&Rat::from_integer(q.clone()));
        let mut factors: Vec<String> = Vec::new();
        if !q.is_one() {
            factors.push(q.to_string());
        }
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let d = &self.ring.dens[i];
            let s = d.render();
            let base = if d.is_sum() || s.contains('*') { format!("({s})") } else { s };
            factors.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        let ns = num.render();
        let numer = if num.is_sum() { format!("({ns})") } else { ns };
        if factors.len() == 1 {
            format!("{numer}/{}", factors[0])
        } else {
            format!("{numer}/({})", factors.join("*"))
        }
    }
}

impl fmt::Display for LocElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::mpoly::vars_of;
    use crate::exactalg::parse::parse_loc;

    fn ring() -> Ring {
        let v = vars_of(&["x", "lam"]);
        let x = MPoly::var(&v, "x").unwrap();
        let l = MPoly::var(&v, "lam").unwrap();
        LocRing::new(v, vec![x.mul(&x).sub(&l), l]).unwrap()
    }

    #[test]
    fn rejects_bad_denominators() {
        let v = vars_of(&["x", "y"]);
        let x = MPoly::var(&v, "x").unwrap();
        let y = MPoly::var(&v, "y").unwrap();
        assert!(LocRing::new(v.clone(), vec![MPoly::one(&v)]).is_err());
        assert!(LocRing::new(v.clone(), vec![x.mul(&x)]).is_err());
        assert!(LocRing::new(v.clone(), vec![x.mul(&y), x.add(&y).mul(&x)]).is_err());
        assert!(LocRing::new(v, vec![x, y]).is_ok());
    }

    #[test]
    fn quotient_rule_example() {
        let r = ring();
        let e = parse_loc(&r, "1/(x^2 - lam)").unwrap();
        let d = e.partial("lam").unwrap();
        assert_eq!(d, e.mul(&e));
        assert_eq!(parse_loc(&r, "x^2 - lam").unwrap().partial("x").unwrap(), parse_loc(&r, "2*x").unwrap());
        assert!(LocElem::from_int(&r, 7).partial("x").unwrap().is_zero());
        assert!(e.partial("y").is_err());
    }

    #[test]
    fn canonical_form_cancels_declared_factors() {
        let r = ring();
        let h = parse_loc(&r, "x^2 - lam").unwrap();
        let e = parse_loc(&r, "1/(x^2 - lam)^2").unwrap();
        assert_eq!(h.mul(&e), parse_loc(&r, "1/(x^2 - lam)").unwrap());
        assert_eq!(h.mul(&h).mul(&e), LocElem::one(&r));
        assert_eq!(e.canonical(), e);
    }

    #[test]
    fn units_and_non_units() {
        let r = ring();
        let u = parse_loc(&r, "3*lam*(x^2 - lam)").unwrap();
        assert_eq!(u.mul(&u.inv().unwrap()), LocElem::one(&r));
        assert!(parse_loc(&r, "x").unwrap().inv().is_err());
    }

    #[test]
    fn render_round_trips() {
        let r = ring();
        for s in ["1/(x^2 - lam)^2", "(x + 1)/(lam*(x^2 - lam))", "-1/2*x/lam", "-x/(2*lam)", "x^2 - lam"] {
            let e = parse_loc(&r, s).unwrap();
            assert_eq!(parse_loc(&r, &e.render()).unwrap(), e, "{s} -> {}", e.render());
        }
        assert_eq!(parse_loc(&r, "-1/2*x/lam").unwrap().render(), "-x/(2*lam)");
        assert_eq!(parse_loc(&r, "1/(x^2 - lam)^2").unwrap().render(), "1/(x^2 - lam)^2");
    }
}
