//! Rational functions `F(t)` over an exact field.
//!
//! `QFun = Frac<Rat>` is Q(λ); `RatFun = Frac<QFun>` is Q(λ)(x), the Hermite workspace.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{DifferentialField, Field, Rat};
use super::upoly::{Render, UPoly};

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0/1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frac<F: Field> {
    num: UPoly<F>,
    den: UPoly<F>,
}

/// Q(λ).
pub type QFun = Frac<Rat>;
/// Q(λ)(x): univariate in the fiber variable over the base function field.
pub type RatFun = Frac<QFun>;

impl<F: Field> Frac<F> {
    pub fn new(num: UPoly<F>, den: UPoly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::from_poly(UPoly::zero());
        }
        let g = num.gcd(&den);
        let n = num.div_exact(&g).unwrap();
        let d = den.div_exact(&g).unwrap();
        let k = d.lc().inv();
        Frac {
            num: n.scale(&k),
            den: d.scale(&k),
        }
    }

    pub fn from_poly(p: UPoly<F>) -> Self {
        Frac {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    /// The variable `t` itself.
    pub fn var() -> Self {
        Self::from_poly(UPoly::x())
    }

    pub fn num(&self) -> &UPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<F> {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// d/dt.
    pub fn derivative(&self) -> Self {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den))
    }

    pub fn pow(&self, k: u32) -> Self {
        Frac {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }
}

impl<F: DifferentialField> Frac<F> {
    /// Derivation acting on the coefficient field only (∂/∂λ on Q(λ)(x)).
    pub fn derive_coeffs(&self) -> Self {
        let n = self
            .num
            .derive_coeffs()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derive_coeffs()));
        Self::new(n, self.den.mul(&self.den))
    }
}

impl<F: Field> Field for Frac<F> {
    fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(UPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }
    fn from_rat(r: &Rat) -> Self {
        Self::constant(F::from_rat(r))
    }
}

impl<F: Field> DifferentialField for Frac<F> {
    fn derive(&self) -> Self {
        self.derivative()
    }
}

/// Splits a polynomial as `c * p` with `p` having coprime integer coefficients
/// and positive leading coefficient (only meaningful over Q; other fields return 1).
pub trait Content: Field {
    fn split_content(p: &UPoly<Self>) -> (Rat, UPoly<Self>);
}

impl Content for Rat {
    fn split_content(p: &UPoly<Rat>) -> (Rat, UPoly<Rat>) {
        if p.is_zero() {
            return (<Rat as One>::one(), p.clone());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in p.coeffs() {
            if Zero::is_zero(c) {
                continue;
            }
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut c = Rat::new(num_gcd, den_lcm);
        if p.lc().is_negative() {
            c = -c;
        }
        (c.clone(), p.scale(&c.recip()))
    }
}

impl<F: Field> Content for Frac<F> {
    fn split_content(p: &UPoly<Self>) -> (Rat, UPoly<Self>) {
        (<Rat as One>::one(), p.clone())
    }
}

impl<F: Content + Render> Render for Frac<F> {
    fn render(&self, vars: &[&str]) -> String {
        let (cn, n0) = F::split_content(&self.num);
        let (cd, d0) = F::split_content(&self.den);
        let c = cn / cd;
        let cnum = Rat::from_integer(c.numer().clone());
        let cden = Rat::from_integer(c.denom().clone());
        let num = n0.scale(&F::from_rat(&cnum));
        let den = d0.scale(&F::from_rat(&cden));
        if den.is_unit_one() {
            return num.render(vars);
        }
        let ns = if num.is_sum() {
            format!("({})", num.render(vars))
        } else {
            num.render(vars)
        };
        let ds = den.render(vars);
        let needs_paren = den.is_sum() || ds.contains('*') || ds.contains('/') || ds.contains('^');
        if needs_paren {
            format!("{ns}/({ds})")
        } else {
            format!("{ns}/{ds}")
        }
    }
    fn is_sum(&self) -> bool {
        self.den.degree() == Some(0) && self.num.is_sum()
    }
    fn is_unit_one(&self) -> bool {
        self.num.is_unit_one() && self.den.is_unit_one()
    }
    fn starts_negative(&self) -> bool {
        let (cn, n0) = F::split_content(&self.num);
        let (cd, _) = F::split_content(&self.den);
        let c = cn / cd;
        if n0.is_sum() {
            return false;
        }
        c.is_negative() || n0.starts_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::rat;

    fn lam() -> QFun {
        QFun::var()
    }

    #[test]
    fn render_quotients() {
        let v = QFun::constant(rat(-1, 2)).mul(&lam().inv());
        assert_eq!(v.render(&["lam"]), "-1/(2*lam)");
        let w = QFun::constant(rat(2, 3)).div(&lam());
        assert_eq!(w.render(&["lam"]), "2/(3*lam)");
        assert_eq!(lam().render(&["lam"]), "lam");
        let u = lam().add(&QFun::one()).div(&lam());
        assert_eq!(u.render(&["lam"]), "(lam + 1)/lam");
    }

    #[test]
    fn field_laws_spot_check() {
        let a = lam().add(&QFun::constant(rat(3, 1)));
        let b = lam().mul(&lam()).sub(&QFun::one());
        assert_eq!(a.div(&b).mul(&b), a);
        assert_eq!(a.sub(&a), QFun::zero());
        assert_eq!(b.inv().derivative(), b.derivative().neg().div(&b.mul(&b)));
    }
}
