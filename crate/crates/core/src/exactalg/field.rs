//! Minimal field abstraction shared by the univariate and linear-algebra code.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::UPoly;

/// Exact rationals. Always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Builds `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// A commutative field with exact equality.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Monic gcd of univariate polynomials; plain Euclid unless the field knows better.
    fn poly_gcd(a: &UPoly<Self>, b: &UPoly<Self>) -> UPoly<Self> {
        a.euclid_gcd(b)
    }
}

/// A field carrying a derivation (here: d/dλ on Q(λ), zero on Q).
pub trait DifferentialField: Field {
    fn derive(&self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero rational");
        self.recip()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn poly_gcd(a: &UPoly<Self>, b: &UPoly<Self>) -> UPoly<Self> {
        primitive_prs_gcd(a, b)
    }
}

/// Integer content-free coefficients of a nonzero rational polynomial.
fn to_primitive_int(p: &UPoly<Rat>) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = num_integer::Integer::lcm(&lcm, c.denom());
    }
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    primitive_part(ints)
}

fn primitive_part(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &v {
        g = num_integer::Integer::gcd(&g, c);
    }
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b` (both trimmed, `b` nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let k = r.len() - 1;
        let lr = r[k].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k - db + j] -= &lr * bc;
        }
        r = trim(r);
    }
    r
}

/// Primitive remainder sequence over Z; keeps coefficient sizes near the inputs'.
fn primitive_prs_gcd(a: &UPoly<Rat>, b: &UPoly<Rat>) -> UPoly<Rat> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (mut x, mut y) = (to_primitive_int(a), to_primitive_int(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return UPoly::one();
        }
        let r = primitive_part(prem(&x, &y));
        x = y;
        y = r;
    }
    UPoly::new(x.into_iter().map(Rat::from_integer).collect()).monic()
}

impl DifferentialField for Rat {
    fn derive(&self) -> Self {
        Zero::zero()
    }
}

/// Formats a rational the way the polynomial printer expects: `3`, `-3`, `3/4`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rat_is_negative(r: &Rat) -> bool {
    r.is_negative()
}
