//! Differential operators over a localized chart ring, normally ordered.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::loc::same_ring;
use crate::exactalg::{parse_expr, ExprTarget, LocElem, Rat, Ring};

pub type DExp = Vec<u32>;

/// `Σ c_α ∂^α`, coefficients to the left.
#[derive(Clone, Debug)]
pub struct WeylOp {
    ring: Ring,
    terms: BTreeMap<DExp, LocElem>,
}

impl PartialEq for WeylOp {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && same_ring(&self.ring, &o.ring)
    }
}

impl Eq for WeylOp {}

fn binom(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// All γ ≤ α componentwise.
fn sub_exps(alpha: &[u32]) -> Vec<DExp> {
    let mut out = vec![Vec::new()];
    for &a in alpha {
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for g in &out {
            for k in 0..=a {
                let mut h = g.clone();
                h.push(k);
                next.push(h);
            }
        }
        out = next;
    }
    out
}

fn multi_binom(alpha: &[u32], gamma: &[u32]) -> Rat {
    let mut r = BigInt::from(1);
    for (&a, &g) in alpha.iter().zip(gamma) {
        r *= binom(a, g);
    }
    Rat::from_integer(r)
}

/// ∂^γ applied to a function.
pub fn derive_multi(m: &LocElem, gamma: &[u32]) -> LocElem {
    let mut r = m.clone();
    for (i, &g) in gamma.iter().enumerate() {
        for _ in 0..g {
            if r.is_zero() {
                return r;
            }
            r = r.derivative(i);
        }
    }
    r
}

impl WeylOp {
    pub fn zero(ring: &Ring) -> Self {
        WeylOp { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_loc(&LocElem::one(ring))
    }

    pub fn from_loc(c: &LocElem) -> Self {
        Self::term(c.clone(), vec![0; c.ring().nvars()])
    }

    pub fn term(c: LocElem, alpha: DExp) -> Self {
        let mut terms = BTreeMap::new();
        let ring = c.ring().clone();
        assert_eq!(alpha.len(), ring.nvars());
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        WeylOp { ring, terms }
    }

    /// ∂/∂v_i.
    pub fn d(ring: &Ring, i: usize) -> Self {
        let mut a = vec![0; ring.nvars()];
        a[i] = 1;
        Self::term(LocElem::one(ring), a)
    }

    pub fn d_named(ring: &Ring, name: &str) -> Result<Self> {
        Ok(Self::d(ring, ring.var_index(name)?))
    }

    pub fn from_terms(ring: &Ring, it: impl IntoIterator<Item = (DExp, LocElem)>) -> Self {
        let mut op = Self::zero(ring);
        for (a, c) in it {
            op.add_term(a, c);
        }
        op
    }

    fn add_term(&mut self, alpha: DExp, c: LocElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&alpha) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(alpha, s);
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<DExp, LocElem> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &[u32]) -> LocElem {
        self.terms.get(alpha).cloned().unwrap_or_else(|| LocElem::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.iter().sum()).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (a, c) in &o.terms {
            r.add_term(a.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        WeylOp {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_terms(&self.ring, self.terms.iter().map(|(a, t)| (a.clone(), t.scale(c))))
    }

    /// Left multiplication by a function: `g·P`.
    pub fn lmul_fn(&self, g: &LocElem) -> Self {
        Self::from_terms(&self.ring, self.terms.iter().map(|(a, t)| (a.clone(), g.mul(t))))
    }

    /// Normally ordered product via `∂^α b = Σ_γ C(α,γ) ∂^γ(b) ∂^{α-γ}`.
    pub fn mul(&self, o: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &o.ring));
        let mut out = Self::zero(&self.ring);
        for (alpha, a) in &self.terms {
            let gammas = sub_exps(alpha);
            for (beta, b) in &o.terms {
                for g in &gammas {
                    let db = derive_multi(b, g);
                    if db.is_zero() {
                        continue;
                    }
                    let e: DExp = alpha.iter().zip(g).zip(beta).map(|((a, g), b)| a - g + b).collect();
                    out.add_term(e, a.mul(&db).scale(&multi_binom(alpha, g)));
                }
            }
        }
        out
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &o.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.mul(o))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `P*`, term by term: `(c∂^α)* = (-1)^{|α|} Σ_γ C(α,γ) ∂^γ(c) ∂^{α-γ}`.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (alpha, c) in &self.terms {
            let sign: u32 = alpha.iter().sum();
            for g in sub_exps(alpha) {
                let dc = derive_multi(c, &g);
                if dc.is_zero() {
                    continue;
                }
                let mut k = multi_binom(alpha, &g);
                if sign % 2 == 1 {
                    k = -k;
                }
                let e: DExp = alpha.iter().zip(&g).map(|(a, g)| a - g).collect();
                out.add_term(e, dc.scale(&k));
            }
        }
        out
    }

    /// Action on O_X.
    pub fn apply(&self, m: &LocElem) -> LocElem {
        let mut acc = LocElem::zero(&self.ring);
        for (alpha, c) in &self.terms {
            acc = acc.add(&c.mul(&derive_multi(m, alpha)));
        }
        acc
    }

    pub fn try_apply(&self, m: &LocElem) -> Result<LocElem> {
        if !same_ring(&self.ring, m.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(self.apply(m))
    }

    pub fn order_and_symbol(&self) -> Result<(u32, Symbol)> {
        let ord = self.order().ok_or(Error::ZeroInput("symbol of the zero operator"))?;
        let terms = self
            .terms
            .iter()
            .filter(|(a, _)| a.iter().sum::<u32>() == ord)
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        Ok((ord, Symbol { ring: self.ring.clone(), terms }))
    }

    /// Coefficients in ∂-degree-descending print order.
    pub fn print_order(&self) -> Vec<(&DExp, &LocElem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let vars = self.ring.vars();
        let mut out = String::new();
        for (alpha, c) in self.print_order() {
            let dpart: Vec<String> = alpha
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("d_{}", vars[i]) } else { format!("d_{}^{}", vars[i], k) })
                .collect();
            let dpart = dpart.join("*");
            let (neg, body) = render_coeff(c, &dpart);
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
}

/// Sign and unsigned body of `c * dpart`.
fn render_coeff(c: &LocElem, dpart: &str) -> (bool, String) {
    let s = c.render();
    let plain_sum = c.is_polynomial() && c.num().is_sum();
    if dpart.is_empty() {
        if !plain_sum && s.starts_with('-') {
            return (true, s[1..].to_string());
        }
        return (false, s);
    }
    if c.is_one() {
        return (false, dpart.to_string());
    }
    if plain_sum || s.contains('/') && c.num().is_sum() {
        return (false, format!("({s})*{dpart}"));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    };
    if body == "1" {
        return (neg, dpart.to_string());
    }
    if body.contains('/') {
        return (neg, format!("({body})*{dpart}"));
    }
    (neg, format!("{body}*{dpart}"))
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl ExprTarget for WeylOp {
    type Ctx = Ring;
    fn int(ctx: &Ring, n: BigInt) -> Self {
        Self::from_loc(&LocElem::constant(ctx, Rat::from_integer(n)))
    }
    fn var(ctx: &Ring, name: &str) -> Result<Self> {
        Ok(Self::from_loc(&LocElem::var(ctx, name)?))
    }
    fn dvar(ctx: &Ring, name: &str) -> Result<Self> {
        Self::d_named(ctx, name)
    }
    fn add(&self, o: &Self) -> Self {
        WeylOp::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        WeylOp::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        WeylOp::mul(self, o)
    }
    fn neg(&self) -> Self {
        WeylOp::neg(self)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.order() != Some(0) {
            return Err(Error::NotAUnit(o.render()));
        }
        let inv = o.coeff(&vec![0; self.ring.nvars()]).inv()?;
        Ok(self.mul(&Self::from_loc(&inv)))
    }
    fn pow(&self, k: u32) -> Self {
        WeylOp::pow(self, k)
    }
}

pub fn parse_op(ring: &Ring, s: &str) -> Result<WeylOp> {
    parse_expr(ring, s)
}

/// Principal symbol `Σ_{|α| = ord} c_α ξ^α`, a commutative polynomial in ξ over O_X.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbol {
    ring: Ring,
    terms: BTreeMap<DExp, LocElem>,
}

impl Symbol {
    pub fn terms(&self) -> &BTreeMap<DExp, LocElem> {
        &self.terms
    }

    pub fn mul(&self, o: &Symbol) -> Symbol {
        let mut terms: BTreeMap<DExp, LocElem> = BTreeMap::new();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let e: DExp = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let v = c.mul(d);
                let s = match terms.remove(&e) {
                    Some(old) => old.add(&v),
                    None => v,
                };
                if !s.is_zero() {
                    terms.insert(e, s);
                }
            }
        }
        Symbol { ring: self.ring.clone(), terms }
    }

    pub fn render(&self) -> String {
        let op = WeylOp { ring: self.ring.clone(), terms: self.terms.clone() };
        let vars = self.ring.vars();
        let mut s = op.render();
        for v in vars.iter() {
            s = s.replace(&format!("d_{v}"), &format!("xi_{v}"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_loc, vars_of, LocRing, MPoly};

    fn ring1() -> Ring {
        LocRing::polynomial(vars_of(&["x"]))
    }

    fn ring_lam() -> Ring {
        let v = vars_of(&["x", "lam"]);
        let h = crate::exactalg::parse_poly(&v, "x^2 - lam").unwrap();
        LocRing::new(v, vec![h]).unwrap()
    }

    fn op(r: &Ring, s: &str) -> WeylOp {
        parse_op(r, s).unwrap()
    }

    #[test]
    fn commutation_rule() {
        let r = ring1();
        assert_eq!(op(&r, "d_x*x"), op(&r, "x*d_x + 1"));
        assert_eq!(op(&r, "d_x^2*x"), op(&r, "x*d_x^2 + 2*d_x"));
        let p = op(&r, "x^2*d_x^2 - 3*d_x");
        assert_eq!(p.mul(&WeylOp::one(&r)), p);
        assert_eq!(op(&r, "d_x*x").render(), "x*d_x + 1");
    }

    #[test]
    fn transpose_examples() {
        let r = ring1();
        assert_eq!(op(&r, "x*d_x").transpose(), op(&r, "-x*d_x - 1"));
        assert_eq!(op(&r, "x^2*d_x").transpose(), op(&r, "-x^2*d_x - 2*x"));
        assert_eq!(op(&r, "x^3 + 2").transpose(), op(&r, "x^3 + 2"));
        assert_eq!(op(&r, "-x*d_x - 1").render(), "-x*d_x - 1");
    }

    #[test]
    fn apply_examples() {
        let r = ring1();
        let x = LocElem::var(&r, "x").unwrap();
        assert_eq!(op(&r, "d_x").apply(&x.mul(&x)), x.scale(&Rat::from_integer(2.into())));
        assert_eq!(op(&r, "x*d_x + 1").apply(&x), x.scale(&Rat::from_integer(2.into())));
        let rl = ring_lam();
        let e = parse_loc(&rl, "1/(x^2 - lam)").unwrap();
        assert_eq!(op(&rl, "d_lam").apply(&e), e.mul(&e));
    }

    #[test]
    fn symbol_examples() {
        let r = ring1();
        let (o, s) = op(&r, "x*d_x^2 + d_x").order_and_symbol().unwrap();
        assert_eq!(o, 2);
        assert_eq!(s.render(), "x*xi_x^2");
        let (_, s1) = op(&r, "d_x*x").order_and_symbol().unwrap();
        assert_eq!(s1.render(), "x*xi_x");
        let (o, s) = op(&r, "5").order_and_symbol().unwrap();
        assert_eq!((o, s.render()), (0, "5".to_string()));
        assert!(WeylOp::zero(&r).order_and_symbol().is_err());
    }

    #[test]
    fn residue_pairing_adjoint() {
        // res(P(x^k) * g) = res(x^k * P*(g)) for Laurent g: no boundary term survives
        let v = vars_of(&["x"]);
        let x = MPoly::var(&v, "x").unwrap();
        let r = LocRing::new(v, vec![x]).unwrap();
        let res = |e: &LocElem| -> Rat {
            // coefficient of x^{-1}
            let k = e.exps()[0];
            if k == 0 {
                return Rat::from_integer(0.into());
            }
            e.num()
                .terms()
                .iter()
                .find(|(m, _)| m.0[0] + 1 == k)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| Rat::from_integer(0.into()))
        };
        for p in ["x*d_x^2 - 3*d_x + x^2", "d_x^2 + x^3*d_x", "2*x^2*d_x - 1"] {
            let p = op(&r, p);
            let ps = p.transpose();
            for k in 0..=6 {
                for j in 1..=8 {
                    let f = LocElem::var(&r, "x").unwrap().pow(k);
                    let g = LocElem::den_power_inv(&r, 0, j);
                    assert_eq!(res(&p.apply(&f).mul(&g)), res(&f.mul(&ps.apply(&g))));
                }
            }
        }
    }

    #[test]
    fn ring_mismatch_reported() {
        let a = op(&ring1(), "d_x");
        let b = op(&ring_lam(), "d_x");
        assert_eq!(a.try_mul(&b), Err(Error::RingMismatch));
    }
}
