//! Left/right exchange and the transfer module `D_{Y←X}` on a product chart
//! `X = (fiber) × Y`.
//!
//! `D_{Y←X} = ω_{X/Y} ⊗ f*D_Y` is stored as an operator `Σ c_β ∂_y^β` with coefficients on
//! `X`; it is identified with `D_X/∂_x D_X` through `[Q] ↦ D_f(Q*)`, where `D_f` drops every
//! normally ordered term containing a fiber derivative. Under this identification:
//!
//! * right `D_X`-action: `t·P = D_f(P*·t)`; on generators functions multiply, `∂_x` sends
//!   `c ⊗ ∂^β` to `−∂_x(c) ⊗ ∂^β` and `∂_y` sends it to `−(∂_y(c) ⊗ ∂^β + c ⊗ ∂^{β+1})`;
//! * left `f^{-1}D_Y`-action: `η_i·t = −t ∂_{y_i}` (right multiplication in `f*D_Y`), so
//!   `∇_{Y←X}(t) = Σ dy_i ⊗ (−t ∂_{y_i})` and functions of `y` act by `t ↦ t·g`.

use crate::conn::Connection;
use crate::error::{Error, Result};
use crate::exactalg::loc::same_ring;
use crate::exactalg::{LocElem, Ring};
use crate::locmat::{self, Mat, Vector};
use crate::weyl::WeylOp;

pub const CHART_NOTE: &str = "computed on a product chart; the splitting of Ω¹_X into base and \
relative forms is the coordinate one and is not canonical";

/// `ω ⊗ P` in `ω_X ⊗ D_X` with `ω = dx_1 ∧ … ∧ dx_n` in declared variable order.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaD {
    pub op: WeylOp,
}

impl OmegaD {
    pub fn omega(ring: &Ring) -> Self {
        OmegaD { op: WeylOp::one(ring) }
    }

    pub fn new(op: WeylOp) -> Self {
        OmegaD { op }
    }

    /// `ι(ω ⊗ P) = ω ⊗ P*`.
    pub fn involution(&self) -> Self {
        OmegaD { op: self.op.transpose() }
    }

    /// First right structure: right multiplication on the `D_X` factor.
    pub fn act1(&self, q: &WeylOp) -> Result<Self> {
        Ok(OmegaD { op: self.op.try_mul(q)? })
    }

    /// Second right structure, from the right module `ω_X` and the left module `D_X`:
    /// `(ω ⊗ P)·g = ω ⊗ gP`, `(ω ⊗ P)·∂_i = ω∂_i ⊗ P − ω ⊗ ∂_i P` with `ω∂_i = 0` in
    /// coordinates.
    pub fn act2(&self, q: &WeylOp) -> Result<Self> {
        if !same_ring(self.op.ring(), q.ring()) {
            return Err(Error::RingMismatch);
        }
        let ring = self.op.ring();
        let mut out = WeylOp::zero(ring);
        for (alpha, c) in q.terms() {
            let mut cur = WeylOp::from_loc(c).mul(&self.op);
            for (i, &k) in alpha.iter().enumerate() {
                for _ in 0..k {
                    cur = WeylOp::d(ring, i).mul(&cur).neg();
                }
            }
            out = out.add(&cur);
        }
        Ok(OmegaD { op: out })
    }
}

/// Right module `ω ⊗ M` on a free module: `(ω ⊗ m)·∂_i = ω ⊗ (−∂_i m + B_i m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RightModule {
    pub ring: Ring,
    pub rank: usize,
    pub mats: Vec<Mat>,
}

/// `M ↦ ω_X ⊗ M`: `B_i = −A_i` (the Lie derivative of the coordinate ω vanishes).
pub fn exchange_left_right(c: &Connection) -> RightModule {
    RightModule {
        ring: c.ring().clone(),
        rank: c.rank(),
        mats: c.mats().iter().map(locmat::neg).collect(),
    }
}

/// `N ↦ N ⊗ ω^{-1}`.
pub fn exchange_right_left(r: &RightModule) -> Result<Connection> {
    Connection::new(&r.ring, r.rank, r.mats.iter().map(locmat::neg).collect())
}

impl RightModule {
    pub fn act_d(&self, i: usize, m: &[LocElem]) -> Vector {
        let bm = locmat::apply(&self.mats[i], m, &self.ring);
        m.iter().zip(bm).map(|(x, y)| y.sub(&x.derivative(i))).collect()
    }

    /// `m·P`, one generator at a time in the normal ordering of `P`.
    pub fn act(&self, m: &[LocElem], p: &WeylOp) -> Vector {
        let mut out = vec![LocElem::zero(&self.ring); self.rank];
        for (alpha, c) in p.terms() {
            let mut cur: Vector = m.iter().map(|x| x.mul(c)).collect();
            for (i, &k) in alpha.iter().enumerate() {
                for _ in 0..k {
                    cur = self.act_d(i, &cur);
                }
            }
            for (o, x) in out.iter_mut().zip(cur) {
                *o = o.add(&x);
            }
        }
        out
    }
}

/// Fiber and base coordinates of a product chart.
#[derive(Clone, Debug)]
pub struct Fibered {
    ring: Ring,
    fiber: Vec<usize>,
    base: Vec<usize>,
}

impl Fibered {
    pub fn new(ring: &Ring, fiber: &[&str], base: &[&str]) -> Result<Self> {
        let fiber: Vec<usize> = fiber.iter().map(|v| ring.var_index(v)).collect::<Result<_>>()?;
        let base: Vec<usize> = base.iter().map(|v| ring.var_index(v)).collect::<Result<_>>()?;
        let mut all: Vec<usize> = fiber.iter().chain(&base).copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() != ring.nvars() || fiber.len() + base.len() != ring.nvars() {
            return Err(Error::Input("fiber and base variables must partition the chart".into()));
        }
        Ok(Fibered { ring: ring.clone(), fiber, base })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn fiber(&self) -> &[usize] {
        &self.fiber
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    fn check(&self, op: &WeylOp) -> Result<()> {
        if same_ring(op.ring(), &self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    Standard,
    /// Negative control: the base derivation acts with the opposite overall sign.
    FlippedBase,
}

/// `Σ c_β ⊗ ∂_y^β ∈ ω_{X/Y} ⊗ f*D_Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferElem {
    op: WeylOp,
}

impl TransferElem {
    pub fn new(chart: &Fibered, op: WeylOp) -> Result<Self> {
        chart.check(&op)?;
        if op.terms().keys().any(|a| chart.fiber.iter().any(|&i| a[i] > 0)) {
            return Err(Error::Input(format!("{} has fiber derivatives", op.render())));
        }
        Ok(TransferElem { op })
    }

    /// `1 ⊗ 1`.
    pub fn unit(chart: &Fibered) -> Self {
        TransferElem { op: WeylOp::one(&chart.ring) }
    }

    pub fn op(&self) -> &WeylOp {
        &self.op
    }

    pub fn is_zero(&self) -> bool {
        self.op.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        TransferElem { op: self.op.add(&o.op) }
    }

    pub fn neg(&self) -> Self {
        TransferElem { op: self.op.neg() }
    }

    pub fn render(&self) -> String {
        self.op.render()
    }

    fn act_fn(&self, g: &LocElem) -> Self {
        TransferElem { op: self.op.lmul_fn(g) }
    }

    fn act_d(&self, chart: &Fibered, i: usize, signs: SignConvention) -> Self {
        let ring = &chart.ring;
        let mut out = WeylOp::zero(ring);
        for (beta, c) in self.op.terms() {
            out = out.sub(&WeylOp::term(c.derivative(i), beta.clone()));
            if chart.base.contains(&i) {
                let mut b2 = beta.clone();
                b2[i] += 1;
                out = out.sub(&WeylOp::term(c.clone(), b2));
            }
        }
        if signs == SignConvention::FlippedBase && chart.base.contains(&i) {
            out = out.neg();
        }
        TransferElem { op: out }
    }
}

/// `D_f: D_X → f*D_Y`, dropping terms with fiber derivatives.
pub fn d_f(chart: &Fibered, p: &WeylOp) -> Result<TransferElem> {
    chart.check(p)?;
    let terms = p
        .terms()
        .iter()
        .filter(|(a, _)| chart.fiber.iter().all(|&i| a[i] == 0))
        .map(|(a, c)| (a.clone(), c.clone()));
    Ok(TransferElem { op: WeylOp::from_terms(&chart.ring, terms) })
}

/// Right `D_X`-action, generator by generator.
pub fn right_act(chart: &Fibered, t: &TransferElem, p: &WeylOp, signs: SignConvention) -> Result<TransferElem> {
    chart.check(p)?;
    let mut out = TransferElem { op: WeylOp::zero(&chart.ring) };
    for (alpha, c) in p.terms() {
        let mut cur = t.act_fn(c);
        for (i, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                cur = cur.act_d(chart, i, signs);
            }
        }
        out = out.add(&cur);
    }
    Ok(out)
}

/// `λ(ω_{X/Y} ⊗ P) = (1 ⊗ 1)·P`.
pub fn lambda_map(chart: &Fibered, p: &WeylOp, signs: SignConvention) -> Result<TransferElem> {
    right_act(chart, &TransferElem::unit(chart), p, signs)
}

/// The other side of the square: `ι` then `D_f`.
pub fn lambda_via_involution(chart: &Fibered, p: &WeylOp) -> Result<TransferElem> {
    d_f(chart, &OmegaD::new(p.clone()).involution().op)
}

/// Relative differential into the top relative degree (one fiber variable): `P ↦ ∂_x P`.
pub fn relative_differential(chart: &Fibered, p: &WeylOp) -> Result<WeylOp> {
    if chart.fiber.len() != 1 {
        return Err(Error::Input("relative differential implemented for one fiber variable".into()));
    }
    chart.check(p)?;
    Ok(WeylOp::d(&chart.ring, chart.fiber[0]).mul(p))
}

/// Coefficients of `dy_i`, in base-variable order.
pub fn nabla_transfer(chart: &Fibered, t: &TransferElem) -> Vec<TransferElem> {
    nabla_transfer_signed(chart, t, SignConvention::Standard)
}

pub fn nabla_transfer_signed(chart: &Fibered, t: &TransferElem, signs: SignConvention) -> Vec<TransferElem> {
    chart
        .base
        .iter()
        .map(|&i| {
            let op = t.op.mul(&WeylOp::d(&chart.ring, i));
            TransferElem { op: if signs == SignConvention::FlippedBase { op } else { op.neg() } }
        })
        .collect()
}

/// Left action of a function of the base variables: `t ↦ t·g` in `f*D_Y`.
pub fn base_fn_act(chart: &Fibered, g: &LocElem, t: &TransferElem) -> Result<TransferElem> {
    if chart.fiber.iter().any(|&i| !g.derivative(i).is_zero()) {
        return Err(Error::Input(format!("{g} depends on fiber variables")));
    }
    Ok(TransferElem { op: t.op.mul(&WeylOp::from_loc(g)) })
}

/// `α(ω ⊗ P) = Σ dy_i ⊗ D_f((η_i P)*)`.
pub fn alpha_morphism(chart: &Fibered, p: &WeylOp) -> Result<Vec<TransferElem>> {
    chart.check(p)?;
    chart
        .base
        .iter()
        .map(|&i| d_f(chart, &WeylOp::d(&chart.ring, i).mul(p).transpose()))
        .collect()
}

/// `(c ⊗ ∂^β) ⊗ m ↦ (c∂^β)*·m` in `D_{Y←X} ⊗_{D_X} M → ω_{X/Y} ⊗ M`.
pub fn contract(chart: &Fibered, t: &TransferElem, m: &[LocElem], c: &Connection) -> Result<Vector> {
    if !same_ring(c.ring(), &chart.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(c.act(&t.op.transpose(), m))
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SquareChecks {
    pub lambda_kills_relative_exact: bool,
    pub involution_square: bool,
    pub alpha_is_nabla_lambda: bool,
}

/// Elementwise check of `λ∘d = 0`, the `ι`/`D_f` square and `α = ∇∘λ` on the given operators.
pub fn check_transfer_identities(chart: &Fibered, ops: &[WeylOp], signs: SignConvention) -> Result<SquareChecks> {
    let mut s = SquareChecks { lambda_kills_relative_exact: true, involution_square: true, alpha_is_nabla_lambda: true };
    for p in ops {
        let lam = lambda_map(chart, p, signs)?;
        if chart.fiber.len() == 1 {
            s.lambda_kills_relative_exact &= lambda_map(chart, &relative_differential(chart, p)?, signs)?.is_zero();
        }
        s.involution_square &= lam == lambda_via_involution(chart, p)?;
        s.alpha_is_nabla_lambda &= alpha_morphism(chart, p)? == nabla_transfer(chart, &lam);
    }
    Ok(s)
}

/// Operators `x^a ∂^b` with `|a| ≤ deg`, `|b| ≤ order` over a chart.
pub fn monomial_operators(ring: &Ring, deg: u32, order: u32) -> Vec<WeylOp> {
    use crate::homalg::wtrunc::monomials_of_degree;
    let n = ring.nvars();
    let mut out = Vec::new();
    for da in 0..=deg {
        for a in monomials_of_degree(n, da) {
            let c = (0..n).fold(LocElem::one(ring), |acc, i| acc.mul(&LocElem::var_index(ring, i).pow(a[i])));
            for db in 0..=order {
                for b in monomials_of_degree(n, db) {
                    out.push(WeylOp::term(c.clone(), b));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_loc, vars_of, LocRing};
    use crate::weyl::parse_op;

    fn chart() -> Fibered {
        let r = LocRing::polynomial(vars_of(&["x", "y"]));
        Fibered::new(&r, &["x"], &["y"]).unwrap()
    }

    #[test]
    fn involution_examples() {
        let r = LocRing::polynomial(vars_of(&["x"]));
        let w = OmegaD::omega(&r);
        assert_eq!(w.involution(), w);
        let d = OmegaD::new(parse_op(&r, "d_x").unwrap());
        assert_eq!(d.involution().op.render(), "-d_x");
        let xd = OmegaD::new(parse_op(&r, "x*d_x").unwrap());
        assert_eq!(xd.involution().op.render(), "-x*d_x - 1");
    }

    #[test]
    fn involution_conjugates_structures() {
        let r = LocRing::polynomial(vars_of(&["x", "y"]));
        let ops = monomial_operators(&r, 2, 2);
        for p in ops.iter().step_by(7) {
            for q in ops.iter().step_by(11) {
                let e = OmegaD::new(p.clone());
                assert_eq!(e.involution().involution(), e);
                assert_eq!(e.act1(q).unwrap().involution(), e.involution().act2(q).unwrap());
            }
        }
    }

    #[test]
    fn exchange_on_trivial_module() {
        let r = LocRing::polynomial(vars_of(&["x"]));
        let rm = exchange_left_right(&Connection::trivial(&r, 1));
        let m = vec![parse_loc(&r, "x^3").unwrap()];
        assert_eq!(rm.act(&m, &WeylOp::d(&r, 0)), vec![parse_loc(&r, "-3*x^2").unwrap()]);
        let c = Connection::new(&r, 1, vec![vec![vec![parse_loc(&r, "x").unwrap()]]]).unwrap();
        assert_eq!(exchange_right_left(&exchange_left_right(&c)).unwrap(), c);
    }

    #[test]
    fn transfer_generators() {
        let ch = chart();
        let r = ch.ring().clone();
        let one = TransferElem::unit(&ch);
        assert!(right_act(&ch, &one, &WeylOp::d(&r, 0), SignConvention::Standard).unwrap().is_zero());
        let c = parse_loc(&r, "x*y + 1").unwrap();
        let t = right_act(&ch, &one, &WeylOp::from_loc(&c), SignConvention::Standard).unwrap();
        assert_eq!(t.op(), &WeylOp::from_loc(&c));
        assert_eq!(lambda_map(&ch, &WeylOp::one(&r), SignConvention::Standard).unwrap(), one);
        assert!(lambda_map(&ch, &WeylOp::d(&r, 0), SignConvention::Standard).unwrap().is_zero());
        let nab = nabla_transfer(&ch, &one);
        assert_eq!(nab[0].render(), "-d_y");
        assert_eq!(alpha_morphism(&ch, &WeylOp::one(&r)).unwrap(), nab);
    }

    #[test]
    fn nabla_leibniz() {
        let ch = chart();
        let r = ch.ring().clone();
        let y = LocElem::var_index(&r, 1);
        let e = TransferElem::new(&ch, parse_op(&r, "x*d_y + y^2").unwrap()).unwrap();
        let ye = base_fn_act(&ch, &y, &e).unwrap();
        let lhs = nabla_transfer(&ch, &ye)[0].clone();
        let rhs = e.add(&base_fn_act(&ch, &y, &nabla_transfer(&ch, &e)[0]).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn identities_and_negative_control() {
        let ch = chart();
        let ops = monomial_operators(ch.ring(), 3, 2);
        let ok = check_transfer_identities(&ch, &ops, SignConvention::Standard).unwrap();
        assert!(ok.lambda_kills_relative_exact && ok.involution_square && ok.alpha_is_nabla_lambda);
        let bad = check_transfer_identities(&ch, &ops, SignConvention::FlippedBase).unwrap();
        assert!(!bad.involution_square);
    }
}
