//! Hermite reduction of relative 1-forms `v dx` modulo `∇_x`-exact forms, over Q(λ).
//!
//! Write `H = h/lc(h)`, `d = deg H`, `A_x = Ã/H` with `Ã` polynomial. Poles of order
//! `m ≥ 2` are lowered by solving `(Ã − (m−1)H')·b ≡ P (mod H)`; then `P/H` is reduced in
//! degree with the leading matrices `L_j = [e = d−1]·j + Ã_e`, `e = max(d−1, deg Ã)`.

use serde::Serialize;

use super::family::Family;
use crate::error::{Error, Result};
use crate::exactalg::{Field, QFun, RatFun, Render, UPoly};
use crate::linalg::Matrix;

/// Search bound for integer resonances `det(jI + Ã_e) = 0`.
const RESONANCE_SEARCH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BasisPolicy {
    /// Regular classes only when there are any; the residue-sum class is dropped.
    Canonical,
    /// Every class left by the reduction.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Class {
    /// Power of `x` in `x^k/h · e_comp`.
    pub k: usize,
    pub comp: usize,
    /// Left over at a resonant leading matrix, not below the degree bound.
    pub kept: bool,
}

/// `num / H^pole`, `H` the monic fiber denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct NumForm {
    pub num: Vec<UPoly<QFun>>,
    pub pole: u32,
}

impl NumForm {
    pub fn to_ratfun(&self, hq: &UPoly<QFun>) -> Vec<RatFun> {
        let hp = hq.pow(self.pole);
        self.num.iter().map(|p| RatFun::new(p.clone(), hp.clone())).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ReducedForm {
    hq: UPoly<QFun>,
    /// `v = reduced + ∇_x(exact)`.
    pub reduced: NumForm,
    pub exact: NumForm,
    /// Coordinates of `reduced` on `Reducer::classes()` (against `x^k/h`, not `x^k/H`).
    pub coords: Vec<QFun>,
}

impl ReducedForm {
    pub fn reduced_rf(&self) -> Vec<RatFun> {
        self.reduced.to_ratfun(&self.hq)
    }

    pub fn exact_rf(&self) -> Vec<RatFun> {
        self.exact.to_ratfun(&self.hq)
    }
}

#[derive(Clone, Debug)]
pub struct Reducer {
    fam: Family,
    d: usize,
    /// `Ã[l][i]`.
    at: Vec<Vec<UPoly<QFun>>>,
    e: i64,
    kept_j: Vec<usize>,
    resonant_j: Vec<usize>,
    classes: Vec<Class>,
}

fn upoly_to_rf(p: &UPoly<QFun>) -> RatFun {
    RatFun::from_poly(p.clone())
}

impl Reducer {
    pub fn new(fam: &Family) -> Result<Self> {
        let hq = fam.hq().clone();
        let d = hq.degree().unwrap_or(0);
        let r = fam.rank();
        let hrf = upoly_to_rf(&hq);
        let mut at = vec![vec![UPoly::zero(); r]; r];
        for l in 0..r {
            for i in 0..r {
                let t = fam.ax()[l][i].mul(&hrf);
                if !t.is_poly() {
                    return Err(Error::InvalidFamily(format!(
                        "twist entry A_x[{l}][{i}] has a pole of order > 1 along h"
                    )));
                }
                at[l][i] = t.num().scale(&t.den().lc().inv());
            }
        }
        let a = at.iter().flatten().filter_map(|p| p.degree()).max().map(|x| x as i64).unwrap_or(-1);
        let e = (d as i64 - 1).max(a);
        let mut red = Reducer { fam: fam.clone(), d, at, e, kept_j: Vec::new(), resonant_j: Vec::new(), classes: Vec::new() };
        // x-degree k = j + e must be ≥ 0
        let jmin = (-e).max(0) as usize;
        let limit = if e == d as i64 - 1 { RESONANCE_SEARCH } else { jmin + 1 };
        for j in jmin..limit {
            if red.leading(j).inverse().is_none() {
                if red.flat_monomial(j) {
                    red.kept_j.push(j);
                } else {
                    red.resonant_j.push(j);
                }
            }
        }
        for comp in 0..r {
            for k in 0..e.max(0) as usize {
                red.classes.push(Class { k, comp, kept: false });
            }
        }
        for &j in &red.kept_j {
            for comp in 0..r {
                red.classes.push(Class { k: (j as i64 + e) as usize, comp, kept: true });
            }
        }
        Ok(red)
    }

    pub fn family(&self) -> &Family {
        &self.fam
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn degree_bound(&self) -> i64 {
        self.e
    }

    /// Leading matrices that are singular without a flat monomial behind them.
    pub fn resonances(&self) -> &[usize] {
        &self.resonant_j
    }

    fn leading(&self, j: usize) -> Matrix<QFun> {
        let r = self.fam.rank();
        let mut m = Matrix::zeros(r, r);
        for l in 0..r {
            for i in 0..r {
                let mut v = if self.e >= 0 { self.at[l][i].coeff(self.e as usize) } else { QFun::zero() };
                if l == i && self.e == self.d as i64 - 1 {
                    v = v.add(&QFun::from_rat(&crate::exactalg::rat(j as i64, 1)));
                }
                m.set(l, i, v);
            }
        }
        m
    }

    /// Numerator of `∇_x(x^j e_i)` over `H`: `(j x^{j-1} H + Ã x^j) e_i`.
    fn grad_monomial_num(&self, j: usize, i: usize) -> Vec<UPoly<QFun>> {
        let r = self.fam.rank();
        let xj = UPoly::monomial(QFun::one(), j);
        (0..r)
            .map(|l| {
                let mut p = self.at[l][i].mul(&xj);
                if l == i && j > 0 {
                    let t = UPoly::monomial(QFun::from_rat(&crate::exactalg::rat(j as i64, 1)), j - 1);
                    p = p.add(&t.mul(self.fam.hq()));
                }
                p
            })
            .collect()
    }

    fn flat_monomial(&self, j: usize) -> bool {
        self.leading(j).is_zero()
            && (0..self.fam.rank()).all(|i| self.grad_monomial_num(j, i).iter().all(|p| p.is_zero()))
    }

    /// Basis form `x^k/h · e_comp` as a vector.
    pub fn class_vector(&self, c: &Class) -> Vec<RatFun> {
        let mut v = vec![RatFun::zero(); self.fam.rank()];
        let hq = self.fam.hq();
        let num = UPoly::monomial(self.fam.lc().inv(), c.k);
        v[c.comp] = RatFun::new(num, hq.clone());
        v
    }

    pub fn class_label(&self, c: &Class) -> String {
        let [x, _] = self.fam.var_names();
        let mono = match c.k {
            0 => String::new(),
            1 => format!("{x}*"),
            k => format!("{x}^{k}*"),
        };
        let h = self.fam.h();
        let hs = if h.is_constant() {
            String::new()
        } else if h.is_sum() {
            format!("/({})", h.render())
        } else {
            format!("/{}", h.render())
        };
        let base = format!("{mono}d{x}{hs}");
        if self.fam.rank() > 1 {
            format!("{base} e{}", c.comp + 1)
        } else {
            base
        }
    }

    /// `v = P/H^m` with `P` polynomial.
    fn split(&self, v: &[RatFun]) -> Result<(Vec<UPoly<QFun>>, u32)> {
        let hq = self.fam.hq();
        let mut m = 0u32;
        for c in v {
            let den = c.den();
            let mut k = 0u32;
            loop {
                if hq.pow(k).rem(den).is_zero() {
                    break;
                }
                k += 1;
                if k as usize > den.degree().unwrap_or(0) + 1 {
                    return Err(Error::Input(format!(
                        "form has poles off h = 0: {}",
                        c.render(&self.fam.var_names())
                    )));
                }
            }
            m = m.max(k);
        }
        let hm = hq.pow(m);
        let p = v
            .iter()
            .map(|c| c.num().mul(&hm.div_exact(c.den()).expect("den divides H^m")))
            .collect();
        Ok((p, m))
    }

    pub fn reduce(&self, v: &[RatFun]) -> Result<ReducedForm> {
        let r = self.fam.rank();
        if v.len() != r {
            return Err(Error::Shape(format!("form has {} components, rank is {r}", v.len())));
        }
        let (p, m) = self.split(v)?;
        self.reduce_num(&NumForm { num: p, pole: m })
    }

    /// `∇_x(p/H^k)` as a numerator over `H^{k+1}`.
    pub fn nabla_x_num(&self, f: &NumForm) -> NumForm {
        let hq = self.fam.hq();
        let kq = QFun::from_rat(&crate::exactalg::rat(f.pole as i64, 1));
        let hx = hq.derivative().scale(&kq);
        let num = (0..f.num.len())
            .map(|l| {
                let tw = self.at[l].iter().zip(&f.num).fold(UPoly::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
                f.num[l].derivative().mul(hq).sub(&hx.mul(&f.num[l])).add(&tw)
            })
            .collect();
        NumForm { num, pole: f.pole + 1 }
    }

    /// Reduction on a numerator form; every step is polynomial arithmetic over Q(λ).
    pub fn reduce_num(&self, v: &NumForm) -> Result<ReducedForm> {
        let r = self.fam.rank();
        if v.num.len() != r {
            return Err(Error::Shape(format!("form has {} components, rank is {r}", v.num.len())));
        }
        let hq = self.fam.hq().clone();
        // exact part accumulated over H^big
        let big = v.pole.saturating_sub(1);
        let mut exact = vec![UPoly::<QFun>::zero(); r];
        let mut p = v.num.clone();
        let mut m = v.pole;
        while m >= 2 {
            if p.iter().all(|x| x.is_zero()) {
                break;
            }
            let b = self.pole_step(&p, m)?;
            // P/H^m − ∇_x(b/H^{m−1}) has numerator divisible by H
            let nb = self.nabla_x_num(&NumForm { num: b.clone(), pole: m - 1 });
            let hs = hq.pow(big - (m - 1));
            for l in 0..r {
                let diff = p[l].sub(&nb.num[l]);
                p[l] = diff.div_exact(&hq).ok_or_else(|| Error::ReductionStuck("internal: pole step left a pole".into()))?;
                exact[l] = exact[l].add(&b[l].mul(&hs));
            }
            m -= 1;
        }
        if m == 0 {
            p = p.iter().map(|x| x.mul(&hq)).collect();
        }
        let hbig = hq.pow(big);
        let top = p.iter().filter_map(|x| x.degree()).max();
        if let Some(top) = top {
            let lo = self.e.max(0) as usize;
            for k in (lo..=top).rev() {
                let c: Vec<QFun> = p.iter().map(|x| x.coeff(k)).collect();
                if c.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let j = (k as i64 - self.e) as usize;
                if self.kept_j.contains(&j) {
                    continue;
                }
                let lj = self.leading(j);
                let inv = lj.inverse().ok_or_else(|| {
                    Error::ReductionStuck(format!(
                        "leading matrix L_{j} is singular at {}-degree {k}; coefficient {}",
                        self.fam.fiber_var(),
                        c.iter().map(|x| x.render(&[self.fam.base_var()])).collect::<Vec<_>>().join(", ")
                    ))
                })?;
                let y = inv.mul_vec(&c);
                for (i, yi) in y.iter().enumerate() {
                    if yi.is_zero() {
                        continue;
                    }
                    let g = self.grad_monomial_num(j, i);
                    for l in 0..r {
                        p[l] = p[l].sub(&g[l].scale(yi));
                    }
                    exact[i] = exact[i].add(&UPoly::monomial(yi.clone(), j).mul(&hbig));
                }
            }
        }
        let reduced = NumForm { num: p, pole: 1 };
        let exact = NumForm { num: exact, pole: big };
        // v = reduced + ∇_x(exact), checked exactly over H^{big+1}
        let back = self.nabla_x_num(&exact);
        let top_pole = big + 1;
        for l in 0..r {
            let lhs = v.num[l].mul(&hq.pow(top_pole - v.pole));
            let rhs = reduced.num[l].mul(&hq.pow(top_pole - 1)).add(&back.num[l]);
            if lhs != rhs {
                return Err(Error::ReductionStuck("internal: reduction identity failed".into()));
            }
        }
        let lc = self.fam.lc();
        let coords = self.classes.iter().map(|c| reduced.num[c.comp].coeff(c.k).mul(lc)).collect();
        for (l, pl) in reduced.num.iter().enumerate() {
            for (k, ck) in pl.coeffs().iter().enumerate() {
                if !ck.is_zero() && !self.classes.iter().any(|c| c.comp == l && c.k == k) {
                    return Err(Error::ReductionStuck(format!("reduced numerator has an unbasised x^{k} term")));
                }
            }
        }
        Ok(ReducedForm { hq, reduced, exact, coords })
    }

    /// Solve `(Ã − (m−1)H') b ≡ P (mod H)` with `deg b < d`.
    fn pole_step(&self, p: &[UPoly<QFun>], m: u32) -> Result<Vec<UPoly<QFun>>> {
        let r = self.fam.rank();
        let d = self.d;
        let hq = self.fam.hq();
        let hp = hq.derivative().scale(&QFun::from_rat(&crate::exactalg::rat(m as i64 - 1, 1)));
        let mut t = Matrix::<QFun>::zeros(r * d, r * d);
        for i in 0..r {
            for k in 0..d {
                let xk = UPoly::monomial(QFun::one(), k);
                for l in 0..r {
                    let mut op = self.at[l][i].clone();
                    if l == i {
                        op = op.sub(&hp);
                    }
                    let img = op.mul(&xk).rem(hq);
                    for (kk, c) in img.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            t.set(l * d + kk, i * d + k, c.clone());
                        }
                    }
                }
            }
        }
        let rhs: Vec<QFun> = (0..r).flat_map(|l| {
            let pr = p[l].rem(hq);
            (0..d).map(move |k| pr.coeff(k))
        }).collect();
        if t.rank() < r * d {
            return Err(Error::ReductionStuck(format!(
                "pole-order step from {m} to {} is singular (resonance along h)",
                m - 1
            )));
        }
        let sol = t.solve(&rhs).expect("invertible system");
        Ok((0..r).map(|i| UPoly::new(sol[i * d..(i + 1) * d].to_vec())).collect())
    }

    /// Basis under the policy, with a flag when a kept class was omitted.
    pub fn basis(&self, policy: BasisPolicy) -> (Vec<usize>, bool) {
        let regular: Vec<usize> = (0..self.classes.len()).filter(|&i| !self.classes[i].kept).collect();
        match policy {
            BasisPolicy::Canonical if !regular.is_empty() => {
                let omitted = regular.len() < self.classes.len();
                (regular, omitted)
            }
            _ => ((0..self.classes.len()).collect(), false),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct H1Basis {
    pub labels: Vec<String>,
    pub classes: Vec<Class>,
    pub policy: BasisPolicy,
    pub omitted_log_class: bool,
    /// Exact forms `∇_x(x^i/h^k)` from the generating truncation reduced to zero.
    pub exact_images_vanish: bool,
    pub generators_reduced: usize,
}

/// Basis classes, certified by reducing `∇_x` of a generating set and every `x^i/h^k`.
pub fn h1_basis(fam: &Family, policy: BasisPolicy) -> Result<H1Basis> {
    let red = Reducer::new(fam)?;
    if let Some(j) = red.resonances().first() {
        return Err(Error::ReductionStuck(format!(
            "leading matrix L_{j} is singular; the degree-bound complement is incomplete"
        )));
    }
    let (idx, omitted) = red.basis(policy);
    let r = fam.rank();
    let d = red.d;
    let mut count = 0;
    let mut vanish = true;
    for k in 0..=2u32 {
        for i in 0..=(k as usize * d + 2) {
            for comp in 0..r {
                let mut w = vec![UPoly::zero(); r];
                w[comp] = UPoly::monomial(QFun::one(), i);
                let w = NumForm { num: w, pole: k };
                red.reduce_num(&w)?;
                vanish &= red.reduce_num(&red.nabla_x_num(&w))?.coords.iter().all(|c| c.is_zero());
                count += 1;
            }
        }
    }
    Ok(H1Basis {
        labels: idx.iter().map(|&i| red.class_label(&red.classes[i])).collect(),
        classes: idx.iter().map(|&i| red.classes[i].clone()).collect(),
        policy,
        omitted_log_class: omitted,
        exact_images_vanish: vanish,
        generators_reduced: count,
    })
}
