use crate::conn::Connection;
use crate::error::{Error, Result};
use crate::exactalg::{
    parse_loc, parse_poly, uni_gcd_bezout, vars_of, Field, LocElem, LocRing, MPoly, QFun, Rat, RatFun, Ring, UPoly,
};
use crate::locmat::Mat;

/// One-parameter family `x ↦ (x, λ)` over the base, fiber `A¹ ∖ {h = 0}`, with an optional
/// integrable twist `∇ = d + A_x dx + A_λ dλ` on `O^r`.
#[derive(Clone, Debug)]
pub struct Family {
    fiber_var: String,
    base_var: String,
    h: MPoly,
    base_dens: Vec<MPoly>,
    ring: Ring,
    conn: Connection,
    /// `h/lc_x(h)` over Q(λ); `1` for trivial fibers.
    hq: UPoly<QFun>,
    lc: QFun,
    ax: Vec<Vec<RatFun>>,
    alam: Vec<Vec<RatFun>>,
}

pub(crate) const X: usize = 0;
pub(crate) const L: usize = 1;

pub fn loc_to_ratfun(e: &LocElem) -> Result<RatFun> {
    let n = e.num().to_upoly_qfun(X, Some(L))?;
    let d = e.den_poly().to_upoly_qfun(X, Some(L))?;
    Ok(RatFun::new(n, d))
}

/// `D` divides a power of the declared base denominators (as polynomials in λ).
pub(crate) fn supported_on(den: &UPoly<Rat>, base: &[UPoly<Rat>]) -> bool {
    let mut d = den.clone();
    let prod = base.iter().fold(UPoly::<Rat>::one(), |a, b| a.mul(b));
    loop {
        if d.degree() == Some(0) {
            return true;
        }
        let g = d.gcd(&prod);
        if g.degree() == Some(0) {
            return false;
        }
        d = d.div_exact(&g).expect("gcd divides");
    }
}

/// Denominator in λ of a Q(λ) element, as a polynomial over Q.
pub(crate) fn qfun_den(q: &QFun) -> UPoly<Rat> {
    q.den().clone()
}

impl Family {
    /// `twist = Some((A_x, A_λ))` as expression matrices in the family ring.
    pub fn new(
        fiber_var: &str,
        base_var: &str,
        h: &str,
        base_denominators: &[&str],
        rank: usize,
        twist: Option<(&[Vec<String>], &[Vec<String>])>,
    ) -> Result<Self> {
        if fiber_var == base_var {
            return Err(Error::InvalidFamily("fiber and base variables coincide".into()));
        }
        if rank == 0 {
            return Err(Error::InvalidFamily("rank must be positive".into()));
        }
        let vars = vars_of(&[fiber_var, base_var]);
        let hp = parse_poly(&vars, h)?;
        if hp.is_zero() {
            return Err(Error::InvalidFamily("h = 0".into()));
        }
        let trivial = hp.degree_in(X).unwrap_or(0) == 0;
        if trivial && !hp.is_constant() {
            return Err(Error::InvalidFamily(format!(
                "h = {} does not involve `{fiber_var}`; declare it as a base denominator",
                hp.render()
            )));
        }
        let base: Vec<MPoly> = base_denominators.iter().map(|s| parse_poly(&vars, s)).collect::<Result<_>>()?;
        for b in &base {
            if b.uses_var(X) {
                return Err(Error::InvalidFamily(format!("base denominator {} involves the fiber variable", b.render())));
            }
        }
        let base_u: Vec<UPoly<Rat>> = base.iter().map(|b| b.to_upoly_rat(L)).collect::<Result<_>>()?;
        let (hq, lc) = if trivial {
            (UPoly::one(), QFun::one())
        } else {
            let (g, s, t) = uni_gcd_bezout(&hp, &hp.derivative(X), fiber_var)?;
            if g.degree() != Some(0) {
                return Err(Error::InvalidFamily(format!("h = {} is not squarefree in {fiber_var}", hp.render())));
            }
            for c in s.coeffs().iter().chain(t.coeffs()) {
                if !supported_on(&qfun_den(c), &base_u) {
                    return Err(Error::InvalidFamily(format!(
                        "gcd(h, dh/d{fiber_var}) is not invertible away from the declared base denominators \
                         (cofactor denominator {} undeclared)",
                        crate::exactalg::Render::render(&QFun::from_poly(qfun_den(c)), &[base_var])
                    )));
                }
            }
            let u = hp.to_upoly_qfun(X, Some(L))?;
            if !supported_on(u.lc().num(), &base_u) {
                return Err(Error::InvalidFamily("leading coefficient of h vanishes on an undeclared locus".into()));
            }
            (u.monic(), u.lc())
        };
        let mut dens = Vec::new();
        if !trivial {
            dens.push(hp.clone());
        }
        dens.extend(base.iter().cloned());
        let ring = LocRing::new(vars, dens).map_err(|e| Error::InvalidFamily(e.to_string()))?;
        let parse_mat = |m: &[Vec<String>]| -> Result<Mat> {
            if m.len() != rank || m.iter().any(|r| r.len() != rank) {
                return Err(Error::InvalidFamily(format!("twist matrix is not {rank}x{rank}")));
            }
            m.iter().map(|r| r.iter().map(|s| parse_loc(&ring, s)).collect()).collect()
        };
        let mats = match twist {
            Some((ax, al)) => vec![parse_mat(ax)?, parse_mat(al)?],
            None => vec![crate::locmat::zeros(&ring, rank, rank); 2],
        };
        Self::from_connection(fiber_var, base_var, hp, base, ring, hq, lc, mats)
    }

    #[allow(clippy::too_many_arguments)]
    fn from_connection(
        fiber_var: &str,
        base_var: &str,
        h: MPoly,
        base_dens: Vec<MPoly>,
        ring: Ring,
        hq: UPoly<QFun>,
        lc: QFun,
        mats: Vec<Mat>,
    ) -> Result<Self> {
        let rank = mats[0].len();
        let conn = Connection::new(&ring, rank, mats)?;
        if let Some(((i, j), m)) = conn.curvature().into_iter().find(|(_, m)| !crate::locmat::is_zero(m)) {
            return Err(Error::InvalidFamily(format!(
                "twist is not integrable: curvature F_{i}{j} = {:?}",
                crate::locmat::render(&m)
            )));
        }
        let conv = |m: &Mat| -> Result<Vec<Vec<RatFun>>> {
            m.iter().map(|r| r.iter().map(loc_to_ratfun).collect()).collect()
        };
        let ax = conv(conn.mat(X))?;
        let alam = conv(conn.mat(L))?;
        Ok(Family {
            fiber_var: fiber_var.into(),
            base_var: base_var.into(),
            h,
            base_dens,
            ring,
            conn,
            hq,
            lc,
            ax,
            alam,
        })
    }

    /// Rank-1 Kummer twist `A = s·dh/h`.
    pub fn kummer(fiber_var: &str, base_var: &str, h: &str, base_denominators: &[&str], s: Rat) -> Result<Self> {
        let plain = Family::new(fiber_var, base_var, h, base_denominators, 1, None)?;
        let hl = LocElem::from_poly(&plain.ring, plain.h.clone());
        let inv = hl.inv().map_err(|_| Error::InvalidFamily("h is not a unit".into()))?;
        let ax = hl.derivative(X).mul(&inv).scale(&s);
        let al = hl.derivative(L).mul(&inv).scale(&s);
        let tw = (vec![vec![ax.render()]], vec![vec![al.render()]]);
        Family::new(fiber_var, base_var, h, base_denominators, 1, Some((&tw.0, &tw.1)))
    }

    pub fn fiber_var(&self) -> &str {
        &self.fiber_var
    }

    pub fn base_var(&self) -> &str {
        &self.base_var
    }

    pub fn h(&self) -> &MPoly {
        &self.h
    }

    pub fn base_denominators(&self) -> &[MPoly] {
        &self.base_dens
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn connection(&self) -> &Connection {
        &self.conn
    }

    pub fn rank(&self) -> usize {
        self.conn.rank()
    }

    pub fn is_twisted(&self) -> bool {
        self.conn.mats().iter().any(|m| !crate::locmat::is_zero(m))
    }

    pub fn hq(&self) -> &UPoly<QFun> {
        &self.hq
    }

    /// `lc_x(h)`, so that `h = lc · hq`.
    pub fn lc(&self) -> &QFun {
        &self.lc
    }

    pub fn ax(&self) -> &[Vec<RatFun>] {
        &self.ax
    }

    pub fn alam(&self) -> &[Vec<RatFun>] {
        &self.alam
    }

    pub fn base_denominators_u(&self) -> Vec<UPoly<Rat>> {
        self.base_dens.iter().map(|b| b.to_upoly_rat(L).expect("checked at construction")).collect()
    }

    pub fn var_names(&self) -> [&str; 2] {
        [&self.fiber_var, &self.base_var]
    }

    /// `e = N/(h^a·B)` read as `(N/(lc^a·B))/H^a` without any x-level gcd.
    pub fn loc_to_num(&self, e: &LocElem) -> Result<(UPoly<QFun>, u32)> {
        let trivial = self.hq.degree().unwrap_or(0) == 0;
        let dens = self.ring.dens();
        let mut scale = QFun::one();
        let mut pole = 0;
        for (i, (dp, &k)) in dens.iter().zip(e.exps()).enumerate() {
            if k == 0 {
                continue;
            }
            let u = dp.to_upoly_qfun(X, Some(L))?;
            if i == 0 && !trivial {
                pole = k;
                scale = scale.mul(&u.lc().pow(k));
            } else {
                scale = scale.mul(&u.coeff(0).pow(k));
            }
        }
        let n = e.num().to_upoly_qfun(X, Some(L))?;
        Ok((n.scale(&scale.inv()), pole))
    }

    /// Vector version over a common power of `H`.
    pub fn locs_to_num(&self, v: &[LocElem]) -> Result<super::hermite::NumForm> {
        let parts: Vec<(UPoly<QFun>, u32)> = v.iter().map(|e| self.loc_to_num(e)).collect::<Result<_>>()?;
        let pole = parts.iter().map(|p| p.1).max().unwrap_or(0);
        let num = parts.into_iter().map(|(n, k)| n.mul(&self.hq.pow(pole - k))).collect();
        Ok(super::hermite::NumForm { num, pole })
    }

    /// `∇_x v = ∂_x v + A_x v`.
    pub fn nabla_x(&self, v: &[RatFun]) -> Vec<RatFun> {
        apply(&self.ax, v).iter().zip(v).map(|(a, c)| a.add(&c.derivative())).collect()
    }

    /// `∇_λ v = ∂_λ v + A_λ v`.
    pub fn nabla_lam(&self, v: &[RatFun]) -> Vec<RatFun> {
        apply(&self.alam, v).iter().zip(v).map(|(a, c)| a.add(&c.derive_coeffs())).collect()
    }
}

pub(crate) fn apply(m: &[Vec<RatFun>], v: &[RatFun]) -> Vec<RatFun> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(RatFun::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Family::new("x", "lam", "x^2 - lam", &["lam"], 1, None).is_ok());
        assert!(matches!(Family::new("x", "lam", "x^2 - lam", &[], 1, None), Err(Error::InvalidFamily(_))));
        assert!(matches!(
            Family::new("x", "lam", "(x - lam)^2", &["lam"], 1, None),
            Err(Error::InvalidFamily(_))
        ));
        assert!(Family::new("x", "lam", "1", &[], 1, None).is_ok());
        let ax = vec![vec!["lam".to_string()]];
        let al = vec![vec!["0".to_string()]];
        assert!(matches!(
            Family::new("x", "lam", "x - lam", &[], 1, Some((&ax, &al))),
            Err(Error::InvalidFamily(_))
        ));
        let k = Family::kummer("x", "lam", "x^2 - lam", &["lam"], crate::exactalg::rat(1, 2)).unwrap();
        assert!(k.is_twisted());
    }
}
