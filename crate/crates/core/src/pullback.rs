//! Inverse images of connections along polynomial maps of charts, computed
//! through the jet section and through the tensor-product D-module action.

use serde::Serialize;

use crate::conn::Connection;
use crate::error::{Error, Result};
use crate::exactalg::{LocElem, Ring};
use crate::locmat::{self, Mat, Vector};

/// `f: X → Y` given by `y_k = f_k(x)`.
#[derive(Clone, Debug)]
pub struct PolyMap {
    source: Ring,
    target: Ring,
    comps: Vec<LocElem>,
}

impl PolyMap {
    pub fn new(source: &Ring, target: &Ring, comps: Vec<LocElem>) -> Result<Self> {
        if comps.len() != target.nvars() {
            return Err(Error::InvalidMap(format!(
                "{} components for {} target variables",
                comps.len(),
                target.nvars()
            )));
        }
        if comps.iter().any(|c| !crate::exactalg::loc::same_ring(c.ring(), source)) {
            return Err(Error::RingMismatch);
        }
        let m = PolyMap { source: source.clone(), target: target.clone(), comps };
        for d in target.dens() {
            let img = LocElem::from_poly(target, d.clone()).substitute(source, &m.comps)?;
            if img.inv().is_err() {
                return Err(Error::InvalidMap(format!(
                    "denominator {d} maps to {img}, not a unit of the source ring"
                )));
            }
        }
        Ok(m)
    }

    pub fn identity(ring: &Ring) -> Self {
        let comps = (0..ring.nvars()).map(|i| LocElem::var_index(ring, i)).collect();
        PolyMap { source: ring.clone(), target: ring.clone(), comps }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn components(&self) -> &[LocElem] {
        &self.comps
    }

    /// `u ↦ u ∘ f`.
    pub fn pull_fn(&self, u: &LocElem) -> LocElem {
        u.substitute(&self.source, &self.comps)
            .expect("target denominators were checked to map to units")
    }

    pub fn pull_mat(&self, m: &Mat) -> Mat {
        m.iter().map(|r| r.iter().map(|e| self.pull_fn(e)).collect()).collect()
    }

    /// `g ∘ self` for `g: Y → Z`.
    pub fn then(&self, g: &PolyMap) -> Result<PolyMap> {
        if !crate::exactalg::loc::same_ring(&g.source, &self.target) {
            return Err(Error::RingMismatch);
        }
        let comps = g.comps.iter().map(|c| self.pull_fn(c)).collect();
        PolyMap::new(&self.source, &g.target, comps)
    }

    fn check(&self, c: &Connection) -> Result<()> {
        if crate::exactalg::loc::same_ring(c.ring(), &self.target) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

/// Connection route: pull back the form part of `δ(e_j) = (e_j, Σ_k dy_k ⊗ A_k e_j)` using
/// `f*(dy_k) = Σ_i ∂_i f_k dx_i`, then read off `∇ = δ − c`.
pub fn pullback_connection(f: &PolyMap, c: &Connection) -> Result<Connection> {
    f.check(c)?;
    let src = &f.source;
    let r = c.rank();
    let n = src.nvars();
    let jet = c.jet_section();
    let mut mats = vec![locmat::zeros(src, r, r); n];
    for j in 0..r {
        let d = jet.delta(&c.basis_vector(j));
        for (k, form_k) in d.forms.iter().enumerate() {
            let pulled: Vector = form_k.iter().map(|e| f.pull_fn(e)).collect();
            for (i, mat) in mats.iter_mut().enumerate() {
                let dfk = f.comps[k].derivative(i);
                if dfk.is_zero() {
                    continue;
                }
                for (l, p) in pulled.iter().enumerate() {
                    mat[l][j] = mat[l][j].add(&dfk.mul(p));
                }
            }
        }
    }
    Connection::new(src, r, mats)
}

/// An element `Σ α ⊗ m` of `O_X ⊗_{f^{-1}O_Y} f^{-1}M`, kept unnormalized.
#[derive(Clone, Debug)]
struct Tensor {
    terms: Vec<(LocElem, Vector)>,
}

/// D-module route: `∂_i(α ⊗ m) = ∂_i(α) ⊗ m + α Σ_k ∂_i(f_k) ⊗ η_k(m)`, normalized onto
/// the free basis `1 ⊗ e_l` only at the end.
pub fn pullback_dmodule(f: &PolyMap, c: &Connection) -> Result<Connection> {
    f.check(c)?;
    let src = &f.source;
    let tgt = &f.target;
    let r = c.rank();
    let eta = |k: usize, m: &Vector| -> Vector { c.nabla(k, m) };
    let act = |i: usize, t: &Tensor| -> Tensor {
        let mut out = Vec::new();
        for (alpha, m) in &t.terms {
            out.push((alpha.derivative(i), m.clone()));
            for k in 0..tgt.nvars() {
                let dfk = f.comps[k].derivative(i);
                if !dfk.is_zero() {
                    out.push((alpha.mul(&dfk), eta(k, m)));
                }
            }
        }
        Tensor { terms: out }
    };
    let normalize = |t: &Tensor| -> Vector {
        let mut v = vec![LocElem::zero(src); r];
        for (alpha, m) in &t.terms {
            for (l, ml) in m.iter().enumerate() {
                v[l] = v[l].add(&alpha.mul(&f.pull_fn(ml)));
            }
        }
        v
    };
    let mut mats = vec![locmat::zeros(src, r, r); src.nvars()];
    for j in 0..r {
        let gen = Tensor { terms: vec![(LocElem::one(src), c.basis_vector(j))] };
        for (i, mat) in mats.iter_mut().enumerate() {
            let col = normalize(&act(i, &gen));
            for (l, e) in col.into_iter().enumerate() {
                mat[l][j] = e;
            }
        }
    }
    Connection::new(src, r, mats)
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub var: String,
    pub row: usize,
    pub col: usize,
    pub connection_route: String,
    pub dmodule_route: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackReport {
    pub equal: bool,
    pub matrices: Vec<(String, Vec<Vec<String>>)>,
    pub witness: Option<Witness>,
}

pub fn compare_pullbacks(f: &PolyMap, c: &Connection) -> Result<PullbackReport> {
    let a = pullback_connection(f, c)?;
    let b = pullback_dmodule(f, c)?;
    let vars = f.source.vars();
    let mut witness = None;
    for (i, (ma, mb)) in a.mats().iter().zip(b.mats()).enumerate() {
        if let Some((row, col, x, y)) = locmat::first_difference(ma, mb) {
            witness = Some(Witness {
                var: vars[i].clone(),
                row,
                col,
                connection_route: x,
                dmodule_route: y,
            });
            break;
        }
    }
    Ok(PullbackReport {
        equal: witness.is_none(),
        matrices: a
            .mats()
            .iter()
            .enumerate()
            .map(|(i, m)| (vars[i].clone(), locmat::render(m)))
            .collect(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_loc, parse_poly, vars_of, LocRing};

    fn squaring() -> (Ring, Ring, PolyMap) {
        let vx = vars_of(&["x"]);
        let vy = vars_of(&["y"]);
        let rx = LocRing::new(vx.clone(), vec![parse_poly(&vx, "x").unwrap()]).unwrap();
        let ry = LocRing::new(vy.clone(), vec![parse_poly(&vy, "y").unwrap()]).unwrap();
        let f = PolyMap::new(&rx, &ry, vec![parse_loc(&rx, "x^2").unwrap()]).unwrap();
        (rx, ry, f)
    }

    #[test]
    fn squaring_map_example() {
        let (rx, ry, f) = squaring();
        let c = Connection::new(&ry, 1, vec![vec![vec![parse_loc(&ry, "5/y").unwrap()]]]).unwrap();
        let a = pullback_connection(&f, &c).unwrap();
        assert_eq!(a.mat(0)[0][0], parse_loc(&rx, "10/x").unwrap());
        let b = pullback_dmodule(&f, &c).unwrap();
        assert_eq!(a, b);
        let rep = compare_pullbacks(&f, &c).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.matrices[0].1[0][0], "10/x");
    }

    #[test]
    fn trivial_and_identity() {
        let (rx, ry, f) = squaring();
        let t = Connection::trivial(&ry, 2);
        assert_eq!(pullback_connection(&f, &t).unwrap(), Connection::trivial(&rx, 2));
        assert_eq!(pullback_dmodule(&f, &t).unwrap(), Connection::trivial(&rx, 2));
        let c = Connection::new(&ry, 1, vec![vec![vec![parse_loc(&ry, "y + 1/y").unwrap()]]]).unwrap();
        let id = PolyMap::identity(&ry);
        assert_eq!(pullback_connection(&id, &c).unwrap(), c);
        assert_eq!(pullback_dmodule(&id, &c).unwrap(), c);
    }

    #[test]
    fn undeclared_denominator_rejected() {
        let vx = vars_of(&["x"]);
        let vy = vars_of(&["y"]);
        let rx = LocRing::polynomial(vx);
        let ry = LocRing::new(vy.clone(), vec![parse_poly(&vy, "y").unwrap()]).unwrap();
        assert!(matches!(
            PolyMap::new(&rx, &ry, vec![parse_loc(&rx, "x + 1").unwrap()]),
            Err(Error::InvalidMap(_))
        ));
    }
}
