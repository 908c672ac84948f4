//! Bernstein-truncated pieces `D_{≤k}` of the Weyl algebra over a polynomial ring,
//! as finite-dimensional Q-spaces with monomial bases `x^a ∂^b`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactalg::{LocElem, MPoly, Mono, Rat, Ring};
use crate::linalg::Matrix;
use crate::weyl::WeylOp;

type Key = (Vec<u32>, Vec<u32>);

#[derive(Clone, Debug)]
pub struct WeylBasis {
    ring: Ring,
    level: u32,
    monos: Vec<Key>,
    index: HashMap<Key, usize>,
}

fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Exponent vectors of total degree exactly `total` in `n` variables.
pub fn monomials_of_degree(n: usize, total: u32) -> Vec<Vec<u32>> {
    compositions(n, total)
}

impl WeylBasis {
    pub fn new(ring: &Ring, level: u32) -> Result<Self> {
        if !ring.dens().is_empty() {
            return Err(Error::Input("truncated Weyl bases need a polynomial ring".into()));
        }
        let n = ring.nvars();
        let mut monos = Vec::new();
        for s in 0..=level {
            for both in compositions(2 * n, s) {
                monos.push((both[..n].to_vec(), both[n..].to_vec()));
            }
        }
        let index = monos.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Ok(WeylBasis { ring: ring.clone(), level, monos, index })
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn element(&self, i: usize) -> WeylOp {
        let (a, b) = &self.monos[i];
        let c = MPoly::term(self.ring.vars(), Mono(a.clone()), Rat::from_integer(1.into()));
        WeylOp::term(LocElem::from_poly(&self.ring, c), b.clone())
    }

    pub fn label(&self, i: usize) -> String {
        self.element(i).render()
    }

    /// Coordinates of `p`; errors if `p` is not in `D_{≤level}`.
    pub fn coords(&self, p: &WeylOp) -> Result<Vec<(usize, Rat)>> {
        let mut out = Vec::new();
        for (b, c) in p.terms() {
            if !c.is_polynomial() {
                return Err(Error::Input(format!("coefficient {c} is not polynomial")));
            }
            for (m, r) in c.num().terms() {
                let key = (m.0.clone(), b.clone());
                match self.index.get(&key) {
                    Some(&i) => out.push((i, r.clone())),
                    None => {
                        return Err(Error::CapExceeded(format!(
                            "{} leaves the truncation D_{{≤{}}}",
                            WeylOp::term(c.clone(), b.clone()).render(),
                            self.level
                        )))
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Matrix of `P ↦ L·P` (left) or `P ↦ P·L` (right) from `src` to `tgt`.
pub fn mul_matrix(l: &WeylOp, src: &WeylBasis, tgt: &WeylBasis, left: bool) -> Result<Matrix<Rat>> {
    let mut m = Matrix::zeros(tgt.len(), src.len());
    for j in 0..src.len() {
        let e = src.element(j);
        let img = if left { l.mul(&e) } else { e.mul(l) };
        for (i, c) in tgt.coords(&img)? {
            m.add_to(i, j, &c);
        }
    }
    Ok(m)
}

/// Block matrix whose `(r, c)` block is multiplication by `ops[r][c]`.
pub fn op_block_matrix(
    ops: &[Vec<WeylOp>],
    src: &[&WeylBasis],
    tgt: &[&WeylBasis],
    left: bool,
) -> Result<Matrix<Rat>> {
    let rs: Vec<usize> = tgt.iter().map(|b| b.len()).collect();
    let cs: Vec<usize> = src.iter().map(|b| b.len()).collect();
    let mut blocks: Vec<Vec<Matrix<Rat>>> = Vec::new();
    for (r, row) in ops.iter().enumerate() {
        let mut br = Vec::new();
        for (c, op) in row.iter().enumerate() {
            br.push(if op.is_zero() {
                Matrix::zeros(rs[r], cs[c])
            } else {
                mul_matrix(op, src[c], tgt[r], left)?
            });
        }
        blocks.push(br);
    }
    let refs: Vec<Vec<Option<&Matrix<Rat>>>> =
        blocks.iter().map(|r| r.iter().map(Some).collect()).collect();
    Ok(Matrix::blocks(&rs, &cs, &refs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{vars_of, LocRing};

    #[test]
    fn basis_sizes_and_commutator() {
        let r = LocRing::polynomial(vars_of(&["x"]));
        let b = WeylBasis::new(&r, 3).unwrap();
        assert_eq!(b.len(), 10);
        let b4 = WeylBasis::new(&r, 5).unwrap();
        let dx = WeylOp::d(&r, 0);
        let x = WeylOp::from_loc(&LocElem::var_index(&r, 0));
        let l = mul_matrix(&dx.mul(&x), &b, &b4, true).unwrap();
        let rr = mul_matrix(&x.mul(&dx), &b, &b4, true).unwrap();
        let emb = mul_matrix(&WeylOp::one(&r), &b, &b4, true).unwrap();
        assert_eq!(l.sub(&rr), emb);
        assert!(mul_matrix(&dx, &b, &b, true).is_err());
    }
}
