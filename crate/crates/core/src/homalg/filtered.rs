//! Complexes with a two-step filtration `0 ⊂ F¹ ⊂ T`, semilinear over a differential field.
//!
//! `T^q = gr0^q ⊕ gr1^q` and `d_T(z, w) = (d0 z, D z + d1 w)` where `d0`, `d1` are linear and
//! `D(Σ c_k b_k) = Σ ∂(c_k)·emb(b_k) + c_k·D(b_k)`.

use super::TruncComplex;
use crate::error::{Error, Result};
use crate::exactalg::DifferentialField;
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct TwoStepFiltered<F: DifferentialField> {
    pub gr0: TruncComplex<F>,
    /// Indexed by total degree.
    pub gr1: TruncComplex<F>,
    /// `D` on basis vectors, `gr0^q → gr1^{q+1}`, starting at `gr0.lo()`.
    pub dmat: Vec<Matrix<F>>,
    /// Coefficient of `∂c` in `D(c b)`, same indexing.
    pub emb: Vec<Matrix<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeProjection {
    MinusP1,
    /// `ψ`: uses `φ⁻¹ ∘ d` in the top degree of `gr0`, `−p₁` elsewhere.
    Psi,
}

#[derive(Clone, Debug)]
pub struct E1Page<F: DifferentialField> {
    pub degrees: Vec<i32>,
    pub e1_0: Vec<usize>,
    pub e1_1: Vec<usize>,
    /// `d₁: E₁^{0,q} → E₁^{1,q+1}` in the chosen representative bases.
    pub d1: Vec<Matrix<F>>,
    pub reps0: Vec<Vec<Vec<F>>>,
    pub reps1: Vec<Vec<Vec<F>>>,
}

impl<F: DifferentialField> E1Page<F> {
    pub fn e2_0(&self) -> Vec<usize> {
        self.d1.iter().zip(&self.e1_0).map(|(m, &n)| n - m.rank()).collect()
    }

    /// `E₂^{1,q}` = cokernel of the incoming `d₁`.
    pub fn e2_1(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .enumerate()
            .map(|(k, _)| {
                let incoming = if k == 0 { 0 } else { self.d1[k - 1].rank() };
                self.e1_1[k] - incoming
            })
            .collect()
    }
}

pub fn derive_matrix<F: DifferentialField>(m: &Matrix<F>) -> Matrix<F> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for (j, v) in m.row(i) {
            out.set(i, *j, v.derive());
        }
    }
    out
}

fn derive_vec<F: DifferentialField>(v: &[F]) -> Vec<F> {
    v.iter().map(|c| c.derive()).collect()
}

impl<F: DifferentialField> TwoStepFiltered<F> {
    pub fn new(gr0: TruncComplex<F>, gr1: TruncComplex<F>, dmat: Vec<Matrix<F>>, emb: Vec<Matrix<F>>) -> Result<Self> {
        let n = (gr0.hi() - gr0.lo() + 1) as usize;
        if dmat.len() != n || emb.len() != n {
            return Err(Error::Shape(format!("need {n} components of D, got {} and {}", dmat.len(), emb.len())));
        }
        let t = TwoStepFiltered { gr0, gr1, dmat, emb };
        for q in t.gr0.lo()..=t.gr0.hi() {
            let (r, c) = (t.gr1.dim(q + 1), t.gr0.dim(q));
            let (dm, em) = (t.d_at(q), t.emb_at(q));
            if dm.rows() != r || dm.cols() != c || em.rows() != r || em.cols() != c {
                return Err(Error::Shape(format!("D component in degree {q} has the wrong shape")));
            }
        }
        for q in t.gr0.lo() - 1..=t.gr0.hi() {
            let d0 = t.gr0.d(q);
            let d1 = t.gr1.d(q + 1);
            // coefficient of c' and of c in d_T² (z) = 0
            let lin = t.emb_at(q + 1).mul(&d0).add(&d1.mul(&t.emb_at(q)));
            let semi = t
                .emb_at(q + 1)
                .mul(&derive_matrix(&d0))
                .add(&t.d_at(q + 1).mul(&d0))
                .add(&d1.mul(&t.d_at(q)));
            if !lin.is_zero() || !semi.is_zero() {
                return Err(Error::NotAComplex(q));
            }
        }
        Ok(t)
    }

    fn d_at(&self, q: i32) -> Matrix<F> {
        let k = q - self.gr0.lo();
        if k >= 0 && (k as usize) < self.dmat.len() {
            self.dmat[k as usize].clone()
        } else {
            Matrix::zeros(self.gr1.dim(q + 1), self.gr0.dim(q))
        }
    }

    fn emb_at(&self, q: i32) -> Matrix<F> {
        let k = q - self.gr0.lo();
        if k >= 0 && (k as usize) < self.emb.len() {
            self.emb[k as usize].clone()
        } else {
            Matrix::zeros(self.gr1.dim(q + 1), self.gr0.dim(q))
        }
    }

    /// `D z` for a coordinate vector `z` of `gr0^q`.
    pub fn apply_d(&self, q: i32, z: &[F]) -> Vec<F> {
        let a = self.d_at(q).mul_vec(z);
        let b = self.emb_at(q).mul_vec(&derive_vec(z));
        a.iter().zip(&b).map(|(x, y)| x.add(y)).collect()
    }

    /// Image of a cone cycle under the chosen projection to `gr1^{q+1}`; the cycle is
    /// `(a, b) = (−D z, (z, 0))` in `cone(F¹ → T)^q`.
    pub fn cone_image(&self, q: i32, z: &[F], proj: ConeProjection) -> Result<Vec<F>> {
        if !self.gr0.d(q).mul_vec(z).iter().all(|c| c.is_zero()) {
            return Err(Error::LiftFailed(format!("representative in degree {q} is not a cycle")));
        }
        let dz = self.apply_d(q, z);
        let a: Vec<F> = dz.iter().map(|c| c.neg()).collect();
        if !self.gr1.d(q + 1).mul_vec(&a).iter().all(|c| c.is_zero()) {
            return Err(Error::LiftFailed(format!("cone element in degree {q} is not a cycle")));
        }
        match proj {
            ConeProjection::MinusP1 => Ok(a.iter().map(|c| c.neg()).collect()),
            ConeProjection::Psi if q == self.gr0.hi() => {
                // d_T(z, 0) lies in gr1^{q+1} since gr0^{q+1} = 0, where φ is the identity
                if self.gr0.dim(q + 1) != 0 {
                    return Err(Error::LiftFailed("inclusion is not onto in the top degree".into()));
                }
                Ok(dz)
            }
            ConeProjection::Psi => Ok(a.iter().map(|c| c.neg()).collect()),
        }
    }

    /// `d₁` on given cycle representatives, via `D` directly or through a cone projection.
    pub fn d1_on(&self, q: i32, src: &[Vec<F>], tgt: &[Vec<F>], proj: Option<ConeProjection>) -> Result<Matrix<F>> {
        let mut cols = Vec::new();
        for z in src {
            let img = match proj {
                None => self.apply_d(q, z),
                Some(p) => self.cone_image(q, z, p)?,
            };
            if !self.gr1.d(q + 1).mul_vec(&img).iter().all(|c| c.is_zero()) {
                return Err(Error::LiftFailed(format!("D z is not a cycle in degree {}", q + 1)));
            }
            let c = self
                .gr1
                .class_coords(q + 1, tgt, &img)
                .ok_or_else(|| Error::LiftFailed(format!("no solution for the class of D z in degree {}", q + 1)))?;
            cols.push(c);
        }
        Ok(Matrix::from_columns(tgt.len(), &cols))
    }

    pub fn e1_page(&self) -> Result<E1Page<F>> {
        self.e1_page_with(None)
    }

    pub fn e1_page_via_cone(&self, proj: ConeProjection) -> Result<E1Page<F>> {
        self.e1_page_with(Some(proj))
    }

    fn e1_page_with(&self, proj: Option<ConeProjection>) -> Result<E1Page<F>> {
        let degrees: Vec<i32> = (self.gr0.lo()..=self.gr0.hi() + 1).collect();
        let reps0: Vec<Vec<Vec<F>>> = degrees.iter().map(|&q| self.gr0.homology(q).reps).collect();
        let reps1: Vec<Vec<Vec<F>>> = degrees.iter().map(|&q| self.gr1.homology(q).reps).collect();
        let mut d1 = Vec::new();
        for (k, &q) in degrees.iter().enumerate() {
            let tgt: &[Vec<F>] = if k + 1 < degrees.len() { &reps1[k + 1] } else { &[] };
            if tgt.is_empty() {
                d1.push(Matrix::zeros(0, reps0[k].len()));
            } else {
                d1.push(self.d1_on(q, &reps0[k], tgt, proj)?);
            }
        }
        Ok(E1Page {
            e1_0: reps0.iter().map(|r| r.len()).collect(),
            e1_1: reps1.iter().map(|r| r.len()).collect(),
            degrees,
            d1,
            reps0,
            reps1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::exactalg::Rat;

    #[test]
    fn zero_first_step_gives_zero_d1() {
        // gr1 = 0: E1 = homology of gr0, d1 = 0
        let mut m = Matrix::zeros(2, 3);
        m.set(0, 1, rat(1, 1));
        m.set(1, 2, rat(2, 1));
        let gr0 = TruncComplex::<Rat>::from_dims(0, &[3, 2], vec![m]).unwrap();
        let gr1 = TruncComplex::<Rat>::from_dims(1, &[0, 0], vec![Matrix::zeros(0, 0)]).unwrap();
        let t = TwoStepFiltered::new(gr0, gr1, vec![Matrix::zeros(0, 3), Matrix::zeros(0, 2)], vec![Matrix::zeros(0, 3), Matrix::zeros(0, 2)]).unwrap();
        let e1 = t.e1_page().unwrap();
        assert_eq!(e1.e1_0, vec![1, 0, 0]);
        assert!(e1.d1.iter().all(|m| m.is_zero()));
    }

    #[test]
    fn nonzero_d1_over_q() {
        // gr0: Q → 0, gr1: 0 in degree 1... Q in degree 1 with D = 1
        let gr0 = TruncComplex::<Rat>::from_dims(0, &[1], vec![]).unwrap();
        let gr1 = TruncComplex::<Rat>::from_dims(1, &[1], vec![]).unwrap();
        let one = Matrix::identity(1);
        let t = TwoStepFiltered::new(gr0, gr1, vec![one.clone()], vec![one]).unwrap();
        let e1 = t.e1_page().unwrap();
        assert_eq!(e1.d1[0].get(0, 0), rat(1, 1));
        assert_eq!(e1.e2_0(), vec![0, 0]);
        let c = t.e1_page_via_cone(ConeProjection::Psi).unwrap();
        assert_eq!(c.d1, e1.d1);
        let c2 = t.e1_page_via_cone(ConeProjection::MinusP1).unwrap();
        assert_eq!(c2.d1, e1.d1);
    }
}
