//! Finite complexes of vector spaces, chain maps, homotopies and mapping cones.

pub mod exactness;
pub mod filtered;
pub mod lemma;
pub mod wtrunc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::linalg::{independent_subset, Matrix};

pub use exactness::{truncated_exactness, Certificate, ResolutionKind};
pub use filtered::{ConeProjection, E1Page, TwoStepFiltered};

/// Complex `C^lo → … → C^hi`; `d[k]` maps degree `lo+k` to `lo+k+1`.
#[derive(Clone, Debug)]
pub struct TruncComplex<F: Field> {
    lo: i32,
    labels: Vec<Vec<String>>,
    d: Vec<Matrix<F>>,
}

#[derive(Clone, Debug)]
pub struct Homology<F: Field> {
    pub degree: i32,
    pub dim: usize,
    pub cycles: usize,
    pub boundaries: usize,
    pub reps: Vec<Vec<F>>,
    /// Query at an end of the truncation; the value may depend on the cut.
    pub truncation_polluted: bool,
}

impl<F: Field> TruncComplex<F> {
    pub fn new(lo: i32, labels: Vec<Vec<String>>, d: Vec<Matrix<F>>) -> Result<Self> {
        if labels.is_empty() || d.len() + 1 != labels.len() {
            return Err(Error::Shape(format!("{} terms but {} differentials", labels.len(), d.len())));
        }
        for (k, m) in d.iter().enumerate() {
            if m.cols() != labels[k].len() || m.rows() != labels[k + 1].len() {
                return Err(Error::Shape(format!(
                    "differential from degree {} is {}x{}, terms have dims {} and {}",
                    lo + k as i32,
                    m.rows(),
                    m.cols(),
                    labels[k].len(),
                    labels[k + 1].len()
                )));
            }
        }
        for k in 0..d.len().saturating_sub(1) {
            if !d[k + 1].mul(&d[k]).is_zero() {
                return Err(Error::NotAComplex(lo + k as i32));
            }
        }
        Ok(TruncComplex { lo, labels, d })
    }

    /// Terms with the given dimensions, anonymous labels.
    pub fn from_dims(lo: i32, dims: &[usize], d: Vec<Matrix<F>>) -> Result<Self> {
        let labels = dims
            .iter()
            .enumerate()
            .map(|(k, &n)| (0..n).map(|i| format!("c{}_{}", lo + k as i32, i)).collect())
            .collect();
        Self::new(lo, labels, d)
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.labels.len() as i32 - 1
    }

    pub fn dim(&self, q: i32) -> usize {
        if q < self.lo || q > self.hi() {
            0
        } else {
            self.labels[(q - self.lo) as usize].len()
        }
    }

    pub fn labels(&self, q: i32) -> &[String] {
        if q < self.lo || q > self.hi() {
            &[]
        } else {
            &self.labels[(q - self.lo) as usize]
        }
    }

    /// `d: C^q → C^{q+1}` (zero outside the stored range).
    pub fn d(&self, q: i32) -> Matrix<F> {
        if q >= self.lo && q < self.hi() {
            self.d[(q - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.dim(q + 1), self.dim(q))
        }
    }

    /// Same terms, shifted: `C[k]^q = C^{q+k}`, differentials not re-signed.
    pub fn shift(&self, k: i32) -> Self {
        TruncComplex { lo: self.lo - k, labels: self.labels.clone(), d: self.d.clone() }
    }

    pub fn homology(&self, q: i32) -> Homology<F> {
        let polluted = q <= self.lo || q >= self.hi();
        let out = self.d(q);
        let inc = self.d(q - 1);
        let n = self.dim(q);
        let z = if out.rows() == 0 {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
                .collect()
        } else {
            out.nullspace()
        };
        let bcols: Vec<Vec<F>> = (0..inc.cols()).map(|j| inc.column(j)).collect();
        let bidx = independent_subset(n, &bcols);
        let mut fam: Vec<Vec<F>> = bidx.iter().map(|&j| bcols[j].clone()).collect();
        let nb = fam.len();
        fam.extend(z.iter().cloned());
        let chosen = independent_subset(n, &fam);
        let reps: Vec<Vec<F>> = chosen.iter().filter(|&&k| k >= nb).map(|&k| fam[k].clone()).collect();
        Homology {
            degree: q,
            dim: reps.len(),
            cycles: z.len(),
            boundaries: nb,
            reps,
            truncation_polluted: polluted,
        }
    }

    pub fn homology_dims(&self) -> Vec<(i32, usize)> {
        (self.lo..=self.hi()).map(|q| (q, self.homology(q).dim)).collect()
    }

    /// Coordinates of a cycle against homology representatives, modulo boundaries.
    pub fn class_coords(&self, q: i32, reps: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
        let inc = self.d(q - 1);
        let n = self.dim(q);
        let mut cols: Vec<Vec<F>> = reps.to_vec();
        cols.extend((0..inc.cols()).map(|j| inc.column(j)));
        let sol = Matrix::from_columns(n, &cols).solve(v)?;
        Some(sol[..reps.len()].to_vec())
    }
}

/// Per-degree matrices `C^q → D^{q+shift}` for `q` in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<F: Field> {
    pub lo: i32,
    pub shift: i32,
    pub mats: Vec<Matrix<F>>,
}

pub type Homotopy<F> = GradedMap<F>;

impl<F: Field> GradedMap<F> {
    pub fn at(&self, q: i32, src: &TruncComplex<F>, tgt: &TruncComplex<F>) -> Matrix<F> {
        let k = q - self.lo;
        if k >= 0 && (k as usize) < self.mats.len() {
            self.mats[k as usize].clone()
        } else {
            Matrix::zeros(tgt.dim(q + self.shift), src.dim(q))
        }
    }

    pub fn identity(c: &TruncComplex<F>) -> Self {
        GradedMap { lo: c.lo, shift: 0, mats: (c.lo..=c.hi()).map(|q| Matrix::identity(c.dim(q))).collect() }
    }

    pub fn zero(src: &TruncComplex<F>, tgt: &TruncComplex<F>, shift: i32) -> Self {
        GradedMap {
            lo: src.lo,
            shift,
            mats: (src.lo..=src.hi()).map(|q| Matrix::zeros(tgt.dim(q + shift), src.dim(q))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        GradedMap { lo: self.lo, shift: self.shift, mats: self.mats.iter().map(|m| m.neg()).collect() }
    }

    pub fn check_shapes(&self, src: &TruncComplex<F>, tgt: &TruncComplex<F>) -> Result<()> {
        for (k, m) in self.mats.iter().enumerate() {
            let q = self.lo + k as i32;
            if m.cols() != src.dim(q) || m.rows() != tgt.dim(q + self.shift) {
                return Err(Error::Shape(format!(
                    "map component in degree {q} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    tgt.dim(q + self.shift),
                    src.dim(q)
                )));
            }
        }
        Ok(())
    }

    /// `d f = sign · f d` in every degree (sign −1 for anti-chain maps).
    fn commutes(&self, src: &TruncComplex<F>, tgt: &TruncComplex<F>, sign: i32) -> bool {
        let lo = src.lo.min(self.lo) - 1;
        let hi = src.hi().max(self.lo + self.mats.len() as i32) + 1;
        (lo..=hi).all(|q| {
            let l = tgt.d(q + self.shift).mul(&self.at(q, src, tgt));
            let r = self.at(q + 1, src, tgt).mul(&src.d(q));
            if sign > 0 {
                l == r
            } else {
                l == r.neg()
            }
        })
    }

    pub fn is_chain_map(&self, src: &TruncComplex<F>, tgt: &TruncComplex<F>) -> bool {
        self.shift == 0 && self.check_shapes(src, tgt).is_ok() && self.commutes(src, tgt, 1)
    }

    pub fn is_anti_chain_map(&self, src: &TruncComplex<F>, tgt: &TruncComplex<F>) -> bool {
        self.shift == 0 && self.check_shapes(src, tgt).is_ok() && self.commutes(src, tgt, -1)
    }

    /// Induced map on `H^q` in the given representative bases.
    pub fn on_homology(
        &self,
        q: i32,
        src: &TruncComplex<F>,
        tgt: &TruncComplex<F>,
        src_reps: &[Vec<F>],
        tgt_reps: &[Vec<F>],
    ) -> Option<Matrix<F>> {
        let m = self.at(q, src, tgt);
        let cols: Option<Vec<Vec<F>>> = src_reps
            .iter()
            .map(|z| tgt.class_coords(q + self.shift, tgt_reps, &m.mul_vec(z)))
            .collect();
        Some(Matrix::from_columns(tgt_reps.len(), &cols?))
    }
}

/// Degrees where `d h + h d = f − g` fails (empty means verified).
pub fn homotopy_failures<F: Field>(
    f: &GradedMap<F>,
    g: &GradedMap<F>,
    h: &Homotopy<F>,
    src: &TruncComplex<F>,
    tgt: &TruncComplex<F>,
) -> Result<Vec<i32>> {
    f.check_shapes(src, tgt)?;
    g.check_shapes(src, tgt)?;
    h.check_shapes(src, tgt)?;
    if f.shift != 0 || g.shift != 0 || h.shift != -1 {
        return Err(Error::Shape("homotopy needs degree-0 maps and a degree −1 homotopy".into()));
    }
    let mut bad = Vec::new();
    for q in src.lo..=src.hi() {
        let dh = tgt.d(q - 1).mul(&h.at(q, src, tgt));
        let hd = h.at(q + 1, src, tgt).mul(&src.d(q));
        let diff = f.at(q, src, tgt).sub(&g.at(q, src, tgt));
        if dh.add(&hd) != diff {
            bad.push(q);
        }
    }
    Ok(bad)
}

pub fn verify_homotopy<F: Field>(
    f: &GradedMap<F>,
    g: &GradedMap<F>,
    h: &Homotopy<F>,
    src: &TruncComplex<F>,
    tgt: &TruncComplex<F>,
) -> Result<bool> {
    Ok(homotopy_failures(f, g, h, src, tgt)?.is_empty())
}

/// `cone(u)^q = A^{q+1} ⊕ B^q`, `d(a, b) = (−d_A a, u a + d_B b)`.
#[derive(Clone, Debug)]
pub struct Cone<F: Field> {
    pub complex: TruncComplex<F>,
    pub a: TruncComplex<F>,
    pub b: TruncComplex<F>,
}

pub fn mapping_cone<F: Field>(u: &GradedMap<F>, a: &TruncComplex<F>, b: &TruncComplex<F>) -> Result<Cone<F>> {
    if !u.is_chain_map(a, b) {
        return Err(Error::NotChainMap("mapping cone input".into()));
    }
    let lo = (a.lo - 1).min(b.lo);
    let hi = (a.hi() - 1).max(b.hi());
    let mut labels = Vec::new();
    for q in lo..=hi {
        let mut l: Vec<String> = a.labels(q + 1).iter().map(|s| format!("A:{s}")).collect();
        l.extend(b.labels(q).iter().map(|s| format!("B:{s}")));
        labels.push(l);
    }
    let mut d = Vec::new();
    for q in lo..hi {
        let (a1, b0, a2, b1) = (a.dim(q + 1), b.dim(q), a.dim(q + 2), b.dim(q + 1));
        let da = a.d(q + 1).neg();
        let uq = u.at(q + 1, a, b);
        let db = b.d(q);
        d.push(Matrix::blocks(&[a2, b1], &[a1, b0], &[vec![Some(&da), None], vec![Some(&uq), Some(&db)]]));
    }
    let complex = TruncComplex::new(lo, labels, d)?;
    Ok(Cone { complex, a: a.clone(), b: b.clone() })
}

impl<F: Field> Cone<F> {
    /// `A[1]` with unchanged differentials.
    pub fn a_shifted(&self) -> TruncComplex<F> {
        self.a.shift(1)
    }

    /// `−p₁ = (−1, 0): cone → A[1]`.
    pub fn minus_p1(&self) -> GradedMap<F> {
        let c = &self.complex;
        GradedMap {
            lo: c.lo,
            shift: 0,
            mats: (c.lo..=c.hi())
                .map(|q| {
                    let na = self.a.dim(q + 1);
                    let m = Matrix::<F>::identity(na).neg();
                    let z = Matrix::zeros(na, self.b.dim(q));
                    m.hstack(&z)
                })
                .collect(),
        }
    }

    /// `(0, g): cone → T` for a map `g: B → T`.
    pub fn through_b(&self, g: &GradedMap<F>, t: &TruncComplex<F>) -> GradedMap<F> {
        let c = &self.complex;
        GradedMap {
            lo: c.lo,
            shift: 0,
            mats: (c.lo..=c.hi())
                .map(|q| {
                    let gq = g.at(q, &self.b, t);
                    Matrix::zeros(t.dim(q), self.a.dim(q + 1)).hstack(&gq)
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimTable {
    pub degrees: Vec<i32>,
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
}

pub fn dim_table<F: Field>(c: &TruncComplex<F>) -> DimTable {
    let degrees: Vec<i32> = (c.lo..=c.hi()).collect();
    DimTable {
        dims: degrees.iter().map(|&q| c.dim(q)).collect(),
        homology: degrees.iter().map(|&q| c.homology(q).dim).collect(),
        degrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Rat};

    fn mat(rows: usize, cols: usize, d: &[i64]) -> Matrix<Rat> {
        let dense: Vec<Vec<Rat>> = (0..rows).map(|i| (0..cols).map(|j| rat(d[i * cols + j], 1)).collect()).collect();
        Matrix::from_dense(rows, cols, &dense)
    }

    /// ∂_x on Q[x]_{≤6} → Q[x]_{≤5}.
    fn derivative_complex() -> TruncComplex<Rat> {
        let mut m = Matrix::zeros(6, 7);
        for k in 1..=6usize {
            m.set(k - 1, k, rat(k as i64, 1));
        }
        TruncComplex::from_dims(0, &[7, 6], vec![m]).unwrap()
    }

    #[test]
    fn zero_differential_homology() {
        let c = TruncComplex::<Rat>::from_dims(0, &[1, 1], vec![Matrix::zeros(1, 1)]).unwrap();
        assert_eq!(c.homology(0).dim, 1);
        assert_eq!(c.homology(1).dim, 1);
        assert!(c.homology(0).truncation_polluted);
    }

    #[test]
    fn calculus_complex() {
        let c = derivative_complex();
        let h0 = c.homology(0);
        assert_eq!(h0.dim, 1);
        assert_eq!(h0.reps[0][0], rat(1, 1));
        assert_eq!(c.homology(1).dim, 0);
    }

    #[test]
    fn rejects_non_complex() {
        let d0 = mat(1, 1, &[1]);
        let d1 = mat(1, 1, &[1]);
        assert!(matches!(TruncComplex::from_dims(0, &[1, 1, 1], vec![d0, d1]), Err(Error::NotAComplex(0))));
    }

    #[test]
    fn cones_of_identity_and_zero() {
        let a = derivative_complex();
        let id = GradedMap::identity(&a);
        let cone = mapping_cone(&id, &a, &a).unwrap();
        for (_, h) in cone.complex.homology_dims() {
            assert_eq!(h, 0);
        }
        let z = GradedMap::zero(&a, &a, 0);
        let cz = mapping_cone(&z, &a, &a).unwrap();
        // H^q(cone 0) = H^{q+1}(A) ⊕ H^q(B)
        let dims: Vec<usize> = cz.complex.homology_dims().iter().map(|x| x.1).collect();
        assert_eq!(dims, vec![1, 1, 0]);
        let bad = GradedMap { lo: 0, shift: 0, mats: vec![Matrix::identity(7), Matrix::zeros(6, 6)] };
        assert!(mapping_cone(&bad, &a, &a).is_err());
    }

    #[test]
    fn trivial_homotopy() {
        let a = derivative_complex();
        let id = GradedMap::identity(&a);
        let h = GradedMap::zero(&a, &a, -1);
        assert!(verify_homotopy(&id, &id, &h, &a, &a).unwrap());
        let z = GradedMap::zero(&a, &a, 0);
        assert!(!verify_homotopy(&id, &z, &h, &a, &a).unwrap());
    }
}
