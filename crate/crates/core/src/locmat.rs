//! Dense matrices and vectors with localized-ring entries.

use crate::error::{Error, Result};
use crate::exactalg::{LocElem, Ring};

pub type Mat = Vec<Vec<LocElem>>;
pub type Vector = Vec<LocElem>;

pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Mat {
    vec![vec![LocElem::zero(ring); cols]; rows]
}

pub fn identity(ring: &Ring, n: usize) -> Mat {
    let mut m = zeros(ring, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = LocElem::one(ring);
    }
    m
}

pub fn shape(m: &Mat) -> (usize, usize) {
    (m.len(), m.first().map_or(0, |r| r.len()))
}

pub fn is_zero(m: &Mat) -> bool {
    m.iter().all(|r| r.iter().all(|e| e.is_zero()))
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
        .collect()
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

pub fn neg(a: &Mat) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x.neg()).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat, ring: &Ring) -> Mat {
    let (n, k) = shape(a);
    let (_, m) = shape(b);
    let mut out = zeros(ring, n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][l].mul(&b[l][j]));
                }
            }
        }
    }
    out
}

pub fn scale_fn(a: &Mat, g: &LocElem) -> Mat {
    a.iter().map(|r| r.iter().map(|x| g.mul(x)).collect()).collect()
}

pub fn derive(a: &Mat, i: usize) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x.derivative(i)).collect()).collect()
}

pub fn commutator(a: &Mat, b: &Mat, ring: &Ring) -> Mat {
    sub(&mul(a, b, ring), &mul(b, a, ring))
}

pub fn apply(a: &Mat, v: &[LocElem], ring: &Ring) -> Vector {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(LocElem::zero(ring), |acc, (x, y)| acc.add(&x.mul(y)))
        })
        .collect()
}

pub fn check_square(m: &Mat, r: usize, what: &str) -> Result<()> {
    if m.len() != r || m.iter().any(|row| row.len() != r) {
        return Err(Error::Shape(format!("{what}: expected {r}x{r}")));
    }
    Ok(())
}

/// First differing entry, for witnesses.
pub fn first_difference(a: &Mat, b: &Mat) -> Option<(usize, usize, String, String)> {
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                return Some((i, j, x.render(), y.render()));
            }
        }
    }
    None
}

pub fn render(m: &Mat) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|e| e.render()).collect()).collect()
}
