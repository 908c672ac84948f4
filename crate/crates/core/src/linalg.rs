//! Sparse row-major matrices over an exact field, with deterministic elimination.

use std::collections::BTreeMap;

use crate::exactalg::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, F)>>,
}

fn add_rows<F: Field>(a: &[(usize, F)], b: &[(usize, F)], k: &F) -> Vec<(usize, F)> {
    // a + k*b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = k.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&k.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, F::one()));
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, d: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, r) in d.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if !v.is_zero() {
                    m.data[i].push((j, v.clone()));
                }
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.data[i].push((j, v.clone()));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, F)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => {
                if v.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    row.insert(k, (j, v));
                }
            }
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &F) {
        let cur = self.get(i, j);
        self.set(i, j, cur.add(v));
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut d = vec![vec![F::zero(); self.cols]; self.rows];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                d[i][*j] = v.clone();
            }
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, o.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            for (k, a) in r {
                for (j, b) in &o.data[*k] {
                    let t = a.mul(b);
                    let e = acc.entry(*j).or_insert_with(F::zero);
                    *e = e.add(&t);
                }
            }
            out.data[i] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        self.data
            .iter()
            .map(|r| r.iter().fold(F::zero(), |acc, (j, a)| acc.add(&a.mul(&v[*j]))))
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| add_rows(a, b, &F::one())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|(j, v)| (*j, k.mul(v))).collect()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                out.data[*j].push((i, v.clone()));
            }
        }
        out
    }

    /// `[self | o]`.
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        let mut out = self.clone();
        out.cols += o.cols;
        for (i, r) in o.data.iter().enumerate() {
            out.data[i].extend(r.iter().map(|(j, v)| (j + self.cols, v.clone())));
        }
        out
    }

    /// `[self ; o]`.
    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut out = self.clone();
        out.rows += o.rows;
        out.data.extend(o.data.iter().cloned());
        out
    }

    /// Block matrix from a grid of optional blocks with given row/col sizes.
    pub fn blocks(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&Matrix<F>>>]) -> Self {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, cs) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    assert_eq!((b.rows, b.cols), (*rs, *cs), "block shape");
                    for (i, r) in b.data.iter().enumerate() {
                        for (j, v) in r {
                            out.data[r0 + i].push((c0 + j, v.clone()));
                        }
                    }
                }
                c0 += cs;
            }
            r0 += rs;
        }
        for r in &mut out.data {
            r.sort_by_key(|(j, _)| *j);
        }
        out
    }

    /// Reduced row echelon form; pivots chosen left to right, first eligible row
    /// by sparsity then index. Returns (R, pivot columns).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows: Vec<Vec<(usize, F)>> = self.data.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut done: Vec<Vec<(usize, F)>> = Vec::new();
        let mut pivots = Vec::new();
        // bucket rows by leading column
        loop {
            let Some(col) = rows.iter().filter_map(|r| r.first().map(|e| e.0)).min() else { break };
            let cand = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.first().map(|e| e.0) == Some(col))
                .min_by_key(|(i, r)| (r.len(), *i))
                .map(|(i, _)| i)
                .unwrap();
            let mut p = rows.swap_remove(cand);
            let inv = p[0].1.inv();
            for e in &mut p {
                e.1 = e.1.mul(&inv);
            }
            for r in rows.iter_mut() {
                if r.first().map(|e| e.0) == Some(col) {
                    let k = r[0].1.neg();
                    *r = add_rows(r, &p, &k);
                }
            }
            rows.retain(|r| !r.is_empty());
            pivots.push(col);
            done.push(p);
        }
        // back substitution
        for i in (0..done.len()).rev() {
            let col = pivots[i];
            let (head, tail) = done.split_at_mut(i);
            let p = &tail[0];
            for r in head.iter_mut() {
                if let Ok(k) = r.binary_search_by_key(&col, |(c, _)| *c) {
                    let f = r[k].1.neg();
                    *r = add_rows(r, p, &f);
                }
            }
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, r) in done.into_iter().enumerate() {
            out.data[i] = r;
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self v = 0}`, one vector per free column (free entry 1, other frees 0).
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, piv) = self.rref();
        let is_piv: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &piv {
                v[p] = true;
            }
            v
        };
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_piv[j]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (i, &p) in piv.iter().enumerate() {
                let c = r.get(i, free);
                if !c.is_zero() {
                    v[p] = c.neg();
                }
            }
            out.push(v);
        }
        out
    }

    /// A solution of `self x = b` with all free variables zero, if consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in piv.iter().enumerate() {
            x[p] = r.get(i, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, piv) = self.hstack(&Self::identity(n)).rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out.data[i] = r.data[i].iter().filter(|(j, _)| *j >= n).map(|(j, v)| (j - n, v.clone())).collect();
        }
        Some(out)
    }
}

/// Indices of a maximal independent subfamily, chosen greedily in order.
pub fn independent_subset<F: Field>(dim: usize, vecs: &[Vec<F>]) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut basis: Vec<Vec<F>> = Vec::new();
    for (k, v) in vecs.iter().enumerate() {
        let mut cand = basis.clone();
        cand.push(v.clone());
        if Matrix::from_columns(dim, &cand).rank() == cand.len() {
            basis = cand;
            chosen.push(k);
        }
    }
    chosen
}
