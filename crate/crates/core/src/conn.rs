//! Connections on free modules `O^r` and their equivalent presentations:
//! connection matrices, jet sections, derivation actions, left D-module action.
//!
//! Convention: `∇_i s = ∂_i s + A_i s`; column `j` of `A_i` is `∇_i(e_j)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{LocElem, Ring};
use crate::locmat::{self, Mat, Vector};
use crate::random::{self, Gen};
use crate::weyl::WeylOp;

#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    ring: Ring,
    rank: usize,
    mats: Vec<Mat>,
}

impl Connection {
    pub fn new(ring: &Ring, rank: usize, mats: Vec<Mat>) -> Result<Self> {
        if mats.len() != ring.nvars() {
            return Err(Error::Shape(format!(
                "{} connection matrices for {} variables",
                mats.len(),
                ring.nvars()
            )));
        }
        for (i, m) in mats.iter().enumerate() {
            locmat::check_square(m, rank, &format!("matrix for {}", ring.vars()[i]))?;
        }
        Ok(Connection { ring: ring.clone(), rank, mats })
    }

    pub fn trivial(ring: &Ring, rank: usize) -> Self {
        let mats = (0..ring.nvars()).map(|_| locmat::zeros(ring, rank, rank)).collect();
        Connection { ring: ring.clone(), rank, mats }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn mat(&self, i: usize) -> &Mat {
        &self.mats[i]
    }

    /// Components `∂_i A_j − ∂_j A_i + [A_i, A_j]` for `i < j`.
    pub fn curvature(&self) -> Vec<((usize, usize), Mat)> {
        self.curvature_on(&(0..self.ring.nvars()).collect::<Vec<_>>())
    }

    /// Curvature restricted to pairs of the given variables.
    pub fn curvature_on(&self, idx: &[usize]) -> Vec<((usize, usize), Mat)> {
        let mut out = Vec::new();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                let m = locmat::add(
                    &locmat::sub(&locmat::derive(&self.mats[j], i), &locmat::derive(&self.mats[i], j)),
                    &locmat::commutator(&self.mats[i], &self.mats[j], &self.ring),
                );
                out.push(((i, j), m));
            }
        }
        out
    }

    pub fn is_integrable(&self) -> bool {
        self.curvature().iter().all(|(_, m)| locmat::is_zero(m))
    }

    /// `∇_i s`.
    pub fn nabla(&self, i: usize, s: &[LocElem]) -> Vector {
        let a = locmat::apply(&self.mats[i], s, &self.ring);
        s.iter().zip(a).map(|(x, y)| x.derivative(i).add(&y)).collect()
    }

    /// Left D_X-action through iterated coordinate derivations: `c∂^α · s = c ∇^α s`.
    pub fn act(&self, p: &WeylOp, s: &[LocElem]) -> Vector {
        let mut acc = vec![LocElem::zero(&self.ring); self.rank];
        for (alpha, c) in p.terms() {
            let mut v = s.to_vec();
            for i in (0..alpha.len()).rev() {
                for _ in 0..alpha[i] {
                    v = self.nabla(i, &v);
                }
            }
            for (a, b) in acc.iter_mut().zip(&v) {
                *a = a.add(&c.mul(b));
            }
        }
        acc
    }

    pub fn basis_vector(&self, j: usize) -> Vector {
        (0..self.rank)
            .map(|k| if k == j { LocElem::one(&self.ring) } else { LocElem::zero(&self.ring) })
            .collect()
    }

    /// Matrix of `Δ_D`'s O-linear part: `Σ_i D(v_i) A_i`.
    pub fn to_d_action(&self, d: &Derivation) -> Mat {
        let mut m = locmat::zeros(&self.ring, self.rank, self.rank);
        for (i, c) in d.coeffs.iter().enumerate() {
            if !c.is_zero() {
                m = locmat::add(&m, &locmat::scale_fn(&self.mats[i], c));
            }
        }
        m
    }

    /// `Δ_D(s) = D(s) + M_D s`.
    pub fn delta(&self, d: &Derivation, s: &[LocElem]) -> Vector {
        let m = locmat::apply(&self.to_d_action(d), s, &self.ring);
        s.iter().zip(m).map(|(x, y)| d.apply(x).add(&y)).collect()
    }

    pub fn d_action(&self) -> DAction {
        let n = self.ring.nvars();
        DAction {
            ring: self.ring.clone(),
            rank: self.rank,
            mats: (0..n).map(|i| self.to_d_action(&Derivation::coordinate(&self.ring, i))).collect(),
        }
    }

    pub fn from_d_action(a: &DAction) -> Result<Self> {
        Connection::new(&a.ring, a.rank, a.mats.clone())
    }

    /// `D(M_E) − E(M_D) + [M_D, M_E] − M_{[D,E]}`; zero iff `Δ` respects the bracket on (D, E).
    pub fn lie_defect(&self, d: &Derivation, e: &Derivation) -> Mat {
        let md = self.to_d_action(d);
        let me = self.to_d_action(e);
        let bracket = d.bracket(e);
        let t = locmat::sub(&d.apply_mat(&me), &e.apply_mat(&md));
        let t = locmat::add(&t, &locmat::commutator(&md, &me, &self.ring));
        locmat::sub(&t, &self.to_d_action(&bracket))
    }

    /// Element-level check `Δ_DΔ_E s − Δ_EΔ_D s = Δ_{[D,E]} s`.
    pub fn lie_compatible_on(&self, d: &Derivation, e: &Derivation, s: &[LocElem]) -> bool {
        let lhs: Vector = self
            .delta(d, &self.delta(e, s))
            .iter()
            .zip(self.delta(e, &self.delta(d, s)))
            .map(|(a, b)| a.sub(&b))
            .collect();
        lhs == self.delta(&d.bracket(e), s)
    }

    pub fn jet_section(&self) -> JetSection {
        JetSection { conn: self.clone() }
    }

    pub fn de_rham(&self, mode: &DRMode) -> Result<DRComplex> {
        let c = DRComplex::build(self, mode)?;
        if !c.verified {
            return Err(Error::NotIntegrable(format!(
                "d∘d ≠ 0 on the {} De Rham complex",
                if matches!(mode, DRMode::Absolute) { "absolute" } else { "relative" }
            )));
        }
        Ok(c)
    }

    /// Random flat connection: a gauge transform of commuting constant matrices,
    /// optionally shifted by a closed scalar form `dφ`.
    pub fn random_integrable(g: &mut Gen, ring: &Ring, rank: usize, deg: u32) -> Self {
        use rand::Rng;
        // unipotent upper triangular gauge, inverse is polynomial in its entries
        let mut u = locmat::identity(ring, rank);
        for (i, row) in u.iter_mut().enumerate() {
            for e in row.iter_mut().skip(i + 1) {
                *e = random::loc(g, ring, deg, 1);
            }
        }
        let uinv = unipotent_inverse(&u, ring);
        let base = random::const_matrix(g, ring, rank);
        let phi = if g.gen_bool(0.5) { Some(random::loc(g, ring, deg, 1)) } else { None };
        let mats = (0..ring.nvars())
            .map(|i| {
                let c = LocElem::constant(ring, random::small_rat(g));
                let conj = locmat::mul(&locmat::mul(&uinv, &locmat::scale_fn(&base, &c), ring), &u, ring);
                let mut m = locmat::add(&conj, &locmat::mul(&uinv, &locmat::derive(&u, i), ring));
                if let Some(phi) = &phi {
                    let dphi = phi.derivative(i);
                    for (k, row) in m.iter_mut().enumerate() {
                        row[k] = row[k].add(&dphi);
                    }
                }
                m
            })
            .collect();
        Connection { ring: ring.clone(), rank, mats }
    }

    /// Random, generally non-integrable, connection.
    pub fn random(g: &mut Gen, ring: &Ring, rank: usize, deg: u32) -> Self {
        let mats = (0..ring.nvars()).map(|_| random::matrix(g, ring, rank, deg, 1)).collect();
        Connection { ring: ring.clone(), rank, mats }
    }
}

fn unipotent_inverse(u: &Mat, ring: &Ring) -> Mat {
    // (I + N)^{-1} = Σ (−N)^k, N nilpotent
    let r = u.len();
    let id = locmat::identity(ring, r);
    let n = locmat::sub(u, &id);
    let mut acc = id.clone();
    let mut p = id;
    for _ in 1..r {
        p = locmat::neg(&locmat::mul(&p, &n, ring));
        acc = locmat::add(&acc, &p);
    }
    acc
}

/// Named exact checks of the ∇/Δ/δ dictionary on one connection.
#[derive(Clone, Debug, Serialize)]
pub struct DictionaryReport {
    pub rank: usize,
    pub vars: Vec<String>,
    pub integrable: bool,
    pub checks: Vec<(String, bool)>,
}

impl DictionaryReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect()
    }
}

/// Round trips, `π∘δ = id`, and for flat input the bracket law and `d∘d = 0`.
/// `expect_flat` adds curvature vanishing itself as a check.
pub fn dictionary_report(c: &Connection, expect_flat: bool) -> Result<DictionaryReport> {
    let ring = c.ring();
    let n = ring.nvars();
    let flat = c.is_integrable();
    let js = c.jet_section();
    let mut checks = vec![
        ("from_d_action(to_d_action(C)) = C".to_string(), Connection::from_d_action(&c.d_action())? == *c),
        ("delta - c = nabla".to_string(), js.to_connection() == *c),
        (
            "pi o delta = id".to_string(),
            (0..c.rank()).all(|j| js.pi(&js.delta(&c.basis_vector(j))) == c.basis_vector(j)),
        ),
    ];
    if expect_flat {
        let bad: Vec<String> = c
            .curvature()
            .into_iter()
            .filter(|(_, m)| !locmat::is_zero(m))
            .map(|((i, j), _)| format!("F_{}{}", ring.vars()[i], ring.vars()[j]))
            .collect();
        let name = if bad.is_empty() { "curvature = 0".to_string() } else { format!("curvature = 0 ({} nonzero)", bad.join(", ")) };
        checks.push((name, bad.is_empty()));
    }
    if flat {
        let mut lie = true;
        for i in 0..n {
            for k in i + 1..n {
                let (d, e) = (Derivation::coordinate(ring, i), Derivation::coordinate(ring, k));
                lie &= locmat::is_zero(&c.lie_defect(&d, &e));
                lie &= (0..c.rank()).all(|j| c.lie_compatible_on(&d, &e, &c.basis_vector(j)));
            }
        }
        checks.push(("Delta_[D,E] = [Delta_D, Delta_E]".to_string(), lie));
    }
    let dr = DRComplex::build(c, &DRMode::Absolute)?;
    checks.push(("d o d = 0 iff curvature = 0".to_string(), dr.verified() == flat));
    Ok(DictionaryReport { rank: c.rank(), vars: ring.vars().to_vec(), integrable: flat, checks })
}

/// A vector field `Σ c_i ∂_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    ring: Ring,
    coeffs: Vec<LocElem>,
}

impl Derivation {
    pub fn new(ring: &Ring, coeffs: Vec<LocElem>) -> Result<Self> {
        if coeffs.len() != ring.nvars() {
            return Err(Error::Shape("derivation coefficient vector length".into()));
        }
        Ok(Derivation { ring: ring.clone(), coeffs })
    }

    pub fn coordinate(ring: &Ring, i: usize) -> Self {
        let coeffs = (0..ring.nvars())
            .map(|k| if k == i { LocElem::one(ring) } else { LocElem::zero(ring) })
            .collect();
        Derivation { ring: ring.clone(), coeffs }
    }

    pub fn coeffs(&self) -> &[LocElem] {
        &self.coeffs
    }

    pub fn apply(&self, f: &LocElem) -> LocElem {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(LocElem::zero(&self.ring), |acc, (i, c)| acc.add(&c.mul(&f.derivative(i))))
    }

    pub fn apply_mat(&self, m: &Mat) -> Mat {
        m.iter().map(|r| r.iter().map(|e| self.apply(e)).collect()).collect()
    }

    pub fn bracket(&self, o: &Derivation) -> Derivation {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| self.apply(b).sub(&o.apply(a)))
            .collect();
        Derivation { ring: self.ring.clone(), coeffs }
    }
}

/// Matrices `M_i` of `Δ_{∂_i}` on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DAction {
    pub ring: Ring,
    pub rank: usize,
    pub mats: Vec<Mat>,
}

/// Element of `P¹(E) ≅ E ⊕ (Ω¹ ⊗ E)`: a section and one vector per `dv_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub base: Vector,
    pub forms: Vec<Vector>,
}

/// The section `δ = c + ∇` of `π: P¹(E) → E`.
#[derive(Clone, Debug)]
pub struct JetSection {
    conn: Connection,
}

impl JetSection {
    pub fn connection(&self) -> &Connection {
        &self.conn
    }

    pub fn delta(&self, s: &[LocElem]) -> Jet {
        Jet {
            base: s.to_vec(),
            forms: (0..self.conn.ring.nvars()).map(|i| self.conn.nabla(i, s)).collect(),
        }
    }

    /// Canonical `c(s) = (s, 0)`.
    pub fn c(&self, s: &[LocElem]) -> Jet {
        let z = vec![LocElem::zero(&self.conn.ring); s.len()];
        Jet { base: s.to_vec(), forms: vec![z; self.conn.ring.nvars()] }
    }

    pub fn pi(&self, j: &Jet) -> Vector {
        j.base.clone()
    }

    /// Twisted left structure `a·(e, ω) = (ae, aω + da⊗e)`.
    pub fn scalar_mul(&self, a: &LocElem, j: &Jet) -> Jet {
        Jet {
            base: j.base.iter().map(|e| a.mul(e)).collect(),
            forms: j
                .forms
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    let da = a.derivative(i);
                    w.iter().zip(&j.base).map(|(wk, ek)| a.mul(wk).add(&da.mul(ek))).collect()
                })
                .collect(),
        }
    }

    /// Recovers `∇ = δ − c` on the basis.
    pub fn to_connection(&self) -> Connection {
        let r = self.conn.rank;
        let ring = &self.conn.ring;
        let n = ring.nvars();
        let mut mats = vec![locmat::zeros(ring, r, r); n];
        for j in 0..r {
            let e = self.conn.basis_vector(j);
            let d = self.delta(&e);
            let c = self.c(&e);
            for i in 0..n {
                for k in 0..r {
                    mats[i][k][j] = d.forms[i][k].sub(&c.forms[i][k]);
                }
            }
        }
        Connection { ring: ring.clone(), rank: r, mats }
    }
}

/// `A'_i h + ∂_i h = h A_i` for all `i`.
pub fn is_morphism(h: &Mat, c: &Connection, c2: &Connection) -> Result<bool> {
    let (rows, cols) = locmat::shape(h);
    if rows != c2.rank || (cols != c.rank && rows > 0) {
        return Err(Error::Shape(format!(
            "morphism is {rows}x{cols}, connections have ranks {} -> {}",
            c.rank, c2.rank
        )));
    }
    let ring = &c.ring;
    for i in 0..ring.nvars() {
        let lhs = locmat::add(&locmat::mul(&c2.mats[i], h, ring), &locmat::derive(h, i));
        let rhs = locmat::mul(h, &c.mats[i], ring);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub enum DRMode {
    Absolute,
    /// Differentiate only along the named fiber variables.
    Relative { fiber: Vec<String> },
}

/// `Ω^q ⊗ E` with bases `(wedge subset, module index)` and operator-valued differentials.
#[derive(Clone, Debug)]
pub struct DRComplex {
    ring: Ring,
    rank: usize,
    dirs: Vec<usize>,
    bases: Vec<Vec<(Vec<usize>, usize)>>,
    diffs: Vec<Vec<Vec<WeylOp>>>,
    verified: bool,
}

fn subsets(items: &[usize], q: usize) -> Vec<Vec<usize>> {
    if q == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &i) in items.iter().enumerate() {
        for mut rest in subsets(&items[k + 1..], q - 1) {
            rest.insert(0, i);
            out.push(rest);
        }
    }
    out
}

impl DRComplex {
    pub fn build(c: &Connection, mode: &DRMode) -> Result<Self> {
        let ring = &c.ring;
        let dirs: Vec<usize> = match mode {
            DRMode::Absolute => (0..ring.nvars()).collect(),
            DRMode::Relative { fiber } => {
                let mut v = fiber.iter().map(|f| ring.var_index(f)).collect::<Result<Vec<_>>>()?;
                v.sort_unstable();
                v.dedup();
                v
            }
        };
        let r = c.rank;
        let m = dirs.len();
        let bases: Vec<Vec<(Vec<usize>, usize)>> = (0..=m)
            .map(|q| {
                subsets(&dirs, q)
                    .into_iter()
                    .flat_map(|s| (0..r).map(move |j| (s.clone(), j)))
                    .collect()
            })
            .collect();
        let mut diffs = Vec::with_capacity(m);
        for q in 0..m {
            let src = &bases[q];
            let tgt = &bases[q + 1];
            let mut d = vec![vec![WeylOp::zero(ring); src.len()]; tgt.len()];
            for (col, (set, j)) in src.iter().enumerate() {
                for &i in &dirs {
                    if set.contains(&i) {
                        continue;
                    }
                    let below = set.iter().filter(|&&k| k < i).count();
                    let mut ns = set.clone();
                    ns.push(i);
                    ns.sort_unstable();
                    for k in 0..r {
                        let row = tgt.iter().position(|(s2, k2)| *s2 == ns && *k2 == k).unwrap();
                        // component k of ∇_i(f e_j): δ_kj ∂_i + (A_i)_kj
                        let mut op = WeylOp::from_loc(&c.mats[i][k][*j]);
                        if k == *j {
                            op = op.add(&WeylOp::d(ring, i));
                        }
                        if below % 2 == 1 {
                            op = op.neg();
                        }
                        d[row][col] = d[row][col].add(&op);
                    }
                }
            }
            diffs.push(d);
        }
        let mut cx = DRComplex { ring: ring.clone(), rank: r, dirs, bases, diffs, verified: false };
        cx.verified = (0..m.saturating_sub(1)).all(|q| cx.dd_is_zero(q));
        Ok(cx)
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self, q: usize) -> &[(Vec<usize>, usize)] {
        &self.bases[q]
    }

    pub fn directions(&self) -> &[usize] {
        &self.dirs
    }

    /// Differential `Ω^q ⊗ E → Ω^{q+1} ⊗ E` as an operator matrix (rows = target basis).
    pub fn diff(&self, q: usize) -> &[Vec<WeylOp>] {
        &self.diffs[q]
    }

    pub fn verified(&self) -> bool {
        self.verified
    }

    /// `d_{q+1} ∘ d_q` computed in D_X.
    pub fn dd(&self, q: usize) -> Vec<Vec<WeylOp>> {
        let a = &self.diffs[q + 1];
        let b = &self.diffs[q];
        let rows = a.len();
        let cols = b.first().map_or(0, |r| r.len());
        let mut out = vec![vec![WeylOp::zero(&self.ring); cols]; rows];
        for i in 0..rows {
            for (k, bk) in b.iter().enumerate() {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..cols {
                    if !bk[j].is_zero() {
                        out[i][j] = out[i][j].add(&a[i][k].mul(&bk[j]));
                    }
                }
            }
        }
        out
    }

    fn dd_is_zero(&self, q: usize) -> bool {
        self.dd(q).iter().all(|r| r.iter().all(|e| e.is_zero()))
    }

    /// Apply `d_q` to a section given in the degree-q basis.
    pub fn apply_d(&self, q: usize, v: &[LocElem]) -> Vector {
        self.diffs[q]
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(LocElem::zero(&self.ring), |acc, (p, x)| acc.add(&p.apply(x)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_loc, parse_poly, vars_of, LocRing};

    fn ring_xy() -> Ring {
        LocRing::polynomial(vars_of(&["x", "y"]))
    }

    fn m(r: &Ring, rows: &[&[&str]]) -> Mat {
        rows.iter().map(|row| row.iter().map(|s| parse_loc(r, s).unwrap()).collect()).collect()
    }

    #[test]
    fn curvature_examples() {
        let r = ring_xy();
        assert!(Connection::trivial(&r, 1).curvature().iter().all(|(_, c)| locmat::is_zero(c)));
        let c = Connection::new(&r, 2, vec![m(&r, &[&["0", "1"], &["0", "0"]]), m(&r, &[&["0", "0"], &["1", "0"]])]).unwrap();
        let k = c.curvature();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].1, m(&r, &[&["1", "0"], &["0", "-1"]]));
        let v = vars_of(&["lam"]);
        let rl = LocRing::new(v.clone(), vec![parse_poly(&v, "lam").unwrap()]).unwrap();
        let c1 = Connection::new(&rl, 1, vec![m(&rl, &[&["-1/(2*lam)"]])]).unwrap();
        assert!(c1.curvature().is_empty() && c1.is_integrable());
    }

    #[test]
    fn d_action_examples() {
        let r = ring_xy();
        let a = m(&r, &[&["x", "y^2"], &["1", "0"]]);
        let c = Connection::new(&r, 2, vec![a.clone(), locmat::zeros(&r, 2, 2)]).unwrap();
        assert_eq!(c.to_d_action(&Derivation::coordinate(&r, 0)), a);
        let g = parse_loc(&r, "x^2 + y").unwrap();
        let d = Derivation::new(&r, vec![g.clone(), LocElem::zero(&r)]).unwrap();
        assert_eq!(c.to_d_action(&d), locmat::scale_fn(&a, &g));
        let v = vars_of(&["x"]);
        let rx = LocRing::new(v.clone(), vec![parse_poly(&v, "x").unwrap()]).unwrap();
        let act = DAction { ring: rx.clone(), rank: 1, mats: vec![m(&rx, &[&["3/x"]])] };
        assert_eq!(Connection::from_d_action(&act).unwrap().mat(0), &m(&rx, &[&["3/x"]]));
        let bad = DAction { ring: rx.clone(), rank: 2, mats: vec![m(&rx, &[&["3/x"]])] };
        assert!(Connection::from_d_action(&bad).is_err());
    }

    #[test]
    fn lie_compatibility_needs_integrability() {
        let r = ring_xy();
        let mut g = random::gen(7);
        let c = Connection::random_integrable(&mut g, &r, 2, 2);
        assert!(c.is_integrable());
        let dx = Derivation::coordinate(&r, 0);
        let dy = Derivation::coordinate(&r, 1);
        assert!(locmat::is_zero(&c.lie_defect(&dx, &dy)));
        let bad = Connection::new(&r, 2, vec![m(&r, &[&["0", "1"], &["0", "0"]]), m(&r, &[&["0", "0"], &["1", "0"]])]).unwrap();
        assert!(!locmat::is_zero(&bad.lie_defect(&dx, &dy)));
        assert!(!bad.lie_compatible_on(&dx, &dy, &bad.basis_vector(0)));
    }

    #[test]
    fn jet_examples() {
        let v = vars_of(&["x"]);
        let r = LocRing::polynomial(v);
        let t = Connection::trivial(&r, 1).jet_section();
        let e = vec![LocElem::one(&r)];
        assert_eq!(t.delta(&e), t.c(&e));
        let a = parse_loc(&r, "x^2 - 1").unwrap();
        let c = Connection::new(&r, 1, vec![vec![vec![a.clone()]]]).unwrap();
        let j = c.jet_section();
        let d = j.delta(&e);
        assert_eq!(d.forms[0], vec![a]);
        assert_eq!(j.pi(&d), e);
        assert_eq!(j.to_connection(), c);
        // δ is O-linear for the twisted structure
        let f = parse_loc(&r, "3*x + 2").unwrap();
        assert_eq!(j.delta(&[f.clone()]), j.scalar_mul(&f, &d));
    }

    #[test]
    fn morphism_examples() {
        let v = vars_of(&["x"]);
        let r = LocRing::new(v.clone(), vec![parse_poly(&v, "x").unwrap()]).unwrap();
        let triv = Connection::trivial(&r, 1);
        let c2 = Connection::new(&r, 1, vec![m(&r, &[&["-1/x"]])]).unwrap();
        assert!(is_morphism(&m(&r, &[&["x"]]), &triv, &c2).unwrap());
        assert!(!is_morphism(&m(&r, &[&["x^2"]]), &triv, &c2).unwrap());
        assert!(is_morphism(&locmat::identity(&r, 1), &c2, &c2).unwrap());
        assert!(is_morphism(&locmat::zeros(&r, 1, 1), &triv, &c2).unwrap());
        assert!(is_morphism(&locmat::zeros(&r, 2, 1), &triv, &c2).is_err());
    }

    #[test]
    fn de_rham_examples() {
        let r1 = LocRing::polynomial(vars_of(&["x"]));
        let d = Connection::trivial(&r1, 1).de_rham(&DRMode::Absolute).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.diff(0)[0][0], WeylOp::d(&r1, 0));
        let r = ring_xy();
        let k = Connection::trivial(&r, 1).de_rham(&DRMode::Absolute).unwrap();
        assert!(k.verified());
        assert_eq!(k.basis(1).len(), 2);
        let rel = Connection::trivial(&r, 1).de_rham(&DRMode::Relative { fiber: vec!["x".into()] }).unwrap();
        assert_eq!(rel.len(), 2);
        assert_eq!(rel.diff(0)[0][0], WeylOp::d(&r, 0));
        let bad = Connection::new(&r, 2, vec![m(&r, &[&["0", "1"], &["0", "0"]]), m(&r, &[&["0", "0"], &["1", "0"]])]).unwrap();
        assert!(matches!(bad.de_rham(&DRMode::Absolute), Err(Error::NotIntegrable(_))));
        assert!(!DRComplex::build(&bad, &DRMode::Absolute).unwrap().verified());
    }
}
