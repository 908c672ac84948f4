use dmod::exactalg::{Rat, Field};
use dmod::homalg::{mapping_cone, verify_homotopy, GradedMap, TruncComplex};
use dmod::linalg::Matrix;
use dmod::random::{self, gen, Gen};
use proptest::prelude::*;
use rand::Rng;

fn rand_matrix(g: &mut Gen, rows: usize, cols: usize) -> Matrix<Rat> {
    let d: Vec<Vec<Rat>> = (0..rows).map(|_| (0..cols).map(|_| if g.gen_bool(0.4) { random::small_rat(g) } else { Rat::zero() }).collect()).collect();
    Matrix::from_dense(rows, cols, &d)
}

/// Three-term complex: `d1 = R·K` with the rows of `K` spanning the left kernel of `d0`.
fn rand_complex(g: &mut Gen) -> TruncComplex<Rat> {
    let dims: Vec<usize> = (0..3).map(|_| g.gen_range(1..=4)).collect();
    let d0 = rand_matrix(g, dims[1], dims[0]);
    let k = d0.transpose().nullspace();
    let kmat = Matrix::from_columns(dims[1], &k).transpose();
    let d1 = rand_matrix(g, dims[2], k.len()).mul(&kmat);
    TruncComplex::from_dims(0, &dims, vec![d0, d1]).unwrap()
}

fn rand_homotopy(g: &mut Gen, c: &TruncComplex<Rat>) -> GradedMap<Rat> {
    GradedMap { lo: c.lo(), shift: -1, mats: (c.lo()..=c.hi()).map(|q| rand_matrix(g, c.dim(q - 1), c.dim(q))).collect() }
}

/// `k·id + dh + hd`.
fn homotopic_to_scalar(c: &TruncComplex<Rat>, k: &Rat, h: &GradedMap<Rat>) -> GradedMap<Rat> {
    let mats = (c.lo()..=c.hi())
        .map(|q| {
            let dh = c.d(q - 1).mul(&h.at(q, c, c));
            let hd = h.at(q + 1, c, c).mul(&c.d(q));
            Matrix::identity(c.dim(q)).scale(k).add(&dh).add(&hd)
        })
        .collect();
    GradedMap { lo: c.lo(), shift: 0, mats }
}

fn induced(u: &GradedMap<Rat>, c: &TruncComplex<Rat>, q: i32) -> Matrix<Rat> {
    let reps = c.homology(q).reps;
    if reps.is_empty() {
        return Matrix::zeros(0, 0);
    }
    u.on_homology(q, c, c, &reps, &reps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn homotopic_maps_agree_on_homology(seed: u64) {
        let mut g = gen(seed);
        let c = rand_complex(&mut g);
        let k = random::small_rat(&mut g);
        let h = rand_homotopy(&mut g, &c);
        let u = homotopic_to_scalar(&c, &k, &h);
        let scalar = homotopic_to_scalar(&c, &k, &GradedMap::zero(&c, &c, -1));
        prop_assert!(u.is_chain_map(&c, &c));
        prop_assert!(verify_homotopy(&u, &scalar, &h, &c, &c).unwrap());
        for q in c.lo()..=c.hi() {
            prop_assert_eq!(induced(&u, &c, q), induced(&scalar, &c, q));
        }
    }

    #[test]
    fn cone_long_exact_sequence(seed: u64) {
        let mut g = gen(seed);
        let c = rand_complex(&mut g);
        let k = if g.gen_bool(0.5) { Rat::zero() } else { random::small_rat(&mut g) };
        let h = rand_homotopy(&mut g, &c);
        let u = homotopic_to_scalar(&c, &k, &h);
        let cone = mapping_cone(&u, &c, &c).unwrap();
        let rank_at = |q: i32| if q < c.lo() || q > c.hi() { 0 } else { induced(&u, &c, q).rank() };
        let hdim = |q: i32| if q < c.lo() || q > c.hi() { 0 } else { c.homology(q).dim };
        for (q, dim) in cone.complex.homology_dims() {
            // H^q(B) / im H^q(u)  ⊕  ker H^{q+1}(u)
            let expect = (hdim(q) - rank_at(q)) + (hdim(q + 1) - rank_at(q + 1));
            prop_assert_eq!(dim, expect, "degree {}", q);
        }
    }
}

#[test]
fn non_complex_is_rejected() {
    let mut g = gen(3);
    let mut seen = 0;
    for _ in 0..50 {
        let d0 = rand_matrix(&mut g, 3, 3);
        let d1 = rand_matrix(&mut g, 3, 3);
        if !d1.mul(&d0).is_zero() {
            assert!(TruncComplex::from_dims(0, &[3, 3, 3], vec![d0, d1]).is_err());
            seen += 1;
        }
    }
    assert!(seen > 10);
}
