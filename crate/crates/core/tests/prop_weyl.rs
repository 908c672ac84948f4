use dmod::exactalg::{parse_poly, vars_of, LocElem, LocRing, Rat, Ring};
use dmod::random::{self, gen};
use dmod::weyl::WeylOp;
use proptest::prelude::*;

fn ring() -> Ring {
    let v = vars_of(&["x", "y"]);
    LocRing::new(v.clone(), vec![parse_poly(&v, "x").unwrap()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associativity(seed: u64) {
        let mut g = gen(seed);
        let r = ring();
        let p = random::op(&mut g, &r, 3, 3, 1);
        let q = random::op(&mut g, &r, 3, 3, 1);
        let s = random::op(&mut g, &r, 3, 3, 1);
        prop_assert_eq!(p.mul(&q).mul(&s), p.mul(&q.mul(&s)));
    }

    #[test]
    fn transpose_anti_involution(seed: u64) {
        let mut g = gen(seed);
        let r = ring();
        let p = random::op(&mut g, &r, 3, 3, 1);
        let q = random::op(&mut g, &r, 3, 3, 1);
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        prop_assert_eq!(p.mul(&q).transpose(), q.transpose().mul(&p.transpose()));
    }

    #[test]
    fn left_module_action(seed: u64) {
        let mut g = gen(seed);
        let r = ring();
        let p = random::op(&mut g, &r, 3, 2, 1);
        let q = random::op(&mut g, &r, 3, 2, 1);
        let m = random::loc(&mut g, &r, 3, 2);
        prop_assert_eq!(p.apply(&q.apply(&m)), p.mul(&q).apply(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symbol_is_multiplicative(seed: u64) {
        let mut g = gen(seed);
        let r = ring();
        let p = random::op(&mut g, &r, 3, 2, 1);
        let q = random::op(&mut g, &r, 3, 2, 1);
        prop_assume!(!p.is_zero() && !q.is_zero());
        let (op, sp) = p.order_and_symbol().unwrap();
        let (oq, sq) = q.order_and_symbol().unwrap();
        let (opq, spq) = p.mul(&q).order_and_symbol().unwrap();
        prop_assert_eq!(opq, op + oq);
        prop_assert_eq!(spq, sp.mul(&sq));
    }
}

/// Coefficient of `x^{-1}` of an element of `Q[x, 1/x]`.
fn residue(e: &LocElem) -> Rat {
    let k = e.exps()[0];
    if k == 0 {
        return Rat::from_integer(0.into());
    }
    e.num().terms().iter().filter(|(m, _)| m.0[0] + 1 == k).map(|(_, c)| c.clone()).sum()
}

#[test]
fn transpose_is_the_formal_adjoint() {
    // res(g·P f) = res(f·P* g) on Q[x, 1/x]: a total derivative has no residue
    let v = vars_of(&["x"]);
    let r = LocRing::new(v.clone(), vec![parse_poly(&v, "x").unwrap()]).unwrap();
    let x = LocElem::var_index(&r, 0);
    let xinv = x.inv().unwrap();
    let mut g = gen(5);
    for _ in 0..40 {
        let p = random::op(&mut g, &LocRing::polynomial(v.clone()), 2, 3, 0);
        let p = WeylOp::from_terms(&r, p.terms().iter().map(|(a, c)| (a.clone(), LocElem::from_poly(&r, c.num().clone()))));
        for k in 0..=6 {
            for j in 1..=9 {
                let f = x.pow(k);
                let h = xinv.pow(j);
                assert_eq!(residue(&h.mul(&p.apply(&f))), residue(&f.mul(&p.transpose().apply(&h))));
            }
        }
    }
    assert_eq!(WeylOp::d(&r, 0).transpose(), WeylOp::d(&r, 0).neg());
}
