use dmod::conn::Connection;
use dmod::exactalg::{vars_of, LocRing, Ring};
use dmod::random::{self, gen};
use dmod::transfer::{
    check_transfer_identities, exchange_left_right, exchange_right_left, monomial_operators, right_act, Fibered,
    OmegaD, SignConvention, TransferElem,
};
use dmod::weyl::WeylOp;
use proptest::prelude::*;

fn plane() -> Ring {
    LocRing::polynomial(vars_of(&["x", "y"]))
}

fn ring(n: usize) -> Ring {
    if n == 1 { LocRing::polynomial(vars_of(&["x"])) } else { plane() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn involution_laws(seed: u64, n in 1usize..=2) {
        let mut g = gen(seed);
        let r = ring(n);
        let p = random::op(&mut g, &r, 3, 3, 0);
        let q = random::op(&mut g, &r, 3, 2, 0);
        let e = OmegaD::new(p);
        prop_assert_eq!(e.involution().involution(), e.clone());
        prop_assert_eq!(e.act1(&q).unwrap().involution(), e.involution().act2(&q).unwrap());
        prop_assert_eq!(e.act2(&q).unwrap().involution(), e.involution().act1(&q).unwrap());
    }

    #[test]
    fn transfer_is_a_right_module(seed: u64) {
        let mut g = gen(seed);
        let r = plane();
        let chart = Fibered::new(&r, &["x"], &["y"]).unwrap();
        let raw = random::op(&mut g, &r, 3, 3, 0);
        let t = TransferElem::new(&chart, WeylOp::from_terms(&r, raw.terms().iter().filter(|(a, _)| a[0] == 0).map(|(a, c)| (a.clone(), c.clone())))).unwrap();
        let p = random::op(&mut g, &r, 3, 2, 0);
        let q = random::op(&mut g, &r, 3, 2, 0);
        let s = SignConvention::Standard;
        let lhs = right_act(&chart, &t, &p.mul(&q), s).unwrap();
        let rhs = right_act(&chart, &right_act(&chart, &t, &p, s).unwrap(), &q, s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exchange_round_trip(seed: u64, n in 1usize..=2, rank in 1usize..=3) {
        let mut g = gen(seed);
        let c = Connection::random_integrable(&mut g, &ring(n), rank, 3);
        let rm = exchange_left_right(&c);
        prop_assert_eq!(exchange_right_left(&rm).unwrap(), c.clone());
        // (ω⊗m)·P is a right action
        let p = random::op(&mut g, c.ring(), 2, 2, 0);
        let q = random::op(&mut g, c.ring(), 2, 2, 0);
        let m = c.basis_vector(0);
        prop_assert_eq!(rm.act(&rm.act(&m, &p), &q), rm.act(&m, &p.mul(&q)));
    }
}

#[test]
fn omega_is_fixed() {
    for n in 1..=2 {
        let w = OmegaD::omega(&ring(n));
        assert_eq!(w.involution(), w);
    }
}

#[test]
fn identities_on_the_full_truncation() {
    let r = plane();
    let chart = Fibered::new(&r, &["x"], &["y"]).unwrap();
    let ops = monomial_operators(&r, 6, 3);
    let ok = check_transfer_identities(&chart, &ops, SignConvention::Standard).unwrap();
    assert!(ok.lambda_kills_relative_exact && ok.involution_square && ok.alpha_is_nabla_lambda, "{ok:?}");
}
