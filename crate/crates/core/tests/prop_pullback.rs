use dmod::conn::Connection;
use dmod::exactalg::{vars_of, LocElem, LocRing, Ring};
use dmod::pullback::{compare_pullbacks, pullback_connection, pullback_dmodule, PolyMap};
use dmod::random::{self, gen};
use proptest::prelude::*;

fn line(name: &str) -> Ring {
    LocRing::polynomial(vars_of(&[name]))
}

fn random_map(g: &mut random::Gen, src: &Ring, tgt: &Ring) -> PolyMap {
    let c = LocElem::from_poly(src, random::poly(g, src.vars(), 2, 3));
    PolyMap::new(src, tgt, vec![c]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn functoriality(seed: u64, rank in 1usize..=2) {
        let mut g = gen(seed);
        let (x, y, z) = (line("x"), line("y"), line("z"));
        let f = random_map(&mut g, &x, &y);
        let h = random_map(&mut g, &y, &z);
        let c = Connection::random(&mut g, &z, rank, 2);
        let composite = pullback_connection(&f.then(&h).unwrap(), &c).unwrap();
        let stepwise = pullback_connection(&f, &pullback_connection(&h, &c).unwrap()).unwrap();
        prop_assert_eq!(composite.mats(), stepwise.mats());
        let stepwise_d = pullback_dmodule(&f, &pullback_dmodule(&h, &c).unwrap()).unwrap();
        prop_assert_eq!(composite.mats(), stepwise_d.mats());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn two_routes_agree(seed: u64, n in 1usize..=2, m in 1usize..=2, rank in 1usize..=2) {
        let mut g = gen(seed);
        let f = random::poly_map(&mut g, n, m).unwrap();
        let c = Connection::random(&mut g, f.target(), rank, 2);
        let rep = compare_pullbacks(&f, &c).unwrap();
        prop_assert!(rep.equal, "{:?}", rep.witness);
    }

    #[test]
    fn integrability_is_preserved(seed: u64, n in 1usize..=2, rank in 1usize..=3) {
        let mut g = gen(seed);
        let f = random::poly_map(&mut g, n, 2).unwrap();
        let c = Connection::random_integrable(&mut g, f.target(), rank, 2);
        prop_assert!(c.is_integrable());
        prop_assert!(pullback_connection(&f, &c).unwrap().is_integrable());
    }
}
