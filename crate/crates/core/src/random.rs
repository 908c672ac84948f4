//! Seeded generators for randomized suites. Same seed, same instances.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{LocElem, MPoly, Mono, Rat, Ring, Vars};
use crate::locmat::Mat;
use crate::weyl::WeylOp;

pub type Gen = ChaCha8Rng;

pub fn gen(seed: u64) -> Gen {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(g: &mut Gen) -> Rat {
    let n: i64 = g.gen_range(-5..=5);
    let d: i64 = if g.gen_bool(0.25) { g.gen_range(1..=3) } else { 1 };
    Rat::new(n.into(), d.into())
}

fn nonzero_rat(g: &mut Gen) -> Rat {
    loop {
        let r = small_rat(g);
        if r != Rat::from_integer(0.into()) {
            return r;
        }
    }
}

/// Random polynomial of total degree ≤ `deg` with at most `terms` terms.
pub fn poly(g: &mut Gen, vars: &Vars, deg: u32, terms: usize) -> MPoly {
    let n = vars.len();
    let k = g.gen_range(0..=terms);
    MPoly::from_terms(
        vars,
        (0..k).map(|_| {
            let mut e = vec![0u32; n];
            let mut budget = g.gen_range(0..=deg);
            while budget > 0 && n > 0 {
                let i = g.gen_range(0..n);
                e[i] += 1;
                budget -= 1;
            }
            (Mono(e), nonzero_rat(g))
        })
        .collect::<Vec<_>>(),
    )
}

/// Polynomial numerator over a random product of the declared denominators.
pub fn loc(g: &mut Gen, ring: &Ring, deg: u32, max_exp: u32) -> LocElem {
    let num = poly(g, ring.vars(), deg, 4);
    let exps = (0..ring.dens().len()).map(|_| g.gen_range(0..=max_exp)).collect();
    LocElem::from_parts(ring, num, exps)
}

pub fn op(g: &mut Gen, ring: &Ring, order: u32, deg: u32, max_exp: u32) -> WeylOp {
    let n = ring.nvars();
    let k = g.gen_range(1..=4);
    WeylOp::from_terms(
        ring,
        (0..k)
            .map(|_| {
                let mut a = vec![0u32; n];
                let mut budget = g.gen_range(0..=order);
                while budget > 0 && n > 0 {
                    a[g.gen_range(0..n)] += 1;
                    budget -= 1;
                }
                (a, loc(g, ring, deg, max_exp))
            })
            .collect::<Vec<_>>(),
    )
}

pub fn matrix(g: &mut Gen, ring: &Ring, r: usize, deg: u32, max_exp: u32) -> Mat {
    (0..r).map(|_| (0..r).map(|_| loc(g, ring, deg, max_exp)).collect()).collect()
}

/// Random constant (rational) matrix.
pub fn const_matrix(g: &mut Gen, ring: &Ring, r: usize) -> Mat {
    (0..r)
        .map(|_| (0..r).map(|_| LocElem::constant(ring, small_rat(g))).collect())
        .collect()
}

/// Map into `K[y_1..y_m, 1/y_1..1/y_m]`: each `y_i ↦ c·x^a` times a unit; source denominators
/// are the source variables so the target denominators pull back to units.
pub fn poly_map(g: &mut Gen, n: usize, m: usize) -> crate::Result<crate::pullback::PolyMap> {
    let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=m).map(|i| format!("y{i}")).collect();
    let xv: Vars = xs.clone().into();
    let yv: Vars = ys.clone().into();
    let monic = |v: &Vars, i: usize| MPoly::var_index(v, i);
    let localized = g.gen_bool(0.5);
    let src = crate::exactalg::LocRing::new(xv.clone(), (0..n).map(|i| monic(&xv, i)).collect())?;
    let tgt = if localized {
        crate::exactalg::LocRing::new(yv.clone(), (0..m).map(|i| monic(&yv, i)).collect())?
    } else {
        crate::exactalg::LocRing::polynomial(yv)
    };
    let comps = (0..m)
        .map(|_| {
            if localized {
                let e: Vec<u32> = (0..n).map(|_| g.gen_range(0..=2)).collect();
                LocElem::from_poly(&src, MPoly::term(&xv, Mono(e), nonzero_rat(g)))
            } else {
                loc(g, &src, 3, 1)
            }
        })
        .collect();
    crate::pullback::PolyMap::new(&src, &tgt, comps)
}

/// Squarefree `h(x, lam)` with `deg_x ≤ 4`, coefficient λ-degree ≤ 2, base denominators read off
/// the Bezout cofactors and the leading coefficient. Rank-1 Kummer twist `s·dh/h` when `twist`.
pub fn family(g: &mut Gen, twist: bool) -> crate::gaussmanin::Family {
    use crate::exactalg::uni_gcd_bezout;
    let vars = crate::exactalg::vars_of(&["x", "lam"]);
    loop {
        let d = g.gen_range(1..=4u32);
        let mut terms = Vec::new();
        for k in 0..=d {
            let nt = if k == d { g.gen_range(1..=2) } else { g.gen_range(0..=2) };
            for _ in 0..nt {
                terms.push((Mono(vec![k, g.gen_range(0..=2)]), nonzero_rat(g)));
            }
        }
        let h = MPoly::from_terms(&vars, terms);
        if h.degree_in(0) != Some(d) || !h.uses_var(1) {
            continue;
        }
        let Ok((gcd, s, t)) = uni_gcd_bezout(&h, &h.derivative(0), "x") else { continue };
        if gcd.degree() != Some(0) {
            continue;
        }
        let Ok(u) = h.to_upoly_qfun(0, Some(1)) else { continue };
        let mut prod = u.lc().num().clone();
        for c in s.coeffs().iter().chain(t.coeffs()) {
            prod = prod.mul(c.den());
        }
        let base: Vec<String> = prod
            .squarefree()
            .into_iter()
            .filter(|(p, _)| p.degree().unwrap_or(0) > 0)
            .map(|(p, _)| MPoly::from_upoly_rat(&vars, 1, &p).primitive().render())
            .collect();
        let bs: Vec<&str> = base.iter().map(|s| s.as_str()).collect();
        let hs = h.render();
        let built = if twist {
            let s = [Rat::new(1.into(), 2.into()), Rat::new(1.into(), 3.into()), Rat::new(2.into(), 3.into())]
                [g.gen_range(0..3)]
            .clone();
            crate::gaussmanin::Family::kummer("x", "lam", &hs, &bs, s)
        } else {
            crate::gaussmanin::Family::new("x", "lam", &hs, &bs, 1, None)
        };
        if let Ok(f) = built {
            return f;
        }
    }
}
