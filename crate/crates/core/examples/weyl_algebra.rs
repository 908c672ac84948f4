//! Normally ordered operators, their action on functions and the transpose.

use dmod::exactalg::{parse_loc, parse_poly, vars_of, LocRing};
use dmod::weyl::parse_op;

fn main() -> dmod::Result<()> {
    let vars = vars_of(&["x", "y"]);
    let ring = LocRing::new(vars.clone(), vec![parse_poly(&vars, "x")?])?;

    let p = parse_op(&ring, "d_x")?;
    let q = parse_op(&ring, "x^2*d_x*d_y + 1/x")?;
    println!("P = {}", p.render());
    println!("Q = {}", q.render());
    println!("PQ = {}", p.mul(&q).render());
    println!("QP = {}", q.mul(&p).render());
    println!("Q* = {}", q.transpose().render());
    println!("(PQ)* = Q*P*: {}", p.mul(&q).transpose() == q.transpose().mul(&p.transpose()));

    let f = parse_loc(&ring, "x^3*y^2")?;
    println!("Q(x^3 y^2) = {}", q.apply(&f).render());

    let (ord, sym) = q.order_and_symbol()?;
    println!("order {ord}, symbol {}", sym.render());
    Ok(())
}
