//! Inverse image of a connection along x ↦ x², computed as a connection and as a D-module.

use dmod::exactalg::{parse_loc, parse_poly, vars_of, LocRing};
use dmod::pullback::{compare_pullbacks, pullback_connection, PolyMap};
use dmod::conn::Connection;

fn main() -> dmod::Result<()> {
    let (vx, vy) = (vars_of(&["x"]), vars_of(&["y"]));
    let src = LocRing::new(vx.clone(), vec![parse_poly(&vx, "x")?])?;
    let tgt = LocRing::new(vy.clone(), vec![parse_poly(&vy, "y")?])?;

    let f = PolyMap::new(&src, &tgt, vec![parse_loc(&src, "x^2")?])?;
    for c in ["3/y", "-1/(2*y)", "y + 1/y^2"] {
        let conn = Connection::new(&tgt, 1, vec![vec![vec![parse_loc(&tgt, c)?]]])?;
        let pulled = pullback_connection(&f, &conn)?;
        let rep = compare_pullbacks(&f, &conn)?;
        println!("A_y = {c:<10} f*A_x = {:<20} routes equal: {}", pulled.mat(0)[0][0].render(), rep.equal);
    }
    Ok(())
}
