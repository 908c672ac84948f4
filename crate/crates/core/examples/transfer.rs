//! The transfer module on the chart (x, y) → y: λ, the involution square and ∇.

use dmod::exactalg::{vars_of, LocRing};
use dmod::transfer::{
    check_transfer_identities, lambda_map, monomial_operators, nabla_transfer, Fibered, OmegaD, SignConvention,
};
use dmod::weyl::parse_op;

fn main() -> dmod::Result<()> {
    let ring = LocRing::polynomial(vars_of(&["x", "y"]));
    let chart = Fibered::new(&ring, &["x"], &["y"])?;

    for s in ["1", "x*d_y", "y*d_x*d_y + x^2", "d_y^2"] {
        let p = parse_op(&ring, s)?;
        let t = lambda_map(&chart, &p, SignConvention::Standard)?;
        let n: Vec<String> = nabla_transfer(&chart, &t).iter().map(|e| e.render()).collect();
        println!("{s:<18} λ = {:<24} ∇λ = {n:?}", t.render());
        println!("{:<18} ι = {}", "", OmegaD::new(p).involution().op.render());
    }

    let ops = monomial_operators(&ring, 4, 2);
    for signs in [SignConvention::Standard, SignConvention::FlippedBase] {
        println!("{signs:?}: {:?}", check_transfer_identities(&chart, &ops, signs)?);
    }
    Ok(())
}
