//! Gauss–Manin connections of one-parameter families x ↦ h(x, λ) by three routes.

use dmod::gaussmanin::{compare_routes, Family};
use dmod::exactalg::rat;

fn main() -> dmod::Result<()> {
    let families = vec![
        Family::new("x", "lam", "x^2 - lam", &["lam"], 1, None)?,
        Family::new("x", "lam", "x^3 - lam", &["lam"], 1, None)?,
        Family::new("x", "lam", "x^3 - 3*x - lam", &["lam - 2", "lam + 2"], 1, None)?,
        Family::kummer("x", "lam", "x^2 - lam", &["lam"], rat(1, 3))?,
    ];
    for f in &families {
        let rep = compare_routes(f)?;
        println!("h = {}{}", f.h().render(), if f.is_twisted() { " (twisted)" } else { "" });
        println!("  basis {:?}", rep.basis.labels);
        println!("  matrix {:?}  verdict: {}", rep.gm_matrix, rep.verdict);
        if let Some(e1) = &rep.e1 {
            println!("  d1 from the Leray filtration {:?}, equal: {}", e1.d1, e1.d1_equals_route_a);
        }
    }
    Ok(())
}
