//! Picard–Fuchs operators read off the Gauss–Manin matrix, one per basis class.

use dmod::gaussmanin::{gm_matrix, picard_fuchs, render_operator, BasisPolicy, Family, Route};

fn main() -> dmod::Result<()> {
    for h in ["x^2 - lam", "x^3 - lam", "x^4 - lam", "x^2 - lam^2 - 1"] {
        let dens: &[&str] = if h.ends_with("- 1") { &["lam^2 + 1"] } else { &["lam"] };
        let fam = Family::new("x", "lam", h, dens, 1, None)?;
        let gm = gm_matrix(&fam, Route::Naive, BasisPolicy::Canonical)?;
        for (k, label) in gm.labels.iter().enumerate() {
            let op = picard_fuchs(&gm, k)?;
            println!("{h:<16} {label:<22} {}", render_operator(&op, "lam"));
        }
    }
    Ok(())
}
