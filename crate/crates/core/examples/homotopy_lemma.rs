//! The Leray square on a one-dimensional fiber chart: the cone of `f*Ω¹_Y ∧ Ω⁻¹ → Ω`,
//! the homotopy `h` with `dh + hd = id − Ψ`, and the replacement of `−p₁` by `ψ`.

use dmod::homalg::lemma::LeraySquare;

fn main() -> dmod::Result<()> {
    for level in 1..=3 {
        let sq = LeraySquare::build(level)?;
        let rep = sq.report()?;
        println!("level {level}: cone dims {:?}, cone homology {:?}", rep.cone_dims, rep.cone_homology);
        for (name, ok) in &rep.checks {
            println!("  [{}] {name}", if *ok { "ok" } else { "FAIL" });
        }
    }
    Ok(())
}
