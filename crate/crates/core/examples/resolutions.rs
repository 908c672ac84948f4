//! Graded exactness of the truncated de Rham and Spencer resolutions.

use dmod::homalg::{truncated_exactness, ResolutionKind};

fn main() -> dmod::Result<()> {
    for (n, d) in [(1, 8), (2, 6)] {
        for kind in [ResolutionKind::LeftDeRham, ResolutionKind::RightSpencer] {
            let cert = truncated_exactness(kind, n, d)?;
            println!("{kind:?} n={n} D={d}: pass = {}", cert.pass);
            for lvl in &cert.filtered {
                println!("  level {:>2}  dims {:?}  homology {:?}  expected {:?}", lvl.top_level, lvl.dims, lvl.homology, lvl.expected);
            }
        }
    }
    println!("{}", truncated_exactness(ResolutionKind::LeftDeRham, 1, 2)?.scope);
    Ok(())
}
