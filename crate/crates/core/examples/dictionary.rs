//! A connection read three ways: covariant derivatives, a D-action, and a splitting of the
//! first jet sequence.

use dmod::conn::{dictionary_report, Connection, DRMode};
use dmod::exactalg::{parse_loc, parse_poly, vars_of, LocRing};
use dmod::io::ConnectionFile;
use dmod::locmat;

fn main() -> dmod::Result<()> {
    let vars = vars_of(&["x", "y"]);
    let ring = LocRing::new(vars.clone(), vec![parse_poly(&vars, "x")?])?;
    let a = |s: &str| parse_loc(&ring, s);

    // rank 2, flat: A_x = N/x with N nilpotent, A_y = 0
    let c = Connection::new(
        &ring,
        2,
        vec![vec![vec![a("0")?, a("1/x")?], vec![a("0")?, a("0")?]], locmat::zeros(&ring, 2, 2)],
    )?;
    println!("{}", serde_json::to_string(&ConnectionFile::of(&c)).unwrap());

    let back = Connection::from_d_action(&c.d_action())?;
    println!("round trip through the D-action: {}", back == c);

    let s = vec![a("x^2")?, a("y")?];
    let jet = c.jet_section().delta(&s);
    println!("delta(s) forms: {:?}", jet.forms.iter().map(|v| v.iter().map(|e| e.render()).collect::<Vec<_>>()).collect::<Vec<_>>());

    let dr = c.de_rham(&DRMode::Absolute)?;
    println!("de Rham complex has {} terms, d∘d = 0 verified: {}", dr.len(), dr.verified());

    let rep = dictionary_report(&c, true)?;
    for (name, ok) in &rep.checks {
        println!("  {name}: {ok}");
    }

    // y on the x-component: F_xy = -∂_y(y) ≠ 0
    let bent = Connection::new(&ring, 1, vec![vec![vec![a("y")?]], vec![vec![a("0")?]]])?;
    println!("bent connection integrable: {}", bent.is_integrable());
    println!("failures: {:?}", dictionary_report(&bent, true)?.failures());
    Ok(())
}
