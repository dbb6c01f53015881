//! Complementary projections give the dual poset's representation.

use orthoscalar::build::dualize;
use orthoscalar::catalog::essential_catalog_match;
use orthoscalar::solve::{solve, SolveOptions};
use orthoscalar::{check_all, CatalogName, Character, Split};

fn main() -> orthoscalar::Result<()> {
    let e = 0.0131;
    let a = 0.5 + e;
    let p = CatalogName::A4.poset();
    let chi = Character::for_poset(&p, &[a, a, a, a, e / 2.0, 0.25 - 2.5 * e])?;
    let sol = solve(&Split::new(&p, CatalogName::A4.first_part())?, &chi, &SolveOptions::default())?;
    let fam = &sol.families[0];
    let dual = dualize(fam)?;
    println!("dual poset matches {:?}", essential_catalog_match(&dual.poset));
    println!("dual weights {:?}", dual.character.weights());
    let r = check_all(&dual, 1e-10)?;
    println!("dual family: dim {} residual {:.1e} essential {}", r.dimension, r.worst_residual(), r.essential);
    let back = dualize(&dual)?;
    let err = fam.matrices.iter().zip(&back.matrices).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    println!("round trip error {err:.1e}");
    Ok(())
}
