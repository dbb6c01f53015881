//! Essential representations of a2, a4 and a6 from small perturbations of 1/2.

use orthoscalar::solve::{solve, SolveOptions};
use orthoscalar::{CatalogName, Character, Split};

fn show(name: CatalogName, weights: &[f64]) -> orthoscalar::Result<()> {
    let p = name.poset();
    let chi = Character::for_poset(&p, weights)?;
    let split = Split::lenient(&p, name.first_part())?;
    let sol = solve(&split, &chi, &SolveOptions::default())?;
    println!("{name} {weights:.5?}");
    for rep in &sol.report.representations {
        let r = &rep.report;
        println!("  dim {} residual {:.1e} irreducible {} essential {}", r.dimension, r.worst_residual(), r.irreducible, r.essential);
    }
    Ok(())
}

fn main() -> orthoscalar::Result<()> {
    let e = 0.0131;
    let a = 0.5 + e;
    for m in [1.0, 2.0] {
        show(CatalogName::A2, &[a, a, a, a, 1.0 / (2.0 * m) - 2.0 * e])?;
        show(CatalogName::A2, &[a, a, a, a, 1.0 / (4.0 * m) - 2.0 * e - e / (2.0 * m)])?;
        show(CatalogName::A4, &[a, a, a, a, e / 2.0, 1.0 / (2.0 * m) - 2.5 * e])?;
    }
    show(CatalogName::A6, &[a, a, a, a, e / 2.0, 1.0 / 3.0 - 7.0 * e / 3.0])?;
    Ok(())
}
