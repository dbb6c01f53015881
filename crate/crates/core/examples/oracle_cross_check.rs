//! Chain construction versus blind numerical search, dimension by dimension.

use orthoscalar::build::quadruple_split;
use orthoscalar::oracle::{cross_validate, SearchConfig};
use orthoscalar::{CatalogName, Character, Split};

fn main() -> orthoscalar::Result<()> {
    let cfg = SearchConfig::new(1).with_seed(2024).with_restarts(6);

    let (split, chi) = quadruple_split([0.6; 4])?;
    println!("(1,1,1,1) with all weights 0.6");
    let table = cross_validate(&split, &chi, 1..=6, &cfg)?;
    print!("{}", table.to_text());

    let e = 0.0131;
    let a = 0.5 + e;
    let p = CatalogName::A4.poset();
    let chi = Character::for_poset(&p, &[a, a, a, a, e / 2.0, 0.25 - 2.5 * e])?;
    let split = Split::new(&p, CatalogName::A4.first_part())?;
    println!("\na4 with eps = {e}");
    let table = cross_validate(&split, &chi, 1..=6, &cfg)?;
    print!("{}", table.to_text());
    Ok(())
}
