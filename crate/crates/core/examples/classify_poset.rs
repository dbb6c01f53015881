//! Width, tame type and chain blocks of a few small posets.

use orthoscalar::{CatalogName, Poset};

fn main() -> orthoscalar::Result<()> {
    let posets = [
        ("(1,1,1,1)", CatalogName::Quadruple.poset()),
        ("a6", CatalogName::A6.poset()),
        ("diamond", Poset::new(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])?),
        ("(1,2)", Poset::new(&["x", "y", "z"], &[("y", "z")])?),
        ("pair over point", Poset::new(&["p", "q", "r"], &[("r", "p"), ("r", "q")])?),
    ];
    for (name, p) in &posets {
        print!("{name:<16} width {} {:?}", p.width(), p.classify());
        if let Ok(d) = p.decompose() {
            let blocks: Vec<String> = d.blocks.iter().map(|b| b.members().join("|")).collect();
            print!("  blocks {}", blocks.join(" < "));
        }
        println!();
    }
    Ok(())
}
