//! Which posets on at most six points are essential and split in two one-parameter parts.

use orthoscalar::catalog::{a8, essential_catalog_match};
use orthoscalar::poset::enumerate_up_to_isomorphism;

fn main() {
    for n in 1..=6 {
        let all = enumerate_up_to_isomorphism(n);
        let hits: Vec<&str> = all.iter().filter_map(essential_catalog_match).map(|c| c.as_str()).collect();
        println!("n = {n}: {} posets, catalog {:?}", all.len(), hits);
    }
    println!("a8 matches {:?}", essential_catalog_match(&a8()));
}
