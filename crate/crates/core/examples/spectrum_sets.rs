//! Discrete points, continuous intervals and Σ for one-parameter posets.

use orthoscalar::{delta_of, Character, Membership, Poset};

fn main() -> orthoscalar::Result<()> {
    let p = Poset::new(&["g1", "g2", "g5"], &[("g1", "g5"), ("g2", "g5")])?;
    let chi = Character::for_poset(&p, &[0.2, 0.3, 0.1])?;
    let d = delta_of(&p, &chi)?;
    println!("discrete {:?}", d.discrete);
    println!("intervals {:?}  sigma {}", d.continuous, d.sigma);
    for x in [0.1, 0.2, 0.35, 0.5, 0.65] {
        let m = d.membership(x, 1e-9);
        let note = if m == Membership::Continuous { format!(" mirror {:.2}", d.reflect(x)) } else { String::new() };
        println!("  {x:.2}: {m:?}{note}");
    }
    let chain = Poset::chain(&["a", "b", "c"]);
    let d = delta_of(&chain, &Character::for_poset(&chain, &[0.2, 0.3, 0.4])?)?;
    println!("chain: discrete {:?} sigma {}", d.discrete, d.sigma);
    Ok(())
}
