//! When the weights sum to 2 the chain collapses and 2x2 irreducibles come in a
//! two-parameter series (c, gamma).

use num_complex::Complex64;
use orthoscalar::build::{build_quadruple_continuous, quadruple_split};
use orthoscalar::solve::{solve, SolveOptions};
use orthoscalar::{check_all, lambda_zero_case, ChainContext};

fn main() -> orthoscalar::Result<()> {
    let alphas = [0.4, 0.6, 0.45, 0.55];
    let (split, chi) = quadruple_split(alphas)?;
    let z = lambda_zero_case(&ChainContext::new(&split, &chi)?)?;
    println!("c range {:?}, first eigenvalue intervals {:?}", z.c_range, z.continuous);
    for (cv, phase) in [(0.15, 0.0), (0.3, 1.0), (0.45, 2.5)] {
        let f = build_quadruple_continuous(alphas, cv, Complex64::from_polar(1.0, phase), 1e-12)?;
        let r = check_all(&f, 1e-10)?;
        println!("c {cv} phase {phase}: residual {:.1e} irreducible {}", r.worst_residual(), r.irreducible);
    }
    let opts = SolveOptions { c: Some(0.2), gamma: Complex64::new(0.0, 1.0), ..Default::default() };
    let sol = solve(&split, &chi, &opts)?;
    for rep in &sol.report.representations {
        println!("{} dim {} passed {}", rep.source, rep.report.dimension, rep.report.passed);
    }
    Ok(())
}
