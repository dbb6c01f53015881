//! The eigenvalue chain of the four-subspace problem and the 3x3 family it fixes.

use orthoscalar::build::{build_quadruple, quadruple_block_params, quadruple_split};
use orthoscalar::verify::spectrum_match;
use orthoscalar::{check_all, run_chain, ChainContext};

fn main() -> orthoscalar::Result<()> {
    let alphas = [0.6; 4];
    let (split, chi) = quadruple_split(alphas)?;
    let ctx = ChainContext::new(&split, &chi)?;
    println!("sigma1 {} sigma2 {} cap {}", ctx.sigma1, ctx.sigma2, ctx.lambda_cap);
    let ch = run_chain(&ctx, 0.0, 100)?;
    println!("lambdas {:?}\nmus {:?}\nend {:?}", ch.lambdas, ch.mus, ch.termination);
    println!("{:?}", quadruple_block_params(&ch, alphas)?);
    for (i, f) in build_quadruple(&ch, alphas, 1e-9)?.iter().enumerate() {
        let r = check_all(f, 1e-10)?;
        println!(
            "family {i}: residual {:.1e} commutant {} spectra match {}",
            r.worst_residual(),
            r.commutant_dim,
            spectrum_match(f, &split, &ch, 1e-10)?
        );
        for e in ["g1", "g2", "g3", "g4"] {
            println!("  P_{e} = {:.4}", f.projection(e)?.map(|z| z.re));
        }
    }
    Ok(())
}
