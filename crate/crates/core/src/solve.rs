//! End-to-end pipeline: screen degenerate weights, run the chains (or
//! describe the zero-cap series), build every family and verify it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::build::{build_from_chain, build_zero_cap_continuous, monotone_assignments};
use crate::chain::{
    dimension_bound, enumerate_irreducibles, lambda_zero_case, run_degeneracy_filter, ChainContext, Forced,
};
use crate::character::Character;
use crate::error::Result;
use crate::family::ProjectionFamily;
use crate::io::{ChainReport, FamilyDoc};
use crate::linalg::{c, zeros, CMat};
use crate::split::Split;
use crate::verify::{check_all, VerificationReport};

/// Residual tolerance applied to every built family.
pub const VERIFY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub tol: f64,
    /// Offset from `Σ₁/2` selecting a member of the zero-cap series.
    pub c: Option<f64>,
    pub gamma: Complex64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-9, c: None, gamma: c(1.0) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCapDoc {
    pub continuous: Vec<[f64; 2]>,
    pub c_range: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolvedRep {
    /// `chain`, `zero-cap` or `one-dim`.
    pub source: String,
    pub chain_index: Option<usize>,
    pub family: FamilyDoc,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub sigma1: Option<f64>,
    pub sigma2: Option<f64>,
    pub lambda_cap: Option<f64>,
    pub dimension_bound: Option<usize>,
    pub forced: Vec<(String, Forced)>,
    pub branch: Vec<String>,
    pub chains: Vec<ChainReport>,
    pub zero_cap: Option<ZeroCapDoc>,
    pub representations: Vec<SolvedRep>,
}

impl SolveReport {
    pub fn all_verified(&self) -> bool {
        self.representations.iter().all(|r| r.report.passed)
    }
}

pub struct Solution {
    pub report: SolveReport,
    pub families: Vec<ProjectionFamily>,
}

/// Pads a family on a reduced poset with zero projections for the removed elements.
fn extend(fam: &ProjectionFamily, split: &Split, chi: &Character) -> Result<ProjectionFamily> {
    let n = fam.dimension();
    let mats: Vec<CMat> = split
        .poset
        .elements()
        .iter()
        .map(|e| fam.get(e).cloned().unwrap_or_else(|| zeros(n)))
        .collect();
    ProjectionFamily::new(split.poset.clone(), chi.clone(), mats)
}

pub fn solve(split: &Split, chi: &Character, opts: &SolveOptions) -> Result<Solution> {
    chi.aligned(&split.poset)?;
    let tol = opts.tol;
    let degen = run_degeneracy_filter(chi, 1e-12)?;
    let mut report = SolveReport {
        sigma1: None,
        sigma2: None,
        lambda_cap: None,
        dimension_bound: None,
        forced: degen.forced.clone(),
        branch: degen.branch.clone(),
        chains: Vec::new(),
        zero_cap: None,
        representations: Vec::new(),
    };
    let mut built: Vec<(String, Option<usize>, ProjectionFamily)> = Vec::new();

    let all_identity = !degen.forced.is_empty() && degen.forced.iter().all(|(_, f)| *f == Forced::Identity);
    if all_identity {
        let mats = vec![CMat::from_element(1, 1, c(1.0)); split.poset.len()];
        built.push(("one-dim".into(), None, ProjectionFamily::new(split.poset.clone(), chi.clone(), mats)?));
    } else {
        let kept: Vec<String> = degen.reduced.weights().keys().cloned().collect();
        let reduced = if kept.len() == split.poset.len() { split.clone() } else { split.restricted(&kept)? };
        let rchi = degen.reduced.clone();
        let ctx = ChainContext::new(&reduced, &rchi)?.with_tol(tol);
        report.sigma1 = Some(ctx.sigma1);
        report.sigma2 = Some(ctx.sigma2);
        report.lambda_cap = Some(ctx.lambda_cap);
        report.dimension_bound = dimension_bound(&ctx);
        let chains = if ctx.is_zero_cap() && ctx.delta1.has_continuum() && ctx.delta2.has_continuum() {
            let z = lambda_zero_case(&ctx)?;
            let lambdas: Vec<f64> = match opts.c {
                Some(cv) => vec![ctx.sigma1 / 2.0 + cv],
                None => z.continuous.iter().map(|&(lo, hi)| (lo + hi) / 2.0).collect(),
            };
            for lam in lambdas {
                let fam = build_zero_cap_continuous(&reduced, &rchi, lam, opts.gamma, tol)?;
                built.push(("zero-cap".into(), None, extend(&fam, split, chi)?));
            }
            report.zero_cap = Some(ZeroCapDoc {
                continuous: z.continuous.iter().map(|&(a, b)| [a, b]).collect(),
                c_range: z.c_range.map(|(a, b)| [a, b]),
            });
            z.chains
        } else {
            enumerate_irreducibles(&ctx)?
        };
        for (i, ch) in chains.iter().enumerate() {
            report.chains.push(ChainReport::from_chain(ch));
            for fam in build_from_chain(&reduced, &rchi, ch, tol)? {
                built.push(("chain".into(), Some(i), extend(&fam, split, chi)?));
            }
        }
        // a weight-one element equal to the identity kills everything else
        for b in &degen.branch {
            for assignment in monotone_assignments(&split.poset, chi, 1.0, tol) {
                let on = |e: &str| assignment.iter().any(|(n, v)| n == e && *v == 1.0);
                if !on(b) {
                    continue;
                }
                let mats = split
                    .poset
                    .elements()
                    .iter()
                    .map(|e| CMat::from_element(1, 1, c(if on(e) { 1.0 } else { 0.0 })))
                    .collect();
                built.push(("one-dim".into(), None, ProjectionFamily::new(split.poset.clone(), chi.clone(), mats)?));
            }
        }
    }
    let mut families = Vec::new();
    for (source, chain_index, fam) in built {
        let rep = check_all(&fam, VERIFY_TOL)?;
        report.representations.push(SolvedRep { source, chain_index, family: FamilyDoc::from_family(&fam), report: rep });
        families.push(fam);
    }
    Ok(Solution { report, families })
}
