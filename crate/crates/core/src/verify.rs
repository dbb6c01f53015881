//! Numerical certification of projection families.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chain::EigenChain;
use crate::error::{Error, Result};
use crate::family::ProjectionFamily;
use crate::linalg::{hermitian_eigenvalues, identity, kron, max_abs, max_abs_diff, zeros, CMat};
use crate::split::Split;

pub const NULLSPACE_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub dimension: usize,
    pub tol: f64,
    /// Max-abs residual per check.
    pub residuals: BTreeMap<String, f64>,
    pub passed: bool,
    pub commutant_dim: usize,
    pub irreducible: bool,
    pub essential: bool,
    /// Elements whose projection is 0 or I.
    pub forced_elements: Vec<String>,
}

impl VerificationReport {
    pub fn worst_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }
}

fn ensure_square(fam: &ProjectionFamily) -> Result<usize> {
    if fam.matrices.len() != fam.poset.len() {
        return Err(Error::DimensionMismatch { expected: fam.poset.len(), found: fam.matrices.len() });
    }
    let n = fam.dimension();
    for m in &fam.matrices {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.nrows().max(m.ncols()) });
        }
    }
    Ok(n)
}

/// Projection axioms, order relations and orthoscalarity, plus the
/// commutant dimension and essentiality of the family.
pub fn check_all(fam: &ProjectionFamily, tol: f64) -> Result<VerificationReport> {
    let n = ensure_square(fam)?;
    let els = fam.poset.elements();
    let mut residuals = BTreeMap::new();
    for (e, p) in els.iter().zip(&fam.matrices) {
        residuals.insert(format!("idempotent[{e}]"), max_abs_diff(&(p * p), p));
        residuals.insert(format!("hermitian[{e}]"), max_abs_diff(p, &p.adjoint()));
    }
    for (i, j) in fam.poset.relations() {
        let (pi, pj) = (&fam.matrices[i], &fam.matrices[j]);
        residuals.insert(format!("order[{}<{}]", els[i], els[j]), max_abs_diff(&(pi * pj), pi));
    }
    let alphas = fam.character.aligned(&fam.poset)?;
    let mut sum = zeros(n);
    for (a, p) in alphas.iter().zip(&fam.matrices) {
        sum += p * crate::linalg::c(*a);
    }
    residuals.insert("orthoscalar".into(), max_abs_diff(&sum, &identity(n)));
    let passed = residuals.values().all(|&r| r <= tol);
    let commutant = commutant_dim(fam);
    let forced = forced_elements(fam, tol);
    Ok(VerificationReport {
        dimension: n,
        tol,
        passed,
        commutant_dim: commutant,
        irreducible: commutant == 1,
        essential: check_essential(fam, tol),
        forced_elements: forced,
        residuals,
    })
}

fn forced_elements(fam: &ProjectionFamily, tol: f64) -> Vec<String> {
    let id = identity(fam.dimension());
    fam.poset
        .elements()
        .iter()
        .zip(&fam.matrices)
        .filter(|(_, p)| max_abs(p) <= tol || max_abs_diff(p, &id) <= tol)
        .map(|(e, _)| e.clone())
        .collect()
}

/// Dimension of `{X : X P_g = P_g X for all g}` over the complex numbers.
pub fn commutant_dim(fam: &ProjectionFamily) -> usize {
    commutant_dim_with(fam, NULLSPACE_REL_TOL)
}

pub fn commutant_dim_with(fam: &ProjectionFamily, rel_tol: f64) -> usize {
    let n = fam.dimension();
    if n == 0 {
        return 0;
    }
    let id = identity(n);
    let k = fam.matrices.len().max(1);
    let mut op = CMat::zeros(k * n * n, n * n);
    for (b, p) in fam.matrices.iter().enumerate() {
        // column-major vec: vec(XP − PX) = (Pᵀ ⊗ I − I ⊗ P) vec X
        let blk = kron(&p.transpose(), &id) - kron(&id, p);
        op.view_mut((b * n * n, 0), (n * n, n * n)).copy_from(&blk);
    }
    let sv = op.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return n * n;
    }
    let rank = sv.iter().filter(|&&s| s > rel_tol * top).count();
    n * n - rank
}

/// No projection is 0 or I and no two comparable projections coincide.
pub fn check_essential(fam: &ProjectionFamily, tol: f64) -> bool {
    if !forced_elements(fam, tol).is_empty() {
        return false;
    }
    fam.poset
        .relations()
        .into_iter()
        .all(|(i, j)| max_abs_diff(&fam.matrices[i], &fam.matrices[j]) > tol)
}

fn multiset_close(mut a: Vec<f64>, mut b: Vec<f64>, tol: f64) -> bool {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Eigenvalues of the two partial sums agree with the chain's λ and μ lists.
pub fn spectrum_match(fam: &ProjectionFamily, split: &Split, chain: &EigenChain, tol: f64) -> Result<bool> {
    let a1 = fam.weighted_sum(split.first_names())?;
    let a2 = fam.weighted_sum(split.second_names())?;
    Ok(multiset_close(hermitian_eigenvalues(&a1), chain.lambdas.clone(), tol)
        && multiset_close(hermitian_eigenvalues(&a2), chain.mus.clone(), tol))
}
