//! Admissible spectra of weighted projection sums over a one-parameter poset.

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::error::{Error, Result};
use crate::linalg::{c, rank_one, CMat};
use crate::poset::{Block, Poset, PosetClass};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Discrete points plus open intervals; see [`delta_of`].
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSet {
    pub discrete: Vec<f64>,
    pub continuous: Vec<(f64, f64)>,
    pub sigma: f64,
    /// Weights of the incomparable pair, `None` for a chain.
    pub pair_weights: Option<(f64, f64)>,
    /// Total weight of the blocks above the pair.
    pub upper_tail: f64,
    /// Total weight of the poset.
    pub total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Discrete,
    Continuous,
    Outside,
}

impl DeltaSet {
    pub fn membership(&self, x: f64, tol: f64) -> Membership {
        if self.discrete.iter().any(|p| (x - p).abs() <= tol) {
            return Membership::Discrete;
        }
        if self.continuous.iter().any(|&(lo, hi)| x > lo + tol && x < hi - tol) {
            return Membership::Continuous;
        }
        Membership::Outside
    }

    /// Distance from `x` to the nearest discrete point or interval endpoint.
    pub fn boundary_distance(&self, x: f64) -> f64 {
        self.discrete
            .iter()
            .copied()
            .chain(self.continuous.iter().flat_map(|&(lo, hi)| [lo, hi]))
            .map(|p| (x - p).abs())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        if self.membership(x, tol) != Membership::Outside {
            return true;
        }
        // closure of the intervals
        self.continuous.iter().any(|&(lo, hi)| x >= lo - tol && x <= hi + tol)
    }

    pub fn has_continuum(&self) -> bool {
        !self.continuous.is_empty()
    }

    /// The point symmetric to `x` about `Σ/2`.
    pub fn reflect(&self, x: f64) -> f64 {
        self.sigma - x
    }
}

/// Builds `Δ` and `Σ` for a one-parameter or chain poset.
pub fn delta_of(p: &Poset, chi: &Character) -> Result<DeltaSet> {
    let class = p.classify();
    if !matches!(class, PosetClass::OneParameter | PosetClass::ChainTame) {
        return Err(Error::NotOneParameter);
    }
    let w = |e: &str| chi.weight(e);
    let blocks = p.decompose()?.blocks;
    let total: f64 = p.elements().iter().map(|e| w(e)).sum::<Result<f64>>()?;
    let k = blocks.iter().position(Block::is_pair);
    let above_start = k.map_or(0, |k| k + 1);
    let mut pts = vec![0.0];
    let mut s = 0.0;
    // suffix sums from the top down to the pair
    for b in blocks[above_start..].iter().rev() {
        if let Block::Singleton(e) = b {
            s += w(e)?;
            pts.push(s);
        }
    }
    let upper_tail = s;
    let mut pair_weights = None;
    let mut continuous = Vec::new();
    if let Some(k) = k {
        let Block::Pair(e1, e2) = &blocks[k] else { unreachable!() };
        let (a1, a2) = (w(e1)?, w(e2)?);
        pts.extend([s + a1, s + a2, s + a1 + a2]);
        s += a1 + a2;
        let (lo, hi) = (a1.min(a2), a1.max(a2));
        continuous.push((upper_tail, upper_tail + lo));
        continuous.push((upper_tail + hi, upper_tail + a1 + a2));
        pair_weights = Some((a1, a2));
        for b in blocks[..k].iter().rev() {
            if let Block::Singleton(e) = b {
                s += w(e)?;
                pts.push(s);
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14);
    let sigma = match pair_weights {
        Some((a1, a2)) => a1 + a2 + 2.0 * upper_tail,
        None => 2.0 * total,
    };
    Ok(DeltaSet { discrete: pts, continuous, sigma, pair_weights, upper_tail, total })
}

/// Diagonal offsets `(ε₁, ε₂)` of the pair projections for a continuous
/// spectral point `lambda`.
pub fn restore_epsilon(d: &DeltaSet, lambda: f64, tol: f64) -> Result<(f64, f64)> {
    let (a1, a2) = d.pair_weights.ok_or(Error::OutsideContinuum(lambda))?;
    let mu = lambda - d.upper_tail;
    let den = 2.0 * mu - a1 - a2;
    if den.abs() <= tol {
        return Err(Error::SingularDenominator(lambda));
    }
    if d.membership(lambda, tol) != Membership::Continuous {
        return Err(Error::OutsideContinuum(lambda));
    }
    let e1 = (2.0 * mu * mu - (2.0 * mu - a1) * (a1 + a2)) / (a1 * den);
    let e2 = (2.0 * mu * mu - (2.0 * mu - a2) * (a1 + a2)) / (a2 * den);
    Ok((e1, e2))
}

/// The two pair projections with `α₁P₁ + α₂P₂ = diag(μ, α₁+α₂−μ)`; the
/// off-diagonal of the first carries `+gamma`, of the second `−gamma`.
pub fn pair_block(eps1: f64, eps2: f64, gamma: num_complex::Complex64) -> Result<(CMat, CMat)> {
    Ok((rank_one(eps1, 1.0, gamma)?, rank_one(eps2, -1.0, gamma)?))
}

pub fn pair_block_real(eps1: f64, eps2: f64) -> Result<(CMat, CMat)> {
    pair_block(eps1, eps2, c(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, max_abs_diff, diag};

    fn pair(a: f64, b: f64) -> DeltaSet {
        let p = Poset::antichain(&["1", "2"]);
        delta_of(&p, &Character::for_poset(&p, &[a, b]).unwrap()).unwrap()
    }

    #[test]
    fn antichain_pair() {
        let d = pair(0.3, 0.5);
        assert_eq!(d.discrete, vec![0.0, 0.3, 0.5, 0.8]);
        assert_eq!(d.continuous, vec![(0.0, 0.3), (0.5, 0.8)]);
        assert!((d.sigma - 0.8).abs() < 1e-15);
    }

    #[test]
    fn diamond_intervals() {
        let p = Poset::new(&["g1", "g2", "g5"], &[("g1", "g5"), ("g2", "g5")]).unwrap();
        let chi = Character::for_poset(&p, &[0.2, 0.3, 0.1]).unwrap();
        let d = delta_of(&p, &chi).unwrap();
        assert_eq!(d.continuous.len(), 2);
        assert!((d.continuous[0].0 - 0.1).abs() < 1e-15 && (d.continuous[0].1 - 0.3).abs() < 1e-15);
        assert!((d.continuous[1].0 - 0.4).abs() < 1e-15 && (d.continuous[1].1 - 0.6).abs() < 1e-15);
        assert!((d.sigma - 0.7).abs() < 1e-15);
        assert_eq!(d.discrete.len(), 5);
    }

    #[test]
    fn equal_weights_abut() {
        let d = pair(0.6, 0.6);
        assert_eq!(d.discrete, vec![0.0, 0.6, 1.2]);
        assert_eq!(d.continuous, vec![(0.0, 0.6), (0.6, 1.2)]);
        assert_eq!(d.membership(0.6, 1e-9), Membership::Discrete);
    }

    #[test]
    fn membership_cases() {
        let d = pair(0.3, 0.5);
        assert_eq!(d.membership(0.5, 1e-9), Membership::Discrete);
        assert_eq!(d.membership(0.65, 1e-9), Membership::Continuous);
        assert_eq!(d.membership(0.4, 1e-9), Membership::Outside);
    }

    #[test]
    fn epsilon_restoration() {
        let d = pair(0.6, 0.6);
        let (e1, e2) = restore_epsilon(&d, 0.8, 1e-9).unwrap();
        assert!((e1 - 1.0 / 3.0).abs() < 1e-14 && (e2 - 1.0 / 3.0).abs() < 1e-14);
        assert_eq!(restore_epsilon(&d, 0.6, 1e-9), Err(Error::SingularDenominator(0.6)));
        assert!(matches!(restore_epsilon(&pair(0.3, 0.5), 0.45, 1e-9), Err(Error::OutsideContinuum(_))));
    }

    #[test]
    fn pair_block_sums_to_diagonal() {
        let d = pair(0.3, 0.5);
        for &lam in &[0.1, 0.25, 0.55, 0.77] {
            let (e1, e2) = restore_epsilon(&d, lam, 1e-9).unwrap();
            let (p1, p2) = pair_block_real(e1, e2).unwrap();
            let a = p1 * c(0.3) + p2 * c(0.5);
            assert!(max_abs_diff(&a, &diag(&[lam, 0.8 - lam])) < 1e-12, "{lam}");
            let ev = hermitian_eigenvalues(&a);
            assert!((ev[0] + ev[1] - d.sigma).abs() < 1e-12);
        }
    }

    #[test]
    fn chain_has_no_continuum() {
        let p = Poset::chain(&["a", "b"]);
        let d = delta_of(&p, &Character::for_poset(&p, &[0.2, 0.3]).unwrap()).unwrap();
        assert_eq!(d.discrete, vec![0.0, 0.3, 0.5]);
        assert!(d.continuous.is_empty());
        assert!((d.sigma - 1.0).abs() < 1e-15);
    }
}
