//! The interleaved eigenvalue chain deciding existence and dimension of
//! irreducible orthoscalar representations of a split poset.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::spectrum::{delta_of, DeltaSet, Membership, DEFAULT_TOL};
use crate::split::Split;

pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ChainContext {
    pub delta1: DeltaSet,
    pub delta2: DeltaSet,
    pub sigma1: f64,
    pub sigma2: f64,
    pub lambda_cap: f64,
    pub tol: f64,
}

impl ChainContext {
    pub fn new(split: &Split, chi: &Character) -> Result<Self> {
        let chi1 = chi.restrict(split.first_names())?;
        let chi2 = chi.restrict(split.second_names())?;
        Self::from_parts(&split.first, &chi1, &split.second, &chi2)
    }

    pub fn from_parts(p1: &Poset, chi1: &Character, p2: &Poset, chi2: &Character) -> Result<Self> {
        Ok(Self::from_deltas(delta_of(p1, chi1)?, delta_of(p2, chi2)?))
    }

    pub fn from_deltas(delta1: DeltaSet, delta2: DeltaSet) -> Self {
        let (sigma1, sigma2) = (delta1.sigma, delta2.sigma);
        ChainContext { delta1, delta2, sigma1, sigma2, lambda_cap: sigma1 + sigma2 - 2.0, tol: DEFAULT_TOL }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Same problem with the two parts exchanged.
    pub fn swapped(&self) -> Self {
        ChainContext {
            delta1: self.delta2.clone(),
            delta2: self.delta1.clone(),
            sigma1: self.sigma2,
            sigma2: self.sigma1,
            lambda_cap: self.lambda_cap,
            tol: self.tol,
        }
    }

    pub fn is_zero_cap(&self) -> bool {
        self.lambda_cap.abs() <= self.tol
    }

    fn zero_cap_applies(&self) -> bool {
        self.is_zero_cap() && self.delta1.has_continuum() && self.delta2.has_continuum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    DiscreteInDelta1,
    DiscreteInDelta2,
    Escaped,
    ContinuousFamily,
}

/// Which part supplies the singleton at the start of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    First,
    Second,
}

/// `lambdas[j]` and `mus[j] = 1 − lambdas[j]` are the eigenvalues of the
/// first and second partial sums on the j-th basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenChain {
    pub lambdas: Vec<f64>,
    pub mus: Vec<f64>,
    pub termination: Termination,
    pub start_point: f64,
    pub start_side: Side,
    /// Set when some value sits within a hundred tolerances of a boundary.
    pub boundary_ambiguous: bool,
}

impl EigenChain {
    pub fn dimension(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_escaped(&self) -> bool {
        self.termination == Termination::Escaped
    }

    /// Values on the starting side, in chain order.
    pub fn start_side_values(&self) -> &[f64] {
        match self.start_side {
            Side::First => &self.lambdas,
            Side::Second => &self.mus,
        }
    }

    pub fn other_side_values(&self) -> &[f64] {
        match self.start_side {
            Side::First => &self.mus,
            Side::Second => &self.lambdas,
        }
    }

    pub fn last_lambda(&self) -> f64 {
        *self.lambdas.last().expect("chains are nonempty")
    }

    pub fn last_mu(&self) -> f64 {
        *self.mus.last().expect("chains are nonempty")
    }

    /// Deviation from the closed forms `x_{2k} = x₀ + kΛ`,
    /// `x_{2k+1} = Σ_a − x₀ − (k+1)Λ` on the starting side.
    pub fn closed_form_residual(&self, ctx: &ChainContext) -> f64 {
        let (xs, sa) = match self.start_side {
            Side::First => (&self.lambdas, ctx.sigma1),
            Side::Second => (&self.mus, ctx.sigma2),
        };
        let x0 = xs[0];
        let big = ctx.lambda_cap;
        xs.iter()
            .enumerate()
            .map(|(j, &x)| {
                let k = (j / 2) as f64;
                let want = if j % 2 == 0 { x0 + k * big } else { sa - x0 - (k + 1.0) * big };
                (x - want).abs()
            })
            .chain(self.lambdas.iter().zip(&self.mus).map(|(l, m)| (l + m - 1.0).abs()))
            .fold(0.0, f64::max)
    }
}

enum WalkEnd {
    DiscreteA,
    DiscreteB,
    Escaped,
}

fn classify(d: &DeltaSet, x: f64, tol: f64) -> (Membership, bool) {
    let m = d.membership(x, tol);
    let wide = d.membership(x, 100.0 * tol);
    (m, m != wide)
}

fn walk(
    a: &DeltaSet,
    b: &DeltaSet,
    x0: f64,
    tol: f64,
    max_steps: usize,
) -> Result<(Vec<f64>, Vec<f64>, WalkEnd, bool)> {
    let mut xs = vec![x0];
    let mut ys = vec![1.0 - x0];
    loop {
        if xs.len() > max_steps {
            return Err(Error::StepLimit(max_steps));
        }
        let y = *ys.last().unwrap();
        match classify(b, y, tol) {
            (_, true) => return Ok((xs, ys, WalkEnd::Escaped, true)),
            (Membership::Discrete, _) => return Ok((xs, ys, WalkEnd::DiscreteB, false)),
            (Membership::Outside, _) => return Ok((xs, ys, WalkEnd::Escaped, false)),
            (Membership::Continuous, _) => {}
        }
        let y1 = b.sigma - y;
        let x1 = 1.0 - y1;
        xs.push(x1);
        ys.push(y1);
        match classify(a, x1, tol) {
            (_, true) => return Ok((xs, ys, WalkEnd::Escaped, true)),
            (Membership::Discrete, _) => return Ok((xs, ys, WalkEnd::DiscreteA, false)),
            (Membership::Outside, _) => return Ok((xs, ys, WalkEnd::Escaped, false)),
            (Membership::Continuous, _) => {}
        }
        let x2 = a.sigma - x1;
        xs.push(x2);
        ys.push(1.0 - x2);
        if a.membership(x2, tol) != Membership::Continuous {
            return Ok((xs, ys, WalkEnd::Escaped, false));
        }
    }
}

/// Runs the chain from a discrete point `x0` of the given side.
pub fn run_chain_from(ctx: &ChainContext, side: Side, x0: f64, max_steps: usize) -> Result<EigenChain> {
    let (a, b) = match side {
        Side::First => (&ctx.delta1, &ctx.delta2),
        Side::Second => (&ctx.delta2, &ctx.delta1),
    };
    if a.membership(x0, ctx.tol) != Membership::Discrete {
        return Err(Error::StartNotDiscrete(x0));
    }
    if ctx.zero_cap_applies() {
        return Err(Error::ZeroLambdaCap);
    }
    let (xs, ys, end, ambiguous) = walk(a, b, x0, ctx.tol, max_steps)?;
    let (lambdas, mus, termination) = match (side, end) {
        (_, WalkEnd::Escaped) => {
            let (l, m) = if side == Side::First { (xs, ys) } else { (ys, xs) };
            (l, m, Termination::Escaped)
        }
        (Side::First, WalkEnd::DiscreteA) => (xs, ys, Termination::DiscreteInDelta1),
        (Side::First, WalkEnd::DiscreteB) => (xs, ys, Termination::DiscreteInDelta2),
        (Side::Second, WalkEnd::DiscreteA) => (ys, xs, Termination::DiscreteInDelta2),
        (Side::Second, WalkEnd::DiscreteB) => (ys, xs, Termination::DiscreteInDelta1),
    };
    Ok(EigenChain { lambdas, mus, termination, start_point: x0, start_side: side, boundary_ambiguous: ambiguous })
}

/// Runs the chain from a discrete point `lambda0` of the first part.
pub fn run_chain(ctx: &ChainContext, lambda0: f64, max_steps: usize) -> Result<EigenChain> {
    run_chain_from(ctx, Side::First, lambda0, max_steps)
}

fn key(values: &[f64], tol: f64) -> (i64, i64, usize) {
    let q = |x: f64| (x / (tol * 1e3)).round() as i64;
    let (a, b) = (q(values[0]), q(*values.last().unwrap()));
    (a.min(b), a.max(b), values.len())
}

fn sweep(ctx: &ChainContext) -> Result<Vec<EigenChain>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &x0 in &ctx.delta1.discrete {
        let ch = run_chain_from(ctx, Side::First, x0, DEFAULT_MAX_STEPS)?;
        if ch.is_escaped() {
            continue;
        }
        if seen.insert((0u8, key(&ch.lambdas, ctx.tol))) {
            out.push(ch);
        }
    }
    // chains whose both ends are singletons of the second part contain no
    // discrete eigenvalue of the first part and only show up from this side
    for &y0 in &ctx.delta2.discrete {
        let ch = run_chain_from(ctx, Side::Second, y0, DEFAULT_MAX_STEPS)?;
        if ch.termination != Termination::DiscreteInDelta2 || ch.dimension() < 2 {
            continue;
        }
        if seen.insert((1u8, key(&ch.mus, ctx.tol))) {
            out.push(ch);
        }
    }
    Ok(out)
}

/// All irreducibles with a discrete starting point; one chain per
/// representation, reversals removed.
pub fn enumerate_irreducibles(ctx: &ChainContext) -> Result<Vec<EigenChain>> {
    if ctx.zero_cap_applies() {
        return Err(Error::ZeroLambdaCap);
    }
    sweep(ctx)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCapCase {
    /// One- and two-dimensional irreducibles with a discrete eigenvalue.
    pub chains: Vec<EigenChain>,
    /// First-part eigenvalues `λ` for which `{λ, Σ₁−λ}` carries a
    /// two-dimensional irreducible, each with a free phase.
    pub continuous: Vec<(f64, f64)>,
    /// For two incomparable pairs: the admissible range of the offset `c`.
    pub c_range: Option<(f64, f64)>,
}

pub fn lambda_zero_case(ctx: &ChainContext) -> Result<ZeroCapCase> {
    if !ctx.is_zero_cap() {
        return Err(Error::NonzeroLambdaCap(ctx.lambda_cap));
    }
    let relaxed = ChainContext { lambda_cap: f64::INFINITY, ..ctx.clone() };
    let chains = sweep(&relaxed)?;
    let mut continuous = Vec::new();
    for &(lo1, hi1) in &ctx.delta1.continuous {
        for &(lo2, hi2) in &ctx.delta2.continuous {
            let (lo, hi) = (lo1.max(1.0 - hi2), hi1.min(1.0 - lo2));
            if hi - lo > ctx.tol {
                continuous.push((lo, hi));
            }
        }
    }
    let bare_pair = |d: &DeltaSet| match d.pair_weights {
        Some((a1, a2)) if (d.total - a1 - a2).abs() <= ctx.tol => Some(((a1 - a2).abs() / 2.0, (a1 + a2) / 2.0)),
        _ => None,
    };
    let c_range = match (bare_pair(&ctx.delta1), bare_pair(&ctx.delta2)) {
        (Some((l1, h1)), Some((l2, h2))) if h1.min(h2) > l1.max(l2) => Some((l1.max(l2), h1.min(h2))),
        _ => None,
    };
    Ok(ZeroCapCase { chains, continuous, c_range })
}

/// `⌊Λ⁻¹ + 1⌋` for `Λ > 0`; for `Λ < 0` the same expression for the dual
/// problem, whose cap is `−Λ/(Σα − 1)`; 2 when `Λ = 0`.
pub fn dimension_bound(ctx: &ChainContext) -> Option<usize> {
    let big = ctx.lambda_cap;
    if big.abs() <= ctx.tol {
        return Some(2);
    }
    let cap = if big > 0.0 {
        big
    } else {
        let w = ctx.delta1.total + ctx.delta2.total;
        if w <= 1.0 {
            return None;
        }
        -big / (w - 1.0)
    };
    Some((1.0 / cap + 1.0 + 1e-12).floor() as usize)
}

/// Largest possible length of a chain starting at `λ₀ = 0` when `Λ > 0`:
/// odd lengths are at most `2/Λ + 1`, even lengths stay below `2/Λ + 2`.
pub fn zero_start_length_bound(ctx: &ChainContext) -> Option<usize> {
    let big = ctx.lambda_cap;
    if big <= ctx.tol {
        return None;
    }
    let mut odd = (2.0 / big + 1.0 + 1e-12).floor() as usize;
    if odd.is_multiple_of(2) {
        odd -= 1;
    }
    let mut even = (2.0 / big + 2.0 - 1e-12).ceil() as usize - 1;
    if even % 2 == 1 {
        even -= 1;
    }
    Some(odd.max(even))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Forced {
    Zero,
    Identity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyOutcome {
    pub forced: Vec<(String, Forced)>,
    /// Elements of weight exactly one: their projection is 0 or I.
    pub branch: Vec<String>,
    /// Weights of the elements left undetermined.
    pub reduced: Character,
}

/// Screens out the trivial cases: total below one (no representation), total
/// exactly one (everything is the identity), and weights of at least one.
pub fn run_degeneracy_filter(chi: &Character, tol: f64) -> Result<DegeneracyOutcome> {
    let total = chi.total();
    if total < 1.0 - tol {
        return Err(Error::NoRepresentation(total));
    }
    if (total - 1.0).abs() <= tol {
        let forced = chi.weights().keys().map(|k| (k.clone(), Forced::Identity)).collect();
        return Ok(DegeneracyOutcome { forced, branch: Vec::new(), reduced: Character::new(Vec::<(String, f64)>::new())? });
    }
    let mut forced = Vec::new();
    let mut branch = Vec::new();
    let mut kept = Vec::new();
    for (k, &w) in chi.weights() {
        if w > 1.0 + tol {
            forced.push((k.clone(), Forced::Zero));
        } else if (w - 1.0).abs() <= tol {
            branch.push(k.clone());
        } else {
            kept.push((k.clone(), w));
        }
    }
    let rest: f64 = kept.iter().map(|(_, w)| w).sum::<f64>() + branch.len() as f64;
    if rest < 1.0 - tol {
        return Err(Error::NoRepresentation(rest));
    }
    Ok(DegeneracyOutcome { forced, branch, reduced: Character::new(kept)? })
}
