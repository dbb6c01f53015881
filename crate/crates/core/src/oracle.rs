//! Independent numerical search for orthoscalar families.
//!
//! Each projection of rank `r` is written as `P = Y (YᵀY)⁻¹ Yᵀ` with a real
//! `n × r` matrix `Y`. A few rounds of alternating projection give a starting
//! point; Levenberg–Marquardt then drives the residuals of `Σ α P = I` and of
//! the inclusions `ran P_g ⊆ ran P_h` (for covers `g < h`) to zero. Rank
//! profiles are enumerated up front and filtered by the trace identity
//! `Σ α_g rank P_g = n` and by necessary conditions on forced intersections.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::build::monotone_assignments;
use crate::character::Character;
use crate::error::Result;
use crate::family::ProjectionFamily;
use crate::linalg::{c, hermitian_eigenvalues, CMat};
use crate::poset::Poset;
use crate::solve::{solve, SolveOptions};
use crate::split::Split;
use crate::verify::{check_all, commutant_dim};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dimension: usize,
    pub restarts: usize,
    pub max_iterations: usize,
    /// Acceptance tolerance for the verified family.
    pub tol: f64,
    pub seed: u64,
    #[serde(default)]
    pub rank_profile: Option<BTreeMap<String, usize>>,
}

impl SearchConfig {
    pub fn new(dimension: usize) -> Self {
        SearchConfig { dimension, restarts: 16, max_iterations: 400, tol: 1e-10, seed: 0, rank_profile: None }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts.max(1);
        self
    }
}

/// All order-preserving 0/1 assignments (aligned with `p.elements()`) whose
/// weighted sum is one.
pub fn enumerate_dim1(p: &Poset, chi: &Character, tol: f64) -> Vec<Vec<u8>> {
    monotone_assignments(p, chi, 1.0, tol)
        .into_iter()
        .map(|a| a.into_iter().map(|(_, v)| v as u8).collect())
        .collect()
}

fn up_closure(p: &Poset, set: u32) -> u32 {
    let mut out = set;
    for i in 0..p.len() {
        if set >> i & 1 == 1 {
            for j in 0..p.len() {
                if p.less(i, j) {
                    out |= 1 << j;
                }
            }
        }
    }
    out
}

fn down_closure(p: &Poset, set: u32) -> u32 {
    let mut out = set;
    for j in 0..p.len() {
        if set >> j & 1 == 1 {
            for i in 0..p.len() {
                if p.less(i, j) {
                    out |= 1 << i;
                }
            }
        }
    }
    out
}

/// Whether some nonzero vector may lie in the ranges of `t1` and the
/// kernels of `t2` (both closed under the order as needed).
fn intersection_feasible(p: &Poset, w: &[f64], t1: u32, t2: u32) -> bool {
    let up = up_closure(p, t1);
    let down = down_closure(p, t2);
    if up & down != 0 {
        return false;
    }
    let sum = |mask: u32| (0..p.len()).filter(|&i| mask >> i & 1 == 1).map(|i| w[i]).sum::<f64>();
    let all = (1u32 << p.len()) - 1;
    sum(up) <= 1.0 + 1e-12 && sum(all & !down) >= 1.0 - 1e-12
}

/// Rank profiles (aligned with `p.elements()`) that pass the trace identity
/// and the forced-intersection conditions.
pub fn rank_profiles(p: &Poset, chi: &Character, n: usize) -> Result<Vec<Vec<usize>>> {
    let w = chi.aligned(p)?;
    let k = p.len();
    // a linear extension, so lower elements are fixed first
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (0..k).filter(|&j| p.less(j, i)).count());
    let mut ranks = vec![0usize; k];
    let mut out = Vec::new();
    fn rec(
        p: &Poset,
        w: &[f64],
        n: usize,
        order: &[usize],
        pos: usize,
        ranks: &mut Vec<usize>,
        trace: f64,
        out: &mut Vec<Vec<usize>>,
    ) {
        let rest: f64 = order[pos..].iter().map(|&i| w[i] * n as f64).sum();
        if trace > n as f64 + 1e-9 || trace + rest < n as f64 - 1e-9 {
            return;
        }
        if pos == order.len() {
            if (trace - n as f64).abs() <= 1e-9 * (n as f64).max(1.0) && admissible(p, w, n, ranks) {
                out.push(ranks.clone());
            }
            return;
        }
        let g = order[pos];
        let lo = (0..p.len()).filter(|&j| p.less(j, g) && order[..pos].contains(&j)).map(|j| ranks[j]).max().unwrap_or(0);
        for r in lo..=n {
            ranks[g] = r;
            rec(p, w, n, order, pos + 1, ranks, trace + w[g] * r as f64, out);
        }
        ranks[g] = 0;
    }
    rec(p, &w, n, &order, 0, &mut ranks, 0.0, &mut out);
    out.sort();
    Ok(out)
}

fn admissible(p: &Poset, w: &[f64], n: usize, ranks: &[usize]) -> bool {
    let k = p.len();
    // every split of the elements into T1 (ranges), T2 (kernels), rest
    let mut digits = vec![0u8; k];
    loop {
        let (mut t1, mut t2, mut count, mut dim) = (0u32, 0u32, 0usize, 0usize);
        for i in 0..k {
            match digits[i] {
                1 => {
                    t1 |= 1 << i;
                    count += 1;
                    dim += ranks[i];
                }
                2 => {
                    t2 |= 1 << i;
                    count += 1;
                    dim += n - ranks[i];
                }
                _ => {}
            }
        }
        if count > 0 && dim > (count - 1) * n && !intersection_feasible(p, w, t1, t2) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == k {
                return true;
            }
            digits[i] += 1;
            if digits[i] < 3 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

struct Problem<'a> {
    n: usize,
    ranks: &'a [usize],
    alphas: Vec<f64>,
    hasse: Vec<(usize, usize)>,
    /// `(element, offset)` of each free block of parameters.
    blocks: Vec<(usize, usize)>,
    nparams: usize,
}

type RMat = DMatrix<f64>;

impl<'a> Problem<'a> {
    fn new(p: &Poset, alphas: Vec<f64>, n: usize, ranks: &'a [usize]) -> Self {
        let mut blocks = Vec::new();
        let mut off = 0;
        for (g, &r) in ranks.iter().enumerate() {
            if r > 0 && r < n {
                blocks.push((g, off));
                off += n * r;
            }
        }
        Problem { n, ranks, alphas, hasse: p.hasse(), blocks, nparams: off }
    }

    fn rows(&self) -> usize {
        self.n * (self.n + 1) / 2 + self.hasse.len() * self.n * self.n
    }

    /// Projection and, for free elements, `M Yᵀ` with `M = (YᵀY)⁻¹`.
    fn projections(&self, theta: &[f64]) -> Option<Vec<(RMat, Option<RMat>)>> {
        let n = self.n;
        let mut out = Vec::with_capacity(self.ranks.len());
        for (g, &r) in self.ranks.iter().enumerate() {
            if r == 0 {
                out.push((RMat::zeros(n, n), None));
            } else if r == n {
                out.push((RMat::identity(n, n), None));
            } else {
                let off = self.blocks.iter().find(|b| b.0 == g).unwrap().1;
                let y = RMat::from_column_slice(n, r, &theta[off..off + n * r]);
                let gram = y.transpose() * &y;
                let m = Cholesky::new(gram)?.inverse();
                let b = m * y.transpose();
                let mut pm = &y * &b;
                pm = (&pm + pm.transpose()) * 0.5;
                out.push((pm, Some(b)));
            }
        }
        Some(out)
    }

    fn residual(&self, ps: &[(RMat, Option<RMat>)]) -> DVector<f64> {
        let n = self.n;
        let mut r = DVector::zeros(self.rows());
        let mut s = RMat::zeros(n, n);
        for (a, (pm, _)) in self.alphas.iter().zip(ps) {
            s += pm * *a;
        }
        let mut row = 0;
        for i in 0..n {
            for j in i..n {
                r[row] = s[(i, j)] - if i == j { 1.0 } else { 0.0 };
                row += 1;
            }
        }
        let id = RMat::identity(n, n);
        for &(g, h) in &self.hasse {
            let m = (&id - &ps[h].0) * &ps[g].0;
            for i in 0..n {
                for j in 0..n {
                    r[row] = m[(i, j)];
                    row += 1;
                }
            }
        }
        r
    }

    fn jacobian(&self, ps: &[(RMat, Option<RMat>)]) -> RMat {
        let n = self.n;
        let mut jac = RMat::zeros(self.rows(), self.nparams);
        let id = RMat::identity(n, n);
        let tri = n * (n + 1) / 2;
        for &(g, off) in &self.blocks {
            let r = self.ranks[g];
            let (pm, b) = (&ps[g].0, ps[g].1.as_ref().unwrap());
            let ip = &id - pm;
            for col in 0..r {
                for i in 0..n {
                    let a = ip.column(i);
                    let bv = b.row(col).transpose();
                    let dp = a * bv.transpose() + &bv * a.transpose();
                    let k = off + col * n + i;
                    let mut row = 0;
                    for u in 0..n {
                        for v in u..n {
                            jac[(row, k)] = self.alphas[g] * dp[(u, v)];
                            row += 1;
                        }
                    }
                    for (e, &(lo, hi)) in self.hasse.iter().enumerate() {
                        let d = if lo == g {
                            (&id - &ps[hi].0) * &dp
                        } else if hi == g {
                            -(&dp * &ps[lo].0)
                        } else {
                            continue;
                        };
                        let base = tri + e * n * n;
                        for u in 0..n {
                            for v in 0..n {
                                jac[(base + u * n + v, k)] = d[(u, v)];
                            }
                        }
                    }
                }
            }
        }
        jac
    }
}

/// Top-`r` eigenvectors of a symmetric matrix as an `n × r` block.
fn top_eigvecs(m: &RMat, r: usize) -> RMat {
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut idx: Vec<usize> = (0..m.nrows()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    RMat::from_fn(m.nrows(), r, |i, k| eig.eigenvectors[(i, idx[k])])
}

fn warm_start(prob: &Problem, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = prob.n;
    let mut theta: Vec<f64> = (0..prob.nparams).map(|_| StandardNormal.sample(rng)).collect();
    let norm2: f64 = prob.alphas.iter().map(|a| a * a).sum();
    for _ in 0..8 {
        let Some(ps) = prob.projections(&theta) else { break };
        let mut s = RMat::zeros(n, n);
        for (a, (pm, _)) in prob.alphas.iter().zip(&ps) {
            s += pm * *a;
        }
        let e = s - RMat::identity(n, n);
        for &(g, off) in &prob.blocks {
            let target = &ps[g].0 - &e * (prob.alphas[g] / norm2);
            let y = top_eigvecs(&target, prob.ranks[g]);
            theta[off..off + y.len()].copy_from_slice(y.as_slice());
        }
    }
    theta
}

fn levenberg_marquardt(prob: &Problem, mut theta: Vec<f64>, max_iter: usize) -> Option<Vec<f64>> {
    let target = 1e-28;
    let mut ps = prob.projections(&theta)?;
    let mut r = prob.residual(&ps);
    let mut cost = r.norm_squared();
    let mut damping = 1e-3;
    let mut checkpoint = cost;
    for it in 0..max_iter {
        if cost <= target {
            return Some(theta);
        }
        if prob.nparams == 0 {
            return None;
        }
        let jac = prob.jacobian(&ps);
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * &r;
        let mut improved = false;
        while damping < 1e12 {
            let mut a = jtj.clone();
            for i in 0..a.nrows() {
                a[(i, i)] += damping * (1.0 + jtj[(i, i)]);
            }
            let Some(ch) = Cholesky::new(a) else {
                damping *= 10.0;
                continue;
            };
            let step = ch.solve(&(-&g));
            let cand: Vec<f64> = theta.iter().zip(step.iter()).map(|(t, s)| t + s).collect();
            if let Some(cps) = prob.projections(&cand) {
                let cr = prob.residual(&cps);
                let ccost = cr.norm_squared();
                if ccost < cost {
                    theta = cand;
                    ps = cps;
                    r = cr;
                    cost = ccost;
                    damping = (damping / 3.0).max(1e-15);
                    improved = true;
                    break;
                }
            }
            damping *= 4.0;
        }
        if !improved {
            return (cost <= 1e-24).then_some(theta);
        }
        // stagnation: little progress over a window while far from zero
        if it % 50 == 49 {
            if cost > 1e-12 && cost > 0.5 * checkpoint {
                return None;
            }
            checkpoint = cost;
        }
    }
    (cost <= 1e-24).then_some(theta)
}

fn restart_seed(seed: u64, profile: usize, restart: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (profile as u64).wrapping_mul(0xD1B5_4A32_D192_ED03)
        ^ (restart as u64).wrapping_mul(0x94D0_49BB_1331_11EB)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleFind {
    pub family: ProjectionFamily,
    pub profile: Vec<usize>,
    pub restart: usize,
    pub commutant_dim: usize,
}

fn profiles_for(p: &Poset, chi: &Character, cfg: &SearchConfig) -> Result<Vec<Vec<usize>>> {
    match &cfg.rank_profile {
        Some(map) => Ok(vec![p.elements().iter().map(|e| map.get(e).copied().unwrap_or(0)).collect()]),
        None => rank_profiles(p, chi, cfg.dimension),
    }
}

fn search(p: &Poset, chi: &Character, cfg: &SearchConfig, want_irreducible: bool) -> Result<Option<OracleFind>> {
    let n = cfg.dimension;
    let alphas = chi.aligned(p)?;
    for (pi, prof) in profiles_for(p, chi, cfg)?.iter().enumerate() {
        let prob = Problem::new(p, alphas.clone(), n, prof);
        let restarts = if prob.nparams == 0 { 1 } else { cfg.restarts };
        for rs in 0..restarts {
            let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(cfg.seed, pi, rs));
            let theta0 = warm_start(&prob, &mut rng);
            let Some(theta) = levenberg_marquardt(&prob, theta0, cfg.max_iterations) else { continue };
            let Some(ps) = prob.projections(&theta) else { continue };
            let mats: Vec<CMat> = ps.iter().map(|(m, _)| m.map(c)).collect();
            let fam = ProjectionFamily::new(p.clone(), chi.clone(), mats)?;
            if !check_all(&fam, cfg.tol)?.passed {
                continue;
            }
            let cd = commutant_dim(&fam);
            if !want_irreducible || cd == 1 {
                return Ok(Some(OracleFind { family: fam, profile: prof.clone(), restart: rs, commutant_dim: cd }));
            }
        }
    }
    Ok(None)
}

/// First family passing verification, over all admissible rank profiles.
pub fn search_numeric(p: &Poset, chi: &Character, cfg: &SearchConfig) -> Result<Option<ProjectionFamily>> {
    Ok(search(p, chi, cfg, false)?.map(|f| f.family))
}

/// Like [`search_numeric`] but keeps going until an irreducible family turns up.
pub fn search_irreducible(p: &Poset, chi: &Character, cfg: &SearchConfig) -> Result<Option<OracleFind>> {
    search(p, chi, cfg, true)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossRow {
    pub dimension: usize,
    /// Irreducibles predicted by the chain construction at this dimension.
    pub theory: usize,
    pub oracle_found: bool,
    pub profiles: usize,
    pub oracle_first_spectrum: Option<Vec<f64>>,
    /// Whether the oracle's first-part spectrum equals that of some predicted family.
    pub spectrum_matched: Option<bool>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub config: SearchConfig,
    pub rows: Vec<CrossRow>,
}

impl CrossValidation {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "seed {}  restarts {}  max_iterations {}  tol {:e}\n",
            self.config.seed, self.config.restarts, self.config.max_iterations, self.config.tol
        );
        s.push_str("dim  theory  oracle     profiles  spectrum  agree\n");
        for r in &self.rows {
            let spec = match r.spectrum_matched {
                Some(true) => "match",
                Some(false) => "differs",
                None => "-",
            };
            s.push_str(&format!(
                "{:<4} {:<7} {:<10} {:<9} {:<9} {}\n",
                r.dimension,
                r.theory,
                if r.oracle_found { "found" } else { "none" },
                r.profiles,
                spec,
                if r.agree { "yes" } else { "NO" }
            ));
        }
        s
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

/// Compares the chain construction with the numerical search dimension by
/// dimension; absence of an oracle find is evidence, not proof.
pub fn cross_validate(
    split: &Split,
    chi: &Character,
    dims: RangeInclusive<usize>,
    cfg: &SearchConfig,
) -> Result<CrossValidation> {
    let theory = match solve(split, chi, &SolveOptions::default()) {
        Ok(sol) => sol.families.into_iter().filter(|f| commutant_dim(f) == 1).collect(),
        Err(crate::error::Error::NoRepresentation(_)) => Vec::new(),
        Err(e) => return Err(e),
    };
    let spectrum = |f: &ProjectionFamily| -> Result<Vec<f64>> {
        Ok(sorted(hermitian_eigenvalues(&f.weighted_sum(split.first_names())?)))
    };
    let mut rows = Vec::new();
    for d in dims {
        let predicted: Vec<&ProjectionFamily> = theory.iter().filter(|f| f.dimension() == d).collect();
        let dcfg = SearchConfig { dimension: d, ..cfg.clone() };
        let profiles = profiles_for(&split.poset, chi, &dcfg)?.len();
        let find = search_irreducible(&split.poset, chi, &dcfg)?;
        let (oracle_first_spectrum, spectrum_matched) = match &find {
            Some(f) => {
                let s = spectrum(&f.family)?;
                let mut matched = false;
                for t in &predicted {
                    let ts = spectrum(t)?;
                    let refl: Vec<f64> = sorted(ts.iter().map(|x| split_sigma(split, chi).map_or(*x, |sg| sg - x)).collect());
                    let close = |a: &[f64]| a.iter().zip(&s).all(|(x, y)| (x - y).abs() < 1e-6);
                    matched |= close(&ts) || close(&refl);
                }
                (Some(s), Some(matched))
            }
            None => (None, None),
        };
        let agree = (predicted.is_empty() != find.is_some()) && spectrum_matched != Some(false);
        rows.push(CrossRow {
            dimension: d,
            theory: predicted.len(),
            oracle_found: find.is_some(),
            profiles,
            oracle_first_spectrum,
            spectrum_matched,
            agree,
        });
    }
    Ok(CrossValidation { config: cfg.clone(), rows })
}

fn split_sigma(split: &Split, chi: &Character) -> Option<f64> {
    let c1 = chi.restrict(split.first_names()).ok()?;
    crate::spectrum::delta_of(&split.first, &c1).ok().map(|d| d.sigma)
}
