//! Brute-force minimization used to cross-check the closed forms, and random
//! perturbation probes of emitted configurations.
//!
//! Nothing here knows about bubbles: [`grid_refine_min`] minimizes any
//! function over a box, and [`perturb_local_min`] only needs a way to turn a
//! parameter vector into a pair of polygons.

use alloc::vec;
use alloc::vec::Vec;

use crate::hexnorm::{double_bubble_perimeter, PolyChain};
use crate::math;
use crate::{Error, Result};

/// A box with a feasibility predicate.
pub struct BoxSpec<F> {
    lower: Vec<f64>,
    upper: Vec<f64>,
    feasible: F,
}

impl<F: Fn(&[f64]) -> bool> BoxSpec<F> {
    /// `witness` must be a feasible point inside the bounds.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, feasible: F, witness: &[f64]) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() || witness.len() != lower.len() {
            return Err(Error::Domain("box dimensions disagree"));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !l.is_finite() || !u.is_finite() || l > u) {
            return Err(Error::Domain("box bounds must be finite and ordered"));
        }
        let b = BoxSpec { lower, upper, feasible };
        if !b.admits(witness) {
            return Err(Error::NoFeasiblePoint);
        }
        Ok(b)
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn admits(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(x, (l, u))| x >= l && x <= u)
            && (self.feasible)(p)
    }
}

impl BoxSpec<fn(&[f64]) -> bool> {
    /// A plain box; the lower corner serves as witness.
    pub fn plain(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let w = lower.clone();
        BoxSpec::new(lower, upper, (|_| true) as fn(&[f64]) -> bool, &w)
    }
}

/// Minimizes `objective` over the box: a `grid`-per-axis scan, then pattern
/// search from the best grid point. Each of the `refine_iters` rounds moves
/// along axis and diagonal directions while that improves, then halves the
/// step. Non-finite objective values count as infeasible.
pub fn grid_refine_min<O, F>(objective: O, b: &BoxSpec<F>, grid: usize, refine_iters: usize) -> Result<(Vec<f64>, f64)>
where
    O: Fn(&[f64]) -> f64,
    F: Fn(&[f64]) -> bool,
{
    if grid < 16 {
        return Err(Error::Domain("grid needs at least 16 points per axis"));
    }
    let n = b.dimension();
    let eval = |p: &[f64]| -> f64 {
        if !b.admits(p) {
            return f64::INFINITY;
        }
        let v = objective(p);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    let mut step: Vec<f64> = (0..n).map(|i| (b.upper[i] - b.lower[i]) / (grid - 1) as f64).collect();
    let mut best = vec![0.0; n];
    let mut best_val = f64::INFINITY;
    let mut idx = vec![0usize; n];
    let mut p = vec![0.0; n];
    'scan: loop {
        for i in 0..n {
            p[i] = b.lower[i] + step[i] * idx[i] as f64;
        }
        let v = eval(&p);
        if v < best_val {
            best_val = v;
            best.copy_from_slice(&p);
        }
        for i in 0..n {
            idx[i] += 1;
            if idx[i] < grid {
                continue 'scan;
            }
            idx[i] = 0;
        }
        break;
    }
    if !best_val.is_finite() {
        return Err(Error::NoFeasiblePoint);
    }

    let directions = pattern_directions(n);
    let mut trial = vec![0.0; n];
    for _ in 0..refine_iters {
        for _ in 0..100_000 {
            let mut improved = None;
            for d in &directions {
                for i in 0..n {
                    trial[i] = (best[i] + d[i] * step[i]).clamp(b.lower[i], b.upper[i]);
                }
                let v = eval(&trial);
                if v < best_val && improved.as_ref().is_none_or(|(w, _)| v < *w) {
                    improved = Some((v, trial.clone()));
                }
            }
            match improved {
                Some((v, q)) => {
                    best_val = v;
                    best = q;
                }
                None => break,
            }
        }
        for s in &mut step {
            *s *= 0.5;
        }
    }
    Ok((best, best_val))
}

fn pattern_directions(n: usize) -> Vec<Vec<f64>> {
    let mut dirs = Vec::new();
    for i in 0..n {
        for s in [1.0, -1.0] {
            let mut d = vec![0.0; n];
            d[i] = s;
            dirs.push(d);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut d = vec![0.0; n];
                d[i] = si;
                d[j] = sj;
                dirs.push(d);
            }
        }
    }
    dirs
}

/// 64-bit linear congruential generator,
/// `state ← state·6364136223846793005 + 1442695040888963407 (mod 2⁶⁴)`.
/// Uniform doubles take the top 53 bits of the new state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Configurations described by a parameter vector. `realize` must return
/// polygons with the intended volumes (restoring them from the free
/// parameters) or an error when the parameters are infeasible.
pub trait ParametricFamily {
    fn base_parameters(&self) -> Vec<f64>;
    fn realize(&self, params: &[f64]) -> Result<(PolyChain, PolyChain)>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationReport {
    pub base_perimeter: f64,
    pub trials: usize,
    /// Trials whose parameters were infeasible.
    pub skipped: usize,
    /// Trials that lowered the perimeter by more than the threshold.
    pub decreased: usize,
    /// Smallest observed `ρ_DB(perturbed) − ρ_DB(base)`.
    pub worst_change: f64,
}

impl PerturbationReport {
    pub fn is_local_min(&self) -> bool {
        self.decreased == 0
    }

    pub fn evaluated(&self) -> usize {
        self.trials - self.skipped
    }
}

/// A drop smaller than this is treated as round-off.
pub const DECREASE_THRESHOLD: f64 = 1e-10;

/// Moves the base parameters of `family` by random vectors of Euclidean
/// length `eps` and reports whether any feasible move lowers `ρ_DB`.
pub fn perturb_local_min<P: ParametricFamily + ?Sized>(
    family: &P,
    trials: usize,
    eps: f64,
    seed: u64,
) -> Result<PerturbationReport> {
    if !(eps > 0.0 && eps <= 1e-2) {
        return Err(Error::Domain("perturbation size must lie in (0, 1e-2]"));
    }
    let base = family.base_parameters();
    let (a, b) = family.realize(&base)?;
    let base_perimeter = double_bubble_perimeter(&a, &b)?.total;
    let mut rng = Lcg::new(seed);
    let mut report = PerturbationReport {
        base_perimeter,
        trials,
        skipped: 0,
        decreased: 0,
        worst_change: f64::INFINITY,
    };
    let mut params = base.clone();
    for _ in 0..trials {
        let dir: Vec<f64> = base.iter().map(|_| rng.uniform(-1.0, 1.0)).collect();
        let norm = math::sqrt(dir.iter().map(|d| d * d).sum());
        if norm == 0.0 {
            report.skipped += 1;
            continue;
        }
        for ((p, b0), d) in params.iter_mut().zip(&base).zip(&dir) {
            *p = b0 + eps * d / norm;
        }
        let measured = family
            .realize(&params)
            .and_then(|(a, b)| double_bubble_perimeter(&a, &b));
        match measured {
            Ok(m) => {
                let change = m.total - base_perimeter;
                report.worst_change = report.worst_change.min(change);
                if change < -DECREASE_THRESHOLD {
                    report.decreased += 1;
                }
            }
            Err(_) => report.skipped += 1,
        }
    }
    Ok(report)
}
