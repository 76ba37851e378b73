//! Self-test suite: closed forms against brute force, inequalities between
//! candidate branches, geometry round trips and the metric core.

use std::fmt;

use hexbubble::embedded::{max_inner_width, minimize_rho1, rho1, rho2_minimum, EmbeddedFamily};
use hexbubble::hexnorm::{
    circumscribing_hexagon, double_bubble_perimeter, geodesic_path, hex_norm, polygon_area, polyline_length,
    PlanePoint, PolyChain,
};
use hexbubble::kissing::{
    build_degree8, equal_perimeters, kissing_minimum, kissing_perimeter, p3, p3_minimizer, poly_real_roots,
    small_alpha_closed_form, unequal_candidates, KissingFamily, UNEQUAL_THRESHOLD,
};
use hexbubble::oracle::{grid_refine_min, perturb_local_min, BoxSpec, Lcg, ParametricFamily};
use hexbubble::singlebubble::{
    fixed_side_objective, isoperimetric_optimum, p2_domain_start, perimeter_p1, perimeter_p2, regular_hexagon,
    side_lengths, solve_fixed_side,
};
use hexbubble::solver::{figure_geometry, perimeter_gap};
use hexbubble::{find_alpha0, solve, Configuration};

use crate::format::sig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Quick,
    Full,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Quick => "quick",
            Suite::Full => "full",
        }
    }
}

/// Sample counts per check.
#[derive(Debug, Clone, Copy)]
struct Sizes {
    random_alpha: usize,
    oracle: usize,
    dominance: usize,
    roundtrip: usize,
    perturb_trials: usize,
    geodesic_pairs: usize,
    polygons: usize,
}

impl Suite {
    fn sizes(self) -> Sizes {
        match self {
            Suite::Quick => Sizes {
                random_alpha: 5,
                oracle: 2,
                dominance: 100,
                roundtrip: 5,
                perturb_trials: 100,
                geodesic_pairs: 1000,
                polygons: 100,
            },
            Suite::Full => Sizes {
                random_alpha: 20,
                oracle: 20,
                dominance: 1000,
                roundtrip: 50,
                perturb_trials: 500,
                geodesic_pairs: 10_000,
                polygons: 1000,
            },
        }
    }
}

/// Replaceable pieces, so a deliberately broken build can be checked to fail.
#[derive(Debug, Clone, Copy)]
pub struct Hooks {
    /// Kissing perimeter along `L₁ = L₂` with both bubbles six-sided.
    pub p3: fn(f64, f64) -> f64,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks { p3 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub samples: usize,
    pub violations: usize,
    /// Inputs and values of the first violation, or the error hit.
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.first_failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify suite={} seed={}", self.suite.as_str(), self.seed)?;
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "{tag} {:<24} samples={} violations={}", c.name, c.samples, c.violations)?;
            if let Some(msg) = &c.first_failure {
                write!(f, " first: {msg}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failed().count();
        writeln!(f, "summary: {} passed, {} failed", self.checks.len() - failed, failed)
    }
}

/// Collects violations of one check.
struct Tally {
    name: &'static str,
    samples: usize,
    violations: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, samples: 0, violations: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.violations += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    fn error(&mut self, context: String, e: hexbubble::Error) {
        self.record(false, || format!("{context}: {e}"));
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            samples: self.samples,
            violations: self.violations,
            first_failure: self.first_failure,
        }
    }
}

/// Runs every check of `suite`. Each check draws from its own generator,
/// seeded from `seed` and the check's position.
pub fn run(suite: Suite, seed: u64, hooks: &Hooks) -> Report {
    let n = suite.sizes();
    let rng = |k: u64| Lcg::new(seed.wrapping_add(k.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
    let checks = vec![
        phase_transition(),
        isoperimetric_constant(),
        small_alpha_kissing(&mut rng(1), n.random_alpha),
        oracle_fixed_side(&mut rng(2), n.oracle),
        oracle_kissing(&mut rng(3), n.oracle),
        oracle_embedded(&mut rng(4), n.oracle),
        degree8(&mut rng(5), n.random_alpha),
        p3_dominance(&mut rng(6), n.dominance, hooks),
        p2_over_p1(&mut rng(7), n.dominance),
        rho1_below_rho2(&mut rng(8), n.dominance),
        geometry_roundtrip(&mut rng(9), n.roundtrip),
        perturbation(&mut rng(10), n.roundtrip, n.perturb_trials),
        geodesics(&mut rng(11), n.geodesic_pairs),
        circumscribing(&mut rng(12), n.polygons),
    ];
    Report { suite, seed, checks }
}

fn phase_transition() -> CheckResult {
    let mut t = Tally::new("phase-transition");
    match find_alpha0().and_then(|a| Ok((a, perimeter_gap(a)?))) {
        Ok((a, gap)) => t.record((0.147..=0.157).contains(&a) && gap.abs() <= 1e-8, || {
            format!("alpha0={} gap={}", sig(a), sig(gap))
        }),
        Err(e) => t.error("find_alpha0".into(), e),
    }
    t.finish()
}

fn isoperimetric_constant() -> CheckResult {
    let mut t = Tally::new("isoperimetric-constant");
    let expected = 2.0 * 2f64.sqrt() * 3f64.powf(0.25);
    match isoperimetric_optimum(1.0).and_then(|(_, p)| Ok((p, regular_hexagon(1.0)?))) {
        Ok((p, hex)) => {
            let sides = side_lengths(&hex);
            let spread = sides.iter().fold(0.0f64, |m, s| m.max((s - sides[0]).abs()));
            t.record((p - expected).abs() <= 1e-12 && sides.len() == 6 && spread <= 1e-12, || {
                format!("perimeter={} side spread={spread:e}", sig(p))
            });
        }
        Err(e) => t.error("V=1".into(), e),
    }
    t.finish()
}

fn small_alpha_kissing(rng: &mut Lcg, n: usize) -> CheckResult {
    let mut t = Tally::new("small-alpha-kissing");
    for _ in 0..n {
        let alpha = rng.uniform(1e-6, UNEQUAL_THRESHOLD);
        match kissing_minimum(alpha) {
            Ok(s) => {
                let want = small_alpha_closed_form(alpha);
                t.record((s.perimeter - want).abs() <= 1e-12, || {
                    format!("alpha={} got={} want={}", sig(alpha), sig(s.perimeter), sig(want))
                });
            }
            Err(e) => t.error(format!("alpha={}", sig(alpha)), e),
        }
    }
    let at = UNEQUAL_THRESHOLD;
    match (unequal_candidates(at), p3_minimizer(at)) {
        (Ok(rows), Ok((_, p))) => {
            let row2 = rows[1].perimeter;
            t.record((row2 - p).abs() <= 1e-10, || format!("alpha=1/8 row2={} P3={}", sig(row2), sig(p)));
        }
        (Err(e), _) | (_, Err(e)) => t.error("alpha=1/8".into(), e),
    }
    t.finish()
}

fn oracle_fixed_side(rng: &mut Lcg, n: usize) -> CheckResult {
    let mut t = Tally::new("oracle-fixed-side");
    for _ in 0..n {
        let l = rng.uniform(0.3, 2.5);
        let v = rng.uniform(0.2, 1.5);
        // a convex bubble holds the triangle on its base, so V ≥ L·h/2 with h = (√3/2)(x₁ + x₂)
        let hi = (2.0 * (l + 2.0 * v.sqrt())).min(4.0 * v / (3f64.sqrt() * l) * (1.0 + 1e-9));
        let closed = solve_fixed_side(l, v);
        let found = BoxSpec::plain(vec![0.0, 0.0], vec![hi, hi]).and_then(|b| {
            grid_refine_min(|p| fixed_side_objective(p[0], p[1], l, v).unwrap_or(f64::INFINITY), &b, 200, 45)
        });
        match (closed, found) {
            (Ok(c), Ok((_, o))) => t.record((c.perimeter - o).abs() <= 1e-5, || {
                format!("L={} V={} closed={} oracle={}", sig(l), sig(v), sig(c.perimeter), sig(o))
            }),
            (Err(e), _) | (_, Err(e)) => t.error(format!("L={} V={}", sig(l), sig(v)), e),
        }
    }
    t.finish()
}

fn oracle_kissing(rng: &mut Lcg, n: usize) -> CheckResult {
    let mut t = Tally::new("oracle-kissing");
    for _ in 0..n {
        let alpha = rng.uniform(1e-3, 1.0);
        let closed = kissing_minimum(alpha);
        let found = BoxSpec::plain(vec![0.05, 0.05], vec![3.0, 3.0]).and_then(|b| {
            grid_refine_min(|p| kissing_perimeter(p[0], p[1], alpha).unwrap_or(f64::INFINITY), &b, 120, 45)
        });
        match (closed, found) {
            (Ok(c), Ok((_, o))) => t.record((c.perimeter - o).abs() <= 1e-5, || {
                format!("alpha={} closed={} oracle={}", sig(alpha), sig(c.perimeter), sig(o))
            }),
            (Err(e), _) | (_, Err(e)) => t.error(format!("alpha={}", sig(alpha)), e),
        }
    }
    t.finish()
}

fn oracle_embedded(rng: &mut Lcg, n: usize) -> CheckResult {
    let mut t = Tally::new("oracle-embedded");
    for _ in 0..n {
        let alpha = rng.uniform(1e-3, 1.0);
        let w = max_inner_width(alpha);
        let closed = minimize_rho1(alpha);
        let found = BoxSpec::new(vec![1e-3, 1e-3], vec![w, 4.0], |p: &[f64]| p[1] >= p[0], &[w, 4.0])
            .and_then(|b| grid_refine_min(|p| rho1(p[0], p[1], alpha).unwrap_or(f64::INFINITY), &b, 64, 48));
        match (closed, found) {
            (Ok((_, _, c)), Ok((_, o))) => t.record((c - o).abs() <= 1e-5, || {
                format!("alpha={} closed={} oracle={}", sig(alpha), sig(c), sig(o))
            }),
            (Err(e), _) | (_, Err(e)) => t.error(format!("alpha={}", sig(alpha)), e),
        }
    }
    t.finish()
}

fn degree8(rng: &mut Lcg, n: usize) -> CheckResult {
    let mut t = Tally::new("degree8-consistency");
    for _ in 0..n {
        let alpha = rng.uniform(1e-3, 1.0);
        match (p3_minimizer(alpha), build_degree8(alpha)) {
            (Ok((l, _)), Ok(poly)) => {
                let residual = poly.eval(l).abs();
                let nearest = poly_real_roots(&poly)
                    .into_iter()
                    .filter(|&r| r > 0.0)
                    .map(|r| (r - l).abs())
                    .fold(f64::INFINITY, f64::min);
                t.record(residual <= 1e-6 * poly.max_abs_coeff() && nearest <= 1e-8, || {
                    format!("alpha={} L*={} |p(L*)|={residual:e} root distance={nearest:e}", sig(alpha), sig(l))
                });
            }
            (Err(e), _) | (_, Err(e)) => t.error(format!("alpha={}", sig(alpha)), e),
        }
    }
    t.finish()
}

fn p3_dominance(rng: &mut Lcg, n: usize, hooks: &Hooks) -> CheckResult {
    let mut t = Tally::new("p3-dominance");
    while t.samples < n {
        let alpha = rng.uniform(1e-3, 1.0);
        let l = rng.uniform(0.05, 4.0);
        let Ok(e) = equal_perimeters(l, alpha) else { continue };
        let p = (hooks.p3)(l, alpha);
        let others = [("P4", e.p4), ("P5", e.p5), ("P6", e.p6)];
        let bad = others.iter().find(|(_, q)| q.is_some_and(|q| p > q + 1e-12));
        t.record(bad.is_none(), || {
            let (name, q) = bad.unwrap();
            format!("alpha={} L={} P3={} {name}={}", sig(alpha), sig(l), sig(p), sig(q.unwrap()))
        });
    }
    t.finish()
}

fn p2_over_p1(rng: &mut Lcg, n: usize) -> CheckResult {
    let mut t = Tally::new("p2-above-p1");
    for _ in 0..n {
        let v = rng.uniform(0.01, 2.0);
        let start = p2_domain_start(v);
        let l = rng.uniform(start, 4.0 * start);
        match (perimeter_p1(l, v), perimeter_p2(l, v)) {
            (Ok(a), Ok(b)) => t.record(b > a - 1e-12, || {
                format!("V={} L={} P1={} P2={}", sig(v), sig(l), sig(a), sig(b))
            }),
            (Err(e), _) | (_, Err(e)) => t.error(format!("V={} L={}", sig(v), sig(l)), e),
        }
    }
    t.finish()
}

fn rho1_below_rho2(rng: &mut Lcg, n: usize) -> CheckResult {
    let mut t = Tally::new("rho1-below-rho2");
    for _ in 0..n {
        let alpha = rng.uniform(1e-3, 1.0);
        match (minimize_rho1(alpha), rho2_minimum(alpha)) {
            (Ok((_, _, a)), Ok((_, _, b))) => t.record(a <= b + 1e-12, || {
                format!("alpha={} rho1={} rho2={}", sig(alpha), sig(a), sig(b))
            }),
            (Err(e), _) | (_, Err(e)) => t.error(format!("alpha={}", sig(alpha)), e),
        }
    }
    t.finish()
}

fn geometry_roundtrip(rng: &mut Lcg, n: usize) -> CheckResult {
    let mut t = Tally::new("geometry-roundtrip");
    for _ in 0..n {
        let alpha = rng.uniform(1e-3, 1.0);
        let r = match solve(alpha) {
            Ok(r) => r,
            Err(e) => {
                t.error(format!("alpha={}", sig(alpha)), e);
                continue;
            }
        };
        for c in &r.solutions {
            let (a, b) = figure_geometry(c);
            let measured = polygon_area(&a)
                .and_then(|va| Ok((va, polygon_area(&b)?, double_bubble_perimeter(&a, &b)?.total)));
            match measured {
                Ok((va, vb, rho)) => t.record(
                    (va - 1.0).abs() <= 1e-9 && (vb - alpha).abs() <= 1e-9 && (rho - c.perimeter()).abs() <= 1e-9,
                    || {
                        format!(
                            "alpha={} {} volumes=({}, {}) measured={} analytic={}",
                            sig(alpha),
                            c.case(),
                            sig(va),
                            sig(vb),
                            sig(rho),
                            sig(c.perimeter())
                        )
                    },
                ),
                Err(e) => t.error(format!("alpha={} {}", sig(alpha), c.case()), e),
            }
        }
    }
    t.finish()
}

/// The perturbation family around an emitted configuration.
pub fn family_of(c: &Configuration) -> Box<dyn ParametricFamily> {
    match c {
        Configuration::Embedded(s) => Box::new(EmbeddedFamily::around(s)),
        Configuration::Kissing(s) => Box::new(KissingFamily::around(s)),
    }
}

fn perturbation(rng: &mut Lcg, n: usize, trials: usize) -> CheckResult {
    let mut t = Tally::new("perturbation-local-min");
    for _ in 0..n {
        let alpha = rng.uniform(1e-3, 1.0);
        let seed = rng.next_u64();
        let r = match solve(alpha) {
            Ok(r) => r,
            Err(e) => {
                t.error(format!("alpha={}", sig(alpha)), e);
                continue;
            }
        };
        for c in &r.solutions {
            match perturb_local_min(family_of(c).as_ref(), trials, 1e-3, seed) {
                Ok(rep) => t.record(rep.is_local_min() && rep.evaluated() > 0, || {
                    format!(
                        "alpha={} {} decreased={} worst change={:e}",
                        sig(alpha),
                        c.case(),
                        rep.decreased,
                        rep.worst_change
                    )
                }),
                Err(e) => t.error(format!("alpha={} {}", sig(alpha), c.case()), e),
            }
        }
    }
    t.finish()
}

fn geodesics(rng: &mut Lcg, n: usize) -> CheckResult {
    let mut t = Tally::new("geodesic-length");
    for _ in 0..n {
        let p = PlanePoint::new(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
        let q = PlanePoint::new(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
        let along = polyline_length(&geodesic_path(p, q));
        let direct = hex_norm(q - p);
        t.record((along - direct).abs() <= 1e-12, || {
            format!("p=({}, {}) q=({}, {}) path={} distance={}", sig(p.x), sig(p.y), sig(q.x), sig(q.y), sig(along), sig(direct))
        });
    }
    t.finish()
}

/// A convex polygon: sorted random angles on a random ellipse.
pub fn random_convex_polygon(rng: &mut Lcg) -> PolyChain {
    let k = 3 + (rng.next_u64() % 10) as usize;
    let (a, b) = (rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0));
    let tilt = rng.uniform(0.0, std::f64::consts::PI);
    let center = PlanePoint::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    let mut angles: Vec<f64> = (0..k).map(|_| rng.uniform(0.0, std::f64::consts::TAU)).collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|x, y| (*x - *y).abs() < 1e-3);
    let pts = angles
        .iter()
        .map(|&th| {
            let (x, y) = (a * th.cos(), b * th.sin());
            center + PlanePoint::new(x * tilt.cos() - y * tilt.sin(), x * tilt.sin() + y * tilt.cos())
        })
        .collect();
    PolyChain::closed(pts).unwrap_or_else(|_| {
        PolyChain::closed(vec![center, center + PlanePoint::new(1.0, 0.0), center + PlanePoint::new(0.0, 1.0)])
            .expect("a right triangle is a valid polygon")
    })
}

fn circumscribing(rng: &mut Lcg, n: usize) -> CheckResult {
    let mut t = Tally::new("circumscribing-hexagon");
    for _ in 0..n {
        let c = random_convex_polygon(rng);
        let len = polyline_length(&c);
        match circumscribing_hexagon(&c) {
            Ok(h) => {
                let hp = h.perimeter();
                let holds = hp <= len + 1e-12 * (1.0 + len) && c.vertices().iter().all(|&v| h.contains(v));
                t.record(holds, || format!("vertices={} hexagon={} polygon={}", c.len(), sig(hp), sig(len)));
            }
            Err(e) => t.error(format!("vertices={}", c.len()), e),
        }
    }
    t.finish()
}

/// `P₃` with the sign of its `−3L` term flipped, for the negative control.
pub fn p3_sign_flipped(l: f64, alpha: f64) -> f64 {
    p3(l, alpha) + 6.0 * l
}
