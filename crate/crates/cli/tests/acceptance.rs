//! Acceptance criteria. Every criterion runs and prints one PASS/FAIL line;
//! the process exits nonzero if any of them failed.

use std::process::Command;
use std::time::{Duration, Instant};

use hexbubble::embedded::{max_inner_width, minimize_rho1, rho1, rho2_minimum, EmbeddedFamily};
use hexbubble::hexnorm::{
    circumscribing_hexagon, double_bubble_perimeter, geodesic_path, hex_norm, polygon_area, polyline_length,
    PlanePoint, PolyChain,
};
use hexbubble::kissing::{
    build_degree8, equal_perimeters, kissing_minimum, kissing_perimeter, p3, p3_minimizer, poly_real_roots,
    unequal_candidates, KissingFamily,
};
use hexbubble::oracle::{grid_refine_min, perturb_local_min, BoxSpec, Lcg, ParametricFamily};
use hexbubble::singlebubble::{
    fixed_side_objective, isoperimetric_optimum, p2_domain_start, perimeter_p1, perimeter_p2, regular_hexagon,
    side_lengths, solve_fixed_side,
};
use hexbubble::solver::{figure_geometry, perimeter_gap};
use hexbubble::{find_alpha0, solve, Configuration};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn quartic_root3() -> f64 {
    3f64.powf(0.25)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn phase_transition() -> Outcome {
    let start = Instant::now();
    let a0 = find_alpha0().map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let gap = perimeter_gap(a0).map_err(|e| e.to_string())?;
    check((0.147..=0.157).contains(&a0), || format!("alpha0 = {a0} outside [0.147, 0.157]"))?;
    check(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    check(gap.abs() <= 1e-8, || format!("perimeters differ by {gap:e} at alpha0 = {a0}"))?;
    Ok(format!("alpha0 = {a0:.9}, gap {gap:.1e}, {took:.0?}"))
}

fn isoperimetric_constant() -> Outcome {
    let (_, p) = isoperimetric_optimum(1.0).map_err(|e| e.to_string())?;
    let want = 2.0 * 2f64.sqrt() * quartic_root3();
    check((p - want).abs() <= 1e-12, || format!("perimeter {p} vs {want}"))?;
    let sides = side_lengths(&regular_hexagon(1.0).map_err(|e| e.to_string())?);
    check(sides.len() == 6, || format!("{} sides", sides.len()))?;
    let spread = sides.iter().map(|s| (s - sides[0]).abs()).fold(0.0, f64::max);
    check(spread <= 1e-12, || format!("side lengths {sides:?}"))?;
    Ok(format!("perimeter {p:.15}, side spread {spread:.1e}"))
}

fn small_alpha_kissing() -> Outcome {
    let mut rng = Lcg::new(101);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let alpha = rng.uniform(0.0, 0.125).max(1e-9);
        let got = kissing_minimum(alpha).map_err(|e| e.to_string())?.perimeter;
        let want = 2.0 * quartic_root3() * (2f64.sqrt() + alpha.sqrt());
        worst = worst.max((got - want).abs());
        check((got - want).abs() <= 1e-12, || format!("alpha {alpha}: {got} vs {want}"))?;
    }
    // at 1/8 the unequal-base branch collapses to L₁ = L₂ = √(2√3)/3
    let rows = unequal_candidates(0.125).map_err(|e| e.to_string())?;
    let row2 = rows.iter().find(|r| r.row == 2).unwrap();
    let (l, p) = p3_minimizer(0.125).map_err(|e| e.to_string())?;
    let collapse = (2.0 * 3f64.sqrt()).sqrt() / 3.0;
    let diff = (row2.perimeter - p).abs();
    check(diff <= 1e-10, || format!("branches at 1/8: {} vs {p}", row2.perimeter))?;
    check((l - collapse).abs() <= 1e-10 && (row2.l1 - collapse).abs() <= 1e-10, || {
        format!("collapse point: L* = {l}, row 2 L1 = {}", row2.l1)
    })?;
    Ok(format!("max error {worst:.1e}, branches at 1/8 differ by {diff:.1e}"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = Lcg::new(202);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let l = rng.uniform(0.3, 2.5);
        let v = rng.uniform(0.2, 1.5);
        // the bubble contains the triangle on its base: x₁ + x₂ ≤ 4V/(√3 L)
        let hi = (2.0 * (l + 2.0 * v.sqrt())).min(4.0 * v / (3f64.sqrt() * l) * (1.0 + 1e-9));
        let b = BoxSpec::plain(vec![0.0, 0.0], vec![hi, hi]).unwrap();
        let (_, found) =
            grid_refine_min(|p| fixed_side_objective(p[0], p[1], l, v).unwrap_or(f64::INFINITY), &b, 200, 45)
                .map_err(|e| format!("fixed side L {l} V {v}: {e}"))?;
        let closed = solve_fixed_side(l, v).map_err(|e| e.to_string())?.perimeter;
        worst = worst.max((found - closed).abs());
        check((found - closed).abs() <= 1e-5, || format!("fixed side L {l} V {v}: oracle {found} closed {closed}"))?;
    }
    for _ in 0..20 {
        let alpha = rng.uniform(1e-3, 1.0);
        let b = BoxSpec::plain(vec![0.05, 0.05], vec![3.0, 3.0]).unwrap();
        let (_, found) =
            grid_refine_min(|p| kissing_perimeter(p[0], p[1], alpha).unwrap_or(f64::INFINITY), &b, 120, 45)
                .map_err(|e| format!("kissing alpha {alpha}: {e}"))?;
        let closed = kissing_minimum(alpha).map_err(|e| e.to_string())?.perimeter;
        worst = worst.max((found - closed).abs());
        check((found - closed).abs() <= 1e-5, || format!("kissing alpha {alpha}: oracle {found} closed {closed}"))?;

        let w = max_inner_width(alpha);
        let b = BoxSpec::new(vec![1e-3, 1e-3], vec![w, 4.0], |p: &[f64]| p[1] >= p[0], &[w, 4.0]).unwrap();
        let (_, found) = grid_refine_min(|p| rho1(p[0], p[1], alpha).unwrap_or(f64::INFINITY), &b, 64, 48)
            .map_err(|e| format!("embedded alpha {alpha}: {e}"))?;
        let (_, _, closed) = minimize_rho1(alpha).map_err(|e| e.to_string())?;
        worst = worst.max((found - closed).abs());
        check((found - closed).abs() <= 1e-5, || format!("embedded alpha {alpha}: oracle {found} closed {closed}"))?;
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!("60 minimizations, max gap {worst:.1e}, {took:.1?}"))
}

fn degree8_consistency() -> Outcome {
    let mut rng = Lcg::new(303);
    let mut worst_root = 0.0f64;
    for _ in 0..20 {
        let alpha = rng.uniform(1e-3, 1.0);
        let (l, _) = p3_minimizer(alpha).map_err(|e| e.to_string())?;
        let poly = build_degree8(alpha).map_err(|e| e.to_string())?;
        let residual = poly.eval(l).abs();
        check(residual <= 1e-6 * poly.max_abs_coeff(), || format!("alpha {alpha}: |p(L*)| = {residual:e}"))?;
        let nearest = poly_real_roots(&poly)
            .into_iter()
            .filter(|&r| r > 0.0)
            .map(|r| (r - l).abs())
            .fold(f64::INFINITY, f64::min);
        worst_root = worst_root.max(nearest);
        check(nearest <= 1e-8, || format!("alpha {alpha}: nearest positive root {nearest:e} from L* = {l}"))?;
    }
    Ok(format!("nearest root within {worst_root:.1e}"))
}

fn dominance() -> Outcome {
    let mut rng = Lcg::new(404);
    let slack = 1e-12;

    let mut n = 0;
    while n < 1000 {
        let alpha = rng.uniform(1e-3, 1.0);
        let l = rng.uniform(0.05, 4.0);
        let e = equal_perimeters(l, alpha).map_err(|e| e.to_string())?;
        let p = p3(l, alpha);
        if e.p4.is_none() && e.p5.is_none() && e.p6.is_none() {
            continue;
        }
        for (name, q) in [("P4", e.p4), ("P5", e.p5), ("P6", e.p6)] {
            if let Some(q) = q {
                check(p <= q + slack, || format!("alpha {alpha} L {l}: P3 {p} > {name} {q}"))?;
            }
        }
        n += 1;
    }

    for _ in 0..1000 {
        let v = rng.uniform(0.01, 2.0);
        let start = p2_domain_start(v);
        let l = rng.uniform(start, 4.0 * start);
        let p1 = perimeter_p1(l, v).map_err(|e| e.to_string())?;
        let p2 = perimeter_p2(l, v).map_err(|e| e.to_string())?;
        check(p2 > p1 - slack, || format!("V {v} L {l}: P2 {p2} < P1 {p1}"))?;
    }

    for _ in 0..1000 {
        let alpha = rng.uniform(1e-3, 1.0);
        let (_, _, first) = minimize_rho1(alpha).map_err(|e| e.to_string())?;
        let (_, _, second) = rho2_minimum(alpha).map_err(|e| e.to_string())?;
        check(first <= second + slack, || format!("alpha {alpha}: rho1 min {first} > rho2 min {second}"))?;
    }
    Ok("3 x 1000 samples, no violations".into())
}

fn family(c: &Configuration) -> Box<dyn ParametricFamily> {
    match c {
        Configuration::Embedded(s) => Box::new(EmbeddedFamily::around(s)),
        Configuration::Kissing(s) => Box::new(KissingFamily::around(s)),
    }
}

fn geometry_round_trip() -> Outcome {
    let mut rng = Lcg::new(505);
    let (mut worst, mut evaluated) = (0.0f64, 0);
    for _ in 0..50 {
        let alpha = rng.uniform(1e-3, 1.0);
        let r = solve(alpha).map_err(|e| e.to_string())?;
        for c in &r.solutions {
            let (a, b) = figure_geometry(c);
            let va = polygon_area(&a).map_err(|e| e.to_string())?;
            let vb = polygon_area(&b).map_err(|e| e.to_string())?;
            let rho = double_bubble_perimeter(&a, &b).map_err(|e| e.to_string())?.total;
            worst = worst.max((va - 1.0).abs()).max((vb - alpha).abs()).max((rho - c.perimeter()).abs());
            check((va - 1.0).abs() <= 1e-9 && (vb - alpha).abs() <= 1e-9, || {
                format!("alpha {alpha} {}: volumes {va}, {vb}", c.case())
            })?;
            check((rho - c.perimeter()).abs() <= 1e-9, || {
                format!("alpha {alpha} {}: measured {rho} analytic {}", c.case(), c.perimeter())
            })?;
            let rep = perturb_local_min(family(c).as_ref(), 500, 1e-3, rng.next_u64()).map_err(|e| e.to_string())?;
            evaluated += rep.evaluated();
            check(rep.is_local_min(), || {
                format!("alpha {alpha} {}: {} of 500 perturbations decrease, worst {:e}", c.case(), rep.decreased, rep.worst_change)
            })?;
        }
    }
    Ok(format!("max error {worst:.1e}, {evaluated} feasible perturbations, none lower"))
}

fn random_convex_polygon(rng: &mut Lcg) -> PolyChain {
    loop {
        // hull of random points on a circle, stretched and sheared
        let k = 3 + (rng.next_u64() % 12) as usize;
        let mut t: Vec<f64> = (0..k).map(|_| rng.uniform(0.0, std::f64::consts::TAU)).collect();
        t.sort_by(f64::total_cmp);
        let (sx, sy, sh) = (rng.uniform(0.1, 4.0), rng.uniform(0.1, 4.0), rng.uniform(-1.0, 1.0));
        let c = PlanePoint::new(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
        let pts: Vec<PlanePoint> =
            t.iter().map(|&a| c + PlanePoint::new(sx * a.cos() + sh * sy * a.sin(), sy * a.sin())).collect();
        if let Ok(p) = PolyChain::closed(pts) {
            if p.signed_area().abs() > 1e-6 {
                return p;
            }
        }
    }
}

fn metric_core() -> Outcome {
    let mut rng = Lcg::new(606);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let p = PlanePoint::new(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
        let q = PlanePoint::new(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
        let path = polyline_length(&geodesic_path(p, q));
        let d = hex_norm(q - p);
        worst = worst.max((path - d).abs());
        check((path - d).abs() <= 1e-12, || format!("{p:?} -> {q:?}: path {path} distance {d}"))?;
    }
    let mut tightest = f64::INFINITY;
    for _ in 0..1000 {
        let poly = random_convex_polygon(&mut rng);
        let h = circumscribing_hexagon(&poly).map_err(|e| e.to_string())?;
        let (hp, pp) = (h.perimeter(), polyline_length(&poly));
        tightest = tightest.min(pp - hp);
        check(hp <= pp + 1e-12 * pp, || format!("{} vertices: hexagon {hp} > polygon {pp}", poly.len()))?;
    }
    Ok(format!("geodesic error {worst:.1e}, min polygon - hexagon perimeter {tightest:.1e}"))
}

fn run_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hexbubble"))
        .args(args)
        .env_remove("HEXBUBBLE_SEED")
        .output()
        .expect("binary runs")
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut sweeps = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let path = dir.path().join(name);
        let o = run_bin(&["sweep", "--from", "0.01", "--to", "1", "--steps", "100", "--out", path.to_str().unwrap()]);
        check(o.status.success(), || format!("sweep exit {:?}", o.status.code()))?;
        sweeps.push(std::fs::read(path).map_err(|e| e.to_string())?);
    }
    check(sweeps[0] == sweeps[1], || "sweep outputs differ".into())?;
    let reports: Vec<_> = (0..2).map(|_| run_bin(&["verify", "--suite", "quick", "--seed", "2024"])).collect();
    check(reports.iter().all(|o| o.status.success()), || "verify failed".into())?;
    check(reports[0].stdout == reports[1].stdout, || "verify reports differ".into())?;
    Ok(format!("sweep {} bytes and verify report {} bytes identical", sweeps[0].len(), reports[0].stdout.len()))
}

fn main() -> std::process::ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 phase transition", phase_transition),
        ("2 isoperimetric constant", isoperimetric_constant),
        ("3 small-alpha kissing closed form", small_alpha_kissing),
        ("4 oracle equivalence", oracle_equivalence),
        ("5 degree-8 polynomial consistency", degree8_consistency),
        ("6 dominance inequalities", dominance),
        ("7 geometry round trip", geometry_round_trip),
        ("8 metric core", metric_core),
        ("9 determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                println!("FAIL criterion {name}: {msg}");
                failed.push(name);
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed.len());
    if failed.is_empty() {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
