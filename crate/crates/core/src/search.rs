//! One-dimensional searches shared by the solver modules.

use alloc::vec::Vec;

use crate::{Error, Result};

/// 1/φ
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Root of `f` inside `[lo, hi]` by bisection, assuming `f(lo)` and `f(hi)`
/// have opposite signs. Stops once the bracket is narrower than `tol`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if (f_lo < 0.0) == (f_hi < 0.0) || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NoSignChange);
    }
    // 200 halvings exhaust f64 resolution on any finite bracket.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
/// Returns `(argmin, min)`.
///
/// Comparing values alone cannot place a smooth minimum closer than about
/// `√ε` relative, so the result is polished by one parabolic step through
/// three nearby points.
pub fn golden_section<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let (lo0, hi0) = (lo, hi);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..400 {
        if hi - lo <= tol {
            break;
        }
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let (mut best_x, mut best_f) = if fc <= fd { (c, fc) } else { (d, fd) };
    for x in [lo, hi, 0.5 * (lo + hi)] {
        let fx = f(x);
        if fx < best_f {
            best_x = x;
            best_f = fx;
        }
    }
    let h = 1e-5 * (1.0 + best_x.abs()).min(hi0 - lo0);
    if best_x - h >= lo0 && best_x + h <= hi0 && h > 0.0 {
        let (fl, fr) = (f(best_x - h), f(best_x + h));
        let curv = fl - 2.0 * best_f + fr;
        if curv > 0.0 && curv.is_finite() {
            let x = best_x + 0.5 * h * (fl - fr) / curv;
            if (x - best_x).abs() <= h {
                let fx = f(x);
                if fx <= best_f + 4.0 * f64::EPSILON * (1.0 + best_f.abs()) {
                    return (x, fx);
                }
            }
        }
    }
    (best_x, best_f)
}

/// Global minimum of `f` over `[lo, hi]`: evaluate on `samples + 1` evenly
/// spaced points, refine every discrete local minimum (endpoints included) by
/// golden section and keep the best. Non-finite values count as `+inf`.
pub fn scan_minimize<F>(mut f: F, lo: f64, hi: f64, samples: usize, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let n = samples.max(2);
    let step = (hi - lo) / n as f64;
    let xs: Vec<f64> = (0..=n).map(|i| if i == n { hi } else { lo + step * i as f64 }).collect();
    let ys: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let y = f(x);
            if y.is_finite() {
                y
            } else {
                f64::INFINITY
            }
        })
        .collect();

    let mut best = (xs[0], ys[0]);
    for i in 0..=n {
        let left = if i == 0 { f64::INFINITY } else { ys[i - 1] };
        let right = if i == n { f64::INFINITY } else { ys[i + 1] };
        if !(ys[i] <= left && ys[i] <= right) || !ys[i].is_finite() {
            continue;
        }
        let a = xs[i.saturating_sub(1)];
        let b = xs[(i + 1).min(n)];
        let (x, y) = golden_section(
            |t| {
                let v = f(t);
                if v.is_finite() {
                    v
                } else {
                    f64::INFINITY
                }
            },
            a,
            b,
            tol,
        );
        let (x, y) = if ys[i] < y { (xs[i], ys[i]) } else { (x, y) };
        if y < best.1 {
            best = (x, y);
        }
    }
    best
}
