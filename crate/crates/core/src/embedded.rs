//! A hexagon sitting in a notch cut into the side of a larger one.
//!
//! Inner bubble sides, counterclockwise from the bottom: `x₁` (0°), `x₂`
//! (60°), `x₃` (120°), `x₄` (180°), `x₅` (240°), `x₆` (300°). Its width is
//! `L₁ = x₅ + x₆ = x₂ + x₃`; the left pair `x₅, x₆` is shared with the outer
//! bubble.
//!
//! Outer bubble sides, counterclockwise from the bottom: `y₁` (0°), `y₂`
//! (60°), the notch `x₆` (120°) and `x₅` (60°), then `y₃` (120°), `y₄`
//! (180°), `y₅` (240°), `y₆` (300°). Its width is `L₂ = y₅ + y₆`. Swapping the
//! two notch edges gives a hexagon of the same perimeter whose volume is
//! larger by the parallelogram `(√3/2)·x₅·x₆`.

use alloc::vec::Vec;

use crate::hexnorm::{double_bubble_perimeter, trace_lattice, PlanePoint, PolyChain};
use crate::kissing::check_alpha;
use crate::math::{self, SQRT3};
use crate::oracle::{grid_refine_min, BoxSpec, ParametricFamily};
use crate::search::scan_minimize;
use crate::{Error, Result};

/// `α` up to which the swapped-volume reduction has its closed form.
pub const RHO2_CLOSED_FORM_LIMIT: f64 = 2.0 / 3.0;

const SIDE_SLACK: f64 = 1e-12;

/// Symmetric hexagon of width `L` and volume `V` with least perimeter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerHexagon {
    pub l: f64,
    pub volume: f64,
    /// `x₁ … x₆`
    pub sides: [f64; 6],
    pub perimeter: f64,
}

/// `x₂ = x₃ = x₅ = x₆ = L/2`, `x₁ = x₄ = (8√3V − 3L²)/(12L)`, perimeter
/// `(9L² + 8√3V)/(6L)`.
pub fn inner_hexagon(l: f64, v: f64) -> Result<InnerHexagon> {
    if !(l > 0.0) || !(v > 0.0) {
        return Err(Error::Domain("width and volume must be positive"));
    }
    let x1 = (8.0 * SQRT3 * v - 3.0 * l * l) / (12.0 * l);
    if x1 < -SIDE_SLACK {
        return Err(Error::Infeasible("hexagon too wide for its volume"));
    }
    let x1 = x1.max(0.0);
    let h = 0.5 * l;
    Ok(InnerHexagon {
        l,
        volume: v,
        sides: [x1, h, h, x1, h, h],
        perimeter: (9.0 * l * l + 8.0 * SQRT3 * v) / (6.0 * l),
    })
}

/// Notched outer bubble with the notch centered on its right side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterNotched {
    pub l1: f64,
    pub l2: f64,
    pub volume: f64,
    /// `y₁ … y₆`
    pub sides: [f64; 6],
    /// `(x₅, x₆)`
    pub notch: (f64, f64),
    pub perimeter: f64,
}

/// Volume of the hexagon obtained by flipping the notch outward.
pub fn hull_volume(l1: f64, v: f64) -> f64 {
    v + SQRT3 / 2.0 * (0.5 * l1) * (0.5 * l1)
}

pub fn outer_notched(l1: f64, l2: f64, v: f64) -> Result<OuterNotched> {
    if !(l1 > 0.0) || !(l2 > 0.0) || !(v > 0.0) {
        return Err(Error::Domain("widths and volume must be positive"));
    }
    if l2 < l1 - SIDE_SLACK {
        return Err(Error::Infeasible("notch wider than the outer bubble"));
    }
    let hull = inner_hexagon(l2, hull_volume(l1, v))?;
    let y1 = hull.sides[0];
    let y2 = (0.5 * (l2 - l1)).max(0.0);
    let h = 0.5 * l2;
    Ok(OuterNotched {
        l1,
        l2,
        volume: v,
        sides: [y1, y2, y2, y1, h, h],
        notch: (0.5 * l1, 0.5 * l1),
        perimeter: hull.perimeter,
    })
}

/// Embedded perimeter with the volume-1 bubble outside and volume `α` inside.
pub fn rho1(l1: f64, l2: f64, alpha: f64) -> Result<f64> {
    embedded_perimeter(l1, l2, 1.0, alpha)
}

/// Embedded perimeter with the volume-`α` bubble outside and volume 1 inside.
pub fn rho2(l1: f64, l2: f64, alpha: f64) -> Result<f64> {
    embedded_perimeter(l1, l2, alpha, 1.0)
}

fn embedded_perimeter(l1: f64, l2: f64, outer_v: f64, inner_v: f64) -> Result<f64> {
    Ok(outer_notched(l1, l2, outer_v)?.perimeter + inner_hexagon(l1, inner_v)?.perimeter - l1)
}

/// Best outer width for notch width `l1`: the unconstrained optimum
/// `√(8√3V′)/3`, raised to `l1` if the notch would not fit.
pub fn best_outer_width(l1: f64, outer_v: f64) -> f64 {
    (math::sqrt(8.0 * SQRT3 * hull_volume(l1, outer_v)) / 3.0).max(l1)
}

/// Largest width at which a hexagon of volume `v` keeps `x₁ ≥ 0`.
pub fn max_inner_width(v: f64) -> f64 {
    math::sqrt(8.0 * SQRT3 * v / 3.0)
}

fn minimize_reduced(outer_v: f64, inner_v: f64) -> (f64, f64, f64) {
    let f = |l1: f64| {
        embedded_perimeter(l1, best_outer_width(l1, outer_v), outer_v, inner_v).unwrap_or(f64::INFINITY)
    };
    let (l1, value) = scan_minimize(f, 1e-8, max_inner_width(inner_v), 1000, 1e-10);
    (l1, best_outer_width(l1, outer_v), value)
}

/// `(L₁, L₂, ρ₁)` at the minimum of [`rho1`].
pub fn minimize_rho1(alpha: f64) -> Result<(f64, f64, f64)> {
    check_alpha(alpha)?;
    Ok(minimize_reduced(1.0, alpha))
}

/// `(L₁, L₂, ρ₂)` at the minimum of [`rho2`]. Up to `α = 2/3` the optimum has
/// `L₁ = L₂ = √(8√3(1+α)/15)` and value `2√(10(1+α))/3^{1/4}`.
pub fn rho2_minimum(alpha: f64) -> Result<(f64, f64, f64)> {
    check_alpha(alpha)?;
    if alpha <= RHO2_CLOSED_FORM_LIMIT {
        let l = math::sqrt(8.0 * SQRT3 * (1.0 + alpha) / 15.0);
        Ok((l, l, 5.0 * l))
    } else {
        Ok(minimize_reduced(alpha, 1.0))
    }
}

/// Minimizers of the equal-width variant, one per reading of its notch term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case2Report {
    /// Notch area written with the outer width `L₂`, notch no wider than the inner bubble.
    pub printed: (f64, f64),
    pub printed_equal: bool,
    /// Notch area written with the inner width `L₁`, notch no wider than the outer bubble.
    pub inner_width: (f64, f64),
    pub inner_width_equal: bool,
}

fn widths_equal(l1: f64, l2: f64) -> bool {
    math::abs(l2 - l1) <= 1e-6 * (1.0 + l1)
}

/// `(9L₂² + 8√3(1 + (√3/2)(L₂/2)²))/(6L₂) + (9L₁² + 8√3α)/(6L₁) − L₂`.
pub fn case2_printed(l1: f64, l2: f64, alpha: f64) -> Result<f64> {
    if l2 > l1 + SIDE_SLACK {
        return Err(Error::Infeasible("notch wider than the inner bubble"));
    }
    let outer = (9.0 * l2 * l2 + 8.0 * SQRT3 * hull_volume(l2, 1.0)) / (6.0 * l2);
    Ok(outer + inner_hexagon(l1, alpha)?.perimeter - l2)
}

/// Brute-force minimization of both readings over `(L₁, L₂)`.
pub fn case2_report(alpha: f64) -> Result<Case2Report> {
    check_alpha(alpha)?;
    let w = max_inner_width(alpha);
    let printed_box = BoxSpec::new(
        alloc::vec![1e-3, 1e-3],
        alloc::vec![w, 4.0],
        |p: &[f64]| p[1] <= p[0],
        &[w, w],
    )?;
    let (p, _) = grid_refine_min(
        |p| case2_printed(p[0], p[1], alpha).unwrap_or(f64::INFINITY),
        &printed_box,
        64,
        48,
    )?;
    let inner_box = BoxSpec::new(
        alloc::vec![1e-3, 1e-3],
        alloc::vec![w, 4.0],
        |p: &[f64]| p[1] >= p[0],
        &[w, 4.0],
    )?;
    let (q, _) = grid_refine_min(|p| rho1(p[0], p[1], alpha).unwrap_or(f64::INFINITY), &inner_box, 64, 48)?;
    Ok(Case2Report {
        printed: (p[0], p[1]),
        printed_equal: widths_equal(p[0], p[1]),
        inner_width: (q[0], q[1]),
        inner_width_equal: widths_equal(q[0], q[1]),
    })
}

/// Whether the printed equal-width variant is minimized at `L₁ = L₂`.
pub fn case2_check(alpha: f64) -> Result<bool> {
    Ok(case2_report(alpha)?.printed_equal)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddedRoute {
    /// Volume 1 outside.
    Rho1,
    /// Volume `α` outside.
    Rho2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedSolution {
    pub alpha: f64,
    pub route: EmbeddedRoute,
    pub l1: f64,
    pub l2: f64,
    /// `x₁ … x₆`
    pub inner_sides: [f64; 6],
    /// `y₁ … y₆`
    pub outer_sides: [f64; 6],
    pub perimeter: f64,
    pub outer: PolyChain,
    pub inner: PolyChain,
}

impl EmbeddedSolution {
    /// The bubble of volume 1.
    pub fn geometry_a(&self) -> &PolyChain {
        match self.route {
            EmbeddedRoute::Rho1 => &self.outer,
            EmbeddedRoute::Rho2 => &self.inner,
        }
    }

    /// The bubble of volume `α`.
    pub fn geometry_b(&self) -> &PolyChain {
        match self.route {
            EmbeddedRoute::Rho1 => &self.inner,
            EmbeddedRoute::Rho2 => &self.outer,
        }
    }

    /// The two shared notch edges.
    pub fn joint_length(&self) -> f64 {
        self.inner_sides[4] + self.inner_sides[5]
    }
}

/// Outer polygon from its bottom-left corner at `origin`, and the inner
/// polygon seated in the notch.
pub fn embedded_geometry(inner: &[f64; 6], outer: &[f64; 6], origin: PlanePoint) -> Result<(PolyChain, PolyChain)> {
    let [x1, x2, x3, x4, x5, x6] = *inner;
    let [y1, y2, y3, y4, y5, y6] = *outer;
    let outer_steps = [(0, y1), (1, y2), (2, x6), (1, x5), (2, y3), (3, y4), (4, y5), (5, y6)];
    let outer_poly = PolyChain::closed(trace_lattice(origin, &outer_steps, true))?;
    let seat = origin + PlanePoint::lattice(0) * y1 + PlanePoint::lattice(1) * y2;
    let inner_steps = [(0, x1), (1, x2), (2, x3), (3, x4), (4, x5), (5, x6)];
    let inner_poly = PolyChain::closed(trace_lattice(seat, &inner_steps, true))?;
    Ok((outer_poly, inner_poly))
}

fn assemble(alpha: f64, route: EmbeddedRoute, l1: f64, l2: f64) -> Result<EmbeddedSolution> {
    let (outer_v, inner_v) = match route {
        EmbeddedRoute::Rho1 => (1.0, alpha),
        EmbeddedRoute::Rho2 => (alpha, 1.0),
    };
    let inner = inner_hexagon(l1, inner_v)?;
    let outer = outer_notched(l1, l2, outer_v)?;
    let (outer_poly, inner_poly) = embedded_geometry(&inner.sides, &outer.sides, PlanePoint::ORIGIN)?;
    Ok(EmbeddedSolution {
        alpha,
        route,
        l1,
        l2,
        inner_sides: inner.sides,
        outer_sides: outer.sides,
        perimeter: outer.perimeter + inner.perimeter - l1,
        outer: outer_poly,
        inner: inner_poly,
    })
}

/// The embedded configuration of least perimeter for volumes `1` and `α`.
pub fn embedded_minimum(alpha: f64) -> Result<EmbeddedSolution> {
    let (a1, a2, av) = minimize_rho1(alpha)?;
    let (b1, b2, bv) = rho2_minimum(alpha)?;
    if av <= bv {
        assemble(alpha, EmbeddedRoute::Rho1, a1, a2)
    } else {
        assemble(alpha, EmbeddedRoute::Rho2, b1, b2)
    }
}

/// Sides `a₁ … a₆` of a hexagon whose left pair and right pair both span
/// `w`, given `a₂`, `a₅` and the volume.
fn spanned_hexagon(w: f64, a2: f64, a5: f64, v: f64) -> Result<[f64; 6]> {
    let a3 = w - a2;
    let a6 = w - a5;
    let a4 = (4.0 * v / SQRT3 - w * w + a2 * a2 + a6 * a6) / (2.0 * w);
    let a1 = a4 - a2 + a5;
    let sides = [a1, a2, a3, a4, a5, a6];
    if sides.iter().any(|&s| s < -SIDE_SLACK) {
        return Err(Error::Infeasible("negative side length"));
    }
    Ok(sides.map(|s| s.max(0.0)))
}

/// Embedded configurations with asymmetric inner bubble, hull and notch
/// placement: `[L₁, L₂, x₂, x₅, y₂ + x₅, y₆]`. Volumes are restored through
/// `x₁, x₄` and `y₁, y₄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedFamily {
    pub outer_volume: f64,
    pub inner_volume: f64,
    pub base: [f64; 6],
}

impl EmbeddedFamily {
    pub fn around(s: &EmbeddedSolution) -> Self {
        let (outer_volume, inner_volume) = match s.route {
            EmbeddedRoute::Rho1 => (1.0, s.alpha),
            EmbeddedRoute::Rho2 => (s.alpha, 1.0),
        };
        EmbeddedFamily {
            outer_volume,
            inner_volume,
            base: [
                s.l1,
                s.l2,
                s.inner_sides[1],
                s.inner_sides[4],
                s.outer_sides[1] + s.inner_sides[4],
                s.outer_sides[5],
            ],
        }
    }
}

impl ParametricFamily for EmbeddedFamily {
    fn base_parameters(&self) -> Vec<f64> {
        self.base.to_vec()
    }

    fn realize(&self, p: &[f64]) -> Result<(PolyChain, PolyChain)> {
        if p.len() != 6 || p[0] <= 0.0 || p[1] <= 0.0 {
            return Err(Error::Infeasible("parameters outside the family"));
        }
        let (l1, l2, x2, x5, h2, y6) = (p[0], p[1], p[2], p[3], p[4], p[5]);
        let inner = spanned_hexagon(l1, x2, x5, self.inner_volume)?;
        let x6 = inner[5];
        let hull_v = self.outer_volume + SQRT3 / 2.0 * x5 * x6;
        let hull = spanned_hexagon(l2, h2, l2 - y6, hull_v)?;
        let y2 = hull[1] - x5;
        let y3 = hull[2] - x6;
        if y2 < -SIDE_SLACK || y3 < -SIDE_SLACK {
            return Err(Error::Infeasible("notch does not fit"));
        }
        let outer = [hull[0], y2.max(0.0), y3.max(0.0), hull[3], hull[4], hull[5]];
        embedded_geometry(&inner, &outer, PlanePoint::ORIGIN)
    }
}

/// Re-measures a solution with the generic double-bubble perimeter.
pub fn measured_perimeter(s: &EmbeddedSolution) -> Result<f64> {
    Ok(double_bubble_perimeter(&s.outer, &s.inner)?.total)
}
