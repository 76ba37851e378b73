//! One bubble with a prescribed side: the hexagon of volume `V` whose base has
//! `D`-length `L` and whose remaining perimeter is as small as possible.
//!
//! The hexagon is walked counterclockwise from the left end of the base:
//! `L` along 0°, then `x₁` at 60°, `x₂` at 120°, `x₃` at 180°, `x₄` at 240°
//! and `x₅` at 300°. Closing the walk forces `x₅ = x₁ + x₂ − x₄` and
//! `x₃ = L + x₁ − x₄`, which leaves `(x₁, x₂)` free once `x₄` is fixed by the
//! volume.

use alloc::vec::Vec;

use crate::hexnorm::{trace_lattice, PlanePoint, PolyChain};
use crate::math::{self, QUARTIC_ROOT3, SQRT3};
use crate::{Error, Result};

/// Smallest fixed side accepted; the optimal perimeter diverges as `L → 0`.
pub const MIN_SIDE_LENGTH: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `3√3·L² < 16·V`: every side positive.
    SixSided,
    /// `x₁ = x₅ = 0`: the base is long enough that the optimum is a trapezoid.
    FourSided,
}

impl Regime {
    pub fn of(l: f64, v: f64) -> Regime {
        if 3.0 * SQRT3 * l * l < 16.0 * v {
            Regime::SixSided
        } else {
            Regime::FourSided
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingleBubbleSolution {
    pub l: f64,
    pub volume: f64,
    pub regime: Regime,
    /// `x₁ … x₅`
    pub sides: [f64; 5],
    pub perimeter: f64,
}

impl SingleBubbleSolution {
    /// The hexagon with the base starting at `origin`, counterclockwise.
    pub fn polygon(&self, origin: PlanePoint) -> Result<PolyChain> {
        hexagon_polygon(self.l, &self.sides, origin)
    }
}

fn check_positive(l: f64, v: f64) -> Result<()> {
    if !(l >= MIN_SIDE_LENGTH) || !l.is_finite() {
        return Err(Error::Domain("fixed side must be at least 1e-8"));
    }
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Domain("volume must be positive"));
    }
    Ok(())
}

/// `x₄` making the hexagon with base `L` and sides `x₁, x₂` enclose `V`.
pub fn x4_from_volume(x1: f64, x2: f64, l: f64, v: f64) -> Result<f64> {
    let radicand = x1 * x1 + 2.0 * x1 * x2 + 2.0 * l * (x1 + x2) - 4.0 * v / SQRT3;
    if !(radicand >= 0.0) {
        return Err(Error::InfeasibleVolume);
    }
    Ok(math::sqrt(radicand))
}

/// All five free sides from `(x₁, x₂)`; fails if any side is negative.
pub fn sides_from_free(x1: f64, x2: f64, l: f64, v: f64) -> Result<[f64; 5]> {
    let x4 = x4_from_volume(x1, x2, l, v)?;
    let sides = [x1, x2, l + x1 - x4, x4, x1 + x2 - x4];
    if sides.iter().any(|&s| s < -1e-12) {
        return Err(Error::Infeasible("negative side length"));
    }
    Ok(sides.map(|s| s.max(0.0)))
}

/// `D`-perimeter `3x₁ + 2x₂ − x₄ + 2L` of the hexagon with free sides
/// `(x₁, x₂)`. This is the function the fixed-side problem minimizes.
pub fn fixed_side_objective(x1: f64, x2: f64, l: f64, v: f64) -> Result<f64> {
    let sides = sides_from_free(x1, x2, l, v)?;
    Ok(3.0 * x1 + 2.0 * x2 - sides[3] + 2.0 * l)
}

/// Vertices of the hexagon with base `l` and sides `x₁ … x₅`.
pub fn hexagon_polygon(l: f64, sides: &[f64; 5], origin: PlanePoint) -> Result<PolyChain> {
    let steps = [
        (0, l),
        (1, sides[0]),
        (2, sides[1]),
        (3, sides[2]),
        (4, sides[3]),
        (5, sides[4]),
    ];
    PolyChain::closed(trace_lattice(origin, &steps, true))
}

/// The optimal hexagon with a base of length `L` enclosing `V`.
pub fn solve_fixed_side(l: f64, v: f64) -> Result<SingleBubbleSolution> {
    check_positive(l, v)?;
    let regime = Regime::of(l, v);
    let sides = match regime {
        Regime::SixSided => {
            let s = math::sqrt((3.0 * l * l + 4.0 * SQRT3 * v) / 21.0);
            let x1 = (2.0 * s - l).max(0.0);
            [x1, s, s, s, x1]
        }
        Regime::FourSided => {
            let s = four_sided_top(l, v)?;
            [0.0, l - s, s, l - s, 0.0]
        }
    };
    let perimeter = match regime {
        Regime::SixSided => perimeter_p1(l, v)?,
        Regime::FourSided => perimeter_p2(l, v)?,
    };
    Ok(SingleBubbleSolution { l, volume: v, regime, sides, perimeter })
}

fn four_sided_top(l: f64, v: f64) -> Result<f64> {
    let mut radicand = l * l - 4.0 * v / SQRT3;
    if radicand < 0.0 && radicand > -1e-12 * l * l {
        radicand = 0.0;
    }
    if !(radicand >= 0.0) {
        return Err(Error::Infeasible("base too short for a four-sided bubble"));
    }
    Ok(math::sqrt(radicand))
}

/// Optimal perimeter in the six-sided regime, `7√((3L² + 4√3V)/21) − L`.
pub fn perimeter_p1(l: f64, v: f64) -> Result<f64> {
    check_positive(l, v)?;
    Ok(7.0 * math::sqrt((3.0 * l * l + 4.0 * SQRT3 * v) / 21.0) - l)
}

/// Optimal perimeter in the four-sided regime, `3L − √(L² − 4V/√3)`.
/// Defined for `L ≥ 2√V / 3^{1/4}`.
pub fn perimeter_p2(l: f64, v: f64) -> Result<f64> {
    check_positive(l, v)?;
    Ok(3.0 * l - four_sided_top(l, v)?)
}

/// Smallest `L` at which the four-sided formula is defined.
pub fn p2_domain_start(v: f64) -> f64 {
    2.0 * math::sqrt(v) / QUARTIC_ROOT3
}

/// Side length where the regimes meet, `3√3·L² = 16·V`.
pub fn regime_boundary(v: f64) -> f64 {
    math::sqrt(16.0 * v / (3.0 * SQRT3))
}

/// Perimeter of the best bubble with base `L`, whichever regime applies.
pub fn bubble_perimeter(l: f64, v: f64) -> Result<f64> {
    match Regime::of(l, v) {
        Regime::SixSided => perimeter_p1(l, v),
        Regime::FourSided => perimeter_p2(l, v),
    }
}

/// Side `L₀ = √(2V)/3^{3/4}` and perimeter `2√(2V)·3^{1/4}` of the regular
/// hexagon, the unconstrained minimizer.
pub fn isoperimetric_optimum(v: f64) -> Result<(f64, f64)> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Domain("volume must be positive"));
    }
    let r = math::sqrt(2.0 * v);
    Ok((r / (QUARTIC_ROOT3 * QUARTIC_ROOT3 * QUARTIC_ROOT3), 2.0 * r * QUARTIC_ROOT3))
}

/// The regular hexagon of volume `V`, counterclockwise from its lower-left corner.
pub fn regular_hexagon(v: f64) -> Result<PolyChain> {
    let (l0, _) = isoperimetric_optimum(v)?;
    hexagon_polygon(l0, &[l0; 5], PlanePoint::ORIGIN)
}

/// `D`-lengths of the edges of a closed chain, in order.
pub fn side_lengths(c: &PolyChain) -> Vec<f64> {
    c.edges().map(|(a, b)| crate::hexnorm::hex_norm(b - a)).collect()
}
