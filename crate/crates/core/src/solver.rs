//! Comparison of the two candidate configurations and the phase transition.

use alloc::vec::Vec;

use crate::embedded::{embedded_minimum, EmbeddedSolution};
use crate::hexnorm::{PlanePoint, PolyChain};
use crate::kissing::{check_alpha, kissing_minimum, small_alpha_closed_form, KissingSolution, UNEQUAL_THRESHOLD};
use crate::search::bisect;
use crate::{Error, Result};

/// Perimeters closer than this count as a tie.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Bracket searched for the phase transition.
pub const ALPHA0_BRACKET: (f64, f64) = (0.1, 0.3);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Embedded,
    Kissing,
    Both,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::Embedded => "embedded",
            Case::Kissing => "kissing",
            Case::Both => "both",
        }
    }
}

impl core::fmt::Display for Case {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Configuration {
    Embedded(EmbeddedSolution),
    Kissing(KissingSolution),
}

impl Configuration {
    pub fn case(&self) -> Case {
        match self {
            Configuration::Embedded(_) => Case::Embedded,
            Configuration::Kissing(_) => Case::Kissing,
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            Configuration::Embedded(s) => s.perimeter,
            Configuration::Kissing(s) => s.perimeter,
        }
    }

    pub fn l1(&self) -> f64 {
        match self {
            Configuration::Embedded(s) => s.l1,
            Configuration::Kissing(s) => s.l1,
        }
    }

    pub fn l2(&self) -> f64 {
        match self {
            Configuration::Embedded(s) => s.l2,
            Configuration::Kissing(s) => s.l2,
        }
    }

    pub fn joint_length(&self) -> f64 {
        match self {
            Configuration::Embedded(s) => s.joint_length(),
            Configuration::Kissing(s) => s.joint_length(),
        }
    }

    /// The volume-1 bubble.
    pub fn geometry_a(&self) -> &PolyChain {
        match self {
            Configuration::Embedded(s) => s.geometry_a(),
            Configuration::Kissing(s) => &s.geometry_a,
        }
    }

    /// The volume-`α` bubble.
    pub fn geometry_b(&self) -> &PolyChain {
        match self {
            Configuration::Embedded(s) => s.geometry_b(),
            Configuration::Kissing(s) => &s.geometry_b,
        }
    }

    /// `D`-lengths of the sides of bubble A and bubble B: `(x₁ … x₅)` with
    /// the base for kissing hexagons, `(y₁ … y₆)` and `(x₁ … x₆)` for
    /// embedded ones.
    pub fn side_lengths(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Configuration::Kissing(s) => {
                let mut a = alloc::vec![s.l1];
                a.extend_from_slice(&s.bubble_a.sides);
                let mut b = alloc::vec![s.l2];
                b.extend_from_slice(&s.bubble_b.sides);
                (a, b)
            }
            Configuration::Embedded(s) => {
                let outer = s.outer_sides.to_vec();
                let inner = s.inner_sides.to_vec();
                match s.route {
                    crate::embedded::EmbeddedRoute::Rho1 => (outer, inner),
                    crate::embedded::EmbeddedRoute::Rho2 => (inner, outer),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleBubbleResult {
    pub alpha: f64,
    pub case: Case,
    pub perimeter: f64,
    pub embedded_perimeter: f64,
    pub kissing_perimeter: f64,
    /// The unequal-base kissing value `2·3^{1/4}(√2 + √α)` when `α < 1/8`.
    pub small_alpha_kissing: Option<f64>,
    /// One configuration, or both when the case is [`Case::Both`].
    pub solutions: Vec<Configuration>,
    pub joint_length: f64,
}

/// The least-perimeter double bubble for volumes `1` and `α`.
pub fn solve(alpha: f64) -> Result<DoubleBubbleResult> {
    check_alpha(alpha)?;
    let e = embedded_minimum(alpha)?;
    let k = kissing_minimum(alpha)?;
    let (ep, kp) = (e.perimeter, k.perimeter);
    let (case, solutions) = if (ep - kp).abs() <= TIE_TOLERANCE {
        (Case::Both, alloc::vec![Configuration::Embedded(e), Configuration::Kissing(k)])
    } else if ep < kp {
        (Case::Embedded, alloc::vec![Configuration::Embedded(e)])
    } else {
        (Case::Kissing, alloc::vec![Configuration::Kissing(k)])
    };
    Ok(DoubleBubbleResult {
        alpha,
        case,
        perimeter: ep.min(kp),
        embedded_perimeter: ep,
        kissing_perimeter: kp,
        small_alpha_kissing: (alpha < UNEQUAL_THRESHOLD).then(|| small_alpha_closed_form(alpha)),
        joint_length: solutions[0].joint_length(),
        solutions,
    })
}

/// `embedded − kissing`; negative where the embedded configuration wins.
pub fn perimeter_gap(alpha: f64) -> Result<f64> {
    Ok(embedded_minimum(alpha)?.perimeter - kissing_minimum(alpha)?.perimeter)
}

/// Volume ratio at which both configurations have the same perimeter.
pub fn find_alpha0() -> Result<f64> {
    let (lo, hi) = ALPHA0_BRACKET;
    let g = |a: f64| perimeter_gap(a).unwrap_or(f64::NAN);
    bisect(g, lo, hi, 1e-9)
}

/// [`solve`] at `steps` evenly spaced ratios from `alpha_min` to `alpha_max`.
pub fn sweep(alpha_min: f64, alpha_max: f64, steps: usize) -> Result<Vec<DoubleBubbleResult>> {
    check_alpha(alpha_min)?;
    check_alpha(alpha_max)?;
    if alpha_min > alpha_max {
        return Err(Error::Domain("sweep range is reversed"));
    }
    if steps == 0 {
        return Err(Error::Domain("sweep needs at least one step"));
    }
    if steps == 1 && alpha_min != alpha_max {
        return Err(Error::Domain("a single step needs alpha_min = alpha_max"));
    }
    (0..steps)
        .map(|i| {
            let alpha = if i + 1 == steps {
                alpha_max
            } else {
                alpha_min + (alpha_max - alpha_min) * i as f64 / (steps - 1) as f64
            };
            solve(alpha)
        })
        .collect()
}

/// The configuration translated so that the leftmost (then lowest) vertex
/// of bubble A is the origin. Both chains are counterclockwise.
pub fn figure_geometry(config: &Configuration) -> (PolyChain, PolyChain) {
    let a = config.geometry_a();
    let shift = PlanePoint::ORIGIN - a.leftmost_lowest();
    (
        a.translated(shift).to_counterclockwise(),
        config.geometry_b().translated(shift).to_counterclockwise(),
    )
}

/// Figure geometry of the first reported configuration.
pub fn build_figure_geometry(result: &DoubleBubbleResult) -> (PolyChain, PolyChain) {
    figure_geometry(&result.solutions[0])
}
