//! Two hexagons kissing along their bases.
//!
//! Bubble A (volume 1) has base `L₁`, bubble B (volume `α`) has base `L₂`.
//! The bases lie on a common line with their midpoints aligned, so the shared
//! boundary has length `min(L₁, L₂)` and the double-bubble perimeter is
//! `P(L₁, 1) + P(L₂, α) − min(L₁, L₂)`, where `P` is the fixed-side optimum
//! from [`crate::singlebubble`].

use alloc::vec::Vec;

use crate::hexnorm::{double_bubble_perimeter, PlanePoint, PolyChain};
use crate::math::{self, QUARTIC_ROOT3, SQRT3};
use crate::oracle::ParametricFamily;
use crate::search::bisect;
use crate::singlebubble::{
    bubble_perimeter, hexagon_polygon, perimeter_p1, perimeter_p2, sides_from_free, solve_fixed_side, Regime,
    SingleBubbleSolution,
};
use crate::{Error, Result};

/// `α` below which the bases differ at the optimum.
pub const UNEQUAL_THRESHOLD: f64 = 0.125;

/// Which fixed-side regime each bubble is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KissingRegime {
    /// `3√3·L₁² < 16`
    pub a_six_sided: bool,
    /// `3√3·L₂² < 16α`
    pub b_six_sided: bool,
}

impl KissingRegime {
    pub fn of(l1: f64, l2: f64, alpha: f64) -> Self {
        KissingRegime {
            a_six_sided: Regime::of(l1, 1.0) == Regime::SixSided,
            b_six_sided: Regime::of(l2, alpha) == Regime::SixSided,
        }
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain("volume ratio must lie in (0, 1]"));
    }
    Ok(())
}

/// `P(L₁, 1) + P(L₂, α) − min(L₁, L₂)` with each bubble in its own regime.
pub fn kissing_perimeter(l1: f64, l2: f64, alpha: f64) -> Result<f64> {
    Ok(bubble_perimeter(l1, 1.0)? + bubble_perimeter(l2, alpha)? - l1.min(l2))
}

/// A stationary point of the kissing perimeter with `L₁ ≠ L₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnequalCandidate {
    /// 1 to 8
    pub row: u8,
    pub l1: f64,
    pub l2: f64,
    /// Regimes the row was derived under.
    pub assumed: KissingRegime,
    /// Whether the row assumed `L₁ < L₂`.
    pub l1_smaller: bool,
    /// Ordering and regimes of `(l1, l2)` agree with the assumptions.
    pub admissible: bool,
    pub perimeter: f64,
}

/// `L²` at which `∂/∂L` of the bubble's share of the kissing perimeter
/// vanishes. The smaller base also loses one unit of slope to the joint.
fn stationary_square(six_sided: bool, smaller: bool, v: f64) -> f64 {
    match (six_sided, smaller) {
        // L/√((3L²+4√3V)/21) = 1 or 2
        (true, false) => 4.0 * SQRT3 * v / 18.0,
        (true, true) => 16.0 * SQRT3 * v / 9.0,
        // L/√(L² − 4V/√3) = 3 or 2
        (false, false) => 9.0 / 8.0 * 4.0 * v / SQRT3,
        (false, true) => 4.0 / 3.0 * 4.0 * v / SQRT3,
    }
}

fn regime_consistent(six_sided: bool, l: f64, v: f64) -> bool {
    // the smaller-base four-sided point sits exactly on the regime boundary
    let lhs = 3.0 * SQRT3 * l * l;
    let rhs = 16.0 * v;
    let slack = 1e-9 * rhs;
    if six_sided {
        lhs < rhs + slack
    } else {
        lhs >= rhs - slack
    }
}

/// The eight stationary pairs obtained by choosing a regime for each bubble
/// and which base is shorter.
pub fn unequal_candidates(alpha: f64) -> Result<Vec<UnequalCandidate>> {
    check_alpha(alpha)?;
    let mut out = Vec::with_capacity(8);
    for (i, (a6, b6)) in [(true, true), (false, false), (true, false), (false, true)].into_iter().enumerate() {
        for (j, l1_smaller) in [true, false].into_iter().enumerate() {
            let l1 = math::sqrt(stationary_square(a6, l1_smaller, 1.0));
            let l2 = math::sqrt(stationary_square(b6, !l1_smaller, alpha));
            let ordered = if l1_smaller { l1 < l2 } else { l2 < l1 };
            let admissible =
                ordered && regime_consistent(a6, l1, 1.0) && regime_consistent(b6, l2, alpha);
            let perimeter = branch_perimeter(a6, l1, 1.0) + branch_perimeter(b6, l2, alpha) - l1.min(l2);
            out.push(UnequalCandidate {
                row: (2 * i + j + 1) as u8,
                l1,
                l2,
                assumed: KissingRegime { a_six_sided: a6, b_six_sided: b6 },
                l1_smaller,
                admissible,
                perimeter,
            });
        }
    }
    Ok(out)
}

fn branch_perimeter(six_sided: bool, l: f64, v: f64) -> f64 {
    let p = if six_sided { perimeter_p1(l, v) } else { perimeter_p2(l, v) };
    p.unwrap_or(f64::NAN)
}

/// Kissing perimeters along `L₁ = L₂ = L`, one per regime pair. A value is
/// `None` where its four-sided formula is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualPerimeters {
    /// both six-sided
    pub p3: f64,
    /// B four-sided
    pub p4: Option<f64>,
    /// A four-sided
    pub p5: Option<f64>,
    /// both four-sided
    pub p6: Option<f64>,
}

pub fn equal_perimeters(l: f64, alpha: f64) -> Result<EqualPerimeters> {
    let a1 = perimeter_p1(l, 1.0)?;
    let b1 = perimeter_p1(l, alpha)?;
    let a2 = perimeter_p2(l, 1.0).ok();
    let b2 = perimeter_p2(l, alpha).ok();
    Ok(EqualPerimeters {
        p3: a1 + b1 - l,
        p4: b2.map(|b| a1 + b - l),
        p5: a2.map(|a| a + b1 - l),
        p6: a2.zip(b2).map(|(a, b)| a + b - l),
    })
}

/// `P₃(L) = 7√((3L²+4√3)/21) + 7√((3L²+4√3α)/21) − 3L`.
pub fn p3(l: f64, alpha: f64) -> f64 {
    7.0 * math::sqrt((3.0 * l * l + 4.0 * SQRT3) / 21.0)
        + 7.0 * math::sqrt((3.0 * l * l + 4.0 * SQRT3 * alpha) / 21.0)
        - 3.0 * l
}

/// `P₃′(L)`, strictly increasing from −3 toward `2√7 − 3`.
pub fn p3_derivative(l: f64, alpha: f64) -> f64 {
    l / math::sqrt((3.0 * l * l + 4.0 * SQRT3) / 21.0)
        + l / math::sqrt((3.0 * l * l + 4.0 * SQRT3 * alpha) / 21.0)
        - 3.0
}

/// The unique minimizer of `P₃` and its value.
pub fn p3_minimizer(alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    let l = bisect(|l| p3_derivative(l, alpha), 1e-8, 10.0, 1e-12)?;
    Ok((l, p3(l, alpha)))
}

/// Coefficients `c₀ … c₈` in ascending powers of `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poly8 {
    pub coeffs: [f64; 9],
}

impl Poly8 {
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, &c| m.max(math::abs(c)))
    }
}

fn poly_mul(a: &[f64], b: &[f64]) -> [f64; 9] {
    let mut out = [0.0; 9];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if x != 0.0 && y != 0.0 {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `4L⁴Q/441 − (Q/49 − R/21)²` with `Q = 9L⁴ + 12√3(1+α)L² + 48α` and
/// `R = 6L⁴ + 4√3(1+α)L²`. Its positive roots contain the minimizer of `P₃`.
pub fn build_degree8(alpha: f64) -> Result<Poly8> {
    check_alpha(alpha)?;
    let q = [48.0 * alpha, 0.0, 12.0 * SQRT3 * (1.0 + alpha), 0.0, 9.0];
    let r = [0.0, 0.0, 4.0 * SQRT3 * (1.0 + alpha), 0.0, 6.0];
    let four_l4 = [0.0, 0.0, 0.0, 0.0, 4.0 / 441.0];
    let first = poly_mul(&four_l4, &q);
    let diff: [f64; 5] = core::array::from_fn(|i| q[i] / 49.0 - r[i] / 21.0);
    let second = poly_mul(&diff, &diff);
    let coeffs = core::array::from_fn(|i| first[i] - second[i]);
    Ok(Poly8 { coeffs })
}

/// Real roots of `p`, ascending. Sign changes on a dense scan over the
/// Cauchy bound are refined by bisection; roots of even multiplicity that
/// never change sign are not reported.
pub fn poly_real_roots(p: &Poly8) -> Vec<f64> {
    let lead = p.coeffs[8];
    let bound = 1.0 + p.coeffs[..8].iter().fold(0.0, |m: f64, &c| m.max(math::abs(c / lead)));
    const SAMPLES: usize = 40_000;
    let step = 2.0 * bound / SAMPLES as f64;
    let mut roots = Vec::new();
    let mut x0 = -bound;
    let mut f0 = p.eval(x0);
    for i in 1..=SAMPLES {
        let x1 = -bound + step * i as f64;
        let f1 = p.eval(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if (f0 < 0.0) != (f1 < 0.0) && f1 != 0.0 {
            if let Ok(r) = bisect(|x| p.eval(x), x0, x1, 1e-15 * (1.0 + math::abs(x0))) {
                roots.push(r);
            }
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 {
        roots.push(x0);
    }
    roots
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KissingBranch {
    /// A stationary pair with `L₁ ≠ L₂` (row number of [`unequal_candidates`]).
    Unequal(u8),
    /// Equal bases at the minimizer of `P₃`.
    EqualP3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KissingSolution {
    pub alpha: f64,
    pub l1: f64,
    pub l2: f64,
    pub perimeter: f64,
    pub branch: KissingBranch,
    pub bubble_a: SingleBubbleSolution,
    pub bubble_b: SingleBubbleSolution,
    /// Volume 1, above the common base line.
    pub geometry_a: PolyChain,
    /// Volume `α`, below the common base line.
    pub geometry_b: PolyChain,
}

impl KissingSolution {
    pub fn joint_length(&self) -> f64 {
        self.l1.min(self.l2)
    }
}

/// Welds the two optimal fixed-side hexagons along their bases.
pub fn kissing_geometry(l1: f64, l2: f64, alpha: f64) -> Result<(SingleBubbleSolution, SingleBubbleSolution, PolyChain, PolyChain)> {
    let a = solve_fixed_side(l1, 1.0)?;
    let b = solve_fixed_side(l2, alpha)?;
    let (ga, gb) = weld(l1, &a.sides, l2, &b.sides)?;
    Ok((a, b, ga, gb))
}

fn weld(l1: f64, sides_a: &[f64; 5], l2: f64, sides_b: &[f64; 5]) -> Result<(PolyChain, PolyChain)> {
    let ga = hexagon_polygon(l1, sides_a, PlanePoint::ORIGIN)?;
    let gb = hexagon_polygon(l2, sides_b, PlanePoint::ORIGIN)?
        .reflected_x()
        .translated(PlanePoint::new(0.5 * (l1 - l2), 0.0));
    Ok((ga, gb))
}

/// The kissing configuration of least perimeter for volumes `1` and `α`.
pub fn kissing_minimum(alpha: f64) -> Result<KissingSolution> {
    check_alpha(alpha)?;
    let (l1, l2, perimeter, branch) = if alpha < UNEQUAL_THRESHOLD - 1e-12 {
        let row2 = unequal_candidates(alpha)?[1];
        debug_assert!(row2.admissible);
        (row2.l1, row2.l2, row2.perimeter, KissingBranch::Unequal(row2.row))
    } else {
        let (l, p) = p3_minimizer(alpha)?;
        (l, l, p, KissingBranch::EqualP3)
    };
    let (bubble_a, bubble_b, geometry_a, geometry_b) = kissing_geometry(l1, l2, alpha)?;
    Ok(KissingSolution { alpha, l1, l2, perimeter, branch, bubble_a, bubble_b, geometry_a, geometry_b })
}

/// `2·3^{1/4}(√2 + √α)`, the kissing optimum for `α < 1/8`.
pub fn small_alpha_closed_form(alpha: f64) -> f64 {
    2.0 * QUARTIC_ROOT3 * (core::f64::consts::SQRT_2 + math::sqrt(alpha))
}

/// Kissing configurations with every free side exposed:
/// `[L₁, L₂, x₁ᴬ, x₂ᴬ, x₁ᴮ, x₂ᴮ]`. The remaining sides follow from closure and
/// the volumes `(1, α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KissingFamily {
    pub alpha: f64,
    pub base: [f64; 6],
}

impl KissingFamily {
    pub fn around(s: &KissingSolution) -> Self {
        KissingFamily {
            alpha: s.alpha,
            base: [s.l1, s.l2, s.bubble_a.sides[0], s.bubble_a.sides[1], s.bubble_b.sides[0], s.bubble_b.sides[1]],
        }
    }
}

impl ParametricFamily for KissingFamily {
    fn base_parameters(&self) -> Vec<f64> {
        self.base.to_vec()
    }

    fn realize(&self, p: &[f64]) -> Result<(PolyChain, PolyChain)> {
        if p.len() != 6 || p.iter().any(|&x| x < 0.0) || p[0] <= 0.0 || p[1] <= 0.0 {
            return Err(Error::Infeasible("parameters outside the family"));
        }
        let sa = sides_from_free(p[2], p[3], p[0], 1.0)?;
        let sb = sides_from_free(p[4], p[5], p[1], self.alpha)?;
        weld(p[0], &sa, p[1], &sb)
    }
}

/// Re-measures a solution with the generic double-bubble perimeter.
pub fn measured_perimeter(s: &KissingSolution) -> Result<f64> {
    Ok(double_bubble_perimeter(&s.geometry_a, &s.geometry_b)?.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexnorm::polygon_area;
    use crate::search::golden_section;
    use proptest::prelude::*;

    #[test]
    fn equal_bases_reduce_to_p3() {
        for alpha in [0.2, 0.6, 1.0] {
            for l in [0.4, 0.9, 1.3] {
                let e = equal_perimeters(l, alpha).unwrap();
                let r = KissingRegime::of(l, l, alpha);
                let branch = match (r.a_six_sided, r.b_six_sided) {
                    (true, true) => e.p3,
                    (true, false) => e.p4.unwrap(),
                    (false, true) => e.p5.unwrap(),
                    (false, false) => e.p6.unwrap(),
                };
                assert!((kissing_perimeter(l, l, alpha).unwrap() - branch).abs() < 1e-13);
                assert!((p3(l, alpha) - e.p3).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn four_sided_equal_branch_matches() {
        // both bubbles four-sided for large L
        let (l, alpha) = (2.5, 0.5);
        let e = equal_perimeters(l, alpha).unwrap();
        assert!((kissing_perimeter(l, l, alpha).unwrap() - e.p6.unwrap()).abs() < 1e-13);
    }

    #[test]
    fn row_two_value() {
        let alpha = 0.05;
        let rows = unequal_candidates(alpha).unwrap();
        let r2 = rows[1];
        assert!(r2.admissible);
        assert!((r2.l1 - math::sqrt(4.0 * SQRT3 / 18.0)).abs() < 1e-15);
        assert!((r2.l2 - math::sqrt(16.0 * SQRT3 * alpha / 9.0)).abs() < 1e-15);
        assert!((r2.perimeter - small_alpha_closed_form(alpha)).abs() < 1e-13);
        assert!((kissing_perimeter(r2.l1, r2.l2, alpha).unwrap() - r2.perimeter).abs() < 1e-13);
    }

    #[test]
    fn rows_admissible_only_for_small_alpha() {
        let rows = unequal_candidates(0.5).unwrap();
        assert!(rows.iter().all(|r| !r.admissible));
        let rows = unequal_candidates(0.05).unwrap();
        let adm: Vec<u8> = rows.iter().filter(|r| r.admissible).map(|r| r.row).collect();
        assert_eq!(adm, [2, 6]);
        assert!((rows[1].perimeter - rows[5].perimeter).abs() < 1e-12);
    }

    #[test]
    fn row_two_collapses_at_one_eighth() {
        let r2 = unequal_candidates(0.125).unwrap()[1];
        let l = math::sqrt(2.0 * SQRT3) / 3.0;
        assert!((r2.l1 - l).abs() < 1e-14);
        assert!((r2.l2 - l).abs() < 1e-14);
        assert!(p3_derivative(l, 0.125).abs() < 1e-12);
    }

    #[test]
    fn minimizer_examples() {
        let (l, _) = p3_minimizer(1.0).unwrap();
        let (g, _) = golden_section(|x| p3(x, 1.0), 0.01, 5.0, 1e-12);
        assert!((l - g).abs() < 1e-8);
        assert!((l - 1.045_910).abs() < 1e-6);
        assert!((p3(l, 1.0) - 6.624_09).abs() < 1e-5);
    }

    #[test]
    fn handoff_is_continuous() {
        let below = kissing_minimum(0.125 - 1e-11).unwrap();
        let at = kissing_minimum(0.125).unwrap();
        assert_eq!(at.branch, KissingBranch::EqualP3);
        assert!(matches!(below.branch, KissingBranch::Unequal(2)));
        assert!((below.perimeter - at.perimeter).abs() < 1e-10);
        assert!((small_alpha_closed_form(0.125) - at.perimeter).abs() < 1e-10);
    }

    #[test]
    fn small_alpha_example() {
        let s = kissing_minimum(1.0 / 16.0).unwrap();
        let expected = 2.0 * QUARTIC_ROOT3 * (core::f64::consts::SQRT_2 + 0.25);
        assert!((s.perimeter - expected).abs() < 1e-12);
    }

    #[test]
    fn geometry_measures_back() {
        for alpha in [0.03, 0.125, 0.4, 1.0] {
            let s = kissing_minimum(alpha).unwrap();
            let m = double_bubble_perimeter(&s.geometry_a, &s.geometry_b).unwrap();
            assert!((m.total - s.perimeter).abs() < 1e-9, "alpha {alpha}");
            assert!((m.joint - s.joint_length()).abs() < 1e-12);
            assert!((polygon_area(&s.geometry_a).unwrap() - 1.0).abs() < 1e-9);
            assert!((polygon_area(&s.geometry_b).unwrap() - alpha).abs() < 1e-9);
            let regime = KissingRegime::of(s.l1, s.l2, alpha);
            assert!(regime.a_six_sided);
        }
    }

    #[test]
    fn degree8_is_even_with_known_lead() {
        let p = build_degree8(1.0).unwrap();
        for k in [1, 3, 5, 7] {
            assert_eq!(p.coeffs[k], 0.0);
        }
        assert!((p.coeffs[8] - 171.0 / 2401.0).abs() < 1e-15);
        let roots = poly_real_roots(&p);
        for r in &roots {
            assert!(roots.iter().any(|s| (s + r).abs() < 1e-9));
        }
    }

    #[test]
    fn degree8_vanishes_at_minimizer() {
        for alpha in [0.05, 0.152, 0.5, 1.0] {
            let p = build_degree8(alpha).unwrap();
            let (l, _) = p3_minimizer(alpha).unwrap();
            assert!(p.eval(l).abs() <= 1e-6 * p.max_abs_coeff());
            let roots = poly_real_roots(&p);
            assert!(roots.iter().any(|r| (r - l).abs() < 1e-8), "alpha {alpha}: {roots:?}");
        }
    }

    #[test]
    fn rejects_bad_alpha() {
        assert!(kissing_minimum(0.0).is_err());
        assert!(kissing_minimum(1.5).is_err());
        assert!(unequal_candidates(-1.0).is_err());
    }

    proptest! {
        #[test]
        fn p3_derivative_increases(alpha in 0.001f64..1.0, a in 0.001f64..8.0, b in 0.001f64..8.0) {
            prop_assume!(a < b);
            prop_assert!(p3_derivative(a, alpha) < p3_derivative(b, alpha));
        }

        #[test]
        fn p3_below_other_equal_branches(alpha in 0.001f64..1.0, l in 0.01f64..6.0) {
            let e = equal_perimeters(l, alpha).unwrap();
            for other in [e.p4, e.p5, e.p6].into_iter().flatten() {
                prop_assert!(e.p3 <= other + 1e-12);
            }
        }

        #[test]
        fn p3_dominates_admissible_rows(alpha in 0.125f64..=1.0) {
            let (_, best) = p3_minimizer(alpha).unwrap();
            for r in unequal_candidates(alpha).unwrap() {
                if r.admissible {
                    prop_assert!(best <= r.perimeter + 1e-12);
                }
            }
        }
    }
}
