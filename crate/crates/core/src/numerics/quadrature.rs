//! Deterministic adaptive quadrature.
//!
//! A fixed 15-point Gauss–Kronrod panel rule drives worst-first interval
//! bisection. Evaluation order is a pure function of the inputs, so results
//! are bit-stable across runs.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Default cap on the number of panels before giving up.
pub const DEFAULT_PANEL_BUDGET: usize = 20_000;

/// Size of the uniform subdivision the adaptive pass starts from.
const SEED_PANELS: usize = 64;

// 15-point Kronrod abscissae: positive half of the symmetric rule on
// [-1, 1]. Odd indices carry the embedded 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One evaluated subinterval.
#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl Panel {
    /// A panel narrower than one ulp at its midpoint cannot be bisected into
    /// two distinct intervals.
    fn splittable(&self) -> bool {
        let mid = 0.5 * (self.a + self.b);
        self.a < mid && mid < self.b
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.a == other.a
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap by error; ties broken by left endpoint for a total order.
        self.err
            .total_cmp(&other.err)
            .then(other.a.total_cmp(&self.a))
    }
}

/// Adaptive estimate of ∫ₐᵇ f(x) dx with absolute error target `tol`,
/// using the default panel budget.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate_with_budget(f, a, b, tol, DEFAULT_PANEL_BUDGET)
}

/// As [`integrate`], with an explicit cap on the number of panels. Exceeding
/// the cap yields [`Error::Convergence`] carrying the best estimate so far.
pub fn integrate_with_budget<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "integration bounds must be finite, got [{a}, {b}]"
        )));
    }
    if a > b {
        return Err(Error::Domain(format!(
            "integration bounds must satisfy a <= b, got [{a}, {b}]"
        )));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if a == b {
        return Ok(0.0);
    }

    // Panels at the subdivision floor move to `frozen`; only splittable
    // panels stay on the heap. Seeding with a uniform subdivision keeps
    // narrow features from being invisible to the first panel's nodes.
    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    let mut total_err = 0.0;
    for i in 0..SEED_PANELS {
        let lo = a + (b - a) * i as f64 / SEED_PANELS as f64;
        let hi = if i + 1 == SEED_PANELS {
            b
        } else {
            a + (b - a) * (i + 1) as f64 / SEED_PANELS as f64
        };
        if lo >= hi {
            continue;
        }
        let panel = gk15(&f, lo, hi)?;
        total_err += panel.err;
        if panel.splittable() {
            heap.push(panel);
        } else {
            frozen.push(panel);
        }
    }

    while total_err > tol {
        let Some(worst) = heap.pop() else {
            // Nothing left to refine.
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(&f, worst.a, mid)?;
        let right = gk15(&f, mid, worst.b)?;
        total_err += left.err + right.err - worst.err;
        for panel in [left, right] {
            if panel.splittable() {
                heap.push(panel);
            } else {
                frozen.push(panel);
            }
        }
        if heap.len() + frozen.len() > max_panels {
            return Err(Error::Convergence {
                estimate: stable_sum(&heap, &frozen),
                error_bound: total_err,
            });
        }
    }

    let estimate = stable_sum(&heap, &frozen);
    if total_err > tol {
        return Err(Error::Convergence {
            estimate,
            error_bound: total_err,
        });
    }
    Ok(estimate)
}

/// Sum panel values left to right for a reproducible, well-conditioned total.
fn stable_sum(heap: &BinaryHeap<Panel>, frozen: &[Panel]) -> f64 {
    let mut panels: Vec<&Panel> = heap.iter().chain(frozen.iter()).collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    panels.iter().map(|p| p.value).sum()
}

/// Evaluate the 15-point Gauss–Kronrod rule on [a, b].
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    let mut res_abs = kronrod.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = f_center;

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = kronrod * half;
    if !value.is_finite() {
        return Err(Error::Domain(format!(
            "integrand produced a non-finite value on [{a}, {b}]"
        )));
    }

    let err = rescale_error((kronrod - gauss) * half, res_abs * half, res_asc * half);
    Ok(Panel { a, b, value, err })
}

/// QUADPACK-style error rescaling: sharpens the raw |K15 − G7| difference
/// while keeping a floor at roundoff level.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn linear_integral() {
        let v = integrate(|x| x, 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn triangle_marginal() {
        // ∫₀¹ (1 − q²) dq = 2/3
        let v = integrate(|q| 1.0 - q * q, 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(integrate(|x| x.exp(), 3.0, 3.0, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn narrow_spike_in_wide_interval() {
        // Normalized Gaussian bump of width 1e-3 inside [0, 1]
        let s = 1e-3;
        let c = 0.337;
        let norm = 1.0 / (s * (2.0 * std::f64::consts::PI).sqrt());
        let v = integrate(
            |x| norm * (-0.5 * ((x - c) / s).powi(2)).exp(),
            0.0,
            1.0,
            1e-10,
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn deterministic_across_runs() {
        let run =
            || integrate(|x: f64| (x.sin() + 1.0) * (-x * x).exp(), -3.0, 9.0, 1e-11).unwrap();
        let first = run();
        assert_eq!(first.to_bits(), run().to_bits());
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let res = integrate_with_budget(|x: f64| (1e4 * x).sin().abs(), 0.0, 7.0, 1e-13, 30);
        match res {
            Err(Error::Convergence {
                estimate,
                error_bound,
            }) => {
                assert!(estimate.is_finite());
                assert!(error_bound > 1e-13);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn pole_in_the_interior_fails() {
        let res = integrate(|x| (x - 0.5).recip(), 0.0, 1.0, 1e-10);
        // 1/(x−1/2) is not integrable; either a panel blows up to a
        // non-finite value or the budget runs out.
        assert!(res.is_err());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(integrate(|x| x, 1.0, 0.0, 1e-10).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, -1e-3).is_err());
        assert!(integrate(|x| x, f64::NEG_INFINITY, 1.0, 1e-10).is_err());
    }

    proptest! {
        #[test]
        fn exact_on_quintics(
            c in proptest::array::uniform6(-3.0f64..3.0),
            a in -2.0f64..0.0,
            b in 0.5f64..3.0,
        ) {
            let f = |x: f64| {
                c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck)
            };
            // Antiderivative evaluated exactly
            let anti = |x: f64| {
                let mut acc = 0.0;
                for (k, &ck) in c.iter().enumerate().rev() {
                    acc = acc * x + ck / (k as f64 + 1.0);
                }
                acc * x
            };
            let tol = 1e-9;
            let v = integrate(f, a, b, tol).unwrap();
            let want = anti(b) - anti(a);
            prop_assert!((v - want).abs() <= tol.max(1e-12 * want.abs()));
        }
    }
}
