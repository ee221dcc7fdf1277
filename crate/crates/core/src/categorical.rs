//! Recipient uncertainty about an expert's categorical conclusion.
//!
//! Let `p` and `q` be the probabilities that the expert reports "identified"
//! under H₁ and under H₂. The recipient starts from a uniform prior over the
//! triangle `{0 ≤ q < p ≤ 1}` — the expert is believed to identify true
//! associations more often than false ones, but nothing more. Validation
//! tallies `(k1, n1, k2, n2)` multiply in independent binomial likelihoods,
//! and the conclusion's likelihood ratio is the ratio of posterior means
//! `E[p|D] / E[q|D]` (or of their complements for "not identified").

use crate::error::{Error, Result};
use crate::numerics::{integrate, ln_beta_raw, reg_inc_beta, xlogy};
use std::cell::Cell;

/// Quadrature target for the outer integrals.
const QUAD_TOL: f64 = 1e-10;

/// Grid size used to pre-scale the outer integrand into exp-safe range.
const SCAN_POINTS: usize = 1024;

/// Validation tallies: `k1` "identified" conclusions among `n1` tests run
/// under H₁-true conditions, and `k2` among `n2` under H₂-true conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CategoricalCounts {
    k1: u64,
    n1: u64,
    k2: u64,
    n2: u64,
}

impl CategoricalCounts {
    pub fn new(k1: u64, n1: u64, k2: u64, n2: u64) -> Result<Self> {
        if k1 > n1 || k2 > n2 {
            return Err(Error::Domain(format!(
                "counts require k <= n, got k1={k1}, n1={n1}, k2={k2}, n2={n2}"
            )));
        }
        Ok(Self { k1, n1, k2, n2 })
    }

    pub fn none() -> Self {
        Self {
            k1: 0,
            n1: 0,
            k2: 0,
            n2: 0,
        }
    }

    pub fn k1(&self) -> u64 {
        self.k1
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    pub fn k2(&self) -> u64 {
        self.k2
    }

    pub fn n2(&self) -> u64 {
        self.n2
    }
}

/// The two conclusions the modeled expert can report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConclusionLabel {
    Identified,
    NotIdentified,
}

/// Posterior means `(E[p|D], E[q|D])` under the order-constrained posterior
/// `∝ p^k1 (1−p)^{n1−k1} q^k2 (1−q)^{n2−k2} · 1{p > q}`.
///
/// The inner p-integral reduces to regularized incomplete beta terms:
/// `∫_q^1 p^{a−1}(1−p)^{b−1} dp = B(a, b)·(1 − I_q(a, b))`, leaving 1-D
/// outer integrals in `q` that are evaluated with adaptive quadrature. All
/// kernels are handled in log space so counts in the thousands do not
/// underflow.
pub fn posterior_means(c: &CategoricalCounts) -> Result<(f64, f64)> {
    let a1 = (c.k1 + 1) as f64;
    let b1 = (c.n1 - c.k1 + 1) as f64;
    let a2 = (c.k2 + 1) as f64;
    let b2 = (c.n2 - c.k2 + 1) as f64;

    // log ∫ f_Q(q) Pr[P > q] dq for P ~ Beta(pa, pb), Q ~ Beta(qa, qb);
    // three variants give the normalizer and the p- and q-weighted masses.
    let log_z = log_ordered_mass(a1, b1, a2, b2)?;
    let log_zp = log_ordered_mass(a1 + 1.0, b1, a2, b2)?;
    let log_zq = log_ordered_mass(a1, b1, a2 + 1.0, b2)?;

    // E[p|D] = [B(a1+1,b1)/B(a1,b1)] · Zp/Z, and B(a+1,b)/B(a,b) = a/(a+b).
    let e_p = a1 / (a1 + b1) * (log_zp - log_z).exp();
    let e_q = a2 / (a2 + b2) * (log_zq - log_z).exp();
    Ok((e_p, e_q))
}

/// Likelihood ratio the recipient assigns to hearing the given conclusion:
/// `E[p|D]/E[q|D]` for "identified" and `(1−E[p|D])/(1−E[q|D])` for
/// "not identified" (the forced two-outcome counterpart).
pub fn conclusion_lr(c: &CategoricalCounts, label: ConclusionLabel) -> Result<f64> {
    let (e_p, e_q) = posterior_means(c)?;
    Ok(match label {
        ConclusionLabel::Identified => e_p / e_q,
        ConclusionLabel::NotIdentified => (1.0 - e_p) / (1.0 - e_q),
    })
}

/// One cell of the conclusion-LR grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCell {
    pub n1: u64,
    pub n2: u64,
    pub lr: f64,
}

/// Conclusion LRs over a grid of validation sizes, with `k_i` set to
/// `rate_i · n_i` rounded half away from zero. Cells are produced row-major
/// in `(n1, n2)`.
pub fn figure4_grid(n_values: &[u64], rate1: f64, rate2: f64) -> Result<Vec<GridCell>> {
    for (name, r) in [("rate1", rate1), ("rate2", rate2)] {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::Domain(format!("{name} must lie in [0, 1], got {r}")));
        }
    }
    let k_for = |rate: f64, n: u64| -> u64 {
        // f64::round ties half away from zero
        ((rate * n as f64).round() as u64).min(n)
    };
    let mut cells = Vec::with_capacity(n_values.len() * n_values.len());
    for &n1 in n_values {
        for &n2 in n_values {
            let counts = CategoricalCounts::new(k_for(rate1, n1), n1, k_for(rate2, n2), n2)?;
            cells.push(GridCell {
                n1,
                n2,
                lr: conclusion_lr(&counts, ConclusionLabel::Identified)?,
            });
        }
    }
    Ok(cells)
}

/// `log Pr[P > Q]` for independent `P ~ Beta(pa, pb)`, `Q ~ Beta(qa, qb)`,
/// up to the constant `log B(pa, pb) B(qa, qb)` cancelling in all ratios —
/// i.e. the log of `∫₀¹ BetaPdf(q; qa, qb) · Pr[Beta(pa, pb) > q] dq`.
fn log_ordered_mass(pa: f64, pb: f64, qa: f64, qb: f64) -> Result<f64> {
    let log_q_norm = ln_beta_raw(qa, qb);
    let failure: Cell<Option<Error>> = Cell::new(None);

    let log_h = |q: f64| -> f64 {
        let survival = match log_beta_survival(q, pa, pb) {
            Ok(s) => s,
            Err(e) => {
                failure.set(Some(e));
                return f64::NAN;
            }
        };
        xlogy(qa - 1.0, q) + xlogy(qb - 1.0, 1.0 - q) - log_q_norm + survival
    };

    // Pre-scale by the grid maximum so exp() stays in range; the quadrature
    // then sees an O(1) integrand whatever the counts.
    let mut peak = f64::NEG_INFINITY;
    for i in 0..=SCAN_POINTS {
        let q = i as f64 / SCAN_POINTS as f64;
        let v = log_h(q);
        if let Some(e) = failure.take() {
            return Err(e);
        }
        if v > peak {
            peak = v;
        }
    }
    if peak == f64::NEG_INFINITY {
        return Err(Error::Domain(
            "ordered posterior mass vanished everywhere on the scan grid".into(),
        ));
    }

    let result = integrate(|q| (log_h(q) - peak).exp(), 0.0, 1.0, QUAD_TOL);
    // A special-function failure inside the integrand surfaces as a
    // non-finite panel; report the root cause instead.
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(peak + result?.ln())
}

/// `ln Pr[Beta(a, b) > q]`, computed from whichever tail of the incomplete
/// beta function is small, so the log stays accurate out to extreme tails.
fn log_beta_survival(q: f64, a: f64, b: f64) -> Result<f64> {
    if q <= 0.0 {
        return Ok(0.0);
    }
    if q >= 1.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let lower = reg_inc_beta(q, a, b)?;
    if lower <= 0.5 {
        Ok((-lower).ln_1p())
    } else {
        Ok(reg_inc_beta(1.0 - q, b, a)?.ln())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn means(k1: u64, n1: u64, k2: u64, n2: u64) -> (f64, f64) {
        posterior_means(&CategoricalCounts::new(k1, n1, k2, n2).unwrap()).unwrap()
    }

    fn lr_identified(k1: u64, n1: u64, k2: u64, n2: u64) -> f64 {
        conclusion_lr(
            &CategoricalCounts::new(k1, n1, k2, n2).unwrap(),
            ConclusionLabel::Identified,
        )
        .unwrap()
    }

    #[test]
    fn no_data_recovers_triangle_prior_means() {
        let (e_p, e_q) = means(0, 0, 0, 0);
        assert!((e_p - 2.0 / 3.0).abs() < 1e-9);
        assert!((e_q - 1.0 / 3.0).abs() < 1e-9);
        assert!((lr_identified(0, 0, 0, 0) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn one_identified_test_by_exact_integration() {
        // Posterior ∝ p·1{p>q}: E[p] = (1/4)/(1/3) = 3/4 and
        // E[q] = (1/8)/(1/3) = 3/8 by direct polynomial integrals.
        let (e_p, e_q) = means(1, 1, 0, 0);
        assert!((e_p - 0.75).abs() < 1e-9);
        assert!((e_q - 0.375).abs() < 1e-9);
        assert!((lr_identified(1, 1, 0, 0) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn one_h2_test_not_identified_by_exact_integration() {
        // Posterior ∝ (1−q)·1{p>q}: E[p] = (5/24)/(1/3) = 5/8 and
        // E[q] = (1/12)/(1/3) = 1/4.
        let (e_p, e_q) = means(0, 0, 0, 1);
        assert!((e_p - 0.625).abs() < 1e-9);
        assert!((e_q - 0.25).abs() < 1e-9);
    }

    #[test]
    fn not_identified_uses_complements() {
        let counts = CategoricalCounts::none();
        let lr = conclusion_lr(&counts, ConclusionLabel::NotIdentified).unwrap();
        assert!((lr - 0.5).abs() < 1e-9);
    }

    #[test]
    fn triangle_mirror_symmetry() {
        // Swapping roles (k1,n1)↔(k2,n2) with k→n−k on both sides mirrors
        // the triangle through (p,q)→(1−q,1−p), so
        // lr(identified; swapped) = 1 / lr(not_identified; original).
        for &(k1, n1, k2, n2) in &[(0u64, 0u64, 0u64, 0u64), (1, 1, 0, 0)] {
            let original = CategoricalCounts::new(k1, n1, k2, n2).unwrap();
            let swapped = CategoricalCounts::new(n2 - k2, n2, n1 - k1, n1).unwrap();
            let lhs = conclusion_lr(&swapped, ConclusionLabel::Identified).unwrap();
            let rhs = 1.0 / conclusion_lr(&original, ConclusionLabel::NotIdentified).unwrap();
            assert!(
                (lhs - rhs).abs() < 1e-8,
                "({k1},{n1},{k2},{n2}): {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn large_counts_approach_rate_ratio() {
        // 95% / 5% over 10⁴ tests each: means near the observed rates and
        // an LR a touch under 19.
        let (e_p, e_q) = means(9500, 10_000, 500, 10_000);
        assert!((e_p - 0.95).abs() < 2e-3, "E_p = {e_p}");
        assert!((e_q - 0.05).abs() < 2e-3, "E_q = {e_q}");
        let lr = lr_identified(9500, 10_000, 500, 10_000);
        assert!(lr > 18.0 && lr < 19.5, "lr = {lr}");
    }

    #[test]
    fn grid_with_single_zero_cell() {
        let cells = figure4_grid(&[0], 0.95, 0.05).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!((cells[0].n1, cells[0].n2), (0, 0));
        assert!((cells[0].lr - 2.0).abs() < 1e-9);
    }

    #[test]
    fn grid_is_row_major_and_diagonal_monotone() {
        let ns = [0u64, 20, 100, 1000];
        let cells = figure4_grid(&ns, 0.95, 0.05).unwrap();
        assert_eq!(cells.len(), 16);
        for (idx, cell) in cells.iter().enumerate() {
            assert_eq!(cell.n1, ns[idx / 4]);
            assert_eq!(cell.n2, ns[idx % 4]);
        }
        let diag: Vec<f64> = (0..4).map(|i| cells[i * 4 + i].lr).collect();
        for w in diag.windows(2) {
            assert!(w[1] >= w[0], "diagonal not nondecreasing: {diag:?}");
        }
        assert!(diag[3] > 15.0 && diag[3] < 19.0);
    }

    #[test]
    fn rounding_is_half_away_from_zero() {
        // n=10 at 5%: 0.5 → 1, not 0
        let cells = figure4_grid(&[10], 0.95, 0.05).unwrap();
        let direct = lr_identified(10, 10, 1, 10);
        assert!((cells[0].lr - direct).abs() < 1e-12);
    }

    #[test]
    fn rejects_inconsistent_counts() {
        assert!(CategoricalCounts::new(3, 2, 0, 0).is_err());
        assert!(CategoricalCounts::new(0, 0, 5, 4).is_err());
        assert!(figure4_grid(&[1], 1.5, 0.05).is_err());
        assert!(figure4_grid(&[1], 0.95, -0.1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn means_ordered_and_interior(
            k1 in 0u64..=30,
            n1 in 0u64..=30,
            k2 in 0u64..=30,
            n2 in 0u64..=30,
        ) {
            let k1 = k1.min(n1);
            let k2 = k2.min(n2);
            let (e_p, e_q) = means(k1, n1, k2, n2);
            prop_assert!(e_p > 0.0 && e_p < 1.0);
            prop_assert!(e_q > 0.0 && e_q < 1.0);
            prop_assert!(e_p > e_q, "E_p={e_p} E_q={e_q} for ({k1},{n1},{k2},{n2})");
            let counts = CategoricalCounts::new(k1, n1, k2, n2).unwrap();
            let ident = conclusion_lr(&counts, ConclusionLabel::Identified).unwrap();
            let not_ident = conclusion_lr(&counts, ConclusionLabel::NotIdentified).unwrap();
            prop_assert!(ident > 1.0);
            prop_assert!(not_ident < 1.0);
        }
    }
}
