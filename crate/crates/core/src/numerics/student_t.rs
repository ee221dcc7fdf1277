//! Location-scale Student-t distribution.

use crate::error::{Error, Result};
use crate::numerics::gamma::ln_gamma_raw;
use crate::numerics::{reg_inc_beta, LN_PI};

/// A location-scale Student-t distribution.
///
/// With `z = (x − loc)/scale`, the density is
/// `Γ((ν+1)/2) / (Γ(ν/2) √(νπ) scale) · (1 + z²/ν)^{−(ν+1)/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudentT {
    df: f64,
    loc: f64,
    scale: f64,
}

impl StudentT {
    pub fn new(df: f64, loc: f64, scale: f64) -> Result<Self> {
        if !df.is_finite() || df <= 0.0 {
            return Err(Error::Domain(format!(
                "StudentT requires finite df > 0, got {df}"
            )));
        }
        if !loc.is_finite() {
            return Err(Error::Domain(format!(
                "StudentT requires finite loc, got {loc}"
            )));
        }
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::Domain(format!(
                "StudentT requires finite scale > 0, got {scale}"
            )));
        }
        Ok(Self { df, loc, scale })
    }

    pub fn df(&self) -> f64 {
        self.df
    }

    pub fn loc(&self) -> f64 {
        self.loc
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Natural log of the density at `x`.
    pub fn log_pdf(&self, x: f64) -> f64 {
        let z = (x - self.loc) / self.scale;
        ln_gamma_raw(0.5 * (self.df + 1.0))
            - ln_gamma_raw(0.5 * self.df)
            - 0.5 * (self.df.ln() + LN_PI)
            - self.scale.ln()
            - 0.5 * (self.df + 1.0) * (z * z / self.df).ln_1p()
    }

    /// Density at `x`.
    pub fn pdf(&self, x: f64) -> f64 {
        self.log_pdf(x).exp()
    }

    /// Cumulative distribution function, via the regularized incomplete beta
    /// function. Exactly 1/2 at the location.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        let t = (x - self.loc) / self.scale;
        if t == 0.0 {
            return Ok(0.5);
        }
        let u = self.df / (self.df + t * t);
        let tail = 0.5 * reg_inc_beta(u, 0.5 * self.df, 0.5)?;
        Ok(if t < 0.0 { tail } else { 1.0 - tail })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate;
    use proptest::prelude::*;

    #[test]
    fn cauchy_peak_density() {
        // df=1, loc=0, scale=1 is the standard Cauchy: pdf(0) = 1/π
        let t = StudentT::new(1.0, 0.0, 1.0).unwrap();
        assert!((t.log_pdf(0.0) + std::f64::consts::PI.ln()).abs() < 1e-13);
    }

    #[test]
    fn cauchy_closed_form_off_center() {
        // df=1, loc=5, scale=√200: pdf(15) = √200 / (π (200 + 100))
        let s = 200f64.sqrt();
        let t = StudentT::new(1.0, 5.0, s).unwrap();
        let want = (s / (std::f64::consts::PI * 300.0)).ln();
        assert!((t.log_pdf(15.0) - want).abs() < 1e-12);
        // ≈ −4.199 by hand
        assert!((t.log_pdf(15.0) + 4.199).abs() < 1e-3);
    }

    #[test]
    fn normal_limit_of_log_pdf() {
        // At df = 1e6 the density is within 1e-4 in log of the normal limit
        // at loc ± 2 scale.
        let t = StudentT::new(1e6, 2.5, 3.0).unwrap();
        for &x in &[2.5 - 6.0, 2.5 + 6.0] {
            let z: f64 = (x - 2.5) / 3.0;
            let normal = -0.5 * (2.0 * std::f64::consts::PI).ln() - 3f64.ln() - 0.5 * z * z;
            assert!((t.log_pdf(x) - normal).abs() < 1e-4);
        }
    }

    #[test]
    fn cdf_anchors() {
        let t = StudentT::new(1.0, 7.0, 2.0).unwrap();
        assert_eq!(t.cdf(7.0).unwrap(), 0.5);
        // Cauchy: cdf(loc ± scale) = 3/4, 1/4 since arctan(1) = π/4
        assert!((t.cdf(9.0).unwrap() - 0.75).abs() < 1e-12);
        assert!((t.cdf(5.0).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn cauchy_cdf_matches_arctan_closed_form() {
        // df=1 has the closed form 1/2 + atan(z)/π, an independent route
        // around the incomplete beta function.
        let t = StudentT::new(1.0, 5.0, 200f64.sqrt()).unwrap();
        for k in -60..=60 {
            let x = 5.0 + k as f64;
            let z = (x - t.loc()) / t.scale();
            let want = 0.5 + z.atan() / std::f64::consts::PI;
            let got = t.cdf(x).unwrap();
            assert!((got - want).abs() < 1e-13, "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn cdf_matches_pdf_by_finite_differences() {
        for &df in &[1.0, 3.0, 12.0] {
            let t = StudentT::new(df, 1.0, 4.0).unwrap();
            let h = 1e-3 * t.scale();
            for k in -10..=10 {
                let x = t.loc() + 0.5 * k as f64 * t.scale();
                let slope = (t.cdf(x + h).unwrap() - t.cdf(x - h).unwrap()) / (2.0 * h);
                let pdf = t.pdf(x);
                assert!(
                    ((slope - pdf) / pdf).abs() < 1e-6,
                    "df={df} x={x}: slope {slope} vs pdf {pdf}"
                );
            }
        }
    }

    #[test]
    fn density_integrates_to_one() {
        // Heavy Cauchy tails: mass over ±1000 scale is 1 − 2/(1000π)
        let t = StudentT::new(1.0, 5.0, 200f64.sqrt()).unwrap();
        let lo = t.loc() - 1000.0 * t.scale();
        let hi = t.loc() + 1000.0 * t.scale();
        let mass = integrate(|x| t.pdf(x), lo, hi, 1e-8).unwrap();
        assert!(mass >= 0.9993);
        assert!((mass - (1.0 - 2.0 / (1000.0 * std::f64::consts::PI))).abs() < 7e-4);

        let t = StudentT::new(3.0, -2.0, 1.5).unwrap();
        let mass = integrate(
            |x| t.pdf(x),
            t.loc() - 1000.0 * t.scale(),
            t.loc() + 1000.0 * t.scale(),
            1e-10,
        )
        .unwrap();
        assert!((mass - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(StudentT::new(0.0, 0.0, 1.0).is_err());
        assert!(StudentT::new(1.0, f64::NAN, 1.0).is_err());
        assert!(StudentT::new(1.0, 0.0, 0.0).is_err());
        assert!(StudentT::new(-2.0, 0.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn pdf_symmetric_about_loc(
            df in 0.5f64..50.0,
            loc in -20.0f64..20.0,
            scale in 0.1f64..10.0,
            d in 0.0f64..40.0,
        ) {
            let t = StudentT::new(df, loc, scale).unwrap();
            let lo = t.log_pdf(loc - d);
            let hi = t.log_pdf(loc + d);
            prop_assert!((lo - hi).abs() <= 1e-10 * lo.abs().max(1.0));
        }

        #[test]
        fn cdf_nondecreasing(df in 0.5f64..50.0, scale in 0.1f64..10.0) {
            let t = StudentT::new(df, 0.0, scale).unwrap();
            let mut prev = 0.0;
            for k in -40..=40 {
                let v = t.cdf(k as f64 * 0.25 * scale).unwrap();
                prop_assert!(v + 1e-13 >= prev);
                prev = v;
            }
        }
    }
}
