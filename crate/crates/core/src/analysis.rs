//! Closed-form logical error rates and code-effective thresholds.
//!
//! The evaluators sum the failure tail `sum_{j > t} ...` directly rather
//! than computing `1 - sum_{j <= t} ...`. All terms are non-negative, so the
//! result keeps full relative precision at small `rho`, where the
//! asymptotic behaviour of interest lives.

use serde::{Deserialize, Serialize};

use crate::channels::Bias;
use crate::codes::SurfaceCode;
use crate::enumeration::binomial;
use crate::error::{Error, Result};

/// Correction radii of a (possibly asymmetric) surface code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub d_x: usize,
    pub d_z: usize,
    /// Generic correction radius `floor((min(d_x, d_z) - 1) / 2)`.
    pub t: usize,
    pub t_x: usize,
    pub t_z: usize,
    /// Generic errors always corrected.
    pub e_g: usize,
    /// Additional pure-Z errors corrected on top of `e_g`.
    pub e_z: usize,
}

impl CodeParams {
    pub fn new(n: usize, d_x: usize, d_z: usize) -> Result<Self> {
        if d_x == 0 || d_z == 0 || n == 0 {
            return Err(Error::InvalidArgument("n and both distances must be positive".into()));
        }
        let t_x = (d_x - 1) / 2;
        let t_z = (d_z - 1) / 2;
        let t = t_x.min(t_z);
        Ok(Self { n, d_x, d_z, t, t_x, t_z, e_g: t, e_z: t_z - t })
    }

    pub fn from_code(code: &SurfaceCode) -> Self {
        Self::new(code.num_qubits(), code.d_x(), code.d_z()).expect("built codes have valid parameters")
    }
}

/// `beta_j` values supplied from `start` on. Below `start` the value is 1
/// (always corrected), above the last supplied index it is 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaVector {
    start: usize,
    values: Vec<f64>,
}

impl BetaVector {
    pub fn new(start: usize, values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidArgument(format!("beta value {v} outside [0, 1]")));
        }
        Ok(Self { start, values })
    }

    /// Builds the vector from `1 - beta_j` values as tabulated by enumeration.
    pub fn from_failure_fractions(start: usize, one_minus: &[f64]) -> Result<Self> {
        Self::new(start, one_minus.iter().map(|f| 1.0 - f).collect())
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn beta(&self, j: usize) -> f64 {
        if j < self.start {
            1.0
        } else {
            self.values.get(j - self.start).copied().unwrap_or(0.0)
        }
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("{name} = {p} is not a probability")));
    }
    Ok(())
}

fn binom_f64(n: usize, k: usize) -> f64 {
    binomial(n as u64, k as u64).expect("binomial fits in u128 for supported n") as f64
}

/// `C(n, j) rho^j (1 - rho)^(n - j)`.
pub fn binomial_pmf(n: usize, j: usize, rho: f64) -> f64 {
    binom_f64(n, j) * rho.powi(j as i32) * (1.0 - rho).powi((n - j) as i32)
}

/// Sum of non-negative terms, smallest first.
fn sum_ascending(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| a.total_cmp(b));
    terms.into_iter().sum()
}

/// Bounded-distance decoder: every pattern of more than `t` errors fails.
pub fn logical_error_bounded(n: usize, t: usize, rho: f64) -> Result<f64> {
    check_probability("rho", rho)?;
    let tail = sum_ascending((t + 1..=n).map(|j| binomial_pmf(n, j, rho)).collect());
    if tail <= 0.5 {
        return Ok(tail);
    }
    // near 1 the complement of the head is the better conditioned form
    let head = sum_ascending((0..=t.min(n)).map(|j| binomial_pmf(n, j, rho)).collect());
    Ok(1.0 - head)
}

/// Bounded-distance decoder correcting `e_g` generic errors plus up to
/// `e_z` further Z errors, with the explicit split of each weight into Z
/// and non-Z letters.
pub fn logical_error_asym(n: usize, e_g: usize, e_z: usize, p_z: f64, rho: f64) -> Result<f64> {
    check_probability("rho", rho)?;
    check_probability("p_z", p_z)?;
    if p_z > rho {
        return Err(Error::InvalidArgument(format!("p_z = {p_z} exceeds rho = {rho}")));
    }
    let other = rho - p_z;
    let mut terms = Vec::new();
    for j in 0..=n {
        let outer = binom_f64(n, j) * (1.0 - rho).powi((n - j) as i32);
        if j > e_g + e_z {
            terms.push(outer * rho.powi(j as i32));
            continue;
        }
        // patterns with more than e_g non-Z letters fail: i < j - e_g Z letters
        for i in 0..j.saturating_sub(e_g) {
            terms.push(outer * binom_f64(j, i) * p_z.powi(i as i32) * other.powi((j - i) as i32));
        }
    }
    Ok(sum_ascending(terms))
}

fn bias_split(a: Bias) -> Result<(f64, f64)> {
    match a {
        Bias::Infinite => Ok((1.0, 0.0)),
        Bias::Finite(a) if a >= 1.0 && a.is_finite() => Ok((a / (a + 2.0), 2.0 / (a + 2.0))),
        Bias::Finite(a) => Err(Error::InvalidArgument(format!("bias A = {a} must be at least 1"))),
    }
}

/// Fraction of weight-`j` patterns with at most `e_g` non-Z letters.
pub fn alpha_coeff(j: usize, e_g: usize, a: Bias) -> Result<f64> {
    let (pz, px) = bias_split(a)?;
    if j <= e_g {
        return Ok(1.0);
    }
    Ok((j - e_g..=j).map(|i| binom_f64(j, i) * pz.powi(i as i32) * px.powi((j - i) as i32)).sum())
}

fn one_minus_alpha(j: usize, e_g: usize, pz: f64, px: f64) -> f64 {
    (0..j.saturating_sub(e_g)).map(|i| binom_f64(j, i) * pz.powi(i as i32) * px.powi((j - i) as i32)).sum()
}

/// Same quantity as [`logical_error_asym`], parametrized by `rho` and the bias.
pub fn logical_error_alpha_form(n: usize, e_g: usize, e_z: usize, rho: f64, a: Bias) -> Result<f64> {
    check_probability("rho", rho)?;
    let (pz, px) = bias_split(a)?;
    let terms = (0..=n)
        .map(|j| {
            let miss = if j <= e_g + e_z { one_minus_alpha(j, e_g, pz, px) } else { 1.0 };
            miss * binomial_pmf(n, j, rho)
        })
        .collect();
    Ok(sum_ascending(terms))
}

/// Leading term `(1 - beta_{t+1}) C(n, t+1) rho^(t+1)`; without `beta_next`
/// every weight-`t+1` pattern is counted as a failure.
pub fn asymptotic_slope_approx(n: usize, t: usize, rho: f64, beta_next: Option<f64>) -> f64 {
    let miss = beta_next.map_or(1.0, |b| 1.0 - b);
    miss * binom_f64(n, t + 1) * rho.powi(t as i32 + 1)
}

/// Leading term of the asymmetric bound: slope `e_g + 1` for finite bias,
/// `e_g + e_z + 1` on the phase-flip channel.
pub fn asymptotic_asym_approx(n: usize, e_g: usize, e_z: usize, rho: f64, a: Bias) -> Result<f64> {
    match a {
        Bias::Infinite => Ok(binom_f64(n, e_g + e_z + 1) * rho.powi((e_g + e_z + 1) as i32)),
        Bias::Finite(_) => {
            let alpha = alpha_coeff(e_g + 1, e_g, a)?;
            Ok((1.0 - alpha) * binom_f64(n, e_g + 1) * rho.powi(e_g as i32 + 1))
        }
    }
}

/// Complete decoder over the depolarizing channel, with `beta_j` the fraction
/// of weight-`j` patterns corrected (1 for `j <= t`).
pub fn logical_error_beta(n: usize, t: usize, rho: f64, betas: &BetaVector) -> Result<f64> {
    check_probability("rho", rho)?;
    Ok(sum_ascending((t + 1..=n).map(|j| (1.0 - betas.beta(j)) * binomial_pmf(n, j, rho)).collect()))
}

/// Complete decoder over the phase-flip channel.
pub fn logical_error_beta_z(n: usize, t_z: usize, p_z: f64, betas_z: &BetaVector) -> Result<f64> {
    logical_error_beta(n, t_z, p_z, betas_z)
}

/// Default search bracket for thresholds.
pub const THRESHOLD_BRACKET: (f64, f64) = (1e-6, 0.5);

const THRESHOLD_GRID: usize = 2000;
const THRESHOLD_RTOL: f64 = 1e-6;

/// Largest `rho` in `[lo, hi]` with `curve(rho) <= 10^-gamma rho`.
///
/// A log-spaced grid locates the highest sign change of
/// `curve(rho) - 10^-gamma rho`, which bisection then refines. If the
/// condition still holds at `hi`, no crossing lies inside the bracket.
pub fn code_effective_threshold_exact(
    curve: impl Fn(f64) -> f64,
    gamma: f64,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    if !(lo > 0.0 && hi > lo && gamma >= 0.0) {
        return Err(Error::InvalidArgument(format!("bad bracket [{lo}, {hi}] or gamma {gamma}")));
    }
    let scale = 10f64.powf(-gamma);
    let below = |rho: f64| curve(rho) <= scale * rho;
    if below(hi) {
        return Err(Error::NoCrossing { lo, hi });
    }
    let ratio = (hi / lo).ln() / THRESHOLD_GRID as f64;
    let mut upper = hi;
    let mut lower = None;
    for k in (0..THRESHOLD_GRID).rev() {
        let rho = lo * (ratio * k as f64).exp();
        if below(rho) {
            lower = Some(rho);
            break;
        }
        upper = rho;
    }
    let mut a = lower.ok_or(Error::NoCrossing { lo, hi })?;
    let mut b = upper;
    while (b - a) > THRESHOLD_RTOL * a {
        let mid = 0.5 * (a + b);
        if below(mid) {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Threshold of the leading asymptotic term alone:
/// `(1 / (10^gamma (1 - beta_{t+1}) C(n, t+1)))^(1/t)`.
pub fn code_effective_threshold_approx(n: usize, t: usize, beta_next: f64, gamma: f64) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    if !(0.0..1.0).contains(&beta_next) {
        return Err(Error::InvalidArgument(format!(
            "beta_{} = {beta_next} must lie in [0, 1); beta = 1 gives no finite threshold",
            t + 1
        )));
    }
    let denom = 10f64.powf(gamma) * (1.0 - beta_next) * binom_f64(n, t + 1);
    Ok(denom.recip().powf(1.0 / t as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn params_of_paper_codes() {
        let p = CodeParams::new(23, 3, 5).unwrap();
        assert_eq!((p.t, p.t_x, p.t_z, p.e_g, p.e_z), (1, 1, 2, 1, 1));
        let p = CodeParams::new(41, 5, 5).unwrap();
        assert_eq!((p.t, p.e_g, p.e_z), (2, 2, 0));
    }

    #[test]
    fn bounded_examples() {
        assert_eq!(logical_error_bounded(13, 1, 0.0).unwrap(), 0.0);
        assert!(close(logical_error_bounded(13, 1, 1.0).unwrap(), 1.0, 1e-15));
        let direct = 1.0 - (0.99f64.powi(13) + 13.0 * 0.01 * 0.99f64.powi(12));
        let v = logical_error_bounded(13, 1, 0.01).unwrap();
        assert!(close(v, 7.249e-3, 1e-6), "{v}");
        assert!(close(v, direct, 1e-14));
        assert!(logical_error_bounded(13, 1, 1.5).is_err());
    }

    #[test]
    fn bounded_is_increasing() {
        let mut prev = 0.0;
        for k in 1..1000 {
            let v = logical_error_bounded(23, 1, k as f64 / 1000.0).unwrap();
            // once the head drops below one ulp of 1.0 the value saturates
            if prev < 1.0 - 1e-12 {
                assert!(v > prev, "k={k}");
            } else {
                assert!(v >= prev);
            }
            prev = v;
        }
    }

    #[test]
    fn small_rho_keeps_precision() {
        let v = logical_error_bounded(13, 1, 1e-9).unwrap();
        assert!(close(v / (78.0 * 1e-18), 1.0, 1e-6), "{v}");
    }

    #[test]
    fn asym_degenerate_cases() {
        for &n in &[13, 23, 41] {
            for &rho in &[0.001, 0.05, 0.3] {
                for &pz in &[0.0, rho / 3.0, rho] {
                    let a = logical_error_asym(n, 1, 0, pz, rho).unwrap();
                    let b = logical_error_bounded(n, 1, rho).unwrap();
                    assert!(close(a, b, 1e-12));
                }
            }
        }
        let rho = 0.07;
        let a = logical_error_asym(23, 1, 1, rho, rho).unwrap();
        assert!(close(a, logical_error_bounded(23, 2, rho).unwrap(), 1e-14));
        assert!(logical_error_asym(23, 1, 1, 0.2, 0.1).is_err());
    }

    #[test]
    fn asym_matches_alpha_form_on_random_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let n = rng.random_range(5..=41);
            let e_g = rng.random_range(0..=2);
            let e_z = rng.random_range(0..=2);
            let rho: f64 = rng.random_range(0.0..0.3);
            let a = [1.0, 2.0, 10.0, 100.0][rng.random_range(0..4)];
            let pz = a * rho / (a + 2.0);
            let x = logical_error_asym(n, e_g, e_z, pz, rho).unwrap();
            let y = logical_error_alpha_form(n, e_g, e_z, rho, Bias::Finite(a)).unwrap();
            assert!(close(x, y, 1e-12), "n={n} e_g={e_g} e_z={e_z} rho={rho} A={a}: {x} vs {y}");
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_coeff(1, 1, Bias::Finite(1.0)).unwrap(), 1.0);
        // A = 1, j = 2, e_g = 1: (2/3)^2 (C(2,1)/2 + C(2,2)/4) = 5/9
        assert!(close(alpha_coeff(2, 1, Bias::Finite(1.0)).unwrap(), 5.0 / 9.0, 1e-15));
        let big = alpha_coeff(2, 1, Bias::Finite(1e6)).unwrap();
        let b = 2.0 / (1e6 + 2.0);
        assert!(close(big, 1.0 - b * b, 1e-12));
        assert!(close(1.0 - big, b * b, 1e-15));
        assert_eq!(alpha_coeff(5, 1, Bias::Infinite).unwrap(), 1.0);
        assert!(alpha_coeff(2, 1, Bias::Finite(0.5)).is_err());
        let c = logical_error_alpha_form(23, 1, 1, 0.05, Bias::Finite(100.0)).unwrap();
        let d = logical_error_asym(23, 1, 1, 100.0 * 0.05 / 102.0, 0.05).unwrap();
        assert!(close(c, d, 1e-12));
        assert_eq!(logical_error_alpha_form(23, 1, 1, 0.0, Bias::Finite(3.0)).unwrap(), 0.0);
    }

    #[test]
    fn alpha_form_depolarizing_is_bounded_form() {
        for &rho in &[0.01, 0.1, 0.2] {
            let a = logical_error_alpha_form(13, 1, 0, rho, Bias::Finite(1.0)).unwrap();
            assert!(close(a, logical_error_bounded(13, 1, rho).unwrap(), 1e-14));
        }
    }

    #[test]
    fn asymptotic_examples() {
        assert!(close(asymptotic_slope_approx(13, 1, 1e-3, Some(0.76)), 1.872e-5, 1e-12));
        assert!(close(asymptotic_slope_approx(13, 1, 1e-3, None), 7.8e-5, 1e-15));
        let slope = (asymptotic_slope_approx(13, 1, 1e-3, None) / asymptotic_slope_approx(13, 1, 1e-4, None)).log10();
        assert!(close(slope, 2.0, 1e-12));
        let inf = asymptotic_asym_approx(23, 1, 1, 1e-3, Bias::Infinite).unwrap();
        assert!(close(inf, 1771.0 * 1e-9, 1e-18));
    }

    #[test]
    fn beta_form_properties() {
        let zero = BetaVector::new(2, vec![]).unwrap();
        for &rho in &[0.0, 0.01, 0.2, 1.0] {
            let a = logical_error_beta(13, 1, rho, &zero).unwrap();
            assert!(close(a, logical_error_bounded(13, 1, rho).unwrap(), 1e-14));
        }
        let paper = BetaVector::new(2, vec![0.76, 0.48, 0.48, 0.46, 0.5]).unwrap();
        for k in 0..=100 {
            let v = logical_error_beta(13, 1, k as f64 / 100.0, &paper).unwrap();
            assert!((0.0..=1.0).contains(&v));
        }
        for &rho in &[1e-4, 1e-3, 3e-3] {
            let full = logical_error_beta(13, 1, rho, &paper).unwrap();
            let approx = asymptotic_slope_approx(13, 1, rho, Some(0.76));
            assert!((full / approx - 1.0).abs() <= 0.05, "rho={rho}");
        }
        let all = BetaVector::new(0, vec![1.0; 24]).unwrap();
        assert_eq!(logical_error_beta_z(23, 2, 0.3, &all).unwrap(), 0.0);
        assert_eq!(logical_error_beta_z(23, 2, 0.0, &paper).unwrap(), 0.0);
        assert!(BetaVector::new(2, vec![1.2]).is_err());
    }

    #[test]
    fn approximate_thresholds() {
        let t13 = code_effective_threshold_approx(13, 1, 0.76, 0.0).unwrap();
        assert!(close(t13, 0.0534, 5e-5), "{t13}");
        let t13g = code_effective_threshold_approx(13, 1, 0.76, 1.0).unwrap();
        assert!(close(t13g, t13 / 10.0, 1e-15));
        let t41 = code_effective_threshold_approx(41, 2, 1.0 - 0.014, 0.0).unwrap();
        assert!(close(t41, 0.0819, 5e-5), "{t41}");
        let t23 = code_effective_threshold_approx(23, 2, 0.92, 0.0).unwrap();
        assert!(close(t23, 0.0840, 5e-5), "{t23}");
        assert!(code_effective_threshold_approx(13, 1, 1.0, 0.0).is_err());
    }

    #[test]
    fn exact_threshold_of_pure_asymptote_matches_closed_form() {
        for (n, t, beta) in [(13, 1, 0.76), (41, 2, 0.986), (23, 2, 0.92)] {
            for gamma in [0.0, 1.0] {
                let curve = |rho: f64| asymptotic_slope_approx(n, t, rho, Some(beta));
                let exact = code_effective_threshold_exact(curve, gamma, 1e-6, 0.5).unwrap();
                let approx = code_effective_threshold_approx(n, t, beta, gamma).unwrap();
                assert!((exact / approx - 1.0).abs() < 2e-6, "{exact} vs {approx}");
            }
        }
    }

    #[test]
    fn exact_threshold_of_beta_curve() {
        let betas = BetaVector::new(2, vec![0.76, 0.48, 0.48, 0.46, 0.5]).unwrap();
        let curve = |rho: f64| logical_error_beta(13, 1, rho, &betas).unwrap();
        let thr = code_effective_threshold_exact(curve, 0.0, 1e-6, 0.5).unwrap();
        assert!((0.04..0.07).contains(&thr), "{thr}");
        let v = curve(thr);
        assert!((v / thr - 1.0).abs() < 1e-5);
    }

    #[test]
    fn no_crossing_is_reported() {
        let err = code_effective_threshold_exact(|rho| rho / 2.0, 0.0, 1e-6, 0.5).unwrap_err();
        assert!(matches!(err, Error::NoCrossing { .. }));
        let err = code_effective_threshold_exact(|rho| 2.0 * rho, 0.0, 1e-6, 0.5).unwrap_err();
        assert!(matches!(err, Error::NoCrossing { .. }));
    }
}
