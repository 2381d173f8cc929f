//! Closed-form SNR and sensitivity of SOS, SCC, and AID readout.
//!
//! Sensitivities are time-normalized inverse signal-to-noise ratios in units
//! of √s; smaller is better. The SCC and AID expressions are built on the
//! compound statistics from [`crate::stochastics`], so the trap-activation
//! variances entering the formulas here are the exact (enumeration-checked)
//! ones.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stochastics::{
    aid_trap_activation, photon_compound, scc_trap_activation, BernoulliVar, PoissonVar,
    ReadoutStatistics, StochasticsError,
};

#[derive(Debug, Error, PartialEq)]
pub enum SensitivityError {
    #[error("zero qubit brightness: k0 must be > 0")]
    ZeroBrightness,
    #[error("zero readout contrast: mu must be > 0")]
    ZeroContrast,
    #[error("zero spin contrast: q0 and q1 must differ")]
    ZeroSpinContrast,
    #[error("no carrier capture: lambda must be > 0")]
    NoCarrierCapture,
    #[error("zero ancilla brightness: ka must be > 0")]
    ZeroAncillaBrightness,
    #[error("invalid timing: {0}")]
    InvalidTiming(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Stochastics(#[from] StochasticsError),
}

/// Per-cycle time budget of a readout protocol, in seconds.
///
/// The SOS cycle spends `t_init + t_read + t_evolve`. The SCC cycle reuses
/// `t_init`/`t_read` for qubit charge initialization and readout and adds
/// the conversion pulse: `t_init + t_read + t_scc + t_evolve`. The AID cycle
/// replaces per-cycle qubit readout with one ensemble charge initialization
/// and readout per experiment, amortized over `repeats`:
/// `t_scc + t_evolve + (t_ancilla_init + t_ancilla_read)/repeats`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TimingBudget {
    /// Qubit spin (or charge) initialization time per cycle, `t_i`.
    pub t_init: f64,
    /// Qubit readout time per cycle, `t_r`.
    pub t_read: f64,
    /// Spin evolution time per cycle, `t_e`.
    pub t_evolve: f64,
    /// Spin-to-charge conversion pulse duration, `t_scc`.
    pub t_scc: f64,
    /// Ancilla ensemble charge initialization time per experiment, `t'_ia`.
    pub t_ancilla_init: f64,
    /// Ancilla ensemble charge readout time per experiment, `t'_ra`.
    pub t_ancilla_read: f64,
    /// Repeat count `n` over which the ancilla times amortize.
    pub repeats: u64,
}

impl Default for TimingBudget {
    fn default() -> Self {
        Self {
            t_init: 1e-6,
            t_read: 300e-9,
            t_evolve: 15e-6,
            t_scc: 100e-9,
            t_ancilla_init: 5e-3,
            t_ancilla_read: 5e-3,
            repeats: 10_000,
        }
    }
}

impl TimingBudget {
    pub fn validate(&self) -> Result<(), SensitivityError> {
        let fields = [
            ("t_init", self.t_init),
            ("t_read", self.t_read),
            ("t_evolve", self.t_evolve),
            ("t_scc", self.t_scc),
            ("t_ancilla_init", self.t_ancilla_init),
            ("t_ancilla_read", self.t_ancilla_read),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v >= 0.0) {
                return Err(SensitivityError::InvalidTiming(format!(
                    "{name} = {v} must be finite and >= 0"
                )));
            }
        }
        if self.repeats < 1 {
            return Err(SensitivityError::InvalidTiming("repeats must be >= 1".into()));
        }
        Ok(())
    }

    /// SOS time per repeat: `t_i + t_r + t_e`.
    pub fn t_sos(&self) -> f64 {
        self.t_init + self.t_read + self.t_evolve
    }

    /// SCC time per repeat: `t_i + t_r + t_scc + t_e`.
    pub fn t_scc_total(&self) -> f64 {
        self.t_init + self.t_read + self.t_scc + self.t_evolve
    }

    /// Average AID time per repeat for `self.repeats` repeats.
    pub fn t_aid(&self) -> f64 {
        self.t_aid_for(self.repeats)
    }

    /// Average AID time per repeat when the experiment runs `n` repeats:
    /// `t_scc + t_e + (t'_ia + t'_ra)/n`.
    pub fn t_aid_for(&self, n: u64) -> f64 {
        self.t_scc + self.t_evolve + (self.t_ancilla_init + self.t_ancilla_read) / n as f64
    }

    /// Scale every per-cycle time component by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            t_init: self.t_init * factor,
            t_read: self.t_read * factor,
            t_evolve: self.t_evolve * factor,
            t_scc: self.t_scc * factor,
            t_ancilla_init: self.t_ancilla_init * factor,
            t_ancilla_read: self.t_ancilla_read * factor,
            repeats: self.repeats,
        }
    }
}

/// Photon and conversion-probability parameters of the qubit/ancilla pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QubitReadoutParams {
    /// Mean photons per SOS readout with the qubit in |0>.
    pub k0_mean: f64,
    /// SOS readout contrast mu, with k1 = (1 - mu) k0.
    pub contrast_sos: f64,
    /// Ionization probability per conversion pulse for spin |0>.
    pub q0_mean: f64,
    /// Ionization probability per conversion pulse for spin |1>.
    pub q1_mean: f64,
    /// Probability the qubit starts in the spin-active charge state.
    pub p_mean: f64,
    /// Probability of wrong-way recharge during the conversion pulse.
    pub r_mean: f64,
    /// Mean background carriers injected per cycle.
    pub w_mean: f64,
    /// Fraction of carriers captured by the ancilla ensemble.
    pub lambda_mean: f64,
    /// Mean photons per activated ancilla during charge readout.
    pub ka_mean: f64,
}

impl Default for QubitReadoutParams {
    fn default() -> Self {
        Self {
            k0_mean: 0.075,
            contrast_sos: 0.3,
            q0_mean: 0.8,
            q1_mean: 0.5,
            p_mean: 1.0,
            r_mean: 0.0,
            w_mean: 0.0,
            lambda_mean: 1.0,
            ka_mean: 22.0,
        }
    }
}

impl QubitReadoutParams {
    pub fn validate(&self) -> Result<(), SensitivityError> {
        let probs = [
            ("contrast_sos", self.contrast_sos),
            ("q0_mean", self.q0_mean),
            ("q1_mean", self.q1_mean),
            ("p_mean", self.p_mean),
            ("r_mean", self.r_mean),
            ("lambda_mean", self.lambda_mean),
        ];
        for (name, v) in probs {
            if !(0.0..=1.0).contains(&v) || !v.is_finite() {
                return Err(SensitivityError::InvalidParameter(format!(
                    "{name} = {v} outside [0, 1]"
                )));
            }
        }
        for (name, v) in [
            ("k0_mean", self.k0_mean),
            ("w_mean", self.w_mean),
            ("ka_mean", self.ka_mean),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(SensitivityError::InvalidParameter(format!(
                    "{name} = {v} must be finite and >= 0"
                )));
            }
        }
        Ok(())
    }

    /// Mean photons per SOS readout with the qubit in |1>.
    pub fn k1_mean(&self) -> f64 {
        (1.0 - self.contrast_sos) * self.k0_mean
    }

    fn spin_contrast(&self) -> Result<f64, SensitivityError> {
        let d = (self.q0_mean - self.q1_mean).abs();
        if d == 0.0 {
            return Err(SensitivityError::ZeroSpinContrast);
        }
        Ok(d)
    }

    /// Trap-activation statistics `v_j` for the SCC chain.
    pub fn scc_activation(&self, j: u8) -> Result<ReadoutStatistics, SensitivityError> {
        let q = if j == 0 { self.q0_mean } else { self.q1_mean };
        Ok(scc_trap_activation(
            BernoulliVar::new(self.p_mean)?,
            BernoulliVar::new(q)?,
            BernoulliVar::new(self.r_mean)?,
        ))
    }

    /// Trap-activation statistics `v_j` for the AID chain.
    pub fn aid_activation(&self, j: u8) -> Result<ReadoutStatistics, SensitivityError> {
        let q = if j == 0 { self.q0_mean } else { self.q1_mean };
        Ok(aid_trap_activation(
            BernoulliVar::new(self.p_mean)?,
            BernoulliVar::new(q)?,
            PoissonVar::new(self.w_mean)?,
        ))
    }
}

/// Best-case SOS signal-to-noise ratio after `n` repeats:
/// `sqrt(n) |k0 - k1| / sqrt(k0 + k1)` with Poisson photon variances.
pub fn snr_sos(params: &QubitReadoutParams, n: u64) -> Result<f64, SensitivityError> {
    if params.k0_mean <= 0.0 {
        return Err(SensitivityError::ZeroBrightness);
    }
    let (k0, k1) = (params.k0_mean, params.k1_mean());
    Ok((n as f64).sqrt() * (k0 - k1).abs() / (k0 + k1).sqrt())
}

/// SOS sensitivity: the exact form and the shot-noise approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SosSensitivity {
    /// `sqrt(t_sos (k0 + k1)) / |k0 - k1|`
    pub exact: f64,
    /// `sqrt(2) / (mu sqrt(k0)) * sqrt(t_sos)`
    pub approximate: f64,
}

pub fn eta_sos(
    params: &QubitReadoutParams,
    timing: &TimingBudget,
) -> Result<SosSensitivity, SensitivityError> {
    if params.k0_mean <= 0.0 {
        return Err(SensitivityError::ZeroBrightness);
    }
    if params.contrast_sos <= 0.0 {
        return Err(SensitivityError::ZeroContrast);
    }
    let (k0, k1) = (params.k0_mean, params.k1_mean());
    let t = timing.t_sos();
    Ok(SosSensitivity {
        exact: (t * (k0 + k1)).sqrt() / (k0 - k1).abs(),
        approximate: 2f64.sqrt() / (params.contrast_sos * k0.sqrt()) * t.sqrt(),
    })
}

/// SCC sensitivity with local optical readout of the qubit charge state.
///
/// `sqrt(t_scc_total) * [(k^2 + k)(d2v0 + d2v1) + k(v0^2 + v1^2)]^(1/2)
///  / (p |q0 - q1| k)` with `k = k0_mean` and `v_j` from the SCC
/// trap-activation compound.
pub fn eta_scc(
    params: &QubitReadoutParams,
    timing: &TimingBudget,
) -> Result<f64, SensitivityError> {
    if params.p_mean <= 0.0 {
        return Err(SensitivityError::InvalidParameter(
            "p_mean must be > 0".into(),
        ));
    }
    if params.k0_mean <= 0.0 {
        return Err(SensitivityError::ZeroBrightness);
    }
    let dq = params.spin_contrast()?;
    let k = params.k0_mean;
    let v0 = params.scc_activation(0)?;
    let v1 = params.scc_activation(1)?;
    let noise = (k * k + k) * (v0.variance + v1.variance)
        + k * (v0.mean * v0.mean + v1.mean * v1.mean);
    Ok(timing.t_scc_total().sqrt() * noise.sqrt() / (params.p_mean * dq * k))
}

/// AID sensitivity after `timing.repeats` repeats.
///
/// `sqrt(t_aid) * (sum_j [d2(v_j ka) + ka^2 <v_j>^2 (1 - lambda)])^(1/2)
///  / (sqrt(lambda) ka p |q0 - q1|)` with `v_j` from the AID
/// trap-activation compound and `d2(v_j ka)` from the photon compound.
pub fn eta_aid(
    params: &QubitReadoutParams,
    timing: &TimingBudget,
) -> Result<f64, SensitivityError> {
    eta_aid_for(params, timing, timing.repeats)
}

/// [`eta_aid`] with an explicit repeat count for `t_aid`.
pub fn eta_aid_for(
    params: &QubitReadoutParams,
    timing: &TimingBudget,
    n: u64,
) -> Result<f64, SensitivityError> {
    if params.lambda_mean <= 0.0 {
        return Err(SensitivityError::NoCarrierCapture);
    }
    if params.p_mean <= 0.0 {
        return Err(SensitivityError::InvalidParameter(
            "p_mean must be > 0".into(),
        ));
    }
    if params.ka_mean <= 0.0 {
        return Err(SensitivityError::ZeroAncillaBrightness);
    }
    let dq = params.spin_contrast()?;
    let ka = PoissonVar::new(params.ka_mean)?;
    let lambda = params.lambda_mean;
    let mut noise = 0.0;
    for j in 0..2u8 {
        let v = params.aid_activation(j)?;
        let photons = photon_compound(v, ka);
        noise += photons.variance + ka.mean() * ka.mean() * v.mean * v.mean * (1.0 - lambda);
    }
    Ok(timing.t_aid_for(n).sqrt() * noise.sqrt()
        / (lambda.sqrt() * ka.mean() * params.p_mean * dq))
}

/// Bright-ancilla limit of the AID sensitivity (`ka -> inf`, `lambda ~ p ~ 1`):
/// `sqrt(t_aid) sqrt(q0(1-q0) + q1(1-q1)) / |q0 - q1|`.
pub fn eta_aid_limit_high_ka(
    params: &QubitReadoutParams,
    timing: &TimingBudget,
) -> Result<f64, SensitivityError> {
    let dq = params.spin_contrast()?;
    let (q0, q1) = (params.q0_mean, params.q1_mean);
    Ok(timing.t_aid().sqrt() * (q0 * (1.0 - q0) + q1 * (1.0 - q1)).sqrt() / dq)
}

/// Dim-ancilla limit of the AID sensitivity (vanishing conversion variance):
/// `sqrt(t_aid) sqrt(q0^2 + q1^2) / (|q0 - q1| sqrt(ka))`.
pub fn eta_aid_limit_low_ka(
    params: &QubitReadoutParams,
    timing: &TimingBudget,
) -> Result<f64, SensitivityError> {
    let dq = params.spin_contrast()?;
    if params.ka_mean <= 0.0 {
        return Err(SensitivityError::ZeroAncillaBrightness);
    }
    let (q0, q1) = (params.q0_mean, params.q1_mean);
    Ok(timing.t_aid().sqrt() * (q0 * q0 + q1 * q1).sqrt() / (dq * params.ka_mean.sqrt()))
}

/// Background-dominated limit (`lambda << 1`, `w >> p q_j`):
/// `sqrt(2 t_aid) w / (sqrt(lambda) p |q0 - q1|)`.
pub fn eta_aid_background_limit(
    params: &QubitReadoutParams,
    timing: &TimingBudget,
) -> Result<f64, SensitivityError> {
    if params.lambda_mean <= 0.0 {
        return Err(SensitivityError::NoCarrierCapture);
    }
    let dq = params.spin_contrast()?;
    Ok((2.0 * timing.t_aid()).sqrt() * params.w_mean
        / (params.lambda_mean.sqrt() * params.p_mean * dq))
}

/// Outcome of the AID-vs-SOS criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AidVersusSos {
    /// `mu^2 k0 (1 + (t'_ia + t'_ra)/(n t_c))` with `t_c = t_i + t_r + t_e`.
    pub lhs: f64,
    /// `|q0 - q1|^2 / (q0(1-q0) + q1(1-q1))`.
    pub rhs: f64,
    /// `lhs / rhs`; values below 1 mean AID wins.
    pub ratio: f64,
    pub aid_wins: bool,
}

/// Criterion for AID outperforming SOS in the bright-ancilla regime
/// (`lambda ~ p ~ 1`, `t_i + t_r + t_e ~ t_scc + t_e`).
///
/// Algebra: with `eta_SOS^2 = 2 t_c / (mu^2 k0)` (shot-noise form) and
/// `eta_AID^2 = t_aid (q0(1-q0) + q1(1-q1)) / (q0 - q1)^2` (bright-ancilla
/// form), `lhs < rhs` is equivalent to `eta_AID^2 < eta_SOS^2 / 2`: the
/// criterion demands a factor-of-two power margin over bare
/// `eta_AID < eta_SOS`, so a `true` here is conservative.
pub fn aid_beats_sos(
    params: &QubitReadoutParams,
    timing: &TimingBudget,
) -> Result<AidVersusSos, SensitivityError> {
    let t_c = timing.t_sos();
    if t_c <= 0.0 {
        return Err(SensitivityError::InvalidTiming(
            "t_i + t_r + t_e must be > 0".into(),
        ));
    }
    let overhead =
        (timing.t_ancilla_init + timing.t_ancilla_read) / (timing.repeats as f64 * t_c);
    let mu = params.contrast_sos;
    let lhs = mu * mu * params.k0_mean * (1.0 + overhead);
    let (q0, q1) = (params.q0_mean, params.q1_mean);
    let denom = q0 * (1.0 - q0) + q1 * (1.0 - q1);
    let dq2 = (q0 - q1) * (q0 - q1);
    // Perfect single-shot conversion (q0, q1 in {0,1}, q0 != q1) has zero
    // conversion variance: AID wins whenever there is any contrast.
    let rhs = if denom == 0.0 {
        if dq2 > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    } else {
        dq2 / denom
    };
    let aid_wins = lhs < rhs;
    let ratio = if rhs == 0.0 { f64::INFINITY } else { lhs / rhs };
    Ok(AidVersusSos {
        lhs,
        rhs,
        ratio,
        aid_wins,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn note3_params() -> QubitReadoutParams {
        QubitReadoutParams::default()
    }

    fn unit_timing() -> TimingBudget {
        // One second per cycle component of interest, no ancilla overhead.
        TimingBudget {
            t_init: 0.5,
            t_read: 0.25,
            t_evolve: 0.25,
            t_scc: 1.0,
            t_ancilla_init: 0.0,
            t_ancilla_read: 0.0,
            repeats: 1,
        }
    }

    #[test]
    fn snr_sos_note3_values() {
        let snr = snr_sos(&note3_params(), 10_000).unwrap();
        assert_relative_eq!(snr, 0.0225 * 100.0 / 0.1275f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(snr, 6.3013, epsilon = 1e-4);
    }

    #[test]
    fn snr_sos_edge_cases() {
        let mut p = note3_params();
        p.contrast_sos = 0.0;
        assert_abs_diff_eq!(snr_sos(&p, 1234).unwrap(), 0.0);

        p = QubitReadoutParams {
            k0_mean: 1.0,
            contrast_sos: 1.0,
            ..note3_params()
        };
        assert_abs_diff_eq!(snr_sos(&p, 1).unwrap(), 1.0, epsilon = 1e-15);

        p.k0_mean = 0.0;
        assert_eq!(snr_sos(&p, 1), Err(SensitivityError::ZeroBrightness));
    }

    #[test]
    fn eta_sos_note3_values() {
        let t = unit_timing(); // t_sos = 1 s
        let eta = eta_sos(&note3_params(), &t).unwrap();
        assert_relative_eq!(eta.exact, 0.1275f64.sqrt() / 0.0225, epsilon = 1e-12);
        assert_relative_eq!(eta.exact, 15.87, epsilon = 1e-3);
        assert_relative_eq!(
            eta.approximate,
            2f64.sqrt() / (0.3 * 0.075f64.sqrt()),
            epsilon = 1e-12
        );
        assert_relative_eq!(eta.approximate, 17.21, epsilon = 1e-3);
    }

    #[test]
    fn eta_sos_time_scaling_and_unit_case() {
        let p = note3_params();
        let t = unit_timing();
        let eta1 = eta_sos(&p, &t).unwrap().exact;
        let eta4 = eta_sos(&p, &t.scaled(4.0)).unwrap().exact;
        assert_relative_eq!(eta4, 2.0 * eta1, epsilon = 1e-12);

        let unit = QubitReadoutParams {
            k0_mean: 1.0,
            contrast_sos: 1.0,
            ..p
        };
        assert_relative_eq!(eta_sos(&unit, &t).unwrap().exact, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eta_sos_degenerate_inputs() {
        let t = unit_timing();
        let mut p = note3_params();
        p.contrast_sos = 0.0;
        assert_eq!(eta_sos(&p, &t), Err(SensitivityError::ZeroContrast));
        p = note3_params();
        p.k0_mean = 0.0;
        assert_eq!(eta_sos(&p, &t), Err(SensitivityError::ZeroBrightness));
    }

    #[test]
    fn eta_scc_bright_limit() {
        let mut p = note3_params();
        p.k0_mean = 1e6;
        let t = TimingBudget {
            t_init: 0.0,
            t_read: 0.0,
            t_evolve: 0.0,
            t_scc: 1.0,
            ..unit_timing()
        };
        let eta = eta_scc(&p, &t).unwrap();
        let limit = 0.41f64.sqrt() / 0.3;
        assert_relative_eq!(eta, limit, max_relative = 1e-3);
    }

    #[test]
    fn eta_scc_perfect_conversion_finite() {
        let p = QubitReadoutParams {
            q0_mean: 1.0,
            q1_mean: 0.0,
            k0_mean: 1e6,
            ..note3_params()
        };
        let t = unit_timing();
        let eta = eta_scc(&p, &t).unwrap();
        // delta^2 v_j = 0; noise is set by <v_j> alone: eta = sqrt(t/k).
        assert_relative_eq!(eta, (t.t_scc_total() / 1e6).sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn eta_scc_monotone_in_brightness() {
        let t = unit_timing();
        let mut last = f64::INFINITY;
        for &k in &[0.075, 0.75, 7.5, 75.0, 7.5e4, 7.5e6] {
            let p = QubitReadoutParams {
                k0_mean: k,
                ..note3_params()
            };
            let eta = eta_scc(&p, &t).unwrap();
            assert!(eta < last, "eta_scc must decrease with k; k={k}");
            last = eta;
        }
        let limit = (t.t_scc_total()).sqrt() * 0.41f64.sqrt() / 0.3;
        assert!(last > limit);
    }

    #[test]
    fn eta_scc_degenerate_contrast() {
        let p = QubitReadoutParams {
            q1_mean: 0.8,
            ..note3_params()
        };
        assert_eq!(
            eta_scc(&p, &unit_timing()),
            Err(SensitivityError::ZeroSpinContrast)
        );
    }

    #[test]
    fn eta_aid_recovers_bright_limit() {
        let p = QubitReadoutParams {
            ka_mean: 1e6,
            ..note3_params()
        };
        let t = unit_timing();
        let eta = eta_aid(&p, &t).unwrap();
        let limit = eta_aid_limit_high_ka(&p, &t).unwrap();
        assert_relative_eq!(eta, limit, max_relative = 1e-3);
    }

    #[test]
    fn eta_aid_recovers_dim_limit_for_boolean_conversion() {
        for &ka in &[1.0, 22.0, 400.0] {
            let p = QubitReadoutParams {
                q0_mean: 1.0,
                q1_mean: 0.0,
                ka_mean: ka,
                ..note3_params()
            };
            let t = unit_timing();
            let eta = eta_aid(&p, &t).unwrap();
            let limit = eta_aid_limit_low_ka(&p, &t).unwrap();
            assert_relative_eq!(eta, limit, epsilon = 1e-12);
        }
    }

    #[test]
    fn eta_aid_background_regime() {
        let p = QubitReadoutParams {
            lambda_mean: 1e-3,
            w_mean: 100.0,
            ..note3_params()
        };
        let t = unit_timing();
        let eta = eta_aid(&p, &t).unwrap();
        let limit = eta_aid_background_limit(&p, &t).unwrap();
        assert_relative_eq!(eta, limit, max_relative = 0.05);
    }

    #[test]
    fn limit_examples() {
        let t = TimingBudget {
            t_scc: 1.0,
            t_evolve: 0.0,
            t_ancilla_init: 0.0,
            t_ancilla_read: 0.0,
            repeats: 1,
            ..unit_timing()
        }; // t_aid = 1 s
        let p = note3_params();
        assert_relative_eq!(
            eta_aid_limit_high_ka(&p, &t).unwrap(),
            2.1344,
            epsilon = 1e-4
        );
        assert_relative_eq!(
            eta_aid_limit_low_ka(&p, &t).unwrap(),
            0.8944271909999159 / (0.3 * 22f64.sqrt()),
            epsilon = 1e-12
        );
        assert_relative_eq!(eta_aid_limit_low_ka(&p, &t).unwrap(), 0.6704, epsilon = 1e-4);

        let perfect = QubitReadoutParams {
            q0_mean: 1.0,
            q1_mean: 0.0,
            ..p
        };
        assert_abs_diff_eq!(eta_aid_limit_high_ka(&perfect, &t).unwrap(), 0.0);
        let unit = QubitReadoutParams {
            ka_mean: 1.0,
            ..perfect
        };
        assert_relative_eq!(eta_aid_limit_low_ka(&unit, &t).unwrap(), 1.0, epsilon = 1e-12);

        // Vanishing-contrast asymptote: eta ~ sqrt(0.5)/(2 eps).
        let eps = 1e-4;
        let thin = QubitReadoutParams {
            q0_mean: 0.5 + eps,
            q1_mean: 0.5 - eps,
            ..p
        };
        assert_relative_eq!(
            eta_aid_limit_high_ka(&thin, &t).unwrap(),
            0.5f64.sqrt() / (2.0 * eps),
            max_relative = 1e-6
        );

        // Background limit: sqrt(2)*4/0.3, linear in w, 1/sqrt(lambda).
        let bg = QubitReadoutParams {
            w_mean: 4.0,
            ..p
        };
        let eta = eta_aid_background_limit(&bg, &t).unwrap();
        assert_relative_eq!(eta, 2f64.sqrt() * 4.0 / 0.3, epsilon = 1e-12);
        assert_relative_eq!(eta, 18.86, epsilon = 1e-3);
        let bg2 = QubitReadoutParams {
            w_mean: 8.0,
            ..bg
        };
        assert_relative_eq!(
            eta_aid_background_limit(&bg2, &t).unwrap(),
            2.0 * eta,
            epsilon = 1e-12
        );
        let bg4 = QubitReadoutParams {
            lambda_mean: 0.25,
            ..bg
        };
        assert_relative_eq!(
            eta_aid_background_limit(&bg4, &t).unwrap(),
            2.0 * eta,
            epsilon = 1e-12
        );
    }

    #[test]
    fn eta_aid_monotonicity_over_grid() {
        let t = unit_timing();
        // Non-increasing in ka.
        for grid in 1..=10 {
            let lambda = grid as f64 / 10.0;
            let mut last = f64::INFINITY;
            for &ka in &[1.0, 2.0, 5.0, 10.0, 50.0, 1e3, 1e5] {
                let p = QubitReadoutParams {
                    ka_mean: ka,
                    lambda_mean: lambda,
                    w_mean: 0.4,
                    ..note3_params()
                };
                let eta = eta_aid(&p, &t).unwrap();
                assert!(eta <= last + 1e-12);
                last = eta;
            }
        }
        // Non-increasing in lambda, non-decreasing in w.
        let mut last = f64::INFINITY;
        for step in 1..=10 {
            let p = QubitReadoutParams {
                lambda_mean: step as f64 / 10.0,
                ..note3_params()
            };
            let eta = eta_aid(&p, &t).unwrap();
            assert!(eta <= last + 1e-12);
            last = eta;
        }
        let mut last = 0.0;
        for step in 0..=10 {
            let p = QubitReadoutParams {
                w_mean: step as f64,
                ..note3_params()
            };
            let eta = eta_aid(&p, &t).unwrap();
            assert!(eta >= last - 1e-12);
            last = eta;
        }
    }

    #[test]
    fn sensitivities_scale_as_sqrt_time() {
        let p = note3_params();
        let t = TimingBudget::default();
        for factor in [4.0, 9.0, 0.25] {
            let ts = t.scaled(factor);
            assert_relative_eq!(
                eta_sos(&p, &ts).unwrap().exact,
                factor.sqrt() * eta_sos(&p, &t).unwrap().exact,
                epsilon = 1e-12
            );
            assert_relative_eq!(
                eta_scc(&p, &ts).unwrap(),
                factor.sqrt() * eta_scc(&p, &t).unwrap(),
                epsilon = 1e-12
            );
            assert_relative_eq!(
                eta_aid(&p, &ts).unwrap(),
                factor.sqrt() * eta_aid(&p, &t).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn eta_snr_consistency_for_sos() {
        // eta = sqrt(n t_per_cycle) / SNR to machine precision.
        let p = note3_params();
        let t = TimingBudget::default();
        let n = 10_000u64;
        let eta = eta_sos(&p, &t).unwrap().exact;
        let snr = snr_sos(&p, n).unwrap();
        assert_relative_eq!(
            eta,
            (n as f64 * t.t_sos()).sqrt() / snr,
            epsilon = 1e-12
        );
    }

    #[test]
    fn aid_beats_sos_example() {
        let p = note3_params();
        // Overhead term -> 0.
        let t = TimingBudget {
            t_ancilla_init: 0.0,
            t_ancilla_read: 0.0,
            ..TimingBudget::default()
        };
        let c = aid_beats_sos(&p, &t).unwrap();
        assert_relative_eq!(c.lhs, 0.00675, epsilon = 1e-12);
        assert_relative_eq!(c.rhs, 0.09 / 0.41, epsilon = 1e-12);
        assert!(c.aid_wins);
        assert!(c.ratio < 1.0);
    }

    #[test]
    fn aid_beats_sos_limits() {
        let p = note3_params();
        let slow = TimingBudget {
            repeats: 1,
            ..TimingBudget::default()
        };
        let fast = TimingBudget {
            repeats: u64::MAX,
            ..slow
        };
        let c_slow = aid_beats_sos(&p, &slow).unwrap();
        let c_fast = aid_beats_sos(&p, &fast).unwrap();
        assert!(c_slow.lhs > c_fast.lhs);
        assert_relative_eq!(
            c_fast.lhs,
            p.contrast_sos * p.contrast_sos * p.k0_mean,
            epsilon = 1e-9
        );

        let degenerate = QubitReadoutParams {
            q1_mean: 0.8,
            ..p
        };
        let c = aid_beats_sos(&degenerate, &TimingBudget::default()).unwrap();
        assert_eq!(c.rhs, 0.0);
        assert!(!c.aid_wins);
    }

    #[test]
    fn validation_catches_bad_fields() {
        let mut p = note3_params();
        p.q0_mean = 1.5;
        assert!(p.validate().is_err());
        let mut t = TimingBudget::default();
        t.repeats = 0;
        assert!(t.validate().is_err());
        t = TimingBudget::default();
        t.t_evolve = -1.0;
        assert!(t.validate().is_err());
    }
}
