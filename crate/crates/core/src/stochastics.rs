//! Stochastic variables of the readout models and exact moments of their
//! compounds.
//!
//! Spin-to-charge readout chains combine three kinds of randomness: Boolean
//! conversion events (charge initialization `p`, spin-dependent ionization
//! `q_j`, wrong-way recharge `r`, carrier capture `λ`), Poisson counts
//! (photons `k`, `k_a`, background carriers `w`), and their products and
//! sums. This module provides the primitive variables, closed-form
//! mean/variance propagation for the three compound forms that appear in the
//! readout chain, an exhaustive enumeration oracle to check the closed forms
//! against, and seeded sampling.
//!
//! All compound formulas assume the component variables are mutually
//! independent. Note that independence of `p`, `q`, `r` does *not* make the
//! two branches of the trap-activation variable independent: in
//! `v = p(1-q) + (1-p)r` the branches are mutually exclusive (their product
//! is identically zero), which contributes an exact cross term
//! `-2·⟨p(1-q)⟩·⟨(1-p)r⟩` to the variance. [`scc_trap_activation`] carries
//! that term so it agrees with brute-force enumeration everywhere.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use thiserror::Error;

use crate::rng::Stream;

#[derive(Debug, Error, PartialEq)]
pub enum StochasticsError {
    #[error("Bernoulli mean {0} outside [0, 1]")]
    MeanOutOfRange(f64),
    #[error("Poisson mean {0} must be finite and >= 0")]
    NegativeMean(f64),
    #[error("variance {0} must be finite and >= 0")]
    NegativeVariance(f64),
    #[error("truncation tolerance {0} must be > 0")]
    BadTruncationTolerance(f64),
    #[error("{form:?} expects variables {expected}, got {got}")]
    WrongVariables {
        form: CompoundForm,
        expected: &'static str,
        got: String,
    },
}

/// Boolean (0/1) stochastic variable with the given success probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernoulliVar {
    mean: f64,
}

impl BernoulliVar {
    pub fn new(mean: f64) -> Result<Self, StochasticsError> {
        if !(0.0..=1.0).contains(&mean) || !mean.is_finite() {
            return Err(StochasticsError::MeanOutOfRange(mean));
        }
        Ok(Self { mean })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.mean * (1.0 - self.mean)
    }

    pub fn stats(&self) -> ReadoutStatistics {
        ReadoutStatistics {
            mean: self.mean(),
            variance: self.variance(),
        }
    }
}

/// Counting variable with Poisson statistics (variance equals the mean).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonVar {
    mean: f64,
}

impl PoissonVar {
    pub fn new(mean: f64) -> Result<Self, StochasticsError> {
        if !(mean.is_finite() && mean >= 0.0) {
            return Err(StochasticsError::NegativeMean(mean));
        }
        Ok(Self { mean })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.mean
    }

    pub fn stats(&self) -> ReadoutStatistics {
        ReadoutStatistics {
            mean: self.mean(),
            variance: self.variance(),
        }
    }
}

/// Mean/variance bundle for a compound measurement variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutStatistics {
    pub mean: f64,
    pub variance: f64,
}

impl ReadoutStatistics {
    pub fn new(mean: f64, variance: f64) -> Result<Self, StochasticsError> {
        if !(variance.is_finite() && variance >= 0.0) {
            return Err(StochasticsError::NegativeVariance(variance));
        }
        Ok(Self { mean, variance })
    }

    /// Statistics of the product `X·Y` of two independent variables:
    /// `⟨XY⟩ = ⟨X⟩⟨Y⟩` and `δ²(XY) = ⟨X⟩²δ²Y + ⟨Y⟩²δ²X + δ²X·δ²Y`.
    pub fn product(&self, other: &ReadoutStatistics) -> ReadoutStatistics {
        ReadoutStatistics {
            mean: self.mean * other.mean,
            variance: self.mean * self.mean * other.variance
                + other.mean * other.mean * self.variance
                + self.variance * other.variance,
        }
    }
}

/// Statistics of the SCC trap-activation variable `v_j = p(1-q_j) + (1-p)r`.
///
/// The first branch is a qubit that stayed in its spin-active charge state
/// through the conversion pulse; the second is one erroneously brought back
/// into it. The variance is exact: independent-product propagation for each
/// branch plus the cross term from the branches' mutual exclusivity
/// (`p(1-q)·(1-p)r ≡ 0`).
pub fn scc_trap_activation(
    p: BernoulliVar,
    q: BernoulliVar,
    r: BernoulliVar,
) -> ReadoutStatistics {
    let stay = p.stats().product(&ReadoutStatistics {
        mean: 1.0 - q.mean(),
        variance: q.variance(),
    });
    let comeback = ReadoutStatistics {
        mean: 1.0 - p.mean(),
        variance: p.variance(),
    }
    .product(&r.stats());
    ReadoutStatistics {
        mean: stay.mean + comeback.mean,
        variance: stay.variance + comeback.variance - 2.0 * stay.mean * comeback.mean,
    }
}

/// Statistics of the AID trap-activation variable `v_j = p·q_j + w`.
///
/// `w` is the Poisson number of spin-uninformative carriers produced by
/// background defects; it is independent of the qubit branch, so the
/// variance is the product-propagation term plus `⟨w⟩`.
pub fn aid_trap_activation(
    p: BernoulliVar,
    q: BernoulliVar,
    w: PoissonVar,
) -> ReadoutStatistics {
    let qubit = p.stats().product(&q.stats());
    ReadoutStatistics {
        mean: qubit.mean + w.mean(),
        variance: qubit.variance + w.variance(),
    }
}

/// Statistics of the photon count `v·k` for a carrier-count variable `v`
/// multiplied by an independent Poisson photon number `k`:
/// `δ²(v·k) = ⟨k⟩(⟨v⟩² + δ²v) + ⟨k⟩²δ²v`.
pub fn photon_compound(v: ReadoutStatistics, k: PoissonVar) -> ReadoutStatistics {
    v.product(&k.stats())
}

/// Distribution descriptor consumed by the enumeration oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VariableSpec {
    Bernoulli { mean: f64 },
    Poisson { mean: f64 },
}

/// The fixed compound forms supported by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompoundForm {
    /// `v = p(1-q) + (1-p)r` over `[Bernoulli p, Bernoulli q, Bernoulli r]`.
    SccV,
    /// `v = p·q + w` over `[Bernoulli p, Bernoulli q, Poisson w]`.
    AidV,
    /// `v·k` over `[Bernoulli v, Poisson k]`.
    PhotonCompound,
}

/// Result of an exhaustive enumeration: exact moments over the enumerated
/// support plus the probability mass discarded by Poisson truncation.
#[derive(Debug, Clone, Copy)]
pub struct EnumeratedStatistics {
    pub stats: ReadoutStatistics,
    /// Upper bound on the probability mass outside the enumerated support.
    pub truncation_error: f64,
}

/// Weighted support of one variable: `(value, probability)` pairs.
fn support(
    var: &VariableSpec,
    tolerance: f64,
) -> Result<(Vec<(f64, f64)>, f64), StochasticsError> {
    match *var {
        VariableSpec::Bernoulli { mean } => {
            let b = BernoulliVar::new(mean)?;
            Ok((vec![(0.0, 1.0 - b.mean()), (1.0, b.mean())], 0.0))
        }
        VariableSpec::Poisson { mean } => {
            let p = PoissonVar::new(mean)?;
            let lambda = p.mean();
            if lambda == 0.0 {
                return Ok((vec![(0.0, 1.0)], 0.0));
            }
            let mut pmf = (-lambda).exp();
            let mut cdf = pmf;
            let mut out = vec![(0.0, pmf)];
            let mut k = 0u64;
            // Hard cap well beyond any mass worth 1e-300.
            let cap = (lambda + 40.0 * lambda.sqrt() + 60.0).ceil() as u64;
            while cdf < 1.0 - tolerance && k < cap {
                k += 1;
                pmf *= lambda / k as f64;
                cdf += pmf;
                out.push((k as f64, pmf));
            }
            Ok((out, (1.0 - cdf).max(0.0)))
        }
    }
}

/// Exact mean/variance of a compound form by exhaustive enumeration over the
/// Boolean supports and the truncated Poisson supports of its components.
///
/// This is the independent oracle for the closed-form propagation above: it
/// never touches the product formulas, only the compound expression itself.
pub fn enumerate_compound_variance(
    form: CompoundForm,
    vars: &[VariableSpec],
    truncation_tolerance: f64,
) -> Result<EnumeratedStatistics, StochasticsError> {
    if !(truncation_tolerance > 0.0) {
        return Err(StochasticsError::BadTruncationTolerance(truncation_tolerance));
    }
    let kinds: Vec<&'static str> = vars
        .iter()
        .map(|v| match v {
            VariableSpec::Bernoulli { .. } => "B",
            VariableSpec::Poisson { .. } => "P",
        })
        .collect();
    let expect = |want: &'static [&'static str], desc: &'static str| {
        if kinds != want {
            Err(StochasticsError::WrongVariables {
                form,
                expected: desc,
                got: kinds.join(""),
            })
        } else {
            Ok(())
        }
    };

    let mut weight_sum = 0.0;
    let mut first = 0.0;
    let mut second = 0.0;
    let mut truncation = 0.0;
    let mut accumulate = |value: f64, weight: f64| {
        weight_sum += weight;
        first += weight * value;
        second += weight * value * value;
    };

    match form {
        CompoundForm::SccV => {
            expect(&["B", "B", "B"], "[Bernoulli, Bernoulli, Bernoulli]")?;
            let (ps, _) = support(&vars[0], truncation_tolerance)?;
            let (qs, _) = support(&vars[1], truncation_tolerance)?;
            let (rs, _) = support(&vars[2], truncation_tolerance)?;
            for &(p, wp) in &ps {
                for &(q, wq) in &qs {
                    for &(r, wr) in &rs {
                        accumulate(p * (1.0 - q) + (1.0 - p) * r, wp * wq * wr);
                    }
                }
            }
        }
        CompoundForm::AidV => {
            expect(&["B", "B", "P"], "[Bernoulli, Bernoulli, Poisson]")?;
            let (ps, _) = support(&vars[0], truncation_tolerance)?;
            let (qs, _) = support(&vars[1], truncation_tolerance)?;
            let (ws, trunc) = support(&vars[2], truncation_tolerance)?;
            truncation = trunc;
            for &(p, wp) in &ps {
                for &(q, wq) in &qs {
                    for &(w, ww) in &ws {
                        accumulate(p * q + w, wp * wq * ww);
                    }
                }
            }
        }
        CompoundForm::PhotonCompound => {
            expect(&["B", "P"], "[Bernoulli, Poisson]")?;
            let (vs, _) = support(&vars[0], truncation_tolerance)?;
            let (ks, trunc) = support(&vars[1], truncation_tolerance)?;
            truncation = trunc;
            for &(v, wv) in &vs {
                for &(k, wk) in &ks {
                    accumulate(v * k, wv * wk);
                }
            }
        }
    }

    let mean = first / weight_sum;
    let variance = (second / weight_sum - mean * mean).max(0.0);
    Ok(EnumeratedStatistics {
        stats: ReadoutStatistics { mean, variance },
        truncation_error: truncation,
    })
}

/// Draw one realization from a primitive variable.
pub trait Sample {
    fn sample(&self, stream: &mut Stream) -> u64;
}

impl Sample for BernoulliVar {
    fn sample(&self, stream: &mut Stream) -> u64 {
        u64::from(stream.gen::<f64>() < self.mean)
    }
}

impl Sample for PoissonVar {
    fn sample(&self, stream: &mut Stream) -> u64 {
        if self.mean == 0.0 {
            return 0;
        }
        Poisson::new(self.mean).expect("validated mean").sample(stream) as u64
    }
}
