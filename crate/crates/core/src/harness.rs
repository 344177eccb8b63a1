//! Convergence experiments: per-`n` rows comparing the enclosed inverse
//! tail sum with the closed-form estimate, a log-linear fit of the error
//! decay, and the onset of the round-to-nearest-integer identity.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::asymptotics::{estimate, EstimateValue, Family};
use crate::error::{Error, Result};
use crate::quadratic::{RationalInterval, SpectralData};
use crate::recurrence::{RecurrenceParams, WeightedSelector};
use crate::series::{inverse_enclosure, sum_enclosure, SumSpec};

/// Attempts at shrinking the sum precision before giving up on a row.
const MAX_REFINEMENTS: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationRow {
    pub n: u64,
    /// Encloses `S_n`.
    pub sum: RationalInterval,
    /// Encloses `1 / S_n`.
    pub inverse: RationalInterval,
    pub estimate: EstimateValue,
    /// Encloses `1 / S_n - B_n`.
    pub error: RationalInterval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecayFit {
    /// `exp(slope)` of the least-squares line through `(n, ln|error|)`.
    pub ratio_estimate: BigRational,
    /// Encloses `|beta|^m`.
    pub predicted_ratio: RationalInterval,
    pub r_squared: BigRational,
    pub rows_used: usize,
}

impl DecayFit {
    /// Whether the fitted ratio lies within `predicted_ratio` widened by
    /// the relative margin `rel`.
    pub fn agrees_within(&self, rel: &BigRational) -> bool {
        let one = BigRational::one();
        let lo = self.predicted_ratio.lo() * (&one - rel);
        let hi = self.predicted_ratio.hi() * (&one + rel);
        lo <= self.ratio_estimate && self.ratio_estimate <= hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundIdentity {
    /// Smallest `N0` with `|1/S_n - B_n| < 1/2` on all of `[N0, n_max]`.
    pub onset: Option<u64>,
    pub checked_from: u64,
    pub checked_to: u64,
}

/// One row of the convergence table.
///
/// The sum precision is tightened until the inverse enclosure has width
/// `<= eps`; the estimate is enclosed to `eps` as well, so the error
/// interval is at most `2 eps` wide.
pub fn verify_row(
    params: &RecurrenceParams,
    sel: &WeightedSelector,
    family: Family,
    n: u64,
    eps: &BigRational,
) -> Result<VerificationRow> {
    let spec = SumSpec::new(params.clone(), sel.clone(), family.alternating(), n)?;
    let estimate = estimate(params, sel, family, n)?;
    let estimate_iv = estimate.enclose(eps);

    // 1/S is close to B_n, and the inverse width is about width(S) / S^2
    let scale = estimate_iv.magnitude() + BigRational::one();
    let mut sum_eps = eps / (&scale * &scale);
    for _ in 0..MAX_REFINEMENTS {
        let tail = sum_enclosure(&spec, &sum_eps)?;
        match inverse_enclosure(&tail) {
            Ok(inverse) if inverse.width() <= *eps => {
                let error = inverse.sub(&estimate_iv);
                return Ok(VerificationRow {
                    n,
                    sum: tail.interval,
                    inverse,
                    estimate,
                    error,
                });
            }
            Ok(inverse) => {
                // width scales like sum_eps / S^2
                let shrink = eps / (inverse.width() * BigInt::from(2));
                sum_eps = &sum_eps * shrink;
            }
            Err(Error::IntervalStraddlesZero) => sum_eps /= BigInt::from(1 << 16),
            Err(e) => return Err(e),
        }
    }
    Err(Error::IntervalStraddlesZero)
}

/// Rows for every `n` in `range`, in order.
pub fn verify_run(
    params: &RecurrenceParams,
    sel: &WeightedSelector,
    family: Family,
    range: RangeInclusive<u64>,
    eps: &BigRational,
) -> Result<Vec<VerificationRow>> {
    range
        .map(|n| verify_row(params, sel, family, n, eps).map_err(Error::at_row(n)))
        .collect()
}

/// As [`verify_run`], spreading rows over `threads` worker threads.
/// Output is ordered by `n`; the error reported is the one with the
/// smallest `n`.
pub fn verify_run_concurrent(
    params: &RecurrenceParams,
    sel: &WeightedSelector,
    family: Family,
    range: RangeInclusive<u64>,
    eps: &BigRational,
    threads: usize,
) -> Result<Vec<VerificationRow>> {
    let ns: Vec<u64> = range.collect();
    let threads = threads.clamp(1, ns.len().max(1));
    if threads == 1 {
        return ns
            .iter()
            .map(|&n| verify_row(params, sel, family, n, eps).map_err(Error::at_row(n)))
            .collect();
    }
    let mut results: Vec<(u64, Result<VerificationRow>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|worker| {
                let mine: Vec<u64> = ns.iter().copied().skip(worker).step_by(threads).collect();
                scope.spawn(move || {
                    mine.into_iter()
                        .map(|n| (n, verify_row(params, sel, family, n, eps)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    results.sort_by_key(|(n, _)| *n);
    results
        .into_iter()
        .map(|(n, r)| r.map_err(Error::at_row(n)))
        .collect()
}

/// Natural log of `|v|`, for `v != 0`, robust to huge numerators and
/// denominators.
fn ln_abs(v: &BigRational) -> f64 {
    fn ln_int(x: &BigInt) -> f64 {
        let x = x.abs();
        let bits = x.bits();
        if bits <= 1000 {
            x.to_f64().expect("finite").ln()
        } else {
            let shift = bits - 60;
            (&x >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
    ln_int(v.numer()) - ln_int(v.denom())
}

/// Fits `ln|error midpoint|` against `n`.
///
/// Only rows whose error interval excludes zero and is narrow relative to
/// its midpoint (`width <= |midpoint| / 10`) enter the fit.
pub fn decay_fit(rows: &[VerificationRow], spectral: &SpectralData, m: u64) -> Result<DecayFit> {
    let ten = BigInt::from(10);
    let usable: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| !r.error.contains_zero())
        .filter(|r| r.error.width() * &ten <= r.error.midpoint().abs())
        .map(|r| (r.n as f64, ln_abs(&r.error.midpoint())))
        .collect();
    if usable.is_empty() {
        return Err(Error::DegenerateErrors);
    }
    if usable.len() < 5 {
        return Err(Error::InsufficientRows(usable.len()));
    }
    let count = usable.len() as f64;
    let mean_x = usable.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = usable.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = usable.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = usable.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = usable.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = usable
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    let r_squared = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };

    let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(30));
    let predicted_ratio = spectral.beta.abs().pow(m).enclose(&eps);
    Ok(DecayFit {
        ratio_estimate: BigRational::from_f64(slope.exp()).unwrap_or_else(BigRational::zero),
        predicted_ratio,
        r_squared: BigRational::from_f64(r_squared).unwrap_or_else(BigRational::zero),
        rows_used: usable.len(),
    })
}

/// Whether the whole inverse enclosure lies in the open window
/// `(B_n - 1/2, B_n + 1/2)`.
pub fn rounds_to_estimate(row: &VerificationRow) -> bool {
    let Some(b) = row.estimate.as_integer() else {
        return false;
    };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let b = BigRational::from_integer(b.clone());
    row.inverse.lo() > &(&b - &half) && row.inverse.hi() < &(&b + &half)
}

/// Scans `n = n_max, n_max - 1, .., 2` for the longest suffix on which the
/// integer estimate is the nearest integer to the inverse sum.
pub fn round_identity_scan(
    params: &RecurrenceParams,
    sel: &WeightedSelector,
    family: Family,
    n_max: u64,
    eps: &BigRational,
) -> Result<RoundIdentity> {
    if family.is_block() {
        return Err(Error::InvalidSpec(
            "round identity needs an integer-valued family".into(),
        ));
    }
    if n_max < 2 {
        return Err(Error::InvalidSpec("n_max must be at least 2".into()));
    }
    let mut onset = None;
    for n in (2..=n_max).rev() {
        let row = verify_row(params, sel, family, n, eps).map_err(Error::at_row(n))?;
        if !rounds_to_estimate(&row) {
            break;
        }
        onset = Some(n);
    }
    Ok(RoundIdentity {
        onset,
        checked_from: 2,
        checked_to: n_max,
    })
}
