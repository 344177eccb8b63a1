//! Rigorous enclosures of `S_n = sum_{k >= n} sigma_k / D_k` with
//! `sigma_k = 1` or `(-1)^k` and `D_k = sum_i s_i W_{mk + l_i}`.
//!
//! Partial sums are exact rationals. The only approximation is the tail,
//! bounded through the Binet envelope
//! `|A| alpha^{mk} - B |beta|^{mk} <= |D_k| <= |A| alpha^{mk} + B |beta|^{mk}`
//! with `A = c1 sum_i s_i alpha^{l_i}` and `B = |c2| sum_i s_i |beta|^{l_i}`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadratic::{
    bits_for, round_down, round_up, spectral, validity_check, FieldElement, RationalInterval,
    SpectralData,
};
use crate::recurrence::{RecurrenceParams, Sequence, WeightedSelector};

/// Extra exact terms inspected when establishing monotone decrease.
const MONOTONE_WINDOW: u64 = 8;
/// Give up on monotonicity if the envelopes only take over this far out.
const MONOTONE_SEARCH_LIMIT: u64 = 100_000;
/// Envelope precision used when no target width is known.
const DEFAULT_ENVELOPE_BITS: u64 = 64;

/// A validated summation problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSpec {
    params: RecurrenceParams,
    sel: WeightedSelector,
    alternating: bool,
    n: u64,
}

impl SumSpec {
    pub fn new(
        params: RecurrenceParams,
        sel: WeightedSelector,
        alternating: bool,
        n: u64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("lower summation index n must be >= 1".into()));
        }
        let report = validity_check(&params, &sel);
        if !report.overall {
            return Err(Error::InvalidSpec(format!(
                "hypotheses fail for {params}: {report:?}"
            )));
        }
        Ok(Self {
            params,
            sel,
            alternating,
            n,
        })
    }

    /// Same series, different lower index.
    pub fn with_n(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("lower summation index n must be >= 1".into()));
        }
        Ok(Self { n, ..self.clone() })
    }

    pub fn params(&self) -> &RecurrenceParams {
        &self.params
    }

    pub fn selector(&self) -> &WeightedSelector {
        &self.sel
    }

    pub fn alternating(&self) -> bool {
        self.alternating
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Geometric,
    Alternating,
}

/// An interval containing `S_n`, with the number of exact terms summed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailEnclosure {
    pub interval: RationalInterval,
    pub terms_used: u64,
    pub bound_kind: BoundKind,
}

/// Rational bounds on the envelope constants at one working precision.
#[derive(Clone, Debug)]
struct Envelope {
    bits: u64,
    /// `<= |A|`, positive.
    lead_lo: BigRational,
    /// `>= B`; zero exactly when `B = 0`.
    trail_hi: BigRational,
    /// `<= alpha`, greater than one.
    alpha_lo: BigRational,
    /// `<= alpha^m`.
    alpha_m_lo: BigRational,
    /// `>= |beta|^m`.
    beta_m_hi: BigRational,
    /// `>= (|beta| / alpha)^m`, below one.
    ratio_m_hi: BigRational,
}

/// Powers of a nonnegative rational with every intermediate rounded up.
fn pow_up(base: &BigRational, e: u64, bits: u64) -> BigRational {
    let mut result = BigRational::one();
    let mut b = round_up(base, bits);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = round_up(&(&result * &b), bits);
        }
        e >>= 1;
        if e > 0 {
            b = round_up(&(&b * &b), bits);
        }
    }
    result
}

/// Powers of a nonnegative rational with every intermediate rounded down.
fn pow_down(base: &BigRational, e: u64, bits: u64) -> BigRational {
    let mut result = BigRational::one();
    let mut b = round_down(base, bits);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = round_down(&(&result * &b), bits);
        }
        e >>= 1;
        if e > 0 {
            b = round_down(&(&b * &b), bits);
        }
    }
    result
}

fn sign_of(ord: Ordering) -> i8 {
    match ord {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn bigint_sign(v: &BigInt) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Evaluation context for one spec: owns the `W_n` cache and the exact
/// envelope constants.
struct Evaluator<'a> {
    spec: &'a SumSpec,
    seq: Sequence,
    spectral: SpectralData,
    lead: FieldElement,
    lead_sign: i8,
    trail: FieldElement,
    envelope: Option<Envelope>,
}

impl<'a> Evaluator<'a> {
    fn new(spec: &'a SumSpec) -> Result<Self> {
        let spectral = spectral(&spec.params)?;
        let lead = spectral.leading_coefficient(&spec.sel)?;
        let lead_sign = sign_of(lead.signum());
        if lead_sign == 0 {
            return Err(Error::InvalidSpec("leading coefficient vanishes".into()));
        }
        let trail = spectral.trailing_bound(&spec.sel)?;
        Ok(Self {
            spec,
            seq: Sequence::new(spec.params.clone()),
            spectral,
            lead,
            lead_sign,
            trail,
            envelope: None,
        })
    }

    fn m(&self) -> u64 {
        self.spec.sel.m()
    }

    fn denominator(&mut self, k: u64) -> Result<BigInt> {
        self.seq.weighted_denominator(&self.spec.sel, k)
    }

    fn sigma(&self, k: u64) -> i8 {
        if self.spec.alternating && k % 2 == 1 {
            -1
        } else {
            1
        }
    }

    /// `sigma_k / D_k`, rejecting zero denominators.
    fn term(&mut self, k: u64) -> Result<BigRational> {
        let d = self.denominator(k)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominatorTerm(k));
        }
        Ok(BigRational::new(BigInt::from(self.sigma(k)), d))
    }

    /// Like `term`, additionally requiring `D_k` to carry the sign of `A`.
    fn checked_term(&mut self, k: u64) -> Result<BigRational> {
        let d = self.denominator(k)?;
        match bigint_sign(&d) {
            0 => Err(Error::ZeroDenominatorTerm(k)),
            s if s != self.lead_sign => Err(Error::NonPositiveDenominator(k)),
            _ => Ok(BigRational::new(BigInt::from(self.sigma(k)), d)),
        }
    }

    fn envelope(&mut self, bits: u64) -> &Envelope {
        let stale = self.envelope.as_ref().is_none_or(|e| e.bits < bits);
        if stale {
            let mut b = bits.max(16);
            loop {
                if let Some(env) = self.build_envelope(b) {
                    self.envelope = Some(env);
                    break;
                }
                b *= 2;
            }
        }
        self.envelope.as_ref().expect("built above")
    }

    fn build_envelope(&self, bits: u64) -> Option<Envelope> {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let m = self.m();
        let lead_lo = self.lead.abs().enclose(&eps).lo().clone();
        let alpha_lo = self.spectral.alpha.enclose(&eps).lo().clone();
        if !lead_lo.is_positive() || alpha_lo <= BigRational::one() {
            return None;
        }
        let trail_hi = if self.trail.is_zero() {
            BigRational::zero()
        } else {
            self.trail.enclose(&eps).hi().clone()
        };
        let beta_hi = if self.spectral.beta.is_zero() {
            BigRational::zero()
        } else {
            self.spectral.beta.abs().enclose(&eps).hi().clone()
        };
        let alpha_m_lo = pow_down(&alpha_lo, m, bits);
        let beta_m_hi = pow_up(&beta_hi, m, bits);
        let ratio_m_hi = round_up(&(&beta_m_hi / &alpha_m_lo), bits);
        if alpha_m_lo <= BigRational::one() || ratio_m_hi >= BigRational::one() {
            return None;
        }
        Some(Envelope {
            bits,
            lead_lo,
            trail_hi,
            alpha_lo,
            alpha_m_lo,
            beta_m_hi,
            ratio_m_hi,
        })
    }

    /// Smallest `k >= from` with `(|beta|/alpha)^{mk} <= threshold`, using
    /// upper bounds for the ratio. The left side is decreasing in `k`.
    fn first_below(&mut self, from: u64, threshold: &BigRational, bits: u64) -> u64 {
        let env = self.envelope(bits).clone();
        if env.trail_hi.is_zero() {
            return from;
        }
        // absolute rounding must stay well below the threshold
        let work_bits = env.bits + bits_for(threshold) + 8;
        let mut value = pow_up(&env.ratio_m_hi, from, work_bits);
        let mut k = from;
        while &value > threshold {
            value = round_up(&(&value * &env.ratio_m_hi), work_bits);
            k += 1;
        }
        k
    }

    /// First `k >= from` with `|A| alpha^{mk} >= 2 B |beta|^{mk}`, so that
    /// `|D_k| >= |A| alpha^{mk} / 2` from there on.
    fn domination_start(&mut self, from: u64, bits: u64) -> u64 {
        let env = self.envelope(bits).clone();
        if env.trail_hi.is_zero() {
            return from;
        }
        let threshold = &env.lead_lo / (BigRational::from_integer(2.into()) * &env.trail_hi);
        self.first_below(from, &threshold, bits)
    }

    /// Upper bound on `sum_{k >= start} 1/|D_k|` for `start` at or past the
    /// domination point: `f/|A| * alpha^{-m start} / (1 - alpha^{-m})`
    /// with `f = 2`, or `f = 1` when `B = 0` and `D_k = A alpha^{mk}` exactly.
    fn geometric_tail(&mut self, start: u64, bits: u64) -> BigRational {
        let env = self.envelope(bits).clone();
        let factor = if env.trail_hi.is_zero() { 1 } else { 2 };
        let m = self.m();
        let growth = pow_down(&env.alpha_lo, m * start, env.bits);
        let shrink = BigRational::one() - env.alpha_m_lo.recip();
        let denom = &env.lead_lo * growth * shrink;
        let bound = BigRational::from_integer(factor.into()) / denom;
        round_up(&bound, bits + 8)
    }

    fn tail_bound_plain(&mut self, from: u64, bits: u64) -> Result<BigRational> {
        let start = self.domination_start(from, bits);
        let mut total = BigRational::zero();
        for k in from..start {
            total += self.term(k)?.abs();
        }
        Ok(total + self.geometric_tail(start, bits))
    }

    /// First `k >= from` past which the envelopes force `|D_{k+1}| > |D_k|`:
    /// `|A| alpha^{mk} (alpha^m - 1) > B |beta|^{mk} (1 + |beta|^m)`.
    fn monotone_start(&mut self, from: u64, bits: u64) -> u64 {
        let dominated = self.domination_start(from, bits);
        let env = self.envelope(bits).clone();
        if env.trail_hi.is_zero() {
            return dominated;
        }
        let one = BigRational::one();
        let threshold = &env.lead_lo * (&env.alpha_m_lo - &one)
            / (&env.trail_hi * (&one + &env.beta_m_hi));
        // strict inequality: ask for a little room below the threshold
        let threshold = round_down(&(threshold * BigRational::new(1.into(), 2.into())), env.bits + 8);
        if !threshold.is_positive() {
            return u64::MAX;
        }
        self.first_below(from, &threshold, bits).max(dominated)
    }

    fn tail_bound_alternating(&mut self, from: u64, bits: u64) -> Result<BigRational> {
        let mono = self.monotone_start(from, bits);
        if mono == u64::MAX || mono - from > MONOTONE_SEARCH_LIMIT {
            return Err(Error::MonotonicityNotEstablished(from));
        }
        let last = mono.max(from + MONOTONE_WINDOW);
        let mut prev: Option<BigInt> = None;
        for k in from..=last {
            let d = self.denominator(k)?;
            if d.is_zero() {
                return Err(Error::ZeroDenominatorTerm(k));
            }
            if bigint_sign(&d) != self.lead_sign {
                return Err(Error::MonotonicityNotEstablished(from));
            }
            let d = d.abs();
            if let Some(p) = &prev {
                if &d <= p {
                    return Err(Error::MonotonicityNotEstablished(from));
                }
            }
            prev = Some(d);
        }
        Ok(self.term(from)?.abs())
    }
}

fn require_from(spec: &SumSpec, k: u64) -> Result<()> {
    if k < spec.n {
        return Err(Error::InvalidSpec(format!(
            "index {k} precedes the lower summation index {}",
            spec.n
        )));
    }
    Ok(())
}

/// Exact `sum_{k=n}^{upto} sigma_k / D_k`.
pub fn partial_sum(spec: &SumSpec, upto: u64) -> Result<BigRational> {
    require_from(spec, upto)?;
    let mut ev = Evaluator::new(spec)?;
    let mut terms = Vec::new();
    for k in spec.n..=upto {
        let d = ev.denominator(k)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominatorTerm(k));
        }
        terms.push((ev.sigma(k), d));
    }
    Ok(exact_sum(&terms))
}

/// A rational `U >= sum_{k >= from} 1/|D_k|`.
pub fn tail_bound_plain(spec: &SumSpec, from: u64) -> Result<BigRational> {
    if spec.alternating {
        return Err(Error::InvalidSpec("tail_bound_plain needs a plain series".into()));
    }
    require_from(spec, from)?;
    Evaluator::new(spec)?.tail_bound_plain(from, DEFAULT_ENVELOPE_BITS)
}

/// `U = 1/|D_from|`, valid once `|D_k|` is shown to increase for all
/// `k >= from`; then `|sum_{k >= from} (-1)^k / D_k| <= U`.
pub fn tail_bound_alternating(spec: &SumSpec, from: u64) -> Result<BigRational> {
    if !spec.alternating {
        return Err(Error::InvalidSpec(
            "tail_bound_alternating needs an alternating series".into(),
        ));
    }
    require_from(spec, from)?;
    Evaluator::new(spec)?.tail_bound_alternating(from, DEFAULT_ENVELOPE_BITS)
}

/// Exact `sum_j signs[j] / dens[j]` by balanced pairwise combination,
/// reducing only once at the end.
fn exact_sum(terms: &[(i8, BigInt)]) -> BigRational {
    fn go(terms: &[(i8, BigInt)]) -> (BigInt, BigInt) {
        match terms {
            [] => (BigInt::zero(), BigInt::one()),
            [(s, d)] => (BigInt::from(*s), d.clone()),
            _ => {
                let (left, right) = terms.split_at(terms.len() / 2);
                let (a, b) = go(left);
                let (c, d) = go(right);
                (a * &d + c * &b, b * d)
            }
        }
    }
    let (num, den) = go(terms);
    BigRational::new(num, den)
}

/// Encloses `S_n` in an interval of width at most `eps`.
///
/// The truncation point `K` is found first, on the tail bound alone:
/// `K - n + 1` doubles until the bound drops to `eps/2`, then a bisection
/// settles on the smallest such `K`. The terms up to `K` are then summed
/// exactly and the result is rounded outward to a dyadic grid.
pub fn sum_enclosure(spec: &SumSpec, eps: &BigRational) -> Result<TailEnclosure> {
    if !eps.is_positive() {
        return Err(Error::InvalidSpec("eps must be positive".into()));
    }
    let mut ev = Evaluator::new(spec)?;
    let bits = bits_for(eps) + 3;
    let half_eps = eps / BigInt::from(2);
    let n = spec.n;

    // whether truncating after `upto` meets the target
    let good = |ev: &mut Evaluator, upto: u64| -> Result<bool> {
        if spec.alternating {
            match ev.tail_bound_alternating(upto + 1, bits) {
                Ok(bound) => Ok(bound <= half_eps),
                Err(Error::MonotonicityNotEstablished(_)) => Ok(false),
                Err(e) => Err(e),
            }
        } else {
            if ev.domination_start(upto + 1, bits) > upto + 1 {
                return Ok(false);
            }
            Ok(ev.geometric_tail(upto + 1, bits) <= half_eps)
        }
    };

    let mut span = 8u64;
    while !good(&mut ev, n + span - 1)? {
        span *= 2;
    }
    let (mut lo, mut hi) = (span / 2, span);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if good(&mut ev, n + mid - 1)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let upto = n + hi - 1;

    let mut terms = Vec::with_capacity(hi as usize);
    for k in n..=upto {
        let d = ev.denominator(k)?;
        match bigint_sign(&d) {
            0 => return Err(Error::ZeroDenominatorTerm(k)),
            s if s != ev.lead_sign => return Err(Error::NonPositiveDenominator(k)),
            _ => terms.push((ev.sigma(k), d)),
        }
    }
    let partial = exact_sum(&terms);

    let (far, kind) = if spec.alternating {
        // the tail lies between 0 and its first term
        (&partial + ev.checked_term(upto + 1)?, BoundKind::Alternating)
    } else {
        let bound = ev.geometric_tail(upto + 1, bits);
        let far = if ev.lead_sign > 0 {
            &partial + &bound
        } else {
            &partial - &bound
        };
        (far, BoundKind::Geometric)
    };
    let interval = RationalInterval::hull(partial, far).round_outward(bits + 4);
    Ok(TailEnclosure {
        interval,
        terms_used: hi,
        bound_kind: kind,
    })
}

/// `[1/hi, 1/lo]` for an enclosure that excludes zero.
pub fn inverse_enclosure(t: &TailEnclosure) -> Result<RationalInterval> {
    t.interval.recip()
}
