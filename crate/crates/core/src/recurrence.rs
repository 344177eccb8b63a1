//! Exact evaluation of the Horadam sequence `W_0 = a`, `W_1 = b`,
//! `W_n = p W_{n-1} + q W_{n-2}` and of weighted sub-sequence sums
//! `D_k = sum_i s_i W_{mk + l_i}`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four integers `(a, b, p, q)` defining `W_n(a, b, p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecurrenceParams {
    a: BigInt,
    b: BigInt,
    p: BigInt,
    q: BigInt,
}

impl RecurrenceParams {
    /// Builds the parameter set, rejecting `p < 1`.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
    ) -> Result<Self> {
        let p = p.into();
        if p < BigInt::one() {
            return Err(Error::InvalidParams(format!("p must satisfy p >= 1, got {p}")));
        }
        Ok(Self {
            a: a.into(),
            b: b.into(),
            p,
            q: q.into(),
        })
    }

    /// `F_n`: `(0, 1, 1, 1)`.
    pub fn fibonacci() -> Self {
        Self::new(0, 1, 1, 1).expect("valid")
    }

    /// Pell numbers: `(0, 1, 2, 1)`.
    pub fn pell() -> Self {
        Self::new(0, 1, 2, 1).expect("valid")
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `p^2 + 4q`.
    pub fn discriminant(&self) -> BigInt {
        &self.p * &self.p + BigInt::from(4) * &self.q
    }
}

impl fmt::Display for RecurrenceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W(a={}, b={}, p={}, q={})", self.a, self.b, self.p, self.q)
    }
}

/// Stride `m`, weights `s_0..s_t` and offsets `l_0..l_t` of the weighted
/// denominator `D_k = sum_i s_i W_{mk + l_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSelector", into = "RawSelector")]
pub struct WeightedSelector {
    m: u64,
    s: Vec<BigUint>,
    l: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawSelector {
    m: u64,
    s: Vec<u64>,
    l: Vec<i64>,
}

impl TryFrom<RawSelector> for WeightedSelector {
    type Error = Error;

    fn try_from(raw: RawSelector) -> Result<Self> {
        WeightedSelector::new(raw.m, raw.s, raw.l)
    }
}

impl From<WeightedSelector> for RawSelector {
    fn from(sel: WeightedSelector) -> Self {
        RawSelector {
            m: sel.m,
            s: sel
                .s
                .iter()
                .map(|s| u64::try_from(s).unwrap_or(u64::MAX))
                .collect(),
            l: sel.l,
        }
    }
}

impl WeightedSelector {
    pub fn new<S: Into<BigUint>>(
        m: u64,
        s: impl IntoIterator<Item = S>,
        l: impl IntoIterator<Item = i64>,
    ) -> Result<Self> {
        let s: Vec<BigUint> = s.into_iter().map(Into::into).collect();
        let l: Vec<i64> = l.into_iter().collect();
        if m == 0 {
            return Err(Error::InvalidSelector("stride m must be positive".into()));
        }
        if s.is_empty() || s.len() != l.len() {
            return Err(Error::InvalidSelector(format!(
                "s and l must have equal nonzero length (got {} and {})",
                s.len(),
                l.len()
            )));
        }
        if s.iter().all(Zero::is_zero) {
            return Err(Error::InvalidSelector("weights s must not all be zero".into()));
        }
        let min_offset = 1 - i128::from(m);
        if let Some(bad) = l.iter().find(|&&li| i128::from(li) < min_offset) {
            return Err(Error::InvalidSelector(format!(
                "offset {bad} violates l_i >= 1 - m = {min_offset}"
            )));
        }
        Ok(Self { m, s, l })
    }

    /// `m`, `s = (1)`, `l = (0)`: the plain sub-sequence `W_{mk}`.
    pub fn single(m: u64) -> Self {
        Self::new(m, [1u32], [0]).expect("valid")
    }

    /// `s = (1, .., 1)`, `l = (0, .., t)`: consecutive blocks `W_{mk} + .. + W_{mk+t}`.
    pub fn block(m: u64, t: usize) -> Self {
        Self::new(m, vec![1u32; t + 1], 0..=t as i64).expect("valid")
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.s
    }

    pub fn offsets(&self) -> &[i64] {
        &self.l
    }

    /// `t`, the number of terms minus one.
    pub fn t(&self) -> usize {
        self.s.len() - 1
    }

    /// Returns `Some(t)` when this selector has block shape.
    pub fn block_length(&self) -> Option<usize> {
        let ones = self.s.iter().all(|s| s.is_one());
        let consecutive = self.l.iter().enumerate().all(|(i, &l)| l == i as i64);
        (ones && consecutive).then(|| self.t())
    }

    /// Pairs `(s_i, l_i)`.
    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, i64)> + '_ {
        self.s.iter().zip(self.l.iter().copied())
    }

    /// Largest raw index touched by `D_k`.
    pub(crate) fn max_index(&self, k: u64) -> Result<u64> {
        self.l
            .iter()
            .map(|&l| index(self.m, k, l))
            .try_fold(0, |acc, i| Ok(acc.max(i?)))
    }
}

/// `mk + l` as a nonnegative index.
pub(crate) fn index(m: u64, k: u64, l: i64) -> Result<u64> {
    let raw = i128::from(m) * i128::from(k) + i128::from(l);
    u64::try_from(raw).map_err(|_| Error::NegativeIndex(raw))
}

/// `W_n` by linear iteration from `(W_0, W_1)`.
pub fn w_iter(params: &RecurrenceParams, n: u64) -> BigInt {
    let (mut prev, mut cur) = (params.a.clone(), params.b.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &params.p * &cur + &params.q * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

type Mat2 = [[BigInt; 2]; 2];

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let cell = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
}

/// `W_n` in `O(log n)` multiplications via powers of the companion matrix
/// `[[p, q], [1, 0]]`, using `(W_{n+1}, W_n)^T = M^n (W_1, W_0)^T`.
pub fn w_fast(params: &RecurrenceParams, n: u64) -> BigInt {
    let mut result: Mat2 = [
        [BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::one()],
    ];
    let mut base: Mat2 = [
        [params.p.clone(), params.q.clone()],
        [BigInt::one(), BigInt::zero()],
    ];
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    &result[1][0] * &params.b + &result[1][1] * &params.a
}

/// `W_lo, .., W_hi` in one linear pass.
///
/// # Panics
/// If `lo > hi`.
pub fn w_range(params: &RecurrenceParams, lo: u64, hi: u64) -> Vec<BigInt> {
    assert!(lo <= hi, "w_range requires lo <= hi (got {lo} > {hi})");
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    let (mut prev, mut cur) = (params.a.clone(), params.b.clone());
    for n in 0..=hi {
        if n >= lo {
            out.push(prev.clone());
        }
        let next = &params.p * &cur + &params.q * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    out
}

/// Memoized `W_n` values for a single parameter set.
///
/// The cache is owned by one evaluation context and extended linearly;
/// it is never shared between distinct parameter sets.
#[derive(Clone, Debug)]
pub struct Sequence {
    params: RecurrenceParams,
    values: Vec<BigInt>,
}

impl Sequence {
    pub fn new(params: RecurrenceParams) -> Self {
        let values = vec![params.a.clone(), params.b.clone()];
        Self { params, values }
    }

    pub fn params(&self) -> &RecurrenceParams {
        &self.params
    }

    /// `W_n`, extending the cache up to `n` if needed.
    pub fn get(&mut self, n: u64) -> &BigInt {
        let n = usize::try_from(n).expect("index fits in memory");
        while self.values.len() <= n {
            let len = self.values.len();
            let next = &self.params.p * &self.values[len - 1] + &self.params.q * &self.values[len - 2];
            self.values.push(next);
        }
        &self.values[n]
    }

    /// `D_k = sum_i s_i W_{mk + l_i}`.
    pub fn weighted_denominator(&mut self, sel: &WeightedSelector, k: u64) -> Result<BigInt> {
        let top = sel.max_index(k)?;
        self.get(top);
        let mut total = BigInt::zero();
        for (s, l) in sel.terms() {
            let i = index(sel.m, k, l)? as usize;
            if !s.is_zero() {
                total += BigInt::from(s.clone()) * &self.values[i];
            }
        }
        Ok(total)
    }
}

/// `D_k = sum_i s_i W_{mk + l_i}` for a single `k >= 1`.
pub fn weighted_denominator(
    params: &RecurrenceParams,
    sel: &WeightedSelector,
    k: u64,
) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::InvalidSpec("k must be at least 1".into()));
    }
    Sequence::new(params.clone()).weighted_denominator(sel, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: i64, b: i64, p: i64, q: i64) -> RecurrenceParams {
        RecurrenceParams::new(a, b, p, q).unwrap()
    }

    #[test]
    fn iteration_examples() {
        let fib = RecurrenceParams::fibonacci();
        assert_eq!(w_iter(&fib, 0), BigInt::from(0));
        assert_eq!(w_iter(&fib, 10), BigInt::from(55));
        assert_eq!(w_iter(&params(1, 2, 2, 0), 7), BigInt::from(128));
    }

    #[test]
    fn fast_examples() {
        let fib = RecurrenceParams::fibonacci();
        assert_eq!(w_fast(&fib, 0), BigInt::from(0));
        assert_eq!(w_fast(&fib, 1), BigInt::from(1));
        assert_eq!(w_fast(&fib, 50), BigInt::from(12_586_269_025u64));
        // 2, 1, 1, 2, 5
        assert_eq!(w_fast(&params(2, 1, 3, -1), 4), BigInt::from(5));
        assert_eq!(w_iter(&params(2, 1, 3, -1), 4), BigInt::from(5));
    }

    #[test]
    fn range_examples() {
        let fib = RecurrenceParams::fibonacci();
        let got: Vec<i64> = w_range(&fib, 0, 5)
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect();
        assert_eq!(got, vec![0, 1, 1, 2, 3, 5]);
        assert_eq!(w_range(&fib, 3, 3), vec![BigInt::from(2)]);
        assert_eq!(w_range(&params(-7, 3, 4, 2), 0, 0), vec![BigInt::from(-7)]);
    }

    #[test]
    fn denominator_examples() {
        let fib = RecurrenceParams::fibonacci();
        let sel = WeightedSelector::new(2, [1u32, 1], [0, 1]).unwrap();
        assert_eq!(weighted_denominator(&fib, &sel, 3).unwrap(), BigInt::from(21));
        let sel = WeightedSelector::single(1);
        assert_eq!(weighted_denominator(&fib, &sel, 10).unwrap(), BigInt::from(55));
        let sel = WeightedSelector::new(1, [3u32], [0]).unwrap();
        assert_eq!(
            weighted_denominator(&params(1, 2, 2, 0), &sel, 5).unwrap(),
            BigInt::from(96)
        );
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            RecurrenceParams::new(0, 1, 0, 1),
            Err(Error::InvalidParams(_))
        ));
        assert!(WeightedSelector::new(1, [0u32, 0], [0, 1]).is_err());
        assert!(WeightedSelector::new(1, [1u32], [0, 1]).is_err());
        assert!(WeightedSelector::new(0, [1u32], [0]).is_err());
        assert!(WeightedSelector::new::<u32>(1, [], []).is_err());
        // l_i >= 1 - m
        assert!(WeightedSelector::new(3, [1u32], [-2]).is_ok());
        assert!(WeightedSelector::new(3, [1u32], [-3]).is_err());
    }

    #[test]
    fn block_shape() {
        assert_eq!(WeightedSelector::block(2, 3).block_length(), Some(3));
        assert_eq!(WeightedSelector::single(4).block_length(), Some(0));
        let sel = WeightedSelector::new(1, [1u32, 1], [0, 2]).unwrap();
        assert_eq!(sel.block_length(), None);
    }

    #[test]
    fn cache_matches_iteration() {
        let p = params(3, -2, 2, 3);
        let mut seq = Sequence::new(p.clone());
        for n in [40u64, 3, 0, 17, 41] {
            assert_eq!(seq.get(n), &w_iter(&p, n));
        }
    }

    #[test]
    fn selector_json_round_trip() {
        let sel = WeightedSelector::new(3, [2u32, 0, 5], [-2, 0, 4]).unwrap();
        let text = serde_json::to_string(&sel).unwrap();
        assert_eq!(serde_json::from_str::<WeightedSelector>(&text).unwrap(), sel);
        assert!(serde_json::from_str::<WeightedSelector>(r#"{"m":1,"s":[0],"l":[0]}"#).is_err());
    }
}
