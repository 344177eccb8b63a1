//! Closed-form estimates `B_n` of the inverse tail sums.
//!
//! | family          | `B_n`                                                             |
//! |-----------------|-------------------------------------------------------------------|
//! | plain general   | `sum_i s_i (W_{mn+l_i} - W_{m(n-1)+l_i})`                         |
//! | alt general     | `(-1)^n sum_i s_i (W_{mn+l_i} + W_{m(n-1)+l_i})`                  |
//! | plain block     | `(W_{mn+t+1} - W_{mn} - W_{m(n-1)+t+1} + W_{m(n-1)}) / (alpha-1)` |
//! | alt block       | `(-1)^n (W_{mn+t+1} - W_{mn} + W_{m(n-1)+t+1} - W_{m(n-1)}) / (alpha-1)` |
//!
//! Block families use `s = (1, .., 1)` and `l = (0, .., t)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadratic::{spectral, validity_check, FieldElement, RationalInterval};
use crate::recurrence::{index, RecurrenceParams, Sequence, WeightedSelector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    PlainGeneral,
    AltGeneral,
    PlainBlock,
    AltBlock,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::PlainGeneral,
        Family::AltGeneral,
        Family::PlainBlock,
        Family::AltBlock,
    ];

    pub fn from_parts(alternating: bool, block: bool) -> Self {
        match (alternating, block) {
            (false, false) => Family::PlainGeneral,
            (true, false) => Family::AltGeneral,
            (false, true) => Family::PlainBlock,
            (true, true) => Family::AltBlock,
        }
    }

    pub fn alternating(self) -> bool {
        matches!(self, Family::AltGeneral | Family::AltBlock)
    }

    pub fn is_block(self) -> bool {
        matches!(self, Family::PlainBlock | Family::AltBlock)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::PlainGeneral => "plain_general",
            Family::AltGeneral => "alt_general",
            Family::PlainBlock => "plain_block",
            Family::AltBlock => "alt_block",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown estimate family {s:?}")))
    }
}

/// An estimate that is either an integer or an element of `Q(sqrt(D))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EstimateValue {
    Integer(BigInt),
    Field(FieldElement),
}

impl EstimateValue {
    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            EstimateValue::Integer(v) => Some(v),
            EstimateValue::Field(_) => None,
        }
    }

    pub fn as_field(&self) -> Option<&FieldElement> {
        match self {
            EstimateValue::Field(v) => Some(v),
            EstimateValue::Integer(_) => None,
        }
    }

    /// Point interval for integers, width `<= eps` otherwise.
    pub fn enclose(&self, eps: &BigRational) -> RationalInterval {
        match self {
            EstimateValue::Integer(v) => RationalInterval::point(BigRational::from_integer(v.clone())),
            EstimateValue::Field(v) => v.enclose(eps),
        }
    }
}

impl fmt::Display for EstimateValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimateValue::Integer(v) => write!(f, "{v}"),
            EstimateValue::Field(v) => write!(f, "{v}"),
        }
    }
}

fn check(params: &RecurrenceParams, sel: &WeightedSelector, n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("estimates need n >= 2, got {n}")));
    }
    let report = validity_check(params, sel);
    if !report.overall {
        return Err(Error::InvalidSpec(format!(
            "hypotheses fail for {params}: {report:?}"
        )));
    }
    Ok(())
}

fn sign(n: u64) -> i32 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `sum_i s_i (W_{mn+l_i} + sign * W_{m(n-1)+l_i})`
fn general_sum(
    seq: &mut Sequence,
    sel: &WeightedSelector,
    n: u64,
    sign: i32,
) -> Result<BigInt> {
    let mut total = BigInt::from(0);
    for (s, l) in sel.terms() {
        let hi = seq.get(index(sel.m(), n, l)?).clone();
        let lo = seq.get(index(sel.m(), n - 1, l)?).clone();
        total += BigInt::from(s.clone()) * (hi + lo * sign);
    }
    Ok(total)
}

/// Plain-sum estimate `sum_i s_i (W_{mn+l_i} - W_{m(n-1)+l_i})`.
pub fn estimate_general(
    params: &RecurrenceParams,
    sel: &WeightedSelector,
    n: u64,
) -> Result<EstimateValue> {
    check(params, sel, n)?;
    let mut seq = Sequence::new(params.clone());
    Ok(EstimateValue::Integer(general_sum(&mut seq, sel, n, -1)?))
}

/// Alternating-sum estimate `(-1)^n sum_i s_i (W_{mn+l_i} + W_{m(n-1)+l_i})`.
pub fn estimate_alternating(
    params: &RecurrenceParams,
    sel: &WeightedSelector,
    n: u64,
) -> Result<EstimateValue> {
    check(params, sel, n)?;
    let mut seq = Sequence::new(params.clone());
    let v = general_sum(&mut seq, sel, n, 1)?;
    Ok(EstimateValue::Integer(v * sign(n)))
}

fn block_value(params: &RecurrenceParams, m: u64, t: usize, n: u64, alternating: bool) -> Result<EstimateValue> {
    let sel = WeightedSelector::block(m, t);
    check(params, &sel, n)?;
    let sp = spectral(params)?;
    let divisor = sp.alpha_minus_one()?;
    let mut seq = Sequence::new(params.clone());
    let t = t as u64;
    let mut w = |i: u64| seq.get(i).clone();
    let (top, base) = (m * n, m * (n - 1));
    let v = if alternating {
        (w(top + t + 1) - w(top) + w(base + t + 1) - w(base)) * sign(n)
    } else {
        w(top + t + 1) - w(top) - w(base + t + 1) + w(base)
    };
    Ok(EstimateValue::Field(divisor.integer_like(v).checked_div(&divisor)?))
}

/// `(W_{mn+t+1} - W_{mn} - W_{m(n-1)+t+1} + W_{m(n-1)}) / (alpha - 1)`.
pub fn estimate_block(params: &RecurrenceParams, m: u64, t: usize, n: u64) -> Result<EstimateValue> {
    block_value(params, m, t, n, false)
}

/// `(-1)^n (W_{mn+t+1} - W_{mn} + W_{m(n-1)+t+1} - W_{m(n-1)}) / (alpha - 1)`.
pub fn estimate_block_alternating(
    params: &RecurrenceParams,
    m: u64,
    t: usize,
    n: u64,
) -> Result<EstimateValue> {
    block_value(params, m, t, n, true)
}

/// Dispatches on `family`; block families require a block-shaped selector.
pub fn estimate(
    params: &RecurrenceParams,
    sel: &WeightedSelector,
    family: Family,
    n: u64,
) -> Result<EstimateValue> {
    let block_t = || {
        sel.block_length().ok_or_else(|| {
            Error::InvalidSpec("block families need s = (1, .., 1) and l = (0, .., t)".into())
        })
    };
    match family {
        Family::PlainGeneral => estimate_general(params, sel, n),
        Family::AltGeneral => estimate_alternating(params, sel, n),
        Family::PlainBlock => estimate_block(params, sel.m(), block_t()?, n),
        Family::AltBlock => estimate_block_alternating(params, sel.m(), block_t()?, n),
    }
}
