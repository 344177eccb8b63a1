use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::asymptotics::EstimateValue;

/// `num/den`, or just `num` for integers.
pub fn rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// `v` rounded half away from zero to `digits` fractional digits.
pub fn decimal(v: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = v.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if v.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits as usize)
    }
}

/// Integers verbatim; field values as `x+y*sqrt(D)~decimal`.
/// Exact parts use the field's own display, e.g. `-18-18*sqrt(5)`.
pub fn estimate(v: &EstimateValue, digits: u32) -> String {
    match v {
        EstimateValue::Integer(i) => i.to_string(),
        EstimateValue::Field(f) if f.is_rational() => rational(f.x()),
        EstimateValue::Field(f) => {
            let eps = BigRational::new(1.into(), BigInt::from(10).pow(digits + 2));
            let approx = decimal(&f.enclose(&eps).midpoint(), digits);
            format!("{f}~{approx}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(&q(1, 3), 5), "0.33333");
        assert_eq!(decimal(&q(2, 3), 3), "0.667");
        assert_eq!(decimal(&q(-1, 8), 2), "-0.13");
        assert_eq!(decimal(&q(-1, 1000), 2), "0.00");
        assert_eq!(decimal(&q(45, 2), 0), "23");
        assert_eq!(decimal(&q(21, 1), 3), "21.000");
    }

    #[test]
    fn rationals() {
        assert_eq!(rational(&q(6, 4)), "3/2");
        assert_eq!(rational(&q(-8, 1)), "-8");
    }
}
