//! Closed rational intervals with outward (directed) rounding.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` of rationals, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    /// # Panics
    /// If `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        Self { lo, hi }
    }

    /// Interval spanning two values in either order.
    pub fn hull(a: BigRational, b: BigRational) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn point(v: BigRational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// `other` lies entirely inside `self`.
    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    /// `-1`, `0` or `1` when the whole interval is negative, straddles or
    /// touches zero, or is positive.
    pub fn sign(&self) -> i8 {
        if self.lo.is_positive() {
            1
        } else if self.hi.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Largest absolute value over the interval.
    pub fn magnitude(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value over the interval.
    pub fn mignitude(&self) -> BigRational {
        if self.contains_zero() {
            BigRational::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            lo: self.mignitude(),
            hi: self.magnitude(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().expect("nonempty").clone();
        let hi = products.iter().max().expect("nonempty").clone();
        Self { lo, hi }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::hull(&self.lo * k, &self.hi * k)
    }

    /// `[1/hi, 1/lo]`; fails when zero lies in the interval.
    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::IntervalStraddlesZero);
        }
        Ok(Self {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    /// Widens both endpoints outward to multiples of `2^-bits`.
    pub fn round_outward(&self, bits: u64) -> Self {
        Self {
            lo: round_down(&self.lo, bits),
            hi: round_up(&self.hi, bits),
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

fn dyadic_scale(bits: u64) -> BigInt {
    BigInt::one() << bits
}

/// Largest multiple of `2^-bits` that is `<= v`.
pub fn round_down(v: &BigRational, bits: u64) -> BigRational {
    let scale = dyadic_scale(bits);
    let scaled = v * &scale;
    BigRational::new(scaled.floor().to_integer(), scale)
}

/// Smallest multiple of `2^-bits` that is `>= v`.
pub fn round_up(v: &BigRational, bits: u64) -> BigRational {
    let scale = dyadic_scale(bits);
    let scaled = v * &scale;
    BigRational::new(scaled.ceil().to_integer(), scale)
}

/// Smallest `bits` with `2^-bits <= eps`.
pub fn bits_for(eps: &BigRational) -> u64 {
    assert!(eps.is_positive(), "precision must be positive");
    let mut bits = 0u64;
    let mut step = BigRational::one();
    while &step > eps {
        step /= BigInt::from(2);
        bits += 1;
    }
    bits
}

/// Encloses `sqrt(d)` in `[lo, hi]` with `lo^2 <= d <= hi^2` and
/// `hi - lo <= eps`. Perfect squares yield a point interval.
///
/// # Panics
/// If `d < 1` or `eps <= 0`.
pub fn sqrt_enclosure(d: &BigInt, eps: &BigRational) -> RationalInterval {
    assert!(d >= &BigInt::one(), "sqrt_enclosure requires d >= 1");
    assert!(eps.is_positive(), "sqrt_enclosure requires eps > 0");
    let root = d.sqrt();
    if &root * &root == *d {
        return RationalInterval::point(BigRational::from_integer(root));
    }
    let target = BigRational::from_integer(d.clone());
    let two = BigInt::from(2);
    let mut lo = BigRational::zero();
    let mut hi = BigRational::from_integer(d + 1);
    while &hi - &lo > *eps {
        let mid = (&lo + &hi) / &two;
        if &mid * &mid <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RationalInterval { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_examples() {
        let four = sqrt_enclosure(&BigInt::from(4), &q(1, 1));
        assert_eq!(four, RationalInterval::point(q(2, 1)));
        let one = sqrt_enclosure(&BigInt::from(1), &q(1, 1));
        assert!(one.contains(&q(1, 1)));

        let five = sqrt_enclosure(&BigInt::from(5), &q(1, 1000));
        assert!(five.width() <= q(1, 1000));
        // bisection oracle on integers: 2236^2 < 5e6 < 2237^2
        assert!(five.lo() <= &q(2237, 1000) && five.hi() >= &q(2236, 1000));
        assert!(five.lo() * five.lo() <= q(5, 1) && five.hi() * five.hi() >= q(5, 1));
    }

    #[test]
    fn recip_examples() {
        let r = RationalInterval::new(q(1, 3), q(1, 2)).recip().unwrap();
        assert_eq!(r, RationalInterval::new(q(2, 1), q(3, 1)));
        let r = RationalInterval::new(q(-1, 2), q(-1, 4)).recip().unwrap();
        assert_eq!(r, RationalInterval::new(q(-4, 1), q(-2, 1)));
        assert_eq!(
            RationalInterval::new(q(-1, 8), q(1, 8)).recip(),
            Err(Error::IntervalStraddlesZero)
        );
    }

    #[test]
    fn directed_rounding_brackets() {
        let v = q(1, 3);
        assert!(round_down(&v, 10) <= v && v <= round_up(&v, 10));
        assert!(round_up(&v, 10) - round_down(&v, 10) <= q(1, 1024));
        let neg = q(-7, 3);
        assert!(round_down(&neg, 4) <= neg && neg <= round_up(&neg, 4));
        assert_eq!(round_up(&q(3, 4), 2), q(3, 4));
    }

    #[test]
    fn interval_products() {
        let a = RationalInterval::new(q(-1, 1), q(2, 1));
        let b = RationalInterval::new(q(3, 1), q(4, 1));
        assert_eq!(a.mul(&b), RationalInterval::new(q(-4, 1), q(8, 1)));
        assert_eq!(a.sub(&b), RationalInterval::new(q(-5, 1), q(-1, 1)));
        assert_eq!(a.abs(), RationalInterval::new(q(0, 1), q(2, 1)));
    }

    #[test]
    fn bits_for_examples() {
        assert_eq!(bits_for(&q(1, 1)), 0);
        assert_eq!(bits_for(&q(1, 2)), 1);
        assert_eq!(bits_for(&q(1, 1000)), 10);
    }
}
