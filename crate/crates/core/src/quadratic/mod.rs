//! Exact arithmetic in `Q(sqrt(D))` and the spectral data `(alpha, beta, c1, c2)`
//! of a Horadam recurrence.

mod interval;
mod spectral;
mod validity;

pub use interval::{bits_for, round_down, round_up, sqrt_enclosure, RationalInterval};
pub use spectral::{spectral, SpectralData};
pub use validity::{validity_check, ValidityReport};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `x + y*sqrt(D)` with rational `x, y` and a fixed radicand `D > 0`.
///
/// When `D` is a perfect square the surd part is folded into `x`, so `y`
/// is always zero for such fields and equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    x: BigRational,
    y: BigRational,
    d: BigInt,
    root: Option<BigInt>,
}

fn exact_root(d: &BigInt) -> Option<BigInt> {
    let r = d.sqrt();
    (&r * &r == *d).then_some(r)
}

impl FieldElement {
    pub fn new(x: BigRational, y: BigRational, d: BigInt) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::NonPositiveDiscriminant(d));
        }
        let root = exact_root(&d);
        Ok(Self::normalized(x, y, d, root))
    }

    fn normalized(x: BigRational, y: BigRational, d: BigInt, root: Option<BigInt>) -> Self {
        match &root {
            Some(r) if !y.is_zero() => {
                let x = x + y * BigRational::from_integer(r.clone());
                Self {
                    x,
                    y: BigRational::zero(),
                    d,
                    root,
                }
            }
            _ => Self { x, y, d, root },
        }
    }

    /// Same field as `self`, new coordinates.
    fn sibling(&self, x: BigRational, y: BigRational) -> Self {
        Self::normalized(x, y, self.d.clone(), self.root.clone())
    }

    /// The rational `v` viewed in the field of `self`.
    pub fn rational_like(&self, v: BigRational) -> Self {
        self.sibling(v, BigRational::zero())
    }

    pub fn integer_like(&self, v: impl Into<BigInt>) -> Self {
        self.rational_like(BigRational::from_integer(v.into()))
    }

    pub fn zero_like(&self) -> Self {
        self.rational_like(BigRational::zero())
    }

    pub fn one_like(&self) -> Self {
        self.rational_like(BigRational::one())
    }

    /// `sqrt(D)` itself.
    pub fn sqrt_d(d: BigInt) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// `x - y*sqrt(D)`.
    pub fn conjugate(&self) -> Self {
        self.sibling(self.x.clone(), -&self.y)
    }

    /// Exact sign of `x + y*sqrt(D)` by case analysis and squaring.
    pub fn signum(&self) -> Ordering {
        let zero = BigRational::zero();
        let sx = self.x.cmp(&zero);
        let sy = self.y.cmp(&zero);
        match (sx, sy) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (a, b) if a == b => a,
            // Opposite signs: compare x^2 against y^2 D.
            (sx, _) => {
                let x2 = &self.x * &self.x;
                let y2d = &self.y * &self.y * BigRational::from_integer(self.d.clone());
                match x2.cmp(&y2d) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => sx,
                    Ordering::Less => sx.reverse(),
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    fn check_radicand(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::MismatchedRadicand(self.d.clone(), other.d.clone()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_radicand(other)?;
        Ok(self.sibling(&self.x + &other.x, &self.y + &other.y))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_radicand(other)?;
        Ok(self.sibling(&self.x - &other.x, &self.y - &other.y))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_radicand(other)?;
        let d = BigRational::from_integer(self.d.clone());
        let x = &self.x * &other.x + &self.y * &other.y * d;
        let y = &self.x * &other.y + &other.x * &self.y;
        Ok(self.sibling(x, y))
    }

    /// `1 / self`, multiplying through by the conjugate.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroElement);
        }
        let d = BigRational::from_integer(self.d.clone());
        let norm = &self.x * &self.x - &self.y * &self.y * d;
        Ok(self.sibling(&self.x / &norm, -&self.y / &norm))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_radicand(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut result = self.one_like();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self^n` for any integer `n`; negative powers need `self != 0`.
    pub fn powi(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u64))
        } else {
            Ok(self.recip()?.pow(n.unsigned_abs()))
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        self.sibling(&self.x * k, &self.y * k)
    }

    /// An interval of width `<= eps` containing `x + y*sqrt(D)`.
    pub fn enclose(&self, eps: &BigRational) -> RationalInterval {
        if self.y.is_zero() {
            return RationalInterval::point(self.x.clone());
        }
        let inner_eps = eps / self.y.abs();
        let root = sqrt_enclosure(&self.d, &inner_eps);
        RationalInterval::point(self.x.clone()).add(&root.scale(&self.y))
    }

    /// Exact ordering of two elements of the same field.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        if !self.x.is_zero() {
            let op = if self.y.is_negative() { '-' } else { '+' };
            write!(f, "{}{op}", self.x)?;
            write!(f, "{}*sqrt({})", self.y.abs(), self.d)
        } else {
            write!(f, "{}*sqrt({})", self.y, self.d)
        }
    }
}

// Operator forms panic on mismatched radicands; use the `checked_*`
// methods when operands may come from different fields.
impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        self.checked_add(rhs).expect("radicands must match")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        self.checked_sub(rhs).expect("radicands must match")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        self.checked_mul(rhs).expect("radicands must match")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.sibling(-&self.x, -&self.y)
    }
}
