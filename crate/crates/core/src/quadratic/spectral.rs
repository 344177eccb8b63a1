use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::FieldElement;
use crate::error::{Error, Result};
use crate::recurrence::{RecurrenceParams, WeightedSelector};

/// Roots `alpha > beta` of `x^2 - p x - q` and the Binet coefficients
/// with `W_n = c1 alpha^n - c2 beta^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralData {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub c1: FieldElement,
    pub c2: FieldElement,
    pub d: BigInt,
}

/// Exact spectral data; requires `p^2 + 4q > 0`.
pub fn spectral(params: &RecurrenceParams) -> Result<SpectralData> {
    let d = params.discriminant();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let p_half = BigRational::from_integer(params.p().clone()) * &half;
    let alpha = FieldElement::new(p_half.clone(), half.clone(), d.clone())?;
    let beta = FieldElement::new(p_half, -half, d.clone())?;
    let gap = &alpha - &beta;
    let a = alpha.integer_like(params.a().clone());
    let b = alpha.integer_like(params.b().clone());
    let c1 = (&b - &(&a * &beta)).checked_div(&gap)?;
    let c2 = (&b - &(&a * &alpha)).checked_div(&gap)?;
    Ok(SpectralData {
        alpha,
        beta,
        c1,
        c2,
        d,
    })
}

impl SpectralData {
    /// `c1 alpha^n - c2 beta^n`, which equals `W_n` exactly.
    pub fn binet(&self, n: u64) -> FieldElement {
        &(&self.c1 * &self.alpha.pow(n)) - &(&self.c2 * &self.beta.pow(n))
    }

    /// `A = c1 * sum_i s_i alpha^{l_i}`, the coefficient of `alpha^{mk}` in `D_k`.
    pub fn leading_coefficient(&self, sel: &WeightedSelector) -> Result<FieldElement> {
        let mut sum = self.alpha.zero_like();
        for (s, l) in sel.terms() {
            let w = BigRational::from_integer(BigInt::from(s.clone()));
            sum = &sum + &self.alpha.powi(l)?.scale(&w);
        }
        Ok(&self.c1 * &sum)
    }

    /// `B = |c2| * sum_i s_i |beta|^{l_i}`, bounding the coefficient of
    /// `beta^{mk}` in `D_k`. Zero when `beta = 0`, since then every
    /// `beta^{mk + l_i}` with `mk + l_i >= 1` vanishes.
    pub fn trailing_bound(&self, sel: &WeightedSelector) -> Result<FieldElement> {
        if self.beta.is_zero() {
            return Ok(self.beta.zero_like());
        }
        let abs_beta = self.beta.abs();
        let mut sum = self.beta.zero_like();
        for (s, l) in sel.terms() {
            let w = BigRational::from_integer(BigInt::from(s.clone()));
            sum = &sum + &abs_beta.powi(l)?.scale(&w);
        }
        Ok(&self.c2.abs() * &sum)
    }

    /// `alpha - 1`, rejected when zero.
    pub fn alpha_minus_one(&self) -> Result<FieldElement> {
        let v = &self.alpha - &self.alpha.one_like();
        if v.signum() == Ordering::Equal {
            return Err(Error::AlphaEqualsOne);
        }
        Ok(v)
    }

    pub fn is_beta_zero(&self) -> bool {
        self.beta.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::w_iter;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn fibonacci_spectrum() {
        let s = spectral(&RecurrenceParams::fibonacci()).unwrap();
        assert_eq!(s.alpha.x(), &q(1, 2));
        assert_eq!(s.alpha.y(), &q(1, 2));
        assert_eq!(s.c1.x(), &q(0, 1));
        assert_eq!(s.c1.y(), &q(1, 5));
        // alpha^2 = alpha + 1
        let a2 = s.alpha.pow(2);
        assert_eq!(a2, &s.alpha + &s.alpha.one_like());
        assert_eq!((a2.x().clone(), a2.y().clone()), (q(3, 2), q(1, 2)));
        // alpha * beta = -q
        assert_eq!(&s.alpha * &s.beta, s.alpha.integer_like(-1));
    }

    #[test]
    fn geometric_spectrum_is_rational() {
        let p = RecurrenceParams::new(1, 2, 2, 0).unwrap();
        let s = spectral(&p).unwrap();
        assert_eq!(s.alpha, s.alpha.integer_like(2));
        assert!(s.beta.is_zero());
        assert_eq!(s.c1, s.alpha.integer_like(1));
        assert!(s.c2.is_zero());
        assert!(s.beta.pow(2).is_zero());
    }

    #[test]
    fn rejects_complex_roots() {
        let p = RecurrenceParams::new(0, 1, 1, -1).unwrap();
        assert!(matches!(spectral(&p), Err(Error::NonPositiveDiscriminant(_))));
        let p = RecurrenceParams::new(0, 1, 2, -1).unwrap();
        assert!(matches!(spectral(&p), Err(Error::NonPositiveDiscriminant(_))));
    }

    #[test]
    fn binet_is_exact() {
        let p = RecurrenceParams::new(3, -2, 3, -1).unwrap();
        let s = spectral(&p).unwrap();
        for n in 0..30 {
            let v = s.binet(n);
            assert!(v.is_rational());
            assert_eq!(v.x(), &BigRational::from_integer(w_iter(&p, n)));
        }
    }

    #[test]
    fn leading_coefficient_fibonacci() {
        let s = spectral(&RecurrenceParams::fibonacci()).unwrap();
        // c1 (1 + alpha) = c1 alpha^2
        let sel = WeightedSelector::new(2, [1u32, 1], [0, 1]).unwrap();
        let lead = s.leading_coefficient(&sel).unwrap();
        assert_eq!(lead, &s.c1 * &s.alpha.pow(2));
        let trail = s.trailing_bound(&WeightedSelector::single(1)).unwrap();
        assert_eq!(trail, s.c2.abs());
    }
}
