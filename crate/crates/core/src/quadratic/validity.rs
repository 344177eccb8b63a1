use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{spectral, FieldElement};
use crate::recurrence::{RecurrenceParams, WeightedSelector};

/// Exact outcome of the hypotheses needed before summing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub d_positive: bool,
    pub alpha_gt_one: bool,
    pub beta_abs_lt_one: bool,
    pub paper_condition_holds: bool,
    pub c1_nonzero: bool,
    pub overall: bool,
}

/// Evaluates every hypothesis with rational comparisons only.
///
/// `c1_nonzero` tests the full leading coefficient `c1 * sum_i s_i alpha^{l_i}`,
/// which is what the summation divides by.
pub fn validity_check(params: &RecurrenceParams, sel: &WeightedSelector) -> ValidityReport {
    let d = params.discriminant();
    if !d.is_positive() {
        return ValidityReport {
            d_positive: false,
            alpha_gt_one: false,
            beta_abs_lt_one: false,
            paper_condition_holds: false,
            c1_nonzero: false,
            overall: false,
        };
    }
    let sp = spectral(params).expect("discriminant checked");
    let one = sp.alpha.one_like();
    let alpha_gt_one = sp.alpha.cmp_exact(&one).expect("same field") == Ordering::Greater;
    let beta_abs_lt_one = (&one - &sp.beta).signum() == Ordering::Greater
        && (&one + &sp.beta).signum() == Ordering::Greater;

    // p^2 + 2q - 2 < p sqrt(D)
    let p = params.p();
    let lhs = p * p + BigInt::from(2) * params.q() - 2;
    let rhs = FieldElement::sqrt_d(d.clone())
        .expect("d positive")
        .scale(&BigRational::from_integer(p.clone()));
    let paper_condition_holds = (&rhs - &rhs.integer_like(lhs)).signum() == Ordering::Greater;

    let c1_nonzero = match sp.leading_coefficient(sel) {
        Ok(lead) => lead.signum() != Ordering::Equal,
        Err(_) => false,
    };
    let overall = alpha_gt_one && beta_abs_lt_one && paper_condition_holds && c1_nonzero;
    ValidityReport {
        d_positive: true,
        alpha_gt_one,
        beta_abs_lt_one,
        paper_condition_holds,
        c1_nonzero,
        overall,
    }
}
