use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactError;

/// Univariate power series c₀ + c₁u + … truncated after u^order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    /// a + b·u.
    pub fn linear(a: BigRational, b: BigRational, order: usize) -> Self {
        Self::new(vec![a, b], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn mul(&self, o: &TruncatedSeries) -> TruncatedSeries {
        let m = self.order().min(o.order());
        let mut out = vec![BigRational::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(m + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(m + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<TruncatedSeries, ExactError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(ExactError::NotInvertible);
        }
        let m = self.order();
        let inv0 = c0.recip();
        let mut out = vec![BigRational::zero(); m + 1];
        out[0] = inv0.clone();
        for k in 1..=m {
            let mut s = BigRational::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -(s * &inv0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }
}
