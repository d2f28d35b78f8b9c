//! Exact count formulas of the shape `(n-j)!/d · Σᵢ aᵢ·C(n-s, i)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("{name}: n = {n} is below the validity floor {min_n}")]
    BelowValidity { name: String, n: usize, min_n: usize },
    #[error("{name}: division by {denominator} is not exact at n = {n}")]
    InexactDivision { name: String, n: usize, denominator: BigInt },
    #[error("{name}: malformed formula ({reason})")]
    Malformed { name: String, reason: String },
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(m, i)` for `m ≥ 0`.
pub fn binomial(m: usize, i: usize) -> BigInt {
    if i > m {
        return BigInt::zero();
    }
    let i = i.min(m - i);
    (0..i).fold(BigInt::one(), |acc, t| acc * (m - t) / (t + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialFormula {
    pub name: String,
    /// `j` in the `(n-j)!` factor.
    pub factorial_shift: usize,
    pub denominator: BigInt,
    /// `s` in the `C(n-s, i)` basis.
    pub offset: usize,
    pub coefficients: Vec<BigInt>,
    /// Smallest `n` at which the formula is asserted.
    pub min_n: usize,
}

impl BinomialFormula {
    pub fn new(
        name: &str,
        factorial_shift: usize,
        denominator: impl Into<BigInt>,
        offset: usize,
        coefficients: Vec<BigInt>,
        min_n: usize,
    ) -> Result<Self, FormulaError> {
        let denominator = denominator.into();
        let malformed = |reason: &str| FormulaError::Malformed { name: name.to_string(), reason: reason.to_string() };
        if !denominator.is_positive() {
            return Err(malformed("denominator must be positive"));
        }
        if min_n < factorial_shift || min_n < offset {
            return Err(malformed("validity floor below the factorial shift or basis offset"));
        }
        Ok(BinomialFormula {
            name: name.to_string(),
            factorial_shift,
            denominator,
            offset,
            coefficients,
            min_n,
        })
    }

    /// Builds from a polynomial in `n` (ascending powers) by rewriting it in
    /// the `C(n-s, i)` basis through forward differences at `n = s, s+1, …`.
    pub fn from_polynomial(
        name: &str,
        factorial_shift: usize,
        denominator: i64,
        offset: usize,
        poly: &[i64],
        min_n: usize,
    ) -> Result<Self, FormulaError> {
        let eval = |n: usize| -> BigInt {
            poly.iter()
                .rev()
                .fold(BigInt::zero(), |acc, &c| acc * BigInt::from(n) + BigInt::from(c))
        };
        let mut row: Vec<BigInt> = (0..poly.len().max(1)).map(|t| eval(offset + t)).collect();
        let mut coefficients = Vec::with_capacity(row.len());
        while !row.is_empty() {
            coefficients.push(row[0].clone());
            row = row.windows(2).map(|p| &p[1] - &p[0]).collect();
        }
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self::new(name, factorial_shift, denominator, offset, coefficients, min_n)
    }

    /// `Σ aᵢ·C(n-s, i)` without the factorial prefactor.
    pub fn basis_sum(&self, n: usize) -> BigInt {
        let m = n - self.offset;
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, a)| a * binomial(m, i))
            .sum()
    }

    pub fn value(&self, n: usize) -> Result<BigInt, FormulaError> {
        if n < self.min_n {
            return Err(FormulaError::BelowValidity { name: self.name.clone(), n, min_n: self.min_n });
        }
        let numerator = factorial(n - self.factorial_shift) * self.basis_sum(n);
        if !(&numerator % &self.denominator).is_zero() {
            return Err(FormulaError::InexactDivision {
                name: self.name.clone(),
                n,
                denominator: self.denominator.clone(),
            });
        }
        Ok(numerator / &self.denominator)
    }
}

impl fmt::Display for BinomialFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n-{})!/{} * (", self.factorial_shift, self.denominator)?;
        for (i, a) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{a}*C(n-{},{i})", self.offset)?;
        }
        f.write_str(")")
    }
}

/// `(k-1)!(n-k-1)!/(2(k-1))! · Σ aᵢ·C(n-2k, i)` written in the common shape:
/// shift `k+1`, denominator `(2k-2)!/(k-1)!`, basis offset `2k`.
pub fn binomial_form(k: usize, coefficients: Vec<BigInt>) -> Result<BinomialFormula, FormulaError> {
    let name = format!("exact class n-{k}, binomial form");
    if k == 0 {
        return Err(FormulaError::Malformed { name, reason: "k must be positive".into() });
    }
    BinomialFormula::new(&name, k + 1, prefactor_denominator(k), 2 * k, coefficients, 2 * k)
}

/// `(2k-2)!/(k-1)!`, always an integer.
pub fn prefactor_denominator(k: usize) -> BigInt {
    factorial(2 * k - 2) / factorial(k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(30, 15), BigInt::from(155_117_520u64));
    }

    #[test]
    fn polynomial_rewrite() {
        // 7n - 12 = 16 + 7(n-4)
        let f = BinomialFormula::from_polynomial("x", 3, 2, 4, &[-12, 7], 4).unwrap();
        assert_eq!(f.coefficients, big(&[16, 7]));
        // 2n^3 - 6n^2 - 5n + 16 at s = 4
        let f = BinomialFormula::from_polynomial("x", 3, 2, 4, &[16, -5, -6, 2], 4).unwrap();
        assert_eq!(f.coefficients, big(&[28, 63, 48, 12]));
        for n in 4..30usize {
            let m = n as i64;
            let direct = 2 * m.pow(3) - 6 * m * m - 5 * m + 16;
            assert_eq!(f.basis_sum(n), BigInt::from(direct));
        }
    }

    #[test]
    fn validity_and_exactness() {
        let f = BinomialFormula::new("f", 4, 3, 6, big(&[297, 194, 47]), 6).unwrap();
        assert_eq!(f.value(6).unwrap(), BigInt::from(198));
        assert!(matches!(f.value(5), Err(FormulaError::BelowValidity { .. })));
        let g = BinomialFormula::new("g", 0, 7, 0, big(&[1]), 0).unwrap();
        assert!(matches!(g.value(3), Err(FormulaError::InexactDivision { .. })));
        assert!(BinomialFormula::new("h", 3, 0, 0, big(&[1]), 3).is_err());
        assert!(BinomialFormula::new("h", 3, 1, 0, big(&[1]), 2).is_err());
    }

    #[test]
    fn binomial_form_prefactor() {
        assert_eq!(prefactor_denominator(1), BigInt::from(1));
        assert_eq!(prefactor_denominator(2), BigInt::from(2));
        assert_eq!(prefactor_denominator(3), BigInt::from(12));
        assert_eq!(prefactor_denominator(4), BigInt::from(120));
        let f = binomial_form(4, big(&[193560, 150540, 61188, 10248])).unwrap();
        assert_eq!(f.value(8).unwrap(), BigInt::from(9678));
    }
}
