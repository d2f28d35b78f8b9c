//! Recovering the integer coefficients of the binomial form
//! `(k-1)!(n-k-1)!/(2(k-1))! · Σᵢ aᵢ·C(n-2k, i)` from exact counts of
//! permutations with complexity `n-k`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::formula::{binomial, binomial_form, factorial, prefactor_denominator, BinomialFormula, FormulaError};
use super::Census;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("k must be positive")]
    ZeroK,
    #[error("fitting k = {k} needs counts at n = {missing:?}")]
    InsufficientData { k: usize, missing: Vec<usize> },
    #[error("count at n = {n} is not divisible by the prefactor (k = {k})")]
    InexactPrefactor { k: usize, n: usize },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitResult {
    pub k: usize,
    /// `a_0 … a_{k-1}`.
    pub coefficients: Vec<BigInt>,
    /// Every coefficient is non-negative.
    pub natural: bool,
    /// Every data point beyond the `k` used for solving agrees with the fit.
    pub consistent: bool,
    /// All `n` the fit was checked on, solving points included.
    pub data_points: Vec<usize>,
    /// Extra points whose count was not divisible by the prefactor.
    pub inexact_points: Vec<usize>,
}

impl FitResult {
    pub fn formula(&self) -> Result<BinomialFormula, FormulaError> {
        binomial_form(self.k, self.coefficients.clone())
    }
}

/// `count / ((k-1)!(n-k-1)!/(2k-2)!)`, if that is an integer.
fn reduce(k: usize, n: usize, count: &BigInt) -> Option<BigInt> {
    let num = count * prefactor_denominator(k);
    let den = factorial(n - k - 1);
    (&num % &den).is_zero().then(|| num / den)
}

/// Solves the triangular system at `n = 2k, …, 3k-1` (at `n = 2k` only `a_0`
/// survives) and checks every further `n` in `data`. Points below `2k` are
/// outside the form's range and ignored.
pub fn fit_binomial(k: usize, data: &BTreeMap<usize, BigInt>) -> Result<FitResult, FitError> {
    if k == 0 {
        return Err(FitError::ZeroK);
    }
    let solve_at: Vec<usize> = (2 * k..3 * k).collect();
    let missing: Vec<usize> = solve_at.iter().copied().filter(|n| !data.contains_key(n)).collect();
    if !missing.is_empty() {
        return Err(FitError::InsufficientData { k, missing });
    }

    let mut coefficients: Vec<BigInt> = Vec::with_capacity(k);
    for (m, &n) in solve_at.iter().enumerate() {
        let reduced = reduce(k, n, &data[&n]).ok_or(FitError::InexactPrefactor { k, n })?;
        let known: BigInt = coefficients.iter().enumerate().map(|(i, a)| a * binomial(m, i)).sum();
        coefficients.push(reduced - known);
    }

    let formula = binomial_form(k, coefficients.clone())?;
    let mut consistent = true;
    let mut inexact_points = Vec::new();
    for (&n, count) in data.range(3 * k..) {
        if reduce(k, n, count).is_none() {
            inexact_points.push(n);
            consistent = false;
        } else if formula.value(n).ok().as_ref() != Some(count) {
            consistent = false;
        }
    }

    Ok(FitResult {
        k,
        natural: coefficients.iter().all(|a| !a.is_negative()),
        coefficients,
        consistent,
        data_points: data.range(2 * k..).map(|(&n, _)| n).collect(),
        inexact_points,
    })
}

/// Fits `k` using the count of complexity `n-k` from each census with `n ≥ 2k`.
pub fn fit_from_censuses(k: usize, censuses: &[Census]) -> Result<FitResult, FitError> {
    let data: BTreeMap<usize, BigInt> = censuses
        .iter()
        .filter(|c| k > 0 && c.n() >= 2 * k)
        .map(|c| (c.n(), BigInt::from(c.exactly(c.n() - k))))
        .collect();
    fit_binomial(k, &data)
}
