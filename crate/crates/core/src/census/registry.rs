//! Every closed-form count the census is checked against.

use num_bigint::BigInt;

use super::formula::BinomialFormula;

/// The census quantity a formula predicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    /// Permutations of complexity exactly `n - k`.
    Exactly(usize),
    /// Permutations of complexity at most `n - k`.
    AtMost(usize),
    /// Permutations whose first matching catalog row has this label.
    Row(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub formula: BinomialFormula,
    pub quantity: Quantity,
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn claim(formula: BinomialFormula, quantity: Quantity) -> Claim {
    Claim { formula, quantity }
}

/// Names of the registry entries, for callers that need one in particular.
pub mod names {
    pub const SUFFIX_N1: &str = "exact n-1: (n-2)!";
    pub const EXACT_N2: &str = "exact n-2: (n-3)!(7n-12)/2";
    pub const AT_MOST_N3: &str = "at most n-3: (n-3)!(2n^3-6n^2-5n+16)/2";
    pub const EXACT_N3: &str = "exact n-3: (n-4)!/3 (47C(n-6,2)+194C(n-6,1)+297)";
    pub const AT_MOST_N4: &str = "at most n-4: (n-4)!(3n^4-18n^3-4n^2+158n-192)/3";
    pub const EXACT_N4: &str = "exact n-4: (n-5)!/10 (854C(n-8,3)+5099C(n-8,2)+12545C(n-8,1)+16130)";
    pub const AT_MOST_N5: &str = "at most n-5: (n-5)!/60 (60n^5-600n^4+506n^3+11241n^2-38369n+34236)";
}

/// Class-level formulas: complexity exactly or at most `n - k`.
pub fn class_claims() -> Vec<Claim> {
    use names::*;
    let f = |r: Result<BinomialFormula, _>| r.expect("registry formulas are well formed");
    vec![
        claim(f(BinomialFormula::new(SUFFIX_N1, 2, 1, 2, big(&[1]), 2)), Quantity::Exactly(1)),
        claim(f(BinomialFormula::new(EXACT_N2, 3, 2, 4, big(&[16, 7]), 4)), Quantity::Exactly(2)),
        claim(
            f(BinomialFormula::from_polynomial(AT_MOST_N3, 3, 2, 4, &[16, -5, -6, 2], 4)),
            Quantity::AtMost(3),
        ),
        claim(f(BinomialFormula::new(EXACT_N3, 4, 3, 6, big(&[297, 194, 47]), 6)), Quantity::Exactly(3)),
        claim(
            f(BinomialFormula::from_polynomial(AT_MOST_N4, 4, 3, 6, &[-192, 158, -4, -18, 3], 6)),
            Quantity::AtMost(4),
        ),
        claim(
            f(BinomialFormula::new(EXACT_N4, 5, 10, 8, big(&[16130, 12545, 5099, 854]), 8)),
            Quantity::Exactly(4),
        ),
        claim(
            f(BinomialFormula::from_polynomial(
                AT_MOST_N5,
                5,
                60,
                8,
                &[34236, -38369, 11241, 506, -600, 60],
                8,
            )),
            Quantity::AtMost(5),
        ),
    ]
}

/// Per-row counts for the rows with complexity `n - 3`, valid from `n = 6`.
pub fn row_claims() -> Vec<Claim> {
    // (label, factorial shift, denominator, polynomial in n)
    const ROWS: &[(&str, usize, i64, &[i64])] = &[
        ("T1a", 3, 1, &[1]),
        ("T1b", 3, 1, &[1]),
        ("T1c", 3, 1, &[1]),
        ("T1d", 3, 2, &[1]),
        ("T1e", 4, 1, &[1]),
        ("T2a", 2, 1, &[1]),
        ("T2b", 4, 1, &[-5, 1]),
        ("T2c", 4, 1, &[1]),
        ("T3a", 3, 1, &[-3, 1]),
        ("T3b", 3, 1, &[-3, 1]),
        // (n-2)! - (n-4)! = (n-4)!((n-2)(n-3) - 1)
        ("T4a", 4, 1, &[5, -5, 1]),
        ("T4b", 2, 1, &[1]),
        ("T4c", 2, 1, &[1]),
        ("T4d", 4, 1, &[1]),
        // (n-2)!/2 - (n-4)! = (n-4)!((n-2)(n-3) - 2)/2
        ("T5a", 4, 2, &[4, -5, 1]),
        ("T5b", 3, 2, &[1]),
        ("T5c", 2, 6, &[1]),
        ("T5d", 2, 12, &[1]),
        ("T5e", 3, 1, &[-4, 1]),
        ("T5f", 3, 2, &[1]),
        ("T5g", 3, 2, &[1]),
        ("T5h", 2, 12, &[1]),
    ];
    ROWS.iter()
        .map(|&(label, shift, d, poly)| {
            let formula = BinomialFormula::from_polynomial(&format!("row {label}"), shift, d, 6, poly, 6)
                .expect("row formulas are well formed");
            claim(formula, Quantity::Row(label.to_string()))
        })
        .collect()
}

/// Row `L1` holds exactly the words with suffix `n1`.
pub fn suffix_row_claim() -> Claim {
    let formula = BinomialFormula::new("row L1", 2, 1, 2, big(&[1]), 2).expect("well formed");
    claim(formula, Quantity::Row("L1".into()))
}

pub fn all_claims() -> Vec<Claim> {
    let mut out = class_claims();
    out.push(suffix_row_claim());
    out.extend(row_claims());
    out
}

pub fn find(name: &str) -> Option<Claim> {
    all_claims().into_iter().find(|c| c.formula.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::formula::factorial;

    fn value(name: &str, n: usize) -> BigInt {
        find(name).unwrap().formula.value(n).unwrap()
    }

    #[test]
    fn spot_values() {
        assert_eq!(value(names::EXACT_N2, 4), BigInt::from(8));
        assert_eq!(value(names::EXACT_N3, 6), BigInt::from(198));
        assert_eq!(value(names::AT_MOST_N4, 6), BigInt::from(408));
        assert_eq!(value(names::EXACT_N4, 8), BigInt::from(9678));
        assert_eq!(value(names::AT_MOST_N3, 4), BigInt::from(14));
    }

    #[test]
    fn row_formulas_sum_to_class_total() {
        let rows = row_claims();
        assert_eq!(rows.len(), 22);
        for n in 6..40usize {
            let total: BigInt = rows.iter().map(|c| c.formula.value(n).unwrap()).sum();
            let m = n as i64;
            // (47n^2 - 223n + 240)(n-4)!/6
            let expect = factorial(n - 4) * BigInt::from(47 * m * m - 223 * m + 240) / 6;
            assert_eq!(total, expect, "n = {n}");
            assert_eq!(total, value(names::EXACT_N3, n), "n = {n}");
        }
    }

    #[test]
    fn at_most_n3_complements_top_classes() {
        for n in 4..40usize {
            let rest = factorial(n) - value(names::SUFFIX_N1, n) - value(names::EXACT_N2, n);
            assert_eq!(rest, value(names::AT_MOST_N3, n), "n = {n}");
        }
    }

    #[test]
    fn at_most_n4_complements_class_n3() {
        for n in 6..40usize {
            assert_eq!(
                value(names::AT_MOST_N3, n) - value(names::EXACT_N3, n),
                value(names::AT_MOST_N4, n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn both_forms_of_the_n4_count_agree() {
        for n in 8..40usize {
            assert_eq!(
                value(names::AT_MOST_N4, n) - value(names::EXACT_N4, n),
                value(names::AT_MOST_N5, n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn table_entries_match_printed_expressions() {
        let f = |label: &str, n: usize| find(&format!("row {label}")).unwrap().formula.value(n).unwrap();
        for n in 6..20usize {
            let fac = factorial;
            assert_eq!(f("T2b", n), BigInt::from(n - 5) * fac(n - 4));
            assert_eq!(f("T4a", n), fac(n - 2) - fac(n - 4));
            assert_eq!(f("T5a", n), fac(n - 2) / 2 - fac(n - 4));
            assert_eq!(f("T5e", n), BigInt::from(n - 4) * fac(n - 3));
            assert_eq!(f("T3a", n), BigInt::from(n - 3) * fac(n - 3));
            assert_eq!(f("T5d", n), fac(n - 2) / 12);
        }
    }
}
