//! Comparison of a census against every registry formula valid at its `n`.

use std::fmt;

use num_bigint::BigInt;

use crate::patterns::Family;
use crate::rank::factorial;

use super::registry::{all_claims, names, Quantity};
use super::Census;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyItem {
    pub name: String,
    pub formula_value: BigInt,
    pub census_value: BigInt,
    pub pass: bool,
}

impl VerifyItem {
    fn new(name: impl Into<String>, formula_value: impl Into<BigInt>, census_value: impl Into<BigInt>) -> Self {
        let (formula_value, census_value) = (formula_value.into(), census_value.into());
        VerifyItem { name: name.into(), pass: formula_value == census_value, formula_value, census_value }
    }
}

impl fmt::Display for VerifyItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: formula {} census {}", self.name, self.formula_value, self.census_value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: usize,
    pub items: Vec<VerifyItem>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyItem> {
        self.items.iter().filter(|i| !i.pass)
    }

    pub fn get(&self, name: &str) -> Option<&VerifyItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

fn class_at(n: usize, k: usize) -> Option<usize> {
    n.checked_sub(k)
}

/// Checks the census against the registry. Mismatches are report entries,
/// never errors. Items:
///
/// * the total is `n!`;
/// * no permutation contradicts the class its catalog row certifies;
/// * each certifying family's rows together hold exactly the census class;
/// * every class, cumulative and per-row formula valid at `n`;
/// * from `n = 8`, the two printed forms of the `n-4` count agree with each
///   other.
pub fn verify(census: &Census) -> VerifyReport {
    let n = census.n();
    let t = &census.tally;
    let mut items = vec![
        VerifyItem::new("total n!", factorial(n).unwrap_or(0), t.total()),
        VerifyItem::new("classification soundness (mismatches)", 0u64, t.class_mismatches),
    ];

    for family in [Family::ClassN1, Family::ClassN2, Family::ClassN3] {
        if n < family.min_n() {
            continue;
        }
        let class = n - family.class_offset();
        let rows: u64 = t
            .counts_by_row
            .iter()
            .filter(|(label, _)| Family::from_label(label) == Some(family))
            .map(|(_, c)| c)
            .sum();
        items.push(VerifyItem::new(format!("rows partition class n-{}", family.class_offset()), census.exactly(class), rows));
    }

    let mut n4 = None;
    for claim in all_claims() {
        let f = &claim.formula;
        if n < f.min_n {
            continue;
        }
        let census_value: Option<u64> = match &claim.quantity {
            Quantity::Exactly(k) => class_at(n, *k).map(|c| census.exactly(c)),
            Quantity::AtMost(k) => class_at(n, *k).map(|c| census.at_most(c)),
            Quantity::Row(label) => census.row(label),
        };
        let Some(census_value) = census_value else { continue };
        let item = match f.value(n) {
            Ok(v) => VerifyItem::new(f.name.clone(), v, census_value),
            // An inexact division is a failed item with a sentinel value.
            Err(_) => VerifyItem { name: f.name.clone(), formula_value: BigInt::from(-1), census_value: census_value.into(), pass: false },
        };
        if [names::AT_MOST_N4, names::EXACT_N4, names::AT_MOST_N5].contains(&f.name.as_str()) {
            n4.get_or_insert_with(Vec::new).push((f.name.clone(), item.formula_value.clone()));
        }
        items.push(item);
    }

    if let Some(values) = n4.filter(|v| v.len() == 3) {
        let get = |name: &str| values.iter().find(|(k, _)| k == name).map(|(_, v)| v.clone()).unwrap();
        items.push(VerifyItem::new(
            "n-4 forms agree: at most n-5 = at most n-4 - exact n-4",
            get(names::AT_MOST_N5),
            get(names::AT_MOST_N4) - get(names::EXACT_N4),
        ));
    }

    VerifyReport { n, items }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::run_census;

    #[test]
    fn n3_checks_only_suffix_rows() {
        let r = verify(&run_census(3, 1).unwrap());
        assert!(r.all_pass());
        let item = r.get(names::SUFFIX_N1).unwrap();
        assert_eq!(item.census_value, BigInt::from(1));
        assert!(r.get(names::EXACT_N2).is_none());
    }

    #[test]
    fn n6_passes_everything() {
        let r = verify(&run_census(6, 2).unwrap());
        for item in &r.items {
            assert!(item.pass, "{item}");
        }
        let v = |name: &str| r.get(name).unwrap().census_value.clone();
        assert_eq!(v(names::SUFFIX_N1), BigInt::from(24));
        assert_eq!(v(names::EXACT_N2), BigInt::from(90));
        assert_eq!(v(names::EXACT_N3), BigInt::from(198));
        assert_eq!(v(names::AT_MOST_N4), BigInt::from(408));
        assert_eq!(v("row T2b"), BigInt::from(2));
        assert_eq!(r.items.iter().filter(|i| i.name.starts_with("row T")).count(), 22);
    }

    #[test]
    fn a_wrong_count_fails() {
        let mut c = run_census(6, 1).unwrap();
        c.tally.counts_by_complexity[3] += 1;
        let r = verify(&c);
        assert!(!r.all_pass());
        assert!(r.failures().any(|i| i.name == names::EXACT_N3));
        assert!(r.failures().any(|i| i.name == "total n!"));
    }
}
