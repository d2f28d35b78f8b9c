//! Glob patterns over permutations: `*` matches any factor, `?` any single
//! letter, `n` and `(n-k)` the values relative to the word length, integers
//! themselves, and `{a | b}` one of several alternatives.
//!
//! The shipped [`Catalog`] lists the characterizations of permutations with
//! complexity `n-1`, `n-2` and `n-3`; [`Catalog::classify`] assigns each
//! permutation the first row it matches.

mod ast;
mod catalog;
mod matcher;
#[cfg(test)]
mod naive;
mod parse;

pub use ast::{CertifiedClass, Family, PatternRow, Token};
pub use catalog::{Catalog, CatalogError, Classification, CATALOG_TEXT, MAX_COUNT_N};
pub use matcher::{matches, CompiledRow};
pub use parse::{parse_pattern, PatternError};

#[cfg(test)]
mod tests {
    use super::naive::naive_matches;
    use super::*;
    use crate::rank::next_permutation;
    use proptest::prelude::*;

    fn all_perms(n: usize) -> Vec<Vec<u32>> {
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        let mut out = vec![cur.clone()];
        while next_permutation(&mut cur) {
            out.push(cur.clone());
        }
        out
    }

    #[test]
    fn glob_example_in_s5() {
        let row = parse_pattern("T0: * n 1 ?").unwrap();
        let compiled = CompiledRow::new(&row);
        let hits: Vec<String> = all_perms(5)
            .into_iter()
            .filter(|p| compiled.matches_slice(p))
            .map(|p| p.iter().map(|x| x.to_string()).collect())
            .collect();
        assert_eq!(hits, ["23514", "24513", "32514", "34512", "42513", "43512"]);
    }

    #[test]
    fn catalog_matches_naive_oracle_exhaustively() {
        let cat = Catalog::builtin();
        for n in 0..=7 {
            for p in all_perms(n) {
                for row in cat.rows() {
                    let fast = CompiledRow::new(row).matches_slice(&p);
                    assert_eq!(fast, naive_matches(&p, row), "{} on {:?}", row.label, p);
                }
            }
        }
    }

    #[test]
    fn t4a_exclusion_over_s6() {
        // Brute-force definition: n fourth from the end, 1 last, and not n(n-2)(n-1)1.
        let cat = Catalog::builtin();
        let row = cat.get("T4a").unwrap();
        let compiled = CompiledRow::new(row);
        let mut count = 0;
        for p in all_perms(6) {
            let expect = p[2] == 6 && p[5] == 1 && !(p[3] == 4 && p[4] == 5);
            assert_eq!(compiled.matches_slice(&p), expect, "{p:?}");
            count += expect as usize;
        }
        // (n-2)! - (n-4)! at n = 6
        assert_eq!(count, 22);
    }

    fn token_strategy() -> impl Strategy<Value = Token> {
        let leaf = prop_oneof![
            Just(Token::Star(None)),
            Just(Token::AnyOne),
            (0u32..4).prop_map(Token::Rel),
            (1u32..6).prop_map(Token::Abs),
        ];
        leaf.prop_recursive(2, 12, 3, |inner| {
            prop::collection::vec(prop::collection::vec(inner, 1..3), 2..3).prop_map(Token::Alt)
        })
    }

    fn row_strategy() -> impl Strategy<Value = PatternRow> {
        (
            prop::collection::vec(token_strategy(), 1..6),
            prop::option::of(prop::collection::vec(token_strategy(), 1..4)),
            any::<bool>(),
        )
            .prop_map(|(mut tokens, exclusion, constrained)| {
                let mut nonempty = None;
                if constrained {
                    tokens.insert(0, Token::Star(Some('A')));
                    tokens.push(Token::Star(Some('B')));
                    nonempty = Some(vec!['A', 'B']);
                }
                PatternRow { label: "T0".into(), tokens, exclusion, nonempty, family: Family::ClassN3 }
            })
    }

    proptest! {
        #[test]
        fn random_rows_match_naive(row in row_strategy(), n in 0usize..7, seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let mut p: Vec<u32> = (1..=n as u32).collect();
            p.shuffle(&mut rng);
            prop_assert_eq!(CompiledRow::new(&row).matches_slice(&p), naive_matches(&p, &row));
        }

        #[test]
        fn print_parse_round_trip(row in row_strategy()) {
            let text = row.to_string();
            prop_assert_eq!(parse_pattern(&text).unwrap(), row);
        }
    }
}
