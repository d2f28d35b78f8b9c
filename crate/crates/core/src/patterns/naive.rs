//! Exhaustive reference matcher used only by tests: explores every star
//! segmentation and every alternation branch directly on the syntax tree.

use std::collections::BTreeSet;

use super::ast::{PatternRow, Token};

type State = (usize, BTreeSet<char>);

fn value(t: &Token, n: usize) -> Option<u32> {
    let v = match t {
        Token::Rel(k) => (n as i64) - (*k as i64),
        Token::Abs(v) => *v as i64,
        _ => unreachable!(),
    };
    (1..=n as i64).contains(&v).then_some(v as u32)
}

fn run(tokens: &[Token], letters: &[u32], n: usize, from: Vec<State>) -> Vec<State> {
    let mut states = from;
    for t in tokens {
        let mut next = Vec::new();
        for (pos, names) in states {
            match t {
                Token::Star(name) => {
                    for end in pos..=letters.len() {
                        let mut nn = names.clone();
                        if end > pos {
                            nn.extend(*name);
                        }
                        next.push((end, nn));
                    }
                }
                Token::AnyOne => {
                    if pos < letters.len() {
                        next.push((pos + 1, names));
                    }
                }
                Token::Rel(_) | Token::Abs(_) => {
                    if pos < letters.len() && value(t, n) == Some(letters[pos]) {
                        next.push((pos + 1, names));
                    }
                }
                Token::Alt(branches) => {
                    for b in branches {
                        next.extend(run(b, letters, n, vec![(pos, names.clone())]));
                    }
                }
            }
        }
        states = next;
    }
    states
}

fn accepts(tokens: &[Token], letters: &[u32], required: &[char]) -> bool {
    run(tokens, letters, letters.len(), vec![(0, BTreeSet::new())])
        .into_iter()
        .any(|(end, names)| {
            end == letters.len() && (required.is_empty() || required.iter().any(|c| names.contains(c)))
        })
}

pub(crate) fn naive_matches(letters: &[u32], row: &PatternRow) -> bool {
    let required = row.nonempty.clone().unwrap_or_default();
    accepts(&row.tokens, letters, &required)
        && !row.exclusion.as_ref().is_some_and(|ex| accepts(ex, letters, &[]))
}
