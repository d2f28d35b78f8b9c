//! The stack-sorting operator `S`, its iterates, and the complexity measure.
//!
//! Two implementations of `S` are provided. [`stack_sort`] follows the
//! recursive definition `S(LnR) = S(L) S(R) n`; [`stack_sort_pass`] runs the
//! single left-to-right stack machine. They agree on every word, and the
//! complexity kernels use the stack machine.

use crate::word::{is_identity, Letter, Word, WordError, ABSOLUTE_MAX_LEN};

/// `S(w)` computed from the recursive definition.
pub fn stack_sort(w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len());
    sort_recursive(w.letters(), &mut out);
    Word::from_vec_unchecked(out)
}

fn sort_recursive(letters: &[Letter], out: &mut Vec<Letter>) {
    let Some((at, &max)) = letters.iter().enumerate().max_by_key(|&(_, x)| *x) else {
        return;
    };
    sort_recursive(&letters[..at], out);
    sort_recursive(&letters[at + 1..], out);
    out.push(max);
}

/// `S(w)` computed by one pass through a stack: before pushing a letter, pop
/// every smaller letter to the output; flush the stack at the end.
pub fn stack_sort_pass(w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len());
    let mut stack = Vec::with_capacity(w.len());
    for &x in w.letters() {
        while let Some(&top) = stack.last() {
            if top > x {
                break;
            }
            out.push(top);
            stack.pop();
        }
        stack.push(x);
    }
    out.extend(stack.into_iter().rev());
    Word::from_vec_unchecked(out)
}

/// `S^k(w)`.
pub fn stack_sort_iter(w: &Word, passes: usize) -> Word {
    let mut cur = w.clone();
    for _ in 0..passes {
        cur = stack_sort_pass(&cur);
    }
    cur
}

/// Smallest `k` with `S^k(w) = id`. Defined on standard permutations only;
/// the empty word has complexity 0.
pub fn complexity(w: &Word) -> Result<usize, WordError> {
    w.ensure_standard()?;
    Ok(complexity_of(w.letters()))
}

/// Number of positions `i` with `w_i > w_{i+1}`.
pub fn descents(w: &Word) -> usize {
    descents_of(w.letters())
}

pub(crate) fn descents_of(letters: &[Letter]) -> usize {
    letters.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Allocation-free stack pass over a slice. `dst` must have the same length
/// as `src` and `stack` at least that capacity.
#[inline]
fn pass_into(src: &[Letter], dst: &mut [Letter], stack: &mut [Letter]) {
    let mut top = 0usize;
    let mut out = 0usize;
    for &x in src {
        while top > 0 && stack[top - 1] < x {
            top -= 1;
            dst[out] = stack[top];
            out += 1;
        }
        stack[top] = x;
        top += 1;
    }
    while top > 0 {
        top -= 1;
        dst[out] = stack[top];
        out += 1;
    }
}

/// Complexity of a slice already known to be a standard permutation.
pub(crate) fn complexity_of(letters: &[Letter]) -> usize {
    let n = letters.len();
    assert!(n <= ABSOLUTE_MAX_LEN, "word longer than {ABSOLUTE_MAX_LEN}");
    let mut a = [0 as Letter; ABSOLUTE_MAX_LEN];
    let mut b = [0 as Letter; ABSOLUTE_MAX_LEN];
    let mut stack = [0 as Letter; ABSOLUTE_MAX_LEN];
    a[..n].copy_from_slice(letters);
    let mut k = 0;
    while !is_identity(&a[..n]) {
        pass_into(&a[..n], &mut b[..n], &mut stack);
        std::mem::swap(&mut a, &mut b);
        k += 1;
        debug_assert!(k < n.max(1), "S^(n-1) must sort every permutation");
    }
    k
}
