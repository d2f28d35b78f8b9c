//! Stack-sorting complexity of permutations.
//!
//! * [`word`], [`sort`], [`rank`]: words, the stack-sorting operator `S`,
//!   complexity, descents and lexicographic ranking.
//! * [`patterns`]: the glob-pattern language and the catalog that
//!   characterizes permutations of complexity `n-1`, `n-2` and `n-3`.
//! * [`forbidden`]: forbidden patterns and the complexity bracket they give.
//! * [`census`]: exhaustive, sharded, resumable enumeration of `S_n` and the
//!   exact formulas it is checked against.

pub mod census;
pub mod forbidden;
pub mod patterns;
pub mod rank;
pub mod sort;
pub mod word;

pub use forbidden::{complexity_bounds, forbidden_report, ForbiddenReport, Witness};
pub use patterns::{parse_pattern, Catalog, PatternRow};
pub use rank::{rank, unrank, Rank};
pub use sort::{complexity, descents, stack_sort, stack_sort_iter, stack_sort_pass};
pub use word::{Word, WordError};
