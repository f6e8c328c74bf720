//! Runs every Rust snippet in the guide (`book/`) as a doc-test, so
//! `cargo test --doc -p netforge-book` keeps the book and the library in
//! sync. One module per chapter, so a failing snippet names its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/nets-and-intervals.md")]
pub mod nets_and_intervals {}

#[doc = include_str!("../../../book/src/greedy-packing.md")]
pub mod greedy_packing {}

#[doc = include_str!("../../../book/src/recursive-synthesis.md")]
pub mod recursive_synthesis {}

#[doc = include_str!("../../../book/src/verification-and-search.md")]
pub mod verification_and_search {}

#[doc = include_str!("../../../book/src/discrepancy.md")]
pub mod discrepancy {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
