//! Doc-test bridge for the guide in `book/`: every Rust code block in the
//! chapters compiles and runs under `cargo test --doc`, so the book cannot
//! drift from the API. mdbook itself cannot run snippets against this crate,
//! hence the include trick.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/odds-and-bayes.md")]
mod odds_and_bayes {}

#[doc = include_str!("../../../book/src/numeric-reports.md")]
mod numeric_reports {}

#[doc = include_str!("../../../book/src/categorical-conclusions.md")]
mod categorical_conclusions {}

#[doc = include_str!("../../../book/src/validation-data.md")]
mod validation_data {}

#[doc = include_str!("../../../book/src/coin-models.md")]
mod coin_models {}

#[doc = include_str!("../../../book/src/coherence.md")]
mod coherence {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}

#[doc = include_str!("../../../README.md")]
mod readme {}
