//! Bayesian updating for recipients of expert evidence reports.
//!
//! When an expert reports a likelihood ratio (or a categorical conclusion such
//! as "identified"), the report itself is a new piece of information for
//! whoever receives it. A recipient reasoning with Bayes' rule does not adopt
//! the expert's number as their own; they ask how likely the expert was to
//! produce that report under each competing hypothesis, and that ratio — the
//! recipient's own likelihood ratio — is what multiplies their prior odds.
//!
//! This crate models that recipient:
//!
//! - [`continuous`] — normal-gamma uncertainty about the distribution of an
//!   expert's reported log likelihood ratio under each hypothesis, updated
//!   with summaries of ground-truth-known validation outcomes, and the
//!   resulting Student-t predictive densities.
//! - [`categorical`] — uncertainty about how often an expert reports
//!   "identified" under each hypothesis, with an ordered-uniform prior on the
//!   pair of reporting rates.
//! - [`recipient`] — the end-to-end engine: ingest validation records, compute
//!   the recipient's likelihood ratio for a report, and combine it with prior
//!   odds (contrasted with the hybrid shortcut of borrowing the expert's LR).
//! - [`coins`] — three coin-flip predictors that illustrate how observers with
//!   identical data but different priors reach different probabilities.
//! - [`space`] — a finite probability space engine with exact rational
//!   arithmetic for coherence and conditional-independence checks.
//! - [`numerics`] — the special functions and deterministic quadrature the
//!   rest of the crate is built on.

pub mod categorical;
pub mod coins;
pub mod continuous;
mod error;
pub mod numerics;
pub mod recipient;
pub mod space;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book;
