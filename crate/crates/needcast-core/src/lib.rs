//! Core algorithms for hourly disaster-need forecasting.
//!
//! This crate holds everything that is pure computation: corpus types and
//! hour-block alignment, the need-extraction pipeline (classifier, tagger,
//! lemmatizer, lexicon), symbol encoding, the peephole-LSTM numerical kernel
//! with exact backpropagation, the attention-based sequence-to-sequence
//! forecaster, three baseline forecasters, and the evaluation/analytics
//! metrics.
//!
//! The crate is `no_std`-compatible (with `alloc`); file formats, the CLI,
//! and checkpoint persistence live in the companion `needcast-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("needcast-core requires either the `std` or the `libm` feature");

pub mod analytics;
pub mod baselines;
pub mod corpus;
pub mod encoding;
pub mod extraction;
pub mod forecaster;
pub mod neural;
pub mod time;

mod float;
