//! Exact Poincaré series of moduli of real and quaternionic bundles over Klein surfaces.

pub mod appendix;
pub mod cli;
pub mod engine;
pub mod error;
pub mod factored;
pub mod hn;
pub mod kernel;
pub mod rational_fn;
pub mod series;
pub mod verification;
