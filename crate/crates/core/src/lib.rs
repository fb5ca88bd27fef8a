//! Bessel numbers of both kinds, matchings in labeled complete graphs, and the
//! combinatorial maps that witness their inverse relations and log-concavity.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact_numbers`] evaluates `B(n,k)`, `b(n,k)`, `a(n,k)` and `m(n,k)` with
//!   arbitrary-precision integers, together with the signed inverse sums.
//! * [`matchings`] represents matchings of `K_n`, enumerates them canonically and
//!   identifies them with partitions into blocks of size one or two.
//! * [`involutions`] builds the signed sets `U`, `V` and the sign-reversing
//!   involutions `I1`, `I2`.
//! * [`injections`] decomposes two-coloured matching unions into alternating
//!   components and implements the subset map `phi`, `I_K`, `I_N` and `I_S`.
//! * [`polynomials`] holds the Bessel polynomials, falling factorials, the
//!   binomial-type sequence `f_n` and the inversion pair used to relate them.
//! * [`report`] is the shared verification report type.

pub mod error;
pub mod exact_numbers;
pub mod injections;
pub mod involutions;
pub mod matchings;
pub mod polynomials;
pub mod report;

pub use error::{Error, Result};
pub use exact_numbers::ExactInt;
pub use matchings::{Edge, Matching};
