//! Exact computation of zero sets of linear recurrence sequences over
//! function fields of positive characteristic.
//!
//! Given a sequence a(n) over F_q(x_1,...,x_r) — as a power sum
//! `a(n) = sum_i beta_i * alpha_i^n` or as a recurrence with initial terms —
//! this crate computes the set `{n : a(n) = 0}` exactly, as
//!
//! * the minimal complete base-p automaton reading digits least significant
//!   first, and
//! * a normal form: a finite set, arithmetic progressions, and elementary
//!   nested sets `S_q(c0; c1, ..., cd) = {c0 + c1 q^k1 + ... + cd q^kd}`,
//!
//! together with an independent brute-force and algebraic verification
//! harness ([`verify`]).

pub mod automaton;
pub mod error;
pub mod ff;
pub mod frobsplit;
pub mod limits;
pub mod seq;
pub mod poly;

pub use error::{Error, Result};
