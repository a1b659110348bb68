//! Exact polynomial arithmetic over F_q: sparse multivariate polynomials,
//! dense univariate polynomials, unreduced rational functions, polynomials
//! in a distinguished variable (for resultants), and univariate
//! factorization.

mod factor;
mod multi;
mod rational;
mod uni;
mod varpoly;

pub use factor::{berlekamp_factor, rational_roots_in_polyring, Factorization, RootReport};
pub use multi::{Monomial, MultiPoly, PolyRing};
pub use rational::RationalFunction;
pub use uni::UniPoly;
pub use varpoly::{sylvester_resultant, VarPoly};
