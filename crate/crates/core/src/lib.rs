//! Exact enumeration and asymptotics of modular k-noncrossing diagrams.
//!
//! A diagram on `[n]` is modular when it has no k-crossing, every arc has
//! length at least four and no arc is isolated (every arc sits in a stack of
//! two or more parallel arcs). This crate computes the counting series
//! `Q_k(z)` by inflating colored `V_k`-shapes, checks every intermediate
//! generating function against brute-force enumeration, and locates the
//! dominant singularities that govern the growth of `Q_k(n)`.
//!
//! Module map:
//!
//! * [`series`]: exact truncated power series, dense univariate polynomials
//!   and sparse five-marker polynomials over arbitrary-precision rationals.
//! * [`matchings`]: `f_k(2n)` via lattice walks in the Weyl chamber and the
//!   tabulated `q_{0,k}` polynomials.
//! * [`oracle`]: brute-force diagrams, shapes and their color statistics.
//! * [`shape_gf`]: shape generating functions and their recursions.
//! * [`diagram_gf`]: `Q_2(z)`, `Q_k(z)` and the inflation building blocks.
//! * [`asymptotics`]: certified root isolation, growth rates and fits.
//! * [`selftest`]: named verification checks shared by the CLI.

pub mod asymptotics;
pub mod diagram_gf;
pub mod error;
pub mod matchings;
pub mod oracle;
pub mod selftest;
pub mod series;
pub mod shape_gf;

pub use error::{Error, Result};
pub use series::{MultiPoly, Poly, PowerSeries, Rational};
