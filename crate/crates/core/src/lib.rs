//! Classical small cancellation machinery on finite instances.
//!
//! The crate is organised bottom-up:
//!
//! - [`words`]: letters, free and cyclic reduction, symmetrized relator sets;
//! - [`presentation`]: presentations, piece analysis and the C'(λ) check,
//!   plus generators for the Pride, Thomas–Velickovic and Rips families;
//! - [`dehn`]: Dehn's algorithm and shortlex normal forms;
//! - [`complex`]: combinatorial 2-complexes, Cayley balls, subdivision,
//!   complex-level pieces and the B(6) check, and the two hand-built
//!   counterexample complexes;
//! - [`walls`]: the wall system of a complex, hypergraphs, hypercarriers and
//!   the wall pseudo-metric;
//! - [`separation`]: geodesics, the single-crossing set `A(γ)`, relator
//!   neighborhoods, the density lemmas and the linear separation harness;
//! - [`cli`]: the `wallkit` command line front end.

pub mod cli;
pub mod complex;
pub mod dehn;
pub mod error;
pub mod presentation;
pub mod rational;
pub mod separation;
pub mod walls;
pub mod words;

pub use error::{Error, Result};
pub use rational::Rational;
