//! Exact computation of local positivity invariants attached to valuations.
//!
//! The crate works in two settings:
//!
//! * valuations centred at a point of a smooth surface, encoded by a
//!   [`Cluster`](cluster::Cluster) of infinitely near points together with the
//!   values of the valuation at each exceptional divisor ([`surface`]);
//! * monomial valuations in any number of variables, where valuation ideals are
//!   monomial ideals and everything reduces to Newton polyhedra ([`monomial`]).
//!
//! On top of these, [`toric`] and [`positivity`] compute Seshadri constants and
//! asymptotic orders of vanishing of monomial valuations at torus-fixed points
//! of the projective plane, and a semicontinuity scan over families of weights.
//!
//! All arithmetic is exact: every quantity is a [`Rational`] (an
//! arbitrary-precision fraction), and every identity is checked with `==`.

pub mod cluster;
pub mod error;
mod linalg;
pub mod monomial;
pub mod oracle;
pub mod positivity;
pub mod rational;
pub mod surface;
pub mod toric;

pub use cluster::{Basis, Cluster, ExceptionalDivisor, ValueVector, ValuesMatrix};
pub use error::{Error, Result};
pub use monomial::{MonomialIdeal, NewtonPolyhedron, WeightVector};
pub use rational::{format_rational, parse_rational, parse_rational_list, Extended, Rational};
pub use surface::{BDivisorTrace, SurfaceValuation};
pub use toric::{ToricDivisor, ToricSurface};
