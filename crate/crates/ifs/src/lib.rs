//! Grid-based analysis of iterated function systems.
//!
//! The crate models an IFS as a finite list of continuous self-maps of a
//! compact box domain (an interval or a rectangle), discretizes compact
//! subsets of that domain as occupancy bitmaps over a regular grid, and
//! provides the machinery built on top of that representation:
//!
//! * [`sets`] — grid bitmaps, Hausdorff metrics, distance transforms,
//!   nested-intersection limits;
//! * [`maps`] — map models (affine, piecewise linear, quadratic,
//!   compositions), interval enclosures, Lipschitz estimates;
//! * [`hutchinson`] — the union-of-images set operator, its iteration,
//!   and greatest/invariant fixed-point computations;
//! * [`symbolic`] — symbol streams, composition along words, contraction
//!   certificates, and sampling of the set of certified limit points;
//! * [`attractors`] — checkable verdicts for minimality, attraction,
//!   persistence under small perturbations, and stability;
//! * [`chaos`] — pointwise orbits driven by symbol streams and their
//!   tail-set approximations;
//! * [`corpus`] — a catalog of worked example systems with their
//!   numerically verifiable hypotheses;
//! * [`cli`] — the command-line front end.

pub mod attractors;
pub mod chaos;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod hutchinson;
pub mod maps;
pub mod rng;
pub mod sets;
pub mod symbolic;

pub use error::{Error, Result};
