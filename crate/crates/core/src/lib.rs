//! Simultaneous arithmetic progressions of rational points on elliptic
//! curves, by exact exhaustive search.
//!
//! A set of points on a curve forms a *simultaneous arithmetic
//! progression* when its x-coordinates form an arithmetic progression
//! and its y-coordinates do too, not necessarily in the same order. For
//! curves in Tate normal form
//!
//! ```text
//! E(a, b):  Y^2 + a XY + b Y = X^3 - b X^2
//! ```
//!
//! an x-progression `0, b, 2b, ...` anchored at the distinguished points
//! `(0, -b)` and `(b, 0)` reduces to an exactly solvable system of
//! quadrics and hyperplanes, and candidate y-progressions pin that system
//! down to finitely many linear cases. This crate enumerates and solves
//! those cases over exact rationals, certifies every progression it
//! claims, and regenerates curve points through the group law to recover
//! lower bounds for the longest x-, y-, and simultaneous progressions.
//!
//! The headline results it reproduces: nine curves carry a length-4
//! simultaneous progression, exactly two carry one of length 5 — with
//! `E(-5/16, 1/64)` reaching `S_x >= 6` and `S_y >= 7` — the length-6
//! search is empty across all 360 cases, and the length-3 family
//! `E(2b-1, b)` works for every nonsingular `b != 0`.
//!
//! ```
//! use apcurves::search::{accepted, run_search};
//!
//! let results = run_search(5);
//! let winners = accepted(&results);
//! assert_eq!(winners.len(), 2);
//! let curve = winners[1].curve.as_ref().unwrap();
//! assert_eq!(curve.to_string(), "E(-5/16, 1/64)");
//! ```
//!
//! Modules follow the pipeline: [`rational`] and [`linalg`]/[`poly`]
//! supply the exact arithmetic, [`curve`] the curve models and group
//! law, [`progression`] the AP certificates, [`search`] and
//! [`parametric`] the case enumeration and solving, and [`explore`] the
//! point generation and table reproduction.

pub mod curve;
pub mod explore;
pub mod linalg;
pub mod parametric;
pub mod poly;
pub mod progression;
pub mod rational;
pub mod search;

pub use curve::{CoordChange, CurveError, CurvePoint, TateCurve, WeierstrassCurve};
pub use progression::{APCertificate, BoundsReport, SimultaneousCertificate};
pub use rational::Rational;
pub use search::{CaseAssignment, CaseResult, Verdict};
