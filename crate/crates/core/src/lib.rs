//! Exact-arithmetic toolkit for GKZ hypergeometric systems.
//!
//! The crate follows the standard pipeline for these systems: a point
//! configuration and its lattice of relations ([`lattice`]), the secondary
//! fan with its regular triangulations and secondary polytope ([`fan`]),
//! graded quotient rings of Stanley-Reisner type ([`ring`]), plain and
//! nilpotent-deformed Gamma-series ([`series`]), term-by-term verification
//! against the defining differential operators ([`verify`]), and the
//! mirror-symmetry pipeline that extracts instanton numbers ([`mirror`]).
//!
//! All arithmetic is exact: integers and rationals of arbitrary precision,
//! no floating point anywhere.

pub mod combinatorics;
pub mod cone;
pub mod error;
pub mod fan;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod mirror;
pub mod multiseries;
pub mod ring;
pub mod series;
pub mod verify;

pub use error::{GkzError, Result};
pub use fan::{RegularTriangulation, SecondaryPolytope, WeightVector};
pub use lattice::{PointConfiguration, RelationLattice};
pub use mirror::{InstantonTable, MirrorModel};
pub use multiseries::MultiSeries;
pub use ring::{GradedQuotientRing, RingElement};
pub use series::{GammaData, TruncatedGammaSeries};
pub use verify::FormalSolution;
