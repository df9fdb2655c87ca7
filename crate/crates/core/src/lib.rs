//! Set-valued convex and quasiconvex duality at desk scale.
//!
//! The crate models closed convex monotone subsets of low-dimensional spaces,
//! set-valued functions with such images, and the dual objects attached to
//! them: minimal penalty functions built from support functions of level
//! sets, maximal risk functions obtained by inversion, and Fenchel–Moreau
//! type conjugates. An exact integer-lattice universe doubles as a
//! brute-force oracle for the lattice identities behind the dual
//! representations.
//!
//! Modules:
//! - [`cone`]: polyhedral ordering cones, strict relations, polar direction grids.
//! - [`discrete`]: exact monotone subsets of `Z^n` and increasing grid functions.
//! - [`linprog`]: dense two-phase simplex, 2D vertex enumeration, max-affine conjugates.
//! - [`suppset`]: closed convex monotone upper sets as half-space intersections.
//! - [`setfun`]: set-valued functions given by per-direction scalarizations.
//! - [`duality`]: penalty/risk pipelines, reconstructions and comparisons.

pub mod cone;
pub mod discrete;
pub mod duality;
pub mod linprog;
pub mod setfun;
pub mod suppset;

/// Default comparison tolerance for real-valued data.
pub const DEFAULT_TOL: f64 = 1e-9;
