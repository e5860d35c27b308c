//! Exact computation of trigraded `Ext` charts over the `C`-motivic `A(1)`
//! dual at p = 2, together with the Brown-Gitler comodule algebra and the
//! closed-form lines of the kq-resolution.
//!
//! The crate is organized bottom-up:
//!
//! * [`linalg`] - bit-packed GF(2) matrices (rank, kernels, homology).
//! * [`steenrod`] - monomials of the dual motivic Steenrod algebra, its
//!   sub/quotient Hopf algebras, coproducts, degrees and Mahowald weights.
//! * [`comodule`] - locally finite trigraded `A(1)`-dual comodules:
//!   Brown-Gitler modules, weight slices, tensor products, suspensions,
//!   the splitting map and the two families of short exact sequences.
//! * [`cobar`] - the reduced cobar complex, used directly on small windows
//!   and as an independent oracle for the resolution engine.
//! * [`resolution`] - minimal free resolutions over the finite dual of
//!   `A(1)`; the workhorse behind every chart at production windows.
//! * [`ext`] - trigraded charts with `tau`, `h0`, `h1`, `alpha`, `beta`
//!   actions, beta-power-torsion splitting, Margolis homology, and
//!   tau-inversion to a classical chart.
//! * [`classical`] - an independent classical (tau = 1) engine over the
//!   classical `A(1)` dual, used as the Betti-realization oracle.
//! * [`kq`] - multi-index Kuenneth assembly of the E1-page of the
//!   kq-resolution, closed-form `Z_i` modules and E-infinity 0/1-lines,
//!   v1- and eta-periodic stems, vanishing and divisibility checks.
//! * [`verify`] - named invariant suites aggregating every module's checks.
//!
//! All gradings are stored internally as `(s, t, w)` with `t` the internal
//! topological degree; display layers convert to `(stem, s, w)` with
//! `stem = t - s`.

pub mod classical;
pub mod cobar;
pub mod comodule;
pub mod ext;
pub mod kq;
pub mod linalg;
pub mod oracle;
pub mod resolution;
pub mod steenrod;
pub mod verify;

mod error;

pub use error::Error;

/// Engine version string baked into cache keys; bump on algorithm changes.
pub const ENGINE_VERSION: &str = "kqcoop-engine-1";
