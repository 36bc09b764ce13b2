//! Exact numerical machinery for rank-2 weak Fano bundles on Fano threefolds
//! of Picard rank one.
//!
//! Everything here is exact rational or integer arithmetic. The crate is
//! organised bottom-up:
//!
//! * [`chow`] : numerical Chow ring of the threefold, Chern characters and
//!   Hirzebruch–Riemann–Roch;
//! * [`proj_bundle`] : the intersection ring of `P(E)` for a rank-2 bundle `E`;
//! * [`cohom`] : closed-form cohomology tables (Bott, quadric line bundles,
//!   spinor twists, a flag-variety family);
//! * [`resolutions`] : K-theoretic exactness checks and multiplicity solving;
//! * [`classify`] : the numerical classification sieves;
//! * [`k3`] : small even lattices standing in for K3 Picard groups;
//! * [`quiver`] : Kronecker quiver dimension-vector numerics;
//! * [`dsl`] : a tiny expression language for intersection numbers;
//! * [`suites`] : named verification suites with machine-readable reports.

pub mod chow;
pub mod classify;
pub mod cohom;
pub mod dsl;
mod error;
pub mod k3;
pub mod proj_bundle;
pub mod quiver;
mod rational;
pub mod resolutions;
pub mod suites;

pub use error::{Error, Result};
pub use rational::{frac, int, is_integer, to_integer, Rational};
