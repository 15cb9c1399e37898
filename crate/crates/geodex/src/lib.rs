//! geodex: a numerical verification laboratory for integral-geometric
//! inequalities on closed immersed manifolds in constant-curvature model
//! spaces — Euclidean space `R^n` and hyperbolic space `H^n(K)` in the
//! hyperboloid model.
//!
//! The library computes both sides of a family of isoperimetric-type
//! inequalities (chord integrals over `M × M` against winding-number
//! integrals over the ambient space) for concrete immersed curves and
//! hypersurfaces, and certifies equality cases, strict-inequality cases and
//! internal consistency identities.
//!
//! Module map:
//! - [`comparison`]: scalar comparison functions `sn`, `cs`, `ct`, the
//!   ball-volume integrals `V`, `W`, the positivity integrand `psi`, and all
//!   dimensional constants.
//! - [`modelspace`]: the geometry kernel — points, tangents, exp/log,
//!   parallel transport, and geodesic–simplex intersection.
//! - [`immersion`]: built-in parametric immersions, quadrature atlases and
//!   facet meshes.
//! - [`geodspace`]: the space of oriented geodesics — charts, invariant-
//!   measure sampling, Crofton estimation, winding numbers, convexity
//!   averages.
//! - [`secant`]: per-chord geometry — chord frames, transfer maps, secant
//!   densities, and the singular chord-integral engine.
//! - [`theorems`]: assembly of LHS/RHS for each inequality and verdicts.
//! - [`config`] / [`report`]: run configuration, presets and serialized
//!   reports backing the `geodex` binary.

pub mod comparison;
pub mod config;
pub mod geodspace;
pub mod immersion;
pub mod modelspace;
pub mod report;
pub mod secant;
pub mod theorems;
pub mod util;
