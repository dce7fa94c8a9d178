//! Fast multipole method for the discretized 2D Helmholtz single- and
//! double-layer boundary operators, plus an error laboratory that measures
//! the exact global truncation-error decomposition of the algorithm and
//! evaluates closed-form a-priori bounds for each part.
//!
//! The crate is organized bottom-up:
//!
//! * [`specfun`] - integer-order cylinder functions `J_n`, `Y_n`, `H_n^(1)`,
//!   log-gamma, and the normalized Neumann factor `C_n(z)`, all with
//!   log-magnitude variants for extreme orders.
//! * [`grafbounds`] - truncation tails of Graf's addition theorem: exact
//!   brute-force sums, complex remainder evaluation, and the closed-form
//!   upper bounds used by the error laboratory.
//! * [`boundary`] - parametric boundary curves discretized into equidistant
//!   knots with Jacobian weights and outward normals.
//! * [`quadtree`] - the adaptive quadtree, adjacency, and well-separated
//!   interaction lists with bounded level offsets.
//! * [`fmm`] - the accelerated matrix-vector product (P2M, M2M, M2L, L2L,
//!   L2P passes) and the dense reference product.
//! * [`errorlab`] - exact error decomposition per source point, dual-path
//!   moment/local error recursions, and the analytic bounds.

pub mod boundary;
pub mod errorlab;
pub mod fmm;
pub mod geom;
pub mod grafbounds;
pub mod quadtree;
pub mod specfun;

pub use geom::Point;
