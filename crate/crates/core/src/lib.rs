//! Finite Hausdorff dimension and finite box-counting dimension of finite
//! metric spaces and of graphs metrized by edge lengths.
//!
//! * [`metricspace`]: validated distance matrices and the invariants δ, ∇, Δ.
//! * [`cover`]: exact and greedy minimum-weight 2-coverings, `H^s_η`, `N_∇`.
//! * [`dimension`]: `dim_fH` by root finding, `dim_fB` by closed formula.
//! * [`graph`]: graphs with edge lengths, shortest-path metrics, clique covers.
//! * [`families`]: named graph families, products and constructions of
//!   graphs with prescribed dimension.
//! * [`sweep`]: exhaustive bound checks over enumerated graphs.
//! * [`exec`]: sequential or rayon-parallel mapping for the sweeps.
//! * [`intrinsic`]: geodesics, segment graphs and the intrinsic-space test.
//! * [`io`]: CSV / JSON distance matrices, edge-list / JSON graphs.

pub mod cover;
pub mod dimension;
pub mod error;
pub mod exec;
pub mod families;
pub mod graph;
pub mod intrinsic;
pub mod io;
pub mod metricspace;
pub mod sweep;

pub use cover::{SolveMode, SolverConfig};
pub use dimension::{Dimension, DimensionResult};
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::Graph;
pub use metricspace::{FiniteMetricSpace, MetricProfile};
