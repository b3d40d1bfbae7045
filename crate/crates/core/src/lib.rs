//! Exact minimal-cost partitioning of identical, atomic tasks over
//! heterogeneous resources with per-resource task limits.
//!
//! - [`knapsack`]: dynamic program for the multiple-choice minimum-cost
//!   maximal knapsack packing problem, which solves arbitrary cost functions.
//! - [`schedulers`]: the scheduling front end plus faster optimal algorithms
//!   for increasing, constant and decreasing marginal costs.
//! - [`oracle`]: brute-force references for validation.
//! - [`io`] and [`generate`]: JSON documents and seeded random instances.

pub mod cost_model;
pub mod generate;
pub mod instance;
pub mod io;
pub mod knapsack;
pub mod oracle;
pub mod schedulers;

pub use cost_model::{classify, CostError, CostFunction, CostModel, Regime};
pub use instance::{Instance, InstanceError, Schedule};
pub use schedulers::{dispatch, solve_with, Algorithm, SolveError, Validation};
