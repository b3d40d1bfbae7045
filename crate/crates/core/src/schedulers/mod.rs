//! Optimal schedulers for the minimal-cost task partitioning problem.
//!
//! [`solve_dp`] handles arbitrary cost functions through the knapsack
//! dynamic program. The other solvers exploit monotone marginal costs:
//!
//! | regime     | no binding upper limit | binding upper limits |
//! |------------|------------------------|----------------------|
//! | increasing | MarIn                  | MarIn                |
//! | constant   | MarDecUn               | MarCo                |
//! | decreasing | MarDecUn               | MarDec               |
//!
//! All specialized solvers run on the instance with lower limits removed
//! (see [`reduce`]) and translate the result back.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cost_model::Regime;
use crate::instance::{Instance, Schedule};
use crate::knapsack::KnapsackError;

pub mod dispatch;
pub mod dp;
pub mod marco;
pub mod mardec;
pub mod mardecun;
pub mod marin;
pub mod reduce;

pub use dispatch::{dispatch, route};
pub use dp::solve_dp;
pub use marco::solve_marco;
pub use mardec::solve_mardec;
pub use mardecun::solve_mardecun;
pub use marin::solve_marin;
pub use reduce::{remove_lower_limits, restore, ReducedInstance};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("{algorithm} requires {required} marginal costs but the instance is {found}")]
    Regime {
        algorithm: Algorithm,
        required: Regime,
        found: Regime,
    },
    #[error("{algorithm} requires every upper limit to reach {tasks} tasks, resource {resource} allows {upper}")]
    Limits {
        algorithm: Algorithm,
        resource: usize,
        upper: usize,
        tasks: usize,
    },
    #[error(transparent)]
    Knapsack(#[from] KnapsackError),
}

/// Whether a specialized solver verifies its regime precondition first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    #[default]
    Checked,
    Unchecked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Dp,
    MarIn,
    MarCo,
    MarDecUn,
    MarDec,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Dp,
        Algorithm::MarIn,
        Algorithm::MarCo,
        Algorithm::MarDecUn,
        Algorithm::MarDec,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Dp => "dp",
            Algorithm::MarIn => "marin",
            Algorithm::MarCo => "marco",
            Algorithm::MarDecUn => "mardecun",
            Algorithm::MarDec => "mardec",
        }
    }

    /// Weakest regime under which the algorithm is optimal.
    pub fn required_regime(self) -> Regime {
        match self {
            Algorithm::Dp => Regime::Arbitrary,
            Algorithm::MarIn => Regime::Increasing,
            Algorithm::MarCo => Regime::Constant,
            Algorithm::MarDecUn | Algorithm::MarDec => Regime::Decreasing,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Runs one named algorithm on `instance`.
pub fn solve_with(
    algorithm: Algorithm,
    instance: &Instance,
    validation: Validation,
) -> Result<Schedule, SolveError> {
    match algorithm {
        Algorithm::Dp => solve_dp(instance),
        Algorithm::MarIn => solve_marin(instance, validation),
        Algorithm::MarCo => solve_marco(instance, validation),
        Algorithm::MarDecUn => solve_mardecun(instance, validation),
        Algorithm::MarDec => solve_mardec(instance, validation),
    }
}

fn check_regime(
    algorithm: Algorithm,
    reduced: &ReducedInstance<'_>,
    validation: Validation,
) -> Result<(), SolveError> {
    if validation == Validation::Unchecked {
        return Ok(());
    }
    let found = reduced.original().regime();
    let required = algorithm.required_regime();
    if found.satisfies(required) {
        Ok(())
    } else {
        Err(SolveError::Regime {
            algorithm,
            required,
            found,
        })
    }
}

/// Shared driver for the specialized solvers: reduce, validate, handle the
/// degenerate task counts, run `assign`, restore.
fn run_reduced(
    algorithm: Algorithm,
    instance: &Instance,
    validation: Validation,
    assign: impl FnOnce(&ReducedInstance<'_>) -> Result<Vec<usize>, SolveError>,
) -> Result<Schedule, SolveError> {
    let reduced = remove_lower_limits(instance);
    check_regime(algorithm, &reduced, validation)?;
    let assignment = if reduced.tasks() == 0 {
        vec![0; reduced.len()]
    } else if reduced.tasks() == reduced.upper().iter().sum::<usize>() {
        reduced.upper().to_vec()
    } else {
        assign(&reduced)?
    };
    Ok(reduced.restore(&assignment))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::cost_model::CostModel;
    use crate::instance::Instance;

    pub fn tab(lower: usize, values: &[f64]) -> CostModel {
        CostModel::tabulated(lower, values.to_vec()).unwrap()
    }

    pub fn worked(tasks: usize) -> Instance {
        Instance::from_costs(
            tasks,
            vec![
                tab(1, &[2.0, 3.5, 5.5, 8.0, 10.0, 12.0]),
                tab(0, &[0.0, 1.5, 2.5, 4.0, 7.0, 9.0, 11.0]),
                tab(0, &[0.0, 3.0, 4.0, 5.0, 6.0, 7.0]),
            ],
        )
        .unwrap()
    }

    /// Table `[base, base + m1, base + m1 + m2, ...]` from marginals.
    pub fn from_marginals(lower: usize, base: f64, marginals: &[f64]) -> CostModel {
        let mut values = vec![base];
        for m in marginals {
            values.push(values.last().unwrap() + m);
        }
        CostModel::tabulated(lower, values).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
            assert_eq!(a.to_string(), a.name());
        }
        assert!("greedy".parse::<Algorithm>().is_err());
    }
}
