use crate::cost_model::Regime;
use crate::instance::{Instance, Schedule};
use crate::schedulers::{remove_lower_limits, solve_with, Algorithm, SolveError, Validation};

/// Cheapest optimal algorithm for `regime`, given whether any upper limit
/// binds once lower limits are removed.
pub fn route(regime: Regime, limits_bind: bool) -> Algorithm {
    match (regime, limits_bind) {
        (Regime::Increasing, _) => Algorithm::MarIn,
        (Regime::Constant | Regime::Decreasing, false) => Algorithm::MarDecUn,
        (Regime::Constant, true) => Algorithm::MarCo,
        (Regime::Decreasing, true) => Algorithm::MarDec,
        (Regime::Arbitrary, _) => Algorithm::Dp,
    }
}

/// Classifies the instance (unless `hint` is given), runs the cheapest
/// applicable algorithm and reports which one ran.
///
/// A hint is trusted: the chosen solver does not re-check the regime.
pub fn dispatch(
    instance: &Instance,
    hint: Option<Regime>,
) -> Result<(Schedule, Algorithm), SolveError> {
    let regime = hint.unwrap_or_else(|| instance.regime());
    let reduced = remove_lower_limits(instance);
    let limits_bind = reduced.upper().iter().any(|&u| u < reduced.tasks());
    let algorithm = route(regime, limits_bind);
    // Classification (or the caller's hint) already covers the precondition.
    let schedule = solve_with(algorithm, instance, Validation::Unchecked)?;
    Ok((schedule, algorithm))
}
