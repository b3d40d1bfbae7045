use crate::instance::{Instance, Schedule};
use crate::schedulers::{run_reduced, Algorithm, ReducedInstance, SolveError, Validation};

/// Resource with the cheapest cost for `t` tasks among `candidates`,
/// lowest index on ties.
pub(crate) fn cheapest_for(
    reduced: &ReducedInstance<'_>,
    candidates: impl IntoIterator<Item = usize>,
    t: usize,
) -> Option<(usize, f64)> {
    candidates
        .into_iter()
        .map(|i| (i, reduced.cost(i, t)))
        .fold(None, |best, (i, c)| match best {
            Some((_, bc)) if bc <= c => best,
            _ => Some((i, c)),
        })
}

/// Everything on the single resource that is cheapest for all tasks.
pub fn assign(reduced: &ReducedInstance<'_>) -> Result<Vec<usize>, SolveError> {
    let tasks = reduced.tasks();
    if let Some((resource, &upper)) = reduced.upper().iter().enumerate().find(|(_, &u)| u < tasks)
    {
        return Err(SolveError::Limits {
            algorithm: Algorithm::MarDecUn,
            resource,
            upper,
            tasks,
        });
    }
    let (k, _) = cheapest_for(reduced, 0..reduced.len(), tasks).expect("at least one resource");
    let mut x = vec![0; reduced.len()];
    x[k] = tasks;
    Ok(x)
}

/// Optimal for nonincreasing marginal costs when no upper limit binds; `Θ(n)`.
pub fn solve_mardecun(instance: &Instance, validation: Validation) -> Result<Schedule, SolveError> {
    run_reduced(Algorithm::MarDecUn, instance, validation, assign)
}
