use crate::instance::{Instance, Schedule};
use crate::schedulers::{run_reduced, Algorithm, ReducedInstance, SolveError, Validation};

/// Fills resources to capacity in order of their (constant) marginal cost.
pub fn assign(reduced: &ReducedInstance<'_>) -> Vec<usize> {
    let upper = reduced.upper();
    let mut order: Vec<(f64, usize)> = (0..reduced.len())
        .filter(|&i| upper[i] > 0)
        .map(|i| (reduced.marginal(i, 1), i))
        .collect();
    order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut x = vec![0; reduced.len()];
    let mut remaining = reduced.tasks();
    for (_, k) in order {
        if remaining == 0 {
            break;
        }
        let take = upper[k].min(remaining);
        x[k] = take;
        remaining -= take;
    }
    debug_assert_eq!(remaining, 0);
    x
}

/// Optimal for constant marginal costs; `Θ(n log n)`.
pub fn solve_marco(instance: &Instance, validation: Validation) -> Result<Schedule, SolveError> {
    run_reduced(Algorithm::MarCo, instance, validation, |r| Ok(assign(r)))
}
