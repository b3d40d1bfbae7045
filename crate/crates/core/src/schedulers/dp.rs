use crate::instance::{Instance, Schedule};
use crate::knapsack::{self, Item, KnapsackInstance};
use crate::schedulers::SolveError;

/// Knapsack encoding: class `i` offers one item per task count
/// `j in [L_i, min(U_i, T)]`, weighing `j` and costing `C_i(j)`.
pub fn to_knapsack(instance: &Instance) -> KnapsackInstance {
    let tasks = instance.tasks();
    let classes = (0..instance.len())
        .map(|i| {
            let (l, u) = (instance.lower()[i], instance.upper()[i].min(tasks));
            (l..=u).map(|j| Item::new(j, instance.cost(i, j))).collect()
        })
        .collect();
    KnapsackInstance::new(classes, tasks).expect("instances have at least one resource")
}

/// Optimal schedule for arbitrary cost functions in `O(T^2 n)`.
pub fn solve_dp(instance: &Instance) -> Result<Schedule, SolveError> {
    let ks = to_knapsack(instance);
    let solution = knapsack::solve(&ks)?;
    // Contiguous classes with sum(L) <= T <= sum(U) always fill the knapsack.
    debug_assert_eq!(solution.used_capacity, instance.tasks());
    let assignment = solution
        .chosen
        .iter()
        .zip(instance.lower())
        .map(|(&j, &l)| l + j)
        .collect();
    Ok(Schedule {
        assignment,
        total_cost: solution.total_cost,
    })
}
