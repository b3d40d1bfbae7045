use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::instance::{Instance, Schedule};
use crate::schedulers::{run_reduced, Algorithm, ReducedInstance, SolveError, Validation};

/// Heap entry ordered so that `BinaryHeap` pops the smallest marginal
/// first, lowest resource index on ties.
#[derive(Debug, Clone, Copy)]
struct Next {
    marginal: f64,
    resource: usize,
}

impl PartialEq for Next {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Next {}

impl PartialOrd for Next {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Next {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .marginal
            .total_cmp(&self.marginal)
            .then_with(|| other.resource.cmp(&self.resource))
    }
}

/// Greedy assignment of one task at a time to the resource with the
/// cheapest next marginal cost. `on_step` sees each `(resource, marginal)`.
pub(crate) fn assign_traced(
    reduced: &ReducedInstance<'_>,
    mut on_step: impl FnMut(usize, f64),
) -> Vec<usize> {
    let upper = reduced.upper();
    let mut x = vec![0; reduced.len()];
    let mut heap: BinaryHeap<Next> = (0..reduced.len())
        .filter(|&i| upper[i] > 0)
        .map(|i| Next {
            marginal: reduced.marginal(i, 1),
            resource: i,
        })
        .collect();
    for _ in 0..reduced.tasks() {
        let Next { marginal, resource } = heap.pop().expect("task count within upper limits");
        on_step(resource, marginal);
        x[resource] += 1;
        if x[resource] < upper[resource] {
            heap.push(Next {
                marginal: reduced.marginal(resource, x[resource] + 1),
                resource,
            });
        }
    }
    x
}

pub fn assign(reduced: &ReducedInstance<'_>) -> Vec<usize> {
    assign_traced(reduced, |_, _| {})
}

/// Optimal for nondecreasing marginal costs; `Θ(n + T log n)`.
pub fn solve_marin(instance: &Instance, validation: Validation) -> Result<Schedule, SolveError> {
    run_reduced(Algorithm::MarIn, instance, validation, |r| Ok(assign(r)))
}
