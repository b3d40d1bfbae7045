//! Lower-limit removal.
//!
//! Every resource is pre-loaded with its lower limit, leaving
//! `T' = T - sum(L)` tasks, limits `U' = U - L` and shifted costs
//! `C'(j) = C(j + L) - C(L)`. Shifted costs are computed on demand.

use crate::instance::{Instance, Schedule};

#[derive(Debug, Clone)]
pub struct ReducedInstance<'a> {
    original: &'a Instance,
    tasks: usize,
    upper: Vec<usize>,
}

pub fn remove_lower_limits(instance: &Instance) -> ReducedInstance<'_> {
    let upper = instance
        .upper()
        .iter()
        .zip(instance.lower())
        .map(|(&u, &l)| u - l)
        .collect();
    ReducedInstance {
        original: instance,
        tasks: instance.tasks() - instance.lower_sum(),
        upper,
    }
}

/// `x_i = x'_i + L_i`.
pub fn restore(reduced_assignment: &[usize], lower: &[usize]) -> Vec<usize> {
    reduced_assignment
        .iter()
        .zip(lower)
        .map(|(&x, &l)| x + l)
        .collect()
}

impl<'a> ReducedInstance<'a> {
    pub fn original(&self) -> &'a Instance {
        self.original
    }

    pub fn tasks(&self) -> usize {
        self.tasks
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    pub fn upper(&self) -> &[usize] {
        &self.upper
    }

    /// The original lower limits, needed to restore a schedule.
    pub fn lower(&self) -> &[usize] {
        self.original.lower()
    }

    /// `C'_i(j) = C_i(j + L_i) - C_i(L_i)`.
    #[inline]
    pub fn cost(&self, i: usize, j: usize) -> f64 {
        debug_assert!(j <= self.upper[i]);
        let l = self.original.lower()[i];
        let model = &self.original.costs()[i];
        model.value(j + l) - model.value(l)
    }

    /// `m'_i(j)`: zero at `j = 0`, else the original marginal of task `j + L_i`.
    #[inline]
    pub fn marginal(&self, i: usize, j: usize) -> f64 {
        debug_assert!(j <= self.upper[i]);
        if j == 0 {
            0.0
        } else {
            self.original.costs()[i].marginal_value(j + self.original.lower()[i])
        }
    }

    /// Schedule on the original instance; costs are re-evaluated there.
    pub fn restore(&self, reduced_assignment: &[usize]) -> Schedule {
        Schedule::for_instance(self.original, restore(reduced_assignment, self.lower()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedulers::fixtures::worked;

    #[test]
    fn worked_example_reduction() {
        let inst = worked(5);
        let reduced = remove_lower_limits(&inst);
        assert_eq!(reduced.tasks(), 4);
        assert_eq!(reduced.upper(), &[5, 6, 5]);
        assert_eq!(reduced.cost(0, 1), 1.5);
        assert_eq!(reduced.cost(0, 0), 0.0);
        assert_eq!(reduced.marginal(0, 1), 1.5);
        assert_eq!(reduced.marginal(2, 1), 3.0);
    }

    #[test]
    fn zero_lowers_are_identity() {
        let inst = worked(5).with_tasks(5).unwrap();
        let costs = inst.costs()[1..].to_vec();
        let inst = Instance::from_costs(4, costs).unwrap();
        let reduced = remove_lower_limits(&inst);
        assert_eq!(reduced.tasks(), inst.tasks());
        assert_eq!(reduced.upper(), inst.upper());
        for i in 0..inst.len() {
            for j in 0..=inst.upper()[i] {
                assert_eq!(reduced.cost(i, j), inst.cost(i, j));
            }
        }
    }

    #[test]
    fn restore_adds_lowers() {
        assert_eq!(restore(&[1, 2, 0], &[1, 0, 0]), vec![2, 2, 0]);
        assert_eq!(restore(&[0, 0, 0], &[1, 0, 3]), vec![1, 0, 3]);
        let inst = worked(5);
        let sched = remove_lower_limits(&inst).restore(&[1, 3, 0]);
        assert_eq!(sched.assignment, vec![2, 3, 0]);
        assert_eq!(sched.total_cost, 7.5);
    }
}
