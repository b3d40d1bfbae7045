use thiserror::Error;

use crate::cost_model::{CostModel, Regime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("instance has no resources")]
    NoResources,
    #[error("got {lower} lower limits, {upper} upper limits and {costs} cost models")]
    LengthMismatch {
        lower: usize,
        upper: usize,
        costs: usize,
    },
    #[error("resource {resource}: upper limit {upper} is smaller than lower limit {lower}")]
    InvertedLimits {
        resource: usize,
        lower: usize,
        upper: usize,
    },
    #[error("{tasks} tasks is outside [{min}, {max}] (sum of lower limits, sum of upper limits)")]
    TasksOutOfRange { tasks: usize, min: usize, max: usize },
    #[error(
        "resource {resource}: cost model domain [{cost_lower}, {cost_upper}] does not cover limits [{lower}, {upper}]"
    )]
    CostDomain {
        resource: usize,
        lower: usize,
        upper: usize,
        cost_lower: usize,
        cost_upper: usize,
    },
}

/// A scheduling instance: `tasks` identical tasks to spread over resources,
/// each with task limits and a cost model.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    tasks: usize,
    lower: Vec<usize>,
    upper: Vec<usize>,
    costs: Vec<CostModel>,
}

impl Instance {
    pub fn new(
        tasks: usize,
        lower: Vec<usize>,
        upper: Vec<usize>,
        costs: Vec<CostModel>,
    ) -> Result<Self, InstanceError> {
        if costs.is_empty() && lower.is_empty() && upper.is_empty() {
            return Err(InstanceError::NoResources);
        }
        if lower.len() != upper.len() || lower.len() != costs.len() {
            return Err(InstanceError::LengthMismatch {
                lower: lower.len(),
                upper: upper.len(),
                costs: costs.len(),
            });
        }
        for (resource, ((&l, &u), cost)) in lower.iter().zip(&upper).zip(&costs).enumerate() {
            if u < l {
                return Err(InstanceError::InvertedLimits {
                    resource,
                    lower: l,
                    upper: u,
                });
            }
            if !cost.covers(l, u) {
                return Err(InstanceError::CostDomain {
                    resource,
                    lower: l,
                    upper: u,
                    cost_lower: cost.lower(),
                    cost_upper: cost.upper(),
                });
            }
        }
        let instance = Self {
            tasks,
            lower,
            upper,
            costs,
        };
        instance.check_tasks(tasks)?;
        Ok(instance)
    }

    /// Instance whose limits equal each cost model's domain.
    pub fn from_costs(tasks: usize, costs: Vec<CostModel>) -> Result<Self, InstanceError> {
        let lower = costs.iter().map(CostModel::lower).collect();
        let upper = costs.iter().map(CostModel::upper).collect();
        Self::new(tasks, lower, upper, costs)
    }

    fn check_tasks(&self, tasks: usize) -> Result<(), InstanceError> {
        let (min, max) = (self.lower_sum(), self.upper_sum());
        if tasks < min || tasks > max {
            Err(InstanceError::TasksOutOfRange { tasks, min, max })
        } else {
            Ok(())
        }
    }

    /// Same resources with a different task count.
    pub fn with_tasks(&self, tasks: usize) -> Result<Self, InstanceError> {
        self.check_tasks(tasks)?;
        Ok(Self {
            tasks,
            ..self.clone()
        })
    }

    pub fn tasks(&self) -> usize {
        self.tasks
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn lower(&self) -> &[usize] {
        &self.lower
    }

    pub fn upper(&self) -> &[usize] {
        &self.upper
    }

    pub fn costs(&self) -> &[CostModel] {
        &self.costs
    }

    pub fn lower_sum(&self) -> usize {
        self.lower.iter().sum()
    }

    pub fn upper_sum(&self) -> usize {
        self.upper.iter().sum()
    }

    /// Cost of resource `i` running `j` tasks; `j` must respect its limits.
    #[inline]
    pub fn cost(&self, i: usize, j: usize) -> f64 {
        debug_assert!(j >= self.lower[i] && j <= self.upper[i]);
        self.costs[i].value(j)
    }

    /// Marginal-cost regime over every resource's `[lower, upper]`.
    pub fn regime(&self) -> Regime {
        self.costs
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .fold(Regime::Constant, |acc, (cost, (&l, &u))| {
                acc.meet(cost.regime_over(l, u))
            })
    }

    /// Whether `assignment` satisfies the task total and every limit.
    pub fn is_feasible(&self, assignment: &[usize]) -> bool {
        assignment.len() == self.len()
            && assignment.iter().sum::<usize>() == self.tasks
            && assignment
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&x, (&l, &u))| l <= x && x <= u)
    }

    /// Sum of per-resource costs; `assignment` must respect every limit.
    pub fn total_cost(&self, assignment: &[usize]) -> f64 {
        assignment
            .iter()
            .enumerate()
            .map(|(i, &x)| self.cost(i, x))
            .sum()
    }
}

/// Tasks per resource together with the resulting total cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub assignment: Vec<usize>,
    pub total_cost: f64,
}

impl Schedule {
    pub fn for_instance(instance: &Instance, assignment: Vec<usize>) -> Self {
        debug_assert!(instance.is_feasible(&assignment));
        let total_cost = instance.total_cost(&assignment);
        Self {
            assignment,
            total_cost,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab(lower: usize, values: &[f64]) -> CostModel {
        CostModel::tabulated(lower, values.to_vec()).unwrap()
    }

    #[test]
    fn rejects_invalid_instances() {
        assert_eq!(
            Instance::new(0, vec![], vec![], vec![]),
            Err(InstanceError::NoResources)
        );
        let c = tab(0, &[0.0, 1.0, 2.0]);
        assert!(matches!(
            Instance::new(1, vec![2], vec![1], vec![c.clone()]),
            Err(InstanceError::InvertedLimits { resource: 0, .. })
        ));
        assert!(matches!(
            Instance::new(5, vec![0], vec![2], vec![c.clone()]),
            Err(InstanceError::TasksOutOfRange { tasks: 5, min: 0, max: 2 })
        ));
        assert!(matches!(
            Instance::new(1, vec![0], vec![3], vec![c.clone()]),
            Err(InstanceError::CostDomain { .. })
        ));
        assert!(matches!(
            Instance::new(1, vec![0, 0], vec![2], vec![c]),
            Err(InstanceError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn feasibility_and_cost() {
        let inst = Instance::from_costs(3, vec![tab(1, &[1.0, 2.0, 4.0]), tab(0, &[0.0, 5.0])])
            .unwrap();
        assert!(inst.is_feasible(&[2, 1]));
        assert!(inst.is_feasible(&[3, 0]));
        assert!(!inst.is_feasible(&[0, 1]));
        assert!(!inst.is_feasible(&[2, 0]));
        assert_eq!(inst.total_cost(&[2, 1]), 7.0);
        assert!(inst.with_tasks(5).is_err());
        assert_eq!(inst.with_tasks(4).unwrap().tasks(), 4);
    }
}
