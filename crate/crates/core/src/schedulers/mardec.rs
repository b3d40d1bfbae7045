//! Nonincreasing marginal costs with binding upper limits.
//!
//! With concave costs an optimal schedule has at most one resource strictly
//! between zero and its upper limit. Either that resource has no binding
//! limit (and may take every task), or it is one of the limited resources.
//! Both cases are searched exhaustively, with a two-item knapsack over the
//! limited resources (`0` or `U_r` tasks each) covering the rest.

use crate::instance::{Instance, Schedule};
use crate::knapsack::{fill_tables, DpTables, Item, ItemClass, KnapsackInstance};
use crate::schedulers::mardecun::cheapest_for;
use crate::schedulers::{run_reduced, Algorithm, ReducedInstance, SolveError, Validation};

/// Resources split by whether their upper limit binds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourcePartition {
    /// Resources with `U_i < T`, in index order; class `c` maps to `limited[c]`.
    pub limited: Vec<usize>,
    pub unlimited: Vec<usize>,
}

impl ResourcePartition {
    pub fn new(reduced: &ReducedInstance<'_>) -> Self {
        let (limited, unlimited) =
            (0..reduced.len()).partition(|&i| reduced.upper()[i] < reduced.tasks());
        Self { limited, unlimited }
    }

    /// Resource behind knapsack class `class`.
    pub fn resource(&self, class: usize) -> usize {
        self.limited[class]
    }
}

/// Two-item classes `{0 tasks at cost 0, U_r tasks at cost C_r(U_r)}`.
pub fn prepare(reduced: &ReducedInstance<'_>, partition: &ResourcePartition) -> Vec<ItemClass> {
    partition
        .limited
        .iter()
        .map(|&r| {
            let u = reduced.upper()[r];
            ItemClass::new(vec![Item::new(0, 0.0), Item::new(u, reduced.cost(r, u))])
        })
        .collect()
}

/// Schedule behind `K[n_lim][t]`: limited resources at `0` or `U_r`,
/// everything else at zero. `None` when that entry is infinite.
pub fn translate(
    reduced: &ReducedInstance<'_>,
    partition: &ResourcePartition,
    knapsack: Option<(&KnapsackInstance, &DpTables)>,
    t: usize,
) -> Option<Vec<usize>> {
    let mut x = vec![0; reduced.len()];
    let Some((instance, tables)) = knapsack else {
        return (t == 0).then_some(x);
    };
    let chosen = tables.selection(instance, tables.classes(), t)?;
    for (class, &j) in chosen.iter().enumerate() {
        x[partition.resource(class)] = instance.classes()[class].items()[j].weight;
    }
    Some(x)
}

struct Incumbent {
    cost: f64,
    assignment: Option<Vec<usize>>,
}

impl Incumbent {
    fn offer(
        &mut self,
        cost: f64,
        resource: usize,
        t: usize,
        rebuild: impl FnOnce() -> Option<Vec<usize>>,
    ) {
        if cost < self.cost {
            let mut x = rebuild().expect("finite partial cost has a selection");
            x[resource] = t;
            self.cost = cost;
            self.assignment = Some(x);
        }
    }
}

fn tables_for(classes: Vec<ItemClass>, tasks: usize) -> Option<(KnapsackInstance, DpTables)> {
    if classes.is_empty() {
        return None;
    }
    let instance = KnapsackInstance::new(classes, tasks).expect("prepared classes are valid");
    let tables = fill_tables(&instance);
    Some((instance, tables))
}

fn partial(knapsack: &Option<(KnapsackInstance, DpTables)>, t: usize) -> f64 {
    match knapsack {
        Some((_, tables)) => tables.value(tables.classes(), t),
        None if t == 0 => 0.0,
        None => f64::INFINITY,
    }
}

pub fn assign(reduced: &ReducedInstance<'_>) -> Vec<usize> {
    let tasks = reduced.tasks();
    let partition = ResourcePartition::new(reduced);
    let classes = prepare(reduced, &partition);
    let mut best = Incumbent {
        cost: f64::INFINITY,
        assignment: None,
    };

    // An unlimited resource at intermediate capacity (t = T: it takes all).
    if !partition.unlimited.is_empty() {
        let knapsack = tables_for(classes.clone(), tasks);
        let as_ref = knapsack.as_ref().map(|(i, t)| (i, t));
        for t in 0..=tasks {
            let (k, c) = cheapest_for(reduced, partition.unlimited.iter().copied(), t)
                .expect("non-empty candidate set");
            best.offer(c + partial(&knapsack, tasks - t), k, t, || {
                translate(reduced, &partition, as_ref, tasks - t)
            });
        }
    }

    // A limited resource at intermediate capacity: drop it from the knapsack.
    for class in 0..partition.limited.len() {
        let mut modified = classes.clone();
        modified[class] = ItemClass::new(vec![Item::new(0, 0.0)]);
        let knapsack = tables_for(modified, tasks);
        let as_ref = knapsack.as_ref().map(|(i, t)| (i, t));
        let k = partition.resource(class);
        for t in 0..reduced.upper()[k] {
            best.offer(reduced.cost(k, t) + partial(&knapsack, tasks - t), k, t, || {
                translate(reduced, &partition, as_ref, tasks - t)
            });
        }
    }

    best.assignment
        .expect("a feasible schedule exists for valid instances")
}

/// Optimal for nonincreasing marginal costs; `O(T n^2)` time, `O(T n)` space.
pub fn solve_mardec(instance: &Instance, validation: Validation) -> Result<Schedule, SolveError> {
    run_reduced(Algorithm::MarDec, instance, validation, |r| Ok(assign(r)))
}
