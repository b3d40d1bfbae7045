//! Exhaustive reference solvers for small instances.
//!
//! Nothing here touches the knapsack tables or the specialized schedulers;
//! every answer comes from plain enumeration in lexicographic order.

use thiserror::Error;

use crate::instance::Instance;
use crate::knapsack::KnapsackInstance;

pub const DEFAULT_BOUND: u128 = 10_000_000;
pub const MAX_WITNESSES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{combinations} combinations exceed the enumeration bound {bound}")]
    TooLarge { combinations: u128, bound: u128 },
    #[error("no selection fits the capacity")]
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub min_cost: f64,
    pub best_used_capacity: usize,
    /// Cost-minimal assignments (schedules) or item selections, at most
    /// [`MAX_WITNESSES`], in enumeration order.
    pub witnesses: Vec<Vec<usize>>,
}

fn check_bound(sizes: impl IntoIterator<Item = usize>, bound: u128) -> Result<(), OracleError> {
    let mut combinations: u128 = 1;
    for size in sizes {
        combinations = combinations.saturating_mul(size as u128);
    }
    if combinations > bound {
        Err(OracleError::TooLarge {
            combinations,
            bound,
        })
    } else {
        Ok(())
    }
}

/// Calls `visit` with every vector in the box `0 <= v[k] < sizes[k]`,
/// last coordinate varying fastest.
fn odometer(sizes: &[usize], mut visit: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let mut v = vec![0; sizes.len()];
    loop {
        visit(&v);
        let mut k = sizes.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            v[k] += 1;
            if v[k] < sizes[k] {
                break;
            }
            v[k] = 0;
        }
    }
}

#[derive(Default)]
struct Best {
    key: Option<(std::cmp::Reverse<usize>, f64)>,
    witnesses: Vec<Vec<usize>>,
}

impl Best {
    /// Higher `used` wins, then lower `cost`; exact ties are collected.
    fn offer(&mut self, used: usize, cost: f64, witness: &[usize]) {
        let key = (std::cmp::Reverse(used), cost);
        match self.key {
            Some(best) if best == key => {
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(witness.to_vec());
                }
            }
            Some(best) if best < key => {}
            _ => {
                self.key = Some(key);
                self.witnesses.clear();
                self.witnesses.push(witness.to_vec());
            }
        }
    }

    fn finish(self) -> Result<OracleResult, OracleError> {
        let (used, cost) = self.key.ok_or(OracleError::Infeasible)?;
        Ok(OracleResult {
            min_cost: cost,
            best_used_capacity: used.0,
            witnesses: self.witnesses,
        })
    }
}

/// Minimum over every assignment with `lower <= x <= upper` summing to the
/// task count.
pub fn enumerate_schedules(instance: &Instance, bound: u128) -> Result<OracleResult, OracleError> {
    let sizes: Vec<usize> = instance
        .lower()
        .iter()
        .zip(instance.upper())
        .map(|(&l, &u)| u - l + 1)
        .collect();
    check_bound(sizes.iter().copied(), bound)?;

    let mut best = Best::default();
    let mut x = vec![0; sizes.len()];
    odometer(&sizes, |offsets| {
        for (i, (slot, &off)) in x.iter_mut().zip(offsets).enumerate() {
            *slot = instance.lower()[i] + off;
        }
        if x.iter().sum::<usize>() != instance.tasks() {
            return;
        }
        let cost: f64 = x
            .iter()
            .enumerate()
            .map(|(i, &j)| instance.costs()[i].evaluate(j).expect("within limits"))
            .sum();
        best.offer(instance.tasks(), cost, &x);
    });
    best.finish()
}

/// Highest-occupancy, then cheapest, one-item-per-class selection.
pub fn enumerate_knapsack(
    instance: &KnapsackInstance,
    bound: u128,
) -> Result<OracleResult, OracleError> {
    let classes = instance.classes();
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    check_bound(sizes.iter().copied(), bound)?;

    let mut best = Best::default();
    odometer(&sizes, |chosen| {
        let (weight, cost) = chosen
            .iter()
            .zip(classes)
            .map(|(&j, c)| c.items()[j])
            .fold((0, 0.0), |(w, c), it| (w + it.weight, c + it.cost));
        if weight <= instance.capacity() {
            best.offer(weight, cost, chosen);
        }
    });
    best.finish()
}

/// Cheapest selection from the first `r` classes weighing exactly `t`,
/// or infinity when none exists.
pub fn partial_value(
    instance: &KnapsackInstance,
    r: usize,
    t: usize,
    bound: u128,
) -> Result<f64, OracleError> {
    let classes = &instance.classes()[..r];
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    check_bound(sizes.iter().copied(), bound)?;

    let mut min = f64::INFINITY;
    if r == 0 {
        return Ok(if t == 0 { 0.0 } else { min });
    }
    odometer(&sizes, |chosen| {
        let (weight, cost) = chosen
            .iter()
            .zip(classes)
            .map(|(&j, c)| c.items()[j])
            .fold((0, 0.0), |(w, c), it| (w + it.weight, c + it.cost));
        if weight == t && cost < min {
            min = cost;
        }
    });
    Ok(min)
}

/// Knapsack encoding of a scheduling instance: class `i` holds one item per
/// allowed task count `j` with weight `j` and cost `C_i(j)`.
pub fn schedule_to_knapsack(instance: &Instance) -> KnapsackInstance {
    let classes = (0..instance.len())
        .map(|i| {
            (instance.lower()[i]..=instance.upper()[i])
                .map(|j| crate::knapsack::Item::new(j, instance.cost(i, j)))
                .collect()
        })
        .collect();
    KnapsackInstance::new(classes, instance.tasks()).expect("instance has resources")
}
