//! Multiple-choice minimum-cost maximal knapsack packing.
//!
//! Exactly one item is picked from every class. Among all selections whose
//! total weight fits the capacity, the solver maximizes the occupied
//! capacity first and minimizes the total cost second. The objective is
//! handled lexicographically rather than through a large penalty constant.
//!
//! The dynamic program fills two dense `classes x (capacity + 1)` tables:
//! `K[r][t]`, the cheapest selection from the first `r` classes weighing
//! exactly `t` (infinite when none exists), and `I[r][t]`, the item of
//! class `r` used by that selection.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KnapsackError {
    #[error("knapsack instance has no item classes")]
    NoClasses,
    #[error("item class {class} is empty")]
    EmptyClass { class: usize },
    #[error("item {item} of class {class} has invalid cost {cost}")]
    InvalidCost { class: usize, item: usize, cost: f64 },
    #[error("lightest selection weighs {min_weight}, above capacity {capacity}")]
    Infeasible { min_weight: usize, capacity: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Item {
    pub weight: usize,
    pub cost: f64,
}

impl Item {
    pub fn new(weight: usize, cost: f64) -> Self {
        Self { weight, cost }
    }
}

/// A non-empty set of alternative items; an item is identified by its
/// position in the class.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemClass {
    items: Vec<Item>,
}

impl ItemClass {
    pub fn new(items: Vec<Item>) -> Self {
        Self { items }
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn min_weight(&self) -> usize {
        self.items.iter().map(|it| it.weight).min().unwrap_or(0)
    }
}

impl FromIterator<Item> for ItemClass {
    fn from_iter<I: IntoIterator<Item = Item>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnapsackInstance {
    classes: Vec<ItemClass>,
    capacity: usize,
}

impl KnapsackInstance {
    /// Items heavier than `capacity` are allowed; they can never be packed.
    pub fn new(classes: Vec<ItemClass>, capacity: usize) -> Result<Self, KnapsackError> {
        if classes.is_empty() {
            return Err(KnapsackError::NoClasses);
        }
        for (class, items) in classes.iter().enumerate() {
            if items.is_empty() {
                return Err(KnapsackError::EmptyClass { class });
            }
            for (item, it) in items.items().iter().enumerate() {
                if !it.cost.is_finite() || it.cost < 0.0 {
                    return Err(KnapsackError::InvalidCost {
                        class,
                        item,
                        cost: it.cost,
                    });
                }
            }
        }
        Ok(Self { classes, capacity })
    }

    pub fn classes(&self) -> &[ItemClass] {
        &self.classes
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    fn min_weight(&self) -> usize {
        self.classes.iter().map(ItemClass::min_weight).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnapsackSolution {
    pub total_cost: f64,
    /// Largest achievable total weight not above the capacity.
    pub used_capacity: usize,
    /// Chosen item index for every class.
    pub chosen: Vec<usize>,
}

/// The filled `K` (cost) and `I` (item) tables.
#[derive(Debug, Clone, PartialEq)]
pub struct DpTables {
    classes: usize,
    width: usize,
    cost: Vec<f64>,
    item: Vec<Option<u32>>,
}

impl DpTables {
    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn capacity(&self) -> usize {
        self.width - 1
    }

    /// Optimal cost using the first `r` classes at exact weight `t`.
    ///
    /// `r = 0` is the empty selection, which only weighs zero.
    #[inline]
    pub fn value(&self, r: usize, t: usize) -> f64 {
        assert!(r <= self.classes && t < self.width);
        if r == 0 {
            if t == 0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.cost[(r - 1) * self.width + t]
        }
    }

    /// Item of class `r` (1-based) in the optimal selection behind `value(r, t)`.
    #[inline]
    pub fn item(&self, r: usize, t: usize) -> Option<usize> {
        assert!(r >= 1 && r <= self.classes && t < self.width);
        self.item[(r - 1) * self.width + t].map(|j| j as usize)
    }

    /// Row `r` (1-based) of `K`.
    pub fn row(&self, r: usize) -> &[f64] {
        assert!(r >= 1 && r <= self.classes);
        &self.cost[(r - 1) * self.width..r * self.width]
    }

    /// Walks `I` back from `(r, t)` and returns the chosen item of each of
    /// the first `r` classes, or `None` if `K[r][t]` is infinite.
    pub fn selection(&self, instance: &KnapsackInstance, r: usize, t: usize) -> Option<Vec<usize>> {
        if r == 0 {
            return (t == 0).then(Vec::new);
        }
        let mut chosen = vec![0; r];
        let mut remaining = t;
        for class in (1..=r).rev() {
            let j = self.item(class, remaining)?;
            chosen[class - 1] = j;
            remaining -= instance.classes[class - 1].items[j].weight;
        }
        debug_assert_eq!(remaining, 0);
        Some(chosen)
    }
}

/// Fills `K` and `I` for every class and every capacity in `0..=capacity`.
pub fn fill_tables(instance: &KnapsackInstance) -> DpTables {
    let n = instance.len();
    let width = instance.capacity + 1;
    let mut cost = vec![f64::INFINITY; n * width];
    let mut item = vec![None; n * width];

    // First class: only single items. Duplicate weights keep the cheapest.
    for (j, it) in instance.classes[0].items.iter().enumerate() {
        if it.weight < width && it.cost < cost[it.weight] {
            cost[it.weight] = it.cost;
            item[it.weight] = Some(j as u32);
        }
    }

    for i in 1..n {
        let (done, rest) = cost.split_at_mut(i * width);
        let prev = &done[(i - 1) * width..];
        let cur = &mut rest[..width];
        let cur_item = &mut item[i * width..(i + 1) * width];
        for (j, it) in instance.classes[i].items.iter().enumerate() {
            if it.weight >= width {
                continue;
            }
            let w = it.weight;
            let c = it.cost;
            for ((slot, chosen), &before) in cur[w..]
                .iter_mut()
                .zip(&mut cur_item[w..])
                .zip(&prev[..width - w])
            {
                let candidate = before + c;
                // Strict comparison keeps the lowest item index on ties.
                if candidate < *slot {
                    *slot = candidate;
                    *chosen = Some(j as u32);
                }
            }
        }
    }

    DpTables {
        classes: n,
        width,
        cost,
        item,
    }
}

/// Optimal packing: highest occupancy, then lowest cost.
pub fn solve(instance: &KnapsackInstance) -> Result<KnapsackSolution, KnapsackError> {
    solve_with_tables(instance).map(|(_, solution)| solution)
}

/// As [`solve`], also returning the tables for partial-solution queries.
pub fn solve_with_tables(
    instance: &KnapsackInstance,
) -> Result<(DpTables, KnapsackSolution), KnapsackError> {
    let tables = fill_tables(instance);
    let n = instance.len();
    let used_capacity = (0..=instance.capacity)
        .rev()
        .find(|&t| tables.value(n, t).is_finite())
        .ok_or(KnapsackError::Infeasible {
            min_weight: instance.min_weight(),
            capacity: instance.capacity,
        })?;
    let chosen = tables
        .selection(instance, n, used_capacity)
        .expect("finite table entry has a reconstructible selection");
    let solution = KnapsackSolution {
        total_cost: tables.value(n, used_capacity),
        used_capacity,
        chosen,
    };
    Ok((tables, solution))
}
