//! Seeded random instances for tests and benchmarks.
//!
//! Every resource draws its cost model from its own ChaCha stream, so a
//! resource's costs depend only on the seed and its index.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cost_model::{CostModel, Regime};
use crate::instance::Instance;
use crate::knapsack::{Item, ItemClass, KnapsackInstance};

const UPPER_RETRIES: usize = 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("invalid generator spec: {0}")]
    Spec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitStyle {
    /// Every upper limit is at least the task count.
    Slack,
    /// Random upper limits, usually below the task count.
    Tight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerStyle {
    Zero,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostFamily {
    /// Explicit tables built from quarter-unit marginals (exact in binary).
    Tabulated,
    /// Linear, power-convex or log-concave closed forms.
    Parametric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostRanges {
    /// Range of the scale factor `a` for parametric kinds.
    pub scale: (f64, f64),
    /// Range of the exponent `p` for power-convex costs.
    pub exponent: (f64, f64),
    /// Largest tabulated marginal.
    pub max_marginal: f64,
    /// Largest cost at the lower limit (and linear offset).
    pub max_base: f64,
}

impl Default for CostRanges {
    fn default() -> Self {
        Self {
            scale: (0.5, 5.0),
            exponent: (1.2, 2.5),
            max_marginal: 8.0,
            max_base: 4.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub resources: usize,
    pub tasks: usize,
    pub regime: Regime,
    pub limits: LimitStyle,
    pub lowers: LowerStyle,
    pub family: CostFamily,
    pub seed: u64,
    pub ranges: CostRanges,
}

impl GeneratorSpec {
    pub fn new(resources: usize, tasks: usize, regime: Regime, seed: u64) -> Self {
        Self {
            resources,
            tasks,
            regime,
            limits: LimitStyle::Tight,
            lowers: LowerStyle::Zero,
            family: CostFamily::Tabulated,
            seed,
            ranges: CostRanges::default(),
        }
    }

    pub fn limits(mut self, limits: LimitStyle) -> Self {
        self.limits = limits;
        self
    }

    pub fn lowers(mut self, lowers: LowerStyle) -> Self {
        self.lowers = lowers;
        self
    }

    pub fn family(mut self, family: CostFamily) -> Self {
        self.family = family;
        self
    }

    fn validate(&self) -> Result<(), GenerateError> {
        let r = &self.ranges;
        let bad = |msg: &str| Err(GenerateError::Spec(msg.to_owned()));
        if self.resources == 0 {
            return bad("at least one resource is required");
        }
        if !(r.scale.0 > 0.0 && r.scale.0 <= r.scale.1 && r.scale.1.is_finite()) {
            return bad("scale range must be positive and ordered");
        }
        if !(r.exponent.0 > 1.0 && r.exponent.0 <= r.exponent.1 && r.exponent.1.is_finite()) {
            return bad("exponent range must be above 1 and ordered");
        }
        if !(r.max_marginal >= 0.0 && r.max_marginal.is_finite()) {
            return bad("max_marginal must be finite and non-negative");
        }
        if !(r.max_base >= 0.0 && r.max_base.is_finite()) {
            return bad("max_base must be finite and non-negative");
        }
        Ok(())
    }
}

fn quarter(rng: &mut impl Rng, max: f64) -> f64 {
    let steps = (max * 4.0).floor() as u64;
    rng.gen_range(0..=steps) as f64 * 0.25
}

fn tabulated(rng: &mut impl Rng, regime: Regime, lower: usize, upper: usize, r: &CostRanges) -> CostModel {
    let span = upper - lower;
    let values = if regime == Regime::Arbitrary {
        (0..=span)
            .map(|_| quarter(rng, r.max_base + 2.0 * r.max_marginal))
            .collect()
    } else {
        let mut marginals: Vec<f64> = match regime {
            Regime::Constant => vec![quarter(rng, r.max_marginal); span],
            _ => (0..span).map(|_| quarter(rng, r.max_marginal)).collect(),
        };
        match regime {
            Regime::Increasing => marginals.sort_by(f64::total_cmp),
            Regime::Decreasing => marginals.sort_by(|a, b| b.total_cmp(a)),
            _ => {}
        }
        let mut values = Vec::with_capacity(span + 1);
        values.push(quarter(rng, r.max_base));
        for m in marginals {
            values.push(values.last().unwrap() + m);
        }
        values
    };
    CostModel::tabulated(lower, values).expect("generated values are finite and non-negative")
}

fn parametric(rng: &mut impl Rng, regime: Regime, lower: usize, upper: usize, r: &CostRanges) -> CostModel {
    let regime = match regime {
        Regime::Arbitrary => [Regime::Increasing, Regime::Constant, Regime::Decreasing][rng.gen_range(0..3)],
        other => other,
    };
    let a = rng.gen_range(r.scale.0..=r.scale.1);
    let model = match regime {
        Regime::Increasing => {
            let p = rng.gen_range(r.exponent.0..=r.exponent.1);
            CostModel::power_convex(lower, upper, a, p)
        }
        Regime::Constant => {
            // An offset at zero tasks would make the first task dearer.
            let b = if lower == 0 { 0.0 } else { rng.gen_range(0.0..=r.max_base) };
            CostModel::linear(lower, upper, a, b)
        }
        _ => CostModel::log_concave(lower, upper, a),
    };
    model.expect("ranges validated")
}

/// Builds an instance per `spec`; identical specs give identical instances.
pub fn generate(spec: &GeneratorSpec) -> Result<Instance, GenerateError> {
    spec.validate()?;
    let n = spec.resources;
    let tasks = spec.tasks;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let lower: Vec<usize> = match spec.lowers {
        LowerStyle::Zero => vec![0; n],
        LowerStyle::Random => {
            let max = tasks / (2 * n);
            (0..n).map(|_| rng.gen_range(0..=max)).collect()
        }
    };
    let lower_sum: usize = lower.iter().sum();
    let free = tasks - lower_sum;

    let upper = match spec.limits {
        LimitStyle::Slack => lower.iter().map(|&l| l.max(tasks)).collect::<Vec<_>>(),
        LimitStyle::Tight => {
            let span = (3 * free).div_ceil(n).max(1);
            (0..UPPER_RETRIES)
                .map(|_| {
                    lower
                        .iter()
                        .map(|&l| l + rng.gen_range(0..=span))
                        .collect::<Vec<_>>()
                })
                .find(|u| u.iter().sum::<usize>() >= tasks)
                .ok_or_else(|| {
                    GenerateError::Spec(format!(
                        "could not draw tight upper limits covering {tasks} tasks"
                    ))
                })?
        }
    };

    let costs = (0..n)
        .map(|i| {
            let mut stream = ChaCha8Rng::seed_from_u64(spec.seed);
            stream.set_stream(i as u64 + 1);
            match spec.family {
                CostFamily::Tabulated => {
                    tabulated(&mut stream, spec.regime, lower[i], upper[i], &spec.ranges)
                }
                CostFamily::Parametric => {
                    parametric(&mut stream, spec.regime, lower[i], upper[i], &spec.ranges)
                }
            }
        })
        .collect();

    Instance::new(tasks, lower, upper, costs).map_err(|e| GenerateError::Spec(e.to_string()))
}

/// Random knapsack instance with `1..=max_classes` classes of
/// `1..=max_items` items, weights in `0..=max_weight` and capacity in
/// `0..=max_capacity`. Costs are quarter units.
pub fn random_knapsack(
    seed: u64,
    max_classes: usize,
    max_items: usize,
    max_weight: usize,
    max_capacity: usize,
) -> KnapsackInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_classes.max(1));
    let classes = (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=max_items.max(1));
            (0..len)
                .map(|_| Item::new(rng.gen_range(0..=max_weight), quarter(&mut rng, 10.0)))
                .collect::<ItemClass>()
        })
        .collect();
    let capacity = rng.gen_range(0..=max_capacity);
    KnapsackInstance::new(classes, capacity).expect("non-empty classes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_a_seed() {
        let spec = GeneratorSpec::new(5, 20, Regime::Arbitrary, 42).lowers(LowerStyle::Random);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = GeneratorSpec { seed: 43, ..spec };
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn regimes_are_honoured() {
        for seed in 0..50 {
            for regime in [Regime::Increasing, Regime::Constant, Regime::Decreasing] {
                for family in [CostFamily::Tabulated, CostFamily::Parametric] {
                    for lowers in [LowerStyle::Zero, LowerStyle::Random] {
                        let spec = GeneratorSpec::new(4, 15, regime, seed)
                            .family(family)
                            .lowers(lowers);
                        let inst = generate(&spec).unwrap();
                        assert!(inst.regime().satisfies(regime), "{spec:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn constant_marginals_are_equal() {
        let spec = GeneratorSpec::new(6, 30, Regime::Constant, 7).lowers(LowerStyle::Random);
        let inst = generate(&spec).unwrap();
        for (i, c) in inst.costs().iter().enumerate() {
            let (l, u) = (inst.lower()[i], inst.upper()[i]);
            let ms: Vec<f64> = (l + 1..=u).map(|j| c.marginal(j).unwrap()).collect();
            assert!(ms.windows(2).all(|w| (w[0] - w[1]).abs() <= 1e-12));
        }
    }

    #[test]
    fn slack_decreasing_fits_mardecun() {
        let spec = GeneratorSpec::new(4, 12, Regime::Decreasing, 3)
            .limits(LimitStyle::Slack)
            .lowers(LowerStyle::Random);
        let inst = generate(&spec).unwrap();
        assert!(inst.regime().satisfies(Regime::Decreasing));
        let free = inst.tasks() - inst.lower_sum();
        assert!(inst.upper().iter().zip(inst.lower()).all(|(u, l)| u - l >= free));
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&GeneratorSpec::new(0, 3, Regime::Constant, 0)).is_err());
        let mut spec = GeneratorSpec::new(2, 3, Regime::Constant, 0);
        spec.ranges.exponent = (0.5, 2.0);
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn zero_tasks() {
        let inst = generate(&GeneratorSpec::new(3, 0, Regime::Arbitrary, 1)).unwrap();
        assert_eq!(inst.tasks(), 0);
    }
}
