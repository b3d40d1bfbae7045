use flsched::generate::{generate, random_knapsack, CostFamily, GeneratorSpec, LimitStyle, LowerStyle};
use flsched::knapsack::{self, fill_tables, KnapsackInstance};
use flsched::oracle::{self, DEFAULT_BOUND};
use flsched::schedulers::{self, remove_lower_limits, solve_dp};
use flsched::{Algorithm, Instance, Regime, Validation};
use proptest::prelude::*;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

fn chosen_weight_and_cost(inst: &KnapsackInstance, chosen: &[usize]) -> (usize, f64) {
    chosen
        .iter()
        .zip(inst.classes())
        .map(|(&j, c)| c.items()[j])
        .fold((0, 0.0), |(w, c), it| (w + it.weight, c + it.cost))
}

#[test]
fn knapsack_matches_enumeration() {
    let mut short = 0;
    for seed in 0..400 {
        let inst = random_knapsack(seed, 4, 5, 6, 12);
        let expected = oracle::enumerate_knapsack(&inst, DEFAULT_BOUND);
        match (knapsack::solve(&inst), expected) {
            (Ok(sol), Ok(exp)) => {
                assert_eq!(sol.used_capacity, exp.best_used_capacity, "seed {seed}");
                assert!(close(sol.total_cost, exp.min_cost), "seed {seed}");
                let (w, c) = chosen_weight_and_cost(&inst, &sol.chosen);
                assert_eq!(w, sol.used_capacity);
                assert!(close(c, sol.total_cost));
                short += usize::from(sol.used_capacity < inst.capacity());
            }
            (Err(_), Err(oracle::OracleError::Infeasible)) => {}
            (got, exp) => panic!("seed {seed}: {got:?} vs {exp:?}"),
        }
    }
    assert!(short > 0, "no instance exercised partial occupancy");
}

#[test]
fn tables_match_partial_values() {
    for seed in 1000..1100 {
        let inst = random_knapsack(seed, 4, 4, 5, 10);
        let tables = fill_tables(&inst);
        for r in 0..=inst.len() {
            for t in 0..=inst.capacity() {
                let z = oracle::partial_value(&inst, r, t, DEFAULT_BOUND).unwrap();
                assert_eq!(tables.value(r, t), z, "seed {seed} r {r} t {t}");
                if r > 0 {
                    assert_eq!(tables.item(r, t).is_some(), z.is_finite());
                }
                if let Some(sel) = tables.selection(&inst, r, t) {
                    let sub = &inst.classes()[..r];
                    let w: usize = sel.iter().zip(sub).map(|(&j, c)| c.items()[j].weight).sum();
                    assert_eq!(w, t);
                }
            }
        }
    }
}

#[test]
fn recurrence_holds_row_by_row() {
    for seed in 2000..2050 {
        let inst = random_knapsack(seed, 5, 5, 6, 15);
        let tables = fill_tables(&inst);
        for i in 2..=inst.len() {
            for t in 0..=inst.capacity() {
                let expected = inst.classes()[i - 1]
                    .items()
                    .iter()
                    .filter(|it| it.weight <= t)
                    .map(|it| tables.value(i - 1, t - it.weight) + it.cost)
                    .fold(f64::INFINITY, f64::min);
                assert_eq!(tables.value(i, t), expected);
            }
        }
    }
}

fn spec(regime: Regime, limits: LimitStyle, seed: u64) -> GeneratorSpec {
    let n = 1 + (seed % 5) as usize;
    let tasks = (seed / 5 % 16) as usize;
    let lowers = if seed.is_multiple_of(2) { LowerStyle::Zero } else { LowerStyle::Random };
    GeneratorSpec::new(n, tasks, regime, seed)
        .limits(limits)
        .lowers(lowers)
        .family(if seed.is_multiple_of(3) { CostFamily::Parametric } else { CostFamily::Tabulated })
}

fn check_against_oracle(algorithm: Algorithm, inst: &Instance) {
    let expected = oracle::enumerate_schedules(inst, DEFAULT_BOUND).unwrap();
    let got = schedulers::solve_with(algorithm, inst, Validation::Checked).unwrap();
    assert!(inst.is_feasible(&got.assignment), "{algorithm}: {inst:?}");
    assert!(close(got.total_cost, expected.min_cost), "{algorithm}: {got:?} vs {expected:?}");
    let dp = solve_dp(inst).unwrap();
    assert!(close(got.total_cost, dp.total_cost));
}

#[test]
fn specialized_solvers_match_oracle() {
    let cases = [
        (Algorithm::MarIn, Regime::Increasing, LimitStyle::Tight),
        (Algorithm::MarCo, Regime::Constant, LimitStyle::Tight),
        (Algorithm::MarDecUn, Regime::Decreasing, LimitStyle::Slack),
        (Algorithm::MarDec, Regime::Decreasing, LimitStyle::Tight),
        (Algorithm::MarDec, Regime::Decreasing, LimitStyle::Slack),
        (Algorithm::Dp, Regime::Arbitrary, LimitStyle::Tight),
    ];
    for (algorithm, regime, limits) in cases {
        for seed in 0..200 {
            let inst = generate(&spec(regime, limits, seed)).unwrap();
            check_against_oracle(algorithm, &inst);
        }
    }
}

#[test]
fn dispatch_is_optimal() {
    for regime in Regime::ALL {
        for seed in 0..100 {
            for limits in [LimitStyle::Slack, LimitStyle::Tight] {
                let inst = generate(&spec(regime, limits, seed)).unwrap();
                let (s, _) = schedulers::dispatch(&inst, None).unwrap();
                let exp = oracle::enumerate_schedules(&inst, DEFAULT_BOUND).unwrap();
                assert!(inst.is_feasible(&s.assignment));
                assert!(close(s.total_cost, exp.min_cost));
            }
        }
    }
}

#[test]
fn reduction_round_trip_matches_direct_dp() {
    let regimes = [Regime::Increasing, Regime::Constant, Regime::Decreasing];
    for seed in 0..300u64 {
        let regime = regimes[(seed % 3) as usize];
        let spec = GeneratorSpec::new(1 + (seed % 4) as usize, 6 + (seed % 10) as usize, regime, seed)
            .lowers(LowerStyle::Random);
        let inst = generate(&spec).unwrap();
        let reduced = remove_lower_limits(&inst);
        // The reduced instance as a standalone zero-lower-limit instance.
        let costs = (0..inst.len())
            .map(|i| {
                let values = (0..=reduced.upper()[i]).map(|j| reduced.cost(i, j)).collect();
                flsched::CostModel::tabulated(0, values).unwrap()
            })
            .collect();
        let standalone = Instance::from_costs(reduced.tasks(), costs).unwrap();
        let sol = solve_dp(&standalone).unwrap();
        let restored = reduced.restore(&sol.assignment);
        assert!(inst.is_feasible(&restored.assignment));
        let direct = solve_dp(&inst).unwrap();
        assert!(close(restored.total_cost, direct.total_cost), "seed {seed}");
    }
}

#[test]
fn schedule_and_knapsack_oracles_agree() {
    for seed in 0..150 {
        let inst = generate(&spec(Regime::Arbitrary, LimitStyle::Tight, seed)).unwrap();
        let a = oracle::enumerate_schedules(&inst, DEFAULT_BOUND).unwrap();
        let b = oracle::enumerate_knapsack(&oracle::schedule_to_knapsack(&inst), DEFAULT_BOUND).unwrap();
        assert_eq!(b.best_used_capacity, inst.tasks());
        assert!(close(a.min_cost, b.min_cost));
    }
}

/// Sum of `f` over `lo..=hi`; empty when `hi < lo`.
fn interval_sum(f: &[i64], lo: usize, hi: isize) -> i64 {
    if (hi as i64) < lo as i64 {
        0
    } else {
        f[lo..=hi as usize].iter().sum()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn oracle_is_permutation_invariant(seed in 0u64..10_000, rot in 0usize..5) {
        let inst = generate(&spec(Regime::Arbitrary, LimitStyle::Tight, seed)).unwrap();
        let n = inst.len();
        let perm: Vec<usize> = (0..n).map(|k| (k + rot) % n).collect();
        let permuted = Instance::new(
            inst.tasks(),
            perm.iter().map(|&i| inst.lower()[i]).collect(),
            perm.iter().map(|&i| inst.upper()[i]).collect(),
            perm.iter().map(|&i| inst.costs()[i].clone()).collect(),
        ).unwrap();
        let a = oracle::enumerate_schedules(&inst, DEFAULT_BOUND).unwrap();
        let b = oracle::enumerate_schedules(&permuted, DEFAULT_BOUND).unwrap();
        prop_assert!(close(a.min_cost, b.min_cost));
        for w in &b.witnesses {
            let mut back = vec![0; n];
            for (k, &i) in perm.iter().enumerate() { back[i] = w[k]; }
            prop_assert!(inst.is_feasible(&back));
        }
    }

    /// Two nonincreasing sequences with f(s_f+1) <= g(s_g+1): moving the
    /// whole g interval onto the end of f never increases the sum.
    #[test]
    fn concave_interval_exchange(
        f_steps in prop::collection::vec(0i64..20, 30),
        g_steps in prop::collection::vec(0i64..20, 30),
        f_top in 0i64..500,
        g_top in 0i64..500,
        i_f in 0usize..8, len_f in 0usize..8,
        i_g in 0usize..8, len_g in 0usize..8,
    ) {
        let build = |top: i64, steps: &[i64]| -> Vec<i64> {
            steps.iter().scan(top, |v, s| { let out = *v; *v -= s; Some(out) }).collect()
        };
        let f = build(f_top, &f_steps);
        let g = build(g_top, &g_steps);
        let s_f = i_f + len_f;
        let s_g = i_g + len_g;
        prop_assume!(f[s_f + 1] <= g[s_g + 1]);
        let end = s_f as isize + s_g as isize - i_g as isize + 1;
        let lhs = interval_sum(&f, i_f, s_f as isize) + interval_sum(&g, i_g, s_g as isize);
        let rhs = interval_sum(&f, i_f, end);
        prop_assert!(lhs >= rhs, "{lhs} < {rhs}");
    }
}
