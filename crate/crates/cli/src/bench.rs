//! Timing harness: one generated instance per (algorithm, n, T) cell,
//! one discarded warm-up run, median of the timed repetitions.

use std::io::Write;
use std::time::Instant;

use flsched::generate::{generate, CostFamily, GeneratorSpec, LimitStyle, LowerStyle};
use flsched::schedulers::{solve_dp, solve_with};
use flsched::{Algorithm, Regime, Validation};

use crate::CliError;

pub const CSV_HEADER: &str = "algorithm,n,T,regime,elapsed_ns,total_cost,checked";

/// Instance shape used for an algorithm unless overridden.
pub fn default_shape(algorithm: Algorithm) -> (Regime, LimitStyle, CostFamily) {
    match algorithm {
        Algorithm::Dp => (Regime::Arbitrary, LimitStyle::Slack, CostFamily::Tabulated),
        Algorithm::MarIn => (Regime::Increasing, LimitStyle::Tight, CostFamily::Parametric),
        Algorithm::MarCo => (Regime::Constant, LimitStyle::Tight, CostFamily::Parametric),
        Algorithm::MarDecUn => (Regime::Decreasing, LimitStyle::Slack, CostFamily::Parametric),
        Algorithm::MarDec => (Regime::Decreasing, LimitStyle::Tight, CostFamily::Parametric),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Skip,
    Pass,
    Fail,
}

impl Check {
    fn label(self) -> &'static str {
        match self {
            Check::Skip => "skip",
            Check::Pass => "pass",
            Check::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    pub tasks: usize,
    pub regime: Regime,
    pub elapsed_ns: u64,
    pub total_cost: f64,
    pub checked: Check,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.algorithm,
            self.n,
            self.tasks,
            self.regime,
            self.elapsed_ns,
            self.total_cost,
            self.checked.label()
        )
    }
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub algorithm: Algorithm,
    pub n: usize,
    pub tasks: usize,
    pub regime: Regime,
    pub limits: LimitStyle,
    pub family: CostFamily,
    pub seed: u64,
}

impl Cell {
    pub fn new(algorithm: Algorithm, n: usize, tasks: usize, seed: u64) -> Self {
        let (regime, limits, family) = default_shape(algorithm);
        Self {
            algorithm,
            n,
            tasks,
            regime,
            limits,
            family,
            seed,
        }
    }
}

/// Generates the cell's instance and times `repetitions` solves.
pub fn run_cell(cell: &Cell, repetitions: usize, cross_check: bool) -> Result<BenchRecord, CliError> {
    if repetitions == 0 {
        return Err(CliError::usage("repetitions must be at least 1"));
    }
    let spec = GeneratorSpec::new(cell.n, cell.tasks, cell.regime, cell.seed)
        .limits(cell.limits)
        .lowers(LowerStyle::Zero)
        .family(cell.family);
    let instance = generate(&spec).map_err(|e| CliError::usage(e.to_string()))?;

    let run = || solve_with(cell.algorithm, &instance, Validation::Unchecked);
    let warm = run().map_err(CliError::from_solve)?;
    let mut times = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let start = Instant::now();
        let schedule = run().map_err(CliError::from_solve)?;
        times.push(start.elapsed().as_nanos().max(1) as u64);
        debug_assert_eq!(schedule, warm);
    }
    times.sort_unstable();

    let checked = if cross_check {
        let dp = solve_dp(&instance).map_err(CliError::from_solve)?;
        if crate::costs_match(warm.total_cost, dp.total_cost) {
            Check::Pass
        } else {
            Check::Fail
        }
    } else {
        Check::Skip
    };

    Ok(BenchRecord {
        algorithm: cell.algorithm,
        n: cell.n,
        tasks: cell.tasks,
        regime: cell.regime,
        elapsed_ns: times[times.len() / 2],
        total_cost: warm.total_cost,
        checked,
    })
}

pub fn write_csv(out: &mut impl Write, records: &[BenchRecord]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

/// Least-squares slope of `ln(y)` against `ln(x)`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let cov: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = logs.iter().map(|&(x, _)| (x - mx).powi(2)).sum();
    cov / var
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<_> = [10.0, 100.0, 1000.0].iter().map(|&x: &f64| (x, 3.0 * x * x)).collect();
        assert!((loglog_slope(&pts) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_repetitions_rejected() {
        let cell = Cell::new(Algorithm::MarCo, 10, 20, 0);
        assert_eq!(run_cell(&cell, 0, false).unwrap_err().code, crate::EXIT_USAGE);
    }

    #[test]
    fn records_are_cross_checked() {
        for alg in Algorithm::ALL {
            let rec = run_cell(&Cell::new(alg, 6, 30, 5), 2, true).unwrap();
            assert_eq!(rec.checked, Check::Pass, "{alg}");
            assert!(rec.elapsed_ns > 0);
            assert!(rec.total_cost.is_finite());
        }
    }
}
