//! Per-resource cost functions, their marginal costs and the marginal-cost
//! regime of a set of resources.
//!
//! A [`CostModel`] maps every task count `j` in its domain `[lower, upper]`
//! to a non-negative cost. The marginal cost of the `j`-th task is
//! `cost(j) - cost(j - 1)`, except at the domain start where it is zero.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Absolute tolerance used when comparing neighbouring marginal costs.
pub const MARGINAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CostError {
    #[error("task count {j} is outside the cost domain [{lower}, {upper}]")]
    Domain { j: usize, lower: usize, upper: usize },
    #[error("negative marginal cost {marginal} at task count {j}")]
    NegativeMarginal { j: usize, marginal: f64 },
    #[error("cost table has {len} values but the domain [{lower}, {upper}] needs {expected}")]
    TableLength {
        len: usize,
        lower: usize,
        upper: usize,
        expected: usize,
    },
    #[error("cost value {value} at task count {j} is not a finite non-negative number")]
    InvalidValue { j: usize, value: f64 },
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("domain upper bound {upper} is below lower bound {lower}")]
    InvertedDomain { lower: usize, upper: usize },
}

/// The shape of a cost function.
#[derive(Debug, Clone, PartialEq)]
pub enum CostFunction {
    /// Explicit values for `lower, lower + 1, ..., upper`.
    Tabulated(Vec<f64>),
    /// `a * j + b` for `j > 0` and `0` for `j = 0`.
    Linear { a: f64, b: f64 },
    /// `a * j^p` with `p > 1`.
    PowerConvex { a: f64, p: f64 },
    /// `a * ln(1 + j)`.
    LogConcave { a: f64 },
}

/// A cost function restricted to the task counts `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostModel {
    function: CostFunction,
    lower: usize,
    upper: usize,
}

impl CostModel {
    /// Tabulated costs where `values[k]` is the cost of `lower + k` tasks.
    pub fn tabulated(lower: usize, values: Vec<f64>) -> Result<Self, CostError> {
        if values.is_empty() {
            return Err(CostError::TableLength {
                len: 0,
                lower,
                upper: lower,
                expected: 1,
            });
        }
        for (k, &value) in values.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(CostError::InvalidValue { j: lower + k, value });
            }
        }
        let upper = lower + values.len() - 1;
        Ok(Self {
            function: CostFunction::Tabulated(values),
            lower,
            upper,
        })
    }

    pub fn linear(lower: usize, upper: usize, a: f64, b: f64) -> Result<Self, CostError> {
        check_param("a", a)?;
        check_param("b", b)?;
        Self::parametric(CostFunction::Linear { a, b }, lower, upper)
    }

    pub fn power_convex(lower: usize, upper: usize, a: f64, p: f64) -> Result<Self, CostError> {
        check_param("a", a)?;
        if !(p.is_finite() && p > 1.0) {
            return Err(CostError::InvalidParameter {
                name: "p",
                value: p,
                reason: "exponent must be finite and greater than 1",
            });
        }
        Self::parametric(CostFunction::PowerConvex { a, p }, lower, upper)
    }

    pub fn log_concave(lower: usize, upper: usize, a: f64) -> Result<Self, CostError> {
        check_param("a", a)?;
        Self::parametric(CostFunction::LogConcave { a }, lower, upper)
    }

    fn parametric(function: CostFunction, lower: usize, upper: usize) -> Result<Self, CostError> {
        if upper < lower {
            return Err(CostError::InvertedDomain { lower, upper });
        }
        Ok(Self {
            function,
            lower,
            upper,
        })
    }

    pub fn function(&self) -> &CostFunction {
        &self.function
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn covers(&self, lower: usize, upper: usize) -> bool {
        self.lower <= lower && upper <= self.upper
    }

    fn check_domain(&self, j: usize) -> Result<(), CostError> {
        if j < self.lower || j > self.upper {
            Err(CostError::Domain {
                j,
                lower: self.lower,
                upper: self.upper,
            })
        } else {
            Ok(())
        }
    }

    /// Cost of running `j` tasks.
    pub fn evaluate(&self, j: usize) -> Result<f64, CostError> {
        self.check_domain(j)?;
        Ok(self.value(j))
    }

    /// Unchecked evaluation; callers guarantee `j` is inside the domain.
    #[inline]
    pub(crate) fn value(&self, j: usize) -> f64 {
        debug_assert!(j >= self.lower && j <= self.upper);
        match &self.function {
            CostFunction::Tabulated(values) => values[j - self.lower],
            CostFunction::Linear { a, b } => {
                if j == 0 {
                    0.0
                } else {
                    a * j as f64 + b
                }
            }
            CostFunction::PowerConvex { a, p } => a * (j as f64).powf(*p),
            CostFunction::LogConcave { a } => a * (j as f64).ln_1p(),
        }
    }

    /// Marginal cost of the `j`-th task; zero at the domain start.
    pub fn marginal(&self, j: usize) -> Result<f64, CostError> {
        self.check_domain(j)?;
        let marginal = self.marginal_value(j);
        if marginal < 0.0 {
            return Err(CostError::NegativeMarginal { j, marginal });
        }
        Ok(marginal)
    }

    /// Unchecked marginal; may be negative for non-monotone tables.
    #[inline]
    pub(crate) fn marginal_value(&self, j: usize) -> f64 {
        if j == self.lower {
            return 0.0;
        }
        match &self.function {
            // Closed form avoids cancellation error in `a*j - a*(j-1)`.
            CostFunction::Linear { a, b } => {
                if j == 1 {
                    a + b
                } else {
                    *a
                }
            }
            _ => self.value(j) - self.value(j - 1),
        }
    }

    /// Regime of this model over its whole domain.
    pub fn regime(&self) -> Regime {
        self.regime_over(self.lower, self.upper)
    }

    /// Regime of this model restricted to `[lower, upper]`, which must lie
    /// inside the model's domain.
    pub fn regime_over(&self, lower: usize, upper: usize) -> Regime {
        debug_assert!(self.covers(lower, upper));
        match &self.function {
            CostFunction::Tabulated(_) => self.scan_regime(lower, upper),
            // A positive offset makes the first task dearer than the rest.
            CostFunction::Linear { b, .. } if lower == 0 && *b > 0.0 && upper >= 2 => {
                Regime::Decreasing
            }
            CostFunction::Linear { .. } => Regime::Constant,
            CostFunction::PowerConvex { .. } => Regime::Increasing,
            CostFunction::LogConcave { .. } => Regime::Decreasing,
        }
    }

    /// Direct scan of the marginal-cost inequalities over the open interval
    /// `]lower, upper[`.
    pub fn scan_regime(&self, lower: usize, upper: usize) -> Regime {
        let marginal = |j: usize| {
            if j == lower {
                0.0
            } else {
                self.value(j) - self.value(j - 1)
            }
        };
        let mut increasing = true;
        let mut decreasing = true;
        for j in lower + 1..=upper {
            let m = marginal(j);
            if m < 0.0 {
                return Regime::Arbitrary;
            }
            if j < upper {
                let next = marginal(j + 1);
                increasing &= m <= next + MARGINAL_TOLERANCE;
                decreasing &= m + MARGINAL_TOLERANCE >= next;
            }
        }
        Regime::from_flags(increasing, decreasing)
    }
}

fn check_param(name: &'static str, value: f64) -> Result<(), CostError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(CostError::InvalidParameter {
            name,
            value,
            reason: "must be finite and non-negative",
        })
    }
}

/// Marginal-cost behaviour shared by every resource of an instance.
///
/// `Constant` satisfies both the increasing and the decreasing inequalities,
/// so it is reported whenever both hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Increasing,
    Constant,
    Decreasing,
    Arbitrary,
}

impl Regime {
    pub const ALL: [Regime; 4] = [
        Regime::Increasing,
        Regime::Constant,
        Regime::Decreasing,
        Regime::Arbitrary,
    ];

    fn from_flags(increasing: bool, decreasing: bool) -> Self {
        match (increasing, decreasing) {
            (true, true) => Regime::Constant,
            (true, false) => Regime::Increasing,
            (false, true) => Regime::Decreasing,
            (false, false) => Regime::Arbitrary,
        }
    }

    fn flags(self) -> (bool, bool) {
        match self {
            Regime::Constant => (true, true),
            Regime::Increasing => (true, false),
            Regime::Decreasing => (false, true),
            Regime::Arbitrary => (false, false),
        }
    }

    /// Weakest regime satisfied by both `self` and `other`.
    pub fn meet(self, other: Regime) -> Regime {
        let (ai, ad) = self.flags();
        let (bi, bd) = other.flags();
        Regime::from_flags(ai && bi, ad && bd)
    }

    /// Whether an instance in regime `self` meets the requirements of `required`.
    pub fn satisfies(self, required: Regime) -> bool {
        let (si, sd) = self.flags();
        let (ri, rd) = required.flags();
        (si || !ri) && (sd || !rd)
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Increasing => "increasing",
            Regime::Constant => "constant",
            Regime::Decreasing => "decreasing",
            Regime::Arbitrary => "arbitrary",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown regime `{s}`"))
    }
}

/// Classifies a set of cost models, each over its own domain.
pub fn classify<'a, I>(models: I) -> Regime
where
    I: IntoIterator<Item = &'a CostModel>,
{
    models
        .into_iter()
        .fold(Regime::Constant, |acc, model| acc.meet(model.regime()))
}
