//! LP standard forms, relaxed complementary slackness, and the two generic
//! scheme engines plus the reductions between them.

pub mod primal_dual;
pub mod reductions;
pub mod standard_form;
pub mod vca;

use num_rational::BigRational;

use crate::config::ConfigGraph;

pub use primal_dual::{check_local, LocalCol, LocalLp, LocalRow, PdProblem, PdScheme};
pub use reductions::{DualObjectiveAdpls, ObjectiveLiftedApls};
pub use standard_form::{ColRef, LpCol, LpRow, StandardFormLp};
pub use vca::{any_universe, ApproxTask, UniverseFn, VcaScheme};

/// n-th harmonic number as an exact rational.
pub fn harmonic(n: usize) -> BigRational {
    (1..=n)
        .map(|i| BigRational::new(1.into(), (i as u64).into()))
        .sum()
}

/// Approximation factor, possibly a function of the instance.
#[derive(Clone)]
pub enum AlphaSpec {
    Const(BigRational),
    /// H_n: the exact stand-in for the ln(n)+1 dominating set bound.
    HarmonicOfN,
}

impl AlphaSpec {
    pub fn value(&self, cfg: &ConfigGraph) -> BigRational {
        match self {
            AlphaSpec::Const(a) => a.clone(),
            AlphaSpec::HarmonicOfN => harmonic(cfg.graph().n()),
        }
    }

    pub fn of_int(n: i64) -> Self {
        AlphaSpec::Const(BigRational::from_integer(n.into()))
    }

    pub fn of_ratio(num: i64, den: i64) -> Self {
        AlphaSpec::Const(BigRational::new(num.into(), den.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_small_values() {
        assert_eq!(harmonic(1), BigRational::from_integer(1.into()));
        assert_eq!(harmonic(4), BigRational::new(25.into(), 12.into()));
    }
}
