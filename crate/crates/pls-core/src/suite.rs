//! The acceptance suite: one runnable criterion per exit requirement, shared
//! between the CLI and the integration tests.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub pass: bool,
    pub details: Vec<String>,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.criteria.iter().all(|c| c.pass)
    }
}

mod criteria;
pub mod portfolio;

pub use criteria::{run_suite, CRITERION_COUNT};
