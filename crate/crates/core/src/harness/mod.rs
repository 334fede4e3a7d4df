//! Data generators, experiment orchestration and result tables.

mod config;
mod experiment;
mod generate;
mod results;

pub use config::{EstimatorKind, ExperimentConfig};
pub use experiment::{figure1_data, run_estimator, run_experiment, Figure1Row};
pub use generate::{gen_cauchy_marginals, gen_contaminated, gen_gaussian};
pub use results::{
    read_results, read_results_from, write_results, write_results_to, CellError, Diagnostic,
    OutputFormat, ResultRow, ResultTable, RESULT_HEADER,
};
