//! Verification driver: runs the check suites and renders their records.

pub mod config;
pub mod report;
pub mod suites;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use config::RunConfig;
use report::{params_hash, Header, Report, RNG_ALGORITHM};
use suites::{Suite, SuiteContext};

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Replaces the configured suite list when non-empty.
    pub suites: Vec<Suite>,
    pub dump_dir: Option<PathBuf>,
}

pub fn run(config: &RunConfig, options: &RunOptions) -> Report {
    let started = Instant::now();
    let selected = if options.suites.is_empty() {
        config.selected_suites()
    } else {
        Suite::ALL.iter().copied().filter(|s| options.suites.contains(s)).collect()
    };
    let ctx = SuiteContext {
        config,
        dump_dir: options.dump_dir.as_deref(),
    };
    let records = selected.par_iter().flat_map(|s| s.run(&ctx)).collect();
    let header = Header {
        kind: "header".into(),
        tool: "covqsc".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        rng: RNG_ALGORITHM.into(),
        seed: config.seed,
        config_hash: params_hash(&serde_json::to_string(config).expect("plain data")),
        suites: selected.iter().map(|s| s.name().to_string()).collect(),
    };
    Report::new(header, records, started.elapsed().as_secs_f64() * 1e3)
}
