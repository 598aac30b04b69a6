//! Fixtures shared by the benchmarks.

use std::path::PathBuf;

use fuzzynav_core::runner::load_scenario;
use fuzzynav_core::ScenarioConfig;

/// Directory holding the shipped scenarios.
pub fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

/// Loads one shipped scenario by file name.
pub fn shipped(name: &str) -> ScenarioConfig {
    let (file, world) = load_scenario(&scenario_dir().join(name)).expect("shipped scenario loads");
    file.into_config(world).expect("shipped scenario is valid")
}
