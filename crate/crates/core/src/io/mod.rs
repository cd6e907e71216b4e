//! Scenario configuration, artifact emitters and the command driver.

mod commands;
mod config;
mod emit;

pub use commands::{
    cas_idler, compute_as, compute_cas, compute_lc_curve, compute_widths, lc_curve_to_csv,
    run_command, Command, OutputFormat, RunOutput,
};
pub use config::{
    load_preset, load_scenario, parse_scenario, preset_names, resolve_config, IdlerPlacement,
    ScenarioConfig, ScenarioDocument, PRESET_DIR_ENV,
};
pub use emit::{
    emit_grid, grid_from_csv, grid_to_csv, grid_to_pgm, profile_to_csv, GridFormat,
};
