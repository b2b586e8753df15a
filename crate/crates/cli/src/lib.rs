pub mod commands;
pub mod config;
pub mod error;
pub mod panel_csv;

pub use commands::{cmd_analyze, cmd_simulate, cmd_table};
pub use config::{emit_config, parse_config, read_config, RunConfig};
pub use error::{CliError, Result};
pub use panel_csv::{load_panel, write_panel};
