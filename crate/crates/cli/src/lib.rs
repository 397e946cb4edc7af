//! Command-line frontend for `kerrcat-core`.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;

use args::{Cli, Command};
use config::RunConfig;
pub use error::{CliError, Result};

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Evolve(common) => commands::cmd_evolve(&RunConfig::from_args(&common)?),
        Command::Decompose(common) => commands::cmd_decompose(&RunConfig::from_args(&common)?),
        Command::Qpd { common, pgm } => commands::cmd_qpd(&RunConfig::from_args(&common)?, pgm.as_deref()),
        Command::Contours { common, levels } => commands::cmd_contours(&RunConfig::from_args(&common)?, &levels),
        Command::Peaks { common, rel_height } => commands::cmd_peaks(&RunConfig::from_args(&common)?, rel_height),
        Command::Verify { common, quick } => commands::cmd_verify(&RunConfig::from_args(&common)?, quick),
    }
}
