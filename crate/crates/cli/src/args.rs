use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "kerrcat", version, about = "Kerr oscillator cat states and Husimi Q analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a coherent state and write its number-basis amplitudes.
    Evolve(CommonArgs),
    /// Decompose the evolved state into coherent-state components.
    Decompose(CommonArgs),
    /// Sample the Q function on a grid.
    Qpd {
        #[command(flatten)]
        common: CommonArgs,
        /// Also write a 16-bit ASCII PGM image.
        #[arg(long, value_name = "PATH")]
        pgm: Option<PathBuf>,
    },
    /// Extract level sets of the Q function.
    Contours {
        #[command(flatten)]
        common: CommonArgs,
        /// Levels as fractions of the grid maximum.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.25, 0.5, 0.75])]
        levels: Vec<f64>,
    },
    /// Count Q-function peaks above a relative height.
    Peaks {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 0.5)]
        rel_height: f64,
    },
    /// Run the built-in verification checks.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Coefficient checks only; skip grid-based checks.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Initial coherent amplitude as RE,IM.
    #[arg(long, default_value = "2,0", allow_hyphen_values = true, value_name = "RE,IM")]
    pub alpha0: String,

    #[arg(long, default_value = "squared", value_name = "normal|squared")]
    pub ordering: String,

    /// Evolution time as a fraction M/N of the ordering's period.
    #[arg(long, value_name = "M/N", conflicts_with = "tau")]
    pub frac: Option<String>,

    /// Raw dimensionless evolution time.
    #[arg(long, allow_hyphen_values = true, value_name = "FLOAT")]
    pub tau: Option<f64>,

    /// Truncation tolerance on the discarded photon-number tail.
    #[arg(long, default_value_t = 1e-12, value_name = "FLOAT")]
    pub eps: f64,

    /// Half-width of the square sampling window.
    #[arg(long, value_name = "HALFWIDTH")]
    pub window: Option<f64>,

    /// Samples per axis.
    #[arg(long, value_name = "NX[,NY]")]
    pub res: Option<String>,

    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}
