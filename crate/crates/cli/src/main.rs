//! `sftw`: solve, compare and draw two-dimensional subshifts of finite type.
//!
//! Exit status is 0 on success, 1 when a verification fails or a bound is
//! hit, 2 on usage and input errors.

mod commands;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "sftw", version, about = "Subshifts of finite type on Z^2")]
struct Cli {
    /// Accepted for scripts; every command is deterministic anyway.
    #[arg(long, global = true)]
    seedless: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Bounds {
    /// Candidate limit for enumerations.
    #[arg(long, default_value_t = 1_000_000)]
    cap: u64,
    /// Largest extension margin tried for language stabilization.
    #[arg(long, default_value_t = 8)]
    margin_cap: usize,
    /// Radius of the ball read when a language cannot be certified.
    #[arg(long, default_value_t = 8)]
    radius: i64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fill a rectangle, or count its fillings.
    Solve {
        #[arg(long)]
        sft: PathBuf,
        /// Corners `X0 Y0 X1 Y1`.
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["X0", "Y0", "X1", "Y1"])]
        rect: Vec<i64>,
        /// Fixed cell `x,y,symbol`; repeatable.
        #[arg(long)]
        clamp: Vec<String>,
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Count (or list) colourings of the torus with periods `p1` and `p2`.
    Torus {
        #[arg(long)]
        sft: PathBuf,
        #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["X", "Y"])]
        p1: Vec<i64>,
        #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["X", "Y"])]
        p2: Vec<i64>,
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// The globally extendable `n × n` patterns.
    Language {
        #[arg(long)]
        sft: PathBuf,
        #[arg(short, long)]
        n: i64,
        /// Extension margin; by default the stabilization margin.
        #[arg(long)]
        margin: Option<i64>,
        /// Print only the counts.
        #[arg(long)]
        quiet: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Compare two schemas of a presentation in the pattern pre-order.
    Compare {
        #[arg(long)]
        schemas: PathBuf,
        x: String,
        y: String,
        #[arg(short, long, default_value_t = 2)]
        n: i64,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Hasse diagram of a schema presentation.
    Hasse {
        #[arg(long)]
        schemas: PathBuf,
        #[arg(short, long, default_value_t = 2)]
        n: i64,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Cantor-Bendixson rank of a schema presentation.
    Cbrank {
        #[arg(long)]
        schemas: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_stage: usize,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Compile constrained SFTs.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// The worked examples: list, show, verify or draw them.
    Gallery {
        name: Option<String>,
        #[arg(long, conflicts_with = "render")]
        verify: bool,
        #[arg(long, value_name = "OUT")]
        render: Option<PathBuf>,
        /// Schema to draw; the parabola draws a solved region by default.
        #[arg(long)]
        schema: Option<String>,
        /// Parabola choices for the drawing, `a`/`b` per hit.
        #[arg(long, default_value = "")]
        word: String,
        #[command(flatten)]
        picture: Picture,
    },
    /// Draw a schema, or a filling of a rectangle, as PPM or SVG.
    Render {
        #[arg(long, conflicts_with = "sft", required_unless_present = "sft")]
        schemas: Option<PathBuf>,
        /// Schema to draw; defaults to the first.
        #[arg(long)]
        schema: Option<String>,
        #[arg(long)]
        sft: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        picture: Picture,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Configurations of an SFT having at least one of the given periods.
    Periods {
        #[arg(long)]
        sft: PathBuf,
        /// Periods written `x,y`.
        #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
        periods: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        /// Tori `a × d` with `a, d` up to this size are checked.
        #[arg(long, default_value_t = 4)]
        test_bound: i64,
        #[command(flatten)]
        bounds: Bounds,
    },
}

#[derive(Args, Debug, Clone)]
struct Picture {
    #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["X0", "Y0", "X1", "Y1"])]
    rect: Option<Vec<i64>>,
    #[arg(long, default_value_t = 1)]
    scale: u32,
    /// `ppm` or `svg`; by default taken from the output extension.
    #[arg(long)]
    format: Option<String>,
    /// Lines `name r g b`.
    #[arg(long)]
    palette: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let _ = cli.seedless;
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
