use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{self, Bounds, CommandError, Route, Which};
use crate::report::{Format, Report};

pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "atiyah", version, about = "Decide vanishing of the Atiyah class of amplitude +1 DG manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Common {
    /// Largest coefficient degree tried by the certificate search.
    #[arg(long, global = true)]
    pub degree_bound: Option<u32>,
    /// Largest jet order tried at each zero point.
    #[arg(long, global = true)]
    pub jet_order: Option<u32>,
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether the Atiyah class vanishes.
    Decide { file: PathBuf, #[command(flatten)] common: Common },
    /// Print the Atiyah cocycle.
    Cocycle {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "closed")]
        route: Route,
        /// Compute both routes and compare them.
        #[arg(long)]
        check_both: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print the labeled operator matrices.
    Operators {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
        #[command(flatten)]
        common: Common,
    },
    /// Run the clean-intersection oracle on the file's witness.
    Clean { file: PathBuf, #[command(flatten)] common: Common },
    /// Run every applicable invariant check.
    Verify {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
        /// Verify every problem file in a directory.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> Common {
        match self {
            Command::Decide { common, .. }
            | Command::Cocycle { common, .. }
            | Command::Operators { common, .. }
            | Command::Clean { common, .. }
            | Command::Verify { common, .. } => *common,
        }
    }
}

pub fn execute(command: &Command) -> Result<Report, CommandError> {
    let c = command.common();
    let bounds = Bounds {
        degree_bound: c.degree_bound,
        jet_order: c.jet_order,
    };
    match command {
        Command::Decide { file, .. } => commands::decide(&commands::load(file, bounds)?),
        Command::Cocycle {
            file,
            route,
            check_both,
            ..
        } => commands::cocycle(&commands::load(file, bounds)?, *route, *check_both),
        Command::Operators { file, which, .. } => commands::operators(&commands::load(file, bounds)?, *which),
        Command::Clean { file, .. } => commands::clean(&commands::load(file, bounds)?),
        Command::Verify { file, corpus, .. } => match (file, corpus) {
            (_, Some(dir)) => commands::verify_corpus(dir, bounds),
            (Some(file), None) => commands::verify(&commands::load(file, bounds)?),
            (None, None) => unreachable!("clap requires one of them"),
        },
    }
}

/// Parses `args`, runs the command, and returns what to print on stdout,
/// on stderr, and the exit status.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                (String::new(), rendered, code)
            } else {
                (rendered, String::new(), code)
            };
        }
    };
    let format = cli.command.common().format;
    match execute(&cli.command) {
        Ok(report) => (report.render(format), String::new(), report.outcome.exit_code()),
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
    }
}
