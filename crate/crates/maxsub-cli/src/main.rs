use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maxsub_core::normalizer::GroupKind;

use maxsub_cli::commands::{
    cmd_golden_diff, cmd_list, cmd_primitive, cmd_verify, CliError, DataPaths, Format, EXIT_USAGE,
};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupArg {
    Su,
    So,
    Sp,
}

impl From<GroupArg> for GroupKind {
    fn from(v: GroupArg) -> GroupKind {
        match v {
            GroupArg::Su => GroupKind::SU,
            GroupArg::So => GroupKind::SO,
            GroupArg::Sp => GroupKind::Sp,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(v: FormatArg) -> Format {
        match v {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

/// Maximal subgroups of the compact classical groups SU(n), SO(n), Sp(n).
#[derive(Parser, Debug)]
#[command(name = "maxsub", version, about)]
struct Cli {
    /// Classical family; all three when omitted.
    #[arg(long, global = true, value_enum)]
    group: Option<GroupArg>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,

    /// Exception table path (default <data>/exceptions/dynkin18.txt).
    #[arg(long, global = true)]
    exceptions: Option<PathBuf>,

    /// Golden table directory (default <data>/golden).
    #[arg(long, global = true)]
    golden: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximal subgroups of one ambient size: identity components and
    /// component groups.
    List {
        /// Ambient size n.
        #[arg(long)]
        n: usize,
    },
    /// Primitive subalgebra tables for one ambient size.
    Primitive {
        /// Ambient size n.
        #[arg(long)]
        n: usize,
    },
    /// Matrix-level certificate sweep over all candidates up to a size cap.
    Verify {
        /// Largest ambient size to sweep.
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Worker threads (0 = library default).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Compare computed tables against the stored golden tables.
    GoldenDiff {
        /// Largest ambient size to compare.
        #[arg(long, default_value_t = 30)]
        n_max: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let paths = DataPaths::new(
        std::env::var_os("MAXSUB_DATA_DIR").map(PathBuf::from),
        cli.exceptions,
        cli.golden,
    );
    let choice = cli.group.map(GroupKind::from);
    let format = Format::from(cli.format);
    let result = match cli.command {
        Command::List { n } => cmd_list(choice, n, format, &paths),
        Command::Primitive { n } => cmd_primitive(choice, n, format, &paths),
        Command::Verify { n_max, jobs } => cmd_verify(choice, n_max, jobs, format, &paths),
        Command::GoldenDiff { n_max } => cmd_golden_diff(choice, n_max, &paths),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e @ CliError::Usage(_)) | Err(e @ CliError::Data(_)) => {
            eprintln!("{e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
