//! `listsym`: check list-function symmetries, enumerate NFEs and
//! extrapolate filter-equivariant functions from examples.
//!
//! Exit status is 0 on success, 1 when a check fails or the examples do not
//! amalgamate, and 2 on usage or parse errors.

/// `println!` into a `String` buffer.
macro_rules! say {
    ($buf:expr, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        writeln!($buf, $($arg)*).expect("writing to a String cannot fail");
    }};
}

mod commands;
mod demo;
mod input;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use listsym::{Law, Scope};

#[derive(Parser, Debug)]
#[command(name = "listsym", version, about = "Symmetries of list functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a function for map-, filter- or tail-equivariance.
    Check {
        /// Function as JSON, or the name of a builtin such as `reverse`.
        #[arg(long = "fn", value_name = "FUNCTION")]
        function: String,
        /// Law to check; all three when omitted.
        #[arg(long, value_enum)]
        law: Option<LawArg>,
        /// Alphabet size and maximum list length.
        #[arg(long, value_name = "A,L", default_value = "3,5", value_parser = input::parse_scope)]
        scope: Scope,
    },
    /// List every NFE term with inflation factor k.
    Enumerate {
        #[arg(long)]
        k: usize,
    },
    /// Compute f xs from examples of f.
    Extrapolate {
        /// Example file, or `-` for stdin.
        #[arg(long, value_name = "FILE")]
        examples: String,
        /// The list xs, as `[3,2,1]` or `3,2,1`, or `-` for stdin.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        input: String,
        /// `fe`: examples are outputs on every two-value sublist of xs.
        /// `nfe`: a single example on a list of two distinct values.
        #[arg(long, value_enum, default_value_t = Mode::Fe)]
        mode: Mode,
    },
    /// Amalgamate a collection of filtered lists, or decompose a list and
    /// rebuild it.
    Amal {
        /// Collection file mapping each removed value to its list, or `-`.
        #[arg(
            long,
            value_name = "FILE",
            conflicts_with = "input",
            required_unless_present = "input"
        )]
        examples: Option<String>,
        /// A list to decompose and rebuild.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        input: Option<String>,
    },
    /// Run the headline examples end to end.
    Demo,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LawArg {
    Map,
    Filter,
    Tail,
}

impl From<LawArg> for Law {
    fn from(law: LawArg) -> Self {
        match law {
            LawArg::Map => Law::Map,
            LawArg::Filter => Law::Filter,
            LawArg::Tail => Law::Tail,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Fe,
    Nfe,
}

/// How a command finished when it did not hit an error.
pub enum Status {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut buf = String::new();
    let result = match cli.command {
        Command::Check {
            function,
            law,
            scope,
        } => commands::check(&mut buf, &function, law.map(Law::from), scope, cli.format),
        Command::Enumerate { k } => commands::enumerate(&mut buf, k, cli.format),
        Command::Extrapolate {
            examples,
            input,
            mode,
        } => commands::extrapolate(&mut buf, &examples, &input, mode, cli.format),
        Command::Amal { examples, input } => {
            commands::amal(&mut buf, examples.as_deref(), input.as_deref(), cli.format)
        }
        Command::Demo => demo::run(&mut buf, cli.format),
    };
    if let Err(err) = io::stdout().lock().write_all(buf.as_bytes()) {
        if err.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {err}");
            return ExitCode::from(2);
        }
    }
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            let failed = err
                .downcast_ref::<listsym::Error>()
                .is_some_and(listsym::Error::is_amalgamation_failure);
            ExitCode::from(if failed { 1 } else { 2 })
        }
    }
}
