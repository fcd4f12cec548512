mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "invforge", version, about = "Invariants of orthogonal and symplectic groups over F2")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Permit the n = 3 computations that take noticeably longer.
    #[arg(long, global = true)]
    allow_slow: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one object of the invariant tower.
    Compute(ComputeArgs),
    /// Check registered identities.
    Verify(VerifyArgs),
    /// Enumerate an explicit group.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateWhat,
    },
    /// Hilbert series data (always JSON).
    Hilbert {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        expand: Option<usize>,
    },
    /// Compare or rewrite the golden tree.
    Goldens {
        #[arg(value_parser = ["check", "regenerate"])]
        mode: String,
        #[arg(long, default_value = "golden")]
        root: std::path::PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(value_parser = commands::TARGETS)]
    target: String,
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = ["+", "-"], allow_hyphen_values = true)]
    sign: Option<String>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// List the registered identity names.
    #[arg(long)]
    list: bool,
    #[command(subcommand)]
    what: Option<VerifyWhat>,
}

#[derive(Subcommand, Debug)]
enum VerifyWhat {
    Identity {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        /// Without --n, --all runs n = 1 and n = 2.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand, Debug)]
enum EnumerateWhat {
    Group {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        transvections: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    invforge_core::configure_threads_from_env();
    let ctx = commands::Ctx { json: cli.json, allow_slow: cli.allow_slow || invforge_core::Options::from_env().allow_slow };
    let result = match cli.command {
        Command::Compute(args) => commands::compute(&ctx, &args.target, args.n, args.sign.as_deref(), args.i, args.group.as_deref()),
        Command::Verify(v) => match (v.list, v.what) {
            (true, _) => commands::list_identities(&ctx),
            (false, Some(VerifyWhat::Identity { name, n, all })) => commands::verify(&ctx, name.as_deref(), n, all),
            (false, None) => Err(commands::Failure::usage("verify needs `identity` or --list")),
        },
        Command::Enumerate { what: EnumerateWhat::Group { group, n, transvections } } => commands::enumerate(&ctx, &group, n, transvections),
        Command::Hilbert { group, n, expand } => commands::hilbert(&group, n, expand),
        Command::Goldens { mode, root } => commands::goldens(&ctx, &mode, &root),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
