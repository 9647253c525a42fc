use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rees_cli::commands::{self, CliError, Command, Settings, Which};
use rees_cli::report::Format;
use rees_cli::spec;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Tsv,
    Json,
}

/// Bhattacharya polynomials, mixed multiplicities, Ratliff-Rush closures and
/// the Cohen-Macaulay criterion for pairs of monomial ideals.
#[derive(Debug, Parser)]
#[command(name = "rees", version)]
struct Args {
    /// Command to run
    command: Command,
    /// Problem file in the text or JSON format; `-` reads standard input
    file: PathBuf,
    /// Window [0..R]x[0..S] for tables and the cmcheck P = B check
    #[arg(long, num_args = 2, value_names = ["R", "S"])]
    window: Option<Vec<u32>>,
    /// First sample point of the polynomial fit
    #[arg(long, num_args = 2, value_names = ["R0", "S0"])]
    base: Option<Vec<u32>>,
    /// Extra validation width beyond the fit's sample grid
    #[arg(long)]
    width: Option<u32>,
    /// Diagonal base shifts tried before the fit gives up
    #[arg(long)]
    shifts: Option<u32>,
    /// Largest reduction number tried
    #[arg(long)]
    rmax: Option<u32>,
    /// Largest k in the Ratliff-Rush colon chain
    #[arg(long)]
    kcap: Option<u32>,
    /// Consecutive equal colons required before the chain counts as stable
    #[arg(long)]
    confirm: Option<usize>,
    /// Bidegree r for length and rr
    #[arg(long)]
    r: Option<u32>,
    /// Bidegree s for length and rr
    #[arg(long)]
    s: Option<u32>,
    /// rr: colon by powers of the complete-reduction products
    #[arg(long)]
    via: bool,
    /// hilbert: which ideal to fit
    #[arg(long, value_enum)]
    ideal: Option<Which>,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    /// cmcheck: exit with status 3 on a not-Cohen-Macaulay verdict
    #[arg(long)]
    strict: bool,
}

fn pair(v: Option<Vec<u32>>, default: (u32, u32)) -> (u32, u32) {
    v.map_or(default, |v| (v[0], v[1]))
}

fn settings(args: &Args) -> Settings {
    let d = Settings::default();
    Settings {
        window: pair(args.window.clone(), d.window),
        base: pair(args.base.clone(), d.base),
        validate_width: args.width.unwrap_or(d.validate_width),
        max_shifts: args.shifts.unwrap_or(d.max_shifts),
        r_max: args.rmax.unwrap_or(d.r_max),
        k_cap: args.kcap.unwrap_or(d.k_cap),
        confirm: args.confirm.unwrap_or(d.confirm),
        r: args.r.unwrap_or(d.r),
        s: args.s.unwrap_or(d.s),
        via: args.via,
        which: args.ideal.unwrap_or(d.which),
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

fn execute(args: &Args) -> Result<commands::Outcome, CliError> {
    let input = read_input(&args.file)?;
    let problem = spec::parse(&input)?;
    commands::run(args.command, &problem, &settings(args))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(outcome) => {
            let format = match args.format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Tsv => Format::Tsv,
                OutputFormat::Json => Format::Json,
            };
            print!("{}", outcome.report.render(format));
            if args.strict && outcome.not_cm {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code())
        }
    }
}
