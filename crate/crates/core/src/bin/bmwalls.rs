use std::path::PathBuf;
use std::process::ExitCode;

use bmwalls::io::{run, Command, RawJob};
use bmwalls::Error;
use clap::Parser;

/// Exact Bridgeland walls, Bayer–Macrì divisors and nef cones of Hilbert schemes.
///
/// Flags override the matching keys of the config file.
#[derive(Parser, Debug)]
#[command(name = "bmwalls", version)]
struct Cli {
    /// walls, decompose, nefcone, chamber, dual-check, k3-walls or plot
    command: String,
    /// Job file in the key=value format
    #[arg(long)]
    config: Option<PathBuf>,
    /// p2, hirzebruch, elliptic, k3 or custom
    #[arg(long)]
    preset: Option<String>,
    #[arg(short = 'e', allow_hyphen_values = true)]
    e: Option<String>,
    /// Number of points; also sets the character to the ideal sheaf when --ch is absent
    #[arg(short = 'n')]
    n: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long = "u")]
    u: Option<String>,
    /// Frame class H as comma-separated Picard coordinates
    #[arg(long = "h", allow_hyphen_values = true)]
    h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Character "ch0, ch1..., ch2"
    #[arg(long, allow_hyphen_values = true)]
    ch: Option<String>,
    /// Destabilizer character
    #[arg(long, allow_hyphen_values = true)]
    chp: Option<String>,
    #[arg(long = "s", allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long = "t")]
    t: Option<String>,
    #[arg(long = "max-rank")]
    max_rank: Option<String>,
    #[arg(long = "c1-bound")]
    c1_bound: Option<String>,
    #[arg(long = "chi-denom")]
    chi_denom: Option<String>,
    #[arg(long = "max-length")]
    max_length: Option<String>,
    #[arg(long = "sweep-bound")]
    sweep_bound: Option<String>,
    /// text, csv, json or svg
    #[arg(long)]
    out: Option<String>,
    /// Write to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Twisted (K3) wall model
    #[arg(long)]
    twisted: bool,
    #[arg(long = "ignore-condition-c")]
    ignore_condition_c: bool,
}

impl Cli {
    fn overrides(&self) -> Vec<(&'static str, &'static str, String)> {
        let pairs: [(&str, &str, &Option<String>); 17] = [
            ("surface", "preset", &self.preset),
            ("surface", "e", &self.e),
            ("character", "n", &self.n),
            ("character", "ch", &self.ch),
            ("character", "chp", &self.chp),
            ("frame", "lambda", &self.lambda),
            ("frame", "u", &self.u),
            ("frame", "h", &self.h),
            ("frame", "gamma", &self.gamma),
            ("frame", "s", &self.s),
            ("frame", "t", &self.t),
            ("search", "max_rank", &self.max_rank),
            ("search", "c1_bound", &self.c1_bound),
            ("search", "chi_denom", &self.chi_denom),
            ("search", "max_length", &self.max_length),
            ("search", "sweep_bound", &self.sweep_bound),
            ("output", "format", &self.out),
        ];
        let mut out: Vec<_> = pairs.into_iter().filter_map(|(s, k, v)| v.clone().map(|v| (s, k, v))).collect();
        if self.twisted {
            out.push(("search", "twisted", "true".into()));
        }
        if self.ignore_condition_c {
            out.push(("character", "ignore_condition_c", "true".into()));
        }
        out
    }
}

fn execute(cli: &Cli) -> Result<String, Error> {
    let command: Command = cli.command.parse()?;
    let mut raw = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            RawJob::parse(&text)?
        }
        None => RawJob::default(),
    };
    for (section, key, value) in cli.overrides() {
        raw.set(section, key, value);
    }
    let job = raw.resolve()?;
    run(command, &job)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(text) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("IoError: {e}");
                    ExitCode::from(3)
                }
            }
        }
        Err(e) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
