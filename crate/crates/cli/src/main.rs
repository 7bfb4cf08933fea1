use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use isozeta_cli::commands::{self, CliError, Report, Sidecar};
use isozeta_cli::lpoly::LPolyInput;

#[derive(Parser)]
#[command(
    name = "isozeta",
    version,
    about = "Zeta functions of supersingular isogeny graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build G(p, ell, H) and write it with a provenance sidecar (<out>.prov).
    Build {
        p: u64,
        ell: u64,
        /// `full`, `full:N`, `borel0:N`, `borel1:N` or `gens:N:a,b,c,d;...`
        level: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Pick edge-orbit representatives at random from this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the zeta function of a graph file.
    Zeta {
        graph: PathBuf,
        #[arg(long)]
        series: Option<usize>,
    },
    /// Closed-walk counts by three independent methods.
    Counts {
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        series: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Enumerate primes up to a length.
    Primes {
        graph: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Euler characteristics of the orientable graphs of G(p, ell, B0(N)).
    Chi {
        p: u64,
        ell: u64,
        n: u64,
        /// Skip building the graph.
        #[arg(long)]
        no_graph: bool,
    },
    /// #X0(p)(F_{ell^r}) by the graph and by class numbers.
    Pointcount { p: u64, ell: u64, r: u32 },
    /// Check Z(X_{H_p}) Z(X_H)^-2 zeta_G against the predicted numerator.
    VerifyProduct {
        graph: PathBuf,
        x_h: PathBuf,
        x_hp: PathBuf,
    },
    /// Run a quick consistency check.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn sidecar_path(graph: &Path) -> PathBuf {
    let mut s = graph.as_os_str().to_owned();
    s.push(".prov");
    PathBuf::from(s)
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Build {
            p,
            ell,
            level,
            out,
            seed,
        } => {
            let spec = commands::parse_level(&level)?;
            let built = commands::build(p, ell, &spec, seed)?;
            let (aig, side) = commands::build_outputs(&built, seed);
            match out {
                Some(path) => {
                    write(&path, &aig)?;
                    write(&sidecar_path(&path), &side)?;
                    Ok(commands::build_summary(&built))
                }
                None => Ok(Report {
                    text: aig,
                    passed: true,
                }),
            }
        }
        Command::Zeta { graph, series } => {
            commands::zeta(&commands::read_graph(&read(&graph)?)?, series)
        }
        Command::Counts {
            graph,
            series,
            max_len,
        } => commands::counts(&commands::read_graph(&read(&graph)?)?, series, max_len),
        Command::Primes { graph, max_len } => {
            commands::primes(&commands::read_graph(&read(&graph)?)?, max_len)
        }
        Command::Chi {
            p,
            ell,
            n,
            no_graph,
        } => commands::chi(p, ell, n, !no_graph),
        Command::Pointcount { p, ell, r } => commands::pointcount(p, ell, r),
        Command::VerifyProduct { graph, x_h, x_hp } => {
            let g = commands::read_graph(&read(&graph)?)?;
            let side = Sidecar::parse(&read(&sidecar_path(&graph))?)?;
            let parse = |p: &Path| {
                LPolyInput::parse(&read(p)?)
                    .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
            };
            commands::verify_product(&g, &side, &parse(&x_h)?, &parse(&x_hp)?)
        }
        Command::Selftest { seed } => commands::selftest(seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
