use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cowalk::commands::{
    run_cowalk, run_effective, run_export_waveguide, run_spectrum, run_walk, RunSummary,
};
use cowalk::config::Overrides;
use cowalk::verify;

#[derive(Debug, Parser)]
#[command(name = "cowalk", version, about = "Two-particle quantum walks on a ring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,

    #[command(flatten)]
    flags: Overrides,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Block spectra with bound/scattering labels.
    Spectrum(Common),
    /// Position and momentum correlation series.
    Walk(Common),
    /// Cone speeds of the bound composite, full and effective.
    Cowalk(Common),
    /// Effective composite dynamics and band comparison.
    Effective(Common),
    /// 2D waveguide-array layout for one statistics sector.
    ExportWaveguide(Common),
    /// Run the built-in property checks.
    Verify,
}

fn resolve(c: Common) -> cowalk::Result<Overrides> {
    let file = match c.config {
        Some(path) => Overrides::from_toml_file(&path)?,
        None => Overrides::default(),
    };
    Ok(c.flags.over(file))
}

fn report(result: cowalk::Result<RunSummary>) -> ExitCode {
    match result {
        Ok(summary) => {
            for f in &summary.files {
                println!("wrote {}", f.display());
            }
            println!("{}", summary.message);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = |c: Common, f: fn(&Overrides) -> cowalk::Result<RunSummary>| {
        report(resolve(c).and_then(|o| f(&o)))
    };
    match cli.command {
        Command::Spectrum(c) => run(c, run_spectrum),
        Command::Walk(c) => run(c, run_walk),
        Command::Cowalk(c) => run(c, run_cowalk),
        Command::Effective(c) => run(c, run_effective),
        Command::ExportWaveguide(c) => run(c, run_export_waveguide),
        Command::Verify => {
            let checks = verify::run_all();
            let mut ok = true;
            for c in &checks {
                ok &= c.pass;
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                println!("{verdict} {}  {}", c.name, c.detail);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
