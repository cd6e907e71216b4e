use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use spdc_angular::io::{resolve_config, run_command, Command, OutputFormat};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Angular spectrum of the signal.
    As,
    /// Conditional angular spectrum for the configured idler.
    Cas,
    /// Critical length over a range of pump waists.
    LcCurve,
    /// 1/e widths, critical length and regime.
    Widths,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Pgm,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "spdc-angular", version, about = "Angular spectra of type-I SPDC photon pairs")]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Scenario JSON file or preset name (measurement-1 .. measurement-4).
    #[arg(long)]
    config: String,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be >= 1");
            return ExitCode::from(1);
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };

    let command = match cli.command {
        Cmd::As => Command::As,
        Cmd::Cas => Command::Cas,
        Cmd::LcCurve => Command::LcCurve,
        Cmd::Widths => Command::Widths,
    };
    let format = match cli.format {
        Format::Csv => OutputFormat::Csv,
        Format::Pgm => OutputFormat::Pgm,
        Format::Both => OutputFormat::Both,
    };

    let result = resolve_config(&cli.config)
        .and_then(|cfg| pool.install(|| run_command(command, &cfg, &cli.out_dir, format)));
    match result {
        Ok(out) => {
            for p in &out.artifacts {
                log::info!("wrote {}", p.display());
            }
            println!("{}", out.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
