mod cache;
mod cli;
mod commands;
mod output;
mod settings;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use cache::{Cache, Entry, Lookup};
use cli::Cli;
use output::Format;
use settings::Config;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error("{0}")]
    Precision(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Precision(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

struct Resolved {
    format: Format,
    jobs: usize,
    digits: usize,
    cache_dir: Option<PathBuf>,
}

fn resolve(cli: &Cli, cfg: &Config) -> Result<Resolved, CliError> {
    let g = &cli.global;
    let format = match (g.format, cfg.raw("format")) {
        (Some(f), _) => f,
        (None, Some(s)) => Format::parse(s).ok_or_else(|| CliError::Usage(format!("format: unknown value {s}")))?,
        (None, None) => Format::Human,
    };
    let jobs = match (g.jobs, cfg.raw("jobs")) {
        (Some(j), _) => j,
        (None, Some(s)) => s.parse().map_err(|_| CliError::Usage(format!("jobs: expected an integer, got {s}")))?,
        (None, None) => 0,
    };
    Ok(Resolved {
        format,
        jobs,
        digits: cfg.u32(g.digits, "digits")? as usize,
        cache_dir: g.cache_dir.clone().or_else(|| cfg.raw("cache-dir").map(PathBuf::from)),
    })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cfg = match &cli.global.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let r = resolve(&cli, &cfg)?;
    let plan = commands::plan(&cli.command, &cfg, cli.global.prec)?;
    let request = format!("{plan:?} format={} digits={}", r.format.name(), r.digits);

    let cache = match &r.cache_dir {
        Some(d) => Some(Cache::new(d).map_err(|e| CliError::Usage(format!("cache dir {}: {e}", d.display())))?),
        None => None,
    };
    let key = cache::key_for(&request);
    let cached = match &cache {
        Some(c) => match c.load(&key) {
            Lookup::Hit(e) => Some(e),
            Lookup::Miss => None,
            Lookup::Corrupt(why) => {
                eprintln!("warning: cache entry {key} unusable ({why}); recomputing");
                None
            }
        },
        None => None,
    };
    let entry = match cached {
        Some(e) => e,
        None => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(r.jobs)
                .build()
                .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
            let out = pool.install(|| commands::execute(&plan, r.digits))?;
            let e = Entry {
                exit: i32::from(out.failed),
                payload: out.render(r.format),
            };
            if let Some(c) = &cache {
                if let Err(err) = c.store(&key, &e) {
                    eprintln!("warning: could not write cache entry {key}: {err}");
                }
            }
            e
        }
    };
    emit(&entry.payload, cli.global.out.as_ref())?;
    Ok(entry.exit as u8)
}

fn emit(payload: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Usage(format!("writing output: {e}"));
    match out {
        Some(p) => std::fs::write(p, payload).map_err(io),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(payload.as_bytes()).map_err(io)?;
            stdout.flush().map_err(io)
        }
    }
}
