//! Command-line front end: argument parsing, table encoding, the result
//! cache, and the verification sweep.

pub mod args;
pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod table;
pub mod verify;

use std::io::Write;

use args::{Cli, Command};
use config::{Format, RunConfig, VERIFY_MAX_N};
use error::{CliError, CliResult};
use table::Table;

/// Result of one invocation: the table to emit and whether verification
/// (if any) succeeded.
pub struct Outcome {
    pub table: Table,
    pub config: RunConfig,
    pub verified: bool,
}

type Job = Box<dyn FnOnce(&RunConfig) -> CliResult<(Table, bool)> + Send>;

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let (config, job): (RunConfig, Job) = match &cli.command {
        Command::Classes { n, common } => (
            common.to_config(*n)?,
            Box::new(|c: &RunConfig| Ok((commands::cmd_classes(c)?, true))),
        ),
        Command::Table1 { n_max, common } => (
            common.to_config(*n_max)?,
            Box::new(|c: &RunConfig| Ok((commands::cmd_table1(c)?, true))),
        ),
        Command::Table2 { n_max, common } => (
            common.to_config(*n_max)?,
            Box::new(|c: &RunConfig| Ok((commands::cmd_table2(c)?, true))),
        ),
        Command::Dist {
            n,
            kind,
            variant,
            common,
        } => {
            let (kind, variant) = ((*kind).into(), (*variant).into());
            (
                common.to_config(*n)?,
                Box::new(move |c: &RunConfig| Ok((commands::cmd_dist(c, kind, variant)?, true))),
            )
        }
        Command::Verify { n, common } => (
            common.to_config(*n)?,
            Box::new(|c: &RunConfig| {
                c.check_cap("verify n", c.n, VERIFY_MAX_N)?;
                let report = verify::run_verification(c.n, c.tolerance)?;
                Ok((report.to_table(), report.all_passed()))
            }),
        ),
        Command::Ck {
            arrangement,
            common,
        } => {
            let arrangement = arrangement.clone();
            (
                common.to_config(1)?,
                Box::new(move |c: &RunConfig| Ok((commands::cmd_ck(c, &arrangement)?, true))),
            )
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| {
            CliError::InvalidArguments(format!("cannot start {} workers: {e}", config.jobs))
        })?;
    let (table, verified) = pool.install(|| job(&config))?;
    Ok(Outcome {
        table,
        config,
        verified,
    })
}

pub fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

pub fn emit(outcome: &Outcome) -> CliResult<()> {
    let text = render(&outcome.table, outcome.config.format);
    match &outcome.config.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
