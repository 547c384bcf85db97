mod commands;
mod format;
mod registry;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use commands::InputError;
use report::Report;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "rbx", version, about = "Exact checks and cohomology for Rota-Baxter type operators on Lie and L-infinity algebras")]
struct Cli {
    /// Report rendering.
    #[arg(long, value_enum, default_value_t = Render::Table, global = true)]
    report: Render,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Render {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the defining identities of a structure.
    Verify {
        #[arg(value_parser = ["lie", "rep", "rbo", "rrb", "cybe", "linf", "hrbo"])]
        kind: String,
        /// Structure file, or @name for a built-in example.
        file: String,
        /// Highest weight checked for homotopy operators.
        #[arg(long)]
        p_max: Option<usize>,
    },
    /// Cohomology of a controlling complex.
    Cohomology {
        #[arg(value_parser = ["ce", "lierep", "oop", "rrb", "rb", "tlb"])]
        kind: String,
        file: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Exactness of a long exact sequence in cohomology.
    Les {
        #[arg(value_parser = ["rrb", "rb", "tlb"])]
        kind: String,
        file: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// First-order deformations: cocycle checks and equivalence.
    Deform {
        #[arg(value_parser = ["check", "equiv"])]
        action: String,
        file: String,
        #[arg(required = true)]
        deformations: Vec<String>,
    },
    /// Pre-Lie structures induced by operators and their sub-adjacent algebras.
    Prelie {
        #[arg(value_parser = ["from-rbo", "subadjacent", "phi"])]
        kind: String,
        file: String,
    },
    /// Built-in example structures.
    Examples {
        #[command(subcommand)]
        action: ExamplesCmd,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    List,
    /// Print an example as a structure file.
    Show { name: String },
}

fn run(cmd: &Cmd, rep: &mut Report) -> Result<Option<String>, InputError> {
    match cmd {
        Cmd::Verify { kind, file, p_max } => commands::verify(kind, &commands::load(file)?, *p_max, rep)?,
        Cmd::Cohomology { kind, file, degree, max_degree } => {
            let range = match (degree, max_degree) {
                (Some(d), None) => *d..=*d,
                (d, Some(m)) => d.unwrap_or(0)..=*m,
                (None, None) => return Err(InputError("cohomology needs --degree or --max-degree".into())),
            };
            commands::cohomology_cmd(kind, &commands::load(file)?, range, rep)?
        }
        Cmd::Les { kind, file, max_degree } => commands::les_cmd(kind, &commands::load(file)?, *max_degree, rep)?,
        Cmd::Deform { action, file, deformations } => commands::deform_cmd(action, &commands::load(file)?, deformations, rep)?,
        Cmd::Prelie { kind, file } => commands::prelie_cmd(kind, &commands::load(file)?, rep)?,
        Cmd::Examples { action: ExamplesCmd::List } => commands::examples_list(rep),
        Cmd::Examples { action: ExamplesCmd::Show { name } } => {
            let f = registry::lookup(name.trim_start_matches('@')).ok_or_else(|| InputError(format!("unknown example {name:?}")))?;
            return Ok(Some(f.emit()));
        }
    }
    Ok(None)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let mut rep = Report::new(format!("rbx {command}"));
    let start = Instant::now();
    match run(&cli.cmd, &mut rep) {
        Ok(Some(raw)) => {
            print!("{raw}");
            ExitCode::SUCCESS
        }
        Ok(None) => {
            rep.elapsed_ms = start.elapsed().as_millis() as u64;
            match cli.report {
                Render::Json => println!("{}", rep.json()),
                Render::Table => print!("{}", rep.render_table()),
            }
            ExitCode::from(if rep.ok { 0 } else { 1 })
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
