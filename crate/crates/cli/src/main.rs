use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use log::{info, warn};

use pqclass::catalog::{builtin_catalog, parse_catalog, Catalog};
use pqclass::enumerate::{integral_alpha, list_of_types, ComponentLimits};
use pqclass::fp::DEFAULT_COSET_LIMIT;
use pqclass::geometry::hurwitz_genus;
use pqclass::pi1::DEFAULT_INDEX_BOUND;
use pqclass::pipeline::{
    default_threads, emit, nodal_triples, run_pipeline, Format, Ledger, LedgerEntry, PipelineError, PipelineOutput, RunConfig,
};
use pqclass::reference::{families_in_row, REFERENCE_FAMILIES};

/// `println!` that exits quietly when the reader has gone away.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if let Err(e) = writeln!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

/// Product-quotient surfaces with p_g = q = 0 and K² in {2, 4, 6}.
#[derive(Parser)]
#[command(name = "classify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args)]
struct Options {
    /// Catalog file to search instead of the builtin one (repeatable).
    #[arg(long, global = true)]
    catalog: Vec<PathBuf>,
    /// Search the builtin catalog as well as the given files.
    #[arg(long, global = true)]
    with_builtin: bool,
    /// Worker threads (default: CLASSIFY_THREADS or the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_COSET_LIMIT)]
    coset_limit: usize,
    #[arg(long, global = true)]
    orbit_cap: Option<usize>,
    #[arg(long, global = true)]
    automorphism_cap: Option<usize>,
    /// Largest quotient order tried when probing infinite fundamental groups.
    #[arg(long, global = true, default_value_t = DEFAULT_INDEX_BOUND)]
    index_bound: usize,
    /// Write the ledger of skipped orders and failures to this file.
    #[arg(long, global = true)]
    ledger: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct K2 {
    /// Values of K², comma separated.
    #[arg(long = "k2", value_delimiter = ',', default_value = "2,4,6")]
    k2: Vec<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Admissible signatures with their α.
    Signatures(K2),
    /// Group and signature triples carrying a surface with the right nodes.
    Triples(K2),
    /// One representative pair of systems per family.
    Families(K2),
    /// H1 and fundamental group of every family.
    Pi1 {
        #[command(flatten)]
        k2: K2,
        /// Also print the simplified presentations.
        #[arg(long)]
        presentations: bool,
    },
    /// The table of surfaces.
    Report {
        #[command(flatten)]
        k2: K2,
        #[arg(long, default_value = "tsv", value_parser = parse_format)]
        format: Format,
    },
    /// Quick consistency checks against the known K² = 2 surfaces.
    Selftest,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

enum Failure {
    Invariant(anyhow::Error),
    Input(anyhow::Error),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invariant(_) => 1,
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Config(_) => Failure::Input(e.into()),
            _ => Failure::Invariant(e.into()),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Invariant(e) | Failure::Input(e) => eprintln!("error: {e:#}"),
                Failure::Cap(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn load_catalog(opts: &Options) -> Result<Catalog, Failure> {
    if opts.catalog.is_empty() {
        return Ok(builtin_catalog());
    }
    let mut catalog = if opts.with_builtin { builtin_catalog() } else { Catalog::new() };
    for path in &opts.catalog {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(Failure::Input)?;
        let parsed = parse_catalog(&text)
            .with_context(|| format!("parsing {}", path.display()))
            .map_err(Failure::Input)?;
        catalog.extend(parsed).with_context(|| format!("merging {}", path.display())).map_err(Failure::Input)?;
    }
    Ok(catalog)
}

fn config(opts: &Options, k2: &K2, fundamental_groups: bool) -> Result<RunConfig, Failure> {
    let mut c = RunConfig::new(k2.k2.clone(), load_catalog(opts)?);
    c.quotients = builtin_catalog();
    c.coset_limit = opts.coset_limit;
    c.index_bound = opts.index_bound;
    c.fundamental_groups = fundamental_groups;
    c.threads = opts.threads.unwrap_or_else(default_threads);
    let defaults = ComponentLimits::default();
    c.limits = ComponentLimits {
        orbit_cap: opts.orbit_cap.unwrap_or(defaults.orbit_cap),
        automorphism_cap: opts.automorphism_cap.unwrap_or(defaults.automorphism_cap),
    };
    c.validate()?;
    Ok(c)
}

fn write_ledger(opts: &Options, ledger: &Ledger) -> Result<(), Failure> {
    let text = ledger.render();
    for line in text.lines() {
        info!("{line}");
    }
    if let Some(path) = &opts.ledger {
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(Failure::Input)?;
    }
    Ok(())
}

/// Writes the ledger, then turns failures recorded in it into an exit status.
fn finish(opts: &Options, out: &PipelineOutput) -> Result<(), Failure> {
    write_ledger(opts, &out.ledger)?;
    if out.ledger.failures() > out.ledger.cap_hits() {
        return Err(Failure::Invariant(anyhow::anyhow!(
            "{} computations failed, see the ledger",
            out.ledger.failures() - out.ledger.cap_hits()
        )));
    }
    if out.ledger.cap_hits() > 0 {
        return Err(Failure::Cap(format!("{} computations stopped at a cap, see the ledger", out.ledger.cap_hits())));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Signatures(k2) => {
            let c = config(opts, k2, false)?;
            out!("K2\tT\talpha");
            for &k in &c.k_squared {
                for sig in list_of_types(k) {
                    let a = integral_alpha(&sig, k).expect("listed signatures have integral alpha");
                    out!("{k}\t{sig}\t{a}");
                }
            }
            Ok(())
        }
        Command::Triples(k2) => {
            let (triples, ledger) = nodal_triples(&config(opts, k2, false)?)?;
            let missing = ledger.entries.iter().filter(|e| matches!(e, LedgerEntry::Missing { .. })).count();
            if missing > 0 {
                warn!("{missing} group orders have no catalog entries");
            }
            out!("K2\tT1\tT2\tg1\tg2\tG\torder");
            for t in &triples {
                let g1 = hurwitz_genus(t.group_order, &t.t1).map_err(|e| Failure::Invariant(e.into()))?;
                let g2 = hurwitz_genus(t.group_order, &t.t2).map_err(|e| Failure::Invariant(e.into()))?;
                out!("{}\t{}\t{}\t{g1}\t{g2}\t{}\t{}", t.k_squared, t.t1, t.t2, t.label, t.group_order);
            }
            write_ledger(opts, &ledger)
        }
        Command::Families(k2) => {
            let out = run_pipeline(&config(opts, k2, false)?)?;
            out!("K2\tT1\tT2\tG\tfamily\tnodes\tsys1\tsys2");
            for f in &out.families {
                out!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    f.k_squared,
                    f.t1,
                    f.t2,
                    f.group,
                    f.class_id + 1,
                    f.nodes,
                    f.sys1,
                    f.sys2
                );
            }
            finish(opts, &out)
        }
        Command::Pi1 { k2, presentations } => {
            let out = run_pipeline(&config(opts, k2, true)?)?;
            out!("K2\tT1\tT2\tG\tfamily\tH1\tpi1\torder\tkernel");
            for f in &out.families {
                let order = f.finite_order.map_or("-".to_string(), |n| n.to_string());
                let kernel = f.free_kernel.map_or("-".to_string(), |(i, r)| format!("index {i} rank {r}"));
                out!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{order}\t{kernel}",
                    f.k_squared,
                    f.t1,
                    f.t2,
                    f.group,
                    f.class_id + 1,
                    f.h1,
                    f.pi1
                );
                if *presentations {
                    out!("{}", f.presentation.trim_end());
                }
            }
            finish(opts, &out)
        }
        Command::Report { k2, format } => {
            let out = run_pipeline(&config(opts, k2, true)?)?;
            out!("{}", emit(&out.rows, *format).trim_end_matches('\n'));
            finish(opts, &out)
        }
        Command::Selftest => selftest(opts),
    }
}

fn selftest(opts: &Options) -> Result<(), Failure> {
    let mut failed = 0;
    let mut check = |name: &str, ok: bool| {
        out!("{} {name}", if ok { "ok  " } else { "FAIL" });
        failed += usize::from(!ok);
    };
    let counts: Vec<usize> = [2, 4, 6].iter().map(|&k| list_of_types(k).len()).collect();
    check("signature counts 14, 24, 24", counts == [14, 24, 24]);

    let c = config(opts, &K2 { k2: vec![2] }, true)?;
    let out = run_pipeline(&c)?;
    let expected: Vec<_> = REFERENCE_FAMILIES.iter().filter(|f| f.k_squared == 2).collect();
    check("K2=2 gives 7 rows", out.rows.len() == 7);
    check("K2=2 gives 8 families", out.family_count() == expected.len());
    for f in &expected {
        let (t1, t2) = f.signatures();
        let row = out.rows.iter().find(|r| r.group == f.group && r.t1 == t1 && r.t2 == t2);
        let ok = row.is_some_and(|r| {
            (r.g1, r.g2) == f.genera && r.h1 == f.h1 && r.pi1 == f.pi1_summary() && r.families == families_in_row(f.row)
        });
        check(&format!("row {} {} ({}) ({})", f.row, f.group, t1, t2), ok);
    }
    check("no failures in the ledger", out.ledger.failures() == 0);
    if failed > 0 {
        return Err(Failure::Invariant(anyhow::anyhow!("{failed} self checks failed")));
    }
    Ok(())
}
