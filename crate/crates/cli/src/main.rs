use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use adek3::classifier::{classify_all, counts, partition, ClassifyOptions, ReferenceData, XiaoTable};
use adek3::fixtures::verify_fixtures;
use adek3::glue::{SearchLimits, DEFAULT_BUDGET};
use adek3::nikulin::{Conventions, TwoAdicRule};
use adek3::report::{record_to_json, to_csv, to_json, ExportDocument, RunManifest, TableInput, SCHEMA};
use adek3::{enumerate_configurations, AdeConfiguration};
use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCOMPLETE: u8 = 3;

/// ADE configurations of (-2)-curves on K3 surfaces.
#[derive(Parser)]
#[command(name = "adek3", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all configurations up to a rank.
    Enumerate {
        #[arg(long, default_value_t = 19)]
        max_rank: u32,
        /// Print only the number of configurations.
        #[arg(long)]
        count_only: bool,
    },
    /// Classify configurations and write exports.
    Classify(ClassifyArgs),
    /// Run the built-in fixture suite.
    VerifyFixtures {
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        conventions: ConventionArgs,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Cap on subgroup candidates per configuration.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Disable symmetry reduction in the subgroup search.
    #[arg(long)]
    no_symmetry: bool,
}

impl SearchArgs {
    fn limits(&self) -> SearchLimits {
        SearchLimits { budget: self.budget, symmetry: !self.no_symmetry }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TwoAdic {
    PlusMinus,
    Plus,
    Minus,
}

#[derive(Args)]
struct ConventionArgs {
    /// Sign applied to the group order at odd boundary primes.
    #[arg(long, default_value_t = -1, allow_negative_numbers = true, value_parser = parse_sign)]
    odd_sign: i64,
    /// Sign rule at p = 2.
    #[arg(long, value_enum, default_value_t = TwoAdic::PlusMinus)]
    two_adic: TwoAdic,
    /// Do not exempt forms that split off a half-valued summand at p = 2.
    #[arg(long)]
    no_half_exemption: bool,
}

fn parse_sign(s: &str) -> std::result::Result<i64, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err("expected 1 or -1".into()),
    }
}

impl ConventionArgs {
    fn conventions(&self) -> Conventions {
        Conventions {
            odd_sign: self.odd_sign,
            two_adic: match self.two_adic {
                TwoAdic::PlusMinus => TwoAdicRule::PlusMinus,
                TwoAdic::Plus => TwoAdicRule::Exact(1),
                TwoAdic::Minus => TwoAdicRule::Exact(-1),
            },
            accept_plus_half: !self.no_half_exemption,
            accept_minus_half: !self.no_half_exemption,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Both,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, default_value_t = 19)]
    max_rank: u32,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Both)]
    format: Format,
    /// Output path prefix; `.json`, `.csv` and `.manifest.json` are appended.
    #[arg(long, default_value = "adek3-records")]
    out: PathBuf,
    /// Table of smooth quasi-etale cover configurations, one per line.
    #[arg(long)]
    xiao_table: Option<PathBuf>,
    /// Classify one configuration and print its record.
    #[arg(long)]
    config: Option<String>,
    /// Print the summary line only.
    #[arg(long)]
    count_only: bool,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    conventions: ConventionArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate { max_rank, count_only } => enumerate(max_rank, count_only),
        Command::Classify(args) => classify(args),
        Command::VerifyFixtures { search, conventions } => {
            let opts = ClassifyOptions { limits: search.limits(), conventions: conventions.conventions() };
            Ok(fixtures(&opts))
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn enumerate(max_rank: u32, count_only: bool) -> Result<u8> {
    let configs = enumerate_configurations(max_rank)?;
    let mut out = std::io::stdout().lock();
    let written = if count_only {
        writeln!(out, "{}", configs.len())
    } else {
        configs.iter().try_for_each(|c| writeln!(out, "{c}"))
    };
    match written {
        // a closed pipe (e.g. `| head`) is not an error
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(0),
    }
}

fn classify(args: ClassifyArgs) -> Result<u8> {
    let start = Instant::now();
    let mut refs = ReferenceData::builtin();
    let mut table_input = None;
    if let Some(path) = &args.xiao_table {
        let table = XiaoTable::load(path)?;
        table_input = Some(TableInput { path: path.display().to_string(), sha256: table.sha256.clone() });
        refs = refs.with_xiao_table(table);
    }
    let opts = ClassifyOptions { limits: args.search.limits(), conventions: args.conventions.conventions() };
    let jobs = args.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));

    let configs: Vec<AdeConfiguration> = match &args.config {
        Some(name) => vec![name.parse()?],
        None => enumerate_configurations(args.max_rank)?,
    };
    let outcomes = classify_all(&configs, &refs, &opts, jobs);
    let doc = ExportDocument::new(&outcomes, refs.tags_partial());
    let n = counts(&outcomes, &refs);

    for e in outcomes.iter().filter_map(|o| o.as_ref().err()) {
        eprintln!("error: {}: {}", e.config, e.error);
    }

    if args.config.is_some() {
        if let Some(Err(e)) = outcomes.first() {
            if !matches!(e.error, adek3::Error::SearchIncomplete { .. }) {
                anyhow::bail!("{}: {}", e.config, e.error);
            }
        }
        match (&doc.records.first(), args.format) {
            (Some(r), Format::Csv) => print!("{}", to_csv(&ExportDocument { records: vec![(*r).clone()], ..doc.clone() })),
            (Some(r), _) => println!("{}", record_to_json(r)),
            (None, _) => {}
        }
        return Ok(if n.errors > 0 { EXIT_INCOMPLETE } else { 0 });
    }

    match partition(&outcomes, &refs) {
        Ok(p) => println!("{p}"),
        Err(e) => println!("{e}"),
    }
    if refs.tags_partial() {
        println!("cover tags partial: no table given");
    }
    if args.count_only {
        return Ok(if n.errors > 0 { EXIT_INCOMPLETE } else { 0 });
    }

    let with_ext = |ext: &str| {
        let mut s = args.out.clone().into_os_string();
        s.push(ext);
        PathBuf::from(s)
    };
    if args.format != Format::Csv {
        std::fs::write(with_ext(".json"), to_json(&doc)).context("writing json")?;
    }
    if args.format != Format::Json {
        std::fs::write(with_ext(".csv"), to_csv(&doc)).context("writing csv")?;
    }
    let manifest = RunManifest {
        schema: SCHEMA,
        tool: "adek3".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        max_rank: args.max_rank,
        budget: opts.limits.budget,
        symmetry: opts.limits.symmetry,
        jobs,
        xiao_table: table_input,
        tags_partial: refs.tags_partial(),
        counts: n,
        wall_time_ms: start.elapsed().as_millis(),
    };
    std::fs::write(with_ext(".manifest.json"), manifest.to_json()).context("writing manifest")?;
    Ok(if n.errors > 0 { EXIT_INCOMPLETE } else { 0 })
}

fn fixtures(opts: &ClassifyOptions) -> u8 {
    let results = verify_fixtures(opts);
    let mut failed = 0;
    for r in &results {
        if r.passed {
            println!("pass  {}/{}", r.group, r.name);
        } else {
            failed += 1;
            let kind = if r.incomplete { "incomplete" } else { "FAIL" };
            println!("{kind}  {}/{}: {}", r.group, r.name, r.detail);
        }
    }
    println!("{} of {} fixtures passed", results.len() - failed, results.len());
    if failed > 0 {
        EXIT_FAILURE
    } else {
        0
    }
}
