//! Command-line frontend for the scholarly ranking engine.
//!
//! Three subcommands cover the batch workflow:
//!
//! * `ingest`    parse the corpus TSV files, report per-file counters,
//!               optionally write a binary corpus cache for reuse
//! * `rank`      score every paper, combine the components, write the
//!               ranked TSV (and optionally per-component scores)
//! * `evaluate`  compare a ranked TSV against pairwise judgements
//!
//! Every effective parameter of a run is echoed as `key = value` lines
//! to standard error and, with `--manifest`, to a file. Manifest lines
//! use the same keys as `--config` files, so a manifest can be replayed
//! as the config of a later run.
//!
//! Exit codes: 0 success, 1 runtime/data failure, 2 usage or input
//! error (bad flags, malformed config, missing files).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use scholar_rank::{
    ingest_corpus, pairwise_agreement, pairwise_outcomes, read_cache_file, run_ranking,
    write_cache_file, write_component_scores, ComponentMask, Error as CoreError, JudgementSet,
    Normalization, PageRankConfig, RankedList, Round, ScoringConfig, TiePolicy, WeightVector,
};

const COMPONENT_NAMES: [&str; 6] = [
    "publication",
    "age",
    "pagerank",
    "author",
    "venue",
    "institution",
];

#[derive(Parser)]
#[command(
    name = "scholar-rank",
    version,
    about = "Batch citation-based ranking of scholarly publications"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the corpus TSV files and report ingestion counters
    Ingest(IngestArgs),
    /// Score, combine and rank a corpus
    Rank(Box<RankArgs>),
    /// Measure pairwise agreement of a ranking against judgements
    Evaluate(EvaluateArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// papers.tsv: paper_id \t year \t venue_id
    #[arg(long, value_name = "FILE")]
    papers: PathBuf,
    /// references.tsv: citing_paper_id \t cited_paper_id
    #[arg(long, value_name = "FILE")]
    references: PathBuf,
    /// affiliations.tsv: paper_id \t author_id \t institution_id
    #[arg(long, value_name = "FILE")]
    affiliations: PathBuf,
    /// Write a binary corpus cache here for later `rank --cache` runs
    #[arg(long, value_name = "FILE")]
    cache: Option<PathBuf>,
    /// Also write the run header to this file
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct RankArgs {
    /// papers.tsv (alternative to --cache)
    #[arg(long, value_name = "FILE")]
    papers: Option<PathBuf>,
    /// references.tsv (alternative to --cache)
    #[arg(long, value_name = "FILE")]
    references: Option<PathBuf>,
    /// affiliations.tsv (alternative to --cache)
    #[arg(long, value_name = "FILE")]
    affiliations: Option<PathBuf>,
    /// Load the corpus from a binary cache written by `ingest --cache`
    #[arg(long, value_name = "FILE")]
    cache: Option<PathBuf>,
    /// Output path for the ranked TSV (paper_id \t combined_score)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Six comma-separated component weights:
    /// publication,age,pagerank,author,venue,institution
    #[arg(long, value_name = "W1,..,W6")]
    weights: Option<String>,
    /// Citation cap for the publication score
    #[arg(long, value_name = "N")]
    threshold: Option<u32>,
    /// Exponential decay rate for recent-citation scoring
    #[arg(long, value_name = "RATE")]
    alpha: Option<f64>,
    /// Reference year for decay ('auto' = newest corpus year)
    #[arg(long, value_name = "YEAR")]
    current_year: Option<String>,
    /// Publication-score variant: 1 (zero above threshold) or 2 (capped)
    #[arg(long, value_name = "1|2")]
    round: Option<String>,
    /// PageRank damping factor in (0, 1)
    #[arg(long, value_name = "D")]
    damping: Option<f64>,
    /// PageRank L1 convergence tolerance
    #[arg(long, value_name = "EPS")]
    pr_tolerance: Option<f64>,
    /// PageRank iteration cap
    #[arg(long, value_name = "N")]
    pr_max_iters: Option<u32>,
    /// Rescaling applied to each component before weighting
    #[arg(long, value_name = "none|minmax")]
    normalization: Option<String>,
    /// Components to compute: 'all' or a comma-separated subset
    #[arg(long, value_name = "LIST")]
    components: Option<String>,
    /// Also write per-paper component scores next to --out
    #[arg(long)]
    emit_components: bool,
    /// Read defaults from a key = value config file (flags win)
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Also write the run header to this file
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,
    /// Worker threads for scoring and PageRank (0 = all cores)
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Ranked TSV as written by `rank`
    ranking: PathBuf,
    /// Judgement TSV: better_paper_id \t worse_paper_id
    judgements: PathBuf,
    /// How score ties on a judged pair are counted
    #[arg(long, value_name = "zero|half", default_value = "zero")]
    tie_policy: String,
    /// Write per-pair outcomes (satisfied/tied/violated/unresolvable)
    #[arg(long, value_name = "FILE")]
    pair_outcomes: Option<PathBuf>,
    /// Also write the run header to this file
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,
}

/// Error carrying the process exit code.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        let code = match &err {
            CoreError::Io(e) if e.kind() == io::ErrorKind::NotFound => 2,
            CoreError::InvalidConfig(_) => 2,
            _ => 1,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        Self::from(CoreError::Io(err))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(args) => cmd_ingest(args),
        Command::Rank(args) => cmd_rank(*args),
        Command::Evaluate(args) => cmd_evaluate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

// ---- value parsing shared by flags and config files ----

fn parse_round(s: &str) -> Result<Round, String> {
    match s {
        "1" => Ok(Round::One),
        "2" => Ok(Round::Two),
        _ => Err("round must be 1 or 2".into()),
    }
}

fn round_name(round: Round) -> &'static str {
    match round {
        Round::One => "1",
        Round::Two => "2",
    }
}

fn parse_normalization(s: &str) -> Result<Normalization, String> {
    match s {
        "none" => Ok(Normalization::None),
        "minmax" => Ok(Normalization::MinMax),
        _ => Err("normalization must be 'none' or 'minmax'".into()),
    }
}

fn normalization_name(mode: Normalization) -> &'static str {
    match mode {
        Normalization::None => "none",
        Normalization::MinMax => "minmax",
    }
}

fn parse_tie_policy(s: &str) -> Result<TiePolicy, String> {
    match s {
        "zero" => Ok(TiePolicy::CountZero),
        "half" => Ok(TiePolicy::CountHalf),
        _ => Err("tie policy must be 'zero' or 'half'".into()),
    }
}

fn tie_policy_name(policy: TiePolicy) -> &'static str {
    match policy {
        TiePolicy::CountZero => "zero",
        TiePolicy::CountHalf => "half",
    }
}

fn parse_weights(s: &str) -> Result<WeightVector, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 6 {
        return Err(format!("expected 6 comma-separated weights, got {}", parts.len()));
    }
    let mut values = [0.0f64; 6];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad weight '{}': {e}", part.trim()))?;
    }
    Ok(WeightVector::from_array(values))
}

fn weights_string(weights: &WeightVector) -> String {
    weights
        .as_array()
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_components(s: &str) -> Result<ComponentMask, String> {
    match s {
        "all" => return Ok(ComponentMask::ALL),
        "none" => return Ok(ComponentMask::NONE),
        _ => {}
    }
    let mut flags = [false; 6];
    for name in s.split(',') {
        let name = name.trim();
        let idx = COMPONENT_NAMES
            .iter()
            .position(|&c| c == name)
            .ok_or_else(|| {
                format!(
                    "unknown component '{name}' (expected one of: {})",
                    COMPONENT_NAMES.join(", ")
                )
            })?;
        flags[idx] = true;
    }
    Ok(ComponentMask::from_array(flags))
}

fn components_string(mask: ComponentMask) -> String {
    let flags = mask.as_array();
    if flags.iter().all(|&f| f) {
        return "all".into();
    }
    if flags.iter().all(|&f| !f) {
        return "none".into();
    }
    COMPONENT_NAMES
        .iter()
        .zip(flags)
        .filter(|&(_, enabled)| enabled)
        .map(|(name, _)| *name)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_current_year(s: &str) -> Result<Option<i32>, String> {
    if s == "auto" {
        return Ok(None);
    }
    s.parse::<i32>()
        .map(Some)
        .map_err(|e| format!("year must be an integer or 'auto': {e}"))
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err("expected 'true' or 'false'".into()),
    }
}

// ---- config file handling ----

/// Reads a `key = value` file. `#` starts a comment; blank lines are
/// skipped. Returned map is consumed key-by-key during merging so
/// leftovers can be reported as unknown keys.
fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    require_file(path)?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::usage(format!(
                "{} line {}: expected 'key = value', got '{line}'",
                path.display(),
                idx + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Flag value wins; otherwise the config-file value stands.
fn merge_path(
    flag: Option<PathBuf>,
    file: &mut BTreeMap<String, String>,
    key: &str,
) -> Option<PathBuf> {
    if let Some(path) = flag {
        file.remove(key);
        return Some(path);
    }
    file.remove(key).map(PathBuf::from)
}

/// Flag value wins; otherwise the config-file value is parsed;
/// otherwise the default stands.
fn merge_parsed<T>(
    flag: Option<&str>,
    file: &mut BTreeMap<String, String>,
    key: &str,
    parse: impl Fn(&str) -> Result<T, String>,
    default: T,
) -> Result<T, CliError> {
    if let Some(raw) = flag {
        file.remove(key);
        return parse(raw).map_err(|e| CliError::usage(format!("--{} '{raw}': {e}", key.replace('_', "-"))));
    }
    match file.remove(key) {
        Some(raw) => parse(&raw).map_err(|e| CliError::usage(format!("config {key} = '{raw}': {e}"))),
        None => Ok(default),
    }
}

fn require_file(path: &Path) -> Result<(), CliError> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "file not found: {}",
            path.display()
        )))
    }
}

// ---- run headers ----

fn emit_header(lines: &str, manifest: Option<&Path>) -> Result<(), CliError> {
    eprint!("{lines}");
    if let Some(path) = manifest {
        fs::write(path, lines)
            .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

// ---- subcommands ----

fn cmd_ingest(args: IngestArgs) -> Result<(), CliError> {
    require_file(&args.papers)?;
    require_file(&args.references)?;
    require_file(&args.affiliations)?;

    let mut header = String::new();
    let _ = writeln!(header, "command = ingest");
    let _ = writeln!(header, "papers = {}", args.papers.display());
    let _ = writeln!(header, "references = {}", args.references.display());
    let _ = writeln!(header, "affiliations = {}", args.affiliations.display());
    if let Some(cache) = &args.cache {
        let _ = writeln!(header, "cache = {}", cache.display());
    }
    emit_header(&header, args.manifest.as_deref())?;

    let (corpus, report) = ingest_corpus(&args.papers, &args.references, &args.affiliations)?;
    print!("{report}");
    let summary = corpus.summary();
    println!(
        "corpus: {} papers, {} citation edges, {} authors, {} venues, {} institutions",
        summary.num_papers,
        summary.num_edges,
        summary.num_authors,
        summary.num_venues,
        summary.num_institutions
    );

    if let Some(cache) = &args.cache {
        write_cache_file(&corpus, cache)?;
        eprintln!("wrote cache to {}", cache.display());
    }
    Ok(())
}

fn cmd_rank(args: RankArgs) -> Result<(), CliError> {
    let mut file = match &args.config {
        Some(path) => read_config_file(path)?,
        None => BTreeMap::new(),
    };

    // Run manifests start with `command = rank`, so a manifest can be
    // replayed directly as a config file.
    if let Some(value) = file.remove("command") {
        if value != "rank" {
            return Err(CliError::usage(format!(
                "config is for command '{value}', not 'rank'"
            )));
        }
    }

    let papers = merge_path(args.papers, &mut file, "papers");
    let references = merge_path(args.references, &mut file, "references");
    let affiliations = merge_path(args.affiliations, &mut file, "affiliations");
    let cache = merge_path(args.cache, &mut file, "cache");
    let out = merge_path(args.out, &mut file, "out")
        .ok_or_else(|| CliError::usage("--out is required"))?;

    let scoring_default = ScoringConfig::default();
    let pagerank_default = PageRankConfig::default();

    let weights = merge_parsed(
        args.weights.as_deref(),
        &mut file,
        "weights",
        parse_weights,
        WeightVector::default(),
    )?;
    let threshold = merge_parsed(
        args.threshold.map(|v| v.to_string()).as_deref(),
        &mut file,
        "threshold",
        |s| s.parse::<u32>().map_err(|e| e.to_string()),
        scoring_default.threshold,
    )?;
    let alpha = merge_parsed(
        args.alpha.map(|v| v.to_string()).as_deref(),
        &mut file,
        "alpha",
        |s| s.parse::<f64>().map_err(|e| e.to_string()),
        scoring_default.alpha,
    )?;
    let current_year = merge_parsed(
        args.current_year.as_deref(),
        &mut file,
        "current_year",
        parse_current_year,
        None,
    )?;
    let round = merge_parsed(
        args.round.as_deref(),
        &mut file,
        "round",
        parse_round,
        scoring_default.round,
    )?;
    let damping = merge_parsed(
        args.damping.map(|v| v.to_string()).as_deref(),
        &mut file,
        "damping",
        |s| s.parse::<f64>().map_err(|e| e.to_string()),
        pagerank_default.damping,
    )?;
    let pr_tolerance = merge_parsed(
        args.pr_tolerance.map(|v| v.to_string()).as_deref(),
        &mut file,
        "pr_tolerance",
        |s| s.parse::<f64>().map_err(|e| e.to_string()),
        pagerank_default.tolerance,
    )?;
    let pr_max_iters = merge_parsed(
        args.pr_max_iters.map(|v| v.to_string()).as_deref(),
        &mut file,
        "pr_max_iters",
        |s| s.parse::<u32>().map_err(|e| e.to_string()),
        pagerank_default.max_iterations,
    )?;
    let normalization = merge_parsed(
        args.normalization.as_deref(),
        &mut file,
        "normalization",
        parse_normalization,
        Normalization::None,
    )?;
    let components = merge_parsed(
        args.components.as_deref(),
        &mut file,
        "components",
        parse_components,
        ComponentMask::ALL,
    )?;
    let emit_components = if args.emit_components {
        file.remove("emit_components");
        true
    } else {
        merge_parsed(None, &mut file, "emit_components", parse_bool, false)?
    };
    let threads = merge_parsed(
        args.threads.map(|v| v.to_string()).as_deref(),
        &mut file,
        "threads",
        |s| s.parse::<usize>().map_err(|e| e.to_string()),
        0,
    )?;

    if let Some(key) = file.keys().next() {
        return Err(CliError::usage(format!(
            "unknown config key '{key}' in {}",
            args.config.as_deref().unwrap_or(Path::new("--config")).display()
        )));
    }

    let from_files = [&papers, &references, &affiliations];
    let any_tsv = from_files.iter().any(|p| p.is_some());
    let all_tsv = from_files.iter().all(|p| p.is_some());
    match (&cache, any_tsv) {
        (Some(_), true) => {
            return Err(CliError::usage(
                "--cache and --papers/--references/--affiliations are mutually exclusive",
            ))
        }
        (None, true) if !all_tsv => {
            return Err(CliError::usage(
                "all three of --papers, --references and --affiliations are required",
            ))
        }
        (None, false) => {
            return Err(CliError::usage(
                "provide --papers/--references/--affiliations or --cache",
            ))
        }
        _ => {}
    }
    if let Some(path) = &cache {
        require_file(path)?;
    }
    for path in from_files.into_iter().flatten() {
        require_file(path)?;
    }

    let scoring = ScoringConfig {
        threshold,
        alpha,
        current_year,
        round,
        ..ScoringConfig::default()
    };
    scoring.validate()?;
    let pagerank = PageRankConfig {
        damping,
        tolerance: pr_tolerance,
        max_iterations: pr_max_iters,
        ..PageRankConfig::default()
    };
    pagerank.validate()?;
    weights.validate()?;

    let mut header = String::new();
    let _ = writeln!(header, "command = rank");
    if let Some(p) = &papers {
        let _ = writeln!(header, "papers = {}", p.display());
    }
    if let Some(p) = &references {
        let _ = writeln!(header, "references = {}", p.display());
    }
    if let Some(p) = &affiliations {
        let _ = writeln!(header, "affiliations = {}", p.display());
    }
    if let Some(p) = &cache {
        let _ = writeln!(header, "cache = {}", p.display());
    }
    let _ = writeln!(header, "out = {}", out.display());
    let _ = writeln!(header, "weights = {}", weights_string(&weights));
    let _ = writeln!(header, "threshold = {threshold}");
    let _ = writeln!(header, "alpha = {alpha}");
    let _ = writeln!(
        header,
        "current_year = {}",
        current_year.map_or_else(|| "auto".to_string(), |y| y.to_string())
    );
    let _ = writeln!(header, "round = {}", round_name(round));
    let _ = writeln!(header, "damping = {damping}");
    let _ = writeln!(header, "pr_tolerance = {pr_tolerance}");
    let _ = writeln!(header, "pr_max_iters = {pr_max_iters}");
    let _ = writeln!(header, "normalization = {}", normalization_name(normalization));
    let _ = writeln!(header, "components = {}", components_string(components));
    let _ = writeln!(header, "emit_components = {emit_components}");
    let _ = writeln!(header, "threads = {threads}");
    emit_header(&header, args.manifest.as_deref())?;

    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::runtime(format!("thread pool: {e}")))?;
    }

    let corpus = match &cache {
        Some(path) => {
            let corpus = read_cache_file(path)?;
            eprintln!(
                "cache: {} papers, {} edges",
                corpus.num_papers(),
                corpus.graph().num_edges()
            );
            corpus
        }
        None => {
            let (corpus, report) = ingest_corpus(
                papers.as_deref().unwrap(),
                references.as_deref().unwrap(),
                affiliations.as_deref().unwrap(),
            )?;
            eprint!("{report}");
            corpus
        }
    };

    let output = run_ranking(&corpus, &scoring, &pagerank, &weights, normalization, components)?;

    if let Some(pr) = &output.pagerank {
        eprintln!(
            "pagerank: {} iterations, {}",
            pr.iterations_run,
            if pr.converged { "converged" } else { "iteration cap reached" }
        );
    }

    let file = File::create(&out).map_err(|e| CliError::runtime(format!("{}: {e}", out.display())))?;
    output.ranking.write_tsv(BufWriter::new(file))?;
    eprintln!("wrote ranking to {}", out.display());

    if emit_components {
        let path = components_output_path(&out);
        let file =
            File::create(&path).map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
        write_component_scores(
            BufWriter::new(file),
            &corpus,
            &output.ranking,
            &output.score_vectors,
        )
        .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
        eprintln!("wrote component scores to {}", path.display());
    }
    Ok(())
}

/// ranking.tsv -> ranking.components.tsv (sibling of --out).
fn components_output_path(out: &Path) -> PathBuf {
    out.with_extension("components.tsv")
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    require_file(&args.ranking)?;
    require_file(&args.judgements)?;
    let policy = parse_tie_policy(&args.tie_policy)
        .map_err(|e| CliError::usage(format!("--tie-policy '{}': {e}", args.tie_policy)))?;

    let mut header = String::new();
    let _ = writeln!(header, "command = evaluate");
    let _ = writeln!(header, "ranking = {}", args.ranking.display());
    let _ = writeln!(header, "judgements = {}", args.judgements.display());
    let _ = writeln!(header, "tie_policy = {}", tie_policy_name(policy));
    emit_header(&header, args.manifest.as_deref())?;

    let ranking = RankedList::read_tsv(BufReader::new(File::open(&args.ranking)?))?;
    let (judgements, report) = JudgementSet::read_tsv(BufReader::new(File::open(&args.judgements)?))?;
    if report.rejected > 0 {
        eprintln!(
            "judgements: rows_read={} accepted={} rejected={}",
            report.rows_read, report.accepted, report.rejected
        );
        for (line, reason) in &report.reject_samples {
            eprintln!("  rejected line {line}: {reason}");
        }
    }

    let agreement = pairwise_agreement(&ranking, &judgements, policy)?;
    println!("agreement: {:.6}", agreement.agreement);
    println!("resolvable: {}", agreement.resolvable);
    println!("unresolvable: {}", agreement.unresolvable);
    println!("satisfied: {}", agreement.satisfied);
    println!("tied: {}", agreement.tied);
    println!("violated: {}", agreement.violated);

    if let Some(path) = &args.pair_outcomes {
        let outcomes = pairwise_outcomes(&ranking, &judgements);
        let file =
            File::create(path).map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        for ((better, worse), outcome) in judgements.pairs().iter().zip(&outcomes) {
            writeln!(w, "{better}\t{worse}\t{}", outcome.label())
                .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
        }
        w.flush()
            .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
        eprintln!("wrote pair outcomes to {}", path.display());
    }
    Ok(())
}
