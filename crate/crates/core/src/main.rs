//! Command-line front end: transcription, frequency analysis, convergence
//! diagnostics and historical-dataset comparison, with reproducible
//! machine-readable outputs.
//!
//! Exit codes: 0 success, 2 input error (unreadable or malformed files,
//! bad flags), 3 data error (content that cannot be analyzed).

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fonema::convergence::{
    delta_series, evaluate_fit, fit_power, stability_point, ConvergenceError, PowerFit,
    StabilityScope,
};
use fonema::harmonizer::{
    adjust_dataset, load_reference_tables, pearson, ExternalDataset, HarmonizedVector,
    TABLE2_DISPLAY_ORDER,
};
use fonema::report;
use fonema::tabulator::{
    average_tables, class_breakdown, gemination_from_table, manner_breakdown, ClassBreakdown,
    GeminationStats, MannerBreakdown, TabulatorError,
};
use fonema::transcriber::{TranscribeError, Transcription};
use fonema::{
    Budget, CountingMode, FrequencyTable, IntervocalicS, Lexicon, PhonemePercents, PhonemeToken,
    Transcriber, TranscriptionPolicy, UnknownWordPolicy,
};

#[derive(Parser)]
#[command(
    name = "fonema",
    about = "Italian phoneme transcription and frequency statistics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transcribe text corpora into phoneme streams.
    Transcribe(TranscribeCmd),
    /// Frequency tables, gemination statistics and class/manner breakdowns.
    Analyze(AnalyzeCmd),
    /// Convergence deltas, power fits and stability points.
    Converge(ConvergeCmd),
    /// Harmonize historical datasets and compute correlations.
    Compare(CompareCmd),
    /// Emit the machine-readable phoneme inventory.
    Inventory(InventoryCmd),
}

#[derive(Clone, Copy, Debug)]
struct BudgetArg(Budget);

impl FromStr for BudgetArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(BudgetArg(Budget::All));
        }
        s.parse::<u64>()
            .map(|n| BudgetArg(Budget::Units(n)))
            .map_err(|_| format!("expected a number of expanded phoneme units or `all`, got `{s}`"))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SArg {
    Voiceless,
    Voiced,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnknownArg {
    Rules,
    Error,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Expanded,
    Tokenwise,
}

impl From<ModeArg> for CountingMode {
    fn from(m: ModeArg) -> CountingMode {
        match m {
            ModeArg::Expanded => CountingMode::Expanded,
            ModeArg::Tokenwise => CountingMode::TokenWise,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

/// Corpus ingestion options shared by the analysis commands.
#[derive(Args)]
struct InputArgs {
    /// UTF-8 plain-text corpus files to transcribe.
    #[arg(long = "corpus", value_name = "PATH", num_args = 1..)]
    corpus: Vec<PathBuf>,
    /// Already-transcribed phoneme streams (wire format).
    #[arg(long = "transcription", value_name = "PATH", num_args = 1..)]
    transcription: Vec<PathBuf>,
    /// Lexicon files; later files override earlier ones (the bundled
    /// starter lexicon is always loaded first).
    #[arg(long = "lexicon", value_name = "PATH", num_args = 1..)]
    lexicon: Vec<PathBuf>,
    /// Phoneme budget in expanded units, or `all`.
    #[arg(long, default_value = "6000")]
    budget: BudgetArg,
    /// Intervocalic s policy.
    #[arg(long = "intervocalic-s", value_enum, default_value = "voiceless")]
    intervocalic_s: SArg,
    /// Unknown-word policy.
    #[arg(long = "unknown-word", value_enum, default_value = "rules")]
    unknown_word: UnknownArg,
}

#[derive(Args)]
struct TranscribeCmd {
    #[command(flatten)]
    input: InputArgs,
    /// Output directory for .arp streams and the summary.
    #[arg(long, default_value = "fonema_out")]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeCmd {
    #[command(flatten)]
    input: InputArgs,
    /// Counting mode of the main frequency table.
    #[arg(long, value_enum, default_value = "expanded")]
    mode: ModeArg,
    /// Report format written to --out.
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long, default_value = "fonema_out")]
    out: PathBuf,
}

#[derive(Args)]
struct ConvergeCmd {
    #[command(flatten)]
    input: InputArgs,
    /// Increment size in expanded phoneme units.
    #[arg(long, default_value_t = 250)]
    increment: u64,
    /// Category scheme tracked by the delta series.
    #[arg(long, value_enum, default_value = "tokenwise")]
    mode: ModeArg,
    /// Extra stability thresholds (percent) besides 0.25 and 0.025.
    #[arg(long = "threshold", value_name = "PCT")]
    thresholds: Vec<f64>,
    #[arg(long, default_value = "fonema_out")]
    out: PathBuf,
}

#[derive(Args)]
struct CompareCmd {
    /// Datasets: the embedded names `zipf` / `busa`, or paths to dataset
    /// files. Defaults to both embedded datasets.
    #[arg(long = "dataset", value_name = "NAME|PATH", num_args = 1..)]
    datasets: Vec<String>,
    /// Compute the current-study column from corpora instead of using the
    /// embedded averages.
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "fonema_out")]
    out: PathBuf,
}

#[derive(Args)]
struct InventoryCmd {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

enum AppError {
    Input(String),
    Data(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Input(_) => 2,
            AppError::Data(_) => 3,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Input(m) => write!(f, "input error: {m}"),
            AppError::Data(m) => write!(f, "data error: {m}"),
        }
    }
}

impl From<TranscribeError> for AppError {
    fn from(e: TranscribeError) -> Self {
        match e {
            TranscribeError::WireParse { .. } => AppError::Input(e.to_string()),
            other => AppError::Data(other.to_string()),
        }
    }
}

impl From<TabulatorError> for AppError {
    fn from(e: TabulatorError) -> Self {
        AppError::Data(e.to_string())
    }
}

impl From<ConvergenceError> for AppError {
    fn from(e: ConvergenceError) -> Self {
        AppError::Data(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, AppError> {
    fs::read_to_string(path)
        .map_err(|e| AppError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, AppError> {
    fs::create_dir_all(dir)
        .map_err(|e| AppError::Input(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| AppError::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn stem_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string())
}

fn build_transcriber(input: &InputArgs) -> Result<Transcriber, AppError> {
    let policy = TranscriptionPolicy {
        intervocalic_s: match input.intervocalic_s {
            SArg::Voiceless => IntervocalicS::Voiceless,
            SArg::Voiced => IntervocalicS::Voiced,
        },
        unknown_word: match input.unknown_word {
            UnknownArg::Rules => UnknownWordPolicy::RulesOnly,
            UnknownArg::Error => UnknownWordPolicy::Error,
        },
    };
    let mut lexicon = Lexicon::bundled();
    for path in &input.lexicon {
        let text = read_file(path)?;
        lexicon
            .extend_from_str(&path.display().to_string(), &text)
            .map_err(|e| AppError::Input(e.to_string()))?;
    }
    Ok(Transcriber::new(lexicon, policy))
}

/// A named phoneme stream from either transcribing a corpus or reading a
/// wire file.
struct NamedSource {
    name: String,
    transcription: Transcription,
}

impl NamedSource {
    fn tokens(&self) -> Vec<PhonemeToken> {
        self.transcription.tokens()
    }
}

/// Transcribe corpora concurrently (the transcriber is immutable);
/// results are collected in input order so runs stay deterministic.
fn transcribe_corpora(
    transcriber: &Transcriber,
    paths: &[PathBuf],
    budget: Budget,
) -> Result<Vec<NamedSource>, AppError> {
    let texts: Vec<(String, String)> = paths
        .iter()
        .map(|p| Ok((stem_of(p), read_file(p)?)))
        .collect::<Result<_, AppError>>()?;
    let results: Vec<Result<NamedSource, TranscribeError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = texts
            .iter()
            .map(|(name, text)| {
                scope.spawn(move || {
                    transcriber
                        .transcribe_corpus(text, budget)
                        .map(|transcription| NamedSource {
                            name: name.clone(),
                            transcription,
                        })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("transcription worker panicked"))
            .collect()
    });
    results
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(AppError::from)
}

fn load_sources(input: &InputArgs) -> Result<Vec<NamedSource>, AppError> {
    let mut sources = Vec::new();
    if !input.corpus.is_empty() {
        let transcriber = build_transcriber(input)?;
        sources.extend(transcribe_corpora(
            &transcriber,
            &input.corpus,
            input.budget.0,
        )?);
    }
    for path in &input.transcription {
        let text = read_file(path)?;
        let transcription = Transcription::parse_wire(&text)?;
        sources.push(NamedSource {
            name: stem_of(path),
            transcription,
        });
    }
    if sources.is_empty() {
        return Err(AppError::Input(
            "no inputs: pass --corpus and/or --transcription".to_string(),
        ));
    }
    Ok(sources)
}

#[derive(Serialize)]
struct TranscribeSummary {
    corpus: String,
    output: String,
    words: usize,
    tokens: u64,
    expanded_phonemes: u64,
}

fn cmd_transcribe(cmd: &TranscribeCmd) -> Result<(), AppError> {
    if cmd.input.corpus.is_empty() {
        return Err(AppError::Input("pass at least one --corpus".to_string()));
    }
    let transcriber = build_transcriber(&cmd.input)?;
    let sources = transcribe_corpora(&transcriber, &cmd.input.corpus, cmd.input.budget.0)?;
    let mut summaries = Vec::new();
    for (path, source) in cmd.input.corpus.iter().zip(sources) {
        let out_path = write_file(
            &cmd.out,
            &format!("{}.arp", source.name),
            &source.transcription.to_wire(),
        )?;
        summaries.push(TranscribeSummary {
            corpus: path.display().to_string(),
            output: out_path.display().to_string(),
            words: source.transcription.word_count(),
            tokens: source.transcription.token_count(),
            expanded_phonemes: source.transcription.expanded_count(),
        });
    }
    let json = serde_json::to_string_pretty(&summaries).expect("serializable");
    write_file(&cmd.out, "transcribe_summary.json", &json)?;
    for s in &summaries {
        println!(
            "{}: words={} tokens={} expanded={} -> {}",
            s.corpus, s.words, s.tokens, s.expanded_phonemes, s.output
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct FrequencyEntry {
    phoneme: String,
    percent: f64,
}

#[derive(Serialize)]
struct GeminationJson {
    phoneme: String,
    independent_percent: f64,
    geminated_percent: f64,
    gemination_rate_percent: Option<f64>,
}

#[derive(Serialize)]
struct BreakdownJson {
    class: ClassJson,
    manner: MannerJson,
}

#[derive(Serialize)]
struct ClassJson {
    vowel: f64,
    glide: f64,
    consonant: f64,
}

#[derive(Serialize)]
struct MannerJson {
    stop: f64,
    fricative: f64,
    affricate: f64,
    nasal: f64,
    liquid: f64,
}

#[derive(Serialize)]
struct SourceAnalysisJson {
    name: String,
    words: usize,
    tokens: u64,
    expanded_phonemes: u64,
    frequencies: Vec<FrequencyEntry>,
    gemination: Vec<GeminationJson>,
    breakdowns: BreakdownJson,
}

#[derive(Serialize)]
struct AnalysisJson {
    mode: String,
    sources: Vec<SourceAnalysisJson>,
    average: Option<AverageJson>,
}

#[derive(Serialize)]
struct AverageJson {
    frequencies: Vec<FrequencyEntry>,
    gemination: Vec<GeminationJson>,
    breakdowns: BreakdownJson,
}

fn frequency_entries(table: &FrequencyTable) -> Vec<FrequencyEntry> {
    let cats = fonema::tabulator::categories(table.mode);
    let mut idx: Vec<usize> = (0..table.frequencies.len()).collect();
    idx.sort_by(|&a, &b| {
        table.frequencies[b]
            .partial_cmp(&table.frequencies[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    idx.into_iter()
        .map(|i| FrequencyEntry {
            phoneme: cats[i].label().to_string(),
            percent: round2(table.frequencies[i] * 100.0),
        })
        .collect()
}

fn gemination_entries(stats: &GeminationStats) -> Vec<GeminationJson> {
    stats
        .entries
        .iter()
        .map(|e| GeminationJson {
            phoneme: e.phoneme.arpabet().to_string(),
            independent_percent: round2(e.independent_freq * 100.0),
            geminated_percent: round2(e.geminated_freq * 100.0),
            gemination_rate_percent: e.rate.map(|r| round2(r * 100.0)),
        })
        .collect()
}

fn breakdown_json(class: &ClassBreakdown, manner: &MannerBreakdown) -> BreakdownJson {
    BreakdownJson {
        class: ClassJson {
            vowel: round2(class.vowel * 100.0),
            glide: round2(class.glide * 100.0),
            consonant: round2(class.consonant * 100.0),
        },
        manner: MannerJson {
            stop: round2(manner.stop * 100.0),
            fricative: round2(manner.fricative * 100.0),
            affricate: round2(manner.affricate * 100.0),
            nasal: round2(manner.nasal * 100.0),
            liquid: round2(manner.liquid * 100.0),
        },
    }
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

fn cmd_analyze(cmd: &AnalyzeCmd) -> Result<(), AppError> {
    let sources = load_sources(&cmd.input)?;
    let main_mode: CountingMode = cmd.mode.into();

    let mut names = Vec::new();
    let mut main_tables = Vec::new();
    let mut expanded_tables = Vec::new();
    let mut tokenwise_tables = Vec::new();
    for source in &sources {
        let tokens = source.tokens();
        names.push(source.name.clone());
        main_tables.push(FrequencyTable::from_tokens(&tokens, main_mode)?);
        expanded_tables.push(FrequencyTable::from_tokens(&tokens, CountingMode::Expanded)?);
        tokenwise_tables.push(FrequencyTable::from_tokens(&tokens, CountingMode::TokenWise)?);
    }
    let several = sources.len() > 1;
    let main_avg = several.then(|| average_tables(&main_tables)).transpose()?;
    let expanded_avg = several.then(|| average_tables(&expanded_tables)).transpose()?;
    let tokenwise_avg = several.then(|| average_tables(&tokenwise_tables)).transpose()?;

    let main_refs: Vec<&FrequencyTable> = main_tables.iter().collect();
    let freq_csv = report::frequency_csv(&names, &main_refs, main_avg.as_ref());
    let mut outputs = vec![(
        format!("frequency_{}.csv", main_mode.name()),
        freq_csv,
    )];

    for (name, table) in names.iter().zip(tokenwise_tables.iter()) {
        let stats = gemination_from_table(table)?;
        outputs.push((format!("gemination_{name}.csv"), report::gemination_csv(&stats)));
    }
    if let Some(avg_tw) = &tokenwise_avg {
        let stats = gemination_from_table(avg_tw)?;
        outputs.push(("gemination_average.csv".to_string(), report::gemination_csv(&stats)));
    }

    let classes: Vec<ClassBreakdown> = expanded_tables
        .iter()
        .map(class_breakdown)
        .collect::<Result<_, _>>()?;
    let manners: Vec<MannerBreakdown> = expanded_tables
        .iter()
        .map(manner_breakdown)
        .collect::<Result<_, _>>()?;
    let class_avg = expanded_avg.as_ref().map(class_breakdown).transpose()?;
    let manner_avg = expanded_avg.as_ref().map(manner_breakdown).transpose()?;
    let pct_classes: Vec<ClassBreakdown> = classes
        .iter()
        .map(|c| ClassBreakdown {
            vowel: c.vowel * 100.0,
            glide: c.glide * 100.0,
            consonant: c.consonant * 100.0,
        })
        .collect();
    let pct_class_avg = class_avg.map(|c| ClassBreakdown {
        vowel: c.vowel * 100.0,
        glide: c.glide * 100.0,
        consonant: c.consonant * 100.0,
    });
    let pct_manners: Vec<MannerBreakdown> = manners
        .iter()
        .map(|m| MannerBreakdown {
            stop: m.stop * 100.0,
            fricative: m.fricative * 100.0,
            affricate: m.affricate * 100.0,
            nasal: m.nasal * 100.0,
            liquid: m.liquid * 100.0,
        })
        .collect();
    let pct_manner_avg = manner_avg.map(|m| MannerBreakdown {
        stop: m.stop * 100.0,
        fricative: m.fricative * 100.0,
        affricate: m.affricate * 100.0,
        nasal: m.nasal * 100.0,
        liquid: m.liquid * 100.0,
    });
    outputs.push((
        "class.csv".to_string(),
        report::class_csv(&names, &pct_classes, pct_class_avg.as_ref()),
    ));
    outputs.push((
        "manner.csv".to_string(),
        report::manner_csv(&names, &pct_manners, pct_manner_avg.as_ref()),
    ));

    // The JSON report carries everything regardless of --format csv.
    let mut source_jsons = Vec::new();
    for (i, source) in sources.iter().enumerate() {
        let stats = gemination_from_table(&tokenwise_tables[i])?;
        source_jsons.push(SourceAnalysisJson {
            name: source.name.clone(),
            words: source.transcription.word_count(),
            tokens: source.transcription.token_count(),
            expanded_phonemes: source.transcription.expanded_count(),
            frequencies: frequency_entries(&main_tables[i]),
            gemination: gemination_entries(&stats),
            breakdowns: breakdown_json(&classes[i], &manners[i]),
        });
    }
    let average_json = match (&main_avg, &tokenwise_avg, &expanded_avg) {
        (Some(main), Some(tw), Some(exp)) => Some(AverageJson {
            frequencies: frequency_entries(main),
            gemination: gemination_entries(&gemination_from_table(tw)?),
            breakdowns: breakdown_json(&class_breakdown(exp)?, &manner_breakdown(exp)?),
        }),
        _ => None,
    };
    let analysis = AnalysisJson {
        mode: main_mode.name().to_string(),
        sources: source_jsons,
        average: average_json,
    };
    outputs.push((
        "analysis.json".to_string(),
        serde_json::to_string_pretty(&analysis).expect("serializable"),
    ));

    let only_json = matches!(cmd.format, FormatArg::Json);
    for (name, contents) in &outputs {
        if only_json && name.ends_with(".csv") {
            continue;
        }
        write_file(&cmd.out, name, contents)?;
    }
    println!(
        "analyzed {} source(s); reports in {}",
        sources.len(),
        cmd.out.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct StabilityJson {
    threshold_percent: f64,
    scope: String,
    stable_from: Option<u64>,
}

#[derive(Serialize)]
struct ConvergeJson {
    source: String,
    increment: u64,
    mode: String,
    expanded_phonemes: u64,
    fit: PowerFit,
    fitted_at_end: f64,
    stability: Vec<StabilityJson>,
}

fn cmd_converge(cmd: &ConvergeCmd) -> Result<(), AppError> {
    let sources = load_sources(&cmd.input)?;
    let mode: CountingMode = cmd.mode.into();
    let mut thresholds = vec![0.25, 0.025];
    thresholds.extend(cmd.thresholds.iter().copied());

    let mut reports = Vec::new();
    for source in &sources {
        let tokens = source.tokens();
        let series = delta_series(&tokens, cmd.increment, mode)?;
        let fit = fit_power(&series.average_xy())?;
        write_file(
            &cmd.out,
            &format!("converge_{}_deltas.csv", source.name),
            &report::delta_plot_csv(&series),
        )?;
        write_file(
            &cmd.out,
            &format!("converge_{}_average.csv", source.name),
            &report::average_plot_csv(&series, Some(&fit)),
        )?;
        let mut stability = Vec::new();
        for &t in &thresholds {
            for (scope, name) in [
                (StabilityScope::AllCategories, "all_categories"),
                (StabilityScope::Average, "average"),
            ] {
                stability.push(StabilityJson {
                    threshold_percent: t,
                    scope: name.to_string(),
                    stable_from: stability_point(&series, t, scope),
                });
            }
        }
        let end_x = series.average_points.last().map(|p| p.x).unwrap_or(0);
        reports.push(ConvergeJson {
            source: source.name.clone(),
            increment: cmd.increment,
            mode: mode.name().to_string(),
            expanded_phonemes: tokens.iter().map(|t| t.expanded_units()).sum(),
            fit,
            fitted_at_end: evaluate_fit(&fit, end_x as f64),
            stability,
        });
    }
    write_file(
        &cmd.out,
        "fits.json",
        &serde_json::to_string_pretty(&reports).expect("serializable"),
    )?;
    for r in &reports {
        println!(
            "{}: y = {:.4}·x^{:.4}  (r2 {:.4}, reliable {})",
            r.source, r.fit.a, r.fit.b, r.fit.r2, r.fit.reliable
        );
        for s in &r.stability {
            println!(
                "  stable below {}pp ({}) from: {}",
                s.threshold_percent,
                s.scope,
                s.stable_from
                    .map(|x| x.to_string())
                    .unwrap_or_else(|| "never".to_string())
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DeviationJson {
    dataset: String,
    phoneme: String,
    computed: f64,
    published: f64,
    deviation: f64,
    beyond_tolerance: bool,
}

fn cmd_compare(cmd: &CompareCmd) -> Result<(), AppError> {
    let tables = load_reference_tables().map_err(|e| AppError::Data(e.to_string()))?;

    // Current-study column: computed from corpora when given, embedded
    // averages otherwise.
    let current: PhonemePercents = if cmd.input.corpus.is_empty()
        && cmd.input.transcription.is_empty()
    {
        tables.table2.average
    } else {
        let sources = load_sources(&cmd.input)?;
        let per_source: Vec<FrequencyTable> = sources
            .iter()
            .map(|s| FrequencyTable::from_tokens(&s.tokens(), CountingMode::Expanded))
            .collect::<Result<_, _>>()?;
        let avg = average_tables(&per_source)?;
        avg.expanded_percents()?
    };

    let dataset_names: Vec<String> = if cmd.datasets.is_empty() {
        vec!["zipf".to_string(), "busa".to_string()]
    } else {
        cmd.datasets.clone()
    };

    let mut adjusted: Vec<HarmonizedVector> = Vec::new();
    for spec in &dataset_names {
        let ds: ExternalDataset = match spec.as_str() {
            "zipf" => tables.zipf_raw.clone(),
            "busa" => tables.busa_raw.clone(),
            path => {
                let text = read_file(Path::new(path))?;
                ExternalDataset::parse(&stem_of(Path::new(path)), &text)
                    .map_err(|e| AppError::Input(e.to_string()))?
            }
        };
        adjusted.push(adjust_dataset(&ds).map_err(|e| AppError::Data(e.to_string()))?);
    }

    // Comparison table.
    let columns: Vec<(String, PhonemePercents)> = adjusted
        .iter()
        .map(|h| (h.name.clone(), h.percents))
        .collect();
    write_file(
        &cmd.out,
        "comparison.csv",
        &report::comparison_csv(&current, &columns, &TABLE2_DISPLAY_ORDER),
    )?;

    // Deviations against the published adjusted columns, where they exist.
    let mut deviations: Vec<DeviationJson> = Vec::new();
    for h in &adjusted {
        let (published, tolerance) = match h.name.as_str() {
            "zipf" => (&tables.table8.zipf, 0.05),
            "busa" => (&tables.table8.busa, 0.10),
            _ => continue,
        };
        for p in fonema::Phoneme::ALL {
            let computed = h.percents.get(p);
            let published_v = published.get(p);
            let deviation = (computed - published_v).abs();
            deviations.push(DeviationJson {
                dataset: h.name.clone(),
                phoneme: p.arpabet().to_string(),
                computed: round4(computed),
                published: published_v,
                deviation: round4(deviation),
                beyond_tolerance: deviation > tolerance,
            });
        }
    }
    write_file(
        &cmd.out,
        "deviations.json",
        &serde_json::to_string_pretty(&deviations).expect("serializable"),
    )?;

    // Full Pearson matrix over current + adjusted columns.
    let mut labels = vec!["current".to_string()];
    let mut vectors: Vec<Vec<f64>> = vec![current.values().to_vec()];
    for h in &adjusted {
        labels.push(h.name.clone());
        vectors.push(h.percents.values().to_vec());
    }
    let n = vectors.len();
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            matrix[i][j] = if i == j {
                1.0
            } else {
                round4(
                    pearson(&vectors[i], &vectors[j])
                        .map_err(|e| AppError::Data(e.to_string()))?,
                )
            };
        }
    }
    let corr = report::CorrelationMatrix {
        labels: labels.clone(),
        matrix: matrix.clone(),
    };
    write_file(&cmd.out, "correlations.json", &report::correlation_json(&corr))?;

    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate() {
            if i < j {
                println!("pearson({a}, {b}) = {:.3}", matrix[i][j]);
            }
        }
    }
    let flagged: Vec<&DeviationJson> =
        deviations.iter().filter(|d| d.beyond_tolerance).collect();
    if flagged.is_empty() {
        println!("all computed columns within tolerance of the published table");
    } else {
        for d in flagged {
            println!(
                "DEVIATION {} {}: computed {:.2} vs published {:.2}",
                d.dataset, d.phoneme, d.computed, d.published
            );
        }
    }
    Ok(())
}

fn round4(v: f64) -> f64 {
    (v * 10000.0).round() / 10000.0
}

fn cmd_inventory(cmd: &InventoryCmd) {
    match cmd.format {
        FormatArg::Csv => print!("{}", report::inventory_csv()),
        FormatArg::Json => println!("{}", report::inventory_json()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Transcribe(cmd) => cmd_transcribe(cmd),
        Command::Analyze(cmd) => cmd_analyze(cmd),
        Command::Converge(cmd) => cmd_converge(cmd),
        Command::Compare(cmd) => cmd_compare(cmd),
        Command::Inventory(cmd) => {
            cmd_inventory(cmd);
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
