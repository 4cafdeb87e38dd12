//! `cryomram`: device characterization, switching, bitcell and array studies
//! of double-barrier MTJ STT-MRAM from the command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cryomram_core::arch::{self, bench, BenchDecks, Objective, SramCellDeck, TechnologyDeck};
use cryomram_core::bitcell::{
    analyze_bitcell, export_bitcell_deck, samples_csv, BitcellOptions, MramCellDeck, ReadPath, TransistorDeck,
    VariabilityDeck,
};
use cryomram_core::device::{self, characteristics_csv, sweep_csv, DeviceDeck, CharacteristicsRow};
use cryomram_core::switching::{wer_curve, SwitchingDevice, WerOptions};
use cryomram_core::{deck, Error, ErrorKind, ExecPolicy, Result};

#[derive(Parser, Debug)]
#[command(name = "cryomram", version, about = "Cryogenic double-barrier MTJ STT-MRAM studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Directory for result files and the run manifest (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Print failures as a JSON object on stderr
    #[arg(long, global = true)]
    error_json: bool,
    /// Run Monte Carlo and search loops on one thread
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Device characteristics per deck and temperature
    Characterize(CharacterizeArgs),
    /// Thermal stability and critical current versus diameter
    SweepDiameter(SweepArgs),
    /// Write error rate versus pulse width from Monte Carlo and the analytic tail
    Wer(WerArgs),
    /// Bitcell write/read Monte Carlo under process variation
    Bitcell(BitcellArgs),
    /// MRAM versus SRAM array estimates across capacities
    Bench(BenchArgs),
    /// Write the built-in decks as TOML into --out
    Decks,
}

#[derive(Args, Debug)]
struct CharacterizeArgs {
    /// Device deck (TOML); repeatable. Defaults to the built-in 40 nm and 13 nm decks
    #[arg(long)]
    deck: Vec<PathBuf>,
    /// Temperature in K; repeatable
    #[arg(long, default_values_t = [300.0, 77.0])]
    temp: Vec<f64>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Device deck (TOML). Defaults to the built-in 13 nm deck
    #[arg(long)]
    deck: Option<PathBuf>,
    /// Temperature in K; repeatable
    #[arg(long, default_values_t = [300.0, 77.0])]
    temp: Vec<f64>,
    #[arg(long, default_value_t = 5.0)]
    d_min_nm: f64,
    #[arg(long, default_value_t = 80.0)]
    d_max_nm: f64,
    #[arg(long, default_value_t = 76)]
    points: usize,
}

#[derive(Args, Debug)]
struct WerArgs {
    /// Device deck (TOML). Defaults to the built-in 13 nm deck
    #[arg(long)]
    deck: Option<PathBuf>,
    #[arg(long, default_value_t = 77.0)]
    temp: f64,
    /// Write current magnitude in uA
    #[arg(long, default_value_t = 20.0)]
    current_ua: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Longest simulated pulse in ns; defaults to just past the deepest WER the trials resolve
    #[arg(long)]
    t_max_ns: Option<f64>,
    #[arg(long, default_value_t = 40)]
    points: usize,
    /// Extend the curve down to this WER with the analytic tail
    #[arg(long, default_value_t = 1e-7)]
    floor: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReadPathArg {
    SourceLine,
    BitLine,
}

#[derive(Args, Debug)]
struct BitcellArgs {
    /// Device deck (TOML). Defaults to the built-in 40 nm deck
    #[arg(long)]
    deck: Option<PathBuf>,
    /// Access transistor deck (TOML)
    #[arg(long)]
    transistor: Option<PathBuf>,
    /// Process variability deck (TOML)
    #[arg(long)]
    variability: Option<PathBuf>,
    #[arg(long, default_value_t = 77.0)]
    temp: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Overrides the variability deck seed
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ReadPathArg::SourceLine)]
    read_path: ReadPathArg,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Technology deck (TOML). Defaults to the built-in deck for --temp
    #[arg(long)]
    tech: Option<PathBuf>,
    /// Built-in technology temperature, 300 or 77 K
    #[arg(long, default_value_t = 77.0)]
    temp: f64,
    /// 40 nm MRAM cell deck (TOML or JSON)
    #[arg(long)]
    mram40: Option<PathBuf>,
    /// 13 nm MRAM cell deck (TOML or JSON)
    #[arg(long)]
    mram13: Option<PathBuf>,
    /// SRAM baseline cell deck (TOML)
    #[arg(long)]
    sram: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    min_kb: u64,
    #[arg(long, default_value_t = 2048)]
    max_kb: u64,
    #[arg(long, default_value = "latency")]
    objective: Objective,
}

#[derive(Serialize)]
struct Manifest {
    command: String,
    args: Vec<String>,
    inputs: Vec<String>,
    seed: Option<u64>,
    out_dir: String,
    outputs: Vec<String>,
    tool_version: &'static str,
    timestamp: String,
}

/// Result files of one command, written under --out or to stdout.
struct Run {
    inputs: Vec<String>,
    seed: Option<u64>,
    files: Vec<(String, String)>,
}

impl Run {
    fn new() -> Self {
        Self { inputs: Vec::new(), seed: None, files: Vec::new() }
    }

    fn input(&mut self, p: &Option<PathBuf>) {
        if let Some(p) = p {
            self.inputs.push(p.display().to_string());
        }
    }

    fn file(&mut self, name: impl Into<String>, body: String) {
        self.files.push((name.into(), body));
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    kind: &'a str,
    exit_code: u8,
    message: String,
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Validation => 2,
        ErrorKind::Numerical => 3,
        ErrorKind::Io => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = exit_code(&e);
            if cli.error_json {
                let kind = match e.kind() {
                    ErrorKind::Validation => "validation",
                    ErrorKind::Numerical => "numerical",
                    ErrorKind::Io => "io",
                };
                let report = ErrorReport { kind, exit_code: code, message: e.to_string() };
                eprintln!("{}", serde_json::to_string(&report).unwrap_or_default());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let policy = if cli.sequential { ExecPolicy::Sequential } else { ExecPolicy::default() };
    let (name, out) = match &cli.command {
        Command::Characterize(a) => ("characterize", characterize(a, cli.format)?),
        Command::SweepDiameter(a) => ("sweep-diameter", sweep(a, cli.format)?),
        Command::Wer(a) => ("wer", wer(a, cli.format, policy)?),
        Command::Bitcell(a) => ("bitcell", bitcell(a, cli.format, policy)?),
        Command::Bench(a) => ("bench", bench_cmd(a, cli.format, policy)?),
        Command::Decks => {
            if cli.out.is_none() {
                return Err(Error::Validation("decks needs --out".into()));
            }
            ("decks", decks()?)
        }
    };
    emit(cli, name, out)
}

fn emit(cli: &Cli, name: &str, run: Run) -> Result<()> {
    let Some(dir) = &cli.out else {
        let mut stdout = std::io::stdout().lock();
        // only the primary result goes to stdout
        if let Some((_, body)) = run.files.first() {
            stdout.write_all(body.as_bytes())?;
        }
        return Ok(());
    };
    fs::create_dir_all(dir)?;
    for (file, body) in &run.files {
        fs::write(dir.join(file), body)?;
    }
    let manifest = Manifest {
        command: name.into(),
        args: std::env::args().skip(1).collect(),
        inputs: run.inputs,
        seed: run.seed,
        out_dir: dir.display().to_string(),
        outputs: run.files.iter().map(|(f, _)| f.clone()).collect(),
        tool_version: env!("CARGO_PKG_VERSION"),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    };
    fs::write(dir.join("manifest.json"), to_json(&manifest)? + "\n")?;
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Validation(format!("json: {e}")))
}

fn load<T: serde::de::DeserializeOwned>(p: &Path) -> Result<T> {
    if p.extension().is_some_and(|e| e == "json") {
        let text = fs::read_to_string(p)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: p.display().to_string(),
            message: e.to_string(),
        })
    } else {
        deck::load_toml(p)
    }
}

fn device_deck(p: &Option<PathBuf>, fallback: fn() -> DeviceDeck) -> Result<DeviceDeck> {
    let d = match p {
        Some(p) => load::<DeviceDeck>(p)?,
        None => fallback(),
    };
    d.validate()?;
    Ok(d)
}

fn characterize(a: &CharacterizeArgs, format: Format) -> Result<Run> {
    let mut run = Run::new();
    let decks = if a.deck.is_empty() {
        vec![device::dmtj40(), device::dmtj13()]
    } else {
        a.deck.iter().map(|p| device_deck(&Some(p.clone()), device::dmtj40)).collect::<Result<_>>()?
    };
    run.inputs = a.deck.iter().map(|p| p.display().to_string()).collect();
    let mut rows = Vec::new();
    for d in &decks {
        for &t in &a.temp {
            rows.push(CharacteristicsRow::new(d, &device::characterize(d, t)?));
        }
    }
    let body = match format {
        Format::Csv => characteristics_csv(&rows)?,
        Format::Json => to_json(&rows)? + "\n",
    };
    run.file(format!("characterize.{}", format.ext()), body);
    Ok(run)
}

fn sweep(a: &SweepArgs, format: Format) -> Result<Run> {
    let mut run = Run::new();
    run.input(&a.deck);
    let d = device_deck(&a.deck, device::dmtj13)?;
    if !(a.d_min_nm <= a.d_max_nm) || a.points == 0 {
        return Err(Error::Validation("diameter range must be ascending with at least one point".into()));
    }
    let n = if a.d_min_nm == a.d_max_nm { 1 } else { a.points.max(2) };
    let diameters: Vec<f64> = (0..n)
        .map(|k| {
            let f = if n == 1 { 0.0 } else { k as f64 / (n - 1) as f64 };
            (a.d_min_nm + f * (a.d_max_nm - a.d_min_nm)) * 1e-9
        })
        .collect();
    let pts = device::sweep_diameter(&d, &a.temp, &diameters)?;
    let body = match format {
        Format::Csv => sweep_csv(&pts)?,
        Format::Json => to_json(&pts)? + "\n",
    };
    run.file(format!("sweep_diameter.{}", format.ext()), body);
    Ok(run)
}

#[derive(Serialize)]
struct WerOutput<'a> {
    device: &'a str,
    temperature_k: f64,
    i_write_a: f64,
    seed: u64,
    t_p_at_floor_s: Option<f64>,
    curve: &'a cryomram_core::switching::WerCurve,
}

fn wer(a: &WerArgs, format: Format, policy: ExecPolicy) -> Result<Run> {
    let mut run = Run::new();
    run.input(&a.deck);
    run.seed = Some(a.seed);
    if a.trials == 0 {
        return Err(Error::Validation("trials must be at least 1".into()));
    }
    if a.points < 2 {
        return Err(Error::Validation("need at least two pulse widths".into()));
    }
    let d = device_deck(&a.deck, device::dmtj13)?;
    let dev = SwitchingDevice::from_deck(&d, a.temp)?;
    let i = a.current_ua * 1e-6;
    let opts = WerOptions { seed: a.seed, temperature_k: a.temp, policy, ..WerOptions::default() };
    let t_max = match a.t_max_ns {
        Some(t) if t > 0.0 => t * 1e-9,
        Some(t) => return Err(Error::Validation(format!("t_max_ns = {t} must be positive"))),
        None => {
            // deepest WER the trial count still resolves
            let resolvable = (opts.min_errors as f64 / a.trials as f64).min(0.5);
            let t = cryomram_core::switching::analytic_pulse(&dev, i, resolvable, opts.model, &opts.activation);
            if !t.is_finite() {
                return Err(Error::Saturation(format!("{i:e} A does not switch the device")));
            }
            1.5 * t
        }
    };
    let grid: Vec<f64> = (1..=a.points).map(|k| t_max * k as f64 / a.points as f64).collect();
    let (curve, set) = wer_curve(&dev, i, &grid, a.trials, a.floor, &opts)?;
    let body = match format {
        Format::Csv => curve.to_csv()?,
        Format::Json => {
            let o = WerOutput {
                device: &d.name,
                temperature_k: a.temp,
                i_write_a: i,
                seed: a.seed,
                t_p_at_floor_s: curve.pulse_at(a.floor),
                curve: &curve,
            };
            to_json(&o)? + "\n"
        }
    };
    run.file(format!("wer.{}", format.ext()), body);
    run.file("wer_samples.csv", cryomram_core::switching::samples_csv(&set)?);
    Ok(run)
}

fn bitcell(a: &BitcellArgs, format: Format, policy: ExecPolicy) -> Result<Run> {
    let mut run = Run::new();
    run.input(&a.deck);
    run.input(&a.transistor);
    run.input(&a.variability);
    let d = device_deck(&a.deck, device::dmtj40)?;
    let tr = match &a.transistor {
        Some(p) => load::<TransistorDeck>(p)?,
        None => TransistorDeck::tech65(),
    };
    tr.validate()?;
    let mut var = match &a.variability {
        Some(p) => load::<VariabilityDeck>(p)?,
        None => VariabilityDeck::default(),
    };
    if let Some(s) = a.seed {
        var.rng_seed = s;
    }
    var.validate()?;
    run.seed = Some(var.rng_seed);
    let opts = BitcellOptions {
        temperature_k: a.temp,
        trials: a.trials,
        variability: var,
        read_path: match a.read_path {
            ReadPathArg::SourceLine => ReadPath::SourceLine,
            ReadPathArg::BitLine => ReadPath::BitLine,
        },
        policy,
        ..BitcellOptions::default()
    };
    let (report, w, r) = analyze_bitcell(&d, &tr, &opts)?;
    let body = match format {
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(Vec::new());
            wr.serialize(&report).map_err(|e| Error::Validation(format!("csv: {e}")))?;
            String::from_utf8(wr.into_inner().map_err(|e| Error::Validation(format!("csv: {e}")))?)
                .map_err(|e| Error::Validation(e.to_string()))?
        }
        Format::Json => to_json(&report)? + "\n",
    };
    run.file(format!("bitcell.{}", format.ext()), body);
    run.file("bitcell_samples.csv", samples_csv(&w, &r)?);
    if !report.sense_failure {
        run.file("cell_deck.toml", deck::to_toml_string(&export_bitcell_deck(&report)?)?);
    }
    Ok(run)
}

fn bench_cmd(a: &BenchArgs, format: Format, policy: ExecPolicy) -> Result<Run> {
    let mut run = Run::new();
    for p in [&a.tech, &a.mram40, &a.mram13, &a.sram] {
        run.input(p);
    }
    let tech = match &a.tech {
        Some(p) => load::<TechnologyDeck>(p)?,
        None if (a.temp - 77.0).abs() < 0.5 => TechnologyDeck::tech65_77k(),
        None if (a.temp - 300.0).abs() < 0.5 => TechnologyDeck::tech65_300k(),
        None => {
            return Err(Error::Domain(format!("no built-in technology deck at {} K (77 or 300)", a.temp)));
        }
    };
    tech.validate()?;
    let cell = |p: &Option<PathBuf>, fallback: fn() -> MramCellDeck| -> Result<MramCellDeck> {
        let c = match p {
            Some(p) => load::<MramCellDeck>(p)?,
            None => fallback(),
        };
        c.validate()?;
        Ok(c)
    };
    let decks = BenchDecks {
        mram40: Some(cell(&a.mram40, MramCellDeck::published_40nm)?),
        mram13: Some(cell(&a.mram13, MramCellDeck::published_13nm)?),
        sram: Some(match &a.sram {
            Some(p) => load::<SramCellDeck>(p)?,
            None => SramCellDeck::default(),
        }),
    };
    let caps = bench::capacity_range(a.min_kb << 10, a.max_kb << 10)?;
    let table = arch::benchmark(&caps, &decks, &tech, a.objective, policy)?;
    let body = match format {
        Format::Csv => table.to_csv()?,
        Format::Json => to_json(&table)? + "\n",
    };
    run.file(format!("bench.{}", format.ext()), body);
    Ok(run)
}

fn decks() -> Result<Run> {
    let mut run = Run::new();
    run.file("dmtj40.toml", deck::to_toml_string(&device::dmtj40())?);
    run.file("dmtj13.toml", deck::to_toml_string(&device::dmtj13())?);
    run.file("transistor65.toml", deck::to_toml_string(&TransistorDeck::tech65())?);
    run.file("variability.toml", deck::to_toml_string(&VariabilityDeck::default())?);
    run.file("tech65_300K.toml", deck::to_toml_string(&TechnologyDeck::tech65_300k())?);
    run.file("tech65_77K.toml", deck::to_toml_string(&TechnologyDeck::tech65_77k())?);
    run.file("sram_baseline.toml", deck::to_toml_string(&SramCellDeck::default())?);
    run.file("mram40_cell.toml", deck::to_toml_string(&MramCellDeck::published_40nm())?);
    run.file("mram13_cell.toml", deck::to_toml_string(&MramCellDeck::published_13nm())?);
    Ok(run)
}
