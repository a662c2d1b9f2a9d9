use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tstego_core::{capacity, embed, extract, MetricsReport, PeakMode, StegoKey};

use crate::bench::{
    self, parse_dims, BenchConfig, DEFAULT_DIMS, DEFAULT_DIMS_PAYLOAD, DEFAULT_PAYLOADS,
};
use crate::error::{CliError, Result};
use crate::imageio::{read_image, write_image, FileFormat};
use crate::report::{embed_report_lines, metrics_csv};

/// Hide encrypted data in the blue channel of RGB images.
#[derive(Debug, Parser)]
#[command(name = "tstego", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embed a file into a cover image.
    Embed(EmbedArgs),
    /// Recover the hidden file from a stego image.
    Extract(ExtractArgs),
    /// Compare a cover and stego image (MSE, RMSE, PSNR, NCC, histogram deltas).
    Analyze(AnalyzeArgs),
    /// Run the image, payload and dimension experiments over a corpus.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct KeyArg {
    /// Secret key. Falls back to the STEGO_KEY environment variable.
    #[arg(long, env = "STEGO_KEY", hide_env_values = true)]
    pub key: Option<String>,
}

impl KeyArg {
    pub fn resolve(&self) -> Result<StegoKey> {
        let raw = self.key.clone().unwrap_or_default();
        StegoKey::new(raw.into_bytes()).map_err(|_| CliError::EmptyKey)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum CmaxMode {
    /// Peak is the largest sample in either image.
    #[default]
    Paper,
    /// Peak is 255.
    Fixed255,
}

impl From<CmaxMode> for PeakMode {
    fn from(m: CmaxMode) -> Self {
        match m {
            CmaxMode::Paper => PeakMode::ImageMax,
            CmaxMode::Fixed255 => PeakMode::Fixed255,
        }
    }
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Cover image (PNG or PPM).
    #[arg(long)]
    pub cover: PathBuf,
    /// File to hide.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Stego image to write (.png or .ppm).
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub key: KeyArg,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(long)]
    pub stego: PathBuf,
    /// Where to write the recovered bytes; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub key: KeyArg,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub cover: PathBuf,
    #[arg(long)]
    pub stego: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub cmax: CmaxMode,
    /// Also write the CSV to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of .png / .ppm cover images.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Directory for images.csv, payload_sweep.csv and dimension_sweep.csv.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub cmax: CmaxMode,
    /// Payload sizes for the sweep; the largest is also used per image.
    #[arg(long = "payload-bytes")]
    pub payload_bytes: Vec<usize>,
    /// Dimensions (WxH) for the dimension sweep.
    #[arg(long, value_parser = parse_dims)]
    pub dims: Vec<(usize, usize)>,
    /// Payload for the dimension sweep.
    #[arg(long = "dims-payload-bytes", default_value_t = DEFAULT_DIMS_PAYLOAD)]
    pub dims_payload_bytes: usize,
    /// Corpus file used for both sweeps; defaults to the first by name.
    #[arg(long = "sweep-image")]
    pub sweep_image: Option<String>,
    /// Record wall-clock time per row (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
    /// Secret key; defaults to a fixed bench key when neither this nor STEGO_KEY is set.
    #[arg(long, env = "STEGO_KEY", hide_env_values = true)]
    pub key: Option<String>,
}

pub const DEFAULT_BENCH_KEY: &str = "tstego-bench";

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Embed(args) => cmd_embed(&args),
        Command::Extract(args) => cmd_extract(&args),
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Bench(args) => cmd_bench(&args),
    }
}

pub fn cmd_embed(args: &EmbedArgs) -> Result<()> {
    let key = args.key.resolve()?;
    FileFormat::from_path(&args.out)?;
    let cover = read_image(&args.cover)?;
    let message = fs::read(&args.input).map_err(|e| CliError::io(&args.input, e))?;
    let (stego, report) = embed(&cover, &key, &message)?;
    write_image(&args.out, &stego)?;
    print!("{}", embed_report_lines(&report, capacity(&cover)));
    Ok(())
}

pub fn cmd_extract(args: &ExtractArgs) -> Result<()> {
    let key = args.key.resolve()?;
    let stego = read_image(&args.stego)?;
    let message = extract(&stego, &key)?;
    match &args.out {
        Some(path) => fs::write(path, &message).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&message)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<()> {
    let cover = read_image(&args.cover)?;
    let stego = read_image(&args.stego)?;
    let report = MetricsReport::compute(&cover, &stego, args.cmax.into())?;
    let csv = metrics_csv(&report);
    if let Some(path) = &args.out {
        fs::write(path, &csv).map_err(|e| CliError::io(path, e))?;
    }
    print!("{csv}");
    Ok(())
}

pub fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let key = args
        .key
        .clone()
        .unwrap_or_else(|| DEFAULT_BENCH_KEY.to_owned());
    let cfg = BenchConfig {
        corpus: args.corpus.clone(),
        out_dir: args.out.clone(),
        key: StegoKey::new(key.into_bytes()).map_err(|_| CliError::EmptyKey)?,
        seed: args.seed,
        peak: args.cmax.into(),
        payloads: if args.payload_bytes.is_empty() {
            DEFAULT_PAYLOADS.to_vec()
        } else {
            args.payload_bytes.clone()
        },
        dims: if args.dims.is_empty() {
            DEFAULT_DIMS.to_vec()
        } else {
            args.dims.clone()
        },
        dims_payload: args.dims_payload_bytes,
        sweep_image: args.sweep_image.clone(),
        timing: args.timing,
    };
    for path in bench::run(&cfg)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
