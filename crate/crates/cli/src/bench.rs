//! Experiment runner for the `bench` subcommand.
//!
//! Three experiment shapes, each written to its own CSV:
//! - `images.csv`: every corpus image with the same payload;
//! - `payload_sweep.csv`: one image, several payload sizes;
//! - `dimension_sweep.csv`: one image resized to several dimensions, fixed payload.
//!
//! Payloads are random bytes from a ChaCha8 stream keyed by the seed and
//! the row's position, so output is byte-identical across runs and thread
//! counts. Timing is the only nondeterministic field and is off unless
//! requested.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use image::imageops::{self, FilterType};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tstego_core::{capacity_bytes, embed, MetricsReport, PeakMode, RgbImage, StegoKey};

use crate::error::{CliError, Result};
use crate::imageio::{from_image_buffer, read_image, to_image_buffer};
use crate::report::fmt_metric;

pub const DEFAULT_PAYLOADS: [usize; 4] = [2406, 4177, 6499, 8192];
pub const DEFAULT_DIMS: [(usize, usize); 4] = [(128, 128), (256, 256), (512, 512), (1024, 1024)];
/// 1720 bits.
pub const DEFAULT_DIMS_PAYLOAD: usize = 215;

pub const CSV_COLUMNS: [&str; 10] = [
    "image_name",
    "width",
    "height",
    "payload_bytes",
    "mse",
    "rmse",
    "psnr_db",
    "ncc",
    "hist_delta_b",
    "elapsed_ms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Experiment {
    Images = 0,
    PayloadSweep = 1,
    DimensionSweep = 2,
}

impl Experiment {
    fn name(self) -> &'static str {
        match self {
            Experiment::Images => "images",
            Experiment::PayloadSweep => "payload_sweep",
            Experiment::DimensionSweep => "dimension_sweep",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub corpus: PathBuf,
    pub out_dir: PathBuf,
    pub key: StegoKey,
    pub seed: u64,
    pub peak: PeakMode,
    pub payloads: Vec<usize>,
    pub dims: Vec<(usize, usize)>,
    pub dims_payload: usize,
    pub sweep_image: Option<String>,
    pub timing: bool,
}

/// One measured cover/stego pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub image_name: String,
    pub width: usize,
    pub height: usize,
    pub payload_bytes: usize,
    pub mse: f64,
    pub rmse: f64,
    pub psnr_db: f64,
    pub ncc: f64,
    pub hist_delta_b: u64,
    pub elapsed_ms: f64,
}

impl BenchRow {
    fn record(&self) -> [String; 10] {
        [
            self.image_name.clone(),
            self.width.to_string(),
            self.height.to_string(),
            self.payload_bytes.to_string(),
            fmt_metric(self.mse),
            fmt_metric(self.rmse),
            fmt_metric(self.psnr_db),
            fmt_metric(self.ncc),
            self.hist_delta_b.to_string(),
            format!("{:.4}", self.elapsed_ms),
        ]
    }
}

/// Parses `WxH`.
pub fn parse_dims(s: &str) -> std::result::Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<usize>().ok().filter(|&n| n > 0);
    match (parse(w), parse(h)) {
        (Some(w), Some(h)) => Ok((w, h)),
        _ => Err(format!("expected positive WxH, got {s:?}")),
    }
}

/// Loads every `.png` / `.ppm` file in `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<(String, RgbImage)>> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::io(dir, e))?.path();
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        if path.is_file() && matches!(ext.as_deref(), Some("png" | "ppm")) {
            paths.push(path);
        }
    }
    if paths.is_empty() {
        return Err(CliError::unsupported(
            dir,
            "corpus holds no .png or .ppm images",
        ));
    }
    paths.sort();
    paths
        .par_iter()
        .map(|p| {
            let name = p
                .file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            Ok((name, read_image(p)?))
        })
        .collect()
}

fn payload_for(seed: u64, experiment: Experiment, row: usize, len: usize) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((experiment as u64) << 32) | row as u64);
    let mut out = vec![0u8; len];
    rng.fill_bytes(&mut out);
    out
}

fn measure(
    name: &str,
    cover: &RgbImage,
    payload_bytes: usize,
    payload: Vec<u8>,
    cfg: &BenchConfig,
) -> Result<BenchRow> {
    let start = Instant::now();
    let (stego, _) = embed(cover, &cfg.key, &payload)?;
    let m = MetricsReport::compute(cover, &stego, cfg.peak)?;
    let elapsed_ms = if cfg.timing {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    Ok(BenchRow {
        image_name: name.to_owned(),
        width: cover.width(),
        height: cover.height(),
        payload_bytes,
        mse: m.mse,
        rmse: m.rmse,
        psnr_db: m.psnr,
        ncc: m.ncc,
        hist_delta_b: m.hist_delta_b,
        elapsed_ms,
    })
}

struct Job<'a> {
    name: &'a str,
    cover: std::borrow::Cow<'a, RgbImage>,
    requested: usize,
}

fn run_jobs(
    jobs: Vec<Job<'_>>,
    experiment: Experiment,
    cfg: &BenchConfig,
) -> Result<Vec<BenchRow>> {
    jobs.into_par_iter()
        .enumerate()
        .map(|(row, job)| {
            let bytes = job.requested.min(capacity_bytes(&job.cover));
            let payload = payload_for(cfg.seed, experiment, row, bytes);
            measure(job.name, &job.cover, bytes, payload, cfg)
        })
        .collect()
}

fn resize(img: &RgbImage, width: usize, height: usize) -> RgbImage {
    let buf = to_image_buffer(img);
    from_image_buffer(&imageops::resize(
        &buf,
        width as u32,
        height as u32,
        FilterType::Triangle,
    ))
}

/// Results of one bench invocation, before writing.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchResults {
    pub images: Vec<BenchRow>,
    pub payload_sweep: Vec<BenchRow>,
    pub dimension_sweep: Vec<BenchRow>,
}

pub fn run_experiments(corpus: &[(String, RgbImage)], cfg: &BenchConfig) -> Result<BenchResults> {
    let per_image_payload = cfg.payloads.iter().copied().max().unwrap_or(0);
    let image_jobs = corpus
        .iter()
        .map(|(name, img)| Job {
            name,
            cover: std::borrow::Cow::Borrowed(img),
            requested: per_image_payload,
        })
        .collect();
    let mut images = run_jobs(image_jobs, Experiment::Images, cfg)?;
    images.sort_by(|a, b| a.image_name.cmp(&b.image_name));

    let (sweep_name, sweep_img) = match &cfg.sweep_image {
        Some(wanted) => corpus
            .iter()
            .find(|(name, _)| name == wanted)
            .ok_or_else(|| CliError::Usage(format!("sweep image {wanted:?} not in corpus")))?,
        None => &corpus[0],
    };

    let payload_jobs = cfg
        .payloads
        .iter()
        .map(|&requested| Job {
            name: sweep_name,
            cover: std::borrow::Cow::Borrowed(sweep_img),
            requested,
        })
        .collect();
    let payload_sweep = run_jobs(payload_jobs, Experiment::PayloadSweep, cfg)?;

    let dim_jobs = cfg
        .dims
        .iter()
        .map(|&(w, h)| Job {
            name: sweep_name,
            cover: if (h, w) == sweep_img.dims() {
                std::borrow::Cow::Borrowed(sweep_img)
            } else {
                std::borrow::Cow::Owned(resize(sweep_img, w, h))
            },
            requested: cfg.dims_payload,
        })
        .collect();
    let dimension_sweep = run_jobs(dim_jobs, Experiment::DimensionSweep, cfg)?;

    Ok(BenchResults {
        images,
        payload_sweep,
        dimension_sweep,
    })
}

fn peak_name(peak: PeakMode) -> &'static str {
    match peak {
        PeakMode::ImageMax => "paper",
        PeakMode::Fixed255 => "fixed255",
    }
}

/// Serializes rows with a leading `#` comment line recording the run parameters.
pub fn write_csv<W: std::io::Write>(
    mut out: W,
    experiment_name: &str,
    rows: &[BenchRow],
    cfg: &BenchConfig,
) -> Result<()> {
    writeln!(
        out,
        "# tstego bench experiment={experiment_name} seed={} cmax={} rng=chacha8",
        cfg.seed,
        peak_name(cfg.peak)
    )
    .map_err(|e| CliError::io(&cfg.out_dir, e))?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush().map_err(|e| CliError::io(&cfg.out_dir, e))?;
    Ok(())
}

/// Runs all experiments and writes the three CSVs into `cfg.out_dir`.
/// Returns the paths written.
pub fn run(cfg: &BenchConfig) -> Result<Vec<PathBuf>> {
    let corpus = load_corpus(&cfg.corpus)?;
    let results = run_experiments(&corpus, cfg)?;
    fs::create_dir_all(&cfg.out_dir).map_err(|e| CliError::io(&cfg.out_dir, e))?;
    let mut written = Vec::new();
    for (experiment, rows) in [
        (Experiment::Images, &results.images),
        (Experiment::PayloadSweep, &results.payload_sweep),
        (Experiment::DimensionSweep, &results.dimension_sweep),
    ] {
        let path = cfg.out_dir.join(format!("{}.csv", experiment.name()));
        let file = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
        write_csv(std::io::BufWriter::new(file), experiment.name(), rows, cfg)?;
        written.push(path);
    }
    Ok(written)
}
