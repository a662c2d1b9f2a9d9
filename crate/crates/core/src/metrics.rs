//! Fidelity metrics between a cover and its stego image: MSE, RMSE, PSNR,
//! normalized cross-correlation, and per-channel histogram deltas.
//!
//! MSE averages over all `3 * H * W` samples. NCC is computed per channel
//! with the symmetric normalization `sum(S*C) / (sqrt(sum S^2) * sqrt(sum C^2))`
//! and the three channel scores are averaged.

use crate::error::{Result, StegoError};
use crate::image::{Channel, RgbImage};

/// How the PSNR peak value is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PeakMode {
    /// Largest sample over both images.
    #[default]
    ImageMax,
    /// Constant 255.
    Fixed255,
}

impl PeakMode {
    pub fn peak(self, cover: &RgbImage, stego: &RgbImage) -> u8 {
        match self {
            PeakMode::Fixed255 => 255,
            PeakMode::ImageMax => cover
                .pixels()
                .iter()
                .chain(stego.pixels())
                .flat_map(|p| p.iter().copied())
                .max()
                .unwrap_or(0),
        }
    }
}

fn check_same_dims(a: &RgbImage, b: &RgbImage) -> Result<()> {
    if a.dims() != b.dims() {
        return Err(StegoError::DimensionMismatch {
            left_height: a.height(),
            left_width: a.width(),
            right_height: b.height(),
            right_width: b.width(),
        });
    }
    Ok(())
}

fn squared_error_sum(cover: &RgbImage, stego: &RgbImage) -> u64 {
    cover
        .pixels()
        .iter()
        .zip(stego.pixels())
        .flat_map(|(c, s)| c.iter().zip(s))
        .map(|(&c, &s)| {
            let d = c as i64 - s as i64;
            (d * d) as u64
        })
        .sum()
}

pub fn mse(cover: &RgbImage, stego: &RgbImage) -> Result<f64> {
    check_same_dims(cover, stego)?;
    let samples = 3 * cover.pixel_count();
    Ok(squared_error_sum(cover, stego) as f64 / samples as f64)
}

pub fn rmse(cover: &RgbImage, stego: &RgbImage) -> Result<f64> {
    Ok(mse(cover, stego)?.sqrt())
}

/// `10 * log10(peak^2 / mse)`; `+inf` when `mse == 0`.
pub fn psnr_from_mse(mse: f64, peak: f64) -> f64 {
    if mse == 0.0 {
        return f64::INFINITY;
    }
    10.0 * (peak * peak / mse).log10()
}

/// PSNR with the peak taken as the largest sample of either image.
pub fn psnr(cover: &RgbImage, stego: &RgbImage) -> Result<f64> {
    psnr_with(cover, stego, PeakMode::ImageMax)
}

pub fn psnr_with(cover: &RgbImage, stego: &RgbImage, mode: PeakMode) -> Result<f64> {
    let m = mse(cover, stego)?;
    Ok(psnr_from_mse(m, mode.peak(cover, stego) as f64))
}

/// Correlation of two equally sized planes. Two zero planes count as
/// identical; a zero plane against a non-zero one scores 0.
fn plane_ncc(cover: impl Iterator<Item = u8>, stego: impl Iterator<Item = u8>) -> f64 {
    let (mut cross, mut cc, mut ss) = (0u64, 0u64, 0u64);
    for (c, s) in cover.zip(stego) {
        let (c, s) = (c as u64, s as u64);
        cross += c * s;
        cc += c * c;
        ss += s * s;
    }
    match (cc, ss) {
        (0, 0) => 1.0,
        (0, _) | (_, 0) => 0.0,
        _ => cross as f64 / (cc as f64 * ss as f64).sqrt(),
    }
}

pub fn ncc(cover: &RgbImage, stego: &RgbImage) -> Result<f64> {
    check_same_dims(cover, stego)?;
    if cover.pixels().iter().all(|p| *p == [0; 3]) {
        return Err(StegoError::ZeroImage);
    }
    let total: f64 = (0..3)
        .map(|k| {
            plane_ncc(
                cover.pixels().iter().map(|p| p[k]),
                stego.pixels().iter().map(|p| p[k]),
            )
        })
        .sum();
    Ok(total / 3.0)
}

/// Pixel counts per intensity for one channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    counts: [u64; 256],
}

impl Histogram {
    pub fn of_values(values: &[u8]) -> Self {
        let mut counts = [0u64; 256];
        for &v in values {
            counts[v as usize] += 1;
        }
        Self { counts }
    }

    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn histogram(channel: &Channel) -> Histogram {
    Histogram::of_values(channel.values())
}

/// `sum |a[v] - b[v]|` over all bins.
pub fn hist_l1_delta(a: &Histogram, b: &Histogram) -> Result<u64> {
    let (ta, tb) = (a.total(), b.total());
    if ta != tb {
        return Err(StegoError::TotalMismatch {
            left: ta,
            right: tb,
        });
    }
    Ok(a.counts
        .iter()
        .zip(&b.counts)
        .map(|(&x, &y)| x.abs_diff(y))
        .sum())
}

/// All metrics for one cover/stego pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub mse: f64,
    pub rmse: f64,
    pub psnr: f64,
    pub ncc: f64,
    pub hist_delta_r: u64,
    pub hist_delta_g: u64,
    pub hist_delta_b: u64,
    pub c_max: u8,
}

impl MetricsReport {
    pub fn compute(cover: &RgbImage, stego: &RgbImage, mode: PeakMode) -> Result<Self> {
        let mse = mse(cover, stego)?;
        let c_max = mode.peak(cover, stego);
        let (cr, cg, cb) = cover.split_channels();
        let (sr, sg, sb) = stego.split_channels();
        let delta = |a: &Channel, b: &Channel| hist_l1_delta(&histogram(a), &histogram(b));
        Ok(Self {
            mse,
            rmse: mse.sqrt(),
            psnr: psnr_from_mse(mse, c_max as f64),
            ncc: ncc(cover, stego)?,
            hist_delta_r: delta(&cr, &sr)?,
            hist_delta_g: delta(&cg, &sg)?,
            hist_delta_b: delta(&cb, &sb)?,
            c_max,
        })
    }
}
