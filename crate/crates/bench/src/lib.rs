//! Seeded fixtures shared by the criterion benches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tstego_core::RgbImage;

pub fn random_cover(height: usize, width: usize, seed: u64) -> RgbImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let px = (0..height * width).map(|_| rng.random()).collect();
    RgbImage::new(height, width, px).expect("non-zero dimensions")
}

pub fn random_bytes(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![0u8; len];
    rng.fill(&mut out[..]);
    out
}
