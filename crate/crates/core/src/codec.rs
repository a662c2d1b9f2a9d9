//! Gray-level modification embedding over the transposed blue channel.
//!
//! Embedding:
//! 1. split the cover into R, G, B and transpose all three planes;
//! 2. frame the message and encrypt the whole frame with the key's keystream;
//! 3. force every blue pixel to a baseline parity chosen by the first
//!    encrypted bit (odd for 1, even for 0);
//! 4. walk the transposed blue plane in raster order and force pixel `i` to
//!    the parity of encrypted bit `i`;
//! 5. transpose back and merge.
//!
//! Extraction reads blue LSBs in the same order, decrypts the 32-bit header
//! to learn the body length, then decrypts header and body as one stream.
//!
//! Pixel values never leave `[0, 255]`: a +1 at 255 becomes -1 and a -1 at
//! 0 becomes +1. Both land on the same parity.

use crate::crypto::{decrypt_frame, encrypt_frame, StegoKey};
use crate::error::{Result, StegoError};
use crate::image::{Channel, RgbImage};
use crate::payload::{frame_payload, read_header, unframe_payload, BitSeq, HEADER_BITS};

/// Parity every blue pixel is forced to before per-bit mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaselineParity {
    Even,
    Odd,
}

impl BaselineParity {
    /// Odd iff the first encrypted frame bit is 1.
    pub fn from_first_bit(bit: bool) -> Self {
        if bit {
            BaselineParity::Odd
        } else {
            BaselineParity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == BaselineParity::Odd
    }

    pub fn matches(self, value: u8) -> bool {
        (value & 1 == 1) == self.is_odd()
    }
}

impl std::fmt::Display for BaselineParity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BaselineParity::Even => "even",
            BaselineParity::Odd => "odd",
        })
    }
}

/// What an embed changed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedReport {
    /// Frame length: 32 header bits plus 8 per message byte.
    pub bits_embedded: usize,
    /// Blue pixels whose parity was flipped during whitening.
    pub pixels_whitened: usize,
    /// Blue pixels changed while mapping frame bits.
    pub pixels_adjusted: usize,
    /// `bits_embedded / (H * W)`.
    pub capacity_used: f64,
    pub baseline: BaselineParity,
}

/// Message bits available in `img` once the frame header is accounted for.
pub fn capacity(img: &RgbImage) -> usize {
    img.pixel_count().saturating_sub(HEADER_BITS)
}

/// Largest message, in whole bytes, that fits in `img`.
pub fn capacity_bytes(img: &RgbImage) -> usize {
    capacity(img) / 8
}

/// Steps `value` by one toward the other parity, staying inside `[0, 255]`.
fn flip_parity(value: u8, up: bool) -> u8 {
    match (up, value) {
        (true, 255) => 254,
        (true, v) => v + 1,
        (false, 0) => 1,
        (false, v) => v - 1,
    }
}

/// Forces every value to `parity`. Matching values are untouched; the rest
/// move by +1 (or -1 at 255).
pub fn whiten_channel(channel: &Channel, parity: BaselineParity) -> Channel {
    let mut out = channel.clone();
    whiten_in_place(out.values_mut(), parity);
    out
}

fn whiten_in_place(values: &mut [u8], parity: BaselineParity) -> usize {
    let mut changed = 0;
    for v in values.iter_mut().filter(|v| !parity.matches(**v)) {
        *v = flip_parity(*v, true);
        changed += 1;
    }
    changed
}

/// Gives `pixel` the parity of `bit`: odd for 1, even for 0.
pub fn map_bit(pixel: u8, bit: bool) -> u8 {
    match (bit, pixel & 1 == 1) {
        (false, false) | (true, true) => pixel,
        (false, true) => flip_parity(pixel, false),
        (true, false) => flip_parity(pixel, true),
    }
}

/// Hides `message` in `cover` under `key`.
pub fn embed(cover: &RgbImage, key: &StegoKey, message: &[u8]) -> Result<(RgbImage, EmbedReport)> {
    let frame = frame_payload(message)?;
    let available = cover.pixel_count();
    if frame.bits().len() > available {
        return Err(StegoError::CoverTooSmall {
            needed_bits: frame.bits().len(),
            available_bits: available,
        });
    }

    let (r, g, b) = cover.split_channels();
    let (r, g, mut b) = (r.transpose(), g.transpose(), b.transpose());

    let cipher = encrypt_frame(frame.bits(), key);
    let baseline = BaselineParity::from_first_bit(cipher.get(0).expect("frame has a header"));

    let blue = b.values_mut();
    let pixels_whitened = whiten_in_place(blue, baseline);
    let mut pixels_adjusted = 0;
    for (pixel, bit) in blue.iter_mut().zip(cipher.iter()) {
        let mapped = map_bit(*pixel, bit);
        if mapped != *pixel {
            *pixel = mapped;
            pixels_adjusted += 1;
        }
    }

    let stego = RgbImage::merge_channels(&r.transpose(), &g.transpose(), &b.transpose())?;
    let report = EmbedReport {
        bits_embedded: cipher.len(),
        pixels_whitened,
        pixels_adjusted,
        capacity_used: cipher.len() as f64 / available as f64,
        baseline,
    };
    Ok((stego, report))
}

/// Blue-channel LSBs in transposed raster order.
pub fn blue_lsbs(img: &RgbImage) -> BitSeq {
    let (_, _, b) = img.split_channels();
    b.transpose().values().iter().map(|v| v & 1 == 1).collect()
}

/// Recovers the message hidden by [`embed`].
pub fn extract(stego: &RgbImage, key: &StegoKey) -> Result<Vec<u8>> {
    let lsbs = blue_lsbs(stego);
    let available = lsbs.len();
    if available < HEADER_BITS {
        return Err(StegoError::CorruptHeader {
            needed_bits: HEADER_BITS as u64,
            available_bits: available,
        });
    }
    let header = decrypt_frame(
        &lsbs.as_slice()[..HEADER_BITS].iter().copied().collect(),
        key,
    );
    let claimed = read_header(&header).expect("32 header bits present") as u64;
    let needed = HEADER_BITS as u64 + 8 * claimed;
    if needed > available as u64 {
        return Err(StegoError::CorruptHeader {
            needed_bits: needed,
            available_bits: available,
        });
    }
    let cipher: BitSeq = lsbs.as_slice()[..needed as usize].iter().copied().collect();
    unframe_payload(&decrypt_frame(&cipher, key))
}
