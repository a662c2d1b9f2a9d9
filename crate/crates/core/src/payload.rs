//! Bit sequences and length-prefixed payload frames.
//!
//! Bits are MSB-first within each byte. A frame is a 32-bit big-endian
//! byte count followed by the message bytes, so extraction knows where
//! the payload ends.

use std::fmt;

use crate::error::{Result, StegoError};

/// Number of bits in the frame length header.
pub const HEADER_BITS: usize = 32;

/// An ordered sequence of bits.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitSeq(Vec<bool>);

impl BitSeq {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Parses `0`/`1` digits. Anything else yields `None`.
    pub fn from_digits(digits: &[u8]) -> Option<Self> {
        digits
            .iter()
            .map(|&d| match d {
                0 => Some(false),
                1 => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        self.0.get(index).copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn to_digits(&self) -> Vec<u8> {
        self.0.iter().map(|&b| b as u8).collect()
    }

    pub fn into_inner(self) -> Vec<bool> {
        self.0
    }
}

impl From<Vec<bool>> for BitSeq {
    fn from(bits: Vec<bool>) -> Self {
        Self(bits)
    }
}

impl FromIterator<bool> for BitSeq {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl Extend<bool> for BitSeq {
    fn extend<I: IntoIterator<Item = bool>>(&mut self, iter: I) {
        self.0.extend(iter);
    }
}

impl fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("BitSeq(")?;
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

pub fn bytes_to_bits(data: &[u8]) -> BitSeq {
    data.iter()
        .flat_map(|&byte| (0..8).rev().map(move |k| (byte >> k) & 1 == 1))
        .collect()
}

pub fn bits_to_bytes(bits: &BitSeq) -> Result<Vec<u8>> {
    if !bits.len().is_multiple_of(8) {
        return Err(StegoError::LengthNotByteAligned(bits.len()));
    }
    Ok(bits
        .as_slice()
        .chunks_exact(8)
        .map(|chunk| chunk.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8))
        .collect())
}

/// A length-prefixed payload: the exact bit string that gets encrypted and
/// embedded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayloadFrame {
    message_len: u32,
    bits: BitSeq,
}

impl PayloadFrame {
    /// Message length in bytes, as carried by the header.
    pub fn message_len(&self) -> u32 {
        self.message_len
    }

    pub fn bits(&self) -> &BitSeq {
        &self.bits
    }

    pub fn into_bits(self) -> BitSeq {
        self.bits
    }

    /// Total frame size for a message of `message_len` bytes.
    pub fn bit_len_for(message_len: usize) -> usize {
        HEADER_BITS + 8 * message_len
    }
}

pub fn frame_payload(message: &[u8]) -> Result<PayloadFrame> {
    let len =
        u32::try_from(message.len()).map_err(|_| StegoError::MessageTooLarge(message.len()))?;
    let mut bits = bytes_to_bits(&len.to_be_bytes());
    bits.extend(bytes_to_bits(message).into_inner());
    Ok(PayloadFrame {
        message_len: len,
        bits,
    })
}

/// Reads the header and returns exactly the number of bytes it claims.
/// Bits past the claimed body are ignored.
pub fn unframe_payload(frame: &BitSeq) -> Result<Vec<u8>> {
    let claimed = read_header(frame).ok_or(StegoError::TruncatedFrame {
        claimed_bytes: 0,
        available_bits: frame.len(),
    })?;
    let body = &frame.as_slice()[HEADER_BITS..];
    let needed = 8 * claimed as usize;
    if body.len() < needed {
        return Err(StegoError::TruncatedFrame {
            claimed_bytes: claimed as u64,
            available_bits: body.len(),
        });
    }
    bits_to_bytes(&BitSeq::from(body[..needed].to_vec()))
}

/// Decodes the 32-bit length header, or `None` if fewer than 32 bits exist.
pub fn read_header(bits: &BitSeq) -> Option<u32> {
    let header = bits.as_slice().get(..HEADER_BITS)?;
    Some(header.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32))
}
