//! Key and payload encryption.
//!
//! The key's bits are complemented and then swapped pairwise (even index
//! with odd index) to form a keystream. Payload bits are XORed with that
//! keystream, cycled with period `8 * key_len`. Every stage preserves
//! length and is its own inverse.
//!
//! This is a keyed XOR with a short fixed period. It hides bits from casual
//! inspection; it is not a cipher in the modern sense.

use crate::error::{Result, StegoError};
use crate::payload::{bytes_to_bits, BitSeq};

/// The user's secret key as raw bytes. Never empty.
#[derive(Clone, PartialEq, Eq)]
pub struct StegoKey(Vec<u8>);

impl StegoKey {
    pub fn new(raw: impl Into<Vec<u8>>) -> Result<Self> {
        let raw = raw.into();
        if raw.is_empty() {
            return Err(StegoError::EmptyKey);
        }
        Ok(Self(raw))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Debug for StegoKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StegoKey({} bytes)", self.0.len())
    }
}

/// Encrypted key bits, cycled over the payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Keystream(BitSeq);

impl Keystream {
    /// Wraps arbitrary bits. Fails on an empty sequence.
    pub fn from_bits(bits: BitSeq) -> Result<Self> {
        if bits.is_empty() {
            return Err(StegoError::EmptyKeystream);
        }
        Ok(Self(bits))
    }

    pub fn bits(&self) -> &BitSeq {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Keystream bit for payload position `index`.
    pub fn at(&self, index: usize) -> bool {
        self.0.as_slice()[index % self.0.len()]
    }
}

/// Flips every bit.
pub fn complement_bits(bits: &BitSeq) -> BitSeq {
    bits.iter().map(|b| !b).collect()
}

/// Interchanges each even-indexed bit with the odd-indexed bit after it.
pub fn swap_even_odd(bits: &BitSeq) -> Result<BitSeq> {
    if !bits.len().is_multiple_of(2) {
        return Err(StegoError::OddLength(bits.len()));
    }
    Ok(bits
        .as_slice()
        .chunks_exact(2)
        .flat_map(|pair| [pair[1], pair[0]])
        .collect())
}

pub fn encrypt_key(key: &StegoKey) -> Keystream {
    let bits = bytes_to_bits(key.as_bytes());
    let swapped =
        swap_even_odd(&complement_bits(&bits)).expect("byte-derived bits have even length");
    Keystream(swapped)
}

/// XORs `msg[i]` with `ks[i mod |ks|]`.
pub fn keystream_xor(msg: &BitSeq, ks: &Keystream) -> BitSeq {
    msg.iter().enumerate().map(|(i, b)| b ^ ks.at(i)).collect()
}

/// Encrypts a frame with the keystream derived from `key`.
pub fn encrypt_frame(frame: &BitSeq, key: &StegoKey) -> BitSeq {
    keystream_xor(frame, &encrypt_key(key))
}

/// Inverse of [`encrypt_frame`]. The keystream XOR is self-inverse, so this
/// is the same operation.
pub fn decrypt_frame(cipher: &BitSeq, key: &StegoKey) -> BitSeq {
    keystream_xor(cipher, &encrypt_key(key))
}
