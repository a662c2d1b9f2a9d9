//! Steganography by gray-level modification of the transposed blue channel.
//!
//! A message is framed with a 32-bit length header, XOR-encrypted with a
//! keystream derived from the secret key, and written into the parity of
//! blue-channel pixels after all three channels are transposed. Red and
//! green are never touched and no blue pixel moves by more than 2.
//!
//! ```
//! use tstego_core::{embed, extract, RgbImage, StegoKey};
//!
//! let cover = RgbImage::filled(16, 16, [120, 64, 200]).unwrap();
//! let key = StegoKey::new(*b"secret").unwrap();
//! let (stego, _report) = embed(&cover, &key, b"hello").unwrap();
//! assert_eq!(extract(&stego, &key).unwrap(), b"hello");
//! ```

pub mod codec;
pub mod crypto;
pub mod error;
pub mod image;
pub mod metrics;
pub mod payload;

pub use codec::{capacity, capacity_bytes, embed, extract, BaselineParity, EmbedReport};
pub use crypto::{encrypt_key, Keystream, StegoKey};
pub use error::{Result, StegoError};
pub use image::{Channel, RgbImage};
pub use metrics::{MetricsReport, PeakMode};
pub use payload::{BitSeq, PayloadFrame};
