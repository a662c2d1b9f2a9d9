//! RGB images, single-channel planes, and the split/merge/transpose
//! operations the codec runs on.
//!
//! Storage is row-major. "Raster order" anywhere in this crate means
//! row by row, left to right, over whatever grid is current, so walking a
//! transposed channel in raster order visits the original in column-major
//! order.

use crate::error::{Result, StegoError};

/// A single 8-bit plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Channel {
    height: usize,
    width: usize,
    values: Vec<u8>,
}

impl Channel {
    pub fn new(height: usize, width: usize, values: Vec<u8>) -> Result<Self> {
        check_dims(height, width)?;
        if values.len() != height * width {
            return Err(StegoError::BufferSize {
                expected: height * width,
                actual: values.len(),
            });
        }
        Ok(Self {
            height,
            width,
            values,
        })
    }

    /// Builds a channel from nested rows. All rows must have the same length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(height * width);
        for row in rows {
            let row = row.as_ref();
            if row.len() != width {
                return Err(StegoError::BufferSize {
                    expected: width,
                    actual: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::new(height, width, values)
    }

    pub fn filled(height: usize, width: usize, value: u8) -> Result<Self> {
        Self::new(height, width, vec![value; height * width])
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Samples in raster order.
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [u8] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<u8> {
        self.values
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.values[row * self.width + col]
    }

    /// Swaps rows and columns: an `H x W` plane becomes `W x H` with
    /// `out(j, i) = in(i, j)`.
    pub fn transpose(&self) -> Channel {
        let (h, w) = (self.height, self.width);
        let mut out = vec![0u8; h * w];
        for (i, row) in self.values.chunks_exact(w).enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[j * h + i] = v;
            }
        }
        Channel {
            height: w,
            width: h,
            values: out,
        }
    }
}

/// An `H x W` grid of 8-bit RGB pixels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RgbImage {
    height: usize,
    width: usize,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(height: usize, width: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        check_dims(height, width)?;
        if pixels.len() != height * width {
            return Err(StegoError::BufferSize {
                expected: height * width,
                actual: pixels.len(),
            });
        }
        Ok(Self {
            height,
            width,
            pixels,
        })
    }

    /// Builds an image from interleaved `RGBRGB...` bytes in raster order.
    pub fn from_interleaved(height: usize, width: usize, data: &[u8]) -> Result<Self> {
        check_dims(height, width)?;
        if data.len() != height * width * 3 {
            return Err(StegoError::BufferSize {
                expected: height * width * 3,
                actual: data.len(),
            });
        }
        let pixels = data.chunks_exact(3).map(|p| [p[0], p[1], p[2]]).collect();
        Self::new(height, width, pixels)
    }

    pub fn filled(height: usize, width: usize, pixel: [u8; 3]) -> Result<Self> {
        Self::new(height, width, vec![pixel; height * width])
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> [u8; 3] {
        self.pixels[row * self.width + col]
    }

    /// Interleaved `RGBRGB...` bytes in raster order.
    pub fn to_interleaved(&self) -> Vec<u8> {
        self.pixels.iter().flatten().copied().collect()
    }

    /// Splits into red, green and blue planes of the same dimensions.
    pub fn split_channels(&self) -> (Channel, Channel, Channel) {
        let plane = |k: usize| Channel {
            height: self.height,
            width: self.width,
            values: self.pixels.iter().map(|p| p[k]).collect(),
        };
        (plane(0), plane(1), plane(2))
    }

    /// Inverse of [`split_channels`](Self::split_channels).
    pub fn merge_channels(r: &Channel, g: &Channel, b: &Channel) -> Result<RgbImage> {
        for other in [g, b] {
            if other.dims() != r.dims() {
                return Err(StegoError::DimensionMismatch {
                    left_height: r.height,
                    left_width: r.width,
                    right_height: other.height,
                    right_width: other.width,
                });
            }
        }
        let pixels = r
            .values
            .iter()
            .zip(&g.values)
            .zip(&b.values)
            .map(|((&r, &g), &b)| [r, g, b])
            .collect();
        Ok(RgbImage {
            height: r.height,
            width: r.width,
            pixels,
        })
    }
}

fn check_dims(height: usize, width: usize) -> Result<()> {
    if height == 0 || width == 0 {
        return Err(StegoError::InvalidDimensions { height, width });
    }
    Ok(())
}
