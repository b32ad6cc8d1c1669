//! Rectangular pixel buffers shared by secrets, shares, keys and recoveries.

use std::fmt;

use crate::error::{Error, Result};

/// Pixel mode. Binary pixels live in `{0, 1}`, every other mode in `[0, 255]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Binary,
    Grayscale,
    Color,
}

impl Mode {
    /// Modulus of the pixel ring: 2 for binary, 256 otherwise.
    pub fn modulus(self) -> u32 {
        match self {
            Mode::Binary => 2,
            Mode::Grayscale | Mode::Color => 256,
        }
    }

    pub fn channels(self) -> usize {
        match self {
            Mode::Binary | Mode::Grayscale => 1,
            Mode::Color => 3,
        }
    }

    /// Largest representable channel value.
    pub fn max_value(self) -> u8 {
        (self.modulus() - 1) as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Binary => "binary",
            Mode::Grayscale => "grayscale",
            Mode::Color => "color",
        }
    }

    pub fn from_name(name: &str) -> Option<Mode> {
        match name.to_ascii_lowercase().as_str() {
            "binary" => Some(Mode::Binary),
            "grayscale" | "gray" => Some(Mode::Grayscale),
            "color" | "colour" | "rgb" => Some(Mode::Color),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An immutable `height x width` image, row-major with interleaved channels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Image {
    height: u32,
    width: u32,
    mode: Mode,
    pixels: Vec<u8>,
}

impl Image {
    pub fn new(height: u32, width: u32, mode: Mode, pixels: Vec<u8>) -> Result<Image> {
        let expected = sample_count(height, width, mode)?;
        if pixels.len() != expected {
            return Err(Error::PixelCount {
                expected,
                actual: pixels.len(),
            });
        }
        let max = mode.max_value();
        if let Some((offset, &value)) = pixels.iter().enumerate().find(|(_, &v)| v > max) {
            return Err(Error::PixelOutOfRange {
                offset,
                value,
                max: max.into(),
            });
        }
        Ok(Image {
            height,
            width,
            mode,
            pixels,
        })
    }

    pub fn filled(height: u32, width: u32, mode: Mode, value: u8) -> Result<Image> {
        let len = sample_count(height, width, mode)?;
        Image::new(height, width, mode, vec![value; len])
    }

    /// Builds an image from a per-sample closure `(row, col, channel) -> value`.
    pub fn from_fn<F>(height: u32, width: u32, mode: Mode, mut f: F) -> Result<Image>
    where
        F: FnMut(u32, u32, usize) -> u8,
    {
        let len = sample_count(height, width, mode)?;
        let mut pixels = Vec::with_capacity(len);
        for row in 0..height {
            for col in 0..width {
                for ch in 0..mode.channels() {
                    pixels.push(f(row, col, ch));
                }
            }
        }
        Image::new(height, width, mode, pixels)
    }

    /// Internal constructor for buffers produced by modular arithmetic, which
    /// are in range by construction.
    pub(crate) fn from_raw(height: u32, width: u32, mode: Mode, pixels: Vec<u8>) -> Image {
        debug_assert_eq!(
            pixels.len(),
            height as usize * width as usize * mode.channels()
        );
        debug_assert!(pixels.iter().all(|&v| v <= mode.max_value()));
        Image {
            height,
            width,
            mode,
            pixels,
        }
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn channels(&self) -> usize {
        self.mode.channels()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, row: u32, col: u32, channel: usize) -> u8 {
        let idx = (row as usize * self.width as usize + col as usize) * self.channels() + channel;
        self.pixels[idx]
    }

    pub fn same_shape(&self, other: &Image) -> bool {
        self.height == other.height && self.width == other.width && self.mode == other.mode
    }

    pub(crate) fn shape_description(&self) -> String {
        format!("{}x{} {}", self.height, self.width, self.mode)
    }
}

impl fmt::Debug for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Image")
            .field("height", &self.height)
            .field("width", &self.width)
            .field("mode", &self.mode)
            .field("samples", &self.pixels.len())
            .finish()
    }
}

fn sample_count(height: u32, width: u32, mode: Mode) -> Result<usize> {
    if height == 0 || width == 0 {
        return Err(Error::InvalidDimensions { height, width });
    }
    Ok(height as usize * width as usize * mode.channels())
}

/// Checks that every image has the shape of the first one.
pub(crate) fn ensure_same_shape(images: &[&Image]) -> Result<()> {
    let Some(first) = images.first() else {
        return Ok(());
    };
    for (index, img) in images.iter().enumerate().skip(1) {
        if !img.same_shape(first) {
            return Err(Error::DimensionMismatch {
                index,
                detail: format!(
                    "expected {}, found {}",
                    first.shape_description(),
                    img.shape_description()
                ),
            });
        }
    }
    Ok(())
}
