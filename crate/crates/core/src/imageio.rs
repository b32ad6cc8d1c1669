//! Loading and saving images as binary PNM (P4/P5/P6) or 8-bit PNG.

use std::fs;
use std::io::Write;
use std::path::Path;

use image::codecs::png::PngEncoder;
use image::{DynamicImage, ExtendedColorType, ImageEncoder, ImageFormat};

use crate::error::{Error, Result};
use crate::image::{Image, Mode};

const PNG_SIGNATURE: &[u8] = b"\x89PNG\r\n\x1a\n";

/// On-disk image encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormatKind {
    /// Netpbm, variant chosen from the image mode.
    Pnm,
    Png,
}

/// Format and required mode implied by a path's extension.
fn format_for_path(path: &Path, mode: Mode) -> Result<ImageFormatKind> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    let required = match ext.as_str() {
        "png" => return Ok(ImageFormatKind::Png),
        "pnm" => return Ok(ImageFormatKind::Pnm),
        "pbm" => Mode::Binary,
        "pgm" => Mode::Grayscale,
        "ppm" => Mode::Color,
        other => {
            return Err(Error::UnsupportedFormat(format!(
                "{}: unknown extension {other:?}",
                path.display()
            )))
        }
    };
    if required != mode {
        return Err(Error::UnsupportedFormat(format!(
            "{}: .{ext} cannot hold a {mode} image",
            path.display()
        )));
    }
    Ok(ImageFormatKind::Pnm)
}

/// Conventional extension for a mode: PBM, PGM, or PNG for color.
pub fn default_extension(mode: Mode) -> &'static str {
    match mode {
        Mode::Binary => "pbm",
        Mode::Grayscale => "pgm",
        Mode::Color => "png",
    }
}

pub fn load_image(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_image(&bytes)
}

/// Decodes PNM or PNG bytes, sniffing the format from the leading magic.
pub fn decode_image(bytes: &[u8]) -> Result<Image> {
    if bytes.starts_with(PNG_SIGNATURE) {
        decode_png(bytes)
    } else if bytes.first() == Some(&b'P') {
        decode_pnm(bytes)
    } else {
        Err(Error::UnsupportedFormat(
            "expected a PBM (P4), PGM (P5), PPM (P6) or PNG file".into(),
        ))
    }
}

/// Writes an image, picking the encoding from the extension. The file is
/// replaced atomically.
pub fn save_image(image: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = match format_for_path(path, image.mode())? {
        ImageFormatKind::Pnm => encode_pnm(image),
        ImageFormatKind::Png => encode_png(image)?,
    };
    write_atomic(path, &bytes)
}

/// Writes `bytes` to a temporary file beside `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

struct PnmCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl PnmCursor<'_> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::CorruptFile(format!("PNM header: bad {what}")))
    }
}

pub fn decode_pnm(bytes: &[u8]) -> Result<Image> {
    let mode = match bytes.get(..2) {
        Some(b"P4") => Mode::Binary,
        Some(b"P5") => Mode::Grayscale,
        Some(b"P6") => Mode::Color,
        Some(b"P1" | b"P2" | b"P3") => {
            return Err(Error::UnsupportedFormat(
                "ASCII PNM variants are not supported".into(),
            ))
        }
        _ => return Err(Error::UnsupportedFormat("unrecognised PNM magic".into())),
    };
    let mut cur = PnmCursor { bytes, pos: 2 };
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    if width == 0 || height == 0 {
        return Err(Error::CorruptFile(format!(
            "PNM dimensions {width}x{height}"
        )));
    }
    if mode != Mode::Binary {
        let maxval = cur.number("maxval")?;
        if maxval > 255 {
            return Err(Error::UnsupportedBitDepth(format!(
                "PNM maxval {maxval}; only 8-bit samples are supported"
            )));
        }
        if maxval == 0 {
            return Err(Error::CorruptFile("PNM maxval 0".into()));
        }
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(Error::CorruptFile("PNM header not terminated".into())),
    }
    let raster = &bytes[cur.pos..];
    let (w, h) = (width as usize, height as usize);
    let pixels = if mode == Mode::Binary {
        let row_bytes = w.div_ceil(8);
        check_raster_len(raster, row_bytes * h)?;
        let mut pixels = Vec::with_capacity(w * h);
        for row in raster.chunks_exact(row_bytes).take(h) {
            pixels.extend((0..w).map(|x| (row[x / 8] >> (7 - x % 8)) & 1));
        }
        pixels
    } else {
        let len = w * h * mode.channels();
        check_raster_len(raster, len)?;
        raster[..len].to_vec()
    };
    Image::new(height, width, mode, pixels)
}

fn check_raster_len(raster: &[u8], expected: usize) -> Result<()> {
    if raster.len() < expected {
        return Err(Error::CorruptFile(format!(
            "PNM raster holds {} bytes, expected {expected}",
            raster.len()
        )));
    }
    Ok(())
}

/// Encodes as P4, P5 or P6 according to the image mode, maxval 255.
pub fn encode_pnm(image: &Image) -> Vec<u8> {
    let (w, h) = (image.width(), image.height());
    let mut out = match image.mode() {
        Mode::Binary => format!("P4\n{w} {h}\n"),
        Mode::Grayscale => format!("P5\n{w} {h}\n255\n"),
        Mode::Color => format!("P6\n{w} {h}\n255\n"),
    }
    .into_bytes();
    if image.mode() == Mode::Binary {
        out.extend(pack_bits(image.pixels(), w as usize));
    } else {
        out.extend_from_slice(image.pixels());
    }
    out
}

/// Packs one bit per sample, MSB first, each row padded to a byte boundary.
pub(crate) fn pack_bits(bits: &[u8], width: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(bits.len().div_ceil(8));
    for row in bits.chunks(width) {
        for chunk in row.chunks(8) {
            let byte = chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | ((b & 1) << (7 - i)));
            out.push(byte);
        }
    }
    out
}

pub fn decode_png(bytes: &[u8]) -> Result<Image> {
    let decoded = image::load_from_memory_with_format(bytes, ImageFormat::Png)
        .map_err(|e| Error::CorruptFile(format!("PNG: {e}")))?;
    let (w, h) = (decoded.width(), decoded.height());
    match decoded {
        DynamicImage::ImageLuma8(buf) => Image::new(h, w, Mode::Grayscale, buf.into_raw()),
        DynamicImage::ImageRgb8(buf) => Image::new(h, w, Mode::Color, buf.into_raw()),
        DynamicImage::ImageLuma16(_) | DynamicImage::ImageRgb16(_) => Err(
            Error::UnsupportedBitDepth("16-bit PNG; only 8-bit samples are supported".into()),
        ),
        DynamicImage::ImageLumaA8(_) | DynamicImage::ImageRgba8(_) => {
            Err(Error::UnsupportedFormat("PNG with alpha channel".into()))
        }
        other => Err(Error::UnsupportedFormat(format!(
            "PNG color type {:?}",
            other.color()
        ))),
    }
}

/// Encodes as 8-bit PNG. Binary images map 1 to black and 0 to white, as in PBM.
pub fn encode_png(image: &Image) -> Result<Vec<u8>> {
    let (data, color): (Vec<u8>, ExtendedColorType) = match image.mode() {
        Mode::Binary => (
            image
                .pixels()
                .iter()
                .map(|&b| if b == 1 { 0 } else { 255 })
                .collect(),
            ExtendedColorType::L8,
        ),
        Mode::Grayscale => (image.pixels().to_vec(), ExtendedColorType::L8),
        Mode::Color => (image.pixels().to_vec(), ExtendedColorType::Rgb8),
    };
    let mut out = Vec::new();
    PngEncoder::new(&mut out)
        .write_image(&data, image.width(), image.height(), color)
        .map_err(|e| Error::UnsupportedFormat(format!("PNG encode: {e}")))?;
    Ok(out)
}
