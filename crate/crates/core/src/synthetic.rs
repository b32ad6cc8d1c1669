//! Deterministic natural-looking test images.
//!
//! Smooth multi-octave value noise plus a handful of hard-edged shapes gives
//! images with broad histograms, strong spatial correlation and sharp edges.
//! Each `variant` yields a different image.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::image::{Image, Mode};

struct ValueNoise {
    cells: usize,
    lattice: Vec<f64>,
}

impl ValueNoise {
    fn new(rng: &mut impl Rng, cells: usize) -> ValueNoise {
        let side = cells + 1;
        ValueNoise {
            cells,
            lattice: (0..side * side).map(|_| rng.random::<f64>()).collect(),
        }
    }

    /// Sample at normalized coordinates in `[0, 1]`.
    fn sample(&self, y: f64, x: f64) -> f64 {
        let side = self.cells + 1;
        let fy = y * self.cells as f64;
        let fx = x * self.cells as f64;
        let (y0, x0) = (
            (fy as usize).min(self.cells - 1),
            (fx as usize).min(self.cells - 1),
        );
        let smooth = |t: f64| t * t * (3.0 - 2.0 * t);
        let (ty, tx) = (smooth(fy - y0 as f64), smooth(fx - x0 as f64));
        let at = |r: usize, c: usize| self.lattice[r * side + c];
        let top = at(y0, x0) * (1.0 - tx) + at(y0, x0 + 1) * tx;
        let bottom = at(y0 + 1, x0) * (1.0 - tx) + at(y0 + 1, x0 + 1) * tx;
        top * (1.0 - ty) + bottom * ty
    }
}

enum Shape {
    Disc {
        cy: f64,
        cx: f64,
        radius: f64,
        level: f64,
    },
    Rect {
        y0: f64,
        x0: f64,
        y1: f64,
        x1: f64,
        level: f64,
    },
}

impl Shape {
    fn random(rng: &mut impl Rng) -> Shape {
        let level = rng.random_range(-0.45..0.45);
        if rng.random_bool(0.5) {
            Shape::Disc {
                cy: rng.random(),
                cx: rng.random(),
                radius: rng.random_range(0.05..0.22),
                level,
            }
        } else {
            let (y0, x0) = (rng.random_range(0.0..0.8), rng.random_range(0.0..0.8));
            Shape::Rect {
                y0,
                x0,
                y1: y0 + rng.random_range(0.08..0.35),
                x1: x0 + rng.random_range(0.08..0.35),
                level,
            }
        }
    }

    fn offset(&self, y: f64, x: f64) -> f64 {
        match *self {
            Shape::Disc {
                cy,
                cx,
                radius,
                level,
            } => {
                if (y - cy).powi(2) + (x - cx).powi(2) <= radius * radius {
                    level
                } else {
                    0.0
                }
            }
            Shape::Rect {
                y0,
                x0,
                y1,
                x1,
                level,
            } => {
                if (y0..=y1).contains(&y) && (x0..=x1).contains(&x) {
                    level
                } else {
                    0.0
                }
            }
        }
    }
}

/// Luminance field in roughly `[0, 1]`.
fn luminance_field(height: u32, width: u32, variant: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + variant);
    let octaves: Vec<(ValueNoise, f64)> = [(3, 1.0), (6, 0.5), (12, 0.25), (24, 0.125), (64, 0.06)]
        .into_iter()
        .map(|(cells, amp)| (ValueNoise::new(&mut rng, cells), amp))
        .collect();
    let total_amp: f64 = octaves.iter().map(|(_, a)| a).sum();
    let shapes: Vec<Shape> = (0..rng.random_range(4..9))
        .map(|_| Shape::random(&mut rng))
        .collect();
    let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let (gy, gx) = (angle.sin() * 0.35, angle.cos() * 0.35);

    let mut field = Vec::with_capacity(height as usize * width as usize);
    for row in 0..height {
        let y = (row as f64 + 0.5) / height as f64;
        for col in 0..width {
            let x = (col as f64 + 0.5) / width as f64;
            let noise: f64 =
                octaves.iter().map(|(o, a)| a * o.sample(y, x)).sum::<f64>() / total_amp;
            let ramp = gy * (y - 0.5) + gx * (x - 0.5);
            let edges: f64 = shapes.iter().map(|s| s.offset(y, x)).sum();
            field.push(0.5 + 1.6 * (noise - 0.5) + ramp + edges);
        }
    }
    field
}

fn to_byte(v: f64) -> u8 {
    (v * 255.0).round().clamp(0.0, 255.0) as u8
}

/// A `height x width` synthetic image. Binary images threshold the
/// luminance at mid-gray (1 = dark, as in PBM).
pub fn natural_image(height: u32, width: u32, mode: Mode, variant: u64) -> Image {
    let luma = luminance_field(height, width, variant);
    let pixels: Vec<u8> = match mode {
        Mode::Grayscale => luma.iter().map(|&v| to_byte(v)).collect(),
        Mode::Binary => luma.iter().map(|&v| u8::from(v < 0.5)).collect(),
        Mode::Color => {
            let tint_r = luminance_field(height, width, variant.wrapping_add(1000));
            let tint_b = luminance_field(height, width, variant.wrapping_add(2000));
            luma.iter()
                .zip(tint_r.iter().zip(&tint_b))
                .flat_map(|(&l, (&tr, &tb))| {
                    let r = l + 0.3 * (tr - 0.5);
                    let b = l + 0.3 * (tb - 0.5);
                    let g = l - 0.15 * (tr - 0.5) - 0.15 * (tb - 0.5);
                    [to_byte(r), to_byte(g), to_byte(b)]
                })
                .collect()
        }
    };
    Image::new(height, width, mode, pixels).expect("dimensions must be non-zero")
}

/// `count` distinct images of one shape, variants `0..count`.
pub fn natural_set(count: usize, height: u32, width: u32, mode: Mode) -> Vec<Image> {
    (0..count as u64)
        .map(|v| natural_image(height, width, mode, v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std_dev(img: &Image) -> f64 {
        let n = img.pixels().len() as f64;
        let mean = img.pixels().iter().map(|&v| f64::from(v)).sum::<f64>() / n;
        (img.pixels()
            .iter()
            .map(|&v| (f64::from(v) - mean).powi(2))
            .sum::<f64>()
            / n)
            .sqrt()
    }

    #[test]
    fn deterministic_and_distinct() {
        let a = natural_image(64, 64, Mode::Grayscale, 3);
        assert_eq!(a, natural_image(64, 64, Mode::Grayscale, 3));
        assert_ne!(a, natural_image(64, 64, Mode::Grayscale, 4));
    }

    #[test]
    fn broad_histogram() {
        for img in natural_set(5, 128, 128, Mode::Grayscale) {
            let sd = std_dev(&img);
            assert!(sd > 25.0, "std dev {sd}");
            let distinct = {
                let mut seen = [false; 256];
                img.pixels().iter().for_each(|&v| seen[v as usize] = true);
                seen.iter().filter(|&&s| s).count()
            };
            assert!(distinct > 100, "{distinct} distinct levels");
        }
    }

    #[test]
    fn all_modes_build() {
        assert_eq!(natural_image(4, 5, Mode::Color, 0).pixels().len(), 60);
        assert!(natural_image(8, 8, Mode::Binary, 0)
            .pixels()
            .iter()
            .all(|&v| v <= 1));
    }
}
