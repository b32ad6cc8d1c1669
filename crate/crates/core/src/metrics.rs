//! Correlation, RMSE and PSNR between image pairs.

use std::fmt;

use crate::error::{Error, Result};
use crate::image::{Image, Mode};

/// Pearson correlation, or `Undefined` when either input has zero variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Correlation {
    Defined(f64),
    Undefined,
}

impl Correlation {
    pub fn value(self) -> Option<f64> {
        match self {
            Correlation::Defined(r) => Some(r),
            Correlation::Undefined => None,
        }
    }
}

impl fmt::Display for Correlation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Correlation::Defined(r) => write!(f, "{r:.6}"),
            Correlation::Undefined => f.write_str("undefined"),
        }
    }
}

/// Peak signal-to-noise ratio in dB; `Infinite` exactly when the RMSE is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Finite(f64),
    Infinite,
}

impl Psnr {
    pub fn db(self) -> f64 {
        match self {
            Psnr::Finite(v) => v,
            Psnr::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Finite(v) => write!(f, "{v:.4}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

/// One line of a quality table.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityRow {
    pub pair_label: String,
    pub correlation: Correlation,
    pub rmse: f64,
    pub psnr: Psnr,
}

impl QualityRow {
    pub fn compare(pair_label: impl Into<String>, a: &Image, b: &Image) -> Result<QualityRow> {
        Ok(QualityRow {
            pair_label: pair_label.into(),
            correlation: correlation(a, b)?,
            rmse: rmse(a, b)?,
            psnr: psnr(a, b)?,
        })
    }
}

fn check_pair(a: &Image, b: &Image) -> Result<()> {
    if a.same_shape(b) {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            index: 1,
            detail: format!(
                "expected {}, found {}",
                a.shape_description(),
                b.shape_description()
            ),
        })
    }
}

/// Pearson correlation over all samples, computed from exact integer sums:
///
/// ```text
/// r = (N Σpq − Σp Σq) / sqrt((N Σp² − (Σp)²)(N Σq² − (Σq)²))
/// ```
pub fn correlation(a: &Image, b: &Image) -> Result<Correlation> {
    check_pair(a, b)?;
    let (mut sp, mut sq, mut spp, mut sqq, mut spq) = (0u64, 0u64, 0u64, 0u64, 0u64);
    for (&p, &q) in a.pixels().iter().zip(b.pixels()) {
        let (p, q) = (u64::from(p), u64::from(q));
        sp += p;
        sq += q;
        spp += p * p;
        sqq += q * q;
        spq += p * q;
    }
    let n = a.pixels().len() as i128;
    let (sp, sq) = (i128::from(sp), i128::from(sq));
    let numerator = n * i128::from(spq) - sp * sq;
    let var_p = n * i128::from(spp) - sp * sp;
    let var_q = n * i128::from(sqq) - sq * sq;
    if var_p == 0 || var_q == 0 {
        return Ok(Correlation::Undefined);
    }
    let r = numerator as f64 / ((var_p as f64).sqrt() * (var_q as f64).sqrt());
    Ok(Correlation::Defined(r.clamp(-1.0, 1.0)))
}

/// Pearson correlation of real-valued samples, mean-centred in two passes.
pub fn correlation_of_samples(p: &[f64], q: &[f64]) -> Correlation {
    assert_eq!(p.len(), q.len(), "sample lengths differ");
    if p.is_empty() {
        return Correlation::Undefined;
    }
    let len = p.len() as f64;
    let mp = p.iter().sum::<f64>() / len;
    let mq = q.iter().sum::<f64>() / len;
    let (mut cov, mut vp, mut vq) = (0.0, 0.0, 0.0);
    for (&x, &y) in p.iter().zip(q) {
        let (dx, dy) = (x - mp, y - mq);
        cov += dx * dy;
        vp += dx * dx;
        vq += dy * dy;
    }
    if vp == 0.0 || vq == 0.0 {
        return Correlation::Undefined;
    }
    Correlation::Defined((cov / (vp.sqrt() * vq.sqrt())).clamp(-1.0, 1.0))
}

/// Root mean square error over every channel sample.
pub fn rmse(a: &Image, b: &Image) -> Result<f64> {
    check_pair(a, b)?;
    let sum: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = u64::from(x.abs_diff(y));
            d * d
        })
        .sum();
    Ok((sum as f64 / a.pixels().len() as f64).sqrt())
}

/// Peak used for an image mode: 1 for binary, 255 otherwise.
pub fn peak_for(mode: Mode) -> f64 {
    f64::from(mode.max_value())
}

/// `20 log10(peak / rmse)`.
pub fn psnr_from_rmse(rmse: f64, peak: f64) -> Psnr {
    if rmse == 0.0 {
        Psnr::Infinite
    } else {
        Psnr::Finite(20.0 * (peak / rmse).log10())
    }
}

pub fn psnr(a: &Image, b: &Image) -> Result<Psnr> {
    Ok(psnr_from_rmse(rmse(a, b)?, peak_for(a.mode())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray(values: &[u8]) -> Image {
        Image::new(1, values.len() as u32, Mode::Grayscale, values.to_vec()).unwrap()
    }

    fn ramp() -> Image {
        Image::from_fn(16, 16, Mode::Grayscale, |r, c, _| {
            ((r * 37 + c * 11) % 251) as u8
        })
        .unwrap()
    }

    #[test]
    fn self_and_negated_correlation() {
        let img = ramp();
        let neg = Image::new(
            16,
            16,
            Mode::Grayscale,
            img.pixels().iter().map(|v| 255 - v).collect(),
        )
        .unwrap();
        let r = correlation(&img, &img).unwrap().value().unwrap();
        assert!((r - 1.0).abs() <= 1e-12);
        let r = correlation(&img, &neg).unwrap().value().unwrap();
        assert!((r + 1.0).abs() <= 1e-12);
    }

    #[test]
    fn constant_image_is_undefined() {
        let flat = Image::filled(4, 4, Mode::Grayscale, 7).unwrap();
        let other = Image::from_fn(4, 4, Mode::Grayscale, |r, c, _| (r + c) as u8).unwrap();
        assert_eq!(correlation(&flat, &other).unwrap(), Correlation::Undefined);
        assert_eq!(correlation(&other, &flat).unwrap(), Correlation::Undefined);
    }

    #[test]
    fn rmse_scalar_example() {
        // sqrt((9 + 16) / 2)
        let v = rmse(&gray(&[0, 0]), &gray(&[3, 4])).unwrap();
        assert!((v - 3.535_533_905_932_737_6).abs() < 1e-12);
        assert_eq!(rmse(&ramp(), &ramp()).unwrap(), 0.0);
    }

    #[test]
    fn psnr_examples() {
        assert_eq!(psnr_from_rmse(255.0, 255.0), Psnr::Finite(0.0));
        let db = psnr_from_rmse(1.7796, 255.0).db();
        assert!((db - 43.1244).abs() < 1e-4, "{db}");
        assert_eq!(psnr(&ramp(), &ramp()).unwrap(), Psnr::Infinite);
        assert_eq!(Psnr::Infinite.to_string(), "inf");
    }

    #[test]
    fn binary_psnr_uses_unit_peak() {
        let a = Image::new(1, 4, Mode::Binary, vec![0, 1, 0, 1]).unwrap();
        let b = Image::new(1, 4, Mode::Binary, vec![1, 1, 0, 1]).unwrap();
        // rmse = 0.5
        let db = psnr(&a, &b).unwrap().db();
        assert!((db - 20.0 * 2f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn mismatched_shapes_rejected() {
        assert!(rmse(&gray(&[1, 2]), &gray(&[1])).is_err());
        assert!(correlation(&gray(&[1, 2]), &gray(&[1])).is_err());
        let c = Image::filled(1, 2, Mode::Color, 0).unwrap();
        assert!(psnr(&gray(&[1, 2]), &c).is_err());
    }

    #[test]
    fn image_and_sample_routes_agree() {
        let a = ramp();
        let b = Image::from_fn(16, 16, Mode::Grayscale, |r, c, _| {
            ((r * r + 3 * c) % 256) as u8
        })
        .unwrap();
        let exact = correlation(&a, &b).unwrap().value().unwrap();
        let pa: Vec<f64> = a.pixels().iter().map(|&v| v.into()).collect();
        let pb: Vec<f64> = b.pixels().iter().map(|&v| v.into()).collect();
        let real = correlation_of_samples(&pa, &pb).value().unwrap();
        assert!((exact - real).abs() < 1e-12);
    }
}
