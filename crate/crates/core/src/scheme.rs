//! Share generation and recovery for the (n, n+1) scheme.
//!
//! Grayscale and color samples live in Z/256. Encoding divides each secret by
//! `n + 1` to obtain a temporary share `C_i`, sums the temporaries into the
//! server key `SK`, and masks everything with a uniform random matrix `R`:
//!
//! ```text
//! NI_i     = (C_i + SK + R) mod 256          i = 1..n
//! NI_{n+1} = ((n + 1) * (SK + R)) mod 256
//! ```
//!
//! Recovery derives the client key `CK = sum NI_i`, unmasks `R = NI_{n+1} - CK`
//! and returns `RI_i = (n + 1) * NI_i - (CK + R)`, which equals
//! `(n + 1) * C_i`. Temporaries are clamped so that this product never wraps.
//!
//! Binary images use Z/2 with the scalar multiplications dropped. There the
//! client key collapses to `SK` for even `n` and to `R` for odd `n`, and
//! recovery picks the matching branch.

use crate::error::{Error, Result};
use crate::image::{ensure_same_shape, Image, Mode};
use crate::params::{Rounding, SharingParams};
use crate::random::{draw_matrix, draw_session_id, session_rng, RandomMatrix, SessionId};

/// The `n + 1` noisy images of one encoding session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareSet {
    shares: Vec<Image>,
    params: SharingParams,
    session_id: SessionId,
}

impl ShareSet {
    /// Assembles a share set; `shares[i]` is the share with index `i + 1` and
    /// the last one is the key share.
    pub fn new(
        shares: Vec<Image>,
        n: usize,
        mode: Mode,
        rounding: Rounding,
        session_id: SessionId,
    ) -> Result<ShareSet> {
        let params = SharingParams {
            n,
            mode,
            rounding,
            seed: None,
        };
        params.validate()?;
        if shares.len() != params.share_count() {
            return Err(Error::ArityMismatch {
                expected: params.share_count(),
                actual: shares.len(),
            });
        }
        ensure_same_shape(&shares.iter().collect::<Vec<_>>())?;
        if shares[0].mode() != mode {
            return Err(Error::DimensionMismatch {
                index: 0,
                detail: format!(
                    "share mode {} differs from session mode {mode}",
                    shares[0].mode()
                ),
            });
        }
        Ok(ShareSet {
            shares,
            params,
            session_id,
        })
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn mode(&self) -> Mode {
        self.params.mode
    }

    pub fn rounding(&self) -> Rounding {
        self.params.rounding
    }

    /// Session parameters. The seed is never retained.
    pub fn params(&self) -> &SharingParams {
        &self.params
    }

    pub fn session_id(&self) -> SessionId {
        self.session_id
    }

    pub fn height(&self) -> u32 {
        self.shares[0].height()
    }

    pub fn width(&self) -> u32 {
        self.shares[0].width()
    }

    pub fn shares(&self) -> &[Image] {
        &self.shares
    }

    /// Share by its 1-based index.
    pub fn share(&self, index: usize) -> Option<&Image> {
        index.checked_sub(1).and_then(|i| self.shares.get(i))
    }

    pub fn content_shares(&self) -> &[Image] {
        &self.shares[..self.params.n]
    }

    pub fn key_share(&self) -> &Image {
        &self.shares[self.params.n]
    }

    pub fn into_shares(self) -> Vec<Image> {
        self.shares
    }
}

/// Intermediate images produced while decoding a share set.
#[derive(Debug, Clone)]
pub struct Recovery {
    /// `CK`, the modular sum of the content shares.
    pub client_key: Image,
    /// `P_i = (n + 1) * NI_i`; for binary sessions these are the shares themselves.
    pub scaled_shares: Vec<Image>,
    pub random: RandomMatrix,
    pub recovered: Vec<Image>,
}

fn check_secrets(secrets: &[Image], params: &SharingParams) -> Result<()> {
    params.validate()?;
    if secrets.len() != params.n {
        return Err(Error::ArityMismatch {
            expected: params.n,
            actual: secrets.len(),
        });
    }
    ensure_same_shape(&secrets.iter().collect::<Vec<_>>())?;
    if secrets[0].mode() != params.mode {
        return Err(Error::DimensionMismatch {
            index: 0,
            detail: format!(
                "secret mode {} differs from requested mode {}",
                secrets[0].mode(),
                params.mode
            ),
        });
    }
    Ok(())
}

/// Clamped quantization of one sample: `min(q(s / (n + 1)), floor(255 / (n + 1)))`.
pub fn temporary_value(sample: u8, params: &SharingParams) -> u8 {
    let quotient = params
        .rounding
        .quantize(sample.into(), params.share_count() as u32);
    quotient.min(params.temporary_ceiling()) as u8
}

/// Divides each secret by `n + 1` under the session's rounding policy.
///
/// Binary secrets pass through unchanged.
pub fn make_temporary_shares(secrets: &[Image], params: &SharingParams) -> Result<Vec<Image>> {
    check_secrets(secrets, params)?;
    if params.mode == Mode::Binary {
        return Ok(secrets.to_vec());
    }
    let mut table = [0u8; 256];
    for (sample, slot) in table.iter_mut().enumerate() {
        *slot = temporary_value(sample as u8, params);
    }
    Ok(secrets
        .iter()
        .map(|s| {
            let pixels = s.pixels().iter().map(|&v| table[v as usize]).collect();
            Image::from_raw(s.height(), s.width(), s.mode(), pixels)
        })
        .collect())
}

fn modular_sum(images: &[&Image], modulus: u32) -> Vec<u8> {
    let len = images[0].pixels().len();
    let mut acc = vec![0u32; len];
    for img in images {
        for (a, &v) in acc.iter_mut().zip(img.pixels()) {
            *a = (*a + u32::from(v)) % modulus;
        }
    }
    acc.into_iter().map(|v| v as u8).collect()
}

/// Server-side key: elementwise sum of the temporaries modulo the mode's modulus.
pub fn compute_key(temporaries: &[Image]) -> Result<Image> {
    let refs: Vec<&Image> = temporaries.iter().collect();
    let first = refs.first().ok_or(Error::ArityMismatch {
        expected: 1,
        actual: 0,
    })?;
    ensure_same_shape(&refs)?;
    let pixels = modular_sum(&refs, first.mode().modulus());
    Ok(Image::from_raw(
        first.height(),
        first.width(),
        first.mode(),
        pixels,
    ))
}

/// Encodes `n` secrets into `n + 1` shares, drawing the random matrix and
/// session id from the parameter seed (or OS entropy).
///
/// The returned matrix is for inspection only; it is not part of the share set.
pub fn generate_shares(
    secrets: &[Image],
    params: &SharingParams,
) -> Result<(ShareSet, RandomMatrix)> {
    check_secrets(secrets, params)?;
    let first = &secrets[0];
    let mut rng = session_rng(params.seed);
    let random = draw_matrix(&mut rng, first.height(), first.width(), first.mode())?;
    let session_id = draw_session_id(&mut rng);
    let shares = generate_shares_with_matrix(secrets, params, &random, session_id)?;
    Ok((shares, random))
}

/// Deterministic core of [`generate_shares`] with an explicit random matrix.
pub fn generate_shares_with_matrix(
    secrets: &[Image],
    params: &SharingParams,
    random: &RandomMatrix,
    session_id: SessionId,
) -> Result<ShareSet> {
    let temporaries = make_temporary_shares(secrets, params)?;
    let r = random.image();
    if !r.same_shape(&secrets[0]) {
        return Err(Error::DimensionMismatch {
            index: 0,
            detail: format!(
                "random matrix is {}, secrets are {}",
                r.shape_description(),
                secrets[0].shape_description()
            ),
        });
    }
    let server_key = compute_key(&temporaries)?;
    let modulus = params.mode.modulus();
    // the key-share multiplier is dropped in binary mode
    let multiplier = match params.mode {
        Mode::Binary => 1,
        Mode::Grayscale | Mode::Color => params.share_count() as u32,
    };

    let mask: Vec<u32> = server_key
        .pixels()
        .iter()
        .zip(r.pixels())
        .map(|(&sk, &rv)| u32::from(sk) + u32::from(rv))
        .collect();

    let mut shares: Vec<Image> = temporaries
        .iter()
        .map(|c| {
            let pixels = c
                .pixels()
                .iter()
                .zip(&mask)
                .map(|(&cv, &m)| ((u32::from(cv) + m) % modulus) as u8)
                .collect();
            Image::from_raw(c.height(), c.width(), c.mode(), pixels)
        })
        .collect();
    let key_pixels = mask
        .iter()
        .map(|&m| ((multiplier * m) % modulus) as u8)
        .collect();
    shares.push(Image::from_raw(r.height(), r.width(), r.mode(), key_pixels));

    ShareSet::new(shares, params.n, params.mode, params.rounding, session_id)
}

/// Decodes a complete share set into the `n` recovered images and the
/// session's random matrix.
pub fn recover_secrets(shares: &ShareSet) -> Result<(Vec<Image>, RandomMatrix)> {
    let recovery = recover_detailed(shares)?;
    Ok((recovery.recovered, recovery.random))
}

/// Like [`recover_secrets`] but also returns the client key and scaled shares.
pub fn recover_detailed(shares: &ShareSet) -> Result<Recovery> {
    let content: Vec<&Image> = shares.content_shares().iter().collect();
    Ok(recover_parts(&content, shares.key_share()))
}

/// Runs the recovery procedure with `n = content.len()`, treating `key` as
/// share `n + 1`. Shapes must already agree.
pub(crate) fn recover_parts(content: &[&Image], key: &Image) -> Recovery {
    let n = content.len();
    let (height, width, mode) = (key.height(), key.width(), key.mode());
    let modulus = mode.modulus();
    let wrap = |pixels: Vec<u8>| Image::from_raw(height, width, mode, pixels);

    let client_key = if n == 0 {
        vec![0u8; key.pixels().len()]
    } else {
        modular_sum(content, modulus)
    };

    let (scaled_shares, server_key, random) = match mode {
        Mode::Binary => {
            let other: Vec<u8> = key
                .pixels()
                .iter()
                .zip(&client_key)
                .map(|(&k, &ck)| ((u32::from(k) + u32::from(ck)) % 2) as u8)
                .collect();
            let scaled: Vec<Vec<u8>> = content.iter().map(|s| s.pixels().to_vec()).collect();
            // CK equals SK when n is even and R when n is odd
            let (sk, r) = if n.is_multiple_of(2) {
                (client_key.clone(), other)
            } else {
                (other, client_key.clone())
            };
            (scaled, sk, r)
        }
        Mode::Grayscale | Mode::Color => {
            let multiplier = (n + 1) as u32;
            let scaled: Vec<Vec<u8>> = content
                .iter()
                .map(|s| {
                    s.pixels()
                        .iter()
                        .map(|&v| ((multiplier * u32::from(v)) % modulus) as u8)
                        .collect()
                })
                .collect();
            let r: Vec<u8> = key
                .pixels()
                .iter()
                .zip(&client_key)
                .map(|(&k, &ck)| ((u32::from(k) + modulus - u32::from(ck)) % modulus) as u8)
                .collect();
            // recovery subtracts CK + R from every scaled share
            (scaled, client_key.clone(), r)
        }
    };

    let offset: Vec<u32> = server_key
        .iter()
        .zip(&random)
        .map(|(&a, &b)| (u32::from(a) + u32::from(b)) % modulus)
        .collect();
    let recovered = scaled_shares
        .iter()
        .map(|p| {
            let pixels = p
                .iter()
                .zip(&offset)
                .map(|(&pv, &o)| ((u32::from(pv) + modulus - o) % modulus) as u8)
                .collect();
            wrap(pixels)
        })
        .collect();

    Recovery {
        client_key: wrap(client_key),
        scaled_shares: scaled_shares.into_iter().map(wrap).collect(),
        random: RandomMatrix::new(wrap(random)),
        recovered,
    }
}
