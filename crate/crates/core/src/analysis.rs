//! Evaluation: quality sweeps over rounding policies, partial-share attacks,
//! and encode/decode timing.
//!
//! All tables serialize to CSV with fixed headers:
//!
//! - quality: `rounding,pair,correlation,rmse,psnr_db`
//! - attack:  `k,secret,correlation`
//! - bench:   `n,mode,height,width,encode_seconds,decode_seconds`
//!
//! Not-applicable attack cells are written as `NA`, undefined correlations as
//! `undefined` and infinite PSNR as `inf`.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::image::{ensure_same_shape, Image, Mode};
use crate::metrics::{correlation, Correlation, QualityRow};
use crate::params::{Rounding, SharingParams};
use crate::scheme::{generate_shares, recover_parts, recover_secrets, ShareSet};
use crate::synthetic::natural_set;

pub const QUALITY_CSV_HEADER: &str = "rounding,pair,correlation,rmse,psnr_db";
pub const ATTACK_CSV_HEADER: &str = "k,secret,correlation";
pub const BENCH_CSV_HEADER: &str = "n,mode,height,width,encode_seconds,decode_seconds";

#[derive(Debug, Clone)]
pub struct PolicyTable {
    pub rounding: Rounding,
    pub rows: Vec<QualityRow>,
}

#[derive(Debug, Clone)]
pub struct QualitySweep {
    pub n: usize,
    pub tables: Vec<PolicyTable>,
}

impl QualitySweep {
    pub fn table(&self, rounding: Rounding) -> &PolicyTable {
        self.tables
            .iter()
            .find(|t| t.rounding == rounding)
            .expect("sweep covers every policy")
    }

    pub fn mean_rmse(&self, rounding: Rounding) -> f64 {
        let rows = &self.table(rounding).rows;
        rows.iter().map(|r| r.rmse).sum::<f64>() / rows.len() as f64
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{QUALITY_CSV_HEADER}\n");
        for table in &self.tables {
            for row in &table.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{:.6},{}",
                    table.rounding, row.pair_label, row.correlation, row.rmse, row.psnr
                );
            }
        }
        out
    }
}

/// Label used for the `i`-th secret/recovery pair (1-based).
pub fn pair_label(i: usize) -> String {
    format!("SI{i}-RI{i}")
}

/// Encodes and decodes `secrets` once per rounding policy with the same seed,
/// scoring every secret against its recovery.
pub fn quality_sweep(secrets: &[Image], n: usize, seed: u64) -> Result<QualitySweep> {
    let mode = secrets.first().map(Image::mode).unwrap_or(Mode::Grayscale);
    if mode == Mode::Binary {
        return Err(Error::UnsupportedMode(mode));
    }
    let tables = Rounding::ALL
        .into_iter()
        .map(|rounding| {
            let params = SharingParams::new(n, mode)
                .with_rounding(rounding)
                .with_seed(seed);
            let (shares, _) = generate_shares(secrets, &params)?;
            let (recovered, _) = recover_secrets(&shares)?;
            let rows = secrets
                .iter()
                .zip(&recovered)
                .enumerate()
                .map(|(i, (s, r))| QualityRow::compare(pair_label(i + 1), s, r))
                .collect::<Result<Vec<_>>>()?;
            Ok(PolicyTable { rounding, rows })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QualitySweep { n, tables })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttackCell {
    Value(Correlation),
    NotApplicable,
}

/// Correlations for one share subset `{NI_1, …, NI_k}`; always `n` cells.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackRow {
    pub k: usize,
    pub cells: Vec<AttackCell>,
}

impl AttackRow {
    /// Defined correlation values of the produced candidates.
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.cells.iter().filter_map(|c| match c {
            AttackCell::Value(r) => r.value(),
            AttackCell::NotApplicable => None,
        })
    }
}

/// Rows for `k = n` down to `1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackReport {
    pub n: usize,
    pub rows: Vec<AttackRow>,
}

impl AttackReport {
    pub fn to_csv(&self) -> String {
        let mut out = format!("{ATTACK_CSV_HEADER}\n");
        for row in &self.rows {
            write_attack_row(&mut out, row);
        }
        out
    }
}

fn write_attack_row(out: &mut String, row: &AttackRow) {
    for (i, cell) in row.cells.iter().enumerate() {
        let value = match cell {
            AttackCell::Value(r) => r.to_string(),
            AttackCell::NotApplicable => "NA".to_owned(),
        };
        let _ = writeln!(out, "{},{},{}", row.k, i + 1, value);
    }
}

/// CSV for a single attack row, header included.
pub fn attack_row_csv(row: &AttackRow) -> String {
    let mut out = format!("{ATTACK_CSV_HEADER}\n");
    write_attack_row(&mut out, row);
    out
}

/// Attempts reconstruction from the first `k` shares only.
///
/// The recovery procedure is rerun as if the session had `k - 1` secrets,
/// with `NI_k` standing in for the key share. The `k - 1` candidates are
/// correlated against the matching secrets; the remaining cells are
/// not applicable.
pub fn partial_share_attack(shares: &ShareSet, secrets: &[Image], k: usize) -> Result<AttackRow> {
    let n = shares.n();
    if k == 0 || k > n {
        return Err(Error::SubsetOutOfRange { k, n });
    }
    if secrets.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            actual: secrets.len(),
        });
    }
    let mut all: Vec<&Image> = vec![shares.key_share()];
    all.extend(secrets);
    ensure_same_shape(&all)?;

    let content: Vec<&Image> = shares.shares()[..k - 1].iter().collect();
    let candidates = recover_parts(&content, &shares.shares()[k - 1]).recovered;
    let mut cells = Vec::with_capacity(n);
    for (secret, candidate) in secrets.iter().zip(&candidates) {
        cells.push(AttackCell::Value(correlation(secret, candidate)?));
    }
    cells.resize(n, AttackCell::NotApplicable);
    Ok(AttackRow { k, cells })
}

pub fn attack_report(shares: &ShareSet, secrets: &[Image]) -> Result<AttackReport> {
    let rows = (1..=shares.n())
        .rev()
        .map(|k| partial_share_attack(shares, secrets, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(AttackReport {
        n: shares.n(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub mode: Mode,
    pub height: u32,
    pub width: u32,
    pub encode_seconds: f64,
    pub decode_seconds: f64,
}

impl BenchRecord {
    pub fn total_seconds(&self) -> f64 {
        self.encode_seconds + self.decode_seconds
    }
}

fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(f64::total_cmp);
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / 2.0
    }
}

/// Times encode and decode for every `(n, size)` cell on synthetic secrets.
/// Each cell gets one warm-up run; the reported times are medians.
pub fn benchmark(
    n_values: &[usize],
    sizes: &[(u32, u32)],
    mode: Mode,
    repetitions: usize,
) -> Result<Vec<BenchRecord>> {
    if repetitions < 3 {
        return Err(Error::TooFewRepetitions(repetitions));
    }
    let mut records = Vec::with_capacity(n_values.len() * sizes.len());
    for &n in n_values {
        let params = SharingParams::new(n, mode).with_seed(n as u64);
        params.validate()?;
        for &(height, width) in sizes {
            if height == 0 || width == 0 {
                return Err(Error::InvalidDimensions { height, width });
            }
            let secrets = natural_set(n, height, width, mode);
            let run = || -> Result<(f64, f64)> {
                let start = Instant::now();
                let (shares, _) = generate_shares(&secrets, &params)?;
                let encoded = start.elapsed().as_secs_f64();
                let start = Instant::now();
                let recovered = recover_secrets(&shares)?;
                let decoded = start.elapsed().as_secs_f64();
                std::hint::black_box(recovered);
                Ok((encoded, decoded))
            };
            run()?;
            let mut enc = Vec::with_capacity(repetitions);
            let mut dec = Vec::with_capacity(repetitions);
            for _ in 0..repetitions {
                let (e, d) = run()?;
                enc.push(e);
                dec.push(d);
            }
            records.push(BenchRecord {
                n,
                mode,
                height,
                width,
                encode_seconds: median(&mut enc),
                decode_seconds: median(&mut dec),
            });
        }
    }
    Ok(records)
}

pub fn bench_csv(records: &[BenchRecord]) -> String {
    let mut out = format!("{BENCH_CSV_HEADER}\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6},{:.6}",
            r.n, r.mode, r.height, r.width, r.encode_seconds, r.decode_seconds
        );
    }
    out
}
