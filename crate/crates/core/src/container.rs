//! Share file format and session manifest.
//!
//! A share file is a 35-byte big-endian header followed by the raw payload:
//!
//! | offset | size | field                                        |
//! |-------:|-----:|----------------------------------------------|
//! |      0 |    4 | magic `MSIS`                                 |
//! |      4 |    1 | version `0x01`                               |
//! |      5 |    1 | mode: 0 binary, 1 grayscale, 2 color         |
//! |      6 |    1 | rounding: 0 floor, 1 ceil, 2 round           |
//! |      7 |    2 | n                                            |
//! |      9 |    2 | share index, 1-based; `n + 1` is the key     |
//! |     11 |    4 | height                                       |
//! |     15 |    4 | width                                        |
//! |     19 |   16 | session id                                   |
//! |     35 |    … | payload                                      |
//!
//! Grayscale and color payloads are row-major, channel-interleaved bytes.
//! Binary payloads pack 8 pixels per byte, MSB first, with each row padded to
//! a byte boundary using zero bits.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::{Image, Mode};
use crate::imageio::{pack_bits, write_atomic};
use crate::params::Rounding;
use crate::random::SessionId;
use crate::scheme::ShareSet;

pub const MAGIC: [u8; 4] = *b"MSIS";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 35;

/// One persisted share together with the session metadata it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareContainer {
    pub mode: Mode,
    pub rounding: Rounding,
    pub n: u16,
    pub share_index: u16,
    pub session_id: SessionId,
    pub image: Image,
}

fn mode_byte(mode: Mode) -> u8 {
    match mode {
        Mode::Binary => 0x00,
        Mode::Grayscale => 0x01,
        Mode::Color => 0x02,
    }
}

fn rounding_byte(rounding: Rounding) -> u8 {
    match rounding {
        Rounding::Floor => 0x00,
        Rounding::Ceil => 0x01,
        Rounding::Round => 0x02,
    }
}

fn payload_len(mode: Mode, height: u32, width: u32) -> Option<usize> {
    let (h, w) = (u64::from(height), u64::from(width));
    let len = match mode {
        Mode::Binary => h.checked_mul(w.div_ceil(8))?,
        _ => h.checked_mul(w)?.checked_mul(mode.channels() as u64)?,
    };
    usize::try_from(len).ok()
}

impl ShareContainer {
    pub fn is_key_share(&self) -> bool {
        self.share_index == self.n + 1
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let img = &self.image;
        let mut out = Vec::with_capacity(HEADER_LEN + img.pixels().len());
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(mode_byte(self.mode));
        out.push(rounding_byte(self.rounding));
        out.extend_from_slice(&self.n.to_be_bytes());
        out.extend_from_slice(&self.share_index.to_be_bytes());
        out.extend_from_slice(&img.height().to_be_bytes());
        out.extend_from_slice(&img.width().to_be_bytes());
        out.extend_from_slice(&self.session_id.0);
        match self.mode {
            Mode::Binary => out.extend(pack_bits(img.pixels(), img.width() as usize)),
            _ => out.extend_from_slice(img.pixels()),
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<ShareContainer> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::CorruptFile(format!(
                "header needs {HEADER_LEN} bytes, found {}",
                bytes.len()
            )));
        }
        if bytes[..4] != MAGIC {
            return Err(Error::CorruptFile(format!(
                "bad magic {:02x?}",
                &bytes[..4]
            )));
        }
        if bytes[4] != VERSION {
            return Err(Error::CorruptFile(format!(
                "unsupported version {}",
                bytes[4]
            )));
        }
        let mode = match bytes[5] {
            0x00 => Mode::Binary,
            0x01 => Mode::Grayscale,
            0x02 => Mode::Color,
            b => return Err(Error::CorruptFile(format!("unknown mode byte {b:#04x}"))),
        };
        let rounding = match bytes[6] {
            0x00 => Rounding::Floor,
            0x01 => Rounding::Ceil,
            0x02 => Rounding::Round,
            b => {
                return Err(Error::CorruptFile(format!(
                    "unknown rounding byte {b:#04x}"
                )))
            }
        };
        let be16 = |at: usize| u16::from_be_bytes([bytes[at], bytes[at + 1]]);
        let be32 = |at: usize| u32::from_be_bytes(bytes[at..at + 4].try_into().unwrap());
        let n = be16(7);
        let share_index = be16(9);
        let height = be32(11);
        let width = be32(15);
        let session_id = SessionId(bytes[19..35].try_into().unwrap());

        if n == u16::MAX || share_index == 0 || share_index > n + 1 {
            return Err(Error::CorruptFile(format!(
                "share index {share_index} outside [1, {}]",
                u32::from(n) + 1
            )));
        }
        if height == 0 || width == 0 {
            return Err(Error::CorruptFile(format!("dimensions {height}x{width}")));
        }
        let payload = &bytes[HEADER_LEN..];
        let expected = payload_len(mode, height, width)
            .ok_or_else(|| Error::CorruptFile(format!("dimensions {height}x{width} too large")))?;
        if payload.len() != expected {
            return Err(Error::CorruptFile(format!(
                "payload length mismatch: expected {expected} bytes, found {}",
                payload.len()
            )));
        }

        let pixels = match mode {
            Mode::Binary => unpack_rows(payload, width as usize)?,
            _ => payload.to_vec(),
        };
        let image = Image::new(height, width, mode, pixels)?;
        Ok(ShareContainer {
            mode,
            rounding,
            n,
            share_index,
            session_id,
            image,
        })
    }
}

fn unpack_rows(payload: &[u8], width: usize) -> Result<Vec<u8>> {
    let row_bytes = width.div_ceil(8);
    let pad = row_bytes * 8 - width;
    let mut pixels = Vec::with_capacity(payload.len() * 8);
    for (row_no, row) in payload.chunks_exact(row_bytes).enumerate() {
        if pad > 0 && row[row_bytes - 1] & ((1u8 << pad) - 1) != 0 {
            return Err(Error::CorruptFile(format!(
                "row {row_no} has nonzero padding bits"
            )));
        }
        pixels.extend((0..width).map(|x| (row[x / 8] >> (7 - x % 8)) & 1));
    }
    Ok(pixels)
}

pub fn save_share(container: &ShareContainer, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), &container.to_bytes())
}

pub fn load_share(path: impl AsRef<Path>) -> Result<ShareContainer> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    ShareContainer::from_bytes(&bytes)
}

impl ShareSet {
    /// Splits the set into one container per share, indices `1..=n+1`.
    pub fn to_containers(&self) -> Vec<ShareContainer> {
        self.shares()
            .iter()
            .enumerate()
            .map(|(i, image)| ShareContainer {
                mode: self.mode(),
                rounding: self.rounding(),
                n: self.n() as u16,
                share_index: (i + 1) as u16,
                session_id: self.session_id(),
                image: image.clone(),
            })
            .collect()
    }

    /// Reassembles a complete share set. Every index `1..=n+1` must occur
    /// exactly once, all from one session with matching metadata and shape.
    pub fn from_containers(containers: Vec<ShareContainer>) -> Result<ShareSet> {
        let first = containers.first().ok_or(Error::ArityMismatch {
            expected: 3,
            actual: 0,
        })?;
        let (session, n, mode, rounding) = (first.session_id, first.n, first.mode, first.rounding);
        for c in &containers {
            if c.session_id != session {
                return Err(Error::ManifestMismatch(format!(
                    "share {} is from session {}, share {} from {}",
                    first.share_index, session, c.share_index, c.session_id
                )));
            }
            if (c.n, c.mode, c.rounding) != (n, mode, rounding) {
                return Err(Error::ManifestMismatch(format!(
                    "share {} header disagrees with share {} (n, mode or rounding)",
                    c.share_index, first.share_index
                )));
            }
        }

        let mut by_index = BTreeMap::new();
        for c in containers {
            let index = c.share_index;
            if by_index.insert(index, c).is_some() {
                return Err(Error::DuplicateShareIndex(index));
            }
        }
        let missing: Vec<u16> = (1..=n + 1).filter(|i| !by_index.contains_key(i)).collect();
        if !missing.is_empty() {
            return Err(Error::MissingShares(missing));
        }
        let images = by_index.into_values().map(|c| c.image).collect();
        ShareSet::new(images, n.into(), mode, rounding, session)
    }
}

/// Human-readable `key=value` summary written beside the share files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub session_id: SessionId,
    pub n: usize,
    pub mode: Mode,
    pub height: u32,
    pub width: u32,
    pub rounding: Rounding,
    pub shares: Vec<String>,
}

impl Manifest {
    pub fn for_share_set(set: &ShareSet, share_files: Vec<String>) -> Manifest {
        Manifest {
            session_id: set.session_id(),
            n: set.n(),
            mode: set.mode(),
            height: set.height(),
            width: set.width(),
            rounding: set.rounding(),
            shares: share_files,
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "session_id={}\nn={}\nmode={}\nheight={}\nwidth={}\nrounding={}\nshares={}\n",
            self.session_id,
            self.n,
            self.mode,
            self.height,
            self.width,
            self.rounding,
            self.shares.join(",")
        )
    }

    pub fn parse(text: &str) -> Result<Manifest> {
        let mut fields = BTreeMap::new();
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::CorruptFile(format!("manifest line without '=': {line}")))?;
            fields.insert(k.trim(), v.trim());
        }
        let get = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| Error::CorruptFile(format!("manifest missing {key}")))
        };
        let bad = |key: &str| Error::CorruptFile(format!("manifest has invalid {key}"));
        Ok(Manifest {
            session_id: SessionId::from_hex(get("session_id")?).ok_or_else(|| bad("session_id"))?,
            n: get("n")?.parse().map_err(|_| bad("n"))?,
            mode: Mode::from_name(get("mode")?).ok_or_else(|| bad("mode"))?,
            height: get("height")?.parse().map_err(|_| bad("height"))?,
            width: get("width")?.parse().map_err(|_| bad("width"))?,
            rounding: Rounding::from_name(get("rounding")?).ok_or_else(|| bad("rounding"))?,
            shares: get("shares")?
                .split(',')
                .filter(|s| !s.is_empty())
                .map(str::to_owned)
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::SharingParams;
    use crate::scheme::generate_shares;

    fn sample(mode: Mode, n: usize) -> ShareSet {
        let secrets: Vec<Image> = (0..n)
            .map(|i| {
                Image::from_fn(3, 11, mode, |r, c, ch| {
                    (((r * 11 + c) as u8).wrapping_mul(7 + i as u8) ^ ch as u8) & mode.max_value()
                })
                .unwrap()
            })
            .collect();
        generate_shares(&secrets, &SharingParams::new(n, mode).with_seed(5))
            .unwrap()
            .0
    }

    #[test]
    fn header_layout_is_pinned() {
        let image = Image::new(1, 2, Mode::Grayscale, vec![0xaa, 0x55]).unwrap();
        let c = ShareContainer {
            mode: Mode::Grayscale,
            rounding: Rounding::Round,
            n: 5,
            share_index: 6,
            session_id: SessionId(*b"0123456789abcdef"),
            image,
        };
        let mut golden =
            b"MSIS\x01\x01\x02\x00\x05\x00\x06\x00\x00\x00\x01\x00\x00\x00\x02".to_vec();
        golden.extend_from_slice(b"0123456789abcdef");
        golden.extend([0xaa, 0x55]);
        assert_eq!(c.to_bytes(), golden);
        assert!(c.is_key_share());
        assert_eq!(ShareContainer::from_bytes(&golden).unwrap(), c);
    }

    #[test]
    fn binary_payload_is_packed() {
        let image = Image::new(
            2,
            9,
            Mode::Binary,
            vec![1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        )
        .unwrap();
        let c = ShareContainer {
            mode: Mode::Binary,
            rounding: Rounding::Floor,
            n: 2,
            share_index: 1,
            session_id: SessionId([0; 16]),
            image,
        };
        let bytes = c.to_bytes();
        assert_eq!(
            &bytes[HEADER_LEN..],
            &[0b1000_0001, 0b1000_0000, 0b0100_0000, 0]
        );
        assert_eq!(ShareContainer::from_bytes(&bytes).unwrap(), c);

        let mut dirty = bytes.clone();
        dirty[HEADER_LEN + 1] |= 1;
        assert!(matches!(
            ShareContainer::from_bytes(&dirty),
            Err(Error::CorruptFile(_))
        ));
    }

    #[test]
    fn truncated_payload_reports_counts() {
        let c = &sample(Mode::Grayscale, 2).to_containers()[0];
        let bytes = c.to_bytes();
        let err = ShareContainer::from_bytes(&bytes[..bytes.len() - 1]).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, Error::CorruptFile(_)));
        assert!(
            msg.contains("expected 33") && msg.contains("found 32"),
            "{msg}"
        );
    }

    #[test]
    fn bad_index_and_enums_rejected() {
        let bytes = sample(Mode::Color, 3).to_containers()[0].to_bytes();
        for (offset, value) in [(5, 7u8), (6, 9), (10, 0), (10, 5)] {
            let mut m = bytes.clone();
            m[offset] = value;
            assert!(
                matches!(ShareContainer::from_bytes(&m), Err(Error::CorruptFile(_))),
                "{offset}"
            );
        }
    }

    #[test]
    fn reassembly_checks() {
        let set = sample(Mode::Grayscale, 3);
        let containers = set.to_containers();
        let mut reversed = containers.clone();
        reversed.reverse();
        assert_eq!(ShareSet::from_containers(reversed).unwrap(), set);

        let mut dup = containers.clone();
        dup[1] = dup[0].clone();
        assert!(matches!(
            ShareSet::from_containers(dup),
            Err(Error::DuplicateShareIndex(1))
        ));

        let partial = containers[..3].to_vec();
        match ShareSet::from_containers(partial) {
            Err(Error::MissingShares(m)) => assert_eq!(m, vec![4]),
            other => panic!("{other:?}"),
        }

        let other = sample(Mode::Grayscale, 3);
        let mut mixed = containers.clone();
        mixed[2] = other.to_containers()[2].clone();
        mixed[2].session_id = SessionId([9; 16]);
        assert!(matches!(
            ShareSet::from_containers(mixed),
            Err(Error::ManifestMismatch(_))
        ));
    }

    #[test]
    fn manifest_round_trip() {
        let set = sample(Mode::Binary, 4);
        let m = Manifest::for_share_set(&set, vec!["share_01.msis".into(), "share_02.msis".into()]);
        let text = m.to_text();
        assert!(text.contains("mode=binary\n"));
        assert_eq!(Manifest::parse(&text).unwrap(), m);
        assert!(Manifest::parse("n=2").is_err());
    }
}
