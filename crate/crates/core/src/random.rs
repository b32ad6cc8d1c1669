use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::image::{Image, Mode};

/// Uniform random mask mixed into every share of a session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomMatrix(Image);

impl RandomMatrix {
    pub fn new(image: Image) -> RandomMatrix {
        RandomMatrix(image)
    }

    pub fn image(&self) -> &Image {
        &self.0
    }

    pub fn into_image(self) -> Image {
        self.0
    }
}

/// 128-bit identifier binding the shares of one encoding session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SessionId(pub [u8; 16]);

impl SessionId {
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(text: &str) -> Option<SessionId> {
        let mut bytes = [0u8; 16];
        hex::decode_to_slice(text.trim(), &mut bytes).ok()?;
        Some(SessionId(bytes))
    }
}

impl fmt::Display for SessionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// ChaCha20 stream, seeded for reproducibility or from OS entropy otherwise.
pub(crate) fn session_rng(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(seed) => ChaCha20Rng::seed_from_u64(seed),
        None => ChaCha20Rng::from_os_rng(),
    }
}

pub(crate) fn draw_matrix(
    rng: &mut impl RngCore,
    height: u32,
    width: u32,
    mode: Mode,
) -> Result<RandomMatrix> {
    if height == 0 || width == 0 {
        return Err(Error::InvalidDimensions { height, width });
    }
    let mut pixels = vec![0u8; height as usize * width as usize * mode.channels()];
    rng.fill_bytes(&mut pixels);
    if mode == Mode::Binary {
        pixels.iter_mut().for_each(|v| *v &= 1);
    }
    Ok(RandomMatrix(Image::from_raw(height, width, mode, pixels)))
}

pub(crate) fn draw_session_id(rng: &mut impl RngCore) -> SessionId {
    let mut bytes = [0u8; 16];
    rng.fill_bytes(&mut bytes);
    SessionId(bytes)
}

/// Draws an i.i.d. uniform matrix over `[0, M - 1]` per channel.
pub fn generate_random_matrix(
    height: u32,
    width: u32,
    mode: Mode,
    seed: Option<u64>,
) -> Result<RandomMatrix> {
    draw_matrix(&mut session_rng(seed), height, width, mode)
}
