//! `(n, n+1)` multi-secret image sharing.
//!
//! `n` secret images of equal shape are encoded into `n + 1` noise-like
//! shares using additive modular arithmetic; all `n + 1` shares are needed to
//! decode. Grayscale and color images work modulo 256 and are recovered up to
//! a small quantization error, binary images work modulo 2 and are recovered
//! exactly.
//!
//! ```
//! use msis::{generate_shares, recover_secrets, synthetic, Mode, SharingParams};
//!
//! let secrets = synthetic::natural_set(3, 32, 32, Mode::Grayscale);
//! let params = SharingParams::new(3, Mode::Grayscale).with_seed(7);
//! let (shares, _) = generate_shares(&secrets, &params).unwrap();
//! assert_eq!(shares.shares().len(), 4);
//!
//! let (recovered, _) = recover_secrets(&shares).unwrap();
//! let rmse = msis::metrics::rmse(&secrets[0], &recovered[0]).unwrap();
//! assert!(rmse < 2.5);
//! ```

pub mod analysis;
pub mod container;
mod error;
mod image;
pub mod imageio;
pub mod metrics;
mod params;
mod random;
pub mod scheme;
pub mod synthetic;

pub use crate::container::{load_share, save_share, Manifest, ShareContainer};
pub use crate::error::{Error, Result};
pub use crate::image::{Image, Mode};
pub use crate::imageio::{load_image, save_image};
pub use crate::params::{Rounding, SharingParams};
pub use crate::random::{generate_random_matrix, RandomMatrix, SessionId};
pub use crate::scheme::{
    compute_key, generate_shares, generate_shares_with_matrix, make_temporary_shares,
    recover_detailed, recover_secrets, Recovery, ShareSet,
};
