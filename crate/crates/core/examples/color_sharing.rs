// Color images are shared channel by channel with one 3-channel random matrix.
//
//     cargo run --example color_sharing

use msis::metrics::{psnr, rmse};
use msis::{generate_shares, recover_secrets, synthetic, Mode, SharingParams};

pub fn run_example() -> msis::Result<()> {
    let secrets = synthetic::natural_set(3, 96, 128, Mode::Color);
    let params = SharingParams::new(3, Mode::Color).with_seed(3);
    let (shares, random) = generate_shares(&secrets, &params)?;
    assert_eq!(random.image().channels(), 3);

    let (recovered, _) = recover_secrets(&shares)?;
    for (i, (s, r)) in secrets.iter().zip(&recovered).enumerate() {
        println!(
            "RI{}: rmse {:.4}, psnr {} dB",
            i + 1,
            rmse(s, r)?,
            psnr(s, r)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> msis::Result<()> {
    run_example()
}
