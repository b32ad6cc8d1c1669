// Encode five grayscale secrets into six shares and decode them again.
//
//     cargo run --release --example share_and_recover

use msis::metrics::QualityRow;
use msis::{generate_shares, recover_secrets, synthetic, Mode, Rounding, SharingParams};

pub fn run_example() -> msis::Result<()> {
    let secrets = synthetic::natural_set(5, 256, 256, Mode::Grayscale);
    let params = SharingParams::new(5, Mode::Grayscale)
        .with_rounding(Rounding::Round)
        .with_seed(42);

    let (shares, _) = generate_shares(&secrets, &params)?;
    println!(
        "session {} -> {} shares",
        shares.session_id(),
        shares.shares().len()
    );
    for (i, share) in shares.shares().iter().enumerate() {
        let r = msis::metrics::correlation(&secrets[0], share)?;
        println!("  NI{} vs SI1: r = {r}", i + 1);
    }

    let (recovered, _) = recover_secrets(&shares)?;
    for (i, (s, r)) in secrets.iter().zip(&recovered).enumerate() {
        let row = QualityRow::compare(format!("SI{0}-RI{0}", i + 1), s, r)?;
        println!(
            "{}: correlation {} rmse {:.4} psnr {} dB",
            row.pair_label, row.correlation, row.rmse, row.psnr
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> msis::Result<()> {
    run_example()
}
