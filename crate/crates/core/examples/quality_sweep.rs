// Compare floor, ceil and round quantization on the same secrets and seed.
//
//     cargo run --release --example quality_sweep

use msis::analysis::quality_sweep;
use msis::{synthetic, Mode, Rounding};

pub fn run_example() -> msis::Result<()> {
    let secrets = synthetic::natural_set(5, 128, 128, Mode::Grayscale);
    let sweep = quality_sweep(&secrets, 5, 2024)?;
    print!("{}", sweep.to_csv());
    for rounding in Rounding::ALL {
        println!("# mean rmse {rounding}: {:.4}", sweep.mean_rmse(rounding));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> msis::Result<()> {
    run_example()
}
