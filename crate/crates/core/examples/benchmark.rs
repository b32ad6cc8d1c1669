// Median encode/decode times across n and image size, as CSV.
//
//     cargo run --release --example benchmark

use msis::analysis::{bench_csv, benchmark};
use msis::Mode;

pub fn run_example() -> msis::Result<()> {
    for mode in [Mode::Binary, Mode::Grayscale, Mode::Color] {
        let records = benchmark(&[2, 3, 5], &[(64, 64), (128, 128)], mode, 3)?;
        print!("{}", bench_csv(&records));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> msis::Result<()> {
    run_example()
}
