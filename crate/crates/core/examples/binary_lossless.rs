// Binary secrets use arithmetic modulo 2 and come back bit-exact.
//
//     cargo run --example binary_lossless

use msis::{generate_shares, recover_secrets, synthetic, Mode, SharingParams};

pub fn run_example() -> msis::Result<()> {
    for n in 2..=5 {
        let secrets = synthetic::natural_set(n, 64, 80, Mode::Binary);
        let params = SharingParams::new(n, Mode::Binary).with_seed(n as u64);
        let (shares, random) = generate_shares(&secrets, &params)?;
        let (recovered, recovered_random) = recover_secrets(&shares)?;
        assert_eq!(recovered, secrets);
        assert_eq!(recovered_random, random);
        println!("n = {n}: {} shares, recovery exact", shares.shares().len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> msis::Result<()> {
    run_example()
}
