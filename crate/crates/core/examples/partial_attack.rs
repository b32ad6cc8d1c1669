// Try to reconstruct secrets from fewer than n + 1 shares.
//
//     cargo run --release --example partial_attack

use msis::analysis::{attack_report, AttackCell};
use msis::{generate_shares, synthetic, Mode, SharingParams};

pub fn run_example() -> msis::Result<()> {
    let secrets = synthetic::natural_set(5, 128, 128, Mode::Grayscale);
    let (shares, _) = generate_shares(
        &secrets,
        &SharingParams::new(5, Mode::Grayscale).with_seed(11),
    )?;
    let report = attack_report(&shares, &secrets)?;
    for row in &report.rows {
        let cells: Vec<String> = row
            .cells
            .iter()
            .map(|c| match c {
                AttackCell::Value(r) => format!("{r:>10}"),
                AttackCell::NotApplicable => format!("{:>10}", "NA"),
            })
            .collect();
        println!("NI1..NI{}: {}", row.k, cells.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> msis::Result<()> {
    run_example()
}
