// Persist a session as share files plus a manifest, then load and decode.
//
//     cargo run --example share_files

use msis::{
    generate_shares, load_share, recover_secrets, save_share, synthetic, Manifest, Mode, ShareSet,
    SharingParams,
};

pub fn run_example() -> msis::Result<()> {
    let dir = tempfile::tempdir().expect("temporary directory");
    let secrets = synthetic::natural_set(2, 40, 60, Mode::Grayscale);
    let (set, _) = generate_shares(
        &secrets,
        &SharingParams::new(2, Mode::Grayscale).with_seed(1),
    )?;

    let mut names = Vec::new();
    for container in set.to_containers() {
        let name = format!("share_{:02}.msis", container.share_index);
        save_share(&container, dir.path().join(&name))?;
        names.push(name);
    }
    let manifest = Manifest::for_share_set(&set, names.clone());
    print!("{}", manifest.to_text());

    let loaded = names
        .iter()
        .rev()
        .map(|n| load_share(dir.path().join(n)))
        .collect::<msis::Result<Vec<_>>>()?;
    let reassembled = ShareSet::from_containers(loaded)?;
    assert_eq!(reassembled, set);
    let (recovered, _) = recover_secrets(&reassembled)?;
    println!(
        "recovered {} images of {}x{}",
        recovered.len(),
        recovered[0].height(),
        recovered[0].width()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> msis::Result<()> {
    run_example()
}
