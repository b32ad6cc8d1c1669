// Write synthetic secret images for trying out the `msis` binary.
//
//     cargo run --example make_samples -- DIR [COUNT] [SIDE] [MODE]

use std::path::Path;

use msis::imageio::default_extension;
use msis::{save_image, synthetic, Mode};

pub fn write_samples(dir: &Path, count: usize, side: u32, mode: Mode) -> msis::Result<Vec<String>> {
    std::fs::create_dir_all(dir).ok();
    let mut written = Vec::new();
    for (i, img) in synthetic::natural_set(count, side, side, mode)
        .iter()
        .enumerate()
    {
        let path = dir.join(format!("secret_{:02}.{}", i + 1, default_extension(mode)));
        save_image(img, &path)?;
        written.push(path.display().to_string());
    }
    Ok(written)
}

pub fn run_example() -> msis::Result<()> {
    let dir = tempfile::tempdir().expect("temporary directory");
    for mode in [Mode::Binary, Mode::Grayscale, Mode::Color] {
        let files = write_samples(dir.path(), 2, 16, mode)?;
        let back = msis::load_image(&files[0])?;
        assert_eq!(back, synthetic::natural_image(16, 16, mode, 0));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> msis::Result<()> {
    let mut args = std::env::args().skip(1);
    let Some(dir) = args.next() else {
        eprintln!("usage: make_samples DIR [COUNT] [SIDE] [MODE]");
        std::process::exit(1);
    };
    let count = args.next().and_then(|a| a.parse().ok()).unwrap_or(5);
    let side = args.next().and_then(|a| a.parse().ok()).unwrap_or(512);
    let mode = args
        .next()
        .and_then(|a| Mode::from_name(&a))
        .unwrap_or(Mode::Grayscale);
    for path in write_samples(Path::new(&dir), count, side, mode)? {
        println!("{path}");
    }
    Ok(())
}
