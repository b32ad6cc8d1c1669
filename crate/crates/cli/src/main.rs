//! `msis`: encode, decode and analyse multi-secret image shares.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 I/O error. Every
//! failure prints one `error: <code>: <detail>` line to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use msis::analysis::{attack_report, attack_row_csv, bench_csv, benchmark, partial_share_attack};
use msis::imageio::{default_extension, write_atomic};
use msis::metrics::QualityRow;
use msis::{
    generate_shares, load_image, load_share, recover_secrets, save_image, save_share, Error, Image,
    Manifest, Mode, Rounding, ShareSet, SharingParams,
};

#[derive(Parser)]
#[command(name = "msis", version, about = "(n, n+1) multi-secret image sharing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode n secret images into n+1 share files.
    Encode {
        #[arg(required = true)]
        secrets: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "round", value_parser = parse_rounding)]
        rounding: Rounding,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Recover the secrets from a complete set of share files.
    Decode {
        #[arg(required = true)]
        shares: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Output extension (pgm, ppm, pbm, pnm, png); defaults by mode.
        #[arg(long)]
        ext: Option<String>,
    },
    /// Print correlation, RMSE and PSNR between two images.
    Metrics { a: PathBuf, b: PathBuf },
    /// Correlate partial reconstructions from share prefixes with the secrets.
    Attack {
        #[arg(long, num_args = 1.., required = true)]
        shares: Vec<PathBuf>,
        #[arg(long, num_args = 1.., required = true)]
        secrets: Vec<PathBuf>,
        /// Subset size; all k = n..1 when omitted.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Time encode and decode over synthetic secrets.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        n: Vec<usize>,
        /// Square side lengths or HxW pairs.
        #[arg(long, value_delimiter = ',', default_value = "512", value_parser = parse_size)]
        size: Vec<(u32, u32)>,
        #[arg(long, default_value = "grayscale", value_parser = parse_mode)]
        mode: Mode,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_rounding(s: &str) -> Result<Rounding, String> {
    Rounding::from_name(s).ok_or_else(|| format!("expected floor, ceil or round, got {s:?}"))
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::from_name(s).ok_or_else(|| format!("expected binary, grayscale or color, got {s:?}"))
}

fn parse_size(s: &str) -> Result<(u32, u32), String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once(['x', 'X']) {
        Some((h, w)) => Ok((parse(h)?, parse(w)?)),
        None => parse(s).map(|v| (v, v)),
    }
}

enum Failure {
    Usage(String),
    Data { code: String, detail: String },
    Io(String),
}

impl Failure {
    fn data(code: &str, detail: impl Into<String>) -> Failure {
        Failure::Data {
            code: code.to_owned(),
            detail: detail.into(),
        }
    }

    fn report(&self) -> ExitCode {
        match self {
            Failure::Usage(detail) => {
                eprintln!("error: usage: {detail}");
                ExitCode::from(1)
            }
            Failure::Data { code, detail } => {
                eprintln!("error: {code}: {detail}");
                ExitCode::from(2)
            }
            Failure::Io(detail) => {
                eprintln!("error: io: {detail}");
                ExitCode::from(3)
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Io { .. } => Failure::Io(e.to_string()),
            other => Failure::data(other.code(), other.to_string()),
        }
    }
}

fn with_path(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |e| match e {
        Error::Io { .. } => Failure::from(e),
        other => Failure::data(other.code(), format!("{}: {other}", path.display())),
    }
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))
}

fn emit(text: &str, csv: Option<&Path>) -> Result<(), Failure> {
    match csv {
        Some(path) => Ok(write_atomic(path, text.as_bytes())?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_secrets(paths: &[PathBuf]) -> Result<Vec<Image>, Failure> {
    let mut images: Vec<Image> = Vec::with_capacity(paths.len());
    for path in paths {
        let img = load_image(path).map_err(with_path(path))?;
        if let Some(first) = images.first() {
            if !first.same_shape(&img) {
                return Err(Failure::data(
                    "dimension-mismatch",
                    format!(
                        "{}: {}x{} {} does not match {}: {}x{} {}",
                        path.display(),
                        img.height(),
                        img.width(),
                        img.mode(),
                        paths[0].display(),
                        first.height(),
                        first.width(),
                        first.mode()
                    ),
                ));
            }
        }
        images.push(img);
    }
    Ok(images)
}

fn load_share_set(paths: &[PathBuf]) -> Result<ShareSet, Failure> {
    let containers = paths
        .iter()
        .map(|p| load_share(p).map_err(with_path(p)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ShareSet::from_containers(containers)?)
}

fn share_file_name(index: usize) -> String {
    format!("share_{index:02}.msis")
}

fn encode(
    secrets: &[PathBuf],
    out: &Path,
    rounding: Rounding,
    seed: Option<u64>,
) -> Result<(), Failure> {
    if secrets.len() < 2 {
        return Err(Failure::Usage(format!(
            "encode needs at least 2 secret images, got {}",
            secrets.len()
        )));
    }
    let images = load_secrets(secrets)?;
    let mut params = SharingParams::new(images.len(), images[0].mode()).with_rounding(rounding);
    params.seed = seed;
    let (set, _) = generate_shares(&images, &params)?;

    create_dir(out)?;
    let mut names = Vec::with_capacity(set.shares().len());
    for container in set.to_containers() {
        let name = share_file_name(container.share_index.into());
        save_share(&container, out.join(&name))?;
        names.push(name);
    }
    let manifest = Manifest::for_share_set(&set, names);
    write_atomic(&out.join("manifest.txt"), manifest.to_text().as_bytes())?;
    println!("{}", set.session_id());
    Ok(())
}

fn decode(shares: &[PathBuf], out: &Path, ext: Option<&str>) -> Result<(), Failure> {
    let set = load_share_set(shares)?;
    let (recovered, _) = recover_secrets(&set)?;
    let ext = ext.unwrap_or_else(|| default_extension(set.mode()));
    create_dir(out)?;
    for (i, image) in recovered.iter().enumerate() {
        let path = out.join(format!("recovered_{:02}.{ext}", i + 1));
        save_image(image, &path).map_err(with_path(&path))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn metrics(a: &Path, b: &Path) -> Result<(), Failure> {
    let ia = load_image(a).map_err(with_path(a))?;
    let ib = load_image(b).map_err(with_path(b))?;
    let row = QualityRow::compare("a-b", &ia, &ib)?;
    println!("correlation={}", row.correlation);
    println!("rmse={:.6}", row.rmse);
    println!("psnr_db={}", row.psnr);
    Ok(())
}

fn attack(
    shares: &[PathBuf],
    secrets: &[PathBuf],
    k: Option<usize>,
    csv: Option<&Path>,
) -> Result<(), Failure> {
    let set = load_share_set(shares)?;
    let images = load_secrets(secrets)?;
    let text = match k {
        Some(k) if k == 0 || k > set.n() => {
            return Err(Failure::Usage(format!(
                "--k must lie in [1, {}], got {k}",
                set.n()
            )))
        }
        Some(k) => attack_row_csv(&partial_share_attack(&set, &images, k)?),
        None => attack_report(&set, &images)?.to_csv(),
    };
    emit(&text, csv)
}

fn bench(
    n: &[usize],
    sizes: &[(u32, u32)],
    mode: Mode,
    reps: usize,
    csv: Option<&Path>,
) -> Result<(), Failure> {
    if reps < 3 {
        return Err(Failure::Usage(format!(
            "--reps must be at least 3, got {reps}"
        )));
    }
    let records = benchmark(n, sizes, mode, reps)?;
    emit(&bench_csv(&records), csv)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Encode {
            secrets,
            out,
            rounding,
            seed,
        } => encode(&secrets, &out, rounding, seed),
        Command::Decode { shares, out, ext } => decode(&shares, &out, ext.as_deref()),
        Command::Metrics { a, b } => metrics(&a, &b),
        Command::Attack {
            shares,
            secrets,
            k,
            csv,
        } => attack(&shares, &secrets, k, csv.as_deref()),
        Command::Bench {
            n,
            size,
            mode,
            reps,
            csv,
        } => bench(&n, &size, mode, reps, csv.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            return Failure::Usage(first.trim_start_matches("error: ").to_owned()).report();
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
