//! `stereocarto`: point-source stereo scene simulation and cartography
//! analysis from the command line.

mod output;
mod scene;
mod wav;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;
use stereocarto_core::carto::{
    extract_candidates, run_cartography, CartoConfig, EstimateConfig, HistogramConfig, LawConfig,
    PeakConfig,
};
use stereocarto_core::energy::isd_profile;
use stereocarto_core::filterbank::{analyze_with_delay, build_bank, leipp_bands, FilterBank};
use stereocarto_core::geometry::{validate_scene, LocateConfig, MicPair};
use stereocarto_core::render::{mix_scene, RenderConfig, StereoBuffer};

use output::{
    candidates_csv, histogram_csv, isd_csv, write_analysis_csvs, write_text, RunManifest,
};
use scene::SceneConfigDocument;
use wav::{read_wav, write_wav, BitDepth};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, config files, or scene documents. Exit code 1.
    #[error("{0}")]
    Config(String),
    /// File-system or codec failure while processing. Exit code 2.
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] stereocarto_core::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Io(_) | CliError::Core(_) => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "stereocarto", version, about = "Stereo scene simulation and source cartography")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render a scene config into a stereo WAV
    Simulate {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Skip joint peak normalization to -1 dBFS
        #[arg(long)]
        no_normalize: bool,
        /// Output encoding: 16, 24 or 32f
        #[arg(long, default_value = "32f")]
        bits: BitDepth,
    },
    /// Split a stereo WAV into the 10 subband WAVs
    Bands {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 8191)]
        taps: usize,
        /// Keep the raw filter delay instead of trimming it
        #[arg(long)]
        raw_delay: bool,
    },
    /// Sum selected band WAVs back into an approximation
    Resynth {
        #[arg(long)]
        bands: PathBuf,
        /// Comma-separated band indices, e.g. 1,2,5
        #[arg(long, value_delimiter = ',')]
        select: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-channel subband energy profile (ISD ratios in dB)
    Isd {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 8191)]
        taps: usize,
    },
    /// Per-band temporal laws of interchannel delay and attenuation
    Laws {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 50.0)]
        window_ms: f64,
        #[arg(long, default_value_t = 50.0)]
        hop_ms: f64,
        #[arg(long, default_value_t = 8191)]
        taps: usize,
    },
    /// Delay and attenuation histograms, per band and global
    Hist {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        /// Restrict output to one band (1-10)
        #[arg(long, conflicts_with = "global")]
        band: Option<usize>,
        /// Only write the global (summed) histograms
        #[arg(long)]
        global: bool,
        #[arg(long, default_value_t = 10.0)]
        delay_bin_us: f64,
        #[arg(long, default_value_t = 0.25)]
        de_bin_db: f64,
        #[arg(long, default_value_t = 50.0)]
        window_ms: f64,
        #[arg(long, default_value_t = 50.0)]
        hop_ms: f64,
        #[arg(long, default_value_t = 8191)]
        taps: usize,
    },
    /// Full pipeline: bands -> laws -> histograms -> source candidates
    Carto {
        #[arg(long = "in")]
        input: PathBuf,
        /// Output directory for candidates.csv, law and histogram CSVs
        #[arg(long)]
        out: PathBuf,
        /// Annotate candidates with (distance, azimuth) for an ORTF pair
        #[arg(long)]
        locate: bool,
        #[arg(long, default_value_t = 50.0)]
        window_ms: f64,
        #[arg(long, default_value_t = 50.0)]
        hop_ms: f64,
        #[arg(long, default_value_t = 10.0)]
        delay_bin_us: f64,
        #[arg(long, default_value_t = 0.25)]
        de_bin_db: f64,
        #[arg(long, default_value_t = 8191)]
        taps: usize,
    },
}

fn main() {
    if let Ok(threads) = std::env::var("STEREOCARTO_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            if e.use_stderr() {
                eprintln!("{e}");
                std::process::exit(1);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
}

fn band_wav_name(spec: &stereocarto_core::filterbank::BandSpec) -> String {
    format!(
        "band_{:02}_{}-{}.wav",
        spec.index,
        spec.low_hz.round() as u64,
        spec.high_hz.round() as u64
    )
}

fn load_bank(sample_rate: u32, taps: usize) -> Result<FilterBank, CliError> {
    Ok(build_bank(&leipp_bands(sample_rate)?, taps, sample_rate)?)
}

fn carto_config(window_ms: f64, hop_ms: f64, delay_bin_us: f64, de_bin_db: f64) -> CartoConfig {
    CartoConfig {
        law: LawConfig {
            window_s: window_ms / 1e3,
            hop_s: hop_ms / 1e3,
            estimate: EstimateConfig::default(),
        },
        hist: HistogramConfig {
            delay_bin_s: delay_bin_us / 1e6,
            de_bin_db,
            ..HistogramConfig::default()
        },
        peaks: PeakConfig::default(),
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Simulate { scene, out, no_normalize, bits } => {
            let doc = SceneConfigDocument::from_file(&scene)?;
            let base = scene.parent().unwrap_or(Path::new("."));
            let built = doc.build_scene(base)?;
            let report = validate_scene(&built);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if !report.is_ok() {
                for v in &report.violations {
                    eprintln!("violation: {v}");
                }
                return Err(CliError::Config(format!(
                    "scene has {} violation(s)",
                    report.violations.len()
                )));
            }
            let cfg = RenderConfig {
                sample_rate: built.sample_rate,
                normalize: !no_normalize,
                ..RenderConfig::default()
            };
            let mix = mix_scene(&built, &cfg)?;
            let clipped = write_wav(&mix, &out, bits)?;
            if clipped > 0 {
                eprintln!("warning: {clipped} samples clipped at integer bit depth");
            }
            let mut manifest = RunManifest::new(
                "simulate",
                Some(&scene),
                json!({ "scene": doc, "normalize": !no_normalize }),
            );
            manifest.record(&out);
            manifest.write(out.parent().unwrap_or(Path::new(".")))?;
            Ok(())
        }

        Command::Bands { input, out_dir, taps, raw_delay } => {
            ensure_dir(&out_dir)?;
            let data = read_wav(&input)?;
            let depth = data.depth;
            let buf = data.into_stereo();
            let bank = load_bank(buf.sample_rate, taps)?;
            let sub = analyze_with_delay(&buf, &bank, !raw_delay)?;
            let mut manifest = RunManifest::new(
                "bands",
                Some(&input),
                json!({ "taps": taps, "raw_delay": raw_delay }),
            );
            let mut clipped = 0;
            for (band, spec) in sub.bands.iter().zip(&sub.specs) {
                let path = out_dir.join(band_wav_name(spec));
                clipped += write_wav(band, &path, depth)?;
                manifest.record(&path);
            }
            if clipped > 0 {
                eprintln!("warning: {clipped} samples clipped at integer bit depth");
            }
            manifest.write(&out_dir)
        }

        Command::Resynth { bands, select, out } => {
            if select.is_empty() {
                return Err(CliError::Config("--select needs at least one band".into()));
            }
            let mut sum: Option<StereoBuffer> = None;
            let mut depth = BitDepth::Float32;
            for &idx in &select {
                let path = find_band_file(&bands, idx)?;
                let data = read_wav(&path)?;
                depth = data.depth;
                let band = data.into_stereo();
                sum = Some(match sum {
                    None => band,
                    Some(mut acc) => {
                        if acc.len() != band.len() || acc.sample_rate != band.sample_rate {
                            return Err(CliError::Config(format!(
                                "{}: shape differs from earlier bands",
                                path.display()
                            )));
                        }
                        for (a, b) in acc.left.iter_mut().zip(&band.left) {
                            *a += b;
                        }
                        for (a, b) in acc.right.iter_mut().zip(&band.right) {
                            *a += b;
                        }
                        acc
                    }
                });
            }
            let mix = sum.expect("non-empty selection");
            write_wav(&mix, &out, depth)?;
            let mut manifest =
                RunManifest::new("resynth", Some(&bands), json!({ "select": select }));
            manifest.record(&out);
            manifest.write(out.parent().unwrap_or(Path::new(".")))
        }

        Command::Isd { input, out, taps } => {
            let buf = read_wav(&input)?.into_stereo();
            let bank = load_bank(buf.sample_rate, taps)?;
            let sub = stereocarto_core::filterbank::analyze(&buf, &bank)?;
            let profile = isd_profile(&sub, &buf);
            write_text(&out, &isd_csv(&profile))?;
            let mut manifest = RunManifest::new("isd", Some(&input), json!({ "taps": taps }));
            manifest.record(&out);
            manifest.write(out.parent().unwrap_or(Path::new(".")))
        }

        Command::Laws { input, out_dir, window_ms, hop_ms, taps } => {
            ensure_dir(&out_dir)?;
            let buf = read_wav(&input)?.into_stereo();
            let bank = load_bank(buf.sample_rate, taps)?;
            let sub = stereocarto_core::filterbank::analyze(&buf, &bank)?;
            let cfg = carto_config(window_ms, hop_ms, 10.0, 0.25);
            let laws = stereocarto_core::carto::temporal_laws(&sub, &cfg.law)?;
            let mut manifest = RunManifest::new(
                "laws",
                Some(&input),
                json!({ "window_ms": window_ms, "hop_ms": hop_ms, "taps": taps }),
            );
            for law in &laws {
                let path = out_dir.join(format!("law_band_{:02}.csv", law.band));
                write_text(&path, &output::law_csv(law))?;
                manifest.record(&path);
            }
            manifest.write(&out_dir)
        }

        Command::Hist {
            input,
            out_dir,
            band,
            global,
            delay_bin_us,
            de_bin_db,
            window_ms,
            hop_ms,
            taps,
        } => {
            ensure_dir(&out_dir)?;
            let buf = read_wav(&input)?.into_stereo();
            let bank = load_bank(buf.sample_rate, taps)?;
            let sub = stereocarto_core::filterbank::analyze(&buf, &bank)?;
            let cfg = carto_config(window_ms, hop_ms, delay_bin_us, de_bin_db);
            let analysis = run_cartography(&sub, &cfg)?;
            let mut manifest = RunManifest::new(
                "hist",
                Some(&input),
                json!({
                    "band": band, "global": global,
                    "delay_bin_us": delay_bin_us, "de_bin_db": de_bin_db,
                    "window_ms": window_ms, "hop_ms": hop_ms, "taps": taps
                }),
            );
            let selected = |b: usize| band.map_or(true, |want| want == b);
            if !global {
                for (delay, att) in analysis.band_delay.iter().zip(&analysis.band_attenuation) {
                    let b = delay.band.expect("per-band histogram");
                    if !selected(b) {
                        continue;
                    }
                    let dp = out_dir.join(format!("hist_delay_band_{b:02}.csv"));
                    write_text(&dp, &histogram_csv(delay))?;
                    manifest.record(&dp);
                    let ap = out_dir.join(format!("hist_att_band_{b:02}.csv"));
                    write_text(&ap, &histogram_csv(att))?;
                    manifest.record(&ap);
                }
            }
            if band.is_none() {
                let gd = out_dir.join("hist_delay_global.csv");
                write_text(&gd, &histogram_csv(&analysis.global_delay))?;
                manifest.record(&gd);
                let ga = out_dir.join("hist_att_global.csv");
                write_text(&ga, &histogram_csv(&analysis.global_attenuation))?;
                manifest.record(&ga);
            }
            manifest.write(&out_dir)
        }

        Command::Carto {
            input,
            out,
            locate,
            window_ms,
            hop_ms,
            delay_bin_us,
            de_bin_db,
            taps,
        } => {
            let buf = read_wav(&input)?.into_stereo();
            let bank = load_bank(buf.sample_rate, taps)?;
            let sub = stereocarto_core::filterbank::analyze(&buf, &bank)?;
            let cfg = carto_config(window_ms, hop_ms, delay_bin_us, de_bin_db);
            let analysis = run_cartography(&sub, &cfg)?;
            let mic = MicPair::default();
            let locate_cfg = LocateConfig::default();
            let pair = locate.then_some((&mic, &locate_cfg));
            let candidates = extract_candidates(&analysis, pair);
            let out_dir = out;
            ensure_dir(&out_dir)?;
            let cand_path = out_dir.join("candidates.csv");
            write_text(&cand_path, &candidates_csv(&candidates))?;
            let mut manifest = RunManifest::new(
                "carto",
                Some(&input),
                json!({
                    "locate": locate, "window_ms": window_ms, "hop_ms": hop_ms,
                    "delay_bin_us": delay_bin_us, "de_bin_db": de_bin_db, "taps": taps
                }),
            );
            manifest.record(&cand_path);
            write_analysis_csvs(&analysis, &out_dir, &mut manifest, true)?;
            manifest.write(&out_dir)
        }
    }
}

fn find_band_file(dir: &Path, index: usize) -> Result<PathBuf, CliError> {
    let prefix = format!("band_{index:02}_");
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    for entry in entries.flatten() {
        let name = entry.file_name();
        let name = name.to_string_lossy();
        if name.starts_with(&prefix) && name.ends_with(".wav") && !entry.path().is_dir() {
            return Ok(entry.path());
        }
    }
    Err(CliError::Config(format!(
        "{}: no {prefix}*.wav band file (run `stereocarto bands` first)",
        dir.display()
    )))
}
