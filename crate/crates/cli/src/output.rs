//! CSV exports and the per-run reproducibility manifest.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use stereocarto_core::carto::{CartoAnalysis, Histogram, SourceCandidate, TemporalLaw};
use stereocarto_core::energy::IsdProfile;

use crate::CliError;

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// `run.json`: enough to reproduce every output file of a command.
#[derive(Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: Option<PathBuf>,
    pub config: serde_json::Value,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(command: &str, input: Option<&Path>, config: serde_json::Value) -> Self {
        RunManifest {
            tool: "stereocarto",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input: input.map(Path::to_path_buf),
            config,
            outputs: Vec::new(),
        }
    }

    pub fn record(&mut self, path: &Path) {
        self.outputs.push(path.to_path_buf());
    }

    /// Writes `run.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let path = dir.join("run.json");
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Io(e.to_string()))?;
        write_text(&path, &text)
    }
}

pub fn isd_csv(profile: &IsdProfile) -> String {
    let mut out = String::from("band,low_hz,high_hz,left_db,right_db\n");
    for (i, band) in profile.bands.iter().enumerate() {
        let fmt_db = |db: f64, defined: bool| {
            if defined {
                format!("{db:.6}")
            } else {
                "undefined".to_string()
            }
        };
        let _ = writeln!(
            out,
            "{},{:.1},{:.1},{},{}",
            band.index,
            band.low_hz,
            band.high_hz,
            fmt_db(profile.left_db[i], profile.left_defined),
            fmt_db(profile.right_db[i], profile.right_defined),
        );
    }
    out
}

pub fn law_csv(law: &TemporalLaw) -> String {
    let mut out = String::from("time_s,delta_t_ms,delta_e_db,corr,valid\n");
    for f in &law.frames {
        let _ = writeln!(
            out,
            "{:.6},{:.6},{:.6},{:.6},{}",
            f.time,
            f.delta_t * 1e3,
            f.delta_e,
            f.peak_correlation,
            u8::from(f.valid),
        );
    }
    out
}

/// `bin_center,count`; delay centers in ms, attenuation centers in dB.
pub fn histogram_csv(hist: &Histogram) -> String {
    let scale = match hist.axis {
        stereocarto_core::carto::HistAxis::Delay => 1e3,
        stereocarto_core::carto::HistAxis::Attenuation => 1.0,
    };
    let mut out = String::from("bin_center,count\n");
    for (i, &c) in hist.counts.iter().enumerate() {
        let _ = writeln!(out, "{:.6},{c}", hist.bin_center(i) * scale);
    }
    out
}

pub fn candidates_csv(candidates: &[SourceCandidate]) -> String {
    let mut out = String::from("delta_t_ms,delta_e_db,support,bands,dist_m,az_deg,residual\n");
    for c in candidates {
        let bands = c
            .bands
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join("+");
        let (dist, az, res) = match &c.location {
            Some(loc) => (
                format!("{:.4}", loc.position.distance),
                format!("{:.2}", loc.position.azimuth),
                format!("{:.6}", loc.residual),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        let _ = writeln!(
            out,
            "{:.6},{:.6},{},{},{},{},{}",
            c.delta_t * 1e3,
            c.delta_e,
            c.support,
            bands,
            dist,
            az,
            res
        );
    }
    out
}

/// Writes per-band law and histogram CSVs plus the global histograms.
pub fn write_analysis_csvs(
    analysis: &CartoAnalysis,
    out_dir: &Path,
    manifest: &mut RunManifest,
    include_laws: bool,
) -> Result<(), CliError> {
    if include_laws {
        for law in &analysis.laws {
            let path = out_dir.join(format!("law_band_{:02}.csv", law.band));
            write_text(&path, &law_csv(law))?;
            manifest.record(&path);
        }
    }
    for (hist, stem) in analysis
        .band_delay
        .iter()
        .map(|h| (h, "hist_delay"))
        .chain(analysis.band_attenuation.iter().map(|h| (h, "hist_att")))
    {
        let band = hist.band.expect("per-band histogram");
        let path = out_dir.join(format!("{stem}_band_{band:02}.csv"));
        write_text(&path, &histogram_csv(hist))?;
        manifest.record(&path);
    }
    let gd = out_dir.join("hist_delay_global.csv");
    write_text(&gd, &histogram_csv(&analysis.global_delay))?;
    manifest.record(&gd);
    let ga = out_dir.join("hist_att_global.csv");
    write_text(&ga, &histogram_csv(&analysis.global_attenuation))?;
    manifest.record(&ga);
    Ok(())
}
