//! Per-window interchannel delay/attenuation estimation and temporal laws.

use rayon::prelude::*;

use crate::filterbank::SubbandStereo;
use crate::{Error, Result};

/// Gating and search parameters for a single frame estimate.
#[derive(Debug, Clone, Copy)]
pub struct EstimateConfig {
    /// Correlation search half-range, seconds.
    pub max_lag_s: f64,
    /// Frames where either channel RMS falls below this are invalid.
    pub min_rms_dbfs: f64,
    /// Frames whose normalized correlation peak falls below this are invalid.
    pub min_correlation: f64,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        EstimateConfig {
            max_lag_s: 1.5e-3,
            min_rms_dbfs: -60.0,
            min_correlation: 0.5,
        }
    }
}

/// One windowed estimate.
#[derive(Debug, Clone, Copy)]
pub struct FrameEstimate {
    pub frame_index: usize,
    /// Window center, seconds.
    pub time: f64,
    /// Seconds; positive when the left channel leads.
    pub delta_t: f64,
    /// dB; positive when the left channel is louder.
    pub delta_e: f64,
    /// Normalized correlation at the peak, in [-1, 1].
    pub peak_correlation: f64,
    /// Invalid frames carry no cue information (muted or decorrelated).
    pub valid: bool,
}

/// Time series of frame estimates for one subband.
#[derive(Debug, Clone)]
pub struct TemporalLaw {
    /// 1-based band index.
    pub band: usize,
    pub window_s: f64,
    pub hop_s: f64,
    pub frames: Vec<FrameEstimate>,
}

impl TemporalLaw {
    pub fn valid_frames(&self) -> impl Iterator<Item = &FrameEstimate> {
        self.frames.iter().filter(|f| f.valid)
    }
}

fn rms(x: &[f64]) -> f64 {
    if x.is_empty() {
        0.0
    } else {
        (x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64).sqrt()
    }
}

/// Normalized cross-correlation at integer lag `l` (right relative to left)
/// over the overlapping region.
fn ncc(left: &[f64], right: &[f64], l: isize) -> f64 {
    let n = left.len() as isize;
    let lo = (-l).max(0);
    let hi = (n - l).min(n);
    let (mut dot, mut el, mut er) = (0.0, 0.0, 0.0);
    for i in lo..hi {
        let a = left[i as usize];
        let b = right[(i + l) as usize];
        dot += a * b;
        el += a * a;
        er += b * b;
    }
    if el <= 0.0 || er <= 0.0 {
        0.0
    } else {
        dot / (el * er).sqrt()
    }
}

/// Estimates (delta t, delta E) for one pair of aligned windows.
///
/// The delay is the correlation argmax over [-max_lag, +max_lag], refined
/// to sub-sample precision by a 3-point parabolic fit. The level difference
/// is the RMS ratio on the lag-aligned overlap.
pub fn estimate_frame(
    left: &[f64],
    right: &[f64],
    sample_rate: u32,
    cfg: &EstimateConfig,
) -> Result<FrameEstimate> {
    if left.len() != right.len() {
        return Err(Error::Config("estimate_frame: window length mismatch".into()));
    }
    let sr = sample_rate as f64;
    let max_lag = (cfg.max_lag_s * sr).ceil() as usize;
    if left.len() < 2 * max_lag {
        return Err(Error::WindowTooShort { window: left.len(), min: 2 * max_lag });
    }

    let mut est = FrameEstimate {
        frame_index: 0,
        time: 0.0,
        delta_t: 0.0,
        delta_e: 0.0,
        peak_correlation: 0.0,
        valid: false,
    };

    let rms_l = rms(left);
    let rms_r = rms(right);
    let floor = 10f64.powf(cfg.min_rms_dbfs / 20.0);
    if rms_l < floor || rms_r < floor {
        return Ok(est);
    }

    let lags = -(max_lag as isize)..=(max_lag as isize);
    let corr: Vec<f64> = lags.clone().map(|l| ncc(left, right, l)).collect();
    let peak = corr
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    est.peak_correlation = corr[peak];

    let mut lag = peak as f64 - max_lag as f64;
    if peak > 0 && peak + 1 < corr.len() {
        let (cm, c0, cp) = (corr[peak - 1], corr[peak], corr[peak + 1]);
        let denom = cm - 2.0 * c0 + cp;
        if denom < 0.0 {
            lag += 0.5 * (cm - cp) / denom;
        }
    }
    est.delta_t = lag / sr;

    // level ratio on the integer-lag aligned overlap
    let l0 = peak as isize - max_lag as isize;
    let n = left.len() as isize;
    let lo = (-l0).max(0) as usize;
    let hi = (n - l0).min(n) as usize;
    let aligned_l = &left[lo..hi];
    let aligned_r: Vec<f64> = (lo..hi).map(|i| right[(i as isize + l0) as usize]).collect();
    let (rl, rr) = (rms(aligned_l), rms(&aligned_r));
    if rl > 0.0 && rr > 0.0 {
        est.delta_e = 20.0 * (rl / rr).log10();
    }

    est.valid = est.peak_correlation >= cfg.min_correlation;
    Ok(est)
}

/// Windowing parameters for temporal-law extraction.
#[derive(Debug, Clone, Copy)]
pub struct LawConfig {
    /// Static-scene window, seconds.
    pub window_s: f64,
    /// Hop between window starts, seconds. Equal to `window_s` for the
    /// default non-overlapping tiling.
    pub hop_s: f64,
    pub estimate: EstimateConfig,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            window_s: 0.050,
            hop_s: 0.050,
            estimate: EstimateConfig::default(),
        }
    }
}

/// Slices every subband into windows and estimates each one.
///
/// The trailing partial window is dropped.
pub fn temporal_laws(sub: &SubbandStereo, cfg: &LawConfig) -> Result<Vec<TemporalLaw>> {
    let sr = sub.sample_rate();
    let window = (cfg.window_s * sr as f64).round() as usize;
    let hop = (cfg.hop_s * sr as f64).round() as usize;
    if window == 0 || hop == 0 {
        return Err(Error::Config("window and hop must be positive".into()));
    }
    let max_lag = (cfg.estimate.max_lag_s * sr as f64).ceil() as usize;
    if window < 2 * max_lag {
        return Err(Error::WindowTooShort { window, min: 2 * max_lag });
    }
    if sub.bands[0].len() < window {
        return Err(Error::Config("signal shorter than one window".into()));
    }
    sub.bands
        .par_iter()
        .zip(&sub.specs)
        .map(|(band, spec)| {
            let n_frames = (band.len() - window) / hop + 1;
            let frames = (0..n_frames)
                .into_par_iter()
                .map(|i| {
                    let start = i * hop;
                    let mut est = estimate_frame(
                        &band.left[start..start + window],
                        &band.right[start..start + window],
                        sr,
                        &cfg.estimate,
                    )?;
                    est.frame_index = i;
                    est.time = (start as f64 + window as f64 / 2.0) / sr as f64;
                    Ok(est)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(TemporalLaw {
                band: spec.index,
                window_s: cfg.window_s,
                hop_s: cfg.hop_s,
                frames,
            })
        })
        .collect()
}

/// Zero-phase moving-average smoothing of a law, applied independently to
/// each run of valid frames. Invalid gaps stay invalid; values are never
/// interpolated across a muted stretch.
pub fn smooth_law(law: &TemporalLaw, cutoff_hz: f64) -> TemporalLaw {
    let frame_rate = 1.0 / law.hop_s;
    let mut m = (frame_rate / cutoff_hz.max(1e-9)).round() as usize;
    if m % 2 == 0 {
        m += 1;
    }
    let half = (m.max(1) - 1) / 2;
    let mut out = law.clone();
    if half == 0 {
        return out;
    }

    let mut i = 0;
    while i < law.frames.len() {
        if !law.frames[i].valid {
            i += 1;
            continue;
        }
        let run_start = i;
        while i < law.frames.len() && law.frames[i].valid {
            i += 1;
        }
        let run = &law.frames[run_start..i];
        for (k, frame) in out.frames[run_start..i].iter_mut().enumerate() {
            // centered window, shrunk symmetrically near the run edges
            let h = half.min(k).min(run.len() - 1 - k);
            let slice = &run[k - h..=k + h];
            let inv = 1.0 / slice.len() as f64;
            frame.delta_t = slice.iter().map(|f| f.delta_t).sum::<f64>() * inv;
            frame.delta_e = slice.iter().map(|f| f.delta_e).sum::<f64>() * inv;
        }
    }
    out
}
