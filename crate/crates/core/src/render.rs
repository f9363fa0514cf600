//! Free-field rendering of point-source scenes into a stereo buffer.
//!
//! Each source excites each capsule with a per-capsule delay (path / c) and
//! amplitude (directivity / path). Moving sources get control-rate parameter
//! updates with per-sample linear interpolation; fractional delays are
//! realized with a Blackman-windowed sinc interpolator.

use rayon::prelude::*;

use crate::geometry::{
    capsule_excitations, trajectory_state_at, validate_scene, PointSource, Scene, Trajectory,
};
use crate::{Error, Result};

/// Two equal-length channels at a common sample rate.
#[derive(Debug, Clone, PartialEq)]
pub struct StereoBuffer {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    pub sample_rate: u32,
}

impl StereoBuffer {
    pub fn new(left: Vec<f64>, right: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::Render(format!(
                "channel length mismatch: {} vs {}",
                left.len(),
                right.len()
            )));
        }
        if sample_rate == 0 {
            return Err(Error::Render("sample_rate must be > 0".into()));
        }
        Ok(StereoBuffer { left, right, sample_rate })
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn peak(&self) -> f64 {
        self.left
            .iter()
            .chain(self.right.iter())
            .fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    /// Joint scaling of both channels; interchannel cues are unaffected.
    pub fn scale(&mut self, g: f64) {
        for x in self.left.iter_mut().chain(self.right.iter_mut()) {
            *x *= g;
        }
    }
}

/// Rendering parameters.
#[derive(Debug, Clone, Copy)]
pub struct RenderConfig {
    pub sample_rate: u32,
    /// Trajectory parameter update rate for moving sources, Hz.
    pub control_rate: u32,
    /// Half width of the windowed-sinc interpolator (kernel spans 2x this).
    pub interpolator_half_width: usize,
    /// Joint peak normalization of the final mix to -1 dBFS.
    pub normalize: bool,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            sample_rate: 44_100,
            control_rate: 1_000,
            interpolator_half_width: 16,
            normalize: true,
        }
    }
}

impl RenderConfig {
    fn validate(&self) -> Result<()> {
        if self.sample_rate == 0 || self.control_rate == 0 {
            return Err(Error::Render("rates must be > 0".into()));
        }
        if self.control_rate > self.sample_rate {
            return Err(Error::Render("control_rate must be <= sample_rate".into()));
        }
        if self.interpolator_half_width < 1 {
            return Err(Error::Render("interpolator_half_width must be >= 1".into()));
        }
        Ok(())
    }
}

fn blackman(u: f64) -> f64 {
    use std::f64::consts::PI;
    0.42 - 0.5 * (2.0 * PI * u).cos() + 0.08 * (4.0 * PI * u).cos()
}

fn read_padded(signal: &[f64], idx: isize) -> f64 {
    if idx < 0 || idx as usize >= signal.len() {
        0.0
    } else {
        signal[idx as usize]
    }
}

/// Signal value at fractional index `pos`, windowed-sinc interpolated.
fn interp_at(signal: &[f64], pos: f64, half_width: usize) -> f64 {
    let m = pos.floor();
    let frac = pos - m;
    let m = m as isize;
    let hw = half_width as isize;
    if frac < 1e-12 {
        return read_padded(signal, m);
    }
    let span = (2 * half_width) as f64;
    let mut acc = 0.0;
    for i in (m - hw + 1)..=(m + hw) {
        let x = i as f64 - pos; // in (-hw, hw]
        let s = if x == 0.0 {
            1.0
        } else {
            let px = std::f64::consts::PI * x;
            px.sin() / px
        };
        acc += read_padded(signal, i) * s * blackman((x + hw as f64) / span);
    }
    acc
}

/// Delays a mono signal by `delay` seconds.
///
/// Integer-sample delays are exact shifts; fractional parts go through the
/// windowed-sinc interpolator. The output keeps the full tail: its length is
/// `input + ceil(delay * sr) + half_width`.
pub fn apply_fractional_delay(signal: &[f64], delay: f64, cfg: &RenderConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    if delay < 0.0 {
        return Err(Error::NegativeDelay);
    }
    let sr = cfg.sample_rate as f64;
    let d = delay * sr;
    let out_len = signal.len() + d.ceil() as usize + cfg.interpolator_half_width;
    let mut out = vec![0.0; out_len];
    let d_round = d.round();
    if (d - d_round).abs() < 1e-9 {
        let shift = d_round as usize;
        out[shift..shift + signal.len()].copy_from_slice(signal);
    } else {
        for (n, o) in out.iter_mut().enumerate() {
            *o = interp_at(signal, n as f64 - d, cfg.interpolator_half_width);
        }
    }
    Ok(out)
}

/// Per-channel (delay seconds, linear amplitude) of one source position.
fn channel_params(src: &PointSource, mic: &crate::geometry::MicPair, t: f64) -> Result<[(f64, f64); 2]> {
    let pos = trajectory_state_at(&src.trajectory, t);
    let (l, r) = capsule_excitations(pos, mic)?;
    let c = mic.sound_speed;
    Ok([
        (l.path / c, l.amplitude * src.gain),
        (r.path / c, r.amplitude * src.gain),
    ])
}

/// Renders one source into a stereo buffer on the scene timeline.
///
/// Sample `n` of the output corresponds to time `n / sr`; propagation delay
/// is included, so the output is longer than `duration` by the largest
/// arrival delay plus the interpolator margin.
pub fn render_source(
    src: &PointSource,
    mic: &crate::geometry::MicPair,
    cfg: &RenderConfig,
    duration_s: f64,
) -> Result<StereoBuffer> {
    cfg.validate()?;
    if !(duration_s > 0.0) {
        return Err(Error::Render("duration must be > 0".into()));
    }
    let sr = cfg.sample_rate as f64;
    let n_emit = (duration_s * sr).round() as usize;
    let mut clip: Vec<f64> = src.clip.samples.iter().copied().take(n_emit).collect();
    clip.resize(n_emit, 0.0);

    if let Trajectory::Static(_) = src.trajectory {
        let [(dl, al), (dr, ar)] = channel_params(src, mic, 0.0)?;
        let mut left = apply_fractional_delay(&clip, dl, cfg)?;
        let mut right = apply_fractional_delay(&clip, dr, cfg)?;
        for x in left.iter_mut() {
            *x *= al;
        }
        for x in right.iter_mut() {
            *x *= ar;
        }
        let len = left.len().max(right.len());
        left.resize(len, 0.0);
        right.resize(len, 0.0);
        return StereoBuffer::new(left, right, cfg.sample_rate);
    }

    // moving source: control-rate ticks, per-sample linear interpolation
    let tick = ((sr / cfg.control_rate as f64).round() as usize).max(1);
    let n_ticks = n_emit / tick + 2;
    let mut params = Vec::with_capacity(n_ticks);
    let mut max_delay = 0.0f64;
    for k in 0..n_ticks {
        let p = channel_params(src, mic, (k * tick) as f64 / sr)?;
        max_delay = max_delay.max(p[0].0).max(p[1].0);
        params.push(p);
    }
    let out_len = n_emit + (max_delay * sr).ceil() as usize + cfg.interpolator_half_width;
    let hw = cfg.interpolator_half_width;
    let render_channel = |ch: usize| -> Vec<f64> {
        let mut out = vec![0.0; out_len];
        for (n, o) in out.iter_mut().enumerate() {
            let k = (n / tick).min(params.len() - 2);
            let u = (n - k * tick) as f64 / tick as f64;
            let (d0, a0) = params[k][ch];
            let (d1, a1) = params[k + 1][ch];
            let d = d0 + u * (d1 - d0);
            let a = a0 + u * (a1 - a0);
            *o = a * interp_at(&clip, n as f64 - d * sr, hw);
        }
        out
    };
    let (left, right) = rayon::join(|| render_channel(0), || render_channel(1));
    StereoBuffer::new(left, right, cfg.sample_rate)
}

/// Renders and sums every source of a scene.
///
/// Normalization (when enabled) is joint over both channels so the
/// interchannel level ratio is preserved.
pub fn mix_scene(scene: &Scene, cfg: &RenderConfig) -> Result<StereoBuffer> {
    if scene.sources.is_empty() {
        return Err(Error::EmptyScene);
    }
    let report = validate_scene(scene);
    if !report.is_ok() {
        return Err(Error::InvalidScene(report.violations));
    }
    let rendered: Vec<StereoBuffer> = scene
        .sources
        .par_iter()
        .map(|src| render_source(src, &scene.mic, cfg, scene.duration_s))
        .collect::<Result<_>>()?;
    let len = rendered.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut left = vec![0.0; len];
    let mut right = vec![0.0; len];
    for buf in &rendered {
        for (i, &x) in buf.left.iter().enumerate() {
            left[i] += x;
        }
        for (i, &x) in buf.right.iter().enumerate() {
            right[i] += x;
        }
    }
    let mut mix = StereoBuffer::new(left, right, cfg.sample_rate)?;
    if cfg.normalize {
        let peak = mix.peak();
        if peak > 0.0 {
            // -1 dBFS target
            mix.scale(10f64.powf(-1.0 / 20.0) / peak);
        }
    }
    Ok(mix)
}
