//! The 10-band extended-Leipp linear-phase FIR analysis bank.
//!
//! Bands are built as differences of windowed-sinc lowpass filters, so the
//! tap vectors telescope: their sum is exactly a unit impulse delayed by the
//! common group delay, and resynthesis is a plain sample-wise sum. No
//! downsampling anywhere; every subband is listenable at the input rate.

use rayon::prelude::*;

use crate::fastconv::FftConvolver;
use crate::render::StereoBuffer;
use crate::{Error, Result};

/// One band of the frequency mapping. `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandSpec {
    pub index: usize,
    pub low_hz: f64,
    pub high_hz: f64,
}

impl BandSpec {
    /// Center used for band-placement checks: geometric mean of the edges,
    /// arithmetic midpoint for the DC-anchored first band.
    pub fn center_hz(&self) -> f64 {
        if self.low_hz <= 0.0 {
            self.high_hz / 2.0
        } else {
            (self.low_hz * self.high_hz).sqrt()
        }
    }
}

/// The extended Leipp 10-band mapping up to Nyquist.
///
/// Errors when the sample rate is too low to hold the 15 kHz edge.
pub fn leipp_bands(sample_rate: u32) -> Result<Vec<BandSpec>> {
    let nyquist = sample_rate as f64 / 2.0;
    const EDGES: [f64; 10] = [
        0.0, 50.0, 200.0, 400.0, 800.0, 1200.0, 1800.0, 3000.0, 6000.0, 15000.0,
    ];
    if nyquist <= EDGES[9] {
        return Err(Error::FilterDesign(format!(
            "sample rate {sample_rate} Hz cannot carry the 15 kHz band edge"
        )));
    }
    let mut bands: Vec<BandSpec> = EDGES
        .windows(2)
        .enumerate()
        .map(|(i, w)| BandSpec { index: i + 1, low_hz: w[0], high_hz: w[1] })
        .collect();
    bands.push(BandSpec { index: 10, low_hz: EDGES[9], high_hz: nyquist });
    Ok(bands)
}

/// Type-I (odd length, symmetric) Blackman-windowed-sinc lowpass.
///
/// Taps are normalized to unit DC gain; the -6 dB point sits at the cutoff.
pub fn design_lowpass(cutoff_hz: f64, n_taps: usize, sample_rate: u32) -> Result<Vec<f64>> {
    let nyquist = sample_rate as f64 / 2.0;
    if !(cutoff_hz > 0.0 && cutoff_hz < nyquist) {
        return Err(Error::FilterDesign(format!(
            "cutoff {cutoff_hz} Hz outside (0, {nyquist})"
        )));
    }
    if n_taps % 2 == 0 || n_taps < 3 {
        return Err(Error::FilterDesign(format!(
            "n_taps must be odd and >= 3, got {n_taps}"
        )));
    }
    use std::f64::consts::PI;
    let center = (n_taps - 1) as f64 / 2.0;
    let fc = cutoff_hz / sample_rate as f64;
    let mut taps: Vec<f64> = (0..n_taps)
        .map(|k| {
            // everything is a function of |k - center| so symmetry is exact
            let x = (k as f64 - center).abs();
            let s = if x == 0.0 {
                2.0 * fc
            } else {
                (2.0 * PI * fc * x).sin() / (PI * x)
            };
            let u = x / (n_taps - 1) as f64;
            s * (0.42 + 0.5 * (2.0 * PI * u).cos() + 0.08 * (4.0 * PI * u).cos())
        })
        .collect();
    let sum: f64 = taps.iter().sum();
    for t in taps.iter_mut() {
        *t /= sum;
    }
    Ok(taps)
}

/// A designed analysis bank: one symmetric tap vector per band, all sharing
/// the same length and group delay.
#[derive(Debug, Clone)]
pub struct FilterBank {
    pub bands: Vec<BandSpec>,
    pub taps_per_band: Vec<Vec<f64>>,
    pub sample_rate: u32,
}

impl FilterBank {
    pub fn n_taps(&self) -> usize {
        self.taps_per_band[0].len()
    }

    /// (N - 1) / 2 samples, common to every band.
    pub fn group_delay(&self) -> usize {
        (self.n_taps() - 1) / 2
    }
}

/// Builds a bank over a contiguous mapping covering (0, Nyquist].
///
/// Band taps are `lowpass(high) - lowpass(low)`, with `lowpass(0)` the zero
/// vector and `lowpass(Nyquist)` a centered unit impulse, so the bands sum
/// to a pure delay by construction.
pub fn build_bank(mapping: &[BandSpec], n_taps: usize, sample_rate: u32) -> Result<FilterBank> {
    if mapping.is_empty() {
        return Err(Error::NonContiguousMapping("empty mapping".into()));
    }
    let nyquist = sample_rate as f64 / 2.0;
    if mapping[0].low_hz != 0.0 {
        return Err(Error::NonContiguousMapping("first band must start at 0".into()));
    }
    if (mapping.last().unwrap().high_hz - nyquist).abs() > 1e-9 {
        return Err(Error::NonContiguousMapping("last band must end at Nyquist".into()));
    }
    for w in mapping.windows(2) {
        if (w[0].high_hz - w[1].low_hz).abs() > 1e-9 {
            return Err(Error::NonContiguousMapping(format!(
                "gap between {} Hz and {} Hz",
                w[0].high_hz, w[1].low_hz
            )));
        }
    }
    let lowpass_or_edge = |hz: f64| -> Result<Vec<f64>> {
        if hz <= 0.0 {
            Ok(vec![0.0; n_taps])
        } else if (hz - nyquist).abs() < 1e-9 {
            let mut delta = vec![0.0; n_taps];
            if n_taps % 2 == 0 {
                return Err(Error::FilterDesign("n_taps must be odd".into()));
            }
            delta[(n_taps - 1) / 2] = 1.0;
            Ok(delta)
        } else {
            design_lowpass(hz, n_taps, sample_rate)
        }
    };
    let taps_per_band = mapping
        .par_iter()
        .map(|band| {
            let hi = lowpass_or_edge(band.high_hz)?;
            let lo = lowpass_or_edge(band.low_hz)?;
            Ok(hi.iter().zip(&lo).map(|(h, l)| h - l).collect())
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(FilterBank { bands: mapping.to_vec(), taps_per_band, sample_rate })
}

/// The subband decomposition of a stereo buffer: one stereo signal per band
/// at the input sample rate.
#[derive(Debug, Clone)]
pub struct SubbandStereo {
    pub bands: Vec<StereoBuffer>,
    pub specs: Vec<BandSpec>,
    /// Group delay of the analysis filters, samples.
    pub group_delay: usize,
    /// True when band signals were trimmed back onto the input timeline.
    pub delay_compensated: bool,
}

impl SubbandStereo {
    pub fn sample_rate(&self) -> u32 {
        self.bands[0].sample_rate
    }
}

/// Filters a stereo buffer through every band (overlap-add fast
/// convolution) and trims the group delay so bands align with the input.
pub fn analyze(buf: &StereoBuffer, bank: &FilterBank) -> Result<SubbandStereo> {
    analyze_with_delay(buf, bank, true)
}

/// As `analyze`; `compensate = false` keeps the raw filter delay and tail,
/// for listenability exports.
pub fn analyze_with_delay(buf: &StereoBuffer, bank: &FilterBank, compensate: bool) -> Result<SubbandStereo> {
    if buf.sample_rate != bank.sample_rate {
        return Err(Error::SampleRateMismatch(buf.sample_rate, bank.sample_rate));
    }
    let gd = bank.group_delay();
    let n = buf.len();
    let bands: Vec<StereoBuffer> = bank
        .taps_per_band
        .par_iter()
        .map(|taps| {
            let conv = FftConvolver::new(taps);
            let (mut left, mut right) =
                rayon::join(|| conv.convolve(&buf.left), || conv.convolve(&buf.right));
            if compensate {
                left.drain(..gd.min(left.len()));
                left.truncate(n);
                left.resize(n, 0.0);
                right.drain(..gd.min(right.len()));
                right.truncate(n);
                right.resize(n, 0.0);
            }
            StereoBuffer::new(left, right, buf.sample_rate)
        })
        .collect::<Result<_>>()?;
    Ok(SubbandStereo {
        bands,
        specs: bank.bands.clone(),
        group_delay: gd,
        delay_compensated: compensate,
    })
}

/// Sums the selected bands (1-based indices). With every band selected this
/// reconstructs the analysis input up to the (compensated) group delay.
pub fn resynthesize(sub: &SubbandStereo, selection: &[usize]) -> Result<StereoBuffer> {
    if selection.is_empty() {
        return Err(Error::EmptySelection);
    }
    let n = sub.bands[0].len();
    let mut left = vec![0.0; n];
    let mut right = vec![0.0; n];
    for &idx in selection {
        let band = sub
            .specs
            .iter()
            .position(|s| s.index == idx)
            .ok_or_else(|| Error::Config(format!("no band with index {idx}")))?;
        for (o, &x) in left.iter_mut().zip(&sub.bands[band].left) {
            *o += x;
        }
        for (o, &x) in right.iter_mut().zip(&sub.bands[band].right) {
            *o += x;
        }
    }
    StereoBuffer::new(left, right, sub.sample_rate())
}
