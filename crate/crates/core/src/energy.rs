//! Integrated Spectral Density (ISD) and per-subband weight profiles.

use crate::filterbank::{BandSpec, SubbandStereo};
use crate::render::StereoBuffer;

/// Total energy of a signal: the sum of squared samples.
pub fn isd(signal: &[f64]) -> f64 {
    signal.iter().map(|x| x * x).sum()
}

/// Per-channel subband weights: 10 * log10(ISD(band) / ISD(original)).
#[derive(Debug, Clone)]
pub struct IsdProfile {
    pub bands: Vec<BandSpec>,
    /// dB ratios per band; meaningless when the channel is silent.
    pub left_db: Vec<f64>,
    pub right_db: Vec<f64>,
    /// Raw band energies, sample^2 units.
    pub left_raw: Vec<f64>,
    pub right_raw: Vec<f64>,
    pub left_total: f64,
    pub right_total: f64,
    /// False when the original channel has zero energy.
    pub left_defined: bool,
    pub right_defined: bool,
}

/// Computes the ISD profile of a subband decomposition against its original.
///
/// A silent original channel yields `*_defined = false` rather than an
/// error; the dB columns are then NaN.
pub fn isd_profile(sub: &SubbandStereo, original: &StereoBuffer) -> IsdProfile {
    let left_total = isd(&original.left);
    let right_total = isd(&original.right);
    let mut profile = IsdProfile {
        bands: sub.specs.clone(),
        left_db: Vec::with_capacity(sub.bands.len()),
        right_db: Vec::with_capacity(sub.bands.len()),
        left_raw: Vec::with_capacity(sub.bands.len()),
        right_raw: Vec::with_capacity(sub.bands.len()),
        left_total,
        right_total,
        left_defined: left_total > 0.0,
        right_defined: right_total > 0.0,
    };
    for band in &sub.bands {
        let l = isd(&band.left);
        let r = isd(&band.right);
        profile.left_raw.push(l);
        profile.right_raw.push(r);
        profile.left_db.push(if left_total > 0.0 {
            10.0 * (l / left_total).log10()
        } else {
            f64::NAN
        });
        profile.right_db.push(if right_total > 0.0 {
            10.0 * (r / right_total).log10()
        } else {
            f64::NAN
        });
    }
    profile
}
