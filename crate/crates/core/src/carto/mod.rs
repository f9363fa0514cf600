//! Windowed interchannel cue estimation and source cartography.
//!
//! Under a short static-scene assumption each analysis window of each
//! subband yields one (delta t, delta E) estimate from the interchannel
//! cross-correlation. The per-band time series of these estimates are the
//! temporal laws; their histograms expose the fixed sources as peaks, and
//! cross-band association of joint-histogram peaks yields source candidates.

mod candidates;
mod estimate;
mod histogram;

pub use candidates::{extract_candidates, run_cartography, CartoAnalysis, SourceCandidate};
pub use estimate::{
    estimate_frame, smooth_law, temporal_laws, EstimateConfig, FrameEstimate, LawConfig,
    TemporalLaw,
};
pub use histogram::{
    detect_peaks, detect_peaks_2d, global_histogram, histogram_of_law, joint_histogram,
    HistAxis, Histogram, Histogram2d, HistogramConfig, Peak, Peak2d, PeakConfig,
};

/// Full configuration of a cartography run.
#[derive(Debug, Clone, Copy, Default)]
pub struct CartoConfig {
    pub law: LawConfig,
    pub hist: HistogramConfig,
    pub peaks: PeakConfig,
}
