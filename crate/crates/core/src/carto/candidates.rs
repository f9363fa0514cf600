//! Cross-band association of histogram peaks into source candidates.

use std::collections::BTreeSet;

use crate::carto::estimate::{temporal_laws, TemporalLaw};
use crate::carto::histogram::{
    detect_peaks_2d, global_histogram, histogram_of_law, joint_histogram, HistAxis, Histogram,
    Histogram2d,
};
use crate::carto::CartoConfig;
use crate::filterbank::SubbandStereo;
use crate::geometry::{locate_source, InterchannelParams, LocateConfig, LocatedSource, MicPair};
use crate::Result;

/// Everything a cartography pass produces: per-band laws, per-band and
/// global 1-D histograms, and per-band joint histograms.
#[derive(Debug, Clone)]
pub struct CartoAnalysis {
    pub laws: Vec<TemporalLaw>,
    pub band_delay: Vec<Histogram>,
    pub band_attenuation: Vec<Histogram>,
    pub global_delay: Histogram,
    pub global_attenuation: Histogram,
    pub band_joint: Vec<Histogram2d>,
    pub config: CartoConfig,
}

/// Runs the full law + histogram pipeline on a subband decomposition.
pub fn run_cartography(sub: &SubbandStereo, cfg: &CartoConfig) -> Result<CartoAnalysis> {
    let laws = temporal_laws(sub, &cfg.law)?;
    let band_delay = laws
        .iter()
        .map(|law| histogram_of_law(law, HistAxis::Delay, &cfg.hist))
        .collect::<Result<Vec<_>>>()?;
    let band_attenuation = laws
        .iter()
        .map(|law| histogram_of_law(law, HistAxis::Attenuation, &cfg.hist))
        .collect::<Result<Vec<_>>>()?;
    let global_delay = global_histogram(&band_delay)?;
    let global_attenuation = global_histogram(&band_attenuation)?;
    let band_joint = laws
        .iter()
        .map(|law| joint_histogram(std::slice::from_ref(law), &cfg.hist))
        .collect::<Result<Vec<_>>>()?;
    Ok(CartoAnalysis {
        laws,
        band_delay,
        band_attenuation,
        global_delay,
        global_attenuation,
        band_joint,
        config: *cfg,
    })
}

/// One associated (delta t, delta E) couple, with the bands that vouch for
/// it and, when a pair model is supplied, its inverted position.
#[derive(Debug, Clone)]
pub struct SourceCandidate {
    pub delta_t: f64,
    pub delta_e: f64,
    /// Total valid-frame count under the merged peaks.
    pub support: u64,
    pub bands: BTreeSet<usize>,
    pub location: Option<LocatedSource>,
}

/// Merges per-band joint-histogram peaks into ranked source candidates.
///
/// Peaks from different bands are considered the same source when they fall
/// within one bin of each other on both axes. Candidates are ranked by
/// support (total contributing frame count).
pub fn extract_candidates(
    analysis: &CartoAnalysis,
    locate: Option<(&MicPair, &LocateConfig)>,
) -> Vec<SourceCandidate> {
    struct Cluster {
        anchor_dt: usize,
        anchor_de: usize,
        dt_sum: f64,
        de_sum: f64,
        weight: f64,
        support: u64,
        bands: BTreeSet<usize>,
    }

    let mut clusters: Vec<Cluster> = Vec::new();
    let mut peaks: Vec<(usize, crate::carto::histogram::Peak2d)> = analysis
        .band_joint
        .iter()
        .flat_map(|joint| {
            let band = joint.band.unwrap_or(0);
            detect_peaks_2d(joint, &analysis.config.peaks)
                .into_iter()
                .map(move |p| (band, p))
        })
        .collect();
    peaks.sort_by(|a, b| {
        b.1.count
            .cmp(&a.1.count)
            .then(a.0.cmp(&b.0))
            .then(a.1.delay_bin.cmp(&b.1.delay_bin))
            .then(a.1.de_bin.cmp(&b.1.de_bin))
    });

    for (band, p) in peaks {
        let hit = clusters.iter_mut().find(|c| {
            p.delay_bin.abs_diff(c.anchor_dt) <= 1 && p.de_bin.abs_diff(c.anchor_de) <= 1
        });
        let w = p.count as f64;
        match hit {
            Some(c) => {
                c.dt_sum += w * p.delta_t;
                c.de_sum += w * p.delta_e;
                c.weight += w;
                c.support += p.count;
                c.bands.insert(band);
            }
            None => clusters.push(Cluster {
                anchor_dt: p.delay_bin,
                anchor_de: p.de_bin,
                dt_sum: w * p.delta_t,
                de_sum: w * p.delta_e,
                weight: w,
                support: p.count,
                bands: BTreeSet::from([band]),
            }),
        }
    }

    let mut out: Vec<SourceCandidate> = clusters
        .into_iter()
        .map(|c| {
            let delta_t = c.dt_sum / c.weight;
            let delta_e = c.de_sum / c.weight;
            let location = locate.and_then(|(mic, cfg)| {
                locate_source(InterchannelParams { delta_t, delta_e }, mic, cfg).ok()
            });
            SourceCandidate {
                delta_t,
                delta_e,
                support: c.support,
                bands: c.bands,
                location,
            }
        })
        .collect();
    out.sort_by(|a, b| b.support.cmp(&a.support).then(a.delta_t.total_cmp(&b.delta_t)));
    out
}
