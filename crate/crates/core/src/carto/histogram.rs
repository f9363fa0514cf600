//! Histograms of temporal-law estimates and their peak detection.

use crate::carto::estimate::TemporalLaw;
use crate::{Error, Result};

/// Which cue a 1-D histogram counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistAxis {
    /// delta t, stored in seconds.
    Delay,
    /// delta E, stored in dB.
    Attenuation,
}

/// Binning of both cue axes.
#[derive(Debug, Clone, Copy)]
pub struct HistogramConfig {
    pub delay_bin_s: f64,
    /// Histogram spans [-delay_range_s, +delay_range_s).
    pub delay_range_s: f64,
    pub de_bin_db: f64,
    pub de_range_db: f64,
}

impl Default for HistogramConfig {
    fn default() -> Self {
        HistogramConfig {
            delay_bin_s: 10e-6,
            delay_range_s: 1.5e-3,
            de_bin_db: 0.25,
            de_range_db: 24.0,
        }
    }
}

impl HistogramConfig {
    fn axis(&self, axis: HistAxis) -> (f64, f64) {
        match axis {
            HistAxis::Delay => (self.delay_bin_s, self.delay_range_s),
            HistAxis::Attenuation => (self.de_bin_db, self.de_range_db),
        }
    }
}

/// Uniform-bin histogram of one cue axis. `band` is None for a global
/// (summed) histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub axis: HistAxis,
    pub lo: f64,
    pub bin_width: f64,
    pub counts: Vec<u64>,
    pub band: Option<usize>,
    /// Number of estimates that fell outside the range and were clipped
    /// into the edge bins.
    pub overflow: u64,
}

impl Histogram {
    pub fn bin_center(&self, i: usize) -> f64 {
        self.lo + (i as f64 + 0.5) * self.bin_width
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    fn bin_of(&self, v: f64) -> (usize, bool) {
        let raw = ((v - self.lo) / self.bin_width).floor();
        if raw < 0.0 {
            (0, true)
        } else if raw as usize >= self.counts.len() {
            (self.counts.len() - 1, true)
        } else {
            (raw as usize, false)
        }
    }
}

fn empty_histogram(axis: HistAxis, cfg: &HistogramConfig, band: Option<usize>) -> Result<Histogram> {
    let (bin, range) = cfg.axis(axis);
    if !(bin > 0.0 && range > 0.0) {
        return Err(Error::Config("histogram bin and range must be > 0".into()));
    }
    let n = (2.0 * range / bin).round() as usize;
    if n == 0 {
        return Err(Error::Config("histogram has zero bins".into()));
    }
    Ok(Histogram {
        axis,
        lo: -range,
        bin_width: bin,
        counts: vec![0; n],
        band,
        overflow: 0,
    })
}

/// Histogram of the valid frames of one law. Out-of-range estimates are
/// clipped into the edge bins and counted in `overflow`; total mass always
/// equals the number of valid frames.
pub fn histogram_of_law(law: &TemporalLaw, axis: HistAxis, cfg: &HistogramConfig) -> Result<Histogram> {
    let mut hist = empty_histogram(axis, cfg, Some(law.band))?;
    for frame in law.valid_frames() {
        let v = match axis {
            HistAxis::Delay => frame.delta_t,
            HistAxis::Attenuation => frame.delta_e,
        };
        let (bin, clipped) = hist.bin_of(v);
        hist.counts[bin] += 1;
        if clipped {
            hist.overflow += 1;
        }
    }
    Ok(hist)
}

/// Bin-wise sum of per-band histograms sharing one binning.
pub fn global_histogram(per_band: &[Histogram]) -> Result<Histogram> {
    let first = per_band
        .first()
        .ok_or_else(|| Error::BinningMismatch("no histograms to sum".into()))?;
    let mut out = Histogram {
        axis: first.axis,
        lo: first.lo,
        bin_width: first.bin_width,
        counts: vec![0; first.counts.len()],
        band: None,
        overflow: 0,
    };
    for h in per_band {
        if h.axis != first.axis
            || h.lo != first.lo
            || h.bin_width != first.bin_width
            || h.counts.len() != first.counts.len()
        {
            return Err(Error::BinningMismatch(format!(
                "band {:?} binning differs from band {:?}",
                h.band, first.band
            )));
        }
        for (o, c) in out.counts.iter_mut().zip(&h.counts) {
            *o += c;
        }
        out.overflow += h.overflow;
    }
    Ok(out)
}

/// 2-D histogram over (delay, attenuation), row-major in delay bins.
#[derive(Debug, Clone)]
pub struct Histogram2d {
    pub delay_lo: f64,
    pub delay_bin: f64,
    pub n_delay: usize,
    pub de_lo: f64,
    pub de_bin: f64,
    pub n_de: usize,
    pub counts: Vec<u64>,
    pub band: Option<usize>,
    pub overflow: u64,
}

impl Histogram2d {
    pub fn count(&self, dt_bin: usize, de_bin: usize) -> u64 {
        self.counts[dt_bin * self.n_de + de_bin]
    }

    pub fn delay_center(&self, dt_bin: usize) -> f64 {
        self.delay_lo + (dt_bin as f64 + 0.5) * self.delay_bin
    }

    pub fn de_center(&self, de_bin: usize) -> f64 {
        self.de_lo + (de_bin as f64 + 0.5) * self.de_bin
    }

    /// Marginals match the corresponding 1-D histograms bin by bin.
    pub fn delay_marginal(&self) -> Vec<u64> {
        (0..self.n_delay)
            .map(|i| (0..self.n_de).map(|j| self.count(i, j)).sum())
            .collect()
    }

    pub fn de_marginal(&self) -> Vec<u64> {
        (0..self.n_de)
            .map(|j| (0..self.n_delay).map(|i| self.count(i, j)).sum())
            .collect()
    }
}

fn clip(v: f64, lo: f64, bin: f64, n: usize) -> (usize, bool) {
    let raw = ((v - lo) / bin).floor();
    if raw < 0.0 {
        (0, true)
    } else if raw as usize >= n {
        (n - 1, true)
    } else {
        (raw as usize, false)
    }
}

/// Joint (delay x attenuation) histogram over the valid frames of the given
/// laws. Pass a single law for a per-band joint histogram.
pub fn joint_histogram(laws: &[TemporalLaw], cfg: &HistogramConfig) -> Result<Histogram2d> {
    if !(cfg.delay_bin_s > 0.0 && cfg.de_bin_db > 0.0) {
        return Err(Error::Config("histogram bins must be > 0".into()));
    }
    let n_delay = (2.0 * cfg.delay_range_s / cfg.delay_bin_s).round() as usize;
    let n_de = (2.0 * cfg.de_range_db / cfg.de_bin_db).round() as usize;
    let band = match laws {
        [only] => Some(only.band),
        _ => None,
    };
    let mut hist = Histogram2d {
        delay_lo: -cfg.delay_range_s,
        delay_bin: cfg.delay_bin_s,
        n_delay,
        de_lo: -cfg.de_range_db,
        de_bin: cfg.de_bin_db,
        n_de,
        counts: vec![0; n_delay * n_de],
        band,
        overflow: 0,
    };
    for law in laws {
        for frame in law.valid_frames() {
            let (i, c1) = clip(frame.delta_t, hist.delay_lo, hist.delay_bin, n_delay);
            let (j, c2) = clip(frame.delta_e, hist.de_lo, hist.de_bin, n_de);
            hist.counts[i * n_de + j] += 1;
            if c1 || c2 {
                hist.overflow += 1;
            }
        }
    }
    Ok(hist)
}

/// Peak detection thresholds.
#[derive(Debug, Clone, Copy)]
pub struct PeakConfig {
    /// Fraction of the histogram maximum a peak must reach.
    pub min_rel_height: f64,
    /// Minimum distance between reported peaks, bins.
    pub min_separation_bins: usize,
}

impl Default for PeakConfig {
    fn default() -> Self {
        PeakConfig {
            min_rel_height: 0.1,
            min_separation_bins: 3,
        }
    }
}

/// A detected 1-D histogram peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub bin: usize,
    pub center: f64,
    pub count: u64,
}

/// Local maxima above `min_rel_height * max`, greedily suppressed within
/// `min_separation_bins`, sorted by count descending.
pub fn detect_peaks(hist: &Histogram, cfg: &PeakConfig) -> Vec<Peak> {
    let max = hist.counts.iter().copied().max().unwrap_or(0);
    if max == 0 {
        return Vec::new();
    }
    let threshold = ((cfg.min_rel_height * max as f64).ceil() as u64).max(1);
    let n = hist.counts.len();
    let mut raw: Vec<Peak> = (0..n)
        .filter(|&i| {
            let c = hist.counts[i];
            c >= threshold
                && (i == 0 || hist.counts[i - 1] <= c)
                && (i + 1 == n || hist.counts[i + 1] < c)
        })
        .map(|i| Peak { bin: i, center: hist.bin_center(i), count: hist.counts[i] })
        .collect();
    raw.sort_by(|a, b| b.count.cmp(&a.count).then(a.bin.cmp(&b.bin)));
    let mut peaks: Vec<Peak> = Vec::new();
    for p in raw {
        if peaks
            .iter()
            .all(|q| p.bin.abs_diff(q.bin) >= cfg.min_separation_bins)
        {
            peaks.push(p);
        }
    }
    peaks
}

/// A detected joint-histogram peak.
#[derive(Debug, Clone, Copy)]
pub struct Peak2d {
    pub delay_bin: usize,
    pub de_bin: usize,
    pub delta_t: f64,
    pub delta_e: f64,
    pub count: u64,
}

/// 2-D local maxima (8-neighborhood) above threshold, suppressed within
/// `min_separation_bins` Chebyshev distance, sorted by count descending.
pub fn detect_peaks_2d(hist: &Histogram2d, cfg: &PeakConfig) -> Vec<Peak2d> {
    let max = hist.counts.iter().copied().max().unwrap_or(0);
    if max == 0 {
        return Vec::new();
    }
    let threshold = ((cfg.min_rel_height * max as f64).ceil() as u64).max(1);
    let mut raw: Vec<Peak2d> = Vec::new();
    for i in 0..hist.n_delay {
        'cell: for j in 0..hist.n_de {
            let c = hist.count(i, j);
            if c < threshold {
                continue;
            }
            for di in -1isize..=1 {
                for dj in -1isize..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ni, nj) = (i as isize + di, j as isize + dj);
                    if ni < 0 || nj < 0 || ni as usize >= hist.n_delay || nj as usize >= hist.n_de {
                        continue;
                    }
                    let nc = hist.count(ni as usize, nj as usize);
                    // strict on the lower-right to break plateau ties
                    if nc > c || (nc == c && (di, dj) < (0, 0)) {
                        continue 'cell;
                    }
                }
            }
            raw.push(Peak2d {
                delay_bin: i,
                de_bin: j,
                delta_t: hist.delay_center(i),
                delta_e: hist.de_center(j),
                count: c,
            });
        }
    }
    raw.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then(a.delay_bin.cmp(&b.delay_bin))
            .then(a.de_bin.cmp(&b.de_bin))
    });
    let mut peaks: Vec<Peak2d> = Vec::new();
    for p in raw {
        if peaks.iter().all(|q| {
            p.delay_bin
                .abs_diff(q.delay_bin)
                .max(p.de_bin.abs_diff(q.de_bin))
                >= cfg.min_separation_bins
        }) {
            peaks.push(p);
        }
    }
    peaks
}
