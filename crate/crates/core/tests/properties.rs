//! Randomized invariants of the estimator, histograms, and smoothing.

use proptest::prelude::*;

use stereocarto_core::carto::{
    estimate_frame, global_histogram, histogram_of_law, joint_histogram, smooth_law,
    EstimateConfig, FrameEstimate, HistAxis, HistogramConfig, TemporalLaw,
};

const SR: u32 = 44_100;

fn noise(n: usize, mut s: u64) -> Vec<f64> {
    s = s.max(1);
    (0..n)
        .map(|_| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s as f64 / u64::MAX as f64) * 2.0 - 1.0
        })
        .collect()
}

/// left/right pair where right = scale * left delayed by `shift` samples.
fn shifted_pair(seed: u64, shift: usize, scale: f64) -> (Vec<f64>, Vec<f64>) {
    let w = 2205;
    let x = noise(w + shift, seed);
    let left = x[shift..].to_vec();
    let right: Vec<f64> = x[..w].iter().map(|v| scale * v).collect();
    (left, right)
}

fn law_from(frames: &[(f64, f64, bool)]) -> TemporalLaw {
    TemporalLaw {
        band: 1,
        window_s: 0.05,
        hop_s: 0.05,
        frames: frames
            .iter()
            .enumerate()
            .map(|(i, &(dt, de, valid))| FrameEstimate {
                frame_index: i,
                time: 0.05 * i as f64,
                delta_t: dt,
                delta_e: de,
                peak_correlation: 1.0,
                valid,
            })
            .collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn channel_swap_negates_cues(seed in 1u64..u64::MAX, shift in 0usize..60, scale in 0.2f64..4.0) {
        let (left, right) = shifted_pair(seed, shift, scale);
        let cfg = EstimateConfig::default();
        let a = estimate_frame(&left, &right, SR, &cfg).unwrap();
        let b = estimate_frame(&right, &left, SR, &cfg).unwrap();
        prop_assert!(a.valid && b.valid);
        prop_assert!((a.delta_t + b.delta_t).abs() < 1e-9);
        prop_assert!((a.delta_e + b.delta_e).abs() < 1e-9);
    }

    #[test]
    fn joint_positive_scaling_changes_nothing(seed in 1u64..u64::MAX, shift in 0usize..60, g in 1e-3f64..1e3) {
        let (left, right) = shifted_pair(seed, shift, 0.7);
        let cfg = EstimateConfig::default();
        let a = estimate_frame(&left, &right, SR, &cfg).unwrap();
        let ls: Vec<f64> = left.iter().map(|v| v * g).collect();
        let rs: Vec<f64> = right.iter().map(|v| v * g).collect();
        let b = estimate_frame(&ls, &rs, SR, &cfg).unwrap();
        prop_assert!((a.delta_t - b.delta_t).abs() < 1e-9);
        prop_assert!((a.delta_e - b.delta_e).abs() < 1e-9);
        prop_assert!((a.peak_correlation - b.peak_correlation).abs() < 1e-9);
        prop_assert_eq!(a.valid, b.valid);
    }

    #[test]
    fn histogram_mass_equals_valid_frames(
        frames in prop::collection::vec((-3e-3f64..3e-3, -30f64..30.0, any::<bool>()), 0..200)
    ) {
        let law = law_from(&frames);
        let n_valid = frames.iter().filter(|f| f.2).count() as u64;
        let cfg = HistogramConfig::default();
        let d = histogram_of_law(&law, HistAxis::Delay, &cfg).unwrap();
        prop_assert_eq!(d.total(), n_valid);
        let joint = joint_histogram(std::slice::from_ref(&law), &cfg).unwrap();
        prop_assert_eq!(joint.counts.iter().sum::<u64>(), n_valid);
        // marginals agree with the 1-D histograms
        prop_assert_eq!(joint.delay_marginal(), d.counts);
        let e = histogram_of_law(&law, HistAxis::Attenuation, &cfg).unwrap();
        prop_assert_eq!(joint.de_marginal(), e.counts);
    }

    #[test]
    fn global_histogram_is_binwise_sum(
        laws in prop::collection::vec(
            prop::collection::vec((-2e-3f64..2e-3, -20f64..20.0, any::<bool>()), 1..60),
            1..10,
        )
    ) {
        let cfg = HistogramConfig::default();
        let hists: Vec<_> = laws
            .iter()
            .map(|f| histogram_of_law(&law_from(f), HistAxis::Delay, &cfg).unwrap())
            .collect();
        let global = global_histogram(&hists).unwrap();
        for bin in 0..global.counts.len() {
            let want: u64 = hists.iter().map(|h| h.counts[bin]).sum();
            prop_assert_eq!(global.counts[bin], want);
        }
    }

    #[test]
    fn smoothing_never_revives_gaps(
        frames in prop::collection::vec((-1e-3f64..1e-3, -10f64..10.0, any::<bool>()), 1..120),
        cutoff in 0.5f64..10.0,
    ) {
        let law = law_from(&frames);
        let smoothed = smooth_law(&law, cutoff);
        prop_assert_eq!(smoothed.frames.len(), law.frames.len());
        for (a, b) in law.frames.iter().zip(&smoothed.frames) {
            prop_assert_eq!(a.valid, b.valid);
            if !a.valid {
                // gap values untouched, never interpolated
                prop_assert_eq!(a.delta_t, b.delta_t);
                prop_assert_eq!(a.delta_e, b.delta_e);
            } else {
                prop_assert!(b.delta_t.is_finite() && b.delta_e.is_finite());
            }
        }
    }
}
