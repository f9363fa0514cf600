//! Overlap-add FFT convolution for long FIR filters.

use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Frequency-domain FIR convolver. Built once per tap vector, then applied
/// to any number of signals; `convolve` is deterministic and thread-safe.
pub(crate) struct FftConvolver {
    spectrum: Vec<Complex64>,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    fft_size: usize,
    block: usize,
    taps_len: usize,
}

impl FftConvolver {
    /// Block size is the smallest power of two >= 4x the tap count.
    pub fn new(taps: &[f64]) -> Self {
        assert!(!taps.is_empty());
        let fft_size = (4 * taps.len()).next_power_of_two();
        let block = fft_size - taps.len() + 1;
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(fft_size);
        let ifft = planner.plan_fft_inverse(fft_size);
        let mut spectrum: Vec<Complex64> = taps
            .iter()
            .map(|&t| Complex64::new(t, 0.0))
            .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
            .take(fft_size)
            .collect();
        fft.process(&mut spectrum);
        FftConvolver { spectrum, fft, ifft, fft_size, block, taps_len: taps.len() }
    }

    /// Full linear convolution, length `signal.len() + taps.len() - 1`.
    pub fn convolve(&self, signal: &[f64]) -> Vec<f64> {
        let out_len = signal.len() + self.taps_len - 1;
        let mut out = vec![0.0; out_len];
        let scale = 1.0 / self.fft_size as f64;
        let mut buf = vec![Complex64::new(0.0, 0.0); self.fft_size];
        for (b, chunk) in signal.chunks(self.block).enumerate() {
            for (i, slot) in buf.iter_mut().enumerate() {
                *slot = Complex64::new(chunk.get(i).copied().unwrap_or(0.0), 0.0);
            }
            self.fft.process(&mut buf);
            for (slot, h) in buf.iter_mut().zip(&self.spectrum) {
                *slot *= h;
            }
            self.ifft.process(&mut buf);
            let start = b * self.block;
            let take = (out_len - start).min(self.fft_size);
            for i in 0..take {
                out[start + i] += buf[i].re * scale;
            }
        }
        out
    }
}
