//! WAV ingestion and export on top of hound.
//!
//! Reads PCM 16/24-bit and 32-bit float, 1 or 2 channels, normalized to
//! floating [-1, 1]. Writes 16/24-bit PCM (clamped, with a clip count) or
//! 32-bit float.

use std::path::Path;

use stereocarto_core::geometry::MonoClip;
use stereocarto_core::render::StereoBuffer;

use crate::CliError;

/// Decoded audio file: one or two channels of normalized samples.
#[derive(Debug)]
pub struct WavData {
    pub channels: Vec<Vec<f64>>,
    pub sample_rate: u32,
    /// Encoding of the source file, reused for like-for-like exports.
    pub depth: BitDepth,
}

impl WavData {
    /// Stereo view; a mono file is duplicated into both channels.
    pub fn into_stereo(self) -> StereoBuffer {
        let mut ch = self.channels.into_iter();
        let left = ch.next().unwrap_or_default();
        let right = ch.next().unwrap_or_else(|| left.clone());
        StereoBuffer::new(left, right, self.sample_rate).expect("equal channel lengths")
    }

    /// Mono view; stereo files are rejected so stem mixing stays explicit.
    pub fn into_mono(self) -> Result<MonoClip, CliError> {
        if self.channels.len() != 1 {
            return Err(CliError::Config(format!(
                "expected a mono clip, got {} channels",
                self.channels.len()
            )));
        }
        Ok(MonoClip {
            samples: self.channels.into_iter().next().unwrap(),
            sample_rate: self.sample_rate,
        })
    }
}

pub fn read_wav(path: &Path) -> Result<WavData, CliError> {
    let mut reader = hound::WavReader::open(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let spec = reader.spec();
    if spec.channels == 0 || spec.channels > 2 {
        return Err(CliError::Config(format!(
            "{}: unsupported channel count {} (need 1 or 2)",
            path.display(),
            spec.channels
        )));
    }
    let depth = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Float, 32) => BitDepth::Float32,
        (hound::SampleFormat::Int, 16) => BitDepth::Pcm16,
        (hound::SampleFormat::Int, 24) => BitDepth::Pcm24,
        _ => BitDepth::Float32,
    };
    let interleaved: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Float, 32) => reader
            .samples::<f32>()
            .map(|s| s.map(|v| v as f64))
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        (hound::SampleFormat::Int, 16) => reader
            .samples::<i16>()
            .map(|s| s.map(|v| v as f64 / 32768.0))
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        (hound::SampleFormat::Int, 24) => reader
            .samples::<i32>()
            .map(|s| s.map(|v| v as f64 / 8_388_608.0))
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        (fmt, bits) => {
            return Err(CliError::Config(format!(
                "{}: unsupported encoding {bits}-bit {fmt:?} (need 16/24-bit PCM or 32-bit float)",
                path.display()
            )))
        }
    };
    let n_ch = spec.channels as usize;
    let mut channels = vec![Vec::with_capacity(interleaved.len() / n_ch); n_ch];
    for (i, v) in interleaved.into_iter().enumerate() {
        channels[i % n_ch].push(v);
    }
    Ok(WavData { channels, sample_rate: spec.sample_rate, depth })
}

/// Output sample encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitDepth {
    Pcm16,
    Pcm24,
    Float32,
}

impl std::str::FromStr for BitDepth {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "16" => Ok(BitDepth::Pcm16),
            "24" => Ok(BitDepth::Pcm24),
            "32f" | "32" | "float" => Ok(BitDepth::Float32),
            other => Err(format!("unknown bit depth '{other}' (use 16, 24 or 32f)")),
        }
    }
}

/// Writes a stereo buffer; returns the number of samples clamped at
/// integer depths (the caller decides whether to warn).
pub fn write_wav(buf: &StereoBuffer, path: &Path, depth: BitDepth) -> Result<u64, CliError> {
    if buf.is_empty() {
        return Err(CliError::Config(format!(
            "{}: refusing to write an empty buffer",
            path.display()
        )));
    }
    let spec = hound::WavSpec {
        channels: 2,
        sample_rate: buf.sample_rate,
        bits_per_sample: match depth {
            BitDepth::Pcm16 => 16,
            BitDepth::Pcm24 => 24,
            BitDepth::Float32 => 32,
        },
        sample_format: match depth {
            BitDepth::Float32 => hound::SampleFormat::Float,
            _ => hound::SampleFormat::Int,
        },
    };
    let mut writer = hound::WavWriter::create(path, spec)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut clipped = 0u64;
    let mut push = |v: f64| -> Result<(), CliError> {
        match depth {
            BitDepth::Float32 => writer
                .write_sample(v as f32)
                .map_err(|e| CliError::Io(e.to_string())),
            BitDepth::Pcm16 => {
                let scaled = v * 32768.0;
                let clamped = scaled.clamp(-32768.0, 32767.0);
                if scaled != clamped {
                    clipped += 1;
                }
                writer
                    .write_sample(clamped.round() as i16)
                    .map_err(|e| CliError::Io(e.to_string()))
            }
            BitDepth::Pcm24 => {
                let scaled = v * 8_388_608.0;
                let clamped = scaled.clamp(-8_388_608.0, 8_388_607.0);
                if scaled != clamped {
                    clipped += 1;
                }
                writer
                    .write_sample(clamped.round() as i32)
                    .map_err(|e| CliError::Io(e.to_string()))
            }
        }
    };
    for i in 0..buf.len() {
        push(buf.left[i])?;
        push(buf.right[i])?;
    }
    writer
        .finalize()
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(clipped)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_round_trip_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rt.wav");
        let left: Vec<f64> = (0..500).map(|i| ((i as f32) * 0.013).sin() as f64).collect();
        let right: Vec<f64> = left.iter().map(|v| -v).collect();
        let buf = StereoBuffer::new(left, right, 48_000).unwrap();
        write_wav(&buf, &path, BitDepth::Float32).unwrap();
        let back = read_wav(&path).unwrap().into_stereo();
        assert_eq!(back.sample_rate, 48_000);
        assert_eq!(back.left, buf.left);
        assert_eq!(back.right, buf.right);
    }

    #[test]
    fn pcm16_read_matches_header_count_and_clips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pcm.wav");
        let buf = StereoBuffer::new(vec![0.5, 1.7, -2.0], vec![0.0; 3], 44_100).unwrap();
        let clipped = write_wav(&buf, &path, BitDepth::Pcm16).unwrap();
        assert_eq!(clipped, 2);
        let back = read_wav(&path).unwrap();
        assert_eq!(back.channels.len(), 2);
        assert_eq!(back.channels[0].len(), 3);
        assert!((back.channels[0][0] - 0.5).abs() < 1e-4);
        assert!((back.channels[0][1] - 0.99997).abs() < 1e-4);
    }

    #[test]
    fn three_channel_file_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("3ch.wav");
        let spec = hound::WavSpec {
            channels: 3,
            sample_rate: 44_100,
            bits_per_sample: 16,
            sample_format: hound::SampleFormat::Int,
        };
        let mut w = hound::WavWriter::create(&path, spec).unwrap();
        for _ in 0..6 {
            w.write_sample(0i16).unwrap();
        }
        w.finalize().unwrap();
        let err = read_wav(&path).unwrap_err();
        assert!(err.to_string().contains("channel count 3"), "{err}");
    }

    #[test]
    fn empty_buffer_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let buf = StereoBuffer::new(vec![], vec![], 44_100).unwrap();
        assert!(write_wav(&buf, &dir.path().join("e.wav"), BitDepth::Float32).is_err());
    }
}
