//! Stereo scene simulation and subband cartography analysis.
//!
//! The library has two halves:
//!
//! * a free-field simulator that renders point-source scenes through a
//!   near-coincident stereo pair (`geometry`, `render`), and
//! * an analyser that decomposes a stereo recording into 10 listenable
//!   perceptive subbands (`filterbank`), estimates windowed interchannel
//!   delay/attenuation laws per subband, and maps sources from their
//!   histograms (`carto`, `energy`).

pub mod carto;
pub mod energy;
pub mod error;
mod fastconv;
pub mod filterbank;
pub mod geometry;
pub mod render;

pub use error::Error;

/// Library result alias.
pub type Result<T> = std::result::Result<T, Error>;
