//! JSON scene configuration and its translation into a core `Scene`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use stereocarto_core::geometry::{
    Directivity, MicPair, PointSource, Scene, SourcePosition, Trajectory,
};

use crate::wav::read_wav;
use crate::CliError;

fn default_spacing() -> f64 {
    0.17
}
fn default_half_angle() -> f64 {
    55.0
}
fn default_sound_speed() -> f64 {
    343.0
}
fn default_directivity() -> String {
    "cardioid".into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MicConfig {
    #[serde(default = "default_spacing")]
    pub spacing_m: f64,
    #[serde(default = "default_half_angle")]
    pub axis_half_angle_deg: f64,
    #[serde(default = "default_directivity")]
    pub directivity: String,
    #[serde(default = "default_sound_speed")]
    pub sound_speed_mps: f64,
}

impl Default for MicConfig {
    fn default() -> Self {
        MicConfig {
            spacing_m: default_spacing(),
            axis_half_angle_deg: default_half_angle(),
            directivity: default_directivity(),
            sound_speed_mps: default_sound_speed(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrajectoryConfig {
    Static {
        distance_m: f64,
        azimuth_deg: f64,
    },
    Circle {
        radius_m: f64,
        start_azimuth_deg: f64,
        angular_speed_deg_s: f64,
    },
    Waypoints {
        points: Vec<WaypointConfig>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WaypointConfig {
    pub time_s: f64,
    pub distance_m: f64,
    pub azimuth_deg: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SourceConfig {
    /// Mono WAV path, relative to the scene file.
    pub clip: String,
    #[serde(default)]
    pub gain_db: f64,
    pub trajectory: TrajectoryConfig,
}

/// The on-disk scene document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneConfigDocument {
    pub sample_rate: u32,
    pub duration_s: f64,
    #[serde(default)]
    pub mic: MicConfig,
    pub sources: Vec<SourceConfig>,
}

impl SceneConfigDocument {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| {
            CliError::Config(format!(
                "{}: line {}, column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            ))
        })
    }

    /// Loads every clip and builds the core scene. Clip paths resolve
    /// relative to `base_dir` (normally the scene file's directory).
    pub fn build_scene(&self, base_dir: &Path) -> Result<Scene, CliError> {
        let directivity = match self.mic.directivity.as_str() {
            "cardioid" => Directivity::Cardioid,
            "omni" => Directivity::Omni,
            other => {
                return Err(CliError::Config(format!(
                    "mic.directivity: unknown value '{other}' (use cardioid or omni)"
                )))
            }
        };
        let mic = MicPair {
            capsule_spacing: self.mic.spacing_m,
            axis_half_angle: self.mic.axis_half_angle_deg,
            directivity,
            sound_speed: self.mic.sound_speed_mps,
        };
        let mut sources = Vec::with_capacity(self.sources.len());
        for (i, src) in self.sources.iter().enumerate() {
            let clip_path = base_dir.join(&src.clip);
            let clip = read_wav(&clip_path)?.into_mono().map_err(|e| {
                CliError::Config(format!("sources[{i}].clip: {e}"))
            })?;
            let trajectory = match &src.trajectory {
                TrajectoryConfig::Static { distance_m, azimuth_deg } => {
                    Trajectory::Static(SourcePosition::new(*distance_m, *azimuth_deg))
                }
                TrajectoryConfig::Circle {
                    radius_m,
                    start_azimuth_deg,
                    angular_speed_deg_s,
                } => Trajectory::Circle {
                    radius: *radius_m,
                    start_azimuth: *start_azimuth_deg,
                    angular_speed: *angular_speed_deg_s,
                },
                TrajectoryConfig::Waypoints { points } => Trajectory::Waypoints(
                    points
                        .iter()
                        .map(|w| (w.time_s, SourcePosition::new(w.distance_m, w.azimuth_deg)))
                        .collect(),
                ),
            };
            sources.push(PointSource {
                clip,
                gain: 10f64.powf(src.gain_db / 20.0),
                trajectory,
                name: src.clip.clone(),
            });
        }
        Ok(Scene {
            mic,
            sources,
            sample_rate: self.sample_rate,
            duration_s: self.duration_s,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_document() {
        let doc: SceneConfigDocument = serde_json::from_str(
            r#"{
                "sample_rate": 44100,
                "duration_s": 2.0,
                "sources": [
                    {"clip": "bass.wav",
                     "trajectory": {"kind": "static", "distance_m": 1.0, "azimuth_deg": 45.0}},
                    {"clip": "organ.wav", "gain_db": -3.0,
                     "trajectory": {"kind": "circle", "radius_m": 1.0,
                                    "start_azimuth_deg": 90.0, "angular_speed_deg_s": 36.0}}
                ]
            }"#,
        )
        .unwrap();
        assert_eq!(doc.mic.spacing_m, 0.17);
        assert_eq!(doc.mic.directivity, "cardioid");
        assert_eq!(doc.sources.len(), 2);
        assert!(matches!(doc.sources[1].trajectory, TrajectoryConfig::Circle { .. }));
    }

    #[test]
    fn bad_json_reports_position() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scene.json");
        std::fs::write(&path, "{\n  \"sample_rate\": oops\n}").unwrap();
        let err = SceneConfigDocument::from_file(&path).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
