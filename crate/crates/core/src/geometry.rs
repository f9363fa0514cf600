//! Scene description and the forward/inverse interchannel cue model.
//!
//! A near-coincident pair (two capsules on a short baseline, axes splayed
//! outward) maps a planar source position to an interchannel delay and an
//! interchannel level difference. `interchannel_params` is the forward map;
//! `locate_source` inverts it numerically by grid search.

use crate::{Error, Result};

/// Capsule directivity pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Directivity {
    /// Gain (1 + cos phi) / 2 relative to the capsule axis.
    Cardioid,
    /// Unity gain in all directions; the pair then carries delay cues only.
    Omni,
}

impl Directivity {
    fn gain(self, cos_phi: f64) -> f64 {
        match self {
            Directivity::Cardioid => 0.5 * (1.0 + cos_phi),
            Directivity::Omni => 1.0,
        }
    }
}

/// A two-capsule stereo pair on a horizontal baseline.
///
/// Defaults model an ORTF couple: 17 cm spacing, axes splayed +/-55 degrees,
/// cardioid capsules, c = 343 m/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicPair {
    /// Distance between the two capsules, meters.
    pub capsule_spacing: f64,
    /// Splay of each capsule axis away from straight ahead, degrees.
    /// The left capsule aims left.
    pub axis_half_angle: f64,
    pub directivity: Directivity,
    /// Speed of sound, m/s.
    pub sound_speed: f64,
}

impl Default for MicPair {
    fn default() -> Self {
        MicPair {
            capsule_spacing: 0.17,
            axis_half_angle: 55.0,
            directivity: Directivity::Cardioid,
            sound_speed: 343.0,
        }
    }
}

impl MicPair {
    pub fn validate(&self) -> Result<()> {
        if !(self.capsule_spacing > 0.0) {
            return Err(Error::Geometry("capsule_spacing must be > 0".into()));
        }
        if !(0.0..90.0).contains(&self.axis_half_angle) {
            return Err(Error::Geometry("axis_half_angle must be in [0, 90)".into()));
        }
        if !(self.sound_speed > 0.0) {
            return Err(Error::Geometry("sound_speed must be > 0".into()));
        }
        Ok(())
    }

    /// Largest possible |delta t|: the baseline traversal time.
    pub fn max_delay_s(&self) -> f64 {
        self.capsule_spacing / self.sound_speed
    }
}

/// Planar source position relative to the pair center.
///
/// Azimuth 0 is straight ahead; positive azimuth is toward the left capsule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourcePosition {
    /// Meters from the pair center.
    pub distance: f64,
    /// Degrees in (-180, 180].
    pub azimuth: f64,
}

impl SourcePosition {
    pub fn new(distance: f64, azimuth: f64) -> Self {
        SourcePosition { distance, azimuth }
    }

    fn validate(&self) -> Result<()> {
        if !(self.distance > 0.0) {
            return Err(Error::Geometry("distance must be > 0".into()));
        }
        if !(-180.0..=180.0).contains(&self.azimuth) || self.azimuth == -180.0 {
            return Err(Error::Geometry("azimuth must be in (-180, 180]".into()));
        }
        Ok(())
    }

    /// Cartesian coordinates: x toward the right capsule, y forward.
    fn xy(&self) -> (f64, f64) {
        let th = self.azimuth.to_radians();
        (-self.distance * th.sin(), self.distance * th.cos())
    }
}

/// Interchannel cue pair for a single source.
///
/// Positive `delta_t` / `delta_e` mean the left capsule receives the
/// wavefront first / louder. If the right channel is `A * s(t - tau)` with
/// the left channel `s(t)`, then `delta_t = tau` and
/// `delta_e = -20 log10(A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterchannelParams {
    /// Seconds.
    pub delta_t: f64,
    /// dB (amplitude ratio, 20 log10).
    pub delta_e: f64,
}

/// Per-capsule propagation state for one source position.
#[derive(Debug, Clone, Copy)]
pub struct CapsuleExcitation {
    /// Path length source -> capsule, meters.
    pub path: f64,
    /// Amplitude factor directivity_gain / path.
    pub amplitude: f64,
}

fn capsule(pos: (f64, f64), cap_x: f64, axis_deg: f64, dir: Directivity) -> Result<CapsuleExcitation> {
    let dx = pos.0 - cap_x;
    let dy = pos.1;
    let path = (dx * dx + dy * dy).sqrt();
    if path < 1e-9 {
        return Err(Error::SingularPosition);
    }
    let a = axis_deg.to_radians();
    // axis unit vector; positive axis_deg leans toward negative x (left)
    let (ax, ay) = (-a.sin(), a.cos());
    let cos_phi = (ax * dx + ay * dy) / path;
    Ok(CapsuleExcitation {
        path,
        amplitude: dir.gain(cos_phi) / path,
    })
}

/// Propagation state at both capsules for a source position.
pub fn capsule_excitations(pos: SourcePosition, mic: &MicPair) -> Result<(CapsuleExcitation, CapsuleExcitation)> {
    let xy = pos.xy();
    let half = mic.capsule_spacing / 2.0;
    let left = capsule(xy, -half, mic.axis_half_angle, mic.directivity)?;
    let right = capsule(xy, half, -mic.axis_half_angle, mic.directivity)?;
    Ok((left, right))
}

/// Forward map: source position -> (delta t, delta E) for a given pair.
pub fn interchannel_params(pos: SourcePosition, mic: &MicPair) -> Result<InterchannelParams> {
    pos.validate()?;
    mic.validate()?;
    let (left, right) = capsule_excitations(pos, mic)?;
    if left.amplitude <= 0.0 || right.amplitude <= 0.0 {
        // cardioid null: level ratio is undefined there
        return Err(Error::Geometry(format!(
            "source at ({} m, {} deg) sits in a capsule null",
            pos.distance, pos.azimuth
        )));
    }
    Ok(InterchannelParams {
        delta_t: (right.path - left.path) / mic.sound_speed,
        delta_e: 20.0 * (left.amplitude / right.amplitude).log10(),
    })
}

/// Source motion over the scene timeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Trajectory {
    Static(SourcePosition),
    Circle {
        radius: f64,
        start_azimuth: f64,
        /// Degrees per second, signed.
        angular_speed: f64,
    },
    /// Piecewise-linear in (distance, azimuth); clamped outside the range.
    Waypoints(Vec<(f64, SourcePosition)>),
}

fn wrap_azimuth(az: f64) -> f64 {
    let mut a = az % 360.0;
    if a <= -180.0 {
        a += 360.0;
    } else if a > 180.0 {
        a -= 360.0;
    }
    a
}

/// Position of a trajectory at time `t` seconds.
pub fn trajectory_state_at(traj: &Trajectory, t: f64) -> SourcePosition {
    match traj {
        Trajectory::Static(p) => *p,
        Trajectory::Circle {
            radius,
            start_azimuth,
            angular_speed,
        } => SourcePosition {
            distance: *radius,
            azimuth: wrap_azimuth(start_azimuth + angular_speed * t),
        },
        Trajectory::Waypoints(points) => {
            if points.is_empty() {
                return SourcePosition::new(1.0, 0.0);
            }
            if t <= points[0].0 {
                return points[0].1;
            }
            let last = points.len() - 1;
            if t >= points[last].0 {
                return points[last].1;
            }
            let i = points.partition_point(|(wt, _)| *wt <= t) - 1;
            let (t0, p0) = points[i];
            let (t1, p1) = points[i + 1];
            let u = (t - t0) / (t1 - t0);
            SourcePosition {
                distance: p0.distance + u * (p1.distance - p0.distance),
                azimuth: p0.azimuth + u * (p1.azimuth - p0.azimuth),
            }
        }
    }
}

/// A mono sample clip.
#[derive(Debug, Clone, PartialEq)]
pub struct MonoClip {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
}

/// One emitting point source.
#[derive(Debug, Clone)]
pub struct PointSource {
    pub clip: MonoClip,
    /// Linear amplitude scale >= 0.
    pub gain: f64,
    pub trajectory: Trajectory,
    /// Used in diagnostics and per-stem exports.
    pub name: String,
}

/// A full audio scene: one stereo pair plus point sources.
#[derive(Debug, Clone)]
pub struct Scene {
    pub mic: MicPair,
    pub sources: Vec<PointSource>,
    pub sample_rate: u32,
    pub duration_s: f64,
}

/// Result of `validate_scene`: hard violations plus non-fatal warnings.
#[derive(Debug, Clone, Default)]
pub struct SceneReport {
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl SceneReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn validate_trajectory(traj: &Trajectory, who: &str, out: &mut Vec<String>) {
    match traj {
        Trajectory::Static(p) => {
            if let Err(e) = p.validate() {
                out.push(format!("{who}: {e}"));
            }
        }
        Trajectory::Circle { radius, .. } => {
            if !(*radius > 0.0) {
                out.push(format!("{who}: circle radius must be > 0"));
            }
        }
        Trajectory::Waypoints(points) => {
            if points.is_empty() {
                out.push(format!("{who}: waypoint list is empty"));
            }
            for w in points.windows(2) {
                if w[1].0 <= w[0].0 {
                    out.push(format!("{who}: waypoint times must be strictly increasing"));
                    break;
                }
            }
            for (_, p) in points {
                if let Err(e) = p.validate() {
                    out.push(format!("{who}: {e}"));
                    break;
                }
            }
        }
    }
}

/// Checks every scene invariant; reports rather than fails.
///
/// Clips shorter than the scene duration are a warning (they are
/// zero-padded at render time), not a violation.
pub fn validate_scene(scene: &Scene) -> SceneReport {
    let mut report = SceneReport::default();
    if let Err(e) = scene.mic.validate() {
        report.violations.push(e.to_string());
    }
    if scene.sample_rate == 0 {
        report.violations.push("scene sample_rate must be > 0".into());
    }
    if !(scene.duration_s > 0.0) {
        report.violations.push("scene duration must be > 0".into());
    }
    if scene.sources.is_empty() {
        report.violations.push("scene has no sources".into());
    }
    for (i, src) in scene.sources.iter().enumerate() {
        let who = if src.name.is_empty() {
            format!("source {i}")
        } else {
            format!("source '{}'", src.name)
        };
        if src.clip.samples.is_empty() {
            report.violations.push(format!("{who}: clip is empty"));
        }
        if src.clip.sample_rate != scene.sample_rate {
            report.violations.push(format!(
                "{who}: clip sample rate {} differs from scene rate {}",
                src.clip.sample_rate, scene.sample_rate
            ));
        }
        if !(src.gain >= 0.0) {
            report.violations.push(format!("{who}: gain must be >= 0"));
        }
        validate_trajectory(&src.trajectory, &who, &mut report.violations);
        let clip_s = src.clip.samples.len() as f64 / src.clip.sample_rate.max(1) as f64;
        if clip_s + 1e-9 < scene.duration_s {
            report.warnings.push(format!(
                "{who}: clip ({clip_s:.3} s) shorter than scene ({:.3} s); zero-padded",
                scene.duration_s
            ));
        }
    }
    report
}

/// Search domain and weighting for `locate_source`.
#[derive(Debug, Clone, Copy)]
pub struct LocateConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub r_steps: usize,
    pub azimuth_steps: usize,
    /// Residual weighting: delay errors are measured in units of this value.
    pub delay_scale_s: f64,
    /// Residual weighting: level errors are measured in units of this value.
    pub level_scale_db: f64,
}

impl Default for LocateConfig {
    fn default() -> Self {
        LocateConfig {
            r_min: 0.2,
            r_max: 5.0,
            r_steps: 48,
            azimuth_steps: 96,
            delay_scale_s: 1e-3,
            level_scale_db: 1.0,
        }
    }
}

/// Inversion result.
#[derive(Debug, Clone, Copy)]
pub struct LocatedSource {
    pub position: SourcePosition,
    /// Weighted squared residual at the optimum.
    pub residual: f64,
    /// Set when the residual is nearly flat along distance at the optimum,
    /// e.g. on the azimuth-0 ridge where (0, 0 dB) fits every distance.
    pub distance_weakly_determined: bool,
}

fn residual_at(pos: SourcePosition, target: InterchannelParams, mic: &MicPair, cfg: &LocateConfig) -> f64 {
    match interchannel_params(pos, mic) {
        Ok(p) => {
            let dt = (p.delta_t - target.delta_t) / cfg.delay_scale_s;
            let de = (p.delta_e - target.delta_e) / cfg.level_scale_db;
            dt * dt + de * de
        }
        Err(_) => f64::INFINITY,
    }
}

/// Numeric inverse of `interchannel_params`: coarse grid search over
/// (distance, azimuth) in [r_min, r_max] x (-90, 90), iterative grid
/// refinement around the best cell, and a Gauss-Newton polish.
pub fn locate_source(
    params: InterchannelParams,
    mic: &MicPair,
    cfg: &LocateConfig,
) -> Result<LocatedSource> {
    mic.validate()?;
    if !params.delta_t.is_finite() || !params.delta_e.is_finite() {
        return Err(Error::Geometry("non-finite interchannel params".into()));
    }
    if !(cfg.r_min > 0.0) || cfg.r_max <= cfg.r_min || cfg.r_steps < 2 || cfg.azimuth_steps < 2 {
        return Err(Error::EmptySearchDomain(format!(
            "r in [{}, {}], {}x{} steps",
            cfg.r_min, cfg.r_max, cfg.r_steps, cfg.azimuth_steps
        )));
    }

    let mut r_lo = cfg.r_min;
    let mut r_hi = cfg.r_max;
    let mut az_lo = -89.9;
    let mut az_hi = 89.9;
    let mut best = (f64::INFINITY, SourcePosition::new(cfg.r_min, 0.0));

    for _ in 0..12 {
        let dr = (r_hi - r_lo) / (cfg.r_steps - 1) as f64;
        let da = (az_hi - az_lo) / (cfg.azimuth_steps - 1) as f64;
        for i in 0..cfg.r_steps {
            let r = r_lo + dr * i as f64;
            for j in 0..cfg.azimuth_steps {
                let az = az_lo + da * j as f64;
                let pos = SourcePosition::new(r, az);
                let res = residual_at(pos, params, mic, cfg);
                if res < best.0 {
                    best = (res, pos);
                }
            }
        }
        // shrink the window to 40% around the optimum; generous enough that
        // a shallow diagonal residual valley stays inside the next grid
        let r_half = 0.2 * (r_hi - r_lo);
        let az_half = 0.2 * (az_hi - az_lo);
        r_lo = (best.1.distance - r_half).max(cfg.r_min);
        r_hi = (best.1.distance + r_half).min(cfg.r_max);
        az_lo = (best.1.azimuth - az_half).max(-89.9);
        az_hi = (best.1.azimuth + az_half).min(89.9);
    }

    // Levenberg-Marquardt polish. The residual forms a narrow valley curved
    // in (r, theta) where the shrinking grid stalls, and near +-90 degrees
    // the Jacobian rows go almost parallel, so damp the Newton step.
    let f_at = |pos: SourcePosition| -> Option<(f64, f64)> {
        interchannel_params(pos, mic).ok().map(|p| {
            (
                (p.delta_t - params.delta_t) / cfg.delay_scale_s,
                (p.delta_e - params.delta_e) / cfg.level_scale_db,
            )
        })
    };
    let mut lambda = 1e-3;
    for _ in 0..200 {
        let pos = best.1;
        let Some(f) = f_at(pos) else { break };
        let hr = (pos.distance * 1e-6).max(1e-9);
        let ha = 1e-6;
        let (Some(fr), Some(fa)) = (
            f_at(SourcePosition::new(pos.distance + hr, pos.azimuth)),
            f_at(SourcePosition::new(pos.distance, pos.azimuth + ha)),
        ) else {
            break;
        };
        let j = [
            [(fr.0 - f.0) / hr, (fa.0 - f.0) / ha],
            [(fr.1 - f.1) / hr, (fa.1 - f.1) / ha],
        ];
        // normal equations (J^T J + lambda diag(J^T J)) d = -J^T f
        let a00 = j[0][0] * j[0][0] + j[1][0] * j[1][0];
        let a01 = j[0][0] * j[0][1] + j[1][0] * j[1][1];
        let a11 = j[0][1] * j[0][1] + j[1][1] * j[1][1];
        let g0 = -(j[0][0] * f.0 + j[1][0] * f.1);
        let g1 = -(j[0][1] * f.0 + j[1][1] * f.1);
        let m00 = a00 * (1.0 + lambda);
        let m11 = a11 * (1.0 + lambda);
        let det = m00 * m11 - a01 * a01;
        if det.abs() < 1e-30 {
            break;
        }
        let dr = (m11 * g0 - a01 * g1) / det;
        let da = (m00 * g1 - a01 * g0) / det;
        let cand = SourcePosition::new(
            (pos.distance + dr).clamp(cfg.r_min, cfg.r_max),
            (pos.azimuth + da).clamp(-89.9, 89.9),
        );
        let res = residual_at(cand, params, mic, cfg);
        if res < best.0 {
            best = (res, cand);
            lambda = (lambda * 0.5).max(1e-12);
            if best.0 < 1e-24 {
                break;
            }
        } else {
            lambda *= 8.0;
            if lambda > 1e12 {
                break;
            }
        }
    }

    // Curvature probe along distance: a flat residual means (delta t,
    // delta E) does not pin down r (notably the theta = 0 ridge).
    let probe = |r: f64| residual_at(SourcePosition::new(r, best.1.azimuth), params, mic, cfg);
    let dr = (best.1.distance * 0.05).max(0.01);
    let lo = (best.1.distance - dr).max(cfg.r_min * 0.5);
    let spread = probe(lo).max(probe(best.1.distance + dr)) - best.0;
    Ok(LocatedSource {
        position: best.1,
        residual: best.0,
        distance_weakly_determined: spread < 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn front_source_symmetry() {
        let p = interchannel_params(SourcePosition::new(1.0, 0.0), &MicPair::default()).unwrap();
        assert!(approx(p.delta_t, 0.0, 1e-15));
        assert!(approx(p.delta_e, 0.0, 1e-12));
    }

    #[test]
    fn published_cue_tuples() {
        let mic = MicPair::default();
        let cases = [
            (1.0, 45.0, 0.35e-3, 9.2),
            (1.0, -10.0, -0.086e-3, -1.99),
            (1.5, -35.0, -0.283e-3, -6.64),
            (1.0, 25.0, 0.208e-3, 5.01),
            (0.5, 40.0, 0.315e-3, 9.5),
        ];
        for (r, az, dt, de) in cases {
            let p = interchannel_params(SourcePosition::new(r, az), &mic).unwrap();
            assert!(approx(p.delta_t, dt, 5e-6), "dt at ({r}, {az}): {}", p.delta_t);
            assert!(approx(p.delta_e, de, 0.1), "de at ({r}, {az}): {}", p.delta_e);
        }
    }

    #[test]
    fn azimuth_antisymmetry() {
        let mic = MicPair::default();
        for az in [5.0, 17.0, 45.0, 80.0, 120.0] {
            let p = interchannel_params(SourcePosition::new(0.8, az), &mic).unwrap();
            let m = interchannel_params(SourcePosition::new(0.8, -az), &mic).unwrap();
            assert!(approx(p.delta_t, -m.delta_t, 1e-12 * p.delta_t.abs().max(1e-6)));
            assert!(approx(p.delta_e, -m.delta_e, 1e-12 * p.delta_e.abs().max(1e-6)));
        }
    }

    #[test]
    fn delay_bounded_by_baseline() {
        let mic = MicPair::default();
        let bound = mic.max_delay_s();
        for i in 0..360 {
            let az = -179.0 + i as f64;
            for r in [0.1, 0.5, 1.0, 10.0] {
                if let Ok(p) = interchannel_params(SourcePosition::new(r, az), &mic) {
                    assert!(p.delta_t.abs() <= bound + 1e-15);
                }
            }
        }
    }

    #[test]
    fn delay_monotone_in_azimuth() {
        let mic = MicPair::default();
        for r in [0.3, 1.0, 2.5] {
            let mut prev = f64::NEG_INFINITY;
            for j in 0..=180 {
                let az = -89.5 + 179.0 * j as f64 / 180.0;
                let p = interchannel_params(SourcePosition::new(r, az), &mic).unwrap();
                assert!(p.delta_t > prev, "dt not increasing at r={r}, az={az}");
                prev = p.delta_t;
            }
        }
    }

    #[test]
    fn capsule_position_is_singular() {
        let mic = MicPair::default();
        let err = interchannel_params(SourcePosition::new(0.085, 90.0), &mic);
        assert!(matches!(err, Err(Error::SingularPosition)));
    }

    #[test]
    fn circle_trajectory() {
        let traj = Trajectory::Circle {
            radius: 1.0,
            start_azimuth: 0.0,
            angular_speed: 36.0,
        };
        let p0 = trajectory_state_at(&traj, 0.0);
        assert_eq!((p0.distance, p0.azimuth), (1.0, 0.0));
        let p = trajectory_state_at(&traj, 2.5);
        assert_eq!((p.distance, p.azimuth), (1.0, 90.0));
        // wraps into (-180, 180]
        let p = trajectory_state_at(&traj, 7.5);
        assert!(approx(p.azimuth, -90.0, 1e-12));
    }

    #[test]
    fn waypoint_interpolation_and_clamping() {
        let traj = Trajectory::Waypoints(vec![
            (0.0, SourcePosition::new(1.0, -30.0)),
            (10.0, SourcePosition::new(1.0, 30.0)),
        ]);
        let mid = trajectory_state_at(&traj, 5.0);
        assert!(approx(mid.azimuth, 0.0, 1e-12));
        assert!(approx(mid.distance, 1.0, 1e-12));
        assert_eq!(trajectory_state_at(&traj, -1.0).azimuth, -30.0);
        assert_eq!(trajectory_state_at(&traj, 99.0).azimuth, 30.0);
    }

    #[test]
    fn locate_round_trip() {
        let mic = MicPair::default();
        let cfg = LocateConfig::default();
        for (r, az, r_tol) in [(1.0, 45.0, 0.02), (1.5, -35.0, 0.05)] {
            let p = interchannel_params(SourcePosition::new(r, az), &mic).unwrap();
            let loc = locate_source(p, &mic, &cfg).unwrap();
            assert!(approx(loc.position.distance, r, r_tol), "r: {:?}", loc);
            assert!(approx(loc.position.azimuth, az, 1.0), "az: {:?}", loc);
            assert!(loc.residual < 1e-6);
        }
    }

    #[test]
    fn locate_center_ridge_flagged() {
        let mic = MicPair::default();
        let loc = locate_source(
            InterchannelParams { delta_t: 0.0, delta_e: 0.0 },
            &mic,
            &LocateConfig::default(),
        )
        .unwrap();
        assert!(approx(loc.position.azimuth, 0.0, 0.5));
        assert!(loc.distance_weakly_determined);
    }

    #[test]
    fn scene_validation_reports() {
        let clip = MonoClip { samples: vec![0.0; 44100], sample_rate: 44100 };
        let good = Scene {
            mic: MicPair::default(),
            sources: vec![
                PointSource {
                    clip: clip.clone(),
                    gain: 1.0,
                    trajectory: Trajectory::Static(SourcePosition::new(1.0, 45.0)),
                    name: "a".into(),
                },
                PointSource {
                    clip: clip.clone(),
                    gain: 1.0,
                    trajectory: Trajectory::Circle { radius: 1.0, start_azimuth: 0.0, angular_speed: 36.0 },
                    name: "b".into(),
                },
            ],
            sample_rate: 44100,
            duration_s: 1.0,
        };
        assert!(validate_scene(&good).is_ok());

        let mut bad = good.clone();
        bad.sources[0].trajectory = Trajectory::Static(SourcePosition::new(0.0, 0.0));
        let report = validate_scene(&bad);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].contains("distance"));

        let mut bad = good.clone();
        bad.sources[1].trajectory = Trajectory::Waypoints(vec![
            (0.0, SourcePosition::new(1.0, 0.0)),
            (0.0, SourcePosition::new(1.0, 10.0)),
        ]);
        let report = validate_scene(&bad);
        assert!(report.violations[0].contains("strictly increasing"));

        let mut short = good;
        short.duration_s = 2.0;
        let report = validate_scene(&short);
        assert!(report.is_ok());
        assert_eq!(report.warnings.len(), 2);
    }
}
