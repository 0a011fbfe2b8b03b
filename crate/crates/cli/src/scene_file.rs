//! Scene file schema and parsing.
//!
//! ```json
//! {
//!   "version": 1,
//!   "units": "m" | "cm" | "mm",
//!   "n": 4,
//!   "z_r": 0.8,
//!   "sheet_vertices": [[x, y], ...],
//!   "robots": [[x, y], ...],
//!   "object_mass": 1.0,
//!   "gravity": 9.81
//! }
//! ```
//!
//! Lengths are converted to meters on load. `object_mass` and `gravity` are
//! optional (defaults 1 kg, 9.81 m/s^2) and never unit-scaled.

use serde::Deserialize;
use sheetfk::{Point2, RawScene, Scene, SceneViolation};
use std::path::Path;

#[derive(Debug)]
pub enum ParseError {
    Io { path: String, message: String },
    Json { path: String, message: String },
    Schema { message: String },
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            ParseError::Json { path, message } => write!(f, "invalid JSON in {path}: {message}"),
            ParseError::Schema { message } => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    version: u32,
    units: String,
    n: usize,
    /// a single number; an array (per-robot heights) is rejected explicitly
    z_r: serde_json::Value,
    sheet_vertices: Vec<[f64; 2]>,
    robots: Vec<[f64; 2]>,
    #[serde(default)]
    object_mass: Option<f64>,
    #[serde(default)]
    gravity: Option<f64>,
}

fn unit_scale(units: &str) -> Option<f64> {
    match units {
        "m" => Some(1.0),
        "cm" => Some(0.01),
        "mm" => Some(0.001),
        _ => None,
    }
}

/// Parse and unit-convert a scene file into raw scene data.
pub fn parse_raw_scene(path: &Path) -> Result<RawScene, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let file: SceneFile = serde_json::from_str(&text).map_err(|e| ParseError::Json {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    if file.version != 1 {
        return Err(ParseError::Schema {
            message: format!("unsupported schema version {}", file.version),
        });
    }
    let scale = unit_scale(&file.units).ok_or_else(|| ParseError::Schema {
        message: format!("unknown units {:?} (expected m, cm or mm)", file.units),
    })?;
    let z_r = match &file.z_r {
        serde_json::Value::Number(v) => v.as_f64().unwrap_or(f64::NAN),
        serde_json::Value::Array(_) => {
            return Err(ParseError::Schema {
                message: "per-robot holding heights are not supported; z_r must be a single number"
                    .into(),
            })
        }
        _ => {
            return Err(ParseError::Schema {
                message: "z_r must be a number".into(),
            })
        }
    };
    if file.sheet_vertices.len() != file.n || file.robots.len() != file.n {
        return Err(ParseError::Schema {
            message: format!(
                "n = {} but {} sheet_vertices and {} robots",
                file.n,
                file.sheet_vertices.len(),
                file.robots.len()
            ),
        });
    }
    let convert = |pts: &[[f64; 2]]| {
        pts.iter()
            .map(|p| Point2::new(p[0] * scale, p[1] * scale))
            .collect::<Vec<_>>()
    };
    let mut raw = RawScene::new(
        z_r * scale,
        convert(&file.sheet_vertices),
        convert(&file.robots),
    );
    if let Some(m) = file.object_mass {
        raw.object_mass = m;
    }
    if let Some(g) = file.gravity {
        raw.gravity = g;
    }
    Ok(raw)
}

/// Parse, unit-convert and validate a scene file.
pub fn parse_scene_file(path: &Path) -> Result<Scene, SceneFileError> {
    let raw = parse_raw_scene(path).map_err(SceneFileError::Parse)?;
    raw.validate().map_err(SceneFileError::Validation)
}

#[derive(Debug)]
pub enum SceneFileError {
    Parse(ParseError),
    Validation(Vec<SceneViolation>),
}

impl std::fmt::Display for SceneFileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SceneFileError::Parse(e) => write!(f, "{e}"),
            SceneFileError::Validation(violations) => {
                writeln!(f, "scene validation failed:")?;
                for v in violations {
                    writeln!(f, "  - {v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Serialize a validated scene back to the file schema (meters, version 1),
/// numbers at 9 significant digits.
pub fn scene_to_json(scene: &Scene) -> String {
    use crate::results::fmt_g9;
    let points = |pts: &[Point2]| {
        pts.iter()
            .map(|p| format!("[{}, {}]", fmt_g9(p.x), fmt_g9(p.y)))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "{{\n  \"version\": 1,\n  \"units\": \"m\",\n  \"n\": {},\n  \"z_r\": {},\n  \"sheet_vertices\": [{}],\n  \"robots\": [{}],\n  \"object_mass\": {},\n  \"gravity\": {}\n}}\n",
        scene.n(),
        fmt_g9(scene.z_r()),
        points(scene.vertices()),
        points(scene.robots()),
        fmt_g9(scene.object_mass()),
        fmt_g9(scene.gravity()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
        let path = std::env::temp_dir().join(format!("sheetfk_test_{name}_{}.json", std::process::id()));
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn parses_cm_units() {
        let path = write_temp(
            "cm",
            r#"{"version":1,"units":"cm","n":3,"z_r":100,
                "sheet_vertices":[[0,0],[100,0],[50,90]],
                "robots":[[25,20],[75,20],[50,60]]}"#,
        );
        let scene = parse_scene_file(&path).unwrap();
        assert_eq!(scene.n(), 3);
        assert!((scene.z_r() - 1.0).abs() < 1e-12);
        assert!((scene.vertex(2).x - 1.0).abs() < 1e-12);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn missing_robots_is_a_parse_error() {
        let path = write_temp(
            "missing",
            r#"{"version":1,"units":"m","n":3,"z_r":1,
                "sheet_vertices":[[0,0],[1,0],[0.5,0.9]]}"#,
        );
        match parse_scene_file(&path) {
            Err(SceneFileError::Parse(ParseError::Json { .. })) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn per_robot_heights_rejected_with_clear_message() {
        let path = write_temp(
            "zr_array",
            r#"{"version":1,"units":"m","n":3,"z_r":[1,1,1],
                "sheet_vertices":[[0,0],[1,0],[0.5,0.9]],
                "robots":[[0.25,0.2],[0.75,0.2],[0.5,0.6]]}"#,
        );
        match parse_scene_file(&path) {
            Err(SceneFileError::Parse(ParseError::Schema { message })) => {
                assert!(message.contains("per-robot"), "message: {message}");
            }
            other => panic!("expected schema error, got {other:?}"),
        }
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn validation_error_is_distinct_from_parse_error() {
        let path = write_temp(
            "infeasible",
            r#"{"version":1,"units":"m","n":4,"z_r":1,
                "sheet_vertices":[[0,0],[2,0],[2,2],[0,2]],
                "robots":[[0,0],[2,0],[2,2],[0,2]]}"#,
        );
        match parse_scene_file(&path) {
            Err(SceneFileError::Validation(v)) => assert!(!v.is_empty()),
            other => panic!("expected validation error, got {other:?}"),
        }
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn emit_then_parse_is_stable_at_9_digits() {
        let scene = sheetfk::regular_polygon_scene(5, 0.77, 0.41, 0.93).unwrap();
        let json1 = scene_to_json(&scene);
        let path = write_temp("roundtrip", &json1);
        let back = parse_scene_file(&path).unwrap();
        let json2 = scene_to_json(&back);
        assert_eq!(json1, json2);
        std::fs::remove_file(path).ok();
    }
}
