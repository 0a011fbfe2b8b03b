//! File-based front end for the sheet forward-kinematics solver: scene files
//! in, solutions / statistics / figures out, with stable exit codes.
//!
//! Exit codes: 0 = at least one solution, 1 = parse or I/O error,
//! 2 = scene validation error, 3 = valid scene but no solutions.

pub mod figure;
pub mod results;
pub mod run;
pub mod scene_file;

pub use run::{run, Args};
pub use scene_file::{parse_scene_file, scene_to_json, ParseError};
