//! Forward kinematics for object transport on a deformable sheet held by a
//! team of mobile robots.
//!
//! A team of `N` robots grips the vertices of a convex polygonal sheet at a
//! common height and an object rests on the sheet. The straight creases
//! between the object's contact point and the held vertices behave like
//! virtual cables that are either taut or slack. For a fixed robot formation
//! the object can settle in several static equilibria, one per viable taut
//! cable subset.
//!
//! The solver enumerates every candidate taut set and applies four filters:
//!
//! 1. all subsets of size 3..=N,
//! 2. geometric consistency of the taut length equalities (a rank test on the
//!    linearized system),
//! 3. minimum potential energy via an equality-constrained quadratic program
//!    solved in closed form, plus slackness and height feasibility,
//! 4. force closure (the object's planar position must lie strictly inside
//!    the convex hull of the taut robots).
//!
//! [`engine::solve_fk`] runs the full pipeline; [`oracle`] provides an
//! independent brute-force check over the 4-D configuration space that never
//! relies on the pipeline's algebra.

pub mod constraints;
pub mod cqp;
pub mod engine;
pub mod force;
mod linalg;
pub mod oracle;
pub mod scene;
pub mod tol;

pub use engine::{lowest_energy, regular_polygon_scene, solve_fk, Solution, SolveOptions, StepStats};
pub use scene::{Configuration, Point2, RawScene, Scene, SceneViolation, TautSet};
pub use tol::Tolerances;
