//! Problem domain: the robot formation, the sheet polygon, and validated
//! scene construction.
//!
//! Cable indices are 1-based everywhere in the public API, matching the
//! labels used in result files and diagnostics. A cable `i` joins robot `i`
//! (world frame) to sheet vertex `i` (sheet frame).

use thiserror::Error;

/// Planar point, meters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, other: Self) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn dist_sq(self, other: Self) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// Cross product of `(b - a)` and `(c - a)`.
pub(crate) fn cross(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Consecutive-vertex collinearity threshold, squared meters.
const CONVEXITY_EPS: f64 = 1e-12;
/// Band around exact pair-distance equality that is flagged separately,
/// meters.
const PAIR_EQUALITY_EPS: f64 = 1e-9;

/// Unvalidated scene data as read from a file or built by a caller.
#[derive(Clone, Debug, PartialEq)]
pub struct RawScene {
    /// holding height of every robot, meters
    pub z_r: f64,
    /// sheet vertices in the sheet frame, meters
    pub sheet_vertices: Vec<Point2>,
    /// robot positions in the world frame, meters
    pub robots: Vec<Point2>,
    /// object mass, kilograms
    pub object_mass: f64,
    /// gravitational acceleration, m/s^2
    pub gravity: f64,
}

impl RawScene {
    pub fn new(z_r: f64, sheet_vertices: Vec<Point2>, robots: Vec<Point2>) -> Self {
        Self {
            z_r,
            sheet_vertices,
            robots,
            object_mass: 1.0,
            gravity: 9.81,
        }
    }

    /// Validate and freeze the scene. On failure every violated invariant is
    /// reported, with exactly one entry per offending unordered pair.
    pub fn validate(self) -> Result<Scene, Vec<SceneViolation>> {
        let mut violations = Vec::new();
        let n = self.robots.len();

        if self.sheet_vertices.len() != n {
            violations.push(SceneViolation::CountMismatch {
                vertices: self.sheet_vertices.len(),
                robots: n,
            });
            return Err(violations);
        }
        if n < 3 {
            violations.push(SceneViolation::TooFewRobots { n });
        }
        if self.z_r <= 0.0 || self.z_r.is_nan() {
            violations.push(SceneViolation::NonPositiveHeight { z_r: self.z_r });
        }
        let finite = self
            .sheet_vertices
            .iter()
            .chain(&self.robots)
            .all(|p| p.x.is_finite() && p.y.is_finite())
            && self.z_r.is_finite()
            && self.object_mass.is_finite()
            && self.gravity.is_finite();
        if !finite {
            violations.push(SceneViolation::NonFinite);
            return Err(violations);
        }
        if n >= 3 {
            check_convexity(&self.sheet_vertices, &mut violations);
        }
        for i in 0..n {
            for j in i + 1..n {
                let robot_dist = self.robots[i].dist(self.robots[j]);
                let vertex_dist = self.sheet_vertices[i].dist(self.sheet_vertices[j]);
                if robot_dist >= vertex_dist - PAIR_EQUALITY_EPS {
                    violations.push(SceneViolation::InfeasiblePair {
                        i: i + 1,
                        j: j + 1,
                        robot_dist,
                        vertex_dist,
                        at_equality: (robot_dist - vertex_dist).abs() <= PAIR_EQUALITY_EPS,
                    });
                }
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }

        let ccw = signed_area(&self.sheet_vertices) > 0.0;
        Ok(Scene {
            z_r: self.z_r,
            vertices: self.sheet_vertices,
            robots: self.robots,
            object_mass: self.object_mass,
            gravity: self.gravity,
            ccw,
        })
    }
}

fn signed_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        acc += a.x * b.y - a.y * b.x;
    }
    0.5 * acc
}

/// Strict convexity: consistent turning at every vertex (no collinear
/// triples) and a total turning of one full revolution, which rules out
/// self-intersecting traversals with consistent turn signs.
fn check_convexity(poly: &[Point2], violations: &mut Vec<SceneViolation>) {
    let n = poly.len();
    let mut sign = 0.0f64;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let c = poly[(i + 2) % n];
        let cr = cross(a, b, c);
        if cr.abs() <= CONVEXITY_EPS {
            violations.push(SceneViolation::NonConvexSheet { index: (i + 1) % n + 1 });
            return;
        }
        if sign == 0.0 {
            sign = cr.signum();
        } else if cr.signum() != sign {
            violations.push(SceneViolation::NonConvexSheet { index: (i + 1) % n + 1 });
            return;
        }
    }
    let mut turning = 0.0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let c = poly[(i + 2) % n];
        let u = (b.x - a.x, b.y - a.y);
        let v = (c.x - b.x, c.y - b.y);
        turning += (u.0 * v.1 - u.1 * v.0).atan2(u.0 * v.0 + u.1 * v.1);
    }
    if (turning.abs() - std::f64::consts::TAU).abs() > 1e-6 {
        violations.push(SceneViolation::NonConvexSheet { index: 1 });
    }
}

/// A violated scene invariant. Indices are 1-based.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum SceneViolation {
    #[error("at least three robots are required, got {n}")]
    TooFewRobots { n: usize },
    #[error("holding height must be positive, got {z_r}")]
    NonPositiveHeight { z_r: f64 },
    #[error("{vertices} sheet vertices but {robots} robots")]
    CountMismatch { vertices: usize, robots: usize },
    #[error("sheet polygon is not strictly convex at vertex {index}")]
    NonConvexSheet { index: usize },
    #[error(
        "robots {i} and {j} are {robot_dist:.6} m apart but their sheet vertices only {vertex_dist:.6} m{}",
        if *at_equality { " (at equality)" } else { "" }
    )]
    InfeasiblePair {
        i: usize,
        j: usize,
        robot_dist: f64,
        vertex_dist: f64,
        at_equality: bool,
    },
    #[error("non-finite coordinate or parameter")]
    NonFinite,
}

/// A validated, immutable scene. Construct via [`RawScene::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    z_r: f64,
    vertices: Vec<Point2>,
    robots: Vec<Point2>,
    object_mass: f64,
    gravity: f64,
    ccw: bool,
}

impl Scene {
    pub fn n(&self) -> usize {
        self.robots.len()
    }

    pub fn z_r(&self) -> f64 {
        self.z_r
    }

    pub fn object_mass(&self) -> f64 {
        self.object_mass
    }

    pub fn gravity(&self) -> f64 {
        self.gravity
    }

    /// Sheet vertex of cable `i` (1-based).
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i - 1]
    }

    /// Robot of cable `i` (1-based).
    pub fn robot(&self, i: usize) -> Point2 {
        self.robots[i - 1]
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn robots(&self) -> &[Point2] {
        &self.robots
    }

    /// Length of virtual cable `i` (1-based) for a contact point `v_o`:
    /// the sheet-frame distance between `v_o` and vertex `i`.
    pub fn cable_length(&self, v_o: Point2, i: usize) -> f64 {
        assert!(i >= 1 && i <= self.n(), "cable index {i} out of 1..={}", self.n());
        self.vertex(i).dist(v_o)
    }

    /// Whether `p` lies inside the sheet polygon (boundary counts as inside).
    pub fn sheet_contains(&self, p: Point2) -> bool {
        let n = self.vertices.len();
        let orient = if self.ccw { 1.0 } else { -1.0 };
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if orient * cross(a, b, p) < 0.0 {
                return false;
            }
        }
        true
    }

    /// Recover the raw data; `raw.validate()` returns an equal scene.
    pub fn to_raw(&self) -> RawScene {
        RawScene {
            z_r: self.z_r,
            sheet_vertices: self.vertices.clone(),
            robots: self.robots.clone(),
            object_mass: self.object_mass,
            gravity: self.gravity,
        }
    }
}

/// One candidate placement: the planar unknowns `x = (x_o, y_o, x_vo, y_vo)`
/// and the recovered object height.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Configuration {
    pub x: [f64; 4],
    pub z_o: f64,
}

impl Configuration {
    /// Planar object position in the world frame.
    pub fn r_o(&self) -> Point2 {
        Point2::new(self.x[0], self.x[1])
    }

    /// Contact point in the sheet frame.
    pub fn v_o(&self) -> Point2 {
        Point2::new(self.x[2], self.x[3])
    }

    /// Whether the configuration is physically placed: hanging strictly
    /// between ground and holding height with the contact point on the sheet.
    pub fn is_physical(&self, scene: &Scene) -> bool {
        self.z_o > 0.0 && self.z_o < scene.z_r() && scene.sheet_contains(self.v_o())
    }
}

/// A canonical taut cable subset: strictly increasing 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TautSet {
    indices: Vec<u32>,
}

#[derive(Clone, Copy, Debug, Error, PartialEq)]
pub enum TautSetError {
    #[error("a taut set needs at least three cables, got {k}")]
    TooFew { k: usize },
    #[error("cable index {index} outside 1..={n}")]
    OutOfRange { index: u32, n: usize },
    #[error("indices must be strictly increasing")]
    NotStrictlyIncreasing,
}

impl TautSet {
    pub fn new(indices: Vec<u32>, n: usize) -> Result<Self, TautSetError> {
        if indices.len() < 3 {
            return Err(TautSetError::TooFew { k: indices.len() });
        }
        for (pos, &i) in indices.iter().enumerate() {
            if i < 1 || i as usize > n {
                return Err(TautSetError::OutOfRange { index: i, n });
            }
            if pos > 0 && indices[pos - 1] >= i {
                return Err(TautSetError::NotStrictlyIncreasing);
            }
        }
        Ok(Self { indices })
    }

    /// For enumeration code that produces indices in canonical order already.
    pub(crate) fn from_sorted_unchecked(indices: Vec<u32>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self { indices }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Ascending complement within `1..=n`.
    pub fn slack_indices(&self, n: usize) -> Vec<u32> {
        (1..=n as u32).filter(|i| !self.contains(*i)).collect()
    }

    /// Smallest taut index, the default pivot.
    pub fn first(&self) -> u32 {
        self.indices[0]
    }
}

impl std::fmt::Display for TautSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.indices.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
