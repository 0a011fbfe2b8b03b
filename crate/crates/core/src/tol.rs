//! Numerical tolerances shared across the pipeline.

/// Tolerances for the rank test and the strict-inequality filters.
///
/// All defaults are in SI units (meters / squared meters). The slack margin
/// tolerance is in squared meters because the linearized slack inequalities
/// compare squared distances.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative pivot threshold of the row reduction: a pivot is treated as
    /// zero when `|pivot| <= rank * max(1, row_norm)`.
    pub rank: f64,
    /// Strictness of `f(x) < 0`, squared meters. At the boundary the object
    /// sits at the holding height.
    pub height_gap: f64,
    /// Strictness of `z_o > 0`, meters. At or below, the object touches the
    /// ground.
    pub ground: f64,
    /// Strictness of the slack-cable margins, squared meters. Exact-equality
    /// margins (a nominally slack cable that is actually taut) must fail.
    pub slack: f64,
    /// Strict-interior margin of the hull membership test, meters.
    pub hull: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: 1e-9,
            height_gap: 1e-12,
            ground: 1e-9,
            slack: 1e-9,
            hull: 1e-9,
        }
    }
}

impl Tolerances {
    /// Set a tolerance by key name. Returns false for an unknown key.
    /// Keys: `rank`, `height_gap`, `ground`, `slack`, `hull`.
    pub fn set(&mut self, key: &str, value: f64) -> bool {
        match key {
            "rank" => self.rank = value,
            "height_gap" => self.height_gap = value,
            "ground" => self.ground = value,
            "slack" => self.slack = value,
            "hull" => self.hull = value,
            _ => return false,
        }
        true
    }
}
