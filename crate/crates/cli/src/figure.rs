//! SVG rendering of solutions: per solution one row with the world frame on
//! the left (robots, object position, taut cables) and the sheet frame on
//! the right (polygon, contact point, taut chords). Output is deterministic
//! for a fixed input.

use sheetfk::engine::Solution;
use sheetfk::{Point2, Scene};

const PANEL: f64 = 340.0;
const MARGIN: f64 = 30.0;
const GAP: f64 = 40.0;

struct Frame {
    min: Point2,
    scale: f64,
    x0: f64,
    y0: f64,
}

impl Frame {
    /// Fit `points` into a panel whose top-left corner is `(x0, y0)`.
    fn fit(points: &[Point2], x0: f64, y0: f64) -> Frame {
        let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min = Point2::new(min.x.min(p.x), min.y.min(p.y));
            max = Point2::new(max.x.max(p.x), max.y.max(p.y));
        }
        let span = (max.x - min.x).max(max.y - min.y).max(1e-6);
        let pad = span * 0.12;
        min = Point2::new(min.x - pad, min.y - pad);
        let scale = PANEL / (span + 2.0 * pad);
        Frame { min, scale, x0, y0 }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        // flip y so +y points up on the page
        (
            self.x0 + (p.x - self.min.x) * self.scale,
            self.y0 + PANEL - (p.y - self.min.y) * self.scale,
        )
    }
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

fn line(out: &mut String, f: &Frame, a: Point2, b: Point2, style: &str) {
    let (x1, y1) = f.map(a);
    let (x2, y2) = f.map(b);
    out.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style}/>\n",
        px(x1),
        px(y1),
        px(x2),
        px(y2)
    ));
}

fn dot(out: &mut String, f: &Frame, p: Point2, r: f64, fill: &str) {
    let (cx, cy) = f.map(p);
    out.push_str(&format!(
        "<circle cx=\"{}\" cy=\"{}\" r=\"{r}\" fill=\"{fill}\"/>\n",
        px(cx),
        px(cy)
    ));
}

fn label(out: &mut String, f: &Frame, p: Point2, text: &str) {
    let (x, y) = f.map(p);
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#444\">{text}</text>\n",
        px(x + 5.0),
        px(y - 5.0)
    ));
}

fn caption(out: &mut String, x: f64, y: f64, text: &str) {
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"13\" font-family=\"sans-serif\" fill=\"#000\">{text}</text>\n",
        px(x),
        px(y)
    ));
}

fn world_panel(out: &mut String, scene: &Scene, solution: Option<&Solution>, x0: f64, y0: f64) {
    let mut pts: Vec<Point2> = scene.robots().to_vec();
    if let Some(sol) = solution {
        pts.push(sol.r_o());
    }
    let frame = Frame::fit(&pts, x0, y0);
    if let Some(sol) = solution {
        for &i in sol.taut_set.indices() {
            line(
                out,
                &frame,
                scene.robot(i as usize),
                sol.r_o(),
                "stroke=\"#1f5fbf\" stroke-width=\"1.8\"",
            );
        }
    }
    for i in 1..=scene.n() {
        let p = scene.robot(i);
        dot(out, &frame, p, 4.0, "#222");
        label(out, &frame, p, &i.to_string());
    }
    if let Some(sol) = solution {
        dot(out, &frame, sol.r_o(), 4.5, "#c22");
    }
}

fn sheet_panel(out: &mut String, scene: &Scene, solution: Option<&Solution>, x0: f64, y0: f64) {
    let mut pts: Vec<Point2> = scene.vertices().to_vec();
    if let Some(sol) = solution {
        pts.push(sol.v_o());
    }
    let frame = Frame::fit(&pts, x0, y0);
    let mut path = String::new();
    for (i, v) in scene.vertices().iter().enumerate() {
        let (x, y) = frame.map(*v);
        path.push_str(if i == 0 { "M" } else { "L" });
        path.push_str(&format!("{} {} ", px(x), px(y)));
    }
    path.push('Z');
    out.push_str(&format!(
        "<path d=\"{path}\" fill=\"none\" stroke=\"#888\" stroke-width=\"1.2\"/>\n"
    ));
    if let Some(sol) = solution {
        for &i in sol.taut_set.indices() {
            line(
                out,
                &frame,
                scene.vertex(i as usize),
                sol.v_o(),
                "stroke=\"#1f5fbf\" stroke-width=\"1.4\"",
            );
        }
    }
    for i in 1..=scene.n() {
        let v = scene.vertex(i);
        dot(out, &frame, v, 3.0, "#555");
        label(out, &frame, v, &i.to_string());
    }
    if let Some(sol) = solution {
        dot(out, &frame, sol.v_o(), 4.5, "#c22");
    }
}

/// Render the scene and every solution (one row each; a single scene-only
/// row when there are no solutions).
pub fn render_svg(scene: &Scene, solutions: &[Solution]) -> String {
    let rows = solutions.len().max(1);
    let row_height = PANEL + 60.0;
    let width = 2.0 * MARGIN + 2.0 * PANEL + GAP;
    let height = MARGIN + rows as f64 * row_height;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        px(width),
        px(height),
        px(width),
        px(height)
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for row in 0..rows {
        let sol = solutions.get(row);
        let y0 = MARGIN + row as f64 * row_height + 30.0;
        let title = match sol {
            Some(s) => format!(
                "taut set {} &#8212; z_o = {:.4} m",
                s.taut_set, s.z_o
            ),
            None => "no equilibrium for this formation".to_string(),
        };
        caption(&mut out, MARGIN, y0 - 10.0, &title);
        world_panel(&mut out, scene, sol, MARGIN, y0);
        sheet_panel(&mut out, scene, sol, MARGIN + PANEL + GAP, y0);
        caption(&mut out, MARGIN, y0 + PANEL + 18.0, "world frame");
        caption(&mut out, MARGIN + PANEL + GAP, y0 + PANEL + 18.0, "sheet frame");
    }
    out.push_str("</svg>\n");
    out
}
