use rand::rngs::StdRng;
use rand::Rng;
use sheetfk::{Point2, RawScene, Scene};

/// Random feasible scene: a jittered convex polygon sheet with robots pulled
/// toward the centroid. Retries deterministically until validation passes.
pub fn random_scene(rng: &mut StdRng, n: usize) -> Scene {
    loop {
        let r_s: f64 = rng.gen_range(0.6..1.1);
        let rho: f64 = rng.gen_range(0.45..0.75);
        let z_r: f64 = rng.gen_range(0.55..1.1);
        let mut vertices = Vec::with_capacity(n);
        let mut robots = Vec::with_capacity(n);
        for i in 0..n {
            let base = std::f64::consts::TAU * i as f64 / n as f64;
            let angle = base + rng.gen_range(-0.6..0.6) / n as f64 * 2.0;
            let radius = r_s * (1.0 + rng.gen_range(-0.12..0.12));
            let v = Point2::new(radius * angle.cos(), radius * angle.sin());
            vertices.push(v);
            robots.push(Point2::new(
                v.x * rho + rng.gen_range(-0.02..0.02),
                v.y * rho + rng.gen_range(-0.02..0.02),
            ));
        }
        if let Ok(scene) = RawScene::new(z_r, vertices, robots).validate() {
            return scene;
        }
    }
}
