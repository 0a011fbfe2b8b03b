//! Engine/oracle agreement on random scenes (a fast smoke version of the
//! full cross-check that the acceptance suite runs at scale).

mod common;

use common::random_scene;
use rand::rngs::StdRng;
use rand::SeedableRng;
use sheetfk::engine::{lowest_energy, solve_fk, SolveOptions};
use sheetfk::oracle::{self, Stability};

#[test]
fn engine_minima_appear_among_oracle_equilibria() {
    let mut rng = StdRng::seed_from_u64(777);
    let mut scenes_done = 0;
    while scenes_done < 5 {
        let scene = random_scene(&mut rng, 4 + scenes_done % 4);
        let (solutions, _) = solve_fk(&scene, &SolveOptions::default());
        if solutions.is_empty() {
            continue;
        }
        scenes_done += 1;
        let equilibria = oracle::find_equilibria(&scene, oracle::default_coarse_resolution(&scene));
        for sol in &solutions {
            if oracle::classify_solution(&scene, sol, 1e-4) != Stability::StrictLocalMin {
                continue;
            }
            let hit = equilibria.iter().any(|e| {
                let d = ((e.r_o.x - sol.x[0]).powi(2)
                    + (e.r_o.y - sol.x[1]).powi(2)
                    + (e.v_o.x - sol.x[2]).powi(2)
                    + (e.v_o.y - sol.x[3]).powi(2))
                .sqrt();
                d < 2e-3
            });
            assert!(hit, "strict minimum {} missed by the oracle", sol.taut_set);
        }
        // global minimum agreement within 1 mm
        let best = lowest_energy(&solutions).unwrap();
        let oracle_min = equilibria
            .iter()
            .filter(|e| !e.ground_contact)
            .map(|e| e.z_min)
            .fold(f64::INFINITY, f64::min);
        assert!(
            (best.z_o - oracle_min).abs() < 1e-3,
            "global minimum disagrees: engine {} vs oracle {}",
            best.z_o,
            oracle_min
        );
        // envelope height agreement at each solution point
        for sol in &solutions {
            let e = oracle::envelope_at(&scene, sol.v_o(), sol.r_o()).unwrap();
            assert!((e.z_min - sol.z_o).abs() < 1e-7);
        }
    }
}
