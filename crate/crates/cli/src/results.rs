//! Machine-readable result emission. Output is byte-deterministic: fixed key
//! order, numbers at 9 significant digits, no timing data.

use sheetfk::engine::{Solution, StepStats};
use sheetfk::oracle::{Equilibrium, Stability};

/// 9 significant digits, scientific notation.
pub fn fmt_g9(v: f64) -> String {
    format!("{v:.8e}")
}

/// Stability label of a solution record.
pub fn stability_label(s: Option<Stability>) -> &'static str {
    match s {
        None => "unchecked",
        Some(s) => s.as_str(),
    }
}

fn solution_record(sol: &Solution, stability: Option<Stability>) -> String {
    let taut: Vec<String> = sol.taut_set.indices().iter().map(|i| i.to_string()).collect();
    let margins: Vec<String> = sol.slack_margins.iter().map(|m| fmt_g9(*m)).collect();
    format!(
        "{{\"taut_set\": [{}], \"v_o_m\": [{}, {}], \"p_o_m\": [{}, {}, {}], \"energy_J\": {}, \"k1\": {}, \"stability\": \"{}\", \"margins\": [{}]}}",
        taut.join(", "),
        fmt_g9(sol.x[2]),
        fmt_g9(sol.x[3]),
        fmt_g9(sol.x[0]),
        fmt_g9(sol.x[1]),
        fmt_g9(sol.z_o),
        fmt_g9(sol.energy),
        sol.k1,
        stability_label(stability),
        margins.join(", "),
    )
}

fn stats_record(stats: &StepStats) -> String {
    let by_k: Vec<String> = stats
        .by_k
        .iter()
        .map(|(k, v)| format!("\"{k}\": {v}"))
        .collect();
    format!(
        "{{\"steps\": [{}, {}, {}, {}], \"by_k\": {{{}}}, \"schur_singular\": {}, \"tension_failures\": {}}}",
        stats.enumerated,
        stats.form_closure,
        stats.cqp_feasible,
        stats.force_closure,
        by_k.join(", "),
        stats.schur_singular,
        stats.tension_failures,
    )
}

/// JSON document with one record per solution plus the stats record.
/// `stability` entries align with `solutions`; `clusters` and `equilibria`
/// appear only when provided.
pub fn to_json(
    solutions: &[Solution],
    stability: &[Option<Stability>],
    stats: &StepStats,
    clusters: Option<&[Vec<usize>]>,
    equilibria: Option<&[Equilibrium]>,
) -> String {
    let mut out = String::from("{\n  \"solutions\": [\n");
    for (i, sol) in solutions.iter().enumerate() {
        out.push_str("    ");
        out.push_str(&solution_record(sol, stability.get(i).copied().flatten()));
        if i + 1 < solutions.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ],\n  \"stats\": ");
    out.push_str(&stats_record(stats));
    if let Some(clusters) = clusters {
        out.push_str(",\n  \"clusters\": [");
        let groups: Vec<String> = clusters
            .iter()
            .map(|g| {
                let ids: Vec<String> = g.iter().map(|i| i.to_string()).collect();
                format!("[{}]", ids.join(", "))
            })
            .collect();
        out.push_str(&groups.join(", "));
        out.push(']');
    }
    if let Some(equilibria) = equilibria {
        out.push_str(",\n  \"oracle\": {\n    \"equilibria\": [\n");
        for (i, e) in equilibria.iter().enumerate() {
            let active: Vec<String> = e.active_set.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!(
                "      {{\"v_o_m\": [{}, {}], \"r_o_m\": [{}, {}], \"z_min_m\": {}, \"active\": [{}], \"ground_contact\": {}}}",
                fmt_g9(e.v_o.x),
                fmt_g9(e.v_o.y),
                fmt_g9(e.r_o.x),
                fmt_g9(e.r_o.y),
                fmt_g9(e.z_min),
                active.join(", "),
                e.ground_contact,
            ));
            if i + 1 < equilibria.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("    ]\n  }");
    }
    out.push_str("\n}\n");
    out
}

/// CSV: fixed header, one solution per row, stats appended as `#` comment
/// lines. Numeric content matches the JSON emission exactly.
pub fn to_csv(
    solutions: &[Solution],
    stability: &[Option<Stability>],
    stats: &StepStats,
    clusters: Option<&[Vec<usize>]>,
) -> String {
    let mut out =
        String::from("taut_set,x_vo_m,y_vo_m,x_o_m,y_o_m,z_o_m,energy_J,k1,stability,margins\n");
    for (i, sol) in solutions.iter().enumerate() {
        let taut: Vec<String> = sol.taut_set.indices().iter().map(|i| i.to_string()).collect();
        let margins: Vec<String> = sol.slack_margins.iter().map(|m| fmt_g9(*m)).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            taut.join(" "),
            fmt_g9(sol.x[2]),
            fmt_g9(sol.x[3]),
            fmt_g9(sol.x[0]),
            fmt_g9(sol.x[1]),
            fmt_g9(sol.z_o),
            fmt_g9(sol.energy),
            sol.k1,
            stability_label(stability.get(i).copied().flatten()),
            margins.join(" "),
        ));
    }
    out.push_str(&format!(
        "# steps,{},{},{},{}\n",
        stats.enumerated, stats.form_closure, stats.cqp_feasible, stats.force_closure
    ));
    let by_k: Vec<String> = stats.by_k.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    out.push_str(&format!("# by_k,{}\n", by_k.join(",")));
    if let Some(clusters) = clusters {
        let groups: Vec<String> = clusters
            .iter()
            .map(|g| g.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("|"))
            .collect();
        out.push_str(&format!("# clusters,{}\n", groups.join(",")));
    }
    out
}

/// Group solutions whose five position components `(p_o, v_o)` agree within
/// `tol` (max over components). Greedy against cluster representatives, in
/// canonical solution order. Analysis aid only.
pub fn cluster_solutions(solutions: &[Solution], tol: f64) -> Vec<Vec<usize>> {
    let key = |s: &Solution| [s.x[0], s.x[1], s.z_o, s.x[2], s.x[3]];
    let mut clusters: Vec<(usize, Vec<usize>)> = Vec::new();
    'next: for (i, sol) in solutions.iter().enumerate() {
        let k = key(sol);
        for (rep, members) in &mut clusters {
            let r = key(&solutions[*rep]);
            if k.iter().zip(&r).all(|(a, b)| (a - b).abs() <= tol) {
                members.push(i);
                continue 'next;
            }
        }
        clusters.push((i, vec![i]));
    }
    clusters.into_iter().map(|(_, members)| members).collect()
}

/// Human-readable stats block (may include timing; never written to result
/// files).
pub fn stats_block(stats: &StepStats) -> String {
    let by_k: Vec<String> = stats.by_k.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    let mut out = String::new();
    out.push_str(&format!("step 1 (taut sets):      {:>12}\n", stats.enumerated));
    out.push_str(&format!("step 2 (form closure):   {:>12}\n", stats.form_closure));
    out.push_str(&format!("step 3 (cqp feasible):   {:>12}\n", stats.cqp_feasible));
    out.push_str(&format!("step 4 (force closure):  {:>12}\n", stats.force_closure));
    out.push_str(&format!("accepted by k:           {}\n", by_k.join(" ")));
    if stats.schur_singular > 0 {
        out.push_str(&format!("singular saddle systems: {}\n", stats.schur_singular));
    }
    if stats.tension_failures > 0 {
        out.push_str(&format!("tension failures:        {}\n", stats.tension_failures));
    }
    out.push_str(&format!("wall time:               {:.3} s\n", stats.wall_time));
    out
}
