use mcn_core::robustness::p_grid;
use mcn_core::{
    attack_curve, average_degree, build_layer, empirical_distribution, generate_static_sf,
    min_drivers_matching, solve_garner, solve_graphical, successor_set,
    theoretical_average_degree, theoretical_pk, AttackCurve, AttackStrategy, Congruence,
    CongruenceSystem, LayerSpec, StaticModelSpec,
};
use serde_json::{json, Value};

/// Caps keeping the page responsive on a single thread.
pub const MAX_DEGREE_N: u64 = 200_000;
pub const MAX_ATTACK_N: u64 = 2_000;
pub const MAX_TRIALS: usize = 200;
pub const MAX_CRT_PRODUCT: u64 = 5_000_000;

/// Exponent used for the scale-free comparison graph.
pub const SF_GAMMA: f64 = 2.001;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn degree_distribution(r: u64, n: u64) -> Result<String, String> {
    if n > MAX_DEGREE_N {
        return Err(format!("n is capped at {MAX_DEGREE_N} in the demo"));
    }
    let spec = LayerSpec::new(r, n).map_err(err)?;
    let g = build_layer(spec);
    let h = empirical_distribution(&g);
    let rows: Vec<Value> = h
        .counts
        .iter()
        .map(|(&k, &count)| {
            json!({
                "k": k,
                "count": count,
                "empirical": h.empirical_p(k),
                "theoretical": theoretical_pk(r, k as u64).ok(),
            })
        })
        .collect();
    Ok(json!({
        "r": r,
        "n": n,
        "nodes": g.node_count(),
        "edges": g.edge_count(),
        "avg_degree": average_degree(&g),
        "theoretical_avg_degree": theoretical_average_degree(spec),
        "drivers": min_drivers_matching(&g).n_d,
        "rows": rows,
    })
    .to_string())
}

fn curve_json(c: &AttackCurve) -> Value {
    json!({
        "strategy": c.strategy.as_str(),
        "p": c.points.iter().map(|p| p.p).collect::<Vec<_>>(),
        "nd_mean": c.points.iter().map(|p| p.nd_mean).collect::<Vec<_>>(),
        "nd_std": c.points.iter().map(|p| p.nd_std).collect::<Vec<_>>(),
    })
}

pub fn attack_curves(r: u64, n: u64, trials: usize, seed: u64) -> Result<String, String> {
    if n > MAX_ATTACK_N {
        return Err(format!("n is capped at {MAX_ATTACK_N} in the demo"));
    }
    let trials = trials.clamp(1, MAX_TRIALS);
    let spec = LayerSpec::new(r, n).map_err(err)?;
    let mcn = build_layer(spec);
    let kbar = average_degree(&mcn);
    let sf_spec =
        StaticModelSpec::new(mcn.node_count(), SF_GAMMA, kbar, seed).map_err(err)?;
    let sf = generate_static_sf(&sf_spec).map_err(err)?;
    let grid = p_grid(0.5, 10).map_err(err)?;

    let mut curves = Vec::new();
    for (name, g) in [("mcn", &mcn), ("sf", &sf)] {
        for strategy in [AttackStrategy::Random, AttackStrategy::Targeted] {
            let c = attack_curve(g, strategy, &grid, trials, seed, name).map_err(err)?;
            let mut v = curve_json(&c);
            v["graph"] = json!(name);
            curves.push(v);
        }
    }
    Ok(json!({
        "r": r,
        "n": n,
        "kbar": kbar,
        "gamma": SF_GAMMA,
        "trials": trials,
        "seed": seed,
        "curves": curves,
    })
    .to_string())
}

pub fn solve_congruences(text: &str) -> Result<String, String> {
    let items = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.parse::<Congruence>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let sys = CongruenceSystem::new(items).map_err(err)?;
    if sys.modulus_product() > MAX_CRT_PRODUCT {
        return Err(format!("modulus product is capped at {MAX_CRT_PRODUCT} in the demo"));
    }
    let graphical = solve_graphical(&sys).map_err(err)?;
    let garner = solve_garner(&sys).map_err(err)?;
    let witness = graphical.witness.unwrap_or(graphical.x0);
    let sets = sys
        .items()
        .iter()
        .map(|c| {
            let set = successor_set(c.remainder, c.modulus, witness).map_err(err)?;
            Ok(json!({ "r": c.remainder, "m": c.modulus, "successors": set }))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(json!({
        "x0": graphical.x0,
        "garner_x0": garner.x0,
        "modulus_product": sys.modulus_product(),
        "witness": witness,
        "successor_sets": sets,
    })
    .to_string())
}
