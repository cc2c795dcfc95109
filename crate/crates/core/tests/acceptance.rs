//! The nine acceptance criteria. Each prints one PASS/FAIL line with its
//! runtime against the pinned limit; any failure makes the run fail.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chipfire::brill_noether::{
    certify_sweep, cor22_bound, girth_genus_scan, random_lengths, rho, FeasiblePair, RunConfig,
};
use chipfire::catalog;
use chipfire::chip_firing::{
    canonical_divisor, certify_rank_determining, discretize, effective_in_class_at, fire_set,
    is_reduced, rank_discrete, rank_metric, reduce, RankOptions,
};
use chipfire::divisor::Divisor;
use chipfire::graph::{
    bipartition, edge_connectivity, genus, girth, subdivide_uniform, Girth, MetricMultigraph,
    MultiGraph,
};
use chipfire::oracle::rank_bruteforce;
use chipfire::rational::Rational;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ac1_heawood_structure() -> Outcome {
    let h = catalog::heawood();
    let parts = bipartition(&h).ok_or("not bipartite")?;
    let kappa = edge_connectivity(&h).map_err(fail)?;
    let moore = 2 * (2usize.pow(3) - 1);
    let got = (
        h.vertex_count(),
        h.edge_count(),
        genus(&h),
        girth(&h),
        parts.black.len(),
        parts.white.len(),
        kappa,
    );
    ensure(got == (14, 21, 8, Girth::Finite(6), 7, 7, 3) && h.vertex_count() == moore, || {
        format!("got {got:?}")
    })?;
    Ok("14 vertices, 21 edges, genus 8, girth 6, 7+7, edge connectivity 3, |V| = 2(2^3-1)".into())
}

fn heawood_black() -> (MultiGraph, Vec<usize>, Divisor) {
    let h = catalog::heawood();
    let black = bipartition(&h).unwrap().black;
    let d = Divisor::from_vertices(&h, &black);
    (h, black, d)
}

fn ac2_unit_rank() -> Outcome {
    let (h, black, d_b) = heawood_black();
    let m = MetricMultigraph::unit(h);
    let r = rank_metric(&m, &d_b, Some(&black), &RankOptions::default()).map_err(fail)?;
    let rho = rho(8, r.rank(), d_b.degree());
    ensure((r.rank(), d_b.degree(), rho) == (2, 7, -1), || {
        format!("rank {} degree {} rho {rho}", r.rank(), d_b.degree())
    })?;
    Ok("rank 2, degree 7, rho(8,2,7) = -1".into())
}

// Shared by criteria 3 and 4.
fn ac3_ac4_sweep() -> (Outcome, Outcome) {
    let config = RunConfig { seed: 42, trials: 100, ..RunConfig::default() };
    let sweep = match certify_sweep(&config) {
        Ok(s) => s,
        Err(e) => return (Err(e.to_string()), Err("sweep did not run".into())),
    };
    let ac3 = match &sweep.failure {
        Some((trial, e)) => Err(format!("trial {trial}: {e}")),
        None if sweep.certificates.len() != 100 => {
            Err(format!("{} certificates", sweep.certificates.len()))
        }
        None => {
            let bad = sweep.certificates.iter().filter(|c| c.rank.rank() != 2 || c.rho != -1).count();
            if bad == 0 {
                Ok("100/100 random metrics (seed 42) certify rank 2, rho -1".into())
            } else {
                Err(format!("{bad} certificates off rank 2"))
            }
        }
    };
    // re-derive every pair witness from the metric alone
    let ac4 = (|| {
        ensure(!sweep.certificates.is_empty(), || "no certificates".into())?;
        let (_, black, d_b) = heawood_black();
        let mut checked = 0;
        for c in &sweep.certificates {
            let model = discretize(&c.metric).map_err(fail)?.graph;
            let lifted = d_b.extended(model.vertex_count());
            for (i, &v1) in black.iter().enumerate() {
                for &v2 in &black[i + 1..] {
                    let mut d = lifted.clone();
                    d[v1] -= 1;
                    d[v2] -= 1;
                    ensure(d[v1] == 0 && is_reduced(&model, &d, v1).map_err(fail)?, || {
                        format!("trial {:?}: D_B - v1 - v2 not v1-reduced", c.trial)
                    })?;
                    d[v1] -= 1;
                    ensure(effective_in_class_at(&model, &d, v1).map_err(fail)?.is_none(), || {
                        format!("trial {:?}: D_B - 2v1 - v2 is effective", c.trial)
                    })?;
                    checked += 1;
                }
            }
            ensure(c.pair_witnesses.len() == 21 && c.pair_witnesses.iter().all(|w| w.holds()), || {
                format!("trial {:?}: recorded witnesses incomplete", c.trial)
            })?;
        }
        Ok(format!(
            "{checked} pair witnesses over {} metrics: v1-reduced, coefficient 0, no effective D_B - 2v1 - v2",
            sweep.certificates.len()
        ))
    })();
    (ac3, ac4)
}

fn random_bipartite_metric(rng: &mut ChaCha8Rng) -> MetricMultigraph {
    loop {
        let n = 2 * rng.random_range(2..=5usize);
        let mut pairs = BTreeSet::new();
        for _ in 0..rng.random_range(0..=3) {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            let gap = (a + n - b) % n;
            if (a + b) % 2 == 1 && gap != 1 && gap != n - 1 {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges: Vec<(String, String, String)> = (0..n)
            .map(|i| (format!("e{i}"), names[i].clone(), names[(i + 1) % n].clone()))
            .collect();
        for (k, (a, b)) in pairs.into_iter().enumerate() {
            edges.push((format!("c{k}"), names[a].clone(), names[b].clone()));
        }
        let g = MultiGraph::new(names, edges).unwrap();
        if genus(&g) > 4 {
            continue;
        }
        let lengths = random_lengths(rng, g.edge_count(), 3, 2);
        return MetricMultigraph::new(g, lengths).unwrap();
    }
}

fn ac5_cor22() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2022);
    let samples = 24;
    for i in 0..samples {
        let m = random_bipartite_metric(&mut rng);
        let g = m.graph();
        let black = bipartition(g).unwrap().black;
        let d_b = Divisor::from_vertices(g, &black);
        let bound = cor22_bound(g).map_err(fail)?;
        let probes = certify_rank_determining(&m, &black).then_some(black.as_slice());
        let rank = rank_metric(&m, &d_b, probes, &RankOptions::default()).map_err(fail)?.rank();
        ensure(rank >= bound, || format!("sample {i}: rank {rank} < bound {bound}"))?;
    }
    Ok(format!("{samples} bipartite metric graphs satisfy rank(D_B) >= girth/2 - 1"))
}

/// Figure 1 with bridges of length 1 and loops of length 2: seven vertices
/// after subdivision, small enough for the oracle.
fn figure1_model() -> MultiGraph {
    let f = catalog::figure1();
    let lengths = f
        .edges()
        .iter()
        .map(|e| Rational::from_integer(if e.is_loop() { 2 } else { 1 }))
        .collect();
    let m = MetricMultigraph::new(f, lengths).unwrap();
    subdivide_uniform(&m).unwrap().graph
}

fn ac6_canonical() -> Outcome {
    let mut report = Vec::new();
    for (name, g, target) in [
        ("K4", catalog::k4(), genus(&catalog::k4())),
        ("Figure-1", figure1_model(), genus(&catalog::figure1())),
    ] {
        let k = canonical_divisor(&g);
        let fast = rank_discrete(&g, &k).map_err(fail)?.rank;
        let slow = rank_bruteforce(&g, &k).map_err(fail)?;
        let want = target as i64 - 1;
        ensure(fast == want && slow == want, || {
            format!("{name}: rank_discrete {fast}, oracle {slow}, genus - 1 = {want}")
        })?;
        report.push(format!("{name} {fast}"));
    }
    let f = MetricMultigraph::unit(catalog::figure1());
    let k = canonical_divisor(f.graph());
    let metric = rank_metric(&f, &k, None, &RankOptions::default()).map_err(fail)?.rank();
    ensure(metric == 2, || format!("unit Figure-1 metric rank {metric}"))?;
    Ok(format!("rank(K) = genus - 1 by both methods: {}", report.join(", ")))
}

fn ac7_hyperelliptic() -> Outcome {
    let f = catalog::figure1();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut metrics = vec![MetricMultigraph::unit(f.clone())];
    for _ in 0..5 {
        let lengths = random_lengths(&mut rng, f.edge_count(), 10, 6);
        metrics.push(MetricMultigraph::new(f.clone(), lengths).unwrap());
    }
    let mut found = Vec::new();
    for (i, m) in metrics.iter().enumerate() {
        let model = discretize(m).map_err(fail)?.graph;
        let n = model.vertex_count();
        let mut hit = None;
        'search: for a in 0..n {
            for b in a..n {
                let d = Divisor::from_vertices(&model, &[a, b]);
                if rank_discrete(&model, &d).map_err(fail)?.rank == 1 {
                    hit = Some(format!("{}+{}", model.vertex_name(a), model.vertex_name(b)));
                    break 'search;
                }
            }
        }
        let hit = hit.ok_or_else(|| format!("metric {i}: no degree-2 divisor of rank 1"))?;
        found.push(hit);
    }
    Ok(format!("degree-2 rank-1 divisor on all 6 metrics ({})", found.join(", ")))
}

fn ac8_scan() -> Outcome {
    let got = girth_genus_scan(30).map_err(fail)?;
    let want = vec![FeasiblePair { girth: 6, genus: 8, moore_lower_bound: 8 }];
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("girth_genus_scan(30) = [(6, 8)]".into())
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, max_extra: usize, loops: bool) -> MultiGraph {
    let n = rng.random_range(1..=max_n);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        let p = rng.random_range(0..i);
        edges.push((format!("t{i}"), names[i].clone(), names[p].clone()));
    }
    for k in 0..rng.random_range(0..=max_extra) {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b || loops {
            edges.push((format!("x{k}"), names[a].clone(), names[b].clone()));
        }
    }
    MultiGraph::new(names, edges).unwrap()
}

fn random_divisor(rng: &mut ChaCha8Rng, g: &MultiGraph, lo: i64, hi: i64) -> Divisor {
    Divisor::from_coefficients((0..g.vertex_count()).map(|_| rng.random_range(lo..=hi)).collect())
}

fn ac9_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut cases = [0usize; 5];
    let opts = RankOptions::default();

    // reduced divisors: unique, idempotent, reduced
    for _ in 0..400 {
        let g = random_graph(&mut rng, 6, 5, true);
        let n = g.vertex_count();
        let d = random_divisor(&mut rng, &g, -4, 4);
        let q = rng.random_range(0..n);
        let r = reduce(&g, &d, q).map_err(fail)?;
        ensure(is_reduced(&g, &r, q).map_err(fail)? && reduce(&g, &r, q).map_err(fail)? == r, || {
            format!("reduce not idempotent on {d:?}")
        })?;
        if n > 1 {
            let set: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
            if !set.is_empty() && set.len() < n {
                let fired = fire_set(&g, &d, &set).map_err(fail)?;
                ensure(reduce(&g, &fired, q).map_err(fail)? == r, || {
                    format!("reduced form changed under firing {set:?}")
                })?;
            }
        }
        cases[0] += 1;
    }

    // Riemann–Roch on loopless graphs
    while cases[1] < 300 {
        let g = random_graph(&mut rng, 6, 4, false);
        let d = random_divisor(&mut rng, &g, -1, 2);
        if genus(&g) > 4 || d.degree().abs() > 6 {
            continue;
        }
        let k = canonical_divisor(&g);
        let lhs = rank_discrete(&g, &d).map_err(fail)?.rank - rank_discrete(&g, &(&k - &d)).map_err(fail)?.rank;
        let rhs = d.degree() - genus(&g) as i64 + 1;
        ensure(lhs == rhs, || format!("Riemann-Roch: {lhs} != {rhs} for {d:?}"))?;
        cases[1] += 1;
    }

    // subdivision invariance: doubling every length
    for _ in 0..150 {
        let g = random_graph(&mut rng, 3, 2, true);
        let d = random_divisor(&mut rng, &g, -1, 1);
        let lengths = (0..g.edge_count()).map(|_| Rational::from_integer(rng.random_range(1..=2))).collect();
        let m = MetricMultigraph::new(g, lengths).unwrap();
        let coarse = rank_metric(&m, &d, None, &opts).map_err(fail)?.rank();
        let fine = subdivide_uniform(&m.scaled(Rational::from_integer(2)).unwrap()).unwrap().graph;
        let fine_rank = rank_discrete(&fine, &d.extended(fine.vertex_count())).map_err(fail)?.rank;
        ensure(coarse == fine_rank, || format!("subdivision: {coarse} != {fine_rank}"))?;
        cases[2] += 1;
    }

    // scaling invariance
    for _ in 0..150 {
        let g = random_graph(&mut rng, 4, 2, true);
        let d = random_divisor(&mut rng, &g, -1, 1);
        let lengths = random_lengths(&mut rng, g.edge_count(), 2, 2);
        let m = MetricMultigraph::new(g, lengths).unwrap();
        let c = Rational::new(rng.random_range(1..=5), rng.random_range(1..=5));
        let a = rank_metric(&m, &d, None, &opts).map_err(fail)?.rank();
        let b = rank_metric(&m.scaled(c).unwrap(), &d, None, &opts).map_err(fail)?.rank();
        ensure(a == b, || format!("scaling by {c}: {a} != {b}"))?;
        cases[3] += 1;
    }

    // exhaustive oracle sweep, coefficients in [-1, 2]
    for g in [
        catalog::cycle_graph(3).unwrap(),
        catalog::cycle_graph(4).unwrap(),
        catalog::cycle_graph(2).unwrap(),
        catalog::figure1(),
    ] {
        let n = g.vertex_count() as u32;
        for code in 0..4i64.pow(n) {
            let d = Divisor::from_coefficients((0..n).map(|i| (code / 4i64.pow(i)) % 4 - 1).collect());
            let fast = rank_discrete(&g, &d).map_err(fail)?.rank;
            let slow = rank_bruteforce(&g, &d).map_err(fail)?;
            ensure(fast == slow, || format!("oracle disagrees on {d:?}: {fast} vs {slow}"))?;
            cases[4] += 1;
        }
    }

    let total: usize = cases.iter().sum();
    ensure(total >= 1000, || format!("only {total} cases"))?;
    Ok(format!(
        "{total} cases, 0 violations (reduce {}, Riemann-Roch {}, subdivision {}, scaling {}, oracle {})",
        cases[0], cases[1], cases[2], cases[3], cases[4]
    ))
}

fn report(id: usize, limit: Duration, elapsed: Duration, outcome: &Outcome) -> bool {
    let in_time = elapsed <= limit;
    let ok = outcome.is_ok() && in_time;
    let detail = match outcome {
        Ok(s) => s.clone(),
        Err(e) => e.clone(),
    };
    let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), limit.as_secs());
    println!(
        "criterion {id}: {} - {detail} [{timing}{}]",
        if ok { "PASS" } else { "FAIL" },
        if in_time { "" } else { ", over time limit" }
    );
    ok
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut all = true;

    let (o, t) = timed(ac1_heawood_structure);
    all &= report(1, secs(1), t, &o);
    let (o, t) = timed(ac2_unit_rank);
    all &= report(2, secs(5), t, &o);
    let ((o3, o4), t) = timed(ac3_ac4_sweep);
    all &= report(3, secs(600), t, &o3);
    all &= report(4, secs(600), t, &o4);
    let (o, t) = timed(ac5_cor22);
    all &= report(5, secs(120), t, &o);
    let (o, t) = timed(ac6_canonical);
    all &= report(6, secs(60), t, &o);
    let (o, t) = timed(ac7_hyperelliptic);
    all &= report(7, secs(300), t, &o);
    let (o, t) = timed(ac8_scan);
    all &= report(8, secs(1), t, &o);
    let (o, t) = timed(ac9_properties);
    all &= report(9, secs(600), t, &o);

    if all {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
