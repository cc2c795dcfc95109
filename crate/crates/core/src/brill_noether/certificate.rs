//! Certificates that a metric Heawood graph is Brill–Noether special.
//!
//! A certificate records the colour-class divisor `D_B` of degree 7, its
//! rank on the metric graph with every witness, and for each pair
//! `v1 != v2` in `B` the check that `D_B - v1 - v2` is `v1`-reduced with no
//! chip at `v1` (so `D_B - 2 v1 - v2` has no effective representative and
//! the rank cannot exceed 2).

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{color_class_divisor, prop21_lower_bound, rho};
use crate::catalog;
use crate::chip_firing::{
    certify_rank_determining, discretize, effective_in_class_at, is_reduced, rank_metric,
    MetricRank, RankOptions, DEFAULT_PROBE_CAP,
};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::io::GraphFile;
use crate::graph::{bipartition, genus, girth, Girth, MetricMultigraph, DEFAULT_CYCLE_CAP};
use crate::rational::{format_rational, Rational};

/// Everything that determines a run. Recorded verbatim in certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub numerator_bound: i64,
    pub denominator_bound: i64,
    pub cycle_cap: usize,
    pub probe_cap: u64,
    pub verify: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            trials: 100,
            numerator_bound: 10,
            denominator_bound: 6,
            cycle_cap: DEFAULT_CYCLE_CAP,
            probe_cap: DEFAULT_PROBE_CAP as u64,
            verify: false,
        }
    }
}

impl RunConfig {
    pub fn rank_options(&self) -> RankOptions {
        RankOptions {
            probe_cap: self.probe_cap as u128,
            verify: self.verify,
            ..RankOptions::default()
        }
    }
}

/// `count` lengths `p/q` with `p` uniform in `1..=numerator_bound` and `q`
/// uniform in `1..=denominator_bound`.
pub fn random_lengths<R: Rng>(
    rng: &mut R,
    count: usize,
    numerator_bound: i64,
    denominator_bound: i64,
) -> Vec<Rational> {
    (0..count)
        .map(|_| {
            let p = rng.random_range(1..=numerator_bound);
            let q = rng.random_range(1..=denominator_bound);
            Rational::new(p, q)
        })
        .collect()
}

/// The metrics of a sweep, generated in trial order from one seeded
/// ChaCha8 stream.
pub fn random_heawood_metrics(config: &RunConfig) -> Result<Vec<MetricMultigraph>> {
    if config.numerator_bound < 1 || config.denominator_bound < 1 {
        return Err(Error::InvalidArgument("length bounds must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let heawood = catalog::heawood();
    (0..config.trials)
        .map(|_| {
            let lengths = random_lengths(
                &mut rng,
                heawood.edge_count(),
                config.numerator_bound,
                config.denominator_bound,
            );
            MetricMultigraph::new(heawood.clone(), lengths)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub v1: usize,
    pub v2: usize,
    /// `D_B - v1 - v2` is `v1`-reduced.
    pub reduced: bool,
    pub coefficient_at_v1: i64,
    /// `D_B - 2 v1 - v2` is equivalent to an effective divisor.
    pub double_removal_effective: bool,
}

impl PairWitness {
    pub fn holds(&self) -> bool {
        self.reduced && self.coefficient_at_v1 == 0 && !self.double_removal_effective
    }
}

#[derive(Debug, Clone)]
pub struct SpecialnessCertificate {
    pub metric: MetricMultigraph,
    pub config: Option<RunConfig>,
    pub trial: Option<usize>,
    pub color_class: Vec<usize>,
    pub divisor: Divisor,
    pub degree: i64,
    pub genus: usize,
    pub girth: usize,
    /// One less than the fewest colour-class vertices on a cycle.
    pub cycle_hit_bound: i64,
    pub rank: MetricRank,
    pub rho: i64,
    pub pair_witnesses: Vec<PairWitness>,
}

impl PartialEq for SpecialnessCertificate {
    fn eq(&self, other: &Self) -> bool {
        self.metric == other.metric
            && self.config == other.config
            && self.trial == other.trial
            && self.color_class == other.color_class
            && self.divisor == other.divisor
            && self.degree == other.degree
            && self.genus == other.genus
            && self.girth == other.girth
            && self.cycle_hit_bound == other.cycle_hit_bound
            && self.rank.result == other.rank.result
            && self.rank.model.scale == other.rank.model.scale
            && self.rho == other.rho
            && self.pair_witnesses == other.pair_witnesses
    }
}

fn falsified(m: &MetricMultigraph, claim: String) -> Error {
    Error::falsified(claim, json!({ "graph": GraphFile::from_metric(m) }))
}

/// Certifies one metric on the catalog Heawood graph. Any failed check is a
/// [`Error::Falsified`] carrying the metric.
pub fn certify_special(
    m: &MetricMultigraph,
    config: Option<&RunConfig>,
    trial: Option<usize>,
) -> Result<SpecialnessCertificate> {
    let g = m.graph();
    if *g != catalog::heawood() {
        return Err(Error::NotHeawood);
    }
    let genus = genus(g);
    let girth = match girth(g) {
        Girth::Finite(n) => n,
        Girth::Infinite => return Err(falsified(m, "Heawood graph has no cycle".into())),
    };
    let black = bipartition(g)
        .ok_or_else(|| falsified(m, "Heawood graph is not bipartite".into()))?
        .black;
    let divisor = color_class_divisor(g, &black)?;
    let degree = divisor.degree();
    if !certify_rank_determining(m, &black) {
        return Err(Error::Contradiction(
            "colour class of a girth-6 bipartite graph failed the acyclic-closure test".into(),
        ));
    }
    let cycle_cap = config.map_or(DEFAULT_CYCLE_CAP, |c| c.cycle_cap);
    let cycle_hit_bound = prop21_lower_bound(m, &black, cycle_cap, None)?.bound;
    if cycle_hit_bound != 2 {
        return Err(falsified(m, format!("cycle-hit bound is {cycle_hit_bound}, not 2")));
    }
    let opts = config.map(RunConfig::rank_options).unwrap_or_default();
    let rank = rank_metric(m, &divisor, Some(&black), &opts)?;
    if rank.rank() != 2 {
        return Err(falsified(m, format!("D_B has rank {} instead of 2", rank.rank())));
    }
    match &rank.result.upper_witness {
        Some(u) if u.probe.degree() == 3 => {}
        _ => return Err(falsified(m, "missing degree-3 upper witness".into())),
    }

    let model = &rank.model.graph;
    let lifted = divisor.extended(model.vertex_count());
    let mut pair_witnesses = Vec::new();
    for (i, &v1) in black.iter().enumerate() {
        for &v2 in &black[i + 1..] {
            let w = pair_witness(model, &lifted, v1, v2)?;
            if !w.holds() {
                return Err(falsified(
                    m,
                    format!(
                        "D_B - {} - {} is not a valid exactness witness",
                        g.vertex_name(v1),
                        g.vertex_name(v2)
                    ),
                ));
            }
            pair_witnesses.push(w);
        }
    }

    let rho = rho(genus as i64, rank.rank(), degree);
    if rho >= 0 {
        return Err(falsified(m, format!("rho = {rho} is not negative")));
    }
    Ok(SpecialnessCertificate {
        metric: m.clone(),
        config: config.cloned(),
        trial,
        color_class: black,
        divisor,
        degree,
        genus,
        girth,
        cycle_hit_bound,
        rank,
        rho,
        pair_witnesses,
    })
}

fn pair_witness(
    model: &crate::graph::MultiGraph,
    d_b: &Divisor,
    v1: usize,
    v2: usize,
) -> Result<PairWitness> {
    let mut d = d_b.clone();
    d[v1] -= 1;
    d[v2] -= 1;
    let reduced = is_reduced(model, &d, v1)?;
    let coefficient_at_v1 = d[v1];
    d[v1] -= 1;
    let double_removal_effective = effective_in_class_at(model, &d, v1)?.is_some();
    Ok(PairWitness { v1, v2, reduced, coefficient_at_v1, double_removal_effective })
}

impl SpecialnessCertificate {
    /// Recomputes the certificate from its embedded metric and configuration
    /// and re-checks every rank witness.
    pub fn validate(&self) -> Result<()> {
        let again = certify_special(&self.metric, self.config.as_ref(), self.trial)?;
        if again != *self {
            return Err(falsified(&self.metric, "certificate does not reproduce".into()));
        }
        let model = discretize(&self.metric)?;
        let lifted = self.divisor.extended(model.graph.vertex_count());
        if !self.rank.result.verify(&model.graph, &lifted)? {
            return Err(falsified(&self.metric, "rank witnesses do not re-verify".into()));
        }
        if self.rho != rho(self.genus as i64, self.rank.rank(), self.degree) {
            return Err(falsified(&self.metric, "rho does not match".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let g = self.metric.graph();
        let model = &self.rank.model.graph;
        json!({
            "graph": GraphFile::from_metric(&self.metric),
            "config": self.config,
            "trial": self.trial,
            "color_class": self.color_class.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
            "divisor": self.divisor.to_json(g),
            "degree": self.degree,
            "genus": self.genus,
            "girth": self.girth,
            "cycle_hit_bound": self.cycle_hit_bound,
            "rank": self.rank.to_json(),
            "rho": self.rho,
            "pair_witnesses": self.pair_witnesses.iter().map(|w| json!({
                "v1": model.vertex_name(w.v1),
                "v2": model.vertex_name(w.v2),
                "reduced": w.reduced,
                "coefficient_at_v1": w.coefficient_at_v1,
                "double_removal_effective": w.double_removal_effective,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let g = self.metric.graph();
        let mut out = String::new();
        let _ = writeln!(out, "Brill-Noether specialness certificate");
        if let Some(c) = &self.config {
            let _ = writeln!(
                out,
                "  run: seed {} trial {} of {}, numerators <= {}, denominators <= {}",
                c.seed,
                self.trial.map_or("-".to_string(), |t| t.to_string()),
                c.trials,
                c.numerator_bound,
                c.denominator_bound
            );
        }
        let lengths: Vec<String> = g
            .edges()
            .iter()
            .zip(self.metric.lengths())
            .map(|(e, l)| format!("{}={}", e.id, format_rational(l)))
            .collect();
        let _ = writeln!(out, "  metric: {}", lengths.join(" "));
        let _ = writeln!(
            out,
            "  subdivided model: {} vertices, {} edges, scale {}",
            self.rank.model.graph.vertex_count(),
            self.rank.model.graph.edge_count(),
            format_rational(&self.rank.model.scale)
        );
        let class: Vec<&str> = self.color_class.iter().map(|&v| g.vertex_name(v)).collect();
        let _ = writeln!(out, "  D_B = sum of {{{}}}, degree {}", class.join(", "), self.degree);
        let _ = writeln!(
            out,
            "  genus {}, girth {}, every cycle meets B at least {} times",
            self.genus,
            self.girth,
            self.cycle_hit_bound + 1
        );
        let _ = writeln!(
            out,
            "  rank {} ({} lower witnesses)",
            self.rank.rank(),
            self.rank.result.lower_witnesses.len()
        );
        if let Some(u) = &self.rank.result.upper_witness {
            let model = &self.rank.model.graph;
            let _ = writeln!(
                out,
                "  upper witness: probe {} reduces at {} to coefficient {}",
                u.probe.to_json(model),
                model.vertex_name(u.base_vertex),
                u.reduced_form[u.base_vertex]
            );
        }
        let held = self.pair_witnesses.iter().filter(|w| w.holds()).count();
        let _ = writeln!(
            out,
            "  pair witnesses: {held}/{} with D_B - v1 - v2 v1-reduced",
            self.pair_witnesses.len()
        );
        let _ = writeln!(out, "  rho(8, 2, 7) = {}", self.rho);
        out
    }
}

/// Certificates of a sweep in trial order. Stops at the first failing trial
/// and keeps what was completed before it.
#[derive(Debug)]
pub struct SweepOutcome {
    pub certificates: Vec<SpecialnessCertificate>,
    pub failure: Option<(usize, Error)>,
}

pub fn certify_sweep(config: &RunConfig) -> Result<SweepOutcome> {
    let metrics = random_heawood_metrics(config)?;
    let mut certificates = Vec::with_capacity(metrics.len());
    for (trial, m) in metrics.iter().enumerate() {
        match certify_special(m, Some(config), Some(trial)) {
            Ok(c) => certificates.push(c),
            Err(e) => {
                return Ok(SweepOutcome { certificates, failure: Some((trial, e)) });
            }
        }
    }
    Ok(SweepOutcome { certificates, failure: None })
}
