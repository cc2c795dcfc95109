//! Baker–Norine rank with checkable witnesses.
//!
//! The search tests `r = 0, 1, 2, ...` and stops at the first `r` for which
//! some effective `E` of degree `r` leaves `D - E` without an effective
//! representative. Probes are enumerated as multisets in lexicographic
//! vertex order, so the reported witness is always the first failure.

use num_traits::One;
use serde_json::{json, Value};

use super::reduce::reduce;
use super::{certify_rank_determining, is_equivalent_at};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::{genus, rescale_to_integer_lengths, subdivide_uniform, MetricMultigraph, MultiGraph};
use crate::rational::{format_rational, Rational};

pub const DEFAULT_PROBE_CAP: u128 = 1_000_000;

#[derive(Debug, Clone)]
pub struct RankOptions {
    /// Largest number of probes allowed at a single degree.
    pub probe_cap: u128,
    /// Vertices probes may be supported on. `None` means all vertices.
    /// Only sound for rank-determining sets.
    pub probes: Option<Vec<usize>>,
    /// Answer `deg - g` directly when `deg > 2g - 2`.
    pub riemann_roch_shortcut: bool,
    /// With the shortcut, also run the full search and compare.
    pub verify: bool,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            probe_cap: DEFAULT_PROBE_CAP,
            probes: None,
            riemann_roch_shortcut: false,
            verify: false,
        }
    }
}

/// `effective_equivalent` is effective and equivalent to `divisor - probe`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerWitness {
    pub probe: Divisor,
    pub effective_equivalent: Divisor,
}

/// `reduced_form` is the `base_vertex`-reduced form of `divisor - probe` and
/// is negative at the base, so that class has no effective member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperWitness {
    pub probe: Divisor,
    pub reduced_form: Divisor,
    pub base_vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub rank: i64,
    /// One per probe of degree `rank`; empty when `rank = -1`.
    pub lower_witnesses: Vec<LowerWitness>,
    /// Absent only when the rank came from the unverified Riemann–Roch
    /// shortcut.
    pub upper_witness: Option<UpperWitness>,
}

impl RankResult {
    /// Re-checks every witness against `divisor` on `g`.
    pub fn verify(&self, g: &MultiGraph, divisor: &Divisor) -> Result<bool> {
        for w in &self.lower_witnesses {
            if w.probe.degree() != self.rank || !w.probe.is_effective() || !w.effective_equivalent.is_effective() {
                return Ok(false);
            }
            let diff = divisor - &w.probe;
            if !is_equivalent_at(g, &diff, &w.effective_equivalent, base_for(&diff))? {
                return Ok(false);
            }
        }
        if let Some(u) = &self.upper_witness {
            let diff = divisor - &u.probe;
            let ok = u.probe.is_effective()
                && u.probe.degree() == self.rank + 1
                && u.reduced_form[u.base_vertex] < 0
                && super::is_reduced(g, &u.reduced_form, u.base_vertex)?
                && reduce(g, &diff, u.base_vertex)? == u.reduced_form;
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self, g: &MultiGraph) -> Value {
        json!({
            "rank": self.rank,
            "lower_witnesses": self.lower_witnesses.iter().map(|w| json!({
                "probe": w.probe.to_json(g),
                "effective_equivalent": w.effective_equivalent.to_json(g),
            })).collect::<Vec<_>>(),
            "upper_witness": self.upper_witness.as_ref().map(|u| json!({
                "probe": u.probe.to_json(g),
                "reduced_form": u.reduced_form.to_json(g),
                "base_vertex": g.vertex_name(u.base_vertex),
            })),
        })
    }
}

// Reducing at the most negative vertex keeps the borrowing phase trivial in
// the common case of a single deficit.
fn base_for(d: &Divisor) -> usize {
    let coeffs = d.coefficients();
    let mut best = 0;
    for (v, &c) in coeffs.iter().enumerate() {
        if c < coeffs[best] {
            best = v;
        }
    }
    best
}

enum Probe {
    Pass(LowerWitness),
    Fail(UpperWitness),
}

fn run_probe(g: &MultiGraph, d: &Divisor, probe: Divisor) -> Result<Probe> {
    let diff = d - &probe;
    if diff.is_effective() {
        return Ok(Probe::Pass(LowerWitness { probe, effective_equivalent: diff }));
    }
    let base = base_for(&diff);
    let reduced = reduce(g, &diff, base)?;
    Ok(if reduced[base] >= 0 {
        Probe::Pass(LowerWitness { probe, effective_equivalent: reduced })
    } else {
        Probe::Fail(UpperWitness { probe, reduced_form: reduced, base_vertex: base })
    })
}

fn multiset_count(n: usize, r: usize) -> u128 {
    // C(n + r - 1, r), saturating
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        acc = acc.saturating_mul(n as u128 + i) / (i + 1);
        if acc == u128::MAX {
            break;
        }
    }
    if n == 0 && r > 0 {
        0
    } else {
        acc
    }
}

/// Nondecreasing index sequences of length `r` over `0..n`, in
/// lexicographic order.
struct Multisets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Multisets {
    fn new(n: usize, r: usize) -> Self {
        let current = (n > 0 || r == 0).then(|| vec![0; r]);
        Multisets { n, current }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] + 1 < self.n {
                let v = next[i] + 1;
                next[i..].iter_mut().for_each(|x| *x = v);
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

pub fn rank_discrete(g: &MultiGraph, d: &Divisor) -> Result<RankResult> {
    rank_discrete_with(g, d, &RankOptions::default())
}

pub fn rank_discrete_with(g: &MultiGraph, d: &Divisor, opts: &RankOptions) -> Result<RankResult> {
    d.check(g)?;
    let deg = d.degree();
    let genus = genus(g) as i64;
    if opts.riemann_roch_shortcut && deg > 2 * genus - 2 {
        let rank = deg - genus;
        if !opts.verify {
            return Ok(RankResult { rank, lower_witnesses: Vec::new(), upper_witness: None });
        }
        let full = search(g, d, opts)?;
        if full.rank != rank {
            return Err(Error::falsified(
                format!("Riemann–Roch predicts rank {rank}, search found {}", full.rank),
                json!({ "divisor": d.to_json(g) }),
            ));
        }
        return Ok(full);
    }
    search(g, d, opts)
}

fn search(g: &MultiGraph, d: &Divisor, opts: &RankOptions) -> Result<RankResult> {
    let probes: Vec<usize> = match &opts.probes {
        Some(p) => {
            let mut p = p.clone();
            p.sort_unstable();
            p.dedup();
            if let Some(&v) = p.iter().find(|&&v| v >= g.vertex_count()) {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
            p
        }
        None => (0..g.vertex_count()).collect(),
    };
    let mut previous: Vec<LowerWitness> = Vec::new();
    for r in 0.. {
        let count = multiset_count(probes.len(), r);
        if count > opts.probe_cap {
            return Err(Error::CapExceeded { what: "probe", count, cap: opts.probe_cap });
        }
        let mut current = Vec::with_capacity(count as usize);
        for picks in Multisets::new(probes.len(), r) {
            let support: Vec<usize> = picks.iter().map(|&i| probes[i]).collect();
            match run_probe(g, d, Divisor::from_vertices(g, &support))? {
                Probe::Pass(w) => current.push(w),
                Probe::Fail(u) => {
                    return Ok(RankResult {
                        rank: r as i64 - 1,
                        lower_witnesses: previous,
                        upper_witness: Some(u),
                    })
                }
            }
        }
        if current.is_empty() {
            // empty probe set: nothing can ever fail, which only happens for r > 0
            return Err(Error::InvalidArgument("empty probe set".into()));
        }
        previous = current;
    }
    unreachable!("degree bounds the rank")
}

/// The unit-edge graph a metric graph is measured on: lengths scaled to
/// integers, doubled when a loop would otherwise stay a loop, then
/// uniformly subdivided.
#[derive(Debug, Clone)]
pub struct DiscreteModel {
    pub graph: MultiGraph,
    /// Factor applied to the original lengths.
    pub scale: Rational,
    pub original_vertices: usize,
}

pub fn discretize(m: &MetricMultigraph) -> Result<DiscreteModel> {
    let (mut scaled, mut scale) = rescale_to_integer_lengths(m);
    let short_loop = scaled
        .graph()
        .edges()
        .iter()
        .zip(scaled.lengths())
        .any(|(e, l)| e.is_loop() && l.is_one());
    if short_loop {
        let two = Rational::from_integer(2);
        scaled = scaled.scaled(two)?;
        scale *= two;
    }
    let sub = subdivide_uniform(&scaled)?;
    Ok(DiscreteModel {
        graph: sub.graph,
        scale,
        original_vertices: m.graph().vertex_count(),
    })
}

#[derive(Debug, Clone)]
pub struct MetricRank {
    pub model: DiscreteModel,
    pub result: RankResult,
}

impl MetricRank {
    pub fn rank(&self) -> i64 {
        self.result.rank
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.result.to_json(&self.model.graph);
        v["scale"] = Value::from(format_rational(&self.model.scale));
        v
    }
}

/// Rank of a divisor on the metric graph `m`, given either on the original
/// vertices of `m` or on the vertices of its [`discretize`] model. With
/// `probe_set`, lower-bound probes are restricted to that set of original
/// vertices, which must pass [`certify_rank_determining`].
pub fn rank_metric(
    m: &MetricMultigraph,
    d: &Divisor,
    probe_set: Option<&[usize]>,
    opts: &RankOptions,
) -> Result<MetricRank> {
    if let Some(set) = probe_set {
        if !certify_rank_determining(m, set) {
            return Err(Error::ProbeSetNotCertified);
        }
    }
    let model = discretize(m)?;
    if d.len() != model.graph.vertex_count() {
        d.check(m.graph())?;
    }
    let mut opts = opts.clone();
    if let Some(set) = probe_set {
        // original vertices keep their indices in the subdivision
        opts.probes = Some(set.to_vec());
    }
    let lifted = d.extended(model.graph.vertex_count());
    let result = rank_discrete_with(&model.graph, &lifted, &opts)?;
    Ok(MetricRank { model, result })
}
