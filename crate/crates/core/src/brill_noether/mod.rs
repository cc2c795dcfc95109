//! Brill–Noether numerology and the rank bounds for colour-class divisors.

mod certificate;

use serde::Serialize;

use crate::chip_firing::{certify_rank_determining, rank_metric, RankOptions};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::{bipartition, girth, min_cycle_hits, Girth, MetricMultigraph, MultiGraph};

pub use certificate::{
    certify_special, certify_sweep, random_heawood_metrics, random_lengths, PairWitness, RunConfig,
    SpecialnessCertificate, SweepOutcome,
};

/// `g - (r + 1)(g - d + r)`.
pub fn rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

/// One chip on every vertex of `class`, which must be a colour class of a
/// bipartition of `g`.
pub fn color_class_divisor(g: &MultiGraph, class: &[usize]) -> Result<Divisor> {
    let parts = bipartition(g).ok_or(Error::NotBipartite)?;
    if !parts.is_class(class) {
        return Err(Error::NotColorClass);
    }
    Ok(Divisor::from_vertices(g, class))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleHitBound {
    /// Every cycle meets the set in at least `bound + 1` vertices.
    pub bound: i64,
    pub min_cycle_hits: usize,
    pub rank_determining: bool,
    /// Rank of the set's divisor, when verification was requested.
    pub verified_rank: Option<i64>,
}

/// Lower bound on the rank of `D_set` on every metric over `m`'s graph:
/// one less than the fewest vertices of `set` on a cycle.
///
/// A positive bound requires the set to be rank-determining; if the
/// acyclic-closure test disagrees the result is an internal contradiction.
/// With `verify`, the rank itself is computed on `m` and compared.
pub fn prop21_lower_bound(
    m: &MetricMultigraph,
    set: &[usize],
    cycle_cap: usize,
    verify: Option<&RankOptions>,
) -> Result<CycleHitBound> {
    let g = m.graph();
    let hits = match min_cycle_hits(g, set, cycle_cap)? {
        Girth::Finite(h) => h,
        Girth::Infinite => return Err(Error::Acyclic),
    };
    let bound = hits as i64 - 1;
    let rank_determining = certify_rank_determining(m, set);
    if bound >= 1 && !rank_determining {
        return Err(Error::Contradiction(format!(
            "every cycle meets the set {hits} times but its complement has a cyclic closure"
        )));
    }
    let verified_rank = match verify {
        None => None,
        Some(opts) => {
            let d = Divisor::from_vertices(g, set);
            let probes = rank_determining.then_some(set);
            let rank = rank_metric(m, &d, probes, opts)?.rank();
            if rank < bound {
                return Err(Error::falsified(
                    format!("cycle-hit bound {bound} exceeds the computed rank {rank}"),
                    serde_json::json!({
                        "graph": crate::graph::io::GraphFile::from_metric(m),
                        "set": set.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
                    }),
                ));
            }
            Some(rank)
        }
    };
    Ok(CycleHitBound { bound, min_cycle_hits: hits, rank_determining, verified_rank })
}

/// `girth / 2 - 1` for a bipartite graph with a cycle.
pub fn cor22_bound(g: &MultiGraph) -> Result<i64> {
    if bipartition(g).is_none() {
        return Err(Error::NotBipartite);
    }
    match girth(g) {
        Girth::Finite(n) => Ok(n as i64 / 2 - 1),
        Girth::Infinite => Err(Error::Acyclic),
    }
}

/// A (girth, genus) pair a trivalent graph could have while the colour-class
/// bound forces negative `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FeasiblePair {
    pub girth: u64,
    pub genus: u64,
    pub moore_lower_bound: u64,
}

/// All even girths up to `max_girth` with a genus that is at least the
/// breadth-first-search bound `2^(girth/2)` and below `girth^2 / 4`.
pub fn girth_genus_scan(max_girth: u64) -> Result<Vec<FeasiblePair>> {
    if max_girth < 2 {
        return Err(Error::InvalidArgument("maximum girth must be at least 2".into()));
    }
    let mut out = Vec::new();
    for girth in (2..=max_girth).step_by(2) {
        let half = girth / 2;
        let Some(moore) = u32::try_from(half).ok().and_then(|h| 2u64.checked_pow(h)) else {
            break;
        };
        let ceiling = half * half;
        for genus in moore..ceiling {
            out.push(FeasiblePair { girth, genus, moore_lower_bound: moore });
        }
    }
    Ok(out)
}
