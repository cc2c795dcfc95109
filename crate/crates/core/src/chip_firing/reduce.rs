//! Dhar's burning algorithm and q-reduced divisors.
//!
//! Reduction runs in two phases. First every vertex away from the base `q`
//! is made nonnegative by borrowing level by level along breadth-first
//! distance from `q`. Then the unburnt set left by Dhar's algorithm is fired
//! until the fire consumes the whole graph.
//!
//! On subdivided metric graphs a chip crossing a long path would cost one
//! burn per unit step, so when every boundary edge of the unburnt set leads
//! into a run of empty degree-2 vertices the set is fired repeatedly,
//! growing it along those runs in lockstep. Each such step is an ordinary
//! legal set-firing.

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

fn check_base(g: &MultiGraph, q: usize) -> Result<()> {
    if q < g.vertex_count() {
        Ok(())
    } else {
        Err(Error::UnknownVertex(format!("#{q}")))
    }
}

fn check_nonnegative_away(g: &MultiGraph, d: &Divisor, q: usize) -> Result<()> {
    match d.support().find(|&(v, c)| v != q && c < 0) {
        Some((v, c)) => Err(Error::NegativeAwayFromBase {
            vertex: g.vertex_name(v).to_string(),
            value: c,
        }),
        None => Ok(()),
    }
}

/// Scratch buffers for repeated burns on one graph.
struct Burner {
    burnt: Vec<bool>,
    hits: Vec<i64>,
    stack: Vec<usize>,
}

impl Burner {
    fn new(n: usize) -> Self {
        Burner {
            burnt: vec![false; n],
            hits: vec![0; n],
            stack: Vec::new(),
        }
    }

    /// Burns from `q`; afterwards `burnt[v]` is false exactly on the
    /// unburnt set. Returns its size.
    fn burn(&mut self, g: &MultiGraph, chips: &[i64], q: usize) -> usize {
        self.burnt.iter_mut().for_each(|b| *b = false);
        self.hits.iter_mut().for_each(|h| *h = 0);
        self.burnt[q] = true;
        self.stack.push(q);
        let mut count = 1;
        while let Some(v) = self.stack.pop() {
            for inc in g.incidences(v) {
                let w = inc.neighbor;
                if self.burnt[w] {
                    continue;
                }
                self.hits[w] += 1;
                if self.hits[w] > chips[w] {
                    self.burnt[w] = true;
                    count += 1;
                    self.stack.push(w);
                }
            }
        }
        g.vertex_count() - count
    }
}

/// The set Dhar's algorithm leaves unburnt when the fire starts at `q`.
/// Empty exactly when `d` is `q`-reduced.
pub fn dhar_unburnt(g: &MultiGraph, d: &Divisor, q: usize) -> Result<Vec<usize>> {
    d.check(g)?;
    check_base(g, q)?;
    check_nonnegative_away(g, d, q)?;
    let mut burner = Burner::new(g.vertex_count());
    burner.burn(g, d.coefficients(), q);
    Ok((0..g.vertex_count()).filter(|&v| !burner.burnt[v]).collect())
}

pub fn is_reduced(g: &MultiGraph, d: &Divisor, q: usize) -> Result<bool> {
    d.check(g)?;
    check_base(g, q)?;
    if d.support().any(|(v, c)| v != q && c < 0) {
        return Ok(false);
    }
    let mut burner = Burner::new(g.vertex_count());
    Ok(burner.burn(g, d.coefficients(), q) == 0)
}

/// The unique `q`-reduced divisor linearly equivalent to `d`.
pub fn reduce(g: &MultiGraph, d: &Divisor, q: usize) -> Result<Divisor> {
    d.check(g)?;
    check_base(g, q)?;
    let mut chips = d.coefficients().to_vec();
    make_nonnegative_away(g, &mut chips, q)?;
    fire_unburnt_until_reduced(g, &mut chips, q)?;
    Ok(Divisor::from_coefficients(chips))
}

/// Borrowing phase. Let `Y_l` be the vertices closer than `l` to `q`.
/// Firing `Y_l` moves chips from level `l - 1` to level `l` and touches
/// nothing else, so clearing levels from the outside in never undoes
/// earlier work.
fn make_nonnegative_away(g: &MultiGraph, chips: &mut [i64], q: usize) -> Result<()> {
    if chips.iter().enumerate().all(|(v, &c)| v == q || c >= 0) {
        return Ok(());
    }
    let dist = g.bfs_distances(q);
    let depth = dist.iter().copied().max().unwrap_or(0);
    let mut levels = vec![Vec::new(); depth + 1];
    for (v, &l) in dist.iter().enumerate() {
        levels[l].push(v);
    }
    for l in (1..=depth).rev() {
        let mut times = 0i64;
        for &v in &levels[l] {
            if chips[v] < 0 {
                let down = g
                    .incidences(v)
                    .iter()
                    .filter(|inc| dist[inc.neighbor] + 1 == l)
                    .count() as i64;
                times = times.max((-chips[v] + down - 1) / down);
            }
        }
        if times == 0 {
            continue;
        }
        for &v in &levels[l] {
            for inc in g.incidences(v) {
                if dist[inc.neighbor] + 1 == l {
                    chips[v] += times;
                    chips[inc.neighbor] -= times;
                }
            }
        }
        if let Some(&v) = levels[l].iter().find(|&&v| chips[v] < 0) {
            return Err(Error::NoProgress(format!(
                "borrowing left `{}` negative at distance {l}",
                g.vertex_name(v)
            )));
        }
    }
    Ok(())
}

/// Firing phase. The cumulative firing script of any legal sequence of
/// firings avoiding `q` is bounded by `|V|^2` times the chips away from
/// `q`, so exceeding that bound means the loop is broken.
fn fire_unburnt_until_reduced(g: &MultiGraph, chips: &mut [i64], q: usize) -> Result<()> {
    let n = g.vertex_count();
    let away: i64 = chips
        .iter()
        .enumerate()
        .filter(|&(v, _)| v != q)
        .map(|(_, &c)| c)
        .sum();
    let budget = (n as u128) * (n as u128) * (away.max(0) as u128) + 1;
    let mut script: u128 = 0;
    let mut burner = Burner::new(n);
    let mut boundary: Vec<(usize, usize, usize)> = Vec::new();
    loop {
        if burner.burn(g, chips, q) == 0 {
            return Ok(());
        }
        let unburnt = |v: usize, burner: &Burner| !burner.burnt[v];
        boundary.clear();
        let mut set_size = 0u128;
        for v in 0..n {
            if !unburnt(v, &burner) {
                continue;
            }
            set_size += 1;
            for inc in g.incidences(v) {
                if !unburnt(inc.neighbor, &burner) {
                    boundary.push((v, inc.edge, inc.neighbor));
                }
            }
        }
        let free = |x: usize, burner: &Burner, chips: &[i64]| {
            x != q && !unburnt(x, burner) && chips[x] == 0 && g.incidences(x).len() == 2
        };
        let step_along = |x: usize, via: usize| {
            let out = g
                .incidences(x)
                .iter()
                .find(|inc| inc.edge != via)
                .expect("degree-2 vertex has a second edge");
            (out.neighbor, out.edge)
        };

        // largest lockstep length every boundary run can absorb
        let mut steps = usize::MAX;
        for &(_, edge, w) in &boundary {
            if !free(w, &burner, chips) {
                steps = 1;
                break;
            }
            let (mut cur, mut via, mut run) = (w, edge, 0usize);
            while free(cur, &burner, chips) && run < 2 * steps.min(n) {
                run += 1;
                (cur, via) = step_along(cur, via);
            }
            // a run ending in the unburnt set is consumed from both ends
            let limit = if unburnt(cur, &burner) {
                run / 2
            } else {
                run
            };
            steps = steps.min(limit.max(1));
        }
        let steps = steps.max(1);

        for &(v, edge, w) in &boundary {
            let (mut cur, mut via) = (w, edge);
            for _ in 1..steps {
                (cur, via) = step_along(cur, via);
            }
            chips[v] -= 1;
            chips[cur] += 1;
        }
        if let Some(v) = (0..n).find(|&v| v != q && chips[v] < 0) {
            return Err(Error::NoProgress(format!(
                "firing the unburnt set drove `{}` negative",
                g.vertex_name(v)
            )));
        }
        let t = steps as u128;
        script += set_size * t + boundary.len() as u128 * t * (t - 1) / 2;
        if script > budget {
            return Err(Error::NoProgress(format!(
                "reduction exceeded its firing budget of {budget}"
            )));
        }
    }
}

/// Linear equivalence, decided by comparing reduced forms at the first
/// vertex.
pub fn is_equivalent(g: &MultiGraph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    is_equivalent_at(g, d1, d2, 0)
}

/// Same as [`is_equivalent`] with the reduced forms taken at `q`; the answer
/// does not depend on `q`.
pub fn is_equivalent_at(g: &MultiGraph, d1: &Divisor, d2: &Divisor, q: usize) -> Result<bool> {
    d1.check(g)?;
    d2.check(g)?;
    if d1.degree() != d2.degree() {
        return Ok(false);
    }
    Ok(reduce(g, d1, q)? == reduce(g, d2, q)?)
}

/// An effective divisor equivalent to `d`, namely its reduced form at the
/// first vertex when that is effective.
pub fn effective_in_class(g: &MultiGraph, d: &Divisor) -> Result<Option<Divisor>> {
    effective_in_class_at(g, d, 0)
}

pub fn effective_in_class_at(g: &MultiGraph, d: &Divisor, q: usize) -> Result<Option<Divisor>> {
    d.check(g)?;
    if d.degree() < 0 {
        return Ok(None);
    }
    let r = reduce(g, d, q)?;
    Ok((r[q] >= 0).then_some(r))
}
