//! A second opinion on linear equivalence and rank that never touches the
//! burning algorithm: lattice membership in the image of the Laplacian,
//! decided by exact integer row reduction, and rank by exhaustive search.

use std::collections::HashSet;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

pub const MAX_VERTICES: usize = 8;
pub const MAX_DEGREE: i64 = 8;

/// The Laplacian of a multigraph and a Hermite basis of its row lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplacianLattice {
    laplacian: Vec<Vec<i64>>,
    /// Rows in echelon form with positive pivots; entries above each pivot
    /// reduced into `0..pivot`.
    basis: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl LaplacianLattice {
    pub fn new(g: &MultiGraph) -> Self {
        let n = g.vertex_count();
        let mut laplacian = vec![vec![0i64; n]; n];
        for e in g.edges() {
            let (a, b) = e.ends;
            if a == b {
                continue;
            }
            laplacian[a][a] += 1;
            laplacian[b][b] += 1;
            laplacian[a][b] -= 1;
            laplacian[b][a] -= 1;
        }
        let rows = laplacian
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let (basis, pivots) = hermite(rows, n);
        LaplacianLattice { laplacian, basis, pivots }
    }

    pub fn laplacian(&self) -> &[Vec<i64>] {
        &self.laplacian
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i128>] {
        &self.basis
    }

    /// A representative of `v` modulo the lattice that depends only on the
    /// coset.
    pub fn residue(&self, v: &[i64]) -> Vec<i128> {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let q = v[c].div_euclid(row[c]);
            if q != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x -= q * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.residue(v).iter().all(|&x| x == 0)
    }
}

/// Row-style Hermite normal form by repeated Euclidean row operations.
fn hermite(mut rows: Vec<Vec<i128>>, cols: usize) -> (Vec<Vec<i128>>, Vec<usize>) {
    let mut basis: Vec<Vec<i128>> = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..cols {
        // gcd-combine every remaining row's entry in column c into one row
        let mut pivot: Option<Vec<i128>> = None;
        let mut rest = Vec::new();
        for mut r in rows.drain(..) {
            if r[c] == 0 {
                rest.push(r);
                continue;
            }
            let Some(mut p) = pivot.take() else {
                pivot = Some(r);
                continue;
            };
            while r[c] != 0 {
                let q = p[c] / r[c];
                for (x, &y) in p.iter_mut().zip(&r) {
                    *x -= q * y;
                }
                std::mem::swap(&mut p, &mut r);
            }
            pivot = Some(p);
            if r.iter().any(|&x| x != 0) {
                rest.push(r);
            }
        }
        rows = rest;
        let Some(mut p) = pivot else { continue };
        if p[c] < 0 {
            p.iter_mut().for_each(|x| *x = -*x);
        }
        for b in basis.iter_mut() {
            let q = b[c].div_euclid(p[c]);
            if q != 0 {
                for (x, &y) in b.iter_mut().zip(&p) {
                    *x -= q * y;
                }
            }
        }
        basis.push(p);
        pivots.push(c);
    }
    (basis, pivots)
}

/// `d1 - d2` lies in the integer image of the Laplacian.
pub fn equivalent_via_lattice(g: &MultiGraph, d1: &Divisor, d2: &Divisor) -> bool {
    if d1.len() != g.vertex_count() || d2.len() != g.vertex_count() {
        return false;
    }
    if d1.degree() != d2.degree() {
        return false;
    }
    LaplacianLattice::new(g).contains((d1 - d2).coefficients())
}

fn effective_residues(lattice: &LaplacianLattice, n: usize, degree: usize) -> HashSet<Vec<i128>> {
    let mut out = HashSet::new();
    let mut coeffs = vec![0i64; n];
    fill(lattice, &mut coeffs, 0, degree, &mut out);
    out
}

fn fill(
    lattice: &LaplacianLattice,
    coeffs: &mut [i64],
    from: usize,
    left: usize,
    out: &mut HashSet<Vec<i128>>,
) {
    if left == 0 {
        out.insert(lattice.residue(coeffs));
        return;
    }
    for v in from..coeffs.len() {
        coeffs[v] += 1;
        fill(lattice, coeffs, v, left - 1, out);
        coeffs[v] -= 1;
    }
}

fn effective_divisors(n: usize, degree: usize) -> Vec<Vec<i64>> {
    fn go(coeffs: &mut Vec<i64>, from: usize, left: usize, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(coeffs.clone());
            return;
        }
        for v in from..coeffs.len() {
            coeffs[v] += 1;
            go(coeffs, v, left - 1, out);
            coeffs[v] -= 1;
        }
    }
    let mut out = Vec::new();
    go(&mut vec![0; n], 0, degree, &mut out);
    out
}

/// Baker–Norine rank straight from the definition, comparing classes by
/// lattice residues. Limited to at most eight vertices and degree eight.
pub fn rank_bruteforce(g: &MultiGraph, d: &Divisor) -> Result<i64> {
    let n = g.vertex_count();
    if n > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "oracle vertex",
            count: n as u128,
            cap: MAX_VERTICES as u128,
        });
    }
    if d.len() != n {
        return Err(Error::DivisorMismatch { expected: n, found: d.len() });
    }
    let deg = d.degree();
    if deg > MAX_DEGREE {
        return Err(Error::CapExceeded {
            what: "oracle degree",
            count: deg as u128,
            cap: MAX_DEGREE as u128,
        });
    }
    if deg < 0 {
        return Ok(-1);
    }
    let lattice = LaplacianLattice::new(g);
    let mut rank = -1;
    for r in 0..=deg {
        let targets = effective_residues(&lattice, n, (deg - r) as usize);
        let all = effective_divisors(n, r as usize).into_iter().all(|e| {
            let diff: Vec<i64> = d.coefficients().iter().zip(&e).map(|(a, b)| a - b).collect();
            targets.contains(&lattice.residue(&diff))
        });
        if !all {
            break;
        }
        rank = r;
    }
    Ok(rank)
}
