//! Named graphs: the Fano plane and its Levi graph (the Heawood graph), the
//! loops-on-a-tree family, cycles, `K4` and midpoint subdivisions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{genus, Edge, MultiGraph};

/// Points and lines with an incidence relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    pub points: Vec<String>,
    pub lines: Vec<(String, BTreeSet<String>)>,
}

impl IncidenceStructure {
    /// Lines through both `a` and `b`.
    pub fn common_lines(&self, a: &str, b: &str) -> Vec<&str> {
        self.lines
            .iter()
            .filter(|(_, pts)| pts.contains(a) && pts.contains(b))
            .map(|(id, _)| id.as_str())
            .collect()
    }

    pub fn lines_through(&self, p: &str) -> usize {
        self.lines.iter().filter(|(_, pts)| pts.contains(p)).count()
    }

    /// Checks the axioms of a projective plane of order `q`: `q + 1` points
    /// per line and lines per point, two points on exactly one line, two
    /// lines through exactly one point.
    pub fn check_projective_plane(&self, q: usize) -> Result<()> {
        let size = q * q + q + 1;
        let fail = |msg: String| Err(Error::InvalidArgument(msg));
        if self.points.len() != size || self.lines.len() != size {
            return fail(format!("expected {size} points and lines"));
        }
        for (id, pts) in &self.lines {
            if pts.len() != q + 1 || !pts.iter().all(|p| self.points.contains(p)) {
                return fail(format!("line {id} is malformed"));
            }
        }
        for p in &self.points {
            if self.lines_through(p) != q + 1 {
                return fail(format!("point {p} is on the wrong number of lines"));
            }
        }
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                if self.common_lines(a, b).len() != 1 {
                    return fail(format!("points {a} and {b} do not span one line"));
                }
            }
        }
        for (i, (la, pa)) in self.lines.iter().enumerate() {
            for (lb, pb) in &self.lines[i + 1..] {
                if pa.intersection(pb).count() != 1 {
                    return fail(format!("lines {la} and {lb} do not meet once"));
                }
            }
        }
        Ok(())
    }
}

const FANO_LINES: [[u8; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 6, 7],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 5, 6],
];

/// The seven-point plane, validated against the projective plane axioms.
pub fn fano_plane() -> IncidenceStructure {
    let inc = IncidenceStructure {
        points: (1..=7).map(|p| p.to_string()).collect(),
        lines: FANO_LINES
            .iter()
            .enumerate()
            .map(|(i, pts)| ((i + 1).to_string(), pts.iter().map(|p| p.to_string()).collect()))
            .collect(),
    };
    inc.check_projective_plane(2)
        .expect("the Fano table satisfies the axioms");
    inc
}

/// Bipartite point/line incidence graph. Points become `p<id>`, lines
/// `l<id>`, and each incidence an edge `p<id>-l<id>`.
pub fn levi_graph(inc: &IncidenceStructure) -> Result<MultiGraph> {
    let vertices: Vec<String> = inc
        .points
        .iter()
        .map(|p| format!("p{p}"))
        .chain(inc.lines.iter().map(|(l, _)| format!("l{l}")))
        .collect();
    let mut edges = Vec::new();
    for p in &inc.points {
        for (l, pts) in &inc.lines {
            if pts.contains(p) {
                edges.push((format!("p{p}-l{l}"), format!("p{p}"), format!("l{l}")));
            }
        }
    }
    MultiGraph::new(vertices, edges)
}

/// The Levi graph of the Fano plane: vertices `p1..p7` then `l1..l7`.
pub fn heawood() -> MultiGraph {
    levi_graph(&fano_plane()).expect("the Heawood graph is connected")
}

/// Attaches one loop `loop-<v>` to each listed leaf of a tree.
pub fn loops_on_tree(tree: &MultiGraph, leaves: &[usize]) -> Result<MultiGraph> {
    if genus(tree) != 0 || tree.has_loops() {
        return Err(Error::NotTree);
    }
    let mut given: Vec<usize> = leaves.to_vec();
    given.sort_unstable();
    given.dedup();
    let actual: Vec<usize> = (0..tree.vertex_count())
        .filter(|&v| tree.degree(v) == 1)
        .collect();
    if given != actual {
        return Err(Error::InvalidArgument(
            "leaves must be exactly the degree-1 vertices".into(),
        ));
    }
    let mut edges = tree.edges().to_vec();
    for &v in &given {
        edges.push(Edge {
            id: format!("loop-{}", tree.vertex_name(v)),
            ends: (v, v),
        });
    }
    MultiGraph::from_indexed(tree.vertex_names().to_vec(), edges)
}

/// A star with three leaves and a loop at every leaf: trivalent, genus 3.
pub fn figure1() -> MultiGraph {
    let star = MultiGraph::from_str_edges(
        &["c", "x1", "x2", "x3"],
        &[("c-x1", "c", "x1"), ("c-x2", "c", "x2"), ("c-x3", "c", "x3")],
    )
    .expect("star is connected");
    loops_on_tree(&star, &[1, 2, 3]).expect("star is a tree")
}

/// Inserts a vertex `m:<edge>` in the middle of every edge. Returns the new
/// graph and the original vertices, which keep their positions.
pub fn midpoint_subdivision(g: &MultiGraph) -> (MultiGraph, Vec<usize>) {
    let mut names = g.vertex_names().to_vec();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for e in g.edges() {
        let mid = names.len();
        names.push(format!("m:{}", e.id));
        edges.push(Edge { id: format!("{}/a", e.id), ends: (e.ends.0, mid) });
        edges.push(Edge { id: format!("{}/b", e.id), ends: (mid, e.ends.1) });
    }
    let originals = (0..g.vertex_count()).collect();
    let sub = MultiGraph::from_indexed(names, edges).expect("subdivision keeps connectivity");
    (sub, originals)
}

/// The `n`-cycle on `v0..v{n-1}`; `n = 1` is a loop, `n = 2` a digon.
pub fn cycle_graph(n: usize) -> Result<MultiGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("a cycle needs at least one vertex".into()));
    }
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = (0..n).map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", (i + 1) % n)));
    MultiGraph::new(vertices, edges)
}

pub fn k4() -> MultiGraph {
    let names = ["a", "b", "c", "d"];
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            edges.push((format!("{}{}", names[i], names[j]), names[i].to_string(), names[j].to_string()));
        }
    }
    MultiGraph::new(names, edges).expect("K4 is connected")
}

/// Names accepted by [`by_name`].
pub const CATALOG_NAMES: &[&str] = &["heawood", "fano-levi", "figure1", "cycle:<n>", "k4", "k4-subdivided"];

pub fn by_name(name: &str) -> Result<MultiGraph> {
    match name {
        "heawood" | "fano-levi" => Ok(heawood()),
        "figure1" => Ok(figure1()),
        "k4" => Ok(k4()),
        "k4-subdivided" => Ok(midpoint_subdivision(&k4()).0),
        _ => match name.strip_prefix("cycle:").map(str::parse::<usize>) {
            Some(Ok(n)) => cycle_graph(n),
            _ => Err(Error::InvalidArgument(format!(
                "unknown catalog graph `{name}` (known: {})",
                CATALOG_NAMES.join(", ")
            ))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bipartition, edge_connectivity, girth, Girth};

    #[test]
    fn fano_common_line() {
        let f = fano_plane();
        assert_eq!(f.common_lines("1", "2"), ["1"]);
        assert_eq!(f.lines[0].1, BTreeSet::from(["1".into(), "2".into(), "3".into()]));
    }

    #[test]
    fn fano_counts() {
        let f = fano_plane();
        assert!(f.points.iter().all(|p| f.lines_through(p) == 3));
        let mut pairs = 0;
        for (i, (_, a)) in f.lines.iter().enumerate() {
            for (_, b) in &f.lines[i + 1..] {
                assert_eq!(a.intersection(b).count(), 1);
                pairs += 1;
            }
        }
        assert_eq!(pairs, 21);
    }

    #[test]
    fn broken_plane_is_rejected() {
        let mut f = fano_plane();
        f.lines[6].1 = BTreeSet::from(["1".into(), "2".into(), "4".into()]);
        assert!(f.check_projective_plane(2).is_err());
    }

    #[test]
    fn heawood_structure() {
        let h = heawood();
        assert_eq!((h.vertex_count(), h.edge_count()), (14, 21));
        assert!(h.is_trivalent());
        assert_eq!(girth(&h), Girth::Finite(6));
        assert_eq!(genus(&h), 8);
        assert_eq!(edge_connectivity(&h).unwrap(), 3);
        let b = bipartition(&h).unwrap();
        let names = |vs: &[usize]| vs.iter().map(|&v| h.vertex_name(v).to_string()).collect::<Vec<_>>();
        assert_eq!(names(&b.black), ["p1", "p2", "p3", "p4", "p5", "p6", "p7"]);
        assert_eq!(names(&b.white), ["l1", "l2", "l3", "l4", "l5", "l6", "l7"]);
        assert_eq!(by_name("fano-levi").unwrap(), h);
    }

    #[test]
    fn single_incidence_levi_graph() {
        let inc = IncidenceStructure {
            points: vec!["1".into()],
            lines: vec![("1".into(), BTreeSet::from(["1".into()]))],
        };
        let g = levi_graph(&inc).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
    }

    #[test]
    fn loops_on_tree_examples() {
        let f = figure1();
        assert_eq!((f.vertex_count(), f.edge_count()), (4, 6));
        assert_eq!(genus(&f), 3);
        assert!(f.is_trivalent());

        let path = MultiGraph::from_str_edges(&["a", "b"], &[("e", "a", "b")]).unwrap();
        let dumbbell = loops_on_tree(&path, &[0, 1]).unwrap();
        assert_eq!((dumbbell.vertex_count(), dumbbell.edge_count()), (2, 3));
        assert_eq!(genus(&dumbbell), 2);
        assert_eq!(girth(&dumbbell), Girth::Finite(1));

        let single = MultiGraph::from_str_edges(&["v"], &[]).unwrap();
        assert_eq!(loops_on_tree(&single, &[]).unwrap(), single);

        assert!(matches!(loops_on_tree(&k4(), &[]), Err(Error::NotTree)));
        assert!(loops_on_tree(&path, &[0]).is_err());
    }

    #[test]
    fn midpoint_subdivision_examples() {
        let (g, originals) = midpoint_subdivision(&k4());
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 12));
        assert_eq!(genus(&g), 3);
        assert_eq!(originals, [0, 1, 2, 3]);
        let b = bipartition(&g).unwrap();
        assert_eq!(b.black, originals);

        let edge = MultiGraph::from_str_edges(&["a", "b"], &[("e", "a", "b")]).unwrap();
        let (p, _) = midpoint_subdivision(&edge);
        assert_eq!((p.vertex_count(), p.edge_count()), (3, 2));
        assert_eq!(genus(&p), 0);
    }

    #[test]
    fn cycle_graph_examples() {
        let c6 = cycle_graph(6).unwrap();
        assert!(bipartition(&c6).is_some());
        assert_eq!(girth(&c6), Girth::Finite(6));
        assert_eq!(genus(&c6), 1);
        assert_eq!(girth(&cycle_graph(1).unwrap()), Girth::Finite(1));
        assert_eq!(girth(&cycle_graph(2).unwrap()), Girth::Finite(2));
        assert!(cycle_graph(0).is_err());
        assert_eq!(by_name("cycle:5").unwrap(), cycle_graph(5).unwrap());
        assert!(by_name("cycle:x").is_err());
        assert!(by_name("petersen").is_err());
    }
}
