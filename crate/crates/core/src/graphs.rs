//! The bipartite graphs `D(k,q)` and `Gamma(q)`, the isomorphism between
//! `D(5,q)` and `Gamma(q)`, the point-collinearity graph, and its description
//! as a Cayley graph of a non-abelian group on `F_q^5`.
//!
//! Vertex codes are base-`q` positional encodings of coordinate tuples with the
//! first coordinate as the least significant digit. In a bipartite graph the
//! points occupy codes `[0, q^k)` and the lines `[q^k, 2 q^k)`.

use std::collections::VecDeque;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Fel, FieldSpec};

/// Read access shared by the bipartite and simple graph types.
pub trait Graph: Sync {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[u32];
    /// Undirected edges `(u, v)` with `u < v`, sorted.
    fn edges(&self) -> &[(u32, u32)];

    /// Common degree if the graph is regular.
    fn regular_degree(&self) -> Option<usize> {
        let n = self.vertex_count();
        if n == 0 {
            return None;
        }
        let d = self.neighbors(0).len();
        (1..n).all(|v| self.neighbors(v).len() == d).then_some(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Adjacency {
    fn from_edges(n: usize, edges: &[(u32, u32)]) -> Adjacency {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Adjacency { offsets, targets }
    }

    fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// Which part of a bipartite graph a vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Point,
    Line,
}

/// Base-`q` codec between coordinate tuples and integer codes.
#[derive(Clone, Copy, Debug)]
pub struct VertexCodec {
    q: u32,
    k: usize,
}

impl VertexCodec {
    pub fn new(q: u32, k: usize) -> VertexCodec {
        VertexCodec { q, k }
    }

    pub fn size(&self) -> usize {
        (self.q as usize).pow(self.k as u32)
    }

    pub fn encode(&self, coords: &[Fel]) -> u32 {
        debug_assert_eq!(coords.len(), self.k);
        coords.iter().rev().fold(0, |acc, c| acc * self.q + c.code())
    }

    pub fn decode(&self, mut code: u32) -> Vec<Fel> {
        let mut out = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            out.push(Fel::from_code(code % self.q));
            code /= self.q;
        }
        out
    }
}

/// A bipartite graph on two copies of `F_q^k`.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    name: &'static str,
    k: usize,
    q: u32,
    part_size: usize,
    edges: Vec<(u32, u32)>,
    adj: Adjacency,
}

impl BipartiteGraph {
    /// Builds the graph from a rule that, given a point and `l_1`, returns the
    /// unique adjacent line.
    fn from_line_rule(
        name: &'static str,
        k: usize,
        field: &FieldSpec,
        rule: impl Fn(&[Fel], Fel) -> Vec<Fel> + Sync,
    ) -> BipartiteGraph {
        let q = field.q();
        let codec = VertexCodec::new(q, k);
        let part_size = codec.size();
        let mut edges: Vec<(u32, u32)> = (0..part_size as u32)
            .into_par_iter()
            .flat_map_iter(|pc| {
                let point = codec.decode(pc);
                let rule = &rule;
                field.elements().map(move |l1| {
                    let line = rule(&point, l1);
                    (pc, part_size as u32 + codec.encode(&line))
                })
            })
            .collect();
        edges.par_sort_unstable();
        let adj = Adjacency::from_edges(2 * part_size, &edges);
        BipartiteGraph {
            name,
            k,
            q,
            part_size,
            edges,
            adj,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Vertices per part, `q^k`.
    pub fn part_size(&self) -> usize {
        self.part_size
    }

    pub fn codec(&self) -> VertexCodec {
        VertexCodec::new(self.q, self.k)
    }

    /// Global vertex id of a point or line code.
    pub fn vertex(&self, side: Side, code: u32) -> u32 {
        match side {
            Side::Point => code,
            Side::Line => self.part_size as u32 + code,
        }
    }

    /// `(point code, line code)` pairs of the biadjacency relation.
    pub fn biadjacency(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges
            .iter()
            .map(move |&(u, v)| (u, v - self.part_size as u32))
    }

    /// Writes the edge list as CSV rows `u,v` of global vertex ids.
    pub fn write_edge_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "# {} k={} q={}", self.name, self.k, self.q)?;
        for &(u, v) in &self.edges {
            writeln!(out, "{u},{v}")?;
        }
        Ok(())
    }
}

impl Graph for BipartiteGraph {
    fn vertex_count(&self) -> usize {
        2 * self.part_size
    }

    fn neighbors(&self, v: usize) -> &[u32] {
        self.adj.neighbors(v)
    }

    fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

/// An undirected loop-free graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Adjacency,
}

impl SimpleGraph {
    /// Builds from an edge list; duplicates are merged, loops rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<SimpleGraph> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidParameter(format!("edge ({u},{v}) out of range")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let adj = Adjacency::from_edges(n, &list);
        Ok(SimpleGraph { n, edges: list, adj })
    }

    /// Builds from per-vertex neighbor lists, which must describe a symmetric,
    /// loop-free relation.
    pub fn from_neighbor_lists(lists: &[Vec<u32>]) -> Result<SimpleGraph> {
        let n = lists.len();
        let mut forward = Vec::new();
        let mut backward = Vec::new();
        for (u, list) in lists.iter().enumerate() {
            let u = u as u32;
            for &v in list {
                if v == u {
                    return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
                }
                if u < v {
                    forward.push((u, v));
                } else {
                    backward.push((v, u));
                }
            }
        }
        forward.sort_unstable();
        forward.dedup();
        backward.sort_unstable();
        backward.dedup();
        if forward != backward {
            return Err(Error::InvalidParameter("adjacency is not symmetric".into()));
        }
        let adj = Adjacency::from_edges(n, &forward);
        Ok(SimpleGraph {
            n,
            edges: forward,
            adj,
        })
    }
}

impl Graph for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn neighbors(&self, v: usize) -> &[u32] {
        self.adj.neighbors(v)
    }

    fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

/// `D(k,q)` for `k` in `2..=5`: the first `k - 1` of
/// `p2 + l2 = p1 l1`, `p3 + l3 = p1 l2`, `p4 + l4 = p2 l1`, `p5 + l5 = p3 l1`.
pub fn d_graph(k: usize, field: &FieldSpec) -> Result<BipartiteGraph> {
    if !(2..=5).contains(&k) {
        return Err(Error::UnsupportedRank(k));
    }
    let f = field;
    Ok(BipartiteGraph::from_line_rule("d-graph", k, field, |p, l1| {
        let mut line = vec![l1];
        let l2 = f.sub(f.mul(p[0], l1), p[1]);
        line.push(l2);
        if k >= 3 {
            line.push(f.sub(f.mul(p[0], l2), p[2]));
        }
        if k >= 4 {
            line.push(f.sub(f.mul(p[1], l1), p[3]));
        }
        if k >= 5 {
            line.push(f.sub(f.mul(p[2], l1), p[4]));
        }
        line
    }))
}

/// `Gamma(q)`: `p2 + l2 = p1 l1`, `p3 + l3 = p1 l1^2`, `p4 + l4 = p1^2 l1`,
/// `p5 + l5 = p1^2 l1^2`.
pub fn gamma_graph(field: &FieldSpec) -> BipartiteGraph {
    let f = field;
    BipartiteGraph::from_line_rule("gamma-graph", 5, field, |p, l1| {
        let p1sq = f.square(p[0]);
        let l1sq = f.square(l1);
        vec![
            l1,
            f.sub(f.mul(p[0], l1), p[1]),
            f.sub(f.mul(p[0], l1sq), p[2]),
            f.sub(f.mul(p1sq, l1), p[3]),
            f.sub(f.mul(p1sq, l1sq), p[4]),
        ]
    })
}

/// The isomorphism `D(5,q) -> Gamma(q)` on coordinates.
pub fn iso_pi(field: &FieldSpec, side: Side, v: &[Fel; 5]) -> [Fel; 5] {
    let f = field;
    let two = f.from_int(2);
    match side {
        Side::Point => [
            v[0],
            v[1],
            v[3],
            f.add(v[2], f.mul(v[0], v[1])),
            f.add(f.mul(two, v[4]), f.square(v[1])),
        ],
        Side::Line => [
            v[0],
            v[1],
            f.add(v[3], f.mul(v[0], v[1])),
            v[2],
            f.sub(
                f.add(f.mul(two, v[4]), f.mul(two, f.mul(v[0], v[2]))),
                f.square(v[1]),
            ),
        ],
    }
}

/// `iso_pi` on vertex codes.
pub fn iso_pi_code(field: &FieldSpec, side: Side, code: u32) -> u32 {
    let codec = VertexCodec::new(field.q(), 5);
    let c = codec.decode(code);
    let v = [c[0], c[1], c[2], c[3], c[4]];
    codec.encode(&iso_pi(field, side, &v))
}

/// Distance-two graph of `g` restricted to one part.
pub fn halved_graph(g: &BipartiteGraph, side: Side) -> Result<SimpleGraph> {
    let n = g.part_size();
    let base = match side {
        Side::Point => 0,
        Side::Line => n,
    };
    let lists: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let v = base + i;
            let mut out: Vec<u32> = g
                .neighbors(v)
                .iter()
                .flat_map(|&w| g.neighbors(w as usize).iter())
                .filter(|&&u| u as usize != v)
                .map(|&u| u - base as u32)
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    SimpleGraph::from_neighbor_lists(&lists)
}

/// The point graph of `Gamma(q)`, built from the collinearity equations: `(p) ~ (r)`
/// iff some `l1` gives `p2 - r2 = (p1 - r1) l1`, `p3 - r3 = (p1 - r1) l1^2`,
/// `p4 - r4 = (p1^2 - r1^2) l1`, `p5 - r5 = (p1^2 - r1^2) l1^2`.
pub fn point_graph_direct(field: &FieldSpec) -> Result<SimpleGraph> {
    let f = field;
    let codec = VertexCodec::new(f.q(), 5);
    let lists: Vec<Vec<u32>> = (0..codec.size() as u32)
        .into_par_iter()
        .map(|code| {
            let p = codec.decode(code);
            let mut out = Vec::with_capacity((f.q() * (f.q() - 1)) as usize);
            for r1 in f.elements().filter(|&r1| r1 != p[0]) {
                let d1 = f.sub(p[0], r1);
                let d1sq = f.sub(f.square(p[0]), f.square(r1));
                for l1 in f.elements() {
                    let l1sq = f.square(l1);
                    let r = [
                        r1,
                        f.sub(p[1], f.mul(d1, l1)),
                        f.sub(p[2], f.mul(d1, l1sq)),
                        f.sub(p[3], f.mul(d1sq, l1)),
                        f.sub(p[4], f.mul(d1sq, l1sq)),
                    ];
                    out.push(codec.encode(&r));
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    SimpleGraph::from_neighbor_lists(&lists)
}

/// Element of the group `G = (F_q^5, .)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElt(pub [Fel; 5]);

impl GroupElt {
    pub const IDENTITY: GroupElt = GroupElt([Fel::ZERO; 5]);

    pub fn code(&self, q: u32) -> u32 {
        VertexCodec::new(q, 5).encode(&self.0)
    }

    pub fn from_code(code: u32, q: u32) -> GroupElt {
        let c = VertexCodec::new(q, 5).decode(code);
        GroupElt([c[0], c[1], c[2], c[3], c[4]])
    }
}

/// `X.Y = (x1+y1, x2+y2, x3+y3, x4+y4+2 x1 y2, x5+y5+2 x1 y3)`.
pub fn group_mul(field: &FieldSpec, x: &GroupElt, y: &GroupElt) -> GroupElt {
    let f = field;
    let (x, y) = (&x.0, &y.0);
    let two_x1 = f.mul(f.from_int(2), x[0]);
    GroupElt([
        f.add(x[0], y[0]),
        f.add(x[1], y[1]),
        f.add(x[2], y[2]),
        f.add(f.add(x[3], y[3]), f.mul(two_x1, y[1])),
        f.add(f.add(x[4], y[4]), f.mul(two_x1, y[2])),
    ])
}

/// `X^{-1} = (-x1, -x2, -x3, -x4 + 2 x1 x2, -x5 + 2 x1 x3)`.
pub fn group_inv(field: &FieldSpec, x: &GroupElt) -> GroupElt {
    let f = field;
    let x = &x.0;
    let two_x1 = f.mul(f.from_int(2), x[0]);
    GroupElt([
        f.neg(x[0]),
        f.neg(x[1]),
        f.neg(x[2]),
        f.add(f.neg(x[3]), f.mul(two_x1, x[1])),
        f.add(f.neg(x[4]), f.mul(two_x1, x[2])),
    ])
}

/// The generating set element `(x, xa, xa^2, x^2 a, x^2 a^2)`.
pub fn gen_element(field: &FieldSpec, x: Fel, a: Fel) -> GroupElt {
    let f = field;
    let xa = f.mul(x, a);
    let xa2 = f.mul(xa, a);
    let x2 = f.square(x);
    GroupElt([x, xa, xa2, f.mul(x2, a), f.mul(x2, f.square(a))])
}

/// `S = {(x, xa, xa^2, x^2 a, x^2 a^2) : x != 0}`, ordered by `(x, a)`.
pub fn gen_set(field: &FieldSpec) -> Vec<GroupElt> {
    field
        .nonzero()
        .flat_map(|x| field.elements().map(move |a| gen_element(field, x, a)))
        .collect()
}

/// `Cay(G, S)` with `r ~ r.s`.
pub fn cayley_graph(field: &FieldSpec) -> Result<SimpleGraph> {
    let q = field.q();
    let s = gen_set(field);
    let n = (q as usize).pow(5);
    let lists: Vec<Vec<u32>> = (0..n as u32)
        .into_par_iter()
        .map(|code| {
            let r = GroupElt::from_code(code, q);
            let mut out: Vec<u32> = s
                .iter()
                .map(|g| group_mul(field, &r, g).code(q))
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    SimpleGraph::from_neighbor_lists(&lists)
}

/// Length of a shortest cycle, or `None` for a forest.
pub fn girth<G: Graph>(g: &G) -> Option<usize> {
    let n = g.vertex_count();
    (0..n)
        .into_par_iter()
        .map_init(
            || (vec![usize::MAX; n], vec![u32::MAX; n], VecDeque::new(), Vec::new()),
            |(dist, parent, queue, touched), root| {
                let best = shortest_cycle_through_bfs(g, root, dist, parent, queue, touched);
                for &v in touched.iter() {
                    dist[v] = usize::MAX;
                    parent[v] = u32::MAX;
                }
                touched.clear();
                best
            },
        )
        .min()
        .flatten()
}

// Shortest cycle closed by a non-tree edge during BFS from `root`. The minimum
// over all roots is the girth.
fn shortest_cycle_through_bfs<G: Graph>(
    g: &G,
    root: usize,
    dist: &mut [usize],
    parent: &mut [u32],
    queue: &mut VecDeque<usize>,
    touched: &mut Vec<usize>,
) -> Option<usize> {
    let mut best: Option<usize> = None;
    queue.clear();
    dist[root] = 0;
    touched.push(root);
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        if let Some(b) = best {
            if 2 * dist[u] + 1 >= b {
                break;
            }
        }
        for &w in g.neighbors(u) {
            let w = w as usize;
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u as u32;
                touched.push(w);
                queue.push_back(w);
            } else if parent[u] as usize != w {
                let len = dist[u] + dist[w] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}

/// Connected components as sorted vertex lists, ordered by smallest vertex.
pub fn components<G: Graph>(g: &G) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start as u32];
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w);
                    queue.push_back(w as usize);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}
