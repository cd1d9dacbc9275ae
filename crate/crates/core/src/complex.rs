//! Sageev duality and median geometry of the dual cube complex.
//!
//! Vertices are the ultrafilters of a pocset, stored in label order and
//! addressed by index. Two vertices span an edge when their choices differ on
//! exactly one hyperplane.

use crate::bits::BitSet;
use crate::pocset::{Halfspace, Hyperplane, Pocset, PocsetError, Ultrafilter};
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Pocset(#[from] PocsetError),
    #[error("graph is not connected (vertex {vertex} unreachable from 0)")]
    Disconnected { vertex: usize },
    #[error("graph is not median: triple ({}, {}, {}) has {medians} medians", .triple.0, .triple.1, .triple.2)]
    NotMedian { triple: (usize, usize, usize), medians: usize },
    #[error("bad graph: {0}")]
    BadGraph(String),
    #[error("vertex {vertex} out of range (complex has {n_vertices} vertices)")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },
}

#[derive(Clone, Debug)]
pub struct CubeComplex {
    pocset: Pocset,
    vertices: Vec<Ultrafilter>,
    index: HashMap<BitSet, Vertex>,
    /// `(u, v, hyperplane)` with `u < v`, sorted.
    edges: Vec<(Vertex, Vertex, Hyperplane)>,
    adj: Vec<Vec<(Vertex, Hyperplane)>>,
    /// `covers[h]`: halfspaces tightly nested directly inside `h`.
    covers: Vec<Vec<Halfspace>>,
}

/// Chain decomposition of an interval and its coordinates in `Z^D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalEmbedding {
    /// Separating halfspaces of `[u, v]`, each chain listed outermost first.
    pub chains: Vec<Vec<Halfspace>>,
    /// `I(u, v)` in vertex order, each with one coordinate per chain.
    pub coordinates: Vec<(Vertex, Vec<usize>)>,
    pub d_inf: usize,
}

impl CubeComplex {
    pub fn build(p: &Pocset) -> Result<CubeComplex, ComplexError> {
        Self::build_capped(p, crate::pocset::DEFAULT_ENUMERATION_CAP)
    }

    pub fn build_capped(p: &Pocset, cap: usize) -> Result<CubeComplex, ComplexError> {
        let vertices = p.ultrafilters_capped(cap)?;
        let index: HashMap<BitSet, Vertex> = vertices.iter().enumerate().map(|(i, u)| (u.bits().clone(), i)).collect();
        let mut edges = Vec::new();
        let mut adj = vec![Vec::new(); vertices.len()];
        for (a, u) in vertices.iter().enumerate() {
            let mut bits = u.bits().clone();
            for i in 0..p.n_pairs() {
                bits.toggle(i);
                if let Some(&b) = index.get(&bits) {
                    adj[a].push((b, i));
                    if a < b {
                        edges.push((a, b, i));
                    }
                }
                bits.toggle(i);
            }
        }
        edges.sort_unstable();
        let covers = (0..p.n_halfspaces()).map(|h| p.tight_covers_below(h)).collect();
        Ok(CubeComplex { pocset: p.clone(), vertices, index, edges, adj, covers })
    }

    pub fn pocset(&self) -> &Pocset {
        &self.pocset
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Ultrafilter] {
        &self.vertices
    }

    pub fn vertex(&self, v: Vertex) -> &Ultrafilter {
        &self.vertices[v]
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), ComplexError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(ComplexError::VertexOutOfRange { vertex: v, n_vertices: self.vertex_count() })
        }
    }

    pub fn find(&self, bits: &BitSet) -> Option<Vertex> {
        self.index.get(bits).copied()
    }

    pub fn find_label(&self, label: &str) -> Option<Vertex> {
        Ultrafilter::from_label(label).and_then(|u| self.find(u.bits()))
    }

    pub fn edges(&self) -> &[(Vertex, Vertex, Hyperplane)] {
        &self.edges
    }

    pub fn tight_covers(&self, h: Halfspace) -> &[Halfspace] {
        &self.covers[h]
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, Hyperplane)] {
        &self.adj[v]
    }

    /// Edge graph as `(u, v)` pairs with `u < v`.
    pub fn edge_graph(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(a, b, _)| (a, b)).collect()
    }

    /// Vertices lying in halfspace `h`.
    pub fn halfspace_vertices(&self, h: Halfspace) -> BitSet {
        BitSet::from_indices(self.vertex_count(), (0..self.vertex_count()).filter(|&v| self.vertices[v].contains(h)))
    }

    /// Separating halfspaces `[u, v]`: those containing `v` but not `u`, ascending.
    pub fn separating(&self, u: Vertex, v: Vertex) -> Vec<Halfspace> {
        let (a, b) = (&self.vertices[u], &self.vertices[v]);
        let diff = a.bits().or(b.bits()).minus(&a.bits().and(b.bits()));
        let mut out: Vec<Halfspace> = diff.iter().map(|i| b.choice(i)).collect();
        out.sort_unstable();
        out
    }

    /// `I(u, v)`: vertices agreeing with `u` and `v` wherever those agree.
    pub fn interval_vertices(&self, u: Vertex, v: Vertex) -> BitSet {
        let (a, b) = (self.vertices[u].bits(), self.vertices[v].bits());
        let agree_one = a.and(b);
        let agree_zero = BitSet::full(a.len()).minus(&a.or(b));
        BitSet::from_indices(
            self.vertex_count(),
            (0..self.vertex_count()).filter(|&w| {
                let bw = self.vertices[w].bits();
                agree_one.is_subset(bw) && !agree_zero.intersects(bw)
            }),
        )
    }

    pub fn interval(&self, u: Vertex, v: Vertex) -> (Vec<Halfspace>, BitSet) {
        (self.separating(u, v), self.interval_vertices(u, v))
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> usize {
        self.vertices[u].distance(&self.vertices[v])
    }

    /// Median by the set formula `(u∩v) ∪ (v∩w) ∪ (w∩u)`.
    pub fn median(&self, u: Vertex, v: Vertex, w: Vertex) -> Vertex {
        let (a, b, c) = (self.vertices[u].bits(), self.vertices[v].bits(), self.vertices[w].bits());
        let m = a.and(b).or(&b.and(c)).or(&c.and(a));
        self.find(&m).expect("majority vote of ultrafilters is an ultrafilter")
    }

    /// All vertices in `I(u,v) ∩ I(v,w) ∩ I(w,u)`; a singleton in a median graph.
    pub fn median_by_intervals(&self, u: Vertex, v: Vertex, w: Vertex) -> Vec<Vertex> {
        let mut s = self.interval_vertices(u, v);
        s.intersect_with(&self.interval_vertices(v, w));
        s.intersect_with(&self.interval_vertices(w, u));
        s.iter().collect()
    }

    /// All-pairs edge-graph distances by BFS.
    pub fn graph_distances(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let adj: Vec<Vec<usize>> = self.adj.iter().map(|row| row.iter().map(|&(b, _)| b).collect()).collect();
        (0..n).map(|s| bfs(&adj, &[s])).collect()
    }

    /// Chain partition of `[u, v]` and the induced isometric coordinates.
    ///
    /// A longest chain of `[u, v]` is always tightly nested, so it is kept
    /// as one chain whenever a minimum partition containing it exists;
    /// otherwise a plain minimum (Dilworth) partition is returned.
    pub fn interval_embedding(&self, u: Vertex, v: Vertex) -> IntervalEmbedding {
        let p = &self.pocset;
        let sep = self.separating(u, v);
        let width = min_chain_partition(p, &sep).len();
        let longest = longest_chain(p, &sep);
        let rest: Vec<Halfspace> = sep.iter().copied().filter(|h| !longest.contains(h)).collect();
        let mut chains = if sep.is_empty() { Vec::new() } else { vec![longest] };
        chains.extend(min_chain_partition(p, &rest));
        if chains.len() != width {
            chains = min_chain_partition(p, &sep);
        }
        chains.sort();
        let members = self.interval_vertices(u, v);
        let coordinates = members
            .iter()
            .map(|w| {
                let x = &self.vertices[w];
                (w, chains.iter().map(|ch| ch.iter().filter(|&&h| x.contains(h)).count()).collect())
            })
            .collect();
        let d_inf = chains.iter().map(Vec::len).max().unwrap_or(0);
        IntervalEmbedding { chains, coordinates, d_inf }
    }

    /// A pair `(u, v)` with `I(u, v)` the whole complex, if one exists.
    pub fn is_interval(&self) -> Option<(Vertex, Vertex)> {
        let full = BitSet::full(self.pocset.n_pairs());
        self.vertices.iter().enumerate().find_map(|(u, x)| self.find(&full.minus(x.bits())).map(|v| (u, v)))
    }

    /// Cubical subdivision, re-derived from its face graph.
    pub fn subdivision(&self) -> Result<CubeComplex, ComplexError> {
        let (n, edges) = self.face_graph();
        CubeComplex::build(&from_median_graph(n, &edges)?)
    }

    /// All cubes as `(corner with the cube's bits cleared, hyperplanes)`, by dimension.
    pub fn cubes(&self) -> Vec<(BitSet, Vec<Hyperplane>)> {
        let mut all: Vec<(BitSet, Vec<Hyperplane>)> = self.vertices.iter().map(|x| (x.bits().clone(), Vec::new())).collect();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (base, dirs) in &frontier {
                let start = dirs.last().map_or(0, |&d| d + 1);
                for j in start..self.pocset.n_pairs() {
                    if base.contains(j) {
                        continue;
                    }
                    let all_corners = (0u32..1 << dirs.len()).all(|mask| {
                        let mut c = base.clone();
                        c.insert(j);
                        for (t, &d) in dirs.iter().enumerate() {
                            if mask >> t & 1 == 1 {
                                c.insert(d);
                            }
                        }
                        self.index.contains_key(&c)
                    });
                    if all_corners {
                        let mut d = dirs.clone();
                        d.push(j);
                        next.push((base.clone(), d));
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    /// Barycenters of all cubes joined along codimension-one faces.
    pub fn face_graph(&self) -> (usize, Vec<(usize, usize)>) {
        let cubes = self.cubes();
        let id: HashMap<(BitSet, Vec<Hyperplane>), usize> =
            cubes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let mut edges = Vec::new();
        for (i, (base, dirs)) in cubes.iter().enumerate() {
            for (t, &d) in dirs.iter().enumerate() {
                let mut rest = dirs.clone();
                rest.remove(t);
                let mut far = base.clone();
                far.insert(d);
                for corner in [base.clone(), far] {
                    let j = id[&(corner, rest.clone())];
                    edges.push((j.min(i), j.max(i)));
                }
            }
        }
        edges.sort_unstable();
        (cubes.len(), edges)
    }
}

/// BFS distances from a set of sources; unreachable vertices get `usize::MAX`.
pub fn bfs(adj: &[Vec<usize>], sources: &[usize]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// A longest `⊊`-chain among `hs`, outermost first.
pub fn longest_chain(p: &Pocset, hs: &[Halfspace]) -> Vec<Halfspace> {
    // process from the largest sets downwards (more strict subsets first)
    let mut order = hs.to_vec();
    order.sort_by_key(|&h| (std::cmp::Reverse(p.below(h).count()), h));
    let mut best: HashMap<Halfspace, (usize, Option<Halfspace>)> = HashMap::new();
    for &h in &order {
        let pred = order
            .iter()
            .filter(|&&k| p.lt(h, k))
            .map(|&k| (best[&k].0, k))
            .max_by_key(|&(len, k)| (len, std::cmp::Reverse(k)));
        best.insert(h, (pred.map_or(1, |(len, _)| len + 1), pred.map(|(_, k)| k)));
    }
    let Some(&end) = order.iter().max_by_key(|&&h| (best[&h].0, std::cmp::Reverse(h))) else {
        return Vec::new();
    };
    let mut chain = vec![end];
    while let Some(k) = best[chain.last().expect("non-empty")].1 {
        chain.push(k);
    }
    chain.reverse();
    chain
}

/// Minimum partition of `hs` into `⊊`-chains (minimum path cover of the
/// transitively closed order via bipartite matching); chains outermost first.
pub fn min_chain_partition(p: &Pocset, hs: &[Halfspace]) -> Vec<Vec<Halfspace>> {
    let n = hs.len();
    // edge a -> b when hs[b] ⊊ hs[a]
    let succ: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&b| p.lt(hs[b], hs[a])).collect()).collect();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    for a in 0..n {
        let mut seen = vec![false; n];
        augment(a, &succ, &mut seen, &mut match_right);
    }
    let mut next = vec![None; n];
    let mut has_pred = vec![false; n];
    for (b, m) in match_right.iter().enumerate() {
        if let Some(a) = *m {
            next[a] = Some(b);
            has_pred[b] = true;
        }
    }
    let mut chains: Vec<Vec<Halfspace>> = (0..n)
        .filter(|&a| !has_pred[a])
        .map(|a| {
            let mut chain = vec![hs[a]];
            let mut cur = a;
            while let Some(b) = next[cur] {
                chain.push(hs[b]);
                cur = b;
            }
            chain
        })
        .collect();
    chains.sort();
    chains
}

fn augment(a: usize, succ: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &b in &succ[a] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        if match_right[b].is_none_or(|a2| augment(a2, succ, seen, match_right)) {
            match_right[b] = Some(a);
            return true;
        }
    }
    false
}

/// Pocset of a median graph, with the label of each graph vertex.
#[derive(Clone, Debug)]
pub struct MedianGraphPocset {
    pub pocset: Pocset,
    /// Ultrafilter of graph vertex `i`; vertex 0 lies in every odd halfspace.
    pub labels: Vec<Ultrafilter>,
}

/// Recovers the pocset of a median graph from the Θ-classes of its edges.
pub fn from_median_graph(n: usize, edges: &[(usize, usize)]) -> Result<Pocset, ComplexError> {
    Ok(from_median_graph_labeled(n, edges)?.pocset)
}

pub fn from_median_graph_labeled(n: usize, edges: &[(usize, usize)]) -> Result<MedianGraphPocset, ComplexError> {
    if n == 0 {
        return Err(ComplexError::BadGraph("graph has no vertices".into()));
    }
    let mut adj = vec![Vec::new(); n];
    let mut edge_list: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(ComplexError::BadGraph(format!("edge ({a}, {b}) references a vertex ≥ {n}")));
        }
        if a == b {
            return Err(ComplexError::BadGraph(format!("self-loop at {a}")));
        }
        let e = (a.min(b), a.max(b));
        if !edge_list.contains(&e) {
            edge_list.push(e);
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    edge_list.sort_unstable();
    let dist: Vec<Vec<usize>> = (0..n).map(|s| bfs(&adj, &[s])).collect();
    if let Some(v) = dist[0].iter().position(|&d| d == usize::MAX) {
        return Err(ComplexError::Disconnected { vertex: v });
    }
    check_median(&dist)?;

    // Θ-classes (Djoković–Winkler), closed transitively by union-find
    let m = edge_list.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in 0..m {
        let (u, v) = edge_list[e];
        for f in e + 1..m {
            let (x, y) = edge_list[f];
            if dist[u][x] + dist[v][y] != dist[u][y] + dist[v][x] {
                let (a, b) = (root(&mut parent, e), root(&mut parent, f));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for e in 0..m {
        let r = root(&mut parent, e);
        let c = *class_of_root.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(e);
    }

    let mut sides = Vec::with_capacity(classes.len());
    for class in &classes {
        let cut: Vec<(usize, usize)> = class.iter().map(|&e| edge_list[e]).collect();
        let pruned: Vec<Vec<usize>> = (0..n)
            .map(|a| adj[a].iter().copied().filter(|&b| !cut.contains(&(a.min(b), a.max(b)))).collect())
            .collect();
        let from0 = bfs(&pruned, &[0]);
        let side = BitSet::from_indices(n, (0..n).filter(|&v| from0[v] == usize::MAX));
        let other = bfs(&pruned, &[side.iter().next().ok_or_else(|| {
            ComplexError::BadGraph("Θ-class does not disconnect the graph".into())
        })?]);
        if (0..n).any(|v| from0[v] == usize::MAX && other[v] == usize::MAX) {
            return Err(ComplexError::BadGraph("Θ-class splits the graph into more than two parts".into()));
        }
        sides.push(side);
    }
    let pocset = Pocset::from_vertex_sets(n, &sides)?;
    let labels = (0..n)
        .map(|v| Ultrafilter::from_bits(BitSet::from_indices(sides.len(), (0..sides.len()).filter(|&j| sides[j].contains(v)))))
        .collect();
    Ok(MedianGraphPocset { pocset, labels })
}

/// Every triple must have exactly one vertex in all three metric intervals.
fn check_median(dist: &[Vec<usize>]) -> Result<(), ComplexError> {
    let n = dist.len();
    let intervals: Vec<Vec<BitSet>> = (0..n)
        .map(|a| (0..n).map(|b| BitSet::from_indices(n, (0..n).filter(|&x| dist[a][x] + dist[x][b] == dist[a][b]))).collect())
        .collect();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let mut s = intervals[a][b].and(&intervals[b][c]);
                s.intersect_with(&intervals[c][a]);
                let medians = s.count();
                if medians != 1 {
                    return Err(ComplexError::NotMedian { triple: (a, b, c), medians });
                }
            }
        }
    }
    Ok(())
}

/// An isomorphism `q ≅ p.relabel(perm, flip)`, if any (backtracking with
/// relation-kind consistency).
pub fn pocset_isomorphism(p: &Pocset, q: &Pocset) -> Option<(Vec<Hyperplane>, BitSet)> {
    let mut found = None;
    pocset_morphisms(p, q, 1, &mut |perm, flip| found = Some((perm.to_vec(), flip.clone())));
    found
}

/// Calls `emit` for up to `cap` isomorphisms `p → q`, each given as a pair
/// permutation and flip set (see [`Pocset::relabel`]).
pub fn pocset_morphisms(p: &Pocset, q: &Pocset, cap: usize, emit: &mut dyn FnMut(&[Hyperplane], &BitSet)) -> usize {
    let n = p.n_pairs();
    if n != q.n_pairs() || cap == 0 {
        return 0;
    }
    let sig = |x: &Pocset, h: Halfspace| (x.above(h).count(), x.below(h).count());
    let tdeg = |x: &Pocset, i: usize| (0..n).filter(|&j| x.transverse(i, j)).count();
    let mut perm = vec![usize::MAX; n];
    let mut flip = BitSet::new(n);
    let mut used = vec![false; n];
    let mut count = 0;
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        p: &Pocset,
        q: &Pocset,
        perm: &mut Vec<usize>,
        flip: &mut BitSet,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize, usize, bool) -> bool,
        count: &mut usize,
        cap: usize,
        emit: &mut dyn FnMut(&[Hyperplane], &BitSet),
    ) {
        if *count >= cap {
            return;
        }
        if i == perm.len() {
            *count += 1;
            emit(perm, flip);
            return;
        }
        for j in 0..perm.len() {
            if used[j] {
                continue;
            }
            for f in [false, true] {
                if !ok(i, j, f) {
                    continue;
                }
                let image = |h: Halfspace, perm: &[usize], flip: &BitSet| {
                    let a = h >> 1;
                    2 * perm[a] + ((h & 1) ^ usize::from(flip.contains(a)))
                };
                perm[i] = j;
                flip.set(i, f);
                let consistent = (0..i).all(|a| {
                    [2 * a, 2 * a + 1].iter().all(|&h| {
                        [2 * i, 2 * i + 1].iter().all(|&k| {
                            p.kind(h, k) == q.kind(image(h, perm, flip), image(k, perm, flip))
                        })
                    })
                });
                if consistent {
                    used[j] = true;
                    go(i + 1, p, q, perm, flip, used, ok, count, cap, emit);
                    used[j] = false;
                }
                flip.remove(i);
                perm[i] = usize::MAX;
            }
        }
    }
    let local = |i: usize, j: usize, f: bool| {
        let (hp, hq) = (2 * i, 2 * j + usize::from(f));
        sig(p, hp) == sig(q, hq) && sig(p, hp ^ 1) == sig(q, hq ^ 1) && tdeg(p, i) == tdeg(q, j)
    };
    go(0, p, q, &mut perm, &mut flip, &mut used, &local, &mut count, cap, emit);
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn cc(p: &Pocset) -> CubeComplex {
        CubeComplex::build(p).unwrap()
    }

    #[test]
    fn build_examples() {
        let c = cc(&generate::cube(3));
        assert_eq!((c.vertex_count(), c.edges().len()), (8, 12));
        let t = cc(&generate::tripod(1));
        assert_eq!((t.vertex_count(), t.edges().len()), (4, 3));
        let g = cc(&generate::grid(2, 2));
        assert_eq!((g.vertex_count(), g.edges().len()), (9, 12));
    }

    #[test]
    fn interval_examples() {
        let sq = cc(&generate::cube(2));
        let (u, v) = (sq.find_label("00").unwrap(), sq.find_label("11").unwrap());
        let (sep, iv) = sq.interval(u, v);
        assert_eq!(sep, vec![0, 2]);
        assert_eq!(iv.count(), 4);
        let (sep, iv) = sq.interval(u, u);
        assert!(sep.is_empty());
        assert_eq!(iv.iter().collect::<Vec<_>>(), vec![u]);
        let p3 = cc(&generate::path(3));
        let (v0, v3) = (p3.find_label("000").unwrap(), p3.find_label("111").unwrap());
        let (sep, iv) = p3.interval(v0, v3);
        assert_eq!(sep, vec![0, 2, 4]);
        assert_eq!(iv.count(), 4);
    }

    #[test]
    fn median_examples() {
        let sq = cc(&generate::cube(2));
        let l = |s| sq.find_label(s).unwrap();
        assert_eq!(sq.median(l("00"), l("01"), l("11")), l("01"));
        assert_eq!(sq.median(l("00"), l("00"), l("11")), l("00"));
        let t = cc(&generate::tripod(1));
        let center = t.find_label("111").unwrap();
        let leaves: Vec<_> = ["011", "101", "110"].iter().map(|s| t.find_label(s).unwrap()).collect();
        assert_eq!(t.median(leaves[0], leaves[1], leaves[2]), center);
        assert_eq!(t.median_by_intervals(leaves[0], leaves[1], leaves[2]), vec![center]);
    }

    #[test]
    fn embedding_examples() {
        let p3 = cc(&generate::path(3));
        let e = p3.interval_embedding(p3.find_label("000").unwrap(), p3.find_label("111").unwrap());
        assert_eq!(e.chains, vec![vec![0, 2, 4]]);
        assert_eq!(e.d_inf, 3);
        let g = cc(&generate::grid(2, 2));
        let e = g.interval_embedding(g.find_label("0000").unwrap(), g.find_label("1111").unwrap());
        assert_eq!(e.chains.len(), 2);
        assert!(e.chains.iter().all(|c| c.len() == 2));
        assert_eq!(e.d_inf, 2);
        let sq = cc(&generate::cube(2));
        let e = sq.interval_embedding(0, 3);
        assert_eq!((e.chains.len(), e.d_inf), (2, 1));
    }

    #[test]
    fn median_graph_examples() {
        let c4 = from_median_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.n_pairs(), 2);
        let p = from_median_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p, generate::path(3));
        let c6: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        assert!(matches!(from_median_graph(6, &c6), Err(ComplexError::NotMedian { .. })));
        assert!(matches!(from_median_graph(3, &[(0, 1)]), Err(ComplexError::Disconnected { vertex: 2 })));
    }

    #[test]
    fn subdivision_examples() {
        let s = cc(&generate::path(1)).subdivision().unwrap();
        assert!(pocset_isomorphism(s.pocset(), &generate::path(2)).is_some());
        let s = cc(&generate::cube(2)).subdivision().unwrap();
        assert_eq!((s.vertex_count(), s.pocset().n_pairs()), (9, 4));
        assert!(pocset_isomorphism(s.pocset(), &generate::grid(2, 2)).is_some());
        let s = cc(&generate::cube(3)).subdivision().unwrap();
        assert_eq!((s.vertex_count(), s.pocset().n_pairs()), (27, 6));
    }

    #[test]
    fn interval_test_examples() {
        let sq = cc(&generate::cube(2));
        assert_eq!(sq.is_interval(), Some((sq.find_label("00").unwrap(), sq.find_label("11").unwrap())));
        assert_eq!(cc(&generate::tripod(1)).is_interval(), None);
        assert!(cc(&generate::grid(2, 3)).is_interval().is_some());
    }

    #[test]
    fn isomorphism_detects_relabeling() {
        let p = generate::tripod(2);
        let q = p.relabel(&[3, 0, 5, 1, 4, 2], &BitSet::from_indices(6, [1, 4]));
        assert!(pocset_isomorphism(&p, &q).is_some());
        assert!(pocset_isomorphism(&generate::path(3), &generate::tripod(1)).is_none());
        let mut autos = 0;
        pocset_morphisms(&generate::cube(2), &generate::cube(2), 100, &mut |_, _| autos += 1);
        assert_eq!(autos, 8);
    }
}
