//! Standard pocset families and random generators.
//!
//! Orientation conventions (they fix vertex labels and ordering):
//! - `path(L)`: hyperplane `i` has even halfspace `h_{i+1}` with
//!   `h_1 ⊃ h_2 ⊃ … ⊃ h_L`; vertex `v_j` lies in `h_1, …, h_j`.
//! - `tripod(l)`: hyperplane `leg * l + depth`; the even halfspace is the side
//!   containing the center, the odd one points away from it.
//! - `median_closure`: the even halfspace of a coordinate is where it equals 1,
//!   so vertex labels reproduce the closure points.

use crate::bits::BitSet;
use crate::pocset::{Halfspace, Pocset};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// Largest cube dimension accepted by `median_closure`.
pub const MAX_CLOSURE_DIM: usize = 16;

pub fn cube(k: usize) -> Pocset {
    Pocset::free(k)
}

pub fn path(len: usize) -> Pocset {
    let rels: Vec<(Halfspace, Halfspace)> = (1..len).map(|i| (2 * i, 2 * (i - 1))).collect();
    Pocset::from_generators(len, &rels).expect("path relations are valid")
}

pub fn grid(a: usize, b: usize) -> Pocset {
    path(a).product(&path(b))
}

pub fn product(p: &Pocset, q: &Pocset) -> Pocset {
    p.product(q)
}

/// Away-from-center halfspace of the edge at `depth` on leg `leg` of `tripod(l)`.
pub fn tripod_away(l: usize, leg: usize, depth: usize) -> Halfspace {
    2 * (leg * l + depth) + 1
}

/// Three legs of `l` edges joined at a center vertex.
pub fn tripod(l: usize) -> Pocset {
    let mut edges = Vec::new();
    let vertex = |leg: usize, depth: usize| 1 + leg * l + depth;
    for leg in 0..3 {
        for depth in 0..l {
            let inner = if depth == 0 { 0 } else { vertex(leg, depth - 1) };
            edges.push((inner, vertex(leg, depth)));
        }
    }
    tree_pocset(1 + 3 * l, &edges, 0)
}

/// Two squares sharing one corner.
pub fn bowtie() -> Pocset {
    // vertex 0 is shared; square A is 0,1,2,3 and square B is 0,4,5,6
    let sides = [
        BitSet::from_indices(7, [0, 2, 4, 5, 6]),
        BitSet::from_indices(7, [0, 1, 4, 5, 6]),
        BitSet::from_indices(7, [0, 5, 1, 2, 3]),
        BitSet::from_indices(7, [0, 4, 1, 2, 3]),
    ];
    Pocset::from_vertex_sets(7, &sides).expect("bowtie splits are valid")
}

/// Pocset of a tree given by its edge list; the even halfspace of each edge
/// is the side containing `root`.
pub fn tree_pocset(n_vertices: usize, edges: &[(usize, usize)], root: usize) -> Pocset {
    let mut adj = vec![Vec::new(); n_vertices];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let sides: Vec<BitSet> = (0..edges.len())
        .map(|cut| {
            let mut seen = BitSet::new(n_vertices);
            let mut stack = vec![root];
            seen.insert(root);
            while let Some(v) = stack.pop() {
                for &(w, e) in &adj[v] {
                    if e != cut && !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect();
    Pocset::from_vertex_sets(n_vertices, &sides).expect("tree edges give distinct splits")
}

/// Random recursive tree on `n` vertices.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Pocset {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    tree_pocset(n.max(1), &edges, 0)
}

fn majority(a: u32, b: u32, c: u32) -> u32 {
    (a & b) | (b & c) | (c & a)
}

/// Smallest median-closed subset of `{0,1}^k` containing the seeds (bit `i`
/// of a seed is coordinate `i`), sorted.
pub fn median_closure_points(k: usize, seeds: &[u32]) -> Result<Vec<u32>, GenerateError> {
    if k == 0 || k > MAX_CLOSURE_DIM {
        return Err(GenerateError::BadParams(format!("closure dimension {k} not in 1..={MAX_CLOSURE_DIM}")));
    }
    if seeds.is_empty() {
        return Err(GenerateError::BadParams("median closure needs at least one seed".into()));
    }
    if let Some(s) = seeds.iter().find(|&&s| s >> k != 0) {
        return Err(GenerateError::BadParams(format!("seed {s:b} has more than {k} coordinates")));
    }
    let mut set: BTreeSet<u32> = seeds.iter().copied().collect();
    let mut points: Vec<u32> = set.iter().copied().collect();
    let mut queue: Vec<u32> = points.clone();
    while let Some(p) = queue.pop() {
        let snapshot = points.clone();
        for (i, &a) in snapshot.iter().enumerate() {
            for &b in &snapshot[i..] {
                let m = majority(p, a, b);
                if set.insert(m) {
                    points.push(m);
                    queue.push(m);
                }
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// Pocset whose dual complex has the median closure of the seeds as vertex set.
pub fn median_closure(k: usize, seeds: &[u32]) -> Result<Pocset, GenerateError> {
    let points = median_closure_points(k, seeds)?;
    let n = points.len();
    let mut sides: Vec<BitSet> = Vec::new();
    let full = BitSet::full(n);
    for coord in 0..k {
        let side = BitSet::from_indices(n, (0..n).filter(|&j| points[j] >> coord & 1 == 1));
        if side.is_empty() || side.count() == n {
            continue;
        }
        let comp = full.minus(&side);
        if sides.iter().any(|s| *s == side || *s == comp) {
            continue;
        }
        sides.push(side);
    }
    Pocset::from_vertex_sets(n, &sides).map_err(|e| GenerateError::BadParams(e.to_string()))
}

/// Median closure of `n_seeds` distinct uniformly random points of `{0,1}^k`.
pub fn random_median_closure<R: Rng + ?Sized>(rng: &mut R, k: usize, n_seeds: usize) -> Pocset {
    let mut all: Vec<u32> = (0..1u32 << k).collect();
    all.shuffle(rng);
    let seeds = &all[..n_seeds.clamp(1, all.len())];
    median_closure(k, seeds).expect("random seeds are in range")
}

/// A parsed generator request, e.g. `cube:3`, `grid:2x3`, `closure:3:000,110,011`,
/// `product:path:2*tripod:1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenKind {
    Cube(usize),
    Path(usize),
    Tripod(usize),
    Grid(usize, usize),
    Bowtie,
    Closure(usize, Vec<u32>),
    Product(Vec<GenKind>),
}

impl GenKind {
    pub fn parse(s: &str) -> Result<GenKind, GenerateError> {
        let bad = |msg: &str| GenerateError::BadParams(format!("{msg}: `{s}`"));
        if let Some(rest) = s.strip_prefix("product:") {
            let factors = rest.split('*').map(GenKind::parse).collect::<Result<Vec<_>, _>>()?;
            if factors.len() < 2 {
                return Err(bad("product needs at least two factors"));
            }
            return Ok(GenKind::Product(factors));
        }
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let arg = parts.next();
        let num = |a: Option<&str>| -> Result<usize, GenerateError> {
            a.ok_or_else(|| bad("missing size"))?.trim().parse().map_err(|_| bad("size is not an integer"))
        };
        let kind = match name {
            "cube" => GenKind::Cube(num(arg)?),
            "path" => GenKind::Path(num(arg)?),
            "tripod" => GenKind::Tripod(num(arg)?),
            "grid" => {
                let (a, b) = arg.and_then(|a| a.split_once('x')).ok_or_else(|| bad("grid expects AxB"))?;
                GenKind::Grid(num(Some(a))?, num(Some(b))?)
            }
            "bowtie" => GenKind::Bowtie,
            "closure" => {
                let k = num(arg)?;
                let seeds = parts.next().ok_or_else(|| bad("closure expects seeds"))?;
                GenKind::Closure(k, parse_seeds(k, seeds)?)
            }
            _ => return Err(bad("unknown generator")),
        };
        if parts.next().is_some() {
            return Err(bad("trailing parameters"));
        }
        Ok(kind)
    }

    pub fn build(&self) -> Result<Pocset, GenerateError> {
        Ok(match self {
            GenKind::Cube(k) => cube(*k),
            GenKind::Path(l) => path(*l),
            GenKind::Tripod(l) => tripod(*l),
            GenKind::Grid(a, b) => grid(*a, *b),
            GenKind::Bowtie => bowtie(),
            GenKind::Closure(k, seeds) => median_closure(*k, seeds)?,
            GenKind::Product(fs) => {
                let mut it = fs.iter();
                let mut acc = it.next().expect("non-empty").build()?;
                for f in it {
                    acc = acc.product(&f.build()?);
                }
                acc
            }
        })
    }
}

/// Parses comma-separated `0/1` strings of length `k`, coordinate 0 first.
pub fn parse_seeds(k: usize, s: &str) -> Result<Vec<u32>, GenerateError> {
    s.split(',')
        .map(|w| {
            let w = w.trim();
            if w.len() != k || !w.chars().all(|c| c == '0' || c == '1') {
                return Err(GenerateError::BadParams(format!("seed `{w}` is not a {k}-bit 0/1 string")));
            }
            Ok(w.chars().enumerate().fold(0u32, |acc, (i, c)| acc | u32::from(c == '1') << i))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CubeComplex;

    #[test]
    fn closure_example() {
        let seeds = parse_seeds(3, "000,110,011").unwrap();
        let pts = median_closure_points(3, &seeds).unwrap();
        let labels: BTreeSet<String> =
            pts.iter().map(|p| (0..3).map(|i| if p >> i & 1 == 1 { '1' } else { '0' }).collect()).collect();
        let expected: BTreeSet<String> = ["000", "110", "011", "010"].iter().map(|s| s.to_string()).collect();
        assert_eq!(labels, expected);
        let c = CubeComplex::build(&median_closure(3, &seeds).unwrap()).unwrap();
        assert_eq!(c.vertex_count(), 4);
        let got: BTreeSet<String> = c.vertices().iter().map(|u| u.label()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn family_sizes() {
        assert_eq!(cube(3).n_pairs(), 3);
        assert_eq!(CubeComplex::build(&cube(3)).unwrap().vertex_count(), 8);
        assert_eq!(product(&path(1), &path(1)), cube(2));
        assert_eq!(CubeComplex::build(&bowtie()).unwrap().vertex_count(), 7);
        assert_eq!(CubeComplex::build(&tripod(3)).unwrap().vertex_count(), 10);
        assert_eq!(tripod(2).n_pairs(), 6);
    }

    #[test]
    fn parse_kinds() {
        assert_eq!(GenKind::parse("grid:2x3").unwrap(), GenKind::Grid(2, 3));
        assert_eq!(GenKind::parse("product:path:1*path:1").unwrap().build().unwrap(), cube(2));
        assert!(GenKind::parse("torus:3").is_err());
        assert!(GenKind::parse("closure:3:01").is_err());
        assert!(median_closure(0, &[0]).is_err());
    }

    #[test]
    fn random_closures_realize_their_points() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let k = rng.gen_range(2..=7);
            let n = rng.gen_range(1..=5usize).min(1 << k);
            let mut all: Vec<u32> = (0..1u32 << k).collect();
            all.shuffle(&mut rng);
            let seeds = &all[..n];
            let pts = median_closure_points(k, seeds).unwrap();
            let c = CubeComplex::build(&median_closure(k, seeds).unwrap()).unwrap();
            assert_eq!(c.vertex_count(), pts.len());
        }
    }
}
