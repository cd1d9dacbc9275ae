//! Appendix A.2: high out-degree vertices and greedy extraction of a
//! transitive subtournament.

use crate::bits::BitSet;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("pair ({u}, {v}) carries no edge")]
    NotComplete { u: usize, v: usize },
    #[error("{n} vertices is fewer than 5^{d} = {needed}")]
    TooFewVertices { n: usize, d: usize, needed: u128 },
    #[error("greedy extraction stopped after {found} of {d} vertices")]
    GreedyFailed { found: usize, d: usize },
    #[error("tournament has no vertices")]
    Empty,
    #[error("edge ({u}, {v}) is out of range or a loop")]
    BadEdge { u: usize, v: usize },
}

/// A complete directed graph; a pair may carry edges in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tournament {
    out: Vec<BitSet>,
}

/// A transitive subtournament and the sizes of the sets the greedy recursion visited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub vertices: Vec<usize>,
    pub set_sizes: Vec<usize>,
}

impl Tournament {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, TournamentError> {
        let mut out = vec![BitSet::new(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(TournamentError::BadEdge { u, v });
            }
            out[u].insert(v);
        }
        let t = Tournament { out };
        t.check_complete()?;
        Ok(t)
    }

    /// Uniformly random orientation of every pair.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let mut out = vec![BitSet::new(n); n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    out[u].insert(v);
                } else {
                    out[v].insert(u);
                }
            }
        }
        Tournament { out }
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count()
    }

    pub fn check_complete(&self) -> Result<(), TournamentError> {
        for u in 0..self.len() {
            for v in u + 1..self.len() {
                if !self.has_edge(u, v) && !self.has_edge(v, u) {
                    return Err(TournamentError::NotComplete { u, v });
                }
            }
        }
        Ok(())
    }

    /// Within `set`, the vertex of largest out-degree (smallest id on ties).
    fn best_in(&self, set: &BitSet) -> Option<usize> {
        set.iter().max_by_key(|&v| (self.out[v].and(set).count(), std::cmp::Reverse(v)))
    }

    pub fn is_transitive_sequence(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }
}

/// A vertex with out-degree at least `(|V| − 1)/2`.
pub fn high_outdegree_vertex(t: &Tournament) -> Result<usize, TournamentError> {
    t.check_complete()?;
    let v = t.best_in(&BitSet::full(t.len())).ok_or(TournamentError::Empty)?;
    assert!(2 * t.out_degree(v) + 1 >= t.len(), "average out-degree argument failed");
    Ok(v)
}

/// `5^d`, saturating.
pub fn required_vertices(d: usize) -> u128 {
    5u128.checked_pow(d as u32).unwrap_or(u128::MAX)
}

/// Greedy extraction of `v₁ → v₂ → ⋯ → v_d` (all forward edges present).
/// Without `force`, `|V| ≥ 5^d` is required for `d ≥ 2`.
pub fn transitive_subtournament(t: &Tournament, d: usize, force: bool) -> Result<Extraction, TournamentError> {
    t.check_complete()?;
    let needed = required_vertices(d);
    // a single vertex is always transitive, whatever the size
    if !force && d > 1 && (t.len() as u128) < needed {
        return Err(TournamentError::TooFewVertices { n: t.len(), d, needed });
    }
    let mut set = BitSet::full(t.len());
    let mut vertices = Vec::with_capacity(d);
    let mut set_sizes = vec![set.count()];
    while vertices.len() < d {
        let Some(v) = t.best_in(&set) else {
            return Err(TournamentError::GreedyFailed { found: vertices.len(), d });
        };
        vertices.push(v);
        set.remove(v);
        set.intersect_with(&t.out[v]);
        let prev = *set_sizes.last().expect("non-empty");
        if vertices.len() < d {
            set_sizes.push(set.count());
            if !force {
                // o(v) ≥ (m − 1)/2 within the current set of size m ≥ 5
                assert!(5 * set.count() >= prev, "greedy set shrank by more than a factor of 5");
            }
        }
    }
    assert!(t.is_transitive_sequence(&vertices));
    Ok(Extraction { vertices, set_sizes })
}

/// Exhaustive search for a transitive `d`-subtournament (small `|V|` only).
pub fn brute_force_transitive(t: &Tournament, d: usize) -> Option<Vec<usize>> {
    fn go(t: &Tournament, d: usize, cand: &BitSet, cur: &mut Vec<usize>) -> bool {
        if cur.len() == d {
            return true;
        }
        for v in cand.iter() {
            cur.push(v);
            let next = cand.and(&t.out[v]);
            if go(t, d, &next, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    go(t, d, &BitSet::full(t.len()), &mut cur).then_some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn three_cycle() -> Tournament {
        Tournament::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn outdegree_examples() {
        let c3 = three_cycle();
        assert_eq!(c3.out_degree(high_outdegree_vertex(&c3).unwrap()), 1);
        let tr4 = Tournament::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(high_outdegree_vertex(&tr4).unwrap(), 0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let t = Tournament::random(&mut rng, 25);
        assert!(t.out_degree(high_outdegree_vertex(&t).unwrap()) >= 12);
        assert!(matches!(Tournament::new(3, &[(0, 1)]), Err(TournamentError::NotComplete { .. })));
    }

    #[test]
    fn extraction_examples() {
        let c3 = three_cycle();
        assert_eq!(transitive_subtournament(&c3, 1, false).unwrap().vertices.len(), 1);
        assert!(matches!(transitive_subtournament(&c3, 2, false), Err(TournamentError::TooFewVertices { .. })));
        let e = transitive_subtournament(&c3, 2, true).unwrap();
        assert!(c3.has_edge(e.vertices[0], e.vertices[1]));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let t = Tournament::random(&mut rng, 125);
        let e = transitive_subtournament(&t, 3, false).unwrap();
        assert!(t.is_transitive_sequence(&e.vertices));
        assert_eq!(e.vertices.len(), 3);
    }

    #[test]
    fn force_reports_failure() {
        // 3-cycle has no transitive triple
        assert!(matches!(
            transitive_subtournament(&three_cycle(), 3, true),
            Err(TournamentError::GreedyFailed { found: 2, d: 3 })
        ));
        assert!(brute_force_transitive(&three_cycle(), 3).is_none());
    }
}
