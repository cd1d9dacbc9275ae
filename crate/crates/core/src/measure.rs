//! Balanced, heavy and light halfspaces of a finitely supported vertex
//! measure, in exact rational arithmetic.

use crate::action::{facing_triples, lift_embed, ActionError, Automorphism, LiftEmbedding};
use crate::bits::BitSet;
use crate::complex::{CubeComplex, Vertex};
use crate::pocset::{partner, Halfspace, Pocset, RelationKind};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("weight of vertex {vertex} is negative")]
    NegativeWeight { vertex: Vertex },
    #[error("weights sum to {sum}, not 1")]
    SumNotOne { sum: String },
    #[error("vertex {vertex} out of range (complex has {n_vertices} vertices)")]
    VertexOutOfRange { vertex: Vertex, n_vertices: usize },
    #[error("balanced subcomplex is not an interval")]
    NotInterval,
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// A probability measure on the vertices, one exact weight per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMeasure {
    weights: Vec<BigRational>,
}

impl VertexMeasure {
    pub fn new(weights: Vec<BigRational>) -> Result<Self, MeasureError> {
        if let Some(v) = weights.iter().position(|w| w.is_negative()) {
            return Err(MeasureError::NegativeWeight { vertex: v });
        }
        let sum: BigRational = weights.iter().sum();
        if !sum.is_one() {
            return Err(MeasureError::SumNotOne { sum: sum.to_string() });
        }
        Ok(VertexMeasure { weights })
    }

    /// Measure from `(vertex, weight)` entries; repeated vertices add up.
    pub fn from_entries(n_vertices: usize, entries: &[(Vertex, BigRational)]) -> Result<Self, MeasureError> {
        let mut w = vec![BigRational::zero(); n_vertices];
        for (v, x) in entries {
            if *v >= n_vertices {
                return Err(MeasureError::VertexOutOfRange { vertex: *v, n_vertices });
            }
            w[*v] += x;
        }
        Self::new(w)
    }

    pub fn dirac(n_vertices: usize, v: Vertex) -> Self {
        let mut w = vec![BigRational::zero(); n_vertices];
        w[v] = BigRational::one();
        VertexMeasure { weights: w }
    }

    pub fn uniform_on(n_vertices: usize, support: &[Vertex]) -> Self {
        let mut w = vec![BigRational::zero(); n_vertices];
        let share = BigRational::new(BigInt::one(), BigInt::from(support.len()));
        for &v in support {
            w[v] += &share;
        }
        VertexMeasure { weights: w }
    }

    pub fn weight(&self, v: Vertex) -> &BigRational {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn mass(&self, set: &BitSet) -> BigRational {
        set.iter().map(|v| &self.weights[v]).sum()
    }

    /// `γ·μ`, with `(γ·μ)(γv) = μ(v)`.
    pub fn push_forward(&self, c: &CubeComplex, g: &Automorphism) -> VertexMeasure {
        let mut w = vec![BigRational::zero(); self.weights.len()];
        for (v, x) in self.weights.iter().enumerate() {
            w[g.apply_vertex(c, v)] = x.clone();
        }
        VertexMeasure { weights: w }
    }

    /// Weights `k/N` with `N ≤ 64`, on a random support; about half the
    /// draws spread mass evenly so that balanced halfspaces occur.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n_vertices: usize) -> Self {
        let size = rng.gen_range(1..=n_vertices.min(4));
        let mut support: Vec<Vertex> = Vec::with_capacity(size);
        while support.len() < size {
            let v = rng.gen_range(0..n_vertices);
            if !support.contains(&v) {
                support.push(v);
            }
        }
        if rng.gen_bool(0.5) {
            return Self::uniform_on(n_vertices, &support);
        }
        let denom: i64 = rng.gen_range(size as i64..=64);
        // random composition of `denom` into `size` positive parts
        let mut cuts: Vec<i64> = Vec::new();
        while cuts.len() < size - 1 {
            let c = rng.gen_range(1..denom);
            if !cuts.contains(&c) {
                cuts.push(c);
            }
        }
        cuts.sort_unstable();
        cuts.insert(0, 0);
        cuts.push(denom);
        let mut w = vec![BigRational::zero(); n_vertices];
        for (i, &v) in support.iter().enumerate() {
            w[v] = BigRational::new(BigInt::from(cuts[i + 1] - cuts[i]), BigInt::from(denom));
        }
        VertexMeasure { weights: w }
    }
}

/// `𝔥 = H_μ ⊔ H_μ⁺ ⊔ H_μ⁻` as halfspace bit sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedPartition {
    pub h_mu: BitSet,
    pub h_plus: BitSet,
    pub h_minus: BitSet,
    /// `μ(h)` for every halfspace.
    pub masses: Vec<BigRational>,
}

pub fn balanced_partition(c: &CubeComplex, mu: &VertexMeasure) -> BalancedPartition {
    let n = c.pocset().n_halfspaces();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let masses: Vec<BigRational> = (0..n).map(|h| mu.mass(&c.halfspace_vertices(h))).collect();
    let mut part = BalancedPartition {
        h_mu: BitSet::new(n),
        h_plus: BitSet::new(n),
        h_minus: BitSet::new(n),
        masses: Vec::new(),
    };
    for (h, m) in masses.iter().enumerate() {
        match m.cmp(&half) {
            std::cmp::Ordering::Equal => part.h_mu.insert(h),
            std::cmp::Ordering::Greater => part.h_plus.insert(h),
            std::cmp::Ordering::Less => part.h_minus.insert(h),
        }
    }
    part.masses = masses;
    part
}

/// Minimal and maximal elements of `S` in the sense of §4.2 (for `k = h*`
/// the conditions `h ⊆ k*` and `k* ⊆ h` hold).
pub fn terminal_elements(p: &Pocset, s: &[Halfspace]) -> (Vec<Halfspace>, Vec<Halfspace>) {
    let related = |h: Halfspace, k: Halfspace, minimal: bool| {
        if k == partner(h) {
            return true;
        }
        match p.kind(h, k) {
            RelationKind::Transverse => true,
            RelationKind::FirstInSecond => minimal,
            RelationKind::SecondInFirst => !minimal,
            RelationKind::Facing => minimal,
            RelationKind::CoFacing => !minimal,
            RelationKind::Equal | RelationKind::Partner => true,
        }
    };
    let mut set = s.to_vec();
    set.sort_unstable();
    set.dedup();
    let min = set.iter().copied().filter(|&h| set.iter().all(|&k| k == h || related(h, k, true))).collect();
    let max = set.iter().copied().filter(|&h| set.iter().all(|&k| k == h || related(h, k, false))).collect();
    (min, max)
}

/// The subcomplex on `H_μ`, embedded with `W = H_μ⁺`, and its interval witness.
#[derive(Clone, Debug)]
pub struct BalancedSubcomplex {
    pub embedding: LiftEmbedding,
    /// Opposite corners of the subcomplex, in its own vertex ids.
    pub witness: (Vertex, Vertex),
}

pub fn balanced_subcomplex(c: &CubeComplex, mu: &VertexMeasure) -> Result<BalancedSubcomplex, MeasureError> {
    let part = balanced_partition(c, mu);
    let w: Vec<Halfspace> = part.h_plus.iter().collect();
    let embedding = lift_embed(c, &w)?;
    let witness = embedding.sub.is_interval().ok_or(MeasureError::NotInterval)?;
    Ok(BalancedSubcomplex { embedding, witness })
}

/// Items 1–4 and 6 of the `H_μ` lemma; returns the first violation.
pub fn check_hmu_facts(c: &CubeComplex, mu: &VertexMeasure, part: &BalancedPartition) -> Result<(), String> {
    let p = c.pocset();
    let n = p.n_halfspaces();
    for h in 0..n {
        let (a, b) = (partner(h), h);
        // item 1 and the swap H⁺ ↔ H⁻
        if part.h_mu.contains(b) != part.h_mu.contains(a) || part.h_plus.contains(b) != part.h_minus.contains(a) {
            return Err(format!("involution does not preserve the partition at {h}"));
        }
        // item 2
        let memberships = [&part.h_mu, &part.h_plus, &part.h_minus].iter().filter(|s| s.contains(h)).count();
        if memberships != 1 {
            return Err(format!("halfspace {h} lies in {memberships} classes"));
        }
    }
    // item 3
    for class in [&part.h_mu, &part.h_plus] {
        for h in class.iter() {
            for k in class.iter().filter(|&k| p.lt(h, k)) {
                if let Some(l) = p.above(h).and(p.below(k)).iter().find(|&l| !class.contains(l)) {
                    return Err(format!("{l} lies between {h} ⊂ {k} but not in their class"));
                }
            }
        }
    }
    // item 4
    if let Some(t) = facing_triples(p).into_iter().find(|t| t.iter().all(|&h| part.h_mu.contains(h))) {
        return Err(format!("facing triple {t:?} inside H_μ"));
    }
    // item 6
    for h in part.h_mu.iter() {
        for k in part.h_mu.iter().filter(|&k| p.lt(h, k)) {
            let between = c.halfspace_vertices(partner(h)).and(&c.halfspace_vertices(k));
            if !mu.mass(&between).is_zero() {
                return Err(format!("μ({}* ∩ {k}) ≠ 0 for {h} ⊂ {k} in H_μ", h));
            }
        }
    }
    Ok(())
}

/// Maps a halfspace set through an automorphism.
pub fn push_set(g: &Automorphism, s: &BitSet) -> BitSet {
    BitSet::from_indices(s.len(), s.iter().map(|h| g.apply(h)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn cc(p: &Pocset) -> CubeComplex {
        CubeComplex::build(p).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn partition_examples() {
        let sq = cc(&generate::cube(2));
        let part = balanced_partition(&sq, &VertexMeasure::uniform_on(4, &[0, 1, 2, 3]));
        assert_eq!(part.h_mu.count(), 4);
        let v = sq.find_label("10").unwrap();
        let part = balanced_partition(&sq, &VertexMeasure::dirac(4, v));
        assert!(part.h_mu.is_empty());
        assert_eq!(part.h_plus.iter().collect::<Vec<_>>(), vec![0, 3]);
        let t = cc(&generate::tripod(1));
        let leaves: Vec<_> = ["011", "101", "110"].iter().map(|s| t.find_label(s).unwrap()).collect();
        let mu = VertexMeasure::uniform_on(4, &leaves);
        let part = balanced_partition(&t, &mu);
        assert!(part.h_mu.is_empty());
        // h_i* = center side = even ids
        assert_eq!(part.h_plus.iter().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(part.masses[1], q(1, 3));
        check_hmu_facts(&t, &mu, &part).unwrap();
    }

    #[test]
    fn measure_validation() {
        assert!(matches!(
            VertexMeasure::from_entries(3, &[(0, q(1, 2)), (1, q(1, 4))]),
            Err(MeasureError::SumNotOne { .. })
        ));
        assert!(matches!(
            VertexMeasure::from_entries(3, &[(0, q(3, 2)), (1, q(-1, 2))]),
            Err(MeasureError::NegativeWeight { vertex: 1 })
        ));
        assert!(VertexMeasure::from_entries(3, &[(0, q(1, 2)), (2, q(1, 2))]).is_ok());
        assert!(matches!(VertexMeasure::from_entries(3, &[(5, q(1, 1))]), Err(MeasureError::VertexOutOfRange { .. })));
    }

    #[test]
    fn terminal_examples() {
        let p3 = generate::path(3);
        assert_eq!(terminal_elements(&p3, &[0, 2, 4]), (vec![4], vec![0]));
        let sq = generate::cube(2);
        assert_eq!(terminal_elements(&sq, &[0, 1, 2, 3]), (vec![0, 1, 2, 3], vec![0, 1, 2, 3]));
        assert_eq!(terminal_elements(&sq, &[]), (vec![], vec![]));
    }

    #[test]
    fn terminal_bound_needs_one_orientation() {
        // path(3) with mass ½ at each end: every halfspace has mass ½, so
        // H_μ is all of 𝔥, closed under the involution, and τ(H_μ) > 2·dim = 2
        let c = CubeComplex::build(&generate::path(3)).unwrap();
        let mu = VertexMeasure::uniform_on(4, &[0, 3]);
        let part = balanced_partition(&c, &mu);
        let s: Vec<_> = part.h_mu.iter().collect();
        let (min, max) = terminal_elements(c.pocset(), &s);
        let tau: std::collections::BTreeSet<_> = min.into_iter().chain(max).collect();
        assert!(tau.len() > 2 * c.pocset().dimension());
        // one orientation of the same chain meets the bound
        let (min, max) = terminal_elements(c.pocset(), &[0, 2, 4]);
        assert_eq!(min.len() + max.len(), 2);
    }

    #[test]
    fn subcomplex_examples() {
        let sq = cc(&generate::cube(2));
        let b = balanced_subcomplex(&sq, &VertexMeasure::uniform_on(4, &[0, 1, 2, 3])).unwrap();
        assert_eq!(b.embedding.sub.vertex_count(), 4);
        assert_eq!(b.witness, (0, 3));
        let p2 = cc(&generate::path(2));
        let (v0, v2) = (p2.find_label("00").unwrap(), p2.find_label("11").unwrap());
        let b = balanced_subcomplex(&p2, &VertexMeasure::uniform_on(3, &[v0, v2])).unwrap();
        assert_eq!(b.embedding.sub.vertex_count(), 3);
        let b = balanced_subcomplex(&p2, &VertexMeasure::dirac(3, v0)).unwrap();
        assert_eq!(b.embedding.sub.vertex_count(), 1);
        assert_eq!(b.embedding.embedding, vec![v0]);
    }

    #[test]
    fn random_measures_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let m = VertexMeasure::random(&mut rng, 9);
            assert!(VertexMeasure::new(m.weights().to_vec()).is_ok());
        }
    }
}
