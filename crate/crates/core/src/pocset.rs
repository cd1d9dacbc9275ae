//! Finite pocsets of halfspaces.
//!
//! Halfspaces are numbered `0..2n`; `h ^ 1` is the complement of `h`, so
//! hyperplane `i` is the pair `{2i, 2i + 1}`. The strict containment order is
//! kept transitively closed as one bit row per halfspace, in both directions.

use crate::bits::BitSet;
use crate::cocycle::NestedSeq;
use thiserror::Error;

pub type Halfspace = usize;
pub type Hyperplane = usize;

/// Default guard on the number of ultrafilters enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 1 << 20;

#[inline]
pub fn partner(h: Halfspace) -> Halfspace {
    h ^ 1
}

#[inline]
pub fn hyperplane_of(h: Halfspace) -> Hyperplane {
    h >> 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PocsetError {
    #[error("halfspace id {id} out of range (pocset has {n_halfspaces} halfspaces)")]
    IdOutOfRange { id: usize, n_halfspaces: usize },
    #[error("order is not reversed by the involution: {sub} < {sup} but not {sup}* < {sub}*")]
    InvolutionNotOrderReversing { sub: Halfspace, sup: Halfspace },
    #[error("cycle in containment order through {a} and {b}")]
    CycleInOrder { a: Halfspace, b: Halfspace },
    #[error("halfspace {h} is comparable with its complement")]
    PartnerComparable { h: Halfspace },
    #[error("halfspaces {h} and {k} are equal or complementary")]
    SameOrPartner { h: Halfspace, k: Halfspace },
    #[error("more than {cap} ultrafilters")]
    EnumerationCapExceeded { cap: usize },
    #[error("split {pair} is empty, full, or repeats an earlier split")]
    DegenerateSplit { pair: Hyperplane },
}

/// Relative position of an ordered pair of halfspaces `(h, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    Transverse,
    /// `h ⊊ k`
    FirstInSecond,
    /// `k ⊊ h`
    SecondInFirst,
    /// `h ⊊ k*`: the two halfspaces are disjoint.
    Facing,
    /// `h* ⊊ k`: the two halfspaces cover everything.
    CoFacing,
    Equal,
    Partner,
}

impl RelationKind {
    /// The kind of `(k*, h*)` given the kind of `(h, k)`.
    pub fn dual(self) -> RelationKind {
        match self {
            // h ⊂ k* <=> k ⊂ h*, which for (k*, h*) reads "(k*)* ⊂ h*"
            RelationKind::Facing => RelationKind::CoFacing,
            RelationKind::CoFacing => RelationKind::Facing,
            // h ⊂ k <=> k* ⊂ h*, again "first in second"
            other => other,
        }
    }

    pub fn is_parallel(self) -> bool {
        !matches!(self, RelationKind::Transverse)
    }
}

/// A validated finite pocset. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Pocset {
    n_pairs: usize,
    /// `above[h]` holds every `k` with `h ⊊ k`.
    above: Vec<BitSet>,
    /// `below[h]` holds every `k` with `k ⊊ h`.
    below: Vec<BitSet>,
}

impl std::fmt::Debug for Pocset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pocset")
            .field("n_pairs", &self.n_pairs)
            .field("covers", &self.covering_relations())
            .finish()
    }
}

/// An ultrafilter: one halfspace per hyperplane. Bit `i` is set when the
/// even halfspace `2i` is chosen.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Ultrafilter {
    bits: BitSet,
}

impl Ultrafilter {
    pub fn from_bits(bits: BitSet) -> Self {
        Ultrafilter { bits }
    }

    /// Parses a `0/1` label, pair 0 first.
    pub fn from_label(label: &str) -> Option<Self> {
        let mut bits = BitSet::new(label.len());
        for (i, ch) in label.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits.insert(i),
                _ => return None,
            }
        }
        Some(Ultrafilter { bits })
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn n_pairs(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, h: Halfspace) -> bool {
        self.bits.contains(hyperplane_of(h)) == (h & 1 == 0)
    }

    /// The halfspace chosen on hyperplane `i`.
    #[inline]
    pub fn choice(&self, i: Hyperplane) -> Halfspace {
        if self.bits.contains(i) {
            2 * i
        } else {
            2 * i + 1
        }
    }

    pub fn halfspaces(&self) -> impl Iterator<Item = Halfspace> + '_ {
        (0..self.n_pairs()).map(|i| self.choice(i))
    }

    pub fn label(&self) -> String {
        (0..self.n_pairs()).map(|i| if self.bits.contains(i) { '1' } else { '0' }).collect()
    }

    /// Number of hyperplanes on which the two choices differ.
    pub fn distance(&self, other: &Ultrafilter) -> usize {
        self.bits.hamming(&other.bits)
    }
}

impl Pocset {
    /// Validates a raw containment list exactly as given: the transitive
    /// closure is taken but the involution is not applied to the input.
    pub fn validate(n_pairs: usize, relations: &[(Halfspace, Halfspace)]) -> Result<Pocset, PocsetError> {
        let n = 2 * n_pairs;
        let mut above = vec![BitSet::new(n); n];
        for &(sub, sup) in relations {
            for id in [sub, sup] {
                if id >= n {
                    return Err(PocsetError::IdOutOfRange { id, n_halfspaces: n });
                }
            }
            above[sub].insert(sup);
        }
        transitive_closure(&mut above);

        for h in 0..n {
            if above[h].contains(h) {
                let b = above[h].iter().find(|&k| k != h && above[k].contains(h)).unwrap_or(h);
                return Err(PocsetError::CycleInOrder { a: h, b });
            }
        }
        for h in 0..n {
            if above[h].contains(partner(h)) {
                return Err(PocsetError::PartnerComparable { h });
            }
        }
        for h in 0..n {
            for k in above[h].iter() {
                if !above[partner(k)].contains(partner(h)) {
                    return Err(PocsetError::InvolutionNotOrderReversing { sub: h, sup: k });
                }
            }
        }
        Ok(Self::from_closed(n_pairs, above))
    }

    /// Builds a pocset from generating containments, adding `k* ⊂ h*` for
    /// every given `h ⊂ k`.
    pub fn from_generators(n_pairs: usize, relations: &[(Halfspace, Halfspace)]) -> Result<Pocset, PocsetError> {
        let mut all = Vec::with_capacity(relations.len() * 2);
        for &(sub, sup) in relations {
            all.push((sub, sup));
            all.push((sup ^ 1, sub ^ 1));
        }
        Self::validate(n_pairs, &all)
    }

    fn from_closed(n_pairs: usize, above: Vec<BitSet>) -> Pocset {
        let n = 2 * n_pairs;
        let mut below = vec![BitSet::new(n); n];
        for (h, row) in above.iter().enumerate() {
            for k in row.iter() {
                below[k].insert(h);
            }
        }
        Pocset { n_pairs, above, below }
    }

    /// Pocset of a family of splits of a finite point set: `sides[i]` is the
    /// point set of halfspace `2i`, its complement that of `2i + 1`, and the
    /// order is strict inclusion.
    pub fn from_vertex_sets(n_points: usize, sides: &[BitSet]) -> Result<Pocset, PocsetError> {
        let full = BitSet::full(n_points);
        let sets: Vec<BitSet> = sides.iter().flat_map(|s| [s.clone(), full.minus(s)]).collect();
        for (i, s) in sides.iter().enumerate() {
            if s.is_empty() || s.count() == n_points || sets[..2 * i].iter().any(|t| t == s) {
                return Err(PocsetError::DegenerateSplit { pair: i });
            }
        }
        let n = sets.len();
        let mut above = vec![BitSet::new(n); n];
        for a in 0..n {
            for b in 0..n {
                if a != b && sets[a].is_subset(&sets[b]) {
                    above[a].insert(b);
                }
            }
        }
        Ok(Self::from_closed(sides.len(), above))
    }

    /// The pocset with no relations: the dual of the `n`-cube.
    pub fn free(n_pairs: usize) -> Pocset {
        Self::from_closed(n_pairs, vec![BitSet::new(2 * n_pairs); 2 * n_pairs])
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn n_halfspaces(&self) -> usize {
        2 * self.n_pairs
    }

    pub fn check_id(&self, h: Halfspace) -> Result<(), PocsetError> {
        if h < self.n_halfspaces() {
            Ok(())
        } else {
            Err(PocsetError::IdOutOfRange { id: h, n_halfspaces: self.n_halfspaces() })
        }
    }

    /// `a ⊊ b`
    #[inline]
    pub fn lt(&self, a: Halfspace, b: Halfspace) -> bool {
        self.above[a].contains(b)
    }

    /// `a ⊆ b`
    #[inline]
    pub fn le(&self, a: Halfspace, b: Halfspace) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn above(&self, h: Halfspace) -> &BitSet {
        &self.above[h]
    }

    pub fn below(&self, h: Halfspace) -> &BitSet {
        &self.below[h]
    }

    /// Total classification of an ordered pair.
    pub fn kind(&self, h: Halfspace, k: Halfspace) -> RelationKind {
        if h == k {
            RelationKind::Equal
        } else if h == partner(k) {
            RelationKind::Partner
        } else if self.lt(h, k) {
            RelationKind::FirstInSecond
        } else if self.lt(k, h) {
            RelationKind::SecondInFirst
        } else if self.lt(h, partner(k)) {
            RelationKind::Facing
        } else if self.lt(partner(h), k) {
            RelationKind::CoFacing
        } else {
            RelationKind::Transverse
        }
    }

    pub fn relation(&self, h: Halfspace, k: Halfspace) -> Result<RelationKind, PocsetError> {
        self.check_id(h)?;
        self.check_id(k)?;
        if hyperplane_of(h) == hyperplane_of(k) {
            return Err(PocsetError::SameOrPartner { h, k });
        }
        Ok(self.kind(h, k))
    }

    /// Whether two distinct hyperplanes cross.
    pub fn transverse(&self, i: Hyperplane, j: Hyperplane) -> bool {
        i != j && self.kind(2 * i, 2 * j) == RelationKind::Transverse
    }

    /// `inner ⊊ outer` with nothing strictly in between.
    pub fn tightly_nested(&self, outer: Halfspace, inner: Halfspace) -> bool {
        self.lt(inner, outer) && !self.below[outer].intersects(&self.above[inner])
    }

    /// Halfspaces tightly nested directly inside `h`.
    pub fn tight_covers_below(&self, h: Halfspace) -> Vec<Halfspace> {
        self.below[h].iter().filter(|&k| self.tightly_nested(h, k)).collect()
    }

    /// Covering relations `(sub, sup)` of the order (its transitive reduction).
    pub fn covering_relations(&self) -> Vec<(Halfspace, Halfspace)> {
        let mut out = Vec::new();
        for h in 0..self.n_halfspaces() {
            for k in self.tight_covers_below(h) {
                out.push((k, h));
            }
        }
        out.sort_unstable();
        out
    }

    /// A generating set: one covering relation per dual pair, the one with
    /// the smaller `(sub, sup)`.
    pub fn generating_relations(&self) -> Vec<(Halfspace, Halfspace)> {
        self.covering_relations()
            .into_iter()
            .filter(|&(sub, sup)| (sub, sup) <= (partner(sup), partner(sub)))
            .collect()
    }

    /// Transversality adjacency between hyperplanes.
    pub fn transversality_graph(&self) -> Vec<BitSet> {
        let n = self.n_pairs;
        let mut adj = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if self.transverse(i, j) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        adj
    }

    /// Largest family of pairwise transverse hyperplanes (exact clique search).
    pub fn dimension(&self) -> usize {
        let adj = self.transversality_graph();
        let mut best = 0;
        bron_kerbosch(&adj, 0, BitSet::full(self.n_pairs), BitSet::new(self.n_pairs), &mut best);
        best
    }

    /// All ultrafilters, in lexicographic order of their labels.
    pub fn ultrafilters(&self) -> Result<Vec<Ultrafilter>, PocsetError> {
        self.ultrafilters_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn ultrafilters_capped(&self, cap: usize) -> Result<Vec<Ultrafilter>, PocsetError> {
        let n = self.n_halfspaces();
        // disjoint[h] = {g : h ⊊ g*}; a full choice is consistent iff no two
        // chosen halfspaces are disjoint.
        let disjoint: Vec<BitSet> = (0..n)
            .map(|h| BitSet::from_indices(n, self.above[h].iter().map(partner)))
            .collect();
        let mut out = Vec::new();
        let mut chosen = BitSet::new(n);
        let mut bits = BitSet::new(self.n_pairs);
        self.extend(0, &disjoint, &mut chosen, &mut bits, &mut out, cap)?;
        debug_assert!(out.iter().all(|u| self.is_ultrafilter(u)));
        // Finite acyclic order: every descending chain has length < 2n, so
        // every ultrafilter here satisfies the descending chain condition.
        debug_assert!(out.iter().all(|u| self.longest_descending_chain(u) <= self.n_pairs));
        Ok(out)
    }

    fn extend(
        &self,
        pair: usize,
        disjoint: &[BitSet],
        chosen: &mut BitSet,
        bits: &mut BitSet,
        out: &mut Vec<Ultrafilter>,
        cap: usize,
    ) -> Result<(), PocsetError> {
        if pair == self.n_pairs {
            if out.len() == cap {
                return Err(PocsetError::EnumerationCapExceeded { cap });
            }
            out.push(Ultrafilter { bits: bits.clone() });
            return Ok(());
        }
        for (h, bit) in [(2 * pair + 1, false), (2 * pair, true)] {
            if !disjoint[h].intersects(chosen) {
                chosen.insert(h);
                bits.set(pair, bit);
                self.extend(pair + 1, disjoint, chosen, bits, out, cap)?;
                chosen.remove(h);
            }
        }
        bits.remove(pair);
        Ok(())
    }

    /// Choice and consistency conditions.
    pub fn is_ultrafilter(&self, u: &Ultrafilter) -> bool {
        u.n_pairs() == self.n_pairs
            && u.halfspaces().all(|h| self.above[h].iter().all(|k| u.contains(k)))
    }

    /// Length of the longest strictly descending chain inside `u`.
    pub fn longest_descending_chain(&self, u: &Ultrafilter) -> usize {
        let members: Vec<Halfspace> = u.halfspaces().collect();
        // members sorted so that larger sets come first by counting strict lowers
        let mut order = members.clone();
        order.sort_by_key(|&h| std::cmp::Reverse(self.below[h].count()));
        let mut depth = vec![0usize; self.n_halfspaces()];
        let mut best = 0;
        for &h in &order {
            let d = 1 + members.iter().filter(|&&k| self.lt(h, k)).map(|&k| depth[k]).max().unwrap_or(0);
            depth[h] = d;
            best = best.max(d);
        }
        best
    }

    /// All sequences `h1 ⊋ h2 ⊋ … ⊋ hn` with consecutive terms tightly nested,
    /// outermost first, in lexicographic order.
    pub fn tightly_nested_sequences(&self, n: usize) -> Vec<NestedSeq> {
        if n == 0 {
            return Vec::new();
        }
        let covers: Vec<Vec<Halfspace>> = (0..self.n_halfspaces()).map(|h| self.tight_covers_below(h)).collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        for h in 0..self.n_halfspaces() {
            cur.push(h);
            walk_covers(&covers, n, &mut cur, &mut out);
            cur.pop();
        }
        out
    }

    /// Sub-pocset on the given hyperplanes; new hyperplane `i` is `pairs[i]`.
    pub fn restrict(&self, pairs: &[Hyperplane]) -> Pocset {
        let m = pairs.len();
        let mut above = vec![BitSet::new(2 * m); 2 * m];
        for (a, &pa) in pairs.iter().enumerate() {
            for (b, &pb) in pairs.iter().enumerate() {
                for (sa, sb) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    if self.lt(2 * pa + sa, 2 * pb + sb) {
                        above[2 * a + sa].insert(2 * b + sb);
                    }
                }
            }
        }
        Self::from_closed(m, above)
    }

    /// Disjoint union; every hyperplane of `self` crosses every hyperplane of `other`.
    pub fn product(&self, other: &Pocset) -> Pocset {
        let shift = self.n_halfspaces();
        let n = shift + other.n_halfspaces();
        let mut above = vec![BitSet::new(n); n];
        for h in 0..shift {
            for k in self.above[h].iter() {
                above[h].insert(k);
            }
        }
        for h in 0..other.n_halfspaces() {
            for k in other.above[h].iter() {
                above[shift + h].insert(shift + k);
            }
        }
        Self::from_closed(self.n_pairs + other.n_pairs, above)
    }

    /// Relabels hyperplanes by `perm` (new pair `perm[i]` is old pair `i`) and
    /// flips the orientation of the pairs listed in `flip`.
    pub fn relabel(&self, perm: &[Hyperplane], flip: &BitSet) -> Pocset {
        let map = |h: Halfspace| {
            let i = hyperplane_of(h);
            2 * perm[i] + ((h & 1) ^ usize::from(flip.contains(i)))
        };
        let n = self.n_halfspaces();
        let mut above = vec![BitSet::new(n); n];
        for h in 0..n {
            for k in self.above[h].iter() {
                above[map(h)].insert(map(k));
            }
        }
        Self::from_closed(self.n_pairs, above)
    }
}

fn walk_covers(covers: &[Vec<Halfspace>], n: usize, cur: &mut Vec<Halfspace>, out: &mut Vec<NestedSeq>) {
    if cur.len() == n {
        out.push(NestedSeq::new(cur.clone()));
        return;
    }
    let last = *cur.last().expect("non-empty");
    for &k in &covers[last] {
        cur.push(k);
        walk_covers(covers, n, cur, out);
        cur.pop();
    }
}

fn transitive_closure(above: &mut [BitSet]) {
    let n = above.len();
    for k in 0..n {
        let row_k = above[k].clone();
        for row in above.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
}

fn bron_kerbosch(adj: &[BitSet], size: usize, mut cand: BitSet, mut excl: BitSet, best: &mut usize) {
    if cand.is_empty() {
        if excl.is_empty() {
            *best = (*best).max(size);
        }
        return;
    }
    if size + cand.count() <= *best {
        return;
    }
    let pivot = cand.iter().chain(excl.iter()).max_by_key(|&u| adj[u].and(&cand).count()).expect("non-empty");
    for v in cand.minus(&adj[pivot]).iter().collect::<Vec<_>>() {
        bron_kerbosch(adj, size + 1, cand.and(&adj[v]), excl.and(&adj[v]), best);
        cand.remove(v);
        excl.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn validate_examples() {
        // path(2): h1 ⊃ h2, i.e. 2 ⊂ 0
        assert!(Pocset::from_generators(2, &[(2, 0)]).is_ok());
        assert!(matches!(Pocset::validate(1, &[(0, 1)]), Err(PocsetError::PartnerComparable { h: 0 })));
        assert!(matches!(Pocset::validate(2, &[(0, 2), (2, 0)]), Err(PocsetError::CycleInOrder { .. })));
        assert!(matches!(
            Pocset::validate(2, &[(2, 0)]),
            Err(PocsetError::InvolutionNotOrderReversing { sub: 2, sup: 0 })
        ));
        assert!(matches!(Pocset::validate(1, &[(0, 7)]), Err(PocsetError::IdOutOfRange { id: 7, .. })));
    }

    #[test]
    fn relation_examples() {
        let sq = generate::cube(2);
        assert_eq!(sq.relation(0, 2).unwrap(), RelationKind::Transverse);
        let p2 = generate::path(2);
        assert_eq!(p2.relation(0, 2).unwrap(), RelationKind::SecondInFirst);
        let t = generate::tripod(1);
        let (hx, hy) = (generate::tripod_away(1, 0, 0), generate::tripod_away(1, 1, 0));
        assert_eq!(t.relation(hx, hy).unwrap(), RelationKind::Facing);
        assert!(matches!(t.relation(hx, partner(hx)), Err(PocsetError::SameOrPartner { .. })));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(generate::cube(3).dimension(), 3);
        assert_eq!(generate::path(5).dimension(), 1);
        assert_eq!(generate::grid(2, 3).dimension(), 2);
        assert_eq!(generate::tripod(2).dimension(), 1);
    }

    #[test]
    fn ultrafilter_counts() {
        assert_eq!(generate::path(1).ultrafilters().unwrap().len(), 2);
        assert_eq!(generate::cube(2).ultrafilters().unwrap().len(), 4);
        assert_eq!(generate::tripod(1).ultrafilters().unwrap().len(), 4);
        assert!(matches!(
            generate::cube(4).ultrafilters_capped(10),
            Err(PocsetError::EnumerationCapExceeded { cap: 10 })
        ));
    }

    #[test]
    fn ultrafilters_are_label_sorted() {
        let labels: Vec<String> = generate::cube(3).ultrafilters().unwrap().iter().map(|u| u.label()).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(labels, sorted);
    }

    #[test]
    fn nested_sequences_examples() {
        let p3 = generate::path(3);
        let seqs: Vec<Vec<usize>> =
            p3.tightly_nested_sequences(2).into_iter().map(|s| s.halfspaces().to_vec()).collect();
        // h1=0, h2=2, h3=4
        let mut expected = vec![vec![0, 2], vec![2, 4], vec![5, 3], vec![3, 1]];
        expected.sort();
        assert_eq!(seqs, expected);
        assert!(generate::cube(2).tightly_nested_sequences(2).is_empty());

        let t = generate::tripod(1);
        let seqs = t.tightly_nested_sequences(2);
        assert_eq!(seqs.len(), 6);
        for s in &seqs {
            let (a, b) = (s.halfspaces()[0], s.halfspaces()[1]);
            // (h_i*, h_j) with h_i the leaf side
            assert_eq!(a & 1, 0);
            assert_eq!(b & 1, 1);
            assert_ne!(hyperplane_of(a), hyperplane_of(b));
        }
    }

    #[test]
    fn restrict_and_product() {
        let g = generate::grid(2, 3);
        let sub = g.restrict(&[0, 1]);
        assert_eq!(sub, generate::path(2));
        assert_eq!(generate::path(1).product(&generate::path(1)), generate::cube(2));
    }
}
