//! Automorphisms and group actions on a pocset and its dual complex.

use crate::bits::BitSet;
use crate::cocycle::SparseVec;
use crate::complex::{bfs, longest_chain, pocset_morphisms, CubeComplex, Vertex};
use crate::pocset::{hyperplane_of, partner, Halfspace, Hyperplane, Pocset, PocsetError, RelationKind, Ultrafilter};
use std::collections::{BTreeSet, HashSet, VecDeque};
use thiserror::Error;

/// Default depth of the orbit BFS under the generators.
pub const DEFAULT_ORBIT_DEPTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("permutation has length {len}, expected {expected}")]
    WrongLength { len: usize, expected: usize },
    #[error("not a bijection: {image} is hit twice")]
    NotBijection { image: Halfspace },
    #[error("breaks the involution at {h}: σ({h}*) ≠ σ({h})*")]
    BreaksInvolution { h: Halfspace },
    #[error("breaks the order: {h} ⊂ {k} is not matched by σ({h}) ⊂ σ({k})")]
    BreaksOrder { h: Halfspace, k: Halfspace },
    #[error("halfspaces {h1} and {h2} are not facing")]
    NotFacing { h1: Halfspace, h2: Halfspace },
    #[error("hyperplanes must be distinct (got {0} twice)")]
    SameHyperplane(Hyperplane),
    #[error("inconsistent W: {0}")]
    InconsistentW(String),
    #[error(transparent)]
    Pocset(#[from] PocsetError),
}

/// An involution- and order-preserving permutation of halfspace ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    perm: Vec<Halfspace>,
}

impl Automorphism {
    pub fn identity(n_halfspaces: usize) -> Self {
        Automorphism { perm: (0..n_halfspaces).collect() }
    }

    /// The automorphism sending pair `i` to pair `perm[i]`, flipped on `flip`.
    pub fn from_relabel(perm: &[Hyperplane], flip: &BitSet) -> Self {
        let p = (0..2 * perm.len())
            .map(|h| {
                let i = hyperplane_of(h);
                2 * perm[i] + ((h & 1) ^ usize::from(flip.contains(i)))
            })
            .collect();
        Automorphism { perm: p }
    }

    pub fn perm(&self) -> &[Halfspace] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, h: Halfspace) -> Halfspace {
        self.perm[h]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { perm: other.perm.iter().map(|&h| self.perm[h]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.perm.len()];
        for (h, &g) in self.perm.iter().enumerate() {
            inv[g] = h;
        }
        Automorphism { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(h, &g)| h == g)
    }

    pub fn apply_ultrafilter(&self, u: &Ultrafilter) -> Ultrafilter {
        let n = u.n_pairs();
        let mut bits = BitSet::new(n);
        for h in u.halfspaces() {
            let g = self.perm[h];
            if g & 1 == 0 {
                bits.insert(hyperplane_of(g));
            }
        }
        Ultrafilter::from_bits(bits)
    }

    pub fn apply_vertex(&self, c: &CubeComplex, v: Vertex) -> Vertex {
        c.find(self.apply_ultrafilter(c.vertex(v)).bits()).expect("automorphisms permute vertices")
    }

    pub fn apply_vec(&self, v: &SparseVec) -> SparseVec {
        v.map_ids(|h| self.perm[h])
    }
}

pub fn validate_automorphism(p: &Pocset, perm: &[Halfspace]) -> Result<Automorphism, ActionError> {
    let n = p.n_halfspaces();
    if perm.len() != n {
        return Err(ActionError::WrongLength { len: perm.len(), expected: n });
    }
    let mut hit = vec![false; n];
    for &g in perm {
        p.check_id(g)?;
        if std::mem::replace(&mut hit[g], true) {
            return Err(ActionError::NotBijection { image: g });
        }
    }
    for h in 0..n {
        if perm[partner(h)] != partner(perm[h]) {
            return Err(ActionError::BreaksInvolution { h });
        }
    }
    for h in 0..n {
        for k in 0..n {
            if p.lt(h, k) != p.lt(perm[h], perm[k]) {
                return Err(ActionError::BreaksOrder { h, k });
            }
        }
    }
    Ok(Automorphism { perm: perm.to_vec() })
}

/// Up to `cap` automorphisms of `p`, identity first.
pub fn automorphisms(p: &Pocset, cap: usize) -> Vec<Automorphism> {
    let mut out = Vec::new();
    pocset_morphisms(p, p, cap, &mut |perm, flip| out.push(Automorphism::from_relabel(perm, flip)));
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// `γh* ⊆ h`
    Flips,
    /// `γh ⊊ h`
    Skewers,
    Neither,
}

pub fn classify(p: &Pocset, g: &Automorphism, h: Halfspace) -> Classification {
    let skewers = p.lt(g.apply(h), h);
    // γ has finite order, so γh ⊊ h would give h = γᵐh ⊊ h.
    assert!(!skewers, "an automorphism of a finite pocset skewered {h}");
    if p.le(g.apply(partner(h)), h) {
        Classification::Flips
    } else {
        Classification::Neither
    }
}

/// Parallel, and no third hyperplane crosses both.
pub fn strongly_separated(p: &Pocset, a: Hyperplane, b: Hyperplane) -> Result<bool, ActionError> {
    p.check_id(2 * a)?;
    p.check_id(2 * b)?;
    if a == b {
        return Err(ActionError::SameHyperplane(a));
    }
    Ok(!p.transverse(a, b) && !(0..p.n_pairs()).any(|k| p.transverse(a, k) && p.transverse(b, k)))
}

/// All triples `h₁ < h₂ < h₃` of pairwise disjoint halfspaces.
pub fn facing_triples(p: &Pocset) -> Vec<[Halfspace; 3]> {
    let n = p.n_halfspaces();
    let facing = |h: Halfspace, k: Halfspace| hyperplane_of(h) != hyperplane_of(k) && p.kind(h, k) == RelationKind::Facing;
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !facing(a, b) {
                continue;
            }
            for c in b + 1..n {
                if facing(a, c) && facing(b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Whether `h₁ ⊂ k₁ ⊂ ⋯ ⊂ k_ℓ ⊂ h₂*` exists tightly nested with `ℓ ≥ n`.
/// The witness is a longest such `k₁, …, k_ℓ`, innermost first.
pub fn n_disjoint(p: &Pocset, h1: Halfspace, h2: Halfspace, n: usize) -> Result<(bool, Vec<Halfspace>), ActionError> {
    if p.relation(h1, h2)? != RelationKind::Facing {
        return Err(ActionError::NotFacing { h1, h2 });
    }
    let between: Vec<Halfspace> = p.above(h1).and(p.below(partner(h2))).iter().collect();
    // a longest chain of the open interval is saturated, hence tightly nested
    let mut chain = longest_chain(p, &between);
    chain.reverse();
    Ok((chain.len() >= n, chain))
}

/// Connected components of the non-transversality graph, each sorted.
pub fn irreducible_decomposition(p: &Pocset) -> Vec<Vec<Hyperplane>> {
    let n = p.n_pairs();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| j != i && !p.transverse(i, j)).collect()).collect();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let dist = bfs(&adj, &[s]);
        let comp: Vec<usize> = (0..n).filter(|&v| dist[v] != usize::MAX).collect();
        for &v in &comp {
            seen[v] = true;
        }
        out.push(comp);
    }
    out
}

/// Generators of a group action plus orbit parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub generators: Vec<Automorphism>,
    pub basepoint: Option<Vertex>,
    pub depth_cap: usize,
}

impl ActionSpec {
    pub fn new(generators: Vec<Automorphism>, basepoint: Option<Vertex>) -> Self {
        ActionSpec { generators, basepoint, depth_cap: DEFAULT_ORBIT_DEPTH }
    }
}

/// Orbit of `v` under words of length ≤ `depth` in the generators (and
/// their inverses), sorted.
pub fn orbit(c: &CubeComplex, generators: &[Automorphism], v: Vertex, depth: usize) -> Vec<Vertex> {
    let gens: Vec<Automorphism> = generators.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut seen = BTreeSet::from([v]);
    let mut queue = VecDeque::from([(v, 0usize)]);
    while let Some((x, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for g in &gens {
            let y = g.apply_vertex(c, x);
            if seen.insert(y) {
                queue.push_back((y, d + 1));
            }
        }
    }
    seen.into_iter().collect()
}

/// Distance from each vertex to hyperplane `i`: the least graph distance to
/// an endpoint of an edge dual to `i`.
pub fn hyperplane_distances(c: &CubeComplex, i: Hyperplane) -> Vec<usize> {
    let adj: Vec<Vec<usize>> = (0..c.vertex_count()).map(|v| c.neighbors(v).iter().map(|&(w, _)| w).collect()).collect();
    let sources: Vec<usize> =
        c.edges().iter().filter(|&&(_, _, h)| h == i).flat_map(|&(a, b, _)| [a, b]).collect();
    bfs(&adj, &sources)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialPartition {
    pub essential: Vec<Hyperplane>,
    pub non_essential: Vec<Hyperplane>,
    pub orbit: Vec<Vertex>,
}

/// `ĥ` is essential at scale `R` when both of its halfspaces contain an
/// orbit point at hyperplane distance at least `R`.
pub fn essential_at_scale(c: &CubeComplex, spec: &ActionSpec, r: usize) -> EssentialPartition {
    let base = spec.basepoint.unwrap_or(0);
    let orb = orbit(c, &spec.generators, base, spec.depth_cap);
    let (mut essential, mut non_essential) = (Vec::new(), Vec::new());
    for i in 0..c.pocset().n_pairs() {
        let dist = hyperplane_distances(c, i);
        let far_in = |h: Halfspace| orb.iter().any(|&v| c.vertex(v).contains(h) && dist[v] >= r);
        if far_in(2 * i) && far_in(2 * i + 1) {
            essential.push(i);
        } else {
            non_essential.push(i);
        }
    }
    EssentialPartition { essential, non_essential, orbit: orb }
}

/// A cube (corner with its bits cleared, directions) whose vertex set every
/// generator preserves; a finite group always has one.
pub fn invariant_cube(c: &CubeComplex, generators: &[Automorphism]) -> Option<(BitSet, Vec<Hyperplane>)> {
    let cube_vertices = |base: &BitSet, dirs: &[Hyperplane]| -> BTreeSet<Vertex> {
        (0u32..1 << dirs.len())
            .map(|mask| {
                let mut b = base.clone();
                for (t, &d) in dirs.iter().enumerate() {
                    if mask >> t & 1 == 1 {
                        b.insert(d);
                    }
                }
                c.find(&b).expect("cube corners are vertices")
            })
            .collect()
    };
    c.cubes().into_iter().find(|(base, dirs)| {
        let vs = cube_vertices(base, dirs);
        generators.iter().all(|g| vs.iter().all(|&v| vs.contains(&g.apply_vertex(c, v))))
    })
}

/// A consistent partial choice `W` and the complementary hyperplanes `𝔥_W`.
#[derive(Clone, Debug)]
pub struct LiftingDecomposition {
    w: BitSet,
    pairs: Vec<Hyperplane>,
    new_index: Vec<Option<usize>>,
    sub: Pocset,
}

impl LiftingDecomposition {
    pub fn new(p: &Pocset, w: &[Halfspace]) -> Result<Self, ActionError> {
        let n = p.n_halfspaces();
        for &h in w {
            p.check_id(h)?;
        }
        let ws = BitSet::from_indices(n, w.iter().copied());
        for h in ws.iter() {
            if ws.contains(partner(h)) {
                return Err(ActionError::InconsistentW(format!("contains both {h} and its complement")));
            }
            if let Some(k) = p.above(h).iter().find(|&k| !ws.contains(k)) {
                return Err(ActionError::InconsistentW(format!("contains {h} but not {k} ⊃ {h}")));
            }
        }
        let pairs: Vec<Hyperplane> = (0..p.n_pairs()).filter(|&i| !ws.contains(2 * i) && !ws.contains(2 * i + 1)).collect();
        let mut new_index = vec![None; p.n_pairs()];
        for (j, &i) in pairs.iter().enumerate() {
            new_index[i] = Some(j);
        }
        let sub = p.restrict(&pairs);
        Ok(LiftingDecomposition { w: ws, pairs, new_index, sub })
    }

    pub fn w(&self) -> &BitSet {
        &self.w
    }

    /// Hyperplanes of `𝔥_W`; sub-pocset pair `j` is `pairs()[j]`.
    pub fn pairs(&self) -> &[Hyperplane] {
        &self.pairs
    }

    pub fn sub_pocset(&self) -> &Pocset {
        &self.sub
    }

    /// Id of `h` in the sub-pocset, if `h ∈ 𝔥_W`.
    pub fn to_sub(&self, h: Halfspace) -> Option<Halfspace> {
        self.new_index[hyperplane_of(h)].map(|j| 2 * j + (h & 1))
    }

    pub fn from_sub(&self, h: Halfspace) -> Halfspace {
        2 * self.pairs[hyperplane_of(h)] + (h & 1)
    }

    /// `i(α) = α ⊔ W`.
    pub fn embed(&self, alpha: &Ultrafilter) -> Ultrafilter {
        let n = self.new_index.len();
        let mut bits = BitSet::new(n);
        for i in 0..n {
            let chosen = match self.new_index[i] {
                Some(j) => alpha.bits().contains(j),
                None => self.w.contains(2 * i),
            };
            bits.set(i, chosen);
        }
        Ultrafilter::from_bits(bits)
    }

    /// `π(u) = u ∩ 𝔥_W`.
    pub fn project(&self, u: &Ultrafilter) -> Ultrafilter {
        Ultrafilter::from_bits(BitSet::from_indices(
            self.pairs.len(),
            (0..self.pairs.len()).filter(|&j| u.bits().contains(self.pairs[j])),
        ))
    }

    /// `ρ = i ∘ π`.
    pub fn retract(&self, u: &Ultrafilter) -> Ultrafilter {
        self.embed(&self.project(u))
    }
}

/// The subcomplex `∩_{h ∈ W} h`, its embedding and the projection onto it.
#[derive(Clone, Debug)]
pub struct LiftEmbedding {
    pub lift: LiftingDecomposition,
    pub sub: CubeComplex,
    /// Vertex of `c` for each vertex of `sub`.
    pub embedding: Vec<Vertex>,
    /// `ρ(v)` for each vertex `v` of `c`.
    pub projection: Vec<Vertex>,
}

pub fn lift_embed(c: &CubeComplex, w: &[Halfspace]) -> Result<LiftEmbedding, ActionError> {
    let lift = LiftingDecomposition::new(c.pocset(), w)?;
    let sub = CubeComplex::build(lift.sub_pocset()).map_err(|e| match e {
        crate::complex::ComplexError::Pocset(p) => ActionError::Pocset(p),
        other => ActionError::InconsistentW(other.to_string()),
    })?;
    let embedding = sub
        .vertices()
        .iter()
        .map(|a| c.find(lift.embed(a).bits()).expect("α ⊔ W is an ultrafilter"))
        .collect();
    let projection =
        c.vertices().iter().map(|u| c.find(lift.retract(u).bits()).expect("ρ(u) is an ultrafilter")).collect();
    Ok(LiftEmbedding { lift, sub, embedding, projection })
}

impl LiftEmbedding {
    /// Checks that the image is `∩_{h∈W} h`, that `i` is isometric and that
    /// `ρ` fixes the image.
    pub fn check(&self, c: &CubeComplex) -> Result<(), String> {
        let image: HashSet<Vertex> = self.embedding.iter().copied().collect();
        for v in 0..c.vertex_count() {
            let inside = self.lift.w().iter().all(|h| c.vertex(v).contains(h));
            if inside != image.contains(&v) {
                return Err(format!("vertex {v}: in ∩W = {inside}, in image = {}", image.contains(&v)));
            }
        }
        for a in 0..self.sub.vertex_count() {
            for b in 0..self.sub.vertex_count() {
                let (x, y) = (self.embedding[a], self.embedding[b]);
                if c.distance(x, y) != self.sub.distance(a, b) {
                    return Err(format!("embedding of sub-vertices {a},{b} is not isometric"));
                }
            }
        }
        for &x in &self.embedding {
            if self.projection[x] != x {
                return Err(format!("ρ moves image vertex {x}"));
            }
        }
        Ok(())
    }
}

/// Up-closure of a halfspace set (consistent whenever the seeds lie in one
/// ultrafilter).
pub fn up_closure(p: &Pocset, seeds: &[Halfspace]) -> Vec<Halfspace> {
    let mut s = BitSet::new(p.n_halfspaces());
    for &h in seeds {
        s.insert(h);
        s.union_with(p.above(h));
    }
    s.iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn cc(p: &Pocset) -> CubeComplex {
        CubeComplex::build(p).unwrap()
    }

    /// Rotation of tripod(ℓ) sending leg x → y → z → x.
    fn tripod_rotation(l: usize) -> Automorphism {
        let perm: Vec<usize> = (0..3 * l).map(|i| ((i / l + 1) % 3) * l + i % l).collect();
        Automorphism::from_relabel(&perm, &BitSet::new(3 * l))
    }

    #[test]
    fn validate_examples() {
        let sq = generate::cube(2);
        assert!(validate_automorphism(&sq, &[2, 3, 0, 1]).is_ok());
        assert!(validate_automorphism(&sq, &[0, 1, 2, 3]).is_ok());
        let p2 = generate::path(2);
        assert!(matches!(validate_automorphism(&p2, &[2, 3, 0, 1]), Err(ActionError::BreaksOrder { .. })));
        assert!(matches!(validate_automorphism(&sq, &[0, 0, 2, 3]), Err(ActionError::NotBijection { .. })));
        assert!(matches!(validate_automorphism(&sq, &[0, 1, 3, 2]).map(|_| ()), Ok(())));
        assert!(matches!(validate_automorphism(&sq, &[1, 2, 3, 0]), Err(ActionError::BreaksInvolution { .. })));
        assert!(validate_automorphism(&generate::tripod(2), tripod_rotation(2).perm()).is_ok());
    }

    #[test]
    fn classify_examples() {
        let sq = generate::cube(2);
        let rot180 = validate_automorphism(&sq, &[1, 0, 3, 2]).unwrap();
        assert_eq!(classify(&sq, &rot180, 0), Classification::Flips);
        let id = Automorphism::identity(4);
        assert_eq!(classify(&sq, &id, 0), Classification::Neither);
        for g in automorphisms(&generate::tripod(2), 100) {
            for h in 0..12 {
                assert_ne!(classify(&generate::tripod(2), &g, h), Classification::Skewers);
            }
        }
    }

    #[test]
    fn strong_separation_examples() {
        assert!(strongly_separated(&generate::path(2), 0, 1).unwrap());
        assert!(!strongly_separated(&generate::grid(2, 2), 0, 1).unwrap());
        assert!(strongly_separated(&generate::tripod(1), 0, 1).unwrap());
        assert!(!strongly_separated(&generate::cube(2), 0, 1).unwrap());
        assert!(strongly_separated(&generate::cube(2), 0, 0).is_err());
    }

    #[test]
    fn facing_triple_examples() {
        let a = |leg| generate::tripod_away(1, leg, 0);
        assert_eq!(facing_triples(&generate::tripod(1)), vec![[a(0), a(1), a(2)]]);
        assert!(facing_triples(&generate::cube(2)).is_empty());
        assert!(facing_triples(&generate::grid(2, 3)).is_empty());
    }

    #[test]
    fn n_disjoint_examples() {
        let t1 = generate::tripod(1);
        let (hx, hy) = (generate::tripod_away(1, 0, 0), generate::tripod_away(1, 1, 0));
        // h_x ⊂ h_y* is already tight, so there is no intermediate halfspace
        assert_eq!(n_disjoint(&t1, hx, hy, 1).unwrap(), (false, vec![]));
        assert!(!n_disjoint(&t1, hx, hy, 2).unwrap().0);
        assert!(n_disjoint(&t1, hx, hy, 0).unwrap().0);
        let t2 = generate::tripod(2);
        let (bx, by) = (generate::tripod_away(2, 0, 1), generate::tripod_away(2, 1, 1));
        let (ax, ay) = (generate::tripod_away(2, 0, 0), generate::tripod_away(2, 1, 0));
        assert_eq!(n_disjoint(&t2, bx, by, 2).unwrap(), (true, vec![ax, partner(ay)]));
        assert!(matches!(n_disjoint(&t2, bx, partner(by), 1), Err(ActionError::NotFacing { .. })));
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(irreducible_decomposition(&generate::grid(2, 3)), vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(irreducible_decomposition(&generate::cube(3)), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(irreducible_decomposition(&generate::tripod(1)).len(), 1);
    }

    #[test]
    fn essential_examples() {
        let t = cc(&generate::tripod(1));
        let leaf = t.find_label("011").unwrap();
        let spec = ActionSpec::new(vec![tripod_rotation(1)], Some(leaf));
        assert_eq!(orbit(&t, &spec.generators, leaf, 12).len(), 3);
        assert_eq!(essential_at_scale(&t, &spec, 0).essential, vec![0, 1, 2]);
        assert!(essential_at_scale(&t, &spec, 1).essential.is_empty());
        let trivial = ActionSpec::new(vec![], Some(leaf));
        assert!(essential_at_scale(&t, &trivial, 0).essential.is_empty());
        let center = t.find_label("111").unwrap();
        let (base, dirs) = invariant_cube(&t, &spec.generators).unwrap();
        assert!(dirs.is_empty());
        assert_eq!(t.find(&base), Some(center));
    }

    #[test]
    fn lift_examples() {
        let sq = cc(&generate::cube(2));
        let le = lift_embed(&sq, &[0]).unwrap();
        le.check(&sq).unwrap();
        let mut image: Vec<String> = le.embedding.iter().map(|&v| sq.vertex(v).label()).collect();
        image.sort();
        assert_eq!(image, vec!["10", "11"]);
        assert_eq!(le.lift.pairs(), &[1]);
        let id = lift_embed(&sq, &[]).unwrap();
        assert_eq!(id.embedding, vec![0, 1, 2, 3]);
        assert_eq!(id.projection, vec![0, 1, 2, 3]);
        let p2 = cc(&generate::path(2));
        assert!(matches!(lift_embed(&p2, &[2]), Err(ActionError::InconsistentW(_))));
        assert!(lift_embed(&p2, &[2, 0]).is_ok());
    }

    #[test]
    fn projections_compose() {
        let g = cc(&generate::grid(2, 3));
        let small = lift_embed(&g, &up_closure(g.pocset(), &[2])).unwrap();
        let big = lift_embed(&g, &up_closure(g.pocset(), &[2, 8])).unwrap();
        for v in 0..g.vertex_count() {
            assert_eq!(small.projection[big.projection[v]], big.projection[v]);
            assert_eq!(big.projection[small.projection[v]], big.projection[v]);
        }
    }
}
