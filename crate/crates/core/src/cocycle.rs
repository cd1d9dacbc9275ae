//! The median cocycle: `ω_{u,v} = 1_[[u,v]] − 1_[[v,u]]` on tightly nested
//! sequences and its coboundary `c = ω₂₃ − ω₁₃ + ω₁₂`.

use crate::action::{irreducible_decomposition, LiftingDecomposition};
use crate::bits::BitSet;
use crate::complex::{ComplexError, CubeComplex, Vertex};
use crate::pocset::{hyperplane_of, Halfspace, Hyperplane};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CocycleError {
    #[error("bad exponent {0}: p must be a finite number ≥ 1")]
    BadExponent(f64),
    #[error("sequence length must be at least 1")]
    ZeroLength,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A tightly nested sequence `h₁ ⊋ h₂ ⊋ … ⊋ hₙ`, outermost first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NestedSeq(Vec<Halfspace>);

impl NestedSeq {
    pub fn new(halfspaces: Vec<Halfspace>) -> Self {
        NestedSeq(halfspaces)
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(hₙ*, …, h₁*)`, again tightly nested.
    pub fn reverse_dual(&self) -> NestedSeq {
        NestedSeq(self.0.iter().rev().map(|h| h ^ 1).collect())
    }

    /// Whether consecutive terms are tightly nested in the pocset.
    pub fn is_valid(&self, p: &crate::pocset::Pocset) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|&h| h < p.n_halfspaces())
            && self.0.windows(2).all(|w| p.tightly_nested(w[0], w[1]))
    }
}

/// A finitely supported integer function on tightly nested sequences.
/// Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: BTreeMap<NestedSeq, i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Norms {
    pub support: usize,
    /// Exact ℓ¹ norm.
    pub l1: i64,
    /// ℓᵖ norm for the requested exponent.
    pub lp: f64,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, s: &NestedSeq) -> i64 {
        self.entries.get(s).copied().unwrap_or(0)
    }

    pub fn add(&mut self, s: NestedSeq, value: i64) {
        if value == 0 {
            return;
        }
        let e = self.entries.entry(s.clone()).or_insert(0);
        *e += value;
        if *e == 0 {
            self.entries.remove(&s);
        }
    }

    /// `self + factor · other`.
    pub fn add_scaled(&mut self, other: &SparseVec, factor: i64) {
        for (s, &x) in &other.entries {
            self.add(s.clone(), factor * x);
        }
    }

    pub fn scaled(&self, factor: i64) -> SparseVec {
        let mut out = SparseVec::new();
        out.add_scaled(self, factor);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NestedSeq, i64)> {
        self.entries.iter().map(|(s, &x)| (s, x))
    }

    pub fn support(&self) -> BTreeSet<NestedSeq> {
        self.entries.keys().cloned().collect()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norms(&self, p: f64) -> Result<Norms, CocycleError> {
        if !p.is_finite() || p < 1.0 {
            return Err(CocycleError::BadExponent(p));
        }
        let l1 = self.entries.values().map(|x| x.abs()).sum::<i64>();
        let lp = if p == 1.0 {
            l1 as f64
        } else {
            self.entries.values().map(|&x| (x.abs() as f64).powf(p)).sum::<f64>().powf(1.0 / p)
        };
        Ok(Norms { support: self.support_size(), l1, lp })
    }

    /// One line `h₁,…,hₙ value` per entry, sorted lexicographically by ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, x) in &self.entries {
            let ids: Vec<String> = s.0.iter().map(|h| h.to_string()).collect();
            writeln!(out, "{} {}", ids.join(","), x).expect("writing to a String");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<SparseVec, CocycleError> {
        let mut v = SparseVec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| CocycleError::Parse { line: i + 1, msg: msg.to_string() };
            let (ids, value) = line.split_once(' ').ok_or_else(|| err("expected `ids value`"))?;
            let ids = ids
                .split(',')
                .map(|t| t.parse::<Halfspace>().map_err(|_| err("bad halfspace id")))
                .collect::<Result<Vec<_>, _>>()?;
            let value = value.trim().parse::<i64>().map_err(|_| err("bad value"))?;
            v.add(NestedSeq(ids), value);
        }
        Ok(v)
    }

    /// Applies a halfspace map to every sequence (the map must be injective).
    pub fn map_ids(&self, f: impl Fn(Halfspace) -> Halfspace) -> SparseVec {
        let mut out = SparseVec::new();
        for (s, x) in self.iter() {
            out.add(NestedSeq(s.0.iter().map(|&h| f(h)).collect()), x);
        }
        out
    }
}

/// `[[u, v]]⁽ⁿ⁾`: tightly nested sequences whose terms all contain `v` but not `u`.
pub fn nested_in_interval(c: &CubeComplex, u: Vertex, v: Vertex, n: usize) -> Vec<NestedSeq> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let target = c.vertex(v);
    let mut cur = Vec::with_capacity(n);
    fn walk(c: &CubeComplex, target: &crate::pocset::Ultrafilter, n: usize, cur: &mut Vec<Halfspace>, out: &mut Vec<NestedSeq>) {
        if cur.len() == n {
            out.push(NestedSeq(cur.clone()));
            return;
        }
        let last = *cur.last().expect("non-empty");
        for &k in c.tight_covers(last) {
            // k ⊊ last and last ∌ u, so only v ∈ k needs checking
            if target.contains(k) {
                cur.push(k);
                walk(c, target, n, cur, out);
                cur.pop();
            }
        }
    }
    for h in c.separating(u, v) {
        cur.push(h);
        walk(c, target, n, &mut cur, &mut out);
        cur.pop();
    }
    out.sort();
    out
}

pub fn omega(c: &CubeComplex, u: Vertex, v: Vertex, n: usize) -> SparseVec {
    let mut out = SparseVec::new();
    for s in nested_in_interval(c, u, v, n) {
        out.add(s, 1);
    }
    for s in nested_in_interval(c, v, u, n) {
        out.add(s, -1);
    }
    out
}

/// `c⁽ⁿ⁾(u₁, u₂, u₃) = ω_{u₂,u₃} − ω_{u₁,u₃} + ω_{u₁,u₂}`.
pub fn median_cocycle(c: &CubeComplex, u1: Vertex, u2: Vertex, u3: Vertex, n: usize) -> SparseVec {
    let mut out = omega(c, u2, u3, n);
    out.add_scaled(&omega(c, u1, u3, n), -1);
    out.add_scaled(&omega(c, u1, u2, n), 1);
    debug_assert!(out.iter().all(|(_, x)| x == 1 || x == -1));
    out
}

/// One of the six sets `[[u_a, u_c]] ∖ ([[u_a, u_b]] ∪ [[u_b, u_c]])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPiece {
    /// `(a, b, c)` as 1-based positions in the triple.
    pub label: (usize, usize, usize),
    /// Value of the cocycle on this set: `+1` when `(a, c)` is a cyclic pair.
    pub sign: i64,
    pub seqs: BTreeSet<NestedSeq>,
}

pub fn support_decomposition(c: &CubeComplex, u1: Vertex, u2: Vertex, u3: Vertex, n: usize) -> Vec<SupportPiece> {
    let us = [u1, u2, u3];
    let mut pieces = Vec::with_capacity(6);
    for (a, c_) in [(1, 2), (2, 3), (3, 1), (2, 1), (3, 2), (1, 3)] {
        let b = 6 - a - c_;
        let set = |x: usize, y: usize| -> BTreeSet<NestedSeq> {
            nested_in_interval(c, us[x - 1], us[y - 1], n).into_iter().collect()
        };
        let mut seqs = set(a, c_);
        for s in set(a, b).iter().chain(set(b, c_).iter()) {
            seqs.remove(s);
        }
        let cyclic = matches!((a, c_), (1, 2) | (2, 3) | (3, 1));
        pieces.push(SupportPiece { label: (a, b, c_), sign: if cyclic { 1 } else { -1 }, seqs });
    }
    pieces
}

/// Sum of the six pieces with their signs, failing if two pieces overlap.
pub fn assemble_pieces(pieces: &[SupportPiece]) -> Option<SparseVec> {
    let mut seen = BTreeSet::new();
    let mut out = SparseVec::new();
    for piece in pieces {
        for s in &piece.seqs {
            if !seen.insert(s.clone()) {
                return None;
            }
            out.add(s.clone(), piece.sign);
        }
    }
    Some(out)
}

/// Restriction to `𝔥_W⁽ⁿ⁾`: keeps the sequences lying in `𝔥_W` and renames
/// them into the sub-pocset's ids.
pub fn restrict(v: &SparseVec, l: &LiftingDecomposition) -> SparseVec {
    let mut out = SparseVec::new();
    for (s, x) in v.iter() {
        let mapped: Option<Vec<Halfspace>> = s.halfspaces().iter().map(|&h| l.to_sub(h)).collect();
        if let Some(m) = mapped {
            out.add(NestedSeq(m), x);
        }
    }
    out
}

/// Factor-wise cocycles of a product complex.
#[derive(Clone, Debug)]
pub struct ProductSplit {
    /// Hyperplanes of each irreducible factor, in the whole pocset's ids.
    pub factors: Vec<Vec<Hyperplane>>,
    /// The factor cocycle at the projected triple, in the factor's own ids.
    pub pieces: Vec<SparseVec>,
    /// The pieces mapped back to the whole pocset and summed.
    pub direct_sum: SparseVec,
    /// `c` of the whole complex at the triple.
    pub whole: SparseVec,
}

impl ProductSplit {
    pub fn agrees(&self) -> bool {
        self.direct_sum == self.whole
    }
}

pub fn product_split(c: &CubeComplex, triple: (Vertex, Vertex, Vertex), n: usize) -> Result<ProductSplit, CocycleError> {
    let factors = irreducible_decomposition(c.pocset());
    let mut pieces = Vec::with_capacity(factors.len());
    let mut direct_sum = SparseVec::new();
    for pairs in &factors {
        let fc = CubeComplex::build(&c.pocset().restrict(pairs))?;
        let project = |v: Vertex| -> Vertex {
            let bits = BitSet::from_indices(pairs.len(), (0..pairs.len()).filter(|&i| c.vertex(v).bits().contains(pairs[i])));
            fc.find(&bits).expect("projection of a vertex is a vertex of the factor")
        };
        let piece = median_cocycle(&fc, project(triple.0), project(triple.1), project(triple.2), n);
        direct_sum.add_scaled(&piece.map_ids(|h| 2 * pairs[hyperplane_of(h)] + (h & 1)), 1);
        pieces.push(piece);
    }
    let whole = median_cocycle(c, triple.0, triple.1, triple.2, n);
    Ok(ProductSplit { factors, pieces, direct_sum, whole })
}

/// `c(u₂,u₃,u₄) − c(u₁,u₃,u₄) + c(u₁,u₂,u₄) − c(u₁,u₂,u₃)`; zero for a cocycle.
pub fn coboundary(c: &CubeComplex, u: [Vertex; 4], n: usize) -> SparseVec {
    let mut out = median_cocycle(c, u[1], u[2], u[3], n);
    out.add_scaled(&median_cocycle(c, u[0], u[2], u[3], n), -1);
    out.add_scaled(&median_cocycle(c, u[0], u[1], u[3], n), 1);
    out.add_scaled(&median_cocycle(c, u[0], u[1], u[2], n), -1);
    out
}

/// `6(n−1)Dⁿ`, the support bound of the boundedness proposition.
pub fn support_bound(n: usize, dimension: usize) -> u128 {
    6 * (n as u128 - 1) * (dimension as u128).pow(n as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::LiftingDecomposition;
    use crate::generate;

    #[test]
    fn omega_growth_is_linear_not_pth_power() {
        // path(4), n = 2: d∞ = 4 and ‖ω‖_p^p = 6 for every p, which meets
        // 2(d∞ − n + 1) = 6 but not 2(d∞ − n + 1)² = 18
        let c = CubeComplex::build(&generate::path(4)).unwrap();
        let w = omega(&c, 0, 4, 2);
        assert_eq!(c.interval_embedding(0, 4).d_inf, 4);
        assert_eq!(w.support_size(), 6);
        assert!((w.norms(2.0).unwrap().lp.powi(2) - 6.0).abs() < 1e-9);
    }

    fn cc(p: &crate::pocset::Pocset) -> CubeComplex {
        CubeComplex::build(p).unwrap()
    }

    fn seq(v: &[usize]) -> NestedSeq {
        NestedSeq::new(v.to_vec())
    }

    /// tripod(ℓ) vertex on leg `leg` at distance `dist` from the center.
    fn tripod_vertex(c: &CubeComplex, l: usize, leg: usize, dist: usize) -> Vertex {
        let bits = BitSet::from_indices(3 * l, (0..3 * l).filter(|&i| !(i / l == leg && i % l < dist)));
        c.find(&bits).unwrap()
    }

    #[test]
    fn omega_examples() {
        let p2 = cc(&generate::path(2));
        let (v0, v2) = (p2.find_label("00").unwrap(), p2.find_label("11").unwrap());
        let w = omega(&p2, v0, v2, 1);
        assert_eq!(w.to_text(), "0 1\n1 -1\n2 1\n3 -1\n");
        assert!(omega(&p2, v0, v0, 1).is_zero());
        assert_eq!(omega(&p2, v2, v0, 1), w.scaled(-1));
        assert_eq!(w.norms(1.0).unwrap().l1, 4);
    }

    #[test]
    fn cocycle_examples() {
        let t1 = cc(&generate::tripod(1));
        let leaves: Vec<_> = (0..3).map(|leg| tripod_vertex(&t1, 1, leg, 1)).collect();
        assert!(median_cocycle(&t1, leaves[0], leaves[1], leaves[2], 1).is_zero());

        let t2 = cc(&generate::tripod(2));
        let leaves: Vec<_> = (0..3).map(|leg| tripod_vertex(&t2, 2, leg, 2)).collect();
        let c = median_cocycle(&t2, leaves[0], leaves[1], leaves[2], 2);
        // a_x = away-side halfspace at depth 0 on leg x; a_x* is its even partner
        let a_x_star = generate::tripod_away(2, 0, 0) ^ 1;
        let a_y = generate::tripod_away(2, 1, 0);
        assert_eq!(c.get(&seq(&[a_x_star, a_y])), 1);
        let n = c.norms(1.0).unwrap();
        assert_eq!((n.support, n.l1), (6, 6));
        assert!(n.support as u128 <= support_bound(2, 1));
        assert!(median_cocycle(&t2, leaves[0], leaves[0], leaves[1], 2).is_zero());
    }

    #[test]
    fn six_sets() {
        let sq = cc(&generate::cube(2));
        let l = |s| sq.find_label(s).unwrap();
        let pieces = support_decomposition(&sq, l("00"), l("10"), l("11"), 1);
        assert!(pieces.iter().all(|p| p.seqs.is_empty()));
        let t2 = cc(&generate::tripod(2));
        let leaves: Vec<_> = (0..3).map(|leg| tripod_vertex(&t2, 2, leg, 2)).collect();
        let pieces = support_decomposition(&t2, leaves[0], leaves[1], leaves[2], 2);
        let total = assemble_pieces(&pieces).unwrap();
        assert_eq!(total.support_size(), 6);
        assert_eq!(total, median_cocycle(&t2, leaves[0], leaves[1], leaves[2], 2));
        let pieces = support_decomposition(&t2, leaves[0], leaves[0], leaves[2], 2);
        assert!(pieces.iter().all(|p| p.seqs.is_empty()));
    }

    #[test]
    fn norm_errors_and_zero() {
        assert_eq!(SparseVec::new().norms(2.0).unwrap(), Norms { support: 0, l1: 0, lp: 0.0 });
        assert!(matches!(SparseVec::new().norms(0.5), Err(CocycleError::BadExponent(_))));
        assert!(SparseVec::new().norms(f64::NAN).is_err());
    }

    #[test]
    fn text_round_trip() {
        let t2 = cc(&generate::tripod(2));
        let leaves: Vec<_> = (0..3).map(|leg| tripod_vertex(&t2, 2, leg, 2)).collect();
        let c = median_cocycle(&t2, leaves[0], leaves[1], leaves[2], 2);
        assert_eq!(SparseVec::from_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn restriction_examples() {
        let sq = cc(&generate::cube(2));
        let l = |s| sq.find_label(s).unwrap();
        // W = {h} with h the even halfspace of pair 0: the edge {10, 11}
        let lift = LiftingDecomposition::new(sq.pocset(), &[0]).unwrap();
        let edge = cc(lift.sub_pocset());
        let c = median_cocycle(&sq, l("10"), l("11"), l("10"), 1);
        let sub = median_cocycle(&edge, 0, 1, 0, 1);
        assert_eq!(restrict(&c, &lift), sub);
        let id = LiftingDecomposition::new(sq.pocset(), &[]).unwrap();
        let c = median_cocycle(&sq, l("00"), l("01"), l("11"), 1);
        assert_eq!(restrict(&c, &id), c);
        let e = cc(&generate::path(1));
        assert!(median_cocycle(&e, 0, 1, 0, 2).is_zero());
    }

    #[test]
    fn product_examples() {
        let g = cc(&generate::grid(2, 2));
        let (a, m, b) = (g.find_label("0000").unwrap(), g.find_label("1010").unwrap(), g.find_label("1111").unwrap());
        let split = product_split(&g, (a, m, b), 1).unwrap();
        assert_eq!(split.factors, vec![vec![0, 1], vec![2, 3]]);
        assert!(split.agrees());
        let sq = cc(&generate::cube(2));
        let l = |s| sq.find_label(s).unwrap();
        let split = product_split(&sq, (l("00"), l("10"), l("11")), 1).unwrap();
        assert!(split.pieces.iter().all(SparseVec::is_zero) && split.whole.is_zero());
        let p = cc(&generate::path(3));
        let split = product_split(&p, (0, 1, 3), 1).unwrap();
        assert_eq!(split.factors.len(), 1);
        assert!(split.agrees());
    }
}
