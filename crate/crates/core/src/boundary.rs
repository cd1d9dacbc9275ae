//! Appendix B at desk scale: inseparable closures, UBS window predicates and
//! the transfer character on an exactly representable universe.

use crate::action::facing_triples;
use crate::pocset::{hyperplane_of, Hyperplane, Pocset};
use std::collections::BTreeSet;
use thiserror::Error;

/// Whether `ŵ` separates `ĥ` and `k̂`: `h ⊊ w` and `k ⊊ w*` for some orientations.
pub fn separates(p: &Pocset, w: Hyperplane, h: Hyperplane, k: Hyperplane) -> bool {
    if w == h || w == k || h == k {
        return false;
    }
    [2 * w, 2 * w + 1].iter().any(|&ws| {
        [2 * h, 2 * h + 1].iter().any(|&hs| p.lt(hs, ws))
            && [2 * k, 2 * k + 1].iter().any(|&ks| p.lt(ks, ws ^ 1))
    })
}

/// Least superset of `v` containing every separator of two of its members.
pub fn inseparable_closure(p: &Pocset, v: &[Hyperplane]) -> Vec<Hyperplane> {
    let mut set: BTreeSet<Hyperplane> = v.iter().copied().collect();
    loop {
        let members: Vec<Hyperplane> = set.iter().copied().collect();
        let added: Vec<Hyperplane> = (0..p.n_pairs())
            .filter(|w| !set.contains(w))
            .filter(|&w| members.iter().any(|&h| members.iter().any(|&k| separates(p, w, h, k))))
            .collect();
        if added.is_empty() {
            return members;
        }
        set.extend(added);
    }
}

/// UBS predicates on a finite window; each failure carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UbsReport {
    /// `(separator, a, b)` with the separator outside `U`.
    pub inseparable: Result<(), (Hyperplane, Hyperplane, Hyperplane)>,
    /// A hyperplane both of whose sides hold at least `|U|/2` members.
    pub unidirectional: Result<(), Hyperplane>,
    pub facing_triple_free: Result<(), [Hyperplane; 3]>,
    /// Set when `U` is empty and all flags hold vacuously.
    pub empty_warning: bool,
}

impl UbsReport {
    pub fn all_pass(&self) -> bool {
        self.inseparable.is_ok() && self.unidirectional.is_ok() && self.facing_triple_free.is_ok()
    }
}

/// Infinitude is not decidable on a window, so only the other three UBS
/// conditions are checked. "Unidirectional" reads "some side holds strictly
/// fewer than `|U|/2` members of `U`".
pub fn ubs_window_check(p: &Pocset, u: &[Hyperplane]) -> UbsReport {
    let set: BTreeSet<Hyperplane> = u.iter().copied().collect();
    let members: Vec<Hyperplane> = set.iter().copied().collect();
    let inseparable = (0..p.n_pairs())
        .filter(|w| !set.contains(w))
        .find_map(|w| {
            members.iter().find_map(|&a| members.iter().find(|&&b| separates(p, w, a, b)).map(|&b| (w, a, b)))
        })
        .map_or(Ok(()), Err);
    let in_side = |side: usize, k: Hyperplane| p.lt(2 * k, side) || p.lt(2 * k + 1, side);
    let unidirectional = members
        .iter()
        .copied()
        .find(|&h| {
            [2 * h, 2 * h + 1]
                .iter()
                .all(|&side| 2 * members.iter().filter(|&&k| k != h && in_side(side, k)).count() >= members.len())
        })
        .map_or(Ok(()), Err);
    let facing_triple_free = facing_triples(p)
        .into_iter()
        .map(|t| t.map(hyperplane_of))
        .find(|t| t.iter().all(|h| set.contains(h)))
        .map_or(Ok(()), Err);
    UbsReport { inseparable, unidirectional, facing_triple_free, empty_warning: set.is_empty() }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("M is not commensurated by g: ray {ray} has different tails in M and g⁻¹M")]
    NotRepresentable { ray: usize },
    #[error("ray permutation is not a bijection on {0} rays")]
    BadPermutation(usize),
    #[error("ray {ray} out of range (universe has {rays} rays)")]
    RayOutOfRange { ray: usize, rays: usize },
    #[error("set and element disagree on the number of rays")]
    RayCountMismatch,
}

/// Subset of one ray `Z`: `neg` for `i < 0`, `pos` for `i ≥ 0`, toggled on
/// the finite `exceptions`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RaySet {
    pub neg: bool,
    pub pos: bool,
    pub exceptions: BTreeSet<i64>,
}

impl RaySet {
    pub fn contains(&self, i: i64) -> bool {
        (if i >= 0 { self.pos } else { self.neg }) ^ self.exceptions.contains(&i)
    }

    /// Radius outside which membership equals the tail constant.
    fn reach(&self) -> i64 {
        self.exceptions.iter().map(|e| e.abs() + 1).max().unwrap_or(0) + 1
    }
}

/// A set in the universe `{rays} × Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSet {
    pub rays: Vec<RaySet>,
}

impl ChainSet {
    pub fn contains(&self, r: usize, i: i64) -> bool {
        self.rays[r].contains(i)
    }

    /// Adds or removes finitely many points.
    pub fn toggled(&self, points: &[(usize, i64)]) -> ChainSet {
        let mut out = self.clone();
        for &(r, i) in points {
            let ex = &mut out.rays[r].exceptions;
            if !ex.remove(&i) {
                ex.insert(i);
            }
        }
        out
    }
}

/// `g(r, i) = (π(r), i + s_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainElement {
    pub perm: Vec<usize>,
    pub shift: Vec<i64>,
}

impl ChainElement {
    pub fn new(perm: Vec<usize>, shift: Vec<i64>) -> Result<Self, UniverseError> {
        let m = perm.len();
        let mut seen = vec![false; m];
        for &r in &perm {
            if r >= m || std::mem::replace(&mut seen[r], true) {
                return Err(UniverseError::BadPermutation(m));
            }
        }
        if shift.len() != m {
            return Err(UniverseError::RayCountMismatch);
        }
        Ok(ChainElement { perm, shift })
    }

    pub fn identity(m: usize) -> Self {
        ChainElement { perm: (0..m).collect(), shift: vec![0; m] }
    }

    pub fn apply(&self, r: usize, i: i64) -> (usize, i64) {
        (self.perm[r], i + self.shift[r])
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainElement) -> ChainElement {
        let m = self.perm.len();
        ChainElement {
            perm: (0..m).map(|r| self.perm[other.perm[r]]).collect(),
            shift: (0..m).map(|r| other.shift[r] + self.shift[other.perm[r]]).collect(),
        }
    }

    pub fn inverse(&self) -> ChainElement {
        let m = self.perm.len();
        let mut perm = vec![0; m];
        let mut shift = vec![0; m];
        for r in 0..m {
            perm[self.perm[r]] = r;
            shift[self.perm[r]] = -self.shift[r];
        }
        ChainElement { perm, shift }
    }
}

/// Rays plus a represented set, as read from a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZChainUniverse {
    pub n_rays: usize,
    pub set: ChainSet,
    pub elements: Vec<ChainElement>,
}

/// `tr_M(g) = #(M ∖ g⁻¹M) − #(g⁻¹M ∖ M)`, exactly.
pub fn transfer_character(g: &ChainElement, m: &ChainSet) -> Result<i64, UniverseError> {
    let rays = m.rays.len();
    if g.perm.len() != rays {
        return Err(UniverseError::RayCountMismatch);
    }
    let mut total = 0i64;
    for r in 0..rays {
        let (target, s) = (&m.rays[g.perm[r]], g.shift[r]);
        let own = &m.rays[r];
        // (r, i) ∈ g⁻¹M iff (π(r), i + s) ∈ M
        if own.neg != target.neg || own.pos != target.pos {
            return Err(UniverseError::NotRepresentable { ray: r });
        }
        // outside this window both sets follow the same tail constant
        let reach = own.reach().max(target.reach() + s.abs()) + s.abs();
        for i in -reach..=reach {
            match (own.contains(i), target.contains(i + s)) {
                (true, false) => total += 1,
                (false, true) => total -= 1,
                _ => {}
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn closure_examples() {
        assert_eq!(inseparable_closure(&generate::path(3), &[0, 2]), vec![0, 1, 2]);
        assert_eq!(inseparable_closure(&generate::path(3), &[1]), vec![1]);
        assert_eq!(inseparable_closure(&generate::cube(2), &[0, 1]), vec![0, 1]);
    }

    #[test]
    fn ubs_examples() {
        let r = ubs_window_check(&generate::path(5), &[0, 1, 2, 3, 4]);
        assert!(r.all_pass() && !r.empty_warning);
        let r = ubs_window_check(&generate::tripod(1), &[0, 1, 2]);
        assert_eq!(r.facing_triple_free, Err([0, 1, 2]));
        let r = ubs_window_check(&generate::path(3), &[]);
        assert!(r.all_pass() && r.empty_warning);
        let r = ubs_window_check(&generate::path(3), &[0, 2]);
        assert_eq!(r.inseparable, Err((1, 0, 2)));
    }

    fn tail() -> ChainSet {
        ChainSet { rays: vec![RaySet { neg: false, pos: true, exceptions: BTreeSet::new() }] }
    }

    #[test]
    fn transfer_examples() {
        let g = ChainElement::new(vec![0], vec![1]).unwrap();
        assert_eq!(transfer_character(&g, &tail()), Ok(-1));
        assert_eq!(transfer_character(&ChainElement::identity(1), &tail()), Ok(0));
        let m2 = tail().toggled(&[(0, -5)]);
        assert_eq!(transfer_character(&g, &m2), Ok(-1));
        for k in -4..=4 {
            let gk = ChainElement::new(vec![0], vec![k]).unwrap();
            assert_eq!(transfer_character(&gk, &tail()), Ok(-k));
        }
        // a finite set: tr ≡ 0
        let fin = ChainSet { rays: vec![RaySet { neg: false, pos: false, exceptions: [1, 2, 7].into() }] };
        assert_eq!(transfer_character(&g, &fin), Ok(0));
        let swap = ChainElement::new(vec![1, 0], vec![0, 0]).unwrap();
        let lopsided = ChainSet { rays: vec![RaySet::default(), RaySet { neg: false, pos: true, exceptions: BTreeSet::new() }] };
        assert_eq!(transfer_character(&swap, &lopsided), Err(UniverseError::NotRepresentable { ray: 0 }));
    }

    #[test]
    fn composition_and_inverse() {
        let g = ChainElement::new(vec![1, 0], vec![2, -1]).unwrap();
        let h = ChainElement::new(vec![1, 0], vec![0, 3]).unwrap();
        for (r, i) in [(0, 0), (1, -4), (0, 9)] {
            let (r1, i1) = h.apply(r, i);
            assert_eq!(g.compose(&h).apply(r, i), g.apply(r1, i1));
            let (r2, i2) = g.apply(r, i);
            assert_eq!(g.inverse().apply(r2, i2), (r, i));
        }
    }
}
