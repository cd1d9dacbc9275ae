//! Seeded invariant campaigns. Each check returns how many cases it ran and
//! the first violation, serialized as a reproducible document.

use crate::action::{
    automorphisms, classify, essential_at_scale, facing_triples, invariant_cube, irreducible_decomposition, lift_embed,
    n_disjoint, orbit, strongly_separated, up_closure, ActionSpec, Automorphism, Classification,
};
use crate::bits::BitSet;
use crate::boundary::{inseparable_closure, transfer_character, ubs_window_check, ChainElement, ChainSet, RaySet};
use crate::cocycle::{
    assemble_pieces, coboundary, median_cocycle, nested_in_interval, omega, product_split, restrict, support_bound,
    support_decomposition, NestedSeq, SparseVec,
};
use crate::complex::{from_median_graph, pocset_isomorphism, CubeComplex, Vertex};
use crate::doc::{measure_section, pocset_document};
use crate::generate;
use crate::measure::{balanced_partition, balanced_subcomplex, check_hmu_facts, push_set, terminal_elements, VertexMeasure};
use crate::pocset::{hyperplane_of, partner, Halfspace, Pocset, RelationKind};
use crate::tournament::{brute_force_transitive, high_outdegree_vertex, transitive_subtournament, Tournament};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// A failing case: what broke and a document reproducing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub description: String,
    pub document: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub cases: u64,
    pub failure: Option<Witness>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

struct Tally {
    name: &'static str,
    cases: u64,
    failure: Option<Witness>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, failure: None }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    /// Records one case; on the first failure builds the witness.
    fn case(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn done(self) -> Outcome {
        Outcome { name: self.name, cases: self.cases, failure: self.failure }
    }
}

fn witness(p: &Pocset, description: impl Into<String>, inputs: &str) -> Witness {
    witness_with(p, "", description, inputs)
}

/// The pocset, extra document `sections`, then `inputs` as comment lines.
fn witness_with(p: &Pocset, sections: &str, description: impl Into<String>, inputs: &str) -> Witness {
    let mut document = pocset_document(p);
    document.push_str(sections);
    for line in inputs.lines() {
        document.push_str("# ");
        document.push_str(line);
        document.push('\n');
    }
    Witness { description: description.into(), document }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Median closure of 3–8 random points of `{0,1}^k`, `3 ≤ k ≤ max_k`,
/// redrawn until it has between 4 and `max_vertices` vertices.
pub fn random_complex(rng: &mut ChaCha8Rng, max_k: usize, max_vertices: usize) -> CubeComplex {
    loop {
        let k = rng.gen_range(3..=max_k.max(3));
        let seeds = rng.gen_range(3..=8);
        let p = generate::random_median_closure(rng, k, seeds);
        if let Ok(c) = CubeComplex::build_capped(&p, max_vertices) {
            if c.vertex_count() >= 4 || max_vertices < 4 {
                return c;
            }
        }
    }
}

/// A random small factor: a tree, a path or a median closure.
fn random_factor(rng: &mut ChaCha8Rng) -> Pocset {
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(2..=5);
            generate::random_tree(rng, n)
        }
        1 => generate::path(rng.gen_range(1..=3)),
        _ => {
            let (k, seeds) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
            generate::random_median_closure(rng, k, seeds)
        }
    }
}

/// All `K`-tuples over `0..n` if there are at most `max`, else `max` random ones.
pub fn tuples<const K: usize>(rng: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<[usize; K]> {
    let total = (n as u128).checked_pow(K as u32).unwrap_or(u128::MAX);
    if total <= max as u128 {
        (0..total as usize)
            .map(|mut code| {
                std::array::from_fn(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
            })
            .collect()
    } else {
        (0..max).map(|_| std::array::from_fn(|_| rng.gen_range(0..n))).collect()
    }
}

fn fmt_tuple(t: &[usize]) -> String {
    t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Direct evaluation of `c⁽ⁿ⁾` over all of `𝔥⁽ⁿ⁾`, testing every term of
/// every sequence for membership.
pub fn brute_force_cocycle(c: &CubeComplex, u: [Vertex; 3], n: usize) -> SparseVec {
    let within = |s: &NestedSeq, a: Vertex, b: Vertex| {
        s.halfspaces().iter().all(|&h| c.vertex(b).contains(h) && !c.vertex(a).contains(h))
    };
    let omega_at = |s: &NestedSeq, a: Vertex, b: Vertex| i64::from(within(s, a, b)) - i64::from(within(s, b, a));
    let mut out = SparseVec::new();
    for s in c.pocset().tightly_nested_sequences(n) {
        let v = omega_at(&s, u[1], u[2]) - omega_at(&s, u[0], u[2]) + omega_at(&s, u[0], u[1]);
        out.add(s, v);
    }
    out
}

// ---------------------------------------------------------------- criteria

/// Criterion 1: `dc = 0` on sampled vertex 4-tuples.
pub fn check_cocycle_identity(rng: &mut ChaCha8Rng, complexes: usize, per_complex: usize, max_k: usize) -> Outcome {
    let mut t = Tally::new("cocycle identity dc = 0");
    for _ in 0..complexes {
        let c = random_complex(rng, max_k, 256);
        for q in tuples::<4>(rng, c.vertex_count(), per_complex) {
            for n in 1..=3 {
                let d = coboundary(&c, q, n);
                t.case(d.is_zero(), || {
                    witness(c.pocset(), "dc ≠ 0", &format!("tuple {} n {n}\n{}", fmt_tuple(&q), d.to_text()))
                });
            }
            if t.failed() {
                return t.done();
            }
        }
    }
    t.done()
}

/// Criteria 2 and 3: support bound and the six-set decomposition.
pub fn check_support(rng: &mut ChaCha8Rng, complexes: usize, per_complex: usize, max_k: usize) -> (Outcome, Outcome) {
    let mut bound = Tally::new("support bound |supp c| ≤ 6(n−1)Dⁿ");
    let mut six = Tally::new("six-set decomposition of supp c");
    for _ in 0..complexes {
        let c = random_complex(rng, max_k, 256);
        let dim = c.pocset().dimension();
        for tr in tuples::<3>(rng, c.vertex_count(), per_complex) {
            for n in [2, 3] {
                let v = median_cocycle(&c, tr[0], tr[1], tr[2], n);
                let limit = support_bound(n, dim);
                bound.case(v.support_size() as u128 <= limit, || {
                    witness(c.pocset(), format!("support {} > {limit}", v.support_size()), &format!("triple {} n {n}", fmt_tuple(&tr)))
                });
                let pieces = support_decomposition(&c, tr[0], tr[1], tr[2], n);
                let assembled = assemble_pieces(&pieces);
                six.case(assembled.as_ref() == Some(&v), || {
                    witness(c.pocset(), "six sets do not reproduce c with constant signs", &format!("triple {} n {n}", fmt_tuple(&tr)))
                });
            }
        }
        if bound.failed() || six.failed() {
            break;
        }
    }
    (bound.done(), six.done())
}

/// Criterion 4: `|[[u,v]]⁽ⁿ⁾| ≥ d∞ − (n−1)` when `d∞ > n`, plus the
/// embedding invariants and the growth of `ω` (exponent-one form).
pub fn check_interval_length(rng: &mut ChaCha8Rng, complexes: usize, max_k: usize) -> Outcome {
    let mut t = Tally::new("interval length |[[u,v]]⁽ⁿ⁾| ≥ d∞ − (n−1)");
    for _ in 0..complexes {
        let c = random_complex(rng, max_k, 128);
        let dim = c.pocset().dimension();
        for u in 0..c.vertex_count() {
            for v in 0..c.vertex_count() {
                if u == v {
                    continue;
                }
                let e = c.interval_embedding(u, v);
                let sep = c.separating(u, v);
                let longest = crate::complex::longest_chain(c.pocset(), &sep).len();
                t.case(e.chains.len() <= dim && e.d_inf == longest, || {
                    witness(c.pocset(), format!("embedding: {} chains (dim {dim}), d∞ {} vs longest chain {longest}", e.chains.len(), e.d_inf), &format!("pair {u},{v}"))
                });
                for n in 1..=3 {
                    if e.d_inf <= n {
                        continue;
                    }
                    let count = nested_in_interval(&c, u, v, n).len();
                    let norm = omega(&c, u, v, n).support_size();
                    t.case(count + n > e.d_inf && norm >= 2 * (e.d_inf - n + 1), || {
                        witness(c.pocset(), format!("|[[u,v]]| = {count}, ‖ω‖₁ = {norm}, d∞ = {}", e.d_inf), &format!("pair {u},{v} n {n}"))
                    });
                }
            }
            if t.failed() {
                return t.done();
            }
        }
    }
    t.done()
}

/// Criterion 5: `c` splits as the direct sum of factor cocycles.
pub fn check_product_split(rng: &mut ChaCha8Rng, complexes: usize, per_complex: usize) -> Outcome {
    let mut t = Tally::new("product decomposition c = ⊕ cᵢ");
    for _ in 0..complexes {
        let mut p = random_factor(rng);
        for _ in 0..rng.gen_range(1..=2) {
            p = p.product(&random_factor(rng));
        }
        let c = CubeComplex::build(&p).expect("small product");
        for tr in tuples::<3>(rng, c.vertex_count(), per_complex) {
            for n in 1..=3 {
                let split = product_split(&c, (tr[0], tr[1], tr[2]), n).expect("factors build");
                let cross_transverse = split.factors.iter().enumerate().all(|(i, a)| {
                    split.factors[i + 1..].iter().all(|b| a.iter().all(|&x| b.iter().all(|&y| p.transverse(x, y))))
                });
                t.case(split.agrees() && cross_transverse, || {
                    witness(&p, "direct sum of factor cocycles differs from c", &format!("triple {} n {n}", fmt_tuple(&tr)))
                });
            }
        }
        if t.failed() {
            break;
        }
    }
    t.done()
}

/// Criterion 6: restriction to a lifting decomposition, plus projection composition.
pub fn check_restriction(rng: &mut ChaCha8Rng, decompositions: usize, per_case: usize, max_k: usize) -> Outcome {
    let mut t = Tally::new("restriction to lifting decompositions");
    for _ in 0..decompositions {
        let c = random_complex(rng, max_k, 256);
        let u = c.vertex(rng.gen_range(0..c.vertex_count())).clone();
        let chosen: Vec<Halfspace> = u.halfspaces().filter(|_| rng.gen_bool(0.3)).collect();
        let w = up_closure(c.pocset(), &chosen);
        let le = lift_embed(&c, &w).expect("up-closure inside an ultrafilter is consistent");
        let check = le.check(&c);
        t.case(check.is_ok(), || witness(c.pocset(), check.clone().unwrap_err(), &format!("W {}", fmt_tuple(&w))));
        let sub = &le.sub;
        for tr in tuples::<3>(rng, sub.vertex_count(), per_case) {
            for n in 1..=3 {
                let whole = median_cocycle(&c, le.embedding[tr[0]], le.embedding[tr[1]], le.embedding[tr[2]], n);
                let own = median_cocycle(sub, tr[0], tr[1], tr[2], n);
                t.case(restrict(&whole, &le.lift) == own, || {
                    witness(c.pocset(), "restriction differs from the subcomplex cocycle", &format!("W {}\nsub triple {} n {n}", fmt_tuple(&w), fmt_tuple(&tr)))
                });
            }
        }
        // a larger W′ ⊇ W: both compositions of the projections equal ρ_{W′}
        let more: Vec<Halfspace> = u.halfspaces().filter(|_| rng.gen_bool(0.3)).chain(chosen.iter().copied()).collect();
        let w2 = up_closure(c.pocset(), &more);
        let big = lift_embed(&c, &w2).expect("consistent");
        let composes = (0..c.vertex_count()).all(|v| {
            le.projection[big.projection[v]] == big.projection[v] && big.projection[le.projection[v]] == big.projection[v]
        });
        t.case(composes, || witness(c.pocset(), "ρ_W ∘ ρ_W′ ≠ ρ_W′", &format!("W {}\nW' {}", fmt_tuple(&w), fmt_tuple(&w2))));
        if t.failed() {
            break;
        }
    }
    t.done()
}

/// 2-disjoint facing triples of halfspaces.
pub fn n_disjoint_triples(p: &Pocset, n: usize) -> Vec<[Halfspace; 3]> {
    facing_triples(p)
        .into_iter()
        .filter(|t| {
            [(0, 1), (0, 2), (1, 2)].iter().all(|&(a, b)| n_disjoint(p, t[a], t[b], n).map(|r| r.0).unwrap_or(false))
        })
        .collect()
}

fn nonvanishing_on(t: &mut Tally, c: &CubeComplex, rng: &mut ChaCha8Rng, per_triple: usize) -> bool {
    let triples = n_disjoint_triples(c.pocset(), 2);
    for h in triples.iter().take(8) {
        let sides: Vec<Vec<Vertex>> = h.iter().map(|&x| c.halfspace_vertices(x).iter().collect()).collect();
        for _ in 0..per_triple {
            let u: Vec<Vertex> = sides.iter().map(|s| *s.choose(rng).expect("halfspaces are nonempty")).collect();
            let v = median_cocycle(c, u[0], u[1], u[2], 2);
            t.case(!v.is_zero(), || {
                witness(c.pocset(), "c⁽²⁾ vanishes on a triple separated by a 2-disjoint facing triple", &format!("facing {}\ntriple {}", fmt_tuple(h), fmt_tuple(&u)))
            });
        }
    }
    !triples.is_empty()
}

/// Criterion 7: `c⁽²⁾ ≠ 0` on triples separated by 2-disjoint facing triples.
pub fn check_nonvanishing(rng: &mut ChaCha8Rng, random_complexes: usize, per_triple: usize) -> Outcome {
    let mut t = Tally::new("non-vanishing of c⁽²⁾ on separated triples");
    for l in 2..=5 {
        let c = CubeComplex::build(&generate::tripod(l)).expect("tripod");
        let found = nonvanishing_on(&mut t, &c, rng, per_triple);
        t.case(found, || witness(c.pocset(), "tripod has no 2-disjoint facing triple", ""));
    }
    let mut found = 0;
    let mut attempts = 0;
    while found < random_complexes && !t.failed() {
        attempts += 1;
        let (a, b) = (rng.gen_range(7..=16), rng.gen_range(3..=5));
        let p = match attempts % 3 {
            0 => generate::random_tree(rng, a),
            1 => generate::random_median_closure(rng, a.min(8), b),
            _ => generate::random_tree(rng, a.min(10)).product(&generate::path(b - 2)),
        };
        let Ok(c) = CubeComplex::build_capped(&p, 256) else { continue };
        if nonvanishing_on(&mut t, &c, rng, per_triple) {
            found += 1;
        }
        if attempts > 50 * random_complexes.max(1) {
            t.case(false, || Witness { description: format!("found only {found} complexes with 2-disjoint facing triples"), document: String::new() });
        }
    }
    t.done()
}

/// Criterion 8: metric and median checks on complexes with ≤ 12 vertices.
pub fn check_median_metric(rng: &mut ChaCha8Rng, complexes: usize) -> Outcome {
    let mut t = Tally::new("median and metric consistency");
    for _ in 0..complexes {
        let c = random_complex(rng, 6, 12);
        // ≤ 12 vertices keeps the exhaustive interval oracle cheap
        let dist = c.graph_distances();
        let n = c.vertex_count();
        for u in 0..n {
            for v in 0..n {
                let sep = c.separating(u, v);
                let dual: Vec<Halfspace> = {
                    let mut d: Vec<Halfspace> = c.separating(v, u).into_iter().map(partner).collect();
                    d.sort_unstable();
                    d
                };
                let e = c.interval_embedding(u, v);
                let coords = |w: Vertex| e.coordinates.iter().find(|(x, _)| *x == w).map(|(_, k)| k.clone());
                let l1 = |a: &[usize], b: &[usize]| a.iter().zip(b).map(|(x, y)| x.abs_diff(*y)).sum::<usize>();
                let iso = e.coordinates.iter().all(|(a, ca)| e.coordinates.iter().all(|(b, cb)| l1(ca, cb) == dist[*a][*b]));
                let ends = match (coords(u), coords(v)) {
                    (Some(a), Some(b)) => l1(&a, &b) == sep.len(),
                    _ => false,
                };
                t.case(dist[u][v] == sep.len() && sep == dual && iso && ends, || {
                    witness(c.pocset(), format!("d = {}, |[u,v]| = {}, [u,v] = [v,u]*: {}, isometric: {iso}", dist[u][v], sep.len(), sep == dual), &format!("pair {u},{v}"))
                });
            }
        }
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let m = c.median(u, v, w);
                    let oracle = c.median_by_intervals(u, v, w);
                    let sym = [c.median(v, u, w), c.median(w, v, u), c.median(u, w, v)].iter().all(|&x| x == m);
                    t.case(oracle == vec![m] && sym && c.median(u, u, v) == u, || {
                        witness(c.pocset(), format!("median {m} vs interval intersection {oracle:?}"), &format!("triple {u},{v},{w}"))
                    });
                }
            }
        }
        if let Some((a, b)) = c.is_interval() {
            let facing = facing_triples(c.pocset());
            let family = max_facing_family(c.pocset());
            let dim = c.pocset().dimension();
            t.case(facing.is_empty() && family <= 2 * dim && c.interval_vertices(a, b).count() == n, || {
                witness(c.pocset(), format!("interval complex with {} facing triples, facing family {family} > 2·{dim}", facing.len()), "")
            });
        }
        if t.failed() {
            break;
        }
    }
    t.done()
}

/// Largest family of pairwise disjoint halfspaces.
pub fn max_facing_family(p: &Pocset) -> usize {
    let n = p.n_halfspaces();
    let facing = |a: Halfspace, b: Halfspace| hyperplane_of(a) != hyperplane_of(b) && p.kind(a, b) == RelationKind::Facing;
    fn grow(cur: &mut Vec<Halfspace>, from: Halfspace, n: usize, facing: &dyn Fn(Halfspace, Halfspace) -> bool, best: &mut usize) {
        *best = (*best).max(cur.len());
        for h in from..n {
            if cur.iter().all(|&k| facing(h, k)) {
                cur.push(h);
                grow(cur, h + 1, n, facing, best);
                cur.pop();
            }
        }
    }
    let mut best = 0;
    grow(&mut Vec::new(), 0, n, &facing, &mut best);
    best
}

/// Union of tight chains inside `H_μ` (one orientation each) whose
/// hyperplanes are pairwise transverse across chains.
fn transverse_chain_union(rng: &mut ChaCha8Rng, c: &CubeComplex, h_mu: &BitSet) -> Vec<Halfspace> {
    let p = c.pocset();
    let mut pool: Vec<Halfspace> = h_mu.iter().collect();
    pool.shuffle(rng);
    let mut used: Vec<Halfspace> = Vec::new();
    for start in pool {
        let fits = |h: Halfspace, used: &[Halfspace]| used.iter().all(|&k| p.transverse(hyperplane_of(h), hyperplane_of(k)));
        if !fits(start, &used) {
            continue;
        }
        let mut chain = vec![start];
        loop {
            let last = *chain.last().expect("non-empty");
            let next = c.tight_covers(last).iter().copied().find(|&k| h_mu.contains(k) && fits(k, &used));
            match next {
                Some(k) if rng.gen_bool(0.8) => chain.push(k),
                _ => break,
            }
        }
        used.extend(chain);
    }
    used
}

/// Criterion 9: the balanced-halfspace lemma, intervals and terminal bound.
pub fn check_balanced(rng: &mut ChaCha8Rng, pairs: usize, max_k: usize, automorphism_cap: usize) -> Outcome {
    let mut t = Tally::new("balanced halfspaces H_μ");
    let mut current: Option<(CubeComplex, Vec<Automorphism>)> = None;
    for i in 0..pairs {
        if i % 5 == 0 || current.is_none() {
            let c = random_complex(rng, max_k, 64);
            let autos = automorphisms(c.pocset(), automorphism_cap);
            current = Some((c, autos));
        }
        let (c, autos) = current.as_ref().expect("set above");
        let mu = VertexMeasure::random(rng, c.vertex_count());
        let measure = measure_section(mu.weights());
        let part = balanced_partition(c, &mu);
        let facts = check_hmu_facts(c, &mu, &part);
        t.case(facts.is_ok(), || witness_with(c.pocset(), &measure, facts.clone().unwrap_err(), ""));
        for g in autos {
            let pushed = balanced_partition(c, &mu.push_forward(c, g));
            let ok = pushed.h_mu == push_set(g, &part.h_mu) && pushed.h_plus == push_set(g, &part.h_plus);
            t.case(ok, || witness_with(c.pocset(), &measure, format!("partition not equivariant under {:?}", g.perm()), ""));
        }
        let sub = balanced_subcomplex(c, &mu);
        t.case(sub.is_ok(), || witness_with(c.pocset(), &measure, "balanced subcomplex is not an interval", ""));
        let s = transverse_chain_union(rng, c, &part.h_mu);
        let (min, max) = terminal_elements(c.pocset(), &s);
        let tau: BTreeSet<Halfspace> = min.into_iter().chain(max).collect();
        let dim = c.pocset().dimension();
        t.case(tau.len() <= 2 * dim, || {
            witness_with(c.pocset(), &measure, format!("|τ(S)| = {} > 2·{dim}", tau.len()), &format!("S {}", fmt_tuple(&s)))
        });
        if t.failed() {
            break;
        }
    }
    t.done()
}

/// Criterion 10: greedy transitive subtournaments at `|V| = 5^D`.
pub fn check_tournaments(rng: &mut ChaCha8Rng, per_d: usize) -> Outcome {
    let mut t = Tally::new("tournament extraction");
    for d in [2usize, 3] {
        let n = 5usize.pow(d as u32);
        for _ in 0..per_d {
            let tour = Tournament::random(rng, n);
            let v = high_outdegree_vertex(&tour).expect("complete");
            let e = transitive_subtournament(&tour, d, false);
            let shrink_ok = e.as_ref().is_ok_and(|e| e.set_sizes.windows(2).all(|w| 5 * w[1] >= w[0]));
            t.case(
                2 * tour.out_degree(v) + 1 >= n && shrink_ok && e.as_ref().is_ok_and(|e| tour.is_transitive_sequence(&e.vertices)),
                || Witness { description: format!("D = {d}: {e:?}"), document: tournament_document(&tour) },
            );
        }
    }
    // exhaustive cross-check on small tournaments
    for _ in 0..per_d {
        let n = rng.gen_range(1..=8);
        let tour = Tournament::random(rng, n);
        for d in 1..=2 {
            if (n as u128) < crate::tournament::required_vertices(d) || brute_force_transitive(&tour, d).is_none() {
                continue;
            }
            t.case(transitive_subtournament(&tour, d, false).is_ok(), || Witness {
                description: format!("greedy failed for D = {d} where brute force succeeds"),
                document: tournament_document(&tour),
            });
        }
    }
    t.done()
}

pub fn tournament_document(t: &Tournament) -> String {
    let mut s = format!("cubecx 1\n[tournament]\n{}\n", t.len());
    for u in 0..t.len() {
        for v in 0..t.len() {
            if u != v && t.has_edge(u, v) {
                s.push_str(&format!("{u} {v}\n"));
            }
        }
    }
    s
}

fn random_element(rng: &mut ChaCha8Rng, m: usize) -> ChainElement {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let shift = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
    ChainElement::new(perm, shift).expect("valid")
}

fn universe_document(m: &ChainSet, gs: &[&ChainElement]) -> String {
    let mut s = format!("cubecx 1\n[universe]\nrays {}\n", m.rays.len());
    for (r, ray) in m.rays.iter().enumerate() {
        s.push_str(&format!("tail {r} {} {}\n", u8::from(ray.neg), u8::from(ray.pos)));
        for e in &ray.exceptions {
            s.push_str(&format!("except {r} {e}\n"));
        }
    }
    for g in gs {
        s.push_str(&format!("element {} {}\n", fmt_tuple(&g.perm), g.shift.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
    }
    s
}

/// Criterion 11: transfer character homomorphism and commensuration invariance.
pub fn check_transfer(rng: &mut ChaCha8Rng, universes: usize) -> Outcome {
    let mut t = Tally::new("transfer character");
    for k in -6..=6 {
        let g = ChainElement::new(vec![0], vec![k]).expect("valid");
        let m = ChainSet { rays: vec![RaySet { neg: false, pos: true, exceptions: BTreeSet::new() }] };
        let tr = transfer_character(&g, &m);
        t.case(tr == Ok(-k), || Witness { description: format!("shift by {k}: {tr:?}"), document: universe_document(&m, &[&g]) });
    }
    for _ in 0..universes {
        let rays = rng.gen_range(1..=4);
        let g = random_element(rng, rays);
        let h = random_element(rng, rays);
        // tails constant on the orbits of ⟨π_g, π_h⟩, so M is commensurated
        let mut orbit_of: Vec<usize> = (0..rays).collect();
        for _ in 0..rays {
            for r in 0..rays {
                for s in [g.perm[r], h.perm[r]] {
                    let m = orbit_of[r].min(orbit_of[s]);
                    orbit_of[r] = m;
                    orbit_of[s] = m;
                }
            }
        }
        let flags: Vec<(bool, bool)> = (0..rays).map(|_| (rng.gen_bool(0.5), rng.gen_bool(0.5))).collect();
        let m = ChainSet {
            rays: (0..rays)
                .map(|r| RaySet {
                    neg: flags[orbit_of[r]].0,
                    pos: flags[orbit_of[r]].1,
                    exceptions: (0..rng.gen_range(0..4)).map(|_| rng.gen_range(-8..=8)).collect(),
                })
                .collect(),
        };
        let toggles: Vec<(usize, i64)> = (0..rng.gen_range(1..4)).map(|_| (rng.gen_range(0..rays), rng.gen_range(-20..=20))).collect();
        let m2 = m.toggled(&toggles);
        let gh = g.compose(&h);
        let (a, b, ab) = (transfer_character(&g, &m), transfer_character(&h, &m), transfer_character(&gh, &m));
        let hom = matches!((&a, &b, &ab), (Ok(x), Ok(y), Ok(z)) if x + y == *z);
        let comm = transfer_character(&g, &m2) == a && transfer_character(&h, &m2) == b;
        let inv = matches!((&a, transfer_character(&g.inverse(), &m)), (Ok(x), Ok(y)) if *x == -y);
        let finite = ChainSet { rays: m.rays.iter().map(|r| RaySet { neg: false, pos: false, exceptions: r.exceptions.clone() }).collect() };
        let zero = transfer_character(&g, &finite) == Ok(0);
        t.case(hom && comm && inv && zero, || Witness {
            description: format!("tr(g) = {a:?}, tr(h) = {b:?}, tr(gh) = {ab:?}, commensuration {comm}, inverse {inv}, finite {zero}"),
            document: universe_document(&m, &[&g, &h]),
        });
    }
    t.done()
}

/// Criterion 12: median-graph round trip and subdivision counts.
pub fn check_round_trip(rng: &mut ChaCha8Rng, complexes: usize, max_k: usize) -> Outcome {
    let mut t = Tally::new("median-graph round trip and subdivision");
    for k in 1..=4 {
        let c = CubeComplex::build(&generate::cube(k)).expect("cube");
        let s = c.subdivision();
        let ok = s.as_ref().is_ok_and(|s| s.vertex_count() == 3usize.pow(k as u32) && s.pocset().n_pairs() == 2 * k);
        t.case(ok, || witness(c.pocset(), "subdivision of a cube has the wrong size", ""));
    }
    for i in 0..complexes {
        let c = random_complex(rng, max_k, 256);
        let back = from_median_graph(c.vertex_count(), &c.edge_graph());
        let iso = back.as_ref().is_ok_and(|q| pocset_isomorphism(c.pocset(), q).is_some());
        t.case(iso, || witness(c.pocset(), format!("round trip failed: {:?}", back.as_ref().err()), ""));
        if i % 10 == 0 && c.vertex_count() <= 40 {
            let s = c.subdivision();
            let ok = s.as_ref().is_ok_and(|s| s.pocset().n_pairs() == 2 * c.pocset().n_pairs());
            t.case(ok, || witness(c.pocset(), "subdivision does not double the hyperplanes", ""));
        }
        if t.failed() {
            break;
        }
    }
    t.done()
}

// ------------------------------------------------- further module invariants

/// Pocset axioms as seen through the API: relation totality and duality,
/// ultrafilter count, nested-sequence duality.
pub fn check_pocset_invariants(rng: &mut ChaCha8Rng, complexes: usize, max_k: usize) -> Outcome {
    let mut t = Tally::new("pocset relations, ultrafilters, nested sequences");
    for _ in 0..complexes {
        let c = random_complex(rng, max_k, 256);
        let p = c.pocset();
        let n = p.n_halfspaces();
        for h in 0..n {
            for k in 0..n {
                if hyperplane_of(h) == hyperplane_of(k) {
                    continue;
                }
                let kind = p.kind(h, k);
                let dual = p.kind(partner(k), partner(h));
                let holds = [p.lt(h, k), p.lt(k, h), p.lt(h, partner(k)), p.lt(partner(h), k)].iter().filter(|&&x| x).count();
                let total = (kind == RelationKind::Transverse) == (holds == 0) && holds <= 1;
                t.case(total && dual == kind.dual(), || witness(p, format!("relation {kind:?} / dual {dual:?}"), &format!("pair {h},{k}")));
            }
        }
        t.case(c.vertex_count() == p.ultrafilters().map(|u| u.len()).unwrap_or(0), || witness(p, "vertex count ≠ ultrafilter count", ""));
        for len in 1..=3 {
            let seqs: BTreeSet<NestedSeq> = p.tightly_nested_sequences(len).into_iter().collect();
            let closed = seqs.iter().all(|s| s.is_valid(p) && seqs.contains(&s.reverse_dual()));
            t.case(closed, || witness(p, "nested sequences not closed under reverse-dual", &format!("n {len}")));
        }
        if t.failed() {
            break;
        }
    }
    t.done()
}

/// Alternation, equivariance and the brute-force oracle for `c`.
pub fn check_cocycle_symmetries(rng: &mut ChaCha8Rng, complexes: usize, per_complex: usize, max_k: usize) -> Outcome {
    let mut t = Tally::new("cocycle alternation, equivariance, brute-force oracle");
    for _ in 0..complexes {
        let c = random_complex(rng, max_k, 128);
        let autos = automorphisms(c.pocset(), 16);
        for tr in tuples::<3>(rng, c.vertex_count(), per_complex) {
            for n in 1..=3 {
                let v = median_cocycle(&c, tr[0], tr[1], tr[2], n);
                let perms: [([usize; 3], i64); 6] =
                    [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)];
                let alternating = perms.iter().all(|(s, sign)| median_cocycle(&c, tr[s[0]], tr[s[1]], tr[s[2]], n) == v.scaled(*sign));
                let oracle = c.pocset().n_pairs() > 12 || brute_force_cocycle(&c, tr, n) == v;
                let equivariant = autos.iter().all(|g| {
                    let gu = tr.map(|x| g.apply_vertex(&c, x));
                    median_cocycle(&c, gu[0], gu[1], gu[2], n) == g.apply_vec(&v)
                });
                t.case(alternating && oracle && equivariant, || {
                    witness(c.pocset(), format!("alternating {alternating}, oracle {oracle}, equivariant {equivariant}"), &format!("triple {} n {n}", fmt_tuple(&tr)))
                });
            }
        }
        if t.failed() {
            break;
        }
    }
    t.done()
}

/// Automorphism, decomposition, separation, essentiality and fixed-cube checks.
pub fn check_action_invariants(rng: &mut ChaCha8Rng, complexes: usize, max_k: usize) -> Outcome {
    let mut t = Tally::new("actions, decompositions, separation, essentiality");
    for _ in 0..complexes {
        let c = random_complex(rng, max_k, 128);
        let p = c.pocset();
        let autos = automorphisms(p, 24);
        for g in &autos {
            let n = p.n_halfspaces();
            let preserves = (0..n).all(|h| (0..n).all(|k| p.kind(h, k) == p.kind(g.apply(h), g.apply(k))));
            let no_skewer = (0..n).all(|h| classify(p, g, h) != Classification::Skewers);
            t.case(preserves && no_skewer, || witness(p, format!("automorphism {:?} breaks relations", g.perm()), ""));
        }
        let gens: Vec<Automorphism> = autos.iter().filter(|g| !g.is_identity()).take(3).cloned().collect();
        let base = rng.gen_range(0..c.vertex_count());
        let orb = orbit(&c, &gens, base, 12);
        let same = orb.iter().all(|&x| orbit(&c, &gens, x, 12).len() == orb.len());
        t.case(same, || witness(p, "orbit size depends on the representative", &format!("basepoint {base}")));
        t.case(invariant_cube(&c, &gens).is_some(), || witness(p, "finite group without an invariant cube", ""));
        let spec = ActionSpec::new(gens.clone(), Some(base));
        let mut prev: Option<Vec<usize>> = None;
        for r in 0..4 {
            let ess = essential_at_scale(&c, &spec, r).essential;
            let mono = prev.as_ref().is_none_or(|pr| ess.iter().all(|h| pr.contains(h)));
            t.case(mono, || witness(p, format!("Ess_{} ⊄ Ess_{}", r, r.saturating_sub(1)), &format!("basepoint {base}")));
            prev = Some(ess);
        }
        let comps = irreducible_decomposition(p);
        let cross = comps.iter().enumerate().all(|(i, a)| {
            comps[i + 1..].iter().all(|b| a.iter().all(|&x| b.iter().all(|&y| p.transverse(x, y))))
        });
        t.case(cross, || witness(p, "decomposition components not mutually transverse", ""));
        for a in 0..p.n_pairs() {
            for b in 0..p.n_pairs() {
                if a == b {
                    continue;
                }
                let ss = strongly_separated(p, a, b).expect("distinct");
                let ok = ss == strongly_separated(p, b, a).expect("distinct") && (!ss || !p.transverse(a, b));
                t.case(ok, || witness(p, "strong separation asymmetric or transverse", &format!("hyperplanes {a},{b}")));
            }
        }
        if t.failed() {
            break;
        }
    }
    t.done()
}

/// Inseparable closure laws and the UBS window flags on chains.
pub fn check_boundary_invariants(rng: &mut ChaCha8Rng, complexes: usize, max_k: usize) -> Outcome {
    let mut t = Tally::new("inseparable closure and UBS windows");
    for l in 1..=8 {
        let p = generate::path(l);
        let closure = inseparable_closure(&p, &[0, l - 1]);
        let full: Vec<usize> = (0..l).collect();
        let report = ubs_window_check(&p, &closure);
        let intervals = (0..l).all(|i| (i..l).all(|j| inseparable_closure(&p, &[i, j]) == (i..=j).collect::<Vec<_>>()));
        t.case(closure == full && report.all_pass() && intervals, || witness(&p, "chain closure is not the whole chain or fails UBS flags", ""));
    }
    for _ in 0..complexes {
        let c = random_complex(rng, max_k, 128);
        let p = c.pocset();
        let v: Vec<usize> = (0..p.n_pairs()).filter(|_| rng.gen_bool(0.4)).collect();
        let bigger: Vec<usize> = (0..p.n_pairs()).filter(|i| v.contains(i) || rng.gen_bool(0.3)).collect();
        let cl = inseparable_closure(p, &v);
        let idem = inseparable_closure(p, &cl) == cl;
        let big = inseparable_closure(p, &bigger);
        let mono = cl.iter().all(|h| big.contains(h));
        let insep = ubs_window_check(p, &cl).inseparable.is_ok();
        t.case(idem && mono && insep, || witness(p, format!("closure laws: idempotent {idem}, monotone {mono}, inseparable {insep}"), &format!("V {}", fmt_tuple(&v))));
    }
    t.done()
}

/// Sizes of a campaign.
#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub complexes: usize,
    pub tuples: usize,
    pub max_k: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 42, complexes: 20, tuples: 100, max_k: 7 }
    }
}

/// Every check, each from its own seeded stream so that results do not
/// depend on which other checks ran.
pub fn run_suite(cfg: &Config) -> Vec<Outcome> {
    let stream = |i: u64| rng(cfg.seed.wrapping_mul(1_000_003).wrapping_add(i));
    let n = cfg.complexes;
    let (bound, six) = check_support(&mut stream(2), n, cfg.tuples, cfg.max_k);
    vec![
        check_pocset_invariants(&mut stream(0), n, cfg.max_k),
        check_cocycle_identity(&mut stream(1), n, cfg.tuples, cfg.max_k),
        bound,
        six,
        check_interval_length(&mut stream(3), n, cfg.max_k.min(6)),
        check_product_split(&mut stream(4), n, cfg.tuples),
        check_restriction(&mut stream(5), n, cfg.tuples, cfg.max_k),
        check_nonvanishing(&mut stream(6), n.min(20), 4),
        check_median_metric(&mut stream(7), n),
        check_balanced(&mut stream(8), 5 * n, cfg.max_k.min(6), 24),
        check_tournaments(&mut stream(9), n),
        check_transfer(&mut stream(10), 4 * n),
        check_round_trip(&mut stream(11), n, cfg.max_k),
        check_cocycle_symmetries(&mut stream(12), n, cfg.tuples.min(40), cfg.max_k.min(6)),
        check_action_invariants(&mut stream(13), n, cfg.max_k.min(6)),
        check_boundary_invariants(&mut stream(14), n, cfg.max_k),
    ]
}
