//! Property tests over shrinkable inputs: median closures given by their
//! seed points, so a failure shrinks to a small point set.

use cubecx::cocycle::{coboundary, median_cocycle, SparseVec};
use cubecx::complex::{from_median_graph, pocset_isomorphism, CubeComplex};
use cubecx::doc::{parse, pocset_document};
use cubecx::generate::median_closure;
use cubecx::verify::brute_force_cocycle;
use proptest::prelude::*;

/// `(k, seed points)` with at most 64 closure vertices.
fn closure() -> impl Strategy<Value = CubeComplex> {
    (2usize..=6)
        .prop_flat_map(|k| (Just(k), prop::collection::vec(0u32..(1 << k), 2..=5)))
        .prop_filter_map("closure too large", |(k, seeds)| {
            let p = median_closure(k, &seeds).ok()?;
            CubeComplex::build_capped(&p, 64).ok()
        })
}

fn pick(c: &CubeComplex, raw: &[usize]) -> Vec<usize> {
    raw.iter().map(|r| r % c.vertex_count()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cocycle_identity(c in closure(), raw in prop::array::uniform4(0usize..1000), n in 1usize..=3) {
        let q = pick(&c, &raw);
        prop_assert!(coboundary(&c, [q[0], q[1], q[2], q[3]], n).is_zero());
    }

    #[test]
    fn cocycle_matches_definition(c in closure(), raw in prop::array::uniform3(0usize..1000), n in 1usize..=3) {
        let t = pick(&c, &raw);
        prop_assert_eq!(median_cocycle(&c, t[0], t[1], t[2], n), brute_force_cocycle(&c, [t[0], t[1], t[2]], n));
    }

    #[test]
    fn cocycle_text_round_trip(c in closure(), raw in prop::array::uniform3(0usize..1000)) {
        let t = pick(&c, &raw);
        let v = median_cocycle(&c, t[0], t[1], t[2], 2);
        prop_assert_eq!(SparseVec::from_text(&v.to_text()).unwrap(), v);
    }

    #[test]
    fn median_is_a_vertex_of_all_three_intervals(c in closure(), raw in prop::array::uniform3(0usize..1000)) {
        let t = pick(&c, &raw);
        let m = c.median(t[0], t[1], t[2]);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            prop_assert_eq!(c.distance(t[a], m) + c.distance(m, t[b]), c.distance(t[a], t[b]));
        }
    }

    #[test]
    fn pocset_document_round_trip(c in closure()) {
        let doc = parse(&pocset_document(c.pocset())).unwrap();
        prop_assert_eq!(&doc.pocset().unwrap(), c.pocset());
    }

    #[test]
    fn median_graph_round_trip(c in closure()) {
        let q = from_median_graph(c.vertex_count(), &c.edge_graph()).unwrap();
        prop_assert!(pocset_isomorphism(c.pocset(), &q).is_some());
    }
}
