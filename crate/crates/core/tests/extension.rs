use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ramsey_core::bounds::edge_bound;
use ramsey_core::coloring::{extend_one_vertex, PartialColoring, RamseySpec};
use ramsey_core::construct::{edge_certificate, extract_extension_family, verify_certificate};
use ramsey_core::graph::{count_cliques_in, Edge};
use ramsey_core::oracle::random_good_coloring;
use ramsey_core::ramsey_table::RamseyTable;

fn spec_strategy() -> impl Strategy<Value = RamseySpec> {
    prop::collection::vec(3usize..=4, 2..=3).prop_map(|s| RamseySpec::new(s).unwrap())
}

fn good_coloring(spec: &RamseySpec, n: usize, seed: u64) -> Option<PartialColoring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_good_coloring(spec, n, 200_000, &mut rng).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extension_stays_good_and_creates_pivot_cliques(
        spec in spec_strategy(),
        n in 2usize..=8,
        seed in any::<u64>(),
        pivot_pick in any::<usize>(),
    ) {
        let Some(base) = good_coloring(&spec, n, seed) else { return Ok(()) };
        prop_assert!(base.is_good(&spec).unwrap());
        let pivot = pivot_pick % n;
        let ext = extend_one_vertex(&base, pivot, &spec).unwrap();
        let e = Edge::new(pivot, n);
        prop_assert_eq!(ext.n(), n + 1);
        prop_assert_eq!(ext.uncolored_edges(), vec![e]);
        prop_assert!(ext.is_good(&spec).unwrap());
        prop_assert_eq!(ext.prefix(n).unwrap(), base.clone());
        for color in 1..=spec.k() {
            let s = spec.size_of(color);
            let class = base.class(color);
            let expect = count_cliques_in(class.rows(), class.neighbors(pivot), s - 2);
            prop_assert_eq!(ext.cliques_created(e, color, s), expect);
        }
    }

    #[test]
    fn extension_family_is_spanned_by_created_cliques(
        spec in spec_strategy(),
        n in 3usize..=8,
        seed in any::<u64>(),
    ) {
        let Some(base) = good_coloring(&spec, n, seed) else { return Ok(()) };
        let ext = extend_one_vertex(&base, 0, &spec).unwrap();
        let e = Edge::new(0, n);
        let fam = extract_extension_family(&ext, e, &spec).unwrap();
        for g in &fam.subgraphs {
            let s = spec.size_of(g.color);
            prop_assert_eq!(g.cliques, ext.cliques_created(e, g.color, s));
            if g.cliques == 0 {
                prop_assert!(g.vertices.is_empty() && g.edges.is_empty());
                continue;
            }
            prop_assert!(g.vertices.len() >= s);
            prop_assert!(g.edges.contains(&e));
            for f in g.edges.iter().filter(|&&f| f != e) {
                prop_assert_eq!(ext.color(*f), g.color);
                prop_assert!(g.vertices.contains(&f.u()) && g.vertices.contains(&f.v()));
            }
        }
    }

    #[test]
    fn relabeling_preserves_goodness(spec in spec_strategy(), n in 2usize..=7, seed in any::<u64>()) {
        let Some(c) = good_coloring(&spec, n, seed) else { return Ok(()) };
        let perm: Vec<usize> = (0..n).rev().collect();
        let colors: Vec<usize> = (1..=spec.k()).collect();
        prop_assert!(c.relabeled(&perm, &colors).is_good(&spec).unwrap());
    }
}

#[test]
fn edge_certificates_at_the_threshold_pass() {
    let t = RamseyTable::bundled();
    let spec = RamseySpec::new(vec![3, 4]).unwrap();
    let mut passed = 0;
    for seed in 0..8 {
        let Some(base) = good_coloring(&spec, 8, seed) else { continue };
        for pivot in 0..8 {
            let cert = edge_certificate(&base, pivot, &spec).unwrap();
            let r = verify_certificate(&cert, &t).unwrap();
            assert!(r.good);
            if r.passed() {
                passed += 1;
                assert_eq!(r.bound.unwrap().value, edge_bound(&spec, &t).unwrap().value);
            }
        }
    }
    assert!(passed > 0);
}
