use num_bigint::BigUint;
use proptest::prelude::*;

use ramsey_core::bounds::{balanced_bound, counting_cap, edge_bound};
use ramsey_core::coloring::{bundled, RamseySpec};
use ramsey_core::construct::{
    build_extremal_book, edge_certificate, read_certificate, saturation_search, verify_certificate, write_certificate,
    SearchBudget,
};
use ramsey_core::oracle::{exact_multiplicity, EnumerationBudget, Objective, Symmetry};
use ramsey_core::ramsey_table::RamseyTable;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn book_is_extremal(s in 3usize..=6, extra in 0usize..=12) {
        let n = s + extra;
        let b = build_extremal_book(n, s).unwrap();
        let cap = counting_cap(n as u64, s as u64, 1).unwrap();
        prop_assert_eq!(u128::from(b.graph.count_cliques(s)), cap);
        prop_assert_eq!(b.graph.remove_edges(&[b.spine]).unwrap().count_cliques(s), 0);
        let sizes: Vec<usize> = b.parts.iter().map(Vec::len).collect();
        prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1] && w[0] - w[1] <= 1));
        prop_assert_eq!(sizes.iter().sum::<usize>(), n - 2);
    }
}

#[test]
fn certificate_file_round_trip() {
    let spec = RamseySpec::diagonal(3, 2).unwrap();
    let cert = edge_certificate(&bundled::five_cycle(), 1, &spec).unwrap();
    let dir = std::env::temp_dir().join(format!("ramsey-core-cert-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k6.cert");
    std::fs::write(&path, write_certificate(&cert)).unwrap();
    let back = read_certificate(&std::fs::read_to_string(&path).unwrap(), &spec).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(back, cert);
    let r = verify_certificate(&back, &RamseyTable::bundled()).unwrap();
    assert!(r.passed());
}

#[test]
fn search_is_deterministic_and_certified() {
    let t = RamseyTable::bundled();
    let spec = RamseySpec::diagonal(3, 2).unwrap();
    let budget = SearchBudget { iterations: 100, workers: 2, seed_nodes: 100_000 };
    let a = saturation_search(6, &spec, &budget, 42, &t).unwrap();
    let b = saturation_search(6, &spec, &budget, 42, &t).unwrap();
    let (ca, cb) = (a.best.unwrap(), b.best.unwrap());
    assert_eq!(ca, cb);
    assert!(verify_certificate(&ca, &t).unwrap().passed());
}

#[test]
fn bounds_dominate_known_multiplicities() {
    let t = RamseyTable::bundled();
    // m(3,3) = 2 and m(4,4) = 9 are known exactly
    for (s, known) in [(3usize, 2u32), (4, 9)] {
        let spec = RamseySpec::diagonal(s, 2).unwrap();
        assert!(edge_bound(&spec, &t).unwrap().value >= BigUint::from(known));
        assert!(balanced_bound(&spec, &t).unwrap().value >= BigUint::from(known));
    }
    let spec = RamseySpec::diagonal(3, 2).unwrap();
    let m = exact_multiplicity(&spec, 6, &EnumerationBudget::default(), Symmetry::Star, Objective::Total).unwrap();
    assert_eq!(BigUint::from(m.value), edge_bound(&spec, &t).unwrap().value);
}
