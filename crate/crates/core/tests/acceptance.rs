//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use ramsey_core::bounds::{balanced_bound, counting_cap, edge_bound, general_bound, Formula};
use ramsey_core::coloring::{bundled, extend_one_vertex, RamseySpec};
use ramsey_core::construct::{build_extremal_book, edge_certificate, extract_extension_family, verify_certificate};
use ramsey_core::graph::Edge;
use ramsey_core::oracle::{
    exact_multiplicity, goodman_check, ramsey_witness, verify_counting_lemma, EnumerationBudget, Objective, Symmetry,
};
use ramsey_core::ramsey_table::{RamseyTable, R334};
use ramsey_core::tables::{published_claim, reproduce_tables};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(s: &[usize]) -> RamseySpec {
    RamseySpec::new(s.to_vec()).unwrap()
}

fn criterion_1() -> Outcome {
    let r = reproduce_tables(&RamseyTable::bundled()).map_err(|e| e.to_string())?;
    let mut bad = r.edge_table.disagreements();
    bad.extend(r.balanced_table.disagreements());
    ensure(bad.is_empty(), || format!("cells disagree: {bad:?}"))?;
    ensure(r.identical, || "tables differ".into())?;
    let again = reproduce_tables(&RamseyTable::bundled()).unwrap().to_string();
    ensure(again == r.to_string(), || "rendering not byte-identical".into())?;
    Ok("24 cells of both tables match (exact integers equal; 4-digit mantissas equal the exact value rounded up)"
        .into())
}

fn criterion_2() -> Outcome {
    let t = RamseyTable::bundled();
    let b = balanced_bound(&spec(&[5, 5]), &t).map_err(|e| e.to_string())?;
    ensure(b.value == BigUint::from(392u32), || format!("balanced (5,5) = {}", b.value))?;
    let e = edge_bound(&spec(&[3, 3]), &t).map_err(|e| e.to_string())?;
    ensure(e.value == BigUint::from(2u32), || format!("edge (3,3) = {}", e.value))?;
    Ok("balanced (5,5) = 392, edge (3,3) = 2".into())
}

fn ceil_rat(x: &BigRational) -> i64 {
    x.ceil().to_integer().to_i64().unwrap()
}

/// The edge formula evaluated on rationals: `prod_j ceil(((R-2)/k - j)/(min s - 2))`.
fn hand_edge(sizes: &[usize], r: u64) -> BigUint {
    let k = sizes.len() as i64;
    let min = *sizes.iter().min().unwrap() as i64;
    let max = *sizes.iter().max().unwrap() as i64;
    let share = BigRational::new((r as i64 - 2).into(), k.into());
    let mut acc = BigUint::one();
    for j in 0..=max - 3 {
        let f = ceil_rat(
            &((share.clone() - BigRational::from_integer(j.into())) / BigRational::from_integer((min - 2).into())),
        );
        acc *= BigUint::from(f.max(0) as u64);
    }
    acc
}

/// Single-edge cap on `n` vertices, on rationals.
fn hand_cap(n: u64, s: u64) -> BigUint {
    let mut acc = BigUint::one();
    for j in 0..=s - 3 {
        let x = BigRational::new((n as i64 - 2 - j as i64).into(), (s as i64 - 2).into());
        acc *= BigUint::from(ceil_rat(&x).max(0) as u64);
    }
    acc
}

/// Every tuple with `n_i >= s_i` and `sum n_i <= R + 2(k-1)`, checked
/// against explicit gap limits, no pruning.
fn hand_balanced(sizes: &[usize], r: u64, gap: &[Vec<i64>]) -> (BigUint, Vec<u64>) {
    let k = sizes.len();
    let budget = r + 2 * (k as u64 - 1);
    let mut best = (BigUint::zero(), Vec::new());
    let mut found = false;
    let mut tuple: Vec<u64> = sizes.iter().map(|&s| s as u64).collect();
    loop {
        let sum: u64 = tuple.iter().sum();
        if sum <= budget {
            let ok = (0..k)
                .all(|i| (0..k).all(|j| i == j || tuple[i] < tuple[j] || ((tuple[i] - tuple[j]) as i64) < gap[i][j]));
            if ok {
                let val = (0..k).map(|i| hand_cap(tuple[i], sizes[i] as u64)).min().unwrap();
                if !found || val > best.0 {
                    best = (val, tuple.clone());
                    found = true;
                }
            }
        }
        // odometer, lexicographic
        let mut i = k;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] <= budget {
                break;
            }
            tuple[i] = sizes[i] as u64;
        }
    }
}

fn criterion_3() -> Outcome {
    let t = RamseyTable::bundled();
    let s44 = spec(&[4, 4]);
    let e44 = edge_bound(&s44, &t).map_err(|e| e.to_string())?;
    let hand = hand_edge(&[4, 4], 18);
    ensure(e44.value == hand, || format!("edge (4,4) {} vs hand {hand}", e44.value))?;
    ensure(published_claim(&[4, 4], Formula::Edge) == Some(15), || "missing annotation".into())?;

    // R(3,4) = 9: gap = 9 - (4 - 2)
    let b44 = balanced_bound(&s44, &t).map_err(|e| e.to_string())?;
    let (hv, hw) = hand_balanced(&[4, 4], 18, &[vec![0, 7], vec![7, 0]]);
    ensure(b44.value == hv && b44.witness.as_deref() == Some(&hw[..]), || {
        format!("balanced (4,4) {} at {:?} vs enumeration {hv} at {hw:?}", b44.value, b44.witness)
    })?;
    ensure(published_claim(&[4, 4], b44.formula) == Some(15), || "missing annotation".into())?;

    // colors 1,2 (s=3): R(2, R(3,4)) = 9; color 3 (s=4): R(3, R(3,3)) = R(3,6) = 18
    let g = |base: [i64; 3]| -> Vec<Vec<i64>> {
        let sizes = [3i64, 3, 4];
        (0..3).map(|i| (0..3).map(|j| if i == j { 0 } else { base[i] - (sizes[j] - 2) }).collect()).collect()
    };
    let gap = g([9, 9, 18]);
    let mut parts = vec![format!("edge (4,4) = {} = hand", e44.value), format!("balanced (4,4) = {hv} at {hw:?}")];
    for (setting, r) in [(R334::Upper31, 31u64), (R334::Exact30, 30)] {
        let b = balanced_bound(&spec(&[3, 3, 4]), &RamseyTable::bundled_with(setting)).map_err(|e| e.to_string())?;
        let (hv, hw) = hand_balanced(&[3, 3, 4], r, &gap);
        ensure(b.value == hv && b.witness.as_deref() == Some(&hw[..]), || {
            format!("balanced (3,3,4) R={r}: {} at {:?} vs enumeration {hv} at {hw:?}", b.value, b.witness)
        })?;
        ensure(published_claim(&[3, 3, 4], b.formula) == Some(56), || "missing annotation".into())?;
        parts.push(format!("balanced (3,3,4) R={r}: {hv} at {hw:?}"));
    }
    Ok(format!("{}; published 15 / 56 annotated, not reproduced", parts.join(", ")))
}

fn criterion_4() -> Outcome {
    let b = EnumerationBudget::default();
    let full =
        exact_multiplicity(&spec(&[3, 3]), 6, &b, Symmetry::None, Objective::Total).map_err(|e| e.to_string())?;
    ensure(full.value == 2 && full.colorings_visited == 1 << 15, || {
        format!("unpruned (3,3) K_6: {} over {}", full.value, full.colorings_visited)
    })?;
    let pruned =
        exact_multiplicity(&spec(&[3, 3]), 6, &b, Symmetry::Star, Objective::Total).map_err(|e| e.to_string())?;
    ensure(pruned.value == 2, || format!("pruned (3,3) K_6: {}", pruned.value))?;
    let five =
        exact_multiplicity(&spec(&[3, 3]), 5, &b, Symmetry::None, Objective::Total).map_err(|e| e.to_string())?;
    ensure(five.value == 0, || format!("(3,3) K_5: {}", five.value))?;
    let two = exact_multiplicity(&spec(&[2, 2]), 2, &b, Symmetry::None, Objective::Total).map_err(|e| e.to_string())?;
    ensure(two.value == 1, || format!("(2,2) K_2: {}", two.value))?;
    let g = goodman_check(7, &b).map_err(|e| e.to_string())?;
    Ok(format!(
        "m(3,3) = 2 over 32768 colorings (pruned agrees), K_5 -> 0, m(2,2) = 1, K_7 triangles {} = {}",
        g.engine, g.direct
    ))
}

fn criterion_5() -> Outcome {
    let b = EnumerationBudget::default();
    let w5 = ramsey_witness(&spec(&[3, 3]), 5, &b, Symmetry::None).map_err(|e| e.to_string())?;
    let w5 = w5.ok_or("no witness on K_5")?;
    ensure(w5.is_good(&spec(&[3, 3])).unwrap() && w5.is_full(), || "witness not a good full coloring".into())?;
    let w6 = ramsey_witness(&spec(&[3, 3]), 6, &b, Symmetry::None).map_err(|e| e.to_string())?;
    ensure(w6.is_none(), || "found a good coloring of K_6".into())?;
    Ok("good coloring of K_5 found, none of K_6 (exhaustive, unpruned)".into())
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for s in [3, 4] {
        let r = verify_counting_lemma(s, 7, ramsey_core::oracle::default_workers()).map_err(|e| e.to_string())?;
        ensure(r.violations() == 0, || format!("s={s}: {} violations", r.violations()))?;
        ensure(r.sharp(), || format!("s={s}: cap not attained at some n"))?;
        let graphs: u64 = r.rows.iter().map(|x| x.graphs_checked).sum();
        parts.push(format!("s={s}: {graphs} graphs, 0 violations, cap attained for every n"));
    }
    Ok(parts.join("; "))
}

fn criterion_7() -> Outcome {
    let mut cases = 0;
    for s in 3..=5 {
        for n in s..=12 {
            let b = build_extremal_book(n, s).map_err(|e| e.to_string())?;
            let cap = counting_cap(n as u64, s as u64, 1).map_err(|e| e.to_string())?;
            let total = b.graph.count_cliques(s);
            let through = b.graph.count_cliques_through_edge(s, b.spine).unwrap();
            let after = b.graph.remove_edges(&[b.spine]).unwrap().count_cliques(s);
            ensure(u128::from(total) == cap && through == total && after == 0, || {
                format!("n={n} s={s}: total {total}, through {through}, after {after}, cap {cap}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, s) pairs: clique count = cap, all through the spine, none after removal"))
}

fn criterion_8() -> Outcome {
    let t = RamseyTable::bundled();
    let s33 = spec(&[3, 3]);
    let s44 = spec(&[4, 4]);
    let k6 = extend_one_vertex(&bundled::five_cycle(), 0, &s33).map_err(|e| e.to_string())?;
    ensure(k6.is_good(&s33).unwrap() && k6.uncolored_edges() == [Edge::new(0, 5)], || "K_6 - e not good".into())?;
    let k18 = extend_one_vertex(&bundled::paley17(), 0, &s44).map_err(|e| e.to_string())?;
    ensure(k18.is_good(&s44).unwrap() && k18.uncolored_edges() == [Edge::new(0, 17)], || "K_18 - e not good".into())?;

    let cert = edge_certificate(&bundled::five_cycle(), 0, &s33).map_err(|e| e.to_string())?;
    let report = verify_certificate(&cert, &t).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("certificate rejected: {report}"))?;

    let mut checks = 0;
    for (c, e, sp) in [(&k6, Edge::new(0, 5), &s33), (&k18, Edge::new(0, 17), &s44)] {
        let fam = extract_extension_family(c, e, sp).map_err(|e| e.to_string())?;
        for g in fam.gap_checks(sp, &t) {
            ensure(g.holds, || {
                format!("gap {} >= limit {} for colors {}/{}", g.difference, g.limit, g.larger, g.smaller)
            })?;
            checks += 1;
        }
    }
    ensure(checks > 0, || "no gap checks ran".into())?;
    Ok(format!("K_6 - e and K_18 - e good, K_6 - e certificate passes, {checks} size-gap checks hold"))
}

fn criterion_9() -> Outcome {
    let t = RamseyTable::bundled();
    let mut specs = 0;
    for k in 1..=3usize {
        let mut sizes = vec![3usize; k];
        loop {
            let sp = spec(&sizes);
            let e = edge_bound(&sp, &t).map_err(|e| e.to_string())?;
            let g = general_bound(&sp, 2, 1, &t).map_err(|e| e.to_string())?;
            ensure(e.value == g.value, || format!("{sp}: edge {} vs general {}", e.value, g.value))?;
            specs += 1;
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                sizes[i] += 1;
                if sizes[i] <= 5 {
                    break;
                }
                sizes[i] = 3;
            }
            if sizes.iter().all(|&s| s == 3) {
                break;
            }
        }
    }
    for n in 1..=200i64 {
        for m in 1..=n {
            let total: i64 = (0..m).map(|j| (n - j + m - 1).div_euclid(m)).sum();
            ensure(total == n, || format!("partition identity fails at n={n} m={m}"))?;
        }
    }
    for s in 3..=8u64 {
        for v in s..=50 {
            let cap = BigUint::from(counting_cap(v, s, 1).unwrap());
            let lhs = cap * BigUint::from(s - 2).pow((s - 2) as u32);
            let rhs = BigUint::from(v - 2).pow((s - 2) as u32);
            ensure(lhs <= rhs && (lhs == rhs) == ((v - 2) % (s - 2) == 0), || format!("AM-GM fails at v={v} s={s}"))?;
        }
    }
    Ok(format!("general(2,1) = edge on {specs} specs; partition identity n <= 200; AM-GM v <= 50, s <= 8"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden tables", Duration::from_secs(1), criterion_1),
        ("worked examples", Duration::from_secs(1), criterion_2),
        ("documented discrepancies", Duration::from_secs(5), criterion_3),
        ("exact oracle", Duration::from_secs(5), criterion_4),
        ("Ramsey witnesses", Duration::from_secs(30), criterion_5),
        ("counting cap, exhaustive", Duration::from_secs(300), criterion_6),
        ("construction sharpness", Duration::from_secs(1), criterion_7),
        ("extension pipeline", Duration::from_secs(10), criterion_8),
        ("identity suite", Duration::from_secs(1), criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name} ({:.3}s, limit {}s): {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
