//! The twelve suite criteria. Each one states frozen expected values and
//! checks them against fresh enumeration; nothing here trusts cached
//! results. `fast` skips the `k >= 5` family enumerations.

use super::{Check, CriterionReport};
use crate::enumerate::{
    brute_force_oracle, delete_point, enumerate_all, insert_point, subset_triangulation_count,
    visit_all, EnumOptions,
};
use crate::families::{gen_family, FamilySpec};
use crate::formulas::{
    binomial, catalan, count_double_chain, count_double_circle, count_modified_double_chain,
    count_upper_bound, insertion_bound, subset_count_upper_bound, BigCount, ExactRational,
    VertexLocation,
};
use crate::tri::{GroundSet, Triangulation};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

pub fn criterion_ids() -> std::ops::RangeInclusive<u32> {
    1..=12
}

pub fn all_criteria(fast: bool) -> Vec<CriterionReport> {
    criterion_ids().map(|id| run_criterion(id, fast)).collect()
}

pub fn run_criterion(id: u32, fast: bool) -> CriterionReport {
    match id {
        1 => convex_row(),
        2 => double_chain_counts(fast),
        3 => double_circle_counts(fast),
        4 => modified_double_chain_counts(fast),
        5 => oracle_equivalence(),
        6 => euler_suite(fast),
        7 => deletion_suite(),
        8 => insertion_suite(),
        9 => duality_and_covering(),
        10 => count_bound_suite(fast),
        11 => subset_bound_suite(fast),
        12 => formula_identities(),
        _ => panic!("unknown criterion {id}"),
    }
}

fn ground_for(spec: &FamilySpec) -> Arc<GroundSet> {
    let fam = gen_family(spec).expect("family generates");
    GroundSet::full(Arc::new(fam.points)).expect("valid ground set")
}

fn count_of(ground: &Arc<GroundSet>) -> BigCount {
    enumerate_all(ground, &EnumOptions::default())
        .expect("enumeration succeeds")
        .count
}

fn vertex_degree(t: &Triangulation, p: u32) -> u32 {
    t.edges().iter().filter(|&&(a, b)| a == p || b == p).count() as u32
}

/// Random-set schedules shared with the documentation: sizes cycle, seeds
/// count up from a fixed base per criterion.
fn oracle_random_specs() -> Vec<FamilySpec> {
    (0..100)
        .map(|i| FamilySpec::Random {
            n: 4 + (i % 4),
            seed: 1000 + i as u64,
        })
        .collect()
}

fn lemma_random_specs() -> Vec<FamilySpec> {
    (0..50)
        .map(|i| FamilySpec::Random {
            n: 5 + (i % 5),
            seed: 2000 + i as u64,
        })
        .collect()
}

fn duality_random_specs() -> Vec<FamilySpec> {
    (0..20)
        .map(|i| FamilySpec::Random {
            n: 5 + (i % 4),
            seed: 3000 + i as u64,
        })
        .collect()
}

/// First 20 seeds from 4000 whose 8-point set has at most 4 interior points.
fn subset_bound_random_grounds() -> Vec<Arc<GroundSet>> {
    let mut out = Vec::new();
    let mut seed = 4000u64;
    while out.len() < 20 {
        let g = ground_for(&FamilySpec::Random { n: 8, seed });
        if g.v() <= 4 {
            out.push(g);
        }
        seed += 1;
    }
    out
}

fn convex_row() -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();
    let expected: [u64; 8] = [1, 2, 5, 14, 42, 132, 429, 1430];
    for (n, &want) in (3u32..=10).zip(expected.iter()) {
        let g = ground_for(&FamilySpec::Convex { n });
        let got = count_of(&g);
        check.assert(got == BigCount::from(want), || {
            format!("convex {n}-gon: got {got}, want {want}")
        });
    }
    check.note("convex n-gon counts for n = 3..=10 match the Catalan row".into());
    check.into_report(1, "convex polygon row", start)
}

fn double_chain_counts(fast: bool) -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();
    let ks: &[(u32, u64)] = if fast {
        &[(3, 6), (4, 80)]
    } else {
        &[(3, 6), (4, 80), (5, 1750), (6, 49392)]
    };
    for &(k, want) in ks {
        let g = ground_for(&FamilySpec::DoubleChain { k });
        let got = count_of(&g);
        check.assert(got == BigCount::from(want), || {
            format!("double chain k={k}: got {got}, want {want}")
        });
        check.assert(count_double_chain(k as u64) == BigCount::from(want), || {
            format!("double chain closed form at k={k} is not {want}")
        });
    }
    check.note(format!(
        "checked k = {:?}",
        ks.iter().map(|&(k, _)| k).collect::<Vec<_>>()
    ));
    check.into_report(2, "double chain counts", start)
}

fn double_circle_counts(fast: bool) -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();
    let ks: &[(u32, u64)] = if fast {
        &[(3, 4), (4, 30)]
    } else {
        &[(3, 4), (4, 30), (5, 250)]
    };
    for &(k, want) in ks {
        let g = ground_for(&FamilySpec::DoubleCircle {
            k,
            extra_interior: false,
        });
        let got = count_of(&g);
        check.assert(got == BigCount::from(want), || {
            format!("double circle k={k}: got {got}, want {want}")
        });
        check.assert(
            count_double_circle(k as u64) == BigCount::from(want),
            || format!("double circle closed form at k={k} is not {want}"),
        );
    }
    check.note(format!(
        "checked k = {:?}",
        ks.iter().map(|&(k, _)| k).collect::<Vec<_>>()
    ));
    check.into_report(3, "double circle counts", start)
}

fn modified_double_chain_counts(fast: bool) -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();
    let ks: &[(u32, u64)] = if fast {
        &[(3, 8), (4, 150)]
    } else {
        &[(3, 8), (4, 150), (5, 3920)]
    };
    for &(k, want) in ks {
        let g = ground_for(&FamilySpec::ModifiedDoubleChain { k });
        let got = count_of(&g);
        check.assert(got == BigCount::from(want), || {
            format!("modified double chain k={k}: got {got}, want {want}")
        });
        check.assert(
            count_modified_double_chain(k as u64) == BigCount::from(want),
            || format!("modified double chain closed form at k={k} is not {want}"),
        );
    }
    check.note(format!(
        "checked k = {:?}",
        ks.iter().map(|&(k, _)| k).collect::<Vec<_>>()
    ));
    check.into_report(4, "modified double chain counts", start)
}

/// Every family or random instance with n <= 7: flip-graph BFS and the
/// brute-force oracle must produce identical canonical key sets. This is
/// the desk-scale certificate for flip-graph connectivity.
fn small_specs_for_oracle() -> Vec<FamilySpec> {
    let mut specs: Vec<FamilySpec> = vec![
        FamilySpec::Convex { n: 3 },
        FamilySpec::Convex { n: 4 },
        FamilySpec::Convex { n: 5 },
        FamilySpec::Convex { n: 6 },
        FamilySpec::Convex { n: 7 },
        FamilySpec::DoubleChain { k: 3 },
        FamilySpec::DoubleCircle {
            k: 3,
            extra_interior: false,
        },
        FamilySpec::DoubleCircle {
            k: 3,
            extra_interior: true,
        },
        FamilySpec::ModifiedDoubleChain { k: 3 },
    ];
    specs.extend(oracle_random_specs());
    specs
}

fn oracle_equivalence() -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();
    let opts = EnumOptions {
        want_list: true,
        ..Default::default()
    };
    let specs = small_specs_for_oracle();
    let mut instances = 0;
    for spec in &specs {
        let g = ground_for(spec);
        let bfs = enumerate_all(&g, &opts).expect("bfs");
        let oracle = brute_force_oracle(&g, &opts).expect("oracle");
        check.assert(bfs.count == oracle.count, || {
            format!("{spec:?}: bfs {} vs oracle {}", bfs.count, oracle.count)
        });
        check.assert(bfs.canonical_list == oracle.canonical_list, || {
            format!("{spec:?}: canonical key sets differ")
        });
        instances += 1;
    }
    check.note(format!(
        "{instances} instances (families n <= 7 plus 100 seeded random sets) agree"
    ));
    check.into_report(5, "oracle equivalence", start)
}

fn euler_specs(fast: bool) -> Vec<FamilySpec> {
    let mut specs: Vec<FamilySpec> = (3..=10).map(|n| FamilySpec::Convex { n }).collect();
    let kmax = if fast { 4 } else { 6 };
    specs.extend((3..=kmax).map(|k| FamilySpec::DoubleChain { k }));
    let kmax = if fast { 4 } else { 5 };
    specs.extend((3..=kmax).map(|k| FamilySpec::DoubleCircle {
        k,
        extra_interior: false,
    }));
    specs.extend((3..=kmax).map(|k| FamilySpec::ModifiedDoubleChain { k }));
    specs
}

fn euler_suite(fast: bool) -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();
    let mut visited: u64 = 0;
    let mut bad: u64 = 0;
    for spec in euler_specs(fast) {
        let g = ground_for(&spec);
        let n = g.n() as i64;
        visit_all(&g, u64::MAX, |t| {
            visited += 1;
            let profile = t.degree_profile();
            if profile.euler_identity_lhs() != 6 {
                bad += 1;
            }
            if n + 6 > profile.low_degree_weight() {
                bad += 1;
            }
        })
        .expect("enumeration succeeds");
    }
    check.assert(bad == 0, || format!("{bad} identity/inequality violations"));
    check.note(format!(
        "degree identity and low-degree inequality hold for all {visited} triangulations"
    ));
    check.into_report(6, "degree identity suite", start)
}

fn deletion_suite() -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();
    let mut inspected: u64 = 0;
    // degree -> (max results seen, the Catalan bound for that degree)
    let mut max_by_degree: BTreeMap<u64, (usize, BigCount)> = BTreeMap::new();
    for spec in lemma_random_specs() {
        let g = ground_for(&spec);
        if g.n() <= 3 {
            continue;
        }
        let mut all = Vec::new();
        visit_all(&g, u64::MAX, |t| all.push(t.clone())).expect("enumeration");
        for t in &all {
            for &p in g.active() {
                let results = delete_point(t, p);
                let deg = vertex_degree(t, p) as u64;
                let bound = catalan(deg - 2);
                inspected += 1;
                check.assert(!results.is_empty(), || {
                    format!("{spec:?}: deletion of {p} produced nothing")
                });
                check.assert(BigCount::from(results.len()) <= bound, || {
                    format!(
                        "{spec:?}: deletion of {p} (degree {deg}) gave {} > C_{} = {bound}",
                        results.len(),
                        deg - 2
                    )
                });
                let entry = max_by_degree.entry(deg).or_insert((0, bound));
                entry.0 = entry.0.max(results.len());
            }
        }
    }
    let attained: Vec<String> = max_by_degree
        .iter()
        .map(|(deg, (max, bound))| format!("deg {deg}: {max}/{bound}"))
        .collect();
    check.note(format!(
        "{inspected} (triangulation, vertex) deletions within Catalan bounds"
    ));
    check.note(format!("max attained per degree: {}", attained.join(", ")));
    check.into_report(7, "deletion lemma suite", start)
}

fn insertion_suite() -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();
    let mut inspected: u64 = 0;
    for spec in lemma_random_specs() {
        let g = ground_for(&spec);
        if g.n() <= 4 {
            continue;
        }
        for &p in g.active() {
            let reduced = g.without(p).expect("reduced set");
            let p_interior = !g.is_boundary(p);
            let mut reduced_all = Vec::new();
            visit_all(&reduced, u64::MAX, |t| reduced_all.push(t.clone())).expect("enumeration");
            for tp in &reduced_all {
                let by_degree = insert_point(tp, p);
                inspected += 1;
                for (&i, ts) in &by_degree {
                    let h = BigCount::from(ts.len());
                    // The bound depends on where p sits in the full set.
                    let bound = if p_interior {
                        insertion_bound(i as u64, VertexLocation::Interior)
                    } else {
                        insertion_bound(i as u64, VertexLocation::Boundary)
                    };
                    check.assert(h <= bound, || {
                        format!("{spec:?}: h_{i} = {h} exceeds {bound} inserting {p}")
                    });
                }
                if p_interior {
                    let h3 = by_degree.get(&3).map(|v| v.len()).unwrap_or(0);
                    check.assert(h3 == 1, || {
                        format!("{spec:?}: interior h_3 = {h3}, expected exactly 1")
                    });
                }
            }
        }
    }
    check.note(format!(
        "{inspected} (reduced triangulation, vertex) insertions within the h_i bounds"
    ));
    check.into_report(8, "insertion lemma suite", start)
}

fn duality_and_covering() -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();
    let mut pairs: u64 = 0;
    for spec in duality_random_specs() {
        let g = ground_for(&spec);
        if g.n() <= 4 {
            continue;
        }
        let mut all = Vec::new();
        visit_all(&g, u64::MAX, |t| all.push(t.clone())).expect("enumeration");
        let all_keys: HashSet<_> = all.iter().map(|t| t.canonical_key()).collect();
        for &p in g.active() {
            let reduced = g.without(p).expect("reduced set");
            let mut reduced_all = Vec::new();
            visit_all(&reduced, u64::MAX, |t| reduced_all.push(t.clone())).expect("enumeration");

            // insert side: degree -> (T' key -> produced T keys)
            let mut produced: HashSet<_> = HashSet::new();
            let mut insert_map: BTreeMap<(u32, Vec<u8>), HashSet<Vec<u8>>> = BTreeMap::new();
            for tp in &reduced_all {
                let key_tp = tp.canonical_key().0.clone();
                for (deg, ts) in insert_point(tp, p) {
                    for t in ts {
                        produced.insert(t.canonical_key());
                        insert_map
                            .entry((deg, key_tp.clone()))
                            .or_default()
                            .insert(t.canonical_key().0.clone());
                    }
                }
            }
            check.assert(produced == all_keys, || {
                format!(
                    "{spec:?}: insertions of {p} cover {} of {} triangulations",
                    produced.len(),
                    all_keys.len()
                )
            });

            // delete side must mirror the insert side exactly.
            for t in &all {
                let deg = vertex_degree(t, p);
                let deleted: HashSet<Vec<u8>> = delete_point(t, p)
                    .iter()
                    .map(|r| r.canonical_key().0.clone())
                    .collect();
                pairs += 1;
                for tp in &reduced_all {
                    let key_tp = tp.canonical_key().0.clone();
                    let forward = deleted.contains(&key_tp);
                    let backward = insert_map
                        .get(&(deg, key_tp))
                        .map(|s| s.contains(&t.canonical_key().0))
                        .unwrap_or(false);
                    check.assert(forward == backward, || {
                        format!("{spec:?}: duality mismatch deleting/inserting {p}")
                    });
                }
            }
        }
    }
    check.note(format!(
        "duality and covering verified over {pairs} (triangulation, vertex) pairs"
    ));
    check.into_report(9, "deletion/insertion duality and covering", start)
}

fn bound_specs(fast: bool) -> Vec<FamilySpec> {
    let mut specs = euler_specs(fast);
    specs.extend(small_specs_for_oracle());
    specs
}

fn count_bound_suite(fast: bool) -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();
    let opts = EnumOptions {
        want_degree_sums: true,
        ..Default::default()
    };
    let mut sets = 0;
    for spec in bound_specs(fast) {
        let g = ground_for(&spec);
        let r = enumerate_all(&g, &opts).expect("enumeration");
        let (v, b) = (g.v() as u64, g.b() as u64);
        let bound = count_upper_bound(v, b);
        let n_rat = ExactRational::from(BigInt::from(r.count.clone()));
        check.assert(n_rat <= bound, || {
            format!("{spec:?}: count {} exceeds bound {bound}", r.count)
        });

        // (6 + v + b) N <= 4 V3 + 3 V4 + 2 V5 + V6 + 3 B2 + 2 B3 + B4
        let vi = |d: u32| r.degree_sums_interior.get(&d).cloned().unwrap_or_default();
        let bj = |d: u32| r.degree_sums_boundary.get(&d).cloned().unwrap_or_default();
        let rhs = BigCount::from(4u32) * vi(3)
            + BigCount::from(3u32) * vi(4)
            + BigCount::from(2u32) * vi(5)
            + vi(6)
            + BigCount::from(3u32) * bj(2)
            + BigCount::from(2u32) * bj(3)
            + bj(4);
        let lhs = BigCount::from(6 + v + b) * r.count.clone();
        check.assert(lhs <= rhs, || {
            format!("{spec:?}: summed degree inequality fails: {lhs} > {rhs}")
        });
        sets += 1;
    }
    check.note(format!(
        "count <= 59^v 7^b / C(v+b+6,6) and the summed degree inequality hold on {sets} sets"
    ));
    check.into_report(10, "triangulation count bound", start)
}

fn subset_bound_suite(fast: bool) -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();
    let mut specs: Vec<FamilySpec> = (3..=10).map(|n| FamilySpec::Convex { n }).collect();
    let kmax = if fast { 4 } else { 5 };
    let circle_kmax = if fast { 4 } else { 6 };
    specs.extend((3..=kmax).map(|k| FamilySpec::DoubleChain { k }));
    specs.extend((3..=circle_kmax).map(|k| FamilySpec::DoubleCircle {
        k,
        extra_interior: false,
    }));
    specs.extend((3..=kmax).map(|k| FamilySpec::ModifiedDoubleChain { k }));

    let mut grounds: Vec<(String, Arc<GroundSet>)> = specs
        .iter()
        .map(|s| (format!("{s:?}"), ground_for(s)))
        .collect();
    for (i, g) in subset_bound_random_grounds().into_iter().enumerate() {
        grounds.push((format!("random subset-bound set {i}"), g));
    }

    let mut sets = 0;
    for (name, g) in grounds {
        if g.v() > 6 {
            continue;
        }
        let total = subset_triangulation_count(&g).expect("subset count");
        let bound = subset_count_upper_bound(g.v() as u64, g.b() as u64);
        let total_rat = ExactRational::from(BigInt::from(total.clone()));
        check.assert(total_rat <= bound, || {
            format!("{name}: subset count {total} exceeds {bound}")
        });
        sets += 1;
    }
    check.note(format!(
        "subset-vertex counts stay below 60^v 7^b / C(b+6,6) on {sets} sets"
    ));
    check.into_report(11, "subset-vertex count bound", start)
}

fn formula_identities() -> CriterionReport {
    let start = Instant::now();
    let mut check = Check::new();

    // Catalan recurrence.
    for m in 0..=20u64 {
        let mut sum = BigCount::zero();
        for j in 0..=m {
            sum += catalan(j) * catalan(m - j);
        }
        check.assert(sum == catalan(m + 1), || {
            format!("Catalan recurrence at {m}")
        });
    }

    // Interior insertion bound closed forms agree (asserted internally).
    for i in 3..=64u64 {
        let v = insertion_bound(i, VertexLocation::Interior);
        check.assert(v > BigCount::zero(), || format!("insertion bound at {i}"));
    }

    // Modified/plain double chain ratio.
    let target_low = ExactRational::new(BigInt::from(7), BigInt::from(2));
    let target_high = ExactRational::from(BigInt::from(4));
    for k in 3..=40u64 {
        let ratio = ExactRational::new(
            BigInt::from(count_modified_double_chain(k)),
            BigInt::from(count_double_chain(k)),
        );
        let closed =
            ExactRational::new(BigInt::from((2 * k - 3) * (2 * k - 2)), BigInt::from(k * k));
        check.assert(ratio == closed, || {
            format!("ratio at k={k}: {ratio} != {closed}")
        });
        if k >= 20 {
            check.assert(ratio >= target_low && ratio < target_high, || {
                format!("ratio at k={k} outside [3.5, 4): {ratio}")
            });
        }
    }

    // Double circle counts below 12^k.
    for k in 3..=64u64 {
        let c = count_double_circle(k);
        check.assert(c <= BigCount::from(12u32).pow(k as u32), || {
            format!("double circle count at k={k} above 12^k")
        });
    }

    // The rational identity closing the induction:
    // (6+v+b) * 59^v 7^b / C(v+b+6,6) = (v+b) * 59^v 7^b / C(v+b+5,6).
    for v in 0..=30u64 {
        for b in 0..=30u64 {
            if v + b == 0 {
                continue;
            }
            let pow = BigInt::from(
                BigCount::from(59u32).pow(v as u32) * BigCount::from(7u32).pow(b as u32),
            );
            let lhs = ExactRational::new(
                BigInt::from(6 + v + b) * pow.clone(),
                BigInt::from(binomial(v + b + 6, 6)),
            );
            let rhs = ExactRational::new(
                BigInt::from(v + b) * pow,
                BigInt::from(binomial(v + b + 5, 6)),
            );
            check.assert(lhs == rhs, || format!("induction identity at v={v}, b={b}"));
        }
    }

    check.assert(
        count_upper_bound(0, 3) == ExactRational::new(BigInt::from(49), BigInt::from(12)),
        || "count bound base case is not 49/12".to_string(),
    );

    // The modified double chain does not reach the n = 18 record.
    check.assert(
        count_modified_double_chain(9) < BigCount::from(17_309_628_327u64),
        || "modified double chain k=9 reaches the n=18 record".to_string(),
    );

    check.note("closed-form identities, ratio window, 12^k cap, induction identity".into());
    check.into_report(12, "formula identities", start)
}
