//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use pqclass::catalog::builtin_catalog;
use pqclass::enumerate::{
    check_sings, existing_nodal_surfaces, exists_spherical, hurwitz_move, integral_alpha, inverse_hurwitz_move,
    list_of_types, list_triples, node_target, ComponentLimits, FamilyClassifier, SphericalSystem, Triple,
};
use pqclass::geometry::hurwitz_genus;
use pqclass::perm::automorphisms;
use pqclass::pi1::{compute_pi1, finite_order_probe, polygonal_kernel, structure_probe};
use pqclass::pipeline::{emit, run_pipeline, Format, PipelineOutput, RunConfig};
use pqclass::reference::{families_in_row, Pi1Expectation, ReferenceFamily, REFERENCE_FAMILIES};
use pqclass::{PermGroup, Permutation, Rational, Signature};

const COSET_LIMIT: usize = 1_000_000;

const TABLE_3: [(u32, &[(&str, u64)]); 3] = [
    (
        2,
        &[
            ("2,3,7", 21),
            ("2,3,8", 12),
            ("2,3,9", 9),
            ("2,3,12", 6),
            ("2,4,5", 10),
            ("2,4,6", 6),
            ("2,4,8", 4),
            ("2,5,5", 5),
            ("2,6,6", 3),
            ("3,3,4", 6),
            ("3,3,6", 3),
            ("4,4,4", 2),
            ("2,2,2,3", 3),
            ("2,2,2,4", 2),
        ],
    ),
    (
        4,
        &[
            ("2,3,7", 42),
            ("2,3,8", 24),
            ("2,3,9", 18),
            ("2,3,10", 15),
            ("2,3,12", 12),
            ("2,3,18", 9),
            ("2,4,5", 20),
            ("2,4,6", 12),
            ("2,4,8", 8),
            ("2,4,12", 6),
            ("2,5,5", 10),
            ("2,5,10", 5),
            ("2,6,6", 6),
            ("2,8,8", 4),
            ("3,3,4", 12),
            ("3,3,6", 6),
            ("3,4,4", 6),
            ("3,6,6", 3),
            ("4,4,4", 4),
            ("2,2,2,3", 6),
            ("2,2,2,4", 4),
            ("2,2,3,3", 3),
            ("2,2,4,4", 2),
            ("2,2,2,2,2", 2),
        ],
    ),
    (
        6,
        &[
            ("2,3,7", 63),
            ("2,3,8", 36),
            ("2,3,9", 27),
            ("2,3,12", 18),
            ("2,3,15", 15),
            ("2,3,24", 12),
            ("2,4,5", 30),
            ("2,4,6", 18),
            ("2,4,7", 14),
            ("2,4,8", 12),
            ("2,4,10", 10),
            ("2,4,16", 8),
            ("2,5,5", 15),
            ("2,6,12", 6),
            ("2,7,7", 7),
            ("3,3,4", 18),
            ("3,3,6", 9),
            ("3,3,12", 6),
            ("3,4,6", 6),
            ("4,4,8", 4),
            ("2,2,2,4", 6),
            ("2,2,2,8", 4),
            ("2,3,3,3", 3),
            ("2,2,2,2,4", 2),
        ],
    ),
];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

struct Shared {
    triples: Vec<Triple>,
    run: PipelineOutput,
}

fn reference_for(k2: u32, group: &str, t1: &Signature, t2: &Signature) -> Option<&'static ReferenceFamily> {
    REFERENCE_FAMILIES
        .iter()
        .find(|f| f.k_squared == k2 && f.group == group && &f.signatures().0 == t1 && &f.signatures().1 == t2)
}

fn table_rows() -> BTreeSet<(u32, String, String, String, u64, u64)> {
    REFERENCE_FAMILIES
        .iter()
        .map(|f| {
            let (t1, t2) = f.signatures();
            (f.k_squared, f.group.to_string(), t1.to_string(), t2.to_string(), f.genera.0, f.genera.1)
        })
        .collect()
}

fn reference_systems() -> Vec<(&'static ReferenceFamily, SphericalSystem, SphericalSystem)> {
    REFERENCE_FAMILIES
        .iter()
        .map(|f| {
            let (s1, s2) = f.systems().expect("reference systems are spherical");
            (f, s1, s2)
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (k2, expected) in TABLE_3 {
        let got: Vec<(String, u64)> = list_of_types(k2)
            .iter()
            .map(|s| (s.to_string(), integral_alpha(s, k2).unwrap_or(0)))
            .collect();
        let mut want: Vec<(String, u64)> = expected.iter().map(|&(s, a)| (s.to_string(), a)).collect();
        let mut sorted = got.clone();
        sorted.sort();
        want.sort();
        ensure(sorted == want, || format!("K²={k2}: got {got:?}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {}", secs(t)))?;
    Ok(format!("14/24/24 signatures with their alpha in {}", secs(t)))
}

fn criterion_2(shared: &mut Option<Shared>) -> Outcome {
    let start = Instant::now();
    let catalog = builtin_catalog();
    let mut triples = Vec::new();
    let mut counts = Vec::new();
    for k2 in [2, 4, 6] {
        let found = existing_nodal_surfaces(k2, &catalog).triples;
        counts.push(found.len());
        triples.extend(found);
    }
    let t = start.elapsed();
    let got: BTreeSet<_> = triples
        .iter()
        .map(|t| {
            let g1 = hurwitz_genus(t.group_order, &t.t1).unwrap();
            let g2 = hurwitz_genus(t.group_order, &t.t2).unwrap();
            (t.k_squared, t.label.clone(), t.t1.to_string(), t.t2.to_string(), g1, g2)
        })
        .collect();
    *shared = Some(Shared { triples, run: PipelineOutput::default() });
    ensure(counts == [7, 11, 6], || format!("counts {counts:?}"))?;
    ensure(got == table_rows(), || format!("triples differ: {:?}", got.symmetric_difference(&table_rows())))?;
    Ok(format!("7/11/6 triples matching (T1, T2, g1, g2, G) in {}", secs(t)))
}

fn pipeline(threads: usize) -> PipelineOutput {
    let mut config = RunConfig::new(vec![2, 4, 6], builtin_catalog());
    config.threads = threads;
    config.coset_limit = COSET_LIMIT;
    run_pipeline(&config).expect("pipeline runs")
}

fn criterion_3(shared: &mut Shared) -> Outcome {
    let start = Instant::now();
    shared.run = pipeline(8);
    let run = &shared.run;
    ensure(run.ledger.failures() == 0, || format!("ledger failures:\n{}", run.ledger.render()))?;
    ensure(run.rows.len() == 24, || format!("{} rows", run.rows.len()))?;
    let mut twos = BTreeSet::new();
    for r in &run.rows {
        let f = reference_for(r.k_squared, &r.group, &r.t1, &r.t2).ok_or_else(|| format!("unexpected row {r:?}"))?;
        ensure(r.families == families_in_row(f.row), || format!("row {}: {} families", f.row, r.families))?;
        if r.families == 2 {
            twos.insert(f.row);
        }
    }
    ensure(twos == BTreeSet::from([1, 19, 21]), || format!("two-family rows {twos:?}"))?;
    ensure(run.family_count() == 27, || format!("{} families", run.family_count()))?;
    Ok(format!("21 triples with 1 family, rows 1, 19, 21 with 2 (full pipeline {})", secs(start.elapsed())))
}

fn criterion_4(shared: &Shared) -> Outcome {
    for f in &shared.run.families {
        let r = reference_for(f.k_squared, &f.group, &f.t1, &f.t2).ok_or("family without a row")?;
        ensure(f.h1 == r.h1, || format!("row {} pipeline H1 {} expected {}", r.row, f.h1, r.h1))?;
    }
    for (f, s1, s2) in reference_systems() {
        let (_, report) = compute_pi1(&s1, &s2).map_err(|e| e.to_string())?;
        ensure(report.h1 == f.expected_h1(), || format!("row {} listed systems give H1 {}", f.row, report.h1))?;
    }
    Ok("27/27 families, from the search and from the listed systems".into())
}

fn criterion_5(shared: &Shared) -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut orders = Vec::new();
    for (f, s1, s2) in reference_systems() {
        let Pi1Expectation::Finite(n) = f.pi1 else { continue };
        let (_, report) = compute_pi1(&s1, &s2).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let got = finite_order_probe(&report, COSET_LIMIT);
        let t = start.elapsed();
        slowest = slowest.max(t);
        ensure(got == Some(n), || format!("row {}: {got:?}, expected {n}", f.row))?;
        ensure(t < Duration::from_secs(60), || format!("row {} took {}", f.row, secs(t)))?;
        orders.push(n);
    }
    for f in &shared.run.families {
        let r = reference_for(f.k_squared, &f.group, &f.t1, &f.t2).ok_or("family without a row")?;
        if let Pi1Expectation::Finite(n) = r.pi1 {
            ensure(f.finite_order == Some(n), || format!("row {} pipeline order {:?}", r.row, f.finite_order))?;
        }
    }
    Ok(format!("orders {orders:?}, slowest probe {}", secs(slowest)))
}

fn criterion_6(shared: &Shared) -> Outcome {
    let quotients = builtin_catalog();
    let mut checked = 0;
    for (f, s1, s2) in reference_systems() {
        let Pi1Expectation::Infinite { quotient, index, rank } = f.pi1 else { continue };
        let (_, report) = compute_pi1(&s1, &s2).map_err(|e| e.to_string())?;
        ensure(finite_order_probe(&report, COSET_LIMIT).is_none(), || format!("row {} closed", f.row))?;
        let s = structure_probe(&report, &quotients, index).map_err(|e| e.to_string())?;
        let hit = s.probes.iter().any(|p| {
            p.quotient == quotient && p.kernel_index == index && p.kernel_h1.is_free() && p.kernel_h1.free_rank == rank
        });
        ensure(hit, || format!("row {}: no free kernel of rank {rank} over {quotient}", f.row))?;
        checked += 1;
    }
    for f in &shared.run.families {
        let r = reference_for(f.k_squared, &f.group, &f.t1, &f.t2).ok_or("family without a row")?;
        if let Pi1Expectation::Infinite { quotient, index, rank } = r.pi1 {
            ensure(f.finite_order.is_none(), || format!("row {} pipeline closed", r.row))?;
            let hit = f.kernels.iter().any(|k| k.quotient == quotient && k.index == index && k.free && k.free_rank == rank);
            ensure(hit, || format!("row {} pipeline probes miss {quotient}/{index}/{rank}", r.row))?;
        }
    }
    Ok(format!("{checked} infinite families: no closure at 10^6 cosets, free kernels of the right index and rank"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let gens = ["(1,2,3)", "(3,4,5,6,7)"].iter().map(|c| Permutation::parse_cycles(c, 7).unwrap()).collect();
    let a7 = PermGroup::from_generators(7, gens).map_err(|e| e.to_string())?;
    ensure(a7.order() == 2520, || "A7 has the wrong order".into())?;
    let found = exists_spherical(&a7, &"2,3,7".parse().unwrap());
    let t = start.elapsed();
    ensure(!found, || "A7 is a quotient of the (2,3,7) triangle group".into())?;
    ensure(t < Duration::from_secs(300), || format!("took {}", secs(t)))?;
    Ok(format!("no (2,3,7) system in A7 ({})", secs(t)))
}

fn criterion_8() -> Outcome {
    let mut n = 0;
    for (f, s1, s2) in reference_systems() {
        for (s, g) in [(s1, f.genera.0), (s2, f.genera.1)] {
            let order = s.group().order() as u64;
            ensure(hurwitz_genus(order, s.signature()) == Ok(g), || format!("row {}: genus", f.row))?;
            let k = polygonal_kernel(&s).map_err(|e| e.to_string())?;
            let h1 = k.presentation.abelian_invariants();
            ensure(h1.is_free() && h1.free_rank as u64 == 2 * g, || format!("row {}: kernel H1 {h1}", f.row))?;
            n += 1;
        }
    }
    ensure(n == 54, || format!("{n} systems"))?;
    Ok("54/54 kernels free abelian of rank 2g".into())
}

fn criterion_9() -> Outcome {
    let catalog = builtin_catalog();
    let mut summary = Vec::new();
    for k2 in [2, 4, 6] {
        for t in list_triples(k2, &catalog).triples.into_iter().filter(|t| t.group_order <= 16) {
            let g = &t.group;
            let brute = common::BruteClasses::new(g, t.t1.parts(), t.t2.parts(), node_target(k2) as usize);
            // the library's systems are the brute-force ones
            let listed = |sig: &Signature| {
                let mut v: Vec<Vec<usize>> =
                    pqclass::enumerate::all_spherical_systems(g, sig).iter().map(|s| s.elements().to_vec()).collect();
                v.sort();
                v
            };
            ensure(listed(&t.t1) == brute.first && listed(&t.t2) == brute.second, || {
                format!("{t:?}: spherical systems differ")
            })?;
            for &(a, b, worse, nodes) in &brute.checked {
                let r = check_sings(g, &brute.first[a], &brute.second[b], k2);
                let target = node_target(k2) as usize;
                let agrees = if worse {
                    !r.accepted
                } else if nodes > target {
                    !r.accepted && r.node_count > Rational::from_integer(target as i64)
                } else {
                    r.node_count == Rational::from_integer(nodes as i64) && r.accepted == (nodes == target)
                };
                ensure(agrees, || format!("{t:?}: check_sings {r:?} against oracle ({worse}, {nodes})"))?;
            }
            let classes = FamilyClassifier::new(&t, &ComponentLimits::default()).map_err(|e| e.to_string())?.classes;
            let hit: BTreeSet<Option<usize>> =
                classes.iter().map(|c| brute.class_of(c.sys1.elements(), c.sys2.elements())).collect();
            ensure(classes.len() == brute.count && hit.len() == brute.count && !hit.contains(&None), || {
                format!("{t:?}: {} classes, brute force {}", classes.len(), brute.count)
            })?;
            summary.push(format!("{}:{}", t.label, brute.checked.len()));
        }
    }
    Ok(format!("{} triples, oracle pairs per triple {}", summary.len(), summary.join(" ")))
}

fn criterion_10(shared: &Shared) -> Outcome {
    let limits = ComponentLimits::default();
    struct Case {
        classifier: FamilyClassifier,
        auts: Vec<Vec<usize>>,
    }
    let mut cases = Vec::new();
    for t in &shared.triples {
        let classifier = FamilyClassifier::new(t, &limits).map_err(|e| e.to_string())?;
        let auts = automorphisms(&t.group).map_err(|e| e.to_string())?;
        let tables = auts.iter().map(|phi| (0..t.group.order()).map(|x| phi.apply(x)).collect()).collect();
        cases.push(Case { classifier, auts: tables });
    }
    let families: Vec<(usize, usize)> =
        cases.iter().enumerate().flat_map(|(i, c)| (0..c.classifier.classes.len()).map(move |j| (i, j))).collect();
    let mut runner = TestRunner::new_with_rng(
        Config { cases: 1000, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let strategy = (0..families.len(), vec((0u8..5, any::<usize>()), 1..8));
    let result = runner.run(&strategy, |(which, ops)| {
        let (ci, class_id) = families[which];
        let case = &cases[ci];
        let class = &case.classifier.classes[class_id];
        let group: &Arc<PermGroup> = class.sys1.group();
        let (mut s1, mut s2) = (class.sys1.clone(), class.sys2.clone());
        for (kind, k) in ops {
            match kind {
                0 => s1 = hurwitz_move(&s1, k % (s1.len() - 1)),
                1 => s1 = inverse_hurwitz_move(&s1, k % (s1.len() - 1)),
                2 => s2 = hurwitz_move(&s2, k % (s2.len() - 1)),
                3 => s2 = inverse_hurwitz_move(&s2, k % (s2.len() - 1)),
                _ => {
                    let phi = &case.auts[k % case.auts.len()];
                    s1 = s1.map_elements(|x| phi[x]);
                    s2 = s2.map_elements(|x| phi[x]);
                }
            }
        }
        let r = check_sings(group, s1.elements(), s2.elements(), class.triple.k_squared);
        prop_assert!(r.accepted);
        prop_assert_eq!(&r.node_count, &class.report.node_count);
        let got = case.classifier.class_of(s1.elements(), s2.elements()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(got, Some(class_id));
        Ok(())
    });
    result.map_err(|e| e.to_string())?;
    Ok(format!("1000 fuzzed move/automorphism sequences over {} families", families.len()))
}

fn fingerprint(run: &PipelineOutput) -> String {
    let mut s = emit(&run.rows, Format::Tsv);
    s += &emit(&run.rows, Format::Json);
    s += &serde_json::to_string(&run.families).unwrap();
    s += &run.ledger.render();
    s
}

fn criterion_11(shared: &Shared) -> Outcome {
    let first = fingerprint(&shared.run);
    let start = Instant::now();
    let serial = fingerprint(&pipeline(1));
    let again = fingerprint(&pipeline(8));
    ensure(first == serial, || "threads 1 and 8 differ".into())?;
    ensure(first == again, || "two runs with 8 threads differ".into())?;
    Ok(format!("{} bytes identical over three runs ({})", first.len(), secs(start.elapsed())))
}

fn main() {
    // `cargo test -- --list` and filters from the default harness
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let mut failed = 0;
    let mut report = |n: u32, outcome: Outcome| {
        match &outcome {
            Ok(detail) => println!("criterion {n:>2}: PASS  {detail}"),
            Err(why) => println!("criterion {n:>2}: FAIL  {why}"),
        }
        failed += usize::from(outcome.is_err());
    };
    let mut shared = None;
    report(1, criterion_1());
    report(2, criterion_2(&mut shared));
    let mut shared = shared.expect("triples computed");
    report(3, criterion_3(&mut shared));
    report(4, criterion_4(&shared));
    report(5, criterion_5(&shared));
    report(6, criterion_6(&shared));
    report(7, criterion_7());
    report(8, criterion_8());
    report(9, criterion_9());
    report(10, criterion_10(&shared));
    report(11, criterion_11(&shared));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
