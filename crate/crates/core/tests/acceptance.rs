//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};

use kk_core::binomial::binom;
use kk_core::extremal::{
    plateau_check, plateau_minimal_instance, table_rows, turan_k4_count, verify_canonical_x, verify_double_apex,
    verify_k4_identity, verify_k5_identity, verify_single_apex, CliquePair,
};
use kk_core::graph::{
    apex_construction, clique_profile, complete_minus_star, complete_minus_two_disjoint_edges, count_cliques,
    prune_then_count, turan_graph, Graph,
};
use kk_core::search::{exhaustive_extremal, tightness_scan};
use kk_core::{canonical_rep, kk_bound, Count};

const CANONICAL_CASES: u32 = 1_000_000;
const MONOTONE_CASES: u32 = 20_000;
const GRAPH_CASES: u32 = 2_000;
const PRUNE_CASES: u32 = 500;

type Outcome = Result<Vec<String>, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn c(v: u64) -> Count {
    Count::from(v)
}

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, actual: T, expected: T) -> Result<String, String> {
    if actual == expected {
        Ok(format!("{what} = {actual}"))
    } else {
        Err(format!("{what}: expected {expected}, got {actual}"))
    }
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng)
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.05f64..0.95)
        .prop_flat_map(|(n, p)| {
            (
                Just(n),
                proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2),
            )
        })
        .prop_map(|(n, bits)| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges = pairs.zip(bits).filter(|&(_, keep)| keep).map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
}

/// `C(n, k)` in `u128`, saturating. Only compared against values below
/// `2^64`, where saturation cannot change the outcome.
fn binom_sat(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul((n - k + i + 1) as u128) {
            Some(v) => acc = v / (i + 1) as u128,
            None => return u128::MAX,
        }
    }
    acc
}

fn worked_example() -> Outcome {
    let apex = apex_construction(11, &[10, 7]).map_err(|e| e.to_string())?;
    Ok(vec![
        expect_eq(
            "[707]^5_10",
            kk_bound(&c(707), 5, 10).map_err(|e| e.to_string())?,
            c(21),
        )?,
        expect_eq("k_5(apex(11,[10,7]))", count_cliques(&apex, 5), c(707))?,
        expect_eq("k_10(apex(11,[10,7]))", count_cliques(&apex, 10), c(21))?,
    ])
}

fn turan_numbers() -> Outcome {
    let g = turan_graph(12, 10).map_err(|e| e.to_string())?;
    Ok(vec![
        expect_eq("k_3(T(12,10))", count_cliques(&g, 3), c(200))?,
        expect_eq("k_4(T(12,10))", count_cliques(&g, 4), c(406))?,
        expect_eq("[200]^3_4", kk_bound(&c(200), 3, 4).map_err(|e| e.to_string())?, c(407))?,
    ])
}

fn printed_table() -> Outcome {
    const PRINTED: [(u64, u64, u64, u64); 10] = [
        (6, 12, 0, 1),
        (7, 25, 4, 6),
        (8, 44, 20, 23),
        (9, 70, 61, 65),
        (10, 104, 146, 151),
        (11, 147, 301, 307),
        (12, 200, 560, 567),
        (13, 264, 966, 974),
        (14, 340, 1572, 1581),
        (15, 429, 2442, 2452),
    ];
    let rows = table_rows(CliquePair::K3K5, 6, 15).map_err(|e| e.to_string())?;
    if rows.len() != PRINTED.len() {
        return Err(format!("expected {} rows, got {}", PRINTED.len(), rows.len()));
    }
    let mut matched = 0;
    for (row, &(n, k3, k5, bound)) in rows.iter().zip(&PRINTED) {
        for (what, got, want) in [
            ("K3", &row.x, k3),
            ("K5", &row.actual, k5),
            ("bound", &row.bound, bound),
        ] {
            if *got != c(want) {
                return Err(format!("n = {n}, {what}: expected {want}, got {got}"));
            }
            matched += 1;
        }
        if n >= 7 && row.gap != c(n - 5) {
            return Err(format!("n = {n}: gap {} is not n-5", row.gap));
        }
    }
    Ok(vec![format!(
        "{matched} of 30 printed numbers reproduced, gap = n-5 for n in 7..=15"
    )])
}

fn identity_suites() -> Outcome {
    let mut lines = Vec::new();
    for (name, verify) in [
        ("K_4 identity", verify_k4_identity as fn(u64) -> _),
        ("K_5 identity", verify_k5_identity),
        ("cascade of C(n,3)-2(n-2)", verify_canonical_x),
    ] {
        for n in 7..=200 {
            let rep = verify(n).map_err(|e| format!("{name}, n = {n}: {e}"))?;
            if !rep.passed() {
                return Err(format!("{name} fails at n = {n}:\n{rep}"));
            }
        }
        lines.push(format!("{name}: n = 7..=200 all pass"));
    }
    Ok(lines)
}

fn star_deletion() -> Outcome {
    let mut total = 0;
    let mut literal_misses = Vec::new();
    let mut corrected_misses = 0;
    for n in 1..=14u64 {
        for p in 0..n {
            let g = complete_minus_star(n as usize, p as usize).map_err(|e| e.to_string())?;
            let profile = clique_profile(&g, n as usize);
            for s in 1..=n {
                total += 1;
                let counted = profile.get(s as usize).cloned().unwrap_or_default();
                let literal = binom(n, s) + binom(n - p, s - 1);
                if counted != literal {
                    literal_misses.push((n, p, s, counted.clone(), literal));
                }
                if counted != binom(n - 1, s) + binom(n - 1 - p, s - 1) {
                    corrected_misses += 1;
                }
            }
        }
    }
    let corrected = format!(
        "C(n-1,s)+C(n-1-p,s-1) matches the count in {} of {total} cases",
        total - corrected_misses
    );
    match literal_misses.first() {
        None => Ok(vec![format!("C(n,s)+C(n-p,s-1) matches all {total} cases"), corrected]),
        Some((n, p, s, counted, literal)) => Err(format!(
            "C(n,s)+C(n-p,s-1) differs from the count in {} of {total} cases; first: n={n} p={p} s={s} counted {counted}, formula {literal}\n{corrected}",
            literal_misses.len()
        )),
    }
}

fn passing(lines: &mut Vec<String>, label: String, rep: kk_core::extremal::Report) -> Result<(), String> {
    if !rep.passed() {
        return Err(format!("{label} failed:\n{rep}"));
    }
    lines.push(format!("{label}: pass"));
    Ok(())
}

fn apex_and_plateaus() -> Outcome {
    let e = |e: kk_core::extremal::ExtremalError| e.to_string();
    let mut lines = Vec::new();
    passing(
        &mut lines,
        "single apex (11,10,5,10)".into(),
        verify_single_apex(11, 10, 5, 10).map_err(e)?,
    )?;
    passing(
        &mut lines,
        "double apex (11,10,7,5,10)".into(),
        verify_double_apex(11, 10, 7, 5, 10).map_err(e)?,
    )?;
    for u in 2..=4u64 {
        let (n, m, w, r, s) = plateau_minimal_instance(u).map_err(e)?;
        passing(
            &mut lines,
            format!("u={u} single apex ({n},{m},{r},{s})"),
            verify_single_apex(n, m, r, s).map_err(e)?,
        )?;
        passing(
            &mut lines,
            format!("u={u} double apex ({n},{m},{w},{r},{s})"),
            verify_double_apex(n, m, w, r, s).map_err(e)?,
        )?;
        let plateau = plateau_check(n, m, 2 * u - 1, r, s).map_err(e)?;
        passing(&mut lines, format!("u={u} plateau"), plateau.report)?;
        let want = binom(2 * u - 1, u - 1) + 1u32;
        lines.push(expect_eq(
            &format!("u={u} plateau length vs C(2u-1,u-1)+1"),
            plateau.length,
            want,
        )?);
    }
    Ok(lines)
}

fn brute_force_scope() -> Outcome {
    let rows = tightness_scan(2, 3, 15, 7).map_err(|e| e.to_string())?;
    if let Some(row) = rows.iter().find(|row| !row.tight) {
        return Err(format!(
            "(2,3) not tight at x = {}: best {} < bound {}",
            row.x, row.best, row.bound
        ));
    }
    let rec = exhaustive_extremal(7, 3, 4, &c(25)).map_err(|e| e.to_string())?;
    let lower = turan_k4_count(7).map_err(|e| e.to_string())?;
    Ok(vec![
        "(2,3) tight at every x in 0..=15 on 7 vertices".to_string(),
        expect_eq(
            "exhaustive k_4(k_3 <= 25) on 7 vertices",
            rec.best.clone(),
            &rec.bound - 1u32,
        )?,
        expect_eq("[25]^3_4 - 1 vs k_4(T(7,5))", &rec.bound - 1u32, lower)?,
    ])
}

fn property_suites() -> Outcome {
    let mut lines = Vec::new();

    let x_strategy = (any::<u64>(), 0u32..64).prop_map(|(v, shift)| v >> shift);
    runner(CANONICAL_CASES)
        .run(&(x_strategy, 1u32..=12), |(x, r)| {
            let rep = canonical_rep(&c(x), r).unwrap();
            let mut remaining = x as u128;
            for (i, term) in rep.terms().iter().enumerate() {
                prop_assert_eq!(term.bottom, r - i as u32);
                prop_assert!(term.top >= term.bottom as u64);
                if i > 0 {
                    prop_assert!(term.top < rep.terms()[i - 1].top);
                }
                let here = binom_sat(term.top, term.bottom as u64);
                prop_assert!(here <= remaining);
                prop_assert!(
                    binom_sat(term.top + 1, term.bottom as u64) > remaining,
                    "non-maximal top"
                );
                remaining -= here;
            }
            prop_assert_eq!(remaining, 0);
            prop_assert_eq!(rep.eval(), c(x));
            Ok(())
        })
        .map_err(|e| format!("canonical representation: {e}"))?;
    lines.push(format!("canonical round trip and maximality: {CANONICAL_CASES} cases"));

    runner(MONOTONE_CASES)
        .run(&(0u64..1 << 40, 0u64..1 << 20, 1u32..=8, 1u32..=5), |(x, d, r, ds)| {
            let lo = kk_bound(&c(x), r, r + ds).unwrap();
            let hi = kk_bound(&c(x + d), r, r + ds).unwrap();
            prop_assert!(lo <= hi);
            Ok(())
        })
        .map_err(|e| format!("bound monotonicity: {e}"))?;
    lines.push(format!("bound monotonicity: {MONOTONE_CASES} cases"));

    let perm_strategy = graph_strategy(24).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    });
    runner(GRAPH_CASES)
        .run(&perm_strategy, |(g, perm)| {
            let h = g.permuted(&perm).unwrap();
            prop_assert_eq!(clique_profile(&g, g.n()), clique_profile(&h, h.n()));
            Ok(())
        })
        .map_err(|e| format!("isomorphism invariance: {e}"))?;
    lines.push(format!(
        "isomorphism invariance of clique profiles: {GRAPH_CASES} cases"
    ));

    runner(PRUNE_CASES)
        .run(&(graph_strategy(30), 2usize..=7), |(g, s)| {
            prop_assert_eq!(prune_then_count(&g, s).unwrap().count, count_cliques(&g, s));
            Ok(())
        })
        .map_err(|e| format!("core pruning: {e}"))?;
    lines.push(format!("core pruning preserves k_s: {PRUNE_CASES} graphs with n <= 30"));

    runner(GRAPH_CASES)
        .run(
            &(graph_strategy(24), any::<prop::sample::Index>(), 1usize..=8),
            |(g, pick, r)| {
                let edges: Vec<_> = g.edges().collect();
                if edges.is_empty() {
                    return Ok(());
                }
                let (u, v) = edges[pick.index(edges.len())];
                let mut h = g.clone();
                h.remove_edge(u, v).unwrap();
                prop_assert!(count_cliques(&h, r) <= count_cliques(&g, r));
                Ok(())
            },
        )
        .map_err(|e| format!("edge-removal monotonicity: {e}"))?;
    lines.push(format!("edge-removal monotonicity of k_r: {GRAPH_CASES} cases"));

    for n in 4..=14 {
        let a = clique_profile(&turan_graph(n, n - 2).unwrap(), n);
        let b = clique_profile(&complete_minus_two_disjoint_edges(n).unwrap(), n);
        if a != b {
            return Err(format!(
                "T({n},{}) profile differs from K_{n} minus two disjoint edges",
                n - 2
            ));
        }
    }
    lines.push("T(n,n-2) profile equals K_n minus two disjoint edges for n = 4..=14".into());
    Ok(lines)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "worked example", Duration::from_secs(1), worked_example),
        (2, "T(12,10) counts and bound", Duration::from_secs(1), turan_numbers),
        (3, "printed K3/K5 table", Duration::from_secs(5), printed_table),
        (4, "identity suites", Duration::from_secs(5), identity_suites),
        (5, "star deletion formula", Duration::from_secs(30), star_deletion),
        (
            6,
            "apex constructions and plateaus",
            Duration::from_secs(10),
            apex_and_plateaus,
        ),
        (
            7,
            "brute-force oracle agreement",
            Duration::from_secs(600),
            brute_force_scope,
        ),
        (8, "property suites", Duration::from_secs(600), property_suites),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(format!(
                "panicked: {}",
                p.downcast_ref::<String>().cloned().unwrap_or_default()
            ))
        });
        let elapsed = start.elapsed();
        let (ok, details) = match outcome {
            Ok(_) if elapsed > limit => (false, vec!["time limit exceeded".to_string()]),
            Ok(lines) => (true, lines),
            Err(msg) => (false, msg.lines().map(str::to_string).collect()),
        };
        println!(
            "criterion {id} {}  {name} ({:.3} s, limit {} s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        for line in details {
            println!("    {line}");
        }
        failed += usize::from(!ok);
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
