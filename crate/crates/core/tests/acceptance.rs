//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`, and on any failure).

use chaincycles::chain::{
    realize_discrete_chain, CycleSpec, DiscreteChain, MartensSpec, ProfileKind,
};
use chaincycles::oracle::{rank_baker_norine, wrd_discrete, VertexDivisor};
use chaincycles::rank::{clifford_index, rank_discrete};
use chaincycles::verify::{
    all_martens_specs, probe_theorem_a_discrete, verify_divisorial_complete, verify_prop1,
    verify_theorem_b, verify_theorem_c, verify_two_row_lemmas,
};
use rayon::prelude::*;

fn conclude(n: usize, what: &str, pass: bool, extra: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {n} {what}: {verdict} ({extra})");
    assert!(pass, "acceptance criterion {n} failed: {what} ({extra})");
}

fn spec(g: usize, js: &[usize]) -> MartensSpec {
    MartensSpec::new(g, js.to_vec()).unwrap()
}

// The four benchmark families exercised by criteria 2, 3 and 8.
fn benchmark_specs() -> Vec<MartensSpec> {
    vec![
        spec(5, &[3]),
        spec(10, &[3, 5]),
        spec(12, &[3, 5, 7]),
        spec(12, &[3, 9]),
    ]
}

#[test]
fn criterion_1_gonality_formula_for_every_spec() {
    let specs = all_martens_specs(12, 3);
    let failures: Vec<String> = specs
        .par_iter()
        .filter_map(|s| {
            let report = verify_prop1(s);
            (!report.pass).then_some(report.swept)
        })
        .collect();
    conclude(
        1,
        "gonality equals k+2 for every spec with g<=12, k<=3",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} specs", specs.len())
        } else {
            format!("failing: {failures:?}")
        },
    );
}

#[test]
fn criterion_2_gonality_sequences_match_the_formula() {
    let mut failures = Vec::new();
    for s in benchmark_specs() {
        let report = verify_theorem_b(&s, s.genus() + 2);
        if !report.pass {
            failures.push(report.swept);
        }
    }
    conclude(
        2,
        "metric gonality sequences up to r=g+2 match the three-clause formula",
        failures.is_empty(),
        if failures.is_empty() {
            "4 specs".into()
        } else {
            format!("failing: {failures:?}")
        },
    );
}

#[test]
fn criterion_3_discrete_sequences_and_oracle_confirmation() {
    let mut failures = Vec::new();
    let mut confirmed = false;
    for s in benchmark_specs() {
        let report = verify_theorem_c(&s, s.genus() + 2);
        if !report.pass {
            failures.push(report.swept);
        }
        if s.genus() == 5 {
            confirmed = report.instances.iter().any(|i| i.label == "chip-firing-g1")
                && report.instances.iter().any(|i| i.label == "chip-firing-g2");
        }
    }
    conclude(
        3,
        "discrete profiles give identical sequences, g_1/g_2 oracle-confirmed at g=5",
        failures.is_empty() && confirmed,
        if failures.is_empty() {
            format!("4 specs, oracle confirmation ran: {confirmed}")
        } else {
            format!("failing: {failures:?}")
        },
    );
}

#[test]
fn criterion_4_divisorial_completeness_grids() {
    let mut failures = Vec::new();
    let mut cells = 0usize;
    for s in [spec(5, &[3]), spec(7, &[4]), spec(8, &[3, 6])] {
        let report = verify_divisorial_complete(&s);
        for i in &report.instances {
            if i.label == "grid" {
                cells += i
                    .detail
                    .split_whitespace()
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .unwrap_or(0);
            }
        }
        if !report.pass {
            failures.push(report.swept);
        }
    }
    conclude(
        4,
        "full (d, r) grids are divisorial complete for (g,k) in {(5,1),(7,1),(8,2)}",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{cells} cells")
        } else {
            format!("failing: {failures:?}")
        },
    );
}

// Every discrete chain with the given bounds, all attachment choices.
fn all_chains(max_genus: usize, max_size: usize) -> Vec<DiscreteChain> {
    let mut options = Vec::new();
    for size in 2..=max_size {
        for attach in 2..=size {
            options.push(CycleSpec { size, attach });
        }
    }
    let mut out = Vec::new();
    for g in 1..=max_genus {
        let mut idx = vec![0usize; g];
        'odometer: loop {
            out.push(
                DiscreteChain::new(idx.iter().map(|&i| options[i]).collect())
                    .expect("options are valid cycles"),
            );
            for slot in idx.iter_mut() {
                *slot += 1;
                if *slot < options.len() {
                    continue 'odometer;
                }
                *slot = 0;
            }
            break;
        }
    }
    out
}

// Effective divisors with every coefficient at most `cap` and degree at
// most `max_degree`.
fn bounded_divisors(n: usize, cap: i64, max_degree: i64) -> Vec<VertexDivisor> {
    fn rec(buf: &mut Vec<i64>, i: usize, left: i64, cap: i64, out: &mut Vec<VertexDivisor>) {
        if i == buf.len() {
            out.push(VertexDivisor::new(buf.clone()));
            return;
        }
        for c in 0..=cap.min(left) {
            buf[i] = c;
            rec(buf, i + 1, left - c, cap, out);
        }
        buf[i] = 0;
    }
    let mut out = Vec::new();
    rec(&mut vec![0i64; n], 0, max_degree, cap, &mut out);
    out
}

#[test]
fn criterion_5_tableau_rank_equals_chip_firing_rank() {
    let chains = all_chains(3, 4);
    let (checked, mismatches) = chains
        .par_iter()
        .map(|chain| {
            let graph = chain.graph();
            let bound = 2 * chain.genus() as i64 - 2;
            let mut checked = 0u64;
            let mut mismatches = 0u64;
            for d in bounded_divisors(graph.vertex_count(), 3, bound.max(0)) {
                checked += 1;
                if rank_discrete(chain, &d).rank != rank_baker_norine(&graph, &d) {
                    mismatches += 1;
                }
            }
            (checked, mismatches)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    conclude(
        5,
        "tableau rank equals chip-firing rank on every bounded divisor",
        mismatches == 0,
        format!(
            "{checked} divisors across {} chains, {mismatches} mismatches",
            chains.len()
        ),
    );
}

#[test]
fn criterion_6_degree_rank_symmetry() {
    let chains = all_chains(3, 4);
    let (checked, violations) = chains
        .par_iter()
        .map(|chain| {
            let graph = chain.graph();
            let g = chain.genus() as i64;
            let canonical = graph.canonical_divisor();
            let mut checked = 0u64;
            let mut violations = 0u64;
            for d in bounded_divisors(graph.vertex_count(), 3, (2 * g - 2).max(0)) {
                let residual = canonical.minus(&d);
                let lhs = rank_discrete(chain, &d).rank - rank_discrete(chain, &residual).rank;
                checked += 1;
                if lhs != d.degree() - g + 1 {
                    violations += 1;
                }
            }
            (checked, violations)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    conclude(
        6,
        "r(D) - r(K-D) = deg D - g + 1 across the criterion-5 sweep",
        violations == 0,
        format!("{checked} divisors, {violations} violations"),
    );
}

#[test]
fn criterion_7_clifford_identity() {
    let mut profiles: Vec<(String, chaincycles::chain::TorsionProfile, i64)> =
        all_martens_specs(12, 3)
            .into_iter()
            .map(|s| {
                let label = format!("metric g={} k={}", s.genus(), s.k());
                let k = s.k() as i64;
                (label, s.profile(ProfileKind::MetricGeneral), k)
            })
            .collect();
    for s in benchmark_specs() {
        let label = format!("discrete g={} k={}", s.genus(), s.k());
        profiles.push((label, s.profile(ProfileKind::Discrete), s.k() as i64));
    }
    let total = profiles.len();
    let failures: Vec<String> = profiles
        .into_par_iter()
        .filter_map(|(label, p, k)| match clifford_index(&p) {
            Ok(c) if c == k => None,
            other => Some(format!("{label}: {other:?}")),
        })
        .collect();
    conclude(
        7,
        "Clifford index equals gonality minus 2 (and the type) on every profile",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{total} profiles")
        } else {
            format!("failing: {failures:?}")
        },
    );
}

#[test]
fn criterion_8_two_row_structure_suite() {
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for s in benchmark_specs() {
        let report = verify_two_row_lemmas(&s);
        if let Some(coverage) = report.instances.last() {
            detail.push(format!("{}: {}", report.swept, coverage.detail));
        }
        if !report.pass {
            failures.push(report.swept);
        }
    }
    conclude(
        8,
        "two-row structure suite holds exhaustively",
        failures.is_empty(),
        if failures.is_empty() {
            detail.join("; ")
        } else {
            format!("failing: {failures:?}")
        },
    );
}

#[test]
fn criterion_9_discrete_brill_noether_probe() {
    let s = spec(5, &[3]);
    let report = probe_theorem_a_discrete(&s);
    let chain = realize_discrete_chain(&s.profile(ProfileKind::Discrete)).unwrap();
    let graph = chain.graph();
    let w3 = wrd_discrete(&graph, 1, 3).unwrap();
    let w2 = wrd_discrete(&graph, 1, 2).unwrap();
    conclude(
        9,
        "discrete Brill-Noether probe at (g,k)=(5,1)",
        report.pass && w3 >= 0 && w2 == -1,
        format!("w^1_3(G) = {w3}, w^1_2(G) = {w2}"),
    );
}
