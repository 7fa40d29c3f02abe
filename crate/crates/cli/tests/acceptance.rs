//! Acceptance criteria, one PASS/FAIL line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use delball::suites::{self, reference_count, GridSpec, Outcome};

const SEED: u64 = 20_240_601;

struct Line {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn from_outcomes(
    id: u32,
    title: &'static str,
    outcomes: &[Outcome],
    budget: Option<(Duration, Duration)>,
) -> Line {
    let mut passed = outcomes.iter().all(Outcome::passed);
    let checks: u64 = outcomes.iter().map(|o| o.checks).sum();
    let failures: u64 = outcomes.iter().map(|o| o.failures).sum();
    let mut detail = format!("{checks} checks, {failures} failures");
    if let Some((took, limit)) = budget {
        passed &= took < limit;
        detail.push_str(&format!(", {took:.2?} (limit {limit:?})"));
    }
    for o in outcomes.iter().filter(|o| !o.passed()) {
        detail.push_str(&format!("\n      {o}"));
    }
    Line {
        id,
        title,
        passed,
        detail,
    }
}

fn main() -> ExitCode {
    let mut lines = Vec::new();

    let start = Instant::now();
    let o = suites::worked_chain(reference_count);
    lines.push(from_outcomes(
        1,
        "worked example golden values",
        &[o],
        Some((start.elapsed(), Duration::from_secs(1))),
    ));

    let start = Instant::now();
    let grid = GridSpec {
        qs: 2..=5,
        rs: 1..=8,
        ks: 1..=4,
    };
    let o = suites::balanced_grid(reference_count, &grid);
    lines.push(from_outcomes(
        2,
        "closed form = recursion = exact on balanced words",
        &[o],
        Some((start.elapsed(), Duration::from_secs(60))),
    ));

    lines.push(from_outcomes(
        3,
        "b(6,4,7;3) = 666",
        &[suites::named_value()],
        None,
    ));

    let o = suites::oracle_equivalence(reference_count, 1000, SEED, 8);
    lines.push(from_outcomes(4, "exact count = enumeration", &[o], None));

    let props = suites::property_suites(reference_count, 300, SEED + 100);
    let mut l = from_outcomes(5, "word property suites", &props, None);
    l.detail
        .push_str(&format!(" across {} suites", props.len()));
    lines.push(l);

    let o = suites::sandwich(reference_count, 1000, SEED + 200, 8);
    lines.push(from_outcomes(
        6,
        "every bound sandwiches the exact count",
        &[o],
        None,
    ));

    let csv_path =
        std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("upper_bounds_q3_n120_r24.csv");
    let fig = suites::upper_bound_sweep(Some(csv_path.clone()));
    let written = std::fs::read_to_string(&csv_path).unwrap_or_default();
    let mut l = from_outcomes(
        7,
        "upper-bound sweep ordering and byte-identical CSV",
        std::slice::from_ref(&fig.outcome),
        Some((fig.sweep_time, Duration::from_secs(120))),
    );
    if written != fig.csv {
        l.passed = false;
        l.detail
            .push_str(", written CSV differs from rendered text");
    }
    l.detail
        .push_str(&format!(", wrote {}", csv_path.display()));
    lines.push(l);

    let o = suites::chains(reference_count, 100, SEED + 300);
    lines.push(from_outcomes(8, "balancing chain contract", &[o], None));

    // distinct memo entries stay polynomial in n
    let n: u64 = 120;
    let states = fig.memo.misses;
    let bounded = states <= n.pow(3) && fig.sweep_time < Duration::from_secs(120);
    lines.push(Line {
        id: 9,
        title: "closed-form sweep stays polynomial",
        passed: bounded && fig.outcome.passed(),
        detail: format!(
            "{:.2?}, {} memo lookups, hit rate {:.4}, {states} distinct states (limit n^3 = {})",
            fig.sweep_time,
            fig.memo.hits + fig.memo.misses,
            fig.memo.hit_rate(),
            n.pow(3)
        ),
    });

    let mut failed = 0;
    for l in &lines {
        failed += !l.passed as usize;
        println!(
            "AC{} {} {}: {}",
            l.id,
            if l.passed { "PASS" } else { "FAIL" },
            l.title,
            l.detail
        );
    }
    println!("{} criteria, {failed} failed", lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
