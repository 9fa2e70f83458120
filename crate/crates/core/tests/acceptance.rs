//! End-to-end acceptance: each criterion runs its suites at the stated sizes
//! and time bounds and prints one PASS/FAIL line.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use zhat::product::RingContext;
use zhat::verify::{run, Report, VerifyConfig};

const SEED: u64 = 20_240_601;

struct Criterion {
    label: &'static str,
    primes: &'static [u64],
    suites: &'static [&'static str],
    bound: Option<Duration>,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        label: "unit criterion and division witness, 500 elements over {2,3,5,7}",
        primes: &[2, 3, 5, 7],
        suites: &["division-witness"],
        bound: Some(Duration::from_secs(1)),
    },
    Criterion {
        label: "ideal/filter sandwich on 200 ideals and ultrafilter round trips",
        primes: &[2, 3, 5, 7],
        suites: &["filter-bridge"],
        bound: Some(Duration::from_secs(2)),
    },
    Criterion {
        label: "spectrum chains, pm-ring, ideal chains and the ultrafilter bijection over {2,3,5}",
        primes: &[2, 3, 5],
        suites: &["spec-chains", "pm-ring", "ideal-chain", "spec-bijection"],
        bound: Some(Duration::from_secs(1)),
    },
    Criterion {
        label: "quotients, localizations and the square root of 2 in Z_7",
        primes: &[2, 3, 5, 7],
        suites: &["quotients", "localizations", "henselian"],
        bound: Some(Duration::from_secs(2)),
    },
    Criterion {
        label: "sheaf sections, gluing and Boolean localizations",
        primes: &[2, 3, 5],
        suites: &["sheaf-sections", "sheaf-axiom", "boolean-localization"],
        bound: Some(Duration::from_secs(30)),
    },
    Criterion {
        label: "spectrum and quotients of the finite adeles",
        primes: &[2, 3, 5, 7],
        suites: &["adeles"],
        bound: Some(Duration::from_secs(1)),
    },
    Criterion {
        label: "asymptotic order on 10^4 pairs and the Delta-prime correspondence",
        primes: &[2, 3, 5],
        suites: &["asymptotic"],
        bound: Some(Duration::from_secs(1)),
    },
    Criterion {
        label: "non-primes, non-open sets and x^2 - 2 over Z_5 are rejected",
        primes: &[2, 3, 5],
        suites: &["negative-controls"],
        bound: None,
    },
];

fn run_criterion(criterion: &Criterion) -> (Report, Duration) {
    let ctx = RingContext::new(criterion.primes, 24).expect("valid context");
    let config = VerifyConfig::new(ctx, SEED);
    let selection: Vec<String> = criterion.suites.iter().map(|s| s.to_string()).collect();
    let start = Instant::now();
    let report = run(&config, &selection).expect("known suites");
    (report, start.elapsed())
}

fn main() -> ExitCode {
    let mut failures = Vec::new();
    for (i, criterion) in CRITERIA.iter().enumerate() {
        let (report, elapsed) = run_criterion(criterion);
        let in_time = criterion.bound.is_none_or(|b| elapsed < b);
        let ok = report.passed() && in_time;
        let bound = criterion
            .bound
            .map_or("no bound".to_string(), |b| format!("bound {b:?}"));
        println!(
            "{} criterion {}: {} ({:.3}s, {bound})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            criterion.label,
            elapsed.as_secs_f64()
        );
        if !ok {
            failures.push(format!("criterion {}:\n{}", i + 1, report.to_text()));
        }
    }
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("{}", failures.join("\n"));
        ExitCode::FAILURE
    }
}
