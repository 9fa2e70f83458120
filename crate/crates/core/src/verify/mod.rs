//! Brute-force verification suites.
//!
//! Every suite checks one structural result on the configured context by
//! exhaustive enumeration or seeded random sampling against an independent
//! computation. Suites run in parallel; each draws from its own ChaCha
//! stream, so reports are identical for identical configurations.

mod algebra;
mod geometry;
mod order;

use std::fmt::{self, Write as _};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::product::RingContext;

/// Sample counts for the randomized checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyParams {
    pub ring_samples: usize,
    pub division_samples: usize,
    pub ideal_samples: usize,
    pub ideal_probes: usize,
    pub spec_samples: usize,
    pub homomorphism_pairs: usize,
    pub sheaf_pairs: usize,
    pub gluing_samples: usize,
    pub adele_samples: usize,
    pub asymptotic_pairs: usize,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            ring_samples: 300,
            division_samples: 500,
            ideal_samples: 200,
            ideal_probes: 50,
            spec_samples: 100,
            homomorphism_pairs: 500,
            sheaf_pairs: 200,
            gluing_samples: 2,
            adele_samples: 300,
            asymptotic_pairs: 10_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub context: RingContext,
    pub seed: u64,
    pub params: VerifyParams,
    /// Name of a suite whose computation is deliberately perturbed, to
    /// exercise the failure path.
    pub corrupt: Option<String>,
}

impl VerifyConfig {
    pub fn new(context: RingContext, seed: u64) -> Self {
        VerifyConfig {
            context,
            seed,
            params: VerifyParams::default(),
            corrupt: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            name: name.to_string(),
            cases: 0,
            failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records one case; the first failing case's detail is kept.
    pub(crate) fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    pub(crate) fn eq<T: PartialEq + fmt::Debug>(&mut self, got: T, want: T, what: impl FnOnce() -> String) {
        let ok = got == want;
        self.case(ok, || format!("{}: got {got:?}, expected {want:?}", what()));
    }

    fn fail(&mut self, detail: String) {
        if self.failure.is_none() {
            self.failure = Some(detail);
        }
    }
}

#[derive(Default)]
pub(crate) struct Checks(Vec<Check>);

impl Checks {
    pub(crate) fn add(&mut self, name: &str, body: impl FnOnce(&mut Check) -> Result<()>) {
        let mut check = Check::new(name);
        if let Err(e) = body(&mut check) {
            check.fail(format!("error: {e}"));
        }
        self.0.push(check);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub summary: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub primes: Vec<u64>,
    pub precision: u32,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        let _ = writeln!(
            out,
            "verify primes={} N={} seed={}",
            primes.join(","),
            self.precision,
            self.seed
        );
        for s in &self.suites {
            let status = if s.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {:<22} {} ({} checks, {} cases)",
                s.name,
                s.summary,
                s.checks.len(),
                s.cases()
            );
            for c in s.checks.iter().filter(|c| !c.passed()) {
                let _ = writeln!(
                    out,
                    "    check `{}` failed: {}",
                    c.name,
                    c.failure.as_deref().unwrap_or("")
                );
            }
        }
        let passed = self.suites.iter().filter(|s| s.passed()).count();
        let _ = writeln!(out, "{passed}/{} suites passed", self.suites.len());
        out
    }
}

pub(crate) struct SuiteInput<'a> {
    pub context: &'a RingContext,
    pub params: &'a VerifyParams,
    pub corrupt: bool,
}

type SuiteFn = fn(&SuiteInput, &mut ChaCha8Rng) -> Checks;

struct Suite {
    name: &'static str,
    summary: &'static str,
    run: SuiteFn,
}

const SUITES: &[Suite] = &[
    Suite {
        name: "padic-ring-laws",
        summary: "ring laws, valuations, inverses and truncation in Z_p",
        run: algebra::padic_ring_laws,
    },
    Suite {
        name: "division-witness",
        summary: "unit criterion and the witness f*g = 1 - e_X",
        run: algebra::division_witness_suite,
    },
    Suite {
        name: "idempotent-algebra",
        summary: "subsets of S and idempotents form isomorphic Boolean algebras",
        run: algebra::idempotent_algebra,
    },
    Suite {
        name: "filter-bridge",
        summary: "lower(delta_a) <= a <= upper(delta_a) and both bridges return the ultrafilter",
        run: algebra::filter_bridge,
    },
    Suite {
        name: "ideal-normal-form",
        summary: "valuation-vector membership agrees with generated subgroups",
        run: algebra::ideal_normal_form,
    },
    Suite {
        name: "spec-chains",
        summary: "Spec has 2|S| points in |S| two-element chains",
        run: algebra::spec_chains,
    },
    Suite {
        name: "pm-ring",
        summary: "every prime lies under exactly one maximal ideal",
        run: algebra::pm_ring,
    },
    Suite {
        name: "ideal-chain",
        summary: "ideals containing a prime are linearly ordered",
        run: algebra::ideal_chain,
    },
    Suite {
        name: "spec-bijection",
        summary: "ultrafilters biject onto Min R and Max R with matching closed sets",
        run: algebra::spec_bijection,
    },
    Suite {
        name: "value-semigroup",
        summary: "divisibility order and addition of principal ideals of Z_p",
        run: algebra::value_semigroup,
    },
    Suite {
        name: "quotients",
        summary: "R/m_p = F_p and R/p_p = Z_p with exact kernels",
        run: geometry::quotients,
    },
    Suite {
        name: "localizations",
        summary: "R at m_p is Z_p and at p_p is Q_p, kernel is the minimal prime",
        run: geometry::localizations,
    },
    Suite {
        name: "henselian",
        summary: "simple roots lift in every local ring of R",
        run: geometry::henselian,
    },
    Suite {
        name: "sheaf-sections",
        summary: "closed-form sections equal inverse limits over basic opens",
        run: geometry::sheaf_sections,
    },
    Suite {
        name: "sheaf-axiom",
        summary: "sections glue over every cover by at most three basic opens",
        run: geometry::sheaf_axiom,
    },
    Suite {
        name: "boolean-localization",
        summary: "R_f = R/(1-f) = F_2^supp(f) in F_2^S",
        run: geometry::boolean_localization_suite,
    },
    Suite {
        name: "adeles",
        summary: "Spec of the finite adeles and its quotients",
        run: geometry::adeles,
    },
    Suite {
        name: "asymptotic",
        summary: "order, archimedean classes and the Delta-prime correspondence",
        run: order::asymptotic,
    },
    Suite {
        name: "negative-controls",
        summary: "non-primes, non-opens and non-roots are rejected",
        run: order::negative_controls,
    },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Runs the selected suites (all when `selection` is empty), in registry
/// order.
pub fn run(config: &VerifyConfig, selection: &[String]) -> Result<Report> {
    for name in selection {
        if !SUITES.iter().any(|s| s.name == name) {
            return Err(Error::malformed(
                "suite",
                format!("unknown suite `{name}`; known: {}", suite_names().join(", ")),
            ));
        }
    }
    if let Some(name) = &config.corrupt {
        if name != "division-witness" {
            return Err(Error::malformed(
                "corrupt",
                format!("no corruption fixture for `{name}`"),
            ));
        }
    }
    let chosen: Vec<(usize, &Suite)> = SUITES
        .iter()
        .enumerate()
        .filter(|(_, s)| selection.is_empty() || selection.iter().any(|n| n == s.name))
        .collect();
    let suites = chosen
        .par_iter()
        .map(|&(index, suite)| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(index as u64);
            let input = SuiteInput {
                context: &config.context,
                params: &config.params,
                corrupt: config.corrupt.as_deref() == Some(suite.name),
            };
            SuiteReport {
                name: suite.name,
                summary: suite.summary,
                checks: (suite.run)(&input, &mut rng).0,
            }
        })
        .collect();
    Ok(Report {
        primes: config.context.primes().to_vec(),
        precision: config.context.precision(),
        seed: config.seed,
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        let cfg = VerifyConfig::new(RingContext::new(&[2, 3], 8).unwrap(), 0);
        assert!(matches!(
            run(&cfg, &["nope".to_string()]),
            Err(Error::Malformed { field, .. }) if field == "suite"
        ));
    }

    #[test]
    fn every_suite_passes_on_a_small_context() {
        let mut cfg = VerifyConfig::new(RingContext::new(&[2, 3, 5], 12).unwrap(), 7);
        cfg.params.asymptotic_pairs = 500;
        let report = run(&cfg, &[]).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.suites.len(), SUITES.len());
    }

    #[test]
    fn corrupted_witness_fails_and_reports_are_deterministic() {
        let mut cfg = VerifyConfig::new(RingContext::new(&[2, 3], 8).unwrap(), 1);
        cfg.corrupt = Some("division-witness".into());
        let selection = ["division-witness".to_string()];
        let a = run(&cfg, &selection).unwrap();
        assert!(!a.passed());
        assert_eq!(a, run(&cfg, &selection).unwrap());
        cfg.corrupt = Some("pm-ring".into());
        assert!(run(&cfg, &selection).is_err());
    }

    #[test]
    fn suite_names_are_unique() {
        let mut names = suite_names();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), SUITES.len());
    }
}
