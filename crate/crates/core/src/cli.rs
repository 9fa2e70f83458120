//! The `zhat` command-line front end.
//!
//! [`run`] parses arguments and returns the exit code with the text for
//! stdout and stderr, so the whole interface is testable in-process.
//! Exit codes: 0 success, 1 failed verification, 2 usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::adeles::{adele_from_fraction, spec_adeles, AdelePrime};
use crate::asymptotic::{
    archimedean_class, compare, delta_of, least_convex_containing, prime_of, AsymptoticNat, ConvexSubsemigroup,
    SymbolicPrime, ValuationValue,
};
use crate::error::{Error, Result};
use crate::filters::filter_of_ideal;
use crate::json::{ComponentValueJson, ContextJson, ElementJson, SpecPointJson};
use crate::product::{division_witness, truth_set, Predicate, ProductElement, RingContext};
use crate::quotient::{localize, quotient};
use crate::sheaf::{sections, stalk, OpenSet};
use crate::spectrum::{is_prime, spec_enumerate, FinGenIdeal, Level, PrimeIdeal};
use crate::verify::{self, VerifyConfig};

pub const DEFAULT_PRIMES: [u64; 3] = [2, 3, 5];
pub const DEFAULT_PRECISION: u32 = 24;
pub const MIN_PRECISION: u32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "zhat",
    version,
    about = "Arithmetic, spectrum and sheaf of prod_{p in S} Z_p at finite precision"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Index set S, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// Absolute p-adic precision N (at least 4).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// TOML file with any of the keys primes, precision, seed, output.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ring arithmetic on elements given as one integer per prime.
    Eval {
        #[arg(value_enum)]
        op: EvalOp,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// The set of primes where a predicate holds, with the division witness.
    Truthset {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value = "maximal")]
        predicate: String,
    },
    /// List the points of Spec R.
    Spec,
    /// Normal form, primality and membership for a finitely generated ideal.
    Ideal {
        /// Generators separated by `;`, components by `,`.
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        /// Elements to test for membership.
        #[arg(long = "member", allow_hyphen_values = true)]
        members: Vec<String>,
    },
    /// R/P for a point P, with an optional projection.
    Quotient {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
    },
    /// R localized at a point, with an optional fraction f/g.
    Localize {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
    },
    /// Sections of the structure sheaf over an open set such as `p_2,m_2,p_3`.
    Sections {
        /// Points of the open set; `all` for Spec R, empty for the empty set.
        #[arg(long, default_value = "all")]
        open: String,
    },
    /// The stalk at a point such as `m_3`.
    Stalk { point: String },
    /// The finite adeles prod Q_p.
    Adele {
        #[command(subcommand)]
        command: AdeleCommand,
    },
    /// The eventually-polynomial fragment of the ultrapower of omega.
    Asymptotic {
        #[command(subcommand)]
        command: AsymptoticCommand,
    },
    /// Run the verification suites.
    Verify {
        /// Restrict to the named suites; repeatable.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Perturb the named suite's computation to exercise the failure path.
        #[arg(long, hide = true)]
        corrupt: Option<String>,
        /// List suite names and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Unit,
    Show,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub prime: u64,
    #[arg(long, default_value = "maximal")]
    pub level: String,
}

impl PointArgs {
    fn point(&self) -> Result<PrimeIdeal> {
        Ok(PrimeIdeal {
            prime: self.prime,
            level: Level::parse(&self.level)?,
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum AdeleCommand {
    /// List the primes of the adeles.
    Spec,
    /// A/q for the prime over p, with an optional projection of f/n.
    Quotient {
        #[arg(long)]
        prime: u64,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, default_value_t = 1)]
        den: u64,
    },
    /// A localized at the prime over p, with an optional image of f/n.
    Localize {
        #[arg(long)]
        prime: u64,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, default_value_t = 1)]
        den: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum AsymptoticCommand {
    /// Compare two values by eventual dominance.
    Compare {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// The archimedean class of a value and the least convex subsemigroup
    /// containing it.
    Class {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Membership of a value in a convex subsemigroup and of a valuation in
    /// its prime.
    Member {
        /// zero, standard, all or deg<=d.
        #[arg(long)]
        delta: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// The Galois correspondence between convex subsemigroups and primes.
    Galois {
        #[arg(long, conflicts_with = "prime", required_unless_present = "prime")]
        delta: Option<String>,
        /// maximal, zero or deg>=k.
        #[arg(long)]
        prime: Option<String>,
    },
}

/// Settings read from a `--config` file; flags take precedence.
#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub primes: Option<Vec<u64>>,
    pub precision: Option<u32>,
    pub seed: Option<u64>,
    pub output: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
}

/// The resolved configuration.
#[derive(Debug, Clone)]
pub struct Settings {
    pub context: RingContext,
    pub seed: u64,
    pub json: bool,
}

impl Settings {
    pub fn resolve(global: &GlobalArgs) -> Result<Settings> {
        let file = match &global.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::malformed("config", format!("cannot read {}: {e}", path.display())))?;
                toml::from_str::<FileConfig>(&text).map_err(|e| Error::malformed("config", e.message().to_string()))?
            }
            None => FileConfig::default(),
        };
        let primes = global
            .primes
            .clone()
            .or(file.primes)
            .unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
        let precision = global.precision.or(file.precision).unwrap_or(DEFAULT_PRECISION);
        if precision < MIN_PRECISION {
            return Err(Error::malformed(
                "precision",
                format!("must be at least {MIN_PRECISION}, got {precision}"),
            ));
        }
        let context = RingContext::new(&primes, precision).map_err(|e| Error::malformed("primes", e.to_string()))?;
        Ok(Settings {
            context,
            seed: global.seed.or(file.seed).unwrap_or(0),
            json: global.json || file.output == Some(OutputFormat::Json),
        })
    }
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::usage(text),
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

/// A result printable either as JSON or as text.
struct Rendered {
    json: Value,
    text: String,
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let settings = Settings::resolve(&cli.global)?;
    let ctx = &settings.context;
    if let Command::Verify { suites, corrupt, list } = &cli.command {
        return verify_command(&settings, suites, corrupt.clone(), *list);
    }
    let rendered = match &cli.command {
        Command::Eval { op, a, b } => eval(ctx, *op, a, b.as_deref())?,
        Command::Truthset { f, predicate } => truthset(ctx, f, predicate)?,
        Command::Spec => spec(ctx)?,
        Command::Ideal { gens, members } => ideal(ctx, gens, members)?,
        Command::Quotient { point, f } => quotient_command(ctx, &point.point()?, f.as_deref())?,
        Command::Localize { point, f, g } => localize_command(ctx, &point.point()?, f.as_deref(), g.as_deref())?,
        Command::Sections { open } => sections_command(ctx, open)?,
        Command::Stalk { point } => stalk_command(ctx, point)?,
        Command::Adele { command } => adele(ctx, command)?,
        Command::Asymptotic { command } => asymptotic(command)?,
        Command::Verify { .. } => unreachable!("handled above"),
    };
    Ok(Outcome::ok(if settings.json {
        format!("{}\n", rendered.json)
    } else {
        rendered.text
    }))
}

fn verify_command(settings: &Settings, suites: &[String], corrupt: Option<String>, list: bool) -> Result<Outcome> {
    if list {
        let names = verify::suite_names();
        return Ok(Outcome::ok(if settings.json {
            format!("{}\n", json!(names))
        } else {
            names.iter().map(|n| format!("{n}\n")).collect()
        }));
    }
    let mut config = VerifyConfig::new(settings.context.clone(), settings.seed);
    config.corrupt = corrupt;
    let report = verify::run(&config, suites)?;
    let stdout = if settings.json {
        let mut value = serde_json::to_value(&report).expect("reports serialize");
        value["passed"] = json!(report.passed());
        format!("{value}\n")
    } else {
        report.to_text()
    };
    Ok(Outcome {
        code: if report.passed() { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}

/// Parses `a,b,c` (optionally bracketed) into one integer per prime.
pub fn parse_element(ctx: &RingContext, field: &str, s: &str) -> Result<ProductElement> {
    let values = parse_list::<BigInt>(field, s)?;
    ctx.element(values)
        .map_err(|_| Error::malformed(field, format!("expected {} components, got `{s}`", ctx.len())))
}

fn parse_list<T: FromStr>(field: &str, s: &str) -> Result<Vec<T>> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::malformed(field, format!("`{}` is not an integer", part.trim())))
        })
        .collect()
}

fn element_text(f: &ProductElement) -> String {
    format!("{f:?}")
}

fn eval(ctx: &RingContext, op: EvalOp, a: &str, b: Option<&str>) -> Result<Rendered> {
    let x = parse_element(ctx, "a", a)?;
    let second = || -> Result<ProductElement> {
        let b = b.ok_or_else(|| Error::malformed("b", format!("`{op:?}` needs a second operand").to_lowercase()))?;
        parse_element(ctx, "b", b)
    };
    let result = match op {
        EvalOp::Add => x.add(&second()?)?,
        EvalOp::Sub => x.sub(&second()?)?,
        EvalOp::Mul => x.mul(&second()?)?,
        EvalOp::Neg => ctx.zero().sub(&x)?,
        EvalOp::Inv => x.inverse()?,
        EvalOp::Show => x.clone(),
        EvalOp::Unit => {
            let unit = x.is_unit();
            return Ok(Rendered {
                json: json!({ "element": ElementJson::from(&x), "unit": unit }),
                text: format!("{} is {}a unit\n", element_text(&x), if unit { "" } else { "not " }),
            });
        }
    };
    Ok(Rendered {
        json: serde_json::to_value(ElementJson::from(&result)).expect("elements serialize"),
        text: format!("{}\n", element_text(&result)),
    })
}

fn truthset(ctx: &RingContext, f: &str, predicate: &str) -> Result<Rendered> {
    let f = parse_element(ctx, "f", f)?;
    let predicate = Predicate::parse(predicate)?;
    let t = truth_set(&f, predicate);
    let w = division_witness(&f);
    let members: Vec<u64> = t.members.iter().copied().collect();
    let locus: Vec<u64> = w.locus.iter().copied().collect();
    let mut text = format!(
        "[f {}] = {:?}{}\n",
        predicate.name(),
        members,
        if t.certain { "" } else { " (limited by precision)" }
    );
    let _ = writeln!(
        text,
        "witness g = {} with f*g = 1 - e_{:?}",
        element_text(&w.multiplier),
        locus
    );
    Ok(Rendered {
        json: json!({
            "predicate": predicate.name(),
            "members": members,
            "certain": t.certain,
            "witness": { "multiplier": ElementJson::from(&w.multiplier), "locus": locus },
        }),
        text,
    })
}

fn spec(ctx: &RingContext) -> Result<Rendered> {
    let points = spec_enumerate(ctx);
    let listing = points
        .iter()
        .map(|x| SpecPointJson::new(ctx, x))
        .collect::<Result<Vec<_>>>()?;
    let mut text = String::new();
    for (x, entry) in points.iter().zip(&listing) {
        let _ = writeln!(
            text,
            "{x:<6} {:<8} generator ({})",
            x.level.name(),
            entry.generator.join(", ")
        );
    }
    Ok(Rendered {
        json: serde_json::to_value(listing).expect("listings serialize"),
        text,
    })
}

fn ideal(ctx: &RingContext, gens: &str, members: &[String]) -> Result<Rendered> {
    let generators = gens
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_element(ctx, "gens", s))
        .collect::<Result<Vec<_>>>()?;
    let ideal = FinGenIdeal::generated_by(ctx, &generators)?;
    let exponents: Vec<String> = ideal.exponents().iter().map(|e| e.to_string()).collect();
    let prime = is_prime(&ideal);
    let filter = filter_of_ideal(&ideal)
        .ok()
        .map(|f| f.base().iter().copied().collect::<Vec<_>>());
    let mut verdicts = Vec::new();
    let mut text = format!("exponents ({})\n", exponents.join(", "));
    let _ = writeln!(text, "proper {}", ideal.is_proper());
    let _ = writeln!(text, "prime {}", prime.map_or("no".to_string(), |x| x.to_string()));
    if let Some(base) = &filter {
        let _ = writeln!(text, "filter base {base:?}");
    }
    for m in members {
        let f = parse_element(ctx, "member", m)?;
        let v = ideal.membership(&f)?;
        let _ = writeln!(
            text,
            "{} {} the ideal{}",
            element_text(&f),
            if v.member { "in" } else { "not in" },
            if v.certain { "" } else { " (limited by precision)" }
        );
        verdicts.push(json!({ "element": ElementJson::from(&f), "member": v.member, "certain": v.certain }));
    }
    Ok(Rendered {
        json: json!({
            "context": ContextJson::from(ctx),
            "exponents": exponents,
            "proper": ideal.is_proper(),
            "prime": prime.map(|x| x.to_string()),
            "filter": filter.map(|base| json!({ "base": base })),
            "membership": verdicts,
        }),
        text,
    })
}

fn quotient_command(ctx: &RingContext, x: &PrimeIdeal, f: Option<&str>) -> Result<Rendered> {
    let q = quotient(ctx, x)?;
    let kernel = x.generator(ctx)?;
    let mut text = format!("R/{x} = {}\nkernel generated by {}\n", q.kind(), element_text(&kernel));
    let mut value = json!({ "point": x.to_string(), "ring": q.kind().name(), "kernel": ElementJson::from(&kernel) });
    if let Some(f) = f {
        let f = parse_element(ctx, "f", f)?;
        let image = q.project(&f)?;
        let _ = writeln!(text, "image {image}");
        value["image"] = serde_json::to_value(ComponentValueJson::from(&image)).expect("values serialize");
    }
    Ok(Rendered { json: value, text })
}

fn localize_command(ctx: &RingContext, x: &PrimeIdeal, f: Option<&str>, g: Option<&str>) -> Result<Rendered> {
    let l = localize(ctx, x)?;
    let kernel = PrimeIdeal::minimal(x.prime).generator(ctx)?;
    let mut text = format!(
        "R at {x} = {}\nkernel generated by {}\n",
        l.kind(),
        element_text(&kernel)
    );
    let mut value = json!({ "point": x.to_string(), "ring": l.kind().name(), "kernel": ElementJson::from(&kernel) });
    if let Some(f) = f {
        let f = parse_element(ctx, "f", f)?;
        let image = match g {
            Some(g) => l.fraction(&f, &parse_element(ctx, "g", g)?)?,
            None => l.map(&f)?,
        };
        let _ = writeln!(text, "image {image}");
        value["image"] = serde_json::to_value(ComponentValueJson::from(&image)).expect("values serialize");
    } else if g.is_some() {
        return Err(Error::malformed("g", "a denominator needs --f"));
    }
    Ok(Rendered { json: value, text })
}

fn parse_open(ctx: &RingContext, s: &str) -> Result<OpenSet> {
    if s.trim() == "all" {
        return Ok(OpenSet::all(ctx));
    }
    let points = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(PrimeIdeal::parse)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::malformed("open", e.to_string()))?;
    OpenSet::new(ctx, points).map_err(|e| Error::malformed("open", e.to_string()))
}

fn sections_command(ctx: &RingContext, open: &str) -> Result<Rendered> {
    let u = parse_open(ctx, open)?;
    let ring = sections(&u);
    let factors: Vec<String> = ring.factors().iter().map(|k| k.name()).collect();
    Ok(Rendered {
        json: json!({
            "open": u.points().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "factors": factors,
        }),
        text: format!("O({u:?}) = {ring}\n"),
    })
}

fn stalk_command(ctx: &RingContext, point: &str) -> Result<Rendered> {
    let x = PrimeIdeal::parse(point)?;
    let (ring, kind) = stalk(ctx, &x)?;
    Ok(Rendered {
        json: json!({ "point": x.to_string(), "ring": kind.name() }),
        text: format!("stalk at {x} = {ring}\n"),
    })
}

fn adele(ctx: &RingContext, command: &AdeleCommand) -> Result<Rendered> {
    let (prime, f, den, localized) = match command {
        AdeleCommand::Spec => {
            let primes = spec_adeles(ctx);
            let listing: Vec<Value> = primes
                .iter()
                .map(|q| json!({ "prime": q.prime, "contraction": q.contraction().to_string() }))
                .collect();
            let text = primes
                .iter()
                .map(|q| format!("{q} over {}\n", q.contraction()))
                .collect();
            return Ok(Rendered {
                json: Value::Array(listing),
                text,
            });
        }
        AdeleCommand::Quotient { prime, f, den } => (*prime, f, *den, false),
        AdeleCommand::Localize { prime, f, den } => (*prime, f, *den, true),
    };
    ctx.index_of(prime)
        .map_err(|e| Error::malformed("prime", e.to_string()))?;
    let q = AdelePrime { prime };
    let kind = if localized {
        q.localization_kind()
    } else {
        q.quotient_kind()
    };
    let label = if localized {
        format!("A at {q}")
    } else {
        format!("A/{q}")
    };
    let mut text = format!("{label} = {kind}\n");
    let mut value = json!({ "prime": prime, "ring": kind.name() });
    if let Some(f) = f {
        let x = adele_from_fraction(&parse_element(ctx, "f", f)?, den).map_err(|e| match e {
            Error::DivisionByZero => Error::malformed("den", "must be positive"),
            other => other,
        })?;
        let image = q.project(&x)?;
        let _ = writeln!(text, "image {image}");
        value["image"] = serde_json::to_value(ComponentValueJson::from(&image)).expect("values serialize");
    }
    Ok(Rendered { json: value, text })
}

fn parse_nat(field: &str, s: &str) -> Result<AsymptoticNat> {
    AsymptoticNat::new(parse_list(field, s)?).map_err(|e| Error::malformed(field, e.to_string()))
}

fn parse_symbolic_prime(s: &str) -> Result<SymbolicPrime> {
    match s {
        "maximal" => Ok(SymbolicPrime::Maximal),
        "zero" => Ok(SymbolicPrime::Zero),
        _ => match s.strip_prefix("deg>=").map(str::parse::<u32>) {
            Some(Ok(k)) if k >= 1 => Ok(SymbolicPrime::DegreeAtLeast(k)),
            _ => Err(Error::malformed(
                "prime",
                format!("expected maximal, zero or deg>=k with k >= 1, got `{s}`"),
            )),
        },
    }
}

fn asymptotic(command: &AsymptoticCommand) -> Result<Rendered> {
    match command {
        AsymptoticCommand::Compare { x, y } => {
            let (x, y) = (parse_nat("x", x)?, parse_nat("y", y)?);
            let ord = match compare(&x, &y) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            Ok(Rendered {
                json: json!({ "x": x, "y": y, "order": ord }),
                text: format!("{x} is {ord} than {y}\n").replace("equal than", "equal to"),
            })
        }
        AsymptoticCommand::Class { x } => {
            let x = parse_nat("x", x)?;
            let class = archimedean_class(&x).map_err(|e| Error::malformed("x", e.to_string()))?;
            let least = least_convex_containing(&x);
            Ok(Rendered {
                json: json!({ "x": x, "class": class, "least_convex": least.to_string() }),
                text: format!("{x} has archimedean class {class}; [x] = {least}\n"),
            })
        }
        AsymptoticCommand::Member { delta, x } => {
            let delta = ConvexSubsemigroup::parse(delta)?;
            let x = parse_nat("x", x)?;
            let prime = prime_of(&delta);
            let in_delta = delta.contains(&x);
            let in_prime = prime.contains(&ValuationValue::Finite(x.clone()));
            Ok(Rendered {
                json: json!({
                    "x": x,
                    "delta": delta.to_string(),
                    "member": in_delta,
                    "prime": prime.to_string(),
                    "valuation_in_prime": in_prime,
                }),
                text: format!(
                    "{x} {} {delta}; valuation {x} {} P = {prime}\n",
                    if in_delta { "in" } else { "not in" },
                    if in_prime { "in" } else { "not in" }
                ),
            })
        }
        AsymptoticCommand::Galois { delta, prime } => {
            let (delta, prime) = match (delta, prime) {
                (Some(d), _) => {
                    let d = ConvexSubsemigroup::parse(d)?;
                    (d, prime_of(&d))
                }
                (None, Some(p)) => {
                    let p = parse_symbolic_prime(p)?;
                    (delta_of(&p), p)
                }
                (None, None) => return Err(Error::malformed("delta", "give --delta or --prime")),
            };
            let round_trip = delta_of(&prime) == delta && prime_of(&delta) == prime;
            Ok(Rendered {
                json: json!({ "delta": delta.to_string(), "prime": prime.to_string(), "round_trip": round_trip }),
                text: format!("delta {delta} <-> prime {prime}\n"),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zhat(args: &str) -> Outcome {
        run(std::iter::once("zhat").chain(args.split_whitespace()))
    }

    #[test]
    fn spec_lists_six_points() {
        let out = zhat("spec --primes 2,3,5 --json");
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 6);
        assert_eq!(
            v[1],
            json!({"prime": 2, "level": "maximal", "generator": ["2", "1", "1"]})
        );
    }

    #[test]
    fn eval_and_truthset() {
        assert_eq!(zhat("eval add 1,2,3 4,5,6 --precision 4").stdout, "(5, 7, 9)\n");
        assert_eq!(zhat("eval neg 1,0,1 --precision 4").stdout, "(15, 0, 624)\n");
        let out = zhat("truthset 2,3,1 --json");
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["members"], json!([2, 3]));
        assert_eq!(v["witness"]["locus"], json!([2, 3]));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let out = zhat("eval add 1,2 4,5,6");
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("`a`"), "{}", out.stderr);
        let out = zhat("spec --precision 3");
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("`precision`"));
        assert!(zhat("spec --primes 2,4").stderr.contains("`primes`"));
        assert!(zhat("sections --open m_2").stderr.contains("`open`"));
        assert!(zhat("asymptotic member --delta deg<=0 1").stderr.contains("`delta`"));
        assert_eq!(zhat("nonsense").code, 2);
        assert_eq!(zhat("eval inv 2,1,1").code, 2);
    }

    #[test]
    fn geometry_commands() {
        assert!(zhat("quotient --prime 3").stdout.starts_with("R/m_3 = F_3"));
        assert!(zhat("localize --prime 3 --level minimal --f 1,9,1")
            .stdout
            .contains("image 1*3^2"));
        assert_eq!(
            zhat("sections --open p_2,m_2,p_3").stdout,
            "O({p_2, m_2, p_3}) = Z_2 x Q_3\n"
        );
        assert_eq!(zhat("stalk m_5").stdout, "stalk at m_5 = Z_5\n");
        assert_eq!(zhat("adele spec").stdout, "q_2 over p_2\nq_3 over p_3\nq_5 over p_5\n");
        assert!(zhat("adele quotient --prime 3 --f 1,1,1 --den 3")
            .stdout
            .contains("image 1*3^-1"));
    }

    #[test]
    fn asymptotic_commands() {
        assert_eq!(zhat("asymptotic compare 0,0,1 0,5").stdout, "n^2 is greater than 5n\n");
        assert_eq!(zhat("asymptotic compare 0,5 0,5").stdout, "5n is equal to 5n\n");
        assert!(zhat("asymptotic class 0,1,0,1").stdout.contains("[x] = deg<=3"));
        assert_eq!(
            zhat("asymptotic galois --delta standard").stdout,
            "delta standard <-> prime deg>=1\n"
        );
        assert_eq!(
            zhat("asymptotic galois --prime zero").stdout,
            "delta all <-> prime zero\n"
        );
    }

    #[test]
    fn config_file_is_read() {
        let dir = std::env::temp_dir().join(format!("zhat-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("zhat.toml");
        std::fs::write(&path, "primes = [2, 3]\nprecision = 6\noutput = \"json\"\n").unwrap();
        let out = zhat(&format!("spec --config {}", path.display()));
        assert_eq!(
            serde_json::from_str::<Value>(&out.stdout)
                .unwrap()
                .as_array()
                .unwrap()
                .len(),
            4
        );
        std::fs::write(&path, "primes = [2, 3]\nprecison = 6\n").unwrap();
        let out = zhat(&format!("spec --config {}", path.display()));
        assert_eq!(out.code, 2);
        assert!(
            out.stderr.contains("`config`") && out.stderr.contains("precison"),
            "{}",
            out.stderr
        );
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
