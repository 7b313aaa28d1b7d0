//! Command-line surface and the validated, serializable run configuration.

use std::fmt::Display;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use rdk_core::gf::FieldDescriptor;
use rdk_core::permcheck::{TheoremId, DEFAULT_MAX_Q};

use crate::spans::Spans;
use crate::{usage, CliError};

/// Longest `n` range (or `k` list) accepted without `--unsafe-large`.
pub const MAX_RANGE: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

/// Evaluators selectable with `eval --method`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Recurrence,
    Definition,
    Functional,
    Fnk,
    #[value(name = "closed_form")]
    ClosedForm,
    Char2,
    A0,
    Genfun,
    Polynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PpCriterion {
    #[value(name = "brute_force")]
    BruteForce,
    #[value(name = "two_to_one")]
    TwoToOne,
    #[value(name = "theorem_closed_form", alias = "theorem")]
    TheoremClosedForm,
}

impl PpCriterion {
    pub fn name(self) -> &'static str {
        match self {
            PpCriterion::BruteForce => "brute_force",
            PpCriterion::TwoToOne => "two_to_one",
            PpCriterion::TheoremClosedForm => "theorem_closed_form",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rdk", version, about = "Evaluate and check D_{n,k}(a, x) over GF(q)")]
pub struct Cli {
    /// Field: `q`, `p^e` or `p^e/c0,c1,...,1` (modulus constant term first).
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cross-check the result with every applicable method.
    #[arg(long, global = true)]
    pub check: bool,
    /// Lift the size guards.
    #[arg(long, global = true)]
    pub unsafe_large: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate D_{n,k}(a, x).
    Eval {
        #[arg(long)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Coordinates of a, constant first.
        #[arg(long, default_value = "1")]
        a: String,
        /// Coordinates of x, constant first.
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
    },
    /// Polynomial representative of D_{n,k}(1, x) mod x^q - x, and f_{n,k}.
    Poly {
        #[arg(long)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// Permutation verdicts over an (n, k) grid.
    Pp {
        #[arg(long)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Defaults to brute_force,two_to_one (brute_force alone in characteristic 2).
        #[arg(long, value_enum, value_delimiter = ',')]
        criteria: Option<Vec<PpCriterion>>,
    },
    /// Check a permutation theorem on a grid, or `sums` against brute force.
    Verify {
        /// Theorem id (T2.1, T2.2, T-pl1-k2, ...) or `sums`.
        id: String,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        e: Option<String>,
        #[arg(long)]
        l: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        k: Option<String>,
    },
    /// Table of sums of D_{n,k}(1, a) over a in GF(q), n in [1, q^2-1].
    Sums {
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        n: Option<String>,
    },
    /// Describe the field.
    FieldInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyTarget {
    Theorem(TheoremId),
    Sums,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum CommandConfig {
    Eval {
        #[serde(with = "decimal")]
        n: BigUint,
        #[serde(with = "decimal")]
        k: BigInt,
        a: Vec<u64>,
        x: Vec<u64>,
        method: Method,
    },
    Poly {
        #[serde(with = "decimal")]
        n: BigUint,
        #[serde(with = "decimal")]
        k: BigInt,
    },
    Pp {
        ns: Spans,
        ks: Spans,
        criteria: Vec<PpCriterion>,
    },
    Verify {
        target: VerifyTarget,
        primes: Vec<u64>,
        exponents: Vec<u32>,
        ls: Vec<u32>,
        ns: Spans,
        ks: Option<Spans>,
    },
    Sums {
        ks: Option<Spans>,
        ns: Option<Spans>,
    },
    FieldInfo,
}

/// Everything a run needs, parsed and checked against the size guards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub field: Option<String>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub check: bool,
    pub unsafe_large: bool,
    pub max_q: u64,
    pub max_range: u64,
    pub command: CommandConfig,
}

mod decimal {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

fn parse<T: FromStr>(what: &str, s: &str) -> Result<T, CliError>
where
    T::Err: Display,
{
    s.trim().parse().map_err(|e| usage(format!("--{what}: {e}")))
}

fn coords(what: &str, s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|c| c.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("--{what}: expected comma-separated coordinates, got {s:?}")))
}

fn u32s(what: &str, s: &Spans) -> Result<Vec<u32>, CliError> {
    s.to_u64s(what)
        .map_err(usage)?
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| usage(format!("--{what}: {v} is too large"))))
        .collect()
}

fn order(p: u64, e: u32) -> Option<u64> {
    p.checked_pow(e)
}

impl RunConfig {
    /// `env_max_q` is the value of `RDK_MAX_Q`, if set.
    pub fn from_cli(cli: Cli, env_max_q: Option<&str>) -> Result<RunConfig, CliError> {
        let max_q = match env_max_q {
            Some(v) => v.trim().parse().map_err(|_| usage(format!("RDK_MAX_Q: expected an integer, got {v:?}")))?,
            None => DEFAULT_MAX_Q,
        };
        let descriptor = cli.field.as_deref().map(|f| f.parse::<FieldDescriptor>()).transpose()?;
        let need_field = || {
            descriptor.clone().ok_or_else(|| usage("this command needs --field"))
        };
        let command = match cli.command {
            Command::Eval { n, k, a, x, method } => {
                need_field()?;
                CommandConfig::Eval {
                    n: parse("n", &n)?,
                    k: parse("k", &k)?,
                    a: coords("a", &a)?,
                    x: coords("x", &x)?,
                    method,
                }
            }
            Command::Poly { n, k } => {
                need_field()?;
                CommandConfig::Poly { n: parse("n", &n)?, k: parse("k", &k)? }
            }
            Command::Pp { n, k, criteria } => {
                let desc = need_field()?;
                let ns: Spans = parse("n", &n)?;
                ns.to_u64s("--n").map_err(usage)?;
                let criteria = criteria.unwrap_or_else(|| {
                    if desc.p == 2 {
                        vec![PpCriterion::BruteForce]
                    } else {
                        vec![PpCriterion::BruteForce, PpCriterion::TwoToOne]
                    }
                });
                CommandConfig::Pp { ns, ks: parse("k", &k)?, criteria }
            }
            Command::Verify { id, p, e, l, n, k } => {
                let target = if id.eq_ignore_ascii_case("sums") {
                    VerifyTarget::Sums
                } else {
                    VerifyTarget::Theorem(id.parse().map_err(|e: rdk_core::permcheck::PermError| usage(e.to_string()))?)
                };
                if target == VerifyTarget::Sums && descriptor.is_some() && (p.is_some() || e.is_some()) {
                    return Err(usage("verify sums takes either --field or --p/--e, not both"));
                }
                let from_field = descriptor.as_ref().map(|d| (d.p, d.e));
                let primes = match (&p, from_field) {
                    (Some(p), _) => parse::<Spans>("p", p)?.to_u64s("--p").map_err(usage)?,
                    (None, Some((p, _))) => vec![p],
                    (None, None) if target == VerifyTarget::Sums => {
                        return Err(usage("verify sums needs --field or --p"))
                    }
                    (None, None) => vec![3, 5, 7],
                };
                let exponents = match (&e, from_field) {
                    (Some(e), _) => u32s("--e", &parse("e", e)?)?,
                    (None, Some((_, e))) if p.is_none() => vec![e],
                    _ => vec![1],
                };
                let ls = u32s("--l", &parse("l", l.as_deref().unwrap_or("0..2"))?)?;
                let ns: Spans = parse("n", n.as_deref().unwrap_or("1..30"))?;
                ns.to_u64s("--n").map_err(usage)?;
                let ks = k.map(|k| parse::<Spans>("k", &k)).transpose()?;
                if let Some(ks) = &ks {
                    ks.to_u64s("--k").map_err(usage)?;
                }
                CommandConfig::Verify { target, primes, exponents, ls, ns, ks }
            }
            Command::Sums { k, n } => {
                need_field()?;
                let ks = k.map(|k| parse::<Spans>("k", &k)).transpose()?;
                let ns = n.map(|n| parse::<Spans>("n", &n)).transpose()?;
                CommandConfig::Sums { ks, ns }
            }
            Command::FieldInfo => {
                need_field()?;
                CommandConfig::FieldInfo
            }
        };
        let config = RunConfig {
            field: cli.field,
            format: cli.format,
            out: cli.out,
            check: cli.check,
            unsafe_large: cli.unsafe_large,
            max_q,
            max_range: MAX_RANGE,
            command,
        };
        config.check_guards()?;
        Ok(config)
    }

    pub fn descriptor(&self) -> Result<FieldDescriptor, CliError> {
        let field = self.field.as_deref().ok_or_else(|| usage("this command needs --field"))?;
        Ok(field.parse()?)
    }

    /// Size bound for fields, `u64::MAX` under `--unsafe-large`.
    pub fn effective_max_q(&self) -> u64 {
        if self.unsafe_large {
            u64::MAX
        } else {
            self.max_q
        }
    }

    /// Enforces the size guards. Runs before any field is built.
    pub fn check_guards(&self) -> Result<(), CliError> {
        if self.unsafe_large {
            return Ok(());
        }
        let hint = "pass --unsafe-large or raise RDK_MAX_Q";
        let check_q = |p: u64, e: u32| match order(p, e) {
            Some(q) if q <= self.max_q => Ok(()),
            _ => Err(usage(format!("GF({p}^{e}) exceeds the size guard q <= {}; {hint}", self.max_q))),
        };
        let check_len = |what: &str, s: &Spans| {
            if s.len() > self.max_range as u128 {
                Err(usage(format!("--{what} has {} values, above the guard {}; {hint}", s.len(), self.max_range)))
            } else {
                Ok(())
            }
        };
        if let Some(field) = &self.field {
            let d: FieldDescriptor = field.parse()?;
            if !matches!(self.command, CommandConfig::Verify { target: VerifyTarget::Theorem(_), .. }) {
                check_q(d.p, d.e)?;
            }
        }
        match &self.command {
            CommandConfig::Pp { ns, ks, .. } => {
                check_len("n", ns)?;
                check_len("k", ks)?;
            }
            CommandConfig::Verify { primes, exponents, ns, ks, .. } => {
                check_len("n", ns)?;
                if let Some(ks) = ks {
                    check_len("k", ks)?;
                }
                for &p in primes {
                    for &e in exponents {
                        check_q(p, e)?;
                    }
                }
            }
            CommandConfig::Sums { ks, ns } => {
                if let Some(ks) = ks {
                    check_len("k", ks)?;
                }
                if let Some(ns) = ns {
                    check_len("n", ns)?;
                }
            }
            _ => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("rdk").chain(args.iter().copied())).unwrap();
        RunConfig::from_cli(cli, None)
    }

    #[test]
    fn round_trips_through_json() {
        let cases: &[&[&str]] = &[
            &["eval", "--field", "5", "--n", "4", "--k", "-2", "--x", "2"],
            &["--field", "9", "eval", "--n", "123456789012345678901234567890", "--k", "1", "--a", "1,2", "--x", "0,1"],
            &["poly", "--field", "7", "--n", "3", "--k", "0"],
            &["pp", "--field", "7", "--n", "1..10", "--k", "0..6", "--format", "csv"],
            &["verify", "T2.2", "--p", "5,7", "--e", "1", "--n", "1..30"],
            &["verify", "sums", "--field", "5", "--k", "0..4"],
            &["sums", "--field", "5", "--k", "3", "--out", "x.csv"],
            &["field-info", "--field", "3^2/2,2,1"],
        ];
        for args in cases {
            let c = config(args).unwrap();
            let text = serde_json::to_string(&c).unwrap();
            let back: RunConfig = serde_json::from_str(&text).unwrap();
            assert_eq!(back, c, "{args:?}");
        }
    }

    #[test]
    fn field_guard() {
        let err = config(&["field-info", "--field", "11^3"]).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
        assert!(config(&["field-info", "--field", "11^3", "--unsafe-large"]).is_ok());
        let cli = Cli::try_parse_from(["rdk", "field-info", "--field", "11^3"]).unwrap();
        assert!(RunConfig::from_cli(cli, Some("1400")).is_ok());
        let cli = Cli::try_parse_from(["rdk", "field-info", "--field", "5"]).unwrap();
        assert!(RunConfig::from_cli(cli, Some("many")).is_err());
    }

    #[test]
    fn range_guard() {
        assert!(config(&["pp", "--field", "3", "--n", "1..1000001", "--k", "0"]).is_err());
        assert!(config(&["pp", "--field", "3", "--n", "1..1000000", "--k", "0"]).is_ok());
        assert!(config(&["verify", "T2.1", "--p", "11", "--e", "3"]).is_err());
    }

    #[test]
    fn missing_or_bad_inputs() {
        assert!(config(&["eval", "--n", "1", "--k", "0", "--x", "1"]).is_err());
        assert!(config(&["eval", "--field", "5", "--n=-1", "--k", "0", "--x", "1"]).is_err());
        assert!(config(&["eval", "--field", "5", "--n", "1", "--k", "0", "--x", "a"]).is_err());
        assert!(config(&["verify", "T9.9"]).is_err());
        assert!(config(&["pp", "--field", "6", "--n", "1", "--k", "0"]).is_err());
    }

    #[test]
    fn verify_defaults_follow_the_field() {
        let c = config(&["verify", "T2.1", "--field", "9"]).unwrap();
        match c.command {
            CommandConfig::Verify { primes, exponents, .. } => {
                assert_eq!(primes, vec![3]);
                assert_eq!(exponents, vec![2]);
            }
            _ => unreachable!(),
        }
    }
}
