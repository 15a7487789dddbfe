//! Command-line front end: compute commands, verification suites, and
//! machine-readable output.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage
//! errors (including invalid parameters).

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Zero;
use serde_json::json;
use std::str::FromStr;

use crate::action::{act, fractional_residue, normal_form, pairing, Automorphism, TensorField};
use crate::charp::{
    charp_invariants, counterexample_series, lucas_multinomial, restricted_invariance_check, width,
    width_invariance_test,
};
use crate::error::{Error, Result};
use crate::pmk::lie::center_invariants_check;
use crate::pmk::properties::pmk_properties;
use crate::pmk::{pmk_determinant, pmk_generating, pmk_partition, PmkSpec};
use crate::qft::{qft_recursion, recursion_identity_check};
use crate::scalar::{Fp, Rat};
use crate::series::TruncatedSeries;
use crate::verify::{run_suite, SUITES};
use crate::FpSeries;

#[derive(Parser, Debug)]
#[command(
    name = "resline",
    version,
    about = "Exact invariants of formal tensor fields on a line"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct FormatArg {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    Rat::from_str(s.trim()).map_err(|e| format!("bad rational '{s}': {e}"))
}

fn parse_term(s: &str) -> std::result::Result<(i64, u64), String> {
    let (e, c) = s
        .split_once(':')
        .ok_or_else(|| format!("bad term '{s}': expected exp:coeff"))?;
    Ok((
        e.trim()
            .parse()
            .map_err(|err| format!("bad exponent '{e}': {err}"))?,
        c.trim()
            .parse()
            .map_err(|err| format!("bad coefficient '{c}': {err}"))?,
    ))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute P_mk with superscript -1/lambda.
    Pmk {
        #[arg(short, long)]
        m: u32,
        #[arg(short, long)]
        k: u32,
        /// Nonzero rational, e.g. -2 or 1/2.
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        lambda: Rat,
        /// Which construction to run; `all` cross-checks the three.
        #[arg(long, default_value = "all")]
        construction: String,
        /// Also run the closed-form property checks.
        #[arg(long)]
        properties: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Apply an automorphism g = t + sum g_i t^i to a tensor field.
    Act {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        lambda: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        mu: Rat,
        /// Field coefficients x0,x1,... (comma separated rationals).
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        coeffs: Vec<Rat>,
        /// Level n of g in G_n.
        #[arg(long, default_value_t = 1)]
        level: u32,
        /// Tail coefficients g_(level+1),g_(level+2),...
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        g: Vec<Rat>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Reduce a tensor field to its canonical orbit representative.
    NormalForm {
        #[arg(short, long)]
        m: u32,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        lambda: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        mu: Rat,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        coeffs: Vec<Rat>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Fractional residue of a field with mu = (k+1) lambda.
    Fres {
        #[arg(short, long)]
        k: u32,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        lambda: Rat,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        coeffs: Vec<Rat>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Bilinear residue pairing of two fields (lambda + lambda' = -1).
    Pair {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        lambda1: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        mu1: Rat,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        coeffs1: Vec<Rat>,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        lambda2: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        mu2: Rat,
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
        coeffs2: Vec<Rat>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Check annihilation of the central generators of U(m+1, n+1).
    LieCheck {
        #[arg(short, long)]
        m: u32,
        #[arg(short, long)]
        n: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Invariants ord0/md/ord_md and width of a series over F_p.
    Width {
        #[arg(short, long)]
        p: u64,
        /// The series as comma-separated exp:coeff pairs, e.g. 2:1,3:1
        /// for t^2 + t^3. Exponents may be negative.
        #[arg(long, value_delimiter = ',', value_parser = parse_term, allow_hyphen_values = true)]
        series: Vec<(i64, u64)>,
        /// Exclusive precision bound (defaults to one past the largest
        /// listed exponent).
        #[arg(long)]
        prec: Option<i64>,
        /// Also run the seeded invariance sweep with this many trials.
        #[arg(long)]
        trials: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Lucas-type multinomial residue mod p (k may be negative).
    Lucas {
        #[arg(short, long)]
        p: u64,
        #[arg(short, long, allow_hyphen_values = true)]
        k: i64,
        /// Parts q1,q2,...
        #[arg(long, value_delimiter = ',')]
        parts: Vec<u64>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// The F_p(c) series with no polynomial normal form.
    Counterexample {
        #[arg(short, long)]
        p: u64,
        /// Precision (exclusive exponent bound), at least p^2.
        #[arg(short = 'N', long)]
        n: i64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Restricted (mod p) invariance of the central generators.
    Restricted {
        #[arg(short, long)]
        m: u32,
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        p: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// The QFT recursion polynomials P_2..P_kmax.
    Qft {
        #[arg(long)]
        kmax: u32,
        /// Also check the identification with P_0k.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run a verification suite (or all of them).
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Worker threads for the parameter sweeps.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        format: FormatArg,
    },
}

/// Parse the process arguments and run; returns the exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(format: Format, text: impl FnOnce() -> String, value: impl FnOnce() -> serde_json::Value) {
    match format {
        Format::Text => println!("{}", text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value()).unwrap()),
    }
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Pmk {
            m,
            k,
            lambda,
            construction,
            properties,
            format,
        } => {
            if lambda.is_zero() {
                return Err(Error::ZeroLambda);
            }
            if k == 0 {
                return Err(Error::InvalidParameter("k must be positive".into()));
            }
            let spec = PmkSpec::new(m, k, lambda)?;
            let (poly, cross_ok) = match construction.as_str() {
                "generating" => (pmk_generating(&spec)?, true),
                "partition" => (pmk_partition(&spec)?, true),
                "determinant" => (pmk_determinant(&spec)?, true),
                "all" => {
                    let a = pmk_generating(&spec)?;
                    let b = pmk_partition(&spec)?;
                    let c = pmk_determinant(&spec)?;
                    let ok = a == b && b == c;
                    (b, ok)
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown construction '{other}'"
                    )))
                }
            };
            let prop_report = if properties {
                Some(pmk_properties(&spec)?)
            } else {
                None
            };
            emit(
                format.format,
                || {
                    let mut s = poly.to_string();
                    if !cross_ok {
                        s.push_str("\nCROSS-CHECK FAILED");
                    }
                    if let Some(r) = &prop_report {
                        s.push_str(&format!(
                            "\nproperties: {}",
                            if r.pass { "pass" } else { "FAIL" }
                        ));
                    }
                    s
                },
                || {
                    json!({
                        "m": m, "k": k, "lambda": spec.lambda().to_string(),
                        "polynomial": poly.to_json(),
                        "cross_check": cross_ok,
                        "properties": prop_report,
                    })
                },
            );
            Ok(
                if cross_ok && prop_report.as_ref().map(|r| r.pass).unwrap_or(true) {
                    0
                } else {
                    1
                },
            )
        }

        Command::Act {
            lambda,
            mu,
            coeffs,
            level,
            g,
            format,
        } => {
            if coeffs.is_empty() {
                return Err(Error::InvalidParameter(
                    "need at least one coefficient".into(),
                ));
            }
            let field = TensorField::new(lambda, mu, coeffs);
            let prec = field.precision() as i64 + 1;
            let auto = Automorphism::from_tail(level, &g, prec)?;
            let out = act(&auto, &field)?;
            emit(
                format.format,
                || {
                    out.coeffs()
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                },
                || out.to_json(),
            );
            Ok(0)
        }

        Command::NormalForm {
            m,
            lambda,
            mu,
            coeffs,
            format,
        } => {
            if coeffs.is_empty() {
                return Err(Error::InvalidParameter(
                    "need at least one coefficient".into(),
                ));
            }
            let field = TensorField::new(lambda, mu, coeffs);
            let nf = normal_form(&field, m)?;
            emit(
                format.format,
                || {
                    format!(
                        "canonical: {}\nresonant index: {}\nexceptional: {}\nwitness: {}",
                        nf.canonical
                            .coeffs()
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(","),
                        nf.resonant_index
                            .map(|i| i.to_string())
                            .unwrap_or("none".into()),
                        nf.exceptional,
                        nf.witness.series(),
                    )
                },
                || {
                    json!({
                        "canonical": nf.canonical.to_json(),
                        "witness": nf.witness.to_json(),
                        "resonant_index": nf.resonant_index,
                        "exceptional": nf.exceptional,
                    })
                },
            );
            Ok(0)
        }

        Command::Fres {
            k,
            lambda,
            coeffs,
            format,
        } => {
            if lambda.is_zero() {
                return Err(Error::ZeroLambda);
            }
            let mu = Rat::from_integer((k as i64 + 1).into()) * &lambda;
            let field = TensorField::new(lambda, mu, coeffs);
            let value = fractional_residue(&field, k)?;
            emit(
                format.format,
                || value.to_string(),
                || json!({ "k": k, "value": value.to_string() }),
            );
            Ok(0)
        }

        Command::Pair {
            lambda1,
            mu1,
            coeffs1,
            lambda2,
            mu2,
            coeffs2,
            format,
        } => {
            let t = TensorField::new(lambda1, mu1, coeffs1);
            let s = TensorField::new(lambda2, mu2, coeffs2);
            let value = pairing(&t, &s)?;
            emit(
                format.format,
                || value.to_string(),
                || json!({ "value": value.to_string() }),
            );
            Ok(0)
        }

        Command::LieCheck { m, n, format } => {
            let report = center_invariants_check(m, n)?;
            emit(
                format.format,
                || {
                    let mut s = format!(
                        "center of U({},{}) membership: {}\n",
                        m + 1,
                        n + 1,
                        if report.pass { "pass" } else { "FAIL" }
                    );
                    for c in &report.checks {
                        s.push_str(&format!(
                            "  {}: {}\n",
                            c.generator,
                            if c.annihilated {
                                "annihilated"
                            } else {
                                "NOT annihilated"
                            }
                        ));
                    }
                    s.trim_end().to_string()
                },
                || serde_json::to_value(&report).unwrap(),
            );
            Ok(if report.pass { 0 } else { 1 })
        }

        Command::Width {
            p,
            series,
            prec,
            trials,
            seed,
            format,
        } => {
            if !crate::scalar::fp::is_prime(p) {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
            if series.is_empty() {
                return Err(Error::InvalidParameter(
                    "series must have at least one term".into(),
                ));
            }
            let ord = series.iter().map(|&(e, _)| e).min().unwrap();
            let top = series.iter().map(|&(e, _)| e).max().unwrap();
            let prec = prec.unwrap_or(top + 1).max(top + 1);
            let mut coeffs = vec![Fp::new(0, p); (prec - ord) as usize];
            for &(e, c) in &series {
                coeffs[(e - ord) as usize] = Fp::new(c, p);
            }
            let series: FpSeries = TruncatedSeries::new(ord, coeffs);
            let inv = charp_invariants(&series, p)?;
            let w = width(&series, p)?;
            let sweep = match trials {
                Some(t) => Some(width_invariance_test(&series, p, t, seed, true)?),
                None => None,
            };
            let stable = sweep.as_ref().map(|r| r.all_stable).unwrap_or(true);
            emit(
                format.format,
                || {
                    let mut s = format!(
                        "ord0={} md={} ord_md={} width={w}",
                        inv.ord0.map(|v| v.to_string()).unwrap_or("inf".into()),
                        inv.md.map(|v| v.to_string()).unwrap_or("inf".into()),
                        inv.ord_md.map(|v| v.to_string()).unwrap_or("inf".into()),
                    );
                    if let Some(r) = &sweep {
                        s.push_str(&format!(
                            "\ninvariance over {} trials: {}",
                            r.trials,
                            if r.all_stable { "stable" } else { "UNSTABLE" }
                        ));
                    }
                    s
                },
                || json!({ "invariants": inv, "width": w, "sweep": sweep }),
            );
            Ok(if stable { 0 } else { 1 })
        }

        Command::Lucas {
            p,
            k,
            parts,
            format,
        } => {
            if !crate::scalar::fp::is_prime(p) {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
            let r = lucas_multinomial(k, &parts, p);
            emit(
                format.format,
                || format!("{} mod {p} (nonzero: {})", r.residue, r.nonzero),
                || json!({ "k": k, "parts": parts, "p": p, "residue": r.residue, "nonzero": r.nonzero }),
            );
            Ok(0)
        }

        Command::Counterexample { p, n, format } => {
            if !crate::scalar::fp::is_prime(p) {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
            let h = counterexample_series(p, n)?;
            emit(format.format, || h.to_string(), || h.to_json());
            Ok(0)
        }

        Command::Restricted { m, n, p, format } => {
            let report = restricted_invariance_check(m, n, p)?;
            emit(
                format.format,
                || {
                    let mut s = format!(
                        "restricted center membership mod {p}: {}\n",
                        if report.pass { "pass" } else { "FAIL" }
                    );
                    for c in &report.checks {
                        s.push_str(&format!(
                            "  {}: {}\n",
                            c.generator,
                            if c.annihilated {
                                "annihilated"
                            } else {
                                "NOT annihilated"
                            }
                        ));
                    }
                    s.trim_end().to_string()
                },
                || serde_json::to_value(&report).unwrap(),
            );
            Ok(if report.pass { 0 } else { 1 })
        }

        Command::Qft {
            kmax,
            verify,
            format,
        } => {
            if kmax < 2 {
                return Err(Error::InvalidParameter("kmax must be at least 2".into()));
            }
            let polys = qft_recursion(kmax)?;
            let mut reports = vec![];
            if verify {
                for k in 2..=kmax {
                    reports.push(recursion_identity_check(k)?);
                }
            }
            let all_ok = reports.iter().all(|r| r.pass);
            emit(
                format.format,
                || {
                    let mut s = String::new();
                    for (i, p) in polys.iter().enumerate() {
                        s.push_str(&format!("P_{} = {}\n", i + 2, p));
                    }
                    for r in &reports {
                        s.push_str(&format!(
                            "identity k={}: {}\n",
                            r.k,
                            if r.pass { "pass" } else { "FAIL" }
                        ));
                    }
                    s.trim_end().to_string()
                },
                || {
                    json!({
                        "polynomials": polys.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                        "identity_checks": reports,
                    })
                },
            );
            Ok(if all_ok { 0 } else { 1 })
        }

        Command::Verify {
            suite,
            jobs,
            format,
        } => {
            if let Some(j) = jobs {
                // Ignore failure when a pool is already installed.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build_global();
            }
            let names: Vec<&str> = if suite == "all" {
                SUITES.iter().map(|(n, _)| *n).collect()
            } else {
                vec![SUITES
                    .iter()
                    .map(|(n, _)| *n)
                    .find(|n| *n == suite)
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "unknown suite '{suite}'; known: {}",
                            SUITES
                                .iter()
                                .map(|(n, _)| *n)
                                .collect::<Vec<_>>()
                                .join(", ")
                        ))
                    })?]
            };
            let mut all_pass = true;
            let mut reports = vec![];
            for name in names {
                let r = run_suite(name)?;
                all_pass &= r.pass;
                eprintln!("suite {} finished in {} ms", r.suite, r.elapsed_ms);
                if format.format == Format::Text {
                    print!("{r}");
                }
                reports.push(r);
            }
            if format.format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&reports).unwrap());
            }
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}
