//! Command-line front end: argument parsing, the report document and its
//! JSON and Markdown renderings.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::cantor::{cover_check, cylinders_disjoint, cylinders_nested, enumerate_cn, generate, level_cover, ROOT_WORD};
use crate::error::{Error, Result};
use crate::exact::{QuadSurd, DEFAULT_DISC};
use crate::hall::{mu_delta_bounds, product_checks, run_decompose, DecomposeReport};
use crate::report::CheckRecord;
use crate::subshift::count_with_prefix;
use crate::thickness::{bound_rows, certify, constant_checks, gamma_exclusion_check, BoundRow, CertReport, GammaCheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Root interval and product interval endpoints.
    Endpoints,
    /// The nine type bounds and the constants λ, τ, γ, μ, δ.
    Bounds,
    /// Build the construction to --depth and check every gap.
    Certify,
    /// Decompose --target as a product and verify the witness word.
    Decompose,
    /// Cross-check the subdivision tree against the cylinder enumeration.
    OracleCheck,
    /// Everything above in one document.
    Report,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Endpoints => "endpoints",
            Command::Bounds => "bounds",
            Command::Certify => "certify",
            Command::Decompose => "decompose",
            Command::OracleCheck => "oracle-check",
            Command::Report => "report",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(name = "f4star", version, about = "Exact certification of the F4* Cantor set and its product interval")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Subdivision levels for certify and oracle-check, refinement steps
    /// for decompose.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    pub depth: u32,
    /// Decimal places in previews.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u32).range(10..))]
    pub precision: u32,
    /// Target for decompose: a surd such as "(19425+111*sqrt(26565))/2030",
    /// "10+6*sqrt(2)", a fraction or a decimal.
    #[arg(long, global = true)]
    pub target: Option<String>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Radicand assumed for targets written without one.
    #[arg(long, global = true, default_value_t = DEFAULT_DISC)]
    pub disc: u64,
}

/// Validated run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub depth: u32,
    pub precision: usize,
    pub target: Option<QuadSurd>,
    pub jobs: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub disc: u64,
}

impl TryFrom<Cli> for RunConfig {
    type Error = Error;

    fn try_from(cli: Cli) -> Result<Self> {
        let target = match (cli.command, &cli.target) {
            (Command::Decompose, Some(t)) => Some(QuadSurd::parse_in(t, cli.disc)?),
            (Command::Decompose, None) => return Err(Error::Parse("decompose needs --target".into())),
            (_, Some(_)) => return Err(Error::Parse("--target only applies to decompose".into())),
            (_, None) => None,
        };
        if cli.jobs == Some(0) {
            return Err(Error::Parse("--jobs must be at least 1".into()));
        }
        Ok(RunConfig {
            command: cli.command,
            depth: cli.depth,
            precision: cli.precision as usize,
            target,
            jobs: cli.jobs,
            output: cli.output,
            format: cli.format,
            disc: cli.disc,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Endpoints {
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub types: Vec<BoundRow>,
    pub checks: Vec<CheckRecord>,
    pub gamma: GammaCheck,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleLevel {
    pub n: usize,
    /// Digits in the cylinder words.
    pub digits: usize,
    pub cylinders: usize,
    /// Admissible words of that length, counted on the automaton.
    pub automaton_count: String,
    /// Level-`3n` segments checked, from the full generation when `3n`
    /// fits the depth, else from the pruned tree walk.
    pub segments_checked: usize,
    pub source: &'static str,
    pub cylinders_hit: usize,
    pub disjoint: bool,
    pub nested: bool,
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Oracle {
    pub levels: Vec<OracleLevel>,
    pub pass: bool,
}

/// Levels always covered by oracle-check, whatever the depth.
pub const ORACLE_MIN_LEVELS: usize = 4;

/// The emitted document. Optional sections are present only for the
/// commands that produce them.
#[derive(Clone, Debug, Serialize)]
pub struct Document {
    pub command: &'static str,
    pub depth: u32,
    pub precision: usize,
    pub disc: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<Endpoints>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certify: Option<CertReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub decompose: Vec<DecomposeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Oracle>,
    pub pass: bool,
}

pub fn endpoints(digits: usize) -> Result<Endpoints> {
    let mut checks: Vec<CheckRecord> =
        constant_checks(digits)?.into_iter().filter(|c| c.name.starts_with("root_")).collect();
    checks.extend(product_checks(digits)?.into_iter().filter(|c| c.name.starts_with("product_")));
    let pass = checks.iter().all(|c| c.pass);
    Ok(Endpoints { checks, pass })
}

pub fn bounds(digits: usize) -> Result<Bounds> {
    let types = bound_rows(digits)?;
    let mut checks: Vec<CheckRecord> =
        constant_checks(digits)?.into_iter().filter(|c| !c.name.starts_with("root_")).collect();
    checks.extend(product_checks(digits)?.into_iter().filter(|c| !c.name.starts_with("product_")));
    let gamma = gamma_exclusion_check(digits)?;
    let pass = types.iter().all(|t| t.pass) && checks.iter().all(|c| c.pass) && gamma.pass;
    Ok(Bounds { types, checks, gamma, pass })
}

/// Cover check for `n = 1..=max(depth/3, ORACLE_MIN_LEVELS)`.
pub fn oracle(depth: u32) -> Result<Oracle> {
    let from_generation = (depth as usize / 3).min(crate::cantor::GENERATE_DEPTH_LIMIT as usize / 3);
    let levels_wanted = (depth as usize / 3).max(ORACLE_MIN_LEVELS);
    let generation = generate(3 * from_generation as u32)?;
    let mut levels = Vec::with_capacity(levels_wanted);
    let mut previous = enumerate_cn(1)?;
    for n in 1..=levels_wanted {
        let (report, source) = if n <= from_generation {
            (level_cover(&generation.levels[3 * n], n)?, "generate")
        } else {
            (cover_check(n)?, "tree walk")
        };
        let cyl = enumerate_cn(n + 1)?;
        let count = count_with_prefix(&ROOT_WORD, n + 2);
        let disjoint = cylinders_disjoint(&cyl);
        let nested = cylinders_nested(&previous, &cyl);
        let pass = report.pass() && disjoint && nested && count == cyl.len().into();
        levels.push(OracleLevel {
            n,
            digits: n + 2,
            cylinders: cyl.len(),
            automaton_count: count.to_string(),
            segments_checked: report.nodes,
            source,
            cylinders_hit: report.cylinders_hit,
            disjoint,
            nested,
            failures: report.failures.into_iter().take(20).collect(),
            pass,
        });
        previous = cyl;
    }
    let pass = levels.iter().all(|l| l.pass);
    Ok(Oracle { levels, pass })
}

fn build(config: &RunConfig) -> Result<Document> {
    let digits = config.precision;
    let mut doc = Document {
        command: config.command.name(),
        depth: config.depth,
        precision: digits,
        disc: config.disc,
        endpoints: None,
        bounds: None,
        certify: None,
        decompose: Vec::new(),
        oracle: None,
        pass: false,
    };
    let all = config.command == Command::Report;
    if all || config.command == Command::Endpoints {
        doc.endpoints = Some(endpoints(digits)?);
    }
    if all || config.command == Command::Bounds {
        doc.bounds = Some(bounds(digits)?);
    }
    if all || config.command == Command::Certify {
        doc.certify = Some(certify(config.depth, digits)?);
    }
    if all || config.command == Command::OracleCheck {
        doc.oracle = Some(oracle(config.depth)?);
    }
    if config.command == Command::Decompose {
        let t = config.target.as_ref().expect("validated");
        doc.decompose.push(run_decompose(t, config.depth as usize, digits)?);
    }
    if all {
        let (mu, _) = mu_delta_bounds()?;
        let ceiling = QuadSurd::parse_in(crate::constants::TEN_PLUS_SIX_ROOT_TWO, 2)?;
        doc.decompose.push(run_decompose(&mu, config.depth as usize, digits)?);
        doc.decompose.push(run_decompose(&ceiling, config.depth as usize, digits)?);
    }
    doc.pass = failing_flags(&serde_json::to_value(&doc).expect("serializable")).is_empty();
    Ok(doc)
}

/// Paths of every `pass` flag that is false, e.g. `bounds.checks[3]`.
pub fn failing_flags(v: &Value) -> Vec<String> {
    fn walk(v: &Value, path: &str, out: &mut Vec<String>) {
        match v {
            Value::Object(map) => {
                let here = match map.get("name").and_then(Value::as_str) {
                    Some(n) if path.ends_with(']') => format!("{path}({n})"),
                    _ => path.to_string(),
                };
                for (k, x) in map {
                    if k == "pass" {
                        if x == &Value::Bool(false) && !here.is_empty() {
                            out.push(here.clone());
                        }
                    } else if here.is_empty() {
                        walk(x, k, out);
                    } else {
                        walk(x, &format!("{here}.{k}"), out);
                    }
                }
            }
            Value::Array(items) => {
                for (i, x) in items.iter().enumerate() {
                    walk(x, &format!("{path}[{i}]"), out);
                }
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    walk(v, "", &mut out);
    out.sort();
    out.dedup();
    out
}

/// Result of a run: the rendered document, whether every check passed,
/// and the failing records.
pub struct Outcome {
    pub document: Document,
    pub rendered: String,
    pub failures: Vec<String>,
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    let work = || build(config);
    let document = match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Domain(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    let value = serde_json::to_value(&document).expect("serializable");
    let failures = failing_flags(&value);
    let rendered = match config.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("serializable") + "\n",
        Format::Markdown => markdown(&document),
    };
    Ok(Outcome { document, rendered, failures })
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check_table(out: &mut String, checks: &[CheckRecord]) {
    out.push_str("```\n");
    for c in checks {
        out.push_str(&c.line());
        out.push('\n');
    }
    out.push_str("```\n\n| name | exact | expected | decimal (preview) | result |\n|---|---|---|---|---|\n");
    for c in checks {
        let _ = writeln!(out, "| {} | `{}` | `{}` | {} | {} |", c.name, c.exact, c.expected, c.decimal, mark(c.pass));
    }
    out.push('\n');
}

fn words(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Markdown rendering of the document. Decimal columns are previews; every
/// verdict comes from exact comparison.
pub fn markdown(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# f4star {}\n", doc.command);
    let _ = writeln!(out, "depth {}, precision {}, disc {}\n", doc.depth, doc.precision, doc.disc);
    if let Some(e) = &doc.endpoints {
        let _ = writeln!(out, "## Endpoints: {}\n", mark(e.pass));
        check_table(&mut out, &e.checks);
    }
    if let Some(b) = &doc.bounds {
        let _ = writeln!(out, "## Bounds: {}\n", mark(b.pass));
        out.push_str("| type | first term | second term | terms match | max matches | cap | result |\n|---|---|---|---|---|---|---|\n");
        for t in &b.types {
            let _ = writeln!(
                out,
                "| T{} | `{}` ≈ {} | `{}` ≈ {} | {}/{} | {} | {} | {} |",
                t.type_id,
                t.bound_left.exact,
                t.bound_left.decimal,
                t.bound_right.exact,
                t.bound_right.decimal,
                t.bound_left_matches,
                t.bound_right_matches,
                t.max_matches,
                t.cap,
                mark(t.pass)
            );
        }
        out.push('\n');
        check_table(&mut out, &b.checks);
        let g = &b.gamma;
        let _ = writeln!(
            out,
            "gamma = `{}` ≈ {}: identity {}, closed form {}, gamma·lo > 7/100 {}, |T[4,3]| < 7/100 {}: {}\n",
            g.gamma.exact,
            g.gamma.decimal,
            g.identity,
            g.closed_form,
            g.exceeds_seven_hundredths,
            g.root_shorter,
            mark(g.pass)
        );
    }
    if let Some(c) = &doc.certify {
        let _ = writeln!(out, "## Certify: {}\n", mark(c.pass));
        let _ = writeln!(out, "- depth {}, gaps checked {}", c.depth, c.gaps_checked);
        let _ = writeln!(out, "- lambda = `{}` ≈ {}", c.lambda.exact, c.lambda.decimal);
        let _ = writeln!(out, "- tau_lower = `{}` ≈ {}", c.tau_lower.exact, c.tau_lower.decimal);
        if let Some(w) = &c.worst_ratio {
            let _ = writeln!(
                out,
                "- worst ratio ≈ {} (`{}`), level {} gap {} {} side",
                w.ratio.decimal, w.ratio.exact, w.depth, w.index, w.side
            );
        }
        let _ = writeln!(out, "- every ratio ≤ lambda: {}", mark(c.ratio_all_pass));
        let _ = writeln!(out, "- every ratio ≤ its type bound and equal to its epsilon form: {}", mark(c.type_bound_all_pass));
        let _ = writeln!(out, "- log condition: {}", mark(c.log_condition_all_pass));
        let _ = writeln!(out, "- mirrored log condition: {}", mark(c.mirrored_condition_all_pass));
        let _ = writeln!(out, "- failures: {}\n", c.failure_count);
        for f in &c.failures {
            let _ = writeln!(out, "  - level {} gap {}: {}", f.depth, f.index, f.check);
        }
    }
    if let Some(o) = &doc.oracle {
        let _ = writeln!(out, "## Oracle check: {}\n", mark(o.pass));
        out.push_str("| n | digits | cylinders | automaton count | segments | source | cylinders hit | disjoint | nested | result |\n|---|---|---|---|---|---|---|---|---|---|\n");
        for l in &o.levels {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                l.n, l.digits, l.cylinders, l.automaton_count, l.segments_checked, l.source, l.cylinders_hit,
                l.disjoint, l.nested, mark(l.pass)
            );
        }
        out.push('\n');
        for l in o.levels.iter().filter(|l| !l.failures.is_empty()) {
            let _ = writeln!(out, "n = {}: {}\n", l.n, l.failures.join("; "));
        }
    }
    for d in &doc.decompose {
        let _ = writeln!(out, "## Decompose {}: {}\n", d.target.decimal, mark(d.pass));
        let _ = writeln!(out, "- target `{}`", d.target.exact);
        if let Some(e) = &d.surrogate_error {
            let _ = writeln!(out, "- rational stand-in, off by {e}");
        }
        let _ = writeln!(out, "- steps {}, backtracks {}", d.depth, d.backtracks);
        let _ = writeln!(out, "- final product width ≈ {}", d.width.decimal);
        let _ = writeln!(out, "- x = [{}, ...]", words(&d.x_prefix));
        let _ = writeln!(out, "- y = [{}, ...]\n", words(&d.y_prefix));
        out.push_str("| step | factor | side | type | child lo | child hi | width (preview) |\n|---|---|---|---|---|---|---|\n");
        for s in &d.steps {
            let _ = writeln!(
                out,
                "| {} | {:?} | {:?} | T{} | `{}` | `{}` | {} |",
                s.step, s.factor, s.side, s.kind, s.lo, s.hi, s.width
            );
        }
        let w = &d.witness;
        let _ = writeln!(out, "\n### Witness word: {}\n", mark(w.pass));
        let _ = writeln!(out, "- {} digits in {} blocks", w.digits, w.blocks);
        let _ = writeln!(out, "- junctions at {:?} ...", d.junction_indices);
        let _ = writeln!(out, "- head: {}", words(&d.witness_head));
        let _ = writeln!(out, "- distances strictly decreasing: {}", w.distances_decreasing);
        if let Some((k, v)) = &w.worst_sample {
            let _ = writeln!(out, "- {} non-junction products sampled, largest ≈ {} at {}", w.sampled, v, k);
        }
        let _ = writeln!(out, "- sample failures: {:?}", w.sample_failures);
        let _ = writeln!(out, "- pattern violations: {:?}\n", w.pattern_violations);
        out.push_str("| block | index | rho (preview) | distance | bound | within |\n|---|---|---|---|---|---|\n");
        for j in &w.junctions {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                j.block, j.index, j.rho, j.distance, j.bound, j.within_bound
            );
        }
        out.push('\n');
    }
    let _ = writeln!(out, "## Result: {}", mark(doc.pass));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig> {
        let cli = Cli::try_parse_from(std::iter::once("f4star").chain(args.iter().copied()))
            .map_err(|e| Error::Parse(e.to_string()))?;
        RunConfig::try_from(cli)
    }

    #[test]
    fn argument_rules() {
        assert!(config(&["bounds", "--precision", "9"]).is_err());
        assert!(config(&["certify", "--depth", "0"]).is_err());
        assert!(config(&["decompose"]).is_err());
        assert!(config(&["bounds", "--target", "18.3"]).is_err());
        let c = config(&["decompose", "--target", "183/10", "--depth", "5"]).unwrap();
        assert_eq!(c.target.unwrap().to_rational().unwrap(), crate::BigRat::new(183.into(), 10.into()));
    }

    #[test]
    fn bounds_lines() {
        let out = run(&config(&["bounds"]).unwrap()).unwrap();
        assert!(out.failures.is_empty(), "{:?}", out.failures);
        assert!(out
            .rendered
            .contains("tau_lower = (83497*sqrt(26565)-228339)/13158329 ≈ 1.0169 PASS"));
    }

    #[test]
    fn failing_flags_named() {
        let v: Value = serde_json::json!({
            "pass": false,
            "checks": [{"name": "mu", "pass": true}, {"name": "delta", "pass": false}],
            "oracle": {"pass": false, "levels": [{"n": 1, "pass": false}]}
        });
        assert_eq!(failing_flags(&v), ["checks[1](delta)", "oracle", "oracle.levels[0]"]);
    }

    #[test]
    fn json_is_deterministic() {
        let c = config(&["oracle-check", "--format", "json", "--depth", "6", "--jobs", "2"]).unwrap();
        let a = run(&c).unwrap().rendered;
        let b = run(&c).unwrap().rendered;
        assert_eq!(a, b);
        assert!(a.contains("\"pass\": true"));
    }
}
