//! Command definitions and dispatch. [`run`] returns the text written to
//! stdout; the binary maps errors to exit codes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use a1fib_core::census::{census, CensusEntry, CensusError, CensusTable, Total};
use a1fib_core::exact_algebra::{LaurentPoly, Rational, UniPoly};
use a1fib_core::fibration_classifier::{
    equivalent, mu2_normalize, ClassifierError, Epsilon, SlsParams, Verdict,
};
use a1fib_core::hirzebruch::{canonical, HClass, HirzebruchError};
use a1fib_core::pencil_resolver::{
    bvs_contact_order, bvs_curve, resolve_complete, resolve_conic, resolve_mult2, resolve_reduced,
    resolve_sls, PencilError, Resolution,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::formats::{to_dot, GraphDoc};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Hirzebruch(#[from] HirzebruchError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Conic,
    Reduced,
    Mult2,
    Complete,
    Sls,
}

#[derive(Debug, Parser)]
#[command(name = "a1fib", version, about = "Exact A1-fibration calculus on P^1-bundle complements")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of equivalence-class counts for d = 2..=dmax.
    Census {
        #[arg(long, default_value_t = 6)]
        dmax: u32,
        /// Directory to write the output to instead of stdout.
        #[arg(long, env = "A1FIB_OUT_DIR")]
        out_dir: Option<PathBuf>,
    },
    /// Resolve a pencil scenario and report its special fiber.
    Resolve {
        #[arg(long, value_enum)]
        scenario: Scenario,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        l: Option<i64>,
        #[arg(long, env = "A1FIB_OUT_DIR")]
        out_dir: Option<PathBuf>,
    },
    /// Decide whether two parameter sets (l, s) and (l, t) are equivalent.
    Classify {
        #[arg(long)]
        l: u32,
        /// Coefficients of s, constant term first.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_rational)]
        s: Vec<Rational>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_rational)]
        t: Vec<Rational>,
    },
    /// Normalize a gluing function given as `exp:coeff` pairs.
    Normalize {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_laurent)]
        f: LaurentPoly,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_epsilon)]
        epsilon: Epsilon,
    },
    /// Build the section of contact m + 2 with the diagonal.
    Bvs {
        #[arg(long)]
        m: u32,
        /// Coefficients of the monic polynomial p, constant term first.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_rational)]
        p: Vec<Rational>,
    },
    /// Intersection numbers of D = a C0 + b F on F_n.
    Hirzebruch {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// Print D^2.
        #[arg(long = "self")]
        self_int: bool,
        /// Print h^0(D).
        #[arg(long)]
        h0: bool,
        /// Print K . D.
        #[arg(long)]
        canonical: bool,
        /// Print D . (a' C0 + b' F) for `a',b'`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        with: Option<(i64, i64)>,
    },
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// `exp:coeff` pairs separated by commas, e.g. `-3:2,-1:2`.
pub fn parse_laurent(s: &str) -> Result<LaurentPoly, String> {
    let mut terms = Vec::new();
    for item in s.split(',').filter(|t| !t.trim().is_empty()) {
        let (e, c) = item
            .split_once(':')
            .ok_or_else(|| format!("expected exp:coeff, found {item:?}"))?;
        let e = e.trim().parse::<i64>().map_err(|err| format!("invalid exponent {e:?}: {err}"))?;
        terms.push((e, parse_rational(c)?));
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// `a,b` as a pair of integers.
pub fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("invalid integer {t:?}: {e}"));
    match s.split_once(',') {
        Some((a, b)) => Ok((parse(a)?, parse(b)?)),
        None => Err(format!("expected a,b, found {s:?}")),
    }
}

pub fn parse_epsilon(s: &str) -> Result<Epsilon, String> {
    match s.trim() {
        "+1" | "1" | "+" => Ok(Epsilon::Plus),
        "-1" | "-" => Ok(Epsilon::Minus),
        other => Err(format!("epsilon must be +1 or -1, found {other:?}")),
    }
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Usage(format!("--format {format:?} is not available for {command}").to_lowercase())
}

fn require(value: Option<i64>, name: &str, scenario: &str) -> Result<i64, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("scenario {scenario} needs --{name}")))
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Output text, plus the file stem used with an output directory.
fn write_out(text: String, out_dir: Option<&PathBuf>, stem: &str, format: Format) -> Result<String, CliError> {
    let Some(dir) = out_dir else {
        return Ok(text);
    };
    let ext = match format {
        Format::Text => "txt",
        Format::Json => "json",
        Format::Dot => "dot",
    };
    let path = dir.join(format!("{stem}.{ext}"));
    std::fs::create_dir_all(dir)
        .and_then(|()| std::fs::write(&path, text))
        .map_err(|source| CliError::Io { path: path.clone(), source })?;
    Ok(format!("wrote {}\n", path.display()))
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Census { dmax, out_dir } => {
            let table = census(*dmax)?;
            let text = match format {
                Format::Text => census_text(&table),
                Format::Json => to_pretty(&census_json(&table)),
                Format::Dot => return Err(unsupported(format, "census")),
            };
            write_out(text, out_dir.as_ref(), &format!("census-dmax{dmax}"), format)
        }
        Command::Resolve { scenario, d, m, l, out_dir } => {
            let (resolution, stem) = resolve(*scenario, *d, *m, *l)?;
            let text = render_resolution(&resolution, &stem, format)?;
            write_out(text, out_dir.as_ref(), &stem, format)
        }
        Command::Classify { l, s, t } => {
            let left = SlsParams::new(*l, UniPoly::from_coeffs(s.clone()))?;
            let right = SlsParams::new(*l, UniPoly::from_coeffs(t.clone()))?;
            render_verdict(&equivalent(&left, &right), format)
        }
        Command::Normalize { f, epsilon } => {
            let n = mu2_normalize(f, *epsilon)?;
            match format {
                Format::Text => Ok(format!(
                    "l = {}, s = {}, lambda = {}, r = {}\n",
                    n.params.l(),
                    n.params.s(),
                    n.lambda,
                    n.r
                )),
                Format::Json => Ok(to_pretty(&json!({
                    "l": n.params.l(),
                    "s": n.params.s().to_string(),
                    "lambda": n.lambda.to_string(),
                    "r": n.r.to_string(),
                }))),
                Format::Dot => Err(unsupported(format, "normalize")),
            }
        }
        Command::Bvs { m, p } => {
            let poly = UniPoly::from_coeffs(p.clone());
            let curve = bvs_curve(*m, &poly)?;
            let order = bvs_contact_order(*m, &poly)?;
            match format {
                Format::Text => Ok(format!("curve: {curve}\ncontact order: {order}\n")),
                Format::Json => Ok(to_pretty(&json!({
                    "curve": curve.to_string(),
                    "bidegree": [curve.bidegree().0, curve.bidegree().1],
                    "contact_order": order,
                }))),
                Format::Dot => Err(unsupported(format, "bvs")),
            }
        }
        Command::Hirzebruch { n, a, b, self_int, h0, canonical: with_k, with } => {
            let d = HClass::new(*n, *a, *b);
            let mut values: Vec<(&str, i64)> = Vec::new();
            if *self_int {
                values.push(("self-intersection", d.self_intersection()));
            }
            if *h0 {
                values.push(("h0", d.h0() as i64));
            }
            if *with_k {
                values.push(("canonical", canonical(*n).intersect(&d)?));
            }
            if let Some(other) = with {
                values.push(("with", d.intersect(&HClass::new(*n, other.0, other.1))?));
            }
            if values.is_empty() {
                values.push(("self-intersection", d.self_intersection()));
            }
            match format {
                Format::Text => Ok(values.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()),
                Format::Json => {
                    let map: BTreeMap<_, _> = values.into_iter().collect();
                    Ok(to_pretty(&map))
                }
                Format::Dot => Err(unsupported(format, "hirzebruch")),
            }
        }
    }
}

fn resolve(
    scenario: Scenario,
    d: Option<i64>,
    m: Option<i64>,
    l: Option<i64>,
) -> Result<(Resolution, String), CliError> {
    Ok(match scenario {
        Scenario::Conic => (resolve_conic()?, "conic".to_owned()),
        Scenario::Reduced => {
            let d = require(d, "d", "reduced")?;
            (resolve_reduced(d)?, format!("reduced-d{d}"))
        }
        Scenario::Mult2 => {
            let d = require(d, "d", "mult2")?;
            (resolve_mult2(d)?, format!("mult2-d{d}"))
        }
        Scenario::Complete => {
            let d = require(d, "d", "complete")?;
            let m = require(m, "m", "complete")?;
            (resolve_complete(d, m)?, format!("complete-d{d}-m{m}"))
        }
        Scenario::Sls => {
            let l = require(l, "l", "sls")?;
            (resolve_sls(l)?, format!("sls-l{l}"))
        }
    })
}

fn render_resolution(r: &Resolution, name: &str, format: Format) -> Result<String, CliError> {
    let (square, with_section) = r.fiber_checks()?;
    let fiber = r.fiber_by_label();
    let section = r.graph.vertex(r.section).expect("section vertex").label.clone();
    let fiber_line = fiber.iter().map(|(l, m)| format!("{l}={m}")).collect::<Vec<_>>().join(" ");
    let check_line = format!("fiber^2 = {square}, fiber.section = {with_section}");
    Ok(match format {
        Format::Dot => to_dot(
            &r.graph,
            &name.replace('-', "_"),
            &[format!("fiber: {fiber_line}"), format!("section: {section}"), check_line],
        ),
        Format::Json => to_pretty(&json!({
            "scenario": name,
            "graph": GraphDoc::from(&r.graph),
            "section": section,
            "multiplicities": fiber,
            "fiber_square": square,
            "fiber_dot_section": with_section,
        })),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "scenario: {name}").unwrap();
            writeln!(out, "vertices: {}", r.graph.vertex_count()).unwrap();
            for v in r.graph.vertices() {
                writeln!(out, "  {} {} ({}) {}", v.id, v.label, v.self_int, v.role).unwrap();
            }
            writeln!(out, "edges:").unwrap();
            for (a, b) in r.graph.edges() {
                writeln!(out, "  {a} -- {b}").unwrap();
            }
            writeln!(out, "section: {section}").unwrap();
            writeln!(out, "fiber: {fiber_line}").unwrap();
            writeln!(out, "{check_line}").unwrap();
            out
        }
    })
}

fn render_verdict(verdict: &Verdict, format: Format) -> Result<String, CliError> {
    match (verdict, format) {
        (Verdict::Equivalent(w), Format::Text) => {
            let support: Vec<String> = w.support.iter().map(u32::to_string).collect();
            let mu = match &w.mu {
                Some(mu) => format!("mu = {mu}"),
                None => format!("mu^{} = {} (no rational mu)", w.g, w.t),
            };
            Ok(format!(
                "Equivalent: {mu}; support {{{}}}, g = {}, t = {}\n",
                support.join(", "),
                w.g,
                w.t
            ))
        }
        (Verdict::NotEquivalent(reason), Format::Text) => Ok(format!("NotEquivalent({reason})\n")),
        (Verdict::Equivalent(w), Format::Json) => Ok(to_pretty(&json!({
            "verdict": "equivalent",
            "support": w.support,
            "g": w.g,
            "t": w.t.to_string(),
            "mu": w.mu.as_ref().map(ToString::to_string),
        }))),
        (Verdict::NotEquivalent(reason), Format::Json) => Ok(to_pretty(&json!({
            "verdict": "not-equivalent",
            "reason": reason.to_string(),
        }))),
        (_, Format::Dot) => Err(unsupported(format, "classify")),
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum EntryDoc {
    Finite { m: u32, count: u64, provenance: &'static str },
    Infinite { m: u32, moduli_dim: u64 },
    AtLeast { m: u32, count: u64 },
}

#[derive(Serialize)]
struct RowDoc {
    d: u32,
    entries: Vec<EntryDoc>,
    total: serde_json::Value,
}

fn census_json(table: &CensusTable) -> serde_json::Value {
    let rows: Vec<RowDoc> = table
        .rows
        .iter()
        .map(|row| RowDoc {
            d: row.d,
            entries: row
                .entries
                .iter()
                .map(|(&m, e)| match *e {
                    CensusEntry::Finite { count, provenance } => EntryDoc::Finite {
                        m,
                        count,
                        provenance: provenance.as_str(),
                    },
                    CensusEntry::Infinite { moduli_dim } => EntryDoc::Infinite { m, moduli_dim },
                    CensusEntry::AtLeast { count } => EntryDoc::AtLeast { m, count },
                })
                .collect(),
            total: match row.total {
                Total::Finite(n) => json!(n),
                Total::Infinite => json!("infinite"),
            },
        })
        .collect();
    json!({ "rows": rows })
}

fn census_text(table: &CensusTable) -> String {
    let width = table.rows.iter().map(|r| r.d).max().unwrap_or(2) as usize - 1;
    let mut out = String::new();
    write!(out, "{:>3}", "d").unwrap();
    for m in 1..=width {
        write!(out, " {:>7}", format!("A{m}")).unwrap();
    }
    writeln!(out, " {:>7}", "total").unwrap();
    for row in &table.rows {
        write!(out, "{:>3}", row.d).unwrap();
        for m in 1..=width as u32 {
            let cell = row.entries.get(&m).map_or(String::new(), ToString::to_string);
            write!(out, " {cell:>7}").unwrap();
        }
        writeln!(out, " {:>7}", row.total.to_string()).unwrap();
    }
    writeln!(out, "* recorded from the published case analysis; inf(k): k-dimensional moduli").unwrap();
    out
}
