//! Command-line front end behind the `quintic` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{arnold_number, kalker_cubic_count, BoundQuery};
use crate::census::{
    orbit_record, render_param, AlgebraicParam, CensusData, CensusOptions, CensusReport, OrbitRecord, ParamSummary,
};
use crate::error::Error;
use crate::exactnum::{FieldElement, NumberField, Rational, Ring, UniPoly};
use crate::pencil::PencilParam;
use crate::pentagon::{pentagon_node_count, N3_REFERENCE};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Dimensions reproduced by `tables --which 3`.
pub const TABLE_DIMENSIONS: [usize; 6] = [3, 4, 5, 6, 8, 10];

#[derive(Parser, Debug)]
#[command(name = "quintic", version, about = "Nodal quintic hypersurfaces from a symmetric pencil")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Also write the canonical JSON document to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add decimal approximations next to exact values.
    #[arg(long, global = true)]
    pub approx: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Singular-point census and best member for dimension n.
    Census {
        #[arg(long)]
        n: usize,
    },
    /// Singular orbits and node status of one member (alpha:beta).
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Minimal polynomial of `b` when alpha or beta mention it, e.g. "b^2+4*b+7".
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
    },
    /// Arnold's upper bound Ar_n(d).
    Arnold {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Node count of the pentagon construction.
    Pentagon {
        #[arg(long)]
        n: usize,
    },
    /// Reproduce a summary table (1: generic families, 2: parameters, 3: comparison).
    Tables {
        #[arg(long)]
        which: u8,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub payload: Payload,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<BTreeMap<String, Vec<f64>>>,
    /// Wall time; not part of the canonical comparison.
    #[serde(default)]
    pub timing_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Census(CensusReport),
    Verify(VerifyPayload),
    Arnold(ArnoldPayload),
    Pentagon(PentagonPayload),
    Table(TablePayload),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub n: usize,
    pub result: ParamSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArnoldPayload {
    pub n: usize,
    pub degree: usize,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cubic_binomial: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PentagonPayload {
    pub n: usize,
    pub affine_count: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablePayload {
    pub which: u8,
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Failure with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateMember | Error::Dimension(_) | Error::Invalid(_) | Error::ZeroParameter => 1,
            Error::ReducibleModulus(_) | Error::FieldDegree(_) => 1,
            _ => 2,
        };
        CliError { code, message: e.to_string() }
    }
}

/// Parse arguments, run, print; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

/// Run and return the text that would be printed.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let doc = run(&cli.command, cli.approx)?;
    if let Some(path) = &cli.out {
        std::fs::write(path, to_json(&doc))
            .map_err(|e| CliError { code: 2, message: format!("cannot write {}: {e}", path.display()) })?;
    }
    Ok(match cli.format {
        Format::Json => to_json(&doc),
        Format::Md => to_markdown(&doc),
        Format::Csv => to_csv(&doc)?,
    })
}

pub fn to_json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn run(cmd: &Command, approx: bool) -> Result<ReportDocument, CliError> {
    let start = Instant::now();
    let mut params = BTreeMap::new();
    let mut warnings = Vec::new();
    let mut approximations = BTreeMap::new();
    let (name, payload) = match cmd {
        Command::Census { n } => {
            params.insert("n".into(), n.to_string());
            check_dimension(*n, &mut warnings)?;
            let report = CensusData::solve(*n, &CensusOptions::default())?.report()?;
            warnings.extend(report.warnings.iter().cloned());
            if approx {
                for p in report_params(&report) {
                    approximations.insert(p.display.clone(), param_approx(p));
                }
            }
            ("census", Payload::Census(report))
        }
        Command::Verify { n, alpha, beta, field } => {
            params.insert("n".into(), n.to_string());
            params.insert("alpha".into(), alpha.clone());
            params.insert("beta".into(), beta.clone());
            if let Some(f) = field {
                params.insert("field".into(), f.clone());
            }
            check_dimension(*n, &mut warnings)?;
            let param = parse_param(alpha, beta, field.as_deref())?;
            let data = CensusData::solve(*n, &CensusOptions::default())?;
            let ev = data.evaluate(&param)?;
            if ev.exceptional {
                warnings.push(format!("{} is an exceptional parameter", render_param(&param)));
            }
            if !ev.all_nodes {
                warnings.push("some singular orbits are not ordinary nodes".into());
            }
            let result = ParamSummary {
                param: AlgebraicParam::new(&ev.param),
                exceptional: ev.exceptional,
                all_nodes: ev.all_nodes,
                total_nodes: ev.total_nodes,
                orbits: ev.orbits.iter().map(orbit_record).collect(),
            };
            if approx {
                approximations.insert(result.param.display.clone(), param_approx(&result.param));
            }
            ("verify", Payload::Verify(VerifyPayload { n: *n, result }))
        }
        Command::Arnold { n, degree } => {
            params.insert("n".into(), n.to_string());
            params.insert("degree".into(), degree.to_string());
            let q = BoundQuery::new(*n, *degree)?;
            let value = arnold_number(q).to_string();
            let cubic_binomial = (*degree == 3).then(|| kalker_cubic_count(*n).to_string());
            ("arnold", Payload::Arnold(ArnoldPayload { n: *n, degree: *degree, value, cubic_binomial }))
        }
        Command::Pentagon { n } => {
            params.insert("n".into(), n.to_string());
            if *n < 3 {
                return Err(CliError::usage(format!("pentagon needs n >= 3, got {n}")));
            }
            let count = pentagon_node_count(*n)?;
            if *n == 3 {
                warnings.push(pentagon_n3_flag(&count.to_string()));
            }
            ("pentagon", Payload::Pentagon(PentagonPayload { n: *n, affine_count: count.to_string() }))
        }
        Command::Tables { which } => {
            params.insert("which".into(), which.to_string());
            let table = match which {
                1 => table1()?,
                2 => table2(&mut warnings)?,
                3 => table3(&mut warnings)?,
                _ => return Err(CliError::usage(format!("--which must be 1, 2 or 3, got {which}"))),
            };
            ("tables", Payload::Table(table))
        }
    };
    Ok(ReportDocument {
        version: VERSION.into(),
        command: name.into(),
        params,
        payload,
        warnings,
        approx: approx.then_some(approximations),
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

fn check_dimension(n: usize, warnings: &mut Vec<String>) -> Result<(), CliError> {
    if n < 3 {
        return Err(CliError::usage(format!("n must be at least 3, got {n}")));
    }
    if n > 10 {
        warnings.push(format!("n = {n} is outside the tested range 3..=10 and may be slow"));
    }
    Ok(())
}

fn pentagon_n3_flag(count: &str) -> String {
    format!(
        "pentagon n=3: affine count {count}; the commonly quoted figure {N3_REFERENCE} has one more point, \
         presumably at infinity, which this count does not model"
    )
}

fn report_params(r: &CensusReport) -> Vec<&AlgebraicParam> {
    let mut v: Vec<&AlgebraicParam> = r.special_params.iter().map(|s| &s.param).collect();
    v.extend(r.exceptional_params.iter().map(|e| &e.param));
    v.extend(r.best.iter().map(|b| &b.param));
    v
}

/// Real values of `beta/alpha` over all conjugates.
fn param_approx(p: &AlgebraicParam) -> Vec<f64> {
    let parse = |v: &Vec<String>| -> Option<UniPoly> {
        v.iter().map(|c| c.parse::<Rational>().ok()).collect::<Option<Vec<_>>>().map(UniPoly::new)
    };
    let Some(lambda) = parse(&p.lambda_minpoly) else { return Vec::new() };
    // beta/alpha = 2*lambda - 1
    lambda.real_roots_approx().into_iter().map(|l| 2.0 * l - 1.0).collect()
}

/// Parse a rational polynomial expression in `b` such as `-3*b^3 + 2/3*b - 7`.
pub fn parse_expr(s: &str, field: Option<&NumberField>) -> Result<FieldElement, CliError> {
    let poly = parse_poly(s, "b")?;
    match field {
        None if poly.deg() > 0 => Err(CliError::usage(format!("'{s}' mentions b but no --field was given"))),
        None => Ok(FieldElement::rational(poly.coeff(0))),
        Some(k) => Ok(FieldElement::from_poly(k, &poly)),
    }
}

pub fn parse_poly(s: &str, var: &str) -> Result<UniPoly, CliError> {
    let bad = || CliError::usage(format!("cannot parse '{s}' as a polynomial in {var}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<Rational> = Vec::new();
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (coef, power) = match body.find(var) {
            None => (body.parse::<Rational>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let head = body[..pos].trim_end_matches('*');
                let coef = if head.is_empty() { Rational::from_int(1) } else { head.parse().map_err(|_| bad())? };
                let tail = &body[pos + var.len()..];
                let power = match tail.strip_prefix('^') {
                    Some(p) => p.parse().map_err(|_| bad())?,
                    None if tail.is_empty() => 1,
                    None => return Err(bad()),
                };
                (coef, power)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Rational::from_int(0));
        }
        coeffs[power] = &coeffs[power] + &(&Rational::from_int(sign) * &coef);
    }
    Ok(UniPoly::new(coeffs))
}

fn parse_param(alpha: &str, beta: &str, field: Option<&str>) -> Result<PencilParam, CliError> {
    let k = match field {
        Some(f) => Some(NumberField::new(&parse_poly(f, "b")?, "b")?),
        None => None,
    };
    let a = parse_expr(alpha, k.as_ref())?;
    let b = parse_expr(beta, k.as_ref())?;
    if a.is_zero() {
        return Err(Error::DegenerateMember.into());
    }
    Ok(PencilParam::new(a, b)?)
}

fn census_report(n: usize) -> Result<CensusReport, CliError> {
    Ok(CensusData::solve(n, &CensusOptions::default())?.report()?)
}

fn element(o: &OrbitRecord) -> String {
    let parts = o.pattern.parts();
    let items: Vec<String> = o
        .values
        .iter()
        .zip(parts)
        .map(|(v, &m)| {
            if m == 1 {
                v.clone()
            } else if v.contains(['-', '/', ' ']) {
                format!("({v})^{m}")
            } else {
                format!("{v}^{m}")
            }
        })
        .collect();
    format!("({})", items.join(", "))
}

fn table1() -> Result<TablePayload, CliError> {
    let r = census_report(8)?;
    let rows = r
        .generic_orbits
        .iter()
        .map(|o| vec![o.orbit_length.to_string(), element(o), o.constraint.clone().unwrap_or_else(|| "-".into())])
        .collect();
    Ok(TablePayload {
        which: 1,
        title: "Orbits present for every member, n = 8".into(),
        headers: vec!["orbit length".into(), "orbit element".into(), "constraint".into()],
        rows,
    })
}

fn table2(warnings: &mut Vec<String>) -> Result<TablePayload, CliError> {
    let r = census_report(8)?;
    warnings.extend(r.warnings.iter().cloned());
    let mut rows = Vec::new();
    for s in &r.special_params {
        for o in s.orbits.iter().filter(|o| o.kind != crate::census::BranchKind::GenericFamily) {
            rows.push(vec![
                s.param.display.clone(),
                o.orbit_length.to_string(),
                element(o),
                o.field.clone().unwrap_or_default(),
                o.node_status.to_string(),
            ]);
        }
    }
    for e in &r.exceptional_params {
        for o in &e.orbits {
            rows.push(vec![
                e.param.display.clone(),
                o.orbit_length.to_string(),
                element(o),
                o.field.clone().or_else(|| o.constraint.clone()).unwrap_or_default(),
                o.node_status.to_string(),
            ]);
        }
    }
    Ok(TablePayload {
        which: 2,
        title: "Parameters with additional singular orbits, n = 8".into(),
        headers: vec![
            "(alpha:beta)".into(),
            "orbit length".into(),
            "orbit element".into(),
            "field / constraint".into(),
            "status".into(),
        ],
        rows,
    })
}

fn table3(warnings: &mut Vec<String>) -> Result<TablePayload, CliError> {
    let mut rows = Vec::new();
    for n in TABLE_DIMENSIONS {
        let sym = census_report(n)?.best_node_count();
        let pent = pentagon_node_count(n)?.to_string();
        let pent_cell = if n == 3 {
            warnings.push(pentagon_n3_flag(&pent));
            format!("{pent}(+1?)")
        } else {
            pent
        };
        let ar = arnold_number(BoundQuery::new(n, 5)?).to_string();
        rows.push(vec![n.to_string(), sym.to_string(), pent_cell, ar]);
    }
    Ok(TablePayload {
        which: 3,
        title: "Symmetric pencil vs. pentagon construction vs. Arnold bound, degree 5".into(),
        headers: vec!["n".into(), "symmetric".into(), "pentagon".into(), "Ar_n(5)".into()],
        rows,
    })
}

fn md_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| {} |", headers.join(" | "));
    let _ = writeln!(s, "|{}|", headers.iter().map(|_| "---").collect::<Vec<_>>().join("|"));
    for r in rows {
        let _ = writeln!(s, "| {} |", r.join(" | "));
    }
    s
}

fn orbit_rows(orbits: &[OrbitRecord], param: Option<&str>) -> Vec<Vec<String>> {
    orbits
        .iter()
        .map(|o| {
            let p = param.map(str::to_string).or_else(|| o.param.as_ref().map(|p| p.display.clone()));
            vec![
                p.unwrap_or_else(|| "generic".into()),
                o.pattern.to_string(),
                o.kind.to_string(),
                o.orbit_length.to_string(),
                element(o),
                o.field.clone().or_else(|| o.constraint.clone()).unwrap_or_default(),
                o.node_status.to_string(),
                o.nodes.to_string(),
            ]
        })
        .collect()
}

const ORBIT_HEADERS: [&str; 8] =
    ["param", "pattern", "kind", "orbit length", "orbit element", "field / constraint", "status", "nodes"];

fn doc_rows(doc: &ReportDocument) -> (Vec<String>, Vec<Vec<String>>) {
    let orbit_headers = || ORBIT_HEADERS.iter().map(|s| s.to_string()).collect();
    match &doc.payload {
        Payload::Census(r) => {
            let mut rows = orbit_rows(&r.generic_orbits, None);
            for s in &r.special_params {
                rows.extend(orbit_rows(
                    &s.orbits.iter().filter(|o| o.kind != crate::census::BranchKind::GenericFamily).cloned().collect::<Vec<_>>(),
                    Some(&s.param.display),
                ));
            }
            for e in &r.exceptional_params {
                rows.extend(orbit_rows(&e.orbits, Some(&e.param.display)));
            }
            (orbit_headers(), rows)
        }
        Payload::Verify(v) => (orbit_headers(), orbit_rows(&v.result.orbits, Some(&v.result.param.display))),
        Payload::Arnold(a) => (
            vec!["n".into(), "degree".into(), "value".into()],
            vec![vec![a.n.to_string(), a.degree.to_string(), a.value.clone()]],
        ),
        Payload::Pentagon(p) => {
            (vec!["n".into(), "affine count".into()], vec![vec![p.n.to_string(), p.affine_count.clone()]])
        }
        Payload::Table(t) => (t.headers.clone(), t.rows.clone()),
    }
}

pub fn to_markdown(doc: &ReportDocument) -> String {
    let mut s = String::new();
    let title = match &doc.payload {
        Payload::Table(t) => t.title.clone(),
        _ => {
            let p: Vec<String> = doc.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{} {}", doc.command, p.join(" "))
        }
    };
    let _ = writeln!(s, "## {title}\n");
    match &doc.payload {
        Payload::Census(r) => {
            if let Some(b) = &r.best {
                let _ = writeln!(s, "Best member {} with {} nodes.\n", b.param.display, b.total_nodes);
            }
        }
        Payload::Verify(v) => {
            let _ = writeln!(
                s,
                "{}: {} nodes, all nodes: {}, exceptional: {}.\n",
                v.result.param.display, v.result.total_nodes, v.result.all_nodes, v.result.exceptional
            );
        }
        _ => {}
    }
    let (headers, rows) = doc_rows(doc);
    s.push_str(&md_table(&headers, &rows));
    if !doc.warnings.is_empty() {
        let _ = writeln!(s, "\nWarnings:\n");
        for w in &doc.warnings {
            let _ = writeln!(s, "- {w}");
        }
    }
    if let Some(a) = &doc.approx {
        let _ = writeln!(s, "\nApproximate beta/alpha:\n");
        for (k, v) in a {
            let vals: Vec<String> = v.iter().map(|x| format!("{x:.12}")).collect();
            let _ = writeln!(s, "- {k}: {}", vals.join(", "));
        }
    }
    s
}

pub fn to_csv(doc: &ReportDocument) -> Result<String, CliError> {
    let (headers, rows) = doc_rows(doc);
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError { code: 2, message: e.to_string() };
    w.write_record(&headers).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError { code: 2, message: e.to_string() })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_parsing() {
        let p = parse_poly("-3*b^3 - 15*b^2 + 39*b + 175", "b").unwrap();
        assert_eq!(p, UniPoly::from_ints(&[175, 39, -15, -3]));
        let p = parse_poly("b^2+4*b+7", "b").unwrap();
        assert_eq!(p, UniPoly::from_ints(&[7, 4, 1]));
        assert_eq!(parse_poly("-1/2", "b").unwrap(), UniPoly::constant(Rational::new(-1, 2)));
        assert_eq!(parse_poly("2/3b", "b").unwrap(), UniPoly::from_rationals(&[Rational::from_int(0), Rational::new(2, 3)]));
        assert!(parse_poly("b^", "b").is_err());
        assert!(parse_poly("x+1", "b").is_err());
        assert!(parse_poly("", "b").is_err());
    }

    #[test]
    fn degenerate_member_is_a_usage_error() {
        let e = parse_param("0", "1", None).unwrap_err();
        assert_eq!(e.code, 1);
        assert!(e.message.contains("S2"));
    }

    #[test]
    fn b_without_field_is_rejected() {
        assert_eq!(parse_param("1", "b", None).unwrap_err().code, 1);
    }

    #[test]
    fn arnold_document() {
        let doc = run(&Command::Arnold { n: 8, degree: 5 }, false).unwrap();
        assert_eq!(doc.payload, Payload::Arnold(ArnoldPayload { n: 8, degree: 5, value: "27876".into(), cubic_binomial: None }));
        let back: ReportDocument = serde_json::from_str(&to_json(&doc)).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn markdown_and_csv_render() {
        let doc = run(&Command::Pentagon { n: 3 }, false).unwrap();
        assert!(to_markdown(&doc).contains("| 3 | 30 |"));
        assert_eq!(to_csv(&doc).unwrap(), "n,affine count\n3,30\n");
        assert_eq!(doc.warnings.len(), 1);
    }
}
