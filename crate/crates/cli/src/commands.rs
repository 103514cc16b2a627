use std::fmt::Write as _;

use asmdet_core::closedform::{
    branch_search, enumeration_corollaries, first_root_suite, four_enumeration, fourth_root_suite, second_root_suite,
    sixth_root_suite, third_root_suite,
};
use asmdet_core::detkernel::{
    build_matrix, condensation_check, deletion_identities_check, deletion_identities_corrected, desnanot_jacobi_check,
    divisibility_check, transposition_check, SYMBOLIC_GUARD,
};
use asmdet_core::oracle::{appendix_suite, connection_check, main_theorem_check, q_enum, ORACLE_CEILING, ORACLE_GUARD};
use asmdet_core::structure::{
    f_consistency, f_recursion_suite, factorization_suite, leading_coeff_check, maximality_check, q_product_corollary,
};
use asmdet_core::{d, CheckItem, CycloElem, DetInstance, Rational, Report, SuiteReport};
use serde_json::{json, Value};

use crate::spec::{QSpec, Suite, XSpec};
use crate::{Cli, Command, Failure, Format, DEFAULT_SYMBOLIC_LIMIT};

pub const EVAL_SCHEMA: &str = "asmdet-eval/1";
pub const TABLE_SCHEMA: &str = "asmdet-table/1";
pub const ORACLE_SCHEMA: &str = "asmdet-oracle/1";

/// `k` range used by the suites that sweep over `k`.
const K_SWEEP: std::ops::RangeInclusive<i64> = -3..=3;
const K_MAX: i64 = 3;

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Eval { n, k, x, q, max_n } => eval(*n, *k, x, q, *max_n, cli.format),
        Command::Table { max_n } => table(*max_n, cli.format),
        Command::Verify { suites, max_n } => verify(suites, *max_n, cli.format),
        Command::Oracle { n, max_n } => oracle(*n, *max_n, cli.format),
    }
}

fn guard(n: usize, requested: Option<usize>, default: usize, ceiling: usize, what: &str) -> Result<(), Failure> {
    let limit = requested.unwrap_or(default);
    if limit > ceiling {
        return Err(Failure::usage(format!("--max-n {limit} is above the {what} ceiling {ceiling}")));
    }
    if n > limit {
        return Err(Failure::usage(format!("size {n} exceeds the {what} guard {limit}; pass --max-n to raise it")));
    }
    Ok(())
}

/// A specialized determinant value.
enum Specialized {
    Laurent(asmdet_core::QLaurent),
    Poly(asmdet_core::XPoly),
    Cyclo(CycloElem),
}

impl Specialized {
    fn text(&self) -> String {
        match self {
            Specialized::Laurent(v) => v.to_string(),
            Specialized::Poly(p) => p.to_string(),
            // a value that lands in Q[x] prints without the field decoration
            Specialized::Cyclo(c) => c.as_xpoly().map_or_else(|| c.to_string(), |p| p.to_string()),
        }
    }

    fn json(&self) -> Value {
        let v = match self {
            Specialized::Laurent(v) => serde_json::to_value(v),
            Specialized::Poly(p) => serde_json::to_value(p),
            Specialized::Cyclo(c) => serde_json::to_value(c),
        };
        v.expect("ring elements serialize")
    }

    fn kind(&self) -> &'static str {
        match self {
            Specialized::Laurent(_) => "laurent",
            Specialized::Poly(_) => "xpoly",
            Specialized::Cyclo(_) => "cyclotomic",
        }
    }
}

fn eval(n: usize, k: i64, x: &XSpec, q: &QSpec, max_n: Option<usize>, format: Format) -> Result<Output, Failure> {
    DetInstance::new(n, k)?;
    guard(n, max_n, DEFAULT_SYMBOLIC_LIMIT, SYMBOLIC_GUARD, "symbolic")?;
    let mut v = d(n, k)?;
    if let XSpec::Value(r) = x {
        v = v.eval_x(r);
    }
    let value = match q {
        QSpec::Symbolic => Specialized::Laurent(v),
        QSpec::Value(r) => Specialized::Poly(v.eval_q(r)?),
        QSpec::Root(order) => Specialized::Cyclo(CycloElem::from_laurent(&v, *order, 1)?),
    };
    let text = value.text();
    let out = match format {
        Format::Plain => format!("{text}\n"),
        Format::Json => json_line(&json!({
            "schema": EVAL_SCHEMA,
            "n": n,
            "k": k,
            "x": x.to_string(),
            "q": q.to_string(),
            "kind": value.kind(),
            "text": text,
            "value": value.json(),
        })),
        Format::Csv => format!("n,k,x,q,value\n{n},{k},{},{},{}\n", csv_field(&x.to_string()), q, csv_field(&text)),
    };
    Ok(Output::ok(out))
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn at_root(n: usize, order: u32) -> Result<Rational, Failure> {
    let v = CycloElem::from_laurent(&d(n, 1)?.eval_x(&Rational::zero()), order, 1)?;
    v.as_rational()
        .ok_or_else(|| Failure { code: 1, message: format!("d_{{{n},1}}(0, zeta{order}) is not rational: {v}") })
}

fn table(max_n: usize, format: Format) -> Result<Output, Failure> {
    guard(max_n, None, ORACLE_GUARD, ORACLE_GUARD, "oracle")?;
    let mut rows = Vec::new();
    for n in 1..=max_n {
        rows.push([
            n.to_string(),
            at_root(n, 3)?.to_string(),
            at_root(n, 4)?.to_string(),
            q_enum(n, ORACLE_GUARD)?.eval(3).to_string(),
            four_enumeration(n)?.to_string(),
        ]);
    }
    let header = ["n", "A_n", "A_n(2)", "A_n(3)", "A_n(4)"];
    let out = match format {
        Format::Csv => {
            let mut s = header.join(",") + "\n";
            for r in &rows {
                s += &(r.join(",") + "\n");
            }
            s
        }
        Format::Json => json_line(&json!({
            "schema": TABLE_SCHEMA,
            "columns": header,
            "sources": ["", "d_{n,1}(0,zeta3)", "d_{n,1}(0,zeta4)", "ASM oracle at Q=3", "d_{n,1}(0,1)"],
            "rows": rows,
        })),
        Format::Plain => {
            let widths: Vec<usize> = (0..header.len())
                .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
                .collect();
            let mut s = String::new();
            for r in std::iter::once(header.map(String::from)).chain(rows) {
                let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                s += cells.join("  ").trim_end();
                s.push('\n');
            }
            s
        }
    };
    Ok(Output::ok(out))
}

fn run_suite(suite: Suite, max_n: usize) -> asmdet_core::Result<Vec<CheckItem>> {
    let mut items = Vec::new();
    match suite {
        Suite::Deletion => {
            for n in 2..=max_n {
                for k in K_SWEEP {
                    let inst = DetInstance::new(n, k)?;
                    items.extend(deletion_identities_check(inst)?);
                    // the corner-exchanged variant is reported beside the displayed one
                    items.extend(deletion_identities_corrected(inst)?.into_iter().skip(3).map(|i| {
                        CheckItem { identity: format!("{} [corner minors exchanged]", i.identity), ..i }.observational()
                    }));
                }
            }
        }
        Suite::Condensation => {
            for n in 1..=max_n {
                for k in K_SWEEP {
                    let inst = DetInstance::new(n, k)?;
                    if n >= 3 {
                        items.push(condensation_check(inst)?);
                    }
                    if n >= 2 {
                        let dj = desnanot_jacobi_check(&build_matrix(inst))?;
                        items.push(CheckItem::nk("Desnanot-Jacobi on D_{n,k}", n, k, dj));
                    }
                    if k >= 0 {
                        items.push(transposition_check(n, k)?);
                    }
                }
            }
        }
        Suite::Structural => {
            items.extend(factorization_suite(max_n, K_MAX)?);
            items.extend(maximality_check(max_n, K_MAX)?);
            items.extend(leading_coeff_check(max_n)?);
            for n in 1..=max_n {
                for k in 1..=n as i64 {
                    items.push(divisibility_check(n, k)?);
                }
            }
        }
        Suite::Recursions => {
            items.extend(f_recursion_suite(max_n, K_MAX)?);
            items.extend(f_consistency(max_n)?);
        }
        Suite::Closedforms => {
            items.extend(second_root_suite(max_n)?);
            items.extend(first_root_suite(max_n)?);
            items.extend(third_root_suite(max_n)?);
            items.extend(fourth_root_suite(max_n)?);
            items.extend(sixth_root_suite(max_n)?);
            items.extend(branch_search(max_n)?);
        }
        Suite::MainTheorem => {
            for n in 1..=max_n {
                items.push(main_theorem_check(n)?);
            }
        }
        Suite::Connection => items.extend(connection_check(max_n)?),
        Suite::Appendix => items.extend(appendix_suite(max_n)?),
        Suite::Corollaries => {
            items.extend(enumeration_corollaries(max_n)?);
            items.extend(q_product_corollary(max_n)?);
        }
    }
    Ok(items)
}

fn verify(suites: &[Suite], max_n: usize, format: Format) -> Result<Output, Failure> {
    if suites.is_empty() {
        return Err(Failure::usage("--suites needs at least one suite"));
    }
    if max_n == 0 {
        return Err(Failure::usage("--max-n must be at least 1"));
    }
    guard(max_n, None, SYMBOLIC_GUARD, SYMBOLIC_GUARD, "symbolic")?;
    let mut selected = suites.to_vec();
    selected.sort();
    selected.dedup();
    let mut reports = Vec::new();
    for suite in selected {
        reports.push(SuiteReport::new(suite.name(), run_suite(suite, max_n)?));
    }
    let report = Report::assemble(reports);
    let text = match format {
        Format::Json => json_line(&serde_json::to_value(&report).expect("reports serialize")),
        Format::Csv => report_csv(&report),
        Format::Plain => report_plain(&report),
    };
    Ok(Output { text, code: if report.pass { 0 } else { 1 } })
}

fn opt(v: Option<i64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn report_csv(report: &Report) -> String {
    let mut s = String::from("suite,identity,n,k,pass,observational,witness,detail\n");
    for suite in &report.suites {
        for i in &suite.items {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                suite.suite,
                csv_field(&i.identity),
                opt(i.n),
                opt(i.k),
                i.pass,
                i.observational,
                csv_field(i.witness.as_deref().unwrap_or("")),
                csv_field(i.detail.as_deref().unwrap_or(""))
            );
        }
    }
    s
}

fn describe(i: &CheckItem) -> String {
    let mut at = Vec::new();
    if let Some(n) = i.n {
        at.push(format!("n={n}"));
    }
    if let Some(k) = i.k {
        at.push(format!("k={k}"));
    }
    let at = if at.is_empty() { String::new() } else { format!(" [{}]", at.join(", ")) };
    format!("{}{at}", i.identity)
}

fn report_plain(report: &Report) -> String {
    let mut s = String::new();
    for suite in &report.suites {
        let hard = suite.items.iter().filter(|i| !i.observational).count();
        let failed = suite.hard_failures().count();
        let observed = suite.items.len() - hard;
        let verdict = if failed == 0 { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{}: {verdict} ({}/{hard} checks, {observed} observations)", suite.suite, hard - failed);
        for i in suite.hard_failures() {
            let _ = writeln!(s, "  FAIL {}: {}", describe(i), i.witness.as_deref().unwrap_or(""));
        }
        for i in suite.items.iter().filter(|i| i.observational) {
            let status = if i.identity.ends_with("[published]") {
                "="
            } else if i.pass {
                "holds"
            } else {
                "differs"
            };
            let extra = i.detail.as_deref().or(i.witness.as_deref()).unwrap_or("");
            let _ = writeln!(s, "{}", format!("  note {}: {status} {extra}", describe(i)).trim_end());
        }
    }
    match &report.first_failure {
        None => s.push_str("overall: PASS\n"),
        Some(f) => {
            let _ = writeln!(s, "overall: FAIL ({} hard failures; first: {})", report.hard_failures, describe(f));
        }
    }
    s
}

fn oracle(n: usize, max_n: Option<usize>, format: Format) -> Result<Output, Failure> {
    if n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    guard(n, max_n, ORACLE_GUARD, ORACLE_CEILING, "oracle")?;
    let guard_n = max_n.unwrap_or(ORACLE_GUARD);
    let poly = q_enum(n, guard_n)?;
    let coeffs = poly.coeffs();
    let text = match format {
        Format::Plain => {
            let mut s = format!("A_{n}(Q) coefficients (Q^0 first): {coeffs:?}\n");
            for big_q in 1..=4 {
                let _ = writeln!(s, "A_{n}({big_q}) = {}", poly.eval(big_q));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("n,power,count\n");
            for (p, c) in coeffs.iter().enumerate() {
                let _ = writeln!(s, "{n},{p},{c}");
            }
            s
        }
        Format::Json => json_line(&json!({
            "schema": ORACLE_SCHEMA,
            "n": n,
            "coeffs": coeffs,
            "values": (1..=4).map(|q| json!({"Q": q, "value": poly.eval(q).to_string()})).collect::<Vec<_>>(),
        })),
    };
    Ok(Output::ok(text))
}
