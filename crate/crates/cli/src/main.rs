use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qsl2_core::basis::{
    decompose, enumerate_basis, localize, oracle_decompose, recompose, verify_freeness, LocalChart,
};
use qsl2_core::cyclo::p_coeff;
use qsl2_core::expr::{format_scalar, parse_element};
use qsl2_core::frobenius::{closure_diagnostic, product_expansion, Side};
use qsl2_core::json;
use qsl2_core::qalgebra::{antipode, coproduct, counit, QElement, QMonomial, TensorElement};
use qsl2_core::selftest::run_selftest;
use qsl2_core::{Error, RootSpec};

#[derive(Parser)]
#[command(name = "qsl2", version, about = "Exact computation in A(SL_q(2)) at roots of unity")]
struct Cli {
    /// The root parameter l (q has order l for odd l, 2l for even l).
    #[arg(long, global = true)]
    l: Option<i64>,

    /// Use q = ζ_N^k instead of ζ_N.
    #[arg(long = "zeta-exp", global = true)]
    zeta_exp: Option<i64>,

    /// Side on which classical coefficients act.
    #[arg(long, global = true, value_enum, default_value_t = SideArg::Left)]
    side: SideArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChartArg {
    Alpha,
    Beta,
}

#[derive(Subcommand)]
enum Command {
    /// Print the PBW normal form of an expression.
    Normalize { expr: String },
    /// Multiply two expressions.
    Mul { left: String, right: String },
    Coproduct { expr: String },
    Antipode { expr: String },
    Counit { expr: String },
    /// Coordinates in the l³ free generators.
    Decompose { expr: String },
    /// Rebuild an element from a decomposition in JSON.
    Recompose { json: String },
    /// Rewrite on the chart where alpha or beta is invertible.
    Localize {
        expr: String,
        #[arg(long, value_enum)]
        chart: ChartArg,
    },
    /// The coefficients p_{k,j} of (bc)^j in a^k d^k.
    Ptable {
        #[arg(long)]
        k: i64,
    },
    /// Whether the p-th powers close up into A(SL(2)) for q of order N.
    Closure {
        #[arg(long)]
        order: i64,
    },
    /// Check freeness and decompositions against the linear-algebra oracle.
    VerifyBasis {
        #[arg(long = "degree-bound", default_value_t = 2)]
        degree_bound: u32,
        /// JSON-lines file of {l, input, expected} records.
        #[arg(long)]
        fixtures: Option<String>,
    },
    /// Run the invariant suites at l = 2 and 3.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Json(_)
            | Error::InvalidL(_)
            | Error::ZetaNotCoprime { .. }
            | Error::InvalidOrder { .. }
            | Error::InadmissibleRoot { .. }
            | Error::OrderMismatch(..)
            | Error::SpecMismatch
            | Error::OutOfRange(_)
            | Error::NotReduced(_)
            | Error::NotViolating(_) => Failure::Usage(e.to_string()),
            other => Failure::Math(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    l: Option<i64>,
    zeta: Option<i64>,
    side: Side,
    format: Format,
}

impl Ctx {
    fn spec(&self) -> Result<RootSpec, Failure> {
        let l = self.l.ok_or_else(|| Failure::Usage("--l is required".into()))?;
        Ok(RootSpec::new(l, self.zeta)?)
    }

    fn element(&self, text: &str) -> Result<QElement, Failure> {
        Ok(parse_element(&read_arg(text)?, &self.spec()?)?)
    }

    fn emit(&self, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
        let out = match self.format {
            Format::Text => text(),
            Format::Json => serde_json::to_string_pretty(&value()).expect("valid JSON"),
        };
        // A closed pipe is not an error worth reporting.
        let _ = writeln!(std::io::stdout(), "{out}");
    }
}

/// `-` means standard input.
fn read_arg(text: &str) -> Result<String, Failure> {
    if text != "-" {
        return Ok(text.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
    Ok(buf.trim().to_string())
}

fn tensor_text(t: &TensorElement) -> String {
    let spec = t.spec();
    let mut out = String::new();
    for ([x, y], c) in t.terms() {
        let mono = |m: &QMonomial| if m.degree() == 0 { "1".to_string() } else { m.to_string() };
        let term = format!("{} (x) {}", mono(x), mono(y));
        let coeff = format_scalar(spec, c);
        let piece = match coeff.as_str() {
            "1" => term,
            "-1" => format!("-{term}"),
            _ if coeff.contains(' ') => format!("({coeff})*{term}"),
            _ => format!("{coeff}*{term}"),
        };
        if out.is_empty() {
            out = piece;
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(&format!(" - {rest}"));
        } else {
            out.push_str(&format!(" + {piece}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn tensor_json(t: &TensorElement) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|([x, y], c)| json!({"left": x, "right": y, "coeff": json::cyclotomic_to_json(c)}))
        .collect();
    json!({"spec": json::spec_to_json(t.spec()), "terms": terms})
}

fn verify_basis(ctx: &Ctx, degree_bound: u32, fixtures: Option<&str>) -> Outcome {
    let spec = ctx.spec()?;
    let l = spec.l();
    let report = verify_freeness(l as i64, ctx.side, degree_bound)?;
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                for d in 0..l {
                    let m = QMonomial::new(a, b, c, d);
                    if !m.is_reduced() {
                        continue;
                    }
                    let x = QElement::monomial(&spec, m);
                    compared += 1;
                    let ours = decompose(&x, ctx.side)?;
                    match oracle_decompose(&x, ctx.side, Some(degree_bound)) {
                        Ok(o) if o == ours => {}
                        Ok(_) => mismatches.push(format!("{m}: oracle disagrees")),
                        Err(e) => mismatches.push(format!("{m}: {e}")),
                    }
                }
            }
        }
    }
    let mut fixture_count = 0;
    if let Some(path) = fixtures {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        for (i, line) in text.lines().enumerate().filter(|(_, s)| !s.trim().is_empty()) {
            let f = json::parse_fixture_line(line).map_err(|e| Failure::Usage(format!("{path}:{}: {e}", i + 1)))?;
            fixture_count += 1;
            let got = decompose(&f.input, f.expected.side())?;
            if got != f.expected {
                mismatches.push(format!("{path}:{}: decomposition differs", i + 1));
            }
        }
    }
    let ok = report.kernel_dimension == 0 && report.all_decomposed && mismatches.is_empty();
    ctx.emit(
        || {
            let mut lines = vec![
                format!("l = {l}, side = {}, degree bound = {degree_bound}", ctx.side.name()),
                format!("generators: {}", enumerate_basis(l as i64).map(|v| v.len()).unwrap_or(0)),
                format!("unknowns: {}", report.columns),
                format!("kernel dimension: {}", report.kernel_dimension),
                format!(
                    "spanning: {} ({} monomials checked)",
                    if report.all_decomposed { "yes" } else { "no" },
                    report.monomials_checked
                ),
                format!("decompose vs oracle: {} of {compared} agree", compared - mismatches.len().min(compared)),
            ];
            if fixtures.is_some() {
                lines.push(format!("fixtures checked: {fixture_count}"));
            }
            lines.extend(mismatches.iter().map(|m| format!("mismatch: {m}")));
            lines.push(if ok { "verified" } else { "FAILED" }.to_string());
            lines.join("\n")
        },
        || {
            json!({
                "freeness": json::freeness_to_json(&report),
                "oracle_compared": compared,
                "fixtures_checked": fixture_count,
                "mismatches": mismatches,
                "ok": ok,
            })
        },
    );
    if ok {
        Ok(())
    } else {
        Err(Failure::Math("verification failed".into()))
    }
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        l: cli.l,
        zeta: cli.zeta_exp,
        side: cli.side.into(),
        format: cli.format,
    };
    match cli.command {
        Command::Normalize { expr } => {
            let x = ctx.element(&expr)?;
            ctx.emit(|| x.to_string(), || json::qelement_to_json(&x));
        }
        Command::Mul { left, right } => {
            if left == "-" && right == "-" {
                return Err(Failure::Usage("only one operand can come from stdin".into()));
            }
            let x = &ctx.element(&left)? * &ctx.element(&right)?;
            ctx.emit(|| x.to_string(), || json::qelement_to_json(&x));
        }
        Command::Coproduct { expr } => {
            let t = coproduct(&ctx.element(&expr)?);
            ctx.emit(|| tensor_text(&t), || tensor_json(&t));
        }
        Command::Antipode { expr } => {
            let x = antipode(&ctx.element(&expr)?);
            ctx.emit(|| x.to_string(), || json::qelement_to_json(&x));
        }
        Command::Counit { expr } => {
            let x = ctx.element(&expr)?;
            let c = counit(&x);
            ctx.emit(|| format_scalar(x.spec(), &c), || json::cyclotomic_to_json(&c));
        }
        Command::Decompose { expr } => {
            let d = decompose(&ctx.element(&expr)?, ctx.side)?;
            ctx.emit(|| d.to_string(), || json::decomposition_to_json(&d));
        }
        Command::Recompose { json: text } => {
            let text = read_arg(&text)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid JSON: {e}")))?;
            let fallback = ctx.spec().ok();
            let d = json::decomposition_from_json_infer(&v, fallback.as_ref())?;
            if let Some(s) = fallback {
                if s != *d.spec() {
                    return Err(Error::SpecMismatch.into());
                }
            }
            let x = recompose(&d);
            ctx.emit(|| x.to_string(), || json::qelement_to_json(&x));
        }
        Command::Localize { expr, chart } => {
            let chart = match chart {
                ChartArg::Alpha => LocalChart::UAlpha,
                ChartArg::Beta => LocalChart::UBeta,
            };
            let loc = localize(&ctx.element(&expr)?, chart)?;
            ctx.emit(|| loc.to_string(), || json::localized_to_json(&loc));
        }
        Command::Ptable { k } => {
            let spec = ctx.spec()?;
            let l = spec.l() as i64;
            if !(0..=l).contains(&k) {
                return Err(Failure::Usage(format!("--k must lie in 0..={l}")));
            }
            let expanded = product_expansion(&spec, k as u32);
            let mut rows = Vec::new();
            for j in 0..=k {
                let p = p_coeff(&spec, k, j)?;
                if p != expanded[j as usize] {
                    return Err(Failure::Math(format!("p_{{{k},{j}}} disagrees with the product expansion")));
                }
                rows.push((j, p));
            }
            ctx.emit(
                || {
                    rows.iter()
                        .map(|(j, p)| format!("p_{{{k},{j}}} = {}", format_scalar(&spec, p)))
                        .collect::<Vec<_>>()
                        .join("\n")
                },
                || {
                    json!({
                        "spec": json::spec_to_json(&spec),
                        "k": k,
                        "entries": rows.iter().map(|(j, p)| json!({
                            "j": j,
                            "value": json::cyclotomic_to_json(p),
                            "text": format_scalar(&spec, p),
                        })).collect::<Vec<_>>(),
                    })
                },
            );
        }
        Command::Closure { order } => {
            let l = ctx.l.ok_or_else(|| Failure::Usage("--l is required".into()))?;
            let r = closure_diagnostic(l, order)?;
            ctx.emit(|| r.to_string(), || json::closure_to_json(&r));
        }
        Command::VerifyBasis {
            degree_bound,
            fixtures,
        } => verify_basis(&ctx, degree_bound, fixtures.as_deref())?,
        Command::Selftest { seed } => {
            let report = run_selftest(seed);
            ctx.emit(
                || report.to_string(),
                || {
                    json!({
                        "passed": report.all_passed(),
                        "checks": report.results.iter().map(|r| json!({
                            "name": r.name,
                            "passed": r.passed,
                            "detail": r.detail,
                        })).collect::<Vec<_>>(),
                    })
                },
            );
            if !report.all_passed() {
                return Err(Failure::Math("selftest failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
