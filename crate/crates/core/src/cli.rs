//! The `kra` command line: argument handling, report assembly and exit codes.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    algebra_dimension, gauge_lie_algebra, irrep_correspondence_check, unimodularity_relation,
};
use crate::builtins::{builtin, Builtin};
use crate::diagram::{validate, KrajewskiDiagram, ValidDiagram};
use crate::dsl;
use crate::invariants::{
    action_terms, counterterm_coverage, enumerate_fields, required_counterterms, CoveredBy, InvariantError,
};
use crate::powercount::{
    heat_kernel_coefficients, omega_bound, omega_external, propagator_uv_degrees, renorm_verdict,
    validate_profile, ExpansionOrder, GraphProfile,
};
use crate::rconnect::{check_r_connected, Bounds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_NEGATIVE: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "kra", version, about = "Krajewski diagrams, R-connectedness and renormalizability of spectral actions")]
struct Cli {
    #[command(flatten)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Built-in diagram: sm, chain, ym[:N]
    #[arg(long, conflicts_with_all = ["file", "path"])]
    builtin: Option<String>,
    /// Diagram file (.kra)
    #[arg(long, conflicts_with = "path")]
    file: Option<PathBuf>,
    /// Diagram file (.kra)
    #[arg(value_name = "FILE")]
    path: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Emit the report as JSON
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 4 when the verdict is negative
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the diagram axioms
    Validate(Input),
    /// Gauge Lie algebra, unimodularity and the irrep correspondence
    GaugeAlgebra(Input),
    /// Independent scalar field components
    Fields(Input),
    /// Terms generated by the spectral action
    ActionTerms(Input),
    /// Gauge-invariant counterterms required by power counting
    Counterterms(Input),
    /// Whether the action generates every required counterterm
    Coverage(Input),
    /// Decide R-connectedness
    CheckRconnect {
        #[command(flatten)]
        input: Input,
        /// Dimension m
        #[arg(long, default_value_t = 4)]
        dim: usize,
        /// Use lengths strictly below m
        #[arg(long)]
        strict_bounds: bool,
    },
    /// Power counting tables, or the analysis of one graph profile
    Powercount {
        /// JSON file with a graph profile
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Expansion order n
        #[arg(short = 'n', long = "order", default_value_t = 4)]
        n: u32,
    },
    /// Renormalizability verdict
    Verdict {
        #[command(flatten)]
        input: Input,
        /// Expansion order n
        #[arg(short = 'n', long = "order", default_value_t = 4)]
        n: u32,
        /// Use lengths strictly below 4 in the R-connectedness check
        #[arg(long)]
        strict_bounds: bool,
    },
    /// List built-in diagrams
    Builtins,
    /// Print the canonical text form
    Fmt(Input),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::GaugeAlgebra(_) => "gauge-algebra",
            Command::Fields(_) => "fields",
            Command::ActionTerms(_) => "action-terms",
            Command::Counterterms(_) => "counterterms",
            Command::Coverage(_) => "coverage",
            Command::CheckRconnect { .. } => "check-rconnect",
            Command::Powercount { .. } => "powercount",
            Command::Verdict { .. } => "verdict",
            Command::Builtins => "builtins",
            Command::Fmt(_) => "fmt",
        }
    }

    fn input(&self) -> Option<&Input> {
        match self {
            Command::Validate(i)
            | Command::GaugeAlgebra(i)
            | Command::Fields(i)
            | Command::ActionTerms(i)
            | Command::Counterterms(i)
            | Command::Coverage(i)
            | Command::Fmt(i) => Some(i),
            Command::CheckRconnect { input, .. } | Command::Verdict { input, .. } => Some(input),
            Command::Powercount { .. } | Command::Builtins => None,
        }
    }
}

/// What `run` produced: the exit status and the two output streams.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    input: Value,
    result: Value,
    warnings: Vec<String>,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
}

struct Ctx {
    command: &'static str,
    input: Value,
    json: bool,
    strict: bool,
    warnings: Vec<String>,
}

impl Ctx {
    fn emit(&self, code: i32, result: Value, text: String) -> Outcome {
        if self.json {
            Outcome { code, stdout: self.render(result, None), stderr: String::new() }
        } else {
            let mut stdout = text;
            for w in &self.warnings {
                stdout.push_str(&format!("\nwarning: {w}"));
            }
            stdout.push('\n');
            Outcome { code, stdout, stderr: String::new() }
        }
    }

    fn fail(&self, code: i32, error: Value, text: String) -> Outcome {
        if self.json {
            Outcome { code, stdout: self.render(Value::Null, Some(error)), stderr: String::new() }
        } else {
            Outcome { code, stdout: String::new(), stderr: text + "\n" }
        }
    }

    fn render(&self, result: Value, error: Option<Value>) -> String {
        let r = Report {
            command: self.command,
            input: self.input.clone(),
            result,
            warnings: self.warnings.clone(),
            version: env!("CARGO_PKG_VERSION"),
            error,
        };
        // serde_json's map keeps keys sorted, so the output is stable
        let v = serde_json::to_value(&r).expect("report is serializable");
        serde_json::to_string_pretty(&v).expect("value renders") + "\n"
    }

    fn negative(&self, positive: bool) -> i32 {
        if self.strict && !positive {
            EXIT_NEGATIVE
        } else {
            EXIT_OK
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    dispatch(cli.command, cli.output)
}

fn usage(message: String) -> Outcome {
    Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {message}\n") }
}

fn load(input: &Input, ctx: &mut Ctx) -> Result<KrajewskiDiagram, Outcome> {
    if let Some(name) = &input.builtin {
        let b = name.parse::<Builtin>().map_err(usage)?;
        ctx.input = json!({"kind": "builtin", "name": b.to_string()});
        return Ok(builtin(&b));
    }
    let Some(path) = input.file.as_ref().or(input.path.as_ref()) else {
        return Err(usage("no diagram given; use --builtin NAME or a .kra file".into()));
    };
    ctx.input = json!({"kind": "file", "path": path.display().to_string()});
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    dsl::parse(&text).map_err(|e| {
        let rendered = e.render(&text, &path.display().to_string());
        ctx.fail(EXIT_PARSE, json!({"kind": "parse", "detail": to_value(&e)}), rendered)
    })
}

fn invalid(ctx: &Ctx, report: &crate::diagram::ValidationReport) -> Outcome {
    ctx.fail(
        EXIT_INVALID,
        json!({"kind": "validation", "detail": to_value(report)}),
        format!("diagram is not valid\n{report}"),
    )
}

fn invariant_failure(ctx: &Ctx, e: &InvariantError) -> Outcome {
    ctx.fail(EXIT_INVALID, json!({"kind": "operators", "detail": e.to_string()}), format!("error: {e}"))
}

fn order(n: u32) -> Result<ExpansionOrder, Outcome> {
    ExpansionOrder::new(n).map_err(|e| usage(e.to_string()))
}

fn dispatch(command: Command, out: Output) -> Outcome {
    let mut ctx = Ctx {
        command: command.name(),
        input: json!({"kind": "none"}),
        json: out.json,
        strict: out.strict,
        warnings: Vec::new(),
    };
    match &command {
        Command::Builtins => return builtins_cmd(&ctx),
        Command::Powercount { profile, n } => {
            let n = match order(*n) {
                Ok(n) => n,
                Err(o) => return o,
            };
            return powercount_cmd(&mut ctx, profile.as_ref(), n);
        }
        _ => {}
    }
    // argument checks that do not need the diagram come first
    let n = match &command {
        Command::Verdict { n, .. } => match order(*n) {
            Ok(n) => Some(n),
            Err(o) => return o,
        },
        _ => None,
    };
    if let Command::CheckRconnect { dim, .. } = &command {
        if *dim < 2 {
            return usage(format!("dimension must be at least 2, got {dim}"));
        }
    }
    let input = command.input().expect("diagram commands take an input");
    let diagram = match load(input, &mut ctx) {
        Ok(d) => d,
        Err(o) => return o,
    };

    if let Command::Validate(_) = command {
        return validate_cmd(&mut ctx, diagram);
    }
    if let Command::Fmt(_) = command {
        let report = validate(&diagram);
        if !report.passed {
            return invalid(&ctx, &report);
        }
        let text = dsl::serialize(&diagram);
        return ctx.emit(EXIT_OK, json!({"text": text}), text.trim_end().to_string());
    }
    let d = match ValidDiagram::new(diagram) {
        Ok(d) => d,
        Err(report) => return invalid(&ctx, &report),
    };
    ctx.warnings.extend(d.warnings().iter().cloned());

    let result = match command {
        Command::GaugeAlgebra(_) => Ok(gauge_cmd(&ctx, &d)),
        Command::Fields(_) => fields_cmd(&ctx, &d),
        Command::ActionTerms(_) => action_terms(&d).map(|t| terms_cmd(&ctx, &d, &t)),
        Command::Counterterms(_) => required_counterterms(&d).map(|t| terms_cmd(&ctx, &d, &t)),
        Command::Coverage(_) => coverage_cmd(&ctx, &d),
        Command::CheckRconnect { dim, strict_bounds, .. } => {
            let bounds = if strict_bounds { Bounds::Strict } else { Bounds::Inclusive };
            let r = check_r_connected(&d, dim, bounds);
            Ok(ctx.emit(ctx.negative(r.verdict), to_value(&r), r.to_string()))
        }
        Command::Verdict { strict_bounds, .. } => {
            let bounds = if strict_bounds { Bounds::Strict } else { Bounds::Inclusive };
            let v = renorm_verdict(&d, n.expect("checked above"), bounds);
            let mut value = to_value(&v);
            value["rconnect"] = to_value(&v.rconnect);
            let mut text = v.to_string();
            if v.verdict == crate::powercount::VerdictKind::Inconclusive {
                for p in v.rconnect.failed_pairs() {
                    text.push_str(&format!("\ncounterexample: {{{}, {}}} does not lift", p.first, p.second));
                }
                for c in v.rconnect.cond1.iter().filter(|c| c.witness.is_none()) {
                    text.push_str(&format!("\ncounterexample: {} does not lift", c.cycle));
                }
            }
            Ok(ctx.emit(ctx.negative(v.is_positive()), value, text))
        }
        Command::Validate(_) | Command::Fmt(_) | Command::Builtins | Command::Powercount { .. } => {
            unreachable!("handled above")
        }
    };
    result.unwrap_or_else(|e| invariant_failure(&ctx, &e))
}

fn builtins_cmd(ctx: &Ctx) -> Outcome {
    let list = [Builtin::StandardModel, Builtin::Chain, Builtin::YangMills(3)];
    let entries: Vec<Value> = list
        .iter()
        .zip(Builtin::NAMES)
        .map(|(b, name)| json!({"name": name, "description": b.describe()}))
        .collect();
    let text = list
        .iter()
        .zip(Builtin::NAMES)
        .map(|(b, name)| format!("{name:<8} {}", b.describe()))
        .collect::<Vec<_>>()
        .join("\n");
    ctx.emit(EXIT_OK, json!({"builtins": entries}), text)
}

fn validate_cmd(ctx: &mut Ctx, diagram: KrajewskiDiagram) -> Outcome {
    let report = validate(&diagram);
    ctx.warnings.extend(report.warnings.iter().cloned());
    let mut value = to_value(&report);
    let mut text = report.to_string();
    if report.passed {
        let d = ValidDiagram::new(diagram).expect("validated");
        let dd = d.dirac_decomposition();
        value["hilbert_dimension"] = json!(d.hilbert_dimension());
        value["dirac_decomposition"] = to_value(&dd);
        text.push_str(&format!(
            "\nHilbert space dimension: {}\nD_0: {}\nDelta: {}\nJ Delta J^-1: {}",
            d.hilbert_dimension(),
            list(&dd.d0),
            list(&dd.delta),
            list(&dd.j_delta_j)
        ));
        return ctx.emit(EXIT_OK, value, text);
    }
    ctx.emit(EXIT_INVALID, value, text)
}

fn list(ids: &[String]) -> String {
    if ids.is_empty() {
        "(none)".into()
    } else {
        ids.join(", ")
    }
}

fn gauge_cmd(ctx: &Ctx, d: &ValidDiagram) -> Outcome {
    let g = gauge_lie_algebra(&d.algebra);
    let uni = unimodularity_relation(&d.algebra, &d.fundamental_multiplicities()).expect("one multiplicity per factor");
    let irreps = irrep_correspondence_check(&d.algebra);
    let simple: Vec<Value> = g
        .simple_factors
        .iter()
        .map(|s| {
            json!({
                "name": s.to_string(),
                "kind": to_value(&s.kind),
                "rank": s.rank,
                "factor": d.algebra.factors()[s.factor_index].name,
                "dimension": s.dimension(),
                "isomorphism": s.isomorphism_note(),
            })
        })
        .collect();
    let constraint: Vec<Value> = uni
        .constraint
        .iter()
        .map(|&(i, c)| json!({"factor": d.algebra.factors()[i].name, "coefficient": c}))
        .collect();
    let value = json!({
        "algebra": d.algebra.to_string(),
        "lie_algebra": g.to_string(),
        "simple_factors": simple,
        "abelian_rank": g.abelian_rank,
        "dimension": algebra_dimension(&g),
        "unimodularity": {
            "constraint": constraint,
            "effective_abelian_rank": uni.effective_abelian_rank,
            "degenerate": uni.degenerate,
        },
        "irrep_correspondence": to_value(&irreps),
    });
    let relation = uni
        .constraint
        .iter()
        .map(|&(i, c)| format!("{c}*tr({})", d.algebra.factors()[i].name))
        .collect::<Vec<_>>()
        .join(" + ");
    let mut text = format!(
        "algebra: {}\ngauge Lie algebra: {}\ndimension: {}\nunimodularity: {} = 0 (abelian rank {})",
        d.algebra,
        g,
        algebra_dimension(&g),
        if relation.is_empty() { "no constraint".into() } else { relation },
        uni.effective_abelian_rank
    );
    text.push_str(&format!(
        "\nirreducible representations correspond: {}",
        match &irreps.diagnostic {
            None => "yes".to_string(),
            Some(why) => format!("no ({why})"),
        }
    ));
    ctx.emit(EXIT_OK, value, text)
}

fn fields_cmd(ctx: &Ctx, d: &ValidDiagram) -> Result<Outcome, InvariantError> {
    let inv = enumerate_fields(d)?;
    let comps: Vec<Value> = inv
        .components
        .iter()
        .map(|c| {
            json!({
                "edge": format!("{} -> {}", d.label_name(c.source), d.label_name(c.target)),
                "p": c.p,
                "source_dimension": d.label_dimension(c.source),
                "target_dimension": d.label_dimension(c.target),
            })
        })
        .collect();
    let mut text: Vec<String> = inv
        .components
        .iter()
        .map(|c| {
            format!(
                "phi^{} on {} -> {}  ({}x{} complex)",
                c.p,
                d.label_name(c.source),
                d.label_name(c.target),
                d.label_dimension(c.target),
                d.label_dimension(c.source)
            )
        })
        .collect();
    text.push(format!("independent components: {}", inv.count));
    Ok(ctx.emit(EXIT_OK, json!({"components": comps, "count": inv.count}), text.join("\n")))
}

fn terms_cmd(ctx: &Ctx, d: &ValidDiagram, terms: &[crate::invariants::InvariantTerm]) -> Outcome {
    let views: Vec<_> = terms.iter().map(|t| t.view(d)).collect();
    let mut text: Vec<String> = views.iter().map(ToString::to_string).collect();
    text.push(format!("{} terms", views.len()));
    ctx.emit(EXIT_OK, json!({"terms": to_value(&views), "count": views.len()}), text.join("\n"))
}

fn coverage_cmd(ctx: &Ctx, d: &ValidDiagram) -> Result<Outcome, InvariantError> {
    let cov = counterterm_coverage(d)?;
    let mut text: Vec<String> = cov
        .entries
        .iter()
        .map(|e| {
            let by = match &e.covered_by {
                CoveredBy::Action { trace } => format!("action: {trace}"),
                CoveredBy::Trail { walk } => format!("trail: {walk}"),
                CoveredBy::Missing => "MISSING".to_string(),
            };
            format!("{}  <=  {by}", e.required)
        })
        .collect();
    let missing = cov.missing().count();
    text.push(if cov.complete {
        "coverage: complete".to_string()
    } else {
        format!("coverage: incomplete ({missing} missing)")
    });
    Ok(ctx.emit(ctx.negative(cov.complete), to_value(&cov), text.join("\n")))
}

fn powercount_cmd(ctx: &mut Ctx, profile: Option<&PathBuf>, n: ExpansionOrder) -> Outcome {
    let Some(path) = profile else {
        return powercount_tables(ctx, n);
    };
    ctx.input = json!({"kind": "profile", "path": path.display().to_string()});
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
    };
    let p: GraphProfile = match serde_json::from_str(&text) {
        Ok(p) => p,
        Err(e) => {
            let detail = json!({"line": e.line(), "column": e.column(), "message": e.to_string()});
            return ctx.fail(EXIT_PARSE, json!({"kind": "parse", "detail": detail}), format!("{}: {e}", path.display()));
        }
    };
    let report = validate_profile(&p);
    let bound = match omega_bound(&p, n) {
        Ok(b) => b,
        Err(e) => return ctx.fail(EXIT_INVALID, json!({"kind": "profile", "detail": e.to_string()}), format!("error: {e}")),
    };
    let ext = omega_external(p.loops, p.external_gauge, p.external_higgs, p.external_ghost, n);
    let value = json!({
        "order": n.get(),
        "profile": to_value(&p),
        "identities": to_value(&report),
        "omega_bound": bound,
        "omega_external": ext,
    });
    let mut lines: Vec<String> = report
        .checks
        .iter()
        .map(|c| format!("{:<18} {} = {}  {}", c.name, c.lhs, c.rhs, if c.holds { "ok" } else { "FAIL" }))
        .collect();
    lines.push(format!("omega bound (n = {}): {bound}", n.get()));
    lines.push(format!("external-leg bound: {ext}"));
    let code = if report.holds { EXIT_OK } else { EXIT_INVALID };
    ctx.emit(code, value, lines.join("\n"))
}

fn powercount_tables(ctx: &Ctx, n: ExpansionOrder) -> Outcome {
    let prop = propagator_uv_degrees(n);
    let heat: Vec<Value> = (0..=4)
        .map(|k| {
            let (c, cp) = heat_kernel_coefficients(k);
            json!({"k": k, "c": c.to_string(), "c_prime": cp.to_string()})
        })
        .collect();
    let grid: Vec<Value> = (0..=4u64)
        .map(|l| {
            let row: Vec<i64> = (0..=6).map(|e| omega_external(l, e, 0, 0, n)).collect();
            json!({"loops": l, "omega_by_external_legs": row})
        })
        .collect();
    let value = json!({
        "order": n.get(),
        "propagator_degrees": to_value(&prop),
        "heat_kernel": heat,
        "heat_kernel_prefactor": "1/(8 pi^2)",
        "omega_external": grid,
    });
    let mut lines = vec![
        format!("expansion order n = {}", n.get()),
        format!("propagators ~ |p|^{} (gauge, Higgs, ghost)", prop.gauge),
        "heat-kernel coefficients (times 1/(8 pi^2)):".to_string(),
    ];
    for k in 0..=4 {
        let (c, cp) = heat_kernel_coefficients(k);
        lines.push(format!("  k={k}  c={c}  c'={cp}"));
    }
    lines.push("omega <= (4-n)(L-1) + 4 - E, rows L = 0..4, columns E = 0..6:".to_string());
    for l in 0..=4u64 {
        let row: Vec<String> = (0..=6).map(|e| format!("{:>4}", omega_external(l, e, 0, 0, n))).collect();
        lines.push(format!("  L={l} {}", row.join("")));
    }
    ctx.emit(EXIT_OK, value, lines.join("\n"))
}
