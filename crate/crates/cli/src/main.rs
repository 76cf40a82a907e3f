//! Batch command-line front end: verification suites, expression evaluation,
//! catalog display and convention audit.
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage or parse error, 3 audit failure.

use std::io::Write;
use std::process::ExitCode;

use ercd_core::catalog::{Catalog, Conventions, Flavor, GeneratorSet, PForm, XSign};
use ercd_core::dsl;
use ercd_core::scalar::Sample;
use ercd_core::verify::audit::convention_audit;
use ercd_core::verify::suites::{run_suite, SUITE_NAMES};
use ercd_core::verify::{render_reports, SuiteReport};

const USAGE: &str = "\
ercd - exact verification engine for the extended real Clifford-Dirac operator algebra

USAGE:
    ercd verify <suite> [flags]    run a verification suite (or `all`)
    ercd eval \"<expr>\" [flags]     evaluate an expression and print its canonical form
    ercd show <name> [flags]       print a catalog object
    ercd audit [flags]             run the convention audit and report the result

SUITES:
    so15, so6, ercd-rank, a32, lorentz, poincare-fw, poincare-dirac,
    fw-dirac-map, bose-transform, casimir, fermi-case, all

FLAGS:
    --format <json|md|text>   output format (default text)
    --out <path>              write the report to a file instead of stdout
    --config <path>           flat key=value configuration file
    --sample m,p1,p2,p3       evaluation sample (default 3,0,0,4)
    --conventions <mode>      `audit` (default) or `explicit`
    --timings                 include elapsed milliseconds in reports

CONFIG KEYS:
    format, sample, conventions, p_form (minus_i_d|d),
    x_sign (covariant|contravariant), eps_translation (+1|-1), levi_civita (+1|-1)
";

struct Options {
    format: String,
    out: Option<String>,
    sample: [i64; 4],
    sample_given: bool,
    conventions_mode: String,
    explicit: Conventions,
    timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            format: "text".into(),
            out: None,
            sample: [3, 0, 0, 4],
            sample_given: false,
            conventions_mode: "audit".into(),
            explicit: Conventions::default(),
            timings: false,
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &[String]) -> Result<ExitCode, String> {
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help" {
        print!("{USAGE}");
        return Ok(ExitCode::SUCCESS);
    }
    let command = args[0].clone();
    let mut positional = Vec::new();
    let mut opts = Options::default();
    let mut config_path = None;
    let mut overrides: Vec<(String, String)> = Vec::new();
    let mut idx = 1;
    while idx < args.len() {
        let arg = &args[idx];
        match arg.as_str() {
            "--format" => overrides.push(("format".into(), take_value(args, "--format", &mut idx)?)),
            "--out" => opts.out = Some(take_value(args, "--out", &mut idx)?),
            "--config" => config_path = Some(take_value(args, "--config", &mut idx)?),
            "--sample" => overrides.push(("sample".into(), take_value(args, "--sample", &mut idx)?)),
            "--conventions" => {
                overrides.push(("conventions".into(), take_value(args, "--conventions", &mut idx)?));
            }
            "--timings" => opts.timings = true,
            other if other.starts_with("--") => {
                return Err(format!("unknown flag {other}"));
            }
            other => positional.push(other.to_string()),
        }
        idx += 1;
    }
    // Config file first, command line on top.
    let mut settings: Vec<(String, String)> = Vec::new();
    if let Some(path) = config_path {
        settings.extend(parse_config(&path)?);
    }
    settings.extend(overrides);
    apply_settings(&mut opts, &settings)?;

    match command.as_str() {
        "verify" => {
            let suite = positional
                .first()
                .ok_or_else(|| "verify needs a suite name".to_string())?;
            cmd_verify(suite, &opts)
        }
        "eval" => {
            let expr = positional
                .first()
                .ok_or_else(|| "eval needs an expression".to_string())?;
            cmd_eval(expr, &opts)
        }
        "show" => {
            let name = positional
                .first()
                .ok_or_else(|| "show needs a catalog name".to_string())?;
            cmd_show(name, &opts)
        }
        "audit" => cmd_audit(&opts),
        other => Err(format!("unknown command {other}; try --help")),
    }
}

fn take_value(args: &[String], name: &str, idx: &mut usize) -> Result<String, String> {
    *idx += 1;
    args.get(*idx).cloned().ok_or_else(|| format!("{name} needs a value"))
}

fn parse_config(path: &str) -> Result<Vec<(String, String)>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {path}: {e}"))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("{path}:{}: expected key=value", lineno + 1));
        };
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn apply_settings(opts: &mut Options, settings: &[(String, String)]) -> Result<(), String> {
    for (key, value) in settings {
        match key.as_str() {
            "format" => {
                if !["json", "md", "text"].contains(&value.as_str()) {
                    return Err(format!("format must be json, md or text, got {value}"));
                }
                opts.format = value.clone();
            }
            "sample" => {
                let parts: Vec<&str> = value.split(',').map(str::trim).collect();
                if parts.len() != 4 {
                    return Err(format!("sample must be m,p1,p2,p3, got {value}"));
                }
                let mut nums = [0i64; 4];
                for (slot, part) in nums.iter_mut().zip(&parts) {
                    *slot = part
                        .parse()
                        .map_err(|_| format!("sample component {part} is not an integer"))?;
                }
                opts.sample = nums;
                opts.sample_given = true;
            }
            "conventions" => {
                if !["audit", "explicit"].contains(&value.as_str()) {
                    return Err(format!("conventions must be audit or explicit, got {value}"));
                }
                opts.conventions_mode = value.clone();
            }
            "p_form" => {
                opts.explicit.p_form = match value.as_str() {
                    "minus_i_d" => PForm::MinusID,
                    "d" => PForm::D,
                    other => return Err(format!("p_form must be minus_i_d or d, got {other}")),
                };
            }
            "x_sign" => {
                opts.explicit.x_sign = match value.as_str() {
                    "covariant" => XSign::Covariant,
                    "contravariant" => XSign::Contravariant,
                    other => {
                        return Err(format!(
                            "x_sign must be covariant or contravariant, got {other}"
                        ))
                    }
                };
            }
            "eps_translation" => {
                opts.explicit.eps_translation = parse_sign(value)?;
            }
            "levi_civita" => {
                opts.explicit.levi_civita = parse_sign(value)?;
            }
            other => return Err(format!("unknown configuration key {other}")),
        }
    }
    Ok(())
}

fn parse_sign(value: &str) -> Result<i8, String> {
    match value {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(format!("sign must be +1 or -1, got {other}")),
    }
}

fn build_sample(opts: &Options) -> Result<Sample, String> {
    Sample::momentum_with_p0(opts.sample[0], [0, opts.sample[1], opts.sample[2], opts.sample[3]])
        .map_err(|e| e.to_string())
}

/// Resolves the conventions per the configured mode; `Err(report)` carries the
/// failed audit report.
fn resolve_conventions(opts: &Options) -> Result<(Conventions, Option<SuiteReport>), SuiteReport> {
    if opts.conventions_mode == "explicit" {
        return Ok((opts.explicit, None));
    }
    let outcome = convention_audit();
    match outcome.selected {
        Some(conv) => Ok((conv, Some(outcome.report))),
        None => Err(outcome.report),
    }
}

fn emit(opts: &Options, text: &str) -> Result<(), String> {
    match &opts.out {
        Some(path) => {
            let mut file =
                std::fs::File::create(path).map_err(|e| format!("cannot write {path}: {e}"))?;
            file.write_all(text.as_bytes()).map_err(|e| format!("cannot write {path}: {e}"))?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(suite: &str, opts: &Options) -> Result<ExitCode, String> {
    let known = suite == "all" || SUITE_NAMES.contains(&suite);
    if !known {
        return Err(format!(
            "unknown suite {suite}; valid suites: {}, all",
            SUITE_NAMES.join(", ")
        ));
    }
    let sample = build_sample(opts)?;
    let (conv, audit_report) = match resolve_conventions(opts) {
        Ok(pair) => pair,
        Err(report) => {
            let rendered = render_reports(&[report], &opts.format);
            emit(opts, &rendered)?;
            return Ok(ExitCode::from(3));
        }
    };
    let cat = Catalog::new(conv);
    let mut reports = Vec::new();
    if suite == "all" {
        if let Some(audit) = audit_report {
            reports.push(audit);
        }
        for name in SUITE_NAMES {
            reports.push(timed_suite(name, &cat, &sample, opts)?);
        }
    } else {
        reports.push(timed_suite(suite, &cat, &sample, opts)?);
    }
    let all_passed = reports.iter().all(SuiteReport::passed);
    let rendered = render_reports(&reports, &opts.format);
    emit(opts, &rendered)?;
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn timed_suite(
    name: &str,
    cat: &Catalog,
    sample: &Sample,
    opts: &Options,
) -> Result<SuiteReport, String> {
    let start = std::time::Instant::now();
    let mut report = run_suite(name, cat, sample).map_err(|e| e.to_string())?;
    if opts.timings {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

fn cmd_audit(opts: &Options) -> Result<ExitCode, String> {
    let start = std::time::Instant::now();
    let outcome = convention_audit();
    let passed = outcome.selected.is_some();
    let mut report = outcome.report;
    if opts.timings {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    let rendered = render_reports(&[report], &opts.format);
    emit(opts, &rendered)?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn cmd_eval(expr: &str, opts: &Options) -> Result<ExitCode, String> {
    let (conv, _) = match resolve_conventions(opts) {
        Ok(pair) => pair,
        Err(_) => return Ok(ExitCode::from(3)),
    };
    let cat = Catalog::new(conv);
    let ast = dsl::parse(expr).map_err(|e| e.to_string())?;
    let op = dsl::elaborate(&ast, &cat).map_err(|e| e.to_string())?;
    let mut text = format!("{}\n", dsl::format(&op, &cat));
    if opts.sample_given {
        let sample = build_sample(opts)?;
        let real = op.realify(&sample).map_err(|e| e.to_string())?;
        text.push_str(&render_real_matrix(&real));
    }
    emit(opts, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn render_real_matrix(m: &ercd_core::operator::RealMat) -> String {
    let mut out = String::new();
    for row in &m.0 {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("[ {} ]\n", cells.join(", ")));
    }
    out
}

fn cmd_show(name: &str, opts: &Options) -> Result<ExitCode, String> {
    let (conv, _) = match resolve_conventions(opts) {
        Ok(pair) => pair,
        Err(_) => return Ok(ExitCode::from(3)),
    };
    let cat = Catalog::new(conv);
    let text = match name {
        "V" | "W" => {
            let conj = if name == "V" { cat.v_conjugator() } else { cat.w_conjugator() };
            format!(
                "normalized conjugator {}\nnormalizer n = {}\nforward (sqrt(n)-scaled):\n{}inverse (sqrt(n)-scaled):\n{}",
                conj.name, conj.norm, conj.forward, conj.inverse
            )
        }
        "fw-fermi" => render_genset(&cat.fw_genset(Flavor::Fermi), &cat),
        "fw-ts" => render_genset(&cat.fw_genset(Flavor::TensorScalar), &cat),
        "dirac" => render_genset(&cat.dirac_genset(), &cat),
        other => {
            let ast = dsl::parse(other).map_err(|e| e.to_string())?;
            let op = dsl::elaborate(&ast, &cat).map_err(|e| e.to_string())?;
            let mut out = String::new();
            out.push_str(&format!("name: {other}\n"));
            if let Some(def) = definition_note(other) {
                out.push_str(&format!("definition: {def}\n"));
            }
            out.push_str(&format!("canonical form: {}\n", dsl::format(&op, &cat)));
            out.push_str(&format!(
                "conjugation flag: {}\n",
                if op.has_c_flag() { "antilinear part present" } else { "linear" }
            ));
            out.push_str(&format!("terms:\n{op}"));
            out
        }
    };
    emit(opts, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn render_genset(set: &GeneratorSet, cat: &Catalog) -> String {
    let mut out = format!("generator set {} (metric diag(+1,-1,-1,-1))\n", set.name);
    for (name, op) in set.members() {
        out.push_str(&format!("  {name} = {}\n", dsl::format(&op, cat)));
    }
    out
}

fn definition_note(name: &str) -> Option<&'static str> {
    Some(match name {
        "gamma4" => "gamma0*gamma1*gamma2*gamma3",
        "gamma5" => "gamma1*gamma3*C",
        "gamma6" => "i*gamma1*gamma3*C",
        "eps" => "i*gamma0",
        "HD" => "gamma0*(gamma.p + m) with the audited momentum form p_k = -i*D_k",
        "Lfw" => "i*D0 - gamma0*w",
        "Ldirac" => "i*D0 - HD",
        "w" => "energy symbol, w*w = m*m - D1*D1 - D2*D2 - D3*D3",
        "C" => "conjugation operator, C*i = -i*C, C*C = 1",
        _ => return None,
    })
}
