//! Command-line surface over the `gridlabel` library.
//!
//! Every command renders into a `String` and an exit code so it can be
//! tested without spawning a process. Exit codes: 0 pass, 1 property
//! violation, 2 usage or budget error.

pub mod args;
mod render;

use std::fmt::Write as _;

use gridlabel::bounds::{bounds_table, format_ratio, format_significant};
use gridlabel::search::{exact_span, Patch};
use gridlabel::verifier::{
    allowed_gcd_ab, check_diamond_capped, check_no_hole_with_budget, check_window_at, gcd_ab,
    NoHoleMode,
};
use gridlabel::{scheme_params, Scheme, SchemeKind, Vertex};
use num_bigint::BigInt;
use thiserror::Error;

use args::{BoundsArgs, LabelArgs, NoholeArgs, NoholeModeArg, SearchArgs, VerifyArgs, VerifyMode};
pub use args::{Cli, Command, OutputFormat, WindowSpec};
pub use render::parse_label_csv;
use render::{json_scheme, CheckJson};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gridlabel::Error),
    #[error("window {window} has {cells} cells, above the budget of {budget}")]
    WindowTooLarge {
        window: WindowSpec,
        cells: u64,
        budget: u64,
    },
    #[error("format {format} is not available for `{command}`")]
    UnsupportedFormat {
        format: OutputFormat,
        command: &'static str,
    },
    #[error("malformed label csv: {0}")]
    Csv(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        EXIT_USAGE
    }
}

/// Rendered output plus exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
}

impl Outcome {
    fn new(passed: bool, stdout: String) -> Self {
        Outcome {
            code: if passed { EXIT_PASS } else { EXIT_VIOLATION },
            stdout,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Label(a) => cmd_label(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Nohole(a) => cmd_nohole(a),
        Command::Search(a) => cmd_search(a),
    }
}

fn reject_pgm(format: OutputFormat, command: &'static str) -> Result<(), CliError> {
    if format == OutputFormat::Pgm {
        return Err(CliError::UnsupportedFormat { format, command });
    }
    Ok(())
}

fn check_cells(window: WindowSpec, budget: u64) -> Result<(), CliError> {
    if window.cells() > budget {
        return Err(CliError::WindowTooLarge {
            window,
            cells: window.cells(),
            budget,
        });
    }
    Ok(())
}

pub fn cmd_label(args: &LabelArgs) -> Result<Outcome, CliError> {
    let scheme: Scheme = scheme_params(args.k)?;
    let w = args.window;
    check_cells(w, args.cell_budget)?;
    // rows[i] holds y = y0 + i, columns x0..x0 + width.
    let rows = (0..w.height as i64)
        .map(|dy| {
            (0..w.width as i64)
                .map(|dx| {
                    Ok(scheme
                        .label(Vertex::new(w.x0 + dx, w.y0 + dy))?
                        .into_inner())
                })
                .collect::<Result<Vec<i64>, gridlabel::Error>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let out = match args.format {
        OutputFormat::Csv => render::grid_csv(w.x0, w.y0, &rows),
        OutputFormat::Ascii => render::grid_ascii(&rows, *scheme.c() - 1),
        OutputFormat::Pgm => render::grid_pgm(&rows, *scheme.c() - 1),
        OutputFormat::Json => render::to_json(&serde_json::json!({
            "k": args.k,
            "scheme": json_scheme(&scheme),
            "window": { "x0": w.x0, "y0": w.y0, "width": w.width, "height": w.height },
            "labels": rows,
        })),
    };
    Ok(Outcome::new(true, out))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    reject_pgm(args.format, "verify")?;
    let scheme: Scheme = scheme_params(args.k)?;
    let mut checks = Vec::new();
    if matches!(args.mode, VerifyMode::Diamond | VerifyMode::Both) {
        let v = check_diamond_capped(&scheme, args.max_violations)?;
        checks.push(CheckJson::from_verdict("diamond", None, &v));
    }
    if matches!(args.mode, VerifyMode::Window | VerifyMode::Both) {
        let w = args.window;
        check_cells(w, args.cell_budget)?;
        let v = check_window_at(
            &scheme,
            Vertex::new(w.x0, w.y0),
            w.width,
            w.height,
            args.max_violations,
        )?;
        checks.push(CheckJson::from_verdict("window", Some(w.to_string()), &v));
    }
    let passed = checks.iter().all(|c| c.passed);
    let agree = checks.iter().all(|c| c.passed == checks[0].passed);

    let out = match args.format {
        OutputFormat::Json => render::to_json(&serde_json::json!({
            "k": args.k,
            "scheme": json_scheme(&scheme),
            "checks": checks,
            "agree": agree,
            "passed": passed,
        })),
        OutputFormat::Csv => {
            let mut s = String::from(
                "check,offset_x,offset_y,distance,required_gap,actual,u_x,u_y,v_x,v_y\n",
            );
            for c in &checks {
                for v in &c.violations {
                    let pair = match v.pair {
                        Some([u, w]) => format!("{},{},{},{}", u[0], u[1], w[0], w[1]),
                        None => ",,,".to_string(),
                    };
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{}",
                        c.check,
                        v.offset[0],
                        v.offset[1],
                        v.distance,
                        v.required_gap,
                        v.actual,
                        pair
                    );
                }
            }
            s
        }
        _ => {
            let mut s = format!("scheme: {scheme}\n");
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let name = match &c.window {
                    Some(w) => format!("{} {w}", c.check),
                    None => c.check.to_string(),
                };
                let _ = writeln!(
                    s,
                    "{name}: {status}  {} checked, {} violations",
                    c.checked_pairs, c.violation_count
                );
                for v in &c.violations {
                    let _ = write!(
                        s,
                        "  offset ({}, {}) at distance {}: gap {} < required {}",
                        v.offset[0], v.offset[1], v.distance, v.actual, v.required_gap
                    );
                    if let Some([u, w]) = v.pair {
                        let _ =
                            write!(s, "  between ({}, {}) and ({}, {})", u[0], u[1], w[0], w[1]);
                    }
                    s.push('\n');
                }
            }
            if checks.len() > 1 {
                s.push_str(if agree {
                    "verdicts agree\n"
                } else {
                    "verdicts DISAGREE\n"
                });
            }
            s
        }
    };
    Ok(Outcome::new(passed, out))
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<Outcome, CliError> {
    reject_pgm(args.format, "bounds")?;
    let table = bounds_table::<BigInt>(args.k_min, args.k_max)?;
    let rows: Vec<[String; 6]> = table
        .iter()
        .map(|r| {
            [
                r.k.to_string(),
                format_ratio(&r.lower_exact),
                r.lower.to_string(),
                r.upper
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
                r.ratio.as_ref().map(format_ratio).unwrap_or_default(),
                r.ratio
                    .as_ref()
                    .map(|q| format_significant(q, 6))
                    .unwrap_or_default(),
            ]
        })
        .collect();
    const HEADER: [&str; 6] = [
        "k",
        "lower_exact",
        "lower",
        "upper",
        "ratio_exact",
        "ratio_decimal",
    ];
    let out = match args.format {
        OutputFormat::Csv => {
            let mut s = HEADER.join(",");
            s.push('\n');
            for row in &rows {
                s.push_str(&row.join(","));
                s.push('\n');
            }
            s
        }
        OutputFormat::Json => {
            let records: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let obj: serde_json::Map<String, serde_json::Value> = HEADER
                        .iter()
                        .zip(row)
                        .map(|(h, v)| {
                            let value = if v.is_empty() {
                                serde_json::Value::Null
                            } else {
                                serde_json::Value::String(v.clone())
                            };
                            (h.to_string(), value)
                        })
                        .collect();
                    serde_json::Value::Object(obj)
                })
                .collect();
            render::to_json(&serde_json::json!({
                "k_min": args.k_min,
                "k_max": args.k_max,
                "limit_ratio": "9/8",
                "records": records,
            }))
        }
        _ => render::table_ascii(&HEADER, &rows),
    };
    Ok(Outcome::new(true, out))
}

pub fn cmd_nohole(args: &NoholeArgs) -> Result<Outcome, CliError> {
    reject_pgm(args.format, "nohole")?;
    let scheme: Scheme = scheme_params(args.k)?;
    let mode = match args.mode {
        NoholeModeArg::Gcd => NoHoleMode::Gcd,
        NoholeModeArg::Enumerate => NoHoleMode::Enumerate,
        NoholeModeArg::Both => NoHoleMode::Both,
    };
    let report = check_no_hole_with_budget(&scheme, mode, args.budget)?;
    let gcd_ab = gcd_ab::<i64>(args.k)?;
    let allowed = match scheme.kind() {
        SchemeKind::Formula(case) => allowed_gcd_ab(case),
        SchemeKind::Custom => &[],
    };
    let out = match args.format {
        OutputFormat::Json => render::to_json(&serde_json::json!({
            "k": args.k,
            "scheme": json_scheme(&scheme),
            "gcd_ab": gcd_ab,
            "gcd_ab_allowed": allowed,
            "gcd_abc": report.gcd_triple,
            "attained": report.attained_count,
            "is_no_hole": report.is_no_hole,
        })),
        OutputFormat::Csv => format!(
            "k,a,b,c,gcd_ab,gcd_abc,attained,is_no_hole\n{},{},{},{},{},{},{},{}\n",
            args.k,
            scheme.a(),
            scheme.b(),
            scheme.c(),
            gcd_ab,
            report.gcd_triple,
            report
                .attained_count
                .map(|n| n.to_string())
                .unwrap_or_default(),
            report.is_no_hole
        ),
        _ => {
            let allowed: Vec<String> = allowed.iter().map(ToString::to_string).collect();
            let mut s = format!("scheme: {scheme}\n");
            let _ = writeln!(
                s,
                "gcd(a, b) = {gcd_ab} (expected one of {})",
                allowed.join(", ")
            );
            let _ = writeln!(s, "gcd(a, b, c) = {}", report.gcd_triple);
            if let Some(n) = report.attained_count {
                let _ = writeln!(s, "enumeration: {n}/{} labels attained", scheme.c());
            }
            let _ = writeln!(
                s,
                "no-hole: {}",
                if report.is_no_hole { "yes" } else { "no" }
            );
            s
        }
    };
    Ok(Outcome::new(report.is_no_hole, out))
}

pub fn cmd_search(args: &SearchArgs) -> Result<Outcome, CliError> {
    reject_pgm(args.format, "search")?;
    let patch = Patch::new(args.rows, args.cols)?;
    let result = exact_span(&patch, args.k, args.node_budget)?;
    let rows: Vec<Vec<i64>> = (0..args.rows as i64)
        .map(|y| {
            (0..args.cols as i64)
                .map(|x| i64::from(result.certificate[&Vertex::new(x, y)]))
                .collect()
        })
        .collect();
    let out = match args.format {
        OutputFormat::Csv => render::grid_csv(0, 0, &rows),
        OutputFormat::Json => render::to_json(&serde_json::json!({
            "k": args.k,
            "scheme": scheme_params::<i64>(args.k).ok().map(|s| json_scheme(&s)),
            "patch": { "rows": args.rows, "cols": args.cols },
            "minimal_lambda": result.minimal_lambda,
            "exhausted": result.exhausted,
            "nodes_explored": result.nodes_explored,
            "certificate": rows,
        })),
        _ => {
            let mut s = format!(
                "patch: {} rows x {} cols, k = {}\n",
                args.rows, args.cols, args.k
            );
            let _ = writeln!(s, "minimal lambda: {}", result.minimal_lambda);
            let _ = writeln!(s, "exhausted: {}", result.exhausted);
            let _ = writeln!(s, "nodes explored: {}", result.nodes_explored);
            s.push_str("certificate:\n");
            s.push_str(&render::grid_ascii(
                &rows,
                i64::from(result.minimal_lambda) - 1,
            ));
            s
        }
    };
    Ok(Outcome::new(true, out))
}
