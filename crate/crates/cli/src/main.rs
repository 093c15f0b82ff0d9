//! Command-line front end: check specification files, print the built-in
//! fixtures, and render blocks to Graphviz DOT.
//!
//! Exit codes: `0` when every check passes, `1` when parsing, resolution or
//! verification reports a failure, `2` for usage and I/O errors.

use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use compcycle::adder::Base;
use compcycle::dot::{dot_category, dot_claim, dot_nattrans};
use compcycle::dsl::{
    canonical_format, parse_spec, resolve_spec, verify_spec, CheckDetail, Diagnostic,
    ResolvedClaim, SpecFile,
};
use compcycle::error::Limits;
use compcycle::fixtures;

#[derive(Parser)]
#[command(
    name = "compcycle",
    version,
    about = "Checks whether a described physical process computes, in the functorial sense",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, resolve and verify every block of a specification file.
    Check {
        /// Path to the specification file.
        file: PathBuf,
        /// Also write the full verification report as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Cap on recorded witnesses per check.
        #[arg(long, value_name = "N", default_value_t = 10)]
        max_witnesses: usize,
        /// Cap on enumerated candidates per search.
        #[arg(long, value_name = "N", default_value_t = 1_000_000)]
        max_candidates: u64,
        /// Print phase timings to stderr.
        #[arg(long)]
        timings: bool,
    },
    /// Print a built-in example file, or list them all when no name is given.
    Fixtures {
        /// One of: interval, adder, chain-audit, refinement, realizability,
        /// nested, programs.
        name: Option<String>,
        /// Numeral base for the adder fixture.
        #[arg(long, value_enum, default_value_t = BaseArg::Binary)]
        base: BaseArg,
        /// Digit width for the parametrized fixtures.
        #[arg(long, default_value_t = 1)]
        width: u32,
        /// Write to a file instead of stdout.
        #[arg(short, long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Render the categories, cycle claims and transformations of a file to
    /// Graphviz DOT, one file per block.
    Render {
        /// Path to the specification file.
        file: PathBuf,
        /// Output directory for the `.dot` files.
        #[arg(long, value_name = "DIR", default_value = ".")]
        out_dir: PathBuf,
        /// Only render blocks with this name.
        #[arg(long, value_name = "NAME")]
        select: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    Binary,
    Octal,
    Decimal,
}

impl From<BaseArg> for Base {
    fn from(b: BaseArg) -> Base {
        match b {
            BaseArg::Binary => Base::Binary,
            BaseArg::Octal => Base::Octal,
            BaseArg::Decimal => Base::Decimal,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check { file, json, max_witnesses, max_candidates, timings } => {
            let limits =
                Limits::default().with_witnesses(max_witnesses).with_candidates(max_candidates);
            check(&file, json.as_deref(), limits, timings)
        }
        Command::Fixtures { name, base, width, out } => {
            fixture(name.as_deref(), base.into(), width, out.as_deref())
        }
        Command::Render { file, out_dir, select } => render(&file, &out_dir, select.as_deref()),
    };
    ExitCode::from(code)
}

/// True when status words should be colored.
fn use_color() -> bool {
    match std::env::var("COMPCYCLE_COLOR").ok().as_deref() {
        Some("always") | Some("1") => true,
        Some("never") | Some("0") => false,
        _ => std::io::stdout().is_terminal(),
    }
}

fn status(ok: bool, color: bool) -> String {
    match (ok, color) {
        (true, true) => "\x1b[32mok\x1b[0m  ".into(),
        (true, false) => "ok  ".into(),
        (false, true) => "\x1b[31mFAIL\x1b[0m".into(),
        (false, false) => "FAIL".into(),
    }
}

fn report_diagnostics(path: &Path, diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{}:{d}", path.display());
    }
}

fn check(path: &Path, json: Option<&Path>, limits: Limits, timings: bool) -> u8 {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", path.display());
            return 2;
        }
    };

    let parse_started = Instant::now();
    let outcome = match parse_spec(&text) {
        Ok(outcome) => outcome,
        Err(diags) => {
            report_diagnostics(path, &diags);
            return 1;
        }
    };
    let parse_elapsed = parse_started.elapsed();
    report_diagnostics(path, &outcome.warnings);

    let verify_started = Instant::now();
    let verification = match verify_spec(&outcome.spec, limits) {
        Ok(verification) => verification,
        Err(diags) => {
            report_diagnostics(path, &diags);
            return 1;
        }
    };
    let verify_elapsed = verify_started.elapsed();

    let color = use_color();
    for entry in &verification.entries {
        match detail_summary(&entry.detail) {
            Some(summary) => {
                println!("{} {}  ({summary})", status(entry.ok, color), entry.subject)
            }
            None => println!("{} {}", status(entry.ok, color), entry.subject),
        }
    }
    let failed = verification.entries.iter().filter(|e| !e.ok).count();
    println!("{}: {} checks, {} failed", path.display(), verification.entries.len(), failed);
    if timings {
        eprintln!("timings: parse {parse_elapsed:.2?}, resolve+verify {verify_elapsed:.2?}");
    }

    if let Some(json_path) = json {
        let rendered =
            serde_json::to_string_pretty(&verification).expect("verification reports serialize");
        if let Err(err) = fs::write(json_path, rendered + "\n") {
            eprintln!("error: cannot write {}: {err}", json_path.display());
            return 2;
        }
    }
    if verification.ok {
        0
    } else {
        1
    }
}

/// A one-line account of the evidence behind a check entry.
fn detail_summary(detail: &CheckDetail) -> Option<String> {
    let law_report = |report: &compcycle::LawReport| -> Option<String> {
        report.violations.first().map(|v| v.to_string())
    };
    let verdict = |v: &compcycle::Verdict| -> Option<String> {
        if v.ok {
            return None;
        }
        match (v.stage, v.witnesses.first()) {
            (Some(stage), Some(w)) => Some(format!("{}: {w}", stage.as_str())),
            (Some(stage), None) => Some(stage.as_str().to_string()),
            (None, _) => Some("no candidate exists".into()),
        }
    };
    match detail {
        CheckDetail::CategoryLaws(report)
        | CheckDetail::FunctorLaws(report)
        | CheckDetail::Naturality(report)
        | CheckDetail::AdjunctionLaws(report) => law_report(report),
        CheckDetail::Cycle(v) | CheckDetail::Composite(v) | CheckDetail::Causal(v) => verdict(v),
        CheckDetail::Refinement { ok, translation, witnesses, .. } => match (ok, translation) {
            (true, Some(_)) => Some("translation exhibited".into()),
            (true, None) => None,
            (false, _) => Some(
                witnesses
                    .first()
                    .map(|w| w.to_string())
                    .unwrap_or_else(|| "no translation exists".into()),
            ),
        },
        CheckDetail::Realizability { mode, verdict: v, unit, .. } => {
            let mode = match mode {
                compcycle::RealizabilityMode::Strict => "strict",
                compcycle::RealizabilityMode::Relaxed => "relaxed",
            };
            match (v.ok, unit) {
                (true, Some(_)) => Some(format!("{mode}: realized up to conversion")),
                (true, None) => Some(format!("{mode}: realized on the nose")),
                (false, _) => {
                    Some(format!("{mode}: {}", verdict(v).unwrap_or_else(|| "failed".into())))
                }
            }
        }
        CheckDetail::Nested(report) => {
            if report.ok {
                Some(format!("{} layers compose", report.layers.len()))
            } else {
                let layer_fail = report.layers.iter().position(|v| !v.ok);
                let link_fail = report.links.iter().position(|v| !v.ok);
                Some(match (layer_fail, link_fail) {
                    (Some(i), _) => format!("layer {i} fails"),
                    (None, Some(i)) => format!("link {i} fails"),
                    (None, None) => "the end-to-end composite fails".into(),
                })
            }
        }
        CheckDetail::Audit { n_simple, n_functorial, strictly_more_demanding } => Some(format!(
            "simple={n_simple} functorial={n_functorial}{}",
            if *strictly_more_demanding { ", stricter" } else { "" }
        )),
    }
}

fn fixture(name: Option<&str>, base: Base, width: u32, out: Option<&Path>) -> u8 {
    let Some(name) = name else {
        for (name, _) in fixtures::default_fixtures() {
            println!("{name}");
        }
        return 0;
    };
    let spec: Result<SpecFile, compcycle::Error> = match name {
        "interval" => Ok(fixtures::spec_interval()),
        "adder" => fixtures::spec_adder_claim(base, width),
        "chain-audit" => Ok(fixtures::spec_chain_audit()),
        "refinement" => fixtures::spec_refinement(width),
        "realizability" => fixtures::spec_realizability(width),
        "nested" => fixtures::spec_nested(width),
        "programs" => Ok(fixtures::spec_comp_bool()),
        other => {
            eprintln!("error: unknown fixture `{other}` (run `compcycle fixtures` for the list)");
            return 2;
        }
    };
    let spec = match spec {
        Ok(spec) => spec,
        Err(err) => {
            eprintln!("error: cannot build fixture `{name}`: {err}");
            return 2;
        }
    };
    let text = canonical_format(&spec);
    match out {
        Some(path) => {
            if let Err(err) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {err}", path.display());
                return 2;
            }
            0
        }
        None => {
            print!("{text}");
            0
        }
    }
}

fn render(path: &Path, out_dir: &Path, select: Option<&str>) -> u8 {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", path.display());
            return 2;
        }
    };
    let outcome = match parse_spec(&text) {
        Ok(outcome) => outcome,
        Err(diags) => {
            report_diagnostics(path, &diags);
            return 1;
        }
    };
    report_diagnostics(path, &outcome.warnings);
    let resolved = match resolve_spec(&outcome.spec) {
        Ok(resolved) => resolved,
        Err(diags) => {
            report_diagnostics(path, &diags);
            return 1;
        }
    };
    if let Err(err) = fs::create_dir_all(out_dir) {
        eprintln!("error: cannot create {}: {err}", out_dir.display());
        return 2;
    }

    let wanted = |name: &str| select.map(|s| s == name).unwrap_or(true);
    let mut written = 0usize;
    let mut write = |file: String, contents: String| -> bool {
        let target = out_dir.join(file);
        if let Err(err) = fs::write(&target, contents) {
            eprintln!("error: cannot write {}: {err}", target.display());
            return false;
        }
        println!("{}", target.display());
        written += 1;
        true
    };

    for (name, cat) in &resolved.categories {
        if wanted(name) && !write(format!("category-{name}.dot"), dot_category(name, cat)) {
            return 2;
        }
    }
    for (name, nt) in &resolved.nat_trans {
        if wanted(name) && !write(format!("nattrans-{name}.dot"), dot_nattrans(name, nt)) {
            return 2;
        }
    }
    for (name, claim) in &resolved.claims {
        let (ResolvedClaim::Cycle { claim, .. }
        | ResolvedClaim::Realizability { claim, .. }
        | ResolvedClaim::Causal { claim }) = claim
        else {
            continue;
        };
        if wanted(name) && !write(format!("claim-{name}.dot"), dot_claim(name, claim)) {
            return 2;
        }
    }
    if written == 0 {
        eprintln!(
            "error: nothing to render{}",
            select.map(|s| format!(" for `{s}`")).unwrap_or_default()
        );
        return 2;
    }
    0
}
