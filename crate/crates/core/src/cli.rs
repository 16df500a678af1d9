//! The `orbifold-voa` command line.
//!
//! Exit codes: 0 success, 1 bad arguments or labels, 2 inconsistent fusion closure,
//! 3 a verification item failed or a computation errored.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::fusion::{decompose, upper_bound, witness_names, FusionTable};
use crate::intertwiners::witness_for_triple;
use crate::label::ModuleLabel;
use crate::scalar::Q;
use crate::twisted::delta_table;
use crate::verify::{self, Check, Status, Suite, SuiteConfig};
use crate::zhu::zhu_table;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "orbifold-voa", version, about = "Fusion rules, Zhu actions and checks for V_L^+")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Opts {
    /// Half the norm of the generator: <alpha, alpha> = 2k.
    #[arg(long, global = true, default_value_t = 2)]
    k: u32,
    /// Weight cutoff, a nonnegative rational such as 4 or 7/2.
    #[arg(long, global = true, default_value = "4")]
    cutoff: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Range of m in the lattice families of `dump decompose`.
    #[arg(long, global = true, default_value_t = 2)]
    window: i64,
    /// Total degree for `dump delta`.
    #[arg(long, global = true, default_value_t = 8)]
    order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fusion rules of V_L^+.
    #[command(subcommand)]
    Fusion(FusionCmd),
    /// Top-level actions of omega, J and E.
    #[command(subcommand)]
    Zhu(ZhuCmd),
    /// Run a named check suite.
    Verify {
        /// table1, identities, closure, bounds, decomp, delta, psi, p31 or jacobi.
        suite: String,
    },
    /// Dump a table.
    Dump {
        #[arg(value_enum)]
        what: DumpWhat,
        /// Module for `dump decompose`.
        #[arg(long)]
        module: Option<String>,
    },
    /// Evaluate the explicit intertwining operator for a triple on top vectors.
    Witness {
        /// Comma-separated triple, e.g. V+,Va+,Va+.
        #[arg(long = "type")]
        types: String,
    },
}

#[derive(Debug, Subcommand)]
enum FusionCmd {
    Query { w1: String, w2: String, w3: String },
    Table,
}

#[derive(Debug, Subcommand)]
enum ZhuCmd {
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DumpWhat {
    Decompose,
    Delta,
    Zhu,
    Table,
}

#[derive(Debug, Serialize)]
struct Report {
    k: u32,
    command: String,
    results: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    record: Option<FusionRecord>,
}

#[derive(Debug, Serialize)]
struct FusionRecord {
    k: u32,
    triple: [ModuleLabel; 3],
    value: u8,
    bound: u32,
    witnesses: Vec<String>,
}

/// What a command produced: a report plus the layout of its text and CSV forms.
struct Output {
    report: Report,
    text: String,
    csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    code: i32,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent { .. } => EXIT_INCONSISTENT,
        Error::BadLabel(_) | Error::LabelMismatch { .. } | Error::Usage(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

/// Sets the global rayon pool from `ORBIFOLD_VOA_THREADS`, if present and positive.
pub fn configure_threads() {
    if let Some(n) = std::env::var("ORBIFOLD_VOA_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|n| *n > 0)
    {
        // fails only if a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parse `args` (including the program name), run, and write to `out` and `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let rendered = render(&o, cli.opts.format);
            if let Err(e) = out.write_all(rendered.as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_FAILED;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if exit_code(&e) == EXIT_USAGE {
                let _ = writeln!(err, "run `orbifold-voa --help` for usage");
            }
            exit_code(&e)
        }
    }
}

fn render(o: &Output, format: Format) -> String {
    match format {
        Format::Text => o.text.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&o.report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match &o.csv {
                Some((header, rows)) => {
                    w.write_record(header).expect("in-memory write");
                    for r in rows {
                        w.write_record(r).expect("in-memory write");
                    }
                }
                None => {
                    w.write_record(["name", "status", "detail"]).expect("in-memory write");
                    for c in &o.report.results {
                        w.write_record([c.name.as_str(), status_word(c.status), c.detail.as_str()])
                            .expect("in-memory write");
                    }
                }
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skip => "skip",
    }
}

fn parse_cutoff(s: &str) -> crate::Result<Q> {
    let q: Q = s
        .trim()
        .parse()
        .map_err(|_| Error::Usage(format!("cutoff `{s}` is not a rational number")))?;
    if q < Q::from_integer(0) {
        return Err(Error::Usage(format!("cutoff must be nonnegative, got {q}")));
    }
    Ok(q)
}

fn parse_label(s: &str, k: u32) -> crate::Result<ModuleLabel> {
    s.trim().parse::<ModuleLabel>()?.normalize(k)
}

fn execute(cli: &Cli) -> crate::Result<Output> {
    let o = &cli.opts;
    let k = o.k;
    if k == 0 {
        return Err(Error::Usage("k must be at least 1".into()));
    }
    let cutoff = parse_cutoff(&o.cutoff)?;
    match &cli.command {
        Command::Fusion(FusionCmd::Query { w1, w2, w3 }) => {
            let t = [parse_label(w1, k)?, parse_label(w2, k)?, parse_label(w3, k)?];
            fusion_query(k, t)
        }
        Command::Fusion(FusionCmd::Table) | Command::Dump { what: DumpWhat::Table, .. } => fusion_table(k),
        Command::Zhu(ZhuCmd::Table) | Command::Dump { what: DumpWhat::Zhu, .. } => zhu(k),
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let cfg = SuiteConfig { k, cutoff, order: o.order, seed: o.seed };
            Ok(verify_output(k, suite, verify::run(suite, &cfg)))
        }
        Command::Dump { what: DumpWhat::Delta, .. } => Ok(delta(k, o.order)),
        Command::Dump { what: DumpWhat::Decompose, module } => {
            let m = module
                .as_deref()
                .ok_or_else(|| Error::Usage("dump decompose needs --module".into()))?;
            if o.window < 0 {
                return Err(Error::Usage("window must be nonnegative".into()));
            }
            decomposition(k, parse_label(m, k)?, o.window)
        }
        Command::Witness { types } => {
            let parts: Vec<&str> = types.split(',').collect();
            let [a, b, c] = parts.as_slice() else {
                return Err(Error::Usage(format!("--type needs three comma-separated labels, got `{types}`")));
            };
            witness(k, [parse_label(a, k)?, parse_label(b, k)?, parse_label(c, k)?], cutoff)
        }
    }
}

fn triple_text(t: &[ModuleLabel; 3]) -> String {
    format!("{} {} {}", t[0], t[1], t[2])
}

fn fusion_query(k: u32, t: [ModuleLabel; 3]) -> crate::Result<Output> {
    let table = FusionTable::build(k)?;
    let value = table.fusion(t[0], t[1], t[2])?;
    let bound = upper_bound(t[0], t[1], t[2], k)?;
    let witnesses = if value == 1 { witness_names(k, t) } else { Vec::new() };
    let mut text = format!("{value}\nbound {bound}\n");
    for w in &witnesses {
        text.push_str(&format!("witness {w}\n"));
    }
    let detail = format!("value {value}, bound {bound}");
    Ok(Output {
        report: Report {
            k,
            command: "fusion query".into(),
            results: vec![Check::new(triple_text(&t), true, detail)],
            record: Some(FusionRecord { k, triple: t, value, bound, witnesses }),
        },
        text,
        csv: Some((
            vec!["w1", "w2", "w3", "value", "bound"],
            vec![vec![t[0].to_string(), t[1].to_string(), t[2].to_string(), value.to_string(), bound.to_string()]],
        )),
        code: 0,
    })
}

fn fusion_table(k: u32) -> crate::Result<Output> {
    let table = FusionTable::build(k)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for (t, v) in table.entries() {
        text.push_str(&format!("{} {v}\n", triple_text(&t)));
        rows.push(vec![t[0].to_string(), t[1].to_string(), t[2].to_string(), v.to_string()]);
        results.push(Check::new(triple_text(&t), true, v.to_string()));
    }
    Ok(Output {
        report: Report { k, command: "fusion table".into(), results, record: None },
        text,
        csv: Some((vec!["w1", "w2", "w3", "value"], rows)),
        code: 0,
    })
}

fn zhu(k: u32) -> crate::Result<Output> {
    let rows = zhu_table(k)?;
    let mut text = String::new();
    let mut csv_rows = Vec::new();
    let mut results = Vec::new();
    for r in &rows {
        match &r.values {
            Some([w, j, e]) => {
                text.push_str(&format!("{}\tomega = {w}\tJ = {j}\tE = {e}\n", r.label));
                csv_rows.push(vec![r.label.to_string(), w.to_string(), j.to_string(), e.to_string()]);
                results.push(Check::new(r.label.to_string(), true, format!("omega = {w}; J = {j}; E = {e}")));
            }
            None => {
                let why = "two-dimensional top level";
                text.push_str(&format!("{}\t{why}\n", r.label));
                csv_rows.push(vec![r.label.to_string(), String::new(), String::new(), String::new()]);
                results.push(Check::skip(r.label.to_string(), why));
            }
        }
    }
    Ok(Output {
        report: Report { k, command: "zhu table".into(), results, record: None },
        text,
        csv: Some((vec!["module", "omega", "J", "E"], csv_rows)),
        code: 0,
    })
}

fn verify_output(k: u32, suite: Suite, results: Vec<Check>) -> Output {
    let ok = verify::all_passed(&results);
    let mut text = String::new();
    for c in &results {
        text.push_str(&format!("{} {}: {}\n", c.status, c.name, c.detail));
    }
    let skipped = results.iter().filter(|c| c.status == Status::Skip).count();
    text.push_str(&format!(
        "{} {}: {} items, {} skipped\n",
        if ok { "PASS" } else { "FAIL" },
        suite.name(),
        results.len(),
        skipped
    ));
    Output {
        report: Report { k, command: format!("verify {}", suite.name()), results, record: None },
        text,
        csv: None,
        code: if ok { 0 } else { EXIT_FAILED },
    }
}

fn delta(k: u32, order: usize) -> Output {
    let table = delta_table(order);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for m in 0..=order {
        for n in 0..=(order - m) {
            let c = &table[m][n];
            text.push_str(&format!("c_{m},{n} = {c}\n"));
            rows.push(vec![m.to_string(), n.to_string(), c.to_string()]);
            results.push(Check::new(format!("c_{m},{n}"), true, c.to_string()));
        }
    }
    Output {
        report: Report { k, command: "dump delta".into(), results, record: None },
        text,
        csv: Some((vec!["m", "n", "c_mn"], rows)),
        code: 0,
    }
}

fn decomposition(k: u32, label: ModuleLabel, window: i64) -> crate::Result<Output> {
    let parts = decompose(label, k, window)?;
    let mut text = format!("{label} over M(1)+, |m| <= {window}\n");
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for c in &parts {
        let shift = c.shift.map(|m| m.to_string()).unwrap_or_default();
        text.push_str(&format!("{c}\n"));
        rows.push(vec![c.module.to_string(), shift.clone()]);
        results.push(Check::new(c.module.to_string(), true, format!("m = {shift}")));
    }
    Ok(Output {
        report: Report { k, command: "dump decompose".into(), results, record: None },
        text,
        csv: Some((vec!["constituent", "m"], rows)),
        code: 0,
    })
}

fn witness(k: u32, t: [ModuleLabel; 3], cutoff: Q) -> crate::Result<Output> {
    let w = witness_for_triple(k, t, cutoff)?;
    let (line, check) = match &w {
        None => (
            "NO-CONSTRUCTION".to_string(),
            Check::skip(triple_text(&t), "no explicit construction for this triple or its images"),
        ),
        Some(w) => match &w.image {
            Some((e, v)) => {
                let s = format!("{} on {}: z^({e}) {v}", w.spec.name(), triple_text(&w.evaluated));
                (s.clone(), Check::new(triple_text(&t), true, s))
            }
            None => (
                "ZERO-UP-TO-CUTOFF".to_string(),
                Check::new(
                    triple_text(&t),
                    true,
                    format!("{} on {} vanishes up to cutoff {cutoff}", w.spec.name(), triple_text(&w.evaluated)),
                ),
            ),
        },
    };
    Ok(Output {
        report: Report { k, command: "witness".into(), results: vec![check], record: None },
        text: format!("{line}\n"),
        csv: None,
        code: 0,
    })
}
