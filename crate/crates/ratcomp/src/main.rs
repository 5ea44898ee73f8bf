use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ratcomp::apclassify::{classify_all, pair_inventory, regimes, SweepMode, SweepReport};
use ratcomp::casegen::{build_system, case_count_report, distinct_root_part, enum_cases, CaseSpec, SinfMode};
use ratcomp::mpoly::{buchberger, eliminate, parse_system, MonomialOrder, MultiPoly, VarId};
use ratcomp::poly::parse_factored;
use ratcomp::verify::{brute_force_decompose, run_demo, verify_families, DemoReport, WitnessRecord, DEMOS};

const CASES_SCHEMA: &str = "ratcomp.cases/1";
const SOLVE_SCHEMA: &str = "ratcomp.solve/1";
const REPORT_SCHEMA: &str = "ratcomp.report/1";
const WITNESS_SCHEMA: &str = "ratcomp.witnesses/1";
const DEMO_SCHEMA: &str = "ratcomp.demo/1";
const COUNTS_SCHEMA: &str = "ratcomp.counts/1";

#[derive(Parser)]
#[command(name = "ratcomp", version, about = "Decompositions f = g(h) of rational functions with few zeros and poles")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel case processing.
    #[arg(long, global = true, env = "RATCOMP_WORKERS")]
    workers: Option<usize>,
    /// Seed for randomized instantiation.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Directory for file outputs.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ksum {
    Nonzero,
    Zero,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sinf {
    Empty,
    Nonempty,
    Any,
}

impl From<Sinf> for SinfMode {
    fn from(s: Sinf) -> Self {
        match s {
            Sinf::Empty => SinfMode::Empty,
            Sinf::Nonempty => SinfMode::Nonempty,
            Sinf::Any => SinfMode::Any,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Calibrated,
    Exhaustive,
}

impl From<Mode> for SweepMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Calibrated => SweepMode::Calibrated,
            Mode::Exhaustive => SweepMode::Exhaustive,
        }
    }
}

#[derive(clap::Args, Clone)]
struct Select {
    #[arg(long)]
    n: usize,
    /// Number of blocks; all admissible values when omitted.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, value_enum, default_value_t = Ksum::Nonzero)]
    ksum: Ksum,
    #[arg(long, value_enum, default_value_t = Sinf::Empty)]
    sinf: Sinf,
    #[arg(long, value_enum, default_value_t = Mode::Calibrated)]
    mode: Mode,
}

#[derive(Subcommand)]
enum Cmd {
    /// List cases (and with --out, write cases.json and systems/*.txt).
    Enumerate {
        #[command(flatten)]
        sel: Select,
        /// Print the per-t count table with mismatch diagnostics instead.
        #[arg(long)]
        counts: bool,
    },
    /// Groebner basis and beta-free elimination ideal of case systems.
    Solve {
        /// Solve every case of this size (with --t, --ksum, --sinf, --mode).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum, default_value_t = Ksum::Nonzero)]
        ksum: Ksum,
        #[arg(long, value_enum, default_value_t = Sinf::Empty)]
        sinf: Sinf,
        #[arg(long, value_enum, default_value_t = Mode::Calibrated)]
        mode: Mode,
        /// A single case id, e.g. n4-t2-nz-s_-b1.2_3.4-l1.1.1.1.
        #[arg(long, conflicts_with = "system")]
        case: Option<String>,
        /// A text file with one generator per line.
        #[arg(long)]
        system: Option<PathBuf>,
        /// Variables to eliminate, comma separated; defaults to every b_j.
        #[arg(long, value_delimiter = ',')]
        eliminate: Vec<String>,
    },
    /// Classify every (case, T) under the arithmetic-progression specialization.
    ClassifyAp {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Calibrated)]
        mode: Mode,
        /// Keep one record per (case, T) in the report.
        #[arg(long)]
        entries: bool,
    },
    /// Instantiate every surviving family at seeded random parameters.
    Verify {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Mode::Calibrated)]
        mode: Mode,
    },
    /// Search decompositions of one factored f with the brute-force oracle.
    Decompose {
        /// Factored form, e.g. "x*(x - 1)*(x - 2)*(x - 3)".
        f: String,
        #[arg(long, default_value_t = 4)]
        max_deg_h: usize,
    },
    /// Run a worked example, or all of them.
    Demo {
        #[arg(value_parser = demo_name)]
        name: String,
    },
    /// Everything for one n: cases.json, systems/*.txt, report.json, witnesses.json.
    Report {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

fn demo_name(s: &str) -> Result<String, String> {
    if s == "all" || DEMOS.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("expected one of all, {}", DEMOS.join(", ")))
    }
}

enum Failure {
    Usage(String),
    Check(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Check(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
        Format::Text => print!("{}", text()),
    }
    Ok(())
}

fn write_json(dir: &Path, name: &str, value: &Value) -> Result<(), Failure> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

fn check_n(n: usize) -> Result<(), Failure> {
    if !(3..=5).contains(&n) {
        return Err(usage(format!("n must be in 3..=5, got {n}")));
    }
    Ok(())
}

fn select_cases(sel: &Select) -> Result<Vec<CaseSpec>, Failure> {
    check_n(sel.n)?;
    let ksum_zero = sel.ksum == Ksum::Zero;
    let lo = if ksum_zero { 3 } else { 2 };
    let ts: Vec<usize> = match sel.t {
        Some(t) if t < lo || t > sel.n => return Err(usage(format!("t must be in {lo}..={}", sel.n))),
        Some(t) => vec![t],
        None => (lo..=sel.n).collect(),
    };
    let cfg = SweepMode::from(sel.mode).config();
    let mut out = Vec::new();
    for t in ts {
        out.extend(enum_cases(sel.n, t, ksum_zero, sel.sinf.into(), &cfg)?);
    }
    Ok(out)
}

fn cases_json(cases: &[CaseSpec], sel: Option<&Select>) -> Value {
    let mut v = json!({
        "schema": CASES_SCHEMA,
        "count": cases.len(),
        "cases": cases.iter().map(CaseSpec::to_json).collect::<Vec<_>>(),
    });
    if let Some(s) = sel {
        v["config"] = serde_json::to_value(SweepMode::from(s.mode).config()).expect("plain data");
    }
    v
}

fn write_cases(dir: &Path, cases: &[CaseSpec], sel: Option<&Select>) -> Result<(), Failure> {
    write_json(dir, "cases.json", &cases_json(cases, sel))?;
    let sys = dir.join("systems");
    fs::create_dir_all(&sys)?;
    for c in cases {
        fs::write(sys.join(format!("{}.txt", c.id())), build_system(c).to_text())?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.cmd {
        Cmd::Enumerate { sel, counts: true } => {
            check_n(sel.n)?;
            let rep = case_count_report(sel.n, &SweepMode::from(sel.mode).config())?;
            let v = json!({ "schema": COUNTS_SCHEMA, "report": rep });
            emit(cli, &v, || {
                let mut s = format!("n = {}\n", rep.n);
                for r in &rep.rows {
                    let target = r.target.map_or(String::new(), |t| format!(" (published {t})"));
                    s += &format!(
                        "t={} ksum={} s_inf={:?}: {}{}\n",
                        r.t,
                        if r.ksum_zero { "zero" } else { "nonzero" },
                        r.s_inf,
                        r.count,
                        target
                    );
                }
                for m in &rep.mismatches {
                    s += &format!("mismatch t={}: {} vs {}\n", m.t, m.count, m.target);
                    for (shape, c) in &m.by_shape {
                        s += &format!("  shape {shape}: {c}\n");
                    }
                    for (toggle, c) in &m.toggles {
                        s += &format!("  {toggle}: {c}\n");
                    }
                }
                s
            })?;
            Ok(true)
        }
        Cmd::Enumerate { sel, counts: false } => {
            let cases = select_cases(sel)?;
            if let Some(dir) = &cli.out {
                write_cases(dir, &cases, Some(sel))?;
            }
            emit(cli, &cases_json(&cases, Some(sel)), || {
                let mut s: String = cases.iter().map(|c| format!("{c}\n")).collect();
                s += &format!("{} cases\n", cases.len());
                s
            })?;
            Ok(true)
        }
        Cmd::Solve { n, t, ksum, sinf, mode, case, system, eliminate: drop } => {
            let sel = n.map(|n| Select { n, t: *t, ksum: *ksum, sinf: *sinf, mode: *mode });
            let systems: Vec<(String, Vec<MultiPoly>, Option<CaseSpec>)> = if let Some(path) = system {
                let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                vec![(path.display().to_string(), parse_system(&text).map_err(|e| usage(e.to_string()))?, None)]
            } else if let Some(id) = case {
                let c: CaseSpec = id.parse().map_err(|e: ratcomp::casegen::CaseError| usage(e.to_string()))?;
                vec![(c.id(), build_system(&c).gens, Some(c))]
            } else if let Some(sel) = &sel {
                select_cases(sel)?.into_iter().map(|c| (c.id(), build_system(&c).gens, Some(c))).collect()
            } else {
                return Err(usage("solve needs --case, --system or --n"));
            };
            let drop: Option<BTreeSet<VarId>> = if drop.is_empty() {
                None
            } else {
                Some(drop.iter().map(|s| s.parse()).collect::<Result<_, _>>().map_err(|e| usage(format!("{e}")))?)
            };
            let results: Vec<Value> = systems
                .iter()
                .map(|(name, gens, case)| {
                    let vars: BTreeSet<VarId> = gens.iter().flat_map(MultiPoly::vars).collect();
                    let drop = drop.clone().unwrap_or_else(|| vars.iter().copied().filter(VarId::is_beta).collect());
                    let basis = buchberger(gens, &MonomialOrder::grevlex(vars.iter().rev().copied().collect()));
                    let elim = eliminate(gens, &drop);
                    // for case systems, also the ideal with coinciding-root components removed
                    let distinct = case.as_ref().map(|c| {
                        eliminate(&distinct_root_part(c), &drop).iter().map(|g| g.to_string()).collect::<Vec<_>>()
                    });
                    json!({
                        "system": name,
                        "elimination_ideal_distinct_roots": distinct,
                        "generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        "groebner_grevlex": basis.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        "eliminated": drop.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "elimination_ideal": elim.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        "consistent": !(basis.len() == 1 && basis[0].is_constant()),
                    })
                })
                .collect();
            let v = json!({ "schema": SOLVE_SCHEMA, "results": results });
            if let Some(dir) = &cli.out {
                write_json(dir, "solve.json", &v)?;
            }
            emit(cli, &v, || {
                let mut s = String::new();
                for r in &results {
                    s += &format!("# {}\n", r["system"].as_str().unwrap_or_default());
                    for (label, key) in [
                        ("basis", "groebner_grevlex"),
                        ("eliminated", "elimination_ideal"),
                        ("distinct roots", "elimination_ideal_distinct_roots"),
                    ] {
                        for g in r[key].as_array().into_iter().flatten() {
                            s += &format!("{label}: {}\n", g.as_str().unwrap_or_default());
                        }
                    }
                }
                s
            })?;
            Ok(true)
        }
        Cmd::ClassifyAp { n, mode, entries } => {
            if !(3..=4).contains(n) {
                return Err(usage(format!("classify-ap supports n in 3..=4, got {n}")));
            }
            let rep = classify_all(*n, (*mode).into(), *entries)?;
            let v = report_json(&rep, None, None);
            if let Some(dir) = &cli.out {
                write_json(dir, "report.json", &v)?;
            }
            emit(cli, &v, || sweep_text(&rep))?;
            Ok(true)
        }
        Cmd::Verify { n, samples, mode } => {
            if !(3..=4).contains(n) {
                return Err(usage(format!("verify supports n in 3..=4, got {n}")));
            }
            let rep = classify_all(*n, (*mode).into(), false)?;
            let (records, ok) = verify_and_check(&rep, cli.seed, *samples)?;
            let v = witnesses_json(cli.seed, &records);
            if let Some(dir) = &cli.out {
                write_json(dir, "witnesses.json", &v)?;
            }
            emit(cli, &v, || witnesses_text(&records))?;
            Ok(ok)
        }
        Cmd::Decompose { f, max_deg_h } => {
            let f = parse_factored(f).map_err(|e| usage(e.to_string()))?;
            let ws = brute_force_decompose(&f, *max_deg_h)?;
            let records: Vec<WitnessRecord> = ws.iter().map(|w| w.record()).collect::<Result<_, _>>()?;
            let v = witnesses_json(cli.seed, &records);
            if let Some(dir) = &cli.out {
                write_json(dir, "witnesses.json", &v)?;
            }
            emit(cli, &v, || witnesses_text(&records))?;
            Ok(true)
        }
        Cmd::Demo { name } => {
            let names: Vec<&str> = if name == "all" { DEMOS.to_vec() } else { vec![name.as_str()] };
            let reports: Vec<DemoReport> = names.iter().map(|n| run_demo(n)).collect::<Result<_, _>>()?;
            let ok = reports.iter().all(DemoReport::passed);
            let v = json!({ "schema": DEMO_SCHEMA, "demos": reports });
            if let Some(dir) = &cli.out {
                write_json(dir, "demos.json", &v)?;
            }
            emit(cli, &v, || demos_text(&reports))?;
            Ok(ok)
        }
        Cmd::Report { n, samples } => {
            if !(3..=4).contains(n) {
                return Err(usage(format!("report supports n in 3..=4, got {n}")));
            }
            let dir = cli.out.clone().ok_or_else(|| usage("report needs --out"))?;
            let cfg = SweepMode::Calibrated.config();
            let mut cases = Vec::new();
            for (regime, t) in regimes(*n) {
                cases.extend(enum_cases(*n, t, regime.ksum_zero(), regime.sinf_mode(), &cfg)?);
            }
            write_cases(&dir, &cases, None)?;
            let rep = classify_all(*n, SweepMode::Calibrated, false)?;
            let (records, verified) = verify_and_check(&rep, cli.seed, *samples)?;
            write_json(&dir, "witnesses.json", &witnesses_json(cli.seed, &records))?;
            let demos: Vec<DemoReport> = DEMOS.iter().map(|d| run_demo(d)).collect::<Result<_, _>>()?;
            let counts = case_count_report(*n, &cfg)?;
            let v = report_json(&rep, Some(serde_json::to_value(&counts)?), Some(serde_json::to_value(&demos)?));
            write_json(&dir, "report.json", &v)?;
            let demos_ok = demos.iter().all(DemoReport::passed);
            emit(cli, &v, || {
                let mut s = sweep_text(&rep);
                s += &demos_text(&demos);
                s += &format!("{} family witnesses verified\n", records.len());
                s += &format!("wrote {}\n", dir.display());
                s
            })?;
            Ok(verified && demos_ok)
        }
    }
}

fn report_json(rep: &SweepReport, counts: Option<Value>, demos: Option<Value>) -> Value {
    let mut v = json!({ "schema": REPORT_SCHEMA, "sweep": rep });
    if rep.summary.n == 4 {
        v["pair_inventory"] = pair_inventory().map(|r| json!(r)).unwrap_or(Value::Null);
    }
    if let Some(c) = counts {
        v["counts"] = c;
    }
    if let Some(d) = demos {
        v["demos"] = d;
    }
    v
}

/// Family witnesses plus the oracle cross-check: the brute-force search must
/// rediscover a decomposition of every instantiated `f`.
fn verify_and_check(rep: &SweepReport, seed: u64, samples: usize) -> Result<(Vec<WitnessRecord>, bool), Failure> {
    let ws = verify_families(&rep.keys, seed, samples)?;
    let mut ok = true;
    let mut records = Vec::new();
    for (f, w) in &ws {
        let rec = w.record()?;
        if brute_force_decompose(f, 4)?.is_empty() {
            eprintln!("oracle found no decomposition of {}", rec.f);
            ok = false;
        }
        records.push(rec);
    }
    Ok((records, ok))
}

fn witnesses_json(seed: u64, records: &[WitnessRecord]) -> Value {
    json!({ "schema": WITNESS_SCHEMA, "seed": seed, "count": records.len(), "witnesses": records })
}

fn witnesses_text(records: &[WitnessRecord]) -> String {
    let mut s = String::new();
    for r in records {
        s += &format!("[{}] f = {}\n  g = {}\n  h = {}\n", r.provenance, r.f, r.g, r.h);
    }
    s += &format!("{} witnesses\n", records.len());
    s
}

fn sweep_text(rep: &SweepReport) -> String {
    let sm = &rep.summary;
    let mut s = format!(
        "n = {} ({}): {} cases, {} entries, {} keys\n",
        sm.n, sm.mode, sm.cases, sm.entries, sm.distinct_keys
    );
    for r in &sm.regimes {
        s += &format!("  {} t={}: {} cases, {} entries {:?}\n", r.regime.label(), r.t, r.cases, r.entries, r.by_kind);
    }
    for (reason, c) in &sm.by_reason {
        s += &format!("  {reason}: {c}\n");
    }
    s += &format!("family classes: {}\n", sm.family_classes.len());
    for k in &sm.family_classes {
        s += &format!("  {k}\n");
    }
    s
}

fn demos_text(reports: &[DemoReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s += &format!("{}: {}\n", r.name, if r.passed() { "ok" } else { "FAILED" });
        for c in &r.checks {
            s += &format!("  [{}] {}: {}\n", if c.passed { "pass" } else { "FAIL" }, c.label, c.detail);
        }
        for n in &r.notes {
            s += &format!("  note: {n}\n");
        }
    }
    s
}
