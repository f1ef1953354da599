// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. [`run`] takes the argument list and output
//! streams so it can be driven in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{corpus_files, default_corpus_dir, CORPUS_ENV};
use crate::engine::{simulate_exhaustive_packed, SimLimits, DEFAULT_MAX_FREE_INPUTS};
use crate::faultlab::reference::side_by_side;
use crate::faultlab::report::{analyze_circuit, AnalysisOptions, ImplicationRecord, PlacementRecord};
use crate::faultlab::{build_report, BenchmarkReport, CircuitReport};
use crate::implications::{discover_artificial, discover_natural_scoped, GateLibrary, SiteScope};
use crate::netlist::{load_real, Circuit, Gate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

/// Seed used by `bench` when none is given.
pub const DEFAULT_BENCH_SEED: u64 = 0x5EED_2008;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "revfault", version, about = "Fault analysis of reversible circuits through logic implications")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Largest number of free inputs simulated exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_FREE_INPUTS, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=40))]
    pub max_inputs: usize,
    /// Worker threads; 0 uses every core. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Gate templates tried by the artificial search, comma separated.
    #[arg(long, global = true, default_value = "cnot,t3,f3,p3,fd3")]
    pub gates: GateLibrary,
    /// Implication sites: all-pairs or same-wire.
    #[arg(long, global = true, default_value = "all-pairs")]
    pub sites: SiteScope,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a netlist and print its dimensions.
    Validate { path: PathBuf },
    /// Print the exhaustive truth table.
    Truth { path: PathBuf },
    /// List natural and/or artificial implications.
    Implications {
        path: PathBuf,
        /// Only implications of the unmodified circuit.
        #[arg(long, conflicts_with_all = ["artificial", "all"])]
        natural: bool,
        /// Only implications created by appending a gate on garbage lines.
        #[arg(long, conflicts_with = "all")]
        artificial: bool,
        /// Both kinds (the default).
        #[arg(long)]
        all: bool,
    },
    /// Score implications against the stuck-at fault universe.
    Impact {
        path: PathBuf,
        /// Implication ID as printed by `implications`.
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        implication: Option<String>,
        /// Score every natural and artificial implication.
        #[arg(long)]
        all: bool,
    },
    /// Analyze a corpus directory and write tables1.csv, tables2.csv and
    /// report.json.
    Report {
        /// Corpus directory; defaults to the bundled corpus or $REVFAULT_CORPUS.
        dir: Option<PathBuf>,
        /// Where to write the report files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Time exhaustive simulation of a random Toffoli cascade.
    Bench {
        /// Number of wires, all free.
        #[arg(long, default_value_t = 10, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=30))]
        wires: usize,
        /// Number of gates.
        #[arg(long, default_value_t = 50)]
        gate_count: usize,
        /// Generator seed.
        #[arg(long, default_value_t = DEFAULT_BENCH_SEED)]
        seed: u64,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_INVALID, message: e.to_string() }
    }

    fn usage(e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::invalid(e)
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.workers).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    // commands write to a buffer so the sweep can run on the pool's threads
    let mut buf = Vec::new();
    let result = pool.install(|| dispatch(&cli, &mut buf));
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Validate { path } => cmd_validate(g, path, out),
        Command::Truth { path } => cmd_truth(g, path, out),
        Command::Implications { path, natural, artificial, all: _ } => {
            let (nat, art) = match (natural, artificial) {
                (true, _) => (true, false),
                (_, true) => (false, true),
                _ => (true, true),
            };
            cmd_implications(g, path, nat, art, out)
        }
        Command::Impact { path, implication, all: _ } => cmd_impact(g, path, implication.as_deref(), out),
        Command::Report { dir, out: out_dir } => cmd_report(g, dir.as_deref(), out_dir, out),
        Command::Bench { wires, gate_count, seed } => cmd_bench(g, *wires, *gate_count, *seed, out),
    }
}

fn limits(g: &GlobalOpts) -> SimLimits {
    SimLimits::with_max_free_inputs(g.max_inputs)
}

fn options(g: &GlobalOpts) -> AnalysisOptions {
    AnalysisOptions { limits: limits(g), library: g.gates.clone(), scope: g.sites }
}

fn load(path: &Path) -> Result<Circuit, Failure> {
    load_real(path).map_err(Failure::invalid)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("value serializes"))
}

#[derive(Serialize)]
struct ValidateOut<'a> {
    circuit: &'a str,
    gates: usize,
    wires: usize,
    garbage: usize,
    free_inputs: usize,
}

fn cmd_validate(g: &GlobalOpts, path: &Path, out: &mut dyn Write) -> Outcome {
    let c = load(path)?;
    let v = ValidateOut {
        circuit: c.name(),
        gates: c.num_gates(),
        wires: c.num_wires(),
        garbage: c.num_garbage(),
        free_inputs: c.num_free_inputs(),
    };
    match g.format {
        Format::Text => writeln!(
            out,
            "{}: gates={} wires={} garbage={} free_inputs={}",
            v.circuit, v.gates, v.wires, v.garbage, v.free_inputs
        )?,
        Format::Json => json_line(out, &v)?,
        Format::Csv => write!(
            out,
            "{}",
            csv_string(
                &["circuit", "gates", "wires", "garbage", "free_inputs"],
                [vec![
                    v.circuit.to_string(),
                    v.gates.to_string(),
                    v.wires.to_string(),
                    v.garbage.to_string(),
                    v.free_inputs.to_string()
                ]]
            )
        )?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TruthOut {
    labels: Vec<String>,
    free_wires: Vec<usize>,
    rows: Vec<TruthRow>,
}

#[derive(Serialize)]
struct TruthRow {
    input: String,
    output: String,
}

fn cmd_truth(g: &GlobalOpts, path: &Path, out: &mut dyn Write) -> Outcome {
    let c = load(path)?;
    let t = simulate_exhaustive_packed(&c, &limits(g)).map_err(Failure::invalid)?;
    match g.format {
        Format::Text => write!(out, "{}", t.dump(c.wire_labels()))?,
        Format::Json => json_line(
            out,
            &TruthOut {
                labels: c.wire_labels().to_vec(),
                free_wires: t.free_wires().to_vec(),
                rows: t.iter_rows().map(|(i, o)| TruthRow { input: i.to_string(), output: o.to_string() }).collect(),
            },
        )?,
        Format::Csv => write!(
            out,
            "{}",
            csv_string(&["input", "output"], t.iter_rows().map(|(i, o)| vec![i.to_string(), o.to_string()]))
        )?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Listed {
    origin: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    placement: Option<PlacementRecord>,
    notation: String,
    implication: ImplicationRecord,
}

fn cmd_implications(g: &GlobalOpts, path: &Path, natural: bool, artificial: bool, out: &mut dyn Write) -> Outcome {
    let c = load(path)?;
    let t = simulate_exhaustive_packed(&c, &limits(g)).map_err(Failure::invalid)?;
    let mut listed = Vec::new();
    if natural {
        for i in discover_natural_scoped(&t, &c, g.sites) {
            listed.push(Listed {
                origin: "natural",
                placement: None,
                notation: i.notation(&c),
                implication: ImplicationRecord::new(&c, &i, None),
            });
        }
    }
    if artificial {
        for f in discover_artificial(&c, &t, &g.gates, g.sites) {
            let p = &f.placement;
            for i in &f.new_implications {
                listed.push(Listed {
                    origin: "artificial",
                    placement: Some(PlacementRecord {
                        gate: p.describe(&c),
                        template: p.template,
                        wires: p.wires.clone(),
                    }),
                    notation: i.notation(&c),
                    implication: ImplicationRecord::new(&c, i, Some(p)),
                });
            }
        }
    }
    match g.format {
        Format::Text => {
            if listed.is_empty() {
                writeln!(out, "no implications")?;
            }
            for l in &listed {
                match &l.placement {
                    None => writeln!(out, "{} natural {}", l.implication.id, l.notation)?,
                    Some(p) => writeln!(out, "{} artificial [{}] {}", l.implication.id, p.gate, l.notation)?,
                }
            }
        }
        Format::Json => json_line(out, &listed)?,
        Format::Csv => write!(
            out,
            "{}",
            csv_string(
                &["origin", "id", "placement", "implication"],
                listed.iter().map(|l| {
                    vec![
                        l.origin.to_string(),
                        l.implication.id.clone(),
                        l.placement.as_ref().map_or(String::new(), |p| p.gate.clone()),
                        l.implication.text.clone(),
                    ]
                })
            )
        )?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ImpactOut<'a> {
    origin: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    placement: Option<&'a PlacementRecord>,
    implication: &'a ImplicationRecord,
    impact: &'a crate::faultlab::report::ImpactRecord,
}

fn impact_rows(r: &CircuitReport) -> Vec<ImpactOut<'_>> {
    let nat = r.natural.iter().map(|e| ImpactOut {
        origin: "natural",
        placement: None,
        implication: &e.implication,
        impact: &e.impact,
    });
    let art = r.artificial.iter().map(|e| ImpactOut {
        origin: "artificial",
        placement: Some(&e.placement),
        implication: &e.implication,
        impact: &e.impact,
    });
    nat.chain(art).collect()
}

fn cmd_impact(g: &GlobalOpts, path: &Path, id: Option<&str>, out: &mut dyn Write) -> Outcome {
    let c = load(path)?;
    let report = analyze_circuit(&c, &options(g)).map_err(Failure::invalid)?;
    let mut rows = impact_rows(&report);
    if let Some(id) = id {
        let valid: Vec<String> = rows.iter().map(|r| r.implication.id.clone()).collect();
        rows.retain(|r| r.implication.id == id);
        if rows.is_empty() {
            let list = if valid.is_empty() { "none".to_string() } else { valid.join(", ") };
            return Err(Failure::usage(format!("unknown implication ID `{id}`; valid IDs: {list}")));
        }
    }
    match g.format {
        Format::Text => {
            if rows.is_empty() {
                writeln!(out, "no implications")?;
            }
            for r in &rows {
                let place = r.placement.map_or(String::new(), |p| format!(" [{}]", p.gate));
                writeln!(
                    out,
                    "{} {}{} {} detected={} missed={} impact={}%",
                    r.implication.id,
                    r.origin,
                    place,
                    r.implication.text,
                    r.impact.error_detected,
                    r.impact.error_missed,
                    r.impact.impact_text
                )?;
            }
        }
        Format::Json => json_line(out, &rows)?,
        Format::Csv => write!(
            out,
            "{}",
            csv_string(
                &["origin", "id", "placement", "implication", "error_detected", "error_missed", "impact"],
                rows.iter().map(|r| {
                    vec![
                        r.origin.to_string(),
                        r.implication.id.clone(),
                        r.placement.map_or(String::new(), |p| p.gate.clone()),
                        r.implication.text.clone(),
                        r.impact.error_detected.to_string(),
                        r.impact.error_missed.to_string(),
                        r.impact.impact_text.clone(),
                    ]
                })
            )
        )?,
    }
    Ok(EXIT_OK)
}

fn cmd_report(g: &GlobalOpts, dir: Option<&Path>, out_dir: &Path, out: &mut dyn Write) -> Outcome {
    let dir = dir.map_or_else(default_corpus_dir, Path::to_path_buf);
    let files = corpus_files(&dir).map_err(|e| Failure::invalid(format!("{e} (corpus location: set {CORPUS_ENV})")))?;
    let report: BenchmarkReport = build_report(&files, &options(g));
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join("tables1.csv"), report.tables1_csv())?;
    std::fs::write(out_dir.join("tables2.csv"), report.tables2_csv())?;
    std::fs::write(out_dir.join("report.json"), report.to_json() + "\n")?;
    match g.format {
        Format::Text => {
            write!(out, "{}", side_by_side(&report))?;
            for r in report.rows.iter().filter(|r| r.is_failed()) {
                writeln!(out, "{}: failed: {}", r.circuit, r.error.as_deref().unwrap_or_default())?;
            }
        }
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => write!(out, "{}", report.tables2_csv())?,
    }
    Ok(if report.failures() > 0 { EXIT_PARTIAL } else { EXIT_OK })
}

/// Random cascade of NOT, CNOT and 3-wire Toffoli gates.
pub fn random_circuit(wires: usize, gates: usize, seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let list = (0..gates)
        .map(|_| {
            let target = rng.gen_range(0..wires);
            let mut others: Vec<usize> = (0..wires).filter(|&w| w != target).collect();
            let n = rng.gen_range(0..=others.len().min(2));
            let mut controls = Vec::with_capacity(n);
            for _ in 0..n {
                controls.push(others.swap_remove(rng.gen_range(0..others.len())));
            }
            Gate::toffoli(controls, target)
        })
        .collect();
    Circuit::with_default_labels(wires, list).expect("generated gates are well formed").named("bench")
}

#[derive(Serialize)]
struct BenchOut {
    wires: usize,
    gates: usize,
    seed: u64,
    vectors: usize,
    sim_ms: f64,
}

fn cmd_bench(g: &GlobalOpts, wires: usize, gates: usize, seed: u64, out: &mut dyn Write) -> Outcome {
    let c = random_circuit(wires, gates, seed);
    let start = Instant::now();
    let t = simulate_exhaustive_packed(&c, &limits(g)).map_err(Failure::invalid)?;
    let sim_ms = start.elapsed().as_secs_f64() * 1000.0;
    let b = BenchOut { wires, gates, seed, vectors: t.rows(), sim_ms };
    match g.format {
        Format::Text => writeln!(
            out,
            "wires={} gates={} seed={} vectors={} sim_ms={:.3}",
            b.wires, b.gates, b.seed, b.vectors, b.sim_ms
        )?,
        Format::Json => json_line(out, &b)?,
        Format::Csv => write!(
            out,
            "{}",
            csv_string(
                &["wires", "gates", "seed", "vectors", "sim_ms"],
                [vec![
                    b.wires.to_string(),
                    b.gates.to_string(),
                    b.seed.to_string(),
                    b.vectors.to_string(),
                    format!("{:.3}", b.sim_ms)
                ]]
            )
        )?,
    }
    Ok(EXIT_OK)
}
