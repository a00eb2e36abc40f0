//! Command-line front end: one subcommand per module plus `verify-all`.
//!
//! Exit status: 0 on success, 1 when a check fails or a computation hits a
//! configured limit, 2 for usage errors (bad flags or unparseable values).

pub mod ledger;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use gf2bell::analysis::reciprocal_poly_normalization;
use gf2bell::chsh::{
    lhv_max, BitMap, ConditionalDistribution, CorrelationReport, LocalStrategy, MeasurementSettings,
};
use gf2bell::gf2poly::{build_table, format_factors, ExtField, FactorReport, Gf2Poly, OpKind};
use gf2bell::levin::{
    is_involution, permutation_matrix, sibling_stats, truth_table_with, LengthPreservingF, ProductMode,
    GRAY_ORDER_2Q,
};
use gf2bell::poset::{alice_bob_csv, alice_bob_pairs, export_dot, hasse_edges};
use gf2bell::qsim::{
    bell_state, entanglement_entropy, measure_distribution, reduced_density, BellState, CircuitReport,
};
use gf2bell::reference::{diff_table, known_typos, printed_gf8_table, CellDiff};
use gf2bell::satcheck::{brute_force_sat, expand_contradiction, CnfFormula};
use gf2bell::{Caps, Error};
use serde::Serialize;
use serde_json::json;

pub use ledger::{verify_all, LedgerEntry, Status, VerificationLedger};

#[derive(Debug, Parser)]
#[command(name = "gf2bell", version, about = "Exhaustive checks over GF(2^n), Levin's permutation, Bell circuits and CHSH")]
pub struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,

    /// key=value file overriding enumeration caps.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableOp {
    And,
    Xor,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Controlled,
    And,
    Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoxKind {
    Pr,
    Uniform,
    Deterministic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cayley tables of GF(2^n); for the default modulus, diffed against the printed tables.
    Tables {
        #[arg(long, value_enum, default_value = "both")]
        op: TableOp,
        /// Irreducible modulus, e.g. "x^4+x+1".
        #[arg(long, default_value = "x^3+x+1")]
        modulus: String,
        /// CSV instead of aligned text.
        #[arg(long)]
        csv: bool,
    },
    /// Truth table (CSV) or permutation matrix of g for width n.
    Permute {
        #[arg(short, long, default_value_t = 1)]
        n: u32,
        /// identity or not
        #[arg(short, long, default_value = "identity")]
        f: String,
        #[arg(long, value_enum, default_value = "controlled")]
        mode: Mode,
        /// Print the permutation matrix instead of the truth table.
        #[arg(long)]
        matrix: bool,
        /// Present the two-qubit matrix in the order |00>,|01>,|11>,|10>.
        #[arg(long, requires = "matrix")]
        gray: bool,
    },
    /// Bell circuit outputs, marginals and entanglement.
    Bell {
        /// phi+, phi-, psi+, psi- or all
        #[arg(long, default_value = "all")]
        state: String,
    },
    /// CHSH correlation report for a Bell state or a box.
    Chsh {
        /// phi+, phi-, psi+ or psi- (default phi+)
        #[arg(long)]
        state: Option<String>,
        /// a,a',b,b' in degrees
        #[arg(long, default_value = "0,90,45,-45", allow_hyphen_values = true)]
        angles: String,
        /// Report a box instead of a quantum state.
        #[arg(long = "box", value_enum, conflicts_with = "state")]
        box_kind: Option<BoxKind>,
    },
    /// Factor a polynomial over GF(2).
    Factor { poly: String },
    /// Expand the n-variable contradiction or read DIMACS, then solve.
    Sat {
        #[arg(long, conflicts_with = "file")]
        expand: Option<u32>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Drop clause k (0-based) before solving.
        #[arg(long)]
        delete: Option<usize>,
        /// Print the formula in DIMACS instead of solving it.
        #[arg(long)]
        dimacs: bool,
    },
    /// Complement-pair table (CSV) or Hasse diagram (DOT).
    Poset {
        #[arg(long)]
        dot: bool,
    },
    /// Normalization of 1/(x^2+x+1) by Simpson quadrature plus tail bounds.
    Cauchy {
        #[arg(long, default_value_t = 1e4)]
        t: f64,
        #[arg(long, default_value_t = 1_000_000)]
        steps: usize,
    },
    /// Replay every claim and print the ledger.
    VerifyAll,
}

/// Output settings resolved from the environment by the binary.
#[derive(Debug, Clone, Copy, Default)]
pub struct Output {
    pub color: bool,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            Error::Resource { .. } | Error::Evaluation(_) => Failure::Check(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Check(format!("i/o error: {e}"))
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, opts: Output) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = if opts.color { e.render().ansi().to_string() } else { e.render().to_string() };
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out, opts) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn load_caps(path: Option<&PathBuf>) -> std::result::Result<Caps, Failure> {
    match path {
        None => Ok(Caps::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            Ok(Caps::from_config_str(&text)?)
        }
    }
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write, opts: Output) -> Outcome {
    let caps = load_caps(cli.config.as_ref())?;
    match &cli.command {
        Command::Tables { op, modulus, csv } => tables(out, cli.json, &caps, *op, modulus, *csv),
        Command::Permute { n, f, mode, matrix, gray } => permute(out, cli.json, &caps, *n, f, *mode, *matrix, *gray),
        Command::Bell { state } => bell(out, cli.json, state),
        Command::Chsh { state, angles, box_kind } => chsh(out, cli.json, state.as_deref(), angles, *box_kind),
        Command::Factor { poly } => factor_cmd(out, cli.json, poly),
        Command::Sat { expand, file, delete, dimacs } => {
            sat(out, cli.json, &caps, *expand, file.as_ref(), *delete, *dimacs)
        }
        Command::Poset { dot } => poset(out, cli.json, *dot),
        Command::Cauchy { t, steps } => cauchy(out, cli.json, *t, *steps),
        Command::VerifyAll => {
            let ledger = verify_all(&caps);
            if cli.json {
                emit_json(out, &ledger)?;
            } else {
                write!(out, "{}", ledger.to_table(opts.color))?;
            }
            Ok(ledger.all_pass())
        }
    }
}

#[derive(Serialize)]
struct DiffRow {
    op: &'static str,
    #[serde(flatten)]
    cell: CellDiff,
    status: Status,
}

fn tables(out: &mut dyn Write, json: bool, caps: &Caps, op: TableOp, modulus: &str, csv: bool) -> Outcome {
    let field = ExtField::new(modulus.parse()?)?;
    let kinds: &[OpKind] = match op {
        TableOp::And => &[OpKind::Multiply],
        TableOp::Xor => &[OpKind::Add],
        TableOp::Both => &[OpKind::Multiply, OpKind::Add],
    };
    let typos = known_typos();
    let mut diffs = Vec::new();
    let mut tables = Vec::new();
    for &kind in kinds {
        let table = build_table(&field, kind, caps)?;
        if field == ExtField::gf8() {
            for cell in diff_table(&table, &printed_gf8_table(kind))? {
                let known = typos.iter().any(|t| t.kind == kind && (t.row, t.col) == (cell.row, cell.col));
                let status = if known { Status::KnownTypo } else { Status::Fail };
                diffs.push(DiffRow { op: kind.symbol(), cell, status });
            }
        }
        tables.push(table);
    }
    let ok = diffs.iter().all(|d| d.status != Status::Fail);
    if json {
        let rendered: Vec<_> = tables
            .iter()
            .map(|t| {
                let rows: Vec<Vec<String>> = field
                    .elements()
                    .map(|r| t.row(r).iter().map(ToString::to_string).collect())
                    .collect();
                json!({ "op": t.kind().symbol(), "modulus": field.modulus(), "rows": rows })
            })
            .collect();
        emit_json(out, &json!({ "tables": rendered, "diff": diffs }))?;
        return Ok(ok);
    }
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        write!(out, "{}", if csv { t.to_csv() } else { t.to_text() })?;
    }
    if field == ExtField::gf8() {
        writeln!(out)?;
        if diffs.is_empty() {
            writeln!(out, "printed table matches on every cell")?;
        }
        for d in &diffs {
            writeln!(
                out,
                "{} {} row {} col {}: printed {}, computed {}",
                d.status.as_str(),
                d.op,
                d.cell.row.to_label(3),
                d.cell.col.to_label(3),
                d.cell.printed,
                d.cell.computed
            )?;
        }
    }
    Ok(ok)
}

#[allow(clippy::too_many_arguments)]
fn permute(
    out: &mut dyn Write,
    json: bool,
    caps: &Caps,
    n: u32,
    f: &str,
    mode: Mode,
    matrix: bool,
    gray: bool,
) -> Outcome {
    let f: LengthPreservingF = f.parse()?;
    let mode = match mode {
        Mode::Controlled => ProductMode::Controlled,
        Mode::And => ProductMode::BitwiseAnd,
        Mode::Field => ProductMode::Field(field_of_degree(n)?),
    };
    let table = truth_table_with(&f, n, mode, caps)?;
    let stats = sibling_stats(&table);
    if matrix {
        let mut m = permutation_matrix(&table)?;
        if gray {
            if n != 1 {
                return Err(Failure::Usage("--gray applies to n = 1 only".into()));
            }
            m = m.reordered(&GRAY_ORDER_2Q)?;
        }
        if json {
            let rows = m.rows();
            emit_json(out, &json!({ "matrix": rows, "involution": is_involution(&m), "orthogonal": m.is_orthogonal() }))?;
        } else {
            writeln!(out, "{}", m.to_json())?;
        }
        return Ok(true);
    }
    if json {
        let rows: Vec<_> = table
            .rows()
            .map(|(a, x, a2, x2)| json!({ "a": a.to_string(), "x": x.to_string(), "a'": a2.to_string(), "x'": x2.to_string() }))
            .collect();
        emit_json(out, &json!({ "f": f.name(), "n": n, "rows": rows, "bijective": table.is_bijective(), "siblings": stats }))?;
    } else {
        write!(out, "{}", table.to_csv())?;
    }
    Ok(true)
}

/// The first irreducible of degree `n` (lowest bit pattern).
fn field_of_degree(n: u32) -> std::result::Result<ExtField, Failure> {
    Gf2Poly::of_degree(n)
        .find_map(|p| ExtField::new(p).ok())
        .ok_or_else(|| Failure::Usage(format!("no field of degree {n}")))
}

fn bell(out: &mut dyn Write, json: bool, state: &str) -> Outcome {
    let states = if state.eq_ignore_ascii_case("all") {
        BellState::ALL.to_vec()
    } else {
        vec![BellState::parse(state)?]
    };
    let mut reports = Vec::new();
    for b in states {
        let (x, mode) = b.circuit_input();
        let s = bell_state(x, mode);
        let entropy = entanglement_entropy(&reduced_density(&s, &[0])?);
        let m0 = measure_distribution(&s, &[0])?;
        let m1 = measure_distribution(&s, &[1])?;
        let error = s.max_amplitude_error(&b.ideal())?;
        if json {
            reports.push(json!({
                "state": b.name(),
                "input_x": x,
                "target_mode": mode,
                "circuit": CircuitReport::from(&s),
                "marginals": [m0.probabilities, m1.probabilities],
                "entropy_bits": entropy,
                "max_amplitude_error": error,
            }));
        } else {
            writeln!(out, "{:<5} {}", b.name(), s.to_dirac())?;
            writeln!(
                out,
                "      marginals q0 {:?} q1 {:?}  entropy {entropy:.12} bits  error {error:.1e}",
                m0.probabilities, m1.probabilities
            )?;
        }
    }
    if json {
        emit_json(out, &reports)?;
    }
    Ok(true)
}

fn parse_angles(text: &str) -> std::result::Result<MeasurementSettings, Failure> {
    let v: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("bad angle list {text:?}: {e}")))?;
    match v[..] {
        [a, a2, b, b2] => Ok(MeasurementSettings::from_degrees(a, a2, b, b2)?),
        _ => Err(Failure::Usage(format!("expected 4 angles, got {}", v.len()))),
    }
}

fn chsh(out: &mut dyn Write, json: bool, state: Option<&str>, angles: &str, kind: Option<BoxKind>) -> Outcome {
    let report = match (state, kind) {
        (_, Some(kind)) => {
            let (name, d) = match kind {
                BoxKind::Pr => ("pr", ConditionalDistribution::pr_box()),
                BoxKind::Uniform => ("uniform", ConditionalDistribution::uniform()),
                BoxKind::Deterministic => {
                    let best = LocalStrategy { alice: BitMap::Zero, bob: BitMap::Zero };
                    ("deterministic", ConditionalDistribution::local(best))
                }
            };
            CorrelationReport::for_box(name, &d)?
        }
        (state, None) => {
            let b = BellState::parse(state.unwrap_or("phi+"))?;
            CorrelationReport::for_state(b.name(), &b.ideal(), &parse_angles(angles)?)?
        }
    };
    if json {
        emit_json(out, &json!({ "report": report, "lhv_max": lhv_max() }))?;
    } else {
        write!(out, "{}", report.to_table())?;
    }
    Ok(true)
}

fn factor_cmd(out: &mut dyn Write, json: bool, poly: &str) -> Outcome {
    let report = FactorReport::new(poly.parse()?)?;
    if json {
        emit_json(out, &report)?;
    } else {
        writeln!(out, "{}", format_factors(&report.factors))?;
    }
    Ok(true)
}

fn sat(
    out: &mut dyn Write,
    json: bool,
    caps: &Caps,
    expand: Option<u32>,
    file: Option<&PathBuf>,
    delete: Option<usize>,
    dimacs: bool,
) -> Outcome {
    let mut f = match (expand, file) {
        (Some(n), _) => expand_contradiction(n)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            CnfFormula::parse_dimacs(&text)?
        }
        (None, None) => expand_contradiction(3)?,
    };
    if let Some(k) = delete {
        if k >= f.clauses().len() {
            return Err(Failure::Usage(format!("clause {k} out of range 0..{}", f.clauses().len())));
        }
        f = f.without_clause(k);
    }
    if dimacs {
        write!(out, "{}", f.to_dimacs())?;
        return Ok(true);
    }
    let outcome = brute_force_sat(&f, caps)?;
    if json {
        emit_json(out, &json!({ "formula": f.to_string(), "variables": f.variable_count(), "clauses": f.clauses().len(), "outcome": outcome }))?;
    } else {
        writeln!(out, "c {f}")?;
        match &outcome.witness {
            None => writeln!(out, "s UNSATISFIABLE")?,
            Some(w) => {
                writeln!(out, "s SATISFIABLE")?;
                let lits: Vec<String> = w
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| if b { format!("{}", i + 1) } else { format!("-{}", i + 1) })
                    .collect();
                writeln!(out, "v {} 0", lits.join(" "))?;
            }
        }
    }
    Ok(true)
}

fn poset(out: &mut dyn Write, json: bool, dot: bool) -> Outcome {
    if dot {
        write!(out, "{}", export_dot(&hasse_edges()))?;
    } else if json {
        let d = hasse_edges();
        let edges: Vec<_> = d.edges.iter().map(|(l, u)| [l.label(), u.label()]).collect();
        emit_json(out, &json!({ "pairs": alice_bob_pairs(), "hasse_edges": edges }))?;
    } else {
        write!(out, "{}", alice_bob_csv(&alice_bob_pairs()))?;
    }
    Ok(true)
}

fn cauchy(out: &mut dyn Write, json: bool, t: f64, steps: usize) -> Outcome {
    let r = reciprocal_poly_normalization(t, steps)?;
    if json {
        emit_json(out, &r)?;
    } else {
        writeln!(out, "T          {}", r.t)?;
        writeln!(out, "steps      {}", r.steps)?;
        writeln!(out, "integral   {:.10}", r.integral)?;
        writeln!(out, "N          {:.10}", r.n)?;
        writeln!(out, "normalized {:.10}", r.normalized)?;
        writeln!(out, "half-line  {:.10} (N/2 = {:.10})", r.lower_half, r.n / 2.0)?;
    }
    Ok(true)
}
