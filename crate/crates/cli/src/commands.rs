use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use cutpoint::analysis::{chomsky_classify, chomsky_classify_gfa, density_report, separate, ChomskyVerdict};
use cutpoint::automata::{Automaton, Machine, RunState};
use cutpoint::constructions::{
    build_1state, classify_2state, decompose_1state, exclusive_to_zero, modn_mcqfa, px, rotation, Direction,
    OneStateGfaSpec, OneStateMode, PythTriple, RotationModel,
};
use cutpoint::exactmath::rational as q;
use cutpoint::exactmath::{BigRational, Field, Scalar};
use cutpoint::langsem::{bits_to_string, enum_unary, CutpointMode, CutpointSpec};
use serde_json::{json, Value};

use crate::descriptor_doc::{parse_chomsky_input, parse_descriptor, serialize_descriptor, ChomskyInput};
use crate::document::{parse_automaton, scalar_json, serialize_automaton, to_document};
use crate::error::CliError;
use crate::verify::{verify_with, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "cutpoint",
    version,
    about = "Cutpoint languages of generalized, probabilistic and quantum finite automata"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Accepting value of one word
    Eval {
        file: PathBuf,
        #[arg(long, conflicts_with = "length", required_unless_present = "length")]
        word: Option<String>,
        /// Evaluate a^N on a unary automaton
        #[arg(long)]
        length: Option<usize>,
        /// Also print the state after each symbol
        #[arg(long)]
        trace: bool,
    },
    /// Membership bits of a^0 .. a^N
    Enum {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        cutpoint: String,
        #[arg(long, default_value = "strict", value_parser = ["strict", "inclusive", "exclusive"])]
        mode: String,
        #[arg(long)]
        max: usize,
        /// Tolerance for inclusive/exclusive tests on binary64 values
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Values of a^0 .. a^N as CSV
    Csv {
        file: PathBuf,
        #[arg(long)]
        max: usize,
    },
    /// Write a standard automaton as a document
    #[command(subcommand)]
    Construct(Construct),
    /// Transform an automaton
    #[command(subcommand)]
    Transform(Transform),
    /// Name the strict cutpoint language of a 2-state unary PFA
    #[command(name = "classify-2pfa")]
    Classify2Pfa {
        file: PathBuf,
        #[arg(long)]
        cutpoint: String,
    },
    /// Describe the language of a 1-state GFA
    #[command(name = "decompose-1gfa")]
    Decompose1Gfa {
        /// Transition numbers, for example a=1/2,b=2
        #[arg(long, allow_hyphen_values = true)]
        numbers: String,
        #[arg(long, allow_hyphen_values = true)]
        cutpoint: String,
        #[arg(long, default_value = "gt", value_parser = ["lt", "gt"])]
        direction: String,
        /// Accept when the value equals the cutpoint
        #[arg(long)]
        inclusive: bool,
    },
    /// Build a 1-state GFA for a descriptor
    #[command(name = "build-1gfa")]
    Build1Gfa { descfile: PathBuf },
    /// Regular / context-free verdict for a solution language
    Chomsky {
        #[arg(required_unless_present = "numbers")]
        descfile: Option<PathBuf>,
        #[arg(long, conflicts_with = "descfile", requires = "cutpoint", allow_hyphen_values = true)]
        numbers: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        cutpoint: Option<String>,
        #[arg(long, default_value = "gt", value_parser = ["lt", "gt"])]
        direction: String,
    },
    /// Least length on which two unary cutpoint languages differ
    Separate {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        cutpoint_a: String,
        #[arg(long, allow_hyphen_values = true)]
        cutpoint_b: String,
        #[arg(long, default_value = "strict", value_parser = ["strict", "inclusive", "exclusive"])]
        mode_a: String,
        #[arg(long, default_value = "strict", value_parser = ["strict", "inclusive", "exclusive"])]
        mode_b: String,
        #[arg(long)]
        max: usize,
    },
    /// First hits of cos(k theta) in equal bins of [-1, 1]
    Density {
        #[arg(long)]
        triple: String,
        #[arg(long)]
        bins: usize,
        #[arg(long)]
        max: u64,
    },
    /// Re-run the acceptance checks
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Parse and validate a document
    Validate { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Rotation by the angle of a Pythagorean triple
    Rotation {
        /// Generator pair M,N with M > N > 0
        #[arg(long)]
        triple: String,
        #[arg(long, default_value = "gfa", value_parser = ["gfa", "mcqfa"])]
        model: String,
    },
    /// The 3-state PFA P_x, 0 < x <= 1/2
    Px {
        #[arg(long)]
        x: String,
    },
    /// 2-state MCQFA rotating by pi / n
    Modn {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Transform {
    /// MCQFA accepting with positive probability exactly where the value
    /// differs from the cutpoint
    #[command(name = "exclusive-to-zero")]
    ExclusiveToZero {
        file: PathBuf,
        #[arg(long)]
        cutpoint: String,
    },
}

/// A finished command: text and JSON renderings plus the exit code.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub exit_code: i32,
    pub notes: Vec<String>,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Self {
            text: text.into(),
            json,
            exit_code: 0,
            notes: Vec::new(),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Automaton, CliError> {
    parse_automaton(&read(path)?)
}

fn rational(s: &str) -> Result<BigRational, CliError> {
    q::parse(s).map_err(|_| CliError::Usage(format!("`{s}` is not a rational number")))
}

fn cutpoint(value: &str, mode: &str) -> Result<CutpointSpec, CliError> {
    let mode = CutpointMode::from_str(mode).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(CutpointSpec::new(Scalar::ExactReal(rational(value)?), mode))
}

fn triple(s: &str) -> Result<PythTriple, CliError> {
    let parts: Vec<u64> = s
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("triple must be M,N, got `{s}`")))?;
    match parts.as_slice() {
        [m, n] => Ok(PythTriple::new(*m, *n)?),
        _ => Err(CliError::Usage(format!("triple must be M,N, got `{s}`"))),
    }
}

/// `a=1/2,b=-2` into letters and numbers.
fn numbers(s: &str) -> Result<(Vec<char>, Vec<BigRational>), CliError> {
    let mut letters = Vec::new();
    let mut values = Vec::new();
    for part in s.split(',') {
        let (l, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected letter=value, got `{part}`")))?;
        let mut chars = l.trim().chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => letters.push(c),
            _ => return Err(CliError::Usage(format!("`{l}` is not a single letter"))),
        }
        values.push(rational(v)?);
    }
    Ok((letters, values))
}

fn one_state_spec(nums: &str, cut: &str, direction: &str, inclusive: bool) -> Result<OneStateGfaSpec, CliError> {
    let (letters, values) = numbers(nums)?;
    let mode = if inclusive { OneStateMode::Inclusive } else { OneStateMode::Strict };
    Ok(OneStateGfaSpec::new(letters, values, rational(cut)?, Direction::from_str(direction)?, mode)?)
}

fn state_json(s: &RunState) -> Value {
    let rows: Vec<Value> = s
        .matrix()
        .to_rows()
        .iter()
        .map(|row| Value::Array(row.iter().map(scalar_json).collect()))
        .collect();
    match s {
        RunState::Vector(_) => json!({ "vector": rows.into_iter().map(|r| r[0].clone()).collect::<Vec<_>>() }),
        RunState::Density(_) => json!({ "density": rows }),
    }
}

fn value_text(v: &Scalar) -> String {
    if v.is_exact() {
        format!("{v} ({:?})", v.to_f64())
    } else {
        format!("{v}")
    }
}

fn eval(file: &Path, word: Option<String>, length: Option<usize>, trace: bool) -> Result<Report, CliError> {
    let aut = load(file)?;
    let word = match (word, length) {
        (Some(w), _) => w,
        (None, Some(n)) => aut.unary_word(n)?,
        (None, None) => return Err(CliError::Usage("give --word or --length".into())),
    };
    let v = aut.value(&word)?;
    let shown = if word.is_empty() { "eps".to_string() } else { word.clone() };
    let mut text = format!("f({shown}) = {}\n", value_text(&v));
    let mut out = json!({ "word": word, "value": scalar_json(&v), "value_float": v.to_f64() });
    if trace {
        let states = aut.trace_run(&word)?;
        for (i, s) in states.iter().enumerate() {
            text.push_str(&format!("{i}: {}\n", s.matrix()));
        }
        out["trace"] = Value::Array(states.iter().map(state_json).collect());
    }
    Ok(Report::ok(text, out))
}

fn enumerate(file: &Path, cut: &str, mode: &str, max: usize, epsilon: Option<f64>) -> Result<Report, CliError> {
    let aut = load(file)?;
    let mut cp = cutpoint(cut, mode)?;
    if let Some(e) = epsilon {
        cp = cp.with_epsilon(e);
    }
    let bits = bits_to_string(&enum_unary(&aut, &cp, max)?);
    let out = json!({ "cutpoint": cp.value.to_string(), "mode": mode, "max": max, "bits": bits });
    Ok(Report::ok(format!("{bits}\n"), out))
}

/// Writes the header and one row per `m = 0..=n`; returns the row count.
pub fn emit_csv(aut: &Automaton, n: usize, sink: &mut dyn Write) -> Result<usize, CliError> {
    if !aut.is_unary() {
        return Err(CliError::Usage(format!(
            "csv needs a unary automaton, alphabet has {} symbols",
            aut.alphabet().len()
        )));
    }
    writeln!(sink, "m,value_exact,value_float")?;
    let values = aut.unary_values(n)?;
    for (m, v) in values.iter().enumerate() {
        let exact = v.as_exact_real().map(|r| r.to_string()).unwrap_or_default();
        writeln!(sink, "{m},{exact},{:?}", v.to_f64())?;
    }
    Ok(values.len())
}

fn csv(file: &Path, max: usize) -> Result<Report, CliError> {
    let aut = load(file)?;
    let mut buf = Vec::new();
    let rows = emit_csv(&aut, max, &mut buf)?;
    let text = String::from_utf8(buf).expect("csv output is UTF-8");
    let out = json!({ "rows": rows, "csv": text });
    Ok(Report::ok(text, out))
}

fn document_report(aut: &Automaton) -> Report {
    Report::ok(
        format!("{}\n", serialize_automaton(aut)),
        serde_json::to_value(to_document(aut)).expect("documents are plain JSON"),
    )
}

fn construct(c: Construct) -> Result<Report, CliError> {
    let aut = match c {
        Construct::Rotation { triple: t, model } => {
            let model = if model == "mcqfa" { RotationModel::Mcqfa } else { RotationModel::Gfa };
            rotation(triple(&t)?, model)
        }
        Construct::Px { x } => Automaton::Exact(Machine::Pfa(px(&rational(&x)?)?)),
        Construct::Modn { n } => Automaton::Approx(Machine::Mcqfa(modn_mcqfa(n)?)),
    };
    Ok(document_report(&aut))
}

fn transform(t: Transform) -> Result<Report, CliError> {
    let Transform::ExclusiveToZero { file, cutpoint: cut } = t;
    let mc = match load(&file)? {
        Automaton::Exact(Machine::Mcqfa(m)) => m.map_field(|z| z.to_c64()),
        Automaton::Approx(Machine::Mcqfa(m)) => m,
        other => {
            return Err(CliError::Usage(format!(
                "exclusive-to-zero needs an mcqfa, got a {}",
                other.model_name()
            )))
        }
    };
    let tr = exclusive_to_zero(&mc, q::to_f64(&rational(&cut)?))?;
    let mut report = document_report(&Automaton::Approx(Machine::Mcqfa(tr.machine)));
    report.notes.extend(tr.notice);
    Ok(report)
}

fn classify(file: &Path, cut: &str) -> Result<Report, CliError> {
    let aut = load(file)?;
    let a = classify_2state(&aut, &rational(cut)?)?;
    let opt = |v: &Option<BigRational>| v.as_ref().map_or(Value::Null, |r| Value::String(r.to_string()));
    let text = format!(
        "{}\ncase {}, x = {}, y = {}, t = {}, periodic from m = {}\n",
        a.language, a.case, a.x, a.y, a.t, a.stabilization
    );
    let out = json!({
        "language": a.language.to_string(),
        "case": a.case.to_string(),
        "x": a.x.to_string(),
        "y": a.y.to_string(),
        "c": opt(&a.c),
        "z": opt(&a.z),
        "r": opt(&a.r),
        "t": a.t.to_string(),
        "stabilization": a.stabilization,
    });
    Ok(Report::ok(text, out))
}

fn decompose(nums: &str, cut: &str, direction: &str, inclusive: bool) -> Result<Report, CliError> {
    let s = one_state_spec(nums, cut, direction, inclusive)?;
    let d = decompose_1state(&s)?;
    Ok(Report::ok(format!("{d}\n"), serialize_descriptor(&d)))
}

fn build(descfile: &Path) -> Result<Report, CliError> {
    let d = parse_descriptor(&read(descfile)?)?;
    let s = build_1state(&d)?;
    let gfa = Automaton::Exact(Machine::Gfa(s.to_gfa()));
    let out = json!({
        "numbers": s.alphabet.iter().zip(&s.numbers).map(|(c, a)| (c.to_string(), Value::String(a.to_string()))).collect::<serde_json::Map<_, _>>(),
        "cutpoint": s.cutpoint.to_string(),
        "direction": if s.direction == Direction::Less { "lt" } else { "gt" },
        "mode": if s.mode == OneStateMode::Inclusive { "inclusive" } else { "strict" },
        "gfa": serde_json::to_value(to_document(&gfa)).expect("documents are plain JSON"),
    });
    Ok(Report::ok(format!("{s}\n"), out))
}

fn chomsky(descfile: Option<PathBuf>, nums: Option<String>, cut: Option<String>, direction: &str) -> Result<Report, CliError> {
    let verdict = match (descfile, nums) {
        (Some(path), _) => match parse_chomsky_input(&read(&path)?)? {
            ChomskyInput::Solution(s) => chomsky_classify(&s)?,
            ChomskyInput::Descriptor(d) => match d.solution() {
                Some(s) => chomsky_classify(s)?,
                None => ChomskyVerdict::Regular,
            },
        },
        (None, Some(nums)) => {
            let cut = cut.ok_or_else(|| CliError::Usage("--numbers needs --cutpoint".into()))?;
            chomsky_classify_gfa(&one_state_spec(&nums, &cut, direction, false)?)?
        }
        (None, None) => return Err(CliError::Usage("give a descriptor file or --numbers".into())),
    };
    Ok(Report::ok(format!("{verdict}\n"), json!({ "verdict": verdict.to_string() })))
}

#[allow(clippy::too_many_arguments)]
fn separate_cmd(
    file_a: &Path,
    cut_a: &str,
    mode_a: &str,
    file_b: &Path,
    cut_b: &str,
    mode_b: &str,
    max: usize,
) -> Result<Report, CliError> {
    let (a, b) = (load(file_a)?, load(file_b)?);
    let (ca, cb) = (cutpoint(cut_a, mode_a)?, cutpoint(cut_b, mode_b)?);
    match separate(&a, &ca, &b, &cb, max)? {
        Some(w) => {
            let text = format!(
                "m={}\nvalue_a = {}\nvalue_b = {}\nmember_a = {}, member_b = {}\n",
                w.m,
                value_text(&w.value_a),
                value_text(&w.value_b),
                w.member_a,
                w.member_b
            );
            let out = json!({
                "m": w.m,
                "value_a": scalar_json(&w.value_a),
                "value_b": scalar_json(&w.value_b),
                "member_a": w.member_a,
                "member_b": w.member_b,
            });
            Ok(Report::ok(text, out))
        }
        None => Ok(Report {
            text: format!("no separating length up to {max}\n"),
            json: json!({ "m": Value::Null, "max": max }),
            exit_code: 3,
            notes: Vec::new(),
        }),
    }
}

fn density(t: &str, bins: usize, max: u64) -> Result<Report, CliError> {
    let rep = density_report(triple(t)?, bins, max)?;
    let out = json!({
        "triple": [rep.triple.m(), rep.triple.n()],
        "bins": bins,
        "width": rep.width.to_string(),
        "horizon": rep.horizon,
        "misses": rep.misses(),
        "first_hit": rep.first_hit,
    });
    Ok(Report {
        text: rep.to_string(),
        json: out,
        exit_code: if rep.misses() == 0 { 0 } else { 3 },
        notes: Vec::new(),
    })
}

fn verify_cmd(suite: Suite) -> Report {
    let results = verify_with(suite, |_| {});
    let text: String = results.iter().map(|r| format!("{r}\n")).collect();
    let failed = results.iter().filter(|r| !r.passed).count();
    let out = Value::Array(
        results
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "suite": r.suite.to_string(),
                    "title": r.title,
                    "passed": r.passed,
                    "seconds": r.elapsed.as_secs_f64(),
                    "limit_seconds": r.limit.as_secs(),
                    "detail": r.detail,
                })
            })
            .collect(),
    );
    Report {
        text: format!("{text}{} of {} passed\n", results.len() - failed, results.len()),
        json: out,
        exit_code: if failed == 0 { 0 } else { 1 },
        notes: Vec::new(),
    }
}

fn validate(file: &Path) -> Result<Report, CliError> {
    let aut = load(file)?;
    let alphabet: String = aut.alphabet().iter().collect();
    let text = format!(
        "valid {} with {} states over {{{alphabet}}} ({})\n",
        aut.model_name(),
        aut.states(),
        if aut.is_exact() { "exact" } else { "binary64" }
    );
    let out = json!({ "model": aut.model_name(), "states": aut.states(), "exact": aut.is_exact(), "violations": [] });
    Ok(Report::ok(text, out))
}

pub fn execute(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Eval { file, word, length, trace } => eval(&file, word, length, trace),
        Command::Enum { file, cutpoint, mode, max, epsilon } => enumerate(&file, &cutpoint, &mode, max, epsilon),
        Command::Csv { file, max } => csv(&file, max),
        Command::Construct(c) => construct(c),
        Command::Transform(t) => transform(t),
        Command::Classify2Pfa { file, cutpoint } => classify(&file, &cutpoint),
        Command::Decompose1Gfa { numbers, cutpoint, direction, inclusive } => {
            decompose(&numbers, &cutpoint, &direction, inclusive)
        }
        Command::Build1Gfa { descfile } => build(&descfile),
        Command::Chomsky { descfile, numbers, cutpoint, direction } => chomsky(descfile, numbers, cutpoint, &direction),
        Command::Separate { file_a, file_b, cutpoint_a, cutpoint_b, mode_a, mode_b, max } => {
            separate_cmd(&file_a, &cutpoint_a, &mode_a, &file_b, &cutpoint_b, &mode_b, max)
        }
        Command::Density { triple, bins, max } => density(&triple, bins, max),
        Command::Verify { suite } => Ok(verify_cmd(suite)),
        Command::Validate { file } => validate(&file),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_number_lists() {
        let (l, v) = numbers("a=1/2, b=-2,c=0.25").unwrap();
        assert_eq!(l, vec!['a', 'b', 'c']);
        assert_eq!(v, vec![q::ratio(1, 2), q::from_int(-2), q::ratio(1, 4)]);
        assert!(numbers("ab=1").is_err());
        assert!(numbers("a:1").is_err());
    }

    #[test]
    fn parses_triples() {
        assert_eq!(triple("2,1").unwrap(), PythTriple::new(2, 1).unwrap());
        assert!(triple("3,1").is_err());
        assert!(triple("2").is_err());
    }

    #[test]
    fn csv_goldens() {
        let render = |aut: &Automaton, n: usize| {
            let mut buf = Vec::new();
            let rows = emit_csv(aut, n, &mut buf).unwrap();
            (rows, String::from_utf8(buf).unwrap())
        };
        let px_half = Automaton::Exact(Machine::Pfa(px(&q::ratio(1, 2)).unwrap()));
        assert_eq!(render(&px_half, 2), (3, "m,value_exact,value_float\n0,0,0.0\n1,0,0.0\n2,1,1.0\n".into()));
        let rot = rotation(PythTriple::new(2, 1).unwrap(), RotationModel::Gfa);
        assert_eq!(render(&rot, 1), (2, "m,value_exact,value_float\n0,1,1.0\n1,3/5,0.6\n".into()));
        let modn = Automaton::Approx(Machine::Mcqfa(modn_mcqfa(4).unwrap()));
        assert_eq!(render(&modn, 0), (1, "m,value_exact,value_float\n0,,1.0\n".into()));
    }
}
