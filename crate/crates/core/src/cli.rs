//! File-based command line front end.
//!
//! Word files hold one vector per line as space-separated canonical integers;
//! blank lines and lines starting with `#` are skipped. Specs, bases and series
//! are single JSON documents, decode results are JSON lines.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agcode::{catalog, known_syndromes, CodeError, CodeSpec, CodeSpecJson};
use crate::cauchy::{CauchyError, CauchyProblem, LinearRecurringSeries};
use crate::decoder::{decode, DecodeError, DecodeRecord, DecodeStatus};
use crate::gf::Elem;
use crate::groebner::{BasisJson, GroebnerBasis, GroebnerError};
use crate::poly::Exponent;
use crate::series::TruncatedSeries;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{what}: {source}")]
    Json { what: String, source: serde_json::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing required option --{0}")]
    Missing(&'static str),
    #[error("{0}")]
    Usage(String),
    #[error("error weight {t} exceeds the word length {n}")]
    WeightTooLarge { t: usize, n: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Cauchy(#[from] CauchyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    BuildCode,
    Encode,
    Corrupt,
    Decode,
    LrsExtend,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Instance {
    LineGf7,
    HermitianGf4,
}

/// One invocation of the tool.
#[derive(Debug, Clone, Parser)]
#[command(name = "keyeq", version, about = "Encode, corrupt and decode one-point AG codes")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Code-spec JSON.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long = "out")]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Error weight for `corrupt` (and a single-weight `sweep`).
    #[arg(long)]
    pub weight: Option<usize>,
    /// Comma-separated weights for `sweep`.
    #[arg(long, value_delimiter = ',')]
    pub weights: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Ground-truth error vectors written by `corrupt`.
    #[arg(long)]
    pub plant: Option<PathBuf>,
    /// Shipped instance for `build-code` instead of `--in`.
    #[arg(long, value_enum)]
    pub instance: Option<Instance>,
    /// Basis JSON for `lrs-extend`.
    #[arg(long)]
    pub basis: Option<PathBuf>,
    /// Box corner for `lrs-extend`, e.g. `7,7`.
    #[arg(long = "box", value_delimiter = ',')]
    pub bound: Vec<u32>,
}

/// Initial data file for `lrs-extend`: `{"values":[{"at":[0,1],"value":3}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialJson {
    pub values: Vec<InitialValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialValue {
    pub at: Vec<u32>,
    pub value: u32,
}

/// Per-weight row of a sweep report.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub weight: usize,
    pub trials: usize,
    pub success: usize,
    /// Successes that returned the transmitted codeword.
    pub exact: usize,
    /// Successes that returned a different, verified codeword (beyond the radius).
    pub miscorrected: usize,
    /// Successes failing the parity or syndrome re-check; always expected to be 0.
    pub unsound: usize,
    pub locator_failed: usize,
    pub values_failed: usize,
    pub insufficient_syndromes: usize,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.to_owned(), source }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|source| CliError::Json { what: what.to_owned(), source })
}

fn to_json_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_words(text: &str) -> Result<Vec<Vec<u32>>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let word = line
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|e| CliError::Parse { line: i + 1, msg: format!("{t:?}: {e}") }))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(word);
    }
    Ok(out)
}

pub fn format_words(words: &[Vec<Elem>]) -> String {
    let mut s = String::new();
    for w in words {
        let line: Vec<String> = w.iter().map(|x| x.value().to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

/// Checks symbols against the field of `code`.
pub fn words_in_field(code: &CodeSpec, words: &[Vec<u32>]) -> Result<Vec<Vec<Elem>>, CliError> {
    let f = code.field();
    words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            w.iter()
                .map(|&x| f.elem(x as u64).map_err(|e| CliError::Parse { line: i + 1, msg: e.to_string() }))
                .collect()
        })
        .collect()
}

pub fn load_spec(path: &Path) -> Result<CodeSpec, CliError> {
    let json: CodeSpecJson = from_json(&read(path)?, &path.display().to_string())?;
    Ok(json.build()?)
}

pub fn cmd_build_code(json: &CodeSpecJson) -> Result<CodeSpec, CliError> {
    Ok(json.build()?)
}

pub fn cmd_encode(code: &CodeSpec, messages: &[Vec<Elem>]) -> Result<Vec<Vec<Elem>>, CliError> {
    messages.iter().map(|m| code.encode(m).map_err(CliError::from)).collect()
}

/// Random error of weight `t` for word number `index`; each word draws from
/// its own ChaCha stream so results do not depend on batch order.
pub fn error_pattern(q: u32, n: usize, t: usize, seed: u64, index: u64) -> Vec<Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    draw_error(&mut rng, q, n, t)
}

fn draw_error(rng: &mut ChaCha8Rng, q: u32, n: usize, t: usize) -> Vec<Elem> {
    let mut e = vec![Elem::ZERO; n];
    let mut pos = index::sample(rng, n, t).into_vec();
    pos.sort_unstable();
    for j in pos {
        e[j] = Elem(rng.gen_range(1..q));
    }
    e
}

/// Corrupted words and the planted errors.
pub type Corrupted = (Vec<Vec<Elem>>, Vec<Vec<Elem>>);

/// Adds an independent weight-`t` error to every word; returns the corrupted
/// words and the planted errors.
pub fn cmd_corrupt(code: &CodeSpec, words: &[Vec<Elem>], t: usize, seed: u64) -> Result<Corrupted, CliError> {
    let f = code.field();
    let q = f.order();
    let mut out = Vec::with_capacity(words.len());
    let mut plants = Vec::with_capacity(words.len());
    for (i, w) in words.iter().enumerate() {
        if t > w.len() {
            return Err(CliError::WeightTooLarge { t, n: w.len() });
        }
        let e = error_pattern(q, w.len(), t, seed, i as u64);
        out.push(w.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect());
        plants.push(e);
    }
    Ok((out, plants))
}

pub fn cmd_decode(code: &CodeSpec, words: &[Vec<Elem>]) -> Result<Vec<DecodeRecord>, CliError> {
    let results: Vec<Result<DecodeRecord, CliError>> = words
        .par_iter()
        .map(|w| {
            let r = decode(w, code)?;
            Ok(DecodeRecord::from_result(&r, code))
        })
        .collect();
    results.into_iter().collect()
}

pub fn cmd_lrs_extend(
    basis: GroebnerBasis,
    initial: &InitialJson,
    bound: &Exponent,
) -> Result<TruncatedSeries, CliError> {
    let f = basis.field().clone();
    let mut map = std::collections::BTreeMap::new();
    for v in &initial.values {
        let x = f.elem(v.value as u64).map_err(|_| CauchyError::BadValue(v.value))?;
        map.insert(Exponent::from(v.at.as_slice()), x);
    }
    let prob = CauchyProblem::new(basis, map)?;
    Ok(LinearRecurringSeries::new(prob).to_box(bound)?)
}

/// Monte-Carlo decoding of random codewords with random weight-`w` errors.
pub fn cmd_sweep(code: &CodeSpec, weights: &[usize], trials: usize, seed: u64) -> Result<Vec<SweepRow>, CliError> {
    let f = code.field();
    let n = code.len();
    let k = code.dimension();
    let q = f.order();
    let mut rows = Vec::with_capacity(weights.len());
    for &wt in weights {
        if wt > n {
            return Err(CliError::WeightTooLarge { t: wt, n });
        }
        let outcomes: Vec<(DecodeStatus, bool, bool)> = (0..trials)
            .into_par_iter()
            .map(|i| {
                let stream = ((wt as u64) << 32) | i as u64;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(stream);
                let m: Vec<Elem> = (0..k).map(|_| Elem(rng.gen_range(0..q))).collect();
                let c = code.encode(&m)?;
                let e = draw_error(&mut rng, q, n, wt);
                let w: Vec<Elem> = c.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect();
                let r = decode(&w, code)?;
                if r.status != DecodeStatus::Success {
                    return Ok((r.status, false, true));
                }
                let got = r.codeword.as_ref().expect("success carries a codeword");
                let ehat = r.error.as_ref().expect("success carries an error");
                let sound = code.is_codeword(got)? && known_syndromes(ehat, code)? == known_syndromes(&w, code)?;
                Ok((r.status, got == &c, sound))
            })
            .collect::<Result<_, CliError>>()?;
        let mut row = SweepRow { weight: wt, trials, ..Default::default() };
        for (status, exact, sound) in outcomes {
            match status {
                DecodeStatus::Success => {
                    row.success += 1;
                    if !sound {
                        row.unsound += 1;
                    } else if exact {
                        row.exact += 1;
                    } else {
                        row.miscorrected += 1;
                    }
                }
                DecodeStatus::LocatorFailed => row.locator_failed += 1,
                DecodeStatus::ValuesFailed => row.values_failed += 1,
                DecodeStatus::InsufficientSyndromes => row.insufficient_syndromes += 1,
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Result of a run: the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok,
    /// Some word did not decode with SUCCESS (or a sweep saw an unsound result).
    DecodeFailures,
}

impl Exit {
    pub fn code(self) -> i32 {
        match self {
            Exit::Ok => 0,
            Exit::DecodeFailures => 2,
        }
    }
}

fn need<'a>(p: &'a Option<PathBuf>, name: &'static str) -> Result<&'a Path, CliError> {
    p.as_deref().ok_or(CliError::Missing(name))
}

pub fn run(cfg: &RunConfig) -> Result<Exit, CliError> {
    let out = cfg.output.as_deref();
    match cfg.command {
        Command::BuildCode => {
            let json = match (cfg.instance, &cfg.input) {
                (Some(_), Some(_)) => return Err(CliError::Usage("give either --instance or --in, not both".into())),
                (Some(Instance::LineGf7), None) => catalog::line_gf7_json(),
                (Some(Instance::HermitianGf4), None) => catalog::hermitian_gf4_json(),
                (None, Some(p)) => from_json(&read(p)?, &p.display().to_string())?,
                (None, None) => return Err(CliError::Usage("build-code needs --instance or --in".into())),
            };
            let code = cmd_build_code(&json)?;
            eprintln!("[{}, {}] code, a = {}, |Z| = {}", code.len(), code.dimension(), json.a, code.region().len());
            write_out(out, &to_json_pretty(&code.to_json()))?;
            Ok(Exit::Ok)
        }
        Command::Encode => {
            let code = load_spec(need(&cfg.spec, "spec")?)?;
            let msgs = words_in_field(&code, &parse_words(&read(need(&cfg.input, "in")?)?)?)?;
            write_out(out, &format_words(&cmd_encode(&code, &msgs)?))?;
            Ok(Exit::Ok)
        }
        Command::Corrupt => {
            let code = load_spec(need(&cfg.spec, "spec")?)?;
            let t = cfg.weight.ok_or(CliError::Missing("weight"))?;
            let words = words_in_field(&code, &parse_words(&read(need(&cfg.input, "in")?)?)?)?;
            let (bad, plants) = cmd_corrupt(&code, &words, t, cfg.seed)?;
            write_out(out, &format_words(&bad))?;
            if let Some(p) = &cfg.plant {
                write_out(Some(p), &format_words(&plants))?;
            }
            Ok(Exit::Ok)
        }
        Command::Decode => {
            let code = load_spec(need(&cfg.spec, "spec")?)?;
            let words = words_in_field(&code, &parse_words(&read(need(&cfg.input, "in")?)?)?)?;
            let records = cmd_decode(&code, &words)?;
            let mut text = String::new();
            for r in &records {
                text.push_str(&serde_json::to_string(r).expect("plain data serializes"));
                text.push('\n');
            }
            write_out(out, &text)?;
            if records.iter().all(|r| r.status == DecodeStatus::Success) {
                Ok(Exit::Ok)
            } else {
                Ok(Exit::DecodeFailures)
            }
        }
        Command::LrsExtend => {
            let bp = need(&cfg.basis, "basis")?;
            let bj: BasisJson = from_json(&read(bp)?, &bp.display().to_string())?;
            let basis = GroebnerBasis::from_json(&bj)?;
            let ip = need(&cfg.input, "in")?;
            let init: InitialJson = from_json(&read(ip)?, &ip.display().to_string())?;
            if cfg.bound.len() != basis.nvars() {
                return Err(CliError::Usage(format!("--box needs {} comma-separated components", basis.nvars())));
            }
            let series = cmd_lrs_extend(basis, &init, &Exponent::from(cfg.bound.as_slice()))?;
            write_out(out, &to_json_pretty(&series.to_json()))?;
            Ok(Exit::Ok)
        }
        Command::Sweep => {
            let code = load_spec(need(&cfg.spec, "spec")?)?;
            let mut weights = cfg.weights.clone();
            if let Some(w) = cfg.weight {
                weights.push(w);
            }
            if weights.is_empty() {
                weights = vec![0, 1, 2];
            }
            let rows = cmd_sweep(&code, &weights, cfg.trials, cfg.seed)?;
            let mut text = String::new();
            for r in &rows {
                text.push_str(&serde_json::to_string(r).expect("plain data serializes"));
                text.push('\n');
            }
            write_out(out, &text)?;
            if rows.iter().any(|r| r.unsound > 0) {
                Ok(Exit::DecodeFailures)
            } else {
                Ok(Exit::Ok)
            }
        }
    }
}
