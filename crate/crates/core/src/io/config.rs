//! The key=value job format.
//!
//! ```text
//! # ideal sheaf of two points on Sigma_2
//! [surface]
//! preset = hirzebruch
//! e = 2
//! [character]
//! ch = 1, 0, 0, -2
//! [frame]
//! lambda = 1/2
//! u = 1/2
//! [search]
//! c1_bound = 3
//! [output]
//! format = csv
//! ```
//!
//! Rationals are integers or `p/q`; decimals are rejected. Divisors are
//! comma-separated Picard coordinates and characters are `ch0, ch1..., ch2`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::nefcone::{solve_balanced, toy_frame, FiberedSurface};
use crate::rational::{parse_rational, q, Q};
use crate::stability::Frame;
use crate::surface::{ChernCharacter, Divisor, Surface};
use crate::walls::SearchBounds;

const KEYS: &[(&str, &[&str])] = &[
    ("surface", &["preset", "e", "intersection", "canonical", "chi", "generators", "name"]),
    ("character", &["ch", "chp", "n", "ignore_condition_c"]),
    ("frame", &["h", "gamma", "u", "lambda", "s", "t"]),
    ("search", &["max_rank", "c1_bound", "chi_denom", "max_length", "twisted", "sweep_bound", "k_max"]),
    ("output", &["format"]),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(format!("unknown output format \"{other}\" (expected text, csv, json or svg)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Svg => "svg",
        })
    }
}

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    /// `(line, column)` of the value in a config file; `None` for command-line values.
    pos: Option<(usize, usize)>,
}

/// Unresolved `section.key -> value` pairs, from a file, the command line or both.
#[derive(Debug, Clone, Default)]
pub struct RawJob {
    entries: BTreeMap<(String, String), Entry>,
}

impl RawJob {
    /// Parses the text format; positions are kept for later error reports.
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = RawJob::default();
        let mut section: Option<String> = None;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let content = line.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len() + 1;
            if let Some(rest) = trimmed.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| perr(lineno, indent, "section header must end with ']'"))?
                    .trim();
                if !KEYS.iter().any(|(s, _)| *s == name) {
                    return Err(perr(lineno, indent + 1, &format!("unknown section [{name}]")));
                }
                section = Some(name.to_string());
                continue;
            }
            let Some(eq) = content.find('=') else {
                return Err(perr(lineno, indent, "expected key = value"));
            };
            let key = content[..eq].trim();
            let sec = section.as_deref().ok_or_else(|| perr(lineno, indent, "key outside of any section"))?;
            let allowed = KEYS.iter().find(|(s, _)| *s == sec).map(|(_, k)| *k).unwrap_or(&[]);
            if !allowed.contains(&key) {
                return Err(perr(lineno, indent, &format!("unknown key \"{key}\" in [{sec}]")));
            }
            let after = &content[eq + 1..];
            let value = after.trim();
            let col = eq + 2 + (after.len() - after.trim_start().len());
            let k = (sec.to_string(), key.to_string());
            if raw.entries.contains_key(&k) {
                return Err(perr(lineno, indent, &format!("duplicate key \"{key}\" in [{sec}]")));
            }
            raw.entries.insert(k, Entry { value: value.to_string(), pos: Some((lineno, col)) });
        }
        Ok(raw)
    }

    /// Sets or overrides a value; used for command-line flags.
    pub fn set(&mut self, section: &str, key: &str, value: impl Into<String>) {
        self.entries.insert((section.into(), key.into()), Entry { value: value.into(), pos: None });
    }

    pub fn remove(&mut self, section: &str, key: &str) {
        self.entries.remove(&(section.to_string(), key.to_string()));
    }

    fn get(&self, section: &str, key: &str) -> Option<&Entry> {
        self.entries.get(&(section.to_string(), key.to_string()))
    }

    fn value<T>(
        &self,
        section: &str,
        key: &str,
        f: impl Fn(&str) -> std::result::Result<T, String>,
    ) -> Result<Option<T>> {
        match self.get(section, key) {
            None => Ok(None),
            Some(e) => f(&e.value).map(Some).map_err(|m| match e.pos {
                Some((l, c)) => Error::Parse { line: l, column: c, message: format!("{section}.{key}: {m}") },
                None => Error::InvalidInput(format!("{section}.{key}: {m}")),
            }),
        }
    }

    /// Resolves and validates into a [`JobSpec`].
    pub fn resolve(&self) -> Result<JobSpec> {
        let preset = self.value("surface", "preset", |s| Ok(s.to_ascii_lowercase()))?.unwrap_or_else(|| "p2".into());
        let e = self.value("surface", "e", parse_i64)?;
        let (surface, fibered) = match preset.as_str() {
            "p2" => (Surface::projective_plane(), None),
            "hirzebruch" => {
                let fs = FiberedSurface::hirzebruch(e.unwrap_or(0))?;
                (fs.surface().clone(), Some(fs))
            }
            "elliptic" => {
                let fs = FiberedSurface::elliptic(e.unwrap_or(2))?;
                (fs.surface().clone(), Some(fs))
            }
            "k3" => {
                let m = self.value("surface", "intersection", parse_matrix)?.unwrap_or_else(|| vec![vec![2]]);
                (Surface::k3(m).map_err(validation)?, None)
            }
            "custom" => (self.custom_surface()?, None),
            other => {
                return Err(self.bad(
                    "surface",
                    "preset",
                    &format!("unknown preset \"{other}\" (expected p2, hirzebruch, elliptic, k3 or custom)"),
                ))
            }
        };
        let rank = surface.rank();
        let n = self.value("character", "n", parse_i64)?;
        let ch = match self.value("character", "ch", |s| parse_character(s, rank))? {
            Some(c) => Some(c),
            None => n.map(|n| ChernCharacter::ideal_of_points(rank, n)),
        };
        let chp = self.value("character", "chp", |s| parse_character(s, rank))?;
        let frame = self.resolve_frame(&surface, fibered.as_ref(), n)?;
        let s = self.value("frame", "s", parse_rational)?;
        let t = self.value("frame", "t", parse_rational)?;
        let point = match (s, t) {
            (Some(s), Some(t)) => Some((s, t)),
            (None, None) => None,
            _ => return Err(Error::Validation("frame.s and frame.t must be given together".into())),
        };
        let d = SearchBounds::default();
        let bounds = SearchBounds {
            max_rank: self.value("search", "max_rank", parse_u32)?.unwrap_or(d.max_rank),
            c1_bound: self.value("search", "c1_bound", parse_u32)?.unwrap_or(d.c1_bound),
            chi_denom: self.value("search", "chi_denom", parse_u32)?.unwrap_or(d.chi_denom),
            max_length: self.value("search", "max_length", parse_u32)?.unwrap_or(d.max_length),
        };
        if bounds.chi_denom == 0 {
            return Err(Error::Validation("search.chi_denom must be positive".into()));
        }
        Ok(JobSpec {
            surface,
            fibered,
            frame,
            ch,
            chp,
            n,
            point,
            bounds,
            twisted: self.value("search", "twisted", parse_bool)?.unwrap_or(false),
            sweep_bound: self.value("search", "sweep_bound", parse_i64)?.unwrap_or(10),
            k_max: self.value("search", "k_max", parse_u32)?.unwrap_or(6),
            ignore_condition_c: self.value("character", "ignore_condition_c", parse_bool)?.unwrap_or(false),
            format: self.value("output", "format", OutputFormat::from_str)?.unwrap_or_default(),
        })
    }

    fn bad(&self, section: &str, key: &str, msg: &str) -> Error {
        match self.get(section, key).and_then(|e| e.pos) {
            Some((l, c)) => Error::Parse { line: l, column: c, message: format!("{section}.{key}: {msg}") },
            None => Error::InvalidInput(format!("{section}.{key}: {msg}")),
        }
    }

    fn custom_surface(&self) -> Result<Surface> {
        let m = self
            .value("surface", "intersection", parse_matrix)?
            .ok_or_else(|| Error::Validation("custom surfaces need surface.intersection".into()))?;
        let rank = m.len();
        let canonical = self
            .value("surface", "canonical", |s| parse_divisor(s, rank))?
            .ok_or_else(|| Error::Validation("custom surfaces need surface.canonical".into()))?;
        let chi = self
            .value("surface", "chi", parse_i64)?
            .ok_or_else(|| Error::Validation("custom surfaces need surface.chi".into()))?;
        let generators = self
            .value("surface", "generators", |s| Ok(s.split(',').map(|g| g.trim().to_string()).collect::<Vec<_>>()))?
            .unwrap_or_else(|| (1..=rank).map(|i| format!("L{i}")).collect());
        let name = self.value("surface", "name", |s| Ok(s.to_string()))?.unwrap_or_else(|| "custom".into());
        Surface::new(name, generators, m, canonical, chi).map_err(validation)
    }

    fn resolve_frame(&self, surface: &Surface, fibered: Option<&FiberedSurface>, n: Option<i64>) -> Result<Frame> {
        let rank = surface.rank();
        let h = self.value("frame", "h", |s| parse_divisor(s, rank))?;
        let gamma = self.value("frame", "gamma", |s| parse_divisor(s, rank))?;
        let u = self.value("frame", "u", parse_rational)?;
        let lambda = self.value("frame", "lambda", parse_rational)?;
        if let (Some(fs), None) = (fibered, &h) {
            if gamma.is_some() {
                return Err(Error::Validation(
                    "frame.gamma needs frame.h; fibered presets otherwise use lambda".into(),
                ));
            }
            let lambda = lambda.unwrap_or_else(|| q(1, 2));
            let u = match u {
                Some(u) => u,
                None => balanced_u(fs, n)?,
            };
            return toy_frame(fs, &lambda, &u).map_err(validation);
        }
        if lambda.is_some() {
            return Err(Error::Validation(
                "frame.lambda applies to hirzebruch and elliptic presets without frame.h".into(),
            ));
        }
        let h = match h {
            Some(h) => h,
            None if rank == 1 => Divisor::from_ints(&[1]),
            None => return Err(Error::Validation("frame.h is required on Picard rank two surfaces".into())),
        };
        let gamma = gamma.unwrap_or_else(|| surface.zero_divisor());
        Frame::new(surface.clone(), h, gamma, u.unwrap_or_else(Q::zero)).map_err(validation)
    }
}

fn balanced_u(fs: &FiberedSurface, n: Option<i64>) -> Result<Q> {
    let e = fs.e();
    match n {
        Some(n) if n >= 2 => Ok(solve_balanced(fs, n)?.u),
        _ => Ok(q(e, e + 2)),
    }
}

fn validation(e: Error) -> Error {
    match e {
        Error::InvalidInput(m) => Error::Validation(m),
        other => other,
    }
}

fn perr(line: usize, column: usize, msg: &str) -> Error {
    Error::Parse { line, column, message: msg.to_string() }
}

fn parse_i64(s: &str) -> std::result::Result<i64, String> {
    s.trim().parse().map_err(|_| format!("expected an integer, got \"{s}\""))
}

fn parse_u32(s: &str) -> std::result::Result<u32, String> {
    s.trim().parse().map_err(|_| format!("expected a non-negative integer, got \"{s}\""))
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("expected true or false, got \"{other}\"")),
    }
}

fn parse_list(s: &str) -> std::result::Result<Vec<Q>, String> {
    s.split(',').map(parse_rational).collect()
}

/// `"a, b"` with one entry per Picard generator.
pub fn parse_divisor(s: &str, rank: usize) -> std::result::Result<Divisor, String> {
    let v = parse_list(s)?;
    if v.len() != rank {
        return Err(format!("expected {rank} coordinates, got {}", v.len()));
    }
    Ok(Divisor::new(v))
}

/// `"ch0, ch1_1, ..., ch1_rank, ch2"`.
pub fn parse_character(s: &str, rank: usize) -> std::result::Result<ChernCharacter, String> {
    let v = parse_list(s)?;
    if v.len() != rank + 2 {
        return Err(format!("expected {} entries (ch0, {rank} Picard coordinates, ch2), got {}", rank + 2, v.len()));
    }
    let ch1 = Divisor::new(v[1..=rank].to_vec());
    ChernCharacter::try_from_parts(v[0].clone(), ch1, v[rank + 1].clone()).map_err(|e| e.to_string())
}

/// `"a b; c d"` or `"a"`.
pub fn parse_matrix(s: &str) -> std::result::Result<Vec<Vec<i64>>, String> {
    s.split(';').map(|row| row.split_whitespace().map(parse_i64).collect::<std::result::Result<Vec<_>, _>>()).collect()
}

/// A validated job.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub surface: Surface,
    pub fibered: Option<FiberedSurface>,
    pub frame: Frame,
    pub ch: Option<ChernCharacter>,
    pub chp: Option<ChernCharacter>,
    pub n: Option<i64>,
    pub point: Option<(Q, Q)>,
    pub bounds: SearchBounds,
    pub twisted: bool,
    pub sweep_bound: i64,
    pub k_max: u32,
    pub ignore_condition_c: bool,
    pub format: OutputFormat,
}

impl JobSpec {
    pub fn character(&self) -> Result<&ChernCharacter> {
        self.ch.as_ref().ok_or_else(|| Error::Validation("a character is required: set character.ch or -n".into()))
    }

    pub fn destabilizer(&self) -> Result<&ChernCharacter> {
        self.chp.as_ref().ok_or_else(|| Error::Validation("a destabilizer is required: set character.chp".into()))
    }

    pub fn n_points(&self) -> Result<i64> {
        self.n.ok_or_else(|| Error::Validation("the number of points is required: set character.n or -n".into()))
    }

    pub fn fibered(&self) -> Result<&FiberedSurface> {
        self.fibered.as_ref().ok_or_else(|| {
            Error::WrongSurface(format!("{} is not a hirzebruch or elliptic preset", self.surface.name()))
        })
    }

    pub fn is_trivial_character(&self) -> bool {
        self.ch.as_ref().is_some_and(|c| c.ch0.is_zero() && c.ch1.is_zero())
    }
}

/// Parses and validates a job file.
pub fn parse_job(text: &str) -> Result<JobSpec> {
    RawJob::parse(text)?.resolve()
}
