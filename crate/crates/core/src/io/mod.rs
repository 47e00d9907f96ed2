//! Job files, command dispatch and deterministic serialization.
//!
//! The wall table has a versioned schema, `wall-table v1`, shared by the CSV
//! and JSON renderings:
//!
//! | column | meaning |
//! |---|---|
//! | `C` | wall center |
//! | `D` | `radius_sq - C^2` in the untwisted model |
//! | `radius_sq` | squared radius in the chosen model |
//! | `ch0'` | rank of the destabilizer |
//! | `c1` | `ch1'.H / H^2`, the `H`-coordinate |
//! | `c2` | `-ch1'.gamma / (-gamma^2)`, the `gamma`-coordinate |
//! | `chi'` | `ch2'` |
//! | `divisor_expr` | Bayer–Macrì class on the wall |
//! | `model` | `untwisted` or `twisted-k3` |
//!
//! Coincident walls list their destabilizers in one row, joined by `;`.

pub mod config;
pub mod svg;

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bayer_macri::{
    decompose_dim0, decompose_dim1_in, decompose_dim2, global_line_bundle_dim2, global_line_bundle_dim2_unchecked,
    global_map_known, relation_checks, wall_divisor, DivisorExpr,
};
use crate::error::{Error, Result};
use crate::nefcone::{higher_rank_bound_check, nef_cone, rank_one_sweep};
use crate::rational::{sqrt_exact, Q};
use crate::stability::chamber_classify;
use crate::surface::ChernCharacter;
use crate::walls::{dual_wall_check_in, enumerate_walls_in, wall_in_model, FrameCoords, WallModel, WallRecord};

pub use config::{parse_job, JobSpec, OutputFormat, RawJob};

/// Schema tag of the wall table.
pub const WALL_TABLE_SCHEMA: &str = "wall-table v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Walls,
    Decompose,
    Nefcone,
    Chamber,
    DualCheck,
    K3Walls,
    Plot,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Walls,
        Command::Decompose,
        Command::Nefcone,
        Command::Chamber,
        Command::DualCheck,
        Command::K3Walls,
        Command::Plot,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Walls => "walls",
            Command::Decompose => "decompose",
            Command::Nefcone => "nefcone",
            Command::Chamber => "chamber",
            Command::DualCheck => "dual-check",
            Command::K3Walls => "k3-walls",
            Command::Plot => "plot",
        }
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown command \"{s}\"")))
    }
}

/// One row of the wall table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallRow {
    #[serde(rename = "C")]
    pub center: String,
    #[serde(rename = "D")]
    pub d: String,
    pub radius_sq: String,
    #[serde(rename = "ch0'")]
    pub ch0: String,
    pub c1: String,
    pub c2: String,
    #[serde(rename = "chi'")]
    pub chi: String,
    pub divisor_expr: String,
    pub model: String,
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(";")
}

/// The divisor written in the most readable basis the job allows: Picard
/// generators, and `(E+eF)~, F~, B` on fibered presets.
pub fn display_expr(expr: &DivisorExpr, job: &JobSpec) -> DivisorExpr {
    let picard = expr.to_picard(&job.frame);
    match &job.fibered {
        Some(fs) => fs.to_toy_basis(&picard),
        None => picard,
    }
}

impl WallRow {
    pub fn of(wall: &WallRecord, job: &JobSpec) -> Self {
        let coords: Vec<FrameCoords> = wall.destabilizers.iter().map(|c| FrameCoords::of(c, &wall.frame)).collect();
        let divisor_expr = match wall_divisor(wall) {
            Ok(e) => display_expr(&e, job).to_string(),
            Err(e) => format!("n/a ({})", e.name()),
        };
        WallRow {
            center: wall.center.to_string(),
            d: wall.d.to_string(),
            radius_sq: wall.radius_sq.to_string(),
            ch0: join(&coords, |c| c.rank.to_string()),
            c1: join(&coords, |c| c.c1.to_string()),
            c2: join(&coords, |c| c.c2.to_string()),
            chi: join(&coords, |c| c.chi.to_string()),
            divisor_expr,
            model: wall.model.label().to_string(),
        }
    }
}

fn model_of(job: &JobSpec) -> WallModel {
    if job.twisted {
        WallModel::TwistedK3
    } else {
        WallModel::Untwisted
    }
}

fn frame_line(job: &JobSpec) -> String {
    let f = &job.frame;
    format!("H = {}, gamma = {}, u = {}", f.h(), f.gamma(), f.u())
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

/// CSV with a `# schema` comment line. The header comes from the row type,
/// or from `header` when there are no rows.
fn csv_of<T: Serialize>(schema: &str, rows: &[T], header: &[&str]) -> Result<String> {
    let err = |e: csv::Error| Error::InvalidInput(e.to_string());
    let mut wtr = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        wtr.write_record(header).map_err(err)?;
    }
    for r in rows {
        wtr.serialize(r).map_err(err)?;
    }
    let body = wtr.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(format!("# {schema}\n{}", String::from_utf8(body).expect("csv output is UTF-8")))
}

const WALL_HEADER: [&str; 9] = ["C", "D", "radius_sq", "ch0'", "c1", "c2", "chi'", "divisor_expr", "model"];

#[derive(Serialize)]
struct WallTableJson<'a> {
    schema: &'a str,
    surface: &'a str,
    ch: String,
    model: &'a str,
    bounds: String,
    walls: &'a [WallRow],
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::InvalidInput(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn enumerate(job: &JobSpec, model: WallModel) -> Result<Vec<WallRecord>> {
    let ch = job.character()?;
    enumerate_walls_in(ch, &job.frame, &job.bounds, model)
}

fn walls_output(job: &JobSpec, model: WallModel) -> Result<String> {
    let ch = job.character()?;
    let walls = enumerate(job, model)?;
    if job.format == OutputFormat::Svg {
        return Ok(svg::render_svg(&plot_title(job, ch), ch, &walls));
    }
    let rows: Vec<WallRow> = walls.iter().map(|w| WallRow::of(w, job)).collect();
    match job.format {
        OutputFormat::Csv => csv_of(WALL_TABLE_SCHEMA, &rows, &WALL_HEADER),
        OutputFormat::Json => to_json(&WallTableJson {
            schema: WALL_TABLE_SCHEMA,
            surface: job.surface.name(),
            ch: ch.to_string(),
            model: model.label(),
            bounds: job.bounds.to_string(),
            walls: &rows,
        }),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "surface: {}", job.surface.name());
            let _ = writeln!(out, "frame: {}", frame_line(job));
            let _ = writeln!(out, "character: {ch}");
            let _ = writeln!(out, "model: {}", model.label());
            let _ = writeln!(out, "global map known: {}", global_map_known(ch, &job.frame));
            let _ = writeln!(out, "search: {}", job.bounds);
            let _ = writeln!(out, "walls: {}", rows.len());
            if job.is_trivial_character() {
                let _ = writeln!(out, "trivial chamber: (0, 0, n) has no wall");
            }
            if rows.is_empty() {
                return Ok(out);
            }
            out.push('\n');
            let body: Vec<Vec<String>> = walls
                .iter()
                .zip(&rows)
                .map(|(w, r)| {
                    let radius = sqrt_exact(&w.radius_sq).map_or_else(|| "-".to_string(), |x| x.to_string());
                    vec![
                        r.center.clone(),
                        r.d.clone(),
                        r.radius_sq.clone(),
                        radius,
                        join(&w.destabilizers, |c| c.to_string()),
                        r.divisor_expr.clone(),
                    ]
                })
                .collect();
            out.push_str(&table(&["C", "D", "radius_sq", "R", "destabilizers", "divisor"], &body));
            Ok(out)
        }
    }
}

fn plot_title(job: &JobSpec, ch: &ChernCharacter) -> String {
    format!("walls of {ch} on {}", job.surface.name())
}

/// Ordered `key: value` report used by every command except `walls`.
struct Report {
    schema: &'static str,
    fields: Vec<(String, String)>,
}

impl Report {
    fn new(schema: &'static str) -> Self {
        Report { schema, fields: Vec::new() }
    }

    fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Csv => {
                #[derive(Serialize)]
                struct Kv<'a> {
                    key: &'a str,
                    value: &'a str,
                }
                let rows: Vec<Kv> = self.fields.iter().map(|(k, v)| Kv { key: k, value: v }).collect();
                csv_of(self.schema, &rows, &["key", "value"])
            }
            OutputFormat::Json => {
                let mut map = serde_json::Map::new();
                map.insert("schema".into(), self.schema.into());
                let fields: Vec<serde_json::Value> =
                    self.fields.iter().map(|(k, v)| serde_json::json!({ "key": k, "value": v })).collect();
                map.insert("fields".into(), fields.into());
                to_json(&map)
            }
            _ => {
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut out = String::new();
                for (k, v) in &self.fields {
                    let _ = writeln!(out, "{:<width$}  {v}", format!("{k}:"), width = width + 1);
                }
                Ok(out)
            }
        }
    }
}

fn decompose(job: &JobSpec) -> Result<String> {
    let ch = job.character()?;
    let model = model_of(job);
    let mut r = Report::new("decompose v1");
    r.push("surface", job.surface.name());
    r.push("frame", frame_line(job));
    r.push("character", ch);
    r.push("global map known", global_map_known(ch, &job.frame));
    let point = |job: &JobSpec| {
        job.point.clone().ok_or_else(|| Error::Validation("a point is required: set frame.s and frame.t".into()))
    };
    if ch.ch0.is_zero() && ch.ch1.is_zero() {
        let (s, t) = point(job).unwrap_or((Q::zero(), Q::from_integer(1.into())));
        let p = job.frame.point(s, t)?;
        let d = decompose_dim0(ch, &p)?;
        r.push("dimension", 0);
        r.push("point", format!("s = {}, t = {}", p.s(), p.t()));
        r.push("vector", d.vector);
        r.push("divisor", display_expr(&d.expr, job));
    } else if ch.ch0.is_zero() {
        let chp = job.destabilizer()?;
        let d = decompose_dim1_in(ch, chp, &job.frame, model)?;
        r.push("dimension", 1);
        r.push("destabilizer", chp);
        r.push("center", &d.center);
        r.push("coefficient", &d.coefficient);
        r.push("closed form", &d.simplified);
        r.push("closed forms agree", d.coefficient == d.simplified);
        r.push("t vector", &d.t);
        r.push("divisor", &d.expr);
    } else if let Some(chp) = &job.chp {
        let wall = wall_in_model(ch, chp, &job.frame, model)?;
        let expr = if model == WallModel::TwistedK3 || ch.ch0.is_negative() {
            wall_divisor(&wall)?
        } else if job.ignore_condition_c {
            global_line_bundle_dim2_unchecked(ch, &wall)?
        } else {
            global_line_bundle_dim2(ch, &wall)?
        };
        r.push("dimension", 2);
        r.push("destabilizer", chp);
        r.push("model", model.label());
        r.push("center", &wall.center);
        r.push("radius_sq", &wall.radius_sq);
        r.push("divisor", &expr);
        r.push("divisor (Picard basis)", display_expr(&expr, job));
        if !wall.is_empty() {
            let rel = relation_checks(&wall, &wall.center)?;
            r.push("relations at apex", if rel.passed() { "pass" } else { "FAIL" });
            r.push("mu t + s at apex", &rel.mu_t_plus_s);
        }
    } else {
        let (s, t) = point(job)?;
        let p = job.frame.point(s, t)?;
        let d = decompose_dim2(ch, &p)?;
        r.push("dimension", 2);
        r.push("point", format!("s = {}, t = {}", p.s(), p.t()));
        r.push("mu", &d.mu);
        r.push("w_sigma scalar", &d.scalar);
        r.push("beta form", &d.beta_form);
        r.push("alpha form", &d.alpha_form);
        r.push("divisor", &d.expr);
        r.push("divisor (Picard basis)", display_expr(&d.expr, job));
    }
    r.render(job.format)
}

fn nefcone(job: &JobSpec) -> Result<String> {
    let fs = job.fibered()?;
    let n = job.n_points()?;
    let cone = nef_cone(fs, n)?;
    let bound = higher_rank_bound_check(fs, n, job.k_max)?;
    let sweep = rank_one_sweep(fs, n, job.sweep_bound)?;
    let mut r = Report::new("nefcone v1");
    r.push("surface", fs.surface().name());
    r.push("points", n);
    for (i, g) in cone.generators.iter().enumerate() {
        r.push(format!("generator {}", i + 1), g);
    }
    let b = &cone.balanced;
    r.push("balanced lambda", &b.lambda);
    r.push("balanced u", &b.u);
    r.push("H^2", &b.g);
    r.push("Gieseker wall center", &b.center);
    r.push("higher-rank bound (u^2 + 2n/g) 9/8", &bound.bound);
    r.push("C^2", &bound.center_sq);
    r.push("higher-rank walls dominated", bound.holds);
    for (k, v) in &bound.per_rank {
        r.push(format!("rank {k} bound"), v);
    }
    r.push("rank-one sweep bound", job.sweep_bound);
    r.push("rank-one sweep checked", sweep.checked);
    r.push("rank-one sweep violations", sweep.violations.len());
    if let Some((m, k, c)) = &sweep.max_competitor {
        r.push("largest competitor |C|", format!("{c} at (m, k) = ({m}, {k})"));
    }
    r.render(job.format)
}

fn chamber(job: &JobSpec) -> Result<String> {
    let ch = job.character()?;
    let (s, t) =
        job.point.clone().ok_or_else(|| Error::Validation("a point is required: set frame.s and frame.t".into()))?;
    let p = job.frame.point(s, t)?;
    let walls = enumerate(job, model_of(job))?;
    let c = chamber_classify(ch, &p, &walls);
    let mut r = Report::new("chamber v1");
    r.push("surface", job.surface.name());
    r.push("character", ch);
    r.push("point", format!("s = {}, t = {}", p.s(), p.t()));
    r.push("walls searched", walls.len());
    r.push("search", &job.bounds);
    r.push("chamber", c.label());
    r.render(job.format)
}

fn dual_check(job: &JobSpec) -> Result<String> {
    let ch = job.character()?;
    let chp = job.destabilizer()?;
    let rep = dual_wall_check_in(ch, chp, &job.frame, model_of(job))?;
    let mark = |b: bool| if b { "pass" } else { "FAIL" };
    let mut r = Report::new("dual-check v1");
    r.push("character", ch);
    r.push("destabilizer", chp);
    r.push("center", &rep.original.center);
    r.push("dual center", &rep.dual.center);
    r.push("C -> -C", mark(rep.center_negated));
    r.push("D -> D", mark(rep.d_preserved));
    r.push("R -> R", mark(rep.radius_preserved));
    r.push("result", mark(rep.passed()));
    r.render(job.format)
}

/// Runs `command` and returns its complete output.
pub fn run(command: Command, job: &JobSpec) -> Result<String> {
    match command {
        Command::Walls => walls_output(job, model_of(job)),
        Command::K3Walls => {
            if !job.surface.is_k3() {
                return Err(Error::NotK3);
            }
            walls_output(job, WallModel::TwistedK3)
        }
        Command::Plot => {
            let ch = job.character()?;
            let walls = enumerate(job, model_of(job))?;
            Ok(svg::render_svg(&plot_title(job, ch), ch, &walls))
        }
        Command::Decompose => decompose(job),
        Command::Nefcone => nefcone(job),
        Command::Chamber => chamber(job),
        Command::DualCheck => dual_check(job),
    }
}
