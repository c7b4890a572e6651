//! The `ldt` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use ldt::algebra::{RatFunc, Series, Var};
use ldt::boxcount::{counts, cy_vertex, cy_vertex_reduced};
use ldt::checks::{self, Outcome, SUITES};
use ldt::partitions::Partition;
use ldt::tqft::{assemble_with, degree0, to_starred, Decomposition};
use ldt::vertex::{solve_vertex, VertexSeries};
use serde_json::{json, Value};

use crate::expr::parse_ratfunc;
use crate::format::{
    parse_insertions, parse_level, parse_partition, partition_json, series_json, series_text, GENERAL_NAMES,
    TQFT_NAMES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

/// Largest vertex degree accepted by `ldt vertex`.
pub const VERTEX_DMAX: u32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ldt", version, about = "Exact local Donaldson-Thomas series of curves")]
#[command(args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Run a verification suite; same as `ldt check SUITE`.
    #[arg(long, value_name = "SUITE")]
    check: Option<String>,
    #[arg(long)]
    dmax: Option<u32>,
    #[arg(long)]
    qmax: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced DT(g|k1,k2) with the given boundary partitions.
    ///
    /// In degree 0 the unreduced degree-0 series is printed instead.
    Dt {
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// `k1,k2`
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        level: String,
        /// A single boundary partition, e.g. `2,1`.
        #[arg(long, conflicts_with = "insertions")]
        cap: Option<String>,
        /// Boundary partitions separated by `;`.
        #[arg(long)]
        insertions: Option<String>,
        #[arg(long, default_value_t = 8)]
        qmax: i64,
        /// Print DT* instead, with its half-integer power of -q split off.
        #[arg(long)]
        starred: bool,
        #[arg(long, value_enum, default_value_t = Gluing::Operators)]
        gluing: Gluing,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// All reduced 1-legged vertices W'(μ) with |μ| = d.
    Vertex {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 8)]
        qmax: i64,
        /// `standard` (s1,s2,s3), `solver` (s, t1-s, t2), `cy`, or `custom(a,b,c)`
        /// with a, b, c rational functions of s, t1, t2.
        #[arg(long, default_value = "standard")]
        frame: String,
        /// Specialize to s1 + s2 + s3 = 0.
        #[arg(long)]
        cy: bool,
        /// Multiply by the empty vertex.
        #[arg(long, conflicts_with = "cy")]
        unreduced: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite, or `all`.
    Check {
        suite: String,
        #[arg(long)]
        dmax: Option<u32>,
        #[arg(long)]
        qmax: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Plane partitions with one leg, counted by volume.
    Boxcount {
        #[arg(long, alias = "cap", default_value = "")]
        leg: String,
        #[arg(long, default_value_t = 10)]
        qmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Gluing {
    Operators,
    Tensors,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(ldt::Error),
}

impl From<ldt::Error> for Failure {
    fn from(e: ldt::Error) -> Self {
        Failure::Compute(e)
    }
}

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

struct Report {
    text: String,
    code: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: EXIT_OK }
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", shown);
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", shown);
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli, err) {
        Ok(r) => {
            let _ = writeln!(out, "{}", r.text);
            r.code
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {}", m);
            EXIT_USAGE
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "computation failed: {}", e);
            EXIT_COMPUTE
        }
    }
}

fn dispatch(cli: Cli, err: &mut dyn Write) -> Result<Report, Failure> {
    match cli.command {
        Some(Command::Dt {
            degree,
            genus,
            level,
            cap,
            insertions,
            qmax,
            starred,
            gluing,
            format,
        }) => {
            let ins = match (cap, insertions) {
                (Some(c), _) => vec![parse_partition(&c).map_err(usage)?],
                (None, Some(s)) => parse_insertions(&s).map_err(usage)?,
                (None, None) => Vec::new(),
            };
            let level = parse_level(&level).map_err(usage)?;
            cmd_dt(genus, level, &ins, degree, qmax, starred, gluing, format, err)
        }
        Some(Command::Vertex {
            degree,
            qmax,
            frame,
            cy,
            unreduced,
            format,
        }) => cmd_vertex(degree, qmax, &frame, cy, unreduced, format, err),
        Some(Command::Check {
            suite,
            dmax,
            qmax,
            format,
        }) => cmd_check(&suite, dmax, qmax, format, err),
        Some(Command::Boxcount { leg, qmax, format }) => {
            let leg = parse_partition(&leg).map_err(usage)?;
            Ok(cmd_boxcount(&leg, qmax, format))
        }
        None => match cli.check {
            Some(suite) => cmd_check(&suite, cli.dmax, cli.qmax, cli.format, err),
            None => Err(usage("no command given; try --help")),
        },
    }
}

fn check_qmax(qmax: i64) -> Result<(), Failure> {
    if qmax < 0 {
        return Err(usage("--qmax must be nonnegative"));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_dt(
    g: u32,
    (k1, k2): (i64, i64),
    ins: &[Partition],
    degree: Option<u32>,
    qmax: i64,
    starred: bool,
    gluing: Gluing,
    format: Format,
    err: &mut dyn Write,
) -> Result<Report, Failure> {
    check_qmax(qmax)?;
    let d = match (degree, ins.first()) {
        (Some(d), _) => d,
        (None, Some(p)) => p.size(),
        (None, None) => 0,
    };
    if let Some(p) = ins.iter().find(|p| p.size() != d) {
        return Err(usage(format!("insertion {} is not a partition of {}", p, d)));
    }
    let _ = writeln!(err, "computing DT({}|{},{}) in degree {} through q^{}", g, k1, k2, d, qmax);
    let dt = if d == 0 {
        degree0(g, k1, k2, ins.len() as u32, qmax)
    } else {
        let how = match gluing {
            Gluing::Operators => Decomposition::Operators,
            Gluing::Tensors => Decomposition::Tensors,
        };
        assemble_with(g, k1, k2, ins, d, qmax, how)?
    };
    let (half, series) = if starred {
        let s = to_starred(g, k1, k2, d, &dt);
        (Some(s.half_power), s.series)
    } else {
        (None, dt)
    };
    let text = match format {
        Format::Text => match half {
            Some(1) => format!("(-q)^(1/2) * [{}]", series_text(&series, TQFT_NAMES)),
            _ => series_text(&series, TQFT_NAMES),
        },
        Format::Json => {
            let mut v = json!({
                "kind": if starred { "dt-starred" } else { "dt" },
                "genus": g,
                "level": [k1, k2],
                "degree": d,
                "insertions": ins.iter().map(partition_json).collect::<Vec<_>>(),
                "variables": TQFT_NAMES,
                "series": series_json(&series, TQFT_NAMES),
            });
            if let Some(h) = half {
                v["neg_q_half_power"] = json!(h);
            }
            pretty(&v)
        }
    };
    Ok(Report::ok(text))
}

enum VertexFrame {
    Standard,
    Solver,
    Custom([RatFunc; 3]),
}

fn parse_frame(s: &str) -> Result<(VertexFrame, bool), Failure> {
    let t = s.trim();
    match t {
        "standard" | "general" => return Ok((VertexFrame::Standard, false)),
        "solver" => return Ok((VertexFrame::Solver, false)),
        "cy" => return Ok((VertexFrame::Solver, true)),
        _ => {}
    }
    let inner = t
        .strip_prefix("custom(")
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| usage(format!("unknown frame {:?}", s)))?;
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&inner[start..]);
    if parts.len() != 3 {
        return Err(usage("custom frame needs three weights"));
    }
    let w: Vec<RatFunc> = parts
        .iter()
        .map(|p| parse_ratfunc(p).map_err(|e| usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    if w.iter().any(RatFunc::is_zero) {
        return Err(usage("custom frame weights must be nonzero"));
    }
    let [a, b, c]: [RatFunc; 3] = w.try_into().expect("three weights");
    Ok((VertexFrame::Custom([a, b, c]), false))
}

fn cmd_vertex(
    d: u32,
    qmax: i64,
    frame: &str,
    cy: bool,
    unreduced: bool,
    format: Format,
    err: &mut dyn Write,
) -> Result<Report, Failure> {
    check_qmax(qmax)?;
    if d > VERTEX_DMAX {
        return Err(usage(format!("vertex degree is limited to {}", VERTEX_DMAX)));
    }
    let (frame, frame_cy) = parse_frame(frame)?;
    let cy = cy || frame_cy;
    if cy && unreduced {
        return Err(usage("--unreduced does not combine with the cy frame"));
    }
    let _ = writeln!(err, "solving the degree {} vertex through q^{}", d, qmax);
    let solved = solve_vertex(d, qmax)?;
    let mut rows: Vec<(Partition, Series)> = Vec::new();
    for w in solved {
        let w: VertexSeries = if unreduced { w.unreduced()? } else { w };
        let value = if cy {
            w.calabi_yau()?
        } else {
            match &frame {
                VertexFrame::Solver => w.value.clone(),
                VertexFrame::Standard => w.to_general().value,
                VertexFrame::Custom([a, b, c]) => {
                    let sub = [(Var::S, a.clone()), (Var::T1, b.clone()), (Var::T2, c.clone())];
                    w.to_general().value.try_map(|x| x.try_substitute_all(&sub))?
                }
            }
        };
        rows.push((w.profile.clone(), value));
    }
    let (label, names) = match (&frame, cy) {
        (_, true) => ("cy", TQFT_NAMES),
        (VertexFrame::Standard, _) => ("standard", GENERAL_NAMES),
        (VertexFrame::Solver, _) => ("solver", TQFT_NAMES),
        (VertexFrame::Custom(_), _) => ("custom", TQFT_NAMES),
    };
    let text = match format {
        Format::Text => rows
            .iter()
            .map(|(p, s)| format!("{}: {}", p, series_text(s, names)))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => pretty(&json!({
            "kind": "vertex",
            "degree": d,
            "frame": label,
            "reduced": !unreduced,
            "variables": names,
            "vertices": rows
                .iter()
                .map(|(p, s)| json!({"profile": partition_json(p), "series": series_json(s, names)}))
                .collect::<Vec<_>>(),
        })),
    };
    Ok(Report::ok(text))
}

fn cmd_check(
    suite: &str,
    dmax: Option<u32>,
    qmax: Option<i64>,
    format: Format,
    err: &mut dyn Write,
) -> Result<Report, Failure> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().map(|s| s.0).collect()
    } else if SUITES.iter().any(|s| s.0 == suite) {
        vec![suite]
    } else {
        let known: Vec<&str> = SUITES.iter().map(|s| s.0).collect();
        return Err(usage(format!("unknown suite {:?}; known: all, {}", suite, known.join(", "))));
    };
    if let Some(q) = qmax {
        check_qmax(q)?;
    }
    let mut results: Vec<(&str, Vec<Outcome>)> = Vec::new();
    for name in names {
        let _ = writeln!(err, "running {}", name);
        results.push((name, checks::run(name, dmax, qmax)?));
    }
    let passed = results.iter().all(|(_, o)| o.iter().all(|x| x.passed));
    let text = match format {
        Format::Text => {
            let mut lines = Vec::new();
            for (name, outs) in &results {
                for o in outs {
                    let mut l = format!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, name, o.name);
                    if !o.passed {
                        l.push_str(&format!(" [{}]", o.detail));
                    }
                    lines.push(l);
                }
            }
            lines.join("\n")
        }
        Format::Json => pretty(&json!({
            "passed": passed,
            "suites": results
                .iter()
                .map(|(name, outs)| json!({
                    "suite": name,
                    "outcomes": outs
                        .iter()
                        .map(|o| json!({"name": o.name, "passed": o.passed, "detail": o.detail}))
                        .collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
        })),
    };
    Ok(Report {
        text,
        code: if passed { EXIT_OK } else { EXIT_CHECK },
    })
}

fn cmd_boxcount(leg: &Partition, vmax: u32, format: Format) -> Report {
    let c = counts(leg, vmax);
    let full = cy_vertex(leg, vmax);
    let reduced = cy_vertex_reduced(leg, vmax);
    let text = match format {
        Format::Text => {
            let mut lines: Vec<String> = c.iter().enumerate().map(|(n, k)| format!("{} {}", n, k)).collect();
            lines.push(format!("series: {}", series_text(&full, TQFT_NAMES)));
            lines.push(format!("reduced: {}", series_text(&reduced, TQFT_NAMES)));
            lines.join("\n")
        }
        Format::Json => pretty(&json!({
            "kind": "boxcount",
            "leg": partition_json(leg),
            "counts": c,
            "series": series_json(&full, TQFT_NAMES),
            "reduced": series_json(&reduced, TQFT_NAMES),
        })),
    };
    Report::ok(text)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}
