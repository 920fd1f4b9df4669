//! Command-line front end: subcommands over the library, plus the text
//! formats they read and write (system configs, set files, raster images).
//!
//! Exit codes: 0 success, 1 a measured check failed, 2 bad input
//! (arguments, config files, set files), 3 a budget ran out before any
//! verdict could be reached.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::attractors::{
    check_conley, check_global_equivalences, check_one_sided_attraction, check_sf_attraction,
    check_sf_minimum, check_stability, GlobalCheckParams,
};
use crate::chaos::{chaos_orbit, tail_set, verify_chaos_game, ChaosGameParams};
use crate::corpus;
use crate::error::{Error, Result};
use crate::hutchinson::{bh_apply, bh_iterate, max_fixed_point, FixedPointRecord};
use crate::maps::{IFSystem, MapDescriptor};
use crate::sets::{
    hausdorff, one_sided, BoxDomain, ConvergenceReport, ConvergenceStatus, GridSet, Point,
};
use crate::symbolic::{semifractal_approx, target_sample, SymbolStream, Word};

/// Grid experiments for iterated function systems.
#[derive(Parser, Debug)]
#[command(name = "ifs", version, about = "Iterate, certify and classify set dynamics on grids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Where the system comes from: a built-in example or a config file.
#[derive(Args, Debug)]
pub struct Source {
    /// Name of a built-in example system.
    #[arg(long, value_name = "NAME", conflicts_with = "config")]
    pub example: Option<String>,

    /// Path to a system config file.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

/// Grid resolution and tolerance, overriding config-file values.
#[derive(Args, Debug)]
pub struct Geometry {
    /// Cells per axis (1D: total cells, power of two; 2D: per axis).
    #[arg(long, value_name = "N")]
    pub grid: Option<usize>,

    /// Distance tolerance; must be at least one cell width.
    #[arg(long, value_name = "D")]
    pub tol: Option<f64>,
}

/// Directory receiving generated files.
#[derive(Args, Debug)]
pub struct OutDir {
    /// Output directory for traces and images.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Iterate the set operator and record the distance trace.
    Iterate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        geom: Geometry,
        /// Iteration budget.
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Start from this point instead of the whole domain.
        #[arg(long, value_name = "X[,Y]")]
        start: Option<String>,
        /// Write the final set to this file.
        #[arg(long, value_name = "FILE")]
        save_set: Option<PathBuf>,
        #[command(flatten)]
        outdir: OutDir,
    },
    /// Shrink the whole domain to the largest fixed set.
    Maxfix {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        geom: Geometry,
        /// Iteration budget.
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// Write the final set to this file.
        #[arg(long, value_name = "FILE")]
        save_set: Option<PathBuf>,
        #[command(flatten)]
        outdir: OutDir,
    },
    /// Enumerate target points with certified contraction prefixes.
    Target {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        geom: Geometry,
        /// Longest word tried.
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        /// Enclosure diameter that counts as certified.
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        #[command(flatten)]
        outdir: OutDir,
    },
    /// Grow the smallest limit set from one certified target point.
    Semifractal {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        geom: Geometry,
        /// Iteration budget.
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// Longest word tried while looking for a seed point.
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        /// Enclosure diameter that counts as certified.
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        /// Write the final set to this file.
        #[arg(long, value_name = "FILE")]
        save_set: Option<PathBuf>,
        #[command(flatten)]
        outdir: OutDir,
    },
    /// Run the full battery of structure checks and report one line each.
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        geom: Geometry,
        /// Iteration budget per check.
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// Longest word tried while looking for seed points.
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        /// Enclosure diameter that counts as certified.
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        /// Seed for the randomized attraction trials.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Drive a random orbit and compare its tails with the limit set.
    Chaos {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        geom: Geometry,
        /// Orbit length.
        #[arg(long, default_value_t = 200_000)]
        orbit_len: usize,
        /// Tail starting indices (default: powers of two up to half the
        /// orbit).
        #[arg(long, value_name = "L,L,...", value_delimiter = ',')]
        tail: Vec<usize>,
        /// Start the orbit at this point (default: upper domain corner).
        #[arg(long, value_name = "X[,Y]")]
        start: Option<String>,
        /// Drive the orbit with this repeating word.
        #[arg(long, value_name = "WORD", conflicts_with = "seed")]
        word: Option<String>,
        /// Drive the orbit with seeded random symbols instead of the
        /// canonical enumeration of all words.
        #[arg(long)]
        seed: Option<u64>,
        /// Iteration budget for growing the reference limit set.
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// Longest word tried while looking for a seed point.
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        /// Enclosure diameter that counts as certified.
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        /// Measure the tails even when the stability hypothesis was not
        /// witnessed.
        #[arg(long)]
        override_hypothesis: bool,
        #[command(flatten)]
        outdir: OutDir,
    },
    /// Render a stored set to a grayscale image.
    Render {
        /// Set file to draw.
        #[arg(long, value_name = "FILE")]
        set: PathBuf,
        /// Second set file; with it the output is a color overlay.
        #[arg(long, value_name = "FILE")]
        overlay: Option<PathBuf>,
        /// Image file to write.
        #[arg(long, value_name = "FILE")]
        to: PathBuf,
    },
    /// Distance between two stored sets.
    Hausdorff {
        /// First set file.
        #[arg(long, value_name = "FILE")]
        set_a: PathBuf,
        /// Second set file.
        #[arg(long, value_name = "FILE")]
        set_b: PathBuf,
    },
}

/// Entry point used by the binary: parses real arguments, talks to real
/// stdout, and turns the outcome into an exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    run_command(cli, &mut stdout)
}

/// Drives one parsed invocation and maps errors to exit codes; split from
/// argument parsing so tests can call it with a capture buffer.
pub fn run_command(cli: Cli, out: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for an error: 2 for bad input, 3 for exhausted budgets, 1
/// for everything else.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config { .. }
        | Error::Usage(_)
        | Error::UnknownExample(_)
        | Error::SetFile(_)
        | Error::InvalidMap(_)
        | Error::InvalidDomain(_)
        | Error::InvalidWeights(_)
        | Error::SymbolOutOfRange { .. }
        | Error::PointOutsideDomain { .. }
        | Error::BoxOutsideDomain
        | Error::IncompatibleGrids
        | Error::TailOutOfRange { .. }
        | Error::EmptySet
        | Error::Io(_) => 2,
        Error::HypothesisUnmet(_) | Error::NoCertificate | Error::StreamExhausted { .. } => 3,
        _ => 1,
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Iterate { source, geom, steps, start, save_set, outdir } => {
            let (system, defaults, _) = source.resolve()?;
            let (res, tol) = resolve_geometry(&system, &defaults, &geom)?;
            cmd_iterate(&system, res, tol, steps, start, save_set, &outdir.out, out)
        }
        Command::Maxfix { source, geom, steps, save_set, outdir } => {
            let (system, defaults, _) = source.resolve()?;
            let (res, tol) = resolve_geometry(&system, &defaults, &geom)?;
            cmd_maxfix(&system, res, tol, steps, save_set, &outdir.out, out)
        }
        Command::Target { source, geom, max_len, eps, outdir } => {
            let (system, defaults, _) = source.resolve()?;
            let (res, _) = resolve_geometry(&system, &defaults, &geom)?;
            cmd_target(&system, res, max_len, eps, &outdir.out, out)
        }
        Command::Semifractal { source, geom, steps, max_len, eps, save_set, outdir } => {
            let (system, defaults, _) = source.resolve()?;
            let (res, tol) = resolve_geometry(&system, &defaults, &geom)?;
            cmd_semifractal(&system, res, tol, steps, max_len, eps, save_set, &outdir.out, out)
        }
        Command::Verify { source, geom, steps, max_len, eps, seed } => {
            let (system, defaults, name) = source.resolve()?;
            let (res, tol) = resolve_geometry(&system, &defaults, &geom)?;
            cmd_verify(&system, name.as_deref(), res, tol, steps, max_len, eps, seed, out)
        }
        Command::Chaos {
            source,
            geom,
            orbit_len,
            tail,
            start,
            word,
            seed,
            steps,
            max_len,
            eps,
            override_hypothesis,
            outdir,
        } => {
            let (system, defaults, _) = source.resolve()?;
            let (res, tol) = resolve_geometry(&system, &defaults, &geom)?;
            cmd_chaos(
                &system,
                res,
                tol,
                orbit_len,
                tail,
                start,
                word,
                seed,
                steps,
                max_len,
                eps,
                override_hypothesis,
                &outdir.out,
                out,
            )
        }
        Command::Render { set, overlay, to } => cmd_render(&set, overlay.as_deref(), &to, out),
        Command::Hausdorff { set_a, set_b } => cmd_hausdorff(&set_a, &set_b, out),
    }
}

impl Source {
    /// Loads the system, its config-file defaults, and the example name
    /// when one was used.
    pub fn resolve(&self) -> Result<(IFSystem, ConfigDefaults, Option<String>)> {
        match (&self.example, &self.config) {
            (Some(name), None) => {
                let entry = corpus::load_example(name)?;
                Ok((entry.system, ConfigDefaults::default(), Some(name.clone())))
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(path)?;
                let (system, defaults) = parse_config(&text)?;
                Ok((system, defaults, None))
            }
            _ => Err(Error::Usage("exactly one of --example or --config is required".into())),
        }
    }
}

/// Resolution and tolerance taken from a config file, before flag
/// overrides.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConfigDefaults {
    pub grid: Option<[usize; 2]>,
    pub tol: Option<f64>,
}

/// Applies the precedence flag > config line > built-in default, then
/// validates the result.
fn resolve_geometry(
    system: &IFSystem,
    defaults: &ConfigDefaults,
    geom: &Geometry,
) -> Result<([usize; 2], f64)> {
    let dim = system.domain().dim();
    let res = match (geom.grid, defaults.grid) {
        (Some(n), _) => {
            if dim == 1 {
                [n, 1]
            } else {
                [n, n]
            }
        }
        (None, Some(r)) => r,
        (None, None) => {
            if dim == 1 {
                [1 << 14, 1]
            } else {
                [512, 512]
            }
        }
    };
    validate_res(dim, res)?;
    let bounds = system.domain().bounds();
    let mut cell_w: f64 = (bounds.hi[0] - bounds.lo[0]) / res[0] as f64;
    if dim == 2 {
        cell_w = cell_w.max((bounds.hi[1] - bounds.lo[1]) / res[1] as f64);
    }
    let tol = match geom.tol.or(defaults.tol) {
        Some(t) => {
            if !(t >= cell_w) {
                return Err(Error::Usage(format!(
                    "tolerance {t} is below one cell width ({cell_w:.3e}); refine it or coarsen the grid"
                )));
            }
            t
        }
        None => 4.0 * cell_w,
    };
    Ok((res, tol))
}

/// Resolution limits: one axis of 2^8..2^20 cells in 1D (power of two so
/// dyadic structures land on cell boundaries), 16..2048 per axis in 2D.
fn validate_res(dim: usize, res: [usize; 2]) -> Result<()> {
    if dim == 1 {
        if !res[0].is_power_of_two() || !(256..=1_048_576).contains(&res[0]) || res[1] != 1 {
            return Err(Error::Usage(format!(
                "1D grids need a power-of-two cell count between 256 and 1048576; got {}",
                res[0]
            )));
        }
    } else {
        for n in res {
            if !(16..=2048).contains(&n) {
                return Err(Error::Usage(format!(
                    "2D grids need between 16 and 2048 cells per axis; got {n}"
                )));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Config files.

/// Parses a system config.  The grammar is line-oriented; `#` starts a
/// comment and blank lines are skipped:
///
/// ```text
/// domain 1 <lo> <hi>                       # or: domain 2 <x0> <y0> <x1> <y1>
/// map <name> affine <a> <b>                # 1D x -> a*x + b
/// map <name> affine <a11> <a12> <a21> <a22> <b1> <b2>
/// map <name> pwl (x0,y0) (x1,y1) ...       # 1D piecewise linear
/// map <name> quad <a> <b> <c>              # 1D x -> a*x^2 + b*x + c
/// map <name> compose <g> <h> ...           # g . h . ..., rightmost acts first
/// weights <w1> <w2> ...                    # optional, must sum to 1
/// grid <n>                                 # or: grid <nx> <ny>
/// tol <d>
/// ```
///
/// The domain must precede the maps; `compose` refers to maps already
/// defined above it.
pub fn parse_config(text: &str) -> Result<(IFSystem, ConfigDefaults)> {
    let mut domain: Option<BoxDomain> = None;
    let mut named: Vec<(String, MapDescriptor)> = Vec::new();
    let mut weights: Option<(usize, Vec<f64>)> = None;
    let mut defaults = ConfigDefaults::default();
    let mut last_line = 1;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        last_line = lineno;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let fail = |msg: String| Error::Config { line: lineno, msg };
        let num = |tok: &str| -> Result<f64> {
            tok.parse::<f64>().map_err(|_| fail(format!("bad number {tok:?}")))
        };
        match tokens[0] {
            "domain" => {
                if domain.is_some() {
                    return Err(fail("domain declared twice".into()));
                }
                let d = match tokens.len() {
                    4 if tokens[1] == "1" => {
                        BoxDomain::new_1d(num(tokens[2])?, num(tokens[3])?)
                    }
                    6 if tokens[1] == "2" => BoxDomain::new_2d(
                        [num(tokens[2])?, num(tokens[3])?],
                        [num(tokens[4])?, num(tokens[5])?],
                    ),
                    _ => {
                        return Err(fail(
                            "expected `domain 1 <lo> <hi>` or `domain 2 <x0> <y0> <x1> <y1>`"
                                .into(),
                        ))
                    }
                };
                domain = Some(d.map_err(|e| fail(e.to_string()))?);
            }
            "map" => {
                let dom = domain
                    .ok_or_else(|| fail("the domain must be declared before any map".into()))?;
                if tokens.len() < 3 {
                    return Err(fail("expected `map <name> <kind> <params...>`".into()));
                }
                let name = tokens[1];
                if named.iter().any(|(n, _)| n == name) {
                    return Err(fail(format!("map {name:?} declared twice")));
                }
                let params = &tokens[3..];
                let built = match tokens[2] {
                    "affine" => match (dom.dim(), params.len()) {
                        (1, 2) => MapDescriptor::affine_1d(dom, num(params[0])?, num(params[1])?),
                        (2, 6) => MapDescriptor::affine_2d(
                            dom,
                            [
                                [num(params[0])?, num(params[1])?],
                                [num(params[2])?, num(params[3])?],
                            ],
                            [num(params[4])?, num(params[5])?],
                        ),
                        (d, n) => {
                            return Err(fail(format!(
                                "affine needs 2 parameters in 1D or 6 in 2D; got {n} in {d}D"
                            )))
                        }
                    },
                    "pwl" => {
                        if dom.dim() != 1 {
                            return Err(fail("pwl maps are one-dimensional".into()));
                        }
                        let mut vertices = Vec::with_capacity(params.len());
                        for tok in params {
                            let inner = tok
                                .strip_prefix('(')
                                .and_then(|t| t.strip_suffix(')'))
                                .and_then(|t| t.split_once(','))
                                .ok_or_else(|| {
                                    fail(format!("vertex {tok:?} must look like (x,y)"))
                                })?;
                            vertices.push((num(inner.0)?, num(inner.1)?));
                        }
                        MapDescriptor::piecewise_linear(dom, vertices)
                    }
                    "quad" => {
                        if dom.dim() != 1 {
                            return Err(fail("quad maps are one-dimensional".into()));
                        }
                        if params.len() != 3 {
                            return Err(fail(format!(
                                "quad needs 3 parameters; got {}",
                                params.len()
                            )));
                        }
                        MapDescriptor::quadratic(dom, num(params[0])?, num(params[1])?, num(params[2])?)
                    }
                    "compose" => {
                        if params.is_empty() {
                            return Err(fail("compose needs at least one map name".into()));
                        }
                        let mut parts = Vec::with_capacity(params.len());
                        for part in params {
                            let found = named
                                .iter()
                                .find(|(n, _)| n == part)
                                .map(|(_, m)| m.clone())
                                .ok_or_else(|| {
                                    fail(format!("compose refers to unknown map {part:?}"))
                                })?;
                            parts.push(found);
                        }
                        MapDescriptor::composite(parts)
                    }
                    other => return Err(fail(format!("unknown map kind {other:?}"))),
                };
                named.push((name.to_string(), built.map_err(|e| fail(e.to_string()))?));
            }
            "weights" => {
                if weights.is_some() {
                    return Err(fail("weights declared twice".into()));
                }
                let mut w = Vec::with_capacity(tokens.len() - 1);
                for tok in &tokens[1..] {
                    w.push(num(tok)?);
                }
                if w.is_empty() {
                    return Err(fail("weights needs at least one value".into()));
                }
                weights = Some((lineno, w));
            }
            "grid" => {
                let parse_n = |tok: &str| -> Result<usize> {
                    tok.parse::<usize>().map_err(|_| fail(format!("bad cell count {tok:?}")))
                };
                defaults.grid = Some(match tokens.len() {
                    2 => [parse_n(tokens[1])?, 1],
                    3 => [parse_n(tokens[1])?, parse_n(tokens[2])?],
                    _ => return Err(fail("expected `grid <n>` or `grid <nx> <ny>`".into())),
                });
            }
            "tol" => {
                if tokens.len() != 2 {
                    return Err(fail("expected `tol <d>`".into()));
                }
                defaults.tol = Some(num(tokens[1])?);
            }
            other => return Err(fail(format!("unknown directive {other:?}"))),
        }
    }

    let domain = domain.ok_or(Error::Config {
        line: last_line,
        msg: "no domain declared".into(),
    })?;
    if named.is_empty() {
        return Err(Error::Config { line: last_line, msg: "no maps declared".into() });
    }
    let weight_line = weights.as_ref().map(|(l, _)| *l).unwrap_or(last_line);
    let maps = named.into_iter().map(|(_, m)| m).collect();
    let system = IFSystem::new(domain, maps, weights.map(|(_, w)| w)).map_err(|e| match e {
        Error::InvalidWeights(msg) => Error::Config { line: weight_line, msg },
        other => Error::Config { line: last_line, msg: other.to_string() },
    })?;
    Ok((system, defaults))
}

// ---------------------------------------------------------------------------
// Set files.

/// Serializes a grid set to the line-oriented set-file format:
///
/// ```text
/// dim 1
/// domain 0 2
/// grid 16384
/// cells 0-80 162 300-400
/// ```
///
/// `cells` lines list linear cell indices (row-major in 2D) as single
/// values or inclusive ranges; numbers round-trip exactly.
pub fn set_to_string(set: &GridSet) -> String {
    let mut s = String::new();
    let b = set.domain().bounds();
    let [nx, ny] = set.res();
    let _ = writeln!(s, "dim {}", set.dim());
    if set.dim() == 1 {
        let _ = writeln!(s, "domain {} {}", b.lo[0], b.hi[0]);
        let _ = writeln!(s, "grid {nx}");
    } else {
        let _ = writeln!(s, "domain {} {} {} {}", b.lo[0], b.lo[1], b.hi[0], b.hi[1]);
        let _ = writeln!(s, "grid {nx} {ny}");
    }
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for cell in set.iter_cells() {
        match runs.last_mut() {
            Some((_, hi)) if *hi + 1 == cell => *hi = cell,
            _ => runs.push((cell, cell)),
        }
    }
    for chunk in runs.chunks(16) {
        let mut line = String::from("cells");
        for &(lo, hi) in chunk {
            if lo == hi {
                let _ = write!(line, " {lo}");
            } else {
                let _ = write!(line, " {lo}-{hi}");
            }
        }
        let _ = writeln!(s, "{line}");
    }
    s
}

/// Parses the set-file format produced by [`set_to_string`].
pub fn set_from_str(text: &str) -> Result<GridSet> {
    let mut dim: Option<usize> = None;
    let mut corners: Option<Vec<f64>> = None;
    let mut res: Option<[usize; 2]> = None;
    let mut cells: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |msg: String| Error::SetFile(format!("line {lineno}: {msg}"));
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "dim" => {
                dim = Some(match tokens.get(1) {
                    Some(&"1") => 1,
                    Some(&"2") => 2,
                    _ => return Err(fail("dim must be 1 or 2".into())),
                });
            }
            "domain" => {
                let mut vals = Vec::with_capacity(tokens.len() - 1);
                for tok in &tokens[1..] {
                    vals.push(
                        tok.parse::<f64>().map_err(|_| fail(format!("bad number {tok:?}")))?,
                    );
                }
                corners = Some(vals);
            }
            "grid" => {
                let parse_n = |tok: &&str| -> Result<usize> {
                    tok.parse::<usize>().map_err(|_| fail(format!("bad cell count {tok:?}")))
                };
                res = Some(match tokens.len() {
                    2 => [parse_n(&tokens[1])?, 1],
                    3 => [parse_n(&tokens[1])?, parse_n(&tokens[2])?],
                    _ => return Err(fail("expected `grid <n>` or `grid <nx> <ny>`".into())),
                });
            }
            "cells" => {
                for tok in &tokens[1..] {
                    let parse_idx = |t: &str| -> Result<usize> {
                        t.parse::<usize>().map_err(|_| fail(format!("bad cell index {t:?}")))
                    };
                    match tok.split_once('-') {
                        Some((lo, hi)) => {
                            let (lo, hi) = (parse_idx(lo)?, parse_idx(hi)?);
                            if hi < lo {
                                return Err(fail(format!("backwards range {tok:?}")));
                            }
                            cells.extend(lo..=hi);
                        }
                        None => cells.push(parse_idx(tok)?),
                    }
                }
            }
            other => return Err(fail(format!("unknown directive {other:?}"))),
        }
    }

    let dim = dim.ok_or_else(|| Error::SetFile("missing dim line".into()))?;
    let corners = corners.ok_or_else(|| Error::SetFile("missing domain line".into()))?;
    let res = res.ok_or_else(|| Error::SetFile("missing grid line".into()))?;
    let domain = match (dim, corners.len()) {
        (1, 2) => BoxDomain::new_1d(corners[0], corners[1]),
        (2, 4) => BoxDomain::new_2d([corners[0], corners[1]], [corners[2], corners[3]]),
        (d, n) => {
            return Err(Error::SetFile(format!("domain has {n} corners for dimension {d}")))
        }
    }
    .map_err(|e| Error::SetFile(e.to_string()))?;
    if dim == 1 && res[1] != 1 {
        return Err(Error::SetFile("1D sets need a single-axis grid".into()));
    }
    GridSet::from_cells(domain, res, &cells)
        .map_err(|e| Error::SetFile(format!("bad cell list: {e}")))
}

/// Writes a set file.
pub fn save_set_file(set: &GridSet, path: &Path) -> Result<()> {
    fs::write(path, set_to_string(set))?;
    Ok(())
}

/// Reads a set file.
pub fn load_set_file(path: &Path) -> Result<GridSet> {
    set_from_str(&fs::read_to_string(path)?)
}

// ---------------------------------------------------------------------------
// Images.

/// Height of the strip used to draw 1D sets.
const STRIP_ROWS: usize = 32;

/// Image rows top to bottom, as (width, rows of cell indices).  1D sets
/// become a repeated strip; 2D images put high second coordinates at the
/// top.
fn raster_rows(set: &GridSet) -> (usize, usize) {
    let [nx, ny] = set.res();
    if set.dim() == 1 {
        (nx, STRIP_ROWS)
    } else {
        (nx, ny)
    }
}

fn cell_at_pixel(set: &GridSet, col: usize, row: usize) -> usize {
    let [nx, ny] = set.res();
    if set.dim() == 1 {
        col
    } else {
        (ny - 1 - row) * nx + col
    }
}

/// Renders a set as a binary PGM image: set cells are black ink on a
/// white page.
pub fn write_pgm(set: &GridSet, path: &Path) -> Result<()> {
    let (w, h) = raster_rows(set);
    let mut buf = format!("P5\n{w} {h}\n255\n").into_bytes();
    buf.reserve(w * h);
    for row in 0..h {
        for col in 0..w {
            let ink = set.contains_cell(cell_at_pixel(set, col, row));
            buf.push(if ink { 0 } else { 255 });
        }
    }
    fs::write(path, buf)?;
    Ok(())
}

/// Renders two compatible sets as one PPM overlay: the first set draws
/// red, the second green, their intersection dark, the rest white.
pub fn write_ppm_overlay(a: &GridSet, b: &GridSet, path: &Path) -> Result<()> {
    a.check_compatible(b)?;
    let (w, h) = raster_rows(a);
    let mut buf = format!("P6\n{w} {h}\n255\n").into_bytes();
    buf.reserve(3 * w * h);
    for row in 0..h {
        for col in 0..w {
            let cell = cell_at_pixel(a, col, row);
            let rgb: [u8; 3] = match (a.contains_cell(cell), b.contains_cell(cell)) {
                (true, true) => [40, 40, 40],
                (true, false) => [200, 30, 30],
                (false, true) => [30, 140, 30],
                (false, false) => [255, 255, 255],
            };
            buf.extend_from_slice(&rgb);
        }
    }
    fs::write(path, buf)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Shared output helpers.

/// Sixteen fractional digits of scientific notation: seventeen
/// significant digits, enough to reproduce any f64 exactly.
fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_point(spec: &str, dim: usize) -> Result<Point> {
    let parts: Vec<&str> = spec.split(',').collect();
    let parse = |tok: &str| -> Result<f64> {
        tok.trim()
            .parse::<f64>()
            .map_err(|_| Error::Usage(format!("bad coordinate {tok:?} in point {spec:?}")))
    };
    match (dim, parts.len()) {
        (1, 1) => Ok([parse(parts[0])?, 0.0]),
        (2, 2) => Ok([parse(parts[0])?, parse(parts[1])?]),
        _ => Err(Error::Usage(format!(
            "point {spec:?} has {} coordinates for a {dim}D domain",
            parts.len()
        ))),
    }
}

fn write_trace_csv(path: &Path, report: &ConvergenceReport) -> Result<()> {
    let mut text = String::from("step,dist,forward,backward\n");
    for s in &report.iterations {
        let _ = writeln!(text, "{},{},{},{}", s.step, sci(s.d_h), sci(s.forward), sci(s.backward));
    }
    fs::write(path, text)?;
    Ok(())
}

fn report_convergence(report: &ConvergenceReport, out: &mut dyn Write) -> Result<()> {
    match report.status {
        ConvergenceStatus::Converged => writeln!(
            out,
            "status: converged (stable since step {})",
            report.converged_since.unwrap_or(0)
        )?,
        ConvergenceStatus::BudgetExhausted => writeln!(out, "status: budget exhausted")?,
    }
    writeln!(out, "iterations: {}", report.iterations.len())?;
    if let Some(last) = report.iterations.last() {
        writeln!(out, "final distance: {}", sci(last.d_h))?;
    }
    writeln!(out, "final cells: {}", report.final_set.cell_count())?;
    Ok(())
}

fn ensure_outdir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Commands.

#[allow(clippy::too_many_arguments)]
fn cmd_iterate(
    system: &IFSystem,
    res: [usize; 2],
    tol: f64,
    steps: usize,
    start: Option<String>,
    save_set: Option<PathBuf>,
    outdir: &Path,
    out: &mut dyn Write,
) -> Result<i32> {
    let start_set = match start {
        Some(spec) => {
            let p = parse_point(&spec, system.domain().dim())?;
            GridSet::singleton(system.domain(), res, p)?
        }
        None => GridSet::full(system.domain(), res),
    };
    let report = bh_iterate(system, &start_set, steps.max(1), tol)?;
    ensure_outdir(outdir)?;
    write_trace_csv(&outdir.join("iterate.csv"), &report)?;
    if let Some(path) = save_set {
        save_set_file(&report.final_set, &path)?;
    }
    report_convergence(&report, out)?;
    Ok(0)
}

fn cmd_maxfix(
    system: &IFSystem,
    res: [usize; 2],
    tol: f64,
    steps: usize,
    save_set: Option<PathBuf>,
    outdir: &Path,
    out: &mut dyn Write,
) -> Result<i32> {
    let (record, report) = max_fixed_point(system, res, steps.max(1), tol)?;
    ensure_outdir(outdir)?;
    write_trace_csv(&outdir.join("maxfix.csv"), &report)?;
    write_pgm(&record.set, &outdir.join("maxfix.pgm"))?;
    if let Some(path) = save_set {
        save_set_file(&record.set, &path)?;
    }
    report_convergence(&report, out)?;
    writeln!(out, "residual: {}", sci(record.residual))?;
    writeln!(out, "forward invariant: {}", record.is_forward_invariant)?;
    writeln!(out, "fixed within tolerance: {}", record.is_fixed_within_tolerance)?;
    Ok(if record.is_fixed_within_tolerance { 0 } else { 3 })
}

fn cmd_target(
    system: &IFSystem,
    res: [usize; 2],
    max_len: usize,
    eps: f64,
    outdir: &Path,
    out: &mut dyn Write,
) -> Result<i32> {
    let sample = target_sample(system, max_len, eps, res)?;
    ensure_outdir(outdir)?;
    let mut text = String::from("word,x,y,radius\n");
    for p in &sample {
        let _ = writeln!(
            text,
            "{},{},{},{}",
            p.word,
            sci(p.point[0]),
            sci(p.point[1]),
            sci(p.radius)
        );
    }
    fs::write(outdir.join("target.csv"), text)?;
    writeln!(out, "certified points: {}", sample.len())?;
    if let Some(longest) = sample.iter().map(|p| p.word.len()).max() {
        writeln!(out, "longest word: {longest}")?;
    }
    Ok(0)
}

/// The no-seed-point failure shared by the commands that must grow a
/// limit set before they can do anything else.
fn no_semifractal() -> Error {
    Error::HypothesisUnmet(
        "no weakly hyperbolic prefix certified at budget: no semifractal".into(),
    )
}

#[allow(clippy::too_many_arguments)]
fn cmd_semifractal(
    system: &IFSystem,
    res: [usize; 2],
    tol: f64,
    steps: usize,
    max_len: usize,
    eps: f64,
    save_set: Option<PathBuf>,
    outdir: &Path,
    out: &mut dyn Write,
) -> Result<i32> {
    let sample = target_sample(system, max_len, eps, res)?;
    let seed = sample.first().ok_or_else(no_semifractal)?;
    let report = semifractal_approx(system, seed, res, steps.max(1), tol)?;
    ensure_outdir(outdir)?;
    write_trace_csv(&outdir.join("semifractal.csv"), &report)?;
    write_pgm(&report.final_set, &outdir.join("semifractal.pgm"))?;
    if let Some(path) = save_set {
        save_set_file(&report.final_set, &path)?;
    }
    writeln!(out, "seed word: {}", seed.word)?;
    writeln!(out, "seed point: ({}, {})", sci(seed.point[0]), sci(seed.point[1]))?;
    report_convergence(&report, out)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    system: &IFSystem,
    example: Option<&str>,
    res: [usize; 2],
    tol: f64,
    steps: usize,
    max_len: usize,
    eps: f64,
    seed: u64,
    out: &mut dyn Write,
) -> Result<i32> {
    let mut consistent = true;

    if let Some(name) = example {
        writeln!(out, "example: {name}")?;
        let conditions = corpus::verify_example_conditions(name)?;
        for item in &conditions.items {
            writeln!(out, "{item}")?;
        }
        consistent &= conditions.passed();
    }

    let sample = target_sample(system, max_len, eps, res)?;
    writeln!(out, "certified target points: {}", sample.len())?;
    let seed_point = match sample.first() {
        Some(p) => p,
        None => {
            writeln!(out, "limit-set checks skipped: no certified target points")?;
            writeln!(out, "verdict: {}", if consistent { "CONSISTENT" } else { "INCONSISTENT" })?;
            return Ok(if consistent { 0 } else { 1 });
        }
    };

    let steps = steps.max(1);
    let sf_report = semifractal_approx(system, seed_point, res, steps, tol)?;
    let sf = sf_report.final_set.clone();
    writeln!(
        out,
        "semifractal: {} cells after {} iterations",
        sf.cell_count(),
        sf_report.iterations.len()
    )?;

    let (max_record, _) = max_fixed_point(system, res, steps, tol)?;
    writeln!(
        out,
        "maximal fixed set: {} cells, residual {}",
        max_record.set.cell_count(),
        sci(max_record.residual)
    )?;

    let sf_image = bh_apply(system, &sf)?;
    let sf_residual = hausdorff(&sf_image, &sf)?;
    let sf_record = FixedPointRecord {
        residual: sf_residual,
        is_forward_invariant: sf_image.is_subset_of(&sf)?,
        is_fixed_within_tolerance: sf_residual <= tol,
        set: sf.clone(),
    };
    let minimum = check_sf_minimum(&sf, &[sf_record, max_record], tol)?;
    for item in &minimum.items {
        writeln!(out, "{item}")?;
    }
    consistent &= minimum.passed();

    let attraction = check_sf_attraction(system, &sf, 3, steps, tol, seed)?;
    for item in &attraction.items {
        writeln!(out, "{item}")?;
    }
    consistent &= attraction.passed();

    let far_corner = system.domain().bounds().hi;
    let far_start = GridSet::singleton(system.domain(), res, far_corner)?;
    let attraction = check_one_sided_attraction(system, &sf, &far_start, steps.min(80), tol)?;
    match attraction.threshold {
        Some(t) => writeln!(
            out,
            "one-sided attraction: reached at step {t} (final {})",
            sci(*attraction.forward.last().unwrap_or(&f64::NAN))
        )?,
        None => writeln!(out, "one-sided attraction: not reached within budget")?,
    }

    let conley_eps = 0.05f64.max(2.0 * sf.cell_diagonal());
    let conley = check_conley(system, &sf, conley_eps, steps, tol)?;
    writeln!(out, "conley: {conley}")?;

    let stability = check_stability(system, &sf, 0.05f64.max(2.0 * sf.cell_diagonal()), steps, 3)?;
    writeln!(out, "stability: {stability}")?;

    let global = check_global_equivalences(
        system,
        GlobalCheckParams { res, eps, max_len, budget: steps, tol, trials: 3, seed },
    )?;
    writeln!(
        out,
        "global minimum equals maximum: {} (distance {})",
        global.minimum_is_maximum,
        sci(global.d_min_max)
    )?;
    writeln!(
        out,
        "global attraction of random sets: {} (worst {})",
        global.global_attraction,
        sci(global.worst_trial_distance)
    )?;
    writeln!(
        out,
        "global: {}",
        if global.consistent { "consistent" } else { "INCONSISTENT" }
    )?;
    consistent &= global.consistent;

    writeln!(out, "verdict: {}", if consistent { "CONSISTENT" } else { "INCONSISTENT" })?;
    Ok(if consistent { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_chaos(
    system: &IFSystem,
    res: [usize; 2],
    tol: f64,
    orbit_len: usize,
    tail: Vec<usize>,
    start: Option<String>,
    word: Option<String>,
    seed: Option<u64>,
    steps: usize,
    max_len: usize,
    eps: f64,
    override_hypothesis: bool,
    outdir: &Path,
    out: &mut dyn Write,
) -> Result<i32> {
    let stream = match (word, seed) {
        (Some(w), _) => SymbolStream::periodic(Word::parse(&w)?)?,
        (None, Some(s)) => {
            let weights = match system.weights() {
                Some(w) => w.to_vec(),
                None => vec![1.0 / system.k() as f64; system.k()],
            };
            SymbolStream::random(s, weights)?
        }
        (None, None) => SymbolStream::disjunctive(system.k())?,
    };
    let x = match start {
        Some(spec) => parse_point(&spec, system.domain().dim())?,
        None => {
            let b = system.domain().bounds();
            [b.hi[0], if system.domain().dim() == 2 { b.hi[1] } else { 0.0 }]
        }
    };
    let params = ChaosGameParams {
        res,
        n: orbit_len,
        ell_schedule: tail,
        tol,
        eps,
        max_len,
        iterate_budget: steps.max(1),
        stability_eps: 0.05,
        stability_budget: steps.max(1),
        stability_shrink: 3,
        override_hypothesis,
    };
    let report = verify_chaos_game(system, x, &stream, &params)?;

    ensure_outdir(outdir)?;
    let mut text = String::from("tail_start,dist\n");
    for &(ell, d) in &report.trace {
        let _ = writeln!(text, "{ell},{}", sci(d));
    }
    fs::write(outdir.join("chaos.csv"), text)?;

    if let Some(&(last_ell, _)) = report.trace.last() {
        let orbit = chaos_orbit(system, x, &stream, orbit_len)?;
        let tail_final = tail_set(system, &orbit, last_ell, res)?;
        write_ppm_overlay(&report.semifractal, &tail_final, &outdir.join("chaos_overlay.ppm"))?;
    }

    writeln!(out, "stability: {}", report.stability)?;
    if let Some(caveat) = &report.caveat {
        writeln!(out, "caveat: {caveat}")?;
    }
    for &(ell, d) in &report.trace {
        writeln!(out, "tail {ell}: {}", sci(d))?;
    }
    writeln!(out, "passed: {}", report.passed)?;
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_render(
    set_path: &Path,
    overlay: Option<&Path>,
    to: &Path,
    out: &mut dyn Write,
) -> Result<i32> {
    let a = load_set_file(set_path)?;
    let (w, h) = raster_rows(&a);
    match overlay {
        Some(second) => {
            let b = load_set_file(second)?;
            write_ppm_overlay(&a, &b, to)?;
        }
        None => write_pgm(&a, to)?,
    }
    writeln!(out, "wrote {} ({w}x{h})", to.display())?;
    Ok(0)
}

fn cmd_hausdorff(path_a: &Path, path_b: &Path, out: &mut dyn Write) -> Result<i32> {
    let a = load_set_file(path_a)?;
    let b = load_set_file(path_b)?;
    let forward = one_sided(&a, &b)?;
    let backward = one_sided(&b, &a)?;
    writeln!(out, "forward: {}", sci(forward))?;
    writeln!(out, "backward: {}", sci(backward))?;
    writeln!(out, "distance: {}", sci(hausdorff(&a, &b)?))?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(args).expect("argument parsing");
        let mut buf = Vec::new();
        let code = run_command(cli, &mut buf);
        (code, String::from_utf8(buf).expect("utf8 output"))
    }

    #[test]
    fn config_matches_handwritten_system() {
        let text = "\
# thirds
domain 1 0 1
map left affine 0.3333333333333333 0
map right affine 0.3333333333333333 0.6666666666666666
grid 4096
tol 0.001
";
        let (system, defaults) = parse_config(text).expect("parse");
        let dom = BoxDomain::new_1d(0.0, 1.0).unwrap();
        let expect = IFSystem::new(
            dom,
            vec![
                MapDescriptor::affine_1d(dom, 1.0 / 3.0, 0.0).unwrap(),
                MapDescriptor::affine_1d(dom, 1.0 / 3.0, 2.0 / 3.0).unwrap(),
            ],
            None,
        )
        .unwrap();
        assert_eq!(system, expect);
        assert_eq!(defaults.grid, Some([4096, 1]));
        assert_eq!(defaults.tol, Some(0.001));
    }

    #[test]
    fn config_supports_every_map_kind() {
        let text = "\
domain 1 0 1
map f1 affine 0.5 0
map f2 pwl (0,0) (0.5,0.7) (1,1)
map f3 quad -1 2 0
map f4 compose f1 f2
weights 0.25 0.25 0.25 0.25
";
        let (system, _) = parse_config(text).expect("parse");
        assert_eq!(system.k(), 4);
        assert_eq!(system.weights(), Some(&[0.25; 4][..]));
        // compose f1 f2 applies f2 first: 0.75 -> 0.85 -> 0.425.
        let y = system.map(4).unwrap().eval([0.75, 0.0]).unwrap();
        assert!((y[0] - 0.425).abs() < 1e-15);
    }

    #[test]
    fn config_errors_carry_line_numbers() {
        let cases: &[(&str, usize, &str)] = &[
            ("domain 1 0 1\nmap f bogus 1 2", 2, "unknown map kind"),
            ("map f affine 0.5 0", 1, "domain must be declared"),
            ("domain 1 0 1\nmap f pwl (0,0 (1,1)", 2, "must look like (x,y)"),
            ("domain 1 0 1\nmap f affine 0.5 0\nmap g affine 0.5 0.5\nweights 0.5 0.6", 4, "sum"),
            ("domain 1 0 1\n\nnonsense 3", 3, "unknown directive"),
            ("domain 1 0 1", 1, "no maps"),
        ];
        for (text, line, needle) in cases {
            match parse_config(text) {
                Err(Error::Config { line: l, msg }) => {
                    assert_eq!(l, *line, "line for {text:?}");
                    assert!(msg.contains(needle), "{msg:?} should contain {needle:?}");
                }
                other => panic!("expected config error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn resolution_limits_are_enforced() {
        assert!(validate_res(1, [1 << 14, 1]).is_ok());
        assert!(validate_res(1, [1000, 1]).is_err());
        assert!(validate_res(1, [128, 1]).is_err());
        assert!(validate_res(1, [1 << 21, 1]).is_err());
        assert!(validate_res(2, [512, 2048]).is_ok());
        assert!(validate_res(2, [4096, 512]).is_err());
        assert!(validate_res(2, [8, 512]).is_err());
    }

    #[test]
    fn set_files_round_trip() {
        let dom = BoxDomain::new_1d(0.0, 2.0).unwrap();
        let set = GridSet::from_cells(dom, [512, 1], &[0, 1, 2, 3, 9, 100, 101, 511]).unwrap();
        let text = set_to_string(&set);
        let back = set_from_str(&text).expect("parse");
        assert_eq!(back, set);
        assert!(text.contains("cells 0-3 9 100-101 511"));

        let dom2 = BoxDomain::new_2d([0.0, 0.0], [1.0, 1.0]).unwrap();
        let set2 = GridSet::from_cells(dom2, [32, 32], &[0, 33, 1023]).unwrap();
        assert_eq!(set_from_str(&set_to_string(&set2)).expect("parse"), set2);
    }

    #[test]
    fn set_file_errors_name_the_problem() {
        assert!(matches!(set_from_str("dim 3"), Err(Error::SetFile(_))));
        assert!(matches!(set_from_str("dim 1\ngrid 256"), Err(Error::SetFile(_))));
        let oob = "dim 1\ndomain 0 1\ngrid 256\ncells 256";
        assert!(matches!(set_from_str(oob), Err(Error::SetFile(_))));
        let backwards = "dim 1\ndomain 0 1\ngrid 256\ncells 9-3";
        assert!(matches!(set_from_str(backwards), Err(Error::SetFile(_))));
    }

    #[test]
    fn pgm_draws_ink_for_set_cells() {
        let dom = BoxDomain::new_1d(0.0, 1.0).unwrap();
        let set = GridSet::from_cells(dom, [256, 1], &[7]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("strip.pgm");
        write_pgm(&set, &path).unwrap();
        let bytes = fs::read(&path).unwrap();
        let header = format!("P5\n256 {STRIP_ROWS}\n255\n");
        assert!(bytes.starts_with(header.as_bytes()));
        let pixels = &bytes[header.len()..];
        assert_eq!(pixels.len(), 256 * STRIP_ROWS);
        assert_eq!(pixels.iter().filter(|&&p| p == 0).count(), STRIP_ROWS);
        assert_eq!(pixels[7], 0);
    }

    #[test]
    fn overlay_colors_classify_membership() {
        let dom = BoxDomain::new_2d([0.0, 0.0], [1.0, 1.0]).unwrap();
        let a = GridSet::from_cells(dom, [16, 16], &[0, 1]).unwrap();
        let b = GridSet::from_cells(dom, [16, 16], &[1, 2]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("overlay.ppm");
        write_ppm_overlay(&a, &b, &path).unwrap();
        let bytes = fs::read(&path).unwrap();
        let header = b"P6\n16 16\n255\n";
        assert!(bytes.starts_with(header));
        let pixels = &bytes[header.len()..];
        // Cells 0..3 sit in the bottom row, which is the last image row.
        let bottom = &pixels[3 * 16 * 15..];
        assert_eq!(&bottom[0..3], &[200, 30, 30]);
        assert_eq!(&bottom[3..6], &[40, 40, 40]);
        assert_eq!(&bottom[6..9], &[30, 140, 30]);
        assert_eq!(&bottom[9..12], &[255, 255, 255]);
    }

    #[test]
    fn exit_codes_partition_the_errors() {
        assert_eq!(exit_code(&Error::Usage("x".into())), 2);
        assert_eq!(exit_code(&Error::Config { line: 3, msg: "x".into() }), 2);
        assert_eq!(exit_code(&Error::UnknownExample("x".into())), 2);
        assert_eq!(exit_code(&Error::HypothesisUnmet("x".into())), 3);
        assert_eq!(exit_code(&Error::NoCertificate), 3);
        assert_eq!(exit_code(&Error::NotForwardInvariant { cell: 0 }), 1);
    }

    #[test]
    fn iterate_writes_trace_and_reports_convergence() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        let set_path = dir.path().join("final.set");
        let (code, text) = run_capture(&[
            "ifs",
            "iterate",
            "--example",
            "cantor_classic",
            "--grid",
            "4096",
            "--steps",
            "40",
            "--out",
            out,
            "--save-set",
            set_path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "output:\n{text}");
        assert!(text.contains("status: converged"), "{text}");
        let csv = fs::read_to_string(dir.path().join("iterate.csv")).unwrap();
        assert!(csv.starts_with("step,dist,forward,backward\n"));
        assert!(csv.lines().count() > 3);
        let saved = load_set_file(&set_path).unwrap();
        assert_eq!(saved.res(), [4096, 1]);
        assert!(!saved.is_empty());
    }

    #[test]
    fn missing_source_is_a_usage_error() {
        let cli = Cli::try_parse_from(["ifs", "target"]).expect("parses");
        let mut buf = Vec::new();
        assert_eq!(run_command(cli, &mut buf), 2);
    }

    #[test]
    fn hausdorff_command_reports_the_three_distances() {
        let dir = tempfile::tempdir().unwrap();
        let dom = BoxDomain::new_1d(0.0, 1.0).unwrap();
        let a = GridSet::from_cells(dom, [256, 1], &[0]).unwrap();
        let b = GridSet::from_cells(dom, [256, 1], &[0, 128]).unwrap();
        let pa = dir.path().join("a.set");
        let pb = dir.path().join("b.set");
        save_set_file(&a, &pa).unwrap();
        save_set_file(&b, &pb).unwrap();
        let (code, text) = run_capture(&[
            "ifs",
            "hausdorff",
            "--set-a",
            pa.to_str().unwrap(),
            "--set-b",
            pb.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(text.contains("forward: 0.0000000000000000e0"), "{text}");
        assert!(text.contains("distance: 5.0000000000000000e-1"), "{text}");
    }
}
