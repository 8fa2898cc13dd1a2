//! Command-line surface over the library: generators, placing
//! triangulations, brute-force enumeration, stabbing orders, star-ball
//! posets, web enumeration, sum assembly/decomposition, verification,
//! regularity, and the pair census.
//!
//! Conventions: structured output is JSON with deterministic key order;
//! points and triangulations travel in their text file formats; errors
//! leave as one JSON object on stderr. Exit codes: 0 success, 1 a
//! verification answered "invalid", 2 usage or malformed input, 3 a
//! resource budget was hit.

use clap::{Parser, Subcommand, ValueEnum};
use freesum::complex::enumerate::{brute_force_triangulations, EnumerateError, EnumerationGuard};
use freesum::complex::placing::{placing_default, placing_triangulation};
use freesum::complex::regularity::is_regular;
use freesum::complex::verify::verify_triangulation;
use freesum::complex::{free_sum, PointConfiguration, Triangulation};
use freesum::geom::{Rat, RatVec};
use freesum::io::{
    format_points, format_triangulation, parse_points, parse_triangulations, web_from_assignments,
    web_to_file, IoError, WebFile,
};
use freesum::stabbing::stabbing_poset;
use freesum::starballs::enumerate_star_balls;
use freesum::sumtri::{construct, decompose, OriginSide, SumError};
use freesum::symmetry::census::{
    census, class_representatives, CensusError, CensusOptions, CountReport,
};
use freesum::symmetry::{automorphism_group, orbit_classes};
use freesum::webs::{complement_transpose, walk_pinned_webs, WebSetting};
use num_traits::Zero;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "freesum",
    version,
    about = "Exact tools for triangulations of free sums of point configurations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(ValueEnum, Clone, Copy)]
enum Shape {
    /// Cross polytope vertices ±e_i plus the all-ones pair ±(1,…,1).
    Dp,
    /// Same with only −(1,…,1) added.
    DpMinus,
    /// Cross polytope vertices plus the origin.
    Cross,
    /// The 1-D chain −1, 0, …, d.
    Interval,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a generator configuration as a points file.
    Gen {
        #[arg(long)]
        shape: Shape,
        #[arg(long)]
        dim: usize,
    },
    /// Placing (beneath-and-beyond) triangulation of a points file.
    Triangulate {
        #[arg(long)]
        points: PathBuf,
        /// Insertion order as comma-separated indices (default: file order).
        #[arg(long)]
        order: Option<String>,
    },
    /// All triangulations of a small configuration, streamed one per line.
    EnumerateTriangulations {
        #[arg(long)]
        points: PathBuf,
        /// Keep one representative per linear-symmetry class.
        #[arg(long)]
        mod_symmetry: bool,
        /// Raise the brute-force guard (default 10 points).
        #[arg(long)]
        max_points: Option<usize>,
        /// Raise the brute-force guard (default dimension 2).
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Stabbing order of the triangulation's maximal cells, as Hasse edges.
    Stabbing {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        triangulation: PathBuf,
    },
    /// Poset of strictly star-shaped triangulated balls around the origin.
    StarBalls {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        triangulation: PathBuf,
    },
    /// Pinned proper webs from the first triangulation's cells into the
    /// second's star balls, streamed as JSON.
    Webs {
        #[arg(long)]
        p_points: PathBuf,
        #[arg(long)]
        p_triangulation: PathBuf,
        #[arg(long)]
        q_points: PathBuf,
        #[arg(long)]
        q_triangulation: PathBuf,
        /// Print only the number of webs.
        #[arg(long)]
        count_only: bool,
    },
    /// Assemble the sum triangulation a web encodes, verify it, and print
    /// both the triangulation file and the verification report.
    Sum {
        #[arg(long)]
        p_points: PathBuf,
        #[arg(long)]
        p_triangulation: PathBuf,
        #[arg(long)]
        q_points: PathBuf,
        #[arg(long)]
        q_triangulation: PathBuf,
        /// Web JSON file (as produced by `webs` or `decompose`).
        #[arg(long)]
        web: PathBuf,
        /// Also write the sum configuration's points file here.
        #[arg(long)]
        out_points: Option<PathBuf>,
    },
    /// Split a sum triangulation into factor triangulations and the web
    /// pair that regenerates it.
    Decompose {
        /// Sum points file in canonical layout (P block, then Q block).
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        triangulation: PathBuf,
        /// Dimension of the first (P) factor.
        #[arg(long)]
        p_dim: usize,
    },
    /// Check a triangulation file; exit 0 when valid, 1 when not.
    Verify {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        triangulation: PathBuf,
    },
    /// Exact regularity test; prints inducing heights when regular.
    Regular {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        triangulation: PathBuf,
    },
    /// Count webs and sum triangulations over all pairs of factor
    /// triangulation classes.
    Census {
        #[arg(long)]
        p_points: PathBuf,
        #[arg(long)]
        q_points: PathBuf,
        /// Triangulation file or directory of files for the first factor
        /// (default: brute-force enumeration reduced modulo symmetry).
        #[arg(long)]
        p_triangulations: Option<PathBuf>,
        #[arg(long)]
        q_triangulations: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Abort cleanly past this many resident bytes (default: the
        /// FREESUM_MEMORY_BUDGET environment variable, if set).
        #[arg(long)]
        memory_budget: Option<u64>,
        /// Skip materializing sum triangulations: counts only, memory
        /// stays proportional to the search frontier.
        #[arg(long)]
        count_only: bool,
        /// Raise the brute-force guard for default triangulation inputs.
        #[arg(long)]
        max_points: Option<usize>,
        #[arg(long)]
        max_dim: Option<usize>,
    },
}

/// An error on its way out: message plus process exit code.
struct Failure {
    code: i32,
    message: String,
    /// Extra JSON fields for the stderr object (partial results, etc.).
    detail: serde_json::Value,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into(), detail: json!({}) }
    }
}

macro_rules! usage_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                Failure::usage(e.to_string())
            }
        }
    )*};
}
usage_from!(
    IoError,
    freesum::complex::ComplexError,
    freesum::stabbing::StabbingError,
    freesum::starballs::StarBallError,
    freesum::webs::WebError,
    SumError,
    freesum::symmetry::SymmetryError,
    std::io::Error,
    serde_json::Error
);

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::MemoryBudget { used, budget, partial } => Failure {
                code: 3,
                message: format!("memory use {used} bytes exceeds the budget of {budget} bytes"),
                detail: json!({ "partial_report": partial }),
            },
            other => Failure::usage(other.to_string()),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            let mut obj = json!({ "error": f.message, "exit_code": f.code });
            if let (Some(map), Some(extra)) = (obj.as_object_mut(), f.detail.as_object()) {
                for (k, v) in extra {
                    map.insert(k.clone(), v.clone());
                }
            }
            eprintln!("{obj}");
            std::process::exit(f.code);
        }
    }
}

fn read_config(path: &Path) -> Result<Arc<PointConfiguration>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(Arc::new(parse_points(&text).map_err(|e| Failure::usage(format!(
        "{}: {e}",
        path.display()
    )))?))
}

fn read_one_triangulation(
    path: &Path,
    config: &Arc<PointConfiguration>,
) -> Result<Triangulation, Failure> {
    let mut ts = read_triangulation_stream(path, config)?;
    match ts.len() {
        1 => Ok(ts.remove(0)),
        n => Err(Failure::usage(format!(
            "{}: expected exactly one triangulation, found {n}",
            path.display()
        ))),
    }
}

fn read_triangulation_stream(
    path: &Path,
    config: &Arc<PointConfiguration>,
) -> Result<Vec<Triangulation>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_triangulations(&text, config)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Census triangulation input: a file, or a directory of files taken in
/// name order, each holding one or more triangulations.
fn read_triangulation_inputs(
    path: &Path,
    config: &Arc<PointConfiguration>,
) -> Result<Vec<Triangulation>, Failure> {
    if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        files.sort();
        let mut out = Vec::new();
        for file in files {
            out.extend(read_triangulation_stream(&file, config)?);
        }
        if out.is_empty() {
            return Err(Failure::usage(format!("{}: no triangulations found", path.display())));
        }
        Ok(out)
    } else {
        read_triangulation_stream(path, config)
    }
}

fn parse_order(text: &str, n: usize) -> Result<Vec<usize>, Failure> {
    let order: Vec<usize> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Failure::usage(format!("--order: {s:?} is not an index")))
        })
        .collect::<Result<_, _>>()?;
    if order.len() != n {
        return Err(Failure::usage(format!(
            "--order lists {} indices for {n} points",
            order.len()
        )));
    }
    Ok(order)
}

fn rat_strings(v: &RatVec) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn run(cmd: Cmd) -> Result<i32, Failure> {
    match cmd {
        Cmd::Gen { shape, dim } => {
            use freesum::complex::generators;
            if dim == 0 {
                return Err(Failure::usage("--dim must be at least 1"));
            }
            let config = match shape {
                Shape::Dp => generators::dp(dim),
                Shape::DpMinus => generators::dp_minus(dim),
                Shape::Cross => generators::cross(dim),
                Shape::Interval => {
                    let values: Vec<i64> = (-1..=dim as i64).collect();
                    generators::interval(&values)
                }
            };
            print!("{}", format_points(&config));
            Ok(0)
        }

        Cmd::Triangulate { points, order } => {
            let config = read_config(&points)?;
            let t = match order {
                Some(text) => {
                    let order = parse_order(&text, config.len())?;
                    placing_triangulation(&config, &order)?
                }
                None => placing_default(&config)?,
            };
            print!("{}", format_triangulation(&t));
            Ok(0)
        }

        Cmd::EnumerateTriangulations { points, mod_symmetry, max_points, max_dim } => {
            let config = read_config(&points)?;
            let mut guard = EnumerationGuard::default();
            if let Some(n) = max_points {
                guard.max_points = n;
            }
            if let Some(d) = max_dim {
                guard.max_dim = d;
            }
            let all = brute_force_triangulations(&config, guard)?;
            if mod_symmetry {
                let group = automorphism_group(&config);
                for i in orbit_classes(&all, &group)? {
                    print!("{}", format_triangulation(&all[i]));
                }
            } else {
                for t in &all {
                    print!("{}", format_triangulation(t));
                }
            }
            Ok(0)
        }

        Cmd::Stabbing { points, triangulation } => {
            let config = read_config(&points)?;
            let t = read_one_triangulation(&triangulation, &config)?;
            let poset = stabbing_poset(&t)?;
            let cells: Vec<Vec<usize>> =
                poset.cells().iter().map(|c| c.vertices().to_vec()).collect();
            println!(
                "{}",
                json!({
                    "cells": cells,
                    "minimal": poset.minimal_elements(),
                    "hasse_edges": poset.hasse_edges(),
                })
            );
            Ok(0)
        }

        Cmd::StarBalls { points, triangulation } => {
            let config = read_config(&points)?;
            let t = read_one_triangulation(&triangulation, &config)?;
            let family = enumerate_star_balls(&t)?;
            let n = family.len();
            // Hasse edges of the inclusion order: i covered by j.
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i == j || !family.included(i, j) {
                        continue;
                    }
                    let covered = (0..n).all(|k| {
                        k == i || k == j || !(family.included(i, k) && family.included(k, j))
                    });
                    if covered {
                        edges.push((i, j));
                    }
                }
            }
            let cells: Vec<Vec<usize>> =
                t.cells().iter().map(|c| c.vertices().to_vec()).collect();
            println!(
                "{}",
                json!({
                    "cells": cells,
                    "balls": family.balls(),
                    "star": family.star_index(),
                    "hasse_edges": edges,
                })
            );
            Ok(0)
        }

        Cmd::Webs { p_points, p_triangulation, q_points, q_triangulation, count_only } => {
            let p = read_config(&p_points)?;
            let q = read_config(&q_points)?;
            let pt = read_one_triangulation(&p_triangulation, &p)?;
            let qt = read_one_triangulation(&q_triangulation, &q)?;
            let setting = WebSetting::new(pt, qt)?;
            let mut count: u64 = 0;
            let mut failure: Option<Failure> = None;
            walk_pinned_webs(&setting, &mut |web| {
                count += 1;
                if !count_only && failure.is_none() {
                    match serde_json::to_string(&web_to_file(&setting, web, true)) {
                        Ok(line) => println!("{line}"),
                        Err(e) => failure = Some(e.into()),
                    }
                }
            });
            if let Some(f) = failure {
                return Err(f);
            }
            if count_only {
                println!("{}", json!({ "count": count }));
            }
            Ok(0)
        }

        Cmd::Sum { p_points, p_triangulation, q_points, q_triangulation, web, out_points } => {
            let p = read_config(&p_points)?;
            let q = read_config(&q_points)?;
            let pt = read_one_triangulation(&p_triangulation, &p)?;
            let qt = read_one_triangulation(&q_triangulation, &q)?;
            let st = free_sum(p, q)?;
            let setting = WebSetting::new(pt, qt)?;
            let text = std::fs::read_to_string(&web)
                .map_err(|e| Failure::usage(format!("{}: {e}", web.display())))?;
            let file: WebFile = serde_json::from_str(&text)?;
            let alpha = match file.anchored.as_str() {
                "P" => web_from_assignments(&setting, &file.assignments)?,
                "Q" => {
                    let reversed = setting.reversed();
                    let beta = web_from_assignments(&reversed, &file.assignments)?;
                    complement_transpose(&reversed, &beta)
                        .ok_or_else(|| Failure::usage("web is not proper"))?
                }
                other => return Err(IoError::BadAnchor(other.to_string()).into()),
            };
            let t = construct(&st, &setting, &alpha)?;
            if let Some(path) = out_points {
                std::fs::write(&path, format_points(&st.sum))
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            }
            let report = verify_triangulation(&t);
            print!("{}", format_triangulation(&t));
            println!("{}", serde_json::to_string(&report)?);
            Ok(if report.is_valid() { 0 } else { 1 })
        }

        Cmd::Decompose { points, triangulation, p_dim } => {
            let config = read_config(&points)?;
            if p_dim == 0 || p_dim >= config.dim() {
                return Err(Failure::usage(format!(
                    "--p-dim must be strictly between 0 and the configuration dimension {}",
                    config.dim()
                )));
            }
            let (p, q) = split_sum_points(&config, p_dim)?;
            let st = free_sum(Arc::new(p), Arc::new(q))?;
            if st.sum.points() != config.points() {
                return Err(Failure::usage(
                    "points file is not in canonical sum layout (first-factor block with \
                     trailing zeros, then second-factor block with leading zeros, origin \
                     shared in the first block); rebuild it with `sum --out-points`",
                ));
            }
            let t = read_one_triangulation(&triangulation, &st.sum)?;
            let dec = decompose(&st, &t)?;
            let side = match dec.side {
                OriginSide::Vertex => "vertex",
                OriginSide::P => "P",
                OriginSide::Q => "Q",
            };
            println!(
                "{}",
                json!({
                    "side": side,
                    "p_points": format_points(&st.p),
                    "p_triangulation": format_triangulation(dec.setting.p()),
                    "q_points": format_points(&st.q),
                    "q_triangulation": format_triangulation(dec.setting.q()),
                    "alpha": web_to_file(&dec.setting, &dec.alpha, true),
                    "beta": web_to_file(&dec.setting.reversed(), &dec.beta, false),
                })
            );
            Ok(0)
        }

        Cmd::Verify { points, triangulation } => {
            let config = read_config(&points)?;
            let t = read_one_triangulation(&triangulation, &config)?;
            let report = verify_triangulation(&t);
            println!("{}", serde_json::to_string(&report)?);
            Ok(if report.is_valid() { 0 } else { 1 })
        }

        Cmd::Regular { points, triangulation } => {
            let config = read_config(&points)?;
            let t = read_one_triangulation(&triangulation, &config)?;
            let (regular, cert) = is_regular(&t);
            let heights =
                if regular { Some(rat_strings(&cert.heights)) } else { None };
            println!(
                "{}",
                json!({
                    "regular": regular,
                    "heights": heights,
                    "gap": if regular { Some(cert.gap.to_string()) } else { None },
                })
            );
            Ok(0)
        }

        Cmd::Census {
            p_points,
            q_points,
            p_triangulations,
            q_triangulations,
            threads,
            memory_budget,
            count_only,
            max_points,
            max_dim,
        } => {
            let p = read_config(&p_points)?;
            let q = read_config(&q_points)?;
            let st = free_sum(p, q)?;
            let mut guard = EnumerationGuard::default();
            if let Some(n) = max_points {
                guard.max_points = n;
            }
            if let Some(d) = max_dim {
                guard.max_dim = d;
            }
            let p_reps = match p_triangulations {
                Some(path) => read_triangulation_inputs(&path, &st.p)?,
                None => class_representatives(&st.p, guard)?,
            };
            let q_reps = match q_triangulations {
                Some(path) => read_triangulation_inputs(&path, &st.q)?,
                None => class_representatives(&st.q, guard)?,
            };
            let memory_budget = memory_budget.or_else(|| {
                std::env::var("FREESUM_MEMORY_BUDGET").ok().and_then(|s| s.parse().ok())
            });
            let opts =
                CensusOptions { materialize: !count_only, threads, memory_budget };
            let report: CountReport = census(&st, &p_reps, &q_reps, &opts)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(0)
        }
    }
}

/// Undo the canonical sum layout: the first block keeps its leading
/// `p_dim` coordinates, the second block its trailing ones; the shared
/// origin (all-zero row) joins both factors.
fn split_sum_points(
    config: &PointConfiguration,
    p_dim: usize,
) -> Result<(PointConfiguration, PointConfiguration), Failure> {
    let mut p_rows: Vec<RatVec> = Vec::new();
    let mut q_rows: Vec<RatVec> = Vec::new();
    for row in config.points() {
        let head_zero = row[..p_dim].iter().all(Rat::is_zero);
        let tail_zero = row[p_dim..].iter().all(Rat::is_zero);
        match (head_zero, tail_zero) {
            (true, true) => {
                // The shared origin sits in both factors.
                p_rows.push(row[..p_dim].to_vec());
                q_rows.push(row[p_dim..].to_vec());
            }
            (false, true) => p_rows.push(row[..p_dim].to_vec()),
            (true, false) => q_rows.push(row[p_dim..].to_vec()),
            (false, false) => {
                return Err(Failure::usage(format!(
                    "point [{}] lies in neither factor block for --p-dim {p_dim}",
                    rat_strings(row).join(",")
                )))
            }
        }
    }
    let p = PointConfiguration::new(p_rows)?;
    let q = PointConfiguration::new(q_rows)?;
    Ok((p, q))
}
