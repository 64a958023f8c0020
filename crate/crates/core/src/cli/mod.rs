//! Command-line front end: file parsing, counting, Ehrhart polynomials,
//! transfer, verification, the Lie-type constructors, and randomized
//! cross-checking.
//!
//! Exit codes: 0 on success (including an expected fuzz witness under
//! `--real-marks`), 1 when a verification check fails or counts disagree,
//! 2 on usage, parse, or domain errors. `--json` switches every subcommand
//! to a single-line JSON object with a `schema` field; exact values
//! (counts, coordinates, coefficients) are strings to keep them lossless.

pub mod format;
pub mod fuzz;

pub use format::{parse_marked_poset, serialize_marked_poset};
pub use fuzz::{fuzz_search, random_marked_poset, FuzzOpts, FuzzReport, FuzzWitness};

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::lie::{self, LieType, Weight};
use crate::marked::MarkedPoset;
use crate::polytope::{
    count_chain_points, count_order_points, count_unit_points, ehrhart, enumerate_chain_points,
    enumerate_order_points, GridVector, PolytopeKind,
};
use crate::transfer;
use crate::{Error, Rat, Result};

#[derive(Parser)]
#[command(
    name = "posetope",
    version,
    about = "Marked poset polytopes: exact counting, transfer, and Lie-type patterns"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Order,
    Chain,
}

impl KindArg {
    fn kind(self) -> PolytopeKind {
        match self {
            KindArg::Order => PolytopeKind::Order,
            KindArg::Chain => PolytopeKind::Chain,
        }
    }

    fn name(self) -> &'static str {
        match self {
            KindArg::Order => "order",
            KindArg::Chain => "chain",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Forward,
    Back,
}

#[derive(Subcommand)]
enum Command {
    /// Count grid points of one of the two polytopes of a marked poset
    Count {
        file: PathBuf,
        #[arg(long, value_enum)]
        polytope: KindArg,
        /// Count points with coordinates in (1/M)Z
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        grid: u64,
    },
    /// Ehrhart polynomial (requires an integral marking)
    Ehrhart {
        file: PathBuf,
        #[arg(long, value_enum)]
        polytope: KindArg,
    },
    /// List grid points, one per line, columns in sorted name order
    Enumerate {
        file: PathBuf,
        #[arg(long, value_enum)]
        polytope: KindArg,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        grid: u64,
    },
    /// Apply the transfer map or its inverse to a point
    Transfer {
        file: PathBuf,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        /// Comma-separated coordinates in sorted name order
        #[arg(long)]
        point: String,
    },
    /// Check count equality, Ehrhart equality, round trips, and the grid
    /// bijection on one file
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        grid: u64,
    },
    /// Construct a Lie-type instance and compare against the Weyl dimension
    Lie {
        #[command(subcommand)]
        family: LieCommand,
    },
    /// Random marked posets: assert the count equality (integral marks) or
    /// search for a counterexample (--real-marks)
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iters: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_unmarked: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(0..))]
        max_mark: i64,
        /// Draw markings with denominators 2 and 3 instead of integers
        #[arg(long)]
        real_marks: bool,
    },
}

#[derive(Subcommand)]
enum LieCommand {
    /// Triangular pattern board (special linear); emits a reusable poset file
    Gt {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        weight: String,
    },
    /// Dyck-path inequality system (special linear)
    Ffl {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        weight: String,
    },
    /// Doubled pattern board (symplectic); emits a reusable poset file
    Sp {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        weight: String,
    },
    /// Doubled board with congruences (odd orthogonal); emits a reusable
    /// poset file
    So {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        weight: String,
    },
}

/// Parse argv, run one subcommand, and return the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let json = cli.json;
    let outcome = match cli.command {
        Command::Count { file, polytope, grid } => cmd_count(&file, polytope, grid, json),
        Command::Ehrhart { file, polytope } => cmd_ehrhart(&file, polytope, json),
        Command::Enumerate { file, polytope, grid } => cmd_enumerate(&file, polytope, grid, json),
        Command::Transfer { file, direction, point } => cmd_transfer(&file, direction, &point, json),
        Command::Verify { file, grid } => cmd_verify(&file, grid, json),
        Command::Lie { family } => cmd_lie(family, json),
        Command::Fuzz { seed, iters, max_unmarked, max_mark, real_marks } => {
            let opts = FuzzOpts {
                max_unmarked: max_unmarked as usize,
                max_mark,
                real_marks,
            };
            Ok(cmd_fuzz(seed, iters, &opts, json))
        }
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn load(path: &Path) -> Result<MarkedPoset> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    let m = parse_marked_poset(&text)?;
    for (a, b) in m.incompatible_adjacent_marks() {
        let p = m.poset();
        eprintln!(
            "warning: {} < {} carries decreasing marks ({} > {}) with nothing between them; \
             no inequality can enforce this relation",
            p.element(a),
            p.element(b),
            m.mark(a).expect("marked"),
            m.mark(b).expect("marked"),
        );
    }
    Ok(m)
}

/// Column order used by `enumerate` and `transfer`: unmarked element names
/// sorted as strings, each paired with its internal coordinate slot.
fn sorted_columns(m: &MarkedPoset) -> (Vec<String>, Vec<usize>) {
    let mut cols: Vec<(String, usize)> = m
        .free_names()
        .iter()
        .enumerate()
        .map(|(slot, name)| (name.to_string(), slot))
        .collect();
    cols.sort();
    cols.into_iter().unzip()
}

fn parse_rational_list(text: &str) -> Result<Vec<Rat>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            Rat::from_str(part.trim()).map_err(|e| Error::Parse {
                line: 0,
                msg: format!("bad rational '{}': {e}", part.trim()),
            })
        })
        .collect()
}

fn count_points(m: &MarkedPoset, kind: PolytopeKind, grid: u64) -> u128 {
    match kind {
        PolytopeKind::Order => count_order_points(m, grid),
        PolytopeKind::Chain => count_chain_points(m, grid),
    }
}

fn enumerate_points(m: &MarkedPoset, kind: PolytopeKind, grid: u64) -> Vec<GridVector> {
    match kind {
        PolytopeKind::Order => enumerate_order_points(m, grid),
        PolytopeKind::Chain => enumerate_chain_points(m, grid),
    }
}

fn cmd_count(file: &Path, polytope: KindArg, grid: u64, json: bool) -> Result<i32> {
    let m = load(file)?;
    let count = count_points(&m, polytope.kind(), grid);
    if json {
        println!(
            "{}",
            json!({
                "schema": 1,
                "command": "count",
                "polytope": polytope.name(),
                "grid": grid,
                "count": count.to_string(),
            })
        );
    } else {
        println!("{count}");
    }
    Ok(0)
}

fn cmd_ehrhart(file: &Path, polytope: KindArg, json: bool) -> Result<i32> {
    let m = load(file)?;
    let poly = ehrhart(&m, polytope.kind())?;
    if json {
        let coeffs: Vec<String> = poly.coeffs().iter().map(Rat::to_string).collect();
        println!(
            "{}",
            json!({
                "schema": 1,
                "command": "ehrhart",
                "polytope": polytope.name(),
                "degree": poly.degree(),
                "coeffs": coeffs,
            })
        );
    } else {
        println!("{poly}");
    }
    Ok(0)
}

fn cmd_enumerate(file: &Path, polytope: KindArg, grid: u64, json: bool) -> Result<i32> {
    let m = load(file)?;
    let (names, slots) = sorted_columns(&m);
    let mut rows: Vec<Vec<Rat>> = enumerate_points(&m, polytope.kind(), grid)
        .iter()
        .map(|pt| slots.iter().map(|&s| pt.coords()[s].clone()).collect())
        .collect();
    rows.sort();
    if json {
        let points: Vec<Vec<String>> = rows
            .iter()
            .map(|row| row.iter().map(Rat::to_string).collect())
            .collect();
        println!(
            "{}",
            json!({
                "schema": 1,
                "command": "enumerate",
                "polytope": polytope.name(),
                "grid": grid,
                "vars": names,
                "points": points,
            })
        );
    } else {
        println!("{}", names.join(" "));
        for row in rows {
            let cells: Vec<String> = row.iter().map(Rat::to_string).collect();
            println!("{}", cells.join(" "));
        }
    }
    Ok(0)
}

fn cmd_transfer(file: &Path, direction: DirectionArg, point: &str, json: bool) -> Result<i32> {
    let m = load(file)?;
    let (names, slots) = sorted_columns(&m);
    let given = parse_rational_list(point)?;
    if given.len() != names.len() {
        return Err(Error::IndexMismatch {
            expected: names.len(),
            got: given.len(),
        });
    }
    // columns arrive in sorted name order; scatter them into internal slots
    let mut coords = vec![Rat::from_integer(0.into()); names.len()];
    for (value, &slot) in given.into_iter().zip(&slots) {
        coords[slot] = value;
    }
    let x = GridVector::new(coords);
    let mapped = match direction {
        DirectionArg::Forward => transfer::forward(&m, &x)?,
        DirectionArg::Back => transfer::back(&m, &x)?,
    };
    let out: Vec<String> = slots.iter().map(|&s| mapped.coords()[s].to_string()).collect();
    if json {
        let dir = match direction {
            DirectionArg::Forward => "forward",
            DirectionArg::Back => "back",
        };
        println!(
            "{}",
            json!({
                "schema": 1,
                "command": "transfer",
                "direction": dir,
                "vars": names,
                "point": out,
            })
        );
    } else {
        println!("{}", names.join(" "));
        println!("{}", out.join(" "));
    }
    Ok(0)
}

struct Check {
    name: &'static str,
    status: &'static str,
    detail: String,
}

fn cmd_verify(file: &Path, grid: u64, json: bool) -> Result<i32> {
    let m = load(file)?;
    let mut checks: Vec<Check> = Vec::new();

    let order_count = count_order_points(&m, grid);
    let chain_count = count_chain_points(&m, grid);
    checks.push(Check {
        name: "counts",
        status: if order_count == chain_count { "PASS" } else { "FAIL" },
        detail: format!("order={order_count} chain={chain_count} grid={grid}"),
    });

    let ehr = match (ehrhart(&m, PolytopeKind::Order), ehrhart(&m, PolytopeKind::Chain)) {
        (Ok(a), Ok(b)) if a == b => Check {
            name: "ehrhart",
            status: "PASS",
            detail: format!("both sides give {a}"),
        },
        (Ok(a), Ok(b)) => Check {
            name: "ehrhart",
            status: "FAIL",
            detail: format!("order {a} vs chain {b}"),
        },
        (Err(e), _) | (_, Err(e))
            if matches!(e, Error::NonIntegralMarking | Error::EmptyPolytope) =>
        {
            Check {
                name: "ehrhart",
                status: "SKIP",
                detail: e.to_string(),
            }
        }
        (Err(e), _) | (_, Err(e)) => Check {
            name: "ehrhart",
            status: "FAIL",
            detail: e.to_string(),
        },
    };
    checks.push(ehr);

    let order_pts = enumerate_order_points(&m, grid);
    let chain_pts = enumerate_chain_points(&m, grid);
    let mut round_trip_failures = 0usize;
    let mut image: Vec<GridVector> = Vec::with_capacity(order_pts.len());
    for x in &order_pts {
        let y = transfer::forward(&m, x)?;
        if transfer::forward_via_full(&m, x)? != y || transfer::back(&m, &y)? != *x {
            round_trip_failures += 1;
        }
        image.push(y);
    }
    for y in &chain_pts {
        if transfer::forward(&m, &transfer::back(&m, y)?)? != *y {
            round_trip_failures += 1;
        }
    }
    checks.push(Check {
        name: "roundtrip",
        status: if round_trip_failures == 0 { "PASS" } else { "FAIL" },
        detail: format!(
            "{} order and {} chain points, both transfer routes, {} failures",
            order_pts.len(),
            chain_pts.len(),
            round_trip_failures
        ),
    });

    if m.integral_marking() {
        image.sort();
        let bijects = image == chain_pts;
        checks.push(Check {
            name: "bijection",
            status: if bijects { "PASS" } else { "FAIL" },
            detail: format!(
                "transfer image of {} order grid points vs {} chain grid points",
                order_pts.len(),
                chain_pts.len()
            ),
        });
    } else {
        checks.push(Check {
            name: "bijection",
            status: "SKIP",
            detail: "non-integral marking: the grid bijection is not guaranteed".into(),
        });
    }

    let ok = checks.iter().all(|c| c.status != "FAIL");
    if json {
        let list: Vec<serde_json::Value> = checks
            .iter()
            .map(|c| json!({"name": c.name, "status": c.status, "detail": c.detail}))
            .collect();
        println!(
            "{}",
            json!({
                "schema": 1,
                "command": "verify",
                "grid": grid,
                "checks": list,
                "ok": ok,
            })
        );
    } else {
        for c in &checks {
            println!("{} {} ({})", c.status, c.name, c.detail);
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn parse_weight(ty: LieType, n: u64, weight: &str) -> Result<Weight> {
    let entries = parse_rational_list(weight)?;
    if entries.len() != n as usize {
        return Err(Error::InvalidWeight(format!(
            "--weight needs exactly {n} entries, got {}",
            entries.len()
        )));
    }
    Weight::new(ty, entries)
}

fn cmd_lie(family: LieCommand, json: bool) -> Result<i32> {
    match family {
        LieCommand::Gt { n, weight } => {
            let w = parse_weight(LieType::A, n, &weight)?;
            let m = lie::gt_poset(&w)?;
            let counts = [
                ("order", "count", count_order_points(&m, 1)),
                ("chain", "chain count", count_chain_points(&m, 1)),
            ];
            Ok(board_report("gt", n, &w, &m, &counts, json))
        }
        LieCommand::Sp { n, weight } => {
            let w = parse_weight(LieType::C, n, &weight)?;
            let m = lie::sp_poset(&w)?;
            let counts = [
                ("order", "count", count_order_points(&m, 1)),
                ("chain", "chain count", count_chain_points(&m, 1)),
            ];
            Ok(board_report("sp", n, &w, &m, &counts, json))
        }
        LieCommand::So { n, weight } => {
            let w = parse_weight(LieType::B, n, &weight)?;
            let m = lie::so_poset(&w)?;
            let counts = [
                ("patterns", "pattern count", lie::so_order_patterns(&w)?.len() as u128),
                ("transfer", "transfer count", lie::so_chain_patterns(&w)?.len() as u128),
            ];
            Ok(board_report("so", n, &w, &m, &counts, json))
        }
        LieCommand::Ffl { n, weight } => {
            let w = parse_weight(LieType::A, n, &weight)?;
            let sys = lie::ffl_hrep(&w)?;
            let count = count_unit_points(&sys, 1);
            let weyl = lie::weyl_dim(&w);
            let ok = count == weyl;
            if json {
                let rows: Vec<serde_json::Value> = sys
                    .rows()
                    .iter()
                    .map(|(coeffs, bound)| {
                        json!({
                            "coeffs": coeffs.iter().map(Rat::to_string).collect::<Vec<_>>(),
                            "bound": bound.to_string(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "command": "lie",
                        "family": "ffl",
                        "n": n,
                        "weight": weight_strings(&w),
                        "system": {"vars": sys.vars(), "rows": rows},
                        "counts": {"lattice": count.to_string()},
                        "weyl": weyl.to_string(),
                        "match": ok,
                    })
                );
            } else {
                println!("# vars (all >= 0): {}", sys.vars().join(" "));
                for line in sys.render_rows() {
                    println!("{line}");
                }
                println!("# count {count}");
                println!("# weyl {weyl}");
                println!("# {}", if ok { "MATCH" } else { "MISMATCH" });
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn weight_strings(w: &Weight) -> Vec<String> {
    w.entries().iter().map(Rat::to_string).collect()
}

/// Shared output path for the board-emitting families: print the poset in
/// file format, then the counts, the Weyl dimension, and the comparison as
/// trailing comments so the output stays loadable.
fn board_report(
    family: &str,
    n: u64,
    w: &Weight,
    m: &MarkedPoset,
    counts: &[(&str, &str, u128)],
    json: bool,
) -> i32 {
    let weyl = lie::weyl_dim(w);
    let ok = counts.iter().all(|&(_, _, v)| v == weyl);
    if json {
        let mut map = serde_json::Map::new();
        for &(key, _, v) in counts {
            map.insert(key.to_string(), json!(v.to_string()));
        }
        println!(
            "{}",
            json!({
                "schema": 1,
                "command": "lie",
                "family": family,
                "n": n,
                "weight": weight_strings(w),
                "poset": serialize_marked_poset(m),
                "counts": map,
                "weyl": weyl.to_string(),
                "match": ok,
            })
        );
    } else {
        print!("{}", serialize_marked_poset(m));
        for &(_, label, v) in counts {
            println!("# {label} {v}");
        }
        println!("# weyl {weyl}");
        println!("# {}", if ok { "MATCH" } else { "MISMATCH" });
    }
    if ok {
        0
    } else {
        1
    }
}

fn cmd_fuzz(seed: u64, iters: u64, opts: &FuzzOpts, json: bool) -> i32 {
    let report = fuzz_search(seed, iters, opts);
    let ok = opts.real_marks || report.witness.is_none();
    if json {
        let witness = report.witness.as_ref().map(|w| {
            json!({
                "iteration": w.iteration,
                "grid": w.grid,
                "order": w.order_count.to_string(),
                "chain": w.chain_count.to_string(),
                "poset": serialize_marked_poset(&w.poset),
            })
        });
        println!(
            "{}",
            json!({
                "schema": 1,
                "command": "fuzz",
                "seed": seed,
                "iters": iters,
                "real_marks": opts.real_marks,
                "checked": report.checked,
                "witness": witness,
                "ok": ok,
            })
        );
    } else {
        match &report.witness {
            Some(w) => {
                println!(
                    "witness at iteration {} (grid {}): order count {} != chain count {}",
                    w.iteration, w.grid, w.order_count, w.chain_count
                );
                print!("{}", serialize_marked_poset(&w.poset));
                println!(
                    "checked {} posets: {}",
                    report.checked,
                    if opts.real_marks {
                        "found the expected integrality counterexample"
                    } else {
                        "FAIL: counts must agree for integral markings"
                    }
                );
            }
            None => {
                println!("checked {} posets: order and chain counts agree", report.checked);
            }
        }
    }
    if ok {
        0
    } else {
        1
    }
}
