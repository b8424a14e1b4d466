mod output;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kk_core::extremal::{self, CliquePair, GapRow, Report};
use kk_core::graph::{self, Graph};
use kk_core::search::{self, ExtremalRecord};
use kk_core::{canonical_rep, kk_bound, Count};

use output::{Format, OutputEnvelope};

/// Kruskal-Katona bounds, clique counts and extremal searches.
#[derive(Parser)]
#[command(name = "kk", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "plain", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cascade representation of X at level R.
    Canon { x: Count, r: u32 },
    /// The bound [X]^R_S.
    Bound { x: Count, r: u32, s: u32 },
    /// Number of R-cliques in an edge-list file.
    Count {
        file: PathBuf,
        r: usize,
        /// Count inside the (R-1)-core.
        #[arg(long)]
        prune: bool,
    },
    /// Build a graph family and print it as an edge list.
    Construct {
        family: Family,
        /// Family parameters, e.g. `11 10,7` for apex.
        #[arg(required = true)]
        params: Vec<String>,
        /// Write the edge list here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a DOT rendering here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Triangle versus K_4 or K_5 counts of T(n, n-2) against the bound.
    Table {
        n_min: u64,
        n_max: u64,
        #[arg(long, default_value = "3,5", value_parser = parse_pair)]
        pair: CliquePair,
        /// Shorthand for `--format csv`.
        #[arg(long)]
        csv: bool,
    },
    /// Check an identity or construction; exits 1 on failure.
    #[command(subcommand)]
    Verify(Verify),
    /// Search for the largest k_S among graphs with k_R <= X.
    Search {
        mode: Mode,
        v_max: usize,
        r: usize,
        s: usize,
        x: Count,
        /// Required for heuristic mode.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 200)]
        iters: usize,
        /// Progress file for exhaustive mode; resumed if present.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Exhaustive test of k_4(k_3 <= x) = [x]^3_4 - 1 at x = k_3(T(N, N-2)).
    Conjecture {
        n: u64,
        #[arg(default_value_t = 7)]
        v_max: usize,
    },
    /// Exhaustive optimum against the bound for every x <= XMAX.
    Scan {
        r: usize,
        s: usize,
        x_max: u64,
        v_max: usize,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// K_n plus one vertex joined to m vertices: N M R S.
    T2 { n: u64, m: u64, r: u64, s: u64 },
    /// K_n plus vertices joined to m and w vertices: N M W R S.
    T3 { n: u64, m: u64, w: u64, r: u64, s: u64 },
    /// K_n minus p edges at one vertex: N P S.
    T4 { n: u64, p: u64, s: u64 },
    /// K_4 identity for T(n, n-2) over a range like 7..200.
    T5 { range: NRange },
    /// K_5 identity for T(n, n-2) over a range.
    T6 { range: NRange },
    /// Cascade of C(n,3) - 2(n-2) over a range.
    CanonX { range: NRange },
    /// Plateau of the bound: N M T R S.
    Plateau { n: u64, m: u64, t: u64, r: u64, s: u64 },
    /// Gap pattern of the table over NMIN..=NMAX.
    Gap {
        #[arg(value_parser = parse_pair)]
        pair: CliquePair,
        n_min: u64,
        n_max: u64,
    },
    /// Smallest plateau instance for U: s = 2U+2, n = s+1, m = s.
    PlateauMin { u: u64 },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Edgeless,
    Path,
    Apex,
    Star,
    Turan,
    MinusTwoEdges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Heuristic,
}

#[derive(Clone)]
struct NRange(RangeInclusive<u64>);

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad range bound {t:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(NRange(lo..=hi))
    }
}

fn parse_pair(s: &str) -> Result<CliquePair, String> {
    s.parse().map_err(|e: extremal::ExtremalError| e.to_string())
}

fn params(pairs: &[(&'static str, &dyn ToString)]) -> Vec<(&'static str, String)> {
    pairs.iter().map(|(k, v)| (*k, v.to_string())).collect()
}

fn graph_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g.edges().map(|(u, v)| json!([u + 1, v + 1])).collect();
    json!({ "n": g.n(), "m": g.edge_count(), "edges": edges })
}

fn report_json(r: &Report) -> Value {
    let params: serde_json::Map<String, Value> = r
        .params
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
        .collect();
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "label": c.label, "expected": c.expected, "actual": c.actual, "passed": c.passed() }))
        .collect();
    json!({ "name": r.name, "params": params, "passed": r.passed(), "checks": checks, "notes": r.notes })
}

fn record_json(rec: &ExtremalRecord) -> Value {
    json!({
        "mode": rec.scope.mode.to_string(),
        "max_vertices": rec.scope.max_vertices,
        "exhaustive_within_scope": rec.exhaustive_within_scope,
        "r": rec.r,
        "s": rec.s,
        "x": rec.x.to_string(),
        "bound": rec.bound.to_string(),
        "best": rec.best.to_string(),
        "attains_bound": rec.attains_bound(),
        "witness": graph_json(&rec.witness),
    })
}

fn rows_json(rows: &[GapRow]) -> Value {
    rows.iter()
        .map(|row| {
            json!({
                "n": row.n,
                "K3": row.x.to_string(),
                "actual": row.actual.to_string(),
                "bound": row.bound.to_string(),
                "gap": row.gap.to_string(),
            })
        })
        .collect()
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn single_report(command: &'static str, rep: Report) -> OutputEnvelope {
    OutputEnvelope::new(command, rep.params.clone())
        .plain(rep.to_string())
        .passed(rep.passed())
        .result(report_json(&rep))
}

fn range_reports(
    command: &'static str,
    range: &NRange,
    verify: fn(u64) -> Result<Report, extremal::ExtremalError>,
) -> Result<OutputEnvelope> {
    let reports = range.0.clone().map(verify).collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().filter(|r| r.passed()).count();
    let name = reports.first().map_or(command, |r| r.name);
    let mut plain = format!(
        "{name} n={}..{}: {passed}/{} pass\n",
        range.0.start(),
        range.0.end(),
        reports.len()
    );
    for rep in reports.iter().filter(|r| !r.passed()) {
        plain.push_str(&rep.to_string());
    }
    let all = passed == reports.len();
    Ok(OutputEnvelope::new(
        command,
        vec![
            ("n_min", range.0.start().to_string()),
            ("n_max", range.0.end().to_string()),
        ],
    )
    .plain(plain)
    .passed(all)
    .result(json!({ "reports": reports.iter().map(report_json).collect::<Vec<_>>() })))
}

fn nums(family: &str, params: &[String], want: usize) -> Result<Vec<usize>> {
    if params.len() != want {
        bail!("{family} takes {want} parameter(s), got {}", params.len());
    }
    params
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .with_context(|| format!("bad {family} parameter {p:?}"))
        })
        .collect()
}

fn construct(family: Family, params: &[String]) -> Result<Graph> {
    Ok(match family {
        Family::Complete => graph::complete_graph(nums("complete", params, 1)?[0]),
        Family::Edgeless => graph::edgeless_graph(nums("edgeless", params, 1)?[0]),
        Family::Path => graph::path_graph(nums("path", params, 1)?[0]),
        Family::Apex => {
            let (n, list) = match params {
                [n] => (n, ""),
                [n, list] => (n, list.as_str()),
                _ => bail!("apex takes N and a comma-separated attachment list"),
            };
            let n: usize = n.parse().with_context(|| format!("bad apex size {n:?}"))?;
            let attachments = list
                .split(',')
                .filter(|a| !a.trim().is_empty() && a.trim() != "-")
                .map(|a| {
                    a.trim()
                        .parse::<usize>()
                        .with_context(|| format!("bad attachment {a:?}"))
                })
                .collect::<Result<Vec<_>>>()?;
            graph::apex_construction(n, &attachments)?
        }
        Family::Star => {
            let v = nums("star", params, 2)?;
            graph::complete_minus_star(v[0], v[1])?
        }
        Family::Turan => {
            let v = nums("turan", params, 2)?;
            graph::turan_graph(v[0], v[1])?
        }
        Family::MinusTwoEdges => graph::complete_minus_two_disjoint_edges(nums("minus-two-edges", params, 1)?[0])?,
    })
}

fn run(command: Command) -> Result<OutputEnvelope> {
    Ok(match command {
        Command::Canon { x, r } => {
            let rep = canonical_rep(&x, r)?;
            let terms: Vec<Value> = rep
                .terms()
                .iter()
                .map(|t| json!({ "top": t.top, "bottom": t.bottom }))
                .collect();
            OutputEnvelope::new("canon", params(&[("x", &x), ("r", &r)]))
                .plain(rep.to_string())
                .result(json!({ "rendered": rep.to_string(), "terms": terms }))
        }
        Command::Bound { x, r, s } => {
            let b = kk_bound(&x, r, s)?;
            OutputEnvelope::new("bound", params(&[("x", &x), ("r", &r), ("s", &s)]))
                .plain(b.to_string())
                .result(json!({ "bound": b.to_string() }))
        }
        Command::Count { file, r, prune } => {
            let g = read_graph(&file)?;
            let p = params(&[("file", &file.display()), ("r", &r), ("prune", &prune)]);
            if prune {
                let pc = graph::prune_then_count(&g, r)?;
                eprintln!("core: {} vertices, {} edges", pc.core_vertices, pc.core_edges);
                OutputEnvelope::new("count", p)
                    .plain(pc.count.to_string())
                    .result(json!({
                        "count": pc.count.to_string(),
                        "core_vertices": pc.core_vertices,
                        "core_edges": pc.core_edges,
                    }))
            } else {
                let c = graph::count_cliques(&g, r);
                OutputEnvelope::new("count", p)
                    .plain(c.to_string())
                    .result(json!({ "count": c.to_string() }))
            }
        }
        Command::Construct {
            family,
            params: args,
            out,
            dot,
        } => {
            let g = construct(family, &args)?;
            let name = family
                .to_possible_value()
                .expect("no skipped variants")
                .get_name()
                .to_string();
            let text = graph::to_edge_list(&g);
            if let Some(path) = &dot {
                fs::write(path, graph::to_dot(&g, &name.replace('-', "_")))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let plain = match &out {
                Some(path) => {
                    fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
                    format!(
                        "wrote {} ({} vertices, {} edges)",
                        path.display(),
                        g.n(),
                        g.edge_count()
                    )
                }
                None => text,
            };
            OutputEnvelope::new("construct", vec![("family", name), ("params", args.join(" "))])
                .plain(plain)
                .result(graph_json(&g))
        }
        Command::Table {
            n_min,
            n_max,
            pair,
            csv: _,
        } => {
            let rows = extremal::table_rows(pair, n_min, n_max)?;
            let csv = extremal::rows_to_csv(pair, &rows);
            let mut plain = String::new();
            for line in csv.lines() {
                let cells: Vec<String> = line.split(',').map(|c| format!("{c:>8}")).collect();
                writeln!(plain, "{}", cells.join("")).unwrap();
            }
            OutputEnvelope::new(
                "table",
                params(&[("n_min", &n_min), ("n_max", &n_max), ("pair", &pair)]),
            )
            .plain(plain)
            .csv(csv)
            .result(json!({ "pair": pair.to_string(), "rows": rows_json(&rows) }))
        }
        Command::Verify(which) => match which {
            Verify::T2 { n, m, r, s } => single_report("verify", extremal::verify_single_apex(n, m, r, s)?),
            Verify::T3 { n, m, w, r, s } => single_report("verify", extremal::verify_double_apex(n, m, w, r, s)?),
            Verify::T4 { n, p, s } => single_report("verify", extremal::verify_star_deletion(n, p, s)?),
            Verify::T5 { range } => range_reports("verify", &range, extremal::verify_k4_identity)?,
            Verify::T6 { range } => range_reports("verify", &range, extremal::verify_k5_identity)?,
            Verify::CanonX { range } => range_reports("verify", &range, extremal::verify_canonical_x)?,
            Verify::Plateau { n, m, t, r, s } => {
                let p = extremal::plateau_check(n, m, t, r, s)?;
                let mut env = single_report("verify", p.report.clone());
                writeln!(
                    env.plain,
                    "plateau: [{}, {}], length {}, value {}",
                    p.start, p.end, p.length, p.value
                )
                .unwrap();
                env.result["plateau"] = json!({
                    "start": p.start.to_string(),
                    "end": p.end.to_string(),
                    "length": p.length.to_string(),
                    "value": p.value.to_string(),
                });
                env
            }
            Verify::Gap { pair, n_min, n_max } => {
                let g = extremal::gap_report(pair, n_min, n_max)?;
                let mut plain = format!(
                    "gap [pair={pair} n={n_min}..{n_max}]: {}\n",
                    if g.passed() { "pass" } else { "FAIL" }
                );
                for n in &g.deviations {
                    writeln!(plain, "  deviation at n = {n}").unwrap();
                }
                OutputEnvelope::new(
                    "verify",
                    params(&[("pair", &pair), ("n_min", &n_min), ("n_max", &n_max)]),
                )
                .plain(plain)
                .passed(g.passed())
                .result(json!({ "rows": rows_json(&g.rows), "deviations": g.deviations }))
            }
            Verify::PlateauMin { u } => {
                let (n, m, w, r, s) = extremal::plateau_minimal_instance(u)?;
                let apex = extremal::verify_double_apex(n, m, w, r, s)?;
                let plateau = extremal::plateau_check(n, m, w, r, s)?;
                let expected = kk_core::binomial::binom(2 * u - 1, u - 1) + 1u32;
                let mut plain = apex.to_string();
                plain.push_str(&plateau.report.to_string());
                let length_ok = plateau.length == expected;
                writeln!(
                    plain,
                    "plateau length {} vs C({},{})+1 = {expected}: {}",
                    plateau.length,
                    2 * u - 1,
                    u - 1,
                    if length_ok { "ok" } else { "MISMATCH" }
                )
                .unwrap();
                let passed = apex.passed() && plateau.report.passed() && length_ok;
                OutputEnvelope::new("verify", params(&[("u", &u)]))
                    .plain(plain)
                    .passed(passed)
                    .result(json!({
                        "instance": { "n": n, "m": m, "w": w, "r": r, "s": s },
                        "reports": [report_json(&apex), report_json(&plateau.report)],
                        "plateau_length": plateau.length.to_string(),
                    }))
            }
        },
        Command::Search {
            mode,
            v_max,
            r,
            s,
            x,
            seed,
            iters,
            checkpoint,
        } => {
            let mut p = params(&[("v_max", &v_max), ("r", &r), ("s", &s), ("x", &x)]);
            let rec = match mode {
                Mode::Exhaustive => {
                    if v_max > search::EXHAUSTIVE_MAX_VERTICES {
                        eprintln!(
                            "warning: exhaustive search over {} labelled graphs is out of reach",
                            Count::from(2u32).pow((v_max * v_max.saturating_sub(1) / 2) as u32)
                        );
                    }
                    match &checkpoint {
                        Some(path) => {
                            p.push(("checkpoint", path.display().to_string()));
                            search::exhaustive_extremal_checkpointed(v_max, r, s, &x, path)?
                        }
                        None => search::exhaustive_extremal(v_max, r, s, &x)?,
                    }
                }
                Mode::Heuristic => {
                    let Some(seed) = seed else {
                        bail!("heuristic search needs an explicit --seed")
                    };
                    if checkpoint.is_some() {
                        bail!("--checkpoint applies to exhaustive search only");
                    }
                    p.push(("seed", seed.to_string()));
                    p.push(("iters", iters.to_string()));
                    search::heuristic_extremal(v_max, r, s, &x, seed, iters)?
                }
            };
            OutputEnvelope::new("search", p)
                .plain(rec.to_string())
                .result(record_json(&rec))
        }
        Command::Conjecture { n, v_max } => {
            let rep = search::conjecture_check(n, v_max)?;
            OutputEnvelope::new("conjecture", params(&[("n", &n), ("v_max", &v_max)]))
                .plain(rep.to_string())
                .passed(rep.consistent())
                .result(json!({
                    "x": rep.x.to_string(),
                    "lower": rep.lower.to_string(),
                    "bound": rep.bound.to_string(),
                    "refuted_in_scope": rep.refuted_in_scope,
                    "scope_insufficient": rep.scope_insufficient,
                    "record": record_json(&rep.record),
                }))
        }
        Command::Scan { r, s, x_max, v_max } => {
            let rows = search::tightness_scan(r, s, x_max, v_max)?;
            let mut csv = String::from("x,bound,best,tight\n");
            for row in &rows {
                writeln!(csv, "{},{},{},{}", row.x, row.bound, row.best, row.tight).unwrap();
            }
            let tight = rows.iter().filter(|row| row.tight).count();
            let mut plain = String::new();
            for row in &rows {
                writeln!(
                    plain,
                    "x={:<6} bound={:<8} best={:<8} {}",
                    row.x,
                    row.bound,
                    row.best,
                    if row.tight { "tight" } else { "below" }
                )
                .unwrap();
            }
            writeln!(
                plain,
                "tight at {tight} of {} budgets (graphs on at most {v_max} vertices)",
                rows.len()
            )
            .unwrap();
            let result: Vec<Value> = rows
                .iter()
                .map(|row| {
                    json!({ "x": row.x, "bound": row.bound.to_string(), "best": row.best.to_string(), "tight": row.tight })
                })
                .collect();
            OutputEnvelope::new(
                "scan",
                params(&[("r", &r), ("s", &s), ("x_max", &x_max), ("v_max", &v_max)]),
            )
            .plain(plain)
            .csv(csv)
            .result(json!({ "rows": result }))
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let format = match &cli.command {
        Command::Table { csv: true, .. } => Format::Csv,
        _ => cli.format,
    };
    let envelope = match run(cli.command) {
        Ok(env) => env,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match envelope.render(format) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    }
    if envelope.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
