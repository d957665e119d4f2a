//! `cospec`: spectra, enumeration, censuses, lemma suites and union checks
//! from the command line.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use cospec::cospectral::{classify_shard, merge, CensusMeta};
use cospec::enumerate::write_graph6;
use cospec::invariants::{check_class_agreement, check_graph, summarize_poly, write_csv};
use cospec::theorems::{random_unions, union_poly_identity};
use cospec::{
    build_matrix, char_poly, decode_graph6, determination_status, enumerate, mates, run_theorem,
    save_census, spectral_moments, Budget, Census, CensusStore, GraphFilter, LemmaCheckResult,
    MatrixKind, Outcome, TheoremId, TheoremReport, WorkPartition,
};

const OUTPUT_SCHEMA: &str = "cospec-output/1";

#[derive(Parser)]
#[command(name = "cospec", version, about = "Exact spectral characterization of small graphs")]
struct Cli {
    /// Worker threads; COSPEC_THREADS overrides. Defaults to available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for persisted censuses.
    #[arg(long, global = true, env = "COSPEC_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Allow censuses and budgets of order 10.
    #[arg(long, global = true)]
    allow_order_10: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial, moments and spectral summary of a graph.
    Spectrum {
        /// graph6 text, or `-` to read one graph per line from stdin.
        graph6: String,
        #[arg(long, default_value = "Q")]
        kind: MatrixKind,
        /// Accuracy of the reported largest eigenvalue.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Stream every graph of order N as graph6, one per line.
    Enumerate {
        #[arg(short = 'n')]
        order: usize,
        #[arg(long, default_value = "all")]
        filter: GraphFilter,
        #[arg(long, default_value_t = 0)]
        shard: usize,
        #[arg(long, default_value_t = 1)]
        shards: usize,
    },
    /// Build a census, persist it and print the class-size histogram.
    Classify {
        #[arg(short = 'n')]
        order: usize,
        #[arg(long, default_value = "Q")]
        kind: MatrixKind,
        #[arg(long, default_value = "all")]
        filter: GraphFilter,
        /// Number of work shards; defaults to four per thread.
        #[arg(long)]
        shards: Option<usize>,
        /// Output file; defaults to the cache directory or the working directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include the elapsed time in the output.
        #[arg(long)]
        timings: bool,
    },
    /// Non-isomorphic graphs sharing the spectrum of a graph.
    Mates {
        graph6: String,
        #[arg(long, default_value = "Q")]
        kind: MatrixKind,
    },
    /// Whether a graph is determined by its A, L and Q spectra.
    Status {
        /// graph6 text, or `-` to read one graph per line from stdin.
        graph6: String,
    },
    /// Run the identity checks on every graph of order 1..=N.
    Lemmas {
        #[arg(short = 'n')]
        order: usize,
        /// Largest order for the eigenvalue monotonicity checks.
        #[arg(long, default_value_t = 6)]
        q1_max: usize,
    },
    /// Check a union-determination claim by exhaustion (`all` runs every one).
    Verify {
        theorem: String,
        #[arg(long, default_value_t = 9)]
        budget: usize,
        #[arg(long)]
        timings: bool,
    },
    /// Check the union polynomial identity on seeded random instances.
    ProbeUnion {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_order: usize,
    },
}

struct Ctx {
    format: Format,
    /// One compact record per input line when graphs come from stdin.
    stream: bool,
    header_done: Cell<bool>,
    threads: usize,
    cache_dir: Option<PathBuf>,
    allow_order_10: bool,
}

impl Ctx {
    fn census_limit(&self) -> usize {
        if self.allow_order_10 {
            10
        } else {
            9
        }
    }

    fn default_shards(&self) -> usize {
        4 * self.threads
    }

    fn store(&self, max_order: usize) -> CensusStore {
        let shards = self.default_shards();
        let store = CensusStore::new(max_order.min(self.census_limit()))
            .with_builder(move |n, kind| parallel_census(n, kind, GraphFilter::All, shards));
        match &self.cache_dir {
            Some(d) => store.with_dir(d),
            None => store,
        }
    }
}

fn parallel_census(n: usize, kind: MatrixKind, filter: GraphFilter, shards: usize) -> cospec::Result<Census> {
    let parts = WorkPartition::all(shards)?
        .into_par_iter()
        .map(|p| classify_shard(n, kind, filter, p))
        .collect::<cospec::Result<Vec<_>>>()?;
    merge(parts)
}

fn emit(value: &impl Serialize) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

impl Ctx {
    fn emit(&self, value: &impl Serialize) -> Result<()> {
        if !self.stream {
            return emit(value);
        }
        let mut out = io::stdout().lock();
        serde_json::to_writer(&mut out, value)?;
        writeln!(out)?;
        Ok(())
    }

    fn header(&self, line: &str) {
        if !self.header_done.replace(true) {
            println!("{line}");
        }
    }
}

/// The graph6 argument, or every non-empty stdin line when it is `-`.
fn inputs(arg: &str) -> Result<Vec<String>> {
    if arg != "-" {
        return Ok(vec![arg.to_string()]);
    }
    let mut out = Vec::new();
    for line in io::stdin().lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() {
            out.push(t.to_string());
        }
    }
    Ok(out)
}

fn graph(text: &str) -> Result<cospec::Graph> {
    decode_graph6(text).with_context(|| format!("cannot decode graph6 `{text}`"))
}

fn spectrum(ctx: &Ctx, g6: &str, kind: MatrixKind, tol: f64) -> Result<i32> {
    let g = graph(g6)?;
    let p = char_poly(&build_matrix(&g, kind));
    let s = summarize_poly(&p, kind, tol);
    let traces = spectral_moments(&g, kind, 3);
    let moments: Vec<String> = traces.iter().map(|x| x.to_string()).collect();
    match ctx.format {
        Format::Json => ctx.emit(&json!({
            "schema": OUTPUT_SCHEMA,
            "graph6": g6,
            "kind": kind,
            "poly": p.to_string(),
            "moments": moments,
            "summary": s,
        }))?,
        Format::Csv => {
            ctx.header("graph6,kind,poly,det,pseudo_det,zero_mult,moments,largest_root,regular");
            println!(
                "{g6},{kind},\"{p}\",{},{},{},\"{}\",{},{}",
                s.det,
                s.pseudo_det,
                s.zero_mult,
                moments.join(","),
                s.largest_root.map_or(String::new(), |r| format!("{r:.9}")),
                s.regular_from_spectrum
            );
        }
        Format::Text => {
            println!("graph    {g6}");
            println!("kind     {kind}");
            println!("poly     {p}");
            println!("det      {}", s.det);
            println!("pdet     {}", s.pseudo_det);
            println!("zeros    {}", s.zero_mult);
            println!("moments  {}", moments.join(","));
            if let Some(r) = s.largest_root {
                println!("largest  {r:.9}");
            }
            println!("regular  {}", s.regular_from_spectrum);
        }
    }
    Ok(0)
}

fn classify_cmd(
    ctx: &Ctx,
    n: usize,
    kind: MatrixKind,
    filter: GraphFilter,
    shards: Option<usize>,
    out: Option<PathBuf>,
    timings: bool,
) -> Result<i32> {
    if n > ctx.census_limit() {
        bail!("order {n} needs --allow-order-10 (at most 10)");
    }
    let start = std::time::Instant::now();
    let census = parallel_census(n, kind, filter, shards.unwrap_or(ctx.default_shards()))?;
    let elapsed = start.elapsed();
    let path = match (out, &ctx.cache_dir) {
        (Some(p), _) => p,
        (None, Some(d)) if filter == GraphFilter::All => {
            std::fs::create_dir_all(d)?;
            d.join(CensusStore::file_name(n, kind))
        }
        (None, Some(d)) => {
            std::fs::create_dir_all(d)?;
            d.join(format!("census-n{n}-{kind}-{filter}.bin"))
        }
        (None, None) => PathBuf::from(format!("census-n{n}-{kind}.bin")),
    };
    save_census(&census, &path)?;
    let histogram: BTreeMap<usize, usize> = census.size_histogram();
    let determined = histogram.get(&1).copied().unwrap_or(0);
    match ctx.format {
        Format::Json => {
            let mut v = json!({
                "schema": OUTPUT_SCHEMA,
                "meta": census.meta,
                "classes": census.class_count(),
                "graphs": census.graph_count(),
                "determined": determined,
                "histogram": histogram,
                "file": path,
            });
            if timings {
                v["elapsed_ms"] = json!(elapsed.as_millis());
            }
            emit(&v)?;
        }
        Format::Csv => {
            println!("class_size,classes");
            for (size, count) in &histogram {
                println!("{size},{count}");
            }
        }
        Format::Text => {
            let CensusMeta { order, kind, filter, .. } = &census.meta;
            println!("order {order}, kind {kind}, filter {filter}");
            println!("{} graphs in {} classes, {determined} determined", census.graph_count(), census.class_count());
            for (size, count) in &histogram {
                println!("  size {size:>3}: {count}");
            }
            println!("saved to {}", path.display());
            if timings {
                println!("elapsed {:.3}s", elapsed.as_secs_f64());
            }
        }
    }
    Ok(0)
}

fn mates_cmd(ctx: &Ctx, g6: &str, kind: MatrixKind) -> Result<i32> {
    let g = graph(g6)?;
    let store = ctx.store(g.order());
    let census = store.get(g.order(), kind)?;
    let found: Vec<String> = mates(&g, kind, &census)?.iter().map(|m| m.to_string()).collect();
    match ctx.format {
        Format::Json => emit(&json!({
            "schema": OUTPUT_SCHEMA,
            "graph6": g6,
            "kind": kind,
            "determined": found.is_empty(),
            "mates": found,
        }))?,
        Format::Csv => {
            println!("graph6,kind,mate");
            for m in &found {
                println!("{g6},{kind},{m}");
            }
        }
        Format::Text => {
            for m in &found {
                println!("{m}");
            }
        }
    }
    Ok(0)
}

fn status_cmd(ctx: &Ctx, store: &CensusStore, g6: &str) -> Result<i32> {
    let g = graph(g6)?;
    let s = determination_status(&g, store)?;
    match ctx.format {
        Format::Json => ctx.emit(&json!({
            "schema": OUTPUT_SCHEMA,
            "graph6": g6,
            "das": s.das,
            "dls": s.dls,
            "dqs": s.dqs,
        }))?,
        Format::Csv => {
            ctx.header("graph6,das,dls,dqs");
            println!("{g6},{},{},{}", s.das, s.dls, s.dqs);
        }
        Format::Text => println!("DAS {}  DLS {}  DQS {}", s.das, s.dls, s.dqs),
    }
    Ok(0)
}

#[derive(Default, Serialize)]
struct Tally {
    holds: usize,
    violated: usize,
    finding: usize,
    not_applicable: usize,
}

fn lemmas_cmd(ctx: &Ctx, max_n: usize, q1_max: usize) -> Result<i32> {
    if max_n > ctx.census_limit() {
        bail!("order {max_n} needs --allow-order-10 (at most 10)");
    }
    let store = ctx.store(max_n);
    let mut rows: Vec<LemmaCheckResult> = Vec::new();
    for n in 1..=max_n {
        let shards = WorkPartition::all(ctx.default_shards())?;
        let per_shard: Vec<Vec<LemmaCheckResult>> = shards
            .into_par_iter()
            .map(|p| -> cospec::Result<_> {
                Ok(enumerate(n, GraphFilter::All, p)?
                    .flat_map(|g| check_graph(&g, q1_max))
                    .collect())
            })
            .collect::<cospec::Result<_>>()?;
        rows.extend(per_shard.into_iter().flatten());
        for kind in MatrixKind::ALL {
            let census = store.get(n, kind)?;
            let classes: Vec<Vec<cospec::Graph>> = census
                .classes()
                .filter(|(_, m)| m.len() > 1)
                .map(|(_, m)| m.iter().map(|c| c.to_graph()).collect())
                .collect();
            rows.extend(classes.par_iter().map(|c| check_class_agreement(kind, c)).collect::<Vec<_>>());
        }
    }
    let mut tally: BTreeMap<&str, Tally> = BTreeMap::new();
    for r in &rows {
        let t = tally.entry(r.lemma).or_default();
        match r.outcome {
            Outcome::Holds => t.holds += 1,
            Outcome::Violated => t.violated += 1,
            Outcome::Finding => t.finding += 1,
            Outcome::NotApplicable => t.not_applicable += 1,
        }
    }
    let violations: Vec<&LemmaCheckResult> = rows.iter().filter(|r| r.outcome == Outcome::Violated).collect();
    let findings: Vec<&LemmaCheckResult> = rows.iter().filter(|r| r.outcome == Outcome::Finding).collect();
    match ctx.format {
        Format::Json => emit(&json!({
            "schema": OUTPUT_SCHEMA,
            "max_order": max_n,
            "q1_max_order": q1_max,
            "tally": tally,
            "violations": violations,
            "findings": findings,
        }))?,
        Format::Csv => {
            let applicable: Vec<LemmaCheckResult> =
                rows.iter().filter(|r| r.outcome != Outcome::NotApplicable).cloned().collect();
            write_csv(&applicable, io::stdout().lock())?;
        }
        Format::Text => {
            println!("{:<18} {:>8} {:>8} {:>8} {:>8}", "check", "holds", "violated", "finding", "n/a");
            for (lemma, t) in &tally {
                println!(
                    "{lemma:<18} {:>8} {:>8} {:>8} {:>8}",
                    t.holds, t.violated, t.finding, t.not_applicable
                );
            }
            for r in violations.iter().chain(&findings) {
                println!("{:?} {} {}: {} vs {}", r.outcome, r.lemma, r.graph6, r.lhs, r.rhs);
            }
        }
    }
    Ok(if violations.is_empty() { 0 } else { 1 })
}

fn verify_cmd(ctx: &Ctx, theorem: &str, budget: usize, timings: bool) -> Result<i32> {
    let budget = Budget::new(budget, ctx.allow_order_10)?;
    let ids: Vec<TheoremId> = if theorem == "all" {
        TheoremId::ALL.to_vec()
    } else {
        vec![theorem.parse()?]
    };
    let store = ctx.store(budget.max_order());
    let mut reports: Vec<TheoremReport> = Vec::new();
    for id in ids {
        let mut r = run_theorem(id, budget, &store)?;
        if !timings {
            r.runtime_ms = None;
        }
        reports.push(r);
    }
    let code = reports.iter().map(|r| r.exit_code()).max().unwrap_or(0);
    match ctx.format {
        Format::Json if reports.len() == 1 => emit(&reports[0])?,
        Format::Json => emit(&reports)?,
        Format::Csv => {
            println!("theorem,budget,checked,confirmed,base,r,s,mate");
            for r in &reports {
                for c in &r.counterexamples {
                    for m in &c.mates {
                        println!(
                            "{},{},{},{},{},{},{},{}",
                            r.theorem, r.budget, r.instances_checked, r.instances_confirmed, c.base, c.r, c.s, m
                        );
                    }
                }
            }
        }
        Format::Text => {
            println!("{}", TheoremReport::text_header());
            for r in &reports {
                println!("{}", r.text_row());
            }
            for r in &reports {
                for c in &r.counterexamples {
                    println!(
                        "{}: {} ∪ {}K1 ∪ {}K2 shares its {}-spectrum with {}",
                        r.theorem,
                        c.base,
                        c.r,
                        c.s,
                        r.kind,
                        c.mates.join(", ")
                    );
                }
            }
        }
    }
    Ok(code)
}

fn probe_union_cmd(ctx: &Ctx, seed: u64, count: usize, max_order: usize) -> Result<i32> {
    let samples = random_unions(seed, count, max_order)?;
    let mut failures = Vec::new();
    for (g, r, s) in &samples {
        if !union_poly_identity(g, *r, *s)? {
            failures.push(json!({ "graph6": g.to_string(), "r": r, "s": s }));
        }
    }
    match ctx.format {
        Format::Json => emit(&json!({
            "schema": OUTPUT_SCHEMA,
            "seed": seed,
            "count": count,
            "max_order": max_order,
            "holds": count - failures.len(),
            "failures": failures,
        }))?,
        Format::Csv => {
            println!("seed,count,holds");
            println!("{seed},{count},{}", count - failures.len());
        }
        Format::Text => println!("{} of {count} instances satisfy the identity", count - failures.len()),
    }
    Ok(if failures.is_empty() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<i32> {
    let threads = match std::env::var("COSPEC_THREADS") {
        Ok(v) => v.parse().context("COSPEC_THREADS must be a positive integer")?,
        Err(_) => cli
            .threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
    };
    if threads == 0 {
        bail!("thread count must be positive");
    }
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    let stream = matches!(&cli.command, Command::Spectrum { graph6, .. } | Command::Status { graph6 } if graph6 == "-");
    let ctx = Ctx {
        format: cli.format,
        stream,
        header_done: Cell::new(false),
        threads,
        cache_dir: cli.cache_dir,
        allow_order_10: cli.allow_order_10,
    };
    match cli.command {
        Command::Spectrum { graph6, kind, tol } => {
            for g6 in inputs(&graph6)? {
                spectrum(&ctx, &g6, kind, tol)?;
            }
            Ok(0)
        }
        Command::Enumerate { order, filter, shard, shards } => {
            let part = WorkPartition::new(shard, shards)?;
            let out = BufWriter::new(io::stdout().lock());
            write_graph6(enumerate(order, filter, part)?, out)?;
            Ok(0)
        }
        Command::Classify { order, kind, filter, shards, out, timings } => {
            classify_cmd(&ctx, order, kind, filter, shards, out, timings)
        }
        Command::Mates { graph6, kind } => mates_cmd(&ctx, &graph6, kind),
        Command::Status { graph6 } => {
            let store = ctx.store(ctx.census_limit());
            for g6 in inputs(&graph6)? {
                status_cmd(&ctx, &store, &g6)?;
            }
            Ok(0)
        }
        Command::Lemmas { order, q1_max } => lemmas_cmd(&ctx, order, q1_max),
        Command::Verify { theorem, budget, timings } => verify_cmd(&ctx, &theorem, budget, timings),
        Command::ProbeUnion { seed, count, max_order } => probe_union_cmd(&ctx, seed, count, max_order),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
