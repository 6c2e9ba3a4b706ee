use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pursuit_core::constructions::{gk_clique, gk_star, gk_tree, standard_graph, ConstructionError, GkInstance, ScriptEvasion, StandardKind};
use pursuit_core::decomposition::{
    check_lemma2, load, load_star, td_tree_to_cut_decomposition, time, time_star, treedepth, treewidth_exact,
    CutDecomposition, DecompositionError,
};
use pursuit_core::engine::{play_match, Driven, EngineError, Evader, Outcome, PlacementMode, Pursuer, Trace};
use pursuit_core::geometry::{visibility_graph, GeometryError, Polygon};
use pursuit_core::graph::{diameter, GraphError};
use pursuit_core::solver::{optimal_policies, solve_game, OptimalSurvivor, SolverError};
use pursuit_core::strategies::{CliqueCoverPolicy, CutDecompositionPolicy, OuterplanarLazyPolicy, StrategyError};
use pursuit_core::verify::{known_suite, run_verify, Status, DEFAULT_SEED};
use pursuit_core::{all_pairs_distances, game_number, GameNumber, GameVariant, Graph, NumberMode};

const EXIT_USAGE: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_FAIL: u8 = 3;
/// `play` ended at the round limit without a capture.
const EXIT_ROUND_LIMIT: u8 = 4;

#[derive(Parser)]
#[command(name = "pursuit", version, about = "Cops, zombies and lazy zombies on graphs")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file (plus a sidecar of distinguished vertices).
    Gen(GenArgs),
    /// Compute a cop / zombie / lazy zombie number.
    Solve(SolveArgs),
    /// Play one match and emit its trace as JSON lines.
    Play(PlayArgs),
    /// Treedepth, treewidth, decomposition loads and the separator chain.
    Decomp(DecompArgs),
    /// Visibility graph of a simple polygon.
    Visgraph(VisArgs),
    /// Run the claims suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// gk-star, gk-clique, gk-tree, path, cycle, clique, fan, rand-outerplanar or rand-connected
    kind: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "a-star")]
    a_star: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; the sidecar goes next to it. Without it the graph goes to stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    graph: PathBuf,
    #[arg(long, default_value = "zombies")]
    variant: String,
    #[arg(long, default_value = "chosen")]
    mode: String,
    #[arg(long = "k-max", default_value_t = 3)]
    k_max: usize,
}

#[derive(Args)]
struct PlayArgs {
    graph: PathBuf,
    #[arg(long, default_value = "zombies")]
    variant: String,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// optimal, thm6, cor1, thm7 or thm9
    #[arg(long, default_value = "optimal")]
    pursuer: String,
    /// optimal or script-evasion
    #[arg(long, default_value = "optimal")]
    evader: String,
    #[arg(long, default_value_t = 1000)]
    rounds: usize,
    /// Comma-separated pursuer start vertices (adversarial placement).
    #[arg(long, value_delimiter = ',')]
    placements: Option<Vec<usize>>,
    /// Cut decomposition file for thm7 / thm9.
    #[arg(long)]
    decomp: Option<PathBuf>,
    /// Sidecar written by `gen`, needed by script-evasion.
    #[arg(long)]
    sidecar: Option<PathBuf>,
    /// Trace output file (default stdout).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecompArgs {
    graph: PathBuf,
    /// treedepth, treewidth, load or lemma2
    what: String,
    #[arg(long)]
    decomp: Option<PathBuf>,
}

#[derive(Args)]
struct VisArgs {
    polygon: PathBuf,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim id, anchor or suite name (thm1, small, hierarchy, thm6, decomp, visibility, solver).
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

/// An error with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: anyhow::Error) -> Failure {
    Failure { code: EXIT_USAGE, error }
}

fn classify(error: anyhow::Error) -> Failure {
    let code = if let Some(e) = error.downcast_ref::<SolverError>() {
        match e {
            SolverError::StateBudgetExceeded { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    } else if let Some(e) = error.downcast_ref::<DecompositionError>() {
        match e {
            DecompositionError::TooLarge(_) | DecompositionError::SetTooLarge { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    } else if let Some(e) = error.downcast_ref::<EngineError>() {
        match e {
            EngineError::SearchBudget(_) => EXIT_RESOURCE,
            EngineError::Policy { .. } | EngineError::PolicyIllegalMove { .. } => EXIT_FAIL,
            _ => EXIT_USAGE,
        }
    } else if let Some(StrategyError::Decomposition(DecompositionError::TooLarge(_) | DecompositionError::SetTooLarge { .. })) =
        error.downcast_ref::<StrategyError>()
    {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    };
    Failure { code, error }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Gen(a) => gen(a, json),
        Command::Solve(a) => solve(a, json),
        Command::Play(a) => play(a, json),
        Command::Decomp(a) => decomp(a, json),
        Command::Visgraph(a) => visgraph(a, json),
        Command::Verify(a) => verify(a, json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if json {
                println!("{}", json!({ "error": format!("{:#}", f.error), "exit_code": f.code }));
            } else {
                eprintln!("error: {:#}", f.error);
            }
            ExitCode::from(f.code)
        }
    }
}

type Outcome8 = std::result::Result<u8, Failure>;

fn print_value(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> std::result::Result<Graph, Failure> {
    let text = read(path).map_err(usage)?;
    Graph::parse(&text).map_err(|e: GraphError| usage(anyhow!(e).context(format!("bad graph file {}", path.display()))))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.sidecar.json"))
}

fn gen(a: GenArgs, json_out: bool) -> Outcome8 {
    let kind = a.kind.to_ascii_lowercase();
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| usage(anyhow!("{kind} needs --{name}")));
    let (graph, sidecar): (Graph, Value) = match kind.as_str() {
        "gk-star" | "gk-clique" | "gk-tree" => {
            let k = need(a.k, "k")?;
            let inst: GkInstance = match kind.as_str() {
                "gk-star" => gk_star(k, a.a_star.unwrap_or(10)),
                "gk-clique" => gk_clique(k, a.a_star.unwrap_or(6)),
                _ => {
                    if a.a_star.is_some() {
                        return Err(usage(anyhow!("gk-tree fixes a* from k")));
                    }
                    gk_tree(k)
                }
            }
            .map_err(|e: ConstructionError| usage(e.into()))?;
            let sidecar = serde_json::from_str(&inst.sidecar_json()).expect("sidecar is JSON");
            (inst.graph().clone(), sidecar)
        }
        other => {
            let kind: StandardKind = other.parse().map_err(|e: String| usage(anyhow!(e)))?;
            let n = need(a.n, "n")?;
            let g = standard_graph(kind, n, a.seed).map_err(|e| usage(e.into()))?;
            let mut side = json!({ "kind": kind, "n": n, "seed": a.seed });
            if kind == StandardKind::Fan {
                side["apex"] = json!(n - 1);
            }
            (g, side)
        }
    };
    let graph_json = graph.to_json();
    let summary = json!({ "kind": kind, "n": graph.n(), "edges": graph.edge_count() });
    match &a.out {
        Some(out) => {
            write(out, &graph_json).map_err(usage)?;
            let side = sidecar_path(out);
            write(&side, &serde_json::to_string_pretty(&sidecar).expect("sidecar serializes")).map_err(usage)?;
            if json_out {
                let mut s = summary;
                s["graph"] = json!(out);
                s["sidecar"] = json!(side);
                print_value(&s);
            } else {
                println!("wrote {} ({} vertices, {} edges) and {}", out.display(), graph.n(), graph.edge_count(), side.display());
            }
        }
        None => {
            if json_out {
                print_value(&json!({ "graph": serde_json::from_str::<Value>(&graph_json).expect("graph is JSON"), "sidecar": sidecar }));
            } else {
                println!("{graph_json}");
            }
        }
    }
    Ok(0)
}

fn parse_variant(s: &str) -> std::result::Result<GameVariant, Failure> {
    s.parse().map_err(|e: String| usage(anyhow!(e)))
}

fn solve(a: SolveArgs, json_out: bool) -> Outcome8 {
    let g = read_graph(&a.graph)?;
    let variant = parse_variant(&a.variant)?;
    let mode: NumberMode = a.mode.parse().map_err(|e: String| usage(anyhow!(e)))?;
    if a.k_max == 0 {
        return Err(usage(anyhow!("--k-max must be at least 1")));
    }
    let r = game_number(&g, variant, mode, a.k_max).map_err(|e| classify(e.into()))?;
    if json_out {
        print_value(&serde_json::to_value(&r).expect("result serializes"));
    } else {
        match r.value {
            GameNumber::Exact(k) => println!("{k}"),
            GameNumber::NoneUpTo(k) => println!("NONE_UP_TO({k})"),
        }
        if let Some(w) = &r.witness {
            println!("witness placement: {w:?}");
        }
        if let Some(s) = r.survivor {
            println!("escaping survivor start: {s}");
        }
    }
    Ok(0)
}

fn read_decomposition(path: &Option<PathBuf>, g: &Graph) -> std::result::Result<CutDecomposition, Failure> {
    match path {
        Some(p) => {
            let text = read(p).map_err(usage)?;
            CutDecomposition::from_json(&text).map_err(|e| usage(e.into()))
        }
        None => {
            let (_, tree) = treedepth(g).map_err(|e| classify(e.into()))?;
            td_tree_to_cut_decomposition(g, &tree).map_err(|e| classify(e.into()))
        }
    }
}

fn play(a: PlayArgs, json_out: bool) -> Outcome8 {
    let g = read_graph(&a.graph)?;
    let variant = parse_variant(&a.variant)?;
    let d = all_pairs_distances(&g);
    if a.k == 0 {
        return Err(usage(anyhow!("--k must be at least 1")));
    }
    let placement = match &a.placements {
        Some(p) => PlacementMode::Adversarial(p.clone()),
        None => PlacementMode::Chosen,
    };
    let pursuer_name = a.pursuer.to_ascii_lowercase();
    let evader_name = a.evader.to_ascii_lowercase();
    let needs_table = pursuer_name == "optimal" || evader_name == "optimal";
    let table = if needs_table { Some(solve_game(&g, variant, a.k).map_err(|e| classify(e.into()))?) } else { None };
    let policy_err = |e: StrategyError| classify(e.into());

    let mut pursuer: Box<dyn Pursuer + '_> = match pursuer_name.as_str() {
        "optimal" => Box::new(Driven::new(optimal_policies(table.as_ref().expect("table solved")).0)),
        "thm6" | "cor1" => {
            if variant != GameVariant::LazyZombies || a.k != 2 {
                return Err(usage(anyhow!("{pursuer_name} plays two lazy zombies (--variant lazy --k 2)")));
            }
            let p = if pursuer_name == "thm6" {
                OuterplanarLazyPolicy::new(&g, &d)
            } else {
                OuterplanarLazyPolicy::universal(&g, &d)
            }
            .map_err(policy_err)?;
            Box::new(Driven::new(p))
        }
        "thm7" | "thm9" => {
            if variant != GameVariant::LazyZombies {
                return Err(usage(anyhow!("{pursuer_name} plays lazy zombies (--variant lazy)")));
            }
            let decomp = read_decomposition(&a.decomp, &g)?;
            if pursuer_name == "thm7" {
                let p = CutDecompositionPolicy::new(&g, &d, decomp).map_err(policy_err)?;
                if p.zombies() != a.k {
                    return Err(usage(anyhow!("this decomposition needs --k {}", p.zombies())));
                }
                Box::new(Driven::new(p))
            } else {
                let p = CliqueCoverPolicy::new(&g, &d, decomp).map_err(policy_err)?;
                if p.zombies() != a.k {
                    return Err(usage(anyhow!("this decomposition needs --k {}", p.zombies())));
                }
                Box::new(Driven::new(p))
            }
        }
        other => return Err(usage(anyhow!("unknown pursuer policy {other:?}"))),
    };

    let instance: Option<GkInstance> = match (&evader_name[..], &a.sidecar) {
        ("script-evasion", Some(path)) => Some(load_instance(path, &g)?),
        ("script-evasion", None) => Some(load_instance(&sidecar_path(&a.graph), &g)?),
        _ => None,
    };
    let mut evader: Box<dyn Evader + '_> = match evader_name.as_str() {
        "optimal" => Box::new(OptimalSurvivor { table: table.as_ref().expect("table solved") }),
        "script-evasion" => Box::new(ScriptEvasion::auto(instance.as_ref().expect("instance loaded"))),
        other => return Err(usage(anyhow!("unknown evader policy {other:?}"))),
    };

    let trace: Trace = play_match(&g, &d, variant, a.k, pursuer.as_mut(), evader.as_mut(), &placement, a.rounds)
        .map_err(|e| classify(e.into()))?;
    let text = trace.to_jsonl();
    match &a.out {
        Some(out) => write(out, &text).map_err(usage)?,
        None if !json_out => print!("{text}"),
        None => {}
    }
    let (outcome, code) = match trace.outcome {
        Outcome::Capture { .. } => ("CAPTURE", 0),
        Outcome::RoundLimit { .. } => ("ROUND_LIMIT", EXIT_ROUND_LIMIT),
    };
    if json_out {
        let records: Vec<Value> = trace.records.iter().map(|r| serde_json::to_value(r).expect("record serializes")).collect();
        print_value(&json!({
            "outcome": outcome,
            "capture_round": trace.capture_round(),
            "first_repeat": trace.first_repeat(),
            "header": serde_json::to_value(&trace.header).expect("header serializes"),
            "records": if a.out.is_some() { Value::Null } else { Value::Array(records) },
        }));
    } else {
        match trace.capture_round() {
            Some(r) => eprintln!("{outcome} in round {r}"),
            None => eprintln!("{outcome} after {} rounds", a.rounds),
        }
    }
    Ok(code)
}

fn load_instance(path: &Path, g: &Graph) -> std::result::Result<GkInstance, Failure> {
    let text = read(path).map_err(|e| usage(e.context("script-evasion needs the sidecar written by gen (--sidecar)")))?;
    let mut inst: GkInstance = serde_json::from_str(&text).map_err(|e| usage(anyhow!("bad sidecar {}: {e}", path.display())))?;
    if inst.n != g.n() || inst.components.is_empty() {
        return Err(usage(anyhow!("sidecar {} does not describe this graph", path.display())));
    }
    inst.graph = Some(g.clone());
    Ok(inst)
}

fn decomp(a: DecompArgs, json_out: bool) -> Outcome8 {
    let g = read_graph(&a.graph)?;
    let res = |e: DecompositionError| classify(e.into());
    let report = match a.what.to_ascii_lowercase().as_str() {
        "treedepth" => {
            let (td, tree) = treedepth(&g).map_err(res)?;
            json!({ "treedepth": td, "tree": serde_json::from_str::<Value>(&tree.to_json()).expect("tree is JSON") })
        }
        "treewidth" => json!({ "treewidth": treewidth_exact(&g).map_err(res)? }),
        "load" => {
            let d = read_decomposition(&a.decomp, &g)?;
            let diam = diameter(&g).map_err(|e| usage(e.into()))?;
            let (l, ls) = (load(&g, &d).map_err(res)?, load_star(&g, &d).map_err(res)?);
            let (t, ts) = (time(&g, &d).map_err(res)?, time_star(&g, &d).map_err(res)?);
            let base = d.cdw() as u128 * u128::from(diam.saturating_sub(1)) + 1;
            let bound = base.checked_pow(d.height() as u32 + 1);
            let time_ok = bound.is_none_or(|b| t <= b);
            let (td, _) = treedepth(&g).map_err(res)?;
            json!({
                "load": l,
                "load_star": ls,
                "time": t.to_string(),
                "time_star": ts.to_string(),
                "treedepth": td,
                "height": d.height(),
                "cdw": d.cdw(),
                "diameter": diam,
                "time_bound": bound.map(|b| b.to_string()),
                "time_within_bound": time_ok,
                "load_star_le_load": ls <= l,
                "treedepth_le_load": td <= l,
                "status": if time_ok && ls <= l && td <= l { "PASS" } else { "FAIL" },
            })
        }
        "lemma2" => {
            let r = check_lemma2(&g).map_err(res)?;
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["status"] = json!(if r.holds { "PASS" } else { "FAIL" });
            v
        }
        other => return Err(usage(anyhow!("unknown decomposition report {other:?} (treedepth, treewidth, load, lemma2)"))),
    };
    let failed = report.get("status").and_then(Value::as_str) == Some("FAIL");
    if json_out {
        print_value(&report);
    } else {
        for (k, v) in report.as_object().expect("reports are objects") {
            println!("{k}: {v}");
        }
    }
    Ok(if failed { EXIT_FAIL } else { 0 })
}

fn visgraph(a: VisArgs, json_out: bool) -> Outcome8 {
    let text = read(&a.polygon).map_err(usage)?;
    let p = Polygon::from_json(&text).map_err(|e: GeometryError| usage(e.into()))?;
    let g = visibility_graph(&p).map_err(|e| usage(anyhow!(e).context("INVALID_POLYGON")))?;
    let graph_json = g.to_json();
    match &a.out {
        Some(out) => {
            write(out, &graph_json).map_err(usage)?;
            if json_out {
                print_value(&json!({ "graph": out, "n": g.n(), "edges": g.edge_count() }));
            } else {
                println!("wrote {} ({} vertices, {} visible pairs)", out.display(), g.n(), g.edge_count());
            }
        }
        None => println!("{graph_json}"),
    }
    Ok(0)
}

fn verify(a: VerifyArgs, json_out: bool) -> Outcome8 {
    if let Some(s) = &a.suite {
        if !known_suite(s) {
            return Err(usage(anyhow!("unknown suite {s:?}")));
        }
    }
    let report = run_verify(a.suite.as_deref(), a.seed);
    if json_out {
        print_value(&serde_json::to_value(&report).expect("report serializes"));
    } else {
        for c in &report.claims {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIPPED",
            };
            println!("{:<26} {:<7} {:<8} {:>8} ms", c.id, c.anchor, status, c.runtime_ms);
            if c.status == Status::Fail {
                println!("    {}", c.measured);
            }
        }
    }
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}
