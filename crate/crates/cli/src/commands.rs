use std::fmt::Write as _;
use std::io::Read;

use serde_json::{json, Value};

use metric_dim::edgelist::{self, LabeledGraph};
use metric_dim::embed::{embed_sequence, parse_records, to_csv, SequenceAlphabet};
use metric_dim::experiments::{er_resolving_trial, tree_dim_distribution, Strategy};
use metric_dim::generators::{self, RngSeed};
use metric_dim::hamming::{
    augment, beta_h2, hypercube_reference, HammingResolvingSet, HammingSpace, Verdict, VerifyMode,
};
use metric_dim::ich::ich_trace;
use metric_dim::resolve::{
    first_collision, is_doubly_resolving, min_doubly_resolving_bruteforce_with_cap,
    min_resolving_bruteforce_with_cap, phi,
};
use metric_dim::tree::{classify_tree, tree_metric_dimension};
use metric_dim::{apsp, Error, Graph};

use crate::output::Report;
use crate::{Cli, Command, Format, GenFamily, Global, HammingOp, Recipe, StrategyArg};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

pub fn run(cli: &Cli) -> Outcome<String> {
    let g = &cli.global;
    if let Command::Gen { family } = &cli.command {
        return gen(g, family);
    }
    let report = match &cli.command {
        Command::Exact { graph } => exact(g, graph)?,
        Command::Ich { graph } => ich(graph)?,
        Command::Tree { graph } => tree(graph)?,
        Command::Verify { graph, set } => verify(graph, set)?,
        Command::DoublyExact { graph } => doubly_exact(g, graph)?,
        Command::Hamming { op } => hamming(g, op)?,
        Command::Embed { sequences, set } => embed(g, sequences, set)?,
        Command::Experiment { recipe } => experiment(g, recipe)?,
        Command::Gen { .. } => unreachable!("handled above"),
    };
    report.render(g.format.unwrap_or(Format::Json))
}

/// Contents of `path`, or standard input for `-`.
fn read_input(path: &str) -> Outcome<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Domain(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn load_graph(path: &str) -> Outcome<LabeledGraph> {
    let text = read_input(path)?;
    edgelist::parse(&text).map_err(|e| Failure::Domain(format!("{path}: {e}")))
}

fn names(g: &LabeledGraph, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&v| g.label(v).to_string()).collect()
}

fn graph_params(path: &str, g: &LabeledGraph) -> Value {
    json!({ "input": path, "n": g.graph.n(), "edges": g.graph.edge_count() })
}

fn exact(global: &Global, path: &str) -> Outcome<Report> {
    let g = load_graph(path)?;
    let d = apsp(&g.graph);
    let basis = min_resolving_bruteforce_with_cap(&d, global.cap)?;
    let set = names(&g, &basis.vertices);
    let text = format!("beta = {}\nset = {}\n", basis.len(), set.join(" "));
    let mut params = graph_params(path, &g);
    params["cap"] = json!(global.cap);
    Ok(Report::new(
        "exact",
        params,
        json!({ "beta": basis.len(), "set": set, "verified": basis.verified, "method": basis.method }),
        text,
    ))
}

fn ich(path: &str) -> Outcome<Report> {
    let g = load_graph(path)?;
    let trace = ich_trace(&apsp(&g.graph))?;
    let set: Vec<String> = trace.iter().map(|s| g.label(s.vertex).to_string()).collect();
    let rows: Vec<Value> = trace
        .iter()
        .map(|s| json!({ "step": s.step, "vertex": g.label(s.vertex), "entropy": s.entropy }))
        .collect();
    let mut text = format!("size = {}\nset = {}\n", set.len(), set.join(" "));
    let mut csv = String::from("step,vertex,entropy\n");
    for s in &trace {
        writeln!(text, "  step {:>3}  {:<12} H = {:.6}", s.step, g.label(s.vertex), s.entropy).unwrap();
        writeln!(csv, "{},{},{}", s.step, g.label(s.vertex), s.entropy).unwrap();
    }
    Ok(Report::new(
        "ich",
        graph_params(path, &g),
        json!({ "size": set.len(), "set": set, "verified": true, "trace": rows }),
        text,
    )
    .with_csv(csv))
}

fn tree(path: &str) -> Outcome<Report> {
    let g = load_graph(path)?;
    let class = classify_tree(&g.graph)?;
    let basis = tree_metric_dimension(&g.graph)?;
    let set = names(&g, &basis.vertices);
    let text = format!(
        "beta = {}\nset = {}\nleaves = {}\nexterior major = {}\n",
        basis.len(),
        set.join(" "),
        class.leaves.len(),
        names(&g, &class.exterior_major).join(" ")
    );
    Ok(Report::new(
        "tree",
        graph_params(path, &g),
        json!({
            "beta": basis.len(),
            "set": set,
            "verified": basis.verified,
            "leaves": class.leaves.len(),
            "exterior_major": names(&g, &class.exterior_major),
        }),
        text,
    ))
}

fn resolve_labels(g: &LabeledGraph, labels: &[String]) -> Outcome<Vec<usize>> {
    labels
        .iter()
        .map(|l| {
            g.id_of(l)
                .ok_or_else(|| Failure::Domain(format!("no vertex labelled {l:?}")))
        })
        .collect()
}

fn verify(path: &str, labels: &[String]) -> Outcome<Report> {
    let g = load_graph(path)?;
    let ids = resolve_labels(&g, labels)?;
    let d = apsp(&g.graph);
    let collision = first_collision(&d, &ids)?;
    let doubly = match is_doubly_resolving(&d, &ids) {
        Ok(b) => Some(b),
        Err(Error::TooFewVertices(_) | Error::Disconnected) => None,
        Err(e) => return Err(e.into()),
    };
    let sigs = phi(&d, &ids)?;
    let mut text = format!(
        "resolving = {}\ndoubly resolving = {}\n",
        collision.is_none(),
        doubly.map_or("n/a".to_string(), |b| b.to_string())
    );
    let mut csv = format!("vertex,{}\n", labels.join(","));
    let signatures: Vec<Value> = sigs
        .iter()
        .map(|s| {
            let coords: Vec<String> = s.coords.iter().map(|&c| dist_str(c)).collect();
            writeln!(csv, "{},{}", g.label(s.vertex), coords.join(",")).unwrap();
            json!({ "vertex": g.label(s.vertex), "coords": coords_json(&s.coords) })
        })
        .collect();
    if let Some((u, v)) = collision {
        writeln!(text, "collision = {} {}", g.label(u), g.label(v)).unwrap();
    }
    let mut params = graph_params(path, &g);
    params["set"] = json!(labels);
    Ok(Report::new(
        "verify",
        params,
        json!({
            "resolving": collision.is_none(),
            "doubly_resolving": doubly,
            "collision": collision.map(|(u, v)| [g.label(u), g.label(v)]),
            "signatures": signatures,
        }),
        text,
    )
    .with_csv(csv))
}

/// Unreachable distances print as `inf`.
fn dist_str(d: u64) -> String {
    if d == metric_dim::UNREACHABLE {
        "inf".into()
    } else {
        d.to_string()
    }
}

fn coords_json(coords: &[u64]) -> Vec<Value> {
    coords
        .iter()
        .map(|&c| if c == metric_dim::UNREACHABLE { Value::Null } else { json!(c) })
        .collect()
}

fn doubly_exact(global: &Global, path: &str) -> Outcome<Report> {
    let g = load_graph(path)?;
    let set = min_doubly_resolving_bruteforce_with_cap(&apsp(&g.graph), global.cap)?;
    let labels = names(&g, &set);
    let mut params = graph_params(path, &g);
    params["cap"] = json!(global.cap);
    Ok(Report::new(
        "doubly-exact",
        params,
        json!({ "size": set.len(), "set": labels }),
        format!("size = {}\nset = {}\n", set.len(), labels.join(" ")),
    ))
}

fn gen(global: &Global, family: &GenFamily) -> Outcome<String> {
    let seed = RngSeed(global.seed);
    let words = |k: usize, a: usize, graph: Graph| -> Outcome<LabeledGraph> {
        let space = HammingSpace::new(k, a)?;
        let labels = (0..graph.n() as u64).map(|i| space.decode(&space.word_at(i))).collect();
        Ok(LabeledGraph { graph, labels })
    };
    let (name, params, randomized, g) = match family {
        GenFamily::Path { n } => ("path", json!({ "n": n }), false, numbered(generators::path(*n)?)),
        GenFamily::Cycle { n } => ("cycle", json!({ "n": n }), false, numbered(generators::cycle(*n)?)),
        GenFamily::Star { leaves } => ("star", json!({ "leaves": leaves }), false, numbered(generators::star(*leaves)?)),
        GenFamily::Complete { n } => ("complete", json!({ "n": n }), false, numbered(generators::complete(*n)?)),
        GenFamily::Bipartite { s, t } => (
            "bipartite",
            json!({ "s": s, "t": t }),
            false,
            numbered(generators::complete_bipartite(*s, *t)?),
        ),
        GenFamily::Empty { n } => ("empty", json!({ "n": n }), false, numbered(generators::empty(*n)?)),
        GenFamily::Hypercube { k } => ("hypercube", json!({ "k": k }), false, words(*k, 2, generators::hypercube(*k)?)?),
        GenFamily::Hamming { k, a } => (
            "hamming",
            json!({ "k": k, "a": a }),
            false,
            words(*k, *a, generators::hamming_graph(*k, *a)?)?,
        ),
        GenFamily::Er { n, p } => ("er", json!({ "n": n, "p": p }), true, numbered(generators::erdos_renyi(*n, *p, seed)?)),
        GenFamily::Sbm { sizes, p_in, p_out } => {
            let mut blocks = vec![];
            let mut next = 0;
            for &s in sizes {
                blocks.push((next..next + s).collect::<Vec<_>>());
                next += s;
            }
            let probs: Vec<Vec<f64>> = (0..sizes.len())
                .map(|i| (0..sizes.len()).map(|j| if i == j { *p_in } else { *p_out }).collect())
                .collect();
            (
                "sbm",
                json!({ "sizes": sizes, "p_in": p_in, "p_out": p_out }),
                true,
                numbered(generators::sbm(&blocks, &probs, seed)?),
            )
        }
        GenFamily::Tree { n } => ("tree", json!({ "n": n }), true, numbered(generators::uniform_random_tree(*n, seed)?)),
    };
    let edge_list = edgelist::write(&g);
    let mut report = Report::new(
        format!("gen {name}"),
        params,
        json!({ "n": g.graph.n(), "edges": g.graph.edge_count(), "edge_list": edge_list }),
        edge_list.clone(),
    )
    .with_csv(edge_list);
    if randomized {
        report = report.seeded(global.seed);
    }
    // the edge list itself is the natural output
    report.render(global.format.unwrap_or(Format::Text))
}

fn numbered(g: Graph) -> LabeledGraph {
    LabeledGraph::numbered(g)
}

fn load_set(path: &str) -> Outcome<HammingResolvingSet> {
    let text = read_input(path)?;
    HammingResolvingSet::from_text(&text).map_err(|e| Failure::Domain(format!("{path}: {e}")))
}

fn exhaustive(global: &Global) -> VerifyMode {
    VerifyMode::Exhaustive { cap: global.hamming_cap }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Resolving => "resolving (exhaustive)".into(),
        Verdict::Counterexample { u, v } => format!("not resolving: {u} and {v} collide"),
        Verdict::SampledPass { pairs } => format!("no collision among {pairs} sampled pairs"),
    }
}

fn hamming(global: &Global, op: &HammingOp) -> Outcome<Report> {
    match op {
        HammingOp::Verify { set, sampled } => {
            let s = load_set(set)?;
            let mode = match sampled {
                Some(pairs) => VerifyMode::Sampled { pairs: *pairs, seed: RngSeed(global.seed) },
                None => exhaustive(global),
            };
            let (s, verdict) = s.verified(mode)?;
            let mut report = Report::new(
                "hamming verify",
                json!({ "input": set, "space": s.space.to_string(), "size": s.len(), "mode": mode }),
                json!({ "verdict": verdict, "verification": s.verification }),
                format!("{}: {} vertices, {}\n", s.space, s.len(), verdict_text(&verdict)),
            );
            if sampled.is_some() {
                report = report.seeded(global.seed);
            }
            Ok(report)
        }
        HammingOp::Augment { set, to } => {
            let (mut s, verdict) = load_set(set)?.verified(exhaustive(global))?;
            if verdict != Verdict::Resolving {
                return Err(Failure::Domain(format!("input set: {}", verdict_text(&verdict))));
            }
            let target = to.unwrap_or(s.space.k() + 1);
            if target <= s.space.k() {
                return Err(Failure::Usage(format!("--to {target} must exceed k = {}", s.space.k())));
            }
            let mut sizes = vec![json!({ "k": s.space.k(), "size": s.len() })];
            while s.space.k() < target {
                s = augment(&s, exhaustive(global))?;
                sizes.push(json!({ "k": s.space.k(), "size": s.len() }));
            }
            Ok(Report::new(
                "hamming augment",
                json!({ "input": set, "to": target }),
                json!({ "space": s.space.to_string(), "vertices": s.vertices, "verification": s.verification, "chain": sizes }),
                s.to_text(),
            ))
        }
        HammingOp::Beta2 { a } => {
            let b = beta_h2(*a)?;
            Ok(Report::new(
                "hamming beta2",
                json!({ "a": a }),
                json!({ "beta": b }),
                format!("beta(H(2,{a})) = {b}\n"),
            ))
        }
        HammingOp::Table => {
            let rows: Vec<_> = (1..=17).map(|k| hypercube_reference(k).expect("in table")).collect();
            let mut text = String::new();
            let mut csv = String::from("k,value,exact\n");
            for r in &rows {
                let tag = if r.exact { "" } else { "  (upper bound)" };
                writeln!(text, "Q_{:<2} {}{tag}", r.k, r.value).unwrap();
                writeln!(csv, "{},{},{}", r.k, r.value, r.exact).unwrap();
            }
            Ok(Report::new("hamming table", json!({}), json!(rows), text).with_csv(csv))
        }
    }
}

fn embed(global: &Global, sequences: &str, set_path: &str) -> Outcome<Report> {
    let (set, verdict) = load_set(set_path)?.verified(exhaustive(global))?;
    if verdict != Verdict::Resolving {
        return Err(Failure::Domain(format!("{set_path}: {}", verdict_text(&verdict))));
    }
    let symbols: String = set.space.alphabet().iter().collect();
    let alphabet = SequenceAlphabet::custom(&symbols)?;
    let records = parse_records(&read_input(sequences)?);
    let k = set.space.k();
    let embedded = records
        .iter()
        .map(|(id, seq)| embed_sequence(id, seq, k, &alphabet, &set).map_err(|e| Failure::Domain(format!("{id}: {e}"))))
        .collect::<Outcome<Vec<_>>>()?;
    let csv = to_csv(&set, &embedded);
    let total: usize = embedded.iter().map(|e| e.vectors.len()).sum();
    Ok(Report::new(
        "embed",
        json!({ "input": sequences, "set": set_path, "space": set.space.to_string(), "dimensions": set.len() }),
        json!({ "landmarks": set.vertices, "records": embedded }),
        format!("{} records, {total} k-mers embedded in {} dimensions\n", embedded.len(), set.len()),
    )
    .with_csv(csv))
}

fn experiment(global: &Global, recipe: &Recipe) -> Outcome<Report> {
    let seed = RngSeed(global.seed);
    match recipe {
        Recipe::Er { n, p, trials, strategy } => {
            let strategy = match strategy {
                StrategyArg::Random => Strategy::RandomSet,
                StrategyArg::HighDegree => Strategy::HighDegree,
            };
            let r = er_resolving_trial(*n, *p, *trials, strategy, seed)?;
            let s = &r.summary;
            let text = format!(
                "set size = {}\nsuccess rate = {}\nstandard error = {}\nconnected fraction = {}\n",
                s.set_size,
                opt(s.success_rate),
                opt(s.standard_error),
                opt(s.connected_fraction)
            );
            Ok(Report::new(
                "experiment er",
                serde_json::to_value(&r.parameters).expect("serializable"),
                json!({ "summary": r.summary, "records": r.records, "wall_clock_secs": r.wall_clock_secs, "library": r.version }),
                text,
            )
            .seeded(global.seed)
            .with_csv(r.to_csv()))
        }
        Recipe::TreeDist { n, samples } => {
            let r = tree_dim_distribution(*n, *samples, seed)?;
            let s = &r.summary;
            let text = format!(
                "mean(beta)/n = {:.6} (reference {})\nvar(beta)/n = {:.6} (reference {})\nstandardized skewness = {:.4}\n",
                s.mean_over_n, s.reference_mean, s.var_over_n, s.reference_variance, s.standardized_skewness
            );
            Ok(Report::new(
                "experiment tree-dist",
                serde_json::to_value(&r.parameters).expect("serializable"),
                json!({ "summary": r.summary, "records": r.records, "wall_clock_secs": r.wall_clock_secs, "library": r.version }),
                text,
            )
            .seeded(global.seed)
            .with_csv(r.to_csv()))
        }
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or("n/a".into(), |v| format!("{v:.4}"))
}
