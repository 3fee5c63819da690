use std::fs;
use std::path::Path;

use minranklab::graph::{parse_edge_list, read_graph6, write_edge_list, write_graph6};
use minranklab::kneser::{
    instantiate_at_d, instantiate_theorem, kneser_graph, pattern_polynomial, representation_matrix, verify_odd_girth,
};
use minranklab::lll::{check_lll_inequalities, find_constants, find_threshold, gamma_stats};
use minranklab::verify::{
    estimate_g, exhaustive_g, verify_collection_size, verify_forest_bound, verify_principal_submatrix_decomposition,
    verify_sparse_basis_count, verify_sparsity_lower_bound, EdgeProbability, VerificationReport,
};
use minranklab::{
    digraph_minrank_bounds, minrank_bounds, minrank_exact, named_graph, Budget, Digraph, Error, Graph, KneserParams,
    PrimeField,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::args::*;

/// Exit codes.
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_VIOLATION: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Internal(_) => EXIT_VIOLATION,
            _ => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::domain(format!("{}: {e}", path.display()))
}

/// What a command produced.
pub enum Payload {
    /// One JSON document.
    Single(Value),
    /// A stream of JSON lines.
    Lines(Vec<Value>),
}

pub struct Outcome {
    pub payload: Payload,
    /// Files written, recorded in the manifest.
    pub outputs: Vec<String>,
    /// A check failed; exit with [`EXIT_VIOLATION`] after printing.
    pub violation: bool,
}

impl Outcome {
    fn single(v: Value) -> Self {
        Outcome {
            payload: Payload::Single(v),
            outputs: Vec::new(),
            violation: false,
        }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

enum Loaded {
    Undirected(Graph),
    Directed(Digraph),
}

fn is_graph6(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "g6")
}

fn load_graph(path: &Path) -> Result<Loaded, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    if is_graph6(path) {
        Ok(Loaded::Undirected(read_graph6(&text)?))
    } else {
        let (n, arcs) = parse_edge_list(&text)?;
        Ok(Loaded::Directed(Digraph::from_arcs(n, &arcs)?))
    }
}

/// A built-in graph name, or else a graph file (arcs of an edge list are
/// read as undirected edges).
fn resolve_graph(name_or_path: &str) -> Result<Graph, Failure> {
    if let Ok(g) = named_graph(name_or_path) {
        return Ok(g);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(Failure::domain(format!("{name_or_path:?} is neither a graph name nor a file")));
    }
    Ok(match load_graph(path)? {
        Loaded::Undirected(g) => g,
        Loaded::Directed(d) => d.weak_graph(),
    })
}

fn field(p: u64) -> Result<PrimeField, Failure> {
    Ok(PrimeField::new(p)?)
}

fn budget(max_subspaces: u64) -> Budget {
    Budget {
        max_subspaces: max_subspaces as u128,
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn minrank_exact_cmd(args: &MinrankExactArgs) -> CmdResult {
    let f = field(args.field)?;
    let b = budget(args.max_subspaces);
    let (n, r) = match load_graph(&args.graph.graph)? {
        Loaded::Undirected(g) => (g.n(), minrank_exact(&g, f, &b)?),
        Loaded::Directed(d) => (d.n(), minrank_exact(&d, f, &b)?),
    };
    let witness: Vec<Vec<u32>> = (0..n).map(|i| r.witness.row(i).to_vec()).collect();
    Ok(Outcome::single(json!({
        "n": n,
        "field": f.modulus(),
        "value": r.value,
        "lower": r.lower,
        "upper": r.upper,
        "witness": witness,
    })))
}

pub fn minrank_bounds_cmd(args: &GraphArg) -> CmdResult {
    let (n, bounds) = match load_graph(&args.graph)? {
        Loaded::Undirected(g) => (g.n(), minrank_bounds(&g)),
        Loaded::Directed(d) => (d.n(), digraph_minrank_bounds(&d)),
    };
    let mut v = to_value(&bounds);
    v["n"] = json!(n);
    Ok(Outcome::single(v))
}

pub fn kneser_build(args: &KneserBuildArgs) -> CmdResult {
    let params = KneserParams::new(args.d, args.s, args.m)?;
    if args.check_odd_girth.is_some() && 2 * args.s != args.d {
        return Err(Failure::domain("--check-odd-girth needs s = d/2"));
    }
    let w = representation_matrix(params)?;
    let graph = kneser_graph(params)?;
    let mut result = json!({
        "params": params,
        "vertices": w.vertices.len(),
        "edges": graph.edge_count(),
        "rank_bound": w.rank_bound.to_string(),
        "coefficients": w.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "diagonal": pattern_polynomial(args.s, args.m, args.s as i64).to_string(),
        "factor_columns": w.factor_subsets.len(),
        "factorization_verified": true,
        "represents": true,
    });
    let mut violation = false;
    if args.check_rank {
        result["rank"] = json!(w.checked_rank()?);
    }
    if let Some(ell) = args.check_odd_girth {
        let check = verify_odd_girth(args.d, args.m, ell)?;
        violation |= !check.consistent();
        result["odd_girth"] = to_value(&check);
        result["odd_girth"]["consistent"] = json!(check.consistent());
    }
    let mut outputs = Vec::new();
    if let Some(path) = &args.emit_matrix {
        let text = minranklab::algebra::write_rational_matrix(&w.matrix);
        fs::write(path, text).map_err(|e| io_failure(path, e))?;
        outputs.push(path.display().to_string());
    }
    Ok(Outcome {
        payload: Payload::Single(result),
        outputs,
        violation,
    })
}

pub fn kneser_theorem(args: &KneserTheoremArgs) -> CmdResult {
    let inst = match (args.n, args.d) {
        (Some(n), None) => instantiate_theorem(args.ell, n)?,
        (None, Some(d)) => instantiate_at_d(args.ell, d)?,
        _ => return Err(Failure::domain("give exactly one of --n and --d")),
    };
    Ok(Outcome::single(to_value(&inst)))
}

pub fn lll_analyze(args: &LllAnalyzeArgs) -> CmdResult {
    let h = resolve_graph(&args.h_graph)?;
    let stats = gamma_stats(&h)?;
    let inst = find_constants(&stats, args.field_size)?;
    let constraints = inst.constraints();
    let approx: Vec<f64> = [&inst.c1, &inst.c2, &inst.c3, &inst.c4]
        .iter()
        .map(|c| c.to_f64().expect("finite"))
        .collect();
    let mut result = json!({
        "instance": inst,
        "constants_approx": approx,
        "constraints": constraints,
    });
    let mut violation = !constraints.all();
    if let Some(n) = args.n {
        result["check"] = to_value(&check_lll_inequalities(&inst, n)?);
    } else {
        let t = find_threshold(&inst)?;
        violation |= t.n0.is_none();
        result["threshold"] = to_value(&t);
    }
    Ok(Outcome {
        payload: Payload::Single(result),
        outputs: Vec::new(),
        violation,
    })
}

fn run_lemma(id: LemmaId, args: &VerifyLemmaArgs) -> Result<VerificationReport, Failure> {
    let f = field(args.p)?;
    let n_max = |default: usize| args.n_max.unwrap_or(default);
    Ok(match id {
        LemmaId::Sparsity => verify_sparsity_lower_bound(n_max(4), f)?,
        LemmaId::Count => verify_sparse_basis_count(n_max(3), f)?,
        LemmaId::Submatrix => verify_principal_submatrix_decomposition(n_max(3), f)?,
        LemmaId::Collection => verify_collection_size(n_max(3), f)?,
        LemmaId::Forest => verify_forest_bound(args.n, &resolve_graph(&args.h)?, f, &Budget::default())?,
    })
}

pub fn verify_lemma(args: &VerifyLemmaArgs) -> CmdResult {
    let mut reports = Vec::new();
    for &id in &args.id {
        reports.push(run_lemma(id, args)?);
    }
    let violation = reports.iter().any(|r| !r.passed());
    let mut outputs = Vec::new();
    if let Some(path) = &args.csv {
        write_csv(path, &reports)?;
        outputs.push(path.display().to_string());
    }
    let lines = reports
        .iter()
        .map(|r| {
            let mut v = to_value(r);
            v["passed"] = json!(r.passed());
            v
        })
        .collect();
    Ok(Outcome {
        payload: Payload::Lines(lines),
        outputs,
        violation,
    })
}

fn write_csv(path: &Path, reports: &[VerificationReport]) -> Result<(), Failure> {
    let csv_err = |e: csv::Error| Failure::domain(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["lemma", "params", "instances_checked", "violations", "passed"])
        .map_err(csv_err)?;
    for r in reports {
        w.write_record([
            r.lemma.to_string(),
            Value::Object(r.params.clone()).to_string(),
            r.instances_checked.to_string(),
            r.violations.len().to_string(),
            r.passed().to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| io_failure(path, e))
}

fn parse_edge_prob(s: &str) -> Result<EdgeProbability, Failure> {
    if s.eq_ignore_ascii_case("theorem") {
        return Ok(EdgeProbability::Theorem);
    }
    match s.parse::<f64>() {
        Ok(p) if (0.0..=1.0).contains(&p) => Ok(EdgeProbability::Fixed(p)),
        _ => Err(Failure::domain(format!(
            "--edge-prob must be a probability or `theorem`, got {s:?}"
        ))),
    }
}

pub fn g_estimate(args: &GEstimateArgs) -> CmdResult {
    let h = resolve_graph(&args.h)?;
    let est = estimate_g(
        args.n,
        &h,
        field(args.field)?,
        args.samples,
        parse_edge_prob(&args.edge_prob)?,
        args.seed,
        &budget(args.max_subspaces),
    )?;
    Ok(Outcome::single(to_value(&est)))
}

pub fn g_exhaustive(args: &GExhaustiveArgs) -> CmdResult {
    let h = resolve_graph(&args.h)?;
    let g = exhaustive_g(args.n, &h, field(args.field)?, &budget(args.max_subspaces))?;
    Ok(Outcome::single(to_value(&g)))
}

/// graph6 holds undirected graphs only: an edge-list input is symmetrized,
/// joining two vertices when an arc runs either way. Undirected graphs are
/// written to edge lists with both arcs of every edge.
pub fn convert(args: &ConvertArgs) -> CmdResult {
    let loaded = load_graph(&args.input)?;
    let (n, text, symmetrized) = if is_graph6(&args.output) {
        let (g, symmetrized) = match loaded {
            Loaded::Undirected(g) => (g, false),
            Loaded::Directed(d) => {
                let g = d.weak_graph();
                let asymmetric = d.arc_count() != 2 * g.edge_count();
                (g, asymmetric)
            }
        };
        (g.n(), write_graph6(&g) + "\n", symmetrized)
    } else {
        match loaded {
            Loaded::Undirected(g) => {
                let arcs: Vec<(usize, usize)> = g.edges().into_iter().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
                (g.n(), write_edge_list(g.n(), &arcs), false)
            }
            Loaded::Directed(d) => (d.n(), write_edge_list(d.n(), &d.arcs()), false),
        }
    };
    if symmetrized {
        eprintln!("warning: some arcs have no reverse arc; graph6 output joins both directions");
    }
    fs::write(&args.output, &text).map_err(|e| io_failure(&args.output, e))?;
    Ok(Outcome {
        payload: Payload::Single(json!({
            "n": n,
            "input": args.input.display().to_string(),
            "output": args.output.display().to_string(),
            "symmetrized": symmetrized,
        })),
        outputs: vec![args.output.display().to_string()],
        violation: false,
    })
}
