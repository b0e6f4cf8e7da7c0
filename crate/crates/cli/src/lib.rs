//! The `pentagon` command line.
//!
//! Exit codes: 0 success or property holds, 1 property fails, 2 usage or
//! input error, 3 resource budget exceeded.

pub mod criteria;
pub mod source;

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use pentagon_core::{
    classify, count_up_to_iso, decomposition_solution, emit_solution, enumerate_naive, enumerate_pruned,
    estimate_growth_degree, expected_count, find_isomorphism_bounded, growth_series_of, is_irretractable,
    is_isomorphic_invariant, presentation_of, product_solution, rank_expected, retract, retract_tower, sigma_search,
    DegreeEstimate, Decomposition, EnumerationOptions, Error, SolutionTable, StratifiedClosure,
};
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) | Error::BoundExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pentagon", version, about = "Finite set-theoretic solutions of the pentagon equation")]
pub struct Cli {
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Wall-clock budget for searches, in milliseconds.
    #[arg(long, global = true, value_name = "MS")]
    pub budget_ms: Option<u64>,
    /// Worker threads for enumeration.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: Option<u16>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = criteria::DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axiom {
    Pe,
    Rpe,
    Involutive,
    Bijective,
    Commutative,
    Cocommutative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Pruned,
    Naive,
}

/// SOLUTION arguments are a table file or an expression such as `canonical(3,1,1)`,
/// `identity(4)`, `irretractable(2)`, `group(c2xc2)`, `cycle([4,1,2,3],c2)` or `ext(3,1,sigma.txt)`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check axioms of a table.
    Verify {
        solution: String,
        #[arg(long, value_delimiter = ',', default_value = "pe,involutive")]
        axioms: Vec<Axiom>,
    },
    /// Build a solution from an expression or from `--x --a --g [--sigma]`.
    Construct {
        #[arg(conflicts_with_all = ["x", "a", "g", "sigma"], required_unless_present = "x")]
        expression: Option<String>,
        #[arg(long, requires_all = ["a", "g"])]
        x: Option<usize>,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        g: Option<u32>,
        /// One line per element of A listing the images of 0..x-1.
        #[arg(long, requires = "x")]
        sigma: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Direct product of two solutions.
    Product {
        left: String,
        right: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Quotient by equal θ-maps.
    Retract {
        solution: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The triple (|X|, dim A, dim G) of an involutive solution.
    Classify { solution: String },
    /// Search for an isomorphism between two solutions.
    Isomorphic {
        left: String,
        right: String,
        /// Largest carrier for the brute-force search.
        #[arg(long, default_value_t = pentagon_core::isomorphism::DEFAULT_ISOMORPHISM_BOUND)]
        bound: usize,
    },
    /// All involutive solutions on n points.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long, value_enum, default_value = "pruned")]
        method: Method,
        /// Write every table found into this directory.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Permutations with σ^(σ(i)+1) = σ^i for all i.
    SigmaSearch {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=9))]
        n: u64,
    },
    /// Class counts of the structure monoid per word length.
    Growth {
        solution: String,
        #[arg(long, default_value_t = 8)]
        length: usize,
        /// Nodes allowed per length.
        #[arg(long, default_value_t = pentagon_core::monoid::DEFAULT_MAX_WORDS)]
        max_words: usize,
        /// Also list the smallest word of each class at this length.
        #[arg(long)]
        normal_forms: Option<usize>,
    },
    /// Smallest k with s^k = id.
    Order {
        solution: String,
        #[arg(long, default_value_t = 1 << 16)]
        cap: usize,
    },
    /// Run the built-in property checks.
    Selftest {
        /// Restrict to these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Construct { .. } => "construct",
            Command::Product { .. } => "product",
            Command::Retract { .. } => "retract",
            Command::Classify { .. } => "classify",
            Command::Isomorphic { .. } => "isomorphic",
            Command::Enumerate { .. } => "enumerate",
            Command::SigmaSearch { .. } => "sigma-search",
            Command::Growth { .. } => "growth",
            Command::Order { .. } => "order",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// What a subcommand produced; rendered as text or JSON by [`run`].
pub struct Report {
    pub inputs: Value,
    pub results: Value,
    pub text: String,
    pub exit: i32,
}

struct Context {
    budget: Option<Duration>,
    workers: Option<usize>,
    seed: u64,
}

impl Context {
    fn enumeration(&self) -> EnumerationOptions {
        EnumerationOptions { workers: self.workers, budget: self.budget }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Emits a table to `output` when given; otherwise returns it as the report text.
fn table_output(s: &SolutionTable, output: &Option<PathBuf>, summary: String) -> Result<(String, Value), CliError> {
    let text = emit_solution(s);
    match output {
        Some(path) => {
            write_file(path, &text)?;
            Ok((format!("{summary}\nwritten to {}\n", path.display()), json!(path.display().to_string())))
        }
        None => Ok((text.clone(), json!(text))),
    }
}

fn verify(solution: &str, axioms: &[Axiom]) -> Result<Report, CliError> {
    let s = source::load_solution(solution)?;
    let mut text = String::new();
    let mut results = serde_json::Map::new();
    let mut all = true;
    for &axiom in axioms {
        let (name, holds, witness) = match axiom {
            Axiom::Pe => {
                let w = s.pentagon_witness();
                ("pe", w.is_none(), w)
            }
            Axiom::Rpe => {
                let w = s.reversed_pentagon_witness();
                ("rpe", w.is_none(), w)
            }
            Axiom::Involutive => ("involutive", s.check_involutive(), None),
            Axiom::Bijective => ("bijective", s.check_bijective(), None),
            Axiom::Commutative => ("commutative", s.check_commutative(), None),
            Axiom::Cocommutative => ("cocommutative", s.check_cocommutative(), None),
        };
        all &= holds;
        let mut entry = json!({ "holds": holds });
        text.push_str(&format!("{name}: {}", if holds { "holds" } else { "fails" }));
        if let Some(w) = witness {
            entry["witness"] = json!({ "triple": w.triple, "lhs": w.lhs, "rhs": w.rhs });
            text.push_str(&format!(" at {:?}: {:?} vs {:?}", w.triple, w.lhs, w.rhs));
        }
        text.push('\n');
        results.insert(name.to_string(), entry);
    }
    Ok(Report {
        inputs: json!({ "solution": solution, "size": s.size() }),
        results: Value::Object(results),
        text,
        exit: if all { EXIT_OK } else { EXIT_PROPERTY_FAILS },
    })
}

fn construct(
    expression: &Option<String>,
    dims: (Option<usize>, Option<u32>, Option<u32>),
    sigma: &Option<PathBuf>,
    output: &Option<PathBuf>,
) -> Result<Report, CliError> {
    let (s, inputs) = match (expression, dims) {
        (Some(e), _) => (source::parse_expression(e)?, json!({ "expression": e })),
        (None, (Some(x), Some(a), Some(g))) => {
            let too_big = a.checked_add(g).and_then(|d| 1usize.checked_shl(d)).and_then(|m| m.checked_mul(x));
            if !matches!(too_big, Some(n) if (1..=source::MAX_EXPRESSION_SIZE).contains(&n)) {
                return Err(CliError::Input(format!("carrier size must be between 1 and {}", source::MAX_EXPRESSION_SIZE)));
            }
            let mut d = Decomposition::new(x, a, g)?;
            if let Some(path) = sigma {
                d = d.with_sigma(source::load_sigma(&path.display().to_string(), x, a)?)?;
            }
            let sigma_name = sigma.as_ref().map(|p| p.display().to_string());
            (decomposition_solution(&d)?, json!({ "x": x, "a": a, "g": g, "sigma": sigma_name }))
        }
        _ => return Err(CliError::Input("give an expression or all of --x, --a, --g".into())),
    };
    let (text, table) = table_output(&s, output, format!("constructed a table on {} points", s.size()))?;
    Ok(Report { inputs, results: json!({ "size": s.size(), "table": table }), text, exit: EXIT_OK })
}

fn product(left: &str, right: &str, output: &Option<PathBuf>) -> Result<Report, CliError> {
    let (a, b) = (source::load_solution(left)?, source::load_solution(right)?);
    if a.size().checked_mul(b.size()).map_or(true, |n| n > source::MAX_EXPRESSION_SIZE) {
        return Err(CliError::Input(format!("product carrier exceeds {} points", source::MAX_EXPRESSION_SIZE)));
    }
    let p = product_solution(&a, &b);
    let (text, table) = table_output(&p, output, format!("product on {} points", p.size()))?;
    Ok(Report {
        inputs: json!({ "left": left, "right": right }),
        results: json!({ "size": p.size(), "table": table }),
        text,
        exit: EXIT_OK,
    })
}

fn retract_cmd(solution: &str, output: &Option<PathBuf>) -> Result<Report, CliError> {
    let s = source::load_solution(solution)?;
    let r = retract(&s)?;
    let tower = retract_tower(&s)?;
    let irretractable = is_irretractable(&s)?;
    let mut text = format!(
        "size {} retracts to {} classes of sizes {:?}\nclass of each element: {:?}\nretract sizes: {:?}\nirretractable: {irretractable}\n",
        s.size(),
        r.quotient.size(),
        r.class_sizes,
        r.class_of,
        tower
    );
    let quotient = match output {
        Some(path) => {
            write_file(path, &emit_solution(&r.quotient))?;
            text.push_str(&format!("retract written to {}\n", path.display()));
            json!(path.display().to_string())
        }
        None => json!(emit_solution(&r.quotient)),
    };
    Ok(Report {
        inputs: json!({ "solution": solution }),
        results: json!({
            "size": s.size(),
            "retract_size": r.quotient.size(),
            "class_of": r.class_of,
            "class_sizes": r.class_sizes,
            "tower": tower,
            "irretractable": irretractable,
            "retract": quotient,
        }),
        text,
        exit: EXIT_OK,
    })
}

fn classify_cmd(solution: &str) -> Result<Report, CliError> {
    let s = source::load_solution(solution)?;
    let t = classify(&s)?;
    Ok(Report {
        inputs: json!({ "solution": solution }),
        results: json!({ "size": s.size(), "x": t.x_size, "a": t.a_dim, "g": t.g_dim, "triple": t.to_string() }),
        text: format!("{t}\n"),
        exit: EXIT_OK,
    })
}

fn isomorphic(left: &str, right: &str, bound: usize) -> Result<Report, CliError> {
    let (s, t) = (source::load_solution(left)?, source::load_solution(right)?);
    let inputs = json!({ "left": left, "right": right, "bound": bound });
    if s.size() != t.size() {
        return Ok(Report {
            inputs,
            results: json!({ "isomorphic": false, "map": null, "reason": "sizes differ" }),
            text: format!("not isomorphic: sizes {} and {} differ\n", s.size(), t.size()),
            exit: EXIT_PROPERTY_FAILS,
        });
    }
    let found = find_isomorphism_bounded(&s, &t, bound)?;
    let invariant = is_isomorphic_invariant(&s, &t).ok();
    let mut text = match &found {
        Some(f) => format!("isomorphic via {:?}\n", f.images()),
        None => "not isomorphic\n".to_string(),
    };
    if let Some(v) = invariant {
        text.push_str(&format!("classification triples agree: {v}\n"));
    }
    Ok(Report {
        inputs,
        results: json!({
            "isomorphic": found.is_some(),
            "map": found.as_ref().map(|f| f.images().to_vec()),
            "triples_agree": invariant,
        }),
        text,
        exit: if found.is_some() { EXIT_OK } else { EXIT_PROPERTY_FAILS },
    })
}

fn enumerate(ctx: &Context, size: usize, up_to_iso: bool, method: Method, output_dir: &Option<PathBuf>) -> Result<Report, CliError> {
    let inputs = json!({ "size": size, "up_to_iso": up_to_iso, "method": format!("{method:?}").to_lowercase() });
    let tables = match method {
        Method::Naive => enumerate_naive(size)?,
        Method::Pruned => {
            let out = enumerate_pruned(size, &ctx.enumeration())?;
            if !out.complete {
                return Err(CliError::Budget(format!(
                    "size {size} inconclusive: search stopped after {} nodes with {} tables found",
                    out.nodes,
                    out.tables.len()
                )));
            }
            out.tables
        }
    };
    if let Some(dir) = output_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
        for (i, s) in tables.iter().enumerate() {
            write_file(&dir.join(format!("size{size}-{i:05}.txt")), &emit_solution(s))?;
        }
    }
    let mut text = format!("size {size}: {} labeled involutive solutions\n", tables.len());
    let mut results = json!({ "raw_count": tables.len() });
    if up_to_iso {
        let report = count_up_to_iso(size, &ctx.enumeration())?;
        if report.raw_count != tables.len() {
            return Err(CliError::Input(format!("inconsistent counts {} and {}", report.raw_count, tables.len())));
        }
        let expected = expected_count(size);
        text.push_str(&format!("{} classes (expected {expected})\n", report.class_count));
        for c in &report.classes {
            text.push_str(&format!("  {} with {} labelings\n", c.triple, c.members));
        }
        results["class_count"] = json!(report.class_count);
        results["expected"] = json!(expected);
        results["classes"] = report
            .classes
            .iter()
            .map(|c| json!({ "triple": c.triple.to_string(), "members": c.members }))
            .collect();
    }
    Ok(Report { inputs, results, text, exit: EXIT_OK })
}

fn sigma_search_cmd(n: usize) -> Report {
    let found = sigma_search(n);
    let mut text = format!("{} permutations of {n} points\n", found.len());
    for p in &found {
        let one_line: Vec<String> = p.images().iter().map(|v| (v + 1).to_string()).collect();
        text.push_str(&format!("{}  [{}]\n", p.cycle_notation(), one_line.join(",")));
    }
    Report {
        inputs: json!({ "n": n }),
        results: json!({
            "count": found.len(),
            "cycles": found.iter().map(|p| p.cycle_notation()).collect::<Vec<_>>(),
            "images": found.iter().map(|p| p.images().iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
        text,
        exit: EXIT_OK,
    }
}

fn growth(solution: &str, length: usize, max_words: usize, forms: Option<usize>) -> Result<Report, CliError> {
    let s = source::load_solution(solution)?;
    let p = presentation_of(&s);
    let series = growth_series_of(&p, length, max_words)?;
    let estimate = estimate_growth_degree(&series);
    let rank = (s.check_pentagon() && s.check_involutive()).then(|| rank_expected(&s)).transpose()?;
    let mut text = format!("counts: {:?}\ncumulative: {:?}\n", series.counts, series.cumulative());
    let degree = match estimate {
        DegreeEstimate::Polynomial { degree, onset } => {
            text.push_str(&format!("degree {degree} from length {onset}\n"));
            json!({ "degree": degree, "onset": onset })
        }
        DegreeEstimate::Inconclusive => {
            text.push_str("degree inconclusive; increase --length\n");
            Value::Null
        }
    };
    if let Some(r) = rank {
        text.push_str(&format!("expected rank {r}\n"));
    }
    let mut results = json!({
        "counts": series.counts,
        "cumulative": series.cumulative(),
        "degree": degree,
        "rank_expected": rank,
        "nontrivial_relations": p.nontrivial().count(),
    });
    if let Some(len) = forms {
        let mut engine = StratifiedClosure::new(&p, max_words);
        while engine.length() < len {
            engine.advance()?;
        }
        let words = engine.normal_forms();
        text.push_str(&format!("normal forms of length {len}:\n"));
        for w in &words {
            let parts: Vec<String> = w.iter().map(usize::to_string).collect();
            text.push_str(&format!("  {}\n", if parts.is_empty() { "()".to_string() } else { parts.join(" ") }));
        }
        results["normal_forms"] = json!(words);
    }
    Ok(Report {
        inputs: json!({ "solution": solution, "length": length, "max_words": max_words }),
        results,
        text,
        exit: EXIT_OK,
    })
}

fn order(solution: &str, cap: usize) -> Result<Report, CliError> {
    let s = source::load_solution(solution)?;
    let found = s.order_of(cap);
    let text = match found {
        Some(k) => format!("order {k}\n"),
        None if s.check_bijective() => format!("no order up to {cap}\n"),
        None => "not bijective, so no finite order\n".to_string(),
    };
    Ok(Report {
        inputs: json!({ "solution": solution, "cap": cap }),
        results: json!({ "order": found, "bijective": s.check_bijective() }),
        text,
        exit: if found.is_some() { EXIT_OK } else { EXIT_PROPERTY_FAILS },
    })
}

fn selftest(ctx: &Context, only: &[u8]) -> Result<Report, CliError> {
    let cfg = criteria::Config { seed: ctx.seed, workers: ctx.workers, budget: ctx.budget };
    let ids: Vec<u8> = if only.is_empty() { criteria::CRITERIA.iter().map(|c| c.0).collect() } else { only.to_vec() };
    let mut outcomes = Vec::new();
    for id in &ids {
        outcomes.push(criteria::run(*id, &cfg).ok_or_else(|| CliError::Input(format!("no criterion {id}; choose 1 to 9")))?);
    }
    let all = outcomes.iter().all(|o| o.passed);
    let mut text: String = outcomes.iter().map(|o| o.line() + "\n").collect();
    text.push_str(if all { "all criteria passed\n" } else { "some criteria failed\n" });
    Ok(Report {
        inputs: json!({ "criteria": ids, "seed": ctx.seed }),
        results: json!({
            "all_passed": all,
            "criteria": outcomes
                .iter()
                .map(|o| json!({ "id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail }))
                .collect::<Vec<_>>(),
        }),
        text,
        exit: if all { EXIT_OK } else { EXIT_PROPERTY_FAILS },
    })
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let ctx = Context {
        budget: cli.budget_ms.map(Duration::from_millis),
        workers: cli.workers.map(usize::from),
        seed: cli.seed,
    };
    match &cli.command {
        Command::Verify { solution, axioms } => verify(solution, axioms),
        Command::Construct { expression, x, a, g, sigma, output } => construct(expression, (*x, *a, *g), sigma, output),
        Command::Product { left, right, output } => product(left, right, output),
        Command::Retract { solution, output } => retract_cmd(solution, output),
        Command::Classify { solution } => classify_cmd(solution),
        Command::Isomorphic { left, right, bound } => isomorphic(left, right, *bound),
        Command::Enumerate { size, up_to_iso, method, output_dir } => enumerate(&ctx, *size, *up_to_iso, *method, output_dir),
        Command::SigmaSearch { n } => Ok(sigma_search_cmd(*n as usize)),
        Command::Growth { solution, length, max_words, normal_forms } => growth(solution, *length, *max_words, *normal_forms),
        Command::Order { solution, cap } => order(solution, *cap),
        Command::Selftest { only } => selftest(&ctx, only),
    }
}

/// Parses `args` (including the program name), runs the subcommand and writes its report.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let start = Instant::now();
    let outcome = dispatch(&cli);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let command = cli.command.name();
    let (code, written) = match outcome {
        Ok(report) => {
            let written = if cli.json {
                let doc = json!({
                    "command": command,
                    "inputs": report.inputs,
                    "results": report.results,
                    "elapsed_ms": elapsed_ms,
                    "version": VERSION,
                });
                writeln!(out, "{doc}")
            } else {
                write!(out, "{}", report.text)
            };
            (report.exit, written)
        }
        Err(e) => {
            let written = if cli.json {
                let doc = json!({
                    "command": command,
                    "inputs": Value::Null,
                    "results": { "error": e.to_string(), "exit_code": e.exit_code() },
                    "elapsed_ms": elapsed_ms,
                    "version": VERSION,
                });
                writeln!(out, "{doc}")
            } else {
                writeln!(err, "error: {e}")
            };
            (e.exit_code(), written)
        }
    };
    // a closed pipe is not worth a panic
    let _ = written.and_then(|_| out.flush());
    code
}
