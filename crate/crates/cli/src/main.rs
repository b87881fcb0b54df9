mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sl3webs::coloring::{
    colorings_restricting, count_colorings, count_restricting, enumerate_colorings,
    unique_coloring_witness, BoundaryColoring,
};
use sl3webs::enumeration::{
    count_invariants, default_cache_dir, enumerate_ne, enumerate_ne_cached, WebBasis,
};
use sl3webs::foam::parse_foam;
use sl3webs::gornik::{block_identity_for, BlockDecomposition};
use sl3webs::homdim::{graded_homdim, GramMatrix};
use sl3webs::reptheory::{
    evaluate_script, parse_script, random_closed_script, render_script, script_to_web,
};
use sl3webs::skein::{bracket, bracket_randomized, bracket_traced};
use sl3webs::web::io::parse_web;
use sl3webs::{SignSequence, Web};

use report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Parser, Debug)]
#[command(
    name = "sl3webs",
    version,
    about = "sl3 webs, colorings, web bases and foam evaluation"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,
    /// Seed for randomised reduction orders and samples.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kuperberg bracket of a closed web (JSON web file or slice script).
    Bracket {
        file: PathBuf,
        /// List every rewrite step.
        #[arg(long)]
        trace: bool,
    },
    /// Colorings of a web.
    Colorings {
        file: PathBuf,
        /// Only print how many there are.
        #[arg(long)]
        count: bool,
        /// Keep colorings restricting to this boundary coloring, e.g. "-1,0,1".
        #[arg(long, allow_hyphen_values = true)]
        boundary: Option<String>,
    },
    /// The non-elliptic basis NE(ε) of a sign string such as "+-+-".
    Enumerate {
        #[arg(allow_hyphen_values = true)]
        signs: String,
        /// Only print the size.
        #[arg(long)]
        count_only: bool,
        /// Recompute instead of reading the cache.
        #[arg(long)]
        no_cache: bool,
        /// Cache directory (default: $SL3WEBS_CACHE_DIR or the user cache dir).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Graded dimension of the hom space between two ε-web modules.
    Homdim { w1: PathBuf, w2: PathBuf },
    /// Evaluate a closed pre-foam.
    FoamEval { file: PathBuf },
    /// Block sizes n(c) of the deformed algebra and the dimension identity.
    GornikBlocks {
        #[arg(allow_hyphen_values = true)]
        signs: String,
    },
    /// Compare tensor contraction against skein reduction on random scripts.
    Oracle {
        #[arg(long, default_value_t = 50)]
        samples: u64,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
    },
    /// Run the count, Gram, block and unique-coloring checks for one ε.
    Check {
        #[arg(allow_hyphen_values = true)]
        signs: String,
    },
}

/// Failures, sorted by exit code.
enum Failure {
    Input(String),
    Internal(String),
}

type Run = Result<RunReport, Failure>;

fn input<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn internal<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Internal(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(input(path.display()))
}

/// A JSON web file, or a slice script when the text is not JSON.
fn load_web(path: &Path) -> Result<Web, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        parse_web(&text).map_err(input(path.display()))
    } else {
        let script = parse_script(&text).map_err(input(path.display()))?;
        script_to_web(&script).map_err(input(path.display()))
    }
}

fn signs(s: &str) -> Result<SignSequence, Failure> {
    s.parse().map_err(input(format!("signs {s:?}")))
}

fn count(n: u128) -> Value {
    u64::try_from(n)
        .map(Value::from)
        .unwrap_or_else(|_| Value::from(n.to_string()))
}

fn basis_for(eps: &SignSequence) -> Result<WebBasis, Failure> {
    enumerate_ne(eps).map_err(internal)
}

fn cmd_bracket(file: &Path, trace: bool, seed: Option<u64>) -> Run {
    let w = load_web(file)?;
    let mut r = RunReport::new("bracket");
    r.input("file", file.display().to_string());
    if !w.is_closed() {
        return Err(Failure::Input(format!(
            "{}: the web is not closed",
            file.display()
        )));
    }
    let (value, steps) = if trace {
        let (v, t) = bracket_traced(&w).map_err(internal)?;
        (v, Some(t.steps))
    } else {
        (bracket(&w).map_err(internal)?, None)
    };
    r.result("vertices", w.vertex_count())
        .result("bracket", value.to_string())
        .result("at_one", value.eval_at_one().to_string());
    if let Some(steps) = steps {
        let lines: Vec<Value> = steps
            .iter()
            .map(|s| {
                let face = s.face.map(|f| format!(" face {f}")).unwrap_or_default();
                Value::from(format!(
                    "{}{:?}{face} on {} vertices",
                    "  ".repeat(s.depth),
                    s.rule,
                    s.vertices
                ))
            })
            .collect();
        r.result("trace", lines);
    }
    if let Some(seed) = seed {
        let other = bracket_randomized(&w, seed).map_err(internal)?;
        r.check(
            "confluence",
            other == value,
            format!("random order (seed {seed}) gives {other}"),
        );
    }
    Ok(r)
}

fn coloring_value(w: &Web, c: &sl3webs::coloring::Coloring) -> Value {
    json!({ "edges": c.edge_colors, "loops": c.loop_colors, "boundary": sl3webs::coloring::restrict(w, c).ok().map(|b| b.to_string()) })
}

fn cmd_colorings(file: &Path, only_count: bool, boundary: Option<&str>) -> Run {
    let w = load_web(file)?;
    let mut r = RunReport::new("colorings");
    r.input("file", file.display().to_string());
    match boundary {
        Some(b) => {
            let b: BoundaryColoring = b.parse().map_err(input("--boundary"))?;
            r.input("boundary", b.to_string());
            if only_count {
                r.result(
                    "count",
                    count(count_restricting(&w, &b).map_err(input("--boundary"))?),
                );
            } else {
                let cs = colorings_restricting(&w, &b).map_err(input("--boundary"))?;
                r.result("count", cs.len()).result(
                    "colorings",
                    cs.iter().map(|c| coloring_value(&w, c)).collect::<Vec<_>>(),
                );
            }
        }
        None if only_count => {
            r.result("count", count(count_colorings(&w)));
        }
        None => {
            let cs = enumerate_colorings(&w);
            r.result("count", cs.len()).result(
                "colorings",
                cs.iter().map(|c| coloring_value(&w, c)).collect::<Vec<_>>(),
            );
        }
    }
    Ok(r)
}

fn cmd_enumerate(s: &str, count_only: bool, no_cache: bool, cache_dir: Option<PathBuf>) -> Run {
    let eps = signs(s)?;
    let mut r = RunReport::new("enumerate");
    r.input("epsilon", eps.to_string());
    let expected = count_invariants(&eps);
    if !eps.is_admissible() {
        r.result("admissible", false).result("count", 0);
        return Ok(r);
    }
    let basis = if no_cache {
        basis_for(&eps)?
    } else {
        let dir = cache_dir.unwrap_or_else(default_cache_dir);
        enumerate_ne_cached(&eps, &dir).map_err(internal)?
    };
    r.result("count", basis.len());
    r.check(
        "path count",
        basis.len() as u128 == expected,
        format!("{expected} dominant paths"),
    );
    if !count_only {
        let webs: Vec<Value> = basis
            .scripts
            .iter()
            .zip(&basis.webs)
            .map(|(sc, w)| json!({ "vertices": w.vertex_count(), "levels": render_script(sc).lines().collect::<Vec<_>>() }))
            .collect();
        r.result("basis", webs);
    }
    Ok(r)
}

fn cmd_homdim(a: &Path, b: &Path) -> Run {
    let (w1, w2) = (load_web(a)?, load_web(b)?);
    if !w1.is_epsilon_web() || !w2.is_epsilon_web() || w1.top() != w2.top() {
        return Err(Failure::Input(format!(
            "expected two webs with empty bottom and equal boundary, found {} and {}",
            w1.top(),
            w2.top()
        )));
    }
    let h = graded_homdim(&w1, &w2).map_err(internal)?;
    let mut r = RunReport::new("homdim");
    r.input("w1", a.display().to_string())
        .input("w2", b.display().to_string());
    r.result("epsilon", w1.top().to_string())
        .result("graded_dimension", h.to_string())
        .result("dimension", h.eval_at_one().to_string());
    r.check(
        "nonnegative",
        h.has_nonnegative_coefficients(),
        "coefficients are nonnegative",
    );
    Ok(r)
}

fn cmd_foam(file: &Path, seed: Option<u64>) -> Run {
    let f = parse_foam(&read(file)?).map_err(input(file.display()))?;
    let v = f.evaluate().map_err(internal)?;
    let d = f.degree();
    let mut r = RunReport::new("foam-eval");
    r.input("file", file.display().to_string());
    r.result("value", v.to_string())
        .result("degree", d)
        .result("euler_characteristic", f.euler_characteristic());
    r.check(
        "degree obstruction",
        d == 0 || num_traits::Zero::is_zero(&v),
        format!("degree {d}"),
    );
    if f.facets.iter().all(|x| x.color.is_some()) {
        r.result("well_colored", f.well_colored().map_err(internal)?);
    }
    if let Some(seed) = seed {
        let other = f.evaluate_randomized(seed).map_err(internal)?;
        r.check(
            "confluence",
            other == v,
            format!("random neck cuts (seed {seed}) give {other}"),
        );
    }
    Ok(r)
}

fn block_table(b: &BlockDecomposition) -> Value {
    Value::Object(
        b.counts
            .iter()
            .filter(|(_, n)| **n > 0)
            .map(|(c, n)| (c.to_string(), count(*n)))
            .collect(),
    )
}

fn cmd_gornik(s: &str) -> Run {
    let eps = signs(s)?;
    let mut r = RunReport::new("gornik-blocks");
    r.input("epsilon", eps.to_string());
    if !eps.is_admissible() {
        r.result("admissible", false);
        return Ok(r);
    }
    let basis = basis_for(&eps)?;
    let blocks = sl3webs::gornik::block_counts_for(&basis).map_err(internal)?;
    let id = block_identity_for(&basis).map_err(internal)?;
    r.result("blocks", block_table(&blocks))
        .result("sum_n_squared", count(id.block_dimension))
        .result("closure_colorings", count(id.closure_colorings));
    r.check(
        "block identity",
        id.holds(),
        format!(
            "sum n(c)^2 = {}, closure colorings = {}",
            id.block_dimension, id.closure_colorings
        ),
    );
    Ok(r)
}

fn cmd_oracle(samples: u64, max_vertices: usize, seed: u64) -> Run {
    let mut r = RunReport::new("oracle");
    r.input("samples", samples)
        .input("max_vertices", max_vertices)
        .input("seed", seed);
    let mut bad = Vec::new();
    for k in 0..samples {
        let s = random_closed_script(seed.wrapping_add(k), max_vertices);
        let tensor = evaluate_script(&s).map_err(internal)?.scalar();
        let web = script_to_web(&s).map_err(internal)?;
        let b = bracket(&web).map_err(internal)?;
        if tensor.as_ref() != Some(&b) {
            bad.push(Value::from(render_script(&s)));
        }
    }
    let n_bad = bad.len();
    if !bad.is_empty() {
        r.result("disagreements", bad);
    }
    r.check(
        "tensor = bracket",
        n_bad == 0,
        format!("{} of {samples} scripts agree", samples as usize - n_bad),
    );
    Ok(r)
}

fn cmd_check(s: &str) -> Run {
    let eps = signs(s)?;
    let mut r = RunReport::new("check");
    r.input("epsilon", eps.to_string());
    if !eps.is_admissible() {
        r.result("admissible", false);
        r.check(
            "admissibility",
            true,
            "not admissible: no invariants, NE is empty",
        );
        return Ok(r);
    }
    r.result("admissible", true);
    let basis = basis_for(&eps)?;
    let expected = count_invariants(&eps);
    r.result("count", basis.len());
    r.check(
        "basis count",
        basis.len() as u128 == expected,
        format!("|NE| = {}, paths = {expected}", basis.len()),
    );
    let gram = GramMatrix::for_basis(basis.clone()).map_err(internal)?;
    let det = gram.determinant();
    r.result("gram_determinant", det.to_string());
    r.check(
        "gram nondegenerate",
        !num_traits::Zero::is_zero(&det),
        format!("det = {det}"),
    );
    r.check(
        "gram symmetric",
        gram.is_symmetric(),
        format!("{0}x{0}", gram.size()),
    );
    let id = block_identity_for(&basis).map_err(internal)?;
    r.check(
        "block identity",
        id.holds(),
        format!(
            "sum n(c)^2 = {}, closure colorings = {}",
            id.block_dimension, id.closure_colorings
        ),
    );
    match unique_coloring_witness(&basis.webs) {
        Ok(w) => r.check(
            "unique coloring",
            true,
            format!("boundary {} on web {}", w.boundary, w.web_index),
        ),
        Err(e) => r.check("unique coloring", false, e.to_string()),
    };
    Ok(r)
}

fn run(cli: Cli) -> Run {
    let start = Instant::now();
    let mut report = match cli.command {
        Command::Bracket { file, trace } => cmd_bracket(&file, trace, cli.seed),
        Command::Colorings {
            file,
            count,
            boundary,
        } => cmd_colorings(&file, count, boundary.as_deref()),
        Command::Enumerate {
            signs,
            count_only,
            no_cache,
            cache_dir,
        } => cmd_enumerate(&signs, count_only, no_cache, cache_dir),
        Command::Homdim { w1, w2 } => cmd_homdim(&w1, &w2),
        Command::FoamEval { file } => cmd_foam(&file, cli.seed),
        Command::GornikBlocks { signs } => cmd_gornik(&signs),
        Command::Oracle {
            samples,
            max_vertices,
        } => cmd_oracle(samples, max_vertices, cli.seed.unwrap_or(0)),
        Command::Check { signs } => cmd_check(&signs),
    }?;
    report.set_timing(start.elapsed());
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            match format {
                Format::Human => print!("{}", report.human()),
                Format::Machine => println!("{}", report.machine()),
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
