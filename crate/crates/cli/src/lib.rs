//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 success, accept or true; 1 reject or false; 2 capacity,
//! unsupported input or exhausted search; 3 usage or parse error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rcfw::cad::{self, QeLimits, MAX_CAD_DEGREE, MAX_QE_VARS};
use rcfw::fo::{self, Binding, Formula, PredicateInstance};
use rcfw::pl::{self, CollarPoint, HomotopyCertificate, SearchOutcome, SimplicialComplex, MAX_SEARCH_BUDGET};
use rcfw::poly::{parse_poly, parse_rat};
use rcfw::sa::{self, SaDescription};
use rcfw::topo::{self, Check, ManifoldVerdict, Regularity};
use rcfw::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

const LIMITS: &str = "Hard limits: decided sentences use at most 3 real variables and degree 16; \
decompositions live in R^1..R^3; cell adjacency, components and curve checks need R^1 or R^2; \
collapse searches expand at most 10000000 states.\n\
Exit codes: 0 success/accept/true, 1 reject/false, 2 capacity/unsupported/exhausted, 3 usage or parse error.";

#[derive(Parser, Debug)]
#[command(name = "rcfw", version, about = "Semialgebraic sets, sentence schemas, CAD and PL collapses", after_help = LIMITS)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Output mode and capacity overrides shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Print machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Real variables per decided sentence (at most 3)
    #[arg(long, global = true, default_value_t = MAX_QE_VARS, value_parser = vars_in_range)]
    pub max_vars: usize,
    /// Largest polynomial degree handed to the decomposition (at most 16)
    #[arg(long, global = true, default_value_t = MAX_CAD_DEGREE, value_parser = clap::value_parser!(u32).range(1..=16))]
    pub degree_cap: u32,
    /// States a collapse search may expand (at most 10000000)
    #[arg(long, global = true, default_value_t = 100_000, value_parser = budget_in_range)]
    pub budget: usize,
    /// Worker threads for the decomposition
    #[arg(long, global = true, env = "RCFW_THREADS")]
    pub threads: Option<usize>,
}

fn bounded(s: &str, hi: usize) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if (1..=hi).contains(&v) {
        Ok(v)
    } else {
        Err(format!("must be between 1 and {hi}"))
    }
}

fn vars_in_range(s: &str) -> Result<usize, String> {
    bounded(s, MAX_QE_VARS)
}

fn budget_in_range(s: &str) -> Result<usize, String> {
    bounded(s, MAX_SEARCH_BUDGET)
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a set file and print each description's complexity `n p q`
    Describe { file: PathBuf },
    /// Encode a description as a parameter point
    Encode {
        file: PathBuf,
        /// Set to encode (default: the first)
        #[arg(long)]
        set: Option<String>,
        /// Number of atoms (default: the description's own)
        #[arg(long)]
        p: Option<usize>,
        /// Degree bound (default: the description's own)
        #[arg(long)]
        q: Option<u32>,
    },
    /// Decode a parameter point into a description
    Decode {
        file: PathBuf,
        #[arg(long, default_value = "S")]
        name: String,
    },
    /// Emit a sentence schema as an s-expression
    Emit {
        #[command(subcommand)]
        schema: EmitCmd,
    },
    /// Decide a closed sentence given in infix or s-expression form
    Decide {
        sentence: Option<String>,
        /// Read the sentence from a file
        #[arg(short, long, conflicts_with = "sentence")]
        file: Option<PathBuf>,
    },
    /// Decomposition queries on a set file
    Cad {
        #[command(subcommand)]
        query: CadCmd,
    },
    /// Geometric checks on sets in R^1 or R^2
    Check {
        #[command(subcommand)]
        check: CheckCmd,
    },
    /// Simplicial complexes and collapses
    Pl {
        #[command(subcommand)]
        op: PlCmd,
    },
    /// Evaluate the collar map g on a barycentric point of the m-simplex
    Collar {
        #[arg(long)]
        m: usize,
        /// Barycentric coordinates as rationals
        #[arg(required = true, num_args = 1..)]
        coords: Vec<String>,
        /// Collar parameter in [0, 1]; omit for a point of the simplex itself
        #[arg(long)]
        lambda: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum EmitCmd {
    /// The set is an m-dimensional C^r submanifold of R^n
    Submanifold {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        r: u32,
        /// Nash threshold l
        #[arg(long)]
        nash: Option<u32>,
        /// Inline the first set of this file instead of the symbol S
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// The set is a C^r manifold with boundary T
    Boundary {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long)]
        set: Option<PathBuf>,
        /// Inline the first set of this file instead of the symbol T
        #[arg(long)]
        boundary: Option<PathBuf>,
    },
    /// G is the graph of a homeomorphism X -> Y in R^n
    Homeomorphism {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: Option<PathBuf>,
        #[arg(long)]
        y: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// X collapses onto Y through a map I^n -> X with graph G
    Collapse {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ambient: usize,
        #[arg(long)]
        x: Option<PathBuf>,
        #[arg(long)]
        y: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct SetArg {
    pub file: PathBuf,
    /// Set to use (default: the first in the file)
    #[arg(long)]
    pub set: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum CadCmd {
    /// List the cells of a decomposition adapted to the set
    Cells(SetArg),
    /// Dimension of the set, -1 when empty
    Dimension(SetArg),
    /// Number of connected components (R^1 or R^2)
    Components(SetArg),
    /// Whether the set is empty
    Empty(SetArg),
    /// Whether two sets are equal: the first two sets of FILE, or the first set of FILE and of OTHER
    Equal { file: PathBuf, other: Option<PathBuf> },
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Classify a set of dimension at most one as a manifold
    Manifold(SetArg),
    /// Gradient test of f on the set, which must lie in {f = 0}
    Regularity {
        #[command(flatten)]
        target: SetArg,
        /// f (default: the set's only polynomial)
        #[arg(long)]
        poly: Option<String>,
    },
    /// Closed and bounded
    Compact(SetArg),
    /// The third set of FILE is the graph of a homeomorphism from the first onto the second
    Homeo { file: PathBuf },
    /// The first set of FILE is a cobordism between the second and the third
    Cobordism { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum PlCmd {
    /// Free pairs (sigma, tau) of a complex
    FreeFaces { file: PathBuf },
    /// Face counts and Euler characteristic
    Info { file: PathBuf },
    /// Apply steps such as `C ab abc` or `E d ad` in order
    Collapse {
        file: PathBuf,
        #[arg(long = "step", required = true)]
        steps: Vec<String>,
    },
    /// Search for a collapse onto the target subcomplex
    Search {
        file: PathBuf,
        /// Target subcomplex as facet tokens, e.g. `a`
        #[arg(long)]
        target: String,
    },
    /// Replay a certificate file
    Verify { file: PathBuf },
}

/// Text or JSON output with an exit code.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Reply {
    code: i32,
    text: String,
    json: Value,
}

fn reply(code: i32, text: impl Into<String>, json: Value) -> Reply {
    Reply {
        code,
        text: text.into(),
        json,
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Capacity(_) | Error::Unsupported(_) => EXIT_CAPACITY,
        Error::InvalidStep(_) => EXIT_REJECT,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: shown,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: shown,
                },
            };
        }
    };
    if let Some(t) = cli.config.threads {
        // the global pool can be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let json = cli.config.json;
    match dispatch(&cli) {
        Ok(r) => Outcome {
            code: r.code,
            stdout: if json {
                format!("{}\n", serde_json::to_string_pretty(&r.json).expect("json"))
            } else {
                let mut s = r.text;
                if !s.is_empty() && !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            },
            stderr: String::new(),
        },
        Err(e) => {
            let code = error_code(&e);
            if json {
                Outcome {
                    code,
                    stdout: format!(
                        "{}\n",
                        serde_json::to_string_pretty(&json!({"error": e.to_string(), "code": code})).expect("json")
                    ),
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                }
            }
        }
    }
}

fn read(path: &Path) -> rcfw::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn sets(path: &Path) -> rcfw::Result<Vec<SaDescription>> {
    let v = sa::parse_descriptions(&read(path)?)?;
    if v.is_empty() {
        return Err(Error::Invalid(format!("{}: no set definitions", path.display())));
    }
    Ok(v)
}

fn pick(arg: &SetArg) -> rcfw::Result<SaDescription> {
    let all = sets(&arg.file)?;
    match &arg.set {
        None => Ok(all.into_iter().next().expect("nonempty")),
        Some(name) => all
            .into_iter()
            .find(|d| &d.name == name)
            .ok_or_else(|| Error::Invalid(format!("no set named {name}"))),
    }
}

fn first_n(path: &Path, k: usize) -> rcfw::Result<Vec<SaDescription>> {
    let all = sets(path)?;
    if all.len() < k {
        return Err(Error::Invalid(format!(
            "{}: expected {k} sets, found {}",
            path.display(),
            all.len()
        )));
    }
    Ok(all.into_iter().take(k).collect())
}

fn check_degree(cfg: &RunConfig, ds: &[&SaDescription]) -> rcfw::Result<()> {
    for d in ds {
        for p in d.polys() {
            if p.degree() > cfg.degree_cap {
                return Err(Error::Capacity(format!(
                    "{}: polynomial {p} has degree {} above the cap {}",
                    d.name,
                    p.degree(),
                    cfg.degree_cap
                )));
            }
        }
    }
    Ok(())
}

fn binding(path: &Option<PathBuf>, symbol: &str) -> rcfw::Result<Binding> {
    Ok(match path {
        None => Binding::symbol(symbol),
        Some(p) => Binding::Set(first_n(p, 1)?.remove(0)),
    })
}

fn truth(b: bool, key: &str) -> Reply {
    reply(if b { EXIT_OK } else { EXIT_REJECT }, b.to_string(), json!({ key: b }))
}

fn dispatch(cli: &Cli) -> rcfw::Result<Reply> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Describe { file } => {
            let all = sets(file)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for d in &all {
                let c = sa::complexity_of(d);
                if all.len() > 1 {
                    write!(text, "{}: ", d.name).unwrap();
                }
                writeln!(text, "n={} p={} q={}", d.ambient, c.p, c.q).unwrap();
                rows.push(json!({"name": d.name, "n": d.ambient, "p": c.p, "q": c.q}));
            }
            Ok(reply(EXIT_OK, text, Value::Array(rows)))
        }
        Command::Encode { file, set, p, q } => {
            let d = pick(&SetArg {
                file: file.clone(),
                set: set.clone(),
            })?;
            let c = sa::complexity_of(&d);
            let a = sa::encode(&d, p.unwrap_or(c.p), q.unwrap_or(c.q))?;
            let blocks: Vec<Vec<String>> = a
                .blocks
                .iter()
                .map(|b| b.iter().map(|r| r.to_string()).collect())
                .collect();
            Ok(reply(
                EXIT_OK,
                a.to_string(),
                json!({"n": a.n, "p": a.p, "q": a.q, "selector": a.selector.to_string(), "blocks": blocks}),
            ))
        }
        Command::Decode { file, name } => {
            let a = sa::ParamPoint::parse(&read(file)?)?;
            let d = sa::decode(&a)?.with_name(name.clone());
            Ok(reply(EXIT_OK, d.to_string(), json!({"description": d.to_string()})))
        }
        Command::Emit { schema } => {
            let f = emit(schema)?;
            let text = fo::serialize(&f);
            let free: Vec<String> = f.free_vars().into_iter().collect();
            Ok(reply(EXIT_OK, text.clone(), json!({"formula": text, "free": free})))
        }
        Command::Decide { sentence, file } => {
            let text = match (sentence, file) {
                (Some(s), None) => s.clone(),
                (None, Some(p)) => read(p)?,
                _ => return Err(Error::Invalid("give a sentence or --file".into())),
            };
            let f = parse_sentence(&text)?;
            let limits = QeLimits {
                max_vars: cfg.max_vars,
                max_degree: cfg.degree_cap,
            };
            Ok(truth(cad::decide_with(&f, limits)?, "value"))
        }
        Command::Cad { query } => cad_query(cfg, query),
        Command::Check { check } => check_cmd(cfg, check),
        Command::Pl { op } => pl_cmd(cfg, op),
        Command::Collar { m, coords, lambda } => {
            let rat = |s: &str| parse_rat(s).ok_or_else(|| Error::Invalid(format!("bad rational `{s}`")));
            let x = coords.iter().map(|s| rat(s)).collect::<rcfw::Result<Vec<_>>>()?;
            let p = match lambda {
                None => CollarPoint::Simplex(x),
                Some(l) => CollarPoint::Collar(x, rat(l)?),
            };
            let y = pl::collar_cone_map(&p, *m)?;
            let out: Vec<String> = y.iter().map(|r| r.to_string()).collect();
            Ok(reply(EXIT_OK, out.join(" "), json!({"point": out})))
        }
    }
}

fn parse_sentence(text: &str) -> rcfw::Result<Formula> {
    let body: String = text
        .lines()
        .map(|l| l.split(';').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    if body.trim_start().starts_with('(') && fo::parse_sexpr(text).is_ok() {
        return fo::parse_sexpr(text);
    }
    if body.trim_start().starts_with('(') {
        // parenthesised infix, or a malformed s-expression
        return fo::parse_infix(text).or_else(|_| fo::parse_sexpr(text));
    }
    fo::parse_infix(text)
}

fn emit(schema: &EmitCmd) -> rcfw::Result<Formula> {
    match schema {
        EmitCmd::Submanifold { n, m, r, nash, set } => {
            let mut inst = PredicateInstance::submanifold(*n, *m, *r, binding(set, "S")?);
            inst.nash = *nash;
            fo::compile_submanifold(&inst)
        }
        EmitCmd::Boundary { n, m, r, set, boundary } => fo::compile_boundary(
            &PredicateInstance::boundary(*n, *m, *r, binding(set, "S")?),
            &binding(boundary, "T")?,
        ),
        EmitCmd::Homeomorphism { n, x, y, graph } => {
            fo::compile_homeomorphism(&binding(x, "X")?, &binding(y, "Y")?, &binding(graph, "G")?, *n)
        }
        EmitCmd::Collapse {
            n,
            ambient,
            x,
            y,
            graph,
        } => fo::compile_collapse(
            &binding(x, "X")?,
            &binding(y, "Y")?,
            &binding(graph, "G")?,
            *n,
            *ambient,
        ),
    }
}

fn cad_query(cfg: &RunConfig, q: &CadCmd) -> rcfw::Result<Reply> {
    match q {
        CadCmd::Cells(a) => {
            let d = pick(a)?;
            check_degree(cfg, &[&d])?;
            let t = cad::decompose_for(&[&d])?;
            let member = cad::membership(&t, &d)?;
            let mut text = String::new();
            let mut records = Vec::new();
            for (c, m) in t.cells().iter().zip(&member) {
                let r = c.record();
                let idx: Vec<String> = r.index.iter().map(|i| i.to_string()).collect();
                writeln!(
                    text,
                    "({}) dim={} sample=({}) signs={:?}{}",
                    idx.join(","),
                    r.dim,
                    r.sample.join(", "),
                    r.signs,
                    if *m { " in" } else { "" }
                )
                .unwrap();
                records.push(r);
            }
            let polys: Vec<String> = t.inputs().iter().map(|p| p.to_string()).collect();
            Ok(reply(
                EXIT_OK,
                text,
                json!({"ambient": t.ambient(), "polys": polys, "cells": records, "member": member}),
            ))
        }
        CadCmd::Dimension(a) => {
            let d = pick(a)?;
            check_degree(cfg, &[&d])?;
            let k = cad::dimension(&d)?;
            Ok(reply(EXIT_OK, k.to_string(), json!({"dimension": k})))
        }
        CadCmd::Components(a) => {
            let d = pick(a)?;
            check_degree(cfg, &[&d])?;
            let k = cad::connected_components(&d)?;
            Ok(reply(EXIT_OK, k.to_string(), json!({"components": k})))
        }
        CadCmd::Empty(a) => {
            let d = pick(a)?;
            check_degree(cfg, &[&d])?;
            Ok(truth(cad::is_empty(&d)?, "empty"))
        }
        CadCmd::Equal { file, other } => {
            let (a, b) = match other {
                None => {
                    let mut v = first_n(file, 2)?;
                    let b = v.pop().expect("two");
                    (v.pop().expect("two"), b)
                }
                Some(o) => (first_n(file, 1)?.remove(0), first_n(o, 1)?.remove(0)),
            };
            check_degree(cfg, &[&a, &b])?;
            Ok(truth(cad::sets_equal(&a, &b)?, "equal"))
        }
    }
}

fn check_reply(c: Check) -> Reply {
    let code = if c.accepted() { EXIT_OK } else { EXIT_REJECT };
    let j = match &c {
        Check::Accept => json!({"verdict": "accept"}),
        Check::Reject(r) => json!({"verdict": "reject", "reason": r}),
    };
    reply(code, c.to_string(), j)
}

fn check_cmd(cfg: &RunConfig, c: &CheckCmd) -> rcfw::Result<Reply> {
    match c {
        CheckCmd::Manifold(a) => {
            let d = pick(a)?;
            check_degree(cfg, &[&d])?;
            let v = topo::check_curve_manifold(&d)?;
            let code = match v {
                ManifoldVerdict::ManifoldNoBoundary | ManifoldVerdict::ManifoldWithBoundary(_) => EXIT_OK,
                ManifoldVerdict::NotManifold(_) => EXIT_REJECT,
                ManifoldVerdict::Unsupported(_) => EXIT_CAPACITY,
            };
            Ok(reply(
                code,
                v.to_string(),
                serde_json::to_value(v.record()).expect("json"),
            ))
        }
        CheckCmd::Regularity { target, poly } => {
            let d = pick(target)?;
            check_degree(cfg, &[&d])?;
            let f = match poly {
                Some(text) => parse_poly(text, d.ambient)?,
                None => {
                    let ps = d.polys();
                    if ps.len() != 1 {
                        return Err(Error::Invalid("the set has several polynomials; pass --poly".into()));
                    }
                    ps[0].clone()
                }
            };
            Ok(match topo::regularity_check(&f, &d)? {
                Regularity::Pass => reply(EXIT_OK, "regular", json!({"verdict": "regular", "points": []})),
                Regularity::Fail(w) => reply(
                    EXIT_REJECT,
                    Regularity::Fail(w.clone()).to_string(),
                    json!({"verdict": "singular", "points": [topo::point_record(&w)]}),
                ),
            })
        }
        CheckCmd::Compact(a) => {
            let d = pick(a)?;
            check_degree(cfg, &[&d])?;
            let k = topo::compactness_check(&d)?;
            let code = if k.compact() { EXIT_OK } else { EXIT_REJECT };
            Ok(reply(code, k.to_string(), serde_json::to_value(k).expect("json")))
        }
        CheckCmd::Homeo { file } => {
            let v = first_n(file, 3)?;
            check_degree(cfg, &[&v[0], &v[1], &v[2]])?;
            Ok(check_reply(topo::verify_homeo(&v[0], &v[1], &v[2])?))
        }
        CheckCmd::Cobordism { file } => {
            let v = first_n(file, 3)?;
            check_degree(cfg, &[&v[0], &v[1], &v[2]])?;
            Ok(check_reply(topo::check_cobordism(&v[0], &v[1], &v[2])?))
        }
    }
}

fn complex(path: &Path) -> rcfw::Result<SimplicialComplex> {
    pl::parse_complex(&read(path)?)
}

fn cert_json(c: &HomotopyCertificate) -> Value {
    let steps: Vec<String> = c.steps.iter().map(|s| s.to_string()).collect();
    json!({
        "base": c.base.to_string(),
        "fixed": c.fixed.to_string(),
        "target": c.target.to_string(),
        "steps": steps,
    })
}

fn pl_cmd(cfg: &RunConfig, op: &PlCmd) -> rcfw::Result<Reply> {
    match op {
        PlCmd::FreeFaces { file } => {
            let k = complex(file)?;
            let pairs: Vec<(String, String)> = k
                .free_faces()
                .iter()
                .map(|(s, t)| (pl::fmt_simplex(s), pl::fmt_simplex(t)))
                .collect();
            let text: String = pairs.iter().map(|(s, t)| format!("{s} {t}\n")).collect();
            let j: Vec<Value> = pairs.iter().map(|(s, t)| json!({"sigma": s, "tau": t})).collect();
            Ok(reply(EXIT_OK, text, Value::Array(j)))
        }
        PlCmd::Info { file } => {
            let k = complex(file)?;
            let f = k.f_vector();
            let chi = k.euler_characteristic();
            let fs: Vec<String> = f.iter().map(|x| x.to_string()).collect();
            Ok(reply(
                EXIT_OK,
                format!("dim={} f=({}) chi={chi}", k.dim(), fs.join(", ")),
                json!({"dim": k.dim(), "f": f, "euler": chi}),
            ))
        }
        PlCmd::Collapse { file, steps } => {
            let mut k = complex(file)?;
            for (i, line) in steps.iter().enumerate() {
                let step = pl::CollapseStep::parse(line)?;
                k = match k.apply(&step) {
                    Ok(next) => next,
                    Err(e) => {
                        return Ok(reply(
                            EXIT_REJECT,
                            format!("reject at step {i}: {e}"),
                            json!({"verdict": "reject", "index": i, "reason": e.to_string()}),
                        ))
                    }
                };
            }
            Ok(reply(EXIT_OK, k.to_string(), json!({"complex": k.to_string()})))
        }
        PlCmd::Search { file, target } => {
            if cfg.budget > MAX_SEARCH_BUDGET {
                return Err(Error::Capacity("budget above the hard limit".into()));
            }
            let k = complex(file)?;
            let y = pl::parse_complex(target)?;
            let r = pl::collapse_search(&k, &y, cfg.budget)?;
            Ok(match r.outcome {
                SearchOutcome::Certificate(c) => {
                    let mut j = cert_json(&c);
                    j["expanded"] = json!(r.expanded);
                    reply(EXIT_OK, c.to_string(), j)
                }
                SearchOutcome::Exhausted(why) => {
                    let why = match why {
                        pl::Exhaustion::Budget => "budget",
                        pl::Exhaustion::Complete => "complete",
                    };
                    reply(
                        EXIT_CAPACITY,
                        format!("exhausted ({why}) after {} states", r.expanded),
                        json!({"exhausted": why, "expanded": r.expanded}),
                    )
                }
            })
        }
        PlCmd::Verify { file } => {
            let c = HomotopyCertificate::parse(&read(file)?)?;
            Ok(match pl::verify_certificate(&c) {
                pl::Verification::Accept => reply(EXIT_OK, "accept", json!({"verdict": "accept"})),
                v @ pl::Verification::Reject { .. } => {
                    let pl::Verification::Reject { index, reason } = &v else {
                        unreachable!()
                    };
                    let j = json!({"verdict": "reject", "index": index, "reason": reason});
                    reply(EXIT_REJECT, v.to_string(), j)
                }
            })
        }
    }
}
