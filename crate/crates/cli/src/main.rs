use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sckr::asp::{self, Caps, Entailment};
use sckr::frontend::{self, parse_bcq, parse_query};
use sckr::kb::{QueryAtom, Sckr};
use sckr::oracle::{Mode, Oracle};
use sckr::reductions::{self, random, GeneratedInstance};
use sckr::report::{self, Report};
use sckr::translate::{output_atom, translate};

const USAGE: u8 = 1;
const INVALID: u8 = 2;
const INCONSISTENT: u8 = 3;
const CAP: u8 = 4;

#[derive(Parser)]
#[command(name = "sckr", version, about = "Reasoning over contextualized knowledge repositories with exceptions")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Answer-set cap; overrides CKR_CAPS
    #[arg(long, global = true)]
    max_models: Option<usize>,
    /// Ground-atom cap; overrides CKR_CAPS
    #[arg(long, global = true)]
    max_ground_atoms: Option<usize>,
    /// Preference used by the oracle
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Global)]
    mode: ModeArg,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Global,
    Induced,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the program for a repository
    Translate { file: PathBuf },
    /// Report the optimal (or, with --all, every) answer set
    Models {
        file: PathBuf,
        #[arg(long)]
        all: bool,
    },
    /// Decide `A(a)@c` or `R(a,b)@c` over the optimal answer sets
    Query { file: PathBuf, query: String },
    /// Work directly on the model theory
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Write generated instances
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Preferred models; with --compare, diff against the program pipeline per file
    Models {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        compare: bool,
    },
    /// Entailment of a query; without -q the queries come from each file's `.query` sidecar
    Query {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(short, long)]
        query: Option<String>,
        #[arg(long)]
        compare: bool,
    },
    /// Check each model of a JSON report: justified, least and preferred
    Check { file: PathBuf, models: PathBuf },
    /// Entailment of a boolean conjunctive query such as `A(?x)@c, R(?x,b)@c`
    Bcq { file: PathBuf, query: String },
}

#[derive(Args)]
struct GenOut {
    /// Writes PREFIX.ckr and PREFIX.query; prints the repository otherwise
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Lexicographically largest assignment of a monotone 3CNF
    Lexmax {
        /// variables
        #[arg(short, default_value_t = 3)]
        n: usize,
        /// clauses
        #[arg(short, default_value_t = 3)]
        m: usize,
        /// read the formula from a DIMACS file instead
        #[arg(long)]
        dimacs: Option<PathBuf>,
        #[command(flatten)]
        out: GenOut,
    },
    /// Parity of satisfiable instances
    Oddsat {
        #[arg(short, default_value_t = 2)]
        l: usize,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Two-level quantified formula, decided under the induced preference
    Qbf {
        #[arg(long, default_value_t = 2)]
        max_x: usize,
        #[arg(long, default_value_t = 2)]
        max_y: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Small random repository
    Random {
        #[command(flatten)]
        out: GenOut,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn exit(code: u8, msg: impl Into<String>) -> anyhow::Error {
    Exit(code, msg.into()).into()
}

fn code_of(e: &anyhow::Error) -> u8 {
    if let Some(Exit(c, _)) = e.downcast_ref::<Exit>() {
        return *c;
    }
    if e.downcast_ref::<std::io::Error>().is_some() {
        return USAGE;
    }
    match e.downcast_ref::<sckr::Error>() {
        Some(sckr::Error::CapExceeded { .. }) => CAP,
        Some(sckr::Error::Query(_)) => USAGE,
        Some(_) => INVALID,
        None => USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code_of(&e))
        }
    }
}

/// Defaults, then `CKR_CAPS=models=..,atoms=..,subsets=..`, then flags.
fn caps(o: &Opts) -> Result<Caps> {
    let mut c = Caps::default();
    if let Ok(spec) = std::env::var("CKR_CAPS") {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| exit(USAGE, format!("CKR_CAPS: expected key=value, got '{part}'")))?;
            let v: usize = v.trim().parse().map_err(|_| exit(USAGE, format!("CKR_CAPS: bad number in '{part}'")))?;
            match k.trim() {
                "models" => c.max_models = v,
                "atoms" => c.max_ground_atoms = v,
                "subsets" => c.max_subsets = v,
                other => return Err(exit(USAGE, format!("CKR_CAPS: unknown key '{other}'"))),
            }
        }
    }
    if let Some(m) = o.max_models {
        c.max_models = m;
    }
    if let Some(a) = o.max_ground_atoms {
        c.max_ground_atoms = a;
    }
    if c.max_models == 0 || c.max_ground_atoms == 0 || c.max_subsets == 0 {
        return Err(exit(USAGE, "caps must be positive"));
    }
    Ok(c)
}

fn load(path: &Path) -> Result<Sckr> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let k = frontend::parse(&text).with_context(|| path.display().to_string())?;
    if k.contexts.levels.is_empty() {
        return Err(exit(INVALID, format!("{}: no contexts", path.display())));
    }
    for w in frontend::warnings(&k) {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(k)
}

fn query(k: &Sckr, text: &str) -> Result<QueryAtom> {
    let q = parse_query(text).map_err(|e| exit(USAGE, format!("query '{text}': {e}")))?;
    q.check(k).map_err(|e| exit(USAGE, format!("query '{text}': {e}")))?;
    Ok(q)
}

fn mode(o: &Opts) -> Mode {
    match o.mode {
        ModeArg::Global => Mode::Global,
        ModeArg::Induced => Mode::Induced,
    }
}

fn run(cli: Cli) -> Result<u8> {
    let o = &cli.opts;
    match cli.cmd {
        Cmd::Translate { file } => {
            let p = translate(&load(&file)?)?;
            if o.json {
                let v = serde_json::json!({
                    "facts": p.facts.iter().map(|a| format!("{a}.")).collect::<Vec<_>>(),
                    "rules": p.rules.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "weak": p.weak.iter().map(ToString::to_string).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                print!("{}", p.emit_text());
            }
            Ok(0)
        }
        Cmd::Models { file, all } => {
            let p = translate(&load(&file)?)?;
            let c = caps(o)?;
            let sol = if all { asp::solve_all(&p, c)? } else { asp::solve_optimal(&p, c)? };
            print_report(&report::from_solution(&sol), o.json)
        }
        Cmd::Query { file, query: text } => {
            let k = load(&file)?;
            let q = query(&k, &text)?;
            let e = asp::cautious_entails(&translate(&k)?, &output_atom(&q), caps(o)?)?;
            Ok(print_verdict(&q, e, o.json))
        }
        Cmd::Oracle { cmd } => oracle(o, cmd),
        Cmd::Gen { family } => gen(family),
    }
}

fn print_report(r: &Report, json: bool) -> Result<u8> {
    if json {
        println!("{}", r.to_json());
    } else {
        println!("{} model(s)", r.count);
        for (i, m) in r.models.iter().enumerate() {
            println!("model {}:", i + 1);
            for (ctx, cf) in &m.facts_by_context {
                let mut items: Vec<String> = Vec::new();
                for (c, inds) in &cf.concepts {
                    items.extend(inds.iter().map(|x| format!("{c}({x})")));
                }
                for (r, pairs) in &cf.roles {
                    items.extend(pairs.iter().map(|(x, y)| format!("{r}({x},{y})")));
                }
                println!("  {ctx}: {}", items.join(" "));
            }
            for ov in &m.overridings {
                println!("  override {} from {} at {} for ({})", ov.axiom, ov.home, ov.at, ov.tuple.join(","));
            }
            if !m.cost.is_empty() {
                let cost: Vec<String> = m.cost.iter().map(|(l, n)| format!("{n}@{l}")).collect();
                println!("  cost {}", cost.join(" "));
            }
        }
    }
    if r.count == 0 {
        eprintln!("the repository has no justified model");
        return Ok(INCONSISTENT);
    }
    Ok(0)
}

fn print_verdict(q: &QueryAtom, e: Entailment, json: bool) -> u8 {
    let v = reductions::verdict(e);
    if json {
        println!("{}", serde_json::json!({ "query": q.to_string(), "verdict": v }));
    } else {
        println!("{v}");
    }
    if e == Entailment::Inconsistent {
        INCONSISTENT
    } else {
        0
    }
}

/// Queries listed in the generator sidecar next to `file`.
fn sidecar_queries(file: &Path) -> Result<Vec<String>> {
    let side = file.with_extension("query");
    let text = fs::read_to_string(&side)
        .map_err(|e| exit(USAGE, format!("no query given and cannot read {}: {e}", side.display())))?;
    Ok(text.lines().filter_map(|l| l.strip_prefix("query=")).map(str::to_string).collect())
}

fn oracle(o: &Opts, cmd: OracleCmd) -> Result<u8> {
    let c = caps(o)?;
    let m = mode(o);
    let comparing = matches!(cmd, OracleCmd::Models { compare: true, .. } | OracleCmd::Query { compare: true, .. });
    if comparing && m == Mode::Induced {
        eprintln!("warning: the program pipeline optimizes the global preference; diffs under --mode induced are expected");
    }
    match cmd {
        OracleCmd::Models { files, compare } => {
            let mut code = 0;
            let mut diffs = 0;
            for f in &files {
                let k = load(f)?;
                let r = report::from_models(&k, &Oracle::new(&k, c)?.preferred_models(m)?);
                if compare {
                    let e = report::from_solution(&asp::solve_optimal(&translate(&k)?, c)?);
                    let same = e == r;
                    diffs += usize::from(!same);
                    println!("{}: oracle={} program={} {}", f.display(), r.count, e.count, if same { "same" } else { "DIFF" });
                } else {
                    code = code.max(print_report(&r, o.json)?);
                }
            }
            if compare {
                println!("{} instance(s), {diffs} diff(s)", files.len());
                if diffs > 0 {
                    return Err(anyhow!("{diffs} instance(s) differ"));
                }
            }
            Ok(code)
        }
        OracleCmd::Query { files, query: qtext, compare } => {
            let mut code = 0;
            let mut diffs = 0;
            let mut total = 0;
            for f in &files {
                let k = load(f)?;
                let texts = match &qtext {
                    Some(q) => vec![q.clone()],
                    None => sidecar_queries(f)?,
                };
                let oracle = Oracle::new(&k, c)?;
                let program = if compare { Some(asp::solve_optimal(&translate(&k)?, c)?) } else { None };
                for t in texts {
                    let q = query(&k, &t)?;
                    let e = oracle.entails(&q, m)?;
                    total += 1;
                    match &program {
                        Some(sol) => {
                            let p = sol.cautious(&output_atom(&q));
                            diffs += usize::from(p != e);
                            println!(
                                "{}: {q} oracle={} program={} {}",
                                f.display(),
                                reductions::verdict(e),
                                reductions::verdict(p),
                                if p == e { "same" } else { "DIFF" }
                            );
                        }
                        None if files.len() > 1 => println!("{}: {q} {}", f.display(), reductions::verdict(e)),
                        None => code = code.max(print_verdict(&q, e, o.json)),
                    }
                }
            }
            if compare {
                println!("{total} quer(ies), {diffs} diff(s)");
                if diffs > 0 {
                    return Err(anyhow!("{diffs} verdict(s) differ"));
                }
            }
            Ok(code)
        }
        OracleCmd::Check { file, models } => {
            let k = load(&file)?;
            let text = fs::read_to_string(&models).with_context(|| format!("reading {}", models.display()))?;
            let r: Report = serde_json::from_str(&text).map_err(|e| exit(INVALID, format!("{}: {e}", models.display())))?;
            let oracle = Oracle::new(&k, c)?;
            let mut all = true;
            for cm in report::to_models(&k, &r)? {
                let ok = oracle.is_preferred_model(&cm, m)?;
                all &= ok;
                println!("{ok}");
            }
            if o.json {
                println!("{}", serde_json::json!({ "all": all }));
            }
            Ok(0)
        }
        OracleCmd::Bcq { file, query: text } => {
            let k = load(&file)?;
            let atoms = parse_bcq(&text).map_err(|e| exit(USAGE, format!("query '{text}': {e}")))?;
            let e = Oracle::new(&k, c)?.entails_bcq(&atoms, m)?;
            if o.json {
                println!("{}", serde_json::json!({ "query": text, "verdict": reductions::verdict(e) }));
            } else {
                println!("{}", reductions::verdict(e));
            }
            Ok(if e == Entailment::Inconsistent { INCONSISTENT } else { 0 })
        }
    }
}

fn gen(family: GenCmd) -> Result<u8> {
    let (inst, out) = match family {
        GenCmd::Lexmax { n, m, dimacs, out } => {
            let e = match dimacs {
                Some(p) => {
                    let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    reductions::parse_dimacs(&text)?
                }
                None => {
                    if n == 0 || n > reductions::DEFAULT_MAX_VARS {
                        bail!(exit(USAGE, format!("-n must be in 1..={}", reductions::DEFAULT_MAX_VARS)));
                    }
                    random::random_monotone_cnf(&mut random::rng(out.seed), n, m)
                }
            };
            (reductions::gen_lexmax_sat(&e)?, out)
        }
        GenCmd::Oddsat { l, max_vars, out } => {
            if l == 0 || max_vars == 0 || max_vars > reductions::DEFAULT_MAX_VARS {
                bail!(exit(USAGE, "-l and --max-vars must be positive and small"));
            }
            let f = random::random_odd_family(&mut random::rng(out.seed), l, max_vars);
            (reductions::gen_odd_sat(&f)?, out)
        }
        GenCmd::Qbf { max_x, max_y, out } => {
            if max_x == 0 || max_y == 0 || max_x + max_y > 6 {
                bail!(exit(USAGE, "--max-x and --max-y must be positive with a sum of at most 6"));
            }
            let q = random::random_qbf(&mut random::rng(out.seed), max_x, max_y);
            (reductions::gen_qbf(&q)?, out)
        }
        GenCmd::Random { out } => {
            let k = random::random_sckr(&mut random::rng(out.seed), random::SckrParams::default());
            (GeneratedInstance { sckr: k, queries: vec![], expected: vec![], mode: Mode::Global }, out)
        }
    };
    match out.out {
        Some(prefix) => {
            let ckr = prefix.with_extension("ckr");
            let side = prefix.with_extension("query");
            fs::write(&ckr, inst.ckr_text()).with_context(|| format!("writing {}", ckr.display()))?;
            fs::write(&side, inst.sidecar_text()).with_context(|| format!("writing {}", side.display()))?;
            println!("{}", ckr.display());
            println!("{}", side.display());
        }
        None => print!("{}", inst.ckr_text()),
    }
    Ok(0)
}
