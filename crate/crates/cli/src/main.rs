use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{Value, json};

use mgk_core::verify::{self, Status, Summary, SweepConfig};
use mgk_core::{
    Alphabet, AnyLink, ClosedGropeTree, CompositionSpec, Error, GropeTree, LinkFile, LinkModel, MuIndex,
    SolidTorusLink, Word, WordExpr, compose, essentiality_certificate, lcs_degree, magnus, milnor,
    normal_form, r_inverse,
};

const DEFAULT_MAX_GENERATORS: usize = 6;
const GENERATOR_LIMIT: usize = 8;

#[derive(Parser)]
#[command(name = "mgk", version, about = "Grope trees, Milnor groups and link composition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grope trees: class, dual trees, boundary words, DOT export
    #[command(subcommand)]
    Grope(GropeCmd),
    /// Free Milnor groups and the Magnus expansion
    #[command(subcommand)]
    Milnor(MilnorCmd),
    /// Link invariants
    #[command(subcommand)]
    Link(LinkCmd),
    /// Replace a component of L by the solid-torus link Q
    Compose {
        l: String,
        q: String,
        /// Component of L to replace (name or 1-based index; default last)
        #[arg(long)]
        target: Option<String>,
        /// Write the composed link here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coefficients a, b, c with c = a·b for an almost trivial pair
    Certificate {
        l: String,
        q: String,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Seeded property sweeps (`all`, or one of: ring, relations,
    /// nilpotency, split, grope-degree, duality, sigma, certificate)
    Verify {
        what: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GropeCmd {
    Class { tree: String },
    /// One dual tree per free tip of a closed tree
    Duals {
        tree: String,
        #[arg(long)]
        json: bool,
    },
    Boundary {
        tree: String,
        /// Comma-separated tip names (default m1,m2,...)
        #[arg(long)]
        names: Option<String>,
        /// Print the freely reduced letter sequence instead of brackets
        #[arg(long)]
        flat: bool,
    },
    Dot {
        tree: String,
        /// Omit the root edge of a closed tree
        #[arg(long)]
        open: bool,
    },
}

#[derive(Args)]
struct Gens {
    /// Comma-separated generator names (default inferred from m1, m2, ...)
    #[arg(long)]
    gens: Option<String>,
}

#[derive(Subcommand)]
enum MilnorCmd {
    /// Magnus expansion
    Expand {
        word: String,
        #[command(flatten)]
        gens: Gens,
    },
    /// Normal form in the free Milnor group
    Nf {
        word: String,
        #[command(flatten)]
        gens: Gens,
    },
    Equal {
        a: String,
        b: String,
        #[command(flatten)]
        gens: Gens,
    },
    LcsDegree {
        word: String,
        #[command(flatten)]
        gens: Gens,
    },
    /// r⁻¹ with the last generator distinguished
    Rinv {
        word: String,
        #[command(flatten)]
        gens: Gens,
    },
}

#[derive(Subcommand)]
enum LinkCmd {
    /// μ̄ with distinct indices, e.g. --index 2,3,1
    Mu {
        link: String,
        #[arg(long)]
        index: String,
    },
    Trivial { link: String },
    AlmostTrivial { link: String },
    /// Print a link (catalog name or file) as JSON
    Show { link: String },
}

enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAlmostTrivial(_) => Failure::Check(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn max_generators() -> Result<usize, Failure> {
    match std::env::var("MGK_MAX_GENERATORS") {
        Err(_) => Ok(DEFAULT_MAX_GENERATORS),
        Ok(v) => {
            let n: usize =
                v.trim().parse().map_err(|_| Failure::Usage(format!("MGK_MAX_GENERATORS=`{v}` is not a number")))?;
            if n == 0 {
                return Err(Failure::Usage("MGK_MAX_GENERATORS must be at least 1".into()));
            }
            if n > GENERATOR_LIMIT {
                return Err(Error::TooManyGenerators { requested: n, limit: GENERATOR_LIMIT }.into());
            }
            Ok(n)
        }
    }
}

fn guard(rank: usize) -> Outcome {
    let limit = max_generators()?;
    if rank > limit {
        return Err(Error::TooManyGenerators { requested: rank, limit }.into());
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Grope(c) => grope(c),
        Command::Milnor(c) => milnor_cmd(c),
        Command::Link(c) => link(c),
        Command::Compose { l, q, target, out } => {
            let spec = spec(&l, &q, target.as_deref())?;
            let text = compose(&spec)?.to_file().to_json();
            match out {
                Some(p) => fs::write(&p, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
                None => {
                    println!("{text}");
                    Ok(())
                }
            }
        }
        Command::Certificate { l, q, target, json } => {
            let spec = spec(&l, &q, target.as_deref())?;
            let cert = essentiality_certificate(&spec)?;
            if json {
                let v = json!({
                    "a": cert.a.to_string(), "b": cert.b.to_string(), "c": cert.c.to_string(),
                    "holds": cert.holds(),
                });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("a = {}\nb = {}\nc = {}", cert.a, cert.b, cert.c);
                println!("c {} a*b", if cert.holds() { "=" } else { "!=" });
            }
            if cert.holds() { Ok(()) } else { Err(Failure::Check("c != a*b".into())) }
        }
        Command::Verify { what, trials, seed, json, out } => verify_cmd(&what, trials, seed, json, out),
    }
}

fn grope(cmd: GropeCmd) -> Outcome {
    match cmd {
        GropeCmd::Class { tree } => {
            println!("{}", GropeTree::parse(&tree)?.class());
        }
        GropeCmd::Duals { tree, json } => {
            let t = ClosedGropeTree::parse(&tree)?;
            let k = t.class();
            let mut rows = Vec::new();
            let mut all_ok = true;
            for (tip, dual) in t.duals() {
                let c = dual.class();
                all_ok &= c >= k;
                rows.push((tip, dual, c));
            }
            if json {
                let duals: Vec<Value> = rows
                    .iter()
                    .map(|(tip, d, c)| json!({"tip": tip.to_string(), "dual": d.to_string(), "class": c, "bound": *c >= k}))
                    .collect();
                let v = json!({"tree": t.to_string(), "class": k, "duals": duals});
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("class {k}, {} free tips", rows.len());
                for (tip, d, c) in &rows {
                    println!("{tip}\t{d}\tclass {c}\t{}", if *c >= k { "ok" } else { "BELOW" });
                }
            }
            if !all_ok {
                return Err(Failure::Check(format!("a dual has class below {k}")));
            }
        }
        GropeCmd::Boundary { tree, names, flat } => {
            let t = GropeTree::parse(&tree)?;
            let names: Vec<String> = match names {
                Some(n) => n.split(',').map(|s| s.trim().to_string()).collect(),
                None => Alphabet::numbered("m", t.leaf_count()).names().to_vec(),
            };
            if flat {
                let (a, w) = t.boundary_word(&names)?;
                println!("{}", w.free_reduce().display(&a));
            } else {
                println!("{}", t.boundary_expr(&names)?);
            }
        }
        GropeCmd::Dot { tree, open } => {
            let t = GropeTree::parse(&tree)?;
            if open || t.is_leaf() {
                print!("{}", t.to_dot());
            } else {
                print!("{}", ClosedGropeTree::new(t)?.to_dot());
            }
        }
    }
    Ok(())
}

/// Alphabet from `--gens` or from the `m<k>` names in the words.
fn alphabet(gens: &Gens, words: &[&str]) -> Result<(Alphabet, Vec<Word>), Failure> {
    let exprs = words.iter().map(|w| WordExpr::parse(w)).collect::<Result<Vec<_>, _>>()?;
    let alphabet = match &gens.gens {
        Some(g) => {
            let names: Vec<&str> = g.split(',').map(str::trim).collect();
            Alphabet::new(&names)?
        }
        None => {
            let mut top = 0;
            for name in exprs.iter().flat_map(WordExpr::names) {
                let k = name
                    .strip_prefix('m')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Failure::Usage(format!("cannot infer an index for `{name}`; pass --gens")))?;
                top = top.max(k);
            }
            Alphabet::numbered("m", top)
        }
    };
    guard(alphabet.len())?;
    let words = exprs.iter().map(|e| e.flatten(&alphabet)).collect::<Result<Vec<_>, _>>()?;
    Ok((alphabet, words))
}

fn ynames(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("y{i}")).collect()
}

fn milnor_cmd(cmd: MilnorCmd) -> Outcome {
    match cmd {
        MilnorCmd::Expand { word, gens } => {
            let (a, w) = alphabet(&gens, &[&word])?;
            println!("{}", magnus(&w[0], a.len())?);
        }
        MilnorCmd::Nf { word, gens } => {
            let (a, w) = alphabet(&gens, &[&word])?;
            let nf = normal_form(&w[0], a.len())?;
            println!("{nf}");
            println!("{}", nf.to_word().display(&a));
        }
        MilnorCmd::Equal { a, b, gens } => {
            let (al, w) = alphabet(&gens, &[&a, &b])?;
            let eq = milnor::equal(&w[0], &w[1], al.len())?;
            println!("{}", if eq { "equal" } else { "not equal" });
        }
        MilnorCmd::LcsDegree { word, gens } => {
            let (a, w) = alphabet(&gens, &[&word])?;
            match lcs_degree(&w[0], a.len())? {
                Some(d) => println!("{d}"),
                None => println!("infinite"),
            }
        }
        MilnorCmd::Rinv { word, gens } => {
            let (a, w) = alphabet(&gens, &[&word])?;
            let rho = r_inverse(&w[0], a.len())?;
            println!("{}", rho.display_with(&ynames(rho.nvars())));
        }
    }
    Ok(())
}

fn load(arg: &str) -> Result<AnyLink, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        Ok(LinkFile::from_json(&text)?.into_link()?)
    } else {
        Ok(mgk_core::catalog(arg)?)
    }
}

fn load_model(arg: &str) -> Result<LinkModel, Failure> {
    let l = load(arg)?.as_model().clone();
    guard(l.len())?;
    Ok(l)
}

fn load_pattern(arg: &str) -> Result<SolidTorusLink, Failure> {
    match load(arg)? {
        AnyLink::SolidTorus(q) => {
            guard(q.hat().len())?;
            Ok(q)
        }
        AnyLink::Plain(_) => Err(Error::MissingWedge.into()),
    }
}

fn spec(l: &str, q: &str, target: Option<&str>) -> Result<CompositionSpec, Failure> {
    let lhat = load_model(l)?;
    let q = load_pattern(q)?;
    let spec = match target {
        None => CompositionSpec::new(lhat, q)?,
        Some(t) => {
            let i = lhat.component(t)?;
            CompositionSpec::with_target(lhat, q, i)?
        }
    };
    guard(spec.k() + spec.m())?;
    Ok(spec)
}

fn link(cmd: LinkCmd) -> Outcome {
    match cmd {
        LinkCmd::Mu { link, index } => {
            let l = load_model(&link)?;
            let idx: MuIndex = index.parse()?;
            println!("{}", l.mu_bar(&idx)?);
        }
        LinkCmd::Trivial { link } => {
            let l = load_model(&link)?;
            println!("{}", if l.is_homotopically_trivial() { "trivial" } else { "nontrivial" });
        }
        LinkCmd::AlmostTrivial { link } => {
            let l = load_model(&link)?;
            println!("{}", if l.is_almost_trivial()? { "almost trivial" } else { "not almost trivial" });
        }
        LinkCmd::Show { link } => {
            println!("{}", load(&link)?.to_file().to_json());
        }
    }
    Ok(())
}

fn verify_cmd(what: &str, trials: Option<usize>, seed: u64, json: bool, out: Option<PathBuf>) -> Outcome {
    if trials == Some(0) {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let sweeps: Vec<&verify::Sweep> = if what == "all" {
        verify::SWEEPS.iter().collect()
    } else {
        vec![verify::sweep(what).ok_or_else(|| Failure::Usage(format!("unknown sweep `{what}`")))?]
    };
    let cfg = SweepConfig { seed, trials, max_generators: max_generators()? };
    let mut cases = Vec::new();
    let mut lines = Vec::new();
    for s in sweeps {
        let got = s.run(&cfg)?;
        let sum = Summary::of(&got);
        lines.push(format!("{:<13} {}/{} passed", s.name, sum.passed, sum.total));
        for c in got.iter().filter(|c| c.status == Status::Fail) {
            lines.push(format!("  FAIL #{} {} -> {}", c.index, c.input, c.actual));
        }
        cases.extend(got);
    }
    let summary = Summary::of(&cases);
    let text = if json {
        let report = json!({
            "command": format!("verify {what}"),
            "config": cfg,
            "cases": cases,
            "summary": summary,
        });
        serde_json::to_string_pretty(&report).unwrap() + "\n"
    } else {
        lines.push(format!("total: {}/{} passed", summary.passed, summary.total));
        lines.join("\n") + "\n"
    };
    match out {
        Some(p) => fs::write(&p, &text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    if summary.failed > 0 {
        return Err(Failure::Check(format!("{} of {} cases failed", summary.failed, summary.total)));
    }
    Ok(())
}
