use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mvgrass::check;
use mvgrass::grass::{check_precision, enumerate_points};
use mvgrass::moment::{min_formal_poincare, skeleton, DEFAULT_GRAPH_BUDGET};
use mvgrass::mvcomb::PolytopeJson;
use mvgrass::paving::{greedy_paving, paving_121, PavingPlan};
use mvgrass::rootdata::FamilyJson;
use mvgrass::springer::{
    fundamental_domain, springer_dim, truncated_paving, GammaJson, RegularDiagonal,
};
use mvgrass::{Coweight, CrystalWord, GTFamily, LusztigDatum, MVPolytope, PrimeField, ReducedWord};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "mvgrass",
    version,
    about = "MV polytopes, truncated affine Grassmannians and affine Springer fibres for GL3"
)]
struct Cli {
    /// Prime for point counts.
    #[arg(long, global = true, env = "MVGRASS_PRIME", default_value_t = 2)]
    prime: u32,
    /// Working precision for series.
    #[arg(long, global = true, env = "MVGRASS_PREC", default_value_t = 64)]
    prec: i64,
    /// Largest number of candidate representatives to examine.
    #[arg(long, global = true, default_value_t = mvgrass::grass::DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Vertices, Lusztig data and crystal neighbours of an MV polytope.
    Polytope {
        #[command(flatten)]
        src: Source,
        /// Crystal operators such as `E2,F1`, composed right to left.
        #[arg(long, value_delimiter = ',')]
        apply: Vec<String>,
    },
    /// The braid move between `121` and `212` data.
    Braid {
        #[arg(long, default_value = "121")]
        word: ReducedWord,
        #[arg(long, value_parser = parse_n)]
        n: [u32; 3],
    },
    /// `E_j P` for an alternating word `j`.
    Crystal {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_parser = parse_word)]
        j: CrystalWord,
    },
    /// `F_p`-points of a truncation.
    Points {
        #[command(flatten)]
        src: Source,
        /// Print only the number of points.
        #[arg(long)]
        count: bool,
    },
    /// The moment graph of a truncation.
    Graph {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Minimal formal Betti numbers of the moment graph.
    Betti {
        #[command(flatten)]
        src: Source,
    },
    /// A verified paving by affine cells.
    Pave {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = Method::Greedy)]
        method: Method,
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3])]
        verify_q: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Affine Springer fibres of regular elements of `t(O)`.
    Springer {
        /// JSON with three series or a valuation pattern.
        #[arg(long)]
        gamma: PathBuf,
        /// Pave `E_j F_γ`, given as `j=2121`; `j=` is the empty word.
        #[arg(long, value_parser = parse_truncation)]
        truncate: Option<CrystalWord>,
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3])]
        verify_q: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The acceptance suite.
    Check {
        /// `all` or a list of criterion numbers.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Greedy,
    Iwahori,
}

#[derive(Args)]
struct Source {
    /// JSON file: `{"word", "n", "base"}` or `{"nu", "vertices"}`.
    #[arg(long, conflicts_with_all = ["n", "weyl"])]
    polytope: Option<PathBuf>,
    #[arg(long, default_value = "121")]
    word: ReducedWord,
    #[arg(long, value_parser = parse_n)]
    n: Option<[u32; 3]>,
    #[arg(long, value_parser = parse_coweight, default_value = "0,0,0", allow_hyphen_values = true)]
    base: Coweight,
    /// The Weyl polytope of a coweight.
    #[arg(long, value_parser = parse_coweight, allow_hyphen_values = true, conflicts_with = "n")]
    weyl: Option<Coweight>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolytopeFile {
    Mv(PolytopeJson),
    Family(FamilyJson),
}

enum Failure {
    Domain(mvgrass::Error),
    Input(String),
    Check(String),
}

impl From<mvgrass::Error> for Failure {
    fn from(e: mvgrass::Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<Value, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<[T; 3], String> {
    let v: Vec<T> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| format!("bad entry {x:?}"))
        })
        .collect::<Result<_, _>>()?;
    v.try_into()
        .map_err(|_| format!("expected three comma-separated values, got {s:?}"))
}

fn parse_n(s: &str) -> Result<[u32; 3], String> {
    parse_list(s)
}

fn parse_coweight(s: &str) -> Result<Coweight, String> {
    parse_list(s)
}

fn parse_word(s: &str) -> Result<CrystalWord, String> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(CrystalWord::empty());
    }
    s.parse().map_err(|e: mvgrass::Error| e.to_string())
}

fn parse_truncation(s: &str) -> Result<CrystalWord, String> {
    parse_word(s.strip_prefix("j=").unwrap_or(s))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

impl Source {
    fn load(&self) -> Result<(GTFamily, Option<MVPolytope>), Failure> {
        if let Some(path) = &self.polytope {
            return match read_json::<PolytopeFile>(path)? {
                PolytopeFile::Mv(p) => {
                    let p = p.into_polytope();
                    Ok((p.family().clone(), Some(p)))
                }
                PolytopeFile::Family(f) => {
                    let f = f.into_family()?;
                    let p = MVPolytope::from_family(&f).ok();
                    Ok((f, p))
                }
            };
        }
        if let Some(l) = self.weyl {
            let f = GTFamily::weyl_polytope(l);
            let p = MVPolytope::from_family(&f).ok();
            return Ok((f, p));
        }
        let n = self
            .n
            .ok_or_else(|| Failure::Input("give --polytope, --n or --weyl".into()))?;
        let p = MVPolytope::new(LusztigDatum::new(self.word, n), self.base);
        Ok((p.family().clone(), Some(p)))
    }

    fn mv(&self) -> Result<MVPolytope, Failure> {
        self.load()?.1.ok_or(Failure::Domain(mvgrass::Error::NotMV))
    }
}

fn describe(p: &MVPolytope) -> Value {
    let neighbour = |q: Option<MVPolytope>| q.map(|q| q.datum(ReducedWord::W121).n);
    json!({
        "n121": p.datum(ReducedWord::W121).n,
        "n212": p.datum(ReducedWord::W212).n,
        "base": p.base(),
        "top": p.top(),
        "dimension": p.dimension(),
        "coweight": p.coweight(),
        "normal": p.datum(ReducedWord::W121).is_normal(),
        "family": p.family(),
        "crystal": {
            "E1": neighbour(p.crystal_e(1)),
            "E2": neighbour(p.crystal_e(2)),
            "F1": neighbour(Some(p.crystal_f(1))),
            "F2": neighbour(Some(p.crystal_f(2))),
        },
    })
}

fn cmd_polytope(src: &Source, apply: &[String]) -> Out {
    let mut p = src.mv()?;
    for op in apply.iter().rev() {
        let op = op.trim();
        let (kind, i) = op.split_at(op.len().min(1));
        let i: usize = match i {
            "1" => 1,
            "2" => 2,
            _ => return Err(Failure::Input(format!("bad crystal operator {op:?}"))),
        };
        p = match kind {
            "E" | "e" => match p.crystal_e(i) {
                Some(q) => q,
                None => return Ok(json!({ "zero": true, "applied": apply })),
            },
            "F" | "f" => p.crystal_f(i),
            _ => return Err(Failure::Input(format!("bad crystal operator {op:?}"))),
        };
    }
    Ok(describe(&p))
}

fn cmd_braid(word: ReducedWord, n: [u32; 3]) -> Out {
    let d = LusztigDatum::new(word, n);
    let b = d.braid();
    Ok(json!({ "from": d, "to": b, "dimension": d.dimension(), "coweight": d.coweight() }))
}

fn cmd_crystal(src: &Source, j: &CrystalWord) -> Out {
    let p = src.mv()?;
    let image = p.apply_crystal_word(j);
    Ok(json!({
        "j": j.to_string(),
        "zero": image.is_none(),
        "result": image.as_ref().map(describe),
    }))
}

fn cmd_points(cli: &Cli, src: &Source, count: bool) -> Out {
    let (f, _) = src.load()?;
    check_precision(&f, cli.prec)?;
    let pts = enumerate_points(&f, PrimeField::new(cli.prime)?, cli.budget)?;
    if count {
        Ok(json!({ "prime": cli.prime, "count": pts.len() }))
    } else {
        Ok(json!({ "prime": cli.prime, "count": pts.len(), "points": pts }))
    }
}

fn cmd_graph(cli: &Cli, src: &Source, dot: Option<&Path>) -> Out {
    let (f, _) = src.load()?;
    check_precision(&f, cli.prec)?;
    let g = skeleton(&f)?;
    if let Some(path) = dot {
        write_file(path, &g.to_dot())?;
    }
    serde_json::to_value(&g).map_err(input)
}

fn cmd_betti(cli: &Cli, src: &Source) -> Out {
    let (f, _) = src.load()?;
    check_precision(&f, cli.prec)?;
    let g = skeleton(&f)?;
    let (poly, order) = min_formal_poincare(&g, DEFAULT_GRAPH_BUDGET)?;
    Ok(json!({ "betti": poly.0, "poincare": poly.to_string(), "order": order }))
}

fn plan_report(plan: &PavingPlan) -> Value {
    json!({
        "verified": plan.is_verified(),
        "poincare": plan.poincare().to_string(),
        "dims": plan.dims(),
        "plan": plan,
    })
}

fn finish(report: Value, out: Option<&Path>) -> Out {
    if let Some(path) = out {
        write_file(path, &serde_json::to_string_pretty(&report).map_err(input)?)?;
    }
    Ok(report)
}

fn cmd_pave(cli: &Cli, src: &Source, method: Method, qs: &[u32], out: Option<&Path>) -> Out {
    let (f, p) = src.load()?;
    check_precision(&f, cli.prec)?;
    let plan = match method {
        Method::Greedy => greedy_paving(&f, qs, cli.budget)?,
        Method::Iwahori => {
            let p = p.ok_or(Failure::Domain(mvgrass::Error::NotMV))?;
            paving_121(&p.datum(ReducedWord::W121), qs, cli.budget)?
        }
    };
    finish(plan_report(&plan), out)
}

fn cmd_springer(
    cli: &Cli,
    path: &Path,
    truncate: Option<&CrystalWord>,
    qs: &[u32],
    out: Option<&Path>,
) -> Out {
    let spec: GammaJson = read_json(path)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let qs: Vec<u32> = match spec.prime {
        Some(p) => vec![p],
        None => qs.to_vec(),
    };
    let gammas = qs
        .iter()
        .map(|&q| spec.clone().into_gamma(q, &mut rng))
        .collect::<mvgrass::Result<Vec<RegularDiagonal>>>()?;
    if gammas.windows(2).any(|w| w[0].pattern() != w[1].pattern()) {
        return Err(Failure::Domain(mvgrass::Error::PatternMismatch(
            "the series reduce to different valuation patterns at different primes".into(),
        )));
    }
    let g0 = &gammas[0];
    let fd = fundamental_domain(g0).ok();
    if let Some(fd) = &fd {
        check_precision(&fd.polytope, cli.prec)?;
    }
    let mut report = json!({
        "pattern": g0.pattern(),
        "dimension": springer_dim(g0),
        "fundamental_domain": fd.as_ref().map(|fd| &fd.polytope),
    });
    match truncate {
        Some(j) => {
            let plan = truncated_paving(&gammas, j, cli.budget)?;
            report["j"] = json!(j.to_string());
            report["paving"] = plan_report(&plan);
            report["verified"] = json!(plan.is_verified());
        }
        None if fd.is_some() => {
            let counts = gammas
                .iter()
                .map(|g| {
                    let n = fundamental_domain(g)?.points(cli.budget)?.len();
                    Ok(json!({ "q": g.field().p(), "points": n }))
                })
                .collect::<mvgrass::Result<Vec<Value>>>()?;
            report["counts"] = json!(counts);
        }
        None => {}
    }
    finish(report, out)
}

fn cmd_check(cli: &Cli, suite: &str) -> Out {
    let ids: Vec<u8> = if suite == "all" {
        check::CRITERIA.to_vec()
    } else {
        suite
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u8>()
                    .map_err(|_| Failure::Input(format!("bad criterion {s:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    let mut reports = Vec::new();
    for id in ids {
        reports.push(check::run(id, cli.seed)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    let report = json!({ "seed": cli.seed, "passed": passed, "criteria": reports });
    if passed {
        Ok(report)
    } else {
        Err(Failure::Check(
            serde_json::to_string_pretty(&report).map_err(input)?,
        ))
    }
}

fn run(cli: &Cli) -> Out {
    if cli.prec < 16 {
        return Err(Failure::Input(format!(
            "precision must be at least 16, got {}",
            cli.prec
        )));
    }
    PrimeField::new(cli.prime)?;
    match &cli.cmd {
        Cmd::Polytope { src, apply } => cmd_polytope(src, apply),
        Cmd::Braid { word, n } => cmd_braid(*word, *n),
        Cmd::Crystal { src, j } => cmd_crystal(src, j),
        Cmd::Points { src, count } => cmd_points(cli, src, *count),
        Cmd::Graph { src, dot } => cmd_graph(cli, src, dot.as_deref()),
        Cmd::Betti { src } => cmd_betti(cli, src),
        Cmd::Pave {
            src,
            method,
            verify_q,
            out,
        } => cmd_pave(cli, src, *method, verify_q, out.as_deref()),
        Cmd::Springer {
            gamma,
            truncate,
            verify_q,
            out,
        } => cmd_springer(cli, gamma, truncate.as_ref(), verify_q, out.as_deref()),
        Cmd::Check { suite } => cmd_check(cli, suite),
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&serde_json::to_string_pretty(&v).expect("JSON values serialize"));
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Check(report)) => {
            emit(&report);
            ExitCode::from(1)
        }
    }
}
