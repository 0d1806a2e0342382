//! The `wallkit` command line. Each `cmd_*` returns an [`Outcome`] so the
//! binary only prints and exits.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::complex::{
    build_cayley_ball_with, build_example1, build_example2, BallOptions, CellPieceReport, Complex,
    DEFAULT_VERTEX_BUDGET,
};
use crate::dehn::{DehnMachine, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::presentation::{
    check_small_cancellation, gen_example, parse_presentation, parse_word, render_compact, Family, Presentation,
    RipsQuotient,
};
use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::separation::{verify_linear_separation, SeparationMode, SeparationOptions};
use crate::walls::{build_walls_with, SettledPolicy};
use crate::words::{Letter, Word};

pub const BUDGET_ENV: &str = "WALLKIT_BUDGET";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "wallkit", version, about = "Small cancellation, walls and linear separation on finite complexes")]
pub struct Cli {
    /// Worker threads for pair sweeps (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check C'(λ) for a presentation file.
    Check {
        file: PathBuf,
        #[arg(long, default_value = "1/6")]
        lambda: String,
        #[arg(long)]
        json: bool,
    },
    /// Sweep d_W against d on a Cayley ball or a built-in complex.
    Separation {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 8)]
        radius: usize,
        #[arg(long, default_value = "1/6")]
        lambda: String,
        /// Record the table without a verdict.
        #[arg(long)]
        observe: bool,
        #[command(flatten)]
        walls: WallArgs,
        /// Directory for separation.csv, summary.json and walls.dot.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a DOT trace of every settled wall.
        #[arg(long)]
        dot: bool,
    },
    /// Reduce a word with Dehn's algorithm.
    Word {
        #[command(flatten)]
        source: Source,
        word: String,
    },
    /// Print the wall system of a complex.
    WallsDump {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[command(flatten)]
        walls: WallArgs,
        /// Print the hypergraph of the wall with this id as DOT.
        #[arg(long)]
        hypergraph: Option<usize>,
        /// Print the 1-skeleton with the wall of this id highlighted as DOT.
        #[arg(long)]
        trace: Option<usize>,
    },
    /// List built-in examples, or write their presentation files.
    Examples {
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Default, Clone)]
pub struct Source {
    /// Presentation file.
    #[arg(long, conflicts_with_all = ["family", "example", "complex"])]
    pub file: Option<PathBuf>,
    /// Complex file in the `complex 1` text format.
    #[arg(long, conflicts_with_all = ["family", "example"])]
    pub complex: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    #[arg(long, value_enum, conflicts_with = "family")]
    pub example: Option<ExampleName>,
    /// Relator indices for `tv`.
    #[arg(long = "I", value_delimiter = ',', default_value = "1,2")]
    pub indices: Vec<usize>,
    /// Exponent for `tv`.
    #[arg(long, default_value_t = 7)]
    pub k: usize,
    /// Largest relator index for `pride`.
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    /// Relators used from the sequence for `rips`.
    #[arg(long, default_value_t = 1)]
    pub j_max: usize,
    #[arg(long, default_value_t = 80)]
    pub scale: usize,
    /// Block sizes for `example1`.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub n: Vec<usize>,
    /// Shared segment length for `example2`.
    #[arg(long, default_value_t = 2)]
    pub x: usize,
    /// Half the cell length for `example2`.
    #[arg(long, default_value_t = 14)]
    pub half_r: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    Tv,
    Pride,
    Rips,
    /// The free group on a, b.
    None,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleName {
    Example1,
    Example2,
}

#[derive(Args, Debug, Clone, Default)]
pub struct WallArgs {
    /// `closure`, `all` or `margin:<depth>`.
    #[arg(long, default_value = "closure")]
    pub policy: String,
    /// Longest relator traced when deciding which edges are open (default 2R).
    #[arg(long)]
    pub horizon: Option<usize>,
}

/// Plumbing shared by every command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub lambda: Rational,
    pub radius: usize,
    pub vertex_budget: usize,
    pub node_budget: usize,
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    /// Validates λ and R and applies the budget override.
    pub fn new(lambda: &str, radius: usize, budget_env: Option<&str>) -> Result<Self> {
        let lambda = parse_rational(lambda)?;
        if lambda <= Rational::from_integer(0) || lambda >= Rational::from_integer(1) {
            return Err(Error::BadParams(format!("λ must lie in (0, 1), got {}", fmt_rational(&lambda))));
        }
        if radius == 0 {
            return Err(Error::BadParams("radius must be at least 1".into()));
        }
        let (mut vertex_budget, mut node_budget) = (DEFAULT_VERTEX_BUDGET, DEFAULT_NODE_BUDGET);
        if let Some(text) = budget_env {
            let b: usize = text
                .trim()
                .parse()
                .map_err(|_| Error::BadParams(format!("{BUDGET_ENV} is not a count: `{text}`")))?;
            if b == 0 {
                return Err(Error::BadParams(format!("{BUDGET_ENV} must be positive")));
            }
            vertex_budget = b;
            node_budget = b;
        }
        Ok(RunConfig {
            lambda,
            radius,
            vertex_budget,
            node_budget,
            out_dir: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    pub fn from_error(e: &Error) -> Self {
        Outcome {
            code: exit_code(e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::NotSmallCancellation | Error::OddCell { .. } | Error::UnsettledWall { .. } => EXIT_FAIL,
        Error::HypothesisViolated { .. } => EXIT_FAIL,
        Error::Parse { .. }
        | Error::UnknownGenerator { .. }
        | Error::EmptyRelator { .. }
        | Error::BadParams(_)
        | Error::InvalidComplex(_)
        | Error::Io(_) => EXIT_INPUT,
    }
}

/// Runs a parsed command line. `budget_env` is the value of
/// `WALLKIT_BUDGET`, if set.
pub fn run(cli: Cli, budget_env: Option<&str>) -> Outcome {
    let result = match cli.command {
        Command::Check { file, lambda, json } => {
            RunConfig::new(&lambda, 1, budget_env).and_then(|cfg| cmd_check(&file, &cfg, json))
        }
        Command::Separation {
            source,
            radius,
            lambda,
            observe,
            walls,
            out,
            dot,
        } => RunConfig::new(&lambda, radius, budget_env).and_then(|mut cfg| {
            cfg.out_dir = out;
            cmd_separation(&source, &cfg, &walls, observe, dot)
        }),
        Command::Word { source, word } => {
            RunConfig::new("1/6", 1, budget_env).and_then(|cfg| cmd_word(&source, &word, &cfg))
        }
        Command::WallsDump {
            source,
            radius,
            walls,
            hypergraph,
            trace,
        } => RunConfig::new("1/6", radius, budget_env)
            .and_then(|cfg| cmd_walls_dump(&source, &cfg, &walls, hypergraph, trace)),
        Command::Examples { write } => cmd_examples(write.as_deref()),
    };
    result.unwrap_or_else(|e| Outcome::from_error(&e))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), text)?;
    Ok(())
}

pub fn cmd_check(file: &Path, cfg: &RunConfig, json: bool) -> Result<Outcome> {
    let p = parse_presentation(&read(file)?)?;
    let report = check_small_cancellation(&p, cfg.lambda);
    let code = if report.pass { EXIT_PASS } else { EXIT_FAIL };
    if json {
        let rels: Vec<serde_json::Value> = report
            .relators
            .iter()
            .map(|r| {
                serde_json::json!({
                    "relator": p.render(&p.relators()[r.relator]),
                    "length": r.length,
                    "max_piece": r.max_piece,
                    "worst_piece": r.worst.as_ref().map(|w| p.render(&w.word)),
                    "pass": r.pass,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "lambda": fmt_rational(&report.lambda),
            "max_ratio": fmt_rational(&report.max_ratio),
            "pass": report.pass,
            "relators": rels,
        });
        return Ok(Outcome::new(code, format!("{doc:#}\n")));
    }
    let mut out = format!(
        "C'({}) {}: max piece ratio {}\n",
        fmt_rational(&report.lambda),
        if report.pass { "holds" } else { "fails" },
        fmt_rational(&report.max_ratio)
    );
    for r in &report.relators {
        let worst = r.worst.as_ref().map_or("-".to_string(), |w| p.render(&w.word));
        out.push_str(&format!(
            "  {} |r|={} max piece {} ({}) {}\n",
            p.render(&p.relators()[r.relator]),
            r.length,
            r.max_piece,
            worst,
            if r.pass { "ok" } else { "FAIL" }
        ));
    }
    Ok(Outcome::new(code, out))
}

/// The presentation named by `source`, if it names one.
pub fn source_presentation(source: &Source) -> Result<Option<Presentation>> {
    if let Some(f) = &source.file {
        return parse_presentation(&read(f)?).map(Some);
    }
    let family = match source.family {
        None => return Ok(None),
        Some(FamilyName::None) => return Ok(Some(Presentation::free(&["a", "b"]))),
        Some(FamilyName::Tv) => Family::ThomasVelickovic {
            indices: source.indices.clone(),
            k: source.k,
        },
        Some(FamilyName::Pride) => Family::Pride { n_max: source.n_max },
        Some(FamilyName::Rips) => Family::Rips {
            quotient: RipsQuotient {
                rank: 1,
                relators: vec![Word::from_letters(vec![Letter::gen(0); 3])],
            },
            j_max: source.j_max,
            scale: source.scale,
        },
    };
    Ok(Some(gen_example(&family)?.presentation))
}

fn source_complex(source: &Source, cfg: &RunConfig, walls: &WallArgs) -> Result<Complex> {
    if let Some(f) = &source.complex {
        return Complex::from_text(&read(f)?);
    }
    match source.example {
        Some(ExampleName::Example1) => return build_example1(&source.n),
        Some(ExampleName::Example2) => return build_example2(source.x, source.half_r),
        None => {}
    }
    let p = source_presentation(source)?
        .ok_or_else(|| Error::BadParams("give one of --file, --complex, --family or --example".into()))?;
    let m = DehnMachine::new(&p);
    let mut opts = BallOptions::new(cfg.radius);
    opts.vertex_budget = cfg.vertex_budget;
    opts.open_horizon = walls.horizon;
    build_cayley_ball_with(&p, &m, &opts)
}

fn parse_policy(text: &str) -> Result<SettledPolicy> {
    match text {
        "closure" => Ok(SettledPolicy::Closure),
        "all" => Ok(SettledPolicy::All),
        _ => text
            .strip_prefix("margin:")
            .and_then(|d| d.parse().ok())
            .map(|max_depth| SettledPolicy::Margin { max_depth })
            .ok_or_else(|| Error::BadParams(format!("unknown settled policy `{text}`"))),
    }
}

pub fn cmd_separation(
    source: &Source,
    cfg: &RunConfig,
    walls: &WallArgs,
    observe: bool,
    dot: bool,
) -> Result<Outcome> {
    let policy = parse_policy(&walls.policy)?;
    let c = source_complex(source, cfg, walls)?;
    let c = if c.has_odd_cell() { c.subdivide() } else { c };
    if !observe && c.radius().is_none() && !CellPieceReport::new(&c).satisfies(&c, cfg.lambda) {
        return Ok(Outcome {
            code: EXIT_FAIL,
            stdout: String::new(),
            stderr: format!(
                "complex is not C'({}); rerun with --observe to record the table\n",
                fmt_rational(&cfg.lambda)
            ),
        });
    }
    let ws = build_walls_with(&c, policy)?;
    let mut opts = SeparationOptions::new(cfg.lambda);
    if observe {
        opts.mode = SeparationMode::Observe;
    }
    let report = verify_linear_separation(&c, &ws, &opts);
    let json = report.to_json(&c);
    if let Some(dir) = &cfg.out_dir {
        write(dir, "separation.csv", &report.to_csv(&c))?;
        write(dir, "summary.json", &json)?;
        if dot {
            let mut text = String::new();
            for w in (0..ws.len()).filter(|&w| ws.is_settled(w)) {
                text.push_str(&ws.trace_dot(&c, w));
            }
            write(dir, "walls.dot", &text)?;
        }
    }
    let code = if observe || (report.pass && report.settled_pairs > 0) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    Ok(Outcome::new(code, json + "\n"))
}

pub fn cmd_word(source: &Source, word: &str, cfg: &RunConfig) -> Result<Outcome> {
    let p = source_presentation(source)?
        .ok_or_else(|| Error::BadParams("give --file or --family".into()))?;
    let w = parse_word(word, p.generators())?;
    let m = DehnMachine::new(&p);
    if !m.is_certified() {
        return Err(Error::NotSmallCancellation);
    }
    let reduced = m.dehn_reduce(&w)?;
    let form = m.shortlex_normal_form(&w, cfg.node_budget)?;
    let names = p.generators();
    let out = format!(
        "dehn: {}\nshortlex: {}\n{}\n",
        render_compact(&reduced, names),
        render_compact(&form, names),
        if reduced.is_empty() { "trivial" } else { "non-trivial" }
    );
    Ok(Outcome::new(EXIT_PASS, out))
}

pub fn cmd_walls_dump(
    source: &Source,
    cfg: &RunConfig,
    walls: &WallArgs,
    hypergraph: Option<usize>,
    trace: Option<usize>,
) -> Result<Outcome> {
    let c = source_complex(source, cfg, walls)?;
    let c = if c.has_odd_cell() { c.subdivide() } else { c };
    let ws = build_walls_with(&c, parse_policy(&walls.policy)?)?;
    let lookup = |id: usize| {
        (id < c.edge_count() && ws.wall(ws.wall_of(id)).id == id)
            .then(|| ws.wall_of(id))
            .ok_or_else(|| Error::BadParams(format!("no wall with id {id}")))
    };
    let mut out = String::new();
    match (hypergraph, trace) {
        (None, None) => out.push_str(&ws.dump()),
        (h, t) => {
            if let Some(id) = h {
                out.push_str(&ws.hypergraph_dot(lookup(id)?));
            }
            if let Some(id) = t {
                out.push_str(&ws.trace_dot(&c, lookup(id)?));
            }
        }
    }
    Ok(Outcome::new(EXIT_PASS, out))
}

/// Built-in inputs addressable by name, with the presentation text for the
/// ones that are presentations.
pub fn builtin_examples() -> Vec<(&'static str, &'static str, Option<String>)> {
    let tv = |indices: Vec<usize>, k| {
        gen_example(&Family::ThomasVelickovic { indices, k })
            .map(|g| g.presentation.to_string())
            .ok()
    };
    vec![
        ("tv_1_7.pres", "⟨a,b | (ab)^7⟩", tv(vec![1], 7)),
        ("tv_12_7.pres", "⟨a,b | (ab)^7, (a²b²)^7⟩", tv(vec![1, 2], 7)),
        ("tv_12_6.pres", "⟨a,b | (ab)^6, (a²b²)^6⟩, not C'(1/6)", tv(vec![1, 2], 6)),
        ("tv_123_7.pres", "⟨a,b | (ab)^7, (a²b²)^7, (a³b³)^7⟩", tv(vec![1, 2, 3], 7)),
        (
            "pride_4.pres",
            "a(ab)^n, n = 1..4",
            gen_example(&Family::Pride { n_max: 4 }).ok().map(|g| g.presentation.to_string()),
        ),
        ("example1", "theta graphs, B(6) without linear separation", None),
        ("example2", "two cells sharing a short segment", None),
    ]
}

pub fn cmd_examples(write_dir: Option<&Path>) -> Result<Outcome> {
    let mut out = String::new();
    for (name, about, text) in builtin_examples() {
        out.push_str(&format!("{name:<16} {about}\n"));
        if let (Some(dir), Some(text)) = (write_dir, text) {
            write(dir, name, &text)?;
        }
    }
    Ok(Outcome::new(EXIT_PASS, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(RunConfig::new("1/6", 8, None).is_ok());
        assert!(RunConfig::new("0", 8, None).is_err());
        assert!(RunConfig::new("1", 8, None).is_err());
        assert!(RunConfig::new("1/6", 0, None).is_err());
        assert_eq!(RunConfig::new("1/6", 8, Some("50")).unwrap().vertex_budget, 50);
        assert!(RunConfig::new("1/6", 8, Some("0")).is_err());
        assert!(RunConfig::new("1/6", 8, Some("x")).is_err());
    }

    #[test]
    fn policies_parse() {
        assert_eq!(parse_policy("closure").unwrap(), SettledPolicy::Closure);
        assert_eq!(parse_policy("margin:3").unwrap(), SettledPolicy::Margin { max_depth: 3 });
        assert!(parse_policy("margin:").is_err());
    }

    #[test]
    fn builtin_texts_round_trip() {
        for (_, _, text) in builtin_examples() {
            if let Some(text) = text {
                let p = parse_presentation(&text).unwrap();
                assert_eq!(p.to_string(), text);
            }
        }
    }
}
