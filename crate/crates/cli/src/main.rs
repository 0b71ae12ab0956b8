use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use finseg::alphabet::Alphabet;
use finseg::blocks::{block_decomposition, blocks_dot, graph_of};
use finseg::envelope::{
    build_envelope_capped, d_v, to_transition_system, transition_dot, DEFAULT_MAX_POINTS,
};
use finseg::error::{Error, ErrorKind, Result};
use finseg::factor::is_irreducible;
use finseg::gen::Limits;
use finseg::json::{
    block_path_to_json, envelope_to_json, factorization_to_json, upset_from_json, upset_to_json,
};
use finseg::macneille::{closed_union, closure, is_closed};
use finseg::selfcheck::{self, builtin_suites, Context};
use finseg::strategy::builtin_factorizers;
use finseg::upset::{Side, UpSet};
use finseg::word::{higman_leq, Word};

#[derive(Parser)]
#[command(
    name = "finseg",
    version,
    about = "Final segments of the subword order: factorization, envelopes, closures"
)]
struct Cli {
    /// Alphabet description (JSON: letters, order pairs, involution pairs).
    #[arg(long, global = true, value_name = "FILE")]
    alphabet: Option<PathBuf>,

    #[command(flatten)]
    limits: LimitArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LimitArgs {
    /// Refuse operands with more generators than this.
    #[arg(long, global = true, default_value_t = 8)]
    max_gens: usize,
    /// Refuse operands with a longer generator than this.
    #[arg(long, global = true, default_value_t = 6)]
    max_len: usize,
    /// Refuse alphabets with more letters than this.
    #[arg(long, global = true, default_value_t = 4)]
    max_letters: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimal generators of a list of words.
    Min {
        set: String,
    },
    /// Whether a word lies in an up-set.
    Member {
        set: String,
        word: String,
    },
    /// Subword order on two words.
    Leq {
        u: String,
        v: String,
    },
    Concat {
        f: String,
        g: String,
    },
    /// Union of up-sets (the meet in reverse inclusion).
    Meet {
        f: String,
        g: String,
    },
    Intersect {
        f: String,
        g: String,
    },
    /// Quotient by a word.
    Quotient {
        set: String,
        word: String,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// Largest R with R·B ⊆ F (right) or B·R ⊆ F (left).
    Residual {
        set: String,
        by: String,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// Length of the shortest generator.
    Gamma {
        set: String,
    },
    Irreducible {
        set: String,
    },
    Factorize {
        set: String,
        #[arg(long, default_value = "antichain")]
        method: String,
    },
    /// Same as `factorize --method blocks`.
    FactorizeBlocks {
        set: String,
    },
    /// The envelope space of F.
    Envelope {
        set: String,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Transition graph in DOT instead of JSON.
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_points: usize,
    },
    /// Block path of the envelope graph.
    Blocks {
        set: String,
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_points: usize,
    },
    /// Distance between two up-sets.
    Distance {
        p: String,
        q: String,
    },
    Closure {
        set: String,
    },
    IsClosed {
        set: String,
    },
    /// Closure of the union of the operands.
    ClosedUnion {
        sets: Vec<String>,
    },
    /// Seeded property suites; exits 1 if any case fails.
    Selfcheck {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Run only these suites (repeatable).
        #[arg(long)]
        suite: Vec<String>,
        /// Envelope size above which random instances are redrawn.
        #[arg(long, default_value_t = 64)]
        max_points: usize,
    },
}

enum Output {
    Json(Value),
    Text(String),
}

/// Inline JSON, or a path to a file holding it.
fn operand_text(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| {
        Error::Parse(format!(
            "{arg:?} is neither inline JSON nor a readable file: {e}"
        ))
    })
}

struct Session {
    alphabet: Alphabet,
    limits: Limits,
}

impl Session {
    fn open(path: &Path, limits: Limits) -> Result<Session> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        let alphabet = Alphabet::from_json(&text)?;
        limits.check_alphabet(&alphabet)?;
        Ok(Session { alphabet, limits })
    }

    fn set(&self, arg: &str) -> Result<UpSet> {
        let v: Value = serde_json::from_str(&operand_text(arg)?)
            .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        let f = upset_from_json(&self.alphabet, &v)?;
        self.limits.check(&f)?;
        Ok(f)
    }

    /// Compact string form, or a JSON string or array of letter names.
    fn word(&self, arg: &str) -> Result<Word> {
        let w = if arg.starts_with('[') || arg.starts_with('"') {
            let v: Value = serde_json::from_str(arg)
                .map_err(|e| Error::Parse(format!("invalid JSON word: {e}")))?;
            self.alphabet.word_from_json(&v)?
        } else {
            self.alphabet.parse_word(arg)?
        };
        if w.len() > self.limits.max_len {
            return Err(Error::Limit(format!(
                "word of length {}, limit is {}",
                w.len(),
                self.limits.max_len
            )));
        }
        Ok(w)
    }

    fn upset(&self, f: &UpSet) -> Output {
        Output::Json(upset_to_json(&self.alphabet, f))
    }
}

fn run(cli: Cli) -> Result<(Output, bool)> {
    let limits = Limits {
        max_gens: cli.limits.max_gens,
        max_len: cli.limits.max_len,
        max_letters: cli.limits.max_letters,
    };
    if let Command::Selfcheck {
        seed,
        cases,
        suite,
        max_points,
    } = &cli.command
    {
        return selfcheck(limits, *seed, *cases, suite, *max_points);
    }
    let path = cli
        .alphabet
        .as_deref()
        .ok_or_else(|| Error::Parse("--alphabet is required".into()))?;
    let s = Session::open(path, limits)?;
    let al = &s.alphabet;
    let out = match &cli.command {
        Command::Min { set } => s.upset(&s.set(set)?),
        Command::Member { set, word } => {
            Output::Json(json!({ "member": s.set(set)?.member(al, &s.word(word)?) }))
        }
        Command::Leq { u, v } => {
            Output::Json(json!({ "leq": higman_leq(al, &s.word(u)?, &s.word(v)?) }))
        }
        Command::Concat { f, g } => s.upset(&s.set(f)?.concat(al, &s.set(g)?)),
        Command::Meet { f, g } => s.upset(&s.set(f)?.union_meet(al, &s.set(g)?)),
        Command::Intersect { f, g } => s.upset(&s.set(f)?.intersect(al, &s.set(g)?)),
        Command::Quotient { set, word, side } => {
            s.upset(&s.set(set)?.quotient(al, &s.word(word)?, (*side).into()))
        }
        Command::Residual { set, by, side } => {
            s.upset(&s.set(set)?.residual(al, &s.set(by)?, (*side).into()))
        }
        Command::Gamma { set } => Output::Json(json!({ "gamma": s.set(set)?.graduation()? })),
        Command::Irreducible { set } => {
            Output::Json(json!({ "irreducible": is_irreducible(al, &s.set(set)?) }))
        }
        Command::Factorize { set, method } => factorize(&s, set, method)?,
        Command::FactorizeBlocks { set } => factorize(&s, set, "blocks")?,
        Command::Envelope {
            set,
            dot,
            max_points,
            ..
        } => {
            let env = build_envelope_capped(al, &s.set(set)?, *max_points)?;
            if *dot {
                Output::Text(transition_dot(al, &env, &to_transition_system(al, &env)))
            } else {
                Output::Json(envelope_to_json(al, &env))
            }
        }
        Command::Blocks {
            set,
            dot,
            max_points,
        } => {
            let env = build_envelope_capped(al, &s.set(set)?, *max_points)?;
            let g = graph_of(&to_transition_system(al, &env));
            let path = block_decomposition(&g, env.x, env.y)?;
            if *dot {
                Output::Text(blocks_dot(al, &env, &g, &path))
            } else {
                Output::Json(block_path_to_json(&path))
            }
        }
        Command::Distance { p, q } => s.upset(&d_v(al, &s.set(p)?, &s.set(q)?)),
        Command::Closure { set } => s.upset(&closure(al, &s.set(set)?)),
        Command::IsClosed { set } => Output::Json(json!({ "closed": is_closed(al, &s.set(set)?) })),
        Command::ClosedUnion { sets } => {
            let fs = sets.iter().map(|x| s.set(x)).collect::<Result<Vec<_>>>()?;
            s.upset(&closed_union(al, &fs))
        }
        Command::Selfcheck { .. } => unreachable!("handled above"),
    };
    Ok((out, true))
}

fn factorize(s: &Session, set: &str, method: &str) -> Result<Output> {
    let methods = builtin_factorizers();
    let m = methods.require(method)?;
    let f = s.set(set)?;
    Ok(Output::Json(factorization_to_json(
        &s.alphabet,
        &m.factorize(&s.alphabet, &f)?,
    )))
}

fn selfcheck(
    limits: Limits,
    seed: u64,
    cases: usize,
    only: &[String],
    max_points: usize,
) -> Result<(Output, bool)> {
    let mut suites = builtin_suites();
    for name in only {
        suites.require(name)?;
    }
    if !only.is_empty() {
        suites.retain(|n| only.iter().any(|o| o == n));
    }
    let ctx = Context {
        factorizers: builtin_factorizers(),
        limits,
        max_points,
    };
    let report = selfcheck::run(&ctx, &suites, seed, cases);
    let ok = report.ok;
    let v = serde_json::to_value(&report).map_err(|e| Error::Invariant(e.to_string()))?;
    Ok((Output::Json(v), ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            match out {
                Output::Json(v) => println!("{v}"),
                Output::Text(t) => print!("{t}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Domain => 1,
                ErrorKind::Usage => 2,
                ErrorKind::Internal => 3,
            })
        }
    }
}
