//! `nilorbit` command-line front end.
//!
//! Every command prints a JSON envelope `{schema_version, command, result}`
//! by default; `--format text` gives a short human-readable rendering and
//! `--format dot` is available for the graph-valued commands.
//!
//! Exit status: 0 ok, 2 usage or invalid input, 3 budget exceeded,
//! 4 invariant violation.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use nilorbit_cli::{
    CentralizerPayload, ChamberPayload, ConeQuery, DimPayload, PosetPayload, SCHEMA_VERSION,
};

use nilorbit::cones::{
    chamber_of, flop_path, movable_cone, nef_cone, CharacterVector, RationalCone, Q,
};
use nilorbit::induction::{terminalize, FlagType};
use nilorbit::levi::{levi_count, wprime, BlockOrdering, LeviDatum};
use nilorbit::markings::{equivalence_class, MarkedDiagram};
use nilorbit::oracle::{centralizer_dim, degree_estimate, DEFAULT_PRIMES};
use nilorbit::orbits::{
    enumerate_orbits, hasse_dot, hasse_edges, jm_grading_dims, orbit_dimension, weighted_dynkin,
    OrbitLabel,
};
use nilorbit::rootsys::{Family, LieTypeClassical};
use nilorbit::Error;

const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "nilorbit", version, about = "Nilpotent orbits, terminalizations and their chamber combinatorics")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for commands that sample random points.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit tables and the closure order.
    #[command(subcommand)]
    Orbits(OrbitsCmd),
    /// Invariants of a single orbit, given as `<type> <partition>[:I|:II]`.
    #[command(subcommand)]
    Orbit(OrbitCmd),
    /// Reduction chain down to a terminal orbit.
    Terminalize { ty: String, partition: String },
    /// Twists of marked Dynkin diagrams.
    #[command(subcommand)]
    Twists(TwistsCmd),
    /// Normalizer quotients of standard Levis.
    #[command(subcommand)]
    Levi(LeviCmd),
    /// Nef, movable and chamber structure for a type-A Levi given by block sizes.
    #[command(subcommand)]
    Cones(ConesCmd),
    /// Mukai flop paths between block orderings.
    #[command(subcommand)]
    Flops(FlopsCmd),
    /// Brute-force checks over finite fields and Q.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand, Debug)]
enum OrbitsCmd {
    List { ty: String },
    Poset {
        ty: String,
        /// Same as `--format dot`.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand, Debug)]
enum OrbitCmd {
    Dim { ty: String, partition: String },
    Wdd { ty: String, partition: String },
    Grading { ty: String, partition: String },
}

#[derive(Subcommand, Debug)]
enum TwistsCmd {
    Class { ty: String, marks: String },
}

#[derive(Subcommand, Debug)]
enum LeviCmd {
    Wprime {
        ty: String,
        blocks: String,
        residual: Option<usize>,
    },
    Count { ty: String, blocks: String },
}

#[derive(Subcommand, Debug)]
enum ConesCmd {
    Nef {
        blocks: String,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    Movable {
        blocks: String,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Chambers containing a point; a seeded random point if none is given.
    Chamber {
        blocks: String,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum FlopsCmd {
    /// Orderings are comma-separated block labels 1..t.
    Path { blocks: String, a: String, b: String },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    Degree {
        ty: String,
        partition: String,
        flag: String,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
    Centralizer { ty: String, partition: String },
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    result: serde_json::Value,
}

struct Output {
    command: &'static str,
    json: serde_json::Value,
    text: String,
    dot: Option<String>,
}

impl Output {
    fn new<T: Serialize>(command: &'static str, value: &T, text: String) -> Self {
        Self {
            command,
            json: serde_json::to_value(value).expect("payloads serialize"),
            text,
            dot: None,
        }
    }

    fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

fn lie_type(s: &str) -> Result<LieTypeClassical, Error> {
    s.parse()
}

fn orbit(ty: &str, partition: &str) -> Result<OrbitLabel, Error> {
    OrbitLabel::parse(lie_type(ty)?, partition)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad {what} `{t}`"))))
        .collect()
}

fn type_a_levi(blocks: &str) -> Result<LeviDatum, Error> {
    let sizes: Vec<usize> = parse_list(blocks, "block size")?;
    let n: usize = sizes.iter().sum();
    let ty = LieTypeClassical::new(Family::A, n.saturating_sub(1))?;
    LeviDatum::new(ty, sizes, 0)
}

fn point(s: &str, dim: usize) -> Result<CharacterVector, Error> {
    let coords: Vec<Q> = parse_list(s, "rational")?;
    if coords.len() != dim {
        return Err(Error::SizeMismatch {
            expected: dim,
            found: coords.len(),
        });
    }
    Ok(CharacterVector::new(coords))
}

fn ordering(levi: &LeviDatum, s: &str) -> Result<BlockOrdering, Error> {
    let ids: Vec<usize> = parse_list(s, "block label")?;
    let t = levi.block_count();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    if sorted != (1..=t).collect::<Vec<_>>() {
        return Err(Error::InvalidInput(format!(
            "`{s}` is not an arrangement of the labels 1..{t}"
        )));
    }
    Ok(BlockOrdering {
        blocks: ids.into_iter().map(|id| (id, levi.blocks[id - 1])).collect(),
    })
}

fn cone_text(c: &RationalCone) -> String {
    if c.inequalities.is_empty() {
        return "whole space".into();
    }
    c.inequalities
        .iter()
        .map(|h| {
            let pos = h.coeffs.iter().position(|&x| x == 1).map_or(0, |i| i + 1);
            let neg = h.coeffs.iter().position(|&x| x == -1).map_or(0, |i| i + 1);
            format!("x{pos} >= x{neg}")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn membership_text<C>(walls: String, q: &ConeQuery<C>) -> String {
    match (&q.point, q.contains, q.interior) {
        (Some(x), Some(c), Some(i)) => format!("{walls}\npoint {x}: contains {c}, interior {i}"),
        _ => walls,
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Orbits(OrbitsCmd::List { ty }) => {
            let ty = lie_type(ty)?;
            let orbits = enumerate_orbits(ty);
            let text = orbits
                .iter()
                .map(|o| format!("{o}\tdim {}", orbit_dimension(o)))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new("orbits list", &orbits, text))
        }
        Command::Orbits(OrbitsCmd::Poset { ty, .. }) => {
            let ty = lie_type(ty)?;
            let orbits = enumerate_orbits(ty);
            let edges = hasse_edges(&orbits)?;
            let text = edges
                .iter()
                .map(|&(a, b)| format!("{} < {}", orbits[a], orbits[b]))
                .collect::<Vec<_>>()
                .join("\n");
            let payload = PosetPayload { orbits, edges };
            Ok(Output::new("orbits poset", &payload, text).with_dot(hasse_dot(ty)?))
        }
        Command::Orbit(cmd) => match cmd {
            OrbitCmd::Dim { ty, partition } => {
                let o = orbit(ty, partition)?;
                let payload = DimPayload {
                    dimension: orbit_dimension(&o),
                    orbit: o,
                };
                let text = payload.dimension.to_string();
                Ok(Output::new("orbit dim", &payload, text))
            }
            OrbitCmd::Wdd { ty, partition } => {
                let w = weighted_dynkin(&orbit(ty, partition)?);
                let text = w.labels.iter().map(u8::to_string).collect::<Vec<_>>().join(" ");
                Ok(Output::new("orbit wdd", &w, text))
            }
            OrbitCmd::Grading { ty, partition } => {
                let g = jm_grading_dims(&orbit(ty, partition)?);
                let text = g
                    .dims
                    .iter()
                    .map(|(k, v)| format!("g({k}) = {v}"))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(Output::new("orbit grading", &g, text))
            }
        },
        Command::Terminalize { ty, partition } => {
            let t = terminalize(&orbit(ty, partition)?)?;
            let mut lines: Vec<String> = t
                .steps
                .iter()
                .map(|s| format!("step p={} r={} -> {}", s.p, s.r, s.reduced))
                .collect();
            lines.push(format!("levi blocks {:?}", t.levi_blocks));
            if let Some(f) = &t.richardson_flag {
                lines.push(format!("richardson flag {f}"));
            }
            if let Some(o) = &t.terminal_orbit {
                lines.push(format!("terminal orbit {} in {}", o.partition, o.algebra));
            }
            if let Some(s) = &t.special_case {
                lines.push(format!("twin resolutions {:?} of flag type {}", s.parabolics, s.flag_type));
            }
            Ok(Output::new("terminalize", &t, lines.join("\n")))
        }
        Command::Twists(TwistsCmd::Class { ty, marks }) => {
            let d = MarkedDiagram::parse(ty, marks)?;
            let c = equivalence_class(&d)?;
            let text = format!(
                "{} diagrams, {} reachable by first-kind twists",
                c.len(),
                c.first_kind.len()
            );
            let dot = c.to_dot();
            Ok(Output::new("twists class", &c, text).with_dot(dot))
        }
        Command::Levi(LeviCmd::Wprime { ty, blocks, residual }) => {
            let ty = lie_type(ty)?;
            let levi = match residual {
                Some(r) => LeviDatum::new(ty, parse_list(blocks, "block size")?, *r)?,
                None => LeviDatum::parse(ty, blocks)?,
            };
            let w = wprime(&levi)?;
            let text = format!(
                "|W'| = {} (|N| = {}, |W(L)| = {}) for {levi}",
                w.order, w.normalizer_order, w.levi_weyl_order
            );
            Ok(Output::new("levi wprime", &w, text))
        }
        Command::Levi(LeviCmd::Count { ty, blocks }) => {
            let levi = LeviDatum::parse(lie_type(ty)?, blocks)?;
            let c = levi_count(&levi)?;
            if let Some(s) = c.s {
                if c.n * c.wprime != s {
                    return Err(Error::InvariantViolation(format!(
                        "N·|W'| = {}·{} differs from |S| = {s}",
                        c.n, c.wprime
                    )));
                }
            }
            let s = c.s.map_or("n/a".into(), |s| s.to_string());
            let text = format!("N = {}, |W'| = {}, |S| = {s}", c.n, c.wprime);
            Ok(Output::new("levi count", &c, text))
        }
        Command::Cones(cmd) => cones(cmd, cli.seed),
        Command::Flops(FlopsCmd::Path { blocks, a, b }) => {
            let levi = type_a_levi(blocks)?;
            let (a, b) = (ordering(&levi, a)?, ordering(&levi, b)?);
            let path = flop_path(&a, &b)?;
            let text = path
                .iter()
                .map(|s| {
                    format!(
                        "twist at {}: {} ({} marked at {})",
                        s.vertex, s.result, s.primitive.diagram, s.primitive.mark
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new("flops path", &path, text))
        }
        Command::Oracle(OracleCmd::Degree { ty, partition, flag, primes }) => {
            let ty = lie_type(ty)?;
            let d = partition.parse()?;
            let flag = FlagType::for_family(ty.family(), parse_list(flag, "flag part")?)?;
            let primes = primes.clone().unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
            let r = degree_estimate(ty, &flag, &d, &primes)?;
            let counts = r
                .counts
                .iter()
                .map(|c| format!("p={}: {}", c.p, c.count))
                .collect::<Vec<_>>()
                .join(", ");
            let degree = r.degree.map_or("unstable".into(), |d| d.to_string());
            let text = format!("degree {degree} ({counts})");
            Ok(Output::new("oracle degree", &r, text))
        }
        Command::Oracle(OracleCmd::Centralizer { ty, partition }) => {
            let o = orbit(ty, partition)?;
            let z = centralizer_dim(o.lie_type(), o.partition())?;
            let payload = CentralizerPayload {
                centralizer_dim: z,
                algebra_dim: o.lie_type().dimension(),
                orbit_dim: orbit_dimension(&o),
                orbit: o,
            };
            if payload.centralizer_dim + payload.orbit_dim != payload.algebra_dim {
                return Err(Error::InvariantViolation(format!(
                    "dim g^x + dim O = {} + {} differs from dim g = {}",
                    payload.centralizer_dim, payload.orbit_dim, payload.algebra_dim
                )));
            }
            let text = format!("dim g^x = {z}");
            Ok(Output::new("oracle centralizer", &payload, text))
        }
    }
}

fn cones(cmd: &ConesCmd, seed: u64) -> Result<Output, Error> {
    match cmd {
        ConesCmd::Nef { blocks, point: p } => {
            let levi = type_a_levi(blocks)?;
            let cone = nef_cone(&BlockOrdering::base(&levi));
            let x = p.as_deref().map(|s| point(s, levi.block_count())).transpose()?;
            let q = ConeQuery {
                contains: x.as_ref().map(|x| cone.contains(x)),
                interior: x.as_ref().map(|x| cone.contains_interior(x)),
                point: x,
                cone,
            };
            let text = membership_text(cone_text(&q.cone), &q);
            Ok(Output::new("cones nef", &q, text))
        }
        ConesCmd::Movable { blocks, point: p } => {
            let levi = type_a_levi(blocks)?;
            let m = movable_cone(&BlockOrdering::base(&levi));
            let x = p.as_deref().map(|s| point(s, levi.block_count())).transpose()?;
            let q = ConeQuery {
                contains: x.as_ref().map(|x| m.contains(x)),
                interior: x.as_ref().map(|x| m.contains_interior(x)),
                point: x,
                cone: m,
            };
            let text = membership_text(cone_text(&q.cone.cone), &q);
            Ok(Output::new("cones movable", &q, text))
        }
        ConesCmd::Chamber { blocks, point: p } => {
            let levi = type_a_levi(blocks)?;
            let t = levi.block_count();
            let (x, sampled) = match p {
                Some(s) => (point(s, t)?, false),
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let v: Vec<i64> = (0..t).map(|_| rng.gen_range(-10..=10)).collect();
                    (CharacterVector::from_ints(&v), true)
                }
            };
            let report = chamber_of(&x, &levi)?;
            let text = report
                .chambers
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n");
            let payload = ChamberPayload {
                point: x,
                sampled,
                report,
            };
            Ok(Output::new("cones chamber", &payload, text))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::InvariantViolation(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match &cli.command {
        Command::Orbits(OrbitsCmd::Poset { dot: true, .. }) => Format::Dot,
        _ => cli.format,
    };
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let body = match format {
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command: out.command,
                result: out.json,
            };
            serde_json::to_string_pretty(&env).expect("json") + "\n"
        }
        Format::Text => out.text + "\n",
        Format::Dot => match out.dot {
            Some(dot) => dot,
            None => {
                eprintln!("error: `{}` has no DOT output", out.command);
                return ExitCode::from(2);
            }
        },
    };
    // a closed pipe downstream is not an error of ours
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    ExitCode::SUCCESS
}
