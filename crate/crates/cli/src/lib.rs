//! Command-line front end: argument parsing, JSON documents and exit codes.
//!
//! Every command prints one JSON object `{"status", "payload"}` (plus
//! `"trace"` under `--trace`). Exit codes: 0 ok, 1 no, 2 usage or malformed
//! input, 3 computation error.

pub mod json;

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use quatring::algebra::MultiplicationTable;
use quatring::arith::Place;
use quatring::orders::{self, demo, OrderZ};
use quatring::quadform::{BlockKind, LocalRing};
use quatring::quaternion::{self, QuaternionAlgebraQ, TernaryForm};
use quatring::symbols;
use quatring::trace::Trace;
use quatring::{Rational, Valuation};

use json::{int_value, rational_value, vector_value, FormatError};

/// Environment variable read for the default seed.
pub const SEED_VAR: &str = "QUATRING_SEED";

#[derive(Parser, Debug)]
#[command(name = "quatring", version, about = "Exact quaternion algebras over Q")]
struct Cli {
    /// Record the algorithm steps taken.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recognize a rank-4 multiplication table as (a, b | Q).
    Recognize {
        /// Table JSON file, or - for stdin.
        table: String,
    },
    /// Normalize a quadratic form over Q or Z localized at a prime.
    Normalize {
        /// Form JSON file, or - for stdin.
        form: String,
        /// A prime, or Q.
        #[arg(short = 'p')]
        ring: String,
    },
    /// Hilbert symbols of (a, b).
    Hilbert {
        /// First structure constant, a nonzero rational
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
        /// Second structure constant, a nonzero rational
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: String,
        /// A prime, inf, or all.
        #[arg(short = 'v', default_value = "all")]
        place: String,
    },
    /// Jacobi symbol (A / B) for odd B.
    Jacobi {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Ramified places and discriminant of (a, b | Q).
    Ramified {
        /// First structure constant, a nonzero rational
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
        /// Second structure constant, a nonzero rational
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: String,
    },
    /// Explicit isomorphism (a, b | Q) to 2x2 matrices.
    Split {
        /// First structure constant, a nonzero rational
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
        /// Second structure constant, a nonzero rational
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: String,
        /// Height bound for the zero search.
        #[arg(short = 'H', default_value_t = quaternion::DEFAULT_HEIGHT_BOUND)]
        bound: u64,
    },
    /// A rational point on the conic of (a, b | Q).
    Conic {
        /// First structure constant, a nonzero rational
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
        /// Second structure constant, a nonzero rational
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: String,
        /// Height bound for the point search.
        #[arg(short = 'H', default_value_t = quaternion::DEFAULT_HEIGHT_BOUND)]
        bound: u64,
    },
    /// A point on a ternary form modulo a prime.
    Conicpoint {
        /// The prime modulus
        #[arg(short = 'p')]
        prime: String,
        /// c1 c2 c3 for a diagonal form, or q1 q2 q3 t12 t13 t23.
        #[arg(num_args = 3..=6, allow_negative_numbers = true, required = true)]
        coeffs: Vec<String>,
        /// RNG seed; defaults to $QUATRING_SEED, then 0
        #[arg(long)]
        seed: Option<u64>,
    },
    /// A maximal order containing the given one.
    Maxorder {
        /// Order JSON file, or - for stdin.
        order: Option<String>,
        /// Start from Z + Zi + Zj + Zij in (a, b | Q).
        #[arg(long, requires_all = ["a", "b"], conflicts_with = "order")]
        standard: bool,
        /// First structure constant, a nonzero rational
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: Option<String>,
        /// Second structure constant, a nonzero rational
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Whether an order is maximal.
    Ismaximal { order: String },
    /// Discriminant of an order.
    Disc { order: String },
    /// Reductions between factoring, residuosity and splitting.
    Demo {
        #[command(subcommand)]
        which: DemoCommand,
    },
}

#[derive(Subcommand, Debug)]
enum DemoCommand {
    /// A proper factor of N from a maximal-order discriminant.
    Factor {
        n: String,
        /// RNG seed; defaults to $QUATRING_SEED, then 0
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Whether A is a square modulo sqrad(B), decided by splitting.
    Residuosity {
        #[arg(allow_hyphen_values = true)]
        a: String,
        b: String,
        /// RNG seed; defaults to $QUATRING_SEED, then 0
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    No,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Compute(quatring::Error),
}

impl From<quatring::Error> for Failure {
    fn from(e: quatring::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.0)
    }
}

/// What a command produced: the exit code and the text for stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub code: i32,
    pub stdout: String,
}

type Outcome = Result<(Status, Value), Failure>;

/// Runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Response
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Response { code: 0, stdout: e.to_string() };
            }
            return render(Err(Failure::Usage(e.to_string())), None);
        }
    };
    let mut trace = if cli.trace { Trace::recording() } else { Trace::off() };
    let out = dispatch(cli.command, &mut trace);
    render(out, cli.trace.then(|| trace.into_steps()))
}

fn render(out: Outcome, trace: Option<Vec<&'static str>>) -> Response {
    let mut doc = Map::new();
    let code = match out {
        Ok((status, payload)) => {
            doc.insert("status".into(), json!(if status == Status::Ok { "ok" } else { "no" }));
            doc.insert("payload".into(), payload);
            if status == Status::Ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let (code, tag, message) = match f {
                Failure::Usage(m) => (2, "usage".to_string(), m.trim_end().to_string()),
                Failure::Input(m) => (2, "malformed_input".to_string(), m),
                Failure::Compute(e) => (3, e.code().to_string(), e.to_string()),
            };
            doc.insert("status".into(), json!("error"));
            doc.insert("error".into(), json!({"code": tag, "message": message}));
            code
        }
    };
    if let Some(steps) = trace {
        doc.insert("trace".into(), json!(steps));
    }
    let mut stdout = serde_json::to_string(&Value::Object(doc)).expect("serializable");
    stdout.push('\n');
    Response { code, stdout }
}

fn read_document(path: &str) -> Result<Value, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?
    };
    let doc: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    // accept this program's own output envelope as input
    match doc {
        Value::Object(mut m) if m.get("status") == Some(&json!("ok")) && m.contains_key("payload") => {
            Ok(m.remove("payload").expect("checked"))
        }
        other => Ok(other),
    }
}

fn seed(explicit: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{SEED_VAR} must be an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn rational_arg(s: &str) -> Result<Rational, Failure> {
    json::parse_rational(s).map_err(|e| Failure::Usage(e.0))
}

fn int_arg(s: &str) -> Result<BigInt, Failure> {
    json::parse_int(s).map_err(|e| Failure::Usage(e.0))
}

fn algebra_arg(a: &str, b: &str) -> Result<QuaternionAlgebraQ, Failure> {
    Ok(QuaternionAlgebraQ::new(rational_arg(a)?, rational_arg(b)?)?)
}

fn places_value(places: &[Place]) -> Value {
    Value::Array(places.iter().map(|p| json!(p.to_string())).collect())
}

fn valuation_value(v: Valuation) -> Value {
    match v {
        Valuation::Finite(e) => json!(e),
        Valuation::Infinite => json!("inf"),
    }
}

fn load_order(path: &str) -> Result<OrderZ, Failure> {
    let (a, b, den, basis) = json::order_from_json(&read_document(path)?)?;
    Ok(OrderZ::from_parts(QuaternionAlgebraQ::new(a, b)?, den, &basis)?)
}

fn dispatch(cmd: Command, trace: &mut Trace) -> Outcome {
    match cmd {
        Command::Recognize { table } => {
            let (dim, c) = json::table_from_json(&read_document(&table)?)?;
            let t = MultiplicationTable::new(dim, c)?;
            let rec = quaternion::recognize_traced(&t, trace)?;
            let ram = rec.algebra.ramified_set()?;
            Ok((
                Status::Ok,
                json!({
                    "algebra": json::algebra_value(&rec.algebra),
                    "i": vector_value(&rec.i.coords),
                    "j": vector_value(&rec.j.coords),
                    "ramified": places_value(&ram),
                    "matrix_ring": ram.is_empty(),
                }),
            ))
        }
        Command::Normalize { form, ring } => {
            let f = json::form_from_json(&read_document(&form)?)?;
            let ring = if ring == "Q" { LocalRing::Rationals } else { LocalRing::localized(int_arg(&ring)?)? };
            let nf = f.normalize(&ring)?;
            let blocks: Vec<Value> = nf
                .blocks
                .iter()
                .map(|blk| {
                    let mut m = match &blk.kind {
                        BlockKind::Unary { u } => json!({"kind": "unary", "u": rational_value(u)}),
                        BlockKind::Binary { a, b, c } => json!({
                            "kind": "binary",
                            "a": rational_value(a),
                            "b": rational_value(b),
                            "c": rational_value(c),
                        }),
                    };
                    m["valuation"] = valuation_value(blk.valuation);
                    m["start"] = json!(blk.start + 1);
                    m
                })
                .collect();
            Ok((
                Status::Ok,
                json!({
                    "ring": match &ring { LocalRing::Rationals => "Q".to_string(), LocalRing::Localized(p) => p.to_string() },
                    "basis": json::matrix_value(&nf.basis()),
                    "blocks": blocks,
                }),
            ))
        }
        Command::Hilbert { a, b, place } => {
            let (a, b) = (rational_arg(&a)?, rational_arg(&b)?);
            let local = |v: &Place, trace: &mut Trace| -> Result<i8, Failure> {
                Ok(match v {
                    Place::Finite(p) if *p == BigInt::from(2) => symbols::hilbert_even_traced(&a, &b, trace)?,
                    _ => symbols::hilbert(&a, &b, v)?,
                })
            };
            if place == "all" {
                let mut syms = Map::new();
                let mut product = 1i8;
                for v in symbols::support(&a, &b)? {
                    let s = local(&v, trace)?;
                    product *= s;
                    syms.insert(v.to_string(), json!(s));
                }
                return Ok((Status::Ok, json!({"symbols": syms, "product": product})));
            }
            let v = if place == "inf" { Place::Real } else { Place::finite(int_arg(&place)?)? };
            let s = local(&v, trace)?;
            Ok((Status::Ok, json!({"place": v.to_string(), "symbol": s})))
        }
        Command::Jacobi { a, b } => {
            let s = symbols::jacobi_traced(&int_arg(&a)?, &int_arg(&b)?, trace)?;
            Ok((Status::Ok, json!(s)))
        }
        Command::Ramified { a, b } => {
            let alg = algebra_arg(&a, &b)?;
            let ram = alg.ramified_set()?;
            Ok((
                Status::Ok,
                json!({
                    "ramified": places_value(&ram),
                    "discriminant": int_value(&alg.discriminant()?),
                    "matrix_ring": ram.is_empty(),
                }),
            ))
        }
        Command::Split { a, b, bound } => {
            let alg = algebra_arg(&a, &b)?;
            if !alg.is_matrix_ring()? {
                return Ok((Status::No, json!({"matrix_ring": false, "ramified": places_value(&alg.ramified_set()?)})));
            }
            let Some((_, s)) = quaternion::split_algebra_traced(&alg, bound, trace)? else {
                return Err(quatring::Error::BoundExhausted("no zero of the conic below the height bound").into());
            };
            let mat = |m: &quaternion::Mat2| json::matrix_value(&[m[0].to_vec(), m[1].to_vec()]);
            Ok((
                Status::Ok,
                json!({
                    "matrix_ring": true,
                    "nilpotent": vector_value(&s.e.coords),
                    "i_prime": vector_value(&s.i_prime.coords),
                    "j_prime": vector_value(&s.j_prime.coords),
                    "i_image": mat(&s.i_image),
                    "j_image": mat(&s.j_image),
                    "ideal_basis": [vector_value(&s.ideal_basis[0].coords), vector_value(&s.ideal_basis[1].coords)],
                }),
            ))
        }
        Command::Conic { a, b, bound } => {
            let alg = algebra_arg(&a, &b)?;
            let c = quaternion::conic_of(&alg);
            let coeffs = vector_value(&c.coeffs);
            match quaternion::find_isotropic_naive(&c, bound)? {
                Some(p) => Ok((Status::Ok, json!({"coeffs": coeffs, "point": p.iter().map(int_value).collect::<Vec<_>>()}))),
                None => Ok((Status::No, json!({"coeffs": coeffs, "point": null}))),
            }
        }
        Command::Conicpoint { prime, coeffs, seed: s } => {
            if coeffs.len() != 3 && coeffs.len() != 6 {
                return Err(Failure::Usage("conicpoint takes 3 or 6 coefficients".into()));
            }
            let c: Vec<BigInt> = coeffs.iter().map(|x| int_arg(x)).collect::<Result<_, _>>()?;
            let zero = BigInt::from(0);
            let form = TernaryForm {
                q: [c[0].clone(), c[1].clone(), c[2].clone()],
                t01: c.get(3).cloned().unwrap_or(zero.clone()),
                t02: c.get(4).cloned().unwrap_or(zero.clone()),
                t12: c.get(5).cloned().unwrap_or(zero),
            };
            let p = int_arg(&prime)?;
            let pt = quaternion::conic_point_mod_p(&form, &p, seed(s)?)?;
            Ok((Status::Ok, json!({"p": int_value(&p), "point": pt.iter().map(int_value).collect::<Vec<_>>()})))
        }
        Command::Maxorder { order, standard, a, b } => {
            let start = match (standard, order) {
                (true, _) => {
                    let (a, b) = (a.expect("required by clap"), b.expect("required by clap"));
                    orders::standard_order(&algebra_arg(&a, &b)?)
                }
                (false, Some(path)) => load_order(&path)?,
                (false, None) => return Err(Failure::Usage("maxorder needs an order file or --standard".into())),
            };
            let o = orders::max_order_traced(&start, trace)?;
            let mut doc = json::order_to_json(&o);
            doc["reduced_discriminant"] = int_value(&orders::discriminant(&o)?.reduced);
            Ok((Status::Ok, doc))
        }
        Command::Ismaximal { order } => {
            let o = load_order(&order)?;
            let d = orders::discriminant(&o)?.reduced;
            let big_d = o.algebra().discriminant()?;
            let status = if d == big_d { Status::Ok } else { Status::No };
            Ok((
                status,
                json!({
                    "maximal": d == big_d,
                    "reduced_discriminant": int_value(&d),
                    "algebra_discriminant": int_value(&big_d),
                }),
            ))
        }
        Command::Disc { order } => {
            let d = orders::discriminant(&load_order(&order)?)?;
            Ok((Status::Ok, json!({"disc": int_value(&d.disc), "reduced": int_value(&d.reduced)})))
        }
        Command::Demo { which: DemoCommand::Factor { n, seed: s } } => {
            let n = int_arg(&n)?;
            let f = demo::factor_via_maxorder(&n, seed(s)?)?;
            Ok((Status::Ok, json!({"n": int_value(&n), "factor": int_value(&f), "cofactor": int_value(&(&n / &f))})))
        }
        Command::Demo { which: DemoCommand::Residuosity { a, b, seed: s } } => {
            let (a, b) = (int_arg(&a)?, int_arg(&b)?);
            let split = demo::residuosity_via_splitting(&a, &b, seed(s)?)?;
            let direct = demo::quadratic_residuosity(&a, &b)?;
            let status = if split { Status::Ok } else { Status::No };
            Ok((status, json!({"a": int_value(&a), "b": int_value(&b), "residue": split, "direct": direct})))
        }
    }
}
