//! `cayley`: command-line front end for the Zémor and Tillich-Zémor toolkit.
//!
//! Every verb prints a single JSON document on stdout. Errors are printed as
//! `{"error": code, "detail": text}` with exit code 1 (domain), 2 (usage) or
//! 3 (certificate verification).

mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use cayley_core::cert::verify_json;
use cayley_core::ff::FieldSpec;
use cayley_core::msg::{emit_rle, Message};
use cayley_core::sl2::Mat2;
use cayley_core::tz::{
    element_period, empty_word_diagnostic, malicious_generate, period_bound, power_collision_certificate,
    power_collision_search, tz_hash, TzParams,
};
use cayley_core::zemor::{
    bounded_diag_search, bounded_triang_search, combine_to_identity, diag_collision, double_ext_solve,
    euclid_factor, gamma_of, gamma_update, hash, quartic_coefficients, triangularize_by_gamma, triangularize_ext,
    ZemorParams,
};
use cayley_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use input::{element_json, load_message, load_matrix, parse_list};

#[derive(Parser)]
#[command(name = "cayley", version, about = "Collision toolkit for Zémor and Tillich-Zémor Cayley hashes")]
struct Cli {
    /// Worker threads for parallel scans (output does not depend on it)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for verbs that sample at random
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field, e.g. `p=7919` or `p=3;k=12;mod=[1,1,1,2,2,0,1,0,0,0,2,0,1]`
    #[arg(long)]
    field: String,
    /// First generator parameter (decimal, `[c0,c1,..]` or a polynomial in z)
    #[arg(long)]
    alpha: Option<String>,
    /// Second generator parameter
    #[arg(long)]
    beta: Option<String>,
}

#[derive(Args, Clone)]
struct MessageArgs {
    /// Message as RLE (`0^{3}1^{2}`) or raw bits (`00011`)
    #[arg(long, allow_hyphen_values = true)]
    msg: Option<String>,
    /// File holding the message
    #[arg(long, conflicts_with = "msg")]
    msg_file: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct MatrixArgs {
    /// Matrix as JSON `[[a,b],[c,d]]`
    #[arg(long)]
    matrix: Option<String>,
    /// File holding the matrix JSON
    #[arg(long, conflicts_with = "matrix")]
    matrix_file: Option<PathBuf>,
    #[command(flatten)]
    msg: MessageArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchKind {
    Diag,
    Triang,
}

#[derive(Subcommand)]
enum Command {
    /// Zémor hash of a message
    Hash {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        msg: MessageArgs,
    },
    /// Tillich-Zémor hash (default points x and x+1)
    TzHash {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        msg: MessageArgs,
    },
    /// Collision from two diagonal extensions of the same message
    CollideDiag {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        msg: MessageArgs,
        /// `m1,n1,m2,n2`
        #[arg(long)]
        pairs: String,
    },
    /// One-step upper-triangular extension
    ExtendTriang {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        input: MatrixArgs,
        /// Fixed first exponent
        #[arg(long)]
        m: Option<u64>,
    },
    /// Bounded search for short diagonal or triangular words (k = 1)
    SearchDelta {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        kind: SearchKind,
        #[arg(long)]
        delta: u64,
        /// Sample this many random (alpha, beta) pairs from --seed instead
        #[arg(long)]
        trials: Option<usize>,
    },
    /// γ of a matrix, its quartic, and optionally γ after an extension
    Gamma {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        input: MatrixArgs,
        /// `m,n` for the update law
        #[arg(long)]
        update: Option<String>,
    },
    /// Two-step triangular extension over F_p x F_p
    DoubleExt {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        input: MatrixArgs,
    },
    /// Factor a matrix over F_p into generators with alpha = beta = 1
    Euclid {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        input: MatrixArgs,
    },
    /// Combine triangular hashes into a word hashing to the identity
    Combine {
        #[command(flatten)]
        field: FieldArgs,
        /// One message per line
        #[arg(long)]
        msgs_file: Option<PathBuf>,
        /// Number of random words to draw from --seed when no file is given
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Period of Y(point) and of the sequence f_n
    TzPeriod {
        #[command(flatten)]
        field: FieldArgs,
        /// Evaluation point (default x)
        #[arg(long)]
        point: Option<String>,
        /// Also check H(0^m 1^n) = I for `m,n`
        #[arg(long)]
        check: Option<String>,
    },
    /// Least power relation Y(beta)^m = Y(alpha)^n
    TzCollide {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        bound: u64,
    },
    /// Scan irreducible moduli for a small order of Y(x)
    Malice {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        order_bound: u128,
        #[arg(long, default_value_t = 10_000)]
        scan_limit: usize,
    },
    /// Re-check a certificate file
    Verify { file: PathBuf },
}

enum Failure {
    Usage(String),
    Domain(Error),
    Verify(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(Failure::Usage(e.render().to_string())),
    };
    if let Some(n) = cli.workers {
        if n == 0 {
            return report(Failure::Usage("--workers must be positive".into()));
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return report(Failure::Usage(e.to_string()));
        }
    }
    match run(cli) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    let (code, detail, status) = match f {
        Failure::Usage(d) => ("UsageError", d, 2),
        Failure::Domain(e) => (e.code(), e.to_string(), 1),
        Failure::Verify(e) => (e.code(), e.to_string(), 3),
    };
    emit(&json!({ "error": code, "detail": detail.trim_end() }));
    ExitCode::from(status)
}

/// One JSON document per line; a closed pipe is not an error.
fn emit(v: &Value) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{v}");
}

fn spec(args: &FieldArgs) -> Result<Arc<FieldSpec>, Failure> {
    Ok(FieldSpec::parse(&args.field)?)
}

fn zemor_params(args: &FieldArgs) -> Result<ZemorParams, Failure> {
    let f = spec(args)?;
    let get = |v: &Option<String>, name: &str| match v {
        Some(t) => Ok(f.parse_element(t)?),
        None => Err(Failure::Usage(format!("--{name} is required"))),
    };
    Ok(ZemorParams::new(get(&args.alpha, "alpha")?, get(&args.beta, "beta")?)?)
}

fn tz_params(args: &FieldArgs) -> Result<TzParams, Failure> {
    let f = spec(args)?;
    let default = TzParams::with_default_points(&f);
    let alpha = match &args.alpha {
        Some(t) => f.parse_element(t)?,
        None => default.alpha().clone(),
    };
    let beta = match &args.beta {
        Some(t) => f.parse_element(t)?,
        None => default.beta().clone(),
    };
    Ok(TzParams::new(alpha, beta)?)
}

fn field_json(f: &FieldSpec) -> Value {
    json!({ "p": f.p(), "k": f.k(), "mod": f.modulus().coeffs() })
}

/// The matrix from `--matrix`/`--matrix-file`, or the hash of the message.
fn input_matrix(zp: &ZemorParams, args: &MatrixArgs) -> Result<Mat2, Failure> {
    match load_matrix(zp.spec(), args.matrix.as_deref(), args.matrix_file.as_deref())? {
        Some(m) => Ok(m),
        None => Ok(hash(zp, &load_message(args.msg.msg.as_deref(), args.msg.msg_file.as_deref())?)),
    }
}

fn pair(text: &str) -> Result<(u64, u64), Failure> {
    match parse_list(text)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Failure::Usage(format!("expected `a,b`, got {text:?}"))),
    }
}

fn run(cli: Cli) -> Outcome {
    let seed = cli.seed;
    match cli.command {
        Command::Hash { field, msg } => {
            let zp = zemor_params(&field)?;
            let m = load_message(msg.msg.as_deref(), msg.msg_file.as_deref())?;
            let h = hash(&zp, &m);
            Ok(json!({ "field": field_json(zp.spec()), "length": m.len(), "hash": h.to_json(), "shape": h.shape() }))
        }
        Command::TzHash { field, msg } => {
            let tp = tz_params(&field)?;
            let m = load_message(msg.msg.as_deref(), msg.msg_file.as_deref())?;
            let h = tz_hash(&tp, &m);
            Ok(json!({
                "field": field_json(tp.spec()),
                "alpha": element_json(tp.alpha()),
                "beta": element_json(tp.beta()),
                "length": m.len(),
                "hash": h.to_json(),
                "det": element_json(&h.det()),
            }))
        }
        Command::CollideDiag { field, msg, pairs } => {
            let zp = zemor_params(&field)?;
            let z = load_message(msg.msg.as_deref(), msg.msg_file.as_deref())?;
            let (m1, n1, m2, n2) = match parse_list(&pairs)?.as_slice() {
                [a, b, c, d] => (*a, *b, *c, *d),
                _ => return Err(Failure::Usage("--pairs takes m1,n1,m2,n2".into())),
            };
            let col = diag_collision(&zp, &z, (m1, n1), (m2, n2))?;
            Ok(json!({
                "tilde": col.tilde,
                "zero_runs": col.zero_runs,
                "certificate": col.certificate.to_json(),
            }))
        }
        Command::ExtendTriang { field, input, m } => {
            let zp = zemor_params(&field)?;
            let c = input_matrix(&zp, &input)?;
            let (method, ext) = if zp.ab_in_base() {
                ("ab-in-base", triangularize_ext(&zp, &c, m)?)
            } else {
                if m.is_some() {
                    return Err(Failure::Usage("--m applies only when alpha*beta is in F_p".into()));
                }
                match triangularize_by_gamma(&zp, &c)? {
                    Some(ext) => ("gamma", ext),
                    None => return Ok(json!({ "method": "gamma", "extension": null })),
                }
            };
            Ok(json!({
                "method": method,
                "extension": { "m": ext.m, "n": ext.n, "t": ext.t.to_json() },
            }))
        }
        Command::SearchDelta { field, kind, delta, trials } => {
            let search = |zp: &ZemorParams| -> Result<Value, Failure> {
                let hit = match kind {
                    SearchKind::Diag => bounded_diag_search(zp, delta)?,
                    SearchKind::Triang => bounded_triang_search(zp, delta)?,
                };
                Ok(match hit {
                    Some(w) => json!({ "witness": w, "rle": emit_rle(&w.message()), "hash": hash(zp, &w.message()).to_json() }),
                    None => json!({ "witness": null }),
                })
            };
            match trials {
                None => search(&zemor_params(&field)?),
                Some(t) => {
                    let f = spec(&field)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut runs = Vec::with_capacity(t);
                    let mut exhausted = 0;
                    for _ in 0..t {
                        let (a, b) = (rng.gen_range(1..f.p()), rng.gen_range(1..f.p()));
                        let result = search(&ZemorParams::from_u64(&f, a, b)?)?;
                        if result["witness"].is_null() {
                            exhausted += 1;
                        }
                        runs.push(json!({ "alpha": a, "beta": b, "result": result }));
                    }
                    Ok(json!({ "delta": delta, "trials": t, "exhausted": exhausted, "runs": runs }))
                }
            }
        }
        Command::Gamma { field, input, update } => {
            let zp = zemor_params(&field)?;
            let c = input_matrix(&zp, &input)?;
            let gamma = gamma_of(&zp, &c)?;
            let q = quartic_coefficients(&zp, &c)?;
            let mut out = json!({
                "gamma": element_json(&gamma),
                "in_base_field": gamma.is_frobenius_fixed(),
                "quartic": q.as_array().map(element_json),
            });
            if let Some(u) = update {
                let (m, n) = pair(&u)?;
                out["updated"] = json!({ "m": m, "n": n, "gamma": element_json(&gamma_update(&zp, &c, m, n)?) });
            }
            Ok(out)
        }
        Command::DoubleExt { field, input } => {
            let zp = zemor_params(&field)?;
            let c = input_matrix(&zp, &input)?;
            Ok(match double_ext_solve(&zp, &c)? {
                Some(s) => json!({
                    "solution": { "m1": s.m1, "n1": s.n1, "m2": s.m2, "n2": s.n2, "t": s.t.to_json() },
                }),
                None => json!({ "solution": null }),
            })
        }
        Command::Euclid { mut field, input } => {
            field.alpha.get_or_insert_with(|| "1".into());
            field.beta.get_or_insert_with(|| "1".into());
            let zp = zemor_params(&field)?;
            let x = input_matrix(&zp, &input)?;
            let word = euclid_factor(&zp, &x)?;
            Ok(json!({ "matrix": x.to_json(), "length": word.len(), "rle": emit_rle(&word) }))
        }
        Command::Combine { field, msgs_file, count } => {
            let zp = zemor_params(&field)?;
            let words = match msgs_file {
                Some(path) => input::load_message_lines(&path)?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..count)
                        .map(|_| {
                            let len = rng.gen_range(10..=40);
                            Message::from_bits(&(0..len).map(|_| rng.gen_range(0..2u8)).collect::<Vec<_>>())
                        })
                        .collect()
                }
            };
            let mut items = Vec::with_capacity(words.len());
            for mut w in words {
                let c = hash(&zp, &w);
                let ext = if zp.ab_in_base() {
                    triangularize_ext(&zp, &c, None)?
                } else {
                    triangularize_by_gamma(&zp, &c)?.ok_or(Error::NotUpperTriangular)?
                };
                w.push_run(0, ext.m);
                w.push_run(1, ext.n);
                items.push((w, ext.t));
            }
            let res = combine_to_identity(&zp, &items)?;
            Ok(json!({
                "items": items.iter().map(|(w, t)| json!({ "rle": emit_rle(w), "hash": t.to_json() })).collect::<Vec<_>>(),
                "exponents": res.exponents,
                "z_rle": emit_rle(&res.z),
                "z_hash": res.z_hash.to_json(),
                "copies": res.copies,
                "certificate": res.certificate.to_json(),
            }))
        }
        Command::TzPeriod { field, point, check } => {
            let tp = tz_params(&field)?;
            let f = tp.spec().clone();
            let point = match point {
                Some(t) => f.parse_element(&t)?,
                None => f.generator(),
            };
            let period = element_period(&point)?;
            let bound = period_bound(f.p(), f.k());
            let mut out = json!({
                "field": field_json(&f),
                "point": element_json(&point),
                "period": period.to_string(),
                "bound": bound.map(|b| b.to_string()),
                "divides_bound": bound.map(|b| b % period == 0),
            });
            if let Some(c) = check {
                let (m, n) = pair(&c)?;
                let d = empty_word_diagnostic(&tp, m, n);
                out["check"] = json!({ "m": m, "n": n, "identity": d.holds, "relations": d.relations });
            }
            Ok(out)
        }
        Command::TzCollide { field, bound } => {
            let tp = tz_params(&field)?;
            Ok(match power_collision_search(&tp, bound)? {
                Some((m, n)) => json!({
                    "m": m,
                    "n": n,
                    "certificate": power_collision_certificate(&tp, m, n)?.to_json(),
                }),
                None => json!({ "m": null, "n": null }),
            })
        }
        Command::Malice { p, d, order_bound, scan_limit } => {
            let found = malicious_generate(p, d, order_bound, scan_limit)?;
            Ok(Value::Array(found.iter().map(|w| w.to_json()).collect()))
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let cert = verify_json(&text).map_err(Failure::Verify)?;
            Ok(json!({ "verified": true, "kind": cert.kind().as_str(), "hash": cert.hash().to_json() }))
        }
    }
}
