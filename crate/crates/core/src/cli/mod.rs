//! Command-line front end for the `adcforms` binary.
//!
//! Exit codes: 0 affirmative, 1 negative verdict, 2 input error,
//! 3 inconclusive (bound exhausted, unknown, work cap hit).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::descent::{
    adc_descend, integer_range, is_adc_empirical, non_adc_certificate_check,
    non_adc_certificate_search, represents_integrally, witness_search, witness_search_nonintegral,
    CertificateSearch, Outcome, Representation, SearchRing, Witness, WitnessSearch,
};
use crate::error::{Error, Result};
use crate::euclid::{
    classify_euclidean_diagonal_z, euclidean_step_form, euclideanity_search, is_euclidean,
    EuclideanClass, ValueKind,
};
use crate::forms::descriptor::load_fixture;
use crate::forms::{maximality_special_z, AnyForm, Maximality, QuadraticForm};
use crate::limits::Limits;
use crate::localglobal::{
    first_unrepresented, local_maximality_nondyadic, real_represents, sum_three_squares,
    zp_represents_diagonal, LocalVerdict, ThreeSquares, Verdict,
};
use crate::rings::context::parse_bigint;
use crate::rings::{factor, poly, ElemCodec, Integers, Ring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "adcforms", version, about = "Euclidean and ADC quadratic forms, exactly")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct FormSource {
    /// JSON descriptor or `diag:a1,a2,...` (integer diagonal).
    #[arg(long)]
    form: Option<String>,
    /// Name of a shipped fixture.
    #[arg(long)]
    fixture: Option<String>,
    /// File holding a JSON descriptor.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate q(x).
    Eval {
        #[command(flatten)]
        src: FormSource,
        #[arg(long)]
        x: String,
    },
    /// The polar bilinear form B(x, y).
    Bilinear {
        #[command(flatten)]
        src: FormSource,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Discriminant det of the half Gram matrix.
    Disc {
        #[command(flatten)]
        src: FormSource,
    },
    /// Euclidean, boundary-Euclidean or not.
    IsEuclidean {
        #[command(flatten)]
        src: FormSource,
    },
    /// Euclideanity over points with denominators up to --denoms.
    Euclideanity {
        #[command(flatten)]
        src: FormSource,
        #[arg(long, default_value_t = 2)]
        denoms: u64,
    },
    /// A Euclidean step y for x.
    Step {
        #[command(flatten)]
        src: FormSource,
        #[arg(long)]
        x: String,
    },
    /// Descend from a witness (given or searched) to an integral representation.
    Descend {
        #[command(flatten)]
        src: FormSource,
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = 10)]
        t_bound: u32,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        xprime: Option<String>,
        #[arg(long)]
        trace: bool,
    },
    /// Search q(x') = t^2 d.
    Witness {
        #[command(flatten)]
        src: FormSource,
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = 10)]
        t_bound: u32,
        /// Only accept witnesses with x'/t not integral.
        #[arg(long)]
        nonintegral: bool,
    },
    /// Integral representation of d.
    Represents {
        #[command(flatten)]
        src: FormSource,
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = 10)]
        box_bound: u32,
    },
    /// Check a non-ADC certificate (a, b).
    Certify {
        #[command(flatten)]
        src: FormSource,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Search for a non-ADC certificate.
    CertifySearch {
        #[command(flatten)]
        src: FormSource,
        #[arg(long, default_value_t = 5)]
        a_bound: u32,
        #[arg(long, default_value_t = 20)]
        b_bound: u32,
    },
    /// Empirical ADC audit over targets up to --d (integers) or of degree
    /// at most --d (polynomials).
    AuditAdc {
        #[command(flatten)]
        src: FormSource,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 10)]
        t_bound: u32,
        #[arg(long, default_value_t = 10)]
        box_bound: u32,
        /// Audit a seeded random sample of this many targets.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Write n as a sum of three squares, or show why not.
    ThreeSquares {
        n: String,
        #[arg(long, default_value_t = 25)]
        t_bound: u32,
        #[arg(long)]
        trace: bool,
    },
    /// Local representability of d (diagonal integer forms).
    Local {
        #[command(flatten)]
        src: FormSource,
        #[arg(long)]
        d: String,
        /// A single prime; otherwise the real place and every prime dividing 2 d disc.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Whether q represents 1, ..., 290.
    #[command(name = "check-290")]
    Check290 {
        #[command(flatten)]
        src: FormSource,
    },
    /// The positive definite diagonal integer forms that are Euclidean.
    ClassifyDiagonal,
    /// Maximality of the lattice Z^n for an integer form.
    Maximality {
        #[command(flatten)]
        src: FormSource,
        /// Only the odd place p.
        #[arg(long)]
        p: Option<u64>,
    },
}

/// A finished command: exit code, text and JSON renderings.
struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn new(code: i32, text: impl Into<String>, json: Value) -> Self {
        Report {
            code,
            text: text.into(),
            json,
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::EnumerationCapExceeded(_) | Error::SearchExhausted(_) | Error::Overflow => {
            EXIT_INCONCLUSIVE
        }
        Error::StepFailed(_) | Error::BadStep(_) | Error::AnisotropicPartViolation => EXIT_NEGATIVE,
        _ => EXIT_INPUT,
    }
}

/// Run with explicit argv and streams; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let msg = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{msg}");
            } else {
                let _ = write!(err, "{msg}");
            }
            return code;
        }
    };
    let limits = Limits::from_env();
    match dispatch(&cli, &limits) {
        Ok(rep) => {
            if cli.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rep.json).expect("json"));
            } else {
                let _ = writeln!(out, "{}", rep.text);
            }
            rep.code
        }
        Err(e) => {
            let code = exit_code_for(&e);
            if cli.json {
                let _ = writeln!(out, "{}", json!({"error": e.to_string()}));
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn load_form(src: &FormSource) -> Result<AnyForm> {
    let given = [src.form.is_some(), src.fixture.is_some(), src.file.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(Error::Parse("give exactly one of --form, --fixture, --file".into()));
    }
    if let Some(f) = &src.form {
        let f = f.trim();
        if let Some(list) = f.strip_prefix("diag:") {
            let diag = list.split(',').map(parse_bigint).collect::<Result<Vec<_>>>()?;
            return Ok(AnyForm::Z(QuadraticForm::diagonal(Integers, diag)?));
        }
        return AnyForm::from_json(f);
    }
    if let Some(name) = &src.fixture {
        let name = match name.as_str() {
            "three-squares" => "sum3",
            "four-squares" => "sum4",
            other => other,
        };
        return load_fixture(name);
    }
    let path = src.file.as_ref().expect("one source given");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    AnyForm::from_json(&text)
}

/// A JSON value, or the raw text as a JSON string.
fn lenient(s: &str) -> Value {
    serde_json::from_str(s.trim()).unwrap_or_else(|_| Value::String(s.trim().to_string()))
}

/// A JSON array, or a comma-separated list of scalars.
fn list_value(s: &str) -> Value {
    let s = s.trim();
    if s.starts_with('[') {
        lenient(s)
    } else {
        Value::Array(s.split(',').map(lenient).collect())
    }
}

fn parse_elem<R: ElemCodec>(r: &R, s: &str) -> Result<R::Elem> {
    r.elem_from_json(&lenient(s))
}

fn parse_point<R: ElemCodec>(q: &QuadraticForm<R>, s: &str) -> Result<Vec<R::Frac>> {
    let v = q.ring().frac_vec_from_json(&list_value(s))?;
    check_dim(q, v.len())?;
    Ok(v)
}

fn check_dim<R: Ring>(q: &QuadraticForm<R>, got: usize) -> Result<()> {
    if got != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            got,
        });
    }
    Ok(())
}

fn fmt_elems<R: Ring>(r: &R, v: &[R::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|e| r.format_elem(e)).collect();
    format!("({})", parts.join(", "))
}

fn fmt_fracs<R: Ring>(r: &R, v: &[R::Frac]) -> String {
    let parts: Vec<String> = v.iter().map(|e| r.format_frac(e)).collect();
    format!("({})", parts.join(", "))
}

macro_rules! on_form {
    ($form:expr, $q:ident => $body:expr) => {
        match $form {
            AnyForm::Z($q) => $body,
            AnyForm::FqT($q) => $body,
            AnyForm::Zloc($q) => $body,
        }
    };
}

fn dispatch(cli: &Cli, limits: &Limits) -> Result<Report> {
    match &cli.cmd {
        Cmd::Eval { src, x } => on_form!(&load_form(src)?, q => cmd_eval(q, x)),
        Cmd::Bilinear { src, x, y } => on_form!(&load_form(src)?, q => cmd_bilinear(q, x, y)),
        Cmd::Disc { src } => on_form!(&load_form(src)?, q => {
            let d = q.discriminant();
            Ok(Report::new(EXIT_OK, format!("disc = {}", q.ring().format_frac(&d)),
                json!({"disc": q.ring().frac_to_json(&d)})))
        }),
        Cmd::IsEuclidean { src } => {
            let form = load_form(src)?;
            let v = is_euclidean(&form, limits)?;
            let code = match v.class {
                EuclideanClass::Euclidean | EuclideanClass::BoundaryEuclidean => EXIT_OK,
                EuclideanClass::NotEuclidean => EXIT_NEGATIVE,
                EuclideanClass::Unknown => EXIT_INCONCLUSIVE,
            };
            Ok(Report::new(code, format!("{} ({})", v.class, v.reason), v.to_json()))
        }
        Cmd::Euclideanity { src, denoms } => {
            let form = load_form(src)?;
            let q = form.as_integers()?;
            let rep = euclideanity_search(q, *denoms, limits)?;
            let kind = match rep.kind {
                ValueKind::Exact => "exact",
                ValueKind::LowerBound => "lower bound",
            };
            let rel = if rep.kind == ValueKind::Exact { "=" } else { ">=" };
            let text = format!(
                "E {rel} {} ({kind})\nwitness {}",
                crate::rings::format_rational(&rep.value),
                fmt_fracs(&Integers, &rep.witness)
            );
            Ok(Report::new(EXIT_OK, text, rep.to_json()))
        }
        Cmd::Step { src, x } => on_form!(&load_form(src)?, q => cmd_step(q, x, limits)),
        Cmd::Descend { src, d, t_bound, t, xprime, trace } => on_form!(&load_form(src)?, q => {
            cmd_descend(q, d, *t_bound, t.as_deref(), xprime.as_deref(), *trace, limits)
        }),
        Cmd::Witness { src, d, t_bound, nonintegral } => on_form!(&load_form(src)?, q => {
            cmd_witness(q, d, *t_bound, *nonintegral, limits)
        }),
        Cmd::Represents { src, d, box_bound } => on_form!(&load_form(src)?, q => {
            cmd_represents(q, d, *box_bound, limits)
        }),
        Cmd::Certify { src, a, b } => {
            let form = load_form(src)?;
            let q = form.as_integers()?;
            let (a, b) = (parse_bigint(a)?, parse_bigint(b)?);
            Ok(match non_adc_certificate_check(q, &a, &b, limits)? {
                Some(c) => Report::new(
                    EXIT_OK,
                    format!("certificate: q represents {}^2*{} at {} but not {}", a, b, fmt_elems(&Integers, &c.witness_a2b), b),
                    c.to_json(),
                ),
                None => Report::new(EXIT_NEGATIVE, format!("({a}, {b}) is not a certificate"), json!({"certificate": false})),
            })
        }
        Cmd::CertifySearch { src, a_bound, b_bound } => {
            let form = load_form(src)?;
            let q = form.as_integers()?;
            Ok(match non_adc_certificate_search(q, *a_bound, *b_bound, limits)? {
                CertificateSearch::Found(c) => Report::new(
                    EXIT_OK,
                    format!("certificate (a, b) = ({}, {}), q({}) = {}", c.a, c.b,
                        c.witness_a2b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "),
                        &c.a * &c.a * &c.b),
                    c.to_json(),
                ),
                CertificateSearch::NotFoundUpTo { a_bound, b_bound } => Report::new(
                    EXIT_INCONCLUSIVE,
                    format!("no certificate with a <= {a_bound}, b <= {b_bound}"),
                    json!({"not_found_up_to": {"a": a_bound, "b": b_bound}}),
                ),
            })
        }
        Cmd::AuditAdc { src, d, t_bound, box_bound, samples } => {
            let form = load_form(src)?;
            match &form {
                AnyForm::Z(q) => cmd_audit(q, integer_range(1, *d as i64), *t_bound, *box_bound, *samples, cli.seed, limits),
                AnyForm::Zloc(q) => {
                    let targets = (1..=*d as i64).map(|k| num_rational::BigRational::from_integer(k.into())).collect();
                    cmd_audit(q, targets, *t_bound, *box_bound, *samples, cli.seed, limits)
                }
                AnyForm::FqT(q) => {
                    let targets = poly::all_up_to_degree(q.ring().q(), *d as usize).skip(1).collect();
                    cmd_audit(q, targets, *t_bound, *box_bound, *samples, cli.seed, limits)
                }
            }
        }
        Cmd::ThreeSquares { n, t_bound, trace } => {
            let n = parse_bigint(n)?;
            match sum_three_squares(&n, *t_bound, limits)? {
                ThreeSquares::Impossible(ob) => Ok(Report::new(
                    EXIT_NEGATIVE,
                    format!("impossible: {ob}"),
                    json!({"impossible": ob.to_string()}),
                )),
                ThreeSquares::Found { y, trace: tr } => {
                    let mut j = json!({"squares": Integers.vec_to_json(&y)});
                    if *trace {
                        j["trace"] = tr.map(|t| t.to_json(&Integers)).unwrap_or(Value::Null);
                    }
                    let text = if *trace {
                        serde_json::to_string_pretty(&j).expect("json")
                    } else {
                        format!("{n} = {}", y.iter().map(|v| format!("({v})^2")).collect::<Vec<_>>().join(" + "))
                    };
                    Ok(Report::new(EXIT_OK, text, j))
                }
            }
        }
        Cmd::Local { src, d, p } => {
            let form = load_form(src)?;
            let q = form.as_integers()?;
            let d = parse_bigint(d)?;
            cmd_local(q, &d, *p, limits)
        }
        Cmd::Check290 { src } => {
            let form = load_form(src)?;
            let q = form.as_integers()?;
            if q.dim() < 4 {
                return Err(Error::WrongDimension { min: 4, got: q.dim() });
            }
            Ok(match first_unrepresented(q, 290, limits)? {
                None => Report::new(EXIT_OK, "represents 1..290: sign-universal", json!({"sign_universal": true})),
                Some(m) => Report::new(
                    EXIT_NEGATIVE,
                    format!("does not represent {m}: not sign-universal"),
                    json!({"sign_universal": false, "first_missing": m}),
                ),
            })
        }
        Cmd::ClassifyDiagonal => {
            let list = classify_euclidean_diagonal_z();
            let text = list
                .iter()
                .map(|d| format!("diag({})", d.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report::new(EXIT_OK, text, json!(list)))
        }
        Cmd::Maximality { src, p } => {
            let form = load_form(src)?;
            let q = form.as_integers()?;
            let m = match p {
                Some(p) => local_maximality_nondyadic(q, *p)?,
                None => maximality_special_z(q, limits),
            };
            let code = match m {
                Maximality::Maximal => EXIT_OK,
                Maximality::NotMaximal => EXIT_NEGATIVE,
                Maximality::Unknown => EXIT_INCONCLUSIVE,
            };
            Ok(Report::new(code, m.to_string(), json!({"maximality": m})))
        }
    }
}

fn cmd_eval<R: ElemCodec>(q: &QuadraticForm<R>, x: &str) -> Result<Report> {
    let x = parse_point(q, x)?;
    let v = q.evaluate(&x)?;
    let r = q.ring();
    Ok(Report::new(EXIT_OK, format!("q{} = {}", fmt_fracs(r, &x), r.format_frac(&v)), json!({"value": r.frac_to_json(&v)})))
}

fn cmd_bilinear<R: ElemCodec>(q: &QuadraticForm<R>, x: &str, y: &str) -> Result<Report> {
    let (x, y) = (parse_point(q, x)?, parse_point(q, y)?);
    let v = q.bilinear(&x, &y)?;
    let r = q.ring();
    Ok(Report::new(EXIT_OK, format!("B = {}", r.format_frac(&v)), json!({"value": r.frac_to_json(&v)})))
}

fn cmd_step<R: SearchRing>(q: &QuadraticForm<R>, x: &str, limits: &Limits) -> Result<Report> {
    let x = parse_point(q, x)?;
    let r = q.ring();
    let y = euclidean_step_form(q, &x, limits)?;
    let diff: Vec<R::Frac> = x.iter().zip(&y).map(|(a, b)| r.frac_sub(a, &r.embed(b))).collect();
    let v = q.evaluate(&diff)?;
    let norm = r.norm_fraction(&v);
    Ok(Report::new(
        EXIT_OK,
        format!("y = {}\nq(x - y) = {}, norm {}", fmt_elems(r, &y), r.format_frac(&v), norm),
        json!({"y": r.vec_to_json(&y), "value": r.frac_to_json(&v), "norm": crate::rings::format_rational(norm.value())}),
    ))
}

fn witness_json<R: SearchRing>(r: &R, w: &Witness<R>) -> Value {
    json!({"t": r.elem_to_json(&w.t), "xprime": r.vec_to_json(&w.xprime), "d": r.elem_to_json(&w.d)})
}

fn cmd_descend<R: SearchRing>(
    q: &QuadraticForm<R>,
    d: &str,
    t_bound: u32,
    t: Option<&str>,
    xprime: Option<&str>,
    trace: bool,
    limits: &Limits,
) -> Result<Report> {
    let r = q.ring();
    let d = parse_elem(r, d)?;
    let w = match (t, xprime) {
        (Some(t), Some(x)) => {
            let x = r.vec_from_json(&list_value(x))?;
            check_dim(q, x.len())?;
            Witness::new(q, parse_elem(r, t)?, x, d)?
        }
        (None, None) => match witness_search(q, &d, t_bound, limits)? {
            WitnessSearch::Found(w) => w,
            WitnessSearch::NotFoundUpTo(b) => {
                return Ok(Report::new(
                    EXIT_INCONCLUSIVE,
                    format!("no witness with t up to {b}"),
                    json!({"not_found_up_to": b}),
                ))
            }
        },
        _ => return Err(Error::Parse("--t and --xprime go together".into())),
    };
    let tr = adc_descend(q, &w, limits)?;
    let j = tr.to_json(r);
    let (code, summary) = match &tr.outcome {
        Outcome::Success(y) => (EXIT_OK, format!("q{} = {} after {} step(s)", fmt_elems(r, y), r.format_elem(&w.d), tr.steps.len())),
        Outcome::Stalled(why) => (EXIT_INCONCLUSIVE, format!("stalled after {} step(s): {why}", tr.steps.len())),
    };
    let text = if trace { serde_json::to_string_pretty(&j).expect("json") } else { summary };
    Ok(Report::new(code, text, j))
}

fn cmd_witness<R: SearchRing>(q: &QuadraticForm<R>, d: &str, t_bound: u32, nonintegral: bool, limits: &Limits) -> Result<Report> {
    let r = q.ring();
    let d = parse_elem(r, d)?;
    let found = if nonintegral {
        witness_search_nonintegral(q, &d, t_bound, limits)?
    } else {
        witness_search(q, &d, t_bound, limits)?
    };
    Ok(match found {
        WitnessSearch::Found(w) => Report::new(
            EXIT_OK,
            format!("t = {}, x' = {}", r.format_elem(&w.t), fmt_elems(r, &w.xprime)),
            witness_json(r, &w),
        ),
        WitnessSearch::NotFoundUpTo(b) => Report::new(EXIT_INCONCLUSIVE, format!("not found up to {b}"), json!({"not_found_up_to": b})),
    })
}

fn cmd_represents<R: SearchRing>(q: &QuadraticForm<R>, d: &str, box_bound: u32, limits: &Limits) -> Result<Report> {
    let r = q.ring();
    let d = parse_elem(r, d)?;
    Ok(match represents_integrally(q, &d, box_bound, limits)? {
        Representation::Yes(x) => Report::new(EXIT_OK, format!("yes: q{} = {}", fmt_elems(r, &x), r.format_elem(&d)), json!({"represents": "yes", "x": r.vec_to_json(&x)})),
        Representation::No => Report::new(EXIT_NEGATIVE, "no", json!({"represents": "no"})),
        Representation::NoUpTo(b) => Report::new(EXIT_INCONCLUSIVE, format!("no solution up to {b}"), json!({"represents": "no_up_to", "bound": b})),
    })
}

fn cmd_audit<R: SearchRing>(
    q: &QuadraticForm<R>,
    mut targets: Vec<R::Elem>,
    t_bound: u32,
    box_bound: u32,
    samples: Option<usize>,
    seed: u64,
    limits: &Limits,
) -> Result<Report> {
    if let Some(k) = samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx: Vec<usize> = (0..targets.len()).collect();
        idx.shuffle(&mut rng);
        idx.truncate(k);
        idx.sort();
        targets = idx.into_iter().map(|i| targets[i].clone()).collect();
    }
    let r = q.ring();
    let audit = is_adc_empirical(q, &targets, t_bound, box_bound, limits)?;
    let mut text = format!(
        "checked {}, violations {}, inconclusive {}, without witness {}",
        audit.checked,
        audit.violations.len(),
        audit.inconclusive.len(),
        audit.no_witness.len()
    );
    for w in &audit.violations {
        text.push_str(&format!(
            "\nviolation: d = {}, q{} = {}^2 * d, no integral representation",
            r.format_elem(&w.d),
            fmt_elems(r, &w.xprime),
            r.format_elem(&w.t)
        ));
    }
    let code = if !audit.violations.is_empty() {
        EXIT_NEGATIVE
    } else if !audit.inconclusive.is_empty() {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    Ok(Report::new(code, text, audit.to_json(r)))
}

fn local_json(v: &LocalVerdict) -> Value {
    json!({
        "place": v.place.to_string(),
        "represents": v.represents.to_string(),
        "evidence": v.evidence,
        "witness": v.witness.as_ref().map(|w| json!({
            "x": w.x.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "modulus_exponent": w.modulus_exponent,
            "gradient_valuation": w.gradient_valuation,
        })),
    })
}

fn cmd_local(q: &QuadraticForm<Integers>, d: &BigInt, p: Option<u64>, limits: &Limits) -> Result<Report> {
    let verdicts = match p {
        Some(p) => vec![zp_represents_diagonal(q, d, p, limits)?],
        None => {
            let disc: BigInt = q.diagonal_coeffs().ok_or(Error::NotDiagonal)?.iter().product();
            let mut primes: Vec<num_bigint::BigUint> = factor::prime_factors((BigInt::from(2) * d * disc).magnitude());
            primes.sort();
            let mut out = vec![real_represents(q, d)?];
            for p in primes {
                let p: u64 = p.try_into().map_err(|_| Error::Overflow)?;
                out.push(zp_represents_diagonal(q, d, p, limits)?);
            }
            out
        }
    };
    let rows: Vec<String> = verdicts
        .iter()
        .map(|v| format!("{:<8} {:<13} {}", v.place.to_string(), v.represents.to_string(), v.evidence))
        .collect();
    let code = if verdicts.iter().any(|v| v.represents == Verdict::No) {
        EXIT_NEGATIVE
    } else if verdicts.iter().any(|v| v.represents == Verdict::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    Ok(Report::new(code, rows.join("\n"), Value::Array(verdicts.iter().map(local_json).collect())))
}
