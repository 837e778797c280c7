//! `ellog`: exact log-algebraic series identities and special L-values for
//! modular elliptic curves.
//!
//! Exit codes: 0 success, 1 domain error or failed check (the error line
//! carries the module error name), 2 usage error. `--json` swaps the text
//! output for a versioned, byte-deterministic report.

mod registry;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ellog_core::formal::{formal_log_exp, formal_xy, invariant_differential};
use ellog_core::logalg::logalg1a_report;
use ellog_core::selfcheck::{self, Profile, CRITERIA};
use ellog_core::{
    conductor_11_curve, eta_product_coeffs, example_driver, l1_rapid, l1_twisted, modular_xy,
    verify_logalg1a, verify_main_a, verify_main_b, verify_main_b_at, verify_wp_identities,
    BetaPoly, DirichletCharacter, Error, ExampleId, IdentityReport, Rat, Result, TruncatedSeries,
    TwistMode, Verdict,
};
use num_complex::Complex64;

use registry::load_curve;
use report::RunReport;

#[derive(Parser)]
#[command(
    name = "ellog",
    version,
    about = "Exact log-algebraic identities and special L-values on formal groups of modular elliptic curves",
    propagate_version = true
)]
struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Directory of `<name>.curve` registry files.
    #[arg(
        long,
        global = true,
        env = "ELLOG_CURVE_DIR",
        default_value = "curves",
        value_name = "DIR"
    )]
    registry: PathBuf,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect registered curves and their derived invariants.
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// Newform coefficient tables and the parametrization series.
    Modform {
        #[command(subcommand)]
        cmd: ModformCmd,
    },
    /// Check a log-algebraic series identity to a truncation order.
    Verify(VerifyArgs),
    /// Special L-values by rapidly convergent series.
    Lvalue(LvalueArgs),
    /// Run a built-in worked computation end to end.
    Example {
        /// Which computation: the rational multiple (one), the quadratic
        /// twist (two), or the cubic twist (three).
        #[arg(value_parser = ["one", "two", "three", "1", "2", "3"])]
        which: String,
    },
    /// Run the acceptance matrix and print a pass/fail line per criterion.
    Selftest(SelftestArgs),
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Print long coefficients, invariants, and the short model.
    Describe {
        /// builtin:11, a path to a .curve file, or a registry name.
        name: String,
    },
}

#[derive(Subcommand)]
enum ModformCmd {
    /// Print a_1..a_prec of the level's built-in eta-product newform.
    Coeffs {
        #[arg(long, default_value_t = 11)]
        level: u64,
        #[arg(long, env = "ELLOG_PREC", default_value_t = 50)]
        prec: usize,
    },
    /// Print the normalized parameter series Phi(q) of a curve.
    Phi {
        #[arg(long, default_value = "builtin:11")]
        curve: String,
        #[arg(long, env = "ELLOG_PREC", default_value_t = 30)]
        prec: i64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity to check.
    #[arg(long, value_parser = ["logalg1a", "wp", "main-a", "main-b"])]
    identity: String,

    #[arg(long, default_value = "builtin:11")]
    curve: String,

    /// Twist polynomial: comma coefficients from the starting degree, so
    /// "2,2,-4,-4,2,2@1" is 2u + 2u^2 - 4u^3 - 4u^4 + 2u^5 + 2u^6.
    #[arg(long, default_value = "1@1")]
    beta: String,

    /// Truncation order t^prec.
    #[arg(long, env = "ELLOG_PREC", default_value_t = 20)]
    prec: i64,

    /// exact: verify over Q(u); specialize: substitute --at for u (main-b only).
    #[arg(long, default_value = "exact", value_parser = ["exact", "specialize"])]
    mode: String,

    /// Rational value of u for --mode specialize, written n or p/q.
    #[arg(long, default_value = "2")]
    at: String,

    /// Cap the tracked u-degree for main-a (full polynomial ring if omitted).
    #[arg(long, value_name = "N")]
    u_cap: Option<usize>,
}

#[derive(Args)]
struct LvalueArgs {
    #[arg(long, default_value = "builtin:11")]
    curve: String,

    /// Number of series terms (the tail bound is reported).
    #[arg(long, default_value_t = 400)]
    terms: usize,

    #[command(subcommand)]
    twist: Option<TwistCmd>,
}

#[derive(Subcommand)]
enum TwistCmd {
    /// Twisted value L(E, chi, 1) for a built-in character.
    Twist {
        /// quad:<d> for the quadratic character mod |d|, or cubic:7.
        #[arg(long = "char")]
        character: String,
        #[arg(long, default_value_t = 2000)]
        terms: usize,
        #[arg(long, default_value = "builtin:11")]
        curve: String,
    },
}

#[derive(Args)]
struct SelftestArgs {
    /// Run the fast smoke profile at this order instead of the full matrix.
    #[arg(long)]
    prec: Option<i64>,

    /// Corrupt the built-in a_N before the identity check; the run then
    /// demonstrates mutation sensitivity by failing at index N.
    #[arg(long, value_name = "N")]
    corrupt_a: Option<usize>,
}

/// What a handler hands back: human text, machine results, and an error
/// line when the command ran but its check failed.
struct CmdOutput {
    text: String,
    results: Value,
    error: Option<String>,
}

impl CmdOutput {
    fn ok(text: String, results: Value) -> Self {
        CmdOutput {
            text,
            results,
            error: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems exit 2; --help and --version print and exit 0.
            let code = e.exit_code().clamp(0, 255) as u8;
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let echo: Vec<String> = std::env::args().skip(1).collect();
    match dispatch(&cli) {
        Ok(out) => {
            if cli.json {
                let rep = match &out.error {
                    None => RunReport::ok(echo, out.results),
                    Some(e) => RunReport::failed(echo, e.clone(), out.results),
                };
                print!("{}", rep.to_json());
            } else {
                print!("{}", out.text);
                if let Some(e) = &out.error {
                    eprintln!("error: {e}");
                }
            }
            match out.error {
                None => ExitCode::SUCCESS,
                Some(_) => ExitCode::from(1),
            }
        }
        Err(e) => {
            if cli.json {
                print!(
                    "{}",
                    RunReport::failed(echo, e.to_string(), Value::Null).to_json()
                );
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<CmdOutput> {
    let dir = cli.registry.as_path();
    match &cli.cmd {
        Cmd::Curve {
            cmd: CurveCmd::Describe { name },
        } => cmd_curve_describe(name, dir),
        Cmd::Modform {
            cmd: ModformCmd::Coeffs { level, prec },
        } => cmd_modform_coeffs(*level, *prec),
        Cmd::Modform {
            cmd: ModformCmd::Phi { curve, prec },
        } => cmd_modform_phi(curve, *prec, dir),
        Cmd::Verify(args) => cmd_verify(args, dir),
        Cmd::Lvalue(args) => cmd_lvalue(args, dir),
        Cmd::Example { which } => cmd_example(which),
        Cmd::Selftest(args) => cmd_selftest(args),
    }
}

fn fmt_c64(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{} - {}i", z.re, -z.im)
    } else {
        format!("{} + {}i", z.re, z.im)
    }
}

fn json_c64(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn cmd_curve_describe(name: &str, dir: &Path) -> Result<CmdOutput> {
    let spec = load_curve(name, dir)?;
    let m = spec.model()?;
    let coeffs = spec
        .coeffs
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    let text = format!(
        "name        = {}\n\
         coeffs      = {}\n\
         conductor   = {}\n\
         eps         = {}\n\
         source      = {}\n\
         b2, b4, b6  = {}, {}, {}\n\
         c4, c6      = {}, {}\n\
         disc        = {}\n\
         short model : y^2 = x^3 + ({}) x + ({})\n\
         g2, g3      = {}, {}\n",
        spec.name,
        coeffs,
        spec.conductor,
        if spec.eps >= 0 { "+1" } else { "-1" },
        spec.source,
        m.b2,
        m.b4,
        m.b6,
        m.c4,
        m.c6,
        m.disc,
        m.a(),
        m.b(),
        m.g2,
        m.g3,
    );
    let text = format!("{text}registry form:\n{}", spec.to_text());
    let results = json!({
        "kind": "curve",
        "name": spec.name,
        "coeffs": spec.coeffs.to_vec(),
        "conductor": spec.conductor,
        "eps": spec.eps,
        "source": spec.source.to_string(),
        "b2": m.b2.to_string(),
        "b4": m.b4.to_string(),
        "b6": m.b6.to_string(),
        "c4": m.c4.to_string(),
        "c6": m.c6.to_string(),
        "disc": m.disc.to_string(),
        "short_a": m.a().to_string(),
        "short_b": m.b().to_string(),
        "g2": m.g2.to_string(),
        "g3": m.g3.to_string(),
    });
    Ok(CmdOutput::ok(text, results))
}

fn cmd_modform_coeffs(level: u64, prec: usize) -> Result<CmdOutput> {
    let nf = eta_product_coeffs(level, prec)?;
    let list: Vec<i64> = (1..=prec).map(|n| nf.a(n)).collect();
    let mut text = String::new();
    for (i, a) in list.iter().enumerate() {
        text.push_str(&format!("a_{} = {}\n", i + 1, a));
    }
    let results = json!({
        "kind": "modform-coeffs",
        "level": level,
        "a": list,
    });
    Ok(CmdOutput::ok(text, results))
}

fn series_coeff_rows(s: &TruncatedSeries<Rat>) -> Value {
    let rows: Vec<Value> = (s.val()..s.prec())
        .map(|k| json!([k, s.coeff(k).to_string()]))
        .collect();
    Value::Array(rows)
}

fn cmd_modform_phi(curve: &str, prec: i64, dir: &Path) -> Result<CmdOutput> {
    let spec = load_curve(curve, dir)?;
    let m = spec.model()?;
    let nf = spec.coefficients((prec + 8).max(16) as usize)?;
    let ps = modular_xy(&nf, &m, prec)?;
    // The solve pads a few orders past the request; report only what was asked.
    let phi = ps.phi.truncated(prec);
    let text = format!("Phi(q) = {}\n", phi);
    let results = json!({
        "kind": "modform-phi",
        "curve": spec.name,
        "order": prec,
        "phi": series_coeff_rows(&phi),
    });
    Ok(CmdOutput::ok(text, results))
}

fn cmd_verify(args: &VerifyArgs, dir: &Path) -> Result<CmdOutput> {
    let spec = load_curve(&args.curve, dir)?;
    let m = spec.model()?;
    let beta = BetaPoly::parse(&args.beta)?;
    // The verifiers pad internally by up to 4 orders and the solve needs a
    // few coefficients beyond that.
    let nf = spec.coefficients((args.prec + 16).max(24) as usize)?;
    let rep: IdentityReport = match (args.identity.as_str(), args.mode.as_str()) {
        ("logalg1a", "exact") => verify_logalg1a(&nf, &m, args.prec)?,
        ("wp", "exact") => verify_wp_identities(&nf, &m, args.prec)?,
        ("main-a", "exact") => verify_main_a(&beta, &nf, &m, args.prec, args.u_cap)?,
        ("main-b", "exact") => verify_main_b(&beta, &nf, &m, args.prec)?,
        ("main-b", "specialize") => {
            let u = Rat::from_str(args.at.trim())
                .map_err(|e| Error::ParseError(format!("--at {}: {e}", args.at)))?;
            verify_main_b_at(&beta, &nf, &m, args.prec, &u)?
        }
        (id, _) => {
            return Err(Error::ParseError(format!(
                "--mode specialize applies to main-b, not {id}"
            )))
        }
    };
    let text = format!(
        "identity = {}\ncurve    = {}\norder    = {}\nverdict  = {}\nelapsed  = {} ms\n",
        rep.id, spec.name, rep.order, rep.verdict, rep.millis
    );
    let results = json!({
        "kind": "verify",
        "identity": rep.id,
        "curve": spec.name,
        "order": rep.order,
        "verdict": serde_json::to_value(&rep.verdict).expect("plain data"),
    });
    let error = match &rep.verdict {
        Verdict::Fails { .. } => Some(format!("verify {}: {}", rep.id, rep.verdict)),
        _ => None,
    };
    Ok(CmdOutput {
        text,
        results,
        error,
    })
}

fn parse_character(s: &str) -> Result<(DirichletCharacter, TwistMode, String)> {
    match s.split_once(':') {
        Some(("quad", d)) => {
            let d: i64 = d
                .trim()
                .parse()
                .map_err(|_| Error::ParseError(format!("bad quadratic discriminant in {s}")))?;
            let chi = DirichletCharacter::quadratic(d.unsigned_abs())?;
            Ok((chi, TwistMode::Quadratic, format!("quad:{d}")))
        }
        Some(("cubic", m)) if m.trim() == "7" => Ok((
            DirichletCharacter::cubic_mod_7(),
            TwistMode::General,
            "cubic:7".into(),
        )),
        Some(("cubic", m)) => Err(Error::BadTwist(format!(
            "only the modulus-7 cubic character ships built in, got cubic:{m}"
        ))),
        _ => Err(Error::ParseError(format!(
            "expected quad:<d> or cubic:7, got {s}"
        ))),
    }
}

fn cmd_lvalue(args: &LvalueArgs, dir: &Path) -> Result<CmdOutput> {
    match &args.twist {
        None => {
            let spec = load_curve(&args.curve, dir)?;
            let nf = spec.coefficients(args.terms)?;
            let l = l1_rapid(&nf, spec.conductor, spec.eps, args.terms)?;
            let text = format!(
                "L(E, 1)       = {}\ntail estimate <= {:e}\nterms         = {}\neps           = {:+}\n",
                fmt_c64(l.value),
                l.tail_estimate,
                l.terms,
                spec.eps
            );
            let results = json!({
                "kind": "lvalue",
                "curve": spec.name,
                "eps": spec.eps,
                "terms": l.terms,
                "value": json_c64(l.value),
                "tail_estimate": l.tail_estimate,
            });
            Ok(CmdOutput::ok(text, results))
        }
        Some(TwistCmd::Twist {
            character,
            terms,
            curve,
        }) => {
            let spec = load_curve(curve, dir)?;
            let nf = spec.coefficients(*terms)?;
            let (chi, mode, label) = parse_character(character)?;
            let l = l1_twisted(&nf, spec.conductor, &chi, mode, *terms)?;
            let text = format!(
                "L(E, chi, 1)  = {}\ncharacter     = {}\ntail estimate <= {:e}\nterms         = {}\n",
                fmt_c64(l.value),
                label,
                l.tail_estimate,
                l.terms
            );
            let results = json!({
                "kind": "lvalue-twist",
                "curve": spec.name,
                "char": label,
                "terms": l.terms,
                "value": json_c64(l.value),
                "tail_estimate": l.tail_estimate,
            });
            Ok(CmdOutput::ok(text, results))
        }
    }
}

fn cmd_example(which: &str) -> Result<CmdOutput> {
    let id: ExampleId = which.parse()?;
    let rep = example_driver(id)?;
    let text = rep.to_string();
    let mut results = serde_json::to_value(&rep).expect("plain data");
    if let Value::Object(map) = &mut results {
        map.insert("kind".into(), json!("example"));
        map.insert("which".into(), json!(id.to_string()));
    }
    Ok(CmdOutput::ok(text, results))
}

/// The mutation demonstration: a corrupted harmonic side against the
/// pristine parametrization must make logalg1a fail at exactly t^n.
fn corruption_row(n: usize, profile: &Profile) -> Result<String> {
    if n < 2 {
        return Err(Error::ParseError(
            "--corrupt-a needs an index >= 2 (a_1 = 1 is structural)".into(),
        ));
    }
    let c = conductor_11_curve();
    let prec = profile.identity_prec.max(n as i64 + 2);
    let nf = eta_product_coeffs(11, prec as usize + 8)?;
    let bad = selfcheck::corrupted(&nf, n);
    let ps = modular_xy(&nf, &c, prec)?;
    let (x, y) = formal_xy(&c, prec);
    let (_, exp) = formal_log_exp(&invariant_differential(&x, &y))?;
    let rep = logalg1a_report(&exp, &bad.lambda_series(prec)?, &ps.phi, prec)?;
    match &rep.verdict {
        Verdict::Fails { .. } => Err(Error::ExampleCheckFailed {
            quantity: format!("logalg1a with corrupted a_{n}"),
            got: rep.verdict.to_string(),
            want: "holds".into(),
        }),
        v => Err(Error::ExampleCheckFailed {
            quantity: format!("mutation sensitivity for corrupted a_{n}"),
            got: format!("verdict {v} — the corruption went undetected"),
            want: "a failure at the corrupted index".into(),
        }),
    }
}

fn cmd_selftest(args: &SelftestArgs) -> Result<CmdOutput> {
    let profile = match args.prec {
        Some(p) => Profile::fast(p),
        None => Profile::full(),
    };
    let mut rows: Vec<(String, std::result::Result<String, String>, u128)> = Vec::new();
    if let Some(n) = args.corrupt_a {
        let started = Instant::now();
        let outcome = corruption_row(n, &profile).map_err(|e| e.to_string());
        rows.push((
            format!("mutation-demo(a_{n})"),
            outcome,
            started.elapsed().as_millis(),
        ));
    }
    for name in CRITERIA {
        let started = Instant::now();
        let outcome = selfcheck::run(name, &profile).map_err(|e| e.to_string());
        rows.push((name.to_string(), outcome, started.elapsed().as_millis()));
    }

    let mut text = String::new();
    let mut matrix = Vec::new();
    let mut failed = 0usize;
    for (name, outcome, ms) in &rows {
        match outcome {
            Ok(detail) => {
                text.push_str(&format!("PASS {name} [{ms} ms] {detail}\n"));
                matrix.push(json!({"name": name, "status": "pass", "detail": detail}));
            }
            Err(e) => {
                failed += 1;
                text.push_str(&format!("FAIL {name} [{ms} ms] {e}\n"));
                matrix.push(json!({"name": name, "status": "fail", "detail": e}));
            }
        }
    }
    text.push_str(&format!(
        "{} of {} checks passed\n",
        rows.len() - failed,
        rows.len()
    ));
    let results = json!({
        "kind": "selftest",
        "profile": if args.prec.is_some() { "fast" } else { "full" },
        "matrix": matrix,
    });
    let error = if failed > 0 {
        Some(format!("selftest: {failed} of {} checks failed", rows.len()))
    } else {
        None
    };
    Ok(CmdOutput {
        text,
        results,
        error,
    })
}
