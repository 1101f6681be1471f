use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fdsg::algebra::{coproduct, convolve, duality_check, Polynomial};
use fdsg::analytic::{chen_check, zeta, IdentityCheck};
use fdsg::checks::{check_all, DEFAULT_BOUND};
use fdsg::ddl::{ddl_mul, fd_criterion_check, fig1_system, load_ddl, validate_system_seeded, DdlSystem};
use fdsg::element::{parse_composition, parse_word};
use fdsg::qshuffle::Product;
use fdsg::structure::{peel, rebuild_as_ddl, verify_structure_theorem};
use fdsg::{builtin, Error, FiniteTable, SemigroupHandle};

mod json;

#[derive(Parser)]
#[command(name = "fdsg", version, about = "Finite decomposition semigroups: products, coproducts, limits, peeling")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Quasi-shuffle product of two words (or polynomials of words).
    Qs {
        /// shuffle | stuffle | diamond | ldiag
        product: Product,
        /// Left operand, e.g. `x0 x1`, `2,3`, `2/1,3/0`, `[x1^2][x1]` or a sum of such words.
        u: String,
        /// Right operand.
        v: String,
    },
    /// Coproduct of an element or polynomial.
    Coprod {
        /// Builtin name (`nat-plus`, `zmul-6`, `t3`, ...) or `table:<path>`.
        #[arg(long, short)]
        semigroup: String,
        /// Element or polynomial such as `2 + 3*5`.
        input: String,
    },
    /// Both sides of <P.Q|R> = <P (x) Q|Delta(R)>.
    Dual {
        /// Builtin name or `table:<path>`.
        #[arg(long, short)]
        semigroup: String,
        p: String,
        q: String,
        r: String,
    },
    /// Convolution of two finitely supported functions, written as polynomials.
    Conv {
        /// Builtin name or `table:<path>`.
        #[arg(long, short)]
        semigroup: String,
        f: String,
        g: String,
    },
    /// Disjoint direct limits.
    Ddl {
        #[command(subcommand)]
        command: DdlCommand,
    },
    /// Peel a finite semigroup (table file or builtin name) into group layers.
    Peel {
        /// Path of a `.table` file, or a builtin name.
        target: String,
        /// Check every claim about the layers exhaustively.
        #[arg(long)]
        verify: bool,
        /// Rebuild the semigroup as a limit of its layers.
        #[arg(long)]
        rebuild: bool,
    },
    /// Li_u(z) Li_v(z) against the shuffle expansion.
    Chen {
        /// Word over x0, x1 ending in x1 (or empty).
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Evaluation point in (0, 1).
        #[arg(long, default_value_t = 0.5)]
        z: f64,
        /// Truncation order of the series.
        #[arg(long = "N", default_value_t = 2000)]
        n: usize,
        /// Allowed difference on top of both truncation bounds.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Multiple zeta value by truncated nested sum.
    Zeta {
        /// Composition such as `2,1`.
        s: String,
        /// Truncation order of the outer sum.
        #[arg(long = "N", default_value_t = 100_000)]
        n: usize,
    },
    /// Run every module's invariant suite.
    Check {
        /// Radius of the sweeps over infinite semigroups, word lengths and weights.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        /// Seed of the sampled checks; printed with the report.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra directory of `*.table` and `*.ddl` fixtures.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DdlCommand {
    /// Validate a description file and check the decomposition criterion.
    Check {
        /// A `.ddl` description file.
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the checks on a built-in system.
    Demo {
        system: Demo,
        #[arg(long, default_value_t = 12)]
        bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Multiply two elements `(label|value)` of a described system.
    Mul { file: PathBuf, x: String, y: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    Fig1,
}

/// What a command produced: text, its JSON form, and whether it passed.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => emit(&out.text),
                Format::Json => emit(&serde_json::to_string_pretty(&out.json).expect("json")),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            let code = exit_code(&e);
            match cli.format {
                Format::Text => {
                    eprintln!("error: {e}");
                    eprintln!("hint: {}", remedy(&e));
                }
                Format::Json => emit(
                    &serde_json::to_string_pretty(&json!({
                        "error": {"kind": e.kind(), "message": e.to_string(), "hint": remedy(&e)},
                        "exit": code,
                    }))
                    .expect("json"),
                ),
            }
            ExitCode::from(code)
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

/// 2 for malformed input, 1 for well-formed input that fails.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::UnknownSemigroup(_)
        | Error::Io { .. }
        | Error::MalformedTable { .. }
        | Error::MalformedDdl { .. }
        | Error::NonAssociative { .. }
        | Error::LetterDomain(_)
        | Error::Domain(_)
        | Error::NotAnalytic(_)
        | Error::DivergentIndex(_)
        | Error::ElementNotInCarrier { .. }
        | Error::MixedSemigroup(_) => 2,
        _ => 1,
    }
}

fn remedy(e: &Error) -> &'static str {
    match e {
        Error::UnknownSemigroup(_) => {
            "use nat-plus, nat-monoid, mon-plus, mon, mon-laurent, zmul-N, zadd-N, min-chain-N, left-zero-N, t1..t4 or table:<path>"
        }
        Error::NonFiniteDecomposition { .. } => "coproducts and convolutions need a finite decomposition semigroup",
        Error::Io { .. } => "check the path",
        Error::MalformedTable { .. } | Error::NonAssociative { .. } => {
            "a table is a header of names followed by one row of products per element"
        }
        Error::MalformedDdl { .. } => "lines are `label`, `order`, `join` or `morphism` directives",
        Error::NotAnalytic(_) => "words must be nonempty over x0, x1 and end in x1",
        Error::DivergentIndex(_) => "zeta needs a first entry of at least 2",
        Error::NonEmptyTerminal { .. } => "rebuild only applies when peeling exhausts the semigroup",
        Error::ElementNotInCarrier { .. } => "write elements in the canonical form printed by the tool",
        _ => "see `fdsg <command> --help`",
    }
}

fn semigroup(name: &str) -> Result<SemigroupHandle, Error> {
    builtin(name)
}

fn poly(s: &SemigroupHandle, text: &str) -> Result<Polynomial, Error> {
    Polynomial::parse(text, |t| s.parse_element(t))
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Qs { product, u, v } => {
            let p = Polynomial::parse(&u, |t| product.parse_word(t))?;
            let q = Polynomial::parse(&v, |t| product.parse_word(t))?;
            let r = product.apply_poly(&p, &q)?;
            Ok(Outcome::ok(
                r.to_string(),
                json!({"command": "qs", "product": product.name(), "u": p.to_string(), "v": q.to_string(), "result": json::polynomial(&r)}),
            ))
        }
        Command::Coprod { semigroup: name, input } => {
            let s = semigroup(&name)?;
            let p = poly(&s, &input)?;
            let d = coproduct(&*s, &p)?;
            Ok(Outcome::ok(
                d.to_string(),
                json!({"command": "coprod", "semigroup": s.name(), "input": p.to_string(), "result": json::tensor(&d)}),
            ))
        }
        Command::Dual { semigroup: name, p, q, r } => {
            let s = semigroup(&name)?;
            let (p, q, r) = (poly(&s, &p)?, poly(&s, &q)?, poly(&s, &r)?);
            let o = duality_check(&*s, &p, &q, &r)?;
            let text = format!(
                "<P.Q|R> = {}\n<P(x)Q|Delta(R)> = {}\n{}",
                o.product_side,
                o.coproduct_side,
                if o.holds() { "PASS" } else { "FAIL" }
            );
            Ok(Outcome {
                text,
                json: json!({
                    "command": "dual", "semigroup": s.name(),
                    "product_side": o.product_side.to_string(), "coproduct_side": o.coproduct_side.to_string(),
                    "passed": o.holds(),
                }),
                ok: o.holds(),
            })
        }
        Command::Conv { semigroup: name, f, g } => {
            let s = semigroup(&name)?;
            let (f, g) = (poly(&s, &f)?, poly(&s, &g)?);
            let h = convolve(&*s, &f, &g)?;
            Ok(Outcome::ok(
                h.to_string(),
                json!({"command": "conv", "semigroup": s.name(), "result": json::polynomial(&h)}),
            ))
        }
        Command::Ddl { command } => run_ddl(command),
        Command::Peel { target, verify, rebuild } => run_peel(&target, verify, rebuild),
        Command::Chen { u, v, z, n, tol } => {
            let c = chen_check(&parse_word(&u), &parse_word(&v), z, n, tol)?;
            Ok(identity(c, "chen"))
        }
        Command::Zeta { s, n } => {
            let s = parse_composition(&s)?;
            let e = zeta(&s, n)?;
            let label = fdsg::Element::Composition(s).to_string();
            Ok(Outcome::ok(
                format!("zeta{label} = {e}"),
                json!({"command": "zeta", "s": label, "N": n, "value": e.value, "error_bound": e.error_bound}),
            ))
        }
        Command::Check { bound, seed, fixtures } => {
            let r = check_all(bound, seed, fixtures.as_deref());
            Ok(Outcome {
                text: r.to_string(),
                json: json::suite(&r),
                ok: r.passed(),
            })
        }
    }
}

fn identity(c: IdentityCheck, command: &str) -> Outcome {
    let json = json::identity(&c, command);
    Outcome {
        text: c.to_string(),
        ok: c.passed(),
        json,
    }
}

fn run_ddl(command: DdlCommand) -> Result<Outcome, Error> {
    match command {
        DdlCommand::Check { file, bound, seed } => {
            let sys = load_ddl(&file)?;
            ddl_report(&sys, bound, seed, Vec::new())
        }
        DdlCommand::Demo { system: Demo::Fig1, bound, seed } => {
            let sys = fig1_system();
            let mut products = Vec::new();
            for (x, y) in [("(1|3)", "(2|4)"), ("(0|2)", "(3|5)"), ("(2|3)", "(2|2)")] {
                let (a, b) = (sys.parse_element(x)?, sys.parse_element(y)?);
                products.push((a.clone(), b.clone(), ddl_mul(&sys, &a, &b)?));
            }
            ddl_report(&sys, bound, seed, products)
        }
        DdlCommand::Mul { file, x, y } => {
            let sys = load_ddl(&file)?;
            let (a, b) = (sys.parse_element(&x)?, sys.parse_element(&y)?);
            let p = ddl_mul(&sys, &a, &b)?;
            Ok(Outcome::ok(
                p.to_string(),
                json!({"command": "ddl mul", "system": sys.name(), "x": a.to_string(), "y": b.to_string(), "result": p.to_string()}),
            ))
        }
    }
}

fn ddl_report(
    sys: &DdlSystem,
    bound: usize,
    seed: u64,
    products: Vec<(fdsg::Element, fdsg::Element, fdsg::Element)>,
) -> Result<Outcome, Error> {
    let v = validate_system_seeded(sys, bound, seed);
    let c = fd_criterion_check(sys, bound)?;
    let mut text = String::new();
    for (a, b, p) in &products {
        text.push_str(&format!("{a} * {b} = {p}\n"));
    }
    text.push_str(&format!("{v}\n{c}"));
    let text = text.trim_end().to_string();
    Ok(Outcome {
        json: json!({
            "command": "ddl",
            "system": sys.name(),
            "seed": seed,
            "products": products.iter().map(|(a, b, p)| json!({"x": a.to_string(), "y": b.to_string(), "result": p.to_string()})).collect::<Vec<_>>(),
            "validation": json::report(&v),
            "criterion": json::criterion(&c),
        }),
        ok: v.passed() && c.passed(),
        text,
    })
}

fn load_target(target: &str) -> Result<SemigroupHandle, Error> {
    let path = Path::new(target);
    if path.is_file() {
        Ok(Arc::new(FiniteTable::load(path)?))
    } else {
        builtin(target)
    }
}

fn run_peel(target: &str, verify: bool, rebuild: bool) -> Result<Outcome, Error> {
    let s = load_target(target)?;
    let result = peel(&s)?;
    let mut text = result.to_string().trim_end().to_string();
    let mut json = json::peeling(&result);
    let mut ok = true;
    if verify {
        let r = verify_structure_theorem(&s)?;
        text.push_str(&format!("\n{r}"));
        json["verify"] = json::report(&r);
        ok &= r.passed();
    }
    if rebuild {
        let (sys, r) = rebuild_as_ddl(&result)?;
        text.push_str(&format!("\nrebuilt as {} over a chain of {} label(s)\n{r}", sys.name(), result.layers.len()));
        json["rebuild"] = json::report(&r);
        ok &= r.passed();
    }
    Ok(Outcome { text, json, ok })
}
