use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use decat::blm::{self, BlmElement};
use decat::bubbles;
use decat::currentalg::{self, GarlandElement};
use decat::hochschild::{self as hc, FinLinCat};
use decat::suites::{self, Bounds};
use decat::symfunc::{self, Partition, QuasiIndex, Straightened, SymElement};
use decat::tracecat::{self, TraceElement};
use decat::vpres::{self, VElement};
use decat::{Error, Result};

#[derive(Parser)]
#[command(name = "decat", version, about = "Exact computations in the trace and current-algebra decategorifications of quantum sl2")]
struct Cli {
    /// emit JSON (default)
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// emit human-readable text
    #[arg(long, global = true)]
    text: bool,
    /// seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Group,
}

#[derive(Subcommand)]
enum Group {
    /// Symmetric functions in the Schur basis
    #[command(subcommand)]
    Sym(SymCmd),
    /// Idempotented quantum sl2 in the canonical basis
    #[command(subcommand)]
    Blm(BlmCmd),
    /// Bubbles and the center of 1_n
    #[command(subcommand)]
    Bubbles(BubblesCmd),
    /// The integral current algebra in the Garland basis
    #[command(subcommand)]
    Current(CurrentCmd),
    /// The trace category
    #[command(subcommand)]
    Trace(TraceCmd),
    /// Rewriting in the thick-calculus presentation
    #[command(subcommand)]
    Vpres(VpresCmd),
    /// Hochschild homology of finite linear categories
    #[command(subcommand)]
    Hh(HhCmd),
}

#[derive(Subcommand)]
enum SymCmd {
    /// Product of two elements, each a JSON list of partitions or of {partition, coeff} terms
    Mul { x: String, y: String },
    /// Straighten a sequence of integers to ± a Schur function or zero
    Straighten { entries: String },
    /// Wedge product of elements of Sym_a and Sym_b
    Wedge {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        x: String,
        y: String,
    },
    /// Schur expansion of a product of generators such as `e2 h1 p3 e2,1`
    Schur { word: String },
}

#[derive(Subcommand)]
enum BlmCmd {
    /// Product of two words such as `E F^(2)`, the second acting first on 1_n
    Mul {
        x: String,
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Gaussian binomial [m choose j]
    Qbinom {
        #[arg(allow_hyphen_values = true)]
        m: i64,
        j: usize,
    },
}

#[derive(Subcommand)]
enum BubblesCmd {
    /// Real and fake bubbles b-(h_m) 1_n for m up to --deg
    Series {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 6)]
        deg: usize,
    },
    /// The alternating sum Σ (-1)^(m-l) l h_l e_(m-l), which equals p_m
    Identity {
        #[arg(long)]
        m: i64,
    },
}

#[derive(Subcommand)]
enum CurrentCmd {
    /// Garland normal form of a word such as `E0 F1^(2) H2`
    Nf {
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Product x·y with y acting first on 1_n
    Mul {
        x: String,
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Garland basis words from 1_n to 1_m up to a loop degree
    Basis {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        deg: usize,
        #[arg(long, default_value_t = 2)]
        max_f: usize,
    },
    /// Image of a word under E_i ↔ F_i, H_i ↦ -H_i
    Phi {
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
}

#[derive(Subcommand)]
enum TraceCmd {
    /// Composite x∘y of two trace elements given as JSON (or @file)
    Compose { x: String, y: String },
    /// Graded dimensions of the space from 1_n to 1_m
    Dims {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        deg: usize,
        #[arg(long, default_value_t = 3)]
        max_b: usize,
    },
    /// Image of a trace element in the current algebra
    Tocurrent { x: String },
    /// Run a named verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    /// bound overrides as key=value
    #[arg(long = "bound")]
    bounds: Vec<String>,
}

#[derive(Subcommand)]
enum VpresCmd {
    /// Normal form of a word such as `t1 u0 d(2,1) dp(1) b(1)` starting at the thick pair (b,a)
    Nf {
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        a: usize,
    },
    /// Degreewise counts of normal forms next to the diagram enumeration
    Dims {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
        #[arg(long)]
        deg: i64,
    },
}

#[derive(Subcommand)]
enum HhCmd {
    /// Hochschild homology of a category given as JSON
    Compute {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 5)]
        maxdeg: usize,
    },
}

/// A command result: the JSON payload and its text rendering.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), ok: true }
    }
}

/// Inline JSON, or the contents of a file when prefixed by `@`.
fn read_json(arg: &str) -> Result<Value> {
    let s = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?,
        None => arg.to_string(),
    };
    Ok(serde_json::from_str(&s)?)
}

fn partition(v: &Value) -> Result<Partition> {
    let parts: Vec<i64> = serde_json::from_value(v.clone())?;
    Partition::try_new(&parts)
}

/// A list of partitions (each with coefficient one), a list of terms, or a single partition.
fn sym_element(arg: &str) -> Result<SymElement> {
    let v = read_json(arg)?;
    let items = v.as_array().ok_or_else(|| Error::Parse(format!("`{arg}` is not a JSON array")))?;
    if items.iter().all(Value::is_number) {
        return Ok(SymElement::schur(partition(&v)?));
    }
    if items.iter().all(Value::is_object) {
        return SymElement::from_json(&v);
    }
    let mut out = SymElement::zero();
    for item in items {
        out = &out + &SymElement::schur(partition(item)?);
    }
    Ok(out)
}

fn blm_word(s: &str, n: i64) -> Result<BlmElement> {
    Ok(blm::normalize(&blm::parse_word(s)?, n))
}

fn garland_word(s: &str, n: i64) -> Result<GarlandElement> {
    currentalg::normal_form(&currentalg::parse_word(s)?, n)
}

fn trace_element(arg: &str) -> Result<TraceElement> {
    TraceElement::from_json(&read_json(arg)?)
}

fn velement_json(x: &VElement) -> Value {
    let terms: Vec<Value> = x
        .iter()
        .map(|(w, c)| {
            let word: Vec<String> = w.iter().map(ToString::to_string).collect();
            json!({"word": word.join(" "), "coeff": c.to_string()})
        })
        .collect();
    json!({"n": x.n, "source": [x.source.0, x.source.1], "target": [x.target.0, x.target.1], "terms": terms})
}

fn run(cli: &Cli) -> Result<Output> {
    Ok(match &cli.command {
        Group::Sym(cmd) => match cmd {
            SymCmd::Mul { x, y } => {
                let z = &sym_element(x)? * &sym_element(y)?;
                Output::new(z.to_json(), z.to_string())
            }
            SymCmd::Straighten { entries } => {
                let e: Vec<i64> = serde_json::from_value(read_json(entries)?)?;
                match symfunc::straighten(&QuasiIndex::new(e)?) {
                    Straightened::Zero => Output::new(json!({"sign": 0, "partition": null}), "0"),
                    Straightened::Signed(s, p) => {
                        let sign = if s < 0 { "-" } else { "" };
                        Output::new(json!({"sign": s, "partition": p.parts()}), format!("{sign}s{p}"))
                    }
                }
            }
            SymCmd::Wedge { a, b, x, y } => {
                let z = symfunc::wedge(*a, *b, &sym_element(x)?, &sym_element(y)?)?;
                Output::new(z.to_json(), z.to_string())
            }
            SymCmd::Schur { word } => {
                let z = symfunc::to_schur(&symfunc::parse_word(word)?)?;
                Output::new(z.to_json(), z.to_string())
            }
        },
        Group::Blm(cmd) => match cmd {
            BlmCmd::Mul { x, y, n } => {
                let y = blm_word(y, *n)?;
                let z = blm_word(x, y.target())?.mul(&y)?;
                Output::new(z.to_json(), z.to_string())
            }
            BlmCmd::Qbinom { m, j } => {
                let p = blm::gauss_binom(*m, *j);
                Output::new(serde_json::to_value(blm::LaurentJson::from(&p))?, p.to_string())
            }
        },
        Group::Bubbles(cmd) => match cmd {
            BubblesCmd::Series { n, deg } => {
                let series = bubbles::fake_bubble_series(*n, *deg);
                let text: Vec<String> = series.iter().enumerate().map(|(m, x)| format!("b-(h{m}) 1_{n} = {}", x.value)).collect();
                Output::new(Value::Array(series.iter().map(|x| x.to_json()).collect()), text.join("\n"))
            }
            BubblesCmd::Identity { m } => {
                let z = bubbles::commutator_identity(*m)?;
                Output::new(z.to_json(), z.to_string())
            }
        },
        Group::Current(cmd) => match cmd {
            CurrentCmd::Nf { word, n } => {
                let z = garland_word(word, *n)?;
                Output::new(z.to_json(), z.to_string())
            }
            CurrentCmd::Mul { x, y, n } => {
                let y = garland_word(y, *n)?;
                let z = garland_word(x, y.target())?.mul(&y)?;
                Output::new(z.to_json(), z.to_string())
            }
            CurrentCmd::Basis { n, m, deg, max_f } => {
                let words = currentalg::enumerate_basis(*n, *m, *deg, *max_f)?;
                let text: Vec<String> = words.iter().map(ToString::to_string).collect();
                Output::new(json!(text), text.join("\n"))
            }
            CurrentCmd::Phi { word, n } => {
                let z = garland_word(word, *n)?.apply_phi_automorphism()?;
                Output::new(z.to_json(), z.to_string())
            }
        },
        Group::Trace(cmd) => match cmd {
            TraceCmd::Compose { x, y } => {
                let z = tracecat::compose(&trace_element(x)?, &trace_element(y)?)?;
                Output::new(z.to_json(), z.to_string())
            }
            TraceCmd::Dims { n, m, deg, max_b } => {
                let mut rows = Vec::new();
                let mut text = Vec::new();
                for d in 0..=*deg {
                    let dim = tracecat::graded_dim(*n, *m, d as i64, *max_b)?;
                    rows.push(json!({"degree": 2 * d, "dim": dim}));
                    text.push(format!("{:>4} {dim}", 2 * d));
                }
                Output::new(json!({"n": n, "m": m, "max_b": max_b, "dims": rows}), text.join("\n"))
            }
            TraceCmd::Tocurrent { x } => {
                let z = tracecat::to_current(&trace_element(x)?)?;
                Output::new(z.to_json(), z.to_string())
            }
            TraceCmd::Verify(v) => {
                let mut bounds = Bounds::parse(&v.bounds)?;
                if cli.seed != 0 {
                    bounds = bounds.set("seed", cli.seed as i64);
                }
                let r = suites::run_suite(&v.suite, &bounds)?;
                Output { json: r.to_json(), text: r.to_string(), ok: r.passed() }
            }
        },
        Group::Vpres(cmd) => match cmd {
            VpresCmd::Nf { word, n, b, a } => {
                let x = VElement::word(*n, (*b, *a), vpres::parse_word(word)?)?;
                let z = vpres::normal_form(&x)?;
                Output::new(velement_json(&z), z.to_string())
            }
            VpresCmd::Dims { n, a, b, delta, deg } => {
                let forms = vpres::enumerate_forms(*n, *a, *b, *delta, *deg)?;
                let diagrams = vpres::enumerate_bplus(*n, *a, *b, *delta, *deg);
                let mut rows = Vec::new();
                let mut text = Vec::new();
                for d in forms.keys().chain(diagrams.keys()).copied().collect::<std::collections::BTreeSet<_>>() {
                    let (f, g) = (forms.get(&d).copied().unwrap_or(0), diagrams.get(&d).copied().unwrap_or(0));
                    rows.push(json!({"degree": d, "normal_forms": f, "diagrams": g}));
                    text.push(format!("{d:>4} {f} {g}"));
                }
                Output { json: json!(rows), text: text.join("\n"), ok: forms == diagrams }
            }
        },
        Group::Hh(HhCmd::Compute { input, maxdeg }) => {
            let s = std::fs::read_to_string(input).map_err(|e| Error::Parse(format!("{input}: {e}")))?;
            let c = FinLinCat::from_json_str(&s)?;
            let groups = hc::hh(&c, *maxdeg)?;
            let text: Vec<String> = groups.iter().enumerate().map(|(i, g)| format!("HH_{i} = {g}")).collect();
            Output::new(serde_json::to_value(&groups)?, text.join("\n"))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.text {
                println!("{}", out.text.trim_end());
            } else {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
