//! Command-line surface: one command per module operation.
//!
//! Reports are `key: value` lines, or one JSON object with `--json`. Every
//! rational is printed exactly. Exit status is 0 on success, 1 on a domain
//! error and 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::complex::{dualize, format_dims, validate, FloerData, GradedDims, DUAL_CONSTANT};
use crate::connect_sum::{
    accepted_sign_configs, connected_sum_complex, disjoint_union_complex, kernel_symmetry_check,
    verify_pair_bound, verify_sum_bound, BoundFactor, ConnectSumComplex, Shape,
};
use crate::error::{Error, Result};
use crate::fixtures::{
    builtin_with, catalogue, format_rational, nilpotent_ladder, parse, serialize, FixtureName,
};
use crate::homology::{homology, reduce_to_homology};
use crate::invariants::{h_of, phi, phi_functional};
use crate::lattice::{eta, is_extremal, min_charge_k, norm, parse_class, AllPlus, SignRule};
use crate::linalg::{is_zero_vector, rat, zero_vector, Rational, Vector};
use crate::polyid::{verify_telescoping, verify_triple_identity};
use crate::random::{change_of_basis, random_floer_data, rng};

/// Each command with the library operation it wraps.
pub const COMMANDS: &[(&str, &str)] = &[
    ("validate", "complex::validate"),
    ("homology", "homology::homology"),
    ("reduce", "homology::reduce_to_homology"),
    ("dualize", "complex::dualize"),
    ("connect-sum", "connect_sum::connected_sum_complex"),
    ("disjoint-union", "connect_sum::disjoint_union_complex"),
    ("phi", "invariants::phi"),
    ("h", "invariants::h_of"),
    ("eta", "lattice::eta"),
    ("extremal", "lattice::is_extremal"),
    ("verify-sum-bound", "connect_sum::verify_sum_bound"),
    ("poly-identities", "polyid::verify_telescoping"),
    ("fixtures", "fixtures::catalogue"),
];

#[derive(Parser, Debug)]
#[command(
    name = "floer-workbench",
    about = "Exact computations with Floer-type chain data",
    version
)]
struct Cli {
    /// Emit one JSON object instead of key: value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Built-in fixture, e.g. Pplus or nPplusModel(3).
    #[arg(long, conflicts_with_all = ["file", "random"])]
    fixture: Option<String>,
    /// Data file in the [kind]/[generators]/... format.
    #[arg(long, conflicts_with = "random")]
    file: Option<String>,
    /// Random valid data on this many generators.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// The free entry u(rho0) of the P+ and P- fixtures.
    #[arg(long, default_value = "0")]
    u_rho0: String,
}

#[derive(Args, Debug, Clone)]
struct PairInput {
    #[arg(long, conflicts_with = "a_file")]
    a: Option<String>,
    #[arg(long)]
    a_file: Option<String>,
    #[arg(long, conflicts_with = "b_file")]
    b: Option<String>,
    #[arg(long)]
    b_file: Option<String>,
    #[arg(long, default_value = "0")]
    u_rho0: String,
    /// Report graded homology dimensions of the total complex.
    #[arg(long)]
    homology: bool,
    /// Also list how many sign configurations square to zero.
    #[arg(long)]
    sign_family: bool,
}

#[derive(Args, Debug, Clone)]
struct LatticeInput {
    #[arg(long, default_value_t = 1)]
    blocks: usize,
    /// `w0`, `w0^n`, `0^n` or 8n comma-separated coordinates.
    #[arg(long, default_value = "w0", allow_hyphen_values = true)]
    class: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    /// Iterate a functional (class read as a dual vector).
    Plus,
    /// Iterate a vector.
    Minus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignRuleName {
    Plus,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every structural invariant.
    Validate(Input),
    /// Graded homology of the underlying complex.
    Homology(Input),
    /// Descend u, δ, δ′ to homology.
    Reduce(Input),
    /// Dual data, degrees k ↦ c − k.
    Dualize {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DUAL_CONSTANT)]
        constant: i64,
    },
    /// Connected-sum total complex.
    ConnectSum(PairInput),
    /// Disjoint-union total complex of two admissible factors.
    DisjointUnion(PairInput),
    /// Span of even u-iterates and the (u²−4)-filtration order.
    Phi {
        #[command(flatten)]
        input: Input,
        /// `name` or `name:coeff,name:coeff`; defaults to the fixture's
        /// distinguished vector.
        #[arg(long)]
        class: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Minus)]
        mode: Mode,
    },
    /// dim V^e − dim V′^e from reduced δ and δ′.
    H(Input),
    /// Signed count of vectors congruent to the class with the same norm.
    Eta {
        #[command(flatten)]
        lattice: LatticeInput,
        #[arg(long, value_enum, default_value_t = SignRuleName::Plus)]
        sign_rule: SignRuleName,
        /// Print every vector counted.
        #[arg(long)]
        list: bool,
    },
    /// Minimality of |w²| in its class, and the charge index.
    Extremal(LatticeInput),
    /// Nonvanishing pairing on the connected-sum cycle.
    VerifySumBound {
        /// Two or three comma-separated fixtures.
        #[arg(
            long,
            default_value = "TrefoilLikeSynthetic,TrefoilLikeSynthetic,TrefoilLikeSynthetic"
        )]
        factors: String,
        /// Nilpotency exponent n with (u²−4)^n = 0.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Use ladders with these comma-separated spans in a random basis.
        #[arg(long, conflicts_with = "factors")]
        random_spans: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Symbolic check of the telescoping and triple identities.
    PolyIdentities {
        #[arg(long, default_value_t = 5)]
        telescoping_max: u32,
        #[arg(long, default_value_t = 3)]
        triple_max: u32,
    },
    /// List built-in fixtures, or print one in the file format.
    Fixtures {
        #[arg(long)]
        show: Option<String>,
        #[arg(long, default_value = "0")]
        u_rho0: String,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Ordered `key: value` report.
#[derive(Default)]
struct Report {
    fields: Map<String, Value>,
}

impl Report {
    fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.fields).expect("json");
            s.push('\n');
            return s;
        }
        let mut out = String::new();
        for (k, v) in &self.fields {
            match v {
                Value::Array(items) => {
                    for item in items {
                        let _ = writeln!(out, "{k}: {}", plain(item));
                    }
                }
                other => {
                    let _ = writeln!(out, "{k}: {}", plain(other));
                }
            }
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "n/a".to_string(),
        other => other.to_string(),
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli.command) {
        Ok(Output::Report(r)) => Outcome {
            code: 0,
            stdout: r.render(cli.json),
            stderr: String::new(),
        },
        Ok(Output::Failed(r)) => Outcome {
            code: 1,
            stdout: r.render(cli.json),
            stderr: String::new(),
        },
        Err(Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

enum Output {
    Report(Report),
    /// A complete report whose subject failed a check.
    Failed(Report),
}

enum Failure {
    Usage(String),
    Domain(Error),
}
use Failure::{Domain, Usage};

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Loaded {
    data: FloerData,
    distinguished: Option<Vector>,
    source: String,
    parameters: String,
}

fn parse_u_rho0(s: &str) -> CliResult<Rational> {
    crate::fixtures::parse_rational(s)
        .ok_or_else(|| Usage(format!("--u-rho0 expects an integer or p/q, got {s}")))
}

fn load_fixture(name: &str, u_rho0: &Rational) -> CliResult<Loaded> {
    let parsed: FixtureName = name.parse().map_err(|e: Error| Usage(e.to_string()))?;
    let f = builtin_with(&parsed, u_rho0)?;
    Ok(Loaded {
        data: f.data,
        distinguished: f.distinguished,
        source: format!("fixture {}", f.name),
        parameters: f.parameters,
    })
}

fn load_file(path: &str) -> CliResult<Loaded> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Domain(Error::Io(format!("{path}: {e}"))))?;
    Ok(Loaded {
        data: parse(&text)?,
        distinguished: None,
        source: format!("file {path}"),
        parameters: "as given".into(),
    })
}

fn load(input: &Input) -> CliResult<Loaded> {
    let u_rho0 = parse_u_rho0(&input.u_rho0)?;
    match (&input.fixture, &input.file, input.random) {
        (Some(name), None, None) => load_fixture(name, &u_rho0),
        (None, Some(path), None) => load_file(path),
        (None, None, Some(n)) if n >= 1 => Ok(Loaded {
            data: random_floer_data(&mut rng(input.seed), n),
            distinguished: None,
            source: format!("random {n}"),
            parameters: format!("seed={}", input.seed),
        }),
        (None, None, Some(_)) => Err(Usage("--random needs at least one generator".into())),
        _ => Err(Usage(
            "choose exactly one of --fixture, --file, --random".into(),
        )),
    }
}

fn load_side(
    name: &Option<String>,
    file: &Option<String>,
    u_rho0: &Rational,
    side: &str,
) -> CliResult<Loaded> {
    match (name, file) {
        (Some(n), None) => load_fixture(n, u_rho0),
        (None, Some(p)) => load_file(p),
        _ => Err(Usage(format!(
            "choose exactly one of --{side} and --{side}-file"
        ))),
    }
}

fn header(r: &mut Report, l: &Loaded) {
    r.put("input", l.source.clone())
        .put("parameters", l.parameters.clone());
}

fn dims_value(d: &GradedDims) -> String {
    format_dims(d)
}

/// `2*rho0 + -1/2*rho4`, or `0`.
fn named_vector(v: &[Rational], names: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
        .map(|(c, n)| {
            if *c == rat(1) {
                n.clone()
            } else {
                format!("{}*{n}", format_rational(c))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn names_of(d: &FloerData) -> Vec<String> {
    d.generators().iter().map(|g| g.name.clone()).collect()
}

/// `name` or `name:coeff,name:coeff`.
fn parse_named_vector(spec: &str, names: &[String]) -> CliResult<Vector> {
    let mut v = zero_vector(names.len());
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, coeff) = match part.split_once(':') {
            Some((n, c)) => (n.trim(), c.trim()),
            None => (part, "1"),
        };
        let at = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Usage(format!("unknown generator {name}")))?;
        v[at] += crate::fixtures::parse_rational(coeff)
            .ok_or_else(|| Usage(format!("bad coefficient {coeff}")))?;
    }
    Ok(v)
}

fn execute(cmd: &Command) -> CliResult<Output> {
    let mut r = Report::default();
    match cmd {
        Command::Validate(input) => {
            let l = load(input)?;
            header(&mut r, &l);
            let report = validate(&l.data);
            r.put("generators", l.data.len())
                .put("kind", l.data.kind.name())
                .put("passed", report.passed());
            let lines: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
            r.put("violation", lines);
            return Ok(if report.passed() {
                Output::Report(r)
            } else {
                Output::Failed(r)
            });
        }
        Command::Homology(input) => {
            let l = load(input)?;
            header(&mut r, &l);
            l.data.complex.check().first().map_or(Ok(()), |v| {
                Err(Error::InvalidData {
                    invariant: v.invariant.name().into(),
                    detail: v.to_string(),
                })
            })?;
            let h = homology(&l.data.complex)?;
            let names = names_of(&l.data);
            r.put("dims", dims_value(&h.dims))
                .put("total", h.total_dim());
            let reps: Vec<String> = h
                .ordered
                .iter()
                .map(|(g, v)| format!("[{g}] {}", named_vector(v, &names)))
                .collect();
            r.put("representative", reps);
        }
        Command::Reduce(input) => {
            let l = load(input)?;
            header(&mut r, &l);
            let reduced = reduce_to_homology(&l.data)?;
            r.put("dims", dims_value(&reduced.dims()))
                .put("reduced", serialize(&reduced));
        }
        Command::Dualize { input, constant } => {
            let l = load(input)?;
            header(&mut r, &l);
            validate(&l.data).into_result()?;
            let d = dualize(&l.data, *constant)?;
            r.put("constant", *constant)
                .put("dims", dims_value(&d.dims()))
                .put("dual", serialize(&d));
        }
        Command::ConnectSum(p) | Command::DisjointUnion(p) => {
            let disjoint = matches!(cmd, Command::DisjointUnion(_));
            let u = parse_u_rho0(&p.u_rho0)?;
            let a = load_side(&p.a, &p.a_file, &u, "a")?;
            let b = load_side(&p.b, &p.b_file, &u, "b")?;
            r.put("a", a.source.clone())
                .put("a parameters", a.parameters.clone())
                .put("b", b.source.clone())
                .put("b parameters", b.parameters.clone());
            let c = if disjoint {
                disjoint_union_complex(&a.data, &b.data)?
            } else {
                connected_sum_complex(&a.data, &b.data)?
            };
            sum_report(&mut r, &c, p)?;
            if disjoint {
                let h = c.homology()?;
                let held = h
                    .ordered
                    .iter()
                    .map(|(_, z)| kernel_symmetry_check(&c, z))
                    .collect::<Result<Vec<bool>>>()?;
                r.put(
                    "symmetry relations",
                    format!("{}/{}", held.iter().filter(|&&x| x).count(), held.len()),
                );
            }
        }
        Command::Phi { input, class, mode } => {
            let l = load(input)?;
            header(&mut r, &l);
            validate(&l.data).into_result()?;
            let data = if l.data.differential().is_zero() {
                l.data.clone()
            } else {
                reduce_to_homology(&l.data)?
            };
            let names = names_of(&data);
            let psi = match (class, &l.distinguished) {
                (Some(spec), _) => parse_named_vector(spec, &names)?,
                (None, Some(v)) if data.len() == v.len() => v.clone(),
                _ => return Err(Usage("--class is required for this input".into())),
            };
            let report = match mode {
                Mode::Minus => phi(&data.u, &psi)?,
                Mode::Plus => phi_functional(&data.u, &psi)?,
            };
            r.put(
                "mode",
                match mode {
                    Mode::Minus => "minus",
                    Mode::Plus => "plus",
                },
            )
            .put("class", named_vector(&psi, &names))
            .put("span dim", report.span_dim)
            .put(
                "filtration order",
                report
                    .filtration_order
                    .map_or_else(|| "not nilpotent".to_string(), |k| k.to_string()),
            )
            .put("agree", report.agree.map_or(Value::Null, Value::Bool));
            let iterates: Vec<String> = report
                .iterates
                .iter()
                .map(|v| named_vector(v, &names))
                .collect();
            r.put("iterate", iterates);
        }
        Command::H(input) => {
            let l = load(input)?;
            header(&mut r, &l);
            let h = h_of(&l.data)?;
            r.put("dim Ve", h.dim_ve)
                .put("dim Ve'", h.dim_ve_prime)
                .put("h", h.h)
                .put("mutual triviality", h.mutual_triviality);
            if !h.mutual_triviality {
                r.put(
                    "warning",
                    "both V and V' are nonzero; genuine Floer data has at least one trivial",
                );
            }
        }
        Command::Eta {
            lattice,
            sign_rule,
            list,
        } => {
            let w =
                parse_class(&lattice.class, lattice.blocks).map_err(|e| Usage(e.to_string()))?;
            let rule: &dyn SignRule = match sign_rule {
                SignRuleName::Plus => &AllPlus,
            };
            let result = eta(&w, rule);
            r.put("blocks", lattice.blocks)
                .put("class", w.to_string())
                .put("norm", norm(&w).to_string())
                .put("sign rule", rule.name())
                .put("count", result.count)
                .put("vectors", result.vectors.len())
                .put("extremal", result.extremal);
            if *list {
                r.put(
                    "vector",
                    result
                        .vectors
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>(),
                );
            }
        }
        Command::Extremal(lattice) => {
            let w =
                parse_class(&lattice.class, lattice.blocks).map_err(|e| Usage(e.to_string()))?;
            r.put("blocks", lattice.blocks)
                .put("class", w.to_string())
                .put("norm", norm(&w).to_string())
                .put("extremal", is_extremal(&w))
                .put("k", min_charge_k(&w).map_or(Value::Null, |k| json!(k)));
        }
        Command::VerifySumBound {
            factors,
            n,
            random_spans,
            seed,
        } => {
            let built = match random_spans {
                Some(spans) => random_factors(spans, *n, *seed)?,
                None => {
                    let names: Vec<&str> = factors.split(',').map(str::trim).collect();
                    names
                        .iter()
                        .map(|name| bound_factor(name))
                        .collect::<CliResult<Vec<_>>>()?
                }
            };
            r.put("n", *n);
            match built.as_slice() {
                [(la, a), (lb, b)] => {
                    r.put("factors", format!("{la}, {lb}"));
                    let rep = verify_pair_bound(&[a.clone(), b.clone()], *n)?;
                    r.put("spans", format!("{} {}", rep.spans[0], rep.spans[1]))
                        .put("l", rep.l)
                        .put("pairing", format_rational(&rep.pairing_value))
                        .put("expected", format_rational(&rep.expected_value))
                        .put("nonzero", !num_traits::Zero::is_zero(&rep.pairing_value));
                }
                [(la, a), (lb, b), (lc, c)] => {
                    r.put("factors", format!("{la}, {lb}, {lc}"));
                    let rep = verify_sum_bound(&[a.clone(), b.clone(), c.clone()], *n)?;
                    r.put(
                        "spans",
                        format!("{} {} {}", rep.spans[0], rep.spans[1], rep.spans[2]),
                    )
                    .put("l", rep.l)
                    .put("cycle condition", rep.cycle_condition)
                    .put(
                        "witness evaluations",
                        rep.witness_evaluations
                            .iter()
                            .map(format_rational)
                            .collect::<Vec<_>>()
                            .join(" "),
                    )
                    .put("pairing", format_rational(&rep.pairing_value))
                    .put("expected", format_rational(&rep.expected_value))
                    .put("nonzero", rep.nonzero());
                }
                _ => return Err(Usage("give two or three factors".into())),
            }
        }
        Command::PolyIdentities {
            telescoping_max,
            triple_max,
        } => {
            let mut tele = Vec::new();
            for n in 1..=*telescoping_max {
                let t = verify_telescoping(n)?;
                tele.push(format!(
                    "n={n} exponent n-1-i: {} exponent n-i: {}",
                    t.holds_corrected, t.holds_as_printed
                ));
            }
            let mut triple = Vec::new();
            for n in 1..=*triple_max {
                triple.push(format!("n={n}: {}", verify_triple_identity(n)?));
            }
            r.put("telescoping", tele).put("triple", triple);
        }
        Command::Fixtures { show, u_rho0 } => {
            let u = parse_u_rho0(u_rho0)?;
            match show {
                Some(name) => {
                    let l = load_fixture(name, &u)?;
                    header(&mut r, &l);
                    r.put("document", serialize(&l.data));
                }
                None => {
                    let rows = catalogue()
                        .into_iter()
                        .map(|name| {
                            let f = builtin_with(&name, &u)?;
                            Ok(format!(
                                "{name} [{}] dims {} ({})",
                                f.data.kind.name(),
                                format_dims(&f.data.dims()),
                                f.parameters
                            ))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    r.put("fixture", rows);
                }
            }
        }
    }
    Ok(Output::Report(r))
}

fn sum_report(r: &mut Report, c: &ConnectSumComplex, p: &PairInput) -> CliResult<()> {
    let names: Vec<&str> = c.summands().iter().map(|t| t.name()).collect();
    r.put("generators", c.total.len())
        .put("summands", names.join(" "))
        .put("signs", c.signs.to_string())
        .put("square zero", crate::connect_sum::total_square(c).is_zero());
    if p.sign_family {
        let shape = if c.shape == Shape::DisjointUnion {
            Shape::DisjointUnion
        } else {
            Shape::ConnectedSum
        };
        let accepted = accepted_sign_configs(&c.factors.0, &c.factors.1, shape)?;
        r.put("accepted sign configs", accepted.len());
    }
    if p.homology {
        r.put("dims", dims_value(&c.homology_dims()?));
    }
    Ok(())
}

/// δ when nonzero, else the distinguished vector read as a functional.
fn bound_factor(name: &str) -> CliResult<(String, BoundFactor)> {
    let l = load_fixture(name, &rat(0))?;
    let functional = if !is_zero_vector(&l.data.delta) {
        l.data.delta.clone()
    } else {
        l.distinguished
            .clone()
            .ok_or_else(|| Usage(format!("{name} has neither δ nor a distinguished vector")))?
    };
    Ok((
        name.to_string(),
        BoundFactor::with_functional(&l.data, functional)?,
    ))
}

fn random_factors(spans: &str, n: usize, seed: u64) -> CliResult<Vec<(String, BoundFactor)>> {
    let mut g = rng(seed);
    spans
        .split(',')
        .map(|s| {
            let k: usize = s
                .trim()
                .parse()
                .map_err(|_| Usage(format!("bad span {s}")))?;
            if n == 0 || !(1..=n).contains(&k) {
                return Err(Usage(format!(
                    "span {k} is not realizable with (u²−4)^{n} = 0"
                )));
            }
            let d = change_of_basis(&mut g, &nilpotent_ladder(n, k));
            Ok((
                format!("ladder({n},{k}) seed {seed}"),
                BoundFactor::from_data(&d)?,
            ))
        })
        .collect()
}
