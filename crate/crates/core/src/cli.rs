//! The `steiner-lab` command line: argument parsing, dispatch, report rendering.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chow::{multiply, pieri, porteous_class, rank_bound, ChowClass, Grassmannian, Partition};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grassmann::DEFAULT_BUDGET;
use crate::jumping::{
    dim_bounds, induce, jumping_enumerate, jumping_fiber, locus_report, map_bounds, maximality_report,
    sigma_equations, sigma_nonempty_over_closure, tangent_dim, JumpingPair,
};
use crate::linalg::Subspace;
use crate::schwarzenberger::{build_triple, to_steiner, verify_family, FamilySpec};
use crate::steiner::{
    check_pk, dualize, fiber_map, reduce, valid_over_closure, verify_trivial_range, AnySteinerMap, CheckMode,
    GrassmannPoint, SteinerMap,
};
use crate::suite;

macro_rules! with_map {
    ($map:expr, $sm:ident => $body:expr) => {
        match $map {
            AnySteinerMap::Rational($sm) => $body,
            AnySteinerMap::Prime($sm) => $body,
        }
    };
}

/// Trials used when sampling is chosen by default.
pub const DEFAULT_SAMPLES: usize = 1000;

/// Largest prime checked exhaustively unless asked otherwise.
pub const EXHAUSTIVE_PRIME_LIMIT: u64 = 7;

#[derive(Parser, Debug)]
#[command(name = "steiner-lab", version, about = "Steiner bundles on Grassmannians: exact checks and jumping loci")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalOpts {
    /// Field to compute over; `Fp` reduces an input map modulo the first `--prime`.
    #[arg(long, global = true, value_enum)]
    pub field: Option<FieldArg>,
    /// Prime(s) for enumeration; repeat or give a comma list.
    #[arg(long = "prime", visible_alias = "primes", global = true, value_delimiter = ',')]
    pub primes: Vec<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Check every point over the prime field.
    #[arg(long, global = true, conflicts_with = "samples")]
    pub exhaustive: bool,
    /// Check this many random points instead.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub json: bool,
    /// Steiner map JSON (or a family spec for the family commands).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    pub timestamps: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Fp")]
    Fp,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Smallest rank of a Steiner bundle of type (s, *) on G(k,n).
    RankBound {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        s: usize,
    },
    /// Degeneracy class obstructing a bundle of type (s,t).
    Porteous {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        s: usize,
        #[arg(short)]
        t: usize,
    },
    /// Product of two Schubert classes, or a Pieri step with `--special`.
    ChowMul {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        /// Partition such as `2,1` (empty for the unit class).
        #[arg(long, default_value = "")]
        a: String,
        #[arg(long, conflicts_with = "special")]
        b: Option<String>,
        #[arg(long)]
        special: Option<usize>,
    },
    /// Fiberwise surjectivity of the input map.
    Check {
        /// Only the fiber map at this point (rows separated by `;`).
        #[arg(long)]
        at: Option<String>,
        /// Check that a valid map with s <= k+1 is all of S* (x) V.
        #[arg(long)]
        trivial_range: bool,
        /// Decide the condition over the algebraic closure of F_p.
        #[arg(long)]
        closure: bool,
    },
    /// Split off trivial summands.
    Reduce,
    /// Swap the roles of S* and V.
    Dualize,
    /// Jumping locus over each prime.
    Jumping {
        /// Defining equations of the locus instead of an enumeration.
        #[arg(long)]
        equations: bool,
        /// Only the jumping fiber over this point of P(S*).
        #[arg(long)]
        at: Option<String>,
        /// List every pair.
        #[arg(long)]
        pairs: bool,
        /// Decide nonemptiness over the algebraic closure of F_p.
        #[arg(long)]
        closure: bool,
    },
    /// Tangent dimension of the jumping locus at a pair.
    Tangent {
        #[arg(long)]
        a: String,
        #[arg(long)]
        gamma: String,
    },
    /// Dimension bounds, and maximality over `--prime` when a map is given.
    Bounds {
        #[arg(short)]
        k: Option<usize>,
        #[arg(short)]
        n: Option<usize>,
        #[arg(short)]
        s: Option<usize>,
        #[arg(short)]
        t: Option<usize>,
    },
    /// Map induced on the quotient by a jumping pair.
    Induce {
        #[arg(long)]
        a: String,
        #[arg(long)]
        gamma: String,
    },
    /// Multiplication map of a family and its Steiner map.
    SchwBuild {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Build a family and check its jumping locus.
    VerifyFamily {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Run the whole seeded verification batch.
    VerifyAll {
        /// Override the number of random instances per randomized check.
        #[arg(long)]
        instances: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// rnc, veronese, split_p1, case3 or tangent_twist (or give `--input`).
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(short)]
    pub n: Option<usize>,
    #[arg(short)]
    pub k: Option<usize>,
    #[arg(short)]
    pub t: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub degrees: Vec<usize>,
}

/// Library operations and the subcommand that reaches each one.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("rank", "reduce"),
    ("kernel", "reduce"),
    ("intersect", "jumping"),
    ("pieri", "chow-mul"),
    ("multiply", "chow-mul"),
    ("porteous_class", "porteous"),
    ("rank_bound", "rank-bound"),
    ("fiber_map", "check"),
    ("check_pk", "check"),
    ("valid_over_closure", "check"),
    ("verify_trivial_range", "check"),
    ("reduce", "reduce"),
    ("dualize", "dualize"),
    ("jumping_fiber", "jumping"),
    ("sigma_enumerate", "jumping"),
    ("jumping_enumerate", "jumping"),
    ("sigma_equations", "jumping"),
    ("sigma_nonempty_over_closure", "jumping"),
    ("tangent_dim", "tangent"),
    ("dim_bounds", "bounds"),
    ("maximality_report", "bounds"),
    ("induce", "induce"),
    ("build_triple", "schw-build"),
    ("to_steiner", "schw-build"),
    ("verify_family", "verify-family"),
    ("verify_all", "verify-all"),
];

/// What a command produced.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub pass: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, pass: true }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let code = if matches!(e, Error::InjectivityViolation { .. }) { 1 } else { 2 };
            let stderr = if cli.global.json {
                format!("{}\n", json!({"error": e.to_string()}))
            } else {
                format!("error: {e}\n")
            };
            return Outcome { code, stdout: String::new(), stderr };
        }
    };
    let body = if cli.global.json {
        format!("{}\n", serde_json::to_string_pretty(&report.json).expect("serializable"))
    } else {
        report.text
    };
    let code = if report.pass { 0 } else { 1 };
    match &cli.global.output {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) },
        },
        None => Outcome { code, stdout: body, stderr: String::new() },
    }
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::RankBound { k, n, s } => {
            let r = rank_bound(*k, *n, *s)?;
            Ok(Report::ok(json!({"k": k, "n": n, "s": s, "rank_bound": r}), format!("{r}\n")))
        }
        Command::Porteous { k, n, s, t } => {
            let c = porteous_class(*k, *n, *s, *t)?;
            let text = format!("{c}\n");
            Ok(Report::ok(
                json!({"k": k, "n": n, "s": s, "t": t, "class": c.to_json(), "vanishes": c.is_zero()}),
                text,
            ))
        }
        Command::ChowMul { k, n, a, b, special } => {
            let gr = Grassmannian::new(*k, *n)?;
            let x = ChowClass::schubert(gr, parse_partition(a)?)?;
            let c = match (b, special) {
                (_, Some(i)) => pieri(&x, *i)?,
                (Some(b), None) => multiply(&x, &ChowClass::schubert(gr, parse_partition(b)?)?)?,
                (None, None) => return Err(Error::InvalidParameters("give --b PARTITION or --special I".into())),
            };
            Ok(Report::ok(json!({"k": k, "n": n, "product": c.to_json()}), format!("{c}\n")))
        }
        Command::Check { at, trivial_range, closure } => {
            let map = load_map(g)?;
            with_map!(map, sm => check_cmd(g, &sm, at.as_deref(), *trivial_range, *closure))
        }
        Command::Reduce => {
            let map = load_map(g)?;
            with_map!(map, sm => {
                let (red, trivial) = reduce(&sm);
                let text = format!("type (s,t) = ({}, {})\ntrivial summands: {trivial}\n", red.s(), red.t());
                Ok(Report::ok(json!({"map": red.to_json(), "trivial_summands": trivial}), text))
            })
        }
        Command::Dualize => {
            let map = load_map(g)?;
            with_map!(map, sm => {
                let d = dualize(&sm)?;
                let text = format!("(k,n,s,t) = ({}, {}, {}, {})\n", d.k(), d.n(), d.s(), d.t());
                Ok(Report::ok(d.to_json(), text))
            })
        }
        Command::Jumping { equations, at, pairs, closure } => {
            let map = load_map(g)?;
            with_map!(map, sm => jumping_cmd(g, &sm, *equations, at.as_deref(), *pairs, *closure))
        }
        Command::Tangent { a, gamma } => {
            let map = load_map(g)?;
            with_map!(map, sm => {
                let jp = parse_pair(&sm, a, gamma)?;
                let ts = tangent_dim(&sm, &jp)?;
                let upper = map_bounds(&sm).upper;
                let text = format!("tangent dimension: {}\nupper bound: {upper}\n", ts.tangent_dim);
                Ok(Report::ok(
                    json!({
                        "tangent_dim": ts.tangent_dim,
                        "upper_bound": upper,
                        "constraints": {"rows": ts.constraint_matrix.rows(), "cols": ts.constraint_matrix.cols()},
                    }),
                    text,
                ))
            })
        }
        Command::Bounds { k, n, s, t } => bounds_cmd(g, [*k, *n, *s, *t]),
        Command::Induce { a, gamma } => {
            let map = load_map(g)?;
            with_map!(map, sm => {
                let jp = parse_pair(&sm, a, gamma)?;
                let ind = induce(&sm, &jp)?;
                let text = format!("type (s,t) = ({}, {})\nreduced: {}\n", ind.map.s(), ind.map.t(), ind.reduced);
                Ok(Report::ok(json!({"map": ind.map.to_json(), "reduced": ind.reduced}), text))
            })
        }
        Command::SchwBuild { family } => {
            let spec = family_spec(g, family)?;
            let tr = build_triple(&spec)?;
            let mut checked = Vec::new();
            for &p in &g.primes {
                to_steiner(&tr, &check_mode(g, Some(p)))?;
                checked.push(p);
            }
            let sm = tr.steiner_map();
            let mut text = String::new();
            writeln!(text, "family: {}", tr.family).unwrap();
            writeln!(text, "(k,n,s,t) = ({}, {}, {}, {})", sm.k(), sm.n(), sm.s(), sm.t()).unwrap();
            writeln!(text, "reduced: {}", sm.is_reduced()).unwrap();
            if let Some(note) = &tr.note {
                writeln!(text, "note: {note}").unwrap();
            }
            Ok(Report::ok(json!({"triple": tr.to_json(), "map": sm.to_json(), "checked_primes": checked}), text))
        }
        Command::VerifyFamily { family } => {
            let spec = family_spec(g, family)?;
            let primes = if g.primes.is_empty() { vec![3, 5] } else { g.primes.clone() };
            let r = verify_family(&spec, &primes, DEFAULT_BUDGET)?;
            let mut text = String::new();
            writeln!(text, "family {}  (k,n,s,t) = ({}, {}, {}, {})", spec.name(), r.k, r.n, r.s, r.t).unwrap();
            let rows: Vec<(String, String)> =
                r.predicates.iter().map(|(k, v)| (k.clone(), if *v { "ok".into() } else { "FAIL".into() })).collect();
            text.push_str(&table(&rows));
            for lr in &r.locus.reports {
                writeln!(text, "F_{}: |Sigma| = {}, pairs = {}, tangent dims {:?}", lr.prime, lr.sigma.len(), lr.pairs, lr.tangent_dims)
                    .unwrap();
            }
            if let Some(note) = &r.note {
                writeln!(text, "note: {note}").unwrap();
            }
            Ok(Report { json: r.to_json(), text, pass: r.pass() })
        }
        Command::VerifyAll { instances } => {
            let outcomes = match instances {
                None => suite::verify_all(g.seed),
                Some(m) => suite::verify_all_scaled(g.seed, *m),
            };
            let pass = outcomes.iter().all(|o| o.pass);
            let mut text = String::new();
            for o in &outcomes {
                let mut line = format!("[{:>2}] {:<16} {}", o.id, o.name, if o.pass { "PASS" } else { "FAIL" });
                if g.timestamps {
                    write!(line, "  ({} ms)", o.millis).unwrap();
                }
                writeln!(text, "{line}  {}", o.detail).unwrap();
            }
            let list: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    let mut v = o.to_json();
                    if g.timestamps {
                        v["millis"] = json!(o.millis as u64);
                    }
                    v
                })
                .collect();
            Ok(Report { json: json!({"seed": g.seed, "pass": pass, "checks": list}), text, pass })
        }
    }
}

fn read_input(g: &GlobalOpts) -> Result<Value> {
    let path = g.input.as_ref().ok_or_else(|| Error::InvalidParameters("this command needs --input FILE".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// The input map, moved to `F_p` when `--field Fp` asks for it.
fn load_map(g: &GlobalOpts) -> Result<AnySteinerMap> {
    let map = AnySteinerMap::from_json(&read_input(g)?)?;
    match g.field {
        Some(FieldArg::Fp) => {
            let p = *g.primes.first().ok_or_else(|| Error::InvalidParameters("--field Fp needs --prime".into()))?;
            Ok(AnySteinerMap::Prime(map.over_prime(p)?))
        }
        Some(FieldArg::Q) if matches!(map, AnySteinerMap::Prime(_)) => {
            Err(Error::FieldMismatch("input map is over a prime field, not Q".into()))
        }
        _ => Ok(map),
    }
}

/// `--samples` wins, then `--exhaustive`; otherwise small primes are checked
/// exhaustively and everything else is sampled.
fn check_mode(g: &GlobalOpts, prime: Option<u64>) -> CheckMode {
    if let Some(trials) = g.samples {
        return CheckMode::Sampled { prime, trials, seed: g.seed };
    }
    match prime {
        Some(p) if g.exhaustive || p <= EXHAUSTIVE_PRIME_LIMIT => CheckMode::Exhaustive { prime: Some(p) },
        None if g.exhaustive => CheckMode::Exhaustive { prime: None },
        _ => CheckMode::Sampled { prime, trials: DEFAULT_SAMPLES, seed: g.seed },
    }
}

fn own_prime<F: Field>(sm: &SteinerMap<F>) -> Option<u64> {
    match sm.field().spec().characteristic() {
        0 => None,
        p => Some(p),
    }
}

/// Primes to enumerate over: `--prime`, else the map's own prime.
fn enumeration_primes<F: Field>(g: &GlobalOpts, sm: &SteinerMap<F>) -> Result<Vec<u64>> {
    if !g.primes.is_empty() {
        return Ok(g.primes.clone());
    }
    own_prime(sm)
        .map(|p| vec![p])
        .ok_or_else(|| Error::InvalidParameters("a map over Q needs --prime for enumeration".into()))
}

fn check_cmd<F: Field>(g: &GlobalOpts, sm: &SteinerMap<F>, at: Option<&str>, trivial: bool, closure: bool) -> Result<Report> {
    if let Some(at) = at {
        let rows = parse_rows(sm.field(), at)?;
        let gamma = Subspace::from_rows(sm.field().clone(), sm.v_dim(), rows)?;
        let point = GrassmannPoint::new(sm.k(), sm.n(), gamma)?;
        let m = fiber_map(sm, &point)?;
        let rank = m.rank();
        let pass = rank == m.cols();
        let text = format!("fiber map {}x{}, rank {rank}, surjective: {pass}\n", m.rows(), m.cols());
        return Ok(Report { json: json!({"fiber_map": m.to_json(), "rank": rank, "surjective": pass}), text, pass });
    }
    let primes: Vec<Option<u64>> = if g.primes.is_empty() { vec![own_prime(sm)] } else { g.primes.iter().map(|&p| Some(p)).collect() };
    if closure {
        let mut results = Vec::new();
        let mut text = String::new();
        for p in primes {
            let p = p.ok_or_else(|| Error::InvalidParameters("--closure needs a prime".into()))?;
            let valid = valid_over_closure(&sm.over_prime(p)?)?;
            writeln!(text, "closure of F_{p}: {}", if valid { "valid" } else { "invalid" }).unwrap();
            results.push(json!({"prime": p, "valid": valid}));
        }
        let pass = results.iter().all(|r| r["valid"] == json!(true));
        return Ok(Report { json: json!({"closure": results}), text, pass });
    }
    let mut out = Vec::new();
    let mut text = String::new();
    let mut pass = true;
    for p in primes {
        let mode = check_mode(g, p);
        let mode_name = match mode {
            CheckMode::Exhaustive { .. } => "exhaustive",
            CheckMode::Sampled { .. } => "sampled",
        };
        if trivial {
            let r = verify_trivial_range(sm, &mode)?;
            pass &= r.pass;
            writeln!(
                text,
                "{mode_name}: {} after reduce, image {} of {}, trivial range {}",
                if r.verdict.is_valid() { "valid" } else { "invalid" },
                r.reduced_t,
                r.full_dim,
                if r.pass { "holds" } else { "FAILS" }
            )
            .unwrap();
            let mut v = r.to_json();
            v["mode"] = json!(mode_name);
            out.push(v);
        } else {
            let verdict = check_pk(sm, &mode)?;
            pass &= verdict.is_valid();
            let mut v = verdict.to_json();
            writeln!(text, "{mode_name} over {}: {}", v["field"].as_str().unwrap_or("?"), v["verdict"].as_str().unwrap_or("?"))
                .unwrap();
            if let Some(w) = v.get("witness") {
                writeln!(text, "  witness: {w}").unwrap();
            }
            v["mode"] = json!(mode_name);
            out.push(v);
        }
    }
    Ok(Report { json: json!({"checks": out}), text, pass })
}

fn jumping_cmd<F: Field>(
    g: &GlobalOpts,
    sm: &SteinerMap<F>,
    equations: bool,
    at: Option<&str>,
    list_pairs: bool,
    closure: bool,
) -> Result<Report> {
    if equations {
        let eqs: Vec<String> = sigma_equations(sm)?.iter().map(|p| p.to_string()).collect();
        let text = if eqs.is_empty() {
            format!("no equations: every point of P^{} is in the locus\n", sm.s() - 1)
        } else {
            eqs.iter().map(|e| format!("{e}\n")).collect()
        };
        return Ok(Report::ok(json!({"equations": eqs, "variables": sm.s()}), text));
    }
    if let Some(at) = at {
        let a = parse_vec(sm.field(), at)?;
        let a = Subspace::span_of(sm.field().clone(), a);
        let fd = jumping_fiber(sm, &a)?;
        let basis: Vec<Vec<String>> = fd
            .fiber
            .basis_vecs()
            .iter()
            .map(|r| r.iter().map(|x| sm.field().elem_to_string(x)).collect())
            .collect();
        let text = format!("fiber dimension {}\n{}", fd.fiber_dim(), basis.iter().map(|r| format!("  [{}]\n", r.join(", "))).collect::<String>());
        return Ok(Report::ok(json!({"fiber_dim": fd.fiber_dim(), "fiber": basis, "in_sigma": fd.fiber_dim() > sm.k()}), text));
    }
    let primes = enumeration_primes(g, sm)?;
    if closure {
        let mut results = Vec::new();
        let mut text = String::new();
        for &p in &primes {
            let nonempty = sigma_nonempty_over_closure(&reduce(sm).0.over_prime(p)?)?;
            writeln!(text, "closure of F_{p}: locus {}", if nonempty { "nonempty" } else { "empty" }).unwrap();
            results.push(json!({"prime": p, "nonempty": nonempty}));
        }
        return Ok(Report::ok(json!({"closure": results}), text));
    }
    let mut reports = Vec::new();
    let mut text = String::new();
    for &p in &primes {
        let lr = locus_report(sm, p, DEFAULT_BUDGET)?;
        let mut v = lr.to_json();
        writeln!(
            text,
            "F_{p}: |Sigma| = {}, pairs = {}, tangent dims {:?}, bounds [{}, {}], maximal: {}",
            lr.sigma.len(),
            lr.pairs,
            lr.tangent_dims,
            lr.bounds.lower,
            lr.bounds.upper,
            lr.maximal
        )
        .unwrap();
        if list_pairs {
            let smp = reduce(sm).0.over_prime(p)?;
            let listed: Vec<Value> = jumping_enumerate(&smp, p, DEFAULT_BUDGET)?
                .iter()
                .map(|jp| json!({"a": jp.a.basis_vec(0), "gamma": jp.gamma.basis_vecs()}))
                .collect();
            for l in &listed {
                writeln!(text, "  a = {}  gamma = {}", l["a"], l["gamma"]).unwrap();
            }
            v["pair_list"] = Value::Array(listed);
        }
        reports.push(v);
    }
    Ok(Report::ok(json!({"reports": reports}), text))
}

fn bounds_cmd(g: &GlobalOpts, dims: [Option<usize>; 4]) -> Result<Report> {
    if g.input.is_none() {
        let [Some(k), Some(n), Some(s), Some(t)] = dims else {
            return Err(Error::InvalidParameters("bounds needs -k -n -s -t or --input".into()));
        };
        let b = dim_bounds(k, n, s, t);
        let text = format!("lower {}\nupper {}\n", b.lower, b.upper);
        return Ok(Report::ok(b.to_json(), text));
    }
    let map = load_map(g)?;
    with_map!(map, sm => {
        let b = map_bounds(&sm);
        let mut text = format!("lower {}\nupper {}\n", b.lower, b.upper);
        if g.primes.is_empty() {
            return Ok(Report::ok(b.to_json(), text));
        }
        let m = maximality_report(&sm, &g.primes, DEFAULT_BUDGET)?;
        writeln!(text, "maximal: {}", m.maximal).unwrap();
        Ok(Report::ok(json!({"bounds": b.to_json(), "maximality": m.to_json()}), text))
    })
}

fn family_spec(g: &GlobalOpts, fa: &FamilyArgs) -> Result<FamilySpec> {
    let v = match (&fa.family, &g.input) {
        (Some(name), _) => {
            let mut v = json!({"family": name, "seed": g.seed});
            for (key, val) in [("d", fa.d), ("n", fa.n), ("k", fa.k), ("t", fa.t)] {
                if let Some(x) = val {
                    v[key] = json!(x);
                }
            }
            if !fa.degrees.is_empty() {
                v["degrees"] = json!(fa.degrees);
            }
            v
        }
        (None, Some(_)) => read_input(g)?,
        (None, None) => return Err(Error::InvalidParameters("give --family NAME or --input SPEC".into())),
    };
    let primes = if g.primes.is_empty() { vec![3, 5] } else { g.primes.clone() };
    FamilySpec::from_json(&v, &primes)
}

fn parse_partition(s: &str) -> Result<Partition> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("partition part {x:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

fn parse_elem<F: Field>(f: &F, tok: &str) -> Result<F::Elem> {
    let tok = tok.trim();
    match tok.parse::<i64>() {
        Ok(i) => Ok(f.from_i64(i)),
        Err(_) => f.elem_from_json(&Value::String(tok.to_string())),
    }
}

fn parse_vec<F: Field>(f: &F, s: &str) -> Result<Vec<F::Elem>> {
    s.split(',').map(|t| parse_elem(f, t)).collect()
}

fn parse_rows<F: Field>(f: &F, s: &str) -> Result<Vec<Vec<F::Elem>>> {
    s.split(';').map(|r| parse_vec(f, r)).collect()
}

fn parse_pair<F: Field>(sm: &SteinerMap<F>, a: &str, gamma: &str) -> Result<JumpingPair<F>> {
    let f = sm.field();
    let a = parse_vec(f, a)?;
    if a.len() != sm.s() {
        return Err(Error::DimensionMismatch(format!("a has {} coordinates, s = {}", a.len(), sm.s())));
    }
    let gamma = Subspace::from_rows(f.clone(), sm.v_dim(), parse_rows(f, gamma)?)?;
    JumpingPair::new(sm, Subspace::span_of(f.clone(), a), gamma)
}

fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("  {k:<width$}  {v}\n")).collect()
}
