//! Argument parsing and command execution for the `alcove-kit` binary.

use std::f64::consts::PI;
use std::fmt::Write as _;

use alcove_core::dynamics::{
    cross_section, fiber_flow_suite, flow_b_hamiltonian, gradient_phi, lax_residuals, moment_residual,
    trace_discrepancy,
};
use alcove_core::farey::{classify_intervals, interval_containing};
use alcove_core::fiber::{fiber_report, orbit_invariance_suite};
use alcove_core::harness::{emit, run_suite, Format, SuiteOptions, SUITES};
use alcove_core::polytope::{check_simplest_type_ii, cyclic_orbits, face_lattice, symbolic_vertices};
use alcove_core::sampling::random_interior_point;
use alcove_core::spectral::{
    char_identity_residual, delta_of, solve_a0, solve_u, unitarity_defect, z_functions, z_product_form,
};
use alcove_core::{AlcovePoint, Error, ExactRational, PolytopeModel};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Parser, PartialEq)]
#[command(
    name = "alcove-kit",
    version,
    about = "Momentum polytopes and fibers of the compactified trigonometric RS system"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, PartialEq)]
pub struct Global {
    /// Tolerance for residual checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    pub format: Format,
    /// Include the long enumerations (n ≥ 13).
    #[arg(long, global = true)]
    pub stretch: bool,
}

#[derive(Debug, Subcommand, PartialEq)]
pub enum Command {
    /// Farey intervals of (0, 1/2) (or (0, 1)) and their types.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        full_range: bool,
    },
    /// Vertices, classes, face vector and facets of the polytope.
    Polytope {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rational)]
        x: Option<ExactRational>,
        /// Affine-form vertices over a whole interval (needs --interval).
        #[arg(long, requires = "interval")]
        symbolic: bool,
        /// `LO,HI`, two consecutive elements of F_n.
        #[arg(long, value_parser = parse_interval)]
        interval: Option<(ExactRational, ExactRational)>,
        #[arg(long, value_enum)]
        check: Option<PolytopeCheck>,
    },
    /// z functions, u, Â₀ or δ at a point.
    Spectral {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rational)]
        x: ExactRational,
        /// Comma-separated coordinates in units of π.
        #[arg(long, value_parser = parse_point)]
        xi: AlcovePoint,
        #[arg(long, value_enum, default_value = "z")]
        op: SpectralOp,
    },
    /// Fiber report over a point, optionally with the orbit invariance suite.
    Fiber {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rational)]
        x: ExactRational,
        #[arg(long, value_parser = parse_point)]
        vertex: AlcovePoint,
        /// Number of samples for the orbit invariance suite.
        #[arg(long)]
        suite: Option<usize>,
    },
    /// Residual checks of the Lax matrix and the flows.
    Dynamics {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rational)]
        x: ExactRational,
        #[arg(long, value_enum)]
        check: DynamicsCheck,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Reproduction suites against the bundled reference tables.
    Verify {
        /// One suite; all of them if omitted.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolytopeCheck {
    SimplestTypeIi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectralOp {
    Z,
    U,
    A0,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DynamicsCheck {
    Lax,
    CrossSection,
    Trace,
    Flow,
    FiberFlow,
}

fn parse_rational(s: &str) -> Result<ExactRational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_point(s: &str) -> Result<AlcovePoint, String> {
    AlcovePoint::parse(s).map_err(|e| e.to_string())
}

fn parse_interval(s: &str) -> Result<(ExactRational, ExactRational), String> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| format!("expected LO,HI, got `{s}`"))?;
    Ok((parse_rational(lo)?, parse_rational(hi)?))
}

/// What a command produced: the bytes for stdout and whether every check
/// passed.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

/// Process exit status for a failed run.
#[derive(Debug)]
pub enum Failure {
    /// Bad input detected after parsing (exit 2).
    Usage(String),
    /// A computation could not be completed (exit 1).
    Runtime(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Runtime(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) | Error::StructuralInstability(_) | Error::Ambiguous(_) | Error::Unsupported(_) => {
                Failure::Runtime(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run = Result<Outcome, Failure>;

fn json_out(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("outputs serialize") + "\n"
}

fn no_csv(g: &Global, what: &str) -> Result<(), Failure> {
    if g.format == Format::Csv {
        return Err(Failure::Usage(format!("CSV output is not available for `{what}`")));
    }
    Ok(())
}

fn check_n(n: usize, p: &AlcovePoint) -> Result<(), Failure> {
    if p.n() != n {
        return Err(Failure::Usage(format!("point has {} coordinates, --n is {n}", p.n())));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    match &cli.command {
        Command::Classify { n, full_range } => classify(g, *n, *full_range),
        Command::Polytope { n, x, symbolic, interval, check } => {
            polytope(g, *n, x.as_ref(), *symbolic, interval.as_ref(), *check)
        }
        Command::Spectral { n, x, xi, op } => spectral(g, *n, x, xi, *op),
        Command::Fiber { n, x, vertex, suite } => fiber(g, *n, x, vertex, *suite),
        Command::Dynamics { n, x, check, samples } => dynamics(g, *n, x, *check, *samples),
        Command::Verify { suite, n, samples } => verify(g, suite.as_deref(), *n, *samples),
    }
}

fn classify(g: &Global, n: usize, full_range: bool) -> Run {
    if n < 2 {
        return Err(Failure::Usage(format!("n = {n} must be at least 2")));
    }
    let ivs = classify_intervals(n, !full_range);
    let rows: Vec<Value> = ivs
        .iter()
        .map(|iv| json!({"lower": iv.lower, "upper": iv.upper, "type": iv.interval_type.to_string(), "k": iv.k_index}))
        .collect();
    let type_i = ivs.iter().filter(|iv| iv.interval_type == alcove_core::IntervalType::TypeI).count();
    let stdout = match g.format {
        Format::Json => json_out(&rows),
        Format::Csv => {
            let mut s = String::from("lower,upper,type,k\n");
            for iv in &ivs {
                let _ = writeln!(s, "{},{},{},{}", iv.lower, iv.upper, iv.interval_type, iv.k_index);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for iv in &ivs {
                let _ = writeln!(s, "{} {} {} {}", iv.lower, iv.upper, iv.interval_type, iv.k_index);
            }
            let _ = writeln!(s, "total {}: {} type I, {} type II", ivs.len(), type_i, ivs.len() - type_i);
            s
        }
    };
    Ok(Outcome { stdout, passed: true })
}

fn polytope(
    g: &Global,
    n: usize,
    x: Option<&ExactRational>,
    symbolic: bool,
    interval: Option<&(ExactRational, ExactRational)>,
    check: Option<PolytopeCheck>,
) -> Run {
    if symbolic {
        let (lo, hi) = interval.expect("clap enforces --interval");
        let mid = (lo + hi) / ExactRational::from_integer(2);
        let iv = interval_containing(&mid, n)?;
        if &iv.lower != lo || &iv.upper != hi {
            return Err(Failure::Usage(format!("({lo}, {hi}) is not a Farey interval for n = {n}")));
        }
        return symbolic_polytope(g, n, &iv);
    }
    let x = x.ok_or_else(|| Failure::Usage("--x is required unless --symbolic is given".into()))?;
    if let Some(PolytopeCheck::SimplestTypeIi) = check {
        let rep = check_simplest_type_ii(n, x)?;
        no_csv(g, "polytope --check")?;
        let stdout = if g.format == Format::Json { json_out(&rep) } else { rep.to_string() };
        return Ok(Outcome { passed: rep.passed(), stdout });
    }
    let model = PolytopeModel::compute(n, x)?;
    let lattice = face_lattice(&model);
    let classes = cyclic_orbits(&model);
    let stdout = match g.format {
        Format::Json => json_out(&json!({
            "n": n,
            "x": x,
            "k": model.k,
            "face_vector": lattice.face_vector,
            "vertices": model.vertices.iter().map(|v| &v.point).collect::<Vec<_>>(),
            "classes": classes.iter().map(|c| json!({
                "rep": c.representative, "orbit": c.orbit_size, "singular": c.is_singular,
            })).collect::<Vec<_>>(),
            "facets": lattice.facets().iter().map(|f| json!({
                "constraints": f.active_indices(), "vertices": f.vertex_indices(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("index");
            for j in 1..=n {
                let _ = write!(s, ",xi_{j}");
            }
            s.push_str(",singular,active\n");
            for (i, v) in model.vertices.iter().enumerate() {
                let _ = write!(s, "{i}");
                for c in &v.point.coords {
                    let _ = write!(s, ",{c}");
                }
                let act: Vec<String> = v.active_indices().iter().map(ToString::to_string).collect();
                let _ = writeln!(s, ",{},{}", v.point.is_singular(), act.join(" "));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let fv: Vec<String> = lattice.face_vector.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "n = {n}, x = {x}, k = {}", model.k);
            let _ = writeln!(s, "face vector ({})", fv.join(", "));
            let _ = writeln!(s, "{} vertices in {} cyclic classes:", model.vertices.len(), classes.len());
            for c in &classes {
                let kind = if c.is_singular { "singular" } else { "regular" };
                let _ = writeln!(s, "  {} orbit {} {kind}", c.representative, c.orbit_size);
            }
            s
        }
    };
    Ok(Outcome { stdout, passed: true })
}

fn symbolic_polytope(g: &Global, n: usize, iv: &alcove_core::FareyInterval) -> Run {
    let sym = symbolic_vertices(n, iv)?;
    let forms = |v: &[alcove_core::AffineForm]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let stdout = match g.format {
        Format::Json => json_out(&json!({
            "n": n,
            "interval": {"lower": iv.lower, "upper": iv.upper, "type": iv.interval_type.to_string(), "k": iv.k_index},
            "vertices": sym.vertices.iter().map(|v| forms(&v.coords)).collect::<Vec<_>>(),
            "classes": sym.classes.iter().map(|c| json!({
                "rep": forms(&c.representative), "orbit": c.orbit_size, "singular": c.is_singular,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("index");
            for j in 1..=n {
                let _ = write!(s, ",xi_{j}");
            }
            s.push_str(",singular\n");
            for (i, v) in sym.vertices.iter().enumerate() {
                let _ = writeln!(s, "{i},{},{}", forms(&v.coords).join(","), v.is_singular());
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ =
                writeln!(s, "n = {n}, {} < x < {}, type {}, k = {}", iv.lower, iv.upper, iv.interval_type, iv.k_index);
            for c in &sym.classes {
                let kind = if c.is_singular { "singular" } else { "regular" };
                let _ = writeln!(s, "  ({}) orbit {} {kind}", forms(&c.representative).join(", "), c.orbit_size);
            }
            s
        }
    };
    Ok(Outcome { stdout, passed: true })
}

fn spectral(g: &Global, n: usize, x: &ExactRational, xi: &AlcovePoint, op: SpectralOp) -> Run {
    no_csv(g, "spectral")?;
    check_n(n, xi)?;
    let (value, checks): (Value, Vec<(&str, f64)>) = match op {
        SpectralOp::Delta => (serde_json::to_value(delta_of(xi)).expect("serializes"), vec![]),
        SpectralOp::Z => {
            let z = z_functions(xi, x, g.tol)?;
            let prod = z_product_form(xi, x)?;
            let gap = z.iter().zip(&prod).map(|(a, b)| (b - a).norm()).fold(0.0, f64::max);
            let sum = (z.iter().sum::<f64>() - 1.0).abs();
            (json!(z), vec![("product vs partial sums", gap), ("|Σz − 1|", sum)])
        }
        SpectralOp::U => {
            let u = solve_u(xi, x)?;
            let res = char_identity_residual(&delta_of(xi), x, &u.components);
            (serde_json::to_value(&u).expect("serializes"), vec![("characteristic identity", res)])
        }
        SpectralOp::A0 => {
            let u = solve_u(xi, x)?;
            let a0 = solve_a0(xi, x, &u)?;
            let def = unitarity_defect(&a0);
            let det = (a0.determinant() - 1.0).norm();
            let m: Vec<Vec<Value>> =
                a0.row_iter().map(|r| r.iter().map(|c| json!({"re": c.re, "im": c.im})).collect()).collect();
            (json!(m), vec![("unitarity defect", def), ("|det − 1|", det)])
        }
    };
    let passed = checks.iter().all(|(_, r)| *r <= g.tol);
    let stdout = match g.format {
        Format::Json => json_out(&json!({
            "xi": xi, "x": x, "op": format!("{op:?}").to_lowercase(), "value": value,
            "checks": checks.iter().map(|(k, r)| json!({"name": k, "residual": r, "passed": *r <= g.tol})).collect::<Vec<_>>(),
            "tol": g.tol,
        })),
        _ => {
            let mut s = format!("{}\n", serde_json::to_string(&value).expect("serializes"));
            for (k, r) in &checks {
                let _ = writeln!(s, "{} {k}: {r:.3e}", if *r <= g.tol { "pass" } else { "FAIL" });
            }
            s
        }
    };
    Ok(Outcome { stdout, passed })
}

fn fiber(g: &Global, n: usize, x: &ExactRational, vertex: &AlcovePoint, suite: Option<usize>) -> Run {
    no_csv(g, "fiber")?;
    check_n(n, vertex)?;
    let rep = fiber_report(vertex, x)?;
    let orbit = suite.map(|k| orbit_invariance_suite(vertex, x, k, g.seed)).transpose()?;
    let passed = orbit.as_ref().is_none_or(|o| o.passed());
    let stdout = match g.format {
        Format::Json => json_out(&json!({"report": rep, "suite": orbit})),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "xi = {vertex}, x = {x}");
            let _ = writeln!(s, "isotropy {} (dim {})", rep.isotropy.description, rep.isotropy.group_dim);
            let _ = writeln!(s, "stabilizer dim {}", rep.stabilizer.group_dim);
            let _ = writeln!(s, "fiber dim {}, type {}", rep.fiber_dim, rep.recognized_type);
            if let Some(o) = &orbit {
                let verdict = match &o.failure {
                    None => "pass".to_string(),
                    Some((i, w)) => format!("FAIL at sample {i}: {w}"),
                };
                let _ = writeln!(s, "orbit suite ({} samples, seed {}): {verdict}", o.samples, o.seed);
            }
            s
        }
    };
    Ok(Outcome { stdout, passed })
}

fn dynamics(g: &Global, n: usize, x: &ExactRational, check: DynamicsCheck, samples: usize) -> Run {
    no_csv(g, "dynamics")?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let (name, residual) = if check == DynamicsCheck::FiberFlow {
        if n != 4 {
            return Err(Failure::Usage("the fiber flow check is defined for n = 4".into()));
        }
        let [a, b] = fiber_flow_suite(x, samples.max(1), g.seed)?;
        let worst = [a, b].iter().map(|c| c.max_error.max(c.periodicity_error).max(c.moment_drift)).fold(0.0, f64::max);
        ("fiber-flow", worst)
    } else {
        let model = PolytopeModel::compute(n, x)?;
        let pts: Vec<(AlcovePoint, Vec<f64>)> = (0..samples)
            .map(|_| {
                let xi = random_interior_point(&model, &mut rng);
                (xi, (0..n - 1).map(|_| rng.random_range(0.0..2.0 * PI)).collect())
            })
            .collect();
        match check {
            DynamicsCheck::Lax => ("lax", lax_residuals(&pts, x)?.0),
            DynamicsCheck::CrossSection => ("cross-section", lax_residuals(&pts, x)?.1),
            DynamicsCheck::Trace => {
                let mut w: f64 = 0.0;
                for (xi, th) in &pts {
                    w = w.max(trace_discrepancy(xi, th, x)?);
                }
                ("trace", w)
            }
            DynamicsCheck::Flow => {
                let y = PI * x.to_f64();
                let mut w: f64 = 0.0;
                for (xi, th) in &pts {
                    let cs = cross_section(xi, th, x)?;
                    let grad = gradient_phi(1, &cs.b)?;
                    let (a, b) = flow_b_hamiltonian(&cs.a, &cs.b, &grad, 1.0)?;
                    w = w.max(moment_residual(&a, &b, y));
                }
                ("flow", w)
            }
            DynamicsCheck::FiberFlow => unreachable!("handled above"),
        }
    };
    let passed = residual <= g.tol;
    let stdout = match g.format {
        Format::Json => json_out(&json!({
            "check": name, "n": n, "x": x, "samples": samples, "seed": g.seed,
            "max_residual": residual, "tol": g.tol, "passed": passed,
        })),
        _ => format!(
            "{} {name}: max residual {residual:.3e} over {samples} samples (tol {:e})\n",
            if passed { "pass" } else { "FAIL" },
            g.tol
        ),
    };
    Ok(Outcome { stdout, passed })
}

fn verify(g: &Global, suite: Option<&str>, n: Option<usize>, samples: usize) -> Run {
    let names: Vec<&str> = suite.map_or_else(|| SUITES.to_vec(), |s| vec![s]);
    let opts = SuiteOptions { seed: g.seed, tol: None, stretch: g.stretch, n, samples };
    let mut stdout = String::new();
    let mut passed = true;
    for name in names {
        let rep = run_suite(name, &opts)?;
        eprintln!("{name}: {:.2} s", rep.elapsed.as_secs_f64());
        passed &= rep.passed();
        stdout.push_str(&emit(&rep, g.format));
    }
    Ok(Outcome { stdout, passed })
}
