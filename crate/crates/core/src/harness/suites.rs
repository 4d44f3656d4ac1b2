use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::data::{evaluate_row, reference, PolytopeEntry};
use super::{Case, SuiteOptions, SuiteReport, SUITES};
use crate::dynamics::{fiber_flow_suite, lax_residuals, trace_discrepancy};
use crate::error::{Error, Result};
use crate::farey::{classify_intervals, interval_counts_table, IntervalType};
use crate::fiber::{fiber_report, orbit_invariance_suite, FiberType};
use crate::polytope::{
    check_double_zero_vertex, check_simplest_type_ii, cyclic_orbits, edge_directions_at, face_lattice,
    is_lattice_basis, mapped_cone_directions, primitive_direction, symbolic_vertices, AlcovePoint, CheckReport,
    PolytopeModel,
};
use crate::rational::{AffineForm, ExactRational};
use crate::sampling::random_interior_point;

/// Largest `n` whose class extremes run without `--stretch`.
const DEFAULT_CLASS_N_MAX: usize = 12;

/// Runs one named suite.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let cases = match name {
        "interval-counts" => interval_counts(opts),
        "face-vectors" => face_vectors(opts),
        "vertex-tables" => vertex_tables(opts),
        "simplest-type-ii" => simplest_type_ii(opts),
        "double-zero-vertex" => double_zero_vertex(),
        "edge-directions" => edge_directions(),
        "singular-fibers" => singular_fibers(opts),
        "dynamics" => dynamics(opts),
        _ => {
            return Err(Error::UnknownSuite(format!("{name} (known: {})", SUITES.join(", "))));
        }
    };
    let mut report = SuiteReport::new(name, opts.seed);
    report.cases = cases;
    report.elapsed = start.elapsed();
    Ok(report)
}

fn wanted(opts: &SuiteOptions, n: usize) -> bool {
    opts.n.is_none_or(|m| m == n)
}

fn fmt_tuple<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Fewest and most cyclic vertex classes over the type (ii) intervals in
/// `(0, 1/2)`, each sampled at its midpoint. `None` if there are none.
pub fn class_count_extremes(n: usize) -> Result<Option<(usize, usize)>> {
    let counts: Vec<usize> = classify_intervals(n, true)
        .into_par_iter()
        .filter(|iv| iv.interval_type == IntervalType::TypeII)
        .map(|iv| PolytopeModel::compute(n, &iv.midpoint()).map(|m| cyclic_orbits(&m).len()))
        .collect::<Result<_>>()?;
    Ok(counts.iter().min().zip(counts.iter().max()).map(|(a, b)| (*a, *b)))
}

fn interval_counts(opts: &SuiteOptions) -> Vec<Case> {
    let table = &reference().interval_counts;
    let rows: Vec<_> = table.rows.iter().filter(|r| wanted(opts, r.n)).collect();
    let mut cases = Vec::new();
    for r in &rows {
        let got = interval_counts_table(r.n, r.n)[0];
        let src = &table.source;
        cases.push(Case::compare("type (i) intervals", r.type_i, got.type_i).with_n(r.n).with_source(src));
        cases.push(Case::compare("type (ii) intervals", r.type_ii, got.type_ii).with_n(r.n).with_source(src));
    }
    let extremes: Vec<_> = rows
        .par_iter()
        .map(|r| (r, (opts.stretch || r.n <= DEFAULT_CLASS_N_MAX).then(|| class_count_extremes(r.n))))
        .collect();
    for (r, got) in extremes {
        let ids = ["min classes", "max classes"];
        let exp = [r.min_classes, r.max_classes];
        match got {
            None => {
                for (id, e) in ids.into_iter().zip(exp) {
                    cases.push(Case::skipped(id, e, "needs --stretch").with_n(r.n));
                }
            }
            Some(Err(e)) => cases.push(Case::error(ids[0], exp[0], &e).with_n(r.n)),
            Some(Ok(None)) => cases.push(Case::compare(ids[0], exp[0], "no type (ii) interval").with_n(r.n)),
            Some(Ok(Some((lo, hi)))) => {
                for ((id, e), a) in ids.into_iter().zip(exp).zip([lo, hi]) {
                    cases.push(Case::compare(id, e, a).with_n(r.n).with_source(&table.source));
                }
            }
        }
    }
    cases
}

fn face_vectors(opts: &SuiteOptions) -> Vec<Case> {
    reference()
        .polytopes
        .par_iter()
        .filter(|p| wanted(opts, p.n))
        .map(|p| {
            let expected = fmt_tuple(&p.face_vector);
            let case = match p.interval().and_then(|iv| PolytopeModel::compute(p.n, &iv.midpoint())) {
                Ok(m) => Case::compare("face vector", expected, fmt_tuple(&face_lattice(&m).face_vector)),
                Err(e) => Case::error("face vector", expected, &e),
            };
            case.with_n(p.n).with_interval(p.label()).with_source(&p.source)
        })
        .collect()
}

fn rotations_match(a: &[AffineForm], b: &[AffineForm]) -> bool {
    let n = a.len();
    n == b.len() && (0..n).any(|s| (0..n).all(|j| a[(j + s) % n] == b[j]))
}

fn vertex_table(p: &PolytopeEntry) -> Vec<Case> {
    let tag = |c: Case| c.with_n(p.n).with_interval(p.label()).with_source(&p.source);
    let sym = match p.interval().and_then(|iv| symbolic_vertices(p.n, &iv)) {
        Ok(s) => s,
        Err(e) => return vec![tag(Case::error("vertex classes", p.rows.len(), &e))],
    };
    let mut cases = vec![tag(Case::compare("vertex classes", p.rows.len(), sym.classes.len()))];
    for row in &p.rows {
        let expected = fmt_tuple(&row.forms);
        let hit = sym.classes.iter().find(|c| rotations_match(&c.representative, &row.forms));
        let actual = hit.map_or_else(|| "no matching class".to_string(), |c| fmt_tuple(&c.representative));
        cases.push(tag(Case::check(format!("row {}", row.label), expected, actual, hit.is_some())));
    }
    cases
}

fn vertex_tables(opts: &SuiteOptions) -> Vec<Case> {
    let per: Vec<Vec<Case>> =
        reference().polytopes.par_iter().filter(|p| wanted(opts, p.n)).map(vertex_table).collect();
    per.into_iter().flatten().collect()
}

fn from_check(rep: CheckReport, n: usize) -> impl Iterator<Item = Case> {
    rep.items.into_iter().map(move |i| Case::check(i.name, i.expected, i.actual, i.passed).with_n(n))
}

fn simplest_type_ii(opts: &SuiteOptions) -> Vec<Case> {
    let ns: Vec<usize> = match opts.n {
        Some(n) => vec![n],
        None => (4..=9).collect(),
    };
    let per: Vec<Vec<Case>> = ns
        .par_iter()
        .map(|&n| {
            let iv = format!("(1/{},1/{})", n.saturating_sub(1), n.saturating_sub(2));
            if n < 4 {
                return vec![
                    Case::error("closed-form vertices", "n ≥ 4", &Error::Precondition(format!("n = {n}"))).with_n(n)
                ];
            }
            let x = (ExactRational::new(1, n as i64 - 1) + ExactRational::new(1, n as i64 - 2))
                / ExactRational::from_integer(2);
            match check_simplest_type_ii(n, &x) {
                Ok(rep) => from_check(rep, n).map(|c| c.with_interval(iv.clone())).collect(),
                Err(e) => vec![Case::error("closed-form vertices", "report", &e).with_n(n).with_interval(iv)],
            }
        })
        .collect();
    per.into_iter().flatten().collect()
}

fn double_zero_vertex() -> Vec<Case> {
    let d = &reference().double_zero_vertex;
    let p = evaluate_row(&d.point, &d.x);
    let mut cases: Vec<Case> = match check_double_zero_vertex(&d.x) {
        Ok(rep) => from_check(rep, d.n).collect(),
        Err(e) => return vec![Case::error("double-zero vertex", "report", &e).with_n(d.n)],
    };
    let active = PolytopeModel::compute(d.n, &d.x).map(|m| m.active_mask(&p).count_ones());
    cases.push(match active {
        Ok(a) => Case::compare(format!("active constraints (of {})", d.constraints), d.active, a),
        Err(e) => Case::error("active constraints", d.active, &e),
    });
    cases.into_iter().map(|c| c.with_n(d.n).with_source(&d.source)).collect()
}

fn edge_directions() -> Vec<Case> {
    let e = &reference().edge_directions;
    let mut expected = e.directions.clone();
    expected.sort();
    let mut cases = Vec::new();
    for x in &e.xs {
        let v = evaluate_row(&e.vertex, x);
        let model = match PolytopeModel::compute(e.n, x) {
            Ok(m) => m,
            Err(err) => {
                cases.push(Case::error(format!("x={x}"), "model", &err).with_n(e.n));
                continue;
            }
        };
        let got = edge_directions_at(&v, &model).map(|d| {
            let mut m = mapped_cone_directions(&d);
            m.sort();
            m
        });
        cases.push(match got {
            Ok(m) => Case::compare(format!("x={x} cone directions at {v}"), format!("{expected:?}"), format!("{m:?}")),
            Err(err) => Case::error(format!("x={x} cone directions"), format!("{expected:?}"), &err),
        });
        let regular: Vec<_> = model.vertices.iter().filter(|w| !w.point.is_singular()).collect();
        let unimodular = regular
            .iter()
            .filter(|w| {
                edge_directions_at(&w.point, &model).is_ok_and(|d| {
                    let chart: Vec<Vec<i64>> = d.iter().map(|e| primitive_direction(&e.raw[..3])).collect();
                    is_lattice_basis(&chart)
                })
            })
            .count();
        cases.push(Case::compare(format!("x={x} regular vertices with unimodular edges"), regular.len(), unimodular));
    }
    cases.into_iter().map(|c| c.with_n(e.n).with_source(&e.source)).collect()
}

fn singular_fibers(opts: &SuiteOptions) -> Vec<Case> {
    let table = &reference().singular_fibers;
    let per: Vec<Vec<Case>> = table
        .cases
        .par_iter()
        .filter(|c| wanted(opts, c.n))
        .map(|c| {
            let tag = |k: Case| k.with_n(c.n).with_interval(format!("x={}", c.x)).with_source(&table.source);
            let model = match PolytopeModel::compute(c.n, &c.x) {
                Ok(m) => m,
                Err(e) => return vec![tag(Case::error("model", "polytope", &e))],
            };
            let mut out = Vec::new();
            let bary = fiber_report(&AlcovePoint::barycentre(c.n), &c.x).map(|r| r.recognized_type);
            out.push(match bary {
                Ok(t) => Case::compare("fiber over the barycentre", FiberType::Torus(c.n - 1), t),
                Err(e) => Case::error("fiber over the barycentre", FiberType::Torus(c.n - 1), &e),
            });
            let (sing, reg): (Vec<_>, Vec<_>) = model.vertices.iter().partition(|v| v.point.is_singular());
            let points = reg
                .iter()
                .filter(|v| fiber_report(&v.point, &c.x).is_ok_and(|r| r.recognized_type == FiberType::Point))
                .count();
            out.push(Case::compare("regular vertices with point fibers", reg.len(), points));
            let spheres = sing
                .iter()
                .filter(|v| {
                    fiber_report(&v.point, &c.x)
                        .is_ok_and(|r| r.recognized_type == FiberType::Sphere3 && r.fiber_dim == 3)
                })
                .count();
            out.push(Case::compare("singular vertices with S^3 fibers", c.sphere_count, spheres));
            let mut bad = Vec::new();
            for v in &sing {
                match orbit_invariance_suite(&v.point, &c.x, opts.samples, opts.seed) {
                    Ok(r) if r.passed() => {}
                    Ok(r) => bad.push(format!("{}: {}", v.point, r.failure.map(|f| f.1).unwrap_or_default())),
                    Err(e) => bad.push(format!("{}: {e}", v.point)),
                }
            }
            let summary = if bad.is_empty() { format!("{} passed", sing.len()) } else { bad.join("; ") };
            out.push(Case::check(
                format!("orbit invariance ({} samples)", opts.samples),
                format!("{} passed", sing.len()),
                summary,
                bad.is_empty(),
            ));
            out.into_iter().map(tag).collect()
        })
        .collect();
    per.into_iter().flatten().collect()
}

const DYNAMICS_CASES: [(usize, i64, i64); 4] = [(4, 5, 12), (5, 7, 24), (6, 9, 40), (7, 23, 120)];

fn dynamics(opts: &SuiteOptions) -> Vec<Case> {
    let tol_lax = opts.tol.unwrap_or(1e-9);
    let tol_flow = opts.tol.unwrap_or(1e-7);
    let mut cases = Vec::new();
    for (n, p, q) in DYNAMICS_CASES.into_iter().filter(|c| wanted(opts, c.0)) {
        let x = ExactRational::new(p, q);
        let tag = |k: Case| k.with_n(n).with_interval(format!("x={x}"));
        let model = match PolytopeModel::compute(n, &x) {
            Ok(m) => m,
            Err(e) => {
                cases.push(tag(Case::error("model", "polytope", &e)));
                continue;
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let samples: Vec<(AlcovePoint, Vec<f64>)> = (0..opts.samples)
            .map(|_| {
                let xi = random_interior_point(&model, &mut rng);
                let theta = (0..n - 1).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
                (xi, theta)
            })
            .collect();
        let bound = format!("< {tol_lax:e}");
        match lax_residuals(&samples, &x) {
            Ok((lax, cross)) => {
                cases.push(tag(Case::check(
                    "Lax matrix unitarity defect",
                    &bound,
                    format!("{lax:.3e}"),
                    lax < tol_lax,
                )));
                cases.push(tag(Case::check(
                    "cross-section moment residual",
                    &bound,
                    format!("{cross:.3e}"),
                    cross < tol_lax,
                )));
            }
            Err(e) => cases.push(tag(Case::error("Lax residuals", &bound, &e))),
        }
        let trace =
            samples.iter().map(|(xi, th)| trace_discrepancy(xi, th, &x)).try_fold(0.0f64, |m, d| d.map(|d| m.max(d)));
        cases.push(tag(match trace {
            Ok(t) => Case::check("trace against the Hamiltonian", &bound, format!("{t:.3e}"), t < tol_lax),
            Err(e) => Case::error("trace against the Hamiltonian", &bound, &e),
        }));
    }
    if wanted(opts, 4) {
        let x = ExactRational::new(5, 12);
        let bound = format!("< {tol_flow:e}");
        match fiber_flow_suite(&x, 10, opts.seed) {
            Ok(checks) => {
                for c in checks {
                    let actual = format!(
                        "curve {:.3e}, period {:.3e}, drift {:.3e}",
                        c.max_error, c.periodicity_error, c.moment_drift
                    );
                    cases.push(
                        Case::check(
                            format!("fiber flow Z{} (10 random Z0)", c.which),
                            &bound,
                            actual,
                            c.passed(tol_flow),
                        )
                        .with_n(4)
                        .with_interval(format!("x={x}")),
                    );
                }
            }
            Err(e) => cases.push(Case::error("fiber flows", &bound, &e).with_n(4)),
        }
    }
    cases
}
