//! Subcommand implementations. Each returns whether every asserted property held.

use anyhow::{bail, ensure};
use geoaffine_core::affine::{
    counterexample_suite_with, CounterexampleReport, Relation, SuiteTolerances,
};
use geoaffine_core::convexity::{
    convexity_scan_with, reference_chord, threshold_experiment, triangle_suite, ConvexityReport,
    ScanConfig, TriangleSuiteStats,
};
use geoaffine_core::poincare::transport_rk4;
use geoaffine_core::{tol, SpaceKind, SpaceSpec};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::{
    BudgetArgs, Format, OutputArgs, PlotArgs, ScanArgs, SweepArgs, TransportArgs, TriangleArgs,
    VerifyArgs,
};
use crate::output::{csv_text, document, emit, fmt12, fmt_coords, to_json_text};
use crate::plot::{level_plot, Chart};

fn write_json<T: Serialize>(
    out: &OutputArgs,
    command: &str,
    body: &T,
    extra: Vec<(&str, Value)>,
) -> anyhow::Result<()> {
    emit(
        out.out.as_deref(),
        &to_json_text(&document(command, body, extra)?)?,
    )
}

fn no_svg(out: &OutputArgs, command: &str) -> anyhow::Result<()> {
    ensure!(out.format != Format::Svg, "{command} writes json or csv");
    Ok(())
}

/// Published constants shown beside the computed ones.
fn reference_constants() -> Value {
    json!({
        "f0(1/2,1/2)": "-0.4304...",
        "f0(0,1/sqrt2)": "-0.3465...",
        "grad f0(2,1)": "(sqrt2/8 ln(3+2 sqrt2) + 1/2, sqrt2/8 ln(3+2 sqrt2) - 1/2)",
        "X0(2,1)": "(1, 0)",
        "nabla_{d/dt1} X0 (2,1)": "(0, 0.5)",
        "curl X0 (2,1)": "0.5",
    })
}

fn relation_fields(r: &Relation) -> (&'static str, f64) {
    match *r {
        Relation::Close { tolerance } => ("close", tolerance),
        Relation::Below { bound } => ("below", bound),
        Relation::Above { bound } => ("above", bound),
    }
}

fn print_summary(report: &CounterexampleReport) {
    for a in &report.assertions {
        let status = if a.passed { "PASS" } else { "FAIL" };
        eprintln!("{status} ({}) {}", a.id, a.statement);
        for c in &a.checks {
            let (rel, bound) = relation_fields(&c.relation);
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let want = if c.expected.is_empty() {
                format!("{rel} {}", fmt12(bound))
            } else {
                format!(
                    "expected ({}) tol {}",
                    fmt_coords(&c.expected).replace(';', ", "),
                    fmt12(bound)
                )
            };
            eprintln!(
                "    {mark} {} = ({})  {want}",
                c.label,
                fmt_coords(&c.value).replace(';', ", ")
            );
        }
    }
}

pub fn verify_counterexample(args: &VerifyArgs) -> anyhow::Result<bool> {
    no_svg(&args.output, "verify-counterexample")?;
    let mut tol = SuiteTolerances::default();
    if let Some(t) = args.tol {
        ensure!(
            t.is_finite() && t >= 0.0,
            "--tol must be a non-negative number"
        );
        tol.gradient_fd = t;
        tol.connection_fd = t;
    }
    let report = counterexample_suite_with(tol);
    print_summary(&report);
    match args.output.format {
        Format::Csv => {
            let mut rows = Vec::new();
            for a in &report.assertions {
                for c in &a.checks {
                    let (rel, bound) = relation_fields(&c.relation);
                    rows.push(vec![
                        a.id.clone(),
                        c.label.clone(),
                        fmt_coords(&c.value),
                        fmt_coords(&c.expected),
                        rel.to_string(),
                        fmt12(bound),
                        c.passed.to_string(),
                    ]);
                }
            }
            let header = [
                "assertion",
                "label",
                "value",
                "expected",
                "relation",
                "bound",
                "passed",
            ];
            emit(args.output.out.as_deref(), &csv_text(&header, &rows)?)?;
        }
        _ => write_json(
            &args.output,
            "verify-counterexample",
            &report,
            vec![("reference_constants", reference_constants())],
        )?,
    }
    Ok(report.passed)
}

fn scan_config(space: &SpaceSpec, b: &BudgetArgs) -> anyhow::Result<ScanConfig> {
    ensure!(
        b.pairs >= 1 && b.steps >= 1,
        "--pairs and --steps must be at least 1"
    );
    let mut injected = Vec::new();
    if b.inject_paper_points {
        ensure!(
            space.kind() == SpaceKind::HalfPlane,
            "--inject-paper-points needs --space halfplane"
        );
        injected.push(reference_chord());
    }
    Ok(ScanConfig {
        n_pairs: b.pairs,
        n_steps: b.steps,
        seed: b.seed,
        radius: b.radius,
        injected,
        inject_construction: b.inject_construction,
        certificate: b.certificate,
    })
}

const SCAN_HEADER: [&str; 8] = [
    "c",
    "verdict",
    "witness_p",
    "witness_q",
    "t",
    "f0_at_witness",
    "n_pairs",
    "seed",
];

fn scan_row(r: &ConvexityReport) -> Vec<String> {
    let verdict = format!("{:?}", r.verdict);
    match &r.witness {
        Some(w) => vec![
            fmt12(r.c),
            verdict,
            fmt_coords(&w.p.coords),
            fmt_coords(&w.q.coords),
            fmt12(w.t),
            fmt12(w.f0_at_t),
            r.n_pairs.to_string(),
            r.seed.to_string(),
        ],
        None => vec![
            fmt12(r.c),
            verdict,
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            r.n_pairs.to_string(),
            r.seed.to_string(),
        ],
    }
}

fn certificate_ok(r: &ConvexityReport) -> bool {
    r.certificate.as_ref().is_none_or(|c| c.holds())
}

fn report_scan(r: &ConvexityReport) {
    match &r.witness {
        Some(w) => eprintln!(
            "c = {}: WitnessFound  p = ({})  q = ({})  t = {}  f0 = {}",
            fmt12(r.c),
            fmt_coords(&w.p.coords).replace(';', ", "),
            fmt_coords(&w.q.coords).replace(';', ", "),
            fmt12(w.t),
            fmt12(w.f0_at_t)
        ),
        None => eprintln!(
            "c = {}: NoWitnessAtBudget ({} pairs, {} steps)",
            fmt12(r.c),
            r.n_pairs,
            r.n_steps
        ),
    }
    if let Some(c) = &r.certificate {
        eprintln!(
            "    certificate: {} evaluations, identity residual {}, bound applied {}, failures {}",
            c.evaluations,
            fmt12(c.max_identity_residual),
            c.bound_applied,
            c.identity_failures + c.bound_failures
        );
    }
}

pub fn scan(args: &ScanArgs) -> anyhow::Result<bool> {
    no_svg(&args.output, "scan")?;
    let space = args.space.spec()?;
    let probe = args.probe.probe(space)?;
    let cfg = scan_config(&space, &args.budget)?;
    let report = convexity_scan_with(&probe, args.c, &cfg)?;
    report_scan(&report);
    match args.output.format {
        Format::Csv => emit(
            args.output.out.as_deref(),
            &csv_text(&SCAN_HEADER, &[scan_row(&report)])?,
        )?,
        _ => write_json(
            &args.output,
            "scan",
            &report,
            vec![("space", serde_json::to_value(space)?)],
        )?,
    }
    Ok(certificate_ok(&report))
}

pub fn sweep(args: &SweepArgs) -> anyhow::Result<bool> {
    no_svg(&args.output, "sweep")?;
    let space = args.space.spec()?;
    let probe = args.probe.probe(space)?;
    let cfg = scan_config(&space, &args.budget)?;
    let rows = threshold_experiment(&probe, &args.c_grid, &cfg)?;
    rows.iter().for_each(report_scan);
    match args.output.format {
        Format::Csv => {
            let body: Vec<_> = rows.iter().map(scan_row).collect();
            emit(args.output.out.as_deref(), &csv_text(&SCAN_HEADER, &body)?)?;
        }
        _ => write_json(
            &args.output,
            "sweep",
            &rows,
            vec![("space", serde_json::to_value(space)?)],
        )?,
    }
    Ok(rows.iter().all(certificate_ok))
}

#[derive(Debug, Serialize)]
struct TriangleCheck {
    name: &'static str,
    value: f64,
    relation: &'static str,
    bound: f64,
    holds: bool,
}

fn triangle_checks(space: &SpaceSpec, s: &TriangleSuiteStats) -> Vec<TriangleCheck> {
    let gt = |name, value: f64, bound: f64| TriangleCheck {
        name,
        value,
        relation: ">",
        bound,
        holds: value > bound,
    };
    let ge = |name, value: f64, bound: f64| TriangleCheck {
        name,
        value,
        relation: ">=",
        bound,
        holds: value >= bound,
    };
    let le = |name, value: f64, bound: f64| TriangleCheck {
        name,
        value,
        relation: "<=",
        bound,
        holds: value <= bound,
    };
    let mut checks = vec![
        gt("min a_t", s.min_a_t, 0.0),
        gt("min b_t", s.min_b_t, 0.0),
        le("max span residual", s.max_span_residual, 1e-8),
    ];
    match space.kind() {
        SpaceKind::Sphere => {
            checks.push(ge("min a_t + b_t", s.min_ab_sum, 1.0 - 1e-9));
            checks.push(gt("min law-of-cosines margin", s.min_cosine_margin, 1e-10));
        }
        SpaceKind::Hyperbolic | SpaceKind::HalfPlane => {
            checks.push(le("max a_t + b_t", s.max_ab_sum, 1.0 + 1e-9));
            checks.push(gt("min law-of-cosines margin", s.min_cosine_margin, 1e-10));
        }
        SpaceKind::Euclidean => {
            checks.push(ge("min a_t + b_t", s.min_ab_sum, 1.0 - 1e-10));
            checks.push(le("max a_t + b_t", s.max_ab_sum, 1.0 + 1e-10));
            checks.push(le(
                "max |law-of-cosines defect|",
                s.max_abs_cosine_defect,
                1e-10,
            ));
        }
    }
    checks.push(ge("min comparison slack", s.min_comparison_slack, -1e-10));
    checks
}

pub fn triangles(args: &TriangleArgs) -> anyhow::Result<bool> {
    no_svg(&args.output, "triangles")?;
    ensure!(args.triangles >= 1, "--triangles must be at least 1");
    let space = args.space.spec()?;
    let stats = triangle_suite(&space, args.triangles, args.seed)?;
    let checks = triangle_checks(&space, &stats);
    for c in &checks {
        let status = if c.holds { "PASS" } else { "FAIL" };
        eprintln!(
            "{status} {} = {} {} {}",
            c.name,
            fmt12(c.value),
            c.relation,
            fmt12(c.bound)
        );
    }
    match args.output.format {
        Format::Csv => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.to_string(),
                        fmt12(c.value),
                        c.relation.to_string(),
                        fmt12(c.bound),
                        c.holds.to_string(),
                    ]
                })
                .collect();
            emit(
                args.output.out.as_deref(),
                &csv_text(&["check", "value", "relation", "bound", "holds"], &rows)?,
            )?;
        }
        _ => write_json(
            &args.output,
            "triangles",
            &stats,
            vec![("checks", serde_json::to_value(&checks)?)],
        )?,
    }
    Ok(checks.iter().all(|c| c.holds))
}

pub fn plot_levelset(args: &PlotArgs) -> anyhow::Result<bool> {
    let space = args.space.spec()?;
    let probe = args.probe.probe(space)?;
    let window = match &args.window {
        Some(w) => {
            ensure!(w.len() == 4, "--window takes xmin,xmax,ymin,ymax");
            ensure!(
                w[0] < w[1] && w[2] < w[3],
                "--window bounds must be increasing"
            );
            [w[0], w[1], w[2], w[3]]
        }
        None => Chart::default_window(&space),
    };
    ensure!(args.grid >= 2, "--grid must be at least 2");
    let plot = level_plot(&probe, args.c, window, args.grid)?;
    match args.output.format {
        Format::Csv => emit(
            args.output.out.as_deref(),
            &csv_text(&["t1", "t2", "f0"], &plot.csv_rows())?,
        )?,
        Format::Svg => emit(
            args.output.out.as_deref(),
            &plot.svg(&format!("f0 sub-level set on {}", space)),
        )?,
        Format::Json => write_json(
            &args.output,
            "plot-levelset",
            &plot,
            vec![("space", serde_json::to_value(space)?)],
        )?,
    }
    Ok(true)
}

pub fn transport(args: &TransportArgs) -> anyhow::Result<bool> {
    no_svg(&args.output, "transport")?;
    let space = args.space.spec()?;
    let probe = args.probe.probe(space)?;
    let to = space.project_point(args.to.clone())?;
    let result = space.transport_to(&probe.u0, &to)?;
    let (n_in, n_out) = (space.norm(&probe.u0), space.norm(&result));
    let oracle = if space.kind() == SpaceKind::HalfPlane && probe.x0 != to {
        let w = [probe.u0.comps[0], probe.u0.comps[1]];
        Some(transport_rk4(&probe.x0, &to, w, tol::RK4_STEPS)?.to_vec())
    } else {
        None
    };
    if args.output.format == Format::Csv {
        let row = vec![
            fmt_coords(&probe.x0.coords),
            fmt_coords(&probe.u0.comps),
            fmt_coords(&to.coords),
            fmt_coords(&result.comps),
            fmt12(n_in),
            fmt12(n_out),
        ];
        let header = ["from", "vector", "to", "result", "norm_in", "norm_out"];
        emit(args.output.out.as_deref(), &csv_text(&header, &[row])?)?;
    } else {
        let body = json!({
            "from": probe.x0.coords,
            "vector": probe.u0.comps,
            "to": to.coords,
            "result": result.comps,
            "norm_in": n_in,
            "norm_out": n_out,
            "rk4_oracle": oracle,
        });
        write_json(
            &args.output,
            "transport",
            &body,
            vec![("space", serde_json::to_value(space)?)],
        )?;
    }
    if (n_in - n_out).abs() > 1e-9 * n_in.max(1.0) {
        bail!("transport changed the norm from {n_in} to {n_out}");
    }
    Ok(true)
}
