//! Seeded scans of `L_{c,f0}` for chords that leave the set.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::construction::necessity_construction;
use super::triangles::lemma42_coefficients;
use crate::affine::AffineProbe;
use crate::error::{GeoError, Result};
use crate::sampling::{default_radius, point_in_ball, stream};
use crate::space::{Point, SpaceKind, SpaceSpec};
use crate::tol;

/// Rejection-sampling budget per sub-level point.
pub const MAX_MEMBER_ATTEMPTS: usize = 10_000;
/// Tolerance of the decomposition identity `f0(gamma(t)) = a_t f0(p) + b_t f0(q)`.
pub const CERTIFICATE_TOL: f64 = 1e-8;
const GOLDEN_ITERS: usize = 200;

/// `x` belongs to `L_{c,f0} = {f0 <= c}`.
pub fn sublevel_membership(probe: &AffineProbe, c: f64, x: &Point) -> bool {
    probe.f0_value(x) <= c
}

/// `(1/2, 1/2)` and `(-1/2, 1/2)` on the half-plane.
pub fn reference_chord() -> (Point, Point) {
    let h = SpaceSpec::half_plane();
    (h.raw_point(vec![0.5, 0.5]), h.raw_point(vec![-0.5, 0.5]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanVerdict {
    WitnessFound,
    NoWitnessAtBudget,
}

/// A chord `[p, q]` of `L_{c,f0}` with `f0(gamma_pq(t)) > c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub p: Point,
    pub q: Point,
    pub t: f64,
    pub f0_at_t: f64,
    pub pair_index: usize,
    pub injected: bool,
}

/// Pointwise check of the tangent-decomposition bound on every scanned chord
/// point `x = gamma_pq(t)`: with `log_{x0} x = a_t log_{x0} p + b_t log_{x0} q`,
/// `f0(x) = a_t f0(p) + b_t f0(q)`; when moreover `a_t + b_t <= 1` and `c >= 0`
/// (or `a_t + b_t >= 1` and `c <= 0`) this gives `f0(x) <= (a_t + b_t) c <= c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateSummary {
    pub evaluations: usize,
    /// Points where `x0`, `p`, `q` are too close to collinear for the decomposition.
    pub degenerate: usize,
    pub max_identity_residual: f64,
    pub max_span_residual: f64,
    pub identity_failures: usize,
    /// Points where every premise of the bound held.
    pub bound_applied: usize,
    /// Points where the premises held but `f0(x) > c + CERTIFICATE_TOL`.
    pub bound_failures: usize,
}

impl CertificateSummary {
    fn empty() -> Self {
        CertificateSummary {
            evaluations: 0,
            degenerate: 0,
            max_identity_residual: 0.0,
            max_span_residual: 0.0,
            identity_failures: 0,
            bound_applied: 0,
            bound_failures: 0,
        }
    }

    fn merge(&mut self, o: &CertificateSummary) {
        self.evaluations += o.evaluations;
        self.degenerate += o.degenerate;
        self.max_identity_residual = self.max_identity_residual.max(o.max_identity_residual);
        self.max_span_residual = self.max_span_residual.max(o.max_span_residual);
        self.identity_failures += o.identity_failures;
        self.bound_applied += o.bound_applied;
        self.bound_failures += o.bound_failures;
    }

    pub fn holds(&self) -> bool {
        self.identity_failures == 0 && self.bound_failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub probe: AffineProbe,
    pub c: f64,
    pub n_pairs: usize,
    pub n_injected: usize,
    pub n_steps: usize,
    pub seed: u64,
    pub radius: f64,
    pub witness: Option<Witness>,
    pub verdict: ScanVerdict,
    pub certificate: Option<CertificateSummary>,
}

/// Scan budget and options.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub n_pairs: usize,
    pub n_steps: usize,
    pub seed: u64,
    /// Radius of the exp-chart sampling ball at `x0`; `None` uses the space default.
    pub radius: Option<f64>,
    /// Pairs scanned before the random ones (dropped if not both in the sub-level set).
    pub injected: Vec<(Point, Point)>,
    /// Prepend the explicit construction when it applies.
    pub inject_construction: bool,
    pub certificate: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            n_pairs: 1000,
            n_steps: 64,
            seed: tol::DEFAULT_SEED,
            radius: None,
            injected: Vec::new(),
            inject_construction: false,
            certificate: false,
        }
    }
}

fn sample_member<R: Rng>(rng: &mut R, probe: &AffineProbe, c: f64, radius: f64) -> Result<Point> {
    for _ in 0..MAX_MEMBER_ATTEMPTS {
        let x = point_in_ball(rng, &probe.space, &probe.x0, radius);
        if sublevel_membership(probe, c, &x) {
            return Ok(x);
        }
    }
    Err(GeoError::EmptySublevel {
        attempts: MAX_MEMBER_ATTEMPTS,
    })
}

fn sample_pair(
    probe: &AffineProbe,
    c: f64,
    radius: f64,
    seed: u64,
    index: usize,
) -> Result<(Point, Point)> {
    let mut rng = stream(seed, index as u64);
    let p = sample_member(&mut rng, probe, c, radius)?;
    let q = sample_member(&mut rng, probe, c, radius)?;
    Ok((p, q))
}

struct ChordResult {
    violation: Option<(f64, f64)>,
    certificate: CertificateSummary,
}

fn golden_max<F: Fn(f64) -> f64>(g: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut g1, mut g2) = (g(x1), g(x2));
    for _ in 0..GOLDEN_ITERS {
        if b - a < 1e-13 {
            break;
        }
        if g1 >= g2 {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - r * (b - a);
            g1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + r * (b - a);
            g2 = g(x2);
        }
    }
    if g1 >= g2 {
        (x1, g1)
    } else {
        (x2, g2)
    }
}

fn scan_chord(
    probe: &AffineProbe,
    c: f64,
    p: &Point,
    q: &Point,
    n_steps: usize,
    certificate: bool,
) -> ChordResult {
    let space = probe.space;
    let mut cert = CertificateSummary::empty();
    let seg = match space.geodesic(p, q) {
        Ok(seg) => seg,
        Err(_) => {
            return ChordResult {
                violation: None,
                certificate: cert,
            }
        }
    };
    let grid = |k: usize| k as f64 / (n_steps + 1) as f64;
    let values: Vec<f64> = (1..=n_steps)
        .map(|k| probe.f0_value(&seg.eval(grid(k))))
        .collect();
    if certificate {
        let (fp, fq) = (probe.f0_value(p), probe.f0_value(q));
        let positive = space.kind() == SpaceKind::Sphere;
        let flat = space.kind() == SpaceKind::Euclidean;
        for (k, &fx) in values.iter().enumerate() {
            cert.evaluations += 1;
            match lemma42_coefficients(&space, &probe.x0, p, q, grid(k + 1)) {
                Ok(co) => {
                    let bound = co.a_t * fp + co.b_t * fq;
                    let resid = (fx - bound).abs();
                    cert.max_identity_residual = cert.max_identity_residual.max(resid);
                    cert.max_span_residual = cert.max_span_residual.max(co.span_residual);
                    let identity = resid <= CERTIFICATE_TOL;
                    if !identity {
                        cert.identity_failures += 1;
                    }
                    let sum = co.a_t + co.b_t;
                    let scale_ok = if flat {
                        true
                    } else if positive {
                        c <= 0.0 && sum >= 1.0
                    } else {
                        c >= 0.0 && sum <= 1.0
                    };
                    if identity && co.a_t > 0.0 && co.b_t > 0.0 && fp <= c && fq <= c && scale_ok {
                        cert.bound_applied += 1;
                        if fx > c + CERTIFICATE_TOL {
                            cert.bound_failures += 1;
                        }
                    }
                }
                Err(_) => cert.degenerate += 1,
            }
        }
    }
    let (k_best, v_best) =
        values
            .iter()
            .enumerate()
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, (k, &v)| if v > acc.1 { (k, v) } else { acc },
            );
    let violation = (v_best > c + tol::WITNESS_MARGIN).then(|| {
        let (lo, hi) = (grid(k_best), grid(k_best + 2));
        let (t, v) = golden_max(|t| probe.f0_value(&seg.eval(t)), lo, hi);
        if v >= v_best {
            (t, v)
        } else {
            (grid(k_best + 1), v_best)
        }
    });
    ChordResult {
        violation,
        certificate: cert,
    }
}

/// Seeded scan of `n_pairs` random chords of `L_{c,f0}` at `n_steps` interior parameters.
pub fn convexity_scan(
    probe: &AffineProbe,
    c: f64,
    n_pairs: usize,
    n_steps: usize,
    seed: u64,
) -> Result<ConvexityReport> {
    convexity_scan_with(
        probe,
        c,
        &ScanConfig {
            n_pairs,
            n_steps,
            seed,
            ..ScanConfig::default()
        },
    )
}

/// Scan with injected pairs, custom radius and the optional certificate check.
/// The witness is the first violating pair by index (injected pairs first),
/// reported at the parameter maximising `f0` on its chord.
pub fn convexity_scan_with(
    probe: &AffineProbe,
    c: f64,
    cfg: &ScanConfig,
) -> Result<ConvexityReport> {
    if cfg.n_pairs == 0 || cfg.n_steps == 0 {
        return Err(GeoError::InvalidPoint(
            "scan budget must be positive".into(),
        ));
    }
    let radius = cfg.radius.unwrap_or_else(|| default_radius(&probe.space));
    let mut injected: Vec<(Point, Point)> = Vec::new();
    injected.extend(cfg.injected.iter().cloned());
    if cfg.inject_construction {
        injected.extend(necessity_construction(probe, c));
    }
    injected.retain(|(p, q)| {
        p.space == probe.space
            && q.space == probe.space
            && sublevel_membership(probe, c, p)
            && sublevel_membership(probe, c, q)
    });
    let n_injected = injected.len();

    // Fail fast on an empty sub-level set before fanning out.
    let first = sample_pair(probe, c, radius, cfg.seed, 0)?;
    let rest: Vec<Result<(Point, Point)>> = (1..cfg.n_pairs)
        .into_par_iter()
        .map(|i| sample_pair(probe, c, radius, cfg.seed, i))
        .collect();
    let mut pairs = injected;
    pairs.push(first);
    for r in rest {
        pairs.push(r?);
    }

    let results: Vec<ChordResult> = pairs
        .par_iter()
        .map(|(p, q)| scan_chord(probe, c, p, q, cfg.n_steps, cfg.certificate))
        .collect();
    let mut certificate = cfg.certificate.then(CertificateSummary::empty);
    let mut witness = None;
    for (i, r) in results.iter().enumerate() {
        if let Some(cert) = certificate.as_mut() {
            cert.merge(&r.certificate);
        }
        if witness.is_none() {
            if let Some((t, v)) = r.violation {
                witness = Some(Witness {
                    p: pairs[i].0.clone(),
                    q: pairs[i].1.clone(),
                    t,
                    f0_at_t: v,
                    pair_index: i,
                    injected: i < n_injected,
                });
            }
        }
    }
    Ok(ConvexityReport {
        probe: probe.clone(),
        c,
        n_pairs: cfg.n_pairs,
        n_injected,
        n_steps: cfg.n_steps,
        seed: cfg.seed,
        radius,
        verdict: if witness.is_some() {
            ScanVerdict::WitnessFound
        } else {
            ScanVerdict::NoWitnessAtBudget
        },
        witness,
        certificate,
    })
}

/// One scan per level of `c_grid`, all with the same budget and seed.
pub fn threshold_experiment(
    probe: &AffineProbe,
    c_grid: &[f64],
    cfg: &ScanConfig,
) -> Result<Vec<ConvexityReport>> {
    c_grid
        .iter()
        .map(|&c| convexity_scan_with(probe, c, cfg))
        .collect()
}
