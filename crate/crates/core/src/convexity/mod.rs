//! Sub-level sets of `f0`: seeded convexity scans with witness search, the
//! explicit non-convexity construction for the threshold regimes, and the
//! triangle comparison toolkit.

mod construction;
mod scan;
mod triangles;

pub use construction::{construction_applies, necessity_construction};
pub use scan::{
    convexity_scan, convexity_scan_with, reference_chord, sublevel_membership,
    threshold_experiment, CertificateSummary, ConvexityReport, ScanConfig, ScanVerdict, Witness,
    MAX_MEMBER_ATTEMPTS,
};
pub use triangles::{
    comparison_triangle, law_of_cosines_check, lemma42_coefficients, random_triangles,
    triangle_suite, ComboCoefficients, ComparisonTriangle, LawOfCosinesReport, TriangleData,
    TriangleSuiteStats, GRAM_DET_REL, MIN_ANGLE, MIN_SIDE,
};
