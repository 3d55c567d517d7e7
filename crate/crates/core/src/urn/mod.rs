//! The urn model: each token is an independent draw from a fixed type
//! distribution, and `V(T)` is the number of distinct types seen after `T`
//! draws.

pub mod arith;
pub mod dist;
pub mod expect;
pub mod mc;
pub mod model;
pub mod pseudo;
pub mod stirling;
pub mod sweep;

pub use arith::{Arithmetic, BigFloat, Exact, Float, DEFAULT_PRECISION_BITS};
pub use dist::{moment_f64, moments, parse_exponent, zipf_distribution, MomentVector, TypeDistribution};
pub use expect::{
    expected_types_exact, expected_types_with_replacement, expected_types_without_replacement,
    expected_types_without_replacement_exact, expected_types_without_replacement_from_counts, poisson_approx,
    write_expectation_csv,
};
pub use mc::{mc_expected_types, McEstimate};
pub use model::{model_curve_fit, FitGrid};
pub use pseudo::{
    beta_coeffs, closed_form_t3, pseudo_mean, pseudo_spectrum, pseudo_variance, pseudo_weights, spectrum_summary,
    ClosedFormT3, Precision, PseudoSpectrum, PseudoWeights, SpectrumSummary, INSTABILITY_THRESHOLD,
};
pub use stirling::{stirling_first, stirling_table};
pub use sweep::{zipf_sweep, write_sweep_csv, SweepConfig, SweepRow};
