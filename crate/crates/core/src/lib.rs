//! Exact and sampled statistics of spectrum estimation by Young-frame measurement.
//!
//! Measuring the Schur–Weyl isotypic projectors on `N` copies of a density operator
//! with spectrum `r` yields a Young frame `Y`, with probability
//! `s_Y(r) · dim[Y]`; `Y/N` estimates `r`. This crate computes that law exactly,
//! samples it through RSK insertion, and compares its tails with the relative-entropy
//! rate function.

pub mod cli;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod ldp;
pub mod logspace;
pub mod manifest;
pub mod measure;
pub mod output;
pub mod rsk;
pub mod schur;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{
    count_frames, dim_poly_bound, dim_symmetric_irrep, dim_unitary_irrep, enumerate_frames, frame_to_estimate,
    hook_lengths, Spectrum, YoungFrame,
};
pub use ldp::{
    cgf, empirical_cgf, inf_rate_over_region, j_equivalence_gap, legendre_of_cgf, rate, rate_scan, InfRate,
    LegendreResult, RateProfile,
};
pub use logspace::LogValue;
pub use measure::{
    distribution_mode, exact_distribution, expectation_of, region_probability, Region, SchurWeylDistribution,
};
pub use rsk::{empirical_distribution, sample_frames, CompactTableau, EmpiricalDistribution, SamplerConfig};
pub use schur::{schur_log, schur_log_bialternant, DiagonalState};
