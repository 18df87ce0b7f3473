//! Differential uniformity toolkit for degree-10 polynomials over GF(2^n):
//! field arithmetic, derivative companions, quartic reductions, theorem
//! condition checks, and DDT spectra.

pub mod error;
pub mod gf2n;
pub mod poly;
pub mod quartic;
pub mod theorems;
pub mod uniformity;

pub use error::{Error, Result};
pub use gf2n::{ExtElement, ExtensionContext, FieldContext, FieldElement};
pub use poly::{Degree10Coeffs, DerivedPair, Poly};
pub use quartic::{CubicPattern, KleinReport, MorseReport, QuarticNormal, ResolventSet};
pub use theorems::{
    chebotarev_threshold, monodromy_stats, thm2_check, thm_main_check, ChebotarevParams,
    Condition, ConditionReport, Conclusion, StatsMode, TheoremId, TypeHistogram,
    DEFAULT_STATS_SAMPLES, DEFAULT_STATS_SEED, THM2_MIN_N, THM_MAIN_MIN_N,
};
pub use uniformity::{DeltaSummary, SpectrumRow};
