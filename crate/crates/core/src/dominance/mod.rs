//! Stochastic dominance on finite posets and the determinantal
//! domination results built on it.
//!
//! `P₁ ≺ P₂` means `P₁(U) ≤ P₂(U)` for every up-closed set `U`. Small posets
//! are decided by enumerating upsets; larger ones by a max-flow search for a
//! monotone coupling, whose min cut doubles as a violating upset.

mod empirical;
mod flow;
mod lyons;
mod poset;
mod vandermonde;

pub use empirical::{empirical_dominance, EmpiricalReport, EmpiricalSample, EmpiricalVerdict, MIN_SAMPLE};
pub use flow::{strassen_flow, CouplingResult, FLOW_SCALE};
pub use lyons::{
    detequality_continuous, detequality_discrete, detinequality_continuous, laguerre_functions, positivity_check,
    verify_lyons, ContainmentPair, IdentityCheck, InequalityCheck, LyonsReport, PositivityReport,
};
pub use poset::{dominance_exact, upset_enumerate, DominanceMethod, DominanceReport, FinitePoset, MeasurePair, UPSET_LIMIT};
pub use vandermonde::{density_ratio_domination, verify_vandermonde, RatioReport, VandermondeReport, VandermondeWeight};
