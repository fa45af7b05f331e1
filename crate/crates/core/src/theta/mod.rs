//! Synthetic Rankin-Selberg L-function families and their theta elements.

pub mod element;
pub mod family;
pub mod ledger;
pub mod params;
pub mod signed;

pub use element::{
    reconstruct_l, reconstruct_sum, theta_closed_form, theta_denominator_bound, theta_extra, theta_ordinary, theta_pm, thetas_at, verify_integrality,
    verify_interpolation, verify_reconstruct, ThetaElement, ThetaJson, ThetaSign,
};
pub use family::{synth_family, CycloJson, FamilyJson, LFamily, Member, SignedPair, ValueSpectrum};
pub use ledger::{c_ledger, verify_ledger, CLedger, LedgerLevel};
pub use params::{euler_e, is_non_anomalous, r_factor, Mode, NonAnomalousReport, RankinParams, Root};
pub use signed::{pm_congruence_check, trace_relation_check};
