//! Filtered phi-modules, the finite-level Perrin-Riou pairings on abstract
//! dual-exponential tables, Gauss sums and the cohomological theta elements.

pub mod coh;
pub mod galois;
pub mod module;
pub mod pairing;
pub mod suite;

pub use coh::{c_mu, coh_theta_reconcile, coh_thetas, coh_via_pairing, companion_module, reconcile_ordinary, reconcile_supersingular, CohThetas};
pub use galois::{all_galois_characters, embed, gauss_sum, log_gamma, GaloisChar};
pub use module::{bf_formal, c_sequence, eigenbasis, eigenbasis_check, phi_power, phi_power_check, Eigenbasis, PhiModule, PhiModuleJson, PhiPower};
pub use pairing::{
    character_value, gamma_twist, gamma_twist_at, pairing_check, pairing_p, pairing_raw, pairing_script_p, pairing_trace, script_check,
    trivial_char_value, trivial_char_value_alt, DualExpTable, DualExpTableJson, PairingElement, PairingOutcome,
};
pub use suite::appendix_suite;
