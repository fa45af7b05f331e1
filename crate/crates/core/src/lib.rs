//! Theta elements attached to Rankin-Selberg p-adic L-functions.
//!
//! The crate is layered bottom-up:
//!
//! * [`padic`]: finite extensions `O` of `Z_p`, floating p-adic scalars and
//!   cyclotomic extensions `O[z]/Phi_m`.
//! * [`iwalg`]: the group rings `Lambda_n = O[X]/omega_n`, characters,
//!   CRT interpolation and tempered power series.
//! * [`theta`]: synthetic L-function families, theta elements and the
//!   verification suites built on them.
//! * [`phimod`]: filtered phi-modules, Perrin-Riou pairings and the
//!   coherent theta elements.
//! * [`fitting`]: Fitting ideals of finite presentations and ideal membership.
//! * [`modsym`]: weight-two modular symbols and Mazur-Tate elements.
//! * [`suites`]: seeded end-to-end verification suites.

pub mod error;
pub mod fitting;
pub mod iwalg;
pub mod modsym;
pub mod padic;
pub mod phimod;
pub mod report;
pub mod suites;
pub mod theta;

pub use error::{Error, Result};
