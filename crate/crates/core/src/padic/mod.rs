//! p-adic foundations: the ring `O`, floating scalars, fixed-point
//! polynomials and cyclotomic extensions.

pub mod cyclo;
pub mod elem;
pub mod fx;
pub mod linalg;
pub mod ring;
pub mod zpoly;

pub use cyclo::{CycloElem, CycloRing};
pub use elem::{hensel_root, hensel_unit_root, teichmuller, PadicElem, PadicJson, Verdict, ZeroTest};
pub use fx::Fx;
pub use linalg::Mat;
pub use ring::{default_precision, OElem, Ring, RingKind, RingSpec};
