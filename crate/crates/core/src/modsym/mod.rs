//! Weight-two modular symbols for `Gamma_0(N)`, eigen-symbols of rational
//! elliptic curves and classical Mazur-Tate elements.

pub mod curve;
pub mod mazur_tate;
pub mod p1;
pub mod qlinalg;
pub mod space;
pub mod symbol;

pub use curve::{ap_oracle, point_count, CurveJson, EllipticCurve};
pub use mazur_tate::{
    mazur_tate, ord_report, project_gn, project_units, three_term_check, unit_convolution, ClassCoeff, MazurTateElement, MazurTateJson, OrdReport,
    RationalGroupRing,
};
pub use space::ManinSpace;
pub use symbol::{eigen_check, eigen_symbol, EigenSymbol};
