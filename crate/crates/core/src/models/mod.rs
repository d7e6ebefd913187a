//! The four one-dimensional model problems as exact oracles: spectral
//! measures, expected coefficient tables and end-to-end checks.

mod checks;
mod manifold;
mod measures;
mod tables;

pub use checks::{
    euler_maclaurin_prediction, odd_corrections_vanish, offdiagonal_decay_check, trapezoid_defect, DecayReport,
    EulerMaclaurinTerm,
};
pub use manifold::{Boundary, Manifold, Observable};
pub use measures::spectral_measure;
pub use tables::expected_coeffs;
