//! Numeric Riesz means of spectral measures, the change-of-variable
//! identities, Stieltjes means and asymptotic fitting.

pub mod fit;
pub mod identities;
pub mod io;
pub mod means;
pub mod measure;
pub mod stieltjes;

pub use fit::{asymptotic_fit, fit_points, BasisTerm, FitResult, FitSpec, Weighting};
pub use identities::{hardy_identity_residual, hardy_identity_residual_with, hormander_identity_residual};
pub use means::{
    density_integral, geometric_grid, power_mean, riesz_integral, riesz_mean, riesz_mean_in, sample_means, MeanSamples,
};
pub use measure::{
    change_variable, Atom, AtomEnvelope, DecayKernel, Density, DensityProfile, SpectralMeasure, Variable,
};
pub use stieltjes::{stieltjes_mean, ExpWeight, LinearWeight, StieltjesWeight, UnitWeight};
