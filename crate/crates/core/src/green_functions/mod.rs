//! Heat and cylinder kernels from spectral measures, closed-form model
//! kernels, weight derivatives, exponential integrals and expansion fitting.

pub mod closed_forms;
pub mod expansion;
pub mod expint;
pub mod traces;
pub mod weights;

pub use closed_forms::{model_kernel, model_trace, periodic_cylinder, periodic_heat, ThetaForm};
pub use expansion::{
    fit_kernel_expansion, fit_kernel_expansion_with, Estimate, ExpansionBasis, ExpansionEstimate, SlotEstimate,
    DEFAULT_FIT_POINTS, DEFAULT_FIT_WINDOW,
};
pub use expint::en_eval;
pub use traces::{cylinder_trace, heat_trace, kernel_from_measure, sample_kernel, KernelSamples, KernelValue};
pub use weights::{gaussian_derivative_coeffs, sqrt_exp_derivative_coeffs, weight_derivs, WeightKind};
