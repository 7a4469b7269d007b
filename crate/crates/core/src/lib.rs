//! Covariant affine integral quantization on the punctured plane.
//!
//! The configuration space is the punctured plane ℝ²∗ and the phase space
//! Γ = ℝ²∗ × ℝ² carries the group structure of the plane similitude group
//! SIM(2) = (ℝ⁺∗ × SO(2)) ⋉ ℝ². This crate implements
//!
//! * the SIM(2) group algebra with points treated as complex numbers
//!   ([`cplane`], [`sim2`]),
//! * the square-integrable unitary representation U(q,p) on L²(ℝ²∗, d²x),
//!   its Laguerre–Fourier matrix elements and the Duflo–Moore operator
//!   ([`sim2`], [`basis`]),
//! * quantizer operators M^ϖ built from weight functions ϖ(q,p) carried as
//!   partial Fourier transforms ω̂_p ([`weights`]),
//! * the quantization map f ↦ A^ϖ_f with its integral kernels and
//!   closed-form operators for position, momentum, kinetic, dilation and
//!   angular-momentum symbols ([`quantizer`]),
//! * phase-space portraits: lower symbols, Husimi-type densities, the affine
//!   Wigner quasi-probability and its marginals ([`portraits`]),
//! * the affine-coherent-state specialization with its Gamma-function
//!   constant tables ([`acs`]),
//! * a verification suite exercising every checkable identity ([`verify`]).
//!
//! Everything is dimensionless. All integrals over the punctured plane are
//! discretized on log-radial polar grids ([`numerics`]).

pub mod acs;
pub mod basis;
pub mod cplane;
pub mod error;
pub mod numerics;
pub mod portraits;
pub mod quantizer;
pub mod sim2;
pub mod verify;
pub mod weights;

pub use error::CoreError;
