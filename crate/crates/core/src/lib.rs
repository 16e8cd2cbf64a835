//! Two-sided Fabry-Perot cavity containing a four-level atomic medium whose
//! control fields form a closed interaction loop.
//!
//! Two coherent probe beams with relative phase `phi2` drive the cavity from
//! opposite mirrors, while the loop phase `phi1` of the three control fields
//! tunes the medium absorption. This crate computes the intracavity and
//! output intensity ratios in two independent ways:
//!
//! * [`model`] — the closed-form susceptibility, cavity response factor and
//!   intensity ratios, valid in the weak-probe limit;
//! * [`bloch`] — brute-force steady states of the full density-matrix
//!   equations of motion, both as a weak-probe linear solve and as a
//!   nonlinear time march, used to validate the closed form.
//!
//! [`sweep`] scans either route over 1D/2D grids of probe detuning and the
//! two phases, with presets for the standard spectrum/contour views.
//!
//! All rates and frequencies are expressed in units of the excited-state
//! decay rate, and the photon round-trip time is taken as the unit of time.

pub mod bloch;
pub mod error;
pub mod model;
pub mod params;
pub mod sweep;

pub use error::{Error, Result};
pub use model::{IntensityRecord, absorption_of, cavity_response, intensity_ratios, susceptibility};
pub use params::SystemParams;
pub use sweep::{Axis, AxisName, FigureId, SweepPoint, SweepResult};

pub use num_complex::Complex64;
