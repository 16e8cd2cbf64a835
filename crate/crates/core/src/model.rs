//! Closed-form cavity response.
//!
//! In the weak-probe limit the medium susceptibility has the closed form
//!
//! ```text
//! chi = g^2 N (O2^2 - A*B)
//!       / (2 O1 O2 Ot cos(phi1) - A Ot^2 - B O1^2 - C O2^2 + A*B*C)
//! ```
//!
//! with the complex detuning factors
//!
//! ```text
//! A = (dp - d1)           + i gamma12
//! B = (dp - d1 + d2)      + i gamma4
//! C = (dp - d1 + d2 - dt) + i gamma3
//! ```
//!
//! The cavity pole turns this into the response factor
//! `r = kappa / (kappa - i dc - i chi)` and the symmetric two-sided drive
//! with relative phase `phi2` gives the intensity ratios
//!
//! ```text
//! I_c / I_in     = |r (1 + e^{ i phi2})|^2
//! I_out_r / I_in = |r (1 + e^{ i phi2}) - 1|^2
//! I_out_l / I_in = |r (1 + e^{-i phi2}) - 1|^2
//! ```
//!
//! Everything is a ratio to the single-beam input intensity; the absolute
//! input never appears. The loop phase enters only through `cos(phi1)`, so
//! every observable is even in `phi1`, and `phi2 = pi` empties the cavity
//! regardless of the medium (perfect transmitter/reflector).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Relative guard below which a response denominator counts as singular.
pub const SINGULAR_GUARD: f64 = 1e-12;

/// The three complex detuning factors of the susceptibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

/// Evaluated observables at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityRecord {
    /// Probe detuning this record was evaluated at.
    pub delta_p: f64,
    /// Intracavity intensity ratio `I_c / I_in`.
    pub i_c: f64,
    /// Output ratio through the right mirror.
    pub i_out_r: f64,
    /// Output ratio through the left mirror.
    pub i_out_l: f64,
    /// `i_out_r + i_out_l`, exact by construction.
    pub i_total: f64,
    /// Absorbed fraction of the total input, `1 - i_total / 2`.
    pub absorption: f64,
    /// Medium susceptibility at this point.
    pub chi: Complex64,
}

/// The complex detuning factors `A`, `B`, `C` at probe detuning `delta_p`.
///
/// Total on finite inputs; no guard is needed here.
pub fn coefficients(p: &SystemParams, delta_p: f64) -> Coefficients {
    let one_photon = delta_p - p.delta1;
    Coefficients {
        a: Complex64::new(one_photon, p.gamma12),
        b: Complex64::new(one_photon + p.delta2, p.gamma4),
        c: Complex64::new(one_photon + p.delta2 - p.delta_t, p.gamma3),
    }
}

/// Weak-probe susceptibility of the loop medium at `delta_p`.
///
/// Fails with [`Error::NearSingular`] when the denominator magnitude drops
/// below `1e-12 * max(1, O1*O2*Ot)` — a parameter set (for instance
/// `gamma12 -> 0` at multiphoton resonance) where the closed form is
/// numerically meaningless.
pub fn susceptibility(p: &SystemParams, delta_p: f64) -> Result<Complex64> {
    let Coefficients { a, b, c } = coefficients(p, delta_p);
    let (o1, o2, ot) = (p.omega1, p.omega2, p.omega_t);
    let numerator = p.g_n * p.g_n * (o2 * o2 - a * b);
    let denominator =
        2.0 * o1 * o2 * ot * p.phi1.cos() - a * (ot * ot) - b * (o1 * o1) - c * (o2 * o2)
            + a * b * c;
    let guard = SINGULAR_GUARD * (o1 * o2 * ot).max(1.0);
    let mag = denominator.norm();
    if mag < guard {
        return Err(Error::NearSingular {
            context: "susceptibility",
            magnitude: mag,
            guard,
        });
    }
    Ok(numerator / denominator)
}

/// Cavity response factor `r = kappa / (kappa - i dc - i chi)`.
///
/// `I_c / I_in = |r (1 + e^{i phi2})|^2`, and the output ratios follow from
/// `r` alone.
pub fn cavity_response(p: &SystemParams, delta_p: f64) -> Result<Complex64> {
    let chi = susceptibility(p, delta_p)?;
    response_from_chi(p, delta_p, chi)
}

fn response_from_chi(p: &SystemParams, delta_p: f64, chi: Complex64) -> Result<Complex64> {
    let pole = Complex64::new(p.kappa, 0.0)
        - Complex64::i() * p.delta_c(delta_p)
        - Complex64::i() * chi;
    let guard = SINGULAR_GUARD * p.kappa;
    let mag = pole.norm();
    if mag < guard {
        return Err(Error::NearSingular {
            context: "cavity response",
            magnitude: mag,
            guard,
        });
    }
    Ok(p.kappa / pole)
}

/// Intracavity and output intensity ratios at `delta_p`.
pub fn intensity_ratios(p: &SystemParams, delta_p: f64) -> Result<IntensityRecord> {
    let chi = susceptibility(p, delta_p)?;
    let r = response_from_chi(p, delta_p, chi)?;
    let z = Complex64::from_polar(1.0, p.phi2);
    let one = Complex64::new(1.0, 0.0);
    let i_c = (r * (one + z)).norm_sqr();
    let i_out_r = (r * (one + z) - one).norm_sqr();
    let i_out_l = (r * (one + z.conj()) - one).norm_sqr();
    let i_total = i_out_r + i_out_l;
    Ok(IntensityRecord {
        delta_p,
        i_c,
        i_out_r,
        i_out_l,
        i_total,
        absorption: 1.0 - i_total / 2.0,
        chi,
    })
}

/// Absorbed fraction of the total input for a record.
///
/// Recomputed from `i_total` and checked: values below `-1e-9` mean the
/// passive-medium bookkeeping broke down and surface as
/// [`Error::PassivityViolation`].
pub fn absorption_of(rec: &IntensityRecord) -> Result<f64> {
    let absorption = 1.0 - rec.i_total / 2.0;
    if absorption < -1e-9 {
        return Err(Error::PassivityViolation { absorption });
    }
    Ok(absorption)
}
