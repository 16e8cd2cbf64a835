//! System parameters.
//!
//! Everything is expressed in units of the excited-state natural decay rate:
//! rates, Rabi frequencies and detunings are dimensionless multiples of it,
//! phases are in radians. The probe detuning is deliberately *not* a field
//! here — it is the scan variable and is passed to each evaluation
//! separately.

use crate::error::{Error, Result};

/// One physical configuration of the cavity and the four-level medium.
///
/// The level scheme: `|1>` and `|2>` are ground states, `|3>` and `|4>`
/// excited states. The cavity probe couples `|1> -> |3>`, control 1 couples
/// `|2> -> |3>`, control 2 couples `|2> -> |4>` and a third wave closes the
/// loop on `|3> -> |4>`. `phi1` is the accumulated phase around that loop;
/// `phi2` is the relative phase of the two input probe beams.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Collective cavity coupling `g sqrt(N)`.
    pub g_n: f64,
    /// Rabi frequency of control laser 1 (`|2> -> |3>`).
    pub omega1: f64,
    /// Rabi frequency of control laser 2 (`|2> -> |4>`).
    pub omega2: f64,
    /// Rabi frequency of the loop-closing wave (`|3> -> |4>`).
    pub omega_t: f64,
    /// Total cavity loss `kappa = kappa_l + kappa_r`, split symmetrically
    /// over the two mirrors.
    pub kappa: f64,
    /// Decay rate of `|3>`.
    pub gamma3: f64,
    /// Decay rate of `|4>`.
    pub gamma4: f64,
    /// Ground-state decoherence rate between `|1>` and `|2>`. Strictly
    /// positive; it keeps the response denominators away from zero.
    pub gamma12: f64,
    /// Detuning of control laser 1.
    pub delta1: f64,
    /// Detuning of control laser 2.
    pub delta2: f64,
    /// Detuning of the loop-closing wave.
    pub delta_t: f64,
    /// Cavity-atom detuning; the cavity-probe detuning is
    /// `delta_c = delta_p - delta_ac`.
    pub delta_ac: f64,
    /// Closed-loop phase (radians, stored unreduced).
    pub phi1: f64,
    /// Relative phase of the two input beams (radians, stored unreduced).
    pub phi2: f64,
}

impl Default for SystemParams {
    /// The reference operating point: collective coupling at the threshold
    /// of the strong-coupling regime (`g^2 N = kappa`), all controls at unit
    /// Rabi frequency, everything resonant.
    fn default() -> Self {
        SystemParams {
            g_n: 1.0,
            omega1: 1.0,
            omega2: 1.0,
            omega_t: 1.0,
            kappa: 1.0,
            gamma3: 1.0,
            gamma4: 1.0,
            gamma12: 1e-3,
            delta1: 0.0,
            delta2: 0.0,
            delta_t: 0.0,
            delta_ac: 0.0,
            phi1: 0.0,
            phi2: 0.0,
        }
    }
}

impl SystemParams {
    /// Cavity-probe detuning at probe detuning `delta_p`.
    pub fn delta_c(&self, delta_p: f64) -> f64 {
        delta_p - self.delta_ac
    }

    /// Domain validation: couplings non-negative, losses and decoherence
    /// strictly positive, everything finite.
    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("g_n", self.g_n),
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("omega_t", self.omega_t),
            ("kappa", self.kappa),
            ("gamma3", self.gamma3),
            ("gamma4", self.gamma4),
            ("gamma12", self.gamma12),
            ("delta1", self.delta1),
            ("delta2", self.delta2),
            ("delta_t", self.delta_t),
            ("delta_ac", self.delta_ac),
            ("phi1", self.phi1),
            ("phi2", self.phi2),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        for (name, v) in [
            ("g_n", self.g_n),
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("omega_t", self.omega_t),
        ] {
            if v < 0.0 {
                return Err(Error::invalid(name, "must be >= 0"));
            }
        }
        if self.kappa <= 0.0 {
            return Err(Error::invalid("kappa", "must be > 0"));
        }
        for (name, v) in [
            ("gamma3", self.gamma3),
            ("gamma4", self.gamma4),
            ("gamma12", self.gamma12),
        ] {
            if v <= 0.0 {
                return Err(Error::invalid(name, "must be > 0"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        SystemParams::default().validate().unwrap();
    }

    #[test]
    fn rejects_nonpositive_rates() {
        let mut p = SystemParams::default();
        p.gamma12 = -1.0;
        let err = p.validate().unwrap_err();
        assert!(matches!(err, Error::InvalidParam { name: "gamma12", .. }));

        let mut p = SystemParams::default();
        p.kappa = 0.0;
        assert!(p.validate().is_err());
    }

    #[test]
    fn rejects_non_finite() {
        let mut p = SystemParams::default();
        p.delta1 = f64::NAN;
        assert!(p.validate().is_err());
    }

    #[test]
    fn cavity_detuning_tracks_probe() {
        let mut p = SystemParams::default();
        p.delta_ac = 0.5;
        assert_eq!(p.delta_c(2.0), 1.5);
        p.delta_ac = 0.0;
        assert_eq!(p.delta_c(2.0), 2.0);
    }
}
