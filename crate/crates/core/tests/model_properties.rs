//! Property tests for the closed-form response: phase periodicity and
//! symmetry, mirror exchange, channel degeneracies, and conservation in the
//! lossless limit.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use proptest::prelude::*;

use phase_cavity::model::{intensity_ratios, susceptibility};
use phase_cavity::SystemParams;

fn arb_params() -> impl Strategy<Value = SystemParams> {
    let couplings = (
        0.0..2.0f64,  // g_n
        0.05..3.0f64, // omega1
        0.05..3.0f64, // omega2
        0.05..3.0f64, // omega_t
    );
    let rates = (
        0.3..3.0f64,  // kappa
        0.2..3.0f64,  // gamma3
        0.2..3.0f64,  // gamma4
        1e-4..0.1f64, // gamma12
    );
    let detunings = (
        -5.0..5.0f64, // delta1
        -5.0..5.0f64, // delta2
        -5.0..5.0f64, // delta_t
        -2.0..2.0f64, // delta_ac
    );
    let phases = (-7.0..7.0f64, -7.0..7.0f64); // unreduced
    (couplings, rates, detunings, phases).prop_map(
        |(
            (g_n, omega1, omega2, omega_t),
            (kappa, gamma3, gamma4, gamma12),
            (delta1, delta2, delta_t, delta_ac),
            (phi1, phi2),
        )| SystemParams {
            g_n,
            omega1,
            omega2,
            omega_t,
            kappa,
            gamma3,
            gamma4,
            gamma12,
            delta1,
            delta2,
            delta_t,
            delta_ac,
            phi1,
            phi2,
        },
    )
}

proptest! {
    /// Everything is 2pi-periodic in both phases.
    #[test]
    fn intensities_are_periodic_in_both_phases(p in arb_params(), dp in -6.0..6.0f64) {
        let a = intensity_ratios(&p, dp);
        let mut shifted = p;
        shifted.phi1 += TAU;
        shifted.phi2 += TAU;
        let b = intensity_ratios(&shifted, dp);
        let (a, b) = match (a, b) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(()),
        };
        prop_assert!((a.i_c - b.i_c).abs() <= 1e-12);
        prop_assert!((a.i_out_r - b.i_out_r).abs() <= 1e-12);
        prop_assert!((a.i_out_l - b.i_out_l).abs() <= 1e-12);
    }

    /// The loop phase enters only through its cosine.
    #[test]
    fn susceptibility_is_even_in_loop_phase(p in arb_params(), dp in -6.0..6.0f64) {
        let mut mirrored = p;
        mirrored.phi1 = TAU - p.phi1;
        let (a, b) = match (susceptibility(&p, dp), susceptibility(&mirrored, dp)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(()),
        };
        let scale = a.norm().max(1.0);
        prop_assert!((a - b).norm() <= 1e-12 * scale);
    }

    /// Swapping the sign of the input phase swaps the two output channels.
    #[test]
    fn mirror_exchange_swaps_channels(p in arb_params(), dp in -6.0..6.0f64) {
        let mut flipped = p;
        flipped.phi2 = -p.phi2;
        let (a, b) = match (intensity_ratios(&p, dp), intensity_ratios(&flipped, dp)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(()),
        };
        prop_assert!((a.i_out_l - b.i_out_r).abs() <= 1e-12);
        prop_assert!((a.i_out_r - b.i_out_l).abs() <= 1e-12);
        prop_assert!((a.i_c - b.i_c).abs() <= 1e-12);
    }

    /// The two outputs are indistinguishable when the input phase is a
    /// multiple of pi.
    #[test]
    fn channels_degenerate_at_multiples_of_pi(p in arb_params(), dp in -6.0..6.0f64, half in proptest::bool::ANY) {
        let mut pp = p;
        pp.phi2 = if half { PI } else { 0.0 };
        let rec = match intensity_ratios(&pp, dp) {
            Ok(rec) => rec,
            Err(_) => return Ok(()),
        };
        prop_assert!((rec.i_out_r - rec.i_out_l).abs() <= 1e-12);
    }

    /// Opposite-phase inputs empty the cavity and saturate the total output
    /// for any medium and detuning.
    #[test]
    fn opposite_phase_is_a_perfect_transmitter(p in arb_params(), dp in -6.0..6.0f64) {
        let mut pp = p;
        pp.phi2 = PI;
        let rec = match intensity_ratios(&pp, dp) {
            Ok(rec) => rec,
            Err(_) => return Ok(()),
        };
        prop_assert!(rec.i_c.abs() <= 1e-12);
        prop_assert!((rec.i_total - 2.0).abs() <= 1e-12);
    }

    /// Without the medium the cavity is lossless: the two outputs always
    /// carry exactly the input power.
    #[test]
    fn empty_cavity_conserves_power(p in arb_params(), dp in -6.0..6.0f64) {
        let mut pp = p;
        pp.g_n = 0.0;
        let rec = intensity_ratios(&pp, dp).expect("empty cavity never singular");
        prop_assert!((rec.i_total - 2.0).abs() <= 1e-12);
    }

    /// Bounded response: each ratio is a squared modulus of a bounded
    /// amplitude, and the record keeps its internal identities.
    #[test]
    fn records_are_bounded_and_consistent(p in arb_params(), dp in -6.0..6.0f64) {
        let rec = match intensity_ratios(&p, dp) {
            Ok(rec) => rec,
            Err(_) => return Ok(()),
        };
        prop_assert!(rec.i_c >= 0.0);
        prop_assert!(rec.i_out_r >= 0.0 && rec.i_out_l >= 0.0);
        prop_assert!(rec.i_total >= 0.0 && rec.i_total <= 4.0);
        prop_assert_eq!(rec.i_total, rec.i_out_r + rec.i_out_l);
        prop_assert_eq!(rec.absorption, 1.0 - rec.i_total / 2.0);
    }

    /// At full resonance with a quarter loop phase the susceptibility is
    /// purely imaginary, so the response factor is real and the two output
    /// channels coincide for every input phase.
    #[test]
    fn resonant_quarter_loop_degeneracy(
        omegas in (0.05..3.0f64, 0.05..3.0f64, 0.05..3.0f64),
        rates in (0.2..3.0f64, 0.2..3.0f64, 1e-4..0.1f64),
        g_n in 0.0..2.0f64,
        kappa in 0.3..3.0f64,
        phi2 in 0.0..TAU,
    ) {
        let p = SystemParams {
            g_n,
            omega1: omegas.0,
            omega2: omegas.1,
            omega_t: omegas.2,
            kappa,
            gamma3: rates.0,
            gamma4: rates.1,
            gamma12: rates.2,
            phi1: FRAC_PI_2,
            phi2,
            ..SystemParams::default()
        };
        let rec = intensity_ratios(&p, 0.0).expect("resonant point never singular");
        prop_assert!((rec.i_out_r - rec.i_out_l).abs() <= 1e-12);
    }
}
