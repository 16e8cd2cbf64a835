//! Brute-force steady states of the full density-matrix equations of motion.
//!
//! Two independent routes validate the closed form in [`crate::model`]:
//!
//! * [`linear_response_coherences`] / [`chi_oracle`] — the weak-probe
//!   closure (`rho_11 = 1`, all populations and control coherences zero)
//!   reduces the coherence equations to a 3x3 complex linear system, solved
//!   here by Gaussian elimination rather than through the printed closed
//!   form;
//! * [`integrate_to_steady_state`] — the full nonlinear equations of motion
//!   marched with a fixed-step fourth-order Runge-Kutta integrator until the
//!   derivative norm is at the noise floor.
//!
//! The coherence decay rates are tied to the level structure: the coherence
//! between a ground state and `|3>` (`|4>`) decays at `gamma3` (`gamma4`),
//! and the `|3>`-`|4>` coherence at `sqrt(gamma3 * gamma4)`. Only the
//! ground-ground rate `gamma12` is an independent input.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{IntensityRecord, SINGULAR_GUARD};
use crate::params::SystemParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Fixed integrator step, in units of the inverse decay rate.
pub const TIME_STEP: f64 = 0.01;

/// Convergence threshold on the maximum derivative component.
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;

/// Full mean-field state: atomic density matrix plus intracavity amplitude.
///
/// The matrix is stored densely; the integrator only ever writes Hermitian
/// matrices (lower triangle as the conjugate of the printed upper-triangle
/// equations), so Hermiticity holds to round-off by construction and the
/// trace is conserved exactly by the flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    /// Density matrix `rho[m][n]`, states indexed 0..4 for `|1>`..`|4>`.
    pub rho: [[Complex64; 4]; 4],
    /// Intracavity field amplitude.
    pub alpha: Complex64,
}

impl BlochState {
    /// Everything in the lowest ground state, cavity empty.
    pub fn ground() -> Self {
        let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
        rho[0][0] = Complex64::new(1.0, 0.0);
        BlochState {
            rho,
            alpha: Complex64::new(0.0, 0.0),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.rho[0][0] + self.rho[1][1] + self.rho[2][2] + self.rho[3][3]
    }

    /// Largest deviation from Hermiticity, `max |rho - rho^dagger|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for m in 0..4 {
            for n in 0..4 {
                worst = worst.max((self.rho[m][n] - self.rho[n][m].conj()).norm());
            }
        }
        worst
    }

    /// Largest component magnitude; used as the derivative norm.
    pub fn max_abs(&self) -> f64 {
        let mut worst = self.alpha.norm();
        for row in &self.rho {
            for z in row {
                worst = worst.max(z.norm());
            }
        }
        worst
    }

    fn add_scaled(mut self, c: f64, other: &BlochState) -> BlochState {
        for m in 0..4 {
            for n in 0..4 {
                self.rho[m][n] += c * other.rho[m][n];
            }
        }
        self.alpha += c * other.alpha;
        self
    }
}

/// Drive configuration for the brute-force solver: the collective coupling
/// split into a single-atom coupling and an atom number, plus the input
/// amplitude and the probe detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveConfig {
    /// Input amplitude magnitude, equal for both beams.
    pub alpha_in_mag: f64,
    /// Single-atom coupling.
    pub g_single: f64,
    /// Atom number; `g_single * sqrt(n_atoms)` must reproduce the collective
    /// coupling of the [`SystemParams`] the drive is used with.
    pub n_atoms: f64,
    /// Probe detuning.
    pub delta_p: f64,
}

impl DriveConfig {
    /// Default split used for validation: `N = 1e6` atoms. Only the product
    /// `g sqrt(N)` is physical in the linear-response regime; the split only
    /// matters for saturation.
    pub fn with_drive(p: &SystemParams, delta_p: f64, alpha_in_mag: f64) -> Self {
        DriveConfig {
            alpha_in_mag,
            g_single: p.g_n * 1e-3,
            n_atoms: 1e6,
            delta_p,
        }
    }

    /// Drive weak enough that the steady intracavity coupling `|g alpha|`
    /// stays at or below `1e-3`, keeping saturation corrections near 1e-6.
    pub fn weak_probe(p: &SystemParams, delta_p: f64) -> Self {
        let g = p.g_n * 1e-3;
        // |alpha| <= 2 |alpha_in| / sqrt(kappa) for a passive medium.
        let alpha_in_mag = if g > 0.0 {
            1e-3 * p.kappa.sqrt() / (2.0 * g)
        } else {
            1.0
        };
        Self::with_drive(p, delta_p, alpha_in_mag)
    }

    /// Collective coupling implied by this split.
    pub fn collective_coupling(&self) -> f64 {
        self.g_single * self.n_atoms.sqrt()
    }

    /// Check the split against the collective coupling of `p`.
    pub fn check_consistent(&self, p: &SystemParams) -> Result<()> {
        let diff = (self.collective_coupling() - p.g_n).abs();
        if diff > 1e-12 {
            return Err(Error::invalid(
                "drive",
                format!("g*sqrt(N) = {} differs from g_n = {}", self.collective_coupling(), p.g_n),
            ));
        }
        Ok(())
    }
}

/// Time derivative of every density-matrix element and of the intracavity
/// amplitude.
///
/// The upper-triangle coherence equations are evaluated as printed
/// (including the `e^{+-i phi1}` factors on the loop terms and the
/// half-and-half repopulation of both ground states); lower-triangle
/// derivatives are their conjugates. The cavity is driven through both
/// mirrors with input phases `(phi2, 0)`.
pub fn eom_rhs(s: &BlochState, p: &SystemParams, d: &DriveConfig) -> BlochState {
    let r = &s.rho;
    let alpha = s.alpha;
    let g = d.g_single;
    let (o1, o2, ot) = (p.omega1, p.omega2, p.omega_t);
    let (g3, g4) = (p.gamma3, p.gamma4);
    let dp = d.delta_p;
    let (d1, d2, dt) = (p.delta1, p.delta2, p.delta_t);
    let dc = p.delta_c(dp);

    // Coherence decay rates implied by the level structure.
    let gamma12 = p.gamma12;
    let gamma13 = g3;
    let gamma14 = g4;
    let gamma23 = g3;
    let gamma24 = g4;
    let gamma34 = (g3 * g4).sqrt();

    let loop_p = Complex64::from_polar(1.0, p.phi1); // e^{+i phi1}
    let loop_m = loop_p.conj();

    let mut out = BlochState {
        rho: [[Complex64::new(0.0, 0.0); 4]; 4],
        alpha: Complex64::new(0.0, 0.0),
    };

    // Populations.
    out.rho[0][0] = I * g * (alpha.conj() * r[0][2] - alpha * r[2][0])
        + 0.5 * g3 * r[2][2]
        + 0.5 * g4 * r[3][3];
    out.rho[1][1] = I * o1 * (r[1][2] - r[2][1]) + I * o2 * (r[1][3] - r[3][1])
        + 0.5 * g3 * r[2][2]
        + 0.5 * g4 * r[3][3];
    out.rho[2][2] = I * g * (alpha * r[2][0] - alpha.conj() * r[0][2])
        + I * o1 * (r[2][1] - r[1][2])
        + I * ot * (r[2][3] - r[3][2])
        - g3 * r[2][2];
    out.rho[3][3] = I * o2 * (r[3][1] - r[1][3]) + I * ot * (r[3][2] - r[2][3]) - g4 * r[3][3];

    // Ground-ground coherence.
    out.rho[0][1] = Complex64::new(-gamma12, dp - d1) * r[0][1] - I * g * alpha * r[2][1]
        + I * o1 * r[0][2]
        + I * o2 * r[0][3];

    // Probe coherence; this line closes into the linear-response system.
    out.rho[0][2] = Complex64::new(-gamma13, dp - d1 + d2 - dt) * r[0][2]
        + I * g * alpha * (r[0][0] - r[2][2])
        + I * o1 * r[0][1]
        + I * ot * loop_p * r[0][3];

    out.rho[0][3] = Complex64::new(-gamma14, dp - d1 + d2) * r[0][3]
        - I * g * alpha * loop_m * r[2][3]
        + I * o2 * r[0][1]
        + I * ot * loop_m * r[0][2];

    out.rho[1][2] = Complex64::new(-gamma23, d2 - dt) * r[1][2]
        + I * g * alpha * r[1][0]
        + I * o1 * (r[1][1] - r[2][2])
        - I * o2 * loop_p * r[3][2]
        + I * ot * loop_p * r[1][3];

    out.rho[1][3] = Complex64::new(-gamma24, d2) * r[1][3] - I * o1 * loop_m * r[2][3]
        + I * o2 * (r[1][1] - r[3][3])
        + I * ot * loop_m * r[1][2];

    out.rho[2][3] = Complex64::new(-gamma34, dt) * r[2][3]
        - I * g * alpha.conj() * loop_p * r[0][3]
        - I * o1 * loop_p * r[1][3]
        + I * o2 * loop_p * r[2][1]
        + I * ot * (r[2][2] - r[3][3]);

    // Lower triangle: conjugates of the printed equations.
    for m in 0..4 {
        for n in (m + 1)..4 {
            out.rho[n][m] = out.rho[m][n].conj();
        }
    }

    // Cavity amplitude, driven through both mirrors (kappa_l = kappa_r =
    // kappa / 2, unit round-trip time).
    let drive = (p.kappa).sqrt()
        * d.alpha_in_mag
        * (Complex64::from_polar(1.0, p.phi2) + Complex64::new(1.0, 0.0));
    out.alpha = I * dc * alpha + I * g * d.n_atoms * r[0][2] - p.kappa * alpha + drive;

    out
}

/// Solve a 3x3 complex system by Gaussian elimination with partial
/// pivoting. Returns the solution and the determinant magnitude accumulated
/// from the pivots.
fn solve3(mut m: [[Complex64; 3]; 3], mut rhs: [Complex64; 3]) -> ([Complex64; 3], f64) {
    let mut det: f64 = 1.0;
    for col in 0..3 {
        let mut pivot = col;
        for row in (col + 1)..3 {
            if m[row][col].norm() > m[pivot][col].norm() {
                pivot = row;
            }
        }
        if pivot != col {
            m.swap(col, pivot);
            rhs.swap(col, pivot);
        }
        det *= m[col][col].norm();
        if m[col][col].norm() == 0.0 {
            return ([Complex64::new(0.0, 0.0); 3], 0.0);
        }
        let pivot_row = m[col];
        for row in (col + 1)..3 {
            let factor = m[row][col] / m[col][col];
            for (cell, pv) in m[row].iter_mut().zip(pivot_row).skip(col) {
                *cell -= factor * pv;
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 3];
    for row in (0..3).rev() {
        let mut acc = rhs[row];
        for k in (row + 1)..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    (x, det)
}

/// Weak-probe coherences for a given intracavity amplitude.
///
/// With the population frozen in `|1>`, the three coherence equations close
/// into the linear system
///
/// ```text
/// [ A    O1          O2         ] [rho12]   [ 0        ]
/// [ O1   C           Ot e^{+i.}] [rho13] = [ -g alpha ]
/// [ O2   Ot e^{-i.}  B         ] [rho14]   [ 0        ]
/// ```
///
/// solved here numerically; the determinant of that matrix is exactly the
/// closed-form denominator, so the same guard applies.
pub fn linear_response_coherences(
    p: &SystemParams,
    d: &DriveConfig,
    alpha: Complex64,
) -> Result<(Complex64, Complex64, Complex64)> {
    let c = crate::model::coefficients(p, d.delta_p);
    let (o1, o2, ot) = (p.omega1, p.omega2, p.omega_t);
    let loop_p = Complex64::from_polar(1.0, p.phi1);
    let m = [
        [c.a, Complex64::new(o1, 0.0), Complex64::new(o2, 0.0)],
        [Complex64::new(o1, 0.0), c.c, ot * loop_p],
        [Complex64::new(o2, 0.0), ot * loop_p.conj(), c.b],
    ];
    let rhs = [
        Complex64::new(0.0, 0.0),
        -d.g_single * alpha,
        Complex64::new(0.0, 0.0),
    ];
    let (x, det) = solve3(m, rhs);
    let guard = SINGULAR_GUARD * (o1 * o2 * ot).max(1.0);
    if det < guard {
        return Err(Error::NearSingular {
            context: "linear response",
            magnitude: det,
            guard,
        });
    }
    Ok((x[0], x[1], x[2]))
}

/// Susceptibility by the independent linear-solve route,
/// `chi = g N rho13 / alpha` at unit amplitude.
pub fn chi_oracle(p: &SystemParams, delta_p: f64) -> Result<Complex64> {
    let d = DriveConfig::with_drive(p, delta_p, 0.0);
    let (_, rho13, _) = linear_response_coherences(p, &d, Complex64::new(1.0, 0.0))?;
    Ok(d.g_single * d.n_atoms * rho13)
}

/// A converged steady state together with its diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct SteadyState {
    pub state: BlochState,
    /// Final derivative norm.
    pub residual: f64,
    pub steps: u64,
    /// Elapsed simulated time.
    pub time: f64,
}

/// March the equations of motion from the ground state to a steady state.
///
/// Fixed-step classical Runge-Kutta with `dt = 0.01`, stopping when the
/// derivative norm falls below `1e-12`. The horizon is
/// `1000 * max(1/gamma12, 1/kappa, 1)`; hitting it returns
/// [`Error::NotConverged`] with the best state so far. Convergence is
/// declared on the derivative norm, not on state differences, so slowly
/// drifting near-degenerate cases fail loudly.
pub fn integrate_to_steady_state(p: &SystemParams, d: &DriveConfig) -> Result<SteadyState> {
    d.check_consistent(p)?;
    let dt = TIME_STEP;
    let horizon = 1000.0 * (1.0 / p.gamma12).max(1.0 / p.kappa).max(1.0);
    let max_steps = (horizon / dt).ceil() as u64;

    let mut y = BlochState::ground();
    let mut steps: u64 = 0;
    loop {
        let k1 = eom_rhs(&y, p, d);
        let residual = k1.max_abs();
        if residual < RESIDUAL_TOLERANCE {
            return Ok(SteadyState {
                state: y,
                residual,
                steps,
                time: steps as f64 * dt,
            });
        }
        if steps >= max_steps {
            return Err(Error::NotConverged {
                state: Box::new(y),
                residual,
                steps,
            });
        }

        let k2 = eom_rhs(&y.add_scaled(0.5 * dt, &k1), p, d);
        let k3 = eom_rhs(&y.add_scaled(0.5 * dt, &k2), p, d);
        let k4 = eom_rhs(&y.add_scaled(dt, &k3), p, d);
        y = y
            .add_scaled(dt / 6.0, &k1)
            .add_scaled(dt / 3.0, &k2)
            .add_scaled(dt / 3.0, &k3)
            .add_scaled(dt / 6.0, &k4);
        steps += 1;

        let trace_error = (y.trace() - Complex64::new(1.0, 0.0)).norm();
        if trace_error > 1e-8 {
            return Err(Error::NonPhysical { trace_error });
        }
    }
}

/// Output intensity ratios reconstructed from a steady state through the
/// mirror boundary condition `a_out + a_in = sqrt(2 kappa_i) a` per mirror.
///
/// The `chi` field is filled with the linear-solve value when it exists and
/// NaN otherwise.
pub fn output_from_state(s: &BlochState, d: &DriveConfig, p: &SystemParams) -> IntensityRecord {
    let sqrt_k = p.kappa.sqrt(); // sqrt(2 kappa_l), symmetric split
    let ain_l = d.alpha_in_mag * Complex64::from_polar(1.0, p.phi2);
    let ain_r = Complex64::new(d.alpha_in_mag, 0.0);
    let aout_l = sqrt_k * s.alpha - ain_l;
    let aout_r = sqrt_k * s.alpha - ain_r;
    let norm = d.alpha_in_mag * d.alpha_in_mag;
    let i_out_l = aout_l.norm_sqr() / norm;
    let i_out_r = aout_r.norm_sqr() / norm;
    let i_c = p.kappa * s.alpha.norm_sqr() / norm;
    let i_total = i_out_r + i_out_l;
    let chi = chi_oracle(p, d.delta_p).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    IntensityRecord {
        delta_p: d.delta_p,
        i_c,
        i_out_r,
        i_out_l,
        i_total,
        absorption: 1.0 - i_total / 2.0,
        chi,
    }
}
