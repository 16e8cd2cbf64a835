//! Browser bindings for the interactive demo page.
//!
//! Three operations back the page: a probe-detuning spectrum, a phase scan
//! along either control phase, and a 2D intensity map. Scan results come
//! back as flat `Float64Array`s with six columns per point
//! (`x, i_c, i_out_r, i_out_l, i_total, absorption`); maps are row-major
//! grids of one observable. Near-singular points are reported as NaN so the
//! plot code can leave gaps.

use wasm_bindgen::prelude::*;

use phase_cavity::model::intensity_ratios;
use phase_cavity::SystemParams;

/// Columns per scan point.
pub const SCAN_COLS: usize = 6;

/// Adjustable model parameters, mirrored as plain JS fields.
#[wasm_bindgen]
#[derive(Debug, Clone, Copy)]
pub struct SimParams {
    pub g_n: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega_t: f64,
    pub kappa: f64,
    pub gamma3: f64,
    pub gamma4: f64,
    pub gamma12: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub delta_t: f64,
    pub delta_ac: f64,
    pub phi1: f64,
    pub phi2: f64,
}

#[wasm_bindgen]
impl SimParams {
    /// The reference operating point.
    #[wasm_bindgen(constructor)]
    pub fn new() -> SimParams {
        SimParams::from_system(&SystemParams::default())
    }
}

impl Default for SimParams {
    fn default() -> Self {
        Self::new()
    }
}

impl SimParams {
    fn from_system(p: &SystemParams) -> SimParams {
        SimParams {
            g_n: p.g_n,
            omega1: p.omega1,
            omega2: p.omega2,
            omega_t: p.omega_t,
            kappa: p.kappa,
            gamma3: p.gamma3,
            gamma4: p.gamma4,
            gamma12: p.gamma12,
            delta1: p.delta1,
            delta2: p.delta2,
            delta_t: p.delta_t,
            delta_ac: p.delta_ac,
            phi1: p.phi1,
            phi2: p.phi2,
        }
    }

    fn to_system(self) -> SystemParams {
        SystemParams {
            g_n: self.g_n,
            omega1: self.omega1,
            omega2: self.omega2,
            omega_t: self.omega_t,
            kappa: self.kappa,
            gamma3: self.gamma3,
            gamma4: self.gamma4,
            gamma12: self.gamma12,
            delta1: self.delta1,
            delta2: self.delta2,
            delta_t: self.delta_t,
            delta_ac: self.delta_ac,
            phi1: self.phi1,
            phi2: self.phi2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Knob {
    DeltaP,
    Phi1,
    Phi2,
}

impl Knob {
    fn parse(name: &str) -> Option<Knob> {
        match name {
            "delta_p" => Some(Knob::DeltaP),
            "phi1" => Some(Knob::Phi1),
            "phi2" => Some(Knob::Phi2),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Observable {
    IC,
    IOutR,
    IOutL,
    ITotal,
    Absorption,
}

impl Observable {
    fn parse(name: &str) -> Option<Observable> {
        match name {
            "i_c" => Some(Observable::IC),
            "i_out_r" => Some(Observable::IOutR),
            "i_out_l" => Some(Observable::IOutL),
            "i_total" => Some(Observable::ITotal),
            "absorption" => Some(Observable::Absorption),
            _ => None,
        }
    }
}

fn set_knob(p: &mut SystemParams, delta_p: &mut f64, knob: Knob, value: f64) {
    match knob {
        Knob::DeltaP => *delta_p = value,
        Knob::Phi1 => p.phi1 = value,
        Knob::Phi2 => p.phi2 = value,
    }
}

fn scan(base: SystemParams, base_dp: f64, knob: Knob, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n * SCAN_COLS);
    for i in 0..n {
        let x = lo + (hi - lo) * (i as f64) / ((n - 1).max(1) as f64);
        let mut p = base;
        let mut dp = base_dp;
        set_knob(&mut p, &mut dp, knob, x);
        match intensity_ratios(&p, dp) {
            Ok(rec) => out.extend_from_slice(&[
                x,
                rec.i_c,
                rec.i_out_r,
                rec.i_out_l,
                rec.i_total,
                rec.absorption,
            ]),
            Err(_) => out.extend_from_slice(&[
                x,
                f64::NAN,
                f64::NAN,
                f64::NAN,
                f64::NAN,
                f64::NAN,
            ]),
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn map(
    base: SystemParams,
    base_dp: f64,
    x: Knob,
    x_range: (f64, f64),
    nx: usize,
    y: Knob,
    y_range: (f64, f64),
    ny: usize,
    obs: Observable,
) -> Vec<f64> {
    let mut out = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let yv = y_range.0 + (y_range.1 - y_range.0) * (j as f64) / ((ny - 1).max(1) as f64);
        for i in 0..nx {
            let xv = x_range.0 + (x_range.1 - x_range.0) * (i as f64) / ((nx - 1).max(1) as f64);
            let mut p = base;
            let mut dp = base_dp;
            set_knob(&mut p, &mut dp, x, xv);
            set_knob(&mut p, &mut dp, y, yv);
            let v = match intensity_ratios(&p, dp) {
                Ok(rec) => match obs {
                    Observable::IC => rec.i_c,
                    Observable::IOutR => rec.i_out_r,
                    Observable::IOutL => rec.i_out_l,
                    Observable::ITotal => rec.i_total,
                    Observable::Absorption => rec.absorption,
                },
                Err(_) => f64::NAN,
            };
            out.push(v);
        }
    }
    out
}

/// Intensity ratios against the probe detuning at the current phases.
#[wasm_bindgen]
pub fn spectrum(p: &SimParams, dp_min: f64, dp_max: f64, n: u32) -> Vec<f64> {
    scan(p.to_system(), 0.0, Knob::DeltaP, dp_min, dp_max, n as usize)
}

fn phase_scan_impl(
    p: &SimParams,
    axis: &str,
    delta_p: f64,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<f64>, String> {
    let knob = Knob::parse(axis).ok_or("axis must be phi1 or phi2")?;
    if knob == Knob::DeltaP {
        return Err("use spectrum() for delta_p scans".to_string());
    }
    Ok(scan(p.to_system(), delta_p, knob, lo, hi, n))
}

/// Intensity ratios against one of the phases (`"phi1"` or `"phi2"`) at a
/// fixed probe detuning.
#[wasm_bindgen]
pub fn phase_scan(
    p: &SimParams,
    axis: &str,
    delta_p: f64,
    lo: f64,
    hi: f64,
    n: u32,
) -> Result<Vec<f64>, JsError> {
    phase_scan_impl(p, axis, delta_p, lo, hi, n as usize).map_err(|e| JsError::new(&e))
}

#[allow(clippy::too_many_arguments)]
fn intensity_map_impl(
    p: &SimParams,
    x_axis: &str,
    x_range: (f64, f64),
    nx: usize,
    y_axis: &str,
    y_range: (f64, f64),
    ny: usize,
    observable: &str,
    delta_p: f64,
) -> Result<Vec<f64>, String> {
    let x = Knob::parse(x_axis).ok_or("bad x axis")?;
    let y = Knob::parse(y_axis).ok_or("bad y axis")?;
    if x == y {
        return Err("map axes must differ".to_string());
    }
    let obs = Observable::parse(observable).ok_or("unknown observable")?;
    Ok(map(p.to_system(), delta_p, x, x_range, nx, y, y_range, ny, obs))
}

/// Row-major `ny x nx` grid of one observable over two scan knobs.
#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn intensity_map(
    p: &SimParams,
    x_axis: &str,
    x_lo: f64,
    x_hi: f64,
    nx: u32,
    y_axis: &str,
    y_lo: f64,
    y_hi: f64,
    ny: u32,
    observable: &str,
    delta_p: f64,
) -> Result<Vec<f64>, JsError> {
    intensity_map_impl(
        p,
        x_axis,
        (x_lo, x_hi),
        nx as usize,
        y_axis,
        (y_lo, y_hi),
        ny as usize,
        observable,
        delta_p,
    )
    .map_err(|e| JsError::new(&e))
}
