//! Deterministic 1D/2D parameter scans over probe detuning and the two
//! phases, with presets for the standard spectrum, contour and phase-scan
//! views.
//!
//! Grid points are evaluated independently (in parallel when the `parallel`
//! feature is on) and assembled in row-major order, so the output table is
//! identical for any worker count. Near-singular points are kept as
//! error-flagged rows rather than dropped.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{self, IntensityRecord};
use crate::params::SystemParams;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default grid resolution for figure presets.
pub const PRESET_POINTS: usize = 201;

/// Probe-detuning display range for spectra; covers all structure at
/// linewidths of order one.
pub const DELTA_P_RANGE: (f64, f64) = (-5.0, 5.0);

const TAU: f64 = std::f64::consts::TAU;

/// Which quantity an axis scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisName {
    DeltaP,
    Phi1,
    Phi2,
}

impl fmt::Display for AxisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxisName::DeltaP => "delta_p",
            AxisName::Phi1 => "phi1",
            AxisName::Phi2 => "phi2",
        })
    }
}

impl FromStr for AxisName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta_p" => Ok(AxisName::DeltaP),
            "phi1" => Ok(AxisName::Phi1),
            "phi2" => Ok(AxisName::Phi2),
            other => Err(Error::invalid(
                "axis name",
                format!("`{other}` is not one of delta_p, phi1, phi2"),
            )),
        }
    }
}

/// A uniform scan axis, inclusive of both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub name: AxisName,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(name: AxisName, start: f64, stop: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::invalid("axis", "endpoints must be finite"));
        }
        if start >= stop {
            return Err(Error::invalid("axis", "start must be < stop"));
        }
        if count < 2 {
            return Err(Error::invalid("axis", "count must be >= 2"));
        }
        Ok(Axis {
            name,
            start,
            stop,
            count,
        })
    }

    /// The `i`-th grid value; the last one is exactly `stop`.
    pub fn value(&self, i: usize) -> f64 {
        self.start + (self.stop - self.start) * (i as f64) / ((self.count - 1) as f64)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.value(i))
    }
}

/// One evaluated grid point: the full coordinates plus the record, or the
/// evaluation error for flagged points.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub delta_p: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub record: Result<IntensityRecord>,
}

/// The deterministic table produced by a scan (row-major: first axis outer).
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub base: SystemParams,
    pub base_delta_p: f64,
    pub axes: Vec<Axis>,
    pub points: Vec<SweepPoint>,
}

fn eval_point(base: &SystemParams, delta_p: f64) -> SweepPoint {
    SweepPoint {
        delta_p,
        phi1: base.phi1,
        phi2: base.phi2,
        record: model::intensity_ratios(base, delta_p),
    }
}

fn apply_axis(p: &mut SystemParams, delta_p: &mut f64, name: AxisName, value: f64) {
    match name {
        AxisName::DeltaP => *delta_p = value,
        AxisName::Phi1 => p.phi1 = value,
        AxisName::Phi2 => p.phi2 = value,
    }
}

#[cfg(feature = "parallel")]
fn grid_map<F>(n: usize, f: F) -> Vec<SweepPoint>
where
    F: Fn(usize) -> SweepPoint + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn grid_map<F>(n: usize, f: F) -> Vec<SweepPoint>
where
    F: Fn(usize) -> SweepPoint + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Scan one axis, evaluating the closed-form ratios at every grid value.
pub fn sweep_1d(p: &SystemParams, delta_p: f64, axis: &Axis) -> SweepResult {
    let points = grid_map(axis.count, |i| {
        let mut pp = *p;
        let mut dp = delta_p;
        apply_axis(&mut pp, &mut dp, axis.name, axis.value(i));
        eval_point(&pp, dp)
    });
    SweepResult {
        base: *p,
        base_delta_p: delta_p,
        axes: vec![*axis],
        points,
    }
}

/// Scan two axes in row-major order (outer axis first).
pub fn sweep_2d(p: &SystemParams, delta_p: f64, outer: &Axis, inner: &Axis) -> SweepResult {
    let n_inner = inner.count;
    let points = grid_map(outer.count * n_inner, |idx| {
        let (o, i) = (idx / n_inner, idx % n_inner);
        let mut pp = *p;
        let mut dp = delta_p;
        apply_axis(&mut pp, &mut dp, outer.name, outer.value(o));
        apply_axis(&mut pp, &mut dp, inner.name, inner.value(i));
        eval_point(&pp, dp)
    });
    SweepResult {
        base: *p,
        base_delta_p: delta_p,
        axes: vec![*outer, *inner],
        points,
    }
}

/// Identifier of one of the preset figure grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig5a,
    Fig5b,
    Fig5c,
}

impl FigureId {
    pub const ALL: [FigureId; 11] = [
        FigureId::Fig2a,
        FigureId::Fig2b,
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig3c,
        FigureId::Fig4a,
        FigureId::Fig4b,
        FigureId::Fig4c,
        FigureId::Fig5a,
        FigureId::Fig5b,
        FigureId::Fig5c,
    ];
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig3c => "fig3c",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
            FigureId::Fig4c => "fig4c",
            FigureId::Fig5a => "fig5a",
            FigureId::Fig5b => "fig5b",
            FigureId::Fig5c => "fig5c",
        };
        f.write_str(s)
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        for id in FigureId::ALL {
            if s.eq_ignore_ascii_case(&id.to_string()) {
                return Ok(id);
            }
        }
        Err(Error::UnknownPreset(s.to_string()))
    }
}

fn delta_p_axis() -> Axis {
    Axis::new(
        AxisName::DeltaP,
        DELTA_P_RANGE.0,
        DELTA_P_RANGE.1,
        PRESET_POINTS,
    )
    .expect("static axis")
}

fn phase_axis(name: AxisName) -> Axis {
    Axis::new(name, 0.0, TAU, PRESET_POINTS).expect("static axis")
}

/// The exact parameter set, base probe detuning and axes for one preset
/// grid. Base parameters are the defaults with the figure's pinned phase or
/// detuning applied.
pub fn figure_preset(id: FigureId) -> (SystemParams, f64, Vec<Axis>) {
    let mut p = SystemParams::default();
    let mut delta_p = 0.0;
    let axes = match id {
        // Right-mirror output spectra against one phase.
        FigureId::Fig2a => {
            p.phi1 = 0.0;
            vec![delta_p_axis(), phase_axis(AxisName::Phi2)]
        }
        FigureId::Fig2b => {
            p.phi2 = 0.0;
            vec![delta_p_axis(), phase_axis(AxisName::Phi1)]
        }
        // Phase-phase contours at three representative detunings.
        FigureId::Fig3a => {
            delta_p = -1.0;
            vec![phase_axis(AxisName::Phi1), phase_axis(AxisName::Phi2)]
        }
        FigureId::Fig3b => {
            delta_p = 0.0;
            vec![phase_axis(AxisName::Phi1), phase_axis(AxisName::Phi2)]
        }
        FigureId::Fig3c => {
            delta_p = 1.0;
            vec![phase_axis(AxisName::Phi1), phase_axis(AxisName::Phi2)]
        }
        // Intensity ratios against the input relative phase.
        FigureId::Fig4a | FigureId::Fig4b | FigureId::Fig4c => {
            p.phi1 = std::f64::consts::FRAC_PI_2;
            delta_p = match id {
                FigureId::Fig4a => 0.0,
                FigureId::Fig4b => 2.0,
                _ => 4.0,
            };
            vec![phase_axis(AxisName::Phi2)]
        }
        // Intensity ratios against the loop phase at resonance.
        FigureId::Fig5a | FigureId::Fig5b | FigureId::Fig5c => {
            p.phi2 = match id {
                FigureId::Fig5a => 0.0,
                FigureId::Fig5b => std::f64::consts::FRAC_PI_2,
                _ => std::f64::consts::PI,
            };
            vec![phase_axis(AxisName::Phi1)]
        }
    };
    (p, delta_p, axes)
}

/// Run a preset grid end to end.
pub fn run_figure_preset(id: FigureId) -> SweepResult {
    let (p, delta_p, axes) = figure_preset(id);
    match axes.as_slice() {
        [axis] => sweep_1d(&p, delta_p, axis),
        [outer, inner] => sweep_2d(&p, delta_p, outer, inner),
        _ => unreachable!("presets define one or two axes"),
    }
}
