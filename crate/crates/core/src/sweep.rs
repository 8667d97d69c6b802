//! Parameter sweeps over gas damping and temperature, CSV output, and the
//! phase-span calibration that pins down the default damping range.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::damping::{total_damping, DampingModel};
use crate::error::{Error, Result};
use crate::params::{self, GyroParams, RateInput};
use crate::response::{detect_phasor_from_drive, drive_response_damped, phase_lag_from_ratio};
use crate::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Sweep the damping coefficient c directly, N·s/m.
    DampingC,
    /// Sweep gas temperature, K; c follows the viscosity power law.
    Temperature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Logarithmic,
}

/// One sweep request. `base_params.damping` is overridden per point on
/// damping sweeps; `damping_model` feeds [`total_damping`] on temperature
/// sweeps and is ignored otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec<T> {
    pub variable: SweepVariable,
    pub min: T,
    pub max: T,
    pub points: u32,
    pub scale: SweepScale,
    pub base_params: GyroParams<T>,
    pub damping_model: DampingModel<T>,
    pub rate: RateInput<T>,
}

impl<T: Float> SweepSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::config("sweep bounds must be finite"));
        }
        if !(self.min < self.max) {
            return Err(Error::config(format!(
                "sweep min must be below max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.points < 2 {
            return Err(Error::config("sweep needs at least 2 points"));
        }
        if self.variable == SweepVariable::Temperature && self.min <= T::zero() {
            return Err(Error::config("temperature sweeps need min > 0"));
        }
        if self.variable == SweepVariable::DampingC && self.min < T::zero() {
            return Err(Error::config("damping sweeps need min >= 0"));
        }
        if self.scale == SweepScale::Logarithmic && self.min <= T::zero() {
            return Err(Error::config("logarithmic sweeps need min > 0"));
        }
        self.base_params.validate()?;
        if self.variable == SweepVariable::Temperature {
            self.damping_model.validate()?;
        }
        Ok(())
    }

    /// Grid of abscissas, ascending, endpoints landing exactly on min/max.
    fn grid(&self) -> Vec<T> {
        let last = (self.points - 1) as usize;
        (0..self.points as usize)
            .map(|i| {
                if i == 0 {
                    self.min
                } else if i == last {
                    self.max
                } else {
                    let frac = T::from_count(i) / T::from_count(last);
                    match self.scale {
                        SweepScale::Linear => self.min + frac * (self.max - self.min),
                        SweepScale::Logarithmic => {
                            let ln_min = self.min.ln();
                            (ln_min + frac * (self.max.ln() - ln_min)).exp()
                        }
                    }
                }
            })
            .collect()
    }
}

/// One sweep point: the abscissa plus the derived response columns.
///
/// `phase_deg` lies in (0, 180) for any positive damping; the 0 and 180
/// boundaries are reached only in the undamped limit c = 0 off resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T> {
    pub value: T,
    pub xi: T,
    /// Absent at zero damping, where Q is undefined.
    pub q: Option<T>,
    pub phase_deg: T,
    pub drive_amp_m: T,
    pub detect_amp_m: T,
}

fn row_at<T: Float>(value: T, damping: T, base: &GyroParams<T>, rate: RateInput<T>) -> Result<SweepRow<T>> {
    let mut p = *base;
    p.damping = damping;
    let xi = params::damping_ratio(p.damping, p.mass, p.stiffness)?;
    let wn = params::natural_frequency(p.mass, p.stiffness)?;
    let phase = phase_lag_from_ratio(wn, p.drive_freq, xi);
    let drive = drive_response_damped(&p)?;
    let detect = detect_phasor_from_drive(&drive, rate)?;
    Ok(SweepRow {
        value,
        xi,
        q: (xi > T::zero()).then(|| params::quality_factor(xi)).transpose()?,
        phase_deg: phase.rad_to_deg(),
        drive_amp_m: drive.amplitude(),
        detect_amp_m: detect.amplitude(),
    })
}

/// Evaluates the closed-form response at each damping value on the grid.
/// Rows come out ascending in c.
pub fn run_damping_sweep<T: Float>(spec: &SweepSpec<T>) -> Result<Vec<SweepRow<T>>> {
    if spec.variable != SweepVariable::DampingC {
        return Err(Error::config("spec variable is not damping_c"));
    }
    spec.validate()?;
    spec.grid()
        .into_iter()
        .map(|c| row_at(c, c, &spec.base_params, spec.rate))
        .collect()
}

/// Maps each temperature through the viscosity law to a damping coefficient,
/// then evaluates the same columns as [`run_damping_sweep`]. Rows come out
/// ascending in T.
pub fn run_temperature_sweep<T: Float>(spec: &SweepSpec<T>) -> Result<Vec<SweepRow<T>>> {
    if spec.variable != SweepVariable::Temperature {
        return Err(Error::config("spec variable is not temperature"));
    }
    spec.validate()?;
    spec.grid()
        .into_iter()
        .map(|temp| {
            let c = total_damping(&spec.damping_model, temp)?;
            row_at(temp, c, &spec.base_params, spec.rate)
        })
        .collect()
}

/// Writes rows as CSV to a file, reporting the path on I/O failure.
pub fn write_csv<T: Float>(rows: &[SweepRow<T>], destination: &Path) -> Result<()> {
    let wrap = |source: io::Error| Error::Io {
        path: destination.to_path_buf(),
        source,
    };
    let mut out = BufWriter::new(File::create(destination).map_err(wrap)?);
    write_csv_to(rows, &mut out).map_err(|e| match e {
        Error::Io { source, .. } => wrap(source),
        other => other,
    })?;
    out.flush().map_err(wrap)
}

/// CSV body: header `value,xi,q,phase_deg,drive_amp_m,detect_amp_m`, one row
/// per point, 17 significant digits so f64 values round-trip bit-exactly. An
/// absent Q leaves its field empty.
pub fn write_csv_to<T: Float, W: Write>(rows: &[SweepRow<T>], out: &mut W) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::domain("rows", "nothing to write"));
    }
    let wrap = |source: io::Error| Error::Io {
        path: "<writer>".into(),
        source,
    };
    writeln!(out, "value,xi,q,phase_deg,drive_amp_m,detect_amp_m").map_err(wrap)?;
    for row in rows {
        match row.q {
            Some(q) => writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                row.value, row.xi, q, row.phase_deg, row.drive_amp_m, row.detect_amp_m
            ),
            None => writeln!(
                out,
                "{:.16e},{:.16e},,{:.16e},{:.16e},{:.16e}",
                row.value, row.xi, row.phase_deg, row.drive_amp_m, row.detect_amp_m
            ),
        }
        .map_err(wrap)?;
    }
    Ok(())
}

/// Finds the damping coefficient at which the drive phase lag equals
/// `target_phase_deg`, by bisection on the monotone phase-vs-damping curve.
///
/// Off resonance the lag moves monotonically from the undamped limit (0
/// below resonance, 180 above) toward 90 as c grows, so any target strictly
/// between those bounds has exactly one solution. Driving exactly at
/// resonance pins the lag at 90 for every c, leaving nothing to solve.
pub fn calibrate_damping_for_phase<T: Float>(base: &GyroParams<T>, target_phase_deg: T) -> Result<T> {
    base.validate()?;
    let wn = params::natural_frequency(base.mass, base.stiffness)?;
    let wc = base.drive_freq;
    if wn == wc {
        return Err(Error::config(
            "phase calibration needs a drive off resonance; at resonance the lag is 90 degrees for every damping",
        ));
    }
    let ninety = T::from_count(90);
    let below_resonance = wc < wn;
    let valid = if below_resonance {
        target_phase_deg > T::zero() && target_phase_deg < ninety
    } else {
        target_phase_deg > ninety && target_phase_deg < T::from_count(180)
    };
    if !valid {
        return Err(Error::config(format!(
            "target phase {} deg is out of reach: this drive covers ({}, {}) degrees",
            target_phase_deg,
            if below_resonance { "0" } else { "90" },
            if below_resonance { "90" } else { "180" },
        )));
    }

    let phase_at = |c: T| -> Result<T> {
        let xi = params::damping_ratio(c, base.mass, base.stiffness)?;
        Ok(phase_lag_from_ratio(wn, wc, xi).rad_to_deg())
    };
    // lag increases with c below resonance, decreases above; orient the
    // bracket so the predicate "phase past target" flips once
    let past = |phase: T| {
        if below_resonance {
            phase >= target_phase_deg
        } else {
            phase <= target_phase_deg
        }
    };

    let mut lo = T::zero();
    let mut hi = T::two() * (base.mass * base.stiffness).sqrt(); // critical damping
    let mut guard = 0;
    while !past(phase_at(hi)?) {
        hi = hi * T::two();
        guard += 1;
        if guard > 300 {
            return Err(Error::config("phase calibration failed to bracket the target"));
        }
    }
    for _ in 0..200 {
        let mid = (lo + hi) / T::two();
        if mid == lo || mid == hi {
            break;
        }
        if past(phase_at(mid)?) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// The off-resonance device behind [`PHASE_SPAN_DAMPING_MIN`] and
/// [`PHASE_SPAN_DAMPING_MAX`]: the default 500 Hz resonator driven at
/// 490 Hz, where small gas damping shifts the lag through fractions of a
/// degree instead of sitting pinned at 90.
pub fn phase_span_device() -> GyroParams<f64> {
    let mass = 1e-8;
    let wn = std::f64::consts::TAU * 500.0;
    GyroParams {
        mass,
        stiffness: mass * wn * wn,
        damping: 7e-9,
        comb_count: 50,
        overlap_width: 2e-5,
        gap: 3e-6,
        rel_permittivity: 1.0,
        vacuum_permittivity: 8.85e-12,
        bias_voltage: 10.0,
        drive_voltage: 5.0,
        drive_freq: std::f64::consts::TAU * 490.0,
    }
}

/// Calibrated damping range for [`phase_span_device`]: the lag crosses
/// 0.17 degrees at the low end and 0.47 degrees at the high end. Regenerate
/// with `cargo run -p gyrosim-core --example calibrate_phase_span`.
pub const PHASE_SPAN_DAMPING_MIN: f64 = 3.7665743652004007e-9;
/// Upper end of the calibrated range; see [`PHASE_SPAN_DAMPING_MIN`].
pub const PHASE_SPAN_DAMPING_MAX: f64 = 1.0413673325338137e-8;
