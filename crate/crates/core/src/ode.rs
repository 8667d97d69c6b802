//! Time-domain route: fixed-step integration of the forced oscillator and
//! synchronous demodulation of the result. Kept free of the closed forms in
//! [`crate::response`] so the two can serve as independent cross-checks.

use crate::error::{Error, Result};
use crate::force::net_drive_force;
use crate::params::{self, GyroParams, RateInput};
use crate::phasor::Phasor;
use crate::Float;

/// Fixed-step integration setup. `dt` is a request; [`integrate_drive`] snaps
/// it down so a whole number of steps tiles one drive period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig<T> {
    /// Requested step size, s. Must stay below a twentieth of the drive
    /// period; checked against the period when the integration runs.
    pub dt: T,
    /// Drive periods discarded as transient.
    pub settle_cycles: u32,
    /// Drive periods demodulated after settling.
    pub measure_cycles: u32,
    pub initial_displacement: T,
    pub initial_velocity: T,
}

impl<T: Float> IntegratorConfig<T> {
    /// Defaults sized to the device: 200 steps per drive period, settle
    /// cycles from [`default_settle_cycles`], 20 measure cycles, rest state.
    pub fn for_params(p: &GyroParams<T>) -> Result<Self> {
        p.validate()?;
        let xi = params::damping_ratio(p.damping, p.mass, p.stiffness)?;
        Ok(IntegratorConfig {
            dt: p.drive_period() / T::from_count(200),
            settle_cycles: default_settle_cycles(xi),
            measure_cycles: 20,
            initial_displacement: T::zero(),
            initial_velocity: T::zero(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !self.dt.is_finite() || self.dt <= T::zero() {
            return Err(Error::config(format!(
                "integrator dt must be positive and finite, got {}",
                self.dt
            )));
        }
        if self.measure_cycles < 1 {
            return Err(Error::config("integrator measure_cycles must be at least 1"));
        }
        if !self.initial_displacement.is_finite() || !self.initial_velocity.is_finite() {
            return Err(Error::config("integrator initial state must be finite"));
        }
        Ok(())
    }
}

/// ceil(10 / (2 pi xi)) drive periods, clamped to [50, 20000]. The transient
/// envelope decays like exp(-xi wn t), so this leaves a residual around
/// exp(-10) of the initial transient for near-resonant drives.
pub fn default_settle_cycles<T: Float>(xi: T) -> u32 {
    const MIN: u32 = 50;
    const MAX: u32 = 20_000;
    if xi <= T::zero() {
        return MAX;
    }
    let cycles = (T::from_count(10) / (T::TAU() * xi)).ceil();
    match cycles.to_u64() {
        Some(n) => (n.min(MAX as u64) as u32).max(MIN),
        None => MAX,
    }
}

/// Uniformly sampled drive motion, with the detect channel filled in by
/// [`integrate_detect`]. `measure_start` marks the first sample after the
/// settle cycles; constructors other than [`integrate_drive`] leave it at 0,
/// treating the whole span as measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    t0: T,
    dt: T,
    x: Vec<T>,
    v: Vec<T>,
    z: Option<Vec<T>>,
    measure_start: usize,
}

impl<T: Float> Trajectory<T> {
    /// Wraps externally produced samples.
    pub fn from_samples(t0: T, dt: T, x: Vec<T>, v: Vec<T>) -> Result<Self> {
        if !dt.is_finite() || dt <= T::zero() {
            return Err(Error::domain("dt", format!("must be positive and finite, got {dt}")));
        }
        if x.len() < 2 {
            return Err(Error::domain("x", "need at least 2 samples"));
        }
        if v.len() != x.len() {
            return Err(Error::domain("v", "must have the same length as x"));
        }
        Ok(Trajectory {
            t0,
            dt,
            x,
            v,
            z: None,
            measure_start: 0,
        })
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    /// Drive displacement samples, m.
    pub fn x(&self) -> &[T] {
        &self.x
    }

    /// Drive velocity samples, m/s.
    pub fn v(&self) -> &[T] {
        &self.v
    }

    /// Detect displacement samples, m; present after [`integrate_detect`].
    pub fn z(&self) -> Option<&[T]> {
        self.z.as_deref()
    }

    /// Index of the first sample of the measurement window.
    pub fn measure_start(&self) -> usize {
        self.measure_start
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least 2 samples
    }

    pub fn time_at(&self, index: usize) -> T {
        self.t0 + T::from_count(index) * self.dt
    }
}

/// Integrates `m x'' + c x' + k x = F sin(wc t)` with the classic
/// fourth-order Runge-Kutta scheme from t = 0 over settle + measure drive
/// periods.
///
/// The requested step is snapped down so an integer number of steps tiles one
/// period. Cycle boundaries then land exactly on samples, which is what makes
/// the integer-cycle demodulation in [`extract_steady_state`] leakage free.
pub fn integrate_drive<T: Float>(p: &GyroParams<T>, config: &IntegratorConfig<T>) -> Result<Trajectory<T>> {
    p.validate()?;
    config.validate()?;
    let period = p.drive_period();
    if !(config.dt < period / T::from_count(20)) {
        return Err(Error::config(format!(
            "integrator dt must resolve the drive: need dt < {:e} s (a twentieth of the drive period), got {:e} s",
            period / T::from_count(20),
            config.dt
        )));
    }
    let steps_per_cycle = match (period / config.dt).ceil().to_usize() {
        Some(n) if n >= 21 => n,
        _ => return Err(Error::config("integrator dt does not yield a usable step count")),
    };
    let dt = period / T::from_count(steps_per_cycle);
    let cycles = config.settle_cycles as usize + config.measure_cycles as usize;
    let n_steps = steps_per_cycle
        .checked_mul(cycles)
        .ok_or_else(|| Error::config("integration span overflows the step counter"))?;

    let mut x = Vec::with_capacity(n_steps + 1);
    let mut v = Vec::with_capacity(n_steps + 1);
    let mut xi = config.initial_displacement;
    let mut vi = config.initial_velocity;
    x.push(xi);
    v.push(vi);
    for i in 0..n_steps {
        // t from the index, not accumulation, so it cannot drift
        let t = T::from_count(i) * dt;
        (xi, vi) = rk4_step(p, t, dt, xi, vi);
        x.push(xi);
        v.push(vi);
    }

    Ok(Trajectory {
        t0: T::zero(),
        dt,
        x,
        v,
        z: None,
        measure_start: config.settle_cycles as usize * steps_per_cycle,
    })
}

fn accel<T: Float>(p: &GyroParams<T>, t: T, x: T, v: T) -> T {
    (net_drive_force(p, t) - p.damping * v - p.stiffness * x) / p.mass
}

fn rk4_step<T: Float>(p: &GyroParams<T>, t: T, dt: T, x: T, v: T) -> (T, T) {
    let half = dt / T::two();
    let k1x = v;
    let k1v = accel(p, t, x, v);
    let k2x = v + half * k1v;
    let k2v = accel(p, t + half, x + half * k1x, v + half * k1v);
    let k3x = v + half * k2v;
    let k3v = accel(p, t + half, x + half * k2x, v + half * k2v);
    let k4x = v + dt * k3v;
    let k4v = accel(p, t + dt, x + dt * k3x, v + dt * k3v);
    let sixth = dt / T::from_count(6);
    (
        x + sixth * (k1x + T::two() * (k2x + k3x) + k4x),
        v + sixth * (k1v + T::two() * (k2v + k3v) + k4v),
    )
}

/// Fills the detect channel: cumulative trapezoid integration of
/// `2 rate x(t)`, recentered by subtracting the trapezoid mean over the
/// measurement window so the steady-state sinusoid comes out zero mean.
pub fn integrate_detect<T: Float>(traj: &Trajectory<T>, rate: RateInput<T>) -> Result<Trajectory<T>> {
    let coupling = T::two() * rate.rate;
    let half_dt = traj.dt / T::two();
    let mut z = Vec::with_capacity(traj.x.len());
    let mut acc = T::zero();
    z.push(acc);
    for pair in traj.x.windows(2) {
        acc = acc + half_dt * (coupling * pair[0] + coupling * pair[1]);
        z.push(acc);
    }

    let mean = trapezoid_mean(&z[traj.measure_start..]);
    for value in &mut z {
        *value = *value - mean;
    }

    let mut out = traj.clone();
    out.z = Some(z);
    Ok(out)
}

/// Trapezoid mean of uniformly spaced samples: endpoints carry half weight,
/// so a sinusoid spanning whole cycles averages to zero up to round-off.
fn trapezoid_mean<T: Float>(samples: &[T]) -> T {
    let n = samples.len();
    if n < 2 {
        return samples.first().copied().unwrap_or_else(T::zero);
    }
    let mut sum = (samples[0] + samples[n - 1]) / T::two();
    for &s in &samples[1..n - 1] {
        sum = sum + s;
    }
    sum / T::from_count(n - 1)
}

/// Demodulates the drive displacement over the final integer-cycle window;
/// see [`demodulate`].
pub fn extract_steady_state<T: Float>(traj: &Trajectory<T>, drive_freq: T, window_cycles: u32) -> Result<Phasor<T>> {
    demodulate(traj.x(), traj.t0(), traj.dt(), drive_freq, window_cycles)
}

/// Synchronous demodulation of the tail of a uniformly sampled series:
/// trapezoid averages of the signal against sin and cos at `freq` over the
/// last `window_cycles` periods give the in-phase and quadrature components;
/// the result reads `amplitude * sin(freq t + phase)` with
/// `amplitude = 2 sqrt(I^2 + Q^2)` and `phase = atan2(Q, I)`.
///
/// On a grid where whole periods land on samples (as laid out by
/// [`integrate_drive`]) the trapezoid averages of sinusoid products are exact
/// up to round-off, so a pure sinusoid is recovered to near machine
/// precision.
pub fn demodulate<T: Float>(samples: &[T], t0: T, dt: T, freq: T, window_cycles: u32) -> Result<Phasor<T>> {
    params::require_positive("freq", freq)?;
    params::require_positive("dt", dt)?;
    if window_cycles < 1 {
        return Err(Error::domain("window_cycles", "must be at least 1"));
    }
    let period = T::TAU() / freq;
    let span = T::from_count(window_cycles as usize) * period / dt;
    let steps = match span.round().to_usize() {
        Some(n) if n >= 2 => n,
        _ => return Err(Error::domain("window_cycles", "window resolves to fewer than 2 steps")),
    };
    if steps + 1 > samples.len() {
        return Err(Error::domain(
            "window_cycles",
            format!(
                "window needs {} samples but the trajectory has {}",
                steps + 1,
                samples.len()
            ),
        ));
    }

    let start = samples.len() - 1 - steps;
    let mut in_phase = T::zero();
    let mut quadrature = T::zero();
    for (i, &s) in samples[start..].iter().enumerate() {
        let t = t0 + T::from_count(start + i) * dt;
        let (sin, cos) = (freq * t).sin_cos();
        // trapezoid weights: half at the window edges
        let w = if i == 0 || i == steps { s / T::two() } else { s };
        in_phase = in_phase + w * sin;
        quadrature = quadrature + w * cos;
    }
    let norm = T::from_count(steps);
    in_phase = in_phase / norm;
    quadrature = quadrature / norm;

    let amplitude = T::two() * in_phase.hypot(quadrature);
    Phasor::new(amplitude, quadrature.atan2(in_phase), freq)
}
