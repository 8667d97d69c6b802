//! Steady-state closed forms for the driven proof mass and the Coriolis
//! detect channel.

use crate::error::{Error, Result};
use crate::force::drive_force_amplitude;
use crate::params::{self, GyroParams, RateInput};
use crate::phasor::Phasor;
use crate::Float;

/// Drive-mode phase lag in (0, pi): `tan phi = wn wc / (Q (wn^2 - wc^2))`.
///
/// Built on `atan2(wn wc / Q, wn^2 - wc^2)` so the branch comes out right on
/// both sides of resonance, and at `wc == wn` the second argument is exactly
/// zero, making the lag exactly pi/2.
pub fn phase_lag<T: Float>(natural_freq: T, drive_freq: T, quality_factor: T) -> Result<T> {
    params::require_positive("natural_freq", natural_freq)?;
    params::require_positive("drive_freq", drive_freq)?;
    params::require_positive("quality_factor", quality_factor)?;
    Ok((natural_freq * drive_freq / quality_factor)
        .atan2(natural_freq * natural_freq - drive_freq * drive_freq))
}

/// Same lag parameterized by damping ratio, `atan2(2 xi wn wc, wn^2 - wc^2)`,
/// which extends continuously to the undamped limit: 0 below resonance, pi
/// above. Sweeps use this form so zero-damping grid points stay finite.
pub fn phase_lag_from_ratio<T: Float>(natural_freq: T, drive_freq: T, damping_ratio: T) -> T {
    (T::two() * damping_ratio * natural_freq * drive_freq)
        .atan2(natural_freq * natural_freq - drive_freq * drive_freq)
}

/// Steady drive response with damping ignored: amplitude
/// `|F / (m (wc^2 - wn^2))|`, in phase below resonance and half a turn out
/// above (the denominator sign folds into the phase).
pub fn drive_response_undamped<T: Float>(p: &GyroParams<T>) -> Result<Phasor<T>> {
    p.validate()?;
    let wn = params::natural_frequency(p.mass, p.stiffness)?;
    let wc = p.drive_freq;
    if wc == wn {
        return Err(Error::ResonanceSingularity);
    }
    let amplitude = (drive_force_amplitude(p) / (p.mass * (wc * wc - wn * wn))).abs();
    let phase = if wc < wn { T::zero() } else { T::PI() };
    Phasor::new(amplitude, phase, wc)
}

/// Steady drive response with damping: amplitude
/// `F / (m sqrt((wc^2 - wn^2)^2 + (2 xi wn wc)^2))`, phase `-phi` with `phi`
/// from [`phase_lag`]. Zero damping falls back to the undamped form, which is
/// its pointwise limit away from resonance.
pub fn drive_response_damped<T: Float>(p: &GyroParams<T>) -> Result<Phasor<T>> {
    p.validate()?;
    let xi = params::damping_ratio(p.damping, p.mass, p.stiffness)?;
    if xi == T::zero() {
        return drive_response_undamped(p);
    }
    let wn = params::natural_frequency(p.mass, p.stiffness)?;
    let wc = p.drive_freq;
    let detune = wc * wc - wn * wn;
    let loss = T::two() * xi * wn * wc;
    let amplitude = drive_force_amplitude(p) / (p.mass * (detune * detune + loss * loss).sqrt());
    let phi = phase_lag(wn, wc, params::quality_factor(xi)?)?;
    Phasor::new(amplitude, -phi, wc)
}

/// `2 * rate * velocity`, the rate-proportional acceleration that couples
/// drive motion onto the detect axis.
pub fn coriolis_acceleration<T: Float>(rate: RateInput<T>, velocity: T) -> T {
    T::two() * rate.rate * velocity
}

/// Detect-mode steady state from a drive phasor: integrating
/// `2 rate x(t)` scales the amplitude by `2 |rate| / freq` and retards the
/// phase a quarter turn; a negative rate adds half a turn on top.
pub fn detect_phasor_from_drive<T: Float>(drive: &Phasor<T>, rate: RateInput<T>) -> Result<Phasor<T>> {
    let amplitude = T::two() * rate.rate.abs() * drive.amplitude() / drive.freq();
    let mut phase = drive.phase() - T::FRAC_PI_2();
    if rate.rate < T::zero() {
        phase = phase + T::PI();
    }
    Phasor::new(amplitude, phase, drive.freq())
}

/// [`detect_phasor_from_drive`] composed with [`drive_response_undamped`].
pub fn detect_response_undamped<T: Float>(p: &GyroParams<T>, rate: RateInput<T>) -> Result<Phasor<T>> {
    detect_phasor_from_drive(&drive_response_undamped(p)?, rate)
}

/// [`detect_phasor_from_drive`] composed with [`drive_response_damped`].
pub fn detect_response_damped<T: Float>(p: &GyroParams<T>, rate: RateInput<T>) -> Result<Phasor<T>> {
    detect_phasor_from_drive(&drive_response_damped(p)?, rate)
}
