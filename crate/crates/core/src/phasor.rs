use crate::error::{Error, Result};
use crate::Float;

/// Steady-state sinusoid `amplitude * sin(freq * t + phase)`.
///
/// Construction normalizes: a negative amplitude folds into a half-turn phase
/// shift, and the phase is wrapped into [0, 2 pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phasor<T> {
    amplitude: T,
    phase: T,
    freq: T,
}

impl<T: Float> Phasor<T> {
    pub fn new(amplitude: T, phase: T, freq: T) -> Result<Self> {
        if !freq.is_finite() || freq <= T::zero() {
            return Err(Error::domain("freq", format!("must be positive and finite, got {freq}")));
        }
        if !amplitude.is_finite() {
            return Err(Error::domain("amplitude", format!("must be finite, got {amplitude}")));
        }
        if !phase.is_finite() {
            return Err(Error::domain("phase", format!("must be finite, got {phase}")));
        }
        let (amplitude, phase) = if amplitude < T::zero() {
            (-amplitude, phase + T::PI())
        } else {
            (amplitude, phase)
        };
        Ok(Phasor {
            amplitude,
            phase: wrap_angle(phase),
            freq,
        })
    }

    pub fn amplitude(&self) -> T {
        self.amplitude
    }

    /// Phase in [0, 2 pi).
    pub fn phase(&self) -> T {
        self.phase
    }

    /// Angular frequency, rad/s.
    pub fn freq(&self) -> T {
        self.freq
    }

    pub fn evaluate(&self, t: T) -> T {
        self.amplitude * (self.freq * t + self.phase).sin()
    }
}

/// Wraps an angle into [0, 2 pi). The result of adding 2 pi to a small
/// negative angle can round up to 2 pi itself, which maps to zero.
pub fn wrap_angle<T: Float>(angle: T) -> T {
    let tau = T::TAU();
    let mut a = angle % tau;
    if a < T::zero() {
        a = a + tau;
    }
    if a >= tau {
        a = T::zero();
    }
    a
}
