//! Lumped-parameter model of a comb-drive vibratory rate gyroscope.
//!
//! The device is a proof mass driven electrostatically along one axis and
//! read out along a perpendicular axis through Coriolis coupling. Everything
//! here reduces to a driven damped oscillator plus a handful of closed forms:
//!
//! * [`params`] and [`force`]: device constants, derived modal quantities,
//!   and the push-pull comb force.
//! * [`response`]: steady-state drive and detect phasors, damped and in
//!   vacuum, and the drive phase lag.
//! * [`damping`]: temperature-dependent gas damping.
//! * [`ode`]: a fixed-step Runge-Kutta integrator plus synchronous
//!   demodulation, kept deliberately independent of the closed forms so the
//!   two routes can check each other.
//! * [`sweep`]: damping and temperature sweeps tabulated as CSV.
//!
//! All physics is generic over the scalar type through [`Float`]; `f64`
//! aliases for the main types live at the crate root.

pub mod damping;
pub mod error;
pub mod force;
pub mod ode;
pub mod params;
pub mod phasor;
pub mod response;
pub mod sweep;

use core::fmt;

pub use error::{Error, Result};

/// Scalar the physics is generic over. Blanket-implemented, so `f32` and
/// `f64` (and anything else satisfying the bounds) work out of the box.
pub trait Float:
    num_traits::Float + num_traits::FloatConst + num_traits::FromPrimitive + fmt::Debug + fmt::Display + fmt::LowerExp
{
    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Exact conversion of a small integer (comb counts, grid indices).
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits in the scalar type")
    }

    /// Degrees from radians, computed as `x / pi * 180` so that the ratio is
    /// taken first; `FRAC_PI_2` then maps to exactly 90.
    fn rad_to_deg(self) -> Self {
        self / Self::PI() * Self::from_count(180)
    }

    fn deg_to_rad(self) -> Self {
        self / Self::from_count(180) * Self::PI()
    }
}

impl<T> Float for T where
    T: num_traits::Float
        + num_traits::FloatConst
        + num_traits::FromPrimitive
        + fmt::Debug
        + fmt::Display
        + fmt::LowerExp
{
}

pub type GyroParams64 = params::GyroParams<f64>;
pub type DerivedParams64 = params::DerivedParams<f64>;
pub type RateInput64 = params::RateInput<f64>;
pub type DampingModel64 = damping::DampingModel<f64>;
pub type Phasor64 = phasor::Phasor<f64>;
pub type IntegratorConfig64 = ode::IntegratorConfig<f64>;
pub type Trajectory64 = ode::Trajectory<f64>;
pub type SweepSpec64 = sweep::SweepSpec<f64>;
pub type SweepRow64 = sweep::SweepRow<f64>;

pub type GyroParams32 = params::GyroParams<f32>;
pub type DerivedParams32 = params::DerivedParams<f32>;
pub type RateInput32 = params::RateInput<f32>;
pub type DampingModel32 = damping::DampingModel<f32>;
pub type Phasor32 = phasor::Phasor<f32>;
pub type IntegratorConfig32 = ode::IntegratorConfig<f32>;
pub type Trajectory32 = ode::Trajectory<f32>;
pub type SweepSpec32 = sweep::SweepSpec<f32>;
pub type SweepRow32 = sweep::SweepRow<f32>;
