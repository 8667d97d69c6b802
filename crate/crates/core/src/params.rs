use crate::error::{Error, Result};
use crate::Float;

/// Physical constants of the device. SI base units throughout; `drive_freq`
/// is angular (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GyroParams<T> {
    /// Proof-mass mass, kg.
    pub mass: T,
    /// Suspension spring constant, N/m.
    pub stiffness: T,
    /// Total damping coefficient, N s/m.
    pub damping: T,
    /// Number of moving combs per bank.
    pub comb_count: u32,
    /// Comb overlap width, m.
    pub overlap_width: T,
    /// Gap between fixed and moving comb fingers, m.
    pub gap: T,
    /// Relative permittivity of the fill gas.
    pub rel_permittivity: T,
    /// Vacuum permittivity, F/m.
    pub vacuum_permittivity: T,
    /// DC bias on both banks, V.
    pub bias_voltage: T,
    /// AC drive amplitude, V.
    pub drive_voltage: T,
    /// Drive angular frequency, rad/s.
    pub drive_freq: T,
}

impl<T: Float> GyroParams<T> {
    /// Checks every physical constraint; the error names the offending field.
    pub fn validate(&self) -> Result<()> {
        require_positive("mass", self.mass)?;
        require_positive("stiffness", self.stiffness)?;
        require_non_negative("damping", self.damping)?;
        if self.comb_count < 1 {
            return Err(Error::domain("comb_count", "at least one moving comb required"));
        }
        require_positive("overlap_width", self.overlap_width)?;
        require_positive("gap", self.gap)?;
        if !(self.rel_permittivity >= T::one()) {
            return Err(Error::domain(
                "rel_permittivity",
                format!("must be at least 1, got {}", self.rel_permittivity),
            ));
        }
        require_positive("vacuum_permittivity", self.vacuum_permittivity)?;
        require_non_negative("bias_voltage", self.bias_voltage)?;
        require_non_negative("drive_voltage", self.drive_voltage)?;
        require_positive("drive_freq", self.drive_freq)?;
        Ok(())
    }

    /// One drive period, s.
    pub fn drive_period(&self) -> T {
        T::TAU() / self.drive_freq
    }
}

/// Modal quantities computed once from a parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams<T> {
    /// Natural angular frequency, rad/s.
    pub natural_freq: T,
    pub damping_ratio: T,
    /// None when the configuration is undamped.
    pub quality_factor: Option<T>,
    /// Net drive force amplitude, N.
    pub force_amplitude: T,
}

impl<T: Float> DerivedParams<T> {
    pub fn from_params(p: &GyroParams<T>) -> Result<Self> {
        p.validate()?;
        let xi = damping_ratio(p.damping, p.mass, p.stiffness)?;
        Ok(DerivedParams {
            natural_freq: natural_frequency(p.mass, p.stiffness)?,
            damping_ratio: xi,
            quality_factor: if xi > T::zero() { Some(quality_factor(xi)?) } else { None },
            force_amplitude: crate::force::drive_force_amplitude(p),
        })
    }
}

/// Input angular rate about the sensitive axis, rad/s. Sign matters: a
/// negative rate flips the detect phase by half a turn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateInput<T> {
    pub rate: T,
}

impl<T: Float> RateInput<T> {
    pub fn new(rate: T) -> Result<Self> {
        if rate.is_finite() {
            Ok(RateInput { rate })
        } else {
            Err(Error::domain("rate", format!("must be finite, got {rate}")))
        }
    }
}

/// sqrt(k/m), rad/s.
pub fn natural_frequency<T: Float>(mass: T, stiffness: T) -> Result<T> {
    require_positive("mass", mass)?;
    require_positive("stiffness", stiffness)?;
    Ok((stiffness / mass).sqrt())
}

/// c / (2 sqrt(m k)).
pub fn damping_ratio<T: Float>(damping: T, mass: T, stiffness: T) -> Result<T> {
    require_positive("mass", mass)?;
    require_positive("stiffness", stiffness)?;
    require_non_negative("damping", damping)?;
    Ok(damping / (T::two() * (mass * stiffness).sqrt()))
}

/// 1 / (2 xi). Undefined at zero damping, which is reported as
/// [`Error::Undamped`] rather than infinity.
pub fn quality_factor<T: Float>(damping_ratio: T) -> Result<T> {
    if !damping_ratio.is_finite() || damping_ratio < T::zero() {
        return Err(Error::domain(
            "damping_ratio",
            format!("must be finite and non-negative, got {damping_ratio}"),
        ));
    }
    if damping_ratio == T::zero() {
        return Err(Error::Undamped);
    }
    Ok(T::one() / (T::two() * damping_ratio))
}

pub(crate) fn require_positive<T: Float>(name: &'static str, value: T) -> Result<()> {
    if value.is_finite() && value > T::zero() {
        Ok(())
    } else {
        Err(Error::domain(name, format!("must be positive and finite, got {value}")))
    }
}

pub(crate) fn require_non_negative<T: Float>(name: &'static str, value: T) -> Result<()> {
    if value.is_finite() && value >= T::zero() {
        Ok(())
    } else {
        Err(Error::domain(name, format!("must be non-negative and finite, got {value}")))
    }
}
