use crate::error::{Error, Result};
use crate::params;
use crate::Float;

/// Temperature model of the total damping coefficient: a fixed non-gas floor
/// plus a gas term proportional to viscosity, `mu(T) = mu_0 (T/T_0)^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingModel<T> {
    /// Damping from everything except the gas, N s/m.
    pub base_damping: T,
    /// Gas viscosity at the reference temperature, Pa s.
    pub ref_viscosity: T,
    /// Reference temperature, K.
    pub ref_temperature: T,
    /// Exponent of the viscosity power law; specific to the fill gas.
    pub viscosity_exponent: T,
    /// Length scale (m) converting viscosity into a damping coefficient, so
    /// that c_gas = geometry_factor * mu. Unity makes the total a bare
    /// `c_0 + mu` sum; physical values fold in the gas-film geometry.
    pub geometry_factor: T,
}

impl<T: Float> DampingModel<T> {
    pub fn validate(&self) -> Result<()> {
        params::require_non_negative("base_damping", self.base_damping)?;
        params::require_non_negative("ref_viscosity", self.ref_viscosity)?;
        params::require_positive("ref_temperature", self.ref_temperature)?;
        if !self.viscosity_exponent.is_finite() {
            return Err(Error::domain(
                "viscosity_exponent",
                format!("must be finite, got {}", self.viscosity_exponent),
            ));
        }
        params::require_positive("geometry_factor", self.geometry_factor)?;
        Ok(())
    }
}

/// `mu_0 (T/T_0)^n`. At the reference temperature the power is applied to an
/// exact 1, so the result is exactly `mu_0`.
pub fn viscosity_at_temperature<T: Float>(model: &DampingModel<T>, temperature: T) -> Result<T> {
    params::require_positive("temperature", temperature)?;
    Ok(model.ref_viscosity * (temperature / model.ref_temperature).powf(model.viscosity_exponent))
}

/// Total damping coefficient `c_0 + g * mu(T)`, N s/m.
pub fn total_damping<T: Float>(model: &DampingModel<T>, temperature: T) -> Result<T> {
    Ok(model.base_damping + model.geometry_factor * viscosity_at_temperature(model, temperature)?)
}

/// Damping ratio at temperature; defined as the literal composition of
/// [`total_damping`] with [`params::damping_ratio`].
pub fn damping_ratio_at_temperature<T: Float>(
    model: &DampingModel<T>,
    temperature: T,
    mass: T,
    stiffness: T,
) -> Result<T> {
    params::damping_ratio(total_damping(model, temperature)?, mass, stiffness)
}
