//! JSON config model. Every section and field is optional; absent values
//! fall back to the documented defaults (the 500 Hz comb device). Unknown
//! keys are rejected so typos in physical parameters cannot pass silently.

use gyrosim_core::damping::DampingModel;
use gyrosim_core::ode::IntegratorConfig;
use gyrosim_core::params::GyroParams;
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub gyro: GyroSection,
    #[serde(default)]
    pub damping_model: DampingModelSection,
    /// Input angular rate about the sensitive axis, rad/s.
    pub rate: Option<f64>,
    #[serde(default)]
    pub integrator: IntegratorSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GyroSection {
    pub mass: Option<f64>,
    pub stiffness: Option<f64>,
    pub damping: Option<f64>,
    pub comb_count: Option<u32>,
    pub overlap_width: Option<f64>,
    pub gap: Option<f64>,
    pub rel_permittivity: Option<f64>,
    pub vacuum_permittivity: Option<f64>,
    pub bias_voltage: Option<f64>,
    pub drive_voltage: Option<f64>,
    pub drive_freq: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DampingModelSection {
    pub base_damping: Option<f64>,
    pub ref_viscosity: Option<f64>,
    pub ref_temperature: Option<f64>,
    pub viscosity_exponent: Option<f64>,
    pub geometry_factor: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSection {
    pub dt: Option<f64>,
    pub settle_cycles: Option<u32>,
    pub measure_cycles: Option<u32>,
    pub initial_displacement: Option<f64>,
    pub initial_velocity: Option<f64>,
}

impl ConfigFile {
    /// Default device: 10 ug proof mass sprung to resonate at 500 Hz, 50
    /// comb pairs of 20 um overlap width across a 3 um gap, 10 V bias with
    /// 5 V drive at the 500 Hz resonance, and light gas damping.
    pub fn gyro_params(&self) -> GyroParams<f64> {
        let g = &self.gyro;
        GyroParams {
            mass: g.mass.unwrap_or(1e-8),
            // exactly 500 Hz against the default mass
            stiffness: g.stiffness.unwrap_or(0.09869604401089356),
            damping: g.damping.unwrap_or(1e-6),
            comb_count: g.comb_count.unwrap_or(50),
            overlap_width: g.overlap_width.unwrap_or(2e-5),
            gap: g.gap.unwrap_or(3e-6),
            rel_permittivity: g.rel_permittivity.unwrap_or(1.0),
            vacuum_permittivity: g.vacuum_permittivity.unwrap_or(8.85e-12),
            bias_voltage: g.bias_voltage.unwrap_or(10.0),
            drive_voltage: g.drive_voltage.unwrap_or(5.0),
            drive_freq: g.drive_freq.unwrap_or(std::f64::consts::TAU * 500.0),
        }
    }

    /// Default gas model: air viscosity 1.8e-5 Pa s referenced at 300 K with
    /// a 0.7 temperature exponent, on top of a 1e-7 N s/m structural floor.
    pub fn damping_model(&self) -> DampingModel<f64> {
        let d = &self.damping_model;
        DampingModel {
            base_damping: d.base_damping.unwrap_or(1e-7),
            ref_viscosity: d.ref_viscosity.unwrap_or(1.8e-5),
            ref_temperature: d.ref_temperature.unwrap_or(300.0),
            viscosity_exponent: d.viscosity_exponent.unwrap_or(0.7),
            geometry_factor: d.geometry_factor.unwrap_or(1e-2),
        }
    }

    pub fn rate(&self) -> f64 {
        self.rate.unwrap_or(0.1)
    }

    /// Integrator defaults come from the device (step, settle, and measure
    /// windows sized by [`IntegratorConfig::for_params`]); any field present
    /// in the file overrides its default.
    pub fn integrator(&self, params: &GyroParams<f64>) -> gyrosim_core::Result<IntegratorConfig<f64>> {
        let mut cfg = IntegratorConfig::for_params(params)?;
        let section = &self.integrator;
        if let Some(dt) = section.dt {
            cfg.dt = dt;
        }
        if let Some(settle) = section.settle_cycles {
            cfg.settle_cycles = settle;
        }
        if let Some(measure) = section.measure_cycles {
            cfg.measure_cycles = measure;
        }
        if let Some(x0) = section.initial_displacement {
            cfg.initial_displacement = x0;
        }
        if let Some(v0) = section.initial_velocity {
            cfg.initial_velocity = v0;
        }
        Ok(cfg)
    }
}
