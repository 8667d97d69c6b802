//! Regenerates the calibrated damping range committed as
//! `PHASE_SPAN_DAMPING_MIN` / `PHASE_SPAN_DAMPING_MAX`: the damping values
//! at which the phase-span device's drive lag crosses 0.17 and 0.47 degrees.

use gyrosim_core::params::{damping_ratio, natural_frequency};
use gyrosim_core::response::phase_lag_from_ratio;
use gyrosim_core::sweep::{calibrate_damping_for_phase, phase_span_device};
use gyrosim_core::Float;

fn main() {
    let p = phase_span_device();
    let wn = natural_frequency(p.mass, p.stiffness).unwrap();
    println!("device: m = {:e} kg, k = {:e} N/m", p.mass, p.stiffness);
    println!(
        "        f_n = {:.6} Hz, drive = {:.6} Hz",
        wn / std::f64::consts::TAU,
        p.drive_freq / std::f64::consts::TAU
    );

    for target_deg in [0.17f64, 0.47] {
        let c = calibrate_damping_for_phase(&p, target_deg).unwrap();
        let xi = damping_ratio(c, p.mass, p.stiffness).unwrap();
        let check = phase_lag_from_ratio(wn, p.drive_freq, xi).rad_to_deg();
        println!(
            "phase {target_deg} deg: c = {:.16e} N*s/m (check: {:.12} deg)",
            c, check
        );
    }
}
