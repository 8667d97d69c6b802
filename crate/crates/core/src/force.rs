use crate::params::GyroParams;
use crate::Float;

/// Selects one of the two opposing comb banks: `Plus` is energized with
/// `V0 + Va sin(wc t)`, `Minus` with `V0 - Va sin(wc t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Plus,
    Minus,
}

/// Net push-pull force amplitude, `2 (2n - 1) eps_r eps_0 w V0 Va / d`.
pub fn drive_force_amplitude<T: Float>(p: &GyroParams<T>) -> T {
    comb_scale(p) * T::two() * p.bias_voltage * p.drive_voltage
}

/// Force of a single bank at time `t`: `(2n - 1) eps_r eps_0 w V^2 / (2 d)`.
pub fn instantaneous_comb_force<T: Float>(p: &GyroParams<T>, time: T, polarity: Polarity) -> T {
    let s = (p.drive_freq * time).sin();
    let v = match polarity {
        Polarity::Plus => p.bias_voltage + p.drive_voltage * s,
        Polarity::Minus => p.bias_voltage - p.drive_voltage * s,
    };
    comb_scale(p) * v * v / T::two()
}

/// Net force of the two banks at time `t`. The squared-voltage cross terms
/// cancel algebraically, leaving `F sin(wc t)` with `F` from
/// [`drive_force_amplitude`]; that reduced form is evaluated directly so the
/// identity holds bit for bit, and the cancellation itself is checked in
/// tests by differencing [`instantaneous_comb_force`].
pub fn net_drive_force<T: Float>(p: &GyroParams<T>, time: T) -> T {
    drive_force_amplitude(p) * (p.drive_freq * time).sin()
}

/// `(2n - 1) eps_r eps_0 w / d`, shared by all three force expressions.
fn comb_scale<T: Float>(p: &GyroParams<T>) -> T {
    let combs = T::from_count(2 * p.comb_count as usize - 1);
    combs * p.rel_permittivity * p.vacuum_permittivity * p.overlap_width / p.gap
}
