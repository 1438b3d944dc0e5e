//! Parameter initialization and the folded angle sum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::protocol::{ParameterVector, ProtocolSpec};
use crate::Result;

/// Default half-width of the uniform initialization window. Small enough to
/// avoid aliasing across gate periods; exposed as a knob everywhere it is
/// used.
pub const DEFAULT_INIT_SCALE: f64 = std::f64::consts::FRAC_PI_4;

/// Principal period of every gate angle. Both sublayer generators have
/// integer spectra of fixed parity, so a shift by π changes the prepared
/// state by at most a global phase; frozen after the cost-invariance
/// calibration test.
pub const ANGLE_PERIOD: f64 = std::f64::consts::PI;

/// Independent uniform draws from `[-scale, scale)`; deterministic per seed.
pub fn random_initial_theta(spec: &ProtocolSpec, seed: u64, scale: f64) -> Result<ParameterVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta: Vec<f64> = (0..spec.param_count())
        .map(|_| {
            if scale == 0.0 {
                0.0
            } else {
                rng.gen_range(-scale..scale)
            }
        })
        .collect();
    ParameterVector::new(spec, theta)
}

/// Fold an angle into the principal window `(-π/2, π/2]`.
pub fn fold_angle(theta: f64) -> f64 {
    let folded = theta - ANGLE_PERIOD * (theta / ANGLE_PERIOD).round();
    if folded <= -ANGLE_PERIOD / 2.0 {
        folded + ANGLE_PERIOD
    } else {
        folded
    }
}

/// `Σ_i |fold(θ_i)|`: total rotation once gate periodicity is taken into
/// account (proportional to the physical run time of the circuit).
pub fn sum_of_angles(theta: &ParameterVector, _spec: &ProtocolSpec) -> f64 {
    theta.as_slice().iter().map(|&t| fold_angle(t).abs()).sum()
}
