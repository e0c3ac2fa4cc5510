//! Analytic limits: leading high-temperature coefficients and the isotropic
//! (XXX) closed form with its universal zero-temperature value.

use crate::closed_form::CorrelationBranches;
use crate::thermal::{gibbs_state, HamiltonianParams, Temperature};
use crate::{Error, Result};

/// Coefficients `c` in `branch(T) ≈ c / T²` as `T -> ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighTCoefficients {
    pub c_u0: f64,
    pub c_u1: f64,
    pub c_f0: f64,
    pub c_f1: f64,
}

pub fn high_t_coefficients(p: &HamiltonianParams) -> HighTCoefficients {
    let transverse = p.j.powi(2) + p.dz.powi(2) + p.gamma.powi(2) + p.lambda.powi(2);
    let c_u0 = transverse / 6.0;
    let c_u1 = (3.0 * p.b1.powi(2)
        + 4.0 * p.b1 * p.k2
        + 2.0 * (transverse + p.jz.powi(2) + p.k2.powi(2)))
        / 24.0;
    HighTCoefficients {
        c_u0,
        c_u1,
        c_f0: 2.0 * c_u0,
        c_f1: 2.0 * c_u1,
    }
}

/// `T² · branch(T)` for each branch at finite temperature, for comparison
/// with [`high_t_coefficients`].
pub fn scaled_branches(p: &HamiltonianParams, t: Temperature) -> Result<HighTCoefficients> {
    let c: CorrelationBranches = gibbs_state(p, t)?.correlations()?;
    let t2 = t.value() * t.value();
    Ok(HighTCoefficients {
        c_u0: t2 * c.u0,
        c_u1: t2 * c.u1,
        c_f0: t2 * c.f0,
        c_f1: t2 * c.f1,
    })
}

/// LQFI of the isotropic model `J = Jz` (all other couplings zero):
/// `(16/9) sinh(x) tanh(x) e^x / (2 + e^{2x})` with `x = 3J/4T`.
pub fn xxx_f0(j: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::NonpositiveTemperature(t));
    }
    let x = 0.75 * j / t;
    // sinh(x) e^x / (2 + e^{2x}) without forming e^{2x} for large |x|
    let weight = if x >= 0.0 {
        let e = (-2.0 * x).exp();
        -(-2.0 * x).exp_m1() / (2.0 * (1.0 + 2.0 * e))
    } else {
        let e = (2.0 * x).exp();
        (2.0 * x).exp_m1() / (2.0 * (2.0 + e))
    };
    Ok(16.0 / 9.0 * x.tanh() * weight)
}

/// Zero-temperature value of both measures in the isotropic model, for any
/// `J > 0`.
pub fn xxx_zero_t_limit() -> f64 {
    8.0 / 9.0
}
