//! Ten-parameter axially symmetric qubit-qutrit Hamiltonian and its Gibbs
//! state.
//!
//! The Hamiltonian reads
//!
//! ```text
//! H = B1 s_z + B2 S_z + J (s_x S_x + s_y S_y) + Jz s_z S_z + K S_z² + K1 (S_x² + S_y²)
//!   + K2 s_z S_z² + Dz (s_x S_y - s_y S_x)
//!   + Γ [s_x {S_x, S_z} + s_y {S_y, S_z}] + Λ [s_x {S_y, S_z} - s_y {S_x, S_z}]
//! ```
//!
//! with `s = σ/2` on the qubit and spin-1 matrices `S` on the qutrit. It
//! commutes with the total z-spin, so its Gibbs state is an
//! [`ASDensityMatrix`]. Energies and temperature share one unit (k_B = 1).

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{eig_hermitian, CMatrix6, DenseHermitian6};
use crate::closed_form::{correlations_with_spectrum, CorrelationBranches};
use crate::state::{ASDensityMatrix, ASSpectrum};
use crate::{Error, Result};

/// Below this temperature the Gibbs state is replaced by the uniform mixture
/// over the ground space.
pub const GROUND_SNAP_T: f64 = 1e-4;
/// Levels within this distance of the minimum count as ground states when
/// snapping.
pub const GROUND_TOL: f64 = 1e-9;
/// Splittings below this use the `R -> 0` limit of `sinh(R/2T)/R`.
pub const SMALL_SPLIT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HamiltonianParams {
    pub b1: f64,
    pub b2: f64,
    pub j: f64,
    pub jz: f64,
    pub k: f64,
    pub k1: f64,
    pub k2: f64,
    pub dz: f64,
    pub gamma: f64,
    pub lambda: f64,
}

impl HamiltonianParams {
    /// Parameter names as used on the command line and in config files.
    pub const NAMES: [&'static str; 10] =
        ["B1", "B2", "J", "Jz", "K", "K1", "K2", "Dz", "Gamma", "Lambda"];

    /// Isotropic Heisenberg coupling `J = Jz`, everything else zero.
    pub fn xxx(j: f64) -> Self {
        Self {
            j,
            jz: j,
            ..Self::default()
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "B1" => self.b1,
            "B2" => self.b2,
            "J" => self.j,
            "Jz" => self.jz,
            "K" => self.k,
            "K1" => self.k1,
            "K2" => self.k2,
            "Dz" => self.dz,
            "Gamma" => self.gamma,
            "Lambda" => self.lambda,
            _ => return None,
        })
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let slot = match name {
            "B1" => &mut self.b1,
            "B2" => &mut self.b2,
            "J" => &mut self.j,
            "Jz" => &mut self.jz,
            "K" => &mut self.k,
            "K1" => &mut self.k1,
            "K2" => &mut self.k2,
            "Dz" => &mut self.dz,
            "Gamma" => &mut self.gamma,
            "Lambda" => &mut self.lambda,
            other => return Err(Error::Parse(format!("unknown parameter `{other}`"))),
        };
        *slot = value;
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        Self::NAMES.iter().all(|n| self.get(n).is_some_and(f64::is_finite))
    }

    /// Deterministic draw with every coupling uniform in `[-2, 2]`.
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = Self::default();
        for name in Self::NAMES {
            p.set(name, rng.gen_range(-2.0..=2.0)).unwrap();
        }
        p
    }
}

/// Applies a `key=value` parameter file on top of `params`. Keys are the
/// names in [`HamiltonianParams::NAMES`] plus `T`; blank lines and lines
/// starting with `#` are skipped. Returns the temperature if one was given.
pub fn apply_config(text: &str, params: &mut HamiltonianParams) -> Result<Option<f64>> {
    let mut t = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key=value, got `{line}`", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let value: f64 = value
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: `{value}` is not a number", lineno + 1)))?;
        if key == "T" {
            t = Some(value);
        } else {
            params.set(key, value)?;
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(t: f64) -> Result<Self> {
        if t > 0.0 && t.is_finite() {
            Ok(Self(t))
        } else {
            Err(Error::NonpositiveTemperature(t))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Temperature {
    type Error = Error;

    fn try_from(t: f64) -> Result<Self> {
        Self::new(t)
    }
}

/// Block entries and energy levels of the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianSummary {
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub h4: f64,
    pub g1: Complex64,
    pub g2: Complex64,
    /// `E1..E6`; `E2 >= E3` and `E4 >= E5`.
    pub levels: [f64; 6],
    pub r1: f64,
    pub r2: f64,
}

impl HamiltonianSummary {
    pub fn ground_energy(&self) -> f64 {
        self.levels.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

pub fn energy_levels(p: &HamiltonianParams) -> HamiltonianSummary {
    let sqrt2 = std::f64::consts::SQRT_2;
    let h1 = p.b1 / 2.0 + 2.0 * p.k1;
    let h2 = p.b1 / 2.0 - p.b2 - p.jz / 2.0 + p.k + p.k1 + p.k2 / 2.0;
    let h3 = -p.b1 / 2.0 + p.b2 - p.jz / 2.0 + p.k + p.k1 - p.k2 / 2.0;
    let h4 = -p.b1 / 2.0 + 2.0 * p.k1;
    let g1 = Complex64::new(p.j + p.gamma, p.dz + p.lambda) / sqrt2;
    let g2 = Complex64::new(p.j - p.gamma, p.dz - p.lambda) / sqrt2;
    let r1 = (h1 - h3).hypot(2.0 * g1.norm());
    let r2 = (h2 - h4).hypot(2.0 * g2.norm());
    let centre = p.jz / 2.0 + p.k + p.k1;
    let zeeman = p.b1 / 2.0 + p.b2 + p.k2 / 2.0;
    let levels = [
        centre + zeeman,
        0.5 * (h1 + h3 + r1),
        0.5 * (h1 + h3 - r1),
        0.5 * (h2 + h4 + r2),
        0.5 * (h2 + h4 - r2),
        centre - zeeman,
    ];
    HamiltonianSummary {
        h1,
        h2,
        h3,
        h4,
        g1,
        g2,
        levels,
        r1,
        r2,
    }
}

fn kron(a: &Matrix2<Complex64>, b: &Matrix3<Complex64>) -> CMatrix6 {
    CMatrix6::from_fn(|r, c| a[(r / 3, c / 3)] * b[(r % 3, c % 3)])
}

/// Hamiltonian assembled term by term from spin-1/2 and spin-1 operators.
pub fn hamiltonian_matrix(p: &HamiltonianParams) -> DenseHermitian6 {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let h = Complex64::new(0.5, 0.0);
    let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);

    let sx = Matrix2::new(z, h, h, z);
    let sy = Matrix2::new(z, -i * h, i * h, z);
    let sz = Matrix2::new(h, z, z, -h);
    let id2 = Matrix2::identity();

    let big_x = Matrix3::new(z, w, z, w, z, w, z, w, z);
    let big_y = Matrix3::new(z, -i * w, z, i * w, z, -i * w, z, i * w, z);
    let big_z = Matrix3::new(one, z, z, z, z, z, z, z, -one);
    let id3 = Matrix3::identity();

    let (qx, qy, qz) = (kron(&sx, &id3), kron(&sy, &id3), kron(&sz, &id3));
    let (ex, ey, ez) = (kron(&id2, &big_x), kron(&id2, &big_y), kron(&id2, &big_z));

    let c = |x: f64| Complex64::new(x, 0.0);
    let m = qz * c(p.b1)
        + ez * c(p.b2)
        + (qx * ex + qy * ey) * c(p.j)
        + qz * ez * c(p.jz)
        + ez * ez * c(p.k)
        + (ex * ex + ey * ey) * c(p.k1)
        + qz * ez * ez * c(p.k2)
        + (qx * ey - qy * ex) * c(p.dz)
        + (qx * (ex * ez + ez * ex) + qy * (ey * ez + ez * ey)) * c(p.gamma)
        + (qx * (ey * ez + ez * ey) - qy * (ex * ez + ez * ex)) * c(p.lambda);
    DenseHermitian6::new(m).expect("spin Hamiltonian is Hermitian")
}

/// The same Hamiltonian placed directly into the axially symmetric pattern
/// from its block entries.
pub fn hamiltonian_from_blocks(p: &HamiltonianParams) -> DenseHermitian6 {
    let s = energy_levels(p);
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut m = CMatrix6::zeros();
    m[(0, 0)] = c(s.levels[0]);
    m[(1, 1)] = c(s.h1);
    m[(2, 2)] = c(s.h2);
    m[(3, 3)] = c(s.h3);
    m[(4, 4)] = c(s.h4);
    m[(5, 5)] = c(s.levels[5]);
    m[(1, 3)] = s.g1;
    m[(3, 1)] = s.g1.conj();
    m[(2, 4)] = s.g2;
    m[(4, 2)] = s.g2.conj();
    DenseHermitian6::new(m).expect("block Hamiltonian is Hermitian")
}

/// Gibbs state together with its partition function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsState {
    pub state: ASDensityMatrix,
    /// Eigenvalues straight from the Boltzmann weights.
    pub spectrum: ASSpectrum,
    /// `Z = Σ exp(-E_i/T)`; may overflow to infinity at low temperature.
    pub z: f64,
    /// `ln Z`, finite whenever the parameters are.
    pub ln_z: f64,
}

impl GibbsState {
    /// Branches evaluated with the exact thermal spectrum.
    pub fn correlations(&self) -> Result<CorrelationBranches> {
        correlations_with_spectrum(&self.state, &self.spectrum)
    }
}

/// Boltzmann weights relative to the ground energy, or ground-space indicator
/// weights below [`GROUND_SNAP_T`].
fn relative_weights(levels: &[f64], e_min: f64, t: f64) -> Vec<f64> {
    levels
        .iter()
        .map(|&e| {
            let de = e - e_min;
            if t < GROUND_SNAP_T {
                if de <= GROUND_TOL {
                    1.0
                } else {
                    0.0
                }
            } else {
                (-de / t).exp()
            }
        })
        .collect()
}

/// `(w_lo - w_hi) / R` for a block whose levels are split by `r`, i.e. the
/// shifted form of `2 sinh(R/2T) e^{-(h+h')/2T} / R`.
fn split_factor(w_lo: f64, w_hi: f64, r: f64, t: f64) -> f64 {
    if t < GROUND_SNAP_T {
        if r < SMALL_SPLIT {
            0.0
        } else {
            (w_lo - w_hi) / r
        }
    } else if r < SMALL_SPLIT {
        w_lo / t
    } else {
        w_lo * -(-r / t).exp_m1() / r
    }
}

pub fn gibbs_state(p: &HamiltonianParams, t: Temperature) -> Result<GibbsState> {
    let t = t.value();
    let s = energy_levels(p);
    let e_min = s.ground_energy();
    let w = relative_weights(&s.levels, e_min, t);
    let zr: f64 = w.iter().sum();

    let mean1 = 0.5 * (w[1] + w[2]);
    let sf1 = split_factor(w[2], w[1], s.r1, t);
    let mean2 = 0.5 * (w[3] + w[4]);
    let sf2 = split_factor(w[4], w[3], s.r2, t);

    let state = ASDensityMatrix {
        p1: w[0] / zr,
        a: (mean1 + 0.5 * (s.h3 - s.h1) * sf1) / zr,
        b: (mean2 + 0.5 * (s.h4 - s.h2) * sf2) / zr,
        c: (mean1 + 0.5 * (s.h1 - s.h3) * sf1) / zr,
        d: (mean2 + 0.5 * (s.h2 - s.h4) * sf2) / zr,
        p6: w[5] / zr,
        u: -s.g1 * sf1 / zr,
        v: -s.g2 * sf2 / zr,
    };
    let spectrum = state.spectrum_from_parts(
        [w[0] / zr, w[2] / zr, w[1] / zr, w[4] / zr, w[3] / zr, w[5] / zr],
        s.r1 * sf1 / zr,
        s.r2 * sf2 / zr,
    );
    let ln_z = zr.ln() - e_min / t;
    Ok(GibbsState {
        state,
        spectrum,
        z: ln_z.exp(),
        ln_z,
    })
}

/// Partition function in its unshifted hyperbolic form. Overflows at low T;
/// use [`GibbsState::ln_z`] there.
pub fn partition_function(p: &HamiltonianParams, t: Temperature) -> f64 {
    let t = t.value();
    let s = energy_levels(p);
    2.0 * (((p.b1 + 2.0 * p.b2 + p.k2) / (2.0 * t)).cosh()
        * (-(p.jz + 2.0 * p.k + 2.0 * p.k1) / (2.0 * t)).exp()
        + (s.r1 / (2.0 * t)).cosh() * (-(s.h1 + s.h3) / (2.0 * t)).exp()
        + (s.r2 / (2.0 * t)).cosh() * (-(s.h2 + s.h4) / (2.0 * t)).exp())
}

/// `exp(-H/T)/Z` by numerical diagonalisation of the assembled Hamiltonian,
/// with the same energy shift and ground-space snap as [`gibbs_state`].
pub fn gibbs_oracle(p: &HamiltonianParams, t: Temperature) -> Result<DenseHermitian6> {
    let t = t.value();
    let (levels, vectors) = eig_hermitian(&hamiltonian_matrix(p))?;
    let levels: Vec<f64> = levels.iter().copied().collect();
    let w = relative_weights(&levels, levels[0], t);
    let zr: f64 = w.iter().sum();
    let diag = CMatrix6::from_fn(|i, j| {
        if i == j {
            Complex64::new(w[i] / zr, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    DenseHermitian6::new(vectors * diag * vectors.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::correlations;
    use crate::state::total_sz;

    fn max_abs(m: &CMatrix6) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn temp(t: f64) -> Temperature {
        Temperature::new(t).unwrap()
    }

    fn xxz_t() -> HamiltonianParams {
        HamiltonianParams {
            b1: 0.3,
            b2: -0.7,
            j: -1.4,
            jz: 1.0,
            k: 0.2,
            k1: -0.1,
            k2: 0.22,
            dz: 0.32,
            gamma: -0.87,
            lambda: 0.31,
        }
    }

    #[test]
    fn temperature_must_be_positive() {
        assert!(matches!(Temperature::new(0.0), Err(Error::NonpositiveTemperature(_))));
        assert!(matches!(Temperature::new(-1.0), Err(Error::NonpositiveTemperature(_))));
        assert!(Temperature::new(f64::NAN).is_err());
        assert!(Temperature::try_from(0.5).is_ok());
    }

    #[test]
    fn zero_params_zero_matrix() {
        let h = hamiltonian_matrix(&HamiltonianParams::default());
        assert_eq!(max_abs(h.as_matrix()), 0.0);
    }

    #[test]
    fn xxx_blocks_and_levels() {
        let s = energy_levels(&HamiltonianParams::xxx(1.0));
        assert_eq!((s.h1, s.h2, s.h3, s.h4), (0.0, -0.5, -0.5, 0.0));
        let g = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.g1 - Complex64::new(g, 0.0)).norm() < 1e-15);
        assert!((s.g2 - Complex64::new(g, 0.0)).norm() < 1e-15);
        assert!((s.r1 - 1.5).abs() < 1e-15 && (s.r2 - 1.5).abs() < 1e-15);
        let mut levels = s.levels;
        levels.sort_by(f64::total_cmp);
        let expected = [-1.0, -1.0, 0.5, 0.5, 0.5, 0.5];
        for (l, e) in levels.iter().zip(expected) {
            assert!((l - e).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_params_levels() {
        let s = energy_levels(&HamiltonianParams::default());
        assert!(s.levels.iter().all(|&e| e == 0.0));
        assert_eq!((s.r1, s.r2), (0.0, 0.0));
    }

    #[test]
    fn spin_form_matches_block_form() {
        for seed in 0..200 {
            let p = HamiltonianParams::random(seed);
            let a = hamiltonian_matrix(&p);
            let b = hamiltonian_from_blocks(&p);
            assert!(max_abs(&(a.as_matrix() - b.as_matrix())) < 1e-13, "seed {seed}");
            let sz = total_sz();
            let h = a.as_matrix();
            assert!(max_abs(&(h * sz - sz * h)) < 1e-13);
        }
    }

    #[test]
    fn levels_match_numeric_spectrum() {
        for p in [HamiltonianParams::random(11), xxz_t()] {
            let (vals, _) = eig_hermitian(&hamiltonian_matrix(&p)).unwrap();
            let mut levels = energy_levels(&p).levels;
            levels.sort_by(f64::total_cmp);
            for (v, e) in vals.iter().zip(levels) {
                assert!((v - e).abs() < 1e-12, "{v} vs {e}");
            }
        }
    }

    #[test]
    fn trace_identity() {
        for seed in 0..1000 {
            let p = HamiltonianParams::random(seed);
            let s = energy_levels(&p);
            let sum: f64 = s.levels.iter().sum();
            assert!((sum - 4.0 * (p.k + 2.0 * p.k1)).abs() < 1e-11);
            assert!(s.r1 >= 0.0 && s.r2 >= 0.0);
        }
    }

    #[test]
    fn zero_params_gibbs_is_maximally_mixed() {
        for t in [0.01, 1.0, 100.0] {
            let g = gibbs_state(&HamiltonianParams::default(), temp(t)).unwrap();
            let mm = ASDensityMatrix::maximally_mixed();
            for (x, y) in g.state.to_record().iter().zip(mm.to_record()) {
                assert!((x - y).abs() < 1e-15);
            }
            assert!((g.z - 6.0).abs() < 1e-12);
            let o = gibbs_oracle(&HamiltonianParams::default(), temp(t)).unwrap();
            assert!(max_abs(&(o.as_matrix() - mm.to_dense().as_matrix())) < 1e-15);
        }
    }

    #[test]
    fn closed_form_matches_exponential() {
        for seed in 0..100 {
            let p = HamiltonianParams::random(seed);
            for t in [0.05, 0.7, 5.0, 50.0] {
                let g = gibbs_state(&p, temp(t)).unwrap();
                assert!(g.state.validate(1e-10).valid);
                let o = gibbs_oracle(&p, temp(t)).unwrap();
                let diff = max_abs(&(g.state.to_dense().as_matrix() - o.as_matrix()));
                assert!(diff <= 1e-12, "seed {seed} T {t}: {diff:e}");
                assert!((o.trace() - 1.0).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn partition_function_forms_agree() {
        for seed in 0..100 {
            let p = HamiltonianParams::random(seed);
            for t in [0.7, 2.0, 10.0] {
                let direct: f64 = energy_levels(&p).levels.iter().map(|e| (-e / t).exp()).sum();
                let closed = partition_function(&p, temp(t));
                let shifted = gibbs_state(&p, temp(t)).unwrap().z;
                assert!((closed - direct).abs() <= 1e-12 * direct);
                assert!((shifted - direct).abs() <= 1e-12 * direct);
            }
        }
    }

    #[test]
    fn oracle_preserves_axial_pattern() {
        let allowed = |i: usize, j: usize| i == j || matches!((i, j), (1, 3) | (3, 1) | (2, 4) | (4, 2));
        for seed in 0..50 {
            let o = gibbs_oracle(&HamiltonianParams::random(seed), temp(0.9)).unwrap();
            for i in 0..6 {
                for j in 0..6 {
                    if !allowed(i, j) {
                        assert!(o.as_matrix()[(i, j)].norm() <= 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn low_temperature_does_not_overflow() {
        let p = HamiltonianParams::xxx(1.0);
        let g = gibbs_state(&p, temp(1e-3)).unwrap();
        assert!(g.state.to_record().iter().all(|x| x.is_finite()));
        assert!(g.ln_z.is_finite());
        // ground doublet projector / 2
        let o = gibbs_oracle(&p, temp(1e-3)).unwrap();
        let snapped = gibbs_oracle(&p, temp(1e-5)).unwrap();
        assert!(max_abs(&(o.as_matrix() - snapped.as_matrix())) < 1e-6);
        assert!(max_abs(&(g.state.to_dense().as_matrix() - snapped.as_matrix())) < 1e-6);
        let eigen = eig_hermitian(&snapped).unwrap().0;
        for (v, e) in eigen.iter().zip([0.0, 0.0, 0.0, 0.0, 0.5, 0.5]) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn ground_snap_is_continuous() {
        let p = xxz_t();
        let above = gibbs_state(&p, temp(1.01e-4)).unwrap().state;
        let below = gibbs_state(&p, temp(0.99e-4)).unwrap().state;
        for (x, y) in above.to_record().iter().zip(below.to_record()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn vanishing_splitting_is_finite() {
        // h1 = h3 and g1 = 0 gives R1 = 0
        let p = HamiltonianParams {
            b2: 0.4,
            k: 0.4,
            jz: 1.6,
            j: 0.5,
            gamma: -0.5,
            dz: 0.2,
            lambda: -0.2,
            ..Default::default()
        };
        let s = energy_levels(&p);
        assert!(s.r1 < SMALL_SPLIT, "r1 = {}", s.r1);
        let g = gibbs_state(&p, temp(0.5)).unwrap();
        assert!(g.state.validate(1e-12).valid);
        let o = gibbs_oracle(&p, temp(0.5)).unwrap();
        assert!(max_abs(&(g.state.to_dense().as_matrix() - o.as_matrix())) < 1e-12);
    }

    #[test]
    fn xxz_low_temperature_value() {
        let g = gibbs_state(&xxz_t(), temp(0.01)).unwrap();
        let c = correlations(&g.state).unwrap();
        assert!((c.u - 0.86609).abs() < 1e-3, "{c:?}");
        assert!((c.f - 0.86609).abs() < 1e-3, "{c:?}");
    }

    #[test]
    fn config_file_parsing() {
        let mut p = HamiltonianParams::default();
        let t = apply_config("# fig\nB1 = 0.3\n\nGamma=-0.87\nT=0.5\n", &mut p).unwrap();
        assert_eq!(t, Some(0.5));
        assert_eq!((p.b1, p.gamma), (0.3, -0.87));
        assert!(apply_config("B3=1\n", &mut p).is_err());
        assert!(apply_config("B1 0.3\n", &mut p).is_err());
        assert!(apply_config("B1=x\n", &mut p).is_err());
        assert_eq!(apply_config("", &mut p).unwrap(), None);
    }

    #[test]
    fn carried_spectrum_matches_entries_and_levels() {
        for seed in 0..200 {
            let p = HamiltonianParams::random(seed);
            for t in [0.05, 0.7, 5.0] {
                let g = gibbs_state(&p, temp(t)).unwrap();
                let from_entries = g.state.spectrum().unwrap();
                for (x, y) in g.spectrum.eigenvalues().iter().zip(from_entries.eigenvalues()) {
                    assert!((x - y).abs() < 1e-12, "seed {seed} T {t}");
                }
                assert!((g.spectrum.split1 - from_entries.split1).abs() < 1e-12);
                assert!((g.spectrum.split2 - from_entries.split2).abs() < 1e-12);
                assert!((g.spectrum.sum() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn carried_spectrum_keeps_tiny_populations() {
        // XXX at T = 0.02: excited populations ~e^{-75}, far below the
        // rounding of the entries
        let g = gibbs_state(&HamiltonianParams::xxx(1.0), temp(0.02)).unwrap();
        let expected = (-75.0f64).exp() / 2.0;
        assert!((g.spectrum.p3 / expected - 1.0).abs() < 1e-12);
        assert!((g.spectrum.p1 / expected - 1.0).abs() < 1e-12);
        let c = g.correlations().unwrap();
        assert!((c.u - 8.0 / 9.0).abs() < 1e-12);
    }
}
