//! Axially symmetric qubit-qutrit density matrices.
//!
//! In the product basis |s⟩⊗|m⟩ (qubit index major) a state commuting with the
//! total z-spin has the sparse pattern
//!
//! ```text
//! p1 .  .  .  .  .
//! .  a  .  u  .  .
//! .  .  b  .  v  .
//! .  u* .  c  .  .
//! .  .  v* .  d  .
//! .  .  .  .  .  p6
//! ```
//!
//! so it is described by six real weights and two complex coherences.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::Matrix6;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::DenseHermitian6;
use crate::{Error, Result, EPS_DEG};

/// Tolerance used by [`ASDensityMatrix::spectrum`] to reject malformed input.
pub const SPECTRUM_TOL: f64 = 1e-9;

/// Eigenvalues in `[-CLIP_FLOOR, 0)` are treated as round-off and set to zero.
pub const CLIP_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ASDensityMatrix {
    pub p1: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub p6: f64,
    pub u: Complex64,
    pub v: Complex64,
}

/// Outcome of [`ASDensityMatrix::validate`]. Each violation carries the
/// constraint name and how far it is broken.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<(String, f64)>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "valid");
        }
        for (i, (name, mag)) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{name} violated by {mag:e}")?;
        }
        Ok(())
    }
}

/// Analytic spectrum of an axially symmetric state.
///
/// `p2 >= p3` come from the {a, c, u} block and `p4 >= p5` from the {b, d, v}
/// block. `q1`, `q2` parameterise the block eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ASSpectrum {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
    pub p5: f64,
    pub p6: f64,
    pub q1: f64,
    pub q2: f64,
    /// `sqrt((a-c)^2 + 4|u|^2)`, the exact splitting `p2 - p3`.
    pub split1: f64,
    /// `sqrt((b-d)^2 + 4|v|^2)`, the exact splitting `p4 - p5`.
    pub split2: f64,
    pub deg_block1: bool,
    pub deg_block2: bool,
}

impl ASSpectrum {
    pub fn eigenvalues(&self) -> [f64; 6] {
        [self.p1, self.p2, self.p3, self.p4, self.p5, self.p6]
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues().iter().sum()
    }
}

fn clip(x: f64) -> f64 {
    if (-CLIP_FLOOR..0.0).contains(&x) {
        0.0
    } else {
        x
    }
}

/// `x y - |w|²` with each product split into a rounded part and its exact
/// error term, so that a nearly singular block keeps its relative accuracy.
fn block_det(x: f64, y: f64, w: Complex64) -> f64 {
    let two_prod = |a: f64, b: f64| {
        let p = a * b;
        (p, a.mul_add(b, -p))
    };
    let (xy, xy_err) = two_prod(x, y);
    let (rr, rr_err) = two_prod(w.re, w.re);
    let (ii, ii_err) = two_prod(w.im, w.im);
    (xy - rr - ii) + (xy_err - rr_err - ii_err)
}

/// Eigen-decomposition of the Hermitian block `[[x, w], [w*, y]]`:
/// returns `(larger, smaller, q, split)`.
fn block_spectrum(x: f64, y: f64, w: Complex64) -> (f64, f64, f64, f64) {
    let w2 = w.norm_sqr();
    let diff = x - y;
    let split = diff.hypot(2.0 * w.norm());
    let hi = 0.5 * (x + y + split);
    // product form avoids cancellation in the smaller root
    let lo = if hi > 0.0 { block_det(x, y, w) / hi } else { 0.0 };
    (hi, clip(lo), block_q(diff, split, w2), split)
}

/// `q = ((x-y) + split) / 2`, rewritten as `2|w|²/(split - (x-y))` when the
/// sum would cancel.
fn block_q(diff: f64, split: f64, w2: f64) -> f64 {
    if diff >= 0.0 {
        0.5 * (diff + split)
    } else {
        2.0 * w2 / (split - diff)
    }
}

impl ASDensityMatrix {
    pub fn maximally_mixed() -> Self {
        let w = 1.0 / 6.0;
        Self {
            p1: w,
            a: w,
            b: w,
            c: w,
            d: w,
            p6: w,
            u: Complex64::new(0.0, 0.0),
            v: Complex64::new(0.0, 0.0),
        }
    }

    /// Builds a state from the flat record
    /// `p1, a, b, c, d, p6, Re u, Im u, Re v, Im v`.
    pub fn from_record(r: [f64; 10]) -> Self {
        Self {
            p1: r[0],
            a: r[1],
            b: r[2],
            c: r[3],
            d: r[4],
            p6: r[5],
            u: Complex64::new(r[6], r[7]),
            v: Complex64::new(r[8], r[9]),
        }
    }

    pub fn to_record(&self) -> [f64; 10] {
        [
            self.p1, self.a, self.b, self.c, self.d, self.p6, self.u.re, self.u.im, self.v.re,
            self.v.im,
        ]
    }

    pub fn trace(&self) -> f64 {
        self.p1 + self.a + self.b + self.c + self.d + self.p6
    }

    pub fn validate(&self, tol: f64) -> ValidationReport {
        let mut violations = Vec::new();
        let weights = [
            ("p1>=0", self.p1),
            ("a>=0", self.a),
            ("b>=0", self.b),
            ("c>=0", self.c),
            ("d>=0", self.d),
            ("p6>=0", self.p6),
        ];
        for (name, w) in weights {
            if !w.is_finite() || w < -tol {
                violations.push((name.to_string(), -w));
            }
        }
        let trace_err = (self.trace() - 1.0).abs();
        if !(trace_err <= tol) {
            violations.push(("trace".to_string(), trace_err));
        }
        let gap_u = self.u.norm_sqr() - self.a * self.c;
        if !(gap_u <= tol) {
            violations.push(("ac≥|u|²".to_string(), gap_u));
        }
        let gap_v = self.v.norm_sqr() - self.b * self.d;
        if !(gap_v <= tol) {
            violations.push(("bd≥|v|²".to_string(), gap_v));
        }
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    /// Analytic eigenvalues and eigenvector parameters.
    pub fn spectrum(&self) -> Result<ASSpectrum> {
        let report = self.validate(SPECTRUM_TOL);
        if !report.valid {
            return Err(Error::InvalidState(report));
        }
        let u2 = self.u.norm_sqr();
        let v2 = self.v.norm_sqr();
        let (p2, p3, q1, split1) = block_spectrum(self.a, self.c, self.u);
        let (p4, p5, q2, split2) = block_spectrum(self.b, self.d, self.v);
        Ok(ASSpectrum {
            p1: clip(self.p1),
            p2,
            p3,
            p4,
            p5,
            p6: clip(self.p6),
            q1,
            q2,
            split1,
            split2,
            deg_block1: q1 * q1 + u2 < EPS_DEG,
            deg_block2: q2 * q2 + v2 < EPS_DEG,
        })
    }

    /// Spectrum from eigenvalues known independently of the entries, e.g.
    /// Boltzmann weights. `p` is ordered as in [`ASSpectrum`] and the splits
    /// are `p2 - p3` and `p4 - p5`. Tiny eigenvalues keep full relative
    /// precision here, which [`Self::spectrum`] cannot recover from rounded
    /// entries.
    pub fn spectrum_from_parts(&self, p: [f64; 6], split1: f64, split2: f64) -> ASSpectrum {
        let u2 = self.u.norm_sqr();
        let v2 = self.v.norm_sqr();
        let q1 = block_q(self.a - self.c, split1, u2);
        let q2 = block_q(self.b - self.d, split2, v2);
        ASSpectrum {
            p1: p[0],
            p2: p[1],
            p3: p[2],
            p4: p[3],
            p5: p[4],
            p6: p[5],
            q1,
            q2,
            split1,
            split2,
            deg_block1: q1 * q1 + u2 < EPS_DEG,
            deg_block2: q2 * q2 + v2 < EPS_DEG,
        }
    }

    pub fn to_dense(&self) -> DenseHermitian6 {
        let re = |x: f64| Complex64::new(x, 0.0);
        let mut m = Matrix6::<Complex64>::zeros();
        m[(0, 0)] = re(self.p1);
        m[(1, 1)] = re(self.a);
        m[(2, 2)] = re(self.b);
        m[(3, 3)] = re(self.c);
        m[(4, 4)] = re(self.d);
        m[(5, 5)] = re(self.p6);
        m[(1, 3)] = self.u;
        m[(3, 1)] = self.u.conj();
        m[(2, 4)] = self.v;
        m[(4, 2)] = self.v.conj();
        DenseHermitian6::new_unchecked(m)
    }

    /// Same state with the coherences rotated by independent phases.
    pub fn with_phases(&self, theta_u: f64, theta_v: f64) -> Self {
        Self {
            u: self.u * Complex64::from_polar(1.0, theta_u),
            v: self.v * Complex64::from_polar(1.0, theta_v),
            ..*self
        }
    }
}

/// Total z-spin `diag(3/2, 1/2, -1/2, 1/2, -1/2, -3/2)` of the qubit-qutrit pair.
pub fn total_sz() -> Matrix6<Complex64> {
    let diag = [1.5, 0.5, -0.5, 0.5, -0.5, -1.5];
    Matrix6::from_fn(|i, j| {
        if i == j {
            Complex64::new(diag[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Deterministic random valid state.
///
/// The six diagonal weights are flat-Dirichlet (normalised exponentials); `u`
/// and `v` are uniform in the discs `|u| <= sqrt(ac)`, `|v| <= sqrt(bd)`.
pub fn random_state(seed: u64) -> ASDensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = [0.0f64; 6];
    for x in w.iter_mut() {
        *x = -(1.0 - rng.gen::<f64>()).ln();
    }
    let total: f64 = w.iter().sum();
    for x in w.iter_mut() {
        *x /= total;
    }
    let [p1, a, b, c, d, p6] = w;
    let mut disc = |radius: f64| {
        let r = radius * rng.gen::<f64>().sqrt();
        Complex64::from_polar(r, 2.0 * PI * rng.gen::<f64>())
    };
    let u = disc((a * c).sqrt());
    let v = disc((b * d).sqrt());
    ASDensityMatrix {
        p1,
        a,
        b,
        c,
        d,
        p6,
        u,
        v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> ASDensityMatrix {
        ASDensityMatrix::from_record([0.125, 0.25, 0.125, 0.25, 0.125, 0.125, 0.25, 0.0, 0.0, 0.0])
    }

    #[test]
    fn maximally_mixed_is_valid() {
        let r = ASDensityMatrix::maximally_mixed().validate(1e-12);
        assert!(r.valid);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn coherence_bound_violation() {
        let mut m = ASDensityMatrix::maximally_mixed();
        m.a = 0.25;
        m.c = 0.25;
        m.b = 1.0 / 12.0;
        m.d = 1.0 / 12.0;
        m.u = Complex64::new(0.3, 0.0);
        let r = m.validate(1e-12);
        assert!(!r.valid);
        assert!(r.violations.iter().any(|(n, _)| n == "ac≥|u|²"));
    }

    #[test]
    fn trace_violation() {
        let mut m = ASDensityMatrix::maximally_mixed();
        m.p1 -= 0.001;
        let r = m.validate(1e-12);
        assert!(!r.valid);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].0, "trace");
        assert!((r.violations[0].1 - 0.001).abs() < 1e-12);
    }

    #[test]
    fn negative_weight_and_nan_are_rejected() {
        let mut m = ASDensityMatrix::maximally_mixed();
        m.a = -0.1;
        m.c += 0.1;
        assert!(!m.validate(1e-12).valid);
        m = ASDensityMatrix::maximally_mixed();
        m.b = f64::NAN;
        assert!(!m.validate(1e-12).valid);
        assert!(matches!(m.spectrum(), Err(Error::InvalidState(_))));
    }

    #[test]
    fn example_spectrum() {
        let s = example().spectrum().unwrap();
        assert_eq!(s.p2, 0.5);
        assert_eq!(s.p3, 0.0);
        assert_eq!(s.p4, 0.125);
        assert_eq!(s.p5, 0.125);
        assert_eq!(s.q1, 0.25);
        assert_eq!(s.q2, 0.0);
        assert!(!s.deg_block1);
        assert!(s.deg_block2);
    }

    #[test]
    fn maximally_mixed_spectrum() {
        let s = ASDensityMatrix::maximally_mixed().spectrum().unwrap();
        for p in s.eigenvalues() {
            assert!((p - 1.0 / 6.0).abs() < 1e-15);
        }
        assert_eq!(s.q1, 0.0);
        assert_eq!(s.q2, 0.0);
        assert!(s.deg_block1 && s.deg_block2);
    }

    #[test]
    fn q_identities_hold() {
        for seed in 0..200 {
            let m = random_state(seed);
            let s = m.spectrum().unwrap();
            assert!(s.p2 >= s.p3 && s.p4 >= s.p5);
            assert!((s.sum() - 1.0).abs() < 1e-12);
            let lhs1 = s.q1 * s.q1;
            let rhs1 = (m.a - m.c) * s.q1 + m.u.norm_sqr();
            assert!((lhs1 - rhs1).abs() < 1e-12, "seed {seed}");
            let lhs2 = s.q2 * s.q2;
            let rhs2 = (m.b - m.d) * s.q2 + m.v.norm_sqr();
            assert!((lhs2 - rhs2).abs() < 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn q_is_stable_when_lower_diagonal_dominates() {
        // a < c with a tiny coherence: the naive formula cancels to zero
        let mut m = ASDensityMatrix::maximally_mixed();
        m.a = 0.1;
        m.c = 0.1 + 2.0 / 6.0 - 0.2;
        m.u = Complex64::new(1e-9, 0.0);
        let s = m.spectrum().unwrap();
        let expected = 1e-18 / (m.c - m.a);
        assert!((s.q1 - expected).abs() < 1e-6 * expected);
    }

    #[test]
    fn random_state_is_deterministic() {
        assert_eq!(random_state(0), random_state(0));
        assert_ne!(random_state(0), random_state(1));
    }

    #[test]
    fn random_states_are_valid() {
        for seed in 0..1000 {
            let r = random_state(seed).validate(1e-12);
            assert!(r.valid, "seed {seed}: {r}");
        }
    }

    #[test]
    fn record_round_trip() {
        let m = random_state(3);
        assert_eq!(ASDensityMatrix::from_record(m.to_record()), m);
    }

    #[test]
    fn dense_layout() {
        let mut m = ASDensityMatrix::maximally_mixed();
        let dense = m.to_dense();
        let id = Matrix6::<Complex64>::identity() / Complex64::new(6.0, 0.0);
        assert!((dense.as_matrix() - id).norm() < 1e-16);

        m.u = Complex64::new(0.0, 0.125);
        let dense = m.to_dense();
        assert_eq!(dense.as_matrix()[(1, 3)], Complex64::new(0.0, 0.125));
        assert_eq!(dense.as_matrix()[(3, 1)], Complex64::new(0.0, -0.125));
    }

    #[test]
    fn dense_commutes_with_total_sz() {
        let sz = total_sz();
        for seed in 0..50 {
            let rho = *random_state(seed).to_dense().as_matrix();
            let comm = rho * sz - sz * rho;
            assert!(comm.norm() <= 1e-15);
        }
    }
}
