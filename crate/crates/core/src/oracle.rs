//! Brute-force reference values computed on dense 6×6 matrices.
//!
//! Nothing here calls into [`crate::closed_form`]. LQU and LQFI are obtained
//! from their trace definitions: the skew-information matrix
//! `W_{μν} = Tr{ρ^{1/2} (σ_μ⊗I) ρ^{1/2} (σ_ν⊗I)}` and the Fisher matrix
//! `M_{μν} = Σ_{m,n} 2 p_m p_n / (p_m + p_n) ⟨m|σ_μ⊗I|n⟩⟨n|σ_ν⊗I|m⟩`,
//! followed by the largest eigenvalue of a real symmetric 3×3 matrix.

use nalgebra::{Matrix3, Matrix6, SymmetricEigen, Vector6};
use num_complex::Complex64;

use crate::state::{ASDensityMatrix, ASSpectrum};
use crate::{Error, Result};

pub type CMatrix6 = Matrix6<Complex64>;

/// Accepted Hermiticity defect on input.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues below `-NEGATIVE_TOL` mean the input is not a density matrix.
pub const NEGATIVE_TOL: f64 = 1e-10;
/// Eigen-pairs with `p_m + p_n` below this are dropped from the Fisher sum.
pub const PAIR_SKIP: f64 = 1e-14;
/// Eigenvalues this close to zero are below the solver's resolution for a
/// unit-trace matrix and are taken as exact zeros before the square root.
pub const ROOT_FLOOR: f64 = 4.0 * f64::EPSILON;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Dense complex Hermitian 6×6 matrix (a density matrix or a Hamiltonian).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseHermitian6(CMatrix6);

impl DenseHermitian6 {
    /// Checks Hermiticity to [`HERMITIAN_TOL`] and symmetrises exactly.
    pub fn new(m: CMatrix6) -> Result<Self> {
        let deviation = hermitian_defect(&m);
        if !(deviation <= HERMITIAN_TOL) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self((m + m.adjoint()) * re(0.5)))
    }

    pub(crate) fn new_unchecked(m: CMatrix6) -> Self {
        Self(m)
    }

    pub fn as_matrix(&self) -> &CMatrix6 {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix6 {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }
}

pub fn hermitian_defect(m: &CMatrix6) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Real symmetric 3×3 matrix indexed by the Pauli directions x, y, z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym3(pub Matrix3<f64>);

impl Sym3 {
    pub fn max_offdiag(&self) -> f64 {
        let m = &self.0;
        m[(0, 1)].abs().max(m[(0, 2)].abs()).max(m[(1, 2)].abs())
    }

    pub fn asymmetry(&self) -> f64 {
        (self.0 - self.0.transpose()).abs().max()
    }

    /// Largest eigenvalue via the trigonometric solution of the characteristic
    /// cubic, with an iterative fallback near repeated roots.
    pub fn max_eigenvalue(&self) -> f64 {
        let m = &self.0;
        let q = m.trace() / 3.0;
        let p1 = m[(0, 1)].powi(2) + m[(0, 2)].powi(2) + m[(1, 2)].powi(2);
        let p2 = (m[(0, 0)] - q).powi(2) + (m[(1, 1)] - q).powi(2) + (m[(2, 2)] - q).powi(2)
            + 2.0 * p1;
        let p = (p2 / 6.0).sqrt();
        if p == 0.0 {
            return q;
        }
        let b = (m - Matrix3::identity() * q) / p;
        let r = b.determinant() / 2.0;
        // 1 - r^2 is the discriminant of the cubic scaled to order one
        if 1.0 - r * r < 1e-12 {
            return SymmetricEigen::new(*m).eigenvalues.max();
        }
        let phi = r.clamp(-1.0, 1.0).acos() / 3.0;
        q + 2.0 * p * phi.cos()
    }
}

/// Eigenvalues (ascending) and unitary eigenvector matrix of a Hermitian 6×6.
pub fn eig_hermitian(a: &DenseHermitian6) -> Result<(Vector6<f64>, CMatrix6)> {
    let deviation = hermitian_defect(a.as_matrix());
    if !(deviation <= HERMITIAN_TOL) {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = SymmetricEigen::new(*a.as_matrix());
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = Vector6::from_fn(|k, _| eig.eigenvalues[order[k]]);
    let vectors = CMatrix6::from_fn(|i, k| eig.eigenvectors[(i, order[k])]);
    Ok((values, vectors))
}

/// `σ_μ ⊗ I_3` in the product basis, μ = 0, 1, 2 for x, y, z.
pub fn local_pauli(mu: usize) -> CMatrix6 {
    let sigma = match mu {
        0 => [[ZERO, ONE], [ONE, ZERO]],
        1 => [[ZERO, -I], [I, ZERO]],
        2 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("Pauli index out of range: {mu}"),
    };
    CMatrix6::from_fn(|r, c| {
        if r % 3 == c % 3 {
            sigma[r / 3][c / 3]
        } else {
            ZERO
        }
    })
}

/// Clipped spectrum of a density matrix, rejecting genuinely negative or
/// non-normalised input.
fn density_spectrum(rho: &DenseHermitian6) -> Result<(Vector6<f64>, CMatrix6)> {
    let trace_err = (rho.trace() - 1.0).abs();
    if !(trace_err <= NEGATIVE_TOL) {
        return Err(Error::NotDensityMatrix {
            reason: format!("trace differs from 1 by {trace_err:e}"),
        });
    }
    let (mut values, vectors) = eig_hermitian(rho)?;
    if values[0] < -NEGATIVE_TOL {
        return Err(Error::NotDensityMatrix {
            reason: format!("negative eigenvalue {:e}", values[0]),
        });
    }
    values.iter_mut().for_each(|p| *p = p.max(0.0));
    Ok((values, vectors))
}

/// Principal square root by spectral calculus.
pub fn sqrt_density(rho: &DenseHermitian6) -> Result<CMatrix6> {
    let (values, vectors) = density_spectrum(rho)?;
    let diag = CMatrix6::from_diagonal(&values.map(|p| re(if p < ROOT_FLOOR { 0.0 } else { p.sqrt() })));
    Ok(vectors * diag * vectors.adjoint())
}

pub fn w_matrix(rho: &DenseHermitian6) -> Result<Sym3> {
    let root = sqrt_density(rho)?;
    let sigma: Vec<CMatrix6> = (0..3).map(local_pauli).collect();
    let half: Vec<CMatrix6> = sigma.iter().map(|s| root * s).collect();
    let mut w = Matrix3::zeros();
    for mu in 0..3 {
        for nu in 0..3 {
            w[(mu, nu)] = (half[mu] * half[nu]).trace().re;
        }
    }
    Ok(Sym3(w))
}

pub fn m_matrix(rho: &DenseHermitian6) -> Result<Sym3> {
    m_matrix_with_skip(rho, PAIR_SKIP)
}

/// Fisher matrix with an explicit pair-skip threshold on `p_m + p_n`.
pub fn m_matrix_with_skip(rho: &DenseHermitian6, skip: f64) -> Result<Sym3> {
    let (p, vectors) = density_spectrum(rho)?;
    let rotated: Vec<CMatrix6> = (0..3)
        .map(|mu| vectors.adjoint() * local_pauli(mu) * vectors)
        .collect();
    let mut m = Matrix3::zeros();
    for a in 0..6 {
        for b in 0..6 {
            let sum = p[a] + p[b];
            if sum < skip {
                continue;
            }
            let weight = 2.0 * p[a] * p[b] / sum;
            for mu in 0..3 {
                for nu in 0..3 {
                    m[(mu, nu)] += weight * (rotated[mu][(a, b)] * rotated[nu][(b, a)]).re;
                }
            }
        }
    }
    Ok(Sym3(m))
}

pub fn lqu_oracle(rho: &DenseHermitian6) -> Result<f64> {
    Ok(1.0 - w_matrix(rho)?.max_eigenvalue())
}

pub fn lqfi_oracle(rho: &DenseHermitian6) -> Result<f64> {
    Ok(1.0 - m_matrix(rho)?.max_eigenvalue())
}

/// The permutation, the block eigenvector transform and the local Pauli
/// operators expressed in the eigenbasis of an axially symmetric state.
#[derive(Debug, Clone)]
pub struct BasisTransforms {
    pub p34: CMatrix6,
    pub r: CMatrix6,
    /// `R P34 (σ_μ⊗I) P34 R` for μ = x, y, z.
    pub sigma: [CMatrix6; 3],
    /// Set when either block fell back to the degenerate-basis convention.
    pub degenerate: bool,
}

/// Column `(cos, sin*)` of a 2×2 block eigenvector: `cos = q/N`, `sin = u/N`.
#[derive(Debug, Clone, Copy)]
struct BlockVector {
    cos: Complex64,
    sin: Complex64,
}

fn block_vector(q: f64, w: Complex64, diff: f64, split: f64, degenerate: bool) -> BlockVector {
    if !degenerate {
        let n = (q * q + w.norm_sqr()).sqrt();
        return BlockVector {
            cos: re(q / n),
            sin: w / n,
        };
    }
    if split == 0.0 {
        return BlockVector { cos: ONE, sin: ZERO };
    }
    let phase = if w.norm() > 0.0 { w / w.norm() } else { ONE };
    let cos2 = (0.5 * (1.0 + diff / split)).clamp(0.0, 1.0);
    BlockVector {
        cos: re(cos2.sqrt()),
        sin: phase * (1.0 - cos2).sqrt(),
    }
}

pub fn permutation_34() -> CMatrix6 {
    let mut p = CMatrix6::zeros();
    for (i, j) in [(0, 0), (1, 1), (2, 3), (3, 2), (4, 4), (5, 5)] {
        p[(i, j)] = ONE;
    }
    p
}

pub fn basis_transforms(m: &ASDensityMatrix, s: &ASSpectrum) -> BasisTransforms {
    let b1 = block_vector(s.q1, m.u, m.a - m.c, s.split1, s.deg_block1);
    let b2 = block_vector(s.q2, m.v, m.b - m.d, s.split2, s.deg_block2);
    let mut r = CMatrix6::zeros();
    r[(0, 0)] = ONE;
    r[(5, 5)] = ONE;
    for (off, b) in [(1, b1), (3, b2)] {
        r[(off, off)] = b.cos;
        r[(off, off + 1)] = b.sin;
        r[(off + 1, off)] = b.sin.conj();
        r[(off + 1, off + 1)] = -b.cos;
    }
    let p34 = permutation_34();
    let sigma = [0, 1, 2].map(|mu| r * p34 * local_pauli(mu) * p34 * r);
    BasisTransforms {
        p34,
        r,
        sigma,
        degenerate: s.deg_block1 || s.deg_block2,
    }
}

/// Local Pauli operators in the eigenbasis written entry by entry from the
/// block eigenvector parameters, independent of matrix products.
pub fn explicit_eigenbasis_paulis(m: &ASDensityMatrix, s: &ASSpectrum) -> [CMatrix6; 3] {
    let b1 = block_vector(s.q1, m.u, m.a - m.c, s.split1, s.deg_block1);
    let b2 = block_vector(s.q2, m.v, m.b - m.d, s.split2, s.deg_block2);
    let (a1, u1, a2, v2) = (b1.cos, b1.sin, b2.cos, b2.sin);
    let (u1c, v2c) = (u1.conj(), v2.conj());
    let z = ZERO;
    let rows = |r: [[Complex64; 6]; 6]| CMatrix6::from_fn(|i, j| r[i][j]);

    let sx = rows([
        [z, u1c, -a1, z, z, z],
        [u1, z, z, a1 * v2c, -a1 * a2, z],
        [-a1, z, z, u1c * v2c, -a2 * u1c, z],
        [z, a1 * v2, u1 * v2, z, z, a2],
        [z, -a1 * a2, -a2 * u1, z, z, v2c],
        [z, z, z, a2, v2, z],
    ]);
    let sy = rows([
        [z, -I * u1c, I * a1, z, z, z],
        [I * u1, z, z, -I * a1 * v2c, I * a1 * a2, z],
        [-I * a1, z, z, -I * u1c * v2c, I * a2 * u1c, z],
        [z, I * a1 * v2, I * u1 * v2, z, z, -I * a2],
        [z, -I * a1 * a2, -I * a2 * u1, z, z, -I * v2c],
        [z, z, z, I * a2, I * v2, z],
    ]);
    let d1 = a1 * a1 - u1.norm_sqr();
    let d2 = a2 * a2 - v2.norm_sqr();
    let two = re(2.0);
    let sz = rows([
        [ONE, z, z, z, z, z],
        [z, d1, two * a1 * u1, z, z, z],
        [z, two * a1 * u1c, -d1, z, z, z],
        [z, z, z, d2, two * a2 * v2, z],
        [z, z, z, two * a2 * v2c, -d2, z],
        [z, z, z, z, z, -ONE],
    ]);
    [sx, sy, sz]
}

/// Convenience: both oracle measures for an axially symmetric state.
pub fn oracle_pair(m: &ASDensityMatrix) -> Result<(f64, f64)> {
    let rho = m.to_dense();
    Ok((lqu_oracle(&rho)?, lqfi_oracle(&rho)?))
}
