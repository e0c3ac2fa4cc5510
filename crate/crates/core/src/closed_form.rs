//! Compact two-branch formulas for LQU and LQFI of axially symmetric states.
//!
//! Both measures reduce to `1 - max(xx, zz)` of a diagonal 3×3 matrix whose
//! xx and yy entries coincide. The zz entry gives branch 0 and the doubly
//! degenerate xx entry gives branch 1; the measure is the smaller branch.
//!
//! Everything here is expressed through the matrix entries and the analytic
//! spectrum of [`ASDensityMatrix`]; no dense linear algebra is involved.

use std::fmt;

use crate::state::{ASDensityMatrix, ASSpectrum};
use crate::{Error, Result, EPS_DEG};

/// Eigenvalue splitting below which the `1/((p2-p3)(p4-p5))` form of the
/// Fisher branch is replaced by the spectral sum.
pub const EPS_SING: f64 = 1e-8;

/// Branch values closer than this are labelled [`Branch::Tie`].
pub const TIE_TOL: f64 = 1e-12;

const SPECTRUM_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Branch0,
    Branch1,
    Tie,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Branch0 => "branch0",
            Branch::Branch1 => "branch1",
            Branch::Tie => "tie",
        }
    }

    /// Label of the smaller of two branch values.
    pub fn of_min(b0: f64, b1: f64) -> Self {
        if (b0 - b1).abs() < TIE_TOL {
            Branch::Tie
        } else if b0 < b1 {
            Branch::Branch0
        } else {
            Branch::Branch1
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "branch0" => Ok(Branch::Branch0),
            "branch1" => Ok(Branch::Branch1),
            "tie" => Ok(Branch::Tie),
            other => Err(Error::Parse(format!("unknown branch label `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationBranches {
    pub u0: f64,
    pub u1: f64,
    pub f0: f64,
    pub f1: f64,
    /// LQU, `min(u0, u1)`.
    pub u: f64,
    /// LQFI, `min(f0, f1)`.
    pub f: f64,
    pub active_u: Branch,
    pub active_f: Branch,
}

impl CorrelationBranches {
    pub fn from_branches(u0: f64, u1: f64, f0: f64, f1: f64) -> Self {
        Self {
            u0,
            u1,
            f0,
            f1,
            u: u0.min(u1),
            f: f0.min(f1),
            active_u: Branch::of_min(u0, u1),
            active_f: Branch::of_min(f0, f1),
        }
    }
}

/// Diagonal of the skew-information matrix W and the Fisher matrix M
/// (`W_yy = W_xx`, `M_yy = M_xx`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WMDiagonal {
    pub wxx: f64,
    pub wzz: f64,
    pub mxx: f64,
    pub mzz: f64,
    /// At least one coherence block used the degenerate-basis convention.
    pub degenerate: bool,
}

fn check_sum(s: &ASSpectrum) -> Result<()> {
    let sum = s.sum();
    if !((sum - 1.0).abs() <= SPECTRUM_SUM_TOL) {
        return Err(Error::InvalidSpectrum { sum });
    }
    Ok(())
}

/// `num / den`, or zero when the denominator has collapsed. Every call site
/// has a numerator that vanishes at least as fast as the denominator.
fn guarded(num: f64, den: f64) -> f64 {
    if den < EPS_DEG {
        0.0
    } else {
        num / den
    }
}

/// Harmonic-type pair weight `x y / (x + y)`, zero for an empty pair.
fn pair(x: f64, y: f64) -> f64 {
    let s = x + y;
    if s > 0.0 {
        x * y / s
    } else {
        0.0
    }
}

fn root(p: f64) -> f64 {
    p.max(0.0).sqrt()
}

/// LQU branches `(U0, U1)`.
pub fn lqu_branches(m: &ASDensityMatrix, s: &ASSpectrum) -> Result<(f64, f64)> {
    check_sum(s)?;
    let (r1, r2, r3, r4, r5, r6) = (
        root(s.p1),
        root(s.p2),
        root(s.p3),
        root(s.p4),
        root(s.p5),
        root(s.p6),
    );
    let sum23 = r2 + r3;
    let sum45 = r4 + r5;
    // (√p2-√p3)² - (a-c)²/(√p2+√p3)² collapses to 4|u|²/(√p2+√p3)² because
    // (p2-p3)² = (a-c)² + 4|u|²; same for the second block
    let u0 = 4.0 * (guarded(m.u.norm_sqr(), sum23 * sum23) + guarded(m.v.norm_sqr(), sum45 * sum45));
    let g23 = r2 * r3;
    let g45 = r4 * r5;
    let u1 = 1.0
        - 2.0
            * (guarded(m.c + g23, sum23) * r1
                + guarded(m.b + g45, sum45) * r6
                + guarded((m.a + g23) * (m.d + g45), sum23 * sum45));
    Ok((u0, u1))
}

/// LQFI branches `(F0, F1)`.
pub fn lqfi_branches(m: &ASDensityMatrix, s: &ASSpectrum) -> Result<(f64, f64)> {
    check_sum(s)?;
    let f0 = 4.0 * (guarded(m.u.norm_sqr(), m.a + m.c) + guarded(m.v.norm_sqr(), m.b + m.d));
    let gap23 = s.p2 - s.p3;
    let gap45 = s.p4 - s.p5;
    let f1 = if gap23.abs() > EPS_SING && gap45.abs() > EPS_SING {
        fisher_branch1_compact(m, s)
    } else {
        let w1 = BlockWeights::from_split(m.a - m.c, s.split1);
        let w2 = BlockWeights::from_split(m.b - m.d, s.split2);
        1.0 - fisher_xx(s, w1, w2)
    };
    Ok((f0, f1))
}

/// Branch F1 in its fully reduced form; singular when either block splitting
/// vanishes.
fn fisher_branch1_compact(m: &ASDensityMatrix, s: &ASSpectrum) -> f64 {
    let ASSpectrum {
        p1,
        p2,
        p3,
        p4,
        p5,
        p6,
        ..
    } = *s;
    let frac = |num: f64, den: f64| if den > 0.0 { num / den } else { 0.0 };
    let edge1 = if p1 > 0.0 {
        p1 * (p2 * p3 + p1 * m.c) / ((p1 + p2) * (p1 + p3))
    } else {
        0.0
    };
    let edge6 = if p6 > 0.0 {
        p6 * (p4 * p5 + p6 * m.b) / ((p4 + p6) * (p5 + p6))
    } else {
        0.0
    };
    let plus1 = p2 - p3 + m.a - m.c;
    let minus1 = p2 - p3 - m.a + m.c;
    let inner = |pk: f64| frac(p2 * plus1, p2 + pk) + frac(p3 * minus1, p3 + pk);
    let braces = p4 * (p4 - p5 - m.b + m.d) * inner(p4) + p5 * (p4 - p5 + m.b - m.d) * inner(p5);
    1.0 - 4.0 * (edge1 + edge6) - braces / ((p2 - p3) * (p4 - p5))
}

/// Squared overlaps of a 2×2 block eigenvector with the block's standard
/// basis: `cos = q²/(q²+|w|²)`, `sin = |w|²/(q²+|w|²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct BlockWeights {
    cos: f64,
    sin: f64,
}

impl BlockWeights {
    /// From the block diagonal difference and the exact eigenvalue splitting.
    /// A block with zero splitting is a multiple of the identity; the standard
    /// basis is used.
    fn from_split(diff: f64, split: f64) -> Self {
        if split > 0.0 {
            let cos = (0.5 * (1.0 + diff / split)).clamp(0.0, 1.0);
            Self {
                cos,
                sin: 1.0 - cos,
            }
        } else {
            Self { cos: 1.0, sin: 0.0 }
        }
    }

    /// Literal q-parameterisation, falling back to [`Self::from_split`] in
    /// degenerate blocks.
    fn from_q(q: f64, w2: f64, diff: f64, split: f64, degenerate: bool) -> Self {
        if degenerate {
            return Self::from_split(diff, split);
        }
        let n2 = q * q + w2;
        Self {
            cos: q * q / n2,
            sin: w2 / n2,
        }
    }
}

fn fisher_xx(s: &ASSpectrum, w1: BlockWeights, w2: BlockWeights) -> f64 {
    4.0 * (pair(s.p1, s.p3) * w1.cos + pair(s.p1, s.p2) * w1.sin)
        + 4.0 * (pair(s.p4, s.p6) * w2.cos + pair(s.p5, s.p6) * w2.sin)
        + 4.0
            * (pair(s.p2, s.p4) * w1.cos * w2.sin
                + pair(s.p2, s.p5) * w1.cos * w2.cos
                + pair(s.p3, s.p4) * w1.sin * w2.sin
                + pair(s.p3, s.p5) * w1.sin * w2.cos)
}

fn fisher_zz(s: &ASSpectrum, w1: BlockWeights, w2: BlockWeights) -> f64 {
    s.p1 + s.p6
        + (s.p2 + s.p3) * (w1.cos - w1.sin).powi(2)
        + 16.0 * pair(s.p2, s.p3) * w1.cos * w1.sin
        + (s.p4 + s.p5) * (w2.cos - w2.sin).powi(2)
        + 16.0 * pair(s.p4, s.p5) * w2.cos * w2.sin
}

fn skew_xx(s: &ASSpectrum, w1: BlockWeights, w2: BlockWeights) -> f64 {
    let (r1, r2, r3, r4, r5, r6) = (
        root(s.p1),
        root(s.p2),
        root(s.p3),
        root(s.p4),
        root(s.p5),
        root(s.p6),
    );
    2.0 * (r1 * (w1.cos * r3 + w1.sin * r2)
        + w1.cos * r2 * (w2.cos * r5 + w2.sin * r4)
        + r4 * (w2.cos * r6 + w1.sin * w2.sin * r3)
        + r5 * (w2.cos * w1.sin * r3 + w2.sin * r6))
}

fn skew_zz(s: &ASSpectrum, w1: BlockWeights, w2: BlockWeights) -> f64 {
    s.p1 + s.p6
        + 8.0 * w1.cos * w1.sin * root(s.p2 * s.p3)
        + (s.p2 + s.p3) * (w1.cos - w1.sin).powi(2)
        + 8.0 * w2.cos * w2.sin * root(s.p4 * s.p5)
        + (s.p4 + s.p5) * (w2.cos - w2.sin).powi(2)
}

/// Diagonal W and M entries from the unreduced eigenbasis sums, used to
/// cross-check the compact branch formulas.
pub fn wm_diagonal_raw(m: &ASDensityMatrix, s: &ASSpectrum) -> WMDiagonal {
    let w1 = BlockWeights::from_q(s.q1, m.u.norm_sqr(), m.a - m.c, s.split1, s.deg_block1);
    let w2 = BlockWeights::from_q(s.q2, m.v.norm_sqr(), m.b - m.d, s.split2, s.deg_block2);
    WMDiagonal {
        wxx: skew_xx(s, w1, w2),
        wzz: skew_zz(s, w1, w2),
        mxx: fisher_xx(s, w1, w2),
        mzz: fisher_zz(s, w1, w2),
        degenerate: s.deg_block1 || s.deg_block2,
    }
}

/// All four branches, both minima and the active-branch labels.
pub fn correlations(m: &ASDensityMatrix) -> Result<CorrelationBranches> {
    let s = m.spectrum()?;
    correlations_with_spectrum(m, &s)
}

pub fn correlations_with_spectrum(
    m: &ASDensityMatrix,
    s: &ASSpectrum,
) -> Result<CorrelationBranches> {
    let (u0, u1) = lqu_branches(m, s)?;
    let (f0, f1) = lqfi_branches(m, s)?;
    Ok(CorrelationBranches::from_branches(u0, u1, f0, f1))
}
