//! Named parameter sets used in the thermal studies, with the sweep each one
//! is usually run along.

use crate::sweep::{Axis, SweepSpec, DEFAULT_POINTS};
use crate::thermal::HamiltonianParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub params: HamiltonianParams,
    /// Temperature used when the axis is a coupling.
    pub t: f64,
    pub axis: Axis,
    pub lo: f64,
    pub hi: f64,
}

impl Preset {
    pub fn spec(&self, n: usize) -> SweepSpec {
        SweepSpec {
            base: self.params,
            t: self.t,
            axis: self.axis,
            lo: self.lo,
            hi: self.hi,
            n,
        }
    }

    pub fn default_spec(&self) -> SweepSpec {
        self.spec(DEFAULT_POINTS)
    }
}

/// Anisotropic couplings shared by the non-isotropic presets.
fn anisotropic(b1: f64, b2: f64, j: f64, jz: f64) -> HamiltonianParams {
    HamiltonianParams {
        b1,
        b2,
        j,
        jz,
        k: 0.2,
        k1: -0.1,
        k2: 0.22,
        dz: 0.32,
        gamma: -0.87,
        lambda: 0.31,
    }
}

pub fn ising_t() -> Preset {
    Preset {
        name: "ising-t",
        params: anisotropic(0.3, -0.7, 0.0, 1.0),
        t: 1.0,
        axis: Axis::T,
        lo: 0.01,
        hi: 3.0,
    }
}

pub fn xxz_t() -> Preset {
    Preset {
        name: "xxz-t",
        params: anisotropic(0.3, -0.7, -1.4, 1.0),
        t: 1.0,
        axis: Axis::T,
        lo: 0.01,
        hi: 2.0,
    }
}

pub fn xxz_field_t() -> Preset {
    Preset {
        name: "xxz-field-t",
        params: anisotropic(0.7, 0.3, -0.7, 1.0),
        t: 1.0,
        axis: Axis::T,
        lo: 0.01,
        hi: 2.0,
    }
}

pub fn b1_scan() -> Preset {
    Preset {
        name: "b1-scan",
        params: anisotropic(0.0, 0.0, -2.5, -1.0),
        t: 1.0,
        axis: Axis::Param("B1"),
        lo: -4.0,
        hi: 4.0,
    }
}

pub fn b2_scan() -> Preset {
    Preset {
        name: "b2-scan",
        params: anisotropic(0.0, 0.0, -2.5, -1.0),
        t: 1.0,
        axis: Axis::Param("B2"),
        lo: -4.0,
        hi: 4.0,
    }
}

pub fn k_scan() -> Preset {
    Preset {
        name: "k-scan",
        params: anisotropic(0.3, -0.7, -1.4, 1.0),
        t: 1.0,
        axis: Axis::Param("K"),
        lo: 0.0,
        hi: 2.0,
    }
}

pub fn k1_scan() -> Preset {
    Preset {
        name: "k1-scan",
        params: anisotropic(0.3, -0.7, -1.4, 1.0),
        t: 1.0,
        axis: Axis::Param("K1"),
        lo: 0.0,
        hi: 2.0,
    }
}

pub fn k2_scan() -> Preset {
    Preset {
        name: "k2-scan",
        params: anisotropic(0.3, -0.7, -1.4, 1.0),
        t: 1.0,
        axis: Axis::Param("K2"),
        lo: 0.0,
        hi: 2.0,
    }
}

/// Isotropic Heisenberg model with unit coupling, swept in temperature.
pub fn xxx() -> Preset {
    Preset {
        name: "xxx",
        params: HamiltonianParams::xxx(1.0),
        t: 1.0,
        axis: Axis::T,
        lo: 0.01,
        hi: 3.0,
    }
}

pub fn all() -> [Preset; 9] {
    [ising_t(), xxz_t(), xxz_field_t(), b1_scan(), b2_scan(), k_scan(), k1_scan(), k2_scan(), xxx()]
}

pub fn by_name(name: &str) -> Option<Preset> {
    all().into_iter().find(|p| p.name == name)
}
