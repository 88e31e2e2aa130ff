//! Combined Hulthén + Yukawa-class potential, its exponential-form
//! approximation, centrifugal factors and the effective potentials of the
//! reduced radial equations.
//!
//! Every quantity is in natural units with lengths in fm and energies in
//! fm⁻¹. The radial equation for the major component `u` reads
//! `u'' = [U_eff(r; E) - ε(E)] u`.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive_radius, Result, SolverError};
use crate::spectra::QuantumNumbers;

/// Coulomb radius of the tensor term. Kept as metadata only: the tensor
/// coupling is applied at every radius.
pub const TENSOR_COULOMB_RADIUS_FM: f64 = 7.78;

/// Physical inputs of the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    /// Hulthén strength as it enters the approximated potential (fm⁻¹).
    pub v0: f64,
    /// Yukawa strength (fm⁻¹).
    pub a: f64,
    /// Inverse-quadratic Yukawa strength.
    pub b: f64,
    /// Screening parameter (fm⁻¹).
    pub delta: f64,
    /// Tensor coupling strength (dimensionless).
    pub h: f64,
    /// Rest mass (fm⁻¹).
    pub mass: f64,
}

impl PotentialParams {
    pub fn new(v0: f64, a: f64, b: f64, delta: f64, h: f64, mass: f64) -> Result<Self> {
        let p = Self {
            v0,
            a,
            b,
            delta,
            h,
            mass,
        };
        p.validate()?;
        Ok(p)
    }

    /// `V₀ = 2`, `A = B = 1`, `δ = 0.05`, `M = 4.76` fm⁻¹ with tensor strength `h`.
    pub fn benchmark(h: f64) -> Self {
        Self {
            v0: 2.0,
            a: 1.0,
            b: 1.0,
            delta: 0.05,
            h,
            mass: 4.76,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("V0", self.v0), ("A", self.a), ("B", self.b), ("H", self.h)] {
            if !value.is_finite() {
                return Err(SolverError::invalid(name, format!("must be finite, got {value}")));
            }
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(SolverError::invalid(
                "delta",
                format!("screening parameter must be > 0, got {}", self.delta),
            ));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(SolverError::invalid(
                "M",
                format!("mass must be > 0, got {}", self.mass),
            ));
        }
        Ok(())
    }

    /// `V₀′ = 2Aδ`.
    pub fn v0_prime(&self) -> f64 {
        2.0 * self.a * self.delta
    }

    /// `B′ = 4Bδ²`.
    pub fn b_prime(&self) -> f64 {
        4.0 * self.b * self.delta * self.delta
    }

    /// Total Hulthén-like strength `V₀ + V₀′` of the approximated potential.
    pub fn hulthen_total(&self) -> f64 {
        self.v0 + self.v0_prime()
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_h(mut self, h: f64) -> Self {
        self.h = h;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Spin,
    Pseudospin,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Spin => "spin",
            Symmetry::Pseudospin => "pseudospin",
        }
    }
}

impl std::fmt::Display for Symmetry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Symmetry {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "spin" => Ok(Symmetry::Spin),
            "pseudospin" | "pseudo" => Ok(Symmetry::Pseudospin),
            other => Err(SolverError::invalid(
                "symmetry",
                format!("expected spin|pseudospin, got `{other}`"),
            )),
        }
    }
}

/// A symmetry limit together with its constant: `Δ = C_S` (spin) or `Σ = C_PS` (pseudospin).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryLimit {
    pub kind: Symmetry,
    pub constant: f64,
}

impl SymmetryLimit {
    pub fn spin(c_s: f64) -> Self {
        Self {
            kind: Symmetry::Spin,
            constant: c_s,
        }
    }

    pub fn pseudospin(c_ps: f64) -> Self {
        Self {
            kind: Symmetry::Pseudospin,
            constant: c_ps,
        }
    }

    /// `C_S = 5` or `C_PS = -5` fm⁻¹.
    pub fn benchmark(kind: Symmetry) -> Self {
        match kind {
            Symmetry::Spin => Self::spin(5.0),
            Symmetry::Pseudospin => Self::pseudospin(-5.0),
        }
    }

    /// Energy term ε(E) of the reduced equation `u'' = [U_eff - ε] u`.
    pub fn epsilon(&self, energy: f64, mass: f64) -> f64 {
        let c = self.constant;
        match self.kind {
            Symmetry::Spin => energy * energy - mass * mass + c * (mass - energy),
            Symmetry::Pseudospin => energy * energy - mass * mass - c * (mass + energy),
        }
    }

    /// Coupling multiplying the potential: `M + E - C_S` (spin) or `M - E + C_PS` (pseudospin).
    pub fn coupling(&self, energy: f64, mass: f64) -> f64 {
        match self.kind {
            Symmetry::Spin => mass + energy - self.constant,
            Symmetry::Pseudospin => mass - energy + self.constant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CentrifugalMode {
    /// Exponential centrifugal form with the approximated potential.
    Approximated,
    /// Bare `1/r²` with the unapproximated potential.
    Exact,
}

/// Unapproximated combined potential (Hulthén range already doubled).
pub fn exact_potential(r: f64, p: &PotentialParams) -> Result<f64> {
    require_positive_radius(r)?;
    Ok(exact_potential_unchecked(r, p))
}

pub(crate) fn exact_potential_unchecked(r: f64, p: &PotentialParams) -> f64 {
    let s = (-2.0 * p.delta * r).exp();
    -p.v0 * s / (-(-2.0 * p.delta * r).exp_m1())
        - p.a * (-p.delta * r).exp() / r
        - p.b * s / (r * r)
}

/// Approximated potential in terms of `s = e^{-2δr}`.
pub fn approx_potential_s(s: f64, p: &PotentialParams) -> f64 {
    let one_minus = 1.0 - s;
    -p.hulthen_total() * s / one_minus - p.b_prime() * s * s / (one_minus * one_minus)
}

pub fn approx_potential(r: f64, p: &PotentialParams) -> Result<f64> {
    require_positive_radius(r)?;
    Ok(approx_potential_unchecked(r, p))
}

pub(crate) fn approx_potential_unchecked(r: f64, p: &PotentialParams) -> f64 {
    let x = 2.0 * p.delta * r;
    let s = (-x).exp();
    // 1 - s without cancellation at small r
    let one_minus = -(-x).exp_m1();
    -p.hulthen_total() * s / one_minus - p.b_prime() * s * s / (one_minus * one_minus)
}

pub fn centrifugal_approx(r: f64, delta: f64) -> Result<f64> {
    require_positive_radius(r)?;
    Ok(centrifugal_approx_unchecked(r, delta))
}

pub(crate) fn centrifugal_approx_unchecked(r: f64, delta: f64) -> f64 {
    let x = 2.0 * delta * r;
    let s = (-x).exp();
    let one_minus = -(-x).exp_m1();
    4.0 * delta * delta * s / (one_minus * one_minus)
}

/// `4δ² s / (1 - s)²` for a given `s`.
pub fn centrifugal_approx_s(s: f64, delta: f64) -> f64 {
    4.0 * delta * delta * s / ((1.0 - s) * (1.0 - s))
}

pub fn centrifugal_exact(r: f64) -> Result<f64> {
    require_positive_radius(r)?;
    Ok(1.0 / (r * r))
}

/// Spin-orbit factor multiplying the centrifugal term:
/// `κ(κ+1) + 2κH + H + H²` (spin) or `κ(κ-1) + 2κH - H + H²` (pseudospin).
pub fn centrifugal_factor(kind: Symmetry, kappa: i32, h: f64) -> f64 {
    let k = kappa as f64;
    match kind {
        Symmetry::Spin => k * (k + 1.0) + 2.0 * k * h + h + h * h,
        Symmetry::Pseudospin => k * (k - 1.0) + 2.0 * k * h - h + h * h,
    }
}

/// Effective potential of the reduced equation with the approximated
/// centrifugal term and potential.
pub fn effective_potential(
    r: f64,
    energy: f64,
    p: &PotentialParams,
    sym: &SymmetryLimit,
    qn: &QuantumNumbers,
) -> Result<f64> {
    effective_potential_with(r, energy, p, sym, qn, CentrifugalMode::Approximated)
}

pub fn effective_potential_with(
    r: f64,
    energy: f64,
    p: &PotentialParams,
    sym: &SymmetryLimit,
    qn: &QuantumNumbers,
    mode: CentrifugalMode,
) -> Result<f64> {
    require_positive_radius(r)?;
    Ok(EffectivePotential::new(energy, p, sym, qn, mode).at(r))
}

/// `U_eff(r; E)` frozen at one energy, cheap to evaluate on a grid.
#[derive(Debug, Clone, Copy)]
pub struct EffectivePotential {
    params: PotentialParams,
    lambda: f64,
    coupling: f64,
    kind: Symmetry,
    mode: CentrifugalMode,
}

impl EffectivePotential {
    pub fn new(
        energy: f64,
        p: &PotentialParams,
        sym: &SymmetryLimit,
        qn: &QuantumNumbers,
        mode: CentrifugalMode,
    ) -> Self {
        Self {
            params: *p,
            lambda: centrifugal_factor(sym.kind, qn.kappa, p.h),
            coupling: sym.coupling(energy, p.mass),
            kind: sym.kind,
            mode,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Valid for `r > 0`; no check is made.
    pub fn at(&self, r: f64) -> f64 {
        let (cent, pot) = match self.mode {
            CentrifugalMode::Approximated => (
                centrifugal_approx_unchecked(r, self.params.delta),
                approx_potential_unchecked(r, &self.params),
            ),
            CentrifugalMode::Exact => (1.0 / (r * r), exact_potential_unchecked(r, &self.params)),
        };
        match self.kind {
            Symmetry::Spin => cent * self.lambda + self.coupling * pot,
            Symmetry::Pseudospin => cent * self.lambda - self.coupling * pot,
        }
    }
}
