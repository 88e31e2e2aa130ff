//! Closed forms of the particular cases: s-wave, Hulthén, Yukawa, Coulomb-like,
//! inversely quadratic Yukawa, Kratzer-Fues and the nonrelativistic limit.
//!
//! Residuals are written as `LHS - RHS` with `LHS = M² - E² - C_S(M - E)` for
//! spin and `M² - E² + C_PS(M + E)` for pseudospin. The polynomial degree
//! follows [`QuantumNumbers::degree`], so pseudospin states with κ > 0 use
//! `n + 1` wherever the printed forms show `n`.
//!
//! The Hulthén, Yukawa and Coulomb forms assume `√(1/4 + η(η±1)) = η ± 1/2`,
//! i.e. `η ≥ -1/2` for spin and `η ≥ 1/2` for pseudospin.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};
use crate::potentials::{PotentialParams, Symmetry, SymmetryLimit};
use crate::spectra::{aux, QuantumNumbers};

fn lhs(energy: f64, mass: f64, sym: &SymmetryLimit) -> f64 {
    -sym.epsilon(energy, mass)
}

/// The bracketed NU fraction with an explicit centrifugal term.
fn nu_fraction(alpha2: f64, gamma2: f64, lambda: f64, degree: u32) -> Result<f64> {
    let disc = 0.25 + gamma2 + lambda;
    if disc < 0.0 {
        return Err(SolverError::domain(format!("square-root argument {disc} is negative")));
    }
    let root = disc.sqrt();
    let d = degree as f64;
    Ok((alpha2 - 0.5 - lambda - d * (d + 1.0) - (2.0 * d + 1.0) * root) / (d + 0.5 + root))
}

/// s-wave residual: κ = -1 for spin (centrifugal term `H(H-1)`), κ = 1 for
/// pseudospin (`H(H+1)`).
pub fn swave_residual(energy: f64, p: &PotentialParams, sym: &SymmetryLimit, n: u32) -> Result<f64> {
    let (qn, lambda) = match sym.kind {
        Symmetry::Spin => (QuantumNumbers::new(n, -1)?, p.h * (p.h - 1.0)),
        Symmetry::Pseudospin => (QuantumNumbers::new(n, 1)?, p.h * (p.h + 1.0)),
    };
    let a = aux(energy, p, sym, &qn);
    let q = nu_fraction(a.alpha2, a.gamma2, lambda, qn.degree(sym.kind))?;
    Ok(lhs(energy, p.mass, sym) - p.delta * p.delta * q * q)
}

/// Shared shape of the Hulthén and Yukawa reductions with Coulomb strength `z`.
fn screened_coulomb_residual(
    energy: f64,
    z: f64,
    p: &PotentialParams,
    sym: &SymmetryLimit,
    qn: &QuantumNumbers,
) -> Result<f64> {
    let m = p.mass;
    let c = sym.constant;
    let dl = p.delta;
    let eta = qn.eta(p.h);
    let d = qn.degree(sym.kind) as f64;
    let rhs = match sym.kind {
        Symmetry::Spin => {
            let big_n = d + eta + 1.0;
            if big_n == 0.0 {
                return Err(SolverError::DivisionByZero("n + kappa + H + 1 vanishes".into()));
            }
            let t = z * (m + energy - c) / (4.0 * dl * big_n) - big_n / 2.0;
            4.0 * dl * dl * t * t
        }
        Symmetry::Pseudospin => {
            let big_n = d + eta;
            if big_n == 0.0 {
                return Err(SolverError::DivisionByZero("n + kappa + H vanishes".into()));
            }
            let t = -z * (m - energy + c) / (2.0 * dl * big_n) - big_n;
            dl * dl * t * t
        }
    };
    Ok(lhs(energy, m, sym) - rhs)
}

/// Hulthén case (`A = B = 0`) with `Ze² = V0/(2δ)`.
pub fn hulthen_residual(energy: f64, p: &PotentialParams, sym: &SymmetryLimit, qn: &QuantumNumbers) -> Result<f64> {
    screened_coulomb_residual(energy, p.v0 / (2.0 * p.delta), p, sym, qn)
}

/// Yukawa case (`V0 = B = 0`): the Hulthén form with `A` in place of `Ze²`.
pub fn yukawa_residual(energy: f64, p: &PotentialParams, sym: &SymmetryLimit, qn: &QuantumNumbers) -> Result<f64> {
    screened_coulomb_residual(energy, p.a, p, sym, qn)
}

/// Coulomb-like energy `V = -A/r` in closed form.
pub fn coulomb_energy(kind: Symmetry, qn: &QuantumNumbers, a: f64, c: f64, m: f64, h: f64) -> f64 {
    let eta = qn.eta(h);
    let d = qn.degree(kind) as f64;
    let a2 = a * a;
    match kind {
        Symmetry::Spin => {
            let n2 = (d + eta + 1.0).powi(2);
            (a2 * (c - m) + 4.0 * m * n2) / (a2 + 4.0 * n2)
        }
        Symmetry::Pseudospin => {
            let n2 = (d + eta).powi(2);
            (a2 * (c + m) - 4.0 * m * n2) / (a2 + 4.0 * n2)
        }
    }
}

/// Inversely quadratic Yukawa case (`V0 = A = 0`).
pub fn iq_yukawa_residual(energy: f64, p: &PotentialParams, sym: &SymmetryLimit, qn: &QuantumNumbers) -> Result<f64> {
    let a = aux(energy, p, sym, qn);
    let q = nu_fraction(0.0, a.gamma2, a.lambda, qn.degree(sym.kind))?;
    Ok(lhs(energy, p.mass, sym) - p.delta * p.delta * q * q)
}

/// Kratzer-Fues case `V = -A/r - B/r²`.
#[allow(clippy::too_many_arguments)]
pub fn kratzer_fues_residual(
    energy: f64,
    kind: Symmetry,
    qn: &QuantumNumbers,
    a: f64,
    b: f64,
    c: f64,
    m: f64,
    h: f64,
) -> Result<f64> {
    let eta = qn.eta(h);
    let d = qn.degree(kind) as f64;
    let sym = SymmetryLimit { kind, constant: c };
    let (coupling, arg) = match kind {
        Symmetry::Spin => (m - c + energy, b * (c - energy - m) + (eta + 0.5).powi(2)),
        Symmetry::Pseudospin => (c - energy + m, b * (c - energy + m) + (eta - 0.5).powi(2)),
    };
    if arg < 0.0 {
        return Err(SolverError::domain(format!("square-root argument {arg} is negative")));
    }
    let den = 2.0 * d + 1.0 + 2.0 * arg.sqrt();
    Ok(lhs(energy, m, &sym) - a * a * coupling * coupling / (den * den))
}

/// Parameters of the nonrelativistic limit (`C_S = H = 0`, `E + M -> 2m`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonRelParams {
    pub m: f64,
    pub l: u32,
    pub ze2: f64,
    pub a: f64,
    pub b: f64,
    pub delta: f64,
}

impl NonRelParams {
    pub fn new(m: f64, l: u32, ze2: f64, a: f64, b: f64, delta: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(SolverError::invalid("m", format!("mass must be positive, got {m}")));
        }
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(SolverError::invalid("delta", format!("must be non-negative, got {delta}")));
        }
        Ok(Self { m, l, ze2, a, b, delta })
    }

    /// `m = M`, `Ze² = V0/(2δ)`, `l` of the spin state.
    pub fn from_potential(p: &PotentialParams, qn: &QuantumNumbers) -> Result<Self> {
        p.validate()?;
        Self::new(p.mass, qn.l(), p.v0 / (2.0 * p.delta), p.a, p.b, p.delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonRelForm {
    /// Full form with the inverse-square term.
    General,
    /// `B = 0`.
    NoInverseSquare,
    /// `δ -> 0`, `A = 0`.
    Coulomb,
}

pub fn nonrel_energy(nrp: &NonRelParams, n: u32, form: NonRelForm) -> Result<f64> {
    let m = nrp.m;
    let nf = n as f64;
    let l = nrp.l as f64;
    let k = l + nf + 1.0;
    match form {
        NonRelForm::General => {
            let arg = l * l + l + 0.25 - 2.0 * m * nrp.b;
            if arg < 0.0 {
                return Err(SolverError::domain(format!("square-root argument {arg} is negative")));
            }
            let root = arg.sqrt();
            if nrp.delta == 0.0 {
                return Err(SolverError::DivisionByZero("general form needs delta > 0".into()));
            }
            let inner = -m * (nrp.a + nrp.ze2) / nrp.delta + (2.0 * nf + 1.0) * root + l * (l + 1.0) + nf * (nf + 1.0) + 0.5;
            let t = nrp.delta * inner / (root + nf + 0.5);
            Ok(-t * t / (2.0 * m))
        }
        NonRelForm::NoInverseSquare => {
            let t = (nrp.delta * k * k - m * (nrp.a + nrp.ze2)) / k;
            Ok(-t * t / (2.0 * m))
        }
        NonRelForm::Coulomb => Ok(-m * nrp.ze2 * nrp.ze2 / (2.0 * k * k)),
    }
}
