//! Spinor components in closed form.
//!
//! The component that solves the second-order equation (F for spin, G for
//! pseudospin) is `C N s^β (1-s)^ξ ₂F₁(-d, 2β+2ξ+d; 1+2β; s)` with
//! `s = e^{-2δr}` and `N = Γ(d+2β+1)/(d! Γ(2β+1))`. The paired component
//! follows from the first-order equation:
//! spin `G = (F' + ηF/r)/(M+E-C_S)`, pseudospin `F = (G' - ηG/r)/(M-E+C_PS)`.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive_radius, Result, SolverError};
use crate::potentials::Symmetry;
use crate::quadrature::GaussLegendre;
use crate::spectra::{EnergyRoot, QuantumNumbers};
use crate::special::{hyp2f1_terminating, ln_factorial, ln_gamma};

pub const SAMPLE_R_MIN: f64 = 1e-6;
pub const SAMPLE_POINTS: usize = 2000;

/// Everything needed to evaluate both components of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinorContext {
    pub kind: Symmetry,
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub degree: u32,
    pub delta: f64,
    /// Positive square root of β² (tilded for pseudospin).
    pub beta: f64,
    /// `1/2 + √(1/4 + γ² + Λ)`.
    pub xi: f64,
    pub eta: f64,
    /// `M + E - C_S` (spin) or `M - E + C_PS` (pseudospin).
    pub coupling: f64,
    pub norm_const: f64,
    /// `Γ(d+2β+1) / (d! Γ(2β+1))`.
    pub poly_prefactor: f64,
}

impl SpinorContext {
    pub fn from_root(root: &EnergyRoot) -> Result<Self> {
        let a = root.aux();
        if !(a.beta2 > 0.0) {
            return Err(SolverError::domain(format!(
                "beta^2 = {} must be positive for a decaying state",
                a.beta2
            )));
        }
        let disc = a.discriminant();
        if disc < 0.0 {
            return Err(SolverError::domain(format!("discriminant {disc} is negative")));
        }
        let kind = root.symmetry.kind;
        let degree = root.qn.degree(kind);
        let beta = a.beta2.sqrt();
        let xi = 0.5 + disc.sqrt();
        let delta = root.params.delta;
        let norm_const = norm_constant(degree, beta, xi, delta)?;
        let d = degree as f64;
        let poly_prefactor =
            (ln_gamma(d + 2.0 * beta + 1.0)? - ln_factorial(degree) - ln_gamma(2.0 * beta + 1.0)?).exp();
        Ok(Self {
            kind,
            qn: root.qn,
            energy: root.energy,
            degree,
            delta,
            beta,
            xi,
            eta: a.eta,
            coupling: root.symmetry.coupling(root.energy, root.params.mass),
            norm_const,
            poly_prefactor,
        })
    }

    fn s_and_one_minus(&self, r: f64) -> (f64, f64) {
        let x = 2.0 * self.delta * r;
        ((-x).exp(), -(-x).exp_m1())
    }

    /// Component solving the second-order equation.
    pub fn primary(&self, r: f64) -> Result<f64> {
        require_positive_radius(r)?;
        let (s, om) = self.s_and_one_minus(r);
        let d = self.degree as f64;
        let f = hyp2f1_terminating(self.degree, 2.0 * self.beta + 2.0 * self.xi + d, 1.0 + 2.0 * self.beta, s)?;
        let envelope = (-2.0 * self.delta * self.beta * r + self.xi * om.ln()).exp();
        Ok(self.norm_const * self.poly_prefactor * envelope * f)
    }

    /// Analytic `d/dr` of [`Self::primary`].
    pub fn primary_derivative(&self, r: f64) -> Result<f64> {
        let p = self.primary(r)?;
        let (s, om) = self.s_and_one_minus(r);
        let d = self.degree as f64;
        let poly_term = if self.degree == 0 {
            0.0
        } else {
            let b = 2.0 * self.beta;
            let f1 = hyp2f1_terminating(self.degree - 1, b + 2.0 * self.xi + d + 1.0, b + 2.0, s)?;
            let envelope = (-2.0 * self.delta * (self.beta + 1.0) * r + self.xi * om.ln()).exp();
            self.norm_const * self.poly_prefactor * 2.0 * self.delta * d * (b + 2.0 * self.xi + d) / (b + 1.0)
                * envelope
                * f1
        };
        Ok(poly_term + (2.0 * self.delta * self.xi * s / om - 2.0 * self.beta * self.delta) * p)
    }

    /// Component obtained from the first-order equation.
    pub fn paired(&self, r: f64) -> Result<f64> {
        if self.coupling == 0.0 {
            return Err(SolverError::DivisionByZero(format!(
                "{} coupling vanishes at E = {}",
                self.kind, self.energy
            )));
        }
        let p = self.primary(r)?;
        let dp = self.primary_derivative(r)?;
        let tensor = match self.kind {
            Symmetry::Spin => self.eta / r,
            Symmetry::Pseudospin => -self.eta / r,
        };
        Ok((dp + tensor * p) / self.coupling)
    }

    /// `(F, G)` at `r`.
    pub fn components(&self, r: f64) -> Result<(f64, f64)> {
        let p = self.primary(r)?;
        let q = self.paired(r)?;
        Ok(match self.kind {
            Symmetry::Spin => (p, q),
            Symmetry::Pseudospin => (q, p),
        })
    }

    /// Decay rate `2δβ` of the primary component in fm⁻¹.
    pub fn decay_rate(&self) -> f64 {
        2.0 * self.delta * self.beta
    }

    /// `max(30, 20/(2δβ))`.
    pub fn sample_r_max(&self) -> f64 {
        (20.0 / self.decay_rate()).max(30.0)
    }

    /// `∫₀^∞ primary² dr` by composite Gauss-Legendre, independent of the closed form of `C`.
    pub fn quadrature_norm(&self) -> Result<f64> {
        self.integrate_sq(|r| self.primary(r))
    }

    /// `∫₀^∞ (F² + G²) dr`, reported for diagnostics.
    pub fn full_spinor_norm(&self) -> Result<f64> {
        self.integrate_sq(|r| {
            let (f, g) = self.components(r)?;
            Ok((f * f + g * g).sqrt())
        })
    }

    fn integrate_sq<F: Fn(f64) -> Result<f64>>(&self, f: F) -> Result<f64> {
        let gl = GaussLegendre::new(20);
        let upper = 60.0 / self.decay_rate() + 10.0;
        let err = std::cell::RefCell::new(None);
        let call = |r: f64| match f(r) {
            Ok(v) => v * v,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                0.0
            }
        };
        let near = gl.integrate_composite(call, 0.0, 1.0, 40);
        let far = gl.integrate_composite(call, 1.0, upper, 800);
        match err.into_inner() {
            Some(e) => Err(e),
            None => Ok(near + far),
        }
    }
}

/// `C = √(2δ d! (d+ξ+β) Γ(2β+1) Γ(d+2β+2ξ) / ((d+ξ) Γ(2β) Γ(d+2β+1) Γ(d+2ξ)))`,
/// evaluated in log space.
pub fn norm_constant(degree: u32, beta: f64, xi: f64, delta: f64) -> Result<f64> {
    let d = degree as f64;
    if !(beta > 0.0) || !(d + xi > 0.0) {
        return Err(SolverError::domain(format!(
            "normalization needs beta > 0 and d + xi > 0 (beta = {beta}, xi = {xi})"
        )));
    }
    let ln_c2 = (2.0 * delta).ln() + ln_factorial(degree) + (d + xi + beta).ln() + ln_gamma(2.0 * beta + 1.0)?
        + ln_gamma(d + 2.0 * beta + 2.0 * xi)?
        - (d + xi).ln()
        - ln_gamma(2.0 * beta)?
        - ln_gamma(d + 2.0 * beta + 1.0)?
        - ln_gamma(d + 2.0 * xi)?;
    Ok((0.5 * ln_c2).exp())
}

pub fn upper_f_spin(r: f64, ctx: &SpinorContext) -> Result<f64> {
    expect_kind(ctx, Symmetry::Spin)?;
    ctx.primary(r)
}

pub fn lower_g_spin(r: f64, ctx: &SpinorContext) -> Result<f64> {
    expect_kind(ctx, Symmetry::Spin)?;
    ctx.paired(r)
}

pub fn lower_g_pseudo(r: f64, ctx: &SpinorContext) -> Result<f64> {
    expect_kind(ctx, Symmetry::Pseudospin)?;
    ctx.primary(r)
}

pub fn upper_f_pseudo(r: f64, ctx: &SpinorContext) -> Result<f64> {
    expect_kind(ctx, Symmetry::Pseudospin)?;
    ctx.paired(r)
}

fn expect_kind(ctx: &SpinorContext, kind: Symmetry) -> Result<()> {
    if ctx.kind == kind {
        Ok(())
    } else {
        Err(SolverError::invalid("symmetry", format!("context is {}, expected {}", ctx.kind, kind)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub r: f64,
    pub f: f64,
    pub g: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinorSolution {
    pub qn: QuantumNumbers,
    pub symmetry: Symmetry,
    pub energy: f64,
    pub beta_exp: f64,
    pub xi_exp: f64,
    pub norm_const: f64,
    pub samples: Vec<Sample>,
}

impl SpinorSolution {
    pub fn primary_values(&self) -> Vec<f64> {
        self.samples
            .iter()
            .map(|s| match self.symmetry {
                Symmetry::Spin => s.f,
                Symmetry::Pseudospin => s.g,
            })
            .collect()
    }

    pub fn paired_values(&self) -> Vec<f64> {
        self.samples
            .iter()
            .map(|s| match self.symmetry {
                Symmetry::Spin => s.g,
                Symmetry::Pseudospin => s.f,
            })
            .collect()
    }
}

/// Log-spaced grid on `[r_min, r_max]`.
pub fn log_grid(r_min: f64, r_max: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2 && r_min > 0.0 && r_max > r_min);
    let (a, b) = (r_min.ln(), r_max.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

pub fn sample_spinor(ctx: &SpinorContext, points: usize) -> Result<SpinorSolution> {
    let grid = log_grid(SAMPLE_R_MIN, ctx.sample_r_max(), points);
    let samples = grid
        .into_iter()
        .map(|r| ctx.components(r).map(|(f, g)| Sample { r, f, g }))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpinorSolution {
        qn: ctx.qn,
        symmetry: ctx.kind,
        energy: ctx.energy,
        beta_exp: ctx.beta,
        xi_exp: ctx.xi,
        norm_const: ctx.norm_const,
        samples,
    })
}

pub fn solve_spinor(root: &EnergyRoot) -> Result<SpinorSolution> {
    sample_spinor(&SpinorContext::from_root(root)?, SAMPLE_POINTS)
}

/// Strict sign changes across the interior samples (endpoints excluded).
pub fn count_nodes(values: &[f64]) -> u32 {
    if values.len() < 3 {
        return 0;
    }
    let mut last = 0.0f64;
    let mut nodes = 0;
    for &v in &values[1..values.len() - 1] {
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            nodes += 1;
        }
        last = v;
    }
    nodes
}
