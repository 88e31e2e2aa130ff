//! Numerical eigenvalues of the reduced radial equation `u'' = [U_eff(r; E) - ε(E)] u`
//! by Numerov shooting, independent of the closed forms.
//!
//! The inner problem fixes `E` inside `U_eff` and finds the eigenvalue `ε` with
//! a prescribed node count. The outer loop runs a secant iteration on
//! `d(E) = ε_inner(E) - ε_target(E)`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};
use crate::potentials::{CentrifugalMode, EffectivePotential, PotentialParams, Symmetry, SymmetryLimit};
use crate::spectra::{solve_primary, QuantumNumbers, SearchConfig};
use crate::wavefunctions::{log_grid, SpinorContext};

const OVERFLOW: f64 = 1e100;
const RESCALE: f64 = 1e-100;
/// Largest `h²|Q|/12` accepted on the integrated part of the grid.
const NUMEROV_SAFE: f64 = 0.05;
const AUTO_R_MAX_CAP: f64 = 400.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub r_min: f64,
    /// `None` picks `max(40, 12/√|ε|)` from the target eigenvalue.
    pub r_max: Option<f64>,
    pub num_points: usize,
    pub match_fraction: f64,
    pub outer_tol: f64,
    pub max_outer_iters: u32,
    pub centrifugal_mode: CentrifugalMode,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            r_min: 1e-6,
            r_max: None,
            num_points: 20_000,
            match_fraction: 0.35,
            outer_tol: 1e-8,
            max_outer_iters: 50,
            centrifugal_mode: CentrifugalMode::Approximated,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0) {
            return Err(SolverError::invalid("r_min", "must be positive"));
        }
        if let Some(r_max) = self.r_max {
            if !(r_max > self.r_min) {
                return Err(SolverError::invalid("r_max", "must exceed r_min"));
            }
        }
        if self.num_points < 1000 {
            return Err(SolverError::invalid("num_points", "at least 1000 points are required"));
        }
        if !(self.match_fraction > 0.0 && self.match_fraction < 1.0) {
            return Err(SolverError::invalid("match_fraction", "must lie in (0, 1)"));
        }
        if !(self.outer_tol > 0.0) {
            return Err(SolverError::invalid("outer_tol", "must be positive"));
        }
        Ok(())
    }

    fn r_max_for(&self, eps: f64) -> f64 {
        self.r_max.unwrap_or_else(|| {
            if eps < 0.0 {
                (12.0 / eps.abs().sqrt()).clamp(40.0, AUTO_R_MAX_CAP)
            } else {
                40.0
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub energy: f64,
    pub inner_eigenvalue: f64,
    pub node_count: u32,
    pub outer_iters: u32,
    pub converged: bool,
    pub defect: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    pub r0: f64,
    pub h: f64,
    pub len: usize,
}

impl UniformGrid {
    pub fn new(r0: f64, r1: f64, len: usize) -> Result<Self> {
        if len < 3 || !(r1 > r0) {
            return Err(SolverError::invalid("grid", format!("need r1 > r0 and at least 3 points (got {len})")));
        }
        Ok(Self {
            r0,
            h: (r1 - r0) / (len - 1) as f64,
            len,
        })
    }

    pub fn r(&self, i: usize) -> f64 {
        self.r0 + self.h * i as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(|i| self.r(i))
    }
}

/// Forward and backward Numerov solutions of `u'' = Q u` on the same grid.
#[derive(Debug, Clone, PartialEq)]
pub struct NumerovSweeps {
    pub forward: Vec<f64>,
    pub backward: Vec<f64>,
}

/// Numerov sweep upward from `u[start] = u0`, `u[start+1] = u1`. Entries before
/// `start` are zero. Whenever `|u|` passes the overflow guard the computed part
/// is rescaled, which leaves log-derivatives and nodes unchanged.
pub fn numerov_forward(q: &[f64], h: f64, start: usize, u0: f64, u1: f64) -> Vec<f64> {
    let n = q.len();
    let mut u = vec![0.0; n];
    assert!(start + 1 < n, "start index out of range");
    let k = h * h / 12.0;
    u[start] = u0;
    u[start + 1] = u1;
    for i in start + 1..n - 1 {
        let next = (2.0 * (1.0 + 5.0 * k * q[i]) * u[i] - (1.0 - k * q[i - 1]) * u[i - 1]) / (1.0 - k * q[i + 1]);
        u[i + 1] = next;
        if next.abs() > OVERFLOW {
            u[start..=i + 1].iter_mut().for_each(|v| *v *= RESCALE);
        }
    }
    u
}

/// Numerov sweep downward from `u[n-1] = u_last`, `u[n-2] = u_prev` to index `stop`.
pub fn numerov_backward(q: &[f64], h: f64, stop: usize, u_last: f64, u_prev: f64) -> Vec<f64> {
    let n = q.len();
    assert!(n >= 3 && stop < n - 1, "stop index out of range");
    let mut u = vec![0.0; n];
    let k = h * h / 12.0;
    u[n - 1] = u_last;
    u[n - 2] = u_prev;
    let mut i = n - 2;
    while i > stop {
        let next = (2.0 * (1.0 + 5.0 * k * q[i]) * u[i] - (1.0 - k * q[i + 1]) * u[i + 1]) / (1.0 - k * q[i - 1]);
        u[i - 1] = next;
        if next.abs() > OVERFLOW {
            u[i - 1..].iter_mut().for_each(|v| *v *= RESCALE);
        }
        i -= 1;
    }
    u
}

/// Both sweeps over the whole grid for `u'' = Q(r) u`.
pub fn numerov_integrate<Q: Fn(f64) -> f64>(
    grid: &UniformGrid,
    q: Q,
    forward_start: (f64, f64),
    backward_start: (f64, f64),
) -> Result<NumerovSweeps> {
    let qs: Vec<f64> = grid.points().map(q).collect();
    if qs.iter().any(|v| !v.is_finite()) {
        return Err(SolverError::domain("Q is not finite on the grid"));
    }
    Ok(NumerovSweeps {
        forward: numerov_forward(&qs, grid.h, 0, forward_start.0, forward_start.1),
        backward: numerov_backward(&qs, grid.h, 0, backward_start.0, backward_start.1),
    })
}

fn count_sign_changes(u: &[f64]) -> u32 {
    let mut last = 0.0f64;
    let mut nodes = 0;
    for &v in u {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            nodes += 1;
        }
        last = v;
    }
    nodes
}

/// Shooting solver for one frozen potential on one grid.
struct Shooter {
    grid: UniformGrid,
    potential: Vec<f64>,
    start: usize,
    exponent: f64,
    match_cap: usize,
}

impl Shooter {
    fn new<U: Fn(f64) -> f64>(u_eff: &U, r_min: f64, r_max: f64, points: usize, match_fraction: f64) -> Result<Self> {
        let grid = UniformGrid::new(r_min, r_max, points)?;
        let potential: Vec<f64> = grid.points().map(u_eff).collect();
        if potential.iter().any(|v| !v.is_finite()) {
            return Err(SolverError::domain("effective potential is not finite on the grid"));
        }
        let k = grid.h * grid.h / 12.0;
        // first index from which Numerov is safe all the way out
        let mut first_safe = points;
        for i in (1..points).rev() {
            if k * potential[i].abs() > NUMEROV_SAFE {
                break;
            }
            first_safe = i;
        }
        if first_safe + 3 >= points {
            return Err(SolverError::domain("grid too coarse for the effective potential"));
        }
        let start = first_safe - 1;
        let c0 = r_min * r_min * potential[0];
        let exponent = 0.5 + (0.25 + c0).max(0.0).sqrt();
        let match_cap = ((points - 1) as f64 * match_fraction) as usize;
        Ok(Self {
            grid,
            potential,
            start,
            exponent,
            match_cap,
        })
    }

    fn q(&self, eps: f64) -> Vec<f64> {
        self.potential.iter().map(|u| u - eps).collect()
    }

    fn forward(&self, q: &[f64]) -> Vec<f64> {
        let r0 = self.grid.r(self.start);
        let r1 = self.grid.r(self.start + 1);
        numerov_forward(q, self.grid.h, self.start, r0.powf(self.exponent), r1.powf(self.exponent))
    }

    fn nodes(&self, eps: f64) -> u32 {
        let u = self.forward(&self.q(eps));
        count_sign_changes(&u[self.start..])
    }

    /// Window in which eigenvalues are sought: from below the well bottom to the threshold.
    fn window(&self) -> (f64, f64) {
        let min_u = self.potential[self.start + 1..].iter().copied().fold(f64::INFINITY, f64::min);
        (min_u - 1.0, 0.0)
    }

    fn matching_index(&self, eps: f64) -> usize {
        let turning = (self.start..self.grid.len).rev().find(|&i| self.potential[i] < eps);
        let m = turning.unwrap_or(self.match_cap).min(self.match_cap);
        m.clamp(self.start + 2, self.grid.len - 3)
    }

    /// Log-derivative mismatch at the matching index together with the matched node count.
    fn mismatch(&self, eps: f64, m: usize) -> (f64, u32) {
        let q = self.q(eps);
        let out = self.forward(&q);
        let inn = numerov_backward(&q, self.grid.h, m - 1, 0.0, 1e-30);
        let h2 = 2.0 * self.grid.h;
        let l_out = (out[m + 1] - out[m - 1]) / (h2 * out[m]);
        let l_in = (inn[m + 1] - inn[m - 1]) / (h2 * inn[m]);
        let nodes = count_sign_changes(&out[self.start..=m]) + count_sign_changes(&inn[m..]);
        (l_out - l_in, nodes)
    }

    fn eigenvalue(&self, n_target: u32) -> Result<(f64, u32)> {
        let (mut lo, mut hi) = self.window();
        let (w_lo, w_hi) = (lo, hi);
        let no_eigen = || SolverError::NoEigenvalue {
            nodes: n_target,
            lo: w_lo,
            hi: w_hi,
        };
        if self.nodes(lo) > n_target || self.nodes(hi) <= n_target {
            return Err(no_eigen());
        }
        // node bisection: nodes(lo) <= n < nodes(hi)
        for _ in 0..200 {
            if hi - lo <= 1e-7 * hi.abs().max(1e-3) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.nodes(mid) > n_target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let m = self.matching_index(0.5 * (lo + hi));
        let (f_lo, _) = self.mismatch(lo, m);
        let (f_hi, _) = self.mismatch(hi, m);
        if f_lo.is_finite() && f_hi.is_finite() && (f_lo < 0.0) != (f_hi < 0.0) {
            let mut f_lo = f_lo;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                let (fm, _) = self.mismatch(mid, m);
                if !fm.is_finite() {
                    break;
                }
                if (fm < 0.0) == (f_lo < 0.0) {
                    lo = mid;
                    f_lo = fm;
                } else {
                    hi = mid;
                }
            }
        } else {
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                if self.nodes(mid) > n_target {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
        }
        let eps = 0.5 * (lo + hi);
        let (_, nodes) = self.mismatch(eps, m);
        Ok((eps, nodes))
    }
}

/// Eigenvalue `ε` of `u'' = [U(r) - ε] u` with `n_target` interior nodes and `u(0) = u(r_max) = 0`.
pub fn schrodinger_eigenvalue<U: Fn(f64) -> f64>(u_eff: U, n_target: u32, cfg: &OracleConfig) -> Result<(f64, u32)> {
    cfg.validate()?;
    let solve = |r_max: f64| {
        Shooter::new(&u_eff, cfg.r_min, r_max, cfg.num_points, cfg.match_fraction)?.eigenvalue(n_target)
    };
    match cfg.r_max {
        Some(r_max) => solve(r_max),
        None => {
            let first = solve(40.0)?;
            let wanted = cfg.r_max_for(first.0);
            if wanted > 40.0 {
                solve(wanted)
            } else {
                Ok(first)
            }
        }
    }
}

fn inner_solve(
    energy: f64,
    qn: &QuantumNumbers,
    sym: &SymmetryLimit,
    p: &PotentialParams,
    cfg: &OracleConfig,
    r_max: f64,
) -> Result<(f64, u32)> {
    let pot = EffectivePotential::new(energy, p, sym, qn, cfg.centrifugal_mode);
    Shooter::new(&|r| pot.at(r), cfg.r_min, r_max, cfg.num_points, cfg.match_fraction)?
        .eigenvalue(qn.degree(sym.kind))
}

/// Self-consistent energy starting from `guess`.
pub fn dirac_eigenvalue_near(
    qn: &QuantumNumbers,
    sym: &SymmetryLimit,
    p: &PotentialParams,
    cfg: &OracleConfig,
    guess: f64,
) -> Result<OracleResult> {
    cfg.validate()?;
    p.validate()?;
    let m = p.mass;
    let r_max = cfg.r_max_for(sym.epsilon(guess, m));
    let defect = |e: f64| -> Result<(f64, f64, u32)> {
        let (eps, nodes) = inner_solve(e, qn, sym, p, cfg, r_max)?;
        Ok((eps - sym.epsilon(e, m), eps, nodes))
    };
    let mut iterates = vec![guess];
    let (mut d0, eps0, nodes0) = defect(guess)?;
    if d0.abs() <= cfg.outer_tol {
        return Ok(OracleResult {
            energy: guess,
            inner_eigenvalue: eps0,
            node_count: nodes0,
            outer_iters: 0,
            converged: true,
            defect: d0,
        });
    }
    let slope = 2.0 * guess - sym.constant;
    let mut e0 = guess;
    let mut e1 = if slope.abs() > 1e-6 {
        guess + d0 / slope
    } else {
        guess + 1e-3 * guess.abs().max(1.0)
    };
    for iter in 1..=cfg.max_outer_iters {
        iterates.push(e1);
        let (d1, eps1, nodes1) = defect(e1)?;
        if d1.abs() <= cfg.outer_tol {
            return Ok(OracleResult {
                energy: e1,
                inner_eigenvalue: eps1,
                node_count: nodes1,
                outer_iters: iter,
                converged: true,
                defect: d1,
            });
        }
        let denom = d1 - d0;
        if denom == 0.0 || !denom.is_finite() {
            return Err(SolverError::NotConverged {
                iters: iter,
                last_energy: e1,
                last_defect: d1,
                iterates,
            });
        }
        let e2 = e1 - d1 * (e1 - e0) / denom;
        (e0, d0) = (e1, d1);
        e1 = e2;
    }
    Err(SolverError::NotConverged {
        iters: cfg.max_outer_iters,
        last_energy: e0,
        last_defect: d0,
        iterates,
    })
}

/// Self-consistent energy seeded by the tabulated analytic root.
pub fn dirac_eigenvalue(
    qn: &QuantumNumbers,
    sym: &SymmetryLimit,
    p: &PotentialParams,
    cfg: &OracleConfig,
) -> Result<OracleResult> {
    let search = SearchConfig::default();
    let guess = solve_primary(qn, sym, p, &search)?.ok_or_else(|| {
        let (lo, hi) = search.window(p, sym);
        SolverError::NoEigenvalue {
            nodes: qn.degree(sym.kind),
            lo,
            hi,
        }
    })?;
    dirac_eigenvalue_near(qn, sym, p, cfg, guess.energy)
}

/// Largest pointwise defect of the first-order equation that defines the
/// paired component, relative to the largest coupling term on the grid:
/// spin `F' + ηF/r - (M+E-C_S)G`, pseudospin `G' - ηG/r - (M-E+C_PS)F`.
pub fn first_order_residual(ctx: &SpinorContext, points: usize) -> Result<f64> {
    let sign = match ctx.kind {
        Symmetry::Spin => 1.0,
        Symmetry::Pseudospin => -1.0,
    };
    let grid = log_grid(1e-4, ctx.sample_r_max(), points);
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for &r in &grid[1..grid.len() - 1] {
        let h = 1e-3 * r.min(1.0);
        let f = |x: f64| ctx.primary(x);
        let deriv = (8.0 * (f(r + h)? - f(r - h)?) - (f(r + 2.0 * h)? - f(r - 2.0 * h)?)) / (12.0 * h);
        let coupled = ctx.coupling * ctx.paired(r)?;
        worst = worst.max((deriv + sign * ctx.eta / r * f(r)? - coupled).abs());
        scale = scale.max(coupled.abs());
    }
    if scale == 0.0 {
        return Err(SolverError::DivisionByZero("paired component vanishes on the grid".into()));
    }
    Ok(worst / scale)
}
