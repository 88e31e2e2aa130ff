//! Nikiforov-Uvarov energy residuals for both symmetry limits and the root
//! search that turns them into bound-state energies.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};
use crate::parallel::{map_ordered, ExecutionMode};
use crate::potentials::{centrifugal_factor, PotentialParams, Symmetry, SymmetryLimit};
use crate::roots::{bisect, scan_brackets};

const SPECTROSCOPIC: [char; 12] = ['s', 'p', 'd', 'f', 'g', 'h', 'i', 'k', 'l', 'm', 'n', 'o'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub kappa: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, kappa: i32) -> Result<Self> {
        if kappa == 0 {
            return Err(SolverError::invalid("kappa", "spin-orbit quantum number must be nonzero"));
        }
        Ok(Self { n, kappa })
    }

    /// `l = |κ + 1/2| - 1/2`.
    pub fn l(&self) -> u32 {
        if self.kappa < 0 {
            (-self.kappa - 1) as u32
        } else {
            self.kappa as u32
        }
    }

    /// `l̃ = |κ - 1/2| - 1/2`.
    pub fn l_tilde(&self) -> u32 {
        if self.kappa < 0 {
            (-self.kappa) as u32
        } else {
            (self.kappa - 1) as u32
        }
    }

    pub fn j(&self) -> f64 {
        self.kappa.unsigned_abs() as f64 - 0.5
    }

    /// `j` as a fraction, e.g. `3/2`.
    pub fn j_label(&self) -> String {
        format!("{}/2", 2 * self.kappa.unsigned_abs() - 1)
    }

    /// Spectroscopic label such as `0p3/2`.
    pub fn label(&self) -> String {
        let l = self.l() as usize;
        let letter = SPECTROSCOPIC.get(l).copied().unwrap_or('?');
        format!("{}{}{}", self.n, letter, self.j_label())
    }

    /// Degree of the polynomial part of the wavefunction. Pseudospin states
    /// with κ > 0 carry one extra node relative to their label, which is what
    /// pairs `(n, κ<0)` with `(n-1, 1-κ)`.
    pub fn degree(&self, kind: Symmetry) -> u32 {
        match kind {
            Symmetry::Pseudospin if self.kappa > 0 => self.n + 1,
            _ => self.n,
        }
    }

    pub fn eta(&self, h: f64) -> f64 {
        self.kappa as f64 + h
    }
}

impl std::fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (n={}, kappa={})", self.label(), self.n, self.kappa)
    }
}

/// Energy-dependent parameters of the reduced hypergeometric equation. For
/// pseudospin these are the tilded quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxiliaryParams {
    pub alpha2: f64,
    pub beta2: f64,
    pub gamma2: f64,
    pub eta: f64,
    /// `η(η+1)` for spin, `η(η-1)` for pseudospin.
    pub lambda: f64,
}

impl AuxiliaryParams {
    /// `1/4 + γ² + Λ`.
    pub fn discriminant(&self) -> f64 {
        0.25 + self.gamma2 + self.lambda
    }
}

pub fn aux_spin(energy: f64, p: &PotentialParams, c_s: f64, qn: &QuantumNumbers) -> AuxiliaryParams {
    let d2 = 4.0 * p.delta * p.delta;
    let coupling = p.mass + energy - c_s;
    AuxiliaryParams {
        alpha2: p.hulthen_total() * coupling / d2,
        beta2: (p.mass * p.mass - energy * energy - c_s * (p.mass - energy)) / d2,
        gamma2: -p.b_prime() * coupling / d2,
        eta: qn.eta(p.h),
        lambda: centrifugal_factor(Symmetry::Spin, qn.kappa, p.h),
    }
}

pub fn aux_pseudo(energy: f64, p: &PotentialParams, c_ps: f64, qn: &QuantumNumbers) -> AuxiliaryParams {
    let d2 = 4.0 * p.delta * p.delta;
    let coupling = p.mass - energy + c_ps;
    AuxiliaryParams {
        alpha2: -p.hulthen_total() * coupling / d2,
        beta2: (p.mass * p.mass - energy * energy + c_ps * (p.mass + energy)) / d2,
        gamma2: p.b_prime() * coupling / d2,
        eta: qn.eta(p.h),
        lambda: centrifugal_factor(Symmetry::Pseudospin, qn.kappa, p.h),
    }
}

pub fn aux(energy: f64, p: &PotentialParams, sym: &SymmetryLimit, qn: &QuantumNumbers) -> AuxiliaryParams {
    match sym.kind {
        Symmetry::Spin => aux_spin(energy, p, sym.constant, qn),
        Symmetry::Pseudospin => aux_pseudo(energy, p, sym.constant, qn),
    }
}

/// `Q = [α² - Λ - 1/2 - d(d+1) - (2d+1)√D] / (d + 1/2 + √D)`; the energy
/// equation reads `4δ²β² = δ²Q²`.
pub fn nu_q(a: &AuxiliaryParams, degree: u32) -> Result<f64> {
    let disc = a.discriminant();
    if disc < 0.0 {
        return Err(SolverError::domain(format!(
            "discriminant 1/4 + gamma^2 + Lambda = {disc} is negative: no bound state"
        )));
    }
    let root = disc.sqrt();
    let d = degree as f64;
    Ok((a.alpha2 - a.lambda - 0.5 - d * (d + 1.0) - (2.0 * d + 1.0) * root) / (d + 0.5 + root))
}

fn residual_from_aux(a: &AuxiliaryParams, degree: u32, delta: f64) -> Result<f64> {
    let q = nu_q(a, degree)?;
    let d2 = delta * delta;
    Ok(4.0 * d2 * a.beta2 - d2 * q * q)
}

pub fn nu_residual_spin(energy: f64, p: &PotentialParams, c_s: f64, qn: &QuantumNumbers) -> Result<f64> {
    residual_from_aux(&aux_spin(energy, p, c_s, qn), qn.degree(Symmetry::Spin), p.delta)
}

pub fn nu_residual_pseudo(energy: f64, p: &PotentialParams, c_ps: f64, qn: &QuantumNumbers) -> Result<f64> {
    residual_from_aux(&aux_pseudo(energy, p, c_ps, qn), qn.degree(Symmetry::Pseudospin), p.delta)
}

pub fn nu_residual(energy: f64, p: &PotentialParams, sym: &SymmetryLimit, qn: &QuantumNumbers) -> Result<f64> {
    match sym.kind {
        Symmetry::Spin => nu_residual_spin(energy, p, sym.constant, qn),
        Symmetry::Pseudospin => nu_residual_pseudo(energy, p, sym.constant, qn),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootFlags {
    pub sqrt_domain_ok: bool,
    pub m_bound_ok: bool,
    pub c_bound_ok: bool,
    pub paper_valid: bool,
    /// The unsquared relation `2β = Q` holds with `β > 0`, so the state decays.
    pub normalizable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyRoot {
    pub energy: f64,
    pub symmetry: SymmetryLimit,
    pub qn: QuantumNumbers,
    pub params: PotentialParams,
}

impl EnergyRoot {
    pub fn flags(&self) -> RootFlags {
        let e = self.energy;
        let m = self.params.mass;
        let c = self.symmetry.constant;
        let a = aux(e, &self.params, &self.symmetry, &self.qn);
        let q = nu_q(&a, self.qn.degree(self.symmetry.kind)).ok();
        let sqrt_domain_ok = q.is_some() && a.beta2 >= 0.0;
        match self.symmetry.kind {
            Symmetry::Spin => RootFlags {
                sqrt_domain_ok,
                m_bound_ok: m >= e,
                c_bound_ok: e + m >= c,
                paper_valid: e > 0.0,
                normalizable: q.is_some_and(|q| q > 0.0),
            },
            Symmetry::Pseudospin => RootFlags {
                sqrt_domain_ok,
                m_bound_ok: m > -e,
                c_bound_ok: e < c + m,
                paper_valid: e < 0.0 && (e - (m + c)).abs() > 1e-9,
                normalizable: q.is_some_and(|q| q > 0.0),
            },
        }
    }

    pub fn residual(&self) -> Result<f64> {
        nu_residual(self.energy, &self.params, &self.symmetry, &self.qn)
    }

    pub fn aux(&self) -> AuxiliaryParams {
        aux(self.energy, &self.params, &self.symmetry, &self.qn)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Defaults to `-(M + |C| + 1)`.
    pub e_lo: Option<f64>,
    /// Defaults to `M + |C| + 1`.
    pub e_hi: Option<f64>,
    pub step: f64,
    pub tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            e_lo: None,
            e_hi: None,
            step: 1e-3,
            tol: 1e-12,
        }
    }
}

impl SearchConfig {
    pub fn window(&self, p: &PotentialParams, sym: &SymmetryLimit) -> (f64, f64) {
        let pad = p.mass + sym.constant.abs() + 1.0;
        (self.e_lo.unwrap_or(-pad), self.e_hi.unwrap_or(pad))
    }
}

/// All real roots of the NU residual in the search window, ordered by energy.
pub fn solve_levels(
    qn: &QuantumNumbers,
    sym: &SymmetryLimit,
    p: &PotentialParams,
    search: &SearchConfig,
) -> Result<Vec<EnergyRoot>> {
    p.validate()?;
    if !(search.step > 0.0) || !(search.tol > 0.0) {
        return Err(SolverError::invalid("search", "step and tolerance must be positive"));
    }
    let (lo, hi) = search.window(p, sym);
    if !(hi > lo) {
        return Err(SolverError::invalid("search", format!("empty energy window [{lo}, {hi}]")));
    }
    let f = |e: f64| nu_residual(e, p, sym, qn).ok();
    let excluded = match sym.kind {
        Symmetry::Spin if sym.constant == 0.0 => Some(-p.mass),
        Symmetry::Pseudospin if sym.constant == 0.0 => Some(p.mass),
        _ => None,
    };
    let mut roots: Vec<EnergyRoot> = scan_brackets(f, lo, hi, search.step)
        .into_iter()
        .filter_map(|b| bisect(f, b, search.tol))
        .filter(|e| excluded.is_none_or(|x| (e - x).abs() > 1e-9))
        .map(|energy| EnergyRoot {
            energy,
            symmetry: *sym,
            qn: *qn,
            params: *p,
        })
        .collect();
    roots.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(roots)
}

/// The conventional level: the valid-sign root closest to zero.
pub fn primary_root(roots: &[EnergyRoot]) -> Option<EnergyRoot> {
    roots
        .iter()
        .filter(|r| r.flags().paper_valid)
        .min_by(|a, b| a.energy.abs().total_cmp(&b.energy.abs()))
        .copied()
}

pub fn solve_primary(
    qn: &QuantumNumbers,
    sym: &SymmetryLimit,
    p: &PotentialParams,
    search: &SearchConfig,
) -> Result<Option<EnergyRoot>> {
    Ok(primary_root(&solve_levels(qn, sym, p, search)?))
}

/// The state degenerate with `qn` when `H = 0`.
pub fn doublet_partner(qn: &QuantumNumbers, kind: Symmetry) -> Result<QuantumNumbers> {
    let none = || SolverError::NoPartner(format!("{} state {}", kind, qn.label()));
    match kind {
        Symmetry::Spin => {
            if qn.kappa == -1 {
                return Err(none());
            }
            QuantumNumbers::new(qn.n, -qn.kappa - 1)
        }
        Symmetry::Pseudospin => {
            if qn.kappa < 0 {
                if qn.n == 0 {
                    return Err(none());
                }
                QuantumNumbers::new(qn.n - 1, 1 - qn.kappa)
            } else {
                if qn.kappa == 1 {
                    return Err(none());
                }
                QuantumNumbers::new(qn.n + 1, 1 - qn.kappa)
            }
        }
    }
}

/// Primary energies on a grid of screening parameters; `None` marks "no bound state".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub deltas: Vec<f64>,
    pub states: Vec<QuantumNumbers>,
    /// `values[i][k]` is the energy of `states[k]` at `deltas[i]`.
    pub values: Vec<Vec<Option<f64>>>,
}

pub fn sweep_delta(
    states: &[QuantumNumbers],
    sym: &SymmetryLimit,
    p: &PotentialParams,
    deltas: &[f64],
    search: &SearchConfig,
    mode: ExecutionMode,
) -> SweepTable {
    let cells: Vec<(usize, usize)> = (0..deltas.len())
        .flat_map(|i| (0..states.len()).map(move |k| (i, k)))
        .collect();
    let flat = map_ordered(mode, &cells, |&(i, k)| {
        let delta = deltas[i];
        if !(delta > 0.0) {
            return None;
        }
        solve_primary(&states[k], sym, &p.with_delta(delta), search)
            .ok()
            .flatten()
            .map(|r| r.energy)
    });
    let values = flat.chunks(states.len().max(1)).map(|c| c.to_vec()).collect();
    SweepTable {
        deltas: deltas.to_vec(),
        states: states.to_vec(),
        values: if states.is_empty() { vec![Vec::new(); deltas.len()] } else { values },
    }
}

/// Primary energies on a `(V₀, C)` grid with `A = B = V₀`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanMatrix {
    pub state: QuantumNumbers,
    pub kind: Symmetry,
    pub v0: Vec<f64>,
    pub c: Vec<f64>,
    /// `values[i][j]` is the energy at `v0[i]`, `c[j]`.
    pub values: Vec<Vec<Option<f64>>>,
}

pub fn scan_v0_c(
    state: &QuantumNumbers,
    kind: Symmetry,
    base: &PotentialParams,
    v0_grid: &[f64],
    c_grid: &[f64],
    search: &SearchConfig,
    mode: ExecutionMode,
) -> ScanMatrix {
    let cells: Vec<(usize, usize)> = (0..v0_grid.len())
        .flat_map(|i| (0..c_grid.len()).map(move |j| (i, j)))
        .collect();
    let flat = map_ordered(mode, &cells, |&(i, j)| {
        let v = v0_grid[i];
        let p = PotentialParams { v0: v, a: v, b: v, ..*base };
        let sym = SymmetryLimit { kind, constant: c_grid[j] };
        solve_primary(state, &sym, &p, search).ok().flatten().map(|r| r.energy)
    });
    let values = if c_grid.is_empty() {
        vec![Vec::new(); v0_grid.len()]
    } else {
        flat.chunks(c_grid.len()).map(|c| c.to_vec()).collect()
    };
    ScanMatrix {
        state: *state,
        kind,
        v0: v0_grid.to_vec(),
        c: c_grid.to_vec(),
        values,
    }
}
