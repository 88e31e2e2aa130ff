//! Consistency suites run by `spectra verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::commands::{default_table_states, default_wavefunction_states};
use super::config::RunConfig;
use crate::limits::{
    coulomb_energy, hulthen_residual, iq_yukawa_residual, kratzer_fues_residual, nonrel_energy, swave_residual,
    yukawa_residual, NonRelForm, NonRelParams,
};
use crate::oracle::{dirac_eigenvalue_near, first_order_residual, OracleConfig};
use crate::parallel::{map_ordered, ExecutionMode};
use crate::potentials::{PotentialParams, Symmetry, SymmetryLimit};
use crate::roots::find_roots;
use crate::spectra::{doublet_partner, nu_residual, solve_levels, solve_primary, QuantumNumbers, SearchConfig};
use crate::susyqm::susy_residual;
use crate::wavefunctions::{count_nodes, sample_spinor, SpinorContext, SAMPLE_POINTS};
use crate::Result;

const SEED: u64 = 0x5eed_d1ac;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl SuiteResult {
    fn judge(name: &'static str, ok: bool, detail: String) -> Self {
        Self {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
        }
    }

    fn skipped(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            status: Status::Skipped,
            detail: detail.into(),
        }
    }
}

pub fn run_all(cfg: &RunConfig, mode: ExecutionMode) -> Result<Vec<SuiteResult>> {
    cfg.params.validate()?;
    Ok(vec![
        nu_susy(200, SEED),
        degeneracy(cfg, mode),
        dual_path(20, SEED),
        limit_closed_forms()?,
        oracle_agreement(cfg, mode),
        normalization(cfg, mode),
    ])
}

fn random_kappa(rng: &mut ChaCha8Rng, max: i32) -> i32 {
    loop {
        let k = rng.random_range(-max..=max);
        if k != 0 {
            return k;
        }
    }
}

fn random_kind(rng: &mut ChaCha8Rng) -> Symmetry {
    if rng.random_bool(0.5) {
        Symmetry::Spin
    } else {
        Symmetry::Pseudospin
    }
}

/// Largest `|NU - SUSY| / (1 + |NU|)` over random in-domain draws.
pub fn nu_susy(draws: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut done = 0;
    let mut attempts = 0;
    while done < draws && attempts < 100 * draws {
        attempts += 1;
        let h = [0.0, 1.0, 5.0][rng.random_range(0..3)];
        let p = PotentialParams {
            v0: rng.random_range(0.0..5.0),
            a: rng.random_range(0.0..5.0),
            b: rng.random_range(0.0..5.0),
            delta: rng.random_range(0.01..0.2),
            h,
            mass: 4.76,
        };
        let sym = SymmetryLimit {
            kind: random_kind(&mut rng),
            constant: rng.random_range(-10.0..10.0),
        };
        let qn = QuantumNumbers::new(rng.random_range(0..=4), random_kappa(&mut rng, 5)).unwrap();
        let span = p.mass + sym.constant.abs();
        let e = rng.random_range(-span..span);
        let (Ok(nu), Ok(susy)) = (nu_residual(e, &p, &sym, &qn), susy_residual(e, &p, &sym, &qn)) else {
            continue;
        };
        worst = worst.max((nu - susy).abs() / (1.0 + nu.abs()));
        done += 1;
    }
    SuiteResult::judge(
        "nu-susy",
        done == draws && worst <= 1e-9,
        format!("{done} draws, max relative gap {worst:.3e}"),
    )
}

pub fn degeneracy(cfg: &RunConfig, mode: ExecutionMode) -> SuiteResult {
    let kind = cfg.symmetry.kind;
    let states = cfg.states.clone().unwrap_or_else(|| default_table_states(kind));
    let pairs: Vec<(QuantumNumbers, QuantumNumbers)> =
        states.iter().filter_map(|q| doublet_partner(q, kind).ok().map(|p| (*q, p))).collect();
    if pairs.is_empty() {
        return SuiteResult::skipped("degeneracy", "no doublet pairs in the state list");
    }
    let search = SearchConfig::default();
    let gaps = map_ordered(mode, &pairs, |(a, b)| {
        let e = |q: &QuantumNumbers, h: f64| {
            solve_primary(q, &cfg.symmetry, &cfg.params.with_h(h), &search)
                .ok()
                .flatten()
                .map(|r| r.energy)
        };
        match (e(a, 0.0), e(b, 0.0), e(a, 5.0), e(b, 5.0)) {
            (Some(a0), Some(b0), Some(a5), Some(b5)) => Some(((a0 - b0).abs(), (a5 - b5).abs())),
            _ => None,
        }
    });
    let missing = gaps.iter().filter(|g| g.is_none()).count();
    let found: Vec<(f64, f64)> = gaps.into_iter().flatten().collect();
    let worst_h0 = found.iter().map(|g| g.0).fold(0.0, f64::max);
    let least_h5 = found.iter().map(|g| g.1).fold(f64::INFINITY, f64::min);
    SuiteResult::judge(
        "degeneracy",
        missing == 0 && worst_h0 <= 1e-10 && least_h5 > 1e-3,
        format!(
            "{} pairs, max gap at H=0 {worst_h0:.3e}, min gap at H=5 {least_h5:.3e}, {missing} missing",
            found.len()
        ),
    )
}

fn roots_in_window<F: Fn(f64) -> Result<f64>>(f: F, p: &PotentialParams, sym: &SymmetryLimit) -> Vec<f64> {
    let (lo, hi) = SearchConfig::default().window(p, sym);
    find_roots(|e| f(e).ok(), lo, hi, 1e-3, 1e-13)
}

/// Largest root mismatch between a closed-form case and the general residual,
/// or `None` if the root counts differ.
fn compare_roots<F: Fn(f64) -> Result<f64>>(
    special: F,
    p: &PotentialParams,
    sym: &SymmetryLimit,
    qn: &QuantumNumbers,
) -> Option<f64> {
    let a = roots_in_window(special, p, sym);
    let b = roots_in_window(|e| nu_residual(e, p, sym, qn), p, sym);
    if a.len() != b.len() {
        return None;
    }
    Some(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// `κ` such that `η = κ + H` lies where the closed Coulomb-type forms hold.
fn kappa_in_domain(rng: &mut ChaCha8Rng, kind: Symmetry, h: f64) -> i32 {
    loop {
        let k = random_kappa(rng, 5);
        let eta = k as f64 + h;
        let ok = match kind {
            Symmetry::Spin => eta >= -0.5,
            Symmetry::Pseudospin => eta >= 0.5,
        };
        if ok {
            return k;
        }
    }
}

pub fn dual_path(draws: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd0a1);
    let mut worst = 0.0f64;
    let mut mismatched = Vec::new();
    let mut total_roots = 0;
    for case in ["s-wave", "hulthen", "yukawa", "iq-yukawa"] {
        for _ in 0..draws {
            let kind = random_kind(&mut rng);
            let h = rng.random_range(0.0..5.0);
            let mut p = PotentialParams {
                v0: rng.random_range(0.5..5.0),
                a: rng.random_range(0.2..3.0),
                b: rng.random_range(0.0..2.0),
                delta: rng.random_range(0.02..0.3),
                h,
                mass: rng.random_range(1.0..6.0),
            };
            let sym = SymmetryLimit {
                kind,
                constant: rng.random_range(-10.0..10.0),
            };
            let n = rng.random_range(0..4);
            let (qn, gap) = match case {
                "s-wave" => {
                    let k = if kind == Symmetry::Spin { -1 } else { 1 };
                    let qn = QuantumNumbers::new(n, k).unwrap();
                    (qn, compare_roots(|e| swave_residual(e, &p, &sym, n), &p, &sym, &qn))
                }
                "hulthen" => {
                    p.a = 0.0;
                    p.b = 0.0;
                    let qn = QuantumNumbers::new(n, kappa_in_domain(&mut rng, kind, h)).unwrap();
                    (qn, compare_roots(|e| hulthen_residual(e, &p, &sym, &qn), &p, &sym, &qn))
                }
                "yukawa" => {
                    p.v0 = 0.0;
                    p.b = 0.0;
                    let qn = QuantumNumbers::new(n, kappa_in_domain(&mut rng, kind, h)).unwrap();
                    (qn, compare_roots(|e| yukawa_residual(e, &p, &sym, &qn), &p, &sym, &qn))
                }
                _ => {
                    p.v0 = 0.0;
                    p.a = 0.0;
                    let qn = QuantumNumbers::new(n, random_kappa(&mut rng, 5)).unwrap();
                    (qn, compare_roots(|e| iq_yukawa_residual(e, &p, &sym, &qn), &p, &sym, &qn))
                }
            };
            match gap {
                Some(g) => {
                    worst = worst.max(g);
                    total_roots += 1;
                }
                None => mismatched.push(format!("{case} {kind} {}", qn.label())),
            }
        }
    }
    SuiteResult::judge(
        "dual-path",
        mismatched.is_empty() && worst <= 1e-10,
        if mismatched.is_empty() {
            format!("{total_roots} draws, max root gap {worst:.3e}")
        } else {
            format!("root counts differ for {}", mismatched.join(", "))
        },
    )
}

pub fn limit_closed_forms() -> Result<SuiteResult> {
    let search = SearchConfig::default();
    let (a, c, m, h) = (0.8, 5.0, 4.76, 1.0);
    let qn = QuantumNumbers::new(0, -2)?;
    let coulomb = coulomb_energy(Symmetry::Spin, &qn, a, c, m, h);
    let p = PotentialParams::new(0.0, a, 0.0, 1e-6, h, m)?;
    let yukawa_gap = solve_levels(&qn, &SymmetryLimit::spin(c), &p, &search)?
        .iter()
        .map(|r| (r.energy - coulomb).abs())
        .fold(f64::INFINITY, f64::min);

    let b = 0.3;
    let kf_p = PotentialParams::new(0.0, a, b, 1e-6, h, m)?;
    let kf_roots = find_roots(
        |e| kratzer_fues_residual(e, Symmetry::Spin, &qn, a, b, c, m, h).ok(),
        -m - c - 1.0,
        m + c + 1.0,
        1e-3,
        1e-13,
    );
    let general = solve_levels(&qn, &SymmetryLimit::spin(c), &kf_p, &search)?;
    let kf_gap = kf_roots
        .iter()
        .map(|e| general.iter().map(|r| (r.energy - e).abs()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);

    let hydrogen = NonRelParams::new(1.0, 0, 1.0, 0.0, 0.0, 0.0)?;
    let e_h = nonrel_energy(&hydrogen, 0, NonRelForm::Coulomb)?;

    Ok(SuiteResult::judge(
        "limits",
        yukawa_gap <= 1e-4 && !kf_roots.is_empty() && kf_gap <= 1e-4 && (e_h + 0.5).abs() <= 1e-12,
        format!("Coulomb gap {yukawa_gap:.3e}, Kratzer-Fues gap {kf_gap:.3e}, hydrogen {e_h}"),
    ))
}

/// States whose decaying analytic root the oracle can reproduce.
fn oracle_states(cfg: &RunConfig) -> Vec<(QuantumNumbers, f64)> {
    match &cfg.states {
        Some(list) => list.iter().map(|q| (*q, cfg.params.h)).collect(),
        None => {
            let spot = match cfg.symmetry.kind {
                Symmetry::Spin => [(0, -2), (1, -2)],
                Symmetry::Pseudospin => [(1, -1), (2, -1)],
            };
            spot.iter()
                .flat_map(|&(n, k)| [0.0, 5.0].map(|h| (QuantumNumbers::new(n, k).unwrap(), h)))
                .collect()
        }
    }
}

pub fn oracle_agreement(cfg: &RunConfig, mode: ExecutionMode) -> SuiteResult {
    if !cfg.oracle {
        return SuiteResult::skipped("oracle", "oracle disabled");
    }
    let states = oracle_states(cfg);
    let checks = map_ordered(mode, &states, |&(q, h)| {
        let p = cfg.params.with_h(h);
        let roots = solve_levels(&q, &cfg.symmetry, &p, &SearchConfig::default()).ok()?;
        let root = roots.into_iter().find(|r| {
            let f = r.flags();
            f.normalizable && f.paper_valid
        })?;
        let res = dirac_eigenvalue_near(&q, &cfg.symmetry, &p, &OracleConfig::default(), root.energy);
        Some(match res {
            Ok(r) => Ok(((r.energy - root.energy).abs(), r.node_count == q.degree(cfg.symmetry.kind))),
            Err(e) => Err(format!("{}: {e}", q.label())),
        })
    });
    let tested: Vec<_> = checks.into_iter().flatten().collect();
    if tested.is_empty() {
        return SuiteResult::skipped("oracle", "no decaying analytic root at these parameters");
    }
    let errors: Vec<String> = tested.iter().filter_map(|r| r.as_ref().err().cloned()).collect();
    let ok: Vec<(f64, bool)> = tested.iter().filter_map(|r| r.as_ref().ok().copied()).collect();
    let worst = ok.iter().map(|r| r.0).fold(0.0, f64::max);
    let nodes_ok = ok.iter().all(|r| r.1);
    SuiteResult::judge(
        "oracle",
        errors.is_empty() && worst <= 1e-4 && nodes_ok,
        if errors.is_empty() {
            format!("{} states, max |dE| {worst:.3e}, node counts {}", ok.len(), if nodes_ok { "ok" } else { "wrong" })
        } else {
            errors.join("; ")
        },
    )
}

pub fn normalization(cfg: &RunConfig, mode: ExecutionMode) -> SuiteResult {
    let states = cfg
        .states
        .clone()
        .unwrap_or_else(|| default_wavefunction_states(cfg.symmetry.kind));
    let results = map_ordered(mode, &states, |q| -> std::result::Result<(f64, bool, f64), String> {
        let root = solve_primary(q, &cfg.symmetry, &cfg.params, &SearchConfig::default())
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no bound state for {}", q.label()))?;
        let ctx = SpinorContext::from_root(&root).map_err(|e| e.to_string())?;
        let norm = ctx.quadrature_norm().map_err(|e| e.to_string())?;
        let sol = sample_spinor(&ctx, SAMPLE_POINTS).map_err(|e| e.to_string())?;
        let nodes_ok = count_nodes(&sol.primary_values()) == q.degree(cfg.symmetry.kind);
        let residual = first_order_residual(&ctx, 400).map_err(|e| e.to_string())?;
        Ok(((norm - 1.0).abs(), nodes_ok, residual))
    });
    let errors: Vec<String> = results.iter().filter_map(|r| r.as_ref().err().cloned()).collect();
    let ok: Vec<(f64, bool, f64)> = results.iter().filter_map(|r| r.as_ref().ok().copied()).collect();
    let norm_gap = ok.iter().map(|r| r.0).fold(0.0, f64::max);
    let residual = ok.iter().map(|r| r.2).fold(0.0, f64::max);
    let nodes_ok = ok.iter().all(|r| r.1);
    SuiteResult::judge(
        "normalization",
        errors.is_empty() && norm_gap <= 1e-6 && residual <= 1e-6 && nodes_ok,
        if errors.is_empty() {
            format!(
                "{} states, max |norm - 1| {norm_gap:.3e}, max first-order residual {residual:.3e}, node counts {}",
                ok.len(),
                if nodes_ok { "ok" } else { "wrong" }
            )
        } else {
            errors.join("; ")
        },
    )
}
