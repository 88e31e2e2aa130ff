//! Acceptance checks against the reference tables and figure trends. Prints one
//! PASS/FAIL line per check and exits non-zero if any check fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dirac_spectra::cli::commands::{default_scan_states, default_sweep_states, default_wavefunction_states};
use dirac_spectra::cli::config::RunConfig;
use dirac_spectra::cli::verify::{degeneracy, dual_path, normalization, nu_susy, Status};
use dirac_spectra::limits::{coulomb_energy, nonrel_energy, NonRelForm, NonRelParams};
use dirac_spectra::oracle::{dirac_eigenvalue, OracleConfig};
use dirac_spectra::parallel::ExecutionMode;
use dirac_spectra::potentials::{approx_potential, exact_potential, CentrifugalMode};
use dirac_spectra::spectra::{scan_v0_c, solve_levels, solve_primary, sweep_delta};
use dirac_spectra::{PotentialParams, QuantumNumbers, SearchConfig, Symmetry, SymmetryLimit};

const SEED: u64 = 20_240_611;
const TABLE_TOL: f64 = 1e-6;

/// (n, kappa, E(H=0), E(H=5), partner n, partner kappa, partner E(H=0), partner E(H=5))
type Row = (u32, i32, f64, f64, u32, i32, f64, f64);

const TABLE_SPIN: [Row; 16] = [
    (0, -2, 0.24181258, 0.24725816, 0, 1, 0.24181258, 0.26229015),
    (0, -3, 0.24408024, 0.24408024, 0, 2, 0.24408024, 0.26915052),
    (0, -4, 0.24725817, 0.24181258, 0, 3, 0.24725817, 0.27694672),
    (0, -5, 0.25134955, 0.24045289, 0, 4, 0.25134955, 0.28568689),
    (1, -2, 0.24407876, 0.25134791, 1, 1, 0.24407876, 0.26914833),
    (1, -3, 0.24725666, 0.24725666, 1, 2, 0.24725666, 0.27694432),
    (1, -4, 0.25134791, 0.24407876, 1, 3, 0.25134791, 0.28568428),
    (1, -5, 0.25635671, 0.24181038, 1, 4, 0.25635671, 0.29537745),
    (2, -2, 0.24725314, 0.25635387, 2, 1, 0.24725314, 0.27694119),
    (2, -3, 0.25134496, 0.25134496, 2, 2, 0.25134496, 0.28568098),
    (2, -4, 0.25635387, 0.24725314, 2, 3, 0.25635387, 0.29537396),
    (2, -5, 0.26228527, 0.24407133, 2, 4, 0.26228527, 0.30603052),
    (3, -2, 0.25133807, 0.26228075, 3, 1, 0.25133807, 0.28567666),
    (3, -3, 0.25634875, 0.25634875, 3, 2, 0.25634875, 0.29536954),
    (3, -4, 0.26228075, 0.25133807, 3, 3, 0.26228075, 0.30602597),
    (3, -5, 0.26914103, 0.24723546, 3, 4, 0.26914103, 0.31765756),
];

const TABLE_PSEUDO: [Row; 16] = [
    (1, -1, -0.24665137, -0.25853490, 0, 2, -0.24665137, -0.28786907),
    (1, -2, -0.25183976, -0.25183976, 0, 3, -0.25183976, -0.30082457),
    (1, -3, -0.25853490, -0.24665137, 0, 4, -0.25853490, -0.31543002),
    (1, -4, -0.26675519, -0.24295721, 0, 5, -0.26675519, -0.33173176),
    (2, -1, -0.25184913, -0.26676283, 1, 2, -0.25184913, -0.30083316),
    (2, -2, -0.25854279, -0.25854279, 1, 3, -0.25854279, -0.31543915),
    (2, -3, -0.26676283, -0.25184913, 1, 4, -0.26676283, -0.33174151),
    (2, -4, -0.27653162, -0.24667097, 1, 5, -0.27653162, -0.34979406),
    (3, -1, -0.25856120, -0.27654386, 2, 2, -0.25856120, -0.31545110),
    (3, -2, -0.26677657, -0.26677657, 2, 3, -0.26677657, -0.33175386),
    (3, -3, -0.27654386, -0.25856119, 2, 4, -0.27654386, -0.34980694),
    (3, -4, -0.28788894, -0.25189558, 2, 5, -0.28788894, -0.36967266),
    (4, -1, -0.25856120, -0.28790739, 3, 2, -0.25856120, -0.33177001),
    (4, -2, -0.26677657, -0.27656587, 3, 3, -0.26677657, -0.34982325),
    (4, -3, -0.27654386, -0.26680859, 3, 4, -0.27654386, -0.36968936),
    (4, -4, -0.28788894, -0.25865185, 3, 5, -0.28788894, -0.39144042),
];

type CheckFn = fn() -> Check;

struct Check {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn qn(n: u32, kappa: i32) -> QuantumNumbers {
    QuantumNumbers::new(n, kappa).unwrap()
}

fn benchmark_energy(q: QuantumNumbers, kind: Symmetry, h: f64) -> Option<f64> {
    solve_primary(
        &q,
        &SymmetryLimit::benchmark(kind),
        &PotentialParams::benchmark(h),
        &SearchConfig::default(),
    )
    .ok()
    .flatten()
    .map(|r| r.energy)
}

/// Compares every cell of a table; `skip` marks cells checked elsewhere.
fn compare_table(rows: &[Row], kind: Symmetry, skip: impl Fn(&Row, f64) -> bool) -> (usize, f64, Vec<String>) {
    let mut worst = 0.0f64;
    let mut checked = 0;
    let mut bad = Vec::new();
    for row in rows {
        let &(n, k, e0, e5, pn, pk, pe0, pe5) = row;
        for (q, h, expected) in [
            (qn(n, k), 0.0, e0),
            (qn(n, k), 5.0, e5),
            (qn(pn, pk), 0.0, pe0),
            (qn(pn, pk), 5.0, pe5),
        ] {
            if skip(row, h) {
                continue;
            }
            checked += 1;
            match benchmark_energy(q, kind, h) {
                Some(e) => {
                    let gap = (e - expected).abs();
                    worst = worst.max(gap);
                    if gap > TABLE_TOL {
                        bad.push(format!("{} H={h}: {e:.8} vs {expected:.8}", q.label()));
                    }
                }
                None => bad.push(format!("{} H={h}: no root", q.label())),
            }
        }
    }
    (checked, worst, bad)
}

fn ac1() -> Check {
    let start = Instant::now();
    let (checked, worst, bad) = compare_table(&TABLE_SPIN, Symmetry::Spin, |_, _| false);
    let elapsed = start.elapsed();
    Check {
        id: "AC-1",
        pass: bad.is_empty() && elapsed < Duration::from_secs(5),
        detail: format!(
            "{checked} spin entries, max |dE| {worst:.2e}, {:.2} s{}",
            elapsed.as_secs_f64(),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }
        ),
    }
}

fn ac2() -> Check {
    let exempt = |row: &Row, h: f64| row.0 == 4 && h == 0.0;
    let (checked, worst, mut bad) = compare_table(&TABLE_PSEUDO, Symmetry::Pseudospin, exempt);
    // the n = 4, H = 0 rows repeat n = 3 in the table; only the trend in n is asserted
    let mut recorded = Vec::new();
    for k in -4..=-1 {
        let series: Vec<Option<f64>> = (1..=4).map(|n| benchmark_energy(qn(n, k), Symmetry::Pseudospin, 0.0)).collect();
        let partners: Vec<Option<f64>> =
            (0..=3).map(|n| benchmark_energy(qn(n, 1 - k), Symmetry::Pseudospin, 0.0)).collect();
        for (label, s) in [(qn(4, k).label(), &series), (qn(3, 1 - k).label(), &partners)] {
            let values: Option<Vec<f64>> = s.iter().copied().collect();
            match values {
                Some(v) if v.windows(2).all(|w| w[1] < w[0]) => recorded.push(format!("{label} {:.8}", v[3])),
                _ => bad.push(format!("{label} not monotone in n")),
            }
        }
    }
    Check {
        id: "AC-2",
        pass: bad.is_empty(),
        detail: format!(
            "{checked} pseudospin entries, max |dE| {worst:.2e}; n=4 H=0 computed: {}{}",
            recorded.join(", "),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }
        ),
    }
}

fn ac3() -> Check {
    let start = Instant::now();
    let r = nu_susy(200, SEED);
    let elapsed = start.elapsed();
    Check {
        id: "AC-3",
        pass: r.status == Status::Pass && elapsed < Duration::from_secs(1),
        detail: format!("{}, {:.3} s", r.detail, elapsed.as_secs_f64()),
    }
}

fn ac4() -> Check {
    let spin = degeneracy(&RunConfig::paper_benchmark(Symmetry::Spin, 0.0), ExecutionMode::default());
    let pseudo = degeneracy(&RunConfig::paper_benchmark(Symmetry::Pseudospin, 0.0), ExecutionMode::default());
    Check {
        id: "AC-4",
        pass: spin.status == Status::Pass && pseudo.status == Status::Pass,
        detail: format!("spin: {}; pseudospin: {}", spin.detail, pseudo.detail),
    }
}

fn ac5() -> Check {
    let start = Instant::now();
    let cfg = OracleConfig {
        centrifugal_mode: CentrifugalMode::Approximated,
        ..OracleConfig::default()
    };
    let spots = [
        (Symmetry::Spin, qn(0, -2)),
        (Symmetry::Spin, qn(1, -2)),
        (Symmetry::Pseudospin, qn(1, -1)),
        (Symmetry::Pseudospin, qn(2, -1)),
    ];
    let mut worst = 0.0f64;
    let mut agreed = 0;
    let mut bad = Vec::new();
    for (kind, q) in spots {
        for h in [0.0, 5.0] {
            let analytic = benchmark_energy(q, kind, h);
            let oracle = dirac_eigenvalue(&q, &SymmetryLimit::benchmark(kind), &PotentialParams::benchmark(h), &cfg);
            match (analytic, oracle) {
                (Some(e), Ok(o)) if o.converged => {
                    let gap = (o.energy - e).abs();
                    worst = worst.max(gap);
                    agreed += usize::from(gap <= 1e-4);
                    if gap > 1e-4 {
                        bad.push(format!("{} {kind} H={h}: oracle {:.8} vs {e:.8}", q.label(), o.energy));
                    }
                }
                (Some(e), Ok(o)) => bad.push(format!(
                    "{} {kind} H={h}: oracle not converged near {e:.8} (defect {:.2e})",
                    q.label(),
                    o.defect
                )),
                (Some(_), Err(err)) => bad.push(format!("{} {kind} H={h}: {err}", q.label())),
                (None, _) => bad.push(format!("{} {kind} H={h}: no analytic root", q.label())),
            }
        }
    }
    let elapsed = start.elapsed();
    Check {
        id: "AC-5",
        pass: bad.is_empty() && elapsed < Duration::from_secs(60),
        detail: format!(
            "{agreed}/8 spot states agree, max |dE| over converged {worst:.2e}, {:.1} s{}",
            elapsed.as_secs_f64(),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    }
}

fn ac6() -> Check {
    let p = PotentialParams::new(2.0, 1.0, 1.0, 0.05, 0.0, 4.76).unwrap();
    let gaps: Vec<f64> = (0..=950)
        .map(|i| 0.5 + 0.01 * i as f64)
        .map(|r| (exact_potential(r, &p).unwrap() - approx_potential(r, &p).unwrap()).abs())
        .collect();
    let max = gaps.iter().copied().fold(0.0, f64::max);
    let min = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    Check {
        id: "AC-6",
        pass: max <= 5e-3 && max < 3.0 * min,
        detail: format!("max gap {max:.3e}, min gap {min:.3e}, ratio {:.2}", max / min),
    }
}

fn ac7() -> Check {
    let mut bad = Vec::new();

    let (a, c, m, h) = (0.8, 5.0, 4.76, 1.0);
    let mut coulomb_gap = 0.0f64;
    for (kind, q) in [(Symmetry::Spin, qn(0, -2)), (Symmetry::Spin, qn(1, 1)), (Symmetry::Pseudospin, qn(0, 2))] {
        let sym = SymmetryLimit { kind, constant: if kind == Symmetry::Spin { c } else { -c } };
        let closed = coulomb_energy(kind, &q, a, sym.constant, m, h);
        let p = PotentialParams::new(0.0, a, 0.0, 1e-6, h, m).unwrap();
        let gap = solve_levels(&q, &sym, &p, &SearchConfig::default())
            .unwrap_or_default()
            .iter()
            .map(|r| (r.energy - closed).abs())
            .fold(f64::INFINITY, f64::min);
        coulomb_gap = coulomb_gap.max(gap);
    }
    if coulomb_gap > 1e-4 {
        bad.push(format!("Coulomb gap {coulomb_gap:.2e}"));
    }

    let mut nonrel_gap = 0.0f64;
    for (mass, ze2) in [(1.0, 1.0), (4.76, 0.37), (0.5, 2.5)] {
        for l in 0..4 {
            for n in 0..4 {
                let np = NonRelParams::new(mass, l, ze2, 0.0, 0.0, 0.0).unwrap();
                let e = nonrel_energy(&np, n, NonRelForm::Coulomb).unwrap();
                let expected = -mass * ze2 * ze2 / (2.0 * ((l + n + 1) as f64).powi(2));
                nonrel_gap = nonrel_gap.max(((e - expected) / expected).abs());
            }
        }
    }
    if nonrel_gap > 1e-12 {
        bad.push(format!("nonrelativistic Coulomb relative gap {nonrel_gap:.2e}"));
    }

    let special = dual_path(20, SEED);
    if special.status != Status::Pass {
        bad.push(special.detail.clone());
    }
    Check {
        id: "AC-7",
        pass: bad.is_empty(),
        detail: format!(
            "Coulomb gap {coulomb_gap:.2e}, nonrel relative gap {nonrel_gap:.2e}, special cases: {}{}",
            special.detail,
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    }
}

fn ac8() -> Check {
    let mut parts = Vec::new();
    let mut pass = true;
    for kind in [Symmetry::Spin, Symmetry::Pseudospin] {
        let mut cfg = RunConfig::paper_benchmark(kind, 5.0);
        cfg.states = Some(default_wavefunction_states(kind));
        let r = normalization(&cfg, ExecutionMode::default());
        pass &= r.status == Status::Pass;
        parts.push(format!("{kind}: {}", r.detail));
    }
    Check {
        id: "AC-8",
        pass,
        detail: parts.join("; "),
    }
}

fn ac9() -> Check {
    let deltas: Vec<f64> = (1..=30).map(|i| 0.01 * i as f64).collect();
    let states = default_sweep_states();
    let mut pass = true;
    let mut parts = Vec::new();
    for kind in [Symmetry::Spin, Symmetry::Pseudospin] {
        let sweep = sweep_delta(
            &states,
            &SymmetryLimit::benchmark(kind),
            &PotentialParams::benchmark(5.0),
            &deltas,
            &SearchConfig::default(),
            ExecutionMode::default(),
        );
        let mut shortest = deltas.len();
        for (k, q) in states.iter().enumerate() {
            let prefix: Vec<f64> = sweep.values.iter().map_while(|row| row[k]).collect();
            shortest = shortest.min(prefix.len());
            let monotone = prefix.windows(2).all(|w| match kind {
                Symmetry::Spin => w[1] > w[0],
                Symmetry::Pseudospin => w[1] < w[0],
            });
            if prefix.len() < 5 || !monotone {
                pass = false;
                parts.push(format!("{kind} {} fails over {} points", q.label(), prefix.len()));
            }
        }
        parts.push(format!("{kind}: {} states, shortest bound prefix {shortest} points", states.len()));
    }
    Check {
        id: "AC-9",
        pass,
        detail: parts.join("; "),
    }
}

fn ac10() -> Check {
    let mut pass = true;
    let mut parts = Vec::new();
    for kind in [Symmetry::Spin, Symmetry::Pseudospin] {
        let sign = if kind == Symmetry::Spin { 1.0 } else { -1.0 };
        let probe = [(0.0, false), (2.0, false), (5.0, true), (6.0, true), (7.0, true)];
        let cs: Vec<f64> = probe.iter().map(|(c, _)| sign * c).collect();
        let base = PotentialParams::benchmark(5.0);
        for q in default_scan_states(kind) {
            let m = scan_v0_c(&q, kind, &base, &[2.0], &cs, &SearchConfig::default(), ExecutionMode::default());
            let wrong: Vec<String> = probe
                .iter()
                .zip(&m.values[0])
                .filter(|((_, bound), e)| e.is_some() != *bound)
                .map(|((c, _), _)| format!("C={}", sign * c))
                .collect();
            if wrong.is_empty() {
                parts.push(format!("{kind} {} ok", q.label()));
            } else {
                pass = false;
                parts.push(format!("{kind} {} misclassified at {}", q.label(), wrong.join(",")));
            }
        }
    }
    Check {
        id: "AC-10",
        pass,
        detail: parts.join("; "),
    }
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags; a filter argument that matches nothing skips the run
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let checks: [(&str, CheckFn); 10] = [
        ("AC-1", ac1),
        ("AC-2", ac2),
        ("AC-3", ac3),
        ("AC-4", ac4),
        ("AC-5", ac5),
        ("AC-6", ac6),
        ("AC-7", ac7),
        ("AC-8", ac8),
        ("AC-9", ac9),
        ("AC-10", ac10),
    ];
    let mut failed = 0;
    for (id, run) in checks {
        if !filter.is_empty() && !filter.iter().any(|f| id.contains(f.as_str())) {
            continue;
        }
        let c = run();
        println!("{} {:<5} {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.detail);
        if !c.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance check(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
