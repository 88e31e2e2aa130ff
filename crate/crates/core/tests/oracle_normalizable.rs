//! The shooting oracle against analytic roots on the decaying branch.

use dirac_spectra::oracle::{dirac_eigenvalue_near, OracleConfig};
use dirac_spectra::potentials::CentrifugalMode;
use dirac_spectra::spectra::solve_levels;
use dirac_spectra::{PotentialParams, QuantumNumbers, SearchConfig, Symmetry, SymmetryLimit};

fn decaying_roots(q: &QuantumNumbers, sym: &SymmetryLimit, p: &PotentialParams) -> Vec<f64> {
    solve_levels(q, sym, p, &SearchConfig::default())
        .unwrap()
        .into_iter()
        .filter(|r| r.flags().normalizable && r.flags().paper_valid)
        .map(|r| r.energy)
        .collect()
}

fn check(q: QuantumNumbers, sym: SymmetryLimit, p: PotentialParams) -> usize {
    let cfg = OracleConfig {
        centrifugal_mode: CentrifugalMode::Approximated,
        ..OracleConfig::default()
    };
    let roots = decaying_roots(&q, &sym, &p);
    for &e in &roots {
        let o = dirac_eigenvalue_near(&q, &sym, &p, &cfg, e).unwrap();
        assert!(o.converged, "{} {}: oracle did not converge near {e}", sym.kind, q.label());
        assert!((o.energy - e).abs() <= 1e-4, "{} {}: {} vs {e}", sym.kind, q.label(), o.energy);
        assert_eq!(o.node_count, q.degree(sym.kind));
    }
    roots.len()
}

#[test]
fn spin_benchmark_decaying_roots() {
    let sym = SymmetryLimit::benchmark(Symmetry::Spin);
    let mut found = 0;
    for h in [0.0, 5.0] {
        for (n, k) in [(0, -2), (1, -2), (0, 1), (0, 2)] {
            found += check(QuantumNumbers::new(n, k).unwrap(), sym, PotentialParams::benchmark(h));
        }
    }
    assert!(found >= 4, "only {found} decaying roots");
}

#[test]
fn spin_ground_state_value() {
    let q = QuantumNumbers::new(0, -2).unwrap();
    let roots = decaying_roots(&q, &SymmetryLimit::benchmark(Symmetry::Spin), &PotentialParams::benchmark(0.0));
    assert!((roots[0] - 0.42326197).abs() < 1e-8, "{roots:?}");
}

#[test]
fn pseudospin_deep_well_decaying_roots() {
    let sym = SymmetryLimit::pseudospin(-12.0);
    let mut found = 0;
    for h in [0.0, 5.0] {
        let p = PotentialParams::new(2.0, 2.0, 2.0, 0.05, h, 4.76).unwrap();
        for (n, k) in [(1, -1), (2, -1), (0, 2)] {
            found += check(QuantumNumbers::new(n, k).unwrap(), sym, p);
        }
    }
    assert!(found >= 2, "only {found} decaying roots");
}
