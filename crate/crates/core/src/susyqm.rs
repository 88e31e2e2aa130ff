//! Supersymmetric route: superpotential `W = A_w - B_w s/(1-s)`, partner
//! potentials, shape-invariance remainders and the energy residual.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive_radius, Result, SolverError};
use crate::potentials::{PotentialParams, Symmetry, SymmetryLimit};
use crate::spectra::{aux, aux_pseudo, aux_spin, AuxiliaryParams, QuantumNumbers};

/// Constants of the superpotential, named to avoid the potential strengths `A`, `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperpotentialConstants {
    pub a_w: f64,
    pub b_w: f64,
}

/// `A(B) = -B/2 + 2δ²(α²+γ²)/B`.
pub fn asymptotic_constant(b: f64, alpha_gamma: f64, delta: f64) -> f64 {
    -0.5 * b + 2.0 * delta * delta * alpha_gamma / b
}

/// Constants without the `A_w < 0` requirement.
pub fn constants_unchecked(a: &AuxiliaryParams, delta: f64) -> Result<SuperpotentialConstants> {
    let disc = a.discriminant();
    if disc < 0.0 {
        return Err(SolverError::domain(format!(
            "superpotential discriminant {disc} is negative"
        )));
    }
    let b_w = delta + 2.0 * delta * disc.sqrt();
    Ok(SuperpotentialConstants {
        a_w: asymptotic_constant(b_w, a.alpha2 + a.gamma2, delta),
        b_w,
    })
}

pub fn solve_constants(
    energy: f64,
    p: &PotentialParams,
    sym: &SymmetryLimit,
    qn: &QuantumNumbers,
) -> Result<SuperpotentialConstants> {
    let c = constants_unchecked(&aux(energy, p, sym, qn), p.delta)?;
    if c.a_w >= 0.0 {
        return Err(SolverError::InvalidBranch { a_w: c.a_w, b_w: c.b_w });
    }
    Ok(c)
}

fn s_ratio(r: f64, delta: f64) -> (f64, f64) {
    let x = 2.0 * delta * r;
    ((-x).exp(), -(-x).exp_m1())
}

pub fn superpotential_at(r: f64, c: &SuperpotentialConstants, delta: f64) -> Result<f64> {
    require_positive_radius(r)?;
    let (s, om) = s_ratio(r, delta);
    Ok(c.a_w - c.b_w * s / om)
}

/// `W'(r) = 2δ B_w s/(1-s)²`.
pub fn superpotential_derivative(r: f64, c: &SuperpotentialConstants, delta: f64) -> Result<f64> {
    require_positive_radius(r)?;
    let (s, om) = s_ratio(r, delta);
    Ok(2.0 * delta * c.b_w * s / (om * om))
}

/// `(V₋, V₊) = (W² - W', W² + W')`.
pub fn partner_potentials_at(r: f64, c: &SuperpotentialConstants, delta: f64) -> Result<(f64, f64)> {
    let w = superpotential_at(r, c, delta)?;
    let dw = superpotential_derivative(r, c, delta)?;
    Ok((w * w - dw, w * w + dw))
}

/// `V₋` written out term by term:
/// `A_w² - 2A_wB_w s/(1-s) + B_w(B_w - 2δ) s²/(1-s)² - 2δB_w s/(1-s)`.
pub fn partner_minus_explicit(r: f64, c: &SuperpotentialConstants, delta: f64) -> Result<f64> {
    require_positive_radius(r)?;
    let (s, om) = s_ratio(r, delta);
    let y = s / om;
    Ok(c.a_w * c.a_w - 2.0 * c.a_w * c.b_w * y + c.b_w * (c.b_w - 2.0 * delta) * y * y
        - 2.0 * delta * c.b_w * y)
}

/// `R(B_i) = A(B_{i-1})² - A(B_i)²` with `B_i = B_w + 2iδ`.
pub fn shape_invariance_remainder(
    i: u32,
    c: &SuperpotentialConstants,
    alpha_gamma: f64,
    delta: f64,
) -> f64 {
    let b_prev = c.b_w + 2.0 * (i as f64 - 1.0) * delta;
    let b_i = c.b_w + 2.0 * i as f64 * delta;
    asymptotic_constant(b_prev, alpha_gamma, delta).powi(2) - asymptotic_constant(b_i, alpha_gamma, delta).powi(2)
}

fn susy_residual_from_aux(a: &AuxiliaryParams, degree: u32, delta: f64) -> Result<f64> {
    let c = constants_unchecked(a, delta)?;
    let a_n = asymptotic_constant(c.b_w + 2.0 * degree as f64 * delta, a.alpha2 + a.gamma2, delta);
    Ok(4.0 * delta * delta * a.beta2 - a_n * a_n)
}

/// `4δ²β² - A(B_w + 2nδ)²`, zero on the spin spectrum.
pub fn susy_residual_spin(energy: f64, p: &PotentialParams, c_s: f64, qn: &QuantumNumbers) -> Result<f64> {
    susy_residual_from_aux(&aux_spin(energy, p, c_s, qn), qn.degree(Symmetry::Spin), p.delta)
}

pub fn susy_residual_pseudo(energy: f64, p: &PotentialParams, c_ps: f64, qn: &QuantumNumbers) -> Result<f64> {
    susy_residual_from_aux(&aux_pseudo(energy, p, c_ps, qn), qn.degree(Symmetry::Pseudospin), p.delta)
}

pub fn susy_residual(energy: f64, p: &PotentialParams, sym: &SymmetryLimit, qn: &QuantumNumbers) -> Result<f64> {
    match sym.kind {
        Symmetry::Spin => susy_residual_spin(energy, p, sym.constant, qn),
        Symmetry::Pseudospin => susy_residual_pseudo(energy, p, sym.constant, qn),
    }
}

/// `e^{-A_w r} (1 - e^{-2δr})^{B_w/(2δ)}`, exactly as the ground state is written.
/// With `A_w < 0` this grows at large `r`.
pub fn ground_state_unnormalized(r: f64, c: &SuperpotentialConstants, delta: f64) -> Result<f64> {
    Ok(ln_ground_state(r, c, delta)?.exp())
}

pub fn ln_ground_state(r: f64, c: &SuperpotentialConstants, delta: f64) -> Result<f64> {
    require_positive_radius(r)?;
    let (_, om) = s_ratio(r, delta);
    Ok(-c.a_w * r + c.b_w / (2.0 * delta) * om.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{effective_potential, CentrifugalMode, EffectivePotential};
    use crate::spectra::nu_residual;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn qn(n: u32, k: i32) -> QuantumNumbers {
        QuantumNumbers::new(n, k).unwrap()
    }

    #[test]
    fn s_wave_without_b_gives_two_delta() {
        let mut p = PotentialParams::benchmark(0.0);
        p.b = 0.0;
        let a = aux_spin(0.3, &p, 5.0, &qn(0, -1));
        assert_relative_eq!(constants_unchecked(&a, p.delta).unwrap().b_w, 2.0 * p.delta);
    }

    #[test]
    fn table_root_constants_satisfy_branch_rule() {
        let p = PotentialParams::benchmark(0.0);
        let sym = SymmetryLimit::spin(5.0);
        let c = solve_constants(0.24181258, &p, &sym, &qn(0, -2)).unwrap();
        assert!(c.a_w < 0.0 && c.b_w > 0.0);
        let a = aux_spin(0.24181258, &p, 5.0, &qn(0, -2));
        assert_abs_diff_eq!(
            2.0 * c.a_w * c.b_w + c.b_w * c.b_w,
            4.0 * p.delta * p.delta * (a.alpha2 + a.gamma2),
            epsilon = 1e-12
        );
        // the decaying root has A_w > 0 and is rejected by the branch rule
        assert!(matches!(
            solve_constants(0.42326197, &p, &sym, &qn(0, -2)),
            Err(SolverError::InvalidBranch { .. })
        ));
    }

    #[test]
    fn susy_residual_at_table_root() {
        let p = PotentialParams::benchmark(0.0);
        assert!(susy_residual_spin(0.24181258, &p, 5.0, &qn(0, -2)).unwrap().abs() < 1e-7);
    }

    #[test]
    fn partner_potentials() {
        let c = SuperpotentialConstants { a_w: -0.07, b_w: 0.23 };
        let delta = 0.05;
        for r in [0.1, 1.3, 7.7, 25.0] {
            let (vm, vp) = partner_potentials_at(r, &c, delta).unwrap();
            assert_relative_eq!(vm, partner_minus_explicit(r, &c, delta).unwrap(), max_relative = 1e-12);
            assert_relative_eq!(vp - vm, 2.0 * superpotential_derivative(r, &c, delta).unwrap(), max_relative = 1e-12);
        }
        assert_abs_diff_eq!(superpotential_at(2000.0, &c, delta).unwrap(), c.a_w, epsilon = 1e-15);
        assert!(superpotential_at(0.0, &c, delta).is_err());
    }

    #[test]
    fn first_remainder_benchmark() {
        let p = PotentialParams::benchmark(0.0);
        let a = aux_spin(0.24181258, &p, 5.0, &qn(1, -2));
        let c = constants_unchecked(&a, p.delta).unwrap();
        let ag = a.alpha2 + a.gamma2;
        let direct = asymptotic_constant(c.b_w, ag, p.delta).powi(2)
            - asymptotic_constant(c.b_w + 2.0 * p.delta, ag, p.delta).powi(2);
        assert_relative_eq!(shape_invariance_remainder(1, &c, ag, p.delta), direct, max_relative = 1e-14);
        // frozen from an independent evaluation of the closed form
        assert_relative_eq!(shape_invariance_remainder(1, &c, ag, p.delta), -0.01244710985247578, max_relative = 1e-10);
    }

    #[test]
    fn telescoping_sum() {
        let p = PotentialParams::benchmark(5.0);
        let a = aux_spin(0.26, &p, 5.0, &qn(3, 2));
        let c = constants_unchecked(&a, p.delta).unwrap();
        let ag = a.alpha2 + a.gamma2;
        let n = 4;
        let sum: f64 = (1..=n).map(|i| shape_invariance_remainder(i, &c, ag, p.delta)).sum();
        let closed = c.a_w.powi(2) - asymptotic_constant(c.b_w + 2.0 * n as f64 * p.delta, ag, p.delta).powi(2);
        assert_relative_eq!(sum, closed, max_relative = 1e-12);
    }

    #[test]
    fn ground_state_boundaries() {
        let c = SuperpotentialConstants { a_w: -0.05, b_w: 0.3 };
        assert!(ground_state_unnormalized(1e-6, &c, 0.05).unwrap() < 1e-10);
        // informational: with A_w < 0 the printed form grows at large r
        assert!(ground_state_unnormalized(400.0, &c, 0.05).unwrap() > 1.0);
    }

    #[test]
    fn riccati_matches_effective_potential() {
        for (sym, q, e, h) in [
            (SymmetryLimit::spin(5.0), qn(0, -2), 0.42326197, 0.0),
            (SymmetryLimit::spin(5.0), qn(0, 3), 0.3, 5.0),
            (SymmetryLimit::pseudospin(-5.0), qn(0, 2), -0.29, 5.0),
        ] {
            let p = PotentialParams::benchmark(h);
            let c = constants_unchecked(&aux(e, &p, &sym, &q), p.delta).unwrap();
            let u = EffectivePotential::new(e, &p, &sym, &q, CentrifugalMode::Approximated);
            for r in [0.05, 0.7, 3.0, 12.0, 40.0] {
                let (vm, _) = partner_potentials_at(r, &c, p.delta).unwrap();
                assert_relative_eq!(vm - c.a_w * c.a_w, u.at(r), max_relative = 1e-8, epsilon = 1e-12);
                assert_relative_eq!(u.at(r), effective_potential(r, e, &p, &sym, &q).unwrap());
            }
        }
    }

    #[test]
    fn shape_invariance_constant_in_r() {
        let p = PotentialParams::benchmark(5.0);
        let a = aux_spin(0.3, &p, 5.0, &qn(0, 2));
        let c0 = constants_unchecked(&a, p.delta).unwrap();
        let ag = a.alpha2 + a.gamma2;
        let at = |b: f64| SuperpotentialConstants { a_w: asymptotic_constant(b, ag, p.delta), b_w: b };
        let c1 = at(c0.b_w + 2.0 * p.delta);
        let diffs: Vec<f64> = [0.2, 1.0, 4.0, 9.0, 30.0]
            .iter()
            .map(|&r| {
                partner_potentials_at(r, &c0, p.delta).unwrap().1 - partner_potentials_at(r, &c1, p.delta).unwrap().0
            })
            .collect();
        for d in &diffs {
            assert_abs_diff_eq!(*d, diffs[0], epsilon = 1e-10);
        }
        assert_relative_eq!(diffs[0], shape_invariance_remainder(1, &c0, ag, p.delta), max_relative = 1e-9);
    }

    proptest! {
        #[test]
        fn susy_equals_nu(
            e in -8.0f64..8.0, kappa in prop::sample::select(vec![-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]),
            n in 0u32..5, h in prop::sample::select(vec![0.0, 1.0, 5.0]), spin in any::<bool>(),
            v0 in 0.0f64..5.0, a in 0.0f64..5.0, b in 0.0f64..5.0, delta in 0.01f64..0.2, c in -10.0f64..10.0,
        ) {
            let p = PotentialParams::new(v0, a, b, delta, h, 4.76).unwrap();
            let sym = if spin { SymmetryLimit::spin(c) } else { SymmetryLimit::pseudospin(c) };
            let q = qn(n, kappa);
            if let Ok(g) = nu_residual(e, &p, &sym, &q) {
                let s = susy_residual(e, &p, &sym, &q).unwrap();
                prop_assert!((g - s).abs() <= 1e-9 * (1.0 + g.abs()));
            }
        }
    }
}
