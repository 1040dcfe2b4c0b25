//! Property tests for the operator-algebra invariants and the cross-route
//! identities that pair each construction with its independent oracle.

use proptest::prelude::*;

use rabi_lab::analysis::{
    action_report, euclidean_action_from_gap, g_function, predicted_levels, ActionValue,
};
use rabi_lab::hamiltonians::{
    h_qr, h_transformed, parity, parity_transformed, u0, u1, u_phi, ModelKind,
};
use rabi_lab::operators::{
    displacement, make_ladder, make_quadratures, number_parity, tensor, DisplacementMethod,
    ModelParams, OperatorMatrix, Structure, C64,
};
use rabi_lab::spectra::{converged_spectrum, detect_susy_levels, TruncationSpec};

fn params(omega_a: f64, omega_c: f64, g: f64) -> ModelParams {
    ModelParams::new(omega_a, omega_c, g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn number_parity_anticommutes_with_ladder(n in 2usize..40) {
        let pi = number_parity(n).unwrap();
        let (a, adag) = make_ladder(n).unwrap();
        for op in [a, adag] {
            let anti = pi.mul(&op).add(&op.mul(&pi));
            prop_assert_eq!(anti.max_abs(), 0.0);
        }
    }

    #[test]
    fn canonical_commutator_on_interior(
        omega_c in 0.2f64..4.0,
        hbar in 0.25f64..2.0,
        n in 4usize..24,
    ) {
        let p = ModelParams::new(1.0, omega_c, 0.0).unwrap().with_hbar(hbar).unwrap();
        let (x, pm) = make_quadratures(n, &p).unwrap();
        let comm = x.commutator(&pm).unwrap();
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let expect = if i == j { C64::new(0.0, hbar) } else { C64::new(0.0, 0.0) };
                let dev = (comm.matrix()[(i, j)] - expect).norm();
                prop_assert!(dev <= 1e-10 * hbar, "dev {} at ({},{})", dev, i, j);
            }
        }
    }

    #[test]
    fn qr_hamiltonian_parity_symmetry(
        omega_a in 0.0f64..2.0,
        g in 0.0f64..2.5,
        a2 in 0.0f64..0.6,
        n in 6usize..28,
    ) {
        let p = ModelParams::new(omega_a, 1.0, g).unwrap().with_a2_coeff(a2).unwrap();
        let h = h_qr(&p, n).unwrap();
        let comm = h.commutator(&parity(n).unwrap()).unwrap();
        prop_assert_eq!(comm.max_abs(), 0.0);
    }

    #[test]
    fn transformed_hamiltonian_parity_symmetry(
        omega_a in 0.0f64..2.0,
        g in 0.0f64..2.5,
        n in 6usize..28,
        renormalized in any::<bool>(),
    ) {
        let p = params(omega_a, 1.0, g);
        let h = h_transformed(&p, n, renormalized).unwrap();
        let comm = h.commutator(&parity_transformed(n).unwrap()).unwrap();
        prop_assert_eq!(comm.max_abs(), 0.0);
    }

    #[test]
    fn displacement_composition_law(
        ar in -1.2f64..1.2, ai in -1.2f64..1.2,
        br in -1.2f64..1.2, bi in -1.2f64..1.2,
    ) {
        let alpha = C64::new(ar, ai);
        let beta = C64::new(br, bi);
        let n = (4.0 * (alpha.norm() + beta.norm()).powi(2) + 40.0).ceil() as usize;
        let da = displacement(alpha, n, DisplacementMethod::Exponentiate).unwrap();
        let db = displacement(beta, n, DisplacementMethod::Exponentiate).unwrap();
        let dab = displacement(alpha + beta, n, DisplacementMethod::Exponentiate).unwrap();
        let phase = C64::new(0.0, (alpha * beta.conj()).im).exp();
        let lhs = da.mul(&db);
        let rhs = dab.scale_complex(phase);
        let h = n / 2;
        for i in 0..h {
            for j in 0..h {
                let dev = (lhs.matrix()[(i, j)] - rhs.matrix()[(i, j)]).norm();
                prop_assert!(dev < 1e-6, "dev {} at ({},{}) with n={}", dev, i, j, n);
            }
        }
    }

    #[test]
    fn susy_pattern_is_shift_and_scale_invariant(
        base in -3.0f64..3.0,
        delta in 0.1f64..2.0,
        pairs in 2usize..5,
    ) {
        let mut levels = vec![base];
        for m in 1..=pairs {
            levels.push(base + m as f64 * delta);
            levels.push(base + m as f64 * delta);
        }
        prop_assert!(detect_susy_levels(&levels, 1e-9).is_susy_n2);
        // Nudging one pair member past the tolerance breaks the pattern.
        levels[1] += 10.0 * delta * 1e-6;
        prop_assert!(!detect_susy_levels(&levels, 1e-9).is_susy_n2);
    }
}

#[test]
fn transformed_spectrum_matches_untransformed() {
    // Spectral identity of the unitarily equivalent pair, lowest 8 levels.
    let trunc = TruncationSpec::default();
    for g in [0.0, 0.5, 1.0] {
        let p = params(1.0, 1.0, g);
        let plain = converged_spectrum(&p, ModelKind::Qr, 8, &trunc).unwrap();
        let transformed = converged_spectrum(&p, ModelKind::Transformed, 8, &trunc).unwrap();
        for (i, (a, b)) in plain.levels.iter().zip(&transformed.levels).enumerate() {
            assert!(
                (a - b).abs() <= 1e-6,
                "level {i} differs at g={g}: {a} vs {b}"
            );
        }
        let ren = converged_spectrum(&p, ModelKind::QrRen, 8, &trunc).unwrap();
        let tren = converged_spectrum(&p, ModelKind::TransformedRen, 8, &trunc).unwrap();
        for (a, b) in ren.levels.iter().zip(&tren.levels) {
            assert!((a - b).abs() <= 1e-6);
        }
    }
}

#[test]
fn lmt2_start_point_carries_the_susy_pattern() {
    // The default LMT2 schedule at r = 0 with ω_a(0) = ω_c is the resonant
    // decoupled model: the Witten ladder shows up before the sweep breaks it.
    use rabi_lab::analysis::SweepSchedule;
    use rabi_lab::spectra::detect_susy;
    let schedule = SweepSchedule::lmt2_default(1.0, 1.0, 1.0).unwrap();
    let p = schedule.params_at(0).unwrap();
    let spectrum =
        converged_spectrum(&p, ModelKind::QrRen, 10, &TruncationSpec::default()).unwrap();
    let susy = detect_susy(&spectrum, 1e-8);
    assert!(susy.is_susy_n2);
    assert!((susy.spacing.unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn transformed_parity_matches_conjugated_parity_on_interior() {
    // P̃ = (U₀U₁U_φ)† P (U₀U₁U_φ) up to truncation effects at the edge.
    let g = 0.5;
    let p = params(1.0, 1.0, g);
    let n = 96;
    let u = tensor(&u0(), &OperatorMatrix::identity(n))
        .map(|u| u.mul(&u1(n).unwrap()))
        .map(|u| u.mul(&u_phi(&p, n).unwrap()))
        .unwrap();
    let conjugated = u.adjoint().mul(&parity(n).unwrap()).mul(&u);
    let direct = parity_transformed(n).unwrap();
    let interior = n / 2;
    let mut worst = 0.0f64;
    for si in 0..2 {
        for sj in 0..2 {
            for mi in 0..interior {
                for mj in 0..interior {
                    let i = si * n + mi;
                    let j = sj * n + mj;
                    let dev = (conjugated.matrix()[(i, j)] - direct.matrix()[(i, j)]).norm();
                    worst = worst.max(dev);
                }
            }
        }
    }
    assert!(worst <= 1e-8, "interior deviation {worst}");
}

#[test]
fn gap_round_trip_is_algebraically_exact() {
    // predicted_levels ∘ euclidean_action_from_gap reproduces the measured
    // gap identically; the midpoint offset from ħω_c/2 is a diagnostic of the
    // single-G(g) form, printed but not asserted.
    let trunc = TruncationSpec::default();
    for g in [0.25, 0.75, 1.5] {
        let p = params(0.5, 1.0, g);
        let report = action_report(&p, &trunc, None).unwrap();
        let (pred0, pred1) = predicted_levels(&report.s_euc, &p);
        let predicted_gap = pred1 - pred0;
        assert!(
            (predicted_gap - report.gap).abs() <= 1e-12 * report.gap.max(1e-300),
            "gap round trip broke at g={g}: {predicted_gap} vs {}",
            report.gap
        );
        let shift = p.g * p.g / p.omega_c;
        let measured_mean = 0.5 * (report.e0 + report.e1) + shift;
        println!(
            "midpoint diagnostic at g={g}: measured {measured_mean:.6} vs ħω_c/2 = 0.5 \
             (offset {:+.3e})",
            measured_mean - 0.5
        );
    }
}

#[test]
fn g_function_inverts_the_action_formula() {
    let p = params(0.5, 1.0, 1.25);
    for gap in [0.01, 0.1, 0.4] {
        let s = euclidean_action_from_gap(gap, &p);
        let ActionValue::Finite(s) = s else {
            panic!("finite gap must give finite action")
        };
        let g_of_g = g_function(s, &p).unwrap();
        // Reconstruct the action from G and compare.
        let s_back = 2.0 * p.hbar * p.g * p.g / (p.omega_c * p.omega_c) * (g_of_g + 1.0);
        assert!((s_back - s).abs() <= 1e-12 * s.abs().max(1.0));
    }
}

#[test]
fn structure_flags_pass_numeric_checks_across_builders() {
    let tol = Default::default();
    let p = params(0.7, 1.3, 0.9);
    let n = 40;
    for op in [
        h_qr(&p, n).unwrap(),
        h_transformed(&p, n, false).unwrap(),
        parity(n).unwrap(),
        parity_transformed(n).unwrap(),
        u1(n).unwrap(),
        u_phi(&p, n).unwrap(),
        u0(),
    ] {
        op.verify_structure(&tol).unwrap();
    }
    // The Laguerre fill is approximately unitary: exact matrix elements, but
    // the truncation corner leaks norm, so it must not carry the flag.
    let d = displacement(C64::new(0.0, 1.0), n, DisplacementMethod::Laguerre).unwrap();
    assert!(!d.structure().unitary);
    let lied = OperatorMatrix::from_matrix(d.matrix().clone(), Structure::UNITARY).unwrap();
    assert!(lied.verify_structure(&tol).is_err());
}
