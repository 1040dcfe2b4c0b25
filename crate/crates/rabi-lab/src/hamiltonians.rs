//! Hamiltonians and unitaries of the quantum Rabi model on the composite
//! 2n-dimensional space, plus the parity operators.
//!
//! The transformed Hamiltonian is assembled directly from its A and B
//! operators; the three-unitary conjugation U₀U₁U_φ is deliberately *not*
//! used here so truncation artifacts of the unitaries never enter production
//! spectra. Conjugation lives in the test suite as an independent oracle.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{RabiError, Result};
use crate::operators::{
    displacement, make_ladder, number_parity, sigma_minus, sigma_plus, sigma_x, sigma_z, tensor,
    DisplacementMethod, ModelParams, OperatorMatrix, Structure, C64,
};

/// Which Hamiltonian a spectrum request refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// H_QR.
    Qr,
    /// H_QR + ħg²/ω_c.
    QrRen,
    /// H̃_QR, built from the A and B operators.
    Transformed,
    /// H̃_QR + ħg²/ω_c.
    TransformedRen,
    /// H_b = 1 ⊗ ħω_c(a†a + 1/2).
    FreeBoson,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::Qr,
        ModelKind::QrRen,
        ModelKind::Transformed,
        ModelKind::TransformedRen,
        ModelKind::FreeBoson,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::Qr => "qr",
            ModelKind::QrRen => "qr-ren",
            ModelKind::Transformed => "transformed",
            ModelKind::TransformedRen => "transformed-ren",
            ModelKind::FreeBoson => "free",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = RabiError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qr" => Ok(ModelKind::Qr),
            "qr-ren" | "qr_ren" => Ok(ModelKind::QrRen),
            "transformed" => Ok(ModelKind::Transformed),
            "transformed-ren" | "transformed_ren" => Ok(ModelKind::TransformedRen),
            "free" | "free-boson" | "free_boson" => Ok(ModelKind::FreeBoson),
            other => Err(RabiError::Domain(format!(
                "unknown model kind '{other}' (expected qr, qr-ren, transformed, transformed-ren, free)"
            ))),
        }
    }
}

/// ħω_c(a†a + 1/2) as the exact diagonal compression.
fn ho_diagonal(params: &ModelParams, n_boson: usize) -> OperatorMatrix {
    let mut mat = DMatrix::<C64>::zeros(n_boson, n_boson);
    for m in 0..n_boson {
        mat[(m, m)] = C64::new(params.hbar * params.omega_c * (m as f64 + 0.5), 0.0);
    }
    OperatorMatrix::from_matrix(
        mat,
        Structure {
            hermitian: true,
            unitary: false,
            diagonal: true,
        },
    )
    .expect("square by construction")
}

/// Exact compression of (a+a†)²: diagonal 2m+1, (m, m±2) entries
/// √((m+1)(m+2)). This is P_n (a+a†)² P_n, not the square of the truncated
/// matrix (whose last diagonal entry would be wrong).
fn quadrature_squared(n_boson: usize) -> OperatorMatrix {
    let mut mat = DMatrix::<C64>::zeros(n_boson, n_boson);
    for m in 0..n_boson {
        mat[(m, m)] = C64::new(2.0 * m as f64 + 1.0, 0.0);
        if m + 2 < n_boson {
            let v = C64::new((((m + 1) * (m + 2)) as f64).sqrt(), 0.0);
            mat[(m, m + 2)] = v;
            mat[(m + 2, m)] = v;
        }
    }
    OperatorMatrix::from_matrix(mat, Structure::HERMITIAN).expect("square by construction")
}

/// Quantum Rabi Hamiltonian
/// H_QR = (ħω_a/2)σ_z ⊗ 1 + 1 ⊗ ħω_c(a†a+1/2) + ħg σ_x ⊗ (a+a†),
/// plus the optional A²-term ħCg² · 1 ⊗ (a+a†)².
pub fn h_qr(params: &ModelParams, n_boson: usize) -> Result<OperatorMatrix> {
    let (a, adag) = make_ladder(n_boson)?;
    let id_b = OperatorMatrix::identity(n_boson);
    let q = a.add(&adag);

    let mut h = tensor(&sigma_z(), &id_b)?.scale(params.hbar * params.omega_a / 2.0);
    h = h.add(&tensor(
        &OperatorMatrix::identity(2),
        &ho_diagonal(params, n_boson),
    )?);
    h = h.add(&tensor(&sigma_x(), &q)?.scale(params.hbar * params.g));
    if params.a2_coeff != 0.0 {
        let a2 = tensor(&OperatorMatrix::identity(2), &quadrature_squared(n_boson))?
            .scale(params.hbar * params.a2_coeff * params.g * params.g);
        h = h.add(&a2);
    }
    OperatorMatrix::from_matrix(h.into_matrix(), Structure::HERMITIAN)
}

/// Renormalized quantum Rabi Hamiltonian H_QR + ħg²/ω_c.
pub fn h_qr_ren(params: &ModelParams, n_boson: usize) -> Result<OperatorMatrix> {
    let h = h_qr(params, n_boson)?;
    let shift = OperatorMatrix::identity(2 * n_boson)
        .scale(params.hbar * params.g * params.g / params.omega_c);
    OperatorMatrix::from_matrix(h.add(&shift).into_matrix(), Structure::HERMITIAN)
}

/// Free-boson Hamiltonian H_b = 1 ⊗ ħω_c(a†a + 1/2).
pub fn h_free_boson(params: &ModelParams, n_boson: usize) -> Result<OperatorMatrix> {
    if n_boson < 2 {
        return Err(RabiError::Dimension {
            min: 2,
            got: n_boson,
        });
    }
    let t = tensor(&OperatorMatrix::identity(2), &ho_diagonal(params, n_boson))?;
    OperatorMatrix::from_matrix(
        t.into_matrix(),
        Structure {
            hermitian: true,
            unitary: false,
            diagonal: true,
        },
    )
}

/// U₀ = (1/√2)[[1,−1],[1,1]], acting on the qubit only.
pub fn u0() -> OperatorMatrix {
    let s = 1.0 / 2.0_f64.sqrt();
    let mat = DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(s, 0.0),
            C64::new(-s, 0.0),
            C64::new(s, 0.0),
            C64::new(s, 0.0),
        ],
    );
    OperatorMatrix::from_matrix(mat, Structure::UNITARY).expect("square by construction")
}

/// U₁ = 1 ⊗ exp(−iπ/2 · a†a). The phases cycle through {1, −i, −1, i}
/// exactly, so the matrix is built without trigonometric rounding.
pub fn u1(n_boson: usize) -> Result<OperatorMatrix> {
    if n_boson < 2 {
        return Err(RabiError::Dimension {
            min: 2,
            got: n_boson,
        });
    }
    let mut v = DMatrix::<C64>::zeros(n_boson, n_boson);
    for m in 0..n_boson {
        v[(m, m)] = match m % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, -1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, 1.0),
        };
    }
    let v = OperatorMatrix::from_matrix(
        v,
        Structure {
            hermitian: false,
            unitary: true,
            diagonal: true,
        },
    )?;
    tensor(&OperatorMatrix::identity(2), &v)
}

/// U_φ = block-diag(e^{−i(g/ω_c)(a†+a)}, e^{+i(g/ω_c)(a†+a)})
///     = block-diag(D(−ig/ω_c), D(+ig/ω_c)), exactly unitary.
pub fn u_phi(params: &ModelParams, n_boson: usize) -> Result<OperatorMatrix> {
    let c = params.g / params.omega_c;
    let d_up = displacement(C64::new(0.0, -c), n_boson, DisplacementMethod::Exponentiate)?;
    let d_dn = displacement(C64::new(0.0, c), n_boson, DisplacementMethod::Exponentiate)?;
    let up = tensor(
        &OperatorMatrix::from_matrix(
            DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
            ])),
            Structure::GENERAL,
        )?,
        &d_up,
    )?;
    let dn = tensor(
        &OperatorMatrix::from_matrix(
            DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
            ])),
            Structure::GENERAL,
        )?,
        &d_dn,
    )?;
    OperatorMatrix::from_matrix(up.add(&dn).into_matrix(), Structure::UNITARY)
}

/// Transformed quantum Rabi Hamiltonian H̃ = A − (ħω_a/2)B, with
/// A = 1 ⊗ ħω_c(a†a+1/2) − ħg²/ω_c and B's off-diagonal blocks
/// exp(±i g√(8/ħω_c) x̂) = D(±2ig/ω_c), filled from the Laguerre closed form
/// so the matrix elements are truncation-independent.
pub fn h_transformed(
    params: &ModelParams,
    n_boson: usize,
    renormalized: bool,
) -> Result<OperatorMatrix> {
    if params.a2_coeff != 0.0 {
        return Err(RabiError::Domain(
            "the transformed model is defined for a2_coeff = 0 only; \
             the A,B decomposition has no A²-term"
                .into(),
        ));
    }
    let c = params.g / params.omega_c;
    let d = displacement(
        C64::new(0.0, 2.0 * c),
        n_boson,
        DisplacementMethod::Laguerre,
    )?;
    // B = σ₊ ⊗ D(2ic) + σ₋ ⊗ D(2ic)†, exactly hermitian entrywise.
    let b = tensor(&sigma_plus(), &d)?.add(&tensor(&sigma_minus(), &d.adjoint())?);

    let self_energy = params.hbar * params.g * params.g / params.omega_c;
    let mut a_op = tensor(&OperatorMatrix::identity(2), &ho_diagonal(params, n_boson))?;
    if !renormalized {
        a_op = a_op.sub(&OperatorMatrix::identity(2 * n_boson).scale(self_energy));
    }
    let h = a_op.sub(&b.scale(params.hbar * params.omega_a / 2.0));
    OperatorMatrix::from_matrix(h.into_matrix(), Structure::HERMITIAN)
}

/// Parity operator P = σ_z(−1)^{a†a}.
pub fn parity(n_boson: usize) -> Result<OperatorMatrix> {
    let t = tensor(&sigma_z(), &number_parity(n_boson)?)?;
    OperatorMatrix::from_matrix(
        t.into_matrix(),
        Structure {
            hermitian: true,
            unitary: true,
            diagonal: true,
        },
    )
}

/// Transformed parity operator P̃ = −σ_x(−1)^{a†a}.
pub fn parity_transformed(n_boson: usize) -> Result<OperatorMatrix> {
    let t = tensor(&sigma_x(), &number_parity(n_boson)?)?.scale(-1.0);
    OperatorMatrix::from_matrix(
        t.into_matrix(),
        Structure {
            hermitian: true,
            unitary: true,
            diagonal: false,
        },
    )
}

/// Spectral norm of AB − BA.
pub fn commutator_norm(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<f64> {
    Ok(a.commutator(b)?.spectral_norm())
}

/// Hamiltonian dispatch used by the spectrum machinery and the CLI.
pub fn model_hamiltonian(
    params: &ModelParams,
    kind: ModelKind,
    n_boson: usize,
) -> Result<OperatorMatrix> {
    match kind {
        ModelKind::Qr => h_qr(params, n_boson),
        ModelKind::QrRen => h_qr_ren(params, n_boson),
        ModelKind::Transformed => h_transformed(params, n_boson, false),
        ModelKind::TransformedRen => h_transformed(params, n_boson, true),
        ModelKind::FreeBoson => h_free_boson(params, n_boson),
    }
}

/// The parity operator that commutes with the given model kind: P for the
/// untransformed Hamiltonians, P̃ for the transformed ones and the free boson.
pub fn parity_for_kind(kind: ModelKind, n_boson: usize) -> Result<OperatorMatrix> {
    match kind {
        ModelKind::Qr | ModelKind::QrRen => parity(n_boson),
        ModelKind::Transformed | ModelKind::TransformedRen | ModelKind::FreeBoson => {
            parity_transformed(n_boson)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen;
    use approx::assert_relative_eq;

    fn lowest(h: &OperatorMatrix, k: usize) -> Vec<f64> {
        let mut vals = eigen::hermitian_eigenvalues(h.matrix());
        vals.truncate(k);
        vals
    }

    #[test]
    fn h_qr_decoupled_spectrum() {
        // g = 0, ω_a = ω_c = 1: levels ħω_c(m+1/2) ± ħω_a/2 = {0,1,1,2,2,3}.
        let params = ModelParams::new(1.0, 1.0, 0.0).unwrap();
        let h = h_qr(&params, 8).unwrap();
        let vals = lowest(&h, 6);
        let expect = [0.0, 1.0, 1.0, 2.0, 2.0, 3.0];
        for (v, e) in vals.iter().zip(expect) {
            assert_relative_eq!(*v, e, epsilon = 1e-12);
        }
    }

    #[test]
    fn h_qr_polaron_spectrum() {
        // ω_a = 0: exact displaced-oscillator spectrum m + 1/2 − g²/ω_c,
        // each doubly degenerate.
        let params = ModelParams::new(0.0, 1.0, 1.0).unwrap();
        let h = h_qr(&params, 120).unwrap();
        let vals = lowest(&h, 4);
        let expect = [-0.5, -0.5, 0.5, 0.5];
        for (v, e) in vals.iter().zip(expect) {
            assert!((v - e).abs() < 1e-8, "got {v}, want {e}");
        }
    }

    #[test]
    fn h_qr_commutes_with_parity_exactly() {
        for (wa, g, a2) in [(0.7, 1.3, 0.0), (1.0, 0.4, 0.5), (0.0, 2.0, 0.0)] {
            let params = ModelParams::new(wa, 1.0, g)
                .unwrap()
                .with_a2_coeff(a2)
                .unwrap();
            let h = h_qr(&params, 24).unwrap();
            let p = parity(24).unwrap();
            let comm = h.commutator(&p).unwrap();
            assert_eq!(comm.max_abs(), 0.0, "[H_QR, P] must vanish entrywise");
        }
    }

    #[test]
    fn renormalization_is_an_exact_shift() {
        let params = ModelParams::new(0.5, 1.0, 1.5).unwrap();
        let n = 60;
        let h = h_qr(&params, n).unwrap();
        let hr = h_qr_ren(&params, n).unwrap();
        let shift = params.g * params.g / params.omega_c;
        let va = lowest(&h, 10);
        let vb = lowest(&hr, 10);
        for (a, b) in va.iter().zip(&vb) {
            assert_relative_eq!(a + shift, *b, epsilon = 1e-10);
        }

        // g = 0: identical.
        let p0 = ModelParams::new(0.5, 1.0, 0.0).unwrap();
        assert_eq!(
            h_qr(&p0, 12).unwrap().matrix(),
            h_qr_ren(&p0, 12).unwrap().matrix()
        );

        // ω_a = 0, g = 1: ground ≈ +1/2, doubly degenerate.
        let p = ModelParams::new(0.0, 1.0, 1.0).unwrap();
        let vals = lowest(&h_qr_ren(&p, 120).unwrap(), 2);
        assert!((vals[0] - 0.5).abs() < 1e-8);
        assert!((vals[1] - 0.5).abs() < 1e-8);
    }

    #[test]
    fn free_boson_ladder_and_symmetries() {
        let params = ModelParams::new(0.5, 1.0, 2.0).unwrap();
        let n = 10;
        let hb = h_free_boson(&params, n).unwrap();
        let vals = lowest(&hb, 6);
        let expect = [0.5, 0.5, 1.5, 1.5, 2.5, 2.5];
        for (v, e) in vals.iter().zip(expect) {
            assert_relative_eq!(*v, e, epsilon = 1e-14);
        }
        let minus_sx = tensor(&sigma_x(), &OperatorMatrix::identity(n))
            .unwrap()
            .scale(-1.0);
        assert_eq!(hb.commutator(&minus_sx).unwrap().max_abs(), 0.0);
        let pt = parity_transformed(n).unwrap();
        assert_eq!(hb.commutator(&pt).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn u0_is_unitary_and_matches_definition() {
        let u = u0();
        u.verify_structure(&Default::default()).unwrap();
        let s = 1.0 / 2.0_f64.sqrt();
        assert_relative_eq!(u.matrix()[(0, 0)].re, s, max_relative = 1e-15);
        assert_relative_eq!(u.matrix()[(0, 1)].re, -s, max_relative = 1e-15);
        let prod = u.adjoint().mul(&u);
        let dev = prod.sub(&OperatorMatrix::identity(2)).max_abs();
        assert!(dev < 1e-15);
    }

    #[test]
    fn u1_fourier_rotates_x_into_p() {
        // U₁† x̂ U₁ = p̂/ω_c, exact on the whole truncated space because the
        // boson factor of U₁ is diagonal.
        let params = ModelParams::new(1.0, 1.0, 0.0).unwrap();
        let n = 16;
        let (x, p) = crate::operators::make_quadratures(n, &params).unwrap();
        let u = u1(n).unwrap();
        let xt = tensor(&OperatorMatrix::identity(2), &x).unwrap();
        let pt = tensor(&OperatorMatrix::identity(2), &p).unwrap();
        let rotated = u.adjoint().mul(&xt).mul(&u);
        let dev = rotated.sub(&pt.scale(1.0 / params.omega_c)).max_abs();
        assert!(dev < 1e-15, "U₁†xU₁ deviates from p/ω_c by {dev}");
    }

    #[test]
    fn u_phi_reduces_to_identity_at_zero_coupling() {
        let params = ModelParams::new(1.0, 1.0, 0.0).unwrap();
        let u = u_phi(&params, 8).unwrap();
        let dev = u.sub(&OperatorMatrix::identity(16)).max_abs();
        assert!(dev < 1e-14);
    }

    #[test]
    fn transformed_decoupled_spectrum() {
        // g = 0, ω_a = ω_c = 1: H̃ = H_ho − σ_x/2 with levels {0,1,1,2,2,…}.
        let params = ModelParams::new(1.0, 1.0, 0.0).unwrap();
        let h = h_transformed(&params, 10, false).unwrap();
        let vals = lowest(&h, 5);
        let expect = [0.0, 1.0, 1.0, 2.0, 2.0];
        for (v, e) in vals.iter().zip(expect) {
            assert_relative_eq!(*v, e, epsilon = 1e-12);
        }
    }

    #[test]
    fn transformed_commutes_with_transformed_parity_exactly() {
        for g in [0.0, 0.5, 1.7] {
            let params = ModelParams::new(0.9, 1.0, g).unwrap();
            let h = h_transformed(&params, 32, false).unwrap();
            let pt = parity_transformed(32).unwrap();
            assert_eq!(h.commutator(&pt).unwrap().max_abs(), 0.0);
        }
    }

    #[test]
    fn transformed_rejects_a2_term() {
        let params = ModelParams::new(1.0, 1.0, 1.0)
            .unwrap()
            .with_a2_coeff(0.5)
            .unwrap();
        assert!(matches!(
            h_transformed(&params, 16, false),
            Err(RabiError::Domain(_))
        ));
    }

    #[test]
    fn transformed_breaks_bare_sigma_x_symmetry_at_finite_coupling() {
        let params = ModelParams::new(1.0, 1.0, 0.8).unwrap();
        let h = h_transformed(&params, 24, true).unwrap();
        let minus_sx = tensor(&sigma_x(), &OperatorMatrix::identity(24))
            .unwrap()
            .scale(-1.0);
        let norm = commutator_norm(&h, &minus_sx).unwrap();
        assert!(norm > 1e-3, "[-σ_x, H̃_ren] should not vanish, got {norm}");
    }

    #[test]
    fn parity_operators_square_to_identity() {
        let n = 12;
        for op in [parity(n).unwrap(), parity_transformed(n).unwrap()] {
            op.verify_structure(&Default::default()).unwrap();
            let sq = op.mul(&op);
            assert_eq!(sq.sub(&OperatorMatrix::identity(2 * n)).max_abs(), 0.0);
        }
    }

    #[test]
    fn transformed_parity_action_on_sigma_x_vacuum() {
        // P̃ (|σ_x=+1⟩ ⊗ |0⟩) = −(|σ_x=+1⟩ ⊗ |0⟩).
        let n = 6;
        let pt = parity_transformed(n).unwrap();
        let mut v = nalgebra::DVector::<C64>::zeros(2 * n);
        let s = C64::new(1.0 / 2.0_f64.sqrt(), 0.0);
        v[0] = s; // |↑,0⟩
        v[n] = s; // |↓,0⟩
        let w = pt.matrix() * &v;
        let dev = (&w + &v).norm();
        assert!(dev < 1e-15, "P̃Ω̃₊ ≠ −Ω̃₊, deviation {dev}");
    }

    #[test]
    fn commutator_norm_basics() {
        let n = 8;
        let id = OperatorMatrix::identity(2 * n);
        let params = ModelParams::new(0.6, 1.0, 0.9).unwrap();
        let h = h_qr(&params, n).unwrap();
        assert_eq!(commutator_norm(&id, &h).unwrap(), 0.0);
        assert_eq!(commutator_norm(&h, &parity(n).unwrap()).unwrap(), 0.0);
        let (a, _) = make_ladder(3).unwrap();
        assert!(matches!(
            commutator_norm(&a, &OperatorMatrix::identity(5)),
            Err(RabiError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn model_kind_round_trips_through_strings() {
        for kind in ModelKind::ALL {
            assert_eq!(kind.as_str().parse::<ModelKind>().unwrap(), kind);
        }
        assert!("nope".parse::<ModelKind>().is_err());
    }
}
