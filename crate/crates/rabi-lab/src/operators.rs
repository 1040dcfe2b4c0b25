//! Elementary operators on the truncated single-boson Fock space and the
//! qubit, plus their tensor products.
//!
//! Conventions: the qubit basis is |↑⟩ = (1,0)ᵀ at index 0 and |↓⟩ = (0,1)ᵀ
//! at index 1, so the block operator-matrix identification [[B₁,B₂],[B₃,B₄]]
//! is literal. Boson operators are compressions of the infinite-dimensional
//! operators onto span{|0⟩,…,|n−1⟩}.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigen;
use crate::error::{RabiError, Result};

pub type C64 = Complex64;

/// Physical parameters of one model instance, in units of a reference
/// frequency ω (ħ carries the energy scale; energies are ħ·frequency).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Qubit transition frequency ω_a ≥ 0.
    pub omega_a: f64,
    /// Boson frequency ω_c > 0.
    pub omega_c: f64,
    /// Qubit-boson coupling strength g ≥ 0.
    pub g: f64,
    /// Reduced Planck constant (default 1).
    pub hbar: f64,
    /// Dimensionless coefficient C of the optional A²-term ħCg²(a+a†)².
    /// Zero reproduces the plain quantum Rabi model exactly.
    pub a2_coeff: f64,
}

impl ModelParams {
    pub fn new(omega_a: f64, omega_c: f64, g: f64) -> Result<Self> {
        Self {
            omega_a,
            omega_c,
            g,
            hbar: 1.0,
            a2_coeff: 0.0,
        }
        .validated()
    }

    pub fn with_hbar(mut self, hbar: f64) -> Result<Self> {
        self.hbar = hbar;
        self.validated()
    }

    pub fn with_a2_coeff(mut self, a2_coeff: f64) -> Result<Self> {
        self.a2_coeff = a2_coeff;
        self.validated()
    }

    fn validated(self) -> Result<Self> {
        let fields = [
            (self.omega_a, "omega_a"),
            (self.omega_c, "omega_c"),
            (self.g, "g"),
            (self.hbar, "hbar"),
            (self.a2_coeff, "a2_coeff"),
        ];
        for (v, name) in fields {
            if !v.is_finite() {
                return Err(RabiError::InvalidParams(format!("{name} must be finite")));
            }
        }
        if self.omega_c <= 0.0 {
            return Err(RabiError::InvalidParams(format!(
                "omega_c must be > 0, got {}",
                self.omega_c
            )));
        }
        if self.omega_a < 0.0 {
            return Err(RabiError::InvalidParams(format!(
                "omega_a must be >= 0, got {}",
                self.omega_a
            )));
        }
        if self.g < 0.0 {
            return Err(RabiError::InvalidParams(format!(
                "g must be >= 0, got {}",
                self.g
            )));
        }
        if self.hbar <= 0.0 {
            return Err(RabiError::InvalidParams(format!(
                "hbar must be > 0, got {}",
                self.hbar
            )));
        }
        Ok(self)
    }
}

/// Declared structure of an [`OperatorMatrix`]. The flags are claims made by
/// the builder; [`OperatorMatrix::verify_structure`] checks them numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Structure {
    pub hermitian: bool,
    pub unitary: bool,
    pub diagonal: bool,
}

impl Structure {
    pub const GENERAL: Structure = Structure {
        hermitian: false,
        unitary: false,
        diagonal: false,
    };
    pub const HERMITIAN: Structure = Structure {
        hermitian: true,
        unitary: false,
        diagonal: false,
    };
    pub const UNITARY: Structure = Structure {
        hermitian: false,
        unitary: true,
        diagonal: false,
    };
}

/// Numeric tolerances for structure verification. Defaults follow the
/// operator contracts; override through configuration where needed.
#[derive(Debug, Clone, Copy)]
pub struct StructureTolerances {
    /// max |M − M†| entrywise for hermitian-flagged operators.
    pub hermitian: f64,
    /// max |M†M − I| entrywise for unitary-flagged operators.
    pub unitary: f64,
}

impl Default for StructureTolerances {
    fn default() -> Self {
        StructureTolerances {
            hermitian: 1e-12,
            unitary: 1e-10,
        }
    }
}

/// Dense complex square matrix with declared structure flags.
///
/// Immutable after construction; cheap to share read-only across workers.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    mat: DMatrix<C64>,
    structure: Structure,
}

impl OperatorMatrix {
    pub fn from_matrix(mat: DMatrix<C64>, structure: Structure) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(RabiError::ShapeMismatch(format!(
                "operator matrix must be square, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(OperatorMatrix { mat, structure })
    }

    pub fn identity(dim: usize) -> Self {
        OperatorMatrix {
            mat: DMatrix::identity(dim, dim),
            structure: Structure {
                hermitian: true,
                unitary: true,
                diagonal: true,
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    /// Check the declared flags at the given tolerances.
    pub fn verify_structure(&self, tol: &StructureTolerances) -> Result<()> {
        if self.structure.hermitian {
            let dev = max_modulus(&(&self.mat - self.mat.adjoint()));
            if dev > tol.hermitian {
                return Err(RabiError::StructureViolation(format!(
                    "hermitian flag: max |M - M†| = {dev:e} > {:e}",
                    tol.hermitian
                )));
            }
        }
        if self.structure.unitary {
            let dev = max_modulus(
                &(self.mat.adjoint() * &self.mat
                    - DMatrix::<C64>::identity(self.dim(), self.dim())),
            );
            if dev > tol.unitary {
                return Err(RabiError::StructureViolation(format!(
                    "unitary flag: max |M†M - I| = {dev:e} > {:e}",
                    tol.unitary
                )));
            }
        }
        if self.structure.diagonal {
            for i in 0..self.dim() {
                for j in 0..self.dim() {
                    if i != j && self.mat[(i, j)] != C64::new(0.0, 0.0) {
                        return Err(RabiError::StructureViolation(format!(
                            "diagonal flag: entry ({i},{j}) is nonzero"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix {
            mat: self.mat.adjoint(),
            structure: self.structure,
        }
    }

    /// A·B. Unitarity and diagonality survive products; hermiticity does not.
    pub fn mul(&self, other: &Self) -> Self {
        OperatorMatrix {
            mat: &self.mat * &other.mat,
            structure: Structure {
                hermitian: false,
                unitary: self.structure.unitary && other.structure.unitary,
                diagonal: self.structure.diagonal && other.structure.diagonal,
            },
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        OperatorMatrix {
            mat: &self.mat + &other.mat,
            structure: Structure {
                hermitian: self.structure.hermitian && other.structure.hermitian,
                unitary: false,
                diagonal: self.structure.diagonal && other.structure.diagonal,
            },
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        OperatorMatrix {
            mat: &self.mat - &other.mat,
            structure: Structure {
                hermitian: self.structure.hermitian && other.structure.hermitian,
                unitary: false,
                diagonal: self.structure.diagonal && other.structure.diagonal,
            },
        }
    }

    /// Scale by a real factor (keeps hermiticity, drops unitarity).
    pub fn scale(&self, factor: f64) -> Self {
        OperatorMatrix {
            mat: &self.mat * C64::new(factor, 0.0),
            structure: Structure {
                hermitian: self.structure.hermitian,
                unitary: false,
                diagonal: self.structure.diagonal,
            },
        }
    }

    pub fn scale_complex(&self, factor: C64) -> Self {
        OperatorMatrix {
            mat: &self.mat * factor,
            structure: Structure {
                hermitian: false,
                unitary: false,
                diagonal: self.structure.diagonal,
            },
        }
    }

    /// Commutator [self, other].
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(RabiError::ShapeMismatch(format!(
                "commutator of {}x{} with {}x{}",
                self.dim(),
                self.dim(),
                other.dim(),
                other.dim()
            )));
        }
        let mat = &self.mat * &other.mat - &other.mat * &self.mat;
        OperatorMatrix::from_matrix(mat, Structure::GENERAL)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        max_modulus(&self.mat)
    }

    /// Spectral norm (largest singular value).
    pub fn spectral_norm(&self) -> f64 {
        eigen::spectral_norm(&self.mat)
    }
}

fn max_modulus(mat: &DMatrix<C64>) -> f64 {
    mat.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Annihilation and creation operators (a, a†) on an `n_boson`-dimensional
/// Fock space: a[m, m+1] = √(m+1).
pub fn make_ladder(n_boson: usize) -> Result<(OperatorMatrix, OperatorMatrix)> {
    if n_boson < 2 {
        return Err(RabiError::Dimension {
            min: 2,
            got: n_boson,
        });
    }
    let mut a = DMatrix::<C64>::zeros(n_boson, n_boson);
    for m in 0..n_boson - 1 {
        a[(m, m + 1)] = C64::new(((m + 1) as f64).sqrt(), 0.0);
    }
    let adag = a.adjoint();
    Ok((
        OperatorMatrix::from_matrix(a, Structure::GENERAL)?,
        OperatorMatrix::from_matrix(adag, Structure::GENERAL)?,
    ))
}

/// Position and momentum quadratures
/// x̂ = √(ħ/2ω_c)(a+a†), p̂ = −i√(ħω_c/2)(a−a†).
pub fn make_quadratures(
    n_boson: usize,
    params: &ModelParams,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let (a, adag) = make_ladder(n_boson)?;
    let cx = (params.hbar / (2.0 * params.omega_c)).sqrt();
    let cp = (params.hbar * params.omega_c / 2.0).sqrt();
    let x = a.add(&adag).scale(cx);
    let p = a.sub(&adag).scale_complex(C64::new(0.0, -cp));
    let x = OperatorMatrix::from_matrix(x.into_matrix(), Structure::HERMITIAN)?;
    let p = OperatorMatrix::from_matrix(p.into_matrix(), Structure::HERMITIAN)?;
    Ok((x, p))
}

/// Boson-number parity (−1)^{a†a} = diag((−1)^m).
pub fn number_parity(n_boson: usize) -> Result<OperatorMatrix> {
    if n_boson < 1 {
        return Err(RabiError::Dimension {
            min: 1,
            got: n_boson,
        });
    }
    let mut mat = DMatrix::<C64>::zeros(n_boson, n_boson);
    for m in 0..n_boson {
        mat[(m, m)] = C64::new(if m % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    OperatorMatrix::from_matrix(
        mat,
        Structure {
            hermitian: true,
            unitary: true,
            diagonal: true,
        },
    )
}

/// How to realize the displacement operator D(α) = exp(α a† − α* a).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisplacementMethod {
    /// Diagonalize the truncated anti-Hermitian generator and exponentiate.
    /// Exactly unitary on the truncated space.
    Exponentiate,
    /// Fill entries from the closed-form associated-Laguerre expression.
    /// These are the exact infinite-dimensional matrix elements, so the
    /// result is only approximately unitary (the bottom corner leaks norm),
    /// but every entry is truncation-independent.
    Laguerre,
}

/// Displacement operator on the truncated Fock space.
pub fn displacement(
    alpha: C64,
    n_boson: usize,
    method: DisplacementMethod,
) -> Result<OperatorMatrix> {
    if n_boson < 2 {
        return Err(RabiError::Dimension {
            min: 2,
            got: n_boson,
        });
    }
    match method {
        DisplacementMethod::Exponentiate => displacement_exponentiate(alpha, n_boson),
        DisplacementMethod::Laguerre => displacement_laguerre(alpha, n_boson),
    }
}

fn displacement_exponentiate(alpha: C64, n: usize) -> Result<OperatorMatrix> {
    // K = α a† − α* a is anti-Hermitian; H = −iK is Hermitian and D = e^{iH}.
    let mut h = DMatrix::<C64>::zeros(n, n);
    let minus_i = C64::new(0.0, -1.0);
    for m in 0..n - 1 {
        let s = ((m + 1) as f64).sqrt();
        let lower = minus_i * alpha * s; // row m+1, col m  (from α a†)
        h[(m + 1, m)] = lower;
        h[(m, m + 1)] = lower.conj();
    }
    let eig = eigen::hermitian_eigen(&h);
    let phases: Vec<C64> = eig.values.iter().map(|&l| C64::new(0.0, l).exp()).collect();
    let mut scaled = eig.vectors.clone();
    for (k, phase) in phases.iter().enumerate() {
        let col = scaled.column(k) * *phase;
        scaled.set_column(k, &col);
    }
    let d = scaled * eig.vectors.adjoint();
    OperatorMatrix::from_matrix(d, Structure::UNITARY)
}

fn displacement_laguerre(alpha: C64, n: usize) -> Result<OperatorMatrix> {
    let x = alpha.norm_sqr();
    if x == 0.0 {
        return Ok(OperatorMatrix::identity(n));
    }
    let r = alpha.norm();
    let phase = alpha / r;
    let mut d = DMatrix::<C64>::zeros(n, n);
    // Fill one sub/superdiagonal pair per offset k. Along offset k the
    // magnitudes obey the scaled associated-Laguerre recurrence
    //   e_j = sqrt(j!/(j+k)!) L_j^{(k)}(x) r^k e^{-x/2},
    // which keeps every intermediate at the size of a unitary matrix element.
    for k in 0..n {
        let len = n - k;
        let mut e = vec![0.0f64; len];
        // e_0 = r^k e^{-x/2} / sqrt(k!), assembled in log space.
        let mut log_e0 = k as f64 * r.ln() - 0.5 * x;
        for t in 1..=k {
            log_e0 -= 0.5 * (t as f64).ln();
        }
        e[0] = log_e0.exp();
        if len > 1 {
            let kf = k as f64;
            for j in 0..len - 1 {
                let jf = j as f64;
                let c1 =
                    (2.0 * jf + kf + 1.0 - x) / (jf + 1.0) * ((jf + 1.0) / (jf + kf + 1.0)).sqrt();
                let prev = if j >= 1 {
                    let c2 = (jf + kf) / (jf + 1.0)
                        * ((jf + 1.0) * jf / ((jf + kf + 1.0) * (jf + kf))).sqrt();
                    c2 * e[j - 1]
                } else {
                    0.0
                };
                e[j + 1] = c1 * e[j] - prev;
            }
        }
        let phase_up = phase.powu(k as u32); // ⟨n+k|D|n⟩ carries (α/|α|)^k
        let phase_down = (-phase.conj()).powu(k as u32); // ⟨n|D|n+k⟩ carries (−α*/|α|)^k
        for j in 0..len {
            let m = j + k;
            d[(m, j)] = phase_up * e[j];
            if k > 0 {
                d[(j, m)] = phase_down * e[j];
            }
        }
    }
    OperatorMatrix::from_matrix(d, Structure::GENERAL)
}

/// Kronecker product q ⊗ b of a 2×2 qubit operator with a boson operator:
/// block layout [[q₀₀·b, q₀₁·b],[q₁₀·b, q₁₁·b]], first block row = |↑⟩.
pub fn tensor(q: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    if q.dim() != 2 {
        return Err(RabiError::ShapeMismatch(format!(
            "tensor: qubit factor must be 2x2, got {}x{}",
            q.dim(),
            q.dim()
        )));
    }
    let mat = q.matrix().kronecker(b.matrix());
    let structure = Structure {
        hermitian: q.structure().hermitian && b.structure().hermitian,
        unitary: q.structure().unitary && b.structure().unitary,
        diagonal: q.structure().diagonal && b.structure().diagonal,
    };
    OperatorMatrix::from_matrix(mat, structure)
}

fn qubit(entries: [[C64; 2]; 2], structure: Structure) -> OperatorMatrix {
    let mat = DMatrix::from_row_slice(
        2,
        2,
        &[entries[0][0], entries[0][1], entries[1][0], entries[1][1]],
    );
    OperatorMatrix { mat, structure }
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

pub fn sigma_x() -> OperatorMatrix {
    qubit(
        [[ZERO, ONE], [ONE, ZERO]],
        Structure {
            hermitian: true,
            unitary: true,
            diagonal: false,
        },
    )
}

pub fn sigma_y() -> OperatorMatrix {
    qubit(
        [[ZERO, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), ZERO]],
        Structure {
            hermitian: true,
            unitary: true,
            diagonal: false,
        },
    )
}

pub fn sigma_z() -> OperatorMatrix {
    qubit(
        [[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]],
        Structure {
            hermitian: true,
            unitary: true,
            diagonal: true,
        },
    )
}

/// σ₊ = |↑⟩⟨↓|.
pub fn sigma_plus() -> OperatorMatrix {
    qubit([[ZERO, ONE], [ZERO, ZERO]], Structure::GENERAL)
}

/// σ₋ = |↓⟩⟨↑|.
pub fn sigma_minus() -> OperatorMatrix {
    qubit([[ZERO, ZERO], [ONE, ZERO]], Structure::GENERAL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn ladder_rejects_tiny_dimension() {
        assert!(matches!(
            make_ladder(1),
            Err(RabiError::Dimension { min: 2, got: 1 })
        ));
    }

    #[test]
    fn ladder_matches_definition() {
        let (a, _) = make_ladder(2).unwrap();
        assert_eq!(a.matrix()[(0, 1)], ONE);
        assert_eq!(a.matrix()[(0, 0)], ZERO);
        assert_eq!(a.matrix()[(1, 0)], ZERO);
        assert_eq!(a.matrix()[(1, 1)], ZERO);

        let (a, _) = make_ladder(3).unwrap();
        assert_relative_eq!(a.matrix()[(1, 2)].re, 2.0_f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn number_operator_is_diagonal_ladder_product() {
        let n = 7;
        let (a, adag) = make_ladder(n).unwrap();
        let num = adag.mul(&a);
        for m in 0..n {
            for j in 0..n {
                let expect = if m == j { m as f64 } else { 0.0 };
                assert_relative_eq!(num.matrix()[(m, j)].re, expect, epsilon = 1e-14);
                assert_eq!(num.matrix()[(m, j)].im, 0.0);
            }
        }
    }

    #[test]
    fn quadratures_match_definition() {
        let p1 = ModelParams::new(1.0, 1.0, 0.0).unwrap();
        let (x, _) = make_quadratures(2, &p1).unwrap();
        assert_relative_eq!(
            x.matrix()[(0, 1)].re,
            1.0 / 2.0_f64.sqrt(),
            max_relative = 1e-15
        );

        let p2 = ModelParams::new(1.0, 2.0, 0.0).unwrap();
        let (x, _) = make_quadratures(4, &p2).unwrap();
        assert_relative_eq!(x.matrix()[(0, 1)].re, 0.5, max_relative = 1e-15);
    }

    #[test]
    fn canonical_commutator_on_interior() {
        let params = ModelParams::new(1.0, 1.3, 0.0)
            .unwrap()
            .with_hbar(0.7)
            .unwrap();
        let n = 12;
        let (x, p) = make_quadratures(n, &params).unwrap();
        let comm = x.commutator(&p).unwrap();
        // [x,p] = iħ on the subspace spanned by |0..n-2>; the top corner
        // violates due to truncation.
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let expect = if i == j { c(0.0, params.hbar) } else { ZERO };
                let dev = (comm.matrix()[(i, j)] - expect).norm();
                assert!(dev <= 1e-10 * params.hbar, "deviation {dev} at ({i},{j})");
            }
        }
        let corner = comm.matrix()[(n - 1, n - 1)];
        assert!((corner - c(0.0, params.hbar)).norm() > 0.1 * params.hbar);
    }

    #[test]
    fn number_parity_involution_and_anticommutation() {
        for n in [2usize, 3, 9, 16] {
            let pi = number_parity(n).unwrap();
            let sq = pi.mul(&pi);
            assert_eq!(sq.matrix(), OperatorMatrix::identity(n).matrix());

            let (a, _) = make_ladder(n).unwrap();
            let anti = pi.mul(&a).add(&a.mul(&pi));
            // exact on the truncated space, entrywise zero
            assert_eq!(anti.max_abs(), 0.0);
        }
        let pi = number_parity(3).unwrap();
        assert_eq!(pi.matrix()[(0, 0)], ONE);
        assert_eq!(pi.matrix()[(1, 1)], c(-1.0, 0.0));
        assert_eq!(pi.matrix()[(2, 2)], ONE);
        pi.verify_structure(&StructureTolerances::default())
            .unwrap();
    }

    #[test]
    fn displacement_zero_is_identity() {
        for method in [
            DisplacementMethod::Exponentiate,
            DisplacementMethod::Laguerre,
        ] {
            let d = displacement(ZERO, 6, method).unwrap();
            assert_eq!(d.matrix(), OperatorMatrix::identity(6).matrix());
        }
    }

    #[test]
    fn displacement_vacuum_overlap() {
        // |<0|D(α)|0>| = e^{-|α|²/2}; α = i.
        let alpha = c(0.0, 1.0);
        let expect = (-0.5f64).exp();
        let dl = displacement(alpha, 8, DisplacementMethod::Laguerre).unwrap();
        assert_relative_eq!(dl.matrix()[(0, 0)].norm(), expect, max_relative = 1e-12);
        let de = displacement(alpha, 30, DisplacementMethod::Exponentiate).unwrap();
        assert!((de.matrix()[(0, 0)].norm() - expect).abs() < 1e-6);
    }

    #[test]
    fn displacement_exponentiate_is_unitary() {
        let alpha = c(0.4, -1.1);
        let n = 24;
        let d = displacement(alpha, n, DisplacementMethod::Exponentiate).unwrap();
        d.verify_structure(&StructureTolerances::default()).unwrap();
        let dm = displacement(-alpha, n, DisplacementMethod::Exponentiate).unwrap();
        let prod = d.mul(&dm);
        let dev = prod.sub(&OperatorMatrix::identity(n)).max_abs();
        assert!(dev < 1e-10, "D(α)D(−α) deviates from I by {dev}");
    }

    #[test]
    fn displacement_methods_agree_on_lower_half() {
        let alpha = c(0.0, 2.0);
        let n = 80;
        let dl = displacement(alpha, n, DisplacementMethod::Laguerre).unwrap();
        let de = displacement(alpha, n, DisplacementMethod::Exponentiate).unwrap();
        let h = n / 2;
        let mut dev = 0.0f64;
        for i in 0..h {
            for j in 0..h {
                dev = dev.max((dl.matrix()[(i, j)] - de.matrix()[(i, j)]).norm());
            }
        }
        assert!(dev < 1e-10, "laguerre vs exponentiate deviate by {dev}");
    }

    #[test]
    fn tensor_layout() {
        let (a, _) = make_ladder(3).unwrap();
        let id2 = OperatorMatrix::identity(2);
        let t = tensor(&id2, &a).unwrap();
        assert_eq!(t.dim(), 6);
        assert_eq!(t.matrix()[(0, 1)], ONE);
        assert_eq!(t.matrix()[(3, 4)], ONE);
        assert_eq!(t.matrix()[(0, 4)], ZERO);

        let zi = tensor(&sigma_z(), &OperatorMatrix::identity(3)).unwrap();
        for i in 0..3 {
            assert_eq!(zi.matrix()[(i, i)], ONE);
            assert_eq!(zi.matrix()[(3 + i, 3 + i)], c(-1.0, 0.0));
        }

        let xb = tensor(&sigma_x(), &a).unwrap();
        assert_eq!(xb.matrix()[(0, 4)], ONE); // upper-right block carries b
        assert_eq!(xb.matrix()[(3, 1)], ONE); // lower-left block carries b
        assert_eq!(xb.matrix()[(0, 1)], ZERO);
    }

    #[test]
    fn tensor_rejects_non_qubit_factor() {
        let (a, _) = make_ladder(3).unwrap();
        assert!(matches!(tensor(&a, &a), Err(RabiError::ShapeMismatch(_))));
    }

    #[test]
    fn params_invariants() {
        assert!(ModelParams::new(1.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(-0.1, 1.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, -1.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, 0.0)
            .unwrap()
            .with_hbar(0.0)
            .is_err());
        let p = ModelParams::new(0.5, 1.0, 2.0).unwrap();
        assert_eq!(p.hbar, 1.0);
        assert_eq!(p.a2_coeff, 0.0);
    }

    #[test]
    fn structure_verification_catches_lies() {
        let (a, _) = make_ladder(4).unwrap();
        let lied = OperatorMatrix::from_matrix(a.matrix().clone(), Structure::HERMITIAN).unwrap();
        assert!(matches!(
            lied.verify_structure(&StructureTolerances::default()),
            Err(RabiError::StructureViolation(_))
        ));
    }

    #[test]
    fn builders_pass_their_structure_checks() {
        let tol = StructureTolerances::default();
        let params = ModelParams::new(0.5, 1.0, 1.2).unwrap();
        let (x, p) = make_quadratures(10, &params).unwrap();
        x.verify_structure(&tol).unwrap();
        p.verify_structure(&tol).unwrap();
        number_parity(9).unwrap().verify_structure(&tol).unwrap();
        displacement(c(0.2, 0.7), 32, DisplacementMethod::Exponentiate)
            .unwrap()
            .verify_structure(&tol)
            .unwrap();
        sigma_x().verify_structure(&tol).unwrap();
        sigma_y().verify_structure(&tol).unwrap();
        sigma_z().verify_structure(&tol).unwrap();
    }
}
