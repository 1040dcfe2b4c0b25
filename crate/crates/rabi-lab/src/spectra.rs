//! Hermitian eigensolution with truncation-convergence control,
//! parity-sector labeling, and degeneracy / SUSY pattern detection.

use std::fmt;

use nalgebra::DMatrix;

use crate::eigen;
use crate::error::{RabiError, Result};
use crate::hamiltonians::{model_hamiltonian, parity_for_kind, ModelKind};
use crate::operators::{ModelParams, OperatorMatrix, C64};

/// Parity-sector tag of an energy level. `Plus` names the F₊ sector,
/// whose P̃-eigenvalue is −1 (note the sign inversion in this convention),
/// and is the sector holding the ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParitySector {
    Plus,
    Minus,
    Mixed,
}

impl ParitySector {
    pub fn as_str(&self) -> &'static str {
        match self {
            ParitySector::Plus => "plus",
            ParitySector::Minus => "minus",
            ParitySector::Mixed => "mixed",
        }
    }

    pub(crate) fn rank(&self) -> u8 {
        match self {
            ParitySector::Plus => 0,
            ParitySector::Minus => 1,
            ParitySector::Mixed => 2,
        }
    }
}

impl fmt::Display for ParitySector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Converged lowest-k spectrum of one Hamiltonian.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    /// Ascending energies.
    pub levels: Vec<f64>,
    /// Per-level sector tag.
    pub parity_sector: Vec<ParitySector>,
    /// Boson truncation at which convergence was accepted.
    pub converged_dim: usize,
    /// Per-level change between the last two truncations.
    pub residual: Vec<f64>,
}

impl SpectrumResult {
    /// E₁ − E₀ when at least two levels were requested.
    pub fn gap(&self) -> Option<f64> {
        (self.levels.len() >= 2).then(|| self.levels[1] - self.levels[0])
    }
}

/// Truncation-growth schedule for [`converged_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationSpec {
    /// Starting boson dimension (≥ 8).
    pub initial_dim: usize,
    /// Multiplicative growth per step (> 1).
    pub growth_factor: f64,
    /// Hard cap on the boson dimension.
    pub max_dim: usize,
    /// Acceptance threshold on the per-level change (energy units).
    pub level_tol: f64,
}

impl TruncationSpec {
    pub fn new(
        initial_dim: usize,
        growth_factor: f64,
        max_dim: usize,
        level_tol: f64,
    ) -> Result<Self> {
        let spec = TruncationSpec {
            initial_dim,
            growth_factor,
            max_dim,
            level_tol,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.initial_dim < 8 {
            return Err(RabiError::InvalidParams(format!(
                "initial_dim must be >= 8, got {}",
                self.initial_dim
            )));
        }
        if self.max_dim < self.initial_dim {
            return Err(RabiError::InvalidParams(format!(
                "max_dim ({}) must be >= initial_dim ({})",
                self.max_dim, self.initial_dim
            )));
        }
        if !self.growth_factor.is_finite() || self.growth_factor <= 1.0 {
            return Err(RabiError::InvalidParams(format!(
                "growth_factor must be > 1, got {}",
                self.growth_factor
            )));
        }
        if !self.level_tol.is_finite() || self.level_tol <= 0.0 {
            return Err(RabiError::InvalidParams(format!(
                "level_tol must be > 0, got {}",
                self.level_tol
            )));
        }
        Ok(())
    }

    /// Same schedule but starting no lower than the displacement heuristic
    /// for these parameters. The convergence controller still has the final
    /// word; this only saves growth rounds in the deep-strong regime.
    pub fn seeded_for(&self, params: &ModelParams) -> TruncationSpec {
        let seed = fock_dim_heuristic(params).min(self.max_dim);
        TruncationSpec {
            initial_dim: self.initial_dim.max(seed),
            ..*self
        }
    }
}

impl Default for TruncationSpec {
    fn default() -> Self {
        TruncationSpec {
            initial_dim: 32,
            growth_factor: 1.5,
            max_dim: 4096,
            level_tol: 1e-9,
        }
    }
}

/// n ≥ 16(g/ω_c)² + 60, derived from the displacement magnitude 2g/ω_c.
pub fn fock_dim_heuristic(params: &ModelParams) -> usize {
    let r = params.g / params.omega_c;
    (16.0 * r * r + 60.0).ceil() as usize
}

/// k smallest eigenvalues (ascending) and orthonormal eigenvectors of a
/// hermitian-flagged operator. Deterministic for identical input.
pub fn eigensolve(h: &OperatorMatrix, k: usize) -> Result<(Vec<f64>, DMatrix<C64>)> {
    if !h.structure().hermitian {
        return Err(RabiError::NotHermitian(h.structure()));
    }
    if k == 0 || k > h.dim() {
        return Err(RabiError::Domain(format!(
            "requested {k} eigenpairs of a {}x{} operator",
            h.dim(),
            h.dim()
        )));
    }
    let eig = eigen::hermitian_eigen(h.matrix());
    let values = eig.values[..k].to_vec();
    let vectors = eig.vectors.columns(0, k).into_owned();
    Ok((values, vectors))
}

/// ⟨v|P|v⟩-based sector tags: `plus` for expectation ≤ −1+ε (the F₊
/// sector), `minus` for ≥ 1−ε, `mixed` otherwise.
pub fn parity_labels(
    vectors: &DMatrix<C64>,
    parity_op: &OperatorMatrix,
    epsilon: f64,
) -> Vec<ParitySector> {
    let pv = parity_op.matrix() * vectors;
    (0..vectors.ncols())
        .map(|k| {
            let expect: f64 = vectors
                .column(k)
                .iter()
                .zip(pv.column(k).iter())
                .map(|(v, w)| (v.conj() * w).re)
                .sum();
            if expect <= -1.0 + epsilon {
                ParitySector::Plus
            } else if expect >= 1.0 - epsilon {
                ParitySector::Minus
            } else {
                ParitySector::Mixed
            }
        })
        .collect()
}

const PARITY_EPSILON: f64 = 1e-6;

/// Enlarge the boson truncation by `growth_factor` until the k lowest levels
/// move by less than `level_tol`, then report. `converged_dim` is the first
/// dimension whose levels are stable against the next growth step; the
/// reported levels come from that larger verification solve.
pub fn converged_spectrum(
    params: &ModelParams,
    kind: ModelKind,
    k: usize,
    trunc: &TruncationSpec,
) -> Result<SpectrumResult> {
    if k == 0 {
        return Err(RabiError::Domain("k must be >= 1".into()));
    }
    trunc.validate()?;
    // 2n >= k so the requested levels exist at the first solve.
    let mut n = trunc.initial_dim.max(k.div_ceil(2)).min(trunc.max_dim);
    let solve = |n: usize| -> Result<(Vec<f64>, DMatrix<C64>)> {
        let h = model_hamiltonian(params, kind, n)?;
        eigensolve(&h, k)
    };
    let (mut levels, mut _vectors) = solve(n)?;
    loop {
        let next = (((n as f64) * trunc.growth_factor).ceil() as usize)
            .max(n + 1)
            .min(trunc.max_dim);
        if next == n {
            // Already at max_dim with no verification step left.
            return Err(RabiError::ConvergenceFailure {
                level_tol: trunc.level_tol,
                max_dim: trunc.max_dim,
                max_residual: f64::INFINITY,
                residuals: vec![f64::INFINITY; k],
            });
        }
        let (next_levels, next_vectors) = solve(next)?;
        let residuals: Vec<f64> = levels
            .iter()
            .zip(&next_levels)
            .map(|(a, b)| (a - b).abs())
            .collect();
        let max_residual = residuals.iter().fold(0.0f64, |m, &r| m.max(r));
        if max_residual < trunc.level_tol {
            let parity = parity_for_kind(kind, next)?;
            let labels = parity_labels(&next_vectors, &parity, PARITY_EPSILON);
            let (levels, labels, residuals) = tie_break(next_levels, labels, residuals);
            return Ok(SpectrumResult {
                levels,
                parity_sector: labels,
                converged_dim: n,
                residual: residuals,
            });
        }
        if next >= trunc.max_dim {
            return Err(RabiError::ConvergenceFailure {
                level_tol: trunc.level_tol,
                max_dim: trunc.max_dim,
                max_residual,
                residuals,
            });
        }
        n = next;
        levels = next_levels;
        _vectors = next_vectors;
    }
}

/// Deterministic ordering for exactly-equal eigenvalues: plus before minus
/// before mixed, then original index. Applied only to bitwise ties so the
/// ascending-levels invariant is untouched.
fn tie_break(
    levels: Vec<f64>,
    labels: Vec<ParitySector>,
    residuals: Vec<f64>,
) -> (Vec<f64>, Vec<ParitySector>, Vec<f64>) {
    let mut order: Vec<usize> = (0..levels.len()).collect();
    order.sort_by(|&a, &b| {
        levels[a]
            .total_cmp(&levels[b])
            .then(labels[a].rank().cmp(&labels[b].rank()))
            .then(a.cmp(&b))
    });
    (
        order.iter().map(|&i| levels[i]).collect(),
        order.iter().map(|&i| labels[i]).collect(),
        order.iter().map(|&i| residuals[i]).collect(),
    )
}

/// Pair gaps E_{2m+1} − E_{2m}, the pairing diagnostic for the deep-strong
/// regime where all eigenstates become nearly two-fold degenerate.
pub fn degeneracy_gaps(result: &SpectrumResult) -> Vec<(usize, f64)> {
    result
        .levels
        .chunks_exact(2)
        .enumerate()
        .map(|(m, pair)| (m, pair[1] - pair[0]))
        .collect()
}

/// Outcome of the N=2 SUSY pattern test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusyReport {
    pub is_susy_n2: bool,
    /// Common spacing of the distinct levels, when the pattern holds.
    pub spacing: Option<f64>,
}

/// True iff level 0 is simple, levels (2m+1, 2m+2) coincide within `tol`,
/// and consecutive distinct levels are equally spaced within `tol` — the
/// Witten-Hamiltonian pattern {E₀, E₀+δ, E₀+δ, E₀+2δ, E₀+2δ, …}.
pub fn detect_susy(result: &SpectrumResult, tol: f64) -> SusyReport {
    detect_susy_levels(&result.levels, tol)
}

pub fn detect_susy_levels(levels: &[f64], tol: f64) -> SusyReport {
    let no = SusyReport {
        is_susy_n2: false,
        spacing: None,
    };
    if levels.len() < 3 {
        return no;
    }
    // Simple ground state.
    if (levels[1] - levels[0]).abs() <= tol {
        return no;
    }
    // Degenerate excited pairs (2m+1, 2m+2); a trailing unpaired level is fine.
    let mut distinct = vec![levels[0]];
    let mut i = 1;
    while i + 1 < levels.len() {
        if (levels[i + 1] - levels[i]).abs() > tol {
            return no;
        }
        distinct.push(0.5 * (levels[i] + levels[i + 1]));
        i += 2;
    }
    if i < levels.len() {
        distinct.push(levels[i]);
    }
    // Equal spacing of the distinct values.
    let spacings: Vec<f64> = distinct.windows(2).map(|w| w[1] - w[0]).collect();
    if spacings.is_empty() {
        return no;
    }
    let mean = spacings.iter().sum::<f64>() / spacings.len() as f64;
    if spacings.iter().any(|s| (s - mean).abs() > tol) {
        return no;
    }
    SusyReport {
        is_susy_n2: true,
        spacing: Some(mean),
    }
}
