//! Instanton observables — tunneling gap, Euclidean action, G(g), q₀, E±
//! via heat kernel, resolvent distance — and the LMT1/LMT2 sweep drivers.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::eigen;
use crate::error::{RabiError, Result};
use crate::hamiltonians::{h_free_boson, h_transformed, ModelKind};
use crate::operators::{ModelParams, C64};
use crate::spectra::{converged_spectrum, SpectrumResult, TruncationSpec};

/// A value that may be the distinguished infinite-action signal. Never a
/// floating-point overflow: the degenerate limit is encoded explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ActionValue {
    Finite(f64),
    Infinite,
}

impl ActionValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ActionValue::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            ActionValue::Finite(v) => Some(*v),
            ActionValue::Infinite => None,
        }
    }
}

/// Instanton-observable report for one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionReport {
    pub e0: f64,
    pub e1: f64,
    /// E₁ − E₀.
    pub gap: f64,
    /// Euclidean action −ħ·ln(gap/ħω_a); infinite in the degenerate limit.
    pub s_euc: ActionValue,
    /// G(g) = s_euc·ω_c²/(2ħg²) − 1; undefined at g = 0 or infinite action.
    pub g_of_g: Option<f64>,
    /// −ħg²/ω_c.
    pub self_energy: f64,
    /// Well half-separation for the quartic double well, when a coefficient
    /// was supplied and the action is finite and nonnegative.
    pub q0: Option<ActionValue>,
    pub c_dw: Option<f64>,
    /// Set when gap > ħω_a made the reported action negative.
    pub negative_action: bool,
    /// Set when the gap (or ω_a) vanished and the action is the infinite signal.
    pub gap_zero: bool,
}

/// Sweep family: LMT1 drives g → ∞ at fixed frequencies; LMT2 drives r → 1
/// along a joint schedule ω_a(r) → 0, g(r) > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Lmt1,
    Lmt2,
}

/// One tabulated sweep point. For LMT1 `value` is g itself; for LMT2 it is r
/// with the scheduled ω_a(r), g(r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub omega_a: f64,
    pub g: f64,
}

/// Tabulated sequence of parameter points realizing LMT1 or LMT2.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSchedule {
    pub mode: SweepMode,
    pub points: Vec<SweepPoint>,
    pub omega_c: f64,
    pub hbar: f64,
    pub a2_coeff: f64,
}

impl SweepSchedule {
    /// Uniform LMT1 grid g ∈ [g_start, g_end] at fixed frequencies.
    pub fn lmt1(
        g_start: f64,
        g_end: f64,
        steps: usize,
        omega_a: f64,
        omega_c: f64,
        hbar: f64,
    ) -> Result<Self> {
        if steps < 2 {
            return Err(RabiError::InvalidParams(format!(
                "sweep needs at least 2 steps, got {steps}"
            )));
        }
        if !(g_end >= g_start && g_start >= 0.0) {
            return Err(RabiError::InvalidParams(format!(
                "need 0 <= g_start <= g_end, got [{g_start}, {g_end}]"
            )));
        }
        let points = (0..steps)
            .map(|i| {
                let t = i as f64 / (steps - 1) as f64;
                let g = g_start + t * (g_end - g_start);
                SweepPoint {
                    value: g,
                    omega_a,
                    g,
                }
            })
            .collect();
        let schedule = SweepSchedule {
            mode: SweepMode::Lmt1,
            points,
            omega_c,
            hbar,
            a2_coeff: 0.0,
        };
        schedule.check_params()?;
        Ok(schedule)
    }

    /// Default LMT2 schedule: ω_a(r) = ω_a(0)·(1−r), g(r) = 3ω_c·r, on a
    /// uniform 61-point r grid. The endpoint conditions only constrain the
    /// boundary; the linear interior is a declared choice.
    pub fn lmt2_default(omega_a0: f64, omega_c: f64, hbar: f64) -> Result<Self> {
        let steps = 61;
        let g_max = 3.0 * omega_c;
        let points = (0..steps)
            .map(|i| {
                let r = i as f64 / (steps - 1) as f64;
                SweepPoint {
                    value: r,
                    omega_a: omega_a0 * (1.0 - r),
                    g: g_max * r,
                }
            })
            .collect();
        Self::lmt2_from_points(points, omega_c, hbar)
    }

    /// LMT2 schedule from explicit (r, ω_a(r), g(r)) rows, validated against
    /// the boundary conditions on the tabulated range.
    pub fn lmt2_from_points(points: Vec<SweepPoint>, omega_c: f64, hbar: f64) -> Result<Self> {
        if points.len() < 2 {
            return Err(RabiError::InvalidParams(
                "LMT2 schedule needs at least 2 points".into(),
            ));
        }
        for p in &points {
            if !(0.0..=1.0).contains(&p.value) {
                return Err(RabiError::InvalidParams(format!(
                    "LMT2 schedule: r must lie in [0, 1], got {}",
                    p.value
                )));
            }
            if p.value < 1.0 && p.omega_a <= 0.0 {
                return Err(RabiError::InvalidParams(format!(
                    "LMT2 schedule violates omega_a(r) > 0 for r < 1 at r = {}",
                    p.value
                )));
            }
            if p.value >= 1.0 && p.omega_a != 0.0 {
                return Err(RabiError::InvalidParams(format!(
                    "LMT2 schedule violates omega_a(1) = 0: omega_a = {}",
                    p.omega_a
                )));
            }
            if p.value == 0.0 && p.g != 0.0 {
                return Err(RabiError::InvalidParams(format!(
                    "LMT2 schedule violates g(0) = 0: g = {}",
                    p.g
                )));
            }
            if p.value > 0.0 && p.g <= 0.0 {
                return Err(RabiError::InvalidParams(format!(
                    "LMT2 schedule violates g(r) > 0 for r > 0 at r = {}",
                    p.value
                )));
            }
        }
        let schedule = SweepSchedule {
            mode: SweepMode::Lmt2,
            points,
            omega_c,
            hbar,
            a2_coeff: 0.0,
        };
        schedule.check_params()?;
        Ok(schedule)
    }

    pub fn with_a2_coeff(mut self, a2_coeff: f64) -> Self {
        self.a2_coeff = a2_coeff;
        self
    }

    fn check_params(&self) -> Result<()> {
        // Every point must yield valid ModelParams.
        for (i, _) in self.points.iter().enumerate() {
            self.params_at(i)?;
        }
        Ok(())
    }

    pub fn params_at(&self, index: usize) -> Result<ModelParams> {
        let p = self.points[index];
        ModelParams::new(p.omega_a, self.omega_c, p.g)?
            .with_hbar(self.hbar)?
            .with_a2_coeff(self.a2_coeff)
    }
}

/// Heat-kernel evaluation schedule for the E± constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatKernelSpec {
    /// Starting inverse-energy scale β > 0.
    pub beta: f64,
    /// Multiplicative growth per evaluation (> 1).
    pub beta_growth: f64,
    /// Acceptance threshold on the relative change of E±.
    pub rel_tol: f64,
}

impl Default for HeatKernelSpec {
    fn default() -> Self {
        HeatKernelSpec {
            beta: 1.0,
            beta_growth: 2.0,
            rel_tol: 1e-7,
        }
    }
}

impl HeatKernelSpec {
    fn validate(&self) -> Result<()> {
        if !self.beta.is_finite() || self.beta <= 0.0 {
            return Err(RabiError::InvalidParams(format!(
                "beta must be > 0, got {}",
                self.beta
            )));
        }
        if !self.beta_growth.is_finite() || self.beta_growth <= 1.0 {
            return Err(RabiError::InvalidParams(format!(
                "beta_growth must be > 1, got {}",
                self.beta_growth
            )));
        }
        if !self.rel_tol.is_finite() || self.rel_tol <= 0.0 {
            return Err(RabiError::InvalidParams(format!(
                "rel_tol must be > 0, got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

/// Self-energy −ħg²/ω_c generated by completing the square of the displaced
/// oscillator.
pub fn self_energy(params: &ModelParams) -> f64 {
    -params.hbar * params.g * params.g / params.omega_c
}

/// (E₀, E₁, gap) of the quantum Rabi Hamiltonian at converged truncation.
pub fn tunneling_gap(params: &ModelParams, trunc: &TruncationSpec) -> Result<(f64, f64, f64)> {
    let result = converged_spectrum(params, ModelKind::Qr, 2, &trunc.seeded_for(params))?;
    Ok((
        result.levels[0],
        result.levels[1],
        result.levels[1] - result.levels[0],
    ))
}

/// S_euc = −ħ·ln(gap/ħω_a). A vanishing gap (or vanishing ω_a) is the
/// infinite-action signal; gap > ħω_a yields a negative action, reported
/// as-is and flagged by the caller.
pub fn euclidean_action_from_gap(gap: f64, params: &ModelParams) -> ActionValue {
    let scale = params.hbar * params.omega_a;
    if gap <= 0.0 || scale <= 0.0 {
        return ActionValue::Infinite;
    }
    let ratio = gap / scale;
    if ratio == 0.0 {
        return ActionValue::Infinite;
    }
    ActionValue::Finite(-params.hbar * ratio.ln())
}

/// G = s_euc·ω_c²/(2ħg²) − 1, inverting the Euclidean-action expression.
pub fn g_function(s_euc: f64, params: &ModelParams) -> Result<f64> {
    if params.g == 0.0 {
        return Err(RabiError::UndefinedInput(
            "G(g) is undefined at g = 0".into(),
        ));
    }
    Ok(s_euc * params.omega_c * params.omega_c / (2.0 * params.hbar * params.g * params.g) - 1.0)
}

/// Predicted renormalized pair (E₀^ren, E₁^ren) = ħω_c/2 ∓ (ħω_a/2)e^{−s/ħ}.
pub fn predicted_levels(s_euc: &ActionValue, params: &ModelParams) -> (f64, f64) {
    let center = params.hbar * params.omega_c / 2.0;
    let half_split = match s_euc {
        ActionValue::Infinite => 0.0,
        ActionValue::Finite(s) => params.hbar * params.omega_a / 2.0 * (-s / params.hbar).exp(),
    };
    (center - half_split, center + half_split)
}

/// Well half-separation q₀ = (3·s_euc/(4√(2c_dw)))^{1/3} for the quartic
/// double well V(x) = c_dw(x² − q₀²)².
pub fn minima_separation(s_euc: f64, c_dw: f64, _params: &ModelParams) -> Result<f64> {
    if !c_dw.is_finite() || c_dw <= 0.0 {
        return Err(RabiError::Domain(format!(
            "quartic coefficient must be > 0, got {c_dw}"
        )));
    }
    if s_euc < 0.0 {
        return Err(RabiError::Domain(format!(
            "minima separation needs s_euc >= 0, got {s_euc}"
        )));
    }
    Ok((3.0 * s_euc / (4.0 * (2.0 * c_dw).sqrt())).cbrt())
}

/// The exact P̃ eigenbasis, column m of the `plus` factor spanning F₊
/// (P̃-eigenvalue −1) and of the `minus` factor spanning F₋ (+1):
/// w_m^± = (|↑,m⟩ ± (−1)^m|↓,m⟩)/√2 up to the sector sign pattern.
fn parity_sector_bases(n_boson: usize) -> (DMatrix<C64>, DMatrix<C64>) {
    let s = 1.0 / 2.0_f64.sqrt();
    let mut plus = DMatrix::<C64>::zeros(2 * n_boson, n_boson);
    let mut minus = DMatrix::<C64>::zeros(2 * n_boson, n_boson);
    for m in 0..n_boson {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        plus[(m, m)] = C64::new(s, 0.0);
        plus[(n_boson + m, m)] = C64::new(sign * s, 0.0);
        minus[(m, m)] = C64::new(s, 0.0);
        minus[(n_boson + m, m)] = C64::new(-sign * s, 0.0);
    }
    (plus, minus)
}

/// −(1/β)·ln Σ_k c²_k e^{−βλ_k} at increasing β until the change drops below
/// `rel_tol` (relative to max(|E|, scale)). The Boltzmann sum is taken in
/// shifted log space so no overflow can occur at large β.
fn heat_kernel_energy(
    values: &[f64],
    overlaps: &[f64],
    hk: &HeatKernelSpec,
    scale: f64,
) -> Result<f64> {
    if overlaps[0] < 1e-12 {
        return Err(RabiError::IllConditioned(format!(
            "Omega overlap with the sector ground state is {:.3e} (< 1e-12)",
            overlaps[0]
        )));
    }
    let lam0 = values[0];
    let energy_at = |beta: f64| -> f64 {
        let sum: f64 = overlaps
            .iter()
            .zip(values)
            .map(|(c2, &lam)| c2 * (-beta * (lam - lam0)).exp())
            .sum();
        lam0 - sum.ln() / beta
    };
    let mut beta = hk.beta;
    let mut prev = energy_at(beta);
    for _ in 0..200 {
        beta *= hk.beta_growth;
        let next = energy_at(beta);
        if (next - prev).abs() <= hk.rel_tol * next.abs().max(scale) {
            return Ok(next);
        }
        prev = next;
    }
    Err(RabiError::ConvergenceFailure {
        level_tol: hk.rel_tol,
        max_dim: 0,
        max_residual: f64::INFINITY,
        residuals: vec![],
    })
}

/// E± = −(1/β)·ln⟨Ω̃±|e^{−βH̃±}|Ω̃±⟩ in the β → ∞ limit. The matrix
/// exponential goes through the eigendecomposition of H̃ restricted to the
/// exact parity sectors, realizing the H̃ = H̃₊ ⊕ H̃₋ decomposition.
pub fn e_pm_heat_kernel(
    params: &ModelParams,
    trunc: &TruncationSpec,
    hk: &HeatKernelSpec,
) -> Result<(f64, f64)> {
    hk.validate()?;
    let seeded = trunc.seeded_for(params);
    let reference = converged_spectrum(params, ModelKind::Transformed, 2, &seeded)?;
    let n = ((reference.converged_dim as f64) * seeded.growth_factor).ceil() as usize;
    let h = h_transformed(params, n, false)?;
    let (w_plus, w_minus) = parity_sector_bases(n);

    let mut out = [0.0f64; 2];
    for (slot, w) in [(0usize, &w_plus), (1usize, &w_minus)] {
        let h_sector = w.adjoint() * h.matrix() * w;
        let eig = eigen::hermitian_eigen(&h_sector);
        // Ω̃± is exactly the m = 0 sector basis vector, so the overlaps are
        // the first row of the eigenvector matrix.
        let overlaps: Vec<f64> = (0..n).map(|k| eig.vectors[(0, k)].norm_sqr()).collect();
        out[slot] = heat_kernel_energy(&eig.values, &overlaps, hk, params.hbar * params.omega_c)?;
    }
    Ok((out[0], out[1]))
}

/// Operator norm of (H̃_ren − z)⁻¹ − (H_b − z)⁻¹ on the common truncated
/// space, grown until the norm itself is stable to within `trunc.level_tol`.
pub fn resolvent_distance(params: &ModelParams, z: C64, trunc: &TruncationSpec) -> Result<f64> {
    if z.im == 0.0 {
        return Err(RabiError::Domain(format!(
            "resolvent distance needs Im z != 0, got z = {z}"
        )));
    }
    let seeded = trunc.seeded_for(params);
    let distance_at = |n: usize| -> Result<f64> {
        let ht = h_transformed(params, n, true)?;
        let hb = h_free_boson(params, n)?;
        let dim = 2 * n;
        let zi = DMatrix::<C64>::identity(dim, dim) * z;
        let rt = (ht.matrix() - &zi).try_inverse().ok_or_else(|| {
            RabiError::Domain("resolvent inversion failed (z in spectrum?)".into())
        })?;
        let rb = (hb.matrix() - &zi).try_inverse().ok_or_else(|| {
            RabiError::Domain("resolvent inversion failed (z in spectrum?)".into())
        })?;
        Ok(eigen::spectral_norm(&(rt - rb)))
    };
    let mut n = seeded.initial_dim;
    let mut prev = distance_at(n)?;
    loop {
        let next_n = (((n as f64) * seeded.growth_factor).ceil() as usize)
            .max(n + 1)
            .min(seeded.max_dim);
        if next_n == n {
            return Err(RabiError::ConvergenceFailure {
                level_tol: seeded.level_tol,
                max_dim: seeded.max_dim,
                max_residual: f64::INFINITY,
                residuals: vec![],
            });
        }
        let next = distance_at(next_n)?;
        if (next - prev).abs() < seeded.level_tol.max(1e-10) {
            return Ok(next);
        }
        if next_n >= seeded.max_dim {
            return Err(RabiError::ConvergenceFailure {
                level_tol: seeded.level_tol,
                max_dim: seeded.max_dim,
                max_residual: (next - prev).abs(),
                residuals: vec![(next - prev).abs()],
            });
        }
        n = next_n;
        prev = next;
    }
}

/// Assemble the instanton report from a converged spectrum.
pub fn action_report_from_spectrum(
    spectrum: &SpectrumResult,
    params: &ModelParams,
    c_dw: Option<f64>,
) -> ActionReport {
    let e0 = spectrum.levels[0];
    let e1 = spectrum.levels[1];
    let gap = e1 - e0;
    let s_euc = euclidean_action_from_gap(gap, params);
    let g_of_g = match (&s_euc, params.g > 0.0) {
        (ActionValue::Finite(s), true) => g_function(*s, params).ok(),
        _ => None,
    };
    let q0 = match (c_dw, &s_euc) {
        (Some(c), ActionValue::Finite(s)) if *s >= 0.0 => minima_separation(*s, c, params)
            .ok()
            .map(ActionValue::Finite),
        (Some(_), ActionValue::Infinite) => Some(ActionValue::Infinite),
        _ => None,
    };
    let negative_action = matches!(s_euc, ActionValue::Finite(s) if s < 0.0);
    let gap_zero = s_euc.is_infinite();
    ActionReport {
        e0,
        e1,
        gap,
        s_euc,
        g_of_g,
        self_energy: self_energy(params),
        q0,
        c_dw,
        negative_action,
        gap_zero,
    }
}

/// Full pipeline for a single parameter point.
pub fn action_report(
    params: &ModelParams,
    trunc: &TruncationSpec,
    c_dw: Option<f64>,
) -> Result<ActionReport> {
    let spectrum = converged_spectrum(params, ModelKind::Qr, 2, &trunc.seeded_for(params))?;
    Ok(action_report_from_spectrum(&spectrum, params, c_dw))
}

/// Per-point sweep outcome. Convergence failures are carried, not propagated,
/// so one stubborn point cannot abort the sweep.
#[derive(Debug)]
pub struct SweepPointResult {
    pub point: SweepPoint,
    pub outcome: Result<(SpectrumResult, ActionReport)>,
}

/// Evaluate the converged spectrum and action pipeline at every schedule
/// point. Points are independent work units; they are dispatched to a worker
/// pool and merged back in schedule order, so the output is deterministic.
pub fn run_sweep(
    schedule: &SweepSchedule,
    kind: ModelKind,
    k: usize,
    trunc: &TruncationSpec,
    c_dw: Option<f64>,
    jobs: Option<usize>,
) -> Vec<SweepPointResult> {
    let eval = |index: usize| -> SweepPointResult {
        let point = schedule.points[index];
        let outcome = (|| {
            let params = schedule.params_at(index)?;
            let spectrum = converged_spectrum(&params, kind, k.max(2), &trunc.seeded_for(&params))?;
            let report = action_report_from_spectrum(&spectrum, &params, c_dw);
            Ok((spectrum, report))
        })();
        SweepPointResult { point, outcome }
    };

    match jobs {
        Some(threads) if threads > 0 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("worker pool");
            pool.install(|| {
                (0..schedule.points.len())
                    .into_par_iter()
                    .map(eval)
                    .collect()
            })
        }
        _ => (0..schedule.points.len())
            .into_par_iter()
            .map(eval)
            .collect(),
    }
}

/// Overlap vector ⟨v_k|Ω̃±⟩ diagnostics are occasionally useful in tests.
#[allow(dead_code)]
pub(crate) fn omega_state(n_boson: usize, sign: f64) -> DVector<C64> {
    let s = 1.0 / 2.0_f64.sqrt();
    let mut v = DVector::<C64>::zeros(2 * n_boson);
    v[0] = C64::new(s, 0.0);
    v[n_boson] = C64::new(sign * s, 0.0);
    v
}
