//! Cross-validation of the Fock pipeline against the position-grid oracle.
//!
//! The transformed Hamiltonian doubles as a two-component Schrödinger
//! operator: shifted harmonic wells (ω_c²/2)x² ± g√(2ħω_c)x coupled by
//! −ħω_a/2. A finite-difference discretization of that operator knows
//! nothing about Fock truncation, Laguerre matrix elements, or displacement
//! operators — agreement of the two spectra checks the whole pipeline.
//!
//! Run: cargo run --release --example grid_cross_check

use rabi_lab::hamiltonians::ModelKind;
use rabi_lab::operators::ModelParams;
use rabi_lab::oracle::{oracle_spectrum, well_positions, GridSpec, StencilOrder};
use rabi_lab::spectra::{converged_spectrum, TruncationSpec};

fn main() {
    let grid = GridSpec::new(12.0, 512, StencilOrder::Four).unwrap();
    for g in [0.5, 1.0] {
        let params = ModelParams::new(1.0, 1.0, g).unwrap();
        let fock = converged_spectrum(
            &params,
            ModelKind::Transformed,
            4,
            &TruncationSpec::default(),
        )
        .unwrap();
        let grid_result = oracle_spectrum(&params, &grid, 4).unwrap();
        let (xm, xp) = well_positions(&params);

        println!("== g = {g} (wells at {xm:+.3} / {xp:+.3}) ==");
        println!("level  fock space     position grid  |difference|  sector");
        for i in 0..4 {
            println!(
                "{i:>5}  {:>13.9}  {:>13.9}  {:>11.2e}  {}",
                fock.levels[i],
                grid_result.levels[i],
                (fock.levels[i] - grid_result.levels[i]).abs(),
                grid_result.parity_sector[i],
            );
        }
        println!();
    }
    println!("two independent discretizations, one spectrum");
}
