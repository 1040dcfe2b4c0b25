//! N=2 SUSY at the resonance point ω_a = ω_c, and its absence off resonance.
//!
//! At g = 0 the resonant spectrum is the Witten pattern {0, 1, 1, 2, 2, …}:
//! a simple ground state under exactly two-fold degenerate, equally spaced
//! excited levels. Detuning the qubit to ω_a = 0.5ω breaks the degeneracy.
//!
//! Run: cargo run --release --example susy_resonance

use rabi_lab::hamiltonians::ModelKind;
use rabi_lab::operators::ModelParams;
use rabi_lab::spectra::{converged_spectrum, detect_susy, TruncationSpec};

fn main() {
    let trunc = TruncationSpec::default();
    for (label, omega_a) in [
        ("resonant (omega_a = omega_c)", 1.0),
        ("detuned (omega_a = 0.5 omega_c)", 0.5),
    ] {
        let params = ModelParams::new(omega_a, 1.0, 0.0).unwrap();
        let spectrum = converged_spectrum(&params, ModelKind::Qr, 10, &trunc).unwrap();
        let susy = detect_susy(&spectrum, 1e-8);

        println!("== {label} ==");
        println!("level  energy      sector");
        for (i, level) in spectrum.levels.iter().enumerate() {
            println!("{i:>5}  {level:>10.6}  {}", spectrum.parity_sector[i]);
        }
        match susy.spacing {
            Some(spacing) if susy.is_susy_n2 => {
                println!("N=2 SUSY pattern detected, spacing {spacing:.6}")
            }
            _ => println!("no N=2 SUSY pattern"),
        }
        println!();
    }
}
