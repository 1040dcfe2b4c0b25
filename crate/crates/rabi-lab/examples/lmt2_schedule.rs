//! LMT2 limit: joint schedule ω_a(r) → 0, g(r) > 0 as r → 1.
//!
//! Unlike LMT1, the endpoint is numerically reachable: at r = 1 the qubit
//! decouples (ω_a = 0) and the renormalized spectrum is exactly the doubly
//! degenerate free-boson ladder — spontaneous Z₂-symmetry breaking on the
//! nose. The default schedule is linear: ω_a(r) = ω_a(0)(1−r), g(r) = 3ω_c r.
//!
//! Run: cargo run --release --example lmt2_schedule

use rabi_lab::analysis::{run_sweep, SweepSchedule};
use rabi_lab::hamiltonians::ModelKind;
use rabi_lab::spectra::TruncationSpec;

fn main() {
    let schedule = SweepSchedule::lmt2_default(1.0, 1.0, 1.0).unwrap();
    // Print a 13-point subsample of the 61-point default grid.
    let results = run_sweep(
        &schedule,
        ModelKind::QrRen,
        6,
        &TruncationSpec::default(),
        None,
        None,
    );

    println!("r      omega_a  g     lowest six renormalized levels");
    for r in results.iter().step_by(5) {
        let (spectrum, _) = r.outcome.as_ref().expect("point converged");
        let levels: Vec<String> = spectrum.levels.iter().map(|e| format!("{e:7.4}")).collect();
        println!(
            "{:4.2}  {:7.3}  {:4.2}  {}",
            r.point.value,
            r.point.omega_a,
            r.point.g,
            levels.join(" ")
        );
    }

    let last = results.last().unwrap();
    let (spectrum, report) = last.outcome.as_ref().unwrap();
    println!();
    println!(
        "r = 1 endpoint: E1 - E0 = {:.3e}, Euclidean action = {}",
        spectrum.levels[1] - spectrum.levels[0],
        if report.s_euc.is_infinite() {
            "infinite (degenerate ground pair)"
        } else {
            "finite"
        },
    );
}
