//! Three equal wells at Phi = -1, 0, 1 with Phi = 0 on the wall.
//!
//! A profile starting in a side well never reaches the central well: the
//! quantity Phi'^2/2 - V(Phi) only decreases along a solution, and it would
//! have to end above its starting value. Lowering the side wells restores
//! solutions; their radius and energy grow as the tilt goes to zero until
//! the first zero leaves the integration range.
//!
//! Run with `cargo run --example multiwell`.

use entropy_bound::doublewell::{side_well_search, PotentialSpec, DEFAULT_TOLERANCE};
use entropy_bound::golden::side_well_amplitudes;

fn main() {
    let starts = side_well_amplitudes();
    let flat = side_well_search(&PotentialSpec::three_well(), &starts, DEFAULT_TOLERANCE);
    println!(
        "equal wells: {} starts tried, energy {:?}",
        flat.amplitudes_tried, flat.classical_energy
    );
    if let Some(e) = &flat.last_error {
        println!("  last failure: {e}");
    }

    let dense: Vec<f64> = (1..400)
        .map(|i| 1.0 - 0.5f64.powf(i as f64 / 12.0))
        .collect();
    for tilt in [0.2, 0.1, 0.05, 0.03, 0.02, 0.015, 0.01] {
        let s = side_well_search(
            &PotentialSpec::tilted_three_well(tilt),
            &dense,
            DEFAULT_TOLERANCE,
        );
        match (s.amplitude, s.classical_energy) {
            (Some(a), Some(e)) => println!(
                "tilt {tilt:>5}: lowest-energy profile starts at 1 - {:.2e}, energy {e:.3}",
                1.0 - a
            ),
            _ => println!("tilt {tilt:>5}: no profile found"),
        }
    }
}
