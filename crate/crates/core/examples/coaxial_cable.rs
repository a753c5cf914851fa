//! A long coaxial cable coiled inside a sphere.
//!
//! Run with `cargo run --example coaxial_cable`.

use entropy_bound::conductor::{coax_report, CarrierSpec, CoaxMode, CoaxScene};

fn main() -> entropy_bound::Result<()> {
    let carrier = CarrierSpec {
        density: 0.0,
        charge_sq: 1.0 / 137.036,
        mass: 1.0,
        relaxation_time: 1.0,
    };
    let mut scene = CoaxScene {
        cable_length: 1_000.0,
        sphere_radius: 50.0,
        inner_radius: 1.0,
        outer_radius: 5.0,
        carrier,
    };
    scene.carrier.density = scene.minimal_density();

    for length in [1e3, 1e4, 1e5] {
        scene.cable_length = length;
        for mode in [CoaxMode::ThreeState, CoaxMode::Multimode] {
            let r = coax_report(&scene, mode)?;
            println!(
                "L = {length:>8.0} {mode:>10?}: entropy {:>10.3}, 2 pi R E = {:.4e}, floor {:.4e}",
                r.report.entropy_nats, r.report.bound_value, r.analytic_floor
            );
        }
    }

    scene.sphere_radius = 6.0;
    scene.cable_length = 60.0;
    match coax_report(&scene, CoaxMode::Multimode) {
        Ok(r) => println!("\nfat cable: {:?}", r.report),
        Err(e) => println!("\nfat cable, multimode counting: {e}"),
    }
    Ok(())
}
