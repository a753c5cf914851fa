//! Nested conducting shells: how many carriers the partitions need.
//!
//! Run with `cargo run --example onion_shells`.

use entropy_bound::conductor::{
    onion_report, random_onion_scene, CarrierSpec, Mechanism, OnionScene,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> entropy_bound::Result<()> {
    let alpha = 1.0 / 137.036;
    for mechanism in [Mechanism::Plasma, Mechanism::Skin] {
        for n in [1u64, 10, 100] {
            let mut carrier = CarrierSpec {
                density: 0.0,
                charge_sq: alpha,
                mass: 1.0,
                relaxation_time: 1.0,
            };
            carrier.density = mechanism.minimal_density(1.0, &carrier);
            let scene = OnionScene {
                n_shells: n,
                outer_radius: n as f64,
                partition_thickness: 1.0,
                carrier,
            };
            let r = onion_report(&scene, mechanism)?;
            println!(
                "{mechanism:?} n = {n:>3}: entropy {:.3}, 2 pi R E = {:.4e} (floor {:.4e})",
                r.report.entropy_nats, r.report.bound_value, r.analytic_floor
            );
        }
    }

    let thin = CarrierSpec {
        density: 1e-3,
        charge_sq: alpha,
        mass: 1.0,
        relaxation_time: 1.0,
    };
    let scene = OnionScene {
        n_shells: 10,
        outer_radius: 10.0,
        partition_thickness: 1.0,
        carrier: thin,
    };
    match onion_report(&scene, Mechanism::Plasma) {
        Ok(_) => println!("\nunexpected: dilute carriers confined the photons"),
        Err(e) => println!("\ndilute carriers: {e}"),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut tightest = f64::INFINITY;
    for i in 0..10_000 {
        let mechanism = if i % 2 == 0 {
            Mechanism::Plasma
        } else {
            Mechanism::Skin
        };
        let r = onion_report(&random_onion_scene(&mut rng, mechanism), mechanism)?;
        assert!(r.report.satisfied && r.floor_respected);
        tightest = tightest.min(r.report.bound_value / r.report.entropy_nats);
    }
    println!("10^4 random scenes: all satisfied, smallest bound/entropy ratio {tightest:.3e}");
    Ok(())
}
