//! Entropy of a confined ideal gas against the rest-mass form of the bound.
//!
//! Run with `cargo run --example mass_gas`.

use entropy_bound::counting::{
    exact_log_count, mass_bound_report, maximize_ratio, stirling_entropy, GasSpec, MassBoundSpec,
};

fn main() -> entropy_bound::Result<()> {
    let peak = maximize_ratio();
    println!(
        "entropy per N^(2/3) Omega^(1/3) peaks at occupation {:.4} with value {:.4}",
        peak.x, peak.value
    );

    println!(
        "\n{:>8} {:>8} {:>12} {:>12} {:>12}",
        "N", "Omega", "exact", "stirling", "difference"
    );
    for (n, modes) in [(1, 1), (10, 10), (100, 1000), (1000, 100), (200, 200)] {
        let exact = exact_log_count(&GasSpec::boson(n, modes))?;
        let stirling = stirling_entropy(n as f64, modes as f64);
        println!(
            "{n:>8} {modes:>8} {exact:>12.4} {stirling:>12.4} {:>12.4}",
            stirling - exact
        );
    }

    println!(
        "\n{:>10} {:>10} {:>10} {:>14} {:>16}",
        "N", "mu c R", "Omega", "entropy", "2 pi E R"
    );
    for (n_particles, compton_ratio) in [(1, 13.0), (1_000, 100.0), (1_000_000, 250.0), (10, 1e4)] {
        let spec = MassBoundSpec {
            n_particles,
            compton_ratio,
            momentum_fraction: 0.5,
        };
        let r = mass_bound_report(&spec)?;
        println!(
            "{n_particles:>10} {compton_ratio:>10} {:>10} {:>14.4} {:>16.4e}  {}",
            r.n_modes,
            r.report.entropy_nats,
            r.report.bound_value,
            if r.report.satisfied {
                "satisfied"
            } else {
                "VIOLATED"
            }
        );
    }
    Ok(())
}
