//! Many species sharing one gap: degeneracy grows with the species count.
//!
//! Run with `cargo run --example species_proliferation`.

use entropy_bound::twolevel::{species_sweep, GroundEnergyModel};

fn main() -> entropy_bound::Result<()> {
    let constant = species_sweep(1, 0.0, GroundEnergyModel::Constant(2.0), 1_000_000)?;
    match constant.first_violation {
        Some(n) => println!("fixed ground energy: first violation at {n} species"),
        None => println!("fixed ground energy: no violation up to 1e6 species"),
    }

    for c0 in [0.5, 1.0, 2.0] {
        let linear = species_sweep(1, 0.0, GroundEnergyModel::LinearInSpecies(c0), 100_000)?;
        println!(
            "ground energy {c0} per species: violation {:?}, largest peak Xi {:.4} at {} species",
            linear.first_violation, linear.max_xi_star, linear.species_at_max
        );
    }
    Ok(())
}
