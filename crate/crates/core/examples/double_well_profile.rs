//! Solve the double-well profile for one amplitude, export it as CSV and
//! print the energy floor it implies.
//!
//! Run with `cargo run --example double_well_profile -- 0.98 profile.csv`.
//! Without a path the profile is written to standard output.

use std::fs::File;
use std::io::{self, BufWriter};

use entropy_bound::doublewell::{
    bound_coefficient, critical_coupling, effective_exponent, shoot_profile, wall_energy_floor,
    DEFAULT_TOLERANCE,
};

fn main() -> entropy_bound::Result<()> {
    let mut args = std::env::args().skip(1);
    let amplitude: f64 = args
        .next()
        .map_or(0.98, |a| a.parse().expect("amplitude must be a number"));
    let path = args.next();

    let profile = shoot_profile(amplitude, DEFAULT_TOLERANCE)?;
    let exponent = effective_exponent(amplitude)?;
    let wall = wall_energy_floor(profile.energy_factor, exponent)?;
    eprintln!("Phi(0) = {amplitude}");
    eprintln!("  first zero x0       {:.6}", profile.first_zero);
    eprintln!("  energy factor F     {:.4}", profile.energy_factor);
    eprintln!("  virial residual     {:.2e}", profile.virial_residual);
    eprintln!("  scaling exponent n  {exponent:.4}");
    eprintln!(
        "  field + wall        {:.4} F",
        wall.total_energy_factor / profile.energy_factor
    );
    eprintln!("  C(a)                {:.3}", bound_coefficient(amplitude)?);
    eprintln!(
        "  lambda_crit(ln 2)   {:.3}",
        critical_coupling(std::f64::consts::LN_2)?
    );

    match path {
        Some(p) => {
            profile.write_csv(BufWriter::new(
                File::create(&p).expect("cannot create output file"),
            ))?;
            eprintln!("wrote {} samples to {p}", profile.samples.len());
        }
        None => profile.write_csv(io::stdout().lock())?,
    }
    Ok(())
}
