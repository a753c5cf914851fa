//! A two-level system at low temperature: where the bound gets closest.
//!
//! Run with `cargo run --example low_temperature`.

use entropy_bound::twolevel::{
    critical_degeneracy, two_level_report, xi, xi_maximum, TwoLevelSystem,
};

fn main() -> entropy_bound::Result<()> {
    let base = TwoLevelSystem::new(2.0, 0.5, 3, 1.0)?;
    println!("Xi = S - 2 pi R E for g = 3, R eps0 = 2, R Delta = 0.5");
    for y in [
        0.01,
        0.1,
        1.0,
        base.rho_gap * std::f64::consts::TAU,
        5.0,
        20.0,
        100.0,
    ] {
        println!("  y = {y:>8.4}  Xi = {:>10.6}", xi(&base.with_y(y)));
    }
    let m = xi_maximum(&base);
    println!(
        "peak at y = {:.6} (search: {:.6}), Xi = {:.6}",
        m.y_star, m.y_numeric, m.xi_star
    );

    let g_crit = critical_degeneracy(0.0, 2.0);
    println!("\nwith no gap the peak reaches zero at g = {g_crit:.1}");
    for g in [280_000u64, 286_750, 286_751, 300_000] {
        let sys = TwoLevelSystem::new(2.0, 0.0, g, 0.0)?;
        let r = two_level_report(&sys)?;
        println!(
            "  g = {g:>7}  S = {:.6}  2 pi R E = {:.6}  margin = {:+.3e}",
            r.entropy_nats, r.bound_value, r.margin
        );
    }
    Ok(())
}
