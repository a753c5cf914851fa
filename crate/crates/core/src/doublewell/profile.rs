//! Shooting solutions of the radial field equation
//! `(1/x^2) (x^2 Phi')' + drive(Phi) = 0`, `Phi'(0) = 0`, `Phi(0) = a`,
//! integrated outward to the first zero `x0` of `Phi`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::dopri::{dopri_step, step_factor, OdeSystem, Step};
use super::potential::PotentialSpec;
use crate::error::{BoundError, Result};

/// Default relative/absolute tolerance per integration step.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Default tolerance on the location of the first zero.
pub const DEFAULT_ROOT_TOLERANCE: f64 = 1e-8;
/// Radius where the series expansion hands over to the integrator.
pub const SERIES_START: f64 = 1e-4;
/// Integration stops here if no zero was found.
pub const DEFAULT_X_MAX: f64 = 1e3;

const MAX_STEPS: usize = 2_000_000;
const BLOW_UP: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingOptions {
    pub rtol: f64,
    pub atol: f64,
    pub root_tol: f64,
    pub x_start: f64,
    pub x_max: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        ShootingOptions {
            rtol: DEFAULT_TOLERANCE,
            atol: DEFAULT_TOLERANCE,
            root_tol: DEFAULT_ROOT_TOLERANCE,
            x_start: SERIES_START,
            x_max: DEFAULT_X_MAX,
        }
    }
}

impl ShootingOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        ShootingOptions {
            rtol: tolerance,
            atol: tolerance,
            root_tol: tolerance.min(DEFAULT_ROOT_TOLERANCE),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub x: f64,
    pub phi: f64,
    pub dphi: f64,
}

/// One shooting solution, from `x = 0` to its first zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WellProfile {
    pub amplitude: f64,
    pub potential_label: String,
    pub samples: Vec<ProfileSample>,
    pub first_zero: f64,
    /// `int_0^x0 (1 - Phi^4) x^2 dx`.
    pub quartic_integral: f64,
    /// `int_0^x0 Phi'^2 x^2 dx`.
    pub gradient_integral: f64,
    /// `int_0^x0 Phi drive(Phi) x^2 dx`; equals the gradient integral on a
    /// true solution.
    pub drive_integral: f64,
    /// `int_0^x0 V(Phi) x^2 dx`.
    pub potential_integral: f64,
    /// `x0 * quartic_integral`.
    pub energy_factor: f64,
    /// `x0 * int (Phi'^2/2 + V) x^2 dx`, i.e. `eps_c * lambda * R` in units
    /// of `hbar c`.
    pub classical_energy: f64,
    pub virial_residual: f64,
}

impl WellProfile {
    /// Builds a profile from externally supplied samples, with the integrals
    /// taken by the trapezoid rule. Intended for trial functions; solver
    /// profiles carry integrals accumulated alongside the field.
    pub fn from_samples(
        amplitude: f64,
        potential: &PotentialSpec,
        samples: Vec<ProfileSample>,
    ) -> Result<Self> {
        if samples.len() < 2 {
            return Err(BoundError::domain("a profile needs at least two samples"));
        }
        let mut acc = [0.0; 4];
        for w in samples.windows(2) {
            let dx = w[1].x - w[0].x;
            let f = |s: &ProfileSample| {
                let x2 = s.x * s.x;
                [
                    (1.0 - s.phi.powi(4)) * x2,
                    s.dphi * s.dphi * x2,
                    s.phi * potential.drive(s.phi) * x2,
                    potential.potential(s.phi) * x2,
                ]
            };
            let (a, b) = (f(&w[0]), f(&w[1]));
            for i in 0..4 {
                acc[i] += 0.5 * dx * (a[i] + b[i]);
            }
        }
        let first_zero = samples.last().map(|s| s.x).unwrap_or_default();
        Ok(WellProfile::assemble(
            amplitude, potential, samples, first_zero, acc,
        ))
    }

    fn assemble(
        amplitude: f64,
        potential: &PotentialSpec,
        samples: Vec<ProfileSample>,
        first_zero: f64,
        [quartic, gradient, drive, pot]: [f64; 4],
    ) -> Self {
        let mut profile = WellProfile {
            amplitude,
            potential_label: potential.label.clone(),
            samples,
            first_zero,
            quartic_integral: quartic,
            gradient_integral: gradient,
            drive_integral: drive,
            potential_integral: pot,
            energy_factor: first_zero * quartic,
            classical_energy: first_zero * (0.5 * gradient + pot),
            virial_residual: 0.0,
        };
        profile.virial_residual = virial_check(&profile);
        profile
    }

    /// Writes `x,phi,dphi` rows with a header line.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| BoundError::domain(format!("csv export failed: {e}"));
        w.write_record(["x", "phi", "dphi"]).map_err(io)?;
        for s in &self.samples {
            w.write_record([s.x.to_string(), s.phi.to_string(), s.dphi.to_string()])
                .map_err(io)?;
        }
        w.flush()
            .map_err(|e| BoundError::domain(format!("csv export failed: {e}")))?;
        Ok(())
    }
}

/// Relative mismatch `|int Phi'^2 x^2 - int Phi drive(Phi) x^2| / int Phi'^2 x^2`.
///
/// Multiplying the field equation by `x^2 Phi` and integrating by parts
/// makes the two integrals equal for any solution with `Phi(x0) = 0`.
pub fn virial_check(profile: &WellProfile) -> f64 {
    (profile.gradient_integral - profile.drive_integral).abs() / profile.gradient_integral
}

/// Relative gap between the gradient-plus-potential energy
/// `int (Phi'^2/2 + V) x^2` and the quartic form `int (1 - Phi^4) x^2 / 4`.
/// The two coincide for double-well solutions.
pub fn energy_form_residual(profile: &WellProfile) -> f64 {
    let direct = 0.5 * profile.gradient_integral + profile.potential_integral;
    let quartic = 0.25 * profile.quartic_integral;
    (direct - quartic).abs() / quartic
}

/// Field, slope and the four running integrals.
struct RadialSystem<'a> {
    potential: &'a PotentialSpec,
}

impl OdeSystem<6> for RadialSystem<'_> {
    fn rhs(&self, x: f64, y: &[f64; 6], dy: &mut [f64; 6]) {
        let (phi, dphi) = (y[0], y[1]);
        let drive = self.potential.drive(phi);
        let x2 = x * x;
        dy[0] = dphi;
        dy[1] = -2.0 * dphi / x - drive;
        dy[2] = (1.0 - phi.powi(4)) * x2;
        dy[3] = dphi * dphi * x2;
        dy[4] = phi * drive * x2;
        dy[5] = self.potential.potential(phi) * x2;
    }
}

/// Shoots from `Phi(0) = amplitude` for an arbitrary potential.
pub fn shoot(
    potential: &PotentialSpec,
    amplitude: f64,
    opts: &ShootingOptions,
) -> Result<WellProfile> {
    if !amplitude.is_finite() {
        return Err(BoundError::domain("amplitude must be finite"));
    }
    if !(opts.rtol > 0.0 && opts.atol > 0.0 && opts.root_tol > 0.0) {
        return Err(BoundError::domain("tolerances must be positive"));
    }
    let no_zero = |reason: String| BoundError::NoZero { amplitude, reason };
    let sys = RadialSystem { potential };

    // regular series Phi = a - D(a) x^2 / 6 near the origin
    let a = amplitude;
    let d0 = potential.drive(a);
    let xs = opts.x_start;
    let x3 = xs.powi(3);
    let mut y = [
        a - d0 * xs * xs / 6.0,
        -d0 * xs / 3.0,
        (1.0 - a.powi(4)) * x3 / 3.0,
        d0 * d0 * xs.powi(5) / 45.0,
        a * d0 * x3 / 3.0,
        potential.potential(a) * x3 / 3.0,
    ];
    let mut x = xs;
    if y[0] <= 0.0 {
        return Err(no_zero("amplitude too small to resolve".into()));
    }

    // E = Phi'^2/2 - V(Phi) never increases along a solution, and must be
    // at least -V(0) wherever Phi = 0.
    let v0 = potential.potential(0.0);
    let energy_floor = -v0 - 1e-12 * (1.0 + v0.abs());

    let mut samples = vec![
        ProfileSample {
            x: 0.0,
            phi: a,
            dphi: 0.0,
        },
        ProfileSample {
            x,
            phi: y[0],
            dphi: y[1],
        },
    ];
    let mut k = [0.0; 6];
    sys.rhs(x, &y, &mut k);
    let mut h = 0.5 * xs;

    for _ in 0..MAX_STEPS {
        if x >= opts.x_max {
            return Err(no_zero(format!("no sign change up to x = {}", opts.x_max)));
        }
        h = h.min(opts.x_max - x).max(f64::EPSILON * x);
        let step = dopri_step(&sys, x, &y, &k, h, opts.rtol, opts.atol);
        if !(step.error <= 1.0) {
            if !step.error.is_finite() {
                h *= 0.2;
            } else {
                h *= step_factor(step.error).min(1.0);
            }
            continue;
        }
        if step.y1[0] <= 0.0 {
            return Ok(finish_at_root(
                &sys, potential, amplitude, &step, samples, opts,
            ));
        }
        x += h;
        y = step.y1;
        k = step.k7;
        samples.push(ProfileSample {
            x,
            phi: y[0],
            dphi: y[1],
        });
        if y[0].abs() > BLOW_UP {
            return Err(no_zero("field runs away".into()));
        }
        if 0.5 * y[1] * y[1] - potential.potential(y[0]) < energy_floor {
            return Err(no_zero(format!(
                "field lacks the energy to reach zero (stalled near Phi = {:.4})",
                y[0]
            )));
        }
        h *= step_factor(step.error);
    }
    Err(no_zero("step budget exhausted".into()))
}

fn finish_at_root(
    sys: &RadialSystem<'_>,
    potential: &PotentialSpec,
    amplitude: f64,
    step: &Step<6>,
    mut samples: Vec<ProfileSample>,
    opts: &ShootingOptions,
) -> WellProfile {
    // bracket on the continuous extension
    let (mut lo, mut hi) = (step.x0, step.x0 + step.h);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if step.interpolate(mid)[0] > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // polish with exact sub-steps from the start of the bracketing step
    let mut k0 = [0.0; 6];
    sys.rhs(step.x0, &step.y0, &mut k0);
    let mut root = 0.5 * (lo + hi);
    let mut end = step.y1;
    for _ in 0..8 {
        let sub = root - step.x0;
        end = if sub > 0.0 {
            dopri_step(sys, step.x0, &step.y0, &k0, sub, opts.rtol, opts.atol).y1
        } else {
            step.y0
        };
        let dx = -end[0] / end[1];
        if !dx.is_finite() {
            break;
        }
        root += dx;
        if dx.abs() < 1e-3 * opts.root_tol {
            break;
        }
    }
    if root - step.x0 > 0.0 {
        end = dopri_step(
            sys,
            step.x0,
            &step.y0,
            &k0,
            root - step.x0,
            opts.rtol,
            opts.atol,
        )
        .y1;
    }
    samples.push(ProfileSample {
        x: root,
        phi: end[0],
        dphi: end[1],
    });
    WellProfile::assemble(
        amplitude,
        potential,
        samples,
        root,
        [end[2], end[3], end[4], end[5]],
    )
}
