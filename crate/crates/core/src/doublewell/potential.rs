use std::fmt;
use std::sync::Arc;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Self-interaction of the dimensionless scalar field.
///
/// The radial field equation reads `Phi'' + (2/x) Phi' + drive(Phi) = 0` with
/// `drive = -V'`. The potential itself is only needed for energies.
#[derive(Clone)]
pub struct PotentialSpec {
    drive: ScalarFn,
    potential: ScalarFn,
    pub well_count: u32,
    pub label: String,
}

impl PotentialSpec {
    pub fn new<D, V>(label: impl Into<String>, well_count: u32, drive: D, potential: V) -> Self
    where
        D: Fn(f64) -> f64 + Send + Sync + 'static,
        V: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        PotentialSpec {
            drive: Arc::new(drive),
            potential: Arc::new(potential),
            well_count,
            label: label.into(),
        }
    }

    /// `V = (1 - Phi^2)^2 / 4`, wells at `Phi = +-1`.
    pub fn double_well() -> Self {
        PotentialSpec::new(
            "double_well",
            2,
            |p| p * (1.0 - p * p),
            |p| 0.25 * (1.0 - p * p).powi(2),
        )
    }

    /// `V = Phi^2 (Phi^2 - 1)^2 / 4`: three equal-depth wells at
    /// `Phi = -1, 0, 1`, with side-well curvature matching
    /// [`double_well`](Self::double_well).
    pub fn three_well() -> Self {
        PotentialSpec::new(
            "three_well",
            3,
            |p| 0.5 * p * (1.0 - p * p) * (3.0 * p * p - 1.0),
            |p| 0.25 * p * p * (p * p - 1.0).powi(2),
        )
    }

    /// [`three_well`](Self::three_well) with the side wells lowered by
    /// `tilt` through a `-tilt * Phi^2 (2 - Phi^2)` term, which keeps the
    /// minima at `Phi = 0, +-1`.
    pub fn tilted_three_well(tilt: f64) -> Self {
        PotentialSpec::new(
            format!("three_well_tilt_{tilt}"),
            3,
            move |p| 0.5 * p * (1.0 - p * p) * (3.0 * p * p - 1.0) + 4.0 * tilt * p * (1.0 - p * p),
            move |p| 0.25 * p * p * (p * p - 1.0).powi(2) - tilt * p * p * (2.0 - p * p),
        )
    }

    #[inline]
    pub fn drive(&self, phi: f64) -> f64 {
        (self.drive)(phi)
    }

    #[inline]
    pub fn potential(&self, phi: f64) -> f64 {
        (self.potential)(phi)
    }
}

impl fmt::Debug for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialSpec")
            .field("label", &self.label)
            .field("well_count", &self.well_count)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_derivative(p: &PotentialSpec) {
        for i in 0..=40 {
            let phi = -1.4 + 0.07 * i as f64;
            let h = 1e-6;
            let dv = (p.potential(phi + h) - p.potential(phi - h)) / (2.0 * h);
            assert!((p.drive(phi) + dv).abs() < 1e-7, "{} at {phi}", p.label);
        }
    }

    #[test]
    fn drives_are_minus_potential_slopes() {
        check_derivative(&PotentialSpec::double_well());
        check_derivative(&PotentialSpec::three_well());
        check_derivative(&PotentialSpec::tilted_three_well(0.01));
    }

    #[test]
    fn three_wells_have_equal_depth() {
        let p = PotentialSpec::three_well();
        for phi in [-1.0, 0.0, 1.0] {
            assert_eq!(p.potential(phi), 0.0);
            assert_eq!(p.drive(phi), 0.0);
        }
        assert!(p.potential(0.5) > 0.0);
    }
}
