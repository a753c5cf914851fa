//! The bound functional `S <= 2 pi E R` in natural units (hbar = c = 1).
//!
//! Every scenario reduces to two dimensionless numbers: the entropy in nats
//! and the product `E * R` of gravitating energy and circumscribing radius.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};

/// Outcome of checking one scenario against the entropy bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub scenario_label: String,
    /// Entropy in nats.
    pub entropy_nats: f64,
    /// Dimensionless bound `2 pi E R`.
    pub bound_value: f64,
    /// `bound_value - entropy_nats`.
    pub margin: f64,
    pub satisfied: bool,
}

impl BoundReport {
    pub fn violated(&self) -> bool {
        !self.satisfied
    }
}

/// Returns `2 pi E R` for the dimensionless product `E R`.
#[inline]
/// `x` to seven significant digits, for scenario labels.
pub(crate) fn label_number(x: f64) -> String {
    format!("{x:.6e}")
        .parse::<f64>()
        .map_or_else(|_| x.to_string(), |v| v.to_string())
}

pub fn bound_value(energy_radius_product: f64) -> f64 {
    2.0 * PI * energy_radius_product
}

/// Checks `entropy_nats <= 2 pi E R`.
///
/// Negative or non-finite inputs are rejected: they only arise from
/// nonphysical scenario parameters.
pub fn evaluate_bound(
    entropy_nats: f64,
    energy_radius_product: f64,
    label: impl Into<String>,
) -> Result<BoundReport> {
    if !(entropy_nats >= 0.0) || entropy_nats.is_infinite() {
        return Err(BoundError::domain(format!(
            "entropy must be finite and non-negative, got {entropy_nats}"
        )));
    }
    if !(energy_radius_product >= 0.0) {
        return Err(BoundError::domain(format!(
            "energy-radius product must be non-negative, got {energy_radius_product}"
        )));
    }
    Ok(report_from_bound(
        entropy_nats,
        bound_value(energy_radius_product),
        label,
    ))
}

/// Builds a report when the bound value has already been formed.
pub(crate) fn report_from_bound(
    entropy_nats: f64,
    bound_value: f64,
    label: impl Into<String>,
) -> BoundReport {
    let margin = bound_value - entropy_nats;
    BoundReport {
        scenario_label: label.into(),
        entropy_nats,
        bound_value,
        margin,
        satisfied: margin >= 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_system_sits_on_the_bound() {
        let r = evaluate_bound(0.0, 0.0, "empty").unwrap();
        assert!(r.satisfied);
        assert_eq!(r.margin, 0.0);
    }

    #[test]
    fn three_photon_states_at_bound_two() {
        // 2 pi E R = 2 n^4 with n = 1
        let er = 2.0 / (2.0 * PI);
        let r = evaluate_bound(3.0f64.ln(), er, "onion n=1").unwrap();
        assert!(r.satisfied);
        assert!((r.bound_value - 2.0).abs() < 1e-15);
        assert!((r.margin - (2.0 - 3.0f64.ln())).abs() < 1e-15);
        assert!((r.margin - 0.9014).abs() < 1e-4);
    }

    #[test]
    fn strong_coupling_double_well_is_flagged() {
        let er = 127.5 / (2.0 * PI * 200.0);
        let r = evaluate_bound(2.0f64.ln(), er, "lambda=200").unwrap();
        assert!((r.bound_value - 0.6375).abs() < 1e-12);
        assert!(!r.satisfied);
        assert!(r.violated());
    }

    #[test]
    fn negative_inputs_are_domain_errors() {
        assert!(matches!(
            evaluate_bound(-1.0, 1.0, "x"),
            Err(BoundError::Domain(_))
        ));
        assert!(matches!(
            evaluate_bound(1.0, -1e-300, "x"),
            Err(BoundError::Domain(_))
        ));
        assert!(evaluate_bound(f64::NAN, 1.0, "x").is_err());
    }

    proptest! {
        #[test]
        fn more_energy_never_breaks_the_bound(s in 0.0f64..1e3, er in 0.0f64..1e3, extra in 0.0f64..1e3) {
            let a = evaluate_bound(s, er, "a").unwrap();
            let b = evaluate_bound(s, er + extra, "b").unwrap();
            prop_assert!(!(a.satisfied && !b.satisfied));
        }

        #[test]
        fn margin_is_bound_minus_entropy(s in 0.0f64..1e6, er in 0.0f64..1e6) {
            let r = evaluate_bound(s, er, "m").unwrap();
            prop_assert_eq!(r.margin, r.bound_value - r.entropy_nats);
            prop_assert_eq!(r.satisfied, r.margin >= 0.0);
        }
    }
}
