//! One-dimensional maximization of unimodal functions.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// A located maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol`. `f` must be unimodal on the
/// interval; an endpoint maximum is found as well.
pub fn golden_section_max<F>(f: F, lo: f64, hi: f64, tol: f64) -> Maximum
where
    F: Fn(f64) -> f64,
{
    assert!(hi > lo && tol > 0.0, "invalid golden-section bracket");
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while (b - a) > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iterations += 1;
    }
    // endpoints are never sampled by the interior probes
    let mut best = Maximum {
        x: 0.5 * (a + b),
        value: f(0.5 * (a + b)),
        iterations,
    };
    for x in [lo, hi] {
        if (best.x - x).abs() <= tol {
            let v = f(x);
            if v > best.value {
                best.x = x;
                best.value = v;
            }
        }
    }
    best
}

/// Brackets the maximum of `f` on a logarithmic grid over `[lo, hi]` and then
/// refines it with [`golden_section_max`].
pub fn bracketed_log_max<F>(f: F, lo: f64, hi: f64, grid: usize, tol: f64) -> Maximum
where
    F: Fn(f64) -> f64,
{
    assert!(lo > 0.0 && hi > lo && grid >= 3);
    let ratio = (hi / lo).ln() / (grid - 1) as f64;
    let xs: Vec<f64> = (0..grid).map(|i| lo * (ratio * i as f64).exp()).collect();
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, &x) in xs.iter().enumerate() {
        let v = f(x);
        if v > best_val {
            best_val = v;
            best = i;
        }
    }
    let a = xs[best.saturating_sub(1)];
    let b = xs[(best + 1).min(grid - 1)];
    golden_section_max(f, a, b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola_peak() {
        let m = golden_section_max(|x| -(x - 0.3) * (x - 0.3), -2.0, 5.0, 1e-9);
        assert!((m.x - 0.3).abs() < 1e-8);
    }

    #[test]
    fn endpoint_peak() {
        let m = golden_section_max(|x| -x, 0.0, 1.0, 1e-9);
        assert_eq!(m.x, 0.0);
    }

    #[test]
    fn log_bracket_finds_narrow_peak() {
        let m = bracketed_log_max(
            |x: f64| -(x.ln() - 2.0f64.ln()).powi(2),
            1e-4,
            1e3,
            64,
            1e-10,
        );
        assert!((m.x - 2.0).abs() < 1e-8);
    }
}
