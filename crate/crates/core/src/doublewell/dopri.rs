//! Dormand-Prince 5(4) stepper with its fourth-order continuous extension.

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// A system `dy/dx = f(x, y)` of fixed dimension.
pub trait OdeSystem<const N: usize> {
    fn rhs(&self, x: f64, y: &[f64; N], dy: &mut [f64; N]);
}

/// One trial step.
#[derive(Debug, Clone, Copy)]
pub struct Step<const N: usize> {
    pub x0: f64,
    pub h: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    /// Derivative at the end of the step (first stage of the next one).
    pub k7: [f64; N],
    /// Scaled RMS error estimate; the step is acceptable when `<= 1`.
    pub error: f64,
    dense: [[f64; N]; 5],
}

impl<const N: usize> Step<N> {
    /// Continuous extension at `x` inside `[x0, x0 + h]`.
    pub fn interpolate(&self, x: f64) -> [f64; N] {
        let theta = (x - self.x0) / self.h;
        let theta1 = 1.0 - theta;
        let [r1, r2, r3, r4, r5] = &self.dense;
        std::array::from_fn(|i| {
            r1[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i])))
        })
    }
}

/// Takes a single Dormand-Prince step of size `h` from `(x0, y0)`, given the
/// derivative `k1` at the start.
pub fn dopri_step<S, const N: usize>(
    sys: &S,
    x0: f64,
    y0: &[f64; N],
    k1: &[f64; N],
    h: f64,
    rtol: f64,
    atol: f64,
) -> Step<N>
where
    S: OdeSystem<N>,
{
    let mut k2 = [0.0; N];
    let mut k3 = [0.0; N];
    let mut k4 = [0.0; N];
    let mut k5 = [0.0; N];
    let mut k6 = [0.0; N];
    let mut k7 = [0.0; N];

    let stage =
        |coef: &dyn Fn(usize) -> f64| -> [f64; N] { std::array::from_fn(|i| y0[i] + h * coef(i)) };

    let y = stage(&|i| A21 * k1[i]);
    sys.rhs(x0 + C2 * h, &y, &mut k2);
    let y = stage(&|i| A31 * k1[i] + A32 * k2[i]);
    sys.rhs(x0 + C3 * h, &y, &mut k3);
    let y = stage(&|i| A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    sys.rhs(x0 + C4 * h, &y, &mut k4);
    let y = stage(&|i| A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    sys.rhs(x0 + C5 * h, &y, &mut k5);
    let y = stage(&|i| A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    sys.rhs(x0 + h, &y, &mut k6);
    let y1 = stage(&|i| A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
    sys.rhs(x0 + h, &y1, &mut k7);

    let mut sum = 0.0;
    for i in 0..N {
        let err = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let scale = atol + rtol * y0[i].abs().max(y1[i].abs());
        sum += (err / scale).powi(2);
    }
    let error = (sum / N as f64).sqrt();

    let dense = {
        let r1 = *y0;
        let r2: [f64; N] = std::array::from_fn(|i| y1[i] - y0[i]);
        let r3: [f64; N] = std::array::from_fn(|i| h * k1[i] - r2[i]);
        let r4: [f64; N] = std::array::from_fn(|i| r2[i] - h * k7[i] - r3[i]);
        let r5: [f64; N] = std::array::from_fn(|i| {
            h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i])
        });
        [r1, r2, r3, r4, r5]
    };

    Step {
        x0,
        h,
        y0: *y0,
        y1,
        k7,
        error,
        dense,
    }
}

/// Step-size factor from an error estimate (fifth-order controller).
pub fn step_factor(error: f64) -> f64 {
    if error == 0.0 {
        5.0
    } else {
        (0.9 * error.powf(-0.2)).clamp(0.2, 5.0)
    }
}
