//! Integer-order cylinder functions on the positive real line, the log-gamma
//! function and the normalized Neumann factor `C_n(z)`.
//!
//! Everything here is plain `f64` arithmetic, but every function family also
//! carries a log-magnitude variant ([`LnVal`]) so that products such as
//! `J_n(y) * Y_n(x)` can be formed for orders far beyond the point where the
//! individual factors underflow or overflow `f64`. The tail sums and the
//! truncation bounds elsewhere in the crate rely on those variants.
//!
//! Algorithm choices:
//! * `J_0, J_1, Y_0, Y_1`: ascending series below `z = 2`, Steed's continued
//!   fractions (CF1 + CF2, Lentz evaluation) at and above.
//! * `J_n`: Miller backward recurrence normalized with
//!   `J_0 + 2 sum_k J_{2k} = 1`, with periodic rescaling so the recurrence
//!   never leaves the representable range.
//! * `Y_n`: forward recurrence from `Y_0, Y_1` (the stable direction), again
//!   with rescaling for the log-magnitude variant.

use num_complex::Complex64;
use thiserror::Error;

/// Largest order accepted by any operation; beyond this the routines refuse
/// to run rather than silently degrade.
pub const ORDER_CAP: i64 = 2048;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const PI: f64 = std::f64::consts::PI;

/// Rescaling threshold for the scaled recurrences.
const BIG: f64 = 1e250;
const BIG_INV: f64 = 1e-250;
const LN_BIG: f64 = 575.646_273_248_511_4; // ln(1e250)

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("order {n} exceeds the order cap {ORDER_CAP}")]
    OrderCap { n: i64 },
    #[error("argument must be a finite non-negative number, got {z}")]
    BadArgument { z: f64 },
    #[error("argument must be strictly positive for Y_n/H_n, got {z}")]
    NonPositive { z: f64 },
    #[error("result overflows f64 at order {n}, argument {z}")]
    Overflow { n: i64, z: f64 },
    #[error("C_n(z) is undefined at n = 0")]
    ZeroOrderC,
}

pub type Result<T> = std::result::Result<T, SpecFunError>;

/// A real number stored as `sign * exp(ln_abs)`.
///
/// `sign` is -1, 0 or +1; zero is represented as `(-inf, 0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LnVal {
    pub ln_abs: f64,
    pub sign: f64,
}

impl LnVal {
    pub const ZERO: LnVal = LnVal {
        ln_abs: f64::NEG_INFINITY,
        sign: 0.0,
    };

    pub fn from_value(v: f64) -> LnVal {
        if v == 0.0 {
            LnVal::ZERO
        } else {
            LnVal {
                ln_abs: v.abs().ln(),
                sign: v.signum(),
            }
        }
    }

    /// Back to a plain `f64`; underflows to 0 and overflows to +-inf.
    pub fn value(self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

/// `ln |H_n|` from the logs of the two components, evaluated stably.
pub fn hankel_ln_abs(j: LnVal, y: LnVal) -> f64 {
    let a = 2.0 * j.ln_abs;
    let b = 2.0 * y.ln_abs;
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    0.5 * (hi + (lo - hi).exp().ln_1p())
}

fn check_arg_nonneg(z: f64) -> Result<()> {
    if !z.is_finite() || z < 0.0 {
        return Err(SpecFunError::BadArgument { z });
    }
    Ok(())
}

fn check_arg_pos(z: f64) -> Result<()> {
    check_arg_nonneg(z)?;
    if z == 0.0 {
        return Err(SpecFunError::NonPositive { z });
    }
    Ok(())
}

fn check_order(n: i64) -> Result<()> {
    if n.abs() > ORDER_CAP {
        return Err(SpecFunError::OrderCap { n });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// order 0 and 1 seeds
// ---------------------------------------------------------------------------

fn j0_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        term *= -q / ((k * k) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn j1_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 0.5 * z;
    let mut sum = term;
    for k in 1..60 {
        term *= -q / ((k * (k + 1)) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn y0_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..80 {
        term *= q / ((k * k) as f64);
        harmonic += 1.0 / k as f64;
        let contrib = sign * harmonic * term;
        sum += contrib;
        sign = -sign;
        if contrib.abs() < 1e-18 * (sum.abs() + 1e-300) {
            break;
        }
    }
    (2.0 / PI) * (((0.5 * z).ln() + EULER_GAMMA) * j0_series(z) + sum)
}

fn y1_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0; // q^k / (k! (k+1)!)
    let mut hk = 0.0;
    let mut hk1 = 1.0;
    let mut sum = hk + hk1;
    let mut sign = -1.0;
    for k in 1..80 {
        term *= q / ((k * (k + 1)) as f64);
        hk += 1.0 / k as f64;
        hk1 += 1.0 / (k + 1) as f64;
        sum += sign * (hk + hk1) * term;
        sign = -sign;
    }
    (2.0 / PI) * ((0.5 * z).ln() + EULER_GAMMA) * j1_series(z) - 2.0 / (PI * z)
        - z / (2.0 * PI) * sum
}

/// `J_0, Y_0, J_1, Y_1` for `z >= 2` via CF1 and CF2 at order zero.
fn bessjy0_cf(z: f64) -> (f64, f64, f64, f64) {
    const EPS: f64 = 1e-16;
    const FPMIN: f64 = 1e-300;
    const MAXIT: usize = 20_000;

    let xi = 1.0 / z;
    let xi2 = 2.0 * xi;
    let wronskian = xi2 / PI;

    // CF1: h = J_0'/J_0, isign tracks the sign of J_0.
    let mut isign = 1.0_f64;
    let mut h = FPMIN;
    let mut b = 0.0;
    let mut d = 0.0;
    let mut c = h;
    for _ in 1..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let delta = c * d;
        h *= delta;
        if d < 0.0 {
            isign = -isign;
        }
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    let f = h;

    // CF2: p + i q = (J_0' + i Y_0') / (J_0 + i Y_0).
    let mut a = 0.25;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * z;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 2..MAXIT {
        a += (2 * (i - 1)) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        let t = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = t;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            break;
        }
    }

    let gamma = (p - f) / q;
    let mut j0 = (wronskian / ((p - f) * gamma + q)).sqrt();
    if isign < 0.0 {
        j0 = -j0;
    }
    let y0 = j0 * gamma;
    let y0p = y0 * (p + q / gamma);
    let j1 = -f * j0; // J_1 = -J_0'
    let y1 = -y0p; // Y_1 = -Y_0'
    (j0, y0, j1, y1)
}

/// Seeds `(J_0, Y_0, J_1, Y_1)` for any `z > 0`.
fn seeds(z: f64) -> (f64, f64, f64, f64) {
    if z < 2.0 {
        (j0_series(z), y0_series(z), j1_series(z), y1_series(z))
    } else {
        bessjy0_cf(z)
    }
}

// ---------------------------------------------------------------------------
// batched J via Miller backward recurrence
// ---------------------------------------------------------------------------

/// Raw output of a Miller run: per-order mantissa plus the number of
/// rescalings still to be applied, and the normalization sum.
struct MillerRun {
    mant: Vec<f64>,
    scale: Vec<i32>,
    norm: f64,
    norm_scale: i32,
}

fn miller_run(n_max: usize, z: f64) -> MillerRun {
    debug_assert!(z > 0.0);
    // the downward recurrence must start well above the turning point n ~ z,
    // not just above the largest requested order
    let n_eff = n_max.max(z.ceil() as usize);
    let start = n_eff
        + (20usize)
            .max((10.0 * (n_eff.max(1) as f64).sqrt()).ceil() as usize)
            .max((1.5 * z).ceil() as usize);

    let mut mant = vec![0.0; n_max + 1];
    let mut scale = vec![0i32; n_max + 1];
    let mut up1 = 0.0_f64; // u_{k+1}
    let mut u = 1e-30_f64; // u_k, arbitrary seed
    let mut nscale = 0i32;
    let mut norm = 0.0_f64;

    let mut k = start;
    while k >= 1 {
        let um1 = (2.0 * k as f64 / z) * u - up1;
        up1 = u;
        u = um1;
        let order = k - 1;
        if order <= n_max {
            mant[order] = u;
            scale[order] = nscale;
        }
        if order % 2 == 0 {
            norm += if order == 0 { u } else { 2.0 * u };
        }
        if u.abs() > BIG {
            u *= BIG_INV;
            up1 *= BIG_INV;
            norm *= BIG_INV;
            nscale += 1;
        }
        k -= 1;
    }

    MillerRun {
        mant,
        scale,
        norm,
        norm_scale: nscale,
    }
}

/// `J_0(z), ..., J_{n_max}(z)` in plain `f64`; entries that underflow come
/// back as zero.
pub fn bessel_j_batch(n_max: usize, z: f64) -> Result<Vec<f64>> {
    check_order(n_max as i64)?;
    check_arg_nonneg(z)?;
    if z == 0.0 {
        let mut out = vec![0.0; n_max + 1];
        out[0] = 1.0;
        return Ok(out);
    }
    let run = miller_run(n_max, z);
    let out = (0..=n_max)
        .map(|n| {
            let ds = run.norm_scale - run.scale[n];
            let v = run.mant[n] / run.norm;
            match ds {
                0 => v,
                1 => v * BIG_INV,
                _ => 0.0,
            }
        })
        .collect();
    Ok(out)
}

/// Log-magnitude form of [`bessel_j_batch`]; exact over the whole order
/// range, no underflow.
pub fn bessel_j_ln_batch(n_max: usize, z: f64) -> Result<Vec<LnVal>> {
    check_order(n_max as i64)?;
    check_arg_nonneg(z)?;
    if z == 0.0 {
        let mut out = vec![LnVal::ZERO; n_max + 1];
        out[0] = LnVal {
            ln_abs: 0.0,
            sign: 1.0,
        };
        return Ok(out);
    }
    let run = miller_run(n_max, z);
    let ln_norm = run.norm.abs().ln();
    let sign_norm = run.norm.signum();
    let out = (0..=n_max)
        .map(|n| {
            let m = run.mant[n];
            if m == 0.0 {
                LnVal::ZERO
            } else {
                let ds = (run.norm_scale - run.scale[n]) as f64;
                LnVal {
                    ln_abs: m.abs().ln() - ds * LN_BIG - ln_norm,
                    sign: m.signum() * sign_norm,
                }
            }
        })
        .collect();
    Ok(out)
}

// ---------------------------------------------------------------------------
// batched Y via forward recurrence
// ---------------------------------------------------------------------------

/// `Y_0(z), ..., Y_{n_max}(z)` in plain `f64`. Errors out if any requested
/// order overflows, rather than returning infinities.
pub fn bessel_y_batch(n_max: usize, z: f64) -> Result<Vec<f64>> {
    check_order(n_max as i64)?;
    check_arg_pos(z)?;
    let (_, y0, _, y1) = seeds(z);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(y0);
    if n_max >= 1 {
        out.push(y1);
    }
    let mut ym = y0;
    let mut yn = y1;
    for k in 1..n_max {
        let next = (2.0 * k as f64 / z) * yn - ym;
        if !next.is_finite() {
            return Err(SpecFunError::Overflow {
                n: (k + 1) as i64,
                z,
            });
        }
        ym = yn;
        yn = next;
        out.push(yn);
    }
    Ok(out)
}

/// Log-magnitude form of [`bessel_y_batch`]; never overflows.
pub fn bessel_y_ln_batch(n_max: usize, z: f64) -> Result<Vec<LnVal>> {
    check_order(n_max as i64)?;
    check_arg_pos(z)?;
    let (_, y0, _, y1) = seeds(z);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(LnVal::from_value(y0));
    if n_max >= 1 {
        out.push(LnVal::from_value(y1));
    }
    let mut ym = y0;
    let mut yn = y1;
    let mut ln_scale = 0.0;
    for k in 1..n_max {
        let next = (2.0 * k as f64 / z) * yn - ym;
        ym = yn;
        yn = next;
        if yn.abs() > BIG {
            yn *= BIG_INV;
            ym *= BIG_INV;
            ln_scale += LN_BIG;
        }
        out.push(LnVal {
            ln_abs: yn.abs().ln() + ln_scale,
            sign: yn.signum(),
        });
    }
    Ok(out)
}

/// `H_0^(1)(z), ..., H_{n_max}^(1)(z)`; errors out on overflow of the
/// Neumann component.
pub fn hankel1_batch(n_max: usize, z: f64) -> Result<Vec<Complex64>> {
    let j = bessel_j_batch(n_max, z)?;
    let y = bessel_y_batch(n_max, z)?;
    Ok(j
        .into_iter()
        .zip(y)
        .map(|(re, im)| Complex64::new(re, im))
        .collect())
}

// ---------------------------------------------------------------------------
// scalar operations
// ---------------------------------------------------------------------------

fn reflect_sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Bessel function of the first kind, integer order.
///
/// `z = 0` is allowed and returns the limiting value. Negative orders follow
/// `J_{-n} = (-1)^n J_n`.
pub fn bessel_j(n: i64, z: f64) -> Result<f64> {
    check_order(n)?;
    check_arg_nonneg(z)?;
    let an = n.unsigned_abs() as usize;
    let v = bessel_j_batch(an, z)?[an];
    Ok(if n < 0 { reflect_sign(n) * v } else { v })
}

/// Bessel function of the second kind, integer order; `z` must be strictly
/// positive.
pub fn bessel_y(n: i64, z: f64) -> Result<f64> {
    check_order(n)?;
    check_arg_pos(z)?;
    let an = n.unsigned_abs() as usize;
    let v = bessel_y_batch(an, z)?[an];
    Ok(if n < 0 { reflect_sign(n) * v } else { v })
}

/// Hankel function of the first kind, `H_n = J_n + i Y_n`.
pub fn hankel1(n: i64, z: f64) -> Result<Complex64> {
    let re = bessel_j(n, z)?;
    let im = bessel_y(n, z)?;
    Ok(Complex64::new(re, im))
}

/// `(H_0^(1)(z), H_1^(1)(z))` in one evaluation; the kernel hot path.
pub fn hankel1_01(z: f64) -> Result<(Complex64, Complex64)> {
    check_arg_pos(z)?;
    let (j0, y0, j1, y1) = seeds(z);
    Ok((Complex64::new(j0, y0), Complex64::new(j1, y1)))
}

// ---------------------------------------------------------------------------
// log-gamma (Lanczos, g = 7, 9 terms)
// ---------------------------------------------------------------------------

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecFunError::BadArgument { z: x });
    }
    Ok(ln_gamma_unchecked(x))
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the relative error flat near zero
        return (PI / (PI * x).sin()).ln() - ln_gamma_unchecked(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

// ---------------------------------------------------------------------------
// C_n(z) = -Y_n(z) (z/2)^n pi / Gamma(n)
// ---------------------------------------------------------------------------

/// The normalized Neumann factor; always evaluated in log space so the
/// `Gamma(n)` growth and the `Y_n` decay cancel exactly.
pub fn cap_c(n: u32, z: f64) -> Result<f64> {
    if n == 0 {
        return Err(SpecFunError::ZeroOrderC);
    }
    check_order(n as i64)?;
    check_arg_pos(z)?;
    let y = bessel_y_ln_batch(n as usize, z)?[n as usize];
    let ln_c = y.ln_abs + n as f64 * (0.5 * z).ln() + PI.ln() - ln_gamma_unchecked(n as f64);
    let v = -y.sign * ln_c.exp();
    if !v.is_finite() {
        return Err(SpecFunError::Overflow { n: n as i64, z });
    }
    Ok(v)
}

/// `ln C_n(z)` for use inside the truncation bounds; requires `C_n(z) > 0`,
/// which holds whenever `n >= z + 1`.
pub(crate) fn ln_cap_c(n: u32, z: f64) -> Result<f64> {
    if n == 0 {
        return Err(SpecFunError::ZeroOrderC);
    }
    check_order(n as i64)?;
    check_arg_pos(z)?;
    let y = bessel_y_ln_batch(n as usize, z)?[n as usize];
    debug_assert!(y.sign < 0.0, "ln_cap_c called outside the C_n > 0 region");
    Ok(y.ln_abs + n as f64 * (0.5 * z).ln() + PI.ln() - ln_gamma_unchecked(n as f64))
}
