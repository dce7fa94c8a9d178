//! Truncation tails of Graf's addition theorem and their closed-form upper
//! bounds.
//!
//! Three layers live here:
//!
//! * [`tail_exact`] and [`relative_tail`] - brute-force partial sums of the
//!   absolute tail `B^B_{m,p}(x, y) = sum_{n>p} |J_n(y)| (|B_{n+m}(x)| +
//!   |B_{n-m}(x)|)`, every term formed in log space so the factors may
//!   individually leave the `f64` range.
//! * [`bound_jj_l6`] .. [`bound_bj`] - the closed-form bounds, each guarded
//!   by its applicability precondition; an inapplicable bound is a typed
//!   error, never a number.
//! * [`remainder_h`], [`remainder_j`], [`remainder_h_bar`] - the complex
//!   (signed, phased) remainders of the addition theorem itself, which the
//!   error laboratory sums over sources and field points.

use num_complex::Complex64;
use thiserror::Error;

use crate::geom::Point;
use crate::specfun::{self, LnVal, SpecFunError};

/// Matches the `10^3` cutoff used by the reference tail experiments.
pub const TAIL_N_MAX: u32 = 1000;

/// Which cylinder function sits in the outer slot of the tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    J,
    Y,
    H,
}

/// Identifies one of the closed-form bounds (for error reporting and CSV
/// applicability flags).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    JjL6,
    JyL7,
    JyL8,
    BhFromL7,
    BhFromL8,
    BjFromL6,
}

/// Arguments of a tail query: shift order `m`, truncation number `p`, outer
/// argument `x` and inner argument `y` (both already scaled by the wave
/// number).
#[derive(Clone, Copy, Debug)]
pub struct TailQuery {
    pub m: u32,
    pub p: u32,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("bound {kind:?} inapplicable: {why}")]
    Inapplicable { kind: BoundKind, why: String },
    #[error("invalid tail arguments: {0}")]
    Domain(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

pub type Result<T> = std::result::Result<T, BoundError>;

// ---------------------------------------------------------------------------
// exact tails
// ---------------------------------------------------------------------------

fn ln_abs_batch(kernel: Kernel, n_max: usize, z: f64) -> Result<Vec<f64>> {
    match kernel {
        Kernel::J => Ok(specfun::bessel_j_ln_batch(n_max, z)?
            .into_iter()
            .map(|v| v.ln_abs)
            .collect()),
        Kernel::Y => Ok(specfun::bessel_y_ln_batch(n_max, z)?
            .into_iter()
            .map(|v| v.ln_abs)
            .collect()),
        Kernel::H => {
            let j = specfun::bessel_j_ln_batch(n_max, z)?;
            let y = specfun::bessel_y_ln_batch(n_max, z)?;
            Ok(j
                .into_iter()
                .zip(y)
                .map(|(a, b)| specfun::hankel_ln_abs(a, b))
                .collect())
        }
    }
}

/// Partial sum `sum_{n=p+1}^{n_max} |J_n(y)| (|B_{n+m}(x)| + |B_{n-m}(x)|)`.
///
/// Terms below `1e-300` of the running sum allow an early stop; the result
/// is monotone non-decreasing in `n_max`.
pub fn tail_exact(kernel: Kernel, q: &TailQuery, n_max: u32) -> Result<f64> {
    if !q.x.is_finite() || !q.y.is_finite() || q.x < 0.0 || q.y < 0.0 {
        return Err(BoundError::Domain(format!(
            "x and y must be finite non-negative, got x={}, y={}",
            q.x, q.y
        )));
    }
    if matches!(kernel, Kernel::Y | Kernel::H) && q.x == 0.0 {
        return Err(BoundError::Domain(
            "Y/H kernel requires x > 0".to_string(),
        ));
    }
    if n_max <= q.p || q.y == 0.0 {
        return Ok(0.0); // empty sum, or J_n(0) = 0 for all n >= 1
    }
    let j_ln = ln_abs_batch(Kernel::J, n_max as usize, q.y)?;
    let b_ln = ln_abs_batch(kernel, (n_max + q.m) as usize, q.x)?;

    let mut sum = 0.0_f64;
    let mut negligible = 0;
    for n in (q.p + 1)..=n_max {
        let plus = (j_ln[n as usize] + b_ln[(n + q.m) as usize]).exp();
        let minus = (j_ln[n as usize] + b_ln[n.abs_diff(q.m) as usize]).exp();
        let term = plus + minus;
        sum += term;
        if term <= 1e-300 * sum {
            negligible += 1;
            if negligible >= 3 {
                break;
            }
        } else {
            negligible = 0;
        }
    }
    Ok(sum)
}

/// One-sided partial sum `sum_{n=n0}^{n1} |J_n(y)| |Y_{n+m}(x)|` used by the
/// relative-tail experiment.
fn jy_plus_sum(m: u32, n0: u32, n1: u32, x: f64, y: f64) -> Result<f64> {
    let j_ln = ln_abs_batch(Kernel::J, n1 as usize, y)?;
    let y_ln = ln_abs_batch(Kernel::Y, (n1 + m) as usize, x)?;
    let mut sum = 0.0;
    for n in n0..=n1 {
        sum += (j_ln[n as usize] + y_ln[(n + m) as usize]).exp();
    }
    Ok(sum)
}

/// Relative truncation error
/// `eps_{m,p}(x,y) = sum_{n=p+1}^{1000} |J_n(y)||Y_{n+m}(x)| / s_m(x,y)`
/// with `s_m` the same sum from `n = 0`.
pub fn relative_tail(m: u32, p: u32, x: f64, y: f64) -> Result<f64> {
    if !(x > y && y >= 0.0) {
        return Err(BoundError::Domain(format!(
            "relative tail requires x > y >= 0, got x={x}, y={y}"
        )));
    }
    let denom = jy_plus_sum(m, 0, TAIL_N_MAX, x, y)?;
    if denom == 0.0 {
        return Err(BoundError::Domain(
            "denominator s_m(x,y) underflowed to zero".to_string(),
        ));
    }
    if p >= TAIL_N_MAX {
        return Ok(0.0);
    }
    let numer = jy_plus_sum(m, p + 1, TAIL_N_MAX, x, y)?;
    Ok(numer / denom)
}

// ---------------------------------------------------------------------------
// closed-form bounds
// ---------------------------------------------------------------------------

const E: f64 = std::f64::consts::E;
const PI: f64 = std::f64::consts::PI;

/// Bound on `sum_{n>p} |J_n(y)||J_{n +- m}(x)|`: `t^{p+1} /
/// (sqrt(2 pi (p+1)) (1 - t))` with `t = e y / (2p + 2)`; requires
/// `p >= e y / 2`.
pub fn bound_jj_l6(q: &TailQuery) -> Result<f64> {
    if q.y == 0.0 {
        return Ok(0.0);
    }
    let p = q.p as f64;
    if p < E * q.y / 2.0 {
        return Err(BoundError::Inapplicable {
            kind: BoundKind::JjL6,
            why: format!("requires p >= e*y/2 = {:.3}, got p = {}", E * q.y / 2.0, q.p),
        });
    }
    let t = E * q.y / (2.0 * p + 2.0);
    let ln_bound =
        (p + 1.0) * t.ln() - 0.5 * (2.0 * PI * (p + 1.0)).ln() - (1.0 - t).ln();
    Ok(ln_bound.exp())
}

/// `ln alpha_{m,p}(r)` of the Lemma 7 bound; the removable `b = c`
/// singularity is evaluated through the polynomial identity
/// `(b^m - c^m)/(b - c) = sum_i b^i c^{m-1-i}`.
fn ln_alpha(m: u32, p: u32, r: f64) -> f64 {
    if m == 0 {
        return -((p as f64) + 1.0).ln();
    }
    let mf = m as f64;
    let b = 2.0 * p as f64 + 2.0 * mf + 1.0;
    let c = (2.0 * mf - 1.0) * r / (1.0 - r);
    let ln2 = 2.0_f64.ln();
    if (b - c).abs() <= 1e-12 * b {
        return ln2 + mf.ln() + (mf - 1.0) * b.ln();
    }
    let (hi, lo) = if b > c { (b, c) } else { (c, b) };
    let ratio = lo / hi;
    let pow = if ratio == 0.0 {
        0.0
    } else {
        (mf * ratio.ln()).exp()
    };
    ln2 + (mf - 1.0) * hi.ln() + (1.0 - pow).ln() - (1.0 - ratio).ln()
}

/// Lemma 7 bound on `sum_{n>p} |J_n(y)||Y_{n+m}(x)|`; requires `x > y >= 0`
/// and `p + m >= x`.
pub fn bound_jy_l7(q: &TailQuery) -> Result<f64> {
    if !(q.x > q.y && q.y >= 0.0) {
        return Err(BoundError::Inapplicable {
            kind: BoundKind::JyL7,
            why: format!("requires x > y >= 0, got x={}, y={}", q.x, q.y),
        });
    }
    if ((q.p + q.m) as f64) < q.x {
        return Err(BoundError::Inapplicable {
            kind: BoundKind::JyL7,
            why: format!("requires p + m >= x = {:.3}, got p + m = {}", q.x, q.p + q.m),
        });
    }
    if q.y == 0.0 {
        return Ok(0.0);
    }
    let r = q.y / q.x;
    let ln_bound = ln_alpha(q.m, q.p, r) + specfun::ln_cap_c(q.p + q.m + 1, q.x)?
        + (q.p as f64 + 1.0) * r.ln()
        - PI.ln()
        - q.m as f64 * q.x.ln()
        - (1.0 - r).ln();
    Ok(ln_bound.exp())
}

/// Lemma 8 bound on `sum_{n>p} |J_n(y)||Y_{n+m}(x)|`:
/// `2 (2p+m+2)^{m-1} C_{p+m+1}(x) r^{p+1} / (pi x^m (1 - 2r))`; requires
/// `x > 2y >= 0` and `p >= max(m - 2, x)`.
pub fn bound_jy_l8(q: &TailQuery) -> Result<f64> {
    if !(q.x > 2.0 * q.y && q.y >= 0.0) {
        return Err(BoundError::Inapplicable {
            kind: BoundKind::JyL8,
            why: format!("requires x > 2y >= 0, got x={}, y={}", q.x, q.y),
        });
    }
    let floor = (q.m as f64 - 2.0).max(q.x);
    if (q.p as f64) < floor {
        return Err(BoundError::Inapplicable {
            kind: BoundKind::JyL8,
            why: format!("requires p >= max(m-2, x) = {:.3}, got p = {}", floor, q.p),
        });
    }
    if q.y == 0.0 {
        return Ok(0.0);
    }
    let r = q.y / q.x;
    let mf = q.m as f64;
    let ln_bound = 2.0_f64.ln()
        + (mf - 1.0) * (2.0 * q.p as f64 + mf + 2.0).ln()
        + specfun::ln_cap_c(q.p + q.m + 1, q.x)?
        + (q.p as f64 + 1.0) * r.ln()
        - PI.ln()
        - mf * q.x.ln()
        - (1.0 - 2.0 * r).ln();
    Ok(ln_bound.exp())
}

/// Bound on the Hankel tail `B^H_{m,p}(x, y) <= 4 sum |J_n(y)||Y_{n+m}(x)|`,
/// routed through Lemma 8 when `r < 1/2` (the sharp regime) and Lemma 7
/// otherwise; requires `p + m >= x`.
pub fn bound_bh(q: &TailQuery) -> Result<f64> {
    if !(q.x > q.y && q.y >= 0.0) {
        return Err(BoundError::Inapplicable {
            kind: BoundKind::BhFromL7,
            why: format!("requires x > y >= 0, got x={}, y={}", q.x, q.y),
        });
    }
    if ((q.p + q.m) as f64) < q.x {
        return Err(BoundError::Inapplicable {
            kind: BoundKind::BhFromL7,
            why: format!("requires p + m >= x = {:.3}, got p + m = {}", q.x, q.p + q.m),
        });
    }
    let r = q.y / q.x;
    if r < 0.5 {
        if let Ok(b) = bound_jy_l8(q) {
            return Ok(4.0 * b);
        }
    }
    Ok(4.0 * bound_jy_l7(q)?)
}

/// Bound on the double-sided J tail `B^J_{m,p}(x, y) <= 2 *` Lemma 6;
/// independent of `m`.
pub fn bound_bj(q: &TailQuery) -> Result<f64> {
    let inner = bound_jj_l6(q).map_err(|e| match e {
        BoundError::Inapplicable { why, .. } => BoundError::Inapplicable {
            kind: BoundKind::BjFromL6,
            why,
        },
        other => other,
    })?;
    Ok(2.0 * inner)
}

// ---------------------------------------------------------------------------
// complex remainders
// ---------------------------------------------------------------------------

/// A truncated remainder sum plus a tolerance. `tol` is ten times the
/// magnitude of the last accumulated term, an upper proxy for the first
/// omitted one.
#[derive(Clone, Copy, Debug)]
pub struct TailSum {
    pub value: Complex64,
    pub tol: f64,
}

impl TailSum {
    pub const ZERO: TailSum = TailSum {
        value: Complex64::new(0.0, 0.0),
        tol: 0.0,
    };
}

/// Rotation helper: iterated unit phases with periodic exact refresh.
struct Phase {
    theta: f64,
    current: Complex64,
    base_order: f64,
    step: f64,
    count: u32,
}

impl Phase {
    fn new(theta: f64, order0: f64, step: f64) -> Phase {
        Phase {
            theta,
            current: Complex64::from_polar(1.0, order0 * theta),
            base_order: order0,
            step,
            count: 0,
        }
    }

    fn get(&self) -> Complex64 {
        self.current
    }

    fn advance(&mut self) {
        self.count += 1;
        if self.count % 32 == 0 {
            self.current = Complex64::from_polar(
                1.0,
                (self.base_order + self.count as f64 * self.step) * self.theta,
            );
        } else {
            self.current *= Complex64::from_polar(1.0, self.step * self.theta);
        }
    }
}

fn parity(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

struct LnTables {
    j_y: Vec<LnVal>,          // J_n(|y|)
    j_x: Vec<LnVal>,          // J_n(|x|)
    y_x: Option<Vec<LnVal>>,  // Y_n(|x|) for the H kernel
}

impl LnTables {
    fn build(h_kernel: bool, x_abs: f64, y_abs: f64, n_hi: usize, q_hi: usize) -> Result<Self> {
        Ok(LnTables {
            j_y: specfun::bessel_j_ln_batch(n_hi, y_abs)?,
            j_x: specfun::bessel_j_ln_batch(q_hi, x_abs)?,
            y_x: if h_kernel {
                Some(specfun::bessel_y_ln_batch(q_hi, x_abs)?)
            } else {
                None
            },
        })
    }

    /// `B_q(|x|) * J_n(|y|)` as a complex number (real for the J kernel),
    /// with reflection parities for negative indices applied.
    fn product(&self, q: i64, n: i64) -> Complex64 {
        let sgn = parity(if q < 0 { q } else { 0 }) * parity(if n < 0 { n } else { 0 });
        let jn = self.j_y[n.unsigned_abs() as usize];
        let qa = q.unsigned_abs() as usize;
        let jx = self.j_x[qa];
        let re = jn.sign * jx.sign * (jn.ln_abs + jx.ln_abs).exp();
        let im = match &self.y_x {
            Some(yx) => {
                let y = yx[qa];
                jn.sign * y.sign * (jn.ln_abs + y.ln_abs).exp()
            }
            None => 0.0,
        };
        Complex64::new(re, im) * sgn
    }
}

fn remainder_impl(
    h_kernel: bool,
    m: i64,
    p: u32,
    x: Point,
    y: Point,
    n_max: u32,
) -> Result<TailSum> {
    let x_abs = x.norm();
    let y_abs = y.norm();
    if h_kernel && x_abs == 0.0 {
        return Err(BoundError::Domain("H remainder requires |x| > 0".into()));
    }
    if y_abs == 0.0 {
        return Ok(TailSum::ZERO); // J_n(0) = 0 for every |n| >= 1
    }
    let n_hi = n_max as usize;
    let q_hi = n_hi + m.unsigned_abs() as usize;
    let tables = LnTables::build(h_kernel, x_abs, y_abs, n_hi, q_hi)?;
    let theta_x = x.angle();
    let theta_y = y.angle();

    let n0 = p as i64 + 1;
    // positive branch: q = m + n, phase e^{i(m+n) theta_x} e^{-i n theta_y}
    let mut ph_xp = Phase::new(theta_x, (m + n0) as f64, 1.0);
    let mut ph_yp = Phase::new(theta_y, -(n0 as f64), -1.0);
    // negative branch: q = m - n, phase e^{i(m-n) theta_x} e^{+i n theta_y}
    let mut ph_xm = Phase::new(theta_x, (m - n0) as f64, -1.0);
    let mut ph_ym = Phase::new(theta_y, n0 as f64, 1.0);

    let mut sum = Complex64::new(0.0, 0.0);
    let mut last_mag = 0.0_f64;
    let mut negligible = 0;
    for n in n0..=(n_max as i64) {
        let plus = tables.product(m + n, n) * ph_xp.get() * ph_yp.get();
        let minus = tables.product(m - n, -n) * ph_xm.get() * ph_ym.get();
        let term = plus + minus;
        sum += term;
        last_mag = plus.norm() + minus.norm();
        ph_xp.advance();
        ph_yp.advance();
        ph_xm.advance();
        ph_ym.advance();
        if last_mag <= 1e-300 * sum.norm().max(1e-280) {
            negligible += 1;
            if negligible >= 3 {
                break;
            }
        } else {
            negligible = 0;
        }
    }
    Ok(TailSum {
        value: sum,
        tol: 10.0 * last_mag,
    })
}

/// Remainder of the H-kernel addition theorem,
/// `R^H_{m,p}(x, y) = sum_{|n| > p} H_{m+n}(|x|) e^{i(m+n) arg x} J_n(|y|)
/// e^{-i n arg y}`, truncated at `|n| = n_max`.
pub fn remainder_h(m: i64, p: u32, x: Point, y: Point, n_max: u32) -> Result<TailSum> {
    remainder_impl(true, m, p, x, y, n_max)
}

/// Same remainder with the J kernel in the outer slot (used by the M2M and
/// L2L truncation errors); no `|y| < |x|` restriction applies.
pub fn remainder_j(m: i64, p: u32, x: Point, y: Point, n_max: u32) -> Result<TailSum> {
    remainder_impl(false, m, p, x, y, n_max)
}

/// The shifted remainder appearing in the local-error recursion:
/// index ranges `n >= p - m + 1` and `n <= -p - m - 1`, kernel
/// `H_{m+n}(|x|) e^{-i(m+n) arg x} J_n(|y|) e^{+i n arg y}`.
pub fn remainder_h_bar(m: i64, p: u32, x: Point, y: Point, n_max: u32) -> Result<TailSum> {
    let x_abs = x.norm();
    let y_abs = y.norm();
    if x_abs == 0.0 {
        return Err(BoundError::Domain("H remainder requires |x| > 0".into()));
    }
    if y_abs == 0.0 {
        return Ok(TailSum::ZERO);
    }
    let n_hi = n_max as usize;
    let q_hi = n_hi + m.unsigned_abs() as usize;
    let tables = LnTables::build(true, x_abs, y_abs, n_hi, q_hi)?;
    let theta_x = x.angle();
    let theta_y = y.angle();

    let mut sum = Complex64::new(0.0, 0.0);
    let mut last_mag = 0.0_f64;

    // branch A: n from p - m + 1 upward (q = m + n >= p + 1), phase
    // e^{-i(m+n) theta_x} e^{+i n theta_y}
    let a0 = p as i64 - m + 1;
    let mut ph_x = Phase::new(theta_x, -((m + a0) as f64), -1.0);
    let mut ph_y = Phase::new(theta_y, a0 as f64, 1.0);
    let mut negligible = 0;
    for n in a0..=(n_max as i64) {
        let term = tables.product(m + n, n) * ph_x.get() * ph_y.get();
        sum += term;
        last_mag = term.norm();
        ph_x.advance();
        ph_y.advance();
        if last_mag <= 1e-300 * sum.norm().max(1e-280) {
            negligible += 1;
            if negligible >= 3 {
                break;
            }
        } else {
            negligible = 0;
        }
    }
    let mut tol = 10.0 * last_mag;

    // branch B: n = -v, v from p + m + 1 upward (q = m - v <= -p - 1), phase
    // e^{-i(m-v) theta_x} e^{-i v theta_y}
    let b0 = p as i64 + m + 1;
    let mut ph_x = Phase::new(theta_x, -((m - b0) as f64), 1.0);
    let mut ph_y = Phase::new(theta_y, -(b0 as f64), -1.0);
    let mut negligible = 0;
    for v in b0..=(n_max as i64) {
        let term = tables.product(m - v, -v) * ph_x.get() * ph_y.get();
        sum += term;
        last_mag = term.norm();
        ph_x.advance();
        ph_y.advance();
        if last_mag <= 1e-300 * sum.norm().max(1e-280) {
            negligible += 1;
            if negligible >= 3 {
                break;
            }
        } else {
            negligible = 0;
        }
    }
    tol += 10.0 * last_mag;

    Ok(TailSum { value: sum, tol })
}
