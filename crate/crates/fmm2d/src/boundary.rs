//! Discretization of analytic parametric boundary curves into the equidistant
//! knot set, Jacobian weights, outward normals and density samples consumed by
//! the layer-potential operators.

use num_complex::Complex64;
use thiserror::Error;

use crate::geom::Point;

#[derive(Debug, Error)]
pub enum BoundaryError {
    #[error("need N >= 2, got {0}")]
    TooFewKnots(usize),
    #[error("zero tangent vector at knot {index} (t = {t})")]
    DegenerateTangent { index: usize, t: f64 },
    #[error("tabulated curve: {0}")]
    BadTable(String),
}

pub type Result<T> = std::result::Result<T, BoundaryError>;

/// A closed curve given by position and derivative on `t in [0, 2 pi)`.
#[derive(Clone, Debug)]
pub enum ParametricCurve {
    Kite,
    Circle { radius: f64 },
    /// Rows of `(t, x1, x2, dx1, dx2)`; the `t` values must be the knot grid
    /// `j pi / N` for the `N` the curve is discretized with.
    Tabulated { rows: Vec<[f64; 5]> },
}

/// The kite-shaped contour `(cos t + 0.65 cos 2t - 0.65, 1.5 sin t)` with its
/// analytic derivative.
pub fn kite() -> ParametricCurve {
    ParametricCurve::Kite
}

pub fn circle(radius: f64) -> ParametricCurve {
    ParametricCurve::Circle { radius }
}

impl ParametricCurve {
    pub fn position(&self, t: f64) -> Point {
        match self {
            ParametricCurve::Kite => Point::new(
                t.cos() + 0.65 * (2.0 * t).cos() - 0.65,
                1.5 * t.sin(),
            ),
            ParametricCurve::Circle { radius } => Point::new(radius * t.cos(), radius * t.sin()),
            ParametricCurve::Tabulated { .. } => {
                unreachable!("tabulated curves are sampled, not evaluated")
            }
        }
    }

    pub fn derivative(&self, t: f64) -> Point {
        match self {
            ParametricCurve::Kite => Point::new(
                -t.sin() - 1.3 * (2.0 * t).sin(),
                1.5 * t.cos(),
            ),
            ParametricCurve::Circle { radius } => Point::new(-radius * t.sin(), radius * t.cos()),
            ParametricCurve::Tabulated { .. } => {
                unreachable!("tabulated curves are sampled, not evaluated")
            }
        }
    }

    /// Positions and derivatives at the knots `t_j = j pi / N`, `j = 1..=2N`.
    fn sample(&self, n: usize) -> Result<Vec<(f64, Point, Point)>> {
        let count = 2 * n;
        match self {
            ParametricCurve::Tabulated { rows } => {
                if rows.len() != count {
                    return Err(BoundaryError::BadTable(format!(
                        "expected {count} rows for N = {n}, found {}",
                        rows.len()
                    )));
                }
                let mut out = Vec::with_capacity(count);
                for (j, row) in rows.iter().enumerate() {
                    let t_want = (j + 1) as f64 * std::f64::consts::PI / n as f64;
                    if (row[0] - t_want).abs() > 1e-9 {
                        return Err(BoundaryError::BadTable(format!(
                            "row {j}: t = {} does not match the knot grid value {t_want}",
                            row[0]
                        )));
                    }
                    out.push((
                        row[0],
                        Point::new(row[1], row[2]),
                        Point::new(row[3], row[4]),
                    ));
                }
                Ok(out)
            }
            _ => Ok((1..=count)
                .map(|j| {
                    let t = j as f64 * std::f64::consts::PI / n as f64;
                    (t, self.position(t), self.derivative(t))
                })
                .collect()),
        }
    }
}

/// Parse the tabulated-curve CSV format: header `t,x1,x2,dx1,dx2` followed by
/// one row per knot.
pub fn parse_curve_table(text: &str) -> Result<ParametricCurve> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| BoundaryError::BadTable("empty file".into()))?;
    if header.trim().replace(' ', "") != "t,x1,x2,dx1,dx2" {
        return Err(BoundaryError::BadTable(format!(
            "expected header 't,x1,x2,dx1,dx2', found '{header}'"
        )));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(BoundaryError::BadTable(format!(
                "row {i}: expected 5 fields, found {}",
                fields.len()
            )));
        }
        let mut row = [0.0; 5];
        for (k, f) in fields.iter().enumerate() {
            row[k] = f.parse().map_err(|_| {
                BoundaryError::BadTable(format!("row {i}: cannot parse '{f}' as a number"))
            })?;
        }
        rows.push(row);
    }
    Ok(ParametricCurve::Tabulated { rows })
}

/// A discretized boundary: `2N` knots with Jacobian weights, unit outward
/// normals and complex density samples.
#[derive(Clone, Debug)]
pub struct BoundaryDisc {
    pub points: Vec<Point>,
    /// `s(y_j) = |y'(t_j)|`
    pub weights: Vec<f64>,
    pub normals: Vec<Point>,
    pub density: Vec<Complex64>,
}

impl BoundaryDisc {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The vector entry `z_j = phi(y_j) s(y_j)` the operators act on.
    pub fn charge(&self, j: usize) -> Complex64 {
        self.density[j] * self.weights[j]
    }
}

/// Discretize `curve` into `2N` knots at `t_j = j pi / N`, `j = 1..=2N`, with
/// the density supplied as a function of the parameter.
pub fn discretize<F>(curve: &ParametricCurve, n: usize, density: F) -> Result<BoundaryDisc>
where
    F: Fn(f64) -> Complex64,
{
    if n < 2 {
        return Err(BoundaryError::TooFewKnots(n));
    }
    let samples = curve.sample(n)?;

    // orientation from the discrete signed area; counterclockwise means the
    // outward normal is the tangent rotated clockwise: (x2', -x1')/|.|
    let signed_area: f64 = samples.iter().map(|(_, pos, d)| pos.cross(*d)).sum();
    let ccw = signed_area >= 0.0;

    let mut points = Vec::with_capacity(2 * n);
    let mut weights = Vec::with_capacity(2 * n);
    let mut normals = Vec::with_capacity(2 * n);
    let mut dens = Vec::with_capacity(2 * n);
    for (index, (t, pos, d)) in samples.into_iter().enumerate() {
        let s = d.norm();
        if s == 0.0 {
            return Err(BoundaryError::DegenerateTangent { index, t });
        }
        let nu = if ccw {
            Point::new(d.y / s, -d.x / s)
        } else {
            Point::new(-d.y / s, d.x / s)
        };
        points.push(pos);
        weights.push(s);
        normals.push(nu);
        dens.push(density(t));
    }
    Ok(BoundaryDisc {
        points,
        weights,
        normals,
        density: dens,
    })
}

/// `A = || phi(y) s(y) ||_inf` over the knots.
pub fn sup_norm_a(disc: &BoundaryDisc) -> f64 {
    (0..disc.len())
        .map(|j| disc.charge(j).norm())
        .fold(0.0, f64::max)
}
