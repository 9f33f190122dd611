//! Doubly-circled surface families: generators, maps and a numerical
//! circle checker. All geometry is binary64.

mod cyclide;
mod export;
mod fit;
mod generate;
mod maps;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cyclide::{eval_cyclide, sample_cyclide, DarbouxCyclide};
pub use export::{to_csv, to_obj};
pub use fit::{check_iso_circles, fit_circle, CirclesReport, CospherePair, CurveReport, FittedCircle};
pub use generate::{gen_clifford, gen_euclidean, CLIFFORD_SKIP};
pub use maps::{clifford_point, invert, phi_eval, quat_mul, stereo_project_tuple, stereo_quaternion};

pub type Vec3 = [f64; 3];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("a whole iso-curve collapses onto antipodal pairs")]
    AntipodalDegeneracy,
    #[error("no sign change of the cyclide equation inside the box")]
    EmptyIntersection,
    #[error("evaluation hits the projection pole")]
    PoleSingularity,
    #[error("point coincides with the inversion center")]
    CenterSingularity,
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub(crate) fn v3(p: &Vec3) -> Vector3<f64> {
    Vector3::new(p[0], p[1], p[2])
}

pub(crate) fn arr(v: &Vector3<f64>) -> Vec3 {
    [v.x, v.y, v.z]
}

/// Orthonormal pair spanning the plane orthogonal to the unit vector `n`.
pub(crate) fn plane_basis(n: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let helper = if n.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let e1 = n.cross(&helper).normalize();
    let e2 = n.cross(&e1);
    (e1, e2)
}

fn unit(v: &Vec3, what: &str) -> Result<Vec3, SurfaceError> {
    let n = v3(v).norm();
    if !(n.is_finite() && n > 0.0) {
        return Err(SurfaceError::InvalidInput(format!("{what} must be a nonzero vector")));
    }
    Ok(arr(&(v3(v) / n)))
}

/// A circle in space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle3D {
    pub center: Vec3,
    pub radius: f64,
    pub normal: Vec3,
}

impl Circle3D {
    /// Normalizes `normal`; the radius must be positive.
    pub fn new(center: Vec3, radius: f64, normal: Vec3) -> Result<Self, SurfaceError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(SurfaceError::InvalidInput("radius must be positive".into()));
        }
        Ok(Self {
            center,
            radius,
            normal: unit(&normal, "normal")?,
        })
    }

    pub fn point(&self, theta: f64) -> Vec3 {
        let (e1, e2) = plane_basis(&v3(&self.normal));
        arr(&(v3(&self.center) + self.radius * (theta.cos() * e1 + theta.sin() * e2)))
    }
}

/// Second summand of the Euclidean family: a circle or a single point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CircleOrPoint {
    Circle(Circle3D),
    Point { at: Vec3 },
}

impl CircleOrPoint {
    pub fn point(&self, theta: f64) -> Vec3 {
        match self {
            CircleOrPoint::Circle(c) => c.point(theta),
            CircleOrPoint::Point { at } => *at,
        }
    }
}

/// A circle on the unit sphere: points `p` with `p . axis = cos(angular_radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleS2 {
    pub axis: Vec3,
    pub angular_radius: f64,
}

impl CircleS2 {
    pub fn new(axis: Vec3, angular_radius: f64) -> Result<Self, SurfaceError> {
        if !(angular_radius > 0.0 && angular_radius < std::f64::consts::PI) {
            return Err(SurfaceError::InvalidInput("angular radius must lie in (0, pi)".into()));
        }
        Ok(Self {
            axis: unit(&axis, "axis")?,
            angular_radius,
        })
    }

    pub fn point(&self, theta: f64) -> Vec3 {
        let a = v3(&self.axis);
        let (e1, e2) = plane_basis(&a);
        let (s, c) = self.angular_radius.sin_cos();
        arr(&(c * a + s * (theta.cos() * e1 + theta.sin() * e2)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Euclidean,
    Clifford,
    Cyclide,
    Phi,
}

/// Direction of an iso-curve: `U` fixes `u` and varies `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoKind {
    U,
    V,
}

/// Indices into [`SurfaceSample::points`] along one iso-curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsoCurve {
    pub kind: IsoKind,
    pub index: usize,
    pub points: Vec<usize>,
}

/// Sampled surface. Grid families store `nu * nv` slots in row-major order
/// (`i * nv + j`), with `None` for dropped samples; point clouds use
/// `nv = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSample {
    pub family: Family,
    pub nu: usize,
    pub nv: usize,
    pub params: Vec<(f64, f64)>,
    pub points: Vec<Option<Vec3>>,
    pub iso_curves: Vec<IsoCurve>,
    pub dropped: Vec<(usize, usize)>,
}

impl SurfaceSample {
    pub(crate) fn grid(family: Family, nu: usize, nv: usize, f: impl Fn(usize, usize) -> Option<Vec3>) -> Self {
        let mut params = Vec::with_capacity(nu * nv);
        let mut points = Vec::with_capacity(nu * nv);
        let mut dropped = Vec::new();
        for i in 0..nu {
            for j in 0..nv {
                params.push((angle(i, nu), angle(j, nv)));
                let p = f(i, j);
                if p.is_none() {
                    dropped.push((i, j));
                }
                points.push(p);
            }
        }
        Self {
            family,
            nu,
            nv,
            params,
            points,
            iso_curves: Vec::new(),
            dropped,
        }
    }

    /// Records every row and column of the grid as an iso-curve, skipping
    /// dropped samples.
    pub(crate) fn with_grid_curves(mut self, rows: bool, cols: bool) -> Self {
        let (nu, nv) = (self.nu, self.nv);
        let live = |k: &usize| self.points[*k].is_some();
        let mut curves = Vec::new();
        if rows {
            for i in 0..nu {
                let pts = (0..nv).map(|j| i * nv + j).filter(live).collect();
                curves.push(IsoCurve { kind: IsoKind::U, index: i, points: pts });
            }
        }
        if cols {
            for j in 0..nv {
                let pts = (0..nu).map(|i| i * nv + j).filter(live).collect();
                curves.push(IsoCurve { kind: IsoKind::V, index: j, points: pts });
            }
        }
        self.iso_curves = curves;
        self
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Vec3> {
        self.points.get(i * self.nv + j).copied().flatten()
    }

    pub fn live_points(&self) -> impl Iterator<Item = Vec3> + '_ {
        self.points.iter().filter_map(|p| *p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Uniform angle `2 pi k / n`.
pub(crate) fn angle(k: usize, n: usize) -> f64 {
    std::f64::consts::TAU * k as f64 / n as f64
}
