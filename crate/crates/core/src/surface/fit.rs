use nalgebra::{DMatrix, DVector, Matrix3, SymmetricEigen, Vector3};
use serde::{Deserialize, Serialize};

use super::{arr, plane_basis, v3, IsoKind, SurfaceError, SurfaceSample, Vec3};

/// Least-squares circle through a point set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FittedCircle {
    pub center: Vec3,
    pub radius: f64,
    pub normal: Vec3,
    /// Largest 3D distance from a point to the circle.
    pub max_distance: f64,
    /// `max_distance / max(1, radius)`.
    pub residual: f64,
}

impl FittedCircle {
    /// Distance from `p` to the circle in space.
    pub fn distance(&self, p: &Vec3) -> f64 {
        let n = v3(&self.normal);
        let w = v3(p) - v3(&self.center);
        let h = w.dot(&n);
        let radial = (w - h * n).norm() - self.radius;
        h.hypot(radial)
    }

    /// Unit tangent at the point of the circle nearest to `p`.
    pub fn tangent(&self, p: &Vec3) -> Vector3<f64> {
        let n = v3(&self.normal);
        let w = v3(p) - v3(&self.center);
        let t = n.cross(&(w - w.dot(&n) * n));
        t / t.norm()
    }
}

fn least_squares(a: DMatrix<f64>, b: DVector<f64>) -> Result<DVector<f64>, SurfaceError> {
    a.svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| SurfaceError::DegenerateCurve(e.to_string()))
}

/// Plane through the centroid with the smallest principal direction as
/// normal, then an algebraic in-plane circle fit refined by one
/// Gauss-Newton step on the geometric distances.
pub fn fit_circle(points: &[Vec3]) -> Result<FittedCircle, SurfaceError> {
    if points.len() < 5 {
        return Err(SurfaceError::DegenerateCurve(format!("{} points, need at least 5", points.len())));
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(SurfaceError::DegenerateCurve("non-finite coordinates".into()));
    }
    let pts: Vec<Vector3<f64>> = points.iter().map(v3).collect();
    let centroid = pts.iter().sum::<Vector3<f64>>() / pts.len() as f64;
    let extent = pts.iter().map(|p| (p - centroid).norm()).fold(0.0, f64::max);
    if extent == 0.0 {
        return Err(SurfaceError::DegenerateCurve("all points coincide".into()));
    }
    for (k, p) in pts.iter().enumerate() {
        if pts[..k].iter().any(|q| (p - q).norm() <= 1e-12 * extent) {
            return Err(SurfaceError::DegenerateCurve("repeated points".into()));
        }
    }
    let scatter: Matrix3<f64> = pts.iter().map(|p| (p - centroid) * (p - centroid).transpose()).sum();
    let eig = SymmetricEigen::new(scatter);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    if eig.eigenvalues[order[1]] <= 1e-20 * eig.eigenvalues[order[2]] {
        return Err(SurfaceError::DegenerateCurve("collinear points".into()));
    }
    let normal = eig.eigenvectors.column(order[0]).into_owned().normalize();
    let (e1, e2) = plane_basis(&normal);
    let local: Vec<(f64, f64)> = pts
        .iter()
        .map(|p| {
            let w = (p - centroid) / extent;
            (w.dot(&e1), w.dot(&e2))
        })
        .collect();

    // x^2 + y^2 + a x + b y + c = 0
    let m = local.len();
    let a = DMatrix::from_fn(m, 3, |i, j| match j {
        0 => local[i].0,
        1 => local[i].1,
        _ => 1.0,
    });
    let rhs = DVector::from_fn(m, |i, _| -(local[i].0.powi(2) + local[i].1.powi(2)));
    let sol = least_squares(a, rhs)?;
    let (mut cx, mut cy) = (-sol[0] / 2.0, -sol[1] / 2.0);
    let r2 = cx * cx + cy * cy - sol[2];
    if !(r2 > 0.0) {
        return Err(SurfaceError::DegenerateCurve("algebraic fit has no real radius".into()));
    }
    let mut r = r2.sqrt();

    let dist: Vec<f64> = local.iter().map(|&(x, y)| (x - cx).hypot(y - cy)).collect();
    if dist.iter().all(|d| *d > 0.0) {
        let jac = DMatrix::from_fn(m, 3, |i, j| match j {
            0 => -(local[i].0 - cx) / dist[i],
            1 => -(local[i].1 - cy) / dist[i],
            _ => -1.0,
        });
        let res = DVector::from_fn(m, |i, _| r - dist[i]);
        let step = least_squares(jac, res)?;
        cx += step[0];
        cy += step[1];
        r += step[2];
    }

    let center = centroid + extent * (cx * e1 + cy * e2);
    let mut fitted = FittedCircle {
        center: arr(&center),
        radius: extent * r,
        normal: arr(&normal),
        max_distance: 0.0,
        residual: 0.0,
    };
    fitted.max_distance = points.iter().map(|p| fitted.distance(p)).fold(0.0, f64::max);
    fitted.residual = fitted.max_distance / fitted.radius.max(1.0);
    Ok(fitted)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    pub kind: IsoKind,
    pub index: usize,
    pub circle: FittedCircle,
    pub cocircular: bool,
    /// Smallest angle (radians, in `[0, pi/2]`) to a crossing curve of the
    /// other kind, measured between fitted-circle tangents.
    pub min_crossing_angle: Option<f64>,
}

/// Cosphericity test for a `u`-curve and a `v`-curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CospherePair {
    pub u_index: usize,
    pub v_index: usize,
    /// Largest 5x5 `(|p|^2, x, y, z, 1)` determinant over the tested
    /// point sets, with rows scaled to unit length.
    pub determinant: f64,
    pub cospheric: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CirclesReport {
    pub tol: f64,
    pub curves: Vec<CurveReport>,
    pub max_residual: f64,
    pub min_crossing_angle: Option<f64>,
    pub cospheric: Vec<CospherePair>,
    pub all_pass: bool,
}

fn sphere_det(pts: [&Vec3; 5]) -> f64 {
    let m = nalgebra::Matrix5::from_fn(|i, j| {
        let p = pts[i];
        match j {
            0 => p[0] * p[0] + p[1] * p[1] + p[2] * p[2],
            4 => 1.0,
            k => p[k - 1],
        }
    });
    let mut m = m;
    for mut row in m.row_iter_mut() {
        let n = row.norm();
        row /= n;
    }
    m.determinant()
}

/// Three points of `b` farthest from the circle fitted to `a`.
fn far_points(b: &[Vec3], circle_a: &FittedCircle) -> Vec<Vec3> {
    let mut ranked: Vec<(f64, Vec3)> = b.iter().map(|p| (circle_a.distance(p), *p)).collect();
    ranked.sort_by(|x, y| y.0.total_cmp(&x.0));
    ranked.into_iter().take(3).map(|(_, p)| p).collect()
}

fn spread(a: &[Vec3]) -> [&Vec3; 3] {
    let n = a.len();
    [&a[0], &a[n / 3], &a[2 * n / 3]]
}

fn cosphere(u_index: usize, v_index: usize, a: &[Vec3], ca: &FittedCircle, b: &[Vec3], tol: f64) -> CospherePair {
    let [a1, a2, a3] = spread(a);
    let bs = far_points(b, ca);
    let determinant = [1, 2]
        .iter()
        .map(|&k| sphere_det([a1, a2, a3, &bs[0], &bs[k]]).abs())
        .fold(0.0, f64::max);
    CospherePair {
        u_index,
        v_index,
        determinant,
        cospheric: determinant <= tol,
    }
}

/// Fits a circle to every iso-curve of `s` and flags those with residual
/// at most `tol`. Crossing angles are taken at live grid points where a
/// `u`-curve and a `v`-curve meet; cosphericity is tested on the pairs
/// `(u_k, v_k)`.
pub fn check_iso_circles(s: &SurfaceSample, tol: f64) -> Result<CirclesReport, SurfaceError> {
    if s.iso_curves.is_empty() {
        return Err(SurfaceError::InvalidInput("sample has no iso-curves".into()));
    }
    let mut curves = Vec::with_capacity(s.iso_curves.len());
    let mut point_sets = Vec::with_capacity(s.iso_curves.len());
    for c in &s.iso_curves {
        let pts: Vec<Vec3> = c.points.iter().filter_map(|&k| s.points[k]).collect();
        let circle = fit_circle(&pts).map_err(|e| match e {
            SurfaceError::DegenerateCurve(m) => SurfaceError::DegenerateCurve(format!("{:?} curve {}: {m}", c.kind, c.index)),
            other => other,
        })?;
        curves.push(CurveReport {
            kind: c.kind,
            index: c.index,
            cocircular: circle.residual <= tol,
            circle,
            min_crossing_angle: None,
        });
        point_sets.push(pts);
    }

    let keys: Vec<(IsoKind, usize)> = curves.iter().map(|c| (c.kind, c.index)).collect();
    let find = |kind: IsoKind, index: usize| keys.iter().position(|k| *k == (kind, index));
    let mut angles = vec![None::<f64>; curves.len()];
    for i in 0..s.nu {
        for j in 0..s.nv {
            let (Some(p), Some(cu), Some(cv)) = (s.get(i, j), find(IsoKind::U, i), find(IsoKind::V, j)) else {
                continue;
            };
            let cos = curves[cu].circle.tangent(&p).dot(&curves[cv].circle.tangent(&p)).abs();
            let ang = cos.min(1.0).acos();
            for k in [cu, cv] {
                angles[k] = Some(angles[k].map_or(ang, |a: f64| a.min(ang)));
            }
        }
    }
    for (c, a) in curves.iter_mut().zip(&angles) {
        c.min_crossing_angle = *a;
    }

    let mut cospheric = Vec::new();
    for k in 0..s.nu.min(s.nv) {
        if let (Some(cu), Some(cv)) = (find(IsoKind::U, k), find(IsoKind::V, k)) {
            cospheric.push(cosphere(k, k, &point_sets[cu], &curves[cu].circle, &point_sets[cv], tol));
        }
    }

    let max_residual = curves.iter().map(|c| c.circle.residual).fold(0.0, f64::max);
    let min_crossing_angle = angles.iter().flatten().copied().reduce(f64::min);
    Ok(CirclesReport {
        tol,
        all_pass: curves.iter().all(|c| c.cocircular),
        curves,
        max_residual,
        min_crossing_angle,
        cospheric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{angle, gen_euclidean, invert, Circle3D, CircleOrPoint};

    fn circle_points(c: &Circle3D, n: usize) -> Vec<Vec3> {
        (0..n).map(|k| c.point(angle(k, n))).collect()
    }

    #[test]
    fn exact_circle_has_zero_residual() {
        let c = Circle3D::new([1.0, -2.0, 0.5], 3.0, [1.0, 2.0, 2.0]).unwrap();
        let f = fit_circle(&circle_points(&c, 17)).unwrap();
        assert!(f.residual <= 1e-12);
        assert!((f.radius - 3.0).abs() <= 1e-12);
        assert!((0..3).all(|k| (f.center[k] - c.center[k]).abs() <= 1e-12));
    }

    #[test]
    fn parabola_fails() {
        let pts: Vec<Vec3> = (0..20).map(|k| {
            let x = -1.0 + k as f64 / 10.0;
            [x, x * x, 0.0]
        }).collect();
        assert!(fit_circle(&pts).unwrap().residual > 1e-6);
    }

    #[test]
    fn degenerate_inputs() {
        let line: Vec<Vec3> = (0..6).map(|k| [k as f64, 0.0, 0.0]).collect();
        assert!(matches!(fit_circle(&line), Err(SurfaceError::DegenerateCurve(_))));
        let mut rep = circle_points(&Circle3D::new([0.0; 3], 1.0, [0.0, 0.0, 1.0]).unwrap(), 6);
        rep.push(rep[0]);
        assert!(matches!(fit_circle(&rep), Err(SurfaceError::DegenerateCurve(_))));
        assert!(matches!(fit_circle(&rep[..3]), Err(SurfaceError::DegenerateCurve(_))));
    }

    #[test]
    fn inverted_circle_is_circle() {
        let c = Circle3D::new([3.0, 0.0, 0.0], 1.0, [0.0, 1.0, 1.0]).unwrap();
        let pts: Vec<Vec3> = circle_points(&c, 24).iter().map(|p| invert(p, &[0.0; 3], 1.5).unwrap()).collect();
        assert!(fit_circle(&pts).unwrap().residual <= 1e-12);
        for p in circle_points(&c, 5) {
            let back = invert(&invert(&p, &[0.5, 0.1, 0.0], 2.0).unwrap(), &[0.5, 0.1, 0.0], 2.0).unwrap();
            assert!((0..3).all(|k| (back[k] - p[k]).abs() <= 1e-12));
        }
    }

    #[test]
    fn euclidean_surface_passes() {
        let a = Circle3D::new([0.0; 3], 2.0, [0.0, 0.0, 1.0]).unwrap();
        let b = Circle3D::new([0.0; 3], 1.0, [0.0, 1.0, 0.0]).unwrap();
        let s = gen_euclidean(&a, &CircleOrPoint::Circle(b), 16, 12).unwrap();
        let rep = check_iso_circles(&s, 1e-9).unwrap();
        assert!(rep.all_pass, "max residual {}", rep.max_residual);
        assert_eq!(rep.curves.len(), 28);
        assert!(rep.min_crossing_angle.is_some());

        let mut bad = s.clone();
        let p = bad.points[5].unwrap();
        bad.points[5] = Some([p[0] + 1e-3, p[1], p[2]]);
        assert!(!check_iso_circles(&bad, 1e-9).unwrap().all_pass);
    }
}
