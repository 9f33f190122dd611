use serde::{Deserialize, Serialize};

use super::{Family, SurfaceError, SurfaceSample, Vec3};

/// Zero set of `Q(x, y, z, x^2 + y^2 + z^2)` where
/// `Q(X) = constant + linear . X + X^T quadratic X` and `X = (x, y, z, t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DarbouxCyclide {
    pub constant: f64,
    pub linear: [f64; 4],
    pub quadratic: [[f64; 4]; 4],
}

impl DarbouxCyclide {
    /// Symmetrizes `quadratic`; `Q` must have degree 1 or 2.
    pub fn new(constant: f64, linear: [f64; 4], quadratic: [[f64; 4]; 4]) -> Result<Self, SurfaceError> {
        let mut sym = [[0.0; 4]; 4];
        for (i, row) in sym.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = 0.5 * (quadratic[i][j] + quadratic[j][i]);
            }
        }
        let c = Self { constant, linear, quadratic: sym };
        if !c.coefficients().all(f64::is_finite) {
            return Err(SurfaceError::InvalidInput("cyclide coefficients must be finite".into()));
        }
        if c.degree() == 0 {
            return Err(SurfaceError::InvalidInput("cyclide equation must have degree 1 or 2".into()));
        }
        Ok(c)
    }

    /// `t - 1`, the unit sphere.
    pub fn sphere() -> Self {
        Self::new(-1.0, [0.0, 0.0, 0.0, 1.0], [[0.0; 4]; 4]).expect("valid")
    }

    /// `(t + R^2 - r^2)^2 - 4 R^2 (x^2 + y^2)`, the torus around the z-axis.
    pub fn torus(major: f64, minor: f64) -> Result<Self, SurfaceError> {
        let k = major * major - minor * minor;
        let mut q = [[0.0; 4]; 4];
        q[0][0] = -4.0 * major * major;
        q[1][1] = -4.0 * major * major;
        q[3][3] = 1.0;
        Self::new(k * k, [0.0, 0.0, 0.0, 2.0 * k], q)
    }

    pub fn degree(&self) -> u32 {
        if self.quadratic.iter().flatten().any(|x| *x != 0.0) {
            2
        } else if self.linear.iter().any(|x| *x != 0.0) {
            1
        } else {
            0
        }
    }

    fn coefficients(&self) -> impl Iterator<Item = f64> + '_ {
        std::iter::once(self.constant)
            .chain(self.linear.iter().copied())
            .chain(self.quadratic.iter().flatten().copied())
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> f64 {
        self.coefficients().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// `Q(x, y, z, x^2 + y^2 + z^2)`.
pub fn eval_cyclide(c: &DarbouxCyclide, p: &Vec3) -> f64 {
    let x = [p[0], p[1], p[2], p[0] * p[0] + p[1] * p[1] + p[2] * p[2]];
    let mut acc = c.constant;
    for i in 0..4 {
        acc += c.linear[i] * x[i];
        for j in 0..4 {
            acc += c.quadratic[i][j] * x[i] * x[j];
        }
    }
    acc
}

fn bisect(c: &DarbouxCyclide, mut a: Vec3, mut b: Vec3, mut fa: f64) -> Vec3 {
    for _ in 0..200 {
        let m = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0, (a[2] + b[2]) / 2.0];
        if m == a || m == b {
            break;
        }
        let fm = eval_cyclide(c, &m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let fb = eval_cyclide(c, &b);
    if fa.abs() <= fb.abs() { a } else { b }
}

/// Point cloud on the zero set inside `bbox = (min, max)`: every edge of a
/// `res^3` vertex lattice whose endpoints change sign is bisected to
/// machine precision. Vertices that are exact zeros are kept as well.
pub fn sample_cyclide(c: &DarbouxCyclide, bbox: (Vec3, Vec3), res: usize) -> Result<SurfaceSample, SurfaceError> {
    let (lo, hi) = bbox;
    if res < 2 {
        return Err(SurfaceError::InvalidInput("resolution must be at least 2".into()));
    }
    if (0..3).any(|k| !(lo[k] < hi[k])) {
        return Err(SurfaceError::InvalidInput("bounding box must have positive extent".into()));
    }
    let n = res;
    let at = |i: usize, j: usize, k: usize| -> Vec3 {
        let s = |t: usize, a: f64, b: f64| a + (b - a) * t as f64 / (n - 1) as f64;
        [s(i, lo[0], hi[0]), s(j, lo[1], hi[1]), s(k, lo[2], hi[2])]
    };
    let mut values = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                values[(i * n + j) * n + k] = eval_cyclide(c, &at(i, j, k));
            }
        }
    }
    let val = |i: usize, j: usize, k: usize| values[(i * n + j) * n + k];
    let mut points = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let f = val(i, j, k);
                let p = at(i, j, k);
                if f == 0.0 {
                    points.push(p);
                    continue;
                }
                let nbrs = [(i + 1, j, k), (i, j + 1, k), (i, j, k + 1)];
                for (a, b, d) in nbrs {
                    if a < n && b < n && d < n {
                        let g = val(a, b, d);
                        if g != 0.0 && (f < 0.0) != (g < 0.0) {
                            points.push(bisect(c, p, at(a, b, d), f));
                        }
                    }
                }
            }
        }
    }
    if points.is_empty() {
        return Err(SurfaceError::EmptyIntersection);
    }
    let count = points.len();
    Ok(SurfaceSample {
        family: Family::Cyclide,
        nu: count,
        nv: 1,
        params: (0..count).map(|i| (i as f64, 0.0)).collect(),
        points: points.into_iter().map(Some).collect(),
        iso_curves: Vec::new(),
        dropped: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluations() {
        let s = DarbouxCyclide::sphere();
        assert_eq!(eval_cyclide(&s, &[1.0, 0.0, 0.0]), 0.0);
        assert_eq!(eval_cyclide(&s, &[0.0, 0.0, 0.0]), -1.0);
        let t = DarbouxCyclide::torus(2.0, 1.0).unwrap();
        assert_eq!(eval_cyclide(&t, &[3.0, 0.0, 0.0]), 0.0);
        assert_eq!(t.degree(), 2);
        assert_eq!(s.degree(), 1);
    }

    #[test]
    fn sphere_samples_are_on_sphere() {
        let s = sample_cyclide(&DarbouxCyclide::sphere(), ([-1.5; 3], [1.5; 3]), 12).unwrap();
        assert!(s.len() > 50);
        assert!(s.live_points().all(|p| ((p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt() - 1.0).abs() <= 1e-9));
    }

    #[test]
    fn empty_box() {
        let r = sample_cyclide(&DarbouxCyclide::sphere(), ([5.0; 3], [6.0; 3]), 4);
        assert_eq!(r, Err(SurfaceError::EmptyIntersection));
        assert!(DarbouxCyclide::new(1.0, [0.0; 4], [[0.0; 4]; 4]).is_err());
    }
}
