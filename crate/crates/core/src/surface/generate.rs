use super::maps::clifford_point;
use super::{v3, CircleOrPoint, Circle3D, CircleS2, Family, IsoKind, SurfaceError, SurfaceSample, angle};

/// Samples with `|p + q|` below this are dropped from Clifford surfaces.
pub const CLIFFORD_SKIP: f64 = 1e-8;

fn check_res(nu: usize, nv: usize) -> Result<(), SurfaceError> {
    if nu < 2 || nv < 2 {
        return Err(SurfaceError::InvalidInput("resolution must be at least 2x2".into()));
    }
    Ok(())
}

/// `{p + q : p in alpha, q in beta}` on a uniform angle grid. Rows (fixed
/// `u`) are translates of `beta`, columns translates of `alpha`; when `beta`
/// is a point only the columns are recorded as curves.
pub fn gen_euclidean(alpha: &Circle3D, beta: &CircleOrPoint, nu: usize, nv: usize) -> Result<SurfaceSample, SurfaceError> {
    check_res(nu, nv)?;
    let ps: Vec<_> = (0..nu).map(|i| v3(&alpha.point(angle(i, nu)))).collect();
    let qs: Vec<_> = (0..nv).map(|j| v3(&beta.point(angle(j, nv)))).collect();
    let sample = SurfaceSample::grid(Family::Euclidean, nu, nv, |i, j| {
        let s = ps[i] + qs[j];
        Some([s.x, s.y, s.z])
    });
    Ok(sample.with_grid_curves(matches!(beta, CircleOrPoint::Circle(_)), true))
}

/// `{2 (p x q) / |p + q|^2 : p in alpha, q in beta}`; pairs with
/// `|p + q| < CLIFFORD_SKIP` are dropped and listed in `dropped`.
pub fn gen_clifford(alpha: &CircleS2, beta: &CircleS2, nu: usize, nv: usize) -> Result<SurfaceSample, SurfaceError> {
    check_res(nu, nv)?;
    let ps: Vec<_> = (0..nu).map(|i| alpha.point(angle(i, nu))).collect();
    let qs: Vec<_> = (0..nv).map(|j| beta.point(angle(j, nv))).collect();
    let sample = SurfaceSample::grid(Family::Clifford, nu, nv, |i, j| clifford_point(&ps[i], &qs[j], CLIFFORD_SKIP));
    let sample = sample.with_grid_curves(true, true);
    let collapsed = sample.iso_curves.iter().any(|c| {
        let full = match c.kind {
            IsoKind::U => nv,
            IsoKind::V => nu,
        };
        full > 0 && c.points.is_empty()
    });
    if collapsed {
        return Err(SurfaceError::AntipodalDegeneracy);
    }
    Ok(sample)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_point_variant_is_translated_circle() {
        let alpha = Circle3D::new([0.0; 3], 2.0, [0.0, 0.0, 1.0]).unwrap();
        let s = gen_euclidean(&alpha, &CircleOrPoint::Point { at: [1.0, 2.0, 3.0] }, 8, 3).unwrap();
        for k in 0..8 {
            let p = s.get(k, 1).unwrap();
            let a = alpha.point(angle(k, 8));
            assert!((p[0] - a[0] - 1.0).abs() < 1e-15 && (p[2] - 3.0).abs() < 1e-15);
        }
        assert!(s.iso_curves.iter().all(|c| c.kind == IsoKind::V));
    }

    #[test]
    fn swapping_transposes() {
        let a = Circle3D::new([0.0; 3], 2.0, [0.0, 0.0, 1.0]).unwrap();
        let b = Circle3D::new([0.0; 3], 1.0, [0.0, 1.0, 0.0]).unwrap();
        let s1 = gen_euclidean(&a, &CircleOrPoint::Circle(b), 5, 7).unwrap();
        let s2 = gen_euclidean(&b, &CircleOrPoint::Circle(a), 7, 5).unwrap();
        for i in 0..5 {
            for j in 0..7 {
                let (p, q) = (s1.get(i, j).unwrap(), s2.get(j, i).unwrap());
                assert!((0..3).all(|k| (p[k] - q[k]).abs() < 1e-15));
            }
        }
    }

    #[test]
    fn clifford_drops_antipodes() {
        let a = CircleS2::new([0.0, 0.0, 1.0], std::f64::consts::FRAC_PI_2).unwrap();
        let s = gen_clifford(&a, &a, 4, 4).unwrap();
        // p = -q happens for opposite angles on the equator
        assert_eq!(s.dropped.len(), 4);
        assert!(s.get(0, 0).unwrap().iter().all(|x| x.abs() < 1e-15));
    }
}
