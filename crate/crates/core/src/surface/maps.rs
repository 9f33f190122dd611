use super::{v3, SurfaceError, Vec3};
use crate::quatpoly::QPoly;
use crate::scalar::Scalar;
use crate::solver::PythTuple;

/// Hamilton product of `[w, x, y, z]` quaternions.
pub fn quat_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

/// Stereographic projection `w -> im(w) / (1 - re(w))` of the unit sphere
/// in `H` from the pole `+1`.
pub fn stereo_quaternion(w: [f64; 4]) -> Result<Vec3, SurfaceError> {
    let den = 1.0 - w[0];
    if den.abs() < 1e-300 {
        return Err(SurfaceError::PoleSingularity);
    }
    Ok([w[1] / den, w[2] / den, w[3] / den])
}

/// `2 (p x q) / |p + q|^2`, or `None` when `|p + q| < skip`.
pub fn clifford_point(p: &Vec3, q: &Vec3, skip: f64) -> Option<Vec3> {
    let (p, q) = (v3(p), v3(q));
    let s = (p + q).norm();
    if s < skip {
        return None;
    }
    let c = p.cross(&q) * (2.0 / (s * s));
    Some([c.x, c.y, c.z])
}

/// `center + radius^2 (point - center) / |point - center|^2`.
pub fn invert(point: &Vec3, center: &Vec3, radius: f64) -> Result<Vec3, SurfaceError> {
    let d = v3(point) - v3(center);
    let n2 = d.norm_squared();
    if n2 == 0.0 {
        return Err(SurfaceError::CenterSingularity);
    }
    let out = v3(center) + d * (radius * radius / n2);
    Ok([out.x, out.y, out.z])
}

/// `(X1 + i X2 + j X3 + k X4) / (X6 - X5)` at `(u0, v0)`.
pub fn stereo_project_tuple<S: Scalar>(x: &PythTuple<S>, u0: f64, v0: f64) -> Result<[f64; 4], SurfaceError> {
    let vals: Vec<f64> = x.x.iter().map(|p| p.to_approx().eval(&u0.into(), &v0.into()).0).collect();
    let den = vals[5] - vals[4];
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if den.abs() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
        return Err(SurfaceError::PoleSingularity);
    }
    Ok([vals[0] / den, vals[1] / den, vals[2] / den, vals[3] / den])
}

fn eval_q<S: Scalar>(q: &QPoly<S>, u0: f64, v0: f64) -> [f64; 4] {
    q.to_approx().eval(&u0.into(), &v0.into()).to_f64()
}

fn inverse(q: [f64; 4]) -> Result<[f64; 4], SurfaceError> {
    let n = q.iter().map(|x| x * x).sum::<f64>();
    if n < 1e-300 {
        return Err(SurfaceError::PoleSingularity);
    }
    Ok([q[0] / n, -q[1] / n, -q[2] / n, -q[3] / n])
}

fn conj(q: [f64; 4]) -> [f64; 4] {
    [q[0], -q[1], -q[2], -q[3]]
}

/// `conj(A)^-1 B conj(C)^-1` at `(u0, v0)`.
pub fn phi_eval<S: Scalar>(a: &QPoly<S>, b: &QPoly<S>, c: &QPoly<S>, u0: f64, v0: f64) -> Result<[f64; 4], SurfaceError> {
    let ai = inverse(conj(eval_q(a, u0, v0)))?;
    let ci = inverse(conj(eval_q(c, u0, v0)))?;
    Ok(quat_mul(quat_mul(ai, eval_q(b, u0, v0)), ci))
}
