use std::path::Path;

use bicircle_core::fixtures::PolyRng;
use bicircle_core::quatpoly::RPoly;
use bicircle_core::scalar::Scalar;
use bicircle_core::solver::{solve_22, Certificate, PythTuple};
use bicircle_core::surface::{
    check_iso_circles, clifford_point, eval_cyclide, gen_clifford, gen_euclidean, quat_mul, sample_cyclide,
    stereo_quaternion, to_csv, to_obj, Circle3D, CircleOrPoint, CircleS2, CirclesReport, DarbouxCyclide, Family,
    SurfaceSample, Vec3,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::io::{emit, read_json, to_sorted_json, with_extension, write_text, AbcdFile};

fn max_abs<S: Scalar>(r: &RPoly<S>) -> f64 {
    r.terms().map(|(_, c)| c.to_f64().abs()).fold(0.0, f64::max)
}

pub fn verify<S: Scalar>(tuple: &Path, tol: f64) -> Result<(), CliError> {
    let x: PythTuple<S> = read_json(tuple)?;
    let residual = x.residual();
    let ok = match S::BACKEND {
        bicircle_core::scalar::Backend::Exact => residual.is_zero(),
        bicircle_core::scalar::Backend::Approx => max_abs(&residual) <= tol,
    };
    if ok {
        println!("ok");
        Ok(())
    } else {
        println!("residual: {residual}");
        Err(CliError::Verification("the tuple does not satisfy X1^2 + ... + X5^2 = X6^2".into()))
    }
}

pub fn solve<S: Scalar>(tuple: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let x: PythTuple<S> = read_json(tuple)?;
    let cert = solve_22(&x)?;
    cert.verify(&x.to_triple()?)?;
    emit(out, &to_sorted_json(&cert))
}

pub fn make<S: Scalar>(abcd: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let f: AbcdFile<S> = read_json(abcd)?;
    let x = PythTuple::from_abcd(&f.a, &f.b, &f.c, &f.d)?;
    emit(out, &to_sorted_json(&x))
}

pub fn replay<S: Scalar>(certificate: &Path, tuple: &Path) -> Result<(), CliError> {
    let cert: Certificate<S> = read_json(certificate)?;
    if cert.backend != S::BACKEND {
        return Err(CliError::Parse {
            path: certificate.to_path_buf(),
            message: format!("certificate backend is {}, expected {}", cert.backend, S::BACKEND),
        });
    }
    let x: PythTuple<S> = read_json(tuple)?;
    cert.verify(&x.to_triple()?)?;
    println!("replay ok: {} steps", cert.transforms.len());
    Ok(())
}

/// Surface description read by the `surface` subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum SurfaceParams {
    Euclidean { alpha: Circle3D, beta: CircleOrPoint },
    Clifford { alpha: CircleS2, beta: CircleS2 },
    Cyclide { cyclide: DarbouxCyclide, bbox: (Vec3, Vec3) },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub family: Family,
    pub nu: usize,
    pub nv: usize,
    pub points: usize,
    pub dropped: Vec<(usize, usize)>,
    pub circles: Option<CirclesReport>,
    /// Largest `|Q|` over the sampled points of a cyclide.
    pub cyclide_max_residual: Option<f64>,
    pub pass: bool,
}

fn checked_circle(c: &Circle3D) -> Result<Circle3D, CliError> {
    Ok(Circle3D::new(c.center, c.radius, c.normal)?)
}

fn checked_s2(c: &CircleS2) -> Result<CircleS2, CliError> {
    Ok(CircleS2::new(c.axis, c.angular_radius)?)
}

fn sample(params: &SurfaceParams, (nu, nv): (usize, usize)) -> Result<(SurfaceSample, Option<f64>), CliError> {
    Ok(match params {
        SurfaceParams::Euclidean { alpha, beta } => {
            let beta = match beta {
                CircleOrPoint::Circle(c) => CircleOrPoint::Circle(checked_circle(c)?),
                point => *point,
            };
            (gen_euclidean(&checked_circle(alpha)?, &beta, nu, nv)?, None)
        }
        SurfaceParams::Clifford { alpha, beta } => (gen_clifford(&checked_s2(alpha)?, &checked_s2(beta)?, nu, nv)?, None),
        SurfaceParams::Cyclide { cyclide, bbox } => {
            let c = DarbouxCyclide::new(cyclide.constant, cyclide.linear, cyclide.quadratic)?;
            let s = sample_cyclide(&c, *bbox, nu)?;
            let worst = s.live_points().map(|p| eval_cyclide(&c, &p).abs()).fold(0.0, f64::max);
            (s, Some(worst))
        }
    })
}

/// Samples the surface, checks it and writes `<out>.obj`, `<out>.csv` and
/// `<out>.json`; the report also goes to stdout.
pub fn surface(params: &Path, res: (usize, usize), tol: f64, out: Option<&Path>) -> Result<(), CliError> {
    let params: SurfaceParams = read_json(params)?;
    let (s, cyclide_max_residual) = sample(&params, res)?;
    let circles = if s.iso_curves.is_empty() { None } else { Some(check_iso_circles(&s, tol)?) };
    let pass = match (&circles, cyclide_max_residual) {
        (Some(c), _) => c.all_pass,
        (None, Some(q)) => q <= tol,
        (None, None) => true,
    };
    let report = SurfaceReport {
        family: s.family,
        nu: s.nu,
        nv: s.nv,
        points: s.live_points().count(),
        dropped: s.dropped.clone(),
        circles,
        cyclide_max_residual,
        pass,
    };
    let text = to_sorted_json(&report);
    if let Some(stem) = out {
        write_text(&with_extension(stem, "obj"), &to_obj(&s))?;
        write_text(&with_extension(stem, "csv"), &to_csv(&s))?;
        write_text(&with_extension(stem, "json"), &text)?;
    }
    print!("{text}");
    if pass {
        Ok(())
    } else {
        Err(CliError::Verification(format!("surface check failed at tolerance {tol:e}")))
    }
}

fn unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v: Vec3 = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

fn report(name: &str, result: Result<String, String>) -> bool {
    match result {
        Ok(msg) => {
            println!("PASS {name}: {msg}");
            true
        }
        Err(msg) => {
            println!("FAIL {name}: {msg}");
            false
        }
    }
}

/// Seeded smoke test of the algebra and geometry pipelines.
pub fn selftest(seed: u64, res: (usize, usize), tol: f64) -> Result<(), CliError> {
    let mut ok = true;
    ok &= report("solve round-trip", {
        let mut rng = PolyRng::new(seed);
        (0..10)
            .try_for_each(|n| {
                let (a, b, c) = (rng.quat_poly_full(1, 0), rng.quat_poly_full(1, 1), rng.quat_poly_full(0, 1));
                let x = PythTuple::from_abcd(&a, &b, &c, &RPoly::one()).map_err(|e| format!("case {n}: {e}"))?;
                let cert = solve_22(&x).map_err(|e| format!("case {n}: {e}"))?;
                let text = cert.to_json();
                let back = Certificate::from_json(&text).map_err(|e| format!("case {n}: {e}"))?;
                back.verify(&x.to_triple().map_err(|e| e.to_string())?).map_err(|e| format!("case {n}: {e}"))
            })
            .map(|_| "10 tuples solved and replayed".to_string())
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ok &= report("clifford identity", clifford_check(&mut rng));
    ok &= report("euclidean circles", euclidean_check(&mut rng, res, tol));
    if ok {
        Ok(())
    } else {
        Err(CliError::Verification("self-test failed".into()))
    }
}

fn clifford_check(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (p, q) = (unit(rng), unit(rng));
        // well away from antipodes, where the identity is well conditioned
        let Some(c) = clifford_point(&p, &q, 0.5) else { continue };
        let s = stereo_quaternion(quat_mul([0.0, p[0], p[1], p[2]], [0.0, q[0], q[1], q[2]])).map_err(|e| e.to_string())?;
        worst = (0..3).map(|k| (c[k] - s[k]).abs()).fold(worst, f64::max);
    }
    let msg = format!("max deviation {worst:.2e}");
    if worst <= 1e-12 { Ok(msg) } else { Err(msg) }
}

fn euclidean_check(rng: &mut ChaCha8Rng, (nu, nv): (usize, usize), tol: f64) -> Result<String, String> {
    let mut circle = || Circle3D::new([0.0; 3], rng.random_range(0.5..=2.0), unit(rng)).map_err(|e| e.to_string());
    let (a, b) = (circle()?, circle()?);
    let s = gen_euclidean(&a, &CircleOrPoint::Circle(b), nu, nv).map_err(|e| e.to_string())?;
    let r = check_iso_circles(&s, tol).map_err(|e| e.to_string())?;
    let msg = format!("max residual {:.2e}", r.max_residual);
    if r.all_pass { Ok(msg) } else { Err(msg) }
}
