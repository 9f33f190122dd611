use std::fmt::Write;

use super::SurfaceSample;

/// Wavefront OBJ: one vertex per live sample and a quad for every grid
/// cell whose four corners are live. Point clouds have no faces.
pub fn to_obj(s: &SurfaceSample) -> String {
    let mut out = String::new();
    let mut ids = vec![0usize; s.points.len()];
    let mut next = 1;
    for (k, p) in s.points.iter().enumerate() {
        if let Some(p) = p {
            let _ = writeln!(out, "v {:.16e} {:.16e} {:.16e}", p[0], p[1], p[2]);
            ids[k] = next;
            next += 1;
        }
    }
    if s.nv >= 2 {
        // rows and columns are closed loops
        for i in 0..s.nu {
            for j in 0..s.nv {
                let (i1, j1) = ((i + 1) % s.nu, (j + 1) % s.nv);
                let corners = [i * s.nv + j, i1 * s.nv + j, i1 * s.nv + j1, i * s.nv + j1];
                if corners.iter().all(|&c| ids[c] > 0) {
                    let _ = writeln!(out, "f {} {} {} {}", ids[corners[0]], ids[corners[1]], ids[corners[2]], ids[corners[3]]);
                }
            }
        }
    }
    out
}

/// `u,v,x,y,z` rows for every live sample, with a header line.
pub fn to_csv(s: &SurfaceSample) -> String {
    let mut out = String::from("u,v,x,y,z\n");
    for ((u, v), p) in s.params.iter().zip(&s.points) {
        if let Some(p) = p {
            let _ = writeln!(out, "{u:.16e},{v:.16e},{:.16e},{:.16e},{:.16e}", p[0], p[1], p[2]);
        }
    }
    out
}
