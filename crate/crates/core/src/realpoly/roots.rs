//! Numerical roots of real univariate polynomials.

use nalgebra::Complex;

pub(crate) type C64 = Complex<f64>;

fn horner(p: &[f64], z: C64) -> (C64, C64) {
    let mut value = C64::new(0.0, 0.0);
    let mut slope = C64::new(0.0, 0.0);
    for c in p.iter().rev() {
        slope = slope * z + value;
        value = value * z + c;
    }
    (value, slope)
}

/// All complex roots of `p` (ascending coefficients, nonzero lead) by the
/// Aberth-Ehrlich simultaneous iteration, polished with Newton steps.
pub(crate) fn complex_roots(p: &[f64]) -> Vec<C64> {
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n];
    let monic: Vec<f64> = p.iter().map(|c| c / lead).collect();
    // Cauchy bound on root moduli
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + 0.4;
            C64::from_polar(0.5 * radius, angle)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (value, slope) = horner(&monic, z[k]);
            if value.norm() == 0.0 {
                continue;
            }
            let ratio = value / slope;
            let repulsion: C64 = (0..n).filter(|m| *m != k).map(|m| (z[k] - z[m]).inv()).sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for root in z.iter_mut() {
        for _ in 0..4 {
            let (value, slope) = horner(&monic, *root);
            if slope.norm() == 0.0 {
                break;
            }
            let next = *root - value / slope;
            if !(next.re.is_finite() && next.im.is_finite()) || horner(&monic, next).0.norm() > value.norm() {
                break;
            }
            *root = next;
        }
    }
    z
}

/// Splits roots into real ones and one representative (positive imaginary
/// part) of each conjugate pair. Roots with `|im| <= tol * (1 + |z|)` are real.
pub(crate) fn classify(roots: &[C64], tol: f64) -> (Vec<f64>, Vec<C64>) {
    let mut real = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for z in roots {
        if z.im.abs() <= tol * (1.0 + z.norm()) {
            real.push(z.re);
        } else if z.im > 0.0 {
            upper.push(*z);
        } else {
            lower.push(*z);
        }
    }
    real.sort_by(f64::total_cmp);
    // pair each upper root with its nearest conjugate so both halves agree
    let mut pairs = Vec::new();
    for z in upper {
        let best = lower
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - z.conj()).norm().total_cmp(&(b.1 - z.conj()).norm()))
            .map(|(k, _)| k);
        let w = match best {
            Some(k) => lower.swap_remove(k),
            None => z.conj(),
        };
        pairs.push(C64::new((z.re + w.re) / 2.0, (z.im - w.im) / 2.0));
    }
    // unmatched lower roots can only appear through numerical noise
    for w in lower {
        pairs.push(w.conj());
    }
    pairs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    (real, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_roots() {
        // u^4 + 1
        let roots = complex_roots(&[1.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(roots.len(), 4);
        for z in &roots {
            assert!((z.powi(4) + 1.0).norm() < 1e-12);
        }
        let (real, pairs) = classify(&roots, 1e-9);
        assert!(real.is_empty());
        assert_eq!(pairs.len(), 2);
    }

    #[test]
    fn real_roots() {
        // (u - 1)(u - 2)(u + 3)
        let roots = complex_roots(&[6.0, -7.0, 0.0, 1.0]);
        let (real, pairs) = classify(&roots, 1e-9);
        assert!(pairs.is_empty());
        let expected = [-3.0, 1.0, 2.0];
        for (a, b) in real.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
