//! Derivative-free maximizers: golden-section search in one dimension and a
//! Nelder–Mead simplex for the handful of angles in the entangled-fraction search.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section maximization of a unimodal `f` on `[lo, hi]`, stopping once the
/// bracket is narrower than `xtol`.
pub fn golden_section_max<F>(f: F, lo: f64, hi: f64, xtol: f64, max_iter: usize) -> Result<Maximum>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidArgument(format!("bad bracket [{lo}, {hi}]")));
    }
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while (b - a) > xtol {
        if iterations >= max_iter {
            let (x, value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
            return Err(Error::NonConvergence {
                message: format!(
                    "golden section bracket [{a}, {b}] still wider than {xtol} after {iterations} iterations (best x {x})"
                ),
                best_value: value,
            });
        }
        iterations += 1;
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let (x, value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    Ok(Maximum { x, value, iterations })
}

/// Coarse scan over `[lo, hi]` with `grid` points, then golden-section on the
/// bracket around the best grid point.
pub fn bracketed_max<F>(f: F, lo: f64, hi: f64, grid: usize, xtol: f64) -> Result<Maximum>
where
    F: Fn(f64) -> f64,
{
    if grid < 3 {
        return Err(Error::InvalidArgument("grid needs at least 3 points".into()));
    }
    let step = (hi - lo) / (grid - 1) as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for i in 0..grid {
        let v = f(lo + step * i as f64);
        if v > best.1 {
            best = (i, v);
        }
    }
    if !best.1.is_finite() {
        return Err(Error::NonConvergence {
            message: "objective is not finite anywhere on the scan grid".into(),
            best_value: best.1,
        });
    }
    let a = lo + step * best.0.saturating_sub(1) as f64;
    let b = lo + step * (best.0 + 1).min(grid - 1) as f64;
    golden_section_max(f, a, b, xtol, 500)
}

/// Refines a located maximum with Newton steps on a central-difference parabola
/// of half-width `h`. Useful on plateaus where value comparisons alone stall at
/// the rounding floor; steps that would leave `[lo, hi]` are rejected.
pub fn parabolic_polish<F>(f: F, start: Maximum, h: f64, lo: f64, hi: f64, iterations: usize) -> Maximum
where
    F: Fn(f64) -> f64,
{
    let mut x = start.x;
    for _ in 0..iterations {
        let (fm, f0, fp) = (f(x - h), f(x), f(x + h));
        let curvature = fp - 2.0 * f0 + fm;
        if !(curvature < 0.0) {
            break;
        }
        let next = x - h * (fp - fm) / (2.0 * curvature);
        if !(next > lo && next < hi) {
            break;
        }
        x = next;
    }
    Maximum {
        x,
        value: f(x),
        iterations: start.iterations + iterations,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Nelder–Mead maximization starting from `start` with initial edge length `step`.
/// Converges when the spread of simplex values drops below `ftol`.
pub fn nelder_mead_max<F>(f: &F, start: &[f64], step: f64, ftol: f64, max_iter: usize) -> SimplexResult
where
    F: Fn(&[f64]) -> f64,
{
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step;
        simplex.push(p);
    }
    // minimize the negated objective
    let g = |x: &[f64]| -f(x);
    let mut values: Vec<f64> = simplex.iter().map(|p| g(p)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if (values[n] - values[0]).abs() <= ftol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|d| simplex[..n].iter().map(|p| p[d]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            (0..n).map(|d| centroid[d] + t * (simplex[n][d] - centroid[d])).collect()
        };

        let reflected = along(-1.0);
        let fr = g(&reflected);
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = g(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
        } else {
            let (contracted, fc) = if fr < values[n] {
                let p = along(-0.5);
                let v = g(&p);
                (p, v)
            } else {
                let p = along(0.5);
                let v = g(&p);
                (p, v)
            };
            if fc < values[n].min(fr) {
                simplex[n] = contracted;
                values[n] = fc;
            } else {
                let best = simplex[0].clone();
                for i in 1..=n {
                    for d in 0..n {
                        simplex[i][d] = best[d] + 0.5 * (simplex[i][d] - best[d]);
                    }
                    values[i] = g(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
    SimplexResult {
        x: simplex[best].clone(),
        value: -values[best],
        iterations,
        converged,
    }
}
