//! Small deterministic local minimizers used by the exact-GME oracles.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;


#[derive(Debug, Clone)]
pub(crate) struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
}

/// Nelder–Mead simplex with standard coefficients.
pub(crate) fn nelder_mead<F>(mut f: F, x0: &[f64], step: f64, max_iter: usize, ftol: f64) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let d = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    simplex.push(x0.to_vec());
    for i in 0..d {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if (values[d] - values[0]).abs() <= ftol * (values[0].abs() + values[d].abs()) + 1e-300 {
            break;
        }

        let mut centroid = vec![0.0; d];
        for v in &simplex[..d] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / d as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[d]).map(|(c, w)| c + t * (w - c)).collect()
        };

        let reflected = along(-1.0);
        let fr = f(&reflected);
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[d] = expanded;
                values[d] = fe;
            } else {
                simplex[d] = reflected;
                values[d] = fr;
            }
        } else if fr < values[d - 1] {
            simplex[d] = reflected;
            values[d] = fr;
        } else {
            let contracted = if fr < values[d] { along(-0.5) } else { along(0.5) };
            let fc = f(&contracted);
            if fc < values[d].min(fr) {
                simplex[d] = contracted;
                values[d] = fc;
            } else {
                let best = simplex[0].clone();
                for i in 1..=d {
                    for (x, b) in simplex[i].iter_mut().zip(&best) {
                        *x = b + 0.5 * (*x - b);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=d).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    Minimum { x: simplex[best].clone(), f: values[best] }
}

/// BFGS with an Armijo backtracking line search. `fg` returns the value and
/// writes the gradient.
pub(crate) fn bfgs<F>(mut fg: F, x0: &[f64], max_iter: usize, gtol: f64) -> Minimum
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let d = x0.len();
    let mut x = x0.to_vec();
    let mut g = vec![0.0; d];
    let mut fx = fg(&x, &mut g);
    let mut h = identity(d);
    let mut x_new = vec![0.0; d];
    let mut g_new = vec![0.0; d];

    for _ in 0..max_iter {
        if norm(&g) < gtol {
            break;
        }
        let mut p: Vec<f64> = (0..d).map(|i| -dot(&h[i], &g)).collect();
        let mut slope = dot(&p, &g);
        if slope >= 0.0 {
            h = identity(d);
            p = g.iter().map(|v| -v).collect();
            slope = dot(&p, &g);
        }

        let mut t = 1.0;
        let mut f_new;
        loop {
            for i in 0..d {
                x_new[i] = x[i] + t * p[i];
            }
            f_new = fg(&x_new, &mut g_new);
            if f_new <= fx + 1e-4 * t * slope || t < 1e-16 {
                break;
            }
            t *= 0.5;
        }
        if t < 1e-16 && f_new > fx {
            break;
        }

        let s: Vec<f64> = (0..d).map(|i| x_new[i] - x[i]).collect();
        let y: Vec<f64> = (0..d).map(|i| g_new[i] - g[i]).collect();
        let sy = dot(&s, &y);
        x.copy_from_slice(&x_new);
        g.copy_from_slice(&g_new);
        let improvement = fx - f_new;
        fx = f_new;
        if sy > 1e-18 {
            let hy: Vec<f64> = (0..d).map(|i| dot(&h[i], &y)).collect();
            let yhy = dot(&y, &hy);
            let rho = 1.0 / sy;
            for i in 0..d {
                for j in 0..d {
                    h[i][j] += rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
                }
            }
        }
        if improvement.abs() < 1e-300 && norm(&s) < 1e-300 {
            break;
        }
    }
    Minimum { x, f: fx }
}

fn identity(d: usize) -> Vec<Vec<f64>> {
    (0..d).map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
