use crate::error::{CpswfError, Result};

fn check_params(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > -1.0) || !(beta > -1.0) {
        return Err(CpswfError::InvalidParameter(format!(
            "Jacobi parameters must exceed -1 (alpha = {alpha}, beta = {beta})"
        )));
    }
    Ok(())
}

/// P_n^{(α,β)}(x) by the three-term recurrence.
pub fn jacobi_eval(n: usize, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    check_params(alpha, beta)?;
    Ok(jacobi_unchecked(n, alpha, beta, x))
}

/// Values P_0 … P_{n_max} at `x`.
pub fn jacobi_all(n_max: usize, alpha: f64, beta: f64, x: f64) -> Result<Vec<f64>> {
    check_params(alpha, beta)?;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut prev = 0.0;
    let mut cur = 1.0;
    out.push(cur);
    for n in 1..=n_max {
        let next = step(n, alpha, beta, x, cur, prev);
        prev = cur;
        cur = next;
        out.push(cur);
    }
    Ok(out)
}

#[inline]
fn step(n: usize, a: f64, b: f64, x: f64, p1: f64, p2: f64) -> f64 {
    if n == 1 {
        return (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    }
    let nf = n as f64;
    let s = 2.0 * nf + a + b;
    let c0 = 2.0 * nf * (nf + a + b) * (s - 2.0);
    let c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    let c2 = 2.0 * (nf + a - 1.0) * (nf + b - 1.0) * s;
    (c1 * p1 - c2 * p2) / c0
}

pub(crate) fn jacobi_unchecked(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 1..=n {
        let next = step(k, alpha, beta, x, cur, prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// d/dx P_n^{(α,β)}(x) = (n+α+β+1)/2 · P_{n-1}^{(α+1,β+1)}(x).
pub fn jacobi_deriv(n: usize, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    jacobi_deriv_k(n, alpha, beta, x, 1)
}

/// k-th derivative via repeated degree shifts.
pub fn jacobi_deriv_k(n: usize, alpha: f64, beta: f64, x: f64, k: usize) -> Result<f64> {
    check_params(alpha, beta)?;
    if k > n {
        return Ok(0.0);
    }
    let nf = n as f64;
    let factor: f64 = (1..=k)
        .map(|i| (nf + alpha + beta + i as f64) / 2.0)
        .product();
    Ok(factor * jacobi_unchecked(n - k, alpha + k as f64, beta + k as f64, x))
}
