//! Truncated F₄ double series and the scalar-PDE residual.

use num_complex::Complex;

use super::eval::CompiledRf;
use super::mat::C64;
use super::params::NumericParams;
use super::NumericError;
use crate::algebra::{Var, NVARS};
use crate::connection::{ScalarOperator, ScalarPde};

const MAGNITUDE_CAP: f64 = 1e250;

fn check_domain(x: [C64; 2]) -> Result<(), NumericError> {
    let s = x[0].norm().sqrt() + x[1].norm().sqrt();
    if s < 1.0 {
        Ok(())
    } else {
        Err(NumericError::Domain(format!(
            "sqrt|x1| + sqrt|x2| = {s:.6} is not below 1"
        )))
    }
}

/// Coefficients `c[m][n]` of `x₁^m x₂^n` for `m + n ≤ order`, by the
/// Pochhammer ratio recurrences.
pub fn f4_coefficients(p: [f64; 4], order: usize) -> Result<Vec<Vec<f64>>, NumericError> {
    let [a, b, c1, c2] = p;
    let mut c = vec![Vec::new(); order + 1];
    for m in 0..=order {
        c[m] = vec![0.0; order + 1 - m];
        if m == 0 {
            c[0][0] = 1.0;
        } else {
            let k = (m - 1) as f64;
            c[m][0] = c[m - 1][0] * (a + k) * (b + k) / ((c1 + k) * (k + 1.0));
        }
        for n in 1..=order - m {
            let s = (m + n - 1) as f64;
            let nn = (n - 1) as f64;
            c[m][n] = c[m][n - 1] * (a + s) * (b + s) / ((c2 + nn) * (nn + 1.0));
            if !c[m][n].is_finite() || c[m][n].abs() > MAGNITUDE_CAP {
                return Err(NumericError::Overflow);
            }
        }
    }
    Ok(c)
}

/// Truncated series with the partial derivatives needed by the PDEs.
#[derive(Clone, Copy, Debug, Default)]
pub struct SeriesJet {
    pub f: C64,
    pub d1: C64,
    pub d2: C64,
    pub d11: C64,
    pub d22: C64,
    pub d12: C64,
}

fn powers(z: C64, n: usize) -> Vec<C64> {
    let mut v = Vec::with_capacity(n + 1);
    let mut acc = Complex::new(1.0, 0.0);
    for _ in 0..=n {
        v.push(acc);
        acc *= z;
    }
    v
}

pub fn f4_jet(
    params: &NumericParams,
    x: [C64; 2],
    order: usize,
) -> Result<SeriesJet, NumericError> {
    check_domain(x)?;
    let c = f4_coefficients(params.to_f64(), order)?;
    let p1 = powers(x[0], order);
    let p2 = powers(x[1], order);
    let mut j = SeriesJet::default();
    for (m, row) in c.iter().enumerate() {
        for (n, &cmn) in row.iter().enumerate() {
            let (mf, nf) = (m as f64, n as f64);
            j.f += cmn * p1[m] * p2[n];
            if m >= 1 {
                j.d1 += cmn * mf * p1[m - 1] * p2[n];
            }
            if n >= 1 {
                j.d2 += cmn * nf * p1[m] * p2[n - 1];
            }
            if m >= 2 {
                j.d11 += cmn * mf * (mf - 1.0) * p1[m - 2] * p2[n];
            }
            if n >= 2 {
                j.d22 += cmn * nf * (nf - 1.0) * p1[m] * p2[n - 2];
            }
            if m >= 1 && n >= 1 {
                j.d12 += cmn * mf * nf * p1[m - 1] * p2[n - 1];
            }
        }
    }
    Ok(j)
}

/// Partial sum over `m + n ≤ order` of the F₄ series.
pub fn f4_series(params: &NumericParams, x: [C64; 2], order: usize) -> Result<C64, NumericError> {
    Ok(f4_jet(params, x, order)?.f)
}

/// Partial sum of Gauss ₂F₁(a, b; c; x) up to `x^order`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: C64, order: usize) -> C64 {
    let mut term = Complex::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..order {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
    }
    sum
}

/// A scalar operator with its coefficients fixed at the parameters.
pub struct CompiledOperator {
    coeffs: [CompiledRf<f64>; 6],
}

impl CompiledOperator {
    pub fn new(op: &ScalarOperator, params: &NumericParams) -> Result<Self, NumericError> {
        Ok(CompiledOperator {
            coeffs: [
                CompiledRf::new(&op.d11, params)?,
                CompiledRf::new(&op.d22, params)?,
                CompiledRf::new(&op.d12, params)?,
                CompiledRf::new(&op.d1, params)?,
                CompiledRf::new(&op.d2, params)?,
                CompiledRf::new(&op.d0, params)?,
            ],
        })
    }

    pub fn apply(&self, x: [C64; 2], j: &SeriesJet) -> Result<C64, NumericError> {
        let mut pt = [Complex::new(0.0, 0.0); NVARS];
        pt[Var::X1.index()] = x[0];
        pt[Var::X2.index()] = x[1];
        let vals = [j.d11, j.d22, j.d12, j.d1, j.d2, j.f];
        let mut s = Complex::new(0.0, 0.0);
        for (c, v) in self.coeffs.iter().zip(vals) {
            let cv = c
                .eval(&pt)
                .ok_or_else(|| NumericError::Pole("operator coefficient".into()))?;
            s += cv * v;
        }
        Ok(s)
    }
}

/// Sample grid around `x`: the point itself and its coordinate halvings.
pub fn sample_grid(x: [C64; 2]) -> Vec<[C64; 2]> {
    vec![
        x,
        [x[0] * 0.5, x[1]],
        [x[0], x[1] * 0.5],
        [x[0] * 0.5, x[1] * 0.5],
    ]
}

/// Applies both derived operators to the truncated series; max modulus over
/// the sample grid.
pub fn pde_residual(
    params: &NumericParams,
    pde: &ScalarPde,
    x: [C64; 2],
    order: usize,
) -> Result<f64, NumericError> {
    pde_residual_at(params, pde, &sample_grid(x), order)
}

pub fn pde_residual_at(
    params: &NumericParams,
    pde: &ScalarPde,
    points: &[[C64; 2]],
    order: usize,
) -> Result<f64, NumericError> {
    let ops = [
        CompiledOperator::new(&pde.op1, params)?,
        CompiledOperator::new(&pde.op2, params)?,
    ];
    let mut worst: f64 = 0.0;
    for &x in points {
        let j = f4_jet(params, x, order)?;
        for op in &ops {
            worst = worst.max(op.apply(x, &j)?.norm());
        }
    }
    Ok(worst)
}
