//! Local monodromy around the five divisors in the y-plane.

use num_complex::Complex;
use serde::Serialize;

use super::integrate::{integrate_path_with_precision, IntegrationOptions};
use super::mat::{self, cser, Mat4, C64};
use super::params::NumericParams;
use super::path::{Orientation, PathSpec, Segment};
use super::NumericError;
use crate::algebra::Rational;
use crate::connection::{ConnectionSystem, DivisorLabel};

/// Intermediate value of the fixed coordinate for loops around y₁ = 1,
/// y₂ = 1 and the line; keeps the line divisor away from the circle.
pub const DETOUR: C64 = Complex::new(0.5, 0.3);

pub fn default_base() -> [C64; 2] {
    [Complex::new(0.1, 0.0), Complex::new(0.1, 0.0)]
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MonodromyOptions {
    #[serde(with = "cser::point")]
    pub base: [C64; 2],
    /// Circle radius; per-divisor default when `None`.
    pub radius: Option<f64>,
    pub tol: f64,
    pub precision_bits: u32,
    pub orientation: Orientation,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions {
            base: default_base(),
            radius: None,
            tol: 1e-12,
            precision_bits: 53,
            orientation: Orientation::Counterclockwise,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyResult {
    pub divisor: String,
    pub orientation: Orientation,
    #[serde(with = "cser::mat4")]
    pub transport: Mat4<f64>,
    #[serde(with = "cser::vec")]
    pub eigenvalues: Vec<C64>,
    /// Local exponents at the parameters, from the residue eigenstructure.
    pub exponents: Vec<String>,
    #[serde(with = "cser::vec")]
    pub expected: Vec<C64>,
    /// Eigenvalues of the numeric residue matrix.
    #[serde(with = "cser::vec")]
    pub residue_eigenvalues: Vec<C64>,
    pub max_deviation: f64,
    /// `|det T − exp(±2πi tr R)|`.
    pub det_defect: f64,
    /// Distance between the path's end and start points.
    pub residual: f64,
    pub resonance_warning: Option<String>,
    pub steps: usize,
    pub precision_bits: u32,
    pub path: PathSpec,
}

fn default_radius(d: DivisorLabel, base: [C64; 2]) -> f64 {
    match d {
        DivisorLabel::Y1 => base[0].norm(),
        DivisorLabel::Y2 => base[1].norm(),
        _ => 0.2,
    }
}

fn point(a: C64, b: C64) -> [C64; 2] {
    [a, b]
}

/// Base → circle around the divisor → base.
pub fn loop_path(d: DivisorLabel, base: [C64; 2], radius: Option<f64>, o: Orientation) -> PathSpec {
    let r = radius.unwrap_or_else(|| default_radius(d, base));
    let one = Complex::new(1.0, 0.0);
    let (approach, circle) = match d {
        DivisorLabel::Y1 | DivisorLabel::Y2 => {
            let k = if d == DivisorLabel::Y1 { 0 } else { 1 };
            let z = base[k];
            let dir = if z.norm() > 0.0 { z / z.norm() } else { one };
            let mut on = base;
            on[k] = dir * r;
            (
                vec![base, on],
                Segment::Circle {
                    coord: k,
                    center: Complex::new(0.0, 0.0),
                    radius: r,
                    start_angle: dir.arg(),
                    orientation: o,
                    fixed: base[1 - k],
                },
            )
        }
        DivisorLabel::Y1m1 => (
            vec![base, point(base[0], DETOUR), point(one - r, DETOUR)],
            Segment::Circle {
                coord: 0,
                center: one,
                radius: r,
                start_angle: std::f64::consts::PI,
                orientation: o,
                fixed: DETOUR,
            },
        ),
        DivisorLabel::Y2m1 => (
            vec![base, point(DETOUR, base[1]), point(DETOUR, one - r)],
            Segment::Circle {
                coord: 1,
                center: one,
                radius: r,
                start_angle: std::f64::consts::PI,
                orientation: o,
                fixed: DETOUR,
            },
        ),
        DivisorLabel::Line => {
            let c = one - DETOUR;
            (
                vec![base, point(base[0], DETOUR), point(c - r, DETOUR)],
                Segment::Circle {
                    coord: 0,
                    center: c,
                    radius: r,
                    start_angle: std::f64::consts::PI,
                    orientation: o,
                    fixed: DETOUR,
                },
            )
        }
    };
    let back: Vec<[C64; 2]> = approach.iter().rev().copied().collect();
    PathSpec::new(vec![
        Segment::Polyline {
            waypoints: approach,
        },
        circle,
        Segment::Polyline { waypoints: back },
    ])
}

/// Local exponents along a divisor as exact rationals in (a, b, c₁, c₂).
pub fn expected_exponents(d: DivisorLabel, p: &NumericParams) -> Vec<Rational> {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    match d {
        DivisorLabel::Y1 | DivisorLabel::Y2m1 => {
            let e = &one - &p.c1;
            vec![zero.clone(), zero, e.clone(), e]
        }
        DivisorLabel::Y2 | DivisorLabel::Y1m1 => {
            let e = &one - &p.c2;
            vec![zero.clone(), zero, e.clone(), e]
        }
        DivisorLabel::Line => {
            let l = p.lambdas();
            let e = Rational::from_integer(2.into()) * (&l[2] + &l[3]);
            vec![zero.clone(), zero.clone(), zero, e]
        }
    }
}

fn exp_2pi_i(mu: C64, sign: f64) -> C64 {
    (Complex::new(0.0, 2.0 * std::f64::consts::PI * sign) * mu).exp()
}

fn resonance(eigs: &[C64]) -> Option<String> {
    for (i, a) in eigs.iter().enumerate() {
        for b in &eigs[i + 1..] {
            let d = a - b;
            let k = d.re.round();
            if k != 0.0 && (d - Complex::new(k, 0.0)).norm() < 1e-9 {
                return Some(format!("exponents {a} and {b} differ by the integer {k}"));
            }
        }
    }
    None
}

pub fn monodromy(
    sys: &ConnectionSystem,
    params: &NumericParams,
    d: DivisorLabel,
    opts: &MonodromyOptions,
) -> Result<MonodromyResult, NumericError> {
    let residue = sys
        .residue(d)
        .ok_or_else(|| NumericError::Shape(format!("system has no residue along {}", d.name())))?;
    let r = residue_numeric(residue, params)?;
    let residue_eigenvalues =
        mat::eigenvalues(&r).ok_or_else(|| NumericError::Eigen(d.name().to_string()))?;

    let path = loop_path(d, opts.base, opts.radius, opts.orientation);
    let io = IntegrationOptions::with_tol(opts.tol);
    let t = integrate_path_with_precision(
        sys,
        params,
        &path,
        &mat::identity(),
        &io,
        opts.precision_bits,
    )?;
    let eigenvalues =
        mat::eigenvalues(&t.matrix).ok_or_else(|| NumericError::Eigen(d.name().to_string()))?;

    let sign = opts.orientation.sign();
    let exps = expected_exponents(d, params);
    let expected: Vec<C64> = exps
        .iter()
        .map(|e| {
            exp_2pi_i(
                Complex::new(num_traits::ToPrimitive::to_f64(e).unwrap_or(f64::NAN), 0.0),
                sign,
            )
        })
        .collect();
    let max_deviation = mat::multiset_distance(&eigenvalues, &expected);
    let det_defect = (mat::determinant(&t.matrix) - exp_2pi_i(mat::trace(&r), sign)).norm();
    Ok(MonodromyResult {
        divisor: d.name().to_string(),
        orientation: opts.orientation,
        transport: t.matrix,
        eigenvalues,
        exponents: exps.iter().map(|e| e.to_string()).collect(),
        expected,
        resonance_warning: resonance(&residue_eigenvalues),
        residue_eigenvalues,
        max_deviation,
        det_defect,
        residual: path.gaps().1,
        steps: t.steps,
        precision_bits: t.precision_bits,
        path,
    })
}

fn residue_numeric(
    m: &crate::forms::FMatrix,
    params: &NumericParams,
) -> Result<Mat4<f64>, NumericError> {
    let pts = params.assignment();
    let mut out = mat::zero::<f64>();
    for i in 0..4 {
        for j in 0..4 {
            let v = m
                .get(i, j)
                .partial_eval(&pts)
                .map_err(|e| NumericError::Algebra(e.to_string()))?;
            let c = v.as_constant().ok_or_else(|| {
                NumericError::Shape(format!("residue entry ({i},{j}) is not constant"))
            })?;
            out[i][j] = Complex::new(num_traits::ToPrimitive::to_f64(&c).unwrap_or(f64::NAN), 0.0);
        }
    }
    Ok(out)
}

/// Monodromy around every divisor, independent runs in parallel.
pub fn monodromy_all(
    sys: &ConnectionSystem,
    params: &NumericParams,
    opts: &MonodromyOptions,
) -> Vec<Result<MonodromyResult, NumericError>> {
    crate::parallel::map(&DivisorLabel::ALL, |d| monodromy(sys, params, *d, opts))
}

/// Contractible square at `base`: `y₁` moves along the reals, `y₂` along
/// the imaginary direction.
pub fn flatness_loop(base: [C64; 2], size: f64) -> PathSpec {
    let (u, v) = (Complex::new(size, 0.0), Complex::new(0.0, size));
    PathSpec::polyline(vec![
        base,
        [base[0] + u, base[1]],
        [base[0] + u, base[1] + v],
        [base[0], base[1] + v],
        base,
    ])
}

/// `‖T − I‖∞` for the transport around [`flatness_loop`].
pub fn flatness_defect(
    sys: &ConnectionSystem,
    params: &NumericParams,
    base: [C64; 2],
    tol: f64,
    precision_bits: u32,
) -> Result<f64, NumericError> {
    let path = flatness_loop(base, 0.2);
    let io = IntegrationOptions::with_tol(tol);
    let t =
        integrate_path_with_precision(sys, params, &path, &mat::identity(), &io, precision_bits)?;
    Ok(mat::norm_inf(&mat::sub(&t.matrix, &mat::identity())))
}
