//! Adaptive Dormand–Prince 5(4) transport of `F' = (A₁ẏ₁ + A₂ẏ₂)F`.

use num_complex::Complex;
use serde::Serialize;

use super::eval::CompiledForm;
use super::mat::{self, Mat4};
use super::params::NumericParams;
use super::path::{PathSpec, Piece};
use super::real::{czero, Cx, DoubleDouble, Real};
use super::NumericError;
use crate::algebra::q;
use crate::connection::ConnectionSystem;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct IntegrationOptions {
    /// Local error bound per step, mixed absolute/relative.
    pub tol: f64,
    pub max_steps: usize,
    /// Smallest admissible step in the piece parameter.
    pub min_step: f64,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions {
            tol: 1e-12,
            max_steps: 2_000_000,
            min_step: 1e-13,
        }
    }
}

impl IntegrationOptions {
    pub fn with_tol(tol: f64) -> Self {
        IntegrationOptions {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct Transport<T: Real> {
    pub matrix: Mat4<T>,
    /// `∫ tr(A₁ẏ₁ + A₂ẏ₂) dt`, integrated alongside.
    pub trace_integral: Cx<T>,
    pub steps: usize,
    pub rejected: usize,
}

struct Tableau<T> {
    c: [T; 7],
    a: [[T; 6]; 7],
    b5: [T; 7],
    e: [T; 7],
}

fn tableau<T: Real>() -> Tableau<T> {
    let r = |n: i64, d: i64| T::from_rational(&q(n, d));
    let z = T::zero();
    let b5 = [
        r(35, 384),
        z,
        r(500, 1113),
        r(125, 192),
        r(-2187, 6784),
        r(11, 84),
        z,
    ];
    let b4 = [
        r(5179, 57600),
        z,
        r(7571, 16695),
        r(393, 640),
        r(-92097, 339200),
        r(187, 2100),
        r(1, 40),
    ];
    let mut e = [z; 7];
    for k in 0..7 {
        e[k] = b5[k] - b4[k];
    }
    Tableau {
        c: [z, r(1, 5), r(3, 10), r(4, 5), r(8, 9), T::one(), T::one()],
        a: [
            [z; 6],
            [r(1, 5), z, z, z, z, z],
            [r(3, 40), r(9, 40), z, z, z, z],
            [r(44, 45), r(-56, 15), r(32, 9), z, z, z],
            [
                r(19372, 6561),
                r(-25360, 2187),
                r(64448, 6561),
                r(-212, 729),
                z,
                z,
            ],
            [
                r(9017, 3168),
                r(-355, 33),
                r(46732, 5247),
                r(49, 176),
                r(-5103, 18656),
                z,
            ],
            [b5[0], b5[1], b5[2], b5[3], b5[4], b5[5]],
        ],
        b5,
        e,
    }
}

#[derive(Clone, Copy)]
struct State<T: Real> {
    m: Mat4<T>,
    tr: Cx<T>,
}

fn rhs<T: Real>(
    form: &CompiledForm<T>,
    piece: &Piece,
    t: T,
    s: &State<T>,
) -> Result<State<T>, NumericError> {
    let (y, v) = piece.at(t);
    let a = form.contract(y, v)?;
    Ok(State {
        m: mat::mul(&a, &s.m),
        tr: mat::trace(&a),
    })
}

fn combine<T: Real>(base: &State<T>, h: T, coeffs: &[T], ks: &[State<T>]) -> State<T> {
    let terms: Vec<(T, &Mat4<T>)> = coeffs.iter().zip(ks).map(|(c, k)| (*c * h, &k.m)).collect();
    let mut tr = base.tr;
    for (c, k) in coeffs.iter().zip(ks) {
        tr = tr + k.tr * (*c * h);
    }
    State {
        m: mat::axpy(&base.m, &terms),
        tr,
    }
}

fn integrate_piece<T: Real>(
    form: &CompiledForm<T>,
    piece: &Piece,
    start: State<T>,
    opts: &IntegrationOptions,
    stats: &mut (usize, usize),
) -> Result<State<T>, NumericError> {
    let tab = tableau::<T>();
    let tol = T::from_f64(opts.tol);
    let mut t = T::zero();
    let one = T::one();
    let mut h = T::from_f64((0.05 / piece.length().max(1e-3)).min(0.1));
    let mut s = start;
    let mut k0 = rhs(form, piece, t, &s)?;
    while t < one {
        if stats.0 + stats.1 > opts.max_steps {
            return Err(NumericError::ToleranceNotMet { steps: stats.0 });
        }
        if t + h > one {
            h = one - t;
        }
        let mut ks: Vec<State<T>> = Vec::with_capacity(7);
        ks.push(k0);
        for i in 1..7 {
            let st = combine(&s, h, &tab.a[i][..i], &ks);
            ks.push(rhs(form, piece, t + tab.c[i] * h, &st)?);
        }
        let next = combine(&s, h, &tab.b5, &ks[..6]);
        let err_state = combine(
            &State {
                m: mat::zero(),
                tr: czero(),
            },
            h,
            &tab.e,
            &ks,
        );
        let scale = one + mat::max_abs(&next.m);
        let err = (mat::max_abs(&err_state.m) / (tol * scale)).to_f64();
        if err.is_finite() && err <= 1.0 {
            t = t + h;
            s = next;
            k0 = ks[6];
            stats.0 += 1;
            let fac = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h = h * T::from_f64(fac);
        } else {
            stats.1 += 1;
            let fac = if err.is_finite() {
                (0.9 * err.powf(-0.25)).clamp(0.1, 0.9)
            } else {
                0.1
            };
            h = h * T::from_f64(fac);
            if h.to_f64() < opts.min_step {
                return Err(NumericError::StepUnderflow { t: t.to_f64() });
            }
        }
    }
    Ok(s)
}

/// Transports `f0` along the path in the given precision.
pub fn integrate_compiled<T: Real>(
    form: &CompiledForm<T>,
    path: &PathSpec,
    f0: Mat4<T>,
    opts: &IntegrationOptions,
) -> Result<Transport<T>, NumericError> {
    path.validate()?;
    let mut s = State { m: f0, tr: czero() };
    let mut stats = (0, 0);
    for piece in path.pieces() {
        s = integrate_piece(form, &piece, s, opts, &mut stats)?;
    }
    Ok(Transport {
        matrix: s.m,
        trace_integral: s.tr,
        steps: stats.0,
        rejected: stats.1,
    })
}

/// Transport result rounded to `f64`.
#[derive(Clone, Debug, Serialize)]
pub struct TransportF64 {
    #[serde(with = "super::mat::cser::mat4")]
    pub matrix: Mat4<f64>,
    #[serde(with = "super::mat::cser::c64")]
    pub trace_integral: Complex<f64>,
    pub steps: usize,
    pub rejected: usize,
    pub precision_bits: u32,
}

fn round<T: Real>(t: Transport<T>) -> TransportF64 {
    TransportF64 {
        matrix: mat::to_f64(&t.matrix),
        trace_integral: super::real::to_c64(t.trace_integral),
        steps: t.steps,
        rejected: t.rejected,
        precision_bits: T::MANTISSA_BITS,
    }
}

/// Picks `f64` up to 53 bits and double-double up to 106.
pub fn integrate_path_with_precision(
    sys: &ConnectionSystem,
    params: &NumericParams,
    path: &PathSpec,
    f0: &Mat4<f64>,
    opts: &IntegrationOptions,
    precision_bits: u32,
) -> Result<TransportF64, NumericError> {
    match precision_bits {
        0..=53 => {
            let form = CompiledForm::<f64>::new(sys, params)?;
            integrate_compiled(&form, path, *f0, opts).map(round)
        }
        54..=106 => {
            let form = CompiledForm::<DoubleDouble>::new(sys, params)?;
            integrate_compiled(&form, path, mat::from_f64(f0), opts).map(round)
        }
        b => Err(NumericError::Precision(b)),
    }
}

pub fn integrate_path(
    sys: &ConnectionSystem,
    params: &NumericParams,
    path: &PathSpec,
    f0: &Mat4<f64>,
    tol: f64,
) -> Result<TransportF64, NumericError> {
    integrate_path_with_precision(
        sys,
        params,
        path,
        f0,
        &IntegrationOptions::with_tol(tol),
        53,
    )
}
