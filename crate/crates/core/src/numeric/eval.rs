//! Numeric evaluation of connection forms: parameters are substituted as
//! exact rationals, and the result is rounded once to the working precision.

use num_complex::Complex;

use super::mat::{self, Mat4, C64};
use super::params::NumericParams;
use super::real::{cabs, czero, Cx, Real};
use super::NumericError;
use crate::algebra::{Polynomial, RationalFunction as Rf, Var, NVARS};
use crate::connection::{ConnectionSystem, DivisorLabel};
use crate::forms::FMatrix;

#[derive(Clone, Debug)]
struct CompiledPoly<T: Real> {
    terms: Vec<(Cx<T>, [u8; NVARS])>,
}

impl<T: Real> CompiledPoly<T> {
    fn new(p: &Polynomial) -> Self {
        CompiledPoly {
            terms: p
                .terms()
                .map(|(m, c)| (Complex::new(T::from_rational(c), T::zero()), *m.exponents()))
                .collect(),
        }
    }

    fn eval(&self, point: &[Cx<T>; NVARS]) -> Cx<T> {
        let mut s = czero();
        for (c, e) in &self.terms {
            let mut t = *c;
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t * point[v];
                }
            }
            s = s + t;
        }
        s
    }
}

/// A rational function with its λ's already fixed.
#[derive(Clone, Debug)]
pub struct CompiledRf<T: Real> {
    num: CompiledPoly<T>,
    den: CompiledPoly<T>,
}

impl<T: Real> CompiledRf<T> {
    pub fn new(f: &Rf, params: &NumericParams) -> Result<Self, NumericError> {
        let g = f
            .partial_eval(&params.assignment())
            .map_err(|e| NumericError::Algebra(e.to_string()))?;
        Ok(CompiledRf {
            num: CompiledPoly::new(g.numerator()),
            den: CompiledPoly::new(g.denominator()),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.num.terms.is_empty()
    }

    /// `None` at a pole.
    pub fn eval(&self, point: &[Cx<T>; NVARS]) -> Option<Cx<T>> {
        if self.is_zero() {
            return Some(czero());
        }
        let d = self.den.eval(point);
        if cabs(d).to_f64() == 0.0 {
            return None;
        }
        Some(self.num.eval(point) / d)
    }
}

/// Point in the global variable table with only two coordinates set.
pub fn embed<T: Real>(coords: (Var, Var), p: [Cx<T>; 2]) -> [Cx<T>; NVARS] {
    let mut out = [czero(); NVARS];
    out[coords.0.index()] = p[0];
    out[coords.1.index()] = p[1];
    out
}

fn divisor_value<T: Real>(d: DivisorLabel, y: [Cx<T>; 2]) -> Cx<T> {
    let one = Complex::new(T::one(), T::zero());
    match d {
        DivisorLabel::Y1 => y[0],
        DivisorLabel::Y2 => y[1],
        DivisorLabel::Y1m1 => y[0] - one,
        DivisorLabel::Y2m1 => y[1] - one,
        DivisorLabel::Line => y[0] + y[1] - one,
    }
}

fn divisor_gradient(d: DivisorLabel) -> [bool; 2] {
    match d {
        DivisorLabel::Y1 | DivisorLabel::Y1m1 => [true, false],
        DivisorLabel::Y2 | DivisorLabel::Y2m1 => [false, true],
        DivisorLabel::Line => [true, true],
    }
}

/// Distances from a y-point to the five divisors (Euclidean in ℂ²).
pub fn divisor_distances(y: [C64; 2]) -> [(DivisorLabel, f64); 5] {
    DivisorLabel::ALL.map(|d| {
        let v = divisor_value::<f64>(d, y).norm();
        let scale = if d == DivisorLabel::Line {
            2f64.sqrt()
        } else {
            1.0
        };
        (d, v / scale)
    })
}

/// Distances from an x-point to x₁ = 0, x₂ = 0 and R(x) = 0 (the last as |R|).
pub fn x_divisor_values(x: [C64; 2]) -> [(&'static str, f64); 3] {
    let r = x[0] * x[0] + x[1] * x[1] - 2.0 * x[0] * x[1] - 2.0 * x[0] - 2.0 * x[1] + 1.0;
    [("x1", x[0].norm()), ("x2", x[1].norm()), ("R", r.norm())]
}

fn residue_matrix<T: Real>(m: &FMatrix, params: &NumericParams) -> Result<Mat4<T>, NumericError> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(NumericError::Shape(format!("{}x{}", m.rows(), m.cols())));
    }
    let pts = params.assignment();
    let mut out = mat::zero::<T>();
    for i in 0..4 {
        for j in 0..4 {
            let v = m
                .get(i, j)
                .partial_eval(&pts)
                .map_err(|e| NumericError::Algebra(e.to_string()))?;
            let c = v.as_constant().ok_or_else(|| {
                NumericError::Shape(format!("residue entry ({i},{j}) is not constant: {v}"))
            })?;
            out[i][j] = Complex::new(T::from_rational(&c), T::zero());
        }
    }
    Ok(out)
}

/// A connection ready for repeated evaluation.
#[derive(Clone, Debug)]
pub enum CompiledForm<T: Real> {
    /// `Σ R_D dlog D` in y-coordinates.
    Log {
        residues: Vec<(DivisorLabel, Mat4<T>)>,
    },
    General {
        coords: (Var, Var),
        parts: [Vec<Vec<CompiledRf<T>>>; 2],
    },
}

impl<T: Real> CompiledForm<T> {
    pub fn new(sys: &ConnectionSystem, params: &NumericParams) -> Result<Self, NumericError> {
        if !sys.divisors.is_empty() {
            let residues = sys
                .divisors
                .iter()
                .map(|t| Ok((t.label, residue_matrix::<T>(&t.residue, params)?)))
                .collect::<Result<Vec<_>, NumericError>>()?;
            return Ok(CompiledForm::Log { residues });
        }
        let compile = |m: &FMatrix| -> Result<Vec<Vec<CompiledRf<T>>>, NumericError> {
            (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| CompiledRf::new(m.get(i, j), params))
                        .collect()
                })
                .collect()
        };
        Ok(CompiledForm::General {
            coords: sys.form.coords,
            parts: [compile(&sys.form.parts[0])?, compile(&sys.form.parts[1])?],
        })
    }

    /// Constant residues given directly.
    pub fn from_residues(residues: Vec<(DivisorLabel, Mat4<T>)>) -> Self {
        CompiledForm::Log { residues }
    }

    pub fn residue(&self, d: DivisorLabel) -> Option<&Mat4<T>> {
        match self {
            CompiledForm::Log { residues } => {
                residues.iter().find(|(l, _)| *l == d).map(|(_, m)| m)
            }
            CompiledForm::General { .. } => None,
        }
    }

    pub fn eval(&self, p: [Cx<T>; 2]) -> Result<[Mat4<T>; 2], NumericError> {
        match self {
            CompiledForm::Log { residues } => {
                let mut out = [mat::zero::<T>(), mat::zero::<T>()];
                for (d, r) in residues {
                    let v = divisor_value(*d, p);
                    if cabs(v).to_f64() == 0.0 {
                        return Err(NumericError::Pole(d.name().to_string()));
                    }
                    let inv = Complex::new(T::one(), T::zero()) / v;
                    for (k, on) in divisor_gradient(*d).into_iter().enumerate() {
                        if on {
                            out[k] = mat::add(&out[k], &mat::scale(r, inv));
                        }
                    }
                }
                Ok(out)
            }
            CompiledForm::General { coords, parts } => {
                let point = embed(*coords, p);
                let mut out = [mat::zero::<T>(), mat::zero::<T>()];
                for k in 0..2 {
                    for i in 0..4 {
                        for j in 0..4 {
                            out[k][i][j] = parts[k][i][j].eval(&point).ok_or_else(|| {
                                NumericError::Pole(pole_name(*coords, [p[0], p[1]]))
                            })?;
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// `A₁ẏ₁ + A₂ẏ₂`.
    pub fn contract(&self, p: [Cx<T>; 2], v: [Cx<T>; 2]) -> Result<Mat4<T>, NumericError> {
        if let CompiledForm::Log { residues } = self {
            let mut out = mat::zero::<T>();
            for (d, r) in residues {
                let val = divisor_value(*d, p);
                if cabs(val).to_f64() == 0.0 {
                    return Err(NumericError::Pole(d.name().to_string()));
                }
                let g = divisor_gradient(*d);
                let mut dv: Cx<T> = czero();
                if g[0] {
                    dv = dv + v[0];
                }
                if g[1] {
                    dv = dv + v[1];
                }
                out = mat::add(&out, &mat::scale(r, dv / val));
            }
            return Ok(out);
        }
        let [a1, a2] = self.eval(p)?;
        Ok(mat::add(&mat::scale(&a1, v[0]), &mat::scale(&a2, v[1])))
    }
}

fn pole_name<T: Real>(coords: (Var, Var), p: [Cx<T>; 2]) -> String {
    let p = [super::real::to_c64(p[0]), super::real::to_c64(p[1])];
    if coords.0 == Var::Y1 {
        let d = divisor_distances(p);
        let (l, _) = d.iter().fold(d[0], |a, b| if b.1 < a.1 { *b } else { a });
        l.name().to_string()
    } else {
        let d = x_divisor_values(p);
        let (l, _) = d.iter().fold(d[0], |a, b| if b.1 < a.1 { *b } else { a });
        l.to_string()
    }
}

/// `(A₁, A₂)` at a point, with `dF = (A₁dy₁ + A₂dy₂)F`.
pub fn eval_form(
    sys: &ConnectionSystem,
    params: &NumericParams,
    p: [C64; 2],
) -> Result<[Mat4<f64>; 2], NumericError> {
    CompiledForm::<f64>::new(sys, params)?.eval(p)
}

/// Same as [`eval_form`] but substituting a rational point exactly before
/// the single rounding.
pub fn eval_form_rational(
    sys: &ConnectionSystem,
    params: &NumericParams,
    p: [crate::algebra::Rational; 2],
) -> Result<[Mat4<f64>; 2], NumericError> {
    let mut pts = params.assignment();
    pts.push((sys.form.coords.0, p[0].clone()));
    pts.push((sys.form.coords.1, p[1].clone()));
    let mut out = [mat::zero::<f64>(), mat::zero::<f64>()];
    for k in 0..2 {
        let m = &sys.form.parts[k];
        for i in 0..4 {
            for j in 0..4 {
                let v = m.get(i, j).partial_eval(&pts).map_err(|_| {
                    let fp = [p[0].clone(), p[1].clone()].map(|r| {
                        Complex::new(num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN), 0.0)
                    });
                    NumericError::Pole(pole_name(sys.form.coords, fp))
                })?;
                let c = v.as_constant().ok_or_else(|| {
                    NumericError::Shape(format!("entry ({i},{j}) did not reduce to a number"))
                })?;
                out[k][i][j] = Complex::new(f64::from_rational(&c), 0.0);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{build_xi_hat, ParameterDictionary};

    #[test]
    fn pole_is_named() {
        let sys = build_xi_hat(&ParameterDictionary);
        let p = NumericParams::default();
        let e = eval_form(&sys, &p, [Complex::new(0.0, 0.0), Complex::new(0.3, 0.0)]).unwrap_err();
        assert_eq!(e, NumericError::Pole("y1".into()));
    }

    #[test]
    fn log_and_general_agree() {
        let mut sys = build_xi_hat(&ParameterDictionary);
        let p = NumericParams::default();
        let y = [Complex::new(0.2, 0.1), Complex::new(0.3, -0.05)];
        let a = eval_form(&sys, &p, y).unwrap();
        sys.divisors.clear();
        let b = eval_form(&sys, &p, y).unwrap();
        for k in 0..2 {
            assert!(mat::norm_inf(&mat::sub(&a[k], &b[k])) < 1e-12);
        }
    }
}
