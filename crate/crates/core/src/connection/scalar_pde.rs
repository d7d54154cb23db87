//! Elimination of the derivative-frame system down to two second-order
//! scalar operators of F₄ shape.
//!
//! With `F = (f, θ₁f, θ₂f, θ₁θ₂f)` and `θₖ = xₖ∂ₖ`, the rows of Θ give
//! `θ₁²f = x₁Θ¹₂·F` and `θ₂²f = x₂Θ²₃·F`. Multiplying the F₄ operator
//! `x₁(1−x₁)∂₁² − x₂²∂₂² − 2x₁x₂∂₁∂₂ + (γ₁−sx₁)∂₁ − sx₂∂₂ − p` by `x₁` gives
//!
//! `(1−x₁)θ₁² − x₁θ₂² − 2x₁θ₁θ₂ + (γ₁−1−(s−1)x₁)θ₁ − (s−1)x₁θ₂ − px₁`,
//!
//! and substituting the two rows leaves a combination of the components of
//! F that must vanish. Its four coefficients are linear in `(s, p, γ₁)`, which
//! are solved for and then required to be free of x.

use serde::Serialize;

use super::sym::{i, x1, x2};
use super::{build_derivative_frame, ParameterDictionary};
use crate::algebra::{RationalFunction as Rf, Var};
use crate::forms::FormsError;
use crate::report::Report;

/// `d11 ∂₁² + d22 ∂₂² + d12 ∂₁∂₂ + d1 ∂₁ + d2 ∂₂ + d0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalarOperator {
    pub d11: Rf,
    pub d22: Rf,
    pub d12: Rf,
    pub d1: Rf,
    pub d2: Rf,
    pub d0: Rf,
}

/// The two F₄ operators annihilating the first frame component, with their
/// constants `s = α+β+1`, `p = αβ`, `γ₁`, `γ₂` in the λ's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalarPde {
    pub s: Rf,
    pub p: Rf,
    pub gamma1: Rf,
    pub gamma2: Rf,
    /// `(α, β)` when the discriminant `(s−1)² − 4p` is a perfect square.
    pub alpha_beta: Option<(Rf, Rf)>,
    pub op1: ScalarOperator,
    pub op2: ScalarOperator,
}

#[derive(Debug, thiserror::Error)]
pub enum EliminationError {
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error("elimination did not reach F4 shape: {0}")]
    Shape(String),
}

fn free_of_x(name: &str, f: &Rf) -> Result<(), EliminationError> {
    if f.contains_var(Var::X1) || f.contains_var(Var::X2) {
        Err(EliminationError::Shape(format!("{name} depends on x: {f}")))
    } else {
        Ok(())
    }
}

pub fn derive_scalar_pde(dict: &ParameterDictionary) -> Result<ScalarPde, EliminationError> {
    let theta = build_derivative_frame(dict)?;
    let a: Vec<Rf> = theta.form.parts[0]
        .row(1)
        .iter()
        .map(|e| e * &x1())
        .collect();
    let b: Vec<Rf> = theta.form.parts[1]
        .row(2)
        .iter()
        .map(|e| e * &x2())
        .collect();

    // Operator 1: c = (1−x₁)A − x₁B + (0, x₁−1, x₁, −2x₁); then
    // T₀ = c₀ − p x₁, T₁ = c₁ − s x₁ + γ₁, T₂ = c₂ − s x₁, T₃ = c₃.
    let c: Vec<Rf> = (0..4)
        .map(|k| (i(1) - x1()) * a[k].clone() - x1() * b[k].clone())
        .collect();
    let c = [
        c[0].clone(),
        c[1].clone() + x1() - i(1),
        c[2].clone() + x1(),
        c[3].clone() - i(2) * x1(),
    ];
    let p = &c[0] / &x1();
    let s = &c[2] / &x1();
    let gamma1 = &s * &x1() - c[1].clone();
    if !c[3].is_zero() {
        return Err(EliminationError::Shape(format!(
            "operator 1 leaves theta1 theta2 coefficient {}",
            c[3]
        )));
    }

    let d: Vec<Rf> = (0..4)
        .map(|k| (i(1) - x2()) * b[k].clone() - x2() * a[k].clone())
        .collect();
    let d = [
        d[0].clone(),
        d[1].clone() + x2(),
        d[2].clone() + x2() - i(1),
        d[3].clone() - i(2) * x2(),
    ];
    let p2 = &d[0] / &x2();
    let s2 = &d[1] / &x2();
    let gamma2 = &s2 * &x2() - d[2].clone();
    if !d[3].is_zero() {
        return Err(EliminationError::Shape(format!(
            "operator 2 leaves theta1 theta2 coefficient {}",
            d[3]
        )));
    }

    for (n, f) in [
        ("s", &s),
        ("p", &p),
        ("gamma1", &gamma1),
        ("gamma2", &gamma2),
    ] {
        free_of_x(n, f)?;
    }
    if s != s2 || p != p2 {
        return Err(EliminationError::Shape(format!(
            "operators disagree: s = {s} vs {s2}, p = {p} vs {p2}"
        )));
    }

    let alpha_beta = alpha_beta(&s, &p);
    let op1 = ScalarOperator {
        d11: x1() * (i(1) - x1()),
        d22: -(x2() * x2()),
        d12: i(-2) * x1() * x2(),
        d1: gamma1.clone() - s.clone() * x1(),
        d2: -(s.clone() * x2()),
        d0: -p.clone(),
    };
    let op2 = ScalarOperator {
        d11: -(x1() * x1()),
        d22: x2() * (i(1) - x2()),
        d12: i(-2) * x1() * x2(),
        d1: -(s.clone() * x1()),
        d2: gamma2.clone() - s.clone() * x2(),
        d0: -p.clone(),
    };
    Ok(ScalarPde {
        s,
        p,
        gamma1,
        gamma2,
        alpha_beta,
        op1,
        op2,
    })
}

/// Roots of `t² − (s−1)t + p` when the discriminant is a square.
fn alpha_beta(s: &Rf, p: &Rf) -> Option<(Rf, Rf)> {
    let sm1 = s - &i(1);
    let disc = &(&sm1 * &sm1) - &(&i(4) * p);
    let num = disc.numerator().sqrt_exact()?;
    let den = disc.denominator().sqrt_exact()?;
    let root = &Rf::from(num) / &Rf::from(den);
    let half = Rf::constant(crate::algebra::q(1, 2));
    let alpha = &(&sm1 + &root) * &half;
    let beta = &(&sm1 - &root) * &half;
    Some((alpha, beta))
}

impl ScalarPde {
    pub fn describe(&self) -> String {
        let mut s = format!(
            "s = alpha+beta+1 = {}, p = alpha*beta = {}, gamma1 = {}, gamma2 = {}",
            self.s, self.p, self.gamma1, self.gamma2
        );
        if let Some((a, b)) = &self.alpha_beta {
            s.push_str(&format!(", alpha = {a}, beta = {b}"));
        }
        s
    }
}

/// Runs the elimination; passes when both operators reach F₄ shape with
/// x-free constants, and reports those constants.
pub fn verify_scalar_pde(dict: &ParameterDictionary) -> Report {
    let id = "pfaff.scalar-pde";
    match derive_scalar_pde(dict) {
        Ok(pde) => Report::pass(id, pde.describe()),
        Err(e) => Report::fail(id, e.to_string()),
    }
}
