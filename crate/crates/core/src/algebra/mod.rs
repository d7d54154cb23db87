//! Exact sparse multivariate polynomials and rational functions over ℚ in the
//! fixed variable set `{λ₁..λ₄, x₁, x₂, y₁, y₂, s₁, s₂}`.

mod gcd;
mod heugcd;
mod latex;
mod poly;
mod ratfunc;
mod serial;
mod var;

pub use gcd::{gcd, gcd_many};
pub use latex::{poly_latex, rf_latex};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use var::{Monomial, Var, NVARS};

use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution makes a denominator vanish identically")]
    SubstitutionPole,
}

/// `n/d` as an exact rational.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Shorthand for the rational function of a single variable.
pub fn rv(v: Var) -> RationalFunction {
    RationalFunction::var(v)
}

/// Shorthand for an integer constant rational function.
pub fn ri(c: i64) -> RationalFunction {
    RationalFunction::int(c)
}

/// Shorthand for a rational constant.
pub fn rq(n: i64, d: i64) -> RationalFunction {
    RationalFunction::constant(q(n, d))
}

/// `R(x) = x₁² + x₂² − 2x₁x₂ − 2x₁ − 2x₂ + 1`.
pub fn r_of_x() -> Polynomial {
    let x1 = Polynomial::var(Var::X1);
    let x2 = Polynomial::var(Var::X2);
    let two = Polynomial::int(2);
    &(&(&(&(&x1 * &x1) + &(&x2 * &x2)) - &(&two * &(&x1 * &x2))) - &(&two * &(&x1 + &x2)))
        + &Polynomial::one()
}

/// `Q(s) = s₁s₂ − s₁ − s₂`.
pub fn q_of_s() -> Polynomial {
    let s1 = Polynomial::var(Var::S1);
    let s2 = Polynomial::var(Var::S2);
    &(&(&s1 * &s2) - &s1) - &s2
}

/// `L(s, x) = 1 − s₁x₁ − s₂x₂`.
pub fn l_of_sx() -> Polynomial {
    let t1 = &Polynomial::var(Var::S1) * &Polynomial::var(Var::X1);
    let t2 = &Polynomial::var(Var::S2) * &Polynomial::var(Var::X2);
    &(&Polynomial::one() - &t1) - &t2
}
