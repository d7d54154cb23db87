use num_traits::{One, Signed};

use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::var::Var;
use super::Rational;

fn coeff_latex(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// LaTeX for a polynomial, leading term first.
pub fn poly_latex(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut mono = String::new();
        for v in Var::ALL {
            match m.exponent(v) {
                0 => {}
                1 => mono.push_str(v.latex()),
                e => mono.push_str(&format!("{}^{{{}}}", v.latex(), e)),
            }
        }
        if mono.is_empty() {
            out.push_str(&coeff_latex(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&coeff_latex(&abs));
            }
            out.push_str(&mono);
        }
    }
    out
}

/// LaTeX for a rational function, as a `\dfrac` when it has a denominator.
pub fn rf_latex(f: &RationalFunction) -> String {
    if f.is_polynomial() {
        poly_latex(f.numerator())
    } else {
        format!(
            "\\dfrac{{{}}}{{{}}}",
            poly_latex(f.numerator()),
            poly_latex(f.denominator())
        )
    }
}
