use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::Polynomial;
use super::var::{Var, NVARS};
use super::{AlgebraError, Rational};

/// Reduced quotient of two polynomials.
///
/// Canonical form: `gcd(num, den) = 1`; `den` has coprime integer
/// coefficients and a positive graded-lex leading coefficient; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn int(c: i64) -> Self {
        Self::from_poly(Polynomial::int(c))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// Reduces `num / den` to canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Ok(Self::from_parts_coprime(num, den))
        } else {
            Ok(Self::from_parts_coprime(
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            ))
        }
    }

    /// Normalizes the denominator of an already coprime pair.
    fn from_parts_coprime(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (c, den) = den.integer_primitive();
        let num = if c.is_one() {
            num
        } else {
            num.scale(&c.recip())
        };
        RationalFunction { num, den }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mask = self.num.var_mask() | self.den.var_mask();
        Var::ALL
            .iter()
            .copied()
            .filter(|v| mask & v.bit() != 0)
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::from_parts_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Exact partial derivative by the quotient rule.
    pub fn partial(&self, v: Var) -> Self {
        if !self.contains_var(v) {
            return Self::zero();
        }
        if self.den.is_one() {
            return Self::from_poly(self.num.partial(v));
        }
        // d(n/d) = (n' d - n d') / d^2; remove the common factor gcd(d, d')
        // first so the reduction gcd runs on smaller inputs.
        let dd = self.den.partial(v);
        let g = gcd(&self.den, &dd);
        let d_red = self.den.div_exact(&g).expect("gcd divides");
        let dd_red = dd.div_exact(&g).expect("gcd divides");
        let num = &(&self.num.partial(v) * &d_red) - &(&self.num * &dd_red);
        let den = &self.den * &d_red;
        Self::new(num, den).expect("nonzero denominator")
    }

    /// Composition with `v ↦ bindings[v]`; unbound variables are kept.
    pub fn substitute(
        &self,
        bindings: &HashMap<Var, RationalFunction>,
    ) -> Result<Self, AlgebraError> {
        let num = substitute_poly(&self.num, bindings);
        let den = substitute_poly(&self.den, bindings);
        if den.is_zero() {
            return Err(AlgebraError::SubstitutionPole);
        }
        num.checked_div(&den)
    }

    /// Image under `λᵢ ↦ −λᵢ` (i = 1..4), an involution.
    pub fn negate_lambda(&self) -> Self {
        Self::from_parts_coprime(self.num.negate_lambda(), self.den.negate_lambda())
    }

    /// Substitutes exact values for some variables.
    pub fn partial_eval(&self, values: &[(Var, Rational)]) -> Result<Self, AlgebraError> {
        let num = self.num.partial_eval(values);
        let den = self.den.partial_eval(values);
        if den.is_zero() {
            return Err(AlgebraError::SubstitutionPole);
        }
        Self::new(num, den)
    }

    pub fn eval_rational(&self, point: &[Rational; NVARS]) -> Result<Rational, AlgebraError> {
        let d = self.den.eval_rational(point);
        if d.is_zero() {
            return Err(AlgebraError::SubstitutionPole);
        }
        Ok(self.num.eval_rational(point) / d)
    }
}

/// Substitutes into a polynomial over a common denominator per variable.
fn substitute_poly(p: &Polynomial, bindings: &HashMap<Var, RationalFunction>) -> RationalFunction {
    let active: Vec<(Var, &RationalFunction, u32)> = bindings
        .iter()
        .filter(|(v, _)| p.contains_var(**v))
        .map(|(v, f)| (*v, f, p.degree_in(*v)))
        .collect();
    if active.is_empty() {
        return RationalFunction::from_poly(p.clone());
    }
    let mut num_pows: Vec<Vec<Polynomial>> = Vec::with_capacity(active.len());
    let mut den_pows: Vec<Vec<Polynomial>> = Vec::with_capacity(active.len());
    for (_, f, deg) in &active {
        let mut np = vec![Polynomial::one()];
        let mut dp = vec![Polynomial::one()];
        for k in 1..=*deg as usize {
            np.push(&np[k - 1] * f.numerator());
            dp.push(&dp[k - 1] * f.denominator());
        }
        num_pows.push(np);
        den_pows.push(dp);
    }
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut t = Polynomial::one();
        for (j, (v, _, deg)) in active.iter().enumerate() {
            let e = m.exponent(*v) as usize;
            rest = rest.with_exponent(*v, 0);
            t = &t * &(&num_pows[j][e] * &den_pows[j][*deg as usize - e]);
        }
        out = &out + &t.shift(&rest).scale(c);
    }
    let mut den = Polynomial::one();
    for (j, (_, _, deg)) in active.iter().enumerate() {
        den = &den * &den_pows[j][*deg as usize];
    }
    RationalFunction::new(out, den).expect("binding denominators are nonzero")
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RationalFunction::from_poly(num);
            }
            return RationalFunction::new(num, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return RationalFunction::from_parts_coprime(num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            let num = &(&rhs.num * &self.den) + &self.num;
            return RationalFunction::from_parts_coprime(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RationalFunction::from_parts_coprime(num, &self.den * &rhs.den);
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        // any common factor of num and d1*d2*g must divide g
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides"),
            )
        };
        RationalFunction::from_parts_coprime(num, &(&d1 * &d2) * &g)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                self.num.div_exact(&g1).expect("gcd divides"),
                rhs.den.div_exact(&g1).expect("gcd divides"),
            )
        };
        let (n2, d1) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                rhs.num.div_exact(&g2).expect("gcd divides"),
                self.den.div_exact(&g2).expect("gcd divides"),
            )
        };
        RationalFunction::from_parts_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::checked_div`] to
    /// handle it.
    fn div(self, rhs: &'a RationalFunction) -> RationalFunction {
        self.checked_div(rhs)
            .expect("division by zero rational function")
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &'a RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        RationalFunction::var(v)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        RationalFunction::int(c)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        RationalFunction::constant(c)
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |a, b| &a + &b)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, r_of_x};

    fn v(x: Var) -> RationalFunction {
        x.into()
    }
    fn one() -> RationalFunction {
        RationalFunction::one()
    }

    #[test]
    fn inverse_times_self() {
        let f = &one() / &v(Var::X1);
        assert!((&f * &v(Var::X1)).is_one());
    }

    #[test]
    fn common_denominator() {
        let l4 = v(Var::L4);
        let s = &(&l4 / &v(Var::X1)) + &(&l4 / &v(Var::X2));
        let expected = RationalFunction::new(
            &Polynomial::var(Var::L4) * &(Polynomial::var(Var::X1) + Polynomial::var(Var::X2)),
            &Polynomial::var(Var::X1) * &Polynomial::var(Var::X2),
        )
        .unwrap();
        assert_eq!(s, expected);
        assert_eq!(s.numerator().len(), 2);
    }

    #[test]
    fn c44_times_reciprocal() {
        let r = RationalFunction::from_poly(r_of_x());
        let c44 = &RationalFunction::int(2) / &(&(&v(Var::L3) * &v(Var::L4)) * &r);
        assert!((&c44 * &c44.recip().unwrap()).is_one());
    }

    #[test]
    fn division_by_zero_errors() {
        assert_eq!(
            one().checked_div(&RationalFunction::zero()),
            Err(AlgebraError::DivisionByZero)
        );
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
    }

    #[test]
    fn chain_rule_on_reciprocal_of_l() {
        let l = &(&one() - &(&v(Var::S1) * &v(Var::X1))) - &(&v(Var::S2) * &v(Var::X2));
        let inv = &one() / &l;
        assert_eq!(inv.partial(Var::S1), &v(Var::X1) / &l.pow(2));
    }

    #[test]
    fn canonical_denominator() {
        let f = RationalFunction::new(
            Polynomial::int(3),
            Polynomial::var(Var::X1).scale(&q(-6, 1)),
        )
        .unwrap();
        assert_eq!(f.denominator(), &Polynomial::var(Var::X1));
        assert_eq!(f.numerator(), &Polynomial::constant(q(-1, 2)));
    }

    #[test]
    fn pullback_of_r_is_a_square() {
        let y1 = v(Var::Y1);
        let y2 = v(Var::Y2);
        let mut b = HashMap::new();
        b.insert(Var::X1, &y1 * &(&one() - &y2));
        b.insert(Var::X2, &(&one() - &y1) * &y2);
        let pr = RationalFunction::from_poly(r_of_x())
            .substitute(&b)
            .unwrap();
        assert_eq!(pr, (&(&one() - &y1) - &y2).pow(2));
    }

    #[test]
    fn identity_substitution() {
        let f = &(&v(Var::X1) + &v(Var::L1)) / &(&v(Var::X2) - &one());
        let mut b = HashMap::new();
        b.insert(Var::X1, v(Var::X1));
        b.insert(Var::X2, v(Var::X2));
        assert_eq!(f.substitute(&b).unwrap(), f);
    }

    #[test]
    fn substitution_then_evaluation() {
        let mut b = HashMap::new();
        b.insert(Var::X1, &v(Var::Y1) * &(&one() - &v(Var::Y2)));
        let f = v(Var::X1).substitute(&b).unwrap();
        let mut point: [Rational; NVARS] = Default::default();
        point[Var::Y1.index()] = q(1, 10);
        point[Var::Y2.index()] = q(1, 10);
        assert_eq!(f.eval_rational(&point).unwrap(), q(9, 100));
    }

    #[test]
    fn substitution_pole_is_an_error() {
        let f = &one() / &v(Var::X1);
        let mut b = HashMap::new();
        b.insert(Var::X1, RationalFunction::zero());
        assert_eq!(f.substitute(&b), Err(AlgebraError::SubstitutionPole));
    }

    #[test]
    fn negate_lambda_linear_and_involution() {
        let f = &v(Var::L1) + &v(Var::L3);
        assert_eq!(f.negate_lambda(), -&f);
        let g = &(&v(Var::L1) * &v(Var::X1)) / &(&(&v(Var::L2) * &v(Var::L3)) + &v(Var::L4));
        assert_eq!(g.negate_lambda().negate_lambda(), g);
    }

    #[test]
    fn finite_difference_matches_partial_of_r() {
        let r = RationalFunction::from_poly(r_of_x());
        let d = r.partial(Var::X1);
        let expected =
            &(&RationalFunction::int(2) * &(&v(Var::X1) - &v(Var::X2))) - &RationalFunction::int(2);
        assert_eq!(d, expected);
        // central difference is exact on quadratics
        let mut p0: [Rational; NVARS] = Default::default();
        p0[Var::X1.index()] = q(1, 3);
        p0[Var::X2.index()] = q(2, 7);
        let h = q(1, 1000);
        let mut pp = p0.clone();
        let mut pm = p0.clone();
        pp[Var::X1.index()] += &h;
        pm[Var::X1.index()] -= &h;
        let fd = (r.eval_rational(&pp).unwrap() - r.eval_rational(&pm).unwrap()) / (h * q(2, 1));
        assert_eq!(fd, d.eval_rational(&p0).unwrap());
    }
}
