use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::var::{Monomial, Var, NVARS};
use super::Rational;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by graded-lex monomials; zero coefficients
/// are never stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::ONE, c);
        }
        Polynomial { terms }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Builds a polynomial from possibly repeated or zero terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.keys().next().is_some_and(|m| m.is_one()),
            _ => false,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant term coefficient (zero if absent).
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::ONE)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under graded-lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * m * other`.
    pub(crate) fn add_scaled_shifted(&mut self, other: &Polynomial, c: &Rational, m: &Monomial) {
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), oc * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn shift(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Bit mask of variables with a positive exponent somewhere.
    pub(crate) fn var_mask(&self) -> u16 {
        self.terms.keys().fold(0, |m, k| m | k.var_mask())
    }

    pub fn variables(&self) -> Vec<Var> {
        let mask = self.var_mask();
        Var::ALL
            .iter()
            .copied()
            .filter(|v| mask & v.bit() != 0)
            .collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.var_mask() & v.bit() != 0
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(v) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Componentwise minimum exponent over all terms.
    pub(crate) fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |acc, m| acc.gcd(m))
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`;
    /// index `k` holds the coefficient of `v^k`.
    pub(crate) fn coefficients_in(&self, v: Var) -> Vec<Polynomial> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Polynomial::zero(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exponent(v) as usize;
            out[k].terms.insert(m.with_exponent(v, 0), c.clone());
        }
        out
    }

    pub(crate) fn from_coefficients_in(v: Var, coeffs: &[Polynomial]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(v, k as u8);
            for (m, x) in &c.terms {
                p.terms.insert(m.mul(&shift), x.clone());
            }
        }
        p
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if d.is_constant() {
            return Some(self.scale(&d.constant_term().recip()));
        }
        for v in Var::ALL {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (lm_d, lc_d) = d.leading().map(|(m, c)| (*m, c.clone()))?;
        let mut r = self.clone();
        let mut q = Polynomial::zero();
        while let Some((lm_r, lc_r)) = r.leading() {
            let m = lm_r.checked_div(&lm_d)?;
            let c = lc_r / &lc_d;
            r.add_scaled_shifted(d, &-c.clone(), &m);
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Exact square root with positive leading coefficient, if `self` is a
    /// perfect square over ℚ.
    pub fn sqrt_exact(&self) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let (lm, lc) = self.leading()?;
        let mut half = [0u8; NVARS];
        for (k, e) in lm.exponents().iter().enumerate() {
            if e % 2 != 0 {
                return None;
            }
            half[k] = e / 2;
        }
        let c = rational_sqrt(lc)?;
        let mut r = Polynomial::monomial(Monomial::from_exponents(half), c);
        let (lm_r, lc_r) = r.leading().map(|(m, c)| (*m, c.clone()))?;
        let two_lc = lc_r * Rational::from_integer(2.into());
        loop {
            let rem = self - &(&r * &r);
            let Some((m, c)) = rem.leading() else {
                return Some(r);
            };
            let shift = m.checked_div(&lm_r)?;
            if shift.is_one() {
                return None;
            }
            r.add_term(shift, c / &two_lc);
        }
    }

    /// Splits `self = content * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn integer_primitive(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::zero(), Polynomial::zero());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if self.leading_coefficient().is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> Polynomial {
        let i = v.index();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut nm = *m;
            nm.0[i] = e - 1;
            out.terms.insert(nm, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Applies `f` to every (monomial, coefficient) pair, dropping zeros.
    pub fn map_terms<F: Fn(&Monomial, &Rational) -> Rational>(&self, f: F) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f(m, c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Image under `λᵢ ↦ −λᵢ` for i = 1..4.
    pub fn negate_lambda(&self) -> Polynomial {
        self.map_terms(|m, c| {
            if m.lambda_degree() % 2 == 1 {
                -c.clone()
            } else {
                c.clone()
            }
        })
    }

    /// Exact evaluation at a full rational point (indexed by the variable table).
    pub fn eval_rational(&self, point: &[Rational; NVARS]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes exact values for some variables, keeping the others.
    pub fn partial_eval(&self, values: &[(Var, Rational)]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut nm = *m;
            let mut t = c.clone();
            for (v, x) in values {
                let e = nm.exponent(*v);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                    nm = nm.with_exponent(*v, 0);
                }
            }
            out.add_term(nm, t);
        }
        out
    }

    /// Rewrites every monomial through `f` (used for variable renaming).
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &'a Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::int(c)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    /// Leading term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

fn rational_sqrt(c: &Rational) -> Option<Rational> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    (&n * &n == *c.numer() && &d * &d == *c.denom()).then(|| Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn x1() -> Polynomial {
        Var::X1.into()
    }
    fn x2() -> Polynomial {
        Var::X2.into()
    }

    #[test]
    fn square_roots() {
        let r = (x1().scale(&q(3, 2)) - x2() + Polynomial::int(2)) * x2();
        let sq = &r * &r;
        let s = sq.sqrt_exact().unwrap();
        assert!(s == r || s == -r.clone());
        assert!((sq + Polynomial::one()).sqrt_exact().is_none());
        assert!(x1().sqrt_exact().is_none());
    }

    #[test]
    fn difference_of_squares() {
        let p = (x1() + x2()) * (x1() - x2());
        let expected = x1().pow(2) - x2().pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn r_polynomial_from_building_blocks() {
        // R = (x1 - x2)^2 - 2(x1 + x2) + 1
        let r = (x1() - x2()).pow(2) - (x1() + x2()).scale(&q(2, 1)) + Polynomial::one();
        assert_eq!(r, crate::algebra::r_of_x());
        assert_eq!(r.len(), 6);
    }

    #[test]
    fn annihilator_is_empty() {
        let p = &(x1() + Polynomial::one()) * &Polynomial::zero();
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }

    #[test]
    fn exact_division() {
        let a = x1().pow(2) - x2().pow(2);
        assert_eq!(a.div_exact(&(x1() - x2())), Some(x1() + x2()));
        assert_eq!(a.div_exact(&(x1() + Polynomial::one())), None);
    }

    #[test]
    fn partial_of_power() {
        let p = x1().pow(2) * x2();
        assert_eq!(p.partial(Var::X1), (x1() * x2()).scale(&q(2, 1)));
    }

    #[test]
    fn integer_primitive_normalizes_sign_and_content() {
        let p = (x1().scale(&q(-2, 3))) + Polynomial::constant(q(4, 9));
        let (c, pp) = p.integer_primitive();
        assert_eq!(pp, x1().scale(&q(3, 1)) - Polynomial::int(2));
        assert_eq!(pp.scale(&c), p);
    }
}
