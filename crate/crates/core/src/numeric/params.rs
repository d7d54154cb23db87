use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{q, Rational, Var};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("cannot parse {0:?} as an exact rational p/q")]
    Parse(String),
    #[error("{symbol} = {value} is an integer; a_ij and b_ij must avoid Z")]
    IntegerSymbol { symbol: String, value: String },
    #[error("resonant parameters: local exponent difference {symbol} = {value} is an integer")]
    Resonant { symbol: String, value: String },
}

/// Exact parameters `(a, b, c₁, c₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericParams {
    #[serde(with = "rational_str")]
    pub a: Rational,
    #[serde(with = "rational_str")]
    pub b: Rational,
    #[serde(with = "rational_str")]
    pub c1: Rational,
    #[serde(with = "rational_str")]
    pub c2: Rational,
}

mod rational_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParamError> {
    let s = s.trim();
    let bad = || ParamError::Parse(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n = n.trim().parse().map_err(|_| bad())?;
        let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(n, d))
    } else {
        Ok(Rational::from_integer(s.parse().map_err(|_| bad())?))
    }
}

impl Default for NumericParams {
    fn default() -> Self {
        NumericParams::unchecked(q(1, 3), q(1, 5), q(1, 7), q(1, 11))
    }
}

impl fmt::Display for NumericParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a, b, c1, c2) = ({}, {}, {}, {})",
            self.a, self.b, self.c1, self.c2
        )
    }
}

impl FromStr for NumericParams {
    type Err = ParamError;

    /// Four comma-separated rationals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(ParamError::Parse(s.to_string()));
        }
        NumericParams::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
            parse_rational(parts[3])?,
        )
    }
}

fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

impl NumericParams {
    pub fn unchecked(a: Rational, b: Rational, c1: Rational, c2: Rational) -> Self {
        NumericParams { a, b, c1, c2 }
    }

    /// Builds and checks that every `a_ij`, `b_ij` is non-integer.
    pub fn new(a: Rational, b: Rational, c1: Rational, c2: Rational) -> Result<Self, ParamError> {
        let p = Self::unchecked(a, b, c1, c2);
        p.validate()?;
        Ok(p)
    }

    pub fn a_ij(&self, i: u8, j: u8) -> Rational {
        let (i, j) = (
            Rational::from_integer(i.into()),
            Rational::from_integer(j.into()),
        );
        &self.a - &i * &self.c1 - &j * &self.c2 + i + j
    }

    pub fn b_ij(&self, i: u8, j: u8) -> Rational {
        let (i, j) = (
            Rational::from_integer(i.into()),
            Rational::from_integer(j.into()),
        );
        &self.b - &i * &self.c1 - &j * &self.c2 + i + j
    }

    /// `λ₁ = a−c₂+1, λ₂ = a−c₁+1, λ₃ = c₁+c₂−a−2, λ₄ = −b`.
    pub fn lambdas(&self) -> [Rational; 4] {
        let one = Rational::one();
        [
            &self.a - &self.c2 + &one,
            &self.a - &self.c1 + &one,
            &self.c1 + &self.c2 - &self.a - Rational::from_integer(2.into()),
            -self.b.clone(),
        ]
    }

    /// λ-bindings for partial evaluation of symbolic objects.
    pub fn assignment(&self) -> Vec<(Var, Rational)> {
        let l = self.lambdas();
        vec![
            (Var::L1, l[0].clone()),
            (Var::L2, l[1].clone()),
            (Var::L3, l[2].clone()),
            (Var::L4, l[3].clone()),
        ]
    }

    pub fn integer_symbols(&self) -> Vec<(String, Rational)> {
        let mut out = Vec::new();
        for i in 0..2u8 {
            for j in 0..2u8 {
                let a = self.a_ij(i, j);
                if is_integer(&a) {
                    out.push((format!("a{i}{j}"), a));
                }
                let b = self.b_ij(i, j);
                if is_integer(&b) {
                    out.push((format!("b{i}{j}"), b));
                }
            }
        }
        out
    }

    /// Non-trivial local exponent differences along the five divisors:
    /// `1−c₁`, `1−c₂` and `2(λ₃+λ₄)`.
    pub fn exponent_differences(&self) -> Vec<(&'static str, Rational)> {
        let l = self.lambdas();
        let two = Rational::from_integer(2.into());
        vec![
            ("1-c1", Rational::one() - &self.c1),
            ("1-c2", Rational::one() - &self.c2),
            ("2(lambda3+lambda4)", two * (&l[2] + &l[3])),
        ]
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if let Some((s, v)) = self.integer_symbols().into_iter().next() {
            return Err(ParamError::IntegerSymbol {
                symbol: s,
                value: v.to_string(),
            });
        }
        Ok(())
    }

    /// Parameter check for monodromy runs: the genericity assumption plus
    /// non-integer exponent differences.
    pub fn validate_nonresonant(&self) -> Result<(), ParamError> {
        self.validate()?;
        if let Some((s, v)) = self
            .exponent_differences()
            .into_iter()
            .find(|(_, v)| is_integer(v))
        {
            return Err(ParamError::Resonant {
                symbol: s.to_string(),
                value: v.to_string(),
            });
        }
        Ok(())
    }

    pub fn to_f64(&self) -> [f64; 4] {
        use num_traits::ToPrimitive;
        [&self.a, &self.b, &self.c1, &self.c2].map(|r| r.to_f64().unwrap_or(f64::NAN))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::ParameterDictionary;

    #[test]
    fn default_is_generic() {
        let p = NumericParams::default();
        assert!(p.validate_nonresonant().is_ok());
    }

    #[test]
    fn agrees_with_dictionary() {
        let p = NumericParams::default();
        let d = ParameterDictionary;
        let pts = p.assignment();
        for i in 0..2 {
            for j in 0..2 {
                let sym = d.a_ij(i, j).partial_eval(&pts).unwrap();
                assert_eq!(sym.as_constant().unwrap(), p.a_ij(i, j));
                let sym = d.b_ij(i, j).partial_eval(&pts).unwrap();
                assert_eq!(sym.as_constant().unwrap(), p.b_ij(i, j));
            }
        }
        assert_eq!(
            d.c1().partial_eval(&pts).unwrap().as_constant().unwrap(),
            p.c1
        );
    }

    #[test]
    fn integer_a_rejected() {
        let p = NumericParams::unchecked(q(2, 1), q(1, 5), q(1, 7), q(1, 11));
        match p.validate() {
            Err(ParamError::IntegerSymbol { symbol, .. }) => assert_eq!(symbol, "a00"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn c1_one_is_resonant() {
        let p = NumericParams::unchecked(q(1, 3), q(1, 5), q(1, 1), q(1, 11));
        assert!(p.validate().is_ok());
        assert!(matches!(
            p.validate_nonresonant(),
            Err(ParamError::Resonant { .. })
        ));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("4").unwrap(), q(4, 1));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        let p: NumericParams = "1/3, 1/5, 1/7, 1/11".parse().unwrap();
        assert_eq!(p, NumericParams::default());
    }

    #[test]
    fn json_roundtrip() {
        let p = NumericParams::default();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"a":"1/3","b":"1/5","c1":"1/7","c2":"1/11"}"#);
        assert_eq!(serde_json::from_str::<NumericParams>(&s).unwrap(), p);
    }
}
