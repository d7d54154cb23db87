//! JSON encoding of polynomials and rational functions.
//!
//! A term is `["<numerator>", "<denominator>", [e_l1, ..., e_s2]]`, a
//! polynomial is the list of its terms leading term first (descending
//! graded-lex), and a rational function is `{"num": [...], "den": [...]}`.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::var::{Monomial, NVARS};
use super::Rational;

#[derive(Serialize, Deserialize)]
struct Term(String, String, Vec<u8>);

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms()
            .rev()
            .map(|(m, c)| {
                Term(
                    c.numer().to_string(),
                    c.denom().to_string(),
                    m.exponents().to_vec(),
                )
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        let mut out = Vec::with_capacity(terms.len());
        for Term(n, dn, e) in terms {
            let n: BigInt = n.parse().map_err(D::Error::custom)?;
            let dn: BigInt = dn.parse().map_err(D::Error::custom)?;
            if dn == BigInt::from(0) {
                return Err(D::Error::custom("zero coefficient denominator"));
            }
            let exps: [u8; NVARS] = e.try_into().map_err(|_| {
                D::Error::custom(format!("exponent vector must have length {NVARS}"))
            })?;
            out.push((Monomial::from_exponents(exps), Rational::new(n, dn)));
        }
        Ok(Polynomial::from_terms(out))
    }
}

#[derive(Serialize, Deserialize)]
struct RfRepr {
    num: Polynomial,
    den: Polynomial,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RfRepr {
            num: self.numerator().clone(),
            den: self.denominator().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RfRepr::deserialize(d)?;
        RationalFunction::new(r.num, r.den).map_err(D::Error::custom)
    }
}
