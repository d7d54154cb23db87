//! Heuristic gcd of integer polynomials (Char, Geddes and Gonnet).
//!
//! Variables are evaluated one at a time at a large integer ξ, the gcd of the
//! images is computed recursively, and the candidate is lifted back by its
//! balanced ξ-adic expansion. A candidate is accepted only after it divides
//! both inputs exactly, so a `Some` result is always the true gcd; `None`
//! means the heuristic gave up and the caller must use another method.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::var::{Monomial, Var};
use super::Rational;

type IntPoly = BTreeMap<Monomial, BigInt>;

const MAX_TRIES: usize = 6;
const CALL_BUDGET: usize = 400;

/// gcd of two nonzero integer-coefficient polynomials, normalized to a
/// primitive polynomial with positive leading coefficient.
pub(super) fn heu_gcd(p: &Polynomial, q: &Polynomial) -> Option<Polynomial> {
    let f = to_int(p)?;
    let g = to_int(q)?;
    if f.is_empty() || g.is_empty() {
        return None;
    }
    let mask = p.var_mask() | q.var_mask();
    let vars: Vec<Var> = Var::ALL
        .iter()
        .copied()
        .filter(|v| mask & v.bit() != 0)
        .collect();
    let mut budget = CALL_BUDGET;
    let h = heu(&f, &g, &vars, &mut budget)?;
    let (_, h) = primitive(&h);
    Some(Polynomial::from_terms(
        h.into_iter().map(|(m, c)| (m, Rational::from_integer(c))),
    ))
}

fn to_int(p: &Polynomial) -> Option<IntPoly> {
    let mut out = IntPoly::new();
    for (m, c) in p.terms() {
        if !c.is_integer() {
            return None;
        }
        out.insert(*m, c.numer().clone());
    }
    Some(out)
}

fn content(f: &IntPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in f.values() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `(content, primitive part with positive leading coefficient)`.
fn primitive(f: &IntPoly) -> (BigInt, IntPoly) {
    let mut c = content(f);
    if f.values().next_back().is_some_and(|lc| lc.is_negative()) {
        c = -c;
    }
    if c.is_one() {
        return (c, f.clone());
    }
    let out = f.iter().map(|(m, x)| (*m, x / &c)).collect();
    (c, out)
}

fn max_norm(f: &IntPoly) -> BigInt {
    f.values().map(|c| c.abs()).max().unwrap_or_default()
}

fn eval_var(f: &IntPoly, v: Var, xi: &BigInt) -> IntPoly {
    let deg = f.keys().map(|m| m.exponent(v)).max().unwrap_or(0) as usize;
    let mut pows = Vec::with_capacity(deg + 1);
    pows.push(BigInt::one());
    for k in 1..=deg {
        let next = &pows[k - 1] * xi;
        pows.push(next);
    }
    let mut out = IntPoly::new();
    for (m, c) in f {
        let e = m.exponent(v) as usize;
        let key = m.with_exponent(v, 0);
        let t = c * &pows[e];
        let slot = out.entry(key).or_insert_with(BigInt::zero);
        *slot += t;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Balanced ξ-adic reconstruction of a polynomial in `v` from its value at ξ.
fn interpolate(mut h: IntPoly, v: Var, xi: &BigInt) -> IntPoly {
    let half = xi / 2;
    let mut out = IntPoly::new();
    let mut i: u8 = 0;
    while !h.is_empty() {
        let mut next = IntPoly::new();
        for (m, c) in &h {
            let mut r = c.mod_floor(xi);
            if r > half {
                r -= xi;
            }
            if !r.is_zero() {
                out.insert(m.with_exponent(v, i), r.clone());
            }
            let rest = (c - &r) / xi;
            if !rest.is_zero() {
                next.insert(*m, rest);
            }
        }
        h = next;
        i = i.checked_add(1).expect("degree overflow in interpolation");
    }
    out
}

fn divides(h: &IntPoly, f: &IntPoly) -> bool {
    let Some((lm_h, lc_h)) = h.iter().next_back() else {
        return false;
    };
    for v in Var::ALL {
        let dh = h.keys().map(|m| m.exponent(v)).max().unwrap_or(0);
        let df = f.keys().map(|m| m.exponent(v)).max().unwrap_or(0);
        if dh > df {
            return false;
        }
    }
    let mut r = f.clone();
    while let Some((lm_r, lc_r)) = r.iter().next_back() {
        let Some(m) = lm_r.checked_div(lm_h) else {
            return false;
        };
        let (c, rem) = lc_r.div_rem(lc_h);
        if !rem.is_zero() {
            return false;
        }
        for (hm, hc) in h {
            let key = hm.mul(&m);
            let slot = r.entry(key).or_insert_with(BigInt::zero);
            *slot -= hc * &c;
            if slot.is_zero() {
                r.remove(&key);
            }
        }
    }
    true
}

fn heu(f: &IntPoly, g: &IntPoly, vars: &[Var], budget: &mut usize) -> Option<IntPoly> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    let (cf, f) = primitive(f);
    let (cg, g) = primitive(g);
    let c = cf.gcd(&cg);
    let Some((&v, rest)) = vars.split_last() else {
        return Some(IntPoly::from([(Monomial::ONE, c)]));
    };

    let nf = max_norm(&f);
    let ng = max_norm(&g);
    let lf = f
        .values()
        .next_back()
        .map(|x| x.abs())
        .unwrap_or_else(BigInt::one);
    let lg = g
        .values()
        .next_back()
        .map(|x| x.abs())
        .unwrap_or_else(BigInt::one);
    let b: BigInt = BigInt::from(2) * nf.clone().min(ng.clone()) + BigInt::from(29);
    let mut xi = std::cmp::max(
        std::cmp::min(b.clone(), BigInt::from(99) * b.sqrt()),
        BigInt::from(2) * std::cmp::min(&nf / &lf, &ng / &lg) + 2,
    );

    for _ in 0..MAX_TRIES {
        let ff = eval_var(&f, v, &xi);
        let gg = eval_var(&g, v, &xi);
        if !ff.is_empty() && !gg.is_empty() {
            let h = heu(&ff, &gg, rest, budget)?;
            let (_, h) = primitive(&interpolate(h, v, &xi));
            if divides(&h, &f) && divides(&h, &g) {
                return Some(h.into_iter().map(|(m, x)| (m, x * &c)).collect());
            }
        }
        let root4 = xi.sqrt().sqrt();
        xi = BigInt::from(73794) * &xi * root4 / BigInt::from(27011);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: Var) -> Polynomial {
        v.into()
    }

    #[test]
    fn recovers_common_factor() {
        let f = &(&p(Var::X1) * &p(Var::L1)) - &Polynomial::int(3);
        let a = &f * &(&p(Var::X2) + &Polynomial::int(7));
        let b = &f * &(&p(Var::X1) - &p(Var::L2));
        let g = heu_gcd(&a, &b).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn balanced_reconstruction_round_trips() {
        let f: IntPoly = [
            (Monomial::var(Var::X1, 2), BigInt::from(-5)),
            (Monomial::var(Var::X1, 1), BigInt::from(17)),
            (Monomial::ONE, BigInt::from(-2)),
        ]
        .into_iter()
        .collect();
        let xi = BigInt::from(101);
        let at = eval_var(&f, Var::X1, &xi);
        assert_eq!(interpolate(at, Var::X1, &xi), f);
    }
}
