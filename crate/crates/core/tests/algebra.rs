use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use appell_f4::algebra::{gcd, Monomial, Polynomial, Rational, RationalFunction as Rf, Var};

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn dense(coeffs: &[i64], deg: u8) -> Polynomial {
    let mut it = coeffs.iter();
    let mut terms = Vec::new();
    for i in 0..=deg {
        for j in 0..=deg - i {
            let c = *it.next().expect("enough coefficients");
            let m = Monomial::var(Var::X1, i).mul(&Monomial::var(Var::X2, j));
            terms.push((m, int(c)));
        }
    }
    Polynomial::from_terms(terms)
}

fn random_dense(rng: &mut StdRng, deg: u8) -> Polynomial {
    let n = (deg as usize + 1) * (deg as usize + 2) / 2;
    let coeffs: Vec<i64> = (0..n).map(|_| rng.random_range(-9..=9)).collect();
    dense(&coeffs, deg)
}

/// Coefficients of `p` in `v` after setting the other variable to `t`, low degree first.
fn specialize(p: &Polynomial, v: Var, w: Var, t: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut term = c.clone();
        for _ in 0..m.exponent(w) {
            term *= t;
        }
        out[m.exponent(v) as usize] += term;
    }
    out
}

fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut d = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        d *= &a[k][k];
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let sub = &f * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    d
}

/// Sylvester determinant with the formal degrees of `p` and `q` in `v`.
fn sylvester(p: &[Rational], q: &[Rational]) -> Rational {
    let (m, n) = (p.len() - 1, q.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![Rational::zero(); size];
        for (k, c) in p.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![Rational::zero(); size];
        for (k, c) in q.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    det(rows)
}

/// Whether `Res_v(p, q)` vanishes identically, by evaluation at more points
/// than its degree in `w` allows roots.
fn resultant_vanishes(p: &Polynomial, q: &Polynomial, v: Var, w: Var) -> bool {
    if p.degree_in(v) == 0 || q.degree_in(v) == 0 {
        return false;
    }
    let bound = p.degree_in(v) * q.degree_in(w) + q.degree_in(v) * p.degree_in(w);
    (0..=bound as i64).all(|t| {
        let t = int(t - bound as i64 / 2);
        sylvester(&specialize(p, v, w, &t), &specialize(q, v, w, &t)).is_zero()
    })
}

/// Coprime over Q iff both resultants are nonzero polynomials.
fn coprime_by_resultants(p: &Polynomial, q: &Polynomial) -> bool {
    !resultant_vanishes(p, q, Var::X1, Var::X2) && !resultant_vanishes(p, q, Var::X2, Var::X1)
}

#[test]
fn random_cubics_are_coprime() {
    let mut rng = StdRng::seed_from_u64(31);
    for _ in 0..40 {
        let p = random_dense(&mut rng, 3);
        let q = random_dense(&mut rng, 3);
        let g = gcd(&p, &q);
        assert_eq!(
            g.is_constant(),
            coprime_by_resultants(&p, &q),
            "p = {p}, q = {q}, gcd = {g}"
        );
        assert!(g.is_one(), "p = {p}, q = {q}, gcd = {g}");
    }
}

#[test]
fn planted_common_factor_is_found() {
    let mut rng = StdRng::seed_from_u64(32);
    for _ in 0..20 {
        let f = random_dense(&mut rng, 1);
        if f.is_constant() {
            continue;
        }
        let p = &f * &random_dense(&mut rng, 2);
        let q = &f * &random_dense(&mut rng, 2);
        assert!(!coprime_by_resultants(&p, &q));
        let g = gcd(&p, &q);
        assert!(p.div_exact(&g).is_some() && q.div_exact(&g).is_some());
        assert!(
            g.div_exact(&f.integer_primitive().1).is_some(),
            "f = {f}, gcd = {g}"
        );
    }
}

#[test]
fn common_factor_in_one_variable_only() {
    let h = &Polynomial::var(Var::X2) - &Polynomial::int(3);
    let p = &h * &dense(&[1, 2, 0, 5, 1, 1], 2);
    let q = &h * &dense(&[-4, 0, 1, 1, 0, 2], 2);
    assert!(resultant_vanishes(&p, &q, Var::X2, Var::X1));
    assert!(!resultant_vanishes(&p, &q, Var::X1, Var::X2));
    let g = gcd(&p, &q);
    assert!(g == h || g == -&h, "{g}");
}

#[test]
fn sylvester_matches_known_resultant() {
    // Res(x^2 - 1, x - 2) = 3.
    let p = [int(-1), int(0), int(1)];
    let q = [int(-2), int(1)];
    assert_eq!(sylvester(&p, &q), int(3));
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(-4i64..=4, 6).prop_map(|c| dense(&c, 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gcd_divides_both_and_is_symmetric(a in small_poly(), b in small_poly(), c in small_poly()) {
        let p = &a * &c;
        let q = &b * &c;
        let g = gcd(&p, &q);
        if !p.is_zero() {
            prop_assert!(p.div_exact(&g).is_some());
        }
        if !q.is_zero() {
            prop_assert!(q.div_exact(&g).is_some());
        }
        prop_assert_eq!(&g, &gcd(&q, &p));
        if !c.is_zero() && !g.is_zero() {
            prop_assert!(g.div_exact(&c.integer_primitive().1).is_some());
        }
    }

    #[test]
    fn rational_functions_are_canonical(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let x = Rf::new(&a * &c, &b * &c).unwrap();
        let y = Rf::new(a.clone(), b.clone()).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert!(gcd(x.numerator(), x.denominator()).is_one() || x.is_zero());
        let sum = &(&x + &y) - &y;
        prop_assert_eq!(sum, x);
    }
}
