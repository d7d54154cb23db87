//! Multivariate GCD by recursive primitive-part Euclid.
//!
//! Every polynomial is first made integer-primitive. The main variable is
//! picked among those present in both inputs; variables present in only one
//! input cannot occur in the gcd, so that input is replaced by the gcd of its
//! coefficients with respect to such a variable. The remaining pair goes
//! through the heuristic evaluation gcd first and falls back to the
//! pseudo-remainder sequence when the heuristic gives up.

use super::poly::Polynomial;
use super::var::{Monomial, Var};

/// Normalized gcd: integer-primitive with positive leading coefficient.
/// `gcd(p, 0)` is the normalized `p`; `gcd(0, 0) = 0`.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => Polynomial::zero(),
        (true, false) => q.integer_primitive().1,
        (false, true) => p.integer_primitive().1,
        (false, false) => {
            if p.is_constant() || q.is_constant() {
                return Polynomial::one();
            }
            gcd_primitive(p.integer_primitive().1, q.integer_primitive().1)
        }
    }
}

/// gcd of several polynomials, stopping early once it is a unit.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a Polynomial>>(items: I) -> Polynomial {
    let mut g = Polynomial::zero();
    for p in items {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn gcd_primitive(p: Polynomial, q: Polynomial) -> Polynomial {
    if p.is_constant() || q.is_constant() {
        return Polynomial::one();
    }
    if p == q {
        return p;
    }

    let mp = p.min_monomial();
    let mq = q.min_monomial();
    let mono = Polynomial::monomial(mp.gcd(&mq), num_traits::One::one());
    let p = strip_monomial(p, &mp);
    let q = strip_monomial(q, &mq);

    if p.is_constant() || q.is_constant() {
        return mono;
    }
    let only_p = p.var_mask() & !q.var_mask();
    let only_q = q.var_mask() & !p.var_mask();
    if only_p != 0 {
        return &mono * &fold_coefficients(q, &p, first_var(only_p));
    }
    if only_q != 0 {
        return &mono * &fold_coefficients(p, &q, first_var(only_q));
    }

    let common = p.var_mask() & q.var_mask();
    if common == 0 {
        return mono;
    }
    if let Some(g) = divides_either(&p, &q) {
        return &mono * &g;
    }

    let v = Var::ALL
        .iter()
        .copied()
        .filter(|v| common & v.bit() != 0)
        .min_by_key(|&v| {
            (
                p.degree_in(v).max(q.degree_in(v)),
                p.degree_in(v) + q.degree_in(v),
            )
        })
        .expect("nonempty common variable set");

    if let Some(g) = super::heugcd::heu_gcd(&p, &q) {
        return normalize(&(&mono * &g));
    }

    let cp = content_in(&p, v);
    let cq = content_in(&q, v);
    let c = gcd(&cp, &cq);
    let pp = p.div_exact(&cp).expect("content divides");
    let qq = q.div_exact(&cq).expect("content divides");
    let g = primitive_prs(pp, qq, v);
    normalize(&(&mono * &(&c * &g)))
}

fn divides_either(p: &Polynomial, q: &Polynomial) -> Option<Polynomial> {
    let (small, big) = if p.len() <= q.len() { (p, q) } else { (q, p) };
    big.div_exact(small).map(|_| small.clone())
}

fn strip_monomial(p: Polynomial, m: &Monomial) -> Polynomial {
    if m.is_one() {
        p
    } else {
        p.map_monomials(|k| k.checked_div(m).expect("min monomial divides"))
    }
}

fn first_var(mask: u16) -> Var {
    Var::from_index(mask.trailing_zeros() as usize)
}

/// `gcd(seed, coefficients of p in v)`, folding from the smallest coefficient.
fn fold_coefficients(seed: Polynomial, p: &Polynomial, v: Var) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = p
        .coefficients_in(v)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = seed;
    for c in &coeffs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Content of `p` with respect to `v`: the gcd of its coefficients.
fn content_in(p: &Polynomial, v: Var) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = p
        .coefficients_in(v)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| c.len());
    gcd_many(coeffs.iter())
}

fn normalize(p: &Polynomial) -> Polynomial {
    p.integer_primitive().1
}

fn primitive_part_in(p: &Polynomial, v: Var) -> Polynomial {
    let c = content_in(p, v);
    normalize(&p.div_exact(&c).expect("content divides"))
}

fn degree(coeffs: &[Polynomial]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

/// Pseudo-remainder of `a` by `b`, both as coefficient vectors in `v`.
fn prem(mut a: Vec<Polynomial>, b: &[Polynomial]) -> Vec<Polynomial> {
    let db = degree(b).expect("nonzero divisor");
    let lcb = &b[db];
    while let Some(da) = degree(&a) {
        if da < db {
            break;
        }
        let lca = a[da].clone();
        let shift = da - db;
        for c in a.iter_mut() {
            *c = &*c * lcb;
        }
        for (k, bc) in b.iter().enumerate().take(db + 1) {
            let t = &lca * bc;
            a[k + shift] = &a[k + shift] - &t;
        }
        a.truncate(da);
    }
    a
}

fn primitive_prs(p: Polynomial, q: Polynomial, v: Var) -> Polynomial {
    let (mut a, mut b) = if p.degree_in(v) >= q.degree_in(v) {
        (p, q)
    } else {
        (q, p)
    };
    loop {
        if b.is_zero() {
            return primitive_part_in(&a, v);
        }
        if b.degree_in(v) == 0 {
            return Polynomial::one();
        }
        let r = prem(a.coefficients_in(v), &b.coefficients_in(v));
        let r = Polynomial::from_coefficients_in(v, &r);
        if r.is_zero() {
            return primitive_part_in(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Polynomial::one();
        }
        a = b;
        b = primitive_part_in(&r, v);
    }
}
