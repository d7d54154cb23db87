use std::collections::HashMap;

use proptest::prelude::*;

use appell_f4::algebra::{q, RationalFunction as Rf, Var};
use appell_f4::forms::{CoordinateMap, FMatrix, MatrixOneForm};

const X: (Var, Var) = (Var::X1, Var::X2);
const Y: (Var, Var) = (Var::Y1, Var::Y2);

fn rv(v: Var) -> Rf {
    Rf::var(v)
}

/// `x1 = y1 y2`, `x2 = y1 / (1 - y2)`.
fn map() -> CoordinateMap {
    let y1 = rv(Var::Y1);
    let y2 = rv(Var::Y2);
    let den = &Rf::one() - &y2;
    let mut bindings = HashMap::new();
    bindings.insert(Var::X1, &y1 * &y2);
    bindings.insert(Var::X2, &y1 / &den);
    let mut m = CoordinateMap {
        source: X,
        target: Y,
        bindings,
        jacobian: [[Rf::zero(), Rf::zero()], [Rf::zero(), Rf::zero()]],
    };
    m.jacobian = m.derived_jacobian();
    m
}

/// Entry `c0 + c1 x1 + c2 x2 + c3 x1 x2 + c4 / (x1 - 2)`.
fn entry(c: &[i64]) -> Rf {
    let x1 = rv(Var::X1);
    let x2 = rv(Var::X2);
    let pole = (&x1 - &Rf::int(2)).recip().unwrap();
    let terms = [Rf::one(), x1.clone(), x2.clone(), &x1 * &x2, pole];
    terms.iter().zip(c).map(|(t, k)| t.scale(&q(*k, 1))).sum()
}

fn matrix() -> impl Strategy<Value = FMatrix> {
    proptest::collection::vec(-3i64..=3, 20).prop_map(|c| {
        let e: Vec<Rf> = c.chunks(5).map(entry).collect();
        FMatrix::from_rows(vec![e[..2].to_vec(), e[2..].to_vec()])
    })
}

fn one_form() -> impl Strategy<Value = MatrixOneForm> {
    (matrix(), matrix()).prop_map(|(a, b)| MatrixOneForm::new(X, a, b).unwrap())
}

#[test]
fn derived_jacobian_of_map() {
    let m = map();
    let y1 = rv(Var::Y1);
    let y2 = rv(Var::Y2);
    assert_eq!(m.jacobian[0][0], y2);
    assert_eq!(m.jacobian[0][1], y1);
    let den = &Rf::one() - &y2;
    assert_eq!(m.jacobian[1][1], &y1 / &(&den * &den));
}

#[test]
fn pullback_of_exact_form_is_exact() {
    let f = FMatrix::from_rows(vec![
        vec![entry(&[1, 2, 0, 1, 0]), entry(&[0, 0, 1, 0, 3])],
        vec![entry(&[0, 1, 1, 0, 0]), entry(&[2, 0, 0, 0, -1])],
    ]);
    let m = map();
    let pulled = MatrixOneForm::differential(&f, X).pullback(&m).unwrap();
    let f_y = f.substitute(&m.bindings).unwrap();
    assert_eq!(pulled, MatrixOneForm::differential(&f_y, Y));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pullback_commutes_with_d(w in one_form()) {
        let m = map();
        let lhs = w.pullback(&m).unwrap().exterior_derivative();
        let rhs = w.exterior_derivative().pullback(&m).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_commutes_with_wedge(a in one_form(), b in one_form()) {
        let m = map();
        let lhs = a.pullback(&m).unwrap().wedge(&b.pullback(&m).unwrap()).unwrap();
        let rhs = a.wedge(&b).unwrap().pullback(&m).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn curvature_is_gauge_covariant(w in one_form(), g in matrix()) {
        let det = g.determinant().unwrap();
        prop_assume!(!det.is_zero());
        let curv = |f: &MatrixOneForm| {
            let ww = f.wedge(f).unwrap();
            &f.exterior_derivative().part - &ww.part
        };
        let lhs = curv(&w.gauge_transform(&g).unwrap());
        let rhs = g.checked_mul(&curv(&w)).unwrap().checked_mul(&g.inverse().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
