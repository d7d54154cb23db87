use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use appell_f4::algebra::q;
use appell_f4::connection::*;
use appell_f4::numeric::mat::{self, Mat4};
use appell_f4::numeric::*;

fn c(re: f64) -> C64 {
    Complex::new(re, 0.0)
}

fn d() -> ParameterDictionary {
    ParameterDictionary
}

fn params() -> NumericParams {
    NumericParams::default()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact ₂F₁ partial sum with direct Pochhammer products.
fn gauss_oracle(
    a: &BigRational,
    b: &BigRational,
    cc: &BigRational,
    x: &BigRational,
    n: usize,
) -> f64 {
    let poch = |z: &BigRational, k: usize| {
        (0..k).fold(BigRational::one(), |acc, j| acc * (z + rat(j as i64, 1)))
    };
    let mut sum = BigRational::zero();
    let mut fact = BigRational::one();
    for k in 0..=n {
        if k > 0 {
            fact *= rat(k as i64, 1);
        }
        sum += poch(a, k) * poch(b, k) / (poch(cc, k) * &fact) * x.pow(k as i32);
    }
    sum.to_f64().unwrap()
}

/// Naive double loop over exact terms, rounded once.
fn f4_oracle(p: &NumericParams, x1: &BigRational, x2: &BigRational, n: usize) -> f64 {
    let poch = |z: &BigRational, k: usize| {
        (0..k).fold(BigRational::one(), |acc, j| acc * (z + rat(j as i64, 1)))
    };
    let fact = |k: usize| (1..=k).fold(BigRational::one(), |acc, j| acc * rat(j as i64, 1));
    let mut sum = BigRational::zero();
    for m in 0..=n {
        for k in 0..=(n - m) {
            let t = poch(&p.a, m + k) * poch(&p.b, m + k)
                / (poch(&p.c1, m) * poch(&p.c2, k) * fact(m) * fact(k))
                * x1.pow(m as i32)
                * x2.pow(k as i32);
            sum += t;
        }
    }
    sum.to_f64().unwrap()
}

#[test]
fn series_on_axis_matches_gauss_oracle() {
    let p = params();
    let x = rat(1, 20);
    let want = gauss_oracle(&p.a, &p.b, &p.c1, &x, 60);
    let got = f4_series(&p, [c(0.05), c(0.0)], 60).unwrap();
    assert!((got - c(want)).norm() < 1e-13, "{got} vs {want}");
    let g = gauss_2f1(1.0 / 3.0, 1.0 / 5.0, 1.0 / 7.0, c(0.05), 60);
    assert!((g - c(want)).norm() < 1e-13);
}

#[test]
fn series_matches_double_sum_oracle() {
    let p = params();
    let want = f4_oracle(&p, &rat(1, 20), &rat(1, 30), 60);
    let got = f4_series(&p, [c(1.0 / 20.0), c(1.0 / 30.0)], 60).unwrap();
    assert!((got - c(want)).norm() < 1e-14, "{got} vs {want}");
}

#[test]
fn scalar_pde_annihilates_series() {
    let pde = derive_scalar_pde(&d()).unwrap();
    let x = [c(1.0 / 20.0), c(1.0 / 30.0)];
    let r = pde_residual(&params(), &pde, x, 60).unwrap();
    assert!(r <= 1e-10, "residual {r}");
    let r0 = pde_residual_at(&params(), &pde, &[[c(0.0), c(0.0)]], 60).unwrap();
    assert!(r0 < 1e-15, "origin residual {r0}");
}

#[test]
fn perturbed_product_is_detected() {
    let mut pde = derive_scalar_pde(&d()).unwrap();
    let eps = appell_f4::algebra::rq(1, 1000);
    pde.op1.d0 = &pde.op1.d0 - &eps;
    pde.op2.d0 = &pde.op2.d0 - &eps;
    let r = pde_residual(&params(), &pde, [c(1.0 / 20.0), c(1.0 / 30.0)], 60).unwrap();
    assert!(r >= 1e-4, "residual {r}");
}

#[test]
fn line_residue_lives_in_corner() {
    let sys = build_xi_hat(&d());
    let r = sys.residue(DivisorLabel::Line).unwrap();
    for ((i, j), v) in r.entries() {
        assert_eq!(!v.is_zero(), (i, j) == (3, 3), "({i},{j})");
    }
    // The dlog of the line enters both coordinates equally.
    let y = [Complex::new(0.2, 0.1), c(0.3)];
    let only_line = ConnectionSystem::from_log_terms(
        Frame::PhiHat,
        vec![LogTerm {
            label: DivisorLabel::Line,
            residue: r.clone(),
        }],
    );
    let [a1, a2] = eval_form(&only_line, &params(), y).unwrap();
    assert!(mat::norm_inf(&mat::sub(&a1, &a2)) < 1e-15);
    assert!(a1[3][3].norm() > 0.0);
}

#[test]
fn covering_symmetry_numeric() {
    let sys = build_xi_hat(&d());
    let y = [Complex::new(0.2, 0.1), Complex::new(0.35, -0.05)];
    let rho = [c(1.0) - y[1], c(1.0) - y[0]];
    let [a1, a2] = eval_form(&sys, &params(), y).unwrap();
    let [b1, b2] = eval_form(&sys, &params(), rho).unwrap();
    let flip = |m: &Mat4<f64>| {
        let mut o = *m;
        for k in 0..4 {
            o[3][k] = -o[3][k];
            o[k][3] = -o[k][3];
        }
        o
    };
    let neg = |m: &Mat4<f64>| mat::scale(m, c(-1.0));
    assert!(mat::norm_inf(&mat::sub(&neg(&b2), &flip(&a1))) < 1e-12);
    assert!(mat::norm_inf(&mat::sub(&neg(&b1), &flip(&a2))) < 1e-12);
}

#[test]
fn chain_rule_between_x_and_y_frames() {
    let xi = build_xi(&d());
    let tilde = build_xi_tilde_printed(&d());
    let p = params();
    let [x1, x2] = eval_form_rational(&xi, &p, [q(9, 100), q(9, 100)]).unwrap();
    let [t1, t2] = eval_form_rational(&tilde, &p, [q(1, 10), q(1, 10)]).unwrap();
    let jac = [[0.9, -0.1], [-0.1, 0.9]];
    for (k, t) in [t1, t2].iter().enumerate() {
        let want = mat::add(
            &mat::scale(&x1, c(jac[0][k])),
            &mat::scale(&x2, c(jac[1][k])),
        );
        let err = mat::norm_inf(&mat::sub(t, &want));
        assert!(
            err < 1e-12 * (1.0 + mat::norm_inf(t)),
            "coordinate {k}: {err}"
        );
    }
    let direct = eval_form(&xi, &p, [c(0.09), c(0.09)]).unwrap();
    assert!(mat::norm_inf(&mat::sub(&direct[0], &x1)) < 1e-10);
}

#[test]
fn pole_error_names_divisor() {
    let sys = build_xi_hat(&d());
    let e = eval_form(&sys, &params(), [c(0.4), c(0.6)]).unwrap_err();
    assert_eq!(e, NumericError::Pole("line".into()));
}

#[test]
fn zero_system_gives_identity() {
    let zero = ConnectionSystem::from_log_terms(
        Frame::PhiHat,
        DivisorLabel::ALL
            .iter()
            .map(|&l| LogTerm {
                label: l,
                residue: appell_f4::forms::FMatrix::zeros(4, 4),
            })
            .collect(),
    );
    let path = loop_path(
        DivisorLabel::Line,
        default_base(),
        None,
        Orientation::Counterclockwise,
    );
    let t = integrate_path(&zero, &params(), &path, &mat::identity(), 1e-12).unwrap();
    assert!(mat::norm_inf(&mat::sub(&t.matrix, &mat::identity())) < 1e-15);
}

#[test]
fn contractible_loop_is_flat() {
    let t = Instant::now();
    let sys = build_xi_hat(&d());
    let defect = flatness_defect(&sys, &params(), default_base(), 1e-12, 53).unwrap();
    println!("flatness defect {defect:.3e} in {:?}", t.elapsed());
    assert!(defect <= 1e-8, "{defect}");
}

#[test]
fn contractible_loop_is_flat_in_double_double() {
    let sys = build_xi_hat(&d());
    let defect = flatness_defect(&sys, &params(), default_base(), 1e-20, 106).unwrap();
    println!("double-double flatness defect {defect:.3e}");
    assert!(defect <= 1e-18, "{defect}");
}

#[test]
fn forward_then_back_is_identity() {
    let sys = build_xi_hat(&d());
    let path = PathSpec::polyline(vec![
        default_base(),
        [Complex::new(0.3, 0.2), c(0.2)],
        [Complex::new(0.4, -0.1), Complex::new(0.1, 0.3)],
    ]);
    let there = integrate_path(&sys, &params(), &path, &mat::identity(), 1e-12).unwrap();
    let back = integrate_path(&sys, &params(), &path.reversed(), &there.matrix, 1e-12).unwrap();
    assert!(mat::norm_inf(&mat::sub(&back.matrix, &mat::identity())) < 1e-8);
}

#[test]
fn determinant_follows_trace_integral() {
    let sys = build_xi_hat(&d());
    let path = PathSpec::polyline(vec![default_base(), [Complex::new(0.3, 0.2), c(0.25)]]);
    let t = integrate_path(&sys, &params(), &path, &mat::identity(), 1e-12).unwrap();
    let det = mat::determinant(&t.matrix);
    assert!((det.ln() - t.trace_integral).norm() < 1e-9);
}

#[test]
fn local_exponents_all_divisors() {
    let t = Instant::now();
    let sys = build_xi_hat(&d());
    for r in monodromy_all(&sys, &params(), &MonodromyOptions::default()) {
        let r = r.unwrap();
        println!(
            "{:<5} deviation {:.2e} det defect {:.2e} steps {}",
            r.divisor, r.max_deviation, r.det_defect, r.steps
        );
        assert!(
            r.max_deviation <= 1e-6,
            "{}: {}",
            r.divisor,
            r.max_deviation
        );
        assert!(r.det_defect <= 1e-6);
        assert!(r.residual < 1e-12);
        assert!(r.resonance_warning.is_none());
        assert!(
            mat::multiset_distance(
                &r.residue_eigenvalues,
                &r.exponents
                    .iter()
                    .map(|e| c(parse_rational(e).unwrap().to_f64().unwrap()))
                    .collect::<Vec<_>>()
            ) < 1e-9
        );
    }
    println!("five loops in {:?}", t.elapsed());
}

#[test]
fn line_has_one_nontrivial_eigenvalue() {
    let sys = build_xi_hat(&d());
    let r = monodromy(
        &sys,
        &params(),
        DivisorLabel::Line,
        &MonodromyOptions::default(),
    )
    .unwrap();
    let off: Vec<_> = r
        .eigenvalues
        .iter()
        .filter(|z| (**z - c(1.0)).norm() > 1e-6)
        .collect();
    assert_eq!(off.len(), 1);
    let l = params().lambdas();
    let mu = 2.0 * (&l[2] + &l[3]).to_f64().unwrap();
    let want = Complex::new(0.0, 2.0 * std::f64::consts::PI * mu).exp();
    assert!((off[0] - want).norm() < 1e-6);
}

#[test]
fn orientation_inverts_eigenvalues() {
    let sys = build_xi_hat(&d());
    let opts = MonodromyOptions {
        orientation: Orientation::Clockwise,
        ..Default::default()
    };
    let r = monodromy(&sys, &params(), DivisorLabel::Y1, &opts).unwrap();
    assert!(r.max_deviation < 1e-6);
    assert!(r.expected.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
}

#[test]
fn loops_around_y1_commute() {
    let sys = build_xi_hat(&d());
    let p = params();
    let run = |radius: f64, o: Orientation| {
        let path = loop_path(DivisorLabel::Y1, default_base(), Some(radius), o);
        integrate_path(&sys, &p, &path, &mat::identity(), 1e-12)
            .unwrap()
            .matrix
    };
    let a = run(0.1, Orientation::Counterclockwise);
    let b = run(0.05, Orientation::Counterclockwise);
    let ai = run(0.1, Orientation::Clockwise);
    let bi = run(0.05, Orientation::Clockwise);
    let comm = mat::mul(&mat::mul(&a, &b), &mat::mul(&ai, &bi));
    assert!(mat::norm_inf(&mat::sub(&comm, &mat::identity())) < 1e-6);
}

#[test]
fn eigenvalues_do_not_depend_on_base() {
    let sys = build_xi_hat(&d());
    let p = params();
    let a = monodromy(&sys, &p, DivisorLabel::Y2m1, &MonodromyOptions::default()).unwrap();
    let other = MonodromyOptions {
        base: [Complex::new(0.15, 0.05), c(0.2)],
        ..Default::default()
    };
    let b = monodromy(&sys, &p, DivisorLabel::Y2m1, &other).unwrap();
    assert!(mat::multiset_distance(&a.eigenvalues, &b.eigenvalues) < 1e-6);
    assert!(mat::norm_inf(&mat::sub(&a.transport, &b.transport)) > 1e-6);
}

#[test]
fn tighter_tolerance_reduces_defect() {
    let sys = build_xi_hat(&d());
    let defects: Vec<f64> = [1e-5, 1e-7, 1e-9]
        .iter()
        .map(|&tol| flatness_defect(&sys, &params(), default_base(), tol, 53).unwrap())
        .collect();
    assert!(
        defects[1] <= defects[0] && defects[2] <= defects[1],
        "{defects:?}"
    );
}

#[test]
fn series_is_cauchy() {
    let p = params();
    let x = [c(0.05), c(1.0 / 30.0)];
    let diff = |n: usize| (f4_series(&p, x, 2 * n).unwrap() - f4_series(&p, x, n).unwrap()).norm();
    let (a, b) = (diff(4), diff(8));
    assert!(b < a * 1e-3, "{a} {b}");
}

#[test]
fn monodromy_result_json() {
    let sys = build_xi_hat(&d());
    let r = monodromy(
        &sys,
        &params(),
        DivisorLabel::Y1,
        &MonodromyOptions::default(),
    )
    .unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["transport"].as_array().unwrap().len(), 4);
    assert_eq!(v["transport"][0][0].as_array().unwrap().len(), 2);
    assert_eq!(v["orientation"], "counterclockwise");
}

#[test]
fn path_too_close_is_reported() {
    let sys = build_xi_hat(&d());
    let path = PathSpec::polyline(vec![default_base(), [c(0.0005), c(0.1)], default_base()]);
    let e = integrate_path(&sys, &params(), &path, &mat::identity(), 1e-10).unwrap_err();
    assert!(matches!(e, NumericError::PathTooClose { .. }), "{e:?}");
}
