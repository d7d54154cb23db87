//! The matrices exactly as they are printed, entry by entry.

use super::sym::{i, l, l0, l123, l134m, l234m, rx, x1, x2, y1, y2};
use crate::algebra::RationalFunction as Rf;
use crate::forms::FMatrix;

fn z() -> Rf {
    Rf::zero()
}

/// λ₁λ₂+λ₁λ₄+λ₂λ₄+2λ₃λ₄+λ₄²
fn kappa() -> Rf {
    l(1) * l(2) + l(1) * l(4) + l(2) * l(4) + i(2) * l(3) * l(4) + l(4) * l(4)
}

/// 1−x₁−x₂
fn one_mx() -> Rf {
    i(1) - x1() - x2()
}

/// y₁+y₂−1
fn line_y() -> Rf {
    y1() + y2() - i(1)
}

/// Ξ¹, the dx₁ coefficient of the connection in the frame φ₁..φ₄.
pub fn xi1() -> FMatrix {
    let r = rx();
    let (x1, x2) = (x1(), x2());
    let two_x1 = i(2) * x1.clone();
    let row3 = vec![
        -l123() / two_x1.clone(),
        -(l(2) - l(4)) / two_x1.clone(),
        -(l(1) - l(4)) / two_x1.clone(),
        -(l(3) * one_mx()) / two_x1.clone(),
    ];
    let x41 = l123() / l(3)
        * ((l(1) - l(2)) / r.clone()
            - (l(1) + i(2) * l(3) + l(4)) * (i(1) + x1.clone() - x2.clone())
                / (two_x1.clone() * r.clone()));
    let x42 = -((l(2) - l(4)) * (l(2) + i(2) * l(3) + l(4))) / (l(3) * r.clone())
        + kappa() / (i(2) * l(3)) * one_mx() / (x1.clone() * r.clone());
    let x43 = kappa() / (l(3) * r.clone())
        - (l(1) - l(4)) * (l(1) + l(4) + i(2) * l(3)) / (i(2) * l(3)) * one_mx()
            / (x1.clone() * r.clone());
    let x44 = -(l(1) - i(2) * l(3) - i(3) * l(4) + i(2)) * x1.clone() / (i(2) * r.clone())
        + (l(1) - l(4) + i(1)) * (i(1) + x2.clone()) / r.clone()
        - (l(1) + i(2) * l(3) + l(4)) * (x2.clone() - i(1)).pow(2) / (two_x1 * r);
    FMatrix::from_rows(vec![
        vec![z(), -l(4) / x1.clone(), z(), z()],
        vec![z(), -(l(1) + l(3)) / x1, z(), -l(3)],
        row3,
        vec![x41, x42, x43, x44],
    ])
}

/// Ξ², the dx₂ coefficient.
pub fn xi2() -> FMatrix {
    let r = rx();
    let (x1, x2) = (x1(), x2());
    let two_x2 = i(2) * x2.clone();
    let row2 = vec![
        -l123() / two_x2.clone(),
        -(l(2) - l(4)) / two_x2.clone(),
        -(l(1) - l(4)) / two_x2.clone(),
        -(l(3) * one_mx()) / two_x2.clone(),
    ];
    let x41 = l123() / l(3)
        * ((l(2) - l(1)) / r.clone()
            - (l(2) + i(2) * l(3) + l(4)) * (i(1) - x1.clone() + x2.clone())
                / (two_x2.clone() * r.clone()));
    let x42 = kappa() / (l(3) * r.clone())
        - (l(2) - l(4)) * (l(2) + i(2) * l(3) + l(4)) / (i(2) * l(3)) * one_mx()
            / (x2.clone() * r.clone());
    let x43 = -((l(1) - l(4)) * (l(1) + l(4) + i(2) * l(3))) / (l(3) * r.clone())
        + kappa() / (i(2) * l(3)) * one_mx() / (x2.clone() * r.clone());
    let x44 = -(l(2) - i(2) * l(3) - i(3) * l(4) + i(2)) * x2.clone() / (i(2) * r.clone())
        + (l(2) - l(4) + i(1)) * (x1.clone() + i(1)) / r.clone()
        - (l(2) + i(2) * l(3) + l(4)) * (x1 - i(1)).pow(2) / (two_x2 * r);
    FMatrix::from_rows(vec![
        vec![z(), z(), -l(4) / x2.clone(), z()],
        row2,
        vec![z(), z(), -(l(2) + l(3)) / x2, -l(3)],
        vec![x41, x42, x43, x44],
    ])
}

/// Ξ̃¹, the dy₁ coefficient of the pulled-back connection.
pub fn xi_tilde1() -> FMatrix {
    let (y1, y2, d) = (y1(), y2(), line_y());
    let y1m = y1.clone() - i(1);
    let y2m = y2.clone() - i(1);
    let m = l(3) - l134m();
    let n = l(3) - l234m();
    let p = (l(2) + l(4)) * (l(1) + l(4));
    let two_l3 = i(2) * l(3);
    let a = l123();

    let e41 = m.clone() * a.clone() / (two_l3.clone() * y1.clone() * y2m.clone())
        - n.clone() * a.clone() / (two_l3.clone() * y1m.clone() * y2.clone())
        + n.clone() * a.clone() / (two_l3.clone() * y2.clone() * d.clone())
        - (i(2) * l(3) + l(4) + l(1)) * a / (two_l3.clone() * y2m.clone() * d.clone());
    let e42 = p.clone() / (two_l3.clone() * y2m.clone() * d.clone())
        - p.clone() / (two_l3.clone() * y2m.clone() * y1.clone())
        + l(4) / (y2m.clone() * d.clone())
        - l(4) / (y1.clone() * y2m.clone())
        - (l(2) - l(4)) * n.clone() / (two_l3.clone() * y2.clone() * y1m.clone())
        + (l(2) - l(4)) * n.clone() / (two_l3.clone() * y2.clone() * d.clone());
    let e43 = p.clone() / (two_l3.clone() * y2.clone() * y1m.clone())
        - p / (two_l3.clone() * y2.clone() * d.clone())
        - l(4) / (y2.clone() * d.clone())
        + l(4) / (y2.clone() * y1m.clone())
        - (l(1) - l(4)) * m.clone() / (two_l3.clone() * y2m.clone() * d.clone())
        + (l(1) - l(4)) * m.clone() / (two_l3 * y2m.clone() * y1.clone());
    let e44 =
        (i(2) * l(4) + i(2) * l(3) - i(1)) / d - n / (i(2) * y1m.clone()) - m / (i(2) * y1.clone());

    FMatrix::from_rows(vec![
        vec![z(), -l(4) / y1.clone(), -l(4) / y1m.clone(), z()],
        vec![
            -l123() / (i(2) * y1m.clone()),
            (-l(2) + l(4)) / (i(2) * y1m.clone()) - (l(1) + l(3)) / y1.clone(),
            (-l(1) + l(4)) / (i(2) * y1m.clone()),
            -l(3) / i(2) - l(3) * y2.clone() / (i(2) * y1m.clone()),
        ],
        vec![
            -l123() / (i(2) * y1.clone()),
            (-l(2) + l(4)) / (i(2) * y1.clone()),
            (-l(1) + l(4)) / (i(2) * y1.clone()) - (l(2) + l(3)) / y1m,
            l(3) / i(2) + l(3) * (y2 - i(1)) / (i(2) * y1),
        ],
        vec![e41, e42, e43, e44],
    ])
}

/// Ξ̃², the dy₂ coefficient of the pulled-back connection.
pub fn xi_tilde2() -> FMatrix {
    let (y1, y2, d) = (y1(), y2(), line_y());
    let y1m = y1.clone() - i(1);
    let y2m = y2.clone() - i(1);
    let m = l(3) - l134m();
    let n = l(3) - l234m();
    let p = (l(2) + l(4)) * (l(1) + l(4));
    let two_l3 = i(2) * l(3);
    let a = l123();

    let e41 = -m.clone() * a.clone() / (two_l3.clone() * y1.clone() * y2m.clone())
        + m.clone() * a.clone() / (two_l3.clone() * y1.clone() * d.clone())
        - n.clone() * a.clone() / (two_l3.clone() * y1m.clone() * d.clone())
        + n.clone() * a / (two_l3.clone() * y2.clone() * y1m.clone());
    let e42 = p.clone() / (two_l3.clone() * y2m.clone() * y1.clone())
        - p.clone() / (two_l3.clone() * y1.clone() * d.clone())
        - l(4) / (y1.clone() * d.clone())
        + l(4) / (y2m.clone() * y1.clone())
        - (l(2) - l(4)) * n.clone() / (two_l3.clone() * y1m.clone() * d.clone())
        + (l(2) - l(4)) * n.clone() / (two_l3.clone() * y2.clone() * y1m.clone());
    let e43 = -p.clone() / (two_l3.clone() * y2.clone() * y1m.clone())
        + p / (two_l3.clone() * y1m.clone() * d.clone())
        + l(4) / (y1m.clone() * d.clone())
        - l(4) / (y2.clone() * y1m.clone())
        - (l(1) - l(4)) * m.clone() / (two_l3.clone() * y2m.clone() * y1.clone())
        + (l(1) - l(4)) * m.clone() / (two_l3 * y1.clone() * d.clone());
    let e44 = -m / (i(2) * y2m.clone()) + (i(2) * l(3) + i(2) * l(4) - i(1)) / d
        - n / (i(2) * y2.clone());

    FMatrix::from_rows(vec![
        vec![z(), -l(4) / y2m.clone(), -l(4) / y2.clone(), z()],
        vec![
            -l123() / (i(2) * y2.clone()),
            (-l(2) + l(4)) / (i(2) * y2.clone()) - (l(1) + l(3)) / y2m.clone(),
            (-l(1) + l(4)) / (i(2) * y2.clone()),
            l(3) / i(2) + l(3) * (y1.clone() - i(1)) / (i(2) * y2.clone()),
        ],
        vec![
            -l123() / (i(2) * y2m.clone()),
            (-l(2) + l(4)) / (i(2) * y2m.clone()),
            (-l(1) + l(4)) / (i(2) * y2m.clone()) - (l(2) + l(3)) / y2,
            -l(3) / i(2) - l(3) * y1 / (i(2) * y2m),
        ],
        vec![e41, e42, e43, e44],
    ])
}

/// Residue Ξ̂¹ along y₁ = 0.
pub fn xi_hat1() -> FMatrix {
    let half = |f: Rf| f / i(2);
    FMatrix::from_rows(vec![
        vec![z(), -l(4), z(), z()],
        vec![z(), -l(1) - l(3), z(), z()],
        vec![
            half(-l123()),
            half(-l(2) + l(4)),
            half(-l(1) + l(4)),
            half(-l(3)),
        ],
        vec![
            (l134m() - l(3)) * l123() / (i(2) * l(3)),
            l(4) + (l(2) + l(4)) * (l(1) + l(4)) / (i(2) * l(3)),
            (l(1) - l(4)) * (l134m() - l(3)) / (i(2) * l(3)),
            half(l134m() - l(3)),
        ],
    ])
}

/// Residue Ξ̂² along y₂ = 0.
pub fn xi_hat2() -> FMatrix {
    let half = |f: Rf| f / i(2);
    FMatrix::from_rows(vec![
        vec![z(), z(), -l(4), z()],
        vec![
            half(-l123()),
            half(-l(2) + l(4)),
            half(-l(1) + l(4)),
            half(-l(3)),
        ],
        vec![z(), z(), -l(3) - l(2), z()],
        vec![
            (l234m() - l(3)) * l123() / (i(2) * l(3)),
            (l(2) - l(4)) * (l234m() - l(3)) / (i(2) * l(3)),
            l(4) + (l(2) + l(4)) * (l(1) + l(4)) / (i(2) * l(3)),
            half(l234m() - l(3)),
        ],
    ])
}

/// Residue Ξ̂³ along y₁ + y₂ = 1.
pub fn xi_hat3() -> FMatrix {
    let mut m = FMatrix::zeros(4, 4);
    m.set(3, 3, i(2) * (l(3) + l(4)));
    m
}

/// I₃,₁ = diag(1, 1, 1, −1).
pub fn i31() -> FMatrix {
    FMatrix::diagonal(vec![i(1), i(1), i(1), i(-1)])
}

/// G = diag(1, 1, 1, 1−y₁−y₂).
pub fn gauge_g() -> FMatrix {
    FMatrix::diagonal(vec![i(1), i(1), i(1), i(1) - y1() - y2()])
}

/// G_∂, the frame change to `(f, x₁∂₁f, x₂∂₂f, x₁x₂∂₁∂₂f)`.
pub fn g_partial() -> FMatrix {
    let h = |f: Rf| f * l(4) / i(2);
    FMatrix::from_rows(vec![
        vec![i(1), z(), z(), z()],
        vec![z(), -l(4), z(), z()],
        vec![z(), z(), -l(4), z()],
        vec![
            h(l123()),
            h(l(2) - l(4)),
            h(l(1) - l(4)),
            h(l(3) * one_mx()),
        ],
    ])
}

/// G_∂⁻¹ as printed.
pub fn g_partial_inv() -> FMatrix {
    let den = || l(3) * l(4) * one_mx();
    FMatrix::from_rows(vec![
        vec![i(1), z(), z(), z()],
        vec![z(), -(i(1) / l(4)), z(), z()],
        vec![z(), z(), -(i(1) / l(4)), z()],
        vec![
            -l123() / (l(3) * one_mx()),
            (l(2) - l(4)) / den(),
            (l(1) - l(4)) / den(),
            i(2) / den(),
        ],
    ])
}

/// The intersection matrix C with entries written in the λ's.
pub fn c_lambda() -> FMatrix {
    let inv = |f: Rf| i(1) / f;
    let c11 = inv(l123()) * (inv(l(1)) + inv(l(2)))
        + inv(l134m()) * (inv(l0()) + inv(l(2)))
        + inv(l234m()) * (inv(l0()) + inv(l(1)));
    let c12 = -inv(l134m()) * (inv(l0()) + inv(l(2)));
    let c13 = -inv(l234m()) * (inv(l0()) + inv(l(1)));
    let c22 = (inv(l0()) + inv(l(2))) * (inv(l(4)) + inv(l134m()));
    let c23 = -inv(l0() * l(4));
    let c33 = (inv(l0()) + inv(l(1))) * (inv(l(4)) + inv(l234m()));
    let c44 = i(2) / (l(3) * l(4) * rx());
    symmetric([c11, c12, c13, z(), c22, c23, z(), c33, z(), c44])
}

/// The same matrix with entries written in the `a_ij, b_ij`.
pub fn c_aij() -> FMatrix {
    let d = super::ParameterDictionary;
    let inv = |f: Rf| i(1) / f;
    let (a00, a01, a10, a11) = (d.a_ij(0, 0), d.a_ij(0, 1), d.a_ij(1, 0), d.a_ij(1, 1));
    let (b00, b01, b10, b11) = (d.b_ij(0, 0), d.b_ij(0, 1), d.b_ij(1, 0), d.b_ij(1, 1));
    let c11 = inv(a00) * (inv(a01.clone()) + inv(a10.clone()))
        + inv(b10.clone()) * (inv(b11.clone()) + inv(a10.clone()))
        + inv(b01.clone()) * (inv(b11.clone()) + inv(a01.clone()));
    let c12 = -inv(b10.clone()) * (inv(b11.clone()) + inv(a10.clone()));
    let c13 = -inv(b01.clone()) * (inv(b11.clone()) + inv(a01.clone()));
    let c22 = (inv(b11.clone()) + inv(a10)) * (-inv(b00.clone()) + inv(b10));
    let c23 = inv(b11.clone() * b00.clone());
    let c33 = (inv(b11) + inv(a01)) * (-inv(b00.clone()) + inv(b01));
    let c44 = i(2) / (a11 * b00 * rx());
    symmetric([c11, c12, c13, z(), c22, c23, z(), c33, z(), c44])
}

fn symmetric(upper: [Rf; 10]) -> FMatrix {
    let mut m = FMatrix::zeros(4, 4);
    let mut it = upper.into_iter();
    for r in 0..4 {
        for c in r..4 {
            let v = it.next().expect("ten entries");
            m.set(r, c, v.clone());
            m.set(c, r, v);
        }
    }
    m
}

/// det(C) in the λ form.
pub fn det_c_lambda() -> Rf {
    i(4) * l(3) / (l0() * l(1) * l(2) * l(4).pow(3) * l123() * l134m() * l234m() * rx())
}

/// det(C) in the `a_ij, b_ij` form.
pub fn det_c_aij() -> Rf {
    let d = super::ParameterDictionary;
    let mut prod = i(1);
    for ii in 0..2 {
        for jj in 0..2 {
            prod = prod * d.a_ij(ii, jj) * d.b_ij(ii, jj);
        }
    }
    i(4) * d.a_ij(1, 1).pow(2) / (prod * d.b_ij(0, 0).pow(2) * rx())
}

/// Ĉ: C on the first three indices, 2/(λ₃λ₄) at (4,4), zero elsewhere.
pub fn c_hat() -> FMatrix {
    let c = c_lambda();
    let mut m = FMatrix::zeros(4, 4);
    for r in 0..3 {
        for s in 0..3 {
            m.set(r, s, c.get(r, s).clone());
        }
    }
    m.set(3, 3, i(2) / (l(3) * l(4)));
    m
}

pub fn c_hat1() -> FMatrix {
    let off = -(i(2) * (l(1) + l(3))) / (l0() * l(3) * l(4));
    FMatrix::from_rows(vec![
        vec![
            (l(3) - l134m()) * (l(1) + l(3)) / (l0() * l(2) * l(4) * l134m()),
            off.clone(),
        ],
        vec![
            off,
            -(i(4) * (l(2) + l(3)) * (l(1) + l(3))) / (l0() * l(3).pow(2) * l(4)),
        ],
    ])
}

pub fn c_hat2() -> FMatrix {
    let off = -(i(2) * (l(2) + l(3))) / (l0() * l(3) * l(4));
    FMatrix::from_rows(vec![
        vec![
            (l(3) - l234m()) * (l(2) + l(3)) / (l0() * l(1) * l(4) * l234m()),
            off.clone(),
        ],
        vec![
            off,
            -(i(4) * (l(2) + l(3)) * (l(1) + l(3))) / (l0() * l(3).pow(2) * l(4)),
        ],
    ])
}

/// Row vectors e₂ … e₆ (index 0 is e₂).
pub fn e_vectors() -> [Vec<Rf>; 5] {
    let unit = |k: usize| {
        (0..4)
            .map(|j| if j == k { i(1) } else { z() })
            .collect::<Vec<_>>()
    };
    let tail = |last: i64| {
        vec![
            l123() / l(3),
            (l(2) - l(4)) / l(3),
            (l(1) - l(4)) / l(3),
            i(last),
        ]
    };
    [unit(1), unit(2), unit(3), tail(1), tail(-1)]
}
