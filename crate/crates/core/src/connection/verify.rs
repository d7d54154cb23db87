use std::collections::HashMap;

use super::printed;
use super::sym::{i, l, l123, x1, x2, y1, y2};
use super::{
    double_cover_map, ConnectionSystem, DivisorLabel, Frame, IntersectionData, ParameterDictionary,
    Y_COORDS,
};
use crate::algebra::{l_of_sx, q_of_s, Polynomial, RationalFunction as Rf, Var};
use crate::forms::{CoordinateMap, FMatrix, FormsError, MatrixOneForm};
use crate::report::Report;

type Part = (String, Result<(), String>);

fn part(name: impl Into<String>, r: Result<(), String>) -> Part {
    (name.into(), r)
}

fn same(name: &str, got: &FMatrix, want: &FMatrix) -> Part {
    let r = match got.first_difference(want) {
        None => Ok(()),
        Some((a, b)) if got.rows() == want.rows() && got.cols() == want.cols() => Err(format!(
            "entry ({},{}) is {} but expected {}",
            a + 1,
            b + 1,
            got.get(a, b),
            want.get(a, b)
        )),
        Some(_) => Err("shape mismatch".into()),
    };
    part(name, r)
}

fn zero(name: &str, m: &FMatrix) -> Part {
    let r = match m.first_nonzero() {
        None => Ok(()),
        Some((a, b)) => Err(format!("entry ({},{}) is {}", a + 1, b + 1, m.get(a, b))),
    };
    part(name, r)
}

fn scalar(name: &str, got: &Rf, want: &Rf) -> Part {
    let r = if got == want {
        Ok(())
    } else {
        Err(format!("{got} != {want}"))
    };
    part(name, r)
}

fn forms(name: &str, r: Result<Part, FormsError>) -> Part {
    r.unwrap_or_else(|e| part(name, Err(e.to_string())))
}

fn one_forms_equal(name: &str, got: &MatrixOneForm, want: &MatrixOneForm) -> Vec<Part> {
    if got.coords != want.coords {
        return vec![part(name, Err("coordinates differ".into()))];
    }
    vec![
        same(
            &format!("{name} d{}", got.coords.0.name()),
            &got.parts[0],
            &want.parts[0],
        ),
        same(
            &format!("{name} d{}", got.coords.1.name()),
            &got.parts[1],
            &want.parts[1],
        ),
    ]
}

fn frame_name(f: Frame) -> &'static str {
    match f {
        Frame::Phi => "phi",
        Frame::PhiTilde => "phi-tilde",
        Frame::PhiHat => "phi-hat",
        Frame::Derivative => "derivative",
    }
}

/// `dΞ = Ξ∧Ξ`; additionally `dΞ ≠ O` for the φ frame and `dΞ̂ = O` for the
/// logarithmic frame.
pub fn verify_integrability(sys: &ConnectionSystem) -> Report {
    let id = format!("integrability.{}", frame_name(sys.frame));
    let d = sys.form.exterior_derivative();
    let w = match sys.form.wedge(&sys.form) {
        Ok(w) => w,
        Err(e) => return Report::fail(&id, e.to_string()),
    };
    let mut parts = vec![same("d(xi) = xi^xi", &d.part, &w.part)];
    match sys.frame {
        Frame::Phi => parts.push(part(
            "d(xi) != O",
            if d.is_zero() {
                Err("d(xi) vanishes".into())
            } else {
                Ok(())
            },
        )),
        Frame::PhiHat => parts.push(zero("d(xi_hat) = O", &d.part)),
        _ => {}
    }
    Report::from_parts(&id, parts)
}

/// The computed pull-back of Ξ under the double cover against the printed Ξ̃.
pub fn verify_pullback_printed(xi: &ConnectionSystem, tilde: &ConnectionSystem) -> Report {
    let id = "pullback.printed";
    match xi.form.pullback(&double_cover_map()) {
        Ok(p) => Report::from_parts(id, one_forms_equal("pr*(xi) vs printed", &p, &tilde.form)),
        Err(e) => Report::fail(id, e.to_string()),
    }
}

/// `G · pr*(Ξ) · G⁻¹ + dG · G⁻¹ = Ξ̂`.
pub fn verify_pipeline(xi: &ConnectionSystem, xi_hat: &ConnectionSystem) -> Report {
    let id = "conn-hat.pipeline";
    let run = || -> Result<MatrixOneForm, FormsError> {
        xi.form
            .pullback(&double_cover_map())?
            .gauge_transform(&printed::gauge_g())
    };
    match run() {
        Ok(g) => Report::from_parts(
            id,
            one_forms_equal("gauge(G, pr*(xi)) vs xi_hat", &g, &xi_hat.form),
        ),
        Err(e) => Report::fail(id, e.to_string()),
    }
}

/// The covering transformation `(y₁,y₂) ↦ (1−y₂,1−y₁)` acts on Ξ̂ as
/// conjugation by I₃,₁.
pub fn verify_covering_symmetry(xi_hat: &ConnectionSystem) -> Report {
    let id = "conn-hat.covering-symmetry";
    let mut bindings = HashMap::new();
    bindings.insert(Var::Y1, i(1) - y2());
    bindings.insert(Var::Y2, i(1) - y1());
    let rho = CoordinateMap {
        source: Y_COORDS,
        target: Y_COORDS,
        bindings,
        jacobian: [[i(0), i(-1)], [i(-1), i(0)]],
    };
    let ii = printed::i31();
    match xi_hat.form.pullback(&rho) {
        Ok(p) => {
            let conj = xi_hat.form.map(|m| &(&ii * m) * &ii);
            Report::from_parts(id, one_forms_equal("rho*(xi_hat) vs I xi_hat I", &p, &conj))
        }
        Err(e) => Report::fail(id, e.to_string()),
    }
}

/// Symmetry of C, agreement of its two printed forms, det(C), and the
/// structure of Ĉ.
pub fn verify_intersection(data: &IntersectionData) -> Report {
    let id = "int-no.intersection";
    let mut parts = vec![
        part(
            "C symmetric",
            if data.c.is_symmetric() {
                Ok(())
            } else {
                Err("not symmetric".into())
            },
        ),
        same("lambda form vs a_ij form", &data.c, &data.c_aij),
        forms(
            "det(C)",
            data.c
                .determinant()
                .map(|d| scalar("det(C) lambda form", &d, &printed::det_c_lambda())),
        ),
        scalar(
            "det(C) forms agree",
            &printed::det_c_lambda(),
            &printed::det_c_aij(),
        ),
        part(
            "C_hat symmetric",
            if data.chat.is_symmetric() {
                Ok(())
            } else {
                Err("not symmetric".into())
            },
        ),
        same("C_hat dual", &data.chat.negate_lambda(), &data.chat),
        scalar("C_hat_44", data.chat.get(3, 3), &(i(2) / (l(3) * l(4)))),
        scalar("C_hat1_11 = C_22", data.c1.get(0, 0), data.c.get(1, 1)),
        scalar("C_hat2_11 = C_33", data.c2.get(0, 0), data.c.get(2, 2)),
    ];
    for r in 0..4 {
        for c in 0..4 {
            let want = if r < 3 && c < 3 {
                data.c.get(r, c).clone()
            } else if r == 3 && c == 3 {
                data.chat.get(3, 3).clone()
            } else {
                Rf::zero()
            };
            if data.chat.get(r, c) != &want {
                parts.push(part(
                    format!("C_hat block ({},{})", r + 1, c + 1),
                    Err(format!("{} != {want}", data.chat.get(r, c))),
                ));
            }
        }
    }
    for k in 0..3 {
        parts.push(part(
            format!("C_{}4 = 0", k + 1),
            if data.c.get(k, 3).is_zero() {
                Ok(())
            } else {
                Err(data.c.get(k, 3).to_string())
            },
        ));
    }
    Report::from_parts(id, parts)
}

/// `Ξ̂^∨ = −Ξ̂` and `Ξ̂Ĉ + Ĉ ᵗΞ̂^∨ = O` for every residue.
pub fn verify_duality(xi_hat: &ConnectionSystem, data: &IntersectionData) -> Report {
    let id = "orth.duality";
    let mut parts = Vec::new();
    for t in &xi_hat.divisors {
        let r = &t.residue;
        let dual = r.negate_lambda();
        let name = t.label.name();
        parts.push(same(&format!("{name}: dual = -residue"), &dual, &(-r)));
        let lhs = &(r * &data.chat) + &(&data.chat * &dual.transpose());
        parts.push(zero(&format!("{name}: R C + C tR^v = O"), &lhs));
    }
    Report::from_parts(id, parts)
}

/// In the x-frame the pairing is not flat: `Ξᵏ C + C ᵗ(Ξᵏ)^∨ = ∂ₖ C`.
pub fn verify_duality_x(xi: &ConnectionSystem, data: &IntersectionData) -> Report {
    let id = "int-str.compatibility";
    let mut parts = Vec::new();
    for (k, v) in [xi.form.coords.0, xi.form.coords.1].into_iter().enumerate() {
        let m = &xi.form.parts[k];
        let lhs = &(m * &data.c) + &(&data.c * &m.negate_lambda().transpose());
        parts.push(same(
            &format!("d{} component", v.name()),
            &lhs,
            &data.c.partial(v),
        ));
    }
    Report::from_parts(id, parts)
}

fn row_times(v: &[Rf], m: &FMatrix) -> FMatrix {
    &FMatrix::row_vector(v.to_vec()) * m
}

fn row_scaled(v: &[Rf], c: &Rf) -> FMatrix {
    FMatrix::row_vector(v.iter().map(|e| e * c).collect())
}

/// `[c₀, c₁, …]` for `tᵃ (t − r)ᵇ` expanded.
fn char_poly_target(zero_mult: u32, root: &Rf, mult: u32) -> Vec<Rf> {
    let mut coeffs = vec![Rf::one()];
    for _ in 0..mult {
        let mut next = vec![Rf::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] - &(c * root);
        }
        coeffs = next;
    }
    let mut out = vec![Rf::zero(); zero_mult as usize];
    out.extend(coeffs);
    out
}

/// Characteristic polynomials, left eigenvectors, and traces of the residues.
pub fn verify_eigenstructure(xi_hat: &ConnectionSystem, data: &IntersectionData) -> Report {
    let id = "eigenspace.residues";
    let (Some(h1), Some(h2), Some(h3)) = (
        xi_hat.residue(DivisorLabel::Y1),
        xi_hat.residue(DivisorLabel::Y2),
        xi_hat.residue(DivisorLabel::Line),
    ) else {
        return Report::fail(id, "system has no residue data");
    };
    let a1 = -(l(1) + l(3));
    let a2 = -(l(2) + l(3));
    let a3 = i(2) * (l(3) + l(4));
    let mut parts = Vec::new();
    for (name, m, target) in [
        ("char poly of residue y1", h1, char_poly_target(2, &a1, 2)),
        ("char poly of residue y2", h2, char_poly_target(2, &a2, 2)),
        ("char poly of residue line", h3, char_poly_target(3, &a3, 1)),
    ] {
        let r = match m.characteristic_polynomial() {
            Ok(cp) if cp == target => Ok(()),
            Ok(cp) => Err(format!(
                "got [{}]",
                cp.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )),
            Err(e) => Err(e.to_string()),
        };
        parts.push(part(name, r));
    }
    for (name, k, m, a) in [
        ("e2 residue y1", 2, h1, &a1),
        ("e5 residue y1", 5, h1, &a1),
        ("e3 residue y2", 3, h2, &a2),
        ("e5 residue y2", 5, h2, &a2),
        ("e4 residue line", 4, h3, &a3),
    ] {
        parts.push(same(
            name,
            &row_times(data.e(k), m),
            &row_scaled(data.e(k), a),
        ));
    }
    parts.push(scalar("trace y1", &h1.trace(), &(i(2) * a1)));
    parts.push(scalar("trace y2", &h2.trace(), &(i(2) * a2)));
    parts.push(scalar("trace line", &h3.trace(), &a3));
    Report::from_parts(id, parts)
}

fn column_block(rows: &[&[Rf]]) -> FMatrix {
    FMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).transpose()
}

fn row_block(rows: &[&[Rf]]) -> FMatrix {
    FMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
}

/// `α Ĉ (ᵗu, ᵗv) B⁻¹ (u; v)`.
fn rebuild(
    alpha: &Rf,
    chat: &FMatrix,
    vecs: &[&[Rf]],
    block: &FMatrix,
) -> Result<FMatrix, FormsError> {
    let left = chat.checked_mul(&column_block(vecs))?;
    let mid = left.checked_mul(&block.inverse()?)?;
    Ok(mid.checked_mul(&row_block(vecs))?.scale(alpha))
}

/// The residues of Ξ̂ rebuilt from Ĉ, Ĉ₁, Ĉ₂ and the eigenvectors, in the
/// order y₁, y₂, line, y₁−1, y₂−1.
pub fn reconstruct_from_intersection(data: &IntersectionData) -> Result<[FMatrix; 5], FormsError> {
    let a1 = -(l(1) + l(3));
    let a2 = -(l(2) + l(3));
    let a3 = i(2) * (l(3) + l(4));
    let c44 = FMatrix::from_rows(vec![vec![data.chat.get(3, 3).clone()]]);
    Ok([
        rebuild(&a1, &data.chat, &[data.e(2), data.e(5)], &data.c1)?,
        rebuild(&a2, &data.chat, &[data.e(3), data.e(5)], &data.c2)?,
        rebuild(&a3, &data.chat, &[data.e(4)], &c44)?,
        rebuild(&a2, &data.chat, &[data.e(3), data.e(6)], &data.c2)?,
        rebuild(&a1, &data.chat, &[data.e(2), data.e(6)], &data.c1)?,
    ])
}

pub fn verify_reconstruction(xi_hat: &ConnectionSystem, data: &IntersectionData) -> Report {
    let id = "roots-exp.reconstruction";
    let rebuilt = match reconstruct_from_intersection(data) {
        Ok(r) => r,
        Err(e) => return Report::fail(id, e.to_string()),
    };
    let labels = [
        DivisorLabel::Y1,
        DivisorLabel::Y2,
        DivisorLabel::Line,
        DivisorLabel::Y1m1,
        DivisorLabel::Y2m1,
    ];
    let parts = labels
        .iter()
        .zip(rebuilt.iter())
        .map(|(lab, m)| match xi_hat.residue(*lab) {
            Some(want) => same(&format!("residue {}", lab.name()), m, want),
            None => part(lab.name(), Err("missing residue".into())),
        })
        .collect();
    Report::from_parts(id, parts)
}

fn pairing(u: &[Rf], chat: &FMatrix, v: &[Rf]) -> Rf {
    let uc = row_times(u, chat);
    (0..v.len()).map(|k| uc.get(0, k) * &v[k]).sum()
}

fn dual(v: &[Rf]) -> Vec<Rf> {
    v.iter().map(|e| e.negate_lambda()).collect()
}

/// Gram matrix of the pairing on a pair of row vectors, with or without
/// dualizing the second argument.
fn gram(a: &[Rf], b: &[Rf], chat: &FMatrix, dualize: bool) -> FMatrix {
    let vs = [a, b];
    FMatrix::from_fn(2, 2, |r, c| {
        let w = if dualize { dual(vs[c]) } else { vs[c].to_vec() };
        pairing(vs[r], chat, &w)
    })
}

/// `v Ĉ ᵗw^∨ = 0` for eigenvectors of nonzero eigenvalue `v` and null vectors
/// `w` of each residue, and which reading of the pairing reproduces Ĉ₁, Ĉ₂.
pub fn verify_orthogonality_claim(data: &IntersectionData, xi_hat: &ConnectionSystem) -> Report {
    let id = "roots-exp.orthogonality";
    let mut parts = Vec::new();
    let spans: [(DivisorLabel, &[usize]); 5] = [
        (DivisorLabel::Y1, &[2, 5]),
        (DivisorLabel::Y2, &[3, 5]),
        (DivisorLabel::Line, &[4]),
        (DivisorLabel::Y1m1, &[3, 6]),
        (DivisorLabel::Y2m1, &[2, 6]),
    ];
    for (lab, ks) in spans {
        let Some(r) = xi_hat.residue(lab) else {
            parts.push(part(lab.name(), Err("missing residue".into())));
            continue;
        };
        let null = match r.transpose().null_space() {
            Ok(n) => n,
            Err(e) => {
                parts.push(part(lab.name(), Err(e.to_string())));
                continue;
            }
        };
        let expected_dim = if lab == DivisorLabel::Line { 3 } else { 2 };
        parts.push(part(
            format!("{}: null space dimension", lab.name()),
            if null.len() == expected_dim {
                Ok(())
            } else {
                Err(format!("{} instead of {expected_dim}", null.len()))
            },
        ));
        for &k in ks {
            for (wi, w) in null.iter().enumerate() {
                let p = pairing(data.e(k), &data.chat, &dual(w));
                parts.push(part(
                    format!("{}: e{k} C tw{}^v", lab.name(), wi + 1),
                    if p.is_zero() {
                        Ok(())
                    } else {
                        Err(p.to_string())
                    },
                ));
            }
        }
    }
    let readings = [(false, "plain"), (true, "dualized")];
    let mut matched = Vec::new();
    for (dualize, name) in readings {
        let ok = [
            (2, 5, &data.c1),
            (2, 6, &data.c1),
            (3, 5, &data.c2),
            (3, 6, &data.c2),
        ]
        .into_iter()
        .all(|(a, b, want)| &gram(data.e(a), data.e(b), &data.chat, dualize) == want);
        if ok {
            matched.push(name);
        }
    }
    parts.push(part(
        "C_hat1, C_hat2 from the pairing",
        if matched.is_empty() {
            Err("neither reading matches".into())
        } else {
            Ok(())
        },
    ));
    let mut r = Report::from_parts(id, parts);
    if r.pass {
        r.witness = format!(
            "{}; readings reproducing C_hat1/C_hat2: {}",
            r.witness,
            matched.join(", ")
        );
    }
    r
}

/// G_∂ against its printed inverse, the rows of Θ that encode the frame, the
/// integrability of Θ, and det(G_∂).
pub fn verify_derivative_frame(dict: &ParameterDictionary) -> Report {
    let id = "pfaff.derivative-frame";
    let g = printed::g_partial();
    let ginv = printed::g_partial_inv();
    let mut parts = vec![same("G G^-1 = I", &(&g * &ginv), &FMatrix::identity(4))];
    parts.push(forms(
        "det(G)",
        g.determinant().map(|d| {
            scalar(
                "det(G)",
                &d,
                &(l(4).pow(2) * l(3) * l(4) * (i(1) - x1() - x2()) / i(2)),
            )
        }),
    ));
    let theta = match super::build_derivative_frame(dict) {
        Ok(t) => t,
        Err(e) => return Report::fail(id, e.to_string()),
    };
    let unit_row = |k: usize, c: Rf| {
        FMatrix::row_vector(
            (0..4)
                .map(|j| if j == k { c.clone() } else { Rf::zero() })
                .collect(),
        )
    };
    let row = |p: usize, r: usize| FMatrix::row_vector(theta.form.parts[p].row(r));
    let inv1 = i(1) / x1();
    let inv2 = i(1) / x2();
    parts.push(same(
        "theta^1 row 1",
        &row(0, 0),
        &unit_row(1, inv1.clone()),
    ));
    parts.push(same(
        "theta^2 row 1",
        &row(1, 0),
        &unit_row(2, inv2.clone()),
    ));
    parts.push(same("theta^1 row 3", &row(0, 2), &unit_row(3, inv1)));
    parts.push(same("theta^2 row 2", &row(1, 1), &unit_row(3, inv2)));
    let integ = verify_integrability(&theta);
    parts.push(part(
        "theta integrable",
        if integ.pass {
            Ok(())
        } else {
            Err(integ.witness)
        },
    ));
    Report::from_parts(id, parts)
}

/// Factor checks behind the vanishing of φ̂₂, φ̂₄ and the limits that produce
/// e₅ and e₆.
pub fn verify_vanishing_factors(data: &IntersectionData) -> Report {
    let id = "vanishi.factors";
    let map = double_cover_map();
    let s1: Rf = Var::S1.into();
    let s2: Rf = Var::S2.into();
    let l_sx: Rf = l_of_sx().into();
    let q: Rf = q_of_s().into();
    let line = i(1) - y1() - y2();
    let mut parts = Vec::new();

    let divides = |name: &str, f: &Rf, factor: Polynomial| -> Part {
        part(
            name,
            if f.numerator().div_exact(&factor).is_some() {
                Ok(())
            } else {
                Err(format!("{factor} does not divide {}", f.numerator()))
            },
        )
    };
    let sub = |f: Rf| f.substitute(&map.bindings);

    match sub(x1() / (s2.clone() * l_sx.clone())) {
        Ok(phi2) => {
            let y1p = Polynomial::var(Var::Y1);
            let one_m_y2 = Polynomial::one() - Polynomial::var(Var::Y2);
            parts.push(divides("phi2_hat has y1", &phi2, y1p));
            parts.push(divides("phi2_hat has 1-y2", &phi2, one_m_y2));
        }
        Err(e) => parts.push(part("phi2_hat", Err(e.to_string()))),
    }
    match sub(x2() / (s1 * l_sx.clone())) {
        Ok(phi3) => {
            let y2p = Polynomial::var(Var::Y2);
            let one_m_y1 = Polynomial::one() - Polynomial::var(Var::Y1);
            parts.push(divides("phi3_hat has y2", &phi3, y2p));
            parts.push(divides("phi3_hat has 1-y1", &phi3, one_m_y1));
        }
        Err(e) => parts.push(part("phi3_hat", Err(e.to_string()))),
    }
    match sub(i(1) / (q * l_sx)) {
        Ok(phi4) => {
            let hat = printed::gauge_g().get(3, 3) * &phi4;
            parts.push(divides(
                "phi4_hat has 1-y1-y2",
                &hat,
                line.numerator().clone(),
            ));
        }
        Err(e) => parts.push(part("phi4_hat", Err(e.to_string()))),
    }

    // The relation of the first identity of the L2 family, written in the hatted
    // frame, has coefficient λ₃ pr*(1−x₁−x₂)/(1−y₁−y₂) on φ̂₄.
    match sub(l(3) * (i(1) - x1() - x2())) {
        Ok(c) => {
            let coeff = &c / &line;
            let want = l(3) * (line.clone() + i(2) * y1() * y2()) / line.clone();
            parts.push(scalar("phi4_hat coefficient", &coeff, &want));
            let head = vec![l123(), l(2) - l(4), l(1) - l(4)];
            for (name, at, k) in [
                ("limit y1 -> 0 is lambda3 e5", [(Var::Y1, 0i64)], 5usize),
                ("limit y2 -> 1 is lambda3 e6", [(Var::Y2, 1i64)], 6usize),
            ] {
                let pts: Vec<_> = at
                    .iter()
                    .map(|(v, c)| (*v, crate::algebra::q(*c, 1)))
                    .collect();
                let r = coeff
                    .partial_eval(&pts)
                    .map_err(|e| e.to_string())
                    .and_then(|c4| {
                        let mut v = head.clone();
                        v.push(c4);
                        let want = row_scaled(data.e(k), &l(3));
                        if FMatrix::row_vector(v) == want {
                            Ok(())
                        } else {
                            Err("combination is not proportional".into())
                        }
                    });
                parts.push(part(name, r));
            }
        }
        Err(e) => parts.push(part("phi4_hat coefficient", Err(e.to_string()))),
    }
    let diff: Vec<Rf> = data
        .e(5)
        .iter()
        .zip(data.e(6))
        .map(|(a, b)| a - b)
        .collect();
    parts.push(same(
        "e5 - e6 = (0,0,0,2)",
        &FMatrix::row_vector(diff),
        &FMatrix::row_vector(vec![i(0), i(0), i(0), i(2)]),
    ));
    Report::from_parts(id, parts)
}
