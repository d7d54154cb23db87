//! The certificates displayed with the reduction lemmas, the assembled ones
//! for the `1/(sₖL²)` forms, the η-solve and the row-wise certification of Ξ.

use serde::Serialize;

use super::{nabla, omega_x, phi, Certificate, CertificateLibrary, OneForm, Term};
use crate::algebra::{l_of_sx, q_of_s, r_of_x, Polynomial, RationalFunction as Rf, Var};
use crate::connection::sym::{i, l, l0, l123, rx, x1, x2};
use crate::connection::{ConnectionSystem, ParameterDictionary};
use crate::forms::FMatrix;
use crate::parallel;
use crate::report::Report;

/// Names of the auxiliary forms the lemmas reduce.
pub const DS12_L2: &str = "ds12/L^2";
pub const DS12_S1L2: &str = "ds12/(s1 L^2)";
pub const DS12_S2L2: &str = "ds12/(s2 L^2)";
pub const S1_S2L2: &str = "s1 ds12/(s2 L^2)";
pub const S2_S1L2: &str = "s2 ds12/(s1 L^2)";
pub const ETA: [&str; 3] = ["eta0", "eta1", "eta2"];

fn s1() -> Rf {
    Var::S1.into()
}

fn s2() -> Rf {
    Var::S2.into()
}

fn lf() -> Rf {
    l_of_sx().into()
}

fn qf() -> Rf {
    q_of_s().into()
}

fn ph(k: u8, c: Rf) -> (Term, Rf) {
    (Term::Phi(k), c)
}

fn cl(name: &str, c: Rf) -> (Term, Rf) {
    (Term::Claim(name.to_string()), c)
}

/// `λ₁+λ₂+2λ₃+λ₄`
fn l1234() -> Rf {
    -l0()
}

pub fn cohomolog_certificates() -> Vec<Certificate> {
    vec![
        Certificate::new(
            "cohomolog.1",
            l(3) / qf(),
            vec![ph(1, -l123()), ph(2, l(4)), ph(3, l(4))],
            OneForm::new(-(i(1) / s1()), i(1) / s2()),
        ),
        Certificate::new(
            "cohomolog.2",
            l(3) / (s1() * qf()),
            vec![ph(1, -(l(1) + l(3))), ph(2, l(4))],
            OneForm::new(Rf::zero(), i(1) / s2()),
        ),
        Certificate::new(
            "cohomolog.3",
            l(3) / (s2() * qf()),
            vec![ph(1, -(l(2) + l(3))), ph(3, l(4))],
            OneForm::new(-(i(1) / s1()), Rf::zero()),
        ),
    ]
}

pub fn l2_certificates() -> Vec<Certificate> {
    let l2 = lf() * lf();
    vec![
        Certificate::new(
            "L2.1",
            i(2) * (l(4) - i(1)) * x1() * x2() / l2.clone(),
            vec![
                ph(1, l123()),
                ph(2, l(2) - l(4)),
                ph(3, l(1) - l(4)),
                ph(4, l(3) * (i(1) - x1() - x2())),
            ],
            OneForm::new(x1() / lf() + i(1) / s1(), -(x2() / lf()) - i(1) / s2()),
        ),
        Certificate::new(
            "L2.2",
            (l(4) - i(1)) * x1() * s1() / (s2() * l2.clone()),
            vec![ph(2, (l(1) + l(3) + i(1)) / x1()), ph(4, l(3))],
            OneForm::new(Rf::zero(), -(s1() / (s2() * lf()))),
        ),
        Certificate::new(
            "L2.3",
            (l(4) - i(1)) * x2() * s2() / (s1() * l2),
            vec![ph(3, (l(2) + l(3) + i(1)) / x2()), ph(4, l(3))],
            OneForm::new(s2() / (s1() * lf()), Rf::zero()),
        ),
    ]
}

/// `1/(s₁L²) = x₁/L² + s₂x₂/(s₁L²) + φ₃/x₂` (and its mirror) multiplied by
/// `2(λ₄−1)x₂`, written through the claims of the L2 certificates.
pub fn one_s_l2_certificates() -> Vec<Certificate> {
    let l2 = lf() * lf();
    vec![
        Certificate::new(
            "1sL2.1",
            i(2) * (l(4) - i(1)) * x2() / (s1() * l2.clone()),
            vec![
                cl("L2.1", i(1)),
                cl("L2.3", i(2) * x2()),
                ph(3, i(2) * (l(4) - i(1))),
            ],
            OneForm::zero(),
        ),
        Certificate::new(
            "1sL2.2",
            i(2) * (l(4) - i(1)) * x1() / (s2() * l2),
            vec![
                cl("L2.1", i(1)),
                cl("L2.2", i(2) * x1()),
                ph(2, i(2) * (l(4) - i(1))),
            ],
            OneForm::zero(),
        ),
    ]
}

/// The lemma claims normalized to the bare forms listed before the lemmas.
pub fn auxiliary_certificates() -> Vec<Certificate> {
    let m1 = l(4) - i(1);
    let only = |name: &str, target: &str, c: Rf| {
        Certificate::new(target, Rf::zero(), vec![cl(name, c)], OneForm::zero())
    };
    let mut out = vec![
        only("L2.1", DS12_L2, i(1) / (i(2) * m1.clone() * x1() * x2())),
        only("1sL2.1", DS12_S1L2, i(1) / (i(2) * m1.clone() * x2())),
        only("1sL2.2", DS12_S2L2, i(1) / (i(2) * m1.clone() * x1())),
        only("L2.2", S1_S2L2, i(1) / (m1.clone() * x1())),
        only("L2.3", S2_S1L2, i(1) / (m1 * x2())),
    ];
    let l2 = lf() * lf();
    let claims = [
        i(1) / l2.clone(),
        i(1) / (s1() * l2.clone()),
        i(1) / (s2() * l2.clone()),
        s1() / (s2() * l2.clone()),
        s2() / (s1() * l2),
    ];
    for (c, v) in out.iter_mut().zip(claims) {
        c.claim = v;
    }
    out
}

/// The 3×3 system in (η₀, η₁, η₂) with its right-hand sides.
#[derive(Clone, Debug, Serialize)]
pub struct EtaSystem {
    pub matrix: FMatrix,
    pub rhs: Vec<(Vec<(Term, Rf)>, OneForm)>,
}

pub fn eta_claims() -> [Rf; 3] {
    let base = i(1) / (qf() * lf() * lf());
    [base.clone(), s1() * base.clone(), s2() * base]
}

fn psi_a() -> OneForm {
    let l2 = lf() * lf();
    OneForm::new(x1() / l2.clone(), x2() / l2)
}

fn psi_b() -> OneForm {
    let l2 = lf() * lf();
    let sum = x1() + x2();
    OneForm::new(
        (i(1) - sum.clone() * s2()) / l2.clone(),
        (-i(1) + sum * s1()) / l2,
    )
}

pub fn eta_system() -> EtaSystem {
    let l3 = l(3);
    let sum = x1() + x2() - i(1);
    let matrix = FMatrix::from_rows(vec![
        vec![i(1), -x1(), -x2()],
        vec![
            l3.clone() * (x1() - x2()),
            -(l3.clone() * x1()),
            l3.clone() * x2(),
        ],
        vec![i(2) * l3.clone(), l3.clone() * sum.clone(), l3 * sum],
    ]);
    let rhs = vec![
        (vec![ph(4, i(1))], OneForm::zero()),
        (
            vec![cl(DS12_S1L2, -(l(1) * x2())), cl(DS12_S2L2, l(2) * x1())],
            psi_a(),
        ),
        (
            vec![
                cl(DS12_S1L2, l(1)),
                cl(DS12_S2L2, l(2)),
                cl(DS12_L2, -(l1234() * (x1() + x2()))),
            ],
            psi_b(),
        ),
    ];
    EtaSystem { matrix, rhs }
}

/// The three displayed relations among η₀, η₁, η₂ as certificates with the
/// η's entering as explicit forms.
pub fn eta_relations(lib: &CertificateLibrary) -> Vec<Report> {
    let sys = eta_system();
    let etas = eta_claims();
    (0..3)
        .map(|r| {
            let claim: Rf = (0..3).map(|k| sys.matrix.get(r, k) * &etas[k]).sum();
            let cert = Certificate::new(
                &format!("QL2.relation{r}"),
                claim,
                sys.rhs[r].0.clone(),
                sys.rhs[r].1.clone(),
            );
            lib.verify(&cert)
        })
        .collect()
}

/// Solves the η-system over ℚ(λ, x).
pub fn solve_eta() -> Result<Vec<Certificate>, crate::forms::FormsError> {
    let sys = eta_system();
    let inv = sys.matrix.inverse()?;
    let claims = eta_claims();
    Ok((0..3)
        .map(|k| {
            let mut combo = Vec::new();
            let mut pot = OneForm::zero();
            for j in 0..3 {
                let m = inv.get(k, j);
                if m.is_zero() {
                    continue;
                }
                for (t, c) in &sys.rhs[j].0 {
                    combo.push((t.clone(), m * c));
                }
                pot = pot.add(&sys.rhs[j].1.scale(m));
            }
            let combo = merge(combo);
            Certificate::new(ETA[k], claims[k].clone(), combo, pot)
        })
        .collect())
}

fn merge(combo: Vec<(Term, Rf)>) -> Vec<(Term, Rf)> {
    let mut out: Vec<(Term, Rf)> = Vec::new();
    for (t, c) in combo {
        match out.iter_mut().find(|(u, _)| *u == t) {
            Some((_, e)) => *e = &*e + &c,
            None => out.push((t, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Printed expressions for η₀ (remark), η₁ (first display) and η₂ (second
/// display) over `φ₄, ds₁₂/L², ds₁₂/(s₁L²), ds₁₂/(s₂L²)`.
pub fn printed_eta() -> [Vec<(Term, Rf)>; 3] {
    let r = rx();
    let l3r = l(3) * r.clone();
    let m = l1234();
    [
        vec![
            ph(4, (i(1) - x1() - x2()) / r.clone()),
            cl(DS12_L2, i(2) * m.clone() * x1() * x2() / l3r.clone()),
            cl(
                DS12_S1L2,
                -(l(1) * x2() * (i(1) + x1() - x2())) / l3r.clone(),
            ),
            cl(
                DS12_S2L2,
                -(l(2) * x1() * (i(1) - x1() + x2())) / l3r.clone(),
            ),
        ],
        vec![
            ph(4, (i(1) - x1() + x2()) / r.clone()),
            cl(
                DS12_L2,
                m.clone() * (i(1) + x1() - x2()) * x2() / l3r.clone(),
            ),
            cl(DS12_S1L2, -(i(2) * l(1) * x2()) / l3r.clone()),
            cl(DS12_S2L2, -(l(2) * (i(1) - x1() - x2())) / l3r.clone()),
        ],
        vec![
            ph(4, (i(1) + x1() - x2()) / r),
            cl(DS12_L2, m * (i(1) - x1() + x2()) * x1() / l3r.clone()),
            cl(DS12_S1L2, -(l(1) * (i(1) - x1() - x2())) / l3r.clone()),
            cl(DS12_S2L2, -(i(2) * l(2) * x1()) / l3r),
        ],
    ]
}

/// Every certificate: the displayed ones, the assembled ones and the solved η's.
pub fn build_library(_dict: &ParameterDictionary) -> CertificateLibrary {
    let mut lib = CertificateLibrary::default();
    for c in cohomolog_certificates()
        .into_iter()
        .chain(l2_certificates())
        .chain(one_s_l2_certificates())
        .chain(auxiliary_certificates())
    {
        lib.insert(c);
    }
    if let Ok(etas) = solve_eta() {
        for c in etas {
            lib.insert(c);
        }
    }
    lib
}

/// Verifies all library certificates independently.
pub fn verify_library(lib: &CertificateLibrary) -> Vec<Report> {
    let certs: Vec<&Certificate> = lib.iter().collect();
    parallel::map(&certs, |c| lib.verify(c))
}

pub fn verify_ql2_solve(_dict: &ParameterDictionary) -> Report {
    let id = "ql2.solve";
    let sys = eta_system();
    let det = match sys.matrix.determinant() {
        Ok(d) => d,
        Err(e) => return Report::fail(id, e.to_string()),
    };
    let mut parts = Vec::new();
    let ratio = &det / &(l(3) * l(3) * rx());
    parts.push((
        format!("determinant is l3^2 R times {ratio}"),
        if ratio.is_polynomial() && !ratio.is_zero() {
            Ok(())
        } else {
            Err(format!("det = {det}"))
        },
    ));
    let solved = match solve_eta() {
        Ok(s) => s,
        Err(e) => return Report::fail(id, format!("singular system: {e}")),
    };
    let lib = build_library(_dict);
    for (k, rep) in eta_relations(&lib).into_iter().enumerate() {
        parts.push((
            format!("relation {k}"),
            if rep.pass { Ok(()) } else { Err(rep.witness) },
        ));
    }
    let printed = printed_eta();
    for k in 0..3 {
        let mut diff = Vec::new();
        for (t, c) in &printed[k] {
            let got = solved[k].coefficient(t);
            if &got != c {
                diff.push(format!("{t:?}: solved {got}, printed {c}"));
            }
        }
        if solved[k].combo.len() != printed[k].len() {
            diff.push("extra terms in the solution".to_string());
        }
        parts.push((
            format!("{} matches print", ETA[k]),
            if diff.is_empty() {
                Ok(())
            } else {
                Err(diff.join("; "))
            },
        ));
        let rep = lib.verify(&solved[k]);
        parts.push((
            format!("{} certificate", ETA[k]),
            if rep.pass { Ok(()) } else { Err(rep.witness) },
        ));
    }
    Report::from_parts(id, parts)
}

/// `∇_X φᵢ` in the `dxₖ` direction: `∂ₓₖφᵢ + ω_Xₖ φᵢ`.
pub fn nabla_x(i_: u8, k: usize) -> Rf {
    let v = if k == 0 { Var::X1 } else { Var::X2 };
    let p = phi(i_);
    &p.partial(v) + &(&omega_x()[k] * &p)
}

/// Lemma "diff" as printed.
pub fn printed_nabla_x() -> [[Rf; 2]; 4] {
    let l2 = lf() * lf();
    let one_m = i(1) - l(4);
    [
        [-(l(4) / (s2() * lf())), -(l(4) / (s1() * lf()))],
        [
            (i(1) - l(4) * s1() * x1() - s2() * x2()) / (s2() * l2.clone()),
            one_m.clone() * x1() / l2.clone(),
        ],
        [
            one_m.clone() * x2() / l2.clone(),
            (i(1) - s1() * x1() - l(4) * s2() * x2()) / (s1() * l2.clone()),
        ],
        [
            one_m.clone() * s1() / (qf() * l2.clone()),
            one_m * s2() / (qf() * l2),
        ],
    ]
}

pub fn verify_lemma_diff(_dict: &ParameterDictionary) -> Report {
    let printed = printed_nabla_x();
    let mut parts = Vec::new();
    for r in 0..4 {
        for k in 0..2 {
            let got = nabla_x(r as u8 + 1, k);
            parts.push((
                format!("row {} dx{}", r + 1, k + 1),
                if got == printed[r][k] {
                    Ok(())
                } else {
                    Err(format!("computed {got}"))
                },
            ));
        }
    }
    Report::from_parts("diff.nabla-x", parts)
}

/// How each `∇_X φᵢ` component is written through library claims; these are
/// pointwise identities, checked as certificates with zero potential.
pub fn pfaff_decomposition(row: usize, k: usize) -> Vec<(Term, Rf)> {
    let one_m = i(1) - l(4);
    match (row, k) {
        (0, 0) => vec![ph(2, -(l(4) / x1()))],
        (0, 1) => vec![ph(3, -(l(4) / x2()))],
        (1, 0) => vec![ph(2, i(1) / x1()), cl("L2.2", i(-1))],
        (1, 1) => vec![cl(DS12_L2, one_m * x1())],
        (2, 0) => vec![cl(DS12_L2, one_m * x2())],
        (2, 1) => vec![ph(3, i(1) / x2()), cl("L2.3", i(-1))],
        (3, 0) => vec![cl(ETA[1], one_m)],
        (3, 1) => vec![cl(ETA[2], one_m)],
        _ => panic!("row {row} coordinate {k} out of range"),
    }
}

/// Row certificates for Ξ: `∇_X φᵢ|ₖ − Σⱼ Ξᵏᵢⱼ φⱼ = ∇ψ`, reduced to the
/// φ-frame with the potential assembled from the chain.
pub fn pfaff_certificates(
    lib: &CertificateLibrary,
) -> Result<Vec<Certificate>, super::CertificateError> {
    let mut out = Vec::new();
    for row in 0..4 {
        for k in 0..2 {
            let cert = Certificate::new(
                &format!("pfaff.row{}.dx{}", row + 1, k + 1),
                nabla_x(row as u8 + 1, k),
                pfaff_decomposition(row, k),
                OneForm::zero(),
            );
            out.push(lib.reduce(&cert)?);
        }
    }
    Ok(out)
}

/// Residual `∇_X φᵢ|ₖ − Σⱼ Ξᵏᵢⱼ φⱼ − ∇ψ` for an assembled row certificate.
pub fn pfaff_residual(cert: &Certificate, sys: &ConnectionSystem, row: usize, k: usize) -> Rf {
    let m = &sys.form.parts[k];
    let mut r = cert.claim.clone();
    for j in 0..4 {
        r = &r - &(m.get(row, j) * &phi(j as u8 + 1));
    }
    &r - &nabla(&cert.potential)
}

pub fn certify_theorem_pfaff(dict: &ParameterDictionary, sys: &ConnectionSystem) -> Report {
    let id = "pfaff.certify";
    let lib = build_library(dict);
    if let Some(bad) = verify_library(&lib).into_iter().find(|r| !r.pass) {
        return Report::fail(
            id,
            format!("library certificate {} fails: {}", bad.id, bad.witness),
        );
    }
    let certs = match pfaff_certificates(&lib) {
        Ok(c) => c,
        Err(e) => return Report::fail(id, e.to_string()),
    };
    let mut parts = Vec::new();
    for (n, cert) in certs.iter().enumerate() {
        let (row, k) = (n / 2, n % 2);
        let r = pfaff_residual(cert, sys, row, k);
        parts.push((
            format!("row {} dx{}", row + 1, k + 1),
            if r.is_zero() {
                Ok(())
            } else {
                Err(format!("residual {r}"))
            },
        ));
    }
    Report::from_parts(id, parts)
}

/// Removes every factor of x₁, x₂, λ₃ and R(x) from `p`.
fn strip_admissible(p: &Polynomial) -> Polynomial {
    let factors = [
        Polynomial::var(Var::X1),
        Polynomial::var(Var::X2),
        Polynomial::var(Var::L3),
        r_of_x(),
    ];
    let mut p = p.clone();
    for f in &factors {
        while let Some(q) = p.div_exact(f) {
            if p.is_constant() {
                break;
            }
            p = q;
        }
    }
    p
}

/// True when the denominator of `c` is built from x₁, x₂, λ₃ and R(x) only.
pub fn has_admissible_denominator(c: &Rf) -> bool {
    strip_admissible(c.denominator()).is_constant()
}

/// Coefficient denominators of the reduced row certificates.
pub fn verify_combo_denominators(dict: &ParameterDictionary) -> Report {
    let id = "pfaff.denominators";
    let lib = build_library(dict);
    let certs = match pfaff_certificates(&lib) {
        Ok(c) => c,
        Err(e) => return Report::fail(id, e.to_string()),
    };
    for c in &certs {
        for (t, v) in &c.combo {
            if !has_admissible_denominator(v) {
                return Report::fail(
                    id,
                    format!("{} {t:?}: denominator {}", c.name, v.denominator()),
                );
            }
        }
    }
    Report::pass(id, format!("{} row certificates", certs.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::omega;

    #[test]
    fn nabla_cohomolog_first() {
        let c = &cohomolog_certificates()[0];
        let lib = CertificateLibrary::default();
        let mut want = c.claim.clone();
        for (t, k) in &c.combo {
            want = &want - &(k * &lib.term_value(t).unwrap());
        }
        assert_eq!(nabla(&c.potential), want);
    }

    #[test]
    fn nabla_l2_second() {
        let c = &l2_certificates()[1];
        let want = &c.claim - &(&(&(l(1) + l(3) + i(1)) / &x1()) * &phi(2) + &l(3) * &phi(4));
        assert_eq!(nabla(&c.potential), want);
    }

    #[test]
    fn denominators_admissible() {
        assert!(has_admissible_denominator(
            &(i(1) / (l(3) * rx() * x1() * x1()))
        ));
        assert!(!has_admissible_denominator(&(i(1) / (l(4) - i(1)))));
    }

    #[test]
    fn omega_x_matches_derivative_of_l() {
        let lg = lf();
        let want = &(l(4) * lg.partial(Var::X1)) / &lg;
        assert_eq!(omega_x()[0], want);
        assert!(!omega().ds1.is_zero());
    }
}
