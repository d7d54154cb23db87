//! Twisted de Rham complex in the s-plane and ∇-exactness certificates for
//! the reduction identities behind the connection matrix Ξ.
//!
//! A certificate states `claim − Σ cᵢ·termᵢ = ∇(potential)` as an identity of
//! rational 2-forms, where each term is either a frame form φₖ or the claim of
//! another certificate and every cᵢ is free of s. Chained certificates are
//! reduced to the φ-frame by substituting the referenced certificates; since
//! ∇ is linear over functions of x, potentials add up along the way.

mod library;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use library::*;

use crate::algebra::{l_of_sx, q_of_s, RationalFunction as Rf, Var};
use crate::connection::sym::{i, l};
use crate::report::Report;

/// `ds₁`/`ds₂` coefficients of a 1-form in s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct OneForm {
    pub ds1: Rf,
    pub ds2: Rf,
}

impl OneForm {
    pub fn new(ds1: Rf, ds2: Rf) -> Self {
        OneForm { ds1, ds2 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scale(&self, c: &Rf) -> Self {
        OneForm::new(&self.ds1 * c, &self.ds2 * c)
    }

    pub fn add(&self, o: &Self) -> Self {
        OneForm::new(&self.ds1 + &o.ds1, &self.ds2 + &o.ds2)
    }

    pub fn is_zero(&self) -> bool {
        self.ds1.is_zero() && self.ds2.is_zero()
    }
}

/// A form in s of degree one or two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "degree")]
pub enum SForm {
    #[serde(rename = "1")]
    One(OneForm),
    #[serde(rename = "2")]
    Two { ds12: Rf },
}

impl SForm {
    pub fn degree(&self) -> u8 {
        match self {
            SForm::One(_) => 1,
            SForm::Two { .. } => 2,
        }
    }

    /// Denominators are products of s₁, s₂, Q and L over ℚ(λ, x).
    pub fn has_arrangement_denominators(&self) -> bool {
        let ok = |f: &Rf| {
            let mut p = f.denominator().clone();
            for d in [
                crate::algebra::Polynomial::var(Var::S1),
                crate::algebra::Polynomial::var(Var::S2),
                q_of_s(),
                l_of_sx(),
            ] {
                while p.contains_var(Var::S1) || p.contains_var(Var::S2) {
                    match p.div_exact(&d) {
                        Some(q) => p = q,
                        None => break,
                    }
                }
            }
            !p.contains_var(Var::S1) && !p.contains_var(Var::S2)
        };
        match self {
            SForm::One(f) => ok(&f.ds1) && ok(&f.ds2),
            SForm::Two { ds12 } => ok(ds12),
        }
    }
}

/// `∇` on a degree-one form; `None` for degree two.
pub fn nabla_form(psi: &SForm) -> Option<SForm> {
    match psi {
        SForm::One(f) => Some(SForm::Two { ds12: nabla(f) }),
        SForm::Two { .. } => None,
    }
}

pub fn build_omega(_dict: &crate::connection::ParameterDictionary) -> SForm {
    SForm::One(omega())
}

/// `ω = d_s log u`.
pub fn omega() -> OneForm {
    let s1: Rf = Var::S1.into();
    let s2: Rf = Var::S2.into();
    let q: Rf = q_of_s().into();
    let lf: Rf = l_of_sx().into();
    let x1: Rf = Var::X1.into();
    let x2: Rf = Var::X2.into();
    OneForm::new(
        l(1) / s1.clone() + l(3) * (s2.clone() - i(1)) / q.clone() - l(4) * x1 / lf.clone(),
        l(2) / s2 + l(3) * (s1 - i(1)) / q - l(4) * x2 / lf,
    )
}

/// `ω_X = d_x log u`, as the `dx₁`/`dx₂` coefficients.
pub fn omega_x() -> [Rf; 2] {
    let lf: Rf = l_of_sx().into();
    [
        -(l(4) * Rf::from(Var::S1)) / lf.clone(),
        -(l(4) * Rf::from(Var::S2)) / lf,
    ]
}

/// `∇ψ = d_sψ + ω∧ψ`, returned as the coefficient of `ds₁∧ds₂`.
pub fn nabla(psi: &OneForm) -> Rf {
    nabla_with(&omega(), psi)
}

pub fn nabla_with(w: &OneForm, psi: &OneForm) -> Rf {
    let d = &psi.ds2.partial(Var::S1) - &psi.ds1.partial(Var::S2);
    let wedge = &(&w.ds1 * &psi.ds2) - &(&w.ds2 * &psi.ds1);
    &d + &wedge
}

/// `∇g = d_s g + g ω` for a function g.
pub fn nabla0(g: &Rf) -> OneForm {
    let w = omega();
    OneForm::new(
        &g.partial(Var::S1) + &(g * &w.ds1),
        &g.partial(Var::S2) + &(g * &w.ds2),
    )
}

/// Coefficient of `ds₁∧ds₂` in φₖ, k = 1..4.
pub fn phi(k: u8) -> Rf {
    let s1: Rf = Var::S1.into();
    let s2: Rf = Var::S2.into();
    let lf: Rf = l_of_sx().into();
    match k {
        1 => i(1) / (s1 * s2),
        2 => Rf::from(Var::X1) / (s2 * lf),
        3 => Rf::from(Var::X2) / (s1 * lf),
        4 => i(1) / (Rf::from(q_of_s()) * lf),
        _ => panic!("phi index {k} out of range"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    Phi(u8),
    /// The claim of another certificate in the library.
    Claim(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    /// Coefficient of `ds₁∧ds₂` in the claimed form.
    pub claim: Rf,
    pub combo: Vec<(Term, Rf)>,
    pub potential: OneForm,
}

impl Certificate {
    pub fn new(name: &str, claim: Rf, combo: Vec<(Term, Rf)>, potential: OneForm) -> Self {
        Certificate {
            name: name.to_string(),
            claim,
            combo,
            potential,
        }
    }

    /// The same identity multiplied through by `c` (free of s).
    pub fn scaled(&self, name: &str, c: &Rf) -> Self {
        Certificate {
            name: name.to_string(),
            claim: &self.claim * c,
            combo: self.combo.iter().map(|(t, k)| (t.clone(), k * c)).collect(),
            potential: self.potential.scale(c),
        }
    }

    /// Coefficient of `φₖ` in the combination (zero when absent).
    pub fn phi_coefficient(&self, k: u8) -> Rf {
        self.combo
            .iter()
            .filter(|(t, _)| *t == Term::Phi(k))
            .map(|(_, c)| c.clone())
            .sum()
    }

    pub fn coefficient(&self, term: &Term) -> Rf {
        self.combo
            .iter()
            .filter(|(t, _)| t == term)
            .map(|(_, c)| c.clone())
            .sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.combo.iter().all(|(t, _)| matches!(t, Term::Phi(_)))
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("unknown certificate {0}")]
    Unknown(String),
    #[error("coefficient of {term} in {cert} depends on s")]
    DependsOnS { cert: String, term: String },
    #[error("cyclic reference through {0}")]
    Cycle(String),
}

/// Named certificates; terms may refer to earlier entries.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CertificateLibrary {
    entries: BTreeMap<String, Certificate>,
    order: Vec<String>,
}

impl CertificateLibrary {
    pub fn insert(&mut self, c: Certificate) {
        if !self.entries.contains_key(&c.name) {
            self.order.push(c.name.clone());
        }
        self.entries.insert(c.name.clone(), c);
    }

    pub fn get(&self, name: &str) -> Option<&Certificate> {
        self.entries.get(name)
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut Certificate> {
        self.entries.get_mut(name)
    }

    /// Certificates in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = &Certificate> {
        self.order.iter().filter_map(|n| self.entries.get(n))
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Value of a term as a 2-form coefficient.
    pub fn term_value(&self, t: &Term) -> Result<Rf, CertificateError> {
        match t {
            Term::Phi(k) => Ok(phi(*k)),
            Term::Claim(n) => self
                .get(n)
                .map(|c| c.claim.clone())
                .ok_or_else(|| CertificateError::Unknown(n.clone())),
        }
    }

    /// Rewrites every `Claim` term through the library until only φ's remain.
    pub fn reduce(&self, cert: &Certificate) -> Result<Certificate, CertificateError> {
        self.reduce_depth(cert, 0)
    }

    fn reduce_depth(
        &self,
        cert: &Certificate,
        depth: usize,
    ) -> Result<Certificate, CertificateError> {
        if depth > self.len() + 1 {
            return Err(CertificateError::Cycle(cert.name.clone()));
        }
        let mut combo: BTreeMap<Term, Rf> = BTreeMap::new();
        let mut potential = cert.potential.clone();
        for (t, c) in &cert.combo {
            if c.contains_var(Var::S1) || c.contains_var(Var::S2) {
                return Err(CertificateError::DependsOnS {
                    cert: cert.name.clone(),
                    term: format!("{t:?}"),
                });
            }
            match t {
                Term::Phi(_) => {
                    let e = combo.entry(t.clone()).or_insert_with(Rf::zero);
                    *e = &*e + c;
                }
                Term::Claim(n) => {
                    let inner = self
                        .get(n)
                        .ok_or_else(|| CertificateError::Unknown(n.clone()))?;
                    let inner = self.reduce_depth(inner, depth + 1)?;
                    for (it, ic) in &inner.combo {
                        let e = combo.entry(it.clone()).or_insert_with(Rf::zero);
                        *e = &*e + &(c * ic);
                    }
                    potential = potential.add(&inner.potential.scale(c));
                }
            }
        }
        Ok(Certificate {
            name: cert.name.clone(),
            claim: cert.claim.clone(),
            combo: combo.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            potential,
        })
    }

    /// `claim − Σ cᵢ termᵢ − ∇(potential)`; zero when the certificate holds.
    pub fn residual(&self, cert: &Certificate) -> Result<Rf, CertificateError> {
        let mut r = cert.claim.clone();
        for (t, c) in &cert.combo {
            r = &r - &(c * &self.term_value(t)?);
        }
        Ok(&r - &nabla(&cert.potential))
    }

    /// Checks the certificate as stated and after reduction to the φ-frame.
    pub fn verify(&self, cert: &Certificate) -> Report {
        let id = format!("cert.{}", cert.name);
        let stated = match self.residual(cert) {
            Ok(r) => r,
            Err(e) => return Report::fail(&id, e.to_string()),
        };
        if !stated.is_zero() {
            return Report::fail(&id, format!("residual {stated}"));
        }
        if cert.is_reduced() {
            return Report::pass(&id, "holds exactly");
        }
        match self.reduce(cert).and_then(|c| self.residual(&c)) {
            Ok(r) if r.is_zero() => Report::pass(&id, "holds exactly, also after reduction to phi"),
            Ok(r) => Report::fail(&id, format!("reduced residual {r}")),
            Err(e) => Report::fail(&id, e.to_string()),
        }
    }
}

/// Verifies a single certificate against a library (for standalone use).
pub fn verify_certificate(lib: &CertificateLibrary, cert: &Certificate) -> Report {
    lib.verify(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rv;
    use proptest::prelude::*;

    #[test]
    fn omega_first_coefficient() {
        let w = omega();
        let q: Rf = q_of_s().into();
        let lf: Rf = l_of_sx().into();
        let want = l(1) / rv(Var::S1) + l(3) * (rv(Var::S2) - i(1)) / q - l(4) * rv(Var::X1) / lf;
        assert_eq!(w.ds1, want);
    }

    #[test]
    fn omega_vanishes_at_zero_lambda() {
        let w = omega();
        let pts: Vec<_> = [Var::L1, Var::L2, Var::L3, Var::L4]
            .into_iter()
            .map(|v| (v, crate::algebra::q(0, 1)))
            .collect();
        assert!(w.ds1.partial_eval(&pts).unwrap().is_zero());
        assert!(w.ds2.partial_eval(&pts).unwrap().is_zero());
    }

    #[test]
    fn omega_x_first() {
        let lf: Rf = l_of_sx().into();
        assert_eq!(omega_x()[0], -(l(4) * rv(Var::S1)) / lf);
    }

    #[test]
    fn nabla_of_zero() {
        assert!(nabla(&OneForm::zero()).is_zero());
    }

    #[test]
    fn zero_certificate() {
        let lib = CertificateLibrary::default();
        let c = Certificate::new("zero", Rf::zero(), vec![], OneForm::zero());
        assert!(lib.verify(&c).pass);
    }

    fn arb_g() -> impl Strategy<Value = Rf> {
        (-3i64..4, -3i64..4, 0u32..3, 0u32..2).prop_map(|(a, b, e, f)| {
            let s1 = rv(Var::S1);
            let s2 = rv(Var::S2);
            let num = i(a) * s1.pow(e) + i(b) * s2.clone() + rv(Var::X1);
            let den = (s1 + i(2)).pow(f) * (s2 + i(1));
            num / den
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn nabla_squared_vanishes(g in arb_g()) {
            prop_assert!(nabla(&nabla0(&g)).is_zero());
        }
    }
}
